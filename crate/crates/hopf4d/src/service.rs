//! Local HTTP endpoint serving scene requests.
//!
//! `POST /scene` takes a [`BuildRequest`] JSON body and answers with the
//! canonical scene document. Requests that parse but fail in a pipeline get
//! `422` with `{"error": <error name>, "message": ...}`; bodies that are not
//! a valid request get `400` with error `BadRequest`.

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::Router;

use crate::build::{build_scene, BuildRequest};
use crate::scene::write_scene;

pub fn router() -> Router {
    Router::new().route("/scene", post(scene))
}

fn error(status: StatusCode, name: &str, message: String) -> Response {
    let body = serde_json::json!({ "error": name, "message": message });
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        body.to_string(),
    )
        .into_response()
}

async fn scene(body: Bytes) -> Response {
    let request: BuildRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, "BadRequest", e.to_string()),
    };
    let built =
        tokio::task::spawn_blocking(move || build_scene(&request).map(|doc| write_scene(&doc)))
            .await;
    match built {
        Ok(Ok(Ok(bytes))) => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "application/json")],
            bytes,
        )
            .into_response(),
        Ok(Err(e)) => error(StatusCode::UNPROCESSABLE_ENTITY, e.name(), e.to_string()),
        Ok(Ok(Err(e))) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            "InvalidScene",
            e.to_string(),
        ),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e.to_string()),
    }
}

/// Serves [`router`] on `addr` until the process stops.
pub async fn serve(addr: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
