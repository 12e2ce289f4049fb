use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use tower::ServiceExt;

use hopf4d::{build_scene, read_scene, write_scene, BuildRequest};

async fn post(body: &str) -> (StatusCode, Vec<u8>) {
    let request = Request::post("/scene")
        .header("content-type", "application/json")
        .body(Body::from(body.to_owned()))
        .unwrap();
    let response = hopf4d::service::router().oneshot(request).await.unwrap();
    let status = response.status();
    (
        status,
        to_bytes(response.into_body(), usize::MAX)
            .await
            .unwrap()
            .to_vec(),
    )
}

#[tokio::test]
async fn scene_matches_library_bytes() {
    let body = r#"{"type":"fiber","phi":0.3,"psi":1.2,"samples":32}"#;
    let (status, bytes) = post(body).await;
    assert_eq!(status, StatusCode::OK);
    let request: BuildRequest = serde_json::from_str(body).unwrap();
    assert_eq!(bytes, write_scene(&build_scene(&request).unwrap()).unwrap());
    assert!(read_scene(&bytes).is_ok());
}

#[tokio::test]
async fn pipeline_errors_are_422_with_name() {
    let (status, bytes) = post(r#"{"type":"torus","mode":"kappa","psi":0}"#).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["error"], "DegenerateTorus");

    let (status, bytes) = post(r#"{"type":"modulation","poly":"tetrakis","m":0}"#).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["error"], "BadPhaseCount");
}

#[tokio::test]
async fn malformed_requests_are_400() {
    for body in ["{", r#"{"type":"teapot"}"#, r#"{"type":"fiber","phi":1}"#] {
        let (status, bytes) = post(body).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["error"], "BadRequest");
    }
}

#[tokio::test]
async fn other_routes_are_absent() {
    let request = Request::get("/scene").body(Body::empty()).unwrap();
    let response = hopf4d::service::router().oneshot(request).await.unwrap();
    assert_eq!(response.status(), StatusCode::METHOD_NOT_ALLOWED);
}
