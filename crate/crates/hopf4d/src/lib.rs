//! Scene documents, file formats, the `hopf4d` command line and the local
//! scene service, built on `hopf4d-core`.
//!
//! A [`build::BuildRequest`] names one of the geometric pipelines. Building it
//! yields a [`scene::SceneDocument`] whose objects show every 4D object on
//! the base sphere, in both conjugated images and under stereographic
//! projection. Documents serialize to canonical JSON and export to OBJ.

pub mod build;
pub mod cli;
pub mod obj;
pub mod scene;
pub mod service;
pub mod verify;

pub use build::{build_scene, BuildError, BuildRequest};
pub use obj::export_obj;
pub use scene::{read_scene, write_scene, SceneDocument, SceneObject};

/// Errors from reading, writing and exporting scene documents.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown scene version {0}")]
    UnknownVersion(u64),
    #[error("invalid scene: {0}")]
    Invalid(String),
    #[error("no meshes or polylines in space {0}")]
    EmptySelection(String),
}
