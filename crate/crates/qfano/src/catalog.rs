//! Catalog ingestion and diffing (placeholder during scaffolding).

pub fn placeholder_exit() -> i32 {
    0
}
