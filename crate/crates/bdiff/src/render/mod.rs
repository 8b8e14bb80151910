//! Output renderings of an edit script.
pub mod html;
pub mod text;
