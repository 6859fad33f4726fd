pub mod algebra;
pub mod axial;
pub mod catalog;
pub mod exactfield;
pub mod format;
pub mod linalg;
pub mod verify;
