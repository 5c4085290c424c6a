//! Finite groupoids and the groupoid model of axiomatic identity types.

pub mod error;
pub mod groupoid;
pub mod grothendieck;
pub mod pseudo;
pub mod enumerate;
pub mod id_former;
pub mod format;
pub mod shipped;
pub mod verify;
