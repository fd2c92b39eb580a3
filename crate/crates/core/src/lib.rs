//! Folding polyominoes onto the surfaces of polycubes.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod characterize;
pub mod enumerate;
pub mod foldcore;
pub mod iamond;
pub mod lattice;
pub mod polycube;
pub mod search;
pub mod treedp;

pub use foldcore::{FoldModel, Folding, Split};
pub use lattice::{Cell, DualTree, Edge, LatticeError, Polyomino, Sheet, Step};
pub use polycube::{Axis, Diagonal, Dir, FaceKind, FoldAngle, GridFace, Polycube, PolycubeError, Pose};
