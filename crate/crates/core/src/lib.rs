pub mod arith;
pub mod asymptotics;
pub mod bounds;
pub mod convolutional;
pub mod crt;
pub mod cyclotomic;
pub mod duality;
pub mod error;
pub mod extnat;
pub mod galois;
pub mod io;
pub mod linear;
pub mod matrix;
pub mod poly;
pub mod qc;
pub mod sample;
pub mod selftest;

pub use error::{Error, Result};
pub use extnat::ExtNat;
pub use galois::{Embedding, Field, FieldElem};
pub use linear::{DualKind, LinearCode};
pub use poly::Poly;
pub use qc::QcCode;
