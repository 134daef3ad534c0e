//! Exact computation with elliptic surfaces over Q(T): fiber analysis,
//! Mordell-Weil heights, point counting over finite fields, Picard number
//! certification, and construction of N-congruent pairs of elliptic curves.

pub mod arith;
pub mod curve;
pub mod cyclotomic;
pub mod factor;
pub mod qform;
pub mod field;
pub mod fp;
pub mod fq;
pub mod heights;
pub mod kodaira;
pub mod moduli;
pub mod mpoly;
pub mod picard;
pub mod poly;
pub mod ratfield;
pub mod surfaces;
pub mod zeta;

pub use arith::SquareClass;
pub use field::{Field, Rationals, Rat};
