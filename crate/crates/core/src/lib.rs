//! Exact computations with graded modules over complete intersection rings
//! `k[x_1..x_n]/(f_1..f_c)` with `k = GF(p)`: minimal resolutions, Ext and
//! Gorenstein dimension, G-approximations, relative Betti numbers and the
//! G-Euler characteristic.

pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod module;
pub mod resolution;
pub mod rank;
pub mod complex;
pub mod gdim;
pub mod series;
pub mod text;
pub mod catalog;
pub mod suites;

pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeField};

/// Default coefficient field.
pub type Gf13 = Fp<13>;
pub type Ring13 = ring::GradedRing<Gf13>;
pub type Module13 = module::GradedModule<Gf13>;

/// Search limits shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Highest homological degree to compute.
    pub hmax: usize,
    /// Highest internal degree any linear algebra may reach.
    pub dmax: i32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { hmax: 8, dmax: 40 }
    }
}
