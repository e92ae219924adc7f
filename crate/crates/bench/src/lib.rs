//! Fixed inputs shared by the benchmarks.

use lcslab_core::catalog::{self, Params};
use lcslab_core::exactmath::{rat, Mat, Rat};
use lcslab_core::exterior::KForm;
use lcslab_core::liealg::LieAlgebra;
use lcslab_core::parse::parse_form_of_degree;

/// A dense skew-symmetric `n x n` matrix with small rational entries.
pub fn skew(n: usize) -> Mat<Rat> {
    Mat::from_fn(n, n, |i, j| {
        let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        if i == j {
            rat(0, 1)
        } else {
            rat(
                s * ((a * 7 + b * 3) % 11) as i64 - 5 * s,
                ((a + b) % 3 + 1) as i64,
            )
        }
    })
}

/// Catalog entry with its default parameters (`b = 1` where one is required).
pub fn algebra(name: &str) -> LieAlgebra {
    let mut params = Params::new();
    if name == "g1" || name == "g2" {
        params.insert("b".into(), rat(1, 1));
    }
    catalog::get(name, &params).expect("catalog entry").algebra
}

pub fn one_form(g: &LieAlgebra, s: &str) -> KForm {
    parse_form_of_degree(s, g.dim(), g.basis_offset(), 1).expect("valid form")
}
