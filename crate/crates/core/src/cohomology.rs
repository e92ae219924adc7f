//! Chevalley-Eilenberg and Morse-Novikov cohomology, potentials, and the
//! action of a transversal element on the cohomology of `ker theta`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{char_poly, kernel_basis, rank, rref, solve, Mat, Poly, Rat, Vector};
use crate::exterior::{
    basis_monomials, derivation_action, differential_matrix, twisted_diff, KForm,
};
use crate::liealg::{kernel_subalgebra, LieAlgebra};

/// Cohomology of `d_theta` (plain CE cohomology when `theta = 0`).
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub theta: KForm,
    pub dims: Vec<usize>,
    /// For each degree, closed forms whose classes form a basis.
    pub representatives: Vec<Vec<KForm>>,
}

impl CohomologyReport {
    pub fn is_trivial(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Cocycles, coboundaries and a complement in one degree, all as
/// coordinate vectors in the monomial basis.
#[derive(Clone, Debug)]
struct DegreeData {
    boundaries: Vec<Vector>,
    reps: Vec<Vector>,
}

impl DegreeData {
    /// Coordinates of the class of a cocycle `v` in the `reps` basis.
    fn class_coords(&self, v: &[Rat]) -> Vector {
        let len = v.len();
        let cols: Vec<Vector> = self.boundaries.iter().chain(&self.reps).cloned().collect();
        if cols.is_empty() {
            return Vec::new();
        }
        let m = Mat::from_cols(len, &cols);
        let x = solve(&m, v).expect("cocycle lies in Z = B + span(reps)");
        x[self.boundaries.len()..].to_vec()
    }
}

/// Picks, in order, the vectors of `candidates` that are independent
/// modulo `base`.
fn complement(base: &[Vector], candidates: &[Vector], len: usize) -> Vec<Vector> {
    let mut chosen: Vec<Vector> = Vec::new();
    let mut current: Vec<Vector> = base.to_vec();
    let mut r = if current.is_empty() {
        0
    } else {
        rank(&Mat::from_rows(current.clone()))
    };
    for c in candidates {
        current.push(c.clone());
        let r2 = rank(&Mat::from_rows(current.clone()));
        if r2 > r {
            chosen.push(c.clone());
            r = r2;
        } else {
            current.pop();
        }
    }
    debug_assert!(chosen.iter().all(|v| v.len() == len));
    chosen
}

/// Echelon basis of the column space of `m`.
fn column_space(m: &Mat<Rat>) -> Vec<Vector> {
    if m.cols() == 0 || m.rows() == 0 {
        return Vec::new();
    }
    let red = rref(&m.transpose());
    (0..red.rank())
        .map(|i| red.matrix.row(i).to_vec())
        .collect()
}

fn degree_data(g: &LieAlgebra, theta: &KForm) -> Result<Vec<DegreeData>> {
    let n = g.dim();
    let mats: Vec<Mat<Rat>> = (0..=n)
        .map(|k| differential_matrix(g, theta, k))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let len = basis_monomials(n, k).len();
        let cycles = if mats[k].rows() == 0 {
            (0..len)
                .map(|i| crate::exactmath::unit_vector(len, i))
                .collect()
        } else {
            kernel_basis(&mats[k])
        };
        let boundaries = if k == 0 {
            Vec::new()
        } else {
            column_space(&mats[k - 1])
        };
        let reps = complement(&boundaries, &cycles, len);
        out.push(DegreeData { boundaries, reps });
    }
    Ok(out)
}

/// `H^k_theta(g)` for all `k`; `theta` must be closed and may be zero.
pub fn cohomology(g: &LieAlgebra, theta: &KForm) -> Result<CohomologyReport> {
    let n = g.dim();
    let data = degree_data(g, theta)?;
    let dims = data.iter().map(|d| d.reps.len()).collect();
    let representatives = data
        .iter()
        .enumerate()
        .map(|(k, d)| d.reps.iter().map(|v| KForm::from_vector(n, k, v)).collect())
        .collect();
    Ok(CohomologyReport {
        theta: theta.clone(),
        dims,
        representatives,
    })
}

/// Some `eta` with `d_theta eta = omega`, or `None` when the class of
/// `omega` is nonzero. The solution has its free coordinates set to zero.
pub fn solve_potential(g: &LieAlgebra, theta: &KForm, omega: &KForm) -> Result<Option<KForm>> {
    let defect = twisted_diff(g, theta, omega)?;
    if !defect.is_zero() {
        return Err(Error::NotClosed {
            defect: g.render_form(&defect),
        });
    }
    let k = omega.degree();
    if k == 0 {
        return Ok(if omega.is_zero() {
            Some(KForm::zero(g.dim(), 0))
        } else {
            None
        });
    }
    let m = differential_matrix(g, theta, k - 1)?;
    Ok(solve(&m, &omega.to_vector()).map(|x| KForm::from_vector(g.dim(), k - 1, &x)))
}

/// Characteristic polynomials of the action of a transversal `A` on
/// `H^k(ker theta)`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedSpectrum {
    #[serde(skip)]
    pub a: Vector,
    #[serde(skip)]
    pub polys: Vec<Poly>,
    pub char_polys: Vec<String>,
    /// Characteristic polynomials of the same action on `Lambda^k`.
    #[serde(skip)]
    pub ambient_polys: Vec<Poly>,
}

impl InducedSpectrum {
    pub fn contains_one(&self) -> bool {
        self.polys.iter().any(|p| p.eval(&Rat::one()).is_zero())
    }

    /// Each induced polynomial divides the one on the full exterior power.
    pub fn contained_in_ambient(&self) -> bool {
        self.polys
            .iter()
            .zip(&self.ambient_polys)
            .all(|(p, q)| p.is_zero() || q.rem(p).is_zero())
    }
}

/// The operator `L_A` (`a -> -a o ad_A`) on `H^*(ker theta)`.
///
/// Writing a `d_theta`-cochain as `a + theta ^ b` with `a, b` pulled back
/// from `h = ker theta`, one gets
/// `d_theta(a + theta ^ b) = d_h a + theta ^ ((L_A - 1) a - d_h b)`, so
/// `H_theta(g) = 0` exactly when 1 is not an eigenvalue of `L_A` on
/// `H(h)`.
pub fn induced_spectrum(g: &LieAlgebra, theta: &KForm, a: &[Rat]) -> Result<InducedSpectrum> {
    let sub = kernel_subalgebra(g, theta)?;
    let value = theta.eval1(a);
    if !value.is_one() {
        return Err(Error::NotTransversal {
            value: crate::exactmath::fmt_rat(&value),
        });
    }
    let h = &sub.algebra;
    let m = h.dim();
    // D = ad_A restricted to h, in the chosen basis of h
    let cols: Vec<Vector> = (0..m)
        .map(|j| sub.coords(&g.bracket(a, &sub.embedding.col(j))))
        .collect();
    let d = Mat::from_cols(m, &cols);
    let data = degree_data(h, &KForm::zero(m, 1))?;
    let mut polys = Vec::with_capacity(m + 1);
    let mut ambient_polys = Vec::with_capacity(m + 1);
    for (k, dd) in data.iter().enumerate() {
        let act = |v: &Vector| derivation_action(&d, &KForm::from_vector(m, k, v)).to_vector();
        // boundaries go to boundaries
        for b in &dd.boundaries {
            assert!(
                dd.class_coords(&act(b)).iter().all(Zero::is_zero),
                "induced map ill-defined"
            );
        }
        let cols: Vec<Vector> = dd.reps.iter().map(|r| dd.class_coords(&act(r))).collect();
        let mat = Mat::from_cols(dd.reps.len(), &cols);
        polys.push(char_poly(&mat)?);
        let len = basis_monomials(m, k).len();
        let full: Vec<Vector> = (0..len)
            .map(|i| act(&crate::exactmath::unit_vector(len, i)))
            .collect();
        ambient_polys.push(char_poly(&Mat::from_cols(len, &full))?);
    }
    let char_polys = polys.iter().map(|p| p.display_in("x")).collect();
    Ok(InducedSpectrum {
        a: a.to_vec(),
        polys,
        char_polys,
        ambient_polys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, unit_vector};
    use crate::parse::{parse_form, parse_salamon};

    fn f(n: usize, s: &str) -> KForm {
        parse_form(s, n, 1).unwrap()
    }

    #[test]
    fn betti_numbers_of_h3_x_r() {
        let g = parse_salamon("(0,0,-12,0)").unwrap();
        let r = cohomology(&g, &KForm::zero(4, 1)).unwrap();
        assert_eq!(r.dims, vec![1, 3, 4, 3, 1]);
        assert_eq!(r.euler_characteristic(), 0);
        for (k, reps) in r.representatives.iter().enumerate() {
            for rep in reps {
                assert_eq!(rep.degree(), k);
                assert!(crate::exterior::cediff(&g, rep).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn twisted_cohomology_vanishes() {
        let g = parse_salamon("(0,-13,12,0)").unwrap();
        assert!(cohomology(&g, &f(4, "e4")).unwrap().is_trivial());
    }

    #[test]
    fn aff_r_sign_check() {
        let aff = parse_salamon("(0,-12)").unwrap();
        assert!(cohomology(&aff, &f(2, "e1")).unwrap().is_trivial());
        assert_eq!(cohomology(&aff, &f(2, "-e1")).unwrap().dims, vec![0, 1, 1]);
        let s = induced_spectrum(&aff, &f(2, "e1"), &unit_vector(2, 0)).unwrap();
        assert!(!s.contains_one());
        let minus_e1 = vec![int(-1), int(0)];
        assert!(induced_spectrum(&aff, &f(2, "-e1"), &minus_e1)
            .unwrap()
            .contains_one());
    }

    #[test]
    fn potentials() {
        let d4p = parse_salamon("(24,-14,-12,0)").unwrap();
        let eta = solve_potential(&d4p, &f(4, "e4"), &f(4, "e12 - e34"))
            .unwrap()
            .unwrap();
        assert_eq!(
            twisted_diff(&d4p, &f(4, "e4"), &eta).unwrap(),
            f(4, "e12 - e34")
        );
        assert_eq!(eta, f(4, "-e3"));
        let ab = LieAlgebra::abelian(4);
        assert_eq!(
            solve_potential(&ab, &KForm::zero(4, 1), &f(4, "e12")).unwrap(),
            None
        );
        assert!(matches!(
            solve_potential(&d4p, &f(4, "e4"), &f(4, "e13")),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn induced_spectrum_examples() {
        let d4 = parse_salamon("(14,-24,-12,0)").unwrap();
        let s = induced_spectrum(&d4, &f(4, "e4"), &unit_vector(4, 3)).unwrap();
        assert!(s.contains_one());
        assert!(s.contained_in_ambient());
        assert!(!cohomology(&d4, &f(4, "e4")).unwrap().is_trivial());
        let r = parse_salamon("(0,-13,12,0)").unwrap();
        let s = induced_spectrum(&r, &f(4, "e4"), &unit_vector(4, 3)).unwrap();
        assert!(!s.contains_one());
        let ab = LieAlgebra::abelian(2);
        let s = induced_spectrum(&ab, &f(2, "e2"), &unit_vector(2, 1)).unwrap();
        assert_eq!(
            s.polys,
            vec![Poly::from_i64(&[0, 1]), Poly::from_i64(&[0, 1])]
        );
        assert!(matches!(
            induced_spectrum(&ab, &f(2, "e2"), &unit_vector(2, 0)),
            Err(Error::NotTransversal { .. })
        ));
    }
}
