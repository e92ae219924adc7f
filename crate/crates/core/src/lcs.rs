//! Locally conformal symplectic and contact structures: verification,
//! Lee and Reeb vectors, the automorphism algebra `g_omega`, and seeded
//! searches.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::solve_potential;
use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, pfaffian, solve, MPoly, Mat, Rat, Vector};
use crate::exterior::{cediff, differential_matrix, KForm};
use crate::liealg::LieAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    FirstKind,
    SecondKind,
}

/// A verified LCS pair with its derived data.
#[derive(Clone, Debug)]
pub struct LcsStructure {
    pub omega: KForm,
    pub theta: KForm,
    pub pfaffian: Rat,
    /// `i_V omega = theta`
    pub lee_vector: Vector,
    /// `eta` with `d_theta eta = omega`, when one exists.
    pub eta: Option<KForm>,
    /// `eta = -i_U omega`
    pub anti_lee_vector: Option<Vector>,
    /// `None` when `theta = 0` (the symplectic case).
    pub kind: Option<Kind>,
    pub automorphisms: AutomorphismAlgebra,
}

impl LcsStructure {
    pub fn is_symplectic(&self) -> bool {
        self.theta.is_zero()
    }

    pub fn lee_vector_is_central(&self, g: &LieAlgebra) -> bool {
        g.ad(&self.lee_vector).expect("dim").is_zero()
    }
}

/// `g_omega = { x : omega([x,y],z) + omega(y,[x,z]) = 0 for all y, z }`.
#[derive(Clone, Debug)]
pub struct AutomorphismAlgebra {
    pub basis: Vec<Vector>,
}

impl AutomorphismAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lee_values(&self, theta: &KForm) -> Vec<Rat> {
        self.basis.iter().map(|x| theta.eval1(x)).collect()
    }

    pub fn is_subalgebra(&self, g: &LieAlgebra) -> bool {
        if self.basis.is_empty() {
            return true;
        }
        let m = Mat::from_cols(g.dim(), &self.basis);
        self.basis.iter().all(|x| {
            self.basis
                .iter()
                .all(|y| solve(&m, &g.bracket(x, y)).is_some())
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactStructure {
    pub eta: KForm,
    pub reeb_vector: Vector,
    /// Coefficient of `eta ^ (d eta)^n` on the top monomial.
    pub volume: Rat,
}

fn expect_degree(f: &KForm, k: usize) -> Result<()> {
    if f.degree() != k {
        return Err(Error::DegreeMismatch {
            expected: k,
            found: f.degree(),
        });
    }
    Ok(())
}

fn expect_dim(g: &LieAlgebra, f: &KForm) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: f.dim(),
        });
    }
    Ok(())
}

/// Pfaffian of a 2-form, or `Degenerate` with its kernel.
pub fn nondegenerate(g: &LieAlgebra, omega: &KForm) -> Result<Rat> {
    expect_degree(omega, 2)?;
    let m = omega.skew_matrix();
    let pf = if g.dim() % 2 == 1 {
        Rat::zero()
    } else {
        pfaffian(&m)?
    };
    if pf.is_zero() {
        let kernel = kernel_basis(&m)
            .iter()
            .map(|v| g.render_vector(v))
            .collect();
        return Err(Error::Degenerate { kernel });
    }
    Ok(pf)
}

/// Checks `d theta = 0`, `d omega = theta ^ omega` and `Pf(omega) != 0`,
/// then derives the Lee vector, an exactness witness, the anti-Lee vector
/// and the kind.
pub fn verify_lcs(g: &LieAlgebra, omega: &KForm, theta: &KForm) -> Result<LcsStructure> {
    expect_dim(g, omega)?;
    expect_dim(g, theta)?;
    expect_degree(theta, 1)?;
    expect_degree(omega, 2)?;
    let dtheta = cediff(g, theta)?;
    if !dtheta.is_zero() {
        return Err(Error::ThetaNotClosed {
            defect: g.render_form(&dtheta),
        });
    }
    let defect = cediff(g, omega)?.sub(&theta.wedge(omega)?)?;
    if !defect.is_zero() {
        return Err(Error::NotLcs {
            defect: g.render_form(&defect),
        });
    }
    let pf = nondegenerate(g, omega)?;
    let eta = solve_potential(g, theta, omega)?;
    let (lee_vector, anti_lee_vector) = lee_vectors(g, omega, theta, eta.as_ref())?;
    let automorphisms = automorphism_algebra(g, omega)?;
    let kind = if theta.is_zero() {
        None
    } else {
        Some(kind_from(&automorphisms, theta))
    };
    Ok(LcsStructure {
        omega: omega.clone(),
        theta: theta.clone(),
        pfaffian: pf,
        lee_vector,
        eta,
        anti_lee_vector,
        kind,
        automorphisms,
    })
}

/// `V` with `i_V omega = theta`, and `U` with `i_U omega = -eta` when an
/// `eta` is given.
pub fn lee_vectors(
    g: &LieAlgebra,
    omega: &KForm,
    theta: &KForm,
    eta: Option<&KForm>,
) -> Result<(Vector, Option<Vector>)> {
    nondegenerate(g, omega)?;
    // (i_x omega)_j = sum_i x_i Omega_ij = -(Omega x)_j
    let m = omega.skew_matrix();
    let neg_theta: Vector = theta.to_vector().iter().map(|x| -x).collect();
    let v = solve(&m, &neg_theta).expect("nondegenerate");
    let u = eta.map(|eta| solve(&m, &eta.to_vector()).expect("nondegenerate"));
    Ok((v, u))
}

pub fn automorphism_algebra(g: &LieAlgebra, omega: &KForm) -> Result<AutomorphismAlgebra> {
    expect_degree(omega, 2)?;
    expect_dim(g, omega)?;
    let n = g.dim();
    let w = omega.skew_matrix();
    // column i: upper triangle of ad_i^T W + W ad_i
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let a = g.ad_basis(i);
            let s = a.transpose().mul(&w).add(&w.mul(&a));
            (0..n)
                .flat_map(|y| (y + 1..n).map(move |z| (y, z)))
                .map(|(y, z)| s[(y, z)].clone())
                .collect()
        })
        .collect();
    let rows = n * (n - 1) / 2;
    let basis = if rows == 0 {
        g.full_basis()
    } else {
        kernel_basis(&Mat::from_cols(rows, &cols))
    };
    let out = AutomorphismAlgebra { basis };
    debug_assert!(out.is_subalgebra(g));
    Ok(out)
}

fn kind_from(aut: &AutomorphismAlgebra, theta: &KForm) -> Kind {
    if aut.lee_values(theta).iter().any(|v| !v.is_zero()) {
        Kind::FirstKind
    } else {
        Kind::SecondKind
    }
}

/// First kind when `theta` does not vanish on `g_omega`.
pub fn classify_kind(g: &LieAlgebra, omega: &KForm, theta: &KForm) -> Result<Kind> {
    let s = verify_lcs(g, omega, theta)?;
    s.kind.ok_or(Error::ThetaZero)
}

/// The unique 1-form `theta` with `d omega = theta ^ omega`, if any.
pub fn lee_form_of(g: &LieAlgebra, omega: &KForm) -> Result<Option<KForm>> {
    expect_degree(omega, 2)?;
    let n = g.dim();
    let domega = cediff(g, omega)?;
    if n < 3 {
        return Ok(Some(KForm::zero(n, 1)));
    }
    let cols: Vec<Vector> = (0..n)
        .map(|i| KForm::e(n, i).wedge(omega).expect("dim").to_vector())
        .collect();
    let m = Mat::from_cols(domega.to_vector().len(), &cols);
    Ok(solve(&m, &domega.to_vector()).map(|t| KForm::one_form(&t)))
}

/// Seeded sampling parameters for the searches.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub samples: usize,
    /// Sample coordinates are `p/q` with `|p/q| <= bound`, `1 <= q <= max_den`.
    pub bound: i64,
    pub max_den: i64,
    /// Above this many free parameters the symbolic Pfaffian is skipped.
    pub symbolic_limit: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            samples: 512,
            bound: 8,
            max_den: 4,
            symbolic_limit: 24,
        }
    }
}

fn random_rat(rng: &mut ChaCha8Rng, budget: &SearchBudget) -> Rat {
    let q = rng.random_range(1..=budget.max_den);
    let p = rng.random_range(-budget.bound * q..=budget.bound * q);
    Rat::new(p.into(), q.into())
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome<T> {
    Witness(T),
    /// Every element of the solution space is degenerate (proved).
    Degenerate,
    /// No witness within the sample budget; nothing is proved.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct LcsSearch {
    /// Basis of `{ omega : d omega = theta ^ omega }`.
    pub solution_basis: Vec<KForm>,
    pub outcome: SearchOutcome<KForm>,
    pub samples_tried: usize,
}

fn combine(basis: &[KForm], coeffs: &[Rat], dim: usize, degree: usize) -> KForm {
    basis
        .iter()
        .zip(coeffs)
        .fold(KForm::zero(dim, degree), |acc, (b, c)| {
            acc.add(&b.scale(c)).expect("same shape")
        })
}

/// Solves `d omega = theta ^ omega` on `Lambda^2` and looks for a
/// nondegenerate solution: basis elements first, then seeded random
/// combinations. With no witness, a symbolic Pfaffian over the solution
/// space decides whether it is identically zero.
pub fn lcs_search(
    g: &LieAlgebra,
    theta: &KForm,
    seed: u64,
    budget: &SearchBudget,
) -> Result<LcsSearch> {
    let n = g.dim();
    let m = differential_matrix(g, theta, 2)?;
    let solution_basis: Vec<KForm> = if m.rows() == 0 {
        crate::exterior::basis_monomials(n, 2)
            .iter()
            .map(|i| KForm::monomial(n, i))
            .collect()
    } else {
        kernel_basis(&m)
            .iter()
            .map(|v| KForm::from_vector(n, 2, v))
            .collect()
    };
    let done = |outcome, samples_tried| {
        Ok(LcsSearch {
            solution_basis: solution_basis.clone(),
            outcome,
            samples_tried,
        })
    };
    if n % 2 == 1 || solution_basis.is_empty() {
        return done(SearchOutcome::Degenerate, 0);
    }
    let nondeg = |w: &KForm| !pfaffian(&w.skew_matrix()).expect("skew").is_zero();
    for b in &solution_basis {
        if nondeg(b) {
            return done(SearchOutcome::Witness(b.clone()), 0);
        }
    }
    let k = solution_basis.len();
    if k <= budget.symbolic_limit {
        let vars: Vec<MPoly> = (0..k).map(MPoly::var).collect();
        let sym = Mat::from_fn(n, n, |i, j| {
            solution_basis
                .iter()
                .zip(&vars)
                .fold(MPoly::zero(), |acc, (b, v)| {
                    let c = b.skew_matrix()[(i, j)].clone();
                    if c.is_zero() {
                        acc
                    } else {
                        acc + MPoly::constant(c) * v.clone()
                    }
                })
        });
        if pfaffian(&sym)?.is_zero() {
            return done(SearchOutcome::Degenerate, 0);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..budget.samples {
        let coeffs: Vec<Rat> = (0..k).map(|_| random_rat(&mut rng, budget)).collect();
        let w = combine(&solution_basis, &coeffs, n, 2);
        if nondeg(&w) {
            return done(SearchOutcome::Witness(w), s + 1);
        }
    }
    done(SearchOutcome::Inconclusive, budget.samples)
}

fn top_coefficient(eta: &KForm, deta: &KForm) -> Result<Rat> {
    let n = eta.dim();
    let mut acc = eta.clone();
    for _ in 0..n / 2 {
        acc = acc.wedge(deta)?;
    }
    let top: Vec<usize> = (0..n).collect();
    Ok(acc.coeff(&top))
}

/// Checks `eta ^ (d eta)^n != 0` and solves for the Reeb vector.
pub fn verify_contact(g: &LieAlgebra, eta: &KForm) -> Result<ContactStructure> {
    let n = g.dim();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    expect_dim(g, eta)?;
    expect_degree(eta, 1)?;
    let deta = cediff(g, eta)?;
    let volume = top_coefficient(eta, &deta)?;
    if volume.is_zero() {
        return Err(Error::NotContact);
    }
    // eta(R) = 1 and Omega R = 0 for Omega the matrix of d eta
    let mut rows = vec![eta.to_vector()];
    rows.extend(deta.skew_matrix().to_rows());
    let mut rhs = vec![Rat::one()];
    rhs.extend(std::iter::repeat_n(Rat::zero(), n));
    let reeb_vector = solve(&Mat::from_rows(rows), &rhs).expect("contact forms have a Reeb vector");
    Ok(ContactStructure {
        eta: eta.clone(),
        reeb_vector,
        volume,
    })
}

/// Tries the basis 1-forms, then seeded random 1-forms.
pub fn contact_search(
    g: &LieAlgebra,
    seed: u64,
    budget: &SearchBudget,
) -> Result<(SearchOutcome<ContactStructure>, usize)> {
    let n = g.dim();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    // (d eta)^k vanishes for k > rank of the bracket map, so abelian
    // algebras and n = 1 are settled without sampling
    if g.is_abelian() {
        return Ok((
            if n == 1 {
                contact_witness(g, &KForm::e(1, 0))
            } else {
                SearchOutcome::Degenerate
            },
            0,
        ));
    }
    for i in 0..n {
        if let SearchOutcome::Witness(c) = contact_witness(g, &KForm::e(n, i)) {
            return Ok((SearchOutcome::Witness(c), 0));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..budget.samples {
        let v: Vector = (0..n).map(|_| random_rat(&mut rng, budget)).collect();
        if let SearchOutcome::Witness(c) = contact_witness(g, &KForm::one_form(&v)) {
            return Ok((SearchOutcome::Witness(c), s + 1));
        }
    }
    Ok((SearchOutcome::Inconclusive, budget.samples))
}

fn contact_witness(g: &LieAlgebra, eta: &KForm) -> SearchOutcome<ContactStructure> {
    match verify_contact(g, eta) {
        Ok(c) => SearchOutcome::Witness(c),
        Err(_) => SearchOutcome::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get, Params};
    use crate::exactmath::{int, unit_vector};
    use crate::parse::{parse_form, parse_salamon};

    fn f(g: &LieAlgebra, s: &str) -> KForm {
        parse_form(s, g.dim(), g.basis_offset()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let g = parse_salamon("(24,-14,-12,0)").unwrap();
        let s = verify_lcs(&g, &f(&g, "e12 - e34"), &f(&g, "e4")).unwrap();
        assert_eq!(s.kind, Some(Kind::FirstKind));
        assert_eq!(g.render_vector(&s.lee_vector), "-e3");
        assert!(s.lee_vector_is_central(&g));
        assert_eq!(s.eta, Some(f(&g, "-e3")));
        let ab = LieAlgebra::abelian(4);
        let s = verify_lcs(&ab, &f(&ab, "e12 + e34"), &KForm::zero(4, 1)).unwrap();
        assert!(s.is_symplectic());
        assert_eq!(s.kind, None);
        assert!(s.lee_vector.iter().all(Zero::is_zero));
        let h = parse_salamon("(0,0,-12,0)").unwrap();
        assert!(matches!(
            verify_lcs(&h, &f(&h, "e12 - e34"), &f(&h, "e3")),
            Err(Error::ThetaNotClosed { .. })
        ));
    }

    #[test]
    fn rejects_degenerate_and_non_lcs() {
        let d4 = parse_salamon("(14,-24,-12,0)").unwrap();
        assert!(matches!(
            verify_lcs(&d4, &f(&d4, "e12 - e24"), &f(&d4, "e4")),
            Err(Error::NotLcs { .. }) | Err(Error::Degenerate { .. })
        ));
        let ab = LieAlgebra::abelian(4);
        match verify_lcs(&ab, &f(&ab, "e12 + e13"), &KForm::zero(4, 1)) {
            Err(Error::Degenerate { kernel }) => assert_eq!(kernel.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lee_vector_of_the_tabulated_form() {
        let g = parse_salamon("(0,-13,12,0)").unwrap();
        let omega = f(&g, "e12 + e13 - e24");
        let (v, _) = lee_vectors(&g, &omega, &f(&g, "e4"), None).unwrap();
        assert_eq!(g.render_vector(&v), "-e2 + e3");
        // the pair with theta = e4 is not LCS; the forced Lee form is e1 + e4
        assert!(matches!(
            verify_lcs(&g, &omega, &f(&g, "e4")),
            Err(Error::NotLcs { .. })
        ));
        assert_eq!(lee_form_of(&g, &omega).unwrap(), Some(f(&g, "e1 + e4")));
    }

    #[test]
    fn automorphism_algebras() {
        let ab = LieAlgebra::abelian(4);
        assert_eq!(
            automorphism_algebra(&ab, &f(&ab, "e12 + e34"))
                .unwrap()
                .dim(),
            4
        );
        let ex6 = get("ex6", &Params::new()).unwrap().algebra;
        let aut = automorphism_algebra(&ex6, &f(&ex6, "e16 - e23 - e45")).unwrap();
        assert!(aut.is_subalgebra(&ex6));
        assert!(aut.lee_values(&f(&ex6, "e6")).iter().any(|v| !v.is_zero()));
        let d4 = get("d4", &Params::new()).unwrap();
        let (omega, theta) = d4.known_lcs.unwrap();
        let aut = automorphism_algebra(&d4.algebra, &omega).unwrap();
        assert!(aut.lee_values(&theta).iter().any(|v| !v.is_zero()));
    }

    #[test]
    fn kinds_of_the_extensions() {
        for (name, omega) in [("g1", "-e01 - e24 - e35"), ("g2", "-e01 - e23 - e45")] {
            let g = get(name, &Params::from([("b".into(), int(1))]))
                .unwrap()
                .algebra;
            assert_eq!(
                classify_kind(&g, &f(&g, omega), &f(&g, "e0")).unwrap(),
                Kind::FirstKind
            );
        }
    }

    #[test]
    fn searches() {
        let b = SearchBudget::default();
        let d4p = parse_salamon("(24,-14,-12,0)").unwrap();
        let r = lcs_search(&d4p, &f(&d4p, "e4"), 0, &b).unwrap();
        assert_eq!(r.solution_basis.len(), 3);
        match r.outcome {
            SearchOutcome::Witness(w) => {
                assert!(verify_lcs(&d4p, &w, &f(&d4p, "e4")).is_ok());
                assert_eq!(w.coeff(&[0, 1]), -w.coeff(&[2, 3]));
            }
            other => panic!("{other:?}"),
        }
        let ex6 = get("ex6", &Params::new()).unwrap().algebra;
        assert_eq!(
            lcs_search(&ex6, &f(&ex6, "e5"), 0, &b).unwrap().outcome,
            SearchOutcome::Degenerate
        );
        let ab = LieAlgebra::abelian(4);
        let r = lcs_search(&ab, &f(&ab, "e1"), 0, &b).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Degenerate);
        for w in &r.solution_basis {
            assert!(f(&ab, "e1").wedge(w).unwrap().is_zero());
        }
    }

    #[test]
    fn contact_examples() {
        for name in ["h5", "h"] {
            let g = get(name, &Params::new()).unwrap().algebra;
            let c = verify_contact(&g, &f(&g, "e1")).unwrap();
            assert_eq!(c.reeb_vector, unit_vector(5, 0));
            if name == "h" {
                assert_eq!(c.volume, int(2));
            }
        }
        let ab = LieAlgebra::abelian(3);
        assert_eq!(
            verify_contact(&ab, &f(&ab, "e1")).unwrap_err(),
            Error::NotContact
        );
        assert_eq!(
            verify_contact(&LieAlgebra::abelian(4), &KForm::e(4, 0)).unwrap_err(),
            Error::EvenDimension(4)
        );
        let b = SearchBudget::default();
        for name in ["n1", "n2"] {
            let g = get(name, &Params::new()).unwrap().algebra;
            assert!(matches!(
                contact_search(&g, 0, &b).unwrap().0,
                SearchOutcome::Witness(_)
            ));
        }
        assert_eq!(
            contact_search(&LieAlgebra::abelian(5), 0, &b).unwrap().0,
            SearchOutcome::Degenerate
        );
    }
}
