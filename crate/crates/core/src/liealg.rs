//! Lie algebras given by structure constants, and their structural
//! invariants.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, JacobiDefect, Result};
use crate::exactmath::{
    fmt_basis_combination, kernel_basis, rank, rref, solve, spectrum_purely_imaginary, Mat, Rat,
    Vector,
};
use crate::exterior::{cediff, KForm};

pub const MAX_DIM: usize = 8;

/// Real Lie algebra on the basis `e_0..e_{n-1}` with
/// `[e_i, e_j] = sum_k c^k_ij e_k`. Only pairs `i < j` are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vector>,
    basis_offset: usize,
    name: Option<String>,
}

impl LieAlgebra {
    /// Builds and validates an algebra from brackets `[e_i, e_j] = v`
    /// (0-based). Pairs may be given in either order; repeated pairs add.
    pub fn new(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut map: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (i, j, v) in brackets {
            for &idx in &[i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if i == j {
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                return Err(Error::InvalidParam(format!("[e{i}, e{i}] must vanish")));
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.iter().map(|x| -x).collect())
            };
            let slot = map.entry(key).or_insert_with(|| vec![Rat::zero(); dim]);
            for (a, b) in slot.iter_mut().zip(v) {
                *a += b;
            }
        }
        map.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        let g = LieAlgebra {
            dim,
            brackets: map,
            basis_offset: 1,
            name: None,
        };
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, [])
            .expect("abelian algebra")
            .named(&format!("R{dim}"))
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_offset(mut self, offset: usize) -> Self {
        self.basis_offset = offset;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_offset(&self) -> usize {
        self.basis_offset
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Pairs `i < j` with a nonzero bracket.
    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.brackets.keys().copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[e_i, e_j]` for any `i, j`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        if i < j {
            if let Some(v) = self.brackets.get(&(i, j)) {
                return v.clone();
            }
        } else if j < i {
            if let Some(v) = self.brackets.get(&(j, i)) {
                return v.iter().map(|x| -x).collect();
            }
        }
        vec![Rat::zero(); self.dim]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.bracket_basis(i, j)[k].clone()
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vector {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for (&(i, j), v) in &self.brackets {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (o, vk) in out.iter_mut().zip(v) {
                *o += &c * vk;
            }
        }
        out
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad(&self, x: &[Rat]) -> Result<Mat<Rat>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket(x, &crate::exactmath::unit_vector(self.dim, j)))
            .collect();
        Ok(Mat::from_cols(self.dim, &cols))
    }

    pub fn ad_basis(&self, i: usize) -> Mat<Rat> {
        Mat::from_cols(
            self.dim,
            &(0..self.dim)
                .map(|j| self.bracket_basis(i, j))
                .collect::<Vec<_>>(),
        )
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        let mut violations = Vec::new();
        let e = |i| crate::exactmath::unit_vector(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&self.bracket_basis(i, j), &e(k));
                    let b = self.bracket(&self.bracket_basis(j, k), &e(i));
                    let c = self.bracket(&self.bracket_basis(k, i), &e(j));
                    let s: Vector = (0..n).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if s.iter().any(|x| !x.is_zero()) {
                        let off = self.basis_offset;
                        violations.push(JacobiDefect {
                            triple: (i + off, j + off, k + off),
                            defect: self.render_vector(&s),
                        });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::JacobiViolation { violations })
        }
    }

    /// Span of `[a, b]` for `a` in `xs`, `b` in `ys`, as an echelon basis.
    pub fn bracket_span(&self, xs: &[Vector], ys: &[Vector]) -> Vec<Vector> {
        let mut rows = Vec::new();
        for a in xs {
            for b in ys {
                let v = self.bracket(a, b);
                if v.iter().any(|x| !x.is_zero()) {
                    rows.push(v);
                }
            }
        }
        span_basis(self.dim, rows)
    }

    pub fn full_basis(&self) -> Vec<Vector> {
        (0..self.dim)
            .map(|i| crate::exactmath::unit_vector(self.dim, i))
            .collect()
    }

    /// Dimensions of `g, [g,g], [g',g'], ...` until it stabilises (the
    /// stable value appears once).
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut cur = self.full_basis();
        let mut dims = vec![cur.len()];
        loop {
            let next = self.bracket_span(&cur, &cur);
            if next.len() == cur.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            cur = next;
        }
    }

    /// Dimensions of `g, [g,g], [g,[g,g]], ...` until it stabilises.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let full = self.full_basis();
        let mut cur = full.clone();
        let mut dims = vec![cur.len()];
        loop {
            let next = self.bracket_span(&full, &cur);
            if next.len() == cur.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            cur = next;
        }
    }

    pub fn center(&self) -> Vec<Vector> {
        let n = self.dim;
        // [x, e_j] = -ad_{e_j} x
        let mut rows = Vec::new();
        for j in 0..n {
            rows.extend(self.ad_basis(j).to_rows());
        }
        kernel_basis(&Mat::from_rows(rows))
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero())
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series_dims().last() == Some(&0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_dims().last() == Some(&0)
    }

    /// For solvable algebras: every `ad_{e_j}` has purely imaginary
    /// spectrum. By Lie's theorem the eigenvalues of `ad_x` are linear in
    /// `x` after simultaneous triangularisation, so the basis test decides
    /// type I. `None` when the algebra is not solvable.
    pub fn is_type_i(&self) -> Option<bool> {
        if !self.is_solvable() {
            return None;
        }
        Some((0..self.dim).all(|i| spectrum_purely_imaginary(&self.ad_basis(i)).expect("square")))
    }

    pub fn structural_profile(&self) -> StructuralProfile {
        StructuralProfile {
            unimodular: self.is_unimodular(),
            solvable: self.is_solvable(),
            nilpotent: self.is_nilpotent(),
            type_i: self.is_type_i(),
            center_dim: self.center().len(),
            derived_series_dims: self.derived_series_dims(),
            lower_central_dims: self.lower_central_dims(),
        }
    }

    /// Closed 1-forms: the annihilator of `[g, g]`.
    pub fn closed_one_forms(&self) -> Vec<KForm> {
        let derived = self.bracket_span(&self.full_basis(), &self.full_basis());
        if derived.is_empty() {
            return (0..self.dim).map(|i| KForm::e(self.dim, i)).collect();
        }
        kernel_basis(&Mat::from_rows(derived))
            .iter()
            .map(|v| KForm::one_form(v))
            .collect()
    }

    pub fn render_vector(&self, v: &[Rat]) -> String {
        fmt_basis_combination(v, self.basis_offset)
    }

    pub fn render_form(&self, f: &KForm) -> String {
        f.render(self.basis_offset)
    }

    /// Human-readable bracket table, e.g. `[e1,e2] = e3`.
    pub fn bracket_table(&self) -> Vec<String> {
        let off = self.basis_offset;
        self.brackets
            .iter()
            .map(|(&(i, j), v)| format!("[e{},e{}] = {}", i + off, j + off, self.render_vector(v)))
            .collect()
    }
}

/// Echelon basis of the row span of `rows`.
pub(crate) fn span_basis(dim: usize, rows: Vec<Vector>) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let red = rref(&Mat::from_rows(rows));
    debug_assert_eq!(red.matrix.cols(), dim);
    (0..red.rank())
        .map(|i| red.matrix.row(i).to_vec())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralProfile {
    pub unimodular: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub type_i: Option<bool>,
    pub center_dim: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
}

/// Search limits for [`find_imaginary_transversal`].
#[derive(Clone, Debug)]
pub struct TransversalBudget {
    /// Grid coefficients range over `-grid_radius..=grid_radius`.
    pub grid_radius: i64,
    pub max_candidates: usize,
}

impl Default for TransversalBudget {
    fn default() -> Self {
        TransversalBudget {
            grid_radius: 2,
            max_candidates: 4096,
        }
    }
}

fn check_closed_nonzero(g: &LieAlgebra, theta: &KForm) -> Result<()> {
    if theta.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: theta.degree(),
        });
    }
    let d = cediff(g, theta)?;
    if !d.is_zero() {
        return Err(Error::ThetaNotClosed {
            defect: g.render_form(&d),
        });
    }
    if theta.is_zero() {
        return Err(Error::ThetaZero);
    }
    Ok(())
}

/// Looks for `A` with `theta(A) = 1` and `ad_A` purely imaginary.
///
/// Candidates, in order: the metric dual `theta# / |theta|^2`, the scaled
/// basis vectors `e_j / theta(e_j)`, then `A0 + sum c_i k_i` over a basis
/// `k_i` of `ker theta` with integer `|c_i| <= grid_radius`. `Ok(None)`
/// means the budget was exhausted, not that no such `A` exists.
pub fn find_imaginary_transversal(
    g: &LieAlgebra,
    theta: &KForm,
    budget: &TransversalBudget,
) -> Result<Option<Vector>> {
    check_closed_nonzero(g, theta)?;
    let n = g.dim();
    let t = theta.to_vector();
    let norm2: Rat = t.iter().map(|x| x * x).sum();
    let a0: Vector = t.iter().map(|x| x / &norm2).collect();
    let tried = std::cell::Cell::new(0usize);
    let test = |a: &Vector| -> bool {
        tried.set(tried.get() + 1);
        spectrum_purely_imaginary(&g.ad(a).expect("dim")).expect("square")
    };
    if test(&a0) {
        return Ok(Some(a0));
    }
    for j in 0..n {
        if t[j].is_zero() {
            continue;
        }
        let mut a = vec![Rat::zero(); n];
        a[j] = t[j].recip();
        if test(&a) {
            return Ok(Some(a));
        }
    }
    let ker = kernel_basis(&Mat::from_rows(vec![t.clone()]));
    let r = budget.grid_radius;
    let side = (2 * r + 1) as usize;
    let mut coeffs = vec![-r; ker.len()];
    let total = side.checked_pow(ker.len() as u32).unwrap_or(usize::MAX);
    for _ in 0..total {
        if tried.get() >= budget.max_candidates {
            break;
        }
        if coeffs.iter().any(|&c| c != 0) {
            let mut a = a0.clone();
            for (c, k) in coeffs.iter().zip(&ker) {
                let c = Rat::from_integer((*c).into());
                for (ai, ki) in a.iter_mut().zip(k) {
                    *ai += &c * ki;
                }
            }
            if test(&a) {
                return Ok(Some(a));
            }
        }
        // odometer step
        for c in coeffs.iter_mut() {
            if *c < r {
                *c += 1;
                break;
            }
            *c = -r;
        }
    }
    Ok(None)
}

/// `ker theta` as an algebra in its own right, with the inclusion map.
#[derive(Clone, Debug)]
pub struct KernelSubalgebra {
    pub algebra: LieAlgebra,
    /// `n x (n-1)` matrix whose columns are the chosen basis of `ker theta`.
    pub embedding: Mat<Rat>,
}

impl KernelSubalgebra {
    /// Coordinates of `v` (which must lie in the kernel) in the chosen basis.
    pub fn coords(&self, v: &[Rat]) -> Vector {
        solve(&self.embedding, v).expect("vector lies in the subalgebra")
    }
}

pub fn kernel_subalgebra(g: &LieAlgebra, theta: &KForm) -> Result<KernelSubalgebra> {
    check_closed_nonzero(g, theta)?;
    let basis = kernel_basis(&Mat::from_rows(vec![theta.to_vector()]));
    let m = basis.len();
    let embedding = Mat::from_cols(g.dim(), &basis);
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let v = g.bracket(&basis[a], &basis[b]);
            let c = solve(&embedding, &v).expect("ker theta is a subalgebra when d theta = 0");
            brackets.push((a, b, c));
        }
    }
    let algebra = LieAlgebra::new(m, brackets)?;
    Ok(KernelSubalgebra { algebra, embedding })
}

/// Isomorphism invariants. Different fingerprints prove the algebras are
/// not isomorphic; equal fingerprints prove nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub betti: Vec<usize>,
    pub unimodular: bool,
    pub solvable: bool,
    pub nilpotent: bool,
}

pub fn invariant_fingerprint(g: &LieAlgebra) -> Fingerprint {
    let betti = crate::cohomology::cohomology(g, &KForm::zero(g.dim(), 1))
        .expect("zero form is closed")
        .dims;
    Fingerprint {
        dim: g.dim(),
        derived_series_dims: g.derived_series_dims(),
        lower_central_dims: g.lower_central_dims(),
        center_dim: g.center().len(),
        betti,
        unimodular: g.is_unimodular(),
        solvable: g.is_solvable(),
        nilpotent: g.is_nilpotent(),
    }
}

/// Rank of the bracket map, i.e. `dim [g, g]`.
pub fn derived_dim(g: &LieAlgebra) -> usize {
    let rows: Vec<Vector> = g.brackets.values().cloned().collect();
    if rows.is_empty() {
        0
    } else {
        rank(&Mat::from_rows(rows))
    }
}

impl LieAlgebra {
    /// `true` when `e_i -> v_i` (columns of `m`) transports these brackets
    /// onto `other`'s.
    pub fn is_homomorphism_to(&self, other: &LieAlgebra, m: &Mat<Rat>) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = m.mul_vec(&self.bracket_basis(i, j));
                let rhs = other.bracket(&m.col(i), &m.col(j));
                lhs == rhs
            })
        })
    }
}
