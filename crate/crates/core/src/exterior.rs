//! Exterior algebra of the dual: k-forms, wedge and interior products, the
//! Chevalley-Eilenberg differential and its twisted version.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, push_signed_term, Mat, Rat, Vector};
use crate::liealg::LieAlgebra;

/// Element of `Lambda^k g*` in the basis `e^{i1..ik}`, `i1 < .. < ik`
/// (0-based). Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rat>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` when an
/// index repeats.
fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// All strictly increasing k-tuples from `0..n` in lexicographic order.
pub fn basis_monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Self::from_terms(dim, 0, [(Vec::new(), c)])
    }

    /// `e^{i1} ^ .. ^ e^{ik}` for arbitrary (possibly unsorted) indices.
    pub fn monomial(dim: usize, idx: &[usize]) -> Self {
        Self::from_terms(dim, idx.len(), [(idx.to_vec(), Rat::one())])
    }

    /// The dual basis 1-form `e^i`.
    pub fn e(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i])
    }

    /// Sum of `c * e^{idx}`; indices may be unsorted or repeated.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rat)>,
    ) -> Self {
        let mut f = Self::zero(dim, degree);
        for (mut idx, c) in terms {
            assert_eq!(idx.len(), degree, "term degree");
            assert!(idx.iter().all(|&i| i < dim), "index out of range");
            if let Some(odd) = sort_sign(&mut idx) {
                f.add_term(idx, if odd { -c } else { c });
            }
        }
        f
    }

    /// 1-form `sum v_i e^i`.
    pub fn one_form(v: &[Rat]) -> Self {
        Self::from_vector(v.len(), 1, v)
    }

    /// Form from coordinates in the [`basis_monomials`] order.
    pub fn from_vector(dim: usize, degree: usize, v: &[Rat]) -> Self {
        let basis = basis_monomials(dim, degree);
        assert_eq!(basis.len(), v.len(), "coordinate vector length");
        Self::from_terms(dim, degree, basis.into_iter().zip(v.iter().cloned()))
    }

    /// Coordinates in the [`basis_monomials`] order.
    pub fn to_vector(&self) -> Vector {
        basis_monomials(self.dim, self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// 2-form with `omega(e_i, e_j) = m[i][j]`; `m` must be skew.
    pub fn from_skew_matrix(m: &Mat<Rat>) -> Self {
        assert!(m.is_skew());
        let n = m.rows();
        Self::from_terms(
            n,
            2,
            basis_monomials(n, 2).into_iter().map(|ij| {
                let c = m[(ij[0], ij[1])].clone();
                (ij, c)
            }),
        )
    }

    /// Gram matrix `omega(e_i, e_j)` of a 2-form.
    pub fn skew_matrix(&self) -> Mat<Rat> {
        assert_eq!(self.degree, 2, "skew_matrix needs a 2-form");
        let mut m = Mat::zeros(self.dim, self.dim);
        for (idx, c) in &self.coeffs {
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c.clone();
        }
        m
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> Rat {
        self.coeffs.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.coeffs.iter()
    }

    /// Value of a 1-form on a vector.
    pub fn eval1(&self, x: &[Rat]) -> Rat {
        assert_eq!(self.degree, 1, "eval1 needs a 1-form");
        self.coeffs.iter().map(|(idx, c)| c * &x[idx[0]]).sum()
    }

    fn check_same_dim(&self, other: &KForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &KForm) -> Result<()> {
        self.check_same_dim(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KForm {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, s: &Rat) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        for (idx, c) in &self.coeffs {
            out.add_term(idx.clone(), c * s);
        }
        out
    }

    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        self.check_same_dim(other)?;
        let degree = self.degree + other.degree;
        let mut out = KForm::zero(self.dim, degree);
        if degree > self.dim {
            return Ok(out);
        }
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some(odd) = sort_sign(&mut idx) {
                    let c = ca * cb;
                    out.add_term(idx, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `i_x alpha`, contraction in the first slot.
    pub fn interior(&self, x: &[Rat]) -> Result<KForm> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut out = KForm::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.coeffs {
            for (p, &i) in idx.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(p);
                let v = c * &x[i];
                out.add_term(rest, if p % 2 == 1 { -v } else { v });
            }
        }
        Ok(out)
    }

    /// Form literal with display indices `i + offset`, e.g. `e12 - 2*e34`.
    pub fn render(&self, offset: usize) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        if self.degree == 0 {
            return fmt_rat(&self.coeff(&[]));
        }
        let wide = self.dim + offset > 10;
        let mut out = String::new();
        for (idx, c) in &self.coeffs {
            let digits: Vec<String> = idx.iter().map(|i| (i + offset).to_string()).collect();
            let name = if wide {
                format!("e[{}]", digits.join(","))
            } else {
                format!("e{}", digits.concat())
            };
            push_signed_term(&mut out, c, &name);
        }
        out
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(1))
    }
}

/// `d e^k` for every k: `-sum_{i<j} c^k_ij e^{ij}`.
fn basis_differentials(g: &LieAlgebra) -> Vec<KForm> {
    let n = g.dim();
    let mut out = vec![KForm::zero(n, 2); n];
    for (i, j) in g.nonzero_pairs() {
        let br = g.bracket_basis(i, j);
        for (k, c) in br.iter().enumerate() {
            if !c.is_zero() {
                out[k].add_term(vec![i, j], -c.clone());
            }
        }
    }
    out
}

/// Chevalley-Eilenberg differential: `(d a)(x, y) = -a([x, y])` on
/// 1-forms, extended as an antiderivation of degree +1.
pub fn cediff(g: &LieAlgebra, alpha: &KForm) -> Result<KForm> {
    let n = g.dim();
    if alpha.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.dim,
        });
    }
    let de = basis_differentials(g);
    Ok(cediff_with(&de, alpha))
}

fn cediff_with(de: &[KForm], alpha: &KForm) -> KForm {
    let n = alpha.dim;
    let mut out = KForm::zero(n, alpha.degree + 1);
    if alpha.degree + 1 > n {
        return out;
    }
    for (idx, c) in &alpha.coeffs {
        for (p, &ip) in idx.iter().enumerate() {
            for (pair, cd) in &de[ip].coeffs {
                // replace slot p by the pair, then sort
                let mut m: Vec<usize> = idx[..p].to_vec();
                m.extend_from_slice(pair);
                m.extend_from_slice(&idx[p + 1..]);
                if let Some(odd) = sort_sign(&mut m) {
                    let v = c * cd;
                    let neg = odd ^ (p % 2 == 1);
                    out.add_term(m, if neg { -v } else { v });
                }
            }
        }
    }
    out
}

fn check_theta(g: &LieAlgebra, theta: &KForm) -> Result<()> {
    if theta.degree != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: theta.degree,
        });
    }
    let dtheta = cediff(g, theta)?;
    if !dtheta.is_zero() {
        return Err(Error::ThetaNotClosed {
            defect: dtheta.render(g.basis_offset()),
        });
    }
    Ok(())
}

/// Twisted differential `d_theta a = d a - theta ^ a`; `theta` must be a
/// closed 1-form (it may be zero).
pub fn twisted_diff(g: &LieAlgebra, theta: &KForm, alpha: &KForm) -> Result<KForm> {
    check_theta(g, theta)?;
    cediff(g, alpha)?.sub(&theta.wedge(alpha)?)
}

/// Matrix of `d_theta: Lambda^k -> Lambda^{k+1}` in the monomial bases:
/// `C(n,k)` columns and `C(n,k+1)` rows.
pub fn differential_matrix(g: &LieAlgebra, theta: &KForm, k: usize) -> Result<Mat<Rat>> {
    check_theta(g, theta)?;
    let n = g.dim();
    let de = basis_differentials(g);
    let src = basis_monomials(n, k);
    let rows = basis_monomials(n, k + 1).len();
    let cols: Vec<Vector> = src
        .iter()
        .map(|m| {
            let a = KForm::monomial(n, m);
            let d = cediff_with(&de, &a)
                .sub(&theta.wedge(&a).expect("same dim"))
                .expect("shape");
            if rows == 0 {
                Vec::new()
            } else {
                d.to_vector()
            }
        })
        .collect();
    Ok(Mat::from_cols(rows, &cols))
}

/// Action of a derivation `D` of the algebra on forms, `a -> -a o D`,
/// extended as a derivation of degree 0. For `D = ad_x` this is the Lie
/// derivative `L_x`.
pub fn derivation_action(d: &Mat<Rat>, alpha: &KForm) -> KForm {
    let n = alpha.dim;
    assert_eq!((d.rows(), d.cols()), (n, n), "derivation size");
    let mut out = KForm::zero(n, alpha.degree);
    for (idx, c) in &alpha.coeffs {
        for (p, &ip) in idx.iter().enumerate() {
            // e^ip o D = sum_j D[ip][j] e^j
            for j in 0..n {
                let dij = &d[(ip, j)];
                if dij.is_zero() {
                    continue;
                }
                let mut m = idx.clone();
                m[p] = j;
                if let Some(odd) = sort_sign(&mut m) {
                    let v = -(c * dij);
                    out.add_term(m, if odd { -v } else { v });
                }
            }
        }
    }
    out
}
