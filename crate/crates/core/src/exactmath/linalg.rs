use num_traits::{One, Zero};

use super::{poly::Bound, sturm_count, Mat, Poly, Rat, Ring, Vector};
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat<Rat>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Mat<Rat>) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let delta = &f * &a[(r, j)];
                a[(i, j)] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &Mat<Rat>) -> usize {
    rref(m).rank()
}

/// Canonical kernel basis: one vector per free column `f`, with a 1 in
/// position `f`, zeros at the other free columns, and pivot entries read
/// off the reduced echelon form. Two matrices with the same row space give
/// identical output.
pub fn kernel_basis(m: &Mat<Rat>) -> Vec<Vector> {
    let cols = m.cols();
    let red = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !red.pivots.contains(c)).collect();
    let basis: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix[(i, f)].clone();
            }
            v
        })
        .collect();
    // rank-nullity
    assert_eq!(basis.len() + red.rank(), cols);
    debug_assert!(basis.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero)));
    basis
}

/// One solution of `m x = b` (free variables set to zero), or `None` when
/// the system is inconsistent.
pub fn solve(m: &Mat<Rat>, b: &[Rat]) -> Option<Vector> {
    assert_eq!(m.rows(), b.len());
    let cols = m.cols();
    let aug = Mat::from_fn(m.rows(), cols + 1, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let red = rref(&aug);
    if red.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(i, cols)].clone();
    }
    Some(x)
}

/// Determinant by fraction-exact elimination.
pub fn det(m: &Mat<Rat>) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != c {
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = tmp;
            }
            d = -d;
        }
        d *= &a[(c, c)];
        let inv = a[(c, c)].recip();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] * &inv;
            for j in c..n {
                let delta = &f * &a[(c, j)];
                a[(i, j)] -= delta;
            }
        }
    }
    Ok(d)
}

pub fn inverse(m: &Mat<Rat>) -> Result<Mat<Rat>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let red = rref(&aug);
    if red.pivots.iter().take(n).copied().ne(0..n) {
        return Err(Error::Singular);
    }
    Ok(Mat::from_fn(n, n, |i, j| red.matrix[(i, n + j)].clone()))
}

/// Monic `det(x I - M)` by the Faddeev-LeVerrier recurrence.
pub fn char_poly(m: &Mat<Rat>) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let id = Mat::<Rat>::identity(n);
    let mut mk = Mat::<Rat>::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&id.scale(&coeffs[n - k + 1]));
        let tr = m.mul(&mk).trace();
        coeffs[n - k] = -tr / Rat::from_integer((k as i64).into());
    }
    Ok(Poly::new(coeffs))
}

/// Pfaffian of a skew-symmetric matrix of even size, by expansion along
/// the first row. Division free, so it runs over any ring.
pub fn pfaffian<T: Ring>(m: &Mat<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    if m.rows() % 2 == 1 {
        return Err(Error::OddSize(m.rows()));
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(pf_rec(m, &idx))
}

fn pf_rec<T: Ring>(m: &Mat<T>, idx: &[usize]) -> T {
    if idx.is_empty() {
        return T::one();
    }
    let first = idx[0];
    let mut acc = T::zero();
    for k in 1..idx.len() {
        let a = &m[(first, idx[k])];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&i| i != idx[k]).collect();
        let term = a.clone() * pf_rec(m, &rest);
        // sign (-1)^(k+1) with k counted from 1
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

/// True iff every complex eigenvalue of `m` lies on the imaginary axis.
///
/// Strips the factor `x^k` from the characteristic polynomial; the rest
/// must be even, `r(x) = s(x^2)`, and the squarefree part of `s` must have
/// all of its roots real and non-positive.
pub fn spectrum_purely_imaginary(m: &Mat<Rat>) -> Result<bool> {
    let p = char_poly(m)?;
    let r = p.shift_down(p.zero_root_multiplicity());
    if r.coeffs()
        .iter()
        .enumerate()
        .any(|(i, c)| i % 2 == 1 && !c.is_zero())
    {
        return Ok(false);
    }
    let s = Poly::new(r.coeffs().iter().step_by(2).cloned().collect());
    let sf = s.squarefree_part();
    let deg = sf.degree().expect("nonzero");
    if deg == 0 {
        return Ok(true);
    }
    let count = sturm_count(&sf, &Bound::NegInf, &Bound::Finite(Rat::zero()))?;
    Ok(count == deg)
}
