use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rat, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `Rat`, coefficients in ascending degree.
/// Canonical: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| super::int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[shift + i] -= &q * c;
                }
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Multiplicity of the root 0.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`; the caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Evaluates the polynomial at a square matrix by Horner's scheme.
    pub fn eval_mat(&self, m: &super::Mat<Rat>) -> super::Mat<Rat> {
        let n = m.rows();
        let mut acc = super::Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&super::Mat::identity(n).scale(c));
        }
        acc
    }

    /// Distinct rational roots, ascending, by the rational root test.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.is_zero() {
            return Vec::new();
        }
        let z = self.zero_root_multiplicity();
        let p = self.shift_down(z);
        let mut roots = if z > 0 { vec![Rat::zero()] } else { Vec::new() };
        if p.degree().unwrap_or(0) > 0 {
            let den = p
                .coeffs
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = p
                .coeffs
                .iter()
                .map(|c| (c * Rat::from(den.clone())).to_integer())
                .collect();
            let a0 = divisors(&ints[0].abs());
            let an = divisors(&ints[ints.len() - 1].abs());
            for num in &a0 {
                for d in &an {
                    for sign in [-1, 1] {
                        let q = Rat::new(num * BigInt::from(sign), d.clone());
                        if p.eval(&q).is_zero() && !roots.contains(&q) {
                            roots.push(q);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&fmt_rat(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_rat(&abs));
                    out.push('*');
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let root = n.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Endpoint of a Sturm interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Bound {
    fn sign_of(&self, p: &Poly) -> i8 {
        let Some(d) = p.degree() else { return 0 };
        let lead_sign = if p.coeffs[d].is_positive() { 1 } else { -1 };
        match self {
            Bound::PosInf => lead_sign,
            Bound::NegInf => {
                if d % 2 == 0 {
                    lead_sign
                } else {
                    -lead_sign
                }
            }
            Bound::Finite(x) => {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn le(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a <= b,
        }
    }
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn variations(seq: &[Poly], at: &Bound) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| at.sign_of(p))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of the squarefree polynomial `p` in the
/// half-open interval `(lo, hi]`.
pub fn sturm_count(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !lo.le(hi) || lo == hi {
        return Ok(0);
    }
    let seq = sturm_sequence(p);
    let (vl, vh) = (variations(&seq, lo), variations(&seq, hi));
    Ok(vl.saturating_sub(vh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn sturm_examples() {
        let zero = Bound::Finite(int(0));
        assert_eq!(
            sturm_count(&Poly::from_i64(&[1, 1]), &Bound::NegInf, &zero).unwrap(),
            1
        );
        assert_eq!(
            sturm_count(&Poly::from_i64(&[-1, 1]), &Bound::NegInf, &zero).unwrap(),
            0
        );
        // (m+1)(m+2)
        assert_eq!(
            sturm_count(&Poly::from_i64(&[2, 3, 1]), &Bound::NegInf, &zero).unwrap(),
            2
        );
    }

    #[test]
    fn rational_roots_found() {
        // 4x^3 - x = x(2x - 1)(2x + 1), times (x^2 + 2)
        let p = &Poly::from_i64(&[0, -1, 0, 4]) * &Poly::from_i64(&[2, 0, 1]);
        assert_eq!(
            p.rational_roots(),
            vec![
                crate::exactmath::rat(-1, 2),
                int(0),
                crate::exactmath::rat(1, 2)
            ]
        );
        assert!(Poly::from_i64(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn sturm_half_open_endpoints() {
        // roots 0 and 1: (0, 1] holds one, (-1, 0] holds one
        let p = Poly::from_i64(&[0, -1, 1]);
        let b = |x| Bound::Finite(int(x));
        assert_eq!(sturm_count(&p, &b(0), &b(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &b(-1), &b(0)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            sturm_count(&Poly::zero(), &Bound::NegInf, &Bound::PosInf),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = &(&Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[-1, 1])) * &Poly::from_i64(&[2, 1]);
        let s = p.squarefree_part().monic();
        assert_eq!(s, Poly::from_i64(&[-2, 1, 1]));
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_i64(&[3, 0, -2, 5, 1]);
        let b = Poly::from_i64(&[1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
