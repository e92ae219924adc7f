//! Exact scalars and the dense linear-algebra kernel.
//!
//! Everything here works over `Rat` (arbitrary-precision rationals) or over
//! [`PiScalar`], the ring of finite sums `sum q_n pi^n`. No floating point is
//! used anywhere.

mod linalg;
mod matrix;
mod mpoly;
mod pi;
mod poly;

pub use linalg::{
    char_poly, det, inverse, kernel_basis, pfaffian, rank, rref, solve, spectrum_purely_imaginary,
    Rref,
};
pub use matrix::{Mat, Ring};
pub use mpoly::MPoly;
pub use pi::PiScalar;
pub use poly::{sturm_count, Bound, Poly};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Column vector of rationals.
pub type Vector = Vec<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::Syntax {
        pos: 0,
        msg: format!("{msg}: '{s}'"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_vector(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

/// Renders `v` as a combination of basis vectors `e_i`, with display
/// indices starting at `offset`.
pub fn fmt_basis_combination(v: &[Rat], offset: usize) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = format!("e{}", i + offset);
        push_signed_term(&mut out, c, &name);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Appends `c*name` to a sum being built, choosing `+`/`-` separators.
pub(crate) fn push_signed_term(out: &mut String, c: &Rat, name: &str) {
    let neg = c.is_negative();
    let abs = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !abs.is_one() {
        out.push_str(&fmt_rat(&abs));
        out.push('*');
    }
    out.push_str(name);
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vector(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}
