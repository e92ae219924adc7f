use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, parse_rat, Rat, Ring};
use crate::error::{Error, Result};

/// Exact scalar `sum q_n pi^n` over finitely many integer exponents `n`.
///
/// Since pi is transcendental this is the Laurent polynomial ring
/// `Q[pi, 1/pi]`: equality is coefficientwise and the units are exactly the
/// nonzero monomials `q pi^n`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PiScalar {
    terms: BTreeMap<i32, Rat>,
}

impl PiScalar {
    pub fn monomial(q: Rat, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(exp, q);
        }
        PiScalar { terms }
    }

    pub fn rational(q: Rat) -> Self {
        Self::monomial(q, 0)
    }

    pub fn pi() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    /// `(n/d) * pi^exp`
    pub fn frac_pi(n: i64, d: i64, exp: i32) -> Self {
        Self::monomial(super::rat(n, d), exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.terms.iter().map(|(e, q)| (*e, q))
    }

    /// `Some((q, n))` when the value is the single term `q pi^n`.
    pub fn as_monomial(&self) -> Option<(Rat, i32)> {
        if self.terms.len() == 1 {
            let (e, q) = self.terms.iter().next().unwrap();
            Some((q.clone(), *e))
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        match self.as_monomial() {
            Some((q, 0)) => Some(q),
            _ => None,
        }
    }

    /// Integral iff the value is `q pi^0` with `q` an integer.
    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_integer())
    }

    /// Multiplicative inverse, which exists exactly for nonzero monomials.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((q, e)) => Ok(Self::monomial(q.recip(), -e)),
            None => Err(Error::NotInvertibleOverRing(self.to_string())),
        }
    }

    /// Parses sums of terms like `pi/2`, `2pi`, `2*pi`, `8/pi^3`, `-1/2`,
    /// `pi^2/3 + 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let src = s.replace(' ', "");
        if src.is_empty() {
            return Err(Error::Syntax {
                pos: 0,
                msg: "empty scalar".into(),
            });
        }
        let mut out = PiScalar::zero();
        let mut start = 0;
        let bytes = src.as_bytes();
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if boundary {
                out = out + Self::parse_term(&src[start..i], start)?;
                start = i;
            }
        }
        Ok(out)
    }

    fn parse_term(t: &str, pos: usize) -> Result<Self> {
        let err = |msg: &str| Error::Syntax {
            pos,
            msg: format!("{msg} in '{t}'"),
        };
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (-1, &t[1..]),
            Some(b'+') => (1, &t[1..]),
            _ => (1, t),
        };
        // numerator part / denominator part, each a product of a rational
        // and an optional pi power
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (
                n,
                Some(
                    d.strip_prefix('(')
                        .and_then(|d| d.strip_suffix(')'))
                        .unwrap_or(d),
                ),
            ),
            None => (body, None),
        };
        let factor = |part: &str| -> Result<(Rat, i32)> {
            let part = part.trim_matches('*');
            if part.is_empty() {
                return Ok((Rat::one(), 0));
            }
            match part.find("pi") {
                None => Ok((parse_rat(part).map_err(|_| err("bad number"))?, 0)),
                Some(k) => {
                    let coef = part[..k].trim_end_matches('*');
                    let q = if coef.is_empty() {
                        Rat::one()
                    } else {
                        parse_rat(coef).map_err(|_| err("bad coefficient"))?
                    };
                    let rest = &part[k + 2..];
                    let e = if rest.is_empty() {
                        1
                    } else if let Some(p) = rest.strip_prefix('^') {
                        p.parse::<i32>().map_err(|_| err("bad exponent"))?
                    } else {
                        return Err(err("unexpected text after pi"));
                    };
                    Ok((q, e))
                }
            }
        };
        let (qn, en) = factor(num)?;
        let (qd, ed) = match den {
            Some(d) => factor(d)?,
            None => (Rat::one(), 0),
        };
        if qd.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Self::monomial(
            qn / qd * Rat::from_integer(sign.into()),
            en - ed,
        ))
    }

    fn fmt_monomial(q: &Rat, e: i32) -> String {
        let pi_pow = |k: i32| {
            if k == 1 {
                "pi".to_string()
            } else {
                format!("pi^{k}")
            }
        };
        match e {
            0 => fmt_rat(q),
            e if e > 0 => {
                if q.is_one() {
                    pi_pow(e)
                } else if q.is_integer() {
                    format!("{}*{}", q.numer(), pi_pow(e))
                } else if q.numer() == &1.into() {
                    format!("{}/{}", pi_pow(e), q.denom())
                } else {
                    format!("{}*{}/{}", q.numer(), pi_pow(e), q.denom())
                }
            }
            e => {
                let den = if q.denom() == &1.into() {
                    pi_pow(-e)
                } else {
                    format!("({}*{})", q.denom(), pi_pow(-e))
                };
                format!("{}/{}", q.numer(), den)
            }
        }
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, q) in self.terms.iter().rev() {
            if first {
                if q.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if q.is_negative() { " - " } else { " + " })?;
            }
            f.write_str(&Self::fmt_monomial(&q.abs(), *e))?;
            first = false;
        }
        Ok(())
    }
}

impl From<Rat> for PiScalar {
    fn from(q: Rat) -> Self {
        PiScalar::rational(q)
    }
}

impl Add for PiScalar {
    type Output = PiScalar;
    fn add(mut self, o: PiScalar) -> PiScalar {
        for (e, q) in o.terms {
            let entry = self.terms.entry(e).or_insert_with(Rat::zero);
            *entry += q;
            if entry.is_zero() {
                self.terms.remove(&e);
            }
        }
        self
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar {
            terms: self.terms.into_iter().map(|(e, q)| (e, -q)).collect(),
        }
    }
}

impl Sub for PiScalar {
    type Output = PiScalar;
    fn sub(self, o: PiScalar) -> PiScalar {
        self + (-o)
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, o: PiScalar) -> PiScalar {
        let mut out = PiScalar::zero();
        for (ea, qa) in &self.terms {
            for (eb, qb) in &o.terms {
                out = out + PiScalar::monomial(qa * qb, ea + eb);
            }
        }
        out
    }
}

impl Zero for PiScalar {
    fn zero() -> Self {
        PiScalar {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PiScalar {
    fn one() -> Self {
        PiScalar::rational(Rat::one())
    }
}

impl Ring for PiScalar {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn reciprocal_pair_multiplies_to_one() {
        let a = PiScalar::frac_pi(1, 2, 1);
        let b = PiScalar::frac_pi(2, 1, -1);
        assert_eq!(a * b, PiScalar::one());
    }

    #[test]
    fn integrality() {
        assert!(PiScalar::rational(int(3)).is_integer());
        assert!(!PiScalar::rational(rat(3, 2)).is_integer());
        assert!(!PiScalar::pi().is_integer());
        assert!(PiScalar::zero().is_integer());
        assert!(!(PiScalar::pi() + PiScalar::one()).is_integer());
    }

    #[test]
    fn parse_and_display() {
        for (s, shown) in [
            ("pi/2", "pi/2"),
            ("2pi", "2*pi"),
            ("2*pi", "2*pi"),
            ("8/pi^3", "8/pi^3"),
            ("-1/2", "-1/2"),
            ("2/pi", "2/pi"),
            ("4/pi^2", "4/pi^2"),
            ("1/2pi", "1/(2*pi)"),
        ] {
            assert_eq!(PiScalar::parse(s).unwrap().to_string(), shown, "{s}");
        }
        let x = PiScalar::parse("pi^2/3 + 1 - 4/pi").unwrap();
        assert_eq!(x.to_string(), "pi^2/3 + 1 - 4/pi");
        assert_eq!(PiScalar::parse(&x.to_string()).unwrap(), x);
        assert!(PiScalar::parse("pix").is_err());
    }

    #[test]
    fn inverse_only_for_monomials() {
        assert_eq!(
            PiScalar::frac_pi(8, 1, -3).inverse().unwrap(),
            PiScalar::frac_pi(1, 8, 3)
        );
        assert!((PiScalar::pi() + PiScalar::one()).inverse().is_err());
        assert!(PiScalar::zero().inverse().is_err());
    }
}
