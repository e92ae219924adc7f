use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{fmt_rat, push_signed_term, Rat, Ring};

/// Exponent vector with trailing zeros trimmed, so `x0` is `[1]` and the
/// constant monomial is `[]`.
type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over `Rat` in variables `x0, x1, ...`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        MPoly {
            terms: BTreeMap::from([(m, Rat::one())]),
        }
    }

    /// `sum c_i x_i`
    pub fn linear(coeffs: &[Rat]) -> Self {
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(MPoly::zero(), |acc, (i, c)| {
                acc + MPoly::var(i) * MPoly::constant(c.clone())
            })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let name: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{e}")
                    }
                })
                .collect();
            if name.is_empty() {
                let neg = c.is_negative();
                if out.is_empty() {
                    out.push_str(if neg { "-" } else { "" });
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                out.push_str(&fmt_rat(&c.abs()));
            } else {
                push_signed_term(&mut out, c, &name.join("*"));
            }
        }
        f.write_str(&out)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, o: MPoly) -> MPoly {
        for (m, c) in o.terms {
            self.insert(m, c);
        }
        self
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        self + (-o)
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.insert(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(Rat::one())
    }
}

impl Ring for MPoly {}
