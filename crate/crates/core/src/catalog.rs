//! Named algebras with their known LCS and contact structures.
//!
//! Keys: `aff_r, h3, r3_-1, r3p_0, n4, d4, d4p_0, h3xR, r3p0xR,
//! r3p0xR_table, r3_-1xR, aff_r2, h5, n1, n2, h, g1, g2, ex6, kf6`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, int, Rat, Vector};
use crate::exterior::KForm;
use crate::liealg::LieAlgebra;
use crate::parse::{parse_form, parse_salamon};

/// Named rational parameters such as `b` or `sigma`.
pub type Params = BTreeMap<String, Rat>;

/// Profile flags an entry is expected to have; `None` means no claim.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpectedProfile {
    pub unimodular: Option<bool>,
    pub nilpotent: Option<bool>,
    pub type_i: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    /// `(omega, theta)`
    pub known_lcs: Option<(KForm, KForm)>,
    pub known_contact: Option<KForm>,
    pub expected: ExpectedProfile,
    pub description: String,
}

/// Every key together with the parameters it accepts.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("aff_r", ""),
        ("h3", ""),
        ("r3_-1", ""),
        ("r3p_0", ""),
        ("n4", ""),
        ("d4", "sigma>0 (default 1)"),
        ("d4p_0", "c>0 (default 1)"),
        ("h3xR", ""),
        ("r3p0xR", ""),
        ("r3p0xR_table", ""),
        ("r3_-1xR", ""),
        ("aff_r2", ""),
        ("h5", ""),
        ("n1", ""),
        ("n2", ""),
        ("h", ""),
        ("g1", "b (required)"),
        ("g2", "b (required)"),
        ("ex6", ""),
        ("kf6", "a!=0, b (default 1, 1)"),
    ]
}

/// Instances of every entry with parameters fixed, for audits and sweeps.
pub fn all_instances() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (name, _) in list() {
        match name {
            "g1" | "g2" => {
                for b in [0, 1] {
                    out.push(
                        get(name, &Params::from([("b".to_string(), int(b))]))
                            .expect("catalog entry"),
                    );
                }
            }
            _ => out.push(get(name, &Params::new()).expect("catalog entry")),
        }
    }
    out
}

struct Builder {
    dim: usize,
    offset: usize,
    brackets: Vec<(usize, usize, Vector)>,
}

impl Builder {
    fn new(dim: usize, offset: usize) -> Self {
        Builder {
            dim,
            offset,
            brackets: Vec::new(),
        }
    }

    /// `[e_i, e_j] += sum c e_k`, display indices.
    fn br(mut self, i: usize, j: usize, out: &[(usize, Rat)]) -> Self {
        let mut v = vec![Rat::zero(); self.dim];
        for (k, c) in out {
            v[k - self.offset] += c;
        }
        self.brackets.push((i - self.offset, j - self.offset, v));
        self
    }

    fn build(self, name: &str) -> LieAlgebra {
        LieAlgebra::new(self.dim, self.brackets)
            .expect("catalog brackets satisfy Jacobi")
            .named(name)
            .with_offset(self.offset)
    }
}

fn one() -> Rat {
    int(1)
}

fn param(name: &str, params: &Params, key: &str, default: Option<Rat>) -> Result<Rat> {
    match params.get(key).cloned().or(default) {
        Some(v) => Ok(v),
        None => Err(Error::MissingParam {
            name: name.into(),
            param: key.into(),
        }),
    }
}

fn positive(key: &str, v: &Rat) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!(
            "{key} must be positive, got {}",
            fmt_rat(v)
        )))
    }
}

fn form(g: &LieAlgebra, s: &str) -> KForm {
    parse_form(s, g.dim(), g.basis_offset()).expect("catalog form literal")
}

fn entry(name: &str, algebra: LieAlgebra, description: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        algebra,
        known_lcs: None,
        known_contact: None,
        expected: ExpectedProfile::default(),
        description: description.into(),
    }
}

impl CatalogEntry {
    fn lcs(mut self, omega: KForm, theta: KForm) -> Self {
        self.known_lcs = Some((omega, theta));
        self
    }

    fn lcs_str(self, omega: &str, theta: &str) -> Self {
        let (o, t) = (form(&self.algebra, omega), form(&self.algebra, theta));
        self.lcs(o, t)
    }

    fn contact(mut self, eta: &str) -> Self {
        self.known_contact = Some(form(&self.algebra, eta));
        self
    }

    fn flags(mut self, unimodular: bool, nilpotent: bool, type_i: bool) -> Self {
        self.expected = ExpectedProfile {
            unimodular: Some(unimodular),
            nilpotent: Some(nilpotent),
            type_i: Some(type_i),
        };
        self
    }
}

fn salamon(name: &str, s: &str) -> LieAlgebra {
    parse_salamon(s)
        .expect("catalog Salamon string")
        .named(name)
}

/// Looks up an entry. Parameters not used by the entry are rejected.
pub fn get(name: &str, params: &Params) -> Result<CatalogEntry> {
    let accepted: &[&str] = match name {
        "d4" => &["sigma"],
        "d4p_0" => &["c"],
        "g1" | "g2" => &["b"],
        "kf6" => &["a", "b"],
        _ => &[],
    };
    if let Some(extra) = params.keys().find(|k| !accepted.contains(&k.as_str())) {
        return Err(Error::InvalidParam(format!(
            "{name} takes no parameter '{extra}'"
        )));
    }
    let e = match name {
        "aff_r" => entry(name, salamon(name, "(0,-12)"), "affine algebra of the line")
            .flags(false, false, false),
        "h3" => {
            entry(name, salamon(name, "(0,0,-12)"), "Heisenberg algebra").flags(true, true, true)
        }
        "r3_-1" => entry(
            name,
            salamon(name, "(0,-12,13)"),
            "rigid motions of Minkowski plane",
        )
        .flags(true, false, false),
        "r3p_0" => entry(
            name,
            salamon(name, "(0,-13,12)"),
            "rigid motions of Euclidean plane",
        )
        .flags(true, false, true),
        "n4" => entry(name, salamon(name, "(0,14,24,0)"), "4-dim filiform")
            .lcs_str("e13 - e24", "e1")
            .flags(true, true, true),
        "d4" => {
            let sigma = param(name, params, "sigma", Some(one()))?;
            positive("sigma", &sigma)?;
            let g = salamon(name, "(14,-24,-12,0)");
            // omega = e12 - sigma e34, theta = sigma e4
            let omega = form(&g, "e12").sub(&form(&g, "e34").scale(&sigma))?;
            let theta = form(&g, "e4").scale(&sigma);
            entry(name, g, "unimodular, not type I")
                .lcs(omega, theta)
                .flags(true, false, false)
        }
        "d4p_0" => {
            let c = param(name, params, "c", Some(one()))?;
            positive("c", &c)?;
            let g = salamon(name, "(24,-14,-12,0)");
            let omega = form(&g, "e12").sub(&form(&g, "e34").scale(&c))?;
            let theta = form(&g, "e4").scale(&c);
            entry(name, g, "4-dim type I, not nilpotent")
                .lcs(omega, theta)
                .flags(true, false, true)
        }
        "h3xR" => entry(name, salamon(name, "(0,0,-12,0)"), "Heisenberg times line")
            .lcs_str("e12 - e34", "e4")
            .flags(true, true, true),
        "r3p0xR" => entry(
            name,
            salamon(name, "(0,-13,12,0)"),
            "Euclidean motions times line, generic LCS form",
        )
        .lcs_str("e13 - e24", "e4")
        .flags(true, false, true),
        "r3p0xR_table" => entry(
            name,
            salamon(name, "(0,-13,12,0)"),
            "Euclidean motions times line, tabulated 2-form with the Lee form it forces",
        )
        .lcs_str("e12 + e13 - e24", "e1 + e4")
        .flags(true, false, true),
        "r3_-1xR" => entry(
            name,
            salamon(name, "(0,-12,13,0)"),
            "Minkowski motions times line",
        )
        .flags(true, false, false),
        "aff_r2" => entry(
            name,
            salamon(name, "(0,-12,0,-34)"),
            "product of two affine algebras",
        )
        .flags(false, false, false),
        "h5" => entry(
            name,
            Builder::new(5, 1)
                .br(2, 4, &[(1, one())])
                .br(3, 5, &[(1, one())])
                .build(name),
            "5-dim Heisenberg",
        )
        .contact("e1")
        .flags(true, true, true),
        "n1" => entry(name, n1(false).build(name), "5-dim nilpotent contact")
            .contact("e1")
            .flags(true, true, true),
        "n2" => entry(name, n1(true).build(name), "5-dim nilpotent contact")
            .contact("e1")
            .flags(true, true, true),
        "h" => entry(
            name,
            h_builder(5, 1).build(name),
            "5-dim unimodular solvable, not nilpotent",
        )
        .contact("e1")
        .flags(true, false, true),
        "g1" => {
            let b = param(name, params, "b", None)?;
            let g = Builder::new(6, 0)
                .br(2, 4, &[(1, one())])
                .br(3, 5, &[(1, one())])
                .br(0, 2, &[(4, one())])
                .br(0, 3, &[(5, b)])
                .br(0, 4, &[(2, int(-1))])
                .build(name);
            entry(name, g, "extension of h5 by a derivation")
                .lcs_str("-e01 - e24 - e35", "e0")
                .flags(true, false, true)
        }
        "g2" => {
            let b = param(name, params, "b", None)?;
            let g = h_builder(6, 0)
                .br(0, 5, &[(4, b)])
                .br(0, 2, &[(3, one())])
                .br(0, 3, &[(2, int(-1))])
                .build(name);
            entry(name, g, "extension of h by a derivation")
                .lcs_str("-e01 - e23 - e45", "e0")
                .flags(true, false, true)
        }
        "ex6" => {
            let g = Builder::new(6, 1)
                .br(2, 3, &[(1, one())])
                .br(2, 5, &[(2, one())])
                .br(3, 5, &[(3, int(-1))])
                .br(4, 5, &[(1, one())])
                .build(name);
            entry(name, g, "6-dim, not type I, LCS only of the first kind")
                .lcs_str("e16 - e23 - e45", "e6")
                .flags(true, false, false)
        }
        "kf6" => {
            let a = param(name, params, "a", Some(one()))?;
            let b = param(name, params, "b", Some(one()))?;
            if a.is_zero() {
                return Err(Error::InvalidParam("a must be nonzero".into()));
            }
            // s = (e1..e4), V = e5, U = e6
            let g = Builder::new(6, 1)
                .br(1, 2, &[(3, int(-1))])
                .br(1, 3, &[(2, one())])
                .br(1, 4, &[(5, int(-1))])
                .br(2, 3, &[(5, one())])
                .br(6, 1, &[(4, a)])
                .br(6, 2, &[(3, b.clone())])
                .br(6, 3, &[(2, -b)])
                .build(name);
            entry(name, g, "double extension of a flat Kahler algebra")
                .lcs_str("-e14 + e23 - e56", "e6")
                .flags(true, false, true)
        }
        _ => return Err(Error::UnknownName(name.into())),
    };
    Ok(e)
}

fn n1(with_n2: bool) -> Builder {
    let b = Builder::new(5, 1)
        .br(3, 4, &[(1, one())])
        .br(2, 5, &[(1, one())])
        .br(3, 5, &[(2, one())]);
    if with_n2 {
        b.br(4, 5, &[(3, one())])
    } else {
        b
    }
}

/// The algebra `h` on display indices `1..=5`; size 6 with offset 0 leaves
/// room for `e0`.
fn h_builder(dim: usize, offset: usize) -> Builder {
    Builder::new(dim, offset)
        .br(2, 3, &[(1, one())])
        .br(2, 5, &[(3, one())])
        .br(3, 5, &[(2, int(-1))])
        .br(4, 5, &[(1, one())])
}

/// Checks every stored claim about an entry; returns the failures.
pub fn audit(e: &CatalogEntry) -> Vec<String> {
    let mut failures = Vec::new();
    let g = &e.algebra;
    let p = g.structural_profile();
    let checks = [
        ("unimodular", e.expected.unimodular, Some(p.unimodular)),
        ("nilpotent", e.expected.nilpotent, Some(p.nilpotent)),
        ("type_i", e.expected.type_i, p.type_i),
    ];
    for (flag, want, got) in checks {
        if want.is_some() && want != got {
            failures.push(format!("{}: {flag} expected {want:?}, got {got:?}", e.name));
        }
    }
    if let Some((omega, theta)) = &e.known_lcs {
        if let Err(err) = crate::lcs::verify_lcs(g, omega, theta) {
            failures.push(format!("{}: LCS rejected: {err}", e.name));
        }
    }
    if let Some(eta) = &e.known_contact {
        if let Err(err) = crate::lcs::verify_contact(g, eta) {
            failures.push(format!("{}: contact rejected: {err}", e.name));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_audit() {
        for e in all_instances() {
            let failures = audit(&e);
            assert!(failures.is_empty(), "{failures:?}");
        }
    }

    #[test]
    fn lookups() {
        let e = get("d4p_0", &Params::new()).unwrap();
        let (omega, theta) = e.known_lcs.unwrap();
        assert_eq!(e.algebra.render_form(&omega), "e12 - e34");
        assert_eq!(e.algebra.render_form(&theta), "e4");
        let h5 = get("h5", &Params::new()).unwrap();
        assert_eq!(
            h5.algebra.bracket_table(),
            vec!["[e2,e4] = e1", "[e3,e5] = e1"]
        );
        assert_eq!(
            h5.algebra.render_form(h5.known_contact.as_ref().unwrap()),
            "e1"
        );
        let g2 = get("g2", &Params::from([("b".into(), int(1))]))
            .unwrap()
            .algebra;
        assert_eq!(
            g2.bracket_table(),
            vec![
                "[e0,e2] = e3",
                "[e0,e3] = -e2",
                "[e0,e5] = e4",
                "[e2,e3] = e1",
                "[e2,e5] = e3",
                "[e3,e5] = -e2",
                "[e4,e5] = e1"
            ]
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            get("nope", &Params::new()).unwrap_err(),
            Error::UnknownName("nope".into())
        );
        assert!(matches!(
            get("g1", &Params::new()),
            Err(Error::MissingParam { .. })
        ));
        assert!(matches!(
            get("kf6", &Params::from([("a".into(), int(0))])),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            get("d4", &Params::from([("sigma".into(), int(-1))])),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            get("h5", &Params::from([("b".into(), int(1))])),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn g1_fingerprints_separate_b() {
        use crate::liealg::{derived_dim, invariant_fingerprint};
        let g = |b| {
            get("g1", &Params::from([("b".into(), int(b))]))
                .unwrap()
                .algebra
        };
        assert_eq!((derived_dim(&g(0)), derived_dim(&g(1))), (3, 4));
        assert_ne!(invariant_fingerprint(&g(0)), invariant_fingerprint(&g(1)));
        assert_eq!(invariant_fingerprint(&g(1)), invariant_fingerprint(&g(3)));
    }
}
