use std::fmt::Display;

use lcslab_core::catalog::{self, CatalogEntry, Params};
use lcslab_core::cohomology::{cohomology, induced_spectrum};
use lcslab_core::construct::{
    block_spectrum_identity, derivation_defects, derivation_space, double_extension,
    lcs_from_contact,
};
use lcslab_core::error::Error;
use lcslab_core::exactmath::{fmt_rat, parse_rat, Mat, PiScalar, Rat};
use lcslab_core::exterior::KForm;
use lcslab_core::lattice::{check_family_lattices, LatticeFamily};
use lcslab_core::lcs::{
    classify_kind, contact_search, lcs_search, verify_contact, verify_lcs, Kind, LcsStructure,
    SearchBudget, SearchOutcome,
};
use lcslab_core::liealg::{
    find_imaginary_transversal, invariant_fingerprint, LieAlgebra, TransversalBudget,
};
use lcslab_core::parse::{parse_algebra_json, parse_form_of_degree, parse_salamon, print_salamon};
use serde_json::{json, Value};

use crate::args::{AlgebraArgs, CatalogCommand, Family};
use crate::report::{Report, Status};

/// Failure before a report could be produced.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub source: Option<Error>,
}

pub const USAGE: i32 = 64;
pub const DATA: i32 = 65;

impl CliError {
    pub fn usage(msg: impl Display) -> Self {
        CliError {
            code: USAGE,
            message: msg.to_string(),
            source: None,
        }
    }

    pub fn data(msg: impl Display) -> Self {
        CliError {
            code: DATA,
            message: msg.to_string(),
            source: None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: DATA,
            message: e.to_string(),
            source: Some(e),
        }
    }
}

pub type CmdResult = Result<Report, CliError>;

pub struct Input {
    pub algebra: LieAlgebra,
    pub entry: Option<CatalogEntry>,
    pub source: String,
}

impl Input {
    pub fn describe(&self) -> Value {
        let g = &self.algebra;
        json!({
            "source": self.source,
            "dim": g.dim(),
            "basis_offset": g.basis_offset(),
            "salamon": print_salamon(g),
            "brackets": g.bracket_table(),
            "fingerprint": serde_json::to_value(invariant_fingerprint(g)).expect("plain data"),
        })
    }

    fn form(&self, s: &str, degree: usize) -> Result<KForm, CliError> {
        let g = &self.algebra;
        Ok(parse_form_of_degree(s, g.dim(), g.basis_offset(), degree)?)
    }

    fn known_lcs(
        &self,
        omega: Option<&str>,
        theta: Option<&str>,
    ) -> Result<(KForm, KForm), CliError> {
        let stored = self.entry.as_ref().and_then(|e| e.known_lcs.clone());
        let omega = match (omega, &stored) {
            (Some(s), _) => self.form(s, 2)?,
            (None, Some((o, _))) => o.clone(),
            (None, None) => return Err(CliError::usage("--omega is required")),
        };
        let theta = match (theta, &stored) {
            (Some(s), _) => self.form(s, 1)?,
            (None, Some((_, t))) => t.clone(),
            (None, None) => return Err(CliError::usage("--theta is required")),
        };
        Ok((omega, theta))
    }
}

pub fn parse_params(raw: &[String]) -> Result<Params, CliError> {
    let mut params = Params::new();
    for p in raw {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("expected NAME=VALUE, got '{p}'")))?;
        params.insert(k.trim().to_string(), parse_rat(v.trim())?);
    }
    Ok(params)
}

pub fn load(a: &AlgebraArgs) -> Result<Input, CliError> {
    if let Some(s) = &a.algebra {
        return Ok(Input {
            algebra: parse_salamon(s)?,
            entry: None,
            source: format!("salamon {s}"),
        });
    }
    if let Some(path) = &a.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Input {
            algebra: parse_algebra_json(&text)?,
            entry: None,
            source: format!("file {}", path.display()),
        });
    }
    let name = a
        .catalog
        .as_deref()
        .ok_or_else(|| CliError::usage("no algebra given"))?;
    let params = parse_params(&a.params)?;
    let entry = catalog::get(name, &params)?;
    let mut source = format!("catalog {name}");
    for (k, v) in &params {
        source.push_str(&format!(" {k}={}", fmt_rat(v)));
    }
    Ok(Input {
        algebra: entry.algebra.clone(),
        entry: Some(entry),
        source,
    })
}

/// `[[a,b],[c,d]]` with rational entries, row by row.
pub fn parse_matrix(s: &str, n: usize) -> Result<Mat<Rat>, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix("[[")
        .and_then(|x| x.strip_suffix("]]"))
        .ok_or_else(|| CliError::data(format!("matrix must look like [[..],[..]], got '{s}'")))?;
    let rows: Vec<Vec<Rat>> = inner
        .split("],[")
        .map(|r| r.split(',').map(parse_rat).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::data(format!("matrix must be {n}x{n}")));
    }
    Ok(Mat::from_rows(rows))
}

fn matrix_value(m: &Mat<Rat>) -> Value {
    json!(m.to_string_rows())
}

fn kind_name(k: Option<Kind>) -> String {
    k.map_or_else(|| "NotApplicable".to_string(), |k| format!("{k:?}"))
}

fn lcs_value(g: &LieAlgebra, s: &LcsStructure) -> Value {
    json!({
        "omega": g.render_form(&s.omega),
        "theta": g.render_form(&s.theta),
        "pfaffian": fmt_rat(&s.pfaffian),
        "lee_vector": g.render_vector(&s.lee_vector),
        "lee_vector_central": s.lee_vector_is_central(g),
        "eta": s.eta.as_ref().map(|e| g.render_form(e)),
        "anti_lee_vector": s.anti_lee_vector.as_ref().map(|u| g.render_vector(u)),
        "kind": kind_name(s.kind),
        "symplectic": s.is_symplectic(),
        "g_omega_dim": s.automorphisms.dim(),
        "g_omega_basis": s.automorphisms.basis.iter().map(|x| g.render_vector(x)).collect::<Vec<_>>(),
    })
}

/// Errors that refute the mathematical claim rather than signal bad input.
fn is_refutation(e: &Error) -> bool {
    matches!(
        e,
        Error::NotLcs { .. }
            | Error::Degenerate { .. }
            | Error::ThetaNotClosed { .. }
            | Error::ThetaZero
            | Error::NotClosed { .. }
            | Error::NotContact
            | Error::NotFirstKind
            | Error::NotADerivation { .. }
            | Error::EtaDNotZero
            | Error::NotSymplectic { .. }
            | Error::NotSymplecticDerivation
    )
}

fn refuted_or(e: Error) -> CmdResult {
    if is_refutation(&e) {
        Ok(Report::new(Status::Refuted).with("reason", e.to_string()))
    } else {
        Err(e.into())
    }
}

pub fn validate(a: &AlgebraArgs) -> CmdResult {
    match load(a) {
        Ok(input) => Ok(Report::new(Status::Verified)
            .with("jacobi", true)
            .with("dim", input.algebra.dim())
            .with("brackets", input.algebra.bracket_table())),
        Err(CliError {
            source: Some(Error::JacobiViolation { violations }),
            ..
        }) => {
            let v: Vec<Value> = violations
                .iter()
                .map(|d| json!({ "triple": [d.triple.0, d.triple.1, d.triple.2], "defect": d.defect }))
                .collect();
            Ok(Report::new(Status::Refuted)
                .with("jacobi", false)
                .with("violations", v))
        }
        Err(e) => Err(e),
    }
}

pub fn profile(input: &Input) -> CmdResult {
    let g = &input.algebra;
    let p = g.structural_profile();
    let mut r = Report::new(Status::Verified)
        .with("profile", serde_json::to_value(&p).expect("plain data"));
    if let Some(e) = &input.entry {
        let failures = catalog::audit(e);
        if !failures.is_empty() {
            r.status = Status::Refuted;
        }
        r.set("catalog_audit", failures);
    }
    Ok(r)
}

pub fn cohomology_cmd(input: &Input, theta: Option<&str>) -> CmdResult {
    let g = &input.algebra;
    let theta = match theta {
        Some(s) => input.form(s, 1)?,
        None => KForm::zero(g.dim(), 1),
    };
    let rep = match cohomology(g, &theta) {
        Ok(r) => r,
        Err(e) => return refuted_or(e),
    };
    let reps: Vec<Vec<String>> = rep
        .representatives
        .iter()
        .map(|v| v.iter().map(|f| g.render_form(f)).collect())
        .collect();
    let mut r = Report::new(Status::Verified)
        .with("theta", g.render_form(&theta))
        .with("dims", rep.dims.clone())
        .with("trivial", rep.is_trivial())
        .with("euler_characteristic", rep.euler_characteristic())
        .with("representatives", reps);
    if !theta.is_zero() {
        if let Some(a) = find_imaginary_transversal(g, &theta, &TransversalBudget::default())? {
            let s = induced_spectrum(g, &theta, &a)?;
            r.set("transversal", g.render_vector(&a));
            r.set("induced_char_polys", s.char_polys.clone());
            r.set("one_in_induced_spectrum", s.contains_one());
        } else {
            r.set("transversal", Value::Null);
        }
    }
    Ok(r)
}

pub fn lcs_verify(input: &Input, omega: Option<&str>, theta: Option<&str>) -> CmdResult {
    let (omega, theta) = input.known_lcs(omega, theta)?;
    let g = &input.algebra;
    match verify_lcs(g, &omega, &theta) {
        Ok(s) => Ok(Report::new(Status::Verified).with("lcs", lcs_value(g, &s))),
        Err(e) => refuted_or(e),
    }
}

pub fn kind(input: &Input, omega: Option<&str>, theta: Option<&str>) -> CmdResult {
    let (omega, theta) = input.known_lcs(omega, theta)?;
    match classify_kind(&input.algebra, &omega, &theta) {
        Ok(k) => Ok(Report::new(Status::Verified).with("kind", kind_name(Some(k)))),
        Err(Error::ThetaZero) => Ok(Report::new(Status::Verified).with("kind", kind_name(None))),
        Err(e) => refuted_or(e),
    }
}

fn budget(samples: Option<usize>) -> SearchBudget {
    let mut b = SearchBudget::default();
    if let Some(s) = samples {
        b.samples = s;
    }
    b
}

pub fn lcs_search_cmd(input: &Input, theta: &str, samples: Option<usize>, seed: u64) -> CmdResult {
    let g = &input.algebra;
    let theta = input.form(theta, 1)?;
    let search = match lcs_search(g, &theta, seed, &budget(samples)) {
        Ok(s) => s,
        Err(e) => return refuted_or(e),
    };
    let basis: Vec<String> = search
        .solution_basis
        .iter()
        .map(|f| g.render_form(f))
        .collect();
    let r = match &search.outcome {
        SearchOutcome::Witness(omega) => {
            let s = verify_lcs(g, omega, &theta)?;
            Report::new(Status::Verified).with("lcs", lcs_value(g, &s))
        }
        SearchOutcome::Degenerate => {
            Report::new(Status::Refuted).with("reason", "degenerate on solution space")
        }
        SearchOutcome::Inconclusive => {
            Report::new(Status::Inconclusive).with("reason", "no witness within budget")
        }
    };
    Ok(r.with("solution_space_dim", basis.len())
        .with("solution_basis", basis)
        .with("samples_tried", search.samples_tried))
}

pub fn contact_verify(input: &Input, eta: Option<&str>) -> CmdResult {
    let g = &input.algebra;
    let eta = match (
        eta,
        input.entry.as_ref().and_then(|e| e.known_contact.clone()),
    ) {
        (Some(s), _) => input.form(s, 1)?,
        (None, Some(e)) => e,
        (None, None) => return Err(CliError::usage("--eta is required")),
    };
    match verify_contact(g, &eta) {
        Ok(c) => Ok(Report::new(Status::Verified)
            .with("eta", g.render_form(&c.eta))
            .with("reeb_vector", g.render_vector(&c.reeb_vector))
            .with("volume", fmt_rat(&c.volume))),
        Err(e) => refuted_or(e),
    }
}

pub fn contact_search_cmd(input: &Input, samples: Option<usize>, seed: u64) -> CmdResult {
    let g = &input.algebra;
    let (outcome, tried) = contact_search(g, seed, &budget(samples))?;
    let r = match outcome {
        SearchOutcome::Witness(c) => Report::new(Status::Verified)
            .with("eta", g.render_form(&c.eta))
            .with("reeb_vector", g.render_vector(&c.reeb_vector))
            .with("volume", fmt_rat(&c.volume)),
        SearchOutcome::Degenerate => {
            Report::new(Status::Refuted).with("reason", "no contact form exists")
        }
        SearchOutcome::Inconclusive => {
            Report::new(Status::Inconclusive).with("reason", "no witness within budget")
        }
    };
    Ok(r.with("samples_tried", tried))
}

pub fn derivations(input: &Input, matrix: Option<&str>) -> CmdResult {
    let g = &input.algebra;
    match matrix {
        Some(m) => {
            let d = parse_matrix(m, g.dim())?;
            let defects = derivation_defects(g, &d);
            let status = if defects.is_empty() {
                Status::Verified
            } else {
                Status::Refuted
            };
            let o = g.basis_offset();
            let pairs: Vec<Value> = defects
                .iter()
                .map(|(i, j)| json!([format!("e{}", i + o), format!("e{}", j + o)]))
                .collect();
            Ok(Report::new(status)
                .with("is_derivation", defects.is_empty())
                .with("failing_pairs", pairs))
        }
        None => {
            let space = derivation_space(g);
            let basis: Vec<Value> = space.basis.iter().map(matrix_value).collect();
            Ok(Report::new(Status::Verified)
                .with("dim", space.dim())
                .with("basis", basis))
        }
    }
}

pub fn extend_contact(input: &Input, eta: &str, derivation: &str) -> CmdResult {
    let h = &input.algebra;
    let eta = input.form(eta, 1)?;
    let d = parse_matrix(derivation, h.dim())?;
    let ext = match lcs_from_contact(h, &eta, &d) {
        Ok(x) => x,
        Err(e) => return refuted_or(e),
    };
    let g = &ext.algebra;
    Ok(Report::new(Status::Verified)
        .with("algebra", json!({ "dim": g.dim(), "basis_offset": g.basis_offset(), "brackets": g.bracket_table() }))
        .with("type_i", g.is_type_i())
        .with("lcs", lcs_value(g, &ext.lcs)))
}

pub fn double_extend(input: &Input, beta: &str, derivation: &str) -> CmdResult {
    let s = &input.algebra;
    let beta = input.form(beta, 2)?;
    let e = parse_matrix(derivation, s.dim())?;
    let ext = match double_extension(s, &beta, &e) {
        Ok(x) => x,
        Err(err) => return refuted_or(err),
    };
    let g = &ext.algebra;
    Ok(Report::new(Status::Verified)
        .with("algebra", json!({ "dim": g.dim(), "basis_offset": g.basis_offset(), "brackets": g.bracket_table() }))
        .with("basis", "U = e0, V = e1, s = e2..")
        .with("eta", g.render_form(&ext.eta))
        .with("type_i", g.is_type_i())
        .with("block_spectrum_identity", block_spectrum_identity(s, &e, &ext)?)
        .with("lcs", lcs_value(g, &ext.lcs)))
}

pub fn lattice_check(family: Family, k: u32, t0: Option<&str>, seed: u64) -> CmdResult {
    let t0 = t0.map(PiScalar::parse).transpose()?;
    let family = match family {
        Family::G1 => LatticeFamily::G1,
        Family::G2 => LatticeFamily::G2,
    };
    let report = check_family_lattices(family, k, t0.as_ref(), seed)?;
    let status = if report.preserved {
        Status::Verified
    } else {
        Status::Refuted
    };
    Ok(Report::new(status).with(
        "lattice",
        serde_json::to_value(&report).expect("plain data"),
    ))
}

pub fn catalog_cmd(cmd: &CatalogCommand) -> CmdResult {
    match cmd {
        CatalogCommand::List => {
            let entries: Vec<Value> = catalog::list()
                .iter()
                .map(|(n, p)| json!({ "name": n, "params": p }))
                .collect();
            Ok(Report::new(Status::Verified).with("entries", entries))
        }
        CatalogCommand::Show { name, params } => {
            let e = catalog::get(name, &parse_params(params)?)?;
            let g = &e.algebra;
            let failures = catalog::audit(&e);
            let status = if failures.is_empty() {
                Status::Verified
            } else {
                Status::Refuted
            };
            let lcs = e
                .known_lcs
                .as_ref()
                .map(|(o, t)| json!({ "omega": g.render_form(o), "theta": g.render_form(t) }));
            Ok(Report::new(status)
                .with("name", e.name.clone())
                .with("description", e.description.clone())
                .with("dim", g.dim())
                .with("salamon", print_salamon(g))
                .with("brackets", g.bracket_table())
                .with("known_lcs", lcs)
                .with(
                    "known_contact",
                    e.known_contact.as_ref().map(|c| g.render_form(c)),
                )
                .with("audit_failures", failures))
        }
    }
}
