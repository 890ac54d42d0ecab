//! Command implementations behind the `statone` binary.
//!
//! Every command reads one JSON document and produces an [`Outcome`]: text
//! for stdout and stderr plus an exit code (0 pass, 1 violation, 2 parse or
//! schema error, 3 resource cap).

pub mod document;
pub mod dot;

use std::collections::BTreeSet;
use std::fmt::Write;

use statone_core::bauer::{
    functor_s, functor_t, verify_bauer_duality, verify_bauer_duality_from_space, BauerObject, CubeStateAlgebra,
    DEFAULT_SAMPLES,
};
use statone_core::simplex::tau_g_and_intertwine;
use statone_core::state_ops::{
    check_state_operator_axioms, enumerate_state_morphism_operators, enumerate_state_operators_table,
    state_morphism_report, DEFAULT_ENUMERATION_CAP,
};
use statone_core::stone::{phi_object, psi_object, verify_duality, verify_duality_from_space, StoneStatePair};
use statone_core::{
    Error, LawCheck, LawReport, OperatorSpec, ProductMvAlgebra, StateAlgebra, TableMvAlgebra, UnaryTable,
};

pub use document::Document;

/// Environment variable overriding the table-enumeration carrier cap.
pub const TABLE_CAP_ENV: &str = "STATONE_TABLE_CAP";

/// Seed for the sample points in Bauer certificates.
pub const CERTIFICATE_SEED: u64 = 0x5eed;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AlgebraToSpace,
    SpaceToAlgebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Structural,
    Table,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// A document produced by the command, written to `--out` when given.
    pub document: Option<Document>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Schema(_) => EXIT_PARSE,
            CliError::Violation(_) => EXIT_VIOLATION,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => CliError::Cap(e.to_string()),
            Error::Divisibility { .. }
            | Error::NotIdempotent { .. }
            | Error::NotIntertwining { .. }
            | Error::NotUltrafilter(_)
            | Error::NotVertexPreserving { .. } => CliError::Violation(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn load(path: &str) -> CliResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    Document::parse(&text).map_err(|e| CliError::Parse(e.to_string()))
}

fn outcome_from_report(report: &LawReport) -> Outcome {
    Outcome {
        code: if report.passed() { EXIT_PASS } else { EXIT_VIOLATION },
        stdout: report.to_string(),
        ..Outcome::default()
    }
}

fn violation_line(law: &str, e: &Error) -> LawCheck {
    LawCheck::fails(law, e.to_string())
}

fn table_cap() -> CliResult<usize> {
    match std::env::var(TABLE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Schema(format!("{TABLE_CAP_ENV}={v:?} is not a size"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

/// Structural validity of a product document: the signature, then the
/// operator (range, divisibility, idempotence), then table-level sweeps when
/// the carrier is small enough.
fn check_product(chains: &[u32], sigma: Option<&[usize]>) -> CliResult<LawReport> {
    let alg = ProductMvAlgebra::from_orders(chains.to_vec())?;
    let mut r = LawReport::new();
    let table = alg.to_table().ok();
    if let Some(t) = &table {
        r.extend(t.check_mv_axioms());
    }
    let Some(sigma) = sigma else {
        return Ok(r);
    };
    let spec = OperatorSpec::new(sigma.to_vec())?;
    if spec.dim() != alg.dim() {
        return Err(CliError::Schema(format!(
            "sigma has {} entries, chains has {}",
            spec.dim(),
            alg.dim()
        )));
    }
    match spec.check_divisibility(alg.signature()) {
        Ok(()) => r.push(LawCheck::holds("n_{σ(j)} | n_j", alg.dim() as u64)),
        Err(e) => {
            r.push(violation_line("n_{σ(j)} | n_j", &e));
            return Ok(r);
        }
    }
    match spec.idempotence_violation() {
        None => r.push(LawCheck::holds("σ∘σ=σ", alg.dim() as u64)),
        Some(e) => r.push(violation_line("σ∘σ=σ", &e)),
    }
    if let (Some(t), Ok(u)) = (&table, spec.to_table(&alg)) {
        let ops = check_state_operator_axioms(t, &u);
        r.extend(ops.axioms);
        r.extend(ops.derived);
        r.extend(state_morphism_report(t, &u));
    }
    Ok(r)
}

fn check_table(oplus: &[Vec<usize>], star: &[usize], zero: usize, tau: Option<&[usize]>) -> CliResult<LawReport> {
    let alg = TableMvAlgebra::new(oplus.to_vec(), star.to_vec(), zero)?;
    let mut r = alg.check_mv_axioms();
    if let Some(tau) = tau {
        let t = UnaryTable::new(&alg, tau.to_vec())?;
        let ops = check_state_operator_axioms(&alg, &t);
        r.extend(ops.axioms);
        r.extend(ops.derived);
        r.extend(state_morphism_report(&alg, &t));
    }
    Ok(r)
}

fn idempotence_only(law: &str, sigma: &[usize]) -> CliResult<LawReport> {
    let spec = OperatorSpec::new(sigma.to_vec())?;
    let mut r = LawReport::new();
    match spec.idempotence_violation() {
        None => r.push(LawCheck::holds(law, spec.dim() as u64)),
        Some(e) => r.push(violation_line(law, &e)),
    }
    Ok(r)
}

fn check_stone(points: &[String], g: &[usize]) -> CliResult<LawReport> {
    if points.len() != g.len() {
        return Err(CliError::Schema(format!(
            "{} points but g has {} entries",
            points.len(),
            g.len()
        )));
    }
    let mut r = idempotence_only("g∘g=g", g)?;
    if r.passed() {
        StoneStatePair::new(points.to_vec(), g.to_vec())?;
        r.push(LawCheck::holds("distinct labels", points.len() as u64));
    }
    Ok(r)
}

fn require_len(what: &str, declared: usize, map: &[usize]) -> CliResult<()> {
    if declared != map.len() {
        return Err(CliError::Schema(format!(
            "{what} is {declared} but the map has {} entries",
            map.len()
        )));
    }
    Ok(())
}

fn replay_outcome(stored: &LawReport, replayed: LawReport) -> Outcome {
    let mut r = LawReport::new();
    r.push(match stored.failures().next() {
        None => LawCheck::holds("stored checks passed", stored.checks.len() as u64),
        Some(c) => LawCheck::fails("stored checks passed", c.law.clone()),
    });
    r.extend(replayed);
    outcome_from_report(&r)
}

pub fn cmd_check(doc: &Document) -> CliResult<Outcome> {
    let report = match doc {
        Document::Product { chains, sigma } => check_product(chains, sigma.as_deref())?,
        Document::Table { oplus, star, zero, tau } => check_table(oplus, star, *zero, tau.as_deref())?,
        Document::Stone { points, g } => check_stone(points, g)?,
        Document::Bauer { vertices, g } => {
            require_len("vertices", *vertices, g)?;
            idempotence_only("g∘g=g", g)?
        }
        Document::Cube { dim, sigma } => {
            require_len("dim", *dim, sigma)?;
            idempotence_only("σ∘σ=σ", sigma)?
        }
        Document::BooleanCertificate { certificate } => {
            return Ok(replay_outcome(
                &merged(&[&certificate.algebra_side.checks, &certificate.space_side.checks]),
                certificate.replay(),
            ))
        }
        Document::BauerCertificate { certificate } => {
            return Ok(replay_outcome(&certificate.checks, certificate.replay()))
        }
        Document::IntertwiningCertificate { certificate } => {
            let obj = StateAlgebra::from_parts(certificate.orders.clone(), certificate.sigma.clone())?;
            let fresh = tau_g_and_intertwine(&obj)?;
            let mut replayed = fresh.checks.clone();
            replayed.push(if fresh.g == certificate.g {
                LawCheck::holds("replay: stored g matches", fresh.g.len() as u64)
            } else {
                LawCheck::fails(
                    "replay: stored g matches",
                    format!("stored {:?}, computed {:?}", certificate.g, fresh.g),
                )
            });
            return Ok(replay_outcome(&certificate.checks, replayed));
        }
    };
    Ok(outcome_from_report(&report))
}

fn merged(reports: &[&LawReport]) -> LawReport {
    let mut r = LawReport::new();
    for x in reports {
        r.extend((*x).clone());
    }
    r
}

fn boolean_state_algebra(chains: &[u32], sigma: Option<&[usize]>) -> CliResult<StateAlgebra> {
    let alg = ProductMvAlgebra::from_orders(chains.to_vec())?;
    if !alg.is_boolean() {
        return Err(CliError::Schema(format!(
            "chains {chains:?} do not form a Boolean algebra; dualize needs all orders 1"
        )));
    }
    let spec = match sigma {
        Some(s) => OperatorSpec::new(s.to_vec())?,
        None => OperatorSpec::identity(alg.dim()),
    };
    Ok(StateAlgebra::new(alg, spec)?)
}

/// A Stone document with its points sorted by label.
fn stone_pair(points: &[String], g: &[usize]) -> CliResult<StoneStatePair> {
    if points.len() != g.len() {
        return Err(CliError::Schema(format!(
            "{} points but g has {} entries",
            points.len(),
            g.len()
        )));
    }
    let pair = StoneStatePair::new(points.to_vec(), g.to_vec())?;
    Ok(pair.sorted_by_label().0)
}

fn default_direction(doc: &Document) -> Option<Direction> {
    match doc {
        Document::Product { .. } | Document::Cube { .. } => Some(Direction::AlgebraToSpace),
        Document::Stone { .. } | Document::Bauer { .. } => Some(Direction::SpaceToAlgebra),
        _ => None,
    }
}

pub fn cmd_dualize(doc: &Document, direction: Option<Direction>) -> CliResult<Outcome> {
    let natural =
        default_direction(doc).ok_or_else(|| CliError::Schema(format!("cannot dualize a {} document", doc.kind())))?;
    let direction = direction.unwrap_or(natural);
    if direction != natural {
        return Err(CliError::Schema(format!(
            "a {} document cannot be dualized {}",
            doc.kind(),
            match direction {
                Direction::AlgebraToSpace => "algebra-to-space",
                Direction::SpaceToAlgebra => "space-to-algebra",
            }
        )));
    }
    let out = match doc {
        Document::Product { chains, sigma } => {
            let pair = phi_object(&boolean_state_algebra(chains, sigma.as_deref())?)?;
            Document::Stone {
                points: pair.labels().to_vec(),
                g: pair.g().to_vec(),
            }
        }
        Document::Stone { points, g } => {
            let obj = psi_object(&stone_pair(points, g)?)?;
            Document::Product {
                chains: obj.algebra().signature().orders().to_vec(),
                sigma: Some(obj.tau().sigma().to_vec()),
            }
        }
        Document::Bauer { vertices, g } => {
            require_len("vertices", *vertices, g)?;
            let alg = functor_t(&BauerObject::from_vertex_map(g.clone())?)?;
            Document::Cube {
                dim: alg.dim(),
                sigma: alg.tau().sigma().to_vec(),
            }
        }
        Document::Cube { dim, sigma } => {
            require_len("dim", *dim, sigma)?;
            let obj = functor_s(&CubeStateAlgebra::from_sigma(sigma.clone())?)?;
            Document::Bauer {
                vertices: obj.dim(),
                g: obj.g().vertex_images().to_vec(),
            }
        }
        _ => unreachable!("kinds without a direction were rejected above"),
    };
    Ok(Outcome {
        code: EXIT_PASS,
        document: Some(out),
        ..Outcome::default()
    })
}

fn certificate_outcome(report: LawReport, cert: Document) -> Outcome {
    let mut o = outcome_from_report(&report);
    o.document = Some(cert);
    o
}

pub fn cmd_roundtrip(doc: &Document) -> CliResult<Outcome> {
    match doc {
        Document::Product { chains, sigma } => {
            let alg = ProductMvAlgebra::from_orders(chains.to_vec())?;
            if alg.is_boolean() {
                let cert = verify_duality(&boolean_state_algebra(chains, sigma.as_deref())?)?;
                let r = merged(&[&cert.algebra_side.checks, &cert.space_side.checks]);
                Ok(certificate_outcome(
                    r,
                    Document::BooleanCertificate { certificate: cert },
                ))
            } else {
                let spec = match sigma {
                    Some(s) => OperatorSpec::new(s.clone())?,
                    None => OperatorSpec::identity(alg.dim()),
                };
                let cert = tau_g_and_intertwine(&StateAlgebra::new(alg, spec)?)?;
                let r = cert.checks.clone();
                Ok(certificate_outcome(
                    r,
                    Document::IntertwiningCertificate { certificate: cert },
                ))
            }
        }
        Document::Stone { points, g } => {
            let cert = verify_duality_from_space(&stone_pair(points, g)?)?;
            let r = merged(&[&cert.algebra_side.checks, &cert.space_side.checks]);
            Ok(certificate_outcome(
                r,
                Document::BooleanCertificate { certificate: cert },
            ))
        }
        Document::Bauer { vertices, g } => {
            require_len("vertices", *vertices, g)?;
            let obj = BauerObject::from_vertex_map(g.clone())?;
            let cert = verify_bauer_duality_from_space(&obj, DEFAULT_SAMPLES, CERTIFICATE_SEED)?;
            let r = cert.checks.clone();
            Ok(certificate_outcome(r, Document::BauerCertificate { certificate: cert }))
        }
        Document::Cube { dim, sigma } => {
            require_len("dim", *dim, sigma)?;
            let alg = CubeStateAlgebra::from_sigma(sigma.clone())?;
            let cert = verify_bauer_duality(&alg, DEFAULT_SAMPLES, CERTIFICATE_SEED)?;
            let r = cert.checks.clone();
            Ok(certificate_outcome(r, Document::BauerCertificate { certificate: cert }))
        }
        Document::Table { .. } => Err(CliError::Schema("table documents have no dual; use check".into())),
        _ => cmd_check(doc),
    }
}

/// Lists every state-operator table; with a structural set, tables outside
/// it are flagged.
fn list_tables(alg: &TableMvAlgebra, structural: Option<&BTreeSet<Vec<usize>>>, out: &mut String) -> CliResult<usize> {
    let tables = enumerate_state_operators_table(alg, table_cap()?)?;
    let mut unmatched = 0;
    for t in &tables {
        let morphism = state_morphism_report(alg, t).passed();
        let matched = structural.is_none_or(|s| s.contains(t.values()));
        unmatched += usize::from(!matched);
        writeln!(
            out,
            "{:?}{}{}",
            t.values(),
            if morphism {
                "  state-morphism"
            } else {
                "  NOT state-morphism"
            },
            if matched { "" } else { "  no structural counterpart" }
        )
        .unwrap();
    }
    writeln!(out, "count: {}", tables.len()).unwrap();
    Ok(unmatched)
}

pub fn cmd_enumerate(doc: &Document, mode: Mode) -> CliResult<Outcome> {
    let mut out = String::new();
    let mut stderr = String::new();
    match (doc, mode) {
        (Document::Product { chains, .. }, Mode::Structural) => {
            let alg = ProductMvAlgebra::from_orders(chains.to_vec())?;
            let ops = enumerate_state_morphism_operators(alg.signature());
            for spec in &ops {
                writeln!(out, "{:?}", spec.sigma()).unwrap();
            }
            writeln!(out, "count: {}", ops.len()).unwrap();
        }
        (Document::Product { chains, .. }, Mode::Table) => {
            let alg = ProductMvAlgebra::from_orders(chains.to_vec())?;
            let cap = table_cap()?;
            let size = alg.cardinality().unwrap_or(usize::MAX);
            if size > cap {
                return Err(CliError::Cap(format!(
                    "carrier has {size} elements, above the table cap of {cap} (set {TABLE_CAP_ENV} to raise it)"
                )));
            }
            let table = alg.to_table()?;
            let structural: BTreeSet<Vec<usize>> = enumerate_state_morphism_operators(alg.signature())
                .iter()
                .map(|s| s.to_table(&alg).map(|t| t.values().to_vec()))
                .collect::<Result<_, _>>()?;
            let unmatched = list_tables(&table, Some(&structural), &mut out)?;
            if unmatched > 0 {
                writeln!(
                    stderr,
                    "{unmatched} state-operator table(s) without a structural counterpart"
                )
                .unwrap();
            }
        }
        (Document::Table { oplus, star, zero, .. }, Mode::Table) => {
            let alg = TableMvAlgebra::new(oplus.clone(), star.clone(), *zero)?;
            if alg.size() > table_cap()? {
                return Err(CliError::Cap(format!(
                    "carrier has {} elements, above the table cap of {} (set {TABLE_CAP_ENV} to raise it)",
                    alg.size(),
                    table_cap()?
                )));
            }
            list_tables(&alg, None, &mut out)?;
        }
        (Document::Table { .. }, Mode::Structural) => {
            return Err(CliError::Schema(
                "structural enumeration needs a product document".into(),
            ))
        }
        _ => {
            return Err(CliError::Schema(format!(
                "cannot enumerate operators of a {} document",
                doc.kind()
            )))
        }
    }
    Ok(Outcome {
        code: EXIT_PASS,
        stdout: out,
        stderr,
        document: None,
    })
}

pub fn cmd_export_dot(doc: &Document) -> CliResult<Outcome> {
    let text = match doc {
        Document::Stone { points, g } => {
            check_stone(points, g)?;
            dot::endofunction_dot("stone", points, g)
        }
        Document::Bauer { vertices, g } => {
            require_len("vertices", *vertices, g)?;
            BauerObject::from_vertex_map(g.clone())?;
            let labels: Vec<String> = (0..g.len()).map(|j| format!("v{j}")).collect();
            dot::endofunction_dot("bauer", &labels, g)
        }
        _ => {
            return Err(CliError::Schema(format!(
                "export-dot needs a stone or bauer document, got {}",
                doc.kind()
            )))
        }
    };
    Ok(Outcome {
        code: EXIT_PASS,
        stdout: text,
        ..Outcome::default()
    })
}
