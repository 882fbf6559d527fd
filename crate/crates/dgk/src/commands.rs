//! The file-based commands: `validate`, `kunneth` and `derived-kunneth`.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use dgk_core::dg::{validate_algebra, validate_module, DGModule, Side, ValidationReport};
use dgk_core::evidence::Check;
use dgk_core::exactlin::{Field, FieldSpec};
use dgk_core::resolve::{default_depth, derived_tensor_cohomology, semifree_resolve, ResolveOptions};
use rayon::prelude::*;

use crate::checks::{artifact, collapse, derived_checks, theta_checks, Settings, Timed};
use crate::error::CliError;
use crate::format::{
    decode_algebra, decode_instance, decode_module, decode_resolution, encode_instance, resolution_document,
    AlgebraDoc, CorpusDoc, Document, InstanceDoc, ModuleDoc, Pair, ResolutionDoc,
};
use crate::io::{read_document, write_atomic};
use crate::report::{CheckEntry, Report};
use crate::suite::aggregate;
use crate::with_field;

fn axioms_check(name: &str, rep: &ValidationReport) -> Check {
    if rep.is_valid() {
        return Check::pass(name, "all axioms hold");
    }
    let all: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
    Check::fail(
        name,
        dgk_core::evidence::Counterexample::new(format!("{} violation(s): {}", all.len(), all.join("; "))),
    )
}

/// The field of a document, checked against `--field` when given.
fn document_field(doc: &Document, flag: Option<FieldSpec>, at: &Path) -> Result<FieldSpec, CliError> {
    let spec = doc.field().map_err(|e| e.in_file(at))?;
    match flag {
        Some(f) if f != spec => Err(CliError::structural(
            at.display().to_string(),
            format!("file is over {spec} but --field asks for {f}"),
        )),
        _ => Ok(spec),
    }
}

fn validate_in<F: Field>(f: F, doc: &Document, report: &mut Report) -> Result<(), CliError> {
    let push = |report: &mut Report, label: &str, what: &str, c: Check| {
        let start = Instant::now();
        let name = if label.is_empty() {
            what.to_string()
        } else {
            format!("{label}: {what}")
        };
        report.push(CheckEntry::from_check(name, label, &c), start.elapsed());
    };
    let pair = |report: &mut Report, label: &str, m: &DGModule<F>, n: &DGModule<F>| {
        push(
            report,
            label,
            "algebra axioms",
            axioms_check("algebra axioms", &validate_algebra(m.algebra())),
        );
        push(
            report,
            label,
            "module M axioms",
            axioms_check("module M axioms", &validate_module(m)),
        );
        push(
            report,
            label,
            "module N axioms",
            axioms_check("module N axioms", &validate_module(n)),
        );
        report.instance_refs.push(label.to_string());
    };
    match doc {
        Document::Algebra(AlgebraDoc { algebra, .. }) => {
            let a = decode_algebra(f, "algebra", algebra)?;
            push(
                report,
                "",
                "algebra axioms",
                axioms_check("algebra axioms", &validate_algebra(&a)),
            );
        }
        Document::Module(ModuleDoc { algebra, module, .. }) => {
            let a = Arc::new(decode_algebra(f, "algebra", algebra)?);
            let m = decode_module("module", &a, module)?;
            push(
                report,
                "",
                "algebra axioms",
                axioms_check("algebra axioms", &validate_algebra(&a)),
            );
            push(
                report,
                "",
                "module axioms",
                axioms_check("module axioms", &validate_module(&m)),
            );
        }
        Document::Instance(d) => {
            let (label, m, n) = decode_instance(f, "", &d.instance())?;
            pair(report, &label, &m, &n);
        }
        Document::Corpus(CorpusDoc { instances, .. }) => {
            for (k, i) in instances.iter().enumerate() {
                let (label, m, n) = decode_instance(f, &format!("instances[{k}]"), i)?;
                pair(report, &label, &m, &n);
            }
        }
        Document::Resolution(ResolutionDoc {
            algebra,
            module,
            resolution,
            ..
        }) => {
            let a = Arc::new(decode_algebra(f, "algebra", algebra)?);
            let m = decode_module("module", &a, module)?;
            let r = decode_resolution("resolution", &m, resolution)?;
            push(
                report,
                "",
                "algebra axioms",
                axioms_check("algebra axioms", &validate_algebra(&a)),
            );
            push(
                report,
                "",
                "module axioms",
                axioms_check("module axioms", &validate_module(&m)),
            );
            push(
                report,
                "",
                "resolution invariants",
                collapse("resolution invariants", &r.check_invariants()),
            );
        }
    }
    Ok(())
}

/// Checks every axiom of every structure in a file.
pub fn cmd_validate(path: &Path, field: Option<FieldSpec>) -> Result<Report, CliError> {
    let start = Instant::now();
    let doc = read_document(path)?;
    let spec = document_field(&doc, field, path)?;
    let mut report = Report::new("validate");
    with_field!(spec, |f| validate_in(f, &doc, &mut report)).map_err(|e| e.in_file(path))?;
    if report.instance_refs.is_empty() {
        report.instance_refs.push(path.display().to_string());
    }
    report.finish(start.elapsed());
    Ok(report)
}

fn check_sides<F: Field>(at: &str, m: &DGModule<F>, n: &DGModule<F>) -> Result<(), CliError> {
    if m.side() != Side::Right {
        return Err(CliError::structural(at, "the first module must be a right module"));
    }
    if n.side() != Side::Left {
        return Err(CliError::structural(at, "the second module must be a left module"));
    }
    Ok(())
}

/// Pairs `(M, N)` from either one instance or corpus file, or two module
/// files over the same algebra.
fn load_pairs<F: Field>(f: F, docs: &[(PathBuf, Document)]) -> Result<Vec<Pair<F>>, CliError> {
    let pairs = match docs {
        [(path, doc)] => {
            let at = |e: CliError| e.in_file(path);
            match doc {
                Document::Instance(d) => vec![decode_instance(f, "", &d.instance()).map_err(at)?],
                Document::Corpus(CorpusDoc { instances, .. }) => instances
                    .iter()
                    .enumerate()
                    .map(|(k, i)| decode_instance(f, &format!("instances[{k}]"), i).map_err(at))
                    .collect::<Result<_, _>>()?,
                other => {
                    return Err(CliError::structural(
                        path.display().to_string(),
                        format!("a {} file needs a second module file", other.kind()),
                    ))
                }
            }
        }
        [(
            p1,
            Document::Module(ModuleDoc {
                algebra: a1, module: m, ..
            }),
        ), (
            p2,
            Document::Module(ModuleDoc {
                algebra: a2, module: n, ..
            }),
        )] => {
            let alg = Arc::new(decode_algebra(f, "algebra", a1).map_err(|e| e.in_file(p1))?);
            let alg2 = decode_algebra(f, "algebra", a2).map_err(|e| e.in_file(p2))?;
            if *alg != alg2 {
                return Err(CliError::structural(
                    p2.display().to_string(),
                    format!("algebra differs from the one in {}", p1.display()),
                ));
            }
            let m = decode_module("module", &alg, m).map_err(|e| e.in_file(p1))?;
            let n = decode_module("module", &alg, n).map_err(|e| e.in_file(p2))?;
            vec![(format!("{} ⊗ {}", p1.display(), p2.display()), m, n)]
        }
        [(p, d), _] if !matches!(d, Document::Module(_)) => {
            return Err(CliError::structural(
                p.display().to_string(),
                format!("expected a module file, found a {} file", d.kind()),
            ))
        }
        [_, (p, d)] => {
            return Err(CliError::structural(
                p.display().to_string(),
                format!("expected a module file, found a {} file", d.kind()),
            ))
        }
        _ => return Err(CliError::structural("arguments", "expected one or two input files")),
    };
    for (label, m, n) in &pairs {
        check_sides(label, m, n)?;
    }
    Ok(pairs)
}

fn read_inputs(paths: &[PathBuf], field: Option<FieldSpec>) -> Result<(FieldSpec, Vec<(PathBuf, Document)>), CliError> {
    let mut docs = Vec::new();
    let mut spec = field;
    for p in paths {
        let doc = read_document(p)?;
        spec = Some(document_field(&doc, spec, p)?);
        docs.push((p.clone(), doc));
    }
    let spec = spec.ok_or_else(|| CliError::structural("arguments", "no input files"))?;
    Ok((spec, docs))
}

fn reproducer<F: Field>(
    pairs: &[Pair<F>],
) -> impl FnMut(usize, &'static str) -> Option<(Document, bool, Option<Check>)> + '_ {
    move |k, _| {
        let (label, m, n) = &pairs[k];
        let doc = InstanceDoc::new(m.field().spec().to_string(), encode_instance(label.clone(), m, n));
        Some((Document::Instance(doc), false, None))
    }
}

fn kunneth_in<F: Field>(f: F, docs: &[(PathBuf, Document)], s: &Settings, report: &mut Report) -> Result<(), CliError> {
    let pairs = load_pairs(f, docs)?;
    let runs: Vec<(Vec<Timed>, Option<_>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (_, m, n))| theta_checks(m, n, k as u64, s))
        .collect();
    let labels: Vec<String> = pairs.iter().map(|p| p.0.clone()).collect();
    for ((label, _, _), (_, w)) in pairs.iter().zip(&runs) {
        if let Some(w) = w {
            report.artifacts.push(artifact(label, "theta", &w.theta));
        }
    }
    let results: Vec<Vec<Timed>> = runs.into_iter().map(|r| r.0).collect();
    report.instance_refs = labels.clone();
    aggregate(report, "", &labels, &results, &mut reproducer(&pairs));
    Ok(())
}

/// `theta` for each input pair with its certification, the proof-step
/// sequences, the degree-0 comparison and representative independence.
pub fn cmd_kunneth(paths: &[PathBuf], field: Option<FieldSpec>, s: &Settings) -> Result<Report, CliError> {
    let start = Instant::now();
    let (spec, docs) = read_inputs(paths, field)?;
    let mut report = Report::new("kunneth");
    report.seed = Some(s.seed);
    with_field!(spec, |f| kunneth_in(f, &docs, s, &mut report))?;
    report.finish(start.elapsed());
    Ok(report)
}

fn derived_in<F: Field>(
    f: F,
    docs: &[(PathBuf, Document)],
    s: &Settings,
    save_resolution: Option<&Path>,
    report: &mut Report,
) -> Result<(), CliError> {
    let pairs = load_pairs(f, docs)?;
    let runs: Vec<(Vec<Timed>, Option<_>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (_, m, n))| derived_checks(m, n, k as u64, s))
        .collect();
    let labels: Vec<String> = pairs.iter().map(|p| p.0.clone()).collect();
    for ((label, m, n), (_, w)) in pairs.iter().zip(&runs) {
        let Some(w) = w else { continue };
        report.artifacts.push(artifact(label, "theta_der", &w.theta_der));
        let t = w.top_degree();
        let depth = s.depth.unwrap_or_else(|| default_depth(n, n.hi()));
        if let Ok(h) = derived_tensor_cohomology(m, n, t - 1, ResolveOptions::new(depth)) {
            report.notes.push(format!(
                "{label}: H^{}(P ⊗ N) has dimension {} (below the top degree {t}, not governed by theta_der)",
                t - 1,
                h.dim()
            ));
        }
    }
    if let Some(path) = save_resolution {
        let (_, m, n) = pairs
            .first()
            .ok_or_else(|| CliError::structural("arguments", "no instance to resolve"))?;
        let depth = s.depth.unwrap_or_else(|| default_depth(n, n.hi()));
        let r = semifree_resolve(m, ResolveOptions::new(depth))
            .map_err(|e| CliError::structural("resolution", e.to_string()))?;
        write_atomic(path, &resolution_document(&r).to_json())?;
    }
    let results: Vec<Vec<Timed>> = runs.into_iter().map(|r| r.0).collect();
    report.instance_refs = labels.clone();
    aggregate(report, "", &labels, &results, &mut reproducer(&pairs));
    Ok(())
}

/// `theta_der` for each input pair: certification, comparison with `theta`,
/// depth stability and independence of the resolution. Optionally writes the
/// resolution of the first `M` to `save_resolution`.
pub fn cmd_derived_kunneth(
    paths: &[PathBuf],
    field: Option<FieldSpec>,
    s: &Settings,
    save_resolution: Option<&Path>,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let (spec, docs) = read_inputs(paths, field)?;
    let mut report = Report::new("derived-kunneth");
    report.seed = Some(s.seed);
    with_field!(spec, |f| derived_in(f, &docs, s, save_resolution, &mut report))?;
    report.finish(start.elapsed());
    Ok(report)
}
