//! Corpus generation and the full verification suite.

use std::time::{Duration, Instant};

use dgk_core::dg::{validate_module, Side};
use dgk_core::evidence::Check;
use dgk_core::exactlin::Field;
use dgk_core::genlab::{dual_numbers, generate_instance, noninjectivity_witness, residue_module, Instance};
use dgk_core::resolve::{derived_tensor_cohomology, derived_tensor_top, ResolveOptions};
use rayon::prelude::*;
use std::sync::Arc;

use crate::checks::{collapse, run_instance, Plan, Settings, Timed, DER_NATURAL, GROUPS, THETA_NATURAL};
use crate::error::CliError;
use crate::format::{corpus_document, instance_document, instance_label, Document, ProfileJson};
use crate::report::{CheckEntry, Report, Status};
use crate::with_field;

/// How to turn the first failure of a group into a reproducer file:
/// `(document, shrunk, check on the reproducer)`.
pub(crate) type Reproduce<'a> = dyn FnMut(usize, &'static str) -> Option<(Document, bool, Option<Check>)> + 'a;

/// Folds per-instance results into one report entry per group.
pub(crate) fn aggregate(
    report: &mut Report,
    prefix: &str,
    labels: &[String],
    results: &[Vec<Timed>],
    reproduce: &mut Reproduce<'_>,
) {
    for group in GROUPS {
        let mut total = 0;
        let mut passed = 0;
        let mut elapsed = Duration::ZERO;
        let mut first: Option<(usize, &Check)> = None;
        for (k, rs) in results.iter().enumerate() {
            for t in rs.iter().filter(|t| t.group == group) {
                total += 1;
                elapsed += t.elapsed;
                if t.check.passed {
                    passed += 1;
                } else if first.is_none() {
                    first = Some((k, &t.check));
                }
            }
        }
        if total == 0 {
            continue;
        }
        let unit = if group == THETA_NATURAL || group == DER_NATURAL {
            "squares"
        } else {
            "instances"
        };
        let name = format!("{prefix}{group}");
        let mut entry = CheckEntry {
            name: name.clone(),
            status: Status::of(passed == total),
            detail: if total == 1 && results.len() == 1 {
                let c = &results[0].iter().find(|t| t.group == group).expect("one result").check;
                c.detail.clone()
            } else {
                format!("{passed}/{total} {unit}")
            },
            counterexample: None,
        };
        if let Some((k, c)) = first {
            let mut bundle = CheckEntry::from_check(&name, &labels[k], c)
                .counterexample
                .expect("failed checks carry a counterexample");
            if let Some((doc, shrunk, recheck)) = reproduce(k, group) {
                if let Some(c2) = recheck.and_then(|c2| c2.counterexample.map(|cx| (c2.name, cx))) {
                    bundle.check = c2.0;
                    bundle.message = c2.1.message;
                    bundle.vector = c2.1.vector;
                }
                bundle.shrunk = shrunk;
                bundle.reproducer = Some(doc);
            }
            entry.detail = format!("{}; first failure at {}: {}", entry.detail, labels[k], bundle.message);
            entry.counterexample = Some(bundle);
        }
        report.push(entry, elapsed);
    }
}

fn plan(profile: &ProfileJson, index: usize) -> Plan {
    Plan {
        theta_checks: true,
        derived_checks: index < profile.derived_instances,
        naturality: index < profile.naturality_instances,
    }
}

fn settings(profile: &ProfileJson) -> Settings {
    Settings {
        seed: profile.seed,
        perturbations: profile.perturbations,
        depth: None,
        bounds: dgk_core::genlab::ModuleBounds {
            max_per_degree_dim: profile.max_per_degree_dim,
            degree_span: profile.degree_span,
        },
        inject_failure: profile.inject_failure,
    }
}

/// The instances of `profile` over `f`, generated in parallel and returned in
/// index order.
pub fn generate<F: Field>(f: F, profile: &ProfileJson) -> Result<Vec<Instance<F>>, CliError> {
    let cp = profile.corpus(f.spec())?;
    (0..cp.instance_count)
        .into_par_iter()
        .map(|i| generate_instance(&cp, f, i))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::structural("profile", format!("generation failed: {e}")))
}

/// The check group `group` still fails on a candidate instance.
fn still_fails<'a, F: Field>(s: &'a Settings, group: &'static str, index: u64) -> impl Fn(&Instance<F>) -> bool + 'a {
    let plan = Plan::for_group(group);
    move |c: &Instance<F>| {
        run_instance(&c.m, &c.n, index, s, plan)
            .iter()
            .any(|t| t.group == group && !t.check.passed)
    }
}

/// A failure that persists as the instance is simplified, as a reproducer.
fn shrink_failure<F: Field>(
    f: F,
    inst: &Instance<F>,
    s: &Settings,
    group: &'static str,
) -> (Document, bool, Option<Check>) {
    let index = inst.index as u64;
    let pred = still_fails(s, group, index);
    let small = inst.shrink(f, &pred);
    let shrunk = small.m_recipe != inst.m_recipe || small.n_recipe != inst.n_recipe;
    let recheck = run_instance(&small.m, &small.n, index, s, Plan::for_group(group))
        .into_iter()
        .find(|t| t.group == group && !t.check.passed)
        .map(|t| t.check);
    (instance_document(&small), shrunk, recheck)
}

/// `(M^-1 ⊗ N^0) ⊕ (M^0 ⊗ N^-1) -> (M ⊗_A N)^-1` over the exterior algebra
/// is onto but not injective.
pub fn noninjectivity_check<F: Field>(f: F) -> Check {
    let w = noninjectivity_witness(f);
    let mut c = collapse("noninjective degree -1 map", &w.evidence);
    if c.passed {
        c.detail = format!(
            "source dimension {}, target dimension {}, witness [{}] maps to zero",
            w.source_dim,
            w.target_dim,
            w.element.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(", ")
        );
    }
    c
}

/// `K ⊗^L K` over the dual numbers: top cohomology of dimension 1 and, one
/// degree lower, `Tor_1` of dimension 1.
pub fn dual_numbers_check<F: Field>(f: F) -> Check {
    let name = "dual numbers: top derived tensor and Tor_1";
    let a = Arc::new(dual_numbers(f));
    let (m, n) = match (residue_module(&a, Side::Right), residue_module(&a, Side::Left)) {
        (Ok(m), Ok(n)) => (m, n),
        (Err(e), _) | (_, Err(e)) => return Check::from_bool(name, false, e.to_string()),
    };
    let top = derived_tensor_top(&m, &n).map(|h| h.dim());
    let below = derived_tensor_cohomology(&m, &n, -1, ResolveOptions::new(3)).map(|h| h.dim());
    match (top, below) {
        (Ok(t), Ok(b)) => Check::from_bool(
            name,
            t == 1 && b == 1,
            format!("dim H^0 = {t}, dim H^-1 = {b} (the lower degree is outside the top-degree formula)"),
        ),
        (Err(e), _) | (_, Err(e)) => Check::from_bool(name, false, e.to_string()),
    }
}

fn suite_for_field<F: Field>(f: F, profile: &ProfileJson, report: &mut Report) -> Result<(), CliError> {
    let instances = generate(f, profile)?;
    let s = settings(profile);
    let results: Vec<Vec<Timed>> = instances
        .par_iter()
        .map(|inst| run_instance(&inst.m, &inst.n, inst.index as u64, &s, plan(profile, inst.index)))
        .collect();
    let labels: Vec<String> = instances.iter().map(instance_label).collect();
    report.instance_refs.extend(labels.iter().cloned());
    let prefix = format!("{}: ", f.spec());
    aggregate(report, &prefix, &labels, &results, &mut |k, group| {
        Some(shrink_failure(f, &instances[k], &s, group))
    });
    for check in [noninjectivity_check(f), dual_numbers_check(f)] {
        let start = Instant::now();
        let name = format!("{prefix}{}", check.name);
        report.push(CheckEntry::from_check(name, "fixed example", &check), start.elapsed());
    }
    Ok(())
}

/// Generates the corpus of every field in the profile and runs the
/// theta and theta_der checks, the naturality squares and the fixed examples.
pub fn cmd_suite(profile: &ProfileJson) -> Result<Report, CliError> {
    let start = Instant::now();
    let specs = profile.field_specs()?;
    for &spec in &specs {
        profile.corpus(spec)?;
    }
    let mut report = Report::new("suite");
    report.seed = Some(profile.seed);
    report.profile = Some(profile.clone());
    for spec in specs {
        with_field!(spec, |f| suite_for_field(f, profile, &mut report))?;
    }
    report.finish(start.elapsed());
    Ok(report)
}

fn gen_for_field<F: Field>(f: F, profile: &ProfileJson, report: &mut Report) -> Result<Document, CliError> {
    let instances = generate(f, profile)?;
    let start = Instant::now();
    let valid = instances
        .iter()
        .filter(|i| validate_module(&i.m).is_valid() && validate_module(&i.n).is_valid())
        .count();
    report.instance_refs = instances.iter().map(instance_label).collect();
    report.push(
        CheckEntry::from_check(
            "generated modules validate",
            "corpus",
            &Check::from_bool(
                "generated modules validate",
                valid == instances.len(),
                format!("{valid}/{} instances", instances.len()),
            ),
        ),
        start.elapsed(),
    );
    let mut p = profile.clone();
    p.fields = vec![f.spec().to_string()];
    Ok(corpus_document(f, &p, &instances))
}

/// The corpus of a single-field profile as a document, with a report that
/// the generated modules validate.
pub fn cmd_gen(profile: &ProfileJson) -> Result<(Report, Document), CliError> {
    let start = Instant::now();
    let specs = profile.field_specs()?;
    let [spec] = specs[..] else {
        return Err(CliError::structural(
            "profile.fields",
            "gen writes one field at a time; pass --field",
        ));
    };
    let mut report = Report::new("gen");
    report.seed = Some(profile.seed);
    report.profile = Some(profile.clone());
    let doc = with_field!(spec, |f| gen_for_field(f, profile, &mut report))?;
    report.finish(start.elapsed());
    Ok((report, doc))
}
