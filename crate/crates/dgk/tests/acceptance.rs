//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dgk::checks::{self, Settings, Timed};
use dgk::format::ProfileJson;
use dgk::suite::generate;
use dgk_core::dg::{Side, StrictMorphism};
use dgk_core::exactlin::{Field, PrimeField, Rationals};
use dgk_core::genlab::{dual_numbers, noninjectivity_witness, residue_module, Instance};
use dgk_core::resolve::{derived_tensor_cohomology, derived_tensor_top, ResolveOptions};
use dgk_core::tensor::top_degree_terms;
use rayon::prelude::*;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

impl Outcome {
    fn ok(&self) -> bool {
        self.passed && self.budget.is_none_or(|b| self.elapsed <= b)
    }

    fn line(&self) -> String {
        let budget = match self.budget {
            Some(b) => format!(" (budget {} s)", b.as_secs()),
            None => String::new(),
        };
        format!(
            "{} {}: {} [{:.2} s{}]",
            if self.ok() { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            budget
        )
    }
}

/// Pass counts of the given groups, with the first failure.
fn tally(results: &[Vec<Timed>], groups: &[&str]) -> (bool, String) {
    let mut parts = Vec::new();
    let mut all = true;
    for g in groups {
        let hits: Vec<&Timed> = results.iter().flatten().filter(|t| t.group == *g).collect();
        let passed = hits.iter().filter(|t| t.check.passed).count();
        let ok = !hits.is_empty() && passed == hits.len();
        all &= ok;
        let mut part = format!("{g} {passed}/{}", hits.len());
        if let Some(t) = hits.iter().find(|t| !t.check.passed) {
            part.push_str(&format!(" (first failure: {}: {})", t.check.name, t.check.detail));
        }
        parts.push(part);
    }
    (all, parts.join("; "))
}

struct FieldRuns {
    theta_checks: Vec<Vec<Timed>>,
    theta_time: Duration,
    derived_checks: Vec<Vec<Timed>>,
    derived_time: Duration,
    naturality: Vec<Vec<Timed>>,
    naturality_time: Duration,
    naturality_pairs: usize,
    zero_pairs: usize,
    composite_pairs: usize,
}

fn vanishes<F: Field>(g: &StrictMorphism<F>) -> bool {
    g.degrees().all(|i| g.map(i).is_zero())
}

const DERIVED: usize = 100;
const NATURALITY: usize = 20;

fn runs<F: Field>(f: F, profile: &ProfileJson) -> (usize, FieldRuns) {
    let corpus: Vec<Instance<F>> = generate(f, profile).expect("default corpus generates");
    let s = Settings::default();
    let start = Instant::now();
    let theta_checks: Vec<Vec<Timed>> = corpus
        .par_iter()
        .map(|i| checks::theta_checks(&i.m, &i.n, i.index as u64, &s).0)
        .collect();
    let theta_time = start.elapsed();
    let start = Instant::now();
    let derived_checks: Vec<Vec<Timed>> = corpus[..DERIVED]
        .par_iter()
        .map(|i| checks::derived_checks(&i.m, &i.n, i.index as u64, &s).0)
        .collect();
    let derived_time = start.elapsed();
    let mut pairs = 0;
    let mut zero_pairs = 0;
    let mut composite_pairs = 0;
    for i in &corpus[..NATURALITY] {
        for (label, fm, gn) in checks::morphism_pairs(&i.m, &i.n, i.index as u64, &s).expect("morphisms") {
            pairs += 1;
            zero_pairs += usize::from(vanishes(&gn) || vanishes(&fm));
            composite_pairs += usize::from(label.starts_with("composite"));
        }
    }
    let start = Instant::now();
    let naturality: Vec<Vec<Timed>> = corpus[..NATURALITY]
        .par_iter()
        .map(|i| checks::naturality(&i.m, &i.n, i.index as u64, &s))
        .collect();
    let naturality_time = start.elapsed();
    (
        corpus.len(),
        FieldRuns {
            theta_checks,
            theta_time,
            derived_checks,
            derived_time,
            naturality,
            naturality_time,
            naturality_pairs: pairs,
            zero_pairs,
            composite_pairs,
        },
    )
}

fn criterion3<F: Field>(f: F) -> (bool, String) {
    let w = noninjectivity_witness(f);
    let terms = top_degree_terms(&w.m, &w.n).expect("top-degree terms");
    let onto = terms.sigma.rank() == terms.tensor.dim(-1);
    let nonzero = !f.vec_is_zero(&w.element);
    let vanishes = f.vec_is_zero(&terms.sigma.mul_vec(&w.element));
    let ok = w.source_dim == 2 && w.target_dim == 1 && nonzero && vanishes && onto && w.evidence.all_passed();
    (
        ok,
        format!(
            "{}: source {}, target {}, element nonzero {nonzero}, image zero {vanishes}, surjective {onto}",
            f.spec(),
            w.source_dim,
            w.target_dim
        ),
    )
}

/// `Tor^{K[t]/t^2}_*(K, K)` from the periodic resolution `... -t-> A -t-> A -> K`:
/// after tensoring with `K` every differential vanishes, so each `Tor_i` is `K`.
const TOR_DIM: usize = 1;

fn criterion5<F: Field>(f: F) -> (bool, String) {
    let a = Arc::new(dual_numbers(f));
    let m = residue_module(&a, Side::Right).expect("residue module");
    let n = residue_module(&a, Side::Left).expect("residue module");
    let top = derived_tensor_top(&m, &n).map(|h| h.dim());
    let below = derived_tensor_cohomology(&m, &n, -1, ResolveOptions::new(4)).map(|h| h.dim());
    let (top, below) = (top.expect("top cohomology"), below.expect("H^-1"));
    (
        top == TOR_DIM && below == TOR_DIM,
        format!("{}: dim H^0 = {top}, dim H^-1(P ⊗ N) = {below}", f.spec()),
    )
}

fn criterion7() -> (bool, String) {
    let profile = ProfileJson {
        instance_count: 24,
        derived_instances: 8,
        naturality_instances: 4,
        seed: 20240611,
        ..ProfileJson::default()
    };
    let a = dgk::cmd_suite(&profile).expect("suite runs");
    let b = dgk::cmd_suite(&profile).expect("suite runs");
    let (ja, jb) = (a.to_json_without_timing(), b.to_json_without_timing());
    (
        ja == jb && a.passed(),
        format!(
            "{} bytes each, identical {}, {} checks, report passes {}",
            ja.len(),
            ja == jb,
            a.checks.len(),
            a.passed()
        ),
    )
}

fn both(a: (bool, String), b: (bool, String)) -> (bool, String) {
    (a.0 && b.0, format!("{}; {}", a.1, b.1))
}

fn main() -> ExitCode {
    let profile = ProfileJson::default();
    let (nf, fp) = runs(PrimeField::new(101).expect("101 is prime"), &profile);
    let (nq, q) = runs(Rationals, &profile);
    let mut out = Vec::new();

    let t1: Vec<Vec<Timed>> = fp.theta_checks.iter().chain(&q.theta_checks).cloned().collect();
    let (ok, detail) = tally(
        &t1,
        &[
            checks::THETA_CERTIFIED,
            checks::THETA_BIJECTIVE,
            checks::THETA_DEFINING,
            checks::THETA_REPRESENTATIVES,
        ],
    );
    out.push(Outcome {
        name: "1 theta on the default corpus",
        passed: ok && nf == 200 && nq == 200,
        detail: format!("F101 {nf} + Q {nq} instances; {detail}"),
        elapsed: fp.theta_time + q.theta_time,
        budget: Some(Duration::from_secs(60)),
    });

    let (ok, detail) = tally(&t1, &[checks::EXACT_SEQUENCES, checks::DEGREE_ZERO]);
    out.push(Outcome {
        name: "2 proof steps",
        passed: ok,
        detail,
        elapsed: fp.theta_time + q.theta_time,
        budget: None,
    });

    let start = Instant::now();
    let (ok, detail) = both(criterion3(PrimeField::new(101).expect("prime")), criterion3(Rationals));
    out.push(Outcome {
        name: "3 noninjectivity witness",
        passed: ok,
        detail,
        elapsed: start.elapsed(),
        budget: None,
    });

    let t2: Vec<Vec<Timed>> = fp.derived_checks.iter().chain(&q.derived_checks).cloned().collect();
    let (ok, detail) = tally(
        &t2,
        &[
            checks::DER_CERTIFIED,
            checks::DER_BIJECTIVE,
            checks::DER_COMPARISON,
            checks::DER_DEPTH,
            checks::DER_RESOLUTION,
        ],
    );
    out.push(Outcome {
        name: "4 theta_der",
        passed: ok && t2.len() >= 100,
        detail: format!("{} instances; {detail}", t2.len()),
        elapsed: fp.derived_time + q.derived_time,
        budget: Some(Duration::from_secs(120)),
    });

    let start = Instant::now();
    let (ok, detail) = both(criterion5(PrimeField::new(101).expect("prime")), criterion5(Rationals));
    out.push(Outcome {
        name: "5 dual numbers",
        passed: ok,
        detail,
        elapsed: start.elapsed(),
        budget: None,
    });

    let nat: Vec<Vec<Timed>> = fp.naturality.iter().chain(&q.naturality).cloned().collect();
    let (ok, detail) = tally(&nat, &[checks::THETA_NATURAL, checks::DER_NATURAL]);
    let pairs = fp.naturality_pairs + q.naturality_pairs;
    let zeros = fp.zero_pairs + q.zero_pairs;
    let composites = fp.composite_pairs + q.composite_pairs;
    out.push(Outcome {
        name: "6 naturality",
        passed: ok && pairs >= 50 && zeros > 0 && composites > 0,
        detail: format!("{pairs} pairs ({zeros} with a zero morphism, {composites} composites); {detail}"),
        elapsed: fp.naturality_time + q.naturality_time,
        budget: None,
    });

    let start = Instant::now();
    let (ok, detail) = criterion7();
    out.push(Outcome {
        name: "7 deterministic suite report",
        passed: ok,
        detail,
        elapsed: start.elapsed(),
        budget: None,
    });

    for o in &out {
        println!("{}", o.line());
    }
    if out.iter().all(Outcome::ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
