//! Per-instance verification runs, each producing timed checks tagged with a
//! stable group name. Commands aggregate the groups across instances.

use std::time::{Duration, Instant};

use dgk_core::dg::{DGModule, StrictMorphism};
use dgk_core::evidence::{Check, Counterexample, Evidence};
use dgk_core::exactlin::{Field, Matrix};
use dgk_core::genlab::{instance_rng, random_morphism, random_target, ModuleBounds};
use dgk_core::kunneth::{
    check_defining_property, check_exact_sequences, check_functoriality, check_representative_independence, theta,
    KunnethWitness,
};
use dgk_core::resolve::{
    check_depth_stabilization, check_diagram_ii, check_resolution_independence, check_theta_der_functoriality,
    default_depth, theta_der_with, DerivedKunnethWitness, ResolveOptions,
};

pub const THETA_CERTIFIED: &str = "theta is constructed and certified";
pub const THETA_BIJECTIVE: &str = "theta is bijective";
pub const THETA_DEFINING: &str = "theta sends [m] ⊗ [n] to [m ⊗ n]";
pub const THETA_REPRESENTATIVES: &str = "theta ignores the choice of representatives";
pub const EXACT_SEQUENCES: &str = "top-degree sequences are exact";
pub const DEGREE_ZERO: &str = "degree-0 tensor map is bijective";
pub const DER_CERTIFIED: &str = "theta_der is constructed and certified";
pub const DER_BIJECTIVE: &str = "theta_der is bijective";
pub const DER_COMPARISON: &str = "H(eta) ∘ theta_der = theta";
pub const DER_DEPTH: &str = "theta_der is stable across depths";
pub const DER_RESOLUTION: &str = "theta_der does not depend on the resolution";
pub const THETA_NATURAL: &str = "theta is natural";
pub const DER_NATURAL: &str = "theta_der is natural";

/// Group names in report order.
pub const GROUPS: [&str; 13] = [
    THETA_CERTIFIED,
    THETA_BIJECTIVE,
    THETA_DEFINING,
    THETA_REPRESENTATIVES,
    EXACT_SEQUENCES,
    DEGREE_ZERO,
    DER_CERTIFIED,
    DER_BIJECTIVE,
    DER_COMPARISON,
    DER_DEPTH,
    DER_RESOLUTION,
    THETA_NATURAL,
    DER_NATURAL,
];

/// Seed salts, so that the streams used by different checks of one instance
/// are unrelated.
const REPRESENTATIVE_SALT: u64 = 0x7265_7073;
const DEFINING_SALT: u64 = 0x6465_6669;
const RESOLUTION_SALT: u64 = 0x7265_736f;
const MORPHISM_SALT: u64 = 0x6d6f_7270;

#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    pub perturbations: usize,
    /// base resolution depth; `None` uses the width of `N` plus 2
    pub depth: Option<usize>,
    pub bounds: ModuleBounds,
    /// corrupt `theta` before the defining-property check
    pub inject_failure: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: dgk_core::genlab::DEFAULT_SEED,
            perturbations: 20,
            depth: None,
            bounds: ModuleBounds::default(),
            inject_failure: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Timed {
    pub group: &'static str,
    pub check: Check,
    pub elapsed: Duration,
}

fn timed(group: &'static str, run: impl FnOnce() -> Check) -> Timed {
    let start = Instant::now();
    let check = run();
    Timed {
        group,
        check,
        elapsed: start.elapsed(),
    }
}

/// One check standing for a whole evidence list: the first failure, if any.
pub fn collapse(name: &str, ev: &Evidence) -> Check {
    match ev.first_failure() {
        Some(c) => {
            let mut c = c.clone();
            c.name = format!("{name}: {}", c.name);
            c
        }
        None => Check::pass(name, format!("{} checks", ev.len())),
    }
}

fn error_check(name: &str, e: impl std::fmt::Display) -> Check {
    Check::fail(name, Counterexample::new(format!("construction failed: {e}")))
}

fn mix(seed: u64, salt: u64, index: u64) -> u64 {
    seed ^ salt.rotate_left(17) ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// `theta` with its certification, the proof steps, and the defining
/// property. Returns the witness when it could be built.
pub fn theta_checks<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    index: u64,
    s: &Settings,
) -> (Vec<Timed>, Option<KunnethWitness<F>>) {
    let start = Instant::now();
    let w = match theta(m, n) {
        Ok(w) => w,
        Err(e) => {
            return (
                vec![Timed {
                    group: THETA_CERTIFIED,
                    check: error_check(THETA_CERTIFIED, e),
                    elapsed: start.elapsed(),
                }],
                None,
            )
        }
    };
    let mut out = vec![Timed {
        group: THETA_CERTIFIED,
        check: collapse(THETA_CERTIFIED, &w.evidence),
        elapsed: start.elapsed(),
    }];
    out.push(timed(THETA_BIJECTIVE, || {
        let (r, c) = w.theta.shape();
        Check::from_bool(THETA_BIJECTIVE, w.is_bijective(), format!("{r} x {c}"))
    }));
    out.push(timed(THETA_DEFINING, || {
        let mut probe = w.clone();
        if s.inject_failure && probe.theta.rows() > 0 && probe.theta.cols() > 0 {
            let f = m.field();
            let v = f.add(probe.theta.get(0, 0), &f.one());
            probe.theta.set(0, 0, v);
        }
        check_defining_property(&probe, 8, mix(s.seed, DEFINING_SALT, index))
    }));
    out.push(timed(THETA_REPRESENTATIVES, || {
        let mut rng = instance_rng(mix(s.seed, REPRESENTATIVE_SALT, 0), index);
        check_representative_independence(&w, s.perturbations, &mut rng)
    }));
    out.push(timed(EXACT_SEQUENCES, || {
        collapse(EXACT_SEQUENCES, &check_exact_sequences(&w))
    }));
    out.push(timed(DEGREE_ZERO, || w.top.degree0_iso_check()));
    (out, Some(w))
}

/// `theta_der`: certification, comparison with `theta`, depth stability and
/// independence of the resolution.
pub fn derived_checks<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    index: u64,
    s: &Settings,
) -> (Vec<Timed>, Option<DerivedKunnethWitness<F>>) {
    let depth = s.depth.unwrap_or_else(|| default_depth(n, n.hi()));
    let start = Instant::now();
    let w = match theta_der_with(m, n, m.hi(), n.hi(), ResolveOptions::new(depth)) {
        Ok(w) => w,
        Err(e) => {
            return (
                vec![Timed {
                    group: DER_CERTIFIED,
                    check: error_check(DER_CERTIFIED, e),
                    elapsed: start.elapsed(),
                }],
                None,
            )
        }
    };
    let mut out = vec![Timed {
        group: DER_CERTIFIED,
        check: collapse(DER_CERTIFIED, &w.evidence),
        elapsed: start.elapsed(),
    }];
    out.push(timed(DER_BIJECTIVE, || {
        let (r, c) = w.theta_der.shape();
        Check::from_bool(DER_BIJECTIVE, w.is_bijective(), format!("{r} x {c}"))
    }));
    out.push(timed(DER_COMPARISON, || check_diagram_ii(&w)));
    out.push(timed(DER_DEPTH, || {
        check_depth_stabilization(m, n, &[depth, depth + 1, depth + 2], None)
            .unwrap_or_else(|e| error_check(DER_DEPTH, e))
    }));
    out.push(timed(DER_RESOLUTION, || {
        let a = mix(s.seed, RESOLUTION_SALT, index);
        check_resolution_independence(m, n, depth, (a, a.rotate_left(32) ^ 1))
            .unwrap_or_else(|e| error_check(DER_RESOLUTION, e))
    }));
    (out, Some(w))
}

/// A labelled pair `(f : M -> M', g : N -> N')`.
pub type MorphismPair<F> = (&'static str, StrictMorphism<F>, StrictMorphism<F>);

/// Three morphism pairs `(f, g)`, `(f, 0)`, `(f' ∘ f, g)` into random targets.
pub fn morphism_pairs<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    index: u64,
    s: &Settings,
) -> Result<Vec<MorphismPair<F>>, String> {
    let mut rng = instance_rng(mix(s.seed, MORPHISM_SALT, 0), index);
    let m2 = random_target(m, s.bounds, &mut rng).map_err(|e| e.to_string())?;
    let n2 = random_target(n, s.bounds, &mut rng).map_err(|e| e.to_string())?;
    let fm = random_morphism(m, &m2, &mut rng);
    let gn = random_morphism(n, &n2, &mut rng);
    let zero = StrictMorphism::zero(n, &n2).map_err(|e| e.to_string())?;
    let m3 = random_target(&m2, s.bounds, &mut rng).map_err(|e| e.to_string())?;
    let composite = fm
        .then(&random_morphism(&m2, &m3, &mut rng))
        .map_err(|e| e.to_string())?;
    Ok(vec![
        ("random pair", fm.clone(), gn.clone()),
        ("zero on N", fm, zero),
        ("composite on M", composite, gn),
    ])
}

/// Naturality squares of `theta` and `theta_der` for the pairs of
/// [`morphism_pairs`].
pub fn naturality<F: Field>(m: &DGModule<F>, n: &DGModule<F>, index: u64, s: &Settings) -> Vec<Timed> {
    let pairs = match morphism_pairs(m, n, index, s) {
        Ok(p) => p,
        Err(e) => {
            return vec![
                Timed {
                    group: THETA_NATURAL,
                    check: error_check(THETA_NATURAL, &e),
                    elapsed: Duration::ZERO,
                },
                Timed {
                    group: DER_NATURAL,
                    check: error_check(DER_NATURAL, &e),
                    elapsed: Duration::ZERO,
                },
            ]
        }
    };
    let mut out = Vec::new();
    for (label, f, g) in &pairs {
        let tag = |mut c: Check| {
            c.detail = format!("{label}: {}", c.detail);
            c
        };
        out.push(timed(THETA_NATURAL, || {
            tag(check_functoriality(f, g).unwrap_or_else(|e| error_check(THETA_NATURAL, e)))
        }));
        out.push(timed(DER_NATURAL, || {
            tag(check_theta_der_functoriality(f, g, s.depth).unwrap_or_else(|e| error_check(DER_NATURAL, e)))
        }));
    }
    out
}

/// Which parts of the suite to run for one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Plan {
    pub theta_checks: bool,
    pub derived_checks: bool,
    pub naturality: bool,
}

impl Plan {
    /// Just the part of the suite that produces `group`.
    pub fn for_group(group: &str) -> Plan {
        let k = GROUPS.iter().position(|g| *g == group).unwrap_or(0);
        Plan {
            theta_checks: k < 6,
            derived_checks: (6..11).contains(&k),
            naturality: k >= 11,
        }
    }
}

pub fn run_instance<F: Field>(m: &DGModule<F>, n: &DGModule<F>, index: u64, s: &Settings, plan: Plan) -> Vec<Timed> {
    let mut out = Vec::new();
    if plan.theta_checks {
        out.extend(theta_checks(m, n, index, s).0);
    }
    if plan.derived_checks {
        out.extend(derived_checks(m, n, index, s).0);
    }
    if plan.naturality {
        out.extend(naturality(m, n, index, s));
    }
    out
}

/// Matrix as an artifact for a report.
pub fn artifact<F: Field>(instance: &str, name: &str, m: &Matrix<F>) -> crate::report::Artifact {
    crate::report::Artifact {
        instance: instance.to_string(),
        name: name.to_string(),
        rows: m.rows(),
        cols: m.cols(),
        matrix: crate::format::encode_matrix(m),
    }
}
