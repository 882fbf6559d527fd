use alloc::format;
use alloc::vec::Vec;

use super::resolution::{cohomological_sup, semifree_resolve, ResolveOptions, SemiFreeResolution};
use super::semifree_tensor::SemiFreeTensor;
use super::ResolveError;
use crate::dg::{
    cohomology, h0_ring, smart_truncate, Cochain, CohomologySpace, DGModule, Degree, Side, StrictMorphism,
};
use crate::evidence::{Check, Counterexample, Evidence};
use crate::exactlin::{Field, Matrix};
use crate::kunneth::{theta_with_tops, KunnethWitness};
use crate::tensor::{tensor_over_ring, BalancedTensorSpace, RingActions};

/// `θ^der : H^{i0}(M) ⊗_{H^0(A)} H^{j0}(N) -> H^{i0+j0}(P ⊗_A τN)` for a
/// semi-free resolution `ρ : P -> M` and the smart truncation `τN` of `N`
/// at `j0`.
#[derive(Clone, Debug)]
pub struct DerivedKunnethWitness<F: Field> {
    pub i0: Degree,
    pub j0: Degree,
    pub resolution: SemiFreeResolution<F>,
    pub n: DGModule<F>,
    pub n_trunc: DGModule<F>,
    /// `τN -> N`
    pub trunc: StrictMorphism<F>,
    pub source: BalancedTensorSpace<F>,
    /// `H^{i0+j0}(P ⊗_A τN)`
    pub target: CohomologySpace<F>,
    /// `H^{i0}(ρ)`
    pub h_rho: Matrix<F>,
    /// `H^{j0}(τN -> N)`
    pub h_trunc: Matrix<F>,
    pub theta_der: Matrix<F>,
    /// `H^{i0+j0}(ρ ⊗ ι) : H(P ⊗ τN) -> H(M ⊗ N)`, when `M` and `N` are
    /// complexes below `i0` and `j0`
    pub eta_h0: Option<Matrix<F>>,
    /// `θ` for `M` and `N` under the same condition
    pub plain: Option<KunnethWitness<F>>,
    pub evidence: Evidence,
}

impl<F: Field> DerivedKunnethWitness<F> {
    pub fn top_degree(&self) -> Degree {
        self.i0 + self.j0
    }

    pub fn tensor(&self) -> SemiFreeTensor<'_, F> {
        SemiFreeTensor::new(&self.resolution.p, &self.n_trunc)
    }

    pub fn is_bijective(&self) -> bool {
        self.theta_der.is_invertible() || self.theta_der.shape() == (0, 0)
    }

    /// `H(η) ∘ θ^der`, landing in `H^{i0+j0}(M ⊗_A N)`.
    pub fn composite(&self) -> Option<Matrix<F>> {
        self.eta_h0.as_ref().map(|e| e.mul(&self.theta_der))
    }
}

fn invertible<F: Field>(m: &Matrix<F>) -> bool {
    m.is_invertible() || m.shape() == (0, 0)
}

fn inverse<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    if m.shape() == (0, 0) {
        return m.clone();
    }
    m.inverse().expect("checked invertible")
}

/// Width of the window of `N` below `j0`, plus 2.
pub fn default_depth<F: Field>(n: &DGModule<F>, j0: Degree) -> usize {
    (j0 - n.lo()).max(0) as usize + 2
}

fn check_sides<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<(), ResolveError> {
    if m.side() != Side::Right {
        return Err(ResolveError::NotRightModule);
    }
    if n.side() != Side::Left {
        return Err(ResolveError::NotLeftModule);
    }
    Ok(())
}

fn check_cohomological_top<F: Field>(m: &DGModule<F>, top: Degree, which: &'static str) -> Result<(), ResolveError> {
    match cohomological_sup(m) {
        Some(s) if s > top => Err(ResolveError::CohomologyAboveTop { which, degree: s }),
        _ => Ok(()),
    }
}

/// Resolution of `m` certified down to `i0 - depth`.
fn resolve_below<F: Field>(
    m: &DGModule<F>,
    i0: Degree,
    opts: ResolveOptions,
) -> Result<SemiFreeResolution<F>, ResolveError> {
    let padded = if m.hi() < i0 {
        m.with_window(m.lo(), i0)
    } else {
        m.clone()
    };
    let extra = (padded.hi() - i0) as usize;
    semifree_resolve(
        &padded,
        ResolveOptions {
            depth: opts.depth + extra,
            ..opts
        },
    )
}

/// `θ^der` with `i0 = hi(M)`, `j0 = hi(N)` and the default depth.
pub fn theta_der<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<DerivedKunnethWitness<F>, ResolveError> {
    let opts = ResolveOptions::new(default_depth(n, n.hi()));
    theta_der_with(m, n, m.hi(), n.hi(), opts)
}

/// `θ^der` for `M` with cohomology in degrees `<= i0` and `N` with
/// cohomology in degrees `<= j0`.
pub fn theta_der_with<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    i0: Degree,
    j0: Degree,
    opts: ResolveOptions,
) -> Result<DerivedKunnethWitness<F>, ResolveError> {
    check_sides(m, n)?;
    check_cohomological_top(m, i0, "M")?;
    check_cohomological_top(n, j0, "N")?;
    let f = m.field();
    let t = i0 + j0;
    let h0 = h0_ring(m.algebra());
    let hm = cohomology(m, i0, &h0);
    let hn = cohomology(n, j0, &h0);
    let source = tensor_over_ring(f, &RingActions::cohomology_h0(&hm), &RingActions::cohomology_h0(&hn))
        .expect("both sides are H^0(A)-modules");

    let resolution = resolve_below(m, i0, opts)?;
    let (n_trunc, trunc) = smart_truncate(n, j0);
    let mut ev = resolution.check_invariants();

    let (hp, _, h_rho) = resolution.on_cohomology(i0);
    let htn = CohomologySpace::of(&n_trunc, j0);
    let h_trunc = CohomologySpace::of(n, j0)
        .class_map()
        .mul(&trunc.map(j0))
        .mul(htn.rep_map());
    let isos = invertible(&h_rho) && invertible(&h_trunc);
    ev.push(Check::from_bool(
        "H(rho) and H(truncation) are bijective at the tops",
        isos,
        format!("{:?}, {:?}", h_rho.shape(), h_trunc.shape()),
    ));
    if !isos {
        return Err(ResolveError::Invariant(
            "cohomology at the tops is not preserved".into(),
        ));
    }

    let sf = SemiFreeTensor::new(&resolution.p, &n_trunc);
    let target = CohomologySpace::of(&sf, t);
    ev.push(Check::from_bool(
        "dimensions agree",
        source.dim() == target.dim(),
        format!("source {}, target {}", source.dim(), target.dim()),
    ));

    // [x] ⊗ [y] -> [p_x ⊗ n_y] with H(ρ)[p_x] = [x] and H(ι)[n_y] = [y]
    let reps_p = hp.rep_map().mul(&inverse(&h_rho));
    let reps_n = htn.rep_map().mul(&inverse(&h_trunc));
    let mut cols = Vec::with_capacity(reps_p.cols() * reps_n.cols());
    for x in reps_p.column_vecs() {
        for y in reps_n.column_vecs() {
            cols.push(target.class_unchecked(&sf.pure(i0, &x, j0, &y)));
        }
    }
    let on_pairs = Matrix::from_cols(f, target.dim(), &cols);
    ev.push(Check::from_bool(
        "theta_der kills the balancing relations",
        on_pairs.mul(&source.space().reduced_relations().transpose()).is_zero(),
        "",
    ));
    let theta_der = on_pairs.mul(source.section());

    let genuine = m.hi() <= i0 && n.hi() <= j0;
    let (eta_h0, plain) = if genuine {
        let w = theta_with_tops(m, n, i0, j0)?;
        let mut cols = Vec::with_capacity(sf.dim(t));
        for (i, &g) in resolution.p.generator_degrees().iter().enumerate() {
            let inc = trunc.map(t - g);
            for y in inc.column_vecs() {
                cols.push(w.tensor.class_of_pure(g, &resolution.images[i], t - g, &y));
            }
        }
        let free = Matrix::from_cols(f, w.tensor.dim(t), &cols);
        let eta = w.target.class_map().mul(&free).mul(target.rep_map());
        (Some(eta), Some(w))
    } else {
        (None, None)
    };

    let mut w = DerivedKunnethWitness {
        i0,
        j0,
        resolution,
        n: n.clone(),
        n_trunc,
        trunc,
        source,
        target,
        h_rho,
        h_trunc,
        theta_der,
        eta_h0,
        plain,
        evidence: ev,
    };
    let bij = w.is_bijective();
    w.evidence.push(Check::from_bool(
        "theta_der is bijective",
        bij,
        format!("{} x {}", w.theta_der.rows(), w.theta_der.cols()),
    ));
    if w.plain.is_some() {
        let c = check_diagram_ii(&w);
        w.evidence.push(c);
    }
    Ok(w)
}

/// `H^k(P ⊗_A N)` for the resolution of `m` to the given depth; degrees below
/// the top are not governed by the top-degree isomorphism.
pub fn derived_tensor_cohomology<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    k: Degree,
    opts: ResolveOptions,
) -> Result<CohomologySpace<F>, ResolveError> {
    check_sides(m, n)?;
    let res = semifree_resolve(m, opts)?;
    Ok(CohomologySpace::of(&SemiFreeTensor::new(&res.p, n), k))
}

/// `H^{i0+j0}(M ⊗^L_A N)` with `i0 = hi(M)`, `j0 = hi(N)`, resolving to the
/// default depth.
pub fn derived_tensor_top<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<CohomologySpace<F>, ResolveError> {
    Ok(theta_der(m, n)?.target)
}

/// `H(η) ∘ θ^der = θ`.
pub fn check_diagram_ii<F: Field>(w: &DerivedKunnethWitness<F>) -> Check {
    let name = "H(eta) ∘ theta_der = theta";
    let (Some(comp), Some(plain)) = (w.composite(), w.plain.as_ref()) else {
        return Check::fail(name, Counterexample::new("M or N is not a complex below its top"));
    };
    if plain.source != w.source {
        return Check::fail(name, Counterexample::new("the two sources are presented differently"));
    }
    if comp == plain.theta {
        return Check::pass(name, format!("{} x {}", comp.rows(), comp.cols()));
    }
    let f = w.n.field();
    let c = (0..comp.cols())
        .find(|&c| comp.column(c) != plain.theta.column(c))
        .unwrap_or(0);
    Check::fail(
        name,
        Counterexample::new(format!("composites differ on source basis class {c}")).with_vector(f, &comp.column(c)),
    )
}

/// Two resolutions built from different seeds give the same `H(η) ∘ θ^der`.
pub fn check_resolution_independence<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    depth: usize,
    seeds: (u64, u64),
) -> Result<Check, ResolveError> {
    let name = "theta_der does not depend on the resolution";
    let opts = ResolveOptions::new(depth);
    let w1 = theta_der_with(m, n, m.hi(), n.hi(), opts.with_seed(Some(seeds.0)))?;
    let w2 = theta_der_with(m, n, m.hi(), n.hi(), opts.with_seed(Some(seeds.1)))?;
    let (Some(c1), Some(c2)) = (w1.composite(), w2.composite()) else {
        return Ok(Check::fail(
            name,
            Counterexample::new("composites need complexes below the tops"),
        ));
    };
    let detail = format!(
        "{} and {} generators, resolutions {}",
        w1.resolution.len(),
        w2.resolution.len(),
        if w1.resolution == w2.resolution {
            "equal"
        } else {
            "different"
        }
    );
    if c1 == c2 {
        Ok(Check::pass(name, detail))
    } else {
        Ok(Check::fail(name, Counterexample::new(detail)))
    }
}

/// For increasing depths: each resolution extends the previous one, the top
/// cohomology has constant dimension, and `θ^der` commutes with the induced
/// inclusions.
pub fn check_depth_stabilization<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    depths: &[usize],
    seed: Option<u64>,
) -> Result<Check, ResolveError> {
    let name = "theta_der is stable in the resolution depth";
    let ws = depths
        .iter()
        .map(|&d| theta_der_with(m, n, m.hi(), n.hi(), ResolveOptions::new(d).with_seed(seed)))
        .collect::<Result<Vec<_>, _>>()?;
    for (pair, ds) in ws.windows(2).zip(depths.windows(2)) {
        let (a, b) = (&pair[0], &pair[1]);
        let fail = |msg: alloc::string::String| Ok(Check::fail(name, Counterexample::new(msg)));
        if !a.resolution.is_prefix_of(&b.resolution) {
            return fail(format!("depth {} does not extend depth {}", ds[1], ds[0]));
        }
        if a.target.dim() != b.target.dim() {
            return fail(format!(
                "top cohomology has dimension {} at depth {} and {} at depth {}",
                a.target.dim(),
                ds[0],
                b.target.dim(),
                ds[1]
            ));
        }
        let (ta, tb) = (a.tensor(), b.tensor());
        let t = a.top_degree();
        let mut pad = Matrix::zeros(m.field(), tb.dim(t), ta.dim(t));
        for r in 0..ta.dim(t) {
            pad.set(r, r, m.field().one());
        }
        let incl = b.target.class_map().mul(&pad).mul(a.target.rep_map());
        if incl.mul(&a.theta_der) != b.theta_der {
            return fail(format!("theta_der changes between depths {} and {}", ds[0], ds[1]));
        }
    }
    let dims: Vec<usize> = ws.iter().map(|w| w.target.dim()).collect();
    Ok(Check::pass(name, format!("depths {depths:?}, dimensions {dims:?}")))
}

/// A strict morphism `F : P -> P'` and a homotopy `h : P -> M'` of degree
/// `-1` with `f ρ - ρ' F = d h + h d`, given on generators.
#[derive(Clone, Debug)]
pub struct Lift<F: Field> {
    pub images: Vec<Vec<F::Elem>>,
    pub homotopy: Vec<Vec<F::Elem>>,
}

/// Lifts `f : M -> M'` along the resolutions, generator by generator.
pub fn lift_morphism<F: Field>(
    f: &StrictMorphism<F>,
    res: &SemiFreeResolution<F>,
    res2: &SemiFreeResolution<F>,
) -> Result<Lift<F>, ResolveError> {
    let fld = res.field();
    let (p, p2, m2) = (&res.p, &res2.p, &res2.target);
    let alg = p.algebra();
    let mut images: Vec<Vec<F::Elem>> = Vec::with_capacity(p.len());
    let mut homotopy: Vec<Vec<F::Elem>> = Vec::with_capacity(p.len());
    for (i, &g) in p.generator_degrees().iter().enumerate() {
        let z = p.boundary(i);
        let mut fz = fld.zeros(p2.dim(g + 1));
        let mut hz = fld.zeros(m2.dim(g));
        for (j, &gj) in p.generator_degrees()[..i].iter().enumerate() {
            let e = g + 1 - gj;
            let da = alg.dim(e);
            if da == 0 {
                continue;
            }
            let off = p.offset(g + 1, j);
            let a = &z[off..off + da];
            if fld.vec_is_zero(a) {
                continue;
            }
            fz = fld.vec_add(&fz, &p2.act(gj, &images[j], e, a));
            hz = fld.vec_add(&hz, &m2.act(e, a, gj - 1, &homotopy[j]));
        }
        let rhs2 = fld.vec_sub(&f.map(g).mul_vec(&res.images[i]), &hz);
        // [d_P'  0   ] [x]   [F(z)         ]
        // [rho'  d_M'] [y] = [f rho(g) - h(z)]
        let (np, nm) = (p2.dim(g), m2.dim(g - 1));
        let top = p2.diff(g).hstack(&Matrix::zeros(fld, p2.dim(g + 1), nm));
        let bottom = res2.rho(g).hstack(&m2.diff(g - 1));
        let system = top.vstack(&bottom);
        let mut rhs = fz;
        rhs.extend(rhs2);
        let Some(sol) = system.solve(&rhs) else {
            return Err(ResolveError::Lift {
                generator: i,
                degree: g,
            });
        };
        images.push(sol[..np].to_vec());
        homotopy.push(sol[np..].to_vec());
    }
    Ok(Lift { images, homotopy })
}

/// `τg : τN -> τN'` in degree `k`.
fn truncated_map<F: Field>(
    g: &StrictMorphism<F>,
    inc: &StrictMorphism<F>,
    inc2: &StrictMorphism<F>,
    k: Degree,
) -> Matrix<F> {
    let rhs = g.map(k).mul(&inc.map(k));
    inc2.map(k)
        .solve_matrix(&rhs)
        .expect("a strict morphism preserves cocycles at the top")
}

/// Naturality of `θ^der` for strict `f : M -> M'` and `g : N -> N'`:
/// `θ^der' ∘ (H(f) ⊗ H(g)) = H(F ⊗ τg) ∘ θ^der` with `F` lifting `f`.
pub fn check_theta_der_functoriality<F: Field>(
    f: &StrictMorphism<F>,
    g: &StrictMorphism<F>,
    depth: Option<usize>,
) -> Result<Check, ResolveError> {
    let name = "theta_der is natural";
    let (m, m2, n, n2) = (f.source(), f.target(), g.source(), g.target());
    let i0 = m.hi().max(m2.hi());
    let j0 = n.hi().max(n2.hi());
    let d = depth.unwrap_or_else(|| default_depth(n, j0).max(default_depth(n2, j0)));
    let w = theta_der_with(m, n, i0, j0, ResolveOptions::new(d))?;
    let w2 = theta_der_with(m2, n2, i0, j0, ResolveOptions::new(d))?;
    let lift = lift_morphism(f, &w.resolution, &w2.resolution)?;

    let hf = f.on_cohomology(&CohomologySpace::of(m, i0), &CohomologySpace::of(m2, i0));
    let hg = g.on_cohomology(&CohomologySpace::of(n, j0), &CohomologySpace::of(n2, j0));
    let Some(on_source) = w.source.induced_map(&w2.source, &hf, &hg) else {
        return Ok(Check::fail(
            name,
            Counterexample::new("H(f) ⊗ H(g) does not respect the balancing relations"),
        ));
    };
    let t = i0 + j0;
    let (sf, sf2) = (w.tensor(), w2.tensor());
    let on_chains = sf.map_to(&sf2, &lift.images, |k| truncated_map(g, &w.trunc, &w2.trunc, k), t);
    let on_target = w2.target.class_map().mul(&on_chains).mul(w.target.rep_map());
    let lhs = w2.theta_der.mul(&on_source);
    let rhs = on_target.mul(&w.theta_der);
    if lhs == rhs {
        return Ok(Check::pass(name, format!("{} x {} square", lhs.rows(), lhs.cols())));
    }
    let c = (0..lhs.cols()).find(|&c| lhs.column(c) != rhs.column(c)).unwrap_or(0);
    Ok(Check::fail(
        name,
        Counterexample::new(format!("square differs on source basis class {c}")).with_vector(m.field(), &lhs.column(c)),
    ))
}
