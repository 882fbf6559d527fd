use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ResolveError;
use crate::dg::{CohomologySpace, DGModule, Degree, FreeRightModule, Side, StrictMorphism};
use crate::evidence::{Check, Counterexample, Evidence};
use crate::exactlin::{in_column_space, Field, Matrix};

/// Why a generator was adjoined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// a cocycle mapping onto a cohomology class of `M`
    Cycle,
    /// kills a class in the kernel of `H(ρ)` one degree up
    Killer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTag {
    /// stage `s` adjoins generators in degree `sup H(M) - s`
    pub stage: usize,
    pub kind: GeneratorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    /// quasi-isomorphism is certified down to `hi(M) - depth`
    pub depth: usize,
    /// `None` takes the deterministic bases; a seed takes random
    /// combinations of them and adds contractible pairs
    pub seed: Option<u64>,
    /// maximal number of generators in one degree
    pub cap: usize,
}

impl ResolveOptions {
    pub fn new(depth: usize) -> Self {
        ResolveOptions {
            depth,
            seed: None,
            cap: 64,
        }
    }
    pub fn with_seed(self, seed: Option<u64>) -> Self {
        ResolveOptions { seed, ..self }
    }
}

/// `ρ : P -> M` with `P` semi-free on generators adjoined stage by stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiFreeResolution<F: Field> {
    pub target: DGModule<F>,
    pub p: FreeRightModule<F>,
    /// `ρ(g_i)`, in `M^{|g_i|}`
    pub images: Vec<Vec<F::Elem>>,
    pub tags: Vec<GeneratorTag>,
    pub top: Degree,
    pub floor: Degree,
    pub depth: usize,
    /// highest degree with `H(M) != 0`
    pub sup: Option<Degree>,
}

impl<F: Field> SemiFreeResolution<F> {
    pub fn field(&self) -> F {
        self.target.field()
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }
    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `ρ^k : P^k -> M^k`.
    pub fn rho(&self, k: Degree) -> Matrix<F> {
        rho_matrix(&self.p, &self.images, &self.target, k)
    }

    /// Generator indices of degree `k`.
    pub fn generators_in(&self, k: Degree) -> Vec<usize> {
        (0..self.p.len())
            .filter(|&i| self.p.generator_degrees()[i] == k)
            .collect()
    }

    /// `P` as a DG module on its full window (or the zero module).
    pub fn p_module(&self) -> DGModule<F> {
        self.p.to_module(self.top)
    }

    /// `ρ` as a strict morphism from [`Self::p_module`].
    pub fn rho_morphism(&self) -> StrictMorphism<F> {
        let p = self.p_module();
        StrictMorphism::new(p, self.target.clone(), |k| self.rho(k)).expect("rho shape")
    }

    /// `H^k(ρ)` in the deterministic bases.
    pub fn on_cohomology(&self, k: Degree) -> (CohomologySpace<F>, CohomologySpace<F>, Matrix<F>) {
        let hp = CohomologySpace::of(&self.p, k);
        let hm = CohomologySpace::of(&self.target, k);
        let map = hm.class_map().mul(&self.rho(k)).mul(hp.rep_map());
        (hp, hm, map)
    }

    /// Whether `self` is the first `self.len()` generators of `other`.
    pub fn is_prefix_of(&self, other: &SemiFreeResolution<F>) -> bool {
        let n = self.len();
        n <= other.len()
            && other.p.prefix(n) == self.p
            && other.images[..n] == self.images[..]
            && other.tags[..n] == self.tags[..]
    }

    /// Chain map, `A`-linearity by construction, `d² = 0`, and `H(ρ)`
    /// bijective above the floor and onto at the floor.
    pub fn check_invariants(&self) -> Evidence {
        let mut ev = Evidence::new();
        let hi = self.p.window().map_or(self.floor, |w| w.1);
        ev.push(Check::from_bool(
            "top generator degree is sup H(M)",
            self.p.window().map(|w| w.1) == self.sup,
            format!("sup H(M) = {:?}", self.sup),
        ));
        let mut chain = true;
        let mut square_zero = true;
        for k in self.floor - 1..=hi.max(self.top) {
            let d = self.p.diff(k);
            if self.target.diff(k).mul(&self.rho(k)) != self.rho(k + 1).mul(&d) {
                chain = false;
            }
            if !self.p.diff(k + 1).mul(&d).is_zero() {
                square_zero = false;
            }
        }
        ev.push(Check::from_bool("d² = 0 on P", square_zero, ""));
        ev.push(Check::from_bool("rho is a chain map", chain, ""));
        for k in self.floor..=self.top {
            let (_, hm, map) = self.on_cohomology(k);
            let rank = map.rank();
            let ok = if k == self.floor {
                rank == hm.dim()
            } else {
                rank == hm.dim() && rank == map.cols()
            };
            if !ok {
                ev.push(Check::fail(
                    "H(rho) is bijective above the floor and onto at the floor",
                    Counterexample::new(format!(
                        "degree {k}: rank {rank}, H(P) dim {}, H(M) dim {}",
                        map.cols(),
                        hm.dim()
                    )),
                ));
                return ev;
            }
        }
        ev.push(Check::pass(
            "H(rho) is bijective above the floor and onto at the floor",
            format!("degrees {}..={}", self.floor, self.top),
        ));
        ev
    }
}

fn rho_matrix<F: Field>(p: &FreeRightModule<F>, images: &[Vec<F::Elem>], m: &DGModule<F>, k: Degree) -> Matrix<F> {
    let f = m.field();
    let alg = p.algebra();
    let mut cols = Vec::with_capacity(p.dim(k));
    for (i, &g) in p.generator_degrees().iter().enumerate() {
        for x in 0..alg.dim(k - g) {
            cols.push(m.act(k - g, &alg.basis_vector(k - g, x), g, &images[i]));
        }
    }
    Matrix::from_cols(f, m.dim(k), &cols)
}

/// Random combinations of `basis` followed by `basis` itself.
fn candidates<F: Field>(f: F, basis: Vec<Vec<F::Elem>>, rng: &mut Option<ChaCha8Rng>) -> Vec<Vec<F::Elem>> {
    let Some(rng) = rng.as_mut() else {
        return basis;
    };
    let mut out = Vec::with_capacity(2 * basis.len());
    for _ in 0..basis.len() {
        let mut v = f.zeros(basis[0].len());
        for b in &basis {
            let c = f.sample(rng);
            f.axpy(&mut v, &c, b);
        }
        out.push(v);
    }
    out.extend(basis);
    out
}

struct Builder<'a, F: Field> {
    m: &'a DGModule<F>,
    p: FreeRightModule<F>,
    images: Vec<Vec<F::Elem>>,
    tags: Vec<GeneratorTag>,
    cap: usize,
}

impl<F: Field> Builder<'_, F> {
    fn push(
        &mut self,
        k: Degree,
        boundary: Vec<F::Elem>,
        image: Vec<F::Elem>,
        tag: GeneratorTag,
    ) -> Result<(), ResolveError> {
        if self.p.generator_degrees().iter().filter(|&&g| g == k).count() >= self.cap {
            return Err(ResolveError::GeneratorCap {
                degree: k,
                cap: self.cap,
            });
        }
        self.p.push(k, boundary);
        self.images.push(image);
        self.tags.push(tag);
        Ok(())
    }

    /// `v . A^0` in `P^k`.
    fn p_times_a0(&self, k: Degree, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let alg = self.p.algebra();
        (0..alg.dim(0))
            .map(|x| self.p.act(k, v, 0, &alg.basis_vector(0, x)))
            .collect()
    }

    fn m_times_a0(&self, k: Degree, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let alg = self.m.algebra();
        (0..alg.dim(0))
            .map(|x| self.m.act(0, &alg.basis_vector(0, x), k, v))
            .collect()
    }

    /// Adjoins generators of degree `k` killing the kernel of `H^{k+1}(ρ)`.
    fn kill(&mut self, k: Degree, stage: usize, rng: &mut Option<ChaCha8Rng>) -> Result<(), ResolveError> {
        let f = self.m.field();
        let dim_p1 = self.p.dim(k + 1);
        if dim_p1 == 0 {
            return Ok(());
        }
        let z = self.p.diff(k + 1).kernel_basis();
        if z.rows() == 0 {
            return Ok(());
        }
        let rho1 = rho_matrix(&self.p, &self.images, self.m, k + 1);
        let dm = self.m.diff(k);
        // rho(Z^T c) + d_M y = 0, so z = Z^T c is killed by a generator with image -y
        let system = rho1.mul(&z.transpose()).hstack(&dm);
        let nz = z.rows();
        let pairs: Vec<Vec<F::Elem>> = system
            .kernel_basis()
            .row_vecs()
            .into_iter()
            .map(|row| {
                let mut v = z.transpose().mul_vec(&row[..nz]);
                v.extend(f.vec_scale(&f.neg(&f.one()), &row[nz..]));
                v
            })
            .collect();
        if pairs.is_empty() {
            return Ok(());
        }
        let mut boundaries = self.p.diff(k);
        for c in candidates(f, pairs, rng) {
            let (zc, mc) = c.split_at(dim_p1);
            if in_column_space(&boundaries, zc) {
                continue;
            }
            let more = Matrix::from_cols(f, dim_p1, &self.p_times_a0(k + 1, zc));
            boundaries = boundaries.hstack(&more);
            let tag = GeneratorTag {
                stage,
                kind: GeneratorKind::Killer,
            };
            self.push(k, zc.to_vec(), mc.to_vec(), tag)?;
        }
        Ok(())
    }

    /// Adjoins cocycle generators of degree `k` making `H^k(ρ)` onto.
    fn surject(&mut self, k: Degree, stage: usize, rng: &mut Option<ChaCha8Rng>) -> Result<(), ResolveError> {
        let f = self.m.field();
        let hm = CohomologySpace::of(self.m, k);
        if hm.dim() == 0 {
            return Ok(());
        }
        let zk = self.p.diff(k).kernel_basis();
        let rho = rho_matrix(&self.p, &self.images, self.m, k);
        let mut image = rho.mul(&zk.transpose()).hstack(&self.m.diff(k - 1));
        let dim_p1 = self.p.dim(k + 1);
        for r in candidates(f, hm.rep_map().column_vecs(), rng) {
            if in_column_space(&image, &r) {
                continue;
            }
            let more = Matrix::from_cols(f, self.m.dim(k), &self.m_times_a0(k, &r));
            image = image.hstack(&more);
            let tag = GeneratorTag {
                stage,
                kind: GeneratorKind::Cycle,
            };
            self.push(k, f.zeros(dim_p1), r, tag)?;
        }
        Ok(())
    }
}

/// Highest degree with nonzero cohomology.
pub fn cohomological_sup<F: Field>(m: &DGModule<F>) -> Option<Degree> {
    (m.lo()..=m.hi()).rev().find(|&k| CohomologySpace::of(m, k).dim() > 0)
}

/// Semi-free resolution of a right module, certified down to
/// `hi(M) - depth`.
pub fn semifree_resolve<F: Field>(
    m: &DGModule<F>,
    opts: ResolveOptions,
) -> Result<SemiFreeResolution<F>, ResolveError> {
    if m.side() != Side::Right {
        return Err(ResolveError::NotRightModule);
    }
    if opts.depth == 0 {
        return Err(ResolveError::ZeroDepth);
    }
    let top = m.hi();
    let floor = top - opts.depth as Degree;
    let sup = cohomological_sup(m);
    let mut b = Builder {
        m,
        p: FreeRightModule::new(m.algebra().clone()),
        images: Vec::new(),
        tags: Vec::new(),
        cap: opts.cap,
    };
    let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
    if let Some(s) = sup {
        for k in (floor..=s).rev() {
            let stage = (s - k) as usize;
            b.kill(k, stage, &mut rng)?;
            b.surject(k, stage, &mut rng)?;
            if k > floor {
                if let Some(r) = rng.as_mut() {
                    // a cocycle with zero image, killed at the next stage
                    if rand::Rng::gen_bool(r, 0.5) {
                        let tag = GeneratorTag {
                            stage,
                            kind: GeneratorKind::Cycle,
                        };
                        let (d1, dk) = (b.p.dim(k + 1), m.dim(k));
                        b.push(k, m.field().zeros(d1), m.field().zeros(dk), tag)?;
                    }
                }
            }
        }
    }
    let r = SemiFreeResolution {
        target: m.clone(),
        p: b.p,
        images: b.images,
        tags: b.tags,
        top,
        floor,
        depth: opts.depth,
        sup,
    };
    if let Some(c) = r.check_invariants().first_failure() {
        return Err(ResolveError::Invariant(format!("{c}")));
    }
    Ok(r)
}
