//! Seeded DG modules and strict morphisms.
//!
//! A module is described by a [`ModuleRecipe`]: free generators over `A` (or
//! over `A^op` for left modules) with random cocycle boundaries, cut from
//! below, then divided by the DG submodules generated by a few random
//! elements. Every step either adds a generator whose boundary is a cocycle or
//! passes to a quotient by a DG submodule, so the result is always valid.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenError;
use crate::dg::ops::{generated_submodule, quotient_module, to_opposite};
use crate::dg::{mapping_cone, trim, DGAlgebra, DGModule, Degree, FreeRightModule, Side, StrictMorphism};
use crate::exactlin::{Field, Matrix};

/// Size limits for generated modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleBounds {
    pub max_per_degree_dim: usize,
    pub degree_span: usize,
}

impl Default for ModuleBounds {
    fn default() -> Self {
        ModuleBounds {
            max_per_degree_dim: 4,
            degree_span: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecipe {
    pub degree: Degree,
    /// seed for the random cocycle used as the boundary
    pub seed: u64,
    pub zero_boundary: bool,
}

/// Everything needed to rebuild a generated module deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRecipe {
    pub top: Degree,
    pub span: usize,
    /// sorted by decreasing degree
    pub generators: Vec<GeneratorRecipe>,
    /// elements (degree, seed) whose generated DG submodules are divided out
    pub quotients: Vec<(Degree, u64)>,
    /// replace the module by the cone of its identity (acyclic)
    pub cone_of_identity: bool,
}

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random combination of the rows of `basis`.
pub(crate) fn random_combination<F: Field, R: Rng + ?Sized>(f: F, basis: &Matrix<F>, rng: &mut R) -> Vec<F::Elem> {
    let mut v = f.zeros(basis.cols());
    for r in 0..basis.rows() {
        let c = f.sample(rng);
        f.axpy(&mut v, &c, basis.row(r));
    }
    v
}

impl ModuleRecipe {
    /// Samples a recipe with `1..=3` generators in `[top - span + 1, top]`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, top: Degree, bounds: ModuleBounds) -> Self {
        let span = bounds.degree_span.max(1);
        let count = rng.gen_range(1..=3);
        let mut generators: Vec<GeneratorRecipe> = (0..count)
            .map(|k| GeneratorRecipe {
                degree: if k == 0 {
                    top
                } else {
                    top - rng.gen_range(0..span as Degree)
                },
                seed: rng.gen(),
                zero_boundary: rng.gen_bool(0.25),
            })
            .collect();
        generators.sort_by_key(|g| core::cmp::Reverse(g.degree));
        let nq = rng.gen_range(0..=1);
        let quotients = (0..nq)
            .map(|_| (top - rng.gen_range(0..span as Degree), rng.gen()))
            .collect();
        ModuleRecipe {
            top,
            span,
            generators,
            quotients,
            cone_of_identity: false,
        }
    }

    /// Builds the module over `a` on the requested side.
    pub fn build<F: Field>(&self, a: &Arc<DGAlgebra<F>>, side: Side) -> Result<DGModule<F>, GenError> {
        let base = match side {
            Side::Right => a.clone(),
            Side::Left => Arc::new(a.opposite()),
        };
        let right = self.build_right(&base)?;
        Ok(match side {
            Side::Right => right,
            Side::Left => to_opposite(&right, a.clone()),
        })
    }

    fn build_right<F: Field>(&self, a: &Arc<DGAlgebra<F>>) -> Result<DGModule<F>, GenError> {
        let f = a.field();
        let lo_cut = self.top - self.span as Degree + 1 + self.cone_of_identity as Degree;
        let mut free = FreeRightModule::new(a.clone());
        for g in &self.generators {
            let mut rng = rng_from(g.seed);
            let boundary = if g.zero_boundary || free.dim(g.degree + 1) == 0 {
                f.zeros(free.dim(g.degree + 1))
            } else {
                let z = free.diff(g.degree + 1).kernel_basis();
                random_combination(f, &z, &mut rng)
            };
            free.push(g.degree, boundary);
        }
        let p = free.to_module(self.top);
        // divide out everything below the cut and the boundaries landing on it
        let (plo, _) = p.window();
        let mut spanning: Vec<(Degree, Matrix<F>)> = Vec::new();
        for i in plo..lo_cut {
            spanning.push((i, Matrix::identity(f, p.dim(i))));
        }
        if lo_cut > plo {
            spanning.push((lo_cut, p.diff(lo_cut - 1).transpose()));
        }
        let (mut m, _) = quotient_module(&p, &spanning).map_err(|e| GenError::Invalid(format!("{e}")))?;
        for &(d, seed) in &self.quotients {
            let mut rng = rng_from(seed);
            let x = f.sample_vec(&mut rng, m.dim(d));
            if f.vec_is_zero(&x) {
                continue;
            }
            let span = generated_submodule(&m, &[(d, x)]);
            m = quotient_module(&m, &span)
                .map_err(|e| GenError::Invalid(format!("{e}")))?
                .0;
        }
        let mut m = trim(&m);
        if self.cone_of_identity {
            m = trim(&mapping_cone(&StrictMorphism::identity(&m)));
        }
        Ok(m)
    }

    /// Simpler recipes, most aggressive first, for shrinking counterexamples.
    pub fn simplifications(&self) -> Vec<ModuleRecipe> {
        let mut out = Vec::new();
        if self.cone_of_identity {
            let mut r = self.clone();
            r.cone_of_identity = false;
            out.push(r);
        }
        for k in 0..self.quotients.len() {
            let mut r = self.clone();
            r.quotients.remove(k);
            out.push(r);
        }
        if self.generators.len() > 1 {
            for k in 0..self.generators.len() {
                let mut r = self.clone();
                r.generators.remove(k);
                out.push(r);
            }
        }
        for k in 0..self.generators.len() {
            if !self.generators[k].zero_boundary {
                let mut r = self.clone();
                r.generators[k].zero_boundary = true;
                out.push(r);
            }
        }
        out
    }
}

pub fn fits<F: Field>(m: &DGModule<F>, bounds: ModuleBounds) -> bool {
    let (lo, hi) = m.window();
    (lo..=hi).all(|i| m.dim(i) <= bounds.max_per_degree_dim)
}

/// Samples recipes until the module fits the bounds.
pub fn random_module_with_recipe<F: Field, R: Rng + ?Sized>(
    a: &Arc<DGAlgebra<F>>,
    side: Side,
    top: Degree,
    bounds: ModuleBounds,
    rng: &mut R,
) -> Result<(DGModule<F>, ModuleRecipe), GenError> {
    const BUDGET: usize = 64;
    for _ in 0..BUDGET {
        let recipe = ModuleRecipe::sample(rng, top, bounds);
        let m = recipe.build(a, side)?;
        if fits(&m, bounds) {
            return Ok((m, recipe));
        }
    }
    Err(GenError::BudgetExhausted {
        what: "random module within the size bounds",
        attempts: BUDGET,
    })
}

pub fn random_module<F: Field, R: Rng + ?Sized>(
    a: &Arc<DGAlgebra<F>>,
    side: Side,
    bounds: ModuleBounds,
    rng: &mut R,
) -> Result<DGModule<F>, GenError> {
    random_module_with_recipe(a, side, 0, bounds, rng).map(|(m, _)| m)
}

/// Basis of the space of strict morphisms `m -> m2`, each given by its
/// components on the union of the windows.
pub fn morphism_space<F: Field>(m: &DGModule<F>, m2: &DGModule<F>) -> Vec<StrictMorphism<F>> {
    let f = m.field();
    let alg = m.algebra().clone();
    let lo = m.lo().min(m2.lo());
    let hi = m.hi().max(m2.hi());
    // unknowns: entries of f^i, row-major, for i in lo..=hi
    let mut offsets = Vec::new();
    let mut n_unknowns = 0;
    for i in lo..=hi {
        offsets.push(n_unknowns);
        n_unknowns += m2.dim(i) * m.dim(i);
    }
    let constraints = |x: &[F::Elem]| -> Vec<F::Elem> {
        let comp = |i: Degree| -> Matrix<F> {
            if i < lo || i > hi {
                return Matrix::zeros(f, m2.dim(i), m.dim(i));
            }
            let o = offsets[(i - lo) as usize];
            let len = m2.dim(i) * m.dim(i);
            Matrix::from_vec(f, m2.dim(i), m.dim(i), x[o..o + len].to_vec())
        };
        let mut out = Vec::new();
        for i in lo..=hi {
            let c = m2.diff(i).mul(&comp(i)).sub(&comp(i + 1).mul(&m.diff(i)));
            out.extend_from_slice(c.data());
            for j in alg.degrees() {
                for k in 0..alg.dim(j) {
                    let e = alg.basis_vector(j, k);
                    let c = comp(i + j)
                        .mul(&m.act_by(j, &e, i))
                        .sub(&m2.act_by(j, &e, i).mul(&comp(i)));
                    out.extend_from_slice(c.data());
                }
            }
        }
        out
    };
    let cols: Vec<Vec<F::Elem>> = (0..n_unknowns)
        .map(|u| constraints(&f.unit_vector(n_unknowns, u)))
        .collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let system = Matrix::from_cols(f, rows, &cols);
    let kernel = if n_unknowns == 0 {
        Matrix::zeros(f, 0, 0)
    } else {
        system.kernel_basis()
    };
    (0..kernel.rows())
        .map(|r| {
            let x = kernel.row(r);
            StrictMorphism::new(m.clone(), m2.clone(), |i| {
                if i < lo || i > hi {
                    return Matrix::zeros(f, m2.dim(i), m.dim(i));
                }
                let o = offsets[(i - lo) as usize];
                let len = m2.dim(i) * m.dim(i);
                Matrix::from_vec(f, m2.dim(i), m.dim(i), x[o..o + len].to_vec())
            })
            .expect("component shapes")
        })
        .collect()
}

/// A random strict morphism `m -> m2`: a random combination of a basis of
/// the solution space of the chain-map and equivariance equations.
pub fn random_morphism<F: Field, R: Rng + ?Sized>(m: &DGModule<F>, m2: &DGModule<F>, rng: &mut R) -> StrictMorphism<F> {
    let f = m.field();
    let mut out = StrictMorphism::zero(m, m2).expect("zero morphism");
    for b in morphism_space(m, m2) {
        let c = f.sample(rng);
        let scaled = StrictMorphism::new(m.clone(), m2.clone(), |i| b.map(i).scale(&c)).expect("shape");
        out = out.add(&scaled).expect("same endpoints");
    }
    out
}

/// Random endpoint for a morphism out of `m`: `m` itself, `m ⊕ x` for a
/// random `x`, or a random quotient of `m`.
pub fn random_target<F: Field, R: Rng + ?Sized>(
    m: &DGModule<F>,
    bounds: ModuleBounds,
    rng: &mut R,
) -> Result<DGModule<F>, GenError> {
    let f = m.field();
    match rng.gen_range(0..3) {
        0 => Ok(m.clone()),
        1 => {
            let small = ModuleBounds {
                max_per_degree_dim: 2,
                degree_span: bounds.degree_span.min(2),
            };
            let a = m.algebra().clone();
            let (x, _) = random_module_with_recipe(&a, m.side(), m.hi(), small, rng)?;
            crate::dg::direct_sum(m, &x).map_err(|e| GenError::Invalid(format!("{e}")))
        }
        _ => {
            let d = m.hi();
            let x = f.sample_vec(rng, m.dim(d));
            let span = generated_submodule(m, &[(d, x)]);
            let q = quotient_module(m, &span)
                .map_err(|e| GenError::Invalid(format!("{e}")))?
                .0;
            Ok(q)
        }
    }
}

/// `A^0` modulo every basis element but the first, with `A^{<0}` acting by
/// zero: the residue field of an augmented ordinary algebra such as
/// `K[t]/(t^2)` with basis `1, t`.
pub fn residue_module<F: Field>(a: &Arc<DGAlgebra<F>>, side: Side) -> Result<DGModule<F>, GenError> {
    let f = a.field();
    let reg = DGModule::regular(a.clone(), side);
    let mut gens: Vec<(Degree, Vec<F::Elem>)> = (1..a.dim(0)).map(|k| (0, f.unit_vector(a.dim(0), k))).collect();
    for d in a.min_degree()..0 {
        gens.extend((0..a.dim(d)).map(|k| (d, f.unit_vector(a.dim(d), k))));
    }
    let span = generated_submodule(&reg, &gens);
    let (q, _) = quotient_module(&reg, &span).map_err(|e| GenError::Invalid(format!("{e}")))?;
    Ok(trim(&q))
}
