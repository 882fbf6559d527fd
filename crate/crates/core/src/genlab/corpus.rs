use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebras::{algebra_family, ALGEBRA_FAMILIES};
use super::modules::{fits, random_module_with_recipe, ModuleBounds, ModuleRecipe};
use super::GenError;
use crate::dg::{CohomologySpace, DGAlgebra, DGModule, Side};
use crate::exactlin::{Field, FieldSpec};

/// Seed of the default corpus.
pub const DEFAULT_SEED: u64 = 0x6b75_6e6e_6574_6831;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusProfile {
    pub field: FieldSpec,
    pub max_per_degree_dim: usize,
    pub degree_span: usize,
    pub instance_count: usize,
    pub seed: u64,
    /// weights over [`ALGEBRA_FAMILIES`]
    pub family_mix: Vec<(String, u32)>,
    /// deliberately corrupt one verification per instance, to exercise the
    /// failure path and the shrinker
    pub inject_failure: bool,
}

impl Default for CorpusProfile {
    fn default() -> Self {
        CorpusProfile {
            field: FieldSpec::default_prime(),
            max_per_degree_dim: 4,
            degree_span: 4,
            instance_count: 200,
            seed: DEFAULT_SEED,
            family_mix: ALGEBRA_FAMILIES.iter().map(|s| (s.to_string(), 1)).collect(),
            inject_failure: false,
        }
    }
}

impl CorpusProfile {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |s: String| Err(GenError::BadProfile(s));
        if self.instance_count == 0 {
            return bad("instance_count must be positive".into());
        }
        if self.max_per_degree_dim == 0 || self.degree_span == 0 {
            return bad("max_per_degree_dim and degree_span must be positive".into());
        }
        if self.family_mix.iter().all(|(_, w)| *w == 0) {
            return bad("family weights are all zero".into());
        }
        for (name, _) in &self.family_mix {
            if !ALGEBRA_FAMILIES.contains(&name.as_str()) {
                return bad(format!("unknown family `{name}`"));
            }
        }
        self.field.check().map_err(|e| GenError::BadProfile(format!("{e}")))
    }

    pub fn bounds(&self) -> ModuleBounds {
        ModuleBounds {
            max_per_degree_dim: self.max_per_degree_dim,
            degree_span: self.degree_span,
        }
    }

    fn pick_family<R: Rng + ?Sized>(&self, rng: &mut R) -> &str {
        let total: u64 = self.family_mix.iter().map(|(_, w)| *w as u64).sum();
        let mut t = rng.gen_range(0..total);
        for (name, w) in &self.family_mix {
            if t < *w as u64 {
                return name;
            }
            t -= *w as u64;
        }
        unreachable!("weights sum to the total")
    }
}

/// Independent random stream for instance `index` of a corpus.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One generated pair: a right module `m` and a left module `n` over the same
/// algebra.
#[derive(Clone, Debug)]
pub struct Instance<F: Field> {
    pub index: usize,
    pub family: String,
    pub algebra: Arc<DGAlgebra<F>>,
    pub m: DGModule<F>,
    pub n: DGModule<F>,
    pub m_recipe: ModuleRecipe,
    pub n_recipe: ModuleRecipe,
}

impl<F: Field> Instance<F> {
    pub fn label(&self) -> String {
        format!("#{} ({})", self.index, self.family)
    }

    pub fn from_recipes(
        index: usize,
        field: F,
        family: &str,
        m_recipe: ModuleRecipe,
        n_recipe: ModuleRecipe,
    ) -> Result<Self, GenError> {
        let algebra = Arc::new(algebra_family(field, family)?);
        let m = m_recipe.build(&algebra, Side::Right)?;
        let n = n_recipe.build(&algebra, Side::Left)?;
        Ok(Instance {
            index,
            family: family.to_string(),
            algebra,
            m,
            n,
            m_recipe,
            n_recipe,
        })
    }

    /// Greedily simplifies the recipes while `still_fails` holds.
    pub fn shrink(&self, field: F, mut still_fails: impl FnMut(&Instance<F>) -> bool) -> Instance<F> {
        let mut best = self.clone();
        loop {
            let mut improved = false;
            let candidates: Vec<(ModuleRecipe, ModuleRecipe)> = best
                .m_recipe
                .simplifications()
                .into_iter()
                .map(|r| (r, best.n_recipe.clone()))
                .chain(
                    best.n_recipe
                        .simplifications()
                        .into_iter()
                        .map(|r| (best.m_recipe.clone(), r)),
                )
                .collect();
            for (mr, nr) in candidates {
                if let Ok(c) = Instance::from_recipes(best.index, field, &best.family, mr, nr) {
                    if still_fails(&c) {
                        best = c;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                return best;
            }
        }
    }
}

/// Share of modules kept even though their top cohomology vanishes.
const KEEP_TRIVIAL: f64 = 0.15;

/// A random module, redrawn a few times while its top cohomology vanishes.
fn sample_module<F: Field, R: Rng + ?Sized>(
    a: &Arc<DGAlgebra<F>>,
    side: Side,
    bounds: ModuleBounds,
    rng: &mut R,
) -> Result<(DGModule<F>, ModuleRecipe), GenError> {
    let mut last = sample_module_once(a, side, bounds, rng)?;
    for _ in 0..8 {
        let m = &last.0;
        if CohomologySpace::of(m, m.hi()).dim() > 0 || rng.gen_bool(KEEP_TRIVIAL) {
            break;
        }
        last = sample_module_once(a, side, bounds, rng)?;
    }
    Ok(last)
}

fn sample_module_once<F: Field, R: Rng + ?Sized>(
    a: &Arc<DGAlgebra<F>>,
    side: Side,
    bounds: ModuleBounds,
    rng: &mut R,
) -> Result<(DGModule<F>, ModuleRecipe), GenError> {
    let top = rng.gen_range(-1..=2);
    let (m, mut recipe) = random_module_with_recipe(a, side, top, bounds, rng)?;
    if rng.gen_bool(0.1) {
        recipe.cone_of_identity = true;
        let cone = recipe.build(a, side)?;
        if fits(&cone, bounds) {
            return Ok((cone, recipe));
        }
        recipe.cone_of_identity = false;
    }
    Ok((m, recipe))
}

pub fn generate_instance<F: Field>(profile: &CorpusProfile, field: F, index: usize) -> Result<Instance<F>, GenError> {
    let mut rng = instance_rng(profile.seed, index as u64);
    let family = profile.pick_family(&mut rng).to_string();
    let algebra = Arc::new(algebra_family(field, &family)?);
    let bounds = profile.bounds();
    let (m, m_recipe) = sample_module(&algebra, Side::Right, bounds, &mut rng)?;
    let (n, n_recipe) = sample_module(&algebra, Side::Left, bounds, &mut rng)?;
    Ok(Instance {
        index,
        family,
        algebra,
        m,
        n,
        m_recipe,
        n_recipe,
    })
}

/// The instances of a profile, in index order. `field` must match
/// `profile.field`.
pub fn generate_corpus<F: Field>(profile: &CorpusProfile, field: F) -> Result<Vec<Instance<F>>, GenError> {
    profile.validate()?;
    if field.spec() != profile.field {
        return Err(GenError::BadProfile(format!(
            "profile asks for {} but generation runs over {}",
            profile.field,
            field.spec()
        )));
    }
    (0..profile.instance_count)
        .map(|i| generate_instance(profile, field, i))
        .collect()
}
