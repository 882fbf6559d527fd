//! The shared JSON file format for algebras, modules, instances, corpora and
//! resolutions. See `docs/format.md` at the repository root for
//! the schema.
//!
//! Keys are written in a fixed order, matrices are nested arrays of rows of
//! element strings, and every element is in canonical form, so reading a
//! file and writing it back reproduces it byte for byte.

use std::sync::Arc;

use dgk_core::dg::{DGAlgebra, DGModule, Degree, FreeRightModule, Side};
use dgk_core::exactlin::{Field, FieldSpec, Matrix};
use dgk_core::genlab::{CorpusProfile, Instance};
use dgk_core::resolve::{GeneratorKind, GeneratorTag, SemiFreeResolution};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type MatrixJson = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub min_degree: Degree,
    /// `dims[k]` is the dimension in degree `min_degree + k`
    pub dims: Vec<usize>,
    pub unit: Vec<String>,
    /// out of each degree `min_degree..0`
    pub differentials: Vec<MatrixJson>,
    /// `products[i - min][j - min] : A^i ⊗ A^j -> A^{i+j}`
    pub products: Vec<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub side: SideJson,
    pub window: [Degree; 2],
    pub dims: Vec<usize>,
    /// out of each degree in the window
    pub differentials: Vec<MatrixJson>,
    /// `actions[i - lo][j - min(A)]`
    pub actions: Vec<Vec<MatrixJson>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideJson {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub label: String,
    pub algebra: AlgebraJson,
    pub m: ModuleJson,
    pub n: ModuleJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub degree: Degree,
    pub stage: usize,
    pub kind: KindJson,
    pub boundary: Vec<String>,
    pub image: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindJson {
    Cycle,
    Killer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionJson {
    pub depth: usize,
    pub top: Degree,
    pub floor: Degree,
    pub sup: Option<Degree>,
    pub generators: Vec<GeneratorJson>,
}

/// A corpus profile plus the suite settings. Missing suite keys take their
/// defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileJson {
    pub fields: Vec<String>,
    pub instance_count: usize,
    pub max_per_degree_dim: usize,
    pub degree_span: usize,
    pub seed: u64,
    pub family_mix: Vec<(String, u32)>,
    /// instances (from the start of each corpus) checked against `theta_der`
    #[serde(default = "default_derived")]
    pub derived_instances: usize,
    /// instances used for naturality, three morphism pairs each
    #[serde(default = "default_naturality")]
    pub naturality_instances: usize,
    /// boundary perturbations per instance
    #[serde(default = "default_perturbations")]
    pub perturbations: usize,
    #[serde(default)]
    pub inject_failure: bool,
}

fn default_derived() -> usize {
    100
}
fn default_naturality() -> usize {
    20
}
fn default_perturbations() -> usize {
    20
}

impl Default for ProfileJson {
    /// The default corpus over `F101` and `Q`.
    fn default() -> Self {
        let c = CorpusProfile::default();
        ProfileJson {
            fields: vec![FieldSpec::default_prime().to_string(), FieldSpec::Rationals.to_string()],
            instance_count: c.instance_count,
            max_per_degree_dim: c.max_per_degree_dim,
            degree_span: c.degree_span,
            seed: c.seed,
            family_mix: c.family_mix,
            derived_instances: default_derived(),
            naturality_instances: default_naturality(),
            perturbations: default_perturbations(),
            inject_failure: false,
        }
    }
}

impl ProfileJson {
    pub fn field_specs(&self) -> Result<Vec<FieldSpec>, CliError> {
        if self.fields.is_empty() {
            return Err(CliError::structural("profile.fields", "no fields given"));
        }
        self.fields
            .iter()
            .enumerate()
            .map(|(k, s)| {
                s.parse()
                    .map_err(|e| CliError::structural(format!("profile.fields[{k}]"), format!("{e}")))
            })
            .collect()
    }

    /// The generator profile for one field; rejects invalid settings.
    pub fn corpus(&self, field: FieldSpec) -> Result<CorpusProfile, CliError> {
        let p = CorpusProfile {
            field,
            max_per_degree_dim: self.max_per_degree_dim,
            degree_span: self.degree_span,
            instance_count: self.instance_count,
            seed: self.seed,
            family_mix: self.family_mix.clone(),
            inject_failure: self.inject_failure,
        };
        p.validate()
            .map_err(|e| CliError::structural("profile", format!("{e}")))?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub field: String,
    pub algebra: AlgebraJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub field: String,
    pub algebra: AlgebraJson,
    pub module: ModuleJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub field: String,
    pub label: String,
    pub algebra: AlgebraJson,
    pub m: ModuleJson,
    pub n: ModuleJson,
}

impl InstanceDoc {
    pub fn new(field: String, i: InstanceJson) -> Self {
        InstanceDoc {
            field,
            label: i.label,
            algebra: i.algebra,
            m: i.m,
            n: i.n,
        }
    }

    pub fn instance(&self) -> InstanceJson {
        InstanceJson {
            label: self.label.clone(),
            algebra: self.algebra.clone(),
            m: self.m.clone(),
            n: self.n.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDoc {
    pub field: String,
    pub profile: ProfileJson,
    pub instances: Vec<InstanceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDoc {
    pub field: String,
    pub algebra: AlgebraJson,
    pub module: ModuleJson,
    pub resolution: ResolutionJson,
}

/// A file: one of the five kinds, tagged by a leading `"kind"` key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Algebra(AlgebraDoc),
    Module(ModuleDoc),
    Instance(InstanceDoc),
    Corpus(CorpusDoc),
    Resolution(ResolutionDoc),
}

#[derive(Deserialize)]
struct Head {
    kind: String,
}

const KINDS: [&str; 5] = ["algebra", "module", "instance", "corpus", "resolution"];

impl Document {
    pub fn field(&self) -> Result<FieldSpec, CliError> {
        let s = match self {
            Document::Algebra(d) => &d.field,
            Document::Module(d) => &d.field,
            Document::Instance(d) => &d.field,
            Document::Corpus(d) => &d.field,
            Document::Resolution(d) => &d.field,
        };
        s.parse().map_err(|e| CliError::structural("field", format!("{e}")))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Module(_) => "module",
            Document::Instance(_) => "instance",
            Document::Corpus(_) => "corpus",
            Document::Resolution(_) => "resolution",
        }
    }

    /// Reads the kind first and then the body, so that errors point at the
    /// offending line and column.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        fn body<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
            serde_json::from_str(text)
                .map_err(|e| CliError::structural(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
        }
        let head: Head = body(text)?;
        Ok(match head.kind.as_str() {
            "algebra" => Document::Algebra(body(text)?),
            "module" => Document::Module(body(text)?),
            "instance" => Document::Instance(body(text)?),
            "corpus" => Document::Corpus(body(text)?),
            "resolution" => Document::Resolution(body(text)?),
            other => {
                return Err(CliError::structural(
                    "kind",
                    format!("unknown kind `{other}`, expected one of {}", KINDS.join(", ")),
                ))
            }
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

impl<'de> Deserialize<'de> for Document {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        let kind = v.get("kind").and_then(|k| k.as_str()).unwrap_or_default().to_string();
        let conv = |e: serde_json::Error| D::Error::custom(e.to_string());
        Ok(match kind.as_str() {
            "algebra" => Document::Algebra(serde_json::from_value(v).map_err(conv)?),
            "module" => Document::Module(serde_json::from_value(v).map_err(conv)?),
            "instance" => Document::Instance(serde_json::from_value(v).map_err(conv)?),
            "corpus" => Document::Corpus(serde_json::from_value(v).map_err(conv)?),
            "resolution" => Document::Resolution(serde_json::from_value(v).map_err(conv)?),
            other => return Err(D::Error::custom(format!("unknown kind `{other}`"))),
        })
    }
}

// ---- encoding ----

pub fn encode_matrix<F: Field>(m: &Matrix<F>) -> MatrixJson {
    let f = m.field();
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| f.format(x)).collect())
        .collect()
}

pub fn encode_vec<F: Field>(f: F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| f.format(x)).collect()
}

pub fn encode_algebra<F: Field>(a: &DGAlgebra<F>) -> AlgebraJson {
    let degs: Vec<Degree> = a.degrees().collect();
    AlgebraJson {
        min_degree: a.min_degree(),
        dims: a.dims().to_vec(),
        unit: encode_vec(a.field(), a.unit()),
        differentials: degs[..degs.len() - 1]
            .iter()
            .map(|&d| encode_matrix(&a.diff(d)))
            .collect(),
        products: degs
            .iter()
            .map(|&i| degs.iter().map(|&j| encode_matrix(&a.mult(i, j))).collect())
            .collect(),
    }
}

pub fn encode_module<F: Field>(m: &DGModule<F>) -> ModuleJson {
    let (lo, hi) = m.window();
    ModuleJson {
        side: match m.side() {
            Side::Left => SideJson::Left,
            Side::Right => SideJson::Right,
        },
        window: [lo, hi],
        dims: m.dims().to_vec(),
        differentials: (lo..=hi).map(|i| encode_matrix(&m.diff(i))).collect(),
        actions: (lo..=hi)
            .map(|i| {
                m.algebra()
                    .degrees()
                    .map(|j| encode_matrix(&m.action_table(i, j)))
                    .collect()
            })
            .collect(),
    }
}

pub fn encode_instance<F: Field>(label: impl Into<String>, m: &DGModule<F>, n: &DGModule<F>) -> InstanceJson {
    InstanceJson {
        label: label.into(),
        algebra: encode_algebra(m.algebra()),
        m: encode_module(m),
        n: encode_module(n),
    }
}

pub fn instance_document<F: Field>(inst: &Instance<F>) -> Document {
    Document::Instance(InstanceDoc::new(
        inst.m.field().spec().to_string(),
        encode_instance(instance_label(inst), &inst.m, &inst.n),
    ))
}

/// `F101#12 (exterior)`
pub fn instance_label<F: Field>(inst: &Instance<F>) -> String {
    format!("{}{}", inst.m.field().spec(), inst.label())
}

pub fn corpus_document<F: Field>(field: F, profile: &ProfileJson, instances: &[Instance<F>]) -> Document {
    Document::Corpus(CorpusDoc {
        field: field.spec().to_string(),
        profile: profile.clone(),
        instances: instances
            .iter()
            .map(|i| encode_instance(instance_label(i), &i.m, &i.n))
            .collect(),
    })
}

pub fn resolution_document<F: Field>(r: &SemiFreeResolution<F>) -> Document {
    let f = r.field();
    let degs = r.p.generator_degrees();
    Document::Resolution(ResolutionDoc {
        field: f.spec().to_string(),
        algebra: encode_algebra(r.target.algebra()),
        module: encode_module(&r.target),
        resolution: ResolutionJson {
            depth: r.depth,
            top: r.top,
            floor: r.floor,
            sup: r.sup,
            generators: (0..r.len())
                .map(|i| GeneratorJson {
                    degree: degs[i],
                    stage: r.tags[i].stage,
                    kind: match r.tags[i].kind {
                        GeneratorKind::Cycle => KindJson::Cycle,
                        GeneratorKind::Killer => KindJson::Killer,
                    },
                    boundary: encode_vec(f, &r.p.boundary(i)),
                    image: encode_vec(f, &r.images[i]),
                })
                .collect(),
        },
    })
}

// ---- decoding ----

pub fn decode_vec<F: Field>(f: F, at: &str, v: &[String], len: usize) -> Result<Vec<F::Elem>, CliError> {
    if v.len() != len {
        return Err(CliError::structural(
            at,
            format!("expected {len} entries, found {}", v.len()),
        ));
    }
    v.iter()
        .enumerate()
        .map(|(k, s)| {
            f.parse(s)
                .map_err(|e| CliError::structural(format!("{at}[{k}]"), format!("{e}")))
        })
        .collect()
}

pub fn decode_matrix<F: Field>(f: F, at: &str, m: &MatrixJson, shape: (usize, usize)) -> Result<Matrix<F>, CliError> {
    let (rows, cols) = shape;
    if m.len() != rows {
        return Err(CliError::structural(
            at,
            format!("expected a {rows} x {cols} matrix, found {} rows", m.len()),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in m.iter().enumerate() {
        data.extend(decode_vec(f, &format!("{at}[{r}]"), row, cols)?);
    }
    Ok(Matrix::from_vec(f, rows, cols, data))
}

fn table<'a, T>(at: &str, v: &'a [T], k: usize) -> Result<&'a T, CliError> {
    v.get(k)
        .ok_or_else(|| CliError::structural(at, format!("expected at least {} entries, found {}", k + 1, v.len())))
}

fn check_len<T>(at: &str, v: &[T], len: usize) -> Result<(), CliError> {
    if v.len() == len {
        Ok(())
    } else {
        Err(CliError::structural(
            at,
            format!("expected {len} entries, found {}", v.len()),
        ))
    }
}

pub fn decode_algebra<F: Field>(f: F, at: &str, a: &AlgebraJson) -> Result<DGAlgebra<F>, CliError> {
    let min = a.min_degree;
    if min > 0 {
        return Err(CliError::structural(format!("{at}.min_degree"), "must be <= 0"));
    }
    let span = (1 - min) as usize;
    check_len(&format!("{at}.dims"), &a.dims, span)?;
    let dim = |d: Degree| {
        if d < min || d > 0 {
            0
        } else {
            a.dims[(d - min) as usize]
        }
    };
    check_len(&format!("{at}.differentials"), &a.differentials, span - 1)?;
    let diff = (0..span - 1)
        .map(|k| {
            let d = min + k as Degree;
            decode_matrix(
                f,
                &format!("{at}.differentials[{k}]"),
                &a.differentials[k],
                (dim(d + 1), dim(d)),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_len(&format!("{at}.products"), &a.products, span)?;
    let mut mult = Vec::with_capacity(span * span);
    for (x, row) in a.products.iter().enumerate() {
        check_len(&format!("{at}.products[{x}]"), row, span)?;
        for (y, m) in row.iter().enumerate() {
            let (i, j) = (min + x as Degree, min + y as Degree);
            mult.push(decode_matrix(
                f,
                &format!("{at}.products[{x}][{y}]"),
                m,
                (dim(i + j), dim(i) * dim(j)),
            )?);
        }
    }
    let unit = decode_vec(f, &format!("{at}.unit"), &a.unit, dim(0))?;
    DGAlgebra::new(f, min, a.dims.clone(), diff, mult, unit).map_err(|e| CliError::structural(at, e.0))
}

pub fn decode_module<F: Field>(at: &str, alg: &Arc<DGAlgebra<F>>, m: &ModuleJson) -> Result<DGModule<F>, CliError> {
    let f = alg.field();
    let [lo, hi] = m.window;
    if lo > hi {
        return Err(CliError::structural(
            format!("{at}.window"),
            format!("empty window [{lo}, {hi}]"),
        ));
    }
    let width = (hi - lo + 1) as usize;
    check_len(&format!("{at}.dims"), &m.dims, width)?;
    let dim = |i: Degree| if i < lo || i > hi { 0 } else { m.dims[(i - lo) as usize] };
    check_len(&format!("{at}.differentials"), &m.differentials, width)?;
    let diff = (lo..=hi)
        .map(|i| {
            let k = (i - lo) as usize;
            decode_matrix(
                f,
                &format!("{at}.differentials[{k}]"),
                &m.differentials[k],
                (dim(i + 1), dim(i)),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_len(&format!("{at}.actions"), &m.actions, width)?;
    let mut action = Vec::new();
    for i in lo..=hi {
        let k = (i - lo) as usize;
        let row = &m.actions[k];
        check_len(&format!("{at}.actions[{k}]"), row, alg.dims().len())?;
        for j in alg.degrees() {
            let x = (j - alg.min_degree()) as usize;
            let t = table(&format!("{at}.actions[{k}]"), row, x)?;
            action.push(decode_matrix(
                f,
                &format!("{at}.actions[{k}][{x}]"),
                t,
                (dim(i + j), dim(i) * alg.dim(j)),
            )?);
        }
    }
    let side = match m.side {
        SideJson::Left => Side::Left,
        SideJson::Right => Side::Right,
    };
    DGModule::new(side, alg.clone(), (lo, hi), m.dims.clone(), diff, action).map_err(|e| CliError::structural(at, e.0))
}

/// A decoded pair `(label, M, N)`.
pub type Pair<F> = (String, DGModule<F>, DGModule<F>);

pub fn decode_instance<F: Field>(f: F, at: &str, inst: &InstanceJson) -> Result<Pair<F>, CliError> {
    let alg = Arc::new(decode_algebra(f, &format!("{at}.algebra"), &inst.algebra)?);
    let m = decode_module(&format!("{at}.m"), &alg, &inst.m)?;
    let n = decode_module(&format!("{at}.n"), &alg, &inst.n)?;
    Ok((inst.label.clone(), m, n))
}

pub fn decode_resolution<F: Field>(
    at: &str,
    module: &DGModule<F>,
    r: &ResolutionJson,
) -> Result<SemiFreeResolution<F>, CliError> {
    let f = module.field();
    let mut p = FreeRightModule::new(module.algebra().clone());
    let mut images = Vec::new();
    let mut tags = Vec::new();
    for (k, g) in r.generators.iter().enumerate() {
        let here = format!("{at}.generators[{k}]");
        let b = decode_vec(f, &format!("{here}.boundary"), &g.boundary, p.dim(g.degree + 1))?;
        p.push(g.degree, b);
        images.push(decode_vec(f, &format!("{here}.image"), &g.image, module.dim(g.degree))?);
        tags.push(GeneratorTag {
            stage: g.stage,
            kind: match g.kind {
                KindJson::Cycle => GeneratorKind::Cycle,
                KindJson::Killer => GeneratorKind::Killer,
            },
        });
    }
    Ok(SemiFreeResolution {
        target: module.clone(),
        p,
        images,
        tags,
        top: r.top,
        floor: r.floor,
        depth: r.depth,
        sup: r.sup,
    })
}
