use alloc::vec::Vec;
use core::fmt;

use crate::dg::{same_algebra, Cochain, DGModule, Degree, Side, StrictMorphism};
use crate::exactlin::{Field, Matrix, QuotientSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorError {
    /// the first factor must be a right module and the second a left module
    SideMismatch {
        left: Side,
        right: Side,
    },
    AlgebraMismatch,
    /// the free differential does not preserve the relation span
    DoesNotDescend {
        degree: Degree,
    },
    /// a module reaching above degree 0 where top degree 0 is required
    NotTranslated {
        hi: Degree,
    },
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::SideMismatch { left, right } => write!(
                f,
                "tensor product needs a right module and a left module, got {left:?} and {right:?}"
            ),
            TensorError::AlgebraMismatch => f.write_str("tensor factors are modules over different algebras"),
            TensorError::DoesNotDescend { degree } => {
                write!(f, "differential does not descend to the quotient in degree {degree}")
            }
            TensorError::NotTranslated { hi } => write!(f, "module reaches degree {hi} > 0"),
        }
    }
}

/// The summand `M^p ⊗ N^q` inside the free degree `p + q` space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorBlock {
    pub left_degree: Degree,
    pub right_degree: Degree,
    pub offset: usize,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl TensorBlock {
    pub fn len(&self) -> usize {
        self.left_dim * self.right_dim
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Piece<F: Field> {
    blocks: Vec<TensorBlock>,
    free_dim: usize,
    space: QuotientSpace<F>,
}

impl<F: Field> Piece<F> {
    fn block(&self, p: Degree) -> Option<&TensorBlock> {
        self.blocks.iter().find(|b| b.left_degree == p)
    }
}

/// `M ⊗_A N` for a right module `M` and a left module `N`, presented in each
/// degree `n` as the quotient of `⊕_{p+q=n} M^p ⊗ N^q` (blocks ordered by `p`,
/// then the `M` index, then the `N` index) by the span of
/// `(m.a) ⊗ n' - m ⊗ (a.n')` over basis triples.
///
/// The differential is `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`. Degrees below
/// `from` are not built; cohomology is exact in degrees above `from` (and at
/// `from` when nothing lies below it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorComplex<F: Field> {
    left: DGModule<F>,
    right: DGModule<F>,
    from: Degree,
    hi: Degree,
    pieces: Vec<Piece<F>>,
    /// `diffs[n - from]`: `T^n -> T^{n+1}`
    diffs: Vec<Matrix<F>>,
}

/// Degree range `[lo, hi]` in which `M ⊗_A N` can be nonzero.
pub fn natural_window<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> (Degree, Degree) {
    (m.lo() + n.lo(), m.hi() + n.hi())
}

pub fn tensor_over_algebra<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<TensorComplex<F>, TensorError> {
    let (lo, _) = natural_window(m, n);
    tensor_over_algebra_from(m, n, lo)
}

/// Builds only the degrees `from..=hi`.
pub fn tensor_over_algebra_from<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    from: Degree,
) -> Result<TensorComplex<F>, TensorError> {
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(TensorError::SideMismatch {
            left: m.side(),
            right: n.side(),
        });
    }
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(TensorError::AlgebraMismatch);
    }
    let (lo, hi) = natural_window(m, n);
    let from = from.max(lo).min(hi + 1);
    let pieces: Vec<Piece<F>> = (from..=hi).map(|d| build_piece(m, n, d)).collect();
    let mut t = TensorComplex {
        left: m.clone(),
        right: n.clone(),
        from,
        hi,
        pieces,
        diffs: Vec::new(),
    };
    let mut diffs = Vec::with_capacity(t.pieces.len());
    for d in from..=hi {
        let free = t.free_differential(d);
        let src = &t.pieces[(d - from) as usize].space;
        let tgt_proj = t.projection(d + 1);
        let rel_t = src.reduced_relations().transpose();
        if !tgt_proj.mul(&free).mul(&rel_t).is_zero() {
            return Err(TensorError::DoesNotDescend { degree: d });
        }
        diffs.push(tgt_proj.mul(&free).mul(src.section()));
    }
    t.diffs = diffs;
    Ok(t)
}

fn blocks_in_degree<F: Field>(m: &DGModule<F>, n: &DGModule<F>, d: Degree) -> (Vec<TensorBlock>, usize) {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for p in m.lo()..=m.hi() {
        let q = d - p;
        let (dm, dn) = (m.dim(p), n.dim(q));
        if dm == 0 || dn == 0 {
            continue;
        }
        blocks.push(TensorBlock {
            left_degree: p,
            right_degree: q,
            offset,
            left_dim: dm,
            right_dim: dn,
        });
        offset += dm * dn;
    }
    (blocks, offset)
}

fn build_piece<F: Field>(m: &DGModule<F>, n: &DGModule<F>, d: Degree) -> Piece<F> {
    let f = m.field();
    let alg = m.algebra();
    let (blocks, free_dim) = blocks_in_degree(m, n, d);
    let find = |p: Degree| blocks.iter().find(|b| b.left_degree == p);
    let mut data: Vec<F::Elem> = Vec::new();
    let mut rows = 0;
    // relation vectors indexed by (x in M^p, a in A^j, y in N^q), p + j + q = d
    for p in m.lo()..=m.hi() {
        for j in alg.degrees() {
            let q = d - p - j;
            let (dm, dn) = (m.dim(p), n.dim(q));
            if dm == 0 || dn == 0 {
                continue;
            }
            let b1 = find(p + j);
            let b2 = find(p);
            if b1.is_none() && b2.is_none() {
                continue;
            }
            for k in 0..alg.dim(j) {
                let ek = alg.basis_vector(j, k);
                let r_act = b1.map(|_| m.act_by(j, &ek, p));
                let l_act = b2.map(|_| n.act_by(j, &ek, q));
                for x in 0..dm {
                    for y in 0..dn {
                        let mut row = f.zeros(free_dim);
                        if let (Some(b), Some(r)) = (b1, &r_act) {
                            for x2 in 0..b.left_dim {
                                let c = r.get(x2, x);
                                if !f.is_zero(c) {
                                    row[b.offset + x2 * dn + y] = c.clone();
                                }
                            }
                        }
                        if let (Some(b), Some(l)) = (b2, &l_act) {
                            for y2 in 0..b.right_dim {
                                let c = l.get(y2, y);
                                if !f.is_zero(c) {
                                    let idx = b.offset + x * b.right_dim + y2;
                                    row[idx] = f.sub(&row[idx], c);
                                }
                            }
                        }
                        if !f.vec_is_zero(&row) {
                            data.extend(row);
                            rows += 1;
                        }
                    }
                }
            }
        }
    }
    let rel = Matrix::from_vec(f, rows, free_dim, data);
    let space = QuotientSpace::new(free_dim, rel).expect("relation width");
    Piece {
        blocks,
        free_dim,
        space,
    }
}

impl<F: Field> TensorComplex<F> {
    pub fn field(&self) -> F {
        self.left.field()
    }
    pub fn left(&self) -> &DGModule<F> {
        &self.left
    }
    pub fn right(&self) -> &DGModule<F> {
        &self.right
    }
    /// The degrees that were built.
    pub fn degrees(&self) -> core::ops::RangeInclusive<Degree> {
        self.from..=self.hi
    }
    pub fn hi(&self) -> Degree {
        self.hi
    }

    fn piece(&self, d: Degree) -> Option<&Piece<F>> {
        if d < self.from || d > self.hi {
            None
        } else {
            Some(&self.pieces[(d - self.from) as usize])
        }
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.piece(d).map_or(0, |p| p.space.dim())
    }
    pub fn free_dim(&self, d: Degree) -> usize {
        self.piece(d).map_or(0, |p| p.free_dim)
    }
    pub fn blocks(&self, d: Degree) -> &[TensorBlock] {
        self.piece(d).map_or(&[], |p| &p.blocks)
    }
    pub fn block(&self, p: Degree, q: Degree) -> Option<&TensorBlock> {
        self.piece(p + q).and_then(|x| x.block(p))
    }
    pub fn space(&self, d: Degree) -> Option<&QuotientSpace<F>> {
        self.piece(d).map(|p| &p.space)
    }

    /// `dim T^d x free_dim(d)`
    pub fn projection(&self, d: Degree) -> Matrix<F> {
        match self.piece(d) {
            Some(p) => p.space.projection().clone(),
            None => Matrix::zeros(self.field(), 0, 0),
        }
    }
    pub fn section(&self, d: Degree) -> Matrix<F> {
        match self.piece(d) {
            Some(p) => p.space.section().clone(),
            None => Matrix::zeros(self.field(), 0, 0),
        }
    }

    /// Relation rows of the degree-`d` presentation.
    pub fn relations(&self, d: Degree) -> Matrix<F> {
        match self.piece(d) {
            Some(p) => p.space.relations().clone(),
            None => Matrix::zeros(self.field(), 0, 0),
        }
    }

    /// `x ⊗ y` in the free space of degree `p + q`.
    pub fn free_vector(&self, p: Degree, x: &[F::Elem], q: Degree, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = f.zeros(self.free_dim(p + q));
        if let Some(b) = self.block(p, q) {
            for (i, xi) in x.iter().enumerate() {
                if f.is_zero(xi) {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    out[b.offset + i * b.right_dim + j] = f.mul(xi, yj);
                }
            }
        }
        out
    }

    /// Image of `x ⊗ y` in `T^{p+q}`.
    pub fn class_of_pure(&self, p: Degree, x: &[F::Elem], q: Degree, y: &[F::Elem]) -> Vec<F::Elem> {
        match self.piece(p + q) {
            Some(pc) => pc.space.project(&self.free_vector(p, x, q, y)),
            None => Vec::new(),
        }
    }

    /// Matrix of `x ⊗ y -> (x ⊗ y) in T^{p+q}` on `M^p ⊗ N^q` (Kronecker order).
    pub fn block_projection(&self, p: Degree, q: Degree) -> Matrix<F> {
        let f = self.field();
        let d = p + q;
        let rows = self.dim(d);
        let len = self.left.dim(p) * self.right.dim(q);
        match (self.piece(d), self.block(p, q)) {
            (Some(pc), Some(b)) => pc.space.projection().block(0, b.offset, rows, b.len()),
            _ => Matrix::zeros(f, rows, len),
        }
    }

    /// Differential on the free spaces, `free_dim(d+1) x free_dim(d)`.
    pub fn free_differential(&self, d: Degree) -> Matrix<F> {
        let f = self.field();
        let (m, n) = (&self.left, &self.right);
        let src_blocks = self.blocks(d).to_vec();
        let (tgt_blocks, tgt_dim) = if self.piece(d + 1).is_some() {
            (self.blocks(d + 1).to_vec(), self.free_dim(d + 1))
        } else {
            blocks_in_degree(m, n, d + 1)
        };
        let mut out = Matrix::zeros(f, tgt_dim, self.free_dim(d));
        let find = |p: Degree| tgt_blocks.iter().find(|b| b.left_degree == p);
        for b in &src_blocks {
            let (p, q) = (b.left_degree, b.right_degree);
            if let Some(t) = find(p + 1) {
                let k = m.diff(p).kron(&Matrix::identity(f, b.right_dim));
                out.set_block(t.offset, b.offset, &k);
            }
            if let Some(t) = find(p) {
                let k = Matrix::identity(f, b.left_dim).kron(&n.diff(q)).scale(&f.sign(p));
                out.set_block(t.offset, b.offset, &k);
            }
        }
        out
    }

    /// The induced differential `T^d -> T^{d+1}`.
    pub fn diff(&self, d: Degree) -> Matrix<F> {
        match self.piece(d) {
            Some(_) => self.diffs[(d - self.from) as usize].clone(),
            None => Matrix::zeros(self.field(), self.dim(d + 1), self.dim(d)),
        }
    }

    /// `d∘d = 0` on every built degree, and the free differential squares to
    /// zero as well.
    pub fn check_square_zero(&self) -> bool {
        (self.from..self.hi).all(|d| {
            self.diff(d + 1).mul(&self.diff(d)).is_zero()
                && self.free_differential(d + 1).mul(&self.free_differential(d)).is_zero()
        })
    }
}

impl<F: Field> Cochain<F> for TensorComplex<F> {
    fn field(&self) -> F {
        TensorComplex::field(self)
    }
    fn dim(&self, i: Degree) -> usize {
        TensorComplex::dim(self, i)
    }
    fn differential(&self, i: Degree) -> Matrix<F> {
        self.diff(i)
    }
}

/// Free-level map of `f ⊗ g` in degree `d`, block by block.
pub fn free_tensor_map<F: Field>(
    f: &StrictMorphism<F>,
    g: &StrictMorphism<F>,
    src: &TensorComplex<F>,
    tgt: &TensorComplex<F>,
    d: Degree,
) -> Matrix<F> {
    let fld = src.field();
    let mut out = Matrix::zeros(fld, tgt.free_dim(d), src.free_dim(d));
    for b in src.blocks(d) {
        if let Some(t) = tgt.block(b.left_degree, b.right_degree) {
            let k = f.map(b.left_degree).kron(&g.map(b.right_degree));
            out.set_block(t.offset, b.offset, &k);
        }
    }
    out
}

/// `f ⊗ g : T^d -> T'^d` on the quotient bases, or the degree where it fails
/// to preserve the relations.
pub fn tensor_map<F: Field>(
    f: &StrictMorphism<F>,
    g: &StrictMorphism<F>,
    src: &TensorComplex<F>,
    tgt: &TensorComplex<F>,
    d: Degree,
) -> Result<Matrix<F>, TensorError> {
    let fld = src.field();
    let (Some(s), Some(t)) = (src.space(d), tgt.space(d)) else {
        return Ok(Matrix::zeros(fld, tgt.dim(d), src.dim(d)));
    };
    let free = free_tensor_map(f, g, src, tgt, d);
    let pf = t.projection().mul(&free);
    if !pf.mul(&s.reduced_relations().transpose()).is_zero() {
        return Err(TensorError::DoesNotDescend { degree: d });
    }
    Ok(pf.mul(s.section()))
}
