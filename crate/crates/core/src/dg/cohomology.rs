use alloc::vec::Vec;
use core::fmt;

use super::algebra::Degree;
use super::module::{DGModule, Side};
use super::ring::H0Ring;
use crate::exactlin::{complement, Field, Matrix, QuotientSpace};

/// A cochain complex of finite-dimensional vector spaces.
pub trait Cochain<F: Field> {
    fn field(&self) -> F;
    fn dim(&self, i: Degree) -> usize;
    /// `C^i -> C^{i+1}`
    fn differential(&self, i: Degree) -> Matrix<F>;
}

impl<F: Field> Cochain<F> for DGModule<F> {
    fn field(&self) -> F {
        DGModule::field(self)
    }
    fn dim(&self, i: Degree) -> usize {
        DGModule::dim(self, i)
    }
    fn differential(&self, i: Degree) -> Matrix<F> {
        self.diff(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotACocycle {
    pub degree: Degree,
}

impl fmt::Display for NotACocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vector is not a cocycle in degree {}", self.degree)
    }
}

/// `H^i = Z^i / B^i` of a cochain complex.
///
/// `Z^i` has the kernel basis from the rref of `d^i` (one vector per free
/// column, with a one there), so the `Z`-coordinates of a cocycle are its
/// entries at the free columns. `H^i` is the deterministic quotient of those
/// coordinates by the coordinates of the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySpace<F: Field> {
    degree: Degree,
    ambient_dim: usize,
    outgoing: Matrix<F>,
    incoming: Matrix<F>,
    /// rows form a basis of `Z^i`
    cocycles: Matrix<F>,
    free_cols: Vec<usize>,
    space: QuotientSpace<F>,
    class_map: Matrix<F>,
    rep_map: Matrix<F>,
}

impl<F: Field> CohomologySpace<F> {
    pub fn of<C: Cochain<F> + ?Sized>(c: &C, i: Degree) -> Self {
        Self::build(i, c.differential(i - 1), c.differential(i))
    }

    /// From `d^{i-1}: C^{i-1} -> C^i` and `d^i: C^i -> C^{i+1}`; the degree
    /// label is left at zero.
    pub fn from_differentials(incoming: Matrix<F>, outgoing: Matrix<F>) -> Self {
        Self::build(0, incoming, outgoing)
    }

    fn build(degree: Degree, incoming: Matrix<F>, outgoing: Matrix<F>) -> Self {
        let f = outgoing.field();
        let n = outgoing.cols();
        assert_eq!(incoming.rows(), n, "incoming differential lands elsewhere");
        let rr = outgoing.rref();
        let free_cols = complement(&rr.pivots, n);
        let cocycles = outgoing.kernel_basis();
        let k = free_cols.len();
        let select = {
            let mut s = Matrix::zeros(f, k, n);
            for (r, &c) in free_cols.iter().enumerate() {
                s.set(r, c, f.one());
            }
            s
        };
        let boundary_coords = select.mul(&incoming);
        let space = QuotientSpace::new(k, boundary_coords.transpose()).expect("shape");
        let class_map = space.projection().mul(&select);
        let rep_map = cocycles.transpose().mul(space.section());
        CohomologySpace {
            degree,
            ambient_dim: n,
            outgoing,
            incoming,
            cocycles,
            free_cols,
            space,
            class_map,
            rep_map,
        }
    }

    pub fn with_degree(mut self, degree: Degree) -> Self {
        self.degree = degree;
        self
    }

    pub fn field(&self) -> F {
        self.class_map.field()
    }
    pub fn degree(&self) -> Degree {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn cocycle_dim(&self) -> usize {
        self.free_cols.len()
    }
    pub fn cocycle_basis(&self) -> &Matrix<F> {
        &self.cocycles
    }
    pub fn incoming(&self) -> &Matrix<F> {
        &self.incoming
    }
    pub fn outgoing(&self) -> &Matrix<F> {
        &self.outgoing
    }
    pub fn quotient(&self) -> &QuotientSpace<F> {
        &self.space
    }
    /// `dim H x dim C^i`; only meaningful on cocycles.
    pub fn class_map(&self) -> &Matrix<F> {
        &self.class_map
    }
    /// `dim C^i x dim H`; lands in the cocycles.
    pub fn rep_map(&self) -> &Matrix<F> {
        &self.rep_map
    }

    pub fn is_cocycle(&self, z: &[F::Elem]) -> bool {
        self.field().vec_is_zero(&self.outgoing.mul_vec(z))
    }

    pub fn class_of(&self, z: &[F::Elem]) -> Result<Vec<F::Elem>, NotACocycle> {
        if !self.is_cocycle(z) {
            return Err(NotACocycle { degree: self.degree });
        }
        Ok(self.class_map.mul_vec(z))
    }

    /// Class of `z`, assuming it is a cocycle.
    pub fn class_unchecked(&self, z: &[F::Elem]) -> Vec<F::Elem> {
        self.class_map.mul_vec(z)
    }

    pub fn representative_of(&self, h: &[F::Elem]) -> Vec<F::Elem> {
        self.rep_map.mul_vec(h)
    }

    /// Checks that the section lands in the cocycles, that the class map kills
    /// the boundaries, and that `class_of . representative_of = id`.
    pub fn check_invariants(&self) -> bool {
        let f = self.field();
        self.outgoing.mul(&self.rep_map).is_zero()
            && self.class_map.mul(&self.incoming).is_zero()
            && self.class_map.mul(&self.rep_map) == Matrix::identity(f, self.dim())
            && self.space.check_invariants()
    }
}

/// `H^i(M)` of a DG module together with its `H^0(A)`-module structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyModule<F: Field> {
    side: Side,
    space: CohomologySpace<F>,
    /// `h0_action[k]`: action of the `k`-th basis element of `H^0(A)` on `H^i`
    h0_action: Vec<Matrix<F>>,
    /// action of each basis element of `A^0` on `H^i`
    a0_action: Vec<Matrix<F>>,
}

impl<F: Field> CohomologyModule<F> {
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn space(&self) -> &CohomologySpace<F> {
        &self.space
    }
    pub fn degree(&self) -> Degree {
        self.space.degree
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn h0_action(&self) -> &[Matrix<F>] {
        &self.h0_action
    }
    pub fn a0_action(&self) -> &[Matrix<F>] {
        &self.a0_action
    }
    pub fn class_of(&self, z: &[F::Elem]) -> Result<Vec<F::Elem>, NotACocycle> {
        self.space.class_of(z)
    }
    pub fn representative_of(&self, h: &[F::Elem]) -> Vec<F::Elem> {
        self.space.representative_of(h)
    }
}

fn action_on_classes<F: Field>(m: &DGModule<F>, space: &CohomologySpace<F>, a: &[F::Elem]) -> Matrix<F> {
    let i = space.degree;
    let acting = m.act_by(0, a, i);
    space.class_map.mul(&acting).mul(&space.rep_map)
}

/// `H^i(M)` with its `H^0(A)`-action, computed by lifting basis elements of
/// `H^0(A)` to `A^0` and acting on cocycle representatives.
pub fn cohomology<F: Field>(m: &DGModule<F>, i: Degree, h0: &H0Ring<F>) -> CohomologyModule<F> {
    let space = CohomologySpace::of(m, i);
    let h0_action = (0..h0.dim())
        .map(|k| action_on_classes(m, &space, &h0.lift_basis(k)))
        .collect();
    let a0 = m.algebra().dim(0);
    let a0_action = (0..a0)
        .map(|k| action_on_classes(m, &space, &m.algebra().basis_vector(0, k)))
        .collect();
    CohomologyModule {
        side: m.side(),
        space,
        h0_action,
        a0_action,
    }
}

/// Checks that the `H^0(A)`-action on `H^i(M)` does not depend on the lift to
/// `A^0` (boundaries of `A` act by zero and `A^0` preserves the boundaries of
/// `M`) and that it is unital and associative.
pub fn check_h0_action<F: Field>(m: &DGModule<F>, c: &CohomologyModule<F>, h0: &H0Ring<F>) -> bool {
    let f = m.field();
    let i = c.degree();
    let alg = m.algebra();
    let space = &c.space;
    let boundaries_a = alg.diff(-1);
    for col in boundaries_a.column_vecs() {
        if !action_on_classes(m, space, &col).is_zero() {
            return false;
        }
    }
    for k in 0..alg.dim(0) {
        let acted = m.act_by(0, &alg.basis_vector(0, k), i).mul(space.incoming());
        if !space.class_map.mul(&acted).is_zero() {
            return false;
        }
    }
    let n = c.dim();
    let q = h0.dim();
    let id = Matrix::identity(f, n);
    let unit = h0.ring().unit();
    let act_elem = |v: &[F::Elem]| -> Matrix<F> {
        let mut acc = Matrix::zeros(f, n, n);
        for (k, x) in v.iter().enumerate() {
            acc = acc.add(&c.h0_action[k].scale(x));
        }
        acc
    };
    if act_elem(unit) != id {
        return false;
    }
    for x in 0..q {
        for y in 0..q {
            let xy = h0.ring().product(&f.unit_vector(q, x), &f.unit_vector(q, y));
            let lhs = act_elem(&xy);
            // left: (xy).h = x.(y.h); right: h.(xy) = (h.x).y
            let rhs = match c.side {
                Side::Left => c.h0_action[x].mul(&c.h0_action[y]),
                Side::Right => c.h0_action[y].mul(&c.h0_action[x]),
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
