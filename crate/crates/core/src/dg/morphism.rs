use alloc::format;
use alloc::vec::Vec;

use super::algebra::{structure, Degree, StructureError};
use super::cohomology::CohomologySpace;
use super::module::{same_algebra, DGModule};
use crate::exactlin::{Field, Matrix};

/// A degree-zero map of DG modules commuting with the differentials and the
/// action. Components are stored for the degrees in the union of both windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMorphism<F: Field> {
    source: DGModule<F>,
    target: DGModule<F>,
    lo: Degree,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> StrictMorphism<F> {
    /// `maps(i)` must have shape `dim(target^i) x dim(source^i)`.
    pub fn new(
        source: DGModule<F>,
        target: DGModule<F>,
        mut maps: impl FnMut(Degree) -> Matrix<F>,
    ) -> Result<Self, StructureError> {
        if source.side() != target.side() {
            return structure(format!(
                "morphism between a {:?} and a {:?} module",
                source.side(),
                target.side()
            ));
        }
        if !same_algebra(source.algebra(), target.algebra()) {
            return structure("morphism between modules over different algebras".into());
        }
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let mut out = Vec::new();
        for i in lo..=hi {
            let m = maps(i);
            if m.shape() != (target.dim(i), source.dim(i)) {
                return structure(format!(
                    "component in degree {i} has shape {:?}, expected {:?}",
                    m.shape(),
                    (target.dim(i), source.dim(i))
                ));
            }
            out.push(m);
        }
        Ok(StrictMorphism {
            source,
            target,
            lo,
            maps: out,
        })
    }

    pub fn identity(m: &DGModule<F>) -> Self {
        let f = m.field();
        Self::new(m.clone(), m.clone(), |i| Matrix::identity(f, m.dim(i))).expect("shape")
    }

    pub fn zero(source: &DGModule<F>, target: &DGModule<F>) -> Result<Self, StructureError> {
        let f = source.field();
        Self::new(source.clone(), target.clone(), |i| {
            Matrix::zeros(f, target.dim(i), source.dim(i))
        })
    }

    pub fn source(&self) -> &DGModule<F> {
        &self.source
    }
    pub fn target(&self) -> &DGModule<F> {
        &self.target
    }

    pub fn map(&self, i: Degree) -> Matrix<F> {
        let hi = self.lo + self.maps.len() as Degree - 1;
        if i < self.lo || i > hi {
            Matrix::zeros(self.source.field(), self.target.dim(i), self.source.dim(i))
        } else {
            self.maps[(i - self.lo) as usize].clone()
        }
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<Degree> {
        self.lo..=self.lo + self.maps.len() as Degree - 1
    }

    /// `other . self`
    pub fn then(&self, other: &StrictMorphism<F>) -> Result<Self, StructureError> {
        if self.target != other.source {
            return structure("composable morphisms must share the middle module".into());
        }
        Self::new(self.source.clone(), other.target.clone(), |i| {
            other.map(i).mul(&self.map(i))
        })
    }

    pub fn add(&self, other: &StrictMorphism<F>) -> Result<Self, StructureError> {
        if self.source != other.source || self.target != other.target {
            return structure("summands must have the same source and target".into());
        }
        Self::new(self.source.clone(), self.target.clone(), |i| {
            self.map(i).add(&other.map(i))
        })
    }

    /// Induced map `H^i(source) -> H^i(target)` in the deterministic bases.
    pub fn on_cohomology(&self, h_src: &CohomologySpace<F>, h_tgt: &CohomologySpace<F>) -> Matrix<F> {
        let i = h_src.degree();
        h_tgt.class_map().mul(&self.map(i)).mul(h_src.rep_map())
    }
}
