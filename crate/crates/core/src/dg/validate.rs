//! Axiom checks for DG algebras, DG modules and strict morphisms.
//!
//! Sign conventions: `d(xy) = d(x) y + (-1)^{|x|} x d(y)` in the algebra,
//! `d(a.m) = d(a).m + (-1)^{|a|} a.d(m)` for left modules and
//! `d(m.a) = d(m).a + (-1)^{|m|} m.d(a)` for right modules.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::algebra::{DGAlgebra, Degree};
use super::module::{DGModule, Side};
use super::morphism::StrictMorphism;
use crate::exactlin::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    DifferentialSquaresToZero,
    Leibniz,
    Associativity,
    Unit,
    ChainMap,
    Equivariance,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::DifferentialSquaresToZero => "d∘d = 0",
            Axiom::Leibniz => "Leibniz rule",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::ChainMap => "chain map",
            Axiom::Equivariance => "equivariance",
        })
    }
}

/// One failing instance of an axiom: the degrees and basis indices involved,
/// in the order the axiom's variables are written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub degrees: Vec<Degree>,
    pub basis: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at", self.axiom)?;
        for (d, b) in self.degrees.iter().zip(&self.basis) {
            write!(f, " (degree {d}, basis {b})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: Axiom, degrees: Vec<Degree>, basis: Vec<usize>) {
        self.violations.push(Violation { axiom, degrees, basis });
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

pub fn validate_algebra<F: Field>(a: &DGAlgebra<F>) -> ValidationReport {
    let f = a.field();
    let mut rep = ValidationReport::default();
    let degs: Vec<Degree> = a.degrees().collect();

    for &i in &degs {
        let dd = a.diff(i + 1).mul(&a.diff(i));
        for x in 0..a.dim(i) {
            if !f.vec_is_zero(&dd.column(x)) {
                rep.push(Axiom::DifferentialSquaresToZero, vec![i], vec![x]);
            }
        }
    }

    for &i in &degs {
        for x in 0..a.dim(i) {
            let ex = a.basis_vector(i, x);
            if a.product(0, a.unit(), i, &ex) != ex || a.product(i, &ex, 0, a.unit()) != ex {
                rep.push(Axiom::Unit, vec![i], vec![x]);
            }
        }
    }

    for &i in &degs {
        for &j in &degs {
            for x in 0..a.dim(i) {
                let ex = a.basis_vector(i, x);
                let dx = a.diff(i).mul_vec(&ex);
                for y in 0..a.dim(j) {
                    let ey = a.basis_vector(j, y);
                    let lhs = a.diff(i + j).mul_vec(&a.product(i, &ex, j, &ey));
                    let dy = a.diff(j).mul_vec(&ey);
                    let t1 = a.product(i + 1, &dx, j, &ey);
                    let t2 = a.product(i, &ex, j + 1, &dy);
                    let rhs = f.vec_add(&t1, &f.vec_scale(&f.sign(i), &t2));
                    if lhs != rhs {
                        rep.push(Axiom::Leibniz, vec![i, j], vec![x, y]);
                    }
                }
            }
        }
    }

    for &i in &degs {
        for &j in &degs {
            for &k in &degs {
                if a.dim(i + j + k) == 0 {
                    continue;
                }
                for x in 0..a.dim(i) {
                    for y in 0..a.dim(j) {
                        let xy = a.product(i, &a.basis_vector(i, x), j, &a.basis_vector(j, y));
                        for z in 0..a.dim(k) {
                            let ez = a.basis_vector(k, z);
                            let yz = a.product(j, &a.basis_vector(j, y), k, &ez);
                            let lhs = a.product(i + j, &xy, k, &ez);
                            let rhs = a.product(i, &a.basis_vector(i, x), j + k, &yz);
                            if lhs != rhs {
                                rep.push(Axiom::Associativity, vec![i, j, k], vec![x, y, z]);
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

pub fn validate_module<F: Field>(m: &DGModule<F>) -> ValidationReport {
    let f = m.field();
    let a = m.algebra();
    let mut rep = ValidationReport::default();
    let (lo, hi) = m.window();

    for i in lo..=hi {
        let dd = m.diff(i + 1).mul(&m.diff(i));
        for x in 0..m.dim(i) {
            if !f.vec_is_zero(&dd.column(x)) {
                rep.push(Axiom::DifferentialSquaresToZero, vec![i], vec![x]);
            }
        }
    }

    for i in lo..=hi {
        for x in 0..m.dim(i) {
            let e = m.basis_vector(i, x);
            if m.act(0, a.unit(), i, &e) != e {
                rep.push(Axiom::Unit, vec![i], vec![x]);
            }
        }
    }

    for i in lo..=hi {
        for j in a.degrees() {
            for x in 0..m.dim(i) {
                let em = m.basis_vector(i, x);
                let dm = m.diff(i).mul_vec(&em);
                for y in 0..a.dim(j) {
                    let ea = a.basis_vector(j, y);
                    let da = a.diff(j).mul_vec(&ea);
                    let lhs = m.diff(i + j).mul_vec(&m.act(j, &ea, i, &em));
                    // the product with d(a) and the product with d(m)
                    let with_da = m.act(j + 1, &da, i, &em);
                    let with_dm = m.act(j, &ea, i + 1, &dm);
                    let rhs = match m.side() {
                        Side::Left => f.vec_add(&with_da, &f.vec_scale(&f.sign(j), &with_dm)),
                        Side::Right => f.vec_add(&with_dm, &f.vec_scale(&f.sign(i), &with_da)),
                    };
                    if lhs != rhs {
                        let (degrees, basis) = match m.side() {
                            Side::Left => (vec![j, i], vec![y, x]),
                            Side::Right => (vec![i, j], vec![x, y]),
                        };
                        rep.push(Axiom::Leibniz, degrees, basis);
                    }
                }
            }
        }
    }

    for i in lo..=hi {
        for j in a.degrees() {
            for k in a.degrees() {
                if m.dim(i + j + k) == 0 {
                    continue;
                }
                for x in 0..m.dim(i) {
                    let em = m.basis_vector(i, x);
                    for y in 0..a.dim(j) {
                        let ea = a.basis_vector(j, y);
                        for z in 0..a.dim(k) {
                            let eb = a.basis_vector(k, z);
                            let ok = match m.side() {
                                // (a b).m = a.(b.m) with a in A^j, b in A^k
                                Side::Left => {
                                    let ab = a.product(j, &ea, k, &eb);
                                    m.act(j + k, &ab, i, &em) == m.act(j, &ea, i + k, &m.act(k, &eb, i, &em))
                                }
                                // (m.a).b = m.(a b)
                                Side::Right => {
                                    let ab = a.product(j, &ea, k, &eb);
                                    m.act(k, &eb, i + j, &m.act(j, &ea, i, &em)) == m.act(j + k, &ab, i, &em)
                                }
                            };
                            if !ok {
                                let (degrees, basis) = match m.side() {
                                    Side::Left => (vec![j, k, i], vec![y, z, x]),
                                    Side::Right => (vec![i, j, k], vec![x, y, z]),
                                };
                                rep.push(Axiom::Associativity, degrees, basis);
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

pub fn validate_morphism<F: Field>(g: &StrictMorphism<F>) -> ValidationReport {
    let (src, tgt) = (g.source(), g.target());
    let a = src.algebra();
    let mut rep = ValidationReport::default();
    for i in g.degrees() {
        let lhs = tgt.diff(i).mul(&g.map(i));
        let rhs = g.map(i + 1).mul(&src.diff(i));
        for x in 0..src.dim(i) {
            if lhs.column(x) != rhs.column(x) {
                rep.push(Axiom::ChainMap, vec![i], vec![x]);
            }
        }
        for j in a.degrees() {
            for x in 0..src.dim(i) {
                let em = src.basis_vector(i, x);
                let gm = g.map(i).mul_vec(&em);
                for y in 0..a.dim(j) {
                    let ea = a.basis_vector(j, y);
                    let lhs = g.map(i + j).mul_vec(&src.act(j, &ea, i, &em));
                    let rhs = tgt.act(j, &ea, i, &gm);
                    if lhs != rhs {
                        rep.push(Axiom::Equivariance, vec![i, j], vec![x, y]);
                    }
                }
            }
        }
    }
    rep
}
