//! Constructions on DG modules.
//!
//! Shift convention: `M[k]^i = M^{i+k}` with differential `(-1)^k d_M`. A right
//! module keeps its action unchanged; a left module acts by
//! `a . t(m) = (-1)^{k|a|} t(a.m)`, which is what the left Leibniz rule forces.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::algebra::{Degree, StructureError};
use super::module::{same_algebra, DGModule, Side};
use super::morphism::StrictMorphism;
use crate::exactlin::{Field, Matrix, QuotientSpace};

/// `M[k]`, with `M[k]^i = M^{i+k}`.
pub fn shift<F: Field>(m: &DGModule<F>, k: Degree) -> DGModule<F> {
    let f = m.field();
    let (lo, hi) = m.window();
    let sign = f.sign(k);
    DGModule::from_fn(
        m.side(),
        m.algebra().clone(),
        (lo - k, hi - k),
        m.dims().to_vec(),
        |i| m.diff(i + k).scale(&sign),
        |i, j| {
            let t = m.action_table(i + k, j);
            match m.side() {
                Side::Left => t.scale(&f.sign(k * j)),
                Side::Right => t,
            }
        },
    )
    .expect("shifted module shape")
}

/// Smart truncation `τ^{≤j} N`: `N^i` below `j`, the cocycles `Z^j` in degree
/// `j` (with the kernel basis of `d^j`) and zero above. Returned together with
/// its inclusion into `N`.
pub fn smart_truncate<F: Field>(n: &DGModule<F>, j: Degree) -> (DGModule<F>, StrictMorphism<F>) {
    let f = n.field();
    let (lo, hi) = n.window();
    if j < lo {
        let z = DGModule::zero(n.side(), n.algebra().clone(), j);
        let inc = StrictMorphism::zero(&z, n).expect("zero inclusion");
        return (z, inc);
    }
    let top = j.min(hi);
    let mut bases: Vec<Matrix<F>> = (lo..=top).map(|i| Matrix::identity(f, n.dim(i))).collect();
    if j <= hi {
        bases[(j - lo) as usize] = n.diff(j).kernel_basis();
    }
    let (sub, inc) = submodule(n, lo, &bases).expect("smart truncation is a DG submodule");
    (sub, inc)
}

/// The submodule failed to be closed under the differential or the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotClosed {
    pub what: &'static str,
    pub degree: Degree,
}

impl fmt::Display for NotClosed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "subspace is not closed under {} at degree {}",
            self.what, self.degree
        )
    }
}

/// Coordinates of the columns of `v` with respect to the independent rows of
/// `basis`, or `None` if some column is outside their span.
fn coords<F: Field>(basis: &Matrix<F>, v: &Matrix<F>) -> Option<Matrix<F>> {
    basis.transpose().solve_matrix(v)
}

/// The DG submodule with the given independent basis rows in degrees
/// `lo, lo+1, ...`, and its inclusion.
pub fn submodule<F: Field>(
    m: &DGModule<F>,
    lo: Degree,
    bases: &[Matrix<F>],
) -> Result<(DGModule<F>, StrictMorphism<F>), NotClosed> {
    let f = m.field();
    let hi = lo + bases.len() as Degree - 1;
    let basis = |i: Degree| -> Matrix<F> {
        if i < lo || i > hi {
            Matrix::zeros(f, 0, m.dim(i))
        } else {
            bases[(i - lo) as usize].clone()
        }
    };
    let dims: Vec<usize> = (lo..=hi).map(|i| basis(i).rows()).collect();
    let mut diffs = Vec::new();
    for i in lo..=hi {
        let img = m.diff(i).mul(&basis(i).transpose());
        let c = coords(&basis(i + 1), &img).ok_or(NotClosed {
            what: "the differential",
            degree: i,
        })?;
        diffs.push(c);
    }
    let alg = m.algebra().clone();
    let mut actions = Vec::new();
    for i in lo..=hi {
        let bi = basis(i);
        for j in alg.degrees() {
            let (da, dm) = (alg.dim(j), bi.rows());
            let mut cols = Vec::with_capacity(da * dm);
            // enumerate columns in stored order
            for outer in 0..(if m.side() == Side::Left { da } else { dm }) {
                for inner in 0..(if m.side() == Side::Left { dm } else { da }) {
                    let (a, x) = if m.side() == Side::Left {
                        (outer, inner)
                    } else {
                        (inner, outer)
                    };
                    cols.push(m.act(j, &alg.basis_vector(j, a), i, bi.row(x)));
                }
            }
            let img = Matrix::from_cols(f, m.dim(i + j), &cols);
            let c = coords(&basis(i + j), &img).ok_or(NotClosed {
                what: "the action",
                degree: i,
            })?;
            actions.push(c);
        }
    }
    let sub = DGModule::new(m.side(), alg, (lo, hi), dims, diffs, actions).expect("submodule shape");
    let inc = StrictMorphism::new(sub.clone(), m.clone(), |i| basis(i).transpose()).expect("inclusion shape");
    Ok((sub, inc))
}

/// `M / S` where `S` is spanned in degree `lo + k` by the rows of
/// `spanning[k]`. `S` must be a DG submodule. Returned with the projection.
pub fn quotient_module<F: Field>(
    m: &DGModule<F>,
    spanning: &[(Degree, Matrix<F>)],
) -> Result<(DGModule<F>, StrictMorphism<F>), NotClosed> {
    let f = m.field();
    let (lo, hi) = m.window();
    let spaces: Vec<QuotientSpace<F>> = (lo..=hi)
        .map(|i| {
            let mut rel = Matrix::zeros(f, 0, m.dim(i));
            for (d, rows) in spanning {
                if *d == i {
                    rel = rel.vstack(rows);
                }
            }
            QuotientSpace::new(m.dim(i), rel).expect("relation width")
        })
        .collect();
    let space = |i: Degree| -> Option<&QuotientSpace<F>> {
        if i < lo || i > hi {
            None
        } else {
            Some(&spaces[(i - lo) as usize])
        }
    };
    let proj =
        |i: Degree| -> Matrix<F> { space(i).map_or_else(|| Matrix::zeros(f, 0, m.dim(i)), |q| q.projection().clone()) };
    let sect =
        |i: Degree| -> Matrix<F> { space(i).map_or_else(|| Matrix::zeros(f, m.dim(i), 0), |q| q.section().clone()) };
    // closure of S: the relations are killed by proj . d and proj . action
    for i in lo..=hi {
        let q = space(i).unwrap();
        let rel_t = q.reduced_relations().transpose();
        if !proj(i + 1).mul(&m.diff(i)).mul(&rel_t).is_zero() {
            return Err(NotClosed {
                what: "the differential",
                degree: i,
            });
        }
        for j in m.algebra().degrees() {
            for a in 0..m.algebra().dim(j) {
                let act = m.act_by(j, &m.algebra().basis_vector(j, a), i);
                if !proj(i + j).mul(&act).mul(&rel_t).is_zero() {
                    return Err(NotClosed {
                        what: "the action",
                        degree: i,
                    });
                }
            }
        }
    }
    let dims: Vec<usize> = spaces.iter().map(|q| q.dim()).collect();
    let alg = m.algebra().clone();
    let out = DGModule::from_fn(
        m.side(),
        alg.clone(),
        (lo, hi),
        dims,
        |i| proj(i + 1).mul(&m.diff(i)).mul(&sect(i)),
        |i, j| {
            let s = sect(i);
            let (da, dq) = (alg.dim(j), s.cols());
            let mut cols = Vec::with_capacity(da * dq);
            let side = m.side();
            for outer in 0..(if side == Side::Left { da } else { dq }) {
                for inner in 0..(if side == Side::Left { dq } else { da }) {
                    let (a, x) = if side == Side::Left {
                        (outer, inner)
                    } else {
                        (inner, outer)
                    };
                    let v = m.act(j, &alg.basis_vector(j, a), i, &s.column(x));
                    cols.push(proj(i + j).mul_vec(&v));
                }
            }
            Matrix::from_cols(f, space(i + j).map_or(0, |q| q.dim()), &cols)
        },
    )
    .expect("quotient module shape");
    let p = StrictMorphism::new(m.clone(), out.clone(), proj).expect("projection shape");
    Ok((out, p))
}

/// The DG submodule generated by homogeneous elements: `x.A + d(x).A` (or
/// `A.x + A.d(x)`), as spanning rows per degree.
pub fn generated_submodule<F: Field>(m: &DGModule<F>, gens: &[(Degree, Vec<F::Elem>)]) -> Vec<(Degree, Matrix<F>)> {
    let f = m.field();
    let alg = m.algebra();
    let mut out: Vec<(Degree, Matrix<F>)> = Vec::new();
    let mut push = |d: Degree, v: Vec<F::Elem>| {
        if f.vec_is_zero(&v) {
            return;
        }
        let row = Matrix::from_rows(f, v.len(), alloc::vec![v]);
        match out.iter_mut().find(|(e, _)| *e == d) {
            Some((_, rows)) => *rows = rows.vstack(&row),
            None => out.push((d, row)),
        }
    };
    for (d, x) in gens {
        let dx = m.diff(*d).mul_vec(x);
        for j in alg.degrees() {
            for a in 0..alg.dim(j) {
                let ea = alg.basis_vector(j, a);
                push(d + j, m.act(j, &ea, *d, x));
                push(d + 1 + j, m.act(j, &ea, d + 1, &dx));
            }
        }
    }
    out
}

/// `M ⊕ N` on the union of the windows, `M` first in every degree.
pub fn direct_sum<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<DGModule<F>, StructureError> {
    if m.side() != n.side() || !same_algebra(m.algebra(), n.algebra()) {
        return Err(StructureError("direct sum of incompatible modules".into()));
    }
    let lo = m.lo().min(n.lo());
    let hi = m.hi().max(n.hi());
    let dims = (lo..=hi).map(|i| m.dim(i) + n.dim(i)).collect();
    DGModule::from_fn(
        m.side(),
        m.algebra().clone(),
        (lo, hi),
        dims,
        |i| m.diff(i).block_diag(&n.diff(i)),
        |i, j| sum_action_table(m, n, i, j),
    )
}

fn sum_action_table<F: Field>(m: &DGModule<F>, n: &DGModule<F>, i: Degree, j: Degree) -> Matrix<F> {
    let f = m.field();
    let da = m.algebra().dim(j);
    let (dm, dn) = (m.dim(i), n.dim(i));
    let (tm, tn) = (m.action_table(i, j), n.action_table(i, j));
    let rows_m = m.dim(i + j);
    let mut out = Matrix::zeros(f, rows_m + n.dim(i + j), da * (dm + dn));
    for a in 0..da {
        for x in 0..dm {
            let (src, dst) = match m.side() {
                Side::Left => (a * dm + x, a * (dm + dn) + x),
                Side::Right => (x * da + a, x * da + a),
            };
            for r in 0..rows_m {
                out.set(r, dst, tm.get(r, src).clone());
            }
        }
        for y in 0..dn {
            let (src, dst) = match m.side() {
                Side::Left => (a * dn + y, a * (dm + dn) + dm + y),
                Side::Right => (y * da + a, (dm + y) * da + a),
            };
            for r in 0..tn.rows() {
                out.set(rows_m + r, dst, tn.get(r, src).clone());
            }
        }
    }
    out
}

/// Mapping cone `M[1] ⊕ M'` of `g: M -> M'` with differential
/// `(m, m') -> (-d m, g(m) + d m')`.
pub fn mapping_cone<F: Field>(g: &StrictMorphism<F>) -> DGModule<F> {
    let (m, t) = (g.source(), g.target());
    let shifted = shift(m, 1);
    let sum = direct_sum(&shifted, t).expect("cone summands are compatible");
    let f = m.field();
    let (lo, hi) = sum.window();
    DGModule::from_fn(
        sum.side(),
        sum.algebra().clone(),
        (lo, hi),
        sum.dims().to_vec(),
        |i| {
            let mut d = sum.diff(i);
            let gi = g.map(i + 1);
            if gi.rows() > 0 && gi.cols() > 0 {
                d.set_block(shifted.dim(i + 1), 0, &gi);
            }
            let _ = f;
            d
        },
        |i, j| sum.action_table(i, j),
    )
    .expect("cone shape")
}

/// Reinterprets a right `A`-module as a left `A^op`-module (and conversely):
/// `a * m = (-1)^{|a||m|} m . a`.
pub fn to_opposite<F: Field>(m: &DGModule<F>, opposite: Arc<super::DGAlgebra<F>>) -> DGModule<F> {
    let f = m.field();
    let alg = m.algebra();
    debug_assert_eq!(*opposite, alg.opposite());
    let (lo, hi) = m.window();
    DGModule::from_fn(
        m.side().flip(),
        opposite,
        (lo, hi),
        m.dims().to_vec(),
        |i| m.diff(i),
        |i, j| {
            let t = m.action_table(i, j);
            let (da, dm) = (alg.dim(j), m.dim(i));
            let sign = f.sign(i * j);
            let mut out = Matrix::zeros(f, t.rows(), t.cols());
            for a in 0..da {
                for x in 0..dm {
                    let (left_col, right_col) = (a * dm + x, x * da + a);
                    let (src, dst) = match m.side() {
                        Side::Right => (right_col, left_col),
                        Side::Left => (left_col, right_col),
                    };
                    for r in 0..t.rows() {
                        out.set(r, dst, f.mul(&sign, t.get(r, src)));
                    }
                }
            }
            out
        },
    )
    .expect("opposite module shape")
}

/// Converts a module to the opposite side over a freshly built `A^op`.
pub fn opposite_module<F: Field>(m: &DGModule<F>) -> DGModule<F> {
    to_opposite(m, Arc::new(m.algebra().opposite()))
}

/// The translation `M -> M[k]` on cohomology is the identity on
/// representatives; this checks it for one degree.
pub fn check_shift_identification<F: Field>(m: &DGModule<F>, k: Degree, i: Degree) -> Result<(), StructureError> {
    use super::cohomology::CohomologySpace;
    let s = shift(m, k);
    let h_shift = CohomologySpace::of(&s, i);
    let h_orig = CohomologySpace::of(m, i + k);
    if h_shift.dim() != h_orig.dim() {
        return Err(StructureError(format!(
            "H^{i}(M[{k}]) has dimension {} but H^{}(M) has {}",
            h_shift.dim(),
            i + k,
            h_orig.dim()
        )));
    }
    // same cocycle space in the same ambient basis, so the classes agree
    if h_shift.class_map() != h_orig.class_map() {
        return Err(StructureError(format!("class maps differ for H^{i}(M[{k}])")));
    }
    Ok(())
}

/// The same module on the smallest window containing its nonzero degrees (a
/// single degree if it is zero).
pub fn trim<F: Field>(m: &DGModule<F>) -> DGModule<F> {
    let (lo, hi) = m.window();
    let nz: Vec<Degree> = (lo..=hi).filter(|&i| m.dim(i) > 0).collect();
    let (a, b) = match (nz.first(), nz.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return DGModule::zero(m.side(), m.algebra().clone(), hi),
    };
    DGModule::from_fn(
        m.side(),
        m.algebra().clone(),
        (a, b),
        (a..=b).map(|i| m.dim(i)).collect(),
        |i| m.diff(i),
        |i, j| m.action_table(i, j),
    )
    .expect("trimmed module shape")
}
