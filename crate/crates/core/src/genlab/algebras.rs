//! Audited families of nonpositive DG algebras.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::GenError;
use crate::dg::{validate_algebra, DGAlgebra, Degree};
use crate::exactlin::{Field, Matrix};

/// Builds an algebra from the product of basis elements.
///
/// `prod(i, x, j, y)` returns `e_x * e_y` in `A^{i+j}` for `e_x` in `A^i` and
/// `e_y` in `A^j`; `diff(i)` is `A^i -> A^{i+1}` for `i < 0`.
pub fn from_products<F: Field>(
    field: F,
    min_degree: Degree,
    dims: Vec<usize>,
    mut diff: impl FnMut(Degree) -> Matrix<F>,
    mut prod: impl FnMut(Degree, usize, Degree, usize) -> Vec<F::Elem>,
    unit: Vec<F::Elem>,
) -> DGAlgebra<F> {
    let dim = |d: Degree| {
        if d < min_degree || d > 0 {
            0
        } else {
            dims[(d - min_degree) as usize]
        }
    };
    let diffs = (min_degree..0).map(&mut diff).collect();
    let mut mult = Vec::new();
    for i in min_degree..=0 {
        for j in min_degree..=0 {
            let rows = dim(i + j);
            let mut cols = Vec::with_capacity(dim(i) * dim(j));
            for x in 0..dim(i) {
                for y in 0..dim(j) {
                    if rows == 0 {
                        cols.push(Vec::new());
                    } else {
                        cols.push(prod(i, x, j, y));
                    }
                }
            }
            mult.push(Matrix::from_cols(field, rows, &cols));
        }
    }
    DGAlgebra::new(field, min_degree, dims, diffs, mult, unit).expect("family shapes are consistent")
}

/// The ground field in degree 0.
pub fn ground<F: Field>(field: F) -> DGAlgebra<F> {
    make_ordinary(field, 1, Matrix::from_i64(field, 1, 1, &[1]), vec![field.one()]).expect("ground field")
}

/// An algebra concentrated in degree 0 from its structure constants
/// (`dim x dim^2`, column `x * dim + y` holding `e_x * e_y`).
pub fn make_ordinary<F: Field>(
    field: F,
    dim: usize,
    mult: Matrix<F>,
    unit: Vec<F::Elem>,
) -> Result<DGAlgebra<F>, GenError> {
    let a =
        DGAlgebra::new(field, 0, vec![dim], vec![], vec![mult], unit).map_err(|e| GenError::Invalid(format!("{e}")))?;
    let rep = validate_algebra(&a);
    if !rep.is_valid() {
        return Err(GenError::Invalid(format!("{}", rep.violations[0])));
    }
    Ok(a)
}

/// `K[t]/(t^2)` with basis `1, t`.
pub fn dual_numbers<F: Field>(field: F) -> DGAlgebra<F> {
    let mult = Matrix::from_i64(field, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]);
    make_ordinary(field, 2, mult, field.unit_vector(2, 0)).expect("dual numbers")
}

/// Upper-triangular 2x2 matrices with basis `e11, e12, e22`.
pub fn upper_triangular<F: Field>(field: F) -> DGAlgebra<F> {
    let mut mult = Matrix::zeros(field, 3, 9);
    // e11 e11 = e11, e11 e12 = e12, e12 e22 = e12, e22 e22 = e22
    for (x, y, z) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)] {
        mult.set(z, x * 3 + y, field.one());
    }
    let unit = vec![field.one(), field.zero(), field.one()];
    make_ordinary(field, 3, mult, unit).expect("upper triangular matrices")
}

fn exterior_with<F: Field>(field: F, d_eps: i64) -> DGAlgebra<F> {
    from_products(
        field,
        -1,
        vec![1, 1],
        |_| Matrix::from_i64(field, 1, 1, &[d_eps]),
        |i, _, j, _| {
            if i + j == -2 {
                vec![]
            } else {
                vec![field.one()]
            }
        },
        vec![field.one()],
    )
}

/// `K<e>` with `|e| = -1`, `e^2 = 0`, `d(e) = 0`.
pub fn make_exterior<F: Field>(field: F) -> DGAlgebra<F> {
    exterior_with(field, 0)
}

/// `K<e>` with `d(e) = 1`; acyclic, so `H^0 = 0`.
pub fn contractible<F: Field>(field: F) -> DGAlgebra<F> {
    exterior_with(field, 1)
}

/// Graded tensor product `A ⊗ B` with `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`
/// and `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`. In each degree the basis runs
/// over pairs `(i, x, j, y)` with `i` ascending, then `x`, then `y`.
pub fn tensor_algebras<F: Field>(a: &DGAlgebra<F>, b: &DGAlgebra<F>) -> DGAlgebra<F> {
    let f = a.field();
    let min = a.min_degree() + b.min_degree();
    // basis[k - min] = list of (i, x, j, y)
    let mut basis: Vec<Vec<(Degree, usize, Degree, usize)>> = Vec::new();
    for k in min..=0 {
        let mut list = Vec::new();
        for i in a.degrees() {
            let j = k - i;
            for x in 0..a.dim(i) {
                for y in 0..b.dim(j) {
                    list.push((i, x, j, y));
                }
            }
        }
        basis.push(list);
    }
    let dims: Vec<usize> = basis.iter().map(|l| l.len()).collect();
    let index = |k: Degree, key: (Degree, usize, Degree, usize)| -> usize {
        basis[(k - min) as usize]
            .iter()
            .position(|&e| e == key)
            .expect("basis element")
    };
    // expand u ⊗ v (u in A^i, v in B^j) into C^{i+j}
    let embed = |i: Degree, u: &[F::Elem], j: Degree, v: &[F::Elem], out: &mut Vec<F::Elem>, c: &F::Elem| {
        for (x, ux) in u.iter().enumerate() {
            if f.is_zero(ux) {
                continue;
            }
            for (y, vy) in v.iter().enumerate() {
                if f.is_zero(vy) {
                    continue;
                }
                let idx = index(i + j, (i, x, j, y));
                out[idx] = f.add(&out[idx], &f.mul(c, &f.mul(ux, vy)));
            }
        }
    };
    let diff = |k: Degree| -> Matrix<F> {
        let src = &basis[(k - min) as usize];
        let rows = dims[(k + 1 - min) as usize];
        let cols: Vec<Vec<F::Elem>> = src
            .iter()
            .map(|&(i, x, j, y)| {
                let mut out = f.zeros(rows);
                let ex = a.basis_vector(i, x);
                let ey = b.basis_vector(j, y);
                if i < 0 {
                    embed(i + 1, &a.diff(i).mul_vec(&ex), j, &ey, &mut out, &f.one());
                }
                if j < 0 {
                    embed(i, &ex, j + 1, &b.diff(j).mul_vec(&ey), &mut out, &f.sign(i));
                }
                out
            })
            .collect();
        Matrix::from_cols(f, rows, &cols)
    };
    let prod = |k1: Degree, s: usize, k2: Degree, t: usize| -> Vec<F::Elem> {
        let (i, x, j, y) = basis[(k1 - min) as usize][s];
        let (i2, x2, j2, y2) = basis[(k2 - min) as usize][t];
        let mut out = f.zeros(dims[(k1 + k2 - min) as usize]);
        let u = a.product(i, &a.basis_vector(i, x), i2, &a.basis_vector(i2, x2));
        let v = b.product(j, &b.basis_vector(j, y), j2, &b.basis_vector(j2, y2));
        if i + i2 >= a.min_degree() && j + j2 >= b.min_degree() {
            embed(i + i2, &u, j + j2, &v, &mut out, &f.sign(j * i2));
        }
        out
    };
    let mut unit = f.zeros(dims[(0 - min) as usize]);
    embed(0, a.unit(), 0, b.unit(), &mut unit, &f.one());
    from_products(f, min, dims.clone(), diff, prod, unit)
}

/// `K[t]/(t^2) ⊗ K<e_1>` with `d(e_1) = t`, tensored with `depth - 1` further
/// exterior generators with zero differential. Lives in degrees `-depth..=0`.
pub fn make_koszul_like<F: Field>(field: F, depth: usize) -> DGAlgebra<F> {
    // basis: degree 0: 1, t; degree -1: e, te
    let base = from_products(
        field,
        -1,
        vec![2, 2],
        |_| Matrix::from_i64(field, 2, 2, &[0, 0, 1, 0]),
        |i, x, j, y| {
            // x, y index: 0 = no t, 1 = with t; t is central of degree 0
            if i + j == -2 || x + y > 1 {
                return field.zeros(if i + j == -2 { 0 } else { 2 });
            }
            field.unit_vector(2, x + y)
        },
        vec![field.one(), field.zero()],
    );
    let mut a = base;
    for _ in 1..depth.max(1) {
        a = tensor_algebras(&a, &make_exterior(field));
    }
    a
}

/// Names of the algebra families, in the order used by corpus profiles.
pub const ALGEBRA_FAMILIES: [&str; 8] = [
    "ground",
    "dual_numbers",
    "upper_triangular",
    "exterior",
    "contractible",
    "koszul_like",
    "dual_numbers_x_exterior",
    "upper_triangular_x_exterior",
];

pub fn algebra_family<F: Field>(field: F, name: &str) -> Result<DGAlgebra<F>, GenError> {
    Ok(match name {
        "ground" => ground(field),
        "dual_numbers" => dual_numbers(field),
        "upper_triangular" => upper_triangular(field),
        "exterior" => make_exterior(field),
        "contractible" => contractible(field),
        "koszul_like" => make_koszul_like(field, 2),
        "dual_numbers_x_exterior" => tensor_algebras(&dual_numbers(field), &make_exterior(field)),
        "upper_triangular_x_exterior" => tensor_algebras(&upper_triangular(field), &make_exterior(field)),
        other => return Err(GenError::UnknownFamily(String::from(other))),
    })
}
