//! The right exact sequences behind `θ`, checked on the translated modules
//! (tops in degree 0).

use alloc::format;
use alloc::string::String;

use super::KunnethWitness;
use crate::dg::{CohomologySpace, DGModule};
use crate::evidence::{Check, Counterexample, Evidence};
use crate::exactlin::{in_column_space, Field, Matrix};
use crate::tensor::{tensor_over_ring, BalancedTensorSpace, RingActions};

/// `X -f-> Y -g-> Z -> 0` is exact: `g f = 0`, `ker g = im f`, `g` onto.
pub fn check_right_exact<F: Field>(name: impl Into<String>, f: &Matrix<F>, g: &Matrix<F>) -> Check {
    let name = name.into();
    let fld = g.field();
    let (dim_z, dim_y) = g.shape();
    if f.rows() != dim_y {
        return Check::fail(
            name,
            Counterexample::new(format!("maps do not compose: {} vs {}", f.rows(), dim_y)),
        );
    }
    let gf = g.mul(f);
    if let Some(c) = (0..gf.cols()).find(|&c| !fld.vec_is_zero(&gf.column(c))) {
        return Check::fail(
            name,
            Counterexample::new(format!("g(f(e_{c})) is nonzero")).with_vector(fld, &f.column(c)),
        );
    }
    for v in g.kernel_basis().row_vecs() {
        if !in_column_space(f, &v) {
            return Check::fail(
                name,
                Counterexample::new("kernel element outside the image").with_vector(fld, &v),
            );
        }
    }
    let rank = g.rank();
    if rank != dim_z {
        return Check::fail(
            name,
            Counterexample::new(format!("last map has rank {rank} onto dimension {dim_z}")),
        );
    }
    Check::pass(name, format!("dimensions {} -> {dim_y} -> {dim_z}", f.cols()))
}

fn induced<F: Field>(
    src: &BalancedTensorSpace<F>,
    tgt: &BalancedTensorSpace<F>,
    a: &Matrix<F>,
    b: &Matrix<F>,
    ok: &mut bool,
) -> Matrix<F> {
    src.induced_map(tgt, a, b).unwrap_or_else(|| {
        *ok = false;
        Matrix::zeros(src.field(), tgt.dim(), src.dim())
    })
}

/// All sequences and comparisons for a witness.
pub fn check_exact_sequences<F: Field>(w: &KunnethWitness<F>) -> Evidence {
    let top = &w.top;
    let (m, n): (&DGModule<F>, &DGModule<F>) = (&top.m, &top.n);
    let f = m.field();
    let mut ev = top.evidence();

    let h_m = w.h_m.space();
    let h_n = w.h_n.space();
    let (pm, pn) = (h_m.class_map(), h_n.class_map());
    let a0 = |x: &RingActions<F>, y: &RingActions<F>| tensor_over_ring(f, x, y).expect("A^0-modules");
    let hm_a0 = RingActions::cohomology_a0(&w.h_m);
    let hh = &w.source_a0;
    let h_n1 = a0(&hm_a0, &RingActions::degree_zero(n, -1));
    let h_n0 = a0(&hm_a0, &RingActions::degree_zero(n, 0));

    let mut ok = true;
    let id_hm = Matrix::identity(f, h_m.dim());
    let id_n0 = Matrix::identity(f, n.dim(0));
    let dn = n.diff(-1);
    let dm = m.diff(-1);

    // H^0(M) ⊗ N^{-1} -> H^0(M) ⊗ N^0 -> H^0(M) ⊗ H^0(N) -> 0
    let id_dn = induced(&h_n1, &h_n0, &id_hm, &dn, &mut ok);
    let beta = induced(&h_n0, hh, &id_hm, pn, &mut ok);
    ev.push(check_right_exact(
        "H0(M) ⊗ (N^-1 -> N^0 -> H0(N)) is right exact",
        &id_dn,
        &beta,
    ));

    // M^0 ⊗ N^{-1} -> H^0(M) ⊗ N^0 -> H^0(M) ⊗ H^0(N) -> 0
    let alpha = induced(&top.m0_1, &h_n0, pm, &dn, &mut ok);
    ev.push(check_right_exact(
        "M^0 ⊗ N^-1 -> H0(M) ⊗ N^0 -> H0(M) ⊗ H0(N)",
        &alpha,
        &beta,
    ));

    // M^{-1} ⊗ N^0 -> M^0 ⊗ N^0 -> H^0(M) ⊗ N^0 -> 0
    let dm_id = induced(&top.m1_0, &top.m0_0, &dm, &id_n0, &mut ok);
    let pm_id = induced(&top.m0_0, &h_n0, pm, &id_n0, &mut ok);
    ev.push(check_right_exact(
        "(M^-1 -> M^0 -> H0(M)) ⊗ N^0 is right exact",
        &dm_id,
        &pm_id,
    ));

    // (M^{-1} ⊗ N^0) ⊕ (M^0 ⊗ N^{-1}) -> M^0 ⊗ N^0 -> H^0(M) ⊗ H^0(N) -> 0
    let pm_pn = induced(&top.m0_0, hh, pm, pn, &mut ok);
    ev.push(check_right_exact("phi then [m] ⊗ [n] is right exact", &top.phi, &pm_pn));

    // (M^{-1} ⊗ N^0) ⊕ (M^0 ⊗ N^{-1}) -> M^0 ⊗ N^0 -> H^0(M ⊗ N) -> 0
    let h_t = CohomologySpace::of(&top.tensor, 0);
    let pi = h_t.class_map().mul(&top.psi);
    ev.push(check_right_exact(
        "phi then class in H0(M ⊗ N) is right exact",
        &top.phi,
        &pi,
    ));

    ev.push(Check::from_bool("induced maps respect the balancing relations", ok, ""));
    ev.push(Check::from_bool(
        "theta after [m] ⊗ [n] is the class map",
        w.theta_translated.mul(&pm_pn) == pi,
        format!("{} x {}", pi.rows(), pi.cols()),
    ));
    ev
}
