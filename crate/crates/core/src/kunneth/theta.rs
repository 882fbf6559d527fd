use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::KunnethError;
use crate::dg::{check_h0_action, cohomology, h0_ring, shift, CohomologyModule, CohomologySpace, DGModule, Degree};
use crate::evidence::{Check, Counterexample, Evidence};
use crate::exactlin::{Field, Matrix};
use crate::tensor::{tensor_over_algebra_from, tensor_over_ring, top_degree_terms, BalancedTensorSpace, RingActions};
use crate::tensor::{TensorComplex, TopDegreeTerms};

/// `θ : H^{i0}(M) ⊗_{H^0(A)} H^{j0}(N) -> H^{i0+j0}(M ⊗_A N)` together with
/// the data it was computed from and the checks it passed.
#[derive(Clone, Debug)]
pub struct KunnethWitness<F: Field> {
    pub i0: Degree,
    pub j0: Degree,
    /// `M` and `N` on windows ending at `i0` and `j0`
    pub m: DGModule<F>,
    pub n: DGModule<F>,
    /// `H^{i0}(M)` and `H^{j0}(N)`, computed on the translated modules; the
    /// bases agree with those of `M` and `N` in the original degrees
    pub h_m: CohomologyModule<F>,
    pub h_n: CohomologyModule<F>,
    /// the source, balanced over `H^0(A)`
    pub source: BalancedTensorSpace<F>,
    /// the same plain tensor product, balanced over `A^0`
    pub source_a0: BalancedTensorSpace<F>,
    /// `M ⊗_A N` in degrees `i0 + j0 - 1` and `i0 + j0`
    pub tensor: TensorComplex<F>,
    pub target: CohomologySpace<F>,
    pub theta: Matrix<F>,
    /// the map for the translated modules, `H^0(M[i0]) ⊗ H^0(N[j0]) -> H^0`
    pub theta_translated: Matrix<F>,
    /// `H^0(M[i0] ⊗ N[j0]) -> H^{i0+j0}(M ⊗ N)`
    pub transport: Matrix<F>,
    pub top: TopDegreeTerms<F>,
    pub evidence: Evidence,
}

impl<F: Field> KunnethWitness<F> {
    pub fn top_degree(&self) -> Degree {
        self.i0 + self.j0
    }

    /// `[m ⊗ n]` for `m` in `M^{i0}` and `n` in `N^{j0}`.
    pub fn class_of_product(&self, m: &[F::Elem], n: &[F::Elem]) -> Vec<F::Elem> {
        let v = self.tensor.class_of_pure(self.i0, m, self.j0, n);
        self.target.class_unchecked(&v)
    }

    /// `θ([m] ⊗ [n])`.
    pub fn apply_to_classes(&self, m: &[F::Elem], n: &[F::Elem]) -> Vec<F::Elem> {
        let cm = self.h_m.space().class_unchecked(m);
        let cn = self.h_n.space().class_unchecked(n);
        self.theta.mul_vec(&self.source.class_of_pair(&cm, &cn))
    }

    pub fn is_bijective(&self) -> bool {
        self.theta.is_invertible() || (self.theta.rows() == 0 && self.theta.cols() == 0)
    }
}

fn pad_to<F: Field>(m: &DGModule<F>, top: Degree) -> Result<DGModule<F>, KunnethError> {
    if m.hi() > top {
        return Err(KunnethError::AboveTop { hi: m.hi(), top });
    }
    Ok(m.with_window(m.lo().min(top - 1), top))
}

/// `θ` with the tops `i0 = hi(M)` and `j0 = hi(N)`.
pub fn theta<F: Field>(m: &DGModule<F>, n: &DGModule<F>) -> Result<KunnethWitness<F>, KunnethError> {
    theta_with_tops(m, n, m.hi(), n.hi())
}

/// `θ` for `M` concentrated in degrees `<= i0` and `N` in degrees `<= j0`,
/// computed by translating both tops to degree 0 and transporting back.
pub fn theta_with_tops<F: Field>(
    m: &DGModule<F>,
    n: &DGModule<F>,
    i0: Degree,
    j0: Degree,
) -> Result<KunnethWitness<F>, KunnethError> {
    let f = m.field();
    let (m, n) = (pad_to(m, i0)?, pad_to(n, j0)?);
    let t = i0 + j0;
    let h0 = h0_ring(m.algebra());
    let (ms, ns) = (shift(&m, i0), shift(&n, j0));
    let h_m = cohomology(&ms, 0, &h0);
    let h_n = cohomology(&ns, 0, &h0);
    let source = tensor_over_ring(f, &RingActions::cohomology_h0(&h_m), &RingActions::cohomology_h0(&h_n))
        .expect("both sides are H^0(A)-modules");
    let source_a0 = tensor_over_ring(f, &RingActions::cohomology_a0(&h_m), &RingActions::cohomology_a0(&h_n))
        .expect("both sides are A^0-modules");
    let top = top_degree_terms(&ms, &ns)?;
    let h_top = CohomologySpace::of(&top.tensor, 0);

    let mut ev = Evidence::new();
    ev.push(Check::from_bool(
        "H^0(A)-action on H(M) and H(N)",
        check_h0_action(&ms, &h_m, &h0) && check_h0_action(&ns, &h_n, &h0),
        "independent of lifts, unital, associative",
    ));
    ev.push(Check::from_bool(
        "balancing over H^0(A) and over A^0 agree",
        source.same_relations(&source_a0),
        format!(
            "relation rank {}",
            source.left_dim() * source.right_dim() - source.dim()
        ),
    ));
    ev.push(Check::from_bool(
        "dimensions agree",
        source.dim() == h_top.dim(),
        format!("source {}, target {}", source.dim(), h_top.dim()),
    ));

    // θ on the plain tensor product of the cohomologies: [x] ⊗ [y] -> [x ⊗ y]
    let on_pairs = h_top
        .class_map()
        .mul(&top.tensor.block_projection(0, 0))
        .mul(&h_m.space().rep_map().kron(h_n.space().rep_map()));
    let kills = on_pairs.mul(&source.space().reduced_relations().transpose());
    ev.push(if kills.is_zero() {
        Check::pass("theta kills the balancing relations", "")
    } else {
        Check::fail(
            "theta kills the balancing relations",
            Counterexample::new("a balancing relation has nonzero image"),
        )
    });
    let theta_translated = on_pairs.mul(source.section());

    let tensor = tensor_over_algebra_from(&m, &n, t - 1)?;
    let target = CohomologySpace::of(&tensor, t);
    let (transport, transport_check) = transport(&top.tensor, &h_top, &tensor, &target, i0, j0);
    ev.push(transport_check);
    let theta = transport.mul(&theta_translated);

    let mut w = KunnethWitness {
        i0,
        j0,
        m,
        n,
        h_m,
        h_n,
        source,
        source_a0,
        tensor,
        target,
        theta,
        theta_translated,
        transport,
        top,
        evidence: ev,
    };
    let bij = w.is_bijective();
    w.evidence.push(Check::from_bool(
        "theta is bijective",
        bij,
        format!("{} x {}, rank {}", w.theta.rows(), w.theta.cols(), w.theta.rank()),
    ));
    let sampled = check_defining_property(&w, 8, 0x0074_6865_7461);
    w.evidence.push(sampled);
    Ok(w)
}

/// Identification `H^0(M[i0] ⊗ N[j0]) -> H^{i0+j0}(M ⊗ N)` induced by
/// `x ⊗ y -> (-1)^{j0 |x|} x ⊗ y`, `|x|` being the degree in `M[i0]`.
fn transport<F: Field>(
    shifted: &TensorComplex<F>,
    h_shifted: &CohomologySpace<F>,
    tensor: &TensorComplex<F>,
    target: &CohomologySpace<F>,
    i0: Degree,
    j0: Degree,
) -> (Matrix<F>, Check) {
    let f = tensor.field();
    let free_map = |d: Degree| -> Matrix<F> {
        let mut s = Matrix::zeros(f, tensor.free_dim(d + i0 + j0), shifted.free_dim(d));
        for b in shifted.blocks(d) {
            if let Some(tb) = tensor.block(b.left_degree + i0, b.right_degree + j0) {
                let sign = f.sign(j0 * b.left_degree);
                s.set_block(tb.offset, b.offset, &Matrix::identity(f, b.len()).scale(&sign));
            }
        }
        s
    };
    let t = i0 + j0;
    let mut ok = true;
    let mut quotient_map = |d: Degree| -> Matrix<F> {
        let s = free_map(d);
        let (src, tgt) = (shifted.space(d), tensor.space(d + t));
        match (src, tgt) {
            (Some(src), Some(tgt)) => {
                let ps = tgt.projection().mul(&s);
                if !ps.mul(&src.reduced_relations().transpose()).is_zero() {
                    ok = false;
                }
                ps.mul(src.section())
            }
            _ => Matrix::zeros(f, tensor.dim(d + t), shifted.dim(d)),
        }
    };
    let q0 = quotient_map(0);
    let q1 = quotient_map(-1);
    // the differential of (M ⊗ N)[t] is (-1)^t d
    let chain = tensor.diff(t - 1).mul(&q1).scale(&f.sign(t)) == q0.mul(&shifted.diff(-1));
    let u = target.class_map().mul(&q0).mul(h_shifted.rep_map());
    let inv = u.is_invertible() || u.shape() == (0, 0);
    let check = Check::from_bool(
        "translation identification",
        ok && chain && inv,
        format!("respects relations: {ok}, chain map: {chain}, invertible: {inv}"),
    );
    (u, check)
}

/// `θ([m] ⊗ [n]) = [m ⊗ n]` for random `m` in `M^{i0}` and `n` in `N^{j0}`.
pub fn check_defining_property<F: Field>(w: &KunnethWitness<F>, samples: usize, seed: u64) -> Check {
    let f = w.m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = f.sample_vec(&mut rng, w.m.dim(w.i0));
        let y = f.sample_vec(&mut rng, w.n.dim(w.j0));
        if w.apply_to_classes(&x, &y) != w.class_of_product(&x, &y) {
            let mut v = x.clone();
            v.extend(y);
            return Check::fail(
                "theta([m] ⊗ [n]) = [m ⊗ n]",
                Counterexample::new("sampled pair (m, n) concatenated").with_vector(f, &v),
            );
        }
    }
    Check::pass("theta([m] ⊗ [n]) = [m ⊗ n]", format!("{samples} sampled pairs"))
}

/// `θ` computed without translating: classes of `rep(x) ⊗ rep(y)` directly in
/// degree `i0 + j0`.
pub fn theta_at<F: Field>(w: &KunnethWitness<F>) -> Matrix<F> {
    let hm = CohomologySpace::of(&w.m, w.i0);
    let hn = CohomologySpace::of(&w.n, w.j0);
    w.target
        .class_map()
        .mul(&w.tensor.block_projection(w.i0, w.j0))
        .mul(&hm.rep_map().kron(hn.rep_map()))
        .mul(w.source.section())
}

/// Replacing `m`, `n` by `m + d(m')`, `n + d(n')` leaves `[m ⊗ n]` unchanged.
pub fn check_representative_independence<F: Field, R: Rng + ?Sized>(
    w: &KunnethWitness<F>,
    samples: usize,
    rng: &mut R,
) -> Check {
    let f = w.m.field();
    let name = "representative independence";
    let (i0, j0) = (w.i0, w.j0);
    let (dm, dn) = (w.m.diff(i0 - 1), w.n.diff(j0 - 1));
    for s in 0..samples {
        let x = f.sample_vec(rng, w.m.dim(i0));
        let y = f.sample_vec(rng, w.n.dim(j0));
        let x2 = f.vec_add(&x, &dm.mul_vec(&f.sample_vec(rng, w.m.dim(i0 - 1))));
        let y2 = f.vec_add(&y, &dn.mul_vec(&f.sample_vec(rng, w.n.dim(j0 - 1))));
        let same_m = w.h_m.space().class_unchecked(&x) == w.h_m.space().class_unchecked(&x2);
        let same_n = w.h_n.space().class_unchecked(&y) == w.h_n.space().class_unchecked(&y2);
        if !same_m || !same_n || w.class_of_product(&x, &y) != w.class_of_product(&x2, &y2) {
            let mut v = x2.clone();
            v.extend(y2);
            return Check::fail(
                name,
                Counterexample::new(format!("perturbed pair {s} changes the class")).with_vector(f, &v),
            );
        }
    }
    Check::pass(name, format!("{samples} perturbations"))
}
