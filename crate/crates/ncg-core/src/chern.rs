//! K-theory pairings: trace pairing, cyclic-cocycle pairings with
//! idempotents and invertibles, (b,B) Chern character chains, and
//! finite-dimensional Fredholm modules with their index formula.
//!
//! Conventions pinned by executable constraints rather than trusted:
//! the even character chain is Ch_0 = tr(e), Ch_{2k} = (-1)^k (2k)!/k!
//! tr((e-1/2) (x) e^{(x)2k}) — a (b+B)-cycle in the normalized complex —
//! and the (b,B) pairing uses coefficients (2k)!/k! (no alternating sign),
//! the unique normalization that is both coboundary-invariant and agrees
//! with tau(e) on (tau, 0, ..., 0). See the tests alongside.

use std::sync::Arc;

use crate::algebra::{AMatrix, FinAlgebra, LinearFunctional, Representation};
use crate::cochain::{
    apply_operator, apply_operator_chain, is_degenerate, Chain, CoeffMode, Cochain, OperatorKind,
};
use crate::error::{NcgError, Result};
use crate::laurent::{LaurentElement, LazyCochain, ZChain};
use crate::linalg::{dmat_eq, dmat_identity, dmat_mul, dmat_zero, DenseMat, SparseMat, SparseVec};
use crate::scalar::CycloScalar;

/// An idempotent matrix over a FinAlgebra.
pub struct KIdempotent(pub AMatrix);

impl KIdempotent {
    pub fn new(m: AMatrix) -> Result<Self> {
        if !m.is_idempotent() {
            return Err(NcgError::NotIdempotent);
        }
        Ok(KIdempotent(m))
    }
}

/// An invertible matrix over a FinAlgebra with an explicit inverse.
pub struct KInvertible {
    pub u: AMatrix,
    pub u_inv: AMatrix,
}

impl KInvertible {
    pub fn new(u: AMatrix, u_inv: AMatrix) -> Result<Self> {
        let id = AMatrix::identity(&u.parent, u.size);
        if !u.mul(&u_inv).eq(&id) || !u_inv.mul(&u).eq(&id) {
            return Err(NcgError::NotInvertible);
        }
        Ok(KInvertible { u, u_inv })
    }
}

/// tau([e]) = sum_i tau(e_ii).
pub fn trace_pairing(tau: &LinearFunctional, e: &KIdempotent) -> Result<CycloScalar> {
    if !tau.is_trace() {
        return Err(NcgError::NotCyclicCocycle);
    }
    Ok(tau.eval(&e.0.diagonal_sum().coeffs))
}

/// Evaluate the matrix amplification phi_K on matrices over the algebra:
/// phi_K(M_0, ..., M_n) = sum over index cycles of phi on the entries.
pub fn amplified_eval(phi: &Cochain, mats: &[&AMatrix]) -> CycloScalar {
    assert_eq!(phi.mode, CoeffMode::Scalar);
    assert_eq!(mats.len(), phi.degree + 1);
    let k = mats[0].size;
    let n = phi.degree;
    let mut acc = CycloScalar::zero();
    // iterate over (i_0, ..., i_n) in [k]^{n+1}
    let total = k.pow((n + 1) as u32);
    for idx in 0..total {
        let mut t = Vec::with_capacity(n + 1);
        let mut rest = idx;
        for _ in 0..=n {
            t.push(rest % k);
            rest /= k;
        }
        let args: Vec<&[CycloScalar]> = (0..=n)
            .map(|s| mats[s].entries[t[s]][t[(s + 1) % (n + 1)]].as_slice())
            .collect();
        let v = phi.eval(&args);
        if !v.is_zero() {
            acc = acc.add(&v);
        }
    }
    acc
}

fn verify_cyclic_cocycle(phi: &Cochain) -> Result<()> {
    if !phi.is_cyclic()? {
        return Err(NcgError::NotCyclicCocycle);
    }
    if !apply_operator(OperatorKind::B, phi)?.is_zero() {
        return Err(NcgError::NotCyclicCocycle);
    }
    Ok(())
}

/// Even pairing <[phi], [e]> = phi_K(e, ..., e) for a cyclic 2n-cocycle.
pub fn pair_even(phi: &Cochain, e: &KIdempotent) -> Result<CycloScalar> {
    if phi.degree % 2 != 0 {
        return Err(NcgError::Invalid("pair_even needs even degree".into()));
    }
    verify_cyclic_cocycle(phi)?;
    let mats: Vec<&AMatrix> = (0..=phi.degree).map(|_| &e.0).collect();
    Ok(amplified_eval(phi, &mats))
}

/// Odd pairing <[phi], [u]> = phi_K(u, u^{-1}, ..., u, u^{-1}) for a
/// normalized cyclic cocycle of odd degree.
pub fn pair_odd(phi: &Cochain, u: &KInvertible) -> Result<CycloScalar> {
    if phi.degree % 2 != 1 {
        return Err(NcgError::Invalid("pair_odd needs odd degree".into()));
    }
    if !phi.is_normalized() {
        return Err(NcgError::NotNormalizedCochain);
    }
    verify_cyclic_cocycle(phi)?;
    let mats: Vec<&AMatrix> = (0..=phi.degree)
        .map(|s| if s % 2 == 0 { &u.u } else { &u.u_inv })
        .collect();
    Ok(amplified_eval(phi, &mats))
}

/// Odd pairing on the lazy Laurent algebra: phi(u, u^{-1}, ..., u, u^{-1}).
/// Cyclicity, closedness, and normalization are verified on a finite window
/// covering the supports involved.
pub fn pair_odd_lazy(
    phi: &LazyCochain,
    u: &LaurentElement,
    u_inv: &LaurentElement,
) -> Result<CycloScalar> {
    if phi.degree % 2 != 1 {
        return Err(NcgError::Invalid("pair_odd needs odd degree".into()));
    }
    let w = u
        .support()
        .iter()
        .chain(u_inv.support().iter())
        .map(|k| k.unsigned_abs() as i64)
        .max()
        .unwrap_or(1)
        .max(2);
    if !crate::laurent::check_cyclic_cocycle_on_window(phi, w)? {
        return Err(NcgError::NotCyclicCocycle);
    }
    // normalization: zero whenever some argument is z^0
    let n = phi.degree;
    for slot in 0..=n {
        let width = (2 * w + 1) as usize;
        for idx in 0..width.pow(n as u32) {
            let mut t = Vec::with_capacity(n + 1);
            let mut rest = idx;
            for s in 0..=n {
                if s == slot {
                    t.push(0);
                } else {
                    t.push((rest % width) as i64 - w);
                    rest /= width;
                }
            }
            if !phi.eval_basis(&t).is_zero() {
                return Err(NcgError::NotNormalizedCochain);
            }
        }
    }
    let args: Vec<&LaurentElement> = (0..=phi.degree)
        .map(|s| if s % 2 == 0 { u } else { u_inv })
        .collect();
    Ok(phi.eval_elements(&args))
}

/// Generalized trace M_K(A)^{(x)(m+1)} -> A^{(x)(m+1)} applied to an
/// elementary tensor of matrices.
fn chain_trace(alg: &Arc<FinAlgebra>, mats: &[&AMatrix]) -> Chain {
    let k = mats[0].size;
    let m = mats.len() - 1;
    let mut out = Chain::zero(alg, m);
    let total = k.pow((m + 1) as u32);
    for idx in 0..total {
        let mut t = Vec::with_capacity(m + 1);
        let mut rest = idx;
        for _ in 0..=m {
            t.push(rest % k);
            rest /= k;
        }
        let factors: Vec<Vec<CycloScalar>> = (0..=m)
            .map(|s| mats[s].entries[t[s]][t[(s + 1) % (m + 1)]].clone())
            .collect();
        out = out.add(&Chain::from_tensor(alg, &factors));
    }
    out
}

fn factorial_ratio_2k_over_k(k: usize) -> CycloScalar {
    // (2k)! / k!
    let mut acc = CycloScalar::one();
    for j in (k + 1)..=(2 * k) {
        acc = acc.mul(&CycloScalar::from_int(j as i64));
    }
    acc
}

/// Even Connes-Chern character in the normalized (b,B) bicomplex:
/// components Ch_0 = tr(e), Ch_{2k} = (-1)^k (2k)!/k! tr((e-1/2) (x) e^{2k}),
/// returned for 2k <= target_degree. The (b+B)-cycle property is asserted
/// in the normalized complex before returning.
pub fn chern_character_even(e: &KIdempotent, target_degree: usize) -> Result<Vec<Chain>> {
    let alg = &e.0.parent;
    let half = CycloScalar::from_ratio(1, 2);
    let e_half = {
        let id = AMatrix::identity(alg, e.0.size);
        e.0.sub(&id.scale(&half))
    };
    let mut comps = Vec::new();
    for k in 0..=(target_degree / 2) {
        if k == 0 {
            comps.push(chain_trace(alg, &[&e.0]));
        } else {
            let mut mats: Vec<&AMatrix> = vec![&e_half];
            for _ in 0..2 * k {
                mats.push(&e.0);
            }
            let mut sign_fac = factorial_ratio_2k_over_k(k);
            if k % 2 == 1 {
                sign_fac = sign_fac.neg();
            }
            comps.push(chain_trace(alg, &mats).scale(&sign_fac));
        }
    }
    // normalized (b+B)-cycle check on the spots the truncation can satisfy
    for k in 1..comps.len() {
        let b_part = apply_operator_chain(OperatorKind::B, &comps[k])?;
        let bb_part = apply_operator_chain(OperatorKind::ConnesB, &comps[k - 1])?;
        let total = b_part.add(&bb_part);
        if !is_degenerate(&total) {
            return Err(NcgError::Internal(
                "(b+B) Ch(e) != 0 in the normalized complex".into(),
            ));
        }
    }
    Ok(comps)
}

/// Odd Connes-Chern character over the lazy Laurent algebra:
/// Ch_{2k+1}(u) = (-1)^k k! tr((u (x) u^{-1})^{(x)(k+1)}), as sparse chains.
pub fn chern_character_odd_lazy(
    u: &LaurentElement,
    u_inv: &LaurentElement,
    target_degree: usize,
) -> Result<Vec<ZChain>> {
    if u.mul(u_inv).sub(&LaurentElement::one()).is_zero() == false {
        return Err(NcgError::NotInvertible);
    }
    let mut comps = Vec::new();
    let mut k = 0usize;
    while 2 * k + 1 <= target_degree {
        let mut factors: Vec<&LaurentElement> = Vec::new();
        for _ in 0..=k {
            factors.push(u);
            factors.push(u_inv);
        }
        let mut fac = CycloScalar::one();
        for j in 2..=k {
            fac = fac.mul(&CycloScalar::from_int(j as i64));
        }
        if k % 2 == 1 {
            fac = fac.neg();
        }
        comps.push(ZChain::from_tensor(&factors).scale(&fac));
        k += 1;
    }
    // cycle check in the normalized complex: b Ch_1 = 0 and
    // b Ch_{2k+1} + B Ch_{2k-1} degenerate for interior spots
    if let Some(first) = comps.first() {
        if !first.boundary_b().normalized().is_zero() {
            return Err(NcgError::Internal("b Ch_1(u) != 0".into()));
        }
    }
    for k in 1..comps.len() {
        let total = comps[k].boundary_b().add(&comps[k - 1].boundary_connes());
        if !total.normalized().is_zero() {
            return Err(NcgError::Internal(
                "(b+B) Ch(u) != 0 in the normalized complex".into(),
            ));
        }
    }
    Ok(comps)
}

/// Verify that (phi_0, phi_2, ..., phi_{2K}) is a (b+B)-cocycle in the
/// cochain total complex: b phi_{2k} + B phi_{2k+2} = 0 and b phi_{2K} = 0.
fn verify_bb_cocycle(tuple: &[Cochain]) -> Result<()> {
    for (k, phi) in tuple.iter().enumerate() {
        if phi.mode != CoeffMode::Scalar || phi.degree != 2 * k {
            return Err(NcgError::NotBbCocycle);
        }
    }
    for k in 0..tuple.len() {
        let b = apply_operator(OperatorKind::B, &tuple[k])?;
        let total = if k + 1 < tuple.len() {
            let bb = apply_operator(OperatorKind::ConnesB, &tuple[k + 1])?;
            crate::linalg::vec_add(&b.values, &bb.values)
        } else {
            b.values
        };
        if total.iter().any(|v| !v.is_zero()) {
            return Err(NcgError::NotBbCocycle);
        }
    }
    Ok(())
}

/// Pairing of a normalized (b,B)-cocycle tuple with an idempotent:
/// <phi, e> = phi_0(e) + sum_{k>=1} (2k)!/k! phi_{2k}(e - 1/2, e, ..., e).
pub fn pair_bb(tuple: &[Cochain], e: &KIdempotent) -> Result<CycloScalar> {
    if tuple.is_empty() {
        return Ok(CycloScalar::zero());
    }
    verify_bb_cocycle(tuple)?;
    let alg = &e.0.parent;
    let half = CycloScalar::from_ratio(1, 2);
    let e_half = {
        let id = AMatrix::identity(alg, e.0.size);
        e.0.sub(&id.scale(&half))
    };
    let mut acc = amplified_eval(&tuple[0], &[&e.0]);
    for (k, phi) in tuple.iter().enumerate().skip(1) {
        let mut mats: Vec<&AMatrix> = vec![&e_half];
        for _ in 0..2 * k {
            mats.push(&e.0);
        }
        let term = amplified_eval(phi, &mats).mul(&factorial_ratio_2k_over_k(k));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// A finite-dimensional even Fredholm module: grading, odd symmetry F with
/// F^2 = I, and an even representation of a *-algebra.
pub struct FredholmModule {
    pub rep: Representation,
    pub grading: Vec<i32>,
    pub f_op: DenseMat,
}

impl FredholmModule {
    pub fn new(rep: Representation, grading: Vec<i32>, f_op: DenseMat) -> Result<Self> {
        if !rep.parent.has_involution() {
            return Err(NcgError::MissingInvolution);
        }
        rep.validate()?;
        let n = rep.carrier_dim;
        if grading.len() != n || grading.iter().any(|g| *g != 1 && *g != -1) {
            return Err(NcgError::Invalid("grading must be a diagonal of ±1".into()));
        }
        // F^2 = I
        if !dmat_eq(&dmat_mul(&f_op, &f_op), &dmat_identity(n)) {
            return Err(NcgError::Invalid("F^2 != I".into()));
        }
        // F odd, representation even
        let eps: DenseMat = {
            let mut m = dmat_zero(n, n);
            for (i, g) in grading.iter().enumerate() {
                m[i][i] = CycloScalar::from_int(*g as i64);
            }
            m
        };
        let fe = dmat_mul(&f_op, &eps);
        let ef = dmat_mul(&eps, &f_op);
        let sum = crate::linalg::dmat_add(&fe, &ef);
        if !crate::linalg::dmat_is_zero(&sum) {
            return Err(NcgError::Invalid("F is not odd".into()));
        }
        for m in &rep.matrices {
            let me = dmat_mul(m, &eps);
            let em = dmat_mul(&eps, m);
            if !dmat_eq(&me, &em) {
                return Err(NcgError::Invalid("representation is not even".into()));
            }
        }
        Ok(FredholmModule {
            rep,
            grading,
            f_op,
        })
    }

    fn eps_mat(&self) -> DenseMat {
        let n = self.rep.carrier_dim;
        let mut m = dmat_zero(n, n);
        for (i, g) in self.grading.iter().enumerate() {
            m[i][i] = CycloScalar::from_int(*g as i64);
        }
        m
    }
}

/// The character cochain phi_n(a_0, ..., a_n) = Tr(eps a_0 [F,a_1]...[F,a_n])
/// for even n (for n = 0 this equals (1/2) Tr(eps F [F, a])). Odd n yields
/// the zero cochain with a warning flag (those characters vanish).
pub fn fredholm_character(fm: &FredholmModule, n: usize) -> Result<(Cochain, bool)> {
    let alg = &fm.rep.parent;
    if n % 2 == 1 {
        return Ok((Cochain::zero_scalar(alg, n), true));
    }
    let eps = fm.eps_mat();
    let d = alg.dim();
    let commutator = |i: usize| -> DenseMat {
        let pf = dmat_mul(&fm.f_op, &fm.rep.matrices[i]);
        let fp = dmat_mul(&fm.rep.matrices[i], &fm.f_op);
        crate::linalg::dmat_sub(&pf, &fp)
    };
    let comms: Vec<DenseMat> = (0..d).map(commutator).collect();
    let phi = Cochain::scalar_from_fn(alg, n, |t| {
        let mut m = dmat_mul(&eps, &fm.rep.matrices[t[0]]);
        for &i in &t[1..] {
            m = dmat_mul(&m, &comms[i]);
        }
        crate::linalg::dmat_trace(&m)
    });
    verify_cyclic_cocycle(&phi)
        .map_err(|_| NcgError::Internal("Fredholm character is not a cyclic cocycle".into()))?;
    Ok((phi, false))
}

fn column_space_basis(cols: Vec<Vec<CycloScalar>>) -> Vec<Vec<CycloScalar>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let dim = cols[0].len();
    let rows: Vec<SparseVec> = cols.iter().map(|c| SparseVec::from_dense(c)).collect();
    let (rref_rows, _) = SparseMat::from_rows(dim, rows).rref();
    rref_rows.into_iter().map(|r| r.to_dense(dim)).collect()
}

/// Index of the compressed corner operator F_e^+ = (e F e)|_{eH^+ -> eH^-},
/// computed as dim ker P' - dim ker Q' and asserted equal to the character
/// pairing <phi_0, e>.
pub fn fredholm_index(fm: &FredholmModule, e: &KIdempotent) -> Result<i64> {
    let alg = &fm.rep.parent;
    if !Arc::ptr_eq(alg, &e.0.parent) && alg.dim() != e.0.parent.dim() {
        return Err(NcgError::DimensionMismatch("module vs class algebra".into()));
    }
    let k = e.0.size;
    let n = fm.rep.carrier_dim;
    let big = k * n;
    // amplified pi(e): block (s,t) = pi(e_{s,t})
    let mut pe = dmat_zero(big, big);
    for s in 0..k {
        for t in 0..k {
            let m = fm.rep.apply(&e.0.entries[s][t]);
            for r in 0..n {
                for c in 0..n {
                    pe[s * n + r][t * n + c] = m[r][c].clone();
                }
            }
        }
    }
    // amplified F: block diagonal
    let mut fbig = dmat_zero(big, big);
    for s in 0..k {
        for r in 0..n {
            for c in 0..n {
                fbig[s * n + r][s * n + c] = fm.f_op[r][c].clone();
            }
        }
    }
    let grading_of = |row: usize| fm.grading[row % n];
    // bases of e H^+ and e H^-: columns of pe restricted to graded inputs
    let mut plus_cols = Vec::new();
    let mut minus_cols = Vec::new();
    for c in 0..big {
        let col: Vec<CycloScalar> = (0..big).map(|r| pe[r][c].clone()).collect();
        if col.iter().all(|v| v.is_zero()) {
            continue;
        }
        if grading_of(c) == 1 {
            plus_cols.push(col);
        } else {
            minus_cols.push(col);
        }
    }
    let wp = column_space_basis(plus_cols);
    let wm = column_space_basis(minus_cols);
    // P' w = pe (F w) expressed in wm coordinates; Q' likewise
    let express = |basis: &[Vec<CycloScalar>], v: &[CycloScalar]| -> Option<Vec<CycloScalar>> {
        let rows: Vec<SparseVec> = basis.iter().map(|b| SparseVec::from_dense(b)).collect();
        let m = SparseMat::from_rows(big, rows).transpose();
        m.solve(v)
    };
    let build = |src: &[Vec<CycloScalar>], dst: &[Vec<CycloScalar>]| -> Result<SparseMat> {
        let mut m = SparseMat::zero(dst.len(), src.len());
        for (j, w) in src.iter().enumerate() {
            let fw = crate::linalg::dmat_vec(&fbig, w);
            let efw = crate::linalg::dmat_vec(&pe, &fw);
            let coords = express(dst, &efw)
                .ok_or_else(|| NcgError::Internal("corner operator leaves eH".into()))?;
            for (r, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    m.rows[r].push(j, v);
                }
            }
        }
        Ok(m.normalized())
    };
    let p_prime = build(&wp, &wm)?;
    let q_prime = build(&wm, &wp)?;
    let ker_p = wp.len() - p_prime.rank();
    let ker_q = wm.len() - q_prime.rank();
    let index = ker_p as i64 - ker_q as i64;
    // assert the index formula against the character pairing
    let (phi0, _) = fredholm_character(fm, 0)?;
    let pairing = pair_even(&phi0, e)?;
    if pairing != CycloScalar::from_int(index) {
        return Err(NcgError::Internal(format!(
            "index {} != character pairing {}",
            index, pairing
        )));
    }
    Ok(index)
}

/// The standard toy module: A = C (+) C acting diagonally on C^2 with
/// grading diag(1, -1) and F the antidiagonal flip.
pub fn toy_fredholm_module() -> Result<FredholmModule> {
    let alg = FinAlgebra::functions(2)?;
    let one = CycloScalar::one;
    let zero = CycloScalar::zero;
    let rep = Representation {
        parent: alg.clone(),
        carrier_dim: 2,
        matrices: vec![
            vec![vec![one(), zero()], vec![zero(), zero()]],
            vec![vec![zero(), zero()], vec![zero(), one()]],
        ],
        cyclic_vector: None,
    };
    let f_op = vec![vec![zero(), one()], vec![one(), zero()]];
    FredholmModule::new(rep, vec![1, -1], f_op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::trace_space;
    use rand::{Rng, SeedableRng};

    fn m2_with_trace() -> (Arc<FinAlgebra>, LinearFunctional) {
        let m2 = FinAlgebra::matrix(2).unwrap();
        let ts = trace_space(&m2);
        (m2.clone(), ts.into_iter().next().unwrap())
    }

    #[test]
    fn trace_pairing_values() {
        let (m2, tau) = m2_with_trace();
        // normalize tau to the matrix trace: tau(E11) = 1
        let scale = tau.values[0].inv();
        let tau = LinearFunctional::new(
            m2.clone(),
            tau.values.iter().map(|v| v.mul(&scale)).collect(),
        );
        // rank-1 projection E11 as 1x1 matrix over M_2
        let mut e11 = vec![CycloScalar::zero(); 4];
        e11[0] = CycloScalar::one();
        let e = KIdempotent::new(AMatrix {
            parent: m2.clone(),
            size: 1,
            entries: vec![vec![e11]],
        })
        .unwrap();
        assert_eq!(trace_pairing(&tau, &e).unwrap(), CycloScalar::one());
        let zero = KIdempotent::new(AMatrix::zero(&m2, 2)).unwrap();
        assert!(trace_pairing(&tau, &zero).unwrap().is_zero());
    }

    #[test]
    fn torus_trace_pairing_half() {
        // (normalized torus trace, e = (1+u)/2) -> 1/2
        let t = FinAlgebra::rational_torus(1, 2).unwrap();
        let ts = trace_space(&t);
        let tau = &ts[0];
        let norm = tau.eval(t.unit());
        let tau = LinearFunctional::new(
            t.clone(),
            tau.values.iter().map(|v| v.div(&norm)).collect(),
        );
        let mut coeffs = vec![CycloScalar::zero(); 4];
        coeffs[0] = CycloScalar::from_ratio(1, 2); // 1/2 * 1
        coeffs[2] = CycloScalar::from_ratio(1, 2); // 1/2 * u
        let e = KIdempotent::new(AMatrix {
            parent: t.clone(),
            size: 1,
            entries: vec![vec![coeffs]],
        })
        .unwrap();
        assert_eq!(
            trace_pairing(&tau, &e).unwrap(),
            CycloScalar::from_ratio(1, 2)
        );
    }

    #[test]
    fn pair_even_agrees_with_trace_on_degree_zero() {
        let (m2, tau) = m2_with_trace();
        let phi = Cochain {
            alg: m2.clone(),
            degree: 0,
            mode: CoeffMode::Scalar,
            values: tau.values.clone(),
        };
        let mut e11 = vec![CycloScalar::zero(); 4];
        e11[0] = CycloScalar::one();
        let e = KIdempotent::new(AMatrix {
            parent: m2.clone(),
            size: 1,
            entries: vec![vec![e11]],
        })
        .unwrap();
        assert_eq!(
            pair_even(&phi, &e).unwrap(),
            trace_pairing(&tau, &e).unwrap()
        );
    }

    #[test]
    fn winding_pairings() {
        let phi = LazyCochain::winding();
        let z = LaurentElement::monomial(1, CycloScalar::one());
        let zi = LaurentElement::monomial(-1, CycloScalar::one());
        assert_eq!(
            pair_odd_lazy(&phi, &z, &zi).unwrap(),
            CycloScalar::from_int(-1)
        );
        let z2 = LaurentElement::monomial(2, CycloScalar::one());
        let z2i = LaurentElement::monomial(-2, CycloScalar::one());
        assert_eq!(
            pair_odd_lazy(&phi, &z2, &z2i).unwrap(),
            CycloScalar::from_int(-2)
        );
        // u = 1 pairs to zero (normalized cocycle kills units)
        let one = LaurentElement::one();
        assert!(pair_odd_lazy(&phi, &one, &one).unwrap().is_zero());
    }

    #[test]
    fn odd_character_pairs_like_pair_odd() {
        let z = LaurentElement::monomial(1, CycloScalar::one());
        let zi = LaurentElement::monomial(-1, CycloScalar::one());
        let ch = chern_character_odd_lazy(&z, &zi, 3).unwrap();
        let phi = LazyCochain::winding();
        assert_eq!(ch[0].pair(&phi), pair_odd_lazy(&phi, &z, &zi).unwrap());
    }

    #[test]
    fn even_character_is_normalized_cycle_and_pairs_to_trace() {
        let (m2, tau) = m2_with_trace();
        let scale = tau.values[0].inv();
        let tau_vals: Vec<CycloScalar> = tau.values.iter().map(|v| v.mul(&scale)).collect();
        let mut e11 = vec![CycloScalar::zero(); 4];
        e11[0] = CycloScalar::one();
        let e = KIdempotent::new(AMatrix {
            parent: m2.clone(),
            size: 1,
            entries: vec![vec![e11]],
        })
        .unwrap();
        let ch = chern_character_even(&e, 4).unwrap();
        assert_eq!(ch.len(), 3);
        // degree-0 component pairs with the matrix trace to 1
        let tau0 = Cochain {
            alg: m2.clone(),
            degree: 0,
            mode: CoeffMode::Scalar,
            values: tau_vals,
        };
        assert_eq!(ch[0].pair(&tau0), CycloScalar::one());
    }

    #[test]
    fn character_of_unit_idempotent_is_degenerate_above_zero() {
        let alg = FinAlgebra::functions(2).unwrap();
        let e = KIdempotent::new(AMatrix::identity(&alg, 1)).unwrap();
        let ch = chern_character_even(&e, 4).unwrap();
        for c in &ch[1..] {
            assert!(is_degenerate(c), "components of degree >= 2 vanish normalized");
        }
    }

    #[test]
    fn pair_bb_trace_tuple() {
        let (m2, tau) = m2_with_trace();
        let tuple = vec![
            Cochain {
                alg: m2.clone(),
                degree: 0,
                mode: CoeffMode::Scalar,
                values: tau.values.clone(),
            },
            Cochain::zero_scalar(&m2, 2),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            // random idempotent: conjugate E11 by a random invertible
            let e = random_idempotent(&m2, 2, &mut rng);
            let expect = trace_pairing(
                &LinearFunctional::new(m2.clone(), tau.values.clone()),
                &e,
            )
            .unwrap();
            assert_eq!(pair_bb(&tuple, &e).unwrap(), expect);
        }
    }

    #[test]
    fn pair_bb_vanishes_on_coboundaries() {
        // tuples (B psi, b psi) for normalized psi of degree 1 are
        // (b+B)-coboundaries; their pairing with any idempotent must vanish.
        // This test pins the (2k)!/k! coefficient normalization.
        let alg = FinAlgebra::functions(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        // normalized degree-1 cochains: phi(1, -) = phi(-, 1) = 0
        let degen = {
            let mut rows = Vec::new();
            for slot in 0..2usize {
                for other in 0..2usize {
                    let mut sv = SparseVec::new();
                    for (k, u) in alg.unit().iter().enumerate() {
                        if u.is_zero() {
                            continue;
                        }
                        let t = if slot == 0 { [k, other] } else { [other, k] };
                        sv.push(crate::cochain::tuple_index(2, &t), u.clone());
                    }
                    rows.push(sv.normalize());
                }
            }
            rows
        };
        let normalized_basis = SparseMat::from_rows(4, degen).nullspace();
        assert!(!normalized_basis.is_empty());
        for _ in 0..10 {
            let mut vals = vec![CycloScalar::zero(); 4];
            for b in &normalized_basis {
                let c = CycloScalar::from_int(rng.gen_range(-3..=3));
                vals = crate::linalg::vec_add(&vals, &crate::linalg::vec_scale(b, &c));
            }
            let psi = Cochain {
                alg: alg.clone(),
                degree: 1,
                mode: CoeffMode::Scalar,
                values: vals,
            };
            let phi0 = apply_operator(OperatorKind::ConnesB, &psi).unwrap();
            let phi2 = apply_operator(OperatorKind::B, &psi).unwrap();
            let e = random_idempotent(&alg, 2, &mut rng);
            let v = pair_bb(&[phi0, phi2], &e).unwrap();
            assert!(v.is_zero(), "coboundary pairing must vanish, got {}", v);
        }
    }

    pub fn random_idempotent(
        alg: &Arc<FinAlgebra>,
        size: usize,
        rng: &mut impl Rng,
    ) -> KIdempotent {
        // u e u^{-1} for e = diag(1, 0, ...) over the unit of the algebra and
        // u = I + strictly upper triangular noise (always invertible)
        let mut e = AMatrix::zero(alg, size);
        e.entries[0][0] = alg.unit().to_vec();
        let mut u = AMatrix::identity(alg, size);
        let mut uinv = AMatrix::identity(alg, size);
        for r in 0..size {
            for c in r + 1..size {
                let coeff = CycloScalar::from_int(rng.gen_range(-2..=2));
                let mut v = vec![CycloScalar::zero(); alg.dim()];
                for (k, un) in alg.unit().iter().enumerate() {
                    v[k] = un.mul(&coeff);
                }
                u.entries[r][c] = v.clone();
                uinv.entries[r][c] = crate::linalg::vec_scale(&v, &CycloScalar::from_int(-1));
            }
        }
        // for a single off-diagonal band, (I + N)^{-1} = I - N when N^2 = 0;
        // with size 2 that is exact
        assert!(size <= 2, "helper supports size <= 2");
        let id = AMatrix::identity(alg, size);
        assert!(u.mul(&uinv).eq(&id));
        KIdempotent::new(u.mul(&e).mul(&uinv)).unwrap()
    }

    #[test]
    fn fredholm_toy_module() {
        let fm = toy_fredholm_module().unwrap();
        let (phi0, warned) = fredholm_character(&fm, 0).unwrap();
        assert!(!warned);
        // phi_0(a, b) = a - b
        let alg = fm.rep.parent.clone();
        let a = phi0.eval(&[&[CycloScalar::from_int(3), CycloScalar::from_int(1)]]);
        assert_eq!(a, CycloScalar::from_int(2));
        // phi_0(1) = 0
        assert!(phi0.eval(&[alg.unit()]).is_zero());
        // odd character vanishes with warning
        let (phi1, warned) = fredholm_character(&fm, 1).unwrap();
        assert!(warned && phi1.is_zero());
        // index of e = (1, 0) is 1
        let mut e10 = vec![CycloScalar::zero(); 2];
        e10[0] = CycloScalar::one();
        let e = KIdempotent::new(AMatrix {
            parent: alg.clone(),
            size: 1,
            entries: vec![vec![e10]],
        })
        .unwrap();
        assert_eq!(fredholm_index(&fm, &e).unwrap(), 1);
        // e = 0 and e = 1
        let zero = KIdempotent::new(AMatrix::zero(&alg, 1)).unwrap();
        assert_eq!(fredholm_index(&fm, &zero).unwrap(), 0);
        let one = KIdempotent::new(AMatrix::identity(&alg, 1)).unwrap();
        assert_eq!(fredholm_index(&fm, &one).unwrap(), 0);
    }
}
