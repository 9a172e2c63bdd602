//! Wedderburn decomposition of split semisimple algebras and stable
//! equivalence of idempotents by block-wise ranks.

use std::sync::Arc;

use crate::algebra::{AMatrix, FinAlgebra};
use crate::error::{NcgError, Result};
use crate::linalg::{vec_is_zero, SparseMat, SparseVec};
use crate::scalar::{CycloScalar, Rat};

/// Decomposition data: block sizes n_i with A = (+) M_{n_i}, together with
/// the primitive central idempotents in basis coordinates (same order).
pub struct WedderburnData {
    pub sizes: Vec<usize>,
    pub central_idempotents: Vec<Vec<CycloScalar>>,
}

fn regular_trace(alg: &FinAlgebra, a: &[CycloScalar]) -> CycloScalar {
    let d = alg.dim();
    let mut acc = CycloScalar::zero();
    for k in 0..d {
        let mut ek = vec![CycloScalar::zero(); d];
        ek[k] = CycloScalar::one();
        let prod = alg.mul_vec(a, &ek);
        acc = acc.add(&prod[k]);
    }
    acc
}

/// Radical check via the trace form of the regular representation:
/// in characteristic zero the algebra is semisimple iff the form
/// T(a, b) = tr(L_{ab}) is nondegenerate.
pub fn is_semisimple(alg: &FinAlgebra) -> bool {
    let d = alg.dim();
    let mut t = SparseMat::zero(d, d);
    for i in 0..d {
        for j in 0..d {
            let prod = alg.basis_product(i, j).to_dense(d);
            let v = regular_trace(alg, &prod);
            t.rows[i].push(j, v);
        }
    }
    t.normalized().rank() == d
}

/// Basis of the center {x : e_i x = x e_i for all i}.
pub fn center_basis(alg: &FinAlgebra) -> Vec<Vec<CycloScalar>> {
    let d = alg.dim();
    let mut m = SparseMat::zero(d * d, d);
    for i in 0..d {
        let mut ei = vec![CycloScalar::zero(); d];
        ei[i] = CycloScalar::one();
        for c in 0..d {
            let mut ec = vec![CycloScalar::zero(); d];
            ec[c] = CycloScalar::one();
            let lhs = alg.mul_vec(&ei, &ec);
            let rhs = alg.mul_vec(&ec, &ei);
            for (r, (x, y)) in lhs.iter().zip(rhs.iter()).enumerate() {
                let v = x.sub(y);
                if !v.is_zero() {
                    m.rows[i * d + r].push(c, v);
                }
            }
        }
    }
    m.normalized().nullspace()
}

/// Minimal polynomial of a k x k matrix over Q(zeta): powers until linear
/// dependence; returns monic coefficients lowest degree first.
fn minimal_poly(m: &[Vec<CycloScalar>]) -> Vec<CycloScalar> {
    let k = m.len();
    let flat = |mat: &Vec<Vec<CycloScalar>>| -> Vec<CycloScalar> {
        mat.iter().flat_map(|r| r.iter().cloned()).collect()
    };
    let mut powers: Vec<Vec<Vec<CycloScalar>>> = vec![crate::linalg::dmat_identity(k)];
    loop {
        // try to express the next power in terms of previous powers
        let next = crate::linalg::dmat_mul(powers.last().unwrap(), &m.to_vec());
        let rows: Vec<SparseVec> = powers
            .iter()
            .map(|p| SparseVec::from_dense(&flat(p)))
            .collect();
        let sys = SparseMat::from_rows(k * k, rows).transpose();
        if let Some(coeffs) = sys.solve(&flat(&next)) {
            // next = sum coeffs[r] * M^r  ->  minpoly = t^s - sum coeffs_r t^r
            let mut p: Vec<CycloScalar> = coeffs.iter().map(|c| c.neg()).collect();
            p.push(CycloScalar::one());
            return p;
        }
        powers.push(next);
        assert!(powers.len() <= k + 1, "minimal polynomial search overflow");
    }
}

fn poly_eval(p: &[CycloScalar], x: &CycloScalar) -> CycloScalar {
    let mut acc = CycloScalar::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Exact roots of a monic polynomial over Q(zeta_m) drawn from the
/// desk-scale candidate set: 0, rational roots (rational-root theorem when
/// all coefficients are rational), and roots of unity zeta_m^j scaled by
/// small rationals derived from the constant term.
fn field_roots(p: &[CycloScalar], conductor: u32) -> Vec<CycloScalar> {
    let mut roots = Vec::new();
    let try_root = |cand: CycloScalar, roots: &mut Vec<CycloScalar>| {
        if poly_eval(p, &cand).is_zero() && !roots.iter().any(|r| *r == cand) {
            roots.push(cand);
        }
    };
    try_root(CycloScalar::zero(), &mut roots);
    // all roots of unity inside Q(zeta_conductor): orders dividing m for
    // even m, dividing 2m for odd m. Candidates outside the scalar field
    // must not be offered: they would fake a splitting over an extension.
    let m_full = if conductor % 2 == 1 {
        2 * conductor
    } else {
        conductor
    };
    for j in 0..m_full {
        try_root(CycloScalar::root_of_unity(m_full, j as i64), &mut roots);
    }
    // rational-root theorem when the coefficients are rational
    if let Some(rats) = p
        .iter()
        .map(|c| c.as_rational())
        .collect::<Option<Vec<Rat>>>()
    {
        // clear denominators: roots are p/q with p | a0, q | lead
        use num::{BigInt, One, Signed, Zero};
        let mut denlcm = BigInt::one();
        for r in &rats {
            denlcm = num::integer::lcm(denlcm.clone(), r.denom().clone());
        }
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (r * Rat::from(denlcm.clone())).to_integer())
            .collect();
        let a0 = ints.iter().find(|c| !c.is_zero()).cloned().unwrap_or_default();
        let lead = ints.last().cloned().unwrap_or_default();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.abs();
            let mut out = Vec::new();
            if n.is_zero() {
                return out;
            }
            let limit = BigInt::from(1_000_000u32);
            let mut d = BigInt::one();
            while &d * &d <= n && d <= limit {
                if (&n % &d).is_zero() {
                    out.push(d.clone());
                    out.push(&n / &d);
                }
                d += 1;
            }
            out
        };
        for num_d in divisors(&a0) {
            for den_d in divisors(&lead) {
                for sign in [1i64, -1] {
                    let cand = Rat::new(num_d.clone() * BigInt::from(sign), den_d.clone());
                    try_root(CycloScalar::from_rat(cand), &mut roots);
                }
            }
        }
    }
    roots
}

/// Primitive central idempotents of a split semisimple algebra, found by
/// joint eigenspace refinement of the center's regular representation.
fn central_idempotents(alg: &FinAlgebra) -> Result<Vec<Vec<CycloScalar>>> {
    let d = alg.dim();
    let z = center_basis(alg);
    let c = z.len();
    // coordinates of z_i z_j in the z basis
    let zmat_cols: Vec<SparseVec> = z.iter().map(|v| SparseVec::from_dense(v)).collect();
    let zmat = SparseMat::from_rows(d, zmat_cols).transpose(); // d x c
    let in_z_coords = |v: &[CycloScalar]| -> Vec<CycloScalar> {
        zmat.solve(v).expect("center closed under multiplication")
    };
    let mult_op = |j: usize| -> Vec<Vec<CycloScalar>> {
        // matrix of multiplication by z_j on the center, columns in z coords
        let mut m = vec![vec![CycloScalar::zero(); c]; c];
        for k in 0..c {
            let prod = alg.mul_vec(&z[j], &z[k]);
            let col = in_z_coords(&prod);
            for (r, v) in col.into_iter().enumerate() {
                m[r][k] = v;
            }
        }
        m
    };
    // refine subspaces of the center (columns = basis vectors, z coords)
    let mut spaces: Vec<Vec<Vec<CycloScalar>>> = vec![crate::linalg::dmat_identity(c)
        .iter()
        .map(|row| row.clone())
        .collect()];
    // interpret each space as list of column vectors
    spaces[0] = (0..c)
        .map(|i| {
            let mut v = vec![CycloScalar::zero(); c];
            v[i] = CycloScalar::one();
            v
        })
        .collect();
    for j in 0..c {
        let mj = mult_op(j);
        let mut next = Vec::new();
        for cols in spaces.into_iter() {
            let k = cols.len();
            if k == 1 {
                next.push(cols);
                continue;
            }
            // restriction R with V R = M V (V invariant)
            let vmat_rows: Vec<SparseVec> =
                cols.iter().map(|v| SparseVec::from_dense(v)).collect();
            let vmat = SparseMat::from_rows(c, vmat_rows).transpose(); // c x k
            let mut r = vec![vec![CycloScalar::zero(); k]; k];
            for (t, col) in cols.iter().enumerate() {
                let mv = crate::linalg::dmat_vec(&mj, col);
                let x = vmat
                    .solve(&mv)
                    .ok_or_else(|| NcgError::Internal("invariant subspace".into()))?;
                for (s, v) in x.into_iter().enumerate() {
                    r[s][t] = v;
                }
            }
            let p = minimal_poly(&r);
            if p.len() <= 2 {
                // scalar action: no refinement from this operator
                next.push(cols);
                continue;
            }
            let roots = field_roots(&p, alg.conductor());
            let mut pieces: Vec<Vec<Vec<CycloScalar>>> = Vec::new();
            let mut total = 0usize;
            for lam in &roots {
                // kernel of (R - lam) in V coords
                let mut shifted = r.clone();
                for t in 0..k {
                    shifted[t][t] = shifted[t][t].sub(lam);
                }
                let ker = SparseMat::from_dense(&shifted).nullspace();
                if ker.is_empty() {
                    continue;
                }
                total += ker.len();
                let piece: Vec<Vec<CycloScalar>> = ker
                    .iter()
                    .map(|w| {
                        // map back to center coords: V w
                        let mut out = vec![CycloScalar::zero(); c];
                        for (t, wt) in w.iter().enumerate() {
                            if wt.is_zero() {
                                continue;
                            }
                            for (rr, vv) in cols[t].iter().enumerate() {
                                out[rr] = out[rr].add(&wt.mul(vv));
                            }
                        }
                        out
                    })
                    .collect();
                pieces.push(piece);
            }
            if total != k {
                return Err(NcgError::NonSplitCenter(c));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(NcgError::NonSplitCenter(c));
    }
    // each line spans a minimal ideal of the center: scale to an idempotent
    let mut idems = Vec::new();
    for s in spaces {
        let v_z = &s[0];
        // to algebra coordinates
        let mut v = vec![CycloScalar::zero(); d];
        for (j, coef) in v_z.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (r, zr) in z[j].iter().enumerate() {
                v[r] = v[r].add(&coef.mul(zr));
            }
        }
        let v2 = alg.mul_vec(&v, &v);
        // v^2 = mu v with mu != 0 in a semisimple center
        let pos = v.iter().position(|x| !x.is_zero()).unwrap();
        let mu = v2[pos].div(&v[pos]);
        if mu.is_zero() {
            return Err(NcgError::NonSplitCenter(c));
        }
        let eps: Vec<CycloScalar> = v.iter().map(|x| x.div(&mu)).collect();
        let check = alg.mul_vec(&eps, &eps);
        if check != eps {
            return Err(NcgError::Internal("central idempotent".into()));
        }
        idems.push(eps);
    }
    // sanity: idempotents are orthogonal and sum to 1
    let mut sum = vec![CycloScalar::zero(); d];
    for e in &idems {
        sum = crate::linalg::vec_add(&sum, e);
    }
    if sum != alg.unit() {
        return Err(NcgError::Internal("central idempotents do not sum to 1".into()));
    }
    Ok(idems)
}

fn left_ideal_dim(alg: &FinAlgebra, a: &[CycloScalar]) -> usize {
    let d = alg.dim();
    let mut m = SparseMat::zero(d, d);
    for j in 0..d {
        let mut ej = vec![CycloScalar::zero(); d];
        ej[j] = CycloScalar::one();
        m.rows[j] = SparseVec::from_dense(&alg.mul_vec(&ej, a));
    }
    m.rank()
}

/// Candidate seeds for the minimal-left-ideal search inside a block:
/// projected basis elements, their pairwise differences, and cyclic
/// averaging sums 1 + g + ... + g^{r-1} for basis elements of finite
/// multiplicative order (those have small rank in every matrix block).
fn block_seeds(alg: &FinAlgebra, eps: &[CycloScalar]) -> Vec<Vec<CycloScalar>> {
    let d = alg.dim();
    let basis = |k: usize| {
        let mut e = vec![CycloScalar::zero(); d];
        e[k] = CycloScalar::one();
        e
    };
    let mut seeds = Vec::new();
    let push = |v: Vec<CycloScalar>, seeds: &mut Vec<Vec<CycloScalar>>| {
        if !vec_is_zero(&v) {
            seeds.push(v);
        }
    };
    for k in 0..d {
        push(alg.mul_vec(eps, &basis(k)), &mut seeds);
    }
    for j in 0..d {
        for l in 0..j {
            let diff = crate::linalg::vec_sub(&basis(j), &basis(l));
            push(alg.mul_vec(eps, &diff), &mut seeds);
        }
    }
    // cyclic sums over basis elements of finite order
    for k in 0..d {
        let g = basis(k);
        let mut acc = alg.unit().to_vec();
        let mut pow = alg.unit().to_vec();
        for _ in 0..(4 * d) {
            pow = alg.mul_vec(&pow, &g);
            if vec_is_zero(&pow) {
                break;
            }
            if pow == alg.unit() {
                push(alg.mul_vec(eps, &acc), &mut seeds);
                break;
            }
            acc = crate::linalg::vec_add(&acc, &pow);
        }
    }
    seeds
}

/// Certify a split simple factor by exhibiting a left ideal of dimension n.
fn certify_block(alg: &FinAlgebra, eps: &[CycloScalar], n: usize) -> Result<()> {
    let seeds = block_seeds(alg, eps);
    let mut best: Option<(usize, Vec<CycloScalar>)> = None;
    for a in &seeds {
        let dim = left_ideal_dim(alg, a);
        if dim >= n && best.as_ref().map(|(bd, _)| dim < *bd).unwrap_or(true) {
            best = Some((dim, a.clone()));
        }
        if dim == n {
            return Ok(());
        }
    }
    let (mut dim, mut a) = best.ok_or_else(|| NcgError::Internal("zero block".into()))?;
    for _ in 0..64 {
        if dim == n {
            return Ok(());
        }
        let mut improved = false;
        for s in &seeds {
            let cand = alg.mul_vec(s, &a);
            if vec_is_zero(&cand) {
                continue;
            }
            let cd = left_ideal_dim(alg, &cand);
            if cd >= n && cd < dim {
                dim = cd;
                a = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            break;
        }
    }
    if dim == n {
        Ok(())
    } else {
        Err(NcgError::Invalid(format!(
            "simple factor not certified split: minimal left ideal search reached {dim}, expected {n}"
        )))
    }
}

/// Full decomposition; fails on non-semisimple or non-split input.
pub fn wedderburn(alg: &Arc<FinAlgebra>) -> Result<WedderburnData> {
    if !is_semisimple(alg) {
        return Err(NcgError::NonSemisimple);
    }
    let idems = central_idempotents(alg)?;
    let mut sizes = Vec::new();
    for eps in &idems {
        let di = left_ideal_dim(alg, eps); // dim eps A = rank of right mult? see below
        // eps is central: eps A = A eps; left_ideal_dim computes dim(A eps)
        let n = (di as f64).sqrt().round() as usize;
        if n * n != di {
            return Err(NcgError::Invalid(format!(
                "simple factor of dimension {di} is not a split matrix algebra"
            )));
        }
        certify_block(alg, eps, n)?;
        sizes.push(n);
    }
    Ok(WedderburnData {
        sizes,
        central_idempotents: idems,
    })
}

/// Sorted Wedderburn block sizes of a split semisimple algebra.
pub fn wedderburn_blocks(alg: &Arc<FinAlgebra>) -> Result<Vec<usize>> {
    let mut s = wedderburn(alg)?.sizes;
    s.sort_unstable();
    Ok(s)
}

/// Block-wise rank vector of an idempotent matrix over a split semisimple
/// algebra: r_i = dim_K(eps_i e A^k) / n_i.
pub fn block_ranks(e: &AMatrix, data: &WedderburnData) -> Result<Vec<usize>> {
    if !e.is_idempotent() {
        return Err(NcgError::NotIdempotent);
    }
    let alg = &e.parent;
    let d = alg.dim();
    let k = e.size;
    let mut out = Vec::new();
    for (eps, &n) in data.central_idempotents.iter().zip(&data.sizes) {
        // span of eps * e * (basis vector in slot t)
        let mut rows: Vec<SparseVec> = Vec::new();
        for t in 0..k {
            for j in 0..d {
                let mut ej = vec![CycloScalar::zero(); d];
                ej[j] = CycloScalar::one();
                // column vector e[:, t] * e_j, then eps *
                let mut w: Vec<CycloScalar> = Vec::with_capacity(k * d);
                for s in 0..k {
                    let prod = alg.mul_vec(&e.entries[s][t], &ej);
                    let proj = alg.mul_vec(eps, &prod);
                    w.extend(proj);
                }
                let sv = SparseVec::from_dense(&w);
                if !sv.is_zero() {
                    rows.push(sv);
                }
            }
        }
        let rank = SparseMat::from_rows(k * d, rows).rank();
        if rank % n != 0 {
            return Err(NcgError::Internal(
                "block rank not divisible by block size".into(),
            ));
        }
        out.push(rank / n);
    }
    Ok(out)
}

/// Stable equivalence of idempotent matrices over a split semisimple algebra,
/// decided by comparing block-wise ranks.
pub fn stably_equivalent(e: &AMatrix, f: &AMatrix) -> Result<bool> {
    if !e.is_idempotent() || !f.is_idempotent() {
        return Err(NcgError::NotIdempotent);
    }
    let data = wedderburn(&e.parent)?;
    Ok(block_ranks(e, &data)? == block_ranks(f, &data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic_table;

    #[test]
    fn blocks_of_matrix_algebras() {
        for n in [1usize, 2, 3] {
            let a = FinAlgebra::matrix(n).unwrap();
            assert_eq!(wedderburn_blocks(&a).unwrap(), vec![n]);
        }
    }

    #[test]
    fn blocks_of_group_algebras() {
        // Z_3 over Q(zeta_3): three characters
        let z3 = FinAlgebra::group_algebra(&cyclic_table(3), 3).unwrap();
        assert_eq!(wedderburn_blocks(&z3).unwrap(), vec![1, 1, 1]);
        // Z_2 over Q: two characters
        let z2 = FinAlgebra::group_algebra(&cyclic_table(2), 1).unwrap();
        assert_eq!(wedderburn_blocks(&z2).unwrap(), vec![1, 1]);
        // S_3 over Q: 1 + 1 + 4 = 6
        let s3 = FinAlgebra::group_algebra(&crate::groups::symmetric_table(3), 1).unwrap();
        assert_eq!(wedderburn_blocks(&s3).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn blocks_of_rational_torus() {
        let t = FinAlgebra::rational_torus(1, 2).unwrap();
        assert_eq!(wedderburn_blocks(&t).unwrap(), vec![2]);
        let t3 = FinAlgebra::rational_torus(1, 3).unwrap();
        assert_eq!(wedderburn_blocks(&t3).unwrap(), vec![3]);
    }

    #[test]
    fn blocks_of_sums_and_tensors() {
        let m2 = FinAlgebra::matrix(2).unwrap();
        let z2 = FinAlgebra::group_algebra(&cyclic_table(2), 1).unwrap();
        let sum = FinAlgebra::direct_sum(&m2, &z2).unwrap();
        assert_eq!(wedderburn_blocks(&sum).unwrap(), vec![1, 1, 2]);
        let tens = FinAlgebra::tensor(&m2, &z2).unwrap();
        assert_eq!(wedderburn_blocks(&tens).unwrap(), vec![2, 2]);
        // Z_2 (x) Z_3 = Z_6 over Q(zeta_3) = Q(zeta_6): six characters
        let z3 = FinAlgebra::group_algebra(&cyclic_table(3), 3).unwrap();
        let z6 = FinAlgebra::tensor(&z2, &z3).unwrap();
        assert_eq!(wedderburn_blocks(&z6).unwrap(), vec![1; 6]);
    }

    #[test]
    fn non_split_center_reported() {
        // Q[Z_4] over Q = Q x Q x Q(i): center (= everything) does not split
        let z4 = FinAlgebra::group_algebra(&cyclic_table(4), 1).unwrap();
        match wedderburn_blocks(&z4) {
            Err(NcgError::NonSplitCenter(4)) => {}
            other => panic!("expected NonSplitCenter(4), got {:?}", other),
        }
        // ... but it splits over Q(zeta_4)
        let z4i = FinAlgebra::group_algebra(&cyclic_table(4), 4).unwrap();
        assert_eq!(wedderburn_blocks(&z4i).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn non_semisimple_rejected() {
        // dual numbers Q[x]/(x^2): basis 1, x with x^2 = 0
        use crate::linalg::SparseVec;
        let mut mult = vec![SparseVec::new(); 4];
        mult[0] = SparseVec::unit(0); // 1*1
        mult[1] = SparseVec::unit(1); // 1*x
        mult[2] = SparseVec::unit(1); // x*1
        mult[3] = SparseVec::new(); // x*x = 0
        let a = FinAlgebra::new(
            1,
            vec!["1".into(), "x".into()],
            vec![CycloScalar::one(), CycloScalar::zero()],
            mult,
            None,
        )
        .unwrap();
        match wedderburn_blocks(&a) {
            Err(NcgError::NonSemisimple) => {}
            other => panic!("expected NonSemisimple, got {:?}", other),
        }
    }

    #[test]
    fn stable_equivalence_in_m2() {
        let m2 = FinAlgebra::matrix(2).unwrap();
        // rank-1 projections E11 and E22 as 1x1 matrices over M_2
        let mut e11 = vec![CycloScalar::zero(); 4];
        e11[0] = CycloScalar::one();
        let mut e22 = vec![CycloScalar::zero(); 4];
        e22[3] = CycloScalar::one();
        let e = AMatrix {
            parent: m2.clone(),
            size: 1,
            entries: vec![vec![e11.clone()]],
        };
        let f = AMatrix {
            parent: m2.clone(),
            size: 1,
            entries: vec![vec![e22]],
        };
        assert!(stably_equivalent(&e, &f).unwrap());
        // e11 vs 0: not equivalent
        let zero = AMatrix::zero(&m2, 1);
        assert!(!stably_equivalent(&e, &zero).unwrap());
        // stabilization invariance: e ~ e + 0
        assert!(stably_equivalent(&e, &e.stabilize(2)).unwrap());
        // diag(1, 0) vs diag(0, 1) in M_2(A) for A = functions(1)... use M_2(Q)
        // realized as 2x2 matrices over the scalar field
        let k = FinAlgebra::scalar_field(1).unwrap();
        let mut d10 = AMatrix::zero(&k, 2);
        d10.entries[0][0] = vec![CycloScalar::one()];
        let mut d01 = AMatrix::zero(&k, 2);
        d01.entries[1][1] = vec![CycloScalar::one()];
        assert!(stably_equivalent(&d10, &d01).unwrap());
        let mut full = AMatrix::identity(&k, 2);
        assert!(!stably_equivalent(&d10, &full).unwrap());
        full.entries[1][1] = vec![CycloScalar::zero()];
        assert!(stably_equivalent(&d10, &full).unwrap());
    }
}
