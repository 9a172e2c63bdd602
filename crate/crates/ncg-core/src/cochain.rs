//! Cochains, chains, and the operator algebra b, b', lambda, N, s, B of the
//! Hochschild/cyclic complexes of a finite-dimensional algebra.
//!
//! Chain-side operators follow the homological conventions; the cochain-side
//! operators are their transposes except for s, whose sign is tied to the
//! degree of its domain on each side. Both B's are the composites the text
//! prescribes: B = N s (1 - lambda) on cochains and (1 - lambda) s N on
//! chains.

use std::sync::Arc;

use crate::algebra::FinAlgebra;
use crate::error::{NcgError, Result};
use crate::linalg::{SparseMat, SparseVec};
use crate::scalar::CycloScalar;

/// Number of basis tuples with `legs` tensor legs.
pub fn tensor_dim(d: usize, legs: usize) -> usize {
    d.pow(legs as u32)
}

/// Row-major index of a tuple (first leg most significant).
pub fn tuple_index(d: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * d + i)
}

/// Inverse of `tuple_index`.
pub fn index_tuple(d: usize, legs: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; legs];
    for k in (0..legs).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    B,
    BPrime,
    Lambda,
    N,
    S,
    ConnesB,
}

impl OperatorKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "b" => Some(OperatorKind::B),
            "b'" | "b_prime" | "bprime" => Some(OperatorKind::BPrime),
            "lambda" => Some(OperatorKind::Lambda),
            "N" | "n" => Some(OperatorKind::N),
            "s" => Some(OperatorKind::S),
            "B" | "connes_b" => Some(OperatorKind::ConnesB),
        _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffMode {
    /// Scalar-valued multilinear functionals (the M = A* case).
    Scalar,
    /// A-valued cochains (the deformation complex).
    Adjoint,
}

/// A multilinear functional on A^{(n+1)} (scalar mode: n+1 arguments of an
/// n-cochain) or a map A^{n} -> A (adjoint mode), stored densely on basis
/// tuples.
#[derive(Clone)]
pub struct Cochain {
    pub alg: Arc<FinAlgebra>,
    pub degree: usize,
    pub mode: CoeffMode,
    /// Scalar mode: length d^(degree+1), indexed by argument tuples.
    /// Adjoint mode: length d^degree * d, indexed by (args, value-coordinate).
    pub values: Vec<CycloScalar>,
}

impl Cochain {
    pub fn zero_scalar(alg: &Arc<FinAlgebra>, degree: usize) -> Self {
        let d = alg.dim();
        Cochain {
            alg: alg.clone(),
            degree,
            mode: CoeffMode::Scalar,
            values: vec![CycloScalar::zero(); tensor_dim(d, degree + 1)],
        }
    }

    pub fn zero_adjoint(alg: &Arc<FinAlgebra>, degree: usize) -> Self {
        let d = alg.dim();
        Cochain {
            alg: alg.clone(),
            degree,
            mode: CoeffMode::Adjoint,
            values: vec![CycloScalar::zero(); tensor_dim(d, degree) * d],
        }
    }

    /// Scalar-mode cochain from a linear functional and argument count 1
    /// (degree 0) is just the functional's values; general helper:
    pub fn scalar_from_fn(
        alg: &Arc<FinAlgebra>,
        degree: usize,
        f: impl Fn(&[usize]) -> CycloScalar,
    ) -> Self {
        let d = alg.dim();
        let mut out = Self::zero_scalar(alg, degree);
        for idx in 0..out.values.len() {
            let t = index_tuple(d, degree + 1, idx);
            out.values[idx] = f(&t);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Evaluate a scalar-mode cochain on elements given by coefficient
    /// vectors (multilinear extension).
    pub fn eval(&self, args: &[&[CycloScalar]]) -> CycloScalar {
        assert_eq!(self.mode, CoeffMode::Scalar);
        assert_eq!(args.len(), self.degree + 1);
        let d = self.alg.dim();
        let mut acc = CycloScalar::zero();
        // iterate over support of the product of argument supports
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| {
                (0..d)
                    .filter(|&i| !a[i].is_zero())
                    .collect::<Vec<usize>>()
            })
            .collect();
        let mut tuple = vec![0usize; args.len()];
        fn rec(
            k: usize,
            supports: &[Vec<usize>],
            args: &[&[CycloScalar]],
            tuple: &mut Vec<usize>,
            coeff: CycloScalar,
            d: usize,
            values: &[CycloScalar],
            acc: &mut CycloScalar,
        ) {
            if k == supports.len() {
                let v = &values[tuple_index(d, tuple)];
                if !v.is_zero() {
                    *acc = acc.add(&coeff.mul(v));
                }
                return;
            }
            for &i in &supports[k] {
                tuple[k] = i;
                rec(
                    k + 1,
                    supports,
                    args,
                    tuple,
                    coeff.mul(&args[k][i]),
                    d,
                    values,
                    acc,
                );
            }
        }
        rec(
            0,
            &supports,
            args,
            &mut tuple,
            CycloScalar::one(),
            d,
            &self.values,
            &mut acc,
        );
        acc
    }

    /// Cyclicity: (1 - lambda) phi = 0.
    pub fn is_cyclic(&self) -> Result<bool> {
        let l = apply_operator(OperatorKind::Lambda, self)?;
        Ok(crate::linalg::vec_sub(&self.values, &l.values)
            .iter()
            .all(|v| v.is_zero()))
    }

    /// Vanishes whenever some argument is the unit.
    pub fn is_normalized(&self) -> bool {
        assert_eq!(self.mode, CoeffMode::Scalar);
        let d = self.alg.dim();
        let n = self.degree;
        let unit = self.alg.unit();
        for slot in 0..=n {
            for rest in 0..tensor_dim(d, n) {
                let rt = index_tuple(d, n, rest);
                let mut args: Vec<&[CycloScalar]> = Vec::with_capacity(n + 1);
                let mut basis_store: Vec<Vec<CycloScalar>> = Vec::new();
                for &i in rt.iter() {
                    let mut e = vec![CycloScalar::zero(); d];
                    e[i] = CycloScalar::one();
                    basis_store.push(e);
                }
                let mut k = 0;
                for s in 0..=n {
                    if s == slot {
                        args.push(unit);
                    } else {
                        args.push(&basis_store[k]);
                        k += 1;
                    }
                }
                if !self.eval(&args).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// An element of A^{(n+1)} (a Hochschild n-chain), stored densely.
#[derive(Clone)]
pub struct Chain {
    pub alg: Arc<FinAlgebra>,
    pub degree: usize,
    pub values: Vec<CycloScalar>,
}

impl Chain {
    pub fn zero(alg: &Arc<FinAlgebra>, degree: usize) -> Self {
        let d = alg.dim();
        Chain {
            alg: alg.clone(),
            degree,
            values: vec![CycloScalar::zero(); tensor_dim(d, degree + 1)],
        }
    }

    /// Elementary tensor from coefficient vectors.
    pub fn from_tensor(alg: &Arc<FinAlgebra>, factors: &[Vec<CycloScalar>]) -> Self {
        assert!(!factors.is_empty());
        let d = alg.dim();
        let n = factors.len() - 1;
        let mut ch = Self::zero(alg, n);
        let total = tensor_dim(d, n + 1);
        for idx in 0..total {
            let t = index_tuple(d, n + 1, idx);
            let mut c = CycloScalar::one();
            for (k, &i) in t.iter().enumerate() {
                if factors[k][i].is_zero() {
                    c = CycloScalar::zero();
                    break;
                }
                c = c.mul(&factors[k][i]);
            }
            ch.values[idx] = c;
        }
        ch
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        Chain {
            alg: self.alg.clone(),
            degree: self.degree,
            values: crate::linalg::vec_add(&self.values, &other.values),
        }
    }

    pub fn scale(&self, f: &CycloScalar) -> Chain {
        Chain {
            alg: self.alg.clone(),
            degree: self.degree,
            values: crate::linalg::vec_scale(&self.values, f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Pair with a scalar cochain of the same degree.
    pub fn pair(&self, phi: &Cochain) -> CycloScalar {
        assert_eq!(phi.mode, CoeffMode::Scalar);
        assert_eq!(phi.degree, self.degree);
        let mut acc = CycloScalar::zero();
        for (v, w) in self.values.iter().zip(&phi.values) {
            if !v.is_zero() && !w.is_zero() {
                acc = acc.add(&v.mul(w));
            }
        }
        acc
    }
}

/// Sparse matrix of a chain-side operator with domain C_n.
pub fn chain_op_matrix(alg: &FinAlgebra, kind: OperatorKind, n: usize) -> Result<SparseMat> {
    let d = alg.dim();
    let dom = tensor_dim(d, n + 1);
    match kind {
        OperatorKind::B | OperatorKind::BPrime => {
            if n == 0 {
                return Err(NcgError::DegreeUnderflow(
                    "b on degree-0 chains".into(),
                ));
            }
            let cod = tensor_dim(d, n);
            let mut m = SparseMat::zero(cod, dom);
            for col in 0..dom {
                let t = index_tuple(d, n + 1, col);
                for i in 0..n {
                    let sign = if i % 2 == 0 {
                        CycloScalar::one()
                    } else {
                        CycloScalar::from_int(-1)
                    };
                    let prod = alg.basis_product(t[i], t[i + 1]);
                    let mut out = Vec::with_capacity(n);
                    out.extend_from_slice(&t[..i]);
                    out.push(0);
                    out.extend_from_slice(&t[i + 2..]);
                    for (k, c) in &prod.entries {
                        out[i] = *k;
                        m.rows[tuple_index(d, &out)].push(col, sign.mul(c));
                    }
                }
                if kind == OperatorKind::B {
                    let sign = if n % 2 == 0 {
                        CycloScalar::one()
                    } else {
                        CycloScalar::from_int(-1)
                    };
                    let prod = alg.basis_product(t[n], t[0]);
                    let mut out = Vec::with_capacity(n);
                    out.push(0);
                    out.extend_from_slice(&t[1..n]);
                    for (k, c) in &prod.entries {
                        out[0] = *k;
                        m.rows[tuple_index(d, &out)].push(col, sign.mul(c));
                    }
                }
            }
            Ok(m.normalized())
        }
        OperatorKind::Lambda => {
            let mut m = SparseMat::zero(dom, dom);
            let sign = if n % 2 == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::from_int(-1)
            };
            for col in 0..dom {
                let t = index_tuple(d, n + 1, col);
                let mut out = Vec::with_capacity(n + 1);
                out.push(t[n]);
                out.extend_from_slice(&t[..n]);
                m.rows[tuple_index(d, &out)].push(col, sign.clone());
            }
            Ok(m.normalized())
        }
        OperatorKind::N => {
            let lam = chain_op_matrix(alg, OperatorKind::Lambda, n)?;
            let mut acc = SparseMat::identity(dom);
            let mut cur = SparseMat::identity(dom);
            for _ in 0..n {
                cur = lam.mul_mat(&cur);
                acc = acc.add_mat(&cur);
            }
            Ok(acc)
        }
        OperatorKind::S => {
            let cod = tensor_dim(d, n + 2);
            let mut m = SparseMat::zero(cod, dom);
            let sign = if n % 2 == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::from_int(-1)
            };
            for col in 0..dom {
                let t = index_tuple(d, n + 1, col);
                let mut out = Vec::with_capacity(n + 2);
                out.extend_from_slice(&t);
                out.push(0);
                for (k, u) in alg.unit().iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    out[n + 1] = k;
                    m.rows[tuple_index(d, &out)].push(col, sign.mul(u));
                }
            }
            Ok(m.normalized())
        }
        OperatorKind::ConnesB => {
            // (1 - lambda_{n+1}) s N on chains
            let nmat = chain_op_matrix(alg, OperatorKind::N, n)?;
            let smat = chain_op_matrix(alg, OperatorKind::S, n)?;
            let lam_up = chain_op_matrix(alg, OperatorKind::Lambda, n + 1)?;
            let cod = tensor_dim(d, n + 2);
            let one_minus = SparseMat::identity(cod)
                .add_mat(&lam_up.scale(&CycloScalar::from_int(-1)));
            Ok(one_minus.mul_mat(&smat.mul_mat(&nmat)))
        }
    }
}

/// Sparse matrix of a cochain-side operator with domain C^n.
pub fn cochain_op_matrix(alg: &FinAlgebra, kind: OperatorKind, n: usize) -> Result<SparseMat> {
    match kind {
        OperatorKind::B | OperatorKind::BPrime => {
            Ok(chain_op_matrix(alg, kind, n + 1)?.transpose())
        }
        OperatorKind::Lambda | OperatorKind::N => {
            Ok(chain_op_matrix(alg, kind, n)?.transpose())
        }
        OperatorKind::S => {
            if n == 0 {
                return Err(NcgError::DegreeUnderflow("s on degree-0 cochains".into()));
            }
            // cochain s carries (-1)^n on C^n; the chain-side s it
            // transposes carries (-1)^(n-1)
            Ok(chain_op_matrix(alg, OperatorKind::S, n - 1)?
                .transpose()
                .scale(&CycloScalar::from_int(-1)))
        }
        OperatorKind::ConnesB => {
            if n == 0 {
                return Err(NcgError::DegreeUnderflow("B on degree-0 cochains".into()));
            }
            // N s (1 - lambda) on cochains
            let lam = cochain_op_matrix(alg, OperatorKind::Lambda, n)?;
            let dom = lam.ncols;
            let one_minus =
                SparseMat::identity(dom).add_mat(&lam.scale(&CycloScalar::from_int(-1)));
            let smat = cochain_op_matrix(alg, OperatorKind::S, n)?;
            let nmat = cochain_op_matrix(alg, OperatorKind::N, n - 1)?;
            Ok(nmat.mul_mat(&smat.mul_mat(&one_minus)))
        }
    }
}

/// Apply an operator to a scalar-mode cochain.
pub fn apply_operator(kind: OperatorKind, phi: &Cochain) -> Result<Cochain> {
    if phi.mode != CoeffMode::Scalar {
        return Err(NcgError::ModeMismatch);
    }
    let m = cochain_op_matrix(&phi.alg, kind, phi.degree)?;
    let degree = match kind {
        OperatorKind::B | OperatorKind::BPrime => phi.degree + 1,
        OperatorKind::Lambda | OperatorKind::N => phi.degree,
        OperatorKind::S | OperatorKind::ConnesB => phi.degree - 1,
    };
    Ok(Cochain {
        alg: phi.alg.clone(),
        degree,
        mode: CoeffMode::Scalar,
        values: m.mul_vec(&phi.values),
    })
}

/// Apply an operator to a chain.
pub fn apply_operator_chain(kind: OperatorKind, x: &Chain) -> Result<Chain> {
    let m = chain_op_matrix(&x.alg, kind, x.degree)?;
    let degree = match kind {
        OperatorKind::B | OperatorKind::BPrime => x.degree - 1,
        OperatorKind::Lambda | OperatorKind::N => x.degree,
        OperatorKind::S | OperatorKind::ConnesB => x.degree + 1,
    };
    Ok(Chain {
        alg: x.alg.clone(),
        degree,
        values: m.mul_vec(&x.values),
    })
}

/// Rows spanning the degenerate subspace of C_n (images of the
/// degeneracies s_j, i.e. tensors with the unit inserted in slots >= 1).
pub fn degenerate_rows(alg: &FinAlgebra, n: usize) -> Vec<SparseVec> {
    let d = alg.dim();
    let mut rows = Vec::new();
    if n == 0 {
        return rows;
    }
    for j in 1..=n {
        for rest in 0..tensor_dim(d, n) {
            let rt = index_tuple(d, n, rest);
            let mut sv = SparseVec::new();
            for (k, u) in alg.unit().iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let mut t = Vec::with_capacity(n + 1);
                t.extend_from_slice(&rt[..j]);
                t.push(k);
                t.extend_from_slice(&rt[j..]);
                sv.push(tuple_index(d, &t), u.clone());
            }
            rows.push(sv.normalize());
        }
    }
    rows
}

/// Test whether a chain is degenerate (lies in the span of
/// `degenerate_rows`), i.e. vanishes in the normalized complex.
pub fn is_degenerate(x: &Chain) -> bool {
    if x.is_zero() {
        return true;
    }
    let rows = degenerate_rows(&x.alg, x.degree);
    if rows.is_empty() {
        return false;
    }
    let dim = x.values.len();
    let m = SparseMat::from_rows(dim, rows.clone());
    let rank0 = m.rank();
    let mut rows1 = rows;
    rows1.push(SparseVec::from_dense(&x.values));
    let m1 = SparseMat::from_rows(dim, rows1);
    m1.rank() == rank0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_cochain(
        alg: &Arc<FinAlgebra>,
        degree: usize,
        rng: &mut impl Rng,
    ) -> Cochain {
        let mut c = Cochain::zero_scalar(alg, degree);
        for v in c.values.iter_mut() {
            *v = CycloScalar::from_int(rng.gen_range(-4..=4));
        }
        c
    }

    fn random_chain(alg: &Arc<FinAlgebra>, degree: usize, rng: &mut impl Rng) -> Chain {
        let mut c = Chain::zero(alg, degree);
        for v in c.values.iter_mut() {
            *v = CycloScalar::from_int(rng.gen_range(-4..=4));
        }
        c
    }

    #[test]
    fn b_on_zero_cochain_detects_traces() {
        // (b phi)(a0, a1) = phi(a0 a1) - phi(a1 a0); zero iff phi is a trace
        let m2 = FinAlgebra::matrix(2).unwrap();
        let traces = crate::algebra::trace_space(&m2);
        let tau = Cochain {
            alg: m2.clone(),
            degree: 0,
            mode: CoeffMode::Scalar,
            values: traces[0].values.clone(),
        };
        let btau = apply_operator(OperatorKind::B, &tau).unwrap();
        assert!(btau.is_zero());
        // a non-trace functional has b != 0
        let mut vals = vec![CycloScalar::zero(); 4];
        vals[1] = CycloScalar::one(); // phi = E12 coefficient
        let phi = Cochain {
            alg: m2.clone(),
            degree: 0,
            mode: CoeffMode::Scalar,
            values: vals,
        };
        assert!(!apply_operator(OperatorKind::B, &phi).unwrap().is_zero());
    }

    #[test]
    fn operator_identities_on_random_cochains() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let algs = vec![
            FinAlgebra::matrix(2).unwrap(),
            FinAlgebra::group_algebra(&crate::groups::cyclic_table(2), 1).unwrap(),
        ];
        for alg in &algs {
            for n in 1..=2usize {
                let phi = random_cochain(alg, n, &mut rng);
                let b2 = apply_operator(
                    OperatorKind::B,
                    &apply_operator(OperatorKind::B, &phi).unwrap(),
                )
                .unwrap();
                assert!(b2.is_zero(), "b^2 = 0");
                let bp2 = apply_operator(
                    OperatorKind::BPrime,
                    &apply_operator(OperatorKind::BPrime, &phi).unwrap(),
                )
                .unwrap();
                assert!(bp2.is_zero(), "b'^2 = 0");
                // (1 - lambda) b = b' (1 - lambda)
                let lhs = {
                    let b = apply_operator(OperatorKind::B, &phi).unwrap();
                    let lb = apply_operator(OperatorKind::Lambda, &b).unwrap();
                    crate::linalg::vec_sub(&b.values, &lb.values)
                };
                let rhs = {
                    let l = apply_operator(OperatorKind::Lambda, &phi).unwrap();
                    let oml = Cochain {
                        alg: alg.clone(),
                        degree: n,
                        mode: CoeffMode::Scalar,
                        values: crate::linalg::vec_sub(&phi.values, &l.values),
                    };
                    apply_operator(OperatorKind::BPrime, &oml).unwrap().values
                };
                assert_eq!(lhs, rhs, "(1-lambda) b = b' (1-lambda)");
                // B^2 = 0 and bB + Bb = 0 (need degree >= 2 for B twice)
                if n >= 2 {
                    let bb = apply_operator(
                        OperatorKind::ConnesB,
                        &apply_operator(OperatorKind::ConnesB, &phi).unwrap(),
                    )
                    .unwrap();
                    assert!(bb.is_zero(), "B^2 = 0");
                }
                let big_b = apply_operator(OperatorKind::ConnesB, &phi).unwrap();
                let b_bigb = apply_operator(OperatorKind::B, &big_b).unwrap();
                let b_phi = apply_operator(OperatorKind::B, &phi).unwrap();
                let bigb_b = apply_operator(OperatorKind::ConnesB, &b_phi).unwrap();
                assert!(
                    crate::linalg::vec_add(&b_bigb.values, &bigb_b.values)
                        .iter()
                        .all(|v| v.is_zero()),
                    "bB + Bb = 0"
                );
            }
        }
    }

    #[test]
    fn chain_side_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let alg = FinAlgebra::group_algebra(&crate::groups::cyclic_table(2), 1).unwrap();
        for n in 2..=3usize {
            let x = random_chain(&alg, n, &mut rng);
            let b2 = apply_operator_chain(
                OperatorKind::B,
                &apply_operator_chain(OperatorKind::B, &x).unwrap(),
            )
            .unwrap();
            assert!(b2.is_zero());
            // chain side: b' N = N b
            let lhs = apply_operator_chain(
                OperatorKind::BPrime,
                &apply_operator_chain(OperatorKind::N, &x).unwrap(),
            )
            .unwrap();
            let rhs = apply_operator_chain(
                OperatorKind::N,
                &apply_operator_chain(OperatorKind::B, &x).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs.values, rhs.values);
            let bb = apply_operator_chain(
                OperatorKind::ConnesB,
                &apply_operator_chain(OperatorKind::ConnesB, &x).unwrap(),
            )
            .unwrap();
            assert!(bb.is_zero());
        }
    }

    #[test]
    fn lambda_on_one_cochain_matches_formula() {
        // (lambda phi)(a0, a1) = -phi(a1, a0)
        let alg = FinAlgebra::functions(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let phi = random_cochain(&alg, 1, &mut rng);
        let l = apply_operator(OperatorKind::Lambda, &phi).unwrap();
        let d = 2;
        for a0 in 0..d {
            for a1 in 0..d {
                assert_eq!(
                    l.values[tuple_index(d, &[a0, a1])],
                    phi.values[tuple_index(d, &[a1, a0])].neg()
                );
            }
        }
    }

    #[test]
    fn cyclic_cochains_closed_under_b() {
        // (1-lambda) phi = 0 implies (1-lambda) b phi = 0
        let alg = FinAlgebra::matrix(2).unwrap();
        for n in 1..=2usize {
            let lam = cochain_op_matrix(&alg, OperatorKind::Lambda, n).unwrap();
            let dim = lam.ncols;
            let one_minus = SparseMat::identity(dim)
                .add_mat(&lam.scale(&CycloScalar::from_int(-1)));
            for v in one_minus.nullspace() {
                let phi = Cochain {
                    alg: alg.clone(),
                    degree: n,
                    mode: CoeffMode::Scalar,
                    values: v,
                };
                let b = apply_operator(OperatorKind::B, &phi).unwrap();
                assert!(b.is_cyclic().unwrap());
            }
        }
    }

    #[test]
    fn b0_comparison_on_normalized_cochains() {
        // On normalized cochains the literal operator signs give
        // B = -N B_0 with B_0 phi = phi(1, a_0, ..., a_{n-1}); the sign is
        // frozen here. (The unnormalized relationship is not asserted
        // anywhere because the source text does not pin it.)
        let alg = FinAlgebra::functions(2).unwrap();
        let d = 2usize;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for n in 1..=2usize {
            // normalized random cochain: vanishes when any argument is 1
            let constraints: Vec<SparseVec> = {
                let mut rows = Vec::new();
                for slot in 0..=n {
                    for rest in 0..tensor_dim(d, n) {
                        let rt = index_tuple(d, n, rest);
                        let mut sv = SparseVec::new();
                        for (k, u) in alg.unit().iter().enumerate() {
                            if u.is_zero() {
                                continue;
                            }
                            let mut t = Vec::with_capacity(n + 1);
                            t.extend_from_slice(&rt[..slot]);
                            t.push(k);
                            t.extend_from_slice(&rt[slot..]);
                            sv.push(tuple_index(d, &t), u.clone());
                        }
                        rows.push(sv.normalize());
                    }
                }
                rows
            };
            let basis = SparseMat::from_rows(tensor_dim(d, n + 1), constraints).nullspace();
            for _ in 0..5 {
                let mut vals = vec![CycloScalar::zero(); tensor_dim(d, n + 1)];
                for b in &basis {
                    let c = CycloScalar::from_int(rng.gen_range(-3..=3));
                    vals = crate::linalg::vec_add(&vals, &crate::linalg::vec_scale(b, &c));
                }
                let phi = Cochain {
                    alg: alg.clone(),
                    degree: n,
                    mode: CoeffMode::Scalar,
                    values: vals.clone(),
                };
                assert!(phi.is_normalized());
                let big_b = apply_operator(OperatorKind::ConnesB, &phi).unwrap();
                // N B_0 phi computed independently: (B_0 phi)(a_0..a_{n-1})
                // = phi(1, a_0, ..., a_{n-1}) on normalized phi
                let b0 = Cochain::scalar_from_fn(&alg, n - 1, |t| {
                    let mut args: Vec<&[CycloScalar]> = Vec::with_capacity(n + 1);
                    args.push(alg.unit());
                    let mut store = Vec::new();
                    for &i in t {
                        let mut e = vec![CycloScalar::zero(); d];
                        e[i] = CycloScalar::one();
                        store.push(e);
                    }
                    for e in &store {
                        args.push(e);
                    }
                    phi.eval(&args)
                });
                let nb0 = apply_operator(OperatorKind::N, &b0).unwrap();
                let sum = crate::linalg::vec_add(&big_b.values, &nb0.values);
                assert!(
                    sum.iter().all(|v| v.is_zero()),
                    "B = -N B_0 on normalized cochains at degree {n}"
                );
            }
        }
    }

    #[test]
    fn degenerate_detection() {
        let alg = FinAlgebra::functions(2).unwrap();
        // x = a (x) 1 is degenerate; a (x) d0 is not
        let a = vec![CycloScalar::one(), CycloScalar::from_int(2)];
        let unit = alg.unit().to_vec();
        let x = Chain::from_tensor(&alg, &[a.clone(), unit]);
        assert!(is_degenerate(&x));
        let d0 = vec![CycloScalar::one(), CycloScalar::zero()];
        let y = Chain::from_tensor(&alg, &[a, d0]);
        assert!(!is_degenerate(&y));
    }
}
