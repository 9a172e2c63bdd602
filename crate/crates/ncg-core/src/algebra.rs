//! Finite-dimensional associative unital *-algebras presented by structure
//! constants, their traces, states, and GNS representations.

use std::sync::Arc;

use crate::error::{NcgError, Result};
use crate::groups::{self, GroupTable};
use crate::interval::sign_real_cyclo;
use crate::linalg::{
    dmat_identity, dmat_vec, dmat_zero, vec_is_zero, DenseMat, SparseMat, SparseVec,
};
use crate::scalar::CycloScalar;

/// A finite-dimensional associative unital algebra over Q(zeta_m), given by
/// structure constants e_i e_j = sum_k c_{ij}^k e_k, with an optional
/// conjugate-linear involution.
#[derive(Clone)]
pub struct FinAlgebra {
    dim: usize,
    conductor: u32,
    labels: Vec<String>,
    unit: Vec<CycloScalar>,
    /// mult[i * dim + j] = coordinates of e_i e_j.
    mult: Vec<SparseVec>,
    /// star(e_i) = sum_k inv[k][i] e_k; applied conjugate-linearly.
    involution: Option<DenseMat>,
}

impl FinAlgebra {
    pub fn new(
        conductor: u32,
        labels: Vec<String>,
        unit: Vec<CycloScalar>,
        mult: Vec<SparseVec>,
        involution: Option<DenseMat>,
    ) -> Result<Arc<Self>> {
        let dim = labels.len();
        if unit.len() != dim || mult.len() != dim * dim {
            return Err(NcgError::DimensionMismatch(
                "structure constant table size".into(),
            ));
        }
        let alg = FinAlgebra {
            dim,
            conductor,
            labels,
            unit,
            mult,
            involution,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[CycloScalar] {
        &self.unit
    }

    pub fn involution(&self) -> Option<&DenseMat> {
        self.involution.as_ref()
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    /// Bilinear product of coefficient vectors.
    pub fn mul_vec(&self, a: &[CycloScalar], b: &[CycloScalar]) -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let f = x.mul(y);
                for (k, c) in &self.basis_product(i, j).entries {
                    out[*k] = out[*k].add(&f.mul(c));
                }
            }
        }
        out
    }

    /// Conjugate-linear involution on a coefficient vector.
    pub fn star_vec(&self, a: &[CycloScalar]) -> Result<Vec<CycloScalar>> {
        let m = self
            .involution
            .as_ref()
            .ok_or(NcgError::MissingInvolution)?;
        let conj: Vec<CycloScalar> = a.iter().map(|c| c.conj()).collect();
        Ok(dmat_vec(m, &conj))
    }

    /// Matrix of left multiplication by a.
    pub fn left_mult(&self, a: &[CycloScalar]) -> DenseMat {
        let mut m = dmat_zero(self.dim, self.dim);
        for c in 0..self.dim {
            let mut basis = vec![CycloScalar::zero(); self.dim];
            basis[c] = CycloScalar::one();
            let col = self.mul_vec(a, &basis);
            for (r, val) in col.into_iter().enumerate() {
                m[r][c] = val;
            }
        }
        m
    }

    /// Matrix of right multiplication by a.
    pub fn right_mult(&self, a: &[CycloScalar]) -> DenseMat {
        let mut m = dmat_zero(self.dim, self.dim);
        for c in 0..self.dim {
            let mut basis = vec![CycloScalar::zero(); self.dim];
            basis[c] = CycloScalar::one();
            let col = self.mul_vec(&basis, a);
            for (r, val) in col.into_iter().enumerate() {
                m[r][c] = val;
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                let ij = self.basis_product(i, j).to_dense(self.dim);
                let ji = self.basis_product(j, i).to_dense(self.dim);
                if ij != ji {
                    return false;
                }
            }
        }
        true
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        // unit is a two-sided identity
        for i in 0..d {
            let mut basis = vec![CycloScalar::zero(); d];
            basis[i] = CycloScalar::one();
            if self.mul_vec(&self.unit, &basis) != basis
                || self.mul_vec(&basis, &self.unit) != basis
            {
                return Err(NcgError::BadUnit);
            }
        }
        // associativity on all basis triples
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_dense(d);
                for k in 0..d {
                    let mut ek = vec![CycloScalar::zero(); d];
                    ek[k] = CycloScalar::one();
                    let left = self.mul_vec(&ij, &ek);
                    let jk = self.basis_product(j, k).to_dense(d);
                    let mut ei = vec![CycloScalar::zero(); d];
                    ei[i] = CycloScalar::one();
                    let right = self.mul_vec(&ei, &jk);
                    if left != right {
                        return Err(NcgError::NonAssociative(i, j, k));
                    }
                }
            }
        }
        // involution: conjugate-linear anti-homomorphism of square one
        if self.involution.is_some() {
            for i in 0..d {
                let mut ei = vec![CycloScalar::zero(); d];
                ei[i] = CycloScalar::one();
                let ss = self.star_vec(&self.star_vec(&ei)?)?;
                if ss != ei {
                    return Err(NcgError::BadInvolution("square is not identity".into()));
                }
                for j in 0..d {
                    let mut ej = vec![CycloScalar::zero(); d];
                    ej[j] = CycloScalar::one();
                    let lhs = self.star_vec(&self.mul_vec(&ei, &ej))?;
                    let rhs = self.mul_vec(&self.star_vec(&ej)?, &self.star_vec(&ei)?);
                    if lhs != rhs {
                        return Err(NcgError::BadInvolution(format!(
                            "anti-homomorphism fails on ({i}, {j})"
                        )));
                    }
                }
            }
            if self.star_vec(&self.unit)? != self.unit {
                return Err(NcgError::BadInvolution("unit not fixed".into()));
            }
        }
        Ok(())
    }

    // ---- constructions -------------------------------------------------

    /// Full matrix algebra M_n with basis of matrix units E_{ij}.
    pub fn matrix(n: usize) -> Result<Arc<Self>> {
        assert!(n >= 1);
        let d = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut mult = vec![SparseVec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if j == k {
                            mult[idx(i, j) * d + idx(k, l)] = SparseVec::unit(idx(i, l));
                        }
                    }
                }
            }
        }
        let mut unit = vec![CycloScalar::zero(); d];
        for i in 0..n {
            unit[idx(i, i)] = CycloScalar::one();
        }
        // E_{ij}* = E_{ji}
        let mut inv = dmat_zero(d, d);
        for i in 0..n {
            for j in 0..n {
                inv[idx(j, i)][idx(i, j)] = CycloScalar::one();
            }
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        Self::new(1, labels, unit, mult, Some(inv))
    }

    /// One-dimensional algebra (the scalar field itself).
    pub fn scalar_field(conductor: u32) -> Result<Arc<Self>> {
        let mult = vec![SparseVec::unit(0)];
        Self::new(
            conductor,
            vec!["1".into()],
            vec![CycloScalar::one()],
            mult,
            Some(dmat_identity(1)),
        )
    }

    /// Commutative algebra of functions on n points (pointwise product).
    pub fn functions(n: usize) -> Result<Arc<Self>> {
        let mut mult = vec![SparseVec::new(); n * n];
        for i in 0..n {
            mult[i * n + i] = SparseVec::unit(i);
        }
        let labels = (0..n).map(|i| format!("d{}", i)).collect();
        Self::new(
            1,
            labels,
            vec![CycloScalar::one(); n],
            mult,
            Some(dmat_identity(n)),
        )
    }

    /// Group algebra with involution g* = g^{-1}, over Q(zeta_conductor).
    pub fn group_algebra(table: &GroupTable, conductor: u32) -> Result<Arc<Self>> {
        if !groups::is_group(table) {
            return Err(NcgError::Invalid("not a group table".into()));
        }
        let n = table.len();
        let e = groups::identity_of(table).unwrap();
        let invs = groups::inverses_of(table).unwrap();
        let mut mult = vec![SparseVec::new(); n * n];
        for g in 0..n {
            for h in 0..n {
                mult[g * n + h] = SparseVec::unit(table[g][h]);
            }
        }
        let mut unit = vec![CycloScalar::zero(); n];
        unit[e] = CycloScalar::one();
        let mut inv = dmat_zero(n, n);
        for g in 0..n {
            inv[invs[g]][g] = CycloScalar::one();
        }
        let labels = (0..n).map(|g| format!("g{}", g)).collect();
        Self::new(conductor, labels, unit, mult, Some(inv))
    }

    /// Rational noncommutative torus at theta = p/q: the q^2-dimensional
    /// algebra on unitaries u, v with u v = zeta_q^p v u and u^q = v^q = 1.
    pub fn rational_torus(p: i64, q: u32) -> Result<Arc<Self>> {
        if q == 0 {
            return Err(NcgError::Invalid("rational torus needs q >= 1".into()));
        }
        let qq = q as i64;
        if q > 1 && num::integer::gcd(p.rem_euclid(qq), qq) != 1 {
            return Err(NcgError::Invalid("p/q must be in lowest terms".into()));
        }
        let n = q as usize;
        let d = n * n;
        let idx = |a: usize, b: usize| a * n + b;
        let lam = |e: i64| CycloScalar::root_of_unity(q, e);
        let mut mult = vec![SparseVec::new(); d * d];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        // (u^a v^b)(u^c v^e) = lambda^{-bc} u^{a+c} v^{b+e}
                        let coeff = lam(-(p * b as i64 * c as i64));
                        let mut sv = SparseVec::new();
                        sv.push(idx((a + c) % n, (b + e) % n), coeff);
                        mult[idx(a, b) * d + idx(c, e)] = sv;
                    }
                }
            }
        }
        let mut unit = vec![CycloScalar::zero(); d];
        unit[idx(0, 0)] = CycloScalar::one();
        // (u^a v^b)* = lambda^{-ab} u^{-a} v^{-b}
        let mut inv = dmat_zero(d, d);
        for a in 0..n {
            for b in 0..n {
                let coeff = lam(-(p * a as i64 * b as i64));
                inv[idx((n - a) % n, (n - b) % n)][idx(a, b)] = coeff;
            }
        }
        let labels = (0..n)
            .flat_map(|a| (0..n).map(move |b| format!("u^{}v^{}", a, b)))
            .collect();
        Self::new(q, labels, unit, mult, Some(inv))
    }

    /// Q[x_1, ..., x_v] / (x_i^2): basis the square-free monomials, indexed
    /// by subsets of {1..v} as bitmasks.
    pub fn truncated_poly(v: usize) -> Result<Arc<Self>> {
        let d = 1usize << v;
        let mut mult = vec![SparseVec::new(); d * d];
        for s in 0..d {
            for t in 0..d {
                if s & t == 0 {
                    mult[s * d + t] = SparseVec::unit(s | t);
                }
            }
        }
        let mut unit = vec![CycloScalar::zero(); d];
        unit[0] = CycloScalar::one();
        let labels = (0..d)
            .map(|s| {
                if s == 0 {
                    "1".to_string()
                } else {
                    (0..v)
                        .filter(|i| s & (1 << i) != 0)
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("")
                }
            })
            .collect();
        Self::new(1, labels, unit, mult, Some(dmat_identity(d)))
    }

    pub fn direct_sum(a: &FinAlgebra, b: &FinAlgebra) -> Result<Arc<Self>> {
        let d = a.dim + b.dim;
        let conductor = num::integer::lcm(a.conductor, b.conductor);
        let mut mult = vec![SparseVec::new(); d * d];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mult[i * d + j] = a.basis_product(i, j).clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                let src = b.basis_product(i, j);
                let mut sv = SparseVec::new();
                for (k, c) in &src.entries {
                    sv.push(a.dim + k, c.clone());
                }
                mult[(a.dim + i) * d + (a.dim + j)] = sv;
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        let involution = match (&a.involution, &b.involution) {
            (Some(ia), Some(ib)) => {
                let mut m = dmat_zero(d, d);
                for r in 0..a.dim {
                    for c in 0..a.dim {
                        m[r][c] = ia[r][c].clone();
                    }
                }
                for r in 0..b.dim {
                    for c in 0..b.dim {
                        m[a.dim + r][a.dim + c] = ib[r][c].clone();
                    }
                }
                Some(m)
            }
            _ => None,
        };
        let mut labels = a.labels.clone();
        labels.extend(b.labels.iter().cloned());
        Self::new(conductor, labels, unit, mult, involution)
    }

    pub fn tensor(a: &FinAlgebra, b: &FinAlgebra) -> Result<Arc<Self>> {
        let d = a.dim * b.dim;
        let conductor = num::integer::lcm(a.conductor, b.conductor);
        let idx = |i: usize, j: usize| i * b.dim + j;
        let mut mult = vec![SparseVec::new(); d * d];
        for i in 0..a.dim {
            for j in 0..b.dim {
                for k in 0..a.dim {
                    for l in 0..b.dim {
                        let pa = a.basis_product(i, k);
                        let pb = b.basis_product(j, l);
                        let mut sv = SparseVec::new();
                        for (r, cr) in &pa.entries {
                            for (s, cs) in &pb.entries {
                                sv.push(idx(*r, *s), cr.mul(cs));
                            }
                        }
                        mult[idx(i, j) * d + idx(k, l)] = sv.normalize();
                    }
                }
            }
        }
        let mut unit = vec![CycloScalar::zero(); d];
        for (i, x) in a.unit.iter().enumerate() {
            for (j, y) in b.unit.iter().enumerate() {
                unit[idx(i, j)] = x.mul(y);
            }
        }
        let involution = match (&a.involution, &b.involution) {
            (Some(ia), Some(ib)) => {
                let mut m = dmat_zero(d, d);
                for r in 0..a.dim {
                    for c in 0..a.dim {
                        if ia[r][c].is_zero() {
                            continue;
                        }
                        for s in 0..b.dim {
                            for t in 0..b.dim {
                                if !ib[s][t].is_zero() {
                                    m[idx(r, s)][idx(c, t)] = ia[r][c].mul(&ib[s][t]);
                                }
                            }
                        }
                    }
                }
                Some(m)
            }
            _ => None,
        };
        let labels = a
            .labels
            .iter()
            .flat_map(|la| b.labels.iter().map(move |lb| format!("{}x{}", la, lb)))
            .collect();
        Self::new(conductor, labels, unit, mult, involution)
    }
}

/// An element of a FinAlgebra.
#[derive(Clone)]
pub struct AlgElement {
    pub parent: Arc<FinAlgebra>,
    pub coeffs: Vec<CycloScalar>,
}

impl AlgElement {
    pub fn new(parent: Arc<FinAlgebra>, coeffs: Vec<CycloScalar>) -> Self {
        assert_eq!(coeffs.len(), parent.dim());
        AlgElement { parent, coeffs }
    }

    pub fn basis(parent: &Arc<FinAlgebra>, i: usize) -> Self {
        let mut coeffs = vec![CycloScalar::zero(); parent.dim()];
        coeffs[i] = CycloScalar::one();
        AlgElement::new(parent.clone(), coeffs)
    }

    pub fn unit(parent: &Arc<FinAlgebra>) -> Self {
        AlgElement::new(parent.clone(), parent.unit().to_vec())
    }

    pub fn mul(&self, other: &Self) -> Self {
        AlgElement::new(
            self.parent.clone(),
            self.parent.mul_vec(&self.coeffs, &other.coeffs),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgElement::new(
            self.parent.clone(),
            crate::linalg::vec_add(&self.coeffs, &other.coeffs),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgElement::new(
            self.parent.clone(),
            crate::linalg::vec_sub(&self.coeffs, &other.coeffs),
        )
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        AlgElement::new(self.parent.clone(), crate::linalg::vec_scale(&self.coeffs, f))
    }

    pub fn star(&self) -> Result<Self> {
        Ok(AlgElement::new(
            self.parent.clone(),
            self.parent.star_vec(&self.coeffs)?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coeffs)
    }
}

/// A square matrix with entries in a FinAlgebra.
#[derive(Clone)]
pub struct AMatrix {
    pub parent: Arc<FinAlgebra>,
    pub size: usize,
    /// entries[r][c] = coefficient vector of the (r, c) entry.
    pub entries: Vec<Vec<Vec<CycloScalar>>>,
}

impl AMatrix {
    pub fn zero(parent: &Arc<FinAlgebra>, size: usize) -> Self {
        AMatrix {
            parent: parent.clone(),
            size,
            entries: vec![vec![vec![CycloScalar::zero(); parent.dim()]; size]; size],
        }
    }

    pub fn identity(parent: &Arc<FinAlgebra>, size: usize) -> Self {
        let mut m = Self::zero(parent, size);
        for r in 0..size {
            m.entries[r][r] = parent.unit().to_vec();
        }
        m
    }

    /// 1x1 matrix from an element.
    pub fn from_element(a: &AlgElement) -> Self {
        AMatrix {
            parent: a.parent.clone(),
            size: 1,
            entries: vec![vec![a.coeffs.clone()]],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, coeffs: Vec<CycloScalar>) {
        self.entries[r][c] = coeffs;
    }

    pub fn mul(&self, other: &AMatrix) -> AMatrix {
        assert_eq!(self.size, other.size);
        let alg = &self.parent;
        let mut out = AMatrix::zero(alg, self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                let mut acc = vec![CycloScalar::zero(); alg.dim()];
                for t in 0..self.size {
                    if vec_is_zero(&self.entries[r][t]) || vec_is_zero(&other.entries[t][c]) {
                        continue;
                    }
                    let p = alg.mul_vec(&self.entries[r][t], &other.entries[t][c]);
                    acc = crate::linalg::vec_add(&acc, &p);
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &AMatrix) -> AMatrix {
        let mut out = self.clone();
        for r in 0..self.size {
            for c in 0..self.size {
                out.entries[r][c] =
                    crate::linalg::vec_add(&self.entries[r][c], &other.entries[r][c]);
            }
        }
        out
    }

    pub fn sub(&self, other: &AMatrix) -> AMatrix {
        let mut out = self.clone();
        for r in 0..self.size {
            for c in 0..self.size {
                out.entries[r][c] =
                    crate::linalg::vec_sub(&self.entries[r][c], &other.entries[r][c]);
            }
        }
        out
    }

    pub fn scale(&self, f: &CycloScalar) -> AMatrix {
        let mut out = self.clone();
        for r in 0..self.size {
            for c in 0..self.size {
                out.entries[r][c] = crate::linalg::vec_scale(&self.entries[r][c], f);
            }
        }
        out
    }

    pub fn eq(&self, other: &AMatrix) -> bool {
        self.size == other.size
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x == y))
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|r| r.iter().all(|e| vec_is_zero(e)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).eq(self)
    }

    /// Block direct sum with a zero block appended (stabilization e -> e + 0).
    pub fn stabilize(&self, extra: usize) -> AMatrix {
        let mut out = AMatrix::zero(&self.parent, self.size + extra);
        for r in 0..self.size {
            for c in 0..self.size {
                out.entries[r][c] = self.entries[r][c].clone();
            }
        }
        out
    }

    /// Sum of diagonal entries, as an algebra element.
    pub fn diagonal_sum(&self) -> AlgElement {
        let mut acc = vec![CycloScalar::zero(); self.parent.dim()];
        for r in 0..self.size {
            acc = crate::linalg::vec_add(&acc, &self.entries[r][r]);
        }
        AlgElement::new(self.parent.clone(), acc)
    }
}

/// A linear functional on a FinAlgebra, stored by its values on the basis.
#[derive(Clone)]
pub struct LinearFunctional {
    pub parent: Arc<FinAlgebra>,
    pub values: Vec<CycloScalar>,
}

impl LinearFunctional {
    pub fn new(parent: Arc<FinAlgebra>, values: Vec<CycloScalar>) -> Self {
        assert_eq!(values.len(), parent.dim());
        LinearFunctional { parent, values }
    }

    pub fn eval(&self, coeffs: &[CycloScalar]) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for (v, c) in self.values.iter().zip(coeffs) {
            if !v.is_zero() && !c.is_zero() {
                acc = acc.add(&v.mul(c));
            }
        }
        acc
    }

    pub fn is_trace(&self) -> bool {
        let d = self.parent.dim();
        for i in 0..d {
            for j in 0..i {
                let ij = self.parent.basis_product(i, j).to_dense(d);
                let ji = self.parent.basis_product(j, i).to_dense(d);
                if self.eval(&ij) != self.eval(&ji) {
                    return false;
                }
            }
        }
        true
    }
}

/// Basis of the space of traces {phi : phi(ab) = phi(ba)}, computed as the
/// exact nullspace of the commutator-pairing system.
pub fn trace_space(alg: &Arc<FinAlgebra>) -> Vec<LinearFunctional> {
    let d = alg.dim();
    let mut m = SparseMat::zero(d * d, d);
    for i in 0..d {
        for j in 0..d {
            let mut row = alg.basis_product(i, j).clone();
            row = row.axpy_sub(&CycloScalar::one(), alg.basis_product(j, i));
            m.rows[i * d + j] = row;
        }
    }
    m.nullspace()
        .into_iter()
        .map(|v| LinearFunctional::new(alg.clone(), v))
        .collect()
}

/// A finite-dimensional representation by explicit matrices.
#[derive(Clone)]
pub struct Representation {
    pub parent: Arc<FinAlgebra>,
    pub carrier_dim: usize,
    /// One carrier_dim x carrier_dim matrix per algebra basis element.
    pub matrices: Vec<DenseMat>,
    pub cyclic_vector: Option<Vec<CycloScalar>>,
}

impl Representation {
    pub fn apply(&self, a: &[CycloScalar]) -> DenseMat {
        let mut out = dmat_zero(self.carrier_dim, self.carrier_dim);
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.carrier_dim {
                for s in 0..self.carrier_dim {
                    if !self.matrices[i][r][s].is_zero() {
                        out[r][s] = out[r][s].add(&c.mul(&self.matrices[i][r][s]));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.parent.dim();
        let unit_m = self.apply(self.parent.unit());
        if !crate::linalg::dmat_eq(&unit_m, &dmat_identity(self.carrier_dim)) {
            return Err(NcgError::Invalid("representation: pi(1) != I".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = crate::linalg::dmat_mul(&self.matrices[i], &self.matrices[j]);
                let rhs = self.apply(&self.parent.basis_product(i, j).to_dense(d));
                if !crate::linalg::dmat_eq(&lhs, &rhs) {
                    return Err(NcgError::Invalid(format!(
                        "representation fails on ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when the representation separates algebra elements.
    pub fn is_faithful(&self) -> bool {
        let d = self.parent.dim();
        let n2 = self.carrier_dim * self.carrier_dim;
        let mut m = SparseMat::zero(n2, d);
        for i in 0..d {
            for r in 0..self.carrier_dim {
                for s in 0..self.carrier_dim {
                    let v = &self.matrices[i][r][s];
                    if !v.is_zero() {
                        m.rows[r * self.carrier_dim + s].push(i, v.clone());
                    }
                }
            }
        }
        let m = m.normalized();
        m.rank() == d
    }
}

/// Rigorous positive-semidefiniteness of the Hermitian form of a state,
/// by exact congruence elimination plus certified signs of the real pivots.
fn hermitian_psd(g: &DenseMat) -> Result<bool> {
    let n = g.len();
    let mut h = g.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if active.is_empty() {
            return Ok(true);
        }
        // find a strictly positive diagonal pivot
        let mut pivot: Option<usize> = None;
        for &p in &active {
            let dpp = &h[p][p];
            if !dpp.is_real() {
                return Err(NcgError::Invalid(
                    "state form has non-real diagonal".into(),
                ));
            }
            match sign_real_cyclo(dpp) {
                1 => {
                    pivot = Some(p);
                    break;
                }
                -1 => return Ok(false),
                _ => {}
            }
        }
        match pivot {
            None => {
                // all remaining diagonal entries are exactly zero: PSD iff
                // the remaining block is identically zero
                for &r in &active {
                    for &s in &active {
                        if !h[r][s].is_zero() {
                            return Ok(false);
                        }
                    }
                }
                return Ok(true);
            }
            Some(p) => {
                let dpp = h[p][p].clone();
                active.retain(|&x| x != p);
                for &r in &active {
                    if h[r][p].is_zero() {
                        continue;
                    }
                    let f = h[r][p].div(&dpp);
                    for &s in &active {
                        let t = f.mul(&h[p][s]);
                        h[r][s] = h[r][s].sub(&t);
                    }
                    h[r][p] = CycloScalar::zero();
                }
                for &s in &active {
                    h[p][s] = CycloScalar::zero();
                }
            }
        }
    }
}

/// GNS construction: carrier A/N with left multiplication, cyclic vector the
/// class of 1. The state must be positive and normalized.
pub fn gns(alg: &Arc<FinAlgebra>, state: &LinearFunctional) -> Result<Representation> {
    if !alg.has_involution() {
        return Err(NcgError::MissingInvolution);
    }
    let d = alg.dim();
    if state.eval(alg.unit()) != CycloScalar::one() {
        return Err(NcgError::NotNormalized);
    }
    // B_{ij} = phi(e_i* e_j); Hermitian form <a,b> = phi(b* a) in the basis.
    let stars: Vec<Vec<CycloScalar>> = (0..d)
        .map(|i| {
            let mut e = vec![CycloScalar::zero(); d];
            e[i] = CycloScalar::one();
            alg.star_vec(&e)
        })
        .collect::<Result<_>>()?;
    let mut b = dmat_zero(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut ej = vec![CycloScalar::zero(); d];
            ej[j] = CycloScalar::one();
            b[i][j] = state.eval(&alg.mul_vec(&stars[i], &ej));
        }
    }
    // Hermitian sanity
    for i in 0..d {
        for j in 0..d {
            if b[i][j] != b[j][i].conj() {
                return Err(NcgError::NonPositiveState);
            }
        }
    }
    if !hermitian_psd(&b)? {
        return Err(NcgError::NonPositiveState);
    }
    // N = right nullspace of B = {x : phi(y* x) = 0 for all y}
    let ns = SparseMat::from_dense(&b).nullspace();
    // carrier basis: complement of the pivot coordinates of span(N)
    let (nrows, npivots) = SparseMat::from_dense(&ns).rref();
    let pivot_set: std::collections::BTreeSet<usize> = npivots.iter().copied().collect();
    let carrier: Vec<usize> = (0..d).filter(|i| !pivot_set.contains(i)).collect();
    let project = |x: &[CycloScalar]| -> Vec<CycloScalar> {
        // reduce x modulo the row space of N, then read carrier coordinates
        let mut v = x.to_vec();
        for (k, row) in nrows.iter().enumerate() {
            let pc = npivots[k];
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for (j, c) in &row.entries {
                    v[*j] = v[*j].sub(&f.mul(c));
                }
            }
        }
        carrier.iter().map(|&i| v[i].clone()).collect()
    };
    let cd = carrier.len();
    let mut matrices = Vec::with_capacity(d);
    for i in 0..d {
        let mut ei = vec![CycloScalar::zero(); d];
        ei[i] = CycloScalar::one();
        let mut m = dmat_zero(cd, cd);
        for (c, &bc) in carrier.iter().enumerate() {
            let mut ebc = vec![CycloScalar::zero(); d];
            ebc[bc] = CycloScalar::one();
            let col = project(&alg.mul_vec(&ei, &ebc));
            for (r, val) in col.into_iter().enumerate() {
                m[r][c] = val;
            }
        }
        matrices.push(m);
    }
    let rep = Representation {
        parent: alg.clone(),
        carrier_dim: cd,
        matrices,
        cyclic_vector: Some(project(alg.unit())),
    };
    rep.validate()?;
    // vector-state identity phi(a) = <pi(a) v, v> on the basis, exactly:
    // <u, w> = phi(w* u) computed through representatives.
    // Representative of a carrier vector: the coordinates placed at the
    // carrier indices (a valid coset representative by construction).
    let lift = |v: &[CycloScalar]| -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(); d];
        for (k, &i) in carrier.iter().enumerate() {
            out[i] = v[k].clone();
        }
        out
    };
    let v0 = rep.cyclic_vector.clone().unwrap();
    for i in 0..d {
        let mut ei = vec![CycloScalar::zero(); d];
        ei[i] = CycloScalar::one();
        let pav = dmat_vec(&rep.matrices[i], &v0);
        let lifted = lift(&pav);
        let w = lift(&v0);
        let inner = state.eval(&alg.mul_vec(&alg.star_vec(&w)?, &lifted));
        if inner != state.eval(&ei) {
            return Err(NcgError::Internal("GNS vector-state identity".into()));
        }
    }
    Ok(rep)
}
