//! Deformation quantization with constant Poisson structures: Poisson
//! brackets, the Moyal-Weyl star product as an exact truncated formal
//! series (i realized as zeta_4), the associativity/obstruction machinery,
//! and Weyl-algebra normal forms with principal symbols.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::FinAlgebra;
use crate::cochain::{CoeffMode, Cochain};
use crate::deformation::{
    circle_product, deformation_differential, deformation_differential_matrix,
    multiplication_cochain,
};
use crate::error::{NcgError, Result};
use crate::scalar::CycloScalar;

/// Sparse polynomial in a fixed list of variables.
#[derive(Clone, Debug, Default)]
pub struct PolyElement {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, CycloScalar>,
}

impl PolyElement {
    pub fn zero(nvars: usize) -> Self {
        PolyElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycloScalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CycloScalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, CycloScalar::one());
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &CycloScalar) {
        assert_eq!(exps.len(), self.nvars);
        let cur = self.terms.get(&exps).cloned().unwrap_or_else(CycloScalar::zero);
        let v = cur.add(c);
        if v.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &c.neg());
        }
        out
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let v = c.mul(f);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &c1.mul(c2));
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &c.mul(&CycloScalar::from_int(e[i] as i64)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A constant antisymmetric Poisson structure.
#[derive(Clone, Debug)]
pub struct PoissonStruct {
    pub dim: usize,
    pub matrix: Vec<Vec<CycloScalar>>,
}

impl PoissonStruct {
    pub fn new(matrix: Vec<Vec<CycloScalar>>) -> Result<Self> {
        let dim = matrix.len();
        for r in 0..dim {
            if matrix[r].len() != dim {
                return Err(NcgError::DimensionMismatch("Poisson matrix".into()));
            }
            for c in 0..dim {
                if matrix[r][c] != matrix[c][r].neg() {
                    return Err(NcgError::Invalid("Poisson matrix not antisymmetric".into()));
                }
            }
        }
        Ok(PoissonStruct { dim, matrix })
    }

    /// Standard symplectic structure on (x_1..x_n, y_1..y_n): {x_i, y_i} = 1.
    pub fn standard(n: usize) -> Self {
        let dim = 2 * n;
        let mut m = vec![vec![CycloScalar::zero(); dim]; dim];
        for i in 0..n {
            m[i][n + i] = CycloScalar::one();
            m[n + i][i] = CycloScalar::from_int(-1);
        }
        PoissonStruct { dim, matrix: m }
    }
}

/// {f, g} = sum pi^{ij} d_i f d_j g.
pub fn poisson_bracket(pi: &PoissonStruct, f: &PolyElement, g: &PolyElement) -> Result<PolyElement> {
    if f.nvars != pi.dim || g.nvars != pi.dim {
        return Err(NcgError::DimensionMismatch("bracket variables".into()));
    }
    let mut out = PolyElement::zero(pi.dim);
    for i in 0..pi.dim {
        for j in 0..pi.dim {
            if pi.matrix[i][j].is_zero() {
                continue;
            }
            let t = f.partial(i).mul(&g.partial(j)).scale(&pi.matrix[i][j]);
            out = out.add(&t);
        }
    }
    Ok(out)
}

/// Truncated formal series in h with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct FormalSeries {
    pub order: usize,
    pub coeffs: Vec<PolyElement>,
}

impl FormalSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        FormalSeries {
            order,
            coeffs: vec![PolyElement::zero(nvars); order + 1],
        }
    }

    pub fn from_poly(p: &PolyElement, order: usize) -> Self {
        let mut s = Self::zero(p.nvars, order);
        s.coeffs[0] = p.clone();
        s
    }

    pub fn coeff(&self, n: usize) -> &PolyElement {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        FormalSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        FormalSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// The n-th Moyal bidifferential term m(P^n(f (x) g)) where
/// P = sum pi^{ij} d_i (x) d_j.
fn moyal_term(pi: &PoissonStruct, f: &PolyElement, g: &PolyElement, n: usize) -> PolyElement {
    let mut pairs: Vec<(PolyElement, PolyElement)> = vec![(f.clone(), g.clone())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (a, b) in &pairs {
            for i in 0..pi.dim {
                for j in 0..pi.dim {
                    if pi.matrix[i][j].is_zero() {
                        continue;
                    }
                    let da = a.partial(i).scale(&pi.matrix[i][j]);
                    if da.is_zero() {
                        continue;
                    }
                    let db = b.partial(j);
                    if db.is_zero() {
                        continue;
                    }
                    next.push((da, db));
                }
            }
        }
        pairs = next;
        if pairs.is_empty() {
            return PolyElement::zero(f.nvars);
        }
    }
    let mut out = PolyElement::zero(f.nvars);
    for (a, b) in pairs {
        out = out.add(&a.mul(&b));
    }
    out
}

/// Moyal-Weyl star product truncated at h^N:
/// f * g = sum_n (1/n!) (-i h/2)^n m(P^n (f (x) g)).
pub fn moyal_product(
    pi: &PoissonStruct,
    f: &PolyElement,
    g: &PolyElement,
    order: usize,
) -> Result<FormalSeries> {
    if f.nvars != pi.dim || g.nvars != pi.dim {
        return Err(NcgError::DimensionMismatch("star product variables".into()));
    }
    let mut out = FormalSeries::zero(pi.dim, order);
    let minus_i_half = CycloScalar::i().neg().mul(&CycloScalar::from_ratio(1, 2));
    let mut prefactor = CycloScalar::one();
    for n in 0..=order {
        if n > 0 {
            prefactor = prefactor
                .mul(&minus_i_half)
                .mul(&CycloScalar::from_ratio(1, n as i64));
        }
        let t = moyal_term(pi, f, g, n).scale(&prefactor);
        out.coeffs[n] = out.coeffs[n].add(&t);
    }
    Ok(out)
}

/// Star product of truncated series (bilinear extension of moyal_product).
pub fn star_series(
    pi: &PoissonStruct,
    f: &FormalSeries,
    g: &FormalSeries,
    order: usize,
) -> Result<FormalSeries> {
    let mut out = FormalSeries::zero(pi.dim, order);
    let minus_i_half = CycloScalar::i().neg().mul(&CycloScalar::from_ratio(1, 2));
    for p in 0..=order.min(f.order) {
        for q in 0..=(order - p).min(g.order) {
            let mut prefactor = CycloScalar::one();
            for n in 0..=(order - p - q) {
                if n > 0 {
                    prefactor = prefactor
                        .mul(&minus_i_half)
                        .mul(&CycloScalar::from_ratio(1, n as i64));
                }
                let t = moyal_term(pi, &f.coeffs[p], &g.coeffs[q], n).scale(&prefactor);
                out.coeffs[p + q + n] = out.coeffs[p + q + n].add(&t);
            }
        }
    }
    Ok(out)
}

/// Compare (f*g)*h with f*(g*h) through h^order; returns the first failing
/// power, or None when associativity holds exactly.
pub fn check_associativity(
    pi: &PoissonStruct,
    f: &PolyElement,
    g: &PolyElement,
    h: &PolyElement,
    order: usize,
) -> Result<Option<usize>> {
    let fg = moyal_product(pi, f, g, order)?;
    let gh = moyal_product(pi, g, h, order)?;
    let left = star_series(pi, &fg, &FormalSeries::from_poly(h, order), order)?;
    let right = star_series(pi, &FormalSeries::from_poly(f, order), &gh, order)?;
    for n in 0..=order {
        if !left.coeffs[n].sub(&right.coeffs[n]).is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Result of one level of the deformation recursion.
pub struct DeformationStep {
    pub obstruction: Cochain,
    pub is_cocycle: bool,
    pub solution: Option<Cochain>,
}

/// Given B_0 = multiplication and B_1, ..., B_{n-1} satisfying the
/// associativity equations up to level n-1, assemble the level-n
/// obstruction sum B_i o B_{n-i}, check it is a Hochschild 3-cocycle, and
/// solve delta B_n = obstruction when possible (with an exactly zero
/// residual).
pub fn deformation_step(b_list: &[Cochain], n: usize) -> Result<DeformationStep> {
    if b_list.is_empty() || n == 0 || b_list.len() < n {
        return Err(NcgError::Invalid(
            "need B_0..B_{n-1} for a level-n step".into(),
        ));
    }
    let alg = b_list[0].alg.clone();
    if !alg.is_commutative() {
        return Err(NcgError::NotCommutative);
    }
    for (k, b) in b_list.iter().enumerate() {
        if b.mode != CoeffMode::Adjoint || b.degree != 2 {
            return Err(NcgError::ModeMismatch);
        }
        let _ = k;
    }
    let m = multiplication_cochain(&alg);
    if b_list[0].values != m.values {
        return Err(NcgError::DeformationPrecondition(0));
    }
    let obstruction_at = |lvl: usize| -> Result<Cochain> {
        let mut acc = Cochain::zero_adjoint(&alg, 3);
        for i in 1..lvl {
            let t = circle_product(&b_list[i], &b_list[lvl - i])?;
            acc.values = crate::linalg::vec_add(&acc.values, &t.values);
        }
        Ok(acc)
    };
    // preconditions at levels < n
    for lvl in 1..n {
        let rhs = obstruction_at(lvl)?;
        let lhs = deformation_differential(&b_list[lvl])?;
        if lhs.values != rhs.values {
            return Err(NcgError::DeformationPrecondition(lvl));
        }
    }
    let obstruction = obstruction_at(n)?;
    let is_cocycle = deformation_differential(&obstruction)?.is_zero();
    let solution = {
        let dmat = deformation_differential_matrix(&alg, 2);
        match dmat.solve(&obstruction.values) {
            Some(x) => {
                let cand = Cochain {
                    alg: alg.clone(),
                    degree: 2,
                    mode: CoeffMode::Adjoint,
                    values: x,
                };
                // residual must be exactly zero
                let chk = deformation_differential(&cand)?;
                if chk.values == obstruction.values {
                    Some(cand)
                } else {
                    return Err(NcgError::Internal("nonzero solver residual".into()));
                }
            }
            None => None,
        }
    };
    Ok(DeformationStep {
        obstruction,
        is_cocycle,
        solution,
    })
}

/// Adjoint 2-cochain from a skew bracket on a commutative algebra given by
/// a table of values on basis pairs.
pub fn adjoint_two_cochain(
    alg: &Arc<FinAlgebra>,
    values: impl Fn(usize, usize) -> Vec<CycloScalar>,
) -> Cochain {
    let d = alg.dim();
    let mut c = Cochain::zero_adjoint(alg, 2);
    for i in 0..d {
        for j in 0..d {
            crate::deformation::set_adjoint_value(&mut c, &[i, j], &values(i, j));
        }
    }
    c
}

// ---- Weyl algebra -----------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGen {
    X(usize),
    P(usize),
}

/// Element of the Weyl algebra A_n in normal order: all x's to the left of
/// all p's; keys are (x-exponents, p-exponents).
#[derive(Clone, Debug, Default)]
pub struct WeylElement {
    pub nvars: usize,
    pub terms: BTreeMap<(Vec<u32>, Vec<u32>), CycloScalar>,
}

impl WeylElement {
    pub fn zero(nvars: usize) -> Self {
        WeylElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut w = Self::zero(nvars);
        w.terms
            .insert((vec![0; nvars], vec![0; nvars]), CycloScalar::one());
        w
    }

    pub fn add_term(&mut self, key: (Vec<u32>, Vec<u32>), c: &CycloScalar) {
        let cur = self.terms.get(&key).cloned().unwrap_or_else(CycloScalar::zero);
        let v = cur.add(c);
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            let v = c.mul(f);
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Right multiplication by a generator, staying in normal order:
    /// (x^a p^b) x_i = x^{a+e_i} p^b + b_i x^a p^{b-e_i}.
    pub fn mul_gen(&self, g: WeylGen) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((a, b), c) in &self.terms {
            match g {
                WeylGen::X(i) => {
                    let mut a2 = a.clone();
                    a2[i] += 1;
                    out.add_term((a2, b.clone()), c);
                    if b[i] > 0 {
                        let mut b2 = b.clone();
                        b2[i] -= 1;
                        out.add_term(
                            (a.clone(), b2),
                            &c.mul(&CycloScalar::from_int(b[i] as i64)),
                        );
                    }
                }
                WeylGen::P(i) => {
                    let mut b2 = b.clone();
                    b2[i] += 1;
                    out.add_term((a.clone(), b2), c);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((a, b), c) in &other.terms {
            // self * x^a p^b
            let mut cur = self.scale(c);
            for (i, &e) in a.iter().enumerate() {
                for _ in 0..e {
                    cur = cur.mul_gen(WeylGen::X(i));
                }
            }
            for (i, &e) in b.iter().enumerate() {
                for _ in 0..e {
                    cur = cur.mul_gen(WeylGen::P(i));
                }
            }
            out = out.add(&cur);
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self).scale(&CycloScalar::from_int(-1)))
    }

    /// Filtration degree: top total p-degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|(_, b)| b.iter().sum::<u32>())
            .max()
    }
}

/// Normal-ordered expansion of a word in the generators.
pub fn weyl_normal_form(nvars: usize, word: &[WeylGen]) -> Result<WeylElement> {
    for g in word {
        let i = match g {
            WeylGen::X(i) | WeylGen::P(i) => *i,
        };
        if i >= nvars {
            return Err(NcgError::Invalid(format!("unknown generator index {i}")));
        }
    }
    let mut acc = WeylElement::one(nvars);
    for g in word {
        acc = acc.mul_gen(*g);
    }
    Ok(acc)
}

/// Principal symbol: top-filtration part with p_i -> y_i, as a polynomial
/// in (x_1..x_n, y_1..y_n).
pub fn principal_symbol(w: &WeylElement) -> Result<PolyElement> {
    let deg = w.degree().ok_or_else(|| NcgError::Invalid("symbol of zero".into()))?;
    let n = w.nvars;
    let mut out = PolyElement::zero(2 * n);
    for ((a, b), c) in &w.terms {
        if b.iter().sum::<u32>() != deg {
            continue;
        }
        let mut e = vec![0u32; 2 * n];
        e[..n].copy_from_slice(a);
        e[n..].copy_from_slice(b);
        out.add_term(e, c);
    }
    Ok(out)
}
