//! Formal pseudodifferential operators on the circle: windowed composition,
//! the Adler-Manin residue trace, the log-derivative derivation, and the
//! Radul cocycle.
//!
//! Coefficients are Laurent polynomials in z = e^{ix}, so d/dx = i z d/dz
//! and derivatives stay exact in Q(zeta_4). Orders are truncated to an
//! explicit window; every operation records whether nonzero tail terms were
//! discarded, and coefficients at orders inside the window are always exact
//! (composition only pushes orders downward).

use std::collections::BTreeMap;

use crate::error::{NcgError, Result};
use crate::laurent::LaurentElement;
use crate::linalg::{SparseMat, SparseVec};
use crate::scalar::CycloScalar;

#[derive(Clone, Debug)]
pub struct FormalPsiDO {
    /// Inclusive order window [k_min, k_max].
    pub window: (i64, i64),
    pub coeffs: BTreeMap<i64, LaurentElement>,
    /// Set when a computation discarded nonzero orders below k_min.
    pub truncated: bool,
}

impl FormalPsiDO {
    pub fn zero(window: (i64, i64)) -> Self {
        FormalPsiDO {
            window,
            coeffs: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn term(window: (i64, i64), order: i64, coeff: LaurentElement) -> Result<Self> {
        if order < window.0 || order > window.1 {
            return Err(NcgError::WindowTooSmall(format!(
                "order {order} outside window [{}, {}]",
                window.0, window.1
            )));
        }
        let mut p = Self::zero(window);
        if !coeff.is_zero() {
            p.coeffs.insert(order, coeff);
        }
        Ok(p)
    }

    /// The operator d^k (any sign of k inside the window).
    pub fn d_pow(window: (i64, i64), k: i64) -> Result<Self> {
        Self::term(window, k, LaurentElement::one())
    }

    pub fn coeff(&self, order: i64) -> LaurentElement {
        self.coeffs.get(&order).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, order: i64, c: &LaurentElement) {
        if c.is_zero() {
            return;
        }
        let cur = self.coeff(order);
        let v = cur.add(c);
        if v.is_zero() {
            self.coeffs.remove(&order);
        } else {
            self.coeffs.insert(order, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.window, other.window, "window mismatch");
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (k, c) in &other.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        let mut out = Self::zero(self.window);
        out.truncated = self.truncated;
        for (k, c) in &self.coeffs {
            out.add_term(*k, &c.scale(f));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycloScalar::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Binomial coefficient C(m, j) for integer m (possibly negative), j >= 0.
fn binomial(m: i64, j: u64) -> CycloScalar {
    let mut num = CycloScalar::one();
    for t in 0..j {
        num = num.mul(&CycloScalar::from_int(m - t as i64));
    }
    let mut den = CycloScalar::one();
    for t in 1..=j {
        den = den.mul(&CycloScalar::from_int(t as i64));
    }
    num.div(&den)
}

/// Composition A o B truncated to the window, using
/// d^m b = sum_{j >= 0} C(m, j) b^{(j)} d^{m-j}. The rule reproduces the
/// generating relations d z = z d + iz and d d^{-1} = d^{-1} d = 1 and is
/// associative whenever no truncation occurred (both facts are tested).
pub fn psido_mul(a: &FormalPsiDO, b: &FormalPsiDO, window: (i64, i64)) -> FormalPsiDO {
    let mut out = FormalPsiDO::zero(window);
    out.truncated = a.truncated || b.truncated;
    for (m, am) in &a.coeffs {
        for (n, bn) in &b.coeffs {
            // a_m d^m (b_n d^n) = a_m sum_j C(m,j) b_n^{(j)} d^{m+n-j}
            let mut deriv = bn.clone();
            let mut j: u64 = 0;
            loop {
                let order = m + n - j as i64;
                let cmj = binomial(*m, j);
                if order < window.0 {
                    // further terms only go lower; flag if anything nonzero
                    // is being dropped
                    if !cmj.is_zero() && !deriv.is_zero() {
                        out.truncated = true;
                    }
                    break;
                }
                if order > window.1 {
                    // entire product sticks out above: the term cannot be
                    // represented at all
                    out.truncated = true;
                } else if !cmj.is_zero() && !deriv.is_zero() {
                    out.add_term(order, &am.mul(&deriv).scale(&cmj));
                }
                // stop early when the expansion terminates
                if *m >= 0 && j as i64 >= *m {
                    break;
                }
                deriv = deriv.dx();
                if deriv.is_zero() {
                    break;
                }
                j += 1;
            }
        }
    }
    out
}

/// Commutator [A, B] in the window.
pub fn psido_commutator(a: &FormalPsiDO, b: &FormalPsiDO, window: (i64, i64)) -> FormalPsiDO {
    psido_mul(a, b, window).add(&psido_mul(b, a, window).neg())
}

/// Adler-Manin residue trace: the z^0 Fourier coefficient of the order -1
/// coefficient. Errors when the window excludes order -1.
pub fn residue_trace(a: &FormalPsiDO) -> Result<CycloScalar> {
    if a.window.0 > -1 || a.window.1 < -1 {
        return Err(NcgError::WindowExcludesResidue);
    }
    Ok(a.coeff(-1).coeff(0))
}

/// delta(A) = [log d, A]: on a single term,
/// [log d, a d^n] = sum_{k >= 1} (-1)^{k-1}/k a^{(k)} d^{n-k}.
pub fn log_derivation(a: &FormalPsiDO) -> FormalPsiDO {
    let window = a.window;
    let mut out = FormalPsiDO::zero(window);
    out.truncated = a.truncated;
    for (n, an) in &a.coeffs {
        let mut deriv = an.dx();
        let mut k: i64 = 1;
        loop {
            if deriv.is_zero() {
                break;
            }
            let order = n - k;
            if order < window.0 {
                out.truncated = true;
                break;
            }
            let mut c = CycloScalar::from_ratio(1, k);
            if k % 2 == 0 {
                c = c.neg();
            }
            out.add_term(order, &deriv.scale(&c));
            deriv = deriv.dx();
            k += 1;
        }
    }
    out
}

/// Radul cocycle phi(a, b) = Tr(a [log d, b]).
pub fn radul_cocycle(a: &FormalPsiDO, b: &FormalPsiDO, window: (i64, i64)) -> Result<CycloScalar> {
    let db = log_derivation(b);
    residue_trace(&psido_mul(a, &db, window))
}

/// Dimension of the space of linear functionals on the windowed symbol
/// space span{z^j d^k : |j| <= zmax, k in window} that vanish on the
/// window-projections of all basis commutators, with components of
/// |z-degree| > zmax (the truncation artifacts) projected away.
pub fn windowed_trace_space_dim(window: (i64, i64), zmax: i64) -> usize {
    let orders: Vec<i64> = (window.0..=window.1).collect();
    let zdegs: Vec<i64> = (-zmax..=zmax).collect();
    let dim = orders.len() * zdegs.len();
    let coord = |j: i64, k: i64| -> usize {
        let zi = (j + zmax) as usize;
        let ki = (k - window.0) as usize;
        zi * orders.len() + ki
    };
    let mut rows: Vec<SparseVec> = Vec::new();
    for &a in &zdegs {
        for &k in &orders {
            for &b in &zdegs {
                for &l in &orders {
                    let op1 = FormalPsiDO::term(
                        window,
                        k,
                        LaurentElement::monomial(a, CycloScalar::one()),
                    )
                    .unwrap();
                    let op2 = FormalPsiDO::term(
                        window,
                        l,
                        LaurentElement::monomial(b, CycloScalar::one()),
                    )
                    .unwrap();
                    let c = psido_commutator(&op1, &op2, window);
                    // every term of [z^a d^k, z^b d^l] has z-degree a + b;
                    // outside the z-range the whole row is artifact
                    if (a + b).abs() > zmax {
                        continue;
                    }
                    let mut row = SparseVec::new();
                    for (ord, coeff) in &c.coeffs {
                        for (j, v) in &coeff.terms {
                            if j.abs() <= zmax {
                                row.push(coord(*j, *ord), v.clone());
                            }
                        }
                    }
                    let row = row.normalize();
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    SparseMat::from_rows(dim, rows).nullspace().len()
}
