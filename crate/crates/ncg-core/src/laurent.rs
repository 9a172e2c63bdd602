//! The Laurent algebra C[z, z^{-1}] (equivalently the group algebra of Z)
//! with lazily evaluated cochains on its basis, sparse chains, and the
//! winding cocycle. Infinite-dimensional, so only pointwise operator
//! application is offered here; dimension computations are refused by
//! construction (there is no such entry point).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{NcgError, Result};
use crate::scalar::CycloScalar;

/// Finitely supported element of C[z, z^{-1}].
#[derive(Clone, Debug, Default)]
pub struct LaurentElement {
    pub terms: BTreeMap<i64, CycloScalar>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        LaurentElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, CycloScalar::one())
    }

    pub fn monomial(k: i64, c: CycloScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentElement { terms }
    }

    pub fn coeff(&self, k: i64) -> CycloScalar {
        self.terms.get(&k).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn set(&mut self, k: i64, c: CycloScalar) {
        if c.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, c);
        }
    }

    pub fn add_term(&mut self, k: i64, c: &CycloScalar) {
        let v = self.coeff(k).add(c);
        self.set(k, v);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &c.neg());
        }
        out
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.set(*k, c.mul(f));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1 + k2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// d/dx with z = e^{ix}: z^k -> i k z^k.
    pub fn dx(&self) -> Self {
        let i = CycloScalar::i();
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.set(*k, c.mul(&i).mul(&CycloScalar::from_int(*k)));
        }
        out
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }
}

/// A scalar multilinear functional on the Laurent algebra, evaluated
/// lazily on basis exponents.
#[derive(Clone)]
pub struct LazyCochain {
    pub degree: usize,
    eval: Arc<dyn Fn(&[i64]) -> CycloScalar + Send + Sync>,
}

impl LazyCochain {
    pub fn new(
        degree: usize,
        eval: impl Fn(&[i64]) -> CycloScalar + Send + Sync + 'static,
    ) -> Self {
        LazyCochain {
            degree,
            eval: Arc::new(eval),
        }
    }

    pub fn eval_basis(&self, exps: &[i64]) -> CycloScalar {
        assert_eq!(exps.len(), self.degree + 1);
        (self.eval)(exps)
    }

    /// Multilinear extension to finitely supported elements.
    pub fn eval_elements(&self, args: &[&LaurentElement]) -> CycloScalar {
        assert_eq!(args.len(), self.degree + 1);
        let mut acc = CycloScalar::zero();
        let mut exps = vec![0i64; args.len()];
        fn rec(
            k: usize,
            args: &[&LaurentElement],
            exps: &mut Vec<i64>,
            coeff: CycloScalar,
            f: &LazyCochain,
            acc: &mut CycloScalar,
        ) {
            if k == args.len() {
                let v = f.eval_basis(exps);
                if !v.is_zero() {
                    *acc = acc.add(&coeff.mul(&v));
                }
                return;
            }
            for (e, c) in &args[k].terms {
                exps[k] = *e;
                rec(k + 1, args, exps, coeff.mul(c), f, acc);
            }
        }
        rec(0, args, &mut exps, CycloScalar::one(), self, &mut acc);
        acc
    }

    /// The winding cocycle phi(f, g) = sum_k k f_{-k} g_k.
    pub fn winding() -> Self {
        LazyCochain::new(1, |e| {
            if e[0] + e[1] == 0 {
                CycloScalar::from_int(e[1])
            } else {
                CycloScalar::zero()
            }
        })
    }

    /// The canonical trace tau(sum a_k z^k) = a_0 as a 0-cochain.
    pub fn canonical_trace() -> Self {
        LazyCochain::new(0, |e| {
            if e[0] == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        })
    }
}

/// Pointwise operator application on lazy cochains (the only operations an
/// infinite basis-indexed algebra supports).
pub fn lazy_apply(kind: crate::cochain::OperatorKind, phi: &LazyCochain) -> Result<LazyCochain> {
    use crate::cochain::OperatorKind as K;
    let n = phi.degree;
    let inner = phi.clone();
    match kind {
        K::B => Ok(LazyCochain::new(n + 1, move |e| {
            let mut acc = CycloScalar::zero();
            for t in 0..=n {
                let mut args = Vec::with_capacity(n + 1);
                args.extend_from_slice(&e[..t]);
                args.push(e[t] + e[t + 1]);
                args.extend_from_slice(&e[t + 2..]);
                let v = inner.eval_basis(&args);
                acc = if t % 2 == 0 { acc.add(&v) } else { acc.sub(&v) };
            }
            let mut args = Vec::with_capacity(n + 1);
            args.push(e[n + 1] + e[0]);
            args.extend_from_slice(&e[1..=n]);
            let v = inner.eval_basis(&args);
            if (n + 1) % 2 == 0 {
                acc.add(&v)
            } else {
                acc.sub(&v)
            }
        })),
        K::BPrime => Ok(LazyCochain::new(n + 1, move |e| {
            let mut acc = CycloScalar::zero();
            for t in 0..=n {
                let mut args = Vec::with_capacity(n + 1);
                args.extend_from_slice(&e[..t]);
                args.push(e[t] + e[t + 1]);
                args.extend_from_slice(&e[t + 2..]);
                let v = inner.eval_basis(&args);
                acc = if t % 2 == 0 { acc.add(&v) } else { acc.sub(&v) };
            }
            acc
        })),
        K::Lambda => Ok(LazyCochain::new(n, move |e| {
            let mut args = Vec::with_capacity(n + 1);
            args.push(e[n]);
            args.extend_from_slice(&e[..n]);
            let v = inner.eval_basis(&args);
            if n % 2 == 0 {
                v
            } else {
                v.neg()
            }
        })),
        K::N => Ok(LazyCochain::new(n, move |e| {
            let mut acc = CycloScalar::zero();
            let mut args = e.to_vec();
            for j in 0..=n {
                let v = inner.eval_basis(&args);
                // lambda^j carries sign (-1)^{nj}
                if (n * j) % 2 == 0 {
                    acc = acc.add(&v);
                } else {
                    acc = acc.sub(&v);
                }
                args.rotate_left(1);
            }
            acc
        })),
        K::S => {
            if n == 0 {
                return Err(NcgError::DegreeUnderflow("s on degree-0 cochain".into()));
            }
            Ok(LazyCochain::new(n - 1, move |e| {
                let mut args = Vec::with_capacity(n + 1);
                args.extend_from_slice(e);
                args.push(0);
                let v = inner.eval_basis(&args);
                if n % 2 == 0 {
                    v
                } else {
                    v.neg()
                }
            }))
        }
        K::ConnesB => {
            if n == 0 {
                return Err(NcgError::DegreeUnderflow("B on degree-0 cochain".into()));
            }
            let lam = lazy_apply(K::Lambda, phi)?;
            let one_minus = {
                let a = phi.clone();
                let b = lam;
                LazyCochain::new(n, move |e| a.eval_basis(e).sub(&b.eval_basis(e)))
            };
            let s = lazy_apply(K::S, &one_minus)?;
            lazy_apply(K::N, &s)
        }
    }
}

/// Rotation sign check: is (1 - lambda) phi = 0 and b phi = 0 on all basis
/// tuples with exponents bounded by the window.
pub fn check_cyclic_cocycle_on_window(phi: &LazyCochain, window: i64) -> Result<bool> {
    let n = phi.degree;
    let lam = lazy_apply(crate::cochain::OperatorKind::Lambda, phi)?;
    let b = lazy_apply(crate::cochain::OperatorKind::B, phi)?;
    let arity = n + 1;
    let width = (2 * window + 1) as usize;
    let total = width.pow(arity as u32);
    for idx in 0..total {
        let mut t = Vec::with_capacity(arity);
        let mut rest = idx;
        for _ in 0..arity {
            t.push((rest % width) as i64 - window);
            rest /= width;
        }
        if phi.eval_basis(&t) != lam.eval_basis(&t) {
            return Ok(false);
        }
    }
    let total_b = width.pow((arity + 1) as u32);
    for idx in 0..total_b {
        let mut t = Vec::with_capacity(arity + 1);
        let mut rest = idx;
        for _ in 0..arity + 1 {
            t.push((rest % width) as i64 - window);
            rest /= width;
        }
        if !b.eval_basis(&t).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sparse chain over the Laurent basis: finite sum of elementary tensors
/// z^{m_0} (x) ... (x) z^{m_n}.
#[derive(Clone, Debug, Default)]
pub struct ZChain {
    pub degree: usize,
    pub terms: BTreeMap<Vec<i64>, CycloScalar>,
}

impl ZChain {
    pub fn zero(degree: usize) -> Self {
        ZChain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, tuple: Vec<i64>, c: &CycloScalar) {
        assert_eq!(tuple.len(), self.degree + 1);
        let cur = self.terms.get(&tuple).cloned().unwrap_or_else(CycloScalar::zero);
        let v = cur.add(c);
        if v.is_zero() {
            self.terms.remove(&tuple);
        } else {
            self.terms.insert(tuple, v);
        }
    }

    /// Elementary tensor of Laurent elements.
    pub fn from_tensor(factors: &[&LaurentElement]) -> Self {
        let mut out = ZChain::zero(factors.len() - 1);
        let mut tuple = vec![0i64; factors.len()];
        fn rec(
            k: usize,
            factors: &[&LaurentElement],
            tuple: &mut Vec<i64>,
            coeff: CycloScalar,
            out: &mut ZChain,
        ) {
            if k == factors.len() {
                out.add_term(tuple.clone(), &coeff);
                return;
            }
            for (e, c) in &factors[k].terms {
                tuple[k] = *e;
                rec(k + 1, factors, tuple, coeff.mul(c), out);
            }
        }
        rec(0, factors, &mut tuple, CycloScalar::one(), &mut out);
        out
    }

    pub fn scale(&self, f: &CycloScalar) -> Self {
        let mut out = ZChain::zero(self.degree);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), &c.mul(f));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drop degenerate terms (a unit z^0 in some slot >= 1): the image in
    /// the normalized complex.
    pub fn normalized(&self) -> Self {
        let mut out = ZChain::zero(self.degree);
        for (t, c) in &self.terms {
            if t[1..].iter().any(|&e| e == 0) {
                continue;
            }
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn boundary_b(&self) -> Self {
        let n = self.degree;
        let mut out = ZChain::zero(n.checked_sub(1).expect("b on degree 0"));
        for (t, c) in &self.terms {
            for i in 0..n {
                let mut u = Vec::with_capacity(n);
                u.extend_from_slice(&t[..i]);
                u.push(t[i] + t[i + 1]);
                u.extend_from_slice(&t[i + 2..]);
                let sign = if i % 2 == 0 { c.clone() } else { c.neg() };
                out.add_term(u, &sign);
            }
            let mut u = Vec::with_capacity(n);
            u.push(t[n] + t[0]);
            u.extend_from_slice(&t[1..n]);
            let sign = if n % 2 == 0 { c.clone() } else { c.neg() };
            out.add_term(u, &sign);
        }
        out
    }

    /// Chain-side Connes boundary B = (1 - lambda) s N.
    pub fn boundary_connes(&self) -> Self {
        let n = self.degree;
        let mut out = ZChain::zero(n + 1);
        for (t, c) in &self.terms {
            // N: sum of rotations with signs (-1)^{nj}
            for j in 0..=n {
                let mut rot = t.clone();
                rot.rotate_left(j % (n + 1));
                let sign_nj = (n * j) % 2 == 1;
                // s: append 0-exponent with sign (-1)^n
                let mut app = rot.clone();
                app.push(0);
                let sign_s = n % 2 == 1;
                // (1 - lambda_{n+1})
                let mut rotated = app.clone();
                rotated.rotate_right(1);
                let sign_lam = (n + 1) % 2 == 1;
                let mut coeff = c.clone();
                if sign_nj ^ sign_s {
                    coeff = coeff.neg();
                }
                out.add_term(app, &coeff);
                // minus lambda part
                let mut lam_coeff = coeff.neg();
                if sign_lam {
                    lam_coeff = lam_coeff.neg();
                }
                out.add_term(rotated, &lam_coeff);
            }
        }
        out
    }

    /// Pair with a lazy cochain of the same degree.
    pub fn pair(&self, phi: &LazyCochain) -> CycloScalar {
        assert_eq!(phi.degree, self.degree);
        let mut acc = CycloScalar::zero();
        for (t, c) in &self.terms {
            let v = phi.eval_basis(t);
            if !v.is_zero() {
                acc = acc.add(&c.mul(&v));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::OperatorKind;

    #[test]
    fn winding_on_monomials() {
        let phi = LazyCochain::winding();
        let z = LaurentElement::monomial(1, CycloScalar::one());
        let zi = LaurentElement::monomial(-1, CycloScalar::one());
        assert_eq!(phi.eval_elements(&[&z, &zi]), CycloScalar::from_int(-1));
        let z2 = LaurentElement::monomial(2, CycloScalar::one());
        let z2i = LaurentElement::monomial(-2, CycloScalar::one());
        assert_eq!(phi.eval_elements(&[&z2, &z2i]), CycloScalar::from_int(-2));
    }

    #[test]
    fn winding_is_cyclic_cocycle() {
        let phi = LazyCochain::winding();
        assert!(check_cyclic_cocycle_on_window(&phi, 3).unwrap());
    }

    #[test]
    fn lazy_operator_b_matches_trace_kernel() {
        // canonical trace is a trace: b tau = 0 pointwise
        let tau = LazyCochain::canonical_trace();
        let b = lazy_apply(OperatorKind::B, &tau).unwrap();
        for m0 in -3..=3 {
            for m1 in -3..=3 {
                assert!(b.eval_basis(&[m0, m1]).is_zero());
            }
        }
    }

    #[test]
    fn chain_boundaries() {
        // b(z (x) z^{-1}) = z z^{-1} - z^{-1} z = 0
        let z = LaurentElement::monomial(1, CycloScalar::one());
        let zi = LaurentElement::monomial(-1, CycloScalar::one());
        let ch = ZChain::from_tensor(&[&z, &zi]);
        assert!(ch.boundary_b().is_zero());
        // B^2 = 0 and normalized b B + B b = 0 spot check
        let x = {
            let mut c = ZChain::zero(1);
            c.add_term(vec![2, -1], &CycloScalar::one());
            c.add_term(vec![0, 3], &CycloScalar::from_int(2));
            c
        };
        let bb = x.boundary_connes().boundary_connes();
        assert!(bb.is_zero());
        let anti = x
            .boundary_connes()
            .boundary_b()
            .add(&x.boundary_b().boundary_connes());
        assert!(anti.is_zero());
    }
}
