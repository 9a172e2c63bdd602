//! The commuting-derivations cyclic 2-cocycle on the rational torus,
//! paired with a diagonal idempotent, checked against a direct tensor
//! contraction that does not go through the pairing machinery.

use ncg_core::algebra::{trace_space, AMatrix, FinAlgebra};
use ncg_core::chern::{pair_even, KIdempotent};
use ncg_core::cochain::Cochain;
use ncg_core::scalar::CycloScalar;

#[test]
fn commuting_derivations_two_cocycle_on_torus() {
    let q = 3usize;
    let alg = FinAlgebra::rational_torus(1, 3).unwrap();
    let d = alg.dim();
    // normalized trace tau(u^a v^b) = [a = b = 0]
    let tau = {
        let ts = trace_space(&alg);
        let t = &ts[0];
        let norm = t.eval(alg.unit());
        ncg_core::algebra::LinearFunctional::new(
            alg.clone(),
            t.values.iter().map(|v| v.div(&norm)).collect(),
        )
    };
    // derivations delta_1(u^a v^b) = a u^a v^b, delta_2(u^a v^b) = b u^a v^b
    let weight = |idx: usize| -> (i64, i64) { ((idx / q) as i64, (idx % q) as i64) };
    // phi(a0, a1, a2) = tau(a0 (d1 a1 d2 a2 - d2 a1 d1 a2))
    let phi = Cochain::scalar_from_fn(&alg, 2, |t| {
        let (a1u, a1v) = weight(t[1]);
        let (a2u, a2v) = weight(t[2]);
        let skew = a1u * a2v - a1v * a2u;
        if skew == 0 {
            return CycloScalar::zero();
        }
        let mut e1 = vec![CycloScalar::zero(); d];
        e1[t[1]] = CycloScalar::one();
        let mut e2 = vec![CycloScalar::zero(); d];
        e2[t[2]] = CycloScalar::one();
        let mut e0 = vec![CycloScalar::zero(); d];
        e0[t[0]] = CycloScalar::one();
        let prod = alg.mul_vec(&e0, &alg.mul_vec(&e1, &e2));
        tau.eval(&prod).mul(&CycloScalar::from_int(skew))
    });
    // e = (1 + u + u^2)/3, a diagonal idempotent in the matrix picture
    let third = CycloScalar::from_ratio(1, 3);
    let mut coeffs = vec![CycloScalar::zero(); d];
    for a in 0..q {
        coeffs[a * q] = third.clone();
    }
    let mut m = AMatrix::zero(&alg, 1);
    m.entries[0][0] = coeffs.clone();
    let e = KIdempotent::new(m).unwrap();
    // On the q^2-dimensional quotient the weight maps are not derivations
    // (they fail on wrapped exponents: delta_1(u^3) = 0 while the Leibniz
    // expansion gives 3), so phi is not a genuine cyclic cocycle here and
    // the guarded pairing must reject it.
    assert!(matches!(
        pair_even(&phi, &e),
        Err(ncg_core::error::NcgError::NotCyclicCocycle)
    ));
    // route 1: the raw amplified evaluation phi_k(e, e, e)
    let paired = ncg_core::chern::amplified_eval(&phi, &[&e.0, &e.0, &e.0]);
    // route 2: direct contraction sum over basis triples
    let mut direct = CycloScalar::zero();
    for x in 0..d {
        if coeffs[x].is_zero() {
            continue;
        }
        for y in 0..d {
            if coeffs[y].is_zero() {
                continue;
            }
            for z in 0..d {
                if coeffs[z].is_zero() {
                    continue;
                }
                let idx = (x * d + y) * d + z;
                let v = &phi.values[idx];
                if !v.is_zero() {
                    direct = direct.add(&coeffs[x].mul(&coeffs[y]).mul(&coeffs[z]).mul(v));
                }
            }
        }
    }
    assert_eq!(paired, direct, "pairing equals the direct contraction");
}
