//! The deformation complex C^*(A, A): Hochschild differential with adjoint
//! coefficients, cup product, Gerstenhaber circle product and bracket.
//!
//! Sign conventions are pinned by two executable anchors: delta f = 0 iff f
//! is a derivation (degree 1), and delta f = -(m o f) - (f o m) for
//! 2-cochains f with m the multiplication.

use std::sync::Arc;

use crate::algebra::FinAlgebra;
use crate::cochain::{index_tuple, tensor_dim, tuple_index, CoeffMode, Cochain};
use crate::error::{NcgError, Result};
use crate::linalg::SparseMat;
use crate::scalar::CycloScalar;

/// Value (in A) of an adjoint cochain on a basis argument tuple.
pub fn adjoint_value(phi: &Cochain, args: &[usize]) -> Vec<CycloScalar> {
    assert_eq!(phi.mode, CoeffMode::Adjoint);
    let d = phi.alg.dim();
    assert_eq!(args.len(), phi.degree);
    let base = tuple_index(d, args) * d;
    phi.values[base..base + d].to_vec()
}

/// Set the value on a basis argument tuple.
pub fn set_adjoint_value(phi: &mut Cochain, args: &[usize], value: &[CycloScalar]) {
    let d = phi.alg.dim();
    let base = tuple_index(d, args) * d;
    phi.values[base..base + d].clone_from_slice(value);
}

/// The multiplication of A as an adjoint 2-cochain.
pub fn multiplication_cochain(alg: &Arc<FinAlgebra>) -> Cochain {
    let d = alg.dim();
    let mut m = Cochain::zero_adjoint(alg, 2);
    for i in 0..d {
        for j in 0..d {
            let v = alg.basis_product(i, j).to_dense(d);
            set_adjoint_value(&mut m, &[i, j], &v);
        }
    }
    m
}

/// Matrix of the deformation differential delta: C^n(A, A) -> C^{n+1}(A, A).
pub fn deformation_differential_matrix(alg: &FinAlgebra, n: usize) -> SparseMat {
    let d = alg.dim();
    let dom = tensor_dim(d, n) * d;
    let cod = tensor_dim(d, n + 1) * d;
    let mut m = SparseMat::zero(cod, dom);
    for out_args_idx in 0..tensor_dim(d, n + 1) {
        let u = index_tuple(d, n + 1, out_args_idx);
        // term 1: a1 * phi(a2, ..., a_{n+1})
        {
            let rest = &u[1..];
            let in_base = tuple_index(d, rest) * d;
            for k in 0..d {
                for (l, c) in &alg.basis_product(u[0], k).entries {
                    m.rows[out_args_idx * d + l].push(in_base + k, c.clone());
                }
            }
        }
        // middle terms: (-1)^i phi(..., a_i a_{i+1}, ...)
        for i in 1..=n {
            let sign = if i % 2 == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::from_int(-1)
            };
            let prod = alg.basis_product(u[i - 1], u[i]);
            let mut in_args = Vec::with_capacity(n);
            in_args.extend_from_slice(&u[..i - 1]);
            in_args.push(0);
            in_args.extend_from_slice(&u[i + 1..]);
            for (k, c) in &prod.entries {
                in_args[i - 1] = *k;
                let in_base = tuple_index(d, &in_args) * d;
                for l in 0..d {
                    m.rows[out_args_idx * d + l].push(in_base + l, sign.mul(c));
                }
            }
        }
        // last term: (-1)^{n+1} phi(a_1, ..., a_n) * a_{n+1}
        {
            let sign = if (n + 1) % 2 == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::from_int(-1)
            };
            let first = &u[..n];
            let in_base = tuple_index(d, first) * d;
            for k in 0..d {
                for (l, c) in &alg.basis_product(k, u[n]).entries {
                    m.rows[out_args_idx * d + l].push(in_base + k, sign.mul(c));
                }
            }
        }
    }
    m.normalized()
}

/// delta on an adjoint cochain.
pub fn deformation_differential(phi: &Cochain) -> Result<Cochain> {
    if phi.mode != CoeffMode::Adjoint {
        return Err(NcgError::ModeMismatch);
    }
    let m = deformation_differential_matrix(&phi.alg, phi.degree);
    Ok(Cochain {
        alg: phi.alg.clone(),
        degree: phi.degree + 1,
        mode: CoeffMode::Adjoint,
        values: m.mul_vec(&phi.values),
    })
}

/// Cup product (f u g)(a^1, ..., a^{p+q}) = f(a^1..a^p) g(a^{p+1}..a^{p+q}).
pub fn cup_product(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    if f.mode != CoeffMode::Adjoint || g.mode != CoeffMode::Adjoint {
        return Err(NcgError::ModeMismatch);
    }
    let alg = &f.alg;
    let d = alg.dim();
    let (p, q) = (f.degree, g.degree);
    let mut out = Cochain::zero_adjoint(alg, p + q);
    for idx in 0..tensor_dim(d, p + q) {
        let t = index_tuple(d, p + q, idx);
        let fv = adjoint_value(f, &t[..p]);
        let gv = adjoint_value(g, &t[p..]);
        let v = alg.mul_vec(&fv, &gv);
        set_adjoint_value(&mut out, &t, &v);
    }
    Ok(out)
}

/// Gerstenhaber circle product: insertion sum with signs (-1)^{(i-1)(q-1)},
/// i = 1..p. Result has degree p + q - 1.
pub fn circle_product(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    if f.mode != CoeffMode::Adjoint || g.mode != CoeffMode::Adjoint {
        return Err(NcgError::ModeMismatch);
    }
    let (p, q) = (f.degree, g.degree);
    if p == 0 || q == 0 {
        return Err(NcgError::DegreeUnderflow(
            "circle product needs degrees >= 1".into(),
        ));
    }
    let alg = &f.alg;
    let d = alg.dim();
    let deg = p + q - 1;
    let mut out = Cochain::zero_adjoint(alg, deg);
    for idx in 0..tensor_dim(d, deg) {
        let t = index_tuple(d, deg, idx);
        let mut acc = vec![CycloScalar::zero(); d];
        for i in 1..=p {
            let sign_neg = ((i - 1) * (q - 1)) % 2 == 1;
            let gv = adjoint_value(g, &t[i - 1..i - 1 + q]);
            // f with the i-th slot fed the element gv
            let mut fargs = Vec::with_capacity(p);
            fargs.extend_from_slice(&t[..i - 1]);
            fargs.push(0);
            fargs.extend_from_slice(&t[i - 1 + q..]);
            for (k, c) in gv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                fargs[i - 1] = k;
                let fv = adjoint_value(f, &fargs);
                for l in 0..d {
                    if fv[l].is_zero() {
                        continue;
                    }
                    let term = c.mul(&fv[l]);
                    acc[l] = if sign_neg {
                        acc[l].sub(&term)
                    } else {
                        acc[l].add(&term)
                    };
                }
            }
        }
        set_adjoint_value(&mut out, &t, &acc);
    }
    Ok(out)
}

/// Gerstenhaber bracket [f, g] = f o g - (-1)^{(p-1)(q-1)} g o f.
pub fn gerstenhaber_bracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let fg = circle_product(f, g)?;
    let gf = circle_product(g, f)?;
    let sign_neg = ((f.degree - 1) * (g.degree - 1)) % 2 == 0;
    // [f,g] = fg - (+/-) gf; subtract when the Koszul sign is +1
    let values = if sign_neg {
        crate::linalg::vec_sub(&fg.values, &gf.values)
    } else {
        crate::linalg::vec_add(&fg.values, &gf.values)
    };
    Ok(Cochain {
        alg: f.alg.clone(),
        degree: fg.degree,
        mode: CoeffMode::Adjoint,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_adjoint(alg: &Arc<FinAlgebra>, degree: usize, rng: &mut impl Rng) -> Cochain {
        let mut c = Cochain::zero_adjoint(alg, degree);
        for v in c.values.iter_mut() {
            *v = CycloScalar::from_int(rng.gen_range(-3..=3));
        }
        c
    }

    #[test]
    fn delta_vanishes_on_derivations() {
        // on C^1(A,A), delta f = 0 iff f is a derivation; check with the
        // Z_2 group algebra derivation f(g) = 0, f(1) = 0 plus a random
        // non-derivation
        let alg = FinAlgebra::functions(2).unwrap();
        // derivations of functions(2) are zero; any nonzero f with
        // f(fixed basis) != 0 must have delta != 0 unless it is one
        let mut f = Cochain::zero_adjoint(&alg, 1);
        // f(d0) = d0 - is not a derivation: delta f != 0
        set_adjoint_value(&mut f, &[0], &[CycloScalar::one(), CycloScalar::zero()]);
        let df = deformation_differential(&f).unwrap();
        assert!(!df.is_zero());
        // inner derivations ad_a(x) = ax - xa are always delta-closed
        let t12 = FinAlgebra::rational_torus(1, 2).unwrap();
        let a = {
            let mut v = vec![CycloScalar::zero(); 4];
            v[2] = CycloScalar::one(); // u
            v
        };
        let mut ad = Cochain::zero_adjoint(&t12, 1);
        for k in 0..4 {
            let mut ek = vec![CycloScalar::zero(); 4];
            ek[k] = CycloScalar::one();
            let v = crate::linalg::vec_sub(&t12.mul_vec(&a, &ek), &t12.mul_vec(&ek, &a));
            set_adjoint_value(&mut ad, &[k], &v);
        }
        assert!(deformation_differential(&ad).unwrap().is_zero());
    }

    #[test]
    fn multiplication_is_a_square_zero_point() {
        // m o m = 0 iff associativity
        for alg in [
            FinAlgebra::matrix(2).unwrap(),
            FinAlgebra::rational_torus(1, 2).unwrap(),
        ] {
            let m = multiplication_cochain(&alg);
            let mm = circle_product(&m, &m).unwrap();
            assert!(mm.is_zero(), "m o m = 0 for associative algebras");
        }
    }

    #[test]
    fn delta_equals_minus_m_circle_f_minus_f_circle_m() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for alg in [
            FinAlgebra::functions(2).unwrap(),
            FinAlgebra::rational_torus(1, 2).unwrap(),
        ] {
            let m = multiplication_cochain(&alg);
            for _ in 0..3 {
                let f = random_adjoint(&alg, 2, &mut rng);
                let df = deformation_differential(&f).unwrap();
                let mf = circle_product(&m, &f).unwrap();
                let fm = circle_product(&f, &m).unwrap();
                let rhs = crate::linalg::vec_scale(
                    &crate::linalg::vec_add(&mf.values, &fm.values),
                    &CycloScalar::from_int(-1),
                );
                assert_eq!(df.values, rhs, "delta f = -m o f - f o m");
            }
        }
    }

    #[test]
    fn delta_squared_is_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let alg = FinAlgebra::functions(2).unwrap();
        for deg in 1..=2usize {
            let f = random_adjoint(&alg, deg, &mut rng);
            let ddf =
                deformation_differential(&deformation_differential(&f).unwrap()).unwrap();
            assert!(ddf.is_zero());
        }
    }

    #[test]
    fn cup_product_unit_and_degrees() {
        let alg = FinAlgebra::rational_torus(1, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        // unit 0-cochain: the element 1 in C^0(A, A)
        let mut unit = Cochain::zero_adjoint(&alg, 0);
        unit.values = alg.unit().to_vec();
        let f = random_adjoint(&alg, 2, &mut rng);
        let uf = cup_product(&unit, &f).unwrap();
        assert_eq!(uf.values, f.values, "1 cup f = f");
        let fu = cup_product(&f, &unit).unwrap();
        assert_eq!(fu.values, f.values, "f cup 1 = f");
        let g = random_adjoint(&alg, 1, &mut rng);
        assert_eq!(cup_product(&f, &g).unwrap().degree, 3);
    }

    #[test]
    fn cup_commutative_on_one_dimensional_algebra() {
        let k = FinAlgebra::scalar_field(1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let f = random_adjoint(&k, 2, &mut rng);
        let g = random_adjoint(&k, 3, &mut rng);
        let fg = cup_product(&f, &g).unwrap();
        let gf = cup_product(&g, &f).unwrap();
        assert_eq!(fg.values, gf.values);
    }

    #[test]
    fn bracket_graded_antisymmetry() {
        let alg = FinAlgebra::group_algebra(&crate::groups::cyclic_table(2), 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for (p, q) in [(1usize, 1usize), (1, 2), (2, 2), (2, 3)] {
            let f = random_adjoint(&alg, p, &mut rng);
            let g = random_adjoint(&alg, q, &mut rng);
            let fg = gerstenhaber_bracket(&f, &g).unwrap();
            let gf = gerstenhaber_bracket(&g, &f).unwrap();
            let sign = if ((p - 1) * (q - 1)) % 2 == 0 {
                CycloScalar::from_int(-1)
            } else {
                CycloScalar::one()
            };
            assert_eq!(
                fg.values,
                crate::linalg::vec_scale(&gf.values, &sign),
                "[f,g] = -(-1)^((p-1)(q-1)) [g,f]"
            );
        }
    }

    #[test]
    fn degree_zero_bracket_rejected() {
        let alg = FinAlgebra::functions(2).unwrap();
        let mut unit = Cochain::zero_adjoint(&alg, 0);
        unit.values = alg.unit().to_vec();
        let f = multiplication_cochain(&alg);
        assert!(gerstenhaber_bracket(&unit, &f).is_err());
    }
}
