//! JSON schemas for algebras, groupoids, Hopf data, cochains, K-theory
//! classes, Fredholm modules, and psi-do operators. Scalars serialize as
//! canonical polynomial strings in "z" over "num/den" rationals; parsing
//! followed by serialization is byte-stable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AMatrix, FinAlgebra, LinearFunctional, Representation};
use crate::chern::{FredholmModule, KIdempotent, KInvertible};
use crate::cochain::{index_tuple, tensor_dim, tuple_index, CoeffMode, Cochain};
use crate::error::{NcgError, Result};
use crate::groupoid::FiniteGroupoid;
use crate::hopf::HopfAlgebra;
use crate::laurent::LaurentElement;
use crate::linalg::{DenseMat, SparseMat, SparseVec};
use crate::parse::{parse_laurent, parse_scalar, render_laurent};
use crate::psido::FormalPsiDO;
use crate::scalar::{render_scalar, CycloScalar};
use crate::star::PoissonStruct;

fn sc(s: &CycloScalar) -> String {
    render_scalar(s)
}

#[derive(Serialize, Deserialize, Clone)]
pub struct AlgebraJson {
    pub scalar_conductor: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    /// Sparse structure constants: [i, j, k, coefficient].
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<Vec<String>>>,
}

pub fn algebra_to_json(alg: &FinAlgebra) -> AlgebraJson {
    let d = alg.dim();
    let m = alg.conductor();
    let mut structure = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in &alg.basis_product(i, j).entries {
                structure.push((i, j, *k, sc(c)));
            }
        }
    }
    structure.sort();
    AlgebraJson {
        scalar_conductor: m,
        dim: d,
        labels: alg.labels().to_vec(),
        unit: alg.unit().iter().map(sc).collect(),
        structure,
        involution: alg
            .involution()
            .map(|inv| inv.iter().map(|row| row.iter().map(sc).collect()).collect()),
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<Arc<FinAlgebra>> {
    let d = j.dim;
    let m = j.scalar_conductor;
    if j.labels.len() != d || j.unit.len() != d {
        return Err(NcgError::Json("label/unit length mismatch".into()));
    }
    let unit = j
        .unit
        .iter()
        .map(|s| parse_scalar(s, m))
        .collect::<Result<Vec<_>>>()?;
    let mut mult = vec![SparseVec::new(); d * d];
    for (i, jj, k, s) in &j.structure {
        if *i >= d || *jj >= d || *k >= d {
            return Err(NcgError::Json("structure index out of range".into()));
        }
        mult[i * d + jj].push(*k, parse_scalar(s, m)?);
    }
    let mult = mult.into_iter().map(|v| v.normalize()).collect();
    let involution = match &j.involution {
        None => None,
        Some(rows) => {
            let mut out: DenseMat = Vec::with_capacity(d);
            for row in rows {
                out.push(
                    row.iter()
                        .map(|s| parse_scalar(s, m))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            Some(out)
        }
    };
    FinAlgebra::new(m, j.labels.clone(), unit, mult, involution)
}

#[derive(Serialize, Deserialize, Clone)]
pub struct GroupoidJson {
    pub objects: usize,
    /// [id, source, target] with dense ids 0..n.
    pub morphisms: Vec<(usize, usize, usize)>,
    /// Composable pairs: [g1, g2, g1 o g2].
    pub composition: Vec<(usize, usize, usize)>,
    pub inverses: Vec<usize>,
    pub identities: Vec<usize>,
}

pub fn groupoid_to_json(g: &FiniteGroupoid) -> GroupoidJson {
    let mut composition: Vec<(usize, usize, usize)> = g
        .composition
        .iter()
        .map(|((a, b), c)| (*a, *b, *c))
        .collect();
    composition.sort();
    GroupoidJson {
        objects: g.n_objects,
        morphisms: g
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, (s, t))| (i, *s, *t))
            .collect(),
        composition,
        inverses: g.inverses.clone(),
        identities: g.identities.clone(),
    }
}

pub fn groupoid_from_json(j: &GroupoidJson) -> Result<FiniteGroupoid> {
    let n = j.morphisms.len();
    let mut morphisms = vec![(0usize, 0usize); n];
    for (id, s, t) in &j.morphisms {
        if *id >= n {
            return Err(NcgError::Json("morphism id out of range".into()));
        }
        morphisms[*id] = (*s, *t);
    }
    let mut composition = std::collections::HashMap::new();
    for (a, b, c) in &j.composition {
        composition.insert((*a, *b), *c);
    }
    let g = FiniteGroupoid {
        n_objects: j.objects,
        morphisms,
        composition,
        inverses: j.inverses.clone(),
        identities: j.identities.clone(),
    };
    g.validate()?;
    Ok(g)
}

#[derive(Serialize, Deserialize, Clone)]
pub struct HopfJson {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    /// d^2 x d matrix: row index encodes the basis pair (i, k) as i*d + k.
    pub coproduct: Vec<Vec<String>>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
}

pub fn hopf_to_json(h: &HopfAlgebra) -> HopfJson {
    let d = h.dim();
    let m = h.algebra.conductor();
    let _ = m;
    let cop = (0..d * d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    sc(h.coproduct.rows[r]
                        .get(c)
                        .unwrap_or(&CycloScalar::zero()))
                })
                .collect()
        })
        .collect();
    HopfJson {
        algebra: algebra_to_json(&h.algebra),
        coproduct: cop,
        counit: h.counit.iter().map(sc).collect(),
        antipode: h
            .antipode
            .iter()
            .map(|row| row.iter().map(sc).collect())
            .collect(),
    }
}

pub fn hopf_from_json(j: &HopfJson) -> Result<HopfAlgebra> {
    let alg = algebra_from_json(&j.algebra)?;
    let d = alg.dim();
    let m = alg.conductor();
    if j.coproduct.len() != d * d || j.counit.len() != d || j.antipode.len() != d {
        return Err(NcgError::Json("hopf matrix shapes".into()));
    }
    let mut cop = SparseMat::zero(d * d, d);
    for (r, row) in j.coproduct.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            let v = parse_scalar(s, m)?;
            cop.rows[r].push(c, v);
        }
    }
    let counit = j
        .counit
        .iter()
        .map(|s| parse_scalar(s, m))
        .collect::<Result<Vec<_>>>()?;
    let antipode = j
        .antipode
        .iter()
        .map(|row| row.iter().map(|s| parse_scalar(s, m)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let h = HopfAlgebra {
        algebra: alg,
        coproduct: cop.normalized(),
        counit,
        antipode,
    };
    h.validate()?;
    Ok(h)
}

/// A cochain or functional with values on basis tuples.
#[derive(Serialize, Deserialize, Clone)]
pub struct CochainJson {
    pub degree: usize,
    pub mode: String,
    /// Sparse values: [i_0, ..., i_n, coefficient].
    pub values: Vec<(Vec<usize>, String)>,
}

pub fn cochain_to_json(c: &Cochain) -> CochainJson {
    assert_eq!(c.mode, CoeffMode::Scalar);
    let d = c.alg.dim();
    let mut values = Vec::new();
    for (idx, v) in c.values.iter().enumerate() {
        if !v.is_zero() {
            values.push((index_tuple(d, c.degree + 1, idx), sc(v)));
        }
    }
    CochainJson {
        degree: c.degree,
        mode: "scalar".into(),
        values,
    }
}

pub fn cochain_from_json(j: &CochainJson, alg: &Arc<FinAlgebra>) -> Result<Cochain> {
    if j.mode != "scalar" {
        return Err(NcgError::Json("only scalar cochains serialize".into()));
    }
    let d = alg.dim();
    let mut c = Cochain::zero_scalar(alg, j.degree);
    for (t, s) in &j.values {
        if t.len() != j.degree + 1 || t.iter().any(|&i| i >= d) {
            return Err(NcgError::Json("bad tuple in cochain".into()));
        }
        let idx = tuple_index(d, t);
        c.values[idx] = c.values[idx].add(&parse_scalar(s, alg.conductor())?);
    }
    Ok(c)
}

/// Linear functional (trace/state) as a value list.
#[derive(Serialize, Deserialize, Clone)]
pub struct FunctionalJson {
    pub values: Vec<String>,
}

pub fn functional_from_json(
    j: &FunctionalJson,
    alg: &Arc<FinAlgebra>,
) -> Result<LinearFunctional> {
    if j.values.len() != alg.dim() {
        return Err(NcgError::Json("functional length".into()));
    }
    Ok(LinearFunctional::new(
        alg.clone(),
        j.values
            .iter()
            .map(|s| parse_scalar(s, alg.conductor()))
            .collect::<Result<Vec<_>>>()?,
    ))
}

pub fn functional_to_json(f: &LinearFunctional) -> FunctionalJson {
    FunctionalJson {
        values: f.values.iter().map(sc).collect(),
    }
}

/// K-theory class: an idempotent or invertible matrix over the algebra.
#[derive(Serialize, Deserialize, Clone)]
pub struct ClassJson {
    pub kind: String,
    pub size: usize,
    /// Sparse entries: [row, col, coefficient vector].
    pub entries: Vec<(usize, usize, Vec<String>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_entries: Option<Vec<(usize, usize, Vec<String>)>>,
}

fn amatrix_from_entries(
    alg: &Arc<FinAlgebra>,
    size: usize,
    entries: &[(usize, usize, Vec<String>)],
) -> Result<AMatrix> {
    let mut m = AMatrix::zero(alg, size);
    for (r, c, coeffs) in entries {
        if *r >= size || *c >= size || coeffs.len() != alg.dim() {
            return Err(NcgError::Json("bad class entry".into()));
        }
        m.entries[*r][*c] = coeffs
            .iter()
            .map(|s| parse_scalar(s, alg.conductor()))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(m)
}

pub fn idempotent_from_json(j: &ClassJson, alg: &Arc<FinAlgebra>) -> Result<KIdempotent> {
    if j.kind != "idempotent" {
        return Err(NcgError::Json("expected an idempotent class".into()));
    }
    KIdempotent::new(amatrix_from_entries(alg, j.size, &j.entries)?)
}

pub fn invertible_from_json(j: &ClassJson, alg: &Arc<FinAlgebra>) -> Result<KInvertible> {
    if j.kind != "invertible" {
        return Err(NcgError::Json("expected an invertible class".into()));
    }
    let inv = j
        .inverse_entries
        .as_ref()
        .ok_or_else(|| NcgError::Json("missing inverse entries".into()))?;
    KInvertible::new(
        amatrix_from_entries(alg, j.size, &j.entries)?,
        amatrix_from_entries(alg, j.size, inv)?,
    )
}

pub fn idempotent_to_json(e: &KIdempotent) -> ClassJson {
    let mut entries = Vec::new();
    for r in 0..e.0.size {
        for c in 0..e.0.size {
            if !crate::linalg::vec_is_zero(&e.0.entries[r][c]) {
                entries.push((r, c, e.0.entries[r][c].iter().map(sc).collect()));
            }
        }
    }
    ClassJson {
        kind: "idempotent".into(),
        size: e.0.size,
        entries,
        inverse_entries: None,
    }
}

/// Fredholm module: grading, F, and representation matrices.
#[derive(Serialize, Deserialize, Clone)]
pub struct FredholmJson {
    pub carrier_dim: usize,
    pub grading: Vec<i32>,
    pub f: Vec<Vec<String>>,
    /// rep[i] = matrix of the i-th basis element.
    pub rep: Vec<Vec<Vec<String>>>,
}

pub fn fredholm_to_json(fm: &FredholmModule) -> FredholmJson {
    let render_mat =
        |m: &DenseMat| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(sc).collect()).collect() };
    FredholmJson {
        carrier_dim: fm.rep.carrier_dim,
        grading: fm.grading.clone(),
        f: render_mat(&fm.f_op),
        rep: fm.rep.matrices.iter().map(render_mat).collect(),
    }
}

pub fn fredholm_from_json(j: &FredholmJson, alg: &Arc<FinAlgebra>) -> Result<FredholmModule> {
    let m = alg.conductor();
    let parse_mat = |rows: &Vec<Vec<String>>| -> Result<DenseMat> {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_scalar(s, m)).collect::<Result<Vec<_>>>())
            .collect()
    };
    let rep = Representation {
        parent: alg.clone(),
        carrier_dim: j.carrier_dim,
        matrices: j.rep.iter().map(parse_mat).collect::<Result<Vec<_>>>()?,
        cyclic_vector: None,
    };
    FredholmModule::new(rep, j.grading.clone(), parse_mat(&j.f)?)
}

/// Formal psi-do: {"terms": [{"order": k, "coeff": "..."}], "window": [a, b]}.
#[derive(Serialize, Deserialize, Clone)]
pub struct PsiDOJson {
    pub window: (i64, i64),
    pub terms: Vec<PsiDOTermJson>,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct PsiDOTermJson {
    pub order: i64,
    pub coeff: String,
}

pub fn psido_from_json(j: &PsiDOJson) -> Result<FormalPsiDO> {
    let mut p = FormalPsiDO::zero(j.window);
    for t in &j.terms {
        if t.order < j.window.0 || t.order > j.window.1 {
            return Err(NcgError::WindowTooSmall(format!(
                "order {} outside window",
                t.order
            )));
        }
        p.add_term(t.order, &parse_laurent(&t.coeff)?);
    }
    Ok(p)
}

pub fn psido_to_json(p: &FormalPsiDO) -> PsiDOJson {
    PsiDOJson {
        window: p.window,
        terms: p
            .coeffs
            .iter()
            .map(|(k, c)| PsiDOTermJson {
                order: *k,
                coeff: render_laurent(c),
            })
            .collect(),
    }
}

/// Poisson structure with named variables.
#[derive(Serialize, Deserialize, Clone)]
pub struct PoissonJson {
    pub vars: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

pub fn poisson_from_json(j: &PoissonJson) -> Result<(Vec<String>, PoissonStruct)> {
    let dim = j.vars.len();
    if j.matrix.len() != dim {
        return Err(NcgError::Json("poisson matrix shape".into()));
    }
    let mut m = Vec::with_capacity(dim);
    for row in &j.matrix {
        if row.len() != dim {
            return Err(NcgError::Json("poisson matrix shape".into()));
        }
        m.push(
            row.iter()
                .map(|s| parse_scalar(s, 4))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((j.vars.clone(), PoissonStruct::new(m)?))
}

/// Laurent symbol as a plain string wrapper (for expected outputs).
pub fn laurent_to_string(f: &LaurentElement) -> String {
    render_laurent(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip_byte_stable() {
        let t = FinAlgebra::rational_torus(1, 2).unwrap();
        let j = algebra_to_json(&t);
        let s1 = serde_json::to_string_pretty(&j).unwrap();
        let parsed: AlgebraJson = serde_json::from_str(&s1).unwrap();
        let alg = algebra_from_json(&parsed).unwrap();
        let s2 = serde_json::to_string_pretty(&algebra_to_json(&alg)).unwrap();
        assert_eq!(s1, s2, "canonical serialization is byte-stable");
    }

    #[test]
    fn groupoid_round_trip() {
        let g = crate::groupoid::FiniteGroupoid::pairs(3).unwrap();
        let j = groupoid_to_json(&g);
        let g2 = groupoid_from_json(&j).unwrap();
        assert_eq!(g2.n_morphisms(), 9);
        let a = crate::groupoid::groupoid_algebra(&g2, 1).unwrap();
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn hopf_round_trip() {
        let h = HopfAlgebra::group_algebra(&crate::groups::cyclic_table(3), 3).unwrap();
        let j = hopf_to_json(&h);
        let s1 = serde_json::to_string(&j).unwrap();
        let parsed: HopfJson = serde_json::from_str(&s1).unwrap();
        let h2 = hopf_from_json(&parsed).unwrap();
        assert!(h2.is_cocommutative());
    }

    #[test]
    fn psido_round_trip() {
        let j: PsiDOJson = serde_json::from_str(
            r#"{"window": [-4, 2], "terms": [{"order": -1, "coeff": "1"},
                {"order": 1, "coeff": "z(4) z^2 - 1/2"}]}"#,
        )
        .unwrap();
        let p = psido_from_json(&j).unwrap();
        assert_eq!(
            crate::psido::residue_trace(&p).unwrap(),
            CycloScalar::one()
        );
        let j2 = psido_to_json(&p);
        let p2 = psido_from_json(&j2).unwrap();
        assert!(p
            .add(&p2.scale(&CycloScalar::from_int(-1)))
            .is_zero());
    }
}
