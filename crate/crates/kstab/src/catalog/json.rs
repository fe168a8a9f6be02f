//! Case documents: a JSON format mirroring `CatalogCase`, with every number
//! carried as an exact `p/q` string. Custom varieties loaded from a document
//! go through the same cone-consistency checks as the built-in rows.

use super::{AmpleConstraint, CatalogCase, Params, RegionSpec, TestDivisor};
use crate::arith::{parse_rat, show_rat, MultiPoly, Rat};
use crate::az::{CenterSpec, CoeffAffine, ProductFactor, SurfaceKind};
use crate::geom::{nef_value, Class, CurveFunctional, Threefold};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CaseDocument {
    pub id: String,
    #[serde(default)]
    pub params: Params,
    pub basis_labels: Vec<String>,
    /// Entries `[i, j, k, "p/q"]`; the table is symmetrized, conflicting
    /// duplicates are rejected.
    pub triple: Vec<(usize, usize, usize, String)>,
    pub canonical: Vec<String>,
    pub nef_gens: Vec<Vec<String>>,
    pub eff_gens: Vec<Vec<String>>,
    pub eff_labels: Vec<String>,
    pub mori_gens: Vec<Vec<String>>,
    pub boundary: Vec<(Vec<String>, String)>,
    pub coeff_names: Vec<String>,
    #[serde(default)]
    pub ample_constraints: Vec<DocAffine>,
    pub test_divisors: Vec<(String, Vec<String>)>,
    #[serde(default)]
    pub mov_eq_nef: Option<bool>,
    #[serde(default)]
    pub az_centers: Vec<DocCenter>,
    pub table_eps: String,
    #[serde(default)]
    pub eps_erratum: bool,
    #[serde(default)]
    pub product_factors: Option<Vec<DocFactor>>,
    pub section: String,
    #[serde(default)]
    pub known_region: Option<Vec<Vec<DocTerm>>>,
    pub semistable_note: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DocAffine {
    pub c0: String,
    pub lin: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DocCenter {
    pub name: String,
    pub y_label: String,
    pub y_class: Vec<String>,
    pub kind: SurfaceKind,
    pub restriction: Vec<Vec<String>>,
    pub z_class: Vec<String>,
    pub a_z: DocAffine,
    pub n_rest: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub enum DocFactor {
    P2Conic(usize),
    P1xP1Diag(usize),
    P1Point(usize),
    P2Lines(Vec<usize>),
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DocTerm {
    pub exp: Vec<u32>,
    pub coeff: String,
}

fn rats(xs: &[String]) -> Result<Vec<Rat>> {
    xs.iter().map(|s| parse_rat(s)).collect()
}

fn strs(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(show_rat).collect()
}

/// Serialize a case (built-in or custom) as a document.
pub fn export_document(case: &CatalogCase) -> CaseDocument {
    let x = &case.threefold;
    let rank = x.rank();
    let mut triple = Vec::new();
    for i in 0..rank {
        for j in i..rank {
            for k in j..rank {
                let v = x
                    .triple_product(&unit(rank, i), &unit(rank, j), &unit(rank, k))
                    .expect("basis classes");
                if !num_traits::Zero::is_zero(&v) {
                    triple.push((i, j, k, show_rat(&v)));
                }
            }
        }
    }
    CaseDocument {
        id: case.id.clone(),
        params: case.params.clone(),
        basis_labels: x.basis_labels.clone(),
        triple,
        canonical: strs(&x.canonical.coords),
        nef_gens: x.nef_gens.iter().map(|c| strs(&c.coords)).collect(),
        eff_gens: x.eff_gens.iter().map(|c| strs(&c.coords)).collect(),
        eff_labels: x.eff_labels.clone(),
        mori_gens: x.mori_gens.iter().map(|c| strs(&c.pairing)).collect(),
        boundary: case
            .boundary
            .iter()
            .map(|(c, l)| (strs(&c.coords), l.clone()))
            .collect(),
        coeff_names: case.coeff_names.clone(),
        ample_constraints: case
            .ample_constraints
            .iter()
            .map(|a| DocAffine { c0: show_rat(&a.c0), lin: strs(&a.lin) })
            .collect(),
        test_divisors: case
            .test_divisors
            .iter()
            .map(|t| (t.label.clone(), strs(&t.class.coords)))
            .collect(),
        mov_eq_nef: case.mov_eq_nef,
        az_centers: case
            .az_centers
            .iter()
            .map(|c| DocCenter {
                name: c.name.clone(),
                y_label: c.y_label.clone(),
                y_class: strs(&c.y_class.coords),
                kind: c.kind,
                restriction: c.restriction.iter().map(|r| strs(r)).collect(),
                z_class: strs(&c.z_class),
                a_z: DocAffine { c0: show_rat(&c.a_z.c0), lin: strs(&c.a_z.lin) },
                n_rest: strs(&c.n_rest),
            })
            .collect(),
        table_eps: show_rat(&case.table_eps),
        eps_erratum: case.eps_erratum,
        product_factors: case.product_factors.as_ref().map(|fs| {
            fs.iter()
                .map(|f| match f {
                    ProductFactor::P2Conic(i) => DocFactor::P2Conic(*i),
                    ProductFactor::P1xP1Diag(i) => DocFactor::P1xP1Diag(*i),
                    ProductFactor::P1Point(i) => DocFactor::P1Point(*i),
                    ProductFactor::P2Lines(ix) => DocFactor::P2Lines(ix.clone()),
                })
                .collect()
        }),
        section: case.section.clone(),
        known_region: case.known_region.as_ref().map(|r| {
            r.ineqs
                .iter()
                .map(|p| {
                    p.terms()
                        .map(|(e, c)| DocTerm { exp: e.clone(), coeff: show_rat(c) })
                        .collect()
                })
                .collect()
        }),
        semistable_note: case.semistable_note.clone(),
    }
}

fn unit(rank: usize, i: usize) -> Class {
    let mut c = Class::zero(rank);
    c.coords[i] = num_traits::One::one();
    c
}

/// Validate and materialize a document. Cone inconsistencies (a nef generator
/// pairing negatively with a curve generator, dependent effective generators,
/// conflicting triple entries) are reported as detailed errors.
pub fn load_custom(doc: &CaseDocument) -> Result<CatalogCase> {
    let rank = doc.basis_labels.len();
    if rank == 0 || rank > 3 {
        return Err(Error::InvalidDocument("Picard rank must be 1..=3".into()));
    }
    let mut entries = Vec::new();
    for (i, j, k, v) in &doc.triple {
        entries.push((*i, *j, *k, parse_rat(v)?));
    }
    let to_class = |xs: &Vec<String>| -> Result<Class> {
        let coords = rats(xs)?;
        if coords.len() != rank {
            return Err(Error::InvalidDocument("class length differs from rank".into()));
        }
        Ok(Class::new(coords))
    };
    let canonical = to_class(&doc.canonical)?;
    let nef_gens = doc.nef_gens.iter().map(&to_class).collect::<Result<Vec<_>>>()?;
    let eff_gens = doc.eff_gens.iter().map(&to_class).collect::<Result<Vec<_>>>()?;
    let mori_gens = doc
        .mori_gens
        .iter()
        .map(|xs| Ok(CurveFunctional { pairing: rats(xs)? }))
        .collect::<Result<Vec<_>>>()?;
    let threefold = Threefold::new(
        doc.basis_labels.clone(),
        &entries,
        canonical,
        nef_gens,
        eff_gens,
        doc.eff_labels.clone(),
        mori_gens,
    )
    .map_err(|e| Error::InvalidDocument(e.to_string()))?;
    let threefold = Arc::new(threefold);
    let boundary = doc
        .boundary
        .iter()
        .map(|(c, l)| Ok((to_class(c)?, l.clone())))
        .collect::<Result<Vec<_>>>()?;
    if doc.coeff_names.len() != boundary.len() {
        return Err(Error::InvalidDocument("one coefficient name per boundary divisor".into()));
    }
    let test_divisors = doc
        .test_divisors
        .iter()
        .map(|(l, c)| Ok(TestDivisor { label: l.clone(), class: to_class(c)? }))
        .collect::<Result<Vec<_>>>()?;
    for t in &test_divisors {
        if !threefold.is_pseff(&t.class) {
            return Err(Error::InvalidDocument(format!(
                "test divisor {} is not pseudo-effective",
                t.label
            )));
        }
    }
    let ample_constraints = doc
        .ample_constraints
        .iter()
        .map(|a| {
            Ok(AmpleConstraint { c0: parse_rat(&a.c0)?, lin: rats(&a.lin)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let az_centers = doc
        .az_centers
        .iter()
        .map(|c| {
            let spec = CenterSpec {
                name: c.name.clone(),
                y_label: c.y_label.clone(),
                y_class: to_class(&c.y_class)?,
                kind: c.kind,
                restriction: c
                    .restriction
                    .iter()
                    .map(|r| rats(r))
                    .collect::<Result<Vec<_>>>()?,
                z_class: rats(&c.z_class)?,
                a_z: CoeffAffine { c0: parse_rat(&c.a_z.c0)?, lin: rats(&c.a_z.lin)? },
                n_rest: rats(&c.n_rest)?,
            };
            if spec.restriction.len() != rank {
                return Err(Error::InvalidDocument("restriction row per basis element".into()));
            }
            if spec.n_rest.len() != rank {
                return Err(Error::InvalidDocument("one center multiplicity per effective generator".into()));
            }
            Ok(spec)
        })
        .collect::<Result<Vec<_>>>()?;
    let product_factors = doc.product_factors.as_ref().map(|fs| {
        fs.iter()
            .map(|f| match f {
                DocFactor::P2Conic(i) => ProductFactor::P2Conic(*i),
                DocFactor::P1xP1Diag(i) => ProductFactor::P1xP1Diag(*i),
                DocFactor::P1Point(i) => ProductFactor::P1Point(*i),
                DocFactor::P2Lines(ix) => ProductFactor::P2Lines(ix.clone()),
            })
            .collect::<Vec<_>>()
    });
    let nvars = boundary.len();
    let known_region = match &doc.known_region {
        None => None,
        Some(polys) => {
            let mut ineqs = Vec::new();
            for terms in polys {
                let mut p = MultiPoly::zero(nvars);
                for t in terms {
                    if t.exp.len() != nvars {
                        return Err(Error::InvalidDocument("region exponent arity mismatch".into()));
                    }
                    p.add_term(t.exp.clone(), parse_rat(&t.coeff)?);
                }
                ineqs.push(p);
            }
            Some(RegionSpec { ineqs })
        }
    };
    let total = {
        let mut c = Class::zero(rank);
        for (d, _) in &boundary {
            c = c.add(d);
        }
        c
    };
    let expected_nef_value = nef_value(&threefold, &total)
        .map_err(|e| Error::InvalidDocument(format!("nef value: {e}")))?
        .eps;
    Ok(CatalogCase {
        id: doc.id.clone(),
        params: doc.params.clone(),
        threefold,
        boundary,
        coeff_names: doc.coeff_names.clone(),
        ample_constraints,
        test_divisors,
        mov_eq_nef: doc.mov_eq_nef,
        az_centers,
        expected_nef_value,
        table_eps: parse_rat(&doc.table_eps)?,
        eps_erratum: doc.eps_erratum,
        product_factors,
        section: doc.section.clone(),
        known_region,
        semistable_note: doc.semistable_note.clone(),
    })
}

/// A JSON Schema (draft 2020-12) describing the document format.
pub fn case_schema() -> serde_json::Value {
    let rational = serde_json::json!({ "type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$" });
    let class = serde_json::json!({ "type": "array", "items": rational, "minItems": 1, "maxItems": 3 });
    serde_json::json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "kstab case document",
        "type": "object",
        "required": [
            "id", "basis_labels", "triple", "canonical", "nef_gens", "eff_gens",
            "eff_labels", "mori_gens", "boundary", "coeff_names", "test_divisors",
            "table_eps", "section", "semistable_note"
        ],
        "properties": {
            "id": { "type": "string" },
            "params": { "type": "object", "additionalProperties": { "type": "integer" } },
            "basis_labels": { "type": "array", "items": { "type": "string" } },
            "triple": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [
                        { "type": "integer" }, { "type": "integer" },
                        { "type": "integer" }, rational
                    ],
                    "minItems": 4, "maxItems": 4
                }
            },
            "canonical": class,
            "nef_gens": { "type": "array", "items": class },
            "eff_gens": { "type": "array", "items": class },
            "eff_labels": { "type": "array", "items": { "type": "string" } },
            "mori_gens": { "type": "array", "items": class },
            "boundary": { "type": "array" },
            "coeff_names": { "type": "array", "items": { "type": "string" } },
            "ample_constraints": { "type": "array" },
            "test_divisors": { "type": "array" },
            "mov_eq_nef": { "type": ["boolean", "null"] },
            "az_centers": { "type": "array" },
            "table_eps": rational,
            "eps_erratum": { "type": "boolean" },
            "product_factors": { "type": ["array", "null"] },
            "section": { "type": "string" },
            "known_region": { "type": ["array", "null"] },
            "semistable_note": { "type": "string" }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::catalog::{default_params, instantiate};
    use crate::stability::divisorial_verdict;

    #[test]
    fn roundtrip_f4() {
        let case = instantiate("F4", &Default::default()).unwrap();
        let doc = export_document(&case);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: CaseDocument = serde_json::from_str(&text).unwrap();
        let back = load_custom(&parsed).unwrap();
        assert_eq!(back.id, case.id);
        assert_eq!(back.table_eps, case.table_eps);
        assert_eq!(back.expected_nef_value, case.expected_nef_value);
        assert_eq!(back.threefold.basis_labels, case.threefold.basis_labels);
        // identical behavior on a coefficient grid
        for (a, b) in [(0i64, 0i64), (1, 2), (3, 1), (2, 2)] {
            let coeffs = [rat(a, 5), rat(b, 5)];
            let p1 = case.pair(&coeffs).unwrap();
            let p2 = back.pair(&coeffs).unwrap();
            let v1 = divisorial_verdict(&p1, &case.test_divisor_pairs()).unwrap();
            let v2 = divisorial_verdict(&p2, &back.test_divisor_pairs()).unwrap();
            assert_eq!(v1.overall, v2.overall);
            for (r1, r2) in v1.reports.iter().zip(&v2.reports) {
                assert_eq!(r1.beta_prime, r2.beta_prime);
            }
        }
    }

    #[test]
    fn non_symmetric_triple_rejected() {
        let case = instantiate("E1", &Default::default()).unwrap();
        let mut doc = export_document(&case);
        // conflicting duplicate of a symmetric entry
        doc.triple.push((1, 0, 0, "5".into()));
        assert!(matches!(load_custom(&doc), Err(Error::InvalidDocument(_))));
    }

    #[test]
    fn cone_inconsistency_rejected() {
        let case = instantiate("E1", &Default::default()).unwrap();
        let mut doc = export_document(&case);
        // declare D1 nef although it pairs -1 with the first curve
        doc.nef_gens.push(vec!["1".into(), "0".into()]);
        assert!(matches!(load_custom(&doc), Err(Error::InvalidDocument(_))));
    }

    #[test]
    fn handwritten_d5_duplicate_matches_builtin() {
        let builtin = instantiate("D5", &Default::default()).unwrap();
        let doc = export_document(&builtin);
        // re-serialize through text to simulate an external document
        let text = serde_json::to_string(&doc).unwrap();
        let loaded = load_custom(&serde_json::from_str(&text).unwrap()).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let coeffs = [rat(i, 10), rat(j, 10)];
                let p1 = builtin.pair(&coeffs).unwrap();
                let p2 = loaded.pair(&coeffs).unwrap();
                let v1 = divisorial_verdict(&p1, &builtin.test_divisor_pairs()).unwrap();
                let v2 = divisorial_verdict(&p2, &loaded.test_divisor_pairs()).unwrap();
                for (r1, r2) in v1.reports.iter().zip(&v2.reports) {
                    assert_eq!(r1.beta_prime, r2.beta_prime, "({i},{j}) {}", r1.divisor_label);
                }
            }
        }
    }

    #[test]
    fn schema_is_valid_json() {
        let s = case_schema();
        assert!(s.get("properties").is_some());
    }
}
