//! Coefficient-space exploration: deterministic grid scans classifying each
//! point, comparison against exactly-testable region descriptions, and the
//! large instability sweeps over parameter families.
//!
//! Scans are embarrassingly parallel; results are collected in grid order so
//! output is byte-stable. The sweep uses an interpolated beta polynomial per
//! (case, divisor) as a fast pre-filter, but any point it does not prove
//! negative is re-verified by direct exact evaluation, so reported outcomes
//! never rest on the interpolant.

use crate::arith::{interpolate_multi, rat, ratio, MultiPoly, Rat};
use crate::az::StabVerdict;
use crate::catalog::{instantiate, CatalogCase, Params, RegionSpec};
use crate::stability::{beta_prime, divisorial_verdict, Divisorial};
use crate::{Error, Result};
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Classification of one grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    NotLogFano,
    Unstable,
    SemistableCertified,
    PolystableCertified,
    Undecided,
}

impl Status {
    pub fn token(self) -> &'static str {
        match self {
            Status::NotLogFano => "not_log_fano",
            Status::Unstable => "unstable",
            Status::SemistableCertified => "semistable_certified",
            Status::PolystableCertified => "polystable_certified",
            Status::Undecided => "undecided",
        }
    }

    /// Region membership for comparisons: anything log Fano and not
    /// destabilized counts as inside the (semi)stable region, including
    /// points whose certification is inconclusive.
    pub fn in_region(self) -> bool {
        !matches!(self, Status::NotLogFano | Status::Unstable)
    }
}

#[derive(Clone, Debug)]
pub struct ScanPoint {
    pub coeffs: Vec<Rat>,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct RegionScan {
    pub case_id: String,
    pub params: Params,
    pub step: Rat,
    pub coeff_names: Vec<String>,
    pub points: Vec<ScanPoint>,
}

/// Classify one coefficient point.
pub fn classify(case: &CatalogCase, coeffs: &[Rat]) -> Result<Status> {
    let pair = case.pair(coeffs)?;
    if !pair.is_log_fano() {
        return Ok(Status::NotLogFano);
    }
    match case.polystable_verdict(coeffs) {
        Ok(StabVerdict::KPolystableCertified) => Ok(Status::PolystableCertified),
        Ok(StabVerdict::KSemistableCertified) => Ok(Status::SemistableCertified),
        Ok(StabVerdict::Unstable) => Ok(Status::Unstable),
        Ok(StabVerdict::Undecided) => Ok(Status::Undecided),
        // no cataloged centers: the divisorial verdict is all we can say
        Err(Error::MissingCenterData(_)) => Ok(Status::Undecided),
        Err(e) => Err(e),
    }
}

/// All multiples of `step` in `[0, 1)` per coordinate, in lexicographic
/// order.
fn grid(dims: usize, step: &Rat, positive_only: bool) -> Vec<Vec<Rat>> {
    let mut values = Vec::new();
    let mut v = if positive_only { step.clone() } else { Rat::zero() };
    while v < Rat::one() {
        values.push(v.clone());
        v += step;
    }
    let mut out: Vec<Vec<Rat>> = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Scan the case on the grid of the given step. Deterministic: the point
/// order and all statuses are functions of (case, step) only.
pub fn scan(case: &CatalogCase, step: &Rat) -> Result<RegionScan> {
    if *step <= Rat::zero() || *step > rat(1, 4) {
        return Err(Error::Configuration("step must lie in (0, 1/4]".into()));
    }
    let pts = grid(case.boundary.len(), step, false);
    let points: Vec<ScanPoint> = pts
        .par_iter()
        .map(|coeffs| {
            let status = classify(case, coeffs).expect("grid point classification");
            ScanPoint { coeffs: coeffs.clone(), status }
        })
        .collect();
    Ok(RegionScan {
        case_id: case.id.clone(),
        params: case.params.clone(),
        step: step.clone(),
        coeff_names: case.coeff_names.clone(),
        points,
    })
}

/// Points where the scan and the closed-form region description disagree.
/// Exact sign tests on both sides, so the expected discrepancy set is empty.
pub fn compare_region(scan: &RegionScan, known: &RegionSpec) -> Vec<Vec<Rat>> {
    scan.points
        .iter()
        .filter(|p| p.status.in_region() != known.contains(&p.coeffs))
        .map(|p| p.coeffs.clone())
        .collect()
}

// ---------------------------------------------------------------------------
// Instability sweeps
// ---------------------------------------------------------------------------

/// Outcome of sweeping one instantiated case over the positive grid.
#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub checked: usize,
    /// Grid points in the ample body where no test divisor destabilizes.
    pub stable_points: Vec<Vec<Rat>>,
}

/// Exact beta-prime of one test divisor as a function of the coefficients,
/// valid on the ample body when the chamber structure is uniform there; used
/// only as a pre-filter.
fn interpolated_beta(case: &CatalogCase, divisor_idx: usize, box_lo: &[Rat], box_hi: &[Rat]) -> MultiPoly {
    let dims = case.boundary.len();
    let nodes: Vec<Vec<Rat>> = (0..dims)
        .map(|i| {
            (0..5)
                .map(|j| &box_lo[i] + (&box_hi[i] - &box_lo[i]) * rat(j, 4))
                .collect()
        })
        .collect();
    let td = &case.test_divisors[divisor_idx];
    interpolate_multi(&nodes, &vec![4; dims], &mut |coeffs: &[Rat]| {
        let pair = case.pair(coeffs).expect("box inside the body");
        beta_prime(&pair, &td.class, &td.label)
            .expect("box inside the body")
            .beta_prime
    })
}

/// Locate an axis box inside the (convex) ample body by probing corners near
/// the extreme vertices of the coefficient cube.
fn body_box(case: &CatalogCase) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let dims = case.boundary.len();
    let max_param = case.params.values().map(|v| v.abs()).max().unwrap_or(0);
    let eps = rat(1, 4 * (max_param + 2));
    let anchors = [Rat::one() - &eps, eps.clone()];
    // try every combination of near-1 / near-0 anchors
    for mask in 0..(1u32 << dims) {
        let lo: Vec<Rat> = (0..dims)
            .map(|i| {
                let a = &anchors[((mask >> i) & 1) as usize];
                a - &eps / ratio(4)
            })
            .collect();
        let hi: Vec<Rat> = lo.iter().map(|l| l + &eps / ratio(2)).collect();
        if hi.iter().any(|h| *h >= Rat::one()) || lo.iter().any(|l| *l <= Rat::zero()) {
            continue;
        }
        // box is inside the convex body iff all its corners are
        let mut corners_ok = true;
        for corner in 0..(1u32 << dims) {
            let coeffs: Vec<Rat> = (0..dims)
                .map(|i| {
                    if (corner >> i) & 1 == 1 {
                        hi[i].clone()
                    } else {
                        lo[i].clone()
                    }
                })
                .collect();
            let pair = case.pair(&coeffs).expect("coefficients in range");
            if !pair.is_log_fano() {
                corners_ok = false;
                break;
            }
        }
        if corners_ok {
            return Some((lo, hi));
        }
    }
    None
}

/// Check that every strictly-positive grid point in the ample body is
/// divisorially unstable. Interpolation is used to prove negativity fast;
/// every point not proven negative is re-checked exactly, and a deterministic
/// sample of proven points is re-verified too.
pub fn sweep_case(case: &CatalogCase, step_den: i64) -> SweepOutcome {
    let dims = case.boundary.len();
    let step = rat(1, step_den);
    let pts = grid(dims, &step, true);
    let polys: Option<Vec<MultiPoly>> = body_box(case).and_then(|(lo, hi)| {
        let polys: Vec<MultiPoly> = (0..case.test_divisors.len())
            .map(|i| interpolated_beta(case, i, &lo, &hi))
            .collect();
        // validate on a handful of spread body points
        let mut seen = 0;
        for coeffs in pts.iter().step_by(7 * dims + 3) {
            let pair = case.pair(coeffs).expect("in range");
            if !pair.is_log_fano() {
                continue;
            }
            for (i, td) in case.test_divisors.iter().enumerate() {
                let direct = beta_prime(&pair, &td.class, &td.label).expect("log fano").beta_prime;
                if polys[i].eval(coeffs) != direct {
                    return None;
                }
            }
            seen += 1;
            if seen >= 5 {
                break;
            }
        }
        Some(polys)
    });

    let results: Vec<Option<Vec<Rat>>> = pts
        .par_iter()
        .enumerate()
        .map(|(idx, coeffs)| {
            let pair = case.pair(coeffs).expect("in range");
            if !pair.is_log_fano() {
                return None;
            }
            let proven_negative = polys.as_ref().map_or(false, |ps| {
                ps.iter().any(|p| p.eval(coeffs) < Rat::zero())
            });
            // deterministic spot-check of the fast path
            if proven_negative && idx % 97 != 0 {
                return None;
            }
            let v = divisorial_verdict(&pair, &case.test_divisor_pairs()).expect("log fano");
            if v.overall == Divisorial::Unstable {
                None
            } else {
                Some(coeffs.clone())
            }
        })
        .collect();
    let mut stable_points: Vec<Vec<Rat>> = results.into_iter().flatten().collect();
    stable_points.sort();
    SweepOutcome { checked: pts.len(), stable_points }
}

/// The parameter combinations of one family swept by the instability check.
pub fn sweep_param_sets(id: &str, cap: i64) -> Vec<Params> {
    let mut out = Vec::new();
    let mut push = |kv: &[(&str, i64)]| {
        let mut p = Params::new();
        for (k, v) in kv {
            p.insert((*k).to_string(), *v);
        }
        out.push(p);
    };
    match id {
        "E1" | "C10" | "D3" | "D7" => push(&[]),
        "E2" | "D2" | "D4" | "D6" => {
            for n in 1..=cap {
                push(&[("n", n)]);
            }
        }
        "C2" => {
            for k in 1..=cap {
                push(&[("k", k)]);
            }
        }
        "C3" => {
            push(&[("k", -1)]);
            for k in 1..=cap {
                push(&[("k", k)]);
            }
        }
        "C4" => {
            for k in 0..=cap {
                for n in 0..=cap {
                    for m in -1..=cap {
                        push(&[("k", k), ("n", n), ("m", m)]);
                    }
                }
            }
        }
        "C5" => {
            for k in 0..=cap {
                for n in 0..=cap {
                    for m in 0..=cap {
                        push(&[("k", k), ("n", n), ("m", m)]);
                    }
                }
            }
        }
        "C6" => {
            for k in 1..=cap {
                for n in 1..=cap {
                    if (k, n) != (1, 1) {
                        push(&[("k", k), ("n", n)]);
                    }
                }
            }
        }
        "D1" | "D8" => {
            for k in 0..=cap {
                for n in k..=cap {
                    push(&[("k", k), ("n", n)]);
                }
            }
        }
        _ => {}
    }
    out
}

/// The families covered by the instability sweep (rows with stable regions
/// are excluded; the fully product-type rows C1/C7 are decided by the product
/// rule instead of divisor-by-divisor negativity).
pub const SWEEP_IDS: [&str; 15] = [
    "E1", "E2", "C2", "C3", "C4", "C5", "C6", "C10", "D1", "D2", "D3", "D4", "D6", "D7", "D8",
];

/// Run the whole sweep; returns `(cases checked, grid points checked,
/// violations)`.
pub fn sweep_all(cap: i64, step_den: i64) -> (usize, usize, Vec<(String, Params, Vec<Rat>)>) {
    let mut cases = 0;
    let mut points = 0;
    let mut violations = Vec::new();
    for id in SWEEP_IDS {
        for params in sweep_param_sets(id, cap) {
            let case = instantiate(id, &params).expect("sweep parameters in range");
            let out = sweep_case(&case, step_den);
            cases += 1;
            points += out.checked;
            for v in out.stable_points {
                violations.push((id.to_string(), params.clone(), v));
            }
        }
    }
    (cases, points, violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_params;

    #[test]
    fn f4_scan_matches_region_coarse() {
        let case = instantiate("F4", &Default::default()).unwrap();
        let scan = scan(&case, &rat(1, 10)).unwrap();
        let region = case.known_region.as_ref().unwrap();
        assert!(compare_region(&scan, region).is_empty());
        // semistable points are exactly 3a - b <= 1 and 3b - a <= 1
        for p in &scan.points {
            let member = ratio(1) + &p.coeffs[0] - ratio(3) * &p.coeffs[1] >= ratio(0)
                && ratio(1) + &p.coeffs[1] - ratio(3) * &p.coeffs[0] >= ratio(0);
            assert_eq!(p.status.in_region(), member);
        }
    }

    #[test]
    fn f2_scan_all_unstable_off_origin() {
        let case = instantiate("F2", &Default::default()).unwrap();
        let scan = scan(&case, &rat(1, 10)).unwrap();
        for p in &scan.points {
            if p.coeffs.iter().any(|c| !c.is_zero()) {
                assert_eq!(p.status, Status::Unstable, "F2 at {:?}", p.coeffs);
            }
        }
    }

    #[test]
    fn d7_scan_semistable_set() {
        let case = instantiate("D7", &Default::default()).unwrap();
        let scan = scan(&case, &rat(1, 10)).unwrap();
        for p in &scan.points {
            let expect = p.coeffs[1].is_zero() && p.coeffs[0] <= rat(3, 4);
            assert_eq!(p.status.in_region(), expect, "D7 at {:?}", p.coeffs);
        }
    }

    #[test]
    fn scans_are_deterministic_and_refine_consistently() {
        let case = instantiate("F3", &Default::default()).unwrap();
        let s1 = scan(&case, &rat(1, 8)).unwrap();
        let s2 = scan(&case, &rat(1, 8)).unwrap();
        assert_eq!(s1.points.len(), s2.points.len());
        for (p, q) in s1.points.iter().zip(&s2.points) {
            assert_eq!(p.coeffs, q.coeffs);
            assert_eq!(p.status, q.status);
        }
        // halving the step never flips an existing grid point
        let fine = scan(&case, &rat(1, 16)).unwrap();
        for p in &s1.points {
            let q = fine.points.iter().find(|q| q.coeffs == p.coeffs).unwrap();
            assert_eq!(p.status, q.status);
        }
    }

    #[test]
    fn near_boundary_points_are_unstable() {
        // Asymptotic instability near coefficient 1: every ample grid point
        // with a coefficient >= 9/10 is destabilized.
        for id in crate::catalog::CASE_IDS {
            let case = instantiate(id, &default_params(id)).unwrap();
            let s = scan(&case, &rat(1, 10)).unwrap();
            for p in &s.points {
                if p.coeffs.iter().any(|c| *c >= rat(9, 10)) && p.status != Status::NotLogFano {
                    assert_eq!(p.status, Status::Unstable, "{id} at {:?}", p.coeffs);
                }
            }
        }
    }

    #[test]
    fn sweep_small_caps() {
        for id in ["E1", "C10", "D4", "E2"] {
            for params in sweep_param_sets(id, 2) {
                let case = instantiate(id, &params).unwrap();
                let out = sweep_case(&case, 10);
                assert!(out.stable_points.is_empty(), "{id} {:?}: {:?}", params, out.stable_points);
                assert!(out.checked > 0);
            }
        }
    }

    #[test]
    fn step_range_enforced() {
        let case = instantiate("F4", &Default::default()).unwrap();
        assert!(scan(&case, &rat(1, 2)).is_err());
        assert!(scan(&case, &ratio(0)).is_err());
    }
}
