//! Zariski (sigma-)decomposition of pseudo-effective classes and of rays
//! `L - x E`, with the exact piecewise-cubic volume profile.
//!
//! The decomposition subtracts, for each extremal curve the class is negative
//! on, the unique effective generator that is negative on that curve, until
//! the class is nef. Along a ray the chamber structure is located exactly:
//! within a chamber the positive and negative parts are affine in `x`, so two
//! sample decompositions pin them down and the next wall is the smallest root
//! of the active linear functionals.

use crate::arith::{rat, ratio, PiecewisePoly, Poly, Rat};
use crate::geom::{AffineClass, Class, Threefold};
use crate::{Error, Result};
use num_traits::Zero;

/// `P + sum mult_i * Gamma_i` with `P` nef and every multiplicity positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub positive: Class,
    /// (index into `eff_gens`, multiplicity > 0)
    pub negative: Vec<(usize, Rat)>,
}

impl Decomposition {
    /// Support signature of the negative part (sorted generator indices).
    fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.negative.iter().map(|(i, _)| *i).collect();
        s.sort_unstable();
        s
    }

    pub fn multiplicity(&self, eff_idx: usize) -> Rat {
        self.negative
            .iter()
            .find(|(i, _)| *i == eff_idx)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(Rat::zero)
    }
}

/// Wall subtraction. While some extremal curve `C` has `P . C < 0`, subtract
/// `t * Gamma` for the unique effective generator with `Gamma . C < 0` and
/// `t = (P . C)/(Gamma . C)`. When two walls keep re-violating each other the
/// single steps only converge in the limit, so after a few rounds the active
/// wall system is solved jointly instead; the result is the same fixed point,
/// reached exactly.
pub fn decompose(x: &Threefold, c: &Class) -> Result<Decomposition> {
    if !x.is_pseff(c) {
        return Err(Error::NotPseudoEffective);
    }
    let mut p = c.clone();
    let mut negative: Vec<(usize, Rat)> = Vec::new();
    for _ in 0..24 {
        let violating = x
            .mori_gens
            .iter()
            .position(|m| m.pair(&p) < Rat::zero());
        let Some(ci) = violating else {
            return Ok(Decomposition { positive: p, negative });
        };
        let curve = &x.mori_gens[ci];
        let mut candidates = x
            .eff_gens
            .iter()
            .enumerate()
            .filter(|(_, g)| curve.pair(g) < Rat::zero());
        let (gi, gamma) = candidates
            .next()
            .ok_or_else(|| Error::Configuration("no effective generator negative on a violating curve".into()))?;
        if candidates.next().is_some() {
            return Err(Error::Configuration(
                "multiple effective generators negative on one curve: case data inconsistent".into(),
            ));
        }
        let t = curve.pair(&p) / curve.pair(gamma);
        p = p.sub(&gamma.scale(&t));
        if !x.is_pseff(&p) {
            return Err(Error::Configuration("wall subtraction left the effective cone".into()));
        }
        match negative.iter_mut().find(|(i, _)| *i == gi) {
            Some((_, m)) => *m += t,
            None => negative.push((gi, t)),
        }
    }
    decompose_joint(x, c)
}

/// Solve the wall system jointly: enumerate divisor and curve index sets of
/// equal size such that subtracting the divisors with exact positive
/// multiplicities zeroes every chosen curve and leaves a nef positive part.
/// The alternating process is monotone from below, so its limit is the
/// candidate with coordinatewise-least negative part; anything else would
/// undershoot some forced subtraction.
fn decompose_joint(x: &Threefold, c: &Class) -> Result<Decomposition> {
    let rank = x.rank();
    let eff_count = x.eff_gens.len();
    let mori_count = x.mori_gens.len();
    let mut candidates: Vec<Decomposition> = Vec::new();
    for size in 1..=rank.min(mori_count) {
        for divs in subsets(eff_count, size) {
            for curves in subsets(mori_count, size) {
                // (c - sum t_j Gamma_j) . C_i = 0
                let mut a = vec![vec![Rat::zero(); size]; size];
                let mut rhs = vec![Rat::zero(); size];
                for (i, &ci) in curves.iter().enumerate() {
                    let curve = &x.mori_gens[ci];
                    for (j, &dj) in divs.iter().enumerate() {
                        a[i][j] = curve.pair(&x.eff_gens[dj]);
                    }
                    rhs[i] = curve.pair(c);
                }
                let Some(t) = solve_linear(a, rhs) else { continue };
                if t.iter().any(|v| *v <= Rat::zero()) {
                    continue;
                }
                let mut p = c.clone();
                for (&dj, tj) in divs.iter().zip(&t) {
                    p = p.sub(&x.eff_gens[dj].scale(tj));
                }
                if !x.is_nef(&p) || !x.is_pseff(&p) {
                    continue;
                }
                candidates.push(Decomposition {
                    positive: p,
                    negative: divs.iter().copied().zip(t).collect(),
                });
            }
        }
    }
    let full = |d: &Decomposition| -> Vec<Rat> {
        (0..eff_count).map(|i| d.multiplicity(i)).collect()
    };
    let leq = |a: &[Rat], b: &[Rat]| a.iter().zip(b).all(|(x, y)| x <= y);
    let least = candidates.iter().find(|cand| {
        let cv = full(cand);
        candidates.iter().all(|other| leq(&cv, &full(other)))
    });
    least
        .cloned()
        .ok_or_else(|| Error::Configuration("wall system has no least fixed point".into()))
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// Exact Gaussian elimination; `None` when singular.
fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
        }
        b[col] /= &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
            }
            let t = &b[col] * &f;
            b[r] -= t;
        }
    }
    Some(b)
}

/// Volume: zero off the pseudo-effective cone, else the cube of the positive
/// part of the decomposition.
pub fn volume(x: &Threefold, c: &Class) -> Rat {
    if !x.is_pseff(c) {
        return Rat::zero();
    }
    let d = decompose(x, c).expect("pseudo-effective class decomposes");
    x.cube(&d.positive)
}

/// Multiplicity of one negative-part divisor, affine in the ray parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMult {
    pub eff_idx: usize,
    pub c0: Rat,
    pub c1: Rat,
}

impl AffineMult {
    pub fn eval(&self, x: &Rat) -> Rat {
        &self.c0 + &self.c1 * x
    }
}

/// One chamber of a ray decomposition: on `[x0, x1]` the positive part is
/// affine in `x`, the negative part has fixed support with affine
/// multiplicities, and the volume is the cubic `P(x)^3`.
#[derive(Clone, Debug)]
pub struct RaySegment {
    pub x0: Rat,
    pub x1: Rat,
    pub positive: AffineClass,
    pub negative: Vec<AffineMult>,
    pub vol: Poly,
}

/// Piecewise Zariski decomposition of `L - x E` on `[0, tau]`.
#[derive(Clone, Debug)]
pub struct RayDecomposition {
    pub segments: Vec<RaySegment>,
    pub tau: Rat,
    pub eps: Rat,
}

impl RayDecomposition {
    /// The volume profile as an exact piecewise cubic on `[0, tau]`.
    pub fn volume_profile(&self) -> PiecewisePoly {
        let mut breaks = vec![self.segments[0].x0.clone()];
        let mut pieces = Vec::new();
        for s in &self.segments {
            breaks.push(s.x1.clone());
            pieces.push(s.vol.clone());
        }
        PiecewisePoly::new(breaks, pieces).expect("segments partition [0, tau]")
    }

    /// Exact `S' = ∫_0^tau vol(L - x E) dx`.
    pub fn s_prime(&self) -> Rat {
        let profile = self.volume_profile();
        profile
            .integrate(&self.segments[0].x0, &self.tau)
            .expect("profile covers [0, tau]")
    }

    /// Locate the segment containing `x` (left-closed pieces).
    pub fn segment_at(&self, x: &Rat) -> Option<&RaySegment> {
        if *x < self.segments[0].x0 || *x > self.tau {
            return None;
        }
        self.segments
            .iter()
            .find(|s| *x < s.x1)
            .or(self.segments.last())
    }
}

/// Cubic `P(x)^3` for an affine class, via triple products.
fn vol_cubic(x: &Threefold, p: &AffineClass) -> Poly {
    let a = &p.base;
    let b = &p.slope;
    let t = |u: &Class, v: &Class, w: &Class| x.triple_product(u, v, w).expect("rank checked");
    Poly::new(vec![
        t(a, a, a),
        t(a, a, b) * ratio(3),
        t(a, b, b) * ratio(3),
        t(b, b, b),
    ])
}

/// Exact Zariski decomposition along the ray `L - x E` for `x in [0, tau]`.
///
/// `tau` comes from the simplicial effective coordinates of `L` and `E`;
/// chambers are found by walking: an affine model of `(P, N)` is built from
/// two nearby sample decompositions, the next wall is the smallest root of a
/// decreasing active functional, and the model is re-validated at the chamber
/// midpoint before being accepted.
pub fn decompose_ray(x: &Threefold, l: &Class, e: &Class) -> Result<RayDecomposition> {
    if !x.is_ample(l) {
        return Err(Error::NotAmple);
    }
    if !x.is_pseff(e) || e.is_zero() {
        return Err(Error::NotPseudoEffective);
    }
    let lc = x.eff_coords(l);
    let ec = x.eff_coords(e);
    // First nonpositive coordinate ratio: tau = min over e_i > 0 of l_i / e_i.
    let tau = lc
        .iter()
        .zip(&ec)
        .filter(|(_, ei)| **ei > Rat::zero())
        .map(|(li, ei)| li / ei)
        .min()
        .ok_or_else(|| Error::Configuration("ray never leaves the effective cone".into()))?;
    if tau <= Rat::zero() {
        return Err(Error::NotAmple);
    }
    // Nef threshold: first extremal curve wall along the undecomposed ray.
    let eps = x
        .mori_gens
        .iter()
        .filter(|m| m.pair(e) > Rat::zero())
        .map(|m| m.pair(l) / m.pair(e))
        .min()
        .unwrap_or_else(|| tau.clone())
        .min(tau.clone());

    let ray_at = |t: &Rat| -> Class { l.sub(&e.scale(t)) };

    let mut segments: Vec<RaySegment> = Vec::new();
    let mut start = Rat::zero();
    let mut window = rat(1, 16); // fraction of the remaining ray used for sampling
    let mut guard = 0usize;
    while start < tau {
        guard += 1;
        if guard > 256 {
            return Err(Error::Configuration("ray decomposition did not terminate".into()));
        }
        // Build an affine model of the decomposition just right of `start`
        // from two sample decompositions.
        let mut h = (&tau - &start) * &window;
        let (model_p, model_n, support) = loop {
            let s1 = &start + &h;
            let s2 = &start + &h * ratio(2);
            let d1 = decompose(x, &ray_at(&s1))?;
            let d2 = decompose(x, &ray_at(&s2))?;
            if d1.support() == d2.support() {
                let support = d1.support();
                // P(x) = P(s1) + (x - s1) * (P(s2) - P(s1))/h
                let slope = d2.positive.sub(&d1.positive).scale(&h.recip());
                let base = d1.positive.sub(&slope.scale(&s1));
                let p = AffineClass { base, slope };
                let n: Vec<AffineMult> = support
                    .iter()
                    .map(|&gi| {
                        let m1 = d1.multiplicity(gi);
                        let m2 = d2.multiplicity(gi);
                        let c1 = (&m2 - &m1) / &h;
                        let c0 = &m1 - &c1 * &s1;
                        AffineMult { eff_idx: gi, c0, c1 }
                    })
                    .collect();
                break (p, n, support);
            }
            h /= ratio(4);
        };
        // Next wall: smallest root in (start, tau) of a decreasing curve
        // pairing of P(x) or a decreasing negative multiplicity.
        let mut wall = tau.clone();
        for m in &x.mori_gens {
            let v0 = m.pair(&model_p.base);
            let v1 = m.pair(&model_p.slope);
            if v1 < Rat::zero() {
                let root = -v0 / v1;
                if root > start && root < wall {
                    wall = root;
                }
            }
        }
        for n in &model_n {
            if n.c1 < Rat::zero() {
                let root = -&n.c0 / &n.c1;
                if root > start && root < wall {
                    wall = root;
                }
            }
        }
        // Validate the model at the chamber midpoint and just right of the
        // left endpoint; on failure the sampling window straddled a hidden
        // wall (e.g. a first chamber shorter than the window), so retry with
        // a smaller one.
        let mid = (&start + &wall) / ratio(2);
        let near_left = &start + (&wall - &start) / ratio(4096);
        let valid = [mid, near_left].iter().all(|t| {
            decompose(x, &ray_at(t)).map_or(false, |d| {
                d.support() == support && d.positive == model_p.eval(t)
            })
        });
        if !valid {
            window /= ratio(8);
            if window < rat(1, 1 << 30) {
                return Err(Error::Configuration("ray chamber model failed validation".into()));
            }
            continue;
        }
        let vol = vol_cubic(x, &model_p);
        segments.push(RaySegment {
            x0: start.clone(),
            x1: wall.clone(),
            positive: model_p,
            negative: model_n,
            vol,
        });
        start = wall;
        window = rat(1, 16);
    }
    if segments.is_empty() {
        return Err(Error::Configuration("empty ray decomposition".into()));
    }
    // Invariants: the first segment carries no negative part and ends exactly
    // at the nef threshold.
    debug_assert!(segments[0].negative.is_empty());
    debug_assert_eq!(segments[0].x1, eps);
    Ok(RayDecomposition { segments, tau, eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::catalog;
    use num_traits::One;

    #[test]
    fn nef_class_decomposes_trivially() {
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let x = &case.threefold;
        let c = Class::from_ints(&[2, 1]); // nef generator
        let d = decompose(x, &c).unwrap();
        assert_eq!(d.positive, c);
        assert!(d.negative.is_empty());
    }

    #[test]
    fn decompose_is_idempotent() {
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let x = &case.threefold;
        let c = Class::from_ints(&[4, 1]); // effective, not nef
        let d = decompose(x, &c).unwrap();
        assert!(!d.negative.is_empty());
        let d2 = decompose(x, &d.positive).unwrap();
        assert_eq!(d2.positive, d.positive);
        assert!(d2.negative.is_empty());
    }

    #[test]
    fn non_pseff_class_has_zero_volume() {
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let x = &case.threefold;
        assert_eq!(volume(x, &Class::from_ints(&[1, -1])), ratio(0));
        assert!(decompose(x, &Class::from_ints(&[-1, 0])).is_err());
    }

    #[test]
    fn e1_anticanonical_volume() {
        // (4 D1 + 3 D2)^3 expands to 46 with the E1 intersection table.
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let x = &case.threefold;
        let l = Class::from_ints(&[4, 3]);
        assert_eq!(volume(x, &l), ratio(46));
        assert_eq!(x.cube(&l), ratio(46));
    }

    #[test]
    fn p3_single_segment_ray() {
        // P^3 with L = (4 - 2a - b) H, E = H: single segment, tau = eps.
        let case = catalog::instantiate("F3", &Default::default()).unwrap();
        let x = &case.threefold;
        let (a, b) = (rat(1, 2), rat(1, 4));
        let lcoef = ratio(4) - ratio(2) * &a - &b;
        let l = Class::new(vec![lcoef.clone()]);
        let ray = decompose_ray(x, &l, &Class::from_ints(&[1])).unwrap();
        assert_eq!(ray.segments.len(), 1);
        assert_eq!(ray.tau, lcoef);
        assert_eq!(ray.eps, ray.tau);
        assert_eq!(volume(x, &l), l.coords[0].clone() * &l.coords[0] * &l.coords[0]);
    }

    #[test]
    fn e1_d2_ray_thresholds_and_profile() {
        // tau(D2) = 3 - b, eps(D2) = 1 + a/2 - b on the blow-up of the quadric.
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let x = &case.threefold;
        let (a, b) = (rat(1, 3), rat(1, 5));
        let l = Class::new(vec![ratio(4) - &a, ratio(3) - &b]);
        let ray = decompose_ray(x, &l, &Class::from_ints(&[0, 1])).unwrap();
        assert_eq!(ray.tau, ratio(3) - &b);
        assert_eq!(ray.eps, ratio(1) + &a / ratio(2) - &b);
        assert_eq!(ray.segments.len(), 2);
        // Beyond eps the positive part is (3 - b - x)(2 D1 + D2).
        let s = &ray.segments[1];
        let probe = (&ray.eps + &ray.tau) / ratio(2);
        let p = s.positive.eval(&probe);
        let expect = Class::new(vec![
            (ratio(3) - &b - &probe) * ratio(2),
            ratio(3) - &b - &probe,
        ]);
        assert_eq!(p, expect);
        assert!(ray.volume_profile().is_continuous());
    }

    #[test]
    fn q1_d2_ray_breakpoint_and_tail() {
        // Q1 (m=1), E-coordinates: breakpoint at 1 + a - b, tau = 3 - b, and
        // the tail volume is (3-b-x)^3/m^3 * H^3 = 2 (3-b-x)^3.
        let case = catalog::instantiate("Q1", &catalog::default_params("Q1")).unwrap();
        let x = &case.threefold;
        let (a, b) = (rat(1, 7), rat(2, 7));
        let l = Class::new(vec![ratio(2) - &a, ratio(3) - &b]);
        let ray = decompose_ray(x, &l, &Class::from_ints(&[0, 1])).unwrap();
        assert_eq!(ray.eps, ratio(1) + &a - &b);
        assert_eq!(ray.tau, ratio(3) - &b);
        let tail = &ray.segments.last().unwrap().vol;
        let expect = Poly::affine(ratio(3) - &b, ratio(-1)).pow(3).scale(&ratio(2));
        assert_eq!(tail, &expect);
    }

    #[test]
    fn c10_d2_ray_negative_part() {
        // L - t D2 for t in (1 - b + a, 3 - b): P = 2F + (3-b-t)H,
        // N = (t - 1 + b - a)(H - E). Oracle: exhaustive subtraction over the
        // three effective generators at sample points.
        let case = catalog::instantiate("C10", &Default::default()).unwrap();
        let x = &case.threefold;
        let (a, b) = (rat(1, 4), rat(1, 8));
        let pair = case.pair(&[a.clone(), b.clone()]).unwrap();
        let l = pair.polarization();
        let e_idx = x.basis_index("E").unwrap();
        let mut e = Class::zero(3);
        e.coords[e_idx] = Rat::one();
        let ray = decompose_ray(x, &l, &e).unwrap();
        assert_eq!(ray.eps, ratio(1) - &b + &a);
        assert_eq!(ray.tau, ratio(3) - &b);
        let t = (&ray.eps + &ray.tau) / ratio(2);
        let d = decompose(x, &l.sub(&e.scale(&t))).unwrap();
        // N = (t - 1 + b - a) * (H - E), the first effective generator.
        let h_minus_e_idx = x.eff_labels.iter().position(|l| l == "D1").unwrap();
        assert_eq!(d.negative.len(), 1);
        assert_eq!(d.negative[0].0, h_minus_e_idx);
        assert_eq!(d.negative[0].1, &t - ratio(1) + &b - &a);
        // P = 2F + (3 - b - t)H
        let f_idx = x.basis_index("F").unwrap();
        let h_idx = x.basis_index("H").unwrap();
        let mut expect = Class::zero(3);
        expect.coords[f_idx] = ratio(2);
        expect.coords[h_idx] = ratio(3) - &b - &t;
        assert_eq!(d.positive, expect);
        // the positive part kills the wall curve
        for m in &x.mori_gens {
            assert!(m.pair(&d.positive) >= Rat::zero());
        }
    }

    #[test]
    fn e2_negative_part_matches_closed_form() {
        // On the blow-up of the P^2-bundle, N(x) = (x - 1 - a + b) D1 along
        // the D2 ray for x in (1 + a - b, 3 - b).
        let case = catalog::instantiate("E2", &catalog::default_params("E2")).unwrap();
        let x = &case.threefold;
        let (a, b) = (rat(1, 3), rat(1, 6));
        let pair = case.pair(&[a.clone(), b.clone()]).unwrap();
        let l = pair.polarization();
        let d2 = Class::from_ints(&[0, 1, 0]);
        let probe = ratio(2) - &a; // inside (1 + a - b, 3 - b) for these values
        assert!(probe > ratio(1) + &a - &b && probe < ratio(3) - &b);
        let d = decompose(x, &l.sub(&d2.scale(&probe))).unwrap();
        let d1_idx = x.eff_labels.iter().position(|l| l == "D1").unwrap();
        assert_eq!(d.negative, vec![(d1_idx, &probe - ratio(1) - &a + &b)]);
    }

    #[test]
    fn volume_profiles_continuous_and_monotone() {
        for id in ["E1", "E2", "Q1", "C10", "D5"] {
            let case = catalog::instantiate(id, &catalog::default_params(id)).unwrap();
            let x = &case.threefold;
            let pair = case.pair(&vec![rat(1, 5); case.boundary.len()]).unwrap();
            let l = pair.polarization();
            for td in &case.test_divisors {
                let ray = decompose_ray(x, &l, &td.class).unwrap();
                let profile = ray.volume_profile();
                assert!(profile.is_continuous(), "{id}/{}", td.label);
                // non-increasing on a sample grid, nonnegative, zero-ish at tau
                let mut prev: Option<Rat> = None;
                for k in 0..=16 {
                    let t = &ray.tau * rat(k, 16);
                    let v = profile.eval(&t).unwrap();
                    assert!(v >= Rat::zero());
                    if let Some(p) = prev {
                        assert!(v <= p, "{id}/{}: volume increased", td.label);
                    }
                    prev = Some(v);
                }
                assert!(profile.eval(&ray.tau).unwrap() >= Rat::zero());
            }
        }
    }
}
