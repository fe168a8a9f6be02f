//! Independent numeric cross-checks: composite Simpson integration in
//! floating point against the exact engine values. The oracles share no code
//! with the exact integration path — volumes are sampled pointwise (exact
//! wall subtraction converted to f64) and integrated numerically.

use crate::arith::Rat;
use crate::az::{CenterSpec, SurfaceKind};
use crate::geom::{Class, LogPair, Threefold};
use crate::zariski::{decompose_ray, volume};
use num_traits::ToPrimitive;

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Composite Simpson with an even number of intervals of width <= `max_h`.
fn simpson(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, max_h: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let mut n = ((hi - lo) / max_h).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    n = n.max(2);
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + h * i as f64);
    }
    acc * h / 3.0
}

/// Numeric `S' = ∫_0^tau vol(L - xE) dx`: exact wall subtraction at each
/// sample, Simpson with step 1/64.
pub fn s_prime_oracle(x: &Threefold, l: &Class, e: &Class) -> f64 {
    let ray = decompose_ray(x, l, e).expect("valid ray");
    let tau = to_f64(&ray.tau);
    simpson(
        |t| {
            let t = Rat::from_float(t).unwrap_or_default();
            to_f64(&volume(x, &l.sub(&e.scale(&t))))
        },
        0.0,
        tau,
        1.0 / 64.0,
    )
}

fn surface_vol_f64(kind: SurfaceKind, c: &[f64]) -> f64 {
    match kind {
        SurfaceKind::P2 => {
            if c[0] >= 0.0 {
                c[0] * c[0]
            } else {
                0.0
            }
        }
        SurfaceKind::P1 => c[0].max(0.0),
        SurfaceKind::P1xP1 => {
            if c[0] >= 0.0 && c[1] >= 0.0 {
                2.0 * c[0] * c[1]
            } else {
                0.0
            }
        }
        SurfaceKind::Hirzebruch(n) => {
            let (a, g) = (c[0], c[1]);
            let n = n as f64;
            if a < 0.0 || g < 0.0 {
                0.0
            } else if g >= n * a {
                2.0 * a * g - n * a * a
            } else {
                g * g / n
            }
        }
    }
}

/// Numeric counterpart of `az::s_w`: the same semantic integrand (restricted
/// positive part up to the ambient threshold, formal restriction beyond, with
/// the negative-part multiplicity term) integrated by two-level Simpson with
/// step 1/64.
pub fn s_w_oracle(pair: &LogPair, center: &CenterSpec) -> f64 {
    let x = &pair.variety;
    let l = pair.polarization();
    let ray = decompose_ray(x, &l, &center.y_class).expect("valid flag ray");
    let l3 = to_f64(&x.cube(&l));
    let tau = to_f64(&ray.tau);
    let restrict_f64 = |c: &Class| -> Vec<f64> {
        center.restrict(c).iter().map(to_f64).collect()
    };
    let z: Vec<f64> = center.z_class.iter().map(to_f64).collect();
    // formal restriction for the continuation region
    let base: Vec<f64> = restrict_f64(&l);
    let slope: Vec<f64> = restrict_f64(&center.y_class.neg());
    // Continuation end: the formal restriction stays coordinatewise
    // nonnegative on [tau, u_end].
    let mut u_end = tau;
    {
        let mut end = f64::INFINITY;
        let mut valid_at_tau = true;
        for (b, s) in base.iter().zip(&slope) {
            if b + s * tau < -1e-9 {
                valid_at_tau = false;
            }
            if *s < 0.0 {
                end = end.min(-b / s);
            }
        }
        if valid_at_tau && end.is_finite() && end > tau {
            u_end = end;
        }
    }
    let integrand = |u: f64| -> f64 {
        let ur = Rat::from_float(u).unwrap_or_default();
        let (coords, ord_term) = if ur <= ray.tau {
            let seg = ray.segment_at(&ur).expect("u within [0, tau]");
            let p = seg.positive.eval(&ur);
            let mut ord = 0.0;
            for m in &seg.negative {
                ord += to_f64(&m.eval(&ur)) * to_f64(&center.n_rest[m.eff_idx]);
            }
            let p2y = to_f64(
                &x.triple_product(&p, &p, &center.y_class).expect("rank checked"),
            );
            (restrict_f64(&p), p2y * ord)
        } else {
            let coords: Vec<f64> = base.iter().zip(&slope).map(|(b, s)| b + s * u).collect();
            (coords, 0.0)
        };
        // inner support bound
        let mut v_end: f64 = 0.0;
        for (c, zi) in coords.iter().zip(&z) {
            if *zi > 0.0 && *c > 0.0 {
                v_end = v_end.max(c / zi);
            }
        }
        let inner = simpson(
            |v| {
                let shifted: Vec<f64> = coords.iter().zip(&z).map(|(c, zi)| c - v * zi).collect();
                surface_vol_f64(center.kind, &shifted)
            },
            0.0,
            v_end,
            1.0 / 64.0,
        );
        ord_term + inner
    };
    3.0 * simpson(integrand, 0.0, u_end, 1.0 / 64.0) / l3
}

/// Relative agreement helper used by the verification suite.
pub fn close_rel(exact: &Rat, approx: f64, tol: f64) -> bool {
    let e = to_f64(exact);
    let scale = e.abs().max(1.0);
    (e - approx).abs() <= tol * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::az::surface_vol;
    use crate::catalog;

    #[test]
    fn s_prime_oracle_agrees_on_e1() {
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let pair = case.pair(&[rat(1, 3), rat(1, 5)]).unwrap();
        let l = pair.polarization();
        for td in &case.test_divisors {
            let ray = decompose_ray(&case.threefold, &l, &td.class).unwrap();
            let exact = ray.s_prime();
            let approx = s_prime_oracle(&case.threefold, &l, &td.class);
            assert!(close_rel(&exact, approx, 1e-6), "{}: {exact} vs {approx}", td.label);
        }
    }

    #[test]
    fn s_w_oracle_agrees_on_f4() {
        let case = catalog::instantiate("F4", &Default::default()).unwrap();
        let pair = case.pair(&[rat(1, 5), rat(1, 7)]).unwrap();
        let exact = crate::az::s_w(&pair, &case.az_centers[0], case.mov_eq_nef).unwrap();
        let approx = s_w_oracle(&pair, &case.az_centers[0]);
        assert!(close_rel(&exact, approx, 1e-5), "{exact} vs {approx}");
    }

    #[test]
    fn sanity_check_surface_vol_consistency() {
        // the f64 and exact surface volumes agree on rational samples
        for kind in [SurfaceKind::P1xP1, SurfaceKind::Hirzebruch(1), SurfaceKind::Hirzebruch(2)] {
            for (p, q) in [(3i64, 1i64), (1, 2), (5, 4), (0, 1)] {
                let c = vec![rat(p, 2), rat(q, 2)];
                let cf: Vec<f64> = c.iter().map(to_f64).collect();
                let exact = to_f64(&surface_vol(kind, &c));
                assert!((exact - surface_vol_f64(kind, &cf)).abs() < 1e-12);
            }
        }
    }
}
