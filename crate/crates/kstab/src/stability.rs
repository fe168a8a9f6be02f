//! K-stability invariants on the polarized pair: log discrepancies, expected
//! vanishing orders, beta-prime invariants, divisorial verdicts over a case's
//! test-divisor list, and the low-dimensional thresholds feeding the product
//! rule.

use crate::arith::{rat, ratio, show_rat, Poly, Rat};
use crate::geom::{Class, LogPair};
use crate::zariski::decompose_ray;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Sign of a beta-prime invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    ZeroExactly,
    Negative,
}

/// Full record of one beta-prime computation.
#[derive(Clone, Debug)]
pub struct BetaReport {
    pub divisor_label: String,
    pub log_discrepancy: Rat,
    pub tau: Rat,
    pub eps: Rat,
    pub s_prime: Rat,
    pub l_cubed: Rat,
    pub beta_prime: Rat,
    pub verdict: Verdict,
}

impl fmt::Display for BetaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: A = {}, tau = {}, eps = {}, S' = {}, L^3 = {}, beta' = {}",
            self.divisor_label,
            show_rat(&self.log_discrepancy),
            show_rat(&self.tau),
            show_rat(&self.eps),
            show_rat(&self.s_prime),
            show_rat(&self.l_cubed),
            show_rat(&self.beta_prime),
        )
    }
}

/// `1 - coeff_D(divisor)`: coefficient zero when the divisor is not a
/// boundary component.
pub fn log_discrepancy(pair: &LogPair, divisor_label: &str) -> Rat {
    Rat::one() - pair.coeff_of(divisor_label)
}

/// Beta-prime of a prime divisor on X: `A * L^3 - S'` with
/// `S' = ∫_0^tau vol(L - x E) dx` from the exact ray decomposition.
/// Requires the pair to be log Fano.
pub fn beta_prime(pair: &LogPair, divisor: &Class, label: &str) -> Result<BetaReport> {
    if !pair.is_log_fano() {
        return Err(Error::NotLogFano);
    }
    let x = &pair.variety;
    let l = pair.polarization();
    let ray = decompose_ray(x, &l, divisor)?;
    let s_prime = ray.s_prime();
    let l_cubed = x.cube(&l);
    let a = log_discrepancy(pair, label);
    let beta = &a * &l_cubed - &s_prime;
    let verdict = match beta.cmp(&Rat::zero()) {
        Ordering::Greater => Verdict::Positive,
        Ordering::Equal => Verdict::ZeroExactly,
        Ordering::Less => Verdict::Negative,
    };
    Ok(BetaReport {
        divisor_label: label.to_string(),
        log_discrepancy: a,
        tau: ray.tau,
        eps: ray.eps,
        s_prime,
        l_cubed,
        beta_prime: beta,
        verdict,
    })
}

/// Overall divisorial verdict over a test-divisor list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisorial {
    Unstable,
    Semistable,
    Stable,
}

#[derive(Clone, Debug)]
pub struct DivisorialVerdict {
    pub reports: Vec<BetaReport>,
    pub overall: Divisorial,
}

/// Evaluate beta-prime over the cataloged test-divisor list: unstable iff
/// some beta' < 0, stable iff all beta' > 0.
pub fn divisorial_verdict(pair: &LogPair, test_divisors: &[(Class, String)]) -> Result<DivisorialVerdict> {
    let mut reports = Vec::with_capacity(test_divisors.len());
    for (class, label) in test_divisors {
        reports.push(beta_prime(pair, class, label)?);
    }
    let overall = if reports.iter().any(|r| r.verdict == Verdict::Negative) {
        Divisorial::Unstable
    } else if reports.iter().all(|r| r.verdict == Verdict::Positive) {
        Divisorial::Stable
    } else {
        Divisorial::Semistable
    };
    Ok(DivisorialVerdict { reports, overall })
}

// ---------------------------------------------------------------------------
// Low-dimensional pairs for the product rule
// ---------------------------------------------------------------------------

/// The low-dimensional factors appearing in product-type cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorPair {
    /// `(P^2, a C)` with `C` a smooth conic.
    P2Conic(Rat),
    /// `(P^1 x P^1, a C)` with `C` a (1,1)-curve.
    P1xP1Diag(Rat),
    /// `(P^1, b P)` with `P` a point.
    P1Point(Rat),
    /// `(P^2, sum a_i L_i)` with lines `L_i`.
    P2Lines(Vec<Rat>),
}

/// Beta-prime of the boundary curve/point of a low-dimensional pair, by the
/// same `A * vol(L) - ∫ vol` recipe in dimension 2 (or 1).
pub fn beta_prime_surface(factor: &FactorPair) -> Rat {
    match factor {
        FactorPair::P2Conic(a) => {
            // L = (3 - 2a) h, vol(d h) = d^2, ray L - x * 2h.
            let s0 = ratio(3) - ratio(2) * a;
            let tau = &s0 / ratio(2);
            let volp = Poly::affine(s0.clone(), ratio(-2)).pow(2);
            let s = volp.integrate(&Rat::zero(), &tau);
            (Rat::one() - a) * &s0 * &s0 - s
        }
        FactorPair::P1xP1Diag(a) => {
            // L = (2 - a)(1,1), vol(p,q) = 2pq, ray L - x (1,1).
            let s0 = ratio(2) - a;
            let volp = Poly::affine(s0.clone(), ratio(-1)).pow(2).scale(&ratio(2));
            let s = volp.integrate(&Rat::zero(), &s0);
            (Rat::one() - a) * ratio(2) * &s0 * &s0 - s
        }
        FactorPair::P1Point(b) => {
            // L = (2 - b) P, vol(d P) = d; beta' = -b(2-b)/2.
            let s0 = ratio(2) - b;
            let volp = Poly::affine(s0.clone(), ratio(-1));
            let s = volp.integrate(&Rat::zero(), &s0);
            (Rat::one() - b) * &s0 - s
        }
        FactorPair::P2Lines(_) => {
            unreachable!("line boundaries are decided by factor_verdict directly")
        }
    }
}

/// K-stability of one factor, per the two-dimensional classification:
/// `(P^2, aC)` is semistable iff `a <= 3/4` (polystable iff strict),
/// `(P^1 x P^1, aC)` iff `a <= 1/2`, a weighted point is semistable only at
/// weight zero, and line boundaries only when trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorVerdict {
    Polystable,
    SemistableOnly,
    Unstable,
}

pub fn factor_verdict(factor: &FactorPair) -> FactorVerdict {
    match factor {
        FactorPair::P2Conic(a) => {
            let t = rat(3, 4);
            match a.cmp(&t) {
                Ordering::Less => FactorVerdict::Polystable,
                Ordering::Equal => FactorVerdict::SemistableOnly,
                Ordering::Greater => FactorVerdict::Unstable,
            }
        }
        FactorPair::P1xP1Diag(a) => {
            let t = rat(1, 2);
            match a.cmp(&t) {
                Ordering::Less => FactorVerdict::Polystable,
                Ordering::Equal => FactorVerdict::SemistableOnly,
                Ordering::Greater => FactorVerdict::Unstable,
            }
        }
        FactorPair::P1Point(b) => {
            if b.is_zero() {
                FactorVerdict::Polystable
            } else {
                FactorVerdict::Unstable
            }
        }
        FactorPair::P2Lines(coeffs) => {
            if coeffs.iter().all(|c| c.is_zero()) {
                FactorVerdict::Polystable
            } else {
                FactorVerdict::Unstable
            }
        }
    }
}

/// Verdict of a product-type pair: K-semistable iff every factor is, and
/// likewise for K-polystable.
pub fn product_rule(factors: &[FactorPair]) -> FactorVerdict {
    let mut out = FactorVerdict::Polystable;
    for f in factors {
        match factor_verdict(f) {
            FactorVerdict::Unstable => return FactorVerdict::Unstable,
            FactorVerdict::SemistableOnly => out = FactorVerdict::SemistableOnly,
            FactorVerdict::Polystable => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::catalog;

    #[test]
    fn log_discrepancies() {
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        let pair = case.pair(&[ratio(0), rat(1, 3)]).unwrap();
        assert_eq!(log_discrepancy(&pair, "D2"), rat(2, 3));
        assert_eq!(log_discrepancy(&pair, "H"), ratio(1)); // not in the boundary
        let d5 = catalog::instantiate("D5", &Default::default()).unwrap();
        let pair = d5.pair(&[rat(1, 2), ratio(0)]).unwrap();
        assert_eq!(log_discrepancy(&pair, "D1"), rat(1, 2));
    }

    #[test]
    fn f3_beta_prime_closed_forms() {
        // beta'(D2) = (4-2a-b)^3 (a/2 - 3b/4), beta'(D1) = (4-2a-b)^3 (1/2 - 3a/4 + b/8)
        let case = catalog::instantiate("F3", &Default::default()).unwrap();
        let (a, b) = (rat(1, 2), ratio(0));
        let pair = case.pair(&[a.clone(), b.clone()]).unwrap();
        let r2 = beta_prime(&pair, &case.test_divisor("D2").unwrap(), "D2").unwrap();
        assert_eq!(r2.beta_prime, rat(27, 4)); // 27 * 1/4
        let r1 = beta_prime(&pair, &case.test_divisor("D1").unwrap(), "D1").unwrap();
        let s0 = ratio(4) - ratio(2) * &a - &b;
        assert_eq!(
            r1.beta_prime,
            s0.clone() * &s0 * &s0 * (rat(1, 2) - rat(3, 4) * &a + &b / ratio(8))
        );
    }

    #[test]
    fn d5_beta_primes() {
        let case = catalog::instantiate("D5", &Default::default()).unwrap();
        // beta'(F) = 3a (3-a-b)^2 (2-a)/2; at (1/2, 1/4) that product is
        // 3 * (1/2) * (9/4)^2 * (3/2) / 2 = 729/128
        let pair = case.pair(&[rat(1, 2), rat(1, 4)]).unwrap();
        let rf = beta_prime(&pair, &case.test_divisor("F").unwrap(), "F").unwrap();
        assert_eq!(rf.beta_prime, rat(729, 128));
        // beta'(D2) vanishes on a = 2b
        let pair = case.pair(&[rat(1, 2), rat(1, 4)]).unwrap();
        let r2 = beta_prime(&pair, &case.test_divisor("D2").unwrap(), "D2").unwrap();
        assert_eq!(r2.verdict, Verdict::ZeroExactly);
    }

    #[test]
    fn beta_prime_requires_log_fano() {
        let mut params = std::collections::BTreeMap::new();
        params.insert("n".to_string(), 2i64);
        let case = catalog::instantiate("D4", &params).unwrap();
        let pair = case.pair(&[rat(1, 2), ratio(0)]).unwrap();
        let err = beta_prime(&pair, &case.test_divisor("D2").unwrap(), "D2");
        assert!(matches!(err, Err(Error::NotLogFano)));
    }

    #[test]
    fn beta_prime_consistency_and_scaling() {
        // beta' = A L^3 - S' exactly; S' > 0 and tau >= eps > 0.
        for id in ["E1", "Q1", "C9", "D5", "F4"] {
            let case = catalog::instantiate(id, &catalog::default_params(id)).unwrap();
            let pair = case.pair(&vec![rat(1, 7); case.boundary.len()]).unwrap();
            for td in &case.test_divisors {
                let r = beta_prime(&pair, &td.class, &td.label).unwrap();
                assert_eq!(r.beta_prime, &r.log_discrepancy * &r.l_cubed - &r.s_prime);
                assert!(r.s_prime > Rat::zero());
                assert!(r.tau >= r.eps && r.eps > Rat::zero());
            }
        }
    }

    #[test]
    fn f4_divisorial_verdict_at_origin() {
        let case = catalog::instantiate("F4", &Default::default()).unwrap();
        let pair = case.pair(&[ratio(0), ratio(0)]).unwrap();
        let v = divisorial_verdict(&pair, &case.test_divisor_pairs()).unwrap();
        assert_eq!(v.overall, Divisorial::Stable);
        // beta'(D_i) = (3)^3 * 1/2 = 27/2
        assert_eq!(v.reports[0].beta_prime, rat(27, 2));
    }

    #[test]
    fn f2_always_unstable() {
        let case = catalog::instantiate("F2", &Default::default()).unwrap();
        for (a, b) in [(1, 1), (3, 1), (1, 9), (5, 7)] {
            let pair = case.pair(&[rat(a, 10), rat(b, 10)]).unwrap();
            let v = divisorial_verdict(&pair, &case.test_divisor_pairs()).unwrap();
            assert_eq!(v.overall, Divisorial::Unstable, "F2 at ({a}/10, {b}/10)");
        }
    }

    #[test]
    fn e1_unstable_everywhere_sampled() {
        let case = catalog::instantiate("E1", &Default::default()).unwrap();
        for (a, b) in [(0, 0), (1, 1), (9, 9), (9, 1), (1, 9), (5, 5)] {
            let pair = case.pair(&[rat(a, 10), rat(b, 10)]).unwrap();
            let v = divisorial_verdict(&pair, &case.test_divisor_pairs()).unwrap();
            assert_eq!(v.overall, Divisorial::Unstable, "E1 at ({a}/10, {b}/10)");
        }
    }

    #[test]
    fn surface_thresholds() {
        assert_eq!(beta_prime_surface(&FactorPair::P2Conic(rat(3, 4))), ratio(0));
        assert!(beta_prime_surface(&FactorPair::P2Conic(rat(7, 10))) > ratio(0));
        assert!(beta_prime_surface(&FactorPair::P2Conic(rat(4, 5))) < ratio(0));
        assert_eq!(beta_prime_surface(&FactorPair::P1xP1Diag(rat(1, 2))), ratio(0));
        // (P^1, bP): beta' = -b(2-b)/2
        for b in [rat(0, 1), rat(1, 3), rat(9, 10)] {
            assert_eq!(
                beta_prime_surface(&FactorPair::P1Point(b.clone())),
                -&b * (ratio(2) - &b) / ratio(2)
            );
        }
    }

    #[test]
    fn product_rule_cases() {
        // D7 shape: (P^2, aC) x (P^1, bP)
        let d7 = |a: Rat, b: Rat| vec![FactorPair::P2Conic(a), FactorPair::P1Point(b)];
        assert_eq!(product_rule(&d7(rat(3, 4), ratio(0))), FactorVerdict::SemistableOnly);
        assert_eq!(product_rule(&d7(rat(1, 2), rat(1, 10))), FactorVerdict::Unstable);
        assert_eq!(product_rule(&d7(rat(1, 2), ratio(0))), FactorVerdict::Polystable);
        // C7 (k=n=0) shape: (P^1xP^1, aC) x (P^1, bP); a = 1/2, b = 0 is the
        // semistable boundary.
        let c7 = vec![FactorPair::P1xP1Diag(rat(1, 2)), FactorPair::P1Point(ratio(0))];
        assert_eq!(product_rule(&c7), FactorVerdict::SemistableOnly);
        // line boundaries destabilize unless trivial
        let d8 = vec![
            FactorPair::P2Lines(vec![rat(1, 5), ratio(0)]),
            FactorPair::P1Point(ratio(0)),
        ];
        assert_eq!(product_rule(&d8), FactorVerdict::Unstable);
    }
}
