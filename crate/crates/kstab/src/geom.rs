//! The variety model: Picard lattice with a trilinear intersection form,
//! cone data, positivity tests, and the nef value of the first contraction.
//!
//! Everything is numerical: a threefold is its basis labels, its symmetric
//! triple-product table, the generators of the nef and effective cones, and
//! the extremal curve functionals. All catalog cases have Picard rank <= 3
//! and simplicial effective cones, which the constructor enforces.

use crate::arith::{ratio, show_rat, Rat};
use crate::{Error, Result};
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

/// Divisor class as rational coordinates in the owning threefold's basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Class {
    pub coords: Vec<Rat>,
}

impl Class {
    pub fn new(coords: Vec<Rat>) -> Self {
        Class { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Class::new(coords.iter().map(|&c| ratio(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn zero(rank: usize) -> Self {
        Class::new(vec![Rat::zero(); rank])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Class) -> Class {
        Class::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Class) -> Class {
        Class::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Class {
        Class::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Class {
        self.scale(&-Rat::one())
    }
}

use num_traits::One;

/// A class depending affinely on a ray parameter: `base + x * slope`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineClass {
    pub base: Class,
    pub slope: Class,
}

impl AffineClass {
    pub fn eval(&self, x: &Rat) -> Class {
        self.base.add(&self.slope.scale(x))
    }
}

/// Intersection of a curve class with each Picard basis element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveFunctional {
    pub pairing: Vec<Rat>,
}

impl CurveFunctional {
    pub fn from_ints(pairing: &[i64]) -> Self {
        CurveFunctional {
            pairing: pairing.iter().map(|&c| ratio(c)).collect(),
        }
    }

    /// Bilinear exact pairing with a divisor class.
    pub fn pair(&self, c: &Class) -> Rat {
        self.pairing
            .iter()
            .zip(&c.coords)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Threefold: Picard basis, symmetric trilinear form, canonical class, cone
/// generators and the extremal curve functionals, plus the effective cone's
/// prime-divisor labels.
#[derive(Clone, Debug)]
pub struct Threefold {
    pub basis_labels: Vec<String>,
    rank: usize,
    /// Full rank^3 table, symmetric in all index permutations.
    triple: Vec<Rat>,
    pub canonical: Class,
    pub nef_gens: Vec<Class>,
    pub eff_gens: Vec<Class>,
    pub eff_labels: Vec<String>,
    pub mori_gens: Vec<CurveFunctional>,
    /// Inverse of the eff-generator matrix (columns = generators), used for
    /// the simplicial pseudo-effectivity test.
    eff_inverse: Vec<Vec<Rat>>,
}

impl Threefold {
    /// Build from a list of distinct index triples `(i, j, k, value)`; the
    /// table is symmetrized and missing entries are zero.
    pub fn new(
        basis_labels: Vec<String>,
        entries: &[(usize, usize, usize, Rat)],
        canonical: Class,
        nef_gens: Vec<Class>,
        eff_gens: Vec<Class>,
        eff_labels: Vec<String>,
        mori_gens: Vec<CurveFunctional>,
    ) -> Result<Self> {
        let rank = basis_labels.len();
        let mut triple = vec![Rat::zero(); rank * rank * rank];
        let idx = |i: usize, j: usize, k: usize| (i * rank + j) * rank + k;
        for (i, j, k, v) in entries {
            if *i >= rank || *j >= rank || *k >= rank {
                return Err(Error::DimensionMismatch { expected: rank, got: i.max(j).max(k) + 1 });
            }
            let perms = [
                (*i, *j, *k),
                (*i, *k, *j),
                (*j, *i, *k),
                (*j, *k, *i),
                (*k, *i, *j),
                (*k, *j, *i),
            ];
            for (a, b, c) in perms {
                let cell = &mut triple[idx(a, b, c)];
                if !cell.is_zero() && *cell != *v {
                    return Err(Error::Configuration(format!(
                        "conflicting triple entries at ({a},{b},{c})"
                    )));
                }
                *cell = v.clone();
            }
        }
        if canonical.rank() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: canonical.rank() });
        }
        if eff_gens.len() != rank || eff_labels.len() != rank {
            return Err(Error::Configuration(
                "effective cone must be simplicial: one labeled generator per basis element".into(),
            ));
        }
        let eff_inverse = invert(&eff_gens).ok_or_else(|| {
            Error::Configuration("effective generators are not linearly independent".into())
        })?;
        let x = Threefold {
            basis_labels,
            rank,
            triple,
            canonical,
            nef_gens,
            eff_gens,
            eff_labels,
            mori_gens,
            eff_inverse,
        };
        x.check_cones()?;
        Ok(x)
    }

    fn check_cones(&self) -> Result<()> {
        for g in &self.nef_gens {
            if !self.is_nef(g) {
                return Err(Error::Configuration(
                    "a declared nef generator pairs negatively with a curve generator".into(),
                ));
            }
        }
        // Each effective generator must either be negative on some extremal
        // curve or itself be nef (fiber classes, and the Nef = Eff cases).
        for g in &self.eff_gens {
            let negative = self.mori_gens.iter().any(|c| c.pair(g) < Rat::zero());
            if !negative && !self.is_nef(g) {
                return Err(Error::Configuration(
                    "an effective generator is neither rigid against a curve nor nef".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Trilinear symmetric evaluation of the intersection form.
    pub fn triple_product(&self, c1: &Class, c2: &Class, c3: &Class) -> Result<Rat> {
        for c in [c1, c2, c3] {
            if c.rank() != self.rank {
                return Err(Error::DimensionMismatch { expected: self.rank, got: c.rank() });
            }
        }
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if c1.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if c2.coords[j].is_zero() {
                    continue;
                }
                for k in 0..self.rank {
                    let t = &self.triple[(i * self.rank + j) * self.rank + k];
                    if t.is_zero() || c3.coords[k].is_zero() {
                        continue;
                    }
                    acc += &c1.coords[i] * &c2.coords[j] * &c3.coords[k] * t;
                }
            }
        }
        Ok(acc)
    }

    pub fn cube(&self, c: &Class) -> Rat {
        self.triple_product(c, c, c).expect("rank-checked class")
    }

    /// Nonnegative pairing with every extremal curve.
    pub fn is_nef(&self, c: &Class) -> bool {
        self.mori_gens.iter().all(|m| m.pair(c) >= Rat::zero())
    }

    /// Strictly positive pairing with every extremal curve. The zero class is
    /// not ample (on a projective threefold there is always a curve).
    pub fn is_ample(&self, c: &Class) -> bool {
        !self.mori_gens.is_empty() && self.mori_gens.iter().all(|m| m.pair(c) > Rat::zero())
    }

    /// Coordinates in the simplicial effective basis.
    pub fn eff_coords(&self, c: &Class) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| {
                self.eff_inverse[i]
                    .iter()
                    .zip(&c.coords)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Nonnegative coordinates in the effective basis.
    pub fn is_pseff(&self, c: &Class) -> bool {
        self.eff_coords(c).iter().all(|x| *x >= Rat::zero())
    }

    /// Resolve a basis label to its index.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }
}

/// Invert the matrix whose columns are the given classes. Returns rows of the
/// inverse. Exact Gauss-Jordan; `None` when singular.
fn invert(cols: &[Class]) -> Option<Vec<Vec<Rat>>> {
    let n = cols.len();
    if n == 0 || cols.iter().any(|c| c.rank() != n) {
        return None;
    }
    // a[i][j] = coordinate i of generator j
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j].coords[i].clone()).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

/// A polarized pair `(X, D = sum c_i D_i)` with boundary components among the
/// catalog-declared prime divisors and coefficients in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct LogPair {
    pub variety: Arc<Threefold>,
    pub boundary: Vec<(Class, String)>,
    pub coeffs: Vec<Rat>,
}

impl LogPair {
    pub fn new(variety: Arc<Threefold>, boundary: Vec<(Class, String)>, coeffs: Vec<Rat>) -> Result<Self> {
        if boundary.len() != coeffs.len() {
            return Err(Error::Configuration("one coefficient per boundary divisor".into()));
        }
        for c in &coeffs {
            if *c < Rat::zero() || *c >= Rat::one() {
                return Err(Error::Configuration(format!(
                    "boundary coefficient {} outside [0, 1)",
                    show_rat(c)
                )));
            }
        }
        Ok(LogPair { variety, boundary, coeffs })
    }

    /// The polarization `L = -K_X - D`.
    pub fn polarization(&self) -> Class {
        let mut l = self.variety.canonical.neg();
        for ((d, _), c) in self.boundary.iter().zip(&self.coeffs) {
            l = l.sub(&d.scale(c));
        }
        l
    }

    /// Boundary coefficient attached to a label, zero for non-boundary
    /// divisors.
    pub fn coeff_of(&self, label: &str) -> Rat {
        self.boundary
            .iter()
            .zip(&self.coeffs)
            .find(|((_, l), _)| l == label)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// `-K_X - D` ample.
    pub fn is_log_fano(&self) -> bool {
        self.variety.is_ample(&self.polarization())
    }
}

/// Result of the nef-value computation: the threshold and the extremal
/// curves achieving it.
#[derive(Clone, Debug, PartialEq)]
pub struct NefValue {
    pub eps: Rat,
    pub achieved_by: Vec<usize>,
}

impl fmt::Display for NefValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", show_rat(&self.eps))
    }
}

/// Minimal `eps` with `K_X + eps * (-K_X - Delta)` nef, computed as the max
/// over extremal curves `C` with `K_X . C < 0` of `(-K_X . C) / Gamma . C`
/// where `Gamma = -K_X - Delta`. Requires `Gamma` ample and `K_X` not nef.
pub fn nef_value(x: &Threefold, delta: &Class) -> Result<NefValue> {
    if x.is_nef(&x.canonical) {
        return Err(Error::CanonicalNef);
    }
    let gamma = x.canonical.neg().sub(delta);
    if !x.is_ample(&gamma) {
        return Err(Error::NotAmple);
    }
    let mut best: Option<Rat> = None;
    let mut achieved = Vec::new();
    for (i, c) in x.mori_gens.iter().enumerate() {
        let kc = c.pair(&x.canonical);
        if kc >= Rat::zero() {
            continue;
        }
        let ratio = -kc / c.pair(&gamma);
        match &best {
            Some(b) if ratio < *b => {}
            Some(b) if ratio == *b => achieved.push(i),
            _ => {
                best = Some(ratio);
                achieved = vec![i];
            }
        }
    }
    let eps = best.ok_or(Error::CanonicalNef)?;
    Ok(NefValue { eps, achieved_by: achieved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::catalog;

    fn e1() -> Arc<Threefold> {
        catalog::instantiate("E1", &Default::default()).unwrap().threefold
    }

    #[test]
    fn e1_triple_products() {
        let x = e1();
        let d1 = Class::from_ints(&[1, 0]);
        let d2 = Class::from_ints(&[0, 1]);
        assert_eq!(x.triple_product(&d1, &d1, &d1).unwrap(), ratio(1));
        assert_eq!(x.triple_product(&d1, &d1, &d2).unwrap(), ratio(-2));
        assert_eq!(x.triple_product(&d1, &d2, &d2).unwrap(), ratio(4));
        assert_eq!(x.cube(&d2), ratio(-6));
        // Fiber class on any P^2-bundle over P^1 self-intersects to zero.
        let d = catalog::instantiate("D5", &Default::default()).unwrap().threefold;
        let f = Class::from_ints(&[0, 1]);
        assert_eq!(d.cube(&f), ratio(0));
        // H^2 F = 1 on the D-family bundles.
        let h = Class::from_ints(&[1, 0]);
        assert_eq!(d.triple_product(&h, &h, &f).unwrap(), ratio(1));
    }

    #[test]
    fn e1_cone_membership() {
        let x = e1();
        assert!(x.is_nef(&Class::from_ints(&[2, 1])));
        assert!(!x.is_nef(&Class::from_ints(&[1, 0]))); // D1 . l1 = -1
        assert!(x.is_nef(&Class::zero(2)));
        assert!(!x.is_pseff(&Class::from_ints(&[1, -1]))); // D1 - D2
        assert!(x.is_pseff(&Class::zero(2)));
        assert!(!x.is_ample(&Class::zero(2)));
    }

    #[test]
    fn nef_implies_pseff_on_random_nef_classes() {
        for id in ["E1", "E2", "Q1", "C5", "C10", "D5", "F3"] {
            let case = catalog::instantiate(id, &catalog::default_params(id)).unwrap();
            let x = &case.threefold;
            // random nonnegative combinations of nef generators
            for s in 0..20u64 {
                let mut c = Class::zero(x.rank());
                for (i, g) in x.nef_gens.iter().enumerate() {
                    let w = rat(((s * 7 + i as u64 * 13) % 11) as i64, 3);
                    c = c.add(&g.scale(&w));
                }
                assert!(x.is_nef(&c), "{id}: nef combination not nef");
                assert!(x.is_pseff(&c), "{id}: nef class not pseudo-effective");
            }
            for g in &x.eff_gens {
                assert!(x.is_pseff(g));
            }
        }
    }

    #[test]
    fn d2_ampleness_criterion() {
        // D2 (n=1, a=b=0): L = 3H + 0F fails n(1-b) < 1.
        let mut params = std::collections::BTreeMap::new();
        params.insert("n".to_string(), 1i64);
        let case = catalog::instantiate("D2", &params).unwrap();
        let pair = case.pair(&[ratio(0), ratio(0)]).unwrap();
        assert!(!pair.is_log_fano());
        let pair = case.pair(&[ratio(0), rat(1, 2)]).unwrap();
        assert!(pair.is_log_fano());
    }

    #[test]
    fn p3_ample_and_log_fano() {
        let case = catalog::instantiate("F3", &Default::default()).unwrap();
        let pair = case.pair(&[rat(1, 2), rat(1, 2)]).unwrap();
        // L = (4 - 2a - b) H with a = b = 1/2 is ample
        assert!(pair.is_log_fano());
        let x = &case.threefold;
        assert!(x.is_ample(&pair.polarization()));
    }

    #[test]
    fn d4_log_fano_criterion() {
        let mut params = std::collections::BTreeMap::new();
        params.insert("n".to_string(), 2i64);
        let case = catalog::instantiate("D4", &params).unwrap();
        // a + n(1-b) = 1/2 + 2 = 5/2 >= 2: not log Fano
        let pair = case.pair(&[rat(1, 2), ratio(0)]).unwrap();
        assert!(!pair.is_log_fano());
    }

    #[test]
    fn q1_always_log_fano() {
        let case = catalog::instantiate("Q1", &catalog::default_params("Q1")).unwrap();
        let pair = case.pair(&[ratio(0), ratio(0)]).unwrap();
        assert!(pair.is_log_fano());
    }

    #[test]
    fn nef_values_of_selected_cases() {
        for (id, expect) in [("E1", ratio(2)), ("D6", rat(3, 2)), ("F3", rat(4, 1))] {
            let case = catalog::instantiate(id, &catalog::default_params(id)).unwrap();
            let delta = case.total_boundary();
            let nv = nef_value(&case.threefold, &delta).unwrap();
            assert_eq!(nv.eps, expect, "nef value of {id}");
        }
    }

    #[test]
    fn nef_value_rejects_nef_canonical() {
        // A fake threefold with nef canonical class: quadric with K = +3H.
        let x = Threefold::new(
            vec!["H".into()],
            &[(0, 0, 0, ratio(2))],
            Class::from_ints(&[3]),
            vec![Class::from_ints(&[1])],
            vec![Class::from_ints(&[1])],
            vec!["H".into()],
            vec![CurveFunctional::from_ints(&[1])],
        )
        .unwrap();
        assert!(matches!(nef_value(&x, &Class::zero(1)), Err(Error::CanonicalNef)));
    }

    #[test]
    fn coefficients_outside_unit_interval_rejected() {
        let case = catalog::instantiate("F4", &Default::default()).unwrap();
        assert!(case.pair(&[ratio(1), ratio(0)]).is_err());
        assert!(case.pair(&[rat(-1, 2), ratio(0)]).is_err());
    }
}
