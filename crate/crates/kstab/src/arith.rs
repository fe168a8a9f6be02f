//! Exact rationals, univariate and sparse multivariate polynomials, and
//! piecewise polynomials with exact breakpoint integration.
//!
//! `Rat` is arbitrary-precision and always in lowest terms with a positive
//! denominator, so every arithmetic identity used by the rest of the engine
//! holds exactly. Degrees stay small (volume profiles are cubics, beta
//! polynomials quartics), so no asymptotically clever algorithms are needed.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Exact rational number, stored in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn ratio(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parse `p`, `-p` or `p/q` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::InvalidDocument(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Render as `p/q` (or `p` when integral); inverse of [`parse_rat`].
pub fn show_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Polynomial over `Rat`, coefficients indexed by exponent, trailing zeros
/// trimmed. The zero polynomial has degree -1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The affine polynomial `c0 + c1 x`.
    pub fn affine(c0: Rat, c1: Rat) -> Self {
        Poly::new(vec![c0, c1])
    }

    /// `x`
    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree, with deg 0 = -1 by convention.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute `x -> c0 + c1 t`.
    pub fn compose_affine(&self, c0: &Rat, c1: &Rat) -> Poly {
        let inner = Poly::affine(c0.clone(), c1.clone());
        let mut out = Poly::zero();
        for c in self.coeffs.iter().rev() {
            out = out.mul(&inner).add(&Poly::constant(c.clone()));
        }
        out
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut out = vec![Rat::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / ratio(k as i64 + 1));
        }
        Poly::new(out)
    }

    /// Exact definite integral over `[lo, hi]`.
    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> Rat {
        let f = self.antiderivative();
        f.eval(hi) - f.eval(lo)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", show_rat(c))?,
                1 => write!(f, "{}*x", show_rat(c))?,
                _ => write!(f, "{}*x^{}", show_rat(c), k)?,
            }
        }
        Ok(())
    }
}

/// Exact Lagrange interpolation through distinct nodes.
pub fn lagrange(points: &[(Rat, Rat)]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::affine(-xj.clone(), Rat::one()));
            denom *= xi - xj;
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}

/// Polynomial identity testing by evaluation at `samples` distinct rationals.
/// Requires `samples > max(deg p, deg q)`, which makes agreement a proof.
pub fn poly_identity_check(p: &Poly, q: &Poly, samples: usize) -> bool {
    assert!(
        samples as isize > p.degree().max(q.degree()),
        "sample count must exceed both degrees"
    );
    (0..samples).all(|k| {
        // spread nodes a little off the integers to dodge contrived roots
        let x = rat(2 * k as i64 + 1, 3);
        p.eval(&x) == q.eval(&x)
    })
}

// ---------------------------------------------------------------------------
// Piecewise polynomials
// ---------------------------------------------------------------------------

/// Piecewise polynomial on `[breaks[0], breaks[n]]` with pieces taken
/// left-closed. Zero-length intervals are collapsed at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly {
    breaks: Vec<Rat>,
    pieces: Vec<Poly>,
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<Rat>, pieces: Vec<Poly>) -> Result<Self> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::Configuration(
                "piecewise polynomial needs n+1 breakpoints for n pieces".into(),
            ));
        }
        let mut b = vec![breaks[0].clone()];
        let mut p = Vec::new();
        for (i, piece) in pieces.into_iter().enumerate() {
            if breaks[i + 1] < breaks[i] {
                return Err(Error::Configuration("breakpoints must be increasing".into()));
            }
            if breaks[i + 1] == breaks[i] {
                continue; // collapse empty interval
            }
            b.push(breaks[i + 1].clone());
            p.push(piece);
        }
        if p.is_empty() {
            return Err(Error::Configuration("empty domain".into()));
        }
        Ok(PiecewisePoly { breaks: b, pieces: p })
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        (self.breaks.first().unwrap(), self.breaks.last().unwrap())
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    /// Evaluate; pieces are left-closed, the right endpoint belongs to the
    /// last piece.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return Err(Error::DomainError);
        }
        let mut idx = self.pieces.len() - 1;
        for i in 0..self.pieces.len() {
            if x < &self.breaks[i + 1] {
                idx = i;
                break;
            }
        }
        Ok(self.pieces[idx].eval(x))
    }

    /// Pieces must agree in value at interior breakpoints.
    pub fn is_continuous(&self) -> bool {
        for i in 1..self.pieces.len() {
            let x = &self.breaks[i];
            if self.pieces[i - 1].eval(x) != self.pieces[i].eval(x) {
                return false;
            }
        }
        true
    }

    /// Exact integral over `[lo, hi]`, summing antiderivative differences
    /// piece by piece.
    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> Result<Rat> {
        let (dlo, dhi) = self.domain();
        if lo > hi || lo < dlo || hi > dhi {
            return Err(Error::DomainError);
        }
        let mut total = Rat::zero();
        for i in 0..self.pieces.len() {
            let a = self.breaks[i].clone().max(lo.clone());
            let b = self.breaks[i + 1].clone().min(hi.clone());
            if a < b {
                total += self.pieces[i].integrate(&a, &b);
            }
        }
        Ok(total)
    }
}

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials (coefficients of boundary divisors)
// ---------------------------------------------------------------------------

/// Small sparse multivariate polynomial over `Rat`. Used for coefficient-space
/// region descriptions and for interpolating beta polynomials during sweeps;
/// the variable count is 1..=3 in practice.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    pub nvars: usize,
    terms: std::collections::BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Default::default() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exp, Rat::one());
        p
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        // we tolerate transient zeros; normalize lazily
        if entry.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(self.nvars, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, xs: &[Rat]) -> Rat {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &xs[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Total degree, -1 for zero.
    pub fn degree(&self) -> isize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as isize)
            .max()
            .unwrap_or(-1)
    }
}

/// Build an affine multivariate polynomial `c0 + sum coefs[i] * x_i`.
pub fn affine_multi(nvars: usize, c0: Rat, coefs: &[Rat]) -> MultiPoly {
    let mut p = MultiPoly::constant(nvars, c0);
    for (i, c) in coefs.iter().enumerate() {
        p = p.add(&MultiPoly::var(nvars, i).scale(c));
    }
    p
}

/// Interpolate a function of `nodes.len()` variables as a multivariate
/// polynomial with per-variable degree `degs[i]` (so `degs[i]+1` nodes each).
/// Exact: the caller guarantees `f` is such a polynomial on the node grid.
pub fn interpolate_multi(
    nodes: &[Vec<Rat>],
    degs: &[usize],
    f: &mut dyn FnMut(&[Rat]) -> Rat,
) -> MultiPoly {
    let nvars = nodes.len();
    assert_eq!(degs.len(), nvars);
    fn rec(
        nodes: &[Vec<Rat>],
        degs: &[usize],
        fixed: &mut Vec<Rat>,
        var: usize,
        nvars: usize,
        f: &mut dyn FnMut(&[Rat]) -> Rat,
    ) -> MultiPoly {
        if var == nvars {
            return MultiPoly::constant(nvars, f(fixed));
        }
        // Lagrange in `var`, recursing on the rest.
        let pts = &nodes[var][..degs[var] + 1];
        let mut out = MultiPoly::zero(nvars);
        for (i, xi) in pts.iter().enumerate() {
            fixed.push(xi.clone());
            let inner = rec(nodes, degs, fixed, var + 1, nvars, f);
            fixed.pop();
            // basis_i(x_var) as a MultiPoly
            let mut basis = MultiPoly::constant(nvars, Rat::one());
            let mut denom = Rat::one();
            let xv = MultiPoly::var(nvars, var);
            for (j, xj) in pts.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&xv.sub(&MultiPoly::constant(nvars, xj.clone())));
                denom *= xi - xj;
            }
            out = out.add(&inner.mul(&basis).scale(&denom.recip()));
        }
        out
    }
    rec(nodes, degs, &mut Vec::new(), 0, nvars, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    #[test]
    fn parse_and_show_roundtrip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(show_rat(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn cubic_integral_matches_antiderivative() {
        // f(x) = (4-x)^3 on [0,4] integrates to 64
        let f = Poly::affine(ratio(4), ratio(-1)).pow(3);
        assert_eq!(f.integrate(&ratio(0), &ratio(4)), ratio(64));
    }

    #[test]
    fn quadric_profile_integral() {
        // (3-x)^3 * 2 over [0,3] = 81/2, the a=b=0 value of (3-a-b)^4/2
        let f = Poly::affine(ratio(3), ratio(-1)).pow(3).scale(&ratio(2));
        assert_eq!(f.integrate(&ratio(0), &ratio(3)), rat(81, 2));
    }

    #[test]
    fn piecewise_tent_integrates_to_one() {
        let tent = PiecewisePoly::new(
            vec![ratio(0), ratio(1), ratio(2)],
            vec![Poly::x(), Poly::affine(ratio(2), ratio(-1))],
        )
        .unwrap();
        assert!(tent.is_continuous());
        assert_eq!(tent.integrate(&ratio(0), &ratio(2)).unwrap(), ratio(1));
        assert!(tent.integrate(&ratio(-1), &ratio(1)).is_err());
    }

    #[test]
    fn zero_length_intervals_collapse() {
        let f = PiecewisePoly::new(
            vec![ratio(0), ratio(1), ratio(1), ratio(2)],
            vec![Poly::x(), Poly::constant(ratio(99)), Poly::affine(ratio(2), ratio(-1))],
        )
        .unwrap();
        assert_eq!(f.pieces().len(), 2);
        assert_eq!(f.integrate(&ratio(0), &ratio(2)).unwrap(), ratio(1));
    }

    #[test]
    fn identity_check_distinguishes() {
        let p = Poly::affine(ratio(4), ratio(-2)).pow(3);
        assert!(poly_identity_check(&p, &p.clone(), 5));
        let q = Poly::x().pow(3);
        let r = Poly::x().pow(2);
        assert!(!poly_identity_check(&q, &r, 4));
    }

    #[test]
    fn lagrange_recovers_cubic() {
        let p = Poly::new(vec![rat(1, 3), ratio(-2), ratio(0), rat(5, 7)]);
        let pts: Vec<_> = (0..4).map(|k| (ratio(k), p.eval(&ratio(k)))).collect();
        assert_eq!(lagrange(&pts), p);
    }

    #[test]
    fn multipoly_interpolation_roundtrip() {
        // f(a,b) = (4-2a-b)^3 * (a/2 - 3b/4)
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(2, 1);
        let four = MultiPoly::constant(2, ratio(4));
        let f = four
            .sub(&a.scale(&ratio(2)))
            .sub(&b)
            .pow(3)
            .mul(&a.scale(&rat(1, 2)).sub(&b.scale(&rat(3, 4))));
        let nodes: Vec<Vec<Rat>> = vec![
            (0..5).map(|k| rat(k, 7)).collect(),
            (0..5).map(|k| rat(k, 11)).collect(),
        ];
        let g = interpolate_multi(&nodes, &[4, 4], &mut |xs| f.eval(xs));
        assert_eq!(f, g);
    }

    proptest! {
        #[test]
        fn rational_ops_are_exact(r in small_rat(), s in small_rat()) {
            prop_assert_eq!((r.clone() + s.clone()) - s.clone(), r.clone());
            if !s.is_zero() {
                prop_assert_eq!((r.clone() * s.clone()) / s.clone(), r);
            }
        }

        #[test]
        fn integrate_is_additive_and_linear(
            c in prop::collection::vec(small_rat(), 1..5),
            d in prop::collection::vec(small_rat(), 1..5),
            mid in 0i64..8,
        ) {
            let p = Poly::new(c);
            let q = Poly::new(d);
            let (lo, m, hi) = (ratio(0), rat(mid, 4), ratio(2));
            if m > lo && m < hi {
                prop_assert_eq!(
                    p.integrate(&lo, &m) + p.integrate(&m, &hi),
                    p.integrate(&lo, &hi)
                );
            }
            prop_assert_eq!(
                p.add(&q).integrate(&lo, &hi),
                p.integrate(&lo, &hi) + q.integrate(&lo, &hi)
            );
        }

        #[test]
        fn monomial_integrals(k in 0u32..5) {
            let p = Poly::x().pow(k);
            prop_assert_eq!(p.integrate(&ratio(0), &ratio(1)), rat(1, k as i64 + 1));
        }
    }
}
