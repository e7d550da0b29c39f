//! Sparse polynomials in ℤ[q, z, X, Y].
//!
//! Terms are keyed by the exponent vector `(eq, ez, eX, eY)`; the key order
//! (array lex order) is the monomial order used everywhere for normal forms
//! and printing. Coefficients are arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, Zero};

/// The four ground variables, in exponent-vector order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q,
    Z,
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        VAR_NAMES[self as usize]
    }
}

const VAR_NAMES: [&str; 4] = ["q", "z", "X", "Y"];

/// Exponent vector `(eq, ez, eX, eY)`. Arrays compare lexicographically,
/// which is exactly the monomial order we want.
pub type Mono = [u32; 4];

/// A rational evaluation point for the ground variables plus the extension
/// generator `B`. Constructed through [`EvalPoint::new`], which enforces the
/// consistency equation `B² · qz = z + 1 − q`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    pub q: BigRational,
    pub z: BigRational,
    pub x: BigRational,
    pub y: BigRational,
    pub b: BigRational,
}

impl EvalPoint {
    /// Checks `b²·qz = z + 1 − q`; any rational tuple satisfying it is a
    /// valid specialization of the coefficient ring.
    pub fn new(
        q: BigRational,
        z: BigRational,
        x: BigRational,
        y: BigRational,
        b: BigRational,
    ) -> Result<Self, super::CoeffError> {
        let lhs = &b * &b * &q * &z;
        let rhs = &z + BigRational::one() - &q;
        if lhs != rhs {
            return Err(super::CoeffError::InvalidPoint(
                "point violates B^2*q*z = z + 1 - q".into(),
            ));
        }
        Ok(EvalPoint { q, z, x, y, b })
    }

    fn coord(&self, v: usize) -> &BigRational {
        match v {
            0 => &self.q,
            1 => &self.z,
            2 => &self.x,
            _ => &self.y,
        }
    }
}

/// Sparse integer polynomial in q, z, X, Y.
///
/// Invariants: no stored coefficient is zero; the zero polynomial is the
/// empty map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        MultiPoly::monomial([0; 4], BigInt::from(c))
    }

    pub fn variable(v: Var) -> Self {
        let mut mono = [0u32; 4];
        mono[v as usize] = 1;
        MultiPoly::monomial(mono, BigInt::one())
    }

    pub fn monomial(mono: Mono, coeff: BigInt) -> Self {
        let mut p = MultiPoly::zero();
        p.accumulate(mono, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0, 0, 0, 0])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    /// Leading term under the lex order (largest exponent vector).
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.last_key_value()
    }

    fn accumulate(&mut self, mono: Mono, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// GCD of the absolute values of all coefficients (zero for the zero
    /// polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub(crate) fn divide_scalar(&self, s: &BigInt) -> MultiPoly {
        debug_assert!(!s.is_zero());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c / s))
            .collect();
        MultiPoly { terms }
    }

    /// Componentwise minimum of all exponent vectors; `None` for zero.
    pub(crate) fn min_exponents(&self) -> Option<Mono> {
        let mut it = self.terms.keys();
        let mut min = *it.next()?;
        for m in it {
            for k in 0..4 {
                min[k] = min[k].min(m[k]);
            }
        }
        Some(min)
    }

    /// Divide by the monomial `mono`; all exponents must stay nonnegative.
    pub(crate) fn shift_down(&self, mono: Mono) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut shifted = [0u32; 4];
                for k in 0..4 {
                    debug_assert!(m[k] >= mono[k]);
                    shifted[k] = m[k] - mono[k];
                }
                (shifted, c.clone())
            })
            .collect();
        MultiPoly { terms }
    }

    /// Exact division: `Some(p)` with `p * divisor == self`, or `None` when
    /// `self` is not a multiple of `divisor` over ℤ.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let mut qm = [0u32; 4];
            for k in 0..4 {
                qm[k] = rm[k].checked_sub(dm[k])?;
            }
            if !(rc % &dc).is_zero() {
                return None;
            }
            let qc = rc / &dc;
            let term = MultiPoly::monomial(qm, qc);
            rem = &rem - &(&term * divisor);
            quot.accumulate(qm, term.terms.into_values().next().unwrap());
        }
        Some(quot)
    }

    /// Exact rational value at a point (ignores the B coordinate).
    pub fn eval(&self, pt: &EvalPoint) -> BigRational {
        let mut total = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = BigRational::from(coeff.clone());
            for (v, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    term *= pt.coord(v);
                }
            }
            total += term;
        }
        total
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mono = [
                    ma[0] + mb[0],
                    ma[1] + mb[1],
                    ma[2] + mb[2],
                    ma[3] + mb[3],
                ];
                out.accumulate(mono, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        MultiPoly { terms }
    }
}

fn fmt_mono(mono: &Mono, coeff: &BigInt, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let abs = coeff.abs();
    let is_const = mono.iter().all(|&e| e == 0);
    if !abs.is_one() || is_const {
        parts.push(abs.to_string());
    }
    for (v, &e) in mono.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(VAR_NAMES[v].to_string()),
            _ => parts.push(format!("{}^{}", VAR_NAMES[v], e)),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for MultiPoly {
    /// Terms are printed from the leading monomial down, in lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_mono(mono, coeff, f)?;
        }
        Ok(())
    }
}

impl serde::Serialize for MultiPoly {
    /// `[[coeff, [eq, ez, eX, eY]], ...]` in ascending lex order. Coefficients
    /// are decimal strings so that values beyond the f64/i64 range stay exact.
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (mono, coeff) in &self.terms {
            seq.serialize_element(&(coeff.to_string(), mono))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw: Vec<(String, Mono)> = Vec::deserialize(de)?;
        let mut poly = MultiPoly::zero();
        for (coeff, mono) in raw {
            let c: BigInt = coeff
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient `{coeff}`")))?;
            poly = &poly + &MultiPoly::monomial(mono, c);
        }
        Ok(poly)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn q() -> MultiPoly {
        MultiPoly::variable(Var::Q)
    }
    fn z() -> MultiPoly {
        MultiPoly::variable(Var::Z)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&q() + &MultiPoly::one()) * &(&q() - &MultiPoly::one());
        let rhs = &q().pow(2) - &MultiPoly::one();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let p = &(&q() * &z()) - &MultiPoly::constant(3);
        assert_eq!(&p + &MultiPoly::zero(), p);
    }

    #[test]
    fn distributes_over_scaling() {
        // q*(z - 1) = qz - q
        let lhs = &q() * &(&z() - &MultiPoly::one());
        let rhs = &(&q() * &z()) - &q();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn exact_division_round_trip() {
        let f = &(&z() + &MultiPoly::one()) - &q(); // z + 1 - q
        let g = &(&q() * &z()) + &MultiPoly::constant(2);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        // q does not divide z + 1 - q
        assert_eq!(f.div_exact(&q()), None);
    }

    #[test]
    fn display_uses_lex_order() {
        // 3*q^2*z*X + ...
        let p = &MultiPoly::monomial([2, 1, 1, 0], BigInt::from(3)) - &z();
        assert_eq!(p.to_string(), "3*q^2*z*X - z");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((&MultiPoly::zero() - &q()).to_string(), "-q");
    }

    #[test]
    fn eval_respects_arithmetic() {
        let pt = EvalPoint::new(
            BigRational::one(),
            BigRational::from(BigInt::from(7)),
            BigRational::from(BigInt::from(2)),
            BigRational::from(BigInt::from(3)),
            BigRational::one(),
        )
        .unwrap();
        let p = &(&q() * &z()) + &MultiPoly::constant(5);
        assert_eq!(p.eval(&pt), BigRational::from(BigInt::from(12)));
    }

    #[test]
    fn inconsistent_point_rejected() {
        let two = BigRational::from(BigInt::from(2));
        let err = EvalPoint::new(two.clone(), two.clone(), two.clone(), two.clone(), two);
        assert!(err.is_err());
    }

    proptest::proptest! {
        #[test]
        fn ring_axioms(
            p in arb_poly(),
            r in arb_poly(),
            s in arb_poly(),
        ) {
            let lhs = &(&p + &r) * &s;
            let rhs = &(&p * &s) + &(&r * &s);
            proptest::prop_assert_eq!(lhs, rhs);
            let lhs = &(&p * &r) * &s;
            let rhs = &p * &(&r * &s);
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn json_round_trip_with_huge_coefficients() {
        let huge: BigInt = "1000000000000000000000000000001".parse().unwrap();
        let p = &MultiPoly::monomial([2, 1, 0, 3], huge) - &(&q() * &z());
        let json = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<MultiPoly>("[[\"seven\", [0,0,0,0]]]").is_err());
    }

    pub(crate) fn arb_poly() -> impl proptest::strategy::Strategy<Value = MultiPoly> {
        use proptest::prelude::*;
        prop::collection::vec(
            ((0u32..3, 0u32..3, 0u32..2, 0u32..2), -9i64..=9),
            0..6,
        )
        .prop_map(|terms| {
            let mut p = MultiPoly::zero();
            for ((eq, ez, ex, ey), c) in terms {
                p.accumulate([eq, ez, ex, ey], BigInt::from(c));
            }
            p
        })
    }
}
