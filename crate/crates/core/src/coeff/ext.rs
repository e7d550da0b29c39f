//! The quadratic extension ℚ(q, z, X, Y)[B] with B² = z₋/z = (z+1−q)/(qz).
//!
//! Every scalar the invariant pipeline touches lives here. Values are pairs
//! `part0 + part1·B`; the defining relation is rewritten eagerly on each
//! multiplication, so the B-degree never exceeds one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num::BigRational;

use super::poly::{EvalPoint, MultiPoly, Var};
use super::ratfn::RationalFn;
use super::CoeffError;

/// An element `part0 + part1·B` of the extended coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtScalar {
    part0: RationalFn,
    part1: RationalFn,
}

/// `B² = (z + 1 − q)/(qz)`.
fn b_squared() -> &'static RationalFn {
    static THETA: OnceLock<RationalFn> = OnceLock::new();
    THETA.get_or_init(|| {
        let q = MultiPoly::variable(Var::Q);
        let z = MultiPoly::variable(Var::Z);
        RationalFn::new(&(&z + &MultiPoly::one()) - &q, &q * &z)
    })
}

impl ExtScalar {
    pub fn new(part0: RationalFn, part1: RationalFn) -> Self {
        ExtScalar { part0, part1 }
    }

    pub fn zero() -> Self {
        ExtScalar::new(RationalFn::zero(), RationalFn::zero())
    }

    pub fn one() -> Self {
        ExtScalar::from_ratfn(RationalFn::one())
    }

    /// The formal generator `B` itself.
    pub fn b() -> Self {
        ExtScalar::new(RationalFn::zero(), RationalFn::one())
    }

    pub fn from_ratfn(part0: RationalFn) -> Self {
        ExtScalar::new(part0, RationalFn::zero())
    }

    pub fn from_int(c: i64) -> Self {
        ExtScalar::from_ratfn(RationalFn::from_int(c))
    }

    pub fn variable(v: Var) -> Self {
        ExtScalar::from_ratfn(RationalFn::variable(v))
    }

    pub fn part0(&self) -> &RationalFn {
        &self.part0
    }

    pub fn part1(&self) -> &RationalFn {
        &self.part1
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.part0.is_one() && self.part1.is_zero()
    }

    /// Norm `a² − b²·(z+1−q)/(qz)`; zero exactly when the element is zero,
    /// since B² is not a square in the base field.
    fn norm(&self) -> RationalFn {
        let a2 = &self.part0 * &self.part0;
        let b2 = &(&self.part1 * &self.part1) * b_squared();
        &a2 - &b2
    }

    /// `(a + bB)⁻¹ = (a − bB)/(a² − b²·B²)`.
    pub fn inverse(&self) -> Result<ExtScalar, CoeffError> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(CoeffError::NotInvertible);
        }
        Ok(ExtScalar::new(
            self.part0.checked_div(&norm)?,
            (-&self.part1).checked_div(&norm)?,
        ))
    }

    pub fn checked_div(&self, rhs: &ExtScalar) -> Result<ExtScalar, CoeffError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn powi(&self, exp: i64) -> Result<ExtScalar, CoeffError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = ExtScalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact rational value at a consistent point. Fails when a stored
    /// denominator vanishes there.
    pub fn eval(&self, pt: &EvalPoint) -> Result<BigRational, CoeffError> {
        Ok(self.part0.eval(pt)? + self.part1.eval(pt)? * &pt.b)
    }
}

impl Add for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        ExtScalar::new(&self.part0 + &rhs.part0, &self.part1 + &rhs.part1)
    }
}

impl Sub for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: &ExtScalar) -> ExtScalar {
        ExtScalar::new(&self.part0 - &rhs.part0, &self.part1 - &rhs.part1)
    }
}

impl Mul for &ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: &ExtScalar) -> ExtScalar {
        // (a + bB)(c + dB) = (ac + bd·B²) + (ad + bc)·B
        let ac = &self.part0 * &rhs.part0;
        let bd = &self.part1 * &rhs.part1;
        let ad = &self.part0 * &rhs.part1;
        let bc = &self.part1 * &rhs.part0;
        ExtScalar::new(&ac + &(&bd * b_squared()), &ad + &bc)
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar::new(-&self.part0, -&self.part1)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.part0.is_zero(), self.part1.is_zero()) {
            (true, true) => write!(f, "0"),
            (_, true) => write!(f, "{}", self.part0),
            (true, false) => write!(f, "({})*B", self.part1),
            (false, false) => write!(f, "{} + ({})*B", self.part0, self.part1),
        }
    }
}

impl serde::Serialize for ExtScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("ExtScalar", 2)?;
        st.serialize_field("part0", &self.part0)?;
        st.serialize_field("part1", &self.part1)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for ExtScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            part0: RationalFn,
            part1: RationalFn,
        }
        let raw = Raw::deserialize(de)?;
        Ok(ExtScalar::new(raw.part0, raw.part1))
    }
}
