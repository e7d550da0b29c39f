//! Fractions of integer polynomials, the field ℚ(q, z, X, Y).
//!
//! Equality is decided by cross-multiplication, so the stored normal form
//! does not have to be fully reduced. Normalization removes the joint
//! integer content, cancels common monomials, strips the two multi-term
//! denominator factors the engine actually produces (`z + 1 − q` from the
//! stabilization parameter and `qXz + Yz + Y − qY` from the pseudo
//! normalization), and fixes the sign of the leading denominator
//! coefficient. Full multivariate GCD is deliberately not used.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num::{BigRational, Integer, One, Signed, Zero};

use super::poly::{EvalPoint, MultiPoly, Var};
use super::CoeffError;

/// A quotient `num/den` of polynomials with `den ≠ 0`, kept in sign/content
/// normal form.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

/// Multi-term polynomials that show up in denominators through the trace
/// normalization; cancelling them keeps fraction sizes flat across long
/// chains of additions. Monomial factors are handled separately.
fn reduction_basis() -> &'static [MultiPoly; 2] {
    static BASIS: OnceLock<[MultiPoly; 2]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let q = MultiPoly::variable(Var::Q);
        let z = MultiPoly::variable(Var::Z);
        let x = MultiPoly::variable(Var::X);
        let y = MultiPoly::variable(Var::Y);
        // z + 1 - q  (numerator of z_-, and of B^2)
        let z_plus_one_minus_q = &(&z + &MultiPoly::one()) - &q;
        // q*X*z + Y*z + Y - q*Y  (numerator of X*z + Y*z_-)
        let pseudo_weight = &(&(&(&q * &x) * &z) + &(&y * &z)) + &(&y - &(&q * &y));
        [z_plus_one_minus_q, pseudo_weight]
    })
}

impl RationalFn {
    /// Builds `num/den` in normal form. Panics if `den` is zero; fallible
    /// division goes through [`RationalFn::checked_div`].
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut f = RationalFn { num, den };
        f.reduce();
        f
    }

    pub fn zero() -> Self {
        RationalFn::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        RationalFn::from_poly(MultiPoly::one())
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        RationalFn {
            num,
            den: MultiPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RationalFn::from_poly(MultiPoly::constant(c))
    }

    pub fn variable(v: Var) -> Self {
        RationalFn::from_poly(MultiPoly::variable(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return;
        }
        self.cancel_common_monomial();
        // A multi-term factor cannot divide a single-monomial denominator.
        if self.den.num_terms() > 1 {
            for factor in reduction_basis() {
                loop {
                    let Some(d) = self.den.div_exact(factor) else {
                        break;
                    };
                    let Some(n) = self.num.div_exact(factor) else {
                        break;
                    };
                    self.num = n;
                    self.den = d;
                }
            }
            self.cancel_common_monomial();
        }
        let g = self.num.content().gcd(&self.den.content());
        if !g.is_one() {
            self.num = self.num.divide_scalar(&g);
            self.den = self.den.divide_scalar(&g);
        }
        let (_, lead) = self.den.leading().expect("nonzero denominator");
        if lead.is_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
    }

    fn cancel_common_monomial(&mut self) {
        let (Some(mn), Some(md)) = (self.num.min_exponents(), self.den.min_exponents()) else {
            return;
        };
        let mut common = [0u32; 4];
        let mut any = false;
        for k in 0..4 {
            common[k] = mn[k].min(md[k]);
            any |= common[k] > 0;
        }
        if any {
            self.num = self.num.shift_down(common);
            self.den = self.den.shift_down(common);
        }
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<RationalFn, CoeffError> {
        if rhs.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(RationalFn::new(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn inverse(&self) -> Result<RationalFn, CoeffError> {
        RationalFn::one().checked_div(self)
    }

    pub fn eval(&self, pt: &EvalPoint) -> Result<BigRational, CoeffError> {
        let den = self.den.eval(pt);
        if den.is_zero() {
            return Err(CoeffError::InvalidPoint(
                "denominator vanishes at the point".into(),
            ));
        }
        Ok(self.num.eval(pt) / den)
    }
}

/// Cross-multiplication: `a/b = c/d` iff `a·d = c·b` as polynomials.
impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl serde::Serialize for RationalFn {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("RationalFn", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for RationalFn {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            num: MultiPoly,
            den: MultiPoly,
        }
        let raw = Raw::deserialize(de)?;
        if raw.den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RationalFn::new(raw.num, raw.den))
    }
}

/// `z₋ = q⁻¹z + q⁻¹ − 1 = (z + 1 − q)/q`, as a plain fraction.
pub fn z_minus() -> RationalFn {
    let q = RationalFn::variable(Var::Q);
    let z = RationalFn::variable(Var::Z);
    let q_inv = q.inverse().expect("q is nonzero");
    &(&(&q_inv * &z) + &q_inv) - &RationalFn::one()
}

#[cfg(test)]
mod tests {
    use super::super::poly::tests::arb_poly;
    use super::*;
    use proptest::prelude::*;

    fn q() -> RationalFn {
        RationalFn::variable(Var::Q)
    }
    fn z() -> RationalFn {
        RationalFn::variable(Var::Z)
    }

    #[test]
    fn inverse_pair() {
        let lhs = &q().inverse().unwrap() * &q();
        assert_eq!(lhs, RationalFn::one());
        assert!(lhs.is_one());
    }

    #[test]
    fn self_division() {
        assert_eq!(z().checked_div(&z()).unwrap(), RationalFn::one());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(matches!(
            q().checked_div(&RationalFn::zero()),
            Err(CoeffError::DivisionByZero)
        ));
    }

    #[test]
    fn z_minus_normal_form() {
        // z_- = (z + 1 - q)/q
        let expected = RationalFn::new(
            &(&MultiPoly::variable(Var::Z) + &MultiPoly::one()) - &MultiPoly::variable(Var::Q),
            MultiPoly::variable(Var::Q),
        );
        assert_eq!(z_minus(), expected);
    }

    #[test]
    fn sign_normal_form() {
        // 1/(-q) stores as (-1)/q
        let f = RationalFn::new(MultiPoly::one(), -&MultiPoly::variable(Var::Q));
        assert_eq!(f.to_string(), "(-1)/(q)");
    }

    #[test]
    fn cross_multiplication_equality() {
        // (q^2 - 1)/(q - 1) equals q + 1 without GCD reduction
        let unreduced = RationalFn::new(
            &MultiPoly::variable(Var::Q).pow(2) - &MultiPoly::one(),
            &MultiPoly::variable(Var::Q) - &MultiPoly::one(),
        );
        let reduced = &q() + &RationalFn::one();
        assert_eq!(unreduced, reduced);
    }

    #[test]
    fn denominator_factor_cancellation_keeps_sizes_flat() {
        // repeated addition of terms over powers of (z + 1 - q) must not
        // accumulate denominator degree
        let zp = RationalFn::new(
            MultiPoly::one(),
            &(&MultiPoly::variable(Var::Z) + &MultiPoly::one()) - &MultiPoly::variable(Var::Q),
        );
        let mut total = RationalFn::zero();
        for _ in 0..32 {
            total = &total + &(&zp * &zp);
        }
        assert!(total.den().num_terms() <= 6);
        assert_eq!(
            total,
            &RationalFn::from_int(32) * &(&zp * &zp),
        );
    }

    #[test]
    fn json_round_trip() {
        let f = RationalFn::new(
            &MultiPoly::variable(Var::Z) + &MultiPoly::one(),
            MultiPoly::variable(Var::Q),
        );
        let back: RationalFn = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        // a zero denominator must be rejected, not panic
        assert!(serde_json::from_str::<RationalFn>("{\"num\":[],\"den\":[]}").is_err());
    }

    proptest! {
        #[test]
        fn field_inverse(p in arb_poly(), d in arb_poly()) {
            prop_assume!(!p.is_zero() && !d.is_zero());
            let f = RationalFn::new(p, d);
            let product = &f * &f.inverse().unwrap();
            prop_assert!(product.is_one());
        }

        #[test]
        fn add_mul_distribute(
            (a, b) in (arb_poly(), arb_poly()),
            (c, d) in (arb_poly(), arb_poly()),
            (e, g) in (arb_poly(), arb_poly()),
        ) {
            prop_assume!(!b.is_zero() && !d.is_zero() && !g.is_zero());
            let f1 = RationalFn::new(a, b);
            let f2 = RationalFn::new(c, d);
            let f3 = RationalFn::new(e, g);
            let lhs = &(&f1 + &f2) * &f3;
            let rhs = &(&f1 * &f3) + &(&f2 * &f3);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
