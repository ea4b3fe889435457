//! Exact coefficients: the field `Q(parameters)` of rational functions with
//! rational coefficients, acting as constants under every shift.

mod param;

pub use param::{rational_string, ParamPoly};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A canonical element of `Q(p1, ..., pk)`.
///
/// Plain rationals are kept unboxed. A proper rational function is stored as
/// a coprime numerator/denominator pair whose denominator has leading
/// coefficient one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Function(Box<Fraction>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: ParamPoly,
    den: ParamPoly,
}

impl Fraction {
    pub fn numerator(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ParamPoly {
        &self.den
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn param(index: usize) -> Self {
        FieldElement::Function(Box::new(Fraction {
            num: ParamPoly::param(index),
            den: ParamPoly::one(),
        }))
    }

    /// Build `num / den` in canonical form.
    pub fn from_fraction(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if num.is_constant() && den.is_constant() {
            return Ok(FieldElement::Rational(num.constant_term() / den.constant_term()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g), den.div_exact(&g));
        let lc = den.leading_coefficient().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if num.is_constant() && den.is_constant() {
            return Ok(FieldElement::Rational(num.constant_term()));
        }
        Ok(FieldElement::Function(Box::new(Fraction { num, den })))
    }

    pub fn from_param_poly(p: ParamPoly) -> Self {
        Self::from_fraction(p, ParamPoly::one()).expect("nonzero denominator")
    }

    fn parts(&self) -> (ParamPoly, ParamPoly) {
        match self {
            FieldElement::Rational(r) => (ParamPoly::constant(r.clone()), ParamPoly::one()),
            FieldElement::Function(f) => (f.num.clone(), f.den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Function(_) => None,
        }
    }

    pub fn as_fraction(&self) -> Option<&Fraction> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Function(f) => Some(f),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            FieldElement::Rational(r) => Ok(FieldElement::Rational(r.recip())),
            FieldElement::Function(f) => Self::from_fraction(f.den.clone(), f.num.clone()),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Render with the given parameter names. Non-rational values are
    /// wrapped in parentheses so they can stand as a product factor.
    pub fn fmt_with(&self, params: &[String]) -> String {
        match self {
            FieldElement::Rational(r) => rational_string(r),
            FieldElement::Function(f) => {
                if f.den.is_constant() {
                    format!("({})", f.num.fmt_with(params))
                } else {
                    format!("(({})/({}))", f.num.fmt_with(params), f.den.fmt_with(params))
                }
            }
        }
    }

    /// Whether the printed form is a single signed product, so that it may be
    /// written without parentheses (`-2*H^2`).
    pub(crate) fn single_term(&self) -> Option<(bool, BigRational, Vec<u32>)> {
        match self {
            FieldElement::Rational(r) => Some((r.is_negative(), r.abs(), Vec::new())),
            FieldElement::Function(f) if f.den.is_constant() && f.num.num_terms() == 1 => {
                let (e, c) = f.num.terms().next().expect("one term");
                Some((c.is_negative(), c.abs(), e.to_vec()))
            }
            FieldElement::Function(_) => None,
        }
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for FieldElement {
    fn from(r: BigRational) -> Self {
        FieldElement::Rational(r)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..8).map(|i| format!("p{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            _ => {
                let (an, ad) = self.parts();
                let (bn, bd) = rhs.parts();
                let num = an.mul(&bd).add(&bn.mul(&ad));
                FieldElement::from_fraction(num, ad.mul(&bd)).expect("nonzero denominator")
            }
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return FieldElement::zero();
                }
                let (an, ad) = self.parts();
                let (bn, bd) = rhs.parts();
                FieldElement::from_fraction(an.mul(&bn), ad.mul(&bd)).expect("nonzero denominator")
            }
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Function(f) => FieldElement::Function(Box::new(Fraction {
                num: f.num.neg(),
                den: f.den.clone(),
            })),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h() -> FieldElement {
        FieldElement::param(0)
    }

    #[test]
    fn rational_fast_path() {
        let a = FieldElement::from_ratio(1, 2);
        let b = FieldElement::from_ratio(1, 3);
        assert_eq!(&a + &b, FieldElement::from_ratio(5, 6));
        assert_eq!(&a * &b, FieldElement::from_ratio(1, 6));
        assert!((&a - &a).is_zero());
        assert_eq!(FieldElement::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn functions_collapse_to_rationals() {
        let x = &h() + &FieldElement::one();
        let ratio = x.div(&x).unwrap();
        assert!(ratio.is_one());
        assert!(matches!(&h() - &h(), FieldElement::Rational(_)));
    }

    #[test]
    fn canonical_form() {
        // (2H^2 - 2) / (4H + 4) = (H - 1)/2
        let hp = ParamPoly::param(0);
        let num = hp.mul(&hp).scale(&BigRational::from_integer(2.into())).sub(&ParamPoly::constant(BigRational::from_integer(2.into())));
        let den = hp.scale(&BigRational::from_integer(4.into())).add(&ParamPoly::constant(BigRational::from_integer(4.into())));
        let v = FieldElement::from_fraction(num, den).unwrap();
        let expected = &(&h() - &FieldElement::one()) * &FieldElement::from_ratio(1, 2);
        assert_eq!(v, expected);
        let f = v.as_fraction().unwrap();
        assert!(f.denominator().is_constant());
    }

    #[test]
    fn printing() {
        let names = vec!["H".to_string()];
        let v = &(&h() * &FieldElement::from_int(2)) - &FieldElement::one();
        assert_eq!(v.fmt_with(&names), "(2*H-1)");
        let w = FieldElement::one().div(&h()).unwrap();
        assert_eq!(w.fmt_with(&names), "((1)/(H))");
        assert_eq!(FieldElement::from_ratio(-3, 4).fmt_with(&names), "-3/4");
    }

    fn arb_element() -> impl Strategy<Value = FieldElement> {
        // small polynomials in two parameters over Z, divided by similar ones
        let poly = prop::collection::vec((0u32..3, 0u32..3, -4i64..5), 1..4).prop_map(|ts| {
            ts.into_iter().fold(ParamPoly::zero(), |acc, (a, b, c)| {
                let t = ParamPoly::param(0)
                    .pow(a)
                    .mul(&ParamPoly::param(1).pow(b))
                    .scale(&BigRational::from_integer(c.into()));
                acc.add(&t)
            })
        });
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
            FieldElement::from_fraction(n, d).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn inverse_law(a in arb_element()) {
            prop_assume!(!a.is_zero());
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }

        #[test]
        fn distributive(a in arb_element(), b in arb_element(), c in arb_element()) {
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_idempotent(a in arb_element()) {
            let (n, d) = a.parts();
            prop_assert_eq!(FieldElement::from_fraction(n, d).unwrap(), a);
        }
    }
}
