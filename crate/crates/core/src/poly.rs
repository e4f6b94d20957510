//! Dense univariate polynomials over the integers with arbitrary-precision
//! coefficients.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficient `i` of `coeffs` multiplies `x^i`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplication by `x`.
    pub fn shift_x(&self) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `k`-th formal derivative.
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Decimal coefficient strings from degree 0 upward.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Exact byte encoding used as a grouping key: each coefficient as a
    /// length-prefixed little-endian two's complement string.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for c in &self.coeffs {
            let bytes = c.to_signed_bytes_le();
            out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

/// Schoolbook convolution: `O(d1 * d2)` coefficient products.
impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |a, b| &a + &b)
    }
}

impl<'a> Sum<&'a IntPolynomial> for IntPolynomial {
    fn sum<I: Iterator<Item = &'a IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |a, b| &a + b)
    }
}

impl Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |a, b| &a * &b)
    }
}

impl<'a> Product<&'a IntPolynomial> for IntPolynomial {
    fn product<I: Iterator<Item = &'a IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |a, b| &a * b)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn addition() {
        assert_eq!(&p(&[0, 1]) + &p(&[0, 2, 1]), p(&[0, 3, 1]));
        let q = p(&[4, 0, -2]);
        assert_eq!(&q + &IntPolynomial::zero(), q);
        let base = [p(&[0, 3, 3, 1]), p(&[0, 2, 1]), p(&[0, 1])];
        assert_eq!(base.iter().sum::<IntPolynomial>(), p(&[0, 6, 4, 1]));
        // cancellation trims
        assert_eq!(&p(&[1, 2, 3]) + &p(&[0, 0, -3]), p(&[1, 2]));
        assert!((&q + &p(&[-4, 0, 2])).is_zero());
    }

    #[test]
    fn multiplication() {
        let c3 = p(&[0, 3, 3, 1]);
        assert_eq!(&c3 * &c3, p(&[0, 0, 9, 18, 15, 6, 1]));
        assert_eq!(&c3 * &IntPolynomial::one(), c3);
        assert_eq!(&IntPolynomial::x() * &p(&[0, 2, 1]), p(&[0, 0, 2, 1]));
        assert!((&c3 * &IntPolynomial::zero()).is_zero());
    }

    #[test]
    fn shift() {
        assert_eq!(p(&[0, 6, 4, 1]).shift_x(), p(&[0, 0, 6, 4, 1]));
        assert!(IntPolynomial::zero().shift_x().is_zero());
        assert_eq!(IntPolynomial::one().shift_x(), IntPolynomial::x());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[0, 2, 1]).eval_i64(-1), BigInt::from(-1));
        assert_eq!(p(&[0, 0, 6, 4, 1]).eval_i64(-1), BigInt::from(3));
        assert_eq!(IntPolynomial::x().eval_i64(-3), BigInt::from(-3));
        assert_eq!(IntPolynomial::zero().eval_i64(7), BigInt::zero());
    }

    #[test]
    fn derivatives() {
        let c4 = p(&[0, 0, 6, 4, 1]);
        let d = c4.derivative();
        assert_eq!(d, p(&[0, 12, 12, 4]));
        assert_eq!(d.eval_i64(-1), BigInt::from(-4));
        assert!(p(&[5]).derivative().is_zero());
        let c6 = p(&[0, 0, 3, 14, 15, 6, 1]);
        assert_eq!(c6.nth_derivative(2).eval_i64(-1), BigInt::from(12));
    }

    #[test]
    fn degrees_and_display() {
        let q = p(&[0, 0, 3, 14, 15, 6, 1]);
        assert_eq!(q.degree(), Some(6));
        assert_eq!(q.lowest_degree(), Some(2));
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(q.to_string(), "x^6 + 6x^5 + 15x^4 + 14x^3 + 3x^2");
        assert_eq!(p(&[-1, 0, -2]).to_string(), "-2x^2 - 1");
        assert_eq!(IntPolynomial::one().to_string(), "1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn serde_as_decimal_strings() {
        let q = p(&[0, 0, 3, 14, 15, 6, 1]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"["0","0","3","14","15","6","1"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        let big: IntPolynomial = serde_json::from_str(r#"["123456789012345678901234567890","0"]"#).unwrap();
        assert_eq!(big.coeffs().len(), 1);
    }

    #[test]
    fn canonical_keys_distinguish() {
        assert_ne!(p(&[0, 1]).canonical_key(), p(&[1]).canonical_key());
        assert_ne!(p(&[256]).canonical_key(), p(&[0, 1]).canonical_key());
        assert_eq!(p(&[1, 2, 0]).canonical_key(), p(&[1, 2]).canonical_key());
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-50i64..50, 0..8).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    fn is_canonical(q: &IntPolynomial) -> bool {
        q.coeffs().last().map_or(true, |c| !c.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), t in prop::sample::select(vec![-3i64, -1, 0, 1, 2])) {
            prop_assert_eq!((&a * &b).eval_i64(t), a.eval_i64(t) * b.eval_i64(t));
            prop_assert_eq!((&a + &b).eval_i64(t), a.eval_i64(t) + b.eval_i64(t));
        }

        #[test]
        fn leibniz_rule(a in small_poly(), b in small_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn results_stay_canonical(a in small_poly(), b in small_poly()) {
            for q in [&a + &b, &a * &b, a.derivative(), a.shift_x()] {
                prop_assert!(is_canonical(&q));
            }
        }
    }
}
