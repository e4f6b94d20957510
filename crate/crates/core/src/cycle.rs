//! Domination polynomials of cycles and the integer sequences read off them.
//!
//! With `D_n = D(C_n, x)`:
//!
//! * `D_n = x (D_{n-1} + D_{n-2} + D_{n-3})` for `n >= 4`;
//! * `alpha_n = D_n(-1)`, `beta_n = D_n'(-1)`, `theta_n = D_n''(-1)`;
//! * `a_n = D_n(-3) = (-1)^n 3^ceil(n/3) b_n`.
//!
//! The alpha, beta and theta sequences exist twice, as memoized recurrences
//! and as closed forms, so each can be checked against the other. `b_n` comes
//! from its own three-branch recurrence; factoring `a_n` is kept as the check.

use std::sync::{Mutex, MutexGuard, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::IntPolynomial;
use crate::valuation::ord_p;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle order must be at least 1")]
    ZeroOrder,
    #[error("3^{power} does not divide a_{n}; the sequence tables are inconsistent")]
    Inconsistent { n: u64, power: u64 },
}

pub fn ceil_div3(n: u64) -> u64 {
    n.div_ceil(3)
}

#[derive(Default)]
struct Tables {
    // index 0 unused in every table
    polys: Vec<IntPolynomial>,
    alpha: Vec<BigInt>,
    beta: Vec<BigInt>,
    theta: Vec<BigInt>,
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

fn base_polynomial(n: usize) -> IntPolynomial {
    match n {
        1 => IntPolynomial::from_i64s(&[0, 1]),
        2 => IntPolynomial::from_i64s(&[0, 2, 1]),
        3 => IntPolynomial::from_i64s(&[0, 3, 3, 1]),
        _ => unreachable!(),
    }
}

/// Sum of the three previous entries of `seq` ending at index `n - 1`.
fn tail3(seq: &[BigInt], n: usize) -> BigInt {
    &seq[n - 1] + &seq[n - 2] + &seq[n - 3]
}

impl Tables {
    fn polys_to(&mut self, n: usize) {
        if self.polys.is_empty() {
            self.polys.push(IntPolynomial::zero());
        }
        while self.polys.len() <= n {
            let k = self.polys.len();
            let next = if k <= 3 {
                base_polynomial(k)
            } else {
                let s: IntPolynomial = self.polys[k - 3..k].iter().sum();
                s.shift_x()
            };
            self.polys.push(next);
        }
    }

    fn alpha_to(&mut self, n: usize) {
        if self.alpha.is_empty() {
            self.polys_to(3);
            self.alpha.push(BigInt::zero());
            for k in 1..=3 {
                let v = self.polys[k].eval_i64(-1);
                self.alpha.push(v);
            }
        }
        while self.alpha.len() <= n {
            let k = self.alpha.len();
            let v = -tail3(&self.alpha, k);
            self.alpha.push(v);
        }
    }

    fn beta_to(&mut self, n: usize) {
        self.alpha_to(n);
        if self.beta.is_empty() {
            self.beta.push(BigInt::zero());
            for k in 1..=3 {
                let v = self.polys[k].derivative().eval_i64(-1);
                self.beta.push(v);
            }
        }
        while self.beta.len() <= n {
            let k = self.beta.len();
            let v = -(&self.alpha[k] + tail3(&self.beta, k));
            self.beta.push(v);
        }
    }

    fn theta_to(&mut self, n: usize) {
        self.beta_to(n);
        if self.theta.is_empty() {
            self.theta.push(BigInt::zero());
            for k in 1..=3 {
                let v = self.polys[k].nth_derivative(2).eval_i64(-1);
                self.theta.push(v);
            }
        }
        while self.theta.len() <= n {
            let k = self.theta.len();
            let two = BigInt::from(2);
            let v = -(&two * &self.alpha[k]) - &two * &self.beta[k] - tail3(&self.theta, k);
            self.theta.push(v);
        }
    }

    fn a_to(&mut self, n: usize) {
        if self.a.is_empty() {
            self.a.extend([0, -3, 3, -9].map(BigInt::from));
        }
        while self.a.len() <= n {
            let k = self.a.len();
            let v = BigInt::from(-3) * tail3(&self.a, k);
            self.a.push(v);
        }
    }

    fn b_to(&mut self, n: usize) {
        if self.b.is_empty() {
            self.b.extend([0, 1, 1, 3].map(BigInt::from));
        }
        while self.b.len() <= n {
            let k = self.b.len();
            let (b1, b2, b3) = (&self.b[k - 1], &self.b[k - 2], &self.b[k - 3]);
            let three = BigInt::from(3);
            let v = match k % 3 {
                0 => &three * b1 - &three * b2 + b3,
                1 => b1 - b2 + b3,
                _ => &three * b1 - b2 + b3,
            };
            self.b.push(v);
        }
    }
}

/// Memoized cycle sequences. Tables only grow; every accessor returns an
/// owned value.
#[derive(Default)]
pub struct CycleSequences {
    tables: Mutex<Tables>,
}

impl CycleSequences {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by the free functions of this module.
    pub fn shared() -> &'static CycleSequences {
        static SHARED: OnceLock<CycleSequences> = OnceLock::new();
        SHARED.get_or_init(CycleSequences::new)
    }

    fn lock(&self) -> MutexGuard<'_, Tables> {
        self.tables.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn polynomial(&self, n: u64) -> Result<IntPolynomial, CycleError> {
        let n = index(n)?;
        let mut t = self.lock();
        t.polys_to(n);
        Ok(t.polys[n].clone())
    }

    pub fn alpha(&self, n: u64) -> BigInt {
        let n = index(n).expect("alpha is defined for n >= 1");
        let mut t = self.lock();
        t.alpha_to(n);
        t.alpha[n].clone()
    }

    pub fn beta(&self, n: u64) -> BigInt {
        let n = index(n).expect("beta is defined for n >= 1");
        let mut t = self.lock();
        t.beta_to(n);
        t.beta[n].clone()
    }

    pub fn theta(&self, n: u64) -> BigInt {
        let n = index(n).expect("theta is defined for n >= 1");
        let mut t = self.lock();
        t.theta_to(n);
        t.theta[n].clone()
    }

    pub fn a(&self, n: u64) -> BigInt {
        let n = index(n).expect("a_n is defined for n >= 1");
        let mut t = self.lock();
        t.a_to(n);
        t.a[n].clone()
    }

    pub fn b(&self, n: u64) -> BigInt {
        let n = index(n).expect("b_n is defined for n >= 1");
        let mut t = self.lock();
        t.b_to(n);
        t.b[n].clone()
    }
}

fn index(n: u64) -> Result<usize, CycleError> {
    if n == 0 {
        return Err(CycleError::ZeroOrder);
    }
    Ok(usize::try_from(n).expect("cycle order fits in usize"))
}

/// `D(C_n, x)` from the three-term recurrence.
pub fn cycle_polynomial(n: u64) -> Result<IntPolynomial, CycleError> {
    CycleSequences::shared().polynomial(n)
}

/// `D(C_n, -1)`: 3 when `4 | n`, otherwise -1.
pub fn alpha(n: u64) -> BigInt {
    assert!(n >= 1, "alpha is defined for n >= 1");
    if n % 4 == 0 {
        BigInt::from(3)
    } else {
        BigInt::from(-1)
    }
}

/// `D'(C_n, -1)`: `-n`, `n`, or `0` according to `n mod 4`.
pub fn beta(n: u64) -> BigInt {
    assert!(n >= 1, "beta is defined for n >= 1");
    let m = BigInt::from(n);
    match n % 4 {
        0 => -m,
        1 => m,
        _ => BigInt::zero(),
    }
}

/// `D''(C_n, -1)`.
pub fn theta(n: u64) -> BigInt {
    assert!(n >= 1, "theta is defined for n >= 1");
    let m = BigInt::from(n);
    match n % 4 {
        0 => &m * (&m - 4u32) / 4u32,
        1 => -(&m * (&m - 1u32) / 2u32),
        2 => &m * (&m + 2u32) / 4u32,
        _ => BigInt::zero(),
    }
}

/// Recurrence form of [`alpha`].
pub fn alpha_recurrence(n: u64) -> BigInt {
    CycleSequences::shared().alpha(n)
}

/// Recurrence form of [`beta`].
pub fn beta_recurrence(n: u64) -> BigInt {
    CycleSequences::shared().beta(n)
}

/// Recurrence form of [`theta`].
pub fn theta_recurrence(n: u64) -> BigInt {
    CycleSequences::shared().theta(n)
}

/// `a_n = D(C_n, -3)` from `a_n = -3 (a_{n-1} + a_{n-2} + a_{n-3})`.
pub fn a_seq(n: u64) -> BigInt {
    CycleSequences::shared().a(n)
}

/// `b_n` from its residue-dependent three-term recurrence.
pub fn b_seq(n: u64) -> BigInt {
    CycleSequences::shared().b(n)
}

/// `b_n` recovered by dividing `a_n` by `(-1)^n 3^ceil(n/3)`.
pub fn b_by_factoring(n: u64) -> Result<BigInt, CycleError> {
    let power = ceil_div3(n);
    let divisor = BigInt::from(3).pow(power as u32);
    let (q, r) = a_seq(n).div_rem(&divisor);
    if !r.is_zero() {
        return Err(CycleError::Inconsistent { n, power });
    }
    Ok(if n % 2 == 1 { -q } else { q })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ord3Class {
    pub n: u64,
    pub predicted_ord: u64,
    pub residue_class: u64,
    pub remark_exceptional: bool,
}

/// Predicted `ord_3 D(C_n, -3)`: `ceil(n/3) + 1` for `n ≡ 0 (mod 3)`,
/// `ceil(n/3)` for `n ≡ 2`, and for `n ≡ 1` the larger value exactly when
/// `n mod 27` is 4, 13 or 22.
pub fn ord3_classification(n: u64) -> Ord3Class {
    assert!(n >= 1, "ord3 classification is defined for n >= 1");
    let c = ceil_div3(n);
    let residue_class = n % 3;
    let remark_exceptional = residue_class == 1 && matches!(n % 27, 4 | 13 | 22);
    let predicted_ord = match residue_class {
        0 => c + 1,
        1 if remark_exceptional => c + 1,
        _ => c,
    };
    Ord3Class {
        n,
        predicted_ord,
        residue_class,
        remark_exceptional,
    }
}

/// Observed `ord_3 a_n`.
pub fn ord3_of_a(n: u64) -> u64 {
    u64::from(ord_p(&a_seq(n), 3).expect("a_n is never zero"))
}

/// `true` when `b_n` is positive; used to decide the sign of `a_n`.
pub fn b_is_positive(n: u64) -> bool {
    b_seq(n).is_positive()
}

/// `b_n mod 9` in `0..9`.
pub fn b_mod9(n: u64) -> u8 {
    let r = b_seq(n).mod_floor(&BigInt::from(9));
    u8::try_from(r).expect("residue below 9")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(cycle_polynomial(1).unwrap(), p(&[0, 1]));
        assert_eq!(cycle_polynomial(3).unwrap(), p(&[0, 3, 3, 1]));
        assert_eq!(cycle_polynomial(4).unwrap(), p(&[0, 0, 6, 4, 1]));
        assert_eq!(cycle_polynomial(6).unwrap(), p(&[0, 0, 3, 14, 15, 6, 1]));
        assert_eq!(cycle_polynomial(0), Err(CycleError::ZeroOrder));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(alpha(8), BigInt::from(3));
        assert_eq!(alpha(5), BigInt::from(-1));
        assert_eq!(alpha(4), cycle_polynomial(4).unwrap().eval_i64(-1));
        assert_eq!(beta(4), BigInt::from(-4));
        assert_eq!(beta(5), BigInt::from(5));
        assert_eq!(beta(6), BigInt::zero());
        assert_eq!(theta(8), BigInt::from(8));
        assert_eq!(theta(5), BigInt::from(-10));
        assert_eq!(theta(7), BigInt::zero());
        assert_eq!(theta(6), BigInt::from(12));
    }

    #[test]
    fn a_sequence_start() {
        let a: Vec<BigInt> = (1..=4).map(a_seq).collect();
        assert_eq!(a, [-3, 3, -9, 27].map(BigInt::from));
    }

    #[test]
    fn b_sequence_start() {
        let b: Vec<BigInt> = (1..=14).map(b_seq).collect();
        assert_eq!(
            b,
            [1, 1, 3, 3, 7, 15, 11, 25, 57, 43, 97, 219, 165, 373].map(BigInt::from)
        );
        let r: Vec<u8> = (1..=6).map(b_mod9).collect();
        assert_eq!(r, [1, 1, 3, 3, 7, 6]);
        let r: Vec<u8> = (25..=30).map(b_mod9).collect();
        assert_eq!(r, [8, 1, 3, 1, 1, 3]);
    }

    #[test]
    fn b_routes_agree() {
        for n in 1..=300 {
            assert_eq!(b_by_factoring(n).unwrap(), b_seq(n), "n = {n}");
        }
    }

    #[test]
    fn b_is_positive_over_range() {
        assert!((1..=1000).all(b_is_positive));
        for n in 1..=100u64 {
            let sign_ok = if n % 2 == 0 { a_seq(n).is_positive() } else { a_seq(n).is_negative() };
            assert!(sign_ok, "sign of a_{n}");
        }
    }

    #[test]
    fn ord3_examples() {
        assert_eq!(ord3_classification(6).predicted_ord, 3);
        assert_eq!(ord3_classification(5).predicted_ord, 2);
        let c4 = ord3_classification(4);
        assert_eq!(c4.predicted_ord, 3);
        assert!(c4.remark_exceptional);
        assert_eq!(ord3_of_a(4), 3);
        assert!(!ord3_classification(7).remark_exceptional);
        assert!(ord3_classification(31).remark_exceptional);
    }

    #[test]
    fn recurrences_match_closed_forms_small() {
        for n in 1..=40 {
            assert_eq!(alpha_recurrence(n), alpha(n), "alpha {n}");
            assert_eq!(beta_recurrence(n), beta(n), "beta {n}");
            assert_eq!(theta_recurrence(n), theta(n), "theta {n}");
        }
    }

    #[test]
    fn coefficient_sanity() {
        for n in 4..=60u64 {
            let d = cycle_polynomial(n).unwrap();
            assert_eq!(d.degree(), Some(n as usize));
            assert!(d.leading_coeff().unwrap().is_one());
            assert!(d.coeff(0).is_zero());
            assert!(d.coeff(1).is_zero());
            assert_eq!(d.lowest_degree(), Some(ceil_div3(n) as usize));
        }
    }

    #[test]
    fn private_cache_is_independent() {
        let cache = CycleSequences::new();
        assert_eq!(cache.polynomial(6).unwrap(), cycle_polynomial(6).unwrap());
        assert_eq!(cache.b(30), b_seq(30));
    }
}
