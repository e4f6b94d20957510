//! p-adic valuation of integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("the valuation of zero is undefined")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn is_small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Largest `a` with `p^a | n`. Primality of `p` is checked for `p <= 100`;
/// larger moduli are the caller's responsibility.
pub fn ord_p(n: &BigInt, p: u64) -> Result<u32, ValuationError> {
    if p < 2 || (p <= 100 && !is_small_prime(p)) {
        return Err(ValuationError::NotPrime(p));
    }
    if n.is_zero() {
        return Err(ValuationError::Zero);
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut a = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(a);
        }
        m = q;
        a += 1;
    }
}
