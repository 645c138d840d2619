//! Exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, i| acc * q(i))
}

/// `p/q` with the denominator always written.
pub fn fmt_q(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_q(s: &str) -> Option<Q> {
    s.trim().parse::<Q>().ok()
}

pub fn sign_q(s: i64) -> Q {
    if s % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}
