//! Scalar helpers around `BigRational`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Serializes as `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub type Vector = Vec<Q>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Max-abs norm.
pub fn norm_inf(a: &[Q]) -> Q {
    a.iter()
        .map(|x| x.abs())
        .fold(Q::zero(), |m, x| if x > m { x } else { m })
}

pub fn norm_l1(a: &[Q]) -> Q {
    a.iter().fold(Q::zero(), |m, x| m + x.abs())
}

pub fn vec_from_i64(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

/// If `a = c * b` for some rational `c`, returns `c`.
pub fn proportional(a: &[Q], b: &[Q]) -> Option<Q> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = &a[k] / &b[k];
    if a.iter().zip(b).all(|(x, y)| *x == &c * y) {
        Some(c)
    } else {
        None
    }
}

pub fn fmt_vec(a: &[Q]) -> String {
    let parts: Vec<String> = a.iter().map(fmt_q).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/6"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("4/2").unwrap()), "2");
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("x").is_none());
    }

    #[test]
    fn proportionality() {
        let a = vec_from_i64(&[2, 4]);
        let b = vec_from_i64(&[1, 2]);
        assert_eq!(proportional(&a, &b), Some(q(2)));
        assert_eq!(proportional(&vec_from_i64(&[1, 3]), &b), None);
    }
}
