use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(m)` with `q = p^m`, `m >= 1`.
pub fn log_exact(q: &BigInt, p: u64) -> Option<u32> {
    let p = BigInt::from(p);
    if p <= BigInt::one() || q <= &BigInt::one() {
        return None;
    }
    let mut x = q.clone();
    let mut m = 0;
    while x.is_multiple_of(&p) {
        x /= &p;
        m += 1;
    }
    (x.is_one() && m > 0).then_some(m)
}

/// Removes every factor `p` from `x`.
pub fn strip_prime(x: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut x = x.clone();
    if x.is_zero() {
        return x;
    }
    while x.is_multiple_of(&p) {
        x /= &p;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn logs() {
        assert_eq!(log_exact(&BigInt::from(81), 3), Some(4));
        assert_eq!(log_exact(&BigInt::from(12), 3), None);
        assert_eq!(log_exact(&BigInt::from(1), 3), None);
        assert_eq!(strip_prime(&BigInt::from(360), 3), BigInt::from(40));
    }
}
