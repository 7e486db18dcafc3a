//! Element orders of `SL2(q)` for small prime `q`, by enumeration, and the
//! same torus machinery run on the rank-one root datum.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::intlinalg::IntMat;
use crate::spectrum::{mu, SpectrumSet};
use crate::torus::{bordered_system, group_structure};

/// Largest prime accepted by the enumeration.
pub const MAX_Q: u64 = 13;

/// A 2x2 matrix over `Z/q`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: [u64; 4],
    pub q: u64,
}

impl Mat2 {
    pub fn identity(q: u64) -> Self {
        Mat2 { a: [1, 0, 0, 1], q }
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.a;
        (a * d + self.q * self.q - b * c % self.q) % self.q
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let q = self.q;
        let [a, b, c, d] = self.a;
        let [e, f, g, h] = o.a;
        Mat2 {
            a: [
                (a * e + b * g) % q,
                (a * f + b * h) % q,
                (c * e + d * g) % q,
                (c * f + d * h) % q,
            ],
            q,
        }
    }

    pub fn order(&self) -> u64 {
        let id = Mat2::identity(self.q);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }
}

fn check_q(q: u64) -> Result<()> {
    if q == 2 || !is_prime(q) {
        return Err(Error::Domain(format!("{q} is not an odd prime")));
    }
    if q > MAX_Q {
        return Err(Error::Unsupported(format!(
            "q = {q} exceeds the enumeration budget q <= {MAX_Q}"
        )));
    }
    Ok(())
}

/// All elements of `SL2(q)`.
pub fn sl2_elements(q: u64) -> Result<Vec<Mat2>> {
    check_q(q)?;
    let mut out = Vec::with_capacity((q * (q * q - 1)) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2 { a: [a, b, c, d], q };
                    if m.det() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every element order of `SL2(q)`.
pub fn sl2_orders(q: u64) -> Result<BTreeSet<u64>> {
    Ok(sl2_elements(q)?.iter().map(Mat2::order).collect())
}

/// `μ` of the spectrum of `SL2(q)`.
pub fn sl2_omega(q: u64) -> Result<SpectrumSet> {
    let all: SpectrumSet = sl2_orders(q)?.into_iter().map(BigInt::from).collect();
    Ok(mu(&all))
}

/// Exponents of the two twisted tori of `PGL2(q)`, obtained from the
/// bordered rank-one system modulo the central involution.
pub fn sl2_torus_exponents(q: u64) -> Result<SpectrumSet> {
    if q == 2 || !is_prime(q) {
        return Err(Error::Domain(format!("{q} is not an odd prime")));
    }
    let qb = BigInt::from(q);
    let mut out = SpectrumSet::new();
    for sign in [1i64, -1] {
        let m = IntMat::from_rows(&[[sign]]);
        let n = bordered_system(&m, &qb, Some(&[1]), &[]);
        let g = group_structure(&n, q)?;
        let z = g.coordinates(&[BigInt::from(1), BigInt::from(0)], &BigInt::from(2))?;
        out.insert(g.quotient_exponent(&z));
    }
    Ok(out)
}

/// Invariant factors of the unbordered rank-one tori of `SL2(q)`.
pub fn sl2_tori(q: u64) -> Result<Vec<Vec<BigInt>>> {
    let qb = BigInt::from(q);
    [1i64, -1]
        .iter()
        .map(|&s| {
            let n = bordered_system(&IntMat::from_rows(&[[s]]), &qb, None, &[]);
            group_structure(&n, q).map(|g| g.factors)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[i64]) -> SpectrumSet {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_spectra() {
        assert_eq!(sl2_elements(5).unwrap().len(), 120);
        assert_eq!(sl2_omega(3).unwrap(), set(&[4, 6]));
        assert_eq!(sl2_omega(5).unwrap(), set(&[4, 6, 10]));
        assert_eq!(sl2_omega(7).unwrap(), set(&[6, 8, 14]));
        let orders: Vec<u64> = sl2_orders(5).unwrap().into_iter().collect();
        assert_eq!(orders, [1, 2, 3, 4, 5, 6, 10]);
    }

    #[test]
    fn budget() {
        assert!(matches!(sl2_omega(17), Err(Error::Unsupported(_))));
        assert!(sl2_omega(9).is_err());
    }

    #[test]
    fn torus_exponents() {
        assert_eq!(sl2_torus_exponents(5).unwrap(), set(&[4, 6]));
        assert_eq!(sl2_torus_exponents(3).unwrap(), set(&[2, 4]));
        let t = sl2_tori(7).unwrap();
        assert_eq!(t, vec![vec![BigInt::from(6)], vec![BigInt::from(8)]]);
    }
}
