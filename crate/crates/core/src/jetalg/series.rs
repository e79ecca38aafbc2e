use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::multipoly::Rat;

/// Truncated power series `c_0 + c_1 t + ... + c_k t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series(pub Vec<Rat>);

pub fn factorial(j: u32) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl Series {
    pub fn zero(k: usize) -> Series {
        Series(vec![Rat::zero(); k + 1])
    }

    /// Truncation order `k`.
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    /// From raw derivatives `f^(j)(0)`.
    pub fn from_derivatives(d: &[Rat]) -> Series {
        Series(d.iter().enumerate().map(|(j, x)| x / Rat::from_integer(factorial(j as u32))).collect())
    }

    /// Raw derivatives `j! c_j`.
    pub fn derivatives(&self) -> Vec<Rat> {
        self.0.iter().enumerate().map(|(j, c)| c * Rat::from_integer(factorial(j as u32))).collect()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let k = self.order().min(other.order());
        let mut out = Series::zero(k);
        for (i, a) in self.0.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(k + 1 - i) {
                out.0[i + j] += a * b;
            }
        }
        out
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Series {
        assert!(inner.0[0].is_zero(), "inner series must vanish at 0");
        let k = self.order().min(inner.order());
        let mut out = Series::zero(k);
        let mut power = Series::zero(k);
        power.0[0] = Rat::one();
        for c in self.0.iter().take(k + 1) {
            for (o, p) in out.0.iter_mut().zip(&power.0) {
                *o += c * p;
            }
            power = power.mul(inner);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Series {
        let k = self.order();
        let a0 = self.0[0].recip();
        let mut out = Series::zero(k);
        out.0[0] = a0.clone();
        for n in 1..=k {
            let mut s = Rat::zero();
            for i in 1..=n {
                s += &self.0[i] * &out.0[n - i];
            }
            out.0[n] = -(s * &a0);
        }
        out
    }

    /// Formal derivative (loses one order).
    pub fn derivative(&self) -> Series {
        Series(self.0.iter().enumerate().skip(1).map(|(j, c)| c * Rat::from_integer(BigInt::from(j))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{rat, ratio};

    fn s(v: &[i64]) -> Series {
        Series(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn composition_by_hand() {
        // (1 + t)^2 at t + t^2: 1 + 2t + 3t^2 + ...
        let f = s(&[1, 2, 1, 0]);
        let g = s(&[0, 1, 1, 0]);
        assert_eq!(f.compose(&g), s(&[1, 2, 3, 2]));
    }

    #[test]
    fn inverse_of_one_minus_t() {
        assert_eq!(s(&[1, -1, 0, 0]).inverse(), s(&[1, 1, 1, 1]));
        assert_eq!(s(&[2, 0]).inverse().0[0], ratio(1, 2));
    }

    #[test]
    fn derivative_conversion() {
        let d = vec![rat(1), rat(3), rat(6), rat(6)];
        let t = Series::from_derivatives(&d);
        assert_eq!(t, s(&[1, 3, 3, 1]));
        assert_eq!(t.derivatives(), d);
    }
}
