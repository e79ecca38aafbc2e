use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::multipoly::MultiIndex;

/// Which way to convert between the two jet frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `d^j z / z` as a polynomial in `d^i log z`.
    AbsFromLog,
    /// `d^j log z` as a polynomial in `d^i z / z`.
    LogFromAbs,
}

type Coeffs = BTreeMap<Vec<u32>, BigInt>;

fn bump(map: &mut Coeffs, key: Vec<u32>, c: BigInt) {
    let e = map.entry(key).or_insert_with(BigInt::zero);
    *e += c;
}

/// The integer coefficients `b_{j beta}`, keyed by `beta = (beta_1, ..., beta_j)`
/// with `beta_1 + 2 beta_2 + ... + j beta_j = j`.
pub fn log_basis_coeffs(j: u32, direction: Direction) -> BTreeMap<MultiIndex, BigInt> {
    assert!(j >= 1, "order must be positive");
    let len = j as usize + 1;
    let mut cur: Coeffs = BTreeMap::new();
    let mut start = vec![0u32; len];
    start[0] = 1;
    cur.insert(start, BigInt::from(1));
    for _ in 1..j {
        let mut next: Coeffs = BTreeMap::new();
        for (beta, c) in &cur {
            match direction {
                Direction::AbsFromLog => {
                    // d(z P) / z = d log z * P + d P, with d(d^i log z) = d^{i+1} log z.
                    let mut up = beta.clone();
                    up[0] += 1;
                    bump(&mut next, up, c.clone());
                    for i in 0..len - 1 {
                        if beta[i] > 0 {
                            let mut b = beta.clone();
                            b[i] -= 1;
                            b[i + 1] += 1;
                            bump(&mut next, b, c * BigInt::from(beta[i]));
                        }
                    }
                }
                Direction::LogFromAbs => {
                    // d(d^i z / z) = d^{i+1} z / z - (d^i z / z)(d z / z).
                    for i in 0..len - 1 {
                        if beta[i] > 0 {
                            let bi = BigInt::from(beta[i]);
                            let mut b = beta.clone();
                            b[i] -= 1;
                            b[i + 1] += 1;
                            bump(&mut next, b, c * &bi);
                            let mut b = beta.clone();
                            b[0] += 1;
                            bump(&mut next, b, -(c * &bi));
                        }
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur.into_iter().map(|(mut b, c)| {
        b.truncate(j as usize);
        (MultiIndex(b), c)
    })
    .collect()
}
