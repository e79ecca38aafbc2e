//! Small exact linear algebra: determinants, ranks, Cramer's rule.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Poly, RatFunc, Rat};

/// Commutative ring operations needed by determinants.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

/// A ring whose nonzero elements can be inverted.
pub trait Field: Ring {
    fn inv(&self) -> Self;
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        self.inverse().expect("inverting zero")
    }
}

/// Determinant of a square matrix given as rows, by Laplace expansion over column subsets.
pub fn determinant<T: Ring>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return T::one();
    }
    // minors[S] = det of the first |S| rows restricted to the column set S.
    let mut minors: BTreeMap<u32, T> = BTreeMap::new();
    for (c, x) in rows[0].iter().enumerate() {
        minors.insert(1 << c, x.clone());
    }
    for row in rows.iter().skip(1) {
        let mut next: BTreeMap<u32, T> = BTreeMap::new();
        for (&set, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for (c, x) in row.iter().enumerate() {
                if set & (1 << c) != 0 || x.is_zero() {
                    continue;
                }
                // Sign from the number of chosen columns to the right of c.
                let after = (set >> c).count_ones();
                let term = minor.mul(x);
                let key = set | (1 << c);
                let slot = next.entry(key).or_insert_with(T::zero);
                *slot = if after % 2 == 1 { slot.sub(&term) } else { slot.add(&term) };
            }
        }
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).unwrap_or_else(T::zero)
}

/// Rank of a rational matrix by Gauss-Jordan elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !Zero::is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for i in 0..m.len() {
            if i != r && !Zero::is_zero(&m[i][c]) {
                let f = &m[i][c] * &inv;
                for j in c..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves `A x = b` by Cramer's rule; `None` when `det A` is zero.
pub fn solve_cramer<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let d = determinant(a);
    if d.is_zero() {
        return None;
    }
    let dinv = d.inv();
    let n = a.len();
    Some(
        (0..n)
            .map(|col| {
                let replaced: Vec<Vec<T>> = a
                    .iter()
                    .zip(b)
                    .map(|(row, bi)| {
                        let mut row = row.clone();
                        row[col] = bi.clone();
                        row
                    })
                    .collect();
                determinant(&replaced).mul(&dinv)
            })
            .collect(),
    )
}
