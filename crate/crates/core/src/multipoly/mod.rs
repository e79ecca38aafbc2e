//! Exact sparse multivariate polynomials and rational functions over the rationals.

mod linalg;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod var;

pub use linalg::{determinant, rank, solve_cramer, Field, Ring};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_poly_list, parse_ratfunc};
pub use poly::Poly;
pub(crate) use poly::{forward_ops, forward_owned};
pub use ratfunc::{substitute_poly, RatFunc};
pub use var::{natural_cmp, Var, MAX_NAME};

use thiserror::Error;

/// Arbitrary-precision rational in lowest terms.
pub type Rat = num_rational::BigRational;

/// Exponent vector `I = (i_0, ..., i_N)` indexing products `tau^I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    /// `|I|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `i`, zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn scaled(&self, c: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|e| e * c).collect())
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let n = self.len().max(other.len());
        MultiIndex((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Every index of length `len` with `|I| = d`, in lexicographic order.
    pub fn all_of_weight(len: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(len: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == len {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(len, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if len > 0 {
            rec(len, d, &mut Vec::new(), &mut out);
        }
        out
    }

    /// `prod_j base[j]^{I_j}`.
    pub fn power_product(&self, base: &[Poly]) -> Poly {
        self.0.iter().zip(base).fold(Poly::one(), |acc, (e, p)| if *e == 0 { acc } else { &acc * &p.pow(*e) })
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("no value supplied for variable {0}")]
    MissingValue(Var),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// All monomials of total degree at most `d` in `vars`, ascending.
pub fn monomials_up_to(vars: &[Var], d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..d {
        let mut next = std::collections::BTreeSet::new();
        for m in &layer {
            for v in vars {
                next.insert(m.mul(&Monomial::var(*v)));
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out.sort();
    out
}

/// Convenience: a rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convenience: `n / d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_enumeration() {
        let all = MultiIndex::all_of_weight(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|i| i.weight() == 2));
        assert_eq!(all[0], MultiIndex(vec![2, 0, 0]));
        assert_eq!(MultiIndex::all_of_weight(1, 4), vec![MultiIndex(vec![4])]);
    }

    #[test]
    fn power_products() {
        let tau = parse_poly_list("1,z1,z1+2").unwrap();
        let i = MultiIndex(vec![0, 2, 1]);
        assert_eq!(i.power_product(&tau), parse_poly("z1^3 + 2*z1^2").unwrap());
        assert_eq!(i.scaled(3).weight(), 9);
    }

    #[test]
    fn monomial_bases() {
        let v = [Var::base("z1"), Var::base("z2")];
        assert_eq!(monomials_up_to(&v, 2).len(), 6);
        assert_eq!(monomials_up_to(&v[..1], 3).len(), 4);
    }
}
