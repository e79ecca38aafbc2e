//! Jet differentials: polynomials in the jet variables `D<j>z` with rational-function
//! coefficients in the base coordinates, the total derivative `d`, and curve jets.

mod curve;
mod series;

pub use curve::{invariance_defect, jet_of_poly_curve, CurveJet, Reparam};
pub use series::{factorial, Series};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::multipoly::{Monomial, Poly, PolyError, RatFunc, Rat, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("a coefficient denominator vanishes at the base point")]
    PoleAtBasepoint,
    #[error("jet differential has order {needed} but the curve jet only has order {have}")]
    OrderTooHigh { needed: u32, have: u32 },
    #[error("curve jet has no coordinate {0}")]
    MissingCoordinate(Var),
    #[error("curve component is not a polynomial in {0} alone")]
    NotUnivariate(Var),
    #[error("reparametrization must have a nonzero linear coefficient")]
    DegenerateReparam,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("denominator involves jet variable {0}")]
    JetInDenominator(Var),
}

/// Weighted degree of a jet differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// Every monomial has weight `m`.
    Isobaric(u32),
    /// Monomials of different weights occur.
    Mixed,
    /// The zero differential, which has every weight.
    Zero,
}

/// A jet differential. Denominators involve base coordinates only.
#[derive(Clone)]
pub struct JetPoly {
    body: RatFunc,
    order: u32,
}

/// Weight `sum_j j |alpha_j|` of a monomial.
pub fn monomial_weight(m: &Monomial) -> u32 {
    m.iter().map(|(v, e)| v.order() * e).sum()
}

fn max_jet_order(p: &Poly) -> u32 {
    p.vars().iter().map(Var::order).max().unwrap_or(0)
}

impl JetPoly {
    pub fn zero() -> JetPoly {
        JetPoly { body: RatFunc::zero(), order: 0 }
    }

    pub fn from_poly(p: Poly) -> JetPoly {
        let order = max_jet_order(&p);
        JetPoly { body: RatFunc::from_poly(p), order }
    }

    /// Wraps a rational function, rejecting jet variables in the denominator.
    pub fn from_ratfunc(r: RatFunc) -> Result<JetPoly, JetError> {
        for (f, _) in r.factors() {
            if let Some(v) = f.vars().into_iter().find(|v| !v.is_base()) {
                return Err(JetError::JetInDenominator(v));
            }
        }
        let order = max_jet_order(r.numerator());
        Ok(JetPoly { body: r, order })
    }

    /// Raises the declared order bound.
    pub fn with_order(mut self, k: u32) -> JetPoly {
        self.order = self.order.max(k);
        self
    }

    /// Declared order bound.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Highest jet order actually occurring.
    pub fn jet_order(&self) -> u32 {
        max_jet_order(self.body.numerator())
    }

    pub fn body(&self) -> &RatFunc {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Polynomial form, if every coefficient is a polynomial.
    pub fn to_poly(&self) -> Option<Poly> {
        self.body.to_poly()
    }

    pub fn weight(&self) -> Weight {
        let mut w = None;
        for (m, _) in self.body.numerator().terms() {
            let mw = monomial_weight(m);
            match w {
                None => w = Some(mw),
                Some(x) if x != mw => return Weight::Mixed,
                _ => {}
            }
        }
        w.map_or(Weight::Zero, Weight::Isobaric)
    }

    /// Coefficients `c_alpha(z)` keyed by the jet monomial.
    pub fn coefficients(&self) -> BTreeMap<Monomial, RatFunc> {
        let groups = self.body.numerator().collect_by(|v| !v.is_base());
        let factors = self.body.factors().to_vec();
        groups
            .into_iter()
            .map(|(m, c)| (m, RatFunc::with_factors(c, factors.clone()).expect("nonzero factors")))
            .collect()
    }

    /// The total derivative `d`: `D<j>z -> D<j+1>z` and `c(z) -> sum dc/dz_i D1z_i`.
    pub fn total_derive(&self) -> JetPoly {
        JetPoly { body: self.body.apply_derivation(|v| Some(Poly::var(v.derived(1)))), order: self.order + 1 }
    }

    /// `d` applied `k` times.
    pub fn total_derive_n(&self, k: u32) -> JetPoly {
        (0..k).fold(self.clone(), |p, _| p.total_derive())
    }

    pub fn scale(&self, c: &Rat) -> JetPoly {
        JetPoly { body: self.body.scale(c), order: self.order }
    }

    /// Multiplies by a base-only rational function.
    pub fn mul_ratfunc(&self, r: &RatFunc) -> JetPoly {
        JetPoly { body: &self.body * r, order: self.order }
    }

    pub fn divide_by(&self, f: &Poly, e: u32) -> Result<JetPoly, PolyError> {
        Ok(JetPoly { body: self.body.div_poly_pow(f, e)?, order: self.order })
    }

    /// `P(j_k f)`.
    pub fn pullback(&self, f: &CurveJet) -> Result<Rat, JetError> {
        let need = self.jet_order();
        if need > f.order() {
            return Err(JetError::OrderTooHigh { needed: need, have: f.order() });
        }
        let mut missing = None;
        for v in self.body.numerator().vars() {
            if f.value(&v).is_none() {
                missing = Some(v);
                break;
            }
        }
        for (g, _) in self.body.factors() {
            if let Some(v) = g.vars().into_iter().find(|v| f.value(v).is_none()) {
                missing.get_or_insert(v);
            }
        }
        if let Some(v) = missing {
            return Err(JetError::MissingCoordinate(v.coord()));
        }
        self.body.evaluate(|v| f.value(v)).map_err(|e| match e {
            PolyError::DenominatorVanishes => JetError::PoleAtBasepoint,
            PolyError::MissingValue(v) => JetError::MissingCoordinate(v),
            other => JetError::Shape(other.to_string()),
        })
    }

    /// Substitutes rational functions for variables (base or jet).
    pub fn substitute(&self, map: &HashMap<Var, RatFunc>) -> Result<RatFunc, PolyError> {
        self.body.substitute(map)
    }

    /// Exact equality of the underlying rational functions.
    pub fn same_as(&self, other: &JetPoly) -> bool {
        self.body.ratfunc_eq(&other.body)
    }
}

impl From<Poly> for JetPoly {
    fn from(p: Poly) -> JetPoly {
        JetPoly::from_poly(p)
    }
}

impl Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, o: &JetPoly) -> JetPoly {
        JetPoly { body: &self.body + &o.body, order: self.order.max(o.order) }
    }
}

impl Sub for &JetPoly {
    type Output = JetPoly;
    fn sub(self, o: &JetPoly) -> JetPoly {
        JetPoly { body: &self.body - &o.body, order: self.order.max(o.order) }
    }
}

impl Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, o: &JetPoly) -> JetPoly {
        JetPoly { body: &self.body * &o.body, order: self.order.max(o.order) }
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        JetPoly { body: -&self.body, order: self.order }
    }
}

crate::multipoly::forward_ops!(JetPoly);

impl crate::multipoly::Ring for JetPoly {
    fn zero() -> Self {
        JetPoly::zero()
    }
    fn one() -> Self {
        JetPoly::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        JetPoly::is_zero(self)
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

impl PartialEq for JetPoly {
    fn eq(&self, other: &JetPoly) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.body, f)
    }
}

impl fmt::Debug for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetPoly[order {}]({})", self.order, self.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, parse_ratfunc, rat};

    fn j(s: &str) -> JetPoly {
        JetPoly::from_ratfunc(parse_ratfunc(s).unwrap()).unwrap()
    }

    fn t() -> Var {
        Var::base("t")
    }

    #[test]
    fn weights() {
        assert_eq!(j("D1z1").weight(), Weight::Isobaric(1));
        assert_eq!(j("D1z1^2*D3z2").weight(), Weight::Isobaric(5));
        assert_eq!(j("z1").weight(), Weight::Isobaric(0));
        assert_eq!(j("D1z1 + D2z1").weight(), Weight::Mixed);
        assert_eq!(JetPoly::zero().weight(), Weight::Zero);
        assert_eq!(j("D1z1/z1").weight(), Weight::Isobaric(1));
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(j("z1").total_derive(), j("D1z1"));
        assert_eq!(j("D1z1").total_derive(), j("D2z1"));
        assert_eq!(j("z1*D1z2").total_derive(), j("D1z1*D1z2 + z1*D2z2"));
        assert_eq!(j("1/z1").total_derive(), j("-D1z1/z1^2"));
        assert_eq!(j("z1").total_derive().order(), 1);
    }

    #[test]
    fn jet_variables_in_denominators_are_rejected() {
        assert!(JetPoly::from_ratfunc(parse_ratfunc("1/D1z1").unwrap()).is_err());
    }

    #[test]
    fn pullback_examples() {
        let f = jet_of_poly_curve(
            &[(Var::base("z1"), parse_poly("t").unwrap()), (Var::base("z2"), parse_poly("t^2").unwrap())],
            &t(),
            2,
        )
        .unwrap();
        assert_eq!(j("D1z1").pullback(&f).unwrap(), rat(1));
        assert_eq!(j("D2z2").pullback(&f).unwrap(), rat(2));
        let g = jet_of_poly_curve(&[(Var::base("z"), parse_poly("t^2").unwrap())], &t(), 1).unwrap();
        assert_eq!(j("2*D1z^3").pullback(&g).unwrap(), rat(0));
        assert_eq!(j("D1z/z").pullback(&g), Err(JetError::PoleAtBasepoint));
        assert!(matches!(j("D2z").pullback(&g), Err(JetError::OrderTooHigh { .. })));
        assert!(matches!(j("D1w").pullback(&g), Err(JetError::MissingCoordinate(_))));
    }

    #[test]
    fn coefficient_view() {
        let p = j("(z1*D1z1 + 3*D1z1 + z2^2*D2z1)/z2");
        let c = p.coefficients();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&Monomial::var(Var::jet("z1", 1))], parse_ratfunc("(z1+3)/z2").unwrap());
    }
}
