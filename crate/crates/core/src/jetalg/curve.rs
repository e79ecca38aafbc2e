use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::series::{factorial, Series};
use super::{JetError, JetPoly};
use crate::multipoly::{Poly, Rat, Var};

/// The k-jet of a curve germ: raw derivatives `f_i^(j)(0)`, `j = 0..=k`, per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveJet {
    order: u32,
    coords: BTreeMap<Var, Vec<Rat>>,
}

impl CurveJet {
    /// Builds a jet; every derivative vector must have length `order + 1`.
    pub fn new(order: u32, coords: BTreeMap<Var, Vec<Rat>>) -> Result<CurveJet, JetError> {
        for (v, d) in &coords {
            if !v.is_base() {
                return Err(JetError::Shape(format!("{v} is not a base coordinate")));
            }
            if d.len() != order as usize + 1 {
                return Err(JetError::Shape(format!("coordinate {v} has {} entries, expected {}", d.len(), order + 1)));
            }
        }
        Ok(CurveJet { order, coords })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, Vec<Rat>)>>(order: u32, pairs: I) -> Result<CurveJet, JetError> {
        CurveJet::new(order, pairs.into_iter().collect())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &BTreeMap<Var, Vec<Rat>> {
        &self.coords
    }

    pub fn derivatives(&self, coord: &Var) -> Option<&[Rat]> {
        self.coords.get(coord).map(Vec::as_slice)
    }

    /// The value of a (jet) variable on this jet: `D<j>z_i -> f_i^(j)(0)`.
    pub fn value(&self, v: &Var) -> Option<Rat> {
        self.coords.get(&v.coord())?.get(v.order() as usize).cloned()
    }

    /// Some first derivative is nonzero.
    pub fn is_regular(&self) -> bool {
        self.order >= 1 && self.coords.values().any(|d| !d[1].is_zero())
    }

    /// Drops derivatives above order `k`.
    pub fn truncate(&self, k: u32) -> CurveJet {
        let k = k.min(self.order);
        CurveJet {
            order: k,
            coords: self.coords.iter().map(|(v, d)| (*v, d[..=k as usize].to_vec())).collect(),
        }
    }

    /// The C*-action `f(t) -> f(lambda t)`.
    pub fn rescale(&self, lambda: &Rat) -> CurveJet {
        let coords = self
            .coords
            .iter()
            .map(|(v, d)| {
                let mut p = Rat::one();
                let scaled = d
                    .iter()
                    .map(|x| {
                        let y = x * &p;
                        p *= lambda;
                        y
                    })
                    .collect();
                (*v, scaled)
            })
            .collect();
        CurveJet { order: self.order, coords }
    }

    /// The jet of `f o phi`.
    pub fn reparametrize(&self, phi: &Reparam) -> Result<CurveJet, JetError> {
        if phi.order() != self.order {
            return Err(JetError::Shape(format!(
                "reparametrization of order {} applied to a jet of order {}",
                phi.order(),
                self.order
            )));
        }
        let inner = phi.series();
        let coords = self
            .coords
            .iter()
            .map(|(v, d)| (*v, Series::from_derivatives(d).compose(&inner).derivatives()))
            .collect();
        Ok(CurveJet { order: self.order, coords })
    }
}

/// A germ `phi(t) = a_1 t + ... + a_k t^k` with `a_1 != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reparam {
    coeffs: Vec<Rat>,
}

impl Reparam {
    pub fn new(coeffs: Vec<Rat>) -> Result<Reparam, JetError> {
        match coeffs.first() {
            Some(a1) if !a1.is_zero() => Ok(Reparam { coeffs }),
            _ => Err(JetError::DegenerateReparam),
        }
    }

    /// `phi(t) = lambda t`, truncated at order `k`.
    pub fn linear(lambda: Rat, k: u32) -> Result<Reparam, JetError> {
        let mut c = vec![Rat::zero(); k as usize];
        if let Some(first) = c.first_mut() {
            *first = lambda;
        }
        Reparam::new(c)
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `phi'(0)`.
    pub fn linear_coefficient(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn series(&self) -> Series {
        let mut c = vec![Rat::zero()];
        c.extend(self.coeffs.iter().cloned());
        Series(c)
    }

    /// `self o other`, truncated at the common order.
    pub fn compose(&self, other: &Reparam) -> Reparam {
        let s = self.series().compose(&other.series());
        Reparam { coeffs: s.0[1..].to_vec() }
    }
}

/// The k-jet at `param = 0` of a polynomial curve given componentwise.
pub fn jet_of_poly_curve(components: &[(Var, Poly)], param: &Var, k: u32) -> Result<CurveJet, JetError> {
    let mut coords = BTreeMap::new();
    for (v, p) in components {
        let mut d = vec![Rat::zero(); k as usize + 1];
        for (m, c) in p.terms() {
            if m.iter().any(|(w, _)| w != param) {
                return Err(JetError::NotUnivariate(*param));
            }
            let e = m.exponent(param);
            if e <= k {
                d[e as usize] += c * Rat::from_integer(factorial(e));
            }
        }
        coords.insert(*v, d);
    }
    CurveJet::new(k, coords)
}

/// Per sample, `P(j_k(f o phi)) - phi'(0)^m P(j_k f)`.
pub fn invariance_defect(p: &JetPoly, m: u32, samples: &[(CurveJet, Reparam)]) -> Result<Vec<Rat>, JetError> {
    samples
        .iter()
        .map(|(f, phi)| {
            let lhs = p.pullback(&f.reparametrize(phi)?)?;
            let rhs = p.pullback(f)?;
            Ok(lhs - num_traits::pow(phi.linear_coefficient().clone(), m as usize) * rhs)
        })
        .collect()
}
