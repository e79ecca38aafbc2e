use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{forward_ops, Poly};
use super::var::Var;
use super::{PolyError, Rat};

/// A quotient of polynomials whose denominator is kept as a product of factor powers.
///
/// No gcd is ever taken. Factors are non-constant and sorted; constants are folded
/// into the numerator. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, PolyError> {
        RatFunc::from_poly(num).div_poly_pow(&den, 1)
    }

    /// `num / (f1^e1 * f2^e2 * ...)`.
    pub fn with_factors(num: Poly, factors: Vec<(Poly, u32)>) -> Result<RatFunc, PolyError> {
        let mut r = RatFunc::from_poly(num);
        for (f, e) in factors {
            r = r.div_poly_pow(&f, e)?;
        }
        Ok(r)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    /// Every variable in the numerator or a denominator factor.
    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut vs = self.num.vars();
        for (f, _) in &self.den {
            vs.extend(f.vars());
        }
        vs
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> Poly {
        self.den.iter().fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The polynomial, after cancelling whatever denominator factors divide the numerator.
    pub fn to_poly(&self) -> Option<Poly> {
        let r = self.cancel_factors();
        r.is_polynomial().then_some(r.num)
    }

    /// Exponent of `f` in the stored denominator.
    pub fn factor_exponent(&self, f: &Poly) -> u32 {
        self.den.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e)
    }

    /// Divides by `f^e`.
    pub fn div_poly_pow(&self, f: &Poly, e: u32) -> Result<RatFunc, PolyError> {
        if f.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if e == 0 {
            return Ok(self.clone());
        }
        if let Some(c) = f.as_constant() {
            let inv = num_traits::pow(c.recip(), e as usize);
            return Ok(RatFunc { num: self.num.scale(&inv), den: self.den.clone() });
        }
        if f.num_terms() == 1 {
            // Split a monomial into its variables so powers of z share one factor.
            let (m, c) = f.leading().expect("one term");
            let inv = num_traits::pow(c.recip(), e as usize);
            let mut split: Vec<(Poly, u32)> = m.iter().map(|(v, k)| (Poly::var(*v), k * e)).collect();
            split.sort();
            return Ok(RatFunc { num: self.num.scale(&inv), den: merge(&self.den, &split) });
        }
        Ok(RatFunc { num: self.num.clone(), den: merge(&self.den, &[(f.clone(), e)]) })
    }

    /// Multiplies by `f^e`, cancelling against a stored factor equal to `f` first.
    pub fn mul_poly_pow(&self, f: &Poly, e: u32) -> RatFunc {
        let mut den = self.den.clone();
        let mut left = e;
        if let Some(slot) = den.iter_mut().find(|(g, _)| g == f) {
            let take = slot.1.min(left);
            slot.1 -= take;
            left -= take;
        }
        den.retain(|(_, k)| *k > 0);
        let num = if left > 0 { &self.num * &f.pow(left) } else { self.num.clone() };
        RatFunc { num, den }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc { num: &self.num * p, den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<RatFunc, PolyError> {
        let num = self.den.iter().fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e));
        RatFunc::from_poly(num).div_poly_pow(&self.num, 1)
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, PolyError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: if e == 0 { Vec::new() } else { self.den.iter().map(|(f, k)| (f.clone(), k * e)).collect() },
        }
    }

    /// Divides out every denominator factor that divides the numerator exactly.
    pub fn cancel_factors(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let mut e = *e;
            while e > 0 {
                match num.exact_divide(f) {
                    Ok(q) => {
                        num = q;
                        e -= 1;
                    }
                    Err(_) => break,
                }
            }
            if e > 0 {
                den.push((f.clone(), e));
            }
        }
        RatFunc { num, den }
    }

    /// Cross-multiplication equality, after removing the common part of the denominators.
    pub fn ratfunc_eq(&self, other: &RatFunc) -> bool {
        let (mut lhs_extra, mut rhs_extra) = (Vec::new(), Vec::new());
        let (a, b) = (&self.den, &other.den);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    rhs_extra.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    lhs_extra.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ea, eb) = (a[i].1, b[j].1);
                    if ea > eb {
                        rhs_extra.push((a[i].0.clone(), ea - eb));
                    } else if eb > ea {
                        lhs_extra.push((b[j].0.clone(), eb - ea));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let expand = |fs: &[(Poly, u32)], p: &Poly| fs.iter().fold(p.clone(), |acc, (f, e)| &acc * &f.pow(*e));
        expand(&lhs_extra, &self.num) == expand(&rhs_extra, &other.num)
    }

    /// Extends a polynomial derivation `D` by the quotient rule.
    pub fn apply_derivation<F>(&self, image: F) -> RatFunc
    where
        F: Fn(&Var) -> Option<Poly>,
    {
        let dn = self.num.apply_derivation(&image);
        if self.den.is_empty() {
            return RatFunc::from_poly(dn);
        }
        // D(N / prod f^e) = (D(N) prod f - N sum e D(f) prod_{g != f} g) / prod f^(e+1)
        let all: Poly = self.den.iter().fold(Poly::one(), |acc, (f, _)| &acc * f);
        let mut num = &dn * &all;
        for (idx, (f, e)) in self.den.iter().enumerate() {
            let df = f.apply_derivation(&image);
            if df.is_zero() {
                continue;
            }
            let others = self
                .den
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .fold(Poly::one(), |acc, (_, (g, _))| &acc * g);
            let term = &(&self.num * &df) * &others;
            num = &num - &term.scale(&Rat::from_integer((*e).into()));
        }
        let den = self.den.iter().map(|(f, e)| (f.clone(), e + 1)).collect();
        RatFunc { num, den }
    }

    pub fn partial_derivative(&self, v: &Var) -> RatFunc {
        self.apply_derivation(|w| (w == v).then(Poly::one))
    }

    /// Substitutes rational functions for variables; unmapped variables stay.
    pub fn substitute(&self, map: &HashMap<Var, RatFunc>) -> Result<RatFunc, PolyError> {
        let num = substitute_poly(&self.num, map);
        let mut out = num;
        for (f, e) in &self.den {
            let g = substitute_poly(f, map).pow(*e);
            out = out.checked_div(&g)?;
        }
        Ok(out)
    }

    /// Evaluates at a point; a vanishing denominator is an error.
    pub fn evaluate<F>(&self, value: F) -> Result<Rat, PolyError>
    where
        F: Fn(&Var) -> Option<Rat>,
    {
        let mut den = Rat::one();
        for (f, e) in &self.den {
            let v = f.evaluate(&value)?;
            if v.is_zero() {
                return Err(PolyError::DenominatorVanishes);
            }
            den *= num_traits::pow(v, *e as usize);
        }
        Ok(self.num.evaluate(&value)? / den)
    }

    fn common(&self, other: &RatFunc) -> (Poly, Poly, Vec<(Poly, u32)>) {
        // Common denominator: max exponent per factor.
        let den = max_merge(&self.den, &other.den);
        let lift = |r: &RatFunc| {
            den.iter().fold(r.num.clone(), |acc, (f, e)| {
                let have = r.factor_exponent(f);
                if *e > have {
                    &acc * &f.pow(e - have)
                } else {
                    acc
                }
            })
        };
        (lift(self), lift(other), den)
    }
}

/// Expands a polynomial under a rational-function substitution.
pub fn substitute_poly(p: &Poly, map: &HashMap<Var, RatFunc>) -> RatFunc {
    if map.values().all(RatFunc::is_polynomial) {
        let polys: HashMap<Var, Poly> = map.iter().map(|(v, r)| (*v, r.num.clone())).collect();
        return RatFunc::from_poly(p.substitute_poly(&polys));
    }
    let mut powers: HashMap<(Var, u32), RatFunc> = HashMap::new();
    let mut out = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut kept = super::Monomial::one();
        let mut acc = RatFunc::one();
        for (v, e) in m.iter() {
            match map.get(v) {
                Some(img) => {
                    let p = powers.entry((*v, e)).or_insert_with(|| img.pow(e));
                    acc = &acc * &*p;
                }
                None => kept = kept.mul(&super::Monomial::var_pow(*v, e)),
            }
        }
        let term = RatFunc { num: acc.num.mul_monomial(&kept, c), den: acc.den };
        out = &out + &term;
    }
    out
}

fn merge(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    combine_factors(a, b, |x, y| x + y)
}

fn max_merge(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    combine_factors(a, b, u32::max)
}

fn combine_factors(a: &[(Poly, u32)], b: &[(Poly, u32)], f: impl Fn(u32, u32) -> u32) -> Vec<(Poly, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), f(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc { num: &self.num + &other.num, den: self.den.clone() };
        }
        let (a, b, den) = self.common(other);
        RatFunc { num: &a + &b, den }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc { num: &self.num - &other.num, den: self.den.clone() };
        }
        let (a, b, den) = self.common(other);
        RatFunc { num: &a - &b, den }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, other: &RatFunc) -> RatFunc {
        let num = &self.num * &other.num;
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num, den: merge(&self.den, &other.den) }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_ops!(RatFunc);

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        self.ratfunc_eq(other)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

fn paren_if(p: &Poly) -> String {
    if p.num_terms() > 1 || p.leading().is_some_and(|(m, c)| !m.is_one() && !c.is_one()) {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() || self.num.is_zero() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(g, e)| if *e == 1 { paren_if(g) } else { format!("{}^{e}", paren_if(g)) })
            .collect();
        if parts.len() == 1 {
            write!(f, "{num}/{}", parts[0])
        } else {
            write!(f, "{num}/({})", parts.join("*"))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, parse_ratfunc};

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn equality_examples() {
        assert!(r("z1/z1").ratfunc_eq(&RatFunc::one()));
        assert!(r("(z1^2-1)/(z1-1)").ratfunc_eq(&r("z1+1")));
        assert!(!r("1/z1").ratfunc_eq(&r("1/z2")));
        assert_eq!(r("1/z1 + 1/z2"), r("(z1+z2)/(z1*z2)"));
    }

    #[test]
    fn quotient_rule() {
        let z = Var::base("z1");
        assert_eq!(r("1/z1").partial_derivative(&z), r("-1/z1^2"));
        assert_eq!(r("z1^2/(z1+1)").partial_derivative(&z), r("(z1^2 + 2*z1)/(z1+1)^2"));
    }

    #[test]
    fn factor_bookkeeping() {
        let z = parse_poly("z1").unwrap();
        let x = r("3/z1^2");
        assert_eq!(x.factor_exponent(&z), 2);
        let y = x.mul_poly_pow(&z, 1);
        assert_eq!(y.factor_exponent(&z), 1);
        assert_eq!(y.numerator(), &parse_poly("3").unwrap());
        assert_eq!(r("z1^2*z2/z1").to_poly().unwrap(), parse_poly("z1*z2").unwrap());
        assert!(r("z2/z1").to_poly().is_none());
        assert_eq!(r("1/(2*z1)").factors().len(), 1);
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn evaluation_detects_poles() {
        let one = |_: &Var| Some(Rat::one());
        let zero = |_: &Var| Some(Rat::zero());
        assert_eq!(r("(z1+1)/z1").evaluate(one).unwrap(), Rat::from_integer(2.into()));
        assert_eq!(r("(z1+1)/z1").evaluate(zero), Err(PolyError::DenominatorVanishes));
    }

    #[test]
    fn substitution_of_rational_functions() {
        let mut map = HashMap::new();
        map.insert(Var::base("z1"), r("1/t"));
        assert_eq!(r("z1^2 + 1").substitute(&map).unwrap(), r("(1 + t^2)/t^2"));
        assert_eq!(r("1/(z1 - 1)").substitute(&map).unwrap(), r("t/(1 - t)"));
    }

    #[test]
    fn printing() {
        assert_eq!(r("-D1z1/z1").to_string(), "-D1z1/z1");
        assert_eq!(r("(z1*D1z2 - z2*D1z1)/z1^2").to_string(), "(z1*D1z2 - D1z1*z2)/z1^2");
        let two = RatFunc::with_factors(Poly::one(), vec![(parse_poly("z1").unwrap(), 1), (parse_poly("z1+1").unwrap(), 1)]);
        assert_eq!(two.unwrap().to_string(), "1/((z1 + 1)*z1)");
        assert_eq!(r("1/(z1*(z1+1))").to_string(), "1/(z1^2 + z1)");
        let s = r("(3*t - z1)/(t^2*(z1 + 2))");
        assert_eq!(parse_ratfunc(&s.to_string()).unwrap(), s);
    }
}
