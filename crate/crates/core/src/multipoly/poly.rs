use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::var::Var;
use super::{PolyError, Rat};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded lexicographic order; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(Rat::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var(v), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| *v)).collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    /// `self += c * m * p`, in place.
    pub fn add_mul_monomial(&mut self, p: &Poly, m: &Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (n, a) in &p.terms {
            self.add_term(n.mul(m), a * c);
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: &Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let lowered = m.lower(v).expect("exponent is positive");
                out.add_term(lowered, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Applies the derivation sending each variable `v` to `image(v)` (absent means 0).
    pub fn apply_derivation<F>(&self, image: F) -> Poly
    where
        F: Fn(&Var) -> Option<Poly>,
    {
        let mut cache: HashMap<Var, Option<Poly>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (v, e) in m.iter() {
                let img = cache.entry(*v).or_insert_with(|| image(v));
                let Some(img) = img else { continue };
                let lowered = m.lower(v).expect("variable occurs");
                let ce = c * Rat::from_integer(e.into());
                for (n, a) in &img.terms {
                    out.add_term(lowered.mul(n), &ce * a);
                }
            }
        }
        out
    }

    /// Exact quotient `self / q`; fails with `NotDivisible` if `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Poly) -> Result<Poly, PolyError> {
        let (lm, lc) = q.leading().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let Some(t) = m.div(lm) else {
                return Err(PolyError::NotDivisible);
            };
            let coef = c / lc;
            rem.add_mul_monomial(q, &t, &-&coef);
            quot.add_term(t, coef);
        }
        Ok(quot)
    }

    /// Substitutes polynomials for variables; unmapped variables stay as they are.
    pub fn substitute_poly(&self, map: &HashMap<Var, Poly>) -> Poly {
        let mut powers: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (mapped, kept) in self.collect_by(|v| map.contains_key(v)) {
            let mut acc = Poly::one();
            for (v, e) in mapped.iter() {
                let p = powers.entry((*v, e)).or_insert_with(|| map[v].pow(e));
                acc = &acc * &*p;
            }
            out += &(&acc * &kept);
        }
        out
    }

    /// Evaluates at a point; every variable must receive a value.
    pub fn evaluate<F>(&self, value: F) -> Result<Rat, PolyError>
    where
        F: Fn(&Var) -> Option<Rat>,
    {
        let mut cache: HashMap<Var, Rat> = HashMap::new();
        let mut sum = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = match cache.get(v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or(PolyError::MissingValue(*v))?;
                        cache.insert(*v, x.clone());
                        x
                    }
                };
                if x.is_zero() {
                    t = Rat::zero();
                    break;
                }
                t *= num_traits::pow(x, e as usize);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Groups terms by the part of each monomial made of variables satisfying `outer`.
    pub fn collect_by<F: Fn(&Var) -> bool>(&self, outer: F) -> BTreeMap<Monomial, Poly> {
        let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (o, inner) = m.split(&outer);
            groups.entry(o).or_default().add_term(inner, c.clone());
        }
        groups
    }

}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident, $t:ty) => {
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $f(self, other: $t) -> $t {
                std::ops::$tr::$f(&self, &other)
            }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $f(self, other: &$t) -> $t {
                std::ops::$tr::$f(&self, other)
            }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $f(self, other: $t) -> $t {
                std::ops::$tr::$f(self, &other)
            }
        }
    };
}
pub(crate) use forward_owned;

macro_rules! forward_ops {
    ($t:ty) => {
        $crate::multipoly::forward_owned!(Add, add, $t);
        $crate::multipoly::forward_owned!(Sub, sub, $t);
        $crate::multipoly::forward_owned!(Mul, mul, $t);
    };
}
pub(crate) use forward_ops;

forward_ops!(Poly);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

/// Prints a coefficient as it must appear in front of a product; `None` for an implicit 1.
fn coef_prefix(c: &Rat, is_one: bool) -> Option<String> {
    if is_one {
        Some(c.to_string())
    } else if c.is_one() {
        None
    } else {
        Some(format!("{c}*"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if let Some(p) = coef_prefix(&abs, m.is_one()) {
                write!(f, "{p}")?;
            }
            if !m.is_one() {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
