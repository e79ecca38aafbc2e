use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FermatError;
use crate::multipoly::{parse_poly, MultiIndex, Poly, Var};

/// Parameters, basis sections `tau_0..tau_N` and coefficients `a_I` of a Fermat-type family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatFamily {
    pub n: u32,
    pub big_n: u32,
    pub delta: u32,
    pub epsilon: u32,
    pub r: u32,
    pub k: u32,
    pub tau: Vec<Poly>,
    /// Missing indices have `a_I = 0`.
    pub a: BTreeMap<MultiIndex, Poly>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    n: u32,
    #[serde(rename = "N")]
    big_n: u32,
    delta: u32,
    epsilon: u32,
    r: u32,
    k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<Vec<String>>,
    #[serde(default)]
    a: BTreeMap<String, String>,
}

fn invalid(msg: impl Into<String>) -> FermatError {
    FermatError::Invalid(msg.into())
}

impl FermatFamily {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: u32,
        big_n: u32,
        delta: u32,
        epsilon: u32,
        r: u32,
        k: u32,
        tau: Vec<Poly>,
        a: BTreeMap<MultiIndex, Poly>,
    ) -> Result<FermatFamily, FermatError> {
        let fam = FermatFamily { n, big_n, delta, epsilon, r, k, tau, a };
        fam.validate()?;
        Ok(fam)
    }

    /// The affine chart `(1, z1, ..., zn)` of homogeneous coordinates on `P^n`.
    pub fn affine_tau(n: u32) -> Vec<Poly> {
        let mut tau = vec![Poly::one()];
        tau.extend((1..=n).map(|i| Poly::var(Var::base(&format!("z{i}")))));
        tau
    }

    fn validate(&self) -> Result<(), FermatError> {
        if self.n == 0 {
            return Err(invalid("n must be positive"));
        }
        if self.big_n < self.n {
            return Err(invalid(format!("N = {} is smaller than n = {}", self.big_n, self.n)));
        }
        if self.r == 0 || self.k == 0 {
            return Err(invalid("r and k must be at least 1"));
        }
        if self.tau.len() != self.big_n as usize + 1 {
            return Err(invalid(format!("expected {} tau entries, found {}", self.big_n + 1, self.tau.len())));
        }
        let allowed = |p: &Poly| p.vars().into_iter().all(|v| self.coordinate_index(&v).is_some());
        for (j, t) in self.tau.iter().enumerate() {
            if !allowed(t) {
                return Err(invalid(format!("tau_{j} = {t} uses variables outside z1..z{}", self.n)));
            }
        }
        for (idx, p) in &self.a {
            if idx.len() != self.big_n as usize + 1 {
                return Err(invalid(format!("index {idx} must have {} entries", self.big_n + 1)));
            }
            if idx.weight() != self.delta {
                return Err(invalid(format!("index {idx} has |I| = {}, expected {}", idx.weight(), self.delta)));
            }
            if !allowed(p) {
                return Err(invalid(format!("a_{idx} = {p} uses variables outside z1..z{}", self.n)));
            }
            if p.degree().unwrap_or(0) > self.epsilon {
                return Err(invalid(format!("a_{idx} has degree above epsilon = {}", self.epsilon)));
            }
        }
        Ok(())
    }

    fn coordinate_index(&self, v: &Var) -> Option<u32> {
        let i: u32 = v.name().strip_prefix('z')?.parse().ok()?;
        let canonical = format!("z{i}");
        (v.is_base() && (1..=self.n).contains(&i) && v.name() == canonical).then_some(i)
    }

    /// The full index set: every `I` of length `N + 1` with `|I| = delta`.
    pub fn indices(&self) -> Vec<MultiIndex> {
        MultiIndex::all_of_weight(self.big_n as usize + 1, self.delta)
    }

    /// `a_I`, zero when absent.
    pub fn coefficient(&self, idx: &MultiIndex) -> Poly {
        self.a.get(idx).cloned().unwrap_or_else(Poly::zero)
    }

    /// `tau^I`.
    pub fn tau_power(&self, idx: &MultiIndex, scale: u32) -> Poly {
        idx.scaled(scale).power_product(&self.tau)
    }

    /// Reads the TOML family description. A missing `tau` defaults to the affine chart when `N = n`.
    pub fn from_toml(src: &str) -> Result<FermatFamily, FermatError> {
        let raw: RawFamily = toml::from_str(src).map_err(|e| FermatError::Format(e.to_string()))?;
        let tau = match raw.tau {
            Some(list) => list
                .iter()
                .map(|s| parse_poly(s).map_err(|e| invalid(format!("tau entry {s:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?,
            None if raw.big_n == raw.n => FermatFamily::affine_tau(raw.n),
            None => return Err(invalid("tau is required when N differs from n")),
        };
        let mut a = BTreeMap::new();
        for (key, expr) in &raw.a {
            let idx = parse_index(key)?;
            let p = parse_poly(expr).map_err(|e| invalid(format!("a[{key}] = {expr:?}: {e}")))?;
            if a.insert(idx, p).is_some() {
                return Err(invalid(format!("duplicate index {key}")));
            }
        }
        FermatFamily::new(raw.n, raw.big_n, raw.delta, raw.epsilon, raw.r, raw.k, tau, a)
    }

    /// Canonical TOML: parameters, printed polynomials, nonzero coefficients only.
    pub fn to_toml(&self) -> String {
        let raw = RawFamily {
            n: self.n,
            big_n: self.big_n,
            delta: self.delta,
            epsilon: self.epsilon,
            r: self.r,
            k: self.k,
            tau: Some(self.tau.iter().map(Poly::to_string).collect()),
            a: self
                .a
                .iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| {
                    let key: Vec<String> = i.0.iter().map(u32::to_string).collect();
                    (key.join(","), p.to_string())
                })
                .collect(),
        };
        toml::to_string(&raw).expect("family serializes")
    }
}

fn parse_index(key: &str) -> Result<MultiIndex, FermatError> {
    key.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| invalid(format!("bad index {key:?}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(MultiIndex)
}
