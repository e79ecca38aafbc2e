//! Variables: base coordinates and their jet variables.

use std::cmp::Ordering;
use std::fmt;

use arrayvec::ArrayString;

/// Longest accepted variable name.
pub const MAX_NAME: usize = 15;

/// A variable `name` differentiated `order` times; order 0 is the base coordinate itself.
///
/// Order `j >= 1` prints as `D<j><name>`, so `Var::jet("z1", 2)` is `D2z1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var {
    name: ArrayString<MAX_NAME>,
    order: u32,
}

impl Var {
    /// Base variable. Panics on names that are not identifiers, look like jet tokens, or are too long.
    pub fn base(name: &str) -> Var {
        Var::try_base(name).unwrap_or_else(|| panic!("invalid variable name {name:?}"))
    }

    /// Jet variable `D<order><name>`.
    pub fn jet(name: &str, order: u32) -> Var {
        Var::base(name).derived(order)
    }

    pub fn try_base(name: &str) -> Option<Var> {
        if !is_identifier(name) || jet_shape(name).is_some() {
            return None;
        }
        let name = ArrayString::from(name).ok()?;
        Some(Var { name, order: 0 })
    }

    /// Parses either a base name or a `D<j><name>` token.
    pub fn parse(token: &str) -> Option<Var> {
        match jet_shape(token) {
            Some(_) => {
                let (j, rest) = jet_split(token)?;
                Var::try_base(rest).map(|v| v.derived(j))
            }
            None => Var::try_base(token),
        }
    }

    pub fn name(&self) -> &str {
        self.name.as_str()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_base(&self) -> bool {
        self.order == 0
    }

    /// The base coordinate underneath this variable.
    pub fn coord(&self) -> Var {
        Var { name: self.name, order: 0 }
    }

    /// `d` applied `by` more times.
    pub fn derived(&self, by: u32) -> Var {
        Var { name: self.name, order: self.order + by }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `D<digits><ident>` into the digit run and the trailing identifier.
fn jet_shape(s: &str) -> Option<(&str, &str)> {
    let rest = s.strip_prefix('D')?;
    let digits = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return None;
    }
    let tail = &rest[digits..];
    if !tail.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return None;
    }
    Some((&rest[..digits], tail))
}

/// Order and coordinate of a jet token; the order must be at least 1.
fn jet_split(s: &str) -> Option<(u32, &str)> {
    let (digits, tail) = jet_shape(s)?;
    let j: u32 = digits.parse().ok()?;
    (j > 0).then_some((j, tail))
}

/// Orders names so that embedded digit runs compare numerically (`z2 < z10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].is_ascii_digit() && b[j].is_ascii_digit() {
            let si = i;
            while i < a.len() && a[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let da = trim_zeros(&a[si..i]);
            let db = trim_zeros(&b[sj..j]);
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
            let ord = (i - si).cmp(&(j - sj));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            if a[i] != b[j] {
                return a[i].cmp(&b[j]);
            }
            i += 1;
            j += 1;
        }
    }
    (a.len() - i).cmp(&(b.len() - j))
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().take_while(|&&c| c == b'0').count();
    &d[k..]
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.name, &other.name).then(self.order.cmp(&other.order))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "D{}{}", self.order, self.name)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_tokens_round_trip() {
        let v = Var::parse("D2z1").unwrap();
        assert_eq!(v, Var::jet("z1", 2));
        assert_eq!(v.to_string(), "D2z1");
        assert_eq!(Var::parse("D12t").unwrap().order(), 12);
        assert_eq!(Var::parse("z1_2").unwrap().to_string(), "z1_2");
    }

    #[test]
    fn plain_d_names_are_base() {
        assert!(Var::parse("D").unwrap().is_base());
        assert!(Var::parse("D2").unwrap().is_base());
        assert!(Var::parse("D0z1").is_none());
        assert!(Var::try_base("D1z1").is_none());
        assert!(Var::parse("1z").is_none());
        assert!(Var::parse("averyveryverylongname").is_none());
    }

    #[test]
    fn natural_order() {
        assert!(Var::base("z2") < Var::base("z10"));
        assert!(Var::base("t") < Var::base("z1"));
        assert!(Var::base("z1") < Var::jet("z1", 1));
        assert!(Var::jet("z1", 3) < Var::base("z2"));
        assert!(Var::base("z1") < Var::base("z1_1"));
        assert!(Var::base("z1_2") < Var::base("z1_10"));
    }
}
