//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::iter::Sum;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isomorphism class `Z^r + Z/d_1 + ... + Z/d_s` with `2 <= d_1 | d_2 | ... | d_s`.
///
/// The representation is canonical, so derived equality is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    #[serde(serialize_with = "ser_factors", deserialize_with = "de_factors")]
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the zero group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_parts(0, [BigInt::from(n)])
    }

    /// `(Z/p)^dim`.
    pub fn elementary(p: u64, dim: usize) -> Self {
        Self::from_parts(0, std::iter::repeat_n(BigInt::from(p), dim))
    }

    /// Normalises an arbitrary list of cyclic orders. Zero orders are free
    /// summands, units are dropped, signs are ignored.
    pub fn from_parts(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut fs: Vec<BigInt> = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                fs.push(d);
            }
        }
        // gcd/lcm sweep: afterwards fs[i] divides every later entry.
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let g = fs[i].gcd(&fs[j]);
                if g != fs[i] {
                    let l = &fs[i] / &g * &fs[j];
                    fs[i] = g;
                    fs[j] = l;
                }
            }
        }
        fs.retain(|d| !d.is_one());
        Self { free_rank, invariant_factors: fs }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_parts(
            self.free_rank + other.free_rank,
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned(),
        )
    }

    /// Tensor with `Z[1/p]` for every `p` in `inverted`: the p-primary part of
    /// each factor is removed, the free rank is kept.
    pub fn localize(&self, inverted: &[u64]) -> Self {
        let orders = self.invariant_factors.iter().map(|d| {
            let mut d = d.clone();
            for &p in inverted {
                if p < 2 {
                    continue;
                }
                let p = BigInt::from(p);
                while d.is_multiple_of(&p) {
                    d /= &p;
                }
            }
            d
        });
        Self::from_parts(self.free_rank, orders)
    }

    /// `(dim G ⊗ F_p, dim G[p])`.
    pub fn mod_p_dims(&self, p: u64) -> Result<(usize, usize)> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pb = BigInt::from(p);
        let torsion = self.invariant_factors.iter().filter(|d| d.is_multiple_of(&pb)).count();
        Ok((self.free_rank + torsion, torsion))
    }

    /// Primary decomposition of the torsion: `(prime, prime power)` pairs,
    /// ordered by prime and then by power.
    pub fn primary_parts(&self) -> Vec<(BigInt, BigInt)> {
        let mut parts = Vec::new();
        for d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                parts.push((p.clone(), p.pow(e)));
            }
        }
        parts.sort();
        parts
    }

    /// Renders with primary components, e.g. `Z + Z/4 + Z/3` for `Z + Z/12`.
    pub fn render_primary(&self) -> String {
        let mut terms = free_terms("Z", self.free_rank);
        terms.extend(self.primary_parts().iter().map(|(_, q)| format!("Z/{q}")));
        join_terms(terms)
    }

    /// Rendering for a group already localized at `inverted`: the free part is
    /// written over `Z[1/p...]`.
    pub fn render_localized(&self, inverted: &[u64]) -> String {
        let mut ring = String::from("Z");
        if !inverted.is_empty() {
            let mut ps = inverted.to_vec();
            ps.sort_unstable();
            ps.dedup();
            let list: Vec<String> = ps.iter().map(u64::to_string).collect();
            ring = format!("Z[1/{}]", list.join(","));
        }
        let mut terms = free_terms(&ring, self.free_rank);
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        join_terms(terms)
    }
}

fn free_terms(ring: &str, rank: usize) -> Vec<String> {
    match rank {
        0 => Vec::new(),
        1 => vec![ring.to_string()],
        r => vec![format!("{ring}^{r}")],
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_localized(&[]))
    }
}

impl FromStr for FgAbelianGroup {
    type Err = Error;

    /// Parses the rendering grammar: `0`, or terms `Z`, `Z^r`, `Z/d` joined by `+`.
    /// A localized free part such as `Z[1/2]^r` is read as free rank `r`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            if let Some(d) = term.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d <= BigInt::one() {
                    return Err(bad());
                }
                orders.push(d);
                continue;
            }
            let rest = term.strip_prefix('Z').ok_or_else(bad)?;
            let rest = match rest.strip_prefix("[1/") {
                Some(r) => r.split_once(']').ok_or_else(bad)?.1,
                None => rest,
            };
            free += match rest {
                "" => 1,
                r => r.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?,
            };
        }
        Ok(Self::from_parts(free, orders))
    }
}

impl Sum for FgAbelianGroup {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, g| acc.direct_sum(&g))
    }
}

impl<'a> Sum<&'a FgAbelianGroup> for FgAbelianGroup {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, g| acc.direct_sum(g))
    }
}

fn ser_factors<S: Serializer>(fs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(fs.len()))?;
    for d in fs {
        match d.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

fn de_factors<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Factor {
        Small(u64),
        Text(String),
    }
    let raw = Vec::<Factor>::deserialize(d)?;
    let fs = raw
        .into_iter()
        .map(|f| match f {
            Factor::Small(x) => Ok(BigInt::from(x)),
            Factor::Text(t) => t.parse::<BigInt>().map_err(de::Error::custom),
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    for w in fs.windows(2) {
        if !w[1].is_multiple_of(&w[0]) {
            return Err(de::Error::custom("invariant factors must form a divisibility chain"));
        }
    }
    if fs.iter().any(|d| d < &BigInt::from(2)) {
        return Err(de::Error::custom("invariant factors must be at least 2"));
    }
    Ok(fs)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization of a positive integer.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}
