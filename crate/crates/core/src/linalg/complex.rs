use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::group::{is_prime, FgAbelianGroup};
use super::matrix::IntegerMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// Coefficient ring of a complex or module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Integers,
    PrimeField(u64),
}

impl BaseRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Brings a matrix into canonical form for this ring.
    pub fn normalize(&self, m: &IntegerMatrix) -> IntegerMatrix {
        match self {
            Self::Integers => m.clone(),
            Self::PrimeField(p) => m.reduce_mod(*p),
        }
    }

    pub fn is_zero_matrix(&self, m: &IntegerMatrix) -> bool {
        self.normalize(m).is_zero()
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Self::Integers => 0,
            Self::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => write!(f, "Z"),
            Self::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// Finite cochain complex `C^0 -> C^1 -> ... -> C^top` of free modules.
///
/// Terms beyond `top` are zero. The differential at `n` is a
/// `ranks[n+1] x ranks[n]` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    ranks: Vec<usize>,
    differentials: Vec<IntegerMatrix>,
    base: BaseRing,
}

impl CochainComplex {
    /// Checks shapes and `d ∘ d = 0`; over `F_p` entries are reduced mod `p`.
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntegerMatrix>, base: BaseRing) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Shape("a complex needs at least one term".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        if let BaseRing::PrimeField(p) = base {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        let differentials: Vec<IntegerMatrix> =
            differentials.iter().map(|d| base.normalize(d)).collect();
        for (n, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[n + 1] || d.cols() != ranks[n] {
                return Err(Error::Shape(format!(
                    "differential {n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[n + 1],
                    ranks[n]
                )));
            }
        }
        for n in 1..differentials.len() {
            let comp = &differentials[n] * &differentials[n - 1];
            if !base.is_zero_matrix(&comp) {
                return Err(Error::NotAComplex(n - 1));
            }
        }
        Ok(Self { ranks, differentials, base })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, n: usize) -> Option<&IntegerMatrix> {
        self.differentials.get(n)
    }

    pub fn differentials(&self) -> &[IntegerMatrix] {
        &self.differentials
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    /// `ker d^n / im d^(n-1)`.
    ///
    /// Over `F_p` the answer is `(Z/p)^dim`. Over `Z` the torsion comes from
    /// the Smith form of `d^(n-1)`: the kernel of `d^n` is saturated, so the
    /// torsion of the cokernel of `d^(n-1)` lies inside it.
    pub fn cohomology_at(&self, n: usize) -> Result<FgAbelianGroup> {
        if n > self.top_degree() {
            return Err(Error::DegreeOutOfRange { degree: n, top: self.top_degree() });
        }
        match self.base {
            BaseRing::PrimeField(p) => {
                let out_rank = self.differentials.get(n).map_or(0, |d| d.rank_mod_p(p));
                let in_rank = if n == 0 { 0 } else { self.differentials[n - 1].rank_mod_p(p) };
                Ok(FgAbelianGroup::elementary(p, self.ranks[n] - out_rank - in_rank))
            }
            BaseRing::Integers => {
                let out_rank = self.differentials.get(n).map_or(0, |d| invariant_factors(d).len());
                let incoming: Vec<BigInt> =
                    if n == 0 { Vec::new() } else { invariant_factors(&self.differentials[n - 1]) };
                let free = self.ranks[n] - out_rank - incoming.len();
                Ok(FgAbelianGroup::from_parts(free, incoming))
            }
        }
    }
}
