//! `H^*(SL_2(Z), M)` from the amalgam `Z/4 *_{Z/2} Z/6`.
//!
//! The degree-`n` term of the total complex is `M_A ⊕ M_B ⊕ M_C`, where the
//! `C` slot carries degree `n - 1` of the edge group `<-I>`:
//!
//! ```text
//! D(a, b, c) = (δ_A a, δ_B b, r_A a - r_B b - δ_C c)
//! ```
//!
//! with `A = <S>`, `B = <U>` and `r` the restriction chain maps to `<-I>`.

use std::fmt;

use crate::cyclic::{restriction_cochain_matrix, CyclicAction};
use crate::error::{Error, Result};
use crate::linalg::{BaseRing, CochainComplex, FgAbelianGroup, IntegerMatrix};
use crate::modules::{GroupModule, GEN_S, GEN_U};

/// Coefficient ring for [`sl2z_cohomology`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    Integers,
    /// `F_q` for a prime `q`.
    Mod(u64),
    /// `Z[1/q : q in primes]`.
    Localized(Vec<u64>),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => write!(f, "Z"),
            Self::Mod(q) => write!(f, "F_{q}"),
            Self::Localized(ps) => {
                let inv: Vec<String> = ps.iter().map(|p| format!("1/{p}")).collect();
                write!(f, "Z[{}]", inv.join(", "))
            }
        }
    }
}

/// The assembled total complex together with a description of its input.
#[derive(Clone, Debug)]
pub struct AmalgamComplex {
    complex: CochainComplex,
    module_label: String,
    module_rank: usize,
}

impl AmalgamComplex {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn module_label(&self) -> &str {
        &self.module_label
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    pub fn module_rank(&self) -> usize {
        self.module_rank
    }

    pub fn cohomology_at(&self, n: usize) -> Result<FgAbelianGroup> {
        self.complex.cohomology_at(n)
    }
}

/// The three cyclic pieces of the amalgam acting on `m`.
pub struct AmalgamFactors {
    pub a: CyclicAction,
    pub b: CyclicAction,
    pub c: CyclicAction,
}

impl AmalgamFactors {
    pub fn of(m: &GroupModule) -> Result<Self> {
        let base = m.base();
        let a = CyclicAction::new(4, m.action(GEN_S)?.clone(), base)?;
        let b = CyclicAction::new(6, m.action(GEN_U)?.clone(), base)?;
        let c = a.subgroup(2)?;
        if c != b.subgroup(3)? {
            return Err(Error::RelationFails("S^2 = U^3".into()));
        }
        Ok(Self { a, b, c })
    }
}

pub fn build_total_complex(m: &GroupModule, top_degree: usize) -> Result<AmalgamComplex> {
    let AmalgamFactors { a, b, c } = AmalgamFactors::of(m)?;
    let r = m.rank();
    let rank_at = |n: usize| if n == 0 { 2 * r } else { 3 * r };
    let ranks: Vec<usize> = (0..=top_degree).map(rank_at).collect();

    let mut differentials = Vec::with_capacity(top_degree);
    for n in 0..top_degree {
        let mut d = IntegerMatrix::zeros(rank_at(n + 1), rank_at(n));
        d.set_block(0, 0, a.differential(n));
        d.set_block(r, r, b.differential(n));
        d.set_block(2 * r, 0, &restriction_cochain_matrix(&a, 2, n)?);
        d.set_block(2 * r, r, &restriction_cochain_matrix(&b, 3, n)?.neg());
        if n > 0 {
            d.set_block(2 * r, 2 * r, &c.differential(n - 1).neg());
        }
        differentials.push(d);
    }
    let complex = CochainComplex::new(ranks, differentials, m.base())?;
    Ok(AmalgamComplex { complex, module_label: m.label().to_string(), module_rank: r })
}

/// `H^p(SL_2(Z), M)` for any module carrying actions of `S` and `U`.
pub fn sl2z_cohomology_module(m: &GroupModule, p: usize) -> Result<FgAbelianGroup> {
    build_total_complex(m, p + 2)?.cohomology_at(p)
}

/// `H^0, ..., H^max_p` from a single total complex.
pub fn sl2z_cohomology_row(m: &GroupModule, max_p: usize) -> Result<Vec<FgAbelianGroup>> {
    let total = build_total_complex(m, max_p + 1)?;
    (0..=max_p).map(|p| total.cohomology_at(p)).collect()
}

/// `H^p(SL_2(Z), Sym^k R^2)`; localized answers come from the integral one.
pub fn sl2z_cohomology(k: usize, p: usize, ring: &CoefficientRing) -> Result<FgAbelianGroup> {
    match ring {
        CoefficientRing::Integers => {
            sl2z_cohomology_module(&GroupModule::sym_power(k, BaseRing::Integers)?, p)
        }
        CoefficientRing::Mod(q) => {
            let base = BaseRing::prime_field(*q)?;
            sl2z_cohomology_module(&GroupModule::sym_power(k, base)?, p)
        }
        CoefficientRing::Localized(primes) => {
            if let Some(&bad) = primes.iter().find(|&&q| !crate::linalg::is_prime(q)) {
                return Err(Error::NotPrime(bad));
            }
            Ok(sl2z_cohomology(k, p, &CoefficientRing::Integers)?.localize(primes))
        }
    }
}
