//! The `E_2` page of `J: M_1 -> M_{1,1}`, its dagger part, and the mod-2
//! counting argument that forces degeneration in degrees below 10.
//!
//! `E_2^{p,q}` vanishes for odd `q` and equals `H^p(SL_2(Z), Sym^{q/2})` for
//! even `q`. The dagger part in degree `n` collects the entries with `q > 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::amalgam::{sl2z_cohomology, sl2z_cohomology_row, CoefficientRing};
use crate::error::{Error, Result};
use crate::linalg::{is_prime, BaseRing, FgAbelianGroup, IntegerMatrix};
use crate::modules::{sym_power_matrix, GeneratorSet, GroupModule};

/// Largest degree in which degeneration is established by [`fty_consistency`].
pub const MAX_PROVEN_DEGREE: usize = 9;

/// Dimensions of the dagger part of `H^n(M_1, F_2)` for `n = 0..=8`.
pub const FTY_DAGGER_DIMS: [usize; 9] = [0, 0, 0, 1, 2, 3, 4, 5, 6];

/// All entries `E_2^{p,q}` with `p + q <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    n_max: usize,
    entries: BTreeMap<(usize, usize), FgAbelianGroup>,
}

impl E2Page {
    pub fn compute(n_max: usize) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for q in 0..=n_max {
            if q % 2 == 1 {
                for p in 0..=n_max - q {
                    entries.insert((p, q), FgAbelianGroup::zero());
                }
                continue;
            }
            let m = GroupModule::sym_power(q / 2, BaseRing::Integers)?;
            for (p, g) in sl2z_cohomology_row(&m, n_max - q)?.into_iter().enumerate() {
                entries.insert((p, q), g);
            }
        }
        Ok(Self { n_max, entries })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn entry(&self, p: usize, q: usize) -> Option<&FgAbelianGroup> {
        self.entries.get(&(p, q))
    }

    /// Rows with `q > 0` form the dagger part; `q = 0` is the base row.
    pub fn is_dagger(q: usize) -> bool {
        q > 0
    }

    /// `(p, q)` and the entry for every `p + q = n`, base row first.
    pub fn diagonal(&self, n: usize) -> Vec<((usize, usize), &FgAbelianGroup)> {
        (0..=n.min(self.n_max))
            .filter_map(|q| {
                let pq = (n - q, q);
                self.entries.get(&pq).map(|g| (pq, g))
            })
            .collect()
    }

    pub fn dagger_sum(&self, n: usize) -> FgAbelianGroup {
        self.diagonal(n)
            .into_iter()
            .filter(|((_, q), _)| Self::is_dagger(*q))
            .map(|(_, g)| g)
            .sum()
    }
}

pub fn e2_entry(p: usize, q: usize) -> Result<FgAbelianGroup> {
    if q % 2 == 1 {
        return Ok(FgAbelianGroup::zero());
    }
    sl2z_cohomology(q / 2, p, &CoefficientRing::Integers)
}

/// `H^n(M_1, Z)^†` for `n <= 9`.
pub fn dagger_group(n: usize) -> Result<FgAbelianGroup> {
    if n > MAX_PROVEN_DEGREE {
        return Err(Error::DegenerationUnproven(n));
    }
    (1..=n / 2).map(|k| e2_entry(n - 2 * k, 2 * k)).sum()
}

/// `H^n(M_{1,1}, Z) = H^n(SL_2(Z), Z)`.
pub fn m11_group(n: usize) -> Result<FgAbelianGroup> {
    e2_entry(n, 0)
}

/// `H^n(M_1, Z[1/2])` for `n <= 9`.
pub fn half_inverted_group(n: usize) -> Result<FgAbelianGroup> {
    Ok(m11_group(n)?.direct_sum(&dagger_group(n)?).localize(&[2]))
}

/// `⊕_{p + 2k = n} H^p(SL_2(Z), Sym^k Z[1/2]^2)`, computed entry by entry.
pub fn half_inverted_e2_sum(n: usize) -> Result<FgAbelianGroup> {
    let half = CoefficientRing::Localized(vec![2]);
    (0..=n / 2).map(|k| sl2z_cohomology(k, n - 2 * k, &half)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FtyRow {
    pub n: usize,
    pub expected: usize,
    pub computed: usize,
    /// `dim H^n(M_1, Z)^† ⊗ F_2`
    pub dim_tensor: usize,
    /// `dim H^{n+1}(M_1, Z)^†[2]`
    pub dim_torsion: usize,
}

impl FtyRow {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FtyReport {
    pub rows: Vec<FtyRow>,
}

impl FtyReport {
    pub fn mismatches(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.matches()).map(|r| r.n).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// Universal-coefficient count of the mod-2 dagger part from the integral
/// groups, compared against [`FTY_DAGGER_DIMS`].
pub fn fty_consistency(n_max: usize) -> Result<FtyReport> {
    let last = FTY_DAGGER_DIMS.len() - 1;
    if n_max > last {
        return Err(Error::DegreeOutOfRange { degree: n_max, top: last });
    }
    let groups: Vec<FgAbelianGroup> = (0..=n_max + 1).map(dagger_group).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (dim_tensor, _) = groups[n].mod_p_dims(2)?;
        let (_, dim_torsion) = groups[n + 1].mod_p_dims(2)?;
        rows.push(FtyRow {
            n,
            expected: FTY_DAGGER_DIMS[n],
            computed: dim_tensor + dim_torsion,
            dim_tensor,
            dim_torsion,
        });
    }
    Ok(FtyReport { rows })
}

/// Evidence for `q`-torsion in `H^1(SL_2(Z), Sym^{q+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTorsionWitness {
    pub q: u64,
    /// Coefficients of `X^q Y - Y^q X` on the monomial basis of `Sym^{q+1}`, mod `q`.
    pub invariant_vector: Vec<u64>,
    pub fixed_by_s: bool,
    pub fixed_by_t: bool,
    pub h1: FgAbelianGroup,
    /// The first invariant factor of `h1` divisible by `q`.
    pub divisible_factor: Option<BigInt>,
}

impl PTorsionWitness {
    pub fn invariance_holds(&self) -> bool {
        self.fixed_by_s && self.fixed_by_t
    }

    pub fn passed(&self) -> bool {
        self.invariance_holds() && self.divisible_factor.is_some()
    }
}

/// Checks that `X^q Y - Y^q X` is fixed mod `q` by `S` and `T`, without
/// computing any cohomology.
pub fn dickson_invariance(q: u64) -> Result<(Vec<u64>, bool, bool)> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let k = q as usize + 1;
    let mut v = vec![BigInt::from(0); k + 1];
    v[1] = BigInt::from(1);
    v[q as usize] = BigInt::from(-1);
    let gens = GeneratorSet::standard();
    let fixed = |g: &IntegerMatrix| -> Result<bool> {
        let w = sym_power_matrix(g, k)?.apply(&v);
        Ok(w.iter().zip(&v).all(|(a, b)| (a - b).is_multiple_of(&BigInt::from(q))))
    };
    let fixed_by_s = fixed(&gens.s)?;
    let fixed_by_t = fixed(&gens.t())?;
    let vector = v
        .iter()
        .map(|x| u64::try_from(x.mod_floor(&BigInt::from(q))).expect("reduced mod q"))
        .collect();
    Ok((vector, fixed_by_s, fixed_by_t))
}

pub fn p_torsion_scan(q: u64) -> Result<PTorsionWitness> {
    if q == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    let (invariant_vector, fixed_by_s, fixed_by_t) = dickson_invariance(q)?;
    let h1 = sl2z_cohomology(q as usize + 1, 1, &CoefficientRing::Integers)?;
    let qb = BigInt::from(q);
    let divisible_factor = h1.invariant_factors().iter().find(|d| d.is_multiple_of(&qb)).cloned();
    Ok(PTorsionWitness { q, invariant_vector, fixed_by_s, fixed_by_t, h1, divisible_factor })
}
