//! Inhomogeneous cochains of a lattice `Λ = Z^d` with coefficients in
//! `Q`, evaluated on demand, and the alternating maps
//!
//! ```text
//! a^k(φ_1 ∧ ... ∧ φ_k)(λ_1, ..., λ_k) = (1/k!) Σ_σ sgn(σ) Π φ_i(λ_σ(i))
//! ```
//!
//! Identities are certified by exact evaluation on seeded random tuples.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Entries of sampled lattice vectors lie in `-SAMPLE_BOUND..=SAMPLE_BOUND`.
pub const SAMPLE_BOUND: i64 = 10;

type Evaluator = Arc<dyn Fn(&[Vec<i64>]) -> BigRational + Send + Sync>;

/// A function `Λ^n -> Q`.
#[derive(Clone)]
pub struct Cochain {
    arity: usize,
    rank: usize,
    eval: Evaluator,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(arity {}, rank {})", self.arity, self.rank)
    }
}

impl Cochain {
    pub fn new(
        arity: usize,
        rank: usize,
        eval: impl Fn(&[Vec<i64>]) -> BigRational + Send + Sync + 'static,
    ) -> Self {
        Self { arity, rank, eval: Arc::new(eval) }
    }

    pub fn zero(arity: usize, rank: usize) -> Self {
        Self::new(arity, rank, |_| BigRational::zero())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn eval(&self, args: &[Vec<i64>]) -> Result<BigRational> {
        if args.len() != self.arity || args.iter().any(|v| v.len() != self.rank) {
            return Err(Error::Shape(format!(
                "cochain of arity {} on Z^{} evaluated at {} arguments",
                self.arity,
                self.rank,
                args.len()
            )));
        }
        Ok((self.eval)(args))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_kind(other)?;
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Ok(Self::new(self.arity, self.rank, move |x| f(x) - g(x)))
    }

    /// `(f ∪ g)(λ_1..λ_{p+q}) = f(λ_1..λ_p) g(λ_{p+1}..λ_{p+q})`.
    pub fn cup(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::Shape("cup of cochains on different lattices".into()));
        }
        let (f, g, p) = (self.eval.clone(), other.eval.clone(), self.arity);
        Ok(Self::new(self.arity + other.arity, self.rank, move |x| f(&x[..p]) * g(&x[p..])))
    }

    fn check_same_kind(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity || self.rank != other.rank {
            return Err(Error::Shape("cochains of different arity or rank".into()));
        }
        Ok(())
    }
}

/// A linear form `Λ -> Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVector {
    pub coeffs: Vec<BigRational>,
}

impl DualVector {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
    }

    /// The `i`-th coordinate function on `Z^d`.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut c = vec![0; d];
        c[i] = 1;
        Self::from_integers(&c)
    }

    pub fn zero(d: usize) -> Self {
        Self::from_integers(&vec![0; d])
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn pair(&self, v: &[i64]) -> BigRational {
        self.coeffs
            .iter()
            .zip(v)
            .filter(|(_, &x)| x != 0)
            .map(|(c, &x)| c * BigRational::from_integer(x.into()))
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn as_cochain(&self) -> Cochain {
        let phi = self.clone();
        Cochain::new(1, self.rank(), move |x| phi.pair(&x[0]))
    }
}

/// ```text
/// (d f)(λ_1..λ_{n+1}) = f(λ_2..λ_{n+1})
///     + Σ_{i=1..n} (-1)^i f(.., λ_i + λ_{i+1}, ..)
///     + (-1)^{n+1} f(λ_1..λ_n)
/// ```
pub fn cochain_differential(f: &Cochain) -> Cochain {
    let n = f.arity;
    let inner = f.eval.clone();
    Cochain::new(n + 1, f.rank, move |x| {
        let mut total = inner(&x[1..]);
        for i in 0..n {
            let mut merged: Vec<Vec<i64>> = Vec::with_capacity(n);
            merged.extend_from_slice(&x[..i]);
            merged.push(x[i].iter().zip(&x[i + 1]).map(|(a, b)| a + b).collect());
            merged.extend_from_slice(&x[i + 2..]);
            let term = inner(&merged);
            if i % 2 == 0 {
                total -= term;
            } else {
                total += term;
            }
        }
        let last = inner(&x[..n]);
        if n.is_multiple_of(2) {
            total - last
        } else {
            total + last
        }
    })
}

/// Permutations of `0..k` with their signs.
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, bool)>) {
        if prefix.len() == used.len() {
            let inversions = (0..prefix.len())
                .flat_map(|i| (i + 1..prefix.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), inversions % 2 == 0));
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `a^k(φ_1 ∧ ... ∧ φ_k)` for `k <= d`.
pub fn splitting_map(phis: &[DualVector]) -> Result<Cochain> {
    let rank = phis.first().map_or(0, DualVector::rank);
    if phis.iter().any(|p| p.rank() != rank) {
        return Err(Error::Shape("linear forms on lattices of different rank".into()));
    }
    if phis.len() > rank {
        return Err(Error::TooManyForms { forms: phis.len(), rank });
    }
    let k = phis.len();
    let phis = phis.to_vec();
    let perms = signed_permutations(k);
    let inv_fact = BigRational::new(BigInt::one(), factorial(k));
    Ok(Cochain::new(k, rank, move |x| {
        let mut sum = BigRational::zero();
        for (sigma, even) in &perms {
            let term: BigRational = phis.iter().zip(sigma).map(|(phi, &s)| phi.pair(&x[s])).product();
            if *even {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum * &inv_fact
    }))
}

/// `g(λ) = -1/2 φ_1(λ) φ_2(λ)`, with `d g = φ_1 ∪ φ_2 - a^2(φ_1 ∧ φ_2)`.
pub fn cup_primitive(phi1: &DualVector, phi2: &DualVector) -> Cochain {
    let (a, b) = (phi1.clone(), phi2.clone());
    let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    Cochain::new(1, phi1.rank(), move |x| &minus_half * a.pair(&x[0]) * b.pair(&x[0]))
}

/// Seeded tuples of `arity` vectors in `Z^rank`.
pub fn sample_tuples(arity: usize, rank: usize, samples: usize, seed: u64) -> Vec<Vec<Vec<i64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            (0..arity)
                .map(|_| (0..rank).map(|_| rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)).collect())
                .collect()
        })
        .collect()
}

/// Outcome of a pointwise identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub label: String,
    pub samples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `lhs == rhs` at every sample.
pub fn check_equal(label: &str, lhs: &Cochain, rhs: &Cochain, samples: &[Vec<Vec<i64>>]) -> Result<IdentityReport> {
    lhs.check_same_kind(rhs)?;
    let mut failures = 0;
    let mut first_failure = None;
    for x in samples {
        let (a, b) = (lhs.eval(x)?, rhs.eval(x)?);
        if a != b {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("at {x:?}: {a} != {b}"));
        }
    }
    Ok(IdentityReport { label: label.to_string(), samples: samples.len(), failures, first_failure })
}

/// Seeded integer linear forms with coefficients in `-3..=3`.
pub fn sample_forms(k: usize, d: usize, seed: u64) -> Vec<DualVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f0e5);
    (0..k)
        .map(|_| DualVector::from_integers(&(0..d).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>()))
        .collect()
}

/// `d a^k(φ_1 ∧ ... ∧ φ_k) = 0` for seeded forms on `Z^d`.
pub fn verify_d_after_a(k: usize, d: usize, samples: usize, seed: u64) -> Result<IdentityReport> {
    let phis = sample_forms(k, d, seed);
    let da = cochain_differential(&splitting_map(&phis)?);
    let points = sample_tuples(k + 1, d, samples, seed);
    check_equal(&format!("d a^{k} = 0 on Z^{d}"), &da, &Cochain::zero(k + 1, d), &points)
}

/// `φ_1 ∪ φ_2 - a^2(φ_1 ∧ φ_2) = d g` with `g` from [`cup_primitive`].
pub fn verify_cup_primitive(
    phi1: &DualVector,
    phi2: &DualVector,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    let d = phi1.rank();
    if d < 2 {
        return Err(Error::TooManyForms { forms: 2, rank: d });
    }
    let cup = phi1.as_cochain().cup(&phi2.as_cochain())?;
    let lhs = cup.sub(&splitting_map(&[phi1.clone(), phi2.clone()])?)?;
    let rhs = cochain_differential(&cup_primitive(phi1, phi2));
    let points = sample_tuples(2, d, samples, seed);
    check_equal(&format!("cup primitive on Z^{d}"), &lhs, &rhs, &points)
}
