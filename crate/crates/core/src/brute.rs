//! Slow reference computations used to cross-check the main algorithms.
//!
//! * Cohomology of a cyclic group from the inhomogeneous bar complex
//!   (cochains are functions `G^n -> M`).
//! * Kernels and cokernels of small integer matrices from rational row
//!   reduction and determinantal divisors (gcds of minors).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::cyclic::CyclicAction;
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, CochainComplex, FgAbelianGroup, IntegerMatrix, RowEchelon};

/// Largest prime below `2^31`, used for certified modular ranks.
const LARGE_PRIME: u64 = 2_147_483_647;
const BACKUP_PRIME: u64 = 2_147_483_629;

/// Entries of `d^n` of the bar complex, one sparse row per `(g_1..g_{n+1}, i)`.
struct BarComplex {
    m: usize,
    r: usize,
    powers: Vec<Vec<i64>>,
}

impl BarComplex {
    fn new(a: &CyclicAction) -> Result<Self> {
        let m = a.order();
        let r = a.rank();
        let mut powers = Vec::with_capacity(m);
        let mut g = IntegerMatrix::identity(r);
        for _ in 0..m {
            let flat = g
                .entries()
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Shape("action entries too large".into())))
                .collect::<Result<Vec<_>>>()?;
            powers.push(flat);
            g = &g * a.generator();
        }
        Ok(Self { m, r, powers })
    }

    fn dim(&self, n: usize) -> usize {
        self.m.pow(n as u32) * self.r
    }

    fn index(&self, tuple: &[usize], i: usize) -> usize {
        tuple.iter().fold(0, |acc, &t| acc * self.m + t) * self.r + i
    }

    /// Row `(tuple, i)` of `d^n`, where `tuple` has length `n + 1`.
    fn row(&self, tuple: &[usize], i: usize) -> Vec<(usize, i64)> {
        let n = tuple.len() - 1;
        let mut out = Vec::with_capacity(self.r + n + 1);
        let g1 = &self.powers[tuple[0]];
        for j in 0..self.r {
            let c = g1[i * self.r + j];
            if c != 0 {
                out.push((self.index(&tuple[1..], j), c));
            }
        }
        let mut merged = Vec::with_capacity(n);
        for k in 0..n {
            merged.clear();
            merged.extend_from_slice(&tuple[..k]);
            merged.push((tuple[k] + tuple[k + 1]) % self.m);
            merged.extend_from_slice(&tuple[k + 2..]);
            let sign = if k % 2 == 0 { -1 } else { 1 };
            out.push((self.index(&merged, i), sign));
        }
        out.push((self.index(&tuple[..n], i), if n.is_multiple_of(2) { -1 } else { 1 }));
        out
    }

    fn for_each_row(&self, n: usize, mut f: impl FnMut(usize, Vec<(usize, i64)>) -> bool) {
        let count = self.m.pow(n as u32 + 1);
        let mut tuple = vec![0; n + 1];
        for code in 0..count {
            let mut c = code;
            for t in tuple.iter_mut().rev() {
                *t = c % self.m;
                c /= self.m;
            }
            for i in 0..self.r {
                if !f(code * self.r + i, self.row(&tuple, i)) {
                    return;
                }
            }
        }
    }

    fn matrix(&self, n: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.dim(n + 1), self.dim(n));
        self.for_each_row(n, |row, entries| {
            for (col, c) in entries {
                d[(row, col)] += c;
            }
            true
        });
        d
    }

    /// Rank of `d^n` mod `p`, stopping once `cap` is reached.
    fn rank_mod_p(&self, n: usize, p: u64, cap: usize) -> usize {
        let cols = self.dim(n);
        let mut echelon = RowEchelon::new(p, cols);
        let mut dense = vec![0u64; cols];
        self.for_each_row(n, |_, entries| {
            dense.iter_mut().for_each(|x| *x = 0);
            for (col, c) in entries {
                dense[col] = (dense[col] + c.rem_euclid(p as i64) as u64) % p;
            }
            echelon.insert(&dense);
            echelon.rank() < cap
        });
        echelon.rank()
    }
}

/// Dense size below which the last bar differential is reduced exactly.
const EXACT_LIMIT: usize = 100_000;

/// `H^0..=H^max_n` of `<g>` from the bar complex.
///
/// Ranks of all but the last differential are exact. For large last
/// differentials the rank is certified by `rank_p <= rank_Q <= dim C^n - rank
/// d^(n-1)`, which pins it down whenever `H^n` is finite; if the bounds do not
/// meet for two large primes the result is inconclusive.
pub fn bar_cyclic_cohomology(a: &CyclicAction, max_n: usize) -> Result<Vec<FgAbelianGroup>> {
    if a.base().characteristic() != 0 {
        return Err(Error::Shape("bar oracle works over Z".into()));
    }
    let bar = BarComplex::new(a)?;
    let mut incoming: Vec<BigInt> = Vec::new();
    let mut out = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let dim = bar.dim(n);
        let outgoing_rank = if n < max_n || dim * bar.dim(n + 1) <= EXACT_LIMIT {
            let factors = invariant_factors(&bar.matrix(n));
            let rank = factors.len();
            if n < max_n {
                let torsion = std::mem::replace(&mut incoming, factors);
                out.push(FgAbelianGroup::from_parts(dim - rank - torsion.len(), torsion));
                continue;
            }
            rank
        } else {
            let cap = dim - incoming.len();
            [LARGE_PRIME, BACKUP_PRIME]
                .iter()
                .map(|&p| bar.rank_mod_p(n, p, cap))
                .find(|&r| r == cap)
                .ok_or_else(|| Error::Inconclusive(format!("rank of bar differential {n}")))?
        };
        let free = dim - outgoing_rank - incoming.len();
        out.push(FgAbelianGroup::from_parts(free, std::mem::take(&mut incoming)));
    }
    Ok(out)
}

/// Rank over `Q` by Gaussian elimination on rationals.
pub fn rational_rank(a: &IntegerMatrix) -> usize {
    let mut rows: Vec<Vec<BigRational>> = a
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by cofactor expansion along the first row.
fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * laplace_det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last = subsets(n - 1, k - 1);
    with_last.iter_mut().for_each(|s| s.push(n - 1));
    let mut out = subsets(n - 1, k);
    out.extend(with_last);
    out
}

/// `D_i` = gcd of all `i x i` minors, for `i = 1..` while non-zero.
pub fn determinantal_divisors(a: &IntegerMatrix) -> Vec<BigInt> {
    let rows = a.to_rows();
    let mut out = Vec::new();
    for i in 1..=a.rows().min(a.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), i) {
            for cs in subsets(a.cols(), i) {
                let minor: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                g = g.gcd(&laplace_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// Invariant factors as successive quotients of determinantal divisors.
pub fn elementary_divisors(a: &IntegerMatrix) -> Vec<BigInt> {
    let d = determinantal_divisors(a);
    let mut prev = BigInt::from(1);
    d.into_iter()
        .map(|x| {
            let q = &x / &prev;
            prev = x;
            q
        })
        .collect()
}

/// `H^n` of a complex over `Z` via [`rational_rank`] and [`elementary_divisors`].
pub fn oracle_cohomology_at(c: &CochainComplex, n: usize) -> Result<FgAbelianGroup> {
    if c.base().characteristic() != 0 {
        return Err(Error::Shape("oracle works over Z".into()));
    }
    if n > c.top_degree() {
        return Err(Error::DegreeOutOfRange { degree: n, top: c.top_degree() });
    }
    let out = c.differential(n).map_or(0, rational_rank);
    let (inc, torsion) = match n.checked_sub(1).and_then(|m| c.differential(m)) {
        Some(d) => (rational_rank(d), elementary_divisors(d)),
        None => (0, Vec::new()),
    };
    Ok(FgAbelianGroup::from_parts(c.ranks()[n] - out - inc, torsion))
}

/// Blocks of finite order dividing `m`, used to assemble random actions.
fn blocks_for(m: usize) -> Vec<IntegerMatrix> {
    let mut b = vec![IntegerMatrix::identity(1)];
    if m.is_multiple_of(2) {
        b.push(IntegerMatrix::scalar(1, -1));
        b.push(IntegerMatrix::from_rows(&[[0, 1], [1, 0]]));
        b.push(IntegerMatrix::scalar(2, -1));
    }
    if m.is_multiple_of(3) {
        b.push(IntegerMatrix::from_rows(&[[-1, -1], [1, 0]]));
        b.push(IntegerMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]));
    }
    if m.is_multiple_of(4) {
        b.push(IntegerMatrix::from_rows(&[[0, -1], [1, 0]]));
    }
    if m.is_multiple_of(6) {
        b.push(IntegerMatrix::from_rows(&[[0, -1], [1, 1]]));
    }
    b
}

/// A random integral action of `Z/m` on `Z^r` with `r <= max_rank` and
/// entries in `[-2, 2]`: a block sum of small finite-order matrices,
/// conjugated by a random unimodular matrix when the entries stay small.
pub fn random_cyclic_action(rng: &mut impl Rng, m: usize, max_rank: usize) -> Result<CyclicAction> {
    let blocks = blocks_for(m);
    let target = rng.gen_range(1..=max_rank);
    let mut chosen: Vec<IntegerMatrix> = Vec::new();
    let mut r = 0;
    while r < target {
        let fitting: Vec<&IntegerMatrix> = blocks.iter().filter(|b| r + b.rows() <= target).collect();
        let b = fitting[rng.gen_range(0..fitting.len())].clone();
        r += b.rows();
        chosen.push(b);
    }
    let mut g = IntegerMatrix::zeros(r, r);
    let mut at = 0;
    for b in &chosen {
        g.set_block(at, at, b);
        at += b.rows();
    }
    for _ in 0..20 {
        let (p, p_inv) = random_unimodular(rng, r);
        let conj = &(&p * &g) * &p_inv;
        if conj.max_abs_entry() <= BigInt::from(2) {
            return CyclicAction::integral(m, conj);
        }
    }
    CyclicAction::integral(m, g)
}

fn random_unimodular(rng: &mut impl Rng, r: usize) -> (IntegerMatrix, IntegerMatrix) {
    let mut p = IntegerMatrix::identity(r);
    let mut p_inv = IntegerMatrix::identity(r);
    if r < 2 {
        return (p, p_inv);
    }
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..r);
        let j = (i + rng.gen_range(1..r)) % r;
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntegerMatrix::identity(r);
        e[(i, j)] = BigInt::from(s);
        let mut e_inv = IntegerMatrix::identity(r);
        e_inv[(i, j)] = BigInt::from(-s);
        p = &e * &p;
        p_inv = &p_inv * &e_inv;
    }
    (p, p_inv)
}

/// A random complex over `Z` with 2 or 3 terms of rank at most 4 and
/// entries in `[-3, 3]`; the second differential is drawn from the left
/// kernel of the first.
pub fn random_small_complex(rng: &mut impl Rng) -> CochainComplex {
    let terms = rng.gen_range(2..=3);
    let ranks: Vec<usize> = (0..terms).map(|_| rng.gen_range(1..=4)).collect();
    let random = |rng: &mut dyn rand::RngCore, rows: usize, cols: usize| {
        IntegerMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-3i64..=3)))
    };
    let d0 = random(rng, ranks[1], ranks[0]);
    let mut ds = vec![d0.clone()];
    if terms == 3 {
        let smith = crate::linalg::smith_normal_form(&d0);
        let rank = smith.diagonal_entries().iter().filter(|x| !x.is_zero()).count();
        let kernel: Vec<Vec<BigInt>> = smith.left.to_rows().into_iter().skip(rank).collect();
        let mut d1 = IntegerMatrix::zeros(ranks[2], ranks[1]);
        for _ in 0..10 {
            let coeffs: Vec<Vec<i64>> =
                (0..ranks[2]).map(|_| kernel.iter().map(|_| rng.gen_range(-1..=1)).collect()).collect();
            let candidate = IntegerMatrix::from_fn(ranks[2], ranks[1], |i, j| {
                kernel.iter().zip(&coeffs[i]).map(|(row, &c)| BigInt::from(c) * &row[j]).sum()
            });
            if candidate.max_abs_entry() <= BigInt::from(3) {
                d1 = candidate;
                break;
            }
        }
        ds.push(d1);
    }
    CochainComplex::new(ranks, ds, crate::linalg::BaseRing::Integers).expect("d^2 = 0 by construction")
}

/// Tally of an oracle comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleSummary {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }
}

/// Periodic-resolution cohomology versus the bar complex on `count` random
/// actions spread over `m ∈ {2, 3, 4, 6}`, degrees `0..=3`.
pub fn cyclic_oracle_agreement(rng: &mut impl Rng, count: usize) -> Result<OracleSummary> {
    let mut summary = OracleSummary::default();
    for t in 0..count {
        let m = [2, 3, 4, 6][t % 4];
        let a = random_cyclic_action(rng, m, 3)?;
        let bar = bar_cyclic_cohomology(&a, 3)?;
        for (n, expected) in bar.iter().enumerate() {
            let got = crate::cyclic::cyclic_cohomology(&a, n)?;
            summary.checked += 1;
            if &got != expected {
                summary.mismatches.push(format!("m = {m}, g = {}, H^{n}: {got} vs {expected}", a.generator()));
            }
        }
    }
    Ok(summary)
}

/// `cohomology_at` versus [`oracle_cohomology_at`] on `count` random complexes.
pub fn linalg_oracle_agreement(rng: &mut impl Rng, count: usize) -> Result<OracleSummary> {
    let mut summary = OracleSummary::default();
    for _ in 0..count {
        let c = random_small_complex(rng);
        for n in 0..=c.top_degree() {
            let got = c.cohomology_at(n)?;
            let expected = oracle_cohomology_at(&c, n)?;
            summary.checked += 1;
            if got != expected {
                summary.mismatches.push(format!("{:?} at {n}: {got} vs {expected}", c.differentials()));
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bar_complex_of_rotation() {
        let a = CyclicAction::integral(4, IntegerMatrix::from_rows(&[[0, -1], [1, 0]])).unwrap();
        let h: Vec<String> = bar_cyclic_cohomology(&a, 3).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(h, ["0", "Z/2", "0", "Z/2"]);
    }

    #[test]
    fn bar_complex_trivial_coefficients() {
        let a = CyclicAction::integral(3, IntegerMatrix::identity(1)).unwrap();
        let h: Vec<String> = bar_cyclic_cohomology(&a, 2).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(h, ["Z", "0", "Z/3"]);
    }

    #[test]
    fn minors_oracle() {
        let a = IntegerMatrix::diagonal(&[2, 3, 4]);
        assert_eq!(determinantal_divisors(&a), vec![BigInt::from(1), BigInt::from(2), BigInt::from(24)]);
        assert_eq!(elementary_divisors(&a), vec![BigInt::from(1), BigInt::from(2), BigInt::from(12)]);
        let s = IntegerMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(rational_rank(&s), 1);
        assert_eq!(elementary_divisors(&s), vec![BigInt::from(1)]);
    }

    #[test]
    fn random_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [2, 3, 4, 6] {
            let a = random_cyclic_action(&mut rng, m, 3).unwrap();
            assert!(a.generator().max_abs_entry() <= BigInt::from(2));
        }
        for _ in 0..20 {
            let c = random_small_complex(&mut rng);
            assert!(c.ranks().iter().all(|&r| (1..=4).contains(&r)));
            assert!(c.differentials().iter().all(|d| d.max_abs_entry() <= BigInt::from(3)));
        }
    }

    #[test]
    fn small_agreement_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(cyclic_oracle_agreement(&mut rng, 4).unwrap().passed());
        assert!(linalg_oracle_agreement(&mut rng, 10).unwrap().passed());
    }
}
