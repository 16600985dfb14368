//! Exact exterior algebra on `H^1` of `(T × S^1)^k` for a rank-2 torus `T`,
//! and the comparison of the two ways of sending `Sym^k H^1(T)` into
//! `H^{2k}((T × S^1)^k)`.
//!
//! Generator order: the two torus duals of copy `i` are `2i` and `2i + 1`,
//! the circle duals follow at `2k + i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::splitting::DualVector;

/// Indexing of generators for `k` torus copies and `k` circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub torus_copies: usize,
    pub circles: usize,
}

impl Layout {
    pub fn new(torus_copies: usize, circles: usize) -> Self {
        Self { torus_copies, circles }
    }

    pub fn generators(&self) -> usize {
        2 * self.torus_copies + self.circles
    }

    pub fn torus_dual(&self, copy: usize, i: usize) -> usize {
        2 * copy + i
    }

    pub fn circle_dual(&self, i: usize) -> usize {
        2 * self.torus_copies + i
    }
}

/// An integral element of the exterior algebra; monomials are bitmasks of
/// generator indices, read in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    layout: Layout,
    terms: BTreeMap<u64, BigInt>,
}

impl ExteriorElement {
    pub fn zero(layout: Layout) -> Self {
        Self { layout, terms: BTreeMap::new() }
    }

    pub fn one(layout: Layout) -> Self {
        Self::monomial(layout, &[])
    }

    /// `x_{i_1} ∧ ... ∧ x_{i_r}` in the order given.
    pub fn monomial(layout: Layout, indices: &[usize]) -> Self {
        let mut e = Self { layout, terms: BTreeMap::from([(0, BigInt::one())]) };
        for &i in indices {
            assert!(i < layout.generators(), "generator {i} out of range");
            e = e.wedge(&Self { layout, terms: BTreeMap::from([(1u64 << i, BigInt::one())]) });
        }
        e
    }

    pub fn generator(layout: Layout, i: usize) -> Self {
        Self::monomial(layout, &[i])
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u64) -> BigInt {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    /// Degree of a homogeneous element; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn accumulate(terms: &mut BTreeMap<u64, BigInt>, mask: u64, c: BigInt) {
        let entry = terms.entry(mask).or_default();
        *entry += c;
        if entry.is_zero() {
            terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, c) in &other.terms {
            Self::accumulate(&mut terms, m, c.clone());
        }
        Self { layout: self.layout, terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.layout);
        }
        Self { layout: self.layout, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x * y;
                Self::accumulate(&mut terms, a | b, if merge_sign(a, b) { -c } else { c });
            }
        }
        Self { layout: self.layout, terms }
    }
}

/// Whether sorting the concatenation of `a` then `b` is an odd permutation.
fn merge_sign(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = (0..self.layout.generators())
            .map(|i| {
                let k = self.layout.torus_copies;
                if i < 2 * k {
                    format!("x{}_{}", i % 2 + 1, i / 2 + 1)
                } else {
                    format!("e_{}", i - 2 * k + 1)
                }
            })
            .collect();
        let mut first = true;
        for (&m, c) in &self.terms {
            let word: Vec<&str> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| names[i].as_str()).collect();
            let word = if word.is_empty() { "1".to_string() } else { word.join("^") };
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let sep = if first { "" } else { " " };
            if mag.is_one() {
                write!(f, "{sep}{sign}{word}")?;
            } else {
                write!(f, "{sep}{sign}{mag} {word}")?;
            }
            first = false;
        }
        Ok(())
    }
}

fn integral_coefficients(lambda: &DualVector) -> Result<Vec<BigInt>> {
    lambda
        .coeffs
        .iter()
        .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegral) })
        .collect()
}

/// The torus dual `λ` placed on copy `copy`.
fn lattice_form(layout: Layout, copy: usize, coeffs: &[BigInt]) -> ExteriorElement {
    coeffs.iter().enumerate().fold(ExteriorElement::zero(layout), |acc, (i, c)| {
        acc.add(&ExteriorElement::generator(layout, layout.torus_dual(copy, i)).scale(c))
    })
}

/// Pullback of `λ ∈ H^2(BT)` to `H^2(T × S^1)`: the class `ε ∧ λ`, whose
/// value on `(x, n) ∧ (y, m)` is `n λ(y) - m λ(x)`.
pub fn pullback_on_h2(lambda: &DualVector) -> Result<ExteriorElement> {
    if lambda.rank() != 2 {
        return Err(Error::Shape(format!("expected a form on Z^2, got Z^{}", lambda.rank())));
    }
    let layout = Layout::new(1, 1);
    let coeffs = integral_coefficients(lambda)?;
    Ok(ExteriorElement::generator(layout, layout.circle_dual(0)).wedge(&lattice_form(layout, 0, &coeffs)))
}

/// Evaluates a degree-2 element of the `k = 1` algebra on `(x, n) ∧ (y, m)`.
pub fn evaluate_h2(e: &ExteriorElement, x: [i64; 2], n: i64, y: [i64; 2], m: i64) -> BigInt {
    let u = [x[0], x[1], n];
    let v = [y[0], y[1], m];
    e.terms()
        .filter(|(mask, _)| mask.count_ones() == 2)
        .map(|(mask, c)| {
            let i = mask.trailing_zeros() as usize;
            let j = 63 - mask.leading_zeros() as usize;
            c * BigInt::from(u[i] * v[j] - u[j] * v[i])
        })
        .sum()
}

/// One basis vector of `Sym^k H^1(T)` and its images along the two paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareRow {
    /// Exponent of the second torus dual in the monomial.
    pub power_of_x2: usize,
    pub top: ExteriorElement,
    pub bottom: ExteriorElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub k: usize,
    pub rows: Vec<SquareRow>,
    /// The global sign `s` with `top = s · bottom` on every row, if one exists.
    pub sign: Option<i32>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.sign.is_some()
    }
}

/// The factors `x1^(k-j) x2^j` as a list of coordinate indices.
fn monomial_factors(k: usize, j: usize) -> Vec<usize> {
    let mut f = vec![0; k - j];
    f.extend(std::iter::repeat_n(1, j));
    f
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn top_path(layout: Layout, factors: &[usize]) -> ExteriorElement {
    let k = layout.torus_copies;
    factors.iter().fold(ExteriorElement::one(layout), |acc, &coord| {
        let pulled = (0..k).fold(ExteriorElement::zero(layout), |s, i| {
            let term = ExteriorElement::monomial(layout, &[layout.circle_dual(i), layout.torus_dual(i, coord)]);
            s.add(&term)
        });
        acc.wedge(&pulled)
    })
}

fn bottom_path(layout: Layout, factors: &[usize]) -> ExteriorElement {
    let k = layout.torus_copies;
    let circles: Vec<usize> = (0..k).map(|i| layout.circle_dual(i)).collect();
    let orientation = ExteriorElement::monomial(layout, &circles);
    permutations(k).iter().fold(ExteriorElement::zero(layout), |acc, sigma| {
        let torus: Vec<usize> = (0..k).map(|i| layout.torus_dual(i, factors[sigma[i]])).collect();
        acc.add(&orientation.wedge(&ExteriorElement::monomial(layout, &torus)))
    })
}

fn square_report(k: usize, flip: Option<usize>) -> Result<SquareReport> {
    if k == 0 || k > 2 {
        return Err(Error::Shape(format!("the square is checked for k = 1, 2, not {k}")));
    }
    let layout = Layout::new(k, k);
    let rows: Vec<SquareRow> = (0..=k)
        .map(|j| {
            let factors = monomial_factors(k, j);
            let mut bottom = bottom_path(layout, &factors);
            if flip == Some(j) {
                bottom = bottom.neg();
            }
            SquareRow { power_of_x2: j, top: top_path(layout, &factors), bottom }
        })
        .collect();
    let sign = [1, -1].into_iter().find(|&s| {
        rows.iter().all(|r| r.top == r.bottom.scale(&BigInt::from(s)) && !r.top.is_zero())
    });
    Ok(SquareReport { k, rows, sign })
}

pub fn verify_square(k: usize) -> Result<SquareReport> {
    square_report(k, None)
}

/// Control: the bottom path with the sign of one basis vector reversed.
pub fn verify_square_with_flip(k: usize, flipped: usize) -> Result<SquareReport> {
    square_report(k, Some(flipped))
}
