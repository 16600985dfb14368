//! The canonical torsor under `M[2]` built from `M = (Z/4)^2`, and a
//! brute-force `H^1` solver for small finite groups acting on `F_p^n`.
//!
//! Doubling sends `M*` (elements of exact order 4) onto `M[2]*`, and
//! factors through `M*/±1` as a 2:1 cover. `T` is the set of ways to split
//! that cover into two sections.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{is_prime, RowEchelon};

/// An element of `(Z/4)^2`.
pub type Elem = [u8; 2];

fn add(x: Elem, y: Elem) -> Elem {
    [(x[0] + y[0]) % 4, (x[1] + y[1]) % 4]
}

fn neg(x: Elem) -> Elem {
    [(4 - x[0]) % 4, (4 - x[1]) % 4]
}

fn double(x: Elem) -> Elem {
    add(x, x)
}

/// Class of `x` in `M*/±1`, represented by the smaller of `x` and `-x`.
fn class_of(x: Elem) -> Elem {
    x.min(neg(x))
}

/// A 2x2 matrix over `Z/4`, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2Z4(pub [[u8; 2]; 2]);

impl Mat2Z4 {
    pub const IDENTITY: Self = Self([[1, 0], [0, 1]]);

    pub fn new(rows: [[i64; 2]; 2]) -> Self {
        Self(rows.map(|r| r.map(|x| x.rem_euclid(4) as u8)))
    }

    pub fn det(&self) -> u8 {
        let [[a, b], [c, d]] = self.0;
        (a * d % 4 + 4 - b * c % 4) % 4
    }

    pub fn is_invertible(&self) -> bool {
        self.det() % 2 == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.0, other.0);
        let mut out = [[0u8; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 4;
            }
        }
        Self(out)
    }

    pub fn apply(&self, v: Elem) -> Elem {
        let m = self.0;
        [(m[0][0] * v[0] + m[0][1] * v[1]) % 4, (m[1][0] * v[0] + m[1][1] * v[1]) % 4]
    }

    /// Reduction mod 2 as rows over `F_2`.
    pub fn mod2(&self) -> Vec<Vec<u64>> {
        self.0.iter().map(|r| r.iter().map(|&x| u64::from(x % 2)).collect()).collect()
    }
}

impl fmt::Display for Mat2Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// All invertible 2x2 matrices over `Z/4`, in lexicographic order.
pub fn gl2_z4() -> Vec<Mat2Z4> {
    let mut out = Vec::new();
    for code in 0..256u32 {
        let e = |i: u32| ((code >> (2 * i)) & 3) as u8;
        let m = Mat2Z4([[e(3), e(2)], [e(1), e(0)]]);
        if m.is_invertible() {
            out.push(m);
        }
    }
    out
}

/// A permutation of `0..n`; `p.0[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == i).collect()
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lengths = Vec::new();
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

/// One element of `T`: the section containing the least class of `M*/±1`.
pub type Section = BTreeSet<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorConfiguration {
    pub m: Vec<Elem>,
    pub m_star: Vec<Elem>,
    /// `M*/±1`, by class representative.
    pub classes: Vec<Elem>,
    pub m2: Vec<Elem>,
    pub m2_star: Vec<Elem>,
    /// The two classes over each point of `M[2]*`.
    pub fibers: Vec<(Elem, [Elem; 2])>,
    pub t: Vec<Section>,
}

impl TorsorConfiguration {
    /// `2^(number of fibers)`: sections before identifying complementary pairs.
    pub fn raw_labelings(&self) -> usize {
        1 << self.fibers.len()
    }

    /// Canonical form of the partition `{s, complement of s}`.
    fn canonical(&self, section: Section) -> Section {
        if section.contains(&self.classes[0]) {
            section
        } else {
            self.classes.iter().copied().filter(|c| !section.contains(c)).collect()
        }
    }

    fn index_of(&self, section: Section) -> usize {
        let canon = self.canonical(section);
        self.t.iter().position(|s| *s == canon).expect("image is a partition into sections")
    }

    fn is_section(&self, s: &Section) -> bool {
        s.len() == self.fibers.len()
            && self.fibers.iter().all(|(_, pair)| pair.iter().filter(|c| s.contains(*c)).count() == 1)
    }

    /// Translation by `m ∈ M[2]` as a permutation of `T`.
    pub fn translation(&self, m: Elem) -> Result<Permutation> {
        if double(m) != [0, 0] {
            return Err(Error::Shape(format!("{m:?} is not 2-torsion")));
        }
        Ok(self.permutation_by(|x| add(x, m)))
    }

    fn permutation_by(&self, f: impl Fn(Elem) -> Elem) -> Permutation {
        Permutation(
            self.t
                .iter()
                .map(|s| {
                    let image: Section = s.iter().map(|&c| class_of(f(c))).collect();
                    debug_assert!(self.is_section(&image));
                    self.index_of(image)
                })
                .collect(),
        )
    }

    pub fn matrix_action(&self, g: &Mat2Z4) -> Result<Permutation> {
        if !g.is_invertible() {
            return Err(Error::NotInvertible("Z/4".into()));
        }
        Ok(self.permutation_by(|x| g.apply(x)))
    }

    /// Orbit of `T[index]` under `M[2]`, in the order of `m2`.
    pub fn translation_orbit(&self, index: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = Vec::new();
        for &m in &self.m2 {
            let j = self.translation(m).expect("2-torsion").0[index];
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        orbit
    }

    pub fn translation_stabilizer(&self, index: usize) -> Vec<Elem> {
        self.m2
            .iter()
            .copied()
            .filter(|&m| self.translation(m).expect("2-torsion").0[index] == index)
            .collect()
    }
}

pub fn build_canonical_torsor() -> TorsorConfiguration {
    let m: Vec<Elem> = (0..16u8).map(|i| [i / 4, i % 4]).collect();
    let m_star: Vec<Elem> = m.iter().copied().filter(|&x| double(x) != [0, 0]).collect();
    let classes: Vec<Elem> = m_star.iter().map(|&x| class_of(x)).collect::<BTreeSet<_>>().into_iter().collect();
    let m2: Vec<Elem> = m.iter().copied().filter(|&x| double(x) == [0, 0]).collect();
    let m2_star: Vec<Elem> = m2.iter().copied().filter(|&x| x != [0, 0]).collect();
    let fibers: Vec<(Elem, [Elem; 2])> = m2_star
        .iter()
        .map(|&y| {
            let over: Vec<Elem> = classes.iter().copied().filter(|&c| double(c) == y).collect();
            (y, [over[0], over[1]])
        })
        .collect();

    // A section picks one class per fiber; keep the half containing classes[0].
    let t: Vec<Section> = (0..1usize << fibers.len())
        .map(|bits| {
            fibers
                .iter()
                .enumerate()
                .map(|(i, (_, pair))| pair[(bits >> i) & 1])
                .collect::<Section>()
        })
        .filter(|s| s.contains(&classes[0]))
        .collect();

    TorsorConfiguration { m, m_star, classes, m2, m2_star, fibers, t }
}

pub fn torsor_translation_orbit(config: &TorsorConfiguration, index: usize) -> Vec<usize> {
    config.translation_orbit(index)
}

pub fn torsor_matrix_action(config: &TorsorConfiguration, g: &Mat2Z4) -> Result<Permutation> {
    config.matrix_action(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NontrivialityWitness {
    pub nontrivial: bool,
    pub generator: Mat2Z4,
    pub permutation: Permutation,
}

/// `[[1, 1], [0, 1]]` fixes no element of `T`, so `T` has no invariant point.
pub fn torsor_nontriviality_witness() -> NontrivialityWitness {
    let config = build_canonical_torsor();
    let generator = Mat2Z4([[1, 1], [0, 1]]);
    let permutation = config.matrix_action(&generator).expect("invertible");
    NontrivialityWitness { nontrivial: permutation.fixed_points().is_empty(), generator, permutation }
}

/// A finite group by multiplication table, acting linearly on `F_p^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupData {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub p: u64,
    pub dim: usize,
    /// `actions[g]` as rows, entries reduced mod `p`.
    pub actions: Vec<Vec<Vec<u64>>>,
}

const SPOT_CHECKS: usize = 200;

impl FiniteGroupData {
    /// Validates the table and spot-checks associativity and the
    /// homomorphism property on seeded random triples and pairs.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        p: u64,
        dim: usize,
        actions: Vec<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n || actions.len() != n {
            return Err(Error::InvalidGroup("table, labels and actions differ in length".into()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over the element set".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        if (0..n).any(|g| !(0..n).any(|h| table[g][h] == identity)) {
            return Err(Error::InvalidGroup("missing inverse".into()));
        }
        let actions: Vec<Vec<Vec<u64>>> = actions
            .into_iter()
            .map(|m| m.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect())
            .collect();
        if actions.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::Shape(format!("actions must be {dim}x{dim}")));
        }
        let group = Self { labels, table, identity, p, dim, actions };

        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..SPOT_CHECKS {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let t = &group.table;
            if t[t[a][b]][c] != t[a][t[b][c]] {
                return Err(Error::InvalidGroup(format!("({a}{b}){c} != {a}({b}{c})")));
            }
            if group.matmul(&group.actions[a], &group.actions[b]) != group.actions[t[a][b]] {
                return Err(Error::NotHomomorphism(format!(
                    "{} * {}",
                    group.labels[a], group.labels[b]
                )));
            }
        }
        Ok(group)
    }

    /// Builds the table from elements and a multiplication.
    pub fn from_elements<T: Clone + Eq + Hash + fmt::Display>(
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
        action: impl Fn(&T) -> Vec<Vec<u64>>,
        p: u64,
        dim: usize,
    ) -> Result<Self> {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let c = mul(a, b);
                let &i = index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidGroup(format!("{a} * {b} leaves the set")))?;
                row.push(i);
            }
            table.push(row);
        }
        let labels = elements.iter().map(ToString::to_string).collect();
        let actions = elements.iter().map(action).collect();
        Self::new(labels, table, p, dim, actions)
    }

    /// `GL_2(Z/4)` acting on `(Z/2)^2` through reduction mod 2.
    pub fn gl2_z4_on_f2_squared() -> Self {
        Self::from_elements(&gl2_z4(), Mat2Z4::mul, Mat2Z4::mod2, 2, 2).expect("GL_2(Z/4)")
    }

    /// `SL_2(Z/4)` acting on `(Z/2)^2` through reduction mod 2.
    pub fn sl2_z4_on_f2_squared() -> Self {
        let sl: Vec<Mat2Z4> = gl2_z4().into_iter().filter(|m| m.det() == 1).collect();
        Self::from_elements(&sl, Mat2Z4::mul, Mat2Z4::mod2, 2, 2).expect("SL_2(Z/4)")
    }

    /// `<g>` of order `m` acting on `F_p^dim` by the powers of `g`.
    pub fn cyclic(m: usize, g: &[Vec<u64>], p: u64) -> Result<Self> {
        let dim = g.len();
        let mut powers = vec![identity_rows(dim)];
        for i in 1..m {
            powers.push(mat_mul_mod(&powers[i - 1], g, p));
        }
        if mat_mul_mod(&powers[m - 1], g, p) != identity_rows(dim) {
            return Err(Error::RelationFails(format!("g^{m} = I")));
        }
        let table = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        let labels = (0..m).map(|i| format!("g^{i}")).collect();
        Self::new(labels, table, p, dim, powers)
    }

    pub fn trivial(p: u64, dim: usize) -> Result<Self> {
        Self::new(vec!["e".into()], vec![vec![0]], p, dim, vec![identity_rows(dim)])
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn matmul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        mat_mul_mod(a, b, self.p)
    }
}

fn identity_rows(dim: usize) -> Vec<Vec<u64>> {
    (0..dim).map(|i| (0..dim).map(|j| u64::from(i == j)).collect()).collect()
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j] % p).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

/// `dim H^1(G, F_p^dim)` from the full cocycle system `c(gh) = c(g) + g c(h)`.
pub fn h1_one_cocycles(group: &FiniteGroupData) -> Result<usize> {
    let n = group.order();
    let dim = group.dim;
    let p = group.p;
    let unknowns = n * dim;
    let mut z1 = RowEchelon::new(p, unknowns);
    let mut row = vec![0u64; unknowns];
    'outer: for g in 0..n {
        for h in 0..n {
            let gh = group.table[g][h];
            let action = &group.actions[g];
            for i in 0..dim {
                row.iter_mut().for_each(|x| *x = 0);
                // c(gh)_i - c(g)_i - sum_j g_ij c(h)_j
                row[gh * dim + i] = (row[gh * dim + i] + 1) % p;
                row[g * dim + i] = (row[g * dim + i] + p - 1) % p;
                for j in 0..dim {
                    let slot = h * dim + j;
                    row[slot] = (row[slot] + p - action[i][j] % p) % p;
                }
                z1.insert(&row);
                if z1.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let dim_z1 = unknowns - z1.rank();

    let mut fixed = RowEchelon::new(p, dim);
    for action in &group.actions {
        for (i, r) in action.iter().enumerate() {
            let mut minus_one: Vec<u64> = r.clone();
            minus_one[i] = (minus_one[i] + p - 1) % p;
            fixed.insert(&minus_one);
        }
    }
    let dim_b1 = fixed.rank();
    Ok(dim_z1 - dim_b1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c = build_canonical_torsor();
        assert_eq!(c.m.len(), 16);
        assert_eq!(c.m_star.len(), 12);
        assert_eq!(c.classes.len(), 6);
        assert_eq!(c.m2_star.len(), 3);
        assert!(c.fibers.iter().all(|(y, pair)| pair.iter().all(|&x| double(x) == *y)));
        assert_eq!(c.raw_labelings(), 8);
        assert_eq!(c.t.len(), 4);
        assert!(c.t.iter().all(|s| c.is_section(s)));
    }

    #[test]
    fn translations_act_simply_transitively() {
        let c = build_canonical_torsor();
        for i in 0..4 {
            assert_eq!(c.translation_orbit(i).len(), 4);
            assert_eq!(c.translation_stabilizer(i), vec![[0, 0]]);
        }
        assert!(c.translation([0, 0]).unwrap().is_identity());
        assert!(c.translation([1, 0]).is_err());
    }

    #[test]
    fn unipotent_is_a_four_cycle() {
        let c = build_canonical_torsor();
        let p = c.matrix_action(&Mat2Z4::new([[1, 1], [0, 1]])).unwrap();
        assert_eq!(p.cycle_type(), vec![4]);
        assert!(c.matrix_action(&Mat2Z4::IDENTITY).unwrap().is_identity());
        assert!(c.matrix_action(&Mat2Z4::new([[-1, 0], [0, -1]])).unwrap().is_identity());
        assert!(c.matrix_action(&Mat2Z4::new([[2, 0], [0, 1]])).is_err());
    }

    #[test]
    fn gl2_order() {
        assert_eq!(gl2_z4().len(), 96);
        assert_eq!(FiniteGroupData::sl2_z4_on_f2_squared().order(), 48);
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_one_cocycles(&FiniteGroupData::trivial(2, 1).unwrap()).unwrap(), 0);
        assert_eq!(h1_one_cocycles(&FiniteGroupData::gl2_z4_on_f2_squared()).unwrap(), 1);
        let z3 = FiniteGroupData::cyclic(3, &[vec![1]], 2).unwrap();
        assert_eq!(h1_one_cocycles(&z3).unwrap(), 0);
        // Hom(Z/2, F_2) = F_2
        let z2 = FiniteGroupData::cyclic(2, &[vec![1]], 2).unwrap();
        assert_eq!(h1_one_cocycles(&z2).unwrap(), 1);
        // Hom(Z/3, F_3) = F_3, through the odd-prime path
        let z3_3 = FiniteGroupData::cyclic(3, &[vec![1]], 3).unwrap();
        assert_eq!(h1_one_cocycles(&z3_3).unwrap(), 1);
    }

    #[test]
    fn invalid_groups_rejected() {
        let bad_table = FiniteGroupData::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 1]],
            2,
            1,
            vec![vec![vec![1]], vec![vec![1]]],
        );
        assert!(matches!(bad_table, Err(Error::InvalidGroup(_))));
        let sign = FiniteGroupData::new(
            vec!["e".into(), "g".into()],
            vec![vec![0, 1], vec![1, 0]],
            3,
            1,
            vec![vec![vec![1]], vec![vec![2]]],
        );
        assert_eq!(h1_one_cocycles(&sign.unwrap()).unwrap(), 0);
        let not_hom = FiniteGroupData::new(
            vec!["e".into(), "g".into()],
            vec![vec![0, 1], vec![1, 0]],
            5,
            1,
            vec![vec![vec![1]], vec![vec![2]]],
        );
        assert!(matches!(not_hom, Err(Error::NotHomomorphism(_))));
    }
}
