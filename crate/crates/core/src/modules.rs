//! Representation matrices for `SL_2(Z)`: the amalgam generators, symmetric
//! powers of the standard representation, and the named coefficient modules.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{BaseRing, IntegerMatrix};

/// Generator names used in module action maps.
pub const GEN_S: &str = "S";
pub const GEN_U: &str = "U";
pub const GEN_MINUS_I: &str = "-I";

/// `S` of order 4 and `U` of order 6 with `S^2 = U^3 = -I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub minus_identity: IntegerMatrix,
}

impl GeneratorSet {
    pub fn standard() -> Self {
        let set = Self {
            s: IntegerMatrix::from_rows(&[[0, -1], [1, 0]]),
            u: IntegerMatrix::from_rows(&[[0, -1], [1, 1]]),
            minus_identity: IntegerMatrix::scalar(2, -1),
        };
        set.check_relations(BaseRing::Integers).expect("standard generators");
        set
    }

    /// `T = S^-1 U = [[1, 1], [0, 1]]`.
    pub fn t(&self) -> IntegerMatrix {
        &self.s.pow(3) * &self.u
    }

    pub fn check_relations(&self, base: BaseRing) -> Result<()> {
        check_amalgam_relations(&self.s, &self.u, &self.minus_identity, base)
    }
}

fn check_amalgam_relations(
    s: &IntegerMatrix,
    u: &IntegerMatrix,
    minus_i: &IntegerMatrix,
    base: BaseRing,
) -> Result<()> {
    let n = s.rows();
    let id = IntegerMatrix::identity(n);
    let same = |a: &IntegerMatrix, b: &IntegerMatrix| base.normalize(a) == base.normalize(b);
    if !same(&s.pow(4), &id) {
        return Err(Error::RelationFails("S^4 = I".into()));
    }
    if !same(&u.pow(6), &id) {
        return Err(Error::RelationFails("U^6 = I".into()));
    }
    if !same(&s.pow(2), minus_i) {
        return Err(Error::RelationFails("S^2 = -I".into()));
    }
    if !same(&u.pow(3), minus_i) {
        return Err(Error::RelationFails("U^3 = -I".into()));
    }
    Ok(())
}

/// Matrix of `Sym^k(g)` on the monomials `e1^k, e1^(k-1) e2, ..., e2^k`,
/// where `g` sends `e1` and `e2` to its first and second columns.
pub fn sym_power_matrix(g: &IntegerMatrix, k: usize) -> Result<IntegerMatrix> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::Shape(format!("expected a 2x2 matrix, got {}x{}", g.rows(), g.cols())));
    }
    if !g.determinant()?.abs().is_one() {
        return Err(Error::NotInvertible("Z".into()));
    }
    let (a, b, c, d) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 0)], &g[(1, 1)]);
    // Coefficients of (x e1 + y e2)^n by power of e2.
    let expand = |x: &BigInt, y: &BigInt, n: usize| -> Vec<BigInt> {
        (0..=n)
            .map(|i| binomial(BigInt::from(n), BigInt::from(i)) * x.pow((n - i) as u32) * y.pow(i as u32))
            .collect()
    };
    let mut out = IntegerMatrix::zeros(k + 1, k + 1);
    for j in 0..=k {
        let first = expand(a, c, k - j);
        let second = expand(b, d, j);
        for (i, x) in first.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (l, y) in second.iter().enumerate() {
                out[(i + l, j)] += x * y;
            }
        }
    }
    Ok(out)
}

/// A free module over [`BaseRing`] with one invertible action matrix per
/// named generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModule {
    rank: usize,
    base: BaseRing,
    actions: BTreeMap<String, IntegerMatrix>,
    label: String,
}

impl GroupModule {
    /// Validates shapes and invertibility of every action.
    pub fn new(
        label: impl Into<String>,
        rank: usize,
        base: BaseRing,
        actions: BTreeMap<String, IntegerMatrix>,
    ) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for (name, m) in actions {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Shape(format!(
                    "action of {name} is {}x{}, module rank is {rank}",
                    m.rows(),
                    m.cols()
                )));
            }
            let det = m.determinant()?;
            let invertible = match base {
                BaseRing::Integers => det.abs().is_one(),
                BaseRing::PrimeField(p) => !(det % BigInt::from(p)).is_zero(),
            };
            if !invertible {
                return Err(Error::NotInvertible(base.to_string()));
            }
            normalized.insert(name, base.normalize(&m));
        }
        Ok(Self { rank, base, actions: normalized, label: label.into() })
    }

    /// An `SL_2(Z)`-module from the actions of `S` and `U`; `-I` is set to
    /// `S^2` and the amalgam relations are checked.
    pub fn sl2z(label: impl Into<String>, base: BaseRing, s: IntegerMatrix, u: IntegerMatrix) -> Result<Self> {
        let minus_i = base.normalize(&s.pow(2));
        check_amalgam_relations(&s, &u, &minus_i, base)?;
        let actions = BTreeMap::from([
            (GEN_S.to_string(), s),
            (GEN_U.to_string(), u),
            (GEN_MINUS_I.to_string(), minus_i),
        ]);
        Self::new(label, s_rank(&actions), base, actions)
    }

    /// `Sym^k` of the standard representation over `base`.
    pub fn sym_power(k: usize, base: BaseRing) -> Result<Self> {
        let gens = GeneratorSet::standard();
        let s = sym_power_matrix(&gens.s, k)?;
        let u = sym_power_matrix(&gens.u, k)?;
        let label = match base {
            BaseRing::Integers => format!("Sym^{k} Z^2"),
            BaseRing::PrimeField(p) => format!("Sym^{k} F_{p}^2"),
        };
        Self::sl2z(label, base, s, u)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self, generator: &str) -> Result<&IntegerMatrix> {
        self.actions
            .get(generator)
            .ok_or_else(|| Error::MissingGenerator(generator.to_string()))
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.actions.keys().map(String::as_str)
    }

    /// Reduction modulo a prime of an integral module.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        let base = BaseRing::prime_field(p)?;
        Self::new(format!("{} mod {p}", self.label), self.rank, base, self.actions.clone())
    }

    /// Vectors fixed by every generator, found by brute force over `F_p^rank`.
    /// Only meant for tiny modules.
    pub fn fixed_vectors_mod_p(&self) -> Option<Vec<Vec<u64>>> {
        let BaseRing::PrimeField(p) = self.base else {
            return None;
        };
        let total = (p as usize).checked_pow(self.rank as u32)?;
        let mut out = Vec::new();
        for code in 0..total {
            let v: Vec<BigInt> = (0..self.rank)
                .map(|i| BigInt::from((code / (p as usize).pow(i as u32)) % p as usize))
                .collect();
            let fixed = self.actions.values().all(|m| {
                let w = m.apply(&v);
                w.iter().zip(&v).all(|(a, b)| ((a - b) % BigInt::from(p)).is_zero())
            });
            if fixed {
                out.push(v.iter().map(|x| u64::try_from(x).unwrap_or(0)).collect());
            }
        }
        Some(out)
    }
}

fn s_rank(actions: &BTreeMap<String, IntegerMatrix>) -> usize {
    actions.get(GEN_S).map_or(0, IntegerMatrix::rows)
}

/// The coefficient modules with a name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientModule {
    /// `Sym^k Z^2`.
    SymK(usize),
    /// `Hom(Sym^k Z^2, Z)` with the contragredient action. Agrees with
    /// `Sym^k` rationally and in cohomological degrees `>= 2`, not in degree 1.
    SymKDual(usize),
    /// `(Z/2)^2`, the mod-2 reduction of the standard representation.
    F2Squared,
    /// `Z` with trivial action.
    TrivialZ,
}

impl CoefficientModule {
    pub fn build(self) -> Result<GroupModule> {
        match self {
            Self::SymK(k) => GroupModule::sym_power(k, BaseRing::Integers),
            Self::SymKDual(k) => {
                let sym = GroupModule::sym_power(k, BaseRing::Integers)?;
                let contragredient = |g: &str, order: u32| -> Result<IntegerMatrix> {
                    Ok(sym.action(g)?.pow(order - 1).transpose())
                };
                let s = contragredient(GEN_S, 4)?;
                let u = contragredient(GEN_U, 6)?;
                GroupModule::sl2z(format!("Hom(Sym^{k} Z^2, Z)"), BaseRing::Integers, s, u)
            }
            Self::F2Squared => {
                let mut m = GroupModule::sym_power(1, BaseRing::PrimeField(2))?;
                m.label = "(Z/2)^2".into();
                Ok(m)
            }
            Self::TrivialZ => {
                let one = IntegerMatrix::identity(1);
                GroupModule::sl2z("Z", BaseRing::Integers, one.clone(), one)
            }
        }
    }
}

impl FromStr for CoefficientModule {
    type Err = Error;

    /// Accepts `sym_4`, `sym_dual_4`, `f2_squared` and `trivial_Z`.
    fn from_str(s: &str) -> Result<Self> {
        let parsed = match s {
            "f2_squared" => Some(Self::F2Squared),
            "trivial_Z" | "trivial_z" => Some(Self::TrivialZ),
            _ => match s.strip_prefix("sym_dual_") {
                Some(k) => k.parse().ok().map(Self::SymKDual),
                None => s.strip_prefix("sym_").and_then(|k| k.parse().ok()).map(Self::SymK),
            },
        };
        parsed.ok_or_else(|| Error::UnknownModule(s.to_string()))
    }
}

/// Looks a module up by name; `"sym_k"` and `"sym_dual_k"` take their index from `k`.
pub fn standard_coefficient_module(name: &str, k: Option<usize>) -> Result<GroupModule> {
    let which = match (name, k) {
        ("sym_k", Some(k)) => CoefficientModule::SymK(k),
        ("sym_dual_k", Some(k)) => CoefficientModule::SymKDual(k),
        ("sym_k" | "sym_dual_k", None) => return Err(Error::UnknownModule(format!("{name} without k"))),
        (other, _) => other.parse()?,
    };
    which.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_relations() {
        let g = GeneratorSet::standard();
        assert_eq!(g.t(), IntegerMatrix::from_rows(&[[1, 1], [0, 1]]));
        let bad = GeneratorSet { u: g.t(), ..g.clone() };
        assert!(bad.check_relations(BaseRing::Integers).is_err());
    }

    #[test]
    fn low_symmetric_powers() {
        let g = GeneratorSet::standard();
        assert_eq!(sym_power_matrix(&g.u, 0).unwrap(), IntegerMatrix::identity(1));
        assert_eq!(sym_power_matrix(&g.u, 1).unwrap(), g.u);
        // e1^2 -> e2^2, e1 e2 -> -e1 e2, e2^2 -> e1^2
        let s2 = sym_power_matrix(&g.s, 2).unwrap();
        assert_eq!(s2, IntegerMatrix::from_rows(&[[0, 0, 1], [0, -1, 0], [1, 0, 0]]));
        assert!(s2.pow(4).is_identity());
    }

    #[test]
    fn singular_input_rejected() {
        let m = IntegerMatrix::from_rows(&[[2, 0], [0, 1]]);
        assert_eq!(sym_power_matrix(&m, 3), Err(Error::NotInvertible("Z".into())));
        assert!(sym_power_matrix(&IntegerMatrix::identity(3), 1).is_err());
    }

    #[test]
    fn named_modules() {
        let z = standard_coefficient_module("trivial_Z", None).unwrap();
        assert_eq!(z.rank(), 1);
        assert!(z.generators().all(|g| z.action(g).unwrap().is_identity()));

        let m1 = standard_coefficient_module("sym_k", Some(1)).unwrap();
        assert_eq!(m1.action(GEN_S).unwrap(), &GeneratorSet::standard().s);

        let f2 = standard_coefficient_module("f2_squared", None).unwrap();
        assert_eq!(f2.base(), BaseRing::PrimeField(2));
        assert!(f2.action(GEN_MINUS_I).unwrap().is_identity());

        assert_eq!(
            standard_coefficient_module("sym_two", None),
            Err(Error::UnknownModule("sym_two".into()))
        );
        assert!(standard_coefficient_module("sym_k", None).is_err());
        assert_eq!("sym_dual_3".parse::<CoefficientModule>().unwrap(), CoefficientModule::SymKDual(3));
    }

    #[test]
    fn dual_module_is_contragredient() {
        let g = GeneratorSet::standard();
        let dual = CoefficientModule::SymKDual(3).build().unwrap();
        for name in [GEN_S, GEN_U] {
            let sym = sym_power_matrix(if name == GEN_S { &g.s } else { &g.u }, 3).unwrap();
            assert!((&dual.action(name).unwrap().transpose() * &sym).is_identity());
        }
    }

    #[test]
    fn f2_squared_has_no_invariants() {
        let f2 = CoefficientModule::F2Squared.build().unwrap();
        assert_eq!(f2.fixed_vectors_mod_p().unwrap(), vec![vec![0, 0]]);
    }

    #[test]
    fn module_validation() {
        let sing = BTreeMap::from([(GEN_S.to_string(), IntegerMatrix::diagonal(&[1, 2]))]);
        assert!(GroupModule::new("x", 2, BaseRing::Integers, sing.clone()).is_err());
        // invertible mod 3
        assert!(GroupModule::new("x", 2, BaseRing::PrimeField(3), sing).is_ok());
        assert!(matches!(
            GroupModule::sym_power(2, BaseRing::Integers).unwrap().action("T"),
            Err(Error::MissingGenerator(_))
        ));
    }
}
