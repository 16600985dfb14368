//! Cohomology of finite cyclic groups through the 2-periodic resolution,
//! and restriction maps to cyclic subgroups at the cochain level.

use crate::error::{Error, Result};
use crate::linalg::{BaseRing, CochainComplex, FgAbelianGroup, IntegerMatrix};

/// A generator `g` of order dividing `m` acting on a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    order: usize,
    g: IntegerMatrix,
    base: BaseRing,
    g_minus_1: IntegerMatrix,
    norm: IntegerMatrix,
}

impl CyclicAction {
    /// Checks `g^m = I` over `base`.
    pub fn new(order: usize, g: IntegerMatrix, base: BaseRing) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("cyclic group order must be positive".into()));
        }
        if !g.is_square() {
            return Err(Error::Shape(format!("generator action is {}x{}", g.rows(), g.cols())));
        }
        let g = base.normalize(&g);
        let r = g.rows();
        if !base.normalize(&g.pow(order as u32)).is_identity() {
            return Err(Error::RelationFails(format!("g^{order} = I")));
        }
        let g_minus_1 = base.normalize(&(&g - &IntegerMatrix::identity(r)));
        let norm = base.normalize(&partial_norm(&g, order));
        Ok(Self { order, g, base, g_minus_1, norm })
    }

    pub fn integral(order: usize, g: IntegerMatrix) -> Result<Self> {
        Self::new(order, g, BaseRing::Integers)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator(&self) -> &IntegerMatrix {
        &self.g
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.g.rows()
    }

    pub fn g_minus_1(&self) -> &IntegerMatrix {
        &self.g_minus_1
    }

    pub fn norm(&self) -> &IntegerMatrix {
        &self.norm
    }

    /// The subgroup `<g^d>` of index `d`.
    pub fn subgroup(&self, d: usize) -> Result<Self> {
        self.check_index(d)?;
        Self::new(self.order / d, self.g.pow(d as u32), self.base)
    }

    /// Differential of the periodic complex at degree `n`.
    pub fn differential(&self, n: usize) -> &IntegerMatrix {
        if n.is_multiple_of(2) {
            &self.g_minus_1
        } else {
            &self.norm
        }
    }

    fn check_index(&self, d: usize) -> Result<()> {
        if d == 0 || !self.order.is_multiple_of(d) {
            return Err(Error::IndexNotDivisor { index: d, order: self.order });
        }
        Ok(())
    }
}

/// `I + g + ... + g^(d-1)`.
fn partial_norm(g: &IntegerMatrix, d: usize) -> IntegerMatrix {
    let mut acc = IntegerMatrix::zeros(g.rows(), g.cols());
    let mut power = IntegerMatrix::identity(g.rows());
    for _ in 0..d {
        acc = &acc + &power;
        power = &power * g;
    }
    acc
}

/// `M -> M -> ... -> M` with `g - 1` at even degrees and the norm at odd ones.
pub fn periodic_complex(a: &CyclicAction, top_degree: usize) -> Result<CochainComplex> {
    let ds = (0..top_degree).map(|n| a.differential(n).clone()).collect();
    CochainComplex::new(vec![a.rank(); top_degree + 1], ds, a.base)
}

pub fn cyclic_cohomology(a: &CyclicAction, n: usize) -> Result<FgAbelianGroup> {
    periodic_complex(a, n + 1)?.cohomology_at(n)
}

/// Degree-`n` component of restriction from `<g>` to `<g^d>`: the identity
/// at even degrees, `I + g + ... + g^(d-1)` at odd ones.
pub fn restriction_cochain_matrix(a: &CyclicAction, d: usize, n: usize) -> Result<IntegerMatrix> {
    a.check_index(d)?;
    Ok(if n.is_multiple_of(2) {
        IntegerMatrix::identity(a.rank())
    } else {
        a.base.normalize(&partial_norm(&a.g, d))
    })
}
