//! Total groups: validated finite multiplication tables, plus the circle
//! `ℚ/ℤ` and the rational line used as morphism targets.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::local::{Elem, FiniteLocalGroup, Label};

/// A group with total operations.
pub trait Group {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty carrier")]
    Empty,
    #[error("table has {found} entries, expected {expected}")]
    TableSize { found: usize, expected: usize },
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("product of {0} and {1} is undefined")]
    NotTotal(Elem, Elem),
    #[error("identity law fails at {0}")]
    Identity(Elem),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("{0} has no inverse")]
    NoInverse(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<Label>,
    identity: Elem,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates a total table as a group: identity, associativity, inverses.
    pub fn from_table(labels: Vec<Label>, identity: Elem, table: Vec<Elem>) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != n * n {
            return Err(GroupError::TableSize { found: table.len(), expected: n * n });
        }
        if identity >= n {
            return Err(GroupError::OutOfRange(identity));
        }
        if let Some(&bad) = table.iter().find(|&&z| z >= n) {
            return Err(GroupError::OutOfRange(bad));
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for x in 0..n {
            if m(identity, x) != x || m(x, identity) != x {
                return Err(GroupError::Identity(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(GroupError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| m(x, y) == identity && m(y, x) == identity) {
                Some(y) => inverse.push(y),
                None => return Err(GroupError::NoInverse(x)),
            }
        }
        Ok(FiniteGroup { labels, identity, table, inverse })
    }

    /// Reads a total local group (every product and inverse defined) as a group.
    pub fn try_from_local(g: &FiniteLocalGroup) -> Result<Self, GroupError> {
        let n = g.size();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(g.mul(x, y).ok_or(GroupError::NotTotal(x, y))?);
            }
        }
        FiniteGroup::from_table(g.labels().to_vec(), g.identity(), table)
    }

    /// `ℤ/n` with labels `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let labels = (0..n as i64).map(Label::Int).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_table(labels, 0, table).expect("cyclic group")
    }

    /// Closure of the given permutations of `0..degree`, composed as
    /// `(p·q)(i) = p(q(i))`. Elements are labelled by discovery order.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut next = 0;
        while next < elems.len() {
            let cur = elems[next].clone();
            for g in gens {
                let p = compose(g, &cur);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            next += 1;
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&compose(a, b)]);
            }
        }
        let labels = (0..n as i64).map(Label::Int).collect();
        FiniteGroup::from_table(labels, 0, table).expect("permutation group")
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(n, &[rot, refl])
    }

    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 2);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        FiniteGroup::from_permutations(n, &[cycle, swap])
    }

    /// Alternating group on four points.
    pub fn alternating4() -> Self {
        FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
    }

    /// Quaternion group via its regular representation on 8 points.
    pub fn quaternion() -> Self {
        // points: ±1, ±i, ±j, ±k as 0..8 = 1, -1, i, -i, j, -j, k, -k
        let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
        FiniteGroup::from_permutations(8, &[i, j])
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let labels = (0..n)
            .map(|k| Label::Text(format!("({};{})", a.labels[k / nb], b.labels[k % nb])))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let l = a.mul(x / nb, y / nb);
                let r = b.mul(x % nb, y % nb);
                table.push(l * nb + r);
            }
        }
        FiniteGroup::from_table(labels, a.identity * nb + b.identity, table).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// Product of a sequence, left to right.
    pub fn product_of(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// The group viewed as a local group with `Ω` and `Λ` total.
    pub fn as_local_group(&self) -> FiniteLocalGroup {
        let product = self.table.iter().map(|&z| Some(z)).collect();
        let inverse = self.inverse.iter().map(|&z| Some(z)).collect();
        FiniteLocalGroup::from_tables(self.labels.clone(), self.identity, product, inverse)
            .expect("group tables are well formed")
    }
}

impl Group for FiniteGroup {
    type Elem = Elem;

    fn identity(&self) -> Elem {
        self.identity
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &Elem) -> Elem {
        FiniteGroup::inv(self, *a)
    }
}

/// The circle group `ℚ/ℤ ⊂ ℝ/ℤ`; elements are kept reduced into `[0, 1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CircleGroup;

impl CircleGroup {
    pub fn reduce(x: &BigRational) -> BigRational {
        x - x.floor()
    }
}

impl Group for CircleGroup {
    type Elem = BigRational;

    fn identity(&self) -> BigRational {
        BigRational::zero()
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        CircleGroup::reduce(&(a + b))
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        CircleGroup::reduce(&-a)
    }
}

/// Additive group of rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalLine;

impl Group for RationalLine {
    type Elem = BigRational;

    fn identity(&self) -> BigRational {
        BigRational::zero()
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        -a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(7).order(), 7);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::alternating4().order(), 12);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn quaternion_is_not_abelian_and_has_one_involution() {
        let q = FiniteGroup::quaternion();
        let involutions = (0..8).filter(|&x| x != q.identity() && q.mul(x, x) == q.identity());
        assert_eq!(involutions.count(), 1);
        assert!((0..8).any(|a| (0..8).any(|b| q.mul(a, b) != q.mul(b, a))));
    }

    #[test]
    fn rejects_non_group_tables() {
        let labels = vec![Label::Int(0), Label::Int(1)];
        assert_eq!(
            FiniteGroup::from_table(labels.clone(), 0, vec![0, 1, 1, 1]),
            Err(GroupError::NoInverse(1))
        );
        assert_eq!(
            FiniteGroup::from_table(labels, 0, vec![0, 1, 0, 0]),
            Err(GroupError::Identity(1))
        );
    }

    #[test]
    fn circle_reduces_mod_one() {
        let c = CircleGroup;
        let fifth = BigRational::new(1.into(), 5.into());
        let mut acc = c.identity();
        for _ in 0..5 {
            acc = c.mul(&acc, &fifth);
        }
        assert!(acc.is_zero());
        assert_eq!(c.inv(&fifth), BigRational::new(4.into(), 5.into()));
    }
}
