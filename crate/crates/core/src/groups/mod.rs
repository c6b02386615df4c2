//! Finite groups given by multiplication tables, their subgroups, and
//! monomorphisms between them.

mod group;
mod mono;
mod subgroup;

pub use group::{build_group, FiniteGroup, Group, GroupSpec};
pub use mono::{mono_from_generator_images, GroupMono};
pub use subgroup::{
    all_subgroups, elementary_abelian_p_subgroups, p_subgroup_classes, Subgroup,
};

use thiserror::Error;

/// Largest supported group order.
pub const MAX_GROUP_ORDER: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group order {0} exceeds the supported bound")]
    TooLarge(usize),
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("cannot compose: middle groups differ")]
    Incomposable,
    #[error("bad element expression: {0}")]
    BadElement(String),
}

/// A set of element indices of a group of order at most 256.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet([u64; 4]);

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl ElemSet {
    pub fn empty() -> Self {
        ElemSet([0; 4])
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::empty();
        s.insert(i);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Self::empty();
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&i| self.contains(i))
    }
}
