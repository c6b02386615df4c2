use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{ElemSet, FiniteGroup, Group, GroupMono};

/// A subgroup, stored as an element bitset of its parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    elements: ElemSet,
    gens: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?} of {}", self.elements, self.parent.name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.fingerprint() == other.parent.fingerprint() && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(parent: &Group, gens: &[usize]) -> Subgroup {
        let elements = parent.generated_by(gens);
        Subgroup {
            parent: parent.clone(),
            elements,
            gens: gens.iter().copied().filter(|&g| g != 0).collect(),
        }
    }

    pub fn whole(parent: &Group) -> Subgroup {
        Self::generated(parent, parent.generators())
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Self::generated(parent, &[])
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.contains(g)
    }

    pub fn element_set(&self) -> ElemSet {
        self.elements
    }

    pub fn elements(&self) -> Vec<usize> {
        self.elements.iter().collect()
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn conjugate(&self, g: usize) -> Subgroup {
        let p = &self.parent;
        Subgroup {
            parent: p.clone(),
            elements: ElemSet::from_iter(self.elements.iter().map(|h| p.conj(g, h))),
            gens: self.gens.iter().map(|&h| p.conj(g, h)).collect(),
        }
    }

    pub fn is_normal(&self) -> bool {
        let p = &self.parent;
        p.generators()
            .iter()
            .all(|&g| self.gens.iter().all(|&h| self.contains(p.conj(g, h))))
    }

    pub fn is_abelian(&self) -> bool {
        let p = &self.parent;
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| p.mul(a, b) == p.mul(b, a)))
    }

    /// Abelian with every nonidentity element of order `p`.
    pub fn is_elementary_abelian(&self, p: usize) -> bool {
        self.order() > 1
            && self.is_abelian()
            && self.gens.iter().all(|&g| self.parent.element_order(g) == p)
    }

    /// The subgroup as a standalone group (elements renumbered in increasing
    /// parent index) together with its inclusion into the parent.
    pub fn to_group(&self) -> (Group, GroupMono) {
        let elems = self.elements();
        let mut pos = vec![usize::MAX; self.parent.order()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[self.parent.mul(a, b)]).collect())
            .collect();
        let name = format!("sub{}({})", self.order(), self.parent.name());
        let g = Arc::new(FiniteGroup::from_table(&name, &table).expect("subgroup table is a group"));
        let mono = GroupMono::from_map(&g, &self.parent, elems).expect("inclusion is a mono");
        (g, mono)
    }
}

/// `all_subgroups`: every subgroup, sorted by order and then element set.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let n = g.order();
    // distinct cyclic subgroups, keyed by element set
    let mut cyclic: Vec<(ElemSet, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for x in 1..n {
        let s = g.generated_by(&[x]);
        if seen.insert(s) {
            cyclic.push((s, x));
        }
    }
    let trivial = Subgroup::trivial(g);
    let mut found: BTreeSet<ElemSet> = BTreeSet::new();
    found.insert(trivial.elements);
    let mut all = vec![trivial];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        for &(cs, x) in &cyclic {
            let h = &all[idx];
            if cs.is_subset(&h.elements) {
                continue;
            }
            let mut gens = h.gens.clone();
            gens.push(x);
            let s = g.generated_by(&gens);
            if found.insert(s) {
                all.push(Subgroup {
                    parent: g.clone(),
                    elements: s,
                    gens,
                });
                frontier.push(all.len() - 1);
            }
        }
    }
    all.sort_by(|a, b| (a.order(), a.elements).cmp(&(b.order(), b.elements)));
    all
}

fn is_prime_power_of(n: usize, p: usize) -> bool {
    let mut n = n;
    if n < p {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// `p_subgroup_classes`: conjugacy classes of nontrivial `p`-subgroups,
/// ordered by order and then by the least member.
pub fn p_subgroup_classes(g: &Group, p: usize) -> Vec<Vec<Subgroup>> {
    let subs: Vec<Subgroup> = all_subgroups(g)
        .into_iter()
        .filter(|h| is_prime_power_of(h.order(), p))
        .collect();
    let mut assigned = vec![false; subs.len()];
    let mut classes = Vec::new();
    for i in 0..subs.len() {
        if assigned[i] {
            continue;
        }
        let conj: BTreeSet<ElemSet> = (0..g.order())
            .map(|x| subs[i].conjugate(x).elements)
            .collect();
        let mut class = Vec::new();
        for j in i..subs.len() {
            if !assigned[j] && conj.contains(&subs[j].elements) {
                assigned[j] = true;
                class.push(subs[j].clone());
            }
        }
        classes.push(class);
    }
    classes
}

/// `elementary_abelian_p_subgroups`: nontrivial elementary abelian
/// `p`-subgroups, one representative per conjugacy class.
pub fn elementary_abelian_p_subgroups(g: &Group, p: usize) -> Vec<Subgroup> {
    p_subgroup_classes(g, p)
        .into_iter()
        .map(|c| c.into_iter().next().expect("classes are nonempty"))
        .filter(|h| h.is_elementary_abelian(p))
        .collect()
}
