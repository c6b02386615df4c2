//! Components of nontrivial `p`-subgroups under inclusion and conjugation,
//! for finite groups and for fundamental groups of graphs of finite groups,
//! and the resulting product decomposition of `ŜEnd(k)`.

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{is_prime, Fq};
use crate::groups::{p_subgroup_classes, Group, Subgroup};
use crate::picard::field_name;
use crate::treecalc::{GraphOfGroups, UnionFind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComponentsError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("vertex {0} is not a finite group; components are only defined for finite vertex groups")]
    InfiniteVertex(usize),
}

/// Components of a finite group: each is a list of indices into `classes`.
#[derive(Clone, Debug)]
pub struct FiniteComponents {
    pub classes: Vec<Vec<Subgroup>>,
    pub components: Vec<Vec<usize>>,
}

impl FiniteComponents {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// Index of the component containing the conjugacy class of `h`.
    pub fn component_of(&self, h: &Subgroup) -> Option<usize> {
        let class = self.classes.iter().position(|c| c.contains(h))?;
        self.components.iter().position(|c| c.contains(&class))
    }
}

/// Summary of one component for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    /// Orders of the class representatives in the component.
    pub class_orders: Vec<usize>,
    /// Representative elements of the smallest class.
    pub minimal_representative: Vec<usize>,
}

impl FiniteComponents {
    pub fn summaries(&self) -> Vec<ComponentSummary> {
        self.components
            .iter()
            .map(|c| ComponentSummary {
                class_orders: c.iter().map(|&i| self.classes[i][0].order()).collect(),
                minimal_representative: self.classes[c[0]][0].elements(),
            })
            .collect()
    }
}

fn check_prime(p: u64) -> Result<(), ComponentsError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ComponentsError::NotPrime(p))
    }
}

/// `p_components_finite`.
pub fn p_components_finite(g: &Group, p: u64) -> Result<FiniteComponents, ComponentsError> {
    check_prime(p)?;
    let classes = p_subgroup_classes(g, p as usize);
    let n = classes.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            // classes are sorted by order, so only j can contain i
            let contained = classes[i]
                .iter()
                .any(|a| classes[j].iter().any(|b| a.is_subgroup_of(b)));
            if contained {
                uf.union(i, j);
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let r = uf.find(i);
        match root_of.iter().find(|(root, _)| *root == r) {
            Some(&(_, c)) => components[c].push(i),
            None => {
                root_of.push((r, components.len()));
                components.push(vec![i]);
            }
        }
    }
    Ok(FiniteComponents { classes, components })
}

/// `p_components_graph`: nodes are (vertex, component) pairs, glued along
/// each edge by the images of the edge group's nontrivial `p`-subgroups.
pub fn p_components_graph(gog: &GraphOfGroups, p: u64) -> Result<usize, ComponentsError> {
    check_prime(p)?;
    let mut per_vertex = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0;
    for (i, v) in gog.vertices().iter().enumerate() {
        let g = v.as_finite().ok_or(ComponentsError::InfiniteVertex(i))?;
        let c = p_components_finite(g, p)?;
        offsets.push(total);
        total += c.count();
        per_vertex.push(c);
    }
    let mut uf = UnionFind::new(total);
    for e in gog.edges() {
        for class in p_subgroup_classes(&e.group, p as usize) {
            let h = &class[0];
            let a = per_vertex[e.initial]
                .component_of(&e.mono_initial.image_of(h))
                .expect("image of a p-subgroup is a p-subgroup");
            let b = per_vertex[e.terminal]
                .component_of(&e.mono_terminal.image_of(h))
                .expect("image of a p-subgroup is a p-subgroup");
            uf.union(offsets[e.initial] + a, offsets[e.terminal] + b);
        }
    }
    let mut roots: Vec<usize> = (0..total).map(|x| uf.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// What to decompose: a finite group or a graph of finite groups.
pub enum Target<'a> {
    Finite(&'a Group),
    Graph(&'a GraphOfGroups),
}

/// `stable_end_decomposition`: one factor `k` per `p`-component,
/// `p = char k`. An empty list is the zero ring.
pub fn stable_end_decomposition(target: Target<'_>, k: &Fq) -> Result<Vec<String>, ComponentsError> {
    let p = k.characteristic() as u64;
    let count = match target {
        Target::Finite(g) => p_components_finite(g, p)?.count(),
        Target::Graph(gog) => p_components_graph(gog, p)?,
    };
    Ok(vec![field_name(k); count])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, mono_from_generator_images, GroupSpec};

    fn g(spec: GroupSpec) -> Group {
        build_group(&spec).unwrap()
    }

    #[test]
    fn finite_examples() {
        assert_eq!(p_components_finite(&g(GroupSpec::Quaternion8(true)), 2).unwrap().count(), 1);
        assert_eq!(p_components_finite(&g(GroupSpec::Cyclic(6)), 3).unwrap().count(), 1);
        assert_eq!(p_components_finite(&g(GroupSpec::Cyclic(3)), 2).unwrap().count(), 0);
        assert!(p_components_finite(&g(GroupSpec::Cyclic(3)), 4).is_err());
    }

    #[test]
    fn s3_at_two_has_three_classes_one_each() {
        // the three Sylow 2-subgroups are conjugate: one component
        let s3 = g(GroupSpec::Table(vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ]));
        let c = p_components_finite(&s3, 2).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.count(), 1);
    }

    #[test]
    fn graph_examples() {
        let c1 = g(GroupSpec::Cyclic(1));
        let c2 = g(GroupSpec::Cyclic(2));
        let c3 = g(GroupSpec::Cyclic(3));
        let c4 = g(GroupSpec::Cyclic(4));
        let c6 = g(GroupSpec::Cyclic(6));
        let free = |a: &Group, b: &Group| {
            let ma = mono_from_generator_images(&c1, a, &[]).unwrap();
            let mb = mono_from_generator_images(&c1, b, &[]).unwrap();
            GraphOfGroups::amalgam(a, b, &c1, ma, mb).unwrap()
        };
        assert_eq!(p_components_graph(&free(&c2, &c2), 2).unwrap(), 2);
        assert_eq!(p_components_graph(&free(&c2, &c3), 2).unwrap(), 1);
        let ma = mono_from_generator_images(&c2, &c6, &[3]).unwrap();
        let mb = mono_from_generator_images(&c2, &c4, &[2]).unwrap();
        let sl2 = GraphOfGroups::amalgam(&c6, &c4, &c2, ma, mb).unwrap();
        assert_eq!(p_components_graph(&sl2, 2).unwrap(), 1);
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(stable_end_decomposition(Target::Graph(&free(&c2, &c2)), &f2).unwrap(), vec!["F2", "F2"]);
        assert!(stable_end_decomposition(Target::Finite(&c3), &f2).unwrap().is_empty());
    }
}
