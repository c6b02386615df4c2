use std::fmt;

use crate::groups::{Group, GroupMono};
use crate::picard::ProfileKind;

use super::TreeError;

/// A vertex group: a finite group, or a named infinite profile over a
/// smaller graph of groups.
#[derive(Clone, Debug)]
pub enum Vertex {
    Finite(Group),
    Profile { kind: ProfileKind, of: Box<GraphOfGroups> },
}

impl Vertex {
    pub fn label(&self) -> String {
        match self {
            Vertex::Finite(g) => g.name().to_string(),
            Vertex::Profile { kind, of } => format!("{}({})", kind.name(), of),
        }
    }

    pub fn as_finite(&self) -> Option<&Group> {
        match self {
            Vertex::Finite(g) => Some(g),
            Vertex::Profile { .. } => None,
        }
    }
}

/// An edge with its group and the two monomorphisms; `mono_terminal`
/// realizes the twist `f_e`.
#[derive(Clone, Debug)]
pub struct Edge {
    pub group: Group,
    pub initial: usize,
    pub terminal: usize,
    pub mono_initial: GroupMono,
    pub mono_terminal: GroupMono,
}

#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    tree_edges: Vec<usize>,
}

impl fmt::Display for GraphOfGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() && self.vertices.len() == 1 {
            return write!(f, "{}", self.vertices[0].label());
        }
        if self.is_tree() && self.vertices.len() == 2 {
            let e = &self.edges[0];
            return if e.group.order() == 1 {
                write!(f, "{}*{}", self.vertices[0].label(), self.vertices[1].label())
            } else {
                write!(f, "{}*_{}{}", self.vertices[0].label(), e.group.name(), self.vertices[1].label())
            };
        }
        if self.vertices.len() == 1 && self.edges.len() == 1 {
            let e = &self.edges[0];
            return write!(f, "HNN({}, {})", self.vertices[0].label(), e.group.name());
        }
        write!(f, "graph({} vertices, {} edges)", self.vertices.len(), self.edges.len())
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl GraphOfGroups {
    /// Validates connectivity, the spanning tree and the edge monos.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, tree_edges: Vec<usize>) -> Result<Self, TreeError> {
        let n = vertices.len();
        if n == 0 {
            return Err(TreeError::Invalid("graph has no vertices".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.initial >= n || e.terminal >= n {
                return Err(TreeError::Invalid(format!("edge {i} has an endpoint out of range")));
            }
            for (mono, v) in [(&e.mono_initial, e.initial), (&e.mono_terminal, e.terminal)] {
                if mono.source().fingerprint() != e.group.fingerprint() {
                    return Err(TreeError::Invalid(format!("edge {i}: mono source is not the edge group")));
                }
                match &vertices[v] {
                    Vertex::Finite(g) if g.fingerprint() == mono.target().fingerprint() => {}
                    Vertex::Finite(_) => {
                        return Err(TreeError::Invalid(format!(
                            "edge {i}: mono target is not the group at vertex {v}"
                        )))
                    }
                    Vertex::Profile { .. } => {
                        return Err(TreeError::UnsupportedVertex(format!(
                            "edge {i} meets profile vertex {v}; profile restrictions are not available"
                        )))
                    }
                }
            }
        }
        let mut seen = vec![false; edges.len()];
        let mut uf = UnionFind::new(n);
        for &t in &tree_edges {
            if t >= edges.len() || seen[t] {
                return Err(TreeError::Invalid(format!("bad tree edge index {t}")));
            }
            seen[t] = true;
            if !uf.union(edges[t].initial, edges[t].terminal) {
                return Err(TreeError::Invalid("tree edges contain a cycle".into()));
            }
        }
        if tree_edges.len() + 1 != n {
            return Err(TreeError::Invalid(format!(
                "tree edges do not span: {} edges for {} vertices",
                tree_edges.len(),
                n
            )));
        }
        Ok(GraphOfGroups {
            vertices,
            edges,
            tree_edges,
        })
    }

    pub fn single(v: Vertex) -> GraphOfGroups {
        GraphOfGroups {
            vertices: vec![v],
            edges: Vec::new(),
            tree_edges: Vec::new(),
        }
    }

    /// `A *_C B` with `C` embedded by the two monos.
    pub fn amalgam(a: &Group, b: &Group, c: &Group, into_a: GroupMono, into_b: GroupMono) -> Result<Self, TreeError> {
        let e = Edge {
            group: c.clone(),
            initial: 0,
            terminal: 1,
            mono_initial: into_a,
            mono_terminal: into_b,
        };
        Self::new(vec![Vertex::Finite(a.clone()), Vertex::Finite(b.clone())], vec![e], vec![0])
    }

    /// `H *_f` with edge group `A`, included by `initial` and twisted by
    /// `terminal`.
    pub fn hnn(h: &Group, a: &Group, initial: GroupMono, terminal: GroupMono) -> Result<Self, TreeError> {
        let e = Edge {
            group: a.clone(),
            initial: 0,
            terminal: 0,
            mono_initial: initial,
            mono_terminal: terminal,
        };
        Self::new(vec![Vertex::Finite(h.clone())], vec![e], Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    /// Every edge lies in the spanning tree (an iterated amalgam).
    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.tree_edges.len()
    }

    /// A tree whose edge groups are all trivial.
    pub fn is_free_product(&self) -> bool {
        self.is_tree() && self.edges.iter().all(|e| e.group.order() == 1)
    }

    pub fn all_finite(&self) -> bool {
        self.vertices.iter().all(|v| v.as_finite().is_some())
    }

    /// One vertex `H` with one loop whose two monos are the same
    /// isomorphism `A → H`, so `f` is the identity and `G ≅ Z × H`.
    pub fn is_identity_hnn(&self) -> bool {
        if self.vertices.len() != 1 || self.edges.len() != 1 {
            return false;
        }
        let e = &self.edges[0];
        e.mono_initial.target().order() == e.group.order() && e.mono_initial.map() == e.mono_terminal.map()
    }
}
