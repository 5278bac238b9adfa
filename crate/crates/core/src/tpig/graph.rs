use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex class of the bipartite graph: horizontal or vertical slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn opposite(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub axis: Axis,
    pub index: usize,
}

impl Vertex {
    pub const fn h(index: usize) -> Self {
        Vertex { axis: Axis::Horizontal, index }
    }

    pub const fn v(index: usize) -> Self {
        Vertex { axis: Axis::Vertical, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis {
            Axis::Horizontal => write!(f, "h{}", self.index),
            Axis::Vertical => write!(f, "v{}", self.index),
        }
    }
}

/// An edge `hv` of the graph, always in row-column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub h: usize,
    pub v: usize,
}

impl Edge {
    pub const fn new(h: usize, v: usize) -> Self {
        Edge { h, v }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}v{}", self.h, self.v)
    }
}

/// A rooted tree over slice indices `0..n`, stored as parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RTree {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    root: usize,
}

impl RTree {
    /// Builds the tree rooted at `root` from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Internal("empty tree".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::Internal(format!(
                "{} edges cannot form a tree on {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Internal(format!("bad tree edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::Internal("tree is disconnected".into()));
        }
        Ok(RTree { parent, depth, root })
    }

    /// Builds a tree from a parent array with exactly one `None` entry.
    pub fn from_parents(parent: Vec<Option<usize>>) -> std::result::Result<Self, String> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
        let &[root] = roots.as_slice() else {
            return Err(format!("expected one root, found {}", roots.len()));
        };
        let edges: Vec<(usize, usize)> = parent
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (i, p)))
            .collect();
        if let Some(&(i, p)) = edges.iter().find(|&&(i, p)| p >= n || p == i) {
            return Err(format!("vertex {i} has invalid parent {p}"));
        }
        let t = RTree::from_edges(n, &edges, root).map_err(|_| "parent array has a cycle".to_string())?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, s: usize) -> Option<usize> {
        self.parent[s]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn depth(&self, s: usize) -> usize {
        self.depth[s]
    }

    /// Undirected edges `(child, parent)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (i, p)))
    }

    /// Neighbor lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, s: usize) -> usize {
        usize::from(self.parent[s].is_some())
            + self.parent.iter().filter(|&&p| p == Some(s)).count()
    }

    pub fn rerooted(&self, root: usize) -> RTree {
        let edges: Vec<_> = self.edges().collect();
        RTree::from_edges(self.len(), &edges, root).expect("re-rooting a valid tree")
    }

    /// Vertices of the path from `a` to `b`, in walking order, by parent
    /// walks from both ends.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[x] > self.depth[y] {
            front.push(x);
            x = self.parent[x].expect("non-root");
        }
        while self.depth[y] > self.depth[x] {
            back.push(y);
            y = self.parent[y].expect("non-root");
        }
        while x != y {
            front.push(x);
            back.push(y);
            x = self.parent[x].expect("non-root");
            y = self.parent[y].expect("non-root");
        }
        front.push(x);
        front.extend(back.into_iter().rev());
        front
    }
}

/// Sparse representation `(T_H, T_V, ∂Γ)` of a tree-path intersection graph.
///
/// `boundary_gamma_h[h]` holds the two endpoints in `T_V` of the path
/// `Γ(h)`; `boundary_gamma_v` likewise for vertical vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTpig {
    pub t_h: RTree,
    pub t_v: RTree,
    pub boundary_gamma_h: Vec<(usize, usize)>,
    pub boundary_gamma_v: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TpigViolation {
    Tree { axis: Axis, reason: String },
    EndpointOutOfRange { vertex: Vertex },
    SizeMismatch { axis: Axis, tree: usize, boundary: usize },
    /// `a ∈ Γ(b)` but `b ∉ Γ(a)`.
    Asymmetric { a: Vertex, b: Vertex },
    Disconnected,
}

impl fmt::Display for TpigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TpigViolation::Tree { axis, reason } => write!(f, "{axis:?} tree: {reason}"),
            TpigViolation::EndpointOutOfRange { vertex } => {
                write!(f, "neighborhood endpoint of {vertex} out of range")
            }
            TpigViolation::SizeMismatch { axis, tree, boundary } => write!(
                f,
                "{axis:?} tree has {tree} vertices but {boundary} neighborhood entries"
            ),
            TpigViolation::Asymmetric { a, b } => {
                write!(f, "{a} is a neighbor of {b} but not vice versa")
            }
            TpigViolation::Disconnected => write!(f, "graph is not connected"),
        }
    }
}

/// Interchange format for abstract (non-geometric) instances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TpigFile {
    pub t_h_parent: Vec<i64>,
    pub t_v_parent: Vec<i64>,
    pub boundary_gamma_h: Vec<[usize; 2]>,
    pub boundary_gamma_v: Vec<[usize; 2]>,
}

fn parents_from_file(raw: &[i64]) -> std::result::Result<Vec<Option<usize>>, String> {
    raw.iter()
        .map(|&p| match p {
            -1 => Ok(None),
            p if p >= 0 => Ok(Some(p as usize)),
            p => Err(format!("invalid parent {p}")),
        })
        .collect()
}

impl SparseTpig {
    pub fn num_h(&self) -> usize {
        self.t_h.len()
    }

    pub fn num_v(&self) -> usize {
        self.t_v.len()
    }

    pub fn tree(&self, axis: Axis) -> &RTree {
        match axis {
            Axis::Horizontal => &self.t_h,
            Axis::Vertical => &self.t_v,
        }
    }

    pub fn boundary_gamma(&self, s: Vertex) -> (usize, usize) {
        match s.axis {
            Axis::Horizontal => self.boundary_gamma_h[s.index],
            Axis::Vertical => self.boundary_gamma_v[s.index],
        }
    }

    /// `Γ(s)` as an explicit path in the opposite tree.
    pub fn gamma(&self, s: Vertex) -> Vec<usize> {
        let (a, b) = self.boundary_gamma(s);
        self.tree(s.axis.opposite()).path(a, b)
    }

    /// All edges, ordered by `h` then by position along `Γ(h)`.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.num_h())
            .flat_map(|h| self.gamma(Vertex::h(h)).into_iter().map(move |v| Edge::new(h, v)))
            .collect()
    }

    /// Checks the tree-path intersection graph axioms: both trees are trees,
    /// every neighborhood is a path (implied by the endpoint encoding, given
    /// endpoints in range), neighborhoods are mutually consistent, and the
    /// graph is connected. Quadratic in the vertex count.
    pub fn validate(&self) -> Vec<TpigViolation> {
        let mut out = Vec::new();
        for (axis, tree, bounds) in [
            (Axis::Horizontal, &self.t_h, &self.boundary_gamma_h),
            (Axis::Vertical, &self.t_v, &self.boundary_gamma_v),
        ] {
            if tree.len() != bounds.len() {
                out.push(TpigViolation::SizeMismatch {
                    axis,
                    tree: tree.len(),
                    boundary: bounds.len(),
                });
            }
            let other = self.tree(axis.opposite()).len();
            for (i, &(a, b)) in bounds.iter().enumerate() {
                if a >= other || b >= other {
                    out.push(TpigViolation::EndpointOutOfRange {
                        vertex: Vertex { axis, index: i },
                    });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        let nh = self.num_h();
        let nv = self.num_v();
        let mut adj_h = vec![vec![false; nv]; nh];
        for (h, row) in adj_h.iter_mut().enumerate() {
            for v in self.gamma(Vertex::h(h)) {
                row[v] = true;
            }
        }
        let mut adj_v = vec![vec![false; nh]; nv];
        for (v, row) in adj_v.iter_mut().enumerate() {
            for h in self.gamma(Vertex::v(v)) {
                row[h] = true;
            }
        }
        for h in 0..nh {
            for v in 0..nv {
                if adj_h[h][v] != adj_v[v][h] {
                    let (a, b) = if adj_h[h][v] {
                        (Vertex::v(v), Vertex::h(h))
                    } else {
                        (Vertex::h(h), Vertex::v(v))
                    };
                    out.push(TpigViolation::Asymmetric { a, b });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        let mut seen_h = vec![false; nh];
        let mut seen_v = vec![false; nv];
        let mut stack = vec![Vertex::h(0)];
        seen_h[0] = true;
        while let Some(s) = stack.pop() {
            for t in self.gamma(s) {
                let (seen, next) = match s.axis {
                    Axis::Horizontal => (&mut seen_v[t], Vertex::v(t)),
                    Axis::Vertical => (&mut seen_h[t], Vertex::h(t)),
                };
                if !*seen {
                    *seen = true;
                    stack.push(next);
                }
            }
        }
        if seen_h.contains(&false) || seen_v.contains(&false) {
            out.push(TpigViolation::Disconnected);
        }
        out
    }

    pub fn from_file(file: &TpigFile) -> Result<Self> {
        let mut violations = Vec::new();
        let mut tree = |axis, raw: &[i64]| match parents_from_file(raw).and_then(RTree::from_parents) {
            Ok(t) => Some(t),
            Err(reason) => {
                violations.push(TpigViolation::Tree { axis, reason });
                None
            }
        };
        let t_h = tree(Axis::Horizontal, &file.t_h_parent);
        let t_v = tree(Axis::Vertical, &file.t_v_parent);
        let (Some(t_h), Some(t_v)) = (t_h, t_v) else {
            return Err(Error::InvalidTpig(violations));
        };
        let g = SparseTpig {
            t_h,
            t_v,
            boundary_gamma_h: file.boundary_gamma_h.iter().map(|&[a, b]| (a, b)).collect(),
            boundary_gamma_v: file.boundary_gamma_v.iter().map(|&[a, b]| (a, b)).collect(),
        };
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidTpig(violations))
        }
    }

    pub fn to_file(&self) -> TpigFile {
        let parents = |t: &RTree| {
            t.parents()
                .iter()
                .map(|p| p.map_or(-1, |p| p as i64))
                .collect()
        };
        TpigFile {
            t_h_parent: parents(&self.t_h),
            t_v_parent: parents(&self.t_v),
            boundary_gamma_h: self.boundary_gamma_h.iter().map(|&(a, b)| [a, b]).collect(),
            boundary_gamma_v: self.boundary_gamma_v.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: TpigFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        SparseTpig::from_file(&file)
    }
}
