use std::cmp::Ordering;
use std::collections::VecDeque;

use super::graph::{Axis, Edge, RTree, SparseTpig, Vertex};
use super::nca::NcaIndex;
use super::path::PathHandle;

/// Roots of the two R-trees: `v_root` is a leaf of `T_V` and
/// `h_root ∈ Γ(v_root)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Roots {
    pub h_root: usize,
    pub v_root: usize,
}

/// Picks the lowest-index leaf of `T_V` and its lowest-index neighbor.
pub fn choose_roots(g: &SparseTpig) -> Roots {
    let v_root = g
        .t_v
        .adjacency()
        .iter()
        .position(|adj| adj.len() <= 1)
        .expect("every tree has a leaf");
    let h_root = g
        .gamma(Vertex::v(v_root))
        .into_iter()
        .min()
        .expect("neighborhoods are non-empty");
    Roots { h_root, v_root }
}

/// Order in which breadth-first search visits the children of a vertex.
/// Either choice yields a valid linear extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChildOrder {
    #[default]
    Ascending,
    Descending,
}

/// One R-tree rooted for queries.
#[derive(Debug, Clone)]
pub struct RootedTree {
    tree: RTree,
    nca: NcaIndex,
    bfs_key: Vec<usize>,
}

impl RootedTree {
    pub fn new(tree: &RTree, root: usize, child_order: ChildOrder) -> Self {
        let tree = tree.rerooted(root);
        let mut children = vec![Vec::new(); tree.len()];
        for (c, p) in tree.edges() {
            children[p].push(c);
        }
        for list in &mut children {
            match child_order {
                ChildOrder::Ascending => list.sort_unstable(),
                ChildOrder::Descending => list.sort_unstable_by(|a, b| b.cmp(a)),
            }
        }
        let mut bfs_key = vec![0; tree.len()];
        let mut queue = VecDeque::from([root]);
        let mut next = 0;
        while let Some(u) = queue.pop_front() {
            bfs_key[u] = next;
            next += 1;
            queue.extend(children[u].iter().copied());
        }
        let nca = NcaIndex::new(root, &children);
        RootedTree { tree, nca, bfs_key }
    }

    pub fn tree(&self) -> &RTree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.tree.root()
    }

    pub fn nca(&self, a: usize, b: usize) -> usize {
        self.nca.nca(a, b)
    }

    /// `a ≤ b` in the tree order: `a` lies on the path from the root to `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.nca.is_ancestor(a, b)
    }

    pub fn depth(&self, a: usize) -> usize {
        self.nca.depth(a)
    }

    pub fn bfs_key(&self, a: usize) -> usize {
        self.bfs_key[a]
    }

    /// `t ∈ [a, b]`.
    pub fn on_path(&self, t: usize, a: usize, b: usize) -> bool {
        let top = self.nca(a, b);
        self.le(top, t) && (self.le(t, a) || self.le(t, b))
    }

    /// Endpoints of `[a, b] ∩ [c, d]`.
    ///
    /// The paths meet iff the deeper of the two path tops lies on the other
    /// path; the intersection then runs between the two deepest of the four
    /// cross NCAs.
    pub fn path_intersection(&self, p: PathHandle, q: PathHandle) -> PathHandle {
        let (Some((a, b)), Some((c, d))) = (p.endpoints(), q.endpoints()) else {
            return PathHandle::EMPTY;
        };
        let top_p = self.nca(a, b);
        let top_q = self.nca(c, d);
        let meets = if self.depth(top_p) >= self.depth(top_q) {
            self.le(top_q, top_p) && (self.le(top_p, c) || self.le(top_p, d))
        } else {
            self.le(top_p, top_q) && (self.le(top_q, a) || self.le(top_q, b))
        };
        if !meets {
            return PathHandle::EMPTY;
        }
        let mut cand = [self.nca(a, c), self.nca(a, d), self.nca(b, c), self.nca(b, d)];
        cand.sort_unstable_by_key(|&x| std::cmp::Reverse(self.depth(x)));
        PathHandle::new(cand[0], cand[1])
    }

    /// Vertices of `[a, b]` from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        self.tree.path(a, b)
    }
}

/// Rooted trees, NCA tables and the linear sweep order `<_ℓ`.
///
/// `<_ℓ` compares `(bfs(minΓ(s)), bfs(s))` lexicographically, where `bfs` is
/// the breadth-first index in the respective rooted tree. Breadth-first order
/// lists ancestors first, so this refines the order `<_b`.
#[derive(Debug, Clone)]
pub struct OrderIndex {
    roots: Roots,
    h: RootedTree,
    v: RootedTree,
    boundary_h: Vec<(usize, usize)>,
    boundary_v: Vec<(usize, usize)>,
    min_gamma_h: Vec<usize>,
    min_gamma_v: Vec<usize>,
    /// Position of each vertex in `<_ℓ` order within its class.
    rank_h: Vec<usize>,
    rank_v: Vec<usize>,
}

impl OrderIndex {
    pub fn build(g: &SparseTpig, roots: Roots, child_order: ChildOrder) -> Self {
        let h = RootedTree::new(&g.t_h, roots.h_root, child_order);
        let v = RootedTree::new(&g.t_v, roots.v_root, child_order);
        let min_gamma_h: Vec<usize> = g.boundary_gamma_h.iter().map(|&(a, b)| v.nca(a, b)).collect();
        let min_gamma_v: Vec<usize> = g.boundary_gamma_v.iter().map(|&(a, b)| h.nca(a, b)).collect();
        let rank = |own: &RootedTree, other: &RootedTree, min_gamma: &[usize]| {
            let mut order: Vec<usize> = (0..min_gamma.len()).collect();
            order.sort_unstable_by_key(|&s| (other.bfs_key(min_gamma[s]), own.bfs_key(s)));
            let mut rank = vec![0; order.len()];
            for (r, &s) in order.iter().enumerate() {
                rank[s] = r;
            }
            rank
        };
        let rank_h = rank(&h, &v, &min_gamma_h);
        let rank_v = rank(&v, &h, &min_gamma_v);
        OrderIndex {
            roots,
            h,
            v,
            boundary_h: g.boundary_gamma_h.clone(),
            boundary_v: g.boundary_gamma_v.clone(),
            min_gamma_h,
            min_gamma_v,
            rank_h,
            rank_v,
        }
    }

    /// Roots chosen by [`choose_roots`], ascending child order.
    pub fn new(g: &SparseTpig) -> Self {
        OrderIndex::build(g, choose_roots(g), ChildOrder::Ascending)
    }

    pub fn roots(&self) -> Roots {
        self.roots
    }

    pub fn num_h(&self) -> usize {
        self.boundary_h.len()
    }

    pub fn num_v(&self) -> usize {
        self.boundary_v.len()
    }

    pub fn tree(&self, axis: Axis) -> &RootedTree {
        match axis {
            Axis::Horizontal => &self.h,
            Axis::Vertical => &self.v,
        }
    }

    pub fn nca(&self, axis: Axis, a: usize, b: usize) -> usize {
        self.tree(axis).nca(a, b)
    }

    /// Tree order `a ≤ b` within one class.
    pub fn le(&self, axis: Axis, a: usize, b: usize) -> bool {
        self.tree(axis).le(a, b)
    }

    pub fn boundary_gamma(&self, s: Vertex) -> (usize, usize) {
        match s.axis {
            Axis::Horizontal => self.boundary_h[s.index],
            Axis::Vertical => self.boundary_v[s.index],
        }
    }

    pub fn gamma_handle(&self, s: Vertex) -> PathHandle {
        self.boundary_gamma(s).into()
    }

    /// `minΓ(s)`, the NCA of `∂Γ(s)`; an index into the opposite class.
    pub fn min_gamma(&self, s: Vertex) -> usize {
        match s.axis {
            Axis::Horizontal => self.min_gamma_h[s.index],
            Axis::Vertical => self.min_gamma_v[s.index],
        }
    }

    /// `t ∈ Γ(s)`, where `t` indexes the class opposite to `s`.
    pub fn gamma_contains(&self, s: Vertex, t: usize) -> bool {
        let (a, b) = self.boundary_gamma(s);
        let tree = self.tree(s.axis.opposite());
        tree.le(self.min_gamma(s), t) && (tree.le(t, a) || tree.le(t, b))
    }

    /// `Γ(s)` walked from the first endpoint of `∂Γ(s)` to the second.
    pub fn enumerate_gamma(&self, s: Vertex) -> Vec<usize> {
        let (a, b) = self.boundary_gamma(s);
        self.tree(s.axis.opposite()).path(a, b)
    }

    pub fn path_intersection(&self, axis: Axis, p: PathHandle, q: PathHandle) -> PathHandle {
        self.tree(axis).path_intersection(p, q)
    }

    /// `Γ(s1) ∩ Γ(s2) ≠ ∅` for two vertices of the same class.
    pub fn gammas_meet(&self, s1: Vertex, s2: Vertex) -> bool {
        debug_assert_eq!(s1.axis, s2.axis);
        !self
            .path_intersection(s1.axis.opposite(), self.gamma_handle(s1), self.gamma_handle(s2))
            .is_empty()
    }

    /// Rank of `s` in `<_ℓ` order within its class (0 is the smallest).
    pub fn ell_rank(&self, s: Vertex) -> usize {
        match s.axis {
            Axis::Horizontal => self.rank_h[s.index],
            Axis::Vertical => self.rank_v[s.index],
        }
    }

    /// The `<_ℓ` key: breadth-first index of `minΓ(s)`, then of `s`.
    pub fn ell_key(&self, s: Vertex) -> (usize, usize) {
        let other = self.tree(s.axis.opposite());
        (other.bfs_key(self.min_gamma(s)), self.tree(s.axis).bfs_key(s.index))
    }

    /// Compares two vertices of the same class in `<_ℓ` order.
    ///
    /// # Panics
    ///
    /// If the vertices belong to different classes; those are not comparable.
    pub fn cmp_ell(&self, s1: Vertex, s2: Vertex) -> Ordering {
        assert_eq!(s1.axis, s2.axis, "{s1} and {s2} are not comparable");
        self.ell_rank(s1).cmp(&self.ell_rank(s2))
    }

    pub fn lt_ell(&self, s1: Vertex, s2: Vertex) -> bool {
        self.cmp_ell(s1, s2) == Ordering::Less
    }

    pub fn le_ell(&self, s1: Vertex, s2: Vertex) -> bool {
        self.cmp_ell(s1, s2) != Ordering::Greater
    }

    /// Vertices of one class in increasing `<_ℓ` order.
    pub fn ell_sorted(&self, axis: Axis) -> Vec<usize> {
        let rank = match axis {
            Axis::Horizontal => &self.rank_h,
            Axis::Vertical => &self.rank_v,
        };
        let mut out = vec![0; rank.len()];
        for (s, &r) in rank.iter().enumerate() {
            out[r] = s;
        }
        out
    }

    pub fn is_edge(&self, e: Edge) -> bool {
        self.gamma_contains(Vertex::h(e.h), e.v)
    }

    /// All edges of the graph, ordered by `h` and then along `Γ(h)`.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.num_h())
            .flat_map(|h| {
                self.enumerate_gamma(Vertex::h(h))
                    .into_iter()
                    .map(move |v| Edge::new(h, v))
            })
            .collect()
    }

    /// No single r-guard covers both edges unless this holds.
    pub fn r_dependent(&self, e1: Edge, e2: Edge) -> bool {
        self.gammas_meet(Vertex::h(e1.h), Vertex::h(e2.h))
            && self.gammas_meet(Vertex::v(e1.v), Vertex::v(e2.v))
    }

    /// The r-guard `guard = hv` sees `target = h'v'` iff `hv'` and `h'v` are
    /// both edges.
    pub fn rguard_covers(&self, guard: Edge, target: Edge) -> bool {
        self.is_edge(Edge::new(guard.h, target.v)) && self.is_edge(Edge::new(target.h, guard.v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l6() -> SparseTpig {
        SparseTpig {
            t_h: RTree::from_edges(2, &[(0, 1)], 0).unwrap(),
            t_v: RTree::from_edges(2, &[(0, 1)], 0).unwrap(),
            boundary_gamma_h: vec![(0, 1), (0, 0)],
            boundary_gamma_v: vec![(0, 1), (0, 0)],
        }
    }

    #[test]
    fn roots_of_l6() {
        let g = l6();
        assert_eq!(choose_roots(&g), Roots { h_root: 0, v_root: 0 });
        let o = OrderIndex::new(&g);
        assert_eq!(o.min_gamma(Vertex::v(1)), 0);
        assert_eq!(o.min_gamma(Vertex::v(0)), 0);
        assert_eq!(o.enumerate_gamma(Vertex::v(0)), vec![0, 1]);
        assert!(o.gamma_contains(Vertex::h(0), 1));
        assert!(!o.gamma_contains(Vertex::h(1), 1));
    }

    #[test]
    fn l6_dependence_and_vision() {
        let o = OrderIndex::new(&l6());
        let (h0v0, h0v1, h1v0) = (Edge::new(0, 0), Edge::new(0, 1), Edge::new(1, 0));
        assert!(o.r_dependent(h0v1, h1v0));
        assert!(o.r_dependent(h0v0, h0v0));
        for e in [h0v0, h0v1, h1v0] {
            assert!(o.rguard_covers(h0v0, e));
        }
        assert!(!o.rguard_covers(h0v1, h1v0));
    }

    #[test]
    fn ell_order_basics() {
        let o = OrderIndex::new(&l6());
        let (a, b) = (Vertex::h(0), Vertex::h(1));
        assert!(!o.lt_ell(a, a));
        assert!(o.lt_ell(a, b) ^ o.lt_ell(b, a));
        assert_eq!(o.tree(Axis::Horizontal).bfs_key(o.roots().h_root), 0);
        assert_eq!(o.ell_sorted(Axis::Horizontal), vec![0, 1]);
    }

    #[test]
    #[should_panic(expected = "not comparable")]
    fn cross_class_comparison_panics() {
        let o = OrderIndex::new(&l6());
        o.lt_ell(Vertex::h(0), Vertex::v(0));
    }

    #[test]
    fn path_intersection_cases() {
        // 0 - 1 - 2 - 3, 1 - 4 - 5
        let t = RTree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)], 0).unwrap();
        let r = RootedTree::new(&t, 0, ChildOrder::Ascending);
        let p = PathHandle::new;
        assert!(r.path_intersection(p(3, 5), p(3, 5)).same_set(&p(3, 5)));
        assert!(r.path_intersection(p(3, 3), p(5, 5)).is_empty());
        assert!(r.path_intersection(p(2, 3), p(4, 5)).is_empty());
        assert!(r.path_intersection(p(3, 5), p(0, 2)).same_set(&p(1, 2)));
        assert!(r.path_intersection(p(3, 5), p(0, 1)).same_set(&p(1, 1)));
        assert!(r.path_intersection(p(0, 3), p(5, 2)).same_set(&p(1, 2)));
        assert!(r.path_intersection(p(0, 3), PathHandle::EMPTY).is_empty());
    }
}
