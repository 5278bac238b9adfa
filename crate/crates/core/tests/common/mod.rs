#![allow(dead_code)]

pub mod lemmas;

use std::path::PathBuf;

use orthoguard::{generate_polygon, generate_staircase, parse_polygon, Axis, ChildOrder, Pipeline, Polygon, Vertex};

pub fn fixture(name: &str) -> Polygon {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"));
    parse_polygon(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub const FIXTURES: [(&str, usize); 4] = [("sq", 1), ("l6", 1), ("plus12", 1), ("comb12", 3)];

/// The acceptance corpus: seed `s` grows a polyomino of `5 + s mod 26` cells.
pub fn corpus_polygon(seed: u64) -> Polygon {
    generate_polygon(seed, 5 + (seed % 26) as usize)
}

/// A solved polygon together with its neighborhoods recomputed from the
/// slice rectangles, independent of the sparse representation.
pub struct Instance {
    pub label: String,
    pub run: Pipeline,
    /// `adj[h][v]`: interiors of `h` and `v` intersect.
    pub adj: Vec<Vec<bool>>,
}

impl Instance {
    pub fn new(label: impl Into<String>, p: &Polygon) -> Self {
        Self::from_run(label, Pipeline::from_polygon(p).unwrap())
    }

    pub fn from_run(label: impl Into<String>, run: Pipeline) -> Self {
        let raster = run.raster.as_ref().expect("geometric instance");
        let adj = raster
            .h_slices
            .iter()
            .map(|h| raster.v_slices.iter().map(|v| h.rect.interiors_intersect(&v.rect)).collect())
            .collect();
        Instance { label: label.into(), run, adj }
    }

    pub fn num(&self, axis: Axis) -> usize {
        match axis {
            Axis::Horizontal => self.adj.len(),
            Axis::Vertical => self.adj[0].len(),
        }
    }

    pub fn slices(&self) -> usize {
        self.num(Axis::Horizontal) + self.num(Axis::Vertical)
    }

    /// `t ∈ Γ(s)` by rectangle overlap.
    pub fn has(&self, s: Vertex, t: usize) -> bool {
        match s.axis {
            Axis::Horizontal => self.adj[s.index][t],
            Axis::Vertical => self.adj[t][s.index],
        }
    }

    pub fn gamma(&self, s: Vertex) -> Vec<usize> {
        (0..self.num(s.axis.opposite())).filter(|&t| self.has(s, t)).collect()
    }

    pub fn edge(&self, h: usize, v: usize) -> bool {
        self.adj[h][v]
    }

    /// `a ≤ b` in the rooted tree, by walking parents from `b`.
    pub fn ancestor(&self, axis: Axis, a: usize, b: usize) -> bool {
        let tree = self.run.order.tree(axis).tree();
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = tree.parent(c);
        }
        false
    }

    /// The element of `set` below which all others lie, if any.
    pub fn brute_min(&self, axis: Axis, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&m| set.iter().all(|&t| self.ancestor(axis, m, t)))
    }

    pub fn is_root(&self, s: Vertex) -> bool {
        self.run.order.tree(s.axis).root() == s.index
    }

    /// Some r-guard sees both edges.
    pub fn brute_dependent(&self, (h1, v1): (usize, usize), (h2, v2): (usize, usize)) -> bool {
        let meet = |a: Vertex, b: Vertex| self.gamma(a).iter().any(|&t| self.has(b, t));
        meet(Vertex::h(h1), Vertex::h(h2)) && meet(Vertex::v(v1), Vertex::v(v2))
    }
}

/// Generated instances with at most `max_slices` slices, `count` of them.
pub fn instances(max_slices: usize, count: usize) -> Vec<Instance> {
    instances_with(max_slices, count, ChildOrder::Ascending)
}

pub fn instances_with(max_slices: usize, count: usize, order: ChildOrder) -> Vec<Instance> {
    let span = (max_slices * 3 / 2) as u64;
    let mut out = Vec::new();
    let mut seed = 1u64;
    while out.len() < count {
        let (label, p) = if seed.is_multiple_of(4) {
            let columns = 2 + (seed / 4 % (span / 2)) as usize;
            (format!("staircase seed {seed} columns {columns}"), generate_staircase(seed, columns))
        } else {
            let cells = 2 + (seed % span) as usize;
            (format!("seed {seed} cells {cells}"), generate_polygon(seed, cells))
        };
        let run = Pipeline::from_polygon_with(&p, order).unwrap();
        let inst = Instance::from_run(format!("{label} {order:?}"), run);
        if inst.slices() <= max_slices {
            out.push(inst);
        }
        seed += 1;
    }
    out
}
