use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::polygon::{Point, Polygon};
use crate::error::{Error, Result};
use crate::tpig::Axis;

/// Closed axis-aligned rectangle with integer corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Rect {
    pub const fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Self {
        Rect { x_min, x_max, y_min, y_max }
    }

    pub fn area(&self) -> i64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }

    pub fn transposed(&self) -> Rect {
        Rect::new(self.y_min, self.y_max, self.x_min, self.x_max)
    }

    /// Intersection of the closed rectangles, if non-empty.
    pub fn intersection(&self, other: &Rect) -> Option<Rect> {
        let r = Rect::new(
            self.x_min.max(other.x_min),
            self.x_max.min(other.x_max),
            self.y_min.max(other.y_min),
            self.y_max.min(other.y_max),
        );
        (r.x_min <= r.x_max && r.y_min <= r.y_max).then_some(r)
    }

    pub fn interiors_intersect(&self, other: &Rect) -> bool {
        self.intersection(other).is_some_and(|r| r.area() > 0)
    }

    /// Center in doubled coordinates.
    pub fn center_doubled(&self) -> (i64, i64) {
        (self.x_min + self.x_max, self.y_min + self.y_max)
    }
}

/// A maximal rectangle of the horizontal or vertical slicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slice {
    pub index: usize,
    pub axis: Axis,
    pub rect: Rect,
}

/// Slices of one axis together with the edges of their intersection tree.
#[derive(Debug, Clone)]
pub(crate) struct Slicing {
    pub slices: Vec<Slice>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// Cuts a valid polygon at every reflex vertex perpendicular to `axis`'s
/// normal: horizontal slices come from horizontal cuts. Horizontal slices are
/// indexed in `(y_min, x_min)` order, vertical ones in `(x_min, y_min)` order.
pub fn build_slices(p: &Polygon, axis: Axis) -> Result<Vec<Slice>> {
    Ok(slicing(p, axis)?.slices)
}

pub(crate) fn slicing(p: &Polygon, axis: Axis) -> Result<Slicing> {
    let (rects, edges) = match axis {
        Axis::Horizontal => sweep(p.vertices())?,
        Axis::Vertical => {
            // Swapping x and y mirrors the polygon, so reverse to stay
            // counterclockwise.
            let mut t: Vec<Point> = p.vertices().iter().map(|q| Point::new(q.y, q.x)).collect();
            t.reverse();
            let (rects, edges) = sweep(&t)?;
            (rects.iter().map(Rect::transposed).collect(), edges)
        }
    };

    let mut order: Vec<usize> = (0..rects.len()).collect();
    match axis {
        Axis::Horizontal => order.sort_by_key(|&i| (rects[i].y_min, rects[i].x_min)),
        Axis::Vertical => order.sort_by_key(|&i| (rects[i].x_min, rects[i].y_min)),
    }
    let mut rank = vec![0; rects.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let slices = order
        .iter()
        .enumerate()
        .map(|(index, &old)| Slice { index, axis, rect: rects[old] })
        .collect();
    let tree_edges = edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    Ok(Slicing { slices, tree_edges })
}

struct VerticalEdge {
    x: i64,
    y_lo: i64,
    y_hi: i64,
    /// Interior lies to the east (the edge runs downward in a CCW polygon).
    left_wall: bool,
}

struct OpenSlice {
    right: i64,
    id: usize,
}

/// Slice rectangles and R-tree edges.
type SweepOutput = (Vec<Rect>, Vec<(usize, usize)>);

/// Horizontal slicing by a bottom-to-top sweep.
///
/// A slice ends at level `y` exactly when some vertex at height `y` lies in
/// its closed x-range, and likewise a slice starts at `y` when it contains a
/// vertex at `y`. Slices touching across `y` are joined in the tree.
fn sweep(vertices: &[Point]) -> Result<SweepOutput> {
    let n = vertices.len();
    let mut levels: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for v in vertices {
        levels.entry(v.y).or_default().push(v.x);
    }
    let mut starting: BTreeMap<i64, Vec<VerticalEdge>> = BTreeMap::new();
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        if a.x == b.x {
            let e = VerticalEdge {
                x: a.x,
                y_lo: a.y.min(b.y),
                y_hi: a.y.max(b.y),
                left_wall: b.y < a.y,
            };
            starting.entry(e.y_lo).or_default().push(e);
        }
    }
    let mut ending: BTreeMap<i64, Vec<i64>> = BTreeMap::new();

    // x -> is_left_wall for vertical edges crossing the current strip.
    let mut active: BTreeMap<i64, bool> = BTreeMap::new();
    let mut open: BTreeMap<i64, OpenSlice> = BTreeMap::new();
    let mut rects: Vec<Rect> = Vec::new();
    let mut tree_edges = Vec::new();

    for (&y, xs) in &levels {
        let mut closed: Vec<(i64, i64, usize)> = Vec::new();
        let mut seen = BTreeSet::new();
        for &x in xs {
            let hit = open
                .range(..=x)
                .next_back()
                .filter(|(_, s)| s.right >= x)
                .map(|(&left, _)| left);
            if let Some(left) = hit {
                if seen.insert(left) {
                    let s = open.remove(&left).expect("present");
                    rects[s.id].y_max = y;
                    if rects[s.id].y_min == y {
                        return Err(Error::Internal(format!("empty slice at y={y}")));
                    }
                    closed.push((left, s.right, s.id));
                }
            }
        }

        if let Some(xs_end) = ending.remove(&y) {
            for x in xs_end {
                active.remove(&x);
            }
        }
        if let Some(es) = starting.remove(&y) {
            for e in es {
                if active.insert(e.x, e.left_wall).is_some() {
                    return Err(Error::Internal(format!("overlapping walls at x={}", e.x)));
                }
                ending.entry(e.y_hi).or_default().push(e.x);
            }
        }

        let mut opened: Vec<(i64, i64, usize)> = Vec::new();
        let mut seen = BTreeSet::new();
        for &x in xs {
            if let Some((left, right)) = interval_above(&active, x)? {
                if seen.insert(left) {
                    if open.contains_key(&left) {
                        return Err(Error::Internal(format!("slice reopened at ({left},{y})")));
                    }
                    let id = rects.len();
                    rects.push(Rect::new(left, right, y, y));
                    open.insert(left, OpenSlice { right, id });
                    opened.push((left, right, id));
                }
            }
        }

        closed.sort_unstable();
        opened.sort_unstable();
        link_levels(&closed, &opened, y, &mut tree_edges)?;
    }

    if !open.is_empty() {
        return Err(Error::Internal("slices left open after sweep".into()));
    }
    Ok((rects, tree_edges))
}

/// The interior interval just above height `y` whose closure contains `x`,
/// given the walls crossing the strip above.
fn interval_above(active: &BTreeMap<i64, bool>, x: i64) -> Result<Option<(i64, i64)>> {
    let next_after = |x: i64| active.range(x + 1..).next().map(|(&k, &l)| (k, l));
    let prev_before = |x: i64| active.range(..x).next_back().map(|(&k, &l)| (k, l));
    let bad = || Error::Internal(format!("wall sequence broken near x={x}"));
    let found = match active.get(&x) {
        Some(true) => match next_after(x) {
            Some((r, false)) => Some((x, r)),
            _ => return Err(bad()),
        },
        Some(false) => match prev_before(x) {
            Some((l, true)) => Some((l, x)),
            _ => return Err(bad()),
        },
        None => match prev_before(x) {
            Some((l, true)) => match next_after(x) {
                Some((r, false)) => Some((l, r)),
                _ => return Err(bad()),
            },
            _ => None,
        },
    };
    Ok(found)
}

/// Joins slices ending at `y` to slices starting at `y` whose x-ranges
/// overlap in a segment. Point contacts cannot happen in a simple polygon.
fn link_levels(
    closed: &[(i64, i64, usize)],
    opened: &[(i64, i64, usize)],
    y: i64,
    out: &mut Vec<(usize, usize)>,
) -> Result<()> {
    let (mut i, mut j) = (0, 0);
    while i < closed.len() && j < opened.len() {
        let (l1, r1, a) = closed[i];
        let (l2, r2, b) = opened[j];
        let lo = l1.max(l2);
        let hi = r1.min(r2);
        if lo < hi {
            out.push((a, b));
        } else if lo == hi {
            return Err(Error::Internal(format!("slices touch only at point ({lo},{y})")));
        }
        if r1 <= r2 {
            i += 1;
        }
        if r2 <= r1 {
            j += 1;
        }
    }
    Ok(())
}

/// Locates points (doubled coordinates, never on a rectangle boundary) in a
/// set of interior-disjoint rectangles by a sweep over x.
pub(crate) fn locate(rects: &[Rect], queries: &[(i64, i64)]) -> Vec<Option<usize>> {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Event {
        // Variant order fixes the processing order at equal x.
        Remove(usize),
        Insert(usize),
        Query(usize),
    }
    let mut events: Vec<(i64, Event)> = Vec::with_capacity(2 * rects.len() + queries.len());
    for (i, r) in rects.iter().enumerate() {
        events.push((2 * r.x_min, Event::Insert(i)));
        events.push((2 * r.x_max, Event::Remove(i)));
    }
    for (i, q) in queries.iter().enumerate() {
        events.push((q.0, Event::Query(i)));
    }
    events.sort_unstable();

    let mut active: BTreeMap<i64, (i64, usize)> = BTreeMap::new();
    let mut out = vec![None; queries.len()];
    for (_, e) in events {
        match e {
            Event::Insert(i) => {
                active.insert(2 * rects[i].y_min, (2 * rects[i].y_max, i));
            }
            Event::Remove(i) => {
                active.remove(&(2 * rects[i].y_min));
            }
            Event::Query(q) => {
                let y = queries[q].1;
                out[q] = active
                    .range(..y)
                    .next_back()
                    .filter(|(_, &(top, _))| top > y)
                    .map(|(_, &(_, i))| i);
            }
        }
    }
    out
}
