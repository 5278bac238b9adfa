use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polygon::{Point, Polygon};
use super::slicing::build_slices;
use crate::tpig::Axis;

type Cell = (i64, i64);

/// Ring of the 8 neighbors of a cell, counterclockwise from east. Even
/// positions share an edge with the cell, odd positions only a corner.
const RING: [Cell; 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// Boundary of a random hole-free polyomino of `cells` unit cells.
///
/// Growth starts from one cell and repeatedly adds a uniformly chosen empty
/// cell that shares an edge with the polyomino. Additions that would pinch
/// the boundary at a corner or enclose a hole are rejected. The result is
/// deterministic in `seed` and always a valid simple orthogonal polygon.
pub fn generate_polygon(seed: u64, cells: usize) -> Polygon {
    assert!(cells >= 1, "need at least one cell");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut filled: HashSet<Cell> = HashSet::from([(0, 0)]);
    let mut frontier: Vec<Cell> = Vec::new();
    let mut in_frontier: HashSet<Cell> = HashSet::new();
    let push_neighbors = |c: Cell,
                              filled: &HashSet<Cell>,
                              frontier: &mut Vec<Cell>,
                              in_frontier: &mut HashSet<Cell>| {
        for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            let n = (c.0 + dx, c.1 + dy);
            if !filled.contains(&n) && in_frontier.insert(n) {
                frontier.push(n);
            }
        }
    };
    push_neighbors((0, 0), &filled, &mut frontier, &mut in_frontier);

    while filled.len() < cells {
        let k = rng.gen_range(0..frontier.len());
        let c = frontier[k];
        if !locally_simple(&filled, c) {
            continue;
        }
        filled.insert(c);
        if !hole_free(&filled) {
            filled.remove(&c);
            continue;
        }
        frontier.swap_remove(k);
        in_frontier.remove(&c);
        push_neighbors(c, &filled, &mut frontier, &mut in_frontier);
    }
    trace_boundary(&filled)
}

/// Adding `c` keeps the boundary a simple curve: the filled cells of its
/// neighbor ring form one contiguous run, and no filled corner cell touches
/// `c` at a point only.
fn locally_simple(filled: &HashSet<Cell>, c: Cell) -> bool {
    let occ: Vec<bool> = RING
        .iter()
        .map(|&(dx, dy)| filled.contains(&(c.0 + dx, c.1 + dy)))
        .collect();
    for k in (1..8).step_by(2) {
        if occ[k] && !occ[k - 1] && !occ[(k + 1) % 8] {
            return false;
        }
    }
    let runs = (0..8).filter(|&k| occ[k] && !occ[(k + 7) % 8]).count();
    runs == 1
}

/// Every empty cell of the padded bounding box is reachable from outside.
fn hole_free(filled: &HashSet<Cell>) -> bool {
    let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for &(x, y) in filled {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (x0, x1, y0, y1) = (x0 - 1, x1 + 1, y0 - 1, y1 + 1);
    let w = (x1 - x0 + 1) as usize;
    let h = (y1 - y0 + 1) as usize;
    let idx = |x: i64, y: i64| (y - y0) as usize * w + (x - x0) as usize;
    let mut seen = vec![false; w * h];
    for &(x, y) in filled {
        seen[idx(x, y)] = true;
    }
    let empty = w * h - filled.len();
    let mut reached = 1;
    seen[idx(x0, y0)] = true;
    let mut queue = VecDeque::from([(x0, y0)]);
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            let (nx, ny) = (x + dx, y + dy);
            if nx < x0 || nx > x1 || ny < y0 || ny > y1 || seen[idx(nx, ny)] {
                continue;
            }
            seen[idx(nx, ny)] = true;
            reached += 1;
            queue.push_back((nx, ny));
        }
    }
    reached == empty
}

/// Counterclockwise boundary of a hole-free, pinch-free polyomino, starting
/// at its lowest-leftmost corner and translated so the bounding box starts
/// at the origin.
pub(crate) fn trace_boundary(filled: &HashSet<Cell>) -> Polygon {
    let mut next: HashMap<Cell, Cell> = HashMap::new();
    for &(x, y) in filled {
        let empty = |dx: i64, dy: i64| !filled.contains(&(x + dx, y + dy));
        if empty(0, -1) {
            next.insert((x, y), (x + 1, y));
        }
        if empty(1, 0) {
            next.insert((x + 1, y), (x + 1, y + 1));
        }
        if empty(0, 1) {
            next.insert((x + 1, y + 1), (x, y + 1));
        }
        if empty(-1, 0) {
            next.insert((x, y + 1), (x, y));
        }
    }
    let start = *next
        .keys()
        .min_by_key(|&&(x, y)| (y, x))
        .expect("non-empty polyomino");
    let mut walk = vec![start];
    let mut cur = next[&start];
    while cur != start {
        walk.push(cur);
        cur = next[&cur];
    }
    debug_assert_eq!(walk.len(), next.len(), "boundary is not a single loop");

    let m = walk.len();
    let dir = |i: usize| {
        let (a, b) = (walk[i % m], walk[(i + 1) % m]);
        (b.0 - a.0, b.1 - a.1)
    };
    let x0 = filled.iter().map(|c| c.0).min().unwrap();
    let y0 = filled.iter().map(|c| c.1).min().unwrap();
    let vertices = (0..m)
        .filter(|&i| dir(i + m - 1) != dir(i))
        .map(|i| Point::new(walk[i].0 - x0, walk[i].1 - y0))
        .collect();
    Polygon::new(vertices)
}

/// An x-monotone staircase polygon of `columns` unit-wide columns, used for
/// benchmarking. Column extents follow random walks with persistent trends,
/// which yields many reflex vertices per cell.
pub fn generate_staircase(seed: u64, columns: usize) -> Polygon {
    assert!(columns >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (0i64, 4i64);
    let (mut trend_lo, mut trend_hi) = (1i64, 1i64);
    let mut filled = HashSet::new();
    for x in 0..columns as i64 {
        for y in lo..hi {
            filled.insert((x, y));
        }
        loop {
            if rng.gen_bool(0.2) {
                trend_lo = -trend_lo;
            }
            if rng.gen_bool(0.2) {
                trend_hi = -trend_hi;
            }
            let nlo = lo + trend_lo * rng.gen_range(0..=2);
            let nhi = hi + trend_hi * rng.gen_range(0..=2);
            let height_ok = (1..=24).contains(&(nhi - nlo));
            if height_ok && nlo.max(lo) < nhi.min(hi) {
                lo = nlo;
                hi = nhi;
                break;
            }
        }
    }
    trace_boundary(&filled)
}

/// A staircase whose total slice count (both axes) is close to `target`.
/// The column count is refined by proportional correction.
pub fn staircase_with_slices(seed: u64, target: usize) -> Polygon {
    let count = |p: &Polygon| {
        let h = build_slices(p, Axis::Horizontal).map_or(0, |s| s.len());
        let v = build_slices(p, Axis::Vertical).map_or(0, |s| s.len());
        h + v
    };
    let mut columns = (target * 4 / 7).max(1);
    let mut best = generate_staircase(seed, columns);
    let mut n = count(&best);
    let mut best_err = n.abs_diff(target);
    for _ in 0..6 {
        let next = (columns * target / n.max(1)).max(1);
        if next == columns {
            break;
        }
        columns = next;
        let p = generate_staircase(seed, columns);
        n = count(&p);
        if n.abs_diff(target) < best_err {
            best_err = n.abs_diff(target);
            best = p;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_polygon;

    #[test]
    fn one_cell_is_unit_square() {
        for seed in [0, 1, 99] {
            let p = generate_polygon(seed, 1);
            assert_eq!(
                p.vertices(),
                &[Point::new(0, 0), Point::new(1, 0), Point::new(1, 1), Point::new(0, 1)]
            );
        }
    }

    #[test]
    fn generated_polygons_are_valid_and_deterministic() {
        let p = generate_polygon(7, 20);
        assert!(validate_polygon(&p).is_empty());
        assert_eq!(p.area(), 20);
        assert_eq!(p, generate_polygon(7, 20));
        for seed in 0..40 {
            let p = generate_polygon(seed, 1 + seed as usize);
            assert!(validate_polygon(&p).is_empty(), "seed {seed}");
            assert_eq!(p.area(), 1 + seed as i64);
        }
    }

    #[test]
    fn ring_rule() {
        let set = |cells: &[Cell]| cells.iter().copied().collect::<HashSet<Cell>>();
        // Two separate runs: the new cell would close a loop.
        assert!(!locally_simple(&set(&[(0, 0), (2, 0)]), (1, 0)));
        assert!(!locally_simple(&set(&[(0, 0), (1, 1)]), (1, 0)));
        // Corner-only contact.
        assert!(!locally_simple(&set(&[(0, 0)]), (1, 1)));
        assert!(locally_simple(&set(&[(0, 0), (0, 1)]), (1, 0)));
        assert!(locally_simple(&set(&[(0, 0)]), (1, 0)));
    }

    #[test]
    fn staircase_is_valid() {
        let p = generate_staircase(3, 200);
        assert!(validate_polygon(&p).is_empty());
        assert_eq!(p, generate_staircase(3, 200));
    }
}
