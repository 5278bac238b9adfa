use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// A simple orthogonal polygon, vertices in counterclockwise order.
///
/// Construction does not validate; call [`validate_polygon`] (or
/// [`Polygon::validated`]) before handing the polygon to the slicer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[i64; 2]>,
}

impl Polygon {
    /// Wraps a vertex list, reversing it if it is clockwise.
    pub fn new(mut vertices: Vec<Point>) -> Self {
        if twice_signed_area(&vertices) < 0 {
            vertices.reverse();
        }
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Enclosed area (shoelace).
    pub fn area(&self) -> i64 {
        twice_signed_area(&self.vertices).abs() / 2
    }

    /// Edges as `(start, end)` pairs; edge `i` runs from vertex `i` to `i + 1`.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn validated(self) -> Result<Self> {
        let violations = validate_polygon(&self);
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidPolygon(violations))
        }
    }

    /// Serializes to the `{"vertices": [[x, y], ...]}` text format.
    pub fn to_json(&self) -> String {
        let file = PolygonFile {
            vertices: self.vertices.iter().map(|p| [p.x, p.y]).collect(),
        };
        serde_json::to_string(&file).expect("polygon serialization cannot fail")
    }

    /// Ray-casting containment test for a point given in doubled
    /// coordinates. Points on the boundary report `false`.
    pub fn strictly_contains_doubled(&self, x2: i64, y2: i64) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            let (ax, ay, bx, by) = (2 * a.x, 2 * a.y, 2 * b.x, 2 * b.y);
            if ax == bx {
                let (lo, hi) = (ay.min(by), ay.max(by));
                if x2 == ax && (lo..=hi).contains(&y2) {
                    return false;
                }
                // Half-open rule on y avoids double counting at vertices.
                if ax > x2 && lo <= y2 && y2 < hi {
                    inside = !inside;
                }
            } else if y2 == ay && (ax.min(bx)..=ax.max(bx)).contains(&x2) {
                return false;
            }
        }
        inside
    }
}

/// Parses the polygon text format. The vertex list is kept verbatim except
/// that clockwise input is reversed.
pub fn parse_polygon(text: &str) -> Result<Polygon> {
    let file: PolygonFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.vertices.len() < 4 {
        return Err(Error::TooFewVertices(file.vertices.len()));
    }
    Ok(Polygon::new(
        file.vertices
            .into_iter()
            .map(|[x, y]| Point::new(x, y))
            .collect(),
    ))
}

fn twice_signed_area(vertices: &[Point]) -> i64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum()
}

/// A violated polygon invariant; indices refer to vertices (edge `i` starts
/// at vertex `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices { count: usize },
    OddVertexCount { count: usize },
    RepeatedVertex { index: usize, first: usize },
    DegenerateEdge { index: usize },
    NotAxisParallel { index: usize },
    /// Edges `index - 1` and `index` are both horizontal or both vertical.
    NotAlternating { index: usize },
    /// Non-adjacent edges `index` and `other` touch or cross.
    NotSimple { index: usize, other: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { count } => write!(f, "only {count} vertices"),
            Violation::OddVertexCount { count } => write!(f, "odd vertex count {count}"),
            Violation::RepeatedVertex { index, first } => {
                write!(f, "vertex {index} repeats vertex {first}")
            }
            Violation::DegenerateEdge { index } => write!(f, "edge {index} has zero length"),
            Violation::NotAxisParallel { index } => write!(f, "edge {index} is not axis-parallel"),
            Violation::NotAlternating { index } => {
                write!(f, "edges meeting at vertex {index} are collinear")
            }
            Violation::NotSimple { index, other } => {
                write!(f, "boundary not simple: edges {index} and {other} intersect")
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Horizontal,
    Vertical,
    Other,
}

/// Checks every polygon invariant, returning all violations found (empty
/// means valid). The simplicity test compares all non-adjacent edge pairs.
pub fn validate_polygon(p: &Polygon) -> Vec<Violation> {
    let v = p.vertices();
    let n = v.len();
    let mut out = Vec::new();
    if n < 4 {
        out.push(Violation::TooFewVertices { count: n });
        return out;
    }
    if n % 2 == 1 {
        out.push(Violation::OddVertexCount { count: n });
    }

    let mut seen = HashMap::with_capacity(n);
    for (i, pt) in v.iter().enumerate() {
        if let Some(&first) = seen.get(pt) {
            out.push(Violation::RepeatedVertex { index: i, first });
        } else {
            seen.insert(*pt, i);
        }
    }

    let dirs: Vec<Dir> = p
        .edges()
        .enumerate()
        .map(|(i, (a, b))| {
            if a == b {
                out.push(Violation::DegenerateEdge { index: i });
                Dir::Other
            } else if a.y == b.y {
                Dir::Horizontal
            } else if a.x == b.x {
                Dir::Vertical
            } else {
                out.push(Violation::NotAxisParallel { index: i });
                Dir::Other
            }
        })
        .collect();
    for i in 0..n {
        let prev = dirs[(i + n - 1) % n];
        if prev != Dir::Other && prev == dirs[i] {
            out.push(Violation::NotAlternating { index: i });
        }
    }
    if dirs.contains(&Dir::Other) {
        return out;
    }

    // Axis-parallel segments coincide with their bounding boxes, so closed
    // intersection is box overlap.
    let boxes: Vec<(i64, i64, i64, i64)> = p
        .edges()
        .map(|(a, b)| (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y)))
        .collect();
    for i in 0..n {
        let (ax0, ax1, ay0, ay1) = boxes[i];
        for (j, &(bx0, bx1, by0, by1)) in boxes.iter().enumerate().skip(i + 2) {
            if i == 0 && j == n - 1 {
                continue;
            }
            if ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1 {
                out.push(Violation::NotSimple { index: i, other: j });
            }
        }
    }
    // Consecutive collinear edges may overlap; the simplicity pass above skips
    // adjacent pairs, but NotAlternating already reported them.
    out
}
