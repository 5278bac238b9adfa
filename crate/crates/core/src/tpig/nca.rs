/// Nearest common ancestors in O(1) per query after O(n log n)
/// preprocessing: Euler tour plus a sparse table of depth minima.
#[derive(Debug, Clone)]
pub struct NcaIndex {
    depth: Vec<u32>,
    first: Vec<u32>,
    /// Entry and exit times of a DFS, for constant-time ancestor tests.
    tin: Vec<u32>,
    tout: Vec<u32>,
    /// `table[k][i]` is the shallowest tour vertex in `tour[i .. i + 2^k]`.
    table: Vec<Vec<u32>>,
}

impl NcaIndex {
    /// `children[u]` lists the children of `u` in the rooted tree.
    pub fn new(root: usize, children: &[Vec<usize>]) -> Self {
        let n = children.len();
        let mut depth = vec![0u32; n];
        let mut first = vec![0u32; n];
        let mut tin = vec![0u32; n];
        let mut tout = vec![0u32; n];
        let mut tour: Vec<u32> = Vec::with_capacity(2 * n);
        let mut clock = 0u32;

        // Iterative DFS; the frame holds the next child position to visit.
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        first[root] = 0;
        tin[root] = 0;
        tour.push(root as u32);
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < children[u].len() {
                let c = children[u][*next];
                *next += 1;
                depth[c] = depth[u] + 1;
                clock += 1;
                tin[c] = clock;
                first[c] = tour.len() as u32;
                tour.push(c as u32);
                stack.push((c, 0));
            } else {
                tout[u] = clock;
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    tour.push(p as u32);
                }
            }
        }

        let m = tour.len();
        let mut table = vec![tour];
        let mut k = 1;
        while (1 << k) <= m {
            let prev = &table[k - 1];
            let half = 1 << (k - 1);
            let row: Vec<u32> = (0..=m - (1 << k))
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + half]);
                    if depth[a as usize] <= depth[b as usize] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            table.push(row);
            k += 1;
        }
        NcaIndex { depth, first, tin, tout, table }
    }

    pub fn nca(&self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        let (fa, fb) = (self.first[a] as usize, self.first[b] as usize);
        let (lo, hi) = if fa <= fb { (fa, fb) } else { (fb, fa) };
        let k = usize::BITS - 1 - (hi - lo + 1).leading_zeros();
        let row = &self.table[k as usize];
        let (x, y) = (row[lo], row[hi + 1 - (1 << k)]);
        if self.depth[x as usize] <= self.depth[y as usize] {
            x as usize
        } else {
            y as usize
        }
    }

    /// `a` lies on the path from the root to `b` (inclusive).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn depth(&self, a: usize) -> usize {
        self.depth[a] as usize
    }
}
