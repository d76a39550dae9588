//! Dyadic Whitney cubes of a masked open set on a grid.
//!
//! Distances are measured in the sampled `l^inf` metric in units of the grid
//! spacing: `dist(Q, O^c)` is the smallest king-move distance from a node of
//! `Q` to a node outside the mask, and `diam(Q)` is the side length of `Q` in
//! nodes. Every emitted cube satisfies `diam <= dist <= 4 diam`.

use std::collections::VecDeque;

use super::BlockSpec;
use crate::error::{usage, Result};
use crate::grid::Grid;

/// Dyadic cube of `side^n` nodes starting at node multi-index `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhitneyCube {
    pub lo: [usize; 3],
    pub side: usize,
    /// Sampled distance to the complement of the mask.
    pub dist: usize,
}

impl WhitneyCube {
    /// Linear indices of the cube's nodes.
    pub fn cells(&self, grid: &Grid) -> Vec<usize> {
        let n = grid.dim();
        let mut out = Vec::with_capacity(self.side.pow(n as u32));
        for_each_offset(n, self.side, |off| {
            let mut m = [0usize; 3];
            for a in 0..n {
                m[a] = self.lo[a] + off[a];
            }
            out.push(grid.linear_index(&m[..n]));
        });
        out
    }

    /// The closed cube covering the cells of the nodes, side `side * h`.
    pub fn spec(&self, grid: &Grid) -> BlockSpec {
        let h = grid.spacing();
        let mut c = [0.0; 3];
        for a in 0..grid.dim() {
            c[a] = grid.coord(self.lo[a]) + 0.5 * (self.side as f64 - 1.0) * h;
        }
        BlockSpec::cube(c, 0.5 * self.side as f64 * h)
    }
}

fn for_each_offset<F: FnMut([usize; 3])>(n: usize, side: usize, mut f: F) {
    let total = side.pow(n as u32);
    for t in 0..total {
        let mut off = [0usize; 3];
        let mut r = t;
        for a in (0..n).rev() {
            off[a] = r % side;
            r /= side;
        }
        f(off);
    }
}

/// Chebyshev node distance from every node to the nearest unmasked node.
pub(crate) fn distance_to_complement(grid: &Grid, mask: &[bool]) -> Vec<usize> {
    let n = grid.dim();
    let size = grid.size();
    let mut dist = vec![usize::MAX; grid.len()];
    let mut queue = VecDeque::new();
    for (i, &m) in mask.iter().enumerate() {
        if !m {
            dist[i] = 0;
            queue.push_back(i);
        }
    }
    let steps: Vec<[isize; 3]> = (0..3usize.pow(n as u32))
        .filter_map(|t| {
            let mut d = [0isize; 3];
            let mut r = t;
            for a in 0..n {
                d[a] = (r % 3) as isize - 1;
                r /= 3;
            }
            (d != [0; 3]).then_some(d)
        })
        .collect();
    while let Some(i) = queue.pop_front() {
        let m = grid.multi_index(i);
        for d in &steps {
            let mut nb = [0usize; 3];
            let mut inside = true;
            for a in 0..n {
                let v = m[a] as isize + d[a];
                if v < 0 || v >= size as isize {
                    inside = false;
                    break;
                }
                nb[a] = v as usize;
            }
            if !inside {
                continue;
            }
            let j = grid.linear_index(&nb[..n]);
            if dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    dist
}

/// Whitney decomposition of the masked set into dyadic cubes from the
/// quadtree (octree) whose root has side `next_pow2(N)`.
pub fn whitney_cubes(grid: &Grid, mask: &[bool]) -> Result<Vec<WhitneyCube>> {
    if mask.len() != grid.len() {
        return usage(format!("mask has {} entries, grid has {}", mask.len(), grid.len()));
    }
    let n = grid.dim();
    let size = grid.size();
    for (i, &m) in mask.iter().enumerate() {
        if m && grid.multi_index(i)[..n].iter().any(|&c| c == 0 || c == size - 1) {
            return usage("mask touches the box boundary; distance to its complement is undefined");
        }
    }
    if !mask.iter().any(|&m| m) {
        return Ok(Vec::new());
    }
    let dist = distance_to_complement(grid, mask);
    let mut out = Vec::new();
    visit(grid, mask, &dist, [0; 3], size.next_power_of_two(), &mut out);
    Ok(out)
}

fn visit(grid: &Grid, mask: &[bool], dist: &[usize], lo: [usize; 3], side: usize, out: &mut Vec<WhitneyCube>) {
    let n = grid.dim();
    let size = grid.size();
    let mut any = false;
    let mut all = true;
    let mut min_d = usize::MAX;
    for_each_offset(n, side, |off| {
        let mut m = [0usize; 3];
        let mut inside = true;
        for a in 0..n {
            m[a] = lo[a] + off[a];
            inside &= m[a] < size;
        }
        if !inside {
            all = false;
            return;
        }
        let i = grid.linear_index(&m[..n]);
        if mask[i] {
            any = true;
            min_d = min_d.min(dist[i]);
        } else {
            all = false;
        }
    });
    if !any {
        return;
    }
    if all && min_d >= side {
        debug_assert!(min_d <= 4 * side, "Whitney upper bound violated");
        out.push(WhitneyCube { lo, side, dist: min_d });
        return;
    }
    let half = side / 2;
    for t in 0..(1usize << n) {
        let mut child = lo;
        for a in 0..n {
            if (t >> a) & 1 == 1 {
                child[a] += half;
            }
        }
        if child[..n].iter().all(|&c| c < size) {
            visit(grid, mask, dist, child, half, out);
        }
    }
}
