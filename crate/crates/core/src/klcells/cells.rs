use std::collections::HashMap;

use super::cbasis::CanonicalBasis;
use crate::hecke::{AlgebraContext, BasisKey};
use crate::rootsys::GenSet;

/// The preorder `<=_{J,J'}` on pairs `(w, lambda)`, stored as reachability
/// bitsets: `(y,nu) <= (w,lambda)` when `(y,nu)` is reachable from `(w,lambda)`.
#[derive(Debug, Clone)]
pub struct Preorder {
    pub j: GenSet,
    pub jp: GenSet,
    nodes: Vec<BasisKey>,
    index: HashMap<BasisKey, usize>,
    reach: Vec<Vec<u64>>,
}

impl Preorder {
    pub fn nodes(&self) -> &[BasisKey] {
        &self.nodes
    }

    pub fn node_index(&self, k: &BasisKey) -> usize {
        self.index[k]
    }

    /// `y <= w`.
    pub fn leq(&self, y: &BasisKey, w: &BasisKey) -> bool {
        let (a, b) = (self.index[y], self.index[w]);
        self.reach[b][a / 64] >> (a % 64) & 1 == 1
    }

    /// Builds the preorder from a list of direct relations `(below, above)`.
    pub fn from_steps(j: GenSet, jp: GenSet, nodes: Vec<BasisKey>, steps: &[(usize, usize)]) -> Self {
        let n = nodes.len();
        let index = nodes.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut adj = vec![Vec::new(); n];
        for &(lo, hi) in steps {
            adj[hi].push(lo);
        }
        let blocks = n.div_ceil(64);
        let reach = (0..n)
            .map(|start| {
                let mut seen = vec![0u64; blocks];
                let mut stack = vec![start];
                seen[start / 64] |= 1 << (start % 64);
                while let Some(x) = stack.pop() {
                    for &y in &adj[x] {
                        if seen[y / 64] >> (y % 64) & 1 == 0 {
                            seen[y / 64] |= 1 << (y % 64);
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect();
        Self { j, jp, nodes, index, reach }
    }
}

/// Cells of a preorder with the induced order between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPartition {
    pub cells: Vec<Vec<BasisKey>>,
    /// Pairs `(i, j)` with cell `i` strictly below cell `j`.
    pub order: Vec<(usize, usize)>,
}

impl CellPartition {
    pub fn cell_of(&self, k: &BasisKey) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(k))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Puts the cells in canonical order: by minimal member under
    /// `(length, lambda, w)`, members sorted the same way.
    pub fn canonical(ctx: &AlgebraContext, mut cells: Vec<Vec<BasisKey>>, below: impl Fn(&[BasisKey], &[BasisKey]) -> bool) -> Self {
        let key = |k: &BasisKey| (ctx.group().length(k.w), k.lambda, k.w);
        for c in &mut cells {
            c.sort_by_key(key);
        }
        cells.sort_by_key(|c| key(&c[0]));
        let mut order = Vec::new();
        for i in 0..cells.len() {
            for j in 0..cells.len() {
                if i != j && below(&cells[i], &cells[j]) {
                    order.push((i, j));
                }
            }
        }
        Self { cells, order }
    }
}

impl CanonicalBasis<'_> {
    /// Single-step relations: everything appearing in `c_{s,mu} c_{w,lambda}`
    /// for `s` in `J`, or in `c_{w,lambda} c_{t,mu}` for `t` in `J'`, with the
    /// only idempotents `mu` that give a nonzero product.
    pub fn preorder(&self, j: GenSet, jp: GenSet) -> Preorder {
        let ctx = self.ctx();
        let g = ctx.group();
        let nodes = ctx.basis_keys();
        let index: HashMap<BasisKey, usize> = nodes.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut steps = Vec::new();
        for (hi, key) in nodes.iter().enumerate() {
            let c = self.c_basis(key.w, key.lambda);
            for s in j.nodes() {
                let mu = ctx.chars().act(key.w, key.lambda);
                let prod = ctx.mul(&self.c_basis(g.simple(s), mu), &c).unwrap();
                steps.extend(self.expand(&prod).keys().map(|k| (index[k], hi)));
            }
            for t in jp.nodes() {
                let mu = ctx.chars().act(g.simple(t), key.lambda);
                let prod = ctx.mul(&c, &self.c_basis(g.simple(t), mu)).unwrap();
                steps.extend(self.expand(&prod).keys().map(|k| (index[k], hi)));
            }
        }
        Preorder::from_steps(j, jp, nodes, &steps)
    }

    pub fn two_sided_cells(&self, j: GenSet, jp: GenSet) -> CellPartition {
        cells_of(self.ctx(), &self.preorder(j, jp))
    }
}

/// Mutual-reachability classes of a preorder.
#[allow(clippy::needless_range_loop)]
pub fn cells_of(ctx: &AlgebraContext, p: &Preorder) -> CellPartition {
    let n = p.nodes.len();
    let mut assigned = vec![false; n];
    let mut cells = Vec::new();
    for a in 0..n {
        if assigned[a] {
            continue;
        }
        let mut cell = Vec::new();
        for b in a..n {
            if !assigned[b] && p.leq(&p.nodes[a], &p.nodes[b]) && p.leq(&p.nodes[b], &p.nodes[a]) {
                assigned[b] = true;
                cell.push(p.nodes[b]);
            }
        }
        cells.push(cell);
    }
    CellPartition::canonical(ctx, cells, |lo, hi| p.leq(&lo[0], &hi[0]))
}

/// Image of a partition under `(w, lambda) -> (eps(w), D lambda)`.
pub fn twist_cells(ctx: &AlgebraContext, part: &CellPartition) -> CellPartition {
    let tw = |k: &BasisKey| ctx.theta_key(k, 1);
    let cells: Vec<Vec<BasisKey>> = part.cells.iter().map(|c| c.iter().map(tw).collect()).collect();
    let mut orig_index: HashMap<BasisKey, usize> = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        for k in c {
            orig_index.insert(*k, i);
        }
    }
    let below: std::collections::HashSet<(usize, usize)> = part.order.iter().copied().collect();
    CellPartition::canonical(ctx, cells, |lo, hi| below.contains(&(orig_index[&lo[0]], orig_index[&hi[0]])))
}
