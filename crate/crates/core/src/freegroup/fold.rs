use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};

/// A folded Stallings graph. Edges are `(source, label, target)` with labels
/// being generator indices; reading an inverse letter walks an edge backwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoldedGraph {
    pub rank: u8,
    pub vertices: usize,
    pub edges: Vec<(usize, u8, usize)>,
    pub base: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
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

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Folds the wedge of loops spelling `generators` at a common base vertex.
/// Generators must share `rank`.
pub fn fold(generators: &[Word], rank: u8) -> Result<FoldedGraph> {
    let mut edges: Vec<(usize, u8, usize)> = Vec::new();
    let mut n = 1usize;
    for w in generators {
        if w.rank() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: w.rank(),
            });
        }
        let letters = w.letters();
        let mut cur = 0usize;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                n += 1;
                n - 1
            };
            let g = l.unsigned_abs();
            if l > 0 {
                edges.push((cur, g, next));
            } else {
                edges.push((next, g, cur));
            }
            cur = next;
        }
    }

    let mut uf = UnionFind((0..n).collect());
    loop {
        let mut changed = false;
        let mut out: HashMap<(usize, u8), usize> = HashMap::new();
        let mut inc: HashMap<(usize, u8), usize> = HashMap::new();
        for &(s, g, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            if let Some(&t2) = out.get(&(s, g)) {
                changed |= uf.union(t, t2);
            } else {
                out.insert((s, g), t);
            }
            let (s, t) = (uf.find(s), uf.find(t));
            if let Some(&s2) = inc.get(&(t, g)) {
                changed |= uf.union(s, s2);
            } else {
                inc.insert((t, g), s);
            }
        }
        if !changed {
            break;
        }
    }

    let mut merged: BTreeSet<(usize, u8, usize)> = BTreeSet::new();
    for &(s, g, t) in &edges {
        merged.insert((uf.find(s), g, uf.find(t)));
    }
    let base = uf.find(0);
    Ok(canonicalize(rank, base, merged.into_iter().collect()))
}

/// Relabels vertices in breadth-first order from the base, visiting outgoing
/// edges by label and then incoming edges by label.
fn canonicalize(rank: u8, base: usize, edges: Vec<(usize, u8, usize)>) -> FoldedGraph {
    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    order.insert(base, 0);
    queue.push_back(base);
    while let Some(v) = queue.pop_front() {
        let mut nbrs: Vec<(u8, u8, usize)> = Vec::new();
        for &(s, g, t) in &edges {
            if s == v {
                nbrs.push((0, g, t));
            }
            if t == v {
                nbrs.push((1, g, s));
            }
        }
        nbrs.sort();
        for (_, _, u) in nbrs {
            if !order.contains_key(&u) {
                let k = order.len();
                order.insert(u, k);
                queue.push_back(u);
            }
        }
    }
    let mut relabeled: Vec<(usize, u8, usize)> = edges
        .iter()
        .map(|&(s, g, t)| (order[&s], g, order[&t]))
        .collect();
    relabeled.sort();
    FoldedGraph {
        rank,
        vertices: order.len(),
        edges: relabeled,
        base: 0,
    }
}

impl FoldedGraph {
    fn step(&self, v: usize, l: i8) -> Option<usize> {
        let g = l.unsigned_abs();
        if l > 0 {
            self.edges
                .iter()
                .find(|&&(s, h, _)| s == v && h == g)
                .map(|&(_, _, t)| t)
        } else {
            self.edges
                .iter()
                .find(|&&(_, h, t)| t == v && h == g)
                .map(|&(s, _, _)| s)
        }
    }

    /// Whether the graph is the rose on all `rank` generators.
    pub fn is_full_rose(&self) -> bool {
        self.vertices == 1
            && self.edges.len() == self.rank as usize
            && self
                .edges
                .iter()
                .map(|e| e.1)
                .collect::<BTreeSet<_>>()
                .len()
                == self.rank as usize
    }

    /// Rank of the subgroup: first Betti number of the graph.
    pub fn subgroup_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }
}

/// Whether `w` is readable as a loop at the base vertex.
pub fn contains(graph: &FoldedGraph, w: &Word) -> bool {
    let mut v = graph.base;
    for &l in w.letters() {
        match graph.step(v, l) {
            Some(u) => v = u,
            None => return false,
        }
    }
    v == graph.base
}

pub fn is_basis_tuple(ws: &[Word], rank: u8) -> Result<bool> {
    if ws.len() != rank as usize {
        return Err(Error::Arity {
            expected: rank as usize,
            got: ws.len(),
        });
    }
    Ok(fold(ws, rank)?.is_full_rose())
}
