//! Stallings subgroup graphs for finitely generated subgroups of free groups.
//!
//! `fold` builds the bouquet of petals for the generating words, folds edges
//! with equal label at a common vertex, prunes hanging trees (keeping the base)
//! and relabels vertices by breadth-first search from the base. The resulting
//! edge list is a canonical form of the subgroup.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupHom, Word};

/// Index of a subgroup in the ambient free group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(k) => write!(f, "{k}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// A folded core graph with base vertex `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupGraph {
    ambient_rank: usize,
    vertex_count: usize,
    /// `(from, generator, to)` sorted; generator is 0-based.
    edges: Vec<(usize, usize, usize)>,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

impl SubgroupGraph {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        0
    }

    /// Follows one letter from `v`, if the edge exists.
    pub fn step(&self, v: usize, letter: i32) -> Option<usize> {
        let g = letter.unsigned_abs() as usize - 1;
        if g >= self.ambient_rank {
            return None;
        }
        if letter > 0 {
            self.out[v][g]
        } else {
            self.inc[v][g]
        }
    }

    /// Whether the graph is folded: at most one edge per label leaves (and
    /// enters) each vertex.
    pub fn is_folded(&self) -> bool {
        let mut seen_out = BTreeSet::new();
        let mut seen_in = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, g, v)| seen_out.insert((u, g)) && seen_in.insert((v, g)))
    }

    /// Whether every vertex other than the base has degree at least two.
    pub fn is_core(&self) -> bool {
        let mut deg = vec![0usize; self.vertex_count];
        for &(u, _, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.iter().skip(1).all(|&d| d >= 2)
    }
}

/// Mutable multigraph used while folding.
struct FoldGraph {
    // adj[v][signed label] = neighbours; an edge u -g-> v is stored as
    // v in adj[u][+g] and u in adj[v][-g].
    adj: Vec<BTreeMap<i32, BTreeSet<usize>>>,
    alive: Vec<bool>,
}

impl FoldGraph {
    fn new() -> Self {
        FoldGraph {
            adj: vec![BTreeMap::new()],
            alive: vec![true],
        }
    }

    fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeMap::new());
        self.alive.push(true);
        self.adj.len() - 1
    }

    fn add_edge(&mut self, u: usize, letter: i32, v: usize) {
        self.adj[u].entry(letter).or_default().insert(v);
        self.adj[v].entry(-letter).or_default().insert(u);
    }

    fn remove_half(&mut self, u: usize, letter: i32, v: usize) {
        if let Some(s) = self.adj[u].get_mut(&letter) {
            s.remove(&v);
            if s.is_empty() {
                self.adj[u].remove(&letter);
            }
        }
    }

    fn add_petal(&mut self, w: &Word) {
        let letters = w.letters();
        if letters.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                self.add_vertex()
            };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    /// Merges `w` into `v`.
    fn merge(&mut self, v: usize, w: usize) {
        let adj_w = std::mem::take(&mut self.adj[w]);
        for (&label, nbrs) in &adj_w {
            for &n in nbrs {
                if n == w {
                    // loop at w; its reverse half lives in adj_w as well
                    self.adj[v].entry(label).or_default().insert(v);
                } else {
                    self.remove_half(n, -label, w);
                    self.adj[n].entry(-label).or_default().insert(v);
                    self.adj[v].entry(label).or_default().insert(n);
                }
            }
        }
        self.alive[w] = false;
    }

    fn fold(&mut self) {
        let mut work: Vec<usize> = (0..self.adj.len()).rev().collect();
        while let Some(u) = work.pop() {
            if !self.alive[u] {
                continue;
            }
            let clash = self.adj[u].values().find(|s| s.len() > 1).map(|s| {
                let mut it = s.iter();
                (*it.next().unwrap(), *it.next().unwrap())
            });
            if let Some((a, b)) = clash {
                // keep the smaller id so the base survives
                let (keep, gone) = (a.min(b), a.max(b));
                self.merge(keep, gone);
                work.push(u);
                work.push(keep);
                work.extend(self.adj[keep].values().flatten().copied());
            }
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].values().map(|s| s.len()).sum()
    }

    fn prune(&mut self) {
        let mut stack: Vec<usize> = (1..self.adj.len())
            .filter(|&v| self.alive[v] && self.degree(v) <= 1)
            .collect();
        while let Some(v) = stack.pop() {
            if v == 0 || !self.alive[v] || self.degree(v) > 1 {
                continue;
            }
            let adj_v = std::mem::take(&mut self.adj[v]);
            for (&label, nbrs) in &adj_v {
                for &n in nbrs {
                    self.remove_half(n, -label, v);
                    stack.push(n);
                }
            }
            self.alive[v] = false;
        }
    }

    fn into_canonical(self, ambient_rank: usize) -> SubgroupGraph {
        let mut order: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut queue = VecDeque::from([0usize]);
        order[0] = Some(0);
        let mut count = 1;
        let labels: Vec<i32> = (1..=ambient_rank as i32).flat_map(|g| [g, -g]).collect();
        while let Some(u) = queue.pop_front() {
            for l in &labels {
                if let Some(s) = self.adj[u].get(l) {
                    for &v in s {
                        if order[v].is_none() {
                            order[v] = Some(count);
                            count += 1;
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        let mut edges = Vec::new();
        for (u, m) in self.adj.iter().enumerate() {
            let Some(nu) = order[u] else { continue };
            for (&l, s) in m {
                if l < 0 {
                    continue;
                }
                for &v in s {
                    edges.push((nu, l as usize - 1, order[v].expect("connected")));
                }
            }
        }
        edges.sort_unstable();
        let mut out = vec![vec![None; ambient_rank]; count];
        let mut inc = vec![vec![None; ambient_rank]; count];
        for &(u, g, v) in &edges {
            out[u][g] = Some(v);
            inc[v][g] = Some(u);
        }
        SubgroupGraph {
            ambient_rank,
            vertex_count: count,
            edges,
            out,
            inc,
        }
    }
}

/// Folded core graph of the subgroup of `F_ambient_rank` generated by `generators`.
pub fn fold(generators: &[Word], ambient_rank: usize) -> Result<SubgroupGraph> {
    let mut g = FoldGraph::new();
    for w in generators {
        w.check_rank(ambient_rank)?;
        g.add_petal(w);
    }
    g.fold();
    g.prune();
    Ok(g.into_canonical(ambient_rank))
}

/// Whether `w` reads a closed path at the base vertex.
pub fn membership(graph: &SubgroupGraph, w: &Word) -> bool {
    let mut v = graph.base();
    for &l in w.letters() {
        match graph.step(v, l) {
            Some(n) => v = n,
            None => return false,
        }
    }
    v == graph.base()
}

/// Index (finite exactly when the graph covers the rose) and free rank.
pub fn index_and_rank(graph: &SubgroupGraph) -> (Index, usize) {
    let covering = graph.ambient_rank > 0
        && (0..graph.vertex_count).all(|v| {
            (0..graph.ambient_rank).all(|g| graph.out[v][g].is_some() && graph.inc[v][g].is_some())
        });
    let index = if covering {
        Index::Finite(graph.vertex_count)
    } else {
        Index::Infinite
    };
    let rank = graph.edge_count() + 1 - graph.vertex_count;
    (index, rank)
}

/// Whether a homomorphism into a free group is onto.
pub fn is_surjective_to_free(h: &GroupHom) -> Result<bool> {
    if !h.target().is_free() {
        return Err(Error::InvalidArgument(
            "surjectivity is decided only for free targets".into(),
        ));
    }
    let n = h.target().rank();
    let g = fold(h.images(), n)?;
    Ok(g.vertex_count() == 1 && g.edge_count() == n)
}
