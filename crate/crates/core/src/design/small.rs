//! Randomized backtracking that partitions a small graph into triangles,
//! 4-cycles and kites with a prescribed number of triangles.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SEARCH_ATTEMPTS;
use crate::error::{construction, Error, Result};
use crate::model::{Block, Edge, Vertex};

type Filter<'a> = Box<dyn Fn(&Block) -> bool + 'a>;

/// Search settings. `allow` rejects blocks the caller cannot use.
pub struct SmallSearch<'a> {
    pub triangles: usize,
    pub seed: u64,
    pub node_limit: u64,
    pub attempts: u64,
    allow: Option<Filter<'a>>,
}

impl<'a> SmallSearch<'a> {
    pub fn new(triangles: usize, seed: u64) -> Self {
        SmallSearch { triangles, seed, node_limit: 200_000, attempts: SEARCH_ATTEMPTS, allow: None }
    }

    pub fn allow(mut self, f: impl Fn(&Block) -> bool + 'a) -> Self {
        self.allow = Some(Box::new(f));
        self
    }

    pub fn run(&self, edges: &[Edge]) -> Result<Vec<Block>> {
        let m = edges.len();
        if m < 3 * self.triangles || !(m - 3 * self.triangles).is_multiple_of(4) {
            return Err(Error::InvalidInstance(format!("{m} edges cannot hold exactly {} triangles", self.triangles)));
        }
        let mut ids: BTreeMap<Vertex, usize> = BTreeMap::new();
        for e in edges {
            let k = ids.len();
            ids.entry(e.0).or_insert(k);
            let k = ids.len();
            ids.entry(e.1).or_insert(k);
        }
        if ids.len() > 64 {
            return Err(Error::Unsupported("small search handles at most 64 vertices".into()));
        }
        let labels: Vec<Vertex> = {
            let mut l = vec![0; ids.len()];
            for (&x, &i) in &ids {
                l[i] = x;
            }
            l
        };
        let mut adj = vec![0u64; ids.len()];
        for e in edges {
            let (a, b) = (ids[&e.0], ids[&e.1]);
            if a == b || adj[a] >> b & 1 == 1 {
                return Err(Error::Contract("small search needs a simple graph".into()));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        for attempt in 0..self.attempts {
            let mut st = State {
                adj: adj.clone(),
                labels: &labels,
                tri_left: self.triangles,
                remaining: m,
                nodes: 0,
                limit: self.node_limit,
                rng: ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(attempt)),
                out: Vec::new(),
                allow: self.allow.as_deref(),
            };
            if st.dfs() {
                return Ok(st.out.iter().map(|b| b.map(|x| labels[x as usize])).collect());
            }
        }
        Err(construction("small_search", format!("no partition of {m} edges with {} triangles found", self.triangles)))
    }
}

/// Partition `edges` into exactly `triangles` triangles plus 4-cycles and kites.
pub fn decompose_zero_excess(edges: &[Edge], triangles: usize, seed: u64) -> Result<Vec<Block>> {
    SmallSearch::new(triangles, seed).run(edges)
}

struct State<'s, 'a> {
    adj: Vec<u64>,
    labels: &'s [Vertex],
    tri_left: usize,
    remaining: usize,
    nodes: u64,
    limit: u64,
    rng: ChaCha8Rng,
    out: Vec<Block>,
    allow: Option<&'s (dyn Fn(&Block) -> bool + 'a)>,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

impl State<'_, '_> {
    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    fn candidates(&self, u: usize, v: usize) -> Vec<Block> {
        let mut c = Vec::new();
        let b = |x: usize| x as Vertex;
        let common = self.adj[u] & self.adj[v];
        for x in bits(common) {
            if self.tri_left > 0 {
                c.push(Block::triangle(b(u), b(v), b(x)));
            }
            for p in [u, v, x] {
                for y in bits(self.adj[p] & !(1 << u | 1 << v | 1 << x)) {
                    let (q, r) = match p {
                        _ if p == u => (v, x),
                        _ if p == v => (u, x),
                        _ => (u, v),
                    };
                    c.push(Block::kite(b(q), b(r), b(p), b(y)));
                }
            }
        }
        for x in bits(self.adj[v] & !(1 << u)) {
            for y in bits(self.adj[u] & self.adj[x] & !(1 << v)) {
                c.push(Block::cycle4(b(u), b(v), b(x), b(y)));
            }
        }
        for (z, leaf) in [(u, v), (v, u)] {
            let nz = self.adj[z] & !(1 << leaf);
            for x in bits(nz) {
                for y in bits(nz & self.adj[x]) {
                    if x < y {
                        c.push(Block::kite(b(x), b(y), b(z), b(leaf)));
                    }
                }
            }
        }
        c
    }

    fn apply(&mut self, blk: &Block, on: bool) {
        for e in &blk.edges {
            let (a, b) = (e.0 as usize, e.1 as usize);
            self.adj[a] ^= 1 << b;
            self.adj[b] ^= 1 << a;
        }
        let k = blk.len();
        if on {
            self.remaining -= k;
            if k == 3 {
                self.tri_left -= 1;
            }
        } else {
            self.remaining += k;
            if k == 3 {
                self.tri_left += 1;
            }
        }
    }

    fn dfs(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        let deg = |a: u64| a.count_ones();
        let Some(u) = (0..self.adj.len()).filter(|&x| self.adj[x] != 0).min_by_key(|&x| deg(self.adj[x])) else {
            return false;
        };
        let v = bits(self.adj[u]).min_by_key(|&y| deg(self.adj[y])).unwrap();
        let mut cands = self.candidates(u, v);
        cands.shuffle(&mut self.rng);
        for blk in cands {
            if blk.len() == 4 && self.remaining - 4 < 3 * self.tri_left {
                continue;
            }
            if let Some(f) = self.allow {
                if !f(&blk.map(|x| self.labels[x as usize])) {
                    continue;
                }
            }
            debug_assert!(blk.edges.iter().all(|e| self.has(e.0 as usize, e.1 as usize)));
            self.apply(&blk, true);
            self.out.push(blk.clone());
            if self.dfs() {
                return true;
            }
            self.out.pop();
            self.apply(&blk, false);
            if self.nodes > self.limit {
                return false;
            }
        }
        false
    }
}
