//! Exact solver for small instances, used as ground truth for the formulas
//! and the builders.
//!
//! A wavelength can always be split into its connected components without
//! changing the drop cost, so the search partitions the edges of `K_n` into
//! connected blocks of at most four edges. Such a block costs its edge count
//! when it contains a cycle and one more when it is a tree, so the optimum is
//! `C(n,2)` plus the fewest tree blocks. The search always extends the block
//! holding the lowest uncovered edge and memoises the best completion of each
//! uncovered edge set; `(v, w)` relabellings that fix the instance are used to
//! store each set once.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formulas::binom2;
use crate::model::{complete_edges, Block, Decomposition, Edge, Instance, Shape, Vertex, GROOM_C};

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "RINGGROOM_ORACLE_NODES";
pub const DEFAULT_NODES: u64 = 20_000_000;
pub const DEFAULT_MAX_N: u32 = 8;
/// Edge sets are bitmasks, so `C(n,2)` must fit in 64 bits.
const MASK_LIMIT_N: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub max_n: u32,
}

impl Default for Budget {
    /// The default limits, with the node count taken from [`BUDGET_ENV`] when set.
    fn default() -> Self {
        let nodes = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_NODES);
        Budget { nodes, max_n: DEFAULT_MAX_N }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub optimum_cost: usize,
    pub witness: Decomposition,
    pub optimum_triangles_at_cost: Option<usize>,
    pub nodes_explored: u64,
    /// Set when the budget ran out; the cost is then only an upper bound.
    pub time_limit_hit: bool,
}

/// Minimum drop cost, and the fewest triangles among cost-optimal partitions.
pub fn solve_min_cost(inst: Instance, budget: Budget) -> Result<OracleResult> {
    let mut s = Search::new(inst, budget, Mode::Cost)?;
    let full = s.full;
    match s.best(full) {
        Ok(val) => {
            let blocks = s.trace(full);
            let (excess, tri) = (val / TRI_SCALE, val % TRI_SCALE);
            Ok(OracleResult {
                optimum_cost: binom2(inst.n as u64) as usize + excess as usize,
                witness: Decomposition::from_blocks(inst, blocks),
                optimum_triangles_at_cost: Some(tri as usize),
                nodes_explored: s.nodes,
                time_limit_hit: false,
            })
        }
        Err(Exhausted) => {
            let blocks = s.greedy().expect("single edges always fit");
            let witness = Decomposition::from_blocks(inst, blocks);
            Ok(OracleResult {
                optimum_cost: witness.drop_cost(),
                optimum_triangles_at_cost: None,
                witness,
                nodes_explored: s.nodes,
                time_limit_hit: true,
            })
        }
    }
}

/// Fewest triangles over partitions of drop cost `fixed_cost`, which must be
/// `C(n,2)`: every block is then a triangle, 4-cycle or kite.
pub fn solve_min_triangles(inst: Instance, fixed_cost: usize, budget: Budget) -> Result<OracleResult> {
    let floor = binom2(inst.n as u64) as usize;
    if fixed_cost != floor {
        return Err(Error::Unsupported(format!("triangle minimisation at cost {fixed_cost}; only {floor} is searched")));
    }
    let mut s = Search::new(inst, budget, Mode::Triangles)?;
    let full = s.full;
    match s.best(full) {
        Ok(INFEASIBLE) => Err(Error::InvalidInstance(format!("no partition of K_{} reaches cost {floor}", inst.n))),
        Ok(val) => Ok(OracleResult {
            optimum_cost: floor,
            witness: Decomposition::from_blocks(inst, s.trace(full)),
            optimum_triangles_at_cost: Some(val as usize),
            nodes_explored: s.nodes,
            time_limit_hit: false,
        }),
        Err(Exhausted) => match s.greedy() {
            Some(blocks) => {
                let witness = Decomposition::from_blocks(inst, blocks);
                Ok(OracleResult {
                    optimum_cost: floor,
                    optimum_triangles_at_cost: Some(witness.count_triangles()),
                    witness,
                    nodes_explored: s.nodes,
                    time_limit_hit: true,
                })
            }
            None => Err(Error::Unsupported(format!("node budget of {} exhausted without a witness", budget.nodes))),
        },
    }
}

const TRI_SCALE: u16 = 64;
const INFEASIBLE: u16 = u16::MAX;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Cost,
    Triangles,
}

struct Exhausted;

struct Candidate {
    mask: u64,
    weight: u16,
}

struct Search {
    edges: Vec<Edge>,
    full: u64,
    /// Blocks whose lowest edge is edge `i`, cheapest first.
    starting: Vec<Vec<Candidate>>,
    /// Edge permutations induced by relabellings within `V` and within `W`.
    symmetries: Vec<Vec<u8>>,
    memo: HashMap<u64, u16>,
    nodes: u64,
    limit: u64,
}

impl Search {
    fn new(inst: Instance, budget: Budget, mode: Mode) -> Result<Self> {
        inst.check()?;
        if inst.n > budget.max_n.min(MASK_LIMIT_N) {
            return Err(Error::Unsupported(format!("the oracle is limited to n <= {}", budget.max_n.min(MASK_LIMIT_N))));
        }
        if inst.n < 2 {
            return Err(Error::InvalidInstance("K_n has no edges".into()));
        }
        let edges = complete_edges(inst.n);
        let index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut starting: Vec<Vec<Candidate>> = (0..edges.len()).map(|_| Vec::new()).collect();
        for set in connected_sets(&edges, GROOM_C as usize) {
            let block = Block::from_edges(set.iter().map(|&i| edges[i]));
            if block.v_edges(&inst) > inst.cprime as usize {
                continue;
            }
            let shape = block.shape();
            let tree = block.vertices().len() > block.len();
            let weight = match mode {
                Mode::Cost => u16::from(tree) * TRI_SCALE + u16::from(shape == Shape::Triangle),
                Mode::Triangles if tree => continue,
                Mode::Triangles => u16::from(shape == Shape::Triangle),
            };
            let mask = set.iter().fold(0u64, |m, &i| m | 1 << i);
            starting[set[0]].push(Candidate { mask, weight });
        }
        for list in &mut starting {
            list.sort_by_key(|c| (c.weight, std::cmp::Reverse(c.mask.count_ones()), c.mask));
        }
        let symmetries = relabellings(inst)
            .into_iter()
            .map(|p| edges.iter().map(|e| index[&e.map(|x| p[x as usize])] as u8).collect())
            .collect();
        let full = if edges.len() == 64 { u64::MAX } else { (1u64 << edges.len()) - 1 };
        Ok(Search { edges, full, starting, symmetries, memo: HashMap::new(), nodes: 0, limit: budget.nodes })
    }

    fn canonical(&self, mask: u64) -> u64 {
        self.symmetries
            .iter()
            .map(|p| {
                let mut out = 0u64;
                let mut m = mask;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    out |= 1 << p[i];
                    m &= m - 1;
                }
                out
            })
            .min()
            .unwrap_or(mask)
    }

    /// Best weight of a partition of the edges in `mask`.
    fn best(&mut self, mask: u64) -> std::result::Result<u16, Exhausted> {
        if mask == 0 {
            return Ok(0);
        }
        let key = self.canonical(mask);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Exhausted);
        }
        let low = mask.trailing_zeros() as usize;
        let mut best = INFEASIBLE;
        for k in 0..self.starting[low].len() {
            let Candidate { mask: b, weight } = self.starting[low][k];
            if b & mask != b || weight >= best {
                continue;
            }
            let rest = self.best(mask & !b)?;
            if rest != INFEASIBLE && weight + rest < best {
                best = weight + rest;
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    /// Reads an optimal partition back out of the memo table.
    fn trace(&mut self, mut mask: u64) -> Vec<Block> {
        let mut out = Vec::new();
        while mask != 0 {
            let want = self.best(mask).unwrap_or(INFEASIBLE);
            let low = mask.trailing_zeros() as usize;
            let pick = self.starting[low]
                .iter()
                .map(|c| (c.mask, c.weight))
                .find(|&(b, w)| b & mask == b && self.memo_value(mask & !b).is_some_and(|r| r != INFEASIBLE && w + r == want))
                .expect("memo holds an optimal continuation");
            out.push(self.block_of(pick.0));
            mask &= !pick.0;
        }
        out
    }

    fn memo_value(&self, mask: u64) -> Option<u16> {
        if mask == 0 {
            Some(0)
        } else {
            self.memo.get(&self.canonical(mask)).copied()
        }
    }

    /// Cheapest-first descent without backtracking.
    fn greedy(&self) -> Option<Vec<Block>> {
        let mut mask = self.full;
        let mut out = Vec::new();
        while mask != 0 {
            let low = mask.trailing_zeros() as usize;
            let c = self.starting[low].iter().find(|c| c.mask & mask == c.mask)?;
            out.push(self.block_of(c.mask));
            mask &= !c.mask;
        }
        Some(out)
    }

    fn block_of(&self, mask: u64) -> Block {
        Block::from_edges((0..self.edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.edges[i]))
    }
}

/// Connected edge sets of size at most `max`, as sorted index lists.
fn connected_sets(edges: &[Edge], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut set = Vec::new();
    grow(edges, max, 0, &mut set, &mut out);
    out
}

fn grow(edges: &[Edge], max: usize, from: usize, set: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    for j in from..edges.len() {
        set.push(j);
        if is_connected(edges, set) {
            out.push(set.clone());
        }
        if set.len() < max {
            grow(edges, max, j + 1, set, out);
        }
        set.pop();
    }
}

fn is_connected(edges: &[Edge], set: &[usize]) -> bool {
    let mut reached = vec![set[0]];
    let mut grew = true;
    while grew {
        grew = false;
        for &i in set {
            if !reached.contains(&i) && reached.iter().any(|&r| edges[r].shares_vertex(&edges[i])) {
                reached.push(i);
                grew = true;
            }
        }
    }
    reached.len() == set.len()
}

/// Vertex permutations preserving `V` and `W`. When the full group is too
/// large only the last few labels of each side are permuted.
fn relabellings(inst: Instance) -> Vec<Vec<Vertex>> {
    let (v, w) = (inst.v, inst.w());
    let (mut a, mut b) = (v, w);
    while factorial(a) * factorial(b) > MAX_SYMMETRIES {
        if a >= b {
            a -= 1;
        } else {
            b -= 1;
        }
    }
    let pv = permutations(&(v - a..v).collect::<Vec<_>>());
    let pw = permutations(&(inst.n - b..inst.n).collect::<Vec<_>>());
    let mut out = Vec::with_capacity(pv.len() * pw.len());
    for x in &pv {
        for y in &pw {
            let mut p: Vec<Vertex> = (0..v - a).collect();
            p.extend(x);
            p.extend(v..inst.n - b);
            p.extend(y);
            out.push(p);
        }
    }
    out
}

const MAX_SYMMETRIES: usize = 720;

fn factorial(k: u32) -> usize {
    (1..=k as usize).product()
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}
