//! Groomings of `K_n` with ratio 4 using the fewest wavelengths: `t(n)`
//! triangles, the rest 4-cycles and kites, one block per wavelength.
//!
//! The vertex set is split into a base and groups of eight. For odd `n` a
//! point `∞` lies in the base and each group is completed with it to a `K_9`;
//! for even `n` each group is a `K_8`. Edges between parts form complete
//! bipartite graphs with even sides, which split into 4-cycles. Base and
//! group pieces are found by [`SmallSearch`].

use std::collections::BTreeSet;

use super::small::SmallSearch;
use crate::error::{construction, Error, Result};
use crate::formulas::mon_n4_triangles;
use crate::model::{complete_edges, Block, Decomposition, Edge, Instance, Shape, Vertex};

/// Options for [`build_on_n4_with`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mon4Request {
    /// Exact triangle count; defaults to `t(n)`. Must exceed `t(n)` by a multiple of 4.
    pub triangles: Option<usize>,
    /// Vertex that must lie in some triangle.
    pub triangle_at: Option<Vertex>,
    /// A triangle or kite that must appear verbatim.
    pub block: Option<Block>,
    /// Edges to leave uncovered. They must span few enough vertices to fit
    /// in one search piece; placement requests cannot be combined with this.
    pub omit: Vec<Edge>,
    pub seed: u64,
}

fn bipartite_c4s(xs: &[Vertex], ys: &[Vertex]) -> Vec<Block> {
    debug_assert!(xs.len().is_multiple_of(2) && ys.len().is_multiple_of(2));
    let mut out = Vec::new();
    for x in xs.chunks(2) {
        for y in ys.chunks(2) {
            out.push(Block::cycle4(x[0], y[0], x[1], y[1]));
        }
    }
    out
}

fn clique(vs: &[Vertex]) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push(Edge::new(a, b));
        }
    }
    out
}

/// Largest triangle count a zero-excess partition of `K_m` can carry
/// when `m` is a group piece (8 or 9 points).
fn group_capacity(m: usize) -> usize {
    if m == 9 {
        12
    } else {
        4
    }
}

fn parts(n: u32, min_base: u32) -> (Vec<Vertex>, Vec<Vec<Vertex>>, Option<Vertex>) {
    let odd = n % 2 == 1;
    let mut b = n % 8;
    if !odd && (b == 2 || b == 4) {
        b += 8;
    }
    while b < min_base {
        b += 8;
    }
    if b > n {
        b = n;
    }
    let base: Vec<Vertex> = (0..b).collect();
    let groups = (0..(n - b) / 8).map(|i| (b + 8 * i..b + 8 * i + 8).collect()).collect();
    (base, groups, odd.then_some(0))
}

/// Triangles a zero-excess partition of `m` edges must carry, modulo 4.
fn residue(m: usize) -> usize {
    3 * m % 4
}

fn unplaced(n: u32, target: usize, omit: &[Edge], seed: u64) -> Result<Vec<Block>> {
    let mut span = omit.iter().map(|e| e.1 + 1).max().unwrap_or(0);
    let (base, groups, inf, base_edges) = loop {
        let (base, groups, inf) = parts(n, span);
        let base_edges: Vec<Edge> = clique(&base).into_iter().filter(|e| !omit.contains(e)).collect();
        if 3 * residue(base_edges.len()) <= base_edges.len() || base.len() as u32 == n {
            break (base, groups, inf, base_edges);
        }
        span = base.len() as u32 + 1;
    };
    let t = residue(base_edges.len());
    if target < t {
        return Err(construction("build_mon_n4", format!("{target} triangles do not fit")));
    }
    let mut extra = target - t;
    let pieces: Vec<Vec<Vertex>> = groups
        .iter()
        .map(|g| {
            let mut p = g.clone();
            p.extend(inf);
            p
        })
        .collect();
    let mut counts = vec![0usize; pieces.len()];
    for (c, p) in counts.iter_mut().zip(&pieces) {
        let take = extra.min(group_capacity(p.len()));
        *c = take;
        extra -= take;
    }
    let mut out = Vec::new();
    let base_tris = t + extra;
    if !base_edges.is_empty() {
        out.extend(SmallSearch::new(base_tris, seed).run(&base_edges)?);
    } else if base_tris > 0 {
        return Err(construction("build_mon_n4", format!("{target} triangles do not fit K_{n}")));
    }
    for (p, &c) in pieces.iter().zip(&counts) {
        out.extend(SmallSearch::new(c, seed).run(&clique(p))?);
    }
    let rest: Vec<Vertex> = base.iter().copied().filter(|&x| Some(x) != inf).collect();
    for (i, g) in groups.iter().enumerate() {
        out.extend(bipartite_c4s(g, &rest));
        for h in &groups[i + 1..] {
            out.extend(bipartite_c4s(g, h));
        }
    }
    Ok(out)
}

/// Maps the vertices of `from` onto those of `to` so that edges go to edges.
fn block_iso(from: &Block, to: &Block) -> Option<Vec<(Vertex, Vertex)>> {
    let fv: Vec<Vertex> = from.vertices().into_iter().collect();
    let tv: Vec<Vertex> = to.vertices().into_iter().collect();
    if fv.len() != tv.len() || from.len() != to.len() {
        return None;
    }
    let mut perm: Vec<usize> = (0..tv.len()).collect();
    loop {
        let map: Vec<(Vertex, Vertex)> = fv.iter().copied().zip(perm.iter().map(|&i| tv[i])).collect();
        let f = |x: Vertex| map.iter().find(|p| p.0 == x).map_or(x, |p| p.1);
        if from.edges.iter().all(|e| to.contains_edge(&e.map(f))) {
            return Some(map);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Completes a partial injective map to a permutation of `0..n`.
fn complete_perm(n: u32, pairs: &[(Vertex, Vertex)]) -> Vec<Vertex> {
    let mut perm = vec![Vertex::MAX; n as usize];
    let mut used = BTreeSet::new();
    for &(a, b) in pairs {
        perm[a as usize] = b;
        used.insert(b);
    }
    let mut free = (0..n).filter(|x| !used.contains(x));
    for slot in perm.iter_mut().filter(|s| **s == Vertex::MAX) {
        *slot = free.next().unwrap();
    }
    perm
}

fn relabel(blocks: &[Block], perm: &[Vertex]) -> Vec<Block> {
    blocks.iter().map(|b| b.map(|x| perm[x as usize])).collect()
}

/// Zero-excess partition of `K_n` meeting `req`. For `n = 4` the result is a
/// kite and a `P_3`.
pub fn build_on_n4_with(n: u32, req: &Mon4Request) -> Result<Vec<Block>> {
    if n < 4 {
        return Err(Error::InvalidInstance(format!("K_{n} is too small")));
    }
    if let Some(b) = &req.block {
        if !matches!(b.shape(), Shape::Triangle | Shape::Kite) || b.vertices().iter().any(|&x| x >= n) {
            return Err(Error::Contract("requested block must be a triangle or kite inside K_n".into()));
        }
    }
    if !req.omit.is_empty() {
        return omitting(n, req);
    }
    if n == 4 {
        if req.triangles.unwrap_or(0) != 0 || req.triangle_at.is_some() {
            return Err(Error::InvalidInstance("K_4 grooming has no triangle".into()));
        }
        let base = vec![Block::kite(0, 1, 2, 3), Block::path(&[0, 3, 1])];
        return match &req.block {
            None => Ok(base),
            Some(b) => {
                let iso = block_iso(&base[0], b).ok_or_else(|| construction("build_mon_n4", "K_4 holds only a kite"))?;
                Ok(relabel(&base, &complete_perm(4, &iso)))
            }
        };
    }
    let t = mon_n4_triangles(n) as usize;
    let target = req.triangles.unwrap_or(t);
    if target < t || !(target - t).is_multiple_of(4) || 3 * target > complete_edges(n).len() {
        return Err(Error::InvalidInstance(format!("K_{n} cannot be groomed minimally with {target} triangles")));
    }
    if req.block.as_ref().is_some_and(|b| b.len() == 3 && target == 0) || (req.triangle_at.is_some() && target == 0) {
        return Err(Error::InvalidInstance(format!("K_{n} with {target} triangles has no triangle to place")));
    }
    let mut last = None;
    for attempt in 0..super::SEARCH_ATTEMPTS {
        let blocks = unplaced(n, target, &[], req.seed.wrapping_add(attempt))?;
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
        if let Some(want) = &req.block {
            match blocks.iter().find_map(|b| block_iso(b, want)) {
                Some(iso) => pairs = iso,
                None => {
                    last = Some(construction("build_mon_n4", format!("no {} to place", want.shape())));
                    continue;
                }
            }
        }
        if let Some(x) = req.triangle_at {
            let placed = |y: Vertex| pairs.iter().find(|p| p.0 == y).map(|p| p.1);
            let hit = blocks.iter().filter(|b| b.len() == 3).find_map(|b| {
                b.vertices().into_iter().find(|&y| match placed(y) {
                    Some(z) => z == x,
                    None => !pairs.iter().any(|p| p.1 == x),
                })
            });
            match hit {
                Some(y) => {
                    if placed(y).is_none() {
                        pairs.push((y, x));
                    }
                }
                None => {
                    last = Some(construction("build_mon_n4", format!("vertex {x} cannot be put in a triangle")));
                    continue;
                }
            }
        }
        return Ok(relabel(&blocks, &complete_perm(n, &pairs)));
    }
    Err(last.unwrap_or_else(|| construction("build_mon_n4", "placement failed")))
}

fn omitting(n: u32, req: &Mon4Request) -> Result<Vec<Block>> {
    if req.block.is_some() || req.triangle_at.is_some() {
        return Err(Error::Contract("omitted edges cannot be combined with placements".into()));
    }
    let set: BTreeSet<Edge> = req.omit.iter().copied().collect();
    if set.len() != req.omit.len() || req.omit.iter().any(|e| e.1 >= n || e.0 == e.1) {
        return Err(Error::Contract("omitted edges must be distinct edges of K_n".into()));
    }
    let m = complete_edges(n).len() - set.len();
    let target = req.triangles.unwrap_or(residue(m));
    if target % 4 != residue(m) || 3 * target > m {
        return Err(Error::InvalidInstance(format!("K_{n} minus {} edges cannot hold {target} triangles", set.len())));
    }
    let touched: Vec<Vertex> = set.iter().flat_map(|e| [e.0, e.1]).collect::<BTreeSet<_>>().into_iter().collect();
    let local = |x: Vertex| touched.iter().position(|&y| y == x).unwrap() as Vertex;
    let template: Vec<Edge> = set.iter().map(|e| e.map(local)).collect();
    let pairs: Vec<(Vertex, Vertex)> = touched.iter().enumerate().map(|(i, &x)| (i as Vertex, x)).collect();
    let perm = complete_perm(n, &pairs);
    Ok(relabel(&unplaced(n, target, &template, req.seed)?, &perm))
}

/// Minimum-wavelength grooming of `K_n` as a decomposition with `v = 0`.
pub fn build_mon_n4(n: u32, triangle_target: Option<usize>) -> Result<Decomposition> {
    let blocks = build_on_n4_with(n, &Mon4Request { triangles: triangle_target, ..Default::default() })?;
    Ok(Decomposition::from_blocks(Instance::new(n, 0, 4)?, blocks))
}
