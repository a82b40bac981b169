//! Path partitions and adjacency-respecting pairings of factors.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{Block, Edge, Vertex};

/// Partitions a connected edge set into `P_3`s, plus one `P_2` when the
/// number of edges is odd.
///
/// Vertices are handled in DFS post-order. Each vertex pairs up its
/// unconsumed edges other than the one to its parent, and borrows the parent
/// edge when their number is odd. Only the root can be left with a single edge.
pub fn p3_partition(edges: &[Edge]) -> Result<Vec<Block>> {
    let set: BTreeSet<Edge> = edges.iter().copied().collect();
    if set.len() != edges.len() || edges.iter().any(|e| e.0 == e.1) {
        return Err(Error::Contract("p3_partition needs a simple graph".into()));
    }
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.0).or_default().push(e.1);
        adj.entry(e.1).or_default().push(e.0);
    }
    let root = edges[0].0;
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut post = Vec::new();
    let mut visited = BTreeSet::from([root]);
    let mut stack = vec![(root, 0usize)];
    while let Some((x, i)) = stack.pop() {
        let nb = &adj[&x];
        if i < nb.len() {
            stack.push((x, i + 1));
            let y = nb[i];
            if visited.insert(y) {
                parent.insert(y, x);
                stack.push((y, 0));
            }
        } else {
            post.push(x);
        }
    }
    if visited.len() != adj.len() {
        return Err(Error::Contract("p3_partition needs a connected graph".into()));
    }
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    let mut out = Vec::new();
    for &x in &post {
        let up = parent.get(&x).map(|&p| Edge::new(x, p));
        let mut mine: Vec<Vertex> =
            adj[&x].iter().copied().filter(|&y| Some(Edge::new(x, y)) != up && !used.contains(&Edge::new(x, y))).collect();
        if mine.len() % 2 == 1 {
            if let Some(u) = up {
                mine.push(u.other(x));
            }
        }
        for e in mine.iter().map(|&y| Edge::new(x, y)) {
            used.insert(e);
        }
        let mut it = mine.chunks(2);
        for pair in &mut it {
            match pair {
                [a, b] => out.push(Block::path(&[*a, x, *b])),
                [a] => out.push(Block::edge(*a, x)),
                _ => unreachable!(),
            }
        }
    }
    Ok(out)
}

/// For edge-disjoint (near) 1-factors `f` and `g` whose union is a union of
/// even cycles and at most one even path, pairs each edge of `f` with an
/// edge of `g` sharing a vertex, bijectively.
pub fn factor_pairing(f: &[Edge], g: &[Edge]) -> Result<Vec<(Edge, Edge)>> {
    let fs: BTreeSet<Edge> = f.iter().copied().collect();
    let gs: BTreeSet<Edge> = g.iter().copied().collect();
    if fs.len() != f.len() || gs.len() != g.len() || fs.intersection(&gs).next().is_some() {
        return Err(Error::Contract("factors must be edge-disjoint".into()));
    }
    if f.len() != g.len() {
        return Err(Error::Contract("factors must have the same size".into()));
    }
    let at = |set: &BTreeSet<Edge>, x: Vertex| set.iter().copied().find(|e| e.contains(x));
    let mut done: BTreeSet<Edge> = BTreeSet::new();
    let mut out = Vec::new();
    // Paths first, starting at the end whose edge lies in f.
    let mut starts: Vec<(Vertex, Edge)> = Vec::new();
    for e in f {
        for x in [e.0, e.1] {
            if at(&gs, x).is_none() {
                starts.push((x, *e));
            }
        }
    }
    let walk = |mut x: Vertex, mut e: Edge, done: &mut BTreeSet<Edge>, out: &mut Vec<(Edge, Edge)>| -> Result<()> {
        while !done.contains(&e) {
            let y = e.other(x);
            let Some(s) = at(&gs, y) else {
                return Err(Error::Contract("union of the factors has an odd path".into()));
            };
            done.insert(e);
            out.push((e, s));
            x = s.other(y);
            match at(&fs, x) {
                Some(next) => e = next,
                None => break,
            }
        }
        Ok(())
    };
    for (x, e) in starts {
        walk(x, e, &mut done, &mut out)?;
    }
    for e in f {
        if !done.contains(e) {
            walk(e.0, *e, &mut done, &mut out)?;
        }
    }
    let paired: BTreeSet<Edge> = out.iter().map(|p| p.1).collect();
    if paired.len() != g.len() {
        return Err(Error::Contract("pairing is not a bijection".into()));
    }
    Ok(out)
}
