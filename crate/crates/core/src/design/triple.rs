//! Steiner and partial triple systems, and 3-GDDs.
//!
//! Steiner triple systems come from the Bose and Skolem constructions. Triple
//! systems with a prescribed leave and group divisible designs are found by
//! hill-climbing on a triangle decomposition of the host graph.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SEARCH_ATTEMPTS;
use crate::error::{construction, Error, Result};
use crate::model::{complete_edges, Edge, Vertex};

fn triple_edges(t: &[Vertex; 3]) -> [Edge; 3] {
    [Edge::new(t[0], t[1]), Edge::new(t[0], t[2]), Edge::new(t[1], t[2])]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSystem {
    pub points: u32,
    pub triples: Vec<[Vertex; 3]>,
    /// Edges of `K_points` covered by no triple.
    pub leave: Vec<Edge>,
}

impl TripleSystem {
    pub fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for t in &self.triples {
            if t.iter().any(|&x| x >= self.points) || t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::Contract(format!("bad triple {t:?}")));
            }
            for e in triple_edges(t) {
                if !seen.insert(e) {
                    return Err(Error::Contract(format!("pair {e} covered twice")));
                }
            }
        }
        for e in &self.leave {
            if !seen.insert(*e) {
                return Err(Error::Contract(format!("leave edge {e} is also covered by a triple")));
            }
        }
        if seen.len() != complete_edges(self.points).len() || seen.iter().any(|e| e.1 >= self.points) {
            return Err(Error::Contract("triples and leave do not partition the complete graph".into()));
        }
        Ok(())
    }

    /// Number of triples through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.points as usize];
        for t in &self.triples {
            for &x in t {
                r[x as usize] += 1;
            }
        }
        r
    }
}

/// The Bose construction for `v ≡ 3 (mod 6)` and the Skolem construction for
/// `v ≡ 1 (mod 6)`.
pub fn steiner_triple_system(v: u32) -> Result<TripleSystem> {
    let triples = match v % 6 {
        3 => bose(v),
        1 => skolem(v),
        _ => return Err(Error::InvalidInstance(format!("Steiner triple systems need v ≡ 1,3 (mod 6), got {v}"))),
    };
    let ts = TripleSystem { points: v, triples, leave: Vec::new() };
    ts.check()?;
    Ok(ts)
}

fn bose(v: u32) -> Vec<[Vertex; 3]> {
    let q = v / 3;
    let n = (q - 1) / 2;
    let p = |x: u32, i: u32| (i % 3) * q + x;
    let op = |x: u32, y: u32| ((x + y) * (n + 1)) % q;
    let mut out: Vec<[Vertex; 3]> = (0..q).map(|x| [p(x, 0), p(x, 1), p(x, 2)]).collect();
    for i in 0..3 {
        for x in 0..q {
            for y in x + 1..q {
                out.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    out
}

fn skolem(v: u32) -> Vec<[Vertex; 3]> {
    let n = (v - 1) / 6;
    let q = 2 * n;
    let inf = v - 1;
    let p = |x: u32, i: u32| (i % 3) * q + x;
    let half = |s: u32| if s.is_multiple_of(2) { s / 2 } else { n + (s - 1) / 2 };
    let op = |x: u32, y: u32| half((x + y) % q);
    let mut out: Vec<[Vertex; 3]> = (0..n).map(|x| [p(x, 0), p(x, 1), p(x, 2)]).collect();
    for x in 0..n {
        for i in 0..3 {
            out.push([inf, p(n + x, i), p(x, i + 1)]);
        }
    }
    for i in 0..3 {
        for x in 0..q {
            for y in x + 1..q {
                out.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    out
}

/// Triangle decomposition of `host` (on `0..order`) by Stinson's hill-climbing:
/// pick a point with two uncovered pairs `{x,y}`, `{x,z}` and add `{x,y,z}`,
/// evicting the triple that already covers `{y,z}` if there is one.
pub fn triangle_decomposition(order: u32, host: &[Edge], seed: u64) -> Option<Vec<[Vertex; 3]>> {
    let n = order as usize;
    if !host.len().is_multiple_of(3) {
        return None;
    }
    let mut in_g = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    for e in host {
        in_g[e.0 as usize][e.1 as usize] = true;
        in_g[e.1 as usize][e.0 as usize] = true;
        deg[e.0 as usize] += 1;
        deg[e.1 as usize] += 1;
    }
    if deg.iter().any(|d| d % 2 == 1) {
        return None;
    }
    const FREE: usize = usize::MAX;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut third = vec![vec![FREE; n]; n];
    let mut live_deg = deg.clone();
    let target = host.len() / 3;
    let mut count = 0;
    let budget = 2000 * host.len() + 100_000;
    let mut live: Vec<usize> = Vec::with_capacity(n);
    let mut nbrs: Vec<usize> = Vec::with_capacity(n);
    for _ in 0..budget {
        if count == target {
            break;
        }
        live.clear();
        live.extend((0..n).filter(|&x| live_deg[x] > 0));
        let x = live[rng.gen_range(0..live.len())];
        nbrs.clear();
        nbrs.extend((0..n).filter(|&y| in_g[x][y] && third[x][y] == FREE));
        nbrs.shuffle(&mut rng);
        let mut pick = None;
        'outer: for (a, &y) in nbrs.iter().enumerate() {
            for &z in &nbrs[a + 1..] {
                if in_g[y][z] {
                    pick = Some((y, z));
                    break 'outer;
                }
            }
        }
        let Some((y, z)) = pick else { continue };
        let w = third[y][z];
        if w != FREE {
            for (p, q) in [(y, z), (y, w), (z, w)] {
                third[p][q] = FREE;
                third[q][p] = FREE;
            }
            live_deg[y] += 2;
            live_deg[z] += 2;
            live_deg[w] += 2;
            count -= 1;
        }
        third[x][y] = z;
        third[y][x] = z;
        third[x][z] = y;
        third[z][x] = y;
        third[y][z] = x;
        third[z][y] = x;
        live_deg[x] -= 2;
        live_deg[y] -= 2;
        live_deg[z] -= 2;
        count += 1;
    }
    if count != target {
        return None;
    }
    let mut out = BTreeSet::new();
    #[allow(clippy::needless_range_loop)]
    for x in 0..n {
        for y in x + 1..n {
            let z = third[x][y];
            if z != FREE {
                let mut t = [x as Vertex, y as Vertex, z as Vertex];
                t.sort();
                out.insert(t);
            }
        }
    }
    Some(out.into_iter().collect())
}

fn hill_climb(order: u32, host: &[Edge], seed: u64, what: &'static str) -> Result<Vec<[Vertex; 3]>> {
    (0..SEARCH_ATTEMPTS)
        .find_map(|a| triangle_decomposition(order, host, seed.wrapping_add(a)))
        .ok_or_else(|| construction(what, format!("no triangle decomposition found on {order} points")))
}

/// Leave graphs requested from [`pts_with_leave`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeaveShape {
    /// The 4-cycle `(0,1,2,3)`.
    FourCycle,
    /// The cycle `(0,1,...,l-1)`.
    Cycle(u32),
    /// For `v = 6t+s`, `s ∈ {0,2,4}`: triangles `{3i,3i+1,3i+2}` for `i < t`,
    /// the matching `{i,3t+i}` for `i < 3t`, plus `{6t,6t+1}` when `s = 2` and
    /// the star `{6t,6t+1},{6t,6t+2},{6t,6t+3}` when `s = 4`.
    GraphL,
    /// Any explicit edge set.
    Edges(Vec<Edge>),
}

impl LeaveShape {
    pub fn edges(&self, v: u32) -> Result<Vec<Edge>> {
        Ok(match self {
            LeaveShape::FourCycle => {
                if v < 4 {
                    return Err(Error::InvalidInstance("a 4-cycle leave needs v >= 4".into()));
                }
                (0..4).map(|i| Edge::new(i, (i + 1) % 4)).collect()
            }
            LeaveShape::Cycle(l) => {
                if *l < 3 || *l > v {
                    return Err(Error::InvalidInstance(format!("no {l}-cycle on {v} points")));
                }
                (0..*l).map(|i| Edge::new(i, (i + 1) % l)).collect()
            }
            LeaveShape::GraphL => {
                if v % 2 == 1 {
                    return Err(Error::InvalidInstance("the graph L needs even v".into()));
                }
                let (t, s) = (v / 6, v % 6);
                let mut l = Vec::new();
                for i in 0..t {
                    l.extend(triple_edges(&[3 * i, 3 * i + 1, 3 * i + 2]));
                }
                l.extend((0..3 * t).map(|i| Edge::new(i, 3 * t + i)));
                match s {
                    2 => l.push(Edge::new(6 * t, 6 * t + 1)),
                    4 => l.extend((1..4).map(|k| Edge::new(6 * t, 6 * t + k))),
                    _ => {}
                }
                l
            }
            LeaveShape::Edges(e) => e.clone(),
        })
    }
}

/// A partial triple system on `0..v` whose leave is exactly the requested graph.
pub fn pts_with_leave(v: u32, leave: &LeaveShape, seed: u64) -> Result<TripleSystem> {
    let leave = leave.edges(v)?;
    let removed: BTreeSet<Edge> = leave.iter().copied().collect();
    if removed.len() != leave.len() || leave.iter().any(|e| e.1 >= v || e.0 == e.1) {
        return Err(Error::InvalidInstance("leave is not a simple graph on the point set".into()));
    }
    let host: Vec<Edge> = complete_edges(v).into_iter().filter(|e| !removed.contains(e)).collect();
    let mut deg = vec![0usize; v as usize];
    for e in &host {
        deg[e.0 as usize] += 1;
        deg[e.1 as usize] += 1;
    }
    if !host.len().is_multiple_of(3) || deg.iter().any(|d| d % 2 == 1) {
        return Err(Error::InvalidInstance(format!("K_{v} minus the leave has no triangle decomposition")));
    }
    let triples = if host.is_empty() { Vec::new() } else { hill_climb(v, &host, seed, "pts_with_leave")? };
    let ts = TripleSystem { points: v, triples, leave };
    ts.check()?;
    Ok(ts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDivisibleDesign {
    pub group_size: u32,
    pub group_count: u32,
    pub groups: Vec<Vec<Vertex>>,
    pub triples: Vec<[Vertex; 3]>,
}

impl GroupDivisibleDesign {
    pub fn check(&self) -> Result<()> {
        let points = self.group_size * self.group_count;
        let group_of = |x: Vertex| self.groups.iter().position(|g| g.contains(&x));
        let mut seen = BTreeSet::new();
        for t in &self.triples {
            let gs: Vec<_> = t.iter().map(|&x| group_of(x)).collect();
            if gs.iter().any(|g| g.is_none()) || gs[0] == gs[1] || gs[0] == gs[2] || gs[1] == gs[2] {
                return Err(Error::Contract(format!("triple {t:?} meets a group twice")));
            }
            for e in triple_edges(t) {
                if !seen.insert(e) {
                    return Err(Error::Contract(format!("pair {e} covered twice")));
                }
            }
        }
        let cross = complete_edges(points).into_iter().filter(|e| group_of(e.0) != group_of(e.1)).count();
        if cross != seen.len() {
            return Err(Error::Contract("some cross-group pair is uncovered".into()));
        }
        Ok(())
    }
}

/// A 3-GDD of type `g^u` with groups `{{g·p + q : q < g} : p < u}`. Supported
/// types are `6^u` with `u >= 3` and `2^u` with `u ≡ 0,1 (mod 3)`, `u >= 3`.
pub fn gdd3(group_size: u32, group_count: u32, seed: u64) -> Result<GroupDivisibleDesign> {
    let ok = match group_size {
        6 => group_count >= 3,
        2 => group_count >= 3 && group_count % 3 != 2,
        _ => false,
    };
    if !ok {
        return Err(Error::InvalidInstance(format!("no supported 3-GDD of type {group_size}^{group_count}")));
    }
    let g = group_size;
    let groups: Vec<Vec<Vertex>> = (0..group_count).map(|p| (0..g).map(|q| g * p + q).collect()).collect();
    let host: Vec<Edge> = complete_edges(g * group_count).into_iter().filter(|e| e.0 / g != e.1 / g).collect();
    let triples = hill_climb(g * group_count, &host, seed, "gdd3")?;
    let gdd = GroupDivisibleDesign { group_size, group_count, groups, triples };
    gdd.check()?;
    Ok(gdd)
}
