//! Ratio-4 groomings in which each wavelength carries at most three edges on `V`.
//!
//! Every block is a triangle, 4-cycle or kite, so the drop cost is always
//! `binom(n,2)`. Blocks inside `V` are triangles. With `optimize_wavelengths`
//! the number of triangles is brought down to the minimum, which also
//! minimizes the wavelength count since each block gets its own wavelength.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::util::{clique, clique_groom, clique_part, kite_parts};
use super::{fixtures::fixture, BuildRequest};
use crate::design::{
    gdd3, headset, headset_exact, pts_with_leave, steiner_triple_system, Headset, LeaveShape, Mon4Request, SmallSearch, TripleSystem,
};
use crate::error::{construction, Error, Result};
use crate::formulas::triangle_lower_bound;
use crate::model::{Block, Decomposition, Edge, Vertex};

const REGROUP_ROUNDS: u64 = 600;
const CHERRY_ATTEMPTS: u64 = 50;

/// `sets[i]` lists, in order, the indices `j` whose edges `{a_j, i}` become
/// pendants of the triples headed by `i`. `a_j` is the vertex `first_w + j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadAssignment {
    pub first_w: Vertex,
    pub sets: Vec<Vec<u32>>,
}

impl HeadAssignment {
    pub fn uniform(points: u32, first_w: Vertex, set: impl Fn(Vertex) -> Vec<u32>) -> Self {
        HeadAssignment { first_w, sets: (0..points).map(set).collect() }
    }
}

/// Turns triples into kites: the `k`-th triple headed by `i` (in index
/// order) takes the pendant `{i, a_j}` with `j = sets[i][k]`. Unused
/// triples stay triangles.
pub fn general_prescription(ts: &TripleSystem, hs: &Headset, asg: &HeadAssignment, w: u32) -> Result<Vec<Block>> {
    if hs.heads.len() != ts.triples.len() || asg.sets.len() != ts.points as usize {
        return Err(Error::Contract("headset or assignment does not match the triple system".into()));
    }
    for (i, set) in asg.sets.iter().enumerate() {
        if set.len() > hs.occurrences[i] {
            return Err(Error::Contract(format!(
                "point {i} heads {} triples but {} pendants were asked for",
                hs.occurrences[i],
                set.len()
            )));
        }
        if let Some(j) = set.iter().find(|&&j| j >= w) {
            return Err(Error::Contract(format!("a_{j} is not among the {w} outside vertices")));
        }
    }
    let mut used = vec![0usize; ts.points as usize];
    Ok(ts
        .triples
        .iter()
        .zip(&hs.heads)
        .map(|(t, &h)| {
            let k = &mut used[h as usize];
            match asg.sets[h as usize].get(*k) {
                Some(&j) => {
                    *k += 1;
                    let o: Vec<Vertex> = t.iter().copied().filter(|&x| x != h).collect();
                    Block::kite(o[0], o[1], h, asg.first_w + j)
                }
                None => Block::triangle(t[0], t[1], t[2]),
            }
        })
        .collect())
}

/// Builds an optimal `N(n,v;4,3)` with `w >= 1`.
pub fn build_c3(req: &BuildRequest) -> Result<Decomposition> {
    let inst = req.instance;
    if inst.cprime != 3 {
        return Err(Error::Contract(format!("build_c3 called with C' = {}", inst.cprime)));
    }
    let (n, v, w) = (inst.n, inst.v, inst.w());
    if n <= 4 {
        return Err(Error::InvalidInstance(format!("n = {n} is too small")));
    }
    if w == 0 {
        return Err(Error::Unsupported("C' = 3 with v = n".into()));
    }
    let blocks = if req.optimize_wavelengths {
        let (vb, wb) = descend(v, w);
        mon_base(vb, wb, req.seed)?
    } else {
        single_outside(n, req.seed)?
    };
    Ok(Decomposition::from_blocks(inst, blocks))
}

/// A layout with `v = n-1`, which serves every smaller `v` as well.
fn single_outside(n: u32, seed: u64) -> Result<Vec<Block>> {
    let a0 = n - 1;
    let tri = |t: &[Vertex; 3]| Block::triangle(t[0], t[1], t[2]);
    match n % 6 {
        1 | 3 => Ok(steiner_triple_system(n)?.triples.iter().map(tri).collect()),
        5 => {
            let ts = pts_with_leave(n, &LeaveShape::FourCycle, seed)?;
            let swap = |x: Vertex| match x {
                3 => a0,
                x if x == a0 => 3,
                x => x,
            };
            let mut out: Vec<Block> = ts.triples.iter().map(|t| tri(t).map(swap)).collect();
            out.push(Block::cycle4(0, 1, 2, a0));
            Ok(out)
        }
        _ => {
            let vp = n - 1;
            let l = if vp % 6 == 3 { vp - 3 } else { vp - 1 };
            let ts = pts_with_leave(vp, &LeaveShape::Cycle(l), seed)?;
            let mut out: Vec<Block> = (0..l / 2).map(|i| Block::kite(a0, 2 * i, 2 * i + 1, (2 * i + 2) % l)).collect();
            let extra: Vec<Vertex> = (l..vp).collect();
            let mut pick = Vec::new();
            if !pick_triples(&ts.triples, &extra, &mut pick) {
                return Err(construction("build_c3", "no distinct triples through the spare points"));
            }
            for (k, t) in ts.triples.iter().enumerate() {
                match pick.iter().position(|&p| p == k) {
                    Some(e) => {
                        let x = extra[e];
                        let o: Vec<Vertex> = t.iter().copied().filter(|&y| y != x).collect();
                        out.push(Block::kite(o[0], o[1], x, a0));
                    }
                    None => out.push(tri(t)),
                }
            }
            Ok(out)
        }
    }
}

fn pick_triples(triples: &[[Vertex; 3]], points: &[Vertex], pick: &mut Vec<usize>) -> bool {
    let Some(&x) = points.get(pick.len()) else {
        return true;
    };
    for (k, t) in triples.iter().enumerate() {
        if t.contains(&x) && !pick.contains(&k) {
            pick.push(k);
            if pick_triples(triples, points, pick) {
                return true;
            }
            pick.pop();
        }
    }
    false
}

/// Moves `(v,w)` to a base case with the same `n`. A layout for the base
/// case is valid for the original one on the same labels, and keeps at
/// most three triangles along every step taken here.
pub fn descend(mut v: u32, mut w: u32) -> (u32, u32) {
    loop {
        let bound = if v % 2 == 1 { (v + 9) / 6 } else { (v + 4) / 6 };
        if w <= bound {
            return (v, w);
        }
        let one_step = if v % 2 == 1 { w == bound + 1 } else { w <= bound + 2 };
        if one_step {
            (v, w) = (v + 1, w - 1);
        } else {
            (v, w) = (v + 2, w - 2);
        }
    }
}

fn mon_base(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let t = v / 6;
    match (v % 6, w) {
        (1 | 3, w) if w <= (v - 1) / 6 => full_heads(v, w, seed),
        (5, w) if w <= (v - 1) / 6 => four_cycle_leave(v, w, seed),
        (3, w) if w == t + 1 && v > 3 => cycle_leave(v, w, seed),
        (1, w) if w == t + 1 => groups_one_spare(v, w, seed),
        (5, w) if w == t + 1 => groups_five_spare(v, w, seed),
        (5, w) if w == t + 2 => groups_five_spare_two(v, w, seed),
        (3, w) if w == t + 2 => groups_three_spare(v, w, seed),
        (0 | 2 | 4, w) if w <= (v + 2) / 6 => graph_l_leave(v, w, seed),
        (2, w) if w == (v + 4) / 6 => pair_groups(v, w, seed),
        _ => Err(construction("build_c3", format!("no base layout for v = {v}, w = {w}"))),
    }
}

fn target(v: u32, w: u32) -> usize {
    triangle_lower_bound(v, w).delta_min as usize
}

/// Re-partitions `leftover` together with a few blocks around it so that
/// the layout ends with exactly `target` triangles.
fn regroup(blocks: &mut Vec<Block>, leftover: &[Edge], v: u32, target: usize, seed: u64) -> Result<()> {
    let tri_now = blocks.iter().filter(|b| b.len() == 3).count();
    let anchors: BTreeSet<Vertex> = leftover.iter().flat_map(|e| [e.0, e.1]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..REGROUP_ROUNDS {
        let size = 1 + round as usize % 8;
        let mut region: Vec<usize> = Vec::new();
        let mut seen = anchors.clone();
        if round == 0 {
            region = (0..blocks.len()).filter(|&k| blocks[k].vertices().iter().any(|x| *x < v && anchors.contains(x))).collect();
        }
        while region.len() < size {
            let shared = |k: usize| blocks[k].vertices().iter().filter(|x| seen.contains(x)).count();
            let near: Vec<usize> = (0..blocks.len()).filter(|&k| !region.contains(&k) && shared(k) > 0).collect();
            let close: Vec<usize> = near.iter().copied().filter(|&k| shared(k) > 1).collect();
            let pool = if !close.is_empty() && rng.gen_bool(0.8) { &close } else { &near };
            let Some(&k) = pool.choose(&mut rng) else { break };
            seen.extend(blocks[k].vertices());
            region.push(k);
        }
        let outside = tri_now - region.iter().filter(|&&k| blocks[k].len() == 3).count();
        let Some(tri) = target.checked_sub(outside) else { continue };
        let mut edges = leftover.to_vec();
        edges.extend(region.iter().flat_map(|&k| blocks[k].edges.iter().copied()));
        if edges.len() < 3 * tri || !(edges.len() - 3 * tri).is_multiple_of(4) {
            continue;
        }
        let mut search = SmallSearch::new(tri, seed.wrapping_add(round)).allow(|b: &Block| b.edges.iter().filter(|e| e.1 < v).count() <= 3);
        search.attempts = 2;
        search.node_limit = if round == 0 { 200_000 } else { 20_000 };
        if let Ok(found) = search.run(&edges) {
            region.sort_unstable();
            for &k in region.iter().rev() {
                blocks.swap_remove(k);
            }
            blocks.extend(found);
            return Ok(());
        }
    }
    Err(construction("build_c3", format!("no regrouping reaches {target} triangles")))
}

fn outside(v: u32, w: u32) -> Vec<Vertex> {
    (v..v + w).collect()
}

fn fixture_blocks(name: &str) -> Result<Vec<Block>> {
    Ok(fixture(name)?.decomposition.blocks().cloned().collect())
}

fn gdd_system(g: u32, u: u32, seed: u64) -> Result<TripleSystem> {
    let d = gdd3(g, u, seed)?;
    let leave = d.groups.iter().flat_map(|grp| clique(grp)).collect();
    Ok(TripleSystem { points: g * u, triples: d.triples, leave })
}

/// Kites with pendant `{a_j, i}` for every `j` in `sets(i)`.
fn prescribe(ts: &TripleSystem, v: u32, w: u32, sets: impl Fn(Vertex) -> Vec<u32>) -> Result<Vec<Block>> {
    let hs = headset(ts)?;
    general_prescription(ts, &hs, &HeadAssignment::uniform(ts.points, v, sets), w)
}

/// Covers the clique on `ws`. A `K_2` or `K_4` has no zero-excess
/// partition, so two kites with pendants `{ws[0],x}` and `{ws[1],x}` give
/// those pendants up and become triangles; failing that, the clique is
/// regrouped with nearby blocks to end at `target` triangles.
fn close_clique(ws: &[Vertex], blocks: &mut Vec<Block>, v: u32, target: usize, seed: u64) -> Result<()> {
    match ws.len() {
        0 | 1 => {}
        3 => blocks.push(Block::triangle(ws[0], ws[1], ws[2])),
        2 | 4 => {
            let find = |a: Vertex, x: Vertex| {
                blocks.iter().position(|b| kite_parts(b).is_some_and(|(_, p)| p == Edge::new(a, x)))
            };
            let Some((k0, k1)) = (0..v).find_map(|x| Some((find(ws[0], x)?, find(ws[1], x)?))) else {
                return regroup(blocks, &clique(ws), v, target, seed);
            };
            let mut edges = clique(ws);
            for k in [k0, k1] {
                let (tri, p) = kite_parts(&blocks[k]).expect("kite");
                let t: Vec<Vertex> = tri.into_iter().collect();
                blocks[k] = Block::triangle(t[0], t[1], t[2]);
                edges.push(p);
            }
            let tri = usize::from(ws.len() == 2);
            blocks.extend(SmallSearch::new(tri, seed).run(&edges)?);
        }
        _ => blocks.extend(clique_groom(ws, &Mon4Request { seed, ..Default::default() })?),
    }
    Ok(())
}

/// `v ≡ 1,3 (mod 6)`, `w <= (v-1)/6`.
fn full_heads(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let ts = steiner_triple_system(v)?;
    let mut blocks = prescribe(&ts, v, w, |_| (0..w).collect())?;
    close_clique(&outside(v, w), &mut blocks, v, target(v, w), seed)?;
    Ok(blocks)
}

/// `v ≡ 5 (mod 6)`, `w <= (v-1)/6`.
fn four_cycle_leave(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let ts = pts_with_leave(v, &LeaveShape::FourCycle, seed)?;
    let mut blocks = prescribe(&ts, v, w, |i| if i <= 3 { (0..w - 1).collect() } else { (0..w).collect() })?;
    let last = v + w - 1;
    blocks.push(Block::kite(last, 1, 2, 3));
    blocks.push(Block::kite(last, 3, 0, 1));
    close_clique(&outside(v, w), &mut blocks, v, target(v, w), seed)?;
    Ok(blocks)
}

/// `v = 6t+3`, `w = t+1`, `t >= 1`.
fn cycle_leave(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    if w >= 4 {
        return cherries(v, w, seed);
    }
    let a = |j: u32| v + j;
    let ts = pts_with_leave(v, &LeaveShape::Cycle(v), seed)?;
    let mut blocks = prescribe(&ts, v, w, |_| (1..w).collect())?;
    for k in 0..(v - 1) / 2 {
        blocks.push(Block::kite(a(0), 2 * k, 2 * k + 1, 2 * k + 2));
    }
    let ws = outside(v, w);
    let mut leftover = vec![Edge::new(a(0), v - 1), Edge::new(0, v - 1)];
    match w {
        2 | 4 => leftover.extend(clique(&ws)),
        _ => close_clique(&ws, &mut blocks, v, target(v, w), seed)?,
    }
    regroup(&mut blocks, &leftover, v, target(v, w), seed)?;
    Ok(blocks)
}

/// `v = 6t+3`, `w = t+1 >= 4`: every Steiner triple becomes a kite. A third
/// of the points head `t-1` triples and keep `{x,a_0}`, `{x,a_1}` spare;
/// those cherries pair into 4-cycles, and the odd one closes through `a_2`.
fn cherries(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let t = w - 1;
    let ts = steiner_triple_system(v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vertex> = (0..v).collect();
    let mut found = None;
    for attempt in 0..CHERRY_ATTEMPTS {
        if attempt > 0 {
            points.shuffle(&mut rng);
        }
        let short: BTreeSet<Vertex> = if attempt == 0 {
            (0..v).filter(|x| x % 3 == 0).collect()
        } else {
            points[..(v / 3) as usize].iter().copied().collect()
        };
        let caps: Vec<usize> = (0..v).map(|x| (if short.contains(&x) { t - 1 } else { t + 1 }) as usize).collect();
        if let Ok(hs) = headset_exact(&ts, &caps) {
            found = Some((hs, short));
            break;
        }
    }
    let (hs, short) = found.ok_or_else(|| construction("build_c3", "no head counts for the cherry layout"))?;
    let sets: Vec<Vec<u32>> = (0..v).map(|x| if short.contains(&x) { (2..w).collect() } else { (0..w).collect() }).collect();
    let mut blocks = general_prescription(&ts, &hs, &HeadAssignment { first_w: v, sets }, w)?;
    let short: Vec<Vertex> = short.into_iter().collect();
    let (&odd, paired) = short.split_last().expect("v/3 cherries");
    for pair in paired.chunks(2) {
        blocks.push(Block::cycle4(pair[0], a(0), pair[1], a(1)));
    }
    let ws = outside(v, w);
    if ws.len() <= 9 {
        let mut edges = clique(&ws);
        edges.extend([Edge::new(odd, a(0)), Edge::new(odd, a(1))]);
        blocks.extend(SmallSearch::new(3 * edges.len() % 4, seed).run(&edges)?);
    } else {
        blocks.push(Block::cycle4(odd, a(0), a(2), a(1)));
        let omit = BTreeSet::from([Edge::new(a(0), a(2)), Edge::new(a(1), a(2))]);
        blocks.extend(clique_part(&ws, &omit, None, seed)?);
    }
    Ok(blocks)
}

/// Relabels the blocks of a stored layout.
fn copy_of(blocks: &[Block], keep: impl Fn(&Block) -> bool, map: impl Fn(Vertex) -> Vertex) -> Vec<Block> {
    blocks.iter().filter(|b| keep(b)).map(|b| b.map(&map)).collect()
}

fn with_pendant(b: &Block, pendant: Edge) -> Block {
    let (tri, _) = kite_parts(b).expect("kite");
    let z = if tri.contains(&pendant.0) { pendant.0 } else { pendant.1 };
    let o: Vec<Vertex> = tri.into_iter().filter(|&x| x != z).collect();
    Block::kite(o[0], o[1], z, pendant.other(z))
}

/// Groups `{6p..6p+5}`, `p < t`: cross-group pairs lie in triples headed
/// to take pendants `{a_j, i}` for `j < upto`, `j != p`.
fn group_heads(t: u32, v: u32, upto: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let ts = gdd_system(6, t, seed)?;
    prescribe(&ts, v, w, |i| (0..upto).filter(|&j| j != i / 6).collect())
}

/// `v = 6t+1`, `w = t+1`.
fn groups_one_spare(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let t = (v - 1) / 6;
    match t {
        1 => return fixture_blocks("O3.MON(7+2,7;4,3)"),
        2 => return fixture_blocks("D.MON(13+3,13;4,3)"),
        _ => {}
    }
    let a = |j: u32| v + j;
    let mut blocks = group_heads(t, v, t, w, seed)?;
    let gadget = fixture_blocks("O3.MON(7+2,7;4,3)")?;
    let odd_one = Block::kite(0, 8, 7, 6);
    for p in 0..t {
        let map = |x: Vertex| match x {
            x if x < 6 => 6 * p + x,
            6 => v - 1,
            7 => a(t),
            _ => a(p),
        };
        for b in &gadget {
            if b.canonical() == odd_one.canonical() && p + 1 < t {
                blocks.push(Block::kite(6 * p, a(t), a(p), a(t - 1)));
            } else {
                blocks.push(b.map(map));
            }
        }
    }
    close_clique(&outside(v, t - 1), &mut blocks, v, target(v, w), seed)?;
    Ok(blocks)
}

/// `v = 6t+5`, `w = t+1`.
fn groups_five_spare(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let t = (v - 5) / 6;
    match t {
        0 => return fixture_blocks("O4.MON(5+1,5;4,3)"),
        1 => return fixture_blocks("O4.MON(11+2,11;4,3)"),
        2 => return fixture_blocks("D.MON(17+3,17;4,3)"),
        _ => {}
    }
    let a = |j: u32| v + j;
    let mut blocks = group_heads(t, v, t, w, seed)?;
    let q = fixture_blocks("O4.MON(11+2,11;4,3)")?;
    let moves = [(Edge::new(12, 4), Edge::new(12, 10)), (Edge::new(11, 8), Edge::new(11, 10)), (Edge::new(12, 2), Edge::new(11, 8))];
    let q: Vec<Block> = q
        .iter()
        .filter(|b| b.vertices().iter().any(|&x| (5..=10).contains(&x)) && b.len() == 4)
        .map(|b| match kite_parts(b).and_then(|(_, p)| moves.iter().find(|m| m.0 == p)) {
            Some(&(_, to)) => with_pendant(b, to),
            None => b.clone(),
        })
        .collect();
    for p in 0..t {
        blocks.extend(copy_of(&q, |_| true, |x| match x {
            x if x < 5 => v - 5 + x,
            x if x <= 10 => 6 * p + x - 5,
            11 => a(t),
            _ => a(p),
        }));
    }
    let small = fixture_blocks("O4.MON(5+1,5;4,3)")?;
    let mut small = copy_of(&small, |_| true, |x| if x < 5 { v - 5 + x } else { a(t) });
    let mut hv: Vec<Vertex> = (0..t).map(a).collect();
    hv.extend([a(t), v - 3, v - 1]);
    let mut omit: BTreeSet<Edge> = [Edge::new(a(t), v - 3), Edge::new(a(t), v - 1), Edge::new(v - 3, v - 1)].into();
    let m = clique(&hv).len() - omit.len();
    if 3 * m % 4 == 3 {
        omit.insert(Edge::new(a(0), v - 1));
        let k = small.iter().position(|b| b.len() == 3).expect("the small layout has a triangle");
        small[k] = Block::kite(v - 5, v - 3, v - 1, a(0));
    }
    blocks.extend(small);
    blocks.extend(clique_part(&hv, &omit, None, seed)?);
    Ok(blocks)
}

/// `v = 6t+5`, `w = t+2`.
fn groups_five_spare_two(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let t = (v - 5) / 6;
    match t {
        0 => return fixture_blocks("O5.MON(5+2,5;4,3)"),
        1 => return fixture_blocks("O5.MON(11+3,11;4,3)"),
        2 => return fixture_blocks("D.MON(17+4,17;4,3)"),
        _ => {}
    }
    let a = |j: u32| v + j;
    let mut blocks = group_heads(t, v, t, w, seed)?;
    let gadget = fixture_blocks("O5.MON(11+3,11;4,3)")?;
    let core = |b: &Block| b.len() == 4 && b.vertices().iter().all(|&x| x < 5 || x == 11 || x == 12);
    let map = |p: u32| {
        move |x: Vertex| match x {
            x if x < 5 => v - 5 + x,
            x if x <= 10 => 6 * p + x - 5,
            11 => a(t),
            12 => a(t + 1),
            _ => a(p),
        }
    };
    blocks.extend(copy_of(&gadget, core, map(0)));
    for p in 0..t {
        blocks.extend(copy_of(&gadget, |b| b.vertices().iter().any(|&x| (5..=10).contains(&x)), map(p)));
    }
    close_clique(&outside(v, w), &mut blocks, v, target(v, w), seed)?;
    Ok(blocks)
}

/// `v = 6t+3`, `w = t+2`.
fn groups_three_spare(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let t = (v - 3) / 6;
    match t {
        0 => return fixture_blocks("O6.MON(3+2,3;4,3)"),
        1 => return fixture_blocks("O6.MON(9+3,9;4,3)"),
        2 => return fixture_blocks("D.MON(15+4,15;4,3)"),
        _ => {}
    }
    let a = |j: u32| v + j;
    let (big, small) = (a(t), a(t + 1));
    let mut blocks = group_heads(t, v, t, w, seed)?;
    let gadget = fixture_blocks("O6.MON(9+3,9;4,3)")?;
    for p in 0..t {
        blocks.extend(copy_of(&gadget, |b| b.vertices().iter().any(|&x| (3..=8).contains(&x) || x == 11), |x| match x {
            x if x < 3 => v - 3 + x,
            x if x <= 8 => 6 * p + x - 3,
            9 => big,
            10 => small,
            _ => a(p),
        }));
    }
    let ws = outside(v, t);
    if matches!(t % 8, 2 | 4 | 5 | 7) {
        for p in 0..2 {
            let (x, y) = (6 * p + 4, 6 * p + 5);
            let old = Block::kite(x, a(p), y, big).canonical();
            let k = blocks.iter().position(|b| b.canonical() == old).expect("gadget kite");
            blocks[k] = Block::kite(x, y, a(p), a(2));
        }
        blocks.push(Block::kite(v - 3, v - 2, big, 5));
        blocks.push(Block::kite(small, v - 1, big, 11));
        blocks.push(Block::cycle4(small, v - 3, v - 1, v - 2));
        let omit = BTreeSet::from([Edge::new(a(0), a(2)), Edge::new(a(1), a(2))]);
        blocks.extend(clique_part(&ws, &omit, None, seed)?);
    } else {
        let tail = fixture_blocks("O6.MON(3+2,3;4,3)")?;
        blocks.extend(copy_of(&tail, |_| true, |x| match x {
            x if x < 3 => v - 3 + x,
            3 => big,
            _ => small,
        }));
        close_clique(&ws, &mut blocks, v, target(v, w), seed)?;
    }
    Ok(blocks)
}

/// `v` even, `w <= (v+2)/6`.
fn graph_l_leave(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let (t, s) = (v / 6, v % 6);
    let ts = pts_with_leave(v, &LeaveShape::GraphL, seed)?;
    let mut blocks = prescribe(&ts, v, w, |_| (0..w - 1).collect())?;
    let last = a(w - 1);
    for i in 0..t {
        for j in 0..3 {
            blocks.push(Block::cycle4(last, 3 * i + (j + 1) % 3, 3 * i + j, 3 * t + 3 * i + j));
        }
    }
    if s == 4 {
        blocks.push(Block::cycle4(last, 6 * t + 2, 6 * t, 6 * t + 3));
    }
    let ws = outside(v, w);
    if s != 0 && matches!(w % 8, 2 | 7) {
        blocks.push(Block::kite(6 * t, 6 * t + 1, last, a(0)));
        blocks.extend(clique_part(&ws, &BTreeSet::from([Edge::new(a(0), last)]), None, seed)?);
        return Ok(blocks);
    }
    if s != 0 {
        blocks.push(Block::triangle(last, 6 * t, 6 * t + 1));
    }
    close_clique(&ws, &mut blocks, v, target(v, w), seed)?;
    Ok(blocks)
}

/// `v = 6t+2`, `w = t+1`.
fn pair_groups(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let half = v / 2;
    let bw = (w * (w - 1) / 2) as usize;
    let m = (0..=bw.min(half as usize)).rev().find(|m| (bw - m).is_multiple_of(4)).expect("m = bw - bw % 4 qualifies");
    let ws = outside(v, w);
    let mut blocks = Vec::new();
    let chosen: Vec<Edge> = if m == bw {
        clique(&ws)
    } else {
        let wb = clique_groom(&ws, &Mon4Request { seed, ..Default::default() })?;
        let (mut tri, mut rest): (Vec<Block>, Vec<Block>) = wb.into_iter().partition(|b| b.len() == 3);
        while tri.iter().map(Block::len).sum::<usize>() < m {
            tri.push(rest.pop().ok_or_else(|| construction("build_c3", "too few edges on W"))?);
        }
        blocks.extend(rest);
        tri.iter().flat_map(|b| b.edges.iter().copied()).collect()
    };
    if chosen.len() != m {
        return Err(construction("build_c3", "could not split the edges on W"));
    }
    let f: Vec<u32> = (0..half)
        .map(|i| match chosen.get(i as usize) {
            Some(e) => e.0 - v,
            None if i + 1 == half => 1,
            None => 0,
        })
        .collect();
    let mut ts = gdd_system(2, half, seed)?;
    let mut hs = headset(&ts)?;
    let repair = v == 14 || v == 20;
    if repair {
        (ts, hs) = aim_first_triple(&ts, &hs, half);
    }
    blocks.extend(general_prescription(
        &ts,
        &hs,
        &HeadAssignment::uniform(v, v, |i| (0..w).filter(|&j| j != f[(i / 2) as usize]).collect()),
        w,
    )?);
    for i in 0..half {
        let (x, y) = (2 * i, 2 * i + 1);
        match chosen.get(i as usize) {
            Some(e) => blocks.push(Block::kite(x, y, e.0, e.1)),
            None => blocks.push(Block::triangle(a(f[i as usize]), x, y)),
        }
    }
    if repair {
        let gone = [
            Block::kite(v - 6, v - 4, v - 8, a(1)),
            Block::triangle(a(0), v - 8, v - 7),
            Block::triangle(a(0), v - 6, v - 5),
            Block::triangle(a(0), v - 4, v - 3),
            Block::triangle(a(1), v - 2, v - 1),
        ]
        .map(|b| b.canonical());
        let before = blocks.len();
        blocks.retain(|b| !gone.contains(&b.canonical()));
        if blocks.len() + gone.len() != before {
            return Err(construction("build_c3", "the blocks to regroup are not all present"));
        }
        blocks.push(Block::kite(a(0), v - 7, v - 8, v - 6));
        blocks.push(Block::kite(a(0), v - 5, v - 6, v - 4));
        blocks.push(Block::kite(a(0), v - 3, v - 4, v - 8));
        blocks.push(Block::kite(v - 2, v - 1, a(1), v - 8));
    }
    Ok(blocks)
}

/// Relabels a 3-GDD with groups `{2i, 2i+1}` so that its first triple is
/// `{v-8, v-6, v-4}` headed by `v-8`.
fn aim_first_triple(ts: &TripleSystem, hs: &Headset, half: u32) -> (TripleSystem, Headset) {
    let first = ts.triples[0];
    let head = hs.heads[0];
    let mut order: Vec<Vertex> = vec![head];
    order.extend(first.iter().copied().filter(|&x| x != head));
    let mut group_map: BTreeMap<u32, u32> = BTreeMap::new();
    for (k, &x) in order.iter().enumerate() {
        group_map.insert(x / 2, half - 4 + k as u32);
    }
    let taken: BTreeSet<u32> = group_map.values().copied().collect();
    let mut free = (0..half).filter(|g| !taken.contains(g));
    for g in 0..half {
        group_map.entry(g).or_insert_with(|| free.next().expect("as many groups as targets"));
    }
    let map = |x: Vertex| {
        let g = group_map[&(x / 2)];
        let lead = order.iter().any(|&y| y / 2 == x / 2 && y == x) || !order.iter().any(|&y| y / 2 == x / 2) && x.is_multiple_of(2);
        2 * g + u32::from(!lead)
    };
    let triples = ts.triples.iter().map(|t| t.map(map)).collect();
    let leave = ts.leave.iter().map(|e| e.map(map)).collect();
    let heads: Vec<Vertex> = hs.heads.iter().map(|&h| map(h)).collect();
    let mut occurrences = vec![0; ts.points as usize];
    for &h in &heads {
        occurrences[h as usize] += 1;
    }
    (TripleSystem { points: ts.points, triples, leave }, Headset { heads, occurrences })
}
