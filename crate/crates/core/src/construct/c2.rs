//! Ratio-4 groomings in which each wavelength carries at most two edges on `V`.

use std::collections::BTreeSet;

use super::util::{clique, clique_groom, clique_part, kite_parts};
use super::{c1, fixtures::fixture, BuildRequest};
use crate::design::{
    build_on_n4_with, cocktail_partition, factor_pairing, hamiltonian_one_factorization, near_one_factorization,
    near_one_factorization_minus_cycle, one_factorization, one_factorization_avoiding, p3_partition, removed_k4_graph,
    Mon4Request, NearPrescription,
};
use crate::error::{construction, Error, Result};
use crate::formulas::{binom2, mon_n4_triangles};
use crate::model::{complete_edges, Block, Decomposition, Edge, Shape, Vertex, Wavelength};

/// Builds an optimal `N(n,v;4,2)`. With `optimize_wavelengths` the few
/// merges and reroutings that bring the wavelength count down to the
/// minimum are applied; otherwise each block is its own wavelength.
pub fn build_c2(req: &BuildRequest) -> Result<Decomposition> {
    let inst = req.instance;
    if inst.cprime != 2 {
        return Err(Error::Contract(format!("build_c2 called with C' = {}", inst.cprime)));
    }
    let (n, v, w) = (inst.n, inst.v, inst.w());
    if n <= 4 {
        return Err(Error::InvalidInstance(format!("n = {n} is too small")));
    }
    let mon = req.optimize_wavelengths;
    let wavelengths = if w == 0 {
        singles(p3_partition(&complete_edges(v))?)
    } else if v <= 2 * w {
        singles(tight(n, req.seed)?)
    } else {
        match (v, w) {
            (5, 1) => singles(hand_5_1()),
            (5, 2) => singles(fixture("Ex2")?.decomposition.blocks().cloned().collect()),
            (6, 2) => singles(hand_6_2()),
            _ if v % 2 == 0 => even_wide(v, w, mon, req.seed)?,
            _ => odd_wide(v, w, mon, req.seed)?,
        }
    };
    Ok(Decomposition { instance: inst, wavelengths })
}

fn singles(blocks: Vec<Block>) -> Vec<Wavelength> {
    blocks.into_iter().map(Wavelength::single).collect()
}

fn hand_5_1() -> Vec<Block> {
    vec![
        Block::kite(2, 5, 0, 1),
        Block::kite(4, 5, 3, 0),
        Block::path(&[0, 4, 1, 5]),
        Block::path(&[1, 2, 4]),
        Block::path(&[1, 3, 2]),
    ]
}

fn hand_6_2() -> Vec<Block> {
    vec![
        Block::kite(7, 0, 1, 2),
        Block::kite(7, 2, 3, 4),
        Block::kite(7, 4, 5, 0),
        Block::kite(6, 1, 4, 0),
        Block::kite(6, 2, 5, 3),
        Block::kite(0, 3, 6, 7),
        Block::path(&[0, 2, 4]),
        Block::path(&[3, 1, 5]),
    ]
}

/// Kites `{apex} ∪ e` plus a pendant from `g` at a shared vertex, one per edge `e` of `f`.
fn kite_row(apex: Vertex, f: &[Edge], g: &[Edge]) -> Result<Vec<Block>> {
    Ok(factor_pairing(f, g)?
        .into_iter()
        .map(|(e, s)| {
            let y = if s.contains(e.0) { e.0 } else { e.1 };
            Block::kite(apex, e.other(y), y, s.other(y))
        })
        .collect())
}

/// `P_3`s `[x,y,z]` pairing each edge of `f` with an adjacent edge of `g`.
fn path_row(f: &[Edge], g: &[Edge]) -> Result<Vec<Block>> {
    Ok(factor_pairing(f, g)?
        .into_iter()
        .map(|(e, s)| {
            let y = if s.contains(e.0) { e.0 } else { e.1 };
            Block::path(&[e.other(y), y, s.other(y)])
        })
        .collect())
}

/// Moves the pendant at one end of the `P_2` at `p2` out of a kite through
/// `apex`, turning the `P_2` into a `P_3`; the kite's triangle takes the
/// pendant `{apex, end}` instead.
fn reroute_p2(blocks: &mut [Block], p2: usize, apex: Vertex, end: Vertex) -> Result<()> {
    let e = blocks[p2].edges[0];
    for x in [e.0, e.1] {
        let y = e.other(x);
        let hit = blocks.iter().enumerate().find_map(|(k, b)| {
            let (tri, pend) = kite_parts(b)?;
            (tri.contains(&apex) && pend.contains(x) && !pend.contains(apex) && pend.other(x) != y).then_some((k, tri, pend))
        });
        if let Some((k, tri, pend)) = hit {
            let rest: Vec<Vertex> = tri.into_iter().filter(|&z| z != apex).collect();
            blocks[k] = Block::kite(rest[0], rest[1], apex, end);
            blocks[p2] = Block::path(&[y, x, pend.other(x)]);
            return Ok(());
        }
    }
    Err(construction("build_c2", "no kite pendant next to the leftover edge"))
}

/// Zero-excess blocks on `W` for the wide cases. `without_first` leaves
/// `{a_0, a_1}` uncovered; `want_triangle` asks for a triangle when `w = 4`.
fn wide_w_part(v: u32, w: u32, without_first: bool, want_triangle: bool, seed: u64) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let ws: Vec<Vertex> = (0..w).map(a).collect();
    Ok(match w {
        0 | 1 => Vec::new(),
        2 if without_first => Vec::new(),
        2 => vec![Block::edge(a(0), a(1))],
        3 => vec![Block::triangle(a(0), a(1), a(2))],
        4 if want_triangle => vec![
            Block::triangle(a(0), a(1), a(2)),
            Block::from_edges([Edge::new(a(3), a(0)), Edge::new(a(3), a(1)), Edge::new(a(3), a(2))]),
        ],
        4 => build_on_n4_with(4, &Mon4Request::default())?.iter().map(|b| b.map(a)).collect(),
        _ if without_first => clique_part(&ws, &BTreeSet::from([Edge::new(a(0), a(1))]), None, seed)?,
        _ => clique_groom(&ws, &Mon4Request { seed, ..Default::default() })?,
    })
}

/// Puts the lone `P_2` and a triangle on `W` on one wavelength.
fn merge_p2_with_triangle(mut blocks: Vec<Block>, inst_v: u32) -> Result<Vec<Wavelength>> {
    let p2 = blocks.iter().position(|b| b.len() == 1 && b.edges[0].1 < inst_v);
    let tri = blocks.iter().position(|b| b.len() == 3 && b.shape() == Shape::Triangle && b.vertices().iter().all(|&x| x >= inst_v));
    let (Some(p), Some(t)) = (p2, tri) else {
        return Err(construction("build_c2", "no P_2 and triangle on W to share a wavelength"));
    };
    let (hi, lo) = (p.max(t), p.min(t));
    let b1 = blocks.remove(hi);
    let b2 = blocks.remove(lo);
    let mut out = singles(blocks);
    out.push(Wavelength { blocks: vec![b2, b1] });
    Ok(out)
}

fn lone_p2(blocks: &[Block], v: u32) -> Option<usize> {
    blocks.iter().position(|b| b.len() == 1 && b.edges[0].1 < v)
}

fn even_wide(v: u32, w: u32, mon: bool, seed: u64) -> Result<Vec<Wavelength>> {
    let a = |j: u32| v + j;
    let mut blocks = Vec::new();
    let (repair_apex, repair_end);
    if v == 2 * w + 2 {
        let r = removed_k4_graph(v)?;
        let fs = one_factorization_avoiding(v, &r, seed)?;
        let w_us = w as usize;
        for i in 1..w_us {
            blocks.extend(kite_row(a(i as u32), &fs.factors[i - 1], &fs.factors[w_us - 1 + i - 1])?);
        }
        let k4s = if v.is_multiple_of(4) { v / 4 } else { (v - 6) / 4 };
        for i in 0..k4s {
            let [p, q, r, s] = [4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3];
            blocks.push(Block::kite(a(0), q, p, r));
            blocks.push(Block::kite(a(0), r, s, p));
            blocks.push(Block::path(&[r, q, s]));
        }
        if v % 4 == 2 {
            let [p, q, r, s, t, u] = [v - 6, v - 5, v - 4, v - 3, v - 2, v - 1];
            blocks.push(Block::kite(a(0), s, p, t));
            blocks.push(Block::kite(a(0), q, t, r));
            blocks.push(Block::kite(a(0), r, u, p));
            blocks.push(Block::path(&[s, q, u]));
            blocks.push(Block::edge(r, s));
        }
        (repair_apex, repair_end) = (a(1), a(0));
    } else {
        let fs = hamiltonian_one_factorization(v)?;
        let w_us = w as usize;
        let f = &fs.factors[2..2 + w_us];
        let mut g: Vec<&Vec<Edge>> = fs.factors[2 + w_us..].iter().collect();
        g.push(&fs.factors[0]);
        g.push(&fs.factors[1]);
        for i in 0..w_us {
            blocks.extend(kite_row(a(i as u32), &f[i], g[i])?);
        }
        let rest: Vec<Edge> = g[w_us..].iter().flat_map(|x| x.iter().copied()).collect();
        blocks.extend(p3_partition(&rest)?);
        (repair_apex, repair_end) = (a(0), a(1));
    }
    let bw = binom2(w as u64) % 4;
    let p2 = lone_p2(&blocks, v);
    let reroute = p2.is_some() && (w == 2 || (mon && bw == 1));
    let merge = p2.is_some() && mon && bw == 2;
    if reroute {
        reroute_p2(&mut blocks, p2.unwrap(), repair_apex, repair_end)?;
    }
    blocks.extend(wide_w_part(v, w, reroute, merge, seed)?);
    if merge {
        merge_p2_with_triangle(blocks, v)
    } else {
        Ok(singles(blocks))
    }
}

fn odd_wide(v: u32, w: u32, mon: bool, seed: u64) -> Result<Vec<Wavelength>> {
    let a = |j: u32| v + j;
    let t = (v - 1) / 2;
    let fs = near_one_factorization_minus_cycle(v, seed)?;
    let (w_us, t_us) = (w as usize, t as usize);
    let mut blocks = Vec::new();
    for i in 0..w_us {
        blocks.extend(kite_row(a(i as u32), &fs.factors[i], &fs.factors[w_us + i])?);
    }
    for h in 0..t_us - w_us {
        blocks.extend(path_row(&fs.factors[2 * w_us + 2 * h], &fs.factors[2 * w_us + 2 * h + 1])?);
    }
    let half = w / 2;
    for i in 0..half {
        blocks.push(Block::kite(a(2 * i), a(2 * i + 1), i, i + 1));
    }
    let mut seq: Vec<Vertex> = (half..t).chain([0]).collect();
    if w == 3 {
        blocks.push(Block::from_edges([
            Edge::new(1, 2),
            Edge::new(1, a(2)),
            Edge::new(a(2), a(0)),
            Edge::new(a(2), a(1)),
        ]));
        seq.remove(0);
    }
    let mut pieces: Vec<Vec<Vertex>> = seq.windows(3).step_by(2).map(<[Vertex]>::to_vec).collect();
    if (seq.len() - 1) % 2 == 1 {
        pieces.push(seq[seq.len() - 2..].to_vec());
    }
    if w % 2 == 1 && w != 3 {
        pieces[0].insert(0, a(w - 1));
    }
    blocks.extend(pieces.iter().map(|p| Block::path(p)));
    if w > 3 {
        blocks.extend(cocktail_partition(w)?.iter().map(|b| b.map(a)));
    }
    if mon && v % 4 == 1 && w % 4 == 3 && w != 3 {
        merge_p2_with_triangle(blocks, v)
    } else {
        Ok(singles(blocks))
    }
}

/// `v <= 2w`: build for `v' = floor(2n/3)`, which serves every smaller `v`.
fn tight(n: u32, seed: u64) -> Result<Vec<Block>> {
    let vp = 2 * n / 3;
    let wp = n - vp;
    match n {
        5 => Ok(c1::adjacent_layout(3)),
        11 => Ok(fixture("C.MON(7+4,7;4,2)")?.decomposition.blocks().cloned().collect()),
        _ if vp % 2 == 1 => odd_tight(vp, wp, seed),
        _ => even_tight(vp, wp, seed),
    }
}

/// `v = 2t+1`, `w = t+1`.
fn odd_tight(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let t = (v - 1) / 2;
    let t_us = t as usize;
    let fs = near_one_factorization(v, NearPrescription::CrossedMiddle)?;
    let mut blocks = Vec::new();
    for i in 0..t_us {
        blocks.extend(kite_row(a(i as u32), &fs.factors[i], &fs.factors[t_us + 1 + i])?);
    }
    for k in 0..t {
        blocks.push(Block::kite(a(t), t + k + 1, k, a(k)));
    }
    if w == 3 {
        blocks.push(Block::kite(a(0), a(1), a(2), t));
        return Ok(blocks);
    }
    let ws: Vec<Vertex> = (0..w).map(a).collect();
    let tw = match mon_n4_triangles(w) as usize {
        0 => 4,
        x => x,
    };
    let req = Mon4Request { triangles: Some(tw), triangle_at: Some(t), seed, ..Default::default() };
    let mut wb = clique_groom(&ws, &req)?;
    let k = wb
        .iter()
        .position(|b| b.len() == 3 && b.contains_vertex(a(t)))
        .ok_or_else(|| construction("build_c2", "no triangle at the last vertex of W"))?;
    let rest: Vec<Vertex> = wb[k].vertices().into_iter().filter(|&x| x != a(t)).collect();
    wb[k] = Block::kite(rest[0], rest[1], a(t), t);
    blocks.extend(wb);
    Ok(blocks)
}

const SHAPES: &[&[(u32, u32)]] = &[
    &[],
    &[(0, 1)],
    &[(0, 1), (2, 3)],
    &[(0, 1), (1, 2)],
    &[(0, 1), (1, 2), (0, 2)],
    &[(0, 1), (1, 2), (2, 3)],
    &[(0, 1), (0, 2), (0, 3)],
    &[(0, 1), (1, 2), (3, 4)],
    &[(0, 1), (2, 3), (4, 5)],
];

/// A pendant moved from kite `kite` of row `row` to leftover triangle `left`
/// at vertex `at`; the kite receives `{a_row, a_other}`.
#[derive(Clone, Copy, Debug)]
struct Steal {
    row: usize,
    other: u32,
    kite: usize,
    left: usize,
    at: Vertex,
}

fn plan_steals(
    p: &[(u32, u32)],
    rows: &[Vec<Block>],
    left: &[(u32, Edge)],
    plan: &mut Vec<Steal>,
) -> bool {
    let Some(&(x, y)) = p.get(plan.len()) else {
        return true;
    };
    for (row, other) in [(x, y), (y, x)] {
        for (li, (_, e)) in left.iter().enumerate() {
            if plan.iter().any(|s| s.left == li) {
                continue;
            }
            for at in [e.0, e.1] {
                let hit = rows[row as usize].iter().enumerate().find_map(|(k, b)| {
                    let (_, pend) = kite_parts(b)?;
                    (pend.contains(at) && pend.other(at) != e.other(at)).then_some(k)
                });
                let Some(kite) = hit else { continue };
                if plan.iter().any(|s| s.row == row as usize && s.kite == kite) {
                    continue;
                }
                plan.push(Steal { row: row as usize, other, kite, left: li, at });
                if plan_steals(p, rows, left, plan) {
                    return true;
                }
                plan.pop();
            }
        }
    }
    false
}

/// `v ∈ {2w-2, 2w}`. Rows `i < v-1-w` are kites; the others are triangles
/// `{a_i} ∪ e`, which take the edges `{a_i, a_k}`, `k < i`, as pendants. The
/// few triangles left over either stay, or take a pendant borrowed from a
/// kite whose triangle then takes an edge on `W`.
fn even_tight(v: u32, w: u32, seed: u64) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let n = v + w;
    let fs = one_factorization(v)?;
    let r = (v - 1 - w) as usize;
    let mut rows: Vec<Vec<Block>> = Vec::new();
    for i in 0..r {
        rows.push(kite_row(a(i as u32), &fs.factors[i], &fs.factors[w as usize + i])?);
    }
    let target = mon_n4_triangles(n) as usize;
    let top = w - 1;
    for g in 0..=(r.min(3) as u32) {
        if g > 0 && r > 8 {
            break;
        }
        let mut fixed = Vec::new();
        let mut left: Vec<(u32, Edge)> = Vec::new();
        for i in r as u32..w {
            let ks: Vec<u32> = if i == top { (g..i).collect() } else { (0..i).collect() };
            let tri = &fs.factors[i as usize];
            for (j, e) in tri.iter().enumerate() {
                match ks.get(j) {
                    Some(&k) => fixed.push(Block::kite(e.0, e.1, a(i), a(k))),
                    None => left.push((i, *e)),
                }
            }
        }
        let mut ws: Vec<Vertex> = (0..r as u32).map(a).collect();
        let mut base_omit: BTreeSet<Edge> = BTreeSet::new();
        if g > 0 {
            ws.push(a(top));
            base_omit.extend((g..r as u32).map(|k| Edge::new(a(k), a(top))));
        }
        let base_edges = clique(&ws).len() - base_omit.len();
        for s in 0..=left.len().min(3) {
            if left.len() - s > target {
                continue;
            }
            let tw = target - (left.len() - s);
            if base_edges < s + 3 * tw || !(base_edges - s - 3 * tw).is_multiple_of(4) {
                continue;
            }
            for shape in SHAPES.iter().filter(|p| p.len() == s) {
                if shape.iter().any(|&(x, y)| x.max(y) as usize >= r) {
                    continue;
                }
                let mut plan = Vec::new();
                if !plan_steals(shape, &rows, &left, &mut plan) {
                    continue;
                }
                let mut omit = base_omit.clone();
                omit.extend(shape.iter().map(|&(x, y)| Edge::new(a(x), a(y))));
                let Ok(wb) = clique_part(&ws, &omit, Some(tw), seed) else { continue };
                let mut rows = rows.clone();
                let mut out = fixed;
                for (li, &(i, e)) in left.iter().enumerate() {
                    match plan.iter().find(|st| st.left == li) {
                        Some(st) => {
                            let (tri, pend) = kite_parts(&rows[st.row][st.kite]).expect("row blocks are kites");
                            let apex = a(st.row as u32);
                            let rest: Vec<Vertex> = tri.into_iter().filter(|&z| z != apex).collect();
                            rows[st.row][st.kite] = Block::kite(rest[0], rest[1], apex, a(st.other));
                            out.push(Block::kite(a(i), e.other(st.at), st.at, pend.other(st.at)));
                        }
                        None => out.push(Block::triangle(e.0, e.1, a(i))),
                    }
                }
                out.extend(rows.into_iter().flatten());
                out.extend(wb);
                return Ok(out);
            }
        }
    }
    Err(construction("build_c2", format!("no layout found for v = {v}, w = {w}")))
}
