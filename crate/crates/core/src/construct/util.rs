//! Small helpers shared by the builders.

use std::collections::BTreeSet;

use crate::design::{build_on_n4_with, Mon4Request, SmallSearch};
use crate::error::{construction, Result};
use crate::model::{Block, Edge, Shape, Vertex};

pub(crate) fn clique(vs: &[Vertex]) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push(Edge::new(a, b));
        }
    }
    out
}

/// Triangle vertices and pendant edge of a kite.
pub(crate) fn kite_parts(b: &Block) -> Option<(BTreeSet<Vertex>, Edge)> {
    if b.shape() != Shape::Kite {
        return None;
    }
    let deg = |x: Vertex| b.edges.iter().filter(|e| e.contains(x)).count();
    let leaf = b.vertices().into_iter().find(|&x| deg(x) == 1)?;
    let pendant = *b.edges.iter().find(|e| e.contains(leaf))?;
    let mut tri = b.vertices();
    tri.remove(&leaf);
    Some((tri, pendant))
}

/// Zero-excess partition of the clique on `vs` minus `omit`, with the given
/// triangle count (default: the fewest the edge count allows).
pub(crate) fn clique_part(vs: &[Vertex], omit: &BTreeSet<Edge>, triangles: Option<usize>, seed: u64) -> Result<Vec<Block>> {
    let edges: Vec<Edge> = clique(vs).into_iter().filter(|e| !omit.contains(e)).collect();
    let tri = triangles.unwrap_or(3 * edges.len() % 4);
    if edges.is_empty() {
        return if tri == 0 { Ok(Vec::new()) } else { Err(construction("clique_part", "no edges for a triangle")) };
    }
    if vs.len() <= 9 {
        return SmallSearch::new(tri, seed).run(&edges);
    }
    let local = |x: Vertex| vs.iter().position(|&y| y == x).expect("omitted edge inside the clique") as Vertex;
    let req = Mon4Request {
        triangles: Some(tri),
        omit: omit.iter().map(|e| e.map(local)).collect(),
        seed,
        ..Default::default()
    };
    Ok(build_on_n4_with(vs.len() as u32, &req)?.iter().map(|b| b.map(|x| vs[x as usize])).collect())
}

/// A wavelength-minimal grooming of the clique on `vs` under `req`, whose
/// vertex labels refer to positions in `vs`.
pub(crate) fn clique_groom(vs: &[Vertex], req: &Mon4Request) -> Result<Vec<Block>> {
    Ok(build_on_n4_with(vs.len() as u32, req)?.iter().map(|b| b.map(|x| vs[x as usize])).collect())
}
