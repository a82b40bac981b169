//! Proper edge colouring with a fixed palette, found by a random walk over
//! partial colourings: colour an uncoloured edge with a colour free at one
//! end and uncolour whatever clashes at the other end, or flip a Kempe chain
//! to free a colour at both ends. A stuck walk restarts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Edge;

/// Colours `edges` (on vertices `0..order`) with colours `0..k` so that no two
/// edges sharing a vertex get the same colour. Returns `None` when the walk
/// does not converge within its step budget.
pub fn proper_edge_colouring(order: usize, edges: &[Edge], k: usize, seed: u64) -> Option<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = edges.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let mut deg = vec![0usize; order];
    for e in edges {
        deg[e.0 as usize] += 1;
        deg[e.1 as usize] += 1;
    }
    if deg.iter().any(|&d| d > k) {
        return None;
    }
    let budget = 100 * m * k.max(1) + 10_000;
    (0..RESTARTS).find_map(|_| walk(order, edges, k, budget, &mut rng))
}

const RESTARTS: usize = 16;

fn walk(order: usize, edges: &[Edge], k: usize, budget: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let m = edges.len();
    let mut colour: Vec<Option<usize>> = vec![None; m];
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; k]; order];
    let mut order_idx: Vec<usize> = (0..m).collect();
    order_idx.shuffle(rng);
    let mut pending = Vec::new();
    for &i in &order_idx {
        let (u, v) = (edges[i].0 as usize, edges[i].1 as usize);
        let common: Vec<usize> = (0..k).filter(|&c| at[u][c].is_none() && at[v][c].is_none()).collect();
        if let Some(&c) = common.choose(rng) {
            colour[i] = Some(c);
            at[u][c] = Some(i);
            at[v][c] = Some(i);
        } else {
            pending.push(i);
        }
    }
    let mut steps = 0;
    while let Some(pos) = (!pending.is_empty()).then(|| rng.gen_range(0..pending.len())) {
        steps += 1;
        if steps > budget {
            return None;
        }
        let i = pending.swap_remove(pos);
        let (mut u, mut v) = (edges[i].0 as usize, edges[i].1 as usize);
        let common: Vec<usize> = (0..k).filter(|&c| at[u][c].is_none() && at[v][c].is_none()).collect();
        if let Some(&c) = common.choose(rng) {
            colour[i] = Some(c);
            at[u][c] = Some(i);
            at[v][c] = Some(i);
            continue;
        }
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut u, &mut v);
        }
        if rng.gen_bool(0.5) {
            let alpha = *(0..k).filter(|&c| at[u][c].is_none()).collect::<Vec<_>>().choose(rng)?;
            let beta = *(0..k).filter(|&c| at[v][c].is_none()).collect::<Vec<_>>().choose(rng)?;
            swap_chain(edges, &mut colour, &mut at, v, alpha, beta);
            if at[u][alpha].is_none() && at[v][alpha].is_none() {
                colour[i] = Some(alpha);
                at[u][alpha] = Some(i);
                at[v][alpha] = Some(i);
                continue;
            }
        }
        let free: Vec<usize> = (0..k).filter(|&c| at[u][c].is_none()).collect();
        let c = *free.choose(rng)?;
        let j = at[v][c].expect("colour free at u but not common must be used at v");
        let (ju, jv) = (edges[j].0 as usize, edges[j].1 as usize);
        at[ju][c] = None;
        at[jv][c] = None;
        colour[j] = None;
        pending.push(j);
        colour[i] = Some(c);
        at[u][c] = Some(i);
        at[v][c] = Some(i);
    }
    colour.into_iter().collect()
}

/// Swaps colours `alpha` and `beta` along the alternating path that starts at
/// `start` with its `alpha` edge. `beta` must be free at `start`.
fn swap_chain(edges: &[Edge], colour: &mut [Option<usize>], at: &mut [Vec<Option<usize>>], start: usize, alpha: usize, beta: usize) {
    let mut path = Vec::new();
    let (mut x, mut c) = (start, alpha);
    while let Some(j) = at[x][c] {
        path.push(j);
        x = edges[j].other(x as u32) as usize;
        c = if c == alpha { beta } else { alpha };
    }
    for &j in &path {
        let (p, q) = (edges[j].0 as usize, edges[j].1 as usize);
        let old = colour[j].expect("chain edges are coloured");
        at[p][old] = None;
        at[q][old] = None;
    }
    for &j in &path {
        let (p, q) = (edges[j].0 as usize, edges[j].1 as usize);
        let new = if colour[j] == Some(alpha) { beta } else { alpha };
        colour[j] = Some(new);
        at[p][new] = Some(j);
        at[q][new] = Some(j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::complete_edges;

    #[test]
    fn colours_complete_graph_of_even_order() {
        let edges = complete_edges(10);
        let col = proper_edge_colouring(10, &edges, 9, 3).unwrap();
        for c in 0..9 {
            let class: Vec<_> = edges.iter().zip(&col).filter(|(_, &k)| k == c).collect();
            assert_eq!(class.len(), 5);
        }
    }

    #[test]
    fn tight_palettes_converge_for_many_seeds() {
        for n in [8u32, 12, 16] {
            let edges = complete_edges(n);
            for seed in 0..10 {
                let col = proper_edge_colouring(n as usize, &edges, n as usize - 1, seed).unwrap();
                for (i, a) in edges.iter().enumerate() {
                    for (j, b) in edges.iter().enumerate().skip(i + 1) {
                        assert!(!(a.shares_vertex(b) && col[i] == col[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_palette_below_max_degree() {
        assert!(proper_edge_colouring(4, &complete_edges(4), 2, 0).is_none());
    }
}
