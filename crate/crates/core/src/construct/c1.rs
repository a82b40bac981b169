//! Ratio-4 groomings in which each wavelength carries at most one edge on `V`.

use super::{fixtures::fixture, BuildRequest};
use crate::design::{near_one_factorization, one_factorization, NearPrescription};
use crate::error::{Error, Result};
use crate::model::{Block, Decomposition, Edge, Vertex};

/// Builds an optimal `N(n,v;4,1)`. Every output wavelength holds one block.
/// For `v > w` each block has exactly one edge on `V`, so the result is also
/// wavelength-minimal; for `v <= w` the class-gadget layout is used in both
/// modes and is wavelength-minimal as well.
pub fn build_c1(req: &BuildRequest) -> Result<Decomposition> {
    let inst = req.instance;
    if inst.cprime != 1 {
        return Err(Error::Contract(format!("build_c1 called with C' = {}", inst.cprime)));
    }
    let (n, v, w) = (inst.n, inst.v, inst.w());
    if n <= 4 {
        return Err(Error::InvalidInstance(format!("n = {n} is too small")));
    }
    let blocks = if v <= w {
        class_layout(n)?
    } else if v == w + 1 {
        adjacent_layout(v)
    } else if v % 2 == 0 {
        even_layout(v, w)?
    } else {
        odd_layout(v, w)?
    };
    Ok(Decomposition::from_blocks(inst, blocks))
}

/// Splits `0..m` into classes of four plus one of size `last` (if nonzero).
fn classes(m: u32, last: u32) -> Vec<Vec<Vertex>> {
    let fours = (m - last) / 4;
    let mut out: Vec<Vec<Vertex>> = (0..fours).map(|s| (4 * s..4 * s + 4).collect()).collect();
    if last > 0 {
        out.push((4 * fours..m).collect());
    }
    out
}

/// The `v' = floor(n/2)` layout: classes of `V'` carry stored gadgets and
/// every edge `{x,y}` between classes becomes the 4-cycle `(x,y,a_x,a_y)`.
/// Valid for every `v <= v'` on the same labels.
pub(crate) fn class_layout(n: u32) -> Result<Vec<Block>> {
    let vp = n / 2;
    let even = n.is_multiple_of(2);
    let last = match (even, vp % 4) {
        (true, 0) => 0,
        (true, 1) => 5,
        (true, 2) => 6,
        (true, _) => 3,
        (false, t) => t,
    };
    let cls = classes(vp, last);
    let mut out = Vec::new();
    for class in &cls {
        let l = class.len() as u32;
        let name = if even { format!("A.MON({l}+{l},{l};4,1)") } else { format!("B.MON({l}+{},{l};4,1)", l + 1) };
        let gadget = fixture(&name)?;
        let map = |x: Vertex| match x {
            x if x < l => class[x as usize],
            x if x < 2 * l => vp + class[(x - l) as usize],
            _ => n - 1,
        };
        out.extend(gadget.decomposition.blocks().map(|b| b.map(map)));
    }
    for (i, cx) in cls.iter().enumerate() {
        for cy in &cls[i + 1..] {
            for &x in cx {
                for &y in cy {
                    out.push(Block::cycle4(x, y, vp + x, vp + y));
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn adjacent_layout(v: u32) -> Vec<Block> {
    let a = |j: u32| v + j;
    let mut out: Vec<Block> = (0..v - 1).map(|i| Block::triangle(i, i + 1, a(i))).collect();
    for i in 0..v - 1 {
        for j in i + 1..v - 1 {
            out.push(Block::cycle4(i, j + 1, a(i), a(j)));
        }
    }
    out
}

/// Pendant `{a_i, a_{i+j mod w}}` for the `j`-th triangle of row `i`, if any.
fn row_pendant(i: u32, j: u32, w: u32, skip_first: bool) -> Option<Vertex> {
    if j == 0 || j > w / 2 || (w.is_multiple_of(2) && j == w / 2 && i >= w / 2) || (skip_first && j == 1) {
        return None;
    }
    Some((i + j) % w)
}

fn even_layout(v: u32, w: u32) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let fs = one_factorization(v)?;
    let mut out = Vec::new();
    for (i, f) in fs.factors.iter().enumerate() {
        let i = i as u32;
        for (j, e) in f.iter().enumerate() {
            if i >= w {
                out.push(Block::edge(e.0, e.1));
                continue;
            }
            match row_pendant(i, j as u32 + 1, w, false) {
                Some(k) => out.push(Block::kite(e.0, e.1, a(i), a(k))),
                None => out.push(Block::triangle(e.0, e.1, a(i))),
            }
        }
    }
    Ok(out)
}

fn odd_layout(v: u32, w: u32) -> Result<Vec<Block>> {
    let a = |j: u32| v + j;
    let fs = near_one_factorization(v, NearPrescription::PairedLast)?;
    let mut out = Vec::new();
    let pairs = w / 2;
    for h in 0..pairs {
        out.push(Block::cycle4(2 * h, 2 * h + 1, a(2 * h + 1), a(2 * h)));
    }
    for (i, f) in fs.factors.iter().enumerate().take(v as usize - 1) {
        let i = i as u32;
        if i >= w {
            out.extend(f.iter().map(|e| Block::edge(e.0, e.1)));
            continue;
        }
        let mut f: Vec<Edge> = f.clone();
        if i == 0 && w >= 2 {
            let at = f.iter().position(|e| e.contains(w - 1)).expect("near factor 0 covers w-1");
            f.swap(0, at);
        }
        for (j, e) in f.iter().enumerate() {
            let j = j as u32 + 1;
            if i == 0 && j == 1 && w % 2 == 1 && w >= 3 {
                out.push(Block::kite(a(0), e.other(w - 1), w - 1, a(w - 1)));
                continue;
            }
            match row_pendant(i, j, w, i.is_multiple_of(2) && i / 2 < pairs) {
                Some(k) => out.push(Block::kite(e.0, e.1, a(i), a(k))),
                None => out.push(Block::triangle(e.0, e.1, a(i))),
            }
        }
    }
    let last = &fs.factors[v as usize - 1];
    for h in pairs..(v - 1) / 2 {
        let e = Edge::new(2 * h, 2 * h + 1);
        debug_assert!(last.contains(&e));
        if w == 1 && h == 0 {
            out.push(Block::path(&[a(0), 0, 1]));
        } else {
            out.push(Block::edge(e.0, e.1));
        }
    }
    Ok(out)
}
