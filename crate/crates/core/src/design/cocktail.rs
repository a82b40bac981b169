//! Partitions of `K_w` minus the matching `{{2h,2h+1}}` into 4-cycles and
//! kites, with exactly two triangles when `w ≡ 3 (mod 4)`.

use crate::error::{Error, Result};
use crate::model::{Block, Vertex};

fn five(a: [Vertex; 5]) -> [Block; 2] {
    [Block::kite(a[2], a[4], a[0], a[3]), Block::kite(a[3], a[4], a[1], a[2])]
}

/// Blocks on vertices `0..w` covering every edge except `{2h,2h+1}` for `h < ⌊w/2⌋`.
pub fn cocktail_partition(w: u32) -> Result<Vec<Block>> {
    if w <= 3 {
        return Err(Error::InvalidInstance(format!("cocktail partition needs w > 3, got {w}")));
    }
    if w.is_multiple_of(2) {
        let mut out = Vec::new();
        for i in 0..w / 2 {
            for j in i + 1..w / 2 {
                out.push(Block::cycle4(2 * i, 2 * j, 2 * i + 1, 2 * j + 1));
            }
        }
        return Ok(out);
    }
    let (mut out, mut k) = if w % 4 == 1 {
        (five([0, 1, 2, 3, 4]).to_vec(), 5)
    } else {
        (
            vec![
                Block::kite(3, 6, 0, 5),
                Block::kite(1, 6, 4, 3),
                Block::kite(5, 6, 2, 1),
                Block::triangle(0, 2, 4),
                Block::triangle(1, 3, 5),
            ],
            7,
        )
    };
    while k < w {
        for h in 0..(k - 1) / 2 {
            out.push(Block::cycle4(2 * h, k, 2 * h + 1, k + 1));
            out.push(Block::cycle4(2 * h, k + 2, 2 * h + 1, k + 3));
        }
        out.extend(five([k - 1, k, k + 1, k + 2, k + 3]));
        k += 4;
    }
    Ok(out)
}
