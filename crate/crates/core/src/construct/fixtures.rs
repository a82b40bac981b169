//! Small decompositions stored as text, in the usual block notation.
//!
//! A fixture file has `key: value` header lines (`name`, `instance n v c'`,
//! `expect cost .. triangles .. wavecost ..`, and any number of `include`s)
//! followed by blocks. `(x,y,z)` is a triangle, `(x,y,z,u)` a 4-cycle,
//! `(x,y,z;u)` a kite, `{x,y}` an edge, `{x,y,z}` a triangle and `[x,..]` a
//! path. `a_j` names the `j`-th vertex outside `V`. A line starting with
//! `for i in A..=B mod M:` repeats its blocks for each `i`, reading entries
//! such as `5+i` modulo `M`.
//!
//! Loading is literal. Repeated blocks are dropped and empty entries
//! skipped, and each such repair is recorded in [`Fixture::notes`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Block, Decomposition, Instance, Vertex};

const FILES: &[&str] = &[
    include_str!("../../data/fixtures/ex1.txt"),
    include_str!("../../data/fixtures/ex2.txt"),
    include_str!("../../data/fixtures/ex3.txt"),
    include_str!("../../data/fixtures/on_4_4.txt"),
    include_str!("../../data/fixtures/a_mon_3.txt"),
    include_str!("../../data/fixtures/a_mon_4.txt"),
    include_str!("../../data/fixtures/a_mon_5.txt"),
    include_str!("../../data/fixtures/a_mon_6.txt"),
    include_str!("../../data/fixtures/b_mon_1.txt"),
    include_str!("../../data/fixtures/b_mon_2.txt"),
    include_str!("../../data/fixtures/b_mon_3.txt"),
    include_str!("../../data/fixtures/b_mon_4.txt"),
    include_str!("../../data/fixtures/c_on_8.txt"),
    include_str!("../../data/fixtures/c_mon_7_4.txt"),
    include_str!("../../data/fixtures/d_mon_13_3.txt"),
    include_str!("../../data/fixtures/d_mon_15_4.txt"),
    include_str!("../../data/fixtures/d_mon_17_3.txt"),
    include_str!("../../data/fixtures/d_mon_17_4.txt"),
    include_str!("../../data/fixtures/o3_mon_7_2.txt"),
    include_str!("../../data/fixtures/o4_mon_5_1.txt"),
    include_str!("../../data/fixtures/o4_mon_11_2.txt"),
    include_str!("../../data/fixtures/o5_mon_5_2.txt"),
    include_str!("../../data/fixtures/o5_mon_11_3.txt"),
    include_str!("../../data/fixtures/o6_mon_3_2.txt"),
    include_str!("../../data/fixtures/o6_mon_9_3.txt"),
];

/// Cost, triangle count and wavelength count a fixture is expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureMeta {
    pub cost: usize,
    pub triangles: usize,
    pub wavecost: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub decomposition: Decomposition,
    pub expected: FixtureMeta,
    /// Repairs made while loading the printed list.
    pub notes: Vec<String>,
}

impl Fixture {
    /// Measured `(cost, triangles, wavecost)`.
    pub fn measured(&self) -> FixtureMeta {
        let d = &self.decomposition;
        FixtureMeta { cost: d.drop_cost(), triangles: d.count_triangles(), wavecost: d.wavecost() }
    }
}

fn header_name(text: &str) -> Option<&str> {
    text.lines().find_map(|l| l.trim().strip_prefix("name:")).map(str::trim)
}

pub fn fixture_names() -> Vec<&'static str> {
    FILES.iter().filter_map(|t| header_name(t)).collect()
}

/// The named fixture, canonicalized.
pub fn fixture(name: &str) -> Result<Fixture> {
    let text = FILES.iter().find(|t| header_name(t) == Some(name)).ok_or_else(|| Error::UnknownFixture(name.into()))?;
    let mut f = parse_fixture(text)?;
    f.decomposition = f.decomposition.canonical();
    Ok(f)
}

struct Family {
    lo: i64,
    hi: i64,
    modulus: i64,
}

fn parse_family(line: &str) -> Result<Option<(Family, &str)>> {
    let Some(rest) = line.strip_prefix("for i in ") else {
        return Ok(None);
    };
    let bad = || Error::Parse(format!("bad family header in {line:?}"));
    let (head, body) = rest.split_once(':').ok_or_else(bad)?;
    let (range, modulus) = head.split_once(" mod ").ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..=").ok_or_else(bad)?;
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    Ok(Some((Family { lo: num(lo)?, hi: num(hi)?, modulus: num(modulus)? }, body)))
}

struct Ctx<'a> {
    v: u32,
    i: Option<(i64, i64)>,
    notes: &'a mut Vec<String>,
}

fn term(tok: &str, ctx: &Ctx) -> Result<Vertex> {
    let bad = || Error::Parse(format!("bad entry {tok:?}"));
    if let Some(j) = tok.strip_prefix("a_") {
        return Ok(ctx.v + j.parse::<u32>().map_err(|_| bad())?);
    }
    let mut total: i64 = 0;
    let mut uses_i = false;
    for part in tok.split('+') {
        let part = part.trim();
        if part == "i" {
            total += ctx.i.ok_or_else(bad)?.0;
            uses_i = true;
        } else {
            total += part.parse::<i64>().map_err(|_| bad())?;
        }
    }
    if uses_i {
        total = total.rem_euclid(ctx.i.unwrap().1);
    }
    u32::try_from(total).map_err(|_| bad())
}

fn parse_blocks(body: &str, ctx: &mut Ctx, out: &mut Vec<Block>) -> Result<()> {
    let mut chars = body.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        let close = match c {
            '(' => ')',
            '{' => '}',
            '[' => ']',
            c if c.is_whitespace() || c == ',' => continue,
            _ => return Err(Error::Parse(format!("unexpected {c:?} in {body:?}"))),
        };
        let end = body[start..].find(close).ok_or_else(|| Error::Parse(format!("unclosed block in {body:?}")))? + start;
        let inner = &body[start + 1..end];
        while chars.peek().is_some_and(|&(k, _)| k <= end) {
            chars.next();
        }
        let (main, pendant) = match inner.split_once(';') {
            Some((m, p)) => (m, Some(p.trim())),
            None => (inner, None),
        };
        let mut vs = Vec::new();
        for tok in main.split(',').map(str::trim) {
            if tok.is_empty() {
                ctx.notes.push(format!("empty entry skipped in {}", &body[start..=end]));
                continue;
            }
            vs.push(term(tok, ctx)?);
        }
        let p = pendant.map(|t| term(t, ctx)).transpose()?;
        let text = &body[start..=end];
        let block = match (close, vs.as_slice(), p) {
            (')', &[x, y, z], None) | ('}', &[x, y, z], None) => Block::triangle(x, y, z),
            (')', &[x, y, z, u], None) => Block::cycle4(x, y, z, u),
            (')', &[x, y, z], Some(u)) => Block::kite(x, y, z, u),
            ('}', &[x, y], None) => Block::edge(x, y),
            (']', path, None) if path.len() >= 2 => Block::path(path),
            _ => return Err(Error::Parse(format!("cannot read block {text}"))),
        };
        if block.vertices().len() != vs.len() + usize::from(p.is_some()) {
            return Err(Error::Parse(format!("repeated vertex in block {text}")));
        }
        out.push(block);
    }
    Ok(())
}

/// Parses fixture text. Blocks are kept one per wavelength, in file order.
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut name = None;
    let mut instance = None;
    let mut expected = None;
    let mut notes = Vec::new();
    let mut blocks = Vec::new();
    let mut loose = String::new();
    let mut includes = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("instance:") {
            let nums: Vec<u32> = rest.split_whitespace().map(|s| s.parse()).collect::<std::result::Result<_, _>>().map_err(|_| Error::Parse(format!("bad instance line {line:?}")))?;
            let [n, v, c] = nums[..] else {
                return Err(Error::Parse(format!("bad instance line {line:?}")));
            };
            instance = Some(Instance::new(n, v, c)?);
        } else if let Some(rest) = line.strip_prefix("expect:") {
            let words: Vec<&str> = rest.split_whitespace().collect();
            let get = |k: &str| -> Result<usize> {
                let at = words.iter().position(|w| *w == k).ok_or_else(|| Error::Parse(format!("expect line lacks {k}")))?;
                words.get(at + 1).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse(format!("bad {k} in expect line")))
            };
            expected = Some(FixtureMeta { cost: get("cost")?, triangles: get("triangles")?, wavecost: get("wavecost")? });
        } else if let Some(rest) = line.strip_prefix("include:") {
            includes.push(rest.trim().to_string());
        } else {
            loose.push_str(line);
            loose.push('\n');
        }
    }
    let inst = instance.ok_or_else(|| Error::Parse("missing instance line".into()))?;
    let mut loose_lines = String::new();
    for line in loose.lines() {
        match parse_family(line)? {
            Some((fam, body)) => {
                for i in fam.lo..=fam.hi {
                    let mut ctx = Ctx { v: inst.v, i: Some((i, fam.modulus)), notes: &mut notes };
                    parse_blocks(body, &mut ctx, &mut blocks)?;
                }
            }
            None => {
                loose_lines.push_str(line);
                loose_lines.push(' ');
            }
        }
    }
    parse_blocks(&loose_lines, &mut Ctx { v: inst.v, i: None, notes: &mut notes }, &mut blocks)?;
    for inc in includes {
        let sub = fixture(&inc)?;
        let sv = sub.decomposition.instance.v;
        if sv > inst.v {
            return Err(Error::Parse(format!("included {inc} has a larger V")));
        }
        blocks.extend(sub.decomposition.blocks().map(|b| b.map(|x| if x < sv { x } else { inst.v + (x - sv) })));
    }
    let mut seen = BTreeSet::new();
    let mut unique = Vec::new();
    for b in blocks {
        if seen.insert(b.canonical()) {
            unique.push(b);
        } else {
            let edges: Vec<String> = b.edges.iter().map(ToString::to_string).collect();
            notes.push(format!("repeated block {} dropped", edges.join(" ")));
        }
    }
    Ok(Fixture {
        name: name.ok_or_else(|| Error::Parse("missing name line".into()))?,
        decomposition: Decomposition::from_blocks(inst, unique),
        expected: expected.ok_or_else(|| Error::Parse("missing expect line".into()))?,
        notes,
    })
}
