//! Headsets: one head per triple, each point heading `⌊r/3⌋` or `⌈r/3⌉`
//! triples where `r` is its replication number.
//!
//! Found as a flow from triples to points. A first pass caps every point at
//! `⌊r/3⌋` and saturates those caps; a second pass raises the caps to
//! `⌈r/3⌉` and keeps augmenting. Augmenting paths never lower the flow into
//! a point, so the floors survive the second pass.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::triple::TripleSystem;
use crate::error::{construction, Error, Result};
use crate::model::Vertex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Headset {
    /// `heads[k]` is the head of triple `k`.
    pub heads: Vec<Vertex>,
    /// How many triples each point heads.
    pub occurrences: Vec<usize>,
}

impl Headset {
    pub fn check(&self, ts: &TripleSystem) -> Result<()> {
        if self.heads.len() != ts.triples.len() {
            return Err(Error::Contract("one head per triple is required".into()));
        }
        let mut occ = vec![0usize; ts.points as usize];
        for (h, t) in self.heads.iter().zip(&ts.triples) {
            if !t.contains(h) {
                return Err(Error::Contract(format!("head {h} not in triple {t:?}")));
            }
            occ[*h as usize] += 1;
        }
        if occ != self.occurrences {
            return Err(Error::Contract("occurrence counts are stale".into()));
        }
        for (i, (&o, r)) in occ.iter().zip(ts.replication()).enumerate() {
            if o < r / 3 || o > r.div_ceil(3) {
                return Err(Error::Contract(format!("point {i} heads {o} of its {r} triples")));
            }
        }
        Ok(())
    }
}

struct Flow {
    cap: Vec<Vec<i64>>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { cap: vec![vec![0; n]; n], adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, a: usize, b: usize, c: i64) {
        if self.cap[a][b] == 0 && self.cap[b][a] == 0 {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
        self.cap[a][b] += c;
    }

    fn augment(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; self.adj.len()];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if prev[y] == usize::MAX && self.cap[x][y] > 0 {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return total;
            }
            let mut y = t;
            while y != s {
                let x = prev[y];
                self.cap[x][y] -= 1;
                self.cap[y][x] += 1;
                y = x;
            }
            total += 1;
        }
    }
}

/// One head per triple with point `i` heading exactly `caps[i]` triples.
/// Unlike [`headset`], the counts need not sit at `⌊r/3⌋` or `⌈r/3⌉`.
pub fn headset_exact(ts: &TripleSystem, caps: &[usize]) -> Result<Headset> {
    let b = ts.triples.len();
    let p = ts.points as usize;
    if caps.len() != p || caps.iter().sum::<usize>() != b {
        return Err(Error::Contract("head counts must cover every triple exactly once".into()));
    }
    let (s, t) = (b + p, b + p + 1);
    let mut flow = Flow::new(b + p + 2);
    for (k, tr) in ts.triples.iter().enumerate() {
        flow.add(s, k, 1);
        for &x in tr {
            flow.add(k, b + x as usize, 1);
        }
    }
    for (i, &c) in caps.iter().enumerate() {
        flow.add(b + i, t, c as i64);
    }
    if flow.augment(s, t) != b as i64 {
        return Err(construction("headset", "the requested head counts are not realisable"));
    }
    Ok(read_heads(ts, &flow))
}

fn read_heads(ts: &TripleSystem, flow: &Flow) -> Headset {
    let b = ts.triples.len();
    let mut heads = Vec::with_capacity(b);
    let mut occurrences = vec![0; ts.points as usize];
    for (k, tr) in ts.triples.iter().enumerate() {
        let h = *tr.iter().find(|&&x| flow.cap[b + x as usize][k] > 0).expect("saturated triple has a head");
        heads.push(h);
        occurrences[h as usize] += 1;
    }
    Headset { heads, occurrences }
}

pub fn headset(ts: &TripleSystem) -> Result<Headset> {
    let b = ts.triples.len();
    let p = ts.points as usize;
    let (s, t) = (b + p, b + p + 1);
    let mut flow = Flow::new(b + p + 2);
    for (k, tr) in ts.triples.iter().enumerate() {
        flow.add(s, k, 1);
        for &x in tr {
            flow.add(k, b + x as usize, 1);
        }
    }
    let r = ts.replication();
    for (i, &ri) in r.iter().enumerate() {
        flow.add(b + i, t, (ri / 3) as i64);
    }
    let mut total = flow.augment(s, t);
    if total != r.iter().map(|x| (x / 3) as i64).sum::<i64>() {
        return Err(construction("headset", "floors of r/3 cannot all be met"));
    }
    for (i, &ri) in r.iter().enumerate() {
        flow.add(b + i, t, (ri.div_ceil(3) - ri / 3) as i64);
    }
    total += flow.augment(s, t);
    if total != b as i64 {
        return Err(construction("headset", "some triple received no head"));
    }
    let hs = read_heads(ts, &flow);
    hs.check(ts)?;
    Ok(hs)
}
