//! 1-factorizations and near 1-factorizations, with the relabellings the
//! builders rely on.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::colour::proper_edge_colouring;
use super::SEARCH_ATTEMPTS;
use crate::error::{construction, Error, Result};
use crate::model::{complete_edges, Edge, Vertex};

/// An ordered list of (near) 1-factors of `K_m` minus `removed_subgraph`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSet {
    pub host_order: u32,
    pub factors: Vec<Vec<Edge>>,
    /// `Some(x)` for a near 1-factor missing `x`, `None` for a 1-factor.
    pub missing_vertex: Vec<Option<Vertex>>,
    pub removed_subgraph: Vec<Edge>,
}

impl FactorSet {
    fn from_factors(host_order: u32, factors: Vec<Vec<Edge>>, removed_subgraph: Vec<Edge>) -> Self {
        let missing_vertex = factors
            .iter()
            .map(|f| {
                let covered: BTreeSet<Vertex> = f.iter().flat_map(|e| [e.0, e.1]).collect();
                (covered.len() as u32 + 1 == host_order).then(|| (0..host_order).find(|x| !covered.contains(x)).unwrap())
            })
            .collect();
        FactorSet { host_order, factors, missing_vertex, removed_subgraph }
    }

    /// Checks that every factor is a matching of the right size, that the
    /// recorded missing vertices are right, and that the factors partition
    /// `E(K_m)` minus the removed subgraph.
    pub fn check(&self) -> Result<()> {
        let m = self.host_order;
        if self.missing_vertex.len() != self.factors.len() {
            return Err(Error::Contract("missing-vertex list does not match factor list".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, f) in self.factors.iter().enumerate() {
            let mut covered = BTreeSet::new();
            for e in f {
                if e.0 == e.1 || e.1 >= m {
                    return Err(Error::Contract(format!("factor {i} has bad edge {e}")));
                }
                if !covered.insert(e.0) || !covered.insert(e.1) {
                    return Err(Error::Contract(format!("factor {i} is not a matching")));
                }
                if !seen.insert(*e) {
                    return Err(Error::Contract(format!("edge {e} lies in two factors")));
                }
            }
            match self.missing_vertex[i] {
                None if covered.len() as u32 != m => {
                    return Err(Error::Contract(format!("factor {i} is not a 1-factor")));
                }
                Some(x) if covered.len() as u32 + 1 != m || covered.contains(&x) => {
                    return Err(Error::Contract(format!("factor {i} does not miss exactly vertex {x}")));
                }
                _ => {}
            }
        }
        let removed: BTreeSet<Edge> = self.removed_subgraph.iter().copied().collect();
        let want: BTreeSet<Edge> = complete_edges(m).into_iter().filter(|e| !removed.contains(e)).collect();
        if want != seen {
            return Err(Error::Contract("factors do not cover the host graph exactly".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn relabel(factors: &[Vec<Edge>], phi: &[Vertex]) -> Vec<Vec<Edge>> {
    factors.iter().map(|f| f.iter().map(|e| e.map(|x| phi[x as usize])).collect()).collect()
}

/// The round-robin 1-factorization of `K_m`: with `∞ = m-1` and arithmetic
/// mod `m-1`, factor `i` is `{i,∞}` plus the pairs `{i-k, i+k}`.
pub fn one_factorization(m: u32) -> Result<FactorSet> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidInstance(format!("1-factorization needs even order >= 2, got {m}")));
    }
    let q = m - 1;
    let factors = (0..q)
        .map(|i| {
            let mut f = vec![Edge::new(i, m - 1)];
            f.extend((1..=q / 2).map(|k| Edge::new((i + q - k) % q, (i + k) % q)));
            f
        })
        .collect();
    let fs = FactorSet::from_factors(m, factors, Vec::new());
    fs.check()?;
    Ok(fs)
}

/// A 1-factorization of `K_m` whose first two factors are
/// `{{2h,2h+1}}` and `{{2h+1,2h+2 mod m}}`, so their union is the
/// Hamilton cycle `(0,1,...,m-1)`.
pub fn hamiltonian_one_factorization(m: u32) -> Result<FactorSet> {
    let base = one_factorization(m)?;
    if m == 2 {
        return Ok(base);
    }
    // Consecutive round-robin factors always form a Hamilton cycle.
    let (f0, f1) = (&base.factors[0], &base.factors[1]);
    let partner = |f: &[Edge], x: Vertex| f.iter().find(|e| e.contains(x)).unwrap().other(x);
    let mut cycle = vec![0];
    let mut use_f0 = true;
    while cycle.len() < m as usize {
        let x = *cycle.last().unwrap();
        cycle.push(partner(if use_f0 { f0 } else { f1 }, x));
        use_f0 = !use_f0;
    }
    let mut phi = vec![0; m as usize];
    for (k, &x) in cycle.iter().enumerate() {
        phi[x as usize] = k as Vertex;
    }
    let fs = FactorSet::from_factors(m, relabel(&base.factors, &phi), Vec::new());
    fs.check()?;
    Ok(fs)
}

/// Constraints a near 1-factorization of `K_m`, `m = 2t+1`, can be asked to meet.
/// In both prescribed forms the factors are indexed so that factor `i` misses vertex `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NearPrescription {
    /// Rotational factors, factor `i` missing `i`.
    Rotational,
    /// Factor `m-1` is `{{2h,2h+1} : h < t}`.
    PairedLast,
    /// Factor `t` is `{{k,t+k+1} : k < t}`.
    CrossedMiddle,
}

pub fn near_one_factorization(m: u32, prescription: NearPrescription) -> Result<FactorSet> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidInstance(format!("near 1-factorization needs odd order >= 3, got {m}")));
    }
    let t = (m - 1) / 2;
    let rotational: Vec<Vec<Edge>> =
        (0..m).map(|i| (1..=t).map(|k| Edge::new((i + m - k) % m, (i + k) % m)).collect()).collect();
    // Rotational factor m-1 is {{m-1-k, k-1} : 1 <= k <= t}.
    let mut phi: Vec<Vertex> = (0..m).collect();
    match prescription {
        NearPrescription::Rotational => {}
        NearPrescription::PairedLast => {
            for k in 1..=t {
                phi[(m - 1 - k) as usize] = 2 * (k - 1);
                phi[(k - 1) as usize] = 2 * (k - 1) + 1;
            }
            phi[(m - 1) as usize] = m - 1;
        }
        NearPrescription::CrossedMiddle => {
            for k in 1..=t {
                phi[(k - 1) as usize] = k - 1;
                phi[(m - 1 - k) as usize] = t + k;
            }
            phi[(m - 1) as usize] = t;
        }
    }
    let mut factors = vec![Vec::new(); m as usize];
    for (i, f) in rotational.iter().enumerate() {
        factors[phi[i] as usize] = f.iter().map(|e| e.map(|x| phi[x as usize])).collect();
    }
    let fs = FactorSet::from_factors(m, factors, Vec::new());
    fs.check()?;
    Ok(fs)
}

fn components(order: u32, edges: &[Edge]) -> Vec<BTreeSet<Vertex>> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.0).or_default().push(e.1);
        adj.entry(e.1).or_default().push(e.0);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in 0..order {
        if seen.contains(&s) || !adj.contains_key(&s) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                comp.insert(x);
                stack.extend(adj[&x].iter().copied());
            }
        }
        out.push(comp);
    }
    out
}

/// The graph removed from `K_v` before factorizing: disjoint `K_4`s on
/// `{4i,...,4i+3}`, and when `v ≡ 2 (mod 4)` a `K_{3,3}` on the last six vertices
/// with parts `{v-6,v-5,v-4}` and `{v-3,v-2,v-1}`.
pub fn removed_k4_graph(v: u32) -> Result<Vec<Edge>> {
    if v.is_multiple_of(4) && v >= 4 || v % 4 == 2 && v >= 10 {
        let k4s = if v.is_multiple_of(4) { v / 4 } else { (v - 6) / 4 };
        let mut r = Vec::new();
        for i in 0..k4s {
            for a in 0..4 {
                for b in a + 1..4 {
                    r.push(Edge::new(4 * i + a, 4 * i + b));
                }
            }
        }
        if v % 4 == 2 {
            for a in v - 6..v - 3 {
                for b in v - 3..v {
                    r.push(Edge::new(a, b));
                }
            }
        }
        Ok(r)
    } else {
        Err(Error::InvalidInstance(format!("no K4 / K3,3 removal pattern for v = {v}")))
    }
}

fn check_removed(v: u32, removed: &[Edge]) -> Result<()> {
    let bad = || Error::InvalidInstance("removed graph must be disjoint K4s, plus one K3,3 when v ≡ 2 (mod 4)".into());
    let set: BTreeSet<Edge> = removed.iter().copied().collect();
    if set.len() != removed.len() || removed.iter().any(|e| e.1 >= v || e.0 == e.1) {
        return Err(bad());
    }
    let comps = components(v, removed);
    if comps.iter().map(|c| c.len()).sum::<usize>() != v as usize {
        return Err(bad());
    }
    let mut k33 = 0;
    for c in &comps {
        let cv: Vec<Vertex> = c.iter().copied().collect();
        let inside = removed.iter().filter(|e| c.contains(&e.0)).count();
        match (cv.len(), inside) {
            (4, 6) => {}
            (6, 9) => {
                let deg3 = cv.iter().all(|&x| removed.iter().filter(|e| e.contains(x)).count() == 3);
                let triangle_free = !removed.iter().any(|e| {
                    c.contains(&e.0)
                        && cv.iter().any(|&z| set.contains(&Edge::new(e.0, z)) && set.contains(&Edge::new(e.1, z)))
                });
                if !deg3 || !triangle_free {
                    return Err(bad());
                }
                k33 += 1;
            }
            _ => return Err(bad()),
        }
    }
    if k33 != usize::from(v % 4 == 2) {
        return Err(bad());
    }
    Ok(())
}

/// A 1-factorization of `K_v` minus `removed` (disjoint `K_4`s, plus one
/// `K_{3,3}` when `v ≡ 2 (mod 4)`). The complement is `(v-4)`-regular, so
/// this yields `v-4` factors.
pub fn one_factorization_avoiding(v: u32, removed: &[Edge], seed: u64) -> Result<FactorSet> {
    check_removed(v, removed)?;
    let set: BTreeSet<Edge> = removed.iter().copied().collect();
    let host: Vec<Edge> = complete_edges(v).into_iter().filter(|e| !set.contains(e)).collect();
    let k = (v - 4) as usize;
    let factors = colour_classes(v, &host, k, seed, "one_factorization_avoiding")?;
    let fs = FactorSet::from_factors(v, factors, removed.to_vec());
    fs.check()?;
    Ok(fs)
}

fn colour_classes(order: u32, host: &[Edge], k: usize, seed: u64, what: &'static str) -> Result<Vec<Vec<Edge>>> {
    for attempt in 0..SEARCH_ATTEMPTS {
        if let Some(col) = proper_edge_colouring(order as usize, host, k, seed.wrapping_add(attempt)) {
            let mut classes = vec![Vec::new(); k];
            for (e, c) in host.iter().zip(col) {
                classes[c].push(*e);
            }
            return Ok(classes);
        }
    }
    Err(construction(what, format!("no proper {k}-edge-colouring found on {order} vertices")))
}

/// A near 1-factorization of `K_v` minus the `t`-cycle `(0,1,...,t-1)`, `v = 2t+1`,
/// `t >= 3`. There are `2t` factors, ordered so that factors `2i` and `2i+1`
/// both miss vertex `i`.
pub fn near_one_factorization_minus_cycle(v: u32, seed: u64) -> Result<FactorSet> {
    if v.is_multiple_of(2) || v < 7 {
        return Err(Error::InvalidInstance(format!("needs odd v = 2t+1 with t >= 3, got v = {v}")));
    }
    let t = (v - 1) / 2;
    let cycle: Vec<Edge> = (0..t).map(|i| Edge::new(i, (i + 1) % t)).collect();
    let set: BTreeSet<Edge> = cycle.iter().copied().collect();
    let host: Vec<Edge> = complete_edges(v).into_iter().filter(|e| !set.contains(e)).collect();
    let classes = colour_classes(v, &host, 2 * t as usize, seed, "near_one_factorization_minus_cycle")?;
    let mut fs = FactorSet::from_factors(v, classes, cycle);
    let mut idx: Vec<usize> = (0..fs.factors.len()).collect();
    idx.sort_by_key(|&i| fs.missing_vertex[i]);
    fs.factors = idx.iter().map(|&i| fs.factors[i].clone()).collect();
    fs.missing_vertex = idx.iter().map(|&i| fs.missing_vertex[i]).collect();
    fs.check()?;
    for (i, m) in fs.missing_vertex.iter().enumerate() {
        if *m != Some(i as Vertex / 2) {
            return Err(construction("near_one_factorization_minus_cycle", "missing vertices are not paired"));
        }
    }
    Ok(fs)
}
