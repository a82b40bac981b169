//! Vertices, edges, blocks, wavelengths and decompositions of `K_n`, plus the
//! verifier that checks a decomposition against the two grooming ratios.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// First-period grooming ratio. Every wavelength carries at most this many edges.
pub const GROOM_C: u32 = 4;

/// An unordered pair of distinct vertices, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }

    pub fn shares_vertex(&self, e: &Edge) -> bool {
        self.contains(e.0) || self.contains(e.1)
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// All edges of the complete graph on `0..n`, in lexicographic order.
pub fn complete_edges(n: u32) -> Vec<Edge> {
    let mut out = Vec::with_capacity((n as usize * n.saturating_sub(1) as usize) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(Edge(a, b));
        }
    }
    out
}

/// A two-period grooming problem: ring order `n`, second-period subset
/// `V = {0..v-1}`, `W = {v..n-1}`, first ratio 4 and second ratio `cprime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub n: u32,
    pub v: u32,
    pub cprime: u32,
}

impl Instance {
    pub fn new(n: u32, v: u32, cprime: u32) -> Result<Self> {
        let inst = Instance { n, v, cprime };
        inst.check()?;
        Ok(inst)
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInstance("n must be at least 1".into()));
        }
        if self.v > self.n {
            return Err(Error::InvalidInstance(format!("v = {} exceeds n = {}", self.v, self.n)));
        }
        if !(1..=GROOM_C).contains(&self.cprime) {
            return Err(Error::InvalidInstance(format!("C' = {} outside 1..=4", self.cprime)));
        }
        Ok(())
    }

    pub fn w(&self) -> u32 {
        self.n - self.v
    }

    pub fn groom_c(&self) -> u32 {
        GROOM_C
    }

    pub fn in_v(&self, x: Vertex) -> bool {
        x < self.v
    }

    /// Label of the `j`-th vertex outside `V`.
    pub fn a(&self, j: u32) -> Vertex {
        self.v + j
    }

    pub fn is_v_edge(&self, e: &Edge) -> bool {
        self.in_v(e.0) && self.in_v(e.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Shape {
    Edge,
    P3,
    P4,
    Triangle,
    Fourcycle,
    Kite,
    Other,
}

impl Shape {
    /// Triangles, 4-cycles and kites are the only blocks whose vertex count
    /// equals their edge count.
    pub fn is_zero_excess(&self) -> bool {
        matches!(self, Shape::Triangle | Shape::Fourcycle | Shape::Kite)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::Edge => "EDGE",
            Shape::P3 => "P3",
            Shape::P4 => "P4",
            Shape::Triangle => "TRIANGLE",
            Shape::Fourcycle => "FOURCYCLE",
            Shape::Kite => "KITE",
            Shape::Other => "OTHER",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub edges: Vec<Edge>,
}

impl Block {
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        Block { edges: edges.into_iter().collect() }
    }

    pub fn edge(x: Vertex, y: Vertex) -> Self {
        Block { edges: vec![Edge::new(x, y)] }
    }

    /// Triangle `(x,y,z)`.
    pub fn triangle(x: Vertex, y: Vertex, z: Vertex) -> Self {
        Block::from_edges([Edge::new(x, y), Edge::new(x, z), Edge::new(y, z)])
    }

    /// 4-cycle `(x,y,z,u)`.
    pub fn cycle4(x: Vertex, y: Vertex, z: Vertex, u: Vertex) -> Self {
        Block::from_edges([Edge::new(x, y), Edge::new(y, z), Edge::new(z, u), Edge::new(u, x)])
    }

    /// Kite `(x,y,z;u)`: triangle `xyz` with pendant edge `{z,u}`.
    pub fn kite(x: Vertex, y: Vertex, z: Vertex, u: Vertex) -> Self {
        Block::from_edges([Edge::new(x, y), Edge::new(x, z), Edge::new(y, z), Edge::new(z, u)])
    }

    /// Path `[x_1,...,x_k]`.
    pub fn path(vs: &[Vertex]) -> Self {
        Block::from_edges(vs.windows(2).map(|p| Edge::new(p[0], p[1])))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| [e.0, e.1]).collect()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn contains_vertex(&self, x: Vertex) -> bool {
        self.edges.iter().any(|e| e.contains(x))
    }

    pub fn shape(&self) -> Shape {
        shape_of(&self.edges)
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Block {
        Block { edges: self.edges.iter().map(|e| e.map(&f)).collect() }
    }

    pub fn canonical(&self) -> Block {
        let mut edges = self.edges.clone();
        edges.sort();
        Block { edges }
    }

    pub fn v_edges(&self, inst: &Instance) -> usize {
        self.edges.iter().filter(|e| inst.is_v_edge(e)).count()
    }
}

fn shape_of(edges: &[Edge]) -> Shape {
    let m = edges.len();
    let mut uniq: Vec<Edge> = edges.to_vec();
    uniq.sort();
    uniq.dedup();
    if uniq.len() != m || m == 0 || edges.iter().any(|e| e.0 == e.1) {
        return Shape::Other;
    }
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in edges {
        *deg.entry(e.0).or_default() += 1;
        *deg.entry(e.1).or_default() += 1;
    }
    if !connected(edges) {
        return Shape::Other;
    }
    let nv = deg.len();
    let mut degs: Vec<usize> = deg.values().copied().collect();
    degs.sort_unstable();
    match (m, nv) {
        (1, 2) => Shape::Edge,
        (2, 3) => Shape::P3,
        (3, 3) => Shape::Triangle,
        (3, 4) if degs == [1, 1, 2, 2] => Shape::P4,
        (4, 4) if degs == [2, 2, 2, 2] => Shape::Fourcycle,
        (4, 4) if degs == [1, 2, 2, 3] => Shape::Kite,
        _ => Shape::Other,
    }
}

fn connected(edges: &[Edge]) -> bool {
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut stack = vec![edges[0].0];
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        for e in edges.iter().filter(|e| e.contains(x)) {
            let y = e.other(x);
            if !seen.contains(&y) {
                stack.push(y);
            }
        }
    }
    edges.iter().all(|e| seen.contains(&e.0) && seen.contains(&e.1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeClass {
    Neutral,
    Positive,
    Cross,
    WithinW,
}

/// Class of `edge` relative to the block that carries it.
pub fn classify_edge(inst: &Instance, edge: Edge, owning_block: &Block) -> Result<EdgeClass> {
    let edge = Edge::new(edge.0, edge.1);
    if !owning_block.contains_edge(&edge) {
        return Err(Error::Contract(format!("edge {edge} is not in the owning block")));
    }
    Ok(class_in(inst, &edge, owning_block.shape()))
}

fn class_in(inst: &Instance, edge: &Edge, shape: Shape) -> EdgeClass {
    match (inst.in_v(edge.0), inst.in_v(edge.1)) {
        (true, true) if shape.is_zero_excess() => EdgeClass::Neutral,
        (true, true) => EdgeClass::Positive,
        (false, false) => EdgeClass::WithinW,
        _ => EdgeClass::Cross,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wavelength {
    pub blocks: Vec<Block>,
}

impl Wavelength {
    pub fn single(block: Block) -> Self {
        Wavelength { blocks: vec![block] }
    }

    pub fn edge_count(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.blocks.iter().flat_map(|b| b.vertices()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub instance: Instance,
    pub wavelengths: Vec<Wavelength>,
}

impl Decomposition {
    /// One block per wavelength.
    pub fn from_blocks(instance: Instance, blocks: impl IntoIterator<Item = Block>) -> Self {
        Decomposition { instance, wavelengths: blocks.into_iter().map(Wavelength::single).collect() }
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Block> {
        self.wavelengths.iter().flat_map(|w| w.blocks.iter())
    }

    pub fn block_count(&self) -> usize {
        self.blocks().count()
    }

    pub fn wavecost(&self) -> usize {
        self.wavelengths.len()
    }

    pub fn drop_cost(&self) -> usize {
        drop_cost(self)
    }

    pub fn count_triangles(&self) -> usize {
        count_triangles(self)
    }

    pub fn shape_census(&self) -> BTreeMap<Shape, usize> {
        let mut out = BTreeMap::new();
        for b in self.blocks() {
            *out.entry(b.shape()).or_default() += 1;
        }
        out
    }

    /// Same blocks reinterpreted for another instance on the same vertex set.
    pub fn with_instance(mut self, instance: Instance) -> Self {
        self.instance = instance;
        self
    }

    pub fn canonical(&self) -> Decomposition {
        let mut wavelengths: Vec<Wavelength> = self
            .wavelengths
            .iter()
            .map(|w| {
                let mut blocks: Vec<Block> = w.blocks.iter().map(Block::canonical).collect();
                blocks.sort();
                Wavelength { blocks }
            })
            .collect();
        wavelengths.sort();
        Decomposition { instance: self.instance, wavelengths }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecompositionJson::from(&self.canonical())).expect("plain data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&DecompositionJson::from(&self.canonical())).expect("plain data serializes")
    }

    /// Parses the JSON wire format. Structural problems inside blocks are left
    /// for [`verify`] to report; only shape-level JSON errors fail here.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DecompositionJson = serde_json::from_str(s)?;
        Ok(raw.into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub n: u32,
    pub v: u32,
    pub cprime: u32,
    pub wavelengths: Vec<Vec<Vec<[u32; 2]>>>,
}

impl From<&Decomposition> for DecompositionJson {
    fn from(d: &Decomposition) -> Self {
        DecompositionJson {
            n: d.instance.n,
            v: d.instance.v,
            cprime: d.instance.cprime,
            wavelengths: d
                .wavelengths
                .iter()
                .map(|w| w.blocks.iter().map(|b| b.edges.iter().map(|e| [e.0, e.1]).collect()).collect())
                .collect(),
        }
    }
}

impl From<DecompositionJson> for Decomposition {
    fn from(raw: DecompositionJson) -> Self {
        // Raw pairs are kept as given so that loops survive to the verifier.
        let wavelengths = raw
            .wavelengths
            .into_iter()
            .map(|w| Wavelength {
                blocks: w
                    .into_iter()
                    .map(|b| Block { edges: b.into_iter().map(|[x, y]| Edge::new(x, y)).collect() })
                    .collect(),
            })
            .collect();
        Decomposition { instance: Instance { n: raw.n, v: raw.v, cprime: raw.cprime }, wavelengths }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    InvalidInstance,
    EmptyWavelength,
    EmptyBlock,
    Loop,
    VertexOutOfRange,
    DuplicateEdge,
    MissingEdge,
    BlockTooLarge,
    WavelengthOverCapacity,
    SecondPeriodOverCapacity,
    SharedVertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub wavelength: Option<usize>,
    pub block: Option<usize>,
    pub edge: Option<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Location,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub drop_cost: usize,
    pub wavecost: usize,
    pub triangle_count: usize,
    pub neutral_edges: usize,
    pub positive_edges: usize,
    pub cross_edges: usize,
    pub within_w_edges: usize,
}

impl VerificationReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Checks the exact edge partition of `K_n`, the per-block and per-wavelength
/// capacities, and vertex-disjointness of blocks sharing a wavelength. Never
/// fails: every problem becomes a violation and all counters are filled.
pub fn verify(dec: &Decomposition) -> VerificationReport {
    let inst = dec.instance;
    let mut violations = Vec::new();
    let mut push = |kind, wavelength, block, edge: Option<Edge>| {
        violations.push(Violation { kind, location: Location { wavelength, block, edge: edge.map(|e| [e.0, e.1]) } });
    };
    let instance_ok = inst.check().is_ok();
    if !instance_ok {
        push(ViolationKind::InvalidInstance, None, None, None);
    }
    let cap_prime = inst.cprime.min(GROOM_C) as usize;

    let mut seen: BTreeMap<Edge, usize> = BTreeMap::new();
    let (mut neutral, mut positive, mut cross, mut within_w, mut triangles) = (0, 0, 0, 0, 0);

    for (k, wl) in dec.wavelengths.iter().enumerate() {
        if wl.blocks.is_empty() {
            push(ViolationKind::EmptyWavelength, Some(k), None, None);
        }
        let mut wl_edges = 0usize;
        let mut wl_v_edges = 0usize;
        let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut shared = false;
        for (b, block) in wl.blocks.iter().enumerate() {
            if block.is_empty() {
                push(ViolationKind::EmptyBlock, Some(k), Some(b), None);
            }
            if block.len() > GROOM_C as usize {
                push(ViolationKind::BlockTooLarge, Some(k), Some(b), None);
            }
            let shape = block.shape();
            if shape == Shape::Triangle {
                triangles += 1;
            }
            for e in &block.edges {
                if e.0 == e.1 {
                    push(ViolationKind::Loop, Some(k), Some(b), Some(*e));
                    continue;
                }
                if e.1 >= inst.n {
                    push(ViolationKind::VertexOutOfRange, Some(k), Some(b), Some(*e));
                    continue;
                }
                *seen.entry(*e).or_default() += 1;
                wl_edges += 1;
                match class_in(&inst, e, shape) {
                    EdgeClass::Neutral => {
                        neutral += 1;
                        wl_v_edges += 1
                    }
                    EdgeClass::Positive => {
                        positive += 1;
                        wl_v_edges += 1
                    }
                    EdgeClass::Cross => cross += 1,
                    EdgeClass::WithinW => within_w += 1,
                }
            }
            for x in block.vertices() {
                if let Some(&other) = owner.get(&x) {
                    if other != b {
                        shared = true;
                    }
                } else {
                    owner.insert(x, b);
                }
            }
        }
        if wl_edges > GROOM_C as usize {
            push(ViolationKind::WavelengthOverCapacity, Some(k), None, None);
        }
        if wl_v_edges > cap_prime {
            push(ViolationKind::SecondPeriodOverCapacity, Some(k), None, None);
        }
        if shared {
            push(ViolationKind::SharedVertex, Some(k), None, None);
        }
    }
    for (e, &count) in &seen {
        if count > 1 {
            push(ViolationKind::DuplicateEdge, None, None, Some(*e));
        }
    }
    if instance_ok {
        for e in complete_edges(inst.n) {
            if !seen.contains_key(&e) {
                push(ViolationKind::MissingEdge, None, None, Some(e));
            }
        }
    }

    VerificationReport {
        valid: violations.is_empty(),
        violations,
        drop_cost: drop_cost(dec),
        wavecost: dec.wavecost(),
        triangle_count: triangles,
        neutral_edges: neutral,
        positive_edges: positive,
        cross_edges: cross,
        within_w_edges: within_w,
    }
}

/// Sum over wavelengths of the number of distinct vertices on that wavelength.
pub fn drop_cost(dec: &Decomposition) -> usize {
    dec.wavelengths.iter().map(|w| w.vertices().len()).sum()
}

pub fn count_triangles(dec: &Decomposition) -> usize {
    dec.blocks().filter(|b| b.shape() == Shape::Triangle).count()
}
