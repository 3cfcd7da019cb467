//! Graded branching graphs: level-by-level constructors for all the towers
//! in play, pascalization, exact path counting, central-measure coherence,
//! ergodic ratio sequences and exports.
//!
//! A graph is generated up to an explicit level cap at construction and is
//! immutable afterwards, so every query is read-only and safe to share
//! across threads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratio::{count_to_ratio, format_ratio};
use crate::young::YoungDiagram;
use crate::{BigCount, BigRatio};

/// The six base graphs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphKind {
    /// Young graph: level n holds the partitions of n, edges add one box.
    Young,
    /// Rook-Brauer graph Γ_B: level n holds all partitions of size ≤ n,
    /// edges keep, add or remove a box.
    GammaB,
    /// Coupled Young graph Θ: pairs (λ,μ) with 2|λ|+|μ| = n; either μ
    /// grows a box, or λ grows a box taken from μ.
    Theta,
    /// Principal graph Λ of Γ_B: level n holds tagged copies of the
    /// partitions of n and of n−1; each size-n vertex has one edge to a
    /// copy of itself and one to each add-a-box neighbour.
    LambdaPrincipal,
    /// Walled graph: pairs with |λ| = ⌈n/2⌉, |μ| = ⌊n/2⌋; box additions
    /// alternate between the two diagrams.
    Walled,
    /// Young graph with every level repeated twice: identity edges between
    /// the two copies of a level, add-a-box edges from the second copy.
    DoubledYoung,
}

impl GraphKind {
    pub const ALL: [GraphKind; 6] = [
        GraphKind::Young,
        GraphKind::GammaB,
        GraphKind::Theta,
        GraphKind::LambdaPrincipal,
        GraphKind::Walled,
        GraphKind::DoubledYoung,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Young => "young",
            GraphKind::GammaB => "gamma-b",
            GraphKind::Theta => "theta",
            GraphKind::LambdaPrincipal => "lambda",
            GraphKind::Walled => "walled",
            GraphKind::DoubledYoung => "doubled-young",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "young" => Ok(GraphKind::Young),
            "gamma-b" | "gammab" => Ok(GraphKind::GammaB),
            "theta" => Ok(GraphKind::Theta),
            "lambda" | "lambda-principal" => Ok(GraphKind::LambdaPrincipal),
            "walled" => Ok(GraphKind::Walled),
            "doubled-young" => Ok(GraphKind::DoubledYoung),
            other => Err(Error::UnknownGraphKind(other.to_string())),
        }
    }
}

/// Vertex payload. The payload kind is uniform within a graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    Single(YoungDiagram),
    Pair(YoungDiagram, YoungDiagram),
    /// A diagram together with a copy index (0 or 1), for the graphs whose
    /// levels carry two copies of a Young-graph level.
    Tagged(YoungDiagram, u8),
}

impl Payload {
    pub fn as_single(&self) -> Option<&YoungDiagram> {
        match self {
            Payload::Single(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&YoungDiagram, &YoungDiagram)> {
        match self {
            Payload::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Payload::Single(d) => serde_json::json!(d),
            Payload::Pair(a, b) => serde_json::json!({ "first": a, "second": b }),
            Payload::Tagged(d, t) => serde_json::json!({ "diagram": d, "copy": t }),
        }
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Single(d) => write!(f, "{d}"),
            Payload::Pair(a, b) => write!(f, "({a},{b})"),
            Payload::Tagged(d, t) => write!(f, "{d}[{t}]"),
        }
    }
}

impl fmt::Debug for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vertex is a level together with a payload; payloads may repeat across
/// levels (they do in Γ_B and in every pascalization).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub level: usize,
    pub payload: Payload,
}

impl Vertex {
    pub fn new(level: usize, payload: Payload) -> Self {
        Vertex { level, payload }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.payload)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A graded rooted graph with integer edge multiplicities, generated up to
/// a fixed level cap. Vertices within a level are kept in canonical order.
pub struct BranchingGraph {
    kind: String,
    level_cap: usize,
    levels: Vec<Vec<Payload>>,
    index: Vec<HashMap<Payload, usize>>,
    /// `edges_up[n][u]` lists `(v, mult)` pairs into level n+1, sorted by v.
    edges_up: Vec<Vec<Vec<(usize, u32)>>>,
    /// Root-to-vertex path counts, filled level by level at construction.
    dims: Vec<Vec<BigCount>>,
}

/// Builds one of the six base graphs up to `level_cap` (inclusive).
pub fn build_graph(kind: GraphKind, level_cap: usize) -> BranchingGraph {
    let root = match kind {
        GraphKind::Young | GraphKind::GammaB => Payload::Single(YoungDiagram::empty()),
        GraphKind::Theta | GraphKind::Walled => {
            Payload::Pair(YoungDiagram::empty(), YoungDiagram::empty())
        }
        GraphKind::LambdaPrincipal | GraphKind::DoubledYoung => {
            Payload::Tagged(YoungDiagram::empty(), 0)
        }
    };
    BranchingGraph::generate(
        kind.name().to_string(),
        level_cap,
        root,
        |level, payload| successors_for(kind, level, payload),
    )
}

fn successors_for(kind: GraphKind, level: usize, payload: &Payload) -> Vec<(Payload, u32)> {
    match (kind, payload) {
        (GraphKind::Young, Payload::Single(d)) => d
            .successors()
            .into_iter()
            .map(|s| (Payload::Single(s), 1))
            .collect(),
        (GraphKind::GammaB, Payload::Single(d)) => {
            let mut out = vec![(Payload::Single(d.clone()), 1)];
            out.extend(d.successors().into_iter().map(|s| (Payload::Single(s), 1)));
            out.extend(
                d.predecessors()
                    .into_iter()
                    .map(|p| (Payload::Single(p), 1)),
            );
            out
        }
        (GraphKind::Theta, Payload::Pair(l, m)) => {
            let mut out: Vec<(Payload, u32)> = m
                .successors()
                .into_iter()
                .map(|m2| (Payload::Pair(l.clone(), m2), 1))
                .collect();
            for l2 in l.successors() {
                for m2 in m.predecessors() {
                    out.push((Payload::Pair(l2.clone(), m2), 1));
                }
            }
            out
        }
        (GraphKind::LambdaPrincipal, Payload::Tagged(d, tag)) => {
            let mut out = Vec::new();
            if *tag == 0 {
                out.push((Payload::Tagged(d.clone(), 1), 1));
            }
            out.extend(
                d.successors()
                    .into_iter()
                    .map(|s| (Payload::Tagged(s, *tag), 1)),
            );
            out
        }
        (GraphKind::Walled, Payload::Pair(l, m)) => {
            if level.is_multiple_of(2) {
                l.successors()
                    .into_iter()
                    .map(|l2| (Payload::Pair(l2, m.clone()), 1))
                    .collect()
            } else {
                m.successors()
                    .into_iter()
                    .map(|m2| (Payload::Pair(l.clone(), m2), 1))
                    .collect()
            }
        }
        (GraphKind::DoubledYoung, Payload::Tagged(d, tag)) => {
            if *tag == 0 {
                vec![(Payload::Tagged(d.clone(), 1), 1)]
            } else {
                d.successors()
                    .into_iter()
                    .map(|s| (Payload::Tagged(s, 0), 1))
                    .collect()
            }
        }
        _ => unreachable!("payload kind is uniform per graph"),
    }
}

impl BranchingGraph {
    fn generate(
        kind: String,
        level_cap: usize,
        root: Payload,
        succ: impl Fn(usize, &Payload) -> Vec<(Payload, u32)>,
    ) -> BranchingGraph {
        let mut graph = BranchingGraph {
            kind,
            level_cap,
            levels: vec![vec![root.clone()]],
            index: vec![HashMap::from([(root, 0)])],
            edges_up: Vec::new(),
            dims: vec![vec![BigCount::one()]],
        };
        for n in 0..level_cap {
            let mut next: BTreeSet<Payload> = BTreeSet::new();
            let raw: Vec<Vec<(Payload, u32)>> = graph.levels[n]
                .iter()
                .map(|p| {
                    let s = succ(n, p);
                    next.extend(s.iter().map(|(q, _)| q.clone()));
                    s
                })
                .collect();
            let next: Vec<Payload> = next.into_iter().collect();
            let next_index: HashMap<Payload, usize> = next
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect();
            let mut dims = vec![BigCount::zero(); next.len()];
            let mut edges = Vec::with_capacity(raw.len());
            for (u, list) in raw.into_iter().enumerate() {
                let mut merged: HashMap<usize, u32> = HashMap::new();
                for (q, mult) in list {
                    *merged.entry(next_index[&q]).or_insert(0) += mult;
                }
                let mut row: Vec<(usize, u32)> = merged.into_iter().collect();
                row.sort_unstable();
                for &(v, mult) in &row {
                    dims[v] += &graph.dims[n][u] * BigCount::from(mult);
                }
                edges.push(row);
            }
            graph.levels.push(next);
            graph.index.push(next_index);
            graph.edges_up.push(edges);
            graph.dims.push(dims);
        }
        graph
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn level_cap(&self) -> usize {
        self.level_cap
    }

    /// Payloads of one level, in canonical order.
    pub fn level(&self, n: usize) -> Result<&[Payload]> {
        self.levels
            .get(n)
            .map(|v| v.as_slice())
            .ok_or(Error::LevelOutOfRange {
                requested: n,
                cap: self.level_cap,
            })
    }

    pub fn level_size(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.len())
    }

    fn position(&self, v: &Vertex) -> Result<usize> {
        self.index
            .get(v.level)
            .and_then(|m| m.get(&v.payload))
            .copied()
            .ok_or_else(|| Error::VertexNotFound(v.to_string()))
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.position(v).is_ok()
    }

    /// Edge multiplicity between a vertex and one on the next level;
    /// zero when they are not connected.
    pub fn edge_mult(&self, u: &Vertex, v: &Vertex) -> Result<u32> {
        if v.level != u.level + 1 {
            return Ok(0);
        }
        let ui = self.position(u)?;
        let vi = self.position(v)?;
        Ok(self.edges_up[u.level][ui]
            .iter()
            .find(|&&(w, _)| w == vi)
            .map_or(0, |&(_, m)| m))
    }

    /// Up-neighbours of a vertex with multiplicities.
    pub fn neighbours_up(&self, u: &Vertex) -> Result<Vec<(Vertex, u32)>> {
        let ui = self.position(u)?;
        if u.level >= self.level_cap {
            return Ok(Vec::new());
        }
        Ok(self.edges_up[u.level][ui]
            .iter()
            .map(|&(v, m)| {
                (
                    Vertex::new(u.level + 1, self.levels[u.level + 1][v].clone()),
                    m,
                )
            })
            .collect())
    }

    /// Number of root-to-`v` paths, counting edge multiplicities.
    pub fn dim_root(&self, v: &Vertex) -> Result<BigCount> {
        let i = self.position(v)?;
        Ok(self.dims[v.level][i].clone())
    }

    /// All root path counts of one level, aligned with `level(n)`.
    pub fn dims_at_level(&self, n: usize) -> Result<&[BigCount]> {
        self.level(n)?;
        Ok(&self.dims[n])
    }

    /// Sum of squared dimensions over one level.
    pub fn sum_dim_squares(&self, n: usize) -> Result<BigCount> {
        Ok(self.dims_at_level(n)?.iter().map(|d| d * d).sum())
    }

    /// Number of paths from `u` to `v`, counting edge multiplicities.
    /// `dim_between(root, v)` equals `dim_root(v)`; `u == v` gives 1.
    pub fn dim_between(&self, u: &Vertex, v: &Vertex) -> Result<BigCount> {
        let ui = self.position(u)?;
        let vi = self.position(v)?;
        if v.level < u.level {
            return Err(Error::InvalidPath(format!(
                "target level {} below source level {}",
                v.level, u.level
            )));
        }
        let mut counts = vec![BigCount::zero(); self.levels[u.level].len()];
        counts[ui] = BigCount::one();
        for n in u.level..v.level {
            let mut next = vec![BigCount::zero(); self.levels[n + 1].len()];
            for (w, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(t, m) in &self.edges_up[n][w] {
                    next[t] += c * BigCount::from(m);
                }
            }
            counts = next;
        }
        Ok(counts[vi].clone())
    }

    /// Explicitly lists every path from `u` to `v` as a vertex sequence.
    /// An edge of multiplicity m contributes m copies of its sequence, so
    /// the list length equals `dim_between(u, v)`. Fails once more than
    /// `cap` paths exist.
    pub fn enumerate_paths(&self, u: &Vertex, v: &Vertex, cap: usize) -> Result<Vec<Vec<Vertex>>> {
        let ui = self.position(u)?;
        let vi = self.position(v)?;
        if v.level < u.level {
            return Err(Error::InvalidPath(format!(
                "target level {} below source level {}",
                v.level, u.level
            )));
        }
        // backward reachability counts prune dead branches
        let mut reach: Vec<Vec<BigCount>> = Vec::with_capacity(v.level - u.level + 1);
        let mut back = vec![BigCount::zero(); self.levels[v.level].len()];
        back[vi] = BigCount::one();
        reach.push(back.clone());
        for n in (u.level..v.level).rev() {
            let mut cur = vec![BigCount::zero(); self.levels[n].len()];
            for (w, row) in self.edges_up[n].iter().enumerate() {
                for &(t, m) in row {
                    cur[w] += &back[t] * BigCount::from(m);
                }
            }
            reach.push(cur.clone());
            back = cur;
        }
        reach.reverse(); // reach[n - u.level][w] = #paths from (n,w) to v

        let mut out: Vec<Vec<Vertex>> = Vec::new();
        let mut stack: Vec<usize> = vec![ui];
        self.enumerate_rec(u.level, v.level, &reach, &mut stack, &mut out, cap)?;
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        base: usize,
        target: usize,
        reach: &[Vec<BigCount>],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Vertex>>,
        cap: usize,
    ) -> Result<()> {
        let level = base + stack.len() - 1;
        let here = *stack.last().unwrap();
        if level == target {
            if out.len() >= cap {
                return Err(Error::PathCapExceeded { cap });
            }
            out.push(
                stack
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| Vertex::new(base + i, self.levels[base + i][w].clone()))
                    .collect(),
            );
            return Ok(());
        }
        for &(t, m) in &self.edges_up[level][here] {
            if reach[level + 1 - base][t].is_zero() {
                continue;
            }
            stack.push(t);
            for _ in 0..m {
                self.enumerate_rec(base, target, reach, stack, out, cap)?;
            }
            stack.pop();
        }
        Ok(())
    }

    pub fn root(&self) -> Vertex {
        Vertex::new(0, self.levels[0][0].clone())
    }

    /// The pascalization: level n holds `(n, γ)` for every base vertex γ on
    /// a level k ≤ n with k ≡ n (mod 2); the multiplicity of
    /// `(n,γ)—(n+1,γ̃)` is the undirected multiplicity of `γ—γ̃` in the base
    /// graph. Requires payloads to determine their base level uniquely.
    pub fn pascalize(&self) -> Result<BranchingGraph> {
        let mut home_level: HashMap<&Payload, usize> = HashMap::new();
        for (n, level) in self.levels.iter().enumerate() {
            for p in level {
                if home_level.insert(p, n).is_some() {
                    return Err(Error::AmbiguousPayload(p.to_string()));
                }
            }
        }
        let kind = format!("pascalized-{}", self.kind);
        let cap = self.level_cap;
        let root = self.levels[0][0].clone();
        Ok(BranchingGraph::generate(kind, cap, root, |_, payload| {
            let k = home_level[payload];
            let ki = self.index[k][payload];
            let mut out: Vec<(Payload, u32)> = Vec::new();
            // undirected edges upward in the base graph
            if k < self.level_cap {
                for &(t, m) in &self.edges_up[k][ki] {
                    out.push((self.levels[k + 1][t].clone(), m));
                }
            }
            // undirected edges downward in the base graph
            if k > 0 {
                for (w, row) in self.edges_up[k - 1].iter().enumerate() {
                    for &(t, m) in row {
                        if t == ki {
                            out.push((self.levels[k - 1][w].clone(), m));
                        }
                    }
                }
            }
            out
        }))
    }

    /// Test hook: overrides one edge multiplicity without recomputing the
    /// dimension cache. Only meant for negative controls in tests.
    #[doc(hidden)]
    pub fn set_edge_multiplicity(&mut self, u: &Vertex, v: &Vertex, mult: u32) -> Result<()> {
        let ui = self.position(u)?;
        let vi = self.position(v)?;
        if v.level != u.level + 1 {
            return Err(Error::InvalidPath("not an adjacent pair".into()));
        }
        let row = &mut self.edges_up[u.level][ui];
        match row.iter_mut().find(|(w, _)| *w == vi) {
            Some(entry) => {
                if mult == 0 {
                    row.retain(|&(w, _)| w != vi);
                } else {
                    entry.1 = mult;
                }
            }
            None => {
                if mult > 0 {
                    row.push((vi, mult));
                    row.sort_unstable();
                }
            }
        }
        Ok(())
    }
}

/// Report of the copy-forgetting comparison between the pascalized
/// principal graph Λ and Γ_B.
#[derive(Clone, Debug)]
pub struct IsoReport {
    pub levels_checked: usize,
    pub isomorphic: bool,
    /// Human-readable description of the first mismatch.
    pub mismatch: Option<String>,
}

fn forget_tag(p: &Payload) -> Result<Payload> {
    match p {
        Payload::Tagged(d, _) => Ok(Payload::Single(d.clone())),
        other => Err(Error::InvalidPath(format!(
            "expected a tagged payload, got {other}"
        ))),
    }
}

/// Verifies that forgetting copy tags maps the pascalized Λ graph onto Γ_B
/// level by level, matching all edge multiplicities up to level `n_max`.
/// Mismatches are reported, not thrown.
pub fn check_isomorphism_gamma_b(
    pascalized_lambda: &BranchingGraph,
    gamma_b: &BranchingGraph,
    n_max: usize,
) -> Result<IsoReport> {
    pascalized_lambda.level(n_max)?;
    gamma_b.level(n_max)?;
    let fail = |msg: String| IsoReport {
        levels_checked: n_max,
        isomorphic: false,
        mismatch: Some(msg),
    };
    for n in 0..=n_max {
        let mapped: Result<BTreeSet<Payload>> =
            pascalized_lambda.level(n)?.iter().map(forget_tag).collect();
        let mapped = mapped?;
        let expected: BTreeSet<Payload> = gamma_b.level(n)?.iter().cloned().collect();
        if mapped.len() != pascalized_lambda.level(n)?.len() || mapped != expected {
            return Ok(fail(format!("vertex sets differ at level {n}")));
        }
    }
    // preimage of the copy-forgetting map per level (injective by the
    // vertex-set check above)
    let mut preimage: Vec<HashMap<Payload, Payload>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut map = HashMap::new();
        for p in pascalized_lambda.level(n)? {
            map.insert(forget_tag(p)?, p.clone());
        }
        preimage.push(map);
    }
    for n in 0..n_max {
        // both directions: every edge present on either side must match
        for u in pascalized_lambda.level(n)? {
            let uv = Vertex::new(n, u.clone());
            let u_image = Vertex::new(n, forget_tag(u)?);
            for (v, mult) in pascalized_lambda.neighbours_up(&uv)? {
                let v_image = Vertex::new(n + 1, forget_tag(&v.payload)?);
                if gamma_b.edge_mult(&u_image, &v_image)? != mult {
                    return Ok(fail(format!(
                        "edge {uv} -> {v} maps to {u_image} -> {v_image} with mismatched multiplicity"
                    )));
                }
            }
        }
        for u in gamma_b.level(n)? {
            let uv = Vertex::new(n, u.clone());
            for (v, mult) in gamma_b.neighbours_up(&uv)? {
                match (preimage[n].get(u), preimage[n + 1].get(&v.payload)) {
                    (Some(pu), Some(pv)) => {
                        let m = pascalized_lambda.edge_mult(
                            &Vertex::new(n, pu.clone()),
                            &Vertex::new(n + 1, pv.clone()),
                        )?;
                        if m != mult {
                            return Ok(fail(format!(
                                "edge {uv} -> {v} has multiplicity {mult} in gamma-b but {m} under the copy map"
                            )));
                        }
                    }
                    _ => return Ok(fail(format!("no preimage for edge {uv} -> {v}"))),
                }
            }
        }
    }
    Ok(IsoReport {
        levels_checked: n_max,
        isomorphic: true,
        mismatch: None,
    })
}

/// An exact probability measure on one level of a graph.
#[derive(Clone, Debug)]
pub struct LevelMeasure {
    level: usize,
    masses: Vec<BigRatio>,
}

impl LevelMeasure {
    /// Masses must be nonnegative, supported on the level, and sum to 1.
    pub fn new(
        graph: &BranchingGraph,
        level: usize,
        masses: impl IntoIterator<Item = (Payload, BigRatio)>,
    ) -> Result<Self> {
        let payloads = graph.level(level)?;
        let mut table = vec![BigRatio::zero(); payloads.len()];
        let mut assigned = vec![false; payloads.len()];
        for (payload, mass) in masses {
            let v = Vertex::new(level, payload);
            let i = graph
                .position(&v)
                .map_err(|_| Error::InvalidMeasure(format!("{v} is not on level {level}")))?;
            if assigned[i] {
                return Err(Error::InvalidMeasure(format!("{v} assigned twice")));
            }
            assigned[i] = true;
            if mass < BigRatio::zero() {
                return Err(Error::InvalidMeasure(format!(
                    "negative mass {} at {v}",
                    format_ratio(&mass)
                )));
            }
            table[i] = mass;
        }
        let total: BigRatio = table.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "total mass is {}, not 1",
                format_ratio(&total)
            )));
        }
        Ok(LevelMeasure {
            level,
            masses: table,
        })
    }

    /// The Plancherel-style measure M(γ) = dim(γ)² / Σ dim² on a level.
    pub fn plancherel(graph: &BranchingGraph, level: usize) -> Result<Self> {
        let dims = graph.dims_at_level(level)?;
        let total: BigCount = dims.iter().map(|d| d * d).sum();
        let total = count_to_ratio(&total);
        Ok(LevelMeasure {
            level,
            masses: dims
                .iter()
                .map(|d| count_to_ratio(&(d * d)) / &total)
                .collect(),
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn mass(&self, i: usize) -> &BigRatio {
        &self.masses[i]
    }
}

/// First coherence violation found, if any.
#[derive(Clone, Debug)]
pub struct CoherenceViolation {
    pub level: usize,
    pub payload: Payload,
    pub stated: BigRatio,
    pub induced: BigRatio,
}

#[derive(Clone, Debug)]
pub struct CoherenceReport {
    pub levels_checked: usize,
    pub coherent: bool,
    pub violation: Option<CoherenceViolation>,
}

/// Checks the level-to-level consequence of centrality,
/// `M_n(γ) = Σ_γ̃ m(γ,γ̃) · dim(γ) · M_{n+1}(γ̃) / dim(γ̃)`,
/// exactly for all consecutive measures. Measures must cover levels 0..=N
/// in order.
pub fn coherence_check(
    graph: &BranchingGraph,
    measures: &[LevelMeasure],
) -> Result<CoherenceReport> {
    for (i, m) in measures.iter().enumerate() {
        if m.level != i {
            return Err(Error::InvalidMeasure(format!(
                "expected a measure for level {i}, got level {}",
                m.level
            )));
        }
        graph.level(i)?;
    }
    let n_levels = measures.len();
    for n in 0..n_levels.saturating_sub(1) {
        let here = graph.level(n)?;
        let dims_here = graph.dims_at_level(n)?;
        let dims_next = graph.dims_at_level(n + 1)?;
        for (i, payload) in here.iter().enumerate() {
            let mut induced = BigRatio::zero();
            for &(t, mult) in &graph.edges_up[n][i] {
                let ratio = measures[n + 1].mass(t) / count_to_ratio(&dims_next[t]);
                induced += ratio * BigRatio::from_integer(mult.into());
            }
            induced *= count_to_ratio(&dims_here[i]);
            if &induced != measures[n].mass(i) {
                return Ok(CoherenceReport {
                    levels_checked: n_levels,
                    coherent: false,
                    violation: Some(CoherenceViolation {
                        level: n,
                        payload: payload.clone(),
                        stated: measures[n].mass(i).clone(),
                        induced,
                    }),
                });
            }
        }
    }
    Ok(CoherenceReport {
        levels_checked: n_levels,
        coherent: true,
        violation: None,
    })
}

/// The ergodic-method ratios `dim(anchor, path[n]) / dim(path[n])` along a
/// root path, one exact rational per level ≥ level(anchor).
pub fn ratio_sequence(
    graph: &BranchingGraph,
    anchor: &Vertex,
    path: &[Vertex],
) -> Result<Vec<BigRatio>> {
    graph.position(anchor)?;
    if path.is_empty() || path[0] != graph.root() {
        return Err(Error::InvalidPath("path must start at the root".into()));
    }
    for (i, v) in path.iter().enumerate() {
        if v.level != i {
            return Err(Error::InvalidPath(format!(
                "vertex {v} at position {i} has wrong level"
            )));
        }
        if i > 0 && graph.edge_mult(&path[i - 1], v)? == 0 {
            return Err(Error::InvalidPath(format!(
                "no edge from {} to {v}",
                path[i - 1]
            )));
        }
    }
    if path.len() <= anchor.level {
        return Err(Error::InvalidPath(
            "path ends before the anchor level".into(),
        ));
    }
    let mut out = Vec::new();
    for v in &path[anchor.level..] {
        let numerator = graph.dim_between(anchor, v)?;
        let denominator = graph.dim_root(v)?;
        out.push(count_to_ratio(&numerator) / count_to_ratio(&denominator));
    }
    Ok(out)
}

// ------------------------------------------------------------------
// Exports
// ------------------------------------------------------------------

impl BranchingGraph {
    /// Global vertex index: position in the concatenation of the levels.
    fn global_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.levels.len());
        let mut acc = 0;
        for level in &self.levels {
            offsets.push(acc);
            acc += level.len();
        }
        offsets
    }

    /// JSON export: `{kind, level_cap, levels, edges, dims}` where `edges`
    /// lists `[u, v, mult]` with global vertex indices and `dims` gives the
    /// root path count of every vertex as a decimal string.
    pub fn to_json(&self) -> serde_json::Value {
        let offsets = self.global_offsets();
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .map(|lv| serde_json::Value::Array(lv.iter().map(|p| p.to_json()).collect()))
            .collect();
        let mut edges = Vec::new();
        for (n, rows) in self.edges_up.iter().enumerate() {
            for (u, row) in rows.iter().enumerate() {
                for &(v, m) in row {
                    edges.push(serde_json::json!([offsets[n] + u, offsets[n + 1] + v, m]));
                }
            }
        }
        let dims: Vec<serde_json::Value> = self
            .dims
            .iter()
            .flat_map(|lv| lv.iter().map(|d| serde_json::json!(d.to_string())))
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "level_cap": self.level_cap,
            "levels": levels,
            "edges": edges,
            "dims": dims,
        })
    }

    /// DOT export with vertices labelled `level:payload` and annotated
    /// with their root path count.
    pub fn to_dot(&self) -> String {
        let offsets = self.global_offsets();
        let mut out = String::from("digraph branching {\n  rankdir=BT;\n  node [shape=box];\n");
        for (n, level) in self.levels.iter().enumerate() {
            for (i, p) in level.iter().enumerate() {
                out.push_str(&format!(
                    "  v{} [label=\"{}:{} dim={}\"];\n",
                    offsets[n] + i,
                    n,
                    p,
                    self.dims[n][i]
                ));
            }
        }
        for (n, rows) in self.edges_up.iter().enumerate() {
            for (u, row) in rows.iter().enumerate() {
                for &(v, m) in row {
                    let attr = if m > 1 {
                        format!(" [label=\"{m}\"]")
                    } else {
                        String::new()
                    };
                    out.push_str(&format!(
                        "  v{} -> v{}{};\n",
                        offsets[n] + u,
                        offsets[n + 1] + v,
                        attr
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// CSV dimension table with columns `level,payload,dim`.
    pub fn dims_csv(&self) -> String {
        let mut out = String::from("level,payload,dim\n");
        for (n, level) in self.levels.iter().enumerate() {
            for (i, p) in level.iter().enumerate() {
                out.push_str(&format!("{},\"{}\",{}\n", n, p, self.dims[n][i]));
            }
        }
        out
    }
}
