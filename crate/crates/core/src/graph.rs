//! Weighted boundary-colored graphs and their min-cut entropies.
//!
//! A graph model on `n` parties has a surjective coloring of its boundary
//! vertices onto `[n+1]`. For a subsystem `I`, a cut is a vertex set `W`
//! containing exactly the boundary vertices colored by `I`; the entropy
//! `S_I` is the minimum total weight of edges leaving `W`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, GraphError, Result};
use crate::rational::{format_rational, lcm_of_denominators, parse_rational, Rational};
use crate::subsystem::{check_parties, subsystem_order, Permutation, Subsystem};
use crate::vectors::{check_dense, EntropyVector};

/// Default limit on the number of candidate cuts the enumeration backend
/// may visit for one subsystem.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// On-disk graph document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub parties: usize,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    pub w: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    /// `None` marks a bulk vertex.
    pub color: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Vertex indices with `u < v`.
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphModel {
    parties: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    /// s-t max-flow on integer capacities (denominators cleared).
    #[default]
    Flow,
    /// Exhaustive search over bulk-vertex subsets, per connected component.
    Enumeration { max_states: u64 },
}

impl Backend {
    pub fn enumeration() -> Self {
        Backend::Enumeration {
            max_states: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Disjoint,
    /// Vertices of equal color (across both graphs) are identified.
    Glued,
}

/// A cut `W` together with the edges it severs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    /// Sorted vertex indices of `W`.
    pub side: Vec<usize>,
    /// Indices of edges with exactly one endpoint in `W`.
    pub cut_edges: Vec<usize>,
    pub weight: Rational,
}

/// Checks a graph document and reports the first violation found.
pub fn validate_graph(file: &GraphFile) -> Result<()> {
    GraphModel::from_file(file).map(|_| ())
}

impl GraphModel {
    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let mut edges = Vec::with_capacity(file.edges.len());
        for (i, e) in file.edges.iter().enumerate() {
            let w = parse_rational(&e.w).map_err(|_| GraphError::BadWeight {
                edge: i,
                detail: format!("{:?} is not a rational literal", e.w),
            })?;
            edges.push((e.u.clone(), e.v.clone(), w));
        }
        let vertices = file
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                color: v.color,
            })
            .collect();
        Self::new(file.parties, vertices, edges)
    }

    /// Validates and builds a graph. Parallel edges are merged by summing
    /// their weights.
    pub fn new(
        parties: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(String, String, Rational)>,
    ) -> Result<Self> {
        check_parties(parties)?;
        let mut index: HashMap<&str, usize> = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()).into());
            }
            if let Some(c) = v.color {
                if c == 0 || c > parties + 1 {
                    return Err(GraphError::ColorOutOfRange {
                        vertex: v.id.clone(),
                        color: c,
                        max: parties + 1,
                    }
                    .into());
                }
            }
        }
        let mut merged: Vec<Edge> = Vec::with_capacity(edges.len());
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, (u, v, w)) in edges.into_iter().enumerate() {
            let iu = *index
                .get(u.as_str())
                .ok_or_else(|| GraphError::UnknownVertex {
                    edge: i,
                    vertex: u.clone(),
                })?;
            let iv = *index
                .get(v.as_str())
                .ok_or_else(|| GraphError::UnknownVertex {
                    edge: i,
                    vertex: v.clone(),
                })?;
            if iu == iv {
                return Err(GraphError::SelfLoop { edge: i, vertex: u }.into());
            }
            if w.is_negative() {
                return Err(GraphError::NegativeWeight {
                    edge: i,
                    u,
                    v,
                    weight: format_rational(&w),
                }
                .into());
            }
            let key = (iu.min(iv), iu.max(iv));
            match seen.get(&key) {
                Some(&at) => merged[at].weight += w,
                None => {
                    seen.insert(key, merged.len());
                    merged.push(Edge {
                        u: key.0,
                        v: key.1,
                        weight: w,
                    });
                }
            }
        }
        let mut used = vec![false; parties + 1];
        for v in &vertices {
            if let Some(c) = v.color {
                used[c - 1] = true;
            }
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(GraphError::UnusedColor(c + 1).into());
        }
        Ok(Self {
            parties,
            vertices,
            edges: merged,
        })
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            parties: self.parties,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexSpec {
                    id: v.id.clone(),
                    color: v.color,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    u: self.vertices[e.u].id.clone(),
                    v: self.vertices[e.v].id.clone(),
                    w: format_rational(&e.weight),
                })
                .collect(),
        }
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_ids<'a>(&'a self, idx: &'a [usize]) -> impl Iterator<Item = &'a str> + 'a {
        idx.iter().map(move |&i| self.vertices[i].id.as_str())
    }

    fn check_subsystem(&self, i: &Subsystem) -> Result<()> {
        if i.parties() != self.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: i.parties(),
            });
        }
        if i.is_full() {
            return Err(Error::InvalidSubsystem(
                "min-cut needs a proper subset of [n+1]".into(),
            ));
        }
        Ok(())
    }

    /// Weight of the edges leaving `side` (given as a membership mask over
    /// vertices).
    fn cut_of(&self, in_side: &[bool]) -> Cut {
        let mut cut_edges = Vec::new();
        let mut weight = Rational::zero();
        for (i, e) in self.edges.iter().enumerate() {
            if in_side[e.u] != in_side[e.v] {
                cut_edges.push(i);
                weight += &e.weight;
            }
        }
        Cut {
            side: (0..self.vertices.len()).filter(|&v| in_side[v]).collect(),
            cut_edges,
            weight,
        }
    }

    /// Weight of the cut `W` given by vertex ids; boundary constraints are not
    /// checked.
    pub fn cut_weight(&self, side: &[usize]) -> Rational {
        let mut in_side = vec![false; self.vertices.len()];
        for &v in side {
            in_side[v] = true;
        }
        self.cut_of(&in_side).weight
    }

    /// Integer capacities `w * L` where `L` clears every denominator.
    fn integer_weights(&self) -> (Vec<BigInt>, BigInt) {
        let l = lcm_of_denominators(self.edges.iter().map(|e| &e.weight));
        let w = self
            .edges
            .iter()
            .map(|e| e.weight.numer() * (&l / e.weight.denom()))
            .collect();
        (w, l)
    }

    pub fn min_cut(&self, i: &Subsystem, backend: Backend) -> Result<Cut> {
        self.check_subsystem(i)?;
        let in_side = match backend {
            Backend::Flow => self.flow_side(i),
            Backend::Enumeration { max_states } => self.enumeration_side(i, max_states)?,
        };
        Ok(self.cut_of(&in_side))
    }

    fn forced(&self, v: usize, i: &Subsystem) -> Option<bool> {
        self.vertices[v].color.map(|c| i.contains(c))
    }

    fn flow_side(&self, i: &Subsystem) -> Vec<bool> {
        const SOURCE: usize = 0;
        const SINK: usize = 1;
        let mut next = 2;
        let node: Vec<usize> = (0..self.vertices.len())
            .map(|v| match self.forced(v, i) {
                Some(true) => SOURCE,
                Some(false) => SINK,
                None => {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        let (caps, _) = self.integer_weights();
        let mut net = FlowNetwork::new(next);
        for (e, c) in self.edges.iter().zip(caps) {
            let (a, b) = (node[e.u], node[e.v]);
            if a != b && !c.is_zero() {
                net.add_undirected(a, b, c);
            }
        }
        net.max_flow(SOURCE, SINK);
        let reach = net.reachable(SOURCE);
        (0..self.vertices.len()).map(|v| reach[node[v]]).collect()
    }

    fn enumeration_side(&self, i: &Subsystem, max_states: u64) -> Result<Vec<bool>> {
        let comps = self.components();
        let mut total: u64 = 0;
        for comp in &comps {
            let bulk = comp
                .iter()
                .filter(|&&v| self.vertices[v].color.is_none())
                .count();
            let states = if bulk >= 63 { u64::MAX } else { 1u64 << bulk };
            total = total.saturating_add(states);
        }
        if total > max_states {
            return Err(Error::CapExceeded(format!(
                "enumeration needs {total} candidate cuts, cap is {max_states}"
            )));
        }
        let (weights, _) = self.integer_weights();
        let total_weight: BigInt = weights.iter().sum();
        let small: Option<Vec<u128>> = if total_weight.bits() < 120 {
            weights.iter().map(|w| w.to_u128()).collect()
        } else {
            None
        };

        let mut in_side = vec![false; self.vertices.len()];
        let mut comp_edges: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
        let mut comp_of = vec![0usize; self.vertices.len()];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = ci;
            }
        }
        for (ei, e) in self.edges.iter().enumerate() {
            comp_edges[comp_of[e.u]].push(ei);
        }
        for (ci, comp) in comps.iter().enumerate() {
            let bulk: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&v| self.vertices[v].color.is_none())
                .collect();
            for &v in comp {
                in_side[v] = self.forced(v, i).unwrap_or(false);
            }
            let best = match &small {
                Some(w) => best_assignment(self, &comp_edges[ci], &bulk, &mut in_side, w),
                None => best_assignment(self, &comp_edges[ci], &bulk, &mut in_side, &weights),
            };
            for (b, &v) in bulk.iter().enumerate() {
                in_side[v] = best >> b & 1 == 1;
            }
        }
        Ok(in_side)
    }

    /// Connected components (zero-weight edges count as connections).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Entropy `S_I` for a raw subsystem `I`.
    pub fn entropy(&self, i: &Subsystem, backend: Backend) -> Result<Rational> {
        Ok(self.min_cut(i, backend)?.weight)
    }

    /// All canonical entropies, in coordinate order.
    pub fn entropy_vector(&self, backend: Backend) -> Result<EntropyVector> {
        check_dense(self.parties)?;
        let order = subsystem_order(self.parties)?;
        let entries = order
            .par_iter()
            .map(|s| self.entropy(s, backend))
            .collect::<Result<Vec<_>>>()?;
        EntropyVector::new(self.parties, entries)
    }

    /// Replaces every boundary color `c` by `sigma(c)`.
    pub fn recolor(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.size() != self.parties + 1 {
            return Err(Error::AmbientMismatch {
                expected: self.parties + 1,
                found: sigma.size(),
            });
        }
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.color = v.color.map(|c| sigma.apply(c));
        }
        Ok(g)
    }

    pub fn scale_weights(&self, c: &Rational) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "weight scale {} is negative",
                format_rational(c)
            )));
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = &e.weight * c;
        }
        Ok(g)
    }

    pub fn combine(&self, other: &Self, mode: CombineMode) -> Result<Self> {
        if self.parties != other.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: other.parties,
            });
        }
        match mode {
            CombineMode::Disjoint => Ok(disjoint_union(self.parties, &[self, other], |i| {
                format!("{}:", i + 1)
            })),
            CombineMode::Glued => Ok(glue(self.parties, &[self, other])),
        }
    }
}

/// Disjoint union; vertex ids of part `i` get `prefix(i)` prepended.
pub(crate) fn disjoint_union(
    parties: usize,
    parts: &[&GraphModel],
    prefix: impl Fn(usize) -> String,
) -> GraphModel {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, g) in parts.iter().enumerate() {
        let p = prefix(i);
        let base = vertices.len();
        vertices.extend(g.vertices.iter().map(|v| Vertex {
            id: format!("{p}{}", v.id),
            color: v.color,
        }));
        edges.extend(g.edges.iter().map(|e| Edge {
            u: e.u + base,
            v: e.v + base,
            weight: e.weight.clone(),
        }));
    }
    GraphModel {
        parties,
        vertices,
        edges,
    }
}

fn glue(parties: usize, parts: &[&GraphModel]) -> GraphModel {
    let mut vertices: Vec<Vertex> = (1..=parties + 1)
        .map(|c| Vertex {
            id: format!("b{c}"),
            color: Some(c),
        })
        .collect();
    let mut weights: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (i, g) in parts.iter().enumerate() {
        let map: Vec<usize> = g
            .vertices
            .iter()
            .map(|v| match v.color {
                Some(c) => c - 1,
                None => {
                    vertices.push(Vertex {
                        id: format!("{}:{}", i + 1, v.id),
                        color: None,
                    });
                    vertices.len() - 1
                }
            })
            .collect();
        for e in &g.edges {
            let (a, b) = (map[e.u], map[e.v]);
            if a == b {
                // both endpoints share a color; never cut
                continue;
            }
            let key = (a.min(b), a.max(b));
            match weights.get_mut(&key) {
                Some(w) => *w += &e.weight,
                None => {
                    order.push(key);
                    weights.insert(key, e.weight.clone());
                }
            }
        }
    }
    let edges = order
        .into_iter()
        .map(|k| Edge {
            u: k.0,
            v: k.1,
            weight: weights.remove(&k).unwrap(),
        })
        .collect();
    GraphModel {
        parties,
        vertices,
        edges,
    }
}

// Exhaustive minimum over assignments of `bulk`; returns the winning mask
// (first minimum in mask order).
fn best_assignment<T>(
    g: &GraphModel,
    edges: &[usize],
    bulk: &[usize],
    in_side: &mut [bool],
    weights: &[T],
) -> u64
where
    T: Clone + Ord + Zero + for<'a> std::ops::AddAssign<&'a T>,
{
    let mut best: Option<(T, u64)> = None;
    let states: u64 = 1 << bulk.len();
    for mask in 0..states {
        for (b, &v) in bulk.iter().enumerate() {
            in_side[v] = mask >> b & 1 == 1;
        }
        let mut w = T::zero();
        for &ei in edges {
            let e = &g.edges[ei];
            if in_side[e.u] != in_side[e.v] {
                w += &weights[ei];
            }
        }
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, mask));
        }
    }
    best.map_or(0, |(_, m)| m)
}

/// Dinic max-flow on arbitrary-precision integer capacities.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<BigInt>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    // Arc `2k` and its partner `2k + 1` each carry capacity `c`.
    fn add_undirected(&mut self, a: usize, b: usize, c: BigInt) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c.clone());
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(c);
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.head.len()];
        level[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if level[v].is_none() && self.cap[a].is_positive() {
                    level[v] = Some(level[u].unwrap() + 1);
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn max_flow(&mut self, s: usize, t: usize) -> BigInt {
        let mut total = BigInt::zero();
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return total;
            }
            let mut it = vec![0usize; self.head.len()];
            while let Some(f) = self.augment(s, t, None, &level, &mut it) {
                total += f;
            }
        }
    }

    fn augment(
        &mut self,
        u: usize,
        t: usize,
        limit: Option<&BigInt>,
        level: &[Option<usize>],
        it: &mut [usize],
    ) -> Option<BigInt> {
        if u == t {
            return limit.cloned();
        }
        while it[u] < self.head[u].len() {
            let a = self.head[u][it[u]];
            let v = self.to[a];
            if self.cap[a].is_positive() && level[v] == level[u].map(|l| l + 1) {
                let bound = match limit {
                    Some(l) if *l < self.cap[a] => l.clone(),
                    _ => self.cap[a].clone(),
                };
                if let Some(f) = self.augment(v, t, Some(&bound), level, it) {
                    if f.is_positive() {
                        self.cap[a] -= &f;
                        self.cap[a ^ 1] += &f;
                        return Some(f);
                    }
                }
            }
            it[u] += 1;
        }
        None
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if !seen[v] && self.cap[a].is_positive() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Star graph: one bulk center joined to leaves colored `1..=n+1`; leaf
/// `i <= n` has weight 1 and the purifier leaf has weight `w`.
pub fn star_graph(n: usize, w: &Rational) -> Result<GraphModel> {
    check_parties(n)?;
    if !w.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "star weight must be positive, got {}",
            format_rational(w)
        )));
    }
    let mut vertices = vec![Vertex {
        id: "c".into(),
        color: None,
    }];
    let mut edges = Vec::new();
    for c in 1..=n + 1 {
        vertices.push(Vertex {
            id: format!("b{c}"),
            color: Some(c),
        });
        let weight = if c == n + 1 {
            w.clone()
        } else {
            Rational::from_integer(1.into())
        };
        edges.push(("c".to_string(), format!("b{c}"), weight));
    }
    GraphModel::new(n, vertices, edges)
}

/// Two-party-color Bell pair: colors `a` and `b` joined by a weight-1 edge,
/// every other color on an isolated vertex.
pub fn bell_pair(n: usize, a: usize, b: usize) -> Result<GraphModel> {
    check_parties(n)?;
    let vertices = (1..=n + 1)
        .map(|c| Vertex {
            id: format!("b{c}"),
            color: Some(c),
        })
        .collect();
    GraphModel::new(
        n,
        vertices,
        vec![(
            format!("b{a}"),
            format!("b{b}"),
            Rational::from_integer(1.into()),
        )],
    )
}
