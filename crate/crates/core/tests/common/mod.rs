#![allow(dead_code)]

use entrocone::graph::Vertex;
use entrocone::rational::int;
use entrocone::{GraphModel, Rational, Subsystem};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random graph with `n` parties and at most `max_vertices` vertices.
///
/// Every color gets one boundary vertex; remaining vertices are bulk or extra
/// boundary vertices with random colors. Weights are drawn from `0..=5`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_vertices: usize) -> GraphModel {
    assert!(max_vertices > n);
    let total = rng.gen_range(n + 1..=max_vertices);
    let mut vertices: Vec<Vertex> = (1..=n + 1)
        .map(|c| Vertex {
            id: format!("b{c}"),
            color: Some(c),
        })
        .collect();
    for i in n + 1..total {
        let color = if rng.gen_bool(0.25) {
            Some(rng.gen_range(1..=n + 1))
        } else {
            None
        };
        vertices.push(Vertex {
            id: format!("v{i}"),
            color,
        });
    }
    let mut edges = Vec::new();
    let n_edges = rng.gen_range(0..=2 * total);
    for _ in 0..n_edges {
        let a = rng.gen_range(0..total);
        let b = rng.gen_range(0..total);
        if a == b {
            continue;
        }
        edges.push((
            vertices[a].id.clone(),
            vertices[b].id.clone(),
            int(rng.gen_range(0..=5)),
        ));
    }
    GraphModel::new(n, vertices, edges).expect("generated graph is valid")
}

/// Proptest strategy over the same ensemble.
pub fn arb_graph(max_n: usize, max_vertices: usize) -> impl Strategy<Value = GraphModel> {
    (1..=max_n, any::<u64>()).prop_map(move |(n, seed)| {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_graph(&mut rng, n, max_vertices)
    })
}

/// Every nonempty proper subset of `[n+1]`, as raw subsystems.
pub fn proper_subsets(n: usize) -> Vec<Subsystem> {
    let full = (1u64 << (n + 1)) - 1;
    (1..full)
        .map(|m| Subsystem::from_mask(n, m).unwrap())
        .collect()
}

/// Every nonempty subset of `[n]`.
pub fn party_subsets(n: usize) -> Vec<Subsystem> {
    (1..1u64 << n)
        .map(|m| Subsystem::from_mask(n, m).unwrap())
        .collect()
}

/// Min cut by trying every assignment of non-boundary vertices.
pub fn brute_force_min_cut(g: &GraphModel, i: &Subsystem) -> Rational {
    let vs = g.vertices();
    let free: Vec<usize> = (0..vs.len()).filter(|&v| vs[v].color.is_none()).collect();
    let mut best: Option<Rational> = None;
    for assign in 0u64..1 << free.len() {
        let mut side = vec![false; vs.len()];
        for (v, vx) in vs.iter().enumerate() {
            if let Some(c) = vx.color {
                side[v] = i.contains(c);
            }
        }
        for (b, &v) in free.iter().enumerate() {
            side[v] = assign >> b & 1 == 1;
        }
        let w: Rational = g
            .edges()
            .iter()
            .filter(|e| side[e.u] != side[e.v])
            .map(|e| e.weight.clone())
            .sum();
        if best.as_ref().is_none_or(|b| w < *b) {
            best = Some(w);
        }
    }
    best.unwrap()
}
