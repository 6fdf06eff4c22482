//! Memoized deletion-contraction evaluation of Z at a fixed point.

use std::collections::HashMap;

use crate::algebra::rat::{pow_u, Rat};
use crate::graph::multigraph::MultiGraph;
use num_traits::One;

/// Z_G(q) with weights taken from the graph, by the identity
/// Z_G = Z_{G-e} + v_e Z_{G/e}. Loops factor out as (1+v_e), parallel
/// edges merge by (1+a)(1+b)-1, and connected components multiply.
/// The memo table lives for one top-level call.
pub fn z_del_con(g: &MultiGraph, q: &Rat) -> Rat {
    let mut memo: HashMap<Vec<u8>, Rat> = HashMap::new();
    eval(g, q, &mut memo)
}

fn eval(g: &MultiGraph, q: &Rat, memo: &mut HashMap<Vec<u8>, Rat>) -> Rat {
    // Strip loops; each contributes a scalar factor.
    let mut factor = Rat::one();
    let mut simple = MultiGraph::new(g.vertex_count());
    for (u, v, w) in g.edges() {
        if u == v {
            factor = &factor * &(&Rat::one() + w);
        } else {
            simple.add_edge(*u, *v, w.clone());
        }
    }
    if simple.edge_count() == 0 {
        return &factor * &pow_u(q, simple.vertex_count() as u32);
    }
    // Merge parallel edges between the same endpoints.
    let merged = merge_parallels(&simple);
    if merged.num_components() > 1 {
        let mut z = factor;
        for part in split_components(&merged) {
            z = &z * &eval(&part, q, memo);
        }
        return z;
    }
    let key = merged.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return &factor * hit;
    }
    // Branch on the last edge.
    let (u, v, w) = merged.edges().last().unwrap().clone();
    let mut deleted = MultiGraph::new(merged.vertex_count());
    for (a, b, wt) in &merged.edges()[..merged.edge_count() - 1] {
        deleted.add_edge(*a, *b, wt.clone());
    }
    let contracted = deleted.identify(u, v);
    let z = &eval(&deleted, q, memo) + &(&w * &eval(&contracted, q, memo));
    memo.insert(key, z.clone());
    &factor * &z
}

fn merge_parallels(g: &MultiGraph) -> MultiGraph {
    let mut acc: HashMap<(usize, usize), Rat> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (u, v, w) in g.edges() {
        let key = (*u.min(v), *u.max(v));
        match acc.get_mut(&key) {
            Some(existing) => {
                // (1+a)(1+b) - 1
                let one = Rat::one();
                let merged = &(&one + &*existing) * &(&one + w);
                *existing = &merged - &one;
            }
            None => {
                acc.insert(key, w.clone());
                order.push(key);
            }
        }
    }
    let mut out = MultiGraph::new(g.vertex_count());
    for key in order {
        out.add_edge(key.0, key.1, acc[&key].clone());
    }
    out
}

fn split_components(g: &MultiGraph) -> Vec<MultiGraph> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut adj = vec![Vec::new(); n];
    for (u, v, _) in g.edges() {
        adj[*u].push(*v);
        adj[*v].push(*u);
    }
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    let mut local = vec![0usize; n];
    let mut sizes = vec![0usize; count];
    for u in 0..n {
        local[u] = sizes[comp[u]];
        sizes[comp[u]] += 1;
    }
    let mut parts: Vec<MultiGraph> = sizes.iter().map(|s| MultiGraph::new(*s)).collect();
    for (u, v, w) in g.edges() {
        parts[comp[*u]].add_edge(local[*u], local[*v], w.clone());
    }
    parts
}
