use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::ProgramGraph;

/// Whole-graph shape metrics on the undirected simple graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralMetrics {
    pub density: f64,
    pub avg_degree: f64,
    pub clustering: f64,
    pub diameter: usize,
    pub avg_path_length: f64,
    /// `None` when endpoint degrees have no variance or the graph has fewer
    /// than two nodes.
    pub assortativity: Option<f64>,
}

/// Sorted, deduplicated adjacency with directions and parallel edges
/// collapsed and self-loops dropped.
pub fn undirected_adjacency(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    adj
}

pub fn structural_metrics(g: &ProgramGraph) -> StructuralMetrics {
    metrics_of(&undirected_adjacency(g.node_count(), &g.edge_pairs()))
}

pub fn metrics_of(adj: &[Vec<usize>]) -> StructuralMetrics {
    let n = adj.len();
    let m2: usize = adj.iter().map(Vec::len).sum();
    let m = m2 / 2;
    let density = if n < 2 { 0.0 } else { 2.0 * m as f64 / (n as f64 * (n - 1) as f64) };
    let avg_degree = if n == 0 { 0.0 } else { m2 as f64 / n as f64 };

    let (diameter, avg_path_length) = distances(adj);
    StructuralMetrics {
        density,
        avg_degree,
        clustering: average_clustering(adj),
        diameter,
        avg_path_length,
        assortativity: if n < 2 { None } else { assortativity(adj) },
    }
}

/// Mean local clustering; nodes of degree below two count as 0.
fn average_clustering(adj: &[Vec<usize>]) -> f64 {
    if adj.is_empty() {
        return 0.0;
    }
    let mut mark = vec![usize::MAX; adj.len()];
    let mut sum = 0.0;
    for (v, nb) in adj.iter().enumerate() {
        let k = nb.len();
        if k < 2 {
            continue;
        }
        for &u in nb {
            mark[u] = v;
        }
        let mut links = 0usize;
        for &u in nb {
            links += adj[u].iter().filter(|&&w| mark[w] == v).count();
        }
        // Each neighbour link was seen from both ends.
        sum += links as f64 / (k * (k - 1)) as f64;
    }
    sum / adj.len() as f64
}

fn components(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; adj.len()];
    let mut next = 0;
    for s in 0..adj.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Diameter and mean shortest-path length over ordered pairs of the largest
/// component (ties go to the component holding the lowest node id), by BFS
/// from every node.
fn distances(adj: &[Vec<usize>]) -> (usize, f64) {
    if adj.len() < 2 {
        return (0, 0.0);
    }
    let comp = components(adj);
    let mut sizes = vec![0usize; comp.iter().max().map_or(0, |m| m + 1)];
    for &c in &comp {
        sizes[c] += 1;
    }
    // Components are numbered in order of their lowest node id.
    let largest = (0..sizes.len()).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap_or(0);
    let members: Vec<usize> = (0..adj.len()).filter(|&v| comp[v] == largest).collect();
    if members.len() < 2 {
        return (0, 0.0);
    }

    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    let mut diameter = 0;
    let mut total: u128 = 0;
    for &s in &members {
        for &v in &members {
            dist[v] = usize::MAX;
        }
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    diameter = diameter.max(dist[v]);
                    total += dist[v] as u128;
                    queue.push_back(v);
                }
            }
        }
    }
    let k = members.len() as f64;
    (diameter, total as f64 / (k * (k - 1.0)))
}

/// Pearson correlation of endpoint degrees, each edge taken in both
/// directions.
fn assortativity(adj: &[Vec<usize>]) -> Option<f64> {
    let (mut n, mut sx, mut sxx, mut sxy) = (0u128, 0u128, 0u128, 0u128);
    for nb in adj {
        let du = nb.len() as u128;
        for &v in nb {
            let dv = adj[v].len() as u128;
            n += 1;
            sx += du;
            sxx += du * du;
            sxy += du * dv;
        }
    }
    if n == 0 {
        return None;
    }
    // Symmetric sampling makes both marginals identical.
    let num = n as f64 * sxy as f64 - (sx as f64) * (sx as f64);
    let var = n * sxx - sx * sx;
    if var == 0 {
        return None;
    }
    Some(num / var as f64)
}
