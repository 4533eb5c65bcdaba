#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::path::PathBuf;

use javagraph::frontend::{parse_source, SourceUnit};
use javagraph::graph::{EdgeType, ProgramGraph};
use javagraph::taxonomy::NodeType;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn listing1() -> String {
    std::fs::read_to_string(data_dir().join("listing1.java")).unwrap()
}

pub fn parse(src: &str) -> SourceUnit {
    parse_source(src, "Snippet.java").unwrap_or_else(|e| panic!("{e}\n{src}"))
}

/// Loops, nested ifs, empty bodies and single-statement branches.
pub const SNIPPETS: [(&str, &str); 30] = [
    ("empty_class", "class A {}"),
    ("single_if", "class A { void m(boolean c) { if (c) s(); } }"),
    ("if_else_blocks", "class A { int m(int x) { if (x > 0) { return 1; } else { return -1; } } }"),
    ("if_else_single", "class A { int m(int x) { if (x > 0) return 1; else return -1; } }"),
    ("else_if_chain", "class A { int m(int x) { if (x < 0) return -1; else if (x == 0) return 0; else return 1; } }"),
    ("nested_if", "class A { void m(int a, int b) { if (a > 0) { if (b > 0) { a++; } else { b++; } a = a + b; } } }"),
    ("empty_if", "class A { void m(boolean c) { if (c) {} else ; } }"),
    ("while_block", "class A { void m(boolean c) { while (c) { a(); b(); } } }"),
    ("while_single", "class A { void m(int n) { while (n > 0) n--; } }"),
    ("while_empty_block", "class A { void m() { while (busy()) {} } }"),
    ("while_empty_stmt", "class A { void m() { while (busy()); } }"),
    ("for_classic", "class A { int m(int[] xs) { int s = 0; for (int i = 0; i < xs.length; i++) { s += xs[i]; } return s; } }"),
    ("for_no_cond", "class A { void m() { for (;;) { tick(); if (done()) break; } } }"),
    ("for_empty", "class A { void m() { for (int i = 0; i < 10; i++); } }"),
    ("for_each", "class A { int m(java.util.List<Integer> xs) { int s = 0; for (int x : xs) s += x; return s; } }"),
    ("for_each_block", "class A { void m(String[] a) { for (final String s : a) { System.out.println(s); n++; } } }"),
    ("nested_loops", "class A { int m(int n) { int c = 0; for (int i = 0; i < n; i++) { int j = i; while (j > 0) { j /= 2; c++; } } return c; } }"),
    ("do_while", "class A { void m(int n) { do { n--; } while (n > 0); } }"),
    ("switch", "class A { int m(int k) { int r; switch (k) { case 1: case 2: r = 1; break; default: r = 0; } return r; } }"),
    ("try_catch", "class A { void m() { try { a(); b(); } catch (RuntimeException e) { log(e); } finally { close(); } } }"),
    ("try_resources", "class A { void m() throws Exception { try (java.io.InputStream in = open()) { in.read(); } } }"),
    ("labeled_loops", "class A { void m(int[][] g) { outer: for (int[] row : g) { for (int v : row) { if (v < 0) continue outer; if (v == 0) break outer; } } } }"),
    ("lambda_block", "class A { Runnable m(int x) { return () -> { int y = x * 2; use(y); }; } }"),
    ("ternary_and_casts", "class A { long m(Object o, int a) { return o instanceof String ? ((String) o).length() : (long) a << 2; } }"),
    ("anonymous_class", "class A { Object m() { return new Object() { public String toString() { if (x) return \"a\"; return \"b\"; } }; } }"),
    ("constructor_chain", "class A extends B { int f; A() { this(1); } A(int f) { super(f); this.f = f; } }"),
    ("enum_with_body", "enum Color { RED, GREEN { int v() { return 2; } }; int v() { while (true) { return 1; } } }"),
    ("interface_default", "interface I { int K = 3; default int f(int x) { for (int i = 0; i < K; i++) x += i; return x; } void g(); }"),
    ("annotations_generics", "@Deprecated public final class Box<T extends Comparable<T>> { private java.util.Map<String, java.util.List<T>> m = new java.util.HashMap<>(); @SuppressWarnings({\"a\", \"b\"}) <U> U id(U u) { synchronized (this) { return u; } } }"),
    ("arithmetic", "class A { double m(double a, double b) { double c = a * b + (a - b) / 2.0; c = c * c - a % 3; return c + a * 0.5 - b * 1.5; } }"),
];

pub fn snippet_units() -> Vec<(&'static str, SourceUnit)> {
    SNIPPETS.iter().map(|(name, src)| (*name, parse(src))).collect()
}

/// Expected counts of the tree-derived edges, computed from the syntax tree.
pub struct Conservation {
    pub ast: usize,
    pub next_token: usize,
    pub next_sibling: usize,
}

pub fn conservation(unit: &SourceUnit) -> Conservation {
    let nodes = unit.nodes();
    Conservation {
        ast: nodes.len() - 1,
        next_token: nodes.iter().filter(|n| n.children.is_empty()).count().saturating_sub(1),
        next_sibling: nodes.iter().map(|n| n.children.len().saturating_sub(1)).sum(),
    }
}

/// The statement node whose subtree must contain both endpoints of a flow
/// edge, found by walking up from the source to the nearest if/while/for.
pub fn flow_owner(unit: &SourceUnit, src: usize, edge_type: EdgeType) -> Option<usize> {
    let want = match edge_type {
        EdgeType::IfFlow | EdgeType::ElseFlow => NodeType::IfStatement,
        EdgeType::WhileExec | EdgeType::WhileNext => NodeType::WhileStatement,
        EdgeType::ForExec | EdgeType::ForNext => NodeType::ForStatement,
        _ => return None,
    };
    let mut cur = Some(src);
    while let Some(c) = cur {
        if unit.node(c).node_type == want {
            return Some(c);
        }
        cur = unit.node(c).parent;
    }
    None
}

/// True when both endpoints of every flow edge lie under one statement of the
/// right kind.
pub fn flow_edges_local(unit: &SourceUnit, g: &ProgramGraph) -> Result<(), String> {
    for e in g.edges.iter().filter(|e| e.edge_type.is_flow()) {
        // For *_next the source is inside the body, so search upward from
        // whichever endpoint is the condition.
        let probe = match e.edge_type {
            EdgeType::WhileNext | EdgeType::ForNext => e.dst,
            _ => e.src,
        };
        let owner = flow_owner(unit, probe, e.edge_type)
            .ok_or_else(|| format!("{} edge {}->{} has no owning statement", e.edge_type, e.src, e.dst))?;
        if !unit.is_ancestor(owner, e.src) || !unit.is_ancestor(owner, e.dst) {
            return Err(format!("{} edge {}->{} escapes statement {owner}", e.edge_type, e.src, e.dst));
        }
    }
    Ok(())
}

pub fn edge_multiset(g: &ProgramGraph) -> BTreeMap<(EdgeType, usize, usize), usize> {
    let mut m = BTreeMap::new();
    for e in &g.edges {
        *m.entry((e.edge_type, e.src, e.dst)).or_insert(0) += 1;
    }
    m
}

/// Every permutation of `items` (Heap's algorithm).
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    fn heap<T: Clone>(k: usize, a: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a = items.to_vec();
    let mut out = Vec::new();
    heap(a.len(), &mut a, &mut out);
    out
}

// ---- brute-force graph statistics ------------------------------------------

/// Boolean adjacency matrix of the undirected simple graph.
pub fn adjacency_matrix(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in pairs {
        if u != v {
            a[u][v] = true;
            a[v][u] = true;
        }
    }
    a
}

pub struct Reference {
    pub density: f64,
    pub avg_degree: f64,
    pub clustering: f64,
    pub diameter: usize,
    pub avg_path_length: f64,
    pub assortativity: Option<f64>,
}

/// Floyd-Warshall distances, triangle enumeration over all triples and a
/// textbook two-pass Pearson correlation.
pub fn reference_metrics(n: usize, pairs: &[(usize, usize)]) -> Reference {
    let a = adjacency_matrix(n, pairs);
    let deg: Vec<usize> = a.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let m: usize = deg.iter().sum::<usize>() / 2;
    let density = if n < 2 { 0.0 } else { m as f64 / (n * (n - 1) / 2) as f64 };
    let avg_degree = if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 };

    let mut clustering = 0.0;
    for v in 0..n {
        if deg[v] < 2 {
            continue;
        }
        let mut tri = 0;
        for u in 0..n {
            for w in (u + 1)..n {
                if a[v][u] && a[v][w] && a[u][w] {
                    tri += 1;
                }
            }
        }
        clustering += tri as f64 / (deg[v] * (deg[v] - 1) / 2) as f64;
    }
    if n > 0 {
        clustering /= n as f64;
    }

    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    // Largest component, ties to the one containing the smallest id.
    let mut best: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&t| d[s][t] < INF).collect();
        for &t in &comp {
            seen[t] = true;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    let (mut diameter, mut total, mut pairs_n) = (0usize, 0usize, 0usize);
    for &i in &best {
        for &j in &best {
            if i != j {
                diameter = diameter.max(d[i][j]);
                total += d[i][j];
                pairs_n += 1;
            }
        }
    }
    let avg_path_length = if pairs_n == 0 { 0.0 } else { total as f64 / pairs_n as f64 };

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] {
                xs.push(deg[i] as f64);
                ys.push(deg[j] as f64);
            }
        }
    }
    let assortativity = if n < 2 { None } else { pearson(&xs, &ys) };
    Reference {
        density,
        avg_degree,
        clustering,
        diameter,
        avg_path_length,
        assortativity,
    }
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx.sqrt() * vy.sqrt()))
}

/// BFS eccentricity check used to cross-validate the Floyd-Warshall oracle.
pub fn bfs_distances(n: usize, pairs: &[(usize, usize)], s: usize) -> Vec<Option<usize>> {
    let a = adjacency_matrix(n, pairs);
    let mut d = vec![None; n];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for v in 0..n {
            if a[u][v] && d[v].is_none() {
                d[v] = Some(d[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    d
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
