//! Independent oracles shared by the integration tests. Nothing here calls
//! into the traversal code it is used to check.

#![allow(dead_code)]

use cdsbench::{generate_udg, Graph, UdgSpec, UnitDiskGraph};

pub const INF: u32 = u32::MAX;

/// Connected random UDG in a 100x100 square, widening the range until the
/// generator finds a connected draw.
pub fn random_connected_udg(n: usize, seed: u64) -> UnitDiskGraph {
    for r in [35.0, 45.0, 55.0, 70.0, 90.0, 150.0] {
        let spec = UdgSpec::new(n, r, seed).with_area(0.0, 100.0).with_retry_budget(200);
        if let Ok(g) = generate_udg(&spec) {
            return g;
        }
    }
    unreachable!("range 150 covers the whole square")
}

pub fn mask(n: usize, nodes: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in nodes {
        m[v] = true;
    }
    m
}

/// Shortest path whose interior lies in `d`, by enumerating simple paths
/// (depth-first, pruned by the best length so far).
pub fn enumerate_dd(g: &Graph, d: &[bool], a: usize, b: usize) -> u32 {
    fn walk(g: &Graph, d: &[bool], cur: usize, b: usize, seen: &mut [bool], len: u32, best: &mut u32) {
        if cur == b {
            *best = (*best).min(len);
            return;
        }
        if len > 0 && !d[cur] {
            return;
        }
        if len + 1 >= *best {
            return;
        }
        for &v in g.neighbors(cur) {
            if !seen[v] {
                seen[v] = true;
                walk(g, d, v, b, seen, len + 1, best);
                seen[v] = false;
            }
        }
    }
    if a == b {
        return 0;
    }
    let mut seen = vec![false; g.node_count()];
    seen[a] = true;
    let mut best = INF;
    walk(g, d, a, b, &mut seen, 0, &mut best);
    best
}

/// Floyd-Warshall where only members of `relay` may serve as intermediate
/// vertices. With `relay` all true this is plain all-pairs shortest paths.
pub fn floyd_warshall_relay(g: &Graph, relay: &[bool]) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut d = vec![vec![INF; n]; n];
    for a in 0..n {
        d[a][a] = 0;
        for &b in g.neighbors(a) {
            d[a][b] = 1;
        }
    }
    for k in (0..n).filter(|&k| relay[k]) {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    floyd_warshall_relay(g, &vec![true; g.node_count()])
}

/// Union-find connectivity of an adjacency list.
pub fn union_find_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut sets = n;
    for (a, list) in adj.iter().enumerate() {
        for &b in list {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                sets -= 1;
            }
        }
    }
    sets <= 1
}

fn induced_connected(g: &Graph, members: &[bool]) -> bool {
    let adj: Vec<Vec<usize>> = (0..g.node_count())
        .filter(|&v| members[v])
        .map(|v| g.neighbors(v).iter().copied().filter(|&u| members[u]).collect())
        .collect();
    // relabel members densely
    let ids: Vec<usize> = (0..g.node_count()).filter(|&v| members[v]).collect();
    let index = |v: usize| ids.binary_search(&v).unwrap();
    let dense: Vec<Vec<usize>> = adj.iter().map(|l| l.iter().map(|&u| index(u)).collect()).collect();
    union_find_connected(&dense)
}

/// Brute-force CDS check: domination by direct scan, connectivity by
/// union-find on the induced subgraph.
pub fn is_cds(g: &Graph, nodes: &[usize]) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let m = mask(g.node_count(), nodes);
    let dominated = (0..g.node_count()).all(|v| m[v] || g.neighbors(v).iter().any(|&u| m[u]));
    dominated && induced_connected(g, &m)
}

/// Cut vertices of the induced subgraph by deleting each member in turn.
pub fn cut_vertices(g: &Graph, nodes: &[usize]) -> Vec<usize> {
    let m = mask(g.node_count(), nodes);
    nodes
        .iter()
        .copied()
        .filter(|&v| {
            let mut without = m.clone();
            without[v] = false;
            !induced_connected(g, &without)
        })
        .collect()
}

/// Number of pairs with `d_D > factor * d`, via the Floyd-Warshall oracles.
pub fn audit_stretch(g: &Graph, nodes: &[usize], factor: u32) -> usize {
    let n = g.node_count();
    let d = floyd_warshall(g);
    let dd = floyd_warshall_relay(g, &mask(n, nodes));
    let mut violations = 0;
    for a in 0..n {
        for b in a + 1..n {
            if dd[a][b] == INF || dd[a][b] > factor * d[a][b] {
                violations += 1;
            }
        }
    }
    violations
}

pub fn fixed_family() -> Vec<(&'static str, Graph)> {
    vec![
        ("path6", Graph::path(6)),
        ("cycle6", Graph::cycle(6)),
        ("star4", Graph::star(4)),
        ("complete5", Graph::complete(5)),
        ("grid3x3", Graph::grid(3, 3)),
    ]
}
