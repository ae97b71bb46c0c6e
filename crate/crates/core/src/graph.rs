//! Undirected simple graphs over dense `0..n` node indices, plus the traversal
//! primitives everything else is built on.

use std::collections::VecDeque;

/// Hop count marking an unreachable pair.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph with sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Self loops and duplicates are dropped.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} nodes");
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { adj }
    }

    /// Takes ownership of neighbor lists that are already symmetric.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Self { adj }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 nodes");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    /// `rows x cols` lattice, row-major node numbering.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let id = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Self::from_edges(rows * cols, edges)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn is_connected(&self) -> bool {
        is_connected(&self.adj)
    }

    /// Hop distances from `source` to every node.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop distances from `source` along paths whose intermediate vertices all
    /// satisfy `relay`. Non-relay vertices other than the source are only
    /// ever the last vertex of a path.
    pub fn relay_bfs(&self, source: usize, relay: &[bool]) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            if u != source && !relay[u] {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop distances from `source` inside the subgraph induced by `members`.
    /// Entries for non-members are `UNREACHABLE`.
    pub fn induced_bfs(&self, source: usize, members: &[bool]) -> Vec<u32> {
        debug_assert!(members[source]);
        let mut dist = vec![UNREACHABLE; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if members[v] && dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Component label per member of the induced subgraph (`usize::MAX` for
    /// non-members), numbered in order of lowest member index. Returns the
    /// labels and the component count.
    pub fn induced_components(&self, members: &[bool]) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if !members[start] || label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if members[v] && label[v] == usize::MAX {
                        label[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Cut vertices of the subgraph induced by `members`, ascending.
    pub fn induced_articulation_points(&self, members: &[bool]) -> Vec<usize> {
        let n = self.node_count();
        let mut disc = vec![0usize; n]; // 0 = unvisited
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 1;
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();

        for root in 0..n {
            if !members[root] || disc[root] != 0 {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            stack.push((root, usize::MAX, 0));

            while let Some(&mut (u, parent, ref mut pos)) = stack.last_mut() {
                if let Some(&v) = self.adj[u].get(*pos) {
                    *pos += 1;
                    if !members[v] || v == parent {
                        continue;
                    }
                    if disc[v] == 0 {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }
}

/// True iff one traversal from node 0 reaches every node. The empty graph is
/// treated as connected.
pub fn is_connected(adjacency: &[Vec<usize>]) -> bool {
    let n = adjacency.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == n
}

/// All-pairs hop distances `d(a, b)` in the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopDistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl HopDistanceMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.dist[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.dist[a * self.n..(a + 1) * self.n]
    }

    /// Largest finite entry.
    pub fn diameter(&self) -> u32 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn from_rows(n: usize, dist: Vec<u32>) -> Self {
        assert_eq!(dist.len(), n * n);
        Self { n, dist }
    }
}

/// Breadth-first search from every source.
pub fn all_pairs_hop_dist(graph: &Graph) -> HopDistanceMatrix {
    let n = graph.node_count();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(graph.bfs(s));
    }
    HopDistanceMatrix::from_rows(n, dist)
}
