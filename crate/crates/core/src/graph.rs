//! Immutable tree representation, validation, BFS distances, eccentricities
//! and the deterministic diametral path.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Dense vertex identifier in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("not a tree: {reason}")]
    HasCycle { reason: String },
    #[error("not connected: vertex {vertex} is unreachable from vertex 0")]
    NotConnected { vertex: Vertex },
    #[error("a tree needs at least one vertex")]
    Empty,
}

/// A simple connected acyclic graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted so that two trees with the same edge set
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adjacency: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree").field("n", &self.order()).field("edges", &self.edges()).finish()
    }
}

impl Tree {
    /// Builds a tree from an edge list, rejecting anything that is not a tree.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Tree, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut roots: Vec<Vertex> = (0..n).collect();
        fn find(roots: &mut [Vertex], mut x: Vertex) -> Vertex {
            while roots[x] != x {
                roots[x] = roots[roots[x]];
                x = roots[x];
            }
            x
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::HasCycle { reason: format!("edge #{i} ({u},{v}) is a self-loop") });
            }
            if adjacency[u].contains(&v) {
                return Err(GraphError::HasCycle { reason: format!("edge #{i} ({u},{v}) is a duplicate") });
            }
            let (ru, rv) = (find(&mut roots, u), find(&mut roots, v));
            if ru == rv {
                return Err(GraphError::HasCycle { reason: format!("edge #{i} ({u},{v}) closes a cycle") });
            }
            roots[ru] = rv;
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tree = Tree { adjacency };
        let dist = tree.raw_bfs(0);
        if let Some(vertex) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(GraphError::NotConnected { vertex });
        }
        Ok(tree)
    }

    /// Builds a tree from sorted-or-unsorted adjacency lists. Used by
    /// generators that already guarantee tree-ness; still validated.
    pub fn from_adjacency(adjacency: Vec<Vec<Vertex>>) -> Result<Tree, GraphError> {
        let n = adjacency.len();
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Tree::from_edges(n, &edges)
    }

    pub fn single_vertex() -> Tree {
        Tree { adjacency: vec![Vec::new()] }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.order() - 1
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && v < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.order() })
        }
    }

    fn raw_bfs(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// BFS parent pointers from `root`; the root is its own parent.
    pub fn parents_from(&self, root: Vertex) -> Vec<Vertex> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// Vertices in BFS order from `root`.
    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        order
    }

    /// The unique path from `a` to `b`, both endpoints included.
    pub fn path_between(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let parent = self.parents_from(b);
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// Vertices of the component of `t - (from, root)` containing `root`.
    pub fn branch(&self, from: Vertex, root: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order()];
        seen[from] = true;
        seen[root] = true;
        let mut stack = vec![root];
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            out.push(u);
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Height of the branch at `root` seen from `from`, measured from `root`.
    pub fn branch_height(&self, from: Vertex, root: Vertex) -> usize {
        let mut best = 0;
        let mut stack = vec![(root, from, 0usize)];
        while let Some((u, parent, depth)) = stack.pop() {
            best = best.max(depth);
            for &v in &self.adjacency[u] {
                if v != parent {
                    stack.push((v, u, depth + 1));
                }
            }
        }
        best
    }

    /// Largest distance from `v` to a vertex reachable without using any of
    /// the edges `v - x` for `x` in `blocked`.
    pub fn height_avoiding(&self, v: Vertex, blocked: &[Vertex]) -> usize {
        self.adjacency[v]
            .iter()
            .filter(|x| !blocked.contains(x))
            .map(|&x| 1 + self.branch_height(v, x))
            .max()
            .unwrap_or(0)
    }

    /// Returns a copy with edges `remove` deleted and `add` inserted, then
    /// re-validated.
    pub fn rewired(&self, remove: &[(Vertex, Vertex)], add: &[(Vertex, Vertex)]) -> Result<Tree, GraphError> {
        let mut edges: Vec<(Vertex, Vertex)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| !remove.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v)))
            .collect();
        edges.extend_from_slice(add);
        Tree::from_edges(self.order(), &edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Result<Tree, GraphError> {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(self.order(), &edges)
    }
}

/// Unweighted shortest-path lengths from `source`.
pub fn bfs_distances(t: &Tree, source: Vertex) -> Result<Vec<usize>, GraphError> {
    t.check_vertex(source)?;
    Ok(t.raw_bfs(source))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccentricityProfile {
    pub ecc: Vec<usize>,
    pub diameter: usize,
    pub radius: usize,
    /// One vertex, or two adjacent vertices, in increasing order.
    pub centers: Vec<Vertex>,
}

/// Farthest vertex from `source`, smallest id on ties, and its distance row.
fn farthest(t: &Tree, source: Vertex) -> (Vertex, Vec<usize>) {
    let dist = t.raw_bfs(source);
    let mut best = source;
    for v in t.vertices() {
        if dist[v] > dist[best] {
            best = v;
        }
    }
    (best, dist)
}

/// Per-vertex eccentricities.
///
/// In a tree every vertex has a farthest vertex among the two ends of any
/// diametral path, so two sweeps from those ends give all eccentricities.
pub fn eccentricity_profile(t: &Tree) -> EccentricityProfile {
    let (a, _) = farthest(t, 0);
    let (b, from_a) = farthest(t, a);
    let from_b = t.raw_bfs(b);
    let ecc: Vec<usize> = from_a.iter().zip(&from_b).map(|(&x, &y)| x.max(y)).collect();
    let diameter = from_a[b];
    let radius = ecc.iter().copied().min().unwrap_or(0);
    let centers = t.vertices().filter(|&v| ecc[v] == radius).collect();
    EccentricityProfile { ecc, diameter, radius, centers }
}

/// Eccentricities by one BFS per vertex. Slower; kept as the reference the
/// sweep version is checked against.
pub fn eccentricities_all_pairs(t: &Tree) -> Vec<usize> {
    t.vertices().map(|v| t.raw_bfs(v).into_iter().max().unwrap_or(0)).collect()
}

/// All-pairs distance matrix, row-major.
pub fn distance_matrix(t: &Tree) -> Vec<Vec<usize>> {
    t.vertices().map(|v| t.raw_bfs(v)).collect()
}

/// One diametral path `v_0 .. v_d` found by double BFS (smallest id on every
/// tie), oriented so that `v_0 < v_d`.
pub fn diametral_path(t: &Tree) -> Vec<Vertex> {
    let (a, _) = farthest(t, 0);
    let (b, _) = farthest(t, a);
    let mut path = t.path_between(a, b);
    if path.first() > path.last() {
        path.reverse();
    }
    path
}
