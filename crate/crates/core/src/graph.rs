//! Compressed adjacency graphs and BFS distances.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Marker for vertices a BFS never reached.
pub const UNREACHED: u32 = u32::MAX;

/// Simple, undirected, connected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops and
    /// disconnected inputs are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let g = Self::build(n, edges)?;
        let comps = g.component_count();
        if comps > 1 {
            return Err(Error::Disconnected { components: comps });
        }
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] but keeps disconnected inputs. Only used for
    /// auxiliary graphs that never leave the crate.
    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Self::build(n, edges)
    }

    fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        // sort and dedup each list, then compact
        let mut new_offsets = vec![0usize; n + 1];
        let mut out = Vec::with_capacity(targets.len());
        for v in 0..n {
            let list = &mut targets[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            let mut last = usize::MAX;
            for &w in list.iter() {
                if w != last {
                    out.push(w);
                    last = w;
                }
            }
            new_offsets[v + 1] = out.len();
        }
        Ok(Graph { offsets: new_offsets, targets: out })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Position of `v` inside the adjacency array of `u`, as a global arc index.
    pub(crate) fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u).binary_search(&v).ok().map(|i| self.offsets[u] + i)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    fn component_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            comps += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        comps
    }

    /// Hop distances from a single vertex.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut queue = VecDeque::with_capacity(self.n());
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] + 1;
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHED {
                    dist[w] = du;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Multi-source BFS: distance to the nearest source.
    pub fn bfs_distances(&self, sources: &[usize]) -> Result<DistanceRow> {
        if sources.is_empty() {
            return Err(Error::invalid("empty source set"));
        }
        let n = self.n();
        let mut dist = vec![UNREACHED; n];
        let mut queue = VecDeque::with_capacity(n);
        let mut srcs: Vec<usize> = sources.to_vec();
        srcs.sort_unstable();
        srcs.dedup();
        for &s in &srcs {
            if s >= n {
                return Err(Error::invalid(format!("source {s} out of range")));
            }
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u] + 1;
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHED {
                    dist[w] = du;
                    queue.push_back(w);
                }
            }
        }
        Ok(DistanceRow { sources: srcs, dist })
    }

    /// Vertices of `B_radius(v)` in BFS order together with their distances.
    pub fn ball(&self, v: usize, radius: u32) -> Vec<(usize, u32)> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut out = vec![(v, 0)];
        dist[v] = 0;
        let mut head = 0;
        while head < out.len() {
            let (u, du) = out[head];
            head += 1;
            if du == radius {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHED {
                    dist[w] = du + 1;
                    out.push((w, du + 1));
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices` (sorted, distinct). Returned graph uses local
    /// indices in the order given, so adjacency stays sorted. May be disconnected.
    pub(crate) fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges_unchecked(vertices.len().max(1), &edges)
            .expect("induced subgraph of a simple graph is simple")
    }

    /// Two-colouring if the graph is bipartite, else an edge inside one colour class.
    pub fn bipartition(&self) -> std::result::Result<Vec<u8>, (usize, usize)> {
        let d = self.bfs(0);
        for (u, v) in self.edges() {
            if d[u] == d[v] {
                return Err((u, v));
            }
        }
        Ok(d.iter().map(|&x| (x % 2) as u8).collect())
    }

    /// Parses the `n m` / `u v` text format. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let a = parts.next();
            let b = parts.next();
            if parts.next().is_some() {
                return Err(Error::Parse { line: line_no, msg: "expected two integers".into() });
            }
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Parse { line: line_no, msg: "expected two integers".into() }),
            };
            let a: usize = a
                .parse()
                .map_err(|e| Error::Parse { line: line_no, msg: format!("{a:?}: {e}") })?;
            let b: usize = b
                .parse()
                .map_err(|e| Error::Parse { line: line_no, msg: format!("{b:?}: {e}") })?;
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a >= n || b >= n {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("endpoint out of range for n={n}"),
                        });
                    }
                    if a == b {
                        return Err(Error::Parse { line: line_no, msg: "self-loop".into() });
                    }
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse { line: 0, msg: format!("duplicate edge {:?}", w[0]) });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// BFS distances from a source set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub sources: Vec<usize>,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    pub fn get(&self, v: usize) -> u32 {
        self.dist[v]
    }
}

/// `w ∈ I(u,v)` given distance rows `du` from `u` and `dv` from `v`.
#[inline]
pub fn in_interval(v: usize, w: usize, du: &[u32], dv: &[u32]) -> bool {
    du[w] + dv[w] == du[v]
}

/// Same test when `d(u,v)` is already known.
#[inline]
pub fn in_interval_with(du: &[u32], dv: &[u32], duv: u32, w: usize) -> bool {
    du[w] + dv[w] == duv
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> Graph {
        let e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let p = path(5);
        assert_eq!(p.bfs_distances(&[0]).unwrap().dist, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.bfs_distances(&[4, 0]).unwrap().dist, vec![0, 1, 2, 1, 0]);
        assert_eq!(cycle(5).bfs(0), vec![0, 1, 2, 2, 1]);
        assert!(p.bfs_distances(&[]).is_err());
    }

    #[test]
    fn intervals() {
        let p = path(5);
        assert!(in_interval(4, 2, &p.bfs(0), &p.bfs(4)));
        let c4 = cycle(4);
        let (d0, d2) = (c4.bfs(0), c4.bfs(2));
        assert!(in_interval(2, 1, &d0, &d2) && in_interval(2, 3, &d0, &d2));
        let c5 = cycle(5);
        assert!(!in_interval(2, 4, &c5.bfs(0), &c5.bfs(2)));
        assert!(in_interval(2, 0, &d0, &d2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(4, &[(0, 1), (2, 3)]),
            Err(Error::Disconnected { components: 2 })
        ));
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert!(Graph::parse("3 2\n0 1\n0 1\n").is_err());
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("3 2\n0 1\n1 5\n").is_err());
    }

    #[test]
    fn roundtrip_text() {
        let g = Graph::parse("# a path\n4 3\n\n0 1\n2 1 # reversed\n2 3\n").unwrap();
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn balls_and_parity() {
        let p = path(6);
        let b: Vec<_> = p.ball(2, 2).into_iter().map(|x| x.0).collect();
        assert_eq!(b.len(), 5);
        assert!(cycle(5).bipartition().is_err());
        assert_eq!(cycle(4).bipartition().unwrap(), vec![0, 1, 0, 1]);
    }
}
