use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHED};

/// One Θ-class: its edges, each written `(near, far)` where `near` lies on the
/// side of the root vertex 0.
#[derive(Clone, Debug)]
pub struct ThetaClass {
    pub edges: Vec<(usize, usize)>,
}

/// Θ-classes of a median graph, found from a BFS rooted at vertex 0: an edge
/// `uv` with `v` one level further opens a new class exactly when `u` is the
/// only lower neighbour of `v`; otherwise it is opposite to an edge of a square.
#[derive(Clone, Debug)]
pub struct ThetaDecomposition {
    pub classes: Vec<ThetaClass>,
    class_of_arc: Vec<usize>,
    level: Vec<u32>,
}

impl ThetaDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class id of the edge `uv`.
    pub fn class_of(&self, g: &Graph, u: usize, v: usize) -> usize {
        self.class_of_arc[g.arc_index(u, v).expect("not an edge")]
    }

    /// `d(0, x)`.
    pub fn level(&self, x: usize) -> u32 {
        self.level[x]
    }

    /// `H(a,b)` as a membership mask over all vertices.
    pub fn halfspace(&self, g: &Graph, a: usize, b: usize) -> Vec<bool> {
        let all = vec![true; g.n()];
        let mut mask = vec![false; g.n()];
        for x in self.halfspace_in(g, a, b, &all) {
            mask[x] = true;
        }
        mask
    }

    /// `R ∩ H(a,b)` for a convex region `R` given as a mask, sorted. BFS inside
    /// `R` from the class endpoints on the side of `a`, never crossing the class.
    pub fn halfspace_in(&self, g: &Graph, a: usize, b: usize, region: &[bool]) -> Vec<usize> {
        let c = self.class_of(g, a, b);
        let near_side = self.level[a] < self.level[b];
        let mut seen = vec![false; g.n()];
        let mut queue = VecDeque::new();
        for &(x, y) in &self.classes[c].edges {
            let s = if near_side { x } else { y };
            if region[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &y in g.neighbors(x) {
                if region[y] && !seen[y] && self.class_of(g, x, y) != c {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks every class against `H(u,v) = {x : d(x,u) < d(x,v)}` for one of its
    /// edges, and that the class is exactly the cut between the two sides.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (c, class) in self.classes.iter().enumerate() {
            let (a, b) = class.edges[0];
            let (da, db) = (g.bfs(a), g.bfs(b));
            let side: Vec<bool> = (0..g.n()).map(|x| da[x] < db[x]).collect();
            let h = self.halfspace(g, a, b);
            if h != side {
                return Err(Error::ClassMismatch(format!("halfspace of class {c} disagrees with distances")));
            }
            for (x, y) in g.edges() {
                if (side[x] != side[y]) != (self.class_of(g, x, y) == c) {
                    return Err(Error::ClassMismatch(format!("edge {x}-{y} misplaced for class {c}")));
                }
            }
        }
        Ok(())
    }
}

/// Θ-classes of a median graph. Fails with a class-mismatch error when the
/// square structure required by the propagation is missing or inconsistent.
pub fn theta_classes(g: &Graph) -> Result<ThetaDecomposition> {
    let n = g.n();
    let level = g.bfs(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| level[x]);
    let mut class_of_arc = vec![usize::MAX; 2 * g.m()];
    let mut classes: Vec<ThetaClass> = Vec::new();
    let set = |arcs: &mut Vec<usize>, u: usize, v: usize, c: usize| {
        arcs[g.arc_index(u, v).unwrap()] = c;
        arcs[g.arc_index(v, u).unwrap()] = c;
    };
    for &v in &order {
        let down: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| level[u] + 1 == level[v]).collect();
        if g.neighbors(v).iter().any(|&u| level[u] == level[v]) {
            return Err(Error::ClassMismatch(format!("vertex {v} has a neighbour on its own level")));
        }
        if down.len() == 1 {
            set(&mut class_of_arc, down[0], v, classes.len());
            classes.push(ThetaClass { edges: vec![(down[0], v)] });
            continue;
        }
        for &u in &down {
            // opposite edge x-w of the square x u v w, w another lower neighbour
            let mut found = None;
            for &w in down.iter().filter(|&&w| w != u) {
                let Some(x) = common_lower(g, &level, u, w) else {
                    return Err(Error::ClassMismatch(format!("no square below {u}-{v}-{w}")));
                };
                let c = class_of_arc[g.arc_index(x, w).unwrap()];
                match found {
                    None => found = Some(c),
                    Some(prev) if prev != c => {
                        return Err(Error::ClassMismatch(format!("edge {u}-{v} lies in two classes")));
                    }
                    _ => {}
                }
            }
            let c = found.unwrap();
            set(&mut class_of_arc, u, v, c);
            classes[c].edges.push((u, v));
        }
    }
    // a median graph meets each class in a matching
    let mut owner = vec![usize::MAX; n];
    for (c, class) in classes.iter().enumerate() {
        for &(x, y) in &class.edges {
            for z in [x, y] {
                if owner[z] == c {
                    return Err(Error::ClassMismatch(format!("class {c} is not a matching at {z}")));
                }
                owner[z] = c;
            }
        }
    }
    Ok(ThetaDecomposition { classes, class_of_arc, level })
}

fn common_lower(g: &Graph, level: &[u32], u: usize, w: usize) -> Option<usize> {
    let (a, b) = (g.neighbors(u), g.neighbors(w));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if level[a[i]] + 1 == level[u] {
                    return Some(a[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    None
}

/// A vertex of the convex region minimising the total distance to the region:
/// starting from its smallest vertex, step to the neighbour whose side of the
/// edge holds a strict majority of the region.
pub fn median_vertex(g: &Graph, region: &[usize]) -> Result<usize> {
    let Some(&start) = region.iter().min() else {
        return Err(Error::invalid("empty region"));
    };
    let n = g.n();
    let mut mask = vec![false; n];
    for &x in region {
        mask[x] = true;
    }
    let size = region.len();
    let mut x = start;
    let mut dist = vec![UNREACHED; n];
    // first[w]: the (at most few) neighbours of x on geodesics from x to w
    let mut first: Vec<Vec<usize>> = vec![Vec::new(); n];
    loop {
        let mut queue = VecDeque::new();
        let mut visited = Vec::with_capacity(size);
        dist[x] = 0;
        queue.push_back(x);
        let mut count = vec![0usize; g.degree(x)];
        while let Some(a) = queue.pop_front() {
            visited.push(a);
            for &b in g.neighbors(a) {
                if !mask[b] {
                    continue;
                }
                if dist[b] == UNREACHED {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
                if dist[b] == dist[a] + 1 {
                    if a == x {
                        first[b].push(b);
                    } else {
                        for i in 0..first[a].len() {
                            let f = first[a][i];
                            if !first[b].contains(&f) {
                                first[b].push(f);
                            }
                        }
                    }
                }
            }
        }
        for &w in &visited {
            for &f in &first[w] {
                count[g.neighbors(x).binary_search(&f).unwrap()] += 1;
            }
        }
        for &w in &visited {
            dist[w] = UNREACHED;
            first[w].clear();
        }
        let best = (0..count.len()).filter(|&i| 2 * count[i] > size).max_by_key(|&i| (count[i], std::cmp::Reverse(i)));
        match best {
            Some(i) => x = g.neighbors(x)[i],
            None => return Ok(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::all_pairs;
    use crate::recognize::Class;

    fn sizes(t: &ThetaDecomposition) -> Vec<usize> {
        let mut s: Vec<usize> = t.classes.iter().map(|c| c.edges.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    #[test]
    fn small_examples() {
        let tree = gen::random_tree(20, 3);
        let t = theta_classes(&tree).unwrap();
        assert_eq!(t.len(), 19);
        assert_eq!(sizes(&theta_classes(&gen::cycle(4)).unwrap()), vec![2, 2]);
        assert_eq!(sizes(&theta_classes(&gen::square_grid(2, 3)).unwrap()), vec![3, 2, 2]);
    }

    #[test]
    fn rejects_non_median() {
        assert!(matches!(theta_classes(&gen::cycle(5)), Err(Error::ClassMismatch(_))));
        assert!(theta_classes(&gen::complete_bipartite(2, 3)).is_err());
    }

    #[test]
    fn halfspaces_match_distances() {
        let mut graphs = vec![gen::square_grid(5, 6), gen::hypercube(3), gen::grid_plus_path(3).graph];
        for seed in 0..5 {
            graphs.push(gen::block_tree(&gen::blocks_for(Class::CubeFreeMedian), 60, seed));
        }
        for g in graphs {
            theta_classes(&g).unwrap().validate(&g).unwrap();
        }
    }

    #[test]
    fn median_examples() {
        assert_eq!(median_vertex(&gen::path(4), &[0, 1, 2, 3]).unwrap(), 1);
        assert_eq!(median_vertex(&gen::star(3), &[0, 1, 2, 3]).unwrap(), 0);
        assert_eq!(median_vertex(&gen::cycle(4), &[0, 1, 2, 3]).unwrap(), 0);
        assert!(median_vertex(&gen::path(3), &[]).is_err());
    }

    #[test]
    fn median_minimises_total_distance() {
        for seed in 0..8 {
            let g = gen::block_tree(&gen::blocks_for(Class::CubeFreeMedian), 80, seed);
            let dm = all_pairs(&g).unwrap();
            let t = theta_classes(&g).unwrap();
            // whole graph and a few halfspaces as convex regions
            let mut regions = vec![(0..g.n()).collect::<Vec<_>>()];
            for (a, b) in g.edges().step_by(17) {
                regions.push(t.halfspace_in(&g, a, b, &vec![true; g.n()]));
            }
            for r in regions {
                let m = median_vertex(&g, &r).unwrap();
                let sum = |x: usize| r.iter().map(|&y| dm.get(x, y) as u64).sum::<u64>();
                let best = r.iter().map(|&x| sum(x)).min().unwrap();
                assert!(r.contains(&m));
                assert_eq!(sum(m), best);
            }
        }
    }
}
