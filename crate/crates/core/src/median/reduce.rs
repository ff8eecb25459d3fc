use std::collections::VecDeque;

use serde::Serialize;

use super::star::{star_and_eccentricities, StarRecord};
use super::theta::{median_vertex, theta_classes, ThetaDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;

/// The fibre of `z` in `St(v)` and its boundary tree `Υ`.
#[derive(Clone, Debug)]
pub struct FiberBoundary {
    pub z: usize,
    /// Gate in `St(v)` of every vertex.
    pub gate: Vec<usize>,
    /// Boundary vertices, sorted.
    pub vertices: Vec<usize>,
    /// Tree adjacency in local indices of `vertices`.
    pub adjacency: Vec<Vec<usize>>,
}

impl FiberBoundary {
    pub fn fiber(&self) -> Vec<usize> {
        (0..self.gate.len()).filter(|&x| self.gate[x] == self.z).collect()
    }

    /// Vertices of the tree path from `z` to `u`.
    pub fn path_from_z(&self, u: usize) -> Option<Vec<usize>> {
        let s = self.vertices.binary_search(&self.z).ok()?;
        let t = self.vertices.binary_search(&u).ok()?;
        let mut parent = vec![usize::MAX; self.vertices.len()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.adjacency[a] {
                if parent[b] == usize::MAX {
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        let mut path = vec![self.vertices[t]];
        let mut x = t;
        while x != s {
            x = parent[x];
            path.push(self.vertices[x]);
        }
        path.reverse();
        Some(path)
    }
}

/// Boundary of the fibre of `z ∈ N(v)` in `St(v)`.
pub fn fiber_boundary(g: &Graph, v: usize, z: usize) -> Result<FiberBoundary> {
    if !g.has_edge(v, z) {
        return Err(Error::invalid(format!("{z} is not a neighbour of {v}")));
    }
    let star = star_and_eccentricities(g, &Profile::unit(g.n()), v)?;
    boundary_from_star(g, &star, z)
}

pub(crate) fn boundary_from_star(g: &Graph, star: &StarRecord, z: usize) -> Result<FiberBoundary> {
    let gate = star.gate.clone();
    let vertices: Vec<usize> = (0..g.n())
        .filter(|&x| gate[x] == z && g.neighbors(x).iter().any(|&y| gate[y] != z))
        .collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    let mut edges = 0;
    for (i, &x) in vertices.iter().enumerate() {
        for &y in g.neighbors(x) {
            if let Ok(j) = vertices.binary_search(&y) {
                adjacency[i].push(j);
                edges += 1;
            }
        }
    }
    edges /= 2;
    let mut seen = vec![false; vertices.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(a) = stack.pop() {
        for &b in &adjacency[a] {
            if !seen[b] {
                seen[b] = true;
                reached += 1;
                stack.push(b);
            }
        }
    }
    if reached != vertices.len() || edges + 1 != vertices.len() {
        return Err(Error::invariant(format!("boundary of the fibre of {z} is not a tree")));
    }
    Ok(FiberBoundary { z, gate, vertices, adjacency })
}

/// Local minimum of `r` on a tree by centroid search: `r(u) ≤ r(u')` for all
/// tree neighbours `u'`. `r_of` is asked for the centroid and its neighbours.
pub(crate) fn tree_local_min(adjacency: &[Vec<usize>], mut r_of: impl FnMut(usize) -> Result<f64>) -> Result<usize> {
    let n = adjacency.len();
    let mut alive = vec![true; n];
    let mut root = 0;
    let mut size = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    loop {
        // sizes in the current component
        let mut order = vec![root];
        parent[root] = root;
        let mut i = 0;
        while i < order.len() {
            let a = order[i];
            i += 1;
            for &b in &adjacency[a] {
                if alive[b] && b != parent[a] {
                    parent[b] = a;
                    order.push(b);
                }
            }
        }
        for &a in order.iter().rev() {
            size[a] = 1 + adjacency[a].iter().filter(|&&b| alive[b] && parent[b] == a && b != a).map(|&b| size[b]).sum::<usize>();
        }
        let total = order.len();
        let mut c = root;
        loop {
            let heavy = adjacency[c].iter().copied().find(|&b| alive[b] && parent[b] == c && b != c && 2 * size[b] > total);
            match heavy {
                Some(b) => c = b,
                None => break,
            }
        }
        let rc = r_of(c)?;
        let mut best: Option<(f64, usize)> = None;
        for &b in &adjacency[c] {
            let rb = r_of(b)?;
            if rb < rc && best.is_none_or(|(r, x)| rb < r || (rb == r && b < x)) {
                best = Some((rb, b));
            }
        }
        let Some((_, b)) = best else { return Ok(c) };
        if !alive[b] {
            return Err(Error::invariant("centroid search left its component"));
        }
        alive[c] = false;
        root = b;
    }
}

/// Local minimum of `r` on the boundary tree.
pub fn local_min_on_boundary_tree(g: &Graph, pi: &Profile, upsilon: &FiberBoundary) -> Result<usize> {
    let mut cache: std::collections::HashMap<usize, f64> = std::collections::HashMap::new();
    let local = tree_local_min(&upsilon.adjacency, |i| {
        let x = upsilon.vertices[i];
        if let Some(&r) = cache.get(&x) {
            return Ok(r);
        }
        let star = star_and_eccentricities(g, pi, x)?;
        for (j, &y) in star.vertices.iter().enumerate() {
            cache.insert(y, star.eccentricities[j]);
        }
        Ok(cache[&x])
    })?;
    Ok(upsilon.vertices[local])
}

/// Position of `v` relative to its star.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NeighborClass {
    /// No vertex of `St(v)` has smaller `r`.
    LocalMin,
    /// One or two improving neighbours, by increasing index.
    Improving { neighbors: Vec<usize> },
    /// No improving neighbour and a unique improving second neighbour.
    SecondOnly { w: usize },
}

/// Classifies `v` from its star.
pub fn improving_neighbor_analysis(g: &Graph, pi: &Profile, v: usize, star: &StarRecord) -> Result<NeighborClass> {
    let _ = (g, pi);
    if star.center != v {
        return Err(Error::invalid(format!("star is centred at {}, not {v}", star.center)));
    }
    let rv = star.radius(v).unwrap();
    let improving: Vec<usize> = star.first_neighbors.iter().copied().filter(|&u| star.radius(u).unwrap() < rv).collect();
    if improving.len() > 2 {
        return Err(Error::invariant(format!("{v} has {} improving neighbours", improving.len())));
    }
    if !improving.is_empty() {
        return Ok(NeighborClass::Improving { neighbors: improving });
    }
    let seconds: Vec<usize> =
        star.second_neighbors.iter().map(|e| e.0).filter(|&w| star.radius(w).unwrap() < rv).collect();
    match seconds.len() {
        0 => Ok(NeighborClass::LocalMin),
        1 => Ok(NeighborClass::SecondOnly { w: seconds[0] }),
        k => Err(Error::invariant(format!("{v} has {k} improving second neighbours and no improving neighbour"))),
    }
}

/// Which branch of the reduction fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReduceCase {
    Case0,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
}

/// Outcome of one reduction.
#[derive(Clone, Debug, PartialEq)]
pub enum Reduction {
    Center { vertex: usize, case: ReduceCase },
    /// `region ∩ H(a,b)`.
    Region { region: Vec<usize>, case: ReduceCase, cut: (usize, usize) },
}

/// One round on the convex region `region` (sorted): a central vertex or the
/// part of the region on the centre's side of a Θ-class. `forced_median`
/// replaces the computed median, and then the halving check is skipped.
pub fn reduce_convex_region(
    g: &Graph,
    pi: &Profile,
    theta: &ThetaDecomposition,
    region: &[usize],
    forced_median: Option<usize>,
) -> Result<Reduction> {
    let v = match forced_median {
        Some(v) => {
            if !region.contains(&v) {
                return Err(Error::invalid(format!("forced median {v} is outside the region")));
            }
            v
        }
        None => median_vertex(g, region)?,
    };
    if region.len() == 1 {
        return Ok(Reduction::Center { vertex: v, case: ReduceCase::Case0 });
    }
    let mut mask = vec![false; g.n()];
    for &x in region {
        mask[x] = true;
    }
    let cut = |a: usize, b: usize, case: ReduceCase| -> Result<Reduction> {
        let next = theta.halfspace_in(g, a, b, &mask);
        if next.is_empty() || next.binary_search(&v).is_ok() {
            return Err(Error::invariant(format!("halfspace H({a},{b}) does not separate the region from {v}")));
        }
        if forced_median.is_none() && 2 * next.len() > region.len() {
            return Err(Error::invariant(format!("region shrank from {} only to {}", region.len(), next.len())));
        }
        Ok(Reduction::Region { region: next, case, cut: (a, b) })
    };
    let star = star_and_eccentricities(g, pi, v)?;
    let z = match improving_neighbor_analysis(g, pi, v, &star)? {
        NeighborClass::LocalMin => return Ok(Reduction::Center { vertex: v, case: ReduceCase::Case0 }),
        NeighborClass::SecondOnly { w } => {
            let z = star.commons(w).unwrap()[0];
            return cut(z, v, ReduceCase::Case1);
        }
        NeighborClass::Improving { neighbors } => neighbors[0],
    };
    let upsilon = boundary_from_star(g, &star, z)?;
    let u = local_min_on_boundary_tree(g, pi, &upsilon)?;
    let star_u = star_and_eccentricities(g, pi, u)?;
    let path = upsilon.path_from_z(u).expect("u lies on the boundary tree");
    let pred = if path.len() >= 2 { path[path.len() - 2] } else { v };
    match improving_neighbor_analysis(g, pi, u, &star_u)? {
        NeighborClass::LocalMin => Ok(Reduction::Center { vertex: u, case: ReduceCase::Case2 }),
        NeighborClass::Improving { neighbors } if neighbors.len() == 1 => cut(neighbors[0], u, ReduceCase::Case4),
        NeighborClass::SecondOnly { w } => {
            let t = star_u.commons(w).unwrap().into_iter().find(|&t| t != pred).unwrap();
            cut(t, u, ReduceCase::Case3)
        }
        NeighborClass::Improving { neighbors } => {
            if let Some(&t) = neighbors.iter().find(|&&t| upsilon.gate[t] != z) {
                return Err(Error::invariant(format!("improving neighbour {t} of {u} leaves the fibre of {z}")));
            }
            cut(z, v, ReduceCase::Case5)
        }
    }
}

/// One round of a solver run.
#[derive(Clone, Debug, Serialize)]
pub struct ReduceRound {
    pub region_size: usize,
    pub case: ReduceCase,
}

/// Result of [`cut_on_best_neighbor_traced`].
#[derive(Clone, Debug, Serialize)]
pub struct MedianRun {
    pub center: usize,
    pub radius: f64,
    pub rounds: Vec<ReduceRound>,
}

/// Central vertex of a cube-free median graph by repeated halving.
pub fn cut_on_best_neighbor(g: &Graph, pi: &Profile) -> Result<usize> {
    cut_on_best_neighbor_traced(g, pi).map(|r| r.center)
}

pub fn cut_on_best_neighbor_traced(g: &Graph, pi: &Profile) -> Result<MedianRun> {
    if pi.n() != g.n() {
        return Err(Error::invalid("profile and graph sizes differ"));
    }
    let theta = theta_classes(g)?;
    let bound = (usize::BITS - (g.n().max(1) - 1).leading_zeros()) as usize + 1;
    let mut region: Vec<usize> = (0..g.n()).collect();
    let mut rounds = Vec::new();
    loop {
        let size = region.len();
        let step = reduce_convex_region(g, pi, &theta, &region, None)?;
        let case = match &step {
            Reduction::Center { case, .. } | Reduction::Region { case, .. } => *case,
        };
        rounds.push(ReduceRound { region_size: size, case });
        if rounds.len() > bound {
            return Err(Error::invariant(format!("more than {bound} reduction rounds")));
        }
        match step {
            Reduction::Center { vertex, .. } => {
                let radius = crate::radius::radius_value(g, pi, vertex);
                return Ok(MedianRun { center: vertex, radius, rounds });
            }
            Reduction::Region { region: next, .. } => region = next,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::radius::{center_bruteforce_small, radius_value};
    use crate::recognize::Class;

    #[test]
    fn boundary_examples() {
        let p5 = gen::path(5);
        let b = fiber_boundary(&p5, 2, 3).unwrap();
        assert_eq!(b.fiber(), vec![3, 4]);
        assert_eq!(b.vertices, vec![3]);
        let grid = gen::square_grid(4, 4);
        assert_eq!(fiber_boundary(&grid, 5, 6).unwrap().vertices, vec![6, 7]);
        let gp = gen::grid_plus_path(4);
        let b = fiber_boundary(&gp.graph, gp.v, gp.z).unwrap();
        assert_eq!(b.vertices, (1..gp.cols).collect::<Vec<_>>());
        assert_eq!(b.fiber(), b.vertices);
        assert_eq!(local_min_on_boundary_tree(&gp.graph, &gp.profile, &b).unwrap(), gp.u);
        assert_eq!(radius_value(&gp.graph, &gp.profile, gp.u), 50.0);
    }

    #[test]
    fn tree_local_min_examples() {
        let adj = vec![vec![1], vec![0, 2], vec![1]];
        let r = [5.0, 3.0, 4.0];
        assert_eq!(tree_local_min(&adj, |i| Ok(r[i])).unwrap(), 1);
        assert_eq!(tree_local_min(&[vec![]], |_| Ok(1.0)).unwrap(), 0);
    }

    #[test]
    fn analysis_examples() {
        let gp = gen::grid_plus_path(4);
        let star = star_and_eccentricities(&gp.graph, &gp.profile, gp.v).unwrap();
        assert_eq!(
            improving_neighbor_analysis(&gp.graph, &gp.profile, gp.v, &star).unwrap(),
            NeighborClass::Improving { neighbors: vec![gp.z, gp.z_vertical] }
        );
        let p5 = gen::path(5);
        let pi = Profile::unit(5);
        let star = star_and_eccentricities(&p5, &pi, 2).unwrap();
        assert_eq!(improving_neighbor_analysis(&p5, &pi, 2, &star).unwrap(), NeighborClass::LocalMin);
        let c4 = gen::cycle(4);
        let pi = Profile::new(4, &[(2, 2.0), (0, 1.0)]).unwrap();
        let star = star_and_eccentricities(&c4, &pi, 0).unwrap();
        assert_eq!(improving_neighbor_analysis(&c4, &pi, 0, &star).unwrap(), NeighborClass::Improving { neighbors: vec![1, 3] });
    }

    #[test]
    fn grid_plus_path_walkthrough() {
        let gp = gen::grid_plus_path(4);
        let theta = theta_classes(&gp.graph).unwrap();
        let all: Vec<usize> = (0..gp.graph.n()).collect();
        let step = reduce_convex_region(&gp.graph, &gp.profile, &theta, &all, Some(gp.v)).unwrap();
        let Reduction::Region { region, case, cut } = step else { panic!("expected a cut") };
        assert_eq!(case, ReduceCase::Case4);
        assert_eq!(cut, (gp.t, gp.u));
        assert_eq!(radius_value(&gp.graph, &gp.profile, gp.t), 45.0);
        assert!(region.contains(&gp.c) && !region.contains(&gp.v));
        assert_eq!(cut_on_best_neighbor(&gp.graph, &gp.profile).unwrap(), gp.c);
        assert_eq!(radius_value(&gp.graph, &gp.profile, gp.c), 20.0);
    }

    #[test]
    fn small_solver_examples() {
        let p5 = gen::path(5);
        let theta = theta_classes(&p5).unwrap();
        let step = reduce_convex_region(&p5, &Profile::unit(5), &theta, &[0, 1, 2, 3, 4], None).unwrap();
        assert_eq!(step, Reduction::Center { vertex: 2, case: ReduceCase::Case0 });
        let p7 = gen::path(7);
        let pi = Profile::new(7, &[(0, 3.0), (6, 1.0)]).unwrap();
        let c = cut_on_best_neighbor(&p7, &pi).unwrap();
        assert_eq!(radius_value(&p7, &pi, c), center_bruteforce_small(&p7, &pi).unwrap().0);
        let grid = gen::square_grid(4, 4);
        let run = cut_on_best_neighbor_traced(&grid, &Profile::unit(16)).unwrap();
        assert_eq!(run.radius, 4.0);
    }

    #[test]
    fn every_case_keeps_the_centre() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..600u64 {
            let g = if seed % 2 == 0 {
                gen::square_grid(2 + (seed as usize / 2) % 4, 2 + (seed as usize / 8) % 4)
            } else {
                gen::block_tree(&gen::blocks_for(Class::CubeFreeMedian), 12 + (seed % 20) as usize, seed)
            };
            let pi = gen::random_profile(g.n(), seed % 3 == 0, seed);
            let (rad, centre) = center_bruteforce_small(&g, &pi).unwrap();
            let theta = theta_classes(&g).unwrap();
            let all: Vec<usize> = (0..g.n()).collect();
            for v in 0..g.n() {
                match reduce_convex_region(&g, &pi, &theta, &all, Some(v)).unwrap() {
                    Reduction::Center { vertex, case } => {
                        seen.insert(case as u8);
                        assert_eq!(radius_value(&g, &pi, vertex), rad);
                    }
                    Reduction::Region { region, case, .. } => {
                        seen.insert(case as u8);
                        assert!(!region.contains(&v));
                        assert!(centre.iter().all(|c| region.contains(c)), "seed {seed} v {v} {case:?}");
                    }
                }
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn exact_on_corpus() {
        let mut graphs = vec![gen::square_grid(6, 7), gen::grid_plus_path(3).graph, gen::random_tree(60, 9)];
        for seed in 0..8 {
            graphs.push(gen::block_tree(&gen::blocks_for(Class::CubeFreeMedian), 70, seed));
        }
        for (i, g) in graphs.iter().enumerate() {
            for s in 0..12 {
                let pi = gen::random_profile(g.n(), s % 3 == 0, 1000 + 17 * i as u64 + s);
                let run = cut_on_best_neighbor_traced(g, &pi).unwrap();
                let (rad, _) = center_bruteforce_small(g, &pi).unwrap();
                assert_eq!(run.radius, rad, "graph {i} seed {s}");
            }
        }
    }
}
