use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHED};
use crate::profile::Profile;
use crate::rmq::{argmax_over_nonneighbors, max_over_nonneighbors};

/// The star `St(v)` (union of the squares and edges at `v`), the fibres of its
/// vertices, the values `k_i(z) = max{π(x)(d(x,z)+i) : x ∈ Fib(z)}` and `r` on
/// every star vertex.
#[derive(Clone, Debug)]
pub struct StarRecord {
    pub center: usize,
    pub first_neighbors: Vec<usize>,
    /// Second neighbours inside the star with their two common neighbours with `v`.
    pub second_neighbors: Vec<(usize, [usize; 2])>,
    /// Star vertices, sorted.
    pub vertices: Vec<usize>,
    /// `k_0..k_4` per star vertex, aligned with `vertices`.
    pub k_values: Vec<[f64; 5]>,
    /// `r` per star vertex, aligned with `vertices`.
    pub eccentricities: Vec<f64>,
    /// Gate in the star of every vertex.
    pub gate: Vec<usize>,
    /// Distance of every vertex to the star.
    pub dist_to_star: Vec<u32>,
}

impl StarRecord {
    /// `r(z)` when `z` belongs to the star.
    pub fn radius(&self, z: usize) -> Option<f64> {
        self.vertices.binary_search(&z).ok().map(|i| self.eccentricities[i])
    }

    pub fn contains(&self, z: usize) -> bool {
        self.vertices.binary_search(&z).is_ok()
    }

    /// Common neighbours of `v` and a second neighbour `w` of the star.
    pub fn commons(&self, w: usize) -> Option<[usize; 2]> {
        self.second_neighbors.iter().find(|e| e.0 == w).map(|e| e.1)
    }
}

/// Builds `St(v)` and evaluates `r` on all of it from one multi-source BFS.
pub fn star_and_eccentricities(g: &Graph, pi: &Profile, v: usize) -> Result<StarRecord> {
    let n = g.n();
    if v >= n {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let first: Vec<usize> = g.neighbors(v).to_vec();
    let mut commons: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut touched = Vec::new();
    for &u in &first {
        for &w in g.neighbors(u) {
            if w == v {
                continue;
            }
            if g.has_edge(v, w) {
                return Err(Error::invariant(format!("triangle {v}-{u}-{w}")));
            }
            if commons[w].is_empty() {
                touched.push(w);
            }
            commons[w].push(u);
        }
    }
    let mut second = Vec::new();
    for &w in &touched {
        match commons[w].len() {
            1 => {}
            2 => second.push((w, [commons[w][0], commons[w][1]])),
            _ => return Err(Error::invariant(format!("{v} and {w} have more than two common neighbours"))),
        }
    }
    second.sort_unstable();
    let mut vertices: Vec<usize> = first.iter().copied().chain(second.iter().map(|e| e.0)).collect();
    vertices.push(v);
    vertices.sort_unstable();

    // fibres: gate and distance to the star
    let mut gate = vec![usize::MAX; n];
    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    for &z in &vertices {
        gate[z] = z;
        dist[z] = 0;
        queue.push_back(z);
    }
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                gate[y] = gate[x];
                queue.push_back(y);
            }
        }
    }
    let local = |z: usize| vertices.binary_search(&z).unwrap();
    let mut k = vec![[0.0f64; 5]; vertices.len()];
    for &(x, p) in pi.support() {
        let kz = &mut k[local(gate[x])];
        for (i, slot) in kz.iter_mut().enumerate() {
            *slot = slot.max(p * (dist[x] + i as u32) as f64);
        }
    }
    let kv = |z: usize, i: usize| k[local(z)][i];

    let h = g.induced(&vertices);
    let is_first: Vec<bool> = vertices.iter().map(|&z| g.has_edge(v, z)).collect();
    let is_second: Vec<bool> = vertices.iter().map(|&z| z != v && !g.has_edge(v, z)).collect();
    let masked = |i: usize, pred: &[bool]| -> Vec<f64> {
        (0..vertices.len()).map(|j| if pred[j] { k[j][i] } else { 0.0 }).collect()
    };
    let far3_second = max_over_nonneighbors(&h, &masked(3, &is_second));
    let far3_first = max_over_nonneighbors(&h, &masked(3, &is_first));
    let kappa4 = masked(4, &is_second);
    let w_u = argmax_over_nonneighbors(&h, &kappa4, true);

    let mut ecc = vec![0.0f64; vertices.len()];
    // r(v)
    let mut rv = kv(v, 0);
    for &u in &first {
        rv = rv.max(kv(u, 1));
    }
    for &(w, _) in &second {
        rv = rv.max(kv(w, 2));
    }
    ecc[local(v)] = rv;

    // two largest k_2 among first neighbours
    let mut top: [(f64, usize); 2] = [(f64::NEG_INFINITY, usize::MAX); 2];
    for &u in &first {
        let val = kv(u, 2);
        if val > top[0].0 {
            top[1] = top[0];
            top[0] = (val, u);
        } else if val > top[1].0 {
            top[1] = (val, u);
        }
    }
    // per first neighbour, two largest k_2 among its second neighbours in the star
    let mut second_top: Vec<[(f64, usize); 2]> = vec![[(f64::NEG_INFINITY, usize::MAX); 2]; vertices.len()];
    for &(w, us) in &second {
        let val = kv(w, 2);
        for u in us {
            let t = &mut second_top[local(u)];
            if val > t[0].0 {
                t[1] = t[0];
                t[0] = (val, w);
            } else if val > t[1].0 {
                t[1] = (val, w);
            }
        }
    }
    for &u in &first {
        let lu = local(u);
        let mut r = kv(v, 1).max(kv(u, 0));
        let other = if top[0].1 == u { top[1].0 } else { top[0].0 };
        r = r.max(other);
        for &w in g.neighbors(u) {
            if let Ok(j) = vertices.binary_search(&w) {
                if is_second[j] {
                    r = r.max(k[j][1]);
                }
            }
        }
        ecc[lu] = r.max(far3_second[lu]);
    }

    // k_4 over second neighbours sharing no first neighbour with w
    let mut fourth = vec![0.0f64; vertices.len()];
    let mut undecided = Vec::new();
    for &(w, [u1, u2]) in &second {
        let a = w_u[local(u1)].filter(|&j| kappa4[j] > 0.0);
        let b = w_u[local(u2)].filter(|&j| kappa4[j] > 0.0);
        let (Some(a), Some(b)) = (a, b) else {
            continue;
        };
        if !g.has_edge(vertices[a], u2) {
            fourth[local(w)] = kappa4[a];
        } else if !g.has_edge(vertices[b], u1) {
            fourth[local(w)] = kappa4[b];
        } else {
            undecided.push((w, u1, u2));
        }
    }
    if !undecided.is_empty() {
        let mut edges: Vec<(usize, usize)> = h.edges().collect();
        for &(w, u1, u2) in &undecided {
            let lw = local(w);
            for u in [u1, u2] {
                for &x in g.neighbors(u) {
                    if let Ok(j) = vertices.binary_search(&x) {
                        if j != lw {
                            edges.push((lw.min(j), lw.max(j)));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let augmented = Graph::from_edges_unchecked(vertices.len(), &edges)?;
        let best = argmax_over_nonneighbors(&augmented, &kappa4, true);
        for &(w, _, _) in &undecided {
            let lw = local(w);
            fourth[lw] = best[lw].map_or(0.0, |j| kappa4[j]);
        }
    }
    for &(w, [u1, u2]) in &second {
        let lw = local(w);
        let mut r = kv(v, 2).max(kv(w, 0)).max(kv(u1, 1)).max(kv(u2, 1));
        for u in [u1, u2] {
            let t = second_top[local(u)];
            r = r.max(if t[0].1 == w { t[1].0 } else { t[0].0 });
        }
        ecc[lw] = r.max(far3_first[lw]).max(fourth[lw]);
    }
    Ok(StarRecord {
        center: v,
        first_neighbors: first,
        second_neighbors: second,
        vertices,
        k_values: k,
        eccentricities: ecc,
        gate,
        dist_to_star: dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::radius::radius_value;
    use crate::recognize::Class;

    fn check(g: &Graph, pi: &Profile) {
        for v in 0..g.n() {
            let s = star_and_eccentricities(g, pi, v).unwrap();
            for (i, &z) in s.vertices.iter().enumerate() {
                assert_eq!(s.eccentricities[i], radius_value(g, pi, z), "star of {v}, vertex {z}");
            }
        }
    }

    #[test]
    fn small_examples() {
        let p5 = gen::path(5);
        let s = star_and_eccentricities(&p5, &Profile::unit(5), 2).unwrap();
        assert_eq!(s.vertices, vec![1, 2, 3]);
        assert_eq!(s.eccentricities, vec![3.0, 2.0, 3.0]);
        let grid = gen::square_grid(4, 4);
        let s = star_and_eccentricities(&grid, &Profile::unit(16), 5).unwrap();
        assert_eq!(s.vertices.len(), 9);
        check(&grid, &Profile::unit(16));
    }

    #[test]
    fn grid_plus_path_values() {
        let gp = gen::grid_plus_path(4);
        let s = star_and_eccentricities(&gp.graph, &gp.profile, gp.v).unwrap();
        assert_eq!(s.radius(gp.v), Some(70.0));
        assert_eq!(s.radius(gp.z), Some(65.0));
        assert_eq!(s.radius(gp.z_vertical), Some(65.0));
    }

    #[test]
    fn matches_bfs_on_corpus() {
        let mut graphs = vec![gen::square_grid(5, 5), gen::grid_plus_path(2).graph];
        for seed in 0..6 {
            graphs.push(gen::block_tree(&gen::blocks_for(Class::CubeFreeMedian), 50, seed));
        }
        for (i, g) in graphs.iter().enumerate() {
            for s in 0..4 {
                check(g, &gen::random_profile(g.n(), s % 2 == 1, 13 * i as u64 + s));
            }
        }
    }
}
