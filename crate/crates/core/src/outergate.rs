//! Outergates: for `z` outside `S`, a vertex one step short of `B_1(S)` along a
//! geodesic towards `S`, chosen to see as much of `S` as possible.

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHED};

#[derive(Clone, Debug)]
pub struct OutergateMap {
    pub target: Vec<usize>,
    in_target: Vec<bool>,
    /// `d(z, S)` for every vertex.
    pub dist_to_target: Vec<u32>,
    // best[z] for every z outside S; equals z on N(S)
    best: Vec<usize>,
    // |N(x) ∩ S| for x in N(S)
    score: Vec<u32>,
    /// Vertices outside `S` in nondecreasing distance to `S`.
    pub order: Vec<usize>,
}

impl OutergateMap {
    /// Outergate of `z` when `d(z,S) ≥ 2`; `None` for `z ∈ B_1(S)`.
    pub fn gate(&self, z: usize) -> Option<usize> {
        (self.dist_to_target[z] >= 2).then(|| self.best[z])
    }

    /// Like [`gate`](Self::gate) but maps `z ∈ N(S)` to itself.
    pub fn gate_or_self(&self, z: usize) -> usize {
        assert!(!self.in_target[z], "{z} lies in the target set");
        self.best[z]
    }

    pub fn in_target(&self, z: usize) -> bool {
        self.in_target[z]
    }

    /// `|N(x) ∩ S|` for `x ∈ N(S)`.
    pub fn score(&self, x: usize) -> u32 {
        self.score[x]
    }
}

/// Layered BFS from `s` with score propagation: every `z ∉ S` gets the vertex of
/// `B_1(S)` at distance `d(z,S) − 1` from `z` with the most neighbours in `S`
/// (smallest index on ties).
pub fn best_preneighbor_map(g: &Graph, s: &[usize]) -> Result<OutergateMap> {
    let n = g.n();
    let row = g.bfs_distances(s)?;
    let mut target = row.sources.clone();
    target.sort_unstable();
    if target.len() == n {
        return Err(Error::invalid("target set covers the whole graph"));
    }
    let dist = row.dist;
    let mut in_target = vec![false; n];
    for &v in &target {
        in_target[v] = true;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| !in_target[v]).collect();
    order.sort_by_key(|&v| dist[v]);
    let mut best = vec![usize::MAX; n];
    let mut score = vec![0u32; n];
    for &z in &order {
        let d = dist[z];
        if d == 1 {
            score[z] = g.neighbors(z).iter().filter(|&&w| in_target[w]).count() as u32;
            best[z] = z;
        } else {
            let mut pick = usize::MAX;
            for &y in g.neighbors(z) {
                if dist[y] + 1 == d {
                    let cand = best[y];
                    if pick == usize::MAX
                        || score[cand] > score[pick]
                        || (score[cand] == score[pick] && cand < pick)
                    {
                        pick = cand;
                    }
                }
            }
            debug_assert!(pick != usize::MAX);
            best[z] = pick;
        }
    }
    Ok(OutergateMap { target, in_target, dist_to_target: dist, best, score, order })
}

/// For every vertex outside `S`: does the chosen gate see the whole projection
/// `proj_z(S)`? Vertices of `S` get `false`.
pub fn outergate_flags(g: &Graph, map: &OutergateMap) -> Vec<bool> {
    let n = g.n();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in map.target.iter().enumerate() {
        slot[v] = i;
    }
    let words = map.target.len().div_ceil(64);
    let mut proj: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut flags = vec![false; n];
    let dist = &map.dist_to_target;
    for &z in &map.order {
        let mut bits = vec![0u64; words];
        if dist[z] == 1 {
            for &w in g.neighbors(z) {
                if slot[w] != usize::MAX {
                    bits[slot[w] / 64] |= 1 << (slot[w] % 64);
                }
            }
        } else {
            for &y in g.neighbors(z) {
                if dist[y] + 1 == dist[z] {
                    for (b, p) in bits.iter_mut().zip(&proj[y]) {
                        *b |= p;
                    }
                }
            }
        }
        let size: u32 = bits.iter().map(|b| b.count_ones()).sum();
        flags[z] = size == map.score[map.best[z]];
        proj[z] = bits;
    }
    flags
}

/// Brute-force projection `proj_z(S)`.
pub fn projection(g: &Graph, z: usize, s: &[usize]) -> Vec<usize> {
    let dz = g.bfs(z);
    let d = s.iter().map(|&x| dz[x]).min().unwrap_or(UNREACHED);
    let mut out: Vec<usize> = s.iter().copied().filter(|&x| dz[x] == d).collect();
    out.sort_unstable();
    out
}

/// A vertex `w ∈ I(u,v)` with `d(u,w) = d(u,v) − 2` adjacent to every neighbour
/// of `v` in `I(v,u)`; smallest index, if any.
pub fn verify_interval_outergate(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    let du = g.bfs(u);
    let k = du[v];
    if k < 2 {
        return Err(Error::invalid(format!("d({u},{v}) = {k} < 2")));
    }
    let dv = g.bfs(v);
    Ok(interval_outergate_with(g, &du, &dv, v))
}

pub(crate) fn interval_outergate_with(g: &Graph, du: &[u32], dv: &[u32], v: usize) -> Option<usize> {
    let k = du[v];
    let toward: Vec<usize> = g.neighbors(v).iter().copied().filter(|&y| du[y] + 1 == k).collect();
    let first = *toward.first()?;
    let mut cands: Vec<usize> = g
        .neighbors(first)
        .iter()
        .copied()
        .filter(|&w| du[w] + 2 == k && dv[w] == 2)
        .collect();
    cands.sort_unstable();
    cands.into_iter().find(|&w| toward.iter().all(|&a| g.has_edge(w, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn gate_examples() {
        let p4 = gen::path(4);
        let m = best_preneighbor_map(&p4, &[0]).unwrap();
        assert_eq!(m.gate(3), Some(1));
        assert_eq!(m.gate(1), None);
        assert_eq!(m.gate_or_self(1), 1);
        let c5 = gen::cycle(5);
        let m = best_preneighbor_map(&c5, &[0]).unwrap();
        assert_eq!((m.gate(2), m.gate(3)), (Some(1), Some(4)));
        let star = gen::star(3);
        let m = best_preneighbor_map(&star, &[0]).unwrap();
        assert!((1..4).all(|leaf| m.gate(leaf).is_none()));
        assert!(best_preneighbor_map(&gen::complete(2), &[0, 1]).is_err());
    }

    #[test]
    fn interval_outergate_examples() {
        assert_eq!(verify_interval_outergate(&gen::path(4), 0, 3).unwrap(), Some(1));
        assert_eq!(verify_interval_outergate(&gen::cycle(6), 0, 3).unwrap(), None);
        assert_eq!(verify_interval_outergate(&gen::cycle(4), 0, 2).unwrap(), Some(0));
        assert!(verify_interval_outergate(&gen::path(3), 0, 1).is_err());
    }

    #[test]
    fn gates_lie_on_geodesics_and_flags_match_projection() {
        for seed in 0..20 {
            let g = gen::random_connected(30, 0.12, seed);
            let s = vec![seed as usize % 30, (seed as usize * 7 + 3) % 30];
            let m = best_preneighbor_map(&g, &s).unwrap();
            let flags = outergate_flags(&g, &m);
            for z in 0..g.n() {
                if m.in_target(z) {
                    continue;
                }
                let gz = m.gate_or_self(z);
                let dz = g.bfs(z);
                assert_eq!(dz[gz] + 1, m.dist_to_target[z]);
                assert_eq!(m.dist_to_target[gz], 1);
                let proj = projection(&g, z, &m.target);
                let sees_all = proj.iter().all(|&x| g.has_edge(gz, x));
                assert_eq!(flags[z], sees_all, "z={z}");
                // maximality of the score among candidates
                let best = (0..g.n())
                    .filter(|&c| m.dist_to_target[c] == 1 && dz[c] + 1 == m.dist_to_target[z])
                    .map(|c| m.score(c))
                    .max()
                    .unwrap();
                assert_eq!(m.score(gz), best);
            }
        }
    }

    #[test]
    fn weakly_bridged_graphs_have_interval_outergates() {
        let g = gen::lozenge(4);
        for u in 0..g.n() {
            let du = g.bfs(u);
            for v in 0..g.n() {
                if du[v] >= 2 {
                    assert!(verify_interval_outergate(&g, u, v).unwrap().is_some());
                }
            }
        }
    }
}
