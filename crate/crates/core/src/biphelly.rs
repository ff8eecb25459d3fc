//! Improvement step for bipartite Helly graphs, built on intersections of
//! half-balls and on outergates relative to `B_1(v)`.

use crate::bridged::{evaluate, neighbourhood_map};
use crate::descent::ImproveStep;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::{Frac, Profile, Weight};

/// Smallest-index neighbour `u` of `v` with `r(u) < r(v)` for the profile
/// given by `support`, or `None` when `v` is a local minimum.
fn improving_neighbor<W: Weight>(g: &Graph, support: &[(usize, W)], v: usize) -> Option<usize> {
    let dist = g.bfs(v);
    let ecc = |d: &[u32]| support.iter().fold(W::zero(), |m, &(z, w)| max_w(m, w.times(d[z])));
    let r = ecc(&dist);
    if !(r > W::zero()) {
        return None;
    }
    let a: Vec<usize> = support.iter().filter(|&&(z, w)| w.times(dist[z] + 1) >= r).map(|e| e.0).collect();
    let near: Vec<usize> = a.iter().copied().filter(|&z| dist[z] <= 1).collect();
    if !near.is_empty() {
        if near.len() > 1 || dist[near[0]] == 0 {
            return None;
        }
        let u = near[0];
        return (ecc(&g.bfs(u)) < r).then_some(u);
    }
    let map = neighbourhood_map(g, v)?;
    let mut gates: Vec<usize> = a.iter().map(|&z| map.gate_or_self(z)).collect();
    gates.sort_unstable();
    gates.dedup();
    let mut count = vec![0usize; g.n()];
    for &gz in &gates {
        for &w in g.neighbors(gz) {
            if dist[w] == 1 {
                count[w] += 1;
            }
        }
    }
    g.neighbors(v).iter().copied().find(|&w| count[w] == gates.len())
}

fn max_w<W: Weight>(a: W, b: W) -> W {
    if b > a {
        b
    } else {
        a
    }
}

/// An improving neighbour of `v`, or `v` when it is a local minimum of `r`.
pub fn minimize_ball1_bh(g: &Graph, pi: &Profile, v: usize) -> usize {
    improving_neighbor(g, pi.support(), v).unwrap_or(v)
}

/// Same as [`minimize_ball1_bh`] for an exact rational profile.
pub fn minimize_ball1_bh_exact(g: &Graph, support: &[(usize, Frac)], v: usize) -> usize {
    improving_neighbor(g, support, v).unwrap_or(v)
}

/// One block of a level: support vertices `support` whose half-balls of the
/// current radius meet exactly in `witnesses`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetBlock {
    pub support: Vec<usize>,
    pub witnesses: Vec<usize>,
}

/// Levels `0..=k` of the half-ball meet partition of a support set lying on one
/// side of the bipartition. At level `i` the witness sets are pairwise disjoint
/// and `∩{B_i(x) ∩ V_{i mod 2} : x ∈ support} = witnesses` for every block.
#[derive(Clone, Debug)]
pub struct BallMeetPartition {
    pub levels: Vec<Vec<MeetBlock>>,
}

/// Max-bucket queue with lazy deletion; priorities only decrease.
struct BucketQueue {
    buckets: Vec<Vec<usize>>,
    top: usize,
}

impl BucketQueue {
    fn new(max: usize) -> Self {
        BucketQueue { buckets: vec![Vec::new(); max + 1], top: max }
    }

    fn push(&mut self, z: usize, p: usize) {
        if p > 0 {
            self.buckets[p].push(z);
        }
    }

    fn pop_max(&mut self, prio: &[usize]) -> Option<usize> {
        loop {
            while self.top > 0 && self.buckets[self.top].is_empty() {
                self.top -= 1;
            }
            if self.top == 0 {
                return None;
            }
            let z = self.buckets[self.top].pop().unwrap();
            if prio[z] == self.top {
                return Some(z);
            }
        }
    }
}

/// Builds the partition for `support` (nonempty, one side) up to level `k`.
pub fn ball_meet_partition(g: &Graph, support: &[usize], k: u32) -> Result<BallMeetPartition> {
    let n = g.n();
    let side = g.bipartition().map_err(|(a, b)| Error::invalid(format!("odd cycle through edge {a}-{b}")))?;
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    if support.is_empty() {
        return Err(Error::invalid("empty support"));
    }
    if let Some(&x) = support.iter().find(|&&x| x >= n) {
        return Err(Error::invalid(format!("vertex {x} out of range")));
    }
    if support.iter().any(|&x| side[x] != side[support[0]]) {
        return Err(Error::invalid("support meets both sides of the bipartition"));
    }
    let mut levels = vec![support.iter().map(|&x| MeetBlock { support: vec![x], witnesses: vec![x] }).collect::<Vec<_>>()];
    let mut stamp = vec![usize::MAX; n];
    let mut prio = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut hits = vec![0usize; n];
    for _ in 1..=k {
        let prev = levels.last().unwrap();
        // Z_j = N(Y_j)
        let mut zs: Vec<Vec<usize>> = Vec::with_capacity(prev.len());
        let mut touched = Vec::new();
        for (j, block) in prev.iter().enumerate() {
            let mut z = Vec::new();
            for &y in &block.witnesses {
                for &u in g.neighbors(y) {
                    if stamp[u] != j {
                        stamp[u] = j;
                        z.push(u);
                        if prio[u] == 0 {
                            touched.push(u);
                        }
                        prio[u] += 1;
                        members[u].push(j);
                    }
                }
            }
            zs.push(z);
        }
        let mut queue = BucketQueue::new(prev.len());
        for &u in &touched {
            queue.push(u, prio[u]);
        }
        let mut alive = vec![true; prev.len()];
        let mut next = Vec::new();
        while let Some(z) = queue.pop_max(&prio) {
            let js: Vec<usize> = members[z].iter().copied().filter(|&j| alive[j]).collect();
            let mut xs = Vec::new();
            let mut cand = Vec::new();
            for &j in &js {
                alive[j] = false;
                xs.extend_from_slice(&prev[j].support);
                for &u in &zs[j] {
                    if hits[u] == 0 {
                        cand.push(u);
                    }
                    hits[u] += 1;
                    prio[u] -= 1;
                    queue.push(u, prio[u]);
                }
            }
            let mut ys: Vec<usize> = cand.iter().copied().filter(|&u| hits[u] == js.len()).collect();
            for &u in &cand {
                hits[u] = 0;
            }
            xs.sort_unstable();
            ys.sort_unstable();
            next.push(MeetBlock { support: xs, witnesses: ys });
        }
        for &u in &touched {
            members[u].clear();
            prio[u] = 0;
        }
        stamp.fill(usize::MAX);
        next.sort_by_key(|b| b.support[0]);
        levels.push(next);
    }
    Ok(BallMeetPartition { levels })
}

/// `r(v)` for the 0-1 profile `pi01` at every vertex where it is at most `k`.
pub fn k_ball_radius_01(g: &Graph, pi01: &Profile, k: u32) -> Result<Vec<Option<u32>>> {
    if !pi01.is_01() {
        return Err(Error::invalid("profile is not 0-1"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let side = g.bipartition().map_err(|(a, b)| Error::invalid(format!("odd cycle through edge {a}-{b}")))?;
    let mut out = vec![Some(0u32); g.n()];
    for s in 0..2u8 {
        let part: Vec<usize> = pi01.support_vertices().into_iter().filter(|&x| side[x] == s).collect();
        if part.is_empty() {
            continue;
        }
        let meet = ball_meet_partition(g, &part, k)?;
        let mut r = vec![None; g.n()];
        for (i, level) in meet.levels.iter().enumerate() {
            if level.len() == 1 {
                for &y in &level[0].witnesses {
                    r[y].get_or_insert(i as u32);
                }
            }
        }
        for v in 0..g.n() {
            out[v] = match (out[v], r[v]) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
        }
    }
    Ok(out)
}

/// `∩{N_2(v) ∩ I(v,x) : x ∈ X}`, sorted.
pub fn interval_second_meet(g: &Graph, v: usize, x_set: &[usize]) -> Result<Vec<usize>> {
    if x_set.is_empty() {
        return Err(Error::invalid("empty X"));
    }
    let dv = g.bfs(v);
    Ok(second_meet(g, v, &dv, x_set))
}

fn second_meet(g: &Graph, v: usize, dv: &[u32], xs: &[usize]) -> Vec<usize> {
    let n = g.n();
    if xs.iter().any(|&x| dv[x] <= 1) {
        return Vec::new();
    }
    let at2: Vec<usize> = xs.iter().copied().filter(|&x| dv[x] == 2).collect();
    if let Some(&x) = at2.first() {
        if at2.iter().any(|&y| y != x) {
            return Vec::new();
        }
        let dx = g.bfs(x);
        return if xs.iter().all(|&y| dv[y] == 2 + dx[y]) { vec![x] } else { Vec::new() };
    }
    let at3: Vec<usize> = xs.iter().copied().filter(|&x| dv[x] == 3).collect();
    if !at3.is_empty() {
        let mut count = vec![0usize; n];
        let mut at3u = at3.clone();
        at3u.sort_unstable();
        at3u.dedup();
        for &x in &at3u {
            for &u in g.neighbors(x) {
                if dv[u] == 2 {
                    count[u] += 1;
                }
            }
        }
        let y: Vec<usize> = (0..n).filter(|&u| dv[u] == 2 && count[u] == at3u.len()).collect();
        let rest: Vec<usize> = xs.iter().copied().filter(|&x| dv[x] > 3).collect();
        if rest.is_empty() || y.is_empty() {
            return y;
        }
        let other = second_meet(g, v, dv, &rest);
        return y.into_iter().filter(|u| other.binary_search(u).is_ok()).collect();
    }
    let map = neighbourhood_map(g, v).expect("X lies outside B_1(v)");
    let mut gates: Vec<usize> = xs.iter().map(|&x| map.gate_or_self(x)).collect();
    gates.sort_unstable();
    gates.dedup();
    let mut count = vec![0usize; n];
    for &gx in &gates {
        for &w in g.neighbors(gx) {
            if dv[w] == 1 {
                count[w] += 1;
            }
        }
    }
    let a: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| count[w] == gates.len()).collect();
    let Some(&a0) = a.first() else { return Vec::new() };

    // a vertex b ∈ S adjacent to all of A, found as an improving neighbour of a0
    let da = g.bfs(a0);
    let r = xs.iter().map(|&x| da[x]).max().unwrap() as u128;
    let mut prime: Vec<(usize, Frac)> = xs.iter().map(|&x| (x, Frac::new(r, da[x] as u128))).collect();
    prime.extend(a.iter().map(|&y| (y, Frac::new(r, 3))));
    prime.sort_by_key(|e| e.0);
    prime.dedup_by_key(|e| e.0);
    let Some(b) = improving_neighbor(g, &prime, a0) else { return Vec::new() };

    let map_b = neighbourhood_map(g, b).expect("X lies outside B_1(b)");
    let mut gb: Vec<usize> = xs.iter().map(|&x| map_b.gate_or_self(x)).collect();
    gb.sort_unstable();
    gb.dedup();
    let pi2 = Profile::zero_one(n, &gb).expect("gates are in range");
    let within = k_ball_radius_01(g, &pi2, 2).expect("bipartite graph, 0-1 profile");
    let mut near_a = vec![false; n];
    for &y in &a {
        for &u in g.neighbors(y) {
            near_a[u] = true;
        }
    }
    (0..n).filter(|&u| dv[u] == 2 && near_a[u] && within[u].is_some()).collect()
}

/// A vertex of `B_2(v)` with smaller `r` than `v`, or `v` when `v` is central.
pub fn improve_eccentricity_bh(g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    if let Some(u) = improving_neighbor(g, pi.support(), v) {
        return Ok(u);
    }
    let ev = evaluate(g, pi, v);
    if ev.r == 0.0 {
        return Ok(v);
    }
    let s1 = second_meet(g, v, &ev.dist, &ev.far);
    if s1.is_empty() {
        return Ok(v);
    }
    let n = g.n();
    let mut in_far = vec![false; n];
    for &z in &ev.far {
        in_far[z] = true;
    }
    let xs: Vec<usize> = pi
        .support()
        .iter()
        .filter(|&&(x, w)| !in_far[x] && w * (ev.dist[x] + 2) as f64 >= ev.r)
        .map(|e| e.0)
        .collect();
    if xs.contains(&v) {
        return Ok(v);
    }
    let adjacent: Vec<usize> = xs.iter().copied().filter(|&x| ev.dist[x] == 1).collect();
    let outer: Vec<usize> = xs.iter().copied().filter(|&x| ev.dist[x] >= 2).collect();
    let within = if outer.is_empty() {
        None
    } else {
        let map = neighbourhood_map(g, v).expect("X lies outside B_1(v)");
        let mut gates: Vec<usize> = outer.iter().map(|&x| map.gate_or_self(x)).collect();
        gates.sort_unstable();
        gates.dedup();
        Some(k_ball_radius_01(g, &Profile::zero_one(n, &gates)?, 2)?)
    };
    let u = s1.into_iter().find(|&u| {
        adjacent.iter().all(|&x| g.has_edge(u, x)) && within.as_ref().is_none_or(|w| w[u].is_some())
    });
    Ok(u.unwrap_or(v))
}

/// Registered step for bipartite Helly graphs.
#[derive(Clone, Copy, Debug, Default)]
pub struct BhImprove;

impl ImproveStep for BhImprove {
    fn improve(&self, g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
        improve_eccentricity_bh(g, pi, v)
    }
    fn step_radius(&self) -> u32 {
        2
    }
    fn class_name(&self) -> &'static str {
        "bipartite-helly"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::all_pairs;
    use crate::radius::{center_bruteforce_small, radius_value};
    use crate::recognize::Class;

    fn corpus() -> Vec<Graph> {
        let mut out = vec![gen::square_grid(4, 4), gen::square_grid(3, 6), gen::cycle(4), gen::path(7), gen::b_hat_n(4)];
        for seed in 0..6 {
            out.push(gen::block_tree(&gen::blocks_for(Class::BipartiteHelly), 60, seed));
            out.push(gen::random_tree(40, seed));
        }
        out
    }

    #[test]
    fn corpus_is_bipartite_helly() {
        for g in corpus() {
            assert!(crate::recognize::is_bipartite_helly(&g).unwrap().verdict);
        }
    }

    #[test]
    fn minimize_examples() {
        let p5 = gen::path(5);
        assert_eq!(minimize_ball1_bh(&p5, &Profile::unit(5), 0), 1);
        let c4 = gen::cycle(4);
        assert_eq!(minimize_ball1_bh(&c4, &Profile::unit(4), 0), 0);
        let grid = gen::square_grid(4, 4);
        let pi = Profile::unit(16);
        let u = minimize_ball1_bh(&grid, &pi, 0);
        assert!(grid.has_edge(0, u));
        assert_eq!(radius_value(&grid, &pi, u), radius_value(&grid, &pi, 0) - 1.0);
    }

    #[test]
    fn minimize_is_a_local_oracle() {
        for (i, g) in corpus().into_iter().enumerate() {
            for s in 0..6 {
                let pi = gen::random_profile(g.n(), s % 2 == 0, 31 * i as u64 + s);
                let r: Vec<f64> = (0..g.n()).map(|u| radius_value(&g, &pi, u)).collect();
                for v in 0..g.n() {
                    let u = minimize_ball1_bh(&g, &pi, v);
                    let local = g.neighbors(v).iter().all(|&w| r[w] >= r[v]);
                    if u == v {
                        assert!(local, "missed improvement at {v}");
                    } else {
                        assert!(g.has_edge(u, v) && r[u] < r[v]);
                    }
                }
            }
        }
    }

    #[test]
    fn k_ball_examples() {
        let c4 = gen::cycle(4);
        let pi = Profile::zero_one(4, &[0, 2]).unwrap();
        assert_eq!(k_ball_radius_01(&c4, &pi, 1).unwrap(), vec![None, Some(1), None, Some(1)]);
        assert_eq!(k_ball_radius_01(&c4, &pi, 2).unwrap(), vec![Some(2), Some(1), Some(2), Some(1)]);
        let grid = gen::square_grid(4, 4);
        let pi = Profile::zero_one(16, &[0, 3, 12, 15]).unwrap();
        assert!(k_ball_radius_01(&grid, &pi, 3).unwrap().iter().all(Option::is_none));
        let r = k_ball_radius_01(&grid, &pi, 4).unwrap();
        let got: Vec<usize> = (0..16).filter(|&v| r[v].is_some()).collect();
        assert_eq!(got, vec![5, 6, 9, 10]);
        assert!(got.iter().all(|&v| r[v] == Some(4)));
    }

    #[test]
    fn k_ball_matches_thresholded_eccentricities() {
        for (i, g) in corpus().into_iter().enumerate() {
            let dm = all_pairs(&g).unwrap();
            for s in 0..5 {
                let pi = gen::random_profile(g.n(), true, 7 * i as u64 + s);
                for k in 1..=4 {
                    let got = k_ball_radius_01(&g, &pi, k).unwrap();
                    for v in 0..g.n() {
                        let r = pi.support_vertices().iter().map(|&x| dm.get(v, x)).max().unwrap_or(0);
                        assert_eq!(got[v], (r <= k).then_some(r), "graph {i} seed {s} k {k} vertex {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn meet_partition_identity() {
        let g = gen::square_grid(4, 5);
        let dm = all_pairs(&g).unwrap();
        let side = g.bipartition().unwrap();
        let support = [0, 2, 8, 12, 18];
        let meet = ball_meet_partition(&g, &support, 4).unwrap();
        for (i, level) in meet.levels.iter().enumerate() {
            let mut seen = vec![false; g.n()];
            for block in level {
                let want: Vec<usize> = (0..g.n())
                    .filter(|&u| side[u] as usize == (side[0] as usize + i) % 2)
                    .filter(|&u| block.support.iter().all(|&x| dm.get(u, x) <= i as u32))
                    .collect();
                assert_eq!(block.witnesses, want);
                for &y in &block.witnesses {
                    assert!(!seen[y]);
                    seen[y] = true;
                }
            }
        }
    }

    fn brute_meet(dm: &crate::oracle::DistanceMatrix, v: usize, xs: &[usize]) -> Vec<usize> {
        (0..dm.n()).filter(|&u| dm.get(v, u) == 2 && xs.iter().all(|&x| dm.in_interval(v, x, u))).collect()
    }

    #[test]
    fn second_meet_examples() {
        let grid = gen::square_grid(4, 4);
        assert_eq!(interval_second_meet(&grid, 0, &[15]).unwrap(), vec![2, 5, 8]);
        assert!(interval_second_meet(&grid, 0, &[1, 15]).unwrap().is_empty());
        assert_eq!(interval_second_meet(&gen::cycle(4), 0, &[2]).unwrap(), vec![2]);
    }

    #[test]
    fn second_meet_matches_brute_force() {
        for (i, g) in corpus().into_iter().enumerate() {
            let dm = all_pairs(&g).unwrap();
            let mut rng = gen::rng(i as u64);
            for _ in 0..40 {
                use rand::Rng;
                let v = rng.gen_range(0..g.n());
                let k = rng.gen_range(1..4);
                let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.n())).collect();
                assert_eq!(interval_second_meet(&g, v, &xs).unwrap(), brute_meet(&dm, v, &xs), "graph {i} v {v} X {xs:?}");
            }
        }
    }

    #[test]
    fn improve_examples() {
        let grid = gen::square_grid(4, 4);
        let pi = Profile::unit(16);
        let u = improve_eccentricity_bh(&grid, &pi, 0).unwrap();
        assert_ne!(u, 0);
        assert!(radius_value(&grid, &pi, u) < radius_value(&grid, &pi, 0));
        let bh = gen::b_hat_n(4);
        for v in 0..8 {
            assert!([8, 9].contains(&improve_eccentricity_bh(&bh, &Profile::unit(10), v).unwrap()));
        }
        let gp = gen::grid_plus_path(4);
        assert_eq!(improve_eccentricity_bh(&gp.graph, &gp.profile, gp.c).unwrap(), gp.c);
    }

    #[test]
    fn fixed_points_are_central() {
        for (i, g) in corpus().into_iter().enumerate() {
            for s in 0..8 {
                let pi = gen::random_profile(g.n(), s % 3 == 0, 101 * i as u64 + s);
                let (rad, _) = center_bruteforce_small(&g, &pi).unwrap();
                let dm = all_pairs(&g).unwrap();
                for v in 0..g.n() {
                    let u = improve_eccentricity_bh(&g, &pi, v).unwrap();
                    let rv = radius_value(&g, &pi, v);
                    if u == v {
                        assert_eq!(rv, rad, "graph {i} seed {s}: {v} is not central");
                    } else {
                        assert!(dm.get(u, v) <= 2 && radius_value(&g, &pi, u) < rv);
                    }
                }
            }
        }
    }
}
