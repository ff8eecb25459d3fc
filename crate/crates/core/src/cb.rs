//! Graphs with convex balls: cliques whose far vertices may lack an outergate,
//! clique eccentricities, local search in `B_1` and `B_2`, and the exact centre
//! obtained by shrinking a convex set around a terminal vertex.

use serde::Serialize;

use crate::bridged::{
    check_clique, clique_eccentricities_core, evaluate, minimize_ball1_with, neighbourhood_map, pick_w_max,
};
use crate::descent::{deterministic_descent_01, sample_select_descent, DescentTrace, ImproveStep};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::outergate::{best_preneighbor_map, OutergateMap};
use crate::profile::Profile;
use crate::radius::{center_bruteforce_capped, radius_value};

/// Which vertices outside a clique `K` have an outergate.
#[derive(Clone, Debug)]
pub struct CliqueGateStatus {
    pub clique: Vec<usize>,
    /// `true` for vertices with no outergate; such vertices are equidistant
    /// from all of `K`.
    pub marked: Vec<bool>,
    /// Outergate of every unmarked vertex outside `K` (itself on `N(K)`).
    pub gate: Vec<Option<usize>>,
}

fn status_with_map(g: &Graph, k: &[usize], map: Option<&OutergateMap>) -> CliqueGateStatus {
    let n = g.n();
    let mut marked = vec![false; n];
    let mut gate = vec![None; n];
    let Some(map) = map else {
        return CliqueGateStatus { clique: k.to_vec(), marked, gate };
    };
    for &z in &map.order {
        let d = map.dist_to_target[z];
        let zs = map.gate_or_self(z);
        if d >= 2 {
            marked[z] = if d == 2 {
                g.neighbors(z).iter().any(|&y| map.dist_to_target[y] == 1 && y != zs && !g.has_edge(y, zs))
            } else {
                g.neighbors(z).iter().any(|&x| {
                    map.dist_to_target[x] + 1 == d && marked[x] && map.score(map.gate_or_self(x)) == map.score(zs)
                })
            };
        }
        if !marked[z] {
            gate[z] = Some(zs);
        }
    }
    CliqueGateStatus { clique: k.to_vec(), marked, gate }
}

/// Marks the vertices without an outergate with respect to the clique `k`.
pub fn clique_gate_status(g: &Graph, k: &[usize]) -> Result<CliqueGateStatus> {
    let k = check_clique(g, k)?;
    let map = if k.len() == g.n() { None } else { Some(best_preneighbor_map(g, &k)?) };
    Ok(status_with_map(g, &k, map.as_ref()))
}

fn clique_r(g: &Graph, pi: &Profile, k: &[usize]) -> Vec<f64> {
    let map = (k.len() < g.n()).then(|| best_preneighbor_map(g, k).expect("proper clique"));
    let status = status_with_map(g, k, map.as_ref());
    clique_eccentricities_core(g, pi, k, map.as_ref(), Some(&status.marked))
}

/// `r` on every vertex of the clique `k`, in increasing vertex order.
pub fn clique_eccentricities_cb(g: &Graph, pi: &Profile, k: &[usize]) -> Result<Vec<(usize, f64)>> {
    let k = check_clique(g, k)?;
    let r = clique_r(g, pi, &k);
    Ok(k.into_iter().zip(r).collect())
}

/// Minimiser of `r` over `B_1(v)`; `v` wins ties with its neighbours.
pub fn minimize_ball1_cb(g: &Graph, pi: &Profile, v: usize) -> usize {
    minimize_ball1_cb_value(g, pi, v).0
}

fn minimize_ball1_cb_value(g: &Graph, pi: &Profile, v: usize) -> (usize, f64) {
    let ev = evaluate(g, pi, v);
    minimize_ball1_with(g, pi, v, &ev, |k| clique_r(g, pi, k))
}

/// A vertex of `B_2(v)` with smaller `r`, or `v`. Returning `v` means every
/// improving vertex lies at distance exactly 2 from `v` (or `v` is central).
pub fn improve_eccentricity_cb(g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let ev = evaluate(g, pi, v);
    let (u, ru) = minimize_ball1_with(g, pi, v, &ev, |k| clique_r(g, pi, k));
    if ru < ev.r {
        return Ok(u);
    }
    if ev.r == 0.0 || ev.far.iter().any(|&z| ev.dist[z] < 2) {
        return Ok(v);
    }
    let Some(map) = neighbourhood_map(g, v) else { return Ok(v) };
    let Some(w_max) = pick_w_max(g, v, &map, &ev.far) else { return Ok(v) };
    let (plus, r_plus) = minimize_ball1_cb_value(g, pi, w_max);
    Ok(if r_plus < ev.r { plus } else { v })
}

/// Registered step for graphs with convex balls.
#[derive(Clone, Copy, Debug, Default)]
pub struct CbImprove;

impl ImproveStep for CbImprove {
    fn improve(&self, g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
        improve_eccentricity_cb(g, pi, v)
    }
    fn step_radius(&self) -> u32 {
        2
    }
    fn class_name(&self) -> &'static str {
        "cb"
    }
}

/// How the terminal vertex is reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminalMode {
    Randomized { seed: u64 },
    Deterministic01,
}

/// Fixed point of [`improve_eccentricity_cb`] reached by the matching descent.
pub fn terminal_vertex(g: &Graph, pi: &Profile, mode: TerminalMode) -> Result<(usize, DescentTrace)> {
    match mode {
        TerminalMode::Randomized { seed } => sample_select_descent(g, pi, &CbImprove, seed),
        TerminalMode::Deterministic01 => deterministic_descent_01(g, pi, &CbImprove),
    }
}

/// The convex set `X_i` with its anchor `x_i` and best vertex so far `y_i`.
#[derive(Clone, Debug)]
pub struct ShrinkState {
    pub members: Vec<bool>,
    pub size: usize,
    pub anchor: usize,
    pub best: usize,
    pub iteration: usize,
}

/// Branch that ended a [`center_cb`] run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CbFinish {
    LowDegree,
    Exhausted,
    ZeroRadius,
}

#[derive(Clone, Debug, Serialize)]
pub struct CbRun {
    pub center: usize,
    pub radius: f64,
    pub terminal: usize,
    pub descent_steps: usize,
    pub shrink_iterations: usize,
    pub finish: CbFinish,
}

pub fn center_cb(g: &Graph, pi: &Profile, seed: u64) -> Result<usize> {
    center_cb_traced(g, pi, TerminalMode::Randomized { seed }).map(|r| r.center)
}

pub fn center_cb_traced(g: &Graph, pi: &Profile, mode: TerminalMode) -> Result<CbRun> {
    shrink(g, pi, mode, None)
}

/// Like [`center_cb_traced`] but checks the three state properties against a
/// brute-force centre on every iteration (`n ≤ cap`).
pub fn center_cb_checked(g: &Graph, pi: &Profile, mode: TerminalMode, cap: usize) -> Result<CbRun> {
    let (rad, centre) = center_bruteforce_capped(g, pi, cap)?;
    let r: Vec<f64> = (0..g.n()).map(|v| radius_value(g, pi, v)).collect();
    shrink(g, pi, mode, Some(&Oracle { rad, centre, r }))
}

struct Oracle {
    rad: f64,
    centre: Vec<usize>,
    r: Vec<f64>,
}

impl Oracle {
    fn check(&self, g: &Graph, s: &ShrinkState) -> Result<()> {
        if !s.members[s.anchor] {
            return Err(Error::invariant(format!("iteration {}: anchor outside X", s.iteration)));
        }
        let rb = self.r[s.best];
        if let Some(v) = (0..g.n()).find(|&v| !s.members[v] && self.r[v] < rb) {
            return Err(Error::invariant(format!("iteration {}: {v} outside X beats y", s.iteration)));
        }
        if self.r[s.best] != self.rad {
            let d = g.bfs(s.anchor);
            if let Some(&c) = self.centre.iter().find(|&&c| d[c] > 2) {
                return Err(Error::invariant(format!("iteration {}: centre {c} is far from the anchor", s.iteration)));
            }
        }
        Ok(())
    }
}

fn shrink(g: &Graph, pi: &Profile, mode: TerminalMode, oracle: Option<&Oracle>) -> Result<CbRun> {
    if pi.n() != g.n() {
        return Err(Error::invalid("profile and graph sizes differ"));
    }
    let (v_star, trace) = terminal_vertex(g, pi, mode)?;
    let threshold = (g.m() as f64).sqrt();
    let mut s = ShrinkState { members: vec![true; g.n()], size: g.n(), anchor: v_star, best: v_star, iteration: 0 };
    let mut r_best = radius_value(g, pi, v_star);
    let mut anchors = vec![false; g.n()];
    let finish = |center: usize, radius: f64, iterations: usize, finish: CbFinish| CbRun {
        center,
        radius,
        terminal: v_star,
        descent_steps: trace.steps(),
        shrink_iterations: iterations,
        finish,
    };
    loop {
        if s.size == 0 {
            return Ok(finish(s.best, r_best, s.iteration, CbFinish::Exhausted));
        }
        if let Some(o) = oracle {
            o.check(g, &s)?;
        }
        let x = s.anchor;
        if anchors[x] {
            return Err(Error::invariant(format!("anchor {x} repeats")));
        }
        anchors[x] = true;
        let local: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| s.members[w]).collect();
        if local.len() as f64 <= threshold {
            let mut best = (r_best, s.best);
            for w in std::iter::once(x).chain(local) {
                let (u, ru) = minimize_ball1_cb_value(g, pi, w);
                if ru < best.0 || (ru == best.0 && u < best.1) {
                    best = (ru, u);
                }
            }
            return Ok(finish(best.1, best.0, s.iteration, CbFinish::LowDegree));
        }
        let ev = evaluate(g, pi, x);
        if ev.r == 0.0 {
            return Ok(finish(x, 0.0, s.iteration, CbFinish::ZeroRadius));
        }
        let z = *ev.far.iter().min().unwrap();
        let dz = g.bfs(z);
        let limit = ev.dist[z] - 1;
        for v in 0..g.n() {
            if s.members[v] && dz[v] > limit {
                s.members[v] = false;
                s.size -= 1;
            }
        }
        if ev.r < r_best || (ev.r == r_best && x < s.best) {
            s.best = x;
            r_best = ev.r;
        }
        s.iteration += 1;
        if s.size == 0 {
            continue;
        }
        let dx = &ev.dist;
        s.anchor = (0..g.n()).filter(|&v| s.members[v]).min_by_key(|&v| (dx[v], v)).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::all_pairs;
    use crate::recognize::Class;

    fn corpus() -> Vec<Graph> {
        let mut out = vec![gen::cycle(5), gen::lozenge(3), gen::wheel(5), gen::path(6)];
        for seed in 0..6 {
            out.push(gen::block_tree(&gen::blocks_for(Class::Cb), 50, seed));
            out.push(gen::pentagon_tail(30, seed));
        }
        out
    }

    fn cliques(g: &Graph) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
        out.extend(g.edges().map(|(a, b)| vec![a, b]));
        for (a, b) in g.edges() {
            for &c in g.neighbors(b) {
                if c > b && g.has_edge(a, c) {
                    out.push(vec![a, b, c]);
                }
            }
        }
        out
    }

    #[test]
    fn corpus_is_cb() {
        for g in corpus() {
            assert!(crate::recognize::is_cb_graph(&g).unwrap().verdict);
        }
    }

    #[test]
    fn gate_status_examples() {
        let c5 = gen::cycle(5);
        let s = clique_gate_status(&c5, &[0, 1]).unwrap();
        assert!(s.marked[3]);
        assert!(!s.marked[2] && !s.marked[4]);
        let p4 = gen::path(4);
        let s = clique_gate_status(&p4, &[1]).unwrap();
        assert!(!s.marked[3]);
        assert_eq!(s.gate[3], Some(2));
        for seed in 0..3 {
            let g = gen::block_tree(&gen::blocks_for(Class::Bridged), 40, seed);
            for k in cliques(&g) {
                assert!(!clique_gate_status(&g, &k).unwrap().marked.iter().any(|&m| m));
            }
        }
    }

    #[test]
    fn gate_status_matches_definition() {
        for g in corpus() {
            let dm = all_pairs(&g).unwrap();
            for k in cliques(&g) {
                if k.len() == g.n() {
                    continue;
                }
                let s = clique_gate_status(&g, &k).unwrap();
                for z in 0..g.n() {
                    if k.contains(&z) {
                        continue;
                    }
                    let d = k.iter().map(|&w| dm.get(z, w)).min().unwrap();
                    let proj: Vec<usize> = k.iter().copied().filter(|&w| dm.get(z, w) == d).collect();
                    let has = (0..g.n()).any(|y| {
                        dm.get(z, y) + 1 == d
                            && k.iter().map(|&w| dm.get(y, w)).min().unwrap() == 1
                            && proj.iter().all(|&w| g.has_edge(y, w))
                    });
                    assert_eq!(s.marked[z], !has, "clique {k:?} vertex {z}");
                    if s.marked[z] {
                        assert_eq!(proj.len(), k.len());
                    }
                }
            }
        }
    }

    #[test]
    fn clique_eccentricities_match_oracle() {
        let c5 = gen::cycle(5);
        assert_eq!(clique_eccentricities_cb(&c5, &Profile::unit(5), &[0, 1]).unwrap(), vec![(0, 2.0), (1, 2.0)]);
        let k3 = gen::complete(3);
        assert_eq!(clique_eccentricities_cb(&k3, &Profile::unit(3), &[0, 1, 2]).unwrap(), vec![(0, 1.0), (1, 1.0), (2, 1.0)]);
        let tail = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        let got = clique_eccentricities_cb(&tail, &Profile::unit(6), &[2, 3]).unwrap();
        for (w, r) in got {
            assert_eq!(r, radius_value(&tail, &Profile::unit(6), w));
        }
        for (i, g) in corpus().into_iter().enumerate() {
            for s in 0..3 {
                let pi = gen::random_profile(g.n(), s == 0, 7 * i as u64 + s);
                for k in cliques(&g) {
                    for (w, r) in clique_eccentricities_cb(&g, &pi, &k).unwrap() {
                        assert_eq!(r, radius_value(&g, &pi, w), "graph {i} clique {k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn local_search_examples() {
        let p5 = gen::path(5);
        let u = Profile::unit(5);
        assert_eq!(minimize_ball1_cb(&p5, &u, 0), 1);
        assert_eq!(minimize_ball1_cb(&p5, &u, 2), 2);
        let c5 = gen::cycle(5);
        for v in 0..5 {
            assert_eq!(minimize_ball1_cb(&c5, &Profile::unit(5), v), v);
            assert_eq!(improve_eccentricity_cb(&c5, &Profile::unit(5), v).unwrap(), v);
        }
        assert_eq!(improve_eccentricity_cb(&p5, &u, 0).unwrap(), 1);
    }

    #[test]
    fn improve_contract_on_corpus() {
        for (i, g) in corpus().into_iter().enumerate() {
            let dm = all_pairs(&g).unwrap();
            for s in 0..6 {
                let pi = gen::random_profile(g.n(), s % 2 == 0, 53 * i as u64 + s);
                let r: Vec<f64> = (0..g.n()).map(|v| radius_value(&g, &pi, v)).collect();
                for v in 0..g.n() {
                    let u = improve_eccentricity_cb(&g, &pi, v).unwrap();
                    let min_b1 = minimize_ball1_cb(&g, &pi, v);
                    assert!(g.ball(v, 1).iter().all(|&(w, _)| r[w] >= r[min_b1]));
                    if u == v {
                        assert!((0..g.n()).all(|w| r[w] >= r[v] || dm.get(v, w) == 2), "graph {i} seed {s} v {v}");
                    } else {
                        assert!(dm.get(u, v) <= 2 && r[u] < r[v]);
                    }
                }
            }
        }
    }

    #[test]
    fn centre_is_exact() {
        let c5 = gen::cycle(5);
        let run = center_cb_traced(&c5, &Profile::unit(5), TerminalMode::Randomized { seed: 1 }).unwrap();
        assert_eq!(run.radius, 2.0);
        let loz = gen::lozenge(3);
        let n = loz.n();
        let pi = Profile::new(n, &[(0, 3.0), (3, 1.0), (n - 1, 2.0)]).unwrap();
        assert_eq!(radius_value(&loz, &pi, center_cb(&loz, &pi, 5).unwrap()), center_bruteforce_capped(&loz, &pi, 500).unwrap().0);
        for (i, g) in corpus().into_iter().enumerate() {
            for s in 0..10 {
                let pi = gen::random_profile(g.n(), s % 4 == 0, 900 + 11 * i as u64 + s);
                let mode = if pi.is_01() && s % 8 == 0 { TerminalMode::Deterministic01 } else { TerminalMode::Randomized { seed: s } };
                let run = center_cb_checked(&g, &pi, mode, 500).unwrap();
                assert_eq!(run.radius, center_bruteforce_capped(&g, &pi, 500).unwrap().0, "graph {i} seed {s}");
            }
        }
    }

    fn pentagon_windmill(k: usize, tail: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..k {
            let b = 1 + 4 * i;
            e.extend([(0, b), (b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, 0)]);
        }
        let mut last = 1;
        for j in 0..tail {
            let x = 1 + 4 * k + j;
            e.push((last, x));
            last = x;
        }
        Graph::from_edges(1 + 4 * k + tail, &e).unwrap()
    }

    #[test]
    fn high_degree_rounds_are_exact() {
        let graphs = [pentagon_windmill(6, 0), pentagon_windmill(8, 5), gen::complete(9), gen::wheel(5)];
        let mut shrinks = 0;
        for (i, g) in graphs.iter().enumerate() {
            assert!(crate::recognize::is_cb_graph(g).unwrap().verdict, "graph {i}");
            for s in 0..30 {
                let pi = gen::random_profile(g.n(), s % 3 == 0, 7000 + 40 * i as u64 + s);
                let run = center_cb_checked(g, &pi, TerminalMode::Randomized { seed: s }, 500).unwrap();
                shrinks += run.shrink_iterations;
                assert_eq!(run.radius, center_bruteforce_capped(g, &pi, 500).unwrap().0);
            }
        }
        assert!(shrinks > 0);
    }

    #[test]
    fn terminal_vertex_examples() {
        for seed in 0..4 {
            let g = gen::block_tree(&gen::blocks_for(Class::Bridged), 40, seed);
            let pi = gen::random_profile(g.n(), false, seed);
            let (v, _) = terminal_vertex(&g, &pi, TerminalMode::Randomized { seed }).unwrap();
            assert_eq!(radius_value(&g, &pi, v), center_bruteforce_capped(&g, &pi, 500).unwrap().0);
            let g = gen::pentagon_tail(30, seed);
            let pi = gen::random_profile(g.n(), true, seed);
            let (v, _) = terminal_vertex(&g, &pi, TerminalMode::Deterministic01).unwrap();
            assert!(radius_value(&g, &pi, v) <= center_bruteforce_capped(&g, &pi, 500).unwrap().0 + 1.0);
        }
    }
}
