//! Local search drivers: sample-select-descent, the deterministic 0-1 variant
//! started from a ball cover, and FPscan-descent.

use rand::seq::index::sample;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::rng;
use crate::graph::{Graph, UNREACHED};
use crate::oracle::Hyperbolicity;
use crate::profile::Profile;
use crate::radius::{eccentricity, radius_value};

/// One improvement step: a vertex of `B_p(v)` with strictly smaller `r`, or `v`.
pub trait ImproveStep: Sync {
    fn improve(&self, g: &Graph, pi: &Profile, v: usize) -> Result<usize>;
    fn step_radius(&self) -> u32;
    fn class_name(&self) -> &'static str;
}

/// Scans `B_p(v)` exhaustively.
#[derive(Clone, Copy, Debug)]
pub struct BruteImprove {
    pub p: u32,
}

impl ImproveStep for BruteImprove {
    fn improve(&self, g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
        Ok(brute_improve(g, pi, v, self.p))
    }
    fn step_radius(&self) -> u32 {
        self.p
    }
    fn class_name(&self) -> &'static str {
        "any"
    }
}

/// Minimiser of `r` over `B_p(v)` (smallest index on ties) when it beats `v`,
/// else `v`.
pub fn brute_improve(g: &Graph, pi: &Profile, v: usize, p: u32) -> usize {
    assert!(p >= 1, "p must be positive");
    let mut best = (radius_value(g, pi, v), v);
    let mut ball: Vec<usize> = g.ball(v, p).into_iter().map(|e| e.0).collect();
    ball.sort_unstable();
    for u in ball {
        let r = radius_value(g, pi, u);
        if r < best.0 || (r == best.0 && best.1 != v && u < best.1) {
            best = (r, u);
        }
    }
    best.1
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescentTrace {
    pub seed: Option<u64>,
    /// Vertices evaluated before the descent started.
    pub sample: Vec<usize>,
    /// Visited vertices with their `r` values, strictly decreasing.
    pub path: Vec<(usize, f64)>,
    pub terminal: usize,
}

impl DescentTrace {
    /// Number of improvement moves.
    pub fn steps(&self) -> usize {
        self.path.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.path.last().unwrap().1
    }
}

fn distance_at_most(g: &Graph, a: usize, b: usize, p: u32) -> bool {
    g.ball(a, p).iter().any(|e| e.0 == b)
}

// Runs the improvement step to a fixed point, checking its contract on every move.
fn descend(
    g: &Graph,
    pi: &Profile,
    improve: &dyn ImproveStep,
    start: usize,
    bound: Option<usize>,
    mut trace: DescentTrace,
) -> Result<DescentTrace> {
    let p = improve.step_radius();
    let mut v = start;
    let mut rv = radius_value(g, pi, v);
    trace.path.push((v, rv));
    loop {
        let u = improve.improve(g, pi, v)?;
        if u == v {
            break;
        }
        let ru = radius_value(g, pi, u);
        if ru >= rv || !distance_at_most(g, v, u, p) {
            return Err(Error::Contract(format!(
                "{} step {v} (r={rv}) -> {u} (r={ru}) is not an improvement within radius {p}; path {:?}",
                improve.class_name(),
                trace.path
            )));
        }
        trace.path.push((u, ru));
        if let Some(b) = bound {
            if trace.steps() > b {
                return Err(Error::invariant(format!(
                    "descent exceeded {b} steps; is the graph in class {}?",
                    improve.class_name()
                )));
            }
        }
        if trace.path.len() > g.n() + 1 {
            return Err(Error::invariant("descent revisits vertices"));
        }
        v = u;
        rv = ru;
    }
    trace.terminal = v;
    Ok(trace)
}

fn argmin_radius(g: &Graph, pi: &Profile, candidates: &[usize]) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    for &u in candidates {
        let r = radius_value(g, pi, u);
        if r < best.0 || (r == best.0 && u < best.1) {
            best = (r, u);
        }
    }
    best.1
}

pub const DEFAULT_SAMPLE_CONSTANT: f64 = 3.0;

pub fn sample_select_descent(
    g: &Graph,
    pi: &Profile,
    improve: &dyn ImproveStep,
    seed: u64,
) -> Result<(usize, DescentTrace)> {
    sample_select_descent_with(g, pi, improve, seed, DEFAULT_SAMPLE_CONSTANT)
}

/// Evaluates `r` on `⌈c·√n·ln n⌉` random vertices and descends from the best.
pub fn sample_select_descent_with(
    g: &Graph,
    pi: &Profile,
    improve: &dyn ImproveStep,
    seed: u64,
    c: f64,
) -> Result<(usize, DescentTrace)> {
    let n = g.n();
    let want = (c * (n as f64).sqrt() * (n as f64).ln()).ceil() as usize;
    let size = want.clamp(1, n);
    let mut r = rng(seed);
    let mut chosen = sample(&mut r, n, size).into_vec();
    chosen.sort_unstable();
    let start = argmin_radius(g, pi, &chosen);
    let trace = DescentTrace { seed: Some(seed), sample: chosen, path: Vec::new(), terminal: start };
    let trace = descend(g, pi, improve, start, None, trace)?;
    Ok((trace.terminal, trace))
}

/// Greedy net: the smallest-index vertex farther than `2⌈√n⌉` from every chosen
/// centre becomes a centre.
pub fn ball_cover_sqrt(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let radius = 2 * (n as f64).sqrt().ceil() as u32;
    let mut dist = vec![UNREACHED; n];
    let mut centres = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if dist[s] <= radius {
            continue;
        }
        centres.push(s);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w] > dist[u] + 1 {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    centres
}

/// The step bound `2(⌈√n⌉+1)` for 0-1 profiles.
pub fn deterministic_step_bound(n: usize) -> usize {
    2 * ((n as f64).sqrt().ceil() as usize + 1)
}

pub fn deterministic_descent_01(
    g: &Graph,
    pi01: &Profile,
    improve: &dyn ImproveStep,
) -> Result<(usize, DescentTrace)> {
    if !pi01.is_01() {
        return Err(Error::invalid("deterministic descent needs a 0-1 profile"));
    }
    if improve.step_radius() != 2 {
        return Err(Error::invalid("deterministic descent needs a step radius of 2"));
    }
    let cover = ball_cover_sqrt(g);
    let start = argmin_radius(g, pi01, &cover);
    let trace = DescentTrace { seed: None, sample: cover, path: Vec::new(), terminal: start };
    let trace = descend(g, pi01, improve, start, Some(deterministic_step_bound(g.n())), trace)?;
    Ok((trace.terminal, trace))
}

/// Farthest support vertex from `from`, smallest index on ties.
fn farthest_in_support(g: &Graph, pi: &Profile, from: usize) -> (usize, Vec<u32>) {
    let d = g.bfs(from);
    let mut best = (0, usize::MAX);
    for &(z, _) in pi.support() {
        if best.1 == usize::MAX || d[z] > best.0 {
            best = (d[z], z);
        }
    }
    (best.1, d)
}

/// Start vertex of FPscan-descent: the middle of a geodesic between the ends of
/// a double farthest-point scan over the support.
pub fn fpscan_start(g: &Graph, pi01: &Profile) -> usize {
    let s = pi01.support()[0].0;
    let (u, _) = farthest_in_support(g, pi01, s);
    let (w, dw_from_u) = farthest_in_support(g, pi01, u);
    let len = dw_from_u[w];
    let dw = g.bfs(w);
    let mut x = u;
    for _ in 0..len / 2 {
        x = *g.neighbors(x).iter().find(|&&y| dw[y] + 1 == dw[x]).expect("geodesic continues");
    }
    x
}

/// `⌊5δ⌋ + 1` with `δ` given as a half-integer.
pub fn fpscan_step_bound(delta: Hyperbolicity) -> usize {
    (5 * delta.twice as usize) / 2 + 1
}

pub fn fpscan_descent(
    g: &Graph,
    pi01: &Profile,
    delta: Hyperbolicity,
    improve: &dyn ImproveStep,
) -> Result<(usize, DescentTrace)> {
    if !pi01.is_01() {
        return Err(Error::invalid("FPscan-descent needs a 0-1 profile"));
    }
    let start = fpscan_start(g, pi01);
    let trace = DescentTrace { seed: None, sample: vec![start], path: Vec::new(), terminal: start };
    let trace = descend(g, pi01, improve, start, Some(fpscan_step_bound(delta)), trace)?;
    Ok((trace.terminal, trace))
}

/// `r` at every vertex of a list, one BFS each.
pub fn radii(g: &Graph, pi: &Profile, vertices: &[usize]) -> Vec<f64> {
    vertices.iter().map(|&v| eccentricity(pi, &g.bfs(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::radius::center_bruteforce_small;

    const BRUTE2: BruteImprove = BruteImprove { p: 2 };

    #[test]
    fn brute_improve_examples() {
        let p5 = gen::path(5);
        let pi = Profile::unit(5);
        assert_eq!(brute_improve(&p5, &pi, 0, 2), 2);
        assert_eq!(brute_improve(&p5, &pi, 2, 2), 2);
        assert_eq!(brute_improve(&gen::cycle(4), &Profile::unit(4), 0, 1), 0);
    }

    #[test]
    fn sample_select_examples() {
        let p5 = gen::path(5);
        let (c, tr) = sample_select_descent(&p5, &Profile::unit(5), &BRUTE2, 7).unwrap();
        assert_eq!((c, tr.radius()), (2, 2.0));
        let gp = gen::grid_plus_path(4);
        for seed in 0..5 {
            let (c, tr) = sample_select_descent(&gp.graph, &gp.profile, &BRUTE2, seed).unwrap();
            assert_eq!((c, tr.radius()), (gp.c, 20.0));
        }
        let (_, tr) = sample_select_descent(&gen::complete(3), &Profile::unit(3), &BRUTE2, 1).unwrap();
        assert_eq!(tr.steps(), 0);
    }

    #[test]
    fn ball_cover_examples() {
        assert_eq!(ball_cover_sqrt(&gen::path(9)), vec![0, 7]);
        assert_eq!(ball_cover_sqrt(&gen::complete(6)), vec![0]);
        assert_eq!(ball_cover_sqrt(&gen::path(4)), vec![0]);
        for seed in 0..5 {
            let g = gen::random_tree(400, seed);
            let cover = ball_cover_sqrt(&g);
            let radius = 2 * 20;
            let d = g.bfs_distances(&cover).unwrap().dist;
            assert!(d.iter().all(|&x| x <= radius));
            assert!(cover.len() as f64 <= 4.0 * 20.0);
        }
    }

    #[test]
    fn deterministic_examples() {
        let p5 = gen::path(5);
        let (c, tr) = deterministic_descent_01(&p5, &Profile::unit(5), &BRUTE2).unwrap();
        assert_eq!(c, 2);
        assert!(tr.steps() <= deterministic_step_bound(5));
        let grid = gen::square_grid(4, 4);
        let (c, _) = deterministic_descent_01(&grid, &Profile::unit(16), &BRUTE2).unwrap();
        assert_eq!(radius_value(&grid, &Profile::unit(16), c), 4.0);
        let single = Graph::from_edges(1, &[]).unwrap();
        let (c, tr) = deterministic_descent_01(&single, &Profile::unit(1), &BRUTE2).unwrap();
        assert_eq!((c, tr.steps()), (0, 0));
        let weighted = Profile::new(5, &[(0, 2.0)]).unwrap();
        assert!(deterministic_descent_01(&p5, &weighted, &BRUTE2).is_err());
    }

    #[test]
    fn fpscan_examples() {
        for seed in 0..5 {
            let t = gen::random_tree(40, seed);
            let pi = Profile::unit(40);
            let (c, tr) = fpscan_descent(&t, &pi, Hyperbolicity { twice: 0 }, &BruteImprove { p: 1 }).unwrap();
            assert!(tr.steps() <= 1);
            assert_eq!(radius_value(&t, &pi, c), center_bruteforce_small(&t, &pi).unwrap().0);
        }
        let king = gen::king_grid(5, 5);
        let pi = Profile::unit(25);
        let delta = crate::oracle::hyperbolicity_exact(&king).unwrap();
        let (c, _) = fpscan_descent(&king, &pi, delta, &BruteImprove { p: 1 }).unwrap();
        assert_eq!(radius_value(&king, &pi, c), 2.0);
        let grid = gen::square_grid(4, 4);
        let delta = crate::oracle::hyperbolicity_exact(&grid).unwrap();
        let (c, _) = fpscan_descent(&grid, &Profile::unit(16), delta, &BRUTE2).unwrap();
        assert_eq!(radius_value(&grid, &Profile::unit(16), c), 4.0);
    }

    struct Liar;
    impl ImproveStep for Liar {
        fn improve(&self, g: &Graph, _pi: &Profile, v: usize) -> Result<usize> {
            Ok((v + 1) % g.n())
        }
        fn step_radius(&self) -> u32 {
            1
        }
        fn class_name(&self) -> &'static str {
            "liar"
        }
    }

    #[test]
    fn contract_violations_are_reported() {
        let p5 = gen::path(5);
        let err = sample_select_descent(&p5, &Profile::unit(5), &Liar, 0).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }
}
