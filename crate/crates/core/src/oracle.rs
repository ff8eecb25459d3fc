//! Brute-force ground truth: distance matrices, peaklessness, unimodality,
//! hyperbolicity, Helly and convexity checks.

use std::fmt;

use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use crate::radius::center_of;

pub const DEFAULT_MATRIX_CAP: usize = 5000;
pub const DEFAULT_HYPERBOLICITY_CAP: usize = 300;
pub const FULL_CONVEXITY_BELOW: usize = 60;

/// All-pairs hop distances, row-major.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Weighted eccentricity of every vertex.
    pub fn eccentricities(&self, pi: &Profile) -> Vec<f64> {
        (0..self.n)
            .map(|v| {
                let row = self.row(v);
                pi.support().iter().map(|&(z, w)| w * row[z] as f64).fold(0.0, f64::max)
            })
            .collect()
    }

    /// Radius and centre for `pi`.
    pub fn center(&self, pi: &Profile) -> (f64, Vec<usize>) {
        center_of(&self.eccentricities(pi))
    }

    #[inline]
    pub fn in_interval(&self, u: usize, v: usize, w: usize) -> bool {
        self.get(u, w) + self.get(w, v) == self.get(u, v)
    }
}

pub fn all_pairs(g: &Graph) -> Result<DistanceMatrix> {
    all_pairs_capped(g, DEFAULT_MATRIX_CAP)
}

pub fn all_pairs_capped(g: &Graph, cap: usize) -> Result<DistanceMatrix> {
    check_cap(g.n(), cap)?;
    let n = g.n();
    let mut d = Vec::with_capacity(n * n);
    for v in 0..n {
        d.extend_from_slice(&g.bfs(v));
    }
    Ok(DistanceMatrix { n, d })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeaklessCounterexample {
    pub u: usize,
    pub v: usize,
    pub explanation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeaklessReport {
    pub holds: bool,
    pub counterexample: Option<PeaklessCounterexample>,
}

/// The condition WP(u,v) for the function `f`: some interior interval vertex is
/// strictly below the larger endpoint value, or ties both endpoints.
pub fn weakly_peakless_pair(dm: &DistanceMatrix, f: &[f64], u: usize, v: usize) -> bool {
    let top = f[u].max(f[v]);
    let duv = dm.get(u, v);
    let (ru, rv) = (dm.row(u), dm.row(v));
    (0..dm.n()).any(|w| {
        w != u
            && w != v
            && ru[w] + rv[w] == duv
            && (f[w] < top || (f[u] == f[w] && f[w] == f[v]))
    })
}

pub fn is_p_weakly_peakless(g: &Graph, pi: &Profile, p: u32) -> Result<PeaklessReport> {
    let dm = all_pairs(g)?;
    Ok(is_p_weakly_peakless_with(&dm, pi, p))
}

/// Checks WP(u,v) for all pairs with `p+1 ≤ d(u,v) ≤ 2p`.
pub fn is_p_weakly_peakless_with(dm: &DistanceMatrix, pi: &Profile, p: u32) -> PeaklessReport {
    let f = dm.eccentricities(pi);
    function_p_weakly_peakless(dm, &f, p)
}

pub fn function_p_weakly_peakless(dm: &DistanceMatrix, f: &[f64], p: u32) -> PeaklessReport {
    assert!(p >= 1, "p must be positive");
    let n = dm.n();
    for u in 0..n {
        for v in u + 1..n {
            let d = dm.get(u, v);
            if d < p + 1 || d > 2 * p {
                continue;
            }
            if !weakly_peakless_pair(dm, f, u, v) {
                return PeaklessReport {
                    holds: false,
                    counterexample: Some(PeaklessCounterexample {
                        u,
                        v,
                        explanation: format!(
                            "d={d}, f(u)={}, f(v)={}: every interior interval vertex has a larger value or breaks the tie",
                            f[u], f[v]
                        ),
                    }),
                };
            }
        }
    }
    PeaklessReport { holds: true, counterexample: None }
}

/// Is every local minimum of `r` in `G^p` global? Returns the smallest-index
/// non-global local minimum otherwise.
pub fn is_gp_unimodal_for_profile(g: &Graph, pi: &Profile, p: u32) -> Result<(bool, Option<usize>)> {
    let dm = all_pairs(g)?;
    let f = dm.eccentricities(pi);
    Ok(gp_unimodal_function(&dm, &f, p))
}

pub fn gp_unimodal_function(dm: &DistanceMatrix, f: &[f64], p: u32) -> (bool, Option<usize>) {
    let rad = f.iter().copied().fold(f64::INFINITY, f64::min);
    for v in 0..dm.n() {
        if f[v] == rad {
            continue;
        }
        let row = dm.row(v);
        let local_min = (0..dm.n()).all(|w| row[w] > p || f[w] >= f[v]);
        if local_min {
            return (false, Some(v));
        }
    }
    (true, None)
}

/// Gromov hyperbolicity stored as `2δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hyperbolicity {
    pub twice: u32,
}

impl Hyperbolicity {
    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for Hyperbolicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

pub fn hyperbolicity_exact(g: &Graph) -> Result<Hyperbolicity> {
    hyperbolicity_capped(g, DEFAULT_HYPERBOLICITY_CAP)
}

/// Four-point condition over all quadruples.
pub fn hyperbolicity_capped(g: &Graph, cap: usize) -> Result<Hyperbolicity> {
    check_cap(g.n(), cap)?;
    let dm = all_pairs(g)?;
    Ok(hyperbolicity_with(&dm))
}

pub fn hyperbolicity_with(dm: &DistanceMatrix) -> Hyperbolicity {
    let n = dm.n();
    let mut best = 0u32;
    for a in 0..n {
        let ra = dm.row(a);
        for b in a + 1..n {
            let rb = dm.row(b);
            let ab = ra[b];
            for c in b + 1..n {
                let rc = dm.row(c);
                let (ac, bc) = (ra[c], rb[c]);
                for d in c + 1..n {
                    let s1 = ab + rc[d];
                    let s2 = ac + rb[d];
                    let s3 = ra[d] + bc;
                    let (hi, mid) = top_two(s1, s2, s3);
                    if hi - mid > best {
                        best = hi - mid;
                    }
                }
            }
        }
    }
    Hyperbolicity { twice: best }
}

#[inline]
fn top_two(a: u32, b: u32, c: u32) -> (u32, u32) {
    let hi = a.max(b).max(c);
    let lo = a.min(b).min(c);
    (hi, a + b + c - hi - lo)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub holds: bool,
    /// `(centre, radius, x, y, w)`: `x, y ∈ B_radius(centre)`, `w ∈ I(x,y)` outside.
    pub counterexample: Option<(usize, u32, usize, usize, usize)>,
}

/// Are all balls convex? For every centre `c` and pair `x, y`, the largest
/// `d(c,w)` over `w ∈ I(x,y)` is propagated along BFS layers from `x`; the
/// brute interval test cross-checks small graphs.
pub fn ball_convexity_check(g: &Graph) -> Result<ConvexityReport> {
    let dm = all_pairs(g)?;
    let report = ball_convexity_layered(g, &dm);
    if g.n() < FULL_CONVEXITY_BELOW && ball_convexity_full(&dm).holds != report.holds {
        return Err(Error::invariant("layered and brute ball-convexity checks disagree"));
    }
    Ok(report)
}

fn ball_convexity_layered(g: &Graph, dm: &DistanceMatrix) -> ConvexityReport {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut top = vec![0u32; n];
    for x in 0..n {
        let dx = dm.row(x);
        order.sort_by_key(|&y| dx[y]);
        for c in 0..n {
            let dc = dm.row(c);
            for &y in &order {
                let mut best = dc[y];
                for &y2 in g.neighbors(y) {
                    if dx[y2] + 1 == dx[y] {
                        best = best.max(top[y2]);
                    }
                }
                top[y] = best;
                let r = dc[x].max(dc[y]);
                if best > r {
                    let w = (0..n).find(|&w| dc[w] > r && dm.in_interval(x, y, w)).unwrap();
                    return ConvexityReport { holds: false, counterexample: Some((c, r, x, y, w)) };
                }
            }
        }
    }
    ConvexityReport { holds: true, counterexample: None }
}

/// Full test: every interval between two ball members stays in the ball.
pub fn ball_convexity_full(dm: &DistanceMatrix) -> ConvexityReport {
    let n = dm.n();
    for c in 0..n {
        let rc = dm.row(c);
        for x in 0..n {
            for y in x + 1..n {
                let r = rc[x].max(rc[y]);
                for w in 0..n {
                    if rc[w] > r && dm.in_interval(x, y, w) {
                        return ConvexityReport { holds: false, counterexample: Some((c, r, x, y, w)) };
                    }
                }
            }
        }
    }
    ConvexityReport { holds: true, counterexample: None }
}

/// Does the given family of balls have the Helly property (pairwise
/// intersecting ⇒ common point)? A family that is not pairwise intersecting
/// passes vacuously.
pub fn helly_balls_check(g: &Graph, family: &[(usize, u32)]) -> Result<bool> {
    if family.is_empty() {
        return Err(Error::invalid("empty ball family"));
    }
    let dm = all_pairs(g)?;
    for (i, &(a, ra)) in family.iter().enumerate() {
        for &(b, rb) in &family[i + 1..] {
            if dm.get(a, b) > ra + rb {
                return Ok(true);
            }
        }
    }
    Ok((0..g.n()).any(|x| family.iter().all(|&(c, r)| dm.get(c, x) <= r)))
}

// Triple test: the intersection of all balls containing two of a, b, c is the set
// of x with d(z,x) ≤ median(d(z,a), d(z,b), d(z,c)) for every z.
fn triple_meets(dm: &DistanceMatrix, a: usize, b: usize, c: usize, candidates: &[usize]) -> bool {
    let n = dm.n();
    candidates.iter().any(|&x| {
        let rx = dm.row(x);
        (0..n).all(|z| {
            let (p, q, s) = (rx[z], dm.get(z, a), dm.get(z, b));
            let t = dm.get(z, c);
            let med = q.max(s).min(q.max(t)).min(s.max(t));
            p <= med
        })
    })
}

/// Helly property of the family of all balls, by the triple criterion.
pub fn is_helly_bruteforce(g: &Graph) -> Result<Option<(usize, usize, usize)>> {
    check_cap(g.n(), 120)?;
    let dm = all_pairs(g)?;
    let all: Vec<usize> = (0..g.n()).collect();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            for c in b + 1..g.n() {
                if !triple_meets(&dm, a, b, c, &all) {
                    return Ok(Some((a, b, c)));
                }
            }
        }
    }
    Ok(None)
}

/// Helly property of half-balls of a bipartite graph; returns a failing triple.
pub fn half_ball_helly_bruteforce(g: &Graph) -> Result<Option<(usize, usize, usize)>> {
    check_cap(g.n(), 120)?;
    let colour = g.bipartition().map_err(|_| Error::invalid("graph is not bipartite"))?;
    let dm = all_pairs(g)?;
    for side in 0..2u8 {
        let part: Vec<usize> = (0..g.n()).filter(|&v| colour[v] == side).collect();
        for (i, &a) in part.iter().enumerate() {
            for (j, &b) in part.iter().enumerate().skip(i + 1) {
                for &c in &part[j + 1..] {
                    if !triple_meets(&dm, a, b, c, &part) {
                        return Ok(Some((a, b, c)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// No vertex with `r > rad + α` is a local minimum in `G^{2α+1}`. Returns the
/// first offending vertex.
pub fn verify_coarse_helly_unimodality(g: &Graph, pi01: &Profile, alpha: u32) -> Result<Option<usize>> {
    if !pi01.is_01() {
        return Err(Error::invalid("coarse Helly check needs a 0-1 profile"));
    }
    let dm = all_pairs(g)?;
    Ok(coarse_helly_with(&dm, pi01, alpha))
}

pub fn coarse_helly_with(dm: &DistanceMatrix, pi01: &Profile, alpha: u32) -> Option<usize> {
    let f = dm.eccentricities(pi01);
    let rad = f.iter().copied().fold(f64::INFINITY, f64::min);
    let reach = 2 * alpha + 1;
    (0..dm.n()).find(|&v| {
        f[v] > rad + alpha as f64 && {
            let row = dm.row(v);
            (0..dm.n()).all(|w| row[w] > reach || f[w] >= f[v])
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiamRad {
    pub diam: u32,
    pub rad: u32,
    pub holds: bool,
}

/// `2 rad(M) ≥ diam(M) ≥ 2 rad(M) − 2α − 1` for the vertex set `M`.
pub fn verify_diam_rad_inequality(g: &Graph, subset: &[usize], alpha: u32) -> Result<DiamRad> {
    if subset.is_empty() {
        return Err(Error::invalid("empty subset"));
    }
    let dm = all_pairs(g)?;
    Ok(diam_rad_with(&dm, subset, alpha))
}

pub fn diam_rad_with(dm: &DistanceMatrix, subset: &[usize], alpha: u32) -> DiamRad {
    let mut diam = 0;
    for &x in subset {
        for &y in subset {
            diam = diam.max(dm.get(x, y));
        }
    }
    let rad = (0..dm.n())
        .map(|v| subset.iter().map(|&x| dm.get(v, x)).max().unwrap())
        .min()
        .unwrap();
    let holds = 2 * rad >= diam && diam + 2 * alpha + 1 >= 2 * rad;
    DiamRad { diam, rad, holds }
}

/// A quasi-median of `(x, y, z)`: a metric triangle `(x', y', z')` with
/// `x' ∈ I(x,y) ∩ I(x,z)` etc., found by greedy interval descent.
pub fn quasi_median(dm: &DistanceMatrix, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
    let n = dm.n();
    let deepest = |a: usize, b: usize, c: usize| -> usize {
        // farthest from a inside I(a,b) ∩ I(a,c)
        (0..n)
            .filter(|&w| dm.in_interval(a, b, w) && dm.in_interval(a, c, w))
            .max_by_key(|&w| (dm.get(a, w), std::cmp::Reverse(w)))
            .unwrap()
    };
    let x1 = deepest(x, y, z);
    let y1 = deepest(y, x1, z);
    let z1 = deepest(z, x1, y1);
    (x1, y1, z1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn matrix_examples() {
        let dm = all_pairs(&gen::path(3)).unwrap();
        assert_eq!(dm.row(0), &[0, 1, 2]);
        assert_eq!(dm.row(2), &[2, 1, 0]);
        let dm = all_pairs(&gen::cycle(4)).unwrap();
        assert_eq!((dm.get(0, 2), dm.get(1, 3), dm.get(0, 1)), (2, 2, 1));
        let dm = all_pairs(&gen::hypercube(3)).unwrap();
        for u in 0..8usize {
            for v in 0..8usize {
                assert_eq!(dm.get(u, v), (u ^ v).count_ones());
            }
        }
        assert!(all_pairs_capped(&gen::path(10), 4).is_err());
    }

    #[test]
    fn peaklessness_examples() {
        let p5 = gen::path(5);
        assert!(is_p_weakly_peakless(&p5, &Profile::unit(5), 1).unwrap().holds);
        let (q4, pi, _, _) = gen::hypercube_pair_zero(4);
        let rep = is_p_weakly_peakless(&q4, &pi, 3).unwrap();
        assert!(!rep.holds);
        let cx = rep.counterexample.unwrap();
        let dm = all_pairs(&q4).unwrap();
        assert!(!weakly_peakless_pair(&dm, &dm.eccentricities(&pi), cx.u, cx.v));
        let gp = gen::grid_plus_path(4);
        assert!(is_p_weakly_peakless(&gp.graph, &gp.profile, 2).unwrap().holds);
    }

    #[test]
    fn unimodality_examples() {
        for seed in 0..5 {
            let t = gen::random_tree(25, seed);
            let pi = gen::random_profile(25, false, seed);
            assert!(is_gp_unimodal_for_profile(&t, &pi, 1).unwrap().0);
        }
        assert!(is_gp_unimodal_for_profile(&gen::cycle(6), &Profile::unit(6), 1).unwrap().0);
        // the pair-zero hypercube at p = 2: decided by enumeration
        let (q4, pi, u, _) = gen::hypercube_pair_zero(4);
        let (ok, witness) = is_gp_unimodal_for_profile(&q4, &pi, 2).unwrap();
        let dm = all_pairs(&q4).unwrap();
        let f = dm.eccentricities(&pi);
        let brute = (0..16).all(|v| {
            f[v] == 3.0 || (0..16).any(|w| dm.get(v, w) <= 2 && f[w] < f[v])
        });
        assert_eq!(ok, brute);
        assert_eq!(f[u], 3.0);
        assert!(witness.is_none() == ok);
    }

    #[test]
    fn hyperbolicity_examples() {
        assert_eq!(hyperbolicity_exact(&gen::random_tree(30, 1)).unwrap().twice, 0);
        let c4 = hyperbolicity_exact(&gen::cycle(4)).unwrap();
        assert_eq!(c4.twice, 2);
        assert_eq!(c4.to_string(), "1");
        let c5 = hyperbolicity_exact(&gen::cycle(5)).unwrap();
        assert_eq!(c5.twice, 1);
        assert_eq!(c5.to_string(), "1/2");
    }

    #[test]
    fn convexity_examples() {
        assert!(ball_convexity_check(&gen::cycle(5)).unwrap().holds);
        let c4 = ball_convexity_check(&gen::cycle(4)).unwrap();
        assert!(!c4.holds);
        assert!(!ball_convexity_check(&gen::cycle(6)).unwrap().holds);
        assert!(ball_convexity_check(&gen::lozenge(3)).unwrap().holds);
    }

    #[test]
    fn helly_examples() {
        let c4 = gen::cycle(4);
        assert!(!helly_balls_check(&c4, &[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap());
        assert!(helly_balls_check(&c4, &[(0, 2), (1, 2), (2, 2), (3, 2)]).unwrap());
        let t = gen::random_tree(20, 4);
        assert!(helly_balls_check(&t, &[(0, 2), (5, 3), (11, 2), (19, 4)]).unwrap());
        assert!(is_helly_bruteforce(&t).unwrap().is_none());
        assert!(is_helly_bruteforce(&gen::king_grid(4, 4)).unwrap().is_none());
        assert!(is_helly_bruteforce(&c4).unwrap().is_some());
        assert!(half_ball_helly_bruteforce(&c4).unwrap().is_none());
        assert!(half_ball_helly_bruteforce(&gen::b_n(4)).unwrap().is_some());
        assert!(half_ball_helly_bruteforce(&gen::b_hat_n(4)).unwrap().is_none());
    }

    #[test]
    fn coarse_helly_examples() {
        let t = gen::random_tree(20, 2);
        assert_eq!(verify_coarse_helly_unimodality(&t, &Profile::unit(20), 0).unwrap(), None);
        let grid = gen::square_grid(4, 4);
        for seed in 0..5 {
            let pi = gen::random_profile(16, true, seed);
            assert_eq!(verify_coarse_helly_unimodality(&grid, &pi, 1).unwrap(), None);
        }
        assert_eq!(verify_coarse_helly_unimodality(&gen::cycle(4), &Profile::unit(4), 1).unwrap(), None);
    }

    #[test]
    fn diam_rad_examples() {
        let t = gen::random_tree(15, 3);
        let all: Vec<usize> = (0..15).collect();
        assert!(verify_diam_rad_inequality(&t, &all, 0).unwrap().holds);
        let king = gen::king_grid(3, 3);
        let r = verify_diam_rad_inequality(&king, &(0..9).collect::<Vec<_>>(), 0).unwrap();
        assert_eq!((r.diam, r.rad, r.holds), (2, 1, true));
        let grid = gen::square_grid(4, 4);
        assert!(verify_diam_rad_inequality(&grid, &[0, 3, 12, 15], 1).unwrap().holds);
    }

    #[test]
    fn quasi_medians_form_metric_triangles() {
        let g = gen::cycle(5);
        let dm = all_pairs(&g).unwrap();
        let (a, b, c) = quasi_median(&dm, 0, 2, 3);
        assert!(dm.in_interval(0, 2, a) && dm.in_interval(2, 0, b) && dm.in_interval(3, 0, c));
    }
}
