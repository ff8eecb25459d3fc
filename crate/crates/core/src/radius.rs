//! The weighted eccentricity `r(v) = max π(z)·d(v,z)` and brute-force centers.

use crate::error::{check_cap, Result};
use crate::graph::Graph;
use crate::profile::Profile;

pub const DEFAULT_BRUTE_CAP: usize = 5000;

/// `r(v)` together with the set of support vertices attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusEvaluation {
    pub vertex: usize,
    pub value: f64,
    pub furthest: Vec<usize>,
}

/// Weighted eccentricity from a precomputed distance row.
#[inline]
pub fn eccentricity(pi: &Profile, dist: &[u32]) -> f64 {
    let mut best = 0.0f64;
    for &(z, w) in pi.support() {
        let val = w * dist[z] as f64;
        if val > best {
            best = val;
        }
    }
    best
}

/// Evaluation from a distance row rooted at `v`.
pub fn evaluate_row(pi: &Profile, v: usize, dist: &[u32]) -> RadiusEvaluation {
    let value = eccentricity(pi, dist);
    let furthest = pi
        .support()
        .iter()
        .filter(|&&(z, w)| w * dist[z] as f64 == value)
        .map(|e| e.0)
        .collect();
    RadiusEvaluation { vertex: v, value, furthest }
}

/// One BFS from `v`.
pub fn radius_at(g: &Graph, pi: &Profile, v: usize) -> RadiusEvaluation {
    evaluate_row(pi, v, &g.bfs(v))
}

#[inline]
pub fn radius_value(g: &Graph, pi: &Profile, v: usize) -> f64 {
    eccentricity(pi, &g.bfs(v))
}

/// Exact radius and full center by one BFS per vertex.
pub fn center_bruteforce_small(g: &Graph, pi: &Profile) -> Result<(f64, Vec<usize>)> {
    center_bruteforce_capped(g, pi, DEFAULT_BRUTE_CAP)
}

pub fn center_bruteforce_capped(g: &Graph, pi: &Profile, cap: usize) -> Result<(f64, Vec<usize>)> {
    check_cap(g.n(), cap)?;
    let ecc: Vec<f64> = (0..g.n()).map(|v| radius_value(g, pi, v)).collect();
    Ok(center_of(&ecc))
}

/// Minimum value and its argmin set, for a full eccentricity table.
pub fn center_of(ecc: &[f64]) -> (f64, Vec<usize>) {
    let rad = ecc.iter().copied().fold(f64::INFINITY, f64::min);
    let center = (0..ecc.len()).filter(|&v| ecc[v] == rad).collect();
    (rad, center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn path_center() {
        let g = gen::path(5);
        let pi = Profile::unit(5);
        let e = radius_at(&g, &pi, 2);
        assert_eq!(e.value, 2.0);
        assert_eq!(e.furthest, vec![0, 4]);
        assert_eq!(center_bruteforce_small(&g, &pi).unwrap(), (2.0, vec![2]));
    }

    #[test]
    fn grid_plus_path_values() {
        let inst = gen::grid_plus_path(4);
        assert_eq!(radius_at(&inst.graph, &inst.profile, inst.c).value, 20.0);
        assert_eq!(radius_at(&inst.graph, &inst.profile, inst.v).value, 70.0);
        assert_eq!(center_bruteforce_small(&inst.graph, &inst.profile).unwrap(), (20.0, vec![inst.c]));
    }

    #[test]
    fn hypercube_pair_zero() {
        let (g, pi, u, v) = gen::hypercube_pair_zero(3);
        let (rad, center) = center_bruteforce_small(&g, &pi).unwrap();
        assert_eq!(rad, 2.0);
        assert_eq!(center, vec![u.min(v), u.max(v)]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = gen::path(10);
        assert!(center_bruteforce_capped(&g, &Profile::unit(10), 5).is_err());
    }
}
