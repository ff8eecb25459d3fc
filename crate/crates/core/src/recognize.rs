//! Class recognisers and recognition of graphs whose radius functions are all
//! `G^p`-unimodal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;
use crate::oracle::{all_pairs_capped, DistanceMatrix};
use crate::profile::{Frac, Profile};

pub const DEFAULT_RECOGNIZE_CAP: usize = 500;
pub const DEFAULT_GP_CAP: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    WeaklyModular,
    Median,
    CubeFreeMedian,
    Bridged,
    WeaklyBridged,
    Cb,
    BipartiteHelly,
}

impl Class {
    pub const ALL: [Class; 7] = [
        Class::WeaklyModular,
        Class::Median,
        Class::CubeFreeMedian,
        Class::Bridged,
        Class::WeaklyBridged,
        Class::Cb,
        Class::BipartiteHelly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::WeaklyModular => "weakly-modular",
            Class::Median => "median",
            Class::CubeFreeMedian => "cube-free-median",
            Class::Bridged => "bridged",
            Class::WeaklyBridged => "weakly-bridged",
            Class::Cb => "cb",
            Class::BipartiteHelly => "bipartite-helly",
        }
    }

    /// The class together with the listed classes that contain it.
    pub fn implied(self) -> Vec<Class> {
        use Class::*;
        match self {
            Bridged => vec![Bridged, WeaklyBridged, Cb],
            CubeFreeMedian => vec![CubeFreeMedian, BipartiteHelly],
            other => vec![other],
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Class> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s || c.name().replace('-', "_") == s)
            .ok_or_else(|| Error::invalid(format!("unknown class {s:?}")))
    }
}

/// A violated condition and the vertices exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub vertices: Vec<usize>,
}

impl Witness {
    fn new(condition: &str, vertices: Vec<usize>) -> Witness {
        Witness { condition: condition.to_string(), vertices }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: Class,
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl ClassReport {
    fn from(class: Class, failure: Option<Witness>) -> ClassReport {
        ClassReport { class, verdict: failure.is_none(), witness: failure }
    }
}

pub fn recognize(g: &Graph, class: Class, cap: usize) -> Result<ClassReport> {
    check_cap(g.n(), cap)?;
    let failure = match class {
        Class::WeaklyModular => weakly_modular_failure(g),
        Class::Median => median_failure(g),
        Class::CubeFreeMedian => median_failure(g).or_else(|| cube_failure(g)),
        Class::Bridged => weakly_modular_failure(g)
            .or_else(|| induced_c4(g))
            .or_else(|| induced_c5(g)),
        Class::WeaklyBridged => weakly_modular_failure(g).or_else(|| induced_c4(g)),
        Class::Cb => cb_failure(g),
        Class::BipartiteHelly => bipartite_helly_failure(g),
    };
    Ok(ClassReport::from(class, failure))
}

pub fn is_weakly_modular(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::WeaklyModular, DEFAULT_RECOGNIZE_CAP)
}

pub fn is_median(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::Median, DEFAULT_RECOGNIZE_CAP)
}

pub fn is_cube_free_median(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::CubeFreeMedian, DEFAULT_RECOGNIZE_CAP)
}

pub fn is_bridged(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::Bridged, DEFAULT_RECOGNIZE_CAP)
}

pub fn is_weakly_bridged(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::WeaklyBridged, DEFAULT_RECOGNIZE_CAP)
}

pub fn is_cb_graph(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::Cb, DEFAULT_RECOGNIZE_CAP)
}

pub fn is_bipartite_helly(g: &Graph) -> Result<ClassReport> {
    recognize(g, Class::BipartiteHelly, DEFAULT_RECOGNIZE_CAP)
}

// Sorted-list intersection test with a predicate on the common element.
fn common_neighbor(g: &Graph, a: usize, b: usize, mut keep: impl FnMut(usize) -> bool) -> Option<usize> {
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    let (mut i, mut j) = (0, 0);
    while i < na.len() && j < nb.len() {
        match na[i].cmp(&nb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if keep(na[i]) {
                    return Some(na[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    None
}

fn down_neighbors(g: &Graph, d: &[u32], u: usize) -> Vec<usize> {
    g.neighbors(u).iter().copied().filter(|&y| d[y] + 1 == d[u]).collect()
}

fn weakly_modular_failure(g: &Graph) -> Option<Witness> {
    for v in 0..g.n() {
        let d = g.bfs(v);
        // TC: an edge xy with d(v,x) = d(v,y) = k ≥ 1 needs a common neighbour at k-1.
        for (x, y) in g.edges() {
            if d[x] == d[y] && d[x] >= 1 && common_neighbor(g, x, y, |z| d[z] + 1 == d[x]).is_none() {
                return Some(Witness::new("TC", vec![v, x, y]));
            }
        }
        // QC: nonadjacent x, y ∈ N(u) one step closer to v need a common neighbour at k-1.
        for u in 0..g.n() {
            if d[u] < 2 {
                continue;
            }
            let down = down_neighbors(g, &d, u);
            for (i, &x) in down.iter().enumerate() {
                for &y in &down[i + 1..] {
                    if !g.has_edge(x, y) && common_neighbor(g, x, y, |z| d[z] + 2 == d[u]).is_none() {
                        return Some(Witness::new("QC", vec![v, u, x, y]));
                    }
                }
            }
        }
    }
    None
}

fn median_failure(g: &Graph) -> Option<Witness> {
    if let Err((x, y)) = g.bipartition() {
        return Some(Witness::new("bipartite", vec![x, y]));
    }
    // bipartite: TC is vacuous, so modular ⇔ QC
    if let Some(w) = weakly_modular_failure(g) {
        // QC failure (v,u,x,y): the triple (v,x,y) has no median
        let v = w.vertices;
        return Some(Witness::new("median-triple", vec![v[0], v[2], v[3]]));
    }
    k23(g).map(|(x, y, z)| Witness::new("median-triple", vec![x, y, z]))
}

// Three vertices with two common neighbours: a K_{2,3}.
fn k23(g: &Graph) -> Option<(usize, usize, usize)> {
    let n = g.n();
    let mut count = vec![0u32; n];
    let mut via: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        let mut touched = Vec::new();
        for &x in g.neighbors(a) {
            for &b in g.neighbors(x) {
                if b == a {
                    continue;
                }
                if count[b] == 0 {
                    touched.push(b);
                }
                count[b] += 1;
                via[b].push(x);
                if count[b] == 3 {
                    let t = &via[b];
                    return Some((t[0], t[1], t[2]));
                }
            }
        }
        for b in touched {
            count[b] = 0;
            via[b].clear();
        }
    }
    None
}

// In a median graph: a vertex with three pairwise square-linked neighbours
// spanning a 3-cube.
fn cube_failure(g: &Graph) -> Option<Witness> {
    for u in 0..g.n() {
        let nb = g.neighbors(u);
        let completion = |a: usize, b: usize| common_neighbor(g, a, b, |z| z != u);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                let Some(ab) = completion(a, b) else { continue };
                for &c in &nb[j + 1..] {
                    let (Some(ac), Some(bc)) = (completion(a, c), completion(b, c)) else { continue };
                    let top = common_neighbor(g, ab, ac, |z| z != a && g.has_edge(z, bc));
                    if let Some(t) = top {
                        return Some(Witness::new("cube", vec![u, a, b, c, ab, ac, bc, t]));
                    }
                }
            }
        }
    }
    None
}

fn induced_c4(g: &Graph) -> Option<Witness> {
    let n = g.n();
    let mut via: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        let mut touched = Vec::new();
        for &x in g.neighbors(a) {
            for &b in g.neighbors(x) {
                if b <= a || g.has_edge(a, b) {
                    continue;
                }
                if via[b].is_empty() {
                    touched.push(b);
                }
                via[b].push(x);
            }
        }
        for &b in &touched {
            let list = &via[b];
            for (i, &x) in list.iter().enumerate() {
                for &y in &list[i + 1..] {
                    if !g.has_edge(x, y) {
                        return Some(Witness::new("induced-C4", vec![a, x, b, y]));
                    }
                }
            }
        }
        for b in touched {
            via[b].clear();
        }
    }
    None
}

// An induced C5 is isometric, so it shows up as an edge cd at distance 2 from a
// with private neighbours b ∈ N(a) ∩ N(c), e ∈ N(a) ∩ N(d).
fn induced_c5(g: &Graph) -> Option<Witness> {
    for a in 0..g.n() {
        let d = g.bfs(a);
        for (c, dd) in g.edges() {
            if d[c] != 2 || d[dd] != 2 {
                continue;
            }
            let bs: Vec<usize> =
                g.neighbors(c).iter().copied().filter(|&b| d[b] == 1 && !g.has_edge(b, dd)).collect();
            if bs.is_empty() {
                continue;
            }
            for &e in g.neighbors(dd) {
                if d[e] != 1 || g.has_edge(e, c) {
                    continue;
                }
                if let Some(&b) = bs.iter().find(|&&b| !g.has_edge(b, e)) {
                    return Some(Witness::new("induced-C5", vec![a, b, c, dd, e]));
                }
            }
        }
    }
    None
}

fn cb_failure(g: &Graph) -> Option<Witness> {
    for v in 0..g.n() {
        let d = g.bfs(v);
        // INC: N(u) ∩ I(u,v) is a clique
        for u in 0..g.n() {
            if d[u] < 2 {
                continue;
            }
            let down = down_neighbors(g, &d, u);
            for (i, &x) in down.iter().enumerate() {
                for &y in &down[i + 1..] {
                    if !g.has_edge(x, y) {
                        return Some(Witness::new("INC", vec![v, u, x, y]));
                    }
                }
            }
        }
        // TPC: edge xy at level k has a common neighbour at k-1, or spans a pentagon
        // x-w-z-w'-y with w, w' at k-1 and z at k-2.
        for (x, y) in g.edges() {
            let k = d[x];
            if k != d[y] || k == 0 {
                continue;
            }
            if common_neighbor(g, x, y, |z| d[z] + 1 == k).is_some() {
                continue;
            }
            let pentagon = k >= 2
                && down_neighbors(g, &d, x).into_iter().any(|w| {
                    g.neighbors(y).iter().any(|&w2| {
                        d[w2] + 1 == k
                            && w2 != w
                            && !g.has_edge(w, w2)
                            && common_neighbor(g, w, w2, |z| d[z] + 2 == k).is_some()
                    })
                });
            if !pentagon {
                return Some(Witness::new("TPC", vec![v, x, y]));
            }
        }
    }
    None
}

fn bipartite_helly_failure(g: &Graph) -> Option<Witness> {
    if let Err((x, y)) = g.bipartition() {
        return Some(Witness::new("bipartite", vec![x, y]));
    }
    if let Some(w) = weakly_modular_failure(g) {
        return Some(Witness::new("modular", w.vertices));
    }
    let rows: Vec<Vec<u32>> = (0..g.n()).map(|u| g.bfs(u)).collect();
    for u in 0..g.n() {
        for v in 0..g.n() {
            if rows[u][v] >= 3
                && crate::outergate::interval_outergate_with(g, &rows[u], &rows[v], v).is_none()
            {
                return Some(Witness::new("interval-outergate", vec![u, v]));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct GpWitness {
    pub u: usize,
    pub v: usize,
    /// Profile under which `u` is a local minimum in `G^p` but `r(v) < r(u)`.
    pub profile: Profile,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GpReport {
    pub p: u32,
    pub verdict: bool,
    pub witness: Option<GpWitness>,
}

pub fn recognize_gp_unimodal_radius(g: &Graph, p: u32) -> Result<GpReport> {
    recognize_gp_unimodal_radius_capped(g, p, DEFAULT_GP_CAP)
}

/// Decides whether every radius function of `g` is `G^p`-unimodal by testing the
/// condition UC(u,v) for every pair with `d(u,v) > p`.
pub fn recognize_gp_unimodal_radius_capped(g: &Graph, p: u32, cap: usize) -> Result<GpReport> {
    if p == 0 {
        return Err(Error::invalid("p must be positive"));
    }
    let dm = all_pairs_capped(g, cap)?;
    for u in 0..g.n() {
        let ball: Vec<usize> = (0..g.n()).filter(|&x| dm.get(u, x) <= p).collect();
        for v in 0..g.n() {
            if dm.get(u, v) <= p {
                continue;
            }
            if let Some(choice) = uc_choice(&dm, &ball, u, v) {
                let profile = violating_profile(&dm, u, v, &ball, &choice)?;
                return Ok(GpReport { p, verdict: false, witness: Some(GpWitness { u, v, profile }) });
            }
        }
    }
    Ok(GpReport { p, verdict: true, witness: None })
}

// For each x in B_p(u), the smallest w with d(x,w) ≥ d(u,w) and d(x,w) > d(v,w);
// None if some x has no such w.
fn uc_choice(dm: &DistanceMatrix, ball: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let (ru, rv) = (dm.row(u), dm.row(v));
    ball.iter()
        .map(|&x| {
            let rx = dm.row(x);
            (0..dm.n()).find(|&w| rx[w] >= ru[w] && rx[w] > rv[w])
        })
        .collect()
}

/// The profile from the UC(u,v) construction: `π(w) = 1/min{d(w,x) : w = w_x}`.
/// Weights are scaled to integers when the common denominator is small.
pub fn build_violating_profile(g: &Graph, u: usize, v: usize, p: u32) -> Result<Profile> {
    let dm = all_pairs_capped(g, DEFAULT_GP_CAP)?;
    if dm.get(u, v) <= p {
        return Err(Error::invalid(format!("d({u},{v}) ≤ p")));
    }
    let ball: Vec<usize> = (0..g.n()).filter(|&x| dm.get(u, x) <= p).collect();
    let choice = uc_choice(&dm, &ball, u, v)
        .ok_or_else(|| Error::NoWitness(format!("UC({u},{v}) fails for p={p}")))?;
    violating_profile(&dm, u, v, &ball, &choice)
}

fn violating_profile(dm: &DistanceMatrix, u: usize, v: usize, ball: &[usize], choice: &[usize]) -> Result<Profile> {
    let n = dm.n();
    let mut denom = vec![u32::MAX; n];
    for (&x, &w) in ball.iter().zip(choice) {
        denom[w] = denom[w].min(dm.get(x, w));
    }
    let support: Vec<(usize, u128)> =
        (0..n).filter(|&w| denom[w] != u32::MAX).map(|w| (w, denom[w] as u128)).collect();
    // exact check of the three postconditions with π(w) = 1/denom(w)
    let r = |y: usize| -> Frac {
        support
            .iter()
            .map(|&(w, m)| Frac::new(dm.get(y, w) as u128, m))
            .fold(Frac::new(0, 1), |a, b| if b > a { b } else { a })
    };
    let one = Frac::new(1, 1);
    if r(u) != one || r(v) >= one || ball.iter().any(|&x| r(x) < one) {
        return Err(Error::invariant(format!("violating profile for ({u},{v}) fails its postconditions")));
    }
    let lcm = support.iter().try_fold(1u128, |acc, &(_, m)| {
        let l = acc / gcd(acc, m) * m;
        (l <= 1 << 40).then_some(l)
    });
    let entries: Vec<(usize, f64)> = match lcm {
        Some(l) => support.iter().map(|&(w, m)| (w, (l / m) as f64)).collect(),
        None => support.iter().map(|&(w, m)| (w, 1.0 / m as f64)).collect(),
    };
    Profile::new(n, &entries)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
