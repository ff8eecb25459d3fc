//! Improvement step for weakly bridged graphs: clique eccentricities through
//! outergates, minimisation over `B_1(v)`, and the shadow partition of `N(v)`.

use crate::descent::ImproveStep;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::outergate::{best_preneighbor_map, OutergateMap};
use crate::profile::Profile;
use crate::rmq::max_over_nonneighbors;

/// `r(v)` with its distance row and furthest set.
pub(crate) struct Eval {
    pub r: f64,
    pub dist: Vec<u32>,
    pub far: Vec<usize>,
}

pub(crate) fn evaluate(g: &Graph, pi: &Profile, v: usize) -> Eval {
    let dist = g.bfs(v);
    let r = crate::radius::eccentricity(pi, &dist);
    let far = pi.support().iter().filter(|&&(z, w)| w * dist[z] as f64 == r).map(|e| e.0).collect();
    Eval { r, dist, far }
}

pub(crate) fn check_clique(g: &Graph, k: &[usize]) -> Result<Vec<usize>> {
    let mut k = k.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.is_empty() {
        return Err(Error::invalid("empty clique"));
    }
    if let Some(&x) = k.iter().find(|&&x| x >= g.n()) {
        return Err(Error::invalid(format!("vertex {x} out of range")));
    }
    for (i, &a) in k.iter().enumerate() {
        for &b in &k[i + 1..] {
            if !g.has_edge(a, b) {
                return Err(Error::invalid(format!("{a} and {b} are not adjacent")));
            }
        }
    }
    Ok(k)
}

/// Eccentricities of the members of a clique `k` (sorted). Vertices with
/// `marked[y]` have no outergate and sit at distance `d(y,K)` from all of `K`.
pub(crate) fn clique_eccentricities_core(
    g: &Graph,
    pi: &Profile,
    k: &[usize],
    map: Option<&OutergateMap>,
    marked: Option<&[bool]>,
) -> Vec<f64> {
    let n = g.n();
    // π over K: best and second best
    let (mut top1, mut top2) = ((f64::NEG_INFINITY, usize::MAX), f64::NEG_INFINITY);
    for &w in k {
        let p = pi.weight(w);
        if p > top1.0 {
            top2 = top1.0;
            top1 = (p, w);
        } else if p > top2 {
            top2 = p;
        }
    }
    let Some(map) = map else {
        return k.iter().map(|&w| (if w == top1.1 { top2 } else { top1.0 }).max(0.0)).collect();
    };
    let mut alpha = vec![0.0f64; n];
    let mut beta = vec![0.0f64; n];
    let mut flat = 0.0f64;
    for &(y, p) in pi.support() {
        if map.in_target(y) {
            continue;
        }
        let d = map.dist_to_target[y];
        if marked.is_some_and(|m| m[y]) {
            flat = flat.max(p * d as f64);
            continue;
        }
        let u = map.gate_or_self(y);
        alpha[u] = alpha[u].max(p * d as f64);
        beta[u] = beta[u].max(p * (d + 1) as f64);
    }
    // β maxima over N(K) \ N(w) on the subgraph induced by N[K]
    let mut closed: Vec<usize> = k.to_vec();
    let mut seen = vec![false; n];
    for &w in k {
        seen[w] = true;
    }
    for &w in k {
        for &u in g.neighbors(w) {
            if !seen[u] {
                seen[u] = true;
                closed.push(u);
            }
        }
    }
    closed.sort_unstable();
    let h = g.induced(&closed);
    let kappa: Vec<f64> = closed.iter().map(|&u| if map.in_target(u) { 0.0 } else { beta[u] }).collect();
    let far_beta = max_over_nonneighbors(&h, &kappa);
    k.iter()
        .map(|&w| {
            let local = closed.binary_search(&w).unwrap();
            let mut r = flat.max(far_beta[local]).max(if w == top1.1 { top2 } else { top1.0 });
            for &u in g.neighbors(w) {
                if !map.in_target(u) {
                    r = r.max(alpha[u]);
                }
            }
            r.max(0.0)
        })
        .collect()
}

/// `r` on every vertex of the clique `k`, returned in the order of `k`.
pub fn clique_eccentricities_wb(g: &Graph, pi: &Profile, k: &[usize]) -> Result<Vec<(usize, f64)>> {
    let k = check_clique(g, k)?;
    let map = if k.len() == g.n() { None } else { Some(best_preneighbor_map(g, &k)?) };
    let r = clique_eccentricities_core(g, pi, &k, map.as_ref(), None);
    Ok(k.into_iter().zip(r).collect())
}

pub(crate) fn neighbourhood_map(g: &Graph, v: usize) -> Option<OutergateMap> {
    let mut ball: Vec<usize> = g.neighbors(v).to_vec();
    ball.push(v);
    (ball.len() < g.n()).then(|| best_preneighbor_map(g, &ball).expect("nonempty proper subset"))
}

// Smallest-index minimiser of `values` below `bound`.
fn best_below(cands: &[(usize, f64)], bound: f64) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for &(u, r) in cands {
        if r < bound && best.is_none_or(|b| r < b.1 || (r == b.1 && u < b.0)) {
            best = Some((u, r));
        }
    }
    best
}

/// Minimiser of `r` over `B_1(v)`; `v` itself wins ties with it, otherwise the
/// smallest index.
pub(crate) fn minimize_ball1_with(
    g: &Graph,
    pi: &Profile,
    v: usize,
    ev: &Eval,
    clique_r: impl Fn(&[usize]) -> Vec<f64>,
) -> (usize, f64) {
    if ev.r == 0.0 {
        return (v, 0.0);
    }
    let near: Vec<usize> = ev.far.iter().copied().filter(|&z| ev.dist[z] == 1).collect();
    match near.len() {
        0 => {}
        1 => {
            let u = near[0];
            let ru = crate::radius::radius_value(g, pi, u);
            return if ru < ev.r { (u, ru) } else { (v, ev.r) };
        }
        _ => return (v, ev.r),
    }
    let Some(map) = neighbourhood_map(g, v) else { return (v, ev.r) };
    let k = interval_neighbours(g, v, &map, &ev.far);
    if k.is_empty() {
        return (v, ev.r);
    }
    let rs = clique_r(&k);
    let cands: Vec<(usize, f64)> = k.into_iter().zip(rs).collect();
    best_below(&cands, ev.r).unwrap_or((v, ev.r))
}

/// `∩{N(v) ∩ I(v,z) : z ∈ far}` through outergates relative to `B_1(v)`.
pub(crate) fn interval_neighbours(g: &Graph, v: usize, map: &OutergateMap, far: &[usize]) -> Vec<usize> {
    let mut gates: Vec<usize> = far.iter().map(|&z| map.gate_or_self(z)).collect();
    gates.sort_unstable();
    gates.dedup();
    let mut count = vec![0usize; g.n()];
    for &gz in &gates {
        for &w in g.neighbors(gz) {
            if g.has_edge(v, w) {
                count[w] += 1;
            }
        }
    }
    g.neighbors(v).iter().copied().filter(|&w| count[w] == gates.len()).collect()
}

pub fn minimize_ball1_wb(g: &Graph, pi: &Profile, v: usize) -> usize {
    minimize_ball1_wb_value(g, pi, v).0
}

pub(crate) fn minimize_ball1_wb_value(g: &Graph, pi: &Profile, v: usize) -> (usize, f64) {
    let ev = evaluate(g, pi, v);
    minimize_ball1_with(g, pi, v, &ev, |k| {
        let map = (k.len() < g.n()).then(|| best_preneighbor_map(g, k).unwrap());
        clique_eccentricities_core(g, pi, k, map.as_ref(), None)
    })
}

/// Classes of `w ≡ w'` on `N(v)` (same shadow in the furthest set), largest
/// shadow first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowPartition {
    pub classes: Vec<Vec<usize>>,
    pub shadow_size: Vec<usize>,
    /// Class index per vertex; `usize::MAX` outside `N(v)`.
    pub class_of: Vec<usize>,
}

/// Refines `N(v)` by adjacency to each gate in ascending order; `gate_mult[g]`
/// counts the furthest vertices gated at `g`.
pub(crate) fn refine_shadows(g: &Graph, v: usize, gates: &[usize], gate_mult: &[usize]) -> ShadowPartition {
    let n = g.n();
    let nv = g.neighbors(v);
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = vec![nv.to_vec()];
    let mut pos = vec![0usize; n];
    for (i, &w) in nv.iter().enumerate() {
        class_of[w] = 0;
        pos[w] = i;
    }
    let mut hit = vec![0usize; 1];
    let mut target = vec![usize::MAX; 1];
    let mut touched = Vec::new();
    for &gz in gates {
        let hits: Vec<usize> = g.neighbors(gz).iter().copied().filter(|&w| class_of[w] != usize::MAX).collect();
        for &w in &hits {
            if hit[class_of[w]] == 0 {
                touched.push(class_of[w]);
            }
            hit[class_of[w]] += 1;
        }
        // classes hit only in part are split; the hit members move to a new class
        for &w in &hits {
            let c = class_of[w];
            if hit[c] == members[c].len() || target[c] != usize::MAX {
                continue;
            }
            target[c] = members.len();
            members.push(Vec::new());
            hit.push(0);
            target.push(usize::MAX);
        }
        for &w in &hits {
            let c = class_of[w];
            hit[c] = 0;
            let nc = target[c];
            if nc == usize::MAX {
                continue;
            }
            let list = &mut members[c];
            let i = pos[w];
            let last = *list.last().unwrap();
            let end = list.len() - 1;
            list.swap(i, end);
            pos[last] = i;
            list.pop();
            pos[w] = members[nc].len();
            members[nc].push(w);
            class_of[w] = nc;
        }
        for c in touched.drain(..) {
            target[c] = usize::MAX;
        }
    }
    // shadow sizes via class representatives
    let reps: Vec<usize> = members.iter().map(|m| *m.iter().min().unwrap()).collect();
    let mut shadow = vec![0usize; members.len()];
    for &gz in gates {
        for &w in g.neighbors(gz) {
            let c = class_of[w];
            if c != usize::MAX && reps[c] == w {
                shadow[c] += gate_mult[gz];
            }
        }
    }
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(shadow[c]), reps[c]));
    let mut classes = Vec::with_capacity(order.len());
    let mut shadow_size = Vec::with_capacity(order.len());
    for (new, &c) in order.iter().enumerate() {
        let mut m = std::mem::take(&mut members[c]);
        m.sort_unstable();
        for &w in &m {
            class_of[w] = new;
        }
        classes.push(m);
        shadow_size.push(shadow[c]);
    }
    ShadowPartition { classes, shadow_size, class_of }
}

/// Shadow partition of `N(v)` for the furthest set of `v`. Requires every
/// furthest vertex at distance at least 2.
pub fn shadow_partition(g: &Graph, pi: &Profile, v: usize) -> Result<ShadowPartition> {
    let ev = evaluate(g, pi, v);
    if ev.far.iter().any(|&z| ev.dist[z] < 2) {
        return Err(Error::invalid("furthest set meets B_1(v)"));
    }
    let map = neighbourhood_map(g, v).ok_or_else(|| Error::invalid("B_1(v) is the whole graph"))?;
    let (gates, mult) = gate_multiset(g, &map, &ev.far);
    Ok(refine_shadows(g, v, &gates, &mult))
}

pub(crate) fn gate_multiset(g: &Graph, map: &OutergateMap, far: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut mult = vec![0usize; g.n()];
    let mut gates = Vec::new();
    for &z in far {
        let gz = map.gate_or_self(z);
        if mult[gz] == 0 {
            gates.push(gz);
        }
        mult[gz] += 1;
    }
    gates.sort_unstable();
    (gates, mult)
}

/// The shadow-partition step shared with graphs with convex balls: picks `z`
/// outside the largest shadow and the neighbour `w_max` of `v` towards `z` with the
/// most neighbours in that shadow class. `None` when the largest shadow is the
/// whole furthest set.
pub(crate) fn pick_w_max(g: &Graph, v: usize, map: &OutergateMap, far: &[usize]) -> Option<usize> {
    let (gates, mult) = gate_multiset(g, map, far);
    let part = refine_shadows(g, v, &gates, &mult);
    if part.shadow_size[0] == far.len() {
        return None;
    }
    let rep = part.classes[0][0];
    let z = far.iter().copied().find(|&z| !g.has_edge(map.gate_or_self(z), rep))?;
    let gz = map.gate_or_self(z);
    let mut best: Option<(usize, usize)> = None;
    for &w in g.neighbors(gz) {
        if !g.has_edge(v, w) {
            continue;
        }
        let score = g.neighbors(w).iter().filter(|&&x| part.class_of[x] == 0).count();
        if best.is_none_or(|b| score > b.1) {
            best = Some((w, score));
        }
    }
    best.map(|b| b.0)
}

/// A vertex of `B_2(v)` with smaller `r`, or `v` when `v` is central.
pub fn improve_eccentricity_wb(g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
    let ev = evaluate(g, pi, v);
    let (u, ru) = minimize_ball1_with(g, pi, v, &ev, |k| {
        let map = (k.len() < g.n()).then(|| best_preneighbor_map(g, k).unwrap());
        clique_eccentricities_core(g, pi, k, map.as_ref(), None)
    });
    if ru < ev.r {
        return Ok(u);
    }
    if ev.r == 0.0 || ev.far.iter().any(|&z| ev.dist[z] < 2) {
        return Ok(v);
    }
    let Some(map) = neighbourhood_map(g, v) else { return Ok(v) };
    let Some(w_max) = pick_w_max(g, v, &map, &ev.far) else { return Ok(v) };
    let (plus, r_plus) = minimize_ball1_wb_value(g, pi, w_max);
    if r_plus >= ev.r {
        return Ok(v);
    }
    Ok(plus)
}

/// Registered step for weakly bridged and bridged graphs.
#[derive(Clone, Copy, Debug, Default)]
pub struct WbImprove;

impl ImproveStep for WbImprove {
    fn improve(&self, g: &Graph, pi: &Profile, v: usize) -> Result<usize> {
        improve_eccentricity_wb(g, pi, v)
    }
    fn step_radius(&self) -> u32 {
        2
    }
    fn class_name(&self) -> &'static str {
        "weakly-bridged"
    }
}
