//! Deterministic descent for 0-1 profiles and FPscan-descent on a hyperbolic graph.
use graph_center::bridged::WbImprove;
use graph_center::descent::{
    deterministic_descent_01, deterministic_step_bound, fpscan_descent, fpscan_start, BruteImprove,
};
use graph_center::gen;
use graph_center::oracle::hyperbolicity_exact;
use graph_center::radius::{center_bruteforce_small, radius_value};

fn main() {
    let g = gen::lozenge(8);
    let pi = gen::random_profile(g.n(), true, 2);
    let (c, trace) = deterministic_descent_01(&g, &pi, &WbImprove).unwrap();
    println!(
        "lozenge, n = {}: {} steps (bound {}), r = {}, radius {}",
        g.n(),
        trace.steps(),
        deterministic_step_bound(g.n()),
        radius_value(&g, &pi, c),
        center_bruteforce_small(&g, &pi).unwrap().0
    );

    let k = gen::king_grid(7, 7);
    let pi = gen::random_profile(k.n(), true, 5);
    let delta = hyperbolicity_exact(&k).unwrap();
    let start = fpscan_start(&k, &pi);
    let (c, trace) = fpscan_descent(&k, &pi, delta, &BruteImprove { p: 1 }).unwrap();
    println!(
        "king grid, δ = {delta}: start r = {}, {} steps to r = {}, radius {}",
        radius_value(&k, &pi, start),
        trace.steps(),
        radius_value(&k, &pi, c),
        center_bruteforce_small(&k, &pi).unwrap().0
    );
}
