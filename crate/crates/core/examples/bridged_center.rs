//! Centre of a weakly bridged graph by sample-select-descent with the B_2 improvement step.
use graph_center::bridged::{improve_eccentricity_wb, WbImprove};
use graph_center::descent::sample_select_descent;
use graph_center::gen;
use graph_center::radius::{center_bruteforce_small, radius_value};
use graph_center::recognize::Class;

fn main() {
    let g = gen::block_tree(&gen::blocks_for(Class::WeaklyBridged), 400, 7);
    let pi = gen::random_profile(g.n(), false, 7);
    let v = 0;
    let u = improve_eccentricity_wb(&g, &pi, v).unwrap();
    println!("one step from {v}: r = {} -> {u}: r = {}", radius_value(&g, &pi, v), radius_value(&g, &pi, u));
    let (c, trace) = sample_select_descent(&g, &pi, &WbImprove, 1).unwrap();
    let (rad, _) = center_bruteforce_small(&g, &pi).unwrap();
    println!(
        "n = {}, sampled {} vertices, {} descent steps, centre {c} with r = {} (brute force {rad})",
        g.n(),
        trace.sample.len(),
        trace.steps(),
        trace.radius()
    );
}
