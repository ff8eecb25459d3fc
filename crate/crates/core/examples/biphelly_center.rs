//! Bipartite Helly graphs: the improvement step, the k-ball radius for 0-1 profiles, and the centre.
use graph_center::biphelly::{improve_eccentricity_bh, k_ball_radius_01, BhImprove};
use graph_center::descent::sample_select_descent;
use graph_center::gen;
use graph_center::profile::Profile;
use graph_center::radius::radius_value;

fn main() {
    let grid = gen::square_grid(4, 4);
    let corners = Profile::zero_one(16, &[0, 3, 12, 15]).unwrap();
    let k4 = k_ball_radius_01(&grid, &corners, 4).unwrap();
    let inside: Vec<usize> = (0..16).filter(|&v| k4[v].is_some()).collect();
    println!("vertices whose 4-ball holds all corners: {inside:?}");

    let g = gen::b_hat_n(5);
    let pi = gen::random_profile(g.n(), false, 3);
    for v in 0..g.n() {
        let u = improve_eccentricity_bh(&g, &pi, v).unwrap();
        println!("{v:>2}: r = {:>3} -> {u:>2}: r = {:>3}", radius_value(&g, &pi, v), radius_value(&g, &pi, u));
    }
    let (c, _) = sample_select_descent(&g, &pi, &BhImprove, 0).unwrap();
    println!("centre {c}, radius {}", radius_value(&g, &pi, c));
}
