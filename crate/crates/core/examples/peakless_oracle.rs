//! Weak peaklessness: the hypercube counterexample and the (4δ+1) bound on a random graph.
use graph_center::gen;
use graph_center::oracle::{hyperbolicity_exact, is_p_weakly_peakless};

fn main() {
    let (q4, pi, u, v) = gen::hypercube_pair_zero(4);
    println!("Q4 with zero weight on {u} and {v}:");
    for p in 1..=4 {
        let rep = is_p_weakly_peakless(&q4, &pi, p).unwrap();
        match rep.counterexample {
            Some(c) => println!("  p = {p}: fails at ({}, {}): {}", c.u, c.v, c.explanation),
            None => println!("  p = {p}: holds"),
        }
    }
    let g = gen::random_connected(35, 0.1, 11);
    let delta = hyperbolicity_exact(&g).unwrap();
    let p = 2 * delta.twice + 1;
    let ok = (0..50).all(|s| is_p_weakly_peakless(&g, &gen::random_profile(g.n(), false, s), p).unwrap().holds);
    println!("random graph: δ = {delta}, {p}-weakly peakless on 50 profiles: {ok}");
}
