//! Graphs with convex balls: vertices without outergates, the terminal vertex and the exact centre.
use graph_center::cb::{center_cb_checked, clique_gate_status, TerminalMode};
use graph_center::gen;

fn main() {
    let c5 = gen::cycle(5);
    let status = clique_gate_status(&c5, &[0, 1]).unwrap();
    println!("C5, clique {{0,1}}: vertices without outergate {:?}", (0..5).filter(|&z| status.marked[z]).collect::<Vec<_>>());

    let g = gen::pentagon_tail(80, 4);
    for seed in 0..3 {
        let pi = gen::random_profile(g.n(), false, seed);
        let run = center_cb_checked(&g, &pi, TerminalMode::Randomized { seed }, 500).unwrap();
        println!(
            "profile {seed}: terminal {} after {} steps, {} shrink rounds, centre {} with r = {} ({:?})",
            run.terminal, run.descent_steps, run.shrink_iterations, run.center, run.radius, run.finish
        );
    }
}
