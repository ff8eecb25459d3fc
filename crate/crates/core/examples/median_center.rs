//! Cube-free median graphs: Θ-classes, the star of a vertex, and the halving solver on the grid-plus-path instance.
use graph_center::gen;
use graph_center::median::{cut_on_best_neighbor_traced, star_and_eccentricities, theta_classes};

fn main() {
    let gp = gen::grid_plus_path(4);
    let theta = theta_classes(&gp.graph).unwrap();
    println!("n = {}, {} Θ-classes", gp.graph.n(), theta.len());
    let star = star_and_eccentricities(&gp.graph, &gp.profile, gp.v).unwrap();
    for (i, &z) in star.vertices.iter().enumerate() {
        println!("star of v: r({z}) = {}", star.eccentricities[i]);
    }
    let run = cut_on_best_neighbor_traced(&gp.graph, &gp.profile).unwrap();
    for round in &run.rounds {
        println!("region of {:>3} vertices, {:?}", round.region_size, round.case);
    }
    println!("centre {} (c = {}), radius {}", run.center, gp.c, run.radius);
}
