//! Parse a graph and a profile, evaluate the radius function, find the centre by brute force.
use graph_center::graph::Graph;
use graph_center::profile::Profile;
use graph_center::radius::{center_bruteforce_small, radius_at};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a 6-cycle with a pendant path 0-6-7
    let g = Graph::parse("8 8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 6\n6 7\n")?;
    let pi = Profile::parse(g.n(), "7 2\n3 1\n")?;
    for v in 0..g.n() {
        let e = radius_at(&g, &pi, v);
        println!("r({v}) = {:>2}  (farthest weighted {:?})", e.value, e.furthest);
    }
    let (rad, centre) = center_bruteforce_small(&g, &pi)?;
    println!("radius {rad}, centre {centre:?}");
    Ok(())
}
