//! Cost per improvement step against m, and median-solver rounds against log n.
use graph_center::cli::{bench_rows, BenchMethod, ProfileKind, SolveOptions};
use graph_center::recognize::Class;

fn main() {
    let opts = SolveOptions::default();
    for (method, class) in [("wb-step", Class::WeaklyBridged), ("bh-step", Class::BipartiteHelly)] {
        let m = BenchMethod::parse(method).unwrap();
        let rows = bench_rows("blocks", &[500, 2000, 8000], &[m], Some(class), ProfileKind::Weighted, 0..1, &opts, 64, 1).unwrap();
        for r in rows {
            println!("{method}: m = {:>6}, {:.3} ms/step, {:.1} ns/edge", r.m, r.millis / r.steps as f64, 1e6 * r.millis / r.steps as f64 / r.m as f64);
        }
    }
    let median = BenchMethod::parse("median").unwrap();
    for r in bench_rows("square_grid", &[8, 16, 32, 64, 128], &[median], None, ProfileKind::Weighted, 0..1, &opts, 0, 1).unwrap() {
        println!("median: n = {:>5}, {} rounds (log2 n + 1 = {:.1}), {:.1} ms", r.n, r.steps, (r.n as f64).log2() + 1.0, r.millis);
    }
}
