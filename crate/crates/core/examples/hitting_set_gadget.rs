//! The hitting-set gadget: v is a local minimum in G^2 exactly when no set of X hits every set of Y.
use graph_center::gen::{gen_hse, has_hitting_set};
use graph_center::radius::radius_value;

fn main() {
    let y = vec![vec![0], vec![1]];
    for x in [vec![vec![0], vec![1]], vec![vec![0, 1]]] {
        let inst = gen_hse(&x, &y, 2).unwrap();
        let g = &inst.graph;
        let rv = radius_value(g, &inst.profile, inst.v);
        let best_near = g
            .ball(inst.v, 2)
            .into_iter()
            .map(|(w, _)| radius_value(g, &inst.profile, w))
            .fold(f64::INFINITY, f64::min);
        println!(
            "X = {x:?}: hitting set {}, r(v) = {rv}, best in B_2(v) = {best_near}, local minimum {}",
            has_hitting_set(&x, &y),
            best_near >= rv
        );
    }
}
