//! Run every class recogniser on a few named graphs and print verdicts with witnesses.
use graph_center::gen;
use graph_center::recognize::{recognize, recognize_gp_unimodal_radius, Class, DEFAULT_RECOGNIZE_CAP};

fn main() {
    let graphs = [
        ("C5", gen::cycle(5)),
        ("4x4 grid", gen::square_grid(4, 4)),
        ("lozenge 3", gen::lozenge(3)),
        ("B-hat 4", gen::b_hat_n(4)),
        ("Q3", gen::hypercube(3)),
        ("wheel 5", gen::wheel(5)),
    ];
    for (name, g) in &graphs {
        let yes: Vec<&str> = Class::ALL
            .into_iter()
            .filter(|&c| recognize(g, c, DEFAULT_RECOGNIZE_CAP).unwrap().verdict)
            .map(Class::name)
            .collect();
        println!("{name:<10} {}", yes.join(", "));
    }
    let c4 = gen::cycle(4);
    let rep = recognize_gp_unimodal_radius(&c4, 1).unwrap();
    let w = rep.witness.unwrap();
    println!("C4 is not G^1-unimodal: {} is a local minimum, {} is better, profile {:?}", w.u, w.v, w.profile.support());
}
