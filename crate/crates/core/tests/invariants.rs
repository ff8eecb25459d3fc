use graph_center::biphelly::{improve_eccentricity_bh, BhImprove};
use graph_center::bridged::{improve_eccentricity_wb, WbImprove};
use graph_center::cb::{center_cb, improve_eccentricity_cb};
use graph_center::descent::sample_select_descent;
use graph_center::gen;
use graph_center::graph::Graph;
use graph_center::median::cut_on_best_neighbor;
use graph_center::oracle::all_pairs;
use graph_center::profile::Profile;
use graph_center::recognize::Class;
use proptest::prelude::*;

fn instance(class: Class) -> impl Strategy<Value = (Graph, Profile, u64)> {
    (8usize..70, any::<u64>(), any::<bool>()).prop_map(move |(n, seed, zero_one)| {
        let g = gen::block_tree(&gen::blocks_for(class), n, seed);
        let pi = gen::random_profile(g.n(), zero_one, seed ^ 0x5eed);
        (g, pi, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_text_round_trips(n in 2usize..40, seed in any::<u64>()) {
        let g = gen::random_connected(n, 0.2, seed);
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn profile_text_round_trips(n in 2usize..60, seed in any::<u64>(), zero_one in any::<bool>()) {
        let pi = gen::random_profile(n, zero_one, seed);
        prop_assert_eq!(Profile::parse(n, &pi.to_text()).unwrap(), pi);
    }

    #[test]
    fn wb_steps_improve_within_two((g, pi, _) in instance(Class::WeaklyBridged)) {
        let dm = all_pairs(&g).unwrap();
        let f = dm.eccentricities(&pi);
        for v in 0..g.n() {
            let u = improve_eccentricity_wb(&g, &pi, v).unwrap();
            if u == v {
                prop_assert!((0..g.n()).all(|w| dm.get(v, w) > 2 || f[w] >= f[v]));
            } else {
                prop_assert!(dm.get(u, v) <= 2 && f[u] < f[v]);
            }
        }
    }

    #[test]
    fn bh_and_cb_steps_never_worsen((g, pi, _) in instance(Class::BipartiteHelly), (h, rho, _) in instance(Class::Cb)) {
        for (graph, profile, bh) in [(&g, &pi, true), (&h, &rho, false)] {
            let dm = all_pairs(graph).unwrap();
            let f = dm.eccentricities(profile);
            for v in 0..graph.n() {
                let u = if bh { improve_eccentricity_bh(graph, profile, v) } else { improve_eccentricity_cb(graph, profile, v) }.unwrap();
                prop_assert!(dm.get(u, v) <= 2);
                prop_assert!(u == v || f[u] < f[v]);
            }
        }
    }

    #[test]
    fn solvers_find_a_centre(
        (wb, wp, s1) in instance(Class::WeaklyBridged),
        (bh, bp, s2) in instance(Class::BipartiteHelly),
        (cb, cp, s3) in instance(Class::Cb),
        (md, mp, _) in instance(Class::CubeFreeMedian),
    ) {
        let rad = |g: &Graph, pi: &Profile| all_pairs(g).unwrap().center(pi).0;
        let r = graph_center::radius::radius_value;
        prop_assert_eq!(r(&wb, &wp, sample_select_descent(&wb, &wp, &WbImprove, s1).unwrap().0), rad(&wb, &wp));
        prop_assert_eq!(r(&bh, &bp, sample_select_descent(&bh, &bp, &BhImprove, s2).unwrap().0), rad(&bh, &bp));
        prop_assert_eq!(r(&cb, &cp, center_cb(&cb, &cp, s3).unwrap()), rad(&cb, &cp));
        prop_assert_eq!(r(&md, &mp, cut_on_best_neighbor(&md, &mp).unwrap()), rad(&md, &mp));
    }

    #[test]
    fn descent_trace_strictly_decreases((g, pi, seed) in instance(Class::Bridged)) {
        let (c, trace) = sample_select_descent(&g, &pi, &WbImprove, seed).unwrap();
        prop_assert_eq!(trace.terminal, c);
        prop_assert!(trace.path.windows(2).all(|w| w[1].1 < w[0].1));
    }
}
