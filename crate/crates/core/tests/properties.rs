use fdsrank_core::canonical::{lower_bound_l, refined_bound_lp, upper_bound_u};
use fdsrank_core::constructions::{conjunctive_rank, extend_alphabet};
use fdsrank_core::{canonicalize, make_fds, minrank_exact, Digraph, Fds, Limits};
use proptest::prelude::*;

fn arb_fds() -> impl Strategy<Value = Fds> {
    (1usize..=3, 2u32..=3)
        .prop_flat_map(|(n, q)| {
            let masks = proptest::collection::vec(0u32..(1 << n), n);
            (Just(n), Just(q), masks)
        })
        .prop_flat_map(|(n, q, masks)| {
            let inputs: Vec<Vec<usize>> = masks
                .iter()
                .map(|m| (0..n).filter(|u| m >> u & 1 == 1).collect())
                .collect();
            let tables = inputs
                .iter()
                .map(|ins| proptest::collection::vec(0..q, (q as usize).pow(ins.len() as u32)))
                .collect::<Vec<_>>();
            (Just(n), Just(q), Just(inputs), tables)
        })
        .prop_map(|(n, q, inputs, tables)| make_fds(n, q, inputs, tables).unwrap())
}

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            Digraph::from_arcs_dedup(n, (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fixed_periodic_rank_ordered(f in arb_fds()) {
        let lim = Limits::default();
        let fix = f.fixed_points(&lim).unwrap().len() as u64;
        let per = f.periodic_rank(&lim).unwrap();
        let rank = f.rank(&lim).unwrap();
        prop_assert!(fix <= per && per <= rank && rank <= (f.q() as u64).pow(f.n() as u32));
    }

    #[test]
    fn interaction_graph_within_declared(f in arb_fds()) {
        let ig = f.interaction_graph();
        let declared = f.declared_graph();
        prop_assert!(ig.arcs().all(|(u, v)| declared.has_arc(u, v)));
    }

    #[test]
    fn text_roundtrip(f in arb_fds()) {
        prop_assert_eq!(Fds::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn alphabet_extension_keeps_rank(f in arb_fds()) {
        let lim = Limits::default();
        let ext = extend_alphabet(&f);
        prop_assert_eq!(ext.rank(&lim).unwrap(), f.rank(&lim).unwrap());
        prop_assert_eq!(ext.interaction_graph(), f.interaction_graph());
    }

    #[test]
    fn canonical_bound_chain(d in arb_digraph(3)) {
        let lim = Limits::default();
        let c = canonicalize(&d);
        let l = lower_bound_l(&c, &lim).unwrap();
        let lp = refined_bound_lp(&c, &lim).unwrap();
        let u = upper_bound_u(&c, &lim).unwrap();
        let m = minrank_exact(&d, 2, &lim).unwrap();
        let cr = conjunctive_rank(&d, &lim).unwrap();
        prop_assert!(l <= lp && lp <= m && m <= cr, "L={l} L'={lp} minrank={m} crank={cr}");
        prop_assert!(lp <= u, "L'={lp} U={u}");
    }

    #[test]
    fn canonical_graph_has_no_cycles_through_sinks(d in arb_digraph(5)) {
        let c = canonicalize(&d);
        let g = c.to_digraph();
        let a = c.num_sources();
        prop_assert!((0..a).all(|v| g.in_degree(v) == 0));
        prop_assert!((a..g.n()).all(|v| g.out_degree(v) == 0 && g.in_degree(v) > 0));
    }
}
