use ncca_core::conservation::random_nc_test;
use ncca_core::theory::{
    build_rule_from_flow, extract_flow_hex, extract_flow_tri, random_closed_flow,
};
use ncca_core::xsim::{
    decode_payload_pair, random_corpus, ConfigCodec, HexInTriCodec, TriInHexCodec,
};
use ncca_core::{
    step, total_sum, Cell, Configuration, FlowFunction, Geometry, LocalRule, StateSet, TorusDims,
};
use proptest::prelude::*;

fn tri_dims() -> impl Strategy<Value = TorusDims> {
    (2usize..6, 1usize..5).prop_map(|(w, h)| TorusDims::triangular(2 * w, 2 * h).unwrap())
}

fn hex_dims() -> impl Strategy<Value = TorusDims> {
    (2usize..8, 2usize..8).prop_map(|(w, h)| TorusDims::hexagonal(w, h).unwrap())
}

fn osmosis_t() -> ncca_core::CellularAutomaton {
    let f = FlowFunction::antisymmetric(StateSet::range(0, 3, 0).unwrap(), [(0, 3, 1)]).unwrap();
    build_rule_from_flow(f, Geometry::Triangular).unwrap()
}

fn osmosis_h() -> ncca_core::CellularAutomaton {
    let f = FlowFunction::antisymmetric(StateSet::range(1, 7, 1).unwrap(), [(1, 7, 1)]).unwrap();
    build_rule_from_flow(f, Geometry::Hexagonal).unwrap()
}

fn assert_symmetric_adjacency(dims: TorusDims) {
    for c in dims.cells() {
        for &n in dims.neighbors(c).iter() {
            let there = dims.neighbors(n).iter().filter(|&&m| m == c).count();
            let here = dims.neighbors(c).iter().filter(|&&m| m == n).count();
            assert_eq!(there, here, "{c:?} -> {n:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tri_adjacency_is_symmetric(dims in tri_dims()) {
        assert_symmetric_adjacency(dims);
    }

    #[test]
    fn hex_adjacency_is_symmetric(dims in hex_dims()) {
        assert_symmetric_adjacency(dims);
    }

    #[test]
    fn index_and_cell_are_inverse(dims in hex_dims(), x in -50i64..50, y in -50i64..50) {
        let c = dims.wrap(Cell::new(x, y));
        prop_assert_eq!(dims.cell(dims.index(c)), c);
    }

    #[test]
    fn closed_flows_round_trip(q in 0i64..4, seed in any::<u64>()) {
        let states = StateSet::range(0, 3, q).unwrap();
        let f = random_closed_flow(&states, Geometry::Triangular, 40, seed);
        let ca = build_rule_from_flow(f.clone(), Geometry::Triangular).unwrap();
        prop_assert_eq!(extract_flow_tri(&ca).unwrap(), f);
    }

    #[test]
    fn closed_hex_flows_round_trip(q in 1i64..8, seed in any::<u64>()) {
        let states = StateSet::range(1, 7, q).unwrap();
        let f = random_closed_flow(&states, Geometry::Hexagonal, 40, seed);
        let ca = build_rule_from_flow(f.clone(), Geometry::Hexagonal).unwrap();
        prop_assert_eq!(extract_flow_hex(&ca).unwrap(), f);
    }

    #[test]
    fn osmosis_conserves_the_sum(dims in tri_dims(), seed in any::<u64>()) {
        let report = random_nc_test(&osmosis_t(), dims, 4, 5, seed).unwrap();
        prop_assert!(report.conserving());
    }

    #[test]
    fn hex_step_commutes_with_translation(dims in hex_dims(), dx in -4i64..4, dy in -4i64..4, seed in any::<u64>()) {
        let h = osmosis_h();
        let c = random_corpus(dims, h.states().states(), 1, seed).pop().unwrap();
        let a = step(&h, &c.translated(dx, dy)).unwrap();
        let b = step(&h, &c).unwrap().translated(dx, dy);
        prop_assert_eq!(total_sum(&a), total_sum(&c));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn payload_pairs_decode(j in 0usize..7, k in 0usize..7) {
        let p: Vec<i64> = (0..7).map(|i| 8i64 << i).collect();
        prop_assert_eq!(decode_payload_pair(p[j] + p[k], &p).unwrap(), (j.min(k), j.max(k)));
    }

    #[test]
    fn tri_in_hex_codec_round_trips(seed in any::<u64>()) {
        let tri = TorusDims::triangular(12, 4).unwrap();
        let hex = TorusDims::hexagonal(12, 6).unwrap();
        let codec = TriInHexCodec::new(tri, hex, 4, StateSet::range(0, 3, 0).unwrap()).unwrap();
        let c = random_corpus(tri, &[0, 1, 2, 3], 1, seed).pop().unwrap();
        let e = codec.encode(&c).unwrap();
        prop_assert_eq!(total_sum(&e), total_sum(&c) + 4 * 24);
        prop_assert_eq!(codec.decode(&e).unwrap(), c);
    }

    #[test]
    fn hex_in_tri_codec_round_trips(seed in any::<u64>(), w in 1usize..4) {
        let hex = TorusDims::hexagonal(w + 1, 2 * (w + 1)).unwrap();
        let codec = HexInTriCodec::new(hex, StateSet::range(1, 7, 1).unwrap()).unwrap();
        let c: Configuration = random_corpus(hex, &[1, 2, 3, 4, 5, 6, 7], 1, seed).pop().unwrap();
        let e = codec.encode(&c).unwrap();
        prop_assert_eq!(total_sum(&e), total_sum(&c));
        prop_assert_eq!(codec.decode(&e).unwrap(), c);
    }
}
