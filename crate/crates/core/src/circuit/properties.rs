use proptest::prelude::*;

use super::{
    cost, counts, depth, emit_gatelist, parse_gatelist, wire_load, Circuit, CostModel, DepthModel,
    Gate,
};
use crate::sim::{run, BasisState};

const W: usize = 6;

fn gate() -> impl Strategy<Value = Gate> {
    let distinct3 = (0..W, 0..W - 1, 0..W - 2).prop_map(|(a, b, c)| {
        let mut free: Vec<usize> = (0..W).collect();
        let a = free.remove(a);
        let b = free.remove(b);
        let c = free.remove(c);
        (a, b, c)
    });
    prop_oneof![
        (0..W).prop_map(Gate::x),
        distinct3.clone().prop_map(|(a, b, _)| Gate::cx(a, b)),
        distinct3.clone().prop_map(|(a, b, c)| Gate::ccx(a, b, c)),
        distinct3.prop_map(|(a, b, _)| Gate::swap(a, b)),
    ]
}

fn circuit() -> impl Strategy<Value = Circuit> {
    prop::collection::vec(gate(), 0..40).prop_map(|g| Circuit::from_gates(W, g).unwrap())
}

proptest! {
    #[test]
    fn gatelist_round_trip(c in circuit()) {
        let back = parse_gatelist(&emit_gatelist(&c)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn cost_and_counts_add(a in circuit(), b in circuit()) {
        let m = CostModel::default();
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(cost(&ab, &m), cost(&a, &m) + cost(&b, &m));
        prop_assert_eq!(counts(&ab), counts(&a) + counts(&b));
    }

    #[test]
    fn depth_bounds(a in circuit(), b in circuit()) {
        let m = DepthModel::default();
        let ab = a.compose(&b).unwrap();
        let (da, db, dab) = (depth(&a, &m), depth(&b, &m), depth(&ab, &m));
        prop_assert!(dab >= da.max(db));
        prop_assert!(dab <= da + db);
        prop_assert!(dab >= wire_load(&ab, &m).into_iter().max().unwrap_or(0));
        prop_assert!(dab <= ab.gates().iter().map(|g| m.0.weight(g.kind())).sum::<u64>());
    }

    #[test]
    fn inverse_undoes(c in circuit(), v in 0u64..(1 << W)) {
        let s = BasisState::from_u64(W, v);
        let there = run(&c, &s).unwrap();
        prop_assert_eq!(run(&c.inverse(), &there).unwrap(), s.clone());
        prop_assert_eq!(run(&c.compose(&c.inverse()).unwrap(), &s).unwrap(), s);
    }

    #[test]
    fn composition_is_sequential(a in circuit(), b in circuit(), v in 0u64..(1 << W)) {
        let s = BasisState::from_u64(W, v);
        let seq = run(&b, &run(&a, &s).unwrap()).unwrap();
        prop_assert_eq!(run(&a.compose(&b).unwrap(), &s).unwrap(), seq);
    }
}
