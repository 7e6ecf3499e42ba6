use std::sync::Arc;

use ckr_gap::instances::combine_on;
use ckr_gap::rational::rat;
use ckr_gap::{CutLabeling, GapParams, SimplexGraph};
use proptest::prelude::*;

fn lattice() -> Arc<SimplexGraph> {
    Arc::new(SimplexGraph::new(4, 6).unwrap())
}

/// Random pinned labelings with labels in 1..=5.
fn labelings(g: Arc<SimplexGraph>) -> impl Strategy<Value = CutLabeling> {
    let nodes = g.node_count();
    proptest::collection::vec(1u8..=5, nodes).prop_map(move |mut labels| {
        for (i, &t) in g.terminals().iter().enumerate() {
            labels[t] = i as u8 + 1;
        }
        CutLabeling::new(g.clone(), labels).unwrap()
    })
}

/// Like `labelings`, but label 4 never appears on the face x4 = 0.
fn face_labelings(g: Arc<SimplexGraph>) -> impl Strategy<Value = CutLabeling> {
    labelings(g).prop_map(|q| {
        let g = q.graph().clone();
        let labels = (0..g.node_count())
            .map(|v| if g.point(v).coord(3) == 0 && q.label(v) == 4 { 5 } else { q.label(v) })
            .collect();
        CutLabeling::new(g, labels).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonicalization_never_costs_more(q in labelings(lattice())) {
        let g = q.graph().clone();
        let w = combine_on(&g, &GapParams::reference().with_c(rat(1, 6))).unwrap();
        let canon = q.canonicalize_reachability();
        prop_assert!(canon.delta().is_subset(&q.delta()));
        prop_assert!(canon.cost(&w).unwrap() <= q.cost(&w).unwrap());
        prop_assert!(canon.count_label(5) >= q.count_label(5));
        prop_assert_eq!(canon.canonicalize_reachability(), canon);
    }

    #[test]
    fn face_restriction_keeps_face_edges(q in face_labelings(lattice())) {
        let face = q.restrict_to_face().unwrap();
        let g = q.graph();
        let fg = face.graph();
        prop_assert_eq!(fg.k(), 3);
        let lift = |v: usize| {
            let p = fg.point(v);
            g.index_of(&[p.coord(0), p.coord(1), p.coord(2), 0]).unwrap()
        };
        // Every face edge cut in the restriction was cut in the original.
        for e in fg.edges() {
            if face.label(e.u) != face.label(e.v) {
                prop_assert!(q.label(lift(e.u)) != q.label(lift(e.v)));
            }
        }
    }
}
