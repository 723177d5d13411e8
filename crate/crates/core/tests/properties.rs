mod common;

use proptest::prelude::*;
use tetrad::incidence::{IncidenceStructure, LineSet};
use tetrad::pg3::{dual_line, lines_incident};
use tetrad::report_io::{parse_model, serialize_model, Generator};
use tetrad::tetra::classify_triple;
use tetrad::PrimeField;

use common::pg;

fn structure() -> impl Strategy<Value = IncidenceStructure> {
    (1usize..14).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            IncidenceStructure::from_fn(n, |i, j| bits[i.min(j) * n + i.max(j)])
        })
    })
}

fn structure_and_sets() -> impl Strategy<Value = (IncidenceStructure, LineSet, LineSet)> {
    structure().prop_flat_map(|m| {
        let n = m.len();
        let set = prop::collection::btree_set(0..n, 0..=n).prop_map(LineSet::new);
        (Just(m), set.clone(), set)
    })
}

proptest! {
    #[test]
    fn dagger_is_a_galois_connection((m, s, t) in structure_and_sets()) {
        let ds = m.dagger(&s).unwrap();
        let dds = m.dagger(&ds).unwrap();
        prop_assert!(s.is_subset(&dds));
        prop_assert_eq!(m.dagger(&dds).unwrap(), ds.clone());
        let st = s.union(&t);
        prop_assert!(m.dagger(&st).unwrap().is_subset(&ds));
        prop_assert_eq!(
            m.dagger(&st).unwrap(),
            ds.intersection(&m.dagger(&t).unwrap())
        );
    }

    #[test]
    fn relation_is_symmetric_and_reflexive(m in structure()) {
        for i in 0..m.len() {
            prop_assert!(m.incident(i, i));
            for j in 0..m.len() {
                prop_assert_eq!(m.incident(i, j), m.incident(j, i));
            }
        }
    }

    #[test]
    fn model_text_round_trips(m in structure(), q in prop::option::of(prop::sample::select(vec![2u32, 3, 5, 7]))) {
        let generator = q.map(|q| Generator::Pg3 { q });
        let text = serialize_model(&m, generator).unwrap();
        let parsed = parse_model(&text).unwrap();
        prop_assert_eq!(&parsed.structure, &m);
        prop_assert_eq!(parsed.generator, generator);
        prop_assert_eq!(parsed.to_text().unwrap(), text);
    }

    #[test]
    fn corrupted_text_never_half_parses(m in structure(), cut in any::<prop::sample::Index>()) {
        let text = serialize_model(&m, None).unwrap();
        let cut = cut.index(text.len());
        let prefix = &text[..cut];
        // A prefix either fails or, if it ends on a line boundary, parses to
        // a substructure of the original.
        if let Ok(p) = parse_model(prefix) {
            prop_assert!(prefix.ends_with('\n'));
            prop_assert_eq!(p.structure.len(), m.len());
            for (i, j) in p.structure.pairs() {
                prop_assert!(m.incident(i, j));
            }
        }
    }

    #[test]
    fn field_inverse_and_distributivity(
        q in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13, 65_521]),
        a in any::<u32>(), b in any::<u32>(), c in any::<u32>()
    ) {
        let f = PrimeField::new(q).unwrap();
        let (a, b, c) = (f.elem(a as u64), f.elem(b as u64), f.elem(c as u64));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, f.zero());
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), f.one());
            prop_assert_eq!(a.pow((q - 1) as u64), f.one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_line_is_an_incidence_preserving_involution(i in 0usize..130, j in 0usize..130) {
        let (model, _) = pg(3);
        let (l, k) = (model.lines[i], model.lines[j]);
        prop_assert_eq!(dual_line(&dual_line(&l)), l);
        prop_assert_eq!(
            lines_incident(&l, &k).unwrap(),
            lines_incident(&dual_line(&l), &dual_line(&k)).unwrap()
        );
    }

    #[test]
    fn triple_class_ignores_order(x in 0usize..130, y in 0usize..130, z in 0usize..130) {
        prop_assume!(x != y && y != z && x != z);
        let (model, catalog) = pg(3);
        let m = &model.structure;
        let c = classify_triple(x, y, z, m, &catalog).unwrap();
        for (a, b, d) in [(y, z, x), (z, x, y), (y, x, z), (x, z, y), (z, y, x)] {
            prop_assert_eq!(classify_triple(a, b, d, m, &catalog).unwrap(), c);
        }
    }
}
