mod common;

use std::collections::{BTreeMap, HashSet};

use e7spec::rootsys::{catalog, find_subsystem, orthogonal_system, subsystem_roots};
use e7spec::weyl::{
    conjugacy_classes, pointwise_stabilizer, reflection_subgroup, setwise_stabilizer,
    signed_cycle_type, theta_minus_one, SignedCycleType, WeylElement, W_ORDER,
};

#[test]
fn order_and_classes() {
    let w = common::w();
    assert_eq!(w.elements().len(), W_ORDER);
    assert_eq!(W_ORDER, 1024 * 81 * 5 * 7);
    assert!(w.handle().contains(&WeylElement::minus_identity()));
    let classes = conjugacy_classes(w.handle()).unwrap();
    assert_eq!(classes.len(), 60);
    assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), W_ORDER);
    assert_eq!(classes.iter().filter(|c| c.size == 1).count(), 2);
}

#[test]
fn closed_under_products_sample() {
    let w = common::w();
    let els = w.elements();
    for i in (0..els.len()).step_by(104_729) {
        let x = els[i];
        let y = els[(i * 7 + 13) % els.len()];
        assert!(w.handle().contains(&x.mul(&y)));
        assert!(w.handle().contains(&x.inverse()));
    }
}

#[test]
fn a1_normalizer_is_the_centralizer() {
    let w = common::w();
    let a1 = find_subsystem("A1").unwrap();
    let n = setwise_stabilizer(&a1.pi1, w.handle()).unwrap();
    let c = pointwise_stabilizer(&a1.pi1, w.handle()).unwrap();
    assert_eq!(n.len(), 23040);
    assert_eq!(n.elements(), c.elements());
}

#[test]
fn extreme_rows() {
    let w = common::w();
    let e7 = find_subsystem("E7").unwrap();
    assert_eq!(setwise_stabilizer(&e7.pi1, w.handle()).unwrap().len(), 1);
    let e6 = find_subsystem("E6").unwrap();
    assert_eq!(pointwise_stabilizer(&e6.pi1, w.handle()).unwrap().len(), 1);
    let empty = find_subsystem("empty").unwrap();
    assert_eq!(
        setwise_stabilizer(&empty.pi1, w.handle()).unwrap().len(),
        W_ORDER
    );
}

#[test]
fn normalizer_decomposition() {
    let w = common::w();
    for spec in catalog().iter().filter(|s| !s.pi1.is_empty()) {
        let (_, pi2) = orthogonal_system(&spec.pi1);
        let c = pointwise_stabilizer(&spec.pi1, w.handle()).unwrap();
        let w2 = reflection_subgroup(&pi2).unwrap();
        assert_eq!(c.elements(), w2.elements(), "{}", spec.label);

        let phi1: Vec<_> = subsystem_roots(&spec.pi1).into_keys().collect();
        let nw1 = setwise_stabilizer(&phi1, w.handle()).unwrap();
        let npi1 = setwise_stabilizer(&spec.pi1, w.handle()).unwrap();
        let w1 = reflection_subgroup(&spec.pi1).unwrap();
        assert_eq!(nw1.len(), w1.len() * npi1.len(), "{}", spec.label);
        assert_eq!(
            w1.len() as u64,
            spec.cartan_type.weyl_order(),
            "{}",
            spec.label
        );
        let inter = w1
            .elements()
            .unwrap()
            .iter()
            .filter(|x| npi1.contains(x))
            .count();
        assert_eq!(inter, 1, "{}", spec.label);

        let classes = conjugacy_classes(&npi1).unwrap();
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), npi1.len());

        let t = theta_minus_one(&spec.pi1).unwrap();
        assert!(npi1.contains(&t), "{}", spec.label);
        for r in &pi2 {
            assert_eq!(t.apply(r).unwrap(), -*r, "{}", spec.label);
        }
    }
}

#[test]
fn a3_quotient_has_order_two() {
    let w = common::w();
    let a3 = find_subsystem("A3").unwrap();
    let n = setwise_stabilizer(&a3.pi1, w.handle()).unwrap();
    let c = pointwise_stabilizer(&a3.pi1, w.handle()).unwrap();
    assert_eq!(n.len() / c.len(), 2);
}

#[test]
fn d6_signed_cycle_types() {
    let w = common::w();
    let a1 = find_subsystem("A1").unwrap();
    let (_, pi2) = orthogonal_system(&a1.pi1);
    let w2 = pointwise_stabilizer(&a1.pi1, w.handle()).unwrap();
    for x in w2.elements().unwrap() {
        let t = signed_cycle_type(x, &pi2).unwrap();
        assert_eq!(t.negative_count() % 2, 0, "{t}");
        assert_eq!(t.cycles.iter().map(|c| c.0).sum::<usize>(), 6);
    }

    let classes = conjugacy_classes(&w2).unwrap();
    assert_eq!(classes.len(), 37);
    let mut by_type: BTreeMap<SignedCycleType, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_type
            .entry(signed_cycle_type(&c.representative, &pi2).unwrap())
            .or_default()
            .push(i);
    }
    assert_eq!(by_type.len(), 34);
    let split: HashSet<String> = by_type
        .iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(t, v)| {
            assert_eq!(v.len(), 2);
            t.to_string()
        })
        .collect();
    let expect: HashSet<String> = ["[6]", "[4,2]", "[2,2,2]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(split, expect);

    // n = 6 and n/2 is odd, so -w is never conjugate to w for these types.
    let theta = theta_minus_one(&a1.pi1).unwrap();
    for idx in by_type.values().filter(|v| v.len() == 2) {
        let other = classes[idx[0]].representative.mul(&theta);
        let conjugate_to = |k: usize| {
            let target = classes[k].representative;
            w2.elements()
                .unwrap()
                .iter()
                .any(|g| other.conjugate_by(g) == target)
        };
        assert!(!conjugate_to(idx[0]));
        assert!(conjugate_to(idx[1]));
    }
}

#[test]
fn six_cycle_row_has_type_six() {
    let m = [
        [1, 0, 1, 1, 1, 1, 1],
        [0, 1, 0, 1, 1, 1, 1],
        [0, 0, -1, -1, -1, -1, -1],
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
    ];
    let x = WeylElement::from_matrix(&m).unwrap();
    let a1 = find_subsystem("A1").unwrap();
    let (_, pi2) = orthogonal_system(&a1.pi1);
    assert_eq!(signed_cycle_type(&x, &pi2).unwrap().to_string(), "[6]");
}
