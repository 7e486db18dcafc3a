use e7spec::oracle::{sl2_elements, sl2_omega, sl2_orders, sl2_torus_exponents};
use e7spec::spectrum::{
    mu, n_p, nu, nu_1, nu_coset, nu_delta, nu_delta_removed, order_exists, CosetSpec, QSpec,
    SpectrumSet,
};
use num_bigint::BigInt;
use num_integer::Integer;

fn qs(p: u64, m: u32) -> QSpec {
    QSpec::new(p, m).unwrap()
}

const ODD_Q: [(u64, u32); 6] = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)];

#[test]
fn field_coset_is_scaled_subfield_spectrum() {
    let got = nu_coset(&qs(3, 2), CosetSpec::parse("phi", 2).unwrap()).unwrap();
    assert_eq!(got, nu_1(&qs(3, 1)).scaled(&BigInt::from(2)));
    let got = nu_coset(&qs(5, 2), CosetSpec::parse("phi-delta", 2).unwrap()).unwrap();
    assert_eq!(got, nu_delta(&qs(5, 1)).unwrap().scaled(&BigInt::from(2)));
    assert_eq!(
        nu_coset(&qs(3, 2), CosetSpec::parse("phi^2", 2).unwrap()).unwrap(),
        nu_1(&qs(3, 2))
    );
}

#[test]
fn delta_coset_is_nu_delta() {
    for (p, m) in ODD_Q {
        let q = qs(p, m);
        assert_eq!(
            nu_coset(&q, CosetSpec::DELTA).unwrap(),
            nu_delta(&q).unwrap()
        );
        assert_eq!(nu_coset(&q, CosetSpec::TRIVIAL).unwrap(), nu_1(&q));
    }
}

#[test]
fn coset_values_are_divisible_by_the_field_order() {
    for (p, m, k) in [
        (3u64, 2u32, 1u32),
        (3, 4, 1),
        (3, 4, 2),
        (5, 3, 1),
        (7, 2, 1),
        (3, 6, 2),
        (3, 6, 3),
    ] {
        let c = CosetSpec::from_power(k, m, false);
        let order = BigInt::from(c.field_order);
        for v in nu_coset(&qs(p, m), c).unwrap().iter() {
            assert!(v.is_multiple_of(&order), "{p}^{m} phi^{k}: {v}");
        }
    }
}

#[test]
fn nu_delta_is_the_even_part() {
    for (p, m) in ODD_Q {
        let q = qs(p, m);
        let d = nu_delta(&q).unwrap();
        assert!(d.iter().all(|x| x.is_even()));
        let removed = nu_delta_removed(&q).unwrap();
        assert!(removed.iter().all(|x| x.is_odd()));
        let evens: SpectrumSet = nu(&q)
            .unwrap()
            .iter()
            .filter(|x| x.is_even())
            .cloned()
            .collect();
        assert_eq!(evens, d);
    }
}

#[test]
fn closed_form_spot_values() {
    let q = qs(3, 1);
    assert!(nu_1(&q).contains(&BigInt::from(1094)));
    assert!(nu_delta(&q).unwrap().contains(&BigInt::from(2188)));
    assert!(!order_exists(&BigInt::from(219), &q, CosetSpec::DELTA).unwrap());
    assert!(order_exists(&BigInt::from(219), &q, CosetSpec::TRIVIAL).unwrap());
    assert!(order_exists(&BigInt::from(1092), &q, CosetSpec::TRIVIAL).unwrap());
    assert_eq!(n_p(3, 17), BigInt::from(27));
}

#[test]
fn sl2_oracle() {
    for p in [3u64, 5, 7, 11, 13] {
        assert_eq!(sl2_elements(p).unwrap().len() as u64, p * (p * p - 1));
        let orders = sl2_orders(p).unwrap();
        let omega = sl2_omega(p).unwrap();
        let all: SpectrumSet = orders.iter().map(|&o| BigInt::from(o)).collect();
        assert_eq!(omega, mu(&all));

        let tori = sl2_torus_exponents(p).unwrap();
        let expect: SpectrumSet = [p - 1, p + 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(tori, expect);
        for t in tori.iter() {
            assert!(omega.multiple_of(t).is_some(), "q = {p}: {t}");
        }
        for o in orders.iter().filter(|o| *o % p != 0) {
            assert!((p - 1) % o == 0 || (p + 1) % o == 0, "q = {p}: {o}");
        }
    }
}
