mod common;

use proptest::prelude::*;
use taftcleft::ring::{parse_ring_spec, ring_structure, Elem, FiniteRing};

use common::*;

const RINGS: &[&str] = &[
    "Z/6",
    "Z/8",
    "GF(8)",
    "GF(9)",
    "F_5[t]/(t^2)",
    "Z/4[t]/(t^2+t+1)",
    "Z/2 x GF(4)",
    "Z/3 x F_3[t]/(t^2+1)",
    "Z/9[t]/(t^2+1)",
];

fn nth(r: &FiniteRing, i: usize) -> Elem {
    r.elements().nth(i % r.size()).unwrap()
}

#[test]
fn structure_invariants() {
    for spec in RINGS {
        let r = ring(spec);
        let s = ring_structure(&r);
        let e = &s.idempotents;
        assert_eq!(r.sum(e.iter().copied()), r.one(), "{spec}");
        for (i, &x) in e.iter().enumerate() {
            assert_eq!(r.mul(x, x), x);
            for &y in &e[i + 1..] {
                assert_eq!(r.mul(x, y), r.zero());
            }
        }
        for u in r.units() {
            assert_eq!(power(&r, u, s.alpha), r.one());
        }
        // every element is a unit or nilpotent exactly when R is local
        let local = e.len() == 1;
        let dichotomy = r
            .elements()
            .all(|x| r.is_unit(x) || power(&r, x, s.beta) == r.zero());
        assert_eq!(local, dichotomy, "{spec}");
        assert_eq!(r.size() as u64, r.moduli().iter().product::<u64>());
    }
}

/// Z/2 x Z/3 and Z/6 are isomorphic through x -> (x mod 2, x mod 3).
#[test]
fn chinese_remainder() {
    let z6 = parse_ring_spec("Z/6").unwrap();
    let p = parse_ring_spec("Z/2 x Z/3").unwrap();
    let map = |x: Elem| {
        let v = z6.coords(x)[0];
        p.from_coords(&[v % 2, v % 3])
    };
    let images: std::collections::BTreeSet<_> = z6.elements().map(map).collect();
    assert_eq!(images.len(), 6);
    for x in z6.elements() {
        for y in z6.elements() {
            assert_eq!(map(z6.add(x, y)), p.add(map(x), map(y)));
            assert_eq!(map(z6.mul(x, y)), p.mul(map(x), map(y)));
        }
    }
    assert_eq!(map(z6.one()), p.one());
}

#[test]
fn dual_numbers_nilradical() {
    let r = parse_ring_spec("F_5[t]/(t^2)").unwrap();
    let nil: Vec<Elem> = r
        .elements()
        .filter(|&x| power(&r, x, 25) == r.zero())
        .collect();
    assert_eq!(nil.len(), 5);
    assert!(nil.iter().all(|&x| r.coords(x)[0] == 0));
}

#[test]
fn element_syntax() {
    let r = parse_ring_spec("Z/5 x Z/5").unwrap();
    assert_eq!(r.parse_elem("[4,4]").unwrap(), r.from_int(-1));
    assert_eq!(r.format(r.from_int(7)), "[2,2]");
    assert!(r.parse_elem("[1]").is_err());
    let z = parse_ring_spec("Z/7").unwrap();
    assert_eq!(z.parse_elem("-1").unwrap(), z.from_int(6));
}

fn triple() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (
        0..RINGS.len(),
        0usize..10_000,
        0usize..10_000,
        0usize..10_000,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms((k, a, b, c) in triple()) {
        let r = ring(RINGS[k]);
        let (a, b, c) = (nth(&r, a), nth(&r, b), nth(&r, c));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.sub(r.add(a, b), b), a);
    }

    #[test]
    fn inverses_and_powers((k, a, e, _c) in triple()) {
        let r = ring(RINGS[k]);
        let a = nth(&r, a);
        let e = (e % 40) as u64;
        prop_assert_eq!(r.pow(a, e), power(&r, a, e));
        if let Some(inv) = r.inverse(a) {
            prop_assert_eq!(r.mul(a, inv), r.one());
        } else {
            prop_assert!(r.elements().all(|y| r.mul(a, y) != r.one()));
        }
    }

    #[test]
    fn format_parse_roundtrip((k, a, _b, _c) in triple()) {
        let r = ring(RINGS[k]);
        let a = nth(&r, a);
        prop_assert_eq!(r.parse_elem(&r.format(a)).unwrap(), a);
    }
}
