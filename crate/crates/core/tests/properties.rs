mod common;

use proptest::prelude::*;

use common::*;
use fusionlab_core::{FiniteGroup, GroupSpec, Limits, Perm};

fn perm_strategy(degree: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..degree as u32).collect::<Vec<u32>>()).prop_shuffle()
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    (3usize..=5)
        .prop_flat_map(|d| {
            prop::collection::vec(perm_strategy(d), 1..=2).prop_map(move |gs| (d, gs))
        })
        .prop_map(|(degree, gens)| {
            let generators = gens
                .into_iter()
                .map(|v| Perm::from_images(v).unwrap())
                .collect();
            FiniteGroup::build(
                "random",
                GroupSpec::Permutations { degree, generators },
                Limits::default(),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn table_is_a_group(g in group_strategy()) {
        let n = g.order() as u32;
        for a in 0..n {
            prop_assert_eq!(g.mul(0, a), a);
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                for c in 0..n.min(6) {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn lattice_obeys_lagrange_and_closure(g in group_strategy()) {
        for h in g.subgroup_lattice().unwrap() {
            prop_assert_eq!(g.order() % h.order(), 0);
            prop_assert_eq!(to_set(h), closure(&g, h.iter()));
        }
    }

    #[test]
    fn sylow_has_full_p_part(g in group_strategy(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let s = g.sylow(p).unwrap();
        let mut n = g.order();
        let mut part = 1;
        while n % p as usize == 0 {
            n /= p as usize;
            part *= p as usize;
        }
        prop_assert_eq!(s.order(), part);
        prop_assert_eq!(s.order(), sylow(&g, &whole(&g), p as usize).len());
    }

    #[test]
    fn conjugation_is_an_automorphism(g in group_strategy(), x in 0u32..120, y in 0u32..120, z in 0u32..120) {
        let n = g.order() as u32;
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.conj(x, g.mul(y, z)), g.mul(g.conj(x, y), g.conj(x, z)));
        prop_assert_eq!(g.conj(g.inv(x), g.conj(x, y)), y);
    }

    #[test]
    fn o_p_is_normal_p_subgroup(g in group_strategy(), p in prop::sample::select(vec![2u32, 3])) {
        let all = g.whole();
        let o = g.o_p(&all, p);
        prop_assert!(g.is_normal_in(&o, &all));
        prop_assert!(is_p_power(o.order(), p as usize));
        prop_assert!(o.is_subgroup_of(&g.sylow(p).unwrap()));
    }

    #[test]
    fn perm_inverse_round_trips(v in perm_strategy(7), w in perm_strategy(7)) {
        let a = Perm::from_images(v).unwrap();
        let b = Perm::from_images(w).unwrap();
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }
}
