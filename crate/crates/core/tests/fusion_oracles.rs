mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use fusionlab_core::fusion::{FusionSystem, SaturationStatus};
use fusionlab_core::FiniteGroup;

fn systems() -> Vec<(Arc<FiniteGroup>, u32)> {
    vec![
        (s3(), 2),
        (s3(), 3),
        (d8(), 2),
        (a4(), 2),
        (a4(), 3),
        (s4(), 2),
        (s4(), 3),
        (sl23(), 2),
        (sl23(), 3),
        (gl23(), 2),
        (extraspecial_27(), 3),
    ]
}

#[test]
fn lattice_matches_closure_enumeration() {
    for g in [s3(), d8(), a4(), s4(), sl23()] {
        let ours: BTreeSet<Set> = g.subgroup_lattice().unwrap().iter().map(to_set).collect();
        assert_eq!(ours, all_subgroups(&g, &whole(&g)), "{}", g.name());
    }
}

#[test]
fn normalizers_and_centralizers_match() {
    let g = s4();
    let all = g.whole();
    for q in g.subgroup_lattice().unwrap() {
        let qs = to_set(q);
        assert_eq!(
            to_set(&g.normalizer(q, &all)),
            normalizer(&g, &qs, &whole(&g))
        );
        assert_eq!(
            to_set(&g.centralizer(q, &all)),
            centralizer(&g, &qs, &whole(&g))
        );
    }
}

#[test]
fn realized_systems_satisfy_the_axioms() {
    for (g, p) in systems() {
        let f = FusionSystem::realize(g.clone(), p, None).unwrap();
        assert_eq!(
            f.verify_axioms(),
            SaturationStatus::Verified,
            "{} at {p}",
            g.name()
        );
    }
}

#[test]
fn subgroup_profiles_match_brute_force() {
    for (g, p) in systems() {
        let f = FusionSystem::realize(g.clone(), p, None).unwrap();
        let s = to_set(f.carrier());
        for prof in f.profile_all().unwrap() {
            let q = to_set(&prof.q);
            let ctx = format!("{} p={p} |Q|={}", g.name(), q.len());
            assert_eq!(prof.fully_normalized, fully_normalized(&g, &q, &s), "{ctx}");
            assert_eq!(
                prof.fully_centralized,
                fully_centralized(&g, &q, &s),
                "{ctx}"
            );
            assert_eq!(prof.centric, centric(&g, &q, &s), "{ctx}");
            assert!(prof.sylow_criterion_holds(), "{ctx}");
        }
    }
}

#[test]
fn essentials_match_the_oracle() {
    for (g, p) in systems() {
        let f = FusionSystem::realize(g.clone(), p, None).unwrap();
        let ours: BTreeSet<Set> = f
            .essential_subgroups()
            .unwrap()
            .all
            .iter()
            .map(to_set)
            .collect();
        let oracle = essential_oracle(&g, &to_set(f.carrier()), p as usize);
        assert_eq!(ours, oracle, "{} at {p}", g.name());
    }
}

#[test]
fn hom_sets_are_conjugation_maps() {
    let g = s4();
    let f = FusionSystem::realize(g.clone(), 2, None).unwrap();
    let s = to_set(f.carrier());
    for q in f.objects() {
        let qs = to_set(q);
        let mut expected = BTreeSet::new();
        for x in 0..g.order() as u32 {
            if conj_set(&g, x, &qs).is_subset(&s) {
                let images: Vec<u32> = q.iter().map(|y| g.conj(x, y)).collect();
                expected.insert(images);
            }
        }
        let ours: BTreeSet<Vec<u32>> = f
            .homs_to_carrier(q)
            .unwrap()
            .iter()
            .map(|m| m.images().to_vec())
            .collect();
        assert_eq!(ours, expected, "|Q| = {}", q.order());
    }
}

#[test]
fn alperin_round_trip_on_small_carriers() {
    for (g, p) in systems() {
        let f = FusionSystem::realize(g.clone(), p, None).unwrap();
        if f.carrier().order() > 16 {
            continue;
        }
        for q in f.objects() {
            for phi in f.homs_to_carrier(q).unwrap() {
                let d = f.alperin_decompose(phi).unwrap();
                assert_eq!(d.recompose().images(), phi.images());
                assert!(d.is_valid_for(&f));
            }
        }
    }
}

#[test]
fn golden_essentials() {
    let g = s4();
    let f = FusionSystem::realize(g.clone(), 2, None).unwrap();
    let e = f.essential_subgroups().unwrap();
    assert_eq!(e.all.len(), 1);
    let v = &e.all[0];
    assert_eq!(v.order(), 4);
    assert!(g.is_normal_in(v, &g.whole()));

    let f = FusionSystem::realize(sl23(), 2, None).unwrap();
    assert!(f.essential_subgroups().unwrap().all.is_empty());
}
