use std::collections::{BTreeSet, HashSet};

use asmt_core::gsp4f3::{
    closure, closure_bounded, gsp4f3_generators, sp4f3_generators, surjectivity_evidence,
    FrobeniusEvidence, Mat4F3, SubgroupEntry, SubgroupTable, SurjectivityVerdict, GSP4F3_ORDER,
    SP4F3_ORDER,
};
use asmt_core::mod2image::{
    mat4f2_det, only_s5_has_order_six, perm_closure, s6_to_sp4f2, transitive_s5_subgroups, Perm,
    S6Element, TwoTorsionClass,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gsp4() -> Vec<Mat4F3> {
    closure(&gsp4f3_generators()).unwrap().elements().to_vec()
}

#[test]
fn multiplier_is_multiplicative() {
    let g = gsp4();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let a = &g[rng.random_range(0..g.len())];
        let b = &g[rng.random_range(0..g.len())];
        let (ma, mb) = (a.multiplier().unwrap(), b.multiplier().unwrap());
        assert_eq!(a.mul(b).multiplier().unwrap(), (ma * mb) % 3);
    }
}

#[test]
fn similitude_condition_holds_for_every_element() {
    let j = Mat4F3::j();
    for g in gsp4() {
        let m = g.multiplier().unwrap();
        assert_eq!(g.transpose().mul(&j).mul(&g), j.scale(m));
    }
    assert!(Mat4F3::from_ints([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        .multiplier()
        .is_err());
}

#[test]
fn charpoly_is_reciprocal_up_to_multiplier() {
    for g in gsp4() {
        let m = g.multiplier().unwrap() as u32;
        let cp = g.charpoly();
        let c = |i| cp.coeff(i);
        assert_eq!(c(4), 1);
        assert_eq!(c(0), (m * m) % 3);
        assert_eq!(c(1), (m * c(3)) % 3);
    }
}

#[test]
fn key_round_trip() {
    for g in gsp4().iter().step_by(97) {
        assert_eq!(Mat4F3::from_key(g.key()), *g);
    }
}

#[test]
fn bundled_table_entries_reclose_to_their_records() {
    let table = SubgroupTable::bundled();
    assert!(!table.entries.is_empty());
    for entry in &table.entries {
        let group = closure(&entry.generators).unwrap();
        assert_eq!(group.order(), entry.order, "{}", entry.name);
        assert!(entry.order < GSP4F3_ORDER && GSP4F3_ORDER.is_multiple_of(entry.order));
        let rebuilt = SubgroupEntry::from_group(&entry.name, entry.generators.clone(), &group);
        assert_eq!(
            serde_json::to_value(&rebuilt).unwrap(),
            serde_json::to_value(entry).unwrap(),
            "{}",
            entry.name
        );
    }
    let sp4 = table.entries.iter().find(|e| e.order == SP4F3_ORDER).unwrap();
    assert_eq!(sp4.multiplier_image, vec![1]);
}

/// Every proper subgroup found by random search realizes only pairs that
/// some table entry realizes, so witness mode cannot wrongly exclude it.
#[test]
fn random_proper_subgroups_are_covered_by_the_table() {
    let g = gsp4();
    let table = SubgroupTable::bundled();
    let entry_pairs: Vec<(BTreeSet<(u8, u8)>, Vec<u8>)> = table
        .entries
        .iter()
        .map(|e| (e.pairs().unwrap(), e.multiplier_image.clone()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut proper = 0;
    for _ in 0..400 {
        let gens = [g[rng.random_range(0..g.len())], g[rng.random_range(0..g.len())]];
        let Some(h) = closure_bounded(&gens, 3840).unwrap() else { continue };
        proper += 1;
        let pairs: BTreeSet<(u8, u8)> = h.charpoly_multiset().into_keys().collect();
        let mults: Vec<u8> = h.multiplier_image().into_iter().collect();
        assert!(
            entry_pairs
                .iter()
                .any(|(p, m)| pairs.is_subset(p) && mults.iter().all(|x| m.contains(x))),
            "subgroup of order {} escapes the table",
            h.order()
        );
    }
    assert!(proper > 20, "only {proper} proper subgroups sampled");
}

#[test]
fn exact_mode_decides_by_closure() {
    let table = SubgroupTable::bundled();
    let full = FrobeniusEvidence {
        witnesses: Vec::new(),
        generators: Some(gsp4f3_generators()),
    };
    let r = surjectivity_evidence(&full, table).unwrap();
    assert_eq!(r.verdict, SurjectivityVerdict::ConclusiveSurjective);
    assert_eq!(r.closure_order, Some(GSP4F3_ORDER));
    let sp4 = FrobeniusEvidence {
        witnesses: Vec::new(),
        generators: Some(sp4f3_generators().into_iter().map(|g| g.rows).collect()),
    };
    let r = surjectivity_evidence(&sp4, table).unwrap();
    assert_eq!(r.verdict, SurjectivityVerdict::ConclusiveNotSurjective);
}

#[test]
fn witness_mode_without_witnesses_is_inconclusive() {
    let r = surjectivity_evidence(&FrobeniusEvidence::default(), SubgroupTable::bundled()).unwrap();
    assert_eq!(r.verdict, SurjectivityVerdict::Inconclusive);
    let mut ev = FrobeniusEvidence::default();
    assert!(ev.push(3, asmt_core::ffpoly::IntPoly::new(vec![9, 0, 0, 0, 1])).is_err());
    assert!(ev.push(5, asmt_core::ffpoly::IntPoly::new(vec![1, 0, 0, 0, 1])).is_err());
}

#[test]
fn s6_action_is_a_homomorphism_into_sp4f2() {
    let all = S6Element::all();
    assert_eq!(all.len(), 720);
    for g in &all {
        assert_eq!(mat4f2_det(&s6_to_sp4f2(g)), 1);
        for v in TwoTorsionClass::all() {
            for w in TwoTorsionClass::all() {
                assert_eq!(v.act(g).pairing(w.act(g)), v.pairing(w));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..2000 {
        let g = all[rng.random_range(0..720)];
        let h = all[rng.random_range(0..720)];
        assert_eq!(g.compose(&h).inverse(), h.inverse().compose(&g.inverse()));
        for v in TwoTorsionClass::all() {
            assert_eq!(v.act(&g.compose(&h)), v.act(&h).act(&g));
        }
    }
}

fn is_transitive(group: &HashSet<Perm<5>>) -> bool {
    let orbit: HashSet<usize> = group.iter().map(|g| g.apply(0)).collect();
    orbit.len() == 5
}

#[test]
fn transitive_subgroups_of_s5_from_all_two_generator_closures() {
    let all = Perm::<5>::all();
    let mut found: HashSet<Vec<Perm<5>>> = HashSet::new();
    for a in &all {
        for b in &all {
            let h = perm_closure(&[*a, *b]);
            if is_transitive(&h) {
                let mut v: Vec<Perm<5>> = h.into_iter().collect();
                v.sort_by_key(|p| *p.images());
                found.insert(v);
            }
        }
    }
    let orders: BTreeSet<usize> = found.iter().map(|h| h.len()).collect();
    assert_eq!(orders, BTreeSet::from([5, 10, 20, 60, 120]));
    for (name, h) in transitive_s5_subgroups() {
        assert!(is_transitive(&h), "{name}");
        let mut v: Vec<Perm<5>> = h.into_iter().collect();
        v.sort_by_key(|p| *p.images());
        assert!(found.contains(&v), "{name} is not a subgroup");
    }
    let with_six: BTreeSet<usize> = found
        .iter()
        .filter(|h| h.iter().any(|g| g.order() == 6))
        .map(|h| h.len())
        .collect();
    assert_eq!(with_six, BTreeSet::from([120]));
    assert!(only_s5_has_order_six());
}
