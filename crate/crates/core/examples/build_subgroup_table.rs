//! Regenerates `data/gsp4f3_subgroups.json`.
//!
//! Closures of random pairs of elements of GSp4(F3) are collected whenever
//! they stay below the largest proper subgroup order that is not inside
//! Sp4(F3). Among the multiplier-surjective ones, those whose
//! `(charpoly, multiplier)` pair set is maximal under inclusion are kept,
//! together with Sp4(F3) itself.
//!
//! Usage: `cargo run --release --example build_subgroup_table [TRIALS] [SEED]`

use std::collections::{BTreeMap, BTreeSet};

use asmt_core::gsp4f3::{
    closure, closure_bounded, gsp4f3_generators, sp4f3_generators, SubgroupEntry, SubgroupTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT: usize = 3840;

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map_or(20_000, |a| a.parse().expect("TRIALS"));
    let seed: u64 = args.next().map_or(3, |a| a.parse().expect("SEED"));
    let full = closure(&gsp4f3_generators()).expect("generators are similitudes");
    let elems = full.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // pair set -> (order, generators)
    let mut found: BTreeMap<BTreeSet<(u8, u8)>, (usize, Vec<_>)> = BTreeMap::new();
    for _ in 0..trials {
        let gens = vec![
            elems[rng.random_range(0..elems.len())],
            elems[rng.random_range(0..elems.len())],
        ];
        let Some(h) = closure_bounded(&gens, LIMIT).unwrap() else {
            continue;
        };
        if h.multiplier_image().len() < 2 {
            continue;
        }
        let pairs: BTreeSet<(u8, u8)> = h.charpoly_multiset().into_keys().collect();
        found.entry(pairs).or_insert((h.order(), gens));
    }

    for (pairs, (order, _)) in &found {
        eprintln!("found order {order} with {} pairs", pairs.len());
    }
    let maximal: Vec<_> = found
        .iter()
        .filter(|(p, _)| {
            !found
                .keys()
                .any(|q| q != *p && p.is_subset(q))
        })
        .collect();

    let mut entries = Vec::new();
    let sp4: Vec<_> = sp4f3_generators().into_iter().map(|n| n.rows).collect();
    let sp4_group = closure(&sp4).unwrap();
    entries.push(SubgroupEntry::from_group("Sp4(F3)", sp4, &sp4_group));
    let mut ordered: Vec<_> = maximal.into_iter().map(|(_, (o, g))| (*o, g.clone())).collect();
    ordered.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut index_by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for (order, gens) in ordered {
        let n = index_by_order.entry(order).or_insert(0);
        *n += 1;
        let name = format!("M{order}.{n}");
        let group = closure(&gens).unwrap();
        entries.push(SubgroupEntry::from_group(&name, gens, &group));
        eprintln!("{name}: order {}", group.order());
    }
    let table = SubgroupTable {
        schema: 1,
        note: format!(
            "Proper subgroups of GSp4(F3) found by random 2-generator closures \
             ({trials} trials, seed {seed}); each entry's realizable (charpoly mod 3, \
             multiplier) pairs are listed. Completeness rests on the random search \
             having met every conjugacy class of maximal subgroups."
        ),
        entries,
    };
    println!("{}", serde_json::to_string_pretty(&table).unwrap());
}
