use num_integer::Integer;
use proptest::prelude::*;

use orbifold::equivariant::Orbifold;
use orbifold::group::{group_from_spec_with_cap, FiniteGroup};
use orbifold::scalars::{Cyclotomic, ToleranceConfig, Q};
use orbifold::suite::resolve_instance;

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec((-6i64..=6, 1i64..=4), 1..6)).prop_map(|(n, terms)| {
        terms
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| Cyclotomic::zeta(n, k as i64).scale(Q::new(a, b)))
            .sum()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Cyclotomic::zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        let z = (&a * &b).to_complex() - a.to_complex() * b.to_complex();
        prop_assert!(z.norm() < 1e-9);
    }

    #[test]
    fn galois_is_a_ring_map(a in cyclotomic(), b in cyclotomic(), k in 1i64..120) {
        prop_assume!(k.gcd(&120) == 1);
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!(a.galois(-1), a.conj());
    }

    #[test]
    fn serde_round_trip(a in cyclotomic()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn permutation_groups_are_groups(cycles in prop::collection::vec(prop::collection::vec(1usize..=5, 2..4), 1..3)) {
        let gens: Vec<String> = cycles
            .iter()
            .filter_map(|c| {
                let mut seen = c.clone();
                seen.sort();
                seen.dedup();
                (seen.len() == c.len()).then(|| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            })
            .collect();
        prop_assume!(!gens.is_empty());
        let g: FiniteGroup = group_from_spec_with_cap(&format!("perm:{}", gens.join(",")), 120).unwrap();
        prop_assert!(g.verify_axioms().is_ok());
        prop_assert_eq!(120 % g.order(), 0);
        for a in g.elements() {
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn label_action_ignores_the_section(pair in prop::sample::select(vec!["S3/index:2", "Q8/center", "S4/index:6", "D4/center"]), seed in any::<u64>()) {
        let inst = resolve_instance(pair, false, 64).unwrap();
        let orb = Orbifold::new(&inst.m, &inst.n, &ToleranceConfig::default()).unwrap();
        let rep = &orb.rep;
        let q = rep.quotient.randomized_section(seed);
        for g in orb.g_group().elements() {
            for x in 0..rep.num_labels() {
                prop_assert_eq!(rep.act_on_label_with(&q, g, x), rep.act_on_label(g, x));
            }
        }
        for (i, o) in orb.orbits.iter().enumerate() {
            prop_assert_eq!(orb.alpha_regular_at(&q, o.base).unwrap(), orb.cocycles[i].alpha_regular);
        }
    }

    #[test]
    fn sectors_of_random_pairs(pair in prop::sample::select(vec!["S3/index:2", "S4/index:6", "S4/index:2"]), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let inst = resolve_instance(pair, false, 64).unwrap();
        let rep = orbifold::rep_a::RepA::new(&inst.m, &inst.n, &ToleranceConfig::default()).unwrap();
        let g = &rep.quotient.quotient;
        let (x, y) = (x.index(rep.num_labels()), y.index(rep.num_labels()));
        let want = g.mul(rep.sector(x), rep.sector(y));
        let mult = rep.fuse_labels(x, y).unwrap();
        for z in (0..rep.num_labels()).filter(|&z| mult[z] > 0) {
            prop_assert_eq!(rep.sector(z), want);
        }
        let dual = rep.dual_label(x).unwrap();
        prop_assert_eq!(rep.fuse_labels(x, dual).unwrap()[rep.unit()], 1);
    }
}
