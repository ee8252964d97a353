use proptest::prelude::*;
use twarrow_core::delta::{compose, ez_factorize, monotone_maps, monotone_rank, op_map, q_map, SimplexMap};
use twarrow_core::fincat::{linear_order, tw_cat};
use twarrow_core::sset::{nerve, standard_simplex, tw_sset};

/// A monotone map `[m] -> [n]` from sorted random values.
fn arb_map(max: usize) -> impl Strategy<Value = SimplexMap> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort();
            SimplexMap::new(n, v).unwrap()
        })
    })
}

fn arb_pair(max: usize) -> impl Strategy<Value = (SimplexMap, SimplexMap)> {
    arb_map(max).prop_flat_map(move |a| {
        let n = a.cod();
        (0..=max)
            .prop_flat_map(move |p| proptest::collection::vec(0..=p, n + 1).prop_map(move |v| (p, v)))
            .prop_map(move |(p, mut v)| {
                v.sort();
                (a.clone(), SimplexMap::new(p, v).unwrap())
            })
    })
}

// n choose k by Pascal's rule
fn choose(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

proptest! {
    #[test]
    fn q_preserves_composition((a, b) in arb_pair(5)) {
        let ba = compose(&b, &a).unwrap();
        prop_assert_eq!(q_map(&ba), compose(&q_map(&b), &q_map(&a)).unwrap());
    }

    #[test]
    fn op_reverses_composition((a, b) in arb_pair(5)) {
        let ba = compose(&b, &a).unwrap();
        prop_assert_eq!(op_map(&ba), compose(&op_map(&b), &op_map(&a)).unwrap());
        prop_assert_eq!(op_map(&op_map(&a)), a);
    }

    #[test]
    fn q_lands_in_both_blocks(a in arb_map(6)) {
        // Q(a) sends the lower block through op(a) and the upper one through a
        let q = q_map(&a);
        let (m, n) = (a.dom(), a.cod());
        for i in 0..=m {
            prop_assert_eq!(q.at(m - i), n - a.at(i));
            prop_assert_eq!(q.at(m + 1 + i), n + 1 + a.at(i));
        }
    }

    #[test]
    fn epi_mono_factorization(a in arb_map(7)) {
        let (s, i) = ez_factorize(&a);
        prop_assert!(s.is_surjective());
        prop_assert!(i.is_injective());
        prop_assert_eq!(compose(&i, &s).unwrap(), a);
    }
}

#[test]
fn monotone_maps_are_ranked_in_order() {
    for m in 0..=4 {
        for n in 0..=4 {
            let maps = monotone_maps(m, n);
            // multisets of size m+1 from n+1 values
            assert_eq!(maps.len(), choose(m + n + 1, m + 1));
            for (r, f) in maps.iter().enumerate() {
                assert_eq!(monotone_rank(f), r);
            }
        }
    }
}

#[test]
fn tw_of_simplex_counts() {
    // Tw(Δ[n])_k = monotone maps [2k+1] -> [n]
    for n in 0..=3 {
        let tw = tw_sset(&standard_simplex(n, 7), 3).unwrap();
        let expected: Vec<usize> = (0..=3).map(|k| choose(n + 2 * k + 2, 2 * k + 2)).collect();
        assert_eq!(tw.counts(), expected.as_slice());
    }
}

#[test]
fn tw_of_linear_order_counts() {
    // arrows i <= j of [n], and its twisted arrow category has one arrow
    // (i,j) -> (i',j') exactly when i' <= i <= j <= j'
    for n in 0..=4 {
        let tw = tw_cat(&linear_order(n));
        let objects = (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect::<Vec<_>>();
        let arrows = objects
            .iter()
            .flat_map(|&(i, j)| objects.iter().filter(move |&&(a, b)| a <= i && j <= b))
            .count();
        assert_eq!(tw.category.objects().count(), objects.len());
        assert_eq!(tw.category.morphism_count(), arrows);
        let n2 = nerve(&tw.category, 2);
        assert_eq!(n2.counts()[0], objects.len());
        assert_eq!(n2.counts()[1], arrows);
    }
}
