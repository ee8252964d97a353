//! Exit criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line and then asserts its verdict.

use std::process::Command;
use std::time::{Duration, Instant};

use twarrow_core::bisset::{
    corner_object, dtw_boundary, is_levelwise_injective, iso_to_representable, p1_star, representable, tw_bisset,
    RepresentableVerdict,
};
use twarrow_core::delta::{compose, ez_factorize, monotone_maps, op_map, q_map, SimplexMap};
use twarrow_core::fincat::{
    category_zoo, cyclic_group, find_equivalence, idempotent_monoid, linear_order, opposite, parallel_pair, poset,
    tw_cat, under_category, walking_iso, FinCategory,
};
use twarrow_core::gss::{
    completeness_check, f_w_functor, fiber_at, first_projection, ho_category, left_fibration_check, op_space,
    segal_check, segal_fixtures, truncate, tw_hoequiv_pullback_check, tw_space, twisted_projection_space,
    SpaceFixture,
};
use twarrow_core::sset::{find_iso_with, op_sset, sset_zoo, tw_sset, Nerve};

fn verdict(n: usize, ok: bool, elapsed: Duration, budget: Duration, detail: &str) -> bool {
    let within = elapsed <= budget;
    let pass = ok && within;
    println!(
        "criterion {n}: {} ({:.2?} of {:?}) {detail}{}",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        budget,
        if ok && !within { " [over time budget]" } else { "" }
    );
    pass
}

fn fixtures(trunc: usize) -> Vec<SpaceFixture> {
    segal_fixtures(trunc)
}

#[test]
fn criterion_01_representable_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 0..=4 {
        for l in 0..=3 {
            // Tw needs 2t+1 categorical levels to produce t
            let t = 1;
            let x = representable(n, l, 2 * t + 1, l);
            let v = iso_to_representable(&tw_bisset(&x, t).unwrap(), 2 * n + 1, l).unwrap();
            checked += 1;
            if !matches!(v, RepresentableVerdict::Isomorphic { .. }) {
                failures.push(format!("(n={n}, l={l}): {v:?}"));
            }
        }
    }
    let detail = format!(
        "{} of {checked} pairs not isomorphic{}",
        failures.len(),
        failures.first().map(|f| format!("; first {f}")).unwrap_or_default()
    );
    assert!(verdict(1, failures.is_empty(), start.elapsed(), Duration::from_secs(1), &detail), "{failures:#?}");
}

#[test]
fn criterion_02_lifting_law() {
    let start = Instant::now();
    let zoo = sset_zoo(5);
    assert!(zoo.len() >= 10);
    let bad: Vec<String> = zoo
        .iter()
        .filter(|(_, s)| tw_bisset(&p1_star(s, 2), 2).unwrap() != p1_star(&tw_sset(s, 2).unwrap(), 2))
        .map(|(name, _)| name.clone())
        .collect();
    let detail = format!("{} simplicial sets, mismatches {bad:?}", zoo.len());
    assert!(verdict(2, bad.is_empty(), start.elapsed(), Duration::from_secs(5), &detail));
}

/// Naturally labelled posets on `n` elements (`a <= b` only for `a < b`),
/// one per transitively closed relation set; this covers every poset shape.
fn posets_up_to(max: usize) -> Vec<(String, FinCategory)> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let rel: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
            let closed = rel.iter().all(|&(a, b)| {
                rel.iter().filter(|&&(b2, _)| b2 == b).all(|&(_, c)| rel.contains(&(a, c)))
            });
            if closed {
                out.push((format!("poset{n}{rel:?}"), poset(n, &rel).unwrap()));
            }
        }
    }
    out
}

/// `nerve(Tw C) ≅ Tw(nerve C)` by a search constrained to preserve the
/// projections to `C^op × C`, both read off chain data.
fn nerve_compatible(c: &FinCategory, trunc: usize) -> bool {
    let tw = tw_cat(c);
    let lhs = Nerve::new(&tw.category, trunc);
    let base = Nerve::new(c, 2 * trunc + 1);
    let rhs = tw_sset(&base.sset, trunc).unwrap();
    // (sources, k-arrows, targets, h-arrows)
    type Key = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);
    let left_key = |n: usize, x: usize| -> Key {
        let ch = &lhs.chains[n][x];
        (
            ch.objects.iter().map(|&g| c.source(g)).collect(),
            ch.arrows.iter().map(|&m| tw.triples[m].1).collect(),
            ch.objects.iter().map(|&g| c.target(g)).collect(),
            ch.arrows.iter().map(|&m| tw.triples[m].2).collect(),
        )
    };
    let right_key = |n: usize, y: usize| -> Key {
        let ch = &base.chains[2 * n + 1][y];
        (
            (0..=n).map(|i| ch.objects[n - i]).collect(),
            (1..=n).map(|i| ch.arrows[n - i]).collect(),
            (0..=n).map(|i| ch.objects[n + 1 + i]).collect(),
            (1..=n).map(|i| ch.arrows[n + i]).collect(),
        )
    };
    find_iso_with(&lhs.sset, &rhs, |n, x, y| left_key(n, x) == right_key(n, y)).is_some()
}

#[test]
fn criterion_03_nerve_compatibility() {
    let start = Instant::now();
    let mut cats = posets_up_to(4);
    cats.extend([
        ("J".to_string(), walking_iso()),
        ("Z/2".to_string(), cyclic_group(2)),
        ("idempotent".to_string(), idempotent_monoid()),
        ("parallel".to_string(), parallel_pair()),
        ("[2]".to_string(), linear_order(2)),
    ]);
    cats.extend(category_zoo().into_iter().map(|(n, c)| (n.to_string(), c)));
    assert!(cats.len() >= 10);
    let bad: Vec<&str> = cats.iter().filter(|(_, c)| !nerve_compatible(c, 3)).map(|(n, _)| n.as_str()).collect();
    let detail = format!("{} categories through level 3, failures {bad:?}", cats.len());
    assert!(verdict(3, bad.is_empty(), start.elapsed(), Duration::from_secs(30), &detail));
}

#[test]
fn criterion_04_boundary_injective() {
    let start = Instant::now();
    let (k_max, mut cells, mut collisions) = (9, 0, Vec::new());
    for n in 0..=4 {
        let p = dtw_boundary(n);
        let ev = p.evaluate(k_max, 0).unwrap();
        let r = is_levelwise_injective(&p.evaluate_map(&ev).unwrap(), k_max).unwrap();
        cells += r.cells_checked;
        if let Some(c) = r.collision {
            collisions.push((n, c));
        }
    }
    let detail = format!("n <= 4, levels <= {k_max}, {cells} cells, collisions {collisions:?}");
    assert!(verdict(4, collisions.is_empty(), start.elapsed(), Duration::from_secs(60), &detail));
}

#[test]
fn criterion_05_corner_injective() {
    let start = Instant::now();
    let (levels, mut cells, mut collisions) = (7, 0, Vec::new());
    for k in 0..=3 {
        let p = corner_object(k).unwrap();
        let ev = p.evaluate(levels, 0).unwrap();
        let r = is_levelwise_injective(&p.evaluate_map(&ev).unwrap(), levels).unwrap();
        cells += r.cells_checked;
        if let Some(c) = r.collision {
            collisions.push((k, c));
        }
    }
    let detail = format!("k <= 3, levels <= {levels}, {cells} cells, collisions {collisions:?}");
    assert!(verdict(5, collisions.is_empty(), start.elapsed(), Duration::from_secs(60), &detail));
}

#[test]
fn criterion_06_segal_preserved() {
    let start = Instant::now();
    let fx = fixtures(9);
    let bad: Vec<&str> = fx
        .iter()
        .filter(|f| {
            segal_check(&f.space, 4).unwrap().passed()
                && !segal_check(&tw_space(&f.space, 4).unwrap(), 4).unwrap().passed()
        })
        .map(|f| f.name.as_str())
        .collect();
    let all_segal = fx.iter().all(|f| segal_check(&f.space, 4).unwrap().passed());
    let detail = format!("{} fixtures through n = 4, failures {bad:?}", fx.len());
    assert!(verdict(6, all_segal && bad.is_empty(), start.elapsed(), Duration::from_secs(120), &detail));
}

#[test]
fn criterion_07_homotopy_category_equivalence() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let fx = fixtures(7);
    for f in &fx {
        let fw = f_w_functor(&f.space).unwrap();
        let searched = find_equivalence(
            &ho_category(&tw_space(&f.space, 3).unwrap()).unwrap().category,
            &tw_cat(&ho_category(&f.space).unwrap().category).category,
        );
        if !fw.report.is_equivalence() || searched.is_none() {
            bad.push((f.name.clone(), fw.report.witnesses.clone(), searched.is_some()));
        }
    }
    let detail = format!("{} fixtures, failures {bad:?}", fx.len());
    assert!(verdict(7, bad.is_empty(), start.elapsed(), Duration::from_secs(120), &detail));
}

#[test]
fn criterion_08_hoequiv_pullback() {
    let start = Instant::now();
    let fx = fixtures(7);
    let mut bad = Vec::new();
    let mut cells = 0;
    for f in &fx {
        let r = tw_hoequiv_pullback_check(&f.space).unwrap();
        cells += r.total;
        if !r.passed() {
            bad.push((f.name.clone(), r.leg_failures.len()));
        }
    }
    let detail = format!("{} fixtures, {cells} 3-cells, failures {bad:?}", fx.len());
    assert!(verdict(8, bad.is_empty(), start.elapsed(), Duration::from_secs(60), &detail));
}

#[test]
fn criterion_09_completeness() {
    let start = Instant::now();
    let fx = fixtures(9);
    let mut bad = Vec::new();
    for f in &fx {
        if completeness_check(&f.space).unwrap().is_complete() != f.complete {
            bad.push(format!("{}: completeness of W", f.name));
        }
        if f.complete && !completeness_check(&tw_space(&f.space, 3).unwrap()).unwrap().is_complete() {
            bad.push(format!("{}: completeness of Tw W", f.name));
        }
    }
    let j = fx.iter().find(|f| f.name == "discrete-nerve(J)").expect("discrete nerve of J is a fixture");
    let j_incomplete = !completeness_check(&j.space).unwrap().is_complete();
    let j_left_fib = left_fibration_check(&twisted_projection_space(&j.space, 4).unwrap(), 4).unwrap().passed();
    let ok = bad.is_empty() && j_incomplete && j_left_fib;
    let detail = format!(
        "{} fixtures; discrete nerve of J incomplete: {j_incomplete}, left fibration: {j_left_fib}; failures {bad:?}",
        fx.len()
    );
    assert!(verdict(9, ok, start.elapsed(), Duration::from_secs(60), &detail));
}

#[test]
fn criterion_10_left_fibration() {
    let start = Instant::now();
    let fx = fixtures(9);
    let mut bad = Vec::new();
    for f in &fx {
        let r = left_fibration_check(&twisted_projection_space(&f.space, 4).unwrap(), 4).unwrap();
        if !r.passed() || !r.agree() {
            bad.push(f.name.clone());
        }
    }
    // the first projection W × W -> W is not a left fibration
    let mut control = Vec::new();
    for f in fx.iter().filter(|f| f.name.ends_with("([1])")) {
        let w = truncate(&f.space, 2).unwrap();
        let r = left_fibration_check(&first_projection(&w).unwrap(), 2).unwrap();
        let witnessed = r.levels.iter().any(|(_, s)| !s.is_homotopy_pullback() && !s.witnesses.is_empty());
        control.push(!r.passed() && witnessed);
    }
    let ok = bad.is_empty() && !control.is_empty() && control.iter().all(|&c| c);
    let detail = format!("{} fixtures, failures {bad:?}; wrong maps rejected with witness: {control:?}", fx.len());
    assert!(verdict(10, ok, start.elapsed(), Duration::from_secs(120), &detail));
}

#[test]
fn criterion_11_fibres_are_under_categories() {
    let start = Instant::now();
    let fx = fixtures(7);
    let mut bad = Vec::new();
    let mut fibres = 0;
    for f in &fx {
        let p = twisted_projection_space(&f.space, 3).unwrap();
        let base = truncate(&f.space, 3).unwrap();
        let op = op_space(&base);
        for x in f.category.objects() {
            let ho = ho_category(&fiber_at(&p, &op, &base, x).unwrap()).unwrap();
            let (under, _) = under_category(&f.category, x).unwrap();
            fibres += 1;
            if find_equivalence(&ho.category, &under).is_none() {
                bad.push((f.name.clone(), x));
            }
        }
    }
    let detail = format!("{} fibres over {} fixtures, failures {bad:?}", fibres, fx.len());
    assert!(verdict(11, bad.is_empty(), start.elapsed(), Duration::from_secs(60), &detail));
}

fn all_maps(max: usize) -> Vec<SimplexMap> {
    (0..=max).flat_map(|m| (0..=max).flat_map(move |n| monotone_maps(m, n))).collect()
}

fn twarrow(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_twarrow")).args(args).output().unwrap();
    assert!(out.status.code().is_some());
    out.stdout
}

#[test]
fn criterion_12_foundations() {
    let start = Instant::now();
    let mut bad: Vec<String> = Vec::new();
    let maps = all_maps(4);

    // Q is a functor
    for a in &maps {
        if q_map(&SimplexMap::identity(a.cod())) != SimplexMap::identity(2 * a.cod() + 1) {
            bad.push(format!("Q(id_{})", a.cod()));
        }
        for b in maps.iter().filter(|b| b.dom() == a.cod()) {
            if q_map(&compose(b, a).unwrap()) != compose(&q_map(b), &q_map(a)).unwrap() {
                bad.push(format!("Q({b:?} ∘ {a:?})"));
            }
        }
        // op is an involution; epi-mono factorization recomposes
        if op_map(&op_map(a)) != *a {
            bad.push(format!("op op {a:?}"));
        }
        let (s, i) = ez_factorize(a);
        if !s.is_surjective() || !i.is_injective() || compose(&i, &s).unwrap() != *a {
            bad.push(format!("ez {a:?}"));
        }
    }
    for (name, c) in category_zoo() {
        if opposite(&opposite(&c)) != c {
            bad.push(format!("op op {name}"));
        }
    }

    // simplicial identities on constructed objects
    for (name, s) in sset_zoo(5) {
        if op_sset(&op_sset(&s)) != s {
            bad.push(format!("op op {name}"));
        }
        for t in [s.check_identities(), tw_sset(&s, 2).unwrap().check_identities()] {
            if let Err(e) = t {
                bad.push(format!("{name}: {e}"));
            }
        }
        if let Err(e) = tw_bisset(&p1_star(&s, 2), 2).unwrap().validate() {
            bad.push(format!("{name}: {e}"));
        }
    }
    for f in fixtures(7) {
        for w in [f.space.clone(), tw_space(&f.space, 3).unwrap()] {
            if let Err(e) = w.check_identities() {
                bad.push(format!("{}: {e}", f.name));
            }
        }
    }

    // reports are byte-identical across runs
    let fixtures_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let input = format!("{fixtures_dir}/classifying_j.json");
    for args in [vec!["check", "segal", input.as_str()], vec!["check", "boundary-mono", "--n-max", "2", "--k-max", "5"]] {
        let (first, second) = (twarrow(&args), twarrow(&args));
        if first != second || first.is_empty() {
            bad.push(format!("report for {args:?} is not reproducible"));
        }
    }

    let detail = format!("{} operators, failures {bad:?}", maps.len());
    assert!(verdict(12, bad.is_empty(), start.elapsed(), Duration::from_secs(30), &detail));
}
