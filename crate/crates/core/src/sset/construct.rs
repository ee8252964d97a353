use super::{FinSimplicialSet, SSetMorphism};
use crate::delta::{
    block_inclusion_left, block_inclusion_right, compose, count_monotone, monotone_maps,
    monotone_rank, op_map, q_map, SimplexMap,
};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// `Δ[n]` truncated at `trunc`; the `k`-cells are the monotone maps `[k] -> [n]`
/// in lexicographic order.
pub fn standard_simplex(n: usize, trunc: usize) -> FinSimplicialSet {
    let counts = (0..=trunc).map(|k| count_monotone(k, n)).collect();
    let cells: Vec<Vec<SimplexMap>> = (0..=trunc).map(|k| monotone_maps(k, n)).collect();
    FinSimplicialSet::from_operator_fn(trunc, counts, |alpha, x| {
        monotone_rank(&compose(&cells[alpha.cod()][x], alpha).unwrap())
    })
}

/// The sub-simplicial set on the cells marked in `keep`, with its inclusion.
pub fn sub_sset(s: &FinSimplicialSet, keep: &[Vec<bool>]) -> Result<SSetMorphism> {
    let trunc = s.trunc();
    let mut new_index: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    let mut old_index: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut ni = vec![usize::MAX; s.count(n)];
        let mut oi = Vec::new();
        for x in 0..s.count(n) {
            if keep[n][x] {
                ni[x] = oi.len();
                oi.push(x);
            }
        }
        new_index.push(ni);
        old_index.push(oi);
    }
    let mut closed = Ok(());
    let counts = old_index.iter().map(Vec::len).collect();
    let sub = FinSimplicialSet::from_operator_fn(trunc, counts, |alpha, x| {
        let y = s.act(alpha, old_index[alpha.cod()][x]).unwrap();
        let z = new_index[alpha.dom()][y];
        if z == usize::MAX {
            closed = Err(Error::InvalidSimplicialSet(format!(
                "cell {y} of level {} is a face or degeneracy of a kept cell but is not kept",
                alpha.dom()
            )));
            return 0;
        }
        z
    });
    closed?;
    Ok(SSetMorphism { source: sub, target: s.clone(), components: old_index })
}

/// `∂Δ[n]` and its inclusion into `Δ[n]`: the cells whose image misses a vertex.
pub fn boundary(n: usize, trunc: usize) -> SSetMorphism {
    let keep: Vec<Vec<bool>> =
        (0..=trunc).map(|k| monotone_maps(k, n).iter().map(|f| f.image().len() < n + 1).collect()).collect();
    sub_sset(&standard_simplex(n, trunc), &keep).expect("boundary is a subcomplex")
}

/// Level-wise disjoint union, summands in order.
pub fn coproduct(parts: &[FinSimplicialSet]) -> Result<FinSimplicialSet> {
    Ok(coproduct_with_injections(parts)?.0)
}

pub fn coproduct_with_injections(parts: &[FinSimplicialSet]) -> Result<(FinSimplicialSet, Vec<SSetMorphism>)> {
    let Some(first) = parts.first() else {
        return Err(Error::ShapeMismatch("coproduct of an empty list needs a truncation; use FinSimplicialSet::empty".into()));
    };
    let trunc = first.trunc();
    if parts.iter().any(|p| p.trunc() != trunc) {
        return Err(Error::ShapeMismatch("coproduct summands have different truncations".into()));
    }
    // offsets[k][n]: first cell of summand k at level n
    let mut offsets = vec![vec![0usize; trunc + 1]];
    for p in parts {
        let last = offsets.last().unwrap();
        offsets.push((0..=trunc).map(|n| last[n] + p.count(n)).collect());
    }
    let counts = offsets.last().unwrap().clone();
    let locate = |n: usize, x: usize| {
        let k = offsets.partition_point(|o| o[n] <= x) - 1;
        (k, x - offsets[k][n])
    };
    let sum = FinSimplicialSet::from_operator_fn(trunc, counts, |alpha, x| {
        let (k, local) = locate(alpha.cod(), x);
        offsets[k][alpha.dom()] + parts[k].act(alpha, local).unwrap()
    });
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, p)| SSetMorphism {
            source: p.clone(),
            target: sum.clone(),
            components: (0..=trunc).map(|n| (0..p.count(n)).map(|x| offsets[k][n] + x).collect()).collect(),
        })
        .collect();
    Ok((sum, injections))
}

/// Coequalizer of a parallel pair, with the quotient map. Classes are
/// numbered by least member.
pub fn coequalizer(f: &SSetMorphism, g: &SSetMorphism) -> Result<SSetMorphism> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::ShapeMismatch("coequalizer of a non-parallel pair".into()));
    }
    let t = &f.target;
    let mut class_of = Vec::with_capacity(t.trunc() + 1);
    let mut representative = Vec::with_capacity(t.trunc() + 1);
    for n in 0..=t.trunc() {
        let mut uf = UnionFind::new(t.count(n));
        for x in 0..f.source.count(n) {
            uf.union(f.apply(n, x), g.apply(n, x));
        }
        let (classes, k) = uf.classes();
        let mut reps = vec![usize::MAX; k];
        for (x, &c) in classes.iter().enumerate().rev() {
            reps[c] = x;
        }
        class_of.push(classes);
        representative.push(reps);
    }
    let counts = representative.iter().map(Vec::len).collect();
    let quotient = FinSimplicialSet::from_operator_fn(t.trunc(), counts, |alpha, c| {
        class_of[alpha.dom()][t.act(alpha, representative[alpha.cod()][c]).unwrap()]
    });
    Ok(SSetMorphism { source: t.clone(), target: quotient, components: class_of })
}

/// The opposite: same cells, operators precomposed with the order reversal.
pub fn op_sset(s: &FinSimplicialSet) -> FinSimplicialSet {
    FinSimplicialSet::from_operator_fn(s.trunc(), s.counts().to_vec(), |alpha, x| s.act(&op_map(alpha), x).unwrap())
}

/// Level-wise product; the pair `(a, b)` has index `a * |T_n| + b`.
pub fn product(s: &FinSimplicialSet, t: &FinSimplicialSet) -> Result<FinSimplicialSet> {
    if s.trunc() != t.trunc() {
        return Err(Error::ShapeMismatch("product factors have different truncations".into()));
    }
    let counts = (0..=s.trunc()).map(|n| s.count(n) * t.count(n)).collect();
    Ok(FinSimplicialSet::from_operator_fn(s.trunc(), counts, |alpha, x| {
        let (a, b) = (x / t.count(alpha.cod()), x % t.count(alpha.cod()));
        s.act(alpha, a).unwrap() * t.count(alpha.dom()) + t.act(alpha, b).unwrap()
    }))
}

/// Forgets all levels above `trunc`.
pub fn truncate(s: &FinSimplicialSet, trunc: usize) -> Result<FinSimplicialSet> {
    if trunc > s.trunc() {
        return Err(Error::InsufficientTruncation { needed: trunc, available: s.trunc() });
    }
    Ok(FinSimplicialSet::from_operator_fn(trunc, s.counts()[..=trunc].to_vec(), |alpha, x| {
        s.act(alpha, x).unwrap()
    }))
}

pub fn truncate_morphism(f: &SSetMorphism, trunc: usize) -> Result<SSetMorphism> {
    Ok(SSetMorphism {
        source: truncate(&f.source, trunc)?,
        target: truncate(&f.target, trunc)?,
        components: f.components[..=trunc].to_vec(),
    })
}

fn check_tw_trunc(s: &FinSimplicialSet, trunc: usize) -> Result<()> {
    let needed = 2 * trunc + 1;
    if s.trunc() < needed {
        return Err(Error::InsufficientTruncation { needed, available: s.trunc() });
    }
    Ok(())
}

/// Largest output truncation `tw_sset` can produce from `s`, if any.
pub fn tw_trunc(s: &FinSimplicialSet) -> Option<usize> {
    (s.trunc() >= 1).then(|| (s.trunc() - 1) / 2)
}

/// The twisted arrow simplicial set `S ∘ Q`: level `n` is `S_{2n+1}` and `α`
/// acts as `S(Q(α))`.
pub fn tw_sset(s: &FinSimplicialSet, trunc: usize) -> Result<FinSimplicialSet> {
    check_tw_trunc(s, trunc)?;
    let counts = (0..=trunc).map(|n| s.count(2 * n + 1)).collect();
    Ok(FinSimplicialSet::from_operator_fn(trunc, counts, |alpha, x| s.act(&q_map(alpha), x).unwrap()))
}

/// The projection `Tw(S) -> S^op × S`, `x ↦ (S(left_n) x, S(right_n) x)`.
pub fn tw_projection(s: &FinSimplicialSet, trunc: usize) -> Result<SSetMorphism> {
    let tw = tw_sset(s, trunc)?;
    let base = truncate(s, trunc)?;
    let target = product(&op_sset(&base), &base)?;
    let components = (0..=trunc)
        .map(|n| {
            let left = s.act_table(&block_inclusion_left(n)).unwrap();
            let right = s.act_table(&block_inclusion_right(n)).unwrap();
            (0..s.count(2 * n + 1)).map(|x| left[x] * base.count(n) + right[x]).collect()
        })
        .collect();
    Ok(SSetMorphism { source: tw, target, components })
}

/// The map `Δ[n] -> S` classifying the `n`-cell `x`.
pub fn yoneda_map(s: &FinSimplicialSet, n: usize, x: usize) -> Result<SSetMorphism> {
    let simplex = standard_simplex(n, s.trunc());
    let components = (0..=s.trunc())
        .map(|k| monotone_maps(k, n).iter().map(|alpha| s.act(alpha, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SSetMorphism { source: simplex, target: s.clone(), components })
}

/// The spine `Δ[1] ⊔_{Δ[0]} Δ[1]`: two edges glued head to tail.
pub fn spine(trunc: usize) -> FinSimplicialSet {
    let edge = standard_simplex(1, trunc);
    let (sum, inj) = coproduct_with_injections(&[edge.clone(), edge]).unwrap();
    let head = yoneda_map(&inj[0].source, 0, 1).unwrap().then(&inj[0]).unwrap();
    let tail = yoneda_map(&inj[1].source, 0, 0).unwrap().then(&inj[1]).unwrap();
    debug_assert_eq!(head.target, sum);
    coequalizer(&head, &tail).unwrap().target
}

/// Named simplicial set fixtures.
pub fn sset_zoo(trunc: usize) -> Vec<(String, FinSimplicialSet)> {
    let mut out = vec![("empty".to_string(), FinSimplicialSet::empty(trunc))];
    for n in 0..=3 {
        out.push((format!("Δ[{n}]"), standard_simplex(n, trunc)));
    }
    for n in 1..=3 {
        out.push((format!("∂Δ[{n}]"), boundary(n, trunc).source));
    }
    out.push(("spine".into(), spine(trunc)));
    out.push(("Δ[0]⊔Δ[1]".into(), coproduct(&[standard_simplex(0, trunc), standard_simplex(1, trunc)]).unwrap()));
    out.push(("Δ[1]×Δ[1]".into(), product(&standard_simplex(1, trunc), &standard_simplex(1, trunc)).unwrap()));
    for (name, c) in crate::fincat::category_zoo() {
        out.push((format!("N({name})"), super::nerve(&c, trunc)));
    }
    out
}

/// Generator-wise check that a simplicial map respects the generators of
/// level `n`; used to report the first failing operator.
pub fn naturality_witness(f: &SSetMorphism, max_dim: usize) -> Option<(SimplexMap, usize)> {
    let top = max_dim.min(f.trunc());
    for m in 0..=top {
        for n in 0..=top {
            for alpha in monotone_maps(m, n) {
                let s = f.source.act_table(&alpha).unwrap();
                let t = f.target.act_table(&alpha).unwrap();
                for x in 0..f.source.count(n) {
                    if f.apply(m, s[x]) != t[f.apply(n, x)] {
                        return Some((alpha, x));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::binomial;
    use crate::fincat::{linear_order, tw_cat};
    use crate::sset::{find_iso, nerve};

    #[test]
    fn simplex_counts() {
        assert_eq!(standard_simplex(1, 1).counts(), &[2, 3]);
        assert_eq!(standard_simplex(0, 3).counts(), &[1, 1, 1, 1]);
        assert_eq!(standard_simplex(2, 2).count(2), 10);
        for n in 0..4 {
            for k in 0..5 {
                assert_eq!(standard_simplex(n, 4).count(k), binomial(n + k + 1, k + 1));
            }
        }
    }

    #[test]
    fn boundary_counts() {
        assert!(boundary(0, 2).source.is_empty());
        let b1 = boundary(1, 1).source;
        assert_eq!(b1.counts(), &[2, 2]);
        assert!(b1.nondegenerate(1).is_empty());
        // ∂Δ[2] keeps exactly the non-surjective maps into [2]
        let b2 = boundary(2, 2).source;
        let oracle: Vec<usize> =
            (0..=2).map(|k| monotone_maps(k, 2).iter().filter(|f| !f.is_surjective()).count()).collect();
        assert_eq!(oracle, vec![3, 6, 9]);
        assert_eq!(b2.counts(), &oracle[..]);
    }

    #[test]
    fn coproduct_and_coequalizer() {
        let d1 = standard_simplex(1, 2);
        assert_eq!(coproduct(&[d1.clone(), d1.clone()]).unwrap().count(0), 4);

        let two = coproduct(&[standard_simplex(0, 2), standard_simplex(0, 2)]).unwrap();
        let (_, inj) = coproduct_with_injections(&[standard_simplex(0, 2), standard_simplex(0, 2)]).unwrap();
        let q = coequalizer(&inj[0], &inj[1]).unwrap();
        assert_eq!(q.source, two);
        assert_eq!(q.target.counts(), &[1, 1, 1]);

        let sp = spine(2);
        assert_eq!(sp.count(0), 3);
        assert_eq!(sp.count(1), 5);
        assert_eq!(sp.nondegenerate(1).len(), 2);
        sp.check_identities().unwrap();
    }

    #[test]
    fn op_examples() {
        for n in 0..4 {
            let s = standard_simplex(n, 3);
            assert!(find_iso(&op_sset(&s), &s).is_some());
        }
        for (_, s) in sset_zoo(3) {
            assert_eq!(op_sset(&op_sset(&s)), s);
        }
        let c = linear_order(1);
        let op = crate::fincat::opposite(&c);
        assert!(find_iso(&op_sset(&nerve(&c, 3)), &nerve(&op, 3)).is_some());
    }

    #[test]
    fn tw_examples() {
        let t = tw_sset(&nerve(&linear_order(1), 3), 1).unwrap();
        assert_eq!(t.count(0), 3);
        assert_eq!(t.nondegenerate(1).len(), 2);
        assert!(find_iso(&t, &nerve(&tw_cat(&linear_order(1)).category, 1)).is_some());
        assert!(tw_sset(&FinSimplicialSet::empty(5), 2).unwrap().is_empty());
        assert_eq!(
            tw_sset(&standard_simplex(1, 4), 2).unwrap_err(),
            Error::InsufficientTruncation { needed: 5, available: 4 }
        );
    }

    #[test]
    fn tw_of_simplex_is_nerve_of_twisted_order() {
        for n in 0..=2 {
            let t = tw_sset(&standard_simplex(n, 7), 3).unwrap();
            let oracle = nerve(&tw_cat(&linear_order(n)).category, 3);
            assert!(find_iso(&t, &oracle).is_some(), "n = {n}");
        }
        // Δ[2n+1] has one nondegenerate (2n+1)-cell; Tw(Δ[1]) has two edges
        let t = tw_sset(&standard_simplex(1, 3), 1).unwrap();
        assert_eq!(t.nondegenerate(1).len(), 2);
    }

    #[test]
    fn projection_examples() {
        let p = tw_projection(&standard_simplex(0, 3), 1).unwrap();
        p.validate().unwrap();
        assert_eq!(p.components[0], vec![0]);

        let p = tw_projection(&nerve(&linear_order(1), 3), 1).unwrap();
        p.validate().unwrap();
        // pairs (s, t) encoded as s * 2 + t
        let mut images = p.components[0].clone();
        images.sort();
        assert_eq!(images, vec![0, 1, 3]);
        assert!(naturality_witness(&p, 3).is_none());
    }

    #[test]
    fn tw_preserves_spine_colimit() {
        // Tw of the glued spine equals the gluing of the Tw's
        let trunc = 7;
        let edge = standard_simplex(1, trunc);
        let (_, inj) = coproduct_with_injections(&[edge.clone(), edge]).unwrap();
        let head = yoneda_map(&inj[0].source, 0, 1).unwrap().then(&inj[0]).unwrap();
        let tail = yoneda_map(&inj[1].source, 0, 0).unwrap().then(&inj[1]).unwrap();
        let glued = coequalizer(&head, &tail).unwrap().target;

        let tw = |f: &SSetMorphism| SSetMorphism {
            source: tw_sset(&f.source, 3).unwrap(),
            target: tw_sset(&f.target, 3).unwrap(),
            components: (0..=3).map(|n| f.components[2 * n + 1].clone()).collect(),
        };
        let glued_tw = coequalizer(&tw(&head), &tw(&tail)).unwrap().target;
        assert!(find_iso(&tw_sset(&glued, 3).unwrap(), &glued_tw).is_some());
    }
}
