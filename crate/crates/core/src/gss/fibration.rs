use std::sync::Arc;

use serde::Serialize;

use super::{GroupoidSimplicialSpace, GssMap};
use crate::delta::{terminal_map, vertex};
use crate::error::{Error, Result};
use crate::groupoid::{
    comparison_functor, groupoid_equivalence, pseudo_pullback, FinGroupoid, GroupoidFunctor, PseudoPullback,
};

/// Outcome of comparing the corner of a square with the pseudo-pullback of
/// its cospan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheckReport {
    pub corner_objects: usize,
    pub pullback_objects: usize,
    pub essentially_surjective: bool,
    pub full: bool,
    pub faithful: bool,
    pub witnesses: Vec<String>,
}

impl SquareCheckReport {
    pub fn is_homotopy_pullback(&self) -> bool {
        self.essentially_surjective && self.full && self.faithful
    }
}

/// The square
/// ```text
///   X --L--> B
///   |K       |G
///   A --F--> C
/// ```
/// must commute strictly; it is a homotopy pullback iff `X -> A ×^h_C B`
/// is an equivalence.
pub fn homotopy_pullback_check(
    k: &GroupoidFunctor,
    f: &GroupoidFunctor,
    l: &GroupoidFunctor,
    g: &GroupoidFunctor,
) -> Result<SquareCheckReport> {
    let fk = k.then(f)?;
    let gl = l.then(g)?;
    if fk != gl {
        let witness = (0..fk.source.object_count())
            .find(|&x| fk.object(x) != gl.object(x))
            .map(|x| format!("object {x} goes to {} and {}", fk.object(x), gl.object(x)))
            .unwrap_or_else(|| "the two composites differ on arrows".into());
        return Err(Error::NonCommutingSquare(witness));
    }
    let pp = pseudo_pullback(f, g)?;
    let theta: Vec<_> = (0..k.source.object_count()).map(|x| f.target.identity(fk.object(x))).collect();
    let comparison = comparison_functor(&pp, k, l, &theta)?;
    let eq = groupoid_equivalence(&comparison);
    Ok(SquareCheckReport {
        corner_objects: k.source.object_count(),
        pullback_objects: pp.groupoid().object_count(),
        essentially_surjective: eq.essentially_surjective,
        full: eq.full,
        faithful: eq.faithful,
        witnesses: eq.witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftFibrationReport {
    /// `(n, report)` for the square of the initial vertex `[0] -> [n]`.
    pub levels: Vec<(usize, SquareCheckReport)>,
    /// Result of the `n = 1` square alone.
    pub shortcut: bool,
    /// Result of every square.
    pub full_scan: bool,
}

impl LeftFibrationReport {
    pub fn passed(&self) -> bool {
        self.full_scan
    }

    pub fn agree(&self) -> bool {
        self.shortcut == self.full_scan
    }
}

/// Checks that `X_n -> X_0 ×^h_{Y_0} Y_n` is an equivalence for `1 <= n <= n_max`.
pub fn left_fibration_check(p: &GssMap, n_max: usize) -> Result<LeftFibrationReport> {
    p.target.require(n_max)?;
    p.source.require(n_max)?;
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let v0 = vertex(n, 0);
        let r = homotopy_pullback_check(
            &p.source.act(&v0)?,
            &p.components[0],
            &p.components[n],
            &p.target.act(&v0)?,
        )?;
        levels.push((n, r));
    }
    let shortcut = levels.first().is_none_or(|(_, r)| r.is_homotopy_pullback());
    let full_scan = levels.iter().all(|(_, r)| r.is_homotopy_pullback());
    Ok(LeftFibrationReport { levels, shortcut, full_scan })
}

/// The pseudo-fibre of `p: X -> A × B` over `{x} × B`, level by level.
///
/// `a` and `b` are the factors of the target; `x` is an object of `A_0`.
pub fn fiber_at(
    p: &GssMap,
    a: &GroupoidSimplicialSpace,
    b: &GroupoidSimplicialSpace,
    x: usize,
) -> Result<GroupoidSimplicialSpace> {
    let trunc = p.target.trunc();
    a.require(trunc)?;
    b.require(trunc)?;
    if x >= a.level(0).object_count() {
        return Err(Error::UnknownObject(x));
    }
    for n in 0..=trunc {
        if **p.target.level(n) != FinGroupoid::product(a.level(n), b.level(n)) {
            return Err(Error::ShapeMismatch(format!("target level {n} is not the product of the factors")));
        }
    }
    let pps: Vec<PseudoPullback> = (0..=trunc)
        .map(|n| {
            let point = a.act(&terminal_map(n))?.object(x);
            let bn = b.level(n);
            let j = GroupoidFunctor::pair(
                &GroupoidFunctor::constant(bn.clone(), a.level(n).clone(), point),
                &GroupoidFunctor::identity(bn),
                p.target.level(n).clone(),
            )?;
            pseudo_pullback(&p.components[n], &j)
        })
        .collect::<Result<_>>()?;
    let levels: Vec<Arc<FinGroupoid>> = pps.iter().map(|pp| pp.groupoid().clone()).collect();
    let mut err = None;
    let space = GroupoidSimplicialSpace::from_generators(levels, |alpha| {
        let (src, dst) = (&pps[alpha.cod()], &pps[alpha.dom()]);
        let (xa, ba, ya) = (p.source.act(alpha), b.act(alpha), p.target.act(alpha));
        let (xa, ba, ya) = match (xa, ba, ya) {
            (Ok(xa), Ok(ba), Ok(ya)) => (xa, ba, ya),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                err = Some(e);
                return GroupoidFunctor::identity(src.groupoid());
            }
        };
        let objects: Vec<usize> = (0..src.groupoid().object_count())
            .map(|o| {
                let (s, w, _) = src.object(o);
                let phi = ya.apply(src.phi(o));
                dst.index_of(xa.object(s), ba.object(w), phi.elem).expect("fibre is simplicial")
            })
            .collect();
        src.framed.functor_to(&dst.framed, |o| objects[o], |m| (xa.apply(m.0), ba.apply(m.1)))
    });
    match err {
        Some(e) => Err(e),
        None => Ok(space),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_zoo, find_equivalence, linear_order, under_category, walking_iso};
    use crate::gss::{
        classifying_diagram, discrete_embedding, first_projection, ho_category, op_space, terminal_space,
        truncate, tw_space, twisted_projection_space,
    };
    use crate::sset::nerve;

    #[test]
    fn identity_square_passes() {
        let g = Arc::new(FinGroupoid::discrete(3));
        let id = GroupoidFunctor::identity(&g);
        assert!(homotopy_pullback_check(&id, &id, &id, &id).unwrap().is_homotopy_pullback());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let g = Arc::new(FinGroupoid::discrete(2));
        let id = GroupoidFunctor::identity(&g);
        let swap = GroupoidFunctor::discrete(g.clone(), g.clone(), vec![1, 0]);
        assert!(matches!(homotopy_pullback_check(&id, &id, &id, &swap), Err(Error::NonCommutingSquare(_))));
    }

    #[test]
    fn twisted_projection_is_left_fibration() {
        for (name, c) in category_zoo() {
            for w in [discrete_embedding(&nerve(&c, 9)), classifying_diagram(&c, 9)] {
                let p = twisted_projection_space(&w, 4).unwrap();
                let r = left_fibration_check(&p, 4).unwrap();
                assert!(r.passed() && r.agree(), "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn first_projection_is_not() {
        let w = discrete_embedding(&nerve(&linear_order(1), 2));
        let r = left_fibration_check(&first_projection(&w).unwrap(), 2).unwrap();
        assert!(!r.shortcut);
        let (n, first) = &r.levels[0];
        assert_eq!((*n, first.corner_objects, first.pullback_objects), (1, 9, 6));
    }

    #[test]
    fn fibers() {
        let w = discrete_embedding(&nerve(&linear_order(1), 7));
        let p = twisted_projection_space(&w, 3).unwrap();
        let base = truncate(&w, 3).unwrap();
        let f = fiber_at(&p, &op_space(&base), &base, 0).unwrap();
        assert_eq!(f.level(0).object_count(), 2);
        f.check_identities().unwrap();

        let t = terminal_space(7);
        let p = twisted_projection_space(&t, 3).unwrap();
        let base = truncate(&t, 3).unwrap();
        let f = fiber_at(&p, &op_space(&base), &base, 0).unwrap();
        assert!(f.levels().iter().all(|g| g.object_count() == 1 && g.morphism_count() == 1));
        assert!(fiber_at(&p, &op_space(&base), &base, 1).is_err());
    }

    #[test]
    fn fibers_are_under_categories() {
        for c in [linear_order(2), walking_iso(), crate::fincat::span(), crate::fincat::cyclic_group(2)] {
            let w = classifying_diagram(&c, 7);
            let p = twisted_projection_space(&w, 3).unwrap();
            let base = truncate(&w, 3).unwrap();
            for x in c.objects() {
                let f = fiber_at(&p, &op_space(&base), &base, x).unwrap();
                let ho = ho_category(&f).unwrap();
                let (under, _) = under_category(&c, x).unwrap();
                assert!(find_equivalence(&ho.category, &under).is_some(), "object {x}");
            }
        }
        let _ = tw_space(&terminal_space(3), 1).unwrap();
    }
}
