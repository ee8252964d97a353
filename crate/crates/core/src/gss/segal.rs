use serde::Serialize;

use super::GroupoidSimplicialSpace;
use crate::delta::{face, interval};
use crate::error::Result;
use crate::groupoid::{comparison_functor, groupoid_equivalence, pseudo_pullback, GroupoidEquivalence, GroupoidFunctor, PseudoPullback};

/// `G_1 ×^h_{G_0} ⋯ ×^h_{G_0} G_1` (`n` factors) built one factor at a time,
/// with the Segal comparison functors `c_n: G_n -> P_n`.
pub struct SegalTower {
    /// `pullbacks[k]` is `P_{k+2}`.
    pub pullbacks: Vec<PseudoPullback>,
    /// `comparisons[k]` is `c_{k+1}` (so `comparisons[0]` is the identity of `G_1`).
    pub comparisons: Vec<GroupoidFunctor>,
}

impl SegalTower {
    pub fn build(w: &GroupoidSimplicialSpace, n_max: usize) -> Result<Self> {
        w.require(n_max.max(1))?;
        let d0 = w.act(&face(1, 0)?)?;
        let d1 = w.act(&face(1, 1)?)?;
        let mut last = GroupoidFunctor::identity(w.level(1));
        let mut pullbacks = Vec::new();
        let mut comparisons = vec![GroupoidFunctor::identity(w.level(1))];
        for n in 2..=n_max {
            let pp = pseudo_pullback(&last.then(&d0)?, &d1)?;
            let k = w.act(&interval(n, 0, n - 1))?.then(&comparisons[n - 2])?;
            let l = w.act(&interval(n, n - 1, n))?;
            let g0 = w.level(0);
            let fk = k.then(&last)?.then(&d0)?;
            let theta: Vec<_> = (0..w.level(n).object_count()).map(|v| g0.identity(fk.object(v))).collect();
            let c = comparison_functor(&pp, &k, &l, &theta)?;
            last = pp.proj_b.clone();
            pullbacks.push(pp);
            comparisons.push(c);
        }
        Ok(Self { pullbacks, comparisons })
    }

    pub fn pullback(&self, n: usize) -> &PseudoPullback {
        &self.pullbacks[n - 2]
    }

    pub fn comparison(&self, n: usize) -> &GroupoidFunctor {
        &self.comparisons[n - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalLevel {
    pub n: usize,
    /// Objects of `G_n` and of the iterated pseudo-pullback.
    pub level_objects: usize,
    pub pullback_objects: usize,
    pub equivalence: GroupoidEquivalence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    pub n_max: usize,
    pub levels: Vec<SegalLevel>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.equivalence.is_equivalence())
    }

    pub fn first_failure(&self) -> Option<&SegalLevel> {
        self.levels.iter().find(|l| !l.equivalence.is_equivalence())
    }
}

/// Checks that `G_n -> G_1 ×^h_{G_0} ⋯ ×^h_{G_0} G_1` is an equivalence
/// for `2 <= n <= n_max`.
pub fn segal_check(w: &GroupoidSimplicialSpace, n_max: usize) -> Result<SegalReport> {
    w.require(n_max)?;
    if n_max < 2 {
        return Ok(SegalReport { n_max, levels: Vec::new() });
    }
    let tower = SegalTower::build(w, n_max)?;
    let levels = (2..=n_max)
        .map(|n| SegalLevel {
            n,
            level_objects: w.level(n).object_count(),
            pullback_objects: tower.pullback(n).groupoid().object_count(),
            equivalence: groupoid_equivalence(tower.comparison(n)),
        })
        .collect();
    Ok(SegalReport { n_max, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_zoo, walking_iso};
    use crate::gss::{classifying_diagram, discrete_embedding, terminal_space, tw_space};
    use crate::sset::{nerve, spine, sset_zoo};

    #[test]
    fn terminal_and_nerves_are_segal() {
        assert!(segal_check(&terminal_space(4), 4).unwrap().passed());
        for (name, c) in category_zoo() {
            let r = segal_check(&discrete_embedding(&nerve(&c, 4)), 4).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
            let r = segal_check(&classifying_diagram(&c, 4), 4).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn discrete_pullback_counts_chains() {
        // strict = pseudo for discrete nerves: P_n has exactly the n-chains
        let c = crate::fincat::square();
        let s = nerve(&c, 3);
        let r = segal_check(&discrete_embedding(&s), 3).unwrap();
        for l in &r.levels {
            assert_eq!(l.pullback_objects, s.count(l.n));
        }
    }

    #[test]
    fn spine_and_boundary_fail() {
        let r = segal_check(&discrete_embedding(&spine(2)), 2).unwrap();
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().n, 2);
        assert!(!r.levels[0].equivalence.witnesses.is_empty());
        let boundary = sset_zoo(2).into_iter().find(|(n, _)| n == "∂Δ[2]").unwrap().1;
        assert!(!segal_check(&discrete_embedding(&boundary), 2).unwrap().passed());
    }

    #[test]
    fn twisted_space_of_j_is_segal() {
        let w = classifying_diagram(&walking_iso(), 7);
        assert!(segal_check(&tw_space(&w, 3).unwrap(), 3).unwrap().passed());
    }
}
