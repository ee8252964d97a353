use serde::Serialize;

use super::GroupoidFunctor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidEquivalence {
    pub essentially_surjective: bool,
    pub full: bool,
    pub faithful: bool,
    pub witnesses: Vec<String>,
}

impl GroupoidEquivalence {
    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective && self.full && self.faithful
    }
}

/// Decides whether a functor of groupoids is an equivalence: a bijection on
/// components and an isomorphism on every automorphism group.
pub fn groupoid_equivalence(f: &GroupoidFunctor) -> GroupoidEquivalence {
    let (src, tgt) = (&f.source, &f.target);
    let mut report =
        GroupoidEquivalence { essentially_surjective: true, full: true, faithful: true, witnesses: Vec::new() };
    let mut preimage = vec![usize::MAX; tgt.component_count()];
    for (c, comp) in src.components().iter().enumerate() {
        let tc = tgt.component_of(f.object(comp.base));
        if preimage[tc] != usize::MAX {
            if report.full {
                let other = src.component(preimage[tc]).base;
                report.witnesses.push(format!(
                    "objects {other} and {} are not isomorphic but their images {} and {} are",
                    comp.base,
                    f.object(other),
                    f.object(comp.base)
                ));
            }
            report.full = false;
        } else {
            preimage[tc] = c;
        }
        let rho = f.rho(c);
        let order = tgt.component(tc).group.order();
        let mut hit = vec![false; order];
        for (g, &v) in rho.iter().enumerate() {
            if hit[v] {
                if report.faithful {
                    report.witnesses.push(format!(
                        "automorphism #{g} of object {} is identified with another automorphism",
                        comp.base
                    ));
                }
                report.faithful = false;
            }
            hit[v] = true;
        }
        if let Some(miss) = hit.iter().position(|&h| !h) {
            if report.full {
                report.witnesses.push(format!(
                    "automorphism #{miss} of object {} is not in the image",
                    f.object(comp.base)
                ));
            }
            report.full = false;
        }
    }
    if let Some(tc) = preimage.iter().position(|&p| p == usize::MAX) {
        report.essentially_surjective = false;
        report.witnesses.push(format!("object {} is not in the essential image", tgt.component(tc).base));
    }
    report
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groupoid::{FinGroup, FinGroupoid};

    #[test]
    fn examples() {
        let j = Arc::new(FinGroupoid::from_components(2, vec![(vec![0, 1], Arc::new(FinGroup::trivial()))]).unwrap());
        let t = Arc::new(FinGroupoid::terminal());
        assert!(groupoid_equivalence(&GroupoidFunctor::identity(&j)).is_equivalence());
        let collapse = GroupoidFunctor::new(j, t.clone(), vec![0, 0], vec![0, 0], vec![vec![0]]).unwrap();
        assert!(groupoid_equivalence(&collapse).is_equivalence());

        let two = Arc::new(FinGroupoid::discrete(2));
        let r = groupoid_equivalence(&GroupoidFunctor::discrete(two.clone(), t.clone(), vec![0, 0]));
        assert!(r.essentially_surjective && r.faithful && !r.full);
        assert_eq!(r.witnesses.len(), 1);

        let r = groupoid_equivalence(&GroupoidFunctor::discrete(t, two, vec![1]));
        assert!(!r.essentially_surjective && r.full && r.faithful);

        let z2 = Arc::new(FinGroupoid::from_components(1, vec![(vec![0], Arc::new(FinGroup::cyclic(2)))]).unwrap());
        let kill = GroupoidFunctor::new(z2.clone(), z2.clone(), vec![0], vec![0], vec![vec![0, 0]]).unwrap();
        let r = groupoid_equivalence(&kill);
        assert!(!r.faithful && !r.full);
    }
}
