use std::collections::HashMap;
use std::sync::Arc;

use super::framed::{canonical_framing, ExplicitGroupoid, Framed};
use super::{Arrow, FinGroupoid, GroupoidFunctor};
use crate::error::{Error, Result};

/// The iso-comma groupoid of `F: A -> C` and `G: B -> C` in explicit form:
/// objects `(a, b, φ: F a ≅ G b)`, morphisms pairs `(α, β)` with
/// `φ' ∘ F α = G β ∘ φ`.
pub struct IsoComma {
    f: GroupoidFunctor,
    g: GroupoidFunctor,
    objects: Vec<(usize, usize, usize)>,
}

impl IsoComma {
    fn phi(&self, x: usize) -> Arrow {
        let (a, b, elem) = self.objects[x];
        Arrow { source: self.f.object(a), target: self.g.object(b), elem }
    }
}

impl ExplicitGroupoid for IsoComma {
    type Mor = (Arrow, Arrow);

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn bucket(&self, x: usize) -> Vec<usize> {
        let (a, b, _) = self.objects[x];
        vec![self.f.source.component_of(a), self.g.source.component_of(b)]
    }

    fn hom(&self, x: usize, y: usize) -> Vec<(Arrow, Arrow)> {
        let ((a, b, _), (a2, b2, _)) = (self.objects[x], self.objects[y]);
        let (phi, phi2) = (self.phi(x), self.phi(y));
        let c = &self.f.target;
        let mut out = Vec::new();
        for alpha in self.f.source.hom(a, a2) {
            let lhs = c.compose(phi2, self.f.apply(alpha)).unwrap();
            for beta in self.g.source.hom(b, b2) {
                if c.compose(self.g.apply(beta), phi) == Some(lhs) {
                    out.push((alpha, beta));
                }
            }
        }
        out
    }

    fn compose(&self, g: &(Arrow, Arrow), f: &(Arrow, Arrow)) -> (Arrow, Arrow) {
        (
            self.f.source.compose(g.0, f.0).expect("composable"),
            self.g.source.compose(g.1, f.1).expect("composable"),
        )
    }

    fn inverse(&self, f: &(Arrow, Arrow)) -> (Arrow, Arrow) {
        (self.f.source.inverse(f.0), self.g.source.inverse(f.1))
    }

    fn identity(&self, x: usize) -> (Arrow, Arrow) {
        let (a, b, _) = self.objects[x];
        (self.f.source.identity(a), self.g.source.identity(b))
    }
}

/// A framed pseudo-pullback with its two projections.
pub struct PseudoPullback {
    pub framed: Framed<IsoComma>,
    pub proj_a: GroupoidFunctor,
    pub proj_b: GroupoidFunctor,
    lookup: HashMap<(usize, usize, usize), usize>,
}

impl PseudoPullback {
    pub fn groupoid(&self) -> &Arc<FinGroupoid> {
        &self.framed.groupoid
    }

    /// `(a, b, elem)` where `elem` is the coordinate of `φ: F a -> G b`.
    pub fn object(&self, x: usize) -> (usize, usize, usize) {
        self.framed.explicit.objects[x]
    }

    pub fn objects(&self) -> &[(usize, usize, usize)] {
        &self.framed.explicit.objects
    }

    pub fn phi(&self, x: usize) -> Arrow {
        self.framed.explicit.phi(x)
    }

    pub fn index_of(&self, a: usize, b: usize, elem: usize) -> Option<usize> {
        self.lookup.get(&(a, b, elem)).copied()
    }

    pub fn left(&self) -> &GroupoidFunctor {
        &self.framed.explicit.f
    }

    pub fn right(&self) -> &GroupoidFunctor {
        &self.framed.explicit.g
    }
}

pub fn pseudo_pullback(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<PseudoPullback> {
    if f.target != g.target {
        return Err(Error::InvalidFunctor("pseudo-pullback of functors with different targets".into()));
    }
    let c = &f.target;
    let mut by_component: Vec<Vec<usize>> = vec![Vec::new(); c.component_count()];
    for b in 0..g.source.object_count() {
        by_component[c.component_of(g.object(b))].push(b);
    }
    let mut objects = Vec::new();
    for a in 0..f.source.object_count() {
        let fa = f.object(a);
        let order = c.group_of(fa).order();
        for &b in &by_component[c.component_of(fa)] {
            for elem in 0..order {
                objects.push((a, b, elem));
            }
        }
    }
    let lookup = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let explicit = IsoComma { f: f.clone(), g: g.clone(), objects };
    let framed = Framed::new(explicit);
    let proj_a = framed.functor_to(&canonical_framing(&f.source), |x| framed.explicit.objects[x].0, |m| m.0);
    let proj_b = framed.functor_to(&canonical_framing(&g.source), |x| framed.explicit.objects[x].1, |m| m.1);
    Ok(PseudoPullback { framed, proj_a, proj_b, lookup })
}

/// The functor `X -> A ×^h_C B` induced by `K: X -> A`, `L: X -> B` and a
/// natural isomorphism `θ: F K ⇒ G L` given by its components.
pub fn comparison_functor(
    pp: &PseudoPullback,
    k: &GroupoidFunctor,
    l: &GroupoidFunctor,
    theta: &[Arrow],
) -> Result<GroupoidFunctor> {
    let (f, g) = (pp.left(), pp.right());
    let x = &k.source;
    if l.source != *x || k.target != f.source || l.target != g.source || theta.len() != x.object_count() {
        return Err(Error::InvalidFunctor("comparison data does not match the cospan".into()));
    }
    let c = &f.target;
    for v in 0..x.object_count() {
        let t = theta[v];
        if t.source != f.object(k.object(v)) || t.target != g.object(l.object(v)) {
            return Err(Error::NonCommutingSquare(format!("θ at object {v} has the wrong endpoints")));
        }
    }
    // naturality on the frame arrows and base automorphisms generates all
    for comp in x.components() {
        for &v in &comp.members {
            for u in x.hom(comp.base, v) {
                let lhs = c.compose(theta[v], f.apply(k.apply(u))).unwrap();
                let rhs = c.compose(g.apply(l.apply(u)), theta[comp.base]).unwrap();
                if lhs != rhs {
                    return Err(Error::NonCommutingSquare(format!(
                        "θ is not natural on the arrow {} -> {} (#{})",
                        u.source, u.target, u.elem
                    )));
                }
            }
        }
    }
    let objects = (0..x.object_count())
        .map(|v| {
            pp.index_of(k.object(v), l.object(v), theta[v].elem)
                .ok_or_else(|| Error::InvalidFunctor(format!("no pseudo-pullback object over {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let functor = canonical_framing(x).functor_to(&pp.framed, |v| objects[v], |u| (k.apply(*u), l.apply(*u)));
    Ok(functor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{groupoid_equivalence, FinGroup};

    fn j() -> Arc<FinGroupoid> {
        Arc::new(FinGroupoid::from_components(2, vec![(vec![0, 1], Arc::new(FinGroup::trivial()))]).unwrap())
    }

    fn point_at(target: &Arc<FinGroupoid>, x: usize) -> GroupoidFunctor {
        let pt = Arc::new(FinGroupoid::terminal());
        GroupoidFunctor::new(pt, target.clone(), vec![x], vec![0], vec![vec![0]]).unwrap()
    }

    #[test]
    fn over_terminal_is_product() {
        let a = j();
        let b = Arc::new(FinGroupoid::discrete(3));
        let t = Arc::new(FinGroupoid::terminal());
        let fa = GroupoidFunctor::new(a.clone(), t.clone(), vec![0, 0], vec![0, 0], vec![vec![0]]).unwrap();
        let fb = GroupoidFunctor::discrete(b.clone(), t.clone(), vec![0; 3]);
        let pp = pseudo_pullback(&fa, &fb).unwrap();
        assert_eq!(*pp.groupoid().as_ref(), FinGroupoid::product(&a, &b));
    }

    #[test]
    fn two_points_of_j() {
        let c = j();
        let pp = pseudo_pullback(&point_at(&c, 0), &point_at(&c, 1)).unwrap();
        assert_eq!(pp.groupoid().object_count(), 1);
        let to_pt = GroupoidFunctor::new(
            pp.groupoid().clone(),
            Arc::new(FinGroupoid::terminal()),
            vec![0],
            vec![0],
            vec![vec![0]],
        )
        .unwrap();
        assert!(groupoid_equivalence(&to_pt).is_equivalence());
    }

    #[test]
    fn discrete_is_strict_pullback() {
        let a = Arc::new(FinGroupoid::discrete(3));
        let b = Arc::new(FinGroupoid::discrete(2));
        let c = Arc::new(FinGroupoid::discrete(2));
        let f = GroupoidFunctor::discrete(a, c.clone(), vec![0, 1, 1]);
        let g = GroupoidFunctor::discrete(b, c, vec![1, 1]);
        let pp = pseudo_pullback(&f, &g).unwrap();
        assert!(pp.groupoid().is_discrete());
        let pairs: Vec<_> = pp.objects().iter().map(|&(a, b, _)| (a, b)).collect();
        assert_eq!(pairs, vec![(1, 0), (1, 1), (2, 0), (2, 1)]);
    }

    #[test]
    fn comparison_detects_unnatural_theta() {
        // A = B = C = Z/2 on one object; θ must commute with the automorphism
        let z2 = Arc::new(FinGroupoid::from_components(1, vec![(vec![0], Arc::new(FinGroup::cyclic(2)))]).unwrap());
        let id = GroupoidFunctor::identity(&z2);
        let trivial = GroupoidFunctor::new(z2.clone(), z2.clone(), vec![0], vec![0], vec![vec![0, 0]]).unwrap();
        let pp = pseudo_pullback(&id, &id).unwrap();
        let theta = [Arrow { source: 0, target: 0, elem: 0 }];
        assert!(comparison_functor(&pp, &id, &id, &theta).is_ok());
        assert!(matches!(
            comparison_functor(&pp, &id, &trivial, &theta),
            Err(Error::NonCommutingSquare(_))
        ));
    }
}
