use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::{Arrow, FinGroup, FinGroupoid, GroupoidFunctor};

/// A groupoid whose morphisms are concrete values, e.g. tuples of
/// isomorphisms of a category or pairs of arrows of other groupoids.
pub trait ExplicitGroupoid {
    type Mor: Clone + Eq + Hash;

    fn object_count(&self) -> usize;

    /// Objects with different buckets must not be isomorphic. Finer buckets
    /// only speed up framing.
    fn bucket(&self, _x: usize) -> Vec<usize> {
        Vec::new()
    }

    fn hom(&self, x: usize, y: usize) -> Vec<Self::Mor>;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn inverse(&self, f: &Self::Mor) -> Self::Mor;

    fn identity(&self, x: usize) -> Self::Mor;
}

/// A framed groupoid viewed as an explicit one, morphisms being its arrows.
pub struct Skeletal(pub Arc<FinGroupoid>);

impl ExplicitGroupoid for Skeletal {
    type Mor = Arrow;

    fn object_count(&self) -> usize {
        self.0.object_count()
    }

    fn bucket(&self, x: usize) -> Vec<usize> {
        vec![self.0.component_of(x)]
    }

    fn hom(&self, x: usize, y: usize) -> Vec<Arrow> {
        self.0.hom(x, y)
    }

    fn compose(&self, g: &Arrow, f: &Arrow) -> Arrow {
        self.0.compose(*g, *f).expect("composable arrows")
    }

    fn inverse(&self, f: &Arrow) -> Arrow {
        self.0.inverse(*f)
    }

    fn identity(&self, x: usize) -> Arrow {
        self.0.identity(x)
    }
}

/// An explicit groupoid together with a framed skeletal copy of it: a base
/// per component, a frame arrow `t_x: base -> x` per object and an indexed
/// automorphism group of each base (unit first).
pub struct Framed<E: ExplicitGroupoid> {
    pub explicit: E,
    pub groupoid: Arc<FinGroupoid>,
    frames: Vec<E::Mor>,
    frame_inverses: Vec<E::Mor>,
    labels: Vec<Vec<E::Mor>>,
    label_index: Vec<HashMap<E::Mor, usize>>,
}

impl<E: ExplicitGroupoid> Framed<E> {
    pub fn new(explicit: E) -> Self {
        let n = explicit.object_count();
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut bucket_of = Vec::with_capacity(n);
        for x in 0..n {
            let key = explicit.bucket(x);
            buckets.entry(key.clone()).or_default().push(x);
            bucket_of.push(key);
        }
        let mut assigned = vec![false; n];
        let mut frames: Vec<Option<E::Mor>> = vec![None; n];
        let mut components = Vec::new();
        let mut labels = Vec::new();
        let mut label_index = Vec::new();
        let trivial = Arc::new(FinGroup::trivial());
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            assigned[x] = true;
            frames[x] = Some(explicit.identity(x));
            let mut members = vec![x];
            for &y in &buckets[&bucket_of[x]] {
                if assigned[y] {
                    continue;
                }
                if let Some(t) = explicit.hom(x, y).into_iter().next() {
                    assigned[y] = true;
                    frames[y] = Some(t);
                    members.push(y);
                }
            }
            let id = explicit.identity(x);
            let mut aut = explicit.hom(x, x);
            let pos = aut.iter().position(|m| *m == id).expect("identity among automorphisms");
            let unit = aut.remove(pos);
            aut.insert(0, unit);
            let index: HashMap<E::Mor, usize> = aut.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let group = if aut.len() == 1 {
                trivial.clone()
            } else {
                let order = aut.len();
                let table = (0..order * order).map(|k| index[&explicit.compose(&aut[k / order], &aut[k % order])]).collect();
                Arc::new(FinGroup::from_table_unchecked(order, table))
            };
            components.push((members, group));
            labels.push(aut);
            label_index.push(index);
        }
        let frames: Vec<E::Mor> = frames.into_iter().map(Option::unwrap).collect();
        let frame_inverses = frames.iter().map(|t| explicit.inverse(t)).collect();
        let groupoid = Arc::new(FinGroupoid::from_components(n, components).expect("framing covers every object"));
        Self { explicit, groupoid, frames, frame_inverses, labels, label_index }
    }

    pub fn frame(&self, x: usize) -> &E::Mor {
        &self.frames[x]
    }

    /// Coordinates of an explicit morphism `m: x -> y`.
    pub fn coordinates(&self, m: &E::Mor, x: usize, y: usize) -> Arrow {
        let c = self.groupoid.component_of(x);
        debug_assert_eq!(c, self.groupoid.component_of(y), "morphism between non-isomorphic objects");
        let core = self.explicit.compose(&self.frame_inverses[y], &self.explicit.compose(m, &self.frames[x]));
        Arrow { source: x, target: y, elem: self.label_index[c][&core] }
    }

    /// The explicit morphism with the given coordinates.
    pub fn realize(&self, a: Arrow) -> E::Mor {
        let c = self.groupoid.component_of(a.source);
        let core = &self.labels[c][a.elem];
        self.explicit.compose(&self.frames[a.target], &self.explicit.compose(core, &self.frame_inverses[a.source]))
    }

    /// The framed functor induced by an explicit one.
    pub fn functor_to<F: ExplicitGroupoid>(
        &self,
        target: &Framed<F>,
        obj: impl Fn(usize) -> usize,
        mor: impl Fn(&E::Mor) -> F::Mor,
    ) -> GroupoidFunctor {
        let n = self.groupoid.object_count();
        let objects: Vec<usize> = (0..n).map(&obj).collect();
        let mut frame = vec![0; n];
        let mut rho = Vec::with_capacity(self.groupoid.component_count());
        for (c, comp) in self.groupoid.components().iter().enumerate() {
            let fb = objects[comp.base];
            for &x in &comp.members {
                frame[x] = target.coordinates(&mor(&self.frames[x]), fb, objects[x]).elem;
            }
            rho.push(self.labels[c].iter().map(|g| target.coordinates(&mor(g), fb, fb).elem).collect());
        }
        GroupoidFunctor::from_parts(self.groupoid.clone(), target.groupoid.clone(), objects, frame, rho)
    }
}

/// The trivial framing of a framed groupoid by itself.
pub fn canonical_framing(g: &Arc<FinGroupoid>) -> Framed<Skeletal> {
    let n = g.object_count();
    let frames: Vec<Arrow> =
        (0..n).map(|x| Arrow { source: g.component(g.component_of(x)).base, target: x, elem: 0 }).collect();
    let frame_inverses = frames.iter().map(|&t| g.inverse(t)).collect();
    let labels: Vec<Vec<Arrow>> = g
        .components()
        .iter()
        .map(|c| (0..c.group.order()).map(|elem| Arrow { source: c.base, target: c.base, elem }).collect())
        .collect();
    let label_index = labels.iter().map(|l| l.iter().enumerate().map(|(i, &a)| (a, i)).collect()).collect();
    Framed { explicit: Skeletal(g.clone()), groupoid: g.clone(), frames, frame_inverses, labels, label_index }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The groupoid of bijections between subsets of equal size of {0, 1}.
    struct Bijections;

    impl ExplicitGroupoid for Bijections {
        // (source subset, target subset, permutation as images)
        type Mor = (usize, usize, Vec<usize>);

        fn object_count(&self) -> usize {
            4
        }

        fn bucket(&self, x: usize) -> Vec<usize> {
            vec![(x as u32).count_ones() as usize]
        }

        fn hom(&self, x: usize, y: usize) -> Vec<Self::Mor> {
            let xs: Vec<usize> = (0..2).filter(|b| x >> b & 1 == 1).collect();
            let ys: Vec<usize> = (0..2).filter(|b| y >> b & 1 == 1).collect();
            if xs.len() != ys.len() {
                return Vec::new();
            }
            match xs.len() {
                0 => vec![(x, y, vec![])],
                1 => vec![(x, y, vec![ys[0]])],
                _ => vec![(x, y, vec![0, 1]), (x, y, vec![1, 0])],
            }
        }

        fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
            let ys: Vec<usize> = (0..2).filter(|b| f.1 >> b & 1 == 1).collect();
            let images = f.2.iter().map(|&v| g.2[ys.iter().position(|&y| y == v).unwrap()]).collect();
            (f.0, g.1, images)
        }

        fn inverse(&self, f: &Self::Mor) -> Self::Mor {
            let xs: Vec<usize> = (0..2).filter(|b| f.0 >> b & 1 == 1).collect();
            let ys: Vec<usize> = (0..2).filter(|b| f.1 >> b & 1 == 1).collect();
            let images = ys.iter().map(|&y| xs[f.2.iter().position(|&v| v == y).unwrap()]).collect();
            (f.1, f.0, images)
        }

        fn identity(&self, x: usize) -> Self::Mor {
            let xs: Vec<usize> = (0..2).filter(|b| x >> b & 1 == 1).collect();
            (x, x, xs)
        }
    }

    #[test]
    fn framing_finds_components_and_groups() {
        let f = Framed::new(Bijections);
        let g = &f.groupoid;
        assert_eq!(g.component_count(), 3);
        assert!(g.are_isomorphic(1, 2));
        assert_eq!(g.group_of(3).order(), 2);
        for x in 0..4 {
            for y in 0..4 {
                for m in f.explicit.hom(x, y) {
                    let a = f.coordinates(&m, x, y);
                    assert_eq!(f.realize(a), m);
                }
            }
        }
    }

    #[test]
    fn canonical_framing_is_identity_on_coordinates() {
        let f = Framed::new(Bijections);
        let c = canonical_framing(&f.groupoid);
        let id = c.functor_to(&c, |x| x, |m| *m);
        assert_eq!(id, GroupoidFunctor::identity(&f.groupoid));
    }
}
