//! Finite groupoids in framed skeletal form.
//!
//! Every connected component has a base object and an automorphism group;
//! the morphism `(x, y, g)` stands for `t_y ∘ g ∘ t_x⁻¹` where `t_x` is the
//! (implicit) frame arrow from the base to `x`. Hom-sets are therefore copies
//! of the component group and composition is group multiplication, which
//! keeps the large pseudo-pullbacks of the Segal checks cheap.

mod equivalence;
mod framed;
mod pullback;

pub use equivalence::{groupoid_equivalence, GroupoidEquivalence};
pub use framed::{canonical_framing, ExplicitGroupoid, Framed, Skeletal};
pub use pullback::{comparison_functor, pseudo_pullback, PseudoPullback};

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory};

/// A finite group by multiplication table; element `0` is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FinGroup {
    pub fn trivial() -> Self {
        Self { order: 1, table: vec![0], inverses: vec![0] }
    }

    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let table = (0..k * k).map(|i| (i / k + i % k) % k).collect();
        let inverses = (0..k).map(|a| (k - a) % k).collect();
        Self { order: k, table, inverses }
    }

    /// Checks unit, associativity and inverses.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidCategory(format!("group table: {m}")));
        if order == 0 || table.len() != order * order || table.iter().any(|&v| v >= order) {
            return bad("wrong size or range");
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        if (0..order).any(|a| mul(0, a) != a || mul(a, 0) != a) {
            return bad("0 is not a unit");
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return bad("not associative");
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| mul(a, b) == 0 && mul(b, a) == 0) {
                Some(b) => inverses.push(b),
                None => return bad("missing inverse"),
            }
        }
        Ok(Self { order, table, inverses })
    }

    pub(crate) fn from_table_unchecked(order: usize, table: Vec<usize>) -> Self {
        let inverses = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap()).collect();
        Self { order, table, inverses }
    }

    pub fn product(g: &FinGroup, h: &FinGroup) -> Self {
        let order = g.order * h.order;
        let table = (0..order * order)
            .map(|i| {
                let (x, y) = (i / order, i % order);
                g.mul(x / h.order, y / h.order) * h.order + h.mul(x % h.order, y % h.order)
            })
            .collect();
        let inverses = (0..order).map(|x| g.inverse(x / h.order) * h.order + h.inverse(x % h.order)).collect();
        Self { order, table, inverses }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_homomorphism(&self, target: &FinGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&v| v < target.order)
            && (0..self.order)
                .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

/// A morphism `source -> target` with group coordinate `elem`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub elem: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub base: usize,
    pub members: Vec<usize>,
    pub group: Arc<FinGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroupoid {
    component_of: Vec<usize>,
    components: Vec<Component>,
}

impl FinGroupoid {
    /// Components are given as member lists (the first member is the base).
    pub fn from_components(object_count: usize, components: Vec<(Vec<usize>, Arc<FinGroup>)>) -> Result<Self> {
        let mut component_of = vec![usize::MAX; object_count];
        let mut comps = Vec::with_capacity(components.len());
        for (c, (members, group)) in components.into_iter().enumerate() {
            let Some(&base) = members.first() else {
                return Err(Error::InvalidCategory("empty component".into()));
            };
            for &x in &members {
                if x >= object_count || component_of[x] != usize::MAX {
                    return Err(Error::InvalidCategory(format!("object {x} misplaced in components")));
                }
                component_of[x] = c;
            }
            comps.push(Component { base, members, group });
        }
        if let Some(x) = component_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidCategory(format!("object {x} lies in no component")));
        }
        Ok(Self { component_of, components: comps })
    }

    pub fn discrete(n: usize) -> Self {
        let trivial = Arc::new(FinGroup::trivial());
        Self {
            component_of: (0..n).collect(),
            components: (0..n).map(|x| Component { base: x, members: vec![x], group: trivial.clone() }).collect(),
        }
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn object_count(&self) -> usize {
        self.component_of.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Component {
        &self.components[c]
    }

    pub fn component_of(&self, x: usize) -> usize {
        self.component_of[x]
    }

    pub fn group_of(&self, x: usize) -> &FinGroup {
        &self.components[self.component_of[x]].group
    }

    pub fn is_discrete(&self) -> bool {
        self.components.iter().all(|c| c.members.len() == 1 && c.group.order() == 1)
    }

    pub fn morphism_count(&self) -> usize {
        self.components.iter().map(|c| c.members.len() * c.members.len() * c.group.order()).sum()
    }

    pub fn are_isomorphic(&self, x: usize, y: usize) -> bool {
        self.component_of[x] == self.component_of[y]
    }

    pub fn identity(&self, x: usize) -> Arrow {
        Arrow { source: x, target: x, elem: 0 }
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<Arrow> {
        if !self.are_isomorphic(x, y) {
            return Vec::new();
        }
        (0..self.group_of(x).order()).map(|elem| Arrow { source: x, target: y, elem }).collect()
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: Arrow, f: Arrow) -> Option<Arrow> {
        (f.target == g.source).then(|| Arrow {
            source: f.source,
            target: g.target,
            elem: self.group_of(f.source).mul(g.elem, f.elem),
        })
    }

    pub fn inverse(&self, f: Arrow) -> Arrow {
        Arrow { source: f.target, target: f.source, elem: self.group_of(f.source).inverse(f.elem) }
    }

    /// Cartesian product; the pair `(a, b)` has index `a * |B| + b`.
    pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> FinGroupoid {
        let nb = b.object_count();
        let mut components = Vec::with_capacity(a.component_count() * b.component_count());
        for ca in &a.components {
            for cb in &b.components {
                let members = ca.members.iter().flat_map(|&x| cb.members.iter().map(move |&y| x * nb + y)).collect();
                let group = if ca.group.order() == 1 {
                    cb.group.clone()
                } else if cb.group.order() == 1 {
                    ca.group.clone()
                } else {
                    Arc::new(FinGroup::product(&ca.group, &cb.group))
                };
                components.push((members, group));
            }
        }
        FinGroupoid::from_components(a.object_count() * nb, components).expect("product components")
    }

    /// The arrow `(α, β)` of `A × B` (this groupoid being the product).
    pub fn product_arrow(_a: &FinGroupoid, b: &FinGroupoid, alpha: Arrow, beta: Arrow) -> Arrow {
        let nb = b.object_count();
        let ob = b.group_of(beta.source).order();
        Arrow { source: alpha.source * nb + beta.source, target: alpha.target * nb + beta.target, elem: alpha.elem * ob + beta.elem }
    }

    /// Inverse of [`FinGroupoid::product_arrow`].
    pub fn split_product_arrow(a: &FinGroupoid, b: &FinGroupoid, f: Arrow) -> (Arrow, Arrow) {
        let _ = a;
        let nb = b.object_count();
        let ob = b.group_of(f.source % nb).order();
        (
            Arrow { source: f.source / nb, target: f.target / nb, elem: f.elem / ob },
            Arrow { source: f.source % nb, target: f.target % nb, elem: f.elem % ob },
        )
    }

    /// The full subgroupoid on a union of components, with its inclusion.
    pub fn full_on_components(self: &Arc<Self>, comps: &[usize]) -> (Arc<FinGroupoid>, GroupoidFunctor) {
        let mut objects: Vec<usize> = comps.iter().flat_map(|&c| self.components[c].members.iter().copied()).collect();
        objects.sort_unstable();
        let mut new_index = vec![usize::MAX; self.object_count()];
        for (i, &x) in objects.iter().enumerate() {
            new_index[x] = i;
        }
        let mut sorted = comps.to_vec();
        sorted.sort_unstable_by_key(|&c| self.components[c].base);
        let sub = Arc::new(
            FinGroupoid::from_components(
                objects.len(),
                sorted
                    .iter()
                    .map(|&c| {
                        let comp = &self.components[c];
                        (comp.members.iter().map(|&x| new_index[x]).collect(), comp.group.clone())
                    })
                    .collect(),
            )
            .expect("subgroupoid components"),
        );
        let frame = objects.iter().map(|_| 0).collect();
        let rho = sorted.iter().map(|&c| (0..self.components[c].group.order()).collect()).collect();
        let inclusion = GroupoidFunctor::from_parts(sub.clone(), self.clone(), objects, frame, rho);
        (sub, inclusion)
    }

    /// The groupoid as a finite category: identities first, then the
    /// remaining arrows in `(source, target, elem)` order.
    pub fn to_category(&self) -> (FinCategory, Vec<Arrow>) {
        let mut b = CategoryBuilder::new((0..self.object_count()).map(|x| x.to_string()));
        let mut arrows: Vec<Arrow> = (0..self.object_count()).map(|x| self.identity(x)).collect();
        for x in 0..self.object_count() {
            for c in &self.components[self.component_of[x]].members {
                for f in self.hom(x, *c) {
                    if f != self.identity(x) {
                        b.add_morphism(format!("{x}->{}#{}", f.target, f.elem), x, f.target);
                        arrows.push(f);
                    }
                }
            }
        }
        let index: std::collections::HashMap<Arrow, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        for (i, &g) in arrows.iter().enumerate() {
            for (j, &f) in arrows.iter().enumerate() {
                if let Some(h) = self.compose(g, f) {
                    b.set_composite(i, j, index[&h]);
                }
            }
        }
        (b.build().expect("groupoid as category"), arrows)
    }
}

/// A functor between framed groupoids: `(x, y, g) ↦ (F x, F y, b_y · ρ(g) · b_x⁻¹)`
/// with `b_base = 1` in every source component, so equal functors have
/// equal data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub source: Arc<FinGroupoid>,
    pub target: Arc<FinGroupoid>,
    obj: Vec<usize>,
    frame: Vec<usize>,
    rho: Vec<Vec<usize>>,
}

impl GroupoidFunctor {
    pub(crate) fn from_parts(
        source: Arc<FinGroupoid>,
        target: Arc<FinGroupoid>,
        obj: Vec<usize>,
        frame: Vec<usize>,
        rho: Vec<Vec<usize>>,
    ) -> Self {
        let mut f = Self { source, target, obj, frame, rho };
        f.normalize();
        f
    }

    /// Validated constructor from object images, frame coordinates and
    /// per-component homomorphisms.
    pub fn new(
        source: Arc<FinGroupoid>,
        target: Arc<FinGroupoid>,
        obj: Vec<usize>,
        frame: Vec<usize>,
        rho: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if obj.len() != source.object_count() || frame.len() != obj.len() || rho.len() != source.component_count() {
            return bad("data does not match the source shape".into());
        }
        for (c, comp) in source.components.iter().enumerate() {
            let tc = target.component_of(obj[comp.base]);
            let tgroup = &target.components[tc].group;
            for &x in &comp.members {
                if obj[x] >= target.object_count() || target.component_of(obj[x]) != tc {
                    return bad(format!("object {x} leaves the image component of its component"));
                }
                if frame[x] >= tgroup.order() {
                    return bad(format!("frame of {x} out of range"));
                }
            }
            if !comp.group.is_homomorphism(tgroup, &rho[c]) {
                return bad(format!("component {c}: automorphism map is not a homomorphism"));
            }
        }
        Ok(Self::from_parts(source, target, obj, frame, rho))
    }

    fn normalize(&mut self) {
        for (c, comp) in self.source.components.iter().enumerate() {
            let b0 = self.frame[comp.base];
            if b0 == 0 {
                continue;
            }
            let g = self.target.group_of(self.obj[comp.base]).clone();
            let b0_inv = g.inverse(b0);
            for &x in &comp.members {
                self.frame[x] = g.mul(self.frame[x], b0_inv);
            }
            for v in self.rho[c].iter_mut() {
                *v = g.mul(g.mul(b0, *v), b0_inv);
            }
        }
    }

    pub fn identity(g: &Arc<FinGroupoid>) -> Self {
        Self {
            source: g.clone(),
            target: g.clone(),
            obj: (0..g.object_count()).collect(),
            frame: vec![0; g.object_count()],
            rho: g.components.iter().map(|c| (0..c.group.order()).collect()).collect(),
        }
    }

    /// The functor out of a discrete groupoid induced by a function on objects.
    pub fn discrete(source: Arc<FinGroupoid>, target: Arc<FinGroupoid>, obj: Vec<usize>) -> Self {
        debug_assert!(source.is_discrete());
        let frame = vec![0; obj.len()];
        let rho = vec![vec![0]; obj.len()];
        Self { source, target, obj, frame, rho }
    }

    pub fn object(&self, x: usize) -> usize {
        self.obj[x]
    }

    pub fn objects(&self) -> &[usize] {
        &self.obj
    }

    pub fn frame(&self, x: usize) -> usize {
        self.frame[x]
    }

    /// The automorphism-group homomorphism of source component `c`.
    pub fn rho(&self, c: usize) -> &[usize] {
        &self.rho[c]
    }

    pub fn apply(&self, f: Arrow) -> Arrow {
        let c = self.source.component_of(f.source);
        let g = self.target.group_of(self.obj[f.source]);
        let elem = g.mul(g.mul(self.frame[f.target], self.rho[c][f.elem]), g.inverse(self.frame[f.source]));
        Arrow { source: self.obj[f.source], target: self.obj[f.target], elem }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if self.target != other.source {
            return Err(Error::InvalidFunctor("composite of non-composable functors".into()));
        }
        let obj = self.obj.iter().map(|&y| other.obj[y]).collect();
        let frame = (0..self.obj.len())
            .map(|x| {
                let y = self.obj[x];
                let g = other.target.group_of(other.obj[y]);
                let cy = other.source.component_of(y);
                g.mul(other.frame[y], other.rho[cy][self.frame[x]])
            })
            .collect();
        let rho = self
            .source
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let cy = other.source.component_of(self.obj[comp.base]);
                self.rho[c].iter().map(|&v| other.rho[cy][v]).collect()
            })
            .collect();
        Ok(Self::from_parts(self.source.clone(), other.target.clone(), obj, frame, rho))
    }

    /// The constant functor at `y`.
    pub fn constant(source: Arc<FinGroupoid>, target: Arc<FinGroupoid>, y: usize) -> Self {
        let n = source.object_count();
        let rho = source.components.iter().map(|c| vec![0; c.group.order()]).collect();
        Self { source, target, obj: vec![y; n], frame: vec![0; n], rho }
    }

    /// Projection `A × B -> A` (`first`) or `A × B -> B`.
    pub fn projection(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>, product: Arc<FinGroupoid>, first: bool) -> Self {
        let nb = b.object_count();
        let obj = (0..product.object_count()).map(|p| if first { p / nb } else { p % nb }).collect();
        let rho = product
            .components
            .iter()
            .map(|comp| {
                let ob = b.group_of(comp.base % nb).order();
                (0..comp.group.order()).map(|e| if first { e / ob } else { e % ob }).collect()
            })
            .collect();
        let frame = vec![0; product.object_count()];
        Self::from_parts(product, if first { a.clone() } else { b.clone() }, obj, frame, rho)
    }

    /// `F × G: A × B -> A' × B'`.
    pub fn product(
        f: &GroupoidFunctor,
        g: &GroupoidFunctor,
        source: Arc<FinGroupoid>,
        target: Arc<FinGroupoid>,
    ) -> Result<GroupoidFunctor> {
        let p1 = Self::projection(&f.source, &g.source, source.clone(), true);
        let p2 = Self::projection(&f.source, &g.source, source, false);
        Self::pair(&p1.then(f)?, &p2.then(g)?, target)
    }

    /// `(F, G): X -> A × B`.
    pub fn pair(f: &GroupoidFunctor, g: &GroupoidFunctor, product: Arc<FinGroupoid>) -> Result<GroupoidFunctor> {
        if f.source != g.source {
            return Err(Error::InvalidFunctor("pairing functors with different sources".into()));
        }
        let nb = g.target.object_count();
        let obj: Vec<usize> = (0..f.obj.len()).map(|x| f.obj[x] * nb + g.obj[x]).collect();
        let tg = |x: usize| g.target.group_of(g.obj[x]).order();
        let frame = (0..f.obj.len()).map(|x| f.frame[x] * tg(x) + g.frame[x]).collect();
        let rho = f
            .source
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let o = tg(comp.base);
                (0..comp.group.order()).map(|e| f.rho[c][e] * o + g.rho[c][e]).collect()
            })
            .collect();
        GroupoidFunctor::new(f.source.clone(), product, obj, frame, rho)
    }
}
