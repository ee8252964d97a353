use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{op_space, segal_check, tw_space, GroupoidSimplicialSpace, SegalTower};
use crate::delta::{degeneracy, face, interval};
use crate::error::{Error, Result};
use crate::fincat::{is_equivalence, tw_cat, CategoryBuilder, EquivalenceReport, FinCategory, FinFunctor};
use crate::groupoid::{
    canonical_framing, groupoid_equivalence, pseudo_pullback, Arrow, FinGroupoid, GroupoidEquivalence,
    GroupoidFunctor, PseudoPullback,
};

/// The homotopy category of a Segal space.
#[derive(Clone)]
pub struct HoResult {
    pub category: FinCategory,
    /// The morphism each object of `G_1` represents.
    pub class_of: Vec<usize>,
    /// For each morphism, an object of `G_1` representing it.
    pub representative: Vec<usize>,
    fibres: Arc<MappingSpaces>,
    component_morphism: Vec<usize>,
}

impl std::fmt::Debug for HoResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HoResult")
            .field("category", &self.category)
            .field("class_of", &self.class_of)
            .field("representative", &self.representative)
            .finish()
    }
}

impl HoResult {
    /// The morphism represented by `f ∈ G_1` together with isomorphisms
    /// `a: d_1 f -> x` and `b: d_0 f -> y` in `G_0`.
    pub fn class(&self, f: usize, a: Arrow, b: Arrow) -> usize {
        self.component_morphism[self.fibres.component(f, a, b)]
    }

    /// The morphism represented by an arrow `u: x -> x'` of `G_0`.
    pub fn arrow_class(&self, u: Arrow) -> usize {
        let x = u.source;
        self.class(self.fibres.s0.object(x), self.fibres.g0.identity(x), u)
    }
}

fn require_segal(w: &GroupoidSimplicialSpace, n: usize) -> Result<()> {
    w.require(n)?;
    let report = segal_check(w, n)?;
    match report.first_failure() {
        Some(l) => Err(Error::NotSegal(format!(
            "Segal map at level {} is not an equivalence: {}",
            l.n,
            l.equivalence.witnesses.join("; ")
        ))),
        None => Ok(()),
    }
}

/// Morphisms of `Ho(W)` as components of the pseudo-fibres of
/// `(d_1, d_0): G_1 -> G_0 × G_0` over the discrete set of pairs.
struct MappingSpaces {
    g0: Arc<FinGroupoid>,
    d0: GroupoidFunctor,
    d1: GroupoidFunctor,
    s0: GroupoidFunctor,
    pp: PseudoPullback,
}

impl MappingSpaces {
    fn new(w: &GroupoidSimplicialSpace) -> Result<Self> {
        let g0 = w.level(0).clone();
        let n0 = g0.object_count();
        let d0 = w.act(&face(1, 0)?)?;
        let d1 = w.act(&face(1, 1)?)?;
        let pairs = Arc::new(FinGroupoid::product(&g0, &g0));
        let ends = GroupoidFunctor::pair(&d1, &d0, pairs.clone())?;
        let points = GroupoidFunctor::discrete(Arc::new(FinGroupoid::discrete(n0 * n0)), pairs, (0..n0 * n0).collect());
        let pp = pseudo_pullback(&ends, &points)?;
        let s0 = w.act(&degeneracy(0, 0)?)?;
        Ok(Self { g0, d0, d1, s0, pp })
    }

    fn n0(&self) -> usize {
        self.g0.object_count()
    }

    /// The pseudo-fibre object `(f, (x, y), (a, b))` with `a: d_1 f -> x`, `b: d_0 f -> y`.
    fn object(&self, f: usize, a: Arrow, b: Arrow) -> usize {
        let phi = FinGroupoid::product_arrow(&self.g0, &self.g0, a, b);
        self.pp.index_of(f, phi.target, phi.elem).expect("pseudo-fibre object")
    }

    fn component(&self, f: usize, a: Arrow, b: Arrow) -> usize {
        self.pp.groupoid().component_of(self.object(f, a, b))
    }

    fn tautological(&self, f: usize) -> usize {
        let (s, t) = (self.d1.object(f), self.d0.object(f));
        self.component(f, self.g0.identity(s), self.g0.identity(t))
    }

    /// `(f, a, b)` for a pseudo-fibre object.
    fn unpack(&self, p: usize) -> (usize, Arrow, Arrow) {
        let (f, _, _) = self.pp.object(p);
        let (a, b) = FinGroupoid::split_product_arrow(&self.g0, &self.g0, self.pp.phi(p));
        (f, a, b)
    }

    fn endpoints(&self, comp: usize) -> (usize, usize) {
        let base = self.pp.groupoid().component(comp).base;
        let pair = self.pp.object(base).1;
        (pair / self.n0(), pair % self.n0())
    }
}

/// Composes two pseudo-fibre objects through a Segal lift, searching `G_2`
/// in the given order.
fn compose_via_lift(
    w: &GroupoidSimplicialSpace,
    ms: &MappingSpaces,
    tower: &SegalTower,
    lifts: &HashMap<usize, Vec<usize>>,
    p1: usize,
    p2: usize,
    reversed: bool,
) -> Result<usize> {
    let g0 = &ms.g0;
    let (f, a, b) = ms.unpack(p1);
    let (g, c, d) = ms.unpack(p2);
    let theta = g0.compose(g0.inverse(c), b).expect("endpoints meet");
    let p2_pp = tower.pullback(2);
    let target = p2_pp.index_of(f, g, theta.elem).expect("composable pair");
    let comp = p2_pp.groupoid().component_of(target);
    let candidates = lifts
        .get(&comp)
        .ok_or_else(|| Error::NotSegal(format!("no 2-simplex lifts the composable pair ({f}, {g})")))?;
    let sigma = if reversed { *candidates.last().unwrap() } else { candidates[0] };
    let c2 = tower.comparison(2);
    let m = p2_pp.groupoid().hom(c2.object(sigma), target)[0];
    let (m01, m12) = p2_pp.framed.realize(m);
    let h = w.act(&face(2, 1)?)?.object(sigma);
    let a2 = g0.compose(a, ms.d1.apply(m01)).expect("source leg");
    let d2 = g0.compose(d, ms.d0.apply(m12)).expect("target leg");
    Ok(ms.component(h, a2, d2))
}

/// `Ho(W)`: objects of `G_0`, morphisms the components of the mapping
/// groupoids, composition through Segal lifts (checked independent of the
/// lift and of the representatives).
pub fn ho_category(w: &GroupoidSimplicialSpace) -> Result<HoResult> {
    require_segal(w, 3)?;
    let ms = MappingSpaces::new(w)?;
    let tower = SegalTower::build(w, 2)?;
    let n0 = ms.n0();
    let m = ms.pp.groupoid();

    // identities first, then the other components by index
    let s0 = ms.s0.clone();
    let mut morphism_of = vec![usize::MAX; m.component_count()];
    for x in 0..n0 {
        morphism_of[ms.tautological(s0.object(x))] = x;
    }
    let mut builder = CategoryBuilder::new((0..n0).map(|x| x.to_string()));
    let mut comps: Vec<usize> = (0..n0).map(|x| ms.tautological(s0.object(x))).collect();
    let mut names: HashMap<String, usize> = HashMap::new();
    for c in 0..m.component_count() {
        if morphism_of[c] != usize::MAX {
            continue;
        }
        let (x, y) = ms.endpoints(c);
        let f = ms.pp.object(m.component(c).base).0;
        let k = names.entry(format!("[{f}]")).or_insert(0);
        let name = if *k == 0 { format!("[{f}]") } else { format!("[{f}]'{k}") };
        *k += 1;
        morphism_of[c] = builder.add_morphism(name, x, y);
        comps.push(c);
    }

    let mut lifts: HashMap<usize, Vec<usize>> = HashMap::new();
    let c2 = tower.comparison(2);
    for sigma in 0..w.level(2).object_count() {
        lifts.entry(tower.pullback(2).groupoid().component_of(c2.object(sigma))).or_default().push(sigma);
    }
    for (i, &ci) in comps.iter().enumerate() {
        let (_, y) = ms.endpoints(ci);
        for (j, &cj) in comps.iter().enumerate() {
            if ms.endpoints(cj).0 != y {
                continue;
            }
            let (mi, mj) = (m.component(ci), m.component(cj));
            let first = compose_via_lift(w, &ms, &tower, &lifts, mi.base, mj.base, false)?;
            let second =
                compose_via_lift(w, &ms, &tower, &lifts, *mi.members.last().unwrap(), *mj.members.last().unwrap(), true)?;
            if first != second {
                return Err(Error::IllDefined(format!(
                    "composite of morphisms #{i} and #{j} depends on the chosen lift"
                )));
            }
            builder.set_composite(j, i, morphism_of[first]);
        }
    }
    let category = builder
        .build()
        .map_err(|e| Error::IllDefined(format!("homotopy category is not a category: {e}")))?;
    let class_of = (0..w.level(1).object_count()).map(|f| morphism_of[ms.tautological(f)]).collect();
    let representative = comps.iter().map(|&c| ms.pp.object(m.component(c).base).0).collect();
    Ok(HoResult { category, class_of, representative, fibres: Arc::new(ms), component_morphism: morphism_of })
}

/// `F_W: Ho(Tw W) -> Tw(Ho W)`, `[σ] ↦ ([d_1 σ], [d_2 d_2 σ], [d_0 d_0 σ])`.
#[derive(Clone, Debug)]
pub struct FwResult {
    pub functor: FinFunctor,
    pub report: EquivalenceReport,
    pub ho_tw: HoResult,
    pub ho: HoResult,
}

pub fn f_w_functor(w: &GroupoidSimplicialSpace) -> Result<FwResult> {
    w.require(7)?;
    let ho = ho_category(w)?;
    let tw = tw_space(w, 3)?;
    let ho_tw = ho_category(&tw)?;
    let twh = tw_cat(&ho.category);
    let left = w.act(&interval(3, 0, 1))?;
    let right = w.act(&interval(3, 2, 3))?;
    let ms = &ho_tw.fibres;
    let (wd0, wd1) = (w.act(&face(1, 0)?)?, w.act(&face(1, 1)?)?);
    let h_cat = &ho.category;
    let c = &ho.class_of;
    let inv = |m: usize| h_cat.inverse(m).expect("classes of isomorphisms are invertible");
    let comp = |g: usize, f: usize| h_cat.compose(g, f).expect("composable classes");

    let object_map: Vec<usize> = c.clone();
    let mut morphism_map = vec![usize::MAX; ho_tw.category.morphism_count()];
    for p in 0..ms.pp.groupoid().object_count() {
        let (sigma, a, b) = ms.unpack(p);
        let mor = ho_tw.component_morphism[ms.pp.groupoid().component_of(p)];
        // transport the legs along the isomorphisms a: d_1 σ -> x, b: d_0 σ -> y
        let (a_s, a_t) = (ho.arrow_class(wd1.apply(a)), ho.arrow_class(wd0.apply(a)));
        let (b_s, b_t) = (ho.arrow_class(wd1.apply(b)), ho.arrow_class(wd0.apply(b)));
        let k = comp(a_s, comp(c[left.object(sigma)], inv(b_s)));
        let h = comp(b_t, comp(c[right.object(sigma)], inv(a_t)));
        let image = twh
            .morphism(c[a.target], k, h)
            .ok_or_else(|| Error::IllDefined(format!("legs of {sigma} do not form a twisted morphism")))?;
        match morphism_map[mor] {
            usize::MAX => morphism_map[mor] = image,
            prev if prev != image => {
                return Err(Error::IllDefined(format!("F_W is not constant on the class of {sigma}")))
            }
            _ => {}
        }
    }
    let functor = FinFunctor::new(ho_tw.category.clone(), twh.category.clone(), object_map, morphism_map)?;
    let report = is_equivalence(&functor);
    Ok(FwResult { functor, report, ho_tw, ho })
}

/// The components of `G_1` made of homotopy equivalences.
#[derive(Clone, Debug)]
pub struct Hoequiv {
    pub groupoid: Arc<FinGroupoid>,
    pub inclusion: GroupoidFunctor,
    /// Membership per object of `G_1`.
    pub member: Vec<bool>,
}

pub fn hoequiv_from(w: &GroupoidSimplicialSpace, ho: &HoResult) -> Result<Hoequiv> {
    let g1 = w.level(1);
    let member: Vec<bool> = ho.class_of.iter().map(|&f| ho.category.is_iso(f)).collect();
    let mut comps = Vec::new();
    for (c, comp) in g1.components().iter().enumerate() {
        let inside = member[comp.base];
        if comp.members.iter().any(|&f| member[f] != inside) {
            return Err(Error::IllDefined(format!("homotopy equivalences are not closed under isomorphism at {}", comp.base)));
        }
        if inside {
            comps.push(c);
        }
    }
    let (groupoid, inclusion) = g1.full_on_components(&comps);
    Ok(Hoequiv { groupoid, inclusion, member })
}

pub fn hoequiv_subgroupoid(w: &GroupoidSimplicialSpace) -> Result<Hoequiv> {
    hoequiv_from(w, &ho_category(w)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub objects: usize,
    pub hoequiv_objects: usize,
    pub hoequiv_components: usize,
    pub equivalence: GroupoidEquivalence,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.equivalence.is_equivalence()
    }
}

/// Whether `s_0: G_0 -> hoequiv` is an equivalence of groupoids.
pub fn completeness_check(w: &GroupoidSimplicialSpace) -> Result<CompletenessReport> {
    let he = hoequiv_subgroupoid(w)?;
    let s0 = w.act(&degeneracy(0, 0)?)?;
    let mut index = vec![usize::MAX; w.level(1).object_count()];
    for (i, &f) in he.inclusion.objects().iter().enumerate() {
        index[f] = i;
    }
    for x in 0..w.level(0).object_count() {
        if index[s0.object(x)] == usize::MAX {
            return Err(Error::IllDefined(format!("the degenerate edge on {x} is not a homotopy equivalence")));
        }
    }
    let relabel = |a: Arrow| Arrow { source: index[a.source], target: index[a.target], elem: a.elem };
    let functor = canonical_framing(w.level(0)).functor_to(
        &canonical_framing(&he.groupoid),
        |x| index[s0.object(x)],
        |a| relabel(s0.apply(*a)),
    );
    Ok(CompletenessReport {
        objects: w.level(0).object_count(),
        hoequiv_objects: he.groupoid.object_count(),
        hoequiv_components: he.groupoid.component_count(),
        equivalence: groupoid_equivalence(&functor),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwHoequivReport {
    pub total: usize,
    /// Objects of `Tw(W)_1` that are homotopy equivalences of `Tw(W)`.
    pub direct: Vec<usize>,
    /// Objects of `G_3` over `hoequiv(W^op) × hoequiv(W)`.
    pub preimage: Vec<usize>,
    /// Objects where "σ is an equivalence iff both legs are" fails.
    pub leg_failures: Vec<usize>,
}

impl TwHoequivReport {
    pub fn passed(&self) -> bool {
        self.direct == self.preimage && self.leg_failures.is_empty()
    }
}

/// Computes the equivalences of `Tw(W)` directly and as a preimage.
pub fn tw_hoequiv_pullback_check(w: &GroupoidSimplicialSpace) -> Result<TwHoequivReport> {
    w.require(7)?;
    let tw = tw_space(w, 3)?;
    let direct = hoequiv_subgroupoid(&tw)?;
    let base = hoequiv_subgroupoid(w)?;
    let op = hoequiv_subgroupoid(&op_space(w))?;
    let left = w.act(&crate::delta::block_inclusion_left(1))?;
    let right = w.act(&crate::delta::block_inclusion_right(1))?;
    let total = w.level(3).object_count();
    let direct_set: Vec<usize> = (0..total).filter(|&s| direct.member[s]).collect();
    let preimage: Vec<usize> =
        (0..total).filter(|&s| op.member[left.object(s)] && base.member[right.object(s)]).collect();
    let k = w.act(&interval(3, 0, 1))?;
    let h = w.act(&interval(3, 2, 3))?;
    let leg_failures = (0..total)
        .filter(|&s| direct.member[s] != (base.member[k.object(s)] && base.member[h.object(s)]))
        .collect();
    Ok(TwHoequivReport { total, direct: direct_set, preimage, leg_failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{category_zoo, find_equivalence, find_isomorphism, linear_order, walking_iso};
    use crate::gss::{classifying_diagram, discrete_embedding, terminal_space};
    use crate::sset::{nerve, spine};

    #[test]
    fn ho_of_nerves_and_classifying_diagrams() {
        for (name, c) in category_zoo() {
            let ho = ho_category(&discrete_embedding(&nerve(&c, 3))).unwrap();
            assert!(find_isomorphism(&ho.category, &c).is_some(), "{name}");
            let ho = ho_category(&classifying_diagram(&c, 3)).unwrap();
            assert!(find_equivalence(&ho.category, &c).is_some(), "{name}");
        }
        let ho = ho_category(&terminal_space(3)).unwrap();
        assert_eq!((ho.category.object_count(), ho.category.morphism_count()), (1, 1));
    }

    #[test]
    fn ho_of_j() {
        let ho = ho_category(&classifying_diagram(&walking_iso(), 3)).unwrap();
        assert_eq!(ho.category.object_count(), 2);
        assert_eq!(ho.category.morphism_count(), 4);
        assert!(ho.category.is_groupoid());
    }

    #[test]
    fn non_segal_refused() {
        assert!(matches!(ho_category(&discrete_embedding(&spine(3))), Err(Error::NotSegal(_))));
    }

    #[test]
    fn hoequiv_examples() {
        let he = hoequiv_subgroupoid(&discrete_embedding(&nerve(&linear_order(1), 3))).unwrap();
        let chains = &crate::sset::Nerve::new(&linear_order(1), 1).chains[1];
        let oracle: Vec<bool> = chains.iter().map(|ch| ch.objects[0] == ch.objects[1]).collect();
        assert_eq!(he.member, oracle);
        assert_eq!(he.groupoid.object_count(), 2);
        let he = hoequiv_subgroupoid(&discrete_embedding(&nerve(&walking_iso(), 3))).unwrap();
        assert_eq!(he.groupoid.object_count(), 4);
        assert_eq!(he.groupoid.component_count(), 4);
    }

    #[test]
    fn completeness() {
        for (name, c) in category_zoo() {
            let r = completeness_check(&classifying_diagram(&c, 3)).unwrap();
            assert!(r.is_complete(), "{name}: {r:?}");
            let r = completeness_check(&discrete_embedding(&nerve(&c, 3))).unwrap();
            assert_eq!(r.is_complete(), c.is_gaunt(), "{name}");
        }
        let r = completeness_check(&discrete_embedding(&nerve(&walking_iso(), 3))).unwrap();
        assert!(!r.equivalence.essentially_surjective);
        assert!(completeness_check(&terminal_space(3)).unwrap().is_complete());
    }

    #[test]
    fn f_w_examples() {
        let r = f_w_functor(&discrete_embedding(&nerve(&linear_order(1), 7))).unwrap();
        assert!(r.report.is_equivalence());
        assert!(find_isomorphism(&r.ho_tw.category, &tw_cat(&linear_order(1)).category).is_some());
        let r = f_w_functor(&classifying_diagram(&walking_iso(), 7)).unwrap();
        assert!(r.report.is_equivalence(), "{:?}", r.report);
        let r = f_w_functor(&terminal_space(7)).unwrap();
        assert_eq!(r.functor.source.morphism_count(), 1);
    }

    #[test]
    fn tw_hoequiv_examples() {
        let r = tw_hoequiv_pullback_check(&discrete_embedding(&nerve(&linear_order(1), 7))).unwrap();
        assert!(r.passed());
        // 3-chains of [1] whose outer arrows are identities
        let s = nerve(&linear_order(1), 3);
        let oracle = (0..s.count(3))
            .filter(|&x| {
                let k = s.act(&interval(3, 0, 1), x).unwrap();
                let h = s.act(&interval(3, 2, 3), x).unwrap();
                !matches!(k, 1) && !matches!(h, 1)
            })
            .count();
        assert_eq!(r.direct.len(), oracle);
        let r = tw_hoequiv_pullback_check(&classifying_diagram(&walking_iso(), 7)).unwrap();
        assert!(r.passed());
        assert_eq!(r.direct.len(), r.total);
    }
}
