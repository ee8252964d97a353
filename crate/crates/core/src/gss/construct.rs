use std::sync::Arc;

use super::{GroupoidSimplicialSpace, GssMap};
use crate::delta::{block_inclusion_left, block_inclusion_right, op_map, q_map};
use crate::error::{Error, Result};
use crate::fincat::{Chain, FinCategory};
use crate::groupoid::{ExplicitGroupoid, FinGroupoid, Framed, GroupoidFunctor};
use crate::sset::{FinSimplicialSet, Nerve};

/// Each level is the discrete groupoid on the cells of `s`.
pub fn discrete_embedding(s: &FinSimplicialSet) -> GroupoidSimplicialSpace {
    let levels: Vec<Arc<FinGroupoid>> =
        (0..=s.trunc()).map(|n| Arc::new(FinGroupoid::discrete(s.count(n)))).collect();
    GroupoidSimplicialSpace::from_generators(levels.clone(), |alpha| {
        GroupoidFunctor::discrete(
            levels[alpha.cod()].clone(),
            levels[alpha.dom()].clone(),
            s.act_table(alpha).unwrap(),
        )
    })
}

pub fn terminal_space(trunc: usize) -> GroupoidSimplicialSpace {
    discrete_embedding(&crate::sset::standard_simplex(0, trunc))
}

/// Functors `[n] -> C` and natural isomorphisms, in explicit form.
struct ClassifyingLevel<'a> {
    cat: &'a FinCategory,
    chains: &'a [Chain],
    iso_class: &'a [usize],
    isos: &'a [Vec<usize>],
}

impl ClassifyingLevel<'_> {
    fn isos(&self, x: usize, y: usize) -> &[usize] {
        &self.isos[x * self.cat.object_count() + y]
    }
}

impl ExplicitGroupoid for ClassifyingLevel<'_> {
    type Mor = Vec<usize>;

    fn object_count(&self) -> usize {
        self.chains.len()
    }

    fn bucket(&self, x: usize) -> Vec<usize> {
        self.chains[x].objects.iter().map(|&o| self.iso_class[o]).collect()
    }

    fn hom(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let (cx, cy) = (&self.chains[x], &self.chains[y]);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(cx.objects.len());
        fn extend(me: &ClassifyingLevel, cx: &Chain, cy: &Chain, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let i = cur.len();
            if i == cx.objects.len() {
                out.push(cur.clone());
                return;
            }
            for &u in me.isos(cx.objects[i], cy.objects[i]) {
                if i > 0 {
                    // naturality: u_i ∘ f_i = g_i ∘ u_{i-1}
                    let lhs = me.cat.compose(u, cx.arrows[i - 1]);
                    let rhs = me.cat.compose(cy.arrows[i - 1], cur[i - 1]);
                    if lhs != rhs {
                        continue;
                    }
                }
                cur.push(u);
                extend(me, cx, cy, cur, out);
                cur.pop();
            }
        }
        extend(self, cx, cy, &mut cur, &mut out);
        out
    }

    fn compose(&self, g: &Vec<usize>, f: &Vec<usize>) -> Vec<usize> {
        g.iter().zip(f).map(|(&a, &b)| self.cat.compose(a, b).expect("composable components")).collect()
    }

    fn inverse(&self, f: &Vec<usize>) -> Vec<usize> {
        f.iter().map(|&a| self.cat.inverse(a).expect("components are isomorphisms")).collect()
    }

    fn identity(&self, x: usize) -> Vec<usize> {
        self.chains[x].objects.iter().map(|&o| self.cat.identity(o)).collect()
    }
}

/// The classifying diagram: `G_n` is the groupoid of functors `[n] -> C`
/// and natural isomorphisms, with operators acting by precomposition.
pub fn classifying_diagram(cat: &FinCategory, trunc: usize) -> GroupoidSimplicialSpace {
    let nerve = Nerve::new(cat, trunc);
    let iso_class = cat.iso_classes();
    let n_obj = cat.object_count();
    let isos: Vec<Vec<usize>> = (0..n_obj * n_obj).map(|k| cat.isos(k / n_obj, k % n_obj)).collect();
    let framed: Vec<Framed<ClassifyingLevel>> = nerve
        .chains
        .iter()
        .map(|chains| Framed::new(ClassifyingLevel { cat, chains, iso_class: &iso_class, isos: &isos }))
        .collect();
    let levels = framed.iter().map(|f| f.groupoid.clone()).collect();
    GroupoidSimplicialSpace::from_generators(levels, |alpha| {
        let (src, dst) = (&framed[alpha.cod()], &framed[alpha.dom()]);
        src.functor_to(
            dst,
            |x| nerve.index_of(&nerve.chains[alpha.cod()][x].act(cat, alpha)).unwrap(),
            |u| alpha.values().iter().map(|&v| u[v]).collect(),
        )
    })
}

pub fn truncate(w: &GroupoidSimplicialSpace, trunc: usize) -> Result<GroupoidSimplicialSpace> {
    w.require(trunc)?;
    Ok(GroupoidSimplicialSpace::from_generators(w.levels()[..=trunc].to_vec(), |alpha| w.act(alpha).unwrap()))
}

/// Largest output truncation `tw_space` can produce from `w`, if any.
pub fn tw_trunc(w: &GroupoidSimplicialSpace) -> Option<usize> {
    (w.trunc() >= 1).then(|| (w.trunc() - 1) / 2)
}

/// `Tw(W)_n = G_{2n+1}` with `α` acting through `Q(α)`.
pub fn tw_space(w: &GroupoidSimplicialSpace, trunc: usize) -> Result<GroupoidSimplicialSpace> {
    w.require(2 * trunc + 1)?;
    let levels = (0..=trunc).map(|n| w.level(2 * n + 1).clone()).collect();
    Ok(GroupoidSimplicialSpace::from_generators(levels, |alpha| w.act(&q_map(alpha)).unwrap()))
}

pub fn op_space(w: &GroupoidSimplicialSpace) -> GroupoidSimplicialSpace {
    GroupoidSimplicialSpace::from_generators(w.levels().to_vec(), |alpha| w.act(&op_map(alpha)).unwrap())
}

pub fn product_space(v: &GroupoidSimplicialSpace, w: &GroupoidSimplicialSpace) -> Result<GroupoidSimplicialSpace> {
    if v.trunc() != w.trunc() {
        return Err(Error::ShapeMismatch("product of spaces with different truncations".into()));
    }
    let levels: Vec<Arc<FinGroupoid>> =
        (0..=v.trunc()).map(|n| Arc::new(FinGroupoid::product(v.level(n), w.level(n)))).collect();
    Ok(GroupoidSimplicialSpace::from_generators(levels.clone(), |alpha| {
        GroupoidFunctor::product(
            &v.act(alpha).unwrap(),
            &w.act(alpha).unwrap(),
            levels[alpha.cod()].clone(),
            levels[alpha.dom()].clone(),
        )
        .unwrap()
    }))
}

/// `Tw(W) -> W^op × W`, `σ ↦ (W(left_n) σ, W(right_n) σ)`.
pub fn twisted_projection_space(w: &GroupoidSimplicialSpace, trunc: usize) -> Result<GssMap> {
    let tw = tw_space(w, trunc)?;
    let base = truncate(w, trunc)?;
    let target = product_space(&op_space(&base), &base)?;
    let components = (0..=trunc)
        .map(|n| {
            GroupoidFunctor::pair(
                &w.act(&block_inclusion_left(n))?,
                &w.act(&block_inclusion_right(n))?,
                target.level(n).clone(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GssMap { source: tw, target, components })
}

/// The projection `W × W -> W` onto the first factor.
pub fn first_projection(w: &GroupoidSimplicialSpace) -> Result<GssMap> {
    let prod = product_space(w, w)?;
    let components = (0..=w.trunc())
        .map(|n| GroupoidFunctor::projection(w.level(n), w.level(n), prod.level(n).clone(), true))
        .collect();
    Ok(GssMap { source: prod, target: w.clone(), components })
}

/// A Segal fixture with its provenance.
#[derive(Clone, Debug)]
pub struct SpaceFixture {
    pub name: String,
    pub category: FinCategory,
    pub space: GroupoidSimplicialSpace,
    /// Whether the space is complete (classifying diagrams always are;
    /// discrete nerves exactly for gaunt categories).
    pub complete: bool,
}

/// Classifying diagrams and discrete nerves of the category zoo.
pub fn segal_fixtures(trunc: usize) -> Vec<SpaceFixture> {
    let mut out = Vec::new();
    for (name, c) in crate::fincat::category_zoo() {
        out.push(SpaceFixture {
            name: format!("classifying({name})"),
            space: classifying_diagram(&c, trunc),
            complete: true,
            category: c.clone(),
        });
        out.push(SpaceFixture {
            name: format!("discrete-nerve({name})"),
            space: discrete_embedding(&crate::sset::nerve(&c, trunc)),
            complete: c.is_gaunt(),
            category: c,
        });
    }
    out
}
