//! Standard finite categories and constructions on them.

use std::collections::HashMap;

use super::category::{CategoryBuilder, FinCategory};
use super::functor::FinFunctor;
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

pub fn terminal() -> FinCategory {
    CategoryBuilder::new(["*"]).build().expect("terminal category")
}

pub fn discrete(n: usize) -> FinCategory {
    CategoryBuilder::new((0..n).map(|i| i.to_string())).build().expect("discrete category")
}

/// The poset on `0..n` generated by `relations` (pairs `a <= b`), closed
/// reflexively and transitively. Fails on cycles.
pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<FinCategory> {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(a, b) in relations {
        if a >= n || b >= n {
            return Err(Error::InvalidCategory(format!("relation ({a}, {b}) out of range")));
        }
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i * n + k] && leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i * n + j] && leq[j * n + i] {
                return Err(Error::InvalidCategory(format!("relations contain a cycle through {i} and {j}")));
            }
        }
    }
    let mut b = CategoryBuilder::new((0..n).map(|i| i.to_string()));
    let mut arrow = vec![usize::MAX; n * n];
    for i in 0..n {
        arrow[i * n + i] = i;
        for j in 0..n {
            if i != j && leq[i * n + j] {
                arrow[i * n + j] = b.add_morphism(format!("{i}->{j}"), i, j);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if leq[i * n + j] && leq[j * n + k] {
                    b.set_composite(arrow[j * n + k], arrow[i * n + j], arrow[i * n + k]);
                }
            }
        }
    }
    b.build()
}

/// The linear order `[n] = {0 < 1 < … < n}`.
pub fn linear_order(n: usize) -> FinCategory {
    let rel: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    poset(n + 1, &rel).expect("linear order")
}

/// `a <- o -> b` as the poset `o <= a`, `o <= b` (objects o, a, b).
pub fn span() -> FinCategory {
    poset(3, &[(0, 1), (0, 2)]).expect("span")
}

/// `a -> t <- b` as the poset `a <= t`, `b <= t` (objects a, b, t).
pub fn cospan() -> FinCategory {
    poset(3, &[(0, 2), (1, 2)]).expect("cospan")
}

/// The commutative square `[1] × [1]` as a 4-element poset.
pub fn square() -> FinCategory {
    poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("square")
}

/// The walking isomorphism `J`: two objects and a unique arrow between any two.
pub fn walking_iso() -> FinCategory {
    let mut b = CategoryBuilder::new(["0", "1"]);
    let f = b.add_morphism("f", 0, 1);
    let g = b.add_morphism("f^-1", 1, 0);
    b.set_composite(g, f, 0).set_composite(f, g, 1);
    b.build().expect("walking isomorphism")
}

/// The cyclic group of order `k` as a one-object category.
pub fn cyclic_group(k: usize) -> FinCategory {
    assert!(k >= 1);
    let mut b = CategoryBuilder::new(["*"]);
    let mut elems = vec![0];
    for i in 1..k {
        elems.push(b.add_morphism(format!("g{i}"), 0, 0));
    }
    for i in 0..k {
        for j in 0..k {
            b.set_composite(elems[i], elems[j], elems[(i + j) % k]);
        }
    }
    b.build().expect("cyclic group")
}

/// The two-element monoid `{1, e}` with `e ∘ e = e`.
pub fn idempotent_monoid() -> FinCategory {
    let mut b = CategoryBuilder::new(["*"]);
    let e = b.add_morphism("e", 0, 0);
    b.set_composite(e, e, e);
    b.build().expect("idempotent monoid")
}

/// Two objects and two parallel arrows `f, g: a -> b`.
pub fn parallel_pair() -> FinCategory {
    let mut b = CategoryBuilder::new(["a", "b"]);
    b.add_morphism("f", 0, 1);
    b.add_morphism("g", 0, 1);
    b.build().expect("parallel pair")
}

/// Named category fixtures used across tests and the command line.
pub fn category_zoo() -> Vec<(&'static str, FinCategory)> {
    vec![
        ("terminal", terminal()),
        ("discrete2", discrete(2)),
        ("[1]", linear_order(1)),
        ("[2]", linear_order(2)),
        ("[3]", linear_order(3)),
        ("span", span()),
        ("cospan", cospan()),
        ("square", square()),
        ("J", walking_iso()),
        ("Z/2", cyclic_group(2)),
        ("idempotent", idempotent_monoid()),
        ("parallel", parallel_pair()),
    ]
}

pub fn opposite(c: &FinCategory) -> FinCategory {
    let mut b = CategoryBuilder::new(c.object_names().iter().cloned());
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        b.add_morphism(c.morphism_name(f), c.target(f), c.source(f));
    }
    for g in c.morphisms() {
        for f in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                b.set_composite(f, g, h);
            }
        }
    }
    b.build().expect("opposite of a valid category")
}

/// `C × D` with index bookkeeping for pairs.
#[derive(Clone, Debug)]
pub struct ProductCategory {
    pub category: FinCategory,
    /// `pair_to_morphism[f * |Mor D| + g]`
    pub pair_to_morphism: Vec<usize>,
    pub morphism_to_pair: Vec<(usize, usize)>,
    right_objects: usize,
    right_morphisms: usize,
}

impl ProductCategory {
    pub fn object(&self, a: usize, b: usize) -> usize {
        a * self.right_objects + b
    }

    pub fn morphism(&self, f: usize, g: usize) -> usize {
        self.pair_to_morphism[f * self.right_morphisms + g]
    }
}

pub fn product(c: &FinCategory, d: &FinCategory) -> ProductCategory {
    let (nc, nd) = (c.object_count(), d.object_count());
    let (mc, md) = (c.morphism_count(), d.morphism_count());
    let names = (0..nc * nd).map(|k| format!("({},{})", c.object_name(k / nd), d.object_name(k % nd)));
    let mut b = CategoryBuilder::new(names);
    let mut pair_to_morphism = vec![usize::MAX; mc * md];
    let mut morphism_to_pair: Vec<(usize, usize)> = (0..nc * nd).map(|k| (k / nd, k % nd)).collect();
    for x in 0..nc {
        for y in 0..nd {
            pair_to_morphism[x * md + y] = x * nd + y;
        }
    }
    for f in 0..mc {
        for g in 0..md {
            if c.is_identity(f) && d.is_identity(g) {
                continue;
            }
            let s = c.source(f) * nd + d.source(g);
            let t = c.target(f) * nd + d.target(g);
            let idx = b.add_morphism(format!("({},{})", c.morphism_name(f), d.morphism_name(g)), s, t);
            pair_to_morphism[f * md + g] = idx;
            morphism_to_pair.push((f, g));
        }
    }
    for (i, &(f1, g1)) in morphism_to_pair.iter().enumerate() {
        for (j, &(f2, g2)) in morphism_to_pair.iter().enumerate() {
            if let (Some(f), Some(g)) = (c.compose(f1, f2), d.compose(g1, g2)) {
                b.set_composite(i, j, pair_to_morphism[f * md + g]);
            }
        }
    }
    ProductCategory {
        category: b.build().expect("product of valid categories"),
        pair_to_morphism,
        morphism_to_pair,
        right_objects: nd,
        right_morphisms: md,
    }
}

/// The twisted arrow category with its projection to `C^op × C`.
///
/// Objects are the morphisms of `C` (same indices). A morphism `g -> g'` is a
/// pair `(k, h)` with `g' = h ∘ g ∘ k`; it is stored as the triple `(g, k, h)`.
#[derive(Clone, Debug)]
pub struct TwistedArrowCategory {
    pub category: FinCategory,
    pub projection: FinFunctor,
    pub product: ProductCategory,
    pub triples: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl TwistedArrowCategory {
    pub fn morphism(&self, g: usize, k: usize, h: usize) -> Option<usize> {
        self.index.get(&(g, k, h)).copied()
    }
}

pub fn tw_cat(c: &FinCategory) -> TwistedArrowCategory {
    let mut b = CategoryBuilder::new(c.morphism_names().iter().cloned());
    let mut triples: Vec<(usize, usize, usize)> =
        c.morphisms().map(|g| (g, c.identity(c.source(g)), c.identity(c.target(g)))).collect();
    for g in c.morphisms() {
        for k in c.morphisms().filter(|&k| c.target(k) == c.source(g)) {
            for h in c.morphisms().filter(|&h| c.source(h) == c.target(g)) {
                if c.is_identity(k) && c.is_identity(h) {
                    continue;
                }
                let g2 = c.compose(h, c.compose(g, k).unwrap()).unwrap();
                b.add_morphism(
                    format!("({},{})@{}", c.morphism_name(k), c.morphism_name(h), c.morphism_name(g)),
                    g,
                    g2,
                );
                triples.push((g, k, h));
            }
        }
    }
    let index: HashMap<_, _> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let target_of = |&(g, k, h): &(usize, usize, usize)| c.compose(h, c.compose(g, k).unwrap()).unwrap();
    for (i, t1) in triples.iter().enumerate() {
        for (j, t2) in triples.iter().enumerate() {
            // t1 ∘ t2 when t2 ends where t1 starts
            if target_of(t2) != t1.0 {
                continue;
            }
            let (g, k2, h2) = *t2;
            let (_, k1, h1) = *t1;
            let k = c.compose(k2, k1).unwrap();
            let h = c.compose(h1, h2).unwrap();
            b.set_composite(i, j, index[&(g, k, h)]);
        }
    }
    let category = b.build().expect("twisted arrow category");
    let op = opposite(c);
    let prod = product(&op, c);
    let object_map = c.morphisms().map(|g| prod.object(c.source(g), c.target(g))).collect();
    let morphism_map = triples.iter().map(|&(_, k, h)| prod.morphism(k, h)).collect();
    let projection = FinFunctor::new(category.clone(), prod.category.clone(), object_map, morphism_map)
        .expect("twisted arrow projection is a functor");
    TwistedArrowCategory { category, projection, product: prod, triples, index }
}

/// The under-category `x/C`: objects are arrows out of `x`, morphisms the
/// commuting triangles. Also returns, for each object, the arrow of `C` it is.
pub fn under_category(c: &FinCategory, x: usize) -> Result<(FinCategory, Vec<usize>)> {
    if x >= c.object_count() {
        return Err(Error::UnknownObject(x));
    }
    let objects: Vec<usize> = c.morphisms().filter(|&f| c.source(f) == x).collect();
    let mut b = CategoryBuilder::new(objects.iter().map(|&f| c.morphism_name(f).to_string()));
    let mut data: Vec<(usize, usize)> = (0..objects.len()).map(|i| (i, c.identity(c.target(objects[i])))).collect();
    for (i, &f) in objects.iter().enumerate() {
        for h in c.morphisms().filter(|&h| c.source(h) == c.target(f) && !c.is_identity(h)) {
            let hf = c.compose(h, f).unwrap();
            let j = objects.iter().position(|&o| o == hf).unwrap();
            b.add_morphism(format!("{}@{}", c.morphism_name(h), c.morphism_name(f)), i, j);
            data.push((i, h));
        }
    }
    let index: HashMap<(usize, usize), usize> = data.iter().enumerate().map(|(k, &d)| (d, k)).collect();
    for (a, &(i1, h1)) in data.iter().enumerate() {
        for (bb, &(i2, h2)) in data.iter().enumerate() {
            let end2 = objects.iter().position(|&o| o == c.compose(h2, objects[i2]).unwrap()).unwrap();
            if end2 != i1 {
                continue;
            }
            let h = c.compose(h1, h2).unwrap();
            b.set_composite(a, bb, index[&(i2, h)]);
        }
    }
    Ok((b.build()?, objects))
}

/// Quotient of `c` by the equivalence relation generated by `pairs`, which
/// must relate parallel morphisms and be closed under composition.
pub fn quotient_by_congruence(c: &FinCategory, pairs: &[(usize, usize)]) -> Result<FinFunctor> {
    let n = c.morphism_count();
    let mut uf = UnionFind::new(n);
    for &(f, g) in pairs {
        if f >= n || g >= n {
            return Err(Error::IndexOutOfRange { index: f.max(g), bound: n });
        }
        if c.source(f) != c.source(g) || c.target(f) != c.target(g) {
            return Err(Error::NotCongruence(format!(
                "{} and {} are not parallel",
                c.morphism_name(f),
                c.morphism_name(g)
            )));
        }
        uf.union(f, g);
    }
    for f in 0..n {
        for f2 in 0..n {
            if f == f2 || uf.find(f) != uf.find(f2) {
                continue;
            }
            for h in 0..n {
                if let (Some(a), Some(b)) = (c.compose(h, f), c.compose(h, f2)) {
                    if uf.find(a) != uf.find(b) {
                        return Err(Error::NotCongruence(format!(
                            "{} ~ {} but {} ∘ {} ≁ {} ∘ {}",
                            c.morphism_name(f),
                            c.morphism_name(f2),
                            c.morphism_name(h),
                            c.morphism_name(f),
                            c.morphism_name(h),
                            c.morphism_name(f2)
                        )));
                    }
                }
                if let (Some(a), Some(b)) = (c.compose(f, h), c.compose(f2, h)) {
                    if uf.find(a) != uf.find(b) {
                        return Err(Error::NotCongruence(format!(
                            "{} ~ {} but {} ∘ {} ≁ {} ∘ {}",
                            c.morphism_name(f),
                            c.morphism_name(f2),
                            c.morphism_name(f),
                            c.morphism_name(h),
                            c.morphism_name(f2),
                            c.morphism_name(h)
                        )));
                    }
                }
            }
        }
    }
    let mut b = CategoryBuilder::new(c.object_names().iter().cloned());
    let mut class_index = vec![usize::MAX; n];
    for x in c.objects() {
        class_index[uf.find(x)] = x;
    }
    for f in 0..n {
        let r = uf.find(f);
        if class_index[r] == usize::MAX {
            class_index[r] = b.add_morphism(c.morphism_name(r), c.source(r), c.target(r));
        }
    }
    let morphism_map: Vec<usize> = (0..n).map(|f| class_index[uf.find(f)]).collect();
    for g in 0..n {
        for f in 0..n {
            if let Some(h) = c.compose(g, f) {
                b.set_composite(morphism_map[g], morphism_map[f], morphism_map[h]);
            }
        }
    }
    let q = b.build()?;
    FinFunctor::new(c.clone(), q, c.objects().collect(), morphism_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::functor::{find_isomorphism, is_equivalence};

    #[test]
    fn tw_of_terminal_is_terminal() {
        let t = tw_cat(&terminal());
        assert!(find_isomorphism(&t.category, &terminal()).is_some());
    }

    #[test]
    fn tw_objects_are_morphisms() {
        for (_, c) in category_zoo() {
            assert_eq!(tw_cat(&c).category.object_count(), c.morphism_count());
        }
    }

    #[test]
    fn tw_of_arrow_is_cospan() {
        let t = tw_cat(&linear_order(1));
        assert_eq!(t.category.object_count(), 3);
        assert_eq!(t.category.morphism_count(), 5);
        let arrow = 2; // the morphism 0->1
        for id in 0..2 {
            assert_eq!(t.category.hom(id, arrow).len(), 1);
            assert!(t.category.hom(arrow, id).is_empty());
        }
        assert!(find_isomorphism(&t.category, &cospan()).is_some());
    }

    #[test]
    fn under_category_examples() {
        let (u, objs) = under_category(&linear_order(1), 0).unwrap();
        assert_eq!(objs.len(), 2);
        assert!(find_isomorphism(&u, &linear_order(1)).is_some());
        let (u, _) = under_category(&terminal(), 0).unwrap();
        assert!(find_isomorphism(&u, &terminal()).is_some());
        assert_eq!(under_category(&terminal(), 3).unwrap_err(), Error::UnknownObject(3));
    }

    #[test]
    fn opposite_is_involution() {
        for (_, c) in category_zoo() {
            assert_eq!(opposite(&opposite(&c)), c);
        }
    }

    #[test]
    fn quotient_examples() {
        let p = parallel_pair();
        let q = quotient_by_congruence(&p, &[]).unwrap();
        assert!(is_equivalence(&q).is_equivalence());
        assert!(find_isomorphism(&q.target, &p).is_some());

        let (f, g) = (p.morphism_by_name("f").unwrap(), p.morphism_by_name("g").unwrap());
        let q = quotient_by_congruence(&p, &[(f, g)]).unwrap();
        assert_eq!(q.target.morphism_count(), 3);
        assert!(find_isomorphism(&q.target, &linear_order(1)).is_some());
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        // a -f,g-> b -h-> c with h∘f ≠ h∘g; identifying f ~ g alone is not closed
        let mut b = CategoryBuilder::new(["a", "b", "c"]);
        let f = b.add_morphism("f", 0, 1);
        let g = b.add_morphism("g", 0, 1);
        let h = b.add_morphism("h", 1, 2);
        let hf = b.add_morphism("hf", 0, 2);
        let hg = b.add_morphism("hg", 0, 2);
        b.set_composite(h, f, hf).set_composite(h, g, hg);
        let c = b.build().unwrap();
        let err = quotient_by_congruence(&c, &[(f, g)]).unwrap_err();
        assert!(matches!(err, Error::NotCongruence(ref w) if w.contains("h ∘ f")));
        assert!(quotient_by_congruence(&c, &[(f, g), (hf, hg)]).is_ok());
    }

    #[test]
    fn posets_give_thin_twisted_categories() {
        for n in 1..=4 {
            // every poset on n elements generated by a subset of the pairs i<j
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let rel: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
                let p = poset(n, &rel).unwrap();
                assert!(tw_cat(&p).category.is_thin());
            }
        }
    }
}
