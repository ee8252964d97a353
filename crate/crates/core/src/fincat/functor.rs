use serde::Serialize;

use super::category::{CategoryBuilder, FinCategory};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub source: FinCategory,
    pub target: FinCategory,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl FinFunctor {
    /// Builds and validates a functor.
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        let f = Self { source, target, object_map, morphism_map };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(cat: &FinCategory) -> Self {
        Self {
            source: cat.clone(),
            target: cat.clone(),
            object_map: cat.objects().collect(),
            morphism_map: cat.morphisms().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if self.object_map.len() != c.object_count() || self.morphism_map.len() != c.morphism_count() {
            return Err(Error::InvalidFunctor("map sizes do not match the source".into()));
        }
        if self.object_map.iter().any(|&y| y >= d.object_count())
            || self.morphism_map.iter().any(|&g| g >= d.morphism_count())
        {
            return Err(Error::InvalidFunctor("map lands outside the target".into()));
        }
        for f in c.morphisms() {
            let g = self.morphism_map[f];
            if d.source(g) != self.object_map[c.source(f)] || d.target(g) != self.object_map[c.target(f)] {
                return Err(Error::InvalidFunctor(format!(
                    "{} is not sent to a morphism between the images of its endpoints",
                    c.morphism_name(f)
                )));
            }
        }
        for x in c.objects() {
            if self.morphism_map[c.identity(x)] != d.identity(self.object_map[x]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of {} not preserved",
                    c.object_name(x)
                )));
            }
        }
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(gf) = c.compose(g, f) {
                    let lhs = self.morphism_map[gf];
                    let rhs = d.compose(self.morphism_map[g], self.morphism_map[f]);
                    if rhs != Some(lhs) {
                        return Err(Error::InvalidFunctor(format!(
                            "composite {} ∘ {} not preserved",
                            c.morphism_name(g),
                            c.morphism_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if other.source != self.target {
            return Err(Error::InvalidFunctor("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map: self.object_map.iter().map(|&y| other.object_map[y]).collect(),
            morphism_map: self.morphism_map.iter().map(|&g| other.morphism_map[g]).collect(),
        })
    }
}

/// Outcome of [`is_equivalence`] with the first counterexample for each failed property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub essentially_surjective: bool,
    pub full: bool,
    pub faithful: bool,
    pub witnesses: Vec<String>,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.essentially_surjective && self.full && self.faithful
    }
}

/// Brute-force equivalence check by exhaustive hom-set comparison.
pub fn is_equivalence(f: &FinFunctor) -> EquivalenceReport {
    let (c, d) = (&f.source, &f.target);
    let mut witnesses = Vec::new();

    let mut essentially_surjective = true;
    for y in d.objects() {
        let hit = c.objects().any(|x| !d.isos(f.object_map[x], y).is_empty());
        if !hit {
            essentially_surjective = false;
            witnesses.push(format!("object {} is not isomorphic to any image", d.object_name(y)));
            break;
        }
    }

    let (mut full, mut faithful) = (true, true);
    'pairs: for x in c.objects() {
        for x2 in c.objects() {
            let src = c.hom(x, x2);
            let mut images: Vec<usize> = src.iter().map(|&m| f.morphism_map[m]).collect();
            let tgt = d.hom(f.object_map[x], f.object_map[x2]);
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            if faithful && images.len() != before {
                faithful = false;
                witnesses.push(format!(
                    "two morphisms {} -> {} have the same image",
                    c.object_name(x),
                    c.object_name(x2)
                ));
            }
            if full && images.len() != tgt.len() {
                full = false;
                witnesses.push(format!(
                    "hom({}, {}) misses part of hom({}, {})",
                    c.object_name(x),
                    c.object_name(x2),
                    d.object_name(f.object_map[x]),
                    d.object_name(f.object_map[x2])
                ));
            }
            if !full && !faithful {
                break 'pairs;
            }
        }
    }
    EquivalenceReport { essentially_surjective, full, faithful, witnesses }
}

/// Full subcategory on `objects` (in the given order) with its inclusion functor.
pub fn full_subcategory(cat: &FinCategory, objects: &[usize]) -> Result<FinFunctor> {
    let mut pos = vec![usize::MAX; cat.object_count()];
    for (i, &x) in objects.iter().enumerate() {
        pos[x] = i;
    }
    let mut b = CategoryBuilder::new(objects.iter().map(|&x| cat.object_name(x).to_string()));
    let mut morphism_map: Vec<usize> = objects.iter().map(|&x| cat.identity(x)).collect();
    let mut local = vec![usize::MAX; cat.morphism_count()];
    for (i, &x) in objects.iter().enumerate() {
        local[cat.identity(x)] = i;
    }
    for f in cat.morphisms() {
        if cat.is_identity(f) {
            continue;
        }
        let (s, t) = (pos[cat.source(f)], pos[cat.target(f)]);
        if s != usize::MAX && t != usize::MAX {
            local[f] = b.add_morphism(cat.morphism_name(f), s, t);
            morphism_map.push(f);
        }
    }
    for &g in &morphism_map {
        for &f in &morphism_map {
            if let Some(h) = cat.compose(g, f) {
                b.set_composite(local[g], local[f], local[h]);
            }
        }
    }
    let sub = b.build()?;
    FinFunctor::new(sub, cat.clone(), objects.to_vec(), morphism_map)
}

/// Full subcategory on the least-index representative of each isomorphism class.
pub fn skeleton(cat: &FinCategory) -> Result<FinFunctor> {
    let classes = cat.iso_classes();
    let mut reps = Vec::new();
    for x in cat.objects() {
        if classes[x] == reps.len() {
            reps.push(x);
        }
    }
    full_subcategory(cat, &reps)
}

/// Exact isomorphism search by backtracking over objects and then morphisms.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Option<FinFunctor> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let n = c.object_count();
    let hom_c: Vec<Vec<usize>> = (0..n * n).map(|k| c.hom(k / n, k % n)).collect();
    let hom_d: Vec<Vec<usize>> = (0..n * n).map(|k| d.hom(k / n, k % n)).collect();
    let profile = |hom: &Vec<Vec<usize>>, x: usize| {
        let mut out: Vec<usize> = (0..n).map(|y| hom[x * n + y].len()).collect();
        out.sort_unstable();
        let mut inc: Vec<usize> = (0..n).map(|y| hom[y * n + x].len()).collect();
        inc.sort_unstable();
        (hom[x * n + x].len(), out, inc)
    };
    let prof_c: Vec<_> = (0..n).map(|x| profile(&hom_c, x)).collect();
    let prof_d: Vec<_> = (0..n).map(|x| profile(&hom_d, x)).collect();

    struct Search<'a> {
        c: &'a FinCategory,
        d: &'a FinCategory,
        n: usize,
        hom_c: &'a [Vec<usize>],
        hom_d: &'a [Vec<usize>],
        obj: Vec<usize>,
        used_obj: Vec<bool>,
        mor: Vec<usize>,
        used_mor: Vec<bool>,
        order: Vec<usize>,
    }

    impl Search<'_> {
        fn objects(&mut self, x: usize, prof_ok: &dyn Fn(usize, usize) -> bool) -> bool {
            if x == self.n {
                // identities are forced
                for y in 0..self.n {
                    self.mor[y] = self.obj[y];
                    self.used_mor[self.obj[y]] = true;
                }
                if self.morphisms(0) {
                    return true;
                }
                for y in 0..self.n {
                    self.mor[y] = usize::MAX;
                    self.used_mor[self.obj[y]] = false;
                }
                return false;
            }
            for y in 0..self.n {
                if self.used_obj[y] || !prof_ok(x, y) {
                    continue;
                }
                let consistent = (0..x).all(|x2| {
                    let y2 = self.obj[x2];
                    self.hom_c[x * self.n + x2].len() == self.hom_d[y * self.n + y2].len()
                        && self.hom_c[x2 * self.n + x].len() == self.hom_d[y2 * self.n + y].len()
                });
                if !consistent {
                    continue;
                }
                self.obj[x] = y;
                self.used_obj[y] = true;
                if self.objects(x + 1, prof_ok) {
                    return true;
                }
                self.used_obj[y] = false;
                self.obj[x] = usize::MAX;
            }
            false
        }

        fn morphisms(&mut self, k: usize) -> bool {
            if k == self.order.len() {
                return true;
            }
            let f = self.order[k];
            let (s, t) = (self.obj[self.c.source(f)], self.obj[self.c.target(f)]);
            let candidates = self.hom_d[s * self.n + t].clone();
            for g in candidates {
                if self.used_mor[g] || self.d.is_identity(g) {
                    continue;
                }
                self.mor[f] = g;
                if self.compatible(f) {
                    self.used_mor[g] = true;
                    if self.morphisms(k + 1) {
                        return true;
                    }
                    self.used_mor[g] = false;
                }
                self.mor[f] = usize::MAX;
            }
            false
        }

        fn compatible(&self, f: usize) -> bool {
            let c = self.c;
            for h in c.morphisms() {
                if self.mor[h] == usize::MAX {
                    continue;
                }
                for (g2, f2) in [(h, f), (f, h)] {
                    if let Some(gf) = c.compose(g2, f2) {
                        if self.mor[gf] != usize::MAX
                            && self.d.compose(self.mor[g2], self.mor[f2]) != Some(self.mor[gf])
                        {
                            return false;
                        }
                    }
                }
                // f may itself be a composite of assigned morphisms
                for h2 in c.morphisms() {
                    if self.mor[h2] == usize::MAX {
                        continue;
                    }
                    if c.compose(h, h2) == Some(f)
                        && self.d.compose(self.mor[h], self.mor[h2]) != Some(self.mor[f])
                    {
                        return false;
                    }
                }
            }
            true
        }
    }

    let order: Vec<usize> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
    let mut search = Search {
        c,
        d,
        n,
        hom_c: &hom_c,
        hom_d: &hom_d,
        obj: vec![usize::MAX; n],
        used_obj: vec![false; n],
        mor: vec![usize::MAX; c.morphism_count()],
        used_mor: vec![false; d.morphism_count()],
        order,
    };
    let prof_ok = |x: usize, y: usize| prof_c[x] == prof_d[y];
    if search.objects(0, &prof_ok) {
        FinFunctor::new(c.clone(), d.clone(), search.obj, search.mor).ok()
    } else {
        None
    }
}

/// Searches for an equivalence `c -> d` by matching skeleta up to isomorphism
/// and extending the skeletal isomorphism along chosen isomorphisms.
pub fn find_equivalence(c: &FinCategory, d: &FinCategory) -> Option<FinFunctor> {
    let skel_c = skeleton(c).ok()?;
    let skel_d = skeleton(d).ok()?;
    let iso = find_isomorphism(&skel_c.source, &skel_d.source)?;
    let classes = c.iso_classes();
    // representative (in skeleton indices) and chosen iso x -> rep for each object
    let mut rep_of = vec![0; c.object_count()];
    let mut to_rep = vec![0; c.object_count()];
    for x in c.objects() {
        let k = classes[x];
        let r = skel_c.object_map[k];
        rep_of[x] = k;
        to_rep[x] = *c.isos(x, r).first()?;
    }
    // skeleton morphism index of each morphism of c between representatives
    let mut skel_index = vec![usize::MAX; c.morphism_count()];
    for (i, &m) in skel_c.morphism_map.iter().enumerate() {
        skel_index[m] = i;
    }
    let object_map: Vec<usize> = c.objects().map(|x| skel_d.object_map[iso.object_map[rep_of[x]]]).collect();
    let mut morphism_map = Vec::with_capacity(c.morphism_count());
    for m in c.morphisms() {
        let (x, y) = (c.source(m), c.target(m));
        let inv_x = c.inverse(to_rep[x])?;
        let conj = c.compose(to_rep[y], c.compose(m, inv_x)?)?;
        let s = skel_index[conj];
        morphism_map.push(skel_d.morphism_map[iso.morphism_map[s]]);
    }
    FinFunctor::new(c.clone(), d.clone(), object_map, morphism_map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::construct::*;

    #[test]
    fn identity_is_equivalence() {
        let c = linear_order(2);
        let r = is_equivalence(&FinFunctor::identity(&c));
        assert!(r.is_equivalence());
    }

    #[test]
    fn contractible_to_terminal() {
        let j = walking_iso();
        let t = terminal();
        let f = FinFunctor::new(j.clone(), t, vec![0, 0], vec![0; j.morphism_count()]).unwrap();
        assert!(is_equivalence(&f).is_equivalence());
    }

    #[test]
    fn missing_object_not_essentially_surjective() {
        let one = discrete(1);
        let two = discrete(2);
        let f = FinFunctor::new(one, two, vec![0], vec![0]).unwrap();
        let r = is_equivalence(&f);
        assert!(!r.essentially_surjective);
        assert!(r.full && r.faithful);
    }

    #[test]
    fn functor_validation_catches_bad_composite() {
        let c = linear_order(2);
        // send 0->1 and 1->2 to identities but 0->2 to the non-identity arrow
        let d = linear_order(2);
        let mut mm: Vec<usize> = c.morphisms().collect();
        for f in c.morphisms() {
            if !c.is_identity(f) && !(c.source(f) == 0 && c.target(f) == 2) {
                mm[f] = usize::MAX;
            }
        }
        let mm = mm.into_iter().map(|g| if g == usize::MAX { 0 } else { g }).collect();
        assert!(FinFunctor::new(c, d, vec![0, 1, 2], mm).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let c = tw_cat(&linear_order(1)).category;
        let cospan = cospan();
        assert!(find_isomorphism(&c, &cospan).is_some());
        assert!(find_isomorphism(&c, &span()).is_none());
    }

    #[test]
    fn equivalence_search_across_sizes() {
        assert!(find_equivalence(&walking_iso(), &terminal()).is_some());
        assert!(find_equivalence(&terminal(), &walking_iso()).is_some());
        assert!(find_equivalence(&discrete(2), &terminal()).is_none());
    }
}
