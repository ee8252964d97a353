use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// A finite category with a dense composition table.
///
/// Object `x` has identity morphism `x`: identities always occupy the first
/// `object_count()` morphism indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    // composition[g * n + f] = g ∘ f
    composition: Vec<usize>,
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphism_names.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.object_count()
    }

    pub fn morphisms(&self) -> std::ops::Range<usize> {
        0..self.morphism_count()
    }

    pub fn source(&self, f: usize) -> usize {
        self.source[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.target[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        x
    }

    pub fn is_identity(&self, f: usize) -> bool {
        f < self.object_count()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.object_names[x]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphism_names[f]
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphism_names
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.object_names.iter().position(|n| n == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<usize> {
        self.morphism_names.iter().position(|n| n == name)
    }

    /// `g ∘ f`, or `None` when `target(f) != source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        match self.composition[g * self.morphism_count() + f] {
            NONE => None,
            h => Some(h),
        }
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.morphisms().filter(|&f| self.source[f] == x && self.target[f] == y).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.source[f], self.target[f]);
        self.hom(y, x)
            .into_iter()
            .find(|&g| self.compose(g, f) == Some(x) && self.compose(f, g) == Some(y))
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn isos(&self, x: usize, y: usize) -> Vec<usize> {
        self.hom(x, y).into_iter().filter(|&f| self.is_iso(f)).collect()
    }

    /// Isomorphism class index of every object, numbered by first occurrence.
    pub fn iso_classes(&self) -> Vec<usize> {
        let mut class = vec![NONE; self.object_count()];
        let mut next = 0;
        for x in self.objects() {
            if class[x] != NONE {
                continue;
            }
            for y in x..self.object_count() {
                if class[y] == NONE && !self.isos(x, y).is_empty() {
                    class[y] = next;
                }
            }
            next += 1;
        }
        class
    }

    /// True when every isomorphism is an identity.
    pub fn is_gaunt(&self) -> bool {
        self.morphisms().all(|f| self.is_identity(f) || !self.is_iso(f))
    }

    /// True when all hom-sets have at most one element.
    pub fn is_thin(&self) -> bool {
        let mut seen = HashSet::new();
        self.morphisms().all(|f| seen.insert((self.source[f], self.target[f])))
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|f| self.is_iso(f))
    }

    /// Checks associativity, units, and that composites exist exactly on
    /// composable pairs.
    pub fn validate(&self) -> Result<()> {
        let n = self.morphism_count();
        for x in self.objects() {
            if self.source[x] != x || self.target[x] != x {
                return Err(Error::InvalidCategory(format!(
                    "identity of {} has wrong endpoints",
                    self.object_names[x]
                )));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.target[f] == self.source[g];
                match (composable, self.compose(g, f)) {
                    (true, None) => {
                        return Err(Error::InvalidCategory(format!(
                            "missing composite {} ∘ {}",
                            self.morphism_names[g], self.morphism_names[f]
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(Error::InvalidCategory(format!(
                            "composite defined on non-composable pair {} ∘ {}",
                            self.morphism_names[g], self.morphism_names[f]
                        )))
                    }
                    (true, Some(h)) => {
                        if self.source[h] != self.source[f] || self.target[h] != self.target[g] {
                            return Err(Error::InvalidCategory(format!(
                                "composite {} ∘ {} has wrong endpoints",
                                self.morphism_names[g], self.morphism_names[f]
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            if self.compose(self.target[f], f) != Some(f) || self.compose(f, self.source[f]) != Some(f) {
                return Err(Error::InvalidCategory(format!(
                    "unit law fails at {}",
                    self.morphism_names[f]
                )));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..n {
                    let Some(hg) = self.compose(h, g) else { continue };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphism_names[h], self.morphism_names[g], self.morphism_names[f]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`FinCategory`].
///
/// Identities are created up front and named `id_<object>`; compositions
/// involving an identity are filled in automatically.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    composites: HashMap<(usize, usize), usize>,
}

impl CategoryBuilder {
    pub fn new<S: Into<String>>(objects: impl IntoIterator<Item = S>) -> Self {
        let object_names: Vec<String> = objects.into_iter().map(Into::into).collect();
        let morphism_names = object_names.iter().map(|o| format!("id_{o}")).collect();
        let n = object_names.len();
        Self {
            object_names,
            morphism_names,
            source: (0..n).collect(),
            target: (0..n).collect(),
            composites: HashMap::new(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        self.morphism_names.push(name.into());
        self.source.push(source);
        self.target.push(target);
        self.morphism_names.len() - 1
    }

    pub fn source(&self, f: usize) -> usize {
        self.source[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.target[f]
    }

    /// Declares `g ∘ f = h`.
    pub fn set_composite(&mut self, g: usize, f: usize, h: usize) -> &mut Self {
        self.composites.insert((g, f), h);
        self
    }

    pub fn build(self) -> Result<FinCategory> {
        let n = self.morphism_names.len();
        let n_obj = self.object_names.len();
        let mut seen = HashSet::new();
        for name in self.object_names.iter() {
            if !seen.insert(name) {
                return Err(Error::InvalidCategory(format!("duplicate object name {name}")));
            }
        }
        let mut seen = HashSet::new();
        for name in self.morphism_names.iter() {
            if !seen.insert(name) {
                return Err(Error::InvalidCategory(format!("duplicate morphism name {name}")));
            }
        }
        for f in 0..n {
            if self.source[f] >= n_obj || self.target[f] >= n_obj {
                return Err(Error::InvalidCategory(format!(
                    "morphism {} has an unknown endpoint",
                    self.morphism_names[f]
                )));
            }
        }
        let mut composition = vec![NONE; n * n];
        for f in 0..n {
            composition[self.target[f] * n + f] = f;
            composition[f * n + self.source[f]] = f;
        }
        for (&(g, f), &h) in &self.composites {
            if g >= n || f >= n || h >= n {
                return Err(Error::InvalidCategory("composite refers to unknown morphism".into()));
            }
            if self.target[f] != self.source[g] {
                return Err(Error::InvalidCategory(format!(
                    "composite declared for non-composable pair {} ∘ {}",
                    self.morphism_names[g], self.morphism_names[f]
                )));
            }
            let slot = &mut composition[g * n + f];
            if *slot != NONE && *slot != h {
                return Err(Error::InvalidCategory(format!(
                    "conflicting composite for {} ∘ {}",
                    self.morphism_names[g], self.morphism_names[f]
                )));
            }
            *slot = h;
        }
        let cat = FinCategory {
            object_names: self.object_names,
            morphism_names: self.morphism_names,
            source: self.source,
            target: self.target,
            composition,
        };
        cat.validate()?;
        Ok(cat)
    }
}

/// A functor `[k] -> C`: objects `c_0 … c_k` and arrows `c_{i-1} -> c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn length(&self) -> usize {
        self.arrows.len()
    }

    /// The composite arrow `c_a -> c_b` for `a <= b`.
    pub fn arrow_between(&self, cat: &FinCategory, a: usize, b: usize) -> usize {
        let mut acc = cat.identity(self.objects[a]);
        for i in a..b {
            acc = cat.compose(self.arrows[i], acc).expect("chain arrows compose");
        }
        acc
    }

    /// Restriction along an operator `α: [m] -> [k]`.
    pub fn act(&self, cat: &FinCategory, alpha: &crate::delta::SimplexMap) -> Chain {
        let objects = alpha.values().iter().map(|&v| self.objects[v]).collect();
        let arrows = alpha
            .values()
            .windows(2)
            .map(|w| self.arrow_between(cat, w[0], w[1]))
            .collect();
        Chain { objects, arrows }
    }
}

/// All chains of length `k`, ordered by first object then arrow indices.
pub fn chains(cat: &FinCategory, k: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); cat.object_count()];
    for f in cat.morphisms() {
        by_source[cat.source(f)].push(f);
    }
    fn extend(
        cat: &FinCategory,
        by_source: &[Vec<usize>],
        k: usize,
        cur: &mut Chain,
        out: &mut Vec<Chain>,
    ) {
        if cur.arrows.len() == k {
            out.push(cur.clone());
            return;
        }
        let last = *cur.objects.last().unwrap();
        for &f in &by_source[last] {
            cur.arrows.push(f);
            cur.objects.push(cat.target(f));
            extend(cat, by_source, k, cur, out);
            cur.arrows.pop();
            cur.objects.pop();
        }
    }
    for x in cat.objects() {
        let mut cur = Chain { objects: vec![x], arrows: Vec::new() };
        extend(cat, &by_source, k, &mut cur, &mut out);
    }
    out
}
