//! Finite simplicial sets truncated at a declared dimension.
//!
//! Cells of level `n` are the integers `0..count(n)`. Only the generating
//! faces and degeneracies are tabulated; every other operator is evaluated
//! through its epi-mono factorization.

mod construct;
mod iso;
mod nerve;

pub use construct::*;
pub use iso::{find_iso, find_iso_with};
pub use nerve::{nerve, nerve_functor, Nerve};

use crate::delta::{degeneracy, face, SimplexMap};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimplicialSet {
    trunc: usize,
    counts: Vec<usize>,
    /// `faces[n][i][x] = d_i x` for `1 <= n <= trunc` (`faces[0]` is empty).
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][j][x] = s_j x` for `n < trunc`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl FinSimplicialSet {
    /// Builds the generator tables from an action `(α, x) ↦ S(α)(x)` that is
    /// only ever called on faces and degeneracies.
    pub fn from_operator_fn(
        trunc: usize,
        counts: Vec<usize>,
        mut act: impl FnMut(&SimplexMap, usize) -> usize,
    ) -> Self {
        assert_eq!(counts.len(), trunc + 1, "one count per level");
        let faces = (0..=trunc)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        let d = face(n, i).unwrap();
                        (0..counts[n]).map(|x| act(&d, x)).collect()
                    })
                    .collect()
            })
            .collect();
        let degeneracies = (0..trunc)
            .map(|n| {
                (0..=n)
                    .map(|j| {
                        let s = degeneracy(n, j).unwrap();
                        (0..counts[n]).map(|x| act(&s, x)).collect()
                    })
                    .collect()
            })
            .collect();
        Self { trunc, counts, faces, degeneracies }
    }

    /// Builds from explicit tables and checks ranges and simplicial identities.
    pub fn from_tables(
        trunc: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSimplicialSet(msg));
        if counts.len() != trunc + 1 || faces.len() != trunc + 1 || degeneracies.len() != trunc {
            return bad(format!("expected {} levels of counts and faces, {trunc} of degeneracies", trunc + 1));
        }
        for n in 0..=trunc {
            let expected_faces = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != expected_faces {
                return bad(format!("level {n} needs {expected_faces} face tables"));
            }
            for (i, table) in faces[n].iter().enumerate() {
                if table.len() != counts[n] || table.iter().any(|&y| y >= counts[n - 1]) {
                    return bad(format!("face d_{i} at level {n} has wrong length or range"));
                }
            }
            if n < trunc {
                if degeneracies[n].len() != n + 1 {
                    return bad(format!("level {n} needs {} degeneracy tables", n + 1));
                }
                for (j, table) in degeneracies[n].iter().enumerate() {
                    if table.len() != counts[n] || table.iter().any(|&y| y >= counts[n + 1]) {
                        return bad(format!("degeneracy s_{j} at level {n} has wrong length or range"));
                    }
                }
            }
        }
        let s = Self { trunc, counts, faces, degeneracies };
        s.check_identities()?;
        Ok(s)
    }

    pub fn empty(trunc: usize) -> Self {
        Self::from_operator_fn(trunc, vec![0; trunc + 1], |_, _| unreachable!())
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, j: usize, x: usize) -> usize {
        self.degeneracies[n][j][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degeneracy_table(&self, n: usize, j: usize) -> &[usize] {
        &self.degeneracies[n][j]
    }

    fn check_operator(&self, alpha: &SimplexMap) -> Result<()> {
        let top = alpha.dom().max(alpha.cod());
        if top > self.trunc {
            return Err(Error::InsufficientTruncation { needed: top, available: self.trunc });
        }
        Ok(())
    }

    /// `S(α)(x)` for `x` a `α.cod()`-cell.
    pub fn act(&self, alpha: &SimplexMap, x: usize) -> Result<usize> {
        self.check_operator(alpha)?;
        if x >= self.counts[alpha.cod()] {
            return Err(Error::IndexOutOfRange { index: x, bound: self.counts[alpha.cod()] });
        }
        let word = alpha.word();
        let mut cur = x;
        for &(level, i) in &word.faces {
            cur = self.faces[level][i][cur];
        }
        for &(level, j) in &word.degeneracies {
            cur = self.degeneracies[level][j][cur];
        }
        Ok(cur)
    }

    /// The whole function `S(α): S_cod -> S_dom`.
    pub fn act_table(&self, alpha: &SimplexMap) -> Result<Vec<usize>> {
        self.check_operator(alpha)?;
        let word = alpha.word();
        Ok((0..self.counts[alpha.cod()])
            .map(|x| {
                let mut cur = x;
                for &(level, i) in &word.faces {
                    cur = self.faces[level][i][cur];
                }
                for &(level, j) in &word.degeneracies {
                    cur = self.degeneracies[level][j][cur];
                }
                cur
            })
            .collect())
    }

    /// Whether `x` is in the image of some degeneracy, and from which cell.
    pub fn degenerate_source(&self, n: usize, x: usize) -> Option<(usize, usize)> {
        if n == 0 {
            return None;
        }
        (0..n).find_map(|j| {
            let y = self.faces[n][j][x];
            (self.degeneracies[n - 1][j][y] == x).then_some((j, y))
        })
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        self.degenerate_source(n, x).is_some()
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.counts[n]).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// Exhaustive check of the simplicial identities on all stored levels.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvalidSimplicialSet(what));
        let d = |n: usize, i: usize, x: usize| self.faces[n][i][x];
        let s = |n: usize, j: usize, x: usize| self.degeneracies[n][j][x];
        for n in 0..=self.trunc {
            for x in 0..self.counts[n] {
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            if d(n - 1, i, d(n, j, x)) != d(n - 1, j - 1, d(n, i, x)) {
                                return fail(format!("d_{i} d_{j} != d_{} d_{i} on cell {x} of level {n}", j - 1));
                            }
                        }
                    }
                }
                if n < self.trunc {
                    for j in 0..=n {
                        let y = s(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = d(n + 1, i, y);
                            let rhs = if i < j {
                                s(n - 1, j - 1, d(n, i, x))
                            } else if i == j || i == j + 1 {
                                x
                            } else {
                                s(n - 1, j, d(n, i - 1, x))
                            };
                            if lhs != rhs {
                                return fail(format!("d_{i} s_{j} identity fails on cell {x} of level {n}"));
                            }
                        }
                    }
                }
                if n + 1 < self.trunc {
                    for j in 0..=n {
                        for i in 0..=j {
                            if s(n + 1, i, s(n, j, x)) != s(n + 1, j + 1, s(n, i, x)) {
                                return fail(format!("s_{i} s_{j} != s_{} s_{i} on cell {x} of level {n}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A simplicial map between sets of equal truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMorphism {
    pub source: FinSimplicialSet,
    pub target: FinSimplicialSet,
    pub components: Vec<Vec<usize>>,
}

impl SSetMorphism {
    pub fn new(source: FinSimplicialSet, target: FinSimplicialSet, components: Vec<Vec<usize>>) -> Result<Self> {
        let f = Self { source, target, components };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(s: &FinSimplicialSet) -> Self {
        let components = s.counts.iter().map(|&c| (0..c).collect()).collect();
        Self { source: s.clone(), target: s.clone(), components }
    }

    pub fn trunc(&self) -> usize {
        self.source.trunc
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n][x]
    }

    /// Shapes plus commutation with every face and degeneracy.
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if s.trunc != t.trunc || self.components.len() != s.trunc + 1 {
            return Err(Error::InvalidMorphism(format!(
                "truncations {} and {} with {} components",
                s.trunc,
                t.trunc,
                self.components.len()
            )));
        }
        for n in 0..=s.trunc {
            let comp = &self.components[n];
            if comp.len() != s.counts[n] || comp.iter().any(|&y| y >= t.counts[n]) {
                return Err(Error::InvalidMorphism(format!("component {n} has wrong length or range")));
            }
            for x in 0..s.counts[n] {
                if n > 0 {
                    for i in 0..=n {
                        if self.components[n - 1][s.face(n, i, x)] != t.face(n, i, comp[x]) {
                            return Err(Error::InvalidMorphism(format!("does not commute with d_{i} on cell {x} of level {n}")));
                        }
                    }
                }
                if n < s.trunc {
                    for j in 0..=n {
                        if self.components[n + 1][s.degeneracy(n, j, x)] != t.degeneracy(n, j, comp[x]) {
                            return Err(Error::InvalidMorphism(format!("does not commute with s_{j} on cell {x} of level {n}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SSetMorphism) -> Result<SSetMorphism> {
        if self.target != other.source {
            return Err(Error::InvalidMorphism("composite of non-composable maps".into()));
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(n, c)| c.iter().map(|&x| other.components[n][x]).collect())
            .collect();
        Ok(SSetMorphism { source: self.source.clone(), target: other.target.clone(), components })
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    /// `(level, x, y)` with `x != y` sharing an image, if any.
    pub fn injectivity_witness(&self) -> Option<(usize, usize, usize)> {
        for (n, comp) in self.components.iter().enumerate() {
            let mut seen = vec![usize::MAX; self.target.counts[n]];
            for (x, &y) in comp.iter().enumerate() {
                if seen[y] != usize::MAX {
                    return Some((n, seen[y], x));
                }
                seen[y] = x;
            }
        }
        None
    }

    pub fn is_iso(&self) -> bool {
        self.source.counts == self.target.counts && self.is_injective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_action_matches_generators() {
        let s = standard_simplex(2, 3);
        for n in 1..=3 {
            for i in 0..=n {
                let d = face(n, i).unwrap();
                for x in 0..s.count(n) {
                    assert_eq!(s.act(&d, x).unwrap(), s.face(n, i, x));
                }
            }
        }
        let too_big = SimplexMap::identity(4);
        assert_eq!(
            s.act(&too_big, 0).unwrap_err(),
            Error::InsufficientTruncation { needed: 4, available: 3 }
        );
    }

    #[test]
    fn from_tables_rejects_broken_identity() {
        // two vertices, one edge whose degeneracy data disagrees with its faces
        let faces = vec![vec![], vec![vec![0, 1, 1], vec![0, 1, 0]]];
        let degeneracies = vec![vec![vec![0, 2]]];
        let err = FinSimplicialSet::from_tables(1, vec![2, 3], faces, degeneracies).unwrap_err();
        assert!(matches!(err, Error::InvalidSimplicialSet(_)));
    }

    #[test]
    fn degenerate_cells_of_simplex() {
        let s = standard_simplex(1, 2);
        assert_eq!(s.nondegenerate(0).len(), 2);
        assert_eq!(s.nondegenerate(1).len(), 1);
        assert!(s.nondegenerate(2).is_empty());
    }
}
