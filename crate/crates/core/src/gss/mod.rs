//! Groupoid-valued simplicial spaces: a truncated simplicial object in
//! finite groupoids, standing in for the simplicial space whose level `n`
//! is the nerve of `G_n`.
//!
//! Conventions: at level 1, `d_1` is the source and `d_0` the target. In the
//! twisted arrow space an edge `σ ∈ G_3` has source the middle arrow
//! `(1, 2)` and target the outer arrow `(0, 3)`; `d_2 d_2 σ = (0, 1)` and
//! `d_0 d_0 σ = (2, 3)` are its two legs. The projection to `W^op × W`
//! carries the source in its first factor.

mod construct;
mod fibration;
mod ho;
mod segal;

pub use construct::*;
pub use fibration::*;
pub use ho::*;
pub use segal::*;

use std::sync::Arc;

use crate::delta::{degeneracy, face, SimplexMap};
use crate::error::{Error, Result};
use crate::groupoid::{FinGroupoid, GroupoidFunctor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidSimplicialSpace {
    levels: Vec<Arc<FinGroupoid>>,
    /// `faces[n][i]: G_n -> G_{n-1}` for `n >= 1`.
    faces: Vec<Vec<GroupoidFunctor>>,
    /// `degeneracies[n][j]: G_n -> G_{n+1}` for `n < trunc`.
    degeneracies: Vec<Vec<GroupoidFunctor>>,
}

impl GroupoidSimplicialSpace {
    /// Builds the space from levels and a generator action; `act` is called
    /// only on faces and degeneracies.
    pub fn from_generators(
        levels: Vec<Arc<FinGroupoid>>,
        mut act: impl FnMut(&SimplexMap) -> GroupoidFunctor,
    ) -> Self {
        let trunc = levels.len() - 1;
        let faces = (0..=trunc)
            .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| act(&face(n, i).unwrap())).collect() })
            .collect();
        let degeneracies = (0..trunc).map(|n| (0..=n).map(|j| act(&degeneracy(n, j).unwrap())).collect()).collect();
        Self { levels, faces, degeneracies }
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Arc<FinGroupoid> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Arc<FinGroupoid>] {
        &self.levels
    }

    pub fn face(&self, n: usize, i: usize) -> &GroupoidFunctor {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &GroupoidFunctor {
        &self.degeneracies[n][j]
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if self.trunc() < needed {
            return Err(Error::InsufficientTruncation { needed, available: self.trunc() });
        }
        Ok(())
    }

    /// The functor `W(α): G_cod -> G_dom`.
    pub fn act(&self, alpha: &SimplexMap) -> Result<GroupoidFunctor> {
        self.require(alpha.dom().max(alpha.cod()))?;
        let word = alpha.word();
        let mut acc = GroupoidFunctor::identity(&self.levels[alpha.cod()]);
        for &(level, i) in &word.faces {
            acc = acc.then(&self.faces[level][i])?;
        }
        for &(level, j) in &word.degeneracies {
            acc = acc.then(&self.degeneracies[level][j])?;
        }
        Ok(acc)
    }

    /// The simplicial identities as equalities of functors.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::IllDefined(format!("simplicial identity fails: {what}")));
        let d = |n: usize, i: usize| &self.faces[n][i];
        let s = |n: usize, j: usize| &self.degeneracies[n][j];
        let trunc = self.trunc();
        for n in 0..=trunc {
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        if d(n, j).then(d(n - 1, i))? != d(n, i).then(d(n - 1, j - 1))? {
                            return fail(format!("d_{i} d_{j} at level {n}"));
                        }
                    }
                }
            }
            if n < trunc {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = s(n, j).then(d(n + 1, i))?;
                        let rhs = if i < j {
                            d(n, i).then(s(n - 1, j - 1))?
                        } else if i == j || i == j + 1 {
                            GroupoidFunctor::identity(&self.levels[n])
                        } else {
                            d(n, i - 1).then(s(n - 1, j))?
                        };
                        if lhs != rhs {
                            return fail(format!("d_{i} s_{j} at level {n}"));
                        }
                    }
                }
            }
            if n + 1 < trunc {
                for j in 0..=n {
                    for i in 0..=j {
                        if s(n, j).then(s(n + 1, i))? != s(n, i).then(s(n + 1, j + 1))? {
                            return fail(format!("s_{i} s_{j} at level {n}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map of groupoid-valued simplicial spaces, level by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GssMap {
    pub source: GroupoidSimplicialSpace,
    pub target: GroupoidSimplicialSpace,
    pub components: Vec<GroupoidFunctor>,
}

impl GssMap {
    pub fn new(
        source: GroupoidSimplicialSpace,
        target: GroupoidSimplicialSpace,
        components: Vec<GroupoidFunctor>,
    ) -> Result<Self> {
        let f = Self { source, target, components };
        f.check_naturality()?;
        Ok(f)
    }

    /// Strict naturality against every face and degeneracy.
    pub fn check_naturality(&self) -> Result<()> {
        let trunc = self.source.trunc();
        if self.target.trunc() != trunc || self.components.len() != trunc + 1 {
            return Err(Error::ShapeMismatch("map between spaces of different truncation".into()));
        }
        for n in 0..=trunc {
            if n > 0 {
                for i in 0..=n {
                    let lhs = self.source.face(n, i).then(&self.components[n - 1])?;
                    let rhs = self.components[n].then(self.target.face(n, i))?;
                    if lhs != rhs {
                        return Err(Error::IllDefined(format!("map does not commute with d_{i} at level {n}")));
                    }
                }
            }
            if n < trunc {
                for j in 0..=n {
                    let lhs = self.source.degeneracy(n, j).then(&self.components[n + 1])?;
                    let rhs = self.components[n].then(self.target.degeneracy(n, j))?;
                    if lhs != rhs {
                        return Err(Error::IllDefined(format!("map does not commute with s_{j} at level {n}")));
                    }
                }
            }
        }
        Ok(())
    }
}
