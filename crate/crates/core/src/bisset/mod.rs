//! Truncated bisimplicial sets. The first index `n` is the categorical
//! direction, the second `l` the spatial one; `F(n) × Δ[l]` is the
//! representable on `([n], [l])`.

mod cells;

pub use cells::*;

use crate::delta::{compose, count_monotone, degeneracy, face, monotone_maps, monotone_rank, SimplexMap};
use crate::error::{Error, Result};
use crate::sset::{tw_sset, FinSimplicialSet};
use crate::unionfind::UnionFind;

/// Which index an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Categorical,
    Spatial,
}

/// Stored as its rows (fixed `l`, simplicial in `n`) and columns (fixed
/// `n`, simplicial in `l`); both views share the cell numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSSet {
    rows: Vec<FinSimplicialSet>,
    cols: Vec<FinSimplicialSet>,
}

impl BiSSet {
    /// `act(direction, α, other, x)` is the action of a generator `α` on the
    /// cell `x` whose index in the other direction is `other`.
    pub fn from_operator_fn(
        trunc_n: usize,
        trunc_l: usize,
        counts: &[Vec<usize>],
        mut act: impl FnMut(Direction, &SimplexMap, usize, usize) -> usize,
    ) -> Self {
        let rows = (0..=trunc_l)
            .map(|l| {
                let c = (0..=trunc_n).map(|n| counts[n][l]).collect();
                FinSimplicialSet::from_operator_fn(trunc_n, c, |alpha, x| act(Direction::Categorical, alpha, l, x))
            })
            .collect();
        let cols = (0..=trunc_n)
            .map(|n| FinSimplicialSet::from_operator_fn(trunc_l, counts[n].clone(), |beta, x| act(Direction::Spatial, beta, n, x)))
            .collect();
        Self { rows, cols }
    }

    /// Assembles from rows and columns and validates the result.
    pub fn from_parts(rows: Vec<FinSimplicialSet>, cols: Vec<FinSimplicialSet>) -> Result<Self> {
        let s = Self { rows, cols };
        s.validate()?;
        Ok(s)
    }

    pub fn empty(trunc_n: usize, trunc_l: usize) -> Self {
        Self::from_operator_fn(trunc_n, trunc_l, &vec![vec![0; trunc_l + 1]; trunc_n + 1], |_, _, _, _| unreachable!())
    }

    pub fn trunc_n(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn trunc_l(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn count(&self, n: usize, l: usize) -> usize {
        self.rows[l].count(n)
    }

    pub fn counts(&self) -> Vec<Vec<usize>> {
        self.cols.iter().map(|c| c.counts().to_vec()).collect()
    }

    /// The simplicial set `n ↦ X_{n,l}`.
    pub fn row(&self, l: usize) -> &FinSimplicialSet {
        &self.rows[l]
    }

    /// The simplicial set `l ↦ X_{n,l}`.
    pub fn col(&self, n: usize) -> &FinSimplicialSet {
        &self.cols[n]
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(FinSimplicialSet::is_empty)
    }

    /// `X(α, β)(x)` for `x ∈ X_{α.cod, β.cod}`.
    pub fn act(&self, alpha: &SimplexMap, beta: &SimplexMap, x: usize) -> Result<usize> {
        if beta.cod() > self.trunc_l() {
            return Err(Error::InsufficientTruncation { needed: beta.cod(), available: self.trunc_l() });
        }
        let y = self.rows[beta.cod()].act(alpha, x)?;
        if alpha.dom() > self.trunc_n() {
            return Err(Error::InsufficientTruncation { needed: alpha.dom(), available: self.trunc_n() });
        }
        self.cols[alpha.dom()].act(beta, y)
    }

    /// Simplicial identities in each direction, consistent counts, and
    /// commutation of the two actions on generators.
    pub fn validate(&self) -> Result<()> {
        let (tn, tl) = (self.trunc_n(), self.trunc_l());
        if self.rows.iter().any(|r| r.trunc() != tn) || self.cols.iter().any(|c| c.trunc() != tl) {
            return Err(Error::ShapeMismatch("rows and columns disagree on truncation".into()));
        }
        for n in 0..=tn {
            for l in 0..=tl {
                if self.rows[l].count(n) != self.cols[n].count(l) {
                    return Err(Error::ShapeMismatch(format!("rows and columns disagree on the count at ({n}, {l})")));
                }
            }
        }
        for r in &self.rows {
            r.check_identities()?;
        }
        for c in &self.cols {
            c.check_identities()?;
        }
        let generators = |t: usize, top: usize| -> Vec<SimplexMap> {
            let mut g = Vec::new();
            if t >= 1 {
                g.extend((0..=t).map(|i| face(t, i).unwrap()));
            }
            if t < top {
                g.extend((0..=t).map(|j| degeneracy(t, j).unwrap()));
            }
            g
        };
        for n in 0..=tn {
            for l in 0..=tl {
                for alpha in generators(n, tn) {
                    for beta in generators(l, tl) {
                        for x in 0..self.count(n, l) {
                            let a = self.cols[alpha.dom()].act(&beta, self.rows[l].act(&alpha, x)?)?;
                            let b = self.rows[beta.dom()].act(&alpha, self.cols[n].act(&beta, x)?)?;
                            if a != b {
                                return Err(Error::InvalidSimplicialSet(format!(
                                    "the two actions do not commute on cell {x} of ({n}, {l})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map of bisimplicial sets, `components[n][l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSSetMorphism {
    pub source: BiSSet,
    pub target: BiSSet,
    pub components: Vec<Vec<Vec<usize>>>,
}

impl BiSSetMorphism {
    pub fn new(source: BiSSet, target: BiSSet, components: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let f = Self { source, target, components };
        f.validate()?;
        Ok(f)
    }

    pub fn apply(&self, n: usize, l: usize, x: usize) -> usize {
        self.components[n][l][x]
    }

    /// Naturality against the generators of both directions.
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let (tn, tl) = (s.trunc_n(), s.trunc_l());
        if t.trunc_n() != tn || t.trunc_l() != tl {
            return Err(Error::ShapeMismatch("map between bisimplicial sets of different truncation".into()));
        }
        for n in 0..=tn {
            for l in 0..=tl {
                let comp = &self.components[n][l];
                if comp.len() != s.count(n, l) || comp.iter().any(|&y| y >= t.count(n, l)) {
                    return Err(Error::InvalidMorphism(format!("component ({n}, {l}) has wrong length or range")));
                }
            }
        }
        let bad = |n: usize, l: usize, x: usize| {
            Err(Error::InvalidMorphism(format!("not natural at cell {x} of ({n}, {l})")))
        };
        for l in 0..=tl {
            let (sr, tr) = (&s.rows[l], &t.rows[l]);
            for n in 0..=tn {
                for x in 0..s.count(n, l) {
                    let fx = self.components[n][l][x];
                    if n >= 1 && (0..=n).any(|i| self.components[n - 1][l][sr.face(n, i, x)] != tr.face(n, i, fx)) {
                        return bad(n, l, x);
                    }
                    if n < tn && (0..=n).any(|j| self.components[n + 1][l][sr.degeneracy(n, j, x)] != tr.degeneracy(n, j, fx)) {
                        return bad(n, l, x);
                    }
                }
            }
        }
        for n in 0..=tn {
            let (sc, tc) = (&s.cols[n], &t.cols[n]);
            for l in 0..=tl {
                for x in 0..s.count(n, l) {
                    let fx = self.components[n][l][x];
                    if l >= 1 && (0..=l).any(|i| self.components[n][l - 1][sc.face(l, i, x)] != tc.face(l, i, fx)) {
                        return bad(n, l, x);
                    }
                    if l < tl && (0..=l).any(|j| self.components[n][l + 1][sc.degeneracy(l, j, x)] != tc.degeneracy(l, j, fx)) {
                        return bad(n, l, x);
                    }
                }
            }
        }
        Ok(())
    }

    /// First collision `(n, l, x, y)` with `x < y` and equal images, looking
    /// at categorical levels `n <= k_max` only.
    pub fn injectivity_witness(&self, k_max: usize) -> Option<(usize, usize, usize, usize)> {
        for n in 0..=k_max.min(self.source.trunc_n()) {
            for l in 0..=self.source.trunc_l() {
                let mut seen = vec![usize::MAX; self.target.count(n, l)];
                for (x, &y) in self.components[n][l].iter().enumerate() {
                    if seen[y] != usize::MAX {
                        return Some((n, l, seen[y], x));
                    }
                    seen[y] = x;
                }
            }
        }
        None
    }

    pub fn is_bijective(&self) -> bool {
        self.injectivity_witness(usize::MAX).is_none()
            && (0..=self.source.trunc_n())
                .all(|n| (0..=self.source.trunc_l()).all(|l| self.source.count(n, l) == self.target.count(n, l)))
    }
}

/// Outcome of a level-wise injectivity check.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InjectivityReport {
    pub levels_checked: usize,
    pub cells_checked: usize,
    /// `(n, l, x, y)`: two distinct cells with the same image.
    pub collision: Option<(usize, usize, usize, usize)>,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.collision.is_none()
    }
}

pub fn is_levelwise_injective(f: &BiSSetMorphism, k_max: usize) -> Result<InjectivityReport> {
    if f.source.trunc_n() < k_max {
        return Err(Error::InsufficientTruncation { needed: k_max, available: f.source.trunc_n() });
    }
    let cells_checked = (0..=k_max).map(|n| (0..=f.source.trunc_l()).map(|l| f.source.count(n, l)).sum::<usize>()).sum();
    Ok(InjectivityReport { levels_checked: k_max + 1, cells_checked, collision: f.injectivity_witness(k_max) })
}

/// `F(n) × Δ[l]`: the `(k, j)`-cells are pairs of monotone maps
/// `([k] -> [n], [j] -> [l])`, indexed `rank_a * |Δ[l]_j| + rank_b`.
pub fn representable(n: usize, l: usize, trunc_n: usize, trunc_l: usize) -> BiSSet {
    let cat: Vec<Vec<SimplexMap>> = (0..=trunc_n).map(|k| monotone_maps(k, n)).collect();
    let sp: Vec<Vec<SimplexMap>> = (0..=trunc_l).map(|j| monotone_maps(j, l)).collect();
    let counts: Vec<Vec<usize>> =
        (0..=trunc_n).map(|k| (0..=trunc_l).map(|j| cat[k].len() * sp[j].len()).collect()).collect();
    BiSSet::from_operator_fn(trunc_n, trunc_l, &counts, |dir, op, other, x| match dir {
        Direction::Categorical => {
            let w = count_monotone(other, l);
            let (a, b) = (x / w, x % w);
            monotone_rank(&compose(&cat[op.cod()][a], op).unwrap()) * w + b
        }
        Direction::Spatial => {
            let (wc, wd) = (count_monotone(op.cod(), l), count_monotone(op.dom(), l));
            debug_assert!(wc > 0);
            let (a, b) = (x / wc, x % wc);
            a * wd + monotone_rank(&compose(&sp[op.cod()][b], op).unwrap())
        }
    })
}

/// `F(n) = F(n) × Δ[0]`.
pub fn free(n: usize, trunc_n: usize, trunc_l: usize) -> BiSSet {
    representable(n, 0, trunc_n, trunc_l)
}

/// The simplicial set with `count` cells in every level and identity operators.
pub fn constant_sset(count: usize, trunc: usize) -> FinSimplicialSet {
    FinSimplicialSet::from_operator_fn(trunc, vec![count; trunc + 1], |_, x| x)
}

/// `p_1^* S`: `(n, l)`-cells are `S_n`, constant in `l`.
pub fn p1_star(s: &FinSimplicialSet, trunc_l: usize) -> BiSSet {
    BiSSet {
        rows: vec![s.clone(); trunc_l + 1],
        cols: (0..=s.trunc()).map(|n| constant_sset(s.count(n), trunc_l)).collect(),
    }
}

/// `S` as a simplicial space: `(n, l)`-cells are `S_l`, constant in `n`.
pub fn space_embedding(s: &FinSimplicialSet, trunc_n: usize) -> BiSSet {
    BiSSet {
        rows: (0..=s.trunc()).map(|l| constant_sset(s.count(l), trunc_n)).collect(),
        cols: vec![s.clone(); trunc_n + 1],
    }
}

/// `Tw` in the categorical direction: `(n, l)`-cells are `X_{2n+1, l}`,
/// `α` acting through `Q(α)`.
pub fn tw_bisset(x: &BiSSet, trunc_n: usize) -> Result<BiSSet> {
    let needed = 2 * trunc_n + 1;
    if x.trunc_n() < needed {
        return Err(Error::InsufficientTruncation { needed, available: x.trunc_n() });
    }
    let rows = x.rows.iter().map(|r| tw_sset(r, trunc_n)).collect::<Result<Vec<_>>>()?;
    let cols = (0..=trunc_n).map(|n| x.cols[2 * n + 1].clone()).collect();
    Ok(BiSSet { rows, cols })
}

/// `Tw` of a map: the components at `2n+1`.
pub fn tw_morphism(f: &BiSSetMorphism, trunc_n: usize) -> Result<BiSSetMorphism> {
    Ok(BiSSetMorphism {
        source: tw_bisset(&f.source, trunc_n)?,
        target: tw_bisset(&f.target, trunc_n)?,
        components: (0..=trunc_n).map(|n| f.components[2 * n + 1].clone()).collect(),
    })
}

/// Level-wise disjoint union with the summand offsets `offsets[k][n][l]`.
pub fn coproduct(parts: &[BiSSet], trunc_n: usize, trunc_l: usize) -> Result<(BiSSet, Vec<Vec<Vec<usize>>>)> {
    if parts.iter().any(|p| p.trunc_n() != trunc_n || p.trunc_l() != trunc_l) {
        return Err(Error::ShapeMismatch("coproduct summands have different truncations".into()));
    }
    let mut offsets = vec![vec![vec![0usize; trunc_l + 1]; trunc_n + 1]];
    for p in parts {
        let last = offsets.last().unwrap();
        offsets.push((0..=trunc_n).map(|n| (0..=trunc_l).map(|l| last[n][l] + p.count(n, l)).collect()).collect());
    }
    let counts = offsets.last().unwrap().clone();
    let locate = |n: usize, l: usize, x: usize| {
        let k = offsets.partition_point(|o| o[n][l] <= x) - 1;
        (k, x - offsets[k][n][l])
    };
    let sum = BiSSet::from_operator_fn(trunc_n, trunc_l, &counts, |dir, op, other, x| match dir {
        Direction::Categorical => {
            let (k, local) = locate(op.cod(), other, x);
            offsets[k][op.dom()][other] + parts[k].rows[other].act(op, local).unwrap()
        }
        Direction::Spatial => {
            let (k, local) = locate(other, op.cod(), x);
            offsets[k][other][op.dom()] + parts[k].cols[other].act(op, local).unwrap()
        }
    });
    offsets.pop();
    Ok((sum, offsets))
}

/// Coequalizer of a parallel pair, as the quotient map out of the common
/// target. Classes are numbered by least member.
pub fn coequalizer(f: &BiSSetMorphism, g: &BiSSetMorphism) -> Result<BiSSetMorphism> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::ShapeMismatch("coequalizer of a non-parallel pair".into()));
    }
    let t = &f.target;
    let (tn, tl) = (t.trunc_n(), t.trunc_l());
    let mut class_of = vec![vec![Vec::new(); tl + 1]; tn + 1];
    let mut reps = vec![vec![Vec::new(); tl + 1]; tn + 1];
    for n in 0..=tn {
        for l in 0..=tl {
            let mut uf = UnionFind::new(t.count(n, l));
            for x in 0..f.source.count(n, l) {
                uf.union(f.apply(n, l, x), g.apply(n, l, x));
            }
            let (classes, k) = uf.classes();
            let mut r = vec![usize::MAX; k];
            for (x, &c) in classes.iter().enumerate().rev() {
                r[c] = x;
            }
            class_of[n][l] = classes;
            reps[n][l] = r;
        }
    }
    let counts: Vec<Vec<usize>> = reps.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
    let quotient = BiSSet::from_operator_fn(tn, tl, &counts, |dir, op, other, c| match dir {
        Direction::Categorical => {
            class_of[op.dom()][other][t.rows[other].act(op, reps[op.cod()][other][c]).unwrap()]
        }
        Direction::Spatial => {
            class_of[other][op.dom()][t.cols[other].act(op, reps[other][op.cod()][c]).unwrap()]
        }
    });
    Ok(BiSSetMorphism { source: t.clone(), target: quotient, components: class_of })
}

/// The map `F(n) × Δ[l] -> X` classifying the cell `x ∈ X_{n,l}`.
pub fn yoneda(x: &BiSSet, n: usize, l: usize, cell: usize) -> Result<BiSSetMorphism> {
    let (tn, tl) = (x.trunc_n(), x.trunc_l());
    if n > tn || l > tl {
        return Err(Error::InsufficientTruncation { needed: n.max(l), available: tn.min(tl) });
    }
    let rep = representable(n, l, tn, tl);
    let components = (0..=tn)
        .map(|k| {
            let cat = monotone_maps(k, n);
            (0..=tl)
                .map(|j| {
                    let sp = monotone_maps(j, l);
                    cat.iter()
                        .flat_map(|a| sp.iter().map(move |b| (a, b)))
                        .map(|(a, b)| x.act(a, b, cell))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BiSSetMorphism { source: rep, target: x.clone(), components })
}

/// Decides whether `x` is isomorphic to `F(n) × Δ[l]` (at the truncation of
/// `x`): cell counts must agree, and then some `(n, l)`-cell must classify
/// an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RepresentableVerdict {
    /// The cell whose classifying map is an isomorphism.
    Isomorphic { cell: usize },
    /// `(n, l, found, expected)` at the first level whose counts differ.
    CountMismatch { n: usize, l: usize, found: usize, expected: usize },
    /// Counts agree but no cell classifies an isomorphism.
    NoGeneratingCell,
}

pub fn iso_to_representable(x: &BiSSet, n: usize, l: usize) -> Result<RepresentableVerdict> {
    let (tn, tl) = (x.trunc_n(), x.trunc_l());
    for k in 0..=tn {
        for j in 0..=tl {
            let expected = count_monotone(k, n) * count_monotone(j, l);
            if x.count(k, j) != expected {
                return Ok(RepresentableVerdict::CountMismatch { n: k, l: j, found: x.count(k, j), expected });
            }
        }
    }
    if n > tn || l > tl {
        return Err(Error::InsufficientTruncation { needed: n.max(l), available: tn.min(tl) });
    }
    for cell in 0..x.count(n, l) {
        if yoneda(x, n, l, cell)?.is_bijective() {
            return Ok(RepresentableVerdict::Isomorphic { cell });
        }
    }
    Ok(RepresentableVerdict::NoGeneratingCell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{nerve, sset_zoo, standard_simplex};

    #[test]
    fn representable_counts() {
        let t = representable(0, 0, 2, 2);
        assert!(t.counts().iter().flatten().all(|&c| c == 1));
        let r = representable(1, 1, 2, 2);
        assert_eq!(r.count(1, 1), 9);
        r.validate().unwrap();
        let f1 = free(1, 3, 2);
        for k in 0..=3 {
            for j in 0..=2 {
                assert_eq!(f1.count(k, j), k + 2);
            }
        }
    }

    #[test]
    fn p1_star_of_simplex_is_free() {
        for n in 0..=2 {
            let p = p1_star(&standard_simplex(n, 3), 2);
            p.validate().unwrap();
            assert_eq!(p, free(n, 3, 2));
        }
        let s = space_embedding(&standard_simplex(1, 2), 2);
        s.validate().unwrap();
        assert_eq!(s, representable(0, 1, 2, 2));
    }

    #[test]
    fn tw_on_p1_star_and_empty() {
        for (name, s) in sset_zoo(5) {
            let lhs = tw_bisset(&p1_star(&s, 1), 2).unwrap();
            let rhs = p1_star(&tw_sset(&s, 2).unwrap(), 1);
            assert_eq!(lhs, rhs, "{name}");
        }
        assert!(tw_bisset(&BiSSet::empty(3, 1), 1).unwrap().is_empty());
    }

    #[test]
    fn representable_recognition() {
        let r = representable(1, 1, 3, 2);
        assert!(matches!(iso_to_representable(&r, 1, 1).unwrap(), RepresentableVerdict::Isomorphic { .. }));
        let n = p1_star(&nerve(&crate::fincat::span(), 3), 2);
        assert!(!matches!(iso_to_representable(&n, 2, 0).unwrap(), RepresentableVerdict::Isomorphic { .. }));
        // the square [1] × [1] has the right count at level 0 only
        let sq = p1_star(&crate::sset::product(&standard_simplex(1, 2), &standard_simplex(1, 2)).unwrap(), 0);
        assert!(matches!(
            iso_to_representable(&sq, 3, 0).unwrap(),
            RepresentableVerdict::CountMismatch { n: 1, .. }
        ));
    }

    #[test]
    fn coequalizer_and_injectivity() {
        let a = free(0, 2, 1);
        let (sum, off) = coproduct(&[free(1, 2, 1), free(1, 2, 1)], 2, 1).unwrap();
        // glue vertex 1 of the first edge to vertex 0 of the second: a spine
        let v1 = yoneda(&sum, 0, 0, off[0][0][0] + 1).unwrap();
        let v0 = yoneda(&sum, 0, 0, off[1][0][0]).unwrap();
        assert_eq!(v1.source, a);
        let q = coequalizer(&v1, &v0).unwrap();
        q.validate().unwrap();
        assert_eq!(q.target, p1_star(&crate::sset::spine(2), 1));
        let fold = BiSSetMorphism::new(
            sum.clone(),
            free(1, 2, 1),
            (0..=2).map(|n| (0..=1).map(|l| (0..sum.count(n, l)).map(|x| x % (n + 2)).collect()).collect()).collect(),
        )
        .unwrap();
        let r = is_levelwise_injective(&fold, 2).unwrap();
        assert_eq!(r.collision.map(|c| c.0), Some(0));
    }
}
