//! The simplex category as executable algebra.
//!
//! A [`SimplexMap`] is a weakly monotone map `[m] -> [n]` stored as its value
//! sequence, so equality of maps is equality of sequences. Face maps `δ^i`
//! skip `i`, degeneracy maps `σ^i` repeat `i`.
//!
//! The doubling functor `Q([n]) = [n]^op ⋆ [n] = [2n+1]` acts on an operator
//! `α: [m] -> [n]` blockwise: the first `m+1` values are the order-reversed
//! image of `α`, the last `m+1` are `α` shifted past the first block.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly monotone map `[dom] -> [cod]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl fmt::Debug for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.dom, self.cod, self.values)
    }
}

impl SimplexMap {
    /// Builds a map from its values, checking length, range and monotonicity.
    pub fn new(cod: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMap("empty value sequence".into()));
        }
        if let Some(&v) = values.iter().find(|&&v| v > cod) {
            return Err(Error::InvalidMap(format!("value {v} exceeds codomain [{cod}]")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("values {values:?} not monotone")));
        }
        Ok(Self { dom: values.len() - 1, cod, values })
    }

    pub fn identity(n: usize) -> Self {
        Self { dom: n, cod: n, values: (0..=n).collect() }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.dom] == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.values.clone();
        img.dedup();
        img
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SimplexMap) -> Result<SimplexMap> {
        compose(self, other)
    }

    /// The unique epi-mono factorization `self = injection ∘ surjection`.
    pub fn ez_factorize(&self) -> (SimplexMap, SimplexMap) {
        ez_factorize(self)
    }

    /// Generator word of the operator: the face and degeneracy steps that
    /// evaluate it on a simplicial object, in application order.
    ///
    /// A simplicial object evaluates `X(α)` on an `cod`-simplex by applying
    /// each `(level, i)` face step `d_i: X_level -> X_{level-1}` in turn and
    /// then each degeneracy step `s_j: X_level -> X_{level+1}`.
    pub fn word(&self) -> OperatorWord {
        let (surj, inj) = ez_factorize(self);
        let img = inj.values();
        let missing: Vec<usize> = (0..=self.cod).filter(|v| img.binary_search(v).is_err()).collect();
        let mut faces = Vec::with_capacity(missing.len());
        let mut level = self.cod;
        for &i in missing.iter().rev() {
            faces.push((level, i));
            level -= 1;
        }
        let mut degeneracies = Vec::new();
        let mut level = surj.cod();
        for j in 0..surj.dom() {
            if surj.at(j) == surj.at(j + 1) {
                degeneracies.push((level, j));
                level += 1;
            }
        }
        OperatorWord { faces, degeneracies }
    }
}

/// Faces (descending) followed by degeneracies (ascending) realising an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub faces: Vec<(usize, usize)>,
    pub degeneracies: Vec<(usize, usize)>,
}

pub fn compose(f: &SimplexMap, g: &SimplexMap) -> Result<SimplexMap> {
    if g.cod != f.dom {
        return Err(Error::DimensionMismatch { expected: f.dom, found: g.cod });
    }
    Ok(SimplexMap {
        dom: g.dom,
        cod: f.cod,
        values: g.values.iter().map(|&v| f.values[v]).collect(),
    })
}

/// `δ^i: [n-1] -> [n]`, skipping `i`.
pub fn face(n: usize, i: usize) -> Result<SimplexMap> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: n, bound: 1 });
    }
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n + 1 });
    }
    let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
    Ok(SimplexMap { dom: n - 1, cod: n, values })
}

/// `σ^i: [n+1] -> [n]`, repeating `i`.
pub fn degeneracy(n: usize, i: usize) -> Result<SimplexMap> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n + 1 });
    }
    let values = (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
    Ok(SimplexMap { dom: n + 1, cod: n, values })
}

pub fn ez_factorize(f: &SimplexMap) -> (SimplexMap, SimplexMap) {
    let img = f.image();
    let surj_values = f
        .values
        .iter()
        .map(|v| img.binary_search(v).expect("value lies in image"))
        .collect();
    let surj = SimplexMap { dom: f.dom, cod: img.len() - 1, values: surj_values };
    let inj = SimplexMap { dom: img.len() - 1, cod: f.cod, values: img };
    (surj, inj)
}

/// `Q([n]) = [2n+1]`.
pub fn q_object(n: usize) -> usize {
    2 * n + 1
}

/// Action of the doubling functor on an operator `α: [m] -> [n]`.
pub fn q_map(alpha: &SimplexMap) -> SimplexMap {
    let (m, n) = (alpha.dom, alpha.cod);
    let mut values = Vec::with_capacity(2 * m + 2);
    values.extend((0..=m).map(|i| n - alpha.values[m - i]));
    values.extend((0..=m).map(|j| n + 1 + alpha.values[j]));
    SimplexMap { dom: 2 * m + 1, cod: 2 * n + 1, values }
}

/// Order-reversal involution: `op(α)(i) = cod - α(dom - i)`.
pub fn op_map(alpha: &SimplexMap) -> SimplexMap {
    let (m, n) = (alpha.dom, alpha.cod);
    SimplexMap { dom: m, cod: n, values: (0..=m).map(|i| n - alpha.values[m - i]).collect() }
}

/// `[n] -> [2n+1]`, `i ↦ i`: the first (reversed) block of the join.
pub fn block_inclusion_left(n: usize) -> SimplexMap {
    SimplexMap { dom: n, cod: 2 * n + 1, values: (0..=n).collect() }
}

/// `[n] -> [2n+1]`, `j ↦ n+1+j`: the second block of the join.
pub fn block_inclusion_right(n: usize) -> SimplexMap {
    SimplexMap { dom: n, cod: 2 * n + 1, values: (n + 1..=2 * n + 1).collect() }
}

/// The map `[0] -> [n]` picking vertex `v`.
pub fn vertex(n: usize, v: usize) -> SimplexMap {
    SimplexMap { dom: 0, cod: n, values: vec![v] }
}

/// The unique map `[n] -> [0]`.
pub fn terminal_map(n: usize) -> SimplexMap {
    SimplexMap { dom: n, cod: 0, values: vec![0; n + 1] }
}

/// The inclusion `[b - a] -> [n]` onto the interval `{a, …, b}`.
pub fn interval(n: usize, a: usize, b: usize) -> SimplexMap {
    debug_assert!(a <= b && b <= n);
    SimplexMap { dom: b - a, cod: n, values: (a..=b).collect() }
}

/// Number of monotone maps `[m] -> [n]`, i.e. `C(m+n+1, m+1)`.
pub fn count_monotone(m: usize, n: usize) -> usize {
    binomial(m + n + 1, m + 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All monotone maps `[m] -> [n]` in lexicographic order of values.
pub fn monotone_maps(m: usize, n: usize) -> Vec<SimplexMap> {
    let mut out = Vec::with_capacity(count_monotone(m, n));
    let mut values = vec![0usize; m + 1];
    loop {
        out.push(SimplexMap { dom: m, cod: n, values: values.clone() });
        // advance to the next weakly increasing sequence
        let mut i = m + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if values[i] < n {
                let v = values[i] + 1;
                for slot in values[i..].iter_mut() {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of a monotone map among [`monotone_maps`]`(dom, cod)`.
pub fn monotone_rank(f: &SimplexMap) -> usize {
    // count sequences lexicographically smaller, position by position
    let (m, n) = (f.dom, f.cod);
    let mut rank = 0;
    let mut lo = 0;
    for (pos, &v) in f.values.iter().enumerate() {
        let remaining = m - pos; // positions after this one
        for w in lo..v {
            // sequences of length `remaining` with values in [w, n]
            rank += count_sequences(remaining, n - w);
        }
        lo = v;
    }
    rank
}

/// Weakly increasing sequences of length `len` with values in `[0, top]`.
fn count_sequences(len: usize, top: usize) -> usize {
    if len == 0 {
        1
    } else {
        binomial(len + top, len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(cod: usize, v: &[usize]) -> SimplexMap {
        SimplexMap::new(cod, v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let d1 = face(2, 1).unwrap();
        assert_eq!(compose(&SimplexMap::identity(2), &d1).unwrap(), d1);
        let c = compose(&face(3, 2).unwrap(), &face(2, 2).unwrap()).unwrap();
        assert_eq!(c, map(3, &[0, 1]));
        let c = compose(&degeneracy(0, 0).unwrap(), &face(1, 0).unwrap()).unwrap();
        assert_eq!(c, SimplexMap::identity(0));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let err = compose(&face(2, 0).unwrap(), &face(3, 0).unwrap()).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 3 });
    }

    #[test]
    fn generators() {
        assert_eq!(face(1, 0).unwrap(), map(1, &[1]));
        assert_eq!(degeneracy(0, 0).unwrap(), map(0, &[0, 0]));
        assert!(face(0, 0).is_err());
        assert!(face(2, 3).is_err());
        assert!(degeneracy(1, 2).is_err());
    }

    #[test]
    fn new_validates() {
        assert!(SimplexMap::new(1, vec![1, 0]).is_err());
        assert!(SimplexMap::new(1, vec![0, 2]).is_err());
        assert!(SimplexMap::new(1, vec![]).is_err());
    }

    #[test]
    fn ez_examples() {
        let (s, i) = ez_factorize(&SimplexMap::identity(3));
        assert!(s.is_identity() && i.is_identity());
        let (s, i) = ez_factorize(&map(1, &[0, 0]));
        assert_eq!(s, map(0, &[0, 0]));
        assert_eq!(i, map(1, &[0]));
        let (s, i) = ez_factorize(&map(2, &[0, 0, 2]));
        assert_eq!(s, map(1, &[0, 0, 1]));
        assert_eq!(i, map(2, &[0, 2]));
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_object(0), 1);
        assert_eq!(q_object(1), 3);
        assert_eq!(q_object(4), 9);
        assert_eq!(q_map(&SimplexMap::identity(2)), SimplexMap::identity(5));
        assert_eq!(q_map(&face(1, 0).unwrap()), map(3, &[0, 3]));
        assert_eq!(q_map(&degeneracy(0, 0).unwrap()), map(1, &[0, 0, 1, 1]));
    }

    #[test]
    fn op_examples() {
        assert_eq!(op_map(&SimplexMap::identity(3)), SimplexMap::identity(3));
        assert_eq!(op_map(&face(1, 0).unwrap()), map(1, &[0]));
    }

    #[test]
    fn block_examples() {
        assert_eq!(block_inclusion_left(1), map(3, &[0, 1]));
        assert_eq!(block_inclusion_right(1), map(3, &[2, 3]));
        assert_eq!(block_inclusion_left(0), map(1, &[0]));
        assert_eq!(block_inclusion_right(0), map(1, &[1]));
        let l = compose(&block_inclusion_left(1), &face(1, 0).unwrap()).unwrap();
        assert_eq!(l.image(), vec![1]);
        let r = compose(&block_inclusion_right(1), &face(1, 1).unwrap()).unwrap();
        assert_eq!(r.image(), vec![2]);
    }

    #[test]
    fn enumeration_and_rank_agree() {
        for m in 0..5 {
            for n in 0..5 {
                let maps = monotone_maps(m, n);
                assert_eq!(maps.len(), count_monotone(m, n));
                for (k, f) in maps.iter().enumerate() {
                    assert_eq!(monotone_rank(f), k);
                }
            }
        }
    }

    #[test]
    fn word_evaluates_operator() {
        // evaluate a word on Δ[N] itself: the k-simplex x ∈ Δ[N]_n acted on by
        // the word must equal x ∘ α
        let n_top = 3;
        for m in 0..4 {
            for n in 0..4 {
                for alpha in monotone_maps(m, n) {
                    let word = alpha.word();
                    for x in monotone_maps(n, n_top) {
                        let mut cur = x.clone();
                        for &(lvl, i) in &word.faces {
                            assert_eq!(cur.dom(), lvl);
                            cur = compose(&cur, &face(lvl, i).unwrap()).unwrap();
                        }
                        for &(lvl, j) in &word.degeneracies {
                            assert_eq!(cur.dom(), lvl);
                            cur = compose(&cur, &degeneracy(lvl, j).unwrap()).unwrap();
                        }
                        assert_eq!(cur, compose(&x, &alpha).unwrap());
                    }
                }
            }
        }
    }
}
