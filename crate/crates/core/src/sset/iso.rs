use std::collections::HashMap;

use super::{FinSimplicialSet, SSetMorphism};

/// An isomorphism `s -> t`, if one exists.
pub fn find_iso(s: &FinSimplicialSet, t: &FinSimplicialSet) -> Option<SSetMorphism> {
    find_iso_with(s, t, |_, _, _| true)
}

/// Backtracking isomorphism search, level by level from the vertices.
///
/// A degenerate cell `s_j z` is forced to `s_j φ(z)`; a nondegenerate cell
/// may only go to a nondegenerate cell with matching faces and coface
/// profile. `compat(n, x, y)` adds an extra constraint, e.g. lying over a
/// common base.
pub fn find_iso_with(
    s: &FinSimplicialSet,
    t: &FinSimplicialSet,
    compat: impl Fn(usize, usize, usize) -> bool,
) -> Option<SSetMorphism> {
    if s.trunc() != t.trunc() || s.counts() != t.counts() {
        return None;
    }
    let trunc = s.trunc();
    for n in 0..=trunc {
        if s.nondegenerate(n).len() != t.nondegenerate(n).len() {
            return None;
        }
    }
    let s_profile = coface_profiles(s);
    let t_profile = coface_profiles(t);
    let s_degen: Vec<Vec<Option<(usize, usize)>>> =
        (0..=trunc).map(|n| (0..s.count(n)).map(|x| s.degenerate_source(n, x)).collect()).collect();
    // nondegenerate cells of t keyed by their face tuple
    let t_by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>> = (0..=trunc)
        .map(|n| {
            let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for y in 0..t.count(n) {
                if !t.is_degenerate(n, y) {
                    m.entry(faces_of(t, n, y)).or_default().push(y);
                }
            }
            m
        })
        .collect();

    let order: Vec<(usize, usize)> = (0..=trunc).flat_map(|n| (0..s.count(n)).map(move |x| (n, x))).collect();
    let mut phi: Vec<Vec<usize>> = (0..=trunc).map(|n| vec![usize::MAX; s.count(n)]).collect();
    let mut used: Vec<Vec<bool>> = (0..=trunc).map(|n| vec![false; t.count(n)]).collect();
    let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut pos = 0usize;
    loop {
        if pos == order.len() {
            let f = SSetMorphism { source: s.clone(), target: t.clone(), components: phi.clone() };
            if f.validate().is_ok() {
                return Some(f);
            }
            pos -= 1;
            continue;
        }
        let (n, x) = order[pos];
        if stack.len() == pos {
            let candidates: Vec<usize> = match s_degen[n][x] {
                Some((j, z)) => vec![t.degeneracy(n - 1, j, phi[n - 1][z])],
                None => {
                    let key: Vec<usize> = faces_of(s, n, x).iter().map(|&f| phi[n - 1][f]).collect();
                    t_by_faces[n]
                        .get(&key)
                        .map(|ys| ys.iter().copied().filter(|&y| s_profile[n][x] == t_profile[n][y]).collect())
                        .unwrap_or_default()
                }
            };
            stack.push((candidates, 0));
        }
        if phi[n][x] != usize::MAX {
            used[n][phi[n][x]] = false;
            phi[n][x] = usize::MAX;
        }
        let (cands, next) = stack.last_mut().unwrap();
        let mut chosen = None;
        while *next < cands.len() {
            let y = cands[*next];
            *next += 1;
            if !used[n][y] && compat(n, x, y) {
                chosen = Some(y);
                break;
            }
        }
        match chosen {
            Some(y) => {
                phi[n][x] = y;
                used[n][y] = true;
                pos += 1;
            }
            None => {
                stack.pop();
                if pos == 0 {
                    return None;
                }
                pos -= 1;
            }
        }
    }
}

fn faces_of(s: &FinSimplicialSet, n: usize, x: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    (0..=n).map(|i| s.face(n, i, x)).collect()
}

/// For each cell, how many nondegenerate cells one level up have it as
/// their `i`-th face, for each `i`.
fn coface_profiles(s: &FinSimplicialSet) -> Vec<Vec<Vec<usize>>> {
    (0..=s.trunc())
        .map(|n| {
            let mut prof = vec![vec![0usize; n + 2]; s.count(n)];
            if n < s.trunc() {
                for w in s.nondegenerate(n + 1) {
                    for (i, slot) in (0..=n + 1).enumerate() {
                        prof[s.face(n + 1, slot, w)][i] += 1;
                    }
                }
            }
            prof
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard_simplex;

    #[test]
    fn simplex_examples() {
        let d1 = standard_simplex(1, 3);
        let f = find_iso(&d1, &d1).unwrap();
        assert_eq!(f, SSetMorphism::identity(&d1));
        assert!(find_iso(&d1, &standard_simplex(0, 3)).is_none());
    }

    #[test]
    fn constrained_search_can_fail() {
        let d1 = standard_simplex(1, 2);
        // forbid fixing vertex 0: the only automorphism is the identity
        assert!(find_iso_with(&d1, &d1, |n, x, y| !(n == 0 && x == y)).is_none());
    }
}
