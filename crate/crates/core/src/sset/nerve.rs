use std::collections::HashMap;

use super::{FinSimplicialSet, SSetMorphism};
use crate::fincat::{chains, Chain, FinCategory, FinFunctor};

/// The nerve of a finite category together with its chains.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: FinSimplicialSet,
    pub chains: Vec<Vec<Chain>>,
    index: Vec<HashMap<Chain, usize>>,
}

impl Nerve {
    /// Level `k` consists of the composable `k`-chains; faces compose or drop
    /// an end, degeneracies insert identities.
    pub fn new(cat: &FinCategory, trunc: usize) -> Self {
        let chains: Vec<Vec<Chain>> = (0..=trunc).map(|k| chains(cat, k)).collect();
        let index: Vec<HashMap<Chain, usize>> =
            chains.iter().map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
        let counts = chains.iter().map(Vec::len).collect();
        let sset = FinSimplicialSet::from_operator_fn(trunc, counts, |alpha, x| {
            index[alpha.dom()][&chains[alpha.cod()][x].act(cat, alpha)]
        });
        Self { sset, chains, index }
    }

    pub fn index_of(&self, chain: &Chain) -> Option<usize> {
        self.index.get(chain.length())?.get(chain).copied()
    }
}

pub fn nerve(cat: &FinCategory, trunc: usize) -> FinSimplicialSet {
    Nerve::new(cat, trunc).sset
}

/// The simplicial map induced by a functor.
pub fn nerve_functor(f: &FinFunctor, trunc: usize) -> SSetMorphism {
    let (src, tgt) = (Nerve::new(&f.source, trunc), Nerve::new(&f.target, trunc));
    let components = src
        .chains
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|c| {
                    let image = Chain {
                        objects: c.objects.iter().map(|&o| f.object_map[o]).collect(),
                        arrows: c.arrows.iter().map(|&a| f.morphism_map[a]).collect(),
                    };
                    tgt.index_of(&image).expect("functor image is a chain")
                })
                .collect()
        })
        .collect();
    SSetMorphism { source: src.sset, target: tgt.sset, components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::count_monotone;
    use crate::fincat::{category_zoo, linear_order, terminal, walking_iso};

    #[test]
    fn nerve_counts() {
        assert_eq!(nerve(&terminal(), 3).counts(), &[1, 1, 1, 1]);
        assert_eq!(nerve(&linear_order(1), 2).count(1), count_monotone(1, 1));
        let j = nerve(&walking_iso(), 6);
        for k in 0..=6 {
            assert_eq!(j.count(k), 1 << (k + 1));
        }
    }

    #[test]
    fn nerves_satisfy_identities() {
        for (_, c) in category_zoo() {
            nerve(&c, 4).check_identities().unwrap();
        }
    }

    #[test]
    fn functor_nerve_is_simplicial() {
        for (_, c) in category_zoo() {
            let tw = crate::fincat::tw_cat(&c);
            nerve_functor(&tw.projection, 3).validate().unwrap();
        }
    }
}
