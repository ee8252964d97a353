use std::collections::HashMap;

use super::{coequalizer, coproduct, representable, tw_bisset, tw_morphism, BiSSet, BiSSetMorphism};
use crate::delta::{
    block_inclusion_left, block_inclusion_right, compose, face, monotone_maps, monotone_rank, q_map, SimplexMap,
};
use crate::error::{Error, Result};
use crate::sset::FinSimplicialSet;

/// A map `F(n) × Δ[l] -> F(n') × Δ[l']` into generator `generator`,
/// given by its operators in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub generator: usize,
    pub cat: SimplexMap,
    pub space: SimplexMap,
}

/// A representable `F(n) × Δ[l]` whose two legs are identified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub n: usize,
    pub l: usize,
    pub left: Leg,
    pub right: Leg,
}

/// A map from the presented object into `F(n) × Δ[l]`, one cell per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMap {
    pub n: usize,
    pub l: usize,
    pub images: Vec<(SimplexMap, SimplexMap)>,
}

/// A finite colimit of representables: the coequalizer of
/// `∐ relations ⇉ ∐ generators`, kept symbolic until evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplexPresentation {
    pub generators: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
    pub map: Option<CanonicalMap>,
}

/// A presentation evaluated at a truncation.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub object: BiSSet,
    /// `∐ generators -> object`.
    pub quotient: BiSSetMorphism,
    /// `offsets[g][n][l]`: first cell of generator `g` in the coproduct.
    pub offsets: Vec<Vec<Vec<usize>>>,
    /// The parallel pair `∐ relations ⇉ ∐ generators`.
    pub legs: (BiSSetMorphism, BiSSetMorphism),
}

impl Evaluated {
    /// The class of the cell `(γ, δ)` of generator `g`.
    pub fn class_of(&self, g: usize, gen_dims: (usize, usize), gamma: &SimplexMap, delta: &SimplexMap) -> usize {
        let (k, j) = (gamma.dom(), delta.dom());
        let w = crate::delta::count_monotone(j, gen_dims.1);
        let local = monotone_rank(gamma) * w + monotone_rank(delta);
        self.quotient.apply(k, j, self.offsets[g][k][j] + local)
    }
}

fn leg_components(p: &CellComplexPresentation, r: &Relation, leg: &Leg, offsets: &[Vec<Vec<usize>>], tn: usize, tl: usize) -> Vec<Vec<Vec<usize>>> {
    let (_, gl) = p.generators[leg.generator];
    (0..=tn)
        .map(|k| {
            let cat = monotone_maps(k, r.n);
            (0..=tl)
                .map(|j| {
                    let sp = monotone_maps(j, r.l);
                    let w = crate::delta::count_monotone(j, gl);
                    cat.iter()
                        .flat_map(|a| sp.iter().map(move |b| (a, b)))
                        .map(|(a, b)| {
                            let ga = compose(&leg.cat, a).unwrap();
                            let gb = compose(&leg.space, b).unwrap();
                            offsets[leg.generator][k][j] + monotone_rank(&ga) * w + monotone_rank(&gb)
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl CellComplexPresentation {
    pub fn empty() -> Self {
        Self { generators: Vec::new(), relations: Vec::new(), map: None }
    }

    fn check(&self) -> Result<()> {
        for (k, r) in self.relations.iter().enumerate() {
            for leg in [&r.left, &r.right] {
                let Some(&(gn, gl)) = self.generators.get(leg.generator) else {
                    return Err(Error::ShapeMismatch(format!("relation {k} refers to an unknown generator")));
                };
                if leg.cat.dom() != r.n || leg.cat.cod() != gn || leg.space.dom() != r.l || leg.space.cod() != gl {
                    return Err(Error::ShapeMismatch(format!("relation {k} has a leg of the wrong shape")));
                }
            }
        }
        if let Some(m) = &self.map {
            if m.images.len() != self.generators.len() {
                return Err(Error::ShapeMismatch("canonical map needs one image per generator".into()));
            }
            for (&(gn, gl), (a, b)) in self.generators.iter().zip(&m.images) {
                if a.dom() != gn || a.cod() != m.n || b.dom() != gl || b.cod() != m.l {
                    return Err(Error::ShapeMismatch("canonical map image of the wrong shape".into()));
                }
            }
        }
        Ok(())
    }

    /// The coequalizer, level by level up to `(trunc_n, trunc_l)`.
    pub fn evaluate(&self, trunc_n: usize, trunc_l: usize) -> Result<Evaluated> {
        self.check()?;
        let gens: Vec<BiSSet> =
            self.generators.iter().map(|&(n, l)| representable(n, l, trunc_n, trunc_l)).collect();
        let (sum, offsets) = coproduct(&gens, trunc_n, trunc_l)?;
        let rels: Vec<BiSSet> = self.relations.iter().map(|r| representable(r.n, r.l, trunc_n, trunc_l)).collect();
        let (rsum, roffsets) = coproduct(&rels, trunc_n, trunc_l)?;
        let mut left = vec![vec![vec![0; 0]; trunc_l + 1]; trunc_n + 1];
        let mut right = left.clone();
        for n in 0..=trunc_n {
            for l in 0..=trunc_l {
                left[n][l] = vec![0; rsum.count(n, l)];
                right[n][l] = vec![0; rsum.count(n, l)];
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            for (leg, out) in [(&r.left, &mut left), (&r.right, &mut right)] {
                let comps = leg_components(self, r, leg, &offsets, trunc_n, trunc_l);
                for n in 0..=trunc_n {
                    for l in 0..=trunc_l {
                        let base = roffsets[k][n][l];
                        out[n][l][base..base + comps[n][l].len()].copy_from_slice(&comps[n][l]);
                    }
                }
            }
        }
        let f = BiSSetMorphism { source: rsum.clone(), target: sum.clone(), components: left };
        let g = BiSSetMorphism { source: rsum, target: sum, components: right };
        let quotient = coequalizer(&f, &g)?;
        Ok(Evaluated { object: quotient.target.clone(), quotient, offsets, legs: (f, g) })
    }

    /// The canonical map of an evaluation into its representable target;
    /// fails if it is not constant on classes.
    pub fn evaluate_map(&self, ev: &Evaluated) -> Result<BiSSetMorphism> {
        let m = self.map.as_ref().ok_or_else(|| Error::ShapeMismatch("presentation has no canonical map".into()))?;
        let (tn, tl) = (ev.object.trunc_n(), ev.object.trunc_l());
        let target = representable(m.n, m.l, tn, tl);
        let mut components = vec![vec![Vec::new(); tl + 1]; tn + 1];
        for n in 0..=tn {
            for l in 0..=tl {
                let mut comp = vec![usize::MAX; ev.object.count(n, l)];
                let w = crate::delta::count_monotone(l, m.l);
                for (g, &(gn, gl)) in self.generators.iter().enumerate() {
                    let (a, b) = &m.images[g];
                    let gw = crate::delta::count_monotone(l, gl);
                    for (ia, ga) in monotone_maps(n, gn).iter().enumerate() {
                        let ca = monotone_rank(&compose(a, ga)?);
                        for (ib, gb) in monotone_maps(l, gl).iter().enumerate() {
                            let image = ca * w + monotone_rank(&compose(b, gb)?);
                            let class = ev.quotient.apply(n, l, ev.offsets[g][n][l] + ia * gw + ib);
                            match comp[class] {
                                usize::MAX => comp[class] = image,
                                prev if prev != image => {
                                    return Err(Error::IllDefined(format!(
                                        "canonical map is not constant on class {class} of ({n}, {l})"
                                    )))
                                }
                                _ => {}
                            }
                        }
                    }
                }
                components[n][l] = comp;
            }
        }
        BiSSetMorphism::new(ev.object.clone(), target, components)
    }

    /// The colimit-preserving extension of `Q` to presentations: generators
    /// `F(n) × Δ[l] ↦ F(2n+1) × Δ[l]`, categorical operators through `Q`.
    pub fn twist(&self) -> Self {
        let leg = |l: &Leg| Leg { generator: l.generator, cat: q_map(&l.cat), space: l.space.clone() };
        Self {
            generators: self.generators.iter().map(|&(n, l)| (2 * n + 1, l)).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation { n: 2 * r.n + 1, l: r.l, left: leg(&r.left), right: leg(&r.right) })
                .collect(),
            map: self.map.as_ref().map(|m| CanonicalMap {
                n: 2 * m.n + 1,
                l: m.l,
                images: m.images.iter().map(|(a, b)| (q_map(a), b.clone())).collect(),
            }),
        }
    }
}

fn point() -> SimplexMap {
    SimplexMap::identity(0)
}

/// `∂F(n)`: copies `F(n-1)` for the faces `0..=n`, glued along `F(n-2)` by
/// `δ^j δ^i = δ^i δ^{j-1}` (`i < j`); `F(-1)` is empty.
pub fn boundary_f(n: usize) -> CellComplexPresentation {
    if n == 0 {
        return CellComplexPresentation {
            generators: Vec::new(),
            relations: Vec::new(),
            map: Some(CanonicalMap { n: 0, l: 0, images: Vec::new() }),
        };
    }
    let generators = vec![(n - 1, 0); n + 1];
    let mut relations = Vec::new();
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                relations.push(Relation {
                    n: n - 2,
                    l: 0,
                    left: Leg { generator: j, cat: face(n - 1, i).unwrap(), space: point() },
                    right: Leg { generator: i, cat: face(n - 1, j - 1).unwrap(), space: point() },
                });
            }
        }
    }
    let images = (0..=n).map(|i| (face(n, i).unwrap(), point())).collect();
    CellComplexPresentation { generators, relations, map: Some(CanonicalMap { n, l: 0, images }) }
}

/// `∂_Tw F(2n+1)`: the twist of `∂F(n)`, with its map into `F(2n+1)`.
pub fn dtw_boundary(n: usize) -> CellComplexPresentation {
    boundary_f(n).twist()
}

/// `F(1) ⊔_{F(0)} F(1)`.
pub fn spine_presentation() -> CellComplexPresentation {
    CellComplexPresentation {
        generators: vec![(1, 0), (1, 0)],
        relations: vec![Relation {
            n: 0,
            l: 0,
            left: Leg { generator: 0, cat: SimplexMap::new(1, vec![1]).unwrap(), space: point() },
            right: Leg { generator: 1, cat: SimplexMap::new(1, vec![0]).unwrap(), space: point() },
        }],
        map: Some(CanonicalMap {
            n: 2,
            l: 0,
            images: vec![(SimplexMap::new(2, vec![0, 1]).unwrap(), point()), (SimplexMap::new(2, vec![1, 2]).unwrap(), point())],
        }),
    }
}

/// `∂_Tw F(2k+1) ⊔_{∂F(k) ⊔ ∂F(k)} (F(k) ⊔ F(k))` with its map into
/// `F(2k+1)`; the two copies of `F(k)` go in by the block inclusions.
///
/// The attaching maps send the face `i` of each block to a cell of
/// `∂_Tw F(2k+1)`, found by searching the generators whose image contains
/// it; all factorizations found must agree in the quotient.
pub fn corner_object(k: usize) -> Result<CellComplexPresentation> {
    let dtw = dtw_boundary(k);
    let dmap = dtw.map.clone().expect("boundary has a canonical map");
    let mut generators = dtw.generators.clone();
    let mut relations = dtw.relations.clone();
    let mut images = dmap.images.clone();
    let blocks = [block_inclusion_left(k), block_inclusion_right(k)];
    if k >= 1 {
        let ev = dtw.evaluate(k - 1, 0)?;
        for (side, block) in blocks.iter().enumerate() {
            let copy = generators.len() + side;
            for i in 0..=k {
                let d = face(k, i)?;
                let cell = compose(block, &d)?;
                let mut found: Vec<(usize, SimplexMap)> = Vec::new();
                for (g, (img, _)) in dmap.images.iter().enumerate() {
                    // γ with img ∘ γ = cell exists iff img's image contains cell's
                    let values: Option<Vec<usize>> =
                        cell.values().iter().map(|v| img.values().iter().position(|w| w == v)).collect();
                    if let Some(values) = values {
                        found.push((g, SimplexMap::new(img.dom(), values)?));
                    }
                }
                let Some((g, gamma)) = found.first().cloned() else {
                    return Err(Error::Factorization(format!("face {i} of block {side} does not factor through the boundary")));
                };
                let classes: Vec<usize> = found
                    .iter()
                    .map(|(g, gm)| ev.class_of(*g, dtw.generators[*g], gm, &point()))
                    .collect();
                if classes.iter().any(|&c| c != classes[0]) {
                    return Err(Error::Factorization(format!("face {i} of block {side} factors in two different ways")));
                }
                relations.push(Relation {
                    n: k - 1,
                    l: 0,
                    left: Leg { generator: copy, cat: d, space: point() },
                    right: Leg { generator: g, cat: gamma, space: point() },
                });
            }
        }
    }
    generators.push((k, 0));
    generators.push((k, 0));
    images.extend(blocks.iter().map(|b| (b.clone(), point())));
    Ok(CellComplexPresentation { generators, relations, map: Some(CanonicalMap { n: 2 * k + 1, l: 0, images }) })
}

/// Whether `Tw` of the evaluated colimit is the colimit of the `Tw`'d
/// diagram, at categorical truncation `trunc_n`.
pub fn tw_preserves_colimit(p: &CellComplexPresentation, trunc_n: usize, trunc_l: usize) -> Result<bool> {
    let ev = p.evaluate(2 * trunc_n + 1, trunc_l)?;
    let direct = tw_bisset(&ev.object, trunc_n)?;
    let f = tw_morphism(&ev.legs.0, trunc_n)?;
    let g = tw_morphism(&ev.legs.1, trunc_n)?;
    Ok(coequalizer(&f, &g)?.target == direct)
}

/// `Map(A, W)`: level `l` is the set of maps `A × Δ[l] -> W`, as tuples of
/// cells `w_g ∈ W_{n_g, l}` (one per generator) satisfying the relations.
/// Generators and relations must be spatially discrete (`l = 0`).
pub fn mapping_sset(a: &CellComplexPresentation, w: &BiSSet, trunc: usize) -> Result<FinSimplicialSet> {
    a.check()?;
    if a.generators.iter().any(|&(_, l)| l != 0) || a.relations.iter().any(|r| r.l != 0) {
        return Err(Error::ShapeMismatch("mapping spaces need spatially discrete generators".into()));
    }
    if w.trunc_l() < trunc {
        return Err(Error::InsufficientTruncation { needed: trunc, available: w.trunc_l() });
    }
    let top = a.generators.iter().map(|&(n, _)| n).max().unwrap_or(0);
    if w.trunc_n() < top {
        return Err(Error::InsufficientTruncation { needed: top, available: w.trunc_n() });
    }
    // relations checked as soon as both their generators are assigned
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); a.generators.len()];
    for (k, r) in a.relations.iter().enumerate() {
        due[r.left.generator.max(r.right.generator)].push(k);
    }
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(trunc + 1);
    for l in 0..=trunc {
        let row = w.row(l);
        let tables: Vec<(Vec<usize>, Vec<usize>)> = a
            .relations
            .iter()
            .map(|r| Ok((row.act_table(&r.left.cat)?, row.act_table(&r.right.cat)?)))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(a.generators.len());
        fn extend(
            a: &CellComplexPresentation,
            w: &BiSSet,
            l: usize,
            due: &[Vec<usize>],
            tables: &[(Vec<usize>, Vec<usize>)],
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let g = cur.len();
            if g == a.generators.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..w.count(a.generators[g].0, l) {
                cur.push(x);
                let ok = due[g].iter().all(|&k| {
                    let r = &a.relations[k];
                    tables[k].0[cur[r.left.generator]] == tables[k].1[cur[r.right.generator]]
                });
                if ok {
                    extend(a, w, l, due, tables, cur, out);
                }
                cur.pop();
            }
        }
        extend(a, w, l, &due, &tables, &mut cur, &mut out);
        levels.push(out);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        levels.iter().map(|lv| lv.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
    let counts = levels.iter().map(Vec::len).collect();
    Ok(FinSimplicialSet::from_operator_fn(trunc, counts, |beta, x| {
        let t: Vec<usize> = levels[beta.cod()][x]
            .iter()
            .zip(&a.generators)
            .map(|(&c, &(n, _))| w.col(n).act(beta, c).unwrap())
            .collect();
        index[beta.dom()][&t]
    }))
}
