//! JSON documents for categories, simplicial sets and groupoid-valued spaces.
//!
//! Every document carries a `"kind"` tag. Identifiers are strings; they are
//! mapped to dense indices in order of appearance. Serialization always
//! emits index order, so `parse(serialize(x)) == x`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use twarrow_core::delta::{compose, degeneracy, face, monotone_rank, SimplexMap};
use twarrow_core::fincat::{CategoryBuilder, FinCategory};
use twarrow_core::gss::{classifying_diagram, discrete_embedding, GroupoidSimplicialSpace};
use twarrow_core::sset::{coequalizer, coproduct_with_injections, nerve, standard_simplex, FinSimplicialSet, SSetMorphism};

use crate::CliError;

/// A category: objects, non-identity morphisms, and the composites of
/// composable non-identity pairs as `[g, f, g∘f]`. Identities are implicit
/// and named `id_<object>`. `inverses` is optional and checked if present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub compositions: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverses: Vec<[String; 2]>,
    /// Written by `tw`; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A simplicial set, either as generator tables (`counts`, `faces`,
/// `degeneracies`) or by its nondegenerate simplices (`simplices`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetDoc {
    pub trunc: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<usize>>,
    /// `faces[n][i][x] = d_i x`; `faces[0]` is empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<Vec<usize>>>>,
    /// `degeneracies[n][j][x] = s_j x` for `n < trunc`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<SimplexDoc>>,
    /// Written by `tw`; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<serde_json::Value>,
}

/// A nondegenerate simplex. `faces[i]` names `d_i` of it, either a simplex
/// name or a degeneracy of one such as `"s0(a)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDoc {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<String>,
}

/// A groupoid-valued space given by a construction header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CategoryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sset: Option<SSetDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Level `n` is the groupoid of functors `[n] -> C` and natural isomorphisms.
    Classifying,
    /// The nerve of `C`, levelwise discrete.
    DiscreteNerve,
    /// A simplicial set, levelwise discrete.
    Discrete,
}

/// Any input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Category(CategoryDoc),
    Sset(SSetDoc),
    Space(SpaceDoc),
}

/// A parsed input.
#[derive(Clone, Debug)]
pub enum Input {
    Category(FinCategory),
    Sset(FinSimplicialSet),
    Space(SpaceDoc),
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Parses and builds the object a document describes. Semantic errors point
/// at the first occurrence of the offending identifier.
pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let located = |e: DocError| e.locate(text);
    match parse_document(text)? {
        Document::Category(c) => category_from_doc(&c).map(Input::Category).map_err(located),
        Document::Sset(s) => sset_from_doc(&s).map(Input::Sset).map_err(located),
        Document::Space(s) => {
            space_parts(&s).map_err(located)?;
            Ok(Input::Space(s))
        }
    }
}

/// A semantic error, optionally tied to an identifier in the source text.
#[derive(Clone, Debug)]
pub struct DocError {
    pub ident: Option<String>,
    pub message: String,
}

impl DocError {
    fn new(message: impl Into<String>) -> Self {
        Self { ident: None, message: message.into() }
    }

    fn at(ident: &str, message: impl Into<String>) -> Self {
        Self { ident: Some(ident.to_string()), message: message.into() }
    }

    fn locate(self, text: &str) -> CliError {
        let (line, column) = self
            .ident
            .as_deref()
            .and_then(|id| find_quoted(text, id))
            .unwrap_or((0, 0));
        CliError::Parse { line, column, message: self.message }
    }
}

impl From<twarrow_core::Error> for DocError {
    fn from(e: twarrow_core::Error) -> Self {
        Self::new(e.to_string())
    }
}

fn find_quoted(text: &str, ident: &str) -> Option<(usize, usize)> {
    let needle = serde_json::to_string(ident).ok()?;
    let offset = text.find(&needle)?;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |p| offset - p - 1) + 1;
    Some((line, column))
}

pub fn category_from_doc(doc: &CategoryDoc) -> Result<FinCategory, DocError> {
    let objects: HashMap<&str, usize> = doc.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    if objects.len() != doc.objects.len() {
        return Err(DocError::new("duplicate object name"));
    }
    let mut b = CategoryBuilder::new(doc.objects.iter().cloned());
    let object = |name: &str| objects.get(name).copied().ok_or_else(|| DocError::at(name, format!("unknown object {name:?}")));
    let mut morphisms: HashMap<String, usize> =
        doc.objects.iter().enumerate().map(|(i, o)| (format!("id_{o}"), i)).collect();
    for m in &doc.morphisms {
        let (s, t) = (object(&m.source)?, object(&m.target)?);
        if morphisms.contains_key(&m.name) {
            return Err(DocError::at(&m.name, format!("duplicate morphism name {:?}", m.name)));
        }
        morphisms.insert(m.name.clone(), b.add_morphism(m.name.clone(), s, t));
    }
    let morphism =
        |name: &str| morphisms.get(name).copied().ok_or_else(|| DocError::at(name, format!("unknown morphism {name:?}")));
    for [g, f, h] in &doc.compositions {
        b.set_composite(morphism(g)?, morphism(f)?, morphism(h)?);
    }
    let cat = b.build()?;
    for [f, g] in &doc.inverses {
        let (f_i, g_i) = (morphism(f)?, morphism(g)?);
        if cat.compose(g_i, f_i) != Some(cat.source(f_i)) || cat.compose(f_i, g_i) != Some(cat.target(f_i)) {
            return Err(DocError::at(f, format!("{f:?} and {g:?} are not inverse")));
        }
    }
    Ok(cat)
}

pub fn category_to_doc(cat: &FinCategory) -> CategoryDoc {
    let non_identity = || cat.morphisms().filter(|&f| !cat.is_identity(f));
    let name = |f: usize| cat.morphism_name(f).to_string();
    let mut compositions = Vec::new();
    for g in non_identity() {
        for f in non_identity() {
            if let Some(h) = cat.compose(g, f) {
                compositions.push([name(g), name(f), name(h)]);
            }
        }
    }
    let inverses = non_identity()
        .filter_map(|f| cat.inverse(f).map(|g| [name(f), name(g)]))
        .collect();
    CategoryDoc {
        objects: cat.object_names().to_vec(),
        morphisms: non_identity()
            .map(|f| MorphismDoc {
                name: name(f),
                source: cat.object_name(cat.source(f)).to_string(),
                target: cat.object_name(cat.target(f)).to_string(),
            })
            .collect(),
        compositions,
        inverses,
        projection: None,
    }
}

pub fn sset_from_doc(doc: &SSetDoc) -> Result<FinSimplicialSet, DocError> {
    match (&doc.counts, &doc.faces, &doc.degeneracies, &doc.simplices) {
        (Some(c), Some(f), Some(d), None) => Ok(FinSimplicialSet::from_tables(doc.trunc, c.clone(), f.clone(), d.clone())?),
        (None, None, None, Some(s)) => sset_from_simplices(doc.trunc, s),
        (None, None, None, None) => Ok(FinSimplicialSet::empty(doc.trunc)),
        _ => Err(DocError::new("give either counts, faces and degeneracies, or simplices")),
    }
}

pub fn sset_to_doc(s: &FinSimplicialSet) -> SSetDoc {
    let t = s.trunc();
    SSetDoc {
        trunc: t,
        counts: Some(s.counts().to_vec()),
        faces: Some(
            (0..=t)
                .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| s.face_table(n, i).to_vec()).collect() })
                .collect(),
        ),
        degeneracies: Some((0..t).map(|n| (0..=n).map(|j| s.degeneracy_table(n, j).to_vec()).collect()).collect()),
        simplices: None,
        projection: None,
    }
}

/// `(generator, σ)` with `σ: [m] -> [dim generator]` surjective: the cell
/// `S(σ)(generator)`.
fn parse_face_expr(expr: &str, names: &HashMap<&str, usize>, dims: &[usize]) -> Result<(usize, SimplexMap), DocError> {
    let expr = expr.trim();
    if let Some(rest) = expr.strip_prefix('s') {
        if let Some(open) = rest.find('(') {
            if let (Ok(j), true) = (rest[..open].parse::<usize>(), rest.ends_with(')')) {
                let (g, tau) = parse_face_expr(&rest[open + 1..rest.len() - 1], names, dims)?;
                let sigma = degeneracy(tau.dom(), j).map_err(|_| DocError::new(format!("degeneracy index too large in {expr:?}")))?;
                return Ok((g, compose(&tau, &sigma)?));
            }
        }
    }
    let g = *names.get(expr).ok_or_else(|| DocError::at(expr, format!("unknown simplex {expr:?}")))?;
    Ok((g, SimplexMap::identity(dims[g])))
}

/// The simplicial set generated by nondegenerate simplices glued along
/// their declared faces: a coequalizer of `∐ Δ[n-1] ⇉ ∐ Δ[dim]`.
fn sset_from_simplices(trunc: usize, simplices: &[SimplexDoc]) -> Result<FinSimplicialSet, DocError> {
    if simplices.is_empty() {
        return Ok(FinSimplicialSet::empty(trunc));
    }
    let names: HashMap<&str, usize> = simplices.iter().enumerate().map(|(i, s)| (s.name.as_str(), i)).collect();
    if names.len() != simplices.len() {
        return Err(DocError::new("duplicate simplex name"));
    }
    let dims: Vec<usize> = simplices.iter().map(|s| s.dim).collect();
    for s in simplices {
        if s.dim > trunc {
            return Err(DocError::at(&s.name, format!("simplex {:?} lies above the truncation", s.name)));
        }
        let expected = if s.dim == 0 { 0 } else { s.dim + 1 };
        if s.faces.len() != expected {
            return Err(DocError::at(&s.name, format!("simplex {:?} needs {expected} faces", s.name)));
        }
    }
    let (sum, inj) = coproduct_with_injections(&dims.iter().map(|&d| standard_simplex(d, trunc)).collect::<Vec<_>>())?;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (x, s) in simplices.iter().enumerate() {
        for (i, expr) in s.faces.iter().enumerate() {
            let (g, sigma) = parse_face_expr(expr, &names, &dims)?;
            if sigma.dom() != s.dim - 1 {
                return Err(DocError::at(&s.name, format!("face {i} of {:?} has dimension {}", s.name, sigma.dom())));
            }
            let here = inj[x].apply(s.dim - 1, monotone_rank(&face(s.dim, i)?));
            let there = inj[g].apply(s.dim - 1, monotone_rank(&sigma));
            pairs.push((s.dim - 1, here, there));
        }
    }
    if pairs.is_empty() {
        return Ok(sum);
    }
    let rel_parts: Vec<FinSimplicialSet> = pairs.iter().map(|&(n, _, _)| standard_simplex(n, trunc)).collect();
    let (rsum, _) = coproduct_with_injections(&rel_parts)?;
    let leg = |pick: fn(&(usize, usize, usize)) -> usize| -> Result<SSetMorphism, DocError> {
        let mut components = vec![Vec::new(); trunc + 1];
        for p in &pairs {
            let y = twarrow_core::sset::yoneda_map(&sum, p.0, pick(p))?;
            for (k, c) in components.iter_mut().enumerate() {
                c.extend_from_slice(&y.components[k]);
            }
        }
        Ok(SSetMorphism::new(rsum.clone(), sum.clone(), components)?)
    };
    let q = coequalizer(&leg(|p| p.1)?, &leg(|p| p.2)?)?;
    Ok(q.target)
}

/// The truncation a space document asks for, if it fixes one.
pub fn space_fixed_trunc(doc: &SpaceDoc) -> Option<usize> {
    match doc.construction {
        Construction::Discrete => doc.sset.as_ref().map(|s| s.trunc),
        _ => doc.trunc,
    }
}

enum SpaceParts {
    Category(FinCategory),
    Sset(FinSimplicialSet),
}

fn space_parts(doc: &SpaceDoc) -> Result<SpaceParts, DocError> {
    match (doc.construction, &doc.category, &doc.sset) {
        (Construction::Classifying | Construction::DiscreteNerve, Some(c), None) => {
            Ok(SpaceParts::Category(category_from_doc(c)?))
        }
        (Construction::Discrete, None, Some(s)) => {
            if doc.trunc.is_some_and(|t| t != s.trunc) {
                return Err(DocError::new("a discrete space takes its truncation from the simplicial set"));
            }
            Ok(SpaceParts::Sset(sset_from_doc(s)?))
        }
        (Construction::Discrete, _, _) => Err(DocError::new("a discrete space needs exactly an \"sset\" member")),
        _ => Err(DocError::new("this construction needs exactly a \"category\" member")),
    }
}

/// The category a space document was built from, if any.
pub fn space_category(doc: &SpaceDoc) -> Result<Option<FinCategory>, CliError> {
    match space_parts(doc).map_err(|e| CliError::Usage(e.message))? {
        SpaceParts::Category(c) => Ok(Some(c)),
        SpaceParts::Sset(_) => Ok(None),
    }
}

/// Builds the space at truncation `max(requested, needed)`. Spaces whose
/// truncation is fixed by their data fail loudly if it is below `needed`.
pub fn build_space(doc: &SpaceDoc, requested: usize, needed: usize) -> Result<GroupoidSimplicialSpace, CliError> {
    let parts = space_parts(doc).map_err(|e| CliError::Usage(e.message))?;
    match parts {
        SpaceParts::Sset(s) => {
            if s.trunc() < needed {
                return Err(twarrow_core::Error::InsufficientTruncation { needed, available: s.trunc() }.into());
            }
            Ok(discrete_embedding(&s))
        }
        SpaceParts::Category(c) => {
            let trunc = doc.trunc.unwrap_or(requested).max(needed);
            Ok(match doc.construction {
                Construction::Classifying => classifying_diagram(&c, trunc),
                _ => discrete_embedding(&nerve(&c, trunc)),
            })
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn category_document(cat: &FinCategory) -> Document {
    Document::Category(category_to_doc(cat))
}

pub fn sset_document(s: &FinSimplicialSet) -> Document {
    Document::Sset(sset_to_doc(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use twarrow_core::fincat::{category_zoo, linear_order};
    use twarrow_core::sset::{find_iso, spine, sset_zoo};

    #[test]
    fn categories_round_trip() {
        for (name, c) in category_zoo() {
            let text = to_json(&category_document(&c));
            let Input::Category(back) = parse_input(&text).unwrap() else { panic!("{name}") };
            assert_eq!(back, c, "{name}");
        }
    }

    #[test]
    fn ssets_round_trip() {
        for (name, s) in sset_zoo(3) {
            let text = to_json(&sset_document(&s));
            let Input::Sset(back) = parse_input(&text).unwrap() else { panic!("{name}") };
            assert_eq!(back, s, "{name}");
        }
    }

    #[test]
    fn simplices_form() {
        let text = r#"{"kind": "sset", "trunc": 3, "simplices": [
            {"name": "0", "dim": 0}, {"name": "1", "dim": 0}, {"name": "2", "dim": 0},
            {"name": "a", "dim": 1, "faces": ["1", "0"]},
            {"name": "b", "dim": 1, "faces": ["2", "1"]}]}"#;
        let Input::Sset(s) = parse_input(text).unwrap() else { panic!() };
        assert!(find_iso(&s, &spine(3)).is_some());

        // a 2-simplex with a degenerate face
        let text = r#"{"kind": "sset", "trunc": 2, "simplices": [
            {"name": "x", "dim": 0}, {"name": "e", "dim": 1, "faces": ["x", "x"]},
            {"name": "t", "dim": 2, "faces": ["e", "e", "s0(x)"]}]}"#;
        let Input::Sset(s) = parse_input(text).unwrap() else { panic!() };
        assert_eq!(s.counts(), &[1, 2, 4]);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_input("{\"kind\": \"category\",\n \"objects\": [\"a\",]}").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err}");
        let text = "{\"kind\": \"category\", \"objects\": [\"a\"],\n  \"morphisms\": [{\"name\": \"f\", \"source\": \"a\", \"target\": \"b\"}]}";
        let err = parse_input(text).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, column: 56, .. }), "{err}");
    }

    #[test]
    fn inverse_table_is_checked() {
        let mut doc = category_to_doc(&linear_order(1));
        doc.inverses.push(["0->1".into(), "0->1".into()]);
        assert!(category_from_doc(&doc).is_err());
    }
}
