//! File formats: trees, labelings (JSON and CSV), orderings and DOT.
//!
//! Every JSON document carries a top-level `"schema": 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::RadioLabeling;
use crate::product::{ProductGraph, ProductVertex};
use crate::tree::Tree;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TreeJson {
    pub fn from_tree(t: &Tree) -> Self {
        Self {
            order: t.order(),
            edges: t.edges().to_vec(),
        }
    }

    pub fn to_tree(&self) -> Result<Tree> {
        Tree::from_edges(self.order, &self.edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub x: usize,
    pub y: usize,
    pub label: i64,
}

/// A labeling together with the factor trees it belongs to, so that it can be
/// verified without extra arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDocument {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<TreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<TreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<ProductVertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<i64>,
    pub labels: Vec<LabelEntry>,
}

impl LabelingDocument {
    pub fn new(g: &ProductGraph, labeling: &RadioLabeling, ordering: Option<&[ProductVertex]>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            t1: Some(TreeJson::from_tree(g.t1())),
            t2: Some(TreeJson::from_tree(g.t2())),
            ordering: ordering.map(<[_]>::to_vec),
            span: Some(labeling.span()),
            labels: label_entries(g, labeling),
        }
    }

    /// Factor trees embedded in the document, if both are present.
    pub fn trees(&self) -> Result<Option<(Tree, Tree)>> {
        match (&self.t1, &self.t2) {
            (Some(a), Some(b)) => Ok(Some((a.to_tree()?, b.to_tree()?))),
            _ => Ok(None),
        }
    }
}

pub fn label_entries(g: &ProductGraph, labeling: &RadioLabeling) -> Vec<LabelEntry> {
    g.vertices()
        .map(|z| LabelEntry {
            x: z.x,
            y: z.y,
            label: labeling.label(g.flat(z)),
        })
        .collect()
}

/// Rebuilds a labeling of `g` from entries in any order. Every vertex must
/// appear exactly once.
pub fn labeling_from_entries(g: &ProductGraph, entries: &[LabelEntry]) -> Result<RadioLabeling> {
    let p = g.order();
    let mut labels: Vec<Option<i64>> = vec![None; p];
    for e in entries {
        let z = ProductVertex::new(e.x, e.y);
        if !g.contains(z) {
            return Err(Error::Parse(format!("{z} is not a vertex of the product")));
        }
        if labels[g.flat(z)].replace(e.label).is_some() {
            return Err(Error::Parse(format!("{z} labeled twice")));
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(id, l)| l.ok_or_else(|| Error::Parse(format!("{} has no label", g.vertex(id)))))
        .collect::<Result<Vec<_>>>()
        .map(RadioLabeling::new)
}

pub fn parse_labeling_json(text: &str) -> Result<LabelingDocument> {
    let doc: LabelingDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("labeling JSON: {e}")))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema {}", doc.schema)));
    }
    Ok(doc)
}

/// `x,y,label` rows, with an optional header line.
pub fn parse_labeling_csv(text: &str) -> Result<Vec<LabelEntry>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (k == 0 && line.starts_with('x')) {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!("line {}: expected x,y,label", k + 1)));
        }
        let bad = |s: &str| Error::Parse(format!("line {}: bad number {s:?}", k + 1));
        out.push(LabelEntry {
            x: cols[0].parse().map_err(|_| bad(cols[0]))?,
            y: cols[1].parse().map_err(|_| bad(cols[1]))?,
            label: cols[2].parse().map_err(|_| bad(cols[2]))?,
        });
    }
    Ok(out)
}

pub fn labeling_csv(g: &ProductGraph, labeling: &RadioLabeling) -> String {
    let mut out = String::from("x,y,label\n");
    for e in label_entries(g, labeling) {
        out.push_str(&format!("{},{},{}\n", e.x, e.y, e.label));
    }
    out
}

/// An ordering file is either a JSON array of `[x, y]` pairs or one flat
/// vertex id per line.
pub fn parse_ordering(g: &ProductGraph, text: &str) -> Result<Vec<ProductVertex>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let pairs: Vec<(usize, usize)> = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("ordering JSON: {e}")))?;
        return Ok(pairs.into_iter().map(|(x, y)| ProductVertex::new(x, y)).collect());
    }
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let id: usize = l
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex id {l:?}")))?;
            if id >= g.order() {
                return Err(Error::BadOrdering(format!("flat id {id} out of range {}", g.order())));
            }
            Ok(g.vertex(id))
        })
        .collect()
}

/// DOT text with vertices named `"(i,j)"`; with a labeling, each vertex gets
/// a `label` attribute.
pub fn to_dot(g: &ProductGraph, labeling: Option<&RadioLabeling>) -> String {
    let mut out = String::from("graph product {\n");
    for z in g.vertices() {
        match labeling {
            Some(lab) => out.push_str(&format!("  \"{z}\" [label=\"{}\"];\n", lab.label(g.flat(z)))),
            None => out.push_str(&format!("  \"{z}\";\n")),
        }
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.vertex(a), g.vertex(b)));
    }
    out.push_str("}\n");
    out
}
