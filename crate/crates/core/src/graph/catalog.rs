//! JSON dump of stable-graph classes.

use serde::{Deserialize, Serialize};

use super::stable::GraphClass;

pub const CATALOG_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogEntry {
    pub genus_labels: Vec<u32>,
    /// Edges as pairs of half-edge indices.
    pub edges: Vec<(usize, usize)>,
    /// Owning vertex of every half-edge.
    pub half_edge_owner: Vec<usize>,
    /// `leg_labels[i]` is the half-edge carrying label `i + 1`.
    pub leg_labels: Vec<usize>,
    /// Decimal string so that large orders survive any JSON reader.
    pub aut_order: String,
    pub betti: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Catalog {
    pub format_version: u32,
    pub g: u32,
    pub n: u32,
    pub classes: Vec<CatalogEntry>,
}

pub fn catalog(g: u32, n: u32, classes: &[GraphClass]) -> Catalog {
    Catalog {
        format_version: CATALOG_FORMAT_VERSION,
        g,
        n,
        classes: classes
            .iter()
            .map(|c| CatalogEntry {
                genus_labels: c.canonical.genus.clone(),
                edges: c.canonical.edges.clone(),
                half_edge_owner: c.canonical.owner.clone(),
                leg_labels: c.canonical.legs.clone(),
                aut_order: c.aut_order.to_string(),
                betti: c.canonical.betti(),
            })
            .collect(),
    }
}
