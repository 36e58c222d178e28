//! Stable graphs: enumeration, automorphisms and slot pairings.

mod canon;
mod catalog;
mod pairing;
mod shape;
mod stable;

pub use canon::{canonical_form, Canon};
pub use catalog::{catalog, Catalog, CatalogEntry, CATALOG_FORMAT_VERSION};
pub use pairing::{enumerate_pairings, Pairing};
pub use shape::{enumerate_shapes, Shape, ShapeClass, ShapeKey};
pub use stable::{aut_order, enumerate_stable_graphs, label_shape, stable_shapes, GraphClass, StableGraph};
