//! Combinatorics of s-tables: RS insertion over coset numbers, column
//! strictness, the component group action on row equivalence classes, the
//! finite dimensionality test, and the RS shape bounds.

pub mod bounds;
pub mod classify;
pub mod diagram;
pub mod entry;
pub mod frame;
pub mod group;
pub mod json;
pub mod oracle;
pub mod rs;
pub mod suites;
pub mod table;

pub use diagram::Diagram;
pub use entry::{Coset, Entry, Label, PmClass, Relation, Sign};
pub use frame::{Pyramid, SFrame};
pub use group::{Generators, LieType, Orbit, OrbitWord, Undefined};
pub use rs::{PartitionShape, Tableau};
pub use table::{RowClass, STable, TableError};
