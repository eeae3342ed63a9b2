//! Constructive vertex partitions: petunia forests, the outerplanar split,
//! the five-coloring of layered planar graphs and the genus peel.

pub mod genus;
pub mod layered;
pub mod outerplanar;
pub mod petunia;

pub use genus::{genus_peel, is_separating_cycle, shortest_nonseparating_cycle, GenusPeel};
pub use layered::{layered_five_coloring, ClaimReport, Color, FiveColoring};
pub use outerplanar::{is_outerplanar, outerplanar_split, OuterplanarSplit};
pub use petunia::{is_petunia, petunia_forest_partition, PetalBlock, PetuniaCertificate};
