//! Bounded cochain complexes and the homotopy category.

pub mod cohomology;
#[allow(clippy::module_inception)]
pub mod complex;
pub mod cone;
pub mod homotopy;
pub mod sub;
pub mod truncate;

pub use cohomology::{cohomology, cohomology_table, induced_on_cohomology, is_acyclic, Cohomology, CohomologyEntry};
pub use complex::{joint_window, signed, ChainMap, Complex, ComplexData, Homotopy, MapData};
pub use cone::{cone, les_holds, sum_inclusions, tot_ses, ComplexSes, Cone};
pub use homotopy::{cocycle_inclusions_split, hom_k, homotopy_inverse, homotopy_solve, lift_through, is_contractible, is_null_homotopic, is_quasi_iso, HomK};
pub use truncate::{truncate_ge, truncate_le, Truncation};
