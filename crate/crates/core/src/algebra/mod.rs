pub mod cover;
pub mod duality;
pub mod finalg;
pub mod homspace;
pub mod ideals;
pub mod iso;
pub mod module;
pub mod presets;
pub mod radical;
pub mod ses;
pub mod star;
pub mod submodule;

pub use cover::{indecomposable_projectives, is_projective, projective_cover, simples, Cover};
pub use duality::{dual, dual_hom};
pub use finalg::{same_algebra, Alg, AlgebraData, FinAlgebra};
pub use homspace::{hom, solve_left, solve_right, Block, HomSpace, LinearSystem};
pub use ideals::{is_injective, is_quasi_frobenius, is_self_injective, left_ideals, quasi_frobenius_report, QfReport};
pub use iso::is_isomorphic;
pub use module::{block_hom, AHom, AModule, ModuleData};
pub use presets::{preset, SAMPLE_PRESETS};
pub use radical::{induced_on_radical_quotient, radical, radical_quotient};
pub use ses::{split_epi_test, split_mono_test, Ses};
pub use star::{star_witness, StarWitness};
pub use submodule::{cokernel, image, kernel, kernel_cokernel_image, pullback, pushout, Quot, Sub};
