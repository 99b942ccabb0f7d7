//! Projective and injective resolutions, Ext, shortening and Cartan–Eilenberg resolutions.

pub mod ce;
pub mod ext;
pub mod gldim;
pub mod injective;
pub mod projective;
pub mod shorten;

pub use ce::{ce_resolution, horseshoe, CeResolution, Horseshoe};
pub use ext::{ext, ext1_to_ses, ext_with, ses_to_ext1, ExtClass, ExtGroup};
pub use gldim::{gldim_bounded, GlDim};
pub use injective::injective_resolution;
pub use projective::{comparison_map, minimal_projective_resolution, resolve_with, CoverProvider, MinimalCovers, PaddedCovers, Periodicity, Resolution};
pub use shorten::{shorten_resolution, shorten_with, Shortened};
