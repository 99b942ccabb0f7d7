pub mod certificate;
pub mod completion;
pub mod realize;
pub mod replace;
pub mod roof;
pub mod subcat;

pub use subcat::{checked_cocover, checked_cover, ELocal, Everything, IdempotentCut, InSub, Projectives, Subcategory, Zero};
pub use replace::{coreplace_in_subcategory, coreplace_with, replace_in_subcategory, replace_with, ReplaceOptions, Replacement};
pub use roof::{hom_d, hproj_replace, HomD, Hproj, HprojMode, RoofMorphism};
pub use realize::{realize_from_truncations, Realization};
pub use certificate::{certify_bounded_acyclic, hom_k_vanishing, hom_k_vanishing_projective, verify_certificate, CertFailure, Certificate, Vanishing};
pub use completion::{complete_subcomplex_cone, complete_subcomplex_tot, Completer, Completion, ConeCompleter, TotCompleter};
