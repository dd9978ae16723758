pub mod automorphism;
pub mod catalog;
pub mod claims;
pub mod cover;
pub mod dehn;
pub mod error;
pub mod homology;
pub mod lantern;
pub mod mcg;
pub mod model;
pub mod presentation;
pub mod word;

pub use automorphism::Automorphism;
pub use error::{McgError, Result};
pub use presentation::{CyclicWord, SurfacePresentation};
pub use word::{free_reduce, Letter, Word};
pub use catalog::{GeneratorCatalog, GeneratorKind, GeneratorSymbol, MappingClassWord, NamedCurve};
pub use mcg::{curve_image, curves_equal, is_inner, mcg_equal, order_of, CurveClass, InnerVerdict, OrderVerdict};
