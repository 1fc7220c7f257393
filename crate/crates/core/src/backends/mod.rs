//! Concrete input backends and the direct product.

pub mod affine;
pub mod cayley;
pub mod presented;
pub mod product;

pub use affine::Affine;
pub use cayley::Cayley;
pub use presented::{Presented, Relation};
pub use product::Product;
