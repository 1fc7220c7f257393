//! Typed composition of the constructions and extensional comparison of
//! composites.
//!
//! Each construction is typed by the categories it maps between (for
//! example `D` sends cancellative monoids to divisible cancellative ones).
//! Two composites between the same categories are compared by evaluating
//! formal expressions over the source generators in both targets and
//! checking that every pair of expressions gets the same equality verdict.

mod category;
mod compare;
mod expr;
mod paths;

pub use category::{arrow, categories_of, Arrow, CategoryId, TYPING_TABLE};
pub use compare::{compare_maps, compare_paths, full_diagram_check, DiagramOptions, PathReport, PathVerdict};
pub use expr::{evaluate, ExprLanguage, FormalExpr};
pub use paths::{apply_path, enumerate_paths, parse_path, path_end, render_path, typed_ends, Path};
