//! Words, Whitehead automorphisms and Stallings foldings in free groups of rank 2 to 4.

mod fold;
mod whitehead;
mod word;

pub use fold::{contains, fold, is_basis_tuple, FoldedGraph};
pub use whitehead::{
    apply_whitehead, is_primitive, primitivity_trace, substitute, PrimitivityTrace, TraceStep,
    WhiteheadAut,
};
pub use word::{cyclic_reduce, letter_char, parse_letter, CyclicWord, Letter, Word, MAX_RANK};
