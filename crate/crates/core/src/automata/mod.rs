//! Weighted finite-state automata over the tag alphabet, the grammar
//! automaton of well-formed tag sequences, and its intersection with a
//! sentence.

mod automaton;
mod grammar;
mod lattice;

pub use automaton::{Automaton, Label, StateId, Transition};
pub use grammar::{grammar_automaton, grammar_automaton_with_epsilon, Grammar, GrammarArc};
pub use lattice::{intersect, Lattice, LatticeTransition};
