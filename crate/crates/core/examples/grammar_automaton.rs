//! Builds the grammar automaton, minimizes it and counts its language.

use discner::automata::grammar_automaton_with_epsilon;
use discner::{intersect, Grammar, Mode, WeightMatrix};

fn main() -> discner::Result<()> {
    for mode in [Mode::Semantic, Mode::Structural] {
        let raw = grammar_automaton_with_epsilon(mode);
        let grammar = Grammar::new(mode);
        let minimal = grammar.automaton().minimize()?;
        println!(
            "{mode:?}: ε-NFA {} states, deterministic {} states / {} arcs, minimal {} states / {} arcs",
            raw.num_states(),
            grammar.num_states(),
            grammar.arcs().len(),
            minimal.num_states(),
            minimal.transitions().len()
        );
        let counts: Vec<usize> = (1..=6)
            .map(|n| {
                intersect(&grammar, &WeightMatrix::zeros(n)).map(|l| l.accepting_paths().len())
            })
            .collect::<discner::Result<_>>()?;
        println!("  well-formed sequences for n = 1..6: {counts:?}");
    }

    let grammar = Grammar::new(Mode::Semantic);
    let lattice = intersect(&grammar, &WeightMatrix::zeros(3))?;
    println!(
        "lattice for n = 3: {} transitions",
        lattice.num_transitions()
    );
    println!(
        "minimal semantic automaton:\n{}",
        grammar.automaton().minimize()?.to_text()
    );
    Ok(())
}
