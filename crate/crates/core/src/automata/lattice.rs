use super::automaton::StateId;
use super::grammar::Grammar;
use crate::error::{Error, Result};
use crate::scheme::{Tag, TagSequence};
use crate::weights::WeightMatrix;

/// One transition `((i-1, p), t, w[i-1, t], (i, q))` of the lattice; the
/// weight is referenced by `(position - 1, tag)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeTransition {
    /// Position reached, in `1..=n`.
    pub position: usize,
    pub source: (usize, StateId),
    pub tag: Tag,
    pub target: (usize, StateId),
}

/// The intersection of a grammar with the chain automaton of an `n`-word
/// sentence.
///
/// States are `(position, grammar state)` pairs and the transition set is the
/// grammar's, repeated at every position, so dynamic programs run as
/// per-position updates over grammar states.
#[derive(Debug, Clone, Copy)]
pub struct Lattice<'g> {
    grammar: &'g Grammar,
    n: usize,
}

impl<'g> Lattice<'g> {
    pub fn new(grammar: &'g Grammar, n: usize) -> Result<Self> {
        let mut reachable = vec![false; grammar.num_states()];
        reachable[grammar.initial()] = true;
        for _ in 0..n {
            let mut next = vec![false; grammar.num_states()];
            for arc in grammar.arcs() {
                if reachable[arc.source] {
                    next[arc.target] = true;
                }
            }
            reachable = next;
        }
        if !(0..grammar.num_states()).any(|q| reachable[q] && grammar.is_final(q)) {
            return Err(Error::EmptyLanguage(n));
        }
        Ok(Lattice { grammar, n })
    }

    pub fn grammar(&self) -> &'g Grammar {
        self.grammar
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> (usize, StateId) {
        (0, self.grammar.initial())
    }

    pub fn finals(&self) -> impl Iterator<Item = (usize, StateId)> + '_ {
        (0..self.grammar.num_states())
            .filter(|&q| self.grammar.is_final(q))
            .map(|q| (self.n, q))
    }

    pub fn num_states(&self) -> usize {
        (self.n + 1) * self.grammar.num_states()
    }

    pub fn num_transitions(&self) -> usize {
        self.n * self.grammar.arcs().len()
    }

    /// Transitions in topological order (by position).
    pub fn transitions(&self) -> impl Iterator<Item = LatticeTransition> + '_ {
        (1..=self.n).flat_map(move |i| {
            self.grammar.arcs().iter().map(move |a| LatticeTransition {
                position: i,
                source: (i - 1, a.source),
                tag: a.tag,
                target: (i, a.target),
            })
        })
    }

    /// Tag sequences spelled by all accepting paths. Exponential in `n`.
    pub fn accepting_paths(&self) -> Vec<TagSequence> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        self.walk(self.grammar.initial(), &mut prefix, &mut out);
        out
    }

    fn walk(&self, q: StateId, prefix: &mut Vec<Tag>, out: &mut Vec<TagSequence>) {
        if prefix.len() == self.n {
            if self.grammar.is_final(q) {
                out.push(TagSequence::new(prefix.clone()));
            }
            return;
        }
        for tag in Tag::ALL {
            if let Some(r) = self.grammar.next(q, tag) {
                prefix.push(tag);
                self.walk(r, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Sum of the weights along the path spelling `ts`, or `None` if no
    /// accepting path spells it.
    pub fn path_weight(&self, ts: &TagSequence, weights: &WeightMatrix) -> Option<f64> {
        (ts.len() == self.n && self.grammar.accepts(ts.as_slice())).then(|| weights.score(ts))
    }
}

/// Builds the lattice of `grammar` for a sentence scored by `weights`.
pub fn intersect<'g>(grammar: &'g Grammar, weights: &WeightMatrix) -> Result<Lattice<'g>> {
    Lattice::new(grammar, weights.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::Mode;

    #[test]
    fn one_word_has_two_paths() {
        let g = Grammar::new(Mode::Semantic);
        let lat = intersect(&g, &WeightMatrix::zeros(1)).unwrap();
        let paths: Vec<String> = lat
            .accepting_paths()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(paths, vec!["CB", "O"]);
    }

    #[test]
    fn transition_count_is_linear() {
        let g = Grammar::new(Mode::Semantic);
        for n in [4, 8, 16] {
            let a = Lattice::new(&g, n).unwrap().num_transitions();
            let b = Lattice::new(&g, 2 * n).unwrap().num_transitions();
            assert_eq!(b, 2 * a);
            assert_eq!(Lattice::new(&g, n).unwrap().transitions().count(), a);
        }
    }

    #[test]
    fn transitions_advance_one_position() {
        let g = Grammar::new(Mode::Structural);
        let lat = Lattice::new(&g, 3).unwrap();
        for t in lat.transitions() {
            assert_eq!(t.source.0 + 1, t.target.0);
            assert_eq!(t.target.0, t.position);
        }
    }

    #[test]
    fn zero_weights_give_zero_path_weights() {
        let g = Grammar::new(Mode::Semantic);
        let w = WeightMatrix::zeros(3);
        let lat = intersect(&g, &w).unwrap();
        for p in lat.accepting_paths() {
            assert_eq!(lat.path_weight(&p, &w), Some(0.0));
        }
    }

    #[test]
    fn empty_language_is_reported() {
        use crate::automata::{Automaton, Label};
        // accepts only "O O"
        let mut a = Automaton::new(3, 0).unwrap();
        a.set_final(2, true).unwrap();
        a.add_transition(0, Label::Tag(Tag::O), 0.0, 1).unwrap();
        a.add_transition(1, Label::Tag(Tag::O), 0.0, 2).unwrap();
        let g = Grammar::from_automaton(a).unwrap();
        assert!(matches!(Lattice::new(&g, 0), Err(Error::EmptyLanguage(0))));
        assert!(Lattice::new(&g, 2).is_ok());
    }
}
