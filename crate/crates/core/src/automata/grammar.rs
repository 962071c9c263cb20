use super::automaton::{Automaton, Label, StateId};
use crate::error::{Error, Result};
use crate::scheme::{Mode, Tag};

// States of the automaton with ε-transitions, 1-based as in the drawing of the
// construction; the id of state k is k - 1.
const OUTSIDE: StateId = 0; // 1: between mentions
const CONTINUOUS: StateId = 1; // 2: inside a continuous mention
const VALID_X: StateId = 2; // 3: set already valid, in an x component
const VALID_Y: StateId = 3; // 4: set already valid, in a y component
const X_ONLY_COMP: StateId = 4; // 5: x-first set, later x component, no y yet
const X_ONLY_GAP: StateId = 5; // 6: x-first set, gap, no y yet
const X_FIRST: StateId = 6; // 7: first component of an x-first set
const X_THEN_Y: StateId = 7; // 8: y component right after the first x one
const VALID_GAP: StateId = 8; // 9: set already valid, in a gap
const Y_ONLY_COMP: StateId = 9; // 10: mirror of 5
const Y_ONLY_GAP: StateId = 10; // 11: mirror of 6
const Y_FIRST: StateId = 11; // 12: mirror of 7
const Y_THEN_X: StateId = 12; // 13: mirror of 8
const NUM_STATES: usize = 13;

/// The grammar automaton before ε-removal: thirteen states, ε-transitions
/// from the end of a mention back to the outside state.
///
/// Structural mode drops the transition that opens a set with a `y`
/// component.
pub fn grammar_automaton_with_epsilon(mode: Mode) -> Automaton {
    use Tag::*;
    let mut a = Automaton::new(NUM_STATES, OUTSIDE).expect("initial state exists");
    a.set_final(OUTSIDE, true).expect("state exists");

    let mut arcs: Vec<(StateId, Tag, StateId)> = vec![
        (OUTSIDE, O, OUTSIDE),
        (OUTSIDE, Cb, CONTINUOUS),
        (OUTSIDE, DbBx, X_FIRST),
        (CONTINUOUS, Ci, CONTINUOUS),
        // x-first sets
        (X_FIRST, DiIx, X_FIRST),
        (X_FIRST, DiBx, X_ONLY_COMP),
        (X_FIRST, DiO, X_ONLY_GAP),
        (X_FIRST, DiBy, X_THEN_Y),
        (X_ONLY_COMP, DiIx, X_ONLY_COMP),
        (X_ONLY_COMP, DiBx, X_ONLY_COMP),
        (X_ONLY_COMP, DiO, X_ONLY_GAP),
        (X_ONLY_COMP, DiBy, VALID_Y),
        (X_ONLY_GAP, DiO, X_ONLY_GAP),
        (X_ONLY_GAP, DiBx, X_ONLY_COMP),
        (X_ONLY_GAP, DiBy, VALID_Y),
        (X_THEN_Y, DiIy, X_THEN_Y),
        (X_THEN_Y, DiBy, VALID_Y),
        (X_THEN_Y, DiBx, VALID_X),
        (X_THEN_Y, DiO, VALID_GAP),
        // sets that may end
        (VALID_X, DiIx, VALID_X),
        (VALID_X, DiBx, VALID_X),
        (VALID_X, DiBy, VALID_Y),
        (VALID_X, DiO, VALID_GAP),
        (VALID_Y, DiIy, VALID_Y),
        (VALID_Y, DiBy, VALID_Y),
        (VALID_Y, DiBx, VALID_X),
        (VALID_Y, DiO, VALID_GAP),
        (VALID_GAP, DiO, VALID_GAP),
        (VALID_GAP, DiBx, VALID_X),
        (VALID_GAP, DiBy, VALID_Y),
        // y-first sets
        (Y_FIRST, DiIy, Y_FIRST),
        (Y_FIRST, DiBy, Y_ONLY_COMP),
        (Y_FIRST, DiO, Y_ONLY_GAP),
        (Y_FIRST, DiBx, Y_THEN_X),
        (Y_ONLY_COMP, DiIy, Y_ONLY_COMP),
        (Y_ONLY_COMP, DiBy, Y_ONLY_COMP),
        (Y_ONLY_COMP, DiO, Y_ONLY_GAP),
        (Y_ONLY_COMP, DiBx, VALID_X),
        (Y_ONLY_GAP, DiO, Y_ONLY_GAP),
        (Y_ONLY_GAP, DiBy, Y_ONLY_COMP),
        (Y_ONLY_GAP, DiBx, VALID_X),
        (Y_THEN_X, DiIx, Y_THEN_X),
        (Y_THEN_X, DiBx, VALID_X),
        (Y_THEN_X, DiBy, VALID_Y),
        (Y_THEN_X, DiO, VALID_GAP),
    ];
    if mode == Mode::Semantic {
        arcs.push((OUTSIDE, DbBy, Y_FIRST));
    }
    for (src, tag, dst) in arcs {
        a.add_transition(src, Label::Tag(tag), 0.0, dst)
            .expect("states exist");
    }
    for src in [CONTINUOUS, VALID_X, VALID_Y] {
        a.add_transition(src, Label::Epsilon, 0.0, OUTSIDE)
            .expect("states exist");
    }
    a
}

/// ε-free deterministic grammar automaton, all weights 0, whose language is
/// the set of well-formed tag sequences (of the given mode).
pub fn grammar_automaton(mode: Mode) -> Automaton {
    grammar_automaton_with_epsilon(mode)
        .remove_epsilon()
        .and_then(|a| a.determinize())
        .expect("the grammar is unweighted")
}

/// One transition of a compiled grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrammarArc {
    pub source: StateId,
    pub tag: Tag,
    pub target: StateId,
}

/// A deterministic grammar in table form, shared read-only by every lattice.
#[derive(Debug, Clone)]
pub struct Grammar {
    automaton: Automaton,
    next: Vec<[Option<StateId>; Tag::COUNT]>,
    arcs: Vec<GrammarArc>,
    incoming: Vec<Vec<GrammarArc>>,
    finals: Vec<bool>,
    mode: Option<Mode>,
}

impl Grammar {
    pub fn new(mode: Mode) -> Self {
        let mut g = Grammar::from_automaton(grammar_automaton(mode))
            .expect("the grammar automaton is deterministic");
        g.mode = Some(mode);
        g
    }

    /// Compiles any deterministic automaton; weights are ignored.
    pub fn from_automaton(automaton: Automaton) -> Result<Self> {
        if !automaton.is_deterministic() {
            return Err(Error::Automaton(
                "grammar must be ε-free and deterministic".into(),
            ));
        }
        let n = automaton.num_states();
        let mut next = vec![[None; Tag::COUNT]; n];
        let mut arcs = Vec::with_capacity(automaton.transitions().len());
        for t in automaton.transitions() {
            let Label::Tag(tag) = t.label else {
                unreachable!("ε-free")
            };
            next[t.source][tag.index()] = Some(t.target);
            arcs.push(GrammarArc {
                source: t.source,
                tag,
                target: t.target,
            });
        }
        arcs.sort_by_key(|a| (a.source, a.tag, a.target));
        let mut incoming = vec![Vec::new(); n];
        for a in &arcs {
            incoming[a.target].push(*a);
        }
        let finals = (0..n).map(|q| automaton.is_final(q)).collect();
        Ok(Grammar {
            automaton,
            next,
            arcs,
            incoming,
            finals,
            mode: None,
        })
    }

    /// Mode the grammar was built for, if it is one of the built-in ones.
    pub fn mode(&self) -> Option<Mode> {
        self.mode
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn initial(&self) -> StateId {
        self.automaton.initial()
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: StateId, tag: Tag) -> Option<StateId> {
        self.next[q][tag.index()]
    }

    /// Arcs sorted by `(source, tag)`.
    pub fn arcs(&self) -> &[GrammarArc] {
        &self.arcs
    }

    pub fn incoming(&self, q: StateId) -> &[GrammarArc] {
        &self.incoming[q]
    }

    pub fn accepts(&self, tags: &[Tag]) -> bool {
        let mut q = self.initial();
        for &t in tags {
            match self.next(q, t) {
                Some(r) => q = r,
                None => return false,
            }
        }
        self.finals[q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{is_well_formed, is_well_formed_in, TagSequence};

    fn brute_force(n: usize, mode: Mode) -> std::collections::BTreeSet<TagSequence> {
        let total = Tag::COUNT.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut idx = vec![0; n];
                for slot in idx.iter_mut().rev() {
                    *slot = code % Tag::COUNT;
                    code /= Tag::COUNT;
                }
                TagSequence::from_indices(&idx).unwrap()
            })
            .filter(|ts| is_well_formed_in(ts, mode))
            .collect()
    }

    #[test]
    fn short_languages() {
        let g = grammar_automaton(Mode::Semantic);
        let l1: Vec<String> = g.language(1).iter().map(|t| t.to_string()).collect();
        assert_eq!(l1, vec!["CB", "O"]);
        let l2: Vec<String> = g.language(2).iter().map(|t| t.to_string()).collect();
        assert_eq!(l2, vec!["CB CB", "CB CI", "CB O", "O CB", "O O"]);
    }

    #[test]
    fn matches_rules_up_to_four_words() {
        for mode in [Mode::Semantic, Mode::Structural] {
            let raw = grammar_automaton_with_epsilon(mode);
            let g = grammar_automaton(mode);
            assert!(g.is_deterministic());
            for n in 0..=4 {
                let want = brute_force(n, mode);
                assert_eq!(g.language(n), want, "n = {n}, {mode:?}");
                assert_eq!(raw.language(n), want, "raw, n = {n}, {mode:?}");
            }
        }
    }

    #[test]
    fn compiled_grammar_agrees_with_rules() {
        let g = Grammar::new(Mode::Semantic);
        for ts in brute_force(3, Mode::Semantic) {
            assert!(g.accepts(ts.as_slice()));
        }
        for s in ["DB-Bx DI-By", "O CI", "DB-Bx DI-By DI-O"] {
            let ts: TagSequence = s.parse().unwrap();
            assert!(!is_well_formed(&ts));
            assert!(!g.accepts(ts.as_slice()), "{s}");
        }
    }

    #[test]
    fn structural_language_is_a_subset() {
        for n in 0..=4 {
            let sem = grammar_automaton(Mode::Semantic).language(n);
            let st = grammar_automaton(Mode::Structural).language(n);
            assert!(st.is_subset(&sem));
        }
    }

    #[test]
    fn state_counts() {
        let raw = grammar_automaton_with_epsilon(Mode::Semantic);
        assert_eq!(raw.num_states(), 13);
        let min = grammar_automaton(Mode::Semantic).minimize().unwrap();
        assert_eq!(min.num_states(), 13);
        let min = grammar_automaton(Mode::Structural).minimize().unwrap();
        assert_eq!(min.num_states(), 9);
    }
}
