use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scheme::{Tag, TagSequence};

pub type StateId = usize;

/// A transition label: a tag or the empty string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Epsilon,
    Tag(Tag),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Epsilon => f.write_str("<eps>"),
            Label::Tag(t) => f.write_str(t.as_str()),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "<eps>" {
            Ok(Label::Epsilon)
        } else {
            s.parse().map(Label::Tag)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub source: StateId,
    pub label: Label,
    pub weight: f64,
    pub target: StateId,
}

/// A weighted automaton `(Σ, Q, E, i, F)` with the ten tags as alphabet and
/// dense state ids `0..num_states`.
#[derive(Debug, Clone, PartialEq)]
pub struct Automaton {
    initial: StateId,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
}

impl Automaton {
    pub fn new(num_states: usize, initial: StateId) -> Result<Self> {
        if initial >= num_states {
            return Err(Error::Automaton(format!(
                "initial state {initial} out of range for {num_states} states"
            )));
        }
        Ok(Automaton {
            initial,
            finals: vec![false; num_states],
            transitions: Vec::new(),
        })
    }

    pub fn add_state(&mut self) -> StateId {
        self.finals.push(false);
        self.finals.len() - 1
    }

    pub fn add_transition(
        &mut self,
        source: StateId,
        label: Label,
        weight: f64,
        target: StateId,
    ) -> Result<()> {
        self.check_state(source)?;
        self.check_state(target)?;
        self.transitions.push(Transition {
            source,
            label,
            weight,
            target,
        });
        Ok(())
    }

    pub fn set_final(&mut self, state: StateId, is_final: bool) -> Result<()> {
        self.check_state(state)?;
        self.finals[state] = is_final;
        Ok(())
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q >= self.num_states() {
            return Err(Error::Automaton(format!("state {q} does not exist")));
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .map(|(q, _)| q)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transitions_from(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter().filter(move |t| t.source == q)
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.transitions.iter().all(|t| t.label != Label::Epsilon)
    }

    pub fn is_deterministic(&self) -> bool {
        if !self.is_epsilon_free() {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.transitions
            .iter()
            .all(|t| seen.insert((t.source, t.label)))
    }

    fn outgoing(&self) -> Vec<Vec<Transition>> {
        let mut out = vec![Vec::new(); self.num_states()];
        for t in &self.transitions {
            out[t.source].push(*t);
        }
        out
    }

    fn epsilon_closure(
        &self,
        out: &[Vec<Transition>],
        states: &BTreeSet<StateId>,
    ) -> BTreeSet<StateId> {
        let mut closure = states.clone();
        let mut stack: Vec<StateId> = states.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for t in &out[q] {
                if t.label == Label::Epsilon && closure.insert(t.target) {
                    stack.push(t.target);
                }
            }
        }
        closure
    }

    fn step(
        &self,
        out: &[Vec<Transition>],
        states: &BTreeSet<StateId>,
        tag: Tag,
    ) -> BTreeSet<StateId> {
        let next: BTreeSet<StateId> = states
            .iter()
            .flat_map(|&q| out[q].iter())
            .filter(|t| t.label == Label::Tag(tag))
            .map(|t| t.target)
            .collect();
        self.epsilon_closure(out, &next)
    }

    /// Whether the automaton accepts `tags` (weights ignored).
    pub fn accepts(&self, tags: &[Tag]) -> bool {
        let out = self.outgoing();
        let mut current = self.epsilon_closure(&out, &BTreeSet::from([self.initial]));
        for &t in tags {
            current = self.step(&out, &current, t);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&q| self.finals[q])
    }

    /// All accepted sequences of length `n`. Exponential in `n`; meant for
    /// checks on short lengths.
    pub fn language(&self, n: usize) -> BTreeSet<TagSequence> {
        let out = self.outgoing();
        let mut result = BTreeSet::new();
        let mut prefix = Vec::with_capacity(n);
        let start = self.epsilon_closure(&out, &BTreeSet::from([self.initial]));
        self.enumerate(&out, &start, n, &mut prefix, &mut result);
        result
    }

    fn enumerate(
        &self,
        out: &[Vec<Transition>],
        states: &BTreeSet<StateId>,
        remaining: usize,
        prefix: &mut Vec<Tag>,
        result: &mut BTreeSet<TagSequence>,
    ) {
        if remaining == 0 {
            if states.iter().any(|&q| self.finals[q]) {
                result.insert(TagSequence::new(prefix.clone()));
            }
            return;
        }
        for tag in Tag::ALL {
            let next = self.step(out, states, tag);
            if !next.is_empty() {
                prefix.push(tag);
                self.enumerate(out, &next, remaining - 1, prefix, result);
                prefix.pop();
            }
        }
    }

    /// Removes ε-transitions. Unweighted: ε-transitions must carry weight 0.
    pub fn remove_epsilon(&self) -> Result<Automaton> {
        if self
            .transitions
            .iter()
            .any(|t| t.label == Label::Epsilon && t.weight != 0.0)
        {
            return Err(Error::Automaton(
                "weighted epsilon removal is not supported".into(),
            ));
        }
        let out = self.outgoing();
        let mut result = Automaton::new(self.num_states(), self.initial)?;
        for q in 0..self.num_states() {
            let closure = self.epsilon_closure(&out, &BTreeSet::from([q]));
            result.finals[q] = closure.iter().any(|&p| self.finals[p]);
            let mut seen = BTreeSet::new();
            for &p in &closure {
                for t in &out[p] {
                    if let Label::Tag(tag) = t.label {
                        if seen.insert((tag, t.target, t.weight.to_bits())) {
                            result.transitions.push(Transition { source: q, ..*t });
                        }
                    }
                }
            }
        }
        Ok(result.connect())
    }

    /// Keeps only states that are both reachable from the initial state and
    /// able to reach a final state. The initial state is always kept.
    pub fn connect(&self) -> Automaton {
        let out = self.outgoing();
        let mut reachable = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        reachable[self.initial] = true;
        while let Some(q) = stack.pop() {
            for t in &out[q] {
                if !reachable[t.target] {
                    reachable[t.target] = true;
                    stack.push(t.target);
                }
            }
        }
        let mut coreachable = self.finals.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for t in &self.transitions {
                if coreachable[t.target] && !coreachable[t.source] {
                    coreachable[t.source] = true;
                    changed = true;
                }
            }
        }
        let keep: Vec<bool> = (0..self.num_states())
            .map(|q| q == self.initial || (reachable[q] && coreachable[q]))
            .collect();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = next;
                next += 1;
            }
        }
        Automaton {
            initial: map[self.initial],
            finals: (0..self.num_states())
                .filter(|&q| keep[q])
                .map(|q| self.finals[q])
                .collect(),
            transitions: self
                .transitions
                .iter()
                .filter(|t| keep[t.source] && keep[t.target])
                .filter(|t| coreachable[t.target])
                .map(|t| Transition {
                    source: map[t.source],
                    target: map[t.target],
                    ..*t
                })
                .collect(),
        }
    }

    /// Subset construction. The input must be ε-free and unweighted.
    pub fn determinize(&self) -> Result<Automaton> {
        if !self.is_epsilon_free() {
            return Err(Error::Automaton(
                "determinize needs an ε-free automaton".into(),
            ));
        }
        if self.transitions.iter().any(|t| t.weight != 0.0) {
            return Err(Error::Automaton(
                "weighted determinization is not supported".into(),
            ));
        }
        let out = self.outgoing();
        let start = BTreeSet::from([self.initial]);
        let mut ids: HashMap<BTreeSet<StateId>, StateId> = HashMap::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([start.clone()]);
        let mut result = Automaton::new(1, 0)?;
        result.finals[0] = self.finals[self.initial];
        while let Some(subset) = queue.pop_front() {
            let src = ids[&subset];
            for tag in Tag::ALL {
                let next = self.step(&out, &subset, tag);
                if next.is_empty() {
                    continue;
                }
                let dst = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = result.add_state();
                        result.finals[id] = next.iter().any(|&q| self.finals[q]);
                        ids.insert(next.clone(), id);
                        queue.push_back(next);
                        id
                    }
                };
                result.transitions.push(Transition {
                    source: src,
                    label: Label::Tag(tag),
                    weight: 0.0,
                    target: dst,
                });
            }
        }
        Ok(result)
    }

    /// Minimal deterministic automaton for the same language, by partition
    /// refinement on the trimmed input. States are renumbered in
    /// breadth-first order from the initial state.
    pub fn minimize(&self) -> Result<Automaton> {
        if !self.is_deterministic() {
            return Err(Error::Automaton(
                "minimize needs a deterministic automaton".into(),
            ));
        }
        let trimmed = self.connect();
        let n = trimmed.num_states();
        let mut delta = vec![[None::<StateId>; Tag::COUNT]; n];
        for t in &trimmed.transitions {
            if let Label::Tag(tag) = t.label {
                delta[t.source][tag.index()] = Some(t.target);
            }
        }

        let mut class: Vec<usize> = trimmed.finals.iter().map(|&f| usize::from(f)).collect();
        let mut num_classes = 0;
        loop {
            let mut signatures: BTreeMap<(usize, [Option<usize>; Tag::COUNT]), usize> =
                BTreeMap::new();
            let mut next_class = vec![0; n];
            for q in 0..n {
                let sig = (class[q], delta[q].map(|d| d.map(|r| class[r])));
                let fresh = signatures.len();
                next_class[q] = *signatures.entry(sig).or_insert(fresh);
            }
            let count = signatures.len();
            class = next_class;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }

        // Renumber classes breadth-first from the initial state.
        let mut order: HashMap<usize, StateId> = HashMap::new();
        let mut representative: Vec<StateId> = Vec::new();
        let mut queue = VecDeque::from([trimmed.initial]);
        order.insert(class[trimmed.initial], 0);
        representative.push(trimmed.initial);
        while let Some(q) = queue.pop_front() {
            for d in delta[q].iter().flatten() {
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(class[*d]) {
                    e.insert(representative.len());
                    representative.push(*d);
                    queue.push_back(*d);
                }
            }
        }
        let mut result = Automaton::new(representative.len(), 0)?;
        for (id, &q) in representative.iter().enumerate() {
            result.finals[id] = trimmed.finals[q];
            for tag in Tag::ALL {
                if let Some(r) = delta[q][tag.index()] {
                    result.transitions.push(Transition {
                        source: id,
                        label: Label::Tag(tag),
                        weight: 0.0,
                        target: order[&class[r]],
                    });
                }
            }
        }
        Ok(result)
    }

    /// Line-based text form: `initial q`, one `final q` per final state,
    /// then one `src label weight dst` line per transition.
    pub fn to_text(&self) -> String {
        let mut s = format!("initial {}\n", self.initial);
        for q in self.finals() {
            s.push_str(&format!("final {q}\n"));
        }
        for t in &self.transitions {
            s.push_str(&format!(
                "{} {} {} {}\n",
                t.source, t.label, t.weight, t.target
            ));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Automaton> {
        let mut initial = None;
        let mut finals = Vec::new();
        let mut transitions = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad state {s:?}")))
            };
            match fields.as_slice() {
                [] => {}
                ["initial", q] => initial = Some(num(q)?),
                ["final", q] => finals.push(num(q)?),
                [src, label, weight, dst] => {
                    let label = label
                        .parse()
                        .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
                    let weight = weight
                        .parse::<f64>()
                        .map_err(|_| Error::parse(line_no, format!("bad weight {weight:?}")))?;
                    transitions.push(Transition {
                        source: num(src)?,
                        label,
                        weight,
                        target: num(dst)?,
                    });
                }
                _ => return Err(Error::parse(line_no, format!("unrecognised line {line:?}"))),
            }
        }
        let initial = initial.ok_or_else(|| Error::parse(1, "missing initial state"))?;
        let max_state = transitions
            .iter()
            .flat_map(|t| [t.source, t.target])
            .chain(finals.iter().copied())
            .chain([initial])
            .max()
            .unwrap_or(0);
        let mut a = Automaton::new(max_state + 1, initial)?;
        for q in finals {
            a.set_final(q, true)?;
        }
        a.transitions = transitions;
        Ok(a)
    }
}
