//! Single-tape Turing machines, bounded simulation and particular transition
//! tables.
//!
//! The tape is one-way infinite and realized as a growing vector of cells
//! starting at cell 0. A left move at cell 0 leaves the head where it is; a
//! right move off the last cell appends a blank. The accept state halts and a
//! configuration with no applicable rule is stuck, which counts as rejection.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Name of a machine state.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(String);

impl State {
    pub fn new(name: impl Into<String>) -> Self {
        State(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for State {
    fn from(name: &str) -> Self {
        State::new(name)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A tape symbol. Symbols are opaque tokens and may be longer than one
/// character.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(name: &str) -> Self {
        Symbol::new(name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits a string into one symbol per character.
pub fn symbols(text: &str) -> Vec<Symbol> {
    text.chars().map(|c| Symbol::new(c.to_string())).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

impl Move {
    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Right => 'R',
            Move::Stay => 'S',
        }
    }

    pub fn from_letter(letter: &str) -> Option<Move> {
        match letter {
            "L" => Some(Move::Left),
            "R" => Some(Move::Right),
            "S" => Some(Move::Stay),
            _ => None,
        }
    }

    /// Head position after the move. Clamps at cell 0.
    pub fn apply(self, head: usize) -> usize {
        match self {
            Move::Left => head.saturating_sub(1),
            Move::Right => head + 1,
            Move::Stay => head,
        }
    }
}

/// One transition: in `state` reading `read`, go to `next`, write `write`
/// and move the head.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub state: State,
    pub read: Symbol,
    pub next: State,
    pub write: Symbol,
    pub movement: Move,
}

impl Rule {
    pub fn new(
        state: impl Into<State>,
        read: impl Into<Symbol>,
        next: impl Into<State>,
        write: impl Into<Symbol>,
        movement: Move,
    ) -> Self {
        Rule {
            state: state.into(),
            read: read.into(),
            next: next.into(),
            write: write.into(),
            movement,
        }
    }

    /// Whether this rule can fire in `config`.
    pub fn applies_to(&self, config: &Configuration) -> bool {
        config.state == self.state && config.tape.get(config.head) == Some(&self.read)
    }

    /// Successor configuration: write, then move. `config` must satisfy
    /// [`Rule::applies_to`].
    pub fn fire(&self, config: &Configuration, blank: &Symbol) -> Configuration {
        let mut tape = config.tape.clone();
        tape[config.head] = self.write.clone();
        let head = self.movement.apply(config.head);
        if head == tape.len() {
            tape.push(blank.clone());
        }
        Configuration {
            state: self.next.clone(),
            head,
            tape,
        }
    }

    /// Whether firing this rule in `from` yields `to`, comparing tapes up to
    /// trailing blanks.
    pub fn licenses(&self, from: &Configuration, to: &Configuration, blank: &Symbol) -> bool {
        self.applies_to(from) && self.fire(from, blank).equivalent(to, blank)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {} {} {}",
            self.state,
            self.read,
            self.next,
            self.write,
            self.movement.letter()
        )
    }
}

/// Snapshot of a running machine.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: State,
    pub head: usize,
    pub tape: Vec<Symbol>,
}

impl Configuration {
    pub fn new(state: impl Into<State>, head: usize, tape: Vec<Symbol>) -> Self {
        Configuration {
            state: state.into(),
            head,
            tape,
        }
    }

    /// Equality of state and head, with tapes compared as if both were
    /// padded with blanks to the same length.
    pub fn equivalent(&self, other: &Configuration, blank: &Symbol) -> bool {
        if self.state != other.state || self.head != other.head {
            return false;
        }
        let width = self.tape.len().max(other.tape.len());
        (0..width).all(|i| self.tape.get(i).unwrap_or(blank) == other.tape.get(i).unwrap_or(blank))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, ", self.state, self.head)?;
        for s in &self.tape {
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// A run of a machine from its initial configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComputationHistory {
    pub input: Vec<Symbol>,
    pub blank: Symbol,
    pub configs: Vec<Configuration>,
}

impl ComputationHistory {
    /// Fails when `configs` is empty.
    pub fn new(
        input: Vec<Symbol>,
        blank: Symbol,
        configs: Vec<Configuration>,
    ) -> Result<Self, MachineError> {
        if configs.is_empty() {
            return Err(MachineError::EmptyHistory);
        }
        Ok(ComputationHistory {
            input,
            blank,
            configs,
        })
    }

    /// Number of transitions, `k(h)`.
    pub fn transitions(&self) -> usize {
        self.configs.len() - 1
    }

    pub fn last(&self) -> &Configuration {
        self.configs.last().expect("histories are non-empty")
    }

    pub fn is_accepting_for(&self, accept: &State) -> bool {
        &self.last().state == accept
    }

    /// Same input and pairwise equivalent configurations.
    pub fn equivalent(&self, other: &ComputationHistory) -> bool {
        self.input == other.input
            && self.blank == other.blank
            && self.configs.len() == other.configs.len()
            && self
                .configs
                .iter()
                .zip(&other.configs)
                .all(|(a, b)| a.equivalent(b, &self.blank))
    }
}

impl fmt::Display for ComputationHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.configs.iter().enumerate() {
            if i > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// One side of a merged table: the selector may jump to `entry` and from
/// there run `table` with its states tagged by `tag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub tag: String,
    pub entry: State,
    pub table: Box<TransitionTable>,
}

/// Out-of-band start choice of a merged table, consumed before the first
/// transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selector {
    pub from: State,
    pub branches: Vec<Branch>,
}

impl Selector {
    pub fn targets(&self) -> impl Iterator<Item = &State> {
        self.branches.iter().map(|b| &b.entry)
    }
}

/// A (possibly partial) transition table.
///
/// Rules are kept in declaration order, which fixes every tie-break in
/// simulation and encoding. Repeating a `(state, symbol)` key adds a
/// nondeterministic target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTable {
    start: State,
    rules: Vec<Rule>,
    selector: Option<Selector>,
}

pub type TableEntries = BTreeMap<(State, Symbol), Vec<(State, Symbol, Move)>>;

impl TransitionTable {
    pub fn new(start: impl Into<State>, rules: Vec<Rule>) -> Result<Self, MachineError> {
        let mut table = TransitionTable::empty(start);
        for rule in rules {
            table.push(rule)?;
        }
        Ok(table)
    }

    pub fn empty(start: impl Into<State>) -> Self {
        TransitionTable {
            start: start.into(),
            rules: Vec::new(),
            selector: None,
        }
    }

    fn push(&mut self, rule: Rule) -> Result<(), MachineError> {
        if self.rules.contains(&rule) {
            return Err(MachineError::DuplicateRule(rule.to_string()));
        }
        self.rules.push(rule);
        Ok(())
    }

    /// State the table's computations begin in. For merged tables this is the
    /// fresh selector state.
    pub fn start(&self) -> &State {
        &self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn selector(&self) -> Option<&Selector> {
        self.selector.as_ref()
    }

    /// Rules applicable to `(state, read)`, in declaration order.
    pub fn targets<'a>(
        &'a self,
        state: &'a State,
        read: &'a Symbol,
    ) -> impl Iterator<Item = &'a Rule> + 'a {
        self.rules
            .iter()
            .filter(move |r| &r.state == state && &r.read == read)
    }

    pub fn entries(&self) -> TableEntries {
        let mut entries = TableEntries::new();
        for r in &self.rules {
            entries
                .entry((r.state.clone(), r.read.clone()))
                .or_default()
                .push((r.next.clone(), r.write.clone(), r.movement));
        }
        entries
    }

    /// Number of distinct `(state, symbol)` keys.
    pub fn entry_count(&self) -> usize {
        self.rules
            .iter()
            .map(|r| (&r.state, &r.read))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty() && self.selector.is_none()
    }

    /// Start state, every rule endpoint and the selector targets.
    pub fn states(&self) -> BTreeSet<State> {
        let mut states = BTreeSet::new();
        states.insert(self.start.clone());
        for r in &self.rules {
            states.insert(r.state.clone());
            states.insert(r.next.clone());
        }
        if let Some(sel) = &self.selector {
            states.insert(sel.from.clone());
            states.extend(sel.targets().cloned());
        }
        states
    }

    /// Every target set is a singleton and there is no selector.
    pub fn is_deterministic(&self) -> bool {
        self.selector.is_none() && self.entries().values().all(|targets| targets.len() == 1)
    }

    /// Keywise target-set inclusion.
    pub fn is_subset_of(&self, other: &TransitionTable) -> bool {
        self.rules.iter().all(|r| other.rules.contains(r))
    }

    /// The first rule licensing the step `from -> to`, if any.
    pub fn licensing_rule(
        &self,
        from: &Configuration,
        to: &Configuration,
        blank: &Symbol,
    ) -> Option<&Rule> {
        self.rules.iter().find(|r| r.licenses(from, to, blank))
    }

    /// Whether every consecutive pair of `history` is licensed by this table.
    /// A merged table generates a history when one of its branches does.
    pub fn generates(&self, history: &ComputationHistory) -> bool {
        match &self.selector {
            Some(sel) => sel.branches.iter().any(|b| b.table.generates(history)),
            None => history.configs.windows(2).all(|pair| {
                self.licensing_rule(&pair[0], &pair[1], &history.blank)
                    .is_some()
            }),
        }
    }

    /// Builds the selector table over `a` and `b`; see [`merge_tables`].
    pub fn merge(a: &TransitionTable, b: &TransitionTable) -> TransitionTable {
        let tagged = [("a", a), ("b", b)];
        let mut rules = Vec::new();
        let mut branches = Vec::new();
        for (tag, table) in tagged {
            rules.extend(table.tagged_rules(tag));
            branches.push(Branch {
                tag: tag.to_string(),
                entry: tag_state(&table.start, tag),
                table: Box::new(table.clone()),
            });
        }
        let from = State::new(MERGE_START);
        TransitionTable {
            start: from.clone(),
            rules,
            selector: Some(Selector { from, branches }),
        }
    }

    fn tagged_rules(&self, tag: &str) -> Vec<Rule> {
        self.rules
            .iter()
            .map(|r| Rule {
                state: tag_state(&r.state, tag),
                read: r.read.clone(),
                next: tag_state(&r.next, tag),
                write: r.write.clone(),
                movement: r.movement,
            })
            .collect()
    }
}

/// Name of the fresh start state of a merged table. Tagged states always end
/// in `.a` or `.b`, so it cannot collide with them.
pub const MERGE_START: &str = "q_start";

/// Renames `state` into one branch of a merged table.
pub fn tag_state(state: &State, tag: &str) -> State {
    State(format!("{}.{}", state.0, tag))
}

/// Merges two tables so that one of the two computations can be chosen from
/// a fresh start state.
///
/// The result's rules are the disjoint union of both inputs after renaming
/// each state `q` to `q.a` (first table) or `q.b` (second table). The fresh
/// start state `q_start` carries a two-way selector to the renamed starts.
pub fn merge_tables(a: &TransitionTable, b: &TransitionTable) -> TransitionTable {
    TransitionTable::merge(a, b)
}

/// Whether `table` licenses every step of `history`.
pub fn table_generates(table: &TransitionTable, history: &ComputationHistory) -> bool {
    table.generates(history)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineError {
    UnknownState(String),
    UnknownSymbol(String),
    DuplicateState(String),
    DuplicateSymbol(String),
    DuplicateRule(String),
    BlankNotInTapeAlphabet,
    BlankInInputAlphabet,
    InputSymbolNotOnTape(String),
    TransitionOutOfAccept(String),
    NoStates,
    EmptyHistory,
    /// The input contains a symbol outside the input alphabet.
    InvalidInput(String),
    /// The step from `configs[index]` to `configs[index + 1]` is not
    /// licensed, or `index == 0` and the first configuration is not initial.
    IllegalHistory {
        index: usize,
        reason: String,
    },
}

impl fmt::Display for MachineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineError::UnknownState(s) => write!(f, "unknown state `{s}`"),
            MachineError::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            MachineError::DuplicateState(s) => write!(f, "state `{s}` declared twice"),
            MachineError::DuplicateSymbol(s) => write!(f, "symbol `{s}` declared twice"),
            MachineError::DuplicateRule(r) => write!(f, "rule `{r}` declared twice"),
            MachineError::BlankNotInTapeAlphabet => {
                f.write_str("blank symbol is not in the tape alphabet")
            }
            MachineError::BlankInInputAlphabet => {
                f.write_str("blank symbol must not be an input symbol")
            }
            MachineError::InputSymbolNotOnTape(s) => {
                write!(f, "input symbol `{s}` missing from the tape alphabet")
            }
            MachineError::TransitionOutOfAccept(r) => {
                write!(f, "rule `{r}` leaves the accept state")
            }
            MachineError::NoStates => f.write_str("machine declares no states"),
            MachineError::EmptyHistory => f.write_str("history has no configurations"),
            MachineError::InvalidInput(s) => {
                write!(f, "input symbol `{s}` is not in the input alphabet")
            }
            MachineError::IllegalHistory { index, reason } => {
                write!(f, "illegal history at configuration {index}: {reason}")
            }
        }
    }
}

impl core::error::Error for MachineError {}

/// Field-by-field description of a machine, validated by
/// [`MachineBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct MachineBuilder {
    pub name: String,
    pub states: Vec<State>,
    pub input_alphabet: Vec<Symbol>,
    pub tape_alphabet: Vec<Symbol>,
    pub blank: Option<Symbol>,
    pub start: Option<State>,
    pub accept: Option<State>,
    pub reject: Option<State>,
    pub rules: Vec<Rule>,
}

impl MachineBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        MachineBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn states(mut self, states: &[&str]) -> Self {
        self.states = states.iter().map(|s| State::from(*s)).collect();
        self
    }

    pub fn input_alphabet(mut self, symbols: &[&str]) -> Self {
        self.input_alphabet = symbols.iter().map(|s| Symbol::from(*s)).collect();
        self
    }

    pub fn tape_alphabet(mut self, symbols: &[&str]) -> Self {
        self.tape_alphabet = symbols.iter().map(|s| Symbol::from(*s)).collect();
        self
    }

    pub fn blank(mut self, blank: &str) -> Self {
        self.blank = Some(blank.into());
        self
    }

    pub fn start(mut self, state: &str) -> Self {
        self.start = Some(state.into());
        self
    }

    pub fn accept(mut self, state: &str) -> Self {
        self.accept = Some(state.into());
        self
    }

    pub fn reject(mut self, state: &str) -> Self {
        self.reject = Some(state.into());
        self
    }

    /// Adds `state read -> next write move`.
    pub fn rule(
        mut self,
        state: &str,
        read: &str,
        next: &str,
        write: &str,
        movement: Move,
    ) -> Self {
        self.rules
            .push(Rule::new(state, read, next, write, movement));
        self
    }

    pub fn build(self) -> Result<Machine, MachineError> {
        if self.states.is_empty() {
            return Err(MachineError::NoStates);
        }
        let state_set = unique(&self.states, |s| {
            MachineError::DuplicateState(s.to_string())
        })?;
        let tape_set = unique(&self.tape_alphabet, |s| {
            MachineError::DuplicateSymbol(s.to_string())
        })?;
        let input_set = unique(&self.input_alphabet, |s| {
            MachineError::DuplicateSymbol(s.to_string())
        })?;
        let blank = self.blank.ok_or(MachineError::BlankNotInTapeAlphabet)?;
        if !tape_set.contains(&blank) {
            return Err(MachineError::BlankNotInTapeAlphabet);
        }
        if input_set.contains(&blank) {
            return Err(MachineError::BlankInInputAlphabet);
        }
        if let Some(s) = self.input_alphabet.iter().find(|s| !tape_set.contains(s)) {
            return Err(MachineError::InputSymbolNotOnTape(s.to_string()));
        }
        let known_state = |s: &State| {
            if state_set.contains(s) {
                Ok(())
            } else {
                Err(MachineError::UnknownState(s.to_string()))
            }
        };
        let known_symbol = |s: &Symbol| {
            if tape_set.contains(s) {
                Ok(())
            } else {
                Err(MachineError::UnknownSymbol(s.to_string()))
            }
        };
        let start = self.start.ok_or(MachineError::NoStates)?;
        let accept = self.accept.ok_or(MachineError::NoStates)?;
        known_state(&start)?;
        known_state(&accept)?;
        if let Some(r) = &self.reject {
            known_state(r)?;
        }
        for rule in &self.rules {
            known_state(&rule.state)?;
            known_state(&rule.next)?;
            known_symbol(&rule.read)?;
            known_symbol(&rule.write)?;
            if rule.state == accept {
                return Err(MachineError::TransitionOutOfAccept(rule.to_string()));
            }
        }
        let table = TransitionTable::new(start.clone(), self.rules)?;
        Ok(Machine {
            name: self.name,
            states: self.states,
            input_alphabet: self.input_alphabet,
            tape_alphabet: self.tape_alphabet,
            blank,
            table,
            start,
            accept,
            reject: self.reject,
        })
    }
}

fn unique<T: Ord + Clone>(
    items: &[T],
    dup: impl Fn(&T) -> MachineError,
) -> Result<BTreeSet<T>, MachineError> {
    let mut set = BTreeSet::new();
    for item in items {
        if !set.insert(item.clone()) {
            return Err(dup(item));
        }
    }
    Ok(set)
}

/// A validated single-tape, possibly nondeterministic, Turing machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Machine {
    name: String,
    states: Vec<State>,
    input_alphabet: Vec<Symbol>,
    tape_alphabet: Vec<Symbol>,
    blank: Symbol,
    table: TransitionTable,
    start: State,
    accept: State,
    reject: Option<State>,
}

impl Machine {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn input_alphabet(&self) -> &[Symbol] {
        &self.input_alphabet
    }

    pub fn tape_alphabet(&self) -> &[Symbol] {
        &self.tape_alphabet
    }

    pub fn blank(&self) -> &Symbol {
        &self.blank
    }

    pub fn table(&self) -> &TransitionTable {
        &self.table
    }

    pub fn start(&self) -> &State {
        &self.start
    }

    pub fn accept(&self) -> &State {
        &self.accept
    }

    pub fn reject(&self) -> Option<&State> {
        self.reject.as_ref()
    }

    pub fn rules(&self) -> &[Rule] {
        self.table.rules()
    }

    pub fn check_input(&self, input: &[Symbol]) -> Result<(), MachineError> {
        match input.iter().find(|s| !self.input_alphabet.contains(s)) {
            Some(s) => Err(MachineError::InvalidInput(s.to_string())),
            None => Ok(()),
        }
    }

    /// Start state, head at 0, the input on cells `0..n`. An empty input
    /// gives a single blank cell.
    pub fn initial_configuration(&self, input: &[Symbol]) -> Result<Configuration, MachineError> {
        self.check_input(input)?;
        let tape = if input.is_empty() {
            vec![self.blank.clone()]
        } else {
            input.to_vec()
        };
        Ok(Configuration::new(self.start.clone(), 0, tape))
    }

    /// All successors of `config`, one per applicable rule in declaration
    /// order. Empty when the machine is stuck or has accepted.
    pub fn step(&self, config: &Configuration) -> Vec<Configuration> {
        if config.state == self.accept {
            return Vec::new();
        }
        let Some(read) = config.tape.get(config.head) else {
            return Vec::new();
        };
        self.table
            .targets(&config.state, read)
            .map(|r| r.fire(config, &self.blank))
            .collect()
    }

    /// Breadth-first search for an accepting run of at most `bound`
    /// transitions. Returns a shortest witness; ties go to the earlier rule.
    pub fn accepts_within(
        &self,
        input: &[Symbol],
        bound: usize,
    ) -> Result<Option<ComputationHistory>, MachineError> {
        let initial = self.initial_configuration(input)?;
        // parent index per discovered configuration
        let mut nodes: Vec<(Configuration, Option<usize>)> = vec![(initial.clone(), None)];
        let mut seen = BTreeSet::new();
        seen.insert(initial);
        let mut frontier = vec![0usize];
        let mut depth = 0;
        loop {
            if let Some(&hit) = frontier.iter().find(|&&n| nodes[n].0.state == self.accept) {
                return Ok(Some(self.trace(input, &nodes, hit)));
            }
            if depth == bound || frontier.is_empty() {
                return Ok(None);
            }
            let mut next = Vec::new();
            for &n in &frontier {
                for succ in self.step(&nodes[n].0) {
                    if seen.insert(succ.clone()) {
                        nodes.push((succ, Some(n)));
                        next.push(nodes.len() - 1);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
    }

    fn trace(
        &self,
        input: &[Symbol],
        nodes: &[(Configuration, Option<usize>)],
        mut at: usize,
    ) -> ComputationHistory {
        let mut configs = vec![nodes[at].0.clone()];
        while let Some(parent) = nodes[at].1 {
            configs.push(nodes[parent].0.clone());
            at = parent;
        }
        configs.reverse();
        ComputationHistory {
            input: input.to_vec(),
            blank: self.blank.clone(),
            configs,
        }
    }

    /// Every accepting history of at most `bound` transitions, shortest
    /// first and in rule order within a length, truncated at `limit`.
    pub fn enumerate_accepting_histories(
        &self,
        input: &[Symbol],
        bound: usize,
        limit: usize,
    ) -> Result<Vec<ComputationHistory>, MachineError> {
        let initial = self.initial_configuration(input)?;
        let mut found = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(vec![initial]);
        while let Some(path) = queue.pop_front() {
            if found.len() >= limit {
                break;
            }
            let last = path.last().expect("paths are non-empty");
            if last.state == self.accept {
                found.push(ComputationHistory {
                    input: input.to_vec(),
                    blank: self.blank.clone(),
                    configs: path,
                });
                continue;
            }
            if path.len() > bound {
                continue;
            }
            for succ in self.step(last) {
                let mut longer = path.clone();
                longer.push(succ);
                queue.push_back(longer);
            }
        }
        Ok(found)
    }

    /// Checks that `history` starts in this machine's initial configuration
    /// for its input and that each step is licensed by some rule.
    pub fn check_history(&self, history: &ComputationHistory) -> Result<(), MachineError> {
        let illegal = |index, reason: &str| MachineError::IllegalHistory {
            index,
            reason: reason.to_string(),
        };
        let initial = self
            .initial_configuration(&history.input)
            .map_err(|e| illegal(0, &e.to_string()))?;
        if !initial.equivalent(&history.configs[0], &self.blank) {
            return Err(illegal(0, "not the initial configuration"));
        }
        for (i, pair) in history.configs.windows(2).enumerate() {
            if self
                .table
                .licensing_rule(&pair[0], &pair[1], &self.blank)
                .is_none()
            {
                return Err(illegal(i, "no rule licenses this step"));
            }
        }
        Ok(())
    }

    /// The minimal table holding exactly the rules `history` exercises, in
    /// order of first use.
    pub fn extract_particular_table(
        &self,
        history: &ComputationHistory,
    ) -> Result<TransitionTable, MachineError> {
        self.check_history(history)?;
        let mut table = TransitionTable::empty(history.configs[0].state.clone());
        for pair in history.configs.windows(2) {
            let rule = self
                .table
                .licensing_rule(&pair[0], &pair[1], &self.blank)
                .expect("checked above");
            if !table.rules.contains(rule) {
                table.rules.push(rule.clone());
            }
        }
        Ok(table)
    }
}

/// Free-function form of [`Machine::extract_particular_table`].
pub fn extract_particular_table(
    history: &ComputationHistory,
    machine: &Machine,
) -> Result<TransitionTable, MachineError> {
    machine.extract_particular_table(history)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn accept1() -> Machine {
        MachineBuilder::new("m_accept1")
            .states(&["q0", "qacc", "qrej"])
            .input_alphabet(&["0", "1"])
            .tape_alphabet(&["0", "1", "_"])
            .blank("_")
            .start("q0")
            .accept("qacc")
            .reject("qrej")
            .rule("q0", "1", "qacc", "1", Move::Right)
            .rule("q0", "0", "qrej", "0", Move::Right)
            .rule("q0", "_", "qrej", "_", Move::Right)
            .build()
            .unwrap()
    }

    pub fn nd() -> Machine {
        MachineBuilder::new("m_nd")
            .states(&["q0", "qacc", "qrej"])
            .input_alphabet(&["0", "1"])
            .tape_alphabet(&["0", "1", "_"])
            .blank("_")
            .start("q0")
            .accept("qacc")
            .reject("qrej")
            .rule("q0", "1", "qrej", "1", Move::Right)
            .rule("q0", "1", "qacc", "1", Move::Right)
            .build()
            .unwrap()
    }

    pub fn looping() -> Machine {
        MachineBuilder::new("m_loop")
            .states(&["q0", "qacc"])
            .input_alphabet(&["0", "1"])
            .tape_alphabet(&["0", "1", "_"])
            .blank("_")
            .start("q0")
            .accept("qacc")
            .rule("q0", "0", "q0", "0", Move::Right)
            .rule("q0", "1", "q0", "1", Move::Right)
            .rule("q0", "_", "q0", "_", Move::Left)
            .build()
            .unwrap()
    }

    /// Accepts strings of 1s of even length.
    pub fn parity() -> Machine {
        MachineBuilder::new("m_parity")
            .states(&["even", "odd", "acc", "rej"])
            .input_alphabet(&["1"])
            .tape_alphabet(&["1", "_"])
            .blank("_")
            .start("even")
            .accept("acc")
            .reject("rej")
            .rule("even", "1", "odd", "1", Move::Right)
            .rule("odd", "1", "even", "1", Move::Right)
            .rule("even", "_", "acc", "_", Move::Stay)
            .rule("odd", "_", "rej", "_", Move::Stay)
            .build()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn cfg(state: &str, head: usize, tape: &str) -> Configuration {
        Configuration::new(state, head, symbols(tape))
    }

    #[test]
    fn accept1_has_three_entries() {
        assert_eq!(accept1().table().entry_count(), 3);
    }

    #[test]
    fn undeclared_target_is_rejected() {
        let err = MachineBuilder::new("bad")
            .states(&["q0", "qacc"])
            .tape_alphabet(&["_"])
            .blank("_")
            .start("q0")
            .accept("qacc")
            .rule("q0", "_", "nowhere", "_", Move::Right)
            .build()
            .unwrap_err();
        assert_eq!(err, MachineError::UnknownState("nowhere".into()));
    }

    #[test]
    fn rule_out_of_accept_is_rejected() {
        let err = MachineBuilder::new("bad")
            .states(&["q0", "qacc"])
            .tape_alphabet(&["_"])
            .blank("_")
            .start("q0")
            .accept("qacc")
            .rule("qacc", "_", "q0", "_", Move::Right)
            .build()
            .unwrap_err();
        assert!(matches!(err, MachineError::TransitionOutOfAccept(_)));
    }

    #[test]
    fn step_writes_moves_and_extends() {
        let m = accept1();
        assert_eq!(m.step(&cfg("q0", 0, "1")), vec![cfg("qacc", 1, "1_")]);
    }

    #[test]
    fn step_nondeterministic_yields_both() {
        assert_eq!(nd().step(&cfg("q0", 0, "1")).len(), 2);
    }

    #[test]
    fn step_stuck_is_empty() {
        assert!(accept1().step(&cfg("qrej", 1, "0_")).is_empty());
        assert!(nd().step(&cfg("q0", 0, "0")).is_empty());
    }

    #[test]
    fn left_move_clamps_at_zero() {
        let m = looping();
        assert_eq!(m.step(&cfg("q0", 0, "_")), vec![cfg("q0", 0, "_")]);
    }

    #[test]
    fn accepts_within_examples() {
        let m = accept1();
        let w = m.accepts_within(&symbols("1"), 1).unwrap().unwrap();
        assert_eq!(w.transitions(), 1);
        assert!(m.accepts_within(&symbols("0"), 5).unwrap().is_none());
        assert!(nd().accepts_within(&symbols("1"), 1).unwrap().is_some());
        assert!(looping().accepts_within(&[], 10).unwrap().is_none());
    }

    #[test]
    fn accepts_within_respects_bound() {
        let m = parity();
        assert!(m.accepts_within(&symbols("11"), 2).unwrap().is_none());
        let w = m.accepts_within(&symbols("11"), 3).unwrap().unwrap();
        assert_eq!(w.transitions(), 3);
        assert!(m.accepts_within(&symbols("1"), 6).unwrap().is_none());
    }

    #[test]
    fn accepts_within_rejects_foreign_input() {
        assert_eq!(
            parity().accepts_within(&symbols("0"), 3),
            Err(MachineError::InvalidInput("0".into()))
        );
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            accept1()
                .enumerate_accepting_histories(&symbols("1"), 3, 10)
                .unwrap()
                .len(),
            1
        );
        assert!(looping()
            .enumerate_accepting_histories(&[], 10, 10)
            .unwrap()
            .is_empty());
        let nd_runs = nd()
            .enumerate_accepting_histories(&symbols("1"), 1, 10)
            .unwrap();
        assert_eq!(nd_runs.len(), 1);
        assert_eq!(nd_runs[0].last().state, State::from("qacc"));
    }

    #[test]
    fn enumerate_truncates_and_orders_by_length() {
        // Two ways to accept: immediately, or after a detour through q1.
        let m = MachineBuilder::new("branchy")
            .states(&["q0", "q1", "qacc"])
            .input_alphabet(&["1"])
            .tape_alphabet(&["1", "_"])
            .blank("_")
            .start("q0")
            .accept("qacc")
            .rule("q0", "1", "q1", "1", Move::Stay)
            .rule("q0", "1", "qacc", "1", Move::Stay)
            .rule("q1", "1", "qacc", "1", Move::Stay)
            .rule("q1", "1", "q0", "1", Move::Stay)
            .build()
            .unwrap();
        let all = m
            .enumerate_accepting_histories(&symbols("1"), 4, 100)
            .unwrap();
        let lens: Vec<_> = all.iter().map(|h| h.transitions()).collect();
        assert_eq!(lens, vec![1, 2, 3, 4]);
        let two = m
            .enumerate_accepting_histories(&symbols("1"), 4, 2)
            .unwrap();
        assert_eq!(two, all[..2].to_vec());
    }

    #[test]
    fn extract_single_transition() {
        let m = accept1();
        let h = m.accepts_within(&symbols("1"), 1).unwrap().unwrap();
        let t = m.extract_particular_table(&h).unwrap();
        assert_eq!(t.rules(), &[Rule::new("q0", "1", "qacc", "1", Move::Right)]);
        assert!(t.is_subset_of(m.table()));
        assert!(t.is_deterministic());
        assert!(t.generates(&h));
    }

    #[test]
    fn extract_from_single_configuration_is_empty() {
        let m = accept1();
        let h = ComputationHistory::new(symbols("1"), "_".into(), vec![cfg("q0", 0, "1")]).unwrap();
        assert!(m.extract_particular_table(&h).unwrap().rules().is_empty());
    }

    #[test]
    fn extract_parity_counts_distinct_pairs() {
        let m = parity();
        let h = m.accepts_within(&symbols("11"), 6).unwrap().unwrap();
        let t = m.extract_particular_table(&h).unwrap();
        // (even,1), (odd,1), (even,_)
        assert_eq!(t.entry_count(), 3);
    }

    #[test]
    fn extract_rejects_illegal_history() {
        let m = accept1();
        let h = ComputationHistory::new(
            symbols("1"),
            "_".into(),
            vec![cfg("q0", 0, "1"), cfg("qrej", 1, "1_")],
        )
        .unwrap();
        assert!(matches!(
            m.extract_particular_table(&h),
            Err(MachineError::IllegalHistory { index: 0, .. })
        ));
        let bad_start =
            ComputationHistory::new(symbols("1"), "_".into(), vec![cfg("qrej", 0, "1")]).unwrap();
        assert!(m.check_history(&bad_start).is_err());
    }

    #[test]
    fn generates_vacuous_and_foreign() {
        let empty = TransitionTable::empty("x");
        let h = ComputationHistory::new(symbols("1"), "_".into(), vec![cfg("q0", 0, "1")]).unwrap();
        assert!(empty.generates(&h));
        let hp = parity().accepts_within(&symbols("11"), 6).unwrap().unwrap();
        assert!(!accept1().table().generates(&hp));
    }

    #[test]
    fn empty_table_is_deterministic() {
        assert!(TransitionTable::empty("q").is_deterministic());
        assert!(!nd().table().is_deterministic());
    }

    #[test]
    fn merge_builds_selector_over_renamed_starts() {
        let a = accept1();
        let p = parity();
        let merged = merge_tables(a.table(), p.table());
        let sel = merged.selector().unwrap();
        let targets: Vec<_> = sel.targets().map(|s| s.as_str()).collect();
        assert_eq!(targets, vec!["q0.a", "even.b"]);
        assert_eq!(merged.start().as_str(), MERGE_START);
        assert!(!merged.is_deterministic());
        assert_ne!(&merged, a.table());
        assert_ne!(&merged, p.table());
        assert_eq!(merged.rules().len(), a.rules().len() + p.rules().len());

        let ha = a.accepts_within(&symbols("1"), 1).unwrap().unwrap();
        let hp = p.accepts_within(&symbols("11"), 6).unwrap().unwrap();
        assert!(merged.generates(&ha));
        assert!(merged.generates(&hp));
    }

    #[test]
    fn merge_state_set_strictly_contains_renamings() {
        let a = accept1();
        let merged = merge_tables(a.table(), a.table());
        let states = merged.states();
        for tag in ["a", "b"] {
            let renamed: BTreeSet<_> = a
                .table()
                .states()
                .iter()
                .map(|s| tag_state(s, tag))
                .collect();
            assert!(renamed.is_subset(&states));
            assert!(renamed.len() < states.len());
        }
        assert!(states.contains(&State::from(MERGE_START)));
        assert_ne!(states, a.table().states());
    }
}
