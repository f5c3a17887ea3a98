//! Core symbolic types shared by the whole engine: terms, atoms, tasks,
//! task networks, operators, methods, domains, problems, states,
//! substitutions and plans.
//!
//! All values are immutable once constructed and cheap to clone; symbols
//! are reference counted so clones of deep structures stay inexpensive.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

/// Errors raised by the checked constructors in this module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("variable name must begin with '?': {0}")]
    BadVariableName(String),
    #[error("constant name must not begin with '?': {0}")]
    BadConstantName(String),
    #[error("effect variable {var} does not appear in the parameters of operator {operator}")]
    FreeEffectVariable { operator: String, var: String },
    #[error("method head must be nonprimitive: {0}")]
    PrimitiveMethodHead(String),
    #[error("method {0} has no branches")]
    EmptyMethod(String),
    #[error("symbol {0} is declared both as an operator and as a method")]
    OperatorMethodClash(String),
    #[error("atom {0} is not ground")]
    NonGroundAtom(String),
    #[error("plan step {0} is not ground")]
    NonGroundStep(String),
}

/// Interned-style symbol: cheap to clone, compared and hashed by text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(text: &str) -> Self {
        Symbol(Arc::from(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(text: &str) -> Self {
        Symbol::new(text)
    }
}

impl From<String> for Symbol {
    fn from(text: String) -> Self {
        Symbol(Arc::from(text.as_str()))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fmt_debug_as_display!();
}

/// Helper macro: Debug that prints like Display, keeping search traces short.
macro_rules! fmt_debug_as_display {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt::Display::fmt(self, f)
        }
    };
}
use fmt_debug_as_display;

/// A first-order term: a variable (name starts with "?") or a constant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Symbol),
    Const(Symbol),
}

impl Term {
    /// Checked variable constructor.
    pub fn var(name: &str) -> Self {
        assert!(name.starts_with('?'), "variable name must begin with '?': {name}");
        Term::Var(Symbol::new(name))
    }

    /// Checked constant constructor.
    pub fn constant(name: &str) -> Self {
        assert!(!name.starts_with('?'), "constant name must not begin with '?': {name}");
        Term::Const(Symbol::new(name))
    }

    /// Classify a surface symbol by its "?" prefix.
    pub fn from_name(name: &str) -> Self {
        if name.starts_with('?') {
            Term::Var(Symbol::new(name))
        } else {
            Term::Const(Symbol::new(name))
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        matches!(self, Term::Const(_))
    }

    pub fn name(&self) -> &Symbol {
        match self {
            Term::Var(s) | Term::Const(s) => s,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name().as_str())
    }
}

impl fmt::Debug for Term {
    fmt_debug_as_display!();
}

/// A predicate applied to terms, e.g. `(on l1 office)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<Symbol>, args: Vec<Term>) -> Self {
        Atom { pred: pred.into(), args }
    }

    /// True iff every argument is a constant.
    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.pred)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Atom {
    fmt_debug_as_display!();
}

/// A possibly negated atom; used in preconditions only. States and
/// effects hold positive atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, negated: true }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "(not {})", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

impl fmt::Debug for Literal {
    fmt_debug_as_display!();
}

/// A task occurrence: a task symbol with arguments. The surface "!"
/// prefix marks primitive tasks; it is stripped for storage and kept
/// as the `primitive` flag.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Task {
    pub name: Symbol,
    pub primitive: bool,
    pub args: Vec<Term>,
}

impl Task {
    pub fn new(name: impl Into<Symbol>, primitive: bool, args: Vec<Term>) -> Self {
        Task { name: name.into(), primitive, args }
    }

    /// Parse a surface task symbol, consuming a leading "!".
    pub fn from_surface(symbol: &str, args: Vec<Term>) -> Self {
        if let Some(rest) = symbol.strip_prefix('!') {
            Task::new(rest, true, args)
        } else {
            Task::new(symbol, false, args)
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{}", if self.primitive { "!" } else { "" }, self.name)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Task {
    fmt_debug_as_display!();
}

/// One entry of a task network: a single task, or a group of member
/// networks that may interleave freely with each other.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TaskNode {
    Task(Task),
    Unordered(Vec<TaskNetwork>),
}

/// An ordered sequence of task nodes. Sequence position encodes
/// precedence: node i must be fully accomplished before node i+1
/// begins, except inside an `Unordered` group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TaskNetwork {
    pub nodes: Vec<TaskNode>,
}

/// Addresses one eligible task inside a network. Eligible tasks always
/// sit at head positions, so a cursor is just the chain of member
/// indices taken at each unordered group on the way down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaskCursor(pub Vec<usize>);

impl TaskNetwork {
    pub fn new(nodes: Vec<TaskNode>) -> Self {
        let mut w = TaskNetwork { nodes };
        w.normalize();
        w
    }

    pub fn empty() -> Self {
        TaskNetwork::default()
    }

    pub fn of_tasks(tasks: Vec<Task>) -> Self {
        TaskNetwork::new(tasks.into_iter().map(TaskNode::Task).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// A network is primitive iff every contained task is primitive.
    pub fn is_primitive(&self) -> bool {
        self.tasks().all(|t| t.primitive)
    }

    pub fn is_ground(&self) -> bool {
        self.tasks().all(Task::is_ground)
    }

    /// Iterate over every task in the network, depth first, left to right.
    pub fn tasks(&self) -> impl Iterator<Item = &Task> {
        let mut out = Vec::new();
        fn walk<'a>(nodes: &'a [TaskNode], out: &mut Vec<&'a Task>) {
            for n in nodes {
                match n {
                    TaskNode::Task(t) => out.push(t),
                    TaskNode::Unordered(ms) => {
                        for m in ms {
                            walk(&m.nodes, out);
                        }
                    }
                }
            }
        }
        walk(&self.nodes, &mut out);
        out.into_iter()
    }

    /// Drop empty members and collapse trivial unordered groups so that
    /// structurally equal frontiers compare equal.
    fn normalize(&mut self) {
        let mut fresh = Vec::with_capacity(self.nodes.len());
        for node in self.nodes.drain(..) {
            match node {
                TaskNode::Task(t) => fresh.push(TaskNode::Task(t)),
                TaskNode::Unordered(members) => {
                    let mut kept: Vec<TaskNetwork> = Vec::new();
                    for mut m in members {
                        m.normalize();
                        if !m.is_empty() {
                            kept.push(m);
                        }
                    }
                    match kept.len() {
                        0 => {}
                        1 => fresh.extend(kept.remove(0).nodes),
                        _ => fresh.push(TaskNode::Unordered(kept)),
                    }
                }
            }
        }
        self.nodes = fresh;
    }

    /// The tasks that may be worked on next: the head node if it is a
    /// task, or the first task of each member of a head unordered group.
    pub fn first_eligible(&self) -> Vec<(TaskCursor, &Task)> {
        let mut out = Vec::new();
        fn walk<'a>(w: &'a TaskNetwork, path: &mut Vec<usize>, out: &mut Vec<(TaskCursor, &'a Task)>) {
            match w.nodes.first() {
                None => {}
                Some(TaskNode::Task(t)) => out.push((TaskCursor(path.clone()), t)),
                Some(TaskNode::Unordered(members)) => {
                    for (i, m) in members.iter().enumerate() {
                        path.push(i);
                        walk(m, path, out);
                        path.pop();
                    }
                }
            }
        }
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn task_at(&self, cursor: &TaskCursor) -> Option<&Task> {
        let mut w = self;
        for &m in &cursor.0 {
            match w.nodes.first()? {
                TaskNode::Unordered(members) => w = members.get(m)?,
                TaskNode::Task(_) => return None,
            }
        }
        match w.nodes.first()? {
            TaskNode::Task(t) => Some(t),
            TaskNode::Unordered(_) => None,
        }
    }

    /// Remove the task addressed by `cursor`, keeping surrounding order.
    pub fn remove_at(&self, cursor: &TaskCursor) -> TaskNetwork {
        self.splice_at(cursor, &TaskNetwork::empty())
    }

    /// Replace the task addressed by `cursor` with the nodes of
    /// `replacement`, spliced in place.
    pub fn splice_at(&self, cursor: &TaskCursor, replacement: &TaskNetwork) -> TaskNetwork {
        fn rebuild(w: &TaskNetwork, path: &[usize], replacement: &TaskNetwork) -> TaskNetwork {
            let mut nodes = Vec::with_capacity(w.nodes.len() + replacement.nodes.len());
            let mut rest = w.nodes.iter();
            let head = rest.next().expect("cursor points into an empty network");
            match (head, path.split_first()) {
                (TaskNode::Task(_), None) => {
                    nodes.extend(replacement.nodes.iter().cloned());
                }
                (TaskNode::Unordered(members), Some((&m, tail))) => {
                    let mut members = members.clone();
                    members[m] = rebuild(&members[m], tail, replacement);
                    nodes.push(TaskNode::Unordered(members));
                }
                _ => panic!("task cursor does not match network shape"),
            }
            nodes.extend(rest.cloned());
            TaskNetwork { nodes }
        }
        let mut out = rebuild(self, &cursor.0, replacement);
        out.normalize();
        out
    }
}

impl fmt::Display for TaskNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match n {
                TaskNode::Task(t) => write!(f, "{t}")?,
                TaskNode::Unordered(ms) => {
                    write!(f, "(:unordered")?;
                    for m in ms {
                        write!(f, " {m}")?;
                    }
                    write!(f, ")")?;
                }
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for TaskNetwork {
    fmt_debug_as_display!();
}

/// A primitive action: typed name, parameter variables, precondition
/// literals and STRIPS-style delete/add effect lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operator {
    pub name: Symbol,
    pub params: Vec<Symbol>,
    pub preconditions: Vec<Literal>,
    pub delete_effects: Vec<Atom>,
    pub add_effects: Vec<Atom>,
}

impl Operator {
    /// Checked constructor: every effect variable must be a parameter.
    pub fn new(
        name: impl Into<Symbol>,
        params: Vec<Symbol>,
        preconditions: Vec<Literal>,
        delete_effects: Vec<Atom>,
        add_effects: Vec<Atom>,
    ) -> Result<Self, ModelError> {
        let name = name.into();
        for atom in delete_effects.iter().chain(add_effects.iter()) {
            for t in &atom.args {
                if let Term::Var(v) = t {
                    if !params.contains(v) {
                        return Err(ModelError::FreeEffectVariable {
                            operator: name.to_string(),
                            var: v.to_string(),
                        });
                    }
                }
            }
        }
        Ok(Operator { name, params, preconditions, delete_effects, add_effects })
    }

    /// The operator head viewed as a primitive task over its parameters.
    pub fn head_task(&self) -> Task {
        Task::new(
            self.name.clone(),
            true,
            self.params.iter().map(|p| Term::Var(p.clone())).collect(),
        )
    }
}

/// One alternative decomposition of a method: precondition literals
/// guarding a subtask network.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Branch {
    pub preconditions: Vec<Literal>,
    pub subtasks: TaskNetwork,
}

/// A decomposition recipe for a nonprimitive task. Branches are kept in
/// source order and tried in that order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Method {
    pub head: Task,
    pub branches: Vec<Branch>,
}

impl Method {
    pub fn new(head: Task, branches: Vec<Branch>) -> Result<Self, ModelError> {
        if head.primitive {
            return Err(ModelError::PrimitiveMethodHead(head.to_string()));
        }
        if branches.is_empty() {
            return Err(ModelError::EmptyMethod(head.to_string()));
        }
        Ok(Method { head, branches })
    }

    pub fn name(&self) -> &Symbol {
        &self.head.name
    }
}

/// Operators plus methods, keyed by symbol. The two symbol sets are
/// disjoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Domain {
    pub name: Symbol,
    pub operators: IndexMap<Symbol, Operator>,
    pub methods: IndexMap<Symbol, Vec<Method>>,
}

impl Domain {
    pub fn new(
        name: impl Into<Symbol>,
        operators: Vec<Operator>,
        methods: Vec<Method>,
    ) -> Result<Self, ModelError> {
        let mut ops = IndexMap::new();
        for o in operators {
            ops.insert(o.name.clone(), o);
        }
        let mut ms: IndexMap<Symbol, Vec<Method>> = IndexMap::new();
        for m in methods {
            if ops.contains_key(m.name()) {
                return Err(ModelError::OperatorMethodClash(m.name().to_string()));
            }
            ms.entry(m.name().clone()).or_default().push(m);
        }
        Ok(Domain { name: name.into(), operators: ops, methods: ms })
    }

    pub fn operator(&self, name: &Symbol) -> Option<&Operator> {
        self.operators.get(name)
    }

    pub fn methods_for(&self, name: &Symbol) -> &[Method] {
        self.methods.get(name).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// A set of ground atoms, indexed by predicate symbol. Enumeration per
/// predicate follows insertion order, which keeps binding enumeration,
/// and therefore planner output, deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct State {
    by_pred: IndexMap<Symbol, IndexSet<Atom>>,
    len: usize,
}

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Result<Self, ModelError> {
        let mut s = State::new();
        for a in atoms {
            if !a.is_ground() {
                return Err(ModelError::NonGroundAtom(a.to_string()));
            }
            s.insert(a);
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.by_pred.get(&atom.pred).is_some_and(|set| set.contains(atom))
    }

    /// Insert a ground atom; duplicates are ignored.
    pub fn insert(&mut self, atom: Atom) {
        debug_assert!(atom.is_ground(), "state atoms must be ground: {atom}");
        if self.by_pred.entry(atom.pred.clone()).or_default().insert(atom) {
            self.len += 1;
        }
    }

    /// Remove an atom if present. Empty predicate buckets are dropped so
    /// that equality stays set-semantic.
    pub fn remove(&mut self, atom: &Atom) {
        if let Some(set) = self.by_pred.get_mut(&atom.pred) {
            if set.shift_remove(atom) {
                self.len -= 1;
            }
            if set.is_empty() {
                self.by_pred.shift_remove(&atom.pred);
            }
        }
    }

    pub fn atoms_with_pred(&self, pred: &Symbol) -> impl Iterator<Item = &Atom> {
        self.by_pred.get(pred).into_iter().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.by_pred.values().flatten()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A planning problem: ground initial state plus the initial network.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Problem {
    pub name: Symbol,
    pub domain_name: Symbol,
    pub initial_state: State,
    pub initial_network: TaskNetwork,
}

impl Problem {
    pub fn new(
        name: impl Into<Symbol>,
        domain_name: impl Into<Symbol>,
        initial_state: State,
        initial_network: TaskNetwork,
    ) -> Self {
        Problem {
            name: name.into(),
            domain_name: domain_name.into(),
            initial_state,
            initial_network,
        }
    }
}

/// A finite mapping from variables to terms. Bindings may chain
/// (x -> y, y -> c); `resolve` follows chains to a fixed point, so
/// application is idempotent once resolved.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    bindings: BTreeMap<Symbol, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn singleton(var: Symbol, term: Term) -> Self {
        let mut s = Substitution::new();
        s.bind(var, term);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, var: &Symbol) -> Option<&Term> {
        self.bindings.get(var)
    }

    /// Record `var -> term`. The caller is expected to bind resolved
    /// variables only; binding a variable to itself is rejected.
    pub fn bind(&mut self, var: Symbol, term: Term) {
        debug_assert!(var.as_str().starts_with('?'));
        if let Term::Var(v) = &term {
            if *v == var {
                return;
            }
        }
        self.bindings.insert(var, term);
    }

    /// Follow binding chains until a constant or an unbound variable is
    /// reached. The step bound guards against accidental cycles.
    pub fn resolve(&self, term: &Term) -> Term {
        let mut current = term.clone();
        for _ in 0..=self.bindings.len() {
            match &current {
                Term::Const(_) => return current,
                Term::Var(v) => match self.bindings.get(v) {
                    Some(next) => current = next.clone(),
                    None => return current,
                },
            }
        }
        current
    }

    pub fn apply_term(&self, term: &Term) -> Term {
        self.resolve(term)
    }

    pub fn apply_atom(&self, atom: &Atom) -> Atom {
        Atom {
            pred: atom.pred.clone(),
            args: atom.args.iter().map(|t| self.resolve(t)).collect(),
        }
    }

    pub fn apply_literal(&self, lit: &Literal) -> Literal {
        Literal { atom: self.apply_atom(&lit.atom), negated: lit.negated }
    }

    pub fn apply_task(&self, task: &Task) -> Task {
        Task {
            name: task.name.clone(),
            primitive: task.primitive,
            args: task.args.iter().map(|t| self.resolve(t)).collect(),
        }
    }

    pub fn apply_network(&self, w: &TaskNetwork) -> TaskNetwork {
        fn walk(nodes: &[TaskNode], s: &Substitution) -> Vec<TaskNode> {
            nodes
                .iter()
                .map(|n| match n {
                    TaskNode::Task(t) => TaskNode::Task(s.apply_task(t)),
                    TaskNode::Unordered(ms) => TaskNode::Unordered(
                        ms.iter()
                            .map(|m| TaskNetwork { nodes: walk(&m.nodes, s) })
                            .collect(),
                    ),
                })
                .collect()
        }
        TaskNetwork { nodes: walk(&w.nodes, self) }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.bindings.iter()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        write!(f, "}}")
    }
}

/// A finished plan: a sequence of ground operator instances.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plan {
    pub steps: Vec<Task>,
}

impl Plan {
    pub fn new(steps: Vec<Task>) -> Result<Self, ModelError> {
        for t in &steps {
            if !t.is_ground() {
                return Err(ModelError::NonGroundStep(t.to_string()));
            }
        }
        Ok(Plan { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Line-oriented text form: one step per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Plan {
    fmt_debug_as_display!();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn term_classification() {
        assert!(Term::from_name("?l").is_var());
        assert!(Term::from_name("l1").is_ground());
        assert_eq!(Term::from_name("?l"), v("?l"));
    }

    #[test]
    fn atom_groundness() {
        let g = Atom::new("on", vec![c("l1"), c("office")]);
        assert!(g.is_ground());
        let ng = Atom::new("on", vec![v("?l"), c("office")]);
        assert!(!ng.is_ground());
    }

    #[test]
    fn task_surface_prefix() {
        let t = Task::from_surface("!turn-on-light", vec![c("l"), c("R")]);
        assert!(t.primitive);
        assert_eq!(t.name.as_str(), "turn-on-light");
        assert!(t.is_ground());
        assert_eq!(t.to_string(), "(!turn-on-light l R)");
        let nt = Task::from_surface("adjust-office", vec![]);
        assert!(!nt.primitive);
    }

    #[test]
    fn substitution_single_binding() {
        let s = Substitution::singleton(Symbol::new("?l"), c("l1"));
        let a = Atom::new("on", vec![v("?l"), v("?r")]);
        assert_eq!(s.apply_atom(&a), Atom::new("on", vec![c("l1"), v("?r")]));
    }

    #[test]
    fn substitution_identity() {
        let s = Substitution::new();
        let a = Atom::new("on", vec![v("?l"), v("?r")]);
        assert_eq!(s.apply_atom(&a), a);
    }

    #[test]
    fn substitution_resolves_chains() {
        // ?x -> ?y -> c resolves transitively.
        let mut s = Substitution::new();
        s.bind(Symbol::new("?x"), v("?y"));
        s.bind(Symbol::new("?y"), c("c"));
        let a = Atom::new("p", vec![v("?x")]);
        assert_eq!(s.apply_atom(&a), Atom::new("p", vec![c("c")]));
    }

    #[test]
    fn substitution_idempotent_after_resolution() {
        let mut s = Substitution::new();
        s.bind(Symbol::new("?x"), v("?y"));
        s.bind(Symbol::new("?y"), c("c"));
        s.bind(Symbol::new("?z"), c("d"));
        let a = Atom::new("p", vec![v("?x"), v("?z"), v("?w"), c("k")]);
        let once = s.apply_atom(&a);
        assert_eq!(s.apply_atom(&once), once);
    }

    #[test]
    fn ground_terms_are_fixed_points() {
        let mut s = Substitution::new();
        s.bind(Symbol::new("?x"), c("a"));
        assert_eq!(s.apply_term(&c("b")), c("b"));
    }

    #[test]
    fn network_primitiveness_is_conjunction() {
        let prim = Task::from_surface("!a", vec![]);
        let nonprim = Task::from_surface("b", vec![]);
        let w = TaskNetwork::of_tasks(vec![prim.clone(), prim.clone()]);
        assert!(w.is_primitive());
        let w2 = TaskNetwork::of_tasks(vec![prim, nonprim]);
        assert!(!w2.is_primitive());
    }

    #[test]
    fn first_eligible_ordered_head_only() {
        let t1 = Task::from_surface("!t1", vec![]);
        let t2 = Task::from_surface("!t2", vec![]);
        let w = TaskNetwork::of_tasks(vec![t1.clone(), t2]);
        let elig = w.first_eligible();
        assert_eq!(elig.len(), 1);
        assert_eq!(elig[0].1, &t1);
    }

    #[test]
    fn first_eligible_unordered_heads() {
        let a = Task::from_surface("!a", vec![]);
        let b = Task::from_surface("!b", vec![]);
        let w = TaskNetwork::new(vec![TaskNode::Unordered(vec![
            TaskNetwork::of_tasks(vec![a.clone(), Task::from_surface("!a2", vec![])]),
            TaskNetwork::of_tasks(vec![b.clone()]),
        ])]);
        let elig = w.first_eligible();
        assert_eq!(elig.len(), 2);
        assert_eq!(elig[0].1, &a);
        assert_eq!(elig[1].1, &b);
    }

    #[test]
    fn splice_preserves_group_structure() {
        let a = Task::from_surface("x", vec![]);
        let b = Task::from_surface("!b", vec![]);
        let sub = TaskNetwork::of_tasks(vec![
            Task::from_surface("!s1", vec![]),
            Task::from_surface("!s2", vec![]),
        ]);
        let w = TaskNetwork::new(vec![TaskNode::Unordered(vec![
            TaskNetwork::of_tasks(vec![a]),
            TaskNetwork::of_tasks(vec![b.clone()]),
        ])]);
        let elig = w.first_eligible();
        let cur = &elig[0].0;
        let w2 = w.splice_at(cur, &sub);
        // still a two-member group, first member now holds s1 s2
        match &w2.nodes[0] {
            TaskNode::Unordered(ms) => {
                assert_eq!(ms.len(), 2);
                assert_eq!(ms[0].tasks().count(), 2);
                assert_eq!(ms[1].tasks().next(), Some(&b));
            }
            _ => panic!("group collapsed"),
        }
    }

    #[test]
    fn removing_last_member_task_collapses_group() {
        let a = Task::from_surface("!a", vec![]);
        let b = Task::from_surface("!b", vec![]);
        let w = TaskNetwork::new(vec![TaskNode::Unordered(vec![
            TaskNetwork::of_tasks(vec![a]),
            TaskNetwork::of_tasks(vec![b.clone()]),
        ])]);
        let elig = w.first_eligible();
        let cur = elig[0].0.clone();
        let w2 = w.remove_at(&cur);
        assert_eq!(w2, TaskNetwork::of_tasks(vec![b]));
    }

    #[test]
    fn state_set_semantics() {
        let on = Atom::new("on", vec![c("l"), c("R")]);
        let mut s = State::new();
        s.insert(on.clone());
        s.insert(on.clone());
        assert_eq!(s.len(), 1);
        assert!(s.contains(&on));
        s.remove(&on);
        assert!(!s.contains(&on));
        assert_eq!(s, State::new());
    }

    #[test]
    fn state_equality_ignores_insertion_order() {
        let a = Atom::new("p", vec![c("a")]);
        let b = Atom::new("q", vec![c("b")]);
        let s1 = State::from_atoms(vec![a.clone(), b.clone()]).unwrap();
        let s2 = State::from_atoms(vec![b, a]).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn operator_rejects_free_effect_variables() {
        let err = Operator::new(
            "op",
            vec![Symbol::new("?x")],
            vec![],
            vec![],
            vec![Atom::new("p", vec![v("?y")])],
        );
        assert!(matches!(err, Err(ModelError::FreeEffectVariable { .. })));
    }

    #[test]
    fn domain_rejects_operator_method_clash() {
        let op = Operator::new("x", vec![], vec![], vec![], vec![]).unwrap();
        let m = Method::new(
            Task::new("x", false, vec![]),
            vec![Branch { preconditions: vec![], subtasks: TaskNetwork::empty() }],
        )
        .unwrap();
        assert!(matches!(
            Domain::new("d", vec![op], vec![m]),
            Err(ModelError::OperatorMethodClash(_))
        ));
    }

    #[test]
    fn method_head_must_be_nonprimitive() {
        let err = Method::new(
            Task::new("x", true, vec![]),
            vec![Branch { preconditions: vec![], subtasks: TaskNetwork::empty() }],
        );
        assert!(matches!(err, Err(ModelError::PrimitiveMethodHead(_))));
    }

    #[test]
    fn plan_requires_ground_steps() {
        let err = Plan::new(vec![Task::new("a", true, vec![v("?x")])]);
        assert!(err.is_err());
    }
}
