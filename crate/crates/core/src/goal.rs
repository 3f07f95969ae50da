//! Goals: immutable trees of unification constraints and control nodes.
//!
//! Building a goal never searches and never allocates variables. The
//! connectives are also available as operators, chosen so that Rust's own
//! precedence matches the intended grouping:
//!
//! | combinator       | operator | binds      |
//! |------------------|----------|------------|
//! | [`conj`]         | `a & b`  | tightest   |
//! | [`cut_then`]     | `a ^ b`  |            |
//! | [`disj`]         | `a \| b` | loosest    |
//!
//! so `q.is(zero()) ^ fail() | lt(n, q) & n.is(r)` reads as
//! `(q === 0 @! fail) @| (lt n q @@ n === r)`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};
use std::sync::Arc;

use crate::term::{unify, AnyTerm, Bindings, Clash, Logic, Term, TypeTag};

#[derive(Clone)]
pub struct Goal(Arc<GoalKind>);

/// The node types of a goal tree.
pub enum GoalKind {
    Succeed,
    Fail,
    Unify(Equation),
    Conj(Goal, Goal),
    Disj(Goal, Goal),
    Exists(Fresh),
    Scope(Goal),
    CutThen(Goal, Goal),
    Ground(GroundCheck),
}

type Unifier = Box<dyn Fn(&Bindings) -> Result<Bindings, Clash> + Send + Sync>;

/// `left === right` for two terms of the same type.
pub struct Equation {
    apply: Unifier,
    left: Box<dyn AnyTerm>,
    right: Box<dyn AnyTerm>,
}

impl Equation {
    pub fn apply(&self, store: &Bindings) -> Result<Bindings, Clash> {
        (self.apply)(store)
    }

    pub fn left(&self) -> &dyn AnyTerm {
        self.left.as_ref()
    }

    pub fn right(&self) -> &dyn AnyTerm {
        self.right.as_ref()
    }
}

/// A body waiting for a fresh variable.
pub struct Fresh {
    body: Box<dyn Fn(u64) -> Goal + Send + Sync>,
    ty: TypeTag,
}

impl Fresh {
    /// Applies the body to the engine variable `_<index>`.
    pub fn instantiate(&self, index: u64) -> Goal {
        (self.body)(index)
    }

    pub fn type_tag(&self) -> TypeTag {
        self.ty
    }
}

pub struct GroundCheck {
    term: Box<dyn AnyTerm>,
}

impl GroundCheck {
    pub fn holds(&self, store: &Bindings) -> bool {
        self.term.is_ground_in_dyn(store)
    }

    pub fn term(&self) -> &dyn AnyTerm {
        self.term.as_ref()
    }
}

impl Goal {
    fn new(kind: GoalKind) -> Self {
        Goal(Arc::new(kind))
    }

    pub fn kind(&self) -> &GoalKind {
        &self.0
    }
}

pub fn succeed() -> Goal {
    Goal::new(GoalKind::Succeed)
}

pub fn fail() -> Goal {
    Goal::new(GoalKind::Fail)
}

/// Both goals, the second under each solution of the first.
pub fn conj(a: Goal, b: Goal) -> Goal {
    Goal::new(GoalKind::Conj(a, b))
}

/// All solutions of `a`, then all solutions of `b`.
pub fn disj(a: Goal, b: Goal) -> Goal {
    Goal::new(GoalKind::Disj(a, b))
}

pub fn eq<T: Logic>(a: impl Into<Term<T>>, b: impl Into<Term<T>>) -> Goal {
    let a = a.into();
    let b = b.into();
    let (l, r) = (a.clone(), b.clone());
    Goal::new(GoalKind::Unify(Equation {
        apply: Box::new(move |s| unify(&l, &r, s)),
        left: Box::new(a),
        right: Box::new(b),
    }))
}

/// Runs `body` on a variable that is fresh at evaluation time.
pub fn exists<T: Logic>(body: impl Fn(Term<T>) -> Goal + Send + Sync + 'static) -> Goal {
    Goal::new(GoalKind::Exists(Fresh {
        body: Box::new(move |i| body(Term::fresh(i))),
        ty: TypeTag::of::<T>(),
    }))
}

/// Delimits how far a cut inside `g` prunes.
pub fn scope(g: Goal) -> Goal {
    Goal::new(GoalKind::Scope(g))
}

/// Commits to the first solution of `a`, then runs `b`.
///
/// When `a` first succeeds, every untried alternative up to the enclosing
/// [`scope`] is discarded, including further solutions of `a`. A cut with
/// no enclosing scope prunes up to the query root.
pub fn cut_then(a: Goal, b: Goal) -> Goal {
    Goal::new(GoalKind::CutThen(a, b))
}

/// Negation as failure: succeeds once, binding nothing, iff `g` has no
/// solution under the current store.
///
/// `g` runs in its own scope, so a cut inside it cannot prune the
/// `succeed` branch.
pub fn neg(g: Goal) -> Goal {
    scope(cut_then(scope(g), fail()) | succeed())
}

pub fn neq<T: Logic>(a: impl Into<Term<T>>, b: impl Into<Term<T>>) -> Goal {
    neg(eq(a, b))
}

/// Succeeds iff `t` contains no unbound variables at that point.
pub fn is_ground<T: Logic>(t: impl Into<Term<T>>) -> Goal {
    Goal::new(GoalKind::Ground(GroundCheck {
        term: Box::new(t.into()),
    }))
}

/// Conjunction of every goal, `succeed` when empty.
pub fn all(goals: impl IntoIterator<Item = Goal>) -> Goal {
    let goals: Vec<Goal> = goals.into_iter().collect();
    goals
        .into_iter()
        .rev()
        .reduce(|acc, g| conj(g, acc))
        .unwrap_or_else(succeed)
}

/// Disjunction of every goal, `fail` when empty.
pub fn any(goals: impl IntoIterator<Item = Goal>) -> Goal {
    let goals: Vec<Goal> = goals.into_iter().collect();
    goals
        .into_iter()
        .rev()
        .reduce(|acc, g| disj(g, acc))
        .unwrap_or_else(fail)
}

impl<T: Logic> Term<T> {
    /// `self === other`.
    pub fn is(&self, other: impl Into<Term<T>>) -> Goal {
        eq(self.clone(), other)
    }

    /// `self =/= other`.
    pub fn is_not(&self, other: impl Into<Term<T>>) -> Goal {
        neq(self.clone(), other)
    }
}

impl BitAnd for Goal {
    type Output = Goal;

    fn bitand(self, rhs: Goal) -> Goal {
        conj(self, rhs)
    }
}

impl BitOr for Goal {
    type Output = Goal;

    fn bitor(self, rhs: Goal) -> Goal {
        disj(self, rhs)
    }
}

impl BitXor for Goal {
    type Output = Goal;

    fn bitxor(self, rhs: Goal) -> Goal {
        cut_then(self, rhs)
    }
}

impl fmt::Debug for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            GoalKind::Succeed => f.write_str("succeed"),
            GoalKind::Fail => f.write_str("fail"),
            GoalKind::Unify(e) => write!(f, "{} === {}", e.left.pretty(), e.right.pretty()),
            GoalKind::Conj(a, b) => write!(f, "({a:?} @@ {b:?})"),
            GoalKind::Disj(a, b) => write!(f, "({a:?} @| {b:?})"),
            GoalKind::Exists(_) => f.write_str("exists(..)"),
            GoalKind::Scope(g) => write!(f, "scope({g:?})"),
            GoalKind::CutThen(a, b) => write!(f, "({a:?} @! {b:?})"),
            GoalKind::Ground(g) => write!(f, "isGround({})", g.term.pretty()),
        }
    }
}
