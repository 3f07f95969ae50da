//! Depth-first evaluation of goals into a lazy stream of solutions.
//!
//! The solver is a small abstract machine. The pending work is a persistent
//! stack of frames (the continuation); every disjunction pushes a choice
//! point holding the alternative continuation and the store to resume with.
//! Each frame remembers the height of the choice stack at its nearest
//! enclosing `scope`, and a cut simply truncates the choice stack back to
//! that height. Nothing is evaluated until a solution is requested.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::goal::{Goal, GoalKind};
use crate::term::{AnyTerm, Bindings, Logic, Term, VarId};

/// Store plus the next fresh-variable index.
#[derive(Clone, Debug, Default)]
pub struct SolverState {
    pub store: Bindings,
    pub counter: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("step budget exhausted after {steps} steps")]
pub struct BudgetExhausted {
    pub steps: u64,
}

/// One answer: the user-visible bindings, fully resolved.
#[derive(Clone)]
pub struct Solution {
    bindings: BTreeMap<VarId, Box<dyn AnyTerm>>,
    store: Bindings,
    counter: u64,
}

impl Solution {
    fn project(store: Bindings, counter: u64) -> Self {
        let bindings = store
            .iter()
            .filter(|(var, _)| !var.is_generated())
            .map(|(var, value)| (var.clone(), value.resolve_dyn(&store)))
            .collect();
        Solution {
            bindings,
            store,
            counter,
        }
    }

    /// Bound user variables, ordered by name.
    pub fn bindings(&self) -> impl Iterator<Item = (&VarId, &dyn AnyTerm)> {
        self.bindings.iter().map(|(k, v)| (k, v.as_ref()))
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get<T: Logic>(&self, name: &str) -> Option<Term<T>> {
        self.bindings
            .get(&VarId::of::<T>(name))
            .and_then(|t| t.as_any().downcast_ref::<Term<T>>().cloned())
    }

    /// Applies this solution's full store to any term.
    pub fn resolve<T: Logic>(&self, term: &Term<T>) -> Term<T> {
        term.resolve(&self.store)
    }

    pub fn store(&self) -> &Bindings {
        &self.store
    }

    /// Value of the fresh-variable counter when this solution was found.
    pub fn counter(&self) -> u64 {
        self.counter
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (var, value)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} = {}", var, value.pretty())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

enum Work {
    Run(Goal),
    Cut,
}

struct Frame {
    work: Work,
    /// Choice-stack height at the nearest enclosing scope.
    barrier: usize,
    next: Cont,
}

type Cont = Option<Arc<Frame>>;

impl Drop for Frame {
    // Long continuations would otherwise be dropped recursively.
    fn drop(&mut self) {
        let mut next = self.next.take();
        while let Some(frame) = next {
            match Arc::try_unwrap(frame) {
                Ok(mut frame) => next = frame.next.take(),
                Err(_) => break,
            }
        }
    }
}

fn push(work: Work, barrier: usize, next: Cont) -> Cont {
    Some(Arc::new(Frame {
        work,
        barrier,
        next,
    }))
}

struct Choice {
    cont: Cont,
    store: Bindings,
}

/// Lazy stream of solutions. Iterating never fails; with a budget set, the
/// iterator ends early and [`Solutions::exhausted`] reports why.
pub struct Solutions {
    current: Option<(Cont, Bindings)>,
    choices: Vec<Choice>,
    counter: u64,
    steps: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Solutions {
    /// Caps the number of node expansions for the whole stream.
    pub fn with_budget(mut self, max_steps: u64) -> Self {
        self.budget = Some(max_steps);
        self
    }

    /// Node expansions performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    /// Next solution, `Ok(None)` once the search space is exhausted.
    pub fn try_next(&mut self) -> Result<Option<Solution>, BudgetExhausted> {
        if self.exhausted {
            return Err(BudgetExhausted { steps: self.steps });
        }
        loop {
            let (mut cont, mut store) = match self.current.take() {
                Some(state) => state,
                None => match self.choices.pop() {
                    Some(choice) => (choice.cont, choice.store),
                    None => return Ok(None),
                },
            };
            loop {
                let Some(frame) = cont else {
                    return Ok(Some(Solution::project(store, self.counter)));
                };
                if self.budget.is_some_and(|b| self.steps >= b) {
                    self.exhausted = true;
                    return Err(BudgetExhausted { steps: self.steps });
                }
                self.steps += 1;
                let barrier = frame.barrier;
                let rest = frame.next.clone();
                let goal = match &frame.work {
                    Work::Cut => {
                        self.choices.truncate(barrier);
                        cont = rest;
                        continue;
                    }
                    Work::Run(goal) => goal.clone(),
                };
                drop(frame);
                match goal.kind() {
                    GoalKind::Succeed => cont = rest,
                    GoalKind::Fail => break,
                    GoalKind::Unify(eq) => match eq.apply(&store) {
                        Ok(s) => {
                            store = s;
                            cont = rest;
                        }
                        Err(_) => break,
                    },
                    GoalKind::Ground(check) => {
                        if !check.holds(&store) {
                            break;
                        }
                        cont = rest;
                    }
                    GoalKind::Conj(a, b) => {
                        let after = push(Work::Run(b.clone()), barrier, rest);
                        cont = push(Work::Run(a.clone()), barrier, after);
                    }
                    GoalKind::Disj(a, b) => {
                        self.choices.push(Choice {
                            cont: push(Work::Run(b.clone()), barrier, rest.clone()),
                            store: store.clone(),
                        });
                        cont = push(Work::Run(a.clone()), barrier, rest);
                    }
                    GoalKind::Exists(fresh) => {
                        let body = fresh.instantiate(self.counter);
                        self.counter += 1;
                        cont = push(Work::Run(body), barrier, rest);
                    }
                    GoalKind::Scope(g) => {
                        cont = push(Work::Run(g.clone()), self.choices.len(), rest);
                    }
                    GoalKind::CutThen(a, b) => {
                        let then = push(Work::Run(b.clone()), barrier, rest);
                        let cut = push(Work::Cut, barrier, then);
                        cont = push(Work::Run(a.clone()), barrier, cut);
                    }
                }
            }
        }
    }
}

impl Iterator for Solutions {
    type Item = Solution;

    fn next(&mut self) -> Option<Solution> {
        self.try_next().ok().flatten()
    }
}

pub fn solve(goal: &Goal) -> Solutions {
    solve_from(goal, SolverState::default())
}

pub fn solve_from(goal: &Goal, initial: SolverState) -> Solutions {
    Solutions {
        current: Some((push(Work::Run(goal.clone()), 0, None), initial.store)),
        choices: Vec::new(),
        counter: initial.counter,
        steps: 0,
        budget: None,
        exhausted: false,
    }
}

/// The value of `var` under every solution of `goal`, in order.
///
/// Does not return if `goal` has infinitely many solutions; see
/// [`find_all_n`]. Values may still contain variables.
pub fn find_all<T: Logic>(var: &Term<T>, goal: &Goal) -> Vec<Term<T>> {
    solve(goal).map(|s| s.resolve(var)).collect()
}

/// Like [`find_all`], stopping after `n` solutions.
pub fn find_all_n<T: Logic>(var: &Term<T>, goal: &Goal, n: usize) -> Vec<Term<T>> {
    solve(goal).take(n).map(|s| s.resolve(var)).collect()
}

/// Whether `goal` has at least one solution. Only the first is searched for.
pub fn holds(goal: &Goal) -> bool {
    solve(goal).next().is_some()
}
