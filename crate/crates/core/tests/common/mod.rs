//! Test support: an eager reference interpreter and a few enumerators.
//!
//! The interpreter materialises every solution of a goal by plain
//! recursion, returning the solutions together with a flag recording
//! whether a cut escaped. It shares nothing with the lazy solver beyond the
//! goal tree and unification.

#![allow(dead_code)]

pub mod reference;
pub mod strategies;

use typed_logic::goal::{Goal, GoalKind};
use typed_logic::prelude::{list, nat, NatListTerm, NatTerm};
use typed_logic::{Bindings, Logic, Term};

pub struct Eager {
    counter: u64,
    fuel: u64,
}

/// Node visits allowed before the interpreter gives up; only reached if a
/// caller hands it an infinite search tree.
const FUEL: u64 = 50_000_000;

impl Eager {
    pub fn run(goal: &Goal) -> Vec<Bindings> {
        let mut e = Eager {
            counter: 0,
            fuel: FUEL,
        };
        e.eval(goal, Bindings::new()).0
    }

    fn eval(&mut self, goal: &Goal, s: Bindings) -> (Vec<Bindings>, bool) {
        self.fuel = self
            .fuel
            .checked_sub(1)
            .expect("eager interpreter ran out of fuel: infinite search tree");
        match goal.kind() {
            GoalKind::Succeed => (vec![s], false),
            GoalKind::Fail => (vec![], false),
            GoalKind::Unify(eq) => (eq.apply(&s).into_iter().collect(), false),
            GoalKind::Ground(check) => {
                if check.holds(&s) {
                    (vec![s], false)
                } else {
                    (vec![], false)
                }
            }
            GoalKind::Conj(a, b) => {
                let (left, cut_a) = self.eval(a, s);
                let mut out = Vec::new();
                for s1 in left {
                    let (right, cut_b) = self.eval(b, s1);
                    out.extend(right);
                    if cut_b {
                        return (out, true);
                    }
                }
                (out, cut_a)
            }
            GoalKind::Disj(a, b) => {
                let (mut left, cut_a) = self.eval(a, s.clone());
                if cut_a {
                    return (left, true);
                }
                let (right, cut_b) = self.eval(b, s);
                left.extend(right);
                (left, cut_b)
            }
            GoalKind::Exists(fresh) => {
                let i = self.counter;
                self.counter += 1;
                let body = fresh.instantiate(i);
                self.eval(&body, s)
            }
            GoalKind::Scope(g) => (self.eval(g, s).0, false),
            GoalKind::CutThen(a, b) => {
                let (first, cut_a) = self.eval(a, s);
                match first.into_iter().next() {
                    None => (vec![], cut_a),
                    Some(s1) => (self.eval(b, s1).0, true),
                }
            }
        }
    }
}

/// Resolved pretty form of `vars` under a store, with engine variables
/// renamed in order of appearance so that counters do not matter.
pub fn project<T: Logic>(store: &Bindings, vars: &[Term<T>]) -> Vec<String> {
    let raw: Vec<String> = vars.iter().map(|v| v.resolve(store).pretty()).collect();
    canonical(&raw)
}

pub fn canonical(items: &[String]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    items
        .iter()
        .map(|s| {
            let mut out = String::new();
            let chars: Vec<char> = s.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                if chars[i] == '_' && i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    let mut j = i + 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let name: String = chars[i..j].iter().collect();
                    let idx = match names.iter().position(|n| *n == name) {
                        Some(p) => p,
                        None => {
                            names.push(name);
                            names.len() - 1
                        }
                    };
                    out.push_str(&format!("_G{idx}"));
                    i = j;
                } else {
                    out.push(chars[i]);
                    i += 1;
                }
            }
            out
        })
        .collect()
}

pub fn nats(max: u64) -> Vec<NatTerm> {
    (0..=max).map(nat).collect()
}

/// Every list over `alphabet` with length at most `max_len`.
pub fn nat_lists(alphabet: &[u64], max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &a in alphabet {
                let mut l: Vec<u64> = prefix.clone();
                l.push(a);
                next.push(l);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn nat_list(xs: &[u64]) -> NatListTerm {
    list(xs.iter().map(|&n| nat(n)))
}
