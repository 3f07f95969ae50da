//! Peano naturals, polymorphic lists, and the usual relations over them.
//!
//! Numbers convert into ground naturals and string literals into variables,
//! so predicates can be called as `plus(1, "x", 5)`.

use crate::goal::{exists, fail, neg, scope, Goal};
use crate::term::{Logic, Term};
use crate::Structure;

#[derive(Clone, PartialEq, Debug, Structure)]
pub enum NatF {
    Zero,
    Suc(Term<NatF>),
}

#[derive(Clone, PartialEq, Debug, Structure)]
pub enum ListF<A: Logic> {
    Nil,
    Cons(Term<A>, Term<ListF<A>>),
}

pub type NatTerm = Term<NatF>;
pub type ListTerm<A> = Term<ListF<A>>;
pub type NatListTerm = ListTerm<NatF>;

impl Logic for NatF {
    /// Ground numbers print as decimals; `k` successors of a variable `x`
    /// print as `k + x`.
    fn pretty(&self) -> String {
        let mut layers = 0u64;
        let mut current = self;
        loop {
            match current {
                NatF::Zero => return layers.to_string(),
                NatF::Suc(inner) => {
                    layers += 1;
                    match inner {
                        Term::Var(v) => return format!("{layers} + {v}"),
                        Term::Compound(p) => current = p,
                    }
                }
            }
        }
    }
}

impl<A: Logic> Logic for ListF<A> {
    /// `[1, 2, 3]` when nil-terminated, `1 : x : 5 : xs` otherwise.
    fn pretty(&self) -> String {
        let mut elems = Vec::new();
        let mut current = self;
        let tail = loop {
            match current {
                ListF::Nil => break None,
                ListF::Cons(h, t) => {
                    elems.push(h);
                    match t {
                        Term::Var(v) => break Some(v.to_string()),
                        Term::Compound(p) => current = p,
                    }
                }
            }
        };
        match tail {
            None => {
                let items: Vec<String> = elems.iter().map(|e| e.pretty()).collect();
                format!("[{}]", items.join(", "))
            }
            Some(var) => {
                let mut parts: Vec<String> = elems
                    .iter()
                    .map(|e| {
                        let p = e.pretty();
                        if p.contains(" : ") {
                            format!("({p})")
                        } else {
                            p
                        }
                    })
                    .collect();
                parts.push(var);
                parts.join(" : ")
            }
        }
    }
}

pub fn zero() -> NatTerm {
    Term::compound(NatF::Zero)
}

pub fn suc(n: impl Into<NatTerm>) -> NatTerm {
    Term::compound(NatF::Suc(n.into()))
}

/// The Peano encoding of `n`.
pub fn nat(n: u64) -> NatTerm {
    (0..n).fold(zero(), |acc, _| suc(acc))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a ground natural number: {0}")]
pub struct NotGround(pub String);

/// The integer denoted by a ground natural.
pub fn nat_value(t: &NatTerm) -> Result<u64, NotGround> {
    let mut n = 0;
    let mut current = t;
    loop {
        match current {
            Term::Var(_) => return Err(NotGround(t.pretty())),
            Term::Compound(p) => match p.as_ref() {
                NatF::Zero => return Ok(n),
                NatF::Suc(inner) => {
                    n += 1;
                    current = inner;
                }
            },
        }
    }
}

impl From<u64> for NatTerm {
    fn from(n: u64) -> Self {
        nat(n)
    }
}

impl From<i32> for NatTerm {
    /// # Panics
    ///
    /// On negative numbers.
    fn from(n: i32) -> Self {
        nat(u64::try_from(n).expect("natural numbers are non-negative"))
    }
}

pub fn nil<A: Logic>() -> ListTerm<A> {
    Term::compound(ListF::Nil)
}

pub fn cons<A: Logic>(head: impl Into<Term<A>>, tail: impl Into<ListTerm<A>>) -> ListTerm<A> {
    Term::compound(ListF::Cons(head.into(), tail.into()))
}

/// A nil-terminated list.
pub fn list<A: Logic, E: Into<Term<A>>>(elems: impl IntoIterator<Item = E>) -> ListTerm<A> {
    list_with_tail(elems, nil())
}

/// The elements consed onto `tail`.
pub fn list_with_tail<A: Logic, E: Into<Term<A>>>(
    elems: impl IntoIterator<Item = E>,
    tail: ListTerm<A>,
) -> ListTerm<A> {
    let elems: Vec<Term<A>> = elems.into_iter().map(Into::into).collect();
    elems.into_iter().rev().fold(tail, |acc, e| cons(e, acc))
}

impl<A: Logic, E: Into<Term<A>>> From<Vec<E>> for ListTerm<A> {
    fn from(elems: Vec<E>) -> Self {
        list(elems)
    }
}

impl<A: Logic, E: Into<Term<A>> + Clone> From<&[E]> for ListTerm<A> {
    fn from(elems: &[E]) -> Self {
        list(elems.iter().cloned())
    }
}

impl<A: Logic, E: Into<Term<A>>, const N: usize> From<[E; N]> for ListTerm<A> {
    fn from(elems: [E; N]) -> Self {
        list(elems)
    }
}

/// `a + b = c`.
pub fn plus(a: impl Into<NatTerm>, b: impl Into<NatTerm>, c: impl Into<NatTerm>) -> Goal {
    let (a, b, c) = (a.into(), b.into(), c.into());
    a.is(zero()) & b.is(c.clone())
        | exists(move |x: NatTerm| {
            let (a, b, c) = (a.clone(), b.clone(), c.clone());
            exists(move |z: NatTerm| {
                a.is(suc(x.clone())) & c.is(suc(z.clone())) & plus(x.clone(), b.clone(), z)
            })
        })
}

/// `y` is the successor of `x`.
pub fn is_suc(x: impl Into<NatTerm>, y: impl Into<NatTerm>) -> Goal {
    suc(x).is(y)
}

pub fn leq(x: impl Into<NatTerm>, y: impl Into<NatTerm>) -> Goal {
    let (x, y) = (x.into(), y.into());
    exists(move |x1: NatTerm| {
        let (x, y) = (x.clone(), y.clone());
        exists(move |y1: NatTerm| {
            x.is(zero()) | x.is(suc(x1.clone())) & y.is(suc(y1.clone())) & leq(x1.clone(), y1)
        })
    })
}

pub fn lt(x: impl Into<NatTerm>, y: impl Into<NatTerm>) -> Goal {
    leq(suc(x), y)
}

pub fn is_head<A: Logic>(xs: impl Into<ListTerm<A>>, y: impl Into<Term<A>>) -> Goal {
    let (xs, y) = (xs.into(), y.into());
    exists(move |tl: ListTerm<A>| xs.is(cons(y.clone(), tl)))
}

pub fn is_tail<A: Logic>(xs: impl Into<ListTerm<A>>, ys: impl Into<ListTerm<A>>) -> Goal {
    let (xs, ys) = (xs.into(), ys.into());
    exists(move |h: Term<A>| xs.is(cons(h, ys.clone())))
}

pub fn member<A: Logic>(x: impl Into<Term<A>>, xs: impl Into<ListTerm<A>>) -> Goal {
    let (x, xs) = (x.into(), xs.into());
    let first = {
        let (x, xs) = (x.clone(), xs.clone());
        exists(move |tl: ListTerm<A>| xs.is(cons(x.clone(), tl)))
    };
    let rest = exists(move |hd: Term<A>| {
        let (x, xs) = (x.clone(), xs.clone());
        exists(move |tl: ListTerm<A>| xs.is(cons(hd.clone(), tl.clone())) & member(x.clone(), tl))
    });
    first | rest
}

pub fn not_member<A: Logic>(x: impl Into<Term<A>>, xs: impl Into<ListTerm<A>>) -> Goal {
    neg(member(x, xs))
}

/// Ascending order under `leq`.
pub fn sorted(v: impl Into<NatListTerm>) -> Goal {
    sorted_with(leq, v)
}

/// Every adjacent pair `(a, b)` satisfies `compare(a, b)`.
pub fn sorted_with<A, F>(compare: F, v: impl Into<ListTerm<A>>) -> Goal
where
    A: Logic,
    F: Fn(Term<A>, Term<A>) -> Goal + Clone + Send + Sync + 'static,
{
    let v = v.into();
    let single = {
        let v = v.clone();
        exists(move |x: Term<A>| v.is(cons(x, nil())))
    };
    let pairs = {
        let v = v.clone();
        exists(move |x1: Term<A>| {
            let (v, compare) = (v.clone(), compare.clone());
            exists(move |x2: Term<A>| {
                let (v, compare, x1) = (v.clone(), compare.clone(), x1.clone());
                exists(move |xs: ListTerm<A>| {
                    v.is(cons(x1.clone(), cons(x2.clone(), xs.clone())))
                        & compare(x1.clone(), x2.clone())
                        & sorted_with(compare.clone(), cons(x2.clone(), xs))
                })
            })
        })
    };
    v.is(nil()) | single | pairs
}

/// Relates lists pointwise through `f`.
pub fn map_p<A, B, F>(f: F, l1: impl Into<ListTerm<A>>, l2: impl Into<ListTerm<B>>) -> Goal
where
    A: Logic,
    B: Logic,
    F: Fn(Term<A>, Term<B>) -> Goal + Clone + Send + Sync + 'static,
{
    let (l1, l2) = (l1.into(), l2.into());
    let empty = l1.is(nil()) & l2.is(nil());
    let step = exists(move |h1: Term<A>| {
        let (f, l1, l2) = (f.clone(), l1.clone(), l2.clone());
        exists(move |t1: ListTerm<A>| {
            let (f, l1, l2, h1) = (f.clone(), l1.clone(), l2.clone(), h1.clone());
            exists(move |h2: Term<B>| {
                let (f, l1, l2, h1, t1) =
                    (f.clone(), l1.clone(), l2.clone(), h1.clone(), t1.clone());
                exists(move |t2: ListTerm<B>| {
                    l1.is(cons(h1.clone(), t1.clone()))
                        & l2.is(cons(h2.clone(), t2.clone()))
                        & f(h1.clone(), h2.clone())
                        & map_p(f.clone(), t1.clone(), t2)
                })
            })
        })
    });
    empty | step
}

/// Adds one to every element.
pub fn list_plus_one(l1: impl Into<NatListTerm>, l2: impl Into<NatListTerm>) -> Goal {
    map_p(is_suc, l1, l2)
}

/// `r` is `n` modulo `q`. Fails finitely when `q` is zero.
pub fn remainder(n: impl Into<NatTerm>, q: impl Into<NatTerm>, r: impl Into<NatTerm>) -> Goal {
    let (n, q, r) = (n.into(), q.into(), r.into());
    let recurse = {
        let (n, q, r) = (n.clone(), q.clone(), r.clone());
        exists(move |diff: NatTerm| {
            plus(q.clone(), diff.clone(), n.clone()) & remainder(diff, q.clone(), r.clone())
        })
    };
    scope(q.is(zero()) ^ fail() | lt(n.clone(), q.clone()) & n.is(r) | recurse)
}

/// `zs` is `xs` followed by `ys`.
pub fn append<A: Logic>(
    xs: impl Into<ListTerm<A>>,
    ys: impl Into<ListTerm<A>>,
    zs: impl Into<ListTerm<A>>,
) -> Goal {
    let (xs, ys, zs) = (xs.into(), ys.into(), zs.into());
    let base = xs.is(nil()) & ys.is(zs.clone());
    let step = exists(move |h: Term<A>| {
        let (xs, ys, zs) = (xs.clone(), ys.clone(), zs.clone());
        exists(move |t: ListTerm<A>| {
            let (xs, ys, zs, h) = (xs.clone(), ys.clone(), zs.clone(), h.clone());
            exists(move |r: ListTerm<A>| {
                xs.is(cons(h.clone(), t.clone()))
                    & zs.is(cons(h.clone(), r.clone()))
                    & append(t.clone(), ys.clone(), r)
            })
        })
    });
    base | step
}
