//! Hand-written logic operations for naturals and lists of naturals,
//! written directly against the constructors. The derived operations are
//! checked against these.

use std::sync::Arc;

use typed_logic::prelude::{ListF, NatF, NatListTerm, NatTerm};
use typed_logic::{Bindings, Logic, Term, VarId};

fn is_var<T: Logic>(name: &str, v: &VarId) -> bool {
    v.type_tag() == typed_logic::TypeTag::of::<T>() && v.name() == name
}

pub fn occurs_nat(v: &VarId, t: &NatTerm) -> bool {
    match t {
        Term::Var(n) => is_var::<NatF>(n, v),
        Term::Compound(p) => match &**p {
            NatF::Zero => false,
            NatF::Suc(m) => occurs_nat(v, m),
        },
    }
}

pub fn occurs_list(v: &VarId, t: &NatListTerm) -> bool {
    match t {
        Term::Var(n) => is_var::<ListF<NatF>>(n, v),
        Term::Compound(p) => match &**p {
            ListF::Nil => false,
            ListF::Cons(h, tl) => occurs_nat(v, h) || occurs_list(v, tl),
        },
    }
}

pub fn ground_nat(t: &NatTerm) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Compound(p) => match &**p {
            NatF::Zero => true,
            NatF::Suc(m) => ground_nat(m),
        },
    }
}

pub fn ground_list(t: &NatListTerm) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Compound(p) => match &**p {
            ListF::Nil => true,
            ListF::Cons(h, tl) => ground_nat(h) && ground_list(tl),
        },
    }
}

pub fn subst_nat(t: &NatTerm, v: &VarId, value: &NatTerm) -> NatTerm {
    match t {
        Term::Var(n) if is_var::<NatF>(n, v) => value.clone(),
        Term::Var(_) => t.clone(),
        Term::Compound(p) => match &**p {
            NatF::Zero => t.clone(),
            NatF::Suc(m) => Term::compound(NatF::Suc(subst_nat(m, v, value))),
        },
    }
}

pub fn subst_list_nat(t: &NatListTerm, v: &VarId, value: &NatTerm) -> NatListTerm {
    match t {
        Term::Var(_) => t.clone(),
        Term::Compound(p) => match &**p {
            ListF::Nil => t.clone(),
            ListF::Cons(h, tl) => Term::compound(ListF::Cons(
                subst_nat(h, v, value),
                subst_list_nat(tl, v, value),
            )),
        },
    }
}

pub fn prefix_nat(p: &NatF) -> String {
    match p {
        NatF::Zero => "Zero".into(),
        NatF::Suc(m) => format!("Suc({})", m.pretty()),
    }
}

pub fn prefix_list(p: &ListF<NatF>) -> String {
    match p {
        ListF::Nil => "Nil".into(),
        ListF::Cons(h, t) => format!("Cons({}, {})", h.pretty(), t.pretty()),
    }
}

fn walk_nat(t: &NatTerm, s: &Bindings) -> NatTerm {
    let mut t = t.clone();
    while let Term::Var(n) = &t {
        match s.lookup::<NatF>(n) {
            Some(next) => t = next,
            None => break,
        }
    }
    t
}

fn walk_list(t: &NatListTerm, s: &Bindings) -> NatListTerm {
    let mut t = t.clone();
    while let Term::Var(n) = &t {
        match s.lookup::<ListF<NatF>>(n) {
            Some(next) => t = next,
            None => break,
        }
    }
    t
}

fn occurs_nat_in(v: &VarId, t: &NatTerm, s: &Bindings) -> bool {
    match walk_nat(t, s) {
        Term::Var(n) => is_var::<NatF>(&n, v),
        Term::Compound(p) => match &*p {
            NatF::Zero => false,
            NatF::Suc(m) => occurs_nat_in(v, m, s),
        },
    }
}

fn occurs_list_in(v: &VarId, t: &NatListTerm, s: &Bindings) -> bool {
    match walk_list(t, s) {
        Term::Var(n) => is_var::<ListF<NatF>>(&n, v),
        Term::Compound(p) => match &*p {
            ListF::Nil => false,
            ListF::Cons(h, tl) => occurs_nat_in(v, h, s) || occurs_list_in(v, tl, s),
        },
    }
}

pub fn unify_nat(a: &NatTerm, b: &NatTerm, s: &Bindings) -> Option<Bindings> {
    let (a, b) = (walk_nat(a, s), walk_nat(b, s));
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => Some(s.clone()),
        (Term::Var(x), _) => {
            let v = VarId::of::<NatF>(x);
            (!occurs_nat_in(&v, &b, s)).then(|| s.bind(v, Arc::new(b.clone())))
        }
        (_, Term::Var(y)) => {
            let v = VarId::of::<NatF>(y);
            (!occurs_nat_in(&v, &a, s)).then(|| s.bind(v, Arc::new(a.clone())))
        }
        (Term::Compound(p), Term::Compound(q)) => step_nat(p, q, s),
    }
}

pub fn step_nat(p: &NatF, q: &NatF, s: &Bindings) -> Option<Bindings> {
    match (p, q) {
        (NatF::Zero, NatF::Zero) => Some(s.clone()),
        (NatF::Suc(m), NatF::Suc(n)) => unify_nat(m, n, s),
        _ => None,
    }
}

pub fn unify_list(a: &NatListTerm, b: &NatListTerm, s: &Bindings) -> Option<Bindings> {
    let (a, b) = (walk_list(a, s), walk_list(b, s));
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => Some(s.clone()),
        (Term::Var(x), _) => {
            let v = VarId::of::<ListF<NatF>>(x);
            (!occurs_list_in(&v, &b, s)).then(|| s.bind(v, Arc::new(b.clone())))
        }
        (_, Term::Var(y)) => {
            let v = VarId::of::<ListF<NatF>>(y);
            (!occurs_list_in(&v, &a, s)).then(|| s.bind(v, Arc::new(a.clone())))
        }
        (Term::Compound(p), Term::Compound(q)) => step_list(p, q, s),
    }
}

pub fn step_list(p: &ListF<NatF>, q: &ListF<NatF>, s: &Bindings) -> Option<Bindings> {
    match (p, q) {
        (ListF::Nil, ListF::Nil) => Some(s.clone()),
        (ListF::Cons(h1, t1), ListF::Cons(h2, t2)) => {
            let s = unify_nat(h1, h2, s)?;
            unify_list(t1, t2, &s)
        }
        _ => None,
    }
}
