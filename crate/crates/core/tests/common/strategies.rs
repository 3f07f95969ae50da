//! Term generators: random (proptest) and exhaustive.

use proptest::prelude::*;
use proptest::sample::select;

use typed_logic::prelude::{cons, nil, suc, zero, ListF, NatF, NatListTerm, NatTerm};
use typed_logic::Term;

pub const NAT_VARS: [&str; 3] = ["x", "y", "z"];
pub const LIST_VARS: [&str; 2] = ["xs", "ys"];

pub fn nat_term(depth: u32) -> BoxedStrategy<NatTerm> {
    let leaf = prop_oneof![Just(zero()), select(&NAT_VARS[..]).prop_map(Term::var),];
    leaf.prop_recursive(depth, 16, 1, |inner| inner.prop_map(suc))
        .boxed()
}

pub fn list_term(depth: u32) -> BoxedStrategy<NatListTerm> {
    let leaf = prop_oneof![Just(nil()), select(&LIST_VARS[..]).prop_map(Term::var),];
    let head_depth = depth.saturating_sub(1);
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        (nat_term(head_depth), inner).prop_map(|(h, t)| cons(h, t))
    })
    .boxed()
}

/// Replaces subterms by variables wherever `bits` says so, giving a term
/// that often unifies with the original.
pub fn generalize_nat(t: &NatTerm, bits: &mut u64) -> NatTerm {
    let pick = *bits & 7;
    *bits = bits.rotate_right(3);
    if pick == 0 {
        return Term::var(NAT_VARS[(*bits % 3) as usize]);
    }
    match t {
        Term::Compound(p) => match &**p {
            NatF::Suc(m) => suc(generalize_nat(m, bits)),
            NatF::Zero => t.clone(),
        },
        Term::Var(_) => t.clone(),
    }
}

pub fn generalize_list(t: &NatListTerm, bits: &mut u64) -> NatListTerm {
    let pick = *bits & 7;
    *bits = bits.rotate_right(3);
    if pick == 0 {
        return Term::var(LIST_VARS[(*bits % 2) as usize]);
    }
    match t {
        Term::Compound(p) => match &**p {
            ListF::Cons(h, tl) => cons(generalize_nat(h, bits), generalize_list(tl, bits)),
            ListF::Nil => t.clone(),
        },
        Term::Var(_) => t.clone(),
    }
}

/// Pairs mixing independent terms with term/generalization pairs.
pub fn nat_pair(depth: u32) -> BoxedStrategy<(NatTerm, NatTerm)> {
    prop_oneof![
        (nat_term(depth), nat_term(depth)),
        (nat_term(depth), any::<u64>()).prop_map(|(t, mut b)| {
            let g = generalize_nat(&t, &mut b);
            (t, g)
        }),
    ]
    .boxed()
}

pub fn list_pair(depth: u32) -> BoxedStrategy<(NatListTerm, NatListTerm)> {
    prop_oneof![
        (list_term(depth), list_term(depth)),
        (list_term(depth), any::<u64>()).prop_map(|(t, mut b)| {
            let g = generalize_list(&t, &mut b);
            (t, g)
        }),
    ]
    .boxed()
}

/// Every natural term of depth at most `depth` over the leaves `0`, `x`.
pub fn all_nats(depth: usize) -> Vec<NatTerm> {
    let mut out = Vec::new();
    for leaf in [zero(), Term::var("x")] {
        let mut t = leaf;
        for _ in 0..=depth {
            out.push(t.clone());
            t = suc(t);
        }
    }
    out
}

/// Every list term of depth at most `depth` over the leaves `[]`, `xs`,
/// with heads from [`all_nats`] of smaller depth.
pub fn all_lists(depth: usize) -> Vec<NatListTerm> {
    let mut out = vec![nil(), Term::var("xs")];
    if depth == 0 {
        return out;
    }
    let heads = all_nats(depth - 1);
    for tail in all_lists(depth - 1) {
        for h in &heads {
            out.push(cons(h.clone(), tail.clone()));
        }
    }
    out
}
