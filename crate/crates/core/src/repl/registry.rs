//! Predicates callable from the query language, with their argument types.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::syntax::{parse, ParseError, QueryExpr, SurfaceTerm};
use crate::derive::{DeriveError, TypeRegistry};
use crate::goal::{conj, disj, fail, is_ground, neg, neq, succeed, Goal};
use crate::prelude::{
    append, is_head, is_suc, is_tail, leq, list_plus_one, list_with_tail, lt, member, nat,
    not_member, plus, remainder, sorted, ListF, NatF,
};
use crate::term::{AnyTerm, Bindings, Logic, Term};

/// Types as they are written in the query language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SurfaceType {
    Nat,
    List(Box<SurfaceType>),
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceType::Nat => f.write_str("nat"),
            SurfaceType::List(a) => write!(f, "list({a})"),
        }
    }
}

type VarMaker = fn(&str) -> Box<dyn AnyTerm>;

fn make_var<T: Logic>(name: &str) -> Box<dyn AnyTerm> {
    Box::new(Term::<T>::Var(name.into()))
}

/// Every logic type reachable from registered predicates.
#[derive(Default)]
pub struct TypeTable {
    vars: HashMap<SurfaceType, VarMaker>,
    logic: TypeRegistry,
}

impl TypeTable {
    pub fn insert<T: Surface>(&mut self) {
        self.vars.insert(T::surface_type(), make_var::<T>);
        self.logic.declare_type::<T>();
    }

    pub fn var(&self, ty: &SurfaceType, name: &str) -> Option<Box<dyn AnyTerm>> {
        self.vars.get(ty).map(|make| make(name))
    }
}

/// A logic type that can be written in queries.
pub trait Surface: Logic {
    fn surface_type() -> SurfaceType;

    /// Declares this type and every type it contains.
    fn declare(table: &mut TypeTable);

    /// Converts a term that has already been type-checked against
    /// [`Surface::surface_type`].
    fn from_surface(term: &SurfaceTerm) -> Term<Self>;
}

fn unchecked(term: &SurfaceTerm, ty: SurfaceType) -> ! {
    panic!("surface term {term} was not checked against {ty}")
}

fn var_of<T: Logic>(term: &SurfaceTerm) -> Option<Term<T>> {
    match term {
        SurfaceTerm::Var { name, .. } | SurfaceTerm::Wildcard { name, .. } => {
            Some(Term::Var(name.as_str().into()))
        }
        _ => None,
    }
}

impl Surface for NatF {
    fn surface_type() -> SurfaceType {
        SurfaceType::Nat
    }

    fn declare(table: &mut TypeTable) {
        table.insert::<NatF>();
    }

    fn from_surface(term: &SurfaceTerm) -> Term<Self> {
        match term {
            SurfaceTerm::Int { value, .. } => nat(*value),
            t => var_of(t).unwrap_or_else(|| unchecked(t, Self::surface_type())),
        }
    }
}

impl<A: Surface> Surface for ListF<A> {
    fn surface_type() -> SurfaceType {
        SurfaceType::List(Box::new(A::surface_type()))
    }

    fn declare(table: &mut TypeTable) {
        A::declare(table);
        table.insert::<ListF<A>>();
    }

    fn from_surface(term: &SurfaceTerm) -> Term<Self> {
        match term {
            SurfaceTerm::List { items, tail, .. } => {
                let tail = tail
                    .as_deref()
                    .map(Self::from_surface)
                    .unwrap_or_else(crate::prelude::nil);
                list_with_tail(items.iter().map(A::from_surface), tail)
            }
            t => var_of(t).unwrap_or_else(|| unchecked(t, Self::surface_type())),
        }
    }
}

type Builder = Arc<dyn Fn(&[SurfaceTerm]) -> Goal + Send + Sync>;

/// Something that can be registered as a predicate: a goal-returning
/// function of zero to three typed terms.
pub trait IntoPredicate<Args> {
    fn signature() -> Vec<SurfaceType>;
    fn declare(table: &mut TypeTable);
    fn into_builder(self) -> Builder;
}

macro_rules! impl_into_predicate {
    ($($ty:ident $idx:tt),*) => {
        impl<F, $($ty: Surface),*> IntoPredicate<($($ty,)*)> for F
        where
            F: Fn($(Term<$ty>),*) -> Goal + Send + Sync + 'static,
        {
            fn signature() -> Vec<SurfaceType> {
                vec![$($ty::surface_type()),*]
            }

            #[allow(unused_variables)]
            fn declare(table: &mut TypeTable) {
                $($ty::declare(table);)*
            }

            fn into_builder(self) -> Builder {
                #[allow(unused_variables)]
                Arc::new(move |args: &[SurfaceTerm]| self($($ty::from_surface(&args[$idx])),*))
            }
        }
    };
}

impl_into_predicate!();
impl_into_predicate!(A 0);
impl_into_predicate!(A 0, B 1);
impl_into_predicate!(A 0, B 1, C 2);

#[derive(Clone)]
pub struct Predicate {
    pub name: String,
    pub signature: Vec<SurfaceType>,
    build: Builder,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.signature.is_empty() {
            let args: Vec<String> = self.signature.iter().map(|t| t.to_string()).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("predicate {name}/{arity} is already registered")]
    Duplicate { name: String, arity: usize },
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown predicate {name}/{arity}")]
    UnknownPredicate { name: String, arity: usize },
    #[error("type error: argument {index} of {name}/{arity} expects {expected}, found {actual}")]
    Type {
        name: String,
        arity: usize,
        /// 1-based.
        index: usize,
        expected: SurfaceType,
        actual: String,
    },
}

#[derive(Default)]
pub struct PredicateRegistry {
    predicates: BTreeMap<(String, usize), Predicate>,
    types: TypeTable,
}

impl PredicateRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in predicates.
    pub fn standard() -> Self {
        let mut r = Self::new();
        r.add("succeed", succeed);
        r.add("true", succeed);
        r.add("fail", fail);
        r.add("false", fail);
        r.add("plus", |a: Term<NatF>, b: Term<NatF>, c: Term<NatF>| {
            plus(a, b, c)
        });
        r.add("isSuc", |a: Term<NatF>, b: Term<NatF>| is_suc(a, b));
        r.add("leq", |a: Term<NatF>, b: Term<NatF>| leq(a, b));
        r.add("lt", |a: Term<NatF>, b: Term<NatF>| lt(a, b));
        r.add("isHead", |xs: Term<ListF<NatF>>, y: Term<NatF>| {
            is_head(xs, y)
        });
        r.add("isTail", |xs: Term<ListF<NatF>>, ys: Term<ListF<NatF>>| {
            is_tail(xs, ys)
        });
        r.add("member", |x: Term<NatF>, xs: Term<ListF<NatF>>| {
            member(x, xs)
        });
        r.add("notMember", |x: Term<NatF>, xs: Term<ListF<NatF>>| {
            not_member(x, xs)
        });
        r.add("sorted", |xs: Term<ListF<NatF>>| sorted(xs));
        r.add("sortedLeq", |xs: Term<ListF<NatF>>| sorted(xs));
        r.add(
            "listPlusOne",
            |a: Term<ListF<NatF>>, b: Term<ListF<NatF>>| list_plus_one(a, b),
        );
        r.add(
            "remainder",
            |n: Term<NatF>, q: Term<NatF>, r: Term<NatF>| remainder(n, q, r),
        );
        r.add(
            "append",
            |a: Term<ListF<NatF>>, b: Term<ListF<NatF>>, c: Term<ListF<NatF>>| append(a, b, c),
        );
        r.add("eq", |a: Term<NatF>, b: Term<NatF>| a.is(b));
        r.add("neq", |a: Term<NatF>, b: Term<NatF>| neq(a, b));
        r.add("isGround", |a: Term<NatF>| is_ground(a));
        r
    }

    fn add<Args, F: IntoPredicate<Args>>(&mut self, name: &str, f: F) {
        self.register(name, f).expect("built-in predicate");
    }

    /// Registers `f` under `name`, its arity taken from its signature.
    ///
    /// Fails if the name is taken at that arity, or if an argument type
    /// cannot be given logic operations.
    pub fn register<Args, F: IntoPredicate<Args>>(
        &mut self,
        name: &str,
        f: F,
    ) -> Result<(), RegistryError> {
        let signature = F::signature();
        let key = (name.to_string(), signature.len());
        if self.predicates.contains_key(&key) {
            return Err(RegistryError::Duplicate {
                name: key.0,
                arity: key.1,
            });
        }
        F::declare(&mut self.types);
        self.types.logic.validate_all()?;
        self.predicates.insert(
            key,
            Predicate {
                name: name.to_string(),
                signature,
                build: f.into_builder(),
            },
        );
        Ok(())
    }

    pub fn get(&self, name: &str, arity: usize) -> Option<&Predicate> {
        self.predicates.get(&(name.to_string(), arity))
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Predicate> {
        self.predicates.values()
    }

    pub fn types(&self) -> &TypeTable {
        &self.types
    }

    /// Parses and type-checks one query.
    pub fn parse_query(&self, input: &str) -> Result<Query, QueryError> {
        let expr = parse(input)?;
        let mut vars = Vec::new();
        self.check(&expr, &mut vars)?;
        Ok(Query {
            expr,
            variables: vars,
        })
    }

    fn check(
        &self,
        e: &QueryExpr,
        vars: &mut Vec<(String, SurfaceType)>,
    ) -> Result<(), QueryError> {
        match e {
            QueryExpr::Conj(a, b) | QueryExpr::Disj(a, b) => {
                self.check(a, vars)?;
                self.check(b, vars)
            }
            QueryExpr::Not(g) => self.check(g, vars),
            QueryExpr::Call { name, args, .. } => {
                let arity = args.len();
                let p = self
                    .get(name, arity)
                    .ok_or_else(|| QueryError::UnknownPredicate {
                        name: name.clone(),
                        arity,
                    })?;
                for (i, (arg, expected)) in args.iter().zip(&p.signature).enumerate() {
                    // Check against a scratch copy so a failed argument does
                    // not leave half its variables typed.
                    let mut scratch = vars.clone();
                    if check_term(arg, expected, &mut scratch) {
                        *vars = scratch;
                    } else {
                        return Err(QueryError::Type {
                            name: name.clone(),
                            arity,
                            index: i + 1,
                            expected: expected.clone(),
                            actual: describe(arg, vars),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    fn build(&self, e: &QueryExpr) -> Goal {
        match e {
            QueryExpr::Conj(a, b) => conj(self.build(a), self.build(b)),
            QueryExpr::Disj(a, b) => disj(self.build(a), self.build(b)),
            QueryExpr::Not(g) => neg(self.build(g)),
            QueryExpr::Call { name, args, .. } => {
                let p = self.get(name, args.len()).expect("checked predicate");
                (p.build)(args)
            }
        }
    }
}

fn check_term(
    t: &SurfaceTerm,
    expected: &SurfaceType,
    vars: &mut Vec<(String, SurfaceType)>,
) -> bool {
    match t {
        SurfaceTerm::Var { name, .. } => match vars.iter().find(|(n, _)| n == name) {
            Some((_, ty)) => ty == expected,
            None => {
                vars.push((name.clone(), expected.clone()));
                true
            }
        },
        SurfaceTerm::Wildcard { .. } => true,
        SurfaceTerm::Int { .. } => *expected == SurfaceType::Nat,
        SurfaceTerm::List { items, tail, .. } => match expected {
            SurfaceType::List(elem) => {
                items.iter().all(|i| check_term(i, elem, vars))
                    && tail.as_ref().is_none_or(|t| check_term(t, expected, vars))
            }
            SurfaceType::Nat => false,
        },
    }
}

/// Best-effort description of an argument's type for error messages.
fn describe(t: &SurfaceTerm, vars: &[(String, SurfaceType)]) -> String {
    match t {
        SurfaceTerm::Var { name, .. } => match vars.iter().find(|(n, _)| n == name) {
            Some((_, ty)) => format!("{ty} (the type of {name})"),
            None => "a variable".into(),
        },
        SurfaceTerm::Wildcard { .. } => "a variable".into(),
        SurfaceTerm::Int { .. } => SurfaceType::Nat.to_string(),
        SurfaceTerm::List { items, .. } => match items.first().map(|i| describe(i, vars)) {
            Some(elem) if !elem.contains(' ') => format!("list({elem})"),
            _ => "a list".into(),
        },
    }
}

/// A parsed, type-checked query.
#[derive(Debug, Clone)]
pub struct Query {
    pub expr: QueryExpr,
    /// Named variables with their inferred types, in order of first
    /// appearance. Anonymous variables are not included.
    pub variables: Vec<(String, SurfaceType)>,
}

impl Query {
    pub fn goal(&self, registry: &PredicateRegistry) -> Goal {
        registry.build(&self.expr)
    }

    /// `X = v` for every query variable the store binds, or `None` when it
    /// binds none of them.
    pub fn render(&self, registry: &PredicateRegistry, store: &Bindings) -> Option<String> {
        let parts: Vec<String> = self
            .variables
            .iter()
            .filter_map(|(name, ty)| {
                let var = registry.types.var(ty, name)?;
                let value = var.resolve_dyn(store);
                if value.as_var() == var.as_var() {
                    None
                } else {
                    Some(format!("{name} = {}", value.pretty()))
                }
            })
            .collect();
        if parts.is_empty() {
            None
        } else {
            Some(parts.join(", "))
        }
    }
}
