//! Terms with embedded logic variables and the binding store.
//!
//! A `Term<T>` is either a named variable or a payload `T` whose child
//! positions are themselves terms. Variables are identified by their name
//! together with the logical type they range over, so `x : Nat` and
//! `x : List<Nat>` never interfere.

use std::any::{Any, TypeId};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::derive::Structure;

/// Identifies a logical type. Stable for the lifetime of the process.
#[derive(Clone, Copy)]
pub struct TypeTag {
    id: TypeId,
    name: &'static str,
}

impl TypeTag {
    pub fn of<T: ?Sized + 'static>() -> Self {
        TypeTag {
            id: TypeId::of::<T>(),
            name: std::any::type_name::<T>(),
        }
    }

    /// Host type name, for diagnostics only.
    pub fn name(&self) -> &'static str {
        self.name
    }
}

impl PartialEq for TypeTag {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for TypeTag {}

impl Hash for TypeTag {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl PartialOrd for TypeTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeTag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(other.name).then(self.id.cmp(&other.id))
    }
}

impl fmt::Debug for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// Variable identity: name plus logical type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    name: Arc<str>,
    ty: TypeTag,
}

impl VarId {
    pub fn new(name: impl Into<Arc<str>>, ty: TypeTag) -> Self {
        VarId {
            name: name.into(),
            ty,
        }
    }

    pub fn of<T: 'static>(name: &str) -> Self {
        VarId::new(name, TypeTag::of::<T>())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn type_tag(&self) -> TypeTag {
        self.ty
    }

    /// Engine-generated variables carry the reserved `_` prefix.
    pub fn is_generated(&self) -> bool {
        self.name.starts_with('_')
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty.name)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Clash {
    #[error("constructor mismatch")]
    Constructor,
    #[error("occurs check: {0} would be bound to a term containing it")]
    Occurs(VarId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variable names starting with '_' are reserved for the engine: {0:?}")]
pub struct ReservedName(pub String);

/// The per-type logic capability.
///
/// Every method has a structural default derived from [`Structure`], so an
/// empty `impl Logic for MyType {}` is enough. `pretty` is the one commonly
/// overridden.
pub trait Logic: Structure + Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Unifies two payloads of this type, extending `store`.
    fn unify_step(&self, other: &Self, store: &Bindings) -> Result<Bindings, Clash> {
        crate::derive::unify_step(self, other, store)
    }

    /// Whether `var` appears syntactically in this payload.
    fn occurs(&self, var: &VarId) -> bool {
        crate::derive::occurs(self, var)
    }

    /// Replaces every occurrence of `var` with `value`.
    fn substitute(&self, var: &VarId, value: &dyn AnyTerm) -> Self {
        crate::derive::substitute(self, var, value)
    }

    /// Whether this payload contains no variables (syntactically).
    fn is_ground(&self) -> bool {
        crate::derive::is_ground(self)
    }

    fn pretty(&self) -> String {
        crate::derive::pretty(self)
    }
}

/// A logic term over payload type `T`.
///
/// Construct variables with [`Term::var`]; the `Var` variant is public for
/// pattern matching, and names starting with `_` belong to the engine.
#[derive(Clone, PartialEq)]
pub enum Term<T> {
    Var(Arc<str>),
    Compound(Arc<T>),
}

impl<T: Logic> Term<T> {
    /// A user variable.
    ///
    /// # Panics
    ///
    /// If `name` starts with `_`. Use [`Term::try_var`] to handle that case.
    pub fn var(name: &str) -> Self {
        match Self::try_var(name) {
            Ok(t) => t,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_var(name: &str) -> Result<Self, ReservedName> {
        if name.starts_with('_') {
            Err(ReservedName(name.to_string()))
        } else {
            Ok(Term::Var(name.into()))
        }
    }

    pub(crate) fn fresh(index: u64) -> Self {
        Term::Var(format!("_{index}").into())
    }

    pub fn compound(payload: T) -> Self {
        Term::Compound(Arc::new(payload))
    }

    pub fn var_id(&self) -> Option<VarId> {
        match self {
            Term::Var(name) => Some(VarId::new(name.clone(), TypeTag::of::<T>())),
            Term::Compound(_) => None,
        }
    }

    pub fn payload(&self) -> Option<&T> {
        match self {
            Term::Var(_) => None,
            Term::Compound(p) => Some(p),
        }
    }

    /// Follows variable bindings at the root only.
    pub fn walk(&self, store: &Bindings) -> Term<T> {
        let mut current = self.clone();
        while let Term::Var(name) = &current {
            match store.lookup::<T>(name) {
                Some(next) => current = next,
                None => break,
            }
        }
        current
    }

    /// Applies the store all the way down.
    pub fn resolve(&self, store: &Bindings) -> Term<T> {
        match self.walk(store) {
            Term::Compound(p) => {
                Term::compound(p.map_children(&mut |child| child.resolve_dyn(store)))
            }
            var => var,
        }
    }

    /// True iff `var` occurs in the resolved form of this term.
    pub fn occurs_in(&self, var: &VarId, store: &Bindings) -> bool {
        match self.walk(store) {
            Term::Var(name) => var.ty == TypeTag::of::<T>() && *var.name == *name,
            Term::Compound(p) => p
                .children()
                .into_iter()
                .any(|c| c.occurs_in_dyn(var, store)),
        }
    }

    /// True iff the resolved form of this term has no variables.
    pub fn is_ground_in(&self, store: &Bindings) -> bool {
        match self.walk(store) {
            Term::Var(_) => false,
            Term::Compound(p) => p.children().into_iter().all(|c| c.is_ground_in_dyn(store)),
        }
    }

    /// Syntactic occurrence, ignoring any store.
    pub fn occurs(&self, var: &VarId) -> bool {
        match self {
            Term::Var(name) => var.ty == TypeTag::of::<T>() && *var.name == **name,
            Term::Compound(p) => p.occurs(var),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Compound(p) => p.is_ground(),
        }
    }

    pub fn substitute(&self, var: &VarId, value: &dyn AnyTerm) -> Term<T> {
        match self {
            Term::Var(name) => {
                if var.ty == TypeTag::of::<T>() && *var.name == **name {
                    if let Some(t) = value.as_any().downcast_ref::<Term<T>>() {
                        return t.clone();
                    }
                }
                self.clone()
            }
            Term::Compound(p) => Term::compound(p.substitute(var, value)),
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            Term::Var(name) => name.to_string(),
            Term::Compound(p) => p.pretty(),
        }
    }
}

impl<T: Logic> fmt::Debug for Term<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(name) => write!(f, "Var({name:?})"),
            Term::Compound(p) => write!(f, "Compound({p:?})"),
        }
    }
}

impl<T: Logic> fmt::Display for Term<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// String literals denote variables wherever a term is expected.
impl<T: Logic> From<&str> for Term<T> {
    fn from(name: &str) -> Self {
        Term::var(name)
    }
}

/// Unifies two terms of the same type.
///
/// After walking both sides, a variable on the left is bound to the right,
/// otherwise a variable on the right is bound to the left, otherwise the
/// payloads are unified structurally. On failure the input store is left
/// as it was.
pub fn unify<T: Logic>(a: &Term<T>, b: &Term<T>, store: &Bindings) -> Result<Bindings, Clash> {
    let a = a.walk(store);
    let b = b.walk(store);
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => Ok(store.clone()),
        (Term::Var(x), _) => bind(x, b, store),
        (_, Term::Var(y)) => bind(y, a, store),
        (Term::Compound(p), Term::Compound(q)) => {
            if Arc::ptr_eq(p, q) {
                Ok(store.clone())
            } else {
                p.unify_step(q, store)
            }
        }
    }
}

fn bind<T: Logic>(name: &Arc<str>, value: Term<T>, store: &Bindings) -> Result<Bindings, Clash> {
    let var = VarId::new(name.clone(), TypeTag::of::<T>());
    if value.occurs_in(&var, store) {
        return Err(Clash::Occurs(var));
    }
    Ok(store.bind(var, Arc::new(value)))
}

/// Type-erased view of a `Term<T>`.
///
/// Payload children are handed out through this trait so that structural
/// operations can be written once for every payload type.
pub trait AnyTerm: fmt::Debug + Send + Sync + 'static {
    fn type_tag(&self) -> TypeTag;
    fn as_any(&self) -> &dyn Any;
    fn clone_box(&self) -> Box<dyn AnyTerm>;
    /// Unifies with a term of the same type; a type mismatch is a clash.
    fn unify_dyn(&self, other: &dyn AnyTerm, store: &Bindings) -> Result<Bindings, Clash>;
    fn occurs_dyn(&self, var: &VarId) -> bool;
    fn occurs_in_dyn(&self, var: &VarId, store: &Bindings) -> bool;
    fn is_ground_dyn(&self) -> bool;
    fn is_ground_in_dyn(&self, store: &Bindings) -> bool;
    fn substitute_dyn(&self, var: &VarId, value: &dyn AnyTerm) -> Box<dyn AnyTerm>;
    fn resolve_dyn(&self, store: &Bindings) -> Box<dyn AnyTerm>;
    fn pretty(&self) -> String;
    /// The variable at the root, if this term is one.
    fn as_var(&self) -> Option<VarId>;
}

impl<T: Logic> AnyTerm for Term<T> {
    fn type_tag(&self) -> TypeTag {
        TypeTag::of::<T>()
    }

    fn as_any(&self) -> &dyn Any {
        self
    }

    fn clone_box(&self) -> Box<dyn AnyTerm> {
        Box::new(self.clone())
    }

    fn unify_dyn(&self, other: &dyn AnyTerm, store: &Bindings) -> Result<Bindings, Clash> {
        match other.as_any().downcast_ref::<Term<T>>() {
            Some(other) => unify(self, other, store),
            None => Err(Clash::Constructor),
        }
    }

    fn occurs_dyn(&self, var: &VarId) -> bool {
        self.occurs(var)
    }

    fn occurs_in_dyn(&self, var: &VarId, store: &Bindings) -> bool {
        self.occurs_in(var, store)
    }

    fn is_ground_dyn(&self) -> bool {
        self.is_ground()
    }

    fn is_ground_in_dyn(&self, store: &Bindings) -> bool {
        self.is_ground_in(store)
    }

    fn substitute_dyn(&self, var: &VarId, value: &dyn AnyTerm) -> Box<dyn AnyTerm> {
        Box::new(self.substitute(var, value))
    }

    fn resolve_dyn(&self, store: &Bindings) -> Box<dyn AnyTerm> {
        Box::new(self.resolve(store))
    }

    fn pretty(&self) -> String {
        Term::pretty(self)
    }

    fn as_var(&self) -> Option<VarId> {
        self.var_id()
    }
}

impl Clone for Box<dyn AnyTerm> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// Recovers a typed term from an erased one.
///
/// # Panics
///
/// If the erased term has a different payload type. Generated
/// `Structure::map_children` impls rely on this never happening.
pub fn downcast_term<T: Logic>(term: Box<dyn AnyTerm>) -> Term<T> {
    match term.as_any().downcast_ref::<Term<T>>() {
        Some(t) => t.clone(),
        None => panic!(
            "expected a term over {}, found one over {}",
            std::any::type_name::<T>(),
            term.type_tag().name()
        ),
    }
}

/// The accumulated substitution: a persistent map from variables to terms.
///
/// Cloning is O(1) and shares structure, which is what makes backtracking
/// cheap. A variable is bound at most once.
#[derive(Clone, Default)]
pub struct Bindings {
    map: im::HashMap<VarId, Arc<dyn AnyTerm>>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn contains(&self, var: &VarId) -> bool {
        self.map.contains_key(var)
    }

    /// The direct binding of a variable of type `T`, if any.
    pub fn lookup<T: Logic>(&self, name: &str) -> Option<Term<T>> {
        let key = VarId::new(name, TypeTag::of::<T>());
        self.map
            .get(&key)
            .and_then(|t| t.as_any().downcast_ref::<Term<T>>().cloned())
    }

    pub fn get(&self, var: &VarId) -> Option<&dyn AnyTerm> {
        self.map.get(var).map(|t| t.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarId, &dyn AnyTerm)> {
        self.map.iter().map(|(k, v)| (k, v.as_ref()))
    }

    /// Binds an unbound variable. The caller is responsible for the occurs
    /// check and for the value's type matching `var`.
    pub fn bind(&self, var: VarId, value: Arc<dyn AnyTerm>) -> Bindings {
        debug_assert!(!self.map.contains_key(&var), "rebinding {var:?}");
        debug_assert_eq!(var.type_tag(), value.type_tag());
        Bindings {
            map: self.map.update(var, value),
        }
    }

    /// Same keys bound to syntactically identical terms.
    pub fn same_as(&self, other: &Bindings) -> bool {
        self.len() == other.len()
            && self.map.iter().all(|(k, v)| {
                other.map.get(k).is_some_and(|w| {
                    v.pretty() == w.pretty() && format!("{v:?}") == format!("{w:?}")
                })
            })
    }
}

impl fmt::Debug for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.map.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        f.debug_map()
            .entries(entries.into_iter().map(|(k, v)| (k, v.pretty())))
            .finish()
    }
}
