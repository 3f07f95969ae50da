//! Structural derivation of the logic capability.
//!
//! A payload type describes itself through [`Structure`]: its constructor
//! table plus access to the child terms of a value. From that view the five
//! capability operations are derived once, for every type. Most users get
//! the `Structure` impl from `#[derive(Structure)]` and then write an empty
//! `impl Logic for T {}`.

use std::collections::{HashMap, HashSet};
use std::marker::PhantomData;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{AnyTerm, Bindings, Clash, Logic, TypeTag, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructorDescriptor {
    pub name: String,
    /// Logical type of each child position, left to right.
    pub children: Vec<TypeTag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatatypeDescriptor {
    pub type_name: String,
    pub tag: TypeTag,
    pub constructors: Vec<ConstructorDescriptor>,
}

impl DatatypeDescriptor {
    pub fn new(type_name: impl Into<String>, tag: TypeTag) -> Self {
        DatatypeDescriptor {
            type_name: type_name.into(),
            tag,
            constructors: Vec::new(),
        }
    }

    pub fn constructor(mut self, name: impl Into<String>, children: Vec<TypeTag>) -> Self {
        self.constructors.push(ConstructorDescriptor {
            name: name.into(),
            children,
        });
        self
    }

    /// Child type references that are not in `known`.
    fn unresolved<'a>(
        &'a self,
        known: &'a HashSet<TypeTag>,
    ) -> impl Iterator<Item = (&'a str, TypeTag)> + 'a {
        self.constructors.iter().flat_map(move |c| {
            c.children
                .iter()
                .filter(move |t| !known.contains(t))
                .map(move |t| (c.name.as_str(), *t))
        })
    }
}

/// Generic view of a payload type.
pub trait Structure: Sized + 'static {
    fn descriptor() -> DatatypeDescriptor;

    /// Index into `descriptor().constructors`.
    fn constructor_index(&self) -> usize;

    /// Child terms, left to right.
    fn children(&self) -> Vec<&dyn AnyTerm>;

    /// Same constructor, every child replaced by `f(child)`. `f` must return
    /// a term of the child's own type.
    fn map_children(&self, f: &mut dyn FnMut(&dyn AnyTerm) -> Box<dyn AnyTerm>) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("type {type_name}: duplicate constructor {constructor}")]
    DuplicateConstructor {
        type_name: String,
        constructor: String,
    },
    #[error("type {type_name}: constructor {constructor} refers to unregistered type {child}")]
    UnresolvedChild {
        type_name: String,
        constructor: String,
        child: String,
    },
    #[error("type {0} is not registered")]
    UnknownType(String),
    #[error("type {type_name}: descriptor has {declared} constructors but {found} were expected")]
    Malformed {
        type_name: String,
        declared: usize,
        found: usize,
    },
}

/// Structural unification: same constructor, then children left to right.
///
/// Fails fast on the first clash. Since stores are persistent, a failed call
/// leaves the caller's store untouched.
pub fn unify_step<T: Structure>(p: &T, q: &T, store: &Bindings) -> Result<Bindings, Clash> {
    if p.constructor_index() != q.constructor_index() {
        return Err(Clash::Constructor);
    }
    p.children()
        .into_iter()
        .zip(q.children())
        .try_fold(store.clone(), |s, (a, b)| a.unify_dyn(b, &s))
}

pub fn occurs<T: Structure>(p: &T, var: &VarId) -> bool {
    p.children().into_iter().any(|c| c.occurs_dyn(var))
}

pub fn substitute<T: Structure>(p: &T, var: &VarId, value: &dyn AnyTerm) -> T {
    p.map_children(&mut |c| c.substitute_dyn(var, value))
}

pub fn is_ground<T: Structure>(p: &T) -> bool {
    p.children().into_iter().all(|c| c.is_ground_dyn())
}

/// Prefix constructor syntax: `Zero`, `Suc(x)`, `Cons(1, xs)`.
pub fn pretty<T: Structure>(p: &T) -> String {
    let desc = T::descriptor();
    let name = &desc.constructors[p.constructor_index()].name;
    let children = p.children();
    if children.is_empty() {
        name.clone()
    } else {
        let args: Vec<String> = children.iter().map(|c| c.pretty()).collect();
        format!("{}({})", name, args.join(", "))
    }
}

/// A validated handle on the derived operations for `T`.
///
/// The operations are the structural ones from this module except `pretty`,
/// which goes through `T`'s `Logic` impl so that overrides apply.
pub struct LogicCapability<T> {
    descriptor: Arc<DatatypeDescriptor>,
    _marker: PhantomData<fn() -> T>,
}

impl<T> Clone for LogicCapability<T> {
    fn clone(&self) -> Self {
        LogicCapability {
            descriptor: self.descriptor.clone(),
            _marker: PhantomData,
        }
    }
}

impl<T: Logic> LogicCapability<T> {
    pub fn descriptor(&self) -> &DatatypeDescriptor {
        &self.descriptor
    }

    pub fn unify_step(&self, p: &T, q: &T, store: &Bindings) -> Result<Bindings, Clash> {
        unify_step(p, q, store)
    }

    pub fn occurs(&self, var: &VarId, p: &T) -> bool {
        occurs(p, var)
    }

    pub fn substitute(&self, var: &VarId, value: &dyn AnyTerm, p: &T) -> T {
        substitute(p, var, value)
    }

    pub fn is_ground(&self, p: &T) -> bool {
        is_ground(p)
    }

    pub fn pretty(&self, p: &T) -> String {
        p.pretty()
    }
}

/// Registry of declared logical types.
///
/// Declaring first and deriving afterwards is what allows recursive and
/// mutually recursive types: a descriptor may refer to any type declared in
/// the same registry, including itself.
#[derive(Debug, Default, Clone)]
pub struct TypeRegistry {
    descriptors: HashMap<TypeTag, DatatypeDescriptor>,
}

impl TypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, descriptor: DatatypeDescriptor) -> &mut Self {
        self.descriptors.insert(descriptor.tag, descriptor);
        self
    }

    pub fn declare_type<T: Structure>(&mut self) -> &mut Self {
        self.declare(T::descriptor())
    }

    pub fn is_declared(&self, tag: &TypeTag) -> bool {
        self.descriptors.contains_key(tag)
    }

    pub fn descriptor(&self, tag: &TypeTag) -> Option<&DatatypeDescriptor> {
        self.descriptors.get(tag)
    }

    pub fn descriptors(&self) -> impl Iterator<Item = &DatatypeDescriptor> {
        self.descriptors.values()
    }

    /// Validates every declared descriptor.
    pub fn validate_all(&self) -> Result<(), DeriveError> {
        self.descriptors.values().try_for_each(|d| self.validate(d))
    }

    /// Checks a descriptor against this registry.
    pub fn validate(&self, d: &DatatypeDescriptor) -> Result<(), DeriveError> {
        let mut seen = HashSet::new();
        for c in &d.constructors {
            if !seen.insert(c.name.as_str()) {
                return Err(DeriveError::DuplicateConstructor {
                    type_name: d.type_name.clone(),
                    constructor: c.name.clone(),
                });
            }
        }
        let mut known: HashSet<TypeTag> = self.descriptors.keys().copied().collect();
        known.insert(d.tag);
        if let Some((ctor, child)) = d.unresolved(&known).next() {
            return Err(DeriveError::UnresolvedChild {
                type_name: d.type_name.clone(),
                constructor: ctor.to_string(),
                child: child.name().to_string(),
            });
        }
        Ok(())
    }

    /// Derives the capability of `T` from its registered descriptor.
    pub fn derive_capability<T: Logic>(&self) -> Result<LogicCapability<T>, DeriveError> {
        let tag = TypeTag::of::<T>();
        let d = self
            .descriptors
            .get(&tag)
            .ok_or_else(|| DeriveError::UnknownType(tag.name().to_string()))?;
        self.validate(d)?;
        let actual = T::descriptor();
        if actual.constructors.len() != d.constructors.len() {
            return Err(DeriveError::Malformed {
                type_name: d.type_name.clone(),
                declared: d.constructors.len(),
                found: actual.constructors.len(),
            });
        }
        Ok(LogicCapability {
            descriptor: Arc::new(d.clone()),
            _marker: PhantomData,
        })
    }
}
