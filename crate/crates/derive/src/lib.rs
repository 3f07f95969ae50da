//! `#[derive(Structure)]` for payload enums whose fields are all `Term<_>`.
//!
//! The generated impl exposes the constructor table, the child terms of a
//! value and a way to rebuild a value from transformed children. Everything
//! the engine needs for unification is derived from that view.

use proc_macro::TokenStream;
use proc_macro2::TokenStream as TokenStream2;
use quote::{format_ident, quote};
use syn::{
    parse_macro_input, parse_quote, spanned::Spanned, Data, DeriveInput, Fields, GenericArgument,
    PathArguments, Type,
};

#[proc_macro_derive(Structure)]
pub fn derive_structure(input: TokenStream) -> TokenStream {
    let input = parse_macro_input!(input as DeriveInput);
    match expand(input) {
        Ok(tokens) => tokens.into(),
        Err(err) => err.to_compile_error().into(),
    }
}

struct Variant {
    ident: syn::Ident,
    fields: Fields,
    children: Vec<Type>,
}

fn expand(mut input: DeriveInput) -> syn::Result<TokenStream2> {
    let name = &input.ident;
    let data = match &input.data {
        Data::Enum(data) => data,
        _ => {
            return Err(syn::Error::new(
                input.span(),
                "Structure can only be derived for enums",
            ))
        }
    };

    let mut variants = Vec::new();
    for v in &data.variants {
        let mut children = Vec::new();
        for field in v.fields.iter() {
            children.push(term_payload(&field.ty)?);
        }
        variants.push(Variant {
            ident: v.ident.clone(),
            fields: v.fields.clone(),
            children,
        });
    }

    let type_params: Vec<syn::Ident> = input
        .generics
        .type_params()
        .map(|p| p.ident.clone())
        .collect();
    {
        let where_clause = input.generics.make_where_clause();
        for p in &type_params {
            where_clause
                .predicates
                .push(parse_quote!(#p: ::typed_logic::Logic));
        }
    }
    let (impl_generics, ty_generics, where_clause) = input.generics.split_for_impl();

    let type_name = name.to_string();
    let ctor_entries = variants.iter().map(|v| {
        let ctor = v.ident.to_string();
        let tags = v
            .children
            .iter()
            .map(|ty| quote!(::typed_logic::TypeTag::of::<#ty>()));
        quote!(.constructor(#ctor, ::std::vec![#(#tags),*]))
    });

    let index_arms = variants.iter().enumerate().map(|(i, v)| {
        let ident = &v.ident;
        let pat = wildcard_pattern(&v.fields);
        quote!(Self::#ident #pat => #i)
    });

    let children_arms = variants.iter().map(|v| {
        let ident = &v.ident;
        let (pat, binds) = binding_pattern(&v.fields);
        quote!(Self::#ident #pat => ::std::vec![#(#binds as &dyn ::typed_logic::AnyTerm),*])
    });

    let map_arms = variants.iter().map(|v| {
        let ident = &v.ident;
        let (pat, binds) = binding_pattern(&v.fields);
        let rebuilt = binds
            .iter()
            .map(|b| quote!(::typed_logic::term::downcast_term(f(#b))));
        let body = match &v.fields {
            Fields::Named(named) => {
                let names = named.named.iter().map(|f| f.ident.as_ref().unwrap());
                quote!(Self::#ident { #(#names: #rebuilt),* })
            }
            Fields::Unnamed(_) => quote!(Self::#ident(#(#rebuilt),*)),
            Fields::Unit => quote!(Self::#ident),
        };
        quote!(Self::#ident #pat => #body)
    });

    Ok(quote! {
        impl #impl_generics ::typed_logic::Structure for #name #ty_generics #where_clause {
            fn descriptor() -> ::typed_logic::DatatypeDescriptor {
                ::typed_logic::DatatypeDescriptor::new(#type_name, ::typed_logic::TypeTag::of::<Self>())
                    #(#ctor_entries)*
            }

            fn constructor_index(&self) -> usize {
                match self {
                    #(#index_arms,)*
                }
            }

            fn children(&self) -> ::std::vec::Vec<&dyn ::typed_logic::AnyTerm> {
                match self {
                    #(#children_arms,)*
                }
            }

            #[allow(unused_variables)]
            fn map_children(
                &self,
                f: &mut dyn FnMut(&dyn ::typed_logic::AnyTerm) -> ::std::boxed::Box<dyn ::typed_logic::AnyTerm>,
            ) -> Self {
                match self {
                    #(#map_arms,)*
                }
            }
        }
    })
}

/// Extracts `X` from a field of type `Term<X>`.
fn term_payload(ty: &Type) -> syn::Result<Type> {
    if let Type::Path(path) = ty {
        if let Some(last) = path.path.segments.last() {
            if last.ident == "Term" {
                if let PathArguments::AngleBracketed(args) = &last.arguments {
                    if let Some(GenericArgument::Type(inner)) = args.args.first() {
                        return Ok(inner.clone());
                    }
                }
            }
        }
    }
    Err(syn::Error::new(
        ty.span(),
        "every field of a Structure payload must have type Term<_>",
    ))
}

fn wildcard_pattern(fields: &Fields) -> TokenStream2 {
    match fields {
        Fields::Named(_) => quote!({ .. }),
        Fields::Unnamed(_) => quote!((..)),
        Fields::Unit => quote!(),
    }
}

fn binding_pattern(fields: &Fields) -> (TokenStream2, Vec<syn::Ident>) {
    match fields {
        Fields::Named(named) => {
            let names: Vec<_> = named
                .named
                .iter()
                .map(|f| f.ident.clone().unwrap())
                .collect();
            (quote!({ #(#names),* }), names)
        }
        Fields::Unnamed(unnamed) => {
            let binds: Vec<_> = (0..unnamed.unnamed.len())
                .map(|i| format_ident!("f{}", i))
                .collect();
            (quote!((#(#binds),*)), binds)
        }
        Fields::Unit => (quote!(), Vec::new()),
    }
}
