//! Proptest strategies shared by unit tests.

use proptest::prelude::*;

use crate::quad::Quad;
use crate::term::{Iri, Literal, Term};
use crate::vocab;

/// IRI text drawn from a charset that is always valid (no whitespace, no
/// angle brackets), with separators that exercise ordering edge cases.
pub(crate) fn arb_iri() -> impl Strategy<Value = Iri> {
    "[a-zA-Z][a-zA-Z0-9:/#._%-]{0,24}".prop_map(|s| Iri::new(s).unwrap())
}

pub(crate) fn arb_literal() -> impl Strategy<Value = Literal> {
    let datatype = prop_oneof![
        3 => Just(vocab::xsd_string()),
        1 => Just(vocab::xsd_integer()),
        1 => arb_iri(),
    ];
    // lexical forms include the escaped characters and arbitrary unicode
    let lexical = prop_oneof![
        3 => "[ -~]{0,16}",
        1 => proptest::string::string_regex("[\\\\\"\n\r\t]{1,4}").unwrap(),
        1 => any::<String>().prop_map(|s| s.chars().take(12).collect()),
    ];
    (lexical, datatype).prop_map(|(lex, dt)| Literal::new(lex, dt))
}

pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        arb_iri().prop_map(Term::Iri),
        arb_literal().prop_map(Term::Literal),
    ]
}

pub(crate) fn arb_graph() -> impl Strategy<Value = Iri> {
    prop_oneof![
        2 => Just(vocab::doc_graph("d1").unwrap()),
        2 => Just(vocab::doc_graph("d2").unwrap()),
        1 => Just(vocab::schema_graph()),
        1 => Just(vocab::inferred_graph()),
        1 => arb_iri(),
    ]
}

pub(crate) fn arb_quad() -> impl Strategy<Value = Quad> {
    (arb_iri(), arb_iri(), arb_term(), arb_graph()).prop_map(|(s, p, o, g)| Quad::new(s, p, o, g))
}
