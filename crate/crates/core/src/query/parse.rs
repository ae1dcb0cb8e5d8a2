//! Query text → [`SelectQuery`]. Hand-rolled lexer and recursive-descent
//! parser over the grammar:
//!
//! ```text
//! Query   := 'SELECT' 'DISTINCT'? Var+ 'WHERE' '{' (Pattern '.'?)* '}'
//! Pattern := Node Pred Node
//! Pred    := Var | 'a' | PrefixedName
//! Node    := Var | PrefixedName | Literal
//! ```
//!
//! Whitespace and line breaks are insignificant between tokens, so a
//! literal and its `^^` datatype may be split across lines.

use super::{PatternNode, QueryError, SelectQuery, TriplePattern};
use crate::term::{Iri, Literal, Term};
use crate::vocab;

/// Constructs that exist in SPARQL but not in this subset; rejected by
/// name so the error can say what was attempted.
const UNSUPPORTED: [&str; 16] = [
    "FILTER",
    "OPTIONAL",
    "UNION",
    "PREFIX",
    "GRAPH",
    "ORDER",
    "LIMIT",
    "OFFSET",
    "CONSTRUCT",
    "ASK",
    "DESCRIBE",
    "BIND",
    "VALUES",
    "MINUS",
    "SERVICE",
    "BASE",
];

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Select,
    Distinct,
    Where,
    A,
    Var(String),
    Prefixed(String, String),
    StringLit(String),
    HatHat,
    LBrace,
    RBrace,
    Dot,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err<T>(&self, reason: impl Into<String>) -> Result<T, QueryError> {
        Err(QueryError::Syntax {
            line: self.line,
            column: self.column,
            reason: reason.into(),
        })
    }

    fn take_name(&mut self, extra: &[char]) -> String {
        let mut name = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || extra.contains(&c) {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        name
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, QueryError> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let (line, column) = (self.line, self.column);
            let token = match c {
                '{' => {
                    self.bump();
                    Token::LBrace
                }
                '}' => {
                    self.bump();
                    Token::RBrace
                }
                '.' => {
                    self.bump();
                    Token::Dot
                }
                '?' => {
                    self.bump();
                    let name = self.take_name(&[]);
                    if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
                        return self.err("expected variable name after `?`");
                    }
                    Token::Var(name)
                }
                '^' => {
                    self.bump();
                    if self.chars.peek() == Some(&'^') {
                        self.bump();
                        Token::HatHat
                    } else {
                        return self.err("expected `^^`");
                    }
                }
                '"' => {
                    self.bump();
                    let mut lit = String::new();
                    loop {
                        match self.bump() {
                            None => return self.err("unterminated string literal"),
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('\\') => lit.push('\\'),
                                Some('"') => lit.push('"'),
                                Some('n') => lit.push('\n'),
                                Some('r') => lit.push('\r'),
                                Some('t') => lit.push('\t'),
                                Some(c) => return self.err(format!("bad escape `\\{c}`")),
                                None => return self.err("unterminated escape"),
                            },
                            Some(c) => lit.push(c),
                        }
                    }
                    Token::StringLit(lit)
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let word = self.take_name(&['-']);
                    if self.chars.peek() == Some(&':') {
                        self.bump();
                        let local = self.take_name(&['-']);
                        if local.is_empty() {
                            return self.err(format!("expected local name after `{word}:`"));
                        }
                        Token::Prefixed(word, local)
                    } else {
                        match word.as_str() {
                            "SELECT" => Token::Select,
                            "DISTINCT" => Token::Distinct,
                            "WHERE" => Token::Where,
                            "a" => Token::A,
                            w if UNSUPPORTED.contains(&w) => {
                                return Err(QueryError::Unsupported {
                                    feature: w.to_owned(),
                                })
                            }
                            w => {
                                return self.err(format!("unexpected token `{w}`"));
                            }
                        }
                    }
                }
                c => return self.err(format!("unexpected character `{c}`")),
            };
            out.push(Spanned {
                token,
                line,
                column,
            });
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here<T>(&self, reason: impl Into<String>) -> Result<T, QueryError> {
        let (line, column) = self
            .tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map_or((1, 1), |s| (s.line, s.column));
        Err(QueryError::Syntax {
            line,
            column,
            reason: reason.into(),
        })
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), QueryError> {
        match self.next() {
            Some(s) if s.token == token => Ok(()),
            Some(s) => Err(QueryError::Syntax {
                line: s.line,
                column: s.column,
                reason: format!("expected {what}"),
            }),
            None => self.err_here(format!("expected {what}, found end of input")),
        }
    }

    fn resolve(&self, prefix: &str, local: &str, at: &Spanned) -> Result<Iri, QueryError> {
        let ns = vocab::expand_prefix(prefix).ok_or_else(|| QueryError::UnknownPrefix {
            line: at.line,
            column: at.column,
            prefix: prefix.to_owned(),
        })?;
        Iri::new(format!("{ns}{local}")).map_err(|e| QueryError::Syntax {
            line: at.line,
            column: at.column,
            reason: e.to_string(),
        })
    }

    /// Node := Var | PrefixedName | Literal; a literal may carry
    /// `^^PrefixedName`, and plain literals normalize to xsd:string.
    fn parse_node(&mut self) -> Result<PatternNode, QueryError> {
        let Some(s) = self.next() else {
            return self.err_here("expected node, found end of input");
        };
        match s.token.clone() {
            Token::Var(name) => Ok(PatternNode::Var(name)),
            Token::Prefixed(prefix, local) => {
                let iri = self.resolve(&prefix, &local, &s)?;
                Ok(PatternNode::Term(Term::Iri(iri)))
            }
            Token::StringLit(lex) => {
                let datatype = if matches!(self.peek(), Some(t) if t.token == Token::HatHat) {
                    self.next();
                    match self.next() {
                        Some(dt) => match dt.token.clone() {
                            Token::Prefixed(prefix, local) => self.resolve(&prefix, &local, &dt)?,
                            _ => {
                                return Err(QueryError::Syntax {
                                    line: dt.line,
                                    column: dt.column,
                                    reason: "expected datatype after `^^`".to_owned(),
                                })
                            }
                        },
                        None => return self.err_here("expected datatype after `^^`"),
                    }
                } else {
                    vocab::xsd_string()
                };
                Ok(PatternNode::Term(Term::Literal(Literal::new(
                    lex, datatype,
                ))))
            }
            _ => Err(QueryError::Syntax {
                line: s.line,
                column: s.column,
                reason: "expected variable, prefixed name, or literal".to_owned(),
            }),
        }
    }

    /// Pred := Var | 'a' | PrefixedName, with `a` desugared to rdf:type.
    fn parse_predicate(&mut self) -> Result<PatternNode, QueryError> {
        let Some(s) = self.next() else {
            return self.err_here("expected predicate, found end of input");
        };
        match s.token.clone() {
            Token::Var(name) => Ok(PatternNode::Var(name)),
            Token::A => Ok(PatternNode::Term(Term::Iri(vocab::rdf_type()))),
            Token::Prefixed(prefix, local) => {
                let iri = self.resolve(&prefix, &local, &s)?;
                Ok(PatternNode::Term(Term::Iri(iri)))
            }
            _ => Err(QueryError::Syntax {
                line: s.line,
                column: s.column,
                reason: "expected variable, `a`, or prefixed name".to_owned(),
            }),
        }
    }
}

/// Parses query text against the fixed prefix table.
pub fn parse_query(text: &str) -> Result<SelectQuery, QueryError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut p = Parser { tokens, pos: 0 };

    p.expect(Token::Select, "`SELECT`")?;
    let distinct = matches!(p.peek(), Some(s) if s.token == Token::Distinct);
    if distinct {
        p.next();
    }

    let mut projected = Vec::new();
    while let Some(s) = p.peek() {
        match &s.token {
            Token::Var(name) => {
                projected.push(name.clone());
                p.next();
            }
            _ => break,
        }
    }
    if projected.is_empty() {
        return p.err_here("expected at least one projected variable");
    }

    p.expect(Token::Where, "`WHERE`")?;
    p.expect(Token::LBrace, "`{`")?;

    let mut patterns = Vec::new();
    loop {
        match p.peek() {
            None => return p.err_here("expected `}`"),
            Some(s) if s.token == Token::RBrace => {
                p.next();
                break;
            }
            Some(_) => {
                let subject = p.parse_node()?;
                let predicate = p.parse_predicate()?;
                let object = p.parse_node()?;
                patterns.push(TriplePattern {
                    subject,
                    predicate,
                    object,
                });
                // trailing '.' optional, including after the last pattern
                if matches!(p.peek(), Some(s) if s.token == Token::Dot) {
                    p.next();
                }
            }
        }
    }
    if p.peek().is_some() {
        return p.err_here("unexpected content after `}`");
    }

    Ok(SelectQuery {
        projected,
        distinct,
        patterns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CQ1_CAMPAIGN_TARGETS: &str = r#"SELECT DISTINCT ?instance ?p ?o
WHERE {
    ?instance a ?x .
    ?instance ?p ?o .
    ?p a owl:ObjectProperty .
    ?x a owl:Class .
    ?x rdfs:label
        "Campaign"^^xsd:string .
    ?p rdfs:label "targets"
    }"#;

    #[test]
    fn campaign_targets_query_shape() {
        let q = parse_query(CQ1_CAMPAIGN_TARGETS).unwrap();
        assert!(q.distinct);
        assert_eq!(q.projected, vec!["instance", "p", "o"]);
        assert_eq!(q.patterns.len(), 6);

        // `a` desugars to rdf:type
        assert_eq!(
            q.patterns[0].predicate,
            PatternNode::Term(Term::Iri(vocab::rdf_type()))
        );
        // the untyped literal normalizes to xsd:string
        let last = &q.patterns[5];
        assert_eq!(last.subject, PatternNode::var("p"));
        assert_eq!(
            last.predicate,
            PatternNode::Term(Term::Iri(vocab::rdfs_label()))
        );
        assert_eq!(
            last.object,
            PatternNode::Term(Term::Literal(Literal::string("targets")))
        );
        // explicitly typed and plain string literals are the same node
        assert_eq!(
            q.patterns[4].object,
            PatternNode::Term(Term::Literal(Literal::new("Campaign", vocab::xsd_string())))
        );
    }

    #[test]
    fn datatype_suffix_may_follow_on_the_next_line() {
        let q =
            parse_query("SELECT ?x WHERE { ?x rdfs:label \"MalwareFamily\"\n    ^^xsd:string. }")
                .unwrap();
        assert_eq!(
            q.patterns[0].object,
            PatternNode::Term(Term::Literal(Literal::string("MalwareFamily")))
        );
    }

    #[test]
    fn filter_is_reported_as_unsupported() {
        let err = parse_query("SELECT ?x WHERE { ?x a owl:Class . FILTER(?x) }").unwrap_err();
        assert_eq!(
            err,
            QueryError::Unsupported {
                feature: "FILTER".to_owned()
            }
        );
    }

    #[test]
    fn unknown_prefix_is_reported_with_position() {
        let err = parse_query("SELECT ?x WHERE { ?x foaf:name ?y }").unwrap_err();
        assert_eq!(
            err,
            QueryError::UnknownPrefix {
                line: 1,
                column: 22,
                prefix: "foaf".to_owned()
            }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_query("SELECT ?x WHERE { ?x a }").unwrap_err();
        assert!(matches!(err, QueryError::Syntax { line: 1, .. }), "{err:?}");

        let err = parse_query("SELECT WHERE { }").unwrap_err();
        assert!(matches!(err, QueryError::Syntax { .. }));

        let err = parse_query("SELECT ?x WHERE { ?x a owl:Class").unwrap_err();
        assert!(matches!(err, QueryError::Syntax { .. }));
    }

    #[test]
    fn keywords_are_case_sensitive() {
        let err = parse_query("select ?x WHERE { }").unwrap_err();
        assert!(matches!(err, QueryError::Syntax { .. }), "{err:?}");
    }

    #[test]
    fn kg_slugs_parse_as_prefixed_names() {
        let q = parse_query("SELECT ?p WHERE { kg:Campaign--zerot-plugx ?p kg:x6 }").unwrap();
        assert_eq!(
            q.patterns[0].subject,
            PatternNode::Term(
                Term::iri("https://malont.example/kg#Campaign--zerot-plugx").unwrap()
            )
        );
    }

    #[test]
    fn empty_pattern_block_is_legal() {
        let q = parse_query("SELECT ?x WHERE { }").unwrap();
        assert!(q.patterns.is_empty());
    }
}
