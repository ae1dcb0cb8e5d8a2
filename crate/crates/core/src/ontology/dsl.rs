//! The line-oriented schema DSL (`.mos` files).
//!
//! One declaration per line; blank lines and `#` comments ignored;
//! declarations may appear in any order and forward references are fine:
//!
//! ```text
//! class Malware
//! class TrojanHorse : Malware
//! objprop hasFamily domain=Malware range=MalwareFamily inverse=hasMember
//! dataprop hasVersion domain=Software range=string
//! ```

use super::{
    is_identifier, ClassDef, DataRange, DatatypePropertyDef, ObjectPropertyDef, Ontology,
    SchemaError,
};

impl Ontology {
    /// Parses DSL source. Grammar problems report the offending line;
    /// integrity problems (duplicates, unresolved references, cycles,
    /// asymmetric inverses) are collected by the validator.
    pub fn parse_dsl(text: &str) -> Result<Ontology, SchemaError> {
        let mut onto = Ontology::default();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match tokens[0] {
                "class" => onto.classes.push(parse_class(&tokens, line)?),
                "objprop" => onto.object_properties.push(parse_objprop(&tokens, line)?),
                "dataprop" => onto
                    .datatype_properties
                    .push(parse_dataprop(&tokens, line)?),
                other => {
                    return Err(SchemaError::Syntax {
                        line,
                        reason: format!("unknown declaration `{other}`"),
                    })
                }
            }
        }

        let violations = onto.validate();
        if violations.is_empty() {
            Ok(onto)
        } else {
            Err(SchemaError::Invalid { violations })
        }
    }

    /// Writes the schema back out in DSL form; `parse_dsl` of the result
    /// reproduces the ontology.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            match &c.superclass {
                Some(sup) => out.push_str(&format!("class {} : {}\n", c.name, sup)),
                None => out.push_str(&format!("class {}\n", c.name)),
            }
        }
        for p in &self.object_properties {
            out.push_str(&format!(
                "objprop {} domain={} range={}",
                p.name,
                p.domains.join(","),
                p.range
            ));
            if let Some(inv) = &p.inverse {
                out.push_str(&format!(" inverse={inv}"));
            }
            out.push('\n');
        }
        for p in &self.datatype_properties {
            out.push_str(&format!(
                "dataprop {} domain={} range={}\n",
                p.name,
                p.domains.join(","),
                p.range.name()
            ));
        }
        out
    }
}

fn name_token(token: &str, line: usize, what: &str) -> Result<String, SchemaError> {
    if is_identifier(token) {
        Ok(token.to_owned())
    } else {
        Err(SchemaError::Syntax {
            line,
            reason: format!("{what} `{token}` is not a valid name"),
        })
    }
}

fn parse_class(tokens: &[&str], line: usize) -> Result<ClassDef, SchemaError> {
    match tokens {
        ["class", name] => Ok(ClassDef::new(&name_token(name, line, "class name")?)),
        ["class", name, ":", superclass] => Ok(ClassDef::with_superclass(
            &name_token(name, line, "class name")?,
            &name_token(superclass, line, "superclass name")?,
        )),
        _ => Err(SchemaError::Syntax {
            line,
            reason: "expected `class <Name> [: <SuperName>]`".to_owned(),
        }),
    }
}

struct KeyValues {
    domains: Option<Vec<String>>,
    range: Option<String>,
    inverse: Option<String>,
}

fn parse_key_values(
    tokens: &[&str],
    line: usize,
    allow_inverse: bool,
) -> Result<KeyValues, SchemaError> {
    let mut kv = KeyValues {
        domains: None,
        range: None,
        inverse: None,
    };
    for token in tokens {
        let (key, value) = token.split_once('=').ok_or_else(|| SchemaError::Syntax {
            line,
            reason: format!("expected `key=value`, got `{token}`"),
        })?;
        let slot = match key {
            "domain" => {
                let names = value
                    .split(',')
                    .map(|n| name_token(n, line, "domain class"))
                    .collect::<Result<Vec<_>, _>>()?;
                kv.domains.replace(names).is_some()
            }
            "range" => kv.range.replace(value.to_owned()).is_some(),
            "inverse" if allow_inverse => kv
                .inverse
                .replace(name_token(value, line, "inverse property")?)
                .is_some(),
            other => {
                return Err(SchemaError::Syntax {
                    line,
                    reason: format!("unknown key `{other}`"),
                })
            }
        };
        if slot {
            return Err(SchemaError::Syntax {
                line,
                reason: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(kv)
}

fn parse_objprop(tokens: &[&str], line: usize) -> Result<ObjectPropertyDef, SchemaError> {
    if tokens.len() < 4 || tokens.len() > 5 {
        return Err(SchemaError::Syntax {
            line,
            reason: "expected `objprop <name> domain=<C1>[,<C2>...] range=<C> [inverse=<name>]`"
                .to_owned(),
        });
    }
    let name = name_token(tokens[1], line, "property name")?;
    let kv = parse_key_values(&tokens[2..], line, true)?;
    let domains = kv.domains.ok_or_else(|| missing(line, "domain"))?;
    let range = name_token(
        &kv.range.ok_or_else(|| missing(line, "range"))?,
        line,
        "range class",
    )?;
    Ok(ObjectPropertyDef {
        label: name.clone(),
        name,
        domains,
        range,
        inverse: kv.inverse,
    })
}

fn parse_dataprop(tokens: &[&str], line: usize) -> Result<DatatypePropertyDef, SchemaError> {
    if tokens.len() != 4 {
        return Err(SchemaError::Syntax {
            line,
            reason: "expected `dataprop <name> domain=<C1>[,<C2>...] range=<string|integer>`"
                .to_owned(),
        });
    }
    let name = name_token(tokens[1], line, "property name")?;
    let kv = parse_key_values(&tokens[2..], line, false)?;
    let domains = kv.domains.ok_or_else(|| missing(line, "domain"))?;
    let range = match kv.range.ok_or_else(|| missing(line, "range"))?.as_str() {
        "string" => DataRange::String,
        "integer" => DataRange::Integer,
        other => {
            return Err(SchemaError::Syntax {
                line,
                reason: format!("unsupported datatype range `{other}`"),
            })
        }
    };
    Ok(DatatypePropertyDef {
        label: name.clone(),
        name,
        domains,
        range,
    })
}

fn missing(line: usize, key: &str) -> SchemaError {
    SchemaError::Syntax {
        line,
        reason: format!("missing required key `{key}`"),
    }
}
