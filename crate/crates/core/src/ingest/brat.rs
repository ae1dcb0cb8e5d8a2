//! brat standoff parser (subset), one TAB-separated record per line:
//!
//! ```text
//! T<id>TAB<Type> <start> <end>[;<start> <end>]*TAB<text>
//! R<id>TAB<Type> Arg1:T<i> Arg2:T<j>
//! A<id>TAB<Type> T<i>[ <value>]
//! ```
//!
//! Lines beginning E, M, N, or # (events, modifications, normalizations,
//! notes) are outside the subset and skip with a warning. Offsets are
//! character offsets into the paired document text; when that text is
//! supplied it is authoritative for surfaces, and a mismatch against the
//! `.ann` text column is a warning, not an error.

use std::collections::{HashMap, HashSet};

use super::{
    AnnotationDoc, AttributeAnnotation, EntityAnnotation, IngestError, RelationAnnotation,
};
use crate::vocab;

pub fn parse_ann(
    ann_text: &str,
    doc_text: Option<&str>,
    doc_id: &str,
) -> Result<AnnotationDoc, IngestError> {
    if doc_id.is_empty() {
        return Err(IngestError::BadDocId {
            reason: "empty".to_owned(),
        });
    }
    // the doc id must be able to name a document graph
    vocab::doc_graph(doc_id).map_err(|e| IngestError::BadDocId {
        reason: e.to_string(),
    })?;

    let doc_chars: Option<Vec<char>> = doc_text.map(|t| t.chars().collect());

    let mut doc = AnnotationDoc {
        doc_id: doc_id.to_owned(),
        entities: Vec::new(),
        relations: Vec::new(),
        attributes: Vec::new(),
        warnings: Vec::new(),
    };
    let mut relation_lines: HashMap<String, usize> = HashMap::new();
    let mut seen_ids: HashSet<String> = HashSet::new();

    for (idx, raw) in ann_text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let err = |reason: String| IngestError::Ann {
            line: line_no,
            reason,
        };

        match line.chars().next().unwrap() {
            'T' => {
                let entity = parse_entity(line, line_no, doc_chars.as_deref(), &mut doc.warnings)?;
                if !seen_ids.insert(entity.id.clone()) {
                    return Err(err(format!("duplicate id {}", entity.id)));
                }
                doc.entities.push(entity);
            }
            'R' => {
                let relation = parse_relation(line, line_no)?;
                if !seen_ids.insert(relation.id.clone()) {
                    return Err(err(format!("duplicate id {}", relation.id)));
                }
                relation_lines.insert(relation.id.clone(), line_no);
                doc.relations.push(relation);
            }
            'A' => {
                let attribute = parse_attribute(line, line_no)?;
                if !seen_ids.insert(attribute.id.clone()) {
                    return Err(err(format!("duplicate id {}", attribute.id)));
                }
                doc.attributes.push(attribute);
            }
            c @ ('E' | 'M' | 'N' | '#') => {
                doc.warnings
                    .push(format!("line {line_no}: skipped {c} record"));
            }
            c => return Err(err(format!("unrecognized record type `{c}`"))),
        }
    }

    // relations must reference entities defined in this document
    let entity_ids: HashSet<&str> = doc.entities.iter().map(|e| e.id.as_str()).collect();
    for r in &doc.relations {
        for arg in [&r.arg1, &r.arg2] {
            if !entity_ids.contains(arg.as_str()) {
                return Err(IngestError::Ann {
                    line: relation_lines[&r.id],
                    reason: format!("{}: dangling reference {arg}", r.id),
                });
            }
        }
    }
    // attribute targets are softer: a dangling target drops the attribute
    doc.attributes.retain(|a| {
        let ok = entity_ids.contains(a.target.as_str());
        if !ok {
            doc.warnings
                .push(format!("{}: dangling attribute target {}", a.id, a.target));
        }
        ok
    });

    Ok(doc)
}

fn record_id(token: &str, kind: char, line: usize) -> Result<String, IngestError> {
    let digits = &token[1..];
    if token.starts_with(kind) && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        Ok(token.to_owned())
    } else {
        Err(IngestError::Ann {
            line,
            reason: format!("bad {kind} id `{token}`"),
        })
    }
}

fn parse_entity(
    line: &str,
    line_no: usize,
    doc_chars: Option<&[char]>,
    warnings: &mut Vec<String>,
) -> Result<EntityAnnotation, IngestError> {
    let err = |reason: String| IngestError::Ann {
        line: line_no,
        reason,
    };
    let fields: Vec<&str> = line.split('\t').collect();
    let [id_field, span_field, text_field] = fields.as_slice() else {
        return Err(err(format!(
            "entity record needs 3 TAB-separated fields, found {}",
            fields.len()
        )));
    };
    let id = record_id(id_field, 'T', line_no)?;

    let Some((entity_type, offsets)) = span_field.split_once(' ') else {
        return Err(err("missing span offsets".to_owned()));
    };
    if entity_type.is_empty() {
        return Err(err("empty entity type".to_owned()));
    }
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for pair in offsets.split(';') {
        let parts: Vec<&str> = pair.split_whitespace().collect();
        let [start, end] = parts.as_slice() else {
            return Err(err(format!("bad span `{pair}`")));
        };
        let start: usize = start
            .parse()
            .map_err(|_| err(format!("non-numeric offset `{start}`")))?;
        let end: usize = end
            .parse()
            .map_err(|_| err(format!("non-numeric offset `{end}`")))?;
        if start >= end {
            return Err(err(format!("empty or inverted span {start}..{end}")));
        }
        if let Some((_, prev_end)) = spans.last() {
            if start < *prev_end {
                return Err(err("overlapping or unordered spans".to_owned()));
            }
        }
        spans.push((start, end));
    }

    let mut surface = text_field.to_string();
    if surface.is_empty() {
        return Err(err("empty text field".to_owned()));
    }

    if let Some(chars) = doc_chars {
        let mut fragments = Vec::new();
        for &(start, end) in &spans {
            if end > chars.len() {
                return Err(err(format!(
                    "span {start}..{end} is outside the document ({} chars)",
                    chars.len()
                )));
            }
            fragments.push(chars[start..end].iter().collect::<String>());
        }
        let from_text = fragments.join(" ");
        if from_text != surface {
            warnings.push(format!(
                "line {line_no}: surface mismatch: annotation says {surface:?}, document says {from_text:?}"
            ));
            surface = from_text; // the document text is authoritative
        }
    }

    Ok(EntityAnnotation {
        id,
        entity_type: entity_type.to_owned(),
        spans,
        surface,
    })
}

fn parse_relation(line: &str, line_no: usize) -> Result<RelationAnnotation, IngestError> {
    let err = |reason: String| IngestError::Ann {
        line: line_no,
        reason,
    };
    let fields: Vec<&str> = line.split('\t').collect();
    let [id_field, body] = fields.as_slice() else {
        return Err(err(format!(
            "relation record needs 2 TAB-separated fields, found {}",
            fields.len()
        )));
    };
    let id = record_id(id_field, 'R', line_no)?;

    let tokens: Vec<&str> = body.split_whitespace().collect();
    let [relation_type, arg1, arg2] = tokens.as_slice() else {
        return Err(err("expected `<Type> Arg1:T<i> Arg2:T<j>`".to_owned()));
    };
    let arg1 = arg1
        .strip_prefix("Arg1:")
        .ok_or_else(|| err(format!("expected `Arg1:`, found `{arg1}`")))?;
    let arg2 = arg2
        .strip_prefix("Arg2:")
        .ok_or_else(|| err(format!("expected `Arg2:`, found `{arg2}`")))?;
    Ok(RelationAnnotation {
        id,
        relation_type: (*relation_type).to_owned(),
        arg1: arg1.to_owned(),
        arg2: arg2.to_owned(),
    })
}

fn parse_attribute(line: &str, line_no: usize) -> Result<AttributeAnnotation, IngestError> {
    let err = |reason: String| IngestError::Ann {
        line: line_no,
        reason,
    };
    let fields: Vec<&str> = line.split('\t').collect();
    let [id_field, body] = fields.as_slice() else {
        return Err(err(format!(
            "attribute record needs 2 TAB-separated fields, found {}",
            fields.len()
        )));
    };
    let id = record_id(id_field, 'A', line_no)?;

    let tokens: Vec<&str> = body.splitn(3, ' ').collect();
    match tokens.as_slice() {
        [attribute_type, target] | [attribute_type, target, ""] => Ok(AttributeAnnotation {
            id,
            attribute_type: (*attribute_type).to_owned(),
            target: (*target).to_owned(),
            value: None,
        }),
        [attribute_type, target, value] => Ok(AttributeAnnotation {
            id,
            attribute_type: (*attribute_type).to_owned(),
            target: (*target).to_owned(),
            value: Some((*value).to_owned()),
        }),
        _ => Err(err("expected `<Type> T<i>[ <value>]`".to_owned())),
    }
}
