//! The built-in MALOnt schema: the malware threat-intelligence vocabulary
//! the engine ships with. 29 classes, 11 object properties, 3 datatype
//! properties.

use super::{ClassDef, DataRange, DatatypePropertyDef, ObjectPropertyDef, Ontology};

impl Ontology {
    /// The built-in malware threat-intelligence schema.
    pub fn builtin() -> Ontology {
        let c = ClassDef::new;
        let sub = ClassDef::with_superclass;
        let obj = ObjectPropertyDef::new;
        let data = DatatypePropertyDef::new;

        Ontology {
            classes: vec![
                c("Malware"),
                sub("TrojanHorse", "Malware"),
                sub("Dropper", "Malware"),
                sub("Ransomware", "Malware"),
                sub("Spyware", "Malware"),
                c("MalwareFamily"),
                c("MalwareCharacteristics"),
                c("Attacker"),
                c("AttackerGroup"),
                c("ExploitTarget"),
                c("Indicator"),
                sub("File", "Indicator"),
                sub("Email", "Indicator"),
                sub("Hash", "Indicator"),
                sub("Address", "Indicator"),
                sub("MD5", "Hash"),
                sub("SHA1", "Hash"),
                sub("SHA224", "Hash"),
                sub("SHA256", "Hash"),
                sub("SHA512", "Hash"),
                sub("SSDEEP", "Hash"),
                c("Location"),
                c("Software"),
                c("Vulnerability"),
                c("Campaign"),
                c("Organization"),
                c("Person"),
                c("Host"),
                c("Information"),
            ],
            object_properties: vec![
                obj(
                    "hasFamily",
                    &["Malware"],
                    "MalwareFamily",
                    Some("hasMember"),
                ),
                obj(
                    "hasMember",
                    &["MalwareFamily"],
                    "Malware",
                    Some("hasFamily"),
                ),
                obj("indicates", &["Indicator"], "Malware", Some("indicatedBy")),
                obj("indicatedBy", &["Malware"], "Indicator", Some("indicates")),
                obj(
                    "hasVulnerability",
                    &["ExploitTarget", "Software"],
                    "Vulnerability",
                    None,
                ),
                obj("hasAttachment", &["Email"], "File", None),
                obj(
                    "usesDropper",
                    &["Attacker", "Malware", "Campaign", "AttackerGroup"],
                    "Dropper",
                    None,
                ),
                obj("usesTrojan", &["AttackerGroup"], "TrojanHorse", None),
                obj("hasTargetLocation", &["Malware"], "Location", None),
                obj(
                    "hasCharacteristics",
                    &["Malware"],
                    "MalwareCharacteristics",
                    None,
                ),
                obj("targets", &["Campaign"], "Organization", None),
            ],
            datatype_properties: vec![
                data("hasVersion", &["Software"], DataRange::String),
                data("hasReleaseYear", &["Software"], DataRange::Integer),
                data("deliveredIn", &["Dropper"], DataRange::String),
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definition_counts() {
        let o = Ontology::builtin();
        assert_eq!(o.classes.len(), 29);
        assert_eq!(o.object_properties.len(), 11);
        assert_eq!(o.datatype_properties.len(), 3);
    }

    #[test]
    fn has_family_inverse_is_has_member() {
        let o = Ontology::builtin();
        assert_eq!(
            o.object_property("hasFamily").unwrap().inverse.as_deref(),
            Some("hasMember")
        );
        assert_eq!(
            o.object_property("hasMember").unwrap().inverse.as_deref(),
            Some("hasFamily")
        );
    }

    #[test]
    fn has_vulnerability_bridges_exploit_target_and_software() {
        let o = Ontology::builtin();
        assert_eq!(
            o.object_property("hasVulnerability").unwrap().domains,
            vec!["ExploitTarget", "Software"]
        );
    }

    #[test]
    fn hash_kinds_sit_under_hash() {
        let o = Ontology::builtin();
        for name in ["MD5", "SHA1", "SHA224", "SHA256", "SHA512", "SSDEEP"] {
            assert_eq!(
                o.class(name).unwrap().superclass.as_deref(),
                Some("Hash"),
                "{name}"
            );
        }
    }
}
