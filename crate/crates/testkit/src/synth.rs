//! Deterministic synthetic corpus for scale tests and benchmarks: `.ann`
//! files only (the text pairing is optional in the corpus layout), 16
//! entities / 15 relations / 3 attributes per document, ~66 asserted quads
//! each. Document 0 carries the `AttackerGroup1` label and the `10.0.0.1`
//! indicator, so the bundled competency queries have answers at scale.

use std::io::Write;
use std::path::Path;

const LOCATIONS: [&str; 8] = [
    "Europe", "Russia", "Mongolia", "Belarus", "China", "Germany", "India", "Brazil",
];

struct AnnBuilder {
    text: String,
    next_entity: usize,
    next_relation: usize,
    next_attribute: usize,
    cursor: usize,
}

impl AnnBuilder {
    fn new() -> Self {
        Self {
            text: String::new(),
            next_entity: 0,
            next_relation: 0,
            next_attribute: 0,
            cursor: 0,
        }
    }

    fn entity(&mut self, entity_type: &str, surface: &str) -> String {
        self.next_entity += 1;
        let id = format!("T{}", self.next_entity);
        let start = self.cursor;
        let end = start + surface.chars().count();
        self.cursor = end + 1;
        self.text
            .push_str(&format!("{id}\t{entity_type} {start} {end}\t{surface}\n"));
        id
    }

    fn relation(&mut self, relation_type: &str, arg1: &str, arg2: &str) {
        self.next_relation += 1;
        self.text.push_str(&format!(
            "R{}\t{relation_type} Arg1:{arg1} Arg2:{arg2}\n",
            self.next_relation
        ));
    }

    fn attribute(&mut self, attribute_type: &str, target: &str, value: &str) {
        self.next_attribute += 1;
        self.text.push_str(&format!(
            "A{}\t{attribute_type} {target} {value}\n",
            self.next_attribute
        ));
    }
}

/// Writes `docs` annotation files into `dir`; returns the file count.
pub fn write_synth_corpus(dir: &Path, docs: usize) -> std::io::Result<usize> {
    for i in 0..docs {
        let mut b = AnnBuilder::new();

        let group = b.entity("AttackerGroup", &format!("AttackerGroup{}", i + 1));
        let campaign = b.entity("Campaign", &format!("Campaign {i}"));
        let org = b.entity("Organization", &format!("Organization {i}"));
        let trojan_a = b.entity("TrojanHorse", &format!("Trojan {i} alpha"));
        let trojan_b = b.entity("TrojanHorse", &format!("Trojan {i} beta"));
        let dropper = b.entity("Dropper", &format!("Dropper {i}"));
        let family = b.entity("MalwareFamily", &format!("Family {i}"));
        let addr: Vec<String> = (1..=3)
            .map(|k| {
                b.entity(
                    "Address",
                    &format!("10.{}.{}.{}", i / 250 % 250, i % 250, k - 1),
                )
            })
            .collect();
        let md5_a = b.entity("MD5", &format!("{:032x}", (i as u128) * 1_000_003 + 1));
        let md5_b = b.entity("MD5", &format!("{:032x}", (i as u128) * 1_000_003 + 2));
        let sha = b.entity("SHA256", &format!("{:064x}", (i as u128) * 1_000_033 + 3));
        let location = b.entity("Location", LOCATIONS[i % LOCATIONS.len()]);
        let software = b.entity("Software", &format!("Tool {i}"));
        let vuln = b.entity("Vulnerability", &format!("CVE-2017-{:04}", i % 10_000));

        b.relation("usesTrojan", &group, &trojan_a);
        b.relation("usesTrojan", &group, &trojan_b);
        b.relation("usesDropper", &group, &dropper);
        b.relation("usesDropper", &campaign, &dropper);
        b.relation("targets", &campaign, &org);
        b.relation("hasFamily", &trojan_a, &family);
        b.relation("hasFamily", &trojan_b, &family);
        b.relation("indicates", &addr[0], &trojan_a);
        b.relation("indicates", &addr[1], &trojan_a);
        b.relation("indicates", &addr[2], &trojan_b);
        b.relation("indicates", &md5_a, &trojan_a);
        b.relation("indicates", &md5_b, &trojan_b);
        b.relation("indicates", &sha, &trojan_a);
        b.relation("hasTargetLocation", &trojan_a, &location);
        b.relation("hasVulnerability", &software, &vuln);

        b.attribute("deliveredIn", &dropper, "spear-phishing");
        b.attribute("hasVersion", &software, &format!("1.{i}"));
        b.attribute("hasReleaseYear", &software, &format!("{}", 2013 + i % 8));

        let path = dir.join(format!("synth-{i:05}.ann"));
        let mut file = std::fs::File::create(path)?;
        file.write_all(b.text.as_bytes())?;
    }
    Ok(docs)
}
