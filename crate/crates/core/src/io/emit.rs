//! Report emission: `key=value` lines for machines, an aligned table for
//! people. Both render the same ordered list of entries.

use crate::germ::{InvariantReport, Provenance};
use crate::gb::KrullDim;

/// Bumped whenever a key is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// Ordered key/value pairs. Keys are fixed identifiers; values never
/// contain newlines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    entries: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string().replace('\n', " ");
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `schema_version=N` followed by one `key=value` line per entry.
    pub fn machine(&self) -> String {
        let mut out = format!("schema_version={SCHEMA_VERSION}\n");
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn human(&self) -> String {
        let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn krull(d: KrullDim) -> String {
    d.to_string()
}

/// The full report as a record, in a fixed key order.
pub fn report_record(report: &InvariantReport) -> Record {
    let mut r = Record::new();
    r.push("image", report.image.polynomial());
    r.push(
        "image_provenance",
        match report.image.provenance() {
            Provenance::Eliminated => "eliminated",
            Provenance::UserSupplied => "user-supplied",
        },
    );
    r.push("mu_image", report.mu_image);
    r.push("mu_image_oracle", report.mu_image_oracle.value);
    r.push("oracle_s0", &report.mu_image_oracle.s0);
    r.push("oracle_global", report.mu_image_oracle.global);
    r.push(
        "oracle_persistent",
        report.mu_image_oracle.persistent.map_or_else(|| "infinite".to_string(), |p| p.to_string()),
    );
    r.push("oracle_attempts", report.mu_image_oracle.attempts);
    r.push("ft_codim", report.ft_codim);
    r.push("mu_br", report.mu_br);
    r.push("cm_flag", report.cm_flag);
    r.push("stability", report.stability);
    if let Some(ae) = report.ae_codim {
        r.push("ae_codim", ae);
    }
    r.push("samuel_profile", join(&report.samuel_profile));
    r.push("ft_krull_dim", krull(report.ft_krull_dim));
    r.push("lc_dim", report.lc_dimension.value().map_or_else(|| "unsettled".to_string(), |d| d.to_string()));
    r.push("lc_substitution", report.lc_substitution);
    if let Some(q) = &report.quasi_homogeneous {
        r.push("weighted_degree", q.weighted_degree);
        r.push("euler_identity", q.euler_identity);
        r.push("quasi_homogeneous_ideals_equal", q.ideals_equal);
    }
    let keys: Vec<&str> = report.warnings.iter().map(|w| w.key()).collect();
    r.push("warnings", keys.join(","));
    for w in &report.warnings {
        r.push("warning", format!("{}: {w}", w.key()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines() {
        let mut r = Record::new();
        r.push("mu_image", 7).push("stability", "unstable");
        assert_eq!(r.machine(), "schema_version=1\nmu_image=7\nstability=unstable\n");
        assert_eq!(r.get("mu_image"), Some("7"));
    }

    #[test]
    fn human_alignment() {
        let mut r = Record::new();
        r.push("a", 1).push("long_key", 2);
        assert_eq!(r.human(), "a         1\nlong_key  2\n");
    }

    #[test]
    fn newlines_are_flattened() {
        let mut r = Record::new();
        r.push("k", "a\nb");
        assert_eq!(r.get("k"), Some("a b"));
    }
}
