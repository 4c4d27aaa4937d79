//! The identity corpus shipped with the crate, embedded at compile time.
//!
//! The same files live under `corpus/` in the crate directory, so the CLI can
//! be pointed at them directly.

use crate::lang::{parse_one, IdentitySpec};

/// `(name, file text)` for every corpus identity.
pub const FILES: &[(&str, &str)] = &[
    ("rr-a", include_str!("../corpus/rr-a.id")),
    ("rr-b", include_str!("../corpus/rr-b.id")),
    ("rogers-a", include_str!("../corpus/rogers-a.id")),
    ("rogers-b", include_str!("../corpus/rogers-b.id")),
    ("double-2-8-10", include_str!("../corpus/double-2-8-10.id")),
    ("double-4-6-10", include_str!("../corpus/double-4-6-10.id")),
    ("double-1-4-5", include_str!("../corpus/double-1-4-5.id")),
    ("double-2-3-5", include_str!("../corpus/double-2-3-5.id")),
    ("andrews-uncu", include_str!("../corpus/andrews-uncu.id")),
    ("cao-wang-u-q", include_str!("../corpus/cao-wang-u-q.id")),
];

/// The classical single-sum identities the double sums reduce to.
pub const CLASSICAL: &[&str] = &["rr-a", "rr-b", "rogers-a", "rogers-b"];

/// The four double-sum identities with quarter-integer exponents.
pub const DOUBLE: &[&str] = &["double-2-8-10", "double-4-6-10", "double-1-4-5", "double-2-3-5"];

/// Parses the named corpus identity.
///
/// Panics on an unknown name; the corpus is fixed at build time.
pub fn load(name: &str) -> IdentitySpec {
    let (_, text) = FILES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no corpus identity `{name}`"));
    parse_one(text).unwrap_or_else(|e| panic!("corpus identity `{name}` does not parse: {e}"))
}

pub fn all() -> Vec<IdentitySpec> {
    FILES.iter().map(|(n, _)| load(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_parses_under_its_own_name() {
        for (name, _) in FILES {
            assert_eq!(load(name).name, *name);
        }
    }
}
