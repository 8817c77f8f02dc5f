//! Bundled example arrangements.

use crate::cli::doc::parse_arrangement;
pub use crate::cli::doc::Instance;

const DOCUMENTS: [(&str, &str); 5] = [
    ("generic3", include_str!("../corpus/generic3.json")),
    ("pencil3", include_str!("../corpus/pencil3.json")),
    ("twin-triples", include_str!("../corpus/twin-triples.json")),
    ("disjoint-triples", include_str!("../corpus/disjoint-triples.json")),
    ("nonres-triple", include_str!("../corpus/nonres-triple.json")),
];

pub fn names() -> Vec<&'static str> {
    DOCUMENTS.iter().map(|(n, _)| *n).collect()
}

pub fn document(name: &str) -> Option<&'static str> {
    DOCUMENTS.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

pub fn by_name(name: &str) -> Option<Instance> {
    document(name).map(|d| parse_arrangement(d).expect("bundled document is valid"))
}

/// Three lines in general position.
pub fn generic3() -> Instance {
    by_name("generic3").unwrap()
}

/// Three concurrent lines.
pub fn pencil3() -> Instance {
    by_name("pencil3").unwrap()
}

/// Two resonant triple points sharing a line.
pub fn twin_triples() -> Instance {
    by_name("twin-triples").unwrap()
}

/// Two resonant triple points on disjoint line sets.
pub fn disjoint_triples() -> Instance {
    by_name("disjoint-triples").unwrap()
}

/// A single non-resonant triple point.
pub fn nonres_triple() -> Instance {
    by_name("nonres-triple").unwrap()
}

pub fn all() -> Vec<Instance> {
    names().into_iter().filter_map(by_name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_documents() {
        for inst in all() {
            assert!(names().contains(&inst.name.as_str()));
        }
        assert_eq!(all().len(), 5);
        assert!(by_name("missing").is_none());
    }
}
