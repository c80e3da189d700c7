use super::{Flag, Scenario};

/// A scenario file shipped with the library.
#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub label: &'static str,
    pub file_name: &'static str,
    pub text: &'static str,
}

macro_rules! entry {
    ($label:literal) => {
        CorpusEntry {
            label: $label,
            file_name: concat!($label, ".scn"),
            text: include_str!(concat!("../../corpus/", $label, ".scn")),
        }
    };
}

const CORPUS: &[CorpusEntry] = &[
    entry!("rank1-torus-m2"),
    entry!("rank1-torus-m3"),
    entry!("rank1-torus-m4"),
    entry!("rank1-torus-m5"),
    entry!("rank1-torus-m6"),
    entry!("lambda2-c4-sl4"),
    entry!("sl2-adjoint"),
    entry!("sl2-2copies"),
    entry!("sl3-c3-c3"),
    entry!("quiver-z3"),
    entry!("theta-gl5-m3"),
    entry!("torus-family-n1"),
    entry!("torus-family-n2"),
    entry!("torus-family-n3"),
    entry!("hesse-binary-tetrahedral"),
    entry!("spin7"),
    entry!("darboux-demo"),
];

pub fn corpus() -> &'static [CorpusEntry] {
    CORPUS
}

pub fn bundled(label: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.label == label || e.file_name == label)
}

/// Bundled scenarios, optionally only those declaring `flag`.
pub fn list_corpus(flag: Option<Flag>) -> Vec<Scenario> {
    CORPUS
        .iter()
        .map(|e| Scenario::parse(e.text, e.file_name).expect("bundled scenarios are valid"))
        .filter(|s| flag.is_none_or(|f| s.flags.contains(&f)))
        .collect()
}
