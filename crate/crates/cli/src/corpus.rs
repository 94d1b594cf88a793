//! Bundled worked examples with their expected reports.

use serde::Deserialize;

use crate::{execute, CliError, Command, OptionsDoc};

/// (name, entry document, golden report), sorted by name.
const ENTRIES: &[(&str, &str, &str)] = &[
    (
        "P2-fan",
        include_str!("../corpus/P2-fan.json"),
        include_str!("../corpus/P2-fan.golden.json"),
    ),
    (
        "example3",
        include_str!("../corpus/example3.json"),
        include_str!("../corpus/example3.golden.json"),
    ),
    (
        "example4",
        include_str!("../corpus/example4.json"),
        include_str!("../corpus/example4.golden.json"),
    ),
    (
        "hirzebruch-a",
        include_str!("../corpus/hirzebruch-a.json"),
        include_str!("../corpus/hirzebruch-a.golden.json"),
    ),
    (
        "hyperbola-1",
        include_str!("../corpus/hyperbola-1.json"),
        include_str!("../corpus/hyperbola-1.golden.json"),
    ),
    (
        "hyperbola-2",
        include_str!("../corpus/hyperbola-2.json"),
        include_str!("../corpus/hyperbola-2.golden.json"),
    ),
    (
        "hyperbola-3",
        include_str!("../corpus/hyperbola-3.json"),
        include_str!("../corpus/hyperbola-3.golden.json"),
    ),
    (
        "mondal-netzer-MY",
        include_str!("../corpus/mondal-netzer-MY.json"),
        include_str!("../corpus/mondal-netzer-MY.golden.json"),
    ),
    (
        "mondal-netzer-MY1",
        include_str!("../corpus/mondal-netzer-MY1.json"),
        include_str!("../corpus/mondal-netzer-MY1.golden.json"),
    ),
    (
        "strip",
        include_str!("../corpus/strip.json"),
        include_str!("../corpus/strip.golden.json"),
    ),
    (
        "tentacle-diag",
        include_str!("../corpus/tentacle-diag.json"),
        include_str!("../corpus/tentacle-diag.golden.json"),
    ),
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    command: Command,
    input: serde_json::Value,
    #[serde(default)]
    options: OptionsDoc,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub command: Command,
    pub input: serde_json::Value,
    pub options: OptionsDoc,
    pub golden: &'static str,
}

impl CorpusEntry {
    pub fn input_json(&self) -> String {
        serde_json::to_string_pretty(&self.input).expect("corpus input serializes")
    }

    /// Runs the entry's command on its input with its options.
    pub fn run(&self) -> Result<String, CliError> {
        execute(self.command, &self.input_json(), &self.options.to_options()?)
    }
}

pub fn corpus_list() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    let &(name, doc, golden) = ENTRIES.iter().find(|e| e.0 == name)?;
    let d: EntryDoc = serde_json::from_str(doc).expect("bundled corpus entries are valid");
    Some(CorpusEntry {
        name,
        command: d.command,
        input: d.input,
        options: d.options,
        golden,
    })
}
