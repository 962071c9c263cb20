use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scheme::{
    to_two_layer, ComponentType, Interval, MentionSet, SentenceAnnotation, TagSequence,
};

/// One sentence of a corpus with its gold mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    tokens: Vec<String>,
    mentions: MentionSet,
    component_types: Option<BTreeMap<Interval, ComponentType>>,
}

impl CorpusRecord {
    pub fn new(tokens: Vec<String>, mentions: MentionSet) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::InvalidAnnotation(
                "a record needs at least one token".into(),
            ));
        }
        if tokens
            .iter()
            .any(|t| t.is_empty() || t.contains(char::is_whitespace))
        {
            return Err(Error::InvalidAnnotation(
                "tokens must be non-empty and space-free".into(),
            ));
        }
        if let Some(end) = mentions.max_word() {
            if end >= tokens.len() {
                return Err(Error::InvalidMention(format!(
                    "word {end} is outside a sentence of {} tokens",
                    tokens.len()
                )));
            }
        }
        Ok(CorpusRecord {
            tokens,
            mentions,
            component_types: None,
        })
    }

    /// Attaches gold component types, keyed by component interval.
    pub fn with_component_types(
        mut self,
        types: impl IntoIterator<Item = (Interval, ComponentType)>,
    ) -> Result<Self> {
        let types: BTreeMap<Interval, ComponentType> = types.into_iter().collect();
        if let Some(iv) = types.keys().find(|iv| iv.end >= self.tokens.len()) {
            return Err(Error::InvalidAnnotation(format!(
                "typed component {iv} out of range"
            )));
        }
        self.component_types = (!types.is_empty()).then_some(types);
        Ok(self)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn mentions(&self) -> &MentionSet {
        &self.mentions
    }

    pub fn component_types(&self) -> Option<&BTreeMap<Interval, ComponentType>> {
        self.component_types.as_ref()
    }

    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    /// Two-layer form, oriented by the gold component types when present.
    pub fn annotation(&self) -> Result<SentenceAnnotation> {
        match &self.component_types {
            Some(types) => {
                let typer = |iv: Interval| types.get(&iv).copied();
                to_two_layer(&self.mentions, self.n(), Some(&typer))
            }
            None => to_two_layer(&self.mentions, self.n(), None),
        }
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRecord>> {
    let lines: Vec<&str> = text.lines().collect();
    let mut records = Vec::new();
    let mut i = 0;
    loop {
        while i < lines.len() && lines[i].trim().is_empty() {
            i += 1;
        }
        if i >= lines.len() {
            break;
        }
        let tokens: Vec<String> = lines[i].split_whitespace().map(str::to_owned).collect();
        let mention_line = lines
            .get(i + 1)
            .ok_or_else(|| Error::parse(i + 2, "missing mention line"))?;
        let mentions: MentionSet = mention_line
            .parse()
            .map_err(|e: Error| Error::parse(i + 2, e.to_string()))?;
        let mut record =
            CorpusRecord::new(tokens, mentions).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        i += 2;
        if let Some(line) = lines.get(i).filter(|l| !l.trim().is_empty()) {
            let types = parse_types(line).map_err(|e| Error::parse(i + 1, e.to_string()))?;
            record = record
                .with_component_types(types)
                .map_err(|e| Error::parse(i + 1, e.to_string()))?;
            i += 1;
            if let Some(extra) = lines.get(i).filter(|l| !l.trim().is_empty()) {
                return Err(Error::parse(
                    i + 1,
                    format!("expected a blank line, got {extra:?}"),
                ));
            }
        }
        records.push(record);
    }
    Ok(records)
}

fn parse_types(line: &str) -> Result<Vec<(Interval, ComponentType)>> {
    line.split_whitespace()
        .map(|entry| {
            let (iv, ty) = entry.split_once(':').ok_or_else(|| {
                Error::InvalidAnnotation(format!("expected b-e:type, got {entry:?}"))
            })?;
            Ok((iv.parse()?, ty.parse()?))
        })
        .collect()
}

pub fn format_corpus(records: &[CorpusRecord]) -> String {
    let mut out = String::new();
    for (k, r) in records.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&r.tokens.join(" "));
        out.push('\n');
        out.push_str(&r.mentions.to_string());
        out.push('\n');
        if let Some(types) = &r.component_types {
            let entries: Vec<String> = types.iter().map(|(iv, ty)| format!("{iv}:{ty}")).collect();
            out.push_str(&entries.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusRecord>> {
    parse_corpus(&fs::read_to_string(path)?)
}

pub fn write_corpus(records: &[CorpusRecord], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_corpus(records))?;
    Ok(())
}

/// One tag sequence per line; an empty line is an empty sequence.
pub fn parse_tag_file(text: &str) -> Result<Vec<TagSequence>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            line.parse()
                .map_err(|e: Error| Error::parse(i + 1, e.to_string()))
        })
        .collect()
}

pub fn format_tag_file(sequences: &[TagSequence]) -> String {
    sequences.iter().map(|s| format!("{s}\n")).collect()
}

pub fn read_tag_file(path: impl AsRef<Path>) -> Result<Vec<TagSequence>> {
    parse_tag_file(&fs::read_to_string(path)?)
}

pub fn write_tag_file(sequences: &[TagSequence], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_tag_file(sequences))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "pain in arms and shoulders\n0-1;2-2|0-1;4-4\n\nno mention here\n\n\nlegs were numb\n0-0;2-2\n0-0:x 2-2:y\n";

    #[test]
    fn reads_sample() {
        let records = parse_corpus(SAMPLE).unwrap();
        assert_eq!(records.len(), 3);
        let first = &records[0];
        assert_eq!(first.n(), 5);
        assert_eq!(first.mentions().len(), 2);
        assert_eq!(first.mentions().discontinuous().count(), 1);
        assert!(first.mentions().iter().any(|m| m.to_string() == "0-2"));
        assert!(records[1].mentions().is_empty());
        assert_eq!(records[2].component_types().unwrap().len(), 2);
    }

    #[test]
    fn canonical_text_round_trips() {
        let records = parse_corpus(SAMPLE).unwrap();
        let text = format_corpus(&records);
        assert_eq!(
            text,
            "pain in arms and shoulders\n0-1;4-4|0-2\n\nno mention here\n\n\nlegs were numb\n0-0;2-2\n0-0:x 2-2:y\n"
        );
        assert_eq!(format_corpus(&parse_corpus(&text).unwrap()), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_corpus("a b\n0-1\n\nc d\n0-7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_corpus("a b\n0-x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_corpus("a b").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_corpus("a b\n0-0\n0-0:z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_corpus("a b\n0-0\n0-0:x\nextra\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn tag_file_round_trip() {
        let text = "O CB CI\n\nDB-Bx DI-O DI-By\n";
        let seqs = parse_tag_file(text).unwrap();
        assert_eq!(seqs.len(), 3);
        assert!(seqs[1].is_empty());
        assert_eq!(format_tag_file(&seqs), text);
        assert!(matches!(
            parse_tag_file("O\nO XX\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
