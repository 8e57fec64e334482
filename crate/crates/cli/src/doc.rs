//! JSON documents for families and verification reports.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use oshlab_core::{ElementSet, SetFamily};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A family as `{"n": .., "sets": [[..], ..]}` with 1-based sorted elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub n: u32,
    pub sets: Vec<Vec<u32>>,
}

/// The compact form emitted by `--bitmask`: bit `e - 1` stands for element `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitmaskDocument {
    pub n: u32,
    pub masks: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyDocument {
    Sets(FamilyDocument),
    Masks(BitmaskDocument),
}

impl FamilyDocument {
    pub fn from_family(f: &SetFamily) -> Self {
        FamilyDocument {
            n: f.ground(),
            sets: f.iter().map(|s| s.to_vec()).collect(),
        }
    }

    /// Validates every element and rejects repeated sets or elements. Input
    /// order is not significant.
    pub fn to_family(&self) -> CliResult<SetFamily> {
        let mut members = Vec::with_capacity(self.sets.len());
        for set in &self.sets {
            members.push(ElementSet::try_from_elements(set.iter().copied(), self.n)?);
        }
        Ok(SetFamily::new(self.n, members)?)
    }
}

impl BitmaskDocument {
    pub fn from_family(f: &SetFamily) -> Self {
        BitmaskDocument {
            n: f.ground(),
            masks: f.numeric_masks(),
        }
    }

    pub fn to_family(&self) -> CliResult<SetFamily> {
        Ok(SetFamily::new(
            self.n,
            self.masks.iter().map(|&m| ElementSet::from_bits(m)),
        )?)
    }
}

/// Parses either document form.
pub fn parse_family(text: &str) -> CliResult<SetFamily> {
    let doc: AnyDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match doc {
        AnyDocument::Sets(d) => d.to_family(),
        AnyDocument::Masks(d) => d.to_family(),
    }
}

/// Reads a family from `path`, or from stdin when `path` is `-`.
pub fn load_family(path: &Path) -> CliResult<SetFamily> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    parse_family(&text)
}

/// Single-line JSON with a trailing newline.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn save_family(f: &SetFamily, path: &Path) -> CliResult<()> {
    write_output(Some(path), &render_json(&FamilyDocument::from_family(f)))
}

/// Writes to `path`, or stdout when it is `None` or `-`.
pub fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// `{}` or `{1,3,4}`.
pub fn set_label(s: ElementSet) -> String {
    s.to_string()
}

/// Parses `2,3,5`; the empty string is the empty set.
pub fn parse_set(text: &str) -> CliResult<ElementSet> {
    let text = text.trim().trim_start_matches('{').trim_end_matches('}');
    if text.trim().is_empty() {
        return Ok(ElementSet::EMPTY);
    }
    let mut elems = Vec::new();
    for part in text.split(',') {
        let e: u32 = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("`{part}` is not a positive integer")))?;
        elems.push(e);
    }
    Ok(ElementSet::try_from_elements(
        elems,
        oshlab_core::MAX_ELEMENT,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use oshlab_core::Error;

    #[test]
    fn load_examples() {
        let f = parse_family(r#"{"n":2,"sets":[[1],[2]]}"#).unwrap();
        assert_eq!(f.len(), 2);
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[3]]}"#),
            Err(CliError::Core(Error::ElementOutOfRange {
                element: 3,
                n: 2
            }))
        ));
        assert!(matches!(
            parse_family(r#"{"n":2,"sets":[[1],[1]]}"#),
            Err(CliError::Core(Error::DuplicateSet(_)))
        ));
        assert_eq!(parse_family(r#"{"n":2,"masks":[1,2]}"#).unwrap(), f);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_family("{\"n\":2,\n\"sets\":[[1],]}") {
            Err(CliError::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_round_trip_is_byte_identical() {
        let text = "{\"n\":3,\"sets\":[[],[2],[1,3]]}\n";
        let f = parse_family(text).unwrap();
        assert_eq!(render_json(&FamilyDocument::from_family(&f)), text);
        // Input order is free; output is always canonical.
        let shuffled = parse_family(r#"{"n":3,"sets":[[3,1],[],[2]]}"#).unwrap();
        assert_eq!(render_json(&FamilyDocument::from_family(&shuffled)), text);
    }

    #[test]
    fn parse_set_forms() {
        assert_eq!(parse_set("2,3").unwrap(), ElementSet::from_elements([2, 3]));
        assert_eq!(parse_set("").unwrap(), ElementSet::EMPTY);
        assert_eq!(
            parse_set("{1, 4}").unwrap(),
            ElementSet::from_elements([1, 4])
        );
        assert!(parse_set("0").is_err());
        assert!(parse_set("x").is_err());
    }
}
