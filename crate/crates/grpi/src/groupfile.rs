//! Line-oriented group files:
//!
//! ```text
//! # comment
//! name S3
//! degree 3
//! gen (0 1 2)
//! gen (0 1)
//! ```

use std::fmt::Write as _;

use grpi_core::{PermGroup, Permutation};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generator_lines: Vec<String>,
    /// Tags come from the corpus manifest, not from the file.
    pub tags: Vec<String>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut degree = None;
        let mut generator_lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (keyword, rest) = trimmed
                .split_once(char::is_whitespace)
                .map_or((trimmed, ""), |(k, r)| (k, r.trim()));
            match keyword {
                "name" if !rest.is_empty() => name = Some(rest.to_string()),
                "degree" => {
                    let n: usize = rest.parse().map_err(|_| HarnessError::Parse {
                        line,
                        message: format!("bad degree {rest:?}"),
                    })?;
                    if degree.replace(n).is_some() {
                        return Err(HarnessError::Parse {
                            line,
                            message: "degree given twice".into(),
                        });
                    }
                }
                "gen" => {
                    let Some(n) = degree else {
                        return Err(HarnessError::Parse {
                            line,
                            message: "gen before degree".into(),
                        });
                    };
                    Permutation::parse_cycles(n, rest)
                        .map_err(|source| HarnessError::Group { line, source })?;
                    generator_lines.push(rest.to_string());
                }
                _ => {
                    return Err(HarnessError::Parse {
                        line,
                        message: format!("unrecognized line {trimmed:?}"),
                    })
                }
            }
        }
        let degree = degree.ok_or(HarnessError::Parse {
            line: text.lines().count().max(1),
            message: "missing degree".into(),
        })?;
        Ok(GroupFile {
            name: name.unwrap_or_else(|| "G".into()),
            degree,
            generator_lines,
            tags: Vec::new(),
        })
    }

    pub fn from_group(name: &str, group: &PermGroup) -> Self {
        GroupFile {
            name: name.to_string(),
            degree: group.degree(),
            generator_lines: group.generators().iter().map(|g| g.to_string()).collect(),
            tags: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name {}", self.name).unwrap();
        writeln!(out, "degree {}", self.degree).unwrap();
        for g in &self.generator_lines {
            writeln!(out, "gen {g}").unwrap();
        }
        out
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generator_lines
            .iter()
            .map(|g| Permutation::parse_cycles(self.degree, g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermGroup::new(self.degree, gens)?.labeled(self.name.clone()))
    }
}

/// Parses a group file into a group labeled with its name.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    GroupFile::parse(text)?.build()
}

/// Generators separated by `;`, e.g. `"(0 1 2 3);(0 2)"`.
pub fn parse_generator_list(degree: usize, text: &str) -> Result<Vec<Permutation>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(degree, s).map_err(HarnessError::from))
        .collect()
}
