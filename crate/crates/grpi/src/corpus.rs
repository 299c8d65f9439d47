//! The bundled corpus: standard families, two-factor direct products and fixed fixtures,
//! written as one group file per group plus a JSON manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use grpi_core::families::{
    alternating, cyclic, dihedral, direct_product, elementary_abelian, quaternion, symmetric,
};
use grpi_core::{GroupError, Limits, PermGroup};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::groupfile::GroupFile;

pub const MANIFEST: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub degree: usize,
    pub order: u64,
    pub tags: Vec<String>,
}

/// File name → entry.
pub type Manifest = BTreeMap<String, ManifestEntry>;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub file: String,
    pub name: String,
    pub group: PermGroup,
    pub tags: Vec<String>,
}

fn label(g: &PermGroup) -> String {
    g.label().unwrap_or("G").to_string()
}

/// Groups that are always present, whatever the order bound.
pub fn fixtures() -> grpi_core::Result<Vec<PermGroup>> {
    Ok(vec![
        symmetric(3)?,
        symmetric(4)?,
        alternating(4)?,
        dihedral(4)?,
        direct_product(&symmetric(3)?, &cyclic(2)?)?,
        direct_product(&cyclic(6)?, &symmetric(3)?)?,
        direct_product(&cyclic(5)?, &alternating(5)?)?,
    ])
}

fn product_factors() -> grpi_core::Result<Vec<PermGroup>> {
    Ok(vec![
        cyclic(2)?,
        cyclic(3)?,
        cyclic(4)?,
        cyclic(5)?,
        cyclic(6)?,
        symmetric(3)?,
        dihedral(4)?,
        quaternion()?,
        dihedral(5)?,
        alternating(4)?,
        dihedral(6)?,
        symmetric(4)?,
        alternating(5)?,
    ])
}

/// The corpus in memory: `(group, tags)` in a fixed order, one entry per name.
pub fn corpus_groups(max_order: u128) -> grpi_core::Result<Vec<(PermGroup, Vec<String>)>> {
    let degree_cap = Limits::default().degree_cap;
    let mut out: Vec<(PermGroup, Vec<String>)> = Vec::new();
    let mut push = |g: PermGroup, tag: &str| {
        if let Some((_, tags)) = out.iter_mut().find(|(h, _)| h.label() == g.label()) {
            if !tags.iter().any(|t| t == tag) {
                tags.push(tag.to_string());
            }
        } else {
            out.push((g, vec![tag.to_string()]));
        }
    };

    for n in 2..=max_order.min(u16::MAX as u128) as usize {
        match cyclic(n) {
            Ok(g) => push(g, "cyclic"),
            Err(GroupError::DegreeCap { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    for n in 3..=degree_cap {
        if 2 * n as u128 <= max_order {
            push(dihedral(n)?, "dihedral");
        }
    }
    for n in 3..=8 {
        let g = symmetric(n)?;
        if g.order() <= max_order {
            push(g, "symmetric");
        }
        let g = alternating(n + 1)?;
        if g.order() <= max_order {
            push(g, "alternating");
        }
    }
    for (p, max_rank) in [(2, 4), (3, 3), (5, 2), (7, 2), (11, 2), (13, 2)] {
        for k in 2..=max_rank {
            let g = elementary_abelian(p, k)?;
            if g.order() <= max_order {
                push(g, "elementary-abelian");
            }
        }
    }
    if max_order >= 8 {
        push(quaternion()?, "quaternion");
    }
    let factors = product_factors()?;
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            // Products of two equal prime cycles are covered by the elementary abelian family.
            if a.label() == b.label() && a.order() < 6 && grpi_core::is_prime(a.order() as u64) {
                continue;
            }
            if a.order() * b.order() <= max_order && a.degree() + b.degree() <= degree_cap {
                push(direct_product(a, b)?, "direct-product");
            }
        }
    }
    for g in fixtures()? {
        push(g, "fixture");
    }
    Ok(out)
}

fn file_name(name: &str) -> String {
    let stem: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("{stem}.grp")
}

/// Writes every corpus group to `out_dir` together with the manifest.
pub fn build_corpus(max_order: u128, out_dir: &Path) -> Result<Manifest> {
    let io = |source| HarnessError::Io {
        path: out_dir.to_path_buf(),
        source,
    };
    fs::create_dir_all(out_dir).map_err(io)?;
    let mut manifest = Manifest::new();
    for (group, tags) in corpus_groups(max_order)? {
        let name = label(&group);
        let file = file_name(&name);
        let path = out_dir.join(&file);
        let text = GroupFile::from_group(&name, &group).to_text();
        fs::write(&path, text).map_err(|source| HarnessError::Io { path, source })?;
        manifest.insert(
            file,
            ManifestEntry {
                name,
                degree: group.degree(),
                order: group.order() as u64,
                tags,
            },
        );
    }
    let path = out_dir.join(MANIFEST);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(|source| HarnessError::Io { path, source })?;
    Ok(manifest)
}

/// Reads a corpus directory written by [`build_corpus`], in manifest order.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(|source| HarnessError::Io {
        path: path.clone(),
        source,
    })?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|source| HarnessError::Json { path, source })?;
    let mut entries = Vec::with_capacity(manifest.len());
    for (file, entry) in manifest {
        let path = dir.join(&file);
        let text = fs::read_to_string(&path).map_err(|source| HarnessError::Io {
            path: path.clone(),
            source,
        })?;
        let mut parsed = GroupFile::parse(&text)?;
        parsed.tags = entry.tags.clone();
        let group = parsed.build()?;
        if group.order() != entry.order as u128 {
            return Err(HarnessError::Parse {
                line: 0,
                message: format!(
                    "{file}: order {} disagrees with manifest {}",
                    group.order(),
                    entry.order
                ),
            });
        }
        entries.push(CorpusEntry {
            file,
            name: parsed.name,
            group,
            tags: parsed.tags,
        });
    }
    Ok(entries)
}
