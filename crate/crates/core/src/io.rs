//! JSON signal files and atomic writes.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{by_name, FiniteGroup, Signal};
use crate::linalg::C64;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SignalFile {
    pub group: String,
    pub values: Vec<[f64; 2]>,
}

impl SignalFile {
    pub fn from_signal(f: &Signal) -> Self {
        Self {
            group: f.group().name().to_string(),
            values: f.values().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Resolve against `group`, rejecting a different group name or length.
    pub fn into_signal(self, group: &Arc<FiniteGroup>) -> Result<Signal> {
        if self.group != group.name() {
            return Err(Error::GroupMismatch {
                expected: group.name().to_string(),
                found: self.group,
            });
        }
        Signal::new(
            Arc::clone(group),
            self.values.into_iter().map(|[re, im]| C64::new(re, im)).collect(),
        )
    }

    /// Resolve using the group named in the file.
    pub fn into_signal_by_name(self) -> Result<Signal> {
        let g = Arc::new(by_name(&self.group)?);
        self.into_signal(&g)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_signal(path: &Path, group: &Arc<FiniteGroup>) -> Result<Signal> {
    read_json::<SignalFile>(path)?.into_signal(group)
}

/// Write via a sibling temp file and rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_dihedral;

    #[test]
    fn signal_round_trip() {
        let g = Arc::new(build_dihedral(3).unwrap());
        let f = Signal::from_fn(&g, |x| C64::new(x as f64, -0.5));
        let text = serde_json::to_string(&SignalFile::from_signal(&f)).unwrap();
        let back: SignalFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.clone().into_signal(&g).unwrap().max_abs_diff(&f), 0.0);
        assert_eq!(back.into_signal_by_name().unwrap().max_abs_diff(&f), 0.0);
    }

    #[test]
    fn wrong_group_or_length() {
        let g = Arc::new(build_dihedral(3).unwrap());
        let bad = SignalFile {
            group: "D4".into(),
            values: vec![[0.0, 0.0]; 8],
        };
        assert!(matches!(bad.into_signal(&g), Err(Error::GroupMismatch { .. })));
        let short = SignalFile {
            group: "D3".into(),
            values: vec![[0.0, 0.0]; 5],
        };
        assert!(short.into_signal(&g).is_err());
    }
}
