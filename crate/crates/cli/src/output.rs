//! Output destination handling.

use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory for relative
/// `--output` paths.
pub const OUT_DIR_VAR: &str = "STATEDOS_OUT_DIR";

/// Resolve a user-supplied output path: absolute paths pass through,
/// relative ones land under `$STATEDOS_OUT_DIR` when it is set.
pub fn resolve(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Write `content` to the resolved path, or to stdout when no path was
/// given. Returns the path actually written, if any.
pub fn emit(path: Option<&Path>, content: &str) -> std::io::Result<Option<PathBuf>> {
    match path {
        Some(p) => {
            let resolved = resolve(p);
            std::fs::write(&resolved, content)?;
            Ok(Some(resolved))
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(None)
        }
    }
}
