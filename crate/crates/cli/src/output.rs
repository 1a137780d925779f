//! Output formatting: every number is serialized with 17 significant digits
//! so results round-trip exactly, files are UTF-8 with LF line endings, and
//! identical inputs write identical bytes.

use std::io::Write;
use std::path::Path;

/// One float, 17 significant digits, locale-independent.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes to the given path, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

/// Builds a CSV from a header and rows of already-formatted fields.
pub fn csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// The minima file that accompanies a scan CSV: `x.csv` -> `x.minima.csv`,
/// anything else gets `.minima.csv` appended.
pub fn minima_path(out: &Path) -> std::path::PathBuf {
    let name = out.file_name().and_then(|n| n.to_str()).unwrap_or("");
    let new_name = match name.strip_suffix(".csv") {
        Some(stem) => format!("{stem}.minima.csv"),
        None => format!("{name}.minima.csv"),
    };
    out.with_file_name(new_name)
}
