use serde::Serialize;
use serde_json::{json, Value};
use std::io;
use std::path::{Path, PathBuf};
use xorsat::thresholds::ThresholdRow;

/// Header plus one record per row, `\n` terminated.
pub fn csv_rows<T: Serialize>(rows: &[T]) -> io::Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(io::Error::other)
}

pub fn thresholds_csv(rows: &[ThresholdRow]) -> io::Result<String> {
    csv_rows(rows)
}

/// Run metadata written next to every output file.
pub fn manifest(command: &str, config: Value, seed: u64, threads: Option<usize>) -> Value {
    json!({
        "command": command,
        "config": config,
        "seed": seed,
        "threads": threads,
        "version": env!("CARGO_PKG_VERSION"),
        "git_rev": option_env!("XORSAT_GIT_REV"),
    })
}

/// `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// Writes `body` to `out` with its manifest, or prints it.
pub fn emit(body: &str, out: Option<&Path>, manifest: &Value) -> io::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, body)?;
            let mut text = serde_json::to_string_pretty(manifest)?;
            text.push('\n');
            std::fs::write(manifest_path(path), text)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Parses `a:b:*c` (geometric), `a:b:+c` or `a:b:c` (arithmetic), or a comma list.
pub fn parse_k_range(s: &str) -> Result<Vec<u32>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad integer {t:?}: {e}"))
    };
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [lo, hi, step] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let (geometric, step) = match step.strip_prefix('*') {
                Some(f) => (true, num(f)?),
                None => (false, num(step.strip_prefix('+').unwrap_or(step))?),
            };
            if (geometric && step < 2) || (!geometric && step == 0) || lo == 0 && geometric {
                return Err(format!("range {s:?} does not advance"));
            }
            let mut ks = Vec::new();
            let mut k = lo as u64;
            while k <= hi as u64 {
                ks.push(k as u32);
                k = if geometric {
                    k * step as u64
                } else {
                    k + step as u64
                };
            }
            Ok(ks)
        }
        _ => Err(format!("expected lo:hi:step or a comma list, got {s:?}")),
    }
}
