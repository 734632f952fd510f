//! Optional on-disk result cache. An entry stores the exact rendered
//! bytes of a successful invocation, keyed by the full argument vector
//! and the tool version; hits are printed verbatim. Purely an
//! optimization: `--no-cache` bypasses it entirely.

use std::fs;
use std::path::PathBuf;

pub fn cache_dir() -> PathBuf {
    std::env::var_os("SUCLASS_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".suclass-cache"))
}

/// A filename-safe key from the raw argument vector plus the version.
pub fn key_from_args(args: &[String]) -> String {
    let raw = format!("{}::{}", crate::output::VERSION, args.join("\x1f"));
    let mut sanitized: String = raw
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    if sanitized.len() > 120 {
        sanitized.truncate(120);
    }
    format!("{}-{:016x}", sanitized, fnv1a(raw.as_bytes()))
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

pub fn lookup(key: &str) -> Option<String> {
    fs::read_to_string(cache_dir().join(key)).ok()
}

/// Atomic store: write to a temporary sibling, then rename into place.
pub fn store(key: &str, content: &str) {
    let dir = cache_dir();
    if fs::create_dir_all(&dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("{key}.tmp.{}", std::process::id()));
    if fs::write(&tmp, content).is_ok() {
        let _ = fs::rename(&tmp, dir.join(key));
    }
}
