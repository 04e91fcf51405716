//! Small helpers shared by the text export formats.

/// Formats an `f64` with enough digits to round-trip bit for bit.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.17e}")
}

/// Splits a `key = value` line, returning trimmed parts.
pub(crate) fn split_kv(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once('=')?;
    Some((k.trim(), v.trim()))
}
