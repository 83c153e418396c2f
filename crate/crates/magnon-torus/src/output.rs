//! Deterministic text output helpers.
//!
//! All floating-point values are rendered with 17 significant digits in
//! lowercase scientific notation, so that a fixed configuration always
//! produces byte-identical files regardless of thread count or platform
//! libm differences in printing.

/// 17-significant-digit lowercase scientific rendering.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal JSON string escaping (quotes, backslash, control characters).
pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One JSON field, already-rendered value.
pub fn json_field(key: &str, rendered: &str) -> String {
    format!("\"{}\":{}", json_escape(key), rendered)
}
