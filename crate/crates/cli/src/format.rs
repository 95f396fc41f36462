//! Number and CSV rendering.

use std::fmt::Write as _;

/// Shortest round-trip representation, padded with trailing zeros to at
/// least six significant digits. Infinities render as `inf` / `-inf`.
pub fn number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let mut s = v.to_string();
    let significant = s
        .trim_start_matches('-')
        .chars()
        .filter(char::is_ascii_digit)
        .skip_while(|&c| c == '0')
        .count();
    if significant < 6 {
        if !s.contains('.') {
            s.push('.');
        }
        let pad = if v == 0.0 { 5 } else { 6 - significant };
        s.extend(std::iter::repeat_n('0', pad));
    }
    s
}

/// Comma-separated table with a header row. Cells never contain commas, so
/// no quoting is needed.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}
