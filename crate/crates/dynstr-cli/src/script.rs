//! Edit-script parsing. Every line is validated before anything runs.

use dynstr::ksub::{EditKind, EditOp, Target};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone)]
pub struct ScriptLine {
    pub line: usize,
    pub op: EditOp,
    /// normalized text of the edit, echoed in the output
    pub text: String,
}

/// Parse a script. Blank lines and lines starting with `#` are skipped.
/// `two_strings` allows `T` as a target.
pub fn parse(src: &str, two_strings: bool) -> Result<Vec<ScriptLine>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: String| ParseError { line, msg };
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let target = match toks[0] {
            "S" => Target::S,
            "T" if two_strings => Target::T,
            "T" => return Err(err("this problem has a single string; only S may be edited".into())),
            t => return Err(err(format!("unknown target {t:?}, expected S or T"))),
        };
        let kind = match toks.get(1).copied() {
            Some("sub") => EditKind::Sub,
            Some("ins") => EditKind::Ins,
            Some("del") => EditKind::Del,
            Some(k) => return Err(err(format!("unknown operation {k:?}, expected sub, ins or del"))),
            None => return Err(err("missing operation".into())),
        };
        let pos: usize = match toks.get(2) {
            Some(p) => p.parse().map_err(|_| err(format!("bad position {p:?}")))?,
            None => return Err(err("missing position".into())),
        };
        if pos == 0 {
            return Err(err("positions are 1-based".into()));
        }
        let want = if kind == EditKind::Del { 3 } else { 4 };
        if toks.len() != want {
            return Err(err(format!("expected {want} fields, found {}", toks.len())));
        }
        let ch = if kind == EditKind::Del { 0 } else { parse_char(toks[3]).map_err(err)? };
        out.push(ScriptLine { line, op: EditOp { target, kind, pos, ch }, text: toks.join(" ") });
    }
    Ok(out)
}

/// A single byte, or `\xNN` for anything else.
fn parse_char(tok: &str) -> Result<u8, String> {
    if let Some(hex) = tok.strip_prefix("\\x") {
        if hex.len() == 2 {
            if let Ok(b) = u8::from_str_radix(hex, 16) {
                return Ok(b);
            }
        }
        return Err(format!("bad escape {tok:?}, expected \\xNN"));
    }
    match tok.as_bytes() {
        [b] => Ok(*b),
        _ => Err(format!("bad character {tok:?}, expected one byte or \\xNN")),
    }
}
