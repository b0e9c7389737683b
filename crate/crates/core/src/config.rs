//! Minimal parsing for the sectioned `key = value` configuration files.

use crate::error::{Error, Result};

/// Parses a real written as a decimal (`0.0113`, `4e3`) or a fraction (`8/3`).
pub fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|e| format!("bad numerator in `{s}`: {e}"))?;
            let d: f64 = d.trim().parse().map_err(|e| format!("bad denominator in `{s}`: {e}"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            n / d
        }
        None => s.parse().map_err(|e| format!("bad number `{s}`: {e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    /// Text of the `# provenance:` comment immediately preceding the entry.
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Section {
    pub name: String,
    pub entries: Vec<Entry>,
    /// Every provenance note seen inside the section.
    pub provenance: Vec<String>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn real(&self, key: &str) -> Result<f64> {
        let e = self
            .get(key)
            .ok_or_else(|| Error::Config(format!("[{}] is missing `{key}`", self.name)))?;
        parse_real(&e.value).map_err(|message| Error::Parse { line: e.line, message })
    }

    pub fn real_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            Some(_) => self.real(key),
            None => Ok(default),
        }
    }
}

/// Splits `text` into sections. Entries before the first header land in a
/// section with an empty name.
pub fn parse_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections = vec![Section::default()];
    let mut pending: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(p) = c.trim().strip_prefix("provenance:") {
                let p = p.trim().to_string();
                sections.last_mut().expect("non-empty").provenance.push(p.clone());
                pending = Some(p);
            }
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse { line: line_no, message: format!("unterminated section `{line}`") })?;
            sections.push(Section { name: name.trim().to_string(), ..Section::default() });
            pending = None;
            continue;
        }
        let body = line.split('#').next().unwrap_or("").trim();
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: line_no, message: format!("expected `key = value`, got `{line}`") })?;
        let sec = sections.last_mut().expect("non-empty");
        let key = k.trim().to_string();
        if sec.get(&key).is_some() {
            return Err(Error::Parse { line: line_no, message: format!("duplicate key `{key}`") });
        }
        sec.entries.push(Entry { key, value: v.trim().to_string(), line: line_no, provenance: pending.take() });
    }
    Ok(sections)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_and_fractions() {
        assert_eq!(parse_real("4e3").unwrap(), 4000.0);
        assert_eq!(parse_real(" 1/85 ").unwrap(), 1.0 / 85.0);
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("abc").is_err());
    }

    #[test]
    fn sections_with_provenance() {
        let s = parse_sections("[a]\n# provenance: somewhere\nx = 1\ny = 2 # trailing\n[b]\nz=3/4\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].get("x").unwrap().provenance.as_deref(), Some("somewhere"));
        assert!(s[1].get("y").unwrap().provenance.is_none());
        assert_eq!(s[1].real("y").unwrap(), 2.0);
        assert_eq!(s[2].real("z").unwrap(), 0.75);
    }

    #[test]
    fn malformed_lines_report_position() {
        let e = parse_sections("[a]\nnonsense\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }
}
