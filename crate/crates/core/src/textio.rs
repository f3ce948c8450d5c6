//! Line-oriented vector files: an optional `# agfft <kind> key=value ...`
//! header, then one field element per line. Other `#` lines and blank
//! lines are ignored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Fe;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Header {
    pub kind: String,
    pub fields: BTreeMap<String, String>,
}

impl Header {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(String::as_str)
    }

    /// Fails when `key` is present with a different value.
    pub fn expect(&self, key: &str, want: &str) -> Result<()> {
        match self.get(key) {
            Some(v) if v != want => Err(Error::Format(format!("header {key}={v}, expected {want}"))),
            _ => Ok(()),
        }
    }
}

pub fn write(kind: &str, fields: &[(&str, String)], values: &[Fe]) -> String {
    let mut out = format!("# agfft {kind}");
    for (k, v) in fields {
        out.push_str(&format!(" {k}={v}"));
    }
    out.push('\n');
    for v in values {
        out.push_str(&v.value().to_string());
        out.push('\n');
    }
    out
}

/// Parses exactly `count` values below `q`.
pub fn read(text: &str, count: usize, q: u64) -> Result<(Option<Header>, Vec<Fe>)> {
    let mut header = None;
    let mut values = Vec::with_capacity(count);
    let mut last_line = 0;
    for (no, line) in text.lines().enumerate() {
        let lineno = no + 1;
        last_line = lineno;
        let t = line.trim();
        if let Some(rest) = t.strip_prefix('#') {
            let mut words = rest.split_whitespace();
            if values.is_empty() && header.is_none() && words.next() == Some("agfft") {
                let kind = words.next().unwrap_or_default().to_string();
                let fields = words
                    .filter_map(|w| w.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
                    .collect();
                header = Some(Header { kind, fields });
            }
            continue;
        }
        if t.is_empty() {
            continue;
        }
        let v: u64 = t.parse().map_err(|_| Error::Format(format!("line {lineno}: '{t}' is not an integer")))?;
        if v >= q {
            return Err(Error::Format(format!("line {lineno}: {v} is not below q = {q}")));
        }
        if values.len() == count {
            return Err(Error::Format(format!("line {lineno}: more than {count} values")));
        }
        values.push(Fe(v as u32));
    }
    if values.len() < count {
        return Err(Error::Format(format!(
            "line {}: expected {count} values, found {}",
            last_line + 1,
            values.len()
        )));
    }
    Ok((header, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_comments() {
        let text = write("message", &[("k", "3".into())], &[Fe(1), Fe(0), Fe(15)]);
        let (h, v) = read(&text, 3, 16).unwrap();
        assert_eq!(h.unwrap().get("k"), Some("3"));
        assert_eq!(v, vec![Fe(1), Fe(0), Fe(15)]);
        let (h, v) = read("# a note\n4\n\n  5\n", 2, 16).unwrap();
        assert!(h.is_none());
        assert_eq!(v, vec![Fe(4), Fe(5)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = read("1\n2\n", 3, 16).unwrap_err();
        assert_eq!(e, Error::Format("line 3: expected 3 values, found 2".into()));
        assert!(read("1\nx\n", 2, 16).unwrap_err().to_string().starts_with("line 2"));
        assert!(read("16\n", 1, 16).is_err());
        assert!(read("1\n2\n", 1, 16).is_err());
    }
}
