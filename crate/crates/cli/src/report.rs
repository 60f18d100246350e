//! Command output: `# `-prefixed human lines interleaved with `key=value`
//! machine lines. Keys never contain `=`, values never contain newlines.

use std::fmt::{self, Display};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Line {
    Human(String),
    Field(String, String),
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    lines: Vec<Line>,
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn human(&mut self, text: impl AsRef<str>) {
        self.lines.push(Line::Human(one_line(text.as_ref())));
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) {
        let key = key.into();
        debug_assert!(!key.contains('=') && !key.contains(char::is_whitespace));
        self.lines.push(Line::Field(key, one_line(&value.to_string())));
    }

    /// Machine lines only, in order.
    #[cfg(test)]
    pub fn fields(&self) -> Vec<(&str, &str)> {
        self.lines
            .iter()
            .filter_map(|l| match l {
                Line::Field(k, v) => Some((k.as_str(), v.as_str())),
                Line::Human(_) => None,
            })
            .collect()
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            match l {
                Line::Human(t) => writeln!(f, "# {t}")?,
                Line::Field(k, v) => writeln!(f, "{k}={v}")?,
            }
        }
        Ok(())
    }
}

/// Parses machine lines back, skipping comments and blank lines.
#[cfg(test)]
pub fn parse_fields(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_round_trip() {
        let mut r = Report::new();
        r.human("summary\nwith newline");
        r.field("acm", true);
        r.field("witness.1", "x0 + 3*y1 = 0?");
        let text = r.to_string();
        assert!(text.starts_with("# summary with newline\n"));
        let parsed = parse_fields(&text);
        let expected: Vec<(String, String)> =
            r.fields().iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        assert_eq!(parsed, expected);
    }
}
