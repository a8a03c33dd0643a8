use std::fmt::{self, Display};

/// Ordered `key value` lines. Keys never contain whitespace; values are
/// printed verbatim on one line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        let key = key.into();
        debug_assert!(!key.contains(char::is_whitespace));
        self.entries.push((key, value.to_string().replace('\n', " ")));
        self
    }

    /// Pushes a space-separated list.
    pub fn push_list<T: Display>(&mut self, key: impl Into<String>, items: impl IntoIterator<Item = T>) -> &mut Self {
        let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
        self.push(key, if v.is_empty() { "-".to_string() } else { v.join(" ") })
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Parses rendered output back into entries.
    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .filter(|l| !l.is_empty())
            .map(|l| {
                let (k, v) = l.split_once(' ').unwrap_or((l, ""));
                (k.to_string(), v.to_string())
            })
            .collect();
        Report { entries }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} {v}")?;
        }
        Ok(())
    }
}
