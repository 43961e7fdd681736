use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use crate::CliError;

/// A numeric CSV table with a leading `# params:` comment line.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub params: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(params: Vec<(String, String)>, header: Vec<String>) -> Self {
        Table {
            params,
            header,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, idx: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[idx]).collect()
    }

    /// Values are written with `f64`'s shortest round-trip formatting, so
    /// parsing the file back recovers the library results bit for bit.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# params:");
        for (k, v) in &self.params {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path, force: bool) -> Result<(), CliError> {
        let mut opts = OpenOptions::new();
        opts.write(true);
        if force {
            opts.create(true).truncate(true);
        } else {
            opts.create_new(true);
        }
        let mut file = opts.open(path).map_err(|e| {
            if e.kind() == std::io::ErrorKind::AlreadyExists {
                CliError::Invalid(format!(
                    "{} exists; pass --force to overwrite",
                    path.display()
                ))
            } else {
                CliError::Io(e)
            }
        })?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    /// Parses the format produced by [`Table::to_csv`].
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines();
        let params_line = lines
            .next()
            .and_then(|l| l.strip_prefix("# params:"))
            .ok_or_else(|| CliError::Invalid("missing `# params:` line".into()))?;
        let params = params_line
            .split_whitespace()
            .filter_map(|kv| {
                kv.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
            })
            .collect();
        let header = lines
            .next()
            .ok_or_else(|| CliError::Invalid("missing header".into()))?
            .split(',')
            .map(str::to_string)
            .collect();
        let rows = lines
            .map(|l| {
                l.split(',')
                    .map(|v| {
                        v.parse::<f64>()
                            .map_err(|e| CliError::Invalid(format!("bad value {v:?}: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(Table {
            params,
            header,
            rows,
        })
    }
}
