use std::fmt::Display;

use clap::ValueEnum;
use ncphase::phase::fmt_complex;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// `key = value` lines.
    Structured,
    /// Aligned `key: value` lines.
    Human,
}

/// Ordered key/value report. The header echoes the resolved configuration.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
    failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn config(&mut self, key: &str, value: impl Display) {
        self.push(format!("config.{key}"), value);
    }

    pub fn complex(&mut self, key: impl Into<String>, z: Complex64) {
        self.push(key, fmt_complex(z));
    }

    pub fn sci(&mut self, key: impl Into<String>, x: f64) {
        self.push(key, format!("{x:.6e}"));
    }

    /// Record a check; any failing check makes the run exit with status 1.
    pub fn check(&mut self, key: impl Into<String>, ok: bool) {
        self.push(key, if ok { "pass" } else { "fail" });
        self.failed |= !ok;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        match format {
            OutputFormat::Structured => {
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k} = {v}\n"));
                }
            }
            OutputFormat::Human => {
                let w = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    out.push_str(&format!("{k:<w$}  {v}\n", k = format!("{k}:")));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::new("star");
        r.config("theta", 0.5);
        r.complex("value", Complex64::new(0.0, 0.5));
        assert_eq!(
            r.render(OutputFormat::Structured),
            "command = star\nconfig.theta = 0.5\nvalue = 0+0.5i\n"
        );
        let human = r.render(OutputFormat::Human);
        assert!(human.starts_with("command:      star\n"), "{human}");
        assert!(!r.failed());
        r.check("x", false);
        assert!(r.failed());
    }
}
