//! Line-oriented `key: value` text, versioned by its first line.

use std::fmt::Display;

pub const FORMAT_VERSION: u32 = 1;

pub struct Summary {
    lines: Vec<String>,
}

impl Summary {
    pub fn new(command: &str) -> Self {
        Summary {
            lines: vec![format!("format: {FORMAT_VERSION}"), format!("command: {command}")],
        }
    }

    pub fn kv(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    pub fn finish(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}
