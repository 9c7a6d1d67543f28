// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Output buffer. File contents go out verbatim; report lines are `key
//! value` records, commented out in human mode whenever a file shares
//! stdout so that the output still parses.

use std::fmt::Display;

pub struct Report {
    porcelain: bool,
    has_artifact: bool,
    lines: Vec<Line>,
}

enum Line {
    Artifact(String),
    Record(String),
    /// Human-mode text that replaces the records that follow it.
    Summary(String, Vec<String>),
}

impl Report {
    pub fn new(porcelain: bool) -> Self {
        Report {
            porcelain,
            has_artifact: false,
            lines: Vec::new(),
        }
    }

    pub fn artifact(&mut self, text: &str) {
        self.has_artifact = true;
        self.lines.push(Line::Artifact(text.to_string()));
    }

    pub fn line(&mut self, text: &str) {
        self.lines.push(Line::Record(text.to_string()));
    }

    pub fn record(&mut self, key: &str, value: impl Display) {
        self.line(&format!("{key} {value}"));
    }

    /// Space-separated values, `-` when empty.
    pub fn list<T: Display>(&mut self, key: &str, items: impl IntoIterator<Item = T>) {
        let items: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
        let value = if items.is_empty() { "-".to_string() } else { items.join(" ") };
        self.record(key, value);
    }

    /// A bare answer in human mode, `key answer` in porcelain mode.
    pub fn answer(&mut self, key: &str, answer: impl Display) {
        self.summary(&answer.to_string(), &[(key, answer.to_string())]);
    }

    pub fn summary(&mut self, human: &str, records: &[(&str, String)]) {
        let records = records.iter().map(|(k, v)| format!("{k} {v}")).collect();
        self.lines.push(Line::Summary(human.to_string(), records));
    }

    pub fn finish(self) -> String {
        let comment = !self.porcelain && self.has_artifact;
        let mut out = String::new();
        let mut push = |s: &str, is_record: bool| {
            if is_record && comment {
                out.push_str("# ");
            }
            out.push_str(s);
            out.push('\n');
        };
        for line in &self.lines {
            match line {
                Line::Artifact(text) => {
                    for l in text.lines() {
                        push(l, false);
                    }
                }
                Line::Record(r) => push(r, true),
                Line::Summary(human, records) => {
                    if self.porcelain {
                        for r in records {
                            push(r, true);
                        }
                    } else {
                        push(human, true);
                    }
                }
            }
        }
        out
    }
}
