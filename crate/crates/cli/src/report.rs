//! Report documents and their JSON and text encodings.
//!
//! JSON floats are written with 17 significant digits (`{:.16e}`), which is
//! enough for every `f64` to parse back to the identical value.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use sha2::{Digest, Sha256};
use std::io;

pub const TOOL: &str = "synergy";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument<T> {
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    /// `sha256:<hex>` of the input file, or of the canonical argument string
    /// for commands without an input file.
    pub input_digest: String,
    pub report: T,
}

impl<T> ReportDocument<T> {
    pub fn new(command: &str, input: &[u8], report: T) -> Self {
        Self {
            tool: TOOL.to_owned(),
            tool_version: TOOL_VERSION.to_owned(),
            command: command.to_owned(),
            input_digest: digest(input),
            report,
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut s = String::with_capacity(7 + 64);
    s.push_str("sha256:");
    for b in hash {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Pretty JSON with 17-significant-digit floats.
struct SigDigits(PrettyFormatter<'static>);

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("reports serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

/// Whether text output may use ANSI styling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub const PLAIN: Style = Style { color: false };

    pub fn verdict(&self, text: &str, good: bool) -> String {
        if !self.color {
            return text.to_owned();
        }
        let code = if good { "32" } else { "31" };
        format!("\x1b[1;{code}m{text}\x1b[0m")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Sample {
        x: f64,
        y: Vec<f64>,
        n: u64,
    }

    #[test]
    fn floats_use_seventeen_significant_digits() {
        let json = to_json(&Sample {
            x: 0.1,
            y: vec![-0.125, 1.0],
            n: 7,
        });
        assert!(json.contains("\"x\": 1.0000000000000001e-1"), "{json}");
        assert!(json.contains("-1.2500000000000000e-1"), "{json}");
        assert!(json.contains("\"n\": 7"), "{json}");
    }

    #[test]
    fn document_round_trips() {
        let doc = ReportDocument::new(
            "test",
            b"abc",
            Sample {
                x: 1.0 / 3.0,
                y: vec![f64::MIN_POSITIVE, 2.0f64.sqrt(), -0.0],
                n: u64::MAX,
            },
        );
        let back: ReportDocument<Sample> = from_json(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
        assert_eq!(
            doc.input_digest,
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
