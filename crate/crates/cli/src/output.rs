//! Deterministic serialization: every float carries 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Compact JSON with floats written as `d.dddddddddddddddde±x`.
struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// A float cell in the same format as the JSON output.
pub fn num(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        value.to_string()
    }
}

pub fn opt(value: Option<f64>) -> String {
    value.map(num).unwrap_or_default()
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory csv");
    for row in rows {
        writer.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("csv emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_with_17_digits() {
        for x in [0.1, -2.25, 1.0 / 3.0, 6.02214076e23, 5e-324, f64::MAX] {
            let text = json(&x);
            assert_eq!(text.parse::<f64>().unwrap(), x, "{text}");
            let back: f64 = serde_json::from_str(&text).unwrap();
            assert_eq!(back, x);
        }
        assert_eq!(json(&1.0), "1.0000000000000000e0");
        assert_eq!(json(&f64::NAN), "null");
    }

    #[test]
    fn csv_quotes_when_needed() {
        let out = csv(&["a", "b"], &[vec!["1".into(), "x,y".into()]]);
        assert_eq!(out, "a,b\n1,\"x,y\"\n");
    }
}
