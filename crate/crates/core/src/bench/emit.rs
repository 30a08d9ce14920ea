use std::io::Write;

use serde::{Deserialize, Serialize};

use super::TableRow;
use crate::{Error, Result};

pub const TABLE_HEADER: &str = "n,mean_d1,mean_d2,mean_di,pct_model1,pct_indecisive,pct_model2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

/// `x` with six significant digits: positional notation for moderate
/// magnitudes, scientific otherwise.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.5e}", x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if !(-5..=15).contains(&exp) {
        return sci;
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

pub fn round_sig6(x: f64) -> f64 {
    format_sig6(x).parse().unwrap_or(x)
}

fn rounded(row: &TableRow) -> TableRow {
    TableRow {
        n: row.n,
        mean_d1: round_sig6(row.mean_d1),
        mean_d2: round_sig6(row.mean_d2),
        mean_di: round_sig6(row.mean_di),
        pct_model1: round_sig6(row.pct_model1),
        pct_indecisive: round_sig6(row.pct_indecisive),
        pct_model2: round_sig6(row.pct_model2),
    }
}

/// Serialises table rows; CSV header is [`TABLE_HEADER`], JSON an array of
/// row objects.
pub fn emit_table(rows: &[TableRow], format: TableFormat) -> Result<Vec<u8>> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut out = Vec::new();
    match format {
        TableFormat::Csv => {
            writeln!(out, "{TABLE_HEADER}").expect("write to Vec");
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.n,
                    format_sig6(r.mean_d1),
                    format_sig6(r.mean_d2),
                    format_sig6(r.mean_di),
                    format_sig6(r.pct_model1),
                    format_sig6(r.pct_indecisive),
                    format_sig6(r.pct_model2),
                )
                .expect("write to Vec");
            }
        }
        TableFormat::Json => {
            let rows: Vec<TableRow> = rows.iter().map(rounded).collect();
            serde_json::to_writer_pretty(&mut out, &rows).map_err(|e| Error::Serialization(e.to_string()))?;
            out.push(b'\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row() -> TableRow {
        TableRow {
            n: 2000,
            mean_d1: 0.006_123_456_7,
            mean_d2: 0.104_000_01,
            mean_di: -0.097_876_543,
            pct_model1: 100.0,
            pct_indecisive: 0.0,
            pct_model2: 8.4,
        }
    }

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(0.0061234567), "0.00612346");
        assert_eq!(format_sig6(100.0), "100.000");
        assert_eq!(format_sig6(8.4), "8.40000");
        assert_eq!(format_sig6(-0.138), "-0.138000");
        assert_eq!(format_sig6(9.999999), "10.0000");
        assert_eq!(format_sig6(1.5e-9), "1.50000e-9");
    }

    #[test]
    fn csv_has_header_and_row() {
        let out = String::from_utf8(emit_table(&[row()], TableFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], TABLE_HEADER);
        assert_eq!(lines[1], "2000,0.00612346,0.104000,-0.0978765,100.000,0,8.40000");
    }

    #[test]
    fn empty_rows_rejected() {
        assert_eq!(emit_table(&[], TableFormat::Csv), Err(Error::EmptyRows));
        assert_eq!(emit_table(&[], TableFormat::Json), Err(Error::EmptyRows));
    }

    proptest! {
        #[test]
        fn json_round_trips_to_rounded_rows(
            vals in prop::collection::vec(-1e3f64..1e3, 6),
            n in 2usize..100_000,
        ) {
            let r = TableRow {
                n, mean_d1: vals[0], mean_d2: vals[1], mean_di: vals[2],
                pct_model1: vals[3].abs() / 10.0, pct_indecisive: vals[4].abs() / 10.0, pct_model2: vals[5].abs() / 10.0,
            };
            let out = emit_table(&[r, r], TableFormat::Json).unwrap();
            let back: Vec<TableRow> = serde_json::from_slice(&out).unwrap();
            prop_assert_eq!(back, vec![rounded(&r), rounded(&r)]);
        }

        #[test]
        fn sig6_is_close(x in -1e6f64..1e6) {
            let y = round_sig6(x);
            prop_assert!((y - x).abs() <= 5e-6 * x.abs() + 1e-300);
        }
    }
}
