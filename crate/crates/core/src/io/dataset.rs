//! Private-university openings and public-university strike durations per
//! two-year period, 1999–2022.
//!
//! The bundled CSV reproduces the source rows verbatim. Its printed
//! totals row reads 111 universities and 1,323 strike days; the rows
//! themselves sum to 111 and 1,533 (1,323 is the sum over the first eleven
//! periods). [`load_table1`] checks against the printed totals and therefore
//! reports the discrepancy.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TABLE1_HEADER: [&str; 5] = [
    "period",
    "start_year",
    "end_year",
    "private_universities",
    "strike_days",
];

/// Number of periods in the table.
pub const TABLE1_PERIODS: usize = 12;

/// Totals as printed beneath the table.
pub const TABLE1_PRINTED_TOTALS: Totals = Totals {
    private_universities: 111,
    strike_days: 1323,
};

/// The bundled dataset.
pub const BUNDLED_TABLE1: &str = include_str!("../../data/table1.csv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrikeRecord {
    pub period_label: String,
    pub start_year: i32,
    pub end_year: i32,
    pub private_universities: u32,
    pub strike_days: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub private_universities: u32,
    pub strike_days: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("bad header: expected `{expected}`, got `{0}`", expected = TABLE1_HEADER.join(","))]
    Header(String),
    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },
    #[error("no records")]
    Empty,
    #[error("expected {expected} records, found {found}")]
    RecordCount { expected: usize, found: usize },
    #[error(
        "totals mismatch: rows sum to {} private universities and {} strike days, \
         expected {} and {}",
        .computed.private_universities, .computed.strike_days,
        .expected.private_universities, .expected.strike_days
    )]
    TotalsMismatch { computed: Totals, expected: Totals },
}

/// Parses any number of strike records under the standard header.
pub fn parse_strike_records(csv_text: &str) -> Result<Vec<StrikeRecord>, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes());

    let header = reader
        .headers()
        .map_err(|e| DatasetError::Header(e.to_string()))?
        .clone();
    if header.iter().ne(TABLE1_HEADER) {
        return Err(DatasetError::Header(
            header.iter().collect::<Vec<_>>().join(","),
        ));
    }

    let mut records = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        // Data rows are numbered from 1; the header is row 0.
        let row_no = idx + 1;
        let malformed = |message: String| DatasetError::MalformedRow {
            row: row_no,
            message,
        };
        let row = row.map_err(|e| malformed(e.to_string()))?;
        if row.len() != TABLE1_HEADER.len() {
            return Err(malformed(format!("expected 5 fields, found {}", row.len())));
        }
        let field = |i: usize| &row[i];
        let int = |i: usize| -> Result<i64, DatasetError> {
            field(i).parse::<i64>().map_err(|_| {
                malformed(format!(
                    "`{}` is not an integer: `{}`",
                    TABLE1_HEADER[i],
                    field(i)
                ))
            })
        };
        let count = |i: usize| -> Result<u32, DatasetError> {
            u32::try_from(int(i)?).map_err(|_| {
                malformed(format!(
                    "`{}` must be a nonnegative count",
                    TABLE1_HEADER[i]
                ))
            })
        };
        let year = |i: usize| -> Result<i32, DatasetError> {
            i32::try_from(int(i)?)
                .map_err(|_| malformed(format!("`{}` out of range", TABLE1_HEADER[i])))
        };
        let record = StrikeRecord {
            period_label: field(0).to_string(),
            start_year: year(1)?,
            end_year: year(2)?,
            private_universities: count(3)?,
            strike_days: count(4)?,
        };
        if record.start_year > record.end_year {
            return Err(malformed(format!(
                "start_year {} is after end_year {}",
                record.start_year, record.end_year
            )));
        }
        records.push(record);
    }
    if records.is_empty() {
        return Err(DatasetError::Empty);
    }
    Ok(records)
}

pub fn totals(records: &[StrikeRecord]) -> Totals {
    Totals {
        private_universities: records.iter().map(|r| r.private_universities).sum(),
        strike_days: records.iter().map(|r| r.strike_days).sum(),
    }
}

/// Parses the full table and checks the record count and printed totals.
pub fn load_table1(csv_text: &str) -> Result<Vec<StrikeRecord>, DatasetError> {
    let records = parse_strike_records(csv_text)?;
    if records.len() != TABLE1_PERIODS {
        return Err(DatasetError::RecordCount {
            expected: TABLE1_PERIODS,
            found: records.len(),
        });
    }
    let computed = totals(&records);
    if computed != TABLE1_PRINTED_TOTALS {
        return Err(DatasetError::TotalsMismatch {
            computed,
            expected: TABLE1_PRINTED_TOTALS,
        });
    }
    Ok(records)
}
