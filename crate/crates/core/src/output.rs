//! Flat-file formats for search results.
//!
//! JSONL files start with one `#`-prefixed metadata line followed by one
//! witness object per line. Data lines carry no timestamps, so identical
//! runs produce identical bytes.

use std::fmt::Display;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::classifier::SplitWitness;
use crate::numeric::Natural;
use crate::serial::decimal_opt;

pub const HEADER_PREFIX: char = '#';

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHeader {
    pub kind: String,
    pub version: String,
    pub z_max: String,
    #[serde(with = "decimal_opt")]
    pub zeros_filter: Option<u32>,
}

impl SearchHeader {
    pub fn new(z_max: u64, zeros_filter: Option<u32>) -> Self {
        SearchHeader {
            kind: "split-square-search".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            z_max: z_max.to_string(),
            zeros_filter,
        }
    }
}

pub struct JsonlWriter<W: Write> {
    inner: W,
}

impl<W: Write> JsonlWriter<W> {
    pub fn new(inner: W) -> Self {
        JsonlWriter { inner }
    }

    pub fn with_header(mut inner: W, header: &SearchHeader) -> io::Result<Self> {
        writeln!(inner, "{HEADER_PREFIX}{}", serde_json::to_string(header)?)?;
        Ok(JsonlWriter { inner })
    }

    pub fn write<R: Serialize>(&mut self, record: &R) -> io::Result<()> {
        serde_json::to_writer(&mut self.inner, record)?;
        self.inner.write_all(b"\n")
    }

    pub fn write_all<'a, T: Display + 'a>(
        &mut self,
        batch: impl IntoIterator<Item = &'a SplitWitness<T>>,
    ) -> io::Result<()> {
        for w in batch {
            self.write(w)?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }

    pub fn into_inner(self) -> W {
        self.inner
    }
}

/// CSV with columns `total,left_square,zeros_between,right_square`.
pub struct CsvWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(inner: W) -> io::Result<Self> {
        let mut inner = csv::Writer::from_writer(inner);
        inner.write_record(["total", "left_square", "zeros_between", "right_square"])?;
        Ok(CsvWriter { inner })
    }

    pub fn write<T: Display>(&mut self, w: &SplitWitness<T>) -> io::Result<()> {
        self.inner.write_record([
            w.total.to_string(),
            w.left_square.to_string(),
            w.zeros_between.to_string(),
            w.right_square.to_string(),
        ])?;
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// One non-metadata line of a witness JSONL file.
#[derive(Debug)]
pub struct WitnessLine<T> {
    /// 1-based.
    pub line: usize,
    pub witness: Result<SplitWitness<T>, serde_json::Error>,
}

/// Reads witness lines, skipping blank lines and the metadata header.
pub fn read_witness_lines<T: Natural, R: BufRead>(
    reader: R,
) -> impl Iterator<Item = io::Result<WitnessLine<T>>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(e)),
            Ok(l) if l.trim().is_empty() || l.starts_with(HEADER_PREFIX) => None,
            Ok(l) => Some(Ok(WitnessLine {
                line: i + 1,
                witness: serde_json::from_str(&l),
            })),
        })
}
