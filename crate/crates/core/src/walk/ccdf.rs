use std::io::Write;

use super::WalkRecord;
use crate::error::{Error, Result};

/// Empirical `P(L >= l)` over pooled segment lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct CcdfTable {
    /// Distinct lengths, ascending.
    pub lengths: Vec<u64>,
    pub values: Vec<f64>,
    pub sample_size: usize,
}

pub fn ccdf(records: &[WalkRecord]) -> Result<CcdfTable> {
    CcdfTable::from_lengths(records.iter().flat_map(|r| r.segment_lengths.iter().copied()))
}

impl CcdfTable {
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Result<CcdfTable> {
        let mut all: Vec<u64> = lengths.into_iter().collect();
        if all.is_empty() {
            return Err(Error::EmptyPool);
        }
        all.sort_unstable();
        let total = all.len();
        let mut table = CcdfTable {
            lengths: Vec::new(),
            values: Vec::new(),
            sample_size: total,
        };
        let mut i = 0;
        while i < total {
            let l = all[i];
            table.lengths.push(l);
            table.values.push((total - i) as f64 / total as f64);
            while i < total && all[i] == l {
                i += 1;
            }
        }
        Ok(table)
    }

    /// `P(L >= l)`.
    pub fn at(&self, l: u64) -> f64 {
        match self.lengths.binary_search(&l) {
            Ok(i) => self.values[i],
            Err(i) if i < self.lengths.len() => self.values[i],
            Err(_) => 0.0,
        }
    }

    /// Two-sample Kolmogorov-Smirnov statistic between the pooled samples.
    pub fn ks_statistic(&self, other: &CcdfTable) -> f64 {
        let mut points: Vec<u64> = self.lengths.iter().chain(&other.lengths).copied().collect();
        points.sort_unstable();
        points.dedup();
        points
            .iter()
            .map(|&l| (self.at(l) - other.at(l)).abs())
            .fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        // E[L] = Σ_l P(L >= l) over integer l >= 1.
        let mut sum = 0.0;
        let mut prev = 0u64;
        for (&l, &v) in self.lengths.iter().zip(&self.values) {
            sum += (l - prev) as f64 * v;
            prev = l;
        }
        sum
    }

    /// `length<TAB>ccdf` rows with a header.
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "length\tccdf")?;
        for (l, v) in self.lengths.iter().zip(&self.values) {
            writeln!(out, "{l}\t{v}")?;
        }
        out.flush()?;
        Ok(())
    }
}
