use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Counts at or below this are ignored.
const MIN_COUNT: u64 = 10;

/// Word → log10 of its corpus count.
#[derive(Clone, Debug, Default)]
pub struct FrequencyTable {
    log_counts: HashMap<String, f64>,
    pub malformed: usize,
}

impl FrequencyTable {
    /// Reads `count<TAB>word` rows; `#` lines are comments.
    pub fn load<R: BufRead>(reader: R, source_name: &str) -> Result<Self> {
        let mut t = FrequencyTable::default();
        for line in reader.lines() {
            let line = line.map_err(|e| Error::io(source_name, e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut f = line.split_whitespace();
            let (Some(count), Some(word), None) = (f.next(), f.next(), f.next()) else {
                t.malformed += 1;
                continue;
            };
            let Ok(count) = count.parse::<u64>() else {
                t.malformed += 1;
                continue;
            };
            if count <= MIN_COUNT {
                continue;
            }
            let v = (count as f64).log10();
            let slot = t.log_counts.entry(word.to_lowercase()).or_insert(v);
            *slot = slot.max(v);
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.log_counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_counts.is_empty()
    }

    pub fn log_count(&self, word: &str) -> Option<f64> {
        self.log_counts.get(&word.to_lowercase()).copied()
    }

    /// Position on the [1, 7] frequency axis; unknown words sit at 1.
    pub fn position(&self, word: &str) -> f64 {
        self.log_count(word).unwrap_or(1.0).clamp(1.0, 7.0)
    }
}
