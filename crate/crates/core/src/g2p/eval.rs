use std::fmt;

use super::GraphoneTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Exact,
    /// One phone substituted.
    OneOff,
    /// One phone missing from the prediction.
    Missing,
    /// One extra phone in the prediction.
    Extra,
    Incorrect,
}

fn one_deletion<T: PartialEq>(long: &[T], short: &[T]) -> bool {
    if long.len() != short.len() + 1 {
        return false;
    }
    let i = long
        .iter()
        .zip(short)
        .position(|(a, b)| a != b)
        .unwrap_or(short.len());
    long[i + 1..] == short[i..]
}

pub fn classify<T: PartialEq>(gold: &[T], pred: &[T]) -> Outcome {
    if gold == pred {
        Outcome::Exact
    } else if gold.len() == pred.len()
        && gold.iter().zip(pred).filter(|(a, b)| a != b).count() == 1
    {
        Outcome::OneOff
    } else if one_deletion(gold, pred) {
        Outcome::Missing
    } else if one_deletion(pred, gold) {
        Outcome::Extra
    } else {
        Outcome::Incorrect
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Accuracy {
    pub total: usize,
    pub exact: usize,
    pub one_off: usize,
    pub missing: usize,
    pub extra: usize,
    pub incorrect: usize,
}

impl Accuracy {
    pub fn add(&mut self, o: Outcome) {
        self.total += 1;
        match o {
            Outcome::Exact => self.exact += 1,
            Outcome::OneOff => self.one_off += 1,
            Outcome::Missing => self.missing += 1,
            Outcome::Extra => self.extra += 1,
            Outcome::Incorrect => self.incorrect += 1,
        }
    }

    pub fn pct(&self, n: usize) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * n as f64 / self.total as f64
        }
    }

    pub fn minor(&self) -> usize {
        self.one_off + self.missing + self.extra
    }
}

impl fmt::Display for Accuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("Exact", self.exact),
            ("One-off", self.one_off),
            ("Missing", self.missing),
            ("Extra", self.extra),
            ("Incorrect", self.incorrect),
            ("Total", self.total),
        ];
        writeln!(f, "category\twords\tpercent")?;
        for (name, n) in rows {
            writeln!(f, "{name}\t{n}\t{:.2}", self.pct(n))?;
        }
        Ok(())
    }
}

/// Decodes every word and compares against its reference pronunciation.
pub fn evaluate<S: AsRef<str>>(table: &GraphoneTable, words: &[(String, Vec<S>)]) -> Accuracy {
    let mut acc = Accuracy::default();
    for (word, gold) in words {
        let pred = table.decode(word).phonemes;
        let gold: Vec<&str> = gold.iter().map(|s| s.as_ref()).collect();
        let pred: Vec<&str> = pred.iter().map(String::as_str).collect();
        acc.add(classify(&gold, &pred));
    }
    acc
}
