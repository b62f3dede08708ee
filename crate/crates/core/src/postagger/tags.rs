//! The reduced tagset and the CLAWS7 / Brown conversion tables.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Noun,
    Plural,
    NounPhrase,
    Verb,
    Adjective,
    Adverb,
    Conjunction,
    Preposition,
    Interjection,
    Pronoun,
    Article,
    Unknown,
}

impl Tag {
    /// Tags the trigram model is built over (no noun phrase, no unknown).
    pub const MODEL: [Tag; 10] = [
        Tag::Noun,
        Tag::Plural,
        Tag::Verb,
        Tag::Adjective,
        Tag::Adverb,
        Tag::Conjunction,
        Tag::Preposition,
        Tag::Interjection,
        Tag::Pronoun,
        Tag::Article,
    ];

    /// Candidates for a word missing from the part-of-speech lexicon.
    pub const OPEN: [Tag; 6] = [
        Tag::Noun,
        Tag::Plural,
        Tag::Verb,
        Tag::Adjective,
        Tag::Adverb,
        Tag::Interjection,
    ];

    pub fn code(self) -> char {
        match self {
            Tag::Noun => 'N',
            Tag::Plural => 'p',
            Tag::NounPhrase => 'h',
            Tag::Verb => 'V',
            Tag::Adjective => 'A',
            Tag::Adverb => 'v',
            Tag::Conjunction => 'C',
            Tag::Preposition => 'P',
            Tag::Interjection => '!',
            Tag::Pronoun => 'r',
            Tag::Article => 'D',
            Tag::Unknown => '?',
        }
    }

    pub fn from_code(c: char) -> Option<Tag> {
        Some(match c {
            'N' => Tag::Noun,
            'p' => Tag::Plural,
            'h' => Tag::NounPhrase,
            'V' => Tag::Verb,
            'A' => Tag::Adjective,
            'v' => Tag::Adverb,
            'C' => Tag::Conjunction,
            'P' => Tag::Preposition,
            '!' => Tag::Interjection,
            'r' => Tag::Pronoun,
            'D' => Tag::Article,
            '?' => Tag::Unknown,
            _ => return None,
        })
    }

    /// Position in [`Tag::MODEL`], if the tag takes part in the model.
    pub fn model_index(self) -> Option<usize> {
        Tag::MODEL.iter().position(|&t| t == self)
    }

    /// Maps a lexicon code onto the reduced set: transitive, intransitive and
    /// participle verbs collapse to V, nominative to N and the indefinite
    /// article to D. Noun-phrase codes yield `None`.
    pub fn from_mpos_code(c: char) -> Option<Tag> {
        match c {
            't' | 'i' => Some(Tag::Verb),
            'o' => Some(Tag::Noun),
            'I' => Some(Tag::Article),
            'h' => None,
            other => Tag::from_code(other).filter(|t| *t != Tag::Unknown),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl Serialize for Tag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Tag, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                Tag::from_code(c).ok_or_else(|| serde::de::Error::custom(format!("bad tag {s:?}")))
            }
            _ => Err(serde::de::Error::custom(format!("bad tag {s:?}"))),
        }
    }
}

/// Reduces a CLAWS7 tag (any case). Unknown tags map to `Tag::Unknown`.
pub fn reduce_claws7(tag: &str) -> Tag {
    lookup(CLAWS7, tag)
}

/// Reduces a Brown corpus tag. Negated (`DOD*`), contracted (`PPS+BEZ`) and
/// hyphenated (`NN-TL`) forms fall back to their leading component; unknown
/// tags map to `Tag::Unknown`.
pub fn reduce_brown(tag: &str) -> Tag {
    let tag = tag.trim();
    if let Some(t) = find(BROWN, tag) {
        return t;
    }
    let head = tag
        .split(['-', '+'])
        .next()
        .unwrap_or("")
        .trim_end_matches('*');
    lookup(BROWN, head)
}

fn find(table: &[(&str, char)], tag: &str) -> Option<Tag> {
    let upper = tag.trim().to_ascii_uppercase();
    table
        .iter()
        .find(|(t, _)| *t == upper)
        .and_then(|(_, c)| Tag::from_code(*c))
}

fn lookup(table: &[(&str, char)], tag: &str) -> Tag {
    find(table, tag).unwrap_or_else(|| {
        log::debug!("unmapped tag {tag:?}");
        Tag::Unknown
    })
}

const CLAWS7: &[(&str, char)] = &[
    ("APPGE", 'D'),
    ("AT", 'D'),
    ("AT1", 'D'),
    ("BCL", '?'),
    ("CC", 'C'),
    ("CCB", 'C'),
    ("CS", 'C'),
    ("CSA", 'C'),
    ("CSN", 'C'),
    ("CST", 'C'),
    ("CSW", 'C'),
    ("DA", 'D'),
    ("DA1", 'D'),
    ("DA2", 'D'),
    ("DAR", 'D'),
    ("DAT", 'D'),
    ("DB", 'D'),
    ("DB2", 'D'),
    ("DD", 'D'),
    ("DD1", 'D'),
    ("DD2", 'D'),
    ("DDQ", 'D'),
    ("DDQGE", 'D'),
    ("DDQV", 'D'),
    ("EX", 'N'),
    ("FO", '?'),
    ("FU", '?'),
    ("FW", '?'),
    ("GE", '?'),
    ("IF", 'P'),
    ("II", 'P'),
    ("IO", 'P'),
    ("IW", 'P'),
    ("JJ", 'A'),
    ("JJR", 'A'),
    ("JJT", 'A'),
    ("JK", 'A'),
    ("MC", 'N'),
    ("MC1", 'N'),
    ("MC2", 'p'),
    ("MCGE", 'N'),
    ("MCMC", 'N'),
    ("MD", 'A'),
    ("MF", 'A'),
    ("ND1", 'A'),
    ("NN", 'N'),
    ("NN1", 'N'),
    ("NN2", 'p'),
    ("NNA", 'A'),
    ("NNB", 'A'),
    ("NNL1", 'N'),
    ("NNL2", 'p'),
    ("NNO", 'N'),
    ("NNO2", 'p'),
    ("NNT1", 'N'),
    ("NNT2", 'p'),
    ("NNU", 'A'),
    ("NNU1", 'N'),
    ("NNU2", 'p'),
    ("NP", 'N'),
    ("NP1", 'N'),
    ("NP2", 'p'),
    ("NPD1", 'N'),
    ("NPD2", 'p'),
    ("NPM1", 'N'),
    ("NPM2", 'p'),
    ("PN", 'r'),
    ("PN1", 'r'),
    ("PNQO", 'r'),
    ("PNQS", 'r'),
    ("PNQV", 'r'),
    ("PNX1", 'r'),
    ("PPGE", 'r'),
    ("PPH1", 'r'),
    ("PPHO1", 'r'),
    ("PPHO2", 'r'),
    ("PPHS1", 'r'),
    ("PPHS2", 'r'),
    ("PPIO1", 'r'),
    ("PPIO2", 'r'),
    ("PPIS1", 'r'),
    ("PPIS2", 'r'),
    ("PPX1", 'r'),
    ("PPX2", 'r'),
    ("PPY", 'r'),
    ("RA", 'v'),
    ("REX", 'v'),
    ("RG", 'v'),
    ("RGQ", 'v'),
    ("RGQV", 'v'),
    ("RGR", 'v'),
    ("RGT", 'v'),
    ("RL", 'v'),
    ("RP", 'v'),
    ("RPK", 'v'),
    ("RR", 'v'),
    ("RRQ", 'v'),
    ("RRQV", 'v'),
    ("RRR", 'v'),
    ("RRT", 'v'),
    ("RT", 'v'),
    ("TO", 'v'),
    ("UH", '!'),
    ("VB0", 'V'),
    ("VBDR", 'V'),
    ("VBDZ", 'V'),
    ("VBG", 'V'),
    ("VBI", 'V'),
    ("VBM", 'V'),
    ("VBN", 'V'),
    ("VBR", 'V'),
    ("VBZ", 'V'),
    ("VD0", 'V'),
    ("VDD", 'V'),
    ("VDG", 'V'),
    ("VDI", 'V'),
    ("VDN", 'V'),
    ("VDZ", 'V'),
    ("VH0", 'V'),
    ("VHD", 'V'),
    ("VHG", 'V'),
    ("VHI", 'V'),
    ("VHN", 'V'),
    ("VHZ", 'V'),
    ("VM", 'V'),
    ("VMK", 'V'),
    ("VV0", 'V'),
    ("VVD", 'V'),
    ("VVG", 'V'),
    ("VVGK", 'V'),
    ("VVI", 'V'),
    ("VVN", 'V'),
    ("VVNK", 'V'),
    ("VVZ", 'V'),
    ("XX", 'v'),
    ("ZZ1", 'N'),
    ("ZZ2", 'p'),
];

const BROWN: &[(&str, char)] = &[
    ("ABL", 'N'),
    ("ABN", 'A'),
    ("ABX", 'A'),
    ("AP", 'A'),
    ("AT", 'D'),
    ("BE", 'C'),
    ("BED", 'C'),
    ("BEDZ", 'C'),
    ("BEG", 'C'),
    ("BEM", 'C'),
    ("BEN", 'C'),
    ("BER", 'C'),
    ("BEZ", 'C'),
    ("CC", 'C'),
    ("CD", 'N'),
    ("CS", 'C'),
    ("DO", 'V'),
    ("DOD", 'V'),
    ("DOZ", 'V'),
    ("DT", 'D'),
    ("DTI", 'D'),
    ("DTS", 'D'),
    ("DTX", 'C'),
    ("EX", 'N'),
    ("FW", 'N'),
    ("HV", 'A'),
    ("HVD", 'A'),
    ("HVG", 'A'),
    ("HVN", 'A'),
    ("IN", 'P'),
    ("JJ", 'A'),
    ("JJR", 'A'),
    ("JJS", 'A'),
    ("JJT", 'A'),
    ("MD", 'A'),
    ("NC", 'N'),
    ("NN", 'N'),
    ("NN$", 'N'),
    ("NNS", 'N'),
    ("NNS$", 'N'),
    ("NP", 'N'),
    ("NP$", 'N'),
    ("NPS", 'N'),
    ("NPS$", 'N'),
    ("NR", 'N'),
    ("OD", 'N'),
    ("PN", 'r'),
    ("PN$", 'r'),
    ("PP$", 'r'),
    ("PP$$", 'r'),
    ("PPL", 'r'),
    ("PPLS", 'r'),
    ("PPO", 'r'),
    ("PPS", 'r'),
    ("PPSS", 'r'),
    ("PRP", 'r'),
    ("PRP$", 'r'),
    ("QL", 'A'),
    ("QLP", 'A'),
    ("RB", 'v'),
    ("RBR", 'v'),
    ("RBT", 'v'),
    ("RN", 'v'),
    ("RP", 'v'),
    ("TO", 'v'),
    ("UH", '!'),
    ("VB", 'V'),
    ("VBD", 'V'),
    ("VBG", 'V'),
    ("VBN", 'V'),
    ("VBP", 'V'),
    ("VBZ", 'V'),
    ("WDT", 'D'),
    ("WP$", 'r'),
    ("WPO", 'r'),
    ("WPS", 'r'),
    ("WQL", 'v'),
    ("WRB", 'v'),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(CLAWS7.len(), 137);
        assert_eq!(BROWN.len(), 78);
    }

    #[test]
    fn claws7_examples() {
        assert_eq!(reduce_claws7("VVD"), Tag::Verb);
        assert_eq!(reduce_claws7("at1"), Tag::Article);
        assert_eq!(reduce_claws7("FW"), Tag::Unknown);
        assert_eq!(reduce_claws7("NOPE"), Tag::Unknown);
    }

    #[test]
    fn brown_examples() {
        assert_eq!(reduce_brown("JJR"), Tag::Adjective);
        assert_eq!(reduce_brown("PPO"), Tag::Pronoun);
        assert_eq!(reduce_brown("ZZZ"), Tag::Unknown);
        assert_eq!(reduce_brown("DOD*"), Tag::Verb);
        assert_eq!(reduce_brown("NN-TL"), Tag::Noun);
    }

    #[test]
    fn mpos_code_mapping() {
        assert_eq!(Tag::from_mpos_code('t'), Some(Tag::Verb));
        assert_eq!(Tag::from_mpos_code('o'), Some(Tag::Noun));
        assert_eq!(Tag::from_mpos_code('I'), Some(Tag::Article));
        assert_eq!(Tag::from_mpos_code('h'), None);
    }
}
