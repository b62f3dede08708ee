//! Phone inventory, categories, stress markers and diphthong decomposition.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phone {
    AA,
    AE,
    AH,
    AO,
    EH,
    ER,
    IH,
    IY,
    UH,
    UW,
    IPAA,
    IPAE,
    IPAO,
    W,
    Y,
    L,
    R,
    M,
    N,
    NG,
    F,
    V,
    TH,
    DH,
    S,
    Z,
    SH,
    ZH,
    HH,
    P,
    B,
    T,
    D,
    K,
    G,
    CH,
    JH,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    Sonorant,
    Obstruent,
    Stop,
    Silence,
}

use Phone::*;

impl Phone {
    pub const ALL: [Phone; 38] = [
        AA, AE, AH, AO, EH, ER, IH, IY, UH, UW, IPAA, IPAE, IPAO, W, Y, L, R, M, N, NG, F, V, TH,
        DH, S, Z, SH, ZH, HH, P, B, T, D, K, G, CH, JH, X,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            AA => "AA",
            AE => "AE",
            AH => "AH",
            AO => "AO",
            EH => "EH",
            ER => "ER",
            IH => "IH",
            IY => "IY",
            UH => "UH",
            UW => "UW",
            IPAA => "IPAA",
            IPAE => "IPAE",
            IPAO => "IPAO",
            W => "W",
            Y => "Y",
            L => "L",
            R => "R",
            M => "M",
            N => "N",
            NG => "NG",
            F => "F",
            V => "V",
            TH => "TH",
            DH => "DH",
            S => "S",
            Z => "Z",
            SH => "SH",
            ZH => "ZH",
            HH => "HH",
            P => "P",
            B => "B",
            T => "T",
            D => "D",
            K => "K",
            G => "G",
            CH => "CH",
            JH => "JH",
            X => "X",
        }
    }

    pub fn category(self) -> Category {
        match self {
            P | B | T | D | K | G | CH | JH => Category::Stop,
            F | V | TH | DH | S | Z | SH | ZH | HH => Category::Obstruent,
            X => Category::Silence,
            _ => Category::Sonorant,
        }
    }

    /// Stress-bearing vowels, including ER and the synthetic monophthongs.
    pub fn is_vowel(self) -> bool {
        matches!(
            self,
            AA | AE | AH | AO | EH | ER | IH | IY | UH | UW | IPAA | IPAE | IPAO
        )
    }

    pub fn is_stop(self) -> bool {
        self.category() == Category::Stop
    }

    pub fn is_silence(self) -> bool {
        self == X
    }

    /// Sonorants and obstruents: phones that can be held.
    pub fn is_persistent(self) -> bool {
        matches!(self.category(), Category::Sonorant | Category::Obstruent)
    }

    pub fn is_nasal(self) -> bool {
        matches!(self, M | N | NG)
    }
}

impl fmt::Display for Phone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Phone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Phone> {
        Phone::ALL
            .iter()
            .copied()
            .find(|p| p.symbol() == s)
            .ok_or_else(|| Error::Data(format!("unknown phone symbol {s:?}")))
    }
}

impl Serialize for Phone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Phone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Phone, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stress {
    Unstressed,
    Primary,
    Secondary,
    NonVowel,
}

impl Stress {
    pub fn digit(self) -> Option<u8> {
        match self {
            Stress::Unstressed => Some(0),
            Stress::Primary => Some(1),
            Stress::Secondary => Some(2),
            Stress::NonVowel => None,
        }
    }

    fn from_digit(d: u8) -> Option<Stress> {
        match d {
            0 => Some(Stress::Unstressed),
            1 => Some(Stress::Primary),
            2 => Some(Stress::Secondary),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StressedPhone {
    pub phone: Phone,
    pub stress: Stress,
}

impl StressedPhone {
    pub fn new(phone: Phone, stress: Stress) -> Self {
        StressedPhone { phone, stress }
    }

    /// Vowels get stress 0, everything else `NonVowel`.
    pub fn plain(phone: Phone) -> Self {
        let stress = if phone.is_vowel() {
            Stress::Unstressed
        } else {
            Stress::NonVowel
        };
        StressedPhone { phone, stress }
    }
}

impl fmt::Display for StressedPhone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stress.digit() {
            Some(d) => write!(f, "{}{}", self.phone, d),
            None => write!(f, "{}", self.phone),
        }
    }
}

impl FromStr for StressedPhone {
    type Err = Error;

    /// Parses an inventory symbol with an optional stress digit. A vowel
    /// without a digit is read as unstressed.
    fn from_str(s: &str) -> Result<StressedPhone> {
        let (base, digit) = split_stress(s);
        let phone: Phone = base.parse()?;
        let stress = match digit {
            Some(d) if phone.is_vowel() => Stress::from_digit(d)
                .ok_or_else(|| Error::Data(format!("bad stress digit in {s:?}")))?,
            Some(_) => return Err(Error::Data(format!("stress digit on consonant {s:?}"))),
            None if phone.is_vowel() => Stress::Unstressed,
            None => Stress::NonVowel,
        };
        Ok(StressedPhone { phone, stress })
    }
}

impl Serialize for StressedPhone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn split_stress(s: &str) -> (&str, Option<u8>) {
    match s.as_bytes().last() {
        Some(b) if b.is_ascii_digit() => (&s[..s.len() - 1], Some(b - b'0')),
        _ => (s, None),
    }
}

const DIPHTHONGS: [(&str, &str, &str); 5] = [
    ("EY", "IPAE", "IH"),
    ("AY", "IPAA", "IH"),
    ("OW", "IPAO", "UH"),
    ("AW", "IPAA", "UH"),
    ("OY", "AO", "IH"),
];

/// Raw CMUdict symbols, before decomposition. Includes the five diphthongs.
pub const ARPABET: [&str; 39] = [
    "AA", "AE", "AH", "AO", "AW", "AY", "B", "CH", "D", "DH", "EH", "ER", "EY", "F", "G", "HH",
    "IH", "IY", "JH", "K", "L", "M", "N", "NG", "OW", "OY", "P", "R", "S", "SH", "T", "TH", "UH",
    "UW", "V", "W", "Y", "Z", "ZH",
];

pub fn is_diphthong(base: &str) -> bool {
    DIPHTHONGS.iter().any(|(d, _, _)| *d == base)
}

/// Replaces each diphthong by its two-vowel expansion. The stress digit moves
/// to the first vowel and the second vowel is unstressed; when the diphthong
/// carries no digit neither replacement does.
pub fn decompose_diphthongs<S: AsRef<str>>(seq: &[S]) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(seq.len() + 2);
    for sym in seq {
        let sym = sym.as_ref();
        let (base, digit) = split_stress(sym);
        if let Some((_, first, second)) = DIPHTHONGS.iter().find(|(d, _, _)| *d == base) {
            match digit {
                Some(d) => {
                    out.push(format!("{first}{d}"));
                    out.push(format!("{second}0"));
                }
                None => {
                    out.push(first.to_string());
                    out.push(second.to_string());
                }
            }
        } else {
            sym.parse::<StressedPhone>()
                .map_err(|_| Error::Data(format!("unknown phone symbol {sym:?}")))?;
            out.push(sym.to_string());
        }
    }
    Ok(out)
}

/// Decomposes and parses raw Arpabet into inventory phones.
pub fn to_stressed<S: AsRef<str>>(seq: &[S]) -> Result<Vec<StressedPhone>> {
    decompose_diphthongs(seq)?
        .iter()
        .map(|s| s.parse())
        .collect()
}

/// True for a raw CMUdict symbol (diphthongs allowed) with a legal stress digit.
pub fn is_raw_symbol(sym: &str) -> bool {
    let (base, digit) = split_stress(sym);
    if is_diphthong(base) {
        return matches!(digit, None | Some(0..=2));
    }
    sym.parse::<StressedPhone>().is_ok()
}

/// The 37 recordable monophones (everything but silence).
pub fn monophones() -> Vec<Phone> {
    Phone::ALL.iter().copied().filter(|p| !p.is_silence()).collect()
}

fn permitted_successors(p: Phone) -> Option<&'static [Phone]> {
    match p {
        IPAE => Some(&[IH]),
        IPAA => Some(&[IH, UH]),
        IPAO => Some(&[UH]),
        _ => None,
    }
}

/// Whether a phone pair is a transition the bank must hold a clip for.
pub fn is_required_pair(a: Phone, b: Phone) -> bool {
    if a == b || b.is_stop() || (a.is_silence() && b.is_silence()) {
        return false;
    }
    if a.is_nasal() && b.is_nasal() {
        return false;
    }
    if let Some(next) = permitted_successors(a) {
        return next.contains(&b);
    }
    if a.is_silence() {
        return b.is_persistent();
    }
    if b.is_silence() {
        return a.is_persistent();
    }
    true
}

/// Every diphone the bank must contain, silence-adjacent pairs included.
pub fn required_diphone_set() -> BTreeSet<(Phone, Phone)> {
    let mut set = BTreeSet::new();
    for &a in &Phone::ALL {
        for &b in &Phone::ALL {
            if is_required_pair(a, b) {
                set.insert((a, b));
            }
        }
    }
    set
}

/// Reference listing of the inventory, stored in bank manifests.
pub fn inventory_text() -> String {
    let mut s = String::from("# symbol\tcategory\tvowel\n");
    for p in Phone::ALL {
        s.push_str(&format!("{}\t{:?}\t{}\n", p, p.category(), p.is_vowel()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_partition_inventory() {
        let stops = Phone::ALL.iter().filter(|p| p.is_stop()).count();
        let obs = Phone::ALL
            .iter()
            .filter(|p| p.category() == Category::Obstruent)
            .count();
        let son = Phone::ALL
            .iter()
            .filter(|p| p.category() == Category::Sonorant)
            .count();
        assert_eq!((stops, obs, son), (8, 9, 20));
        assert_eq!(M.category(), Category::Sonorant);
        assert_eq!(S.category(), Category::Obstruent);
        assert_eq!(CH.category(), Category::Stop);
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose_diphthongs(&["EY1", "T"]).unwrap(), ["IPAE1", "IH0", "T"]);
        assert_eq!(decompose_diphthongs(&["K", "IY1"]).unwrap(), ["K", "IY1"]);
        assert_eq!(decompose_diphthongs(&["T", "OY1"]).unwrap(), ["T", "AO1", "IH0"]);
        assert!(decompose_diphthongs(&["QQ"]).is_err());
    }

    #[test]
    fn symbols_round_trip() {
        for p in Phone::ALL {
            assert_eq!(p.symbol().parse::<Phone>().unwrap(), p);
        }
        assert_eq!("ER1".parse::<StressedPhone>().unwrap().stress, Stress::Primary);
        assert!("T1".parse::<StressedPhone>().is_err());
    }

    #[test]
    fn required_set_membership() {
        let set = required_diphone_set();
        assert!(set.contains(&(L, N)));
        assert!(!set.contains(&(M, NG)));
        assert!(!set.contains(&(L, T)));
        assert!(set.contains(&(T, AA)));
        assert!(set.contains(&(IPAA, UH)));
        assert!(!set.contains(&(IPAE, UH)));
        assert!(set.contains(&(X, HH)));
        assert_eq!(monophones().len(), 37);
    }

    #[test]
    fn required_set_counts() {
        let set = required_diphone_set();
        let inner = set.iter().filter(|(a, b)| *a != X && *b != X).count();
        assert_eq!(inner, 958);
        assert_eq!(set.len(), 958 + 29 + 26);
    }
}
