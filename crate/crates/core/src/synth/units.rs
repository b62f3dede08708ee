use serde::Serialize;

use crate::audio::ms;
use crate::bank::{DiphoneBank, Pair};
use crate::phoneset::Phone;
use crate::prosody::PhoneTarget;
use crate::signal::ShiftSpec;

/// Silence placed between the halves of a bridged missing diphone.
pub const BRIDGE_SILENCE: usize = ms(30);

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlannedPhone {
    pub phone: Phone,
    pub target: PhoneTarget,
}

/// A phone stream with pauses, as built from preprocessed tokens.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Unit {
    Phone(PlannedPhone),
    /// Seconds.
    Pause(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Step {
    Diphone { p1: Phone, p2: Phone, spec: ShiftSpec },
    Monophone { phone: Phone, spec: ShiftSpec },
    Silence { samples: usize },
}

impl Step {
    pub fn first_phone(&self) -> Phone {
        match self {
            Step::Diphone { p1, .. } => *p1,
            Step::Monophone { phone, .. } => *phone,
            Step::Silence { .. } => Phone::X,
        }
    }

    pub fn last_phone(&self) -> Phone {
        match self {
            Step::Diphone { p2, .. } => *p2,
            Step::Monophone { phone, .. } => *phone,
            Step::Silence { .. } => Phone::X,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Sequence {
    pub steps: Vec<Step>,
    /// Diphones the bank lacked, bridged through silence.
    pub substitutions: Vec<Pair>,
    pub missing_monophones: Vec<Phone>,
}

fn spec(a: PhoneTarget, b: PhoneTarget) -> ShiftSpec {
    ShiftSpec {
        pitch: (a.pitch, b.pitch),
        duration: (a.duration, b.duration),
        volume: (a.volume, b.volume),
    }
}

/// Silence-delimited phone groups with silence at both ends, adjacent
/// repeats merged, and the pauses between them.
fn groups(units: &[Unit]) -> Vec<Result<Vec<PlannedPhone>, f64>> {
    let mut out = Vec::new();
    let mut cur: Vec<PlannedPhone> = Vec::new();
    let flush = |cur: &mut Vec<PlannedPhone>, out: &mut Vec<Result<Vec<PlannedPhone>, f64>>| {
        if !cur.is_empty() {
            out.push(Ok(std::mem::take(cur)));
        }
    };
    for u in units {
        match *u {
            Unit::Phone(p) if p.phone == Phone::X => flush(&mut cur, &mut out),
            Unit::Phone(p) => {
                if cur.last().map(|q| q.phone) != Some(p.phone) {
                    cur.push(p);
                }
            }
            Unit::Pause(s) => {
                flush(&mut cur, &mut out);
                if s > 0.0 {
                    out.push(Err(s));
                }
            }
        }
    }
    flush(&mut cur, &mut out);
    out
}

struct Builder<'a> {
    bank: &'a DiphoneBank,
    seq: Sequence,
}

impl Builder<'_> {
    fn diphone(&mut self, p1: Phone, p2: Phone, s: ShiftSpec) {
        if self.bank.diphone(p1, p2).is_some() {
            self.seq.steps.push(Step::Diphone { p1, p2, spec: s });
            return;
        }
        log::warn!("bank lacks {p1}-{p2}, bridging through silence");
        self.seq.substitutions.push((p1, p2));
        if p1 == Phone::X || p2 == Phone::X {
            return;
        }
        let (head, tail) = (s.slice(0.0, 0.5), s.slice(0.5, 1.0));
        if self.bank.diphone(p1, Phone::X).is_some() {
            self.seq.steps.push(Step::Diphone { p1, p2: Phone::X, spec: head });
        }
        self.seq.steps.push(Step::Silence { samples: BRIDGE_SILENCE });
        if self.bank.diphone(Phone::X, p2).is_some() {
            self.seq.steps.push(Step::Diphone { p1: Phone::X, p2, spec: tail });
        }
    }

    fn monophone(&mut self, phone: Phone, s: ShiftSpec) {
        if self.bank.monophone(phone).is_some() {
            self.seq.steps.push(Step::Monophone { phone, spec: s });
        } else {
            log::warn!("bank lacks the {phone} monophone");
            self.seq.missing_monophones.push(phone);
        }
    }

    /// One consecutive pair. Stops are rendered from their burst monophone
    /// unless released into a persistent phone, and a persistent phone
    /// before a stop ends on its offset into silence.
    fn pair(&mut self, a: PlannedPhone, b: PlannedPhone) {
        let (pa, pb) = (a.phone, b.phone);
        if pa.is_stop() {
            if pb.is_persistent() {
                self.diphone(pa, pb, spec(a.target, b.target));
            } else {
                self.monophone(pa, spec(a.target, a.target));
            }
        } else if pb.is_stop() {
            if pa.is_persistent() {
                self.diphone(pa, Phone::X, spec(a.target, a.target));
            }
        } else {
            self.diphone(pa, pb, spec(a.target, b.target));
        }
    }
}

/// Turns a phone stream into clip lookups with shift targets.
pub fn to_diphones(units: &[Unit], bank: &DiphoneBank) -> Sequence {
    let mut b = Builder {
        bank,
        seq: Sequence::default(),
    };
    for g in groups(units) {
        let phones = match g {
            Err(seconds) => {
                b.seq.steps.push(Step::Silence {
                    samples: (seconds * crate::audio::SAMPLE_RATE as f64).round() as usize,
                });
                continue;
            }
            Ok(p) => p,
        };
        let edge = |p: &PlannedPhone| PlannedPhone {
            phone: Phone::X,
            target: p.target,
        };
        let mut chain = vec![edge(&phones[0])];
        chain.extend_from_slice(&phones);
        chain.push(edge(phones.last().unwrap()));
        for w in chain.windows(2) {
            b.pair(w[0], w[1]);
        }
    }
    b.seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use Phone::*;

    fn units(s: &str) -> Vec<Unit> {
        s.split(' ')
            .map(|p| match p {
                "|" => Unit::Pause(0.25),
                p => Unit::Phone(PlannedPhone {
                    phone: p.parse().unwrap(),
                    target: PhoneTarget::NEUTRAL,
                }),
            })
            .collect()
    }

    fn full_bank() -> DiphoneBank {
        let mut bank = DiphoneBank::new("t");
        for p in crate::phoneset::required_diphone_set() {
            bank.diphones.insert(p, vec![0.0]);
        }
        for p in crate::phoneset::monophones() {
            bank.monophones.insert(p, vec![0.0]);
        }
        bank
    }

    fn names(seq: &Sequence) -> Vec<String> {
        seq.steps
            .iter()
            .map(|s| match s {
                Step::Diphone { p1, p2, .. } => format!("{p1}-{p2}"),
                Step::Monophone { phone, .. } => phone.to_string(),
                Step::Silence { samples } => format!("_{samples}"),
            })
            .collect()
    }

    #[test]
    fn hello() {
        let seq = to_diphones(&units("HH AH L IPAO UH"), &full_bank());
        assert_eq!(names(&seq), ["X-HH", "HH-AH", "AH-L", "L-IPAO", "IPAO-UH", "UH-X"]);
    }

    #[test]
    fn single_phone_and_pauses() {
        let seq = to_diphones(&units("AA | AA"), &full_bank());
        assert_eq!(names(&seq), ["X-AA", "AA-X", "_12000", "X-AA", "AA-X"]);
        assert!(to_diphones(&[], &full_bank()).steps.is_empty());
    }

    #[test]
    fn stop_clusters() {
        // "apt act": AE P T AE K T
        let seq = to_diphones(&units("AE P T AE K T"), &full_bank());
        assert_eq!(names(&seq), ["X-AE", "AE-X", "P", "T-AE", "AE-X", "K", "T"]);
        let seq = to_diphones(&units("T S"), &full_bank());
        assert_eq!(names(&seq), ["T-S", "S-X"]);
    }

    #[test]
    fn repeats_merge() {
        let seq = to_diphones(&units("B AH S S T AA P"), &full_bank());
        assert_eq!(names(&seq), ["B-AH", "AH-S", "S-X", "T-AA", "AA-X", "P"]);
    }

    #[test]
    fn missing_pairs_bridge() {
        let mut bank = full_bank();
        bank.diphones.remove(&(L, N));
        let seq = to_diphones(&units("L N"), &bank);
        assert_eq!(names(&seq), ["X-L", "L-X", "_1440", "X-N", "N-X"]);
        assert_eq!(seq.substitutions, [(L, N)]);
        let seq = to_diphones(&units("M N"), &bank);
        assert_eq!(seq.substitutions, [(M, N)]);
    }

    #[test]
    fn chain_is_connected_except_at_stops_and_silence() {
        let seq = to_diphones(&units("S T R EH NG K TH S | AH"), &full_bank());
        for w in seq.steps.windows(2) {
            let (a, b) = (w[0].last_phone(), w[1].first_phone());
            assert!(a == b || a == X || a.is_stop() || b.is_stop(), "{a} {b}");
        }
    }
}
