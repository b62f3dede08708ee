use std::f64::consts::PI;

use super::ShiftSpec;
use crate::audio::apply_ramp;

/// One windowed excitation placed in the output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Placement {
    /// Index into the pulse list.
    pub excitation: usize,
    /// Output position of the excitation's peak.
    pub position: f64,
}

/// Excitation `r` windowed out of `x`: a raised-cosine rise from the
/// previous pulse and fall to the next one. The first window is flat back to
/// the start of the clip and the last flat to its end, so the excitations
/// sum to `x`. Returns the start sample and the windowed samples.
pub fn excitation(x: &[f64], pulses: &[usize], r: usize) -> (usize, Vec<f64>) {
    let k = pulses.len();
    let p = pulses[r];
    let lo = if r == 0 { 0 } else { pulses[r - 1] };
    let hi = if r + 1 == k { x.len() } else { pulses[r + 1] };
    let seg = (lo..hi)
        .map(|i| {
            let w = if i < p {
                if r == 0 {
                    1.0
                } else {
                    0.5 - 0.5 * (PI * (i - lo) as f64 / (p - lo) as f64).cos()
                }
            } else if r + 1 == k {
                1.0
            } else {
                0.5 + 0.5 * (PI * (i - p) as f64 / (hi - p) as f64).cos()
            };
            w * x[i]
        })
        .collect();
    (lo, seg)
}

/// Which excitation goes where. Gaps are stretched by the duration target at
/// their centres to form excitation ranges, excitation `r` owning the range
/// built from the gap that ends at its pulse. Placement starts at the first
/// pulse and advances by the gap owning the current range divided by the
/// pitch target at its centre, using the excitation whose range holds the
/// new position, until a position at or past the end of the last range.
pub fn placements(pulses: &[usize], len: usize, spec: &ShiftSpec) -> Vec<Placement> {
    let k = pulses.len();
    assert!(k >= 2, "psola needs at least two pulses");
    let n = len.max(1) as f64;
    let gaps: Vec<f64> = pulses.windows(2).map(|w| (w[1] - w[0]) as f64).collect();
    let centres: Vec<f64> = pulses
        .windows(2)
        .map(|w| (w[0] + w[1]) as f64 / 2.0 / n)
        .collect();
    let mut range_end = Vec::with_capacity(k);
    range_end.push(pulses[0] as f64);
    for r in 1..k {
        range_end.push(range_end[r - 1] + gaps[r - 1] * spec.duration_at(centres[r - 1]));
    }
    let last_end = range_end[k - 1];
    let mut out = vec![Placement {
        excitation: 0,
        position: pulses[0] as f64,
    }];
    let mut q = pulses[0] as f64;
    let mut e: usize = 0;
    loop {
        let g = e.saturating_sub(1).min(k - 2);
        q += gaps[g] / spec.pitch_at(centres[g]);
        if q >= last_end {
            out.push(Placement {
                excitation: k - 1,
                position: q,
            });
            return out;
        }
        e = range_end.partition_point(|&end| end < q);
        out.push(Placement {
            excitation: e,
            position: q,
        });
    }
}

/// Pitch and duration shifting by overlap-add of re-spaced excitations. The
/// samples before the first pulse and after the last keep their length.
pub fn psola_core(x: &[f64], pulses: &[usize], spec: &ShiftSpec) -> Vec<f64> {
    let k = pulses.len();
    let plan = placements(pulses, x.len(), spec);
    let last = plan.last().unwrap().position.round() as usize;
    let out_len = last + (x.len() - pulses[k - 1]);
    let mut out = vec![0.0; out_len];
    let windows: Vec<(usize, Vec<f64>)> = (0..k).map(|r| excitation(x, pulses, r)).collect();
    for pl in &plan {
        let (start, seg) = &windows[pl.excitation];
        let at = pl.position.round() as i64 - (pulses[pl.excitation] - start) as i64;
        for (i, v) in seg.iter().enumerate() {
            let j = at + i as i64;
            if j >= 0 && (j as usize) < out_len {
                out[j as usize] += v;
            }
        }
    }
    out
}

/// [`psola_core`] followed by the volume ramp.
pub fn psola(x: &[f64], pulses: &[usize], spec: &ShiftSpec) -> Vec<f64> {
    let mut out = psola_core(x, pulses, spec);
    apply_ramp(&mut out, spec.volume.0, spec.volume.1);
    out
}
