use super::ShiftSpec;
use crate::audio::{apply_ramp, ms};

/// 10 ms frames.
pub const USDS_FRAME: usize = ms(10);
/// 1 ms crossfade at repeat and skip joins.
pub const USDS_CROSSFADE: usize = ms(1);
const ACC_EPSILON: f64 = 1e-9;

/// Order in which source frames are emitted. Each frame adds `dur - 1` to an
/// accumulator; the frame repeats while the accumulator reaches 1 and is
/// dropped when it reaches -1.
pub fn usds_schedule(n_frames: usize, dur: impl Fn(usize) -> f64) -> Vec<usize> {
    let mut out = Vec::with_capacity(n_frames);
    let mut count = 0.0;
    for f in 0..n_frames {
        count += dur(f) - 1.0;
        if count <= -1.0 + ACC_EPSILON {
            count += 1.0;
            continue;
        }
        out.push(f);
        while count >= 1.0 - ACC_EPSILON {
            out.push(f);
            count -= 1.0;
        }
    }
    out
}

/// Duration shifting by repeating or dropping 10 ms frames. At each join
/// that is not a natural continuation, the incoming frame fades in over the
/// samples that would have followed the previous frame in the source.
pub fn usds_core(x: &[f64], spec: &ShiftSpec) -> Vec<f64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let frames = n.div_ceil(USDS_FRAME);
    let bounds = |f: usize| (f * USDS_FRAME, ((f + 1) * USDS_FRAME).min(n));
    let order = usds_schedule(frames, |f| {
        let (a, b) = bounds(f);
        spec.duration_at((a + b) as f64 / 2.0 / n as f64)
    });
    let mut out = Vec::with_capacity(order.len() * USDS_FRAME);
    let mut prev: Option<usize> = None;
    for &f in &order {
        let (a, b) = bounds(f);
        let start = out.len();
        out.extend_from_slice(&x[a..b]);
        if let Some(p) = prev.filter(|&p| p + 1 != f) {
            let cont = bounds(p).1;
            let c = USDS_CROSSFADE.min(b - a).min(n - cont);
            for i in 0..c {
                let w = (i as f64 + 0.5) / c as f64;
                out[start + i] = w * x[a + i] + (1.0 - w) * x[cont + i];
            }
        }
        prev = Some(f);
    }
    out
}

/// [`usds_core`] followed by the volume ramp.
pub fn usds(x: &[f64], spec: &ShiftSpec) -> Vec<f64> {
    let mut out = usds_core(x, spec);
    apply_ramp(&mut out, spec.volume.0, spec.volume.1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(n: usize, d: f64) -> Vec<usize> {
        usds_schedule(n, |_| d)
    }

    #[test]
    fn schedules() {
        assert_eq!(constant(6, 0.5), [0, 2, 4]);
        assert_eq!(constant(10, 0.2), [0, 5]);
        assert_eq!(constant(2, 5.0), [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        let mut want: Vec<usize> = (0..20).collect();
        want.insert(10, 9);
        want.insert(21, 19);
        assert_eq!(constant(20, 1.1), want);
        assert_eq!(constant(4, 1.0), [0, 1, 2, 3]);
    }

    #[test]
    fn unit_duration_is_bitwise_identity() {
        let x: Vec<f64> = (0..5000).map(|i| (i as f64 * 0.37).sin()).collect();
        assert_eq!(usds(&x, &ShiftSpec::default()), x);
    }

    #[test]
    fn repeats_blend_into_the_continuation() {
        let x: Vec<f64> = (0..2 * USDS_FRAME).map(|i| i as f64).collect();
        let y = usds_core(&x, &ShiftSpec::constant(1.0, 2.0, 1.0));
        assert_eq!(y.len(), 4 * USDS_FRAME);
        assert_eq!(y[..USDS_FRAME], x[..USDS_FRAME]);
        // second copy of frame 0 starts on the natural continuation
        let first = y[USDS_FRAME];
        assert!((first - USDS_FRAME as f64).abs() < USDS_FRAME as f64 / USDS_CROSSFADE as f64);
        assert_eq!(y[USDS_FRAME + USDS_CROSSFADE], x[USDS_CROSSFADE]);
    }

    #[test]
    fn empty_input() {
        assert!(usds(&[], &ShiftSpec::constant(1.0, 3.0, 1.0)).is_empty());
    }
}
