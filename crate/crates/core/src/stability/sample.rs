use rand::Rng;

use crate::barcode::{Bar, Barcode};
use crate::error::{Error, Result};
use crate::gridmod::random::rng_from_seed;

/// Grid on which sampled endpoints live; keeps sums and differences exact.
pub const SAMPLE_STEP: f64 = 0.25;

fn quantized<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let steps = ((hi - lo) / SAMPLE_STEP).floor() as u64;
    lo + rng.gen_range(0..=steps) as f64 * SAMPLE_STEP
}

/// Random barcode with up to `max_bars` bars. Births and lengths are drawn
/// from `birth_range` and `len_range` on a grid of step [`SAMPLE_STEP`];
/// each bar is made infinite with probability `inf_rate`.
pub fn random_barcode(seed: u64, max_bars: usize, birth_range: (f64, f64), len_range: (f64, f64), inf_rate: f64) -> Result<Barcode> {
    let ok_range = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
    if !ok_range(birth_range) || !ok_range(len_range) || len_range.0 <= 0.0 {
        return Err(Error::Invalid("sampling ranges must be finite, ordered, with positive lengths".into()));
    }
    if !(0.0..=1.0).contains(&inf_rate) {
        return Err(Error::Invalid(format!("infinite-bar rate {inf_rate} outside [0, 1]")));
    }
    let mut rng = rng_from_seed(seed);
    let count = rng.gen_range(0..=max_bars);
    let bars = (0..count)
        .map(|_| {
            let b = quantized(&mut rng, birth_range.0, birth_range.1);
            let l = quantized(&mut rng, len_range.0, len_range.1);
            let d = if inf_rate > 0.0 && rng.gen_bool(inf_rate) { f64::INFINITY } else { b + l };
            Bar::of(b, d)
        })
        .collect();
    Ok(Barcode::new(bars))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of sample `index` of catalog entry `id` under the run seed `seed`.
pub fn sample_seed(seed: u64, id: &str, index: usize) -> u64 {
    let tag = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    splitmix(splitmix(seed ^ tag).wrapping_add(index as u64))
}
