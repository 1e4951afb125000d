//! Monte Carlo moments of the standard complex Gaussian, split into fixed
//! seeded chunks so results do not depend on the worker count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Number of independent substreams; each is one work item.
pub const CHUNKS: u64 = 64;

/// One requested moment `E[z^a z̄^b |z|^{2m}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentQuery {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub m: u32,
}

/// Sample mean of the real part and its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: u64,
}

#[derive(Clone, Default)]
struct Sums {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

fn powers(z: Complex64, top: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(top + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=top {
        out.push(acc);
        acc *= z;
    }
    out
}

fn run_chunk(queries: &[MomentQuery], n: usize, count: u64, seed: u64, stream: u64) -> Sums {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let top = queries.iter().flat_map(|q| q.a.iter().chain(&q.b)).copied().max().unwrap_or(0) as usize;
    let top_m = queries.iter().map(|q| q.m).max().unwrap_or(0);
    let mut sums = Sums {
        sum: vec![0.0; queries.len()],
        sum_sq: vec![0.0; queries.len()],
    };
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut zs = Vec::with_capacity(n);
    for _ in 0..count {
        zs.clear();
        for _ in 0..n {
            let x: f64 = rng.sample(StandardNormal);
            let y: f64 = rng.sample(StandardNormal);
            zs.push(Complex64::new(x * scale, y * scale));
        }
        let pw: Vec<Vec<Complex64>> = zs.iter().map(|&z| powers(z, top)).collect();
        let pw_conj: Vec<Vec<Complex64>> = zs.iter().map(|&z| powers(z.conj(), top)).collect();
        let r2: f64 = zs.iter().map(|z| z.norm_sqr()).sum();
        let radial: Vec<f64> = (0..=top_m).map(|k| r2.powi(k as i32)).collect();
        for (i, q) in queries.iter().enumerate() {
            let mut v = Complex64::new(radial[q.m as usize], 0.0);
            for j in 0..n {
                v *= pw[j][q.a[j] as usize] * pw_conj[j][q.b[j] as usize];
            }
            sums.sum[i] += v.re;
            sums.sum_sq[i] += v.re * v.re;
        }
    }
    sums
}

/// Estimates every query from one shared batch of `samples` draws of
/// `z ∈ ℂⁿ` with density `π^{−n} e^{−|z|²}`. Chunk `i` uses the ChaCha
/// stream `i` of `seed`, and chunk sums are reduced in chunk order, so the
/// result is reproducible for any thread count.
pub fn gaussian_moments(queries: &[MomentQuery], n: usize, samples: u64, seed: u64) -> Vec<MomentEstimate> {
    let per_chunk = samples / CHUNKS;
    let extra = samples % CHUNKS;
    let parts: Vec<Sums> = (0..CHUNKS)
        .into_par_iter()
        .map(|i| run_chunk(queries, n, per_chunk + u64::from(i < extra), seed, i))
        .collect();
    let mut total = Sums {
        sum: vec![0.0; queries.len()],
        sum_sq: vec![0.0; queries.len()],
    };
    for p in &parts {
        for i in 0..queries.len() {
            total.sum[i] += p.sum[i];
            total.sum_sq[i] += p.sum_sq[i];
        }
    }
    let k = samples as f64;
    (0..queries.len())
        .map(|i| {
            let mean = total.sum[i] / k;
            let var = (total.sum_sq[i] / k - mean * mean).max(0.0) * k / (k - 1.0);
            MomentEstimate {
                mean,
                standard_error: (var / k).sqrt(),
                samples,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_sane() {
        let qs = vec![
            MomentQuery { a: vec![0, 0], b: vec![0, 0], m: 0 },
            MomentQuery { a: vec![1, 0], b: vec![1, 0], m: 0 },
            MomentQuery { a: vec![0, 0], b: vec![0, 0], m: 1 },
        ];
        let a = gaussian_moments(&qs, 2, 200_000, 7);
        let b = gaussian_moments(&qs, 2, 200_000, 7);
        assert_eq!(a, b);
        assert_eq!(a[0].mean, 1.0);
        assert_eq!(a[0].standard_error, 0.0);
        // E|z1|² = 1, E|z|² = n
        assert!((a[1].mean - 1.0).abs() < 4.0 * a[1].standard_error);
        assert!((a[2].mean - 2.0).abs() < 4.0 * a[2].standard_error);
        assert_ne!(gaussian_moments(&qs, 2, 200_000, 8)[1], a[1]);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let qs = vec![MomentQuery { a: vec![2, 1], b: vec![2, 1], m: 2 }];
        let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| gaussian_moments(&qs, 2, 50_000, 3));
        let parallel = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| gaussian_moments(&qs, 2, 50_000, 3));
        assert_eq!(serial, parallel);
    }
}
