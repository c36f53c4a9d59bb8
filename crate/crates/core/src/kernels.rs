//! Amplitude update loops.
//!
//! Every kernel has a sequential form and, with the `parallel` feature, a
//! rayon form. Both perform the same floating-point operations on the same
//! operands, so results are bit-identical regardless of which one runs.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

/// State length from which the dispatchers switch to the rayon kernels.
pub const PAR_MIN_LEN: usize = 1 << 14;

#[inline(always)]
fn butterfly(m: &Mat2, lo: &mut Complex64, hi: &mut Complex64) {
    let a = *lo;
    let b = *hi;
    *lo = m[0][0] * a + m[0][1] * b;
    *hi = m[1][0] * a + m[1][1] * b;
}

/// Applies `m` to `qubit`, pairing indices that differ only in that bit.
pub fn apply_1q_seq(amps: &mut [Complex64], qubit: usize, m: &Mat2) {
    let stride = 1usize << qubit;
    for chunk in amps.chunks_mut(stride << 1) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            butterfly(m, a, b);
        }
    }
}

#[cfg(feature = "parallel")]
pub fn apply_1q_par(amps: &mut [Complex64], qubit: usize, m: &Mat2) {
    let stride = 1usize << qubit;
    if stride >= PAR_MIN_LEN / 4 {
        // few wide blocks: split inside each block instead
        for chunk in amps.chunks_mut(stride << 1) {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .for_each(|(a, b)| butterfly(m, a, b));
        }
    } else {
        amps.par_chunks_mut(stride << 1).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                butterfly(m, a, b);
            }
        });
    }
}

/// Multiplies every amplitude whose index satisfies `select` by `factor`.
pub fn scale_where_seq<F>(amps: &mut [Complex64], factor: Complex64, select: F)
where
    F: Fn(usize) -> bool + Sync,
{
    for (i, a) in amps.iter_mut().enumerate() {
        if select(i) {
            *a *= factor;
        }
    }
}

#[cfg(feature = "parallel")]
pub fn scale_where_par<F>(amps: &mut [Complex64], factor: Complex64, select: F)
where
    F: Fn(usize) -> bool + Sync,
{
    amps.par_iter_mut().enumerate().for_each(|(i, a)| {
        if select(i) {
            *a *= factor;
        }
    });
}

/// Swaps the amplitudes of every index pair related by exchanging bits `a` and `b`.
pub fn swap_bits_seq(amps: &mut [Complex64], a: usize, b: usize) {
    let (ma, mb) = (1usize << a, 1usize << b);
    for i in 0..amps.len() {
        if i & ma != 0 && i & mb == 0 {
            amps.swap(i, i ^ ma ^ mb);
        }
    }
}

pub fn apply_1q(amps: &mut [Complex64], qubit: usize, m: &Mat2) {
    #[cfg(feature = "parallel")]
    if amps.len() >= PAR_MIN_LEN {
        return apply_1q_par(amps, qubit, m);
    }
    apply_1q_seq(amps, qubit, m)
}

pub fn scale_where<F>(amps: &mut [Complex64], factor: Complex64, select: F)
where
    F: Fn(usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    if amps.len() >= PAR_MIN_LEN {
        return scale_where_par(amps, factor, select);
    }
    scale_where_seq(amps, factor, select)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(len: usize) -> Vec<Complex64> {
        (0..len)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect()
    }

    #[test]
    fn swap_bits_is_involution() {
        let orig = ramp(32);
        let mut v = orig.clone();
        swap_bits_seq(&mut v, 1, 4);
        assert_ne!(v, orig);
        swap_bits_seq(&mut v, 1, 4);
        assert_eq!(v, orig);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_kernels_match_sequential_bitwise() {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let m: Mat2 = [
            [Complex64::new(c, 0.0), Complex64::new(0.3, -0.2)],
            [Complex64::new(-0.1, 0.4), Complex64::new(c, 0.1)],
        ];
        for qubit in [0, 3, 9, 13, 15] {
            let mut a = ramp(1 << 16);
            let mut b = a.clone();
            apply_1q_seq(&mut a, qubit, &m);
            apply_1q_par(&mut b, qubit, &m);
            assert_eq!(a, b, "qubit {qubit}");
        }
        let mut a = ramp(1 << 15);
        let mut b = a.clone();
        let f = Complex64::new(0.0, 1.0);
        scale_where_seq(&mut a, f, |i| i % 3 == 0);
        scale_where_par(&mut b, f, |i| i % 3 == 0);
        assert_eq!(a, b);
    }
}
