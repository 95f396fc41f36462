//! Brute-force conversion probability on expanded, zero-padded vectors.

#![allow(dead_code)]

pub fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

pub fn kron(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn n_copies(alpha: f64, n: u32) -> Vec<f64> {
    (0..n).fold(vec![1.0], |acc, _| kron(&acc, &[alpha, 1.0 - alpha]))
}

pub fn vidal(initial: &[f64], target: &[f64]) -> f64 {
    let (mut a, mut b) = (sorted_desc(initial), sorted_desc(target));
    let d = a.len().max(b.len());
    a.resize(d, 0.0);
    b.resize(d, 0.0);
    let (mut sa, mut sb) = (0.0, 0.0);
    let mut best = f64::INFINITY;
    for l in 0..d {
        let (ea, eb) = (1.0 - sa, 1.0 - sb);
        if eb > 1e-14 {
            best = best.min(ea / eb);
        }
        sa += a[l];
        sb += b[l];
    }
    best.clamp(0.0, 1.0)
}
