//! Brute-force reference computations on fully expanded vectors.
//! Test-only; deliberately shares no code with the compressed path.

pub(crate) fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn padded(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (mut a, mut b) = (sorted_desc(a), sorted_desc(b));
    let d = a.len().max(b.len());
    a.resize(d, 0.0);
    b.resize(d, 0.0);
    (a, b)
}

pub(crate) fn majorizes(initial: &[f64], target: &[f64]) -> bool {
    let (a, b) = padded(initial, target);
    let (mut sa, mut sb) = (0.0, 0.0);
    for k in 0..a.len() {
        sa += a[k];
        sb += b[k];
        if sa > sb + 1e-12 {
            return false;
        }
    }
    true
}

pub(crate) fn monotones(v: &[f64]) -> Vec<f64> {
    let v = sorted_desc(v);
    let mut out = Vec::with_capacity(v.len());
    let mut prefix = 0.0;
    for x in &v {
        out.push(1.0 - prefix);
        prefix += x;
    }
    out
}

pub(crate) fn vidal(initial: &[f64], target: &[f64]) -> f64 {
    let (a, b) = padded(initial, target);
    let (ea, eb) = (monotones(&a), monotones(&b));
    let mut best = f64::INFINITY;
    for (x, y) in ea.iter().zip(&eb) {
        if *y > 1e-14 {
            best = best.min(x / y);
        }
    }
    best.clamp(0.0, 1.0)
}
