//! Nelder-Mead downhill simplex minimizer with standard coefficients
//! (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

/// Minimizes `f` starting from a simplex spanned by `start` and `start + step
/// * e_i`. Stops once the spread of values over the simplex is at most
/// `f_tol` and every vertex lies within `x_tol` of the best one, or after
/// `max_iterations` iterations.
pub(crate) fn minimize<F>(
    mut f: F,
    start: &[f64],
    step: f64,
    f_tol: f64,
    x_tol: f64,
    max_iterations: usize,
) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = start.len();
    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    vertices.push(start.to_vec());
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += step;
        vertices.push(v);
    }
    let mut values: Vec<f64> = vertices.iter().map(|v| f(v)).collect();

    let mut converged = false;
    for _ in 0..max_iterations {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        vertices = order.iter().map(|&i| vertices[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[dim] - values[0];
        let size = vertices[1..]
            .iter()
            .map(|v| distance(v, &vertices[0]))
            .fold(0.0, f64::max);
        if spread <= f_tol && size <= x_tol {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|j| vertices[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&vertices[dim])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let f_r = f(&reflected);
        if f_r < values[0] {
            let expanded = along(2.0);
            let f_e = f(&expanded);
            if f_e < f_r {
                vertices[dim] = expanded;
                values[dim] = f_e;
            } else {
                vertices[dim] = reflected;
                values[dim] = f_r;
            }
            continue;
        }
        if f_r < values[dim - 1] {
            vertices[dim] = reflected;
            values[dim] = f_r;
            continue;
        }
        let (contracted, f_c, bound) = if f_r < values[dim] {
            let p = along(0.5);
            let v = f(&p);
            (p, v, f_r)
        } else {
            let p = along(-0.5);
            let v = f(&p);
            (p, v, values[dim])
        };
        if f_c <= bound {
            vertices[dim] = contracted;
            values[dim] = f_c;
            continue;
        }
        for i in 1..=dim {
            let shrunk: Vec<f64> = vertices[0]
                .iter()
                .zip(&vertices[i])
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            values[i] = f(&shrunk);
            vertices[i] = shrunk;
        }
    }

    let best = (0..=dim)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap();
    Minimum {
        point: vertices[best].clone(),
        value: values[best],
        converged,
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}
