//! Derivative-free local minimization.

/// Nelder-Mead on `R^D` with the standard coefficients (1, 2, 1/2, 1/2).
///
/// Stops after `max_iter` iterations or once the spread of function values
/// and the simplex diameter both fall below `tol`.
pub fn nelder_mead<const D: usize>(
    f: impl Fn(&[f64; D]) -> f64,
    start: [f64; D],
    step: f64,
    max_iter: usize,
    tol: f64,
) -> ([f64; D], f64) {
    let mut simplex: Vec<([f64; D], f64)> = (0..=D)
        .map(|i| {
            let mut x = start;
            if i > 0 {
                x[i - 1] += step;
            }
            (x, f(&x))
        })
        .collect();
    let lerp = |a: &[f64; D], b: &[f64; D], t: f64| -> [f64; D] {
        let mut out = *a;
        for k in 0..D {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        out
    };
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[D].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= tol && diameter <= tol {
            break;
        }
        let mut centroid = [0.0; D];
        for (x, _) in &simplex[..D] {
            for k in 0..D {
                centroid[k] += x[k] / D as f64;
            }
        }
        let reflected = lerp(&centroid, &simplex[D].0, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &simplex[D].0, -2.0);
            let fe = f(&expanded);
            simplex[D] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[D - 1].1 {
            simplex[D] = (reflected, fr);
        } else {
            let contracted =
                if fr < simplex[D].1 { lerp(&centroid, &reflected, 0.5) } else { lerp(&centroid, &simplex[D].0, 0.5) };
            let fc = f(&contracted);
            if fc < fr.min(simplex[D].1) {
                simplex[D] = (contracted, fc);
            } else {
                let x0 = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    let x = lerp(&x0, &entry.0, 0.5);
                    *entry = (x, f(&x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
