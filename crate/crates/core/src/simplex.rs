//! Derivative-free Nelder-Mead simplex descent.

/// Reflection, expansion, contraction and shrink coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexCoefficients {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
}

impl Default for SimplexCoefficients {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// Objective calls after the initial simplex.
    pub evaluations: usize,
}

/// Minimizes `f` starting from the axis-aligned simplex `x0 + step * e_i`.
///
/// The `n + 1` initial vertices are always evaluated; `max_evals` bounds the
/// calls made after that. `max_evals = 0` returns the best initial vertex.
pub fn nelder_mead<F>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    coef: SimplexCoefficients,
) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    pts.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| sanitize(f(p))).collect();
    let mut evals = 0usize;

    while evals < max_evals && n > 0 {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let (best, worst, second) = (order[0], order[n], order[n - 1]);

        let mut centroid = vec![0.0; n];
        for &i in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&pts[i]) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= n as f64);

        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(coef.reflection);
        let fr = sanitize(f(&xr));
        evals += 1;

        if fr < vals[best] {
            if evals >= max_evals {
                pts[worst] = xr;
                vals[worst] = fr;
                break;
            }
            let xe = along(coef.expansion);
            let fe = sanitize(f(&xe));
            evals += 1;
            if fe < fr {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if fr < vals[second] {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            if evals >= max_evals {
                if fr < vals[worst] {
                    pts[worst] = xr;
                    vals[worst] = fr;
                }
                break;
            }
            // Outside contraction toward the reflected point, inside otherwise.
            let (xc, fc_ref) = if fr < vals[worst] {
                (along(coef.contraction), fr)
            } else {
                (along(-coef.contraction), vals[worst])
            };
            let fc = sanitize(f(&xc));
            evals += 1;
            if fc < fc_ref {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                let xb = pts[best].clone();
                for &i in &order[1..] {
                    if evals >= max_evals {
                        break;
                    }
                    for (x, b) in pts[i].iter_mut().zip(&xb) {
                        *x = b + coef.shrink * (*x - b);
                    }
                    vals[i] = sanitize(f(&pts[i]));
                    evals += 1;
                }
            }
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .expect("simplex has at least one vertex");
    Minimum {
        x: pts[best].clone(),
        value: vals[best],
        evaluations: evals,
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}
