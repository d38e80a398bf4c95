use super::gamma::{gamma_pq, ln_gamma};
use super::EvalPolicy;

/// Generalized Marcum Q function Q_m(a, b) for real m > 0.
pub fn marcum_q(m: f64, a: f64, b: f64) -> f64 {
    marcum_pq(m, a, b).1
}

/// (1 − Q_m(a,b), Q_m(a,b)) with the default policy.
pub fn marcum_pq(m: f64, a: f64, b: f64) -> (f64, f64) {
    marcum_pq_with(m, a, b, &EvalPolicy::default())
}

/// (1 − Q_m(a,b), Q_m(a,b)).
///
/// Poisson mixture of regularized incomplete gamma functions. The smaller of
/// the two tails is summed directly, the other is its complement.
pub fn marcum_pq_with(m: f64, a: f64, b: f64, policy: &EvalPolicy) -> (f64, f64) {
    debug_assert!(m > 0.0 && a >= 0.0 && b >= 0.0);
    if b == 0.0 {
        return (0.0, 1.0);
    }
    if b.is_infinite() {
        return (1.0, 0.0);
    }
    let y = 0.5 * b * b;
    if a == 0.0 {
        return gamma_pq(m, y);
    }
    let lam = 0.5 * a * a;
    let upper = y > m + lam;
    let factor = |j: f64| {
        let (p, q) = gamma_pq(m + j, y);
        if upper {
            q
        } else {
            p
        }
    };
    let ln_w = |j: f64| j * lam.ln() - lam - ln_gamma(j + 1.0);
    let tol = policy.rel_tol * 1e-2;
    let cap = policy.max_series_terms.max((50.0 + 40.0 * lam.sqrt()) as usize);

    let j0 = lam.floor();
    let mut sum = ln_w(j0).exp() * factor(j0);

    // Upward: P(m+j, y) falls with j (terms bound later ones), Q(m+j, y)
    // rises toward 1 (only the Poisson weight bounds later terms).
    let mut j = j0 + 1.0;
    for _ in 0..cap {
        let w = ln_w(j).exp();
        let t = w * factor(j);
        sum += t;
        let bound = if upper { w } else { t };
        if bound <= tol * sum {
            break;
        }
        j += 1.0;
    }
    let mut j = j0 - 1.0;
    for _ in 0..cap {
        if j < 0.0 {
            break;
        }
        let w = ln_w(j).exp();
        let t = w * factor(j);
        sum += t;
        let bound = if upper { t } else { w };
        if bound <= tol * sum {
            break;
        }
        j -= 1.0;
    }
    let sum = sum.clamp(0.0, 1.0);
    if upper {
        (1.0 - sum, sum)
    } else {
        (sum, 1.0 - sum)
    }
}
