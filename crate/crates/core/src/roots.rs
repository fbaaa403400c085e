//! Roots of small dense complex polynomials via companion-matrix
//! eigenvalues, polished with Newton steps.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Evaluates a dense ascending coefficient list and its derivative.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn newton_polish(coeffs: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 || !p.is_finite() {
            break;
        }
        let next = z - p / dp;
        if !next.is_finite() {
            break;
        }
        // Keep the step only if it does not increase the residual.
        if horner(coeffs, next).0.norm() <= p.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}

/// All complex roots of `sum coeffs[k] z^k`, with multiplicity, after
/// dropping leading coefficients of modulus `<= lead_tol`. Order follows
/// the eigenvalue solver and is deterministic.
pub fn roots(coeffs: &[Complex64], lead_tol: f64, polish_steps: usize) -> Vec<Complex64> {
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].norm() <= lead_tol {
        deg -= 1;
    }
    if deg <= 1 {
        return Vec::new();
    }
    let c = &coeffs[..deg];
    let n = deg - 1;
    let lead = c[n];
    let found: Vec<Complex64> = match n {
        1 => vec![-c[0] / lead],
        2 => {
            let (a, b, cc) = (lead, c[1], c[0]);
            let disc = (b * b - 4.0 * a * cc).sqrt();
            // Avoid cancellation.
            let q = if (b.conj() * disc).re >= 0.0 {
                -(b + disc) / 2.0
            } else {
                -(b - disc) / 2.0
            };
            if q.norm() == 0.0 {
                vec![Complex64::new(0.0, 0.0); 2]
            } else {
                vec![q / a, cc / q]
            }
        }
        _ => {
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for i in 1..n {
                m[(i, i - 1)] = Complex64::new(1.0, 0.0);
            }
            for i in 0..n {
                m[(i, n - 1)] = -c[i] / lead;
            }
            let schur = m.schur();
            let (_, t) = schur.unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
    };
    found.into_iter().map(|z| newton_polish(c, z, polish_steps)).collect()
}

/// Merges roots closer than `tol`, keeping the first representative.
pub fn dedup(values: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(values.len());
    for z in values {
        if !out.iter().any(|w| (w - z).norm() < tol) {
            out.push(z);
        }
    }
    out
}

/// Sorts by real part, then imaginary part.
pub fn sort_lex(values: &mut [Complex64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}
