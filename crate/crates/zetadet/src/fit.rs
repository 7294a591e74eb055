//! Small complex least-squares fits for power-law tails.

use num_complex::Complex64;

/// Least-squares coefficients `c` minimising `Σ_i |Σ_j c_j A_ij − y_i|²`,
/// by normal equations and partially pivoted elimination. Returns `None`
/// when the system is singular.
pub(crate) fn least_squares(rows: &[Vec<Complex64>], y: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = rows.first()?.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    for (row, &yi) in rows.iter().zip(y) {
        for p in 0..n {
            let cp = row[p].conj();
            for q in 0..n {
                m[p][q] += cp * row[q];
            }
            m[p][n] += cp * yi;
        }
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if m[piv][col].norm() == 0.0 {
            return None;
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..=n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n];
        for c in r + 1..n {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_coefficients() {
        let c = [Complex64::new(1.0, 0.5), Complex64::new(-2.0, 0.0), Complex64::new(0.25, -1.0)];
        let xs: Vec<f64> = (1..=8).map(|i| i as f64).collect();
        let rows: Vec<Vec<Complex64>> = xs.iter().map(|&x| (0..3).map(|j| Complex64::new(x.powi(-j), 0.0)).collect()).collect();
        let y: Vec<Complex64> = rows.iter().map(|r| r.iter().zip(&c).map(|(a, b)| a * b).sum()).collect();
        let got = least_squares(&rows, &y).unwrap();
        for (g, w) in got.iter().zip(&c) {
            assert!((g - w).norm() < 1e-12);
        }
    }
}
