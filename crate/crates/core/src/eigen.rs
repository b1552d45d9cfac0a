//! Cyclic Jacobi eigensolver for small dense symmetric / Hermitian matrices.
//!
//! This is deliberately generic numerics with no knowledge of the two-qubit
//! structure, so it can serve as an independent check on closed forms.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix, ascending.
///
/// Only the upper triangle is read.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for i in 0..n {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= f64::EPSILON * f64::EPSILON * scale || off == 0.0 {
            break;
        }

        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// `H = A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`, whose
/// spectrum is that of `H` with every eigenvalue doubled.
pub fn hermitian_eigenvalues<const N: usize>(h: &[[Complex64; N]; N]) -> Vec<f64> {
    let n2 = 2 * N;
    let mut m = vec![vec![0.0; n2]; n2];
    for i in 0..N {
        for j in 0..N {
            let z = h[i][j];
            m[i][j] = z.re;
            m[i + N][j + N] = z.re;
            m[i][j + N] = -z.im;
            m[i + N][j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(m);
    doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}
