//! Eigensolvers for the small matrices used throughout the crate.
//!
//! Hermitian problems go through cyclic complex Jacobi rotations, which are
//! unconditionally stable and give orthonormal eigenvectors to machine
//! precision at these sizes. Non-Hermitian spectra (the Wootters product
//! `ρ F ρ* F`) use Householder reduction to Hessenberg form followed by a
//! single-shift complex QR iteration.

use crate::error::{Error, Result};

use super::matrix::{c64, ComplexMatrix, C64};

pub const MAX_SIDE: usize = 16;
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;
const QR_ITERATIONS_PER_EIGENVALUE: usize = 60;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Rebuilds `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.vectors[(j, k)].conj() * fv[k])
                .sum()
        })
    }
}

fn check_side(n: usize) -> Result<()> {
    if n > MAX_SIDE {
        return Err(Error::Shape(format!("side {n} exceeds the supported maximum {MAX_SIDE}")));
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigendecomposition(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.ensure_square()?;
    check_side(n)?;
    let asym = h.hermiticity_error();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }

    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Jacobi eigensolver exceeded {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let n = a.rows();
    // Phase that makes the pivot real, then a real symmetric rotation.
    let phase = apq / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let u_pp = c64(c, 0.0);
    let u_pq = c64(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = C64::default();
    a[(q, p)] = C64::default();
    a[(p, p)] = c64(a[(p, p)].re, 0.0);
    a[(q, q)] = c64(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Eigenvalues of a general square matrix, in no particular order.
pub fn general_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = m.ensure_square()?;
    check_side(n)?;
    match n {
        1 => Ok(vec![m[(0, 0)]]),
        2 => Ok(quadratic_roots(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]).to_vec()),
        _ => {
            let mut h = m.clone();
            hessenberg_in_place(&mut h);
            shifted_qr(h)
        }
    }
}

/// Roots of the characteristic polynomial of `[[a, b], [c, d]]`.
fn quadratic_roots(a: C64, b: C64, c: C64, d: C64) -> [C64; 2] {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    [half_tr + root, half_tr - root]
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg_in_place(h: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm < 1e-300 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { c64(1.0, 0.0) };
        let mut w = x.clone();
        w[0] += phase * alpha_norm;
        let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if wn < 1e-300 {
            continue;
        }
        for z in &mut w {
            *z /= wn;
        }
        // H <- (I - 2ww†) H
        for j in 0..n {
            let dot: C64 = (0..w.len()).map(|i| w[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..w.len() {
                h[(k + 1 + i, j)] -= w[i] * dot * 2.0;
            }
        }
        // H <- H (I - 2ww†)
        for i in 0..n {
            let dot: C64 = (0..w.len()).map(|j| h[(i, k + 1 + j)] * w[j]).sum();
            for j in 0..w.len() {
                h[(i, k + 1 + j)] -= dot * w[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::default();
        }
    }
}

/// Single-shift complex QR on an upper Hessenberg matrix with deflation.
fn shifted_qr(mut h: ComplexMatrix) -> Result<Vec<C64>> {
    let n = h.rows();
    let mut eig = vec![C64::default(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut since_deflation = 0usize;
    let max_iter = QR_ITERATIONS_PER_EIGENVALUE * n;
    let norm = h.max_abs().max(f64::MIN_POSITIVE);

    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // Find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * diag.max(norm * 1e-3) {
                h[(lo, lo - 1)] = C64::default();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if lo + 1 == hi {
            let [r1, r2] = quadratic_roots(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eig[lo] = r1;
            eig[hi] = r2;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            since_deflation = 0;
            continue;
        }

        iter += 1;
        since_deflation += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence("shifted QR eigenvalue iteration".into()));
        }

        let shift = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + c64(h[(hi, hi - 1)].norm() * 0.75, h[(hi - 1, hi - 1)].norm() * 0.25)
        } else {
            // Wilkinson: eigenvalue of the trailing 2x2 closest to the corner.
            let [r1, r2] = quadratic_roots(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            );
            if (r1 - h[(hi, hi)]).norm() < (r2 - h[(hi, hi)]).norm() {
                r1
            } else {
                r2
            }
        };

        qr_step(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

/// One shifted QR sweep on the active block `lo..=hi` using Givens rotations.
/// Only eigenvalues are wanted, so the deflated parts are left untouched.
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: C64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r < 1e-300 {
            (c64(1.0, 0.0), C64::default())
        } else {
            (a / r, b / r)
        };
        // G = [[c*, s*], [-s, c]] applied to rows k, k+1
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = c.conj() * x + s.conj() * y;
            h[(k + 1, j)] = -s * x + c * y;
        }
        rots.push((c, s));
    }
    for (k, &(c, s)) in (lo..hi).zip(&rots) {
        // R G† on columns k, k+1
        for i in lo..=(k + 1) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s;
            h[(i, k + 1)] = -x * s.conj() + y * c.conj();
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Singular values of an arbitrary matrix, descending, by one-sided
/// (Hestenes) Jacobi. Working on the columns directly avoids squaring the
/// matrix, so singular values near zero keep an absolute error of order
/// `eps·‖A‖`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (rows, cols) = (m.rows(), m.cols());
    check_side(rows.max(cols))?;
    let mut a: Vec<Vec<C64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut converged = cols < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in p + 1..cols {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || g < 1e-300 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;
                for k in 0..rows {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = x * c + y * u_qp;
                    a[q][k] = x * s + y * u_qq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD".into()));
    }
    let mut sv: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Clamp threshold for slightly negative eigenvalues of density operators.
pub const PSD_CLAMP: f64 = 1e-8;

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in `[-1e-8, 0)` are treated as zero, and so are positive
/// ones at rounding level relative to the largest, whose square roots would
/// otherwise be far above rounding.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigendecomposition(m)?;
    if let Some(&worst) = eig.values.iter().find(|&&x| x < -PSD_CLAMP) {
        return Err(Error::NotPositive(worst));
    }
    let top = eig.values.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let floor = top * f64::EPSILON * 16.0 * m.rows() as f64;
    Ok(eig.map_spectrum(|x| if x > floor { x.sqrt() } else { 0.0 }))
}
