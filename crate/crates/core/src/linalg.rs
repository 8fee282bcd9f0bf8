//! Small dense helpers for 2×2 complex matrices.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Row-major 2×2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

pub const UNITARY_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub fn identity() -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

pub fn pauli_x() -> Mat2 {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn pauli_y() -> Mat2 {
    [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn pauli_z() -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

pub fn hadamard() -> Mat2 {
    let h = c(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// √X = ½[[1+i, 1−i], [1−i, 1+i]].
pub fn sqrt_x() -> Mat2 {
    [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]]
}

/// Rz(λ) = diag(e^{−iλ/2}, e^{iλ/2}).
pub fn rz(lambda: f64) -> Mat2 {
    [[cis(-lambda / 2.0), c(0.0, 0.0)], [c(0.0, 0.0), cis(lambda / 2.0)]]
}

pub fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

/// diag(1, e^{iφ}); `phase(2π/2^k)` is the R_k gate.
pub fn phase(phi: f64) -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), cis(phi)]]
}

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn scale(a: &Mat2, s: Complex64) -> Mat2 {
    [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]]
}

pub fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Max-abs entry of `a − b`.
pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

/// ‖U†U − I‖∞ (max-abs entry).
pub fn unitarity_defect(u: &Mat2) -> f64 {
    max_abs_diff(&mul(&adjoint(u), u), &identity())
}

pub fn is_unitary(u: &Mat2) -> bool {
    unitarity_defect(u) <= UNITARY_TOL
}

/// Equal up to a global phase, within `tol` on every entry.
pub fn equal_up_to_phase(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    // pick the largest entry of b to fix the phase
    let (mut bi, mut bj, mut best) = (0, 0, 0.0);
    for (i, row) in b.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.norm() > best {
                best = x.norm();
                bi = i;
                bj = j;
            }
        }
    }
    if best == 0.0 || a[bi][bj].norm() == 0.0 {
        return max_abs_diff(a, b) <= tol;
    }
    let ph = a[bi][bj] / b[bi][bj];
    let ph = ph / ph.norm();
    max_abs_diff(a, &scale(b, ph)) <= tol
}

/// Euler angles with `u = e^{iα} · Rz(β) · Ry(γ) · Rz(δ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZyzAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

pub fn zyz_decompose(u: &Mat2) -> ZyzAngles {
    let alpha = det(u).arg() / 2.0;
    let v = scale(u, cis(-alpha));
    // v = [[a, -b*], [b, a*]] with a = e^{-i(β+δ)/2} cos(γ/2), b = e^{i(β-δ)/2} sin(γ/2)
    let a = v[0][0];
    let b = v[1][0];
    let gamma = 2.0 * b.norm().atan2(a.norm());
    let sum = if a.norm() > 1e-12 { -2.0 * a.arg() } else { 0.0 };
    let diff = if b.norm() > 1e-12 { 2.0 * b.arg() } else { 0.0 };
    ZyzAngles {
        alpha,
        beta: (sum + diff) / 2.0,
        gamma,
        delta: (sum - diff) / 2.0,
    }
}

impl ZyzAngles {
    pub fn to_matrix(&self) -> Mat2 {
        let m = mul(&mul(&rz(self.beta), &ry(self.gamma)), &rz(self.delta));
        scale(&m, cis(self.alpha))
    }
}

/// A unitary square root `V` with `V·V = U`.
pub fn sqrt_unitary(u: &Mat2) -> Mat2 {
    let tr = u[0][0] + u[1][1];
    let mut s = det(u).sqrt();
    let mut t = (tr + s * 2.0).sqrt();
    if t.norm() < 1e-8 {
        s = -s;
        t = (tr + s * 2.0).sqrt();
    }
    [
        [(u[0][0] + s) / t, u[0][1] / t],
        [u[1][0] / t, (u[1][1] + s) / t],
    ]
}
