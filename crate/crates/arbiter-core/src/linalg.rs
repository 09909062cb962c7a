//! Integer matrices of the strong arbitrages in the row-vector convention
//! `v ↦ v·M`, the change of basis to (l₁, l₂, l₃, d₁, d₂, d₃), and the G/H
//! blocks that drive the discrepancy dynamics.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::Lin;
use crate::market::{strong, DISCREPANCY_FORMS};
use crate::reference;
use crate::RateEnsemble;

pub type IntMatrix6 = [[i64; 6]; 6];
pub type IntMatrix3 = [[i64; 3]; 3];

pub fn mul<const N: usize>(a: &[[i64; N]; N], b: &[[i64; N]; N]) -> [[i64; N]; N] {
    let mut out = [[0i64; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn identity<const N: usize>() -> [[i64; N]; N] {
    let mut m = [[0i64; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn transpose<const N: usize>(m: &[[i64; N]; N]) -> [[i64; N]; N] {
    let mut t = [[0i64; N]; N];
    for i in 0..N {
        for j in 0..N {
            t[j][i] = m[i][j];
        }
    }
    t
}

/// Row vector times matrix over lattice scalars.
pub fn vec_mul_lin<const N: usize>(v: &[Lin; N], m: &[[i64; N]; N]) -> [Lin; N] {
    std::array::from_fn(|j| {
        let mut acc = Lin::ZERO;
        for i in 0..N {
            acc += v[i] * m[i][j];
        }
        acc
    })
}

pub fn vec_mul_f64<const N: usize>(v: &[f64; N], m: &[[i64; N]; N]) -> [f64; N] {
    std::array::from_fn(|j| (0..N).map(|i| v[i] * m[i][j] as f64).sum())
}

pub fn vec_mul_i64<const N: usize>(v: &[i64; N], m: &[[i64; N]; N]) -> [i64; N] {
    std::array::from_fn(|j| (0..N).map(|i| v[i] * m[i][j]).sum())
}

/// Rank of a small integer matrix by fraction-free elimination.
pub fn rank<const N: usize>(m: &[[i64; N]; N]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..N {
        let Some(p) = (r..N).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in 0..N {
            if i != r && a[i][c] != 0 {
                let (f, g) = (a[i][c], a[r][c]);
                for j in 0..N {
                    a[i][j] = a[i][j] * g - a[r][j] * f;
                }
            }
        }
        r += 1;
    }
    r
}

/// B⁽ⁱ⁾ derived from the action: identity except the affected column, which
/// carries the new-value form.
pub fn derive_b(i: usize) -> Result<IntMatrix6> {
    let s = strong(i)?;
    let mut m: IntMatrix6 = identity();
    let col = s.pair.slot();
    for (row, w) in m.iter_mut().zip(s.form) {
        row[col] = w as i64;
    }
    Ok(m)
}

/// Change of basis `(log R)·Q = v(R)` and its inverse.
pub fn derive_q() -> (IntMatrix6, IntMatrix6) {
    let mut q: IntMatrix6 = identity();
    for (k, f) in DISCREPANCY_FORMS.iter().enumerate() {
        for r in 0..6 {
            q[r][3 + k] = f[r] as i64;
        }
    }
    // v = l·Q keeps l₁..l₃ and replaces l₄..l₆ by d; solve back for l₄..l₆.
    let mut qinv: IntMatrix6 = identity();
    for (k, f) in DISCREPANCY_FORMS.iter().enumerate() {
        // l_{4+k} = d_k − (terms in l₁..l₃)
        for r in 0..3 {
            qinv[r][3 + k] = -(f[r] as i64);
        }
    }
    (q, qinv)
}

/// Cached matrix tables.
#[derive(Debug)]
pub struct Matrices {
    pub b: Vec<IntMatrix6>,
    pub q: IntMatrix6,
    pub qinv: IntMatrix6,
    pub d: Vec<IntMatrix6>,
    pub g: Vec<IntMatrix3>,
    pub h: Vec<IntMatrix3>,
}

fn build() -> Result<Matrices> {
    let (q, qinv) = derive_q();
    if mul(&q, &qinv) != identity() {
        return Err(Error::Internal("Q·Q⁻¹ ≠ I".into()));
    }
    let mut b = Vec::new();
    let mut d = Vec::new();
    let mut g = Vec::new();
    let mut h = Vec::new();
    for i in 1..=12 {
        let bi = derive_b(i)?;
        let di = mul(&mul(&qinv, &bi), &q);
        let (gi, hi) = split_blocks(&di).map_err(|e| Error::Internal(format!("strong {i}: {e}")))?;
        b.push(bi);
        d.push(di);
        g.push(gi);
        h.push(hi);
    }
    Ok(Matrices { b, q, qinv, d, g, h })
}

/// Splits D into the lower blocks after checking the upper ones are [I | 0].
pub fn split_blocks(d: &IntMatrix6) -> std::result::Result<(IntMatrix3, IntMatrix3), String> {
    for r in 0..3 {
        for c in 0..6 {
            let want = i64::from(r == c);
            if d[r][c] != want {
                return Err(format!("upper block entry ({r},{c}) = {}", d[r][c]));
            }
        }
    }
    let g = std::array::from_fn(|r| std::array::from_fn(|c| d[3 + r][3 + c]));
    let h = std::array::from_fn(|r| std::array::from_fn(|c| d[3 + r][c]));
    Ok((g, h))
}

pub fn matrices() -> &'static Matrices {
    static M: OnceLock<Matrices> = OnceLock::new();
    M.get_or_init(|| build().expect("matrix derivation is internally consistent"))
}

pub fn b_matrix(i: usize) -> Result<IntMatrix6> {
    check_index(i)?;
    Ok(matrices().b[i - 1])
}

pub fn q_matrices() -> (IntMatrix6, IntMatrix6) {
    let m = matrices();
    (m.q, m.qinv)
}

pub fn decompose_d(i: usize) -> Result<(IntMatrix3, IntMatrix3)> {
    check_index(i)?;
    let m = matrices();
    Ok((m.g[i - 1], m.h[i - 1]))
}

pub fn g(i: usize) -> &'static IntMatrix3 {
    &matrices().g[i - 1]
}

pub fn h(i: usize) -> &'static IntMatrix3 {
    &matrices().h[i - 1]
}

fn check_index(i: usize) -> Result<()> {
    if (1..=12).contains(&i) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("strong arbitrage {i}")))
    }
}

/// v(R) = (l₁, l₂, l₃, d₁, d₂, d₃).
pub fn vector_v(r: &RateEnsemble) -> [f64; 6] {
    vec_mul_f64(&r.log_rates(), &matrices().q)
}

/// Change of (l₁, l₂, l₃) under strong arbitrage `i`: d·H⁽ⁱ⁾.
pub fn increment(r: &RateEnsemble, i: usize) -> Result<[f64; 3]> {
    check_index(i)?;
    Ok(vec_mul_f64(&r.discrepancies().values, h(i)))
}

pub fn increment_exact(d: &[Lin; 3], i: usize) -> [Lin; 3] {
    vec_mul_lin(d, h(i))
}

/// One published-vs-derived mismatch.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixDeviation {
    pub name: String,
    pub detail: String,
}

fn diff<const N: usize>(name: &str, printed: &[[i64; N]; N], derived: &[[i64; N]; N]) -> Option<MatrixDeviation> {
    if printed == derived {
        return None;
    }
    let cells: Vec<String> = (0..N)
        .flat_map(|r| (0..N).map(move |c| (r, c)))
        .filter(|&(r, c)| printed[r][c] != derived[r][c])
        .map(|(r, c)| format!("({},{}) printed {} derived {}", r + 1, c + 1, printed[r][c], derived[r][c]))
        .collect();
    Some(MatrixDeviation { name: name.into(), detail: cells.join("; ") })
}

/// Every published matrix that differs from its derivation.
pub fn published_deviations() -> Vec<MatrixDeviation> {
    let m = matrices();
    let mut out = Vec::new();
    for i in 0..12 {
        out.extend(diff(&format!("B{}", i + 1), &reference::B_PRINTED[i], &m.b[i]));
    }
    if let Some(mut d) = diff("Q", &reference::Q_PRINTED, &m.q) {
        let t = transpose(&m.q);
        d.detail = match diff("Q", &reference::Q_PRINTED, &t) {
            Some(dt) => format!("printed Q is the column-convention transpose except {}", dt.detail),
            None => "printed Q is the column-convention transpose".into(),
        };
        out.push(d);
    }
    out.extend(diff("Qinv", &reference::QINV_PRINTED, &m.qinv));
    for i in 0..12 {
        out.extend(diff(&format!("G{}", i + 1), &reference::G_PRINTED[i], &m.g[i]));
        out.extend(diff(&format!("H{}", i + 1), &reference::H_PRINTED[i], &m.h[i]));
    }
    out
}
