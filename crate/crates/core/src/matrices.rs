//! Walsh matrices (Sylvester-Hadamard and Fourier) and the linear map
//! `xi_N` built from them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DmlError, Result};
use crate::exponents::Exponent;

/// Scalar field of a matrix or multilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// A symmetric matrix with unimodular entries and pairwise-orthogonal
/// columns (inner product `N * delta`). Hadamard matrices carry exact
/// `+-1` entries; Fourier matrices are complex roots of unity.
#[derive(Debug, Clone, PartialEq)]
pub struct WalshMatrix {
    dimension: usize,
    field: Field,
    // row-major, entry(k, r) at k * dimension + r
    entries: Vec<Complex64>,
}

impl WalshMatrix {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn entry(&self, k: usize, r: usize) -> Complex64 {
        self.entries[k * self.dimension + r]
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.entries[k * self.dimension..(k + 1) * self.dimension]
    }

    /// Plain grid serialization: integers for the real case, `[re, im]`
    /// pairs for the complex case.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.dimension)
            .map(|k| {
                let row: Vec<serde_json::Value> = self
                    .row(k)
                    .iter()
                    .map(|z| match self.field {
                        Field::Real => serde_json::json!(z.re as i64),
                        Field::Complex => serde_json::json!([z.re, z.im]),
                    })
                    .collect();
                serde_json::json!(row)
            })
            .collect();
        serde_json::json!({
            "dimension": self.dimension,
            "field": self.field,
            "entries": rows,
        })
    }
}

/// Sylvester-type Hadamard matrix of size `N = 2^m`, built by the block
/// recursion `A_{2N} = [[A, A], [A, -A]]` with `A_2 = [[1,1],[1,-1]]`.
pub fn hadamard(n: usize) -> Result<WalshMatrix> {
    if n < 2 || !n.is_power_of_two() {
        return Err(DmlError::InvalidArgument(format!(
            "Hadamard dimension must be a power of two >= 2, got {n}"
        )));
    }
    let mut size = 2usize;
    let mut entries = vec![1.0f64, 1.0, 1.0, -1.0];
    while size < n {
        let double = size * 2;
        let mut next = vec![0.0f64; double * double];
        for k in 0..size {
            for r in 0..size {
                let v = entries[k * size + r];
                next[k * double + r] = v;
                next[k * double + r + size] = v;
                next[(k + size) * double + r] = v;
                next[(k + size) * double + r + size] = -v;
            }
        }
        entries = next;
        size = double;
    }
    Ok(WalshMatrix {
        dimension: n,
        field: Field::Real,
        entries: entries.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
    })
}

/// Fourier matrix with entries `exp(2 pi i r k / N)`, 1-based indices.
pub fn fourier(n: usize) -> Result<WalshMatrix> {
    if n == 0 {
        return Err(DmlError::InvalidArgument("Fourier dimension must be >= 1".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for k in 1..=n {
        for r in 1..=n {
            // reduce r*k mod N before taking the angle to keep the entries
            // on the unit circle to full precision
            let phase = 2.0 * std::f64::consts::PI * ((r * k) % n) as f64 / n as f64;
            entries.push(Complex64::new(phase.cos(), phase.sin()));
        }
    }
    Ok(WalshMatrix {
        dimension: n,
        field: Field::Complex,
        entries,
    })
}

/// Outcome of checking the Walsh axioms on a candidate matrix.
#[derive(Debug, Clone, Serialize)]
pub struct WalshReport {
    pub dimension: usize,
    pub pass: bool,
    pub tol: f64,
    pub max_unimodularity_residual: f64,
    pub max_symmetry_residual: f64,
    pub max_orthogonality_residual: f64,
}

impl WalshReport {
    pub fn max_residual(&self) -> f64 {
        self.max_unimodularity_residual
            .max(self.max_symmetry_residual)
            .max(self.max_orthogonality_residual)
    }
}

/// Checks unimodularity, symmetry, and column orthogonality
/// (`sum_r a_{rk} conj(a_{rl}) = N delta_{k,l}`). Failures are reported,
/// not thrown; integer Hadamard matrices pass with `tol = 0`.
pub fn verify_walsh(a: &WalshMatrix, tol: f64) -> WalshReport {
    let n = a.dimension;
    let mut uni = 0.0f64;
    let mut sym = 0.0f64;
    let mut orth = 0.0f64;
    for k in 0..n {
        for r in 0..n {
            uni = uni.max((a.entry(k, r).norm() - 1.0).abs());
            sym = sym.max((a.entry(k, r) - a.entry(r, k)).norm());
        }
    }
    for k in 0..n {
        for l in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for r in 0..n {
                s += a.entry(r, k) * a.entry(r, l).conj();
            }
            let expected = if k == l { n as f64 } else { 0.0 };
            orth = orth.max((s - Complex64::new(expected, 0.0)).norm());
        }
    }
    WalshReport {
        dimension: n,
        pass: uni <= tol && sym <= tol && orth <= tol,
        tol,
        max_unimodularity_residual: uni,
        max_symmetry_residual: sym,
        max_orthogonality_residual: orth,
    }
}

/// Applies `xi_N(x) = sum_k (sum_r conj(a_{kr}) x(r)) e_k`.
pub fn apply_xi(a: &WalshMatrix, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.dimension;
    if x.len() != n {
        return Err(DmlError::DimensionMismatch { expected: n, got: x.len() });
    }
    Ok((0..n)
        .map(|k| {
            let mut s = Complex64::new(0.0, 0.0);
            for r in 0..n {
                s += a.entry(k, r).conj() * x[r];
            }
            s
        })
        .collect())
}

/// Upper bound `N^{1/p'}` for the norm of `xi_N` from `lp^N` to `linf^N`.
pub fn xi_norm_bound(p: Exponent, n: usize) -> f64 {
    let inv_conj = p.conjugate().reciprocal();
    let e = *inv_conj.numer() as f64 / *inv_conj.denom() as f64;
    (n as f64).powf(e)
}
