//! Finite-dimensional multilinear objects: dense forms, diagonal operators,
//! the all-ones form `Phi_N`, the Bohnenblust-Hille form `L_N`, and slot-wise
//! precomposition with linear maps.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DmlError, Result};
use crate::exponents::Exponent;
use crate::matrices::{Field, WalshMatrix};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Guard for dense materialization: refuse instances above 10^7 scalars.
pub const MAX_DENSE_COEFFS: usize = 10_000_000;

/// A dense order-`n` array of scalars on `(K^N)^n`, evaluated multilinearly.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseForm {
    arity: usize,
    dimension: usize,
    field: Field,
    // row-major: index (j_1, ..., j_n) at sum j_s * N^(n-1-s)
    coeffs: Vec<Complex64>,
}

impl DenseForm {
    pub fn new(arity: usize, dimension: usize, field: Field, coeffs: Vec<Complex64>) -> Result<Self> {
        let len = checked_len(arity, dimension)?;
        if coeffs.len() != len {
            return Err(DmlError::DimensionMismatch { expected: len, got: coeffs.len() });
        }
        if field == Field::Real && coeffs.iter().any(|z| z.im != 0.0) {
            return Err(DmlError::FieldMismatch);
        }
        Ok(DenseForm { arity, dimension, field, coeffs })
    }

    pub fn zeros(arity: usize, dimension: usize, field: Field) -> Result<Self> {
        let len = checked_len(arity, dimension)?;
        Ok(DenseForm { arity, dimension, field, coeffs: vec![ZERO; len] })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, index: &[usize]) -> Complex64 {
        self.coeffs[self.flat_index(index)]
    }

    pub fn coeff_mut(&mut self, index: &[usize]) -> &mut Complex64 {
        let i = self.flat_index(index);
        &mut self.coeffs[i]
    }

    fn flat_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.arity);
        index.iter().fold(0, |acc, &j| acc * self.dimension + j)
    }

    /// `sum c[j_1,...,j_n] x_1(j_1) ... x_n(j_n)`.
    pub fn evaluate(&self, xs: &[&[Complex64]]) -> Result<Complex64> {
        if xs.len() != self.arity {
            return Err(DmlError::ArityMismatch { expected: self.arity, got: xs.len() });
        }
        for x in xs {
            if x.len() != self.dimension {
                return Err(DmlError::DimensionMismatch {
                    expected: self.dimension,
                    got: x.len(),
                });
            }
        }
        let n = self.dimension;
        let mut cur = self.coeffs.clone();
        for x in xs.iter().rev() {
            let m = cur.len() / n;
            let mut next = vec![ZERO; m];
            for (i, chunk) in cur.chunks_exact(n).enumerate() {
                let mut s = ZERO;
                for (c, v) in chunk.iter().zip(x.iter()) {
                    s += c * v;
                }
                next[i] = s;
            }
            cur = next;
        }
        Ok(cur[0])
    }

    /// The linear functional induced on slot `skip` when every other slot is
    /// fixed: `gamma(j) = T(x_1, ..., e_j at slot skip, ..., x_n)`.
    pub fn slot_functional(&self, xs: &[&[Complex64]], skip: usize) -> Result<Vec<Complex64>> {
        if xs.len() != self.arity {
            return Err(DmlError::ArityMismatch { expected: self.arity, got: xs.len() });
        }
        let n = self.dimension;
        let mut gamma = vec![ZERO; n];
        let mut index = vec![0usize; self.arity];
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                // decompose the flat index once per nonzero coefficient
                let mut rem = flat;
                for s in (0..self.arity).rev() {
                    index[s] = rem % n;
                    rem /= n;
                }
                let mut prod = *c;
                for (s, x) in xs.iter().enumerate() {
                    if s != skip {
                        prod *= x[index[s]];
                    }
                }
                gamma[index[skip]] += prod;
            }
        }
        Ok(gamma)
    }

    /// Precomposes the form slot-by-slot with linear maps:
    /// `(x_1, ..., x_n) -> T(M_1 x_1, ..., M_n x_n)`.
    pub fn precompose(&self, maps: &[SlotMap]) -> Result<DenseForm> {
        if maps.len() != self.arity {
            return Err(DmlError::ArityMismatch { expected: self.arity, got: maps.len() });
        }
        let n = self.dimension;
        let mut out = self.clone();
        for (slot, map) in maps.iter().enumerate() {
            match map {
                SlotMap::Identity => {}
                SlotMap::Map(m) => {
                    if m.rows != n || m.cols != n {
                        return Err(DmlError::DimensionMismatch { expected: n, got: m.rows.max(m.cols) });
                    }
                    out.contract_slot_with(slot, m);
                }
            }
        }
        Ok(out)
    }

    // c'[.., i_slot, ..] = sum_j m[j][i_slot] * c[.., j, ..]
    fn contract_slot_with(&mut self, slot: usize, m: &LinearMap) {
        let n = self.dimension;
        let inner: usize = n.pow((self.arity - 1 - slot) as u32);
        let outer = self.coeffs.len() / (n * inner);
        let mut next = vec![ZERO; self.coeffs.len()];
        for o in 0..outer {
            for j in 0..n {
                let src = (o * n + j) * inner;
                for i in 0..n {
                    let w = m.entry(j, i);
                    if w.re != 0.0 || w.im != 0.0 {
                        let dst = (o * n + i) * inner;
                        for t in 0..inner {
                            next[dst + t] += w * self.coeffs[src + t];
                        }
                    }
                }
            }
        }
        self.coeffs = next;
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "arity": self.arity,
            "dimension": self.dimension,
            "field": self.field,
            "coefficients": self.coeffs.iter().map(|z| match self.field {
                Field::Real => serde_json::json!(z.re),
                Field::Complex => serde_json::json!([z.re, z.im]),
            }).collect::<Vec<_>>(),
        })
    }
}

fn checked_len(arity: usize, dimension: usize) -> Result<usize> {
    if arity == 0 || dimension == 0 {
        return Err(DmlError::InvalidArgument("arity and dimension must be >= 1".into()));
    }
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len
            .checked_mul(dimension)
            .filter(|&l| l <= MAX_DENSE_COEFFS)
            .ok_or_else(|| {
                DmlError::TooLarge(format!("N^n = {dimension}^{arity} exceeds {MAX_DENSE_COEFFS}"))
            })?;
    }
    Ok(len)
}

/// One linear map per slot for precomposition.
#[derive(Debug, Clone)]
pub enum SlotMap {
    Identity,
    Map(LinearMap),
}

/// Dense linear map between finite sections; `entry(j, i)` is the weight of
/// input coordinate `i` in output coordinate `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Complex64>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(DmlError::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        Ok(LinearMap { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = ONE;
        }
        LinearMap { rows: n, cols: n, entries }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = d[i];
        }
        LinearMap { rows: n, cols: n, entries }
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(DmlError::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut s = ZERO;
                for c in 0..self.cols {
                    s += self.entry(r, c) * x[c];
                }
                s
            })
            .collect())
    }
}

/// The matrix of `xi_N`: `(xi x)(k) = sum_r conj(a_{kr}) x(r)`.
pub fn xi_map(a: &WalshMatrix) -> LinearMap {
    let n = a.dimension();
    let entries = (0..n)
        .flat_map(|k| (0..n).map(move |r| a.entry(k, r).conj()))
        .collect();
    LinearMap { rows: n, cols: n, entries }
}

/// A linear map viewed as the bilinear form `(x, y) -> sum_k y(k) (M x)(k)`.
/// Pairing the output against `l1` realizes the `l_inf` target norm.
pub fn map_as_bilinear_form(m: &LinearMap, field: Field) -> Result<DenseForm> {
    if m.rows != m.cols {
        return Err(DmlError::InvalidArgument("map must be square".into()));
    }
    let n = m.rows;
    let mut form = DenseForm::zeros(2, n, field)?;
    for j in 0..n {
        for k in 0..n {
            *form.coeff_mut(&[j, k]) = m.entry(k, j);
        }
    }
    Ok(form)
}

/// A diagonal operator `T_alpha(x_1,...,x_n) = sum_k alpha(k) x_1(k)...x_n(k) e_k`
/// from `lp^N` to `lq^N` (finite section).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    pub arity: usize,
    pub alpha: Vec<Complex64>,
    pub p: Exponent,
    pub q: Exponent,
    pub field: Field,
}

impl DiagonalOperator {
    pub fn new(arity: usize, alpha: Vec<Complex64>, p: Exponent, q: Exponent) -> Result<Self> {
        if arity == 0 {
            return Err(DmlError::InvalidArgument("arity must be >= 1".into()));
        }
        if alpha.is_empty() {
            return Err(DmlError::InvalidArgument("alpha must be nonempty".into()));
        }
        let field = if alpha.iter().all(|z| z.im == 0.0) { Field::Real } else { Field::Complex };
        Ok(DiagonalOperator { arity, alpha, p, q, field })
    }

    pub fn real(arity: usize, alpha: &[f64], p: Exponent, q: Exponent) -> Result<Self> {
        Self::new(arity, alpha.iter().map(|&v| Complex64::new(v, 0.0)).collect(), p, q)
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    pub fn apply(&self, xs: &[&[Complex64]]) -> Result<Vec<Complex64>> {
        if xs.len() != self.arity {
            return Err(DmlError::ArityMismatch { expected: self.arity, got: xs.len() });
        }
        let n = self.dimension();
        for x in xs {
            if x.len() != n {
                return Err(DmlError::DimensionMismatch { expected: n, got: x.len() });
            }
        }
        Ok((0..n)
            .map(|k| xs.iter().fold(self.alpha[k], |acc, x| acc * x[k]))
            .collect())
    }

    /// Materializes the scalar form `phi_alpha` (target paired away) as a
    /// dense order-`n` array supported on the diagonal.
    pub fn as_scalar_form(&self) -> Result<DenseForm> {
        let mut form = DenseForm::zeros(self.arity, self.dimension(), self.field)?;
        for k in 0..self.dimension() {
            let index = vec![k; self.arity];
            *form.coeff_mut(&index) = self.alpha[k];
        }
        Ok(form)
    }

    /// The associated `(n+1)`-linear scalar form pairing the target against
    /// `B_{l_{q'}}`; its sup norm equals the operator norm of `T_alpha`.
    pub fn associated_form(&self) -> Result<(DenseForm, Vec<Exponent>)> {
        let mut form = DenseForm::zeros(self.arity + 1, self.dimension(), self.field)?;
        for k in 0..self.dimension() {
            let index = vec![k; self.arity + 1];
            *form.coeff_mut(&index) = self.alpha[k];
        }
        let mut slots = vec![self.p; self.arity];
        slots.push(self.q.conjugate());
        Ok((form, slots))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "arity": self.arity,
            "dimension": self.dimension(),
            "field": self.field,
            "p": self.p,
            "q": self.q,
            "alpha": self.alpha.iter().map(|z| match self.field {
                Field::Real => serde_json::json!(z.re),
                Field::Complex => serde_json::json!([z.re, z.im]),
            }).collect::<Vec<_>>(),
        })
    }
}

/// The all-ones diagonal form `Phi_N(x_1,...,x_n) = sum_{k<=N} x_1(k)...x_n(k)`,
/// represented by its coefficient sequence on the first `N` coordinates.
pub fn phi_form(dimension: usize, arity: usize) -> Result<DiagonalOperator> {
    DiagonalOperator::new(
        arity,
        vec![ONE; dimension],
        Exponent::one(),
        Exponent::Infinity,
    )
}

/// The Bohnenblust-Hille-type `n`-linear form
/// `L_N(x_1,...,x_n) = sum_{j,k,l} a_{jl} a_{lk} x_1(j) x_2(k) x_3(l)...x_n(l)`,
/// materialized densely (coefficients supported on tuples `(j,k,l,...,l)`).
pub fn bh_form(a: &WalshMatrix, arity: usize) -> Result<DenseForm> {
    if arity < 3 {
        return Err(DmlError::InvalidArgument(format!(
            "the Bohnenblust-Hille form needs arity >= 3, got {arity}"
        )));
    }
    let n = a.dimension();
    let mut form = DenseForm::zeros(arity, n, a.field())?;
    let mut index = vec![0usize; arity];
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                index[0] = j;
                index[1] = k;
                for slot in index.iter_mut().skip(2) {
                    *slot = l;
                }
                *form.coeff_mut(&index) = a.entry(j, l) * a.entry(l, k);
            }
        }
    }
    Ok(form)
}

/// Fast evaluation of `L_N` through the triple-sum structure, without the
/// dense array: `sum_l (A x_1)(l) (A^T x_2)(l) x_3(l)...x_n(l)`.
pub fn bh_evaluate(a: &WalshMatrix, xs: &[&[Complex64]]) -> Result<Complex64> {
    if xs.len() < 3 {
        return Err(DmlError::ArityMismatch { expected: 3, got: xs.len() });
    }
    let n = a.dimension();
    for x in xs {
        if x.len() != n {
            return Err(DmlError::DimensionMismatch { expected: n, got: x.len() });
        }
    }
    let mut total = ZERO;
    for l in 0..n {
        let mut u = ZERO; // sum_j a_{jl} x_1(j)
        let mut v = ZERO; // sum_k a_{lk} x_2(k)
        for j in 0..n {
            u += a.entry(j, l) * xs[0][j];
            v += a.entry(l, j) * xs[1][j];
        }
        let mut tail = ONE;
        for x in xs.iter().skip(2) {
            tail *= x[l];
        }
        total += u * v * tail;
    }
    Ok(total)
}

/// Result of spot-checking the composition identity
/// `L_N(xi x_1, xi x_2, x_3,...,x_n) = N^2 sum_r x_1(r)...x_n(r)`.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub dimension: usize,
    pub arity: usize,
    pub field: Field,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_relative_residual: f64,
    pub pass: bool,
}

/// Compares both sides of the composition identity on seeded random inputs.
pub fn composition_identity_check(
    a: &WalshMatrix,
    arity: usize,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<CompositionReport> {
    use rand::{Rng, SeedableRng};
    if arity < 3 {
        return Err(DmlError::InvalidArgument("composition identity needs arity >= 3".into()));
    }
    let n = a.dimension();
    let complex = a.field() == Field::Complex;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut max_rel = 0.0f64;
    for _ in 0..trials {
        let xs: Vec<Vec<Complex64>> = (0..arity)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let re = rng.gen_range(-1.0..1.0);
                        let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
                        Complex64::new(re, im)
                    })
                    .collect()
            })
            .collect();
        let y1 = crate::matrices::apply_xi(a, &xs[0])?;
        let y2 = crate::matrices::apply_xi(a, &xs[1])?;
        let mut slots: Vec<&[Complex64]> = vec![&y1, &y2];
        for x in xs.iter().skip(2) {
            slots.push(x);
        }
        let lhs = bh_evaluate(a, &slots)?;
        let mut rhs = ZERO;
        for r in 0..n {
            let mut prod = ONE;
            for x in &xs {
                prod *= x[r];
            }
            rhs += prod;
        }
        rhs *= (n * n) as f64;
        let rel = (lhs - rhs).norm() / rhs.norm().max(1.0);
        max_rel = max_rel.max(rel);
    }
    Ok(CompositionReport {
        dimension: n,
        arity,
        field: a.field(),
        trials,
        seed,
        tol,
        max_relative_residual: max_rel,
        pass: max_rel <= tol,
    })
}
