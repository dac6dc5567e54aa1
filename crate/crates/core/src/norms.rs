//! Norm computation engines: exact closed forms for diagonal operators,
//! vertex brute force over `l_inf` balls, alternating ascent over `lp`
//! balls, weak-`s` norms, and partial `l_u` statistics. Every engine emits a
//! re-checkable certificate tagged exact, upper, or lower.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DmlError, Result};
use crate::exponents::{holder_r, Exponent, HolderResult};
use crate::multilinear::{DenseForm, DiagonalOperator, LinearMap, ZERO};
use crate::matrices::Field;

/// Default seed for every randomized engine; echoed in reports.
pub const DEFAULT_SEED: u64 = 1729;

/// Guard for vertex enumeration: `n * N` sign bits at most.
pub const VERTEX_GUARD_BITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Exact,
    Upper,
    Lower,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub label: String,
    pub value: f64,
}

/// Witness data that makes a certificate re-checkable.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    MaximizingVectors { slots: Vec<Vec<[f64; 2]>> },
    DualSequence { beta: Vec<[f64; 2]> },
    BoundChain { steps: Vec<ChainStep> },
}

pub fn to_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn from_pairs(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

/// A certified norm value.
#[derive(Debug, Clone, Serialize)]
pub struct NormCertificate {
    pub value: f64,
    pub kind: CertKind,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    /// Closed-form companion bound, attached when one is available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_upper: Option<f64>,
}

impl NormCertificate {
    pub fn exact(value: f64, method: &str) -> Self {
        NormCertificate {
            value,
            kind: CertKind::Exact,
            method: method.to_string(),
            witness: None,
            seed: None,
            iterations: None,
            converged: None,
            analytic_upper: None,
        }
    }

    pub fn upper(value: f64, method: &str) -> Self {
        NormCertificate { kind: CertKind::Upper, ..Self::exact(value, method) }
    }

    pub fn lower(value: f64, method: &str) -> Self {
        NormCertificate { kind: CertKind::Lower, ..Self::exact(value, method) }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }
}

/// `(sum |x_k|^u)^{1/u}`, or `max |x_k|` for `u = inf`.
pub fn lp_norm(x: &[Complex64], u: Exponent) -> f64 {
    match u {
        Exponent::Infinity => x.iter().map(|z| z.norm()).fold(0.0, f64::max),
        Exponent::Finite(r) => {
            let uf = *r.numer() as f64 / *r.denom() as f64;
            if uf == 1.0 {
                x.iter().map(|z| z.norm()).sum()
            } else if uf == 2.0 {
                x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
            } else {
                x.iter().map(|z| z.norm().powf(uf)).sum::<f64>().powf(1.0 / uf)
            }
        }
    }
}

/// Partial `l_u` statistic over the first `m` coefficients.
pub fn partial_lu_norm(alpha: &[Complex64], u: Exponent, m: usize) -> Result<f64> {
    if m > alpha.len() {
        return Err(DmlError::DimensionMismatch { expected: alpha.len(), got: m });
    }
    Ok(lp_norm(&alpha[..m], u))
}

/// Exact operator norm of a diagonal operator from `lp^N` to `lq^N`:
/// `||alpha||_inf` when `p <= nq`, otherwise `||alpha||_r` with
/// `1/r = 1/q - n/p`.
pub fn diagonal_norm_exact(op: &DiagonalOperator) -> Result<NormCertificate> {
    let u = match holder_r(op.p, op.q, op.arity)? {
        HolderResult::BoundedCase => Exponent::Infinity,
        HolderResult::FiniteExponent(r) => r,
    };
    let value = lp_norm(&op.alpha, u);
    let mut cert = NormCertificate::exact(value, "holder-closed-form");
    // the maximizing input is the Hoelder-equality vector in every slot
    if let Some(k) = argmax_modulus(&op.alpha) {
        let mut e = vec![ZERO; op.alpha.len()];
        e[k] = Complex64::new(1.0, 0.0);
        cert.witness = Some(Witness::MaximizingVectors { slots: vec![to_pairs(&e); op.arity] });
    }
    Ok(cert)
}

fn argmax_modulus(v: &[Complex64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if best.map_or(true, |(_, b)| m > b) {
            best = Some((i, m));
        }
    }
    best.map(|(i, _)| i)
}

/// Exact supremum of a real multilinear form over the `l_inf^N` polytope
/// ball in every slot, by enumerating the sign-vector vertices. Valid because
/// a multilinear form attains its maximum at extreme points.
pub fn vertex_bruteforce_norm(form: &DenseForm) -> Result<NormCertificate> {
    if form.field() != Field::Real {
        return Err(DmlError::InvalidArgument(
            "vertex enumeration is real-only; use alternating ascent for complex forms".into(),
        ));
    }
    let n = form.dimension();
    let arity = form.arity();
    if arity * n > VERTEX_GUARD_BITS {
        return Err(DmlError::TooLarge(format!(
            "vertex enumeration guard: n*N = {} > {VERTEX_GUARD_BITS}",
            arity * n
        )));
    }
    // the first slot is handled analytically: for fixed signs elsewhere the
    // form is linear there, and the l_inf maximizer is the sign vector of the
    // induced functional
    let free_bits = (arity - 1) * n;
    let mut best = 0.0f64;
    let mut best_slots: Vec<Vec<Complex64>> = Vec::new();
    let mut xs: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); n]; arity];
    for assignment in 0u64..(1u64 << free_bits) {
        for slot in 1..arity {
            for j in 0..n {
                let bit = (assignment >> ((slot - 1) * n + j)) & 1;
                xs[slot][j] = Complex64::new(if bit == 1 { -1.0 } else { 1.0 }, 0.0);
            }
        }
        let refs: Vec<&[Complex64]> = xs.iter().map(|v| v.as_slice()).collect();
        let gamma = form.slot_functional(&refs, 0)?;
        let value: f64 = gamma.iter().map(|z| z.re.abs()).sum();
        if value > best {
            best = value;
            let mut slots = xs.clone();
            slots[0] = gamma
                .iter()
                .map(|z| Complex64::new(if z.re < 0.0 { -1.0 } else { 1.0 }, 0.0))
                .collect();
            best_slots = slots;
        }
    }
    let mut cert = NormCertificate::exact(best, "vertex-enumeration");
    if !best_slots.is_empty() {
        cert.witness = Some(Witness::MaximizingVectors {
            slots: best_slots.iter().map(|v| to_pairs(v)).collect(),
        });
    }
    Ok(cert)
}

/// Exact norm of a diagonal operator with `p = inf` (all slots `l_inf`),
/// maximizing the target `l_q` norm over sign-vector vertices.
pub fn vertex_bruteforce_operator_norm(op: &DiagonalOperator) -> Result<NormCertificate> {
    if !op.p.is_infinite() {
        return Err(DmlError::InvalidArgument("vertex operator norm requires p = inf".into()));
    }
    if op.field != Field::Real {
        return Err(DmlError::InvalidArgument("vertex enumeration is real-only".into()));
    }
    let n = op.dimension();
    if op.arity * n > VERTEX_GUARD_BITS {
        return Err(DmlError::TooLarge(format!(
            "vertex enumeration guard: n*N = {} > {VERTEX_GUARD_BITS}",
            op.arity * n
        )));
    }
    // signs in the first slot cannot change |alpha_k x_1(k)...x_n(k)|, so it
    // stays all-ones while the remaining slots are enumerated
    let free_bits = (op.arity - 1) * n;
    let mut best = 0.0f64;
    let mut best_slots = vec![vec![Complex64::new(1.0, 0.0); n]; op.arity];
    let mut xs = best_slots.clone();
    for assignment in 0u64..(1u64 << free_bits) {
        for slot in 1..op.arity {
            for j in 0..n {
                let bit = (assignment >> ((slot - 1) * n + j)) & 1;
                xs[slot][j] = Complex64::new(if bit == 1 { -1.0 } else { 1.0 }, 0.0);
            }
        }
        let refs: Vec<&[Complex64]> = xs.iter().map(|v| v.as_slice()).collect();
        let image = op.apply(&refs)?;
        let value = lp_norm(&image, op.q);
        if value > best {
            best = value;
            best_slots = xs.clone();
        }
    }
    let cert = NormCertificate::exact(best, "vertex-enumeration").with_witness(
        Witness::MaximizingVectors { slots: best_slots.iter().map(|v| to_pairs(v)).collect() },
    );
    Ok(cert)
}

/// Options for the alternating-ascent lower-bound engine.
#[derive(Debug, Clone, Copy)]
pub struct AscentOptions {
    pub restarts: usize,
    pub tol: f64,
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions { restarts: 16, tol: 1e-10, max_sweeps: 500, seed: DEFAULT_SEED }
    }
}

/// Lower certificate for `sup |T(x_1,...,x_n)|` over the product of `lp_i`
/// balls: cycle the slots, replacing each by the exact Hoelder maximizer of
/// the induced linear functional, until the value stalls; best over restarts.
pub fn alternating_ascent_norm(
    form: &DenseForm,
    p_slots: &[Exponent],
    opts: &AscentOptions,
) -> Result<NormCertificate> {
    use rand::SeedableRng;
    let arity = form.arity();
    if p_slots.len() != arity {
        return Err(DmlError::ArityMismatch { expected: arity, got: p_slots.len() });
    }
    let n = form.dimension();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best_value = 0.0f64;
    let mut best_slots: Vec<Vec<Complex64>> = Vec::new();
    let mut total_sweeps = 0usize;
    let mut all_converged = true;

    for restart in 0..opts.restarts.max(1) {
        let mut xs: Vec<Vec<Complex64>> = (0..arity)
            .map(|slot| seed_vector(restart, n, p_slots[slot], &mut rng))
            .collect();
        let mut value = 0.0f64;
        let mut converged = false;
        for _ in 0..opts.max_sweeps {
            total_sweeps += 1;
            let prev = value;
            for slot in 0..arity {
                let refs: Vec<&[Complex64]> = xs.iter().map(|v| v.as_slice()).collect();
                let gamma = form.slot_functional(&refs, slot)?;
                let (x, v) = holder_maximizer(&gamma, p_slots[slot]);
                if v == 0.0 {
                    // the functional vanished; the current point is a dead end
                    value = 0.0;
                    break;
                }
                xs[slot] = x;
                value = v;
            }
            if value == 0.0 {
                converged = true;
                break;
            }
            if (value - prev).abs() <= opts.tol * value.max(1.0) {
                converged = true;
                break;
            }
        }
        all_converged &= converged;
        if value > best_value {
            best_value = value;
            best_slots = xs;
        }
    }

    let mut cert = NormCertificate::lower(best_value, "alternating-ascent");
    cert.seed = Some(opts.seed);
    cert.iterations = Some(total_sweeps);
    cert.converged = Some(all_converged);
    if !best_slots.is_empty() {
        cert.witness = Some(Witness::MaximizingVectors {
            slots: best_slots.iter().map(|v| to_pairs(v)).collect(),
        });
    }
    Ok(cert)
}

fn seed_vector(
    restart: usize,
    n: usize,
    p: Exponent,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<Complex64> {
    use rand::Rng;
    let mut x = vec![ZERO; n];
    if restart == 0 {
        for v in x.iter_mut() {
            *v = Complex64::new(1.0, 0.0);
        }
    } else if restart <= n {
        x[restart - 1] = Complex64::new(1.0, 0.0);
    } else {
        for v in x.iter_mut() {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        }
    }
    let norm = lp_norm(&x, p);
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    x
}

/// Exact maximizer of `|sum gamma_k x_k|` over the unit ball of `lp^N`,
/// together with the attained value `||gamma||_{p'}`.
pub fn holder_maximizer(gamma: &[Complex64], p: Exponent) -> (Vec<Complex64>, f64) {
    let value = lp_norm(gamma, p.conjugate());
    if value == 0.0 {
        return (vec![ZERO; gamma.len()], 0.0);
    }
    let x = match p {
        Exponent::Infinity => gamma
            .iter()
            .map(|z| if z.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { z.conj() / z.norm() })
            .collect(),
        Exponent::Finite(r) if r == num_rational::Ratio::from_integer(1) => {
            // extreme points of the l1 ball are phase multiples of canonical
            // vectors; ties break to the lowest index
            let k = argmax_modulus(gamma).unwrap();
            let mut e = vec![ZERO; gamma.len()];
            e[k] = gamma[k].conj() / gamma[k].norm();
            e
        }
        Exponent::Finite(r) => {
            let pf = *r.numer() as f64 / *r.denom() as f64;
            let exponent = pf / (pf - 1.0) - 1.0; // p' - 1
            let mut x: Vec<Complex64> = gamma
                .iter()
                .map(|z| {
                    let m = z.norm();
                    if m == 0.0 { ZERO } else { z.conj() / m * m.powf(exponent) }
                })
                .collect();
            let nrm = lp_norm(&x, p);
            for v in x.iter_mut() {
                *v /= nrm;
            }
            x
        }
    };
    (x, value)
}

/// Lower certificate for the norm of a diagonal operator via ascent on the
/// associated `(n+1)`-linear scalar form (target paired against `B_{l_{q'}}`).
pub fn diagonal_ascent_norm(op: &DiagonalOperator, opts: &AscentOptions) -> Result<NormCertificate> {
    let (form, slots) = op.associated_form()?;
    let mut cert = alternating_ascent_norm(&form, &slots, opts)?;
    cert.method = "alternating-ascent-associated-form".to_string();
    Ok(cert)
}

/// Lower certificate for `||M : lp -> lq||` via ascent on the bilinear form
/// `(x, y) -> sum_k y(k) (M x)(k)` with slot exponents `(p, q')`.
pub fn operator_norm_ascent(
    map: &LinearMap,
    p: Exponent,
    q: Exponent,
    field: Field,
    opts: &AscentOptions,
) -> Result<NormCertificate> {
    let dim = map.rows.max(map.cols);
    let mut form = DenseForm::zeros(2, dim, field)?;
    for j in 0..map.cols {
        for k in 0..map.rows {
            *form.coeff_mut(&[j, k]) = map.entry(k, j);
        }
    }
    alternating_ascent_norm(&form, &[p, q.conjugate()], opts)
}

/// Exact norm of `M : lp^N -> linf^M`: the largest dual norm of a row.
pub fn operator_norm_to_linf_exact(map: &LinearMap, p: Exponent) -> NormCertificate {
    let dual = p.conjugate();
    let mut best = 0.0f64;
    for k in 0..map.rows {
        let row: Vec<Complex64> = (0..map.cols).map(|c| map.entry(k, c)).collect();
        best = best.max(lp_norm(&row, dual));
    }
    NormCertificate::exact(best, "row-dual-norm")
}

/// The weak-`s` norm of a finite family of vectors in `lp^N`: the operator
/// norm of `gamma -> (gamma(x^{(k)}))_k` from `l_{p'}^N` to `l_s^M`.
pub fn weak_s_norm(vectors: &[Vec<Complex64>], s: Exponent, p: Exponent) -> Result<NormCertificate> {
    if vectors.is_empty() {
        return Err(DmlError::InvalidArgument("weak_s_norm needs at least one vector".into()));
    }
    let n = vectors[0].len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(DmlError::DimensionMismatch { expected: n, got: 0 });
    }
    let m = vectors.len();
    let p_dual = p.conjugate();

    if m == 1 {
        // one-term sum: sup over the dual ball of |gamma(x)| = ||x||_p
        return Ok(NormCertificate::exact(lp_norm(&vectors[0], p), "dual-pairing"));
    }

    if let Some(()) = distinct_canonical(vectors) {
        // identity-map norm l_{p'}^M -> l_s^M
        let value = if s >= p_dual {
            1.0
        } else {
            let e = s.reciprocal() - p_dual.reciprocal();
            (m as f64).powf(*e.numer() as f64 / *e.denom() as f64)
        };
        return Ok(NormCertificate::exact(value, "identity-map-closed-form"));
    }

    // general case: ascent lower bound with the triangle-inequality upper
    // bound (sum_k ||x^k||_p^s)^{1/s} attached
    let field = if vectors.iter().flatten().all(|z| z.im == 0.0) {
        Field::Real
    } else {
        Field::Complex
    };
    let entries: Vec<Complex64> = vectors.iter().flatten().copied().collect();
    let map = LinearMap::new(m, n, entries)?;
    let mut cert = operator_norm_ascent(&map, p_dual, s, field, &AscentOptions::default())?;
    let row_norms: Vec<Complex64> = vectors
        .iter()
        .map(|v| Complex64::new(lp_norm(v, p), 0.0))
        .collect();
    cert.analytic_upper = Some(lp_norm(&row_norms, s));
    cert.method = "weak-s-ascent".to_string();
    Ok(cert)
}

fn distinct_canonical(vectors: &[Vec<Complex64>]) -> Option<()> {
    let mut seen = std::collections::HashSet::new();
    for v in vectors {
        let mut hit = None;
        for (i, z) in v.iter().enumerate() {
            if z.norm() != 0.0 {
                if hit.is_some() || (*z - Complex64::new(1.0, 0.0)).norm() != 0.0 {
                    return None;
                }
                hit = Some(i);
            }
        }
        let i = hit?;
        if !seen.insert(i) {
            return None;
        }
    }
    Some(())
}
