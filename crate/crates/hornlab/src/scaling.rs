//! Floating complex layer: the correspondence map with a parameter, singular
//! values via a cyclic Jacobi eigensolver, the scaled triangular maps and
//! their tropical limits, the factorization inverse, Horn data of matrix
//! triples, genericity filters, convergence-rate and concentration
//! experiments, and the rank-2 trace-form inequalities.

use std::collections::BTreeMap;
use std::sync::Arc;


use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::multipath::{
    chart_a_inverse, gz_trop, partial_sum_row, simplex_points, DEFAULT_STATE_CAP,
};
use crate::network::{
    concatenate_weightings, essential_labels, standard_network, standard_weighting,
    PlanarNetwork, Weighting,
};
use crate::trop::{gz_check, GzPattern, Trop};
use crate::{Error, Result};

pub type CMat = Vec<Vec<Complex64>>;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZEROC: Complex64 = Complex64 { re: 0.0, im: 0.0 };

pub fn cmat_identity(n: usize) -> CMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ONE } else { ZEROC }).collect())
        .collect()
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let mut c = vec![vec![ZEROC; m]; n];
    for i in 0..n {
        for t in 0..inner {
            let ait = a[i][t];
            if ait == ZEROC {
                continue;
            }
            for j in 0..m {
                c[i][j] += ait * b[t][j];
            }
        }
    }
    c
}

pub fn adjoint(a: &CMat) -> CMat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn frobenius(a: &CMat) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_finite(a: &CMat) -> Result<()> {
    for row in a {
        for z in row {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NumericDomain("non-finite matrix entry".into()));
            }
        }
    }
    Ok(())
}

/// Complex determinant by Gaussian elimination with partial pivoting.
pub fn cdet(a: &CMat) -> Complex64 {
    let n = a.len();
    if n == 0 {
        return ONE;
    }
    let mut m = a.clone();
    let mut det = ONE;
    for k in 0..n {
        let (pivot, _) = (k..n)
            .map(|r| (r, m[r][k].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if m[pivot][k].norm() == 0.0 {
            return ZEROC;
        }
        if pivot != k {
            m.swap(pivot, k);
            det = -det;
        }
        det *= m[k][k];
        for r in k + 1..n {
            let factor = m[r][k] / m[k][k];
            for c in k..n {
                let sub = factor * m[k][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// `(x, φ) ↦ e^{sx}·φ`. Exponents with `|s·x| > 700` are rejected.
pub fn mu_s(x: &Trop, phi: Complex64, s: f64) -> Result<Complex64> {
    if s == 0.0 {
        return Err(Error::Precondition("parameter s must be nonzero".into()));
    }
    let xv = match x {
        Trop::NegInf => return Ok(ZEROC),
        Trop::Fin(r) => rational_to_f64(r),
    };
    let e = s * xv;
    if e.abs() > 700.0 {
        return Err(Error::NumericDomain(format!("exponent {e} overflows")));
    }
    Ok(phi * e.exp())
}

fn rational_to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Unit-modulus phases per edge; the identity away from slanted edges.
#[derive(Clone, Debug)]
pub struct AngleAssignment {
    pub angles: Vec<Complex64>,
}

impl AngleAssignment {
    pub fn ones(net: &PlanarNetwork) -> Self {
        AngleAssignment { angles: vec![ONE; net.edges().len()] }
    }

    /// Assign phases to the slanted essential edges of a standard network.
    pub fn from_slant_angles(
        net: &PlanarNetwork,
        phases: &BTreeMap<(usize, usize), Complex64>,
    ) -> Result<Self> {
        let mut angles = vec![ONE; net.edges().len()];
        for (&(l, i), phi) in phases {
            if (phi.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Precondition(format!(
                    "angle at ({l},{i}) is not unit modulus"
                )));
            }
            let e = net
                .essential_edge(l, i)
                .ok_or_else(|| Error::IndexRange(format!("no essential edge ({l},{i})")))?;
            angles[e] = *phi;
        }
        Ok(AngleAssignment { angles })
    }

    pub fn random_slants(net: &PlanarNetwork, rng: &mut impl Rng) -> Self {
        let mut angles = vec![ONE; net.edges().len()];
        for e in net.essential() {
            if e.i < e.l {
                let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                angles[e.edge] = Complex64::from_polar(1.0, theta);
            }
        }
        AngleAssignment { angles }
    }

    pub fn validate(&self) -> Result<()> {
        for (e, phi) in self.angles.iter().enumerate() {
            if (phi.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Precondition(format!(
                    "angle on edge {e} is not unit modulus"
                )));
            }
        }
        Ok(())
    }
}

/// Correspondence matrix of the `μ_s`-transformed weighting.
pub fn m_s(w: &Weighting<Trop>, phi: &AngleAssignment, s: f64) -> Result<CMat> {
    phi.validate()?;
    if phi.angles.len() != w.weights.len() {
        return Err(Error::SizeMismatch("one angle per edge".into()));
    }
    let weights: Result<Vec<Complex64>> = w
        .weights
        .iter()
        .zip(&phi.angles)
        .map(|(x, a)| mu_s(x, *a, s))
        .collect();
    let cw = Weighting::<Complex64>::new(w.net.clone(), weights?)?;
    Ok(crate::network::correspondence_matrix(&cw))
}

fn off_norm(a: &CMat) -> f64 {
    let n = a.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, descending.
pub fn hermitian_eigenvalues(h: &CMat) -> Result<Vec<f64>> {
    check_finite(h)?;
    let n = h.len();
    let scale = frobenius(h);
    let mut diff = 0.0;
    for i in 0..n {
        for j in 0..n {
            diff += (h[i][j] - h[j][i].conj()).norm_sqr();
        }
    }
    if diff.sqrt() > 1e-10 * scale.max(1e-300) {
        return Err(Error::Precondition("matrix is not Hermitian".into()));
    }
    let mut a = h.clone();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let target = 1e-13 * scale;
    for _sweep in 0..100 {
        if off_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                let g = apq.norm();
                if g <= target / (n as f64 * n as f64) {
                    continue;
                }
                let phase = apq / g;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sv = t * c;
                // Unitary block [[c, s], [−s·conj(phase), c·conj(phase)]] at (p,q).
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(sv, 0.0);
                let jqp = -phase.conj() * sv;
                let jqq = phase.conj() * c;
                // A ← Jᴴ A J: first right, then left.
                for r in 0..n {
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = arp * jpp + arq * jqp;
                    a[r][q] = arp * jpq + arq * jqq;
                }
                for cidx in 0..n {
                    let apc = a[p][cidx];
                    let aqc = a[q][cidx];
                    a[p][cidx] = jpp.conj() * apc + jqp.conj() * aqc;
                    a[q][cidx] = jpq.conj() * apc + jqq.conj() * aqc;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Singular values: square roots of the eigenvalues of `AA*`, descending.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    check_finite(a)?;
    let aat = cmat_mul(a, &adjoint(a));
    let eig = hermitian_eigenvalues(&aat)?;
    if eig.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::NumericDomain("matrix is numerically singular".into()));
    }
    Ok(eig.into_iter().map(f64::sqrt).collect())
}

/// Triangular rows without the zero entries: `rows[l-1][i-1] = m_i^{(l)}`.
pub type FloatRows = Vec<Vec<f64>>;

pub fn rows_from_pattern(p: &GzPattern) -> FloatRows {
    (1..=p.n())
        .map(|l| p.inner_row(l).iter().map(Trop::to_f64).collect())
        .collect()
}

pub fn rows_inf_distance(a: &FloatRows, b: &FloatRows) -> f64 {
    let mut best: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            best = best.max((x - y).abs());
        }
    }
    best
}

/// Slack check on float rows: both inequality families with slack
/// `delta − tol`.
pub fn float_gz_check(rows: &FloatRows, delta: f64, tol: f64) -> bool {
    let n = rows.len();
    let entry = |i: usize, l: usize| -> f64 {
        if i == 0 {
            0.0
        } else {
            rows[l - 1][i - 1]
        }
    };
    for l in 1..n {
        for i in 1..=l {
            if entry(i, l + 1) + entry(i - 1, l) < entry(i - 1, l + 1) + entry(i, l) + delta - tol {
                return false;
            }
            if entry(i, l + 1) + entry(i, l) < entry(i + 1, l + 1) + entry(i - 1, l) + delta - tol {
                return false;
            }
        }
    }
    true
}

/// Scaled triangular data of a matrix: partial sums of `(1/s)·log σ` over the
/// leading principal submatrices.
pub fn gz_s(a: &CMat, s: f64) -> Result<FloatRows> {
    if s == 0.0 {
        return Err(Error::Precondition("parameter s must be nonzero".into()));
    }
    let n = a.len();
    let mut rows = Vec::with_capacity(n);
    for l in 1..=n {
        let sub: CMat = (0..l).map(|i| (0..l).map(|j| a[i][j]).collect()).collect();
        let sv = singular_values(&sub)
            .map_err(|_| Error::NumericDomain(format!("leading {l}×{l} block is singular")))?;
        let mut row = Vec::with_capacity(l);
        let mut acc = 0.0;
        for v in sv {
            acc += v.ln() / s;
            row.push(acc);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Tropical counterpart of [`gz_s`] as float rows.
pub fn gz_trop_rows(w: &Weighting<Trop>, cap: u64) -> Result<FloatRows> {
    Ok(rows_from_pattern(&gz_trop(w, cap)?))
}

/// Invert the scaled correspondence map on a lower-triangular matrix with
/// positive diagonal: the chart minors `Δ_{[l-i+1,l],[1,i]}` each collect a
/// single boundary multipath, so their moduli recover the weighting and their
/// phases the slant angles.
pub fn zeta_s(b: &CMat, s: f64) -> Result<(Weighting<Trop>, AngleAssignment)> {
    if s == 0.0 {
        return Err(Error::Precondition("parameter s must be nonzero".into()));
    }
    check_finite(b)?;
    let n = b.len();
    let net = Arc::new(standard_network(n)?);
    let mut chart_rows: Vec<Vec<Trop>> = Vec::with_capacity(n);
    let mut args: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for l in 1..=n {
        let mut row = Vec::with_capacity(l);
        for i in 1..=l {
            let rows: Vec<usize> = (l - i + 1..=l).collect();
            let cols: Vec<usize> = (1..=i).collect();
            let sub: CMat = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| b[r - 1][c - 1]).collect())
                .collect();
            let d = cdet(&sub);
            if d.norm() == 0.0 {
                return Err(Error::SingularMinor(format!(
                    "chart minor ({i},{l}) vanishes"
                )));
            }
            row.push(Trop::from_f64(d.norm().ln() / s)?);
            args.insert((l, i), d.arg());
        }
        chart_rows.push(row);
    }
    let pattern = GzPattern::from_inner_rows(n, chart_rows)?;
    let vals = chart_a_inverse(&pattern)?;
    let w = standard_weighting(&net, &vals)?;
    // Phase back-substitution: the argument of the (i,l) minor is the sum of
    // the slant phases a_{h,c} with c ≤ i, c < h ≤ l-i+c.
    let mut psi: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for l in 1..=n {
        for i in 1..i_max(l) + 1 {
            let mut acc = 0.0;
            for c in 1..=i {
                for h in c + 1..=(l - i + c) {
                    if (h, c) != (l, i) {
                        acc += psi[&(h, c)];
                    }
                }
            }
            let raw = args[&(l, i)] - acc;
            psi.insert((l, i), raw);
        }
    }
    let mut phases = BTreeMap::new();
    for ((l, i), theta) in psi {
        phases.insert((l, i), Complex64::from_polar(1.0, theta));
    }
    let phi = AngleAssignment::from_slant_angles(&net, &phases)?;
    Ok((w, phi))
}

fn i_max(l: usize) -> usize {
    l - 1
}

/// Partial-sum rows of `(1/s)·log sing` for the six products
/// `A, B, C, AB, BC, ABC`.
pub fn horn_s(a: &CMat, b: &CMat, c: &CMat, s: f64) -> Result<Vec<Vec<f64>>> {
    let ab = cmat_mul(a, b);
    let bc = cmat_mul(b, c);
    let abc = cmat_mul(&ab, c);
    let mut out = Vec::with_capacity(6);
    for x in [a, b, c, &ab, &bc, &abc] {
        let sv = singular_values(x)?;
        let mut acc = 0.0;
        let mut row = Vec::with_capacity(sv.len());
        for v in sv {
            acc += v.ln() / s;
            row.push(acc);
        }
        out.push(row);
    }
    Ok(out)
}

/// Tropical Horn data: the six partial-sum rows of the factors and their
/// consecutive products.
pub fn horn_trop(ws: &[Weighting<Trop>], cap: u64) -> Result<Vec<Vec<Trop>>> {
    if ws.len() != 3 {
        return Err(Error::SizeMismatch("three factors expected".into()));
    }
    let w12 = concatenate_weightings(&ws[0], &ws[1])?;
    let w23 = concatenate_weightings(&ws[1], &ws[2])?;
    let w123 = concatenate_weightings(&w12, &ws[2])?;
    let mut out = Vec::with_capacity(6);
    for w in [&ws[0], &ws[1], &ws[2], &w12, &w23, &w123] {
        out.push(partial_sum_row(w, cap)?);
    }
    Ok(out)
}

pub fn trop_rows_to_f64(rows: &[Vec<Trop>]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| r.iter().map(Trop::to_f64).collect()).collect()
}

/// Genericity filter. For a single weighting: the triangular data is
/// δ-strict and distinct multipath weights of every truncation are separated
/// by more than δ. For a triple of essential weightings on standard networks:
/// each factor chart and each listed product is δ-strict and all subset sums
/// of essential weights are δ-separated.
pub fn genericity_filter(ws: &[Weighting<Trop>], delta: &BigRational, cap: u64) -> Result<bool> {
    match ws.len() {
        1 => {
            let w = &ws[0];
            if !gz_check(&gz_trop(w, cap)?, delta).ok {
                return Ok(false);
            }
            let n = w.net.rank();
            for l in 1..=n {
                let t = crate::network::truncate(w, l)?;
                for size in 1..=l {
                    let list =
                        crate::multipath::enumerate_multipaths(&[t.clone()], &[size], cap)?;
                    let weights: Vec<&Trop> = list.iter().map(|(_, w)| w).collect();
                    for (i, wi) in weights.iter().enumerate() {
                        for wj in &weights[i + 1..] {
                            match (wi, wj) {
                                (Trop::Fin(x), Trop::Fin(y)) => {
                                    if (x - y).abs() <= *delta {
                                        return Ok(false);
                                    }
                                }
                                _ => return Ok(false),
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
        3 => {
            for w in ws {
                if !gz_check(&crate::multipath::chart_a(w)?, delta).ok {
                    return Ok(false);
                }
            }
            let w12 = concatenate_weightings(&ws[0], &ws[1])?;
            let w23 = concatenate_weightings(&ws[1], &ws[2])?;
            let w123 = concatenate_weightings(&w12, &ws[2])?;
            for w in [&w12, &w23, &w123] {
                if !gz_check(&gz_trop(w, cap)?, delta).ok {
                    return Ok(false);
                }
            }
            // Separation of all essential subset sums, as sign vectors.
            let mut essentials: Vec<&Trop> = Vec::new();
            for w in ws {
                for (l, i) in essential_labels(w.net.rank()) {
                    essentials.push(w.essential(l, i)?);
                }
            }
            let count = essentials.len() as u32;
            let states = 3u64.checked_pow(count).ok_or(Error::EnumerationCap { cap })?;
            if states > cap {
                return Err(Error::EnumerationCap { cap });
            }
            let vals: Vec<BigRational> = essentials
                .iter()
                .map(|t| {
                    t.as_rational()
                        .cloned()
                        .ok_or_else(|| Error::NonFinite("essential weight".into()))
                })
                .collect::<Result<_>>()?;
            let mut signs = vec![0i8; vals.len()];
            loop {
                if signs.iter().any(|&s| s != 0) {
                    let mut acc = BigRational::zero();
                    for (sgn, v) in signs.iter().zip(&vals) {
                        match sgn {
                            1 => acc += v,
                            -1 => acc -= v,
                            _ => {}
                        }
                    }
                    if acc.abs() <= *delta {
                        return Ok(false);
                    }
                }
                // advance ternary counter
                let mut pos = 0;
                loop {
                    if pos == signs.len() {
                        return Ok(true);
                    }
                    signs[pos] += 1;
                    if signs[pos] == 2 {
                        signs[pos] = -1;
                        break;
                    } else if signs[pos] == 0 {
                        pos += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        k => Err(Error::SizeMismatch(format!(
            "genericity filter expects one weighting or a triple, got {k}"
        ))),
    }
}

/// Errors `‖gz_s ∘ M_s − gz^trop‖_∞` along a list of parameters.
pub fn convergence_experiment(
    w: &Weighting<Trop>,
    phi: &AngleAssignment,
    s_list: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let trop = gz_trop_rows(w, DEFAULT_STATE_CAP)?;
    let max_w: f64 = w
        .weights
        .iter()
        .map(|t| t.to_f64().abs())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    let mut out = Vec::with_capacity(s_list.len());
    for &s in s_list {
        if s * max_w > 300.0 {
            return Err(Error::NumericDomain(format!(
                "scaled exponent {} exceeds the dynamic-range cap",
                s * max_w
            )));
        }
        let m = m_s(w, phi, s)?;
        let rows = gz_s(&m, s)?;
        out.push((s, rows_inf_distance(&rows, &trop)));
    }
    Ok(out)
}

/// Least-squares slope of `ln(err)` against `s`.
pub fn fit_log_slope(table: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = table
        .iter()
        .map(|&(s, e)| (s, e.max(1e-300).ln()))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn box_muller(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_gaussian_cmat(n: usize, rng: &mut impl Rng) -> CMat {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(box_muller(rng), box_muller(rng)))
                .collect()
        })
        .collect()
}

/// Haar-like random unitary via modified Gram-Schmidt on a Gaussian draw.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMat {
    loop {
        let g = random_gaussian_cmat(n, rng);
        if let Some(q) = mgs_q(&g) {
            return q;
        }
    }
}

/// Columns of `a` orthonormalized; `None` on rank deficiency.
fn mgs_q(a: &CMat) -> Option<CMat> {
    let n = a.len();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    for j in 0..n {
        for p in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[p][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let sub = proj * cols[p][i];
                cols[j][i] -= sub;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for i in 0..n {
            cols[j][i] /= norm;
        }
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// Iwasawa retraction: the lower-triangular positive-diagonal factor `b` with
/// `a = b·u`, `u` unitary. Computed from a QR factorization of `a*`.
pub fn iwasawa_lower(a: &CMat) -> Result<CMat> {
    check_finite(a)?;
    let n = a.len();
    // a* = q·r with r upper triangular  ⇒  a = r*·q*, and r* is lower
    // triangular; normalize the diagonal phases into the unitary factor.
    let astar = adjoint(a);
    let mut q: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| astar[i][j]).collect())
        .collect(); // columns
    let mut r = vec![vec![ZEROC; n]; n];
    for j in 0..n {
        for p in 0..j {
            let proj: Complex64 = (0..n).map(|i| q[p][i].conj() * q[j][i]).sum();
            r[p][j] = proj;
            for i in 0..n {
                let sub = proj * q[p][i];
                q[j][i] -= sub;
            }
        }
        let norm: f64 = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-280 {
            return Err(Error::NumericDomain("Iwasawa retraction of a singular matrix".into()));
        }
        r[j][j] = Complex64::new(norm, 0.0);
        for i in 0..n {
            q[j][i] /= norm;
        }
    }
    // b = r* has positive real diagonal already (norms).
    let mut b = vec![vec![ZEROC; n]; n];
    for i in 0..n {
        for j in 0..=i {
            b[i][j] = r[j][i].conj();
        }
    }
    Ok(b)
}

/// Sample a lower-triangular positive-diagonal matrix with singular values
/// `e^{s·exps[i]}`, via a two-sided unitary orbit and Iwasawa retraction.
pub fn sample_b_with_singvals(exps: &[f64], s: f64, rng: &mut impl Rng) -> Result<CMat> {
    let n = exps.len();
    for &x in exps {
        if (s * x).abs() > 300.0 {
            return Err(Error::NumericDomain("singular-value exponent overflows".into()));
        }
    }
    let u = random_unitary(n, rng);
    let v = random_unitary(n, rng);
    let mut d = vec![vec![ZEROC; n]; n];
    for i in 0..n {
        d[i][i] = Complex64::new((s * exps[i]).exp(), 0.0);
    }
    iwasawa_lower(&cmat_mul(&cmat_mul(&u, &d), &v))
}

/// Outcome of one distance evaluation.
#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub distance: f64,
    pub cone_violation: f64,
    pub evaluations: u64,
}

fn float_two_face_points(n: usize) -> Vec<Vec<usize>> {
    crate::reconstruct::two_face_points(n)
        .into_iter()
        .filter(|p| p.iter().any(|&v| v != 0))
        .collect()
}

fn float_fill(n: usize, x: &BTreeMap<Vec<usize>, f64>) -> BTreeMap<Vec<usize>, f64> {
    let mut m = x.clone();
    let mut unknown: Vec<Vec<usize>> = simplex_points(n, 3)
        .into_iter()
        .filter(|p| !m.contains_key(p))
        .collect();
    unknown.sort_by_key(|p| (std::cmp::Reverse(p[0] + p[2]), p.clone()));
    for p in unknown {
        let (i, j, k) = (p[0], p[1] - 1, p[2]);
        let c = m[&vec![i + 1, j, k]] + m[&vec![i, j + 1, k + 1]];
        let a = m[&vec![i, j, k + 1]] + m[&vec![i + 1, j + 1, k]];
        let v = a.max(c) - m[&vec![i + 1, j, k + 1]];
        m.insert(p, v);
    }
    m
}

fn face_rhombus_penalty(n: usize, x: &BTreeMap<Vec<usize>, f64>) -> f64 {
    let mut acc = 0.0;
    for spec in crate::horncheck::all_plane_rhombi(n) {
        let vs = spec.vertices().expect("in simplex");
        let on_j0 = vs.iter().all(|v| v[1] == 0);
        let on_sum = vs.iter().all(|v| v.iter().sum::<usize>() == n);
        if !(on_j0 || on_sum) {
            continue;
        }
        let short = x[&vs[1]] + x[&vs[2]];
        let long = x[&vs[0]] + x[&vs[3]];
        if long > short {
            let d = long - short;
            acc += d * d;
        }
    }
    acc
}

/// Partial-sum extraction of the six edge rows from a filled value table.
fn extract_rows(n: usize, m: &BTreeMap<Vec<usize>, f64>) -> Vec<Vec<f64>> {
    let g = |i: usize, j: usize, k: usize| m[&vec![i, j, k]];
    let mut rows = vec![Vec::with_capacity(n); 6];
    for j in 1..=n {
        rows[0].push(g(j, 0, 0));
        rows[1].push(g(n - j, j, 0) - g(n, 0, 0));
        rows[2].push(g(0, n - j, j) - g(0, n, 0));
        rows[3].push(g(0, j, 0));
        rows[4].push(g(n - j, 0, j) - g(n, 0, 0));
        rows[5].push(g(0, 0, j));
    }
    rows
}

struct DistanceObjective<'a> {
    n: usize,
    points: &'a [Vec<usize>],
    target: &'a [Vec<f64>],
    evaluations: std::cell::Cell<u64>,
}

impl<'a> DistanceObjective<'a> {
    fn eval(&self, coords: &[f64]) -> (f64, f64) {
        self.evaluations.set(self.evaluations.get() + 1);
        let mut x = BTreeMap::new();
        x.insert(vec![0usize, 0, 0], 0.0);
        for (p, &v) in self.points.iter().zip(coords) {
            x.insert(p.clone(), v);
        }
        let penalty = face_rhombus_penalty(self.n, &x);
        let filled = float_fill(self.n, &x);
        let rows = extract_rows(self.n, &filled);
        let mut dist2 = 0.0;
        for (ra, rb) in rows.iter().zip(self.target) {
            for (a, b) in ra.iter().zip(rb) {
                dist2 += (a - b) * (a - b);
            }
        }
        (dist2, penalty)
    }

    fn objective(&self, coords: &[f64]) -> f64 {
        let (d2, pen) = self.eval(coords);
        d2 + 1e6 * pen
    }
}

/// Read candidate two-face values off the target rows; points not on an edge
/// of the tetrahedron (face interiors, `n ≥ 3`) fall back to zero.
fn readoff_start(n: usize, points: &[Vec<usize>], target: &[Vec<f64>]) -> Vec<f64> {
    let row = |r: usize, j: usize| -> f64 {
        if j == 0 {
            0.0
        } else {
            target[r][j - 1]
        }
    };
    points
        .iter()
        .map(|p| {
            let (i, j, k) = (p[0], p[1], p[2]);
            let total = i + j + k;
            if j == 0 && k == 0 {
                row(0, i)
            } else if i == 0 && j == 0 {
                row(5, k)
            } else if j == 0 && total == n {
                row(0, n) + row(4, k)
            } else if k == 0 && total == n {
                row(0, n) + row(1, j)
            } else if i == 0 && total == n {
                row(0, n) + row(1, n) + row(2, k)
            } else {
                0.0
            }
        })
        .collect()
}

fn coordinate_descent(obj: &DistanceObjective, start: &mut Vec<f64>, initial_step: f64) -> f64 {
    let mut best = obj.objective(start);
    let mut step = initial_step;
    while step >= 1e-6 {
        let mut improved = false;
        for idx in 0..start.len() {
            for dir in [1.0, -1.0] {
                let old = start[idx];
                start[idx] = old + dir * step;
                let v = obj.objective(start);
                if v + 1e-15 < best {
                    best = v;
                    improved = true;
                } else {
                    start[idx] = old;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Euclidean distance from a 6-row boundary tuple to the locus of boundary
/// data of the recurrence cone, by multi-start coordinate descent over the
/// two-face parameters.
pub fn distance_to_octahedron_locus(
    target: &[Vec<f64>],
    n: usize,
    starts: usize,
    seed: u64,
) -> Result<DistanceResult> {
    if target.len() != 6 || target.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch("expected six rows of length n".into()));
    }
    let points = float_two_face_points(n);
    let obj = DistanceObjective {
        n,
        points: &points,
        target,
        evaluations: std::cell::Cell::new(0),
    };
    let base = readoff_start(n, &points, target);
    let mut best = f64::INFINITY;
    let mut best_coords = base.clone();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    for start_idx in 0..starts.max(1) {
        let mut coords = base.clone();
        if start_idx > 0 {
            let scale = 0.5 * start_idx as f64 / starts as f64;
            for c in coords.iter_mut() {
                *c += rng.gen_range(-1.0..1.0) * (1.0 + scale);
            }
        }
        let v = coordinate_descent(&obj, &mut coords, 0.5);
        if v < best {
            best = v;
            best_coords = coords;
        }
    }
    let (d2, pen) = obj.eval(&best_coords);
    Ok(DistanceResult {
        distance: d2.sqrt(),
        cone_violation: pen.sqrt(),
        evaluations: obj.evaluations.get(),
    })
}

/// Shrinking-grid search over the same parameterization; for the rank-2 case
/// this doubles as an independent check of the descent answer.
pub fn distance_grid(target: &[Vec<f64>], n: usize) -> Result<f64> {
    let points = float_two_face_points(n);
    let obj = DistanceObjective {
        n,
        points: &points,
        target,
        evaluations: std::cell::Cell::new(0),
    };
    let mut center = readoff_start(n, &points, target);
    let mut best = obj.objective(&center);
    let mut width = 2.0f64;
    while width >= 1e-6 {
        // Dense axis grids around the incumbent, one coordinate at a time.
        let mut improved = false;
        for idx in 0..center.len() {
            let old = center[idx];
            let mut local_best = best;
            let mut local_val = old;
            for step in -8i32..=8 {
                let cand = old + width * step as f64 / 8.0;
                center[idx] = cand;
                let v = obj.objective(&center);
                if v < local_best {
                    local_best = v;
                    local_val = cand;
                }
            }
            center[idx] = local_val;
            if local_best + 1e-15 < best {
                best = local_best;
                improved = true;
            }
        }
        if !improved {
            width *= 0.5;
        }
    }
    Ok(best.sqrt())
}

/// Distance statistics of the Horn data of random triples with prescribed
/// singular-value exponents. Trials own independent random streams.
pub fn concentration_experiment(
    lambda: &[f64],
    mu: &[f64],
    nu: &[f64],
    s: f64,
    trials: usize,
    seed: u64,
    starts: usize,
) -> Result<Vec<f64>> {
    let n = lambda.len();
    if mu.len() != n || nu.len() != n {
        return Err(Error::SizeMismatch("exponent tuples must share length".into()));
    }
    let distances: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64 + 1);
            let a = sample_b_with_singvals(lambda, s, &mut rng)?;
            let b = sample_b_with_singvals(mu, s, &mut rng)?;
            let c = sample_b_with_singvals(nu, s, &mut rng)?;
            let rows = horn_s(&a, &b, &c, s)?;
            let res = distance_to_octahedron_locus(&rows, n, starts, seed ^ (trial as u64))?;
            Ok(res.distance)
        })
        .collect();
    distances
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    if v.is_empty() {
        return f64::NAN;
    }
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// `Tr(g g*)` of a unit-determinant lower-triangular 2×2 matrix.
pub fn f_trace(g: &CMat) -> Result<f64> {
    if g.len() != 2 || g[0].len() != 2 {
        return Err(Error::SizeMismatch("expected a 2×2 matrix".into()));
    }
    check_finite(g)?;
    let scale = frobenius(g).max(1.0);
    if g[0][1].norm() > 1e-12 * scale {
        return Err(Error::Precondition("matrix must be lower triangular".into()));
    }
    let det = g[0][0] * g[1][1];
    if (det - ONE).norm() > 1e-9 {
        return Err(Error::Precondition("matrix must have unit determinant".into()));
    }
    Ok(g[0][0].norm_sqr() + g[1][0].norm_sqr() + g[1][1].norm_sqr())
}

/// The three cyclic trace-form inequalities and, when scaling parameters are
/// supplied, the tetrahedron-defect bounds `max-defect < s⁻¹·log 16`.
#[derive(Clone, Debug)]
pub struct RankTwoReport {
    /// f-values of A, B, C, AB, BC, ABC.
    pub f: [f64; 6],
    /// Relative slacks of the three inequalities (nonnegative when they hold).
    pub relative_slacks: [f64; 3],
    /// Per requested s: the three defects `α−max{β,γ}` (cyclically) and the
    /// bound `log(16)/s`.
    pub defects: Vec<(f64, [f64; 3], f64)>,
    pub pass: bool,
}

pub fn n2_inequalities(a: &CMat, b: &CMat, c: &CMat, s_values: &[f64]) -> Result<RankTwoReport> {
    let ab = cmat_mul(a, b);
    let bc = cmat_mul(b, c);
    let abc = cmat_mul(&ab, c);
    let fa = f_trace(a)?;
    let fb = f_trace(b)?;
    let fc = f_trace(c)?;
    let fab = f_trace(&ab)?;
    let fbc = f_trace(&bc)?;
    let fabc = f_trace(&abc)?;
    let p = fa * fc;
    let q = fab * fbc;
    let r = fb * fabc;
    let slack = |lhs: f64, rhs: f64| (lhs - rhs) / lhs.max(rhs).max(1.0);
    let relative_slacks = [
        slack(2.0 * (q + p), r),
        slack(2.0 * (p + r), q),
        slack(2.0 * (r + q), p),
    ];
    let mut defects = Vec::new();
    let mut pass = relative_slacks.iter().all(|&s| s >= -1e-9);
    for &s in s_values {
        if s <= 0.0 {
            return Err(Error::Precondition("scaling parameter must be positive".into()));
        }
        let exp1 = |x: &CMat| -> Result<f64> {
            let sv = singular_values(x)?;
            Ok(sv[0].ln() / s)
        };
        let (l, m, nv) = (exp1(a)?, exp1(b)?, exp1(c)?);
        let (rho, sig, tau) = (exp1(&ab)?, exp1(&bc)?, exp1(&abc)?);
        let alpha = l + nv;
        let beta = m + tau;
        let gamma = rho + sig;
        let bound = 16f64.ln() / s;
        let ds = [
            alpha - beta.max(gamma),
            beta - alpha.max(gamma),
            gamma - alpha.max(beta),
        ];
        if ds.iter().any(|&d| d >= bound + 1e-9) {
            pass = false;
        }
        defects.push((s, ds, bound));
    }
    Ok(RankTwoReport {
        f: [fa, fb, fc, fab, fbc, fabc],
        relative_slacks,
        defects,
        pass,
    })
}

/// Random unit-determinant lower-triangular 2×2 matrix.
pub fn random_su2_star(rng: &mut impl Rng, spread: f64) -> CMat {
    let u = (rng.gen_range(-spread..spread) as f64).exp();
    let v = Complex64::new(rng.gen_range(-spread..spread), rng.gen_range(-spread..spread));
    vec![
        vec![Complex64::new(u, 0.0), ZEROC],
        vec![v, Complex64::new(1.0 / u, 0.0)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::standard_weighting;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(v: i64) -> Trop {
        Trop::from_int(v)
    }

    fn std_net(n: usize) -> Arc<PlanarNetwork> {
        Arc::new(standard_network(n).unwrap())
    }

    #[test]
    fn mu_s_basics() {
        assert_eq!(mu_s(&t(0), ONE, 5.0).unwrap(), ONE);
        let e2 = mu_s(&t(1), ONE, 2.0).unwrap();
        assert!((e2.re - 2f64.exp()).abs() < 1e-12);
        let ei = mu_s(&t(1), Complex64::new(0.0, 1.0), 1.0).unwrap();
        assert!((ei - Complex64::new(0.0, 1f64.exp())).norm() < 1e-12);
        assert!(mu_s(&t(200), ONE, 5.0).is_err());
    }

    #[test]
    fn m_s_matches_closed_form() {
        let net = std_net(2);
        let w = standard_weighting(&net, &[t(1), t(0), t(0)]).unwrap();
        let phi = AngleAssignment::ones(&net);
        let m = m_s(&w, &phi, 10.0).unwrap();
        let e10 = 10f64.exp();
        assert!((m[0][0].re - e10).abs() < 1e-6 * e10);
        assert!((m[1][0].re - e10).abs() < 1e-6 * e10);
        assert!((m[1][1].re - 1.0).abs() < 1e-12);
        assert!(m[0][1].norm() < 1e-12);
    }

    #[test]
    fn jacobi_eigenvalues() {
        let d = vec![
            vec![Complex64::new(2.0, 0.0), ZEROC],
            vec![ZEROC, Complex64::new(1.0, 0.0)],
        ];
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![2.0, 1.0]);
        let h = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
        ];
        let eig = hermitian_eigenvalues(&h).unwrap();
        assert!((eig[0] - 3.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
        // random Hermitian: eigenvalue sum = trace
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 2..=4 {
            let g = random_gaussian_cmat(n, &mut rng);
            let mut h = cmat_mul(&g, &adjoint(&g));
            for i in 0..n {
                h[i][i] = Complex64::new(h[i][i].re, 0.0);
            }
            let eig = hermitian_eigenvalues(&h).unwrap();
            let trace: f64 = (0..n).map(|i| h[i][i].re).sum();
            assert!((eig.iter().sum::<f64>() - trace).abs() < 1e-9 * trace.abs().max(1.0));
        }
        let bad = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.5)],
            vec![Complex64::new(1.0, 0.5), Complex64::new(1.0, 0.0)],
        ];
        assert!(hermitian_eigenvalues(&bad).is_err());
    }

    #[test]
    fn singular_value_examples() {
        let id = cmat_identity(3);
        for v in singular_values(&id).unwrap() {
            assert!((v - 1.0).abs() < 1e-12);
        }
        let d = vec![
            vec![Complex64::new(3.0, 0.0), ZEROC],
            vec![ZEROC, Complex64::new(1.0 / 3.0, 0.0)],
        ];
        let sv = singular_values(&d).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 1.0 / 3.0).abs() < 1e-12);
        // unitary invariance
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_gaussian_cmat(3, &mut rng);
        let sv0 = singular_values(&a).unwrap();
        let u = random_unitary(3, &mut rng);
        let v = random_unitary(3, &mut rng);
        let sv1 = singular_values(&cmat_mul(&cmat_mul(&u, &a), &v)).unwrap();
        for (x, y) in sv0.iter().zip(&sv1) {
            assert!((x - y).abs() < 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn scaled_exponent_closed_form() {
        // σ₁ of [[e^10, 0], [e^10, 1]]: (1/10)·log σ₁ ∈ [1.0, 1.05]
        let e10 = 10f64.exp();
        let a = vec![
            vec![Complex64::new(e10, 0.0), ZEROC],
            vec![Complex64::new(e10, 0.0), ONE],
        ];
        let sv = singular_values(&a).unwrap();
        let v = sv[0].ln() / 10.0;
        assert!((1.0..=1.05).contains(&v));
    }

    #[test]
    fn gz_s_diagonal_and_cone() {
        let s = 2.0f64;
        let a = vec![
            vec![Complex64::new((3.0 * s).exp(), 0.0), ZEROC],
            vec![ZEROC, Complex64::new(s.exp(), 0.0)],
        ];
        let rows = gz_s(&a, s).unwrap();
        assert!((rows[0][0] - 3.0).abs() < 1e-9);
        assert!((rows[1][0] - 3.0).abs() < 1e-9);
        assert!((rows[1][1] - 4.0).abs() < 1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let g = random_gaussian_cmat(3, &mut rng);
            if let Ok(rows) = gz_s(&g, 1.0) {
                assert!(float_gz_check(&rows, 0.0, 1e-9));
            }
        }
    }

    #[test]
    fn closed_form_convergence_rate() {
        let net = std_net(2);
        let w = standard_weighting(&net, &[t(1), t(0), t(0)]).unwrap();
        let phi = AngleAssignment::ones(&net);
        let table = convergence_experiment(&w, &phi, &[5.0, 10.0, 20.0]).unwrap();
        for &(s, err) in &table {
            let closed = 2f64.ln() / (2.0 * s);
            assert!((err - closed).abs() < 1e-4, "s={s}: {err} vs {closed}");
        }
        // at s = 10 the agreement is much tighter
        let (_, err10) = table[1];
        assert!((err10 - 2f64.ln() / 20.0).abs() < 1e-6);
        // errors strictly decreasing
        assert!(table[0].1 > table[1].1 && table[1].1 > table[2].1);
    }

    #[test]
    fn zeta_recovers_example() {
        let b = vec![
            vec![Complex64::new(6.0, 0.0), ZEROC],
            vec![Complex64::new(2.0, 0.0), ONE],
        ];
        let (w, phi) = zeta_s(&b, 1.0).unwrap();
        let a11 = w.essential(1, 1).unwrap().to_f64();
        let a21 = w.essential(2, 1).unwrap().to_f64();
        let a22 = w.essential(2, 2).unwrap().to_f64();
        assert!((a11 - 6f64.ln()).abs() < 1e-12);
        assert!((a21 - (1f64 / 3.0).ln()).abs() < 1e-12);
        assert!(a22.abs() < 1e-12);
        for a in &phi.angles {
            assert!((a - ONE).norm() < 1e-12);
        }
        // b21 = 0 has a vanishing chart minor
        let bad = vec![
            vec![Complex64::new(6.0, 0.0), ZEROC],
            vec![ZEROC, ONE],
        ];
        assert!(matches!(zeta_s(&bad, 1.0), Err(Error::SingularMinor(_))));
    }

    #[test]
    fn zeta_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=3usize {
            let net = std_net(n);
            for _ in 0..10 {
                let count = n * (n + 1) / 2;
                let vals: Vec<Trop> = (0..count)
                    .map(|_| Trop::from_f64(rng.gen_range(-1.5..1.5)).unwrap())
                    .collect();
                let w = standard_weighting(&net, &vals).unwrap();
                let phi = AngleAssignment::random_slants(&net, &mut rng);
                let s = 3.0;
                let b = m_s(&w, &phi, s).unwrap();
                let (w2, phi2) = zeta_s(&b, s).unwrap();
                let b2 = m_s(&w2, &phi2, s).unwrap();
                let mut err: f64 = 0.0;
                let mut scale: f64 = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        err = err.max((b[i][j] - b2[i][j]).norm());
                        scale = scale.max(b[i][j].norm());
                    }
                }
                assert!(err <= 1e-8 * scale.max(1.0), "err {err} scale {scale}");
            }
        }
    }

    #[test]
    fn horn_trop_demo_rows() {
        let f = |b: i64, s: Trop, tw: i64| {
            crate::reconstruct::rank2_slant_factor(t(b), s, t(tw)).unwrap()
        };
        let ws = vec![f(2, t(1), 1), f(1, t(-1), 1), f(1, t(2), -1)];
        let rows = horn_trop(&ws, DEFAULT_STATE_CAP).unwrap();
        let expect: Vec<Vec<i64>> = vec![
            vec![2, 3],
            vec![1, 2],
            vec![2, 0],
            vec![3, 5],
            vec![3, 2],
            vec![4, 5],
        ];
        for (row, exp) in rows.iter().zip(expect) {
            let got: Vec<Trop> = row.clone();
            let want: Vec<Trop> = exp.into_iter().map(t).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn horn_s_identity_is_zero() {
        let id = cmat_identity(2);
        let rows = horn_s(&id, &id, &id, 4.0).unwrap();
        for row in rows {
            for v in row {
                assert!(v.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn genericity_examples() {
        let net = std_net(2);
        let zero = Weighting::<Trop>::identity(net.clone());
        let delta = BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(10));
        assert!(!genericity_filter(
            &[zero.clone(), zero.clone(), zero],
            &delta,
            DEFAULT_STATE_CAP
        )
        .unwrap());
        let w = standard_weighting(&net, &[t(5), t(-3), t(1)]).unwrap();
        // single-network conditions
        assert!(genericity_filter(std::slice::from_ref(&w), &delta, DEFAULT_STATE_CAP).unwrap());
    }

    #[test]
    fn distance_zero_on_generated_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let net = std_net(2);
        for _ in 0..5 {
            let w = loop {
                let vals: Vec<Trop> =
                    (0..3).map(|_| t(rng.gen_range(-5..=5))).collect();
                let cand = standard_weighting(&net, &vals).unwrap();
                if crate::trop::gz_check_int(&crate::multipath::chart_a(&cand).unwrap(), 0).ok {
                    break cand;
                }
            };
            let ws = vec![w.clone(), w.clone(), w.clone()];
            let rows = horn_trop(&ws, DEFAULT_STATE_CAP).unwrap();
            let target = trop_rows_to_f64(&rows);
            let res = distance_to_octahedron_locus(&target, 2, 8, 99).unwrap();
            assert!(res.distance <= 1e-9, "distance {}", res.distance);
            let grid = distance_grid(&target, 2).unwrap();
            assert!((grid - res.distance).abs() <= 1e-3);
        }
    }

    #[test]
    fn distance_detects_perturbation() {
        let net = std_net(2);
        let w = standard_weighting(&net, &[t(2), t(-1), t(0)]).unwrap();
        assert!(crate::trop::gz_check_int(&crate::multipath::chart_a(&w).unwrap(), 0).ok);
        let ws = vec![w.clone(), w.clone(), w];
        let rows = horn_trop(&ws, DEFAULT_STATE_CAP).unwrap();
        let mut target = trop_rows_to_f64(&rows);
        target[3][0] += 1.0;
        let res = distance_to_octahedron_locus(&target, 2, 16, 7).unwrap();
        assert!(res.distance > 1e-6);
        assert!(res.distance <= 1.0 + 1e-6);
    }

    #[test]
    fn f_trace_values() {
        let id = cmat_identity(2);
        assert!((f_trace(&id).unwrap() - 2.0).abs() < 1e-12);
        let d = vec![
            vec![Complex64::new(2.0, 0.0), ZEROC],
            vec![ZEROC, Complex64::new(0.5, 0.0)],
        ];
        assert!((f_trace(&d).unwrap() - 17.0 / 4.0).abs() < 1e-12);
        let report = n2_inequalities(&id, &id, &id, &[]).unwrap();
        assert!(report.pass);
        // 2(4+4) = 16 ≥ 4
        assert!((report.f[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank2_inequalities_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let a = random_su2_star(&mut rng, 2.0);
            let b = random_su2_star(&mut rng, 2.0);
            let c = random_su2_star(&mut rng, 2.0);
            let report = n2_inequalities(&a, &b, &c, &[1.0, 5.0]).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn iwasawa_preserves_singular_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let exps = [1.0, -1.0];
        let b = sample_b_with_singvals(&exps, 2.0, &mut rng).unwrap();
        // lower triangular positive diagonal
        assert!(b[0][1].norm() < 1e-12);
        assert!(b[0][0].im.abs() < 1e-12 && b[0][0].re > 0.0);
        let sv = singular_values(&b).unwrap();
        assert!((sv[0] - 2f64.exp()).abs() < 1e-8 * 2f64.exp());
        assert!((sv[1] - (-2f64).exp()).abs() < 1e-8);
    }
}
