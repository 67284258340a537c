//! Exact-rational matrix layer: fraction-free determinants and minors,
//! multi-corner minors of the block matrix `[Id, g₁, g₁g₂, …]`, their
//! Cauchy–Binet expansion and unipotent invariance, determinant-coefficient
//! functions, the Plücker-style recurrence with its two fill directions, the
//! triangular potential and the chart that inverts it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::horncheck::FillFrom;
use crate::{Error, Result};

pub type Rat = BigRational;
pub type RatMat = Vec<Vec<Rat>>;

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn mat_identity(n: usize) -> RatMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let mut c = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for t in 0..inner {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                let add = &a[i][t] * &b[t][j];
                c[i][j] += add;
            }
        }
    }
    c
}

pub fn mat_transpose(a: &RatMat) -> RatMat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// Exact determinant. Denominators are cleared row-wise and the integer part
/// runs fraction-free Bareiss elimination.
pub fn det_rational(m: &RatMat) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
        let mut lcm = BigInt::one();
        for x in row {
            lcm = lcm.lcm(x.denom());
        }
        a.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        scale *= lcm;
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rat::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = Rat::new(a[n - 1][n - 1].clone(), scale);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// `I^op = {n+1-a : a ∈ I}` sorted ascending.
pub fn opposite(set: &[usize], n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&a| n + 1 - a).collect();
    out.sort_unstable();
    out
}

/// `I + b` elementwise.
pub fn shift_set(set: &[usize], b: usize) -> Vec<usize> {
    set.iter().map(|&a| a + b).collect()
}

/// Minor with rows `I` and columns `J` (1-based ascending labels).
pub fn minor(g: &RatMat, rows: &[usize], cols: &[usize]) -> Result<Rat> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch("minor needs |I| = |J|".into()));
    }
    if rows.is_empty() {
        return Ok(Rat::one());
    }
    let nr = g.len();
    let nc = g[0].len();
    for &r in rows {
        if r == 0 || r > nr {
            return Err(Error::IndexRange(format!("row {r} outside 1..={nr}")));
        }
    }
    for &c in cols {
        if c == 0 || c > nc {
            return Err(Error::IndexRange(format!("column {c} outside 1..={nc}")));
        }
    }
    let sub: RatMat = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| g[r - 1][c - 1].clone()).collect())
        .collect();
    Ok(det_rational(&sub))
}

/// The block matrix `[Id, g₁, g₁g₂, …, g₁⋯g_k]` of size `n × (k+1)n`.
pub fn bold_g(gs: &[RatMat]) -> Result<RatMat> {
    if gs.is_empty() {
        return Err(Error::SizeMismatch("need at least one factor".into()));
    }
    let n = gs[0].len();
    for g in gs {
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch("factors must be square of equal size".into()));
        }
    }
    let mut blocks = vec![mat_identity(n)];
    let mut running = mat_identity(n);
    for g in gs {
        running = mat_mul(&running, g);
        blocks.push(running.clone());
    }
    let mut out = vec![Vec::with_capacity((gs.len() + 1) * n); n];
    for (i, row) in out.iter_mut().enumerate() {
        for block in &blocks {
            row.extend(block[i].iter().cloned());
        }
    }
    Ok(out)
}

fn check_alpha(n: usize, alpha: &[usize]) -> Result<usize> {
    let total: usize = alpha.iter().sum();
    if alpha.iter().any(|&a| a > n) || total > n {
        return Err(Error::IndexRange(format!("{alpha:?} outside the rank-{n} simplex")));
    }
    Ok(total)
}

/// Column set `J(α) = ([1,n] ∖ [1,Σα]^op) ∪ ([1,α₁]+n) ∪ … ∪ ([1,α_k]+kn)`.
pub fn corner_column_set(n: usize, alpha: &[usize]) -> Vec<usize> {
    let total: usize = alpha.iter().sum();
    let opp = opposite(&(1..=total).collect::<Vec<_>>(), n);
    let mut cols: Vec<usize> = (1..=n).filter(|c| !opp.contains(c)).collect();
    for (i, &a) in alpha.iter().enumerate() {
        cols.extend((1..=a).map(|c| c + (i + 1) * n));
    }
    cols.sort_unstable();
    cols
}

/// The α-th multi-corner minor `Δ_{[1,n], J(α)}` of the block matrix.
pub fn multi_corner_minor(gs: &[RatMat], alpha: &[usize]) -> Result<Rat> {
    let n = gs[0].len();
    check_alpha(n, alpha)?;
    if alpha.len() != gs.len() {
        return Err(Error::SizeMismatch("alpha length must match factor count".into()));
    }
    let bg = bold_g(gs)?;
    let rows: Vec<usize> = (1..=n).collect();
    minor(&bg, &rows, &corner_column_set(n, alpha))
}

/// The Cauchy–Binet chain expansion
/// `Σ_{L₁,…,L_{k−1}} ∏ Δ_{L_{i−1}, J_i ⊔ L_i}(g_i)` with `J_i = [1, α_i]`,
/// `L₀ = [1, Σα]^op`, `L_k = ∅`. Exactly equal to the direct minor.
pub fn cauchy_binet_expansion(gs: &[RatMat], alpha: &[usize]) -> Result<Rat> {
    let n = gs[0].len();
    check_alpha(n, alpha)?;
    if alpha.len() != gs.len() {
        return Err(Error::SizeMismatch("alpha length must match factor count".into()));
    }
    let total: usize = alpha.iter().sum();
    let l0 = opposite(&(1..=total).collect::<Vec<_>>(), n);
    fn rec(gs: &[RatMat], alpha: &[usize], idx: usize, prev: &[usize], n: usize) -> Result<Rat> {
        let ji: Vec<usize> = (1..=alpha[idx]).collect();
        if idx + 1 == gs.len() {
            if prev.len() != ji.len() {
                return Ok(Rat::zero());
            }
            return minor(&gs[idx], prev, &ji);
        }
        if prev.len() < ji.len() {
            return Ok(Rat::zero());
        }
        let rest = prev.len() - ji.len();
        let candidates: Vec<usize> = (1..=n).filter(|c| !ji.contains(c)).collect();
        let mut acc = Rat::zero();
        for li in crate::multipath::subsets_of_size(candidates.len(), rest) {
            let li: Vec<usize> = li.into_iter().map(|p| candidates[p - 1]).collect();
            let mut cols = ji.clone();
            cols.extend(li.iter().copied());
            cols.sort_unstable();
            let factor = minor(&gs[idx], prev, &cols)?;
            if factor.is_zero() {
                continue;
            }
            let tail = rec(gs, alpha, idx + 1, &li, n)?;
            acc += factor * tail;
        }
        Ok(acc)
    }
    rec(gs, alpha, 0, &l0, n)
}

/// Coefficient of `x₀^{n−Σα} x₁^{α₁} ⋯ x_k^{α_k}` in
/// `det(x₀·Id + x₁g₁ + x₂g₁g₂ + … + x_k g₁⋯g_k)`, evaluated by multilinear
/// column expansion (no symbolic polynomial arithmetic).
pub fn m_tilde(gs: &[RatMat], alpha: &[usize]) -> Result<Rat> {
    let n = gs[0].len();
    check_alpha(n, alpha)?;
    if alpha.len() != gs.len() {
        return Err(Error::SizeMismatch("alpha length must match factor count".into()));
    }
    let mut blocks = Vec::with_capacity(gs.len());
    let mut running = mat_identity(n);
    for g in gs {
        running = mat_mul(&running, g);
        blocks.push(running.clone());
    }
    // Assign to every column position one block (0 = identity); the number of
    // positions assigned to block i must be α_i.
    let mut acc = Rat::zero();
    let mut assignment = vec![0usize; n];
    fn rec(
        pos: usize,
        remaining: &mut Vec<usize>,
        assignment: &mut Vec<usize>,
        blocks: &[RatMat],
        acc: &mut Rat,
        n: usize,
    ) {
        if pos == n {
            let mut cols: RatMat = vec![vec![Rat::zero(); n]; n];
            for c in 0..n {
                for r in 0..n {
                    cols[r][c] = if assignment[c] == 0 {
                        if r == c {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    } else {
                        blocks[assignment[c] - 1][r][c].clone()
                    };
                }
            }
            *acc += det_rational(&cols);
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] == 0 {
                continue;
            }
            remaining[b] -= 1;
            assignment[pos] = b;
            rec(pos + 1, remaining, assignment, blocks, acc, n);
            remaining[b] += 1;
        }
    }
    let total: usize = alpha.iter().sum();
    let mut remaining = vec![n - total];
    remaining.extend(alpha.iter().copied());
    rec(0, &mut remaining, &mut assignment, &blocks, &mut acc, n);
    Ok(acc)
}

fn is_unit_upper(u: &RatMat) -> bool {
    let n = u.len();
    for i in 0..n {
        if !u[i][i].is_one() {
            return false;
        }
        for j in 0..i {
            if !u[i][j].is_zero() {
                return false;
            }
        }
    }
    true
}

/// Inverse of a unit upper-triangular matrix by back substitution.
pub fn unipotent_inverse(u: &RatMat) -> Result<RatMat> {
    if !is_unit_upper(u) {
        return Err(Error::NotUnipotent);
    }
    let n = u.len();
    let mut inv = mat_identity(n);
    // Solve u · inv = id column by column, bottom-up.
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = if i == col { Rat::one() } else { Rat::zero() };
            for j in i + 1..n {
                acc -= &u[i][j] * &inv[j][col];
            }
            inv[i][col] = acc;
        }
    }
    Ok(inv)
}

/// `(u₀ g₁ u₁⁻¹, u₁ g₂ u₂⁻¹, …, u_{k−1} g_k u_k⁻¹)`.
pub fn u_action(us: &[RatMat], gs: &[RatMat]) -> Result<Vec<RatMat>> {
    if us.len() != gs.len() + 1 {
        return Err(Error::SizeMismatch("need k+1 unipotent factors".into()));
    }
    for u in us {
        if !is_unit_upper(u) {
            return Err(Error::NotUnipotent);
        }
    }
    let mut out = Vec::with_capacity(gs.len());
    for (i, g) in gs.iter().enumerate() {
        let inv = unipotent_inverse(&us[i + 1])?;
        out.push(mat_mul(&mat_mul(&us[i], g), &inv));
    }
    Ok(out)
}

fn m_or_zero(gs: &[RatMat], i: i64, j: i64, k: i64) -> Result<Rat> {
    let n = gs[0].len() as i64;
    if i < 0 || j < 0 || k < 0 || i + j + k > n {
        return Ok(Rat::zero());
    }
    multi_corner_minor(gs, &[i as usize, j as usize, k as usize])
}

/// `M_{i+1,j,k+1}M_{i,j+1,k} − M_{i,j+1,k+1}M_{i+1,j,k} − M_{i,j,k+1}M_{i+1,j+1,k}`,
/// with out-of-simplex minors set to zero. Identically zero.
pub fn geometric_octahedron_residual(gs: &[RatMat], i: usize, j: usize, k: usize) -> Result<Rat> {
    if gs.len() != 3 {
        return Err(Error::SizeMismatch("the recurrence concerns three factors".into()));
    }
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let lhs = m_or_zero(gs, i + 1, j, k + 1)? * m_or_zero(gs, i, j + 1, k)?;
    let rhs = m_or_zero(gs, i, j + 1, k + 1)? * m_or_zero(gs, i + 1, j, k)?
        + m_or_zero(gs, i, j, k + 1)? * m_or_zero(gs, i + 1, j + 1, k)?;
    Ok(lhs - rhs)
}

/// Values of all multi-corner minors indexed by `Δ³(n)`.
pub fn multi_corner_values(gs: &[RatMat]) -> Result<BTreeMap<Vec<usize>, Rat>> {
    let n = gs[0].len();
    let mut out = BTreeMap::new();
    for p in crate::multipath::simplex_points(n, 3) {
        out.insert(p.clone(), multi_corner_minor(gs, &p)?);
    }
    Ok(out)
}

/// Solve the recurrence for the minors from a face pair, in the same partial
/// order as the tropical fill; exact division replaces tropical subtraction.
pub fn octahedron_fill_rational(
    n: usize,
    values: &BTreeMap<Vec<usize>, Rat>,
    from: FillFrom,
) -> Result<BTreeMap<Vec<usize>, Rat>> {
    let needed = crate::horncheck::fill_input_points(n, from);
    for p in &needed {
        if !values.contains_key(p) {
            return Err(Error::Precondition(format!("missing input value at {p:?}")));
        }
    }
    let mut m = values.clone();
    let mut unknown: Vec<Vec<usize>> = crate::multipath::simplex_points(n, 3)
        .into_iter()
        .filter(|p| !m.contains_key(p))
        .collect();
    match from {
        FillFrom::KZeroAndIZero => {
            unknown.sort_by_key(|p| (p[0] + p[2], p.clone()));
            for p in unknown {
                let (i, j, k) = (p[0] - 1, p[1], p[2] - 1);
                let divisor = m[&vec![i, j + 1, k]].clone();
                if divisor.is_zero() {
                    return Err(Error::SingularMinor(format!("fill pivot at {p:?}")));
                }
                let num = &m[&vec![i, j + 1, k + 1]] * &m[&vec![i + 1, j, k]]
                    + &m[&vec![i, j, k + 1]] * &m[&vec![i + 1, j + 1, k]];
                m.insert(p, num / divisor);
            }
        }
        FillFrom::JZeroAndSum => {
            unknown.sort_by_key(|p| (std::cmp::Reverse(p[0] + p[2]), p.clone()));
            for p in unknown {
                let (i, j, k) = (p[0], p[1] - 1, p[2]);
                let divisor = m[&vec![i + 1, j, k + 1]].clone();
                if divisor.is_zero() {
                    return Err(Error::SingularMinor(format!("fill pivot at {p:?}")));
                }
                let num = &m[&vec![i, j + 1, k + 1]] * &m[&vec![i + 1, j, k]]
                    + &m[&vec![i, j, k + 1]] * &m[&vec![i + 1, j + 1, k]];
                m.insert(p, num / divisor);
            }
        }
    }
    Ok(m)
}

/// The Berenstein–Kazhdan potential as a sum of minor ratios. Errors name
/// the index whose denominator minor vanishes.
pub fn bk_potential(g: &RatMat) -> Result<Rat> {
    let n = g.len();
    let mut acc = Rat::zero();
    for i in 1..n {
        let rows_num1 = opposite(
            &(1..=i + 1).filter(|&x| x != i).collect::<Vec<_>>(),
            n,
        );
        let cols: Vec<usize> = (1..=i).collect();
        let num1 = minor(g, &rows_num1, &cols)?;
        let rows = opposite(&cols, n);
        let cols_num2: Vec<usize> = (1..=i + 1).filter(|&x| x != i).collect();
        let num2 = minor(g, &rows, &cols_num2)?;
        let den = minor(g, &rows, &cols)?;
        if den.is_zero() {
            return Err(Error::SingularMinor(format!("corner minor {i} vanishes")));
        }
        acc += (num1 + num2) / den;
    }
    Ok(acc)
}

/// `Φ_BK(g₁) + … + Φ_BK(g_k) − Φ_BK(g₁⋯g_k)`.
pub fn potential_k(gs: &[RatMat]) -> Result<Rat> {
    let mut acc = Rat::zero();
    let mut prod = mat_identity(gs[0].len());
    for g in gs {
        acc += bk_potential(g)?;
        prod = mat_mul(&prod, g);
    }
    Ok(acc - bk_potential(&prod)?)
}

/// Geometric triangular pattern: `rows[l-1]` holds `(λ_1^{(l)}, …, λ_l^{(l)})`,
/// all nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomPattern {
    pub rows: Vec<Vec<Rat>>,
}

impl GeomPattern {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(Error::SizeMismatch("triangular rows expected".into()));
            }
            if row.iter().any(|x| x.is_zero()) {
                return Err(Error::NumericDomain("pattern entries must be nonzero".into()));
            }
        }
        Ok(GeomPattern { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// `λ_j^{(l)}`.
    pub fn lam(&self, j: usize, l: usize) -> &Rat {
        &self.rows[l - 1][j - 1]
    }
}

/// Matrix of the triangular chart: `diag(λ_n^{(n)}, …, λ_1^{(n)})` times the
/// ordered product of elementary factors `x_{i-j}(t_{ij})` with
/// `t_{ij} = λ_{n+1-j}^{(n+i-j)} / λ_{n+1-j}^{(n)}`, `(i,j)` lexicographic.
pub fn theta_gz(p: &GeomPattern) -> Result<RatMat> {
    let n = p.n();
    let mut b: RatMat = vec![vec![Rat::zero(); n]; n];
    for r in 0..n {
        b[r][r] = p.lam(n - r, n).clone();
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let t = p.lam(n + 1 - j, n + i - j) / p.lam(n + 1 - j, n);
            if t.is_zero() {
                return Err(Error::NumericDomain("zero chart parameter".into()));
            }
            // x_{-(j-i)}(t): identity with block [[t⁻¹, 0], [1, t]] at rows
            // and columns (j-i, j-i+1), 1-based.
            let m = j - i;
            let mut x = mat_identity(n);
            x[m - 1][m - 1] = Rat::one() / &t;
            x[m][m - 1] = Rat::one();
            x[m][m] = t;
            b = mat_mul(&b, &x);
        }
    }
    Ok(b)
}

/// Recover the pattern from a matrix via the minor ratios
/// `Δ_{i,j} = Δ_{[1,j]^op, [i+1, i+j]}`, `λ_j^{(n-i)} = Δ_{i,j} / Δ_{i,j-1}`.
pub fn gz_pattern_of(b: &RatMat) -> Result<GeomPattern> {
    let n = b.len();
    let mut rows = vec![Vec::new(); n];
    for i in 0..n {
        let mut prev = Rat::one();
        for j in 1..=n - i {
            let rset = opposite(&(1..=j).collect::<Vec<_>>(), n);
            let cset: Vec<usize> = (i + 1..=i + j).collect();
            let d = minor(b, &rset, &cset)?;
            if d.is_zero() {
                return Err(Error::SingularMinor(format!(
                    "chart minor ({i},{j}) vanishes"
                )));
            }
            rows[n - i - 1].push(&d / &prev);
            prev = d;
        }
    }
    GeomPattern::new(rows)
}

/// The potential evaluated through the chart:
/// `Σ λ_j^{(n-i-1)}/λ_j^{(n-i)} + Σ λ_{j+1}^{(n-i+1)}/λ_j^{(n-i)}`.
pub fn bk_potential_lambda(p: &GeomPattern) -> Rat {
    let n = p.n();
    let mut acc = Rat::zero();
    for i in 0..n {
        for j in 1..=n {
            if i + j < n {
                acc += p.lam(j, n - i - 1) / p.lam(j, n - i);
            }
        }
    }
    for i in 1..n {
        for j in 1..=n {
            if i + j <= n {
                acc += p.lam(j + 1, n - i + 1) / p.lam(j, n - i);
            }
        }
    }
    acc
}

/// Corner minors `M_i = Δ_{[1,i]^op, [1,i]}`.
pub fn corner_minor(g: &RatMat, i: usize) -> Result<Rat> {
    let n = g.len();
    let cols: Vec<usize> = (1..=i).collect();
    minor(g, &opposite(&cols, n), &cols)
}

/// Highest-weight map: `diag(M_n/M_{n-1}, …, M_2/M_1, M_1)`.
pub fn hw(g: &RatMat) -> Result<Vec<Rat>> {
    let n = g.len();
    let mut ms = vec![Rat::one()];
    for i in 1..=n {
        let m = corner_minor(g, i)?;
        if m.is_zero() {
            return Err(Error::SingularMinor(format!("corner minor {i} vanishes")));
        }
        ms.push(m);
    }
    Ok((0..n).map(|t| &ms[n - t] / &ms[n - t - 1]).collect())
}

/// The antidiagonal lift of the longest permutation: entry
/// `(i, n+1-i) = (−1)^{n−i}`.
pub fn w0_bar(n: usize) -> RatMat {
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 1..=n {
        let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
        m[i - 1][n - i] = rat_int(sign);
    }
    m
}

/// Random integer matrix with entries in `[-9, 9]`, rejecting singular draws.
pub fn random_invertible(n: usize, rng: &mut impl rand::Rng) -> RatMat {
    loop {
        let m: RatMat = (0..n)
            .map(|_| (0..n).map(|_| rat_int(rng.gen_range(-9..=9))).collect())
            .collect();
        if !det_rational(&m).is_zero() {
            return m;
        }
    }
}

/// Random unit upper-triangular matrix with integer entries in `[-9, 9]`.
pub fn random_unipotent(n: usize, rng: &mut impl rand::Rng) -> RatMat {
    let mut m = mat_identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = rat_int(rng.gen_range(-9..=9));
        }
    }
    m
}

/// Random lower-triangular matrix with nonzero integer diagonal.
pub fn random_lower_positive(n: usize, rng: &mut impl rand::Rng) -> RatMat {
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..i {
            m[i][j] = rat_int(rng.gen_range(-9..=9));
        }
        m[i][i] = rat_int(rng.gen_range(1..=9));
    }
    m
}
