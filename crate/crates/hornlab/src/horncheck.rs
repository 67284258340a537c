//! Condition systems on m-functions: trace equalities, rhombus inequalities
//! (on the distinguished faces or over all plane rhombi), tetrahedron
//! equalities, the octahedron recurrence, recurrence-based filling from a
//! face pair, and the tropical potentials equivalent to these conditions.
//!
//! All comparisons are exact over rationals; the tetrahedron equality is a
//! measure-zero condition and must not be blurred by an epsilon.

use std::collections::{BTreeMap, BTreeSet};

use crate::multipath::MFunction;
use crate::trop::{interlacing_values, GzPattern, Trop};
use crate::{Error, Result};

/// A small plane rhombus, generated from a barycentric base point `base`
/// (length `k+1`, summing to `n`, index 0 the slack coordinate), a
/// distinguished index `a` and a pair `{b, c}`: the vertices are `base`,
/// `base − f_a + f_b`, `base − f_a + f_c` (the short diagonal) and
/// `base − 2f_a + f_b + f_c` (the far end of the long diagonal).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RhombusSpec {
    pub base: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl RhombusSpec {
    fn shift(point: &[usize], minus: &[usize], plus: &[usize]) -> Option<Vec<usize>> {
        let mut out = point.to_vec();
        for &m in minus {
            if out[m] == 0 {
                return None;
            }
            out[m] -= 1;
        }
        for &p in plus {
            out[p] += 1;
        }
        Some(out)
    }

    /// Barycentric vertices `(long1, short1, short2, long2)`.
    pub fn barycentric_vertices(&self) -> Option<[Vec<usize>; 4]> {
        let long1 = self.base.clone();
        let short1 = Self::shift(&self.base, &[self.a], &[self.b])?;
        let short2 = Self::shift(&self.base, &[self.a], &[self.c])?;
        let long2 = Self::shift(&self.base, &[self.a, self.a], &[self.b, self.c])?;
        Some([long1, short1, short2, long2])
    }

    /// The same vertices in simplex coordinates (slack index dropped).
    pub fn vertices(&self) -> Option<[Vec<usize>; 4]> {
        self.barycentric_vertices()
            .map(|vs| vs.map(|v| v[1..].to_vec()))
    }
}

/// The base triple of a small tetrahedron; all six midpoints fit inside the
/// simplex exactly when `i + j + k + 2 ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TetrahedronSpec {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// Which rhombi to scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhombusScope {
    /// Only rhombi on the faces `F_l = {(0^l, i, j, 0^{k-l-2})}`.
    FacesOnly,
    /// Every small plane rhombus of `Δ³(n)` (three factors only).
    AllPlane,
}

fn barycentric_points(n: usize, support: &[usize], dims: usize) -> Vec<Vec<usize>> {
    // All nonnegative integer vectors of length `dims` supported on `support`
    // and summing to n.
    let mut out = Vec::new();
    let mut cur = vec![0usize; dims];
    fn rec(
        support: &[usize],
        pos: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == support.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=left {
            cur[support[pos]] = v;
            rec(support, pos + 1, left - v, cur, out);
        }
        cur[support[pos]] = 0;
    }
    rec(support, 0, n, &mut cur, &mut out);
    out
}

/// All small plane rhombi of `Δ^k(n)` within the given barycentric support
/// (all of `0..=k` for the all-plane scan, a face triple for face scans).
fn rhombi_on_support(n: usize, k: usize, support: &[usize]) -> Vec<RhombusSpec> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for base in barycentric_points(n, support, k + 1) {
        for &a in support {
            if base[a] < 2 {
                continue;
            }
            let others: Vec<usize> = support.iter().copied().filter(|&x| x != a).collect();
            for bi in 0..others.len() {
                for ci in bi + 1..others.len() {
                    let spec = RhombusSpec { base: base.clone(), a, b: others[bi], c: others[ci] };
                    if let Some(vs) = spec.barycentric_vertices() {
                        let mut key: Vec<Vec<usize>> = vs.to_vec();
                        key.sort();
                        if seen.insert(key) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}

/// All plane rhombi of `Δ³(n)`.
pub fn all_plane_rhombi(n: usize) -> Vec<RhombusSpec> {
    rhombi_on_support(n, 3, &[0, 1, 2, 3])
}

/// Rhombi on the faces `F_0, …, F_{k-2}`.
pub fn face_rhombi(n: usize, k: usize) -> Vec<RhombusSpec> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for l in 0..=k.saturating_sub(2) {
        for spec in rhombi_on_support(n, k, &[0, l + 1, l + 2]) {
            if let Some(vs) = spec.barycentric_vertices() {
                let mut key: Vec<Vec<usize>> = vs.to_vec();
                key.sort();
                if seen.insert(key) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Short-diagonal sum ≥ long-diagonal sum for one rhombus.
fn rhombus_holds(m: &MFunction, spec: &RhombusSpec) -> bool {
    let [long1, short1, short2, long2] = spec.vertices().expect("in-simplex rhombus");
    let short = m.get(&short1).tmul(m.get(&short2));
    let long = m.get(&long1).tmul(m.get(&long2));
    short >= long
}

/// Scan rhombi in the requested scope; returns the violated ones.
pub fn rhombus_check(m: &MFunction, scope: RhombusScope) -> Result<Vec<RhombusSpec>> {
    let specs = match scope {
        RhombusScope::FacesOnly => face_rhombi(m.n, m.k),
        RhombusScope::AllPlane => {
            if m.k != 3 {
                return Err(Error::Precondition(
                    "all-plane rhombus scan needs three factors".into(),
                ));
            }
            all_plane_rhombi(m.n)
        }
    };
    Ok(specs.into_iter().filter(|s| !rhombus_holds(m, s)).collect())
}

/// Base triples of all small tetrahedra of `Δ³(n)`.
pub fn small_tetrahedra(n: usize) -> Vec<TetrahedronSpec> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for i in 0..=n - 2 {
        for j in 0..=n - 2 - i {
            for k in 0..=n - 2 - i - j {
                out.push(TetrahedronSpec { i, j, k });
            }
        }
    }
    out
}

fn opposite_edge_sums(m: &MFunction, t: &TetrahedronSpec) -> (Trop, Trop, Trop) {
    let (i, j, k) = (t.i, t.j, t.k);
    let a = m.get(&[i, j, k + 1]).tmul(m.get(&[i + 1, j + 1, k]));
    let b = m.get(&[i, j + 1, k]).tmul(m.get(&[i + 1, j, k + 1]));
    let c = m.get(&[i + 1, j, k]).tmul(m.get(&[i, j + 1, k + 1]));
    (a, b, c)
}

/// Tetrahedron equalities: the maximum of the three opposite-edge sums must
/// be attained at least twice.
pub fn tetrahedron_check(m: &MFunction) -> Result<Vec<TetrahedronSpec>> {
    if m.k != 3 {
        return Err(Error::Precondition("tetrahedron scan needs three factors".into()));
    }
    let mut violations = Vec::new();
    for t in small_tetrahedra(m.n) {
        let (a, b, c) = opposite_edge_sums(m, &t);
        let max = a.clone().max(b.clone()).max(c.clone());
        let hits = [&a, &b, &c].iter().filter(|v| ***v == max).count();
        if hits < 2 {
            violations.push(t);
        }
    }
    Ok(violations)
}

/// Octahedron recurrence: `b₁+b₂ = max{c₁+c₂, a₁+a₂}` exactly, per small
/// tetrahedron.
pub fn octahedron_check(m: &MFunction) -> Result<Vec<TetrahedronSpec>> {
    if m.k != 3 {
        return Err(Error::Precondition("octahedron scan needs three factors".into()));
    }
    let mut violations = Vec::new();
    for t in small_tetrahedra(m.n) {
        let (a, b, c) = opposite_edge_sums(m, &t);
        if b != a.max(c) {
            violations.push(t);
        }
    }
    Ok(violations)
}

/// Input face pair for [`octahedron_fill`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillFrom {
    /// Values on `{j = 0} ∪ {i+j+k = n}`; the recurrence solves for
    /// `m_{i,j+1,k}` moving toward the faces `{k = 0} ∪ {i = 0}`.
    JZeroAndSum,
    /// Values on `{k = 0} ∪ {i = 0}`; the recurrence solves for
    /// `m_{i+1,j,k+1}` in the opposite direction.
    KZeroAndIZero,
}

/// Points of the face pair.
pub fn fill_input_points(n: usize, from: FillFrom) -> Vec<Vec<usize>> {
    crate::multipath::simplex_points(n, 3)
        .into_iter()
        .filter(|p| match from {
            FillFrom::JZeroAndSum => p[1] == 0 || p.iter().sum::<usize>() == n,
            FillFrom::KZeroAndIZero => p[2] == 0 || p[0] == 0,
        })
        .collect()
}

fn check_input_rhombi(
    n: usize,
    values: &BTreeMap<Vec<usize>, Trop>,
    from: FillFrom,
) -> Vec<RhombusSpec> {
    let mut violated = Vec::new();
    for spec in all_plane_rhombi(n) {
        let vs = spec.vertices().expect("in-simplex");
        if !vs.iter().all(|v| values.contains_key(v)) {
            continue;
        }
        // Restrict to rhombi lying inside one input face.
        let on_one_face = match from {
            FillFrom::JZeroAndSum => {
                vs.iter().all(|v| v[1] == 0)
                    || vs.iter().all(|v| v.iter().sum::<usize>() == n)
            }
            FillFrom::KZeroAndIZero => {
                vs.iter().all(|v| v[2] == 0) || vs.iter().all(|v| v[0] == 0)
            }
        };
        if !on_one_face {
            continue;
        }
        let short = values[&vs[1]].tmul(&values[&vs[2]]);
        let long = values[&vs[0]].tmul(&values[&vs[3]]);
        if short < long {
            violated.push(spec);
        }
    }
    violated
}

/// Fill the whole simplex from values on a face pair by solving the
/// octahedron recurrence in the partial order that makes every step
/// determined. Inconsistent input (a rhombus violation on the given faces)
/// is reported before any filling.
pub fn octahedron_fill(
    n: usize,
    values: &BTreeMap<Vec<usize>, Trop>,
    from: FillFrom,
) -> Result<MFunction> {
    let needed = fill_input_points(n, from);
    for p in &needed {
        if !values.contains_key(p) {
            return Err(Error::Precondition(format!("missing input value at {p:?}")));
        }
    }
    if values.len() != needed.len() {
        return Err(Error::Precondition(
            "input carries values outside the face pair".into(),
        ));
    }
    let violated = check_input_rhombi(n, values, from);
    if !violated.is_empty() {
        return Err(Error::Precondition(format!(
            "{} rhombus inequalities violated on the input faces: {:?}",
            violated.len(),
            violated.iter().take(3).collect::<Vec<_>>()
        )));
    }
    let mut m: BTreeMap<Vec<usize>, Trop> = values.clone();
    let mut unknown: Vec<Vec<usize>> = crate::multipath::simplex_points(n, 3)
        .into_iter()
        .filter(|p| !m.contains_key(p))
        .collect();
    match from {
        FillFrom::KZeroAndIZero => {
            // Unknowns have i ≥ 1 and k ≥ 1; fill by increasing i + k.
            unknown.sort_by_key(|p| (p[0] + p[2], p.clone()));
            for p in unknown {
                let (i, j, k) = (p[0] - 1, p[1], p[2] - 1);
                let c = m[&vec![i + 1, j, k]].tmul(&m[&vec![i, j + 1, k + 1]]);
                let a = m[&vec![i, j, k + 1]].tmul(&m[&vec![i + 1, j + 1, k]]);
                let divisor = m[&vec![i, j + 1, k]].clone();
                let v = a.max(c).sub(&divisor).map_err(|_| {
                    Error::NonFinite(format!("fill deadlock at {p:?}"))
                })?;
                m.insert(p, v);
            }
        }
        FillFrom::JZeroAndSum => {
            // Unknowns have j ≥ 1 and i+j+k < n; fill by decreasing i + k.
            unknown.sort_by_key(|p| (std::cmp::Reverse(p[0] + p[2]), p.clone()));
            for p in unknown {
                let (i, j, k) = (p[0], p[1] - 1, p[2]);
                let c = m[&vec![i + 1, j, k]].tmul(&m[&vec![i, j + 1, k + 1]]);
                let a = m[&vec![i, j, k + 1]].tmul(&m[&vec![i + 1, j + 1, k]]);
                let divisor = m[&vec![i + 1, j, k + 1]].clone();
                let v = a.max(c).sub(&divisor).map_err(|_| {
                    Error::NonFinite(format!("fill deadlock at {p:?}"))
                })?;
                m.insert(p, v);
            }
        }
    }
    MFunction::from_values(n, 3, m)
}

/// Trace equalities on the six partial-sum rows `(λ, μ, ν, ρ, σ, τ)`:
/// `Σλ + Σμ = Σρ`, `Σμ + Σν = Σσ`, `Σρ + Σν = Στ`.
pub fn trace_check(rows: &[Vec<Trop>; 6]) -> Result<bool> {
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch("trace rows must share length".into()));
    }
    let last = |idx: usize| rows[idx].last().unwrap();
    let (l, mu, nu, rho, sigma, tau) = (last(0), last(1), last(2), last(3), last(4), last(5));
    Ok(l.tmul(mu) == *rho && mu.tmul(nu) == *sigma && rho.tmul(nu) == *tau)
}

fn finite_value<'a>(m: &'a MFunction, alpha: &[usize]) -> Result<&'a num_rational::BigRational> {
    m.get(alpha)
        .as_rational()
        .ok_or_else(|| Error::NonFinite(format!("m at {alpha:?}")))
}

/// Tropical potential of the face charts: the maximum, over the faces `F_l`
/// and the three Laurent-monomial families of the exact potential, of the
/// signed four-term sums. It is ≤ 0 exactly when every face rhombus
/// inequality holds.
pub fn trop_potential_phi_k(m: &MFunction) -> Result<Trop> {
    if m.k < 2 {
        return Err(Error::Precondition("potential needs at least two factors".into()));
    }
    let n = m.n;
    let mut best = Trop::NegInf;
    let mut consider = |v: num_rational::BigRational| {
        let v = Trop::Fin(v);
        if v > best {
            best = v;
        }
    };
    for l in 0..=m.k - 2 {
        let at = |i: usize, j: usize| -> Vec<usize> {
            let mut p = vec![0usize; m.k];
            p[l] = i;
            p[l + 1] = j;
            p
        };
        // family 1: m(i,j-1) + m(i+1,j) − m(i,j) − m(i+1,j-1)
        for i in 0..n {
            for j in 1..=n {
                if i + 1 + j > n {
                    continue;
                }
                let v = finite_value(m, &at(i, j - 1))? + finite_value(m, &at(i + 1, j))?
                    - finite_value(m, &at(i, j))?
                    - finite_value(m, &at(i + 1, j - 1))?;
                consider(v);
            }
        }
        // family 2: m(i,j-1) + m(i-1,j+1) − m(i,j) − m(i-1,j)
        for i in 1..=n {
            for j in 1..=n {
                if i + j > n {
                    continue;
                }
                let v = finite_value(m, &at(i, j - 1))? + finite_value(m, &at(i - 1, j + 1))?
                    - finite_value(m, &at(i, j))?
                    - finite_value(m, &at(i - 1, j))?;
                consider(v);
            }
        }
        // family 3: m(i-1,j+1) + m(i+1,j) − m(i,j+1) − m(i,j)
        for i in 1..=n {
            for j in 0..n {
                if i + j + 1 > n {
                    continue;
                }
                let v = finite_value(m, &at(i - 1, j + 1))? + finite_value(m, &at(i + 1, j))?
                    - finite_value(m, &at(i, j + 1))?
                    - finite_value(m, &at(i, j))?;
                consider(v);
            }
        }
    }
    Ok(best)
}

/// Tropical triangular potential of a pattern: the maximum over the monomials
/// `λ_j^{(n−i−1)} − λ_j^{(n−i)}` (`0 ≤ i ≤ n−1`, `i + j < n`) and
/// `λ_{j+1}^{(n−i+1)} − λ_j^{(n−i)}` (`1 ≤ i ≤ n−1`, `i + j ≤ n`). It is ≤ 0
/// exactly when the pattern satisfies the interlacing inequalities.
pub fn trop_potential_bk(p: &GzPattern) -> Result<Trop> {
    if !p.is_finite() {
        return Err(Error::NonFinite("triangular potential".into()));
    }
    let n = p.n();
    let lam = interlacing_values(p);
    let get = |j: usize, l: usize| lam[l - 1][j - 1].as_rational().unwrap();
    let mut best = Trop::NegInf;
    for i in 0..=n.saturating_sub(1) {
        for j in 1..=n {
            if i + j < n {
                let v = get(j, n - i - 1) - get(j, n - i);
                let v = Trop::Fin(v);
                if v > best {
                    best = v;
                }
            }
        }
    }
    for i in 1..=n.saturating_sub(1) {
        for j in 1..=n {
            if i + j <= n {
                let v = get(j + 1, n - i + 1) - get(j, n - i);
                let v = Trop::Fin(v);
                if v > best {
                    best = v;
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trop::gz_check_int;

    fn t(v: i64) -> Trop {
        Trop::from_int(v)
    }

    /// The worked m-function: corners (0,3,5,5), midpoints 2,3,4,4,6,7.
    pub(crate) fn demo_m() -> MFunction {
        let mut values = BTreeMap::new();
        for (alpha, v) in [
            (vec![0, 0, 0], 0),
            (vec![1, 0, 0], 2),
            (vec![0, 1, 0], 3),
            (vec![0, 0, 1], 4),
            (vec![1, 1, 0], 4),
            (vec![1, 0, 1], 6),
            (vec![0, 1, 1], 7),
            (vec![2, 0, 0], 3),
            (vec![0, 2, 0], 5),
            (vec![0, 0, 2], 5),
        ] {
            values.insert(alpha, t(v));
        }
        MFunction::from_values(2, 3, values).unwrap()
    }

    #[test]
    fn trace_on_demo_values() {
        let rows = [
            vec![t(2), t(3)],
            vec![t(1), t(2)],
            vec![t(2), t(0)],
            vec![t(3), t(5)],
            vec![t(3), t(2)],
            vec![t(4), t(5)],
        ];
        assert!(trace_check(&rows).unwrap());
        let zeros = [vec![t(0); 2], vec![t(0); 2], vec![t(0); 2], vec![t(0); 2], vec![t(0); 2], vec![t(0); 2]];
        assert!(trace_check(&zeros).unwrap());
        let mut bad = rows.clone();
        bad[5] = vec![t(4), t(6)];
        assert!(!trace_check(&bad).unwrap());
    }

    #[test]
    fn demo_m_passes_all_checks() {
        let m = demo_m();
        assert!(rhombus_check(&m, RhombusScope::AllPlane).unwrap().is_empty());
        assert!(tetrahedron_check(&m).unwrap().is_empty());
        assert!(octahedron_check(&m).unwrap().is_empty());
    }

    #[test]
    fn demo_tetrahedron_sums() {
        let m = demo_m();
        let t0 = TetrahedronSpec { i: 0, j: 0, k: 0 };
        let (a, b, c) = opposite_edge_sums(&m, &t0);
        assert_eq!(a, t(8));
        assert_eq!(b, t(9));
        assert_eq!(c, t(9));
    }

    #[test]
    fn broken_value_triggers_violations() {
        let mut m = demo_m();
        m.set(&[1, 0, 0], t(10));
        let v = rhombus_check(&m, RhombusScope::AllPlane).unwrap();
        assert!(!v.is_empty());
        // The rhombus with short diagonal {010phantom...}: vertices
        // {020, 010, 110, 100} has its long diagonal through (1,0,0).
        let hit = v.iter().any(|spec| {
            let vs = spec.vertices().unwrap();
            let mut set: Vec<Vec<usize>> = vs.to_vec();
            set.sort();
            set == vec![vec![0, 1, 0], vec![0, 2, 0], vec![1, 0, 0], vec![1, 1, 0]]
        });
        assert!(hit);
    }

    #[test]
    fn tetrahedron_violation_when_max_unique() {
        // A=1 via m_{001}=1, everything else 0: max attained once.
        let mut m = MFunction::constant_zero(2, 3);
        m.set(&[0, 0, 1], t(1));
        let v = tetrahedron_check(&m).unwrap();
        assert_eq!(v.len(), 1);
        // all-zero passes
        assert!(tetrahedron_check(&MFunction::constant_zero(2, 3)).unwrap().is_empty());
        assert!(octahedron_check(&MFunction::constant_zero(2, 3)).unwrap().is_empty());
    }

    #[test]
    fn octahedron_fails_when_b_off() {
        // B = 8 while A = 8, C = 9 → tetrahedron passes? max{A,C}=9 attained once ->
        // tetra fails too, but octahedron specifically compares B with max{A,C}.
        let mut m = demo_m();
        m.set(&[0, 1, 0], t(2)); // B = 2 + 6 = 8
        let v = octahedron_check(&m).unwrap();
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn fill_reproduces_demo_interior() {
        let m = demo_m();
        // Input pair {j=0} ∪ {i+j+k=2}: everything except (0,1,0).
        let mut values = BTreeMap::new();
        for p in fill_input_points(2, FillFrom::JZeroAndSum) {
            values.insert(p.clone(), m.get(&p).clone());
        }
        let filled = octahedron_fill(2, &values, FillFrom::JZeroAndSum).unwrap();
        assert_eq!(filled.get(&[0, 1, 0]), &t(3));
        assert_eq!(&filled, &m);
        // Other direction: input {k=0} ∪ {i=0}, unknown (1,0,1).
        let mut values = BTreeMap::new();
        for p in fill_input_points(2, FillFrom::KZeroAndIZero) {
            values.insert(p.clone(), m.get(&p).clone());
        }
        let filled = octahedron_fill(2, &values, FillFrom::KZeroAndIZero).unwrap();
        assert_eq!(filled.get(&[1, 0, 1]), &t(6));
        assert_eq!(&filled, &m);
    }

    #[test]
    fn fill_all_zero() {
        let mut values = BTreeMap::new();
        for p in fill_input_points(3, FillFrom::KZeroAndIZero) {
            values.insert(p, t(0));
        }
        let filled = octahedron_fill(3, &values, FillFrom::KZeroAndIZero).unwrap();
        for (_, v) in filled.values() {
            assert_eq!(v, &t(0));
        }
    }

    #[test]
    fn fill_rejects_violating_input() {
        let m = demo_m();
        let mut values = BTreeMap::new();
        for p in fill_input_points(2, FillFrom::JZeroAndSum) {
            values.insert(p.clone(), m.get(&p).clone());
        }
        values.insert(vec![1, 0, 0], t(50));
        let err = octahedron_fill(2, &values, FillFrom::JZeroAndSum);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn phi_k_matches_face_rhombi_on_demo() {
        let m = demo_m();
        let phi = trop_potential_phi_k(&m).unwrap();
        assert!(phi <= t(0));
        // equals the negated minimal face slack
        let mut max_violation = Trop::NegInf;
        for spec in face_rhombi(2, 3) {
            let vs = spec.vertices().unwrap();
            let long = m.get(&vs[0]).tmul(m.get(&vs[3]));
            let short = m.get(&vs[1]).tmul(m.get(&vs[2]));
            let diff = long.sub(&short).unwrap();
            if diff > max_violation {
                max_violation = diff;
            }
        }
        assert_eq!(phi, max_violation);
        assert_eq!(trop_potential_phi_k(&MFunction::constant_zero(2, 3)).unwrap(), t(0));
        let mut bad = demo_m();
        bad.set(&[1, 0, 0], t(10));
        assert!(trop_potential_phi_k(&bad).unwrap() > t(0));
    }

    #[test]
    fn phi_k_biconditional_random() {
        use rand::Rng;
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(19);
        for n in 2..=3usize {
            for _ in 0..200 {
                let mut values = BTreeMap::new();
                for p in crate::multipath::simplex_points(n, 3) {
                    let v = if p.iter().all(|&x| x == 0) { 0 } else { rng.gen_range(-4..=4) };
                    values.insert(p, t(v));
                }
                let m = MFunction::from_values(n, 3, values).unwrap();
                let phi = trop_potential_phi_k(&m).unwrap();
                let faces_pass = rhombus_check(&m, RhombusScope::FacesOnly).unwrap().is_empty();
                assert_eq!(phi <= t(0), faces_pass);
            }
        }
    }

    #[test]
    fn bk_potential_examples() {
        // λ^{(2)} = (3,1), λ^{(1)} = (2) → max{2−3, 1−2} = −1
        let p = GzPattern::from_inner_rows(2, vec![vec![t(2)], vec![t(3), t(4)]]).unwrap();
        assert_eq!(trop_potential_bk(&p).unwrap(), t(-1));
        assert_eq!(trop_potential_bk(&GzPattern::zero(3)).unwrap(), t(0));
        // λ^{(1)} = (0) with λ^{(2)} = (3,1): max{−3, 1} = 1 > 0
        let p = GzPattern::from_inner_rows(2, vec![vec![t(0)], vec![t(3), t(4)]]).unwrap();
        assert_eq!(trop_potential_bk(&p).unwrap(), t(1));
        assert!(!gz_check_int(&p, 0).ok);
    }

    #[test]
    fn bk_potential_iff_gz() {
        use rand::Rng;
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(23);
        for n in 2..=3usize {
            for _ in 0..300 {
                let mut inner = Vec::new();
                for l in 1..=n {
                    inner.push((0..l).map(|_| t(rng.gen_range(-5..=5))).collect::<Vec<_>>());
                }
                let p = GzPattern::from_inner_rows(n, inner).unwrap();
                let phi = trop_potential_bk(&p).unwrap();
                assert_eq!(phi <= t(0), gz_check_int(&p, 0).ok);
            }
        }
    }

    #[test]
    fn rhombus_counts_small() {
        assert_eq!(all_plane_rhombi(2).len(), 12);
        // n=2: every plane rhombus lies in a face of the tetrahedron.
        for spec in all_plane_rhombi(2) {
            let vs = spec.vertices().unwrap();
            let in_some_face = (0..4).any(|d| {
                vs.iter().all(|v| {
                    let total: usize = v.iter().sum();
                    match d {
                        0 => total == 2,
                        _ => v[d - 1] == 0,
                    }
                })
            });
            assert!(in_some_face);
        }
    }
}
