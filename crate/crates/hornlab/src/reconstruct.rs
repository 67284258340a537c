//! Surjectivity constructions: from values on the face pair
//! `{j = 0} ∪ {i+j+k = n}` of the value tetrahedron, build a triple of
//! weightings on standard networks whose m-function restricts to the given
//! data, via the boundary-multipath map and its triangular inverse. Also the
//! explicit rank-2 construction covering the tetrahedron-equality cone.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::horncheck::all_plane_rhombi;
use crate::multipath::{
    chart_a, chart_a_inverse, constrained_multipaths, m_map, Concat, MFunction, Multipath,
    DEFAULT_STATE_CAP,
};
use crate::network::{
    standard_network, standard_weighting, PlanarNetwork, SlantSpec, Weighting,
};
use crate::trop::{gz_check_int, GzPattern, Trop};
use crate::{Error, Result};

/// Values on the two faces `{j = 0} ∪ {i+j+k = n}`, with a zero at the
/// origin. The domain has `n(n+2)` nontrivial points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFaceData {
    pub n: usize,
    values: BTreeMap<Vec<usize>, Trop>,
}

/// The face-pair domain.
pub fn two_face_points(n: usize) -> Vec<Vec<usize>> {
    crate::multipath::simplex_points(n, 3)
        .into_iter()
        .filter(|p| p[1] == 0 || p.iter().sum::<usize>() == n)
        .collect()
}

impl TwoFaceData {
    pub fn new(n: usize, values: BTreeMap<Vec<usize>, Trop>) -> Result<Self> {
        let domain = two_face_points(n);
        if values.len() != domain.len() || domain.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::SizeMismatch(format!(
                "two-face data must cover exactly the {} face points",
                domain.len()
            )));
        }
        if values[&vec![0, 0, 0]] != Trop::one() {
            return Err(Error::Precondition("value at the origin must be 0".into()));
        }
        Ok(TwoFaceData { n, values })
    }

    pub fn from_m(m: &MFunction) -> Result<Self> {
        let values = two_face_points(m.n)
            .into_iter()
            .map(|p| {
                let v = m.get(&p).clone();
                (p, v)
            })
            .collect();
        TwoFaceData::new(m.n, values)
    }

    pub fn get(&self, p: &[usize]) -> &Trop {
        &self.values[p]
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Trop> {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.values().all(Trop::is_finite)
    }

    /// Rhombi lying inside one of the two faces whose inequality fails.
    pub fn violated_face_rhombi(&self) -> Vec<crate::horncheck::RhombusSpec> {
        let mut out = Vec::new();
        for spec in all_plane_rhombi(self.n) {
            let vs = spec.vertices().expect("in simplex");
            let on_j0 = vs.iter().all(|v| v[1] == 0);
            let on_sum = vs.iter().all(|v| v.iter().sum::<usize>() == self.n);
            if !(on_j0 || on_sum) {
                continue;
            }
            let short = self.values[&vs[1]].tmul(&self.values[&vs[2]]);
            let long = self.values[&vs[0]].tmul(&self.values[&vs[3]]);
            if short < long {
                out.push(spec);
            }
        }
        out
    }
}

/// A triple of weightings on copies of the standard network: `a` and `b` are
/// essential weightings; the third factor is free only on the n
/// source-adjacent horizontal edges (its slanted edges carry weight 0), which
/// gives the expected `n(n+2)` free parameters in total.
#[derive(Clone, Debug)]
pub struct WeightTriple {
    pub a: Weighting<Trop>,
    pub b: Weighting<Trop>,
    pub c: Vec<Trop>,
}

impl WeightTriple {
    /// Materialize the third factor: `c_j` sits on the first horizontal
    /// segment of line `j`, every other edge carries weight 0.
    pub fn c_weighting(&self, net: &Arc<PlanarNetwork>) -> Result<Weighting<Trop>> {
        let n = net.rank();
        if self.c.len() != n {
            return Err(Error::SizeMismatch("one c value per line".into()));
        }
        let mut w = Weighting::identity(net.clone());
        for (j, cv) in self.c.iter().enumerate() {
            let src = net.sources()[j];
            let out = net.out_edges(src);
            if out.len() != 1 {
                return Err(Error::InvalidNetwork(
                    "standard network sources must have one outgoing edge".into(),
                ));
            }
            w.weights[out[0]] = cv.clone();
        }
        Ok(w)
    }

    /// The three factors as weighted networks.
    pub fn weightings(&self) -> Result<Vec<Weighting<Trop>>> {
        let net = self.a.net.clone();
        Ok(vec![self.a.clone(), self.b.clone(), self.c_weighting(&net)?])
    }

    /// The chart of the third factor: `α_i^{(l)}` collects
    /// `c_{l-i+1} + … + c_l`.
    pub fn c_chart(&self) -> Result<GzPattern> {
        let n = self.c.len();
        let mut inner = Vec::with_capacity(n);
        for l in 1..=n {
            let mut row = Vec::with_capacity(l);
            for i in 1..=l {
                let mut acc = Trop::one();
                for r in l - i + 1..=l {
                    acc = acc.tmul(&self.c[r - 1]);
                }
                row.push(acc);
            }
            inner.push(row);
        }
        GzPattern::from_inner_rows(n, inner)
    }
}

fn beta_sources_sinks(n: usize, p: &[usize]) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    let (i, j, k) = (p[0], p[1], p[2]);
    let total = i + j + k;
    if j == 0 {
        Ok((
            (n - i - k + 1..=n).collect(),
            vec![
                (1..=i).collect(),
                Vec::new(),
                (n - k + 1..=n).collect(),
            ],
        ))
    } else if total == n {
        Ok((
            (1..=n).collect(),
            vec![
                (1..=i).collect(),
                (1..=j).collect(),
                (n - k + 1..=n).collect(),
            ],
        ))
    } else {
        Err(Error::IndexRange(format!("{p:?} is not on the face pair")))
    }
}

/// The unique boundary multipath for an index on the face pair, found by
/// constrained enumeration in the triple concatenation.
pub fn beta_multipath(concat: &Concat, p: &[usize]) -> Result<(Multipath, Trop)> {
    let n = concat.n();
    let (sources, family_sinks) = beta_sources_sinks(n, p)?;
    let mut list = constrained_multipaths(concat, p, sources, family_sinks, DEFAULT_STATE_CAP)?;
    // Several vertex realisations of the same routing can only differ through
    // zero-weight slants of the third factor; all have equal weight, and for
    // this family the realisation avoiding them is unique.
    if list.is_empty() {
        return Err(Error::Precondition(format!(
            "no boundary multipath at {p:?}"
        )));
    }
    list.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.sinks.cmp(&y.0.sinks)));
    let first_weight = list[0].1.clone();
    if list.iter().any(|(_, w)| *w != first_weight) {
        return Err(Error::Precondition(format!(
            "boundary multipath at {p:?} is not weight-unique"
        )));
    }
    Ok(list.swap_remove(0))
}

/// Evaluate every boundary-multipath weight of a triple.
pub fn beta_map(triple: &WeightTriple) -> Result<TwoFaceData> {
    let ws = triple.weightings()?;
    let concat = Concat::new(&ws)?;
    let n = concat.n();
    let mut values = BTreeMap::new();
    for p in two_face_points(n) {
        if p.iter().all(|&x| x == 0) {
            values.insert(p, Trop::one());
            continue;
        }
        let (_, w) = beta_multipath(&concat, &p)?;
        values.insert(p, w);
    }
    TwoFaceData::new(n, values)
}

/// Invert the boundary-multipath map by the triangular elimination: first the
/// diagonal values `c_j`, `b_{j,j}`, `a_{j,j}` from consecutive differences,
/// then the charts of `a` and `b` row by row.
pub fn beta_inverse(x: &TwoFaceData) -> Result<WeightTriple> {
    if !x.is_finite() {
        return Err(Error::NonFinite("two-face data".into()));
    }
    let n = x.n;
    let v = |i: usize, j: usize, k: usize| -> &Trop { x.get(&[i, j, k]) };
    let mut c = Vec::with_capacity(n);
    let mut ab_diag = Vec::with_capacity(n); // a_jj + b_jj + c_j
    let mut b_diag = Vec::with_capacity(n);
    let mut a_diag = Vec::with_capacity(n);
    for j in 1..=n {
        let cj = v(0, j - 1, n - j + 1).sub(v(0, j, n - j))?;
        let bj_plus = v(j - 1, 0, n - j + 1).sub(v(j, 0, n - j))?; // b_jj + c_j
        let sj = v(0, 0, n - j + 1).sub(v(0, 0, n - j))?; // a_jj + b_jj + c_j
        let bj = bj_plus.sub(&cj)?;
        let aj = sj.sub(&bj_plus)?;
        c.push(cj);
        b_diag.push(bj);
        a_diag.push(aj);
        ab_diag.push(sj);
    }
    // T_l = Σ_{j>l} (a_jj + b_jj + c_j)
    let mut tail = vec![Trop::one(); n + 1];
    for l in (0..n).rev() {
        tail[l] = tail[l + 1].tmul(&ab_diag[l]);
    }
    // chart of a: A_i^{(l)} = x(i, 0, n-l) − T_l
    let mut a_inner = Vec::with_capacity(n);
    for l in 1..=n {
        let mut row = Vec::with_capacity(l);
        for i in 1..=l {
            row.push(v(i, 0, n - l).sub(&tail[l])?);
        }
        a_inner.push(row);
    }
    let a_pattern = GzPattern::from_inner_rows(n, a_inner)?;
    // chart of b: B_i^{(l)} = x(l-i, i, n-l) − Σ_j a_jj − Σ_{j>l} (b_jj + c_j)
    let sum_a = a_diag
        .iter()
        .fold(Trop::one(), |acc, v| acc.tmul(v));
    let mut tail_bc = vec![Trop::one(); n + 1];
    for l in (0..n).rev() {
        tail_bc[l] = tail_bc[l + 1].tmul(&b_diag[l]).tmul(&c[l]);
    }
    let mut b_inner = Vec::with_capacity(n);
    for l in 1..=n {
        let mut row = Vec::with_capacity(l);
        for i in 1..=l {
            row.push(v(l - i, i, n - l).sub(&sum_a)?.sub(&tail_bc[l])?);
        }
        b_inner.push(row);
    }
    let b_pattern = GzPattern::from_inner_rows(n, b_inner)?;
    let net = Arc::new(standard_network(n)?);
    let a = standard_weighting(&net, &chart_a_inverse(&a_pattern)?)?;
    let b = standard_weighting(&net, &chart_a_inverse(&b_pattern)?)?;
    Ok(WeightTriple { a, b, c })
}

/// From two-face data in the rhombus cone, reconstruct a weight triple whose
/// factors are all Gelfand–Zeitlin and whose m-function agrees with the data
/// on both faces and satisfies the octahedron recurrence throughout.
pub fn reconstruct_from_boundary(x: &TwoFaceData) -> Result<(WeightTriple, MFunction)> {
    let violated = x.violated_face_rhombi();
    if !violated.is_empty() {
        return Err(Error::Precondition(format!(
            "{} rhombus inequalities violated on the input faces: {:?}",
            violated.len(),
            violated.iter().take(3).collect::<Vec<_>>()
        )));
    }
    let triple = beta_inverse(x)?;
    for (name, pattern) in [
        ("a", chart_a(&triple.a)?),
        ("b", chart_a(&triple.b)?),
        ("c", triple.c_chart()?),
    ] {
        if !gz_check_int(&pattern, 0).ok {
            return Err(Error::NumericDomain(format!(
                "reconstructed factor {name} is not Gelfand-Zeitlin"
            )));
        }
    }
    let m = m_map(&triple.weightings()?, DEFAULT_STATE_CAP)?;
    for (p, v) in x.values() {
        if m.get(p) != v {
            return Err(Error::NumericDomain(format!(
                "reconstructed m disagrees with the input at {p:?}"
            )));
        }
    }
    if !crate::horncheck::octahedron_check(&m)?.is_empty() {
        return Err(Error::NumericDomain(
            "reconstructed m violates the octahedron recurrence".into(),
        ));
    }
    Ok((triple, m))
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(v))
}

/// A rank-2 factor with a single down slant; `bottom_left` is the weight of
/// the bottom line left of the slant foot, `top_right` of the top line right
/// of the slant head.
pub fn rank2_slant_factor(
    bottom_left: Trop,
    slant: Trop,
    top_right: Trop,
) -> Result<Weighting<Trop>> {
    let slants = vec![SlantSpec {
        from_line: 2,
        x_from: rat(3),
        to_line: 1,
        x_to: rat(5),
    }];
    let net = Arc::new(PlanarNetwork::layered(2, 8, &slants)?);
    let mut w = Weighting::identity(net.clone());
    let vert = net.vertices();
    for (e, &(t, h)) in net.edges().iter().enumerate() {
        let (vt, vh) = (&vert[t], &vert[h]);
        if vt.y == rat(1) && vh.y == rat(1) && vt.x == rat(0) {
            w.weights[e] = bottom_left.clone();
        } else if vt.y == rat(2) && vh.y == rat(2) && vt.x == rat(3) {
            w.weights[e] = top_right.clone();
        } else if vt.y != vh.y {
            w.weights[e] = slant.clone();
        }
    }
    Ok(w)
}

/// Explicit rank-2 triple with prescribed edge data
/// `(λ(1), λ(2), λ(3), λ(12), λ(23))`, valid when the face triangle
/// inequalities hold and `λ(12) + λ(23) ≤ λ(1) + λ(3)`.
pub fn n2_construct(
    l1: &BigRational,
    l2: &BigRational,
    l3: &BigRational,
    l12: &BigRational,
    l23: &BigRational,
) -> Result<Vec<Weighting<Trop>>> {
    use num_traits::Zero;
    let zero = BigRational::zero();
    for (name, v) in [("l1", l1), ("l2", l2), ("l3", l3), ("l12", l12), ("l23", l23)] {
        if *v < zero {
            return Err(Error::Precondition(format!("{name} must be nonnegative")));
        }
    }
    let l123 = l1 - l2 + l3;
    let triangle = |name: &str, a: &BigRational, b: &BigRational, c: &BigRational| -> Result<()> {
        if a > &(b + c) || b > &(a + c) || c > &(a + b) {
            return Err(Error::Precondition(format!(
                "triangle inequality fails on face {name}"
            )));
        }
        Ok(())
    };
    triangle("(1,2,12)", l1, l2, l12)?;
    triangle("(2,3,23)", l2, l3, l23)?;
    triangle("(12,3,123)", l12, l3, &l123)?;
    triangle("(1,23,123)", l1, l23, &l123)?;
    if l12 + l23 > l1 + l3 {
        return Err(Error::Precondition(
            "l12 + l23 must not exceed l1 + l3".into(),
        ));
    }
    let x = l12 - l2;
    let z = l23 - l2;
    let f = |v: BigRational| Trop::Fin(v);
    Ok(vec![
        rank2_slant_factor(f(-x.clone()), f(l1.clone()), f(x))?,
        rank2_slant_factor(f(-l2.clone()), Trop::NegInf, f(l2.clone()))?,
        rank2_slant_factor(f(l3.clone()), f(z), f(-l3.clone()))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::det_rational;
    use crate::multipath::DEFAULT_STATE_CAP;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(v: i64) -> Trop {
        Trop::from_int(v)
    }

    fn random_triple(n: usize, rng: &mut ChaCha8Rng) -> WeightTriple {
        let net = Arc::new(standard_network(n).unwrap());
        let count = n * (n + 1) / 2;
        let rand_vals = |rng: &mut ChaCha8Rng| -> Vec<Trop> {
            (0..count).map(|_| t(rng.gen_range(-9..=9))).collect()
        };
        WeightTriple {
            a: standard_weighting(&net, &rand_vals(rng)).unwrap(),
            b: standard_weighting(&net, &rand_vals(rng)).unwrap(),
            c: (0..n).map(|_| t(rng.gen_range(-9..=9))).collect(),
        }
    }

    fn zero_triple(n: usize) -> WeightTriple {
        let net = Arc::new(standard_network(n).unwrap());
        WeightTriple {
            a: Weighting::identity(net.clone()),
            b: Weighting::identity(net),
            c: vec![t(0); n],
        }
    }

    #[test]
    fn beta_of_zero_triple_is_zero() {
        for n in 1..=3 {
            let x = beta_map(&zero_triple(n)).unwrap();
            for (_, v) in x.values() {
                assert_eq!(v, &t(0));
            }
        }
    }

    #[test]
    fn beta_full_multipath_is_straight() {
        let triple = zero_triple(3);
        let ws = triple.weightings().unwrap();
        let concat = Concat::new(&ws).unwrap();
        // β_{n,0,0}: the full n-multipath of the first factor.
        let (mp, _) = beta_multipath(&concat, &[3, 0, 0]).unwrap();
        assert_eq!(mp.families[0].len(), 3);
        assert_eq!(mp.sinks[0], vec![1, 2, 3]);
    }

    #[test]
    fn beta_inverse_spot_values() {
        // n = 2: c_1 = x(0,0,2) − x(0,1,1), c_2 = x(0,1,1) − x(0,2,0).
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let triple = random_triple(2, &mut rng);
        let x = beta_map(&triple).unwrap();
        let c1 = x.get(&[0, 0, 2]).sub(x.get(&[0, 1, 1])).unwrap();
        let c2 = x.get(&[0, 1, 1]).sub(x.get(&[0, 2, 0])).unwrap();
        assert_eq!(c1, triple.c[0]);
        assert_eq!(c2, triple.c[1]);
    }

    #[test]
    fn beta_roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for n in 1..=3usize {
            for _ in 0..30 {
                let triple = random_triple(n, &mut rng);
                let x = beta_map(&triple).unwrap();
                let back = beta_inverse(&x).unwrap();
                assert_eq!(back.a.weights, triple.a.weights);
                assert_eq!(back.b.weights, triple.b.weights);
                assert_eq!(back.c, triple.c);
                let x2 = beta_map(&back).unwrap();
                assert_eq!(x2, x);
            }
        }
    }

    #[test]
    fn beta_map_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let t1 = random_triple(2, &mut rng);
        let t2 = random_triple(2, &mut rng);
        let sum = WeightTriple {
            a: {
                let mut a = t1.a.clone();
                for (w, v) in a.weights.iter_mut().zip(&t2.a.weights) {
                    *w = w.tmul(v);
                }
                a
            },
            b: {
                let mut b = t1.b.clone();
                for (w, v) in b.weights.iter_mut().zip(&t2.b.weights) {
                    *w = w.tmul(v);
                }
                b
            },
            c: t1.c.iter().zip(&t2.c).map(|(x, y)| x.tmul(y)).collect(),
        };
        let x1 = beta_map(&t1).unwrap();
        let x2 = beta_map(&t2).unwrap();
        let xs = beta_map(&sum).unwrap();
        for (p, v) in xs.values() {
            assert_eq!(*v, x1.get(p).tmul(x2.get(p)));
        }
    }

    #[test]
    fn beta_matrix_unimodular() {
        // Assemble the 0/1 matrix of the boundary map in coordinates and
        // check |det| = 1 exactly.
        for n in 1..=4usize {
            let dim = n * (n + 2);
            let net = Arc::new(standard_network(n).unwrap());
            let count = n * (n + 1) / 2;
            let mut columns = Vec::with_capacity(dim);
            for coord in 0..dim {
                let mut a_vals = vec![t(0); count];
                let mut b_vals = vec![t(0); count];
                let mut c_vals = vec![t(0); n];
                if coord < count {
                    a_vals[coord] = t(1);
                } else if coord < 2 * count {
                    b_vals[coord - count] = t(1);
                } else {
                    c_vals[coord - 2 * count] = t(1);
                }
                let triple = WeightTriple {
                    a: standard_weighting(&net, &a_vals).unwrap(),
                    b: standard_weighting(&net, &b_vals).unwrap(),
                    c: c_vals,
                };
                let x = beta_map(&triple).unwrap();
                let col: Vec<crate::minors::Rat> = two_face_points(n)
                    .into_iter()
                    .filter(|p| p.iter().any(|&v| v != 0))
                    .map(|p| x.get(&p).as_rational().unwrap().clone())
                    .collect();
                columns.push(col);
            }
            let matrix: Vec<Vec<crate::minors::Rat>> = (0..dim)
                .map(|r| (0..dim).map(|c| columns[c][r].clone()).collect())
                .collect();
            let det = det_rational(&matrix);
            assert!(
                det == crate::minors::rat_int(1) || det == crate::minors::rat_int(-1),
                "n={n}: det = {det}"
            );
        }
    }

    fn random_gz_triple(n: usize, rng: &mut ChaCha8Rng) -> WeightTriple {
        let net = Arc::new(standard_network(n).unwrap());
        let count = n * (n + 1) / 2;
        let sample_gz = |rng: &mut ChaCha8Rng| -> Weighting<Trop> {
            loop {
                let vals: Vec<Trop> = (0..count).map(|_| t(rng.gen_range(-9..=9))).collect();
                let w = standard_weighting(&net, &vals).unwrap();
                if gz_check_int(&chart_a(&w).unwrap(), 0).ok {
                    return w;
                }
            }
        };
        let c = loop {
            let c: Vec<Trop> = (0..n).map(|_| t(rng.gen_range(-9..=9))).collect();
            let ct = WeightTriple {
                a: Weighting::identity(net.clone()),
                b: Weighting::identity(net.clone()),
                c: c.clone(),
            };
            if gz_check_int(&ct.c_chart().unwrap(), 0).ok {
                break c;
            }
        };
        WeightTriple { a: sample_gz(rng), b: sample_gz(rng), c }
    }

    #[test]
    fn reconstruct_roundtrip_on_gz_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in 2..=3usize {
            for _ in 0..10 {
                let triple = random_gz_triple(n, &mut rng);
                let m = m_map(&triple.weightings().unwrap(), DEFAULT_STATE_CAP).unwrap();
                let x = TwoFaceData::from_m(&m).unwrap();
                let (_, m2) = reconstruct_from_boundary(&x).unwrap();
                assert_eq!(m2, m);
            }
        }
    }

    #[test]
    fn reconstruct_rejects_cone_violations() {
        let n = 2;
        let mut values = BTreeMap::new();
        for p in two_face_points(n) {
            values.insert(p, t(0));
        }
        values.insert(vec![1, 0, 0], t(5)); // breaks a face rhombus
        let x = TwoFaceData::new(n, values).unwrap();
        assert!(matches!(
            reconstruct_from_boundary(&x),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_two_face_reconstructs_to_zero() {
        let n = 3;
        let mut values = BTreeMap::new();
        for p in two_face_points(n) {
            values.insert(p, t(0));
        }
        let x = TwoFaceData::new(n, values).unwrap();
        let (triple, m) = reconstruct_from_boundary(&x).unwrap();
        assert!(triple.a.weights.iter().all(|w| *w == t(0)));
        assert!(triple.c.iter().all(|w| *w == t(0)));
        for (_, v) in m.values() {
            assert_eq!(v, &t(0));
        }
    }

    #[test]
    fn n2_construct_examples() {
        use crate::multipath::m_map;
        // (1,1,1,1,1): x = z = 0, midpoints all ones.
        let ws = n2_construct(&rat(1), &rat(1), &rat(1), &rat(1), &rat(1)).unwrap();
        let m = m_map(&ws, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(m.get(&[1, 0, 0]), &t(1));
        assert_eq!(m.get(&[0, 1, 0]), &t(1));
        assert_eq!(m.get(&[0, 0, 1]), &t(1));
        assert_eq!(m.get(&[2, 0, 0]), &t(0));
        assert!(crate::horncheck::rhombus_check(&m, crate::horncheck::RhombusScope::AllPlane)
            .unwrap()
            .is_empty());
        assert!(crate::horncheck::tetrahedron_check(&m).unwrap().is_empty());
        // (1,0,1,1,1): λ(123) = 2, m_{001} = 2.
        let ws = n2_construct(&rat(1), &rat(0), &rat(1), &rat(1), &rat(1)).unwrap();
        let m = m_map(&ws, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(m.get(&[0, 0, 1]), &t(2));
        // degenerate zero input
        let ws = n2_construct(&rat(0), &rat(0), &rat(0), &rat(0), &rat(0)).unwrap();
        for w in &ws {
            let sv = crate::multipath::tropical_singular_values(&w, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(sv[0].clone().max(sv[1].clone()), t(0));
        }
    }

    #[test]
    fn n2_construct_rejects_bad_input() {
        assert!(n2_construct(&rat(-1), &rat(0), &rat(0), &rat(0), &rat(0)).is_err());
        // triangle violation: λ(12) > λ(1) + λ(2)
        assert!(n2_construct(&rat(1), &rat(1), &rat(1), &rat(3), &rat(1)).is_err());
        // l12 + l23 > l1 + l3
        assert!(n2_construct(&rat(1), &rat(2), &rat(1), &rat(2), &rat(2)).is_err());
    }
}
