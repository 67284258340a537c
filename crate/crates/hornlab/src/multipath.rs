//! α-multipath enumeration over concatenations and the tropical functions
//! built on it: `m_alpha`, the full map `m`, tropical singular values, the
//! triangular chart on standard networks and the multi-GZ predicate.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::network::{
    concatenate_weightings, essential_labels, standard_weighting, truncate, PlanarNetwork,
    Weighting,
};
use crate::trop::{GzPattern, Trop};
use crate::{Error, Result};

/// Default cap on DFS partial states; exceeding it is an error, never a
/// silent truncation. Override per call or via `HORNLAB_MAX_STATES`.
pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

/// An integer point of the simplex `Δ^k(n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplexIndex {
    pub alpha: Vec<usize>,
}

impl SimplexIndex {
    pub fn new(alpha: Vec<usize>, n: usize) -> Result<Self> {
        let total: usize = alpha.iter().sum();
        if alpha.iter().any(|&a| a > n) || total > n {
            return Err(Error::IndexRange(format!(
                "{alpha:?} is not a point of the rank-{n} simplex"
            )));
        }
        Ok(SimplexIndex { alpha })
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }
}

/// All integer points of `Δ^k(n)`, lexicographically.
pub fn simplex_points(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(n: usize, k: usize, pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(n, k, pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(n, k, 0, n, &mut cur, &mut out);
    out.sort();
    out
}

/// Integer points on the edges of the simplex: the axes and the
/// `x_i + x_j = n` segments.
pub fn boundary_points(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut set = std::collections::BTreeSet::new();
    for i in 0..k {
        for t in 0..=n {
            let mut p = vec![0; k];
            p[i] = t;
            set.insert(p);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for t in 0..=n {
                let mut p = vec![0; k];
                p[i] = n - t;
                p[j] = t;
                set.insert(p);
            }
        }
    }
    set.into_iter().collect()
}

/// Values of the map `m` on `Δ^k(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFunction {
    pub n: usize,
    pub k: usize,
    values: BTreeMap<Vec<usize>, Trop>,
}

impl MFunction {
    pub fn from_values(n: usize, k: usize, values: BTreeMap<Vec<usize>, Trop>) -> Result<Self> {
        let domain = simplex_points(n, k);
        if values.len() != domain.len() || domain.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::SizeMismatch(format!(
                "m-function must cover all {} points of the simplex",
                domain.len()
            )));
        }
        let zero = vec![0usize; k];
        if values[&zero] != Trop::one() {
            return Err(Error::Precondition("value at the origin must be 0".into()));
        }
        Ok(MFunction { n, k, values })
    }

    pub fn constant_zero(n: usize, k: usize) -> Self {
        let values = simplex_points(n, k)
            .into_iter()
            .map(|p| (p, Trop::one()))
            .collect();
        MFunction { n, k, values }
    }

    pub fn get(&self, alpha: &[usize]) -> &Trop {
        &self.values[alpha]
    }

    pub fn try_get(&self, alpha: &[usize]) -> Option<&Trop> {
        self.values.get(alpha)
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Trop> {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.values().all(Trop::is_finite)
    }

    /// Replace a single value (used by tests constructing counterexamples).
    pub fn set(&mut self, alpha: &[usize], v: Trop) {
        if let Some(slot) = self.values.get_mut(alpha) {
            *slot = v;
        }
    }
}

/// Restriction of `m` to the edge set of the simplex.
pub fn boundary(m: &MFunction) -> BTreeMap<Vec<usize>, Trop> {
    boundary_points(m.n, m.k)
        .into_iter()
        .map(|p| {
            let v = m.get(&p).clone();
            (p, v)
        })
        .collect()
}

/// A tuple of pairwise vertex-disjoint path families; family `i` lives in the
/// prefix of the first `i` factors and is recorded as vertex sequences in the
/// concatenated network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multipath {
    pub families: Vec<Vec<Vec<usize>>>,
    /// Sink labels per family, ascending.
    pub sinks: Vec<Vec<usize>>,
}

/// A concatenation of tropical weighted networks with its seam layers.
pub struct Concat {
    full: Weighting<Trop>,
    k: usize,
    seam_x: Vec<BigRational>,
    seam_layers: Vec<Vec<usize>>,
}

impl Concat {
    pub fn new(ws: &[Weighting<Trop>]) -> Result<Self> {
        if ws.is_empty() {
            return Err(Error::SizeMismatch("at least one factor".into()));
        }
        let n = ws[0].net.rank();
        for w in ws {
            if w.net.rank() != n {
                return Err(Error::RankMismatch(n, w.net.rank()));
            }
        }
        let mut full = ws[0].clone();
        let mut seam_x = Vec::new();
        let mut offset = full.net.max_x().clone();
        for w in &ws[1..] {
            seam_x.push(offset.clone());
            full = concatenate_weightings(&full, w)?;
            offset = &offset + &(w.net.max_x() - w.net.min_x());
        }
        seam_x.push(full.net.max_x().clone());
        let seam_layers: Vec<Vec<usize>> = seam_x
            .iter()
            .map(|x| full.net.layer_at(x))
            .collect();
        for layer in &seam_layers {
            if layer.len() != n {
                return Err(Error::InvalidNetwork(
                    "seam layer does not have rank-many vertices".into(),
                ));
            }
        }
        Ok(Concat { full, k: ws.len(), seam_x, seam_layers })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.full.net.rank()
    }

    pub fn full(&self) -> &Weighting<Trop> {
        &self.full
    }

    fn seam_label(&self, family: usize, vertex: usize) -> usize {
        self.seam_layers[family]
            .iter()
            .position(|&v| v == vertex)
            .expect("vertex on seam layer")
            + 1
    }
}

#[derive(Clone, Default)]
struct Constraint {
    /// Exact set of source labels used by the whole multipath.
    sources: Option<Vec<usize>>,
    /// Exact sink-label set per family.
    family_sinks: Option<Vec<Vec<usize>>>,
}

struct Dfs<'a> {
    concat: &'a Concat,
    alpha: &'a [usize],
    constraint: &'a Constraint,
    used: Vec<bool>,
    families: Vec<Vec<Vec<usize>>>,
    weight: Vec<Trop>,
    states: u64,
    cap: u64,
}

impl<'a> Dfs<'a> {
    fn net(&self) -> &PlanarNetwork {
        &self.concat.full.net
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Vec<Vec<usize>>], &Trop)) -> Result<()> {
        self.family(0, visit)
    }

    fn family(
        &mut self,
        f: usize,
        visit: &mut dyn FnMut(&[Vec<Vec<usize>>], &Trop),
    ) -> Result<()> {
        if f == self.alpha.len() {
            visit(&self.families, self.weight.last().unwrap());
            return Ok(());
        }
        self.families.push(Vec::new());
        self.paths(f, self.alpha[f], 1, visit)?;
        self.families.pop();
        Ok(())
    }

    fn paths(
        &mut self,
        f: usize,
        remaining: usize,
        min_label: usize,
        visit: &mut dyn FnMut(&[Vec<Vec<usize>>], &Trop),
    ) -> Result<()> {
        if remaining == 0 {
            return self.family(f + 1, visit);
        }
        let n = self.concat.n();
        for label in min_label..=n {
            if let Some(allowed) = &self.constraint.sources {
                if !allowed.contains(&label) {
                    continue;
                }
            }
            let src = self.net().sources()[label - 1];
            if self.used[src] {
                continue;
            }
            self.used[src] = true;
            let mut current = vec![src];
            self.grow(f, remaining, label, &mut current, visit)?;
            self.used[src] = false;
        }
        Ok(())
    }

    fn grow(
        &mut self,
        f: usize,
        remaining: usize,
        src_label: usize,
        current: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[Vec<Vec<usize>>], &Trop),
    ) -> Result<()> {
        self.states += 1;
        if self.states > self.cap {
            return Err(Error::EnumerationCap { cap: self.cap });
        }
        let v = *current.last().unwrap();
        let seam = &self.concat.seam_x[f];
        if &self.net().vertices()[v].x == seam {
            if let Some(sink_sets) = &self.constraint.family_sinks {
                let label = self.concat.seam_label(f, v);
                if !sink_sets[f].contains(&label) {
                    return Ok(());
                }
            }
            self.families.last_mut().unwrap().push(current.clone());
            self.paths(f, remaining - 1, src_label + 1, visit)?;
            self.families.last_mut().unwrap().pop();
            return Ok(());
        }
        let out: Vec<usize> = self.net().out_edges(v).to_vec();
        for e in out {
            let h = self.net().edges()[e].1;
            if self.net().vertices()[h].x > *seam || self.used[h] {
                continue;
            }
            self.used[h] = true;
            current.push(h);
            let w = self.weight.last().unwrap().tmul(&self.concat.full.weights[e]);
            self.weight.push(w);
            self.grow(f, remaining, src_label, current, visit)?;
            self.weight.pop();
            current.pop();
            self.used[h] = false;
        }
        Ok(())
    }
}

fn visit_multipaths(
    concat: &Concat,
    alpha: &[usize],
    constraint: &Constraint,
    cap: u64,
    visit: &mut dyn FnMut(&[Vec<Vec<usize>>], &Trop),
) -> Result<()> {
    if alpha.len() != concat.k() {
        return Err(Error::SizeMismatch(format!(
            "alpha has {} entries for {} factors",
            alpha.len(),
            concat.k()
        )));
    }
    SimplexIndex::new(alpha.to_vec(), concat.n())?;
    let mut dfs = Dfs {
        concat,
        alpha,
        constraint,
        used: vec![false; concat.full.net.vertices().len()],
        families: Vec::new(),
        weight: vec![Trop::one()],
        states: 0,
        cap,
    };
    dfs.run(visit)
}

fn multipath_sinks(concat: &Concat, families: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    families
        .iter()
        .enumerate()
        .map(|(f, paths)| {
            let mut labels: Vec<usize> = paths
                .iter()
                .map(|p| concat.seam_label(f, *p.last().unwrap()))
                .collect();
            labels.sort_unstable();
            labels
        })
        .collect()
}

/// Exhaustive list of α-multipaths with their weights; empty when `P_α = ∅`.
pub fn enumerate_multipaths(
    ws: &[Weighting<Trop>],
    alpha: &[usize],
    cap: u64,
) -> Result<Vec<(Multipath, Trop)>> {
    let concat = Concat::new(ws)?;
    enumerate_multipaths_in(&concat, alpha, cap)
}

pub fn enumerate_multipaths_in(
    concat: &Concat,
    alpha: &[usize],
    cap: u64,
) -> Result<Vec<(Multipath, Trop)>> {
    let mut out = Vec::new();
    visit_multipaths(concat, alpha, &Constraint::default(), cap, &mut |families, w| {
        out.push((
            Multipath {
                families: families.to_vec(),
                sinks: multipath_sinks(concat, families),
            },
            w.clone(),
        ));
    })?;
    Ok(out)
}

/// `max_{p ∈ P_α} w(p)`; −∞ when the set is empty, 0 at the origin.
pub fn m_alpha(ws: &[Weighting<Trop>], alpha: &[usize], cap: u64) -> Result<Trop> {
    let concat = Concat::new(ws)?;
    m_alpha_in(&concat, alpha, cap)
}

pub fn m_alpha_in(concat: &Concat, alpha: &[usize], cap: u64) -> Result<Trop> {
    let mut best = Trop::NegInf;
    visit_multipaths(concat, alpha, &Constraint::default(), cap, &mut |_, w| {
        if *w > best {
            best = w.clone();
        }
    })?;
    Ok(best)
}

/// Maximal α-multipath together with its weight; among ties the witness has
/// the lexicographically smallest sink labels.
pub fn m_alpha_witness(
    concat: &Concat,
    alpha: &[usize],
    cap: u64,
) -> Result<Option<(Multipath, Trop)>> {
    let mut best: Option<(Multipath, Trop)> = None;
    visit_multipaths(concat, alpha, &Constraint::default(), cap, &mut |families, w| {
        let better = match &best {
            None => true,
            Some((mp, bw)) => {
                w > bw || (w == bw && multipath_sinks(concat, families) < mp.sinks)
            }
        };
        if better {
            best = Some((
                Multipath {
                    families: families.to_vec(),
                    sinks: multipath_sinks(concat, families),
                },
                w.clone(),
            ));
        }
    })?;
    Ok(best)
}

/// The full map `m`: `m_alpha` at every point of `Δ^k(n)`. Independent points
/// are evaluated in parallel.
pub fn m_map(ws: &[Weighting<Trop>], cap: u64) -> Result<MFunction> {
    let concat = Concat::new(ws)?;
    m_map_in(&concat, cap)
}

pub fn m_map_in(concat: &Concat, cap: u64) -> Result<MFunction> {
    let points = simplex_points(concat.n(), concat.k());
    let computed: Result<Vec<(Vec<usize>, Trop)>> = points
        .par_iter()
        .map(|alpha| m_alpha_in(concat, alpha, cap).map(|v| (alpha.clone(), v)))
        .collect();
    let values: BTreeMap<_, _> = computed?.into_iter().collect();
    MFunction::from_values(concat.n(), concat.k(), values)
}

/// Tropical singular values: consecutive differences of the `l`-family maxima.
pub fn tropical_singular_values(w: &Weighting<Trop>, cap: u64) -> Result<Vec<Trop>> {
    let concat = Concat::new(std::slice::from_ref(w))?;
    let n = concat.n();
    let mut maxima = vec![Trop::one()];
    for l in 1..=n {
        maxima.push(m_alpha_in(&concat, &[l], cap)?);
    }
    let mut lambda = Vec::with_capacity(n);
    for l in 1..=n {
        let v = match (&maxima[l], &maxima[l - 1]) {
            (Trop::Fin(a), Trop::Fin(b)) => Trop::Fin(a - b),
            _ => Trop::NegInf,
        };
        lambda.push(v);
    }
    Ok(lambda)
}

/// Partial sums `λ_1 + … + λ_j` of the tropical singular values.
pub fn partial_sum_row(w: &Weighting<Trop>, cap: u64) -> Result<Vec<Trop>> {
    let concat = Concat::new(std::slice::from_ref(w))?;
    (1..=concat.n())
        .map(|l| m_alpha_in(&concat, &[l], cap))
        .collect()
}

/// The tropical Gelfand–Zeitlin map: `m_i` of every truncation `Π^{(l)}`.
pub fn gz_trop(w: &Weighting<Trop>, cap: u64) -> Result<GzPattern> {
    let n = w.net.rank();
    let mut inner = Vec::with_capacity(n);
    for l in 1..=n {
        let t = truncate(w, l)?;
        let concat = Concat::new(std::slice::from_ref(&t))?;
        let mut row = Vec::with_capacity(l);
        for i in 1..=l {
            row.push(m_alpha_in(&concat, &[i], cap)?);
        }
        inner.push(row);
    }
    GzPattern::from_inner_rows(n, inner)
}

fn require_essential_support(w: &Weighting<Trop>) -> Result<()> {
    let ess: Vec<usize> = w.net.essential().iter().map(|e| e.edge).collect();
    for (e, weight) in w.weights.iter().enumerate() {
        if !ess.contains(&e) && *weight != Trop::one() {
            return Err(Error::Precondition(
                "weighting must be supported on essential edges".into(),
            ));
        }
    }
    Ok(())
}

/// Weight of the unique `i`-multipath with sources `[l-i+1, l]` and sinks
/// `[1, i]` in a standard network, as a sum of essential values: the path
/// into sink `c` crosses the slants `a_{h,c}` for `c < h ≤ l-i+c` and the
/// sink edge `a_{c,c}`.
fn chart_entry(w: &Weighting<Trop>, i: usize, l: usize) -> Result<Trop> {
    let mut acc = Trop::one();
    for c in 1..=i {
        acc = acc.tmul(w.essential(c, c)?);
        for h in c + 1..=(l - i + c) {
            acc = acc.tmul(w.essential(h, c)?);
        }
    }
    Ok(acc)
}

/// The triangular chart on essential weightings of a standard network:
/// entry `(i, l)` is the weight of the multipath `α_i^{(l)}`.
pub fn chart_a(w: &Weighting<Trop>) -> Result<GzPattern> {
    require_essential_support(w)?;
    let n = w.net.rank();
    let mut inner = Vec::with_capacity(n);
    for l in 1..=n {
        let mut row = Vec::with_capacity(l);
        for i in 1..=l {
            row.push(chart_entry(w, i, l)?);
        }
        inner.push(row);
    }
    GzPattern::from_inner_rows(n, inner)
}

/// Inverse of [`chart_a`]: essential values in canonical `(l,i)` order. The
/// chart is linear with a unit triangular matrix, so back-substitution by
/// increasing `l` recovers the weighting.
pub fn chart_a_inverse(p: &GzPattern) -> Result<Vec<Trop>> {
    if !p.is_finite() {
        return Err(Error::NonFinite("chart inversion".into()));
    }
    let n = p.n();
    let labels = essential_labels(n);
    let mut vals: BTreeMap<(usize, usize), Trop> = BTreeMap::new();
    for l in 1..=n {
        for i in 1..l {
            // m_i^{(l)} = a_{l,i} + everything already known.
            let mut known = Trop::one();
            for c in 1..=i {
                known = known.tmul(&vals[&(c, c)]);
                for h in c + 1..=(l - i + c) {
                    if (h, c) == (l, i) {
                        continue;
                    }
                    known = known.tmul(&vals[&(h, c)]);
                }
            }
            vals.insert((l, i), p.entry(i, l).sub(&known)?);
        }
        // a_{l,l} = m_l^{(l)} − m_{l-1}^{(l-1)}
        let prev = if l == 1 {
            Trop::one()
        } else {
            p.entry(l - 1, l - 1).clone()
        };
        vals.insert((l, l), p.entry(l, l).sub(&prev)?);
    }
    Ok(labels.into_iter().map(|(l, i)| vals[&(l, i)].clone()).collect())
}

/// Build the standard weighting with the given chart values.
pub fn weighting_from_chart(net: &Arc<PlanarNetwork>, p: &GzPattern) -> Result<Weighting<Trop>> {
    let vals = chart_a_inverse(p)?;
    standard_weighting(net, &vals)
}

/// True iff for every α some maximal α-multipath has sources
/// `[n−Σα+1, n]` and per-factor sinks `[1, α_i]`.
pub fn check_multi_gz(ws: &[Weighting<Trop>], cap: u64) -> Result<bool> {
    let concat = Concat::new(ws)?;
    check_multi_gz_in(&concat, cap)
}

pub fn check_multi_gz_in(concat: &Concat, cap: u64) -> Result<bool> {
    let n = concat.n();
    let k = concat.k();
    for alpha in simplex_points(n, k) {
        let total: usize = alpha.iter().sum();
        if total == 0 {
            continue;
        }
        let global = m_alpha_in(concat, &alpha, cap)?;
        let constraint = Constraint {
            sources: Some((n - total + 1..=n).collect()),
            family_sinks: Some(alpha.iter().map(|&a| (1..=a).collect()).collect()),
        };
        let mut constrained = Trop::NegInf;
        visit_multipaths(concat, &alpha, &constraint, cap, &mut |_, w| {
            if *w > constrained {
                constrained = w.clone();
            }
        })?;
        if constrained != global {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerate multipaths with prescribed sources and per-family sink sets;
/// used to realize the boundary multipaths of the surjectivity construction.
pub fn constrained_multipaths(
    concat: &Concat,
    alpha: &[usize],
    sources: Vec<usize>,
    family_sinks: Vec<Vec<usize>>,
    cap: u64,
) -> Result<Vec<(Multipath, Trop)>> {
    let constraint = Constraint { sources: Some(sources), family_sinks: Some(family_sinks) };
    let mut out = Vec::new();
    visit_multipaths(concat, alpha, &constraint, cap, &mut |families, w| {
        out.push((
            Multipath {
                families: families.to_vec(),
                sinks: multipath_sinks(concat, families),
            },
            w.clone(),
        ));
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{correspondence_matrix, lindstrom_minor, standard_network, SlantSpec};
    use crate::trop::gz_check_int;
    use num_bigint::BigInt;

    fn t(v: i64) -> Trop {
        Trop::from_int(v)
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    /// A rank-2 factor with one down slant: bottom-left weight `b`, slant
    /// weight `s`, top-right weight `t` — the shape used by the worked
    /// demo triple.
    pub(crate) fn demo_factor(b: i64, s: Trop, tw: i64) -> Weighting<Trop> {
        let slants = vec![SlantSpec {
            from_line: 2,
            x_from: rat(3),
            to_line: 1,
            x_to: rat(5),
        }];
        let net = Arc::new(PlanarNetwork::layered(2, 8, &slants).unwrap());
        let mut w = Weighting::identity(net);
        // line 1 edges: [0,5], [5,8]; line 2: [0,3], [3,8]; slant.
        let bottom_left = w
            .net
            .edges()
            .iter()
            .position(|&(tl, hd)| {
                w.net.vertices()[tl].x == rat(0)
                    && w.net.vertices()[tl].y == rat(1)
                    && w.net.vertices()[hd].x == rat(5)
            })
            .unwrap();
        let top_right = w
            .net
            .edges()
            .iter()
            .position(|&(tl, hd)| {
                w.net.vertices()[tl].x == rat(3)
                    && w.net.vertices()[tl].y == rat(2)
                    && w.net.vertices()[hd].x == rat(8)
                    && w.net.vertices()[hd].y == rat(2)
            })
            .unwrap();
        let slant = w
            .net
            .edges()
            .iter()
            .position(|&(tl, hd)| w.net.vertices()[tl].y != w.net.vertices()[hd].y)
            .unwrap();
        w.weights[bottom_left] = t(b);
        w.weights[top_right] = t(tw);
        w.weights[slant] = s;
        w
    }

    /// The worked rank-2 triple used throughout the tests.
    pub(crate) fn demo_triple() -> Vec<Weighting<Trop>> {
        vec![
            demo_factor(2, t(1), 1),
            demo_factor(1, t(-1), 1),
            demo_factor(1, t(2), -1),
        ]
    }

    #[test]
    fn demo_triple_m_values() {
        let ws = demo_triple();
        let m = m_map(&ws, DEFAULT_STATE_CAP).unwrap();
        let expect = vec![
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
        ];
        for (alpha, v) in expect {
            assert_eq!(m.get(&alpha), &t(v), "alpha {alpha:?}");
        }
    }

    #[test]
    fn demo_triple_singular_values() {
        let ws = demo_triple();
        let w1 = ws[0].clone();
        assert_eq!(
            tropical_singular_values(&w1, DEFAULT_STATE_CAP).unwrap(),
            vec![t(2), t(1)]
        );
        let w23 = concatenate_weightings(&ws[1], &ws[2]).unwrap();
        assert_eq!(
            tropical_singular_values(&w23, DEFAULT_STATE_CAP).unwrap(),
            vec![t(3), t(-1)]
        );
    }

    #[test]
    fn alpha_zero_single_empty_multipath() {
        let ws = demo_triple();
        let list = enumerate_multipaths(&ws, &[0, 0, 0], DEFAULT_STATE_CAP).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].1, t(0));
        assert!(list[0].0.families.iter().all(|f| f.is_empty()));
    }

    #[test]
    fn demo_101_maximum() {
        let ws = demo_triple();
        assert_eq!(m_alpha(&ws, &[1, 0, 1], DEFAULT_STATE_CAP).unwrap(), t(6));
        let concat = Concat::new(&ws).unwrap();
        let (mp, w) = m_alpha_witness(&concat, &[1, 0, 1], DEFAULT_STATE_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w, t(6));
        assert_eq!(mp.families[0].len(), 1);
        assert_eq!(mp.families[2].len(), 1);
    }

    #[test]
    fn identity_straight_network_lambda_zero() {
        let net = Arc::new(PlanarNetwork::layered(3, 2, &[]).unwrap());
        let w = Weighting::<Trop>::identity(net);
        assert_eq!(
            tropical_singular_values(&w, DEFAULT_STATE_CAP).unwrap(),
            vec![t(0), t(0), t(0)]
        );
    }

    #[test]
    fn zero_weights_m_map_all_zero() {
        let net = Arc::new(standard_network(2).unwrap());
        let w = Weighting::<Trop>::identity(net);
        let ws = vec![w.clone(), w.clone(), w];
        let m = m_map(&ws, DEFAULT_STATE_CAP).unwrap();
        for (_, v) in m.values() {
            assert_eq!(v, &t(0));
        }
    }

    #[test]
    fn k1_m_equals_best_tropical_minor() {
        let net = Arc::new(standard_network(3).unwrap());
        let vals: Vec<Trop> = vec![1, -2, 3, 0, 2, -1].into_iter().map(t).collect();
        let w = standard_weighting(&net, &vals).unwrap();
        for l in 1..=3usize {
            let m_l = m_alpha(&[w.clone()], &[l], DEFAULT_STATE_CAP).unwrap();
            let mut best = Trop::NegInf;
            let subsets = crate::multipath::subsets_of_size(3, l);
            for i in &subsets {
                for j in &subsets {
                    let v = lindstrom_minor(&w, i, j).unwrap();
                    if v > best {
                        best = v;
                    }
                }
            }
            assert_eq!(m_l, best);
        }
    }

    #[test]
    fn chart_matches_enumeration_and_inverts() {
        let net = Arc::new(standard_network(3).unwrap());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(42);
        for _ in 0..100 {
            let vals: Vec<Trop> = (0..6)
                .map(|_| t(rand::Rng::gen_range(&mut rng, -9..=9)))
                .collect();
            let w = standard_weighting(&net, &vals).unwrap();
            let p = chart_a(&w).unwrap();
            // Cross-check a couple of entries by constrained enumeration.
            let concat = Concat::new(std::slice::from_ref(&w)).unwrap();
            for (i, l) in [(1usize, 2usize), (2, 3), (1, 3)] {
                let list = constrained_multipaths(
                    &concat,
                    &[i],
                    (l - i + 1..=l).collect(),
                    vec![(1..=i).collect()],
                    DEFAULT_STATE_CAP,
                )
                .unwrap();
                let best = list.iter().map(|(_, w)| w.clone()).max().unwrap();
                assert_eq!(p.entry(i, l), &best);
            }
            let back = chart_a_inverse(&p).unwrap();
            assert_eq!(back, vals);
        }
    }

    #[test]
    fn chart_small_example() {
        let net = Arc::new(standard_network(2).unwrap());
        let w = standard_weighting(&net, &[t(0), t(1), t(0)]).unwrap();
        let p = chart_a(&w).unwrap();
        assert_eq!(p.entry(1, 1), &t(0));
        assert_eq!(p.entry(1, 2), &t(1));
        assert_eq!(p.entry(2, 2), &t(0));
    }

    #[test]
    fn multi_gz_examples() {
        // All-zero weights: maxima are attained everywhere, in particular at
        // the preferred sources and sinks.
        let net = Arc::new(standard_network(2).unwrap());
        let zero = Weighting::<Trop>::identity(net.clone());
        assert!(check_multi_gz(&[zero.clone()], DEFAULT_STATE_CAP).unwrap());
        // a21 = −1 in one factor pushes the 1-path maximum away from sink 1.
        let bad = standard_weighting(&net, &[t(0), t(-1), t(0)]).unwrap();
        assert!(!check_multi_gz(&[bad, zero.clone(), zero], DEFAULT_STATE_CAP).unwrap());
    }

    #[test]
    fn gz_trop_lands_in_cone_for_standard() {
        let net = Arc::new(standard_network(3).unwrap());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..20 {
            let vals: Vec<Trop> = (0..6)
                .map(|_| t(rand::Rng::gen_range(&mut rng, -9..=9)))
                .collect();
            let w = standard_weighting(&net, &vals).unwrap();
            let p = gz_trop(&w, DEFAULT_STATE_CAP).unwrap();
            assert!(gz_check_int(&p, 0).ok);
        }
    }

    #[test]
    fn m_monotone_in_edge_weights() {
        let ws = demo_triple();
        let m0 = m_map(&ws, DEFAULT_STATE_CAP).unwrap();
        let mut ws2 = ws.clone();
        // bump one edge weight
        let idx = ws2[1]
            .weights
            .iter()
            .position(|w| *w == Trop::from_int(1))
            .unwrap();
        ws2[1].weights[idx] = t(3);
        let m1 = m_map(&ws2, DEFAULT_STATE_CAP).unwrap();
        for (alpha, v) in m0.values() {
            assert!(m1.get(alpha) >= v);
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let ws = demo_triple();
        let err = m_map(&ws, 10);
        assert!(matches!(err, Err(Error::EnumerationCap { .. })));
    }

    #[test]
    fn correspondence_sanity_on_demo_factor() {
        let w = demo_factor(2, t(1), 1);
        let m = correspondence_matrix(&w);
        assert_eq!(m[0][0], t(2));
        assert_eq!(m[1][1], t(1));
        assert_eq!(m[1][0], t(1));
        assert_eq!(m[0][1], Trop::NegInf);
    }
}

/// All ascending label subsets of `[1, n]` of the given size.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(1, n, size, &mut cur, &mut out);
    out
}
