//! Simple roots, Dynkin diagrams, ADE labels, foldings and Weyl factorizations
//! for finite sets of norm −2 lattice vectors.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{linalg, rat, RatMatrix, Rational};
use crate::lattice::{reflection_closure, IntegerLattice, LatticeVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("vector {0:?} does not have norm -2")]
    BadNorm(Vec<BigInt>),
    #[error("root set is not closed under negation: missing the negative of {0:?}")]
    NotSymmetric(Vec<BigInt>),
    #[error("root set is not reflection closed; witness {0:?}")]
    NotReflectionClosed(Vec<BigInt>),
    #[error("simple roots {0} and {1} pair to {2}, outside the simply-laced range")]
    NotSimplyLaced(usize, usize, i64),
    #[error("component on nodes {0:?} is not an ADE Dynkin diagram")]
    NotAde(Vec<usize>),
    #[error("no generic functional separated the roots")]
    DegenerateFunctional,
    #[error("total rank {0} exceeds 16")]
    RankTooLarge(usize),
    #[error("node map {0:?} is not a diagram automorphism")]
    NotAutomorphism(Vec<usize>),
    #[error("map does not preserve the root set; image of simple root {0} is not a root")]
    NotRootPreserving(usize),
    #[error("map does not preserve the Cartan matrix")]
    NotIsometric,
}

/// Simply-laced Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeLabel {
    A(usize),
    D(usize),
    E(usize),
}

impl AdeLabel {
    pub fn rank(self) -> usize {
        match self {
            AdeLabel::A(n) | AdeLabel::D(n) | AdeLabel::E(n) => n,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            AdeLabel::A(n) => n * (n + 1),
            AdeLabel::D(n) => 2 * n * (n - 1),
            AdeLabel::E(6) => 72,
            AdeLabel::E(7) => 126,
            AdeLabel::E(8) => 240,
            AdeLabel::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A{n}"),
            AdeLabel::D(n) => write!(f, "D{n}"),
            AdeLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for AdeLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("not an ADE label: {s}");
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match (head, n) {
            ("A", n) if n >= 1 => Ok(AdeLabel::A(n)),
            ("D", n) if n >= 4 => Ok(AdeLabel::D(n)),
            ("E", 6..=8) => Ok(AdeLabel::E(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for AdeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AdeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A connected piece of the Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinComponent {
    pub label: AdeLabel,
    /// Indices into the subsystem's simple roots, ascending.
    pub nodes: Vec<usize>,
    /// Positive definite Cartan matrix `−(dᵢ·dⱼ)` on `nodes`, in that order.
    pub cartan: Vec<Vec<i64>>,
}

impl DynkinComponent {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Clone, Debug)]
pub struct RootSubsystem {
    pub roots: Vec<LatticeVector>,
    pub simple_roots: Vec<LatticeVector>,
    pub components: Vec<DynkinComponent>,
}

impl RootSubsystem {
    pub fn empty() -> Self {
        Self {
            roots: Vec::new(),
            simple_roots: Vec::new(),
            components: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Coordinates of `v` in the simple roots of `comp`, if `v` lies in their
    /// integral span.
    pub fn component_coordinates(
        &self,
        lattice: &IntegerLattice,
        comp: &DynkinComponent,
        v: &[BigInt],
    ) -> Option<Vec<i64>> {
        let n = comp.nodes.len();
        let c = RatMatrix::from_fn(n, n, |i, j| rat(comp.cartan[i][j], 1));
        let pair: Vec<Rational> = comp
            .nodes
            .iter()
            .map(|&k| -Rational::from_integer(lattice.dot(v, &self.simple_roots[k])))
            .collect();
        let coords = linalg::solve(&c, &pair)?;
        if !coords.iter().all(|x| x.is_integer()) {
            return None;
        }
        let coords: Vec<i64> = coords.iter().map(|x| x.to_integer().to_i64().unwrap()).collect();
        let mut back = vec![BigInt::zero(); v.len()];
        for (&k, &a) in comp.nodes.iter().zip(&coords) {
            for (slot, s) in back.iter_mut().zip(&self.simple_roots[k]) {
                *slot += s * a;
            }
        }
        (back.as_slice() == v).then_some(coords)
    }
}

fn generic_values(roots: &[LatticeVector], base: u64) -> Option<Vec<BigInt>> {
    let dim = roots[0].len();
    let weights: Vec<BigInt> = (0..dim)
        .scan(BigInt::one(), |w, _| {
            let cur = w.clone();
            *w *= base;
            Some(cur)
        })
        .collect();
    let values: Vec<BigInt> = roots
        .iter()
        .map(|r| r.iter().zip(&weights).map(|(a, w)| a * w).sum())
        .collect();
    values.iter().all(|v| !v.is_zero()).then_some(values)
}

/// Picks simple roots via a generic functional and classifies the diagram.
pub fn extract_simple_roots(
    lattice: &IntegerLattice,
    roots: &[LatticeVector],
) -> Result<RootSubsystem, RootSystemError> {
    if roots.is_empty() {
        return Ok(RootSubsystem::empty());
    }
    let minus_two = BigInt::from(-2);
    let set: HashSet<&LatticeVector> = roots.iter().collect();
    for r in roots {
        if lattice.norm(r) != minus_two {
            return Err(RootSystemError::BadNorm(r.clone()));
        }
        let neg: LatticeVector = r.iter().map(|x| -x).collect();
        if !set.contains(&neg) {
            return Err(RootSystemError::NotSymmetric(r.clone()));
        }
    }
    let values = (10..40)
        .find_map(|base| generic_values(roots, base))
        .ok_or(RootSystemError::DegenerateFunctional)?;
    let positive: Vec<&LatticeVector> = roots
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_positive())
        .map(|(r, _)| r)
        .collect();
    let positive_set: HashSet<&LatticeVector> = positive.iter().copied().collect();
    let mut simple: Vec<LatticeVector> = positive
        .iter()
        .filter(|&&d| {
            !positive.iter().any(|&a| {
                let diff: LatticeVector = d.iter().zip(a).map(|(x, y)| x - y).collect();
                positive_set.contains(&diff)
            })
        })
        .map(|&d| d.clone())
        .collect();
    simple.sort();

    let closure: BTreeSet<LatticeVector> = reflection_closure(lattice, &simple).into_iter().collect();
    let input: BTreeSet<LatticeVector> = roots.iter().cloned().collect();
    if let Some(w) = input.symmetric_difference(&closure).next() {
        return Err(RootSystemError::NotReflectionClosed(w.clone()));
    }
    let mut sub = RootSubsystem {
        roots: input.into_iter().collect(),
        simple_roots: simple,
        components: Vec::new(),
    };
    sub.components = classify_components(lattice, &sub)?;
    Ok(sub)
}

fn arm_length(adj: &[Vec<usize>], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [] => return len,
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return usize::MAX,
        }
    }
}

/// Classifies a connected simply-laced graph given by adjacency lists.
fn classify_graph(adj: &[Vec<usize>]) -> Option<AdeLabel> {
    let n = adj.len();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| adj[i].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(AdeLabel::A(n)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&s| arm_length(adj, *b, s)).collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => Some(AdeLabel::D(k + 3)),
                [1, 2, 2] => Some(AdeLabel::E(6)),
                [1, 2, 3] => Some(AdeLabel::E(7)),
                [1, 2, 4] => Some(AdeLabel::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Connected components of the graph on the simple roots, with `dᵢ·dⱼ` edges.
pub fn classify_components(
    lattice: &IntegerLattice,
    sub: &RootSubsystem,
) -> Result<Vec<DynkinComponent>, RootSystemError> {
    let s = &sub.simple_roots;
    let n = s.len();
    let mut pair = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = lattice.dot(&s[i], &s[j]).to_i64().unwrap_or(i64::MAX);
            if i != j && !(0..=1).contains(&v) {
                return Err(RootSystemError::NotSimplyLaced(i, j, v));
            }
            pair[i][j] = v;
        }
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            nodes.push(v);
            for w in 0..n {
                if !seen[w] && pair[v][w] != 0 {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        nodes.sort();
        let adj: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&a| {
                (0..nodes.len())
                    .filter(|&j| nodes[j] != a && pair[a][nodes[j]] == 1)
                    .collect()
            })
            .collect();
        let label = classify_graph(&adj).ok_or_else(|| RootSystemError::NotAde(nodes.clone()))?;
        let cartan = nodes
            .iter()
            .map(|&a| nodes.iter().map(|&b| -pair[a][b]).collect())
            .collect();
        comps.push(DynkinComponent {
            label,
            nodes,
            cartan,
        });
    }
    Ok(comps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeGroupReport {
    pub nonabelian_factors: Vec<AdeLabel>,
    pub total_rank: usize,
    pub abelian_rank: usize,
}

impl fmt::Display for GaugeGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.abelian_rank > 0 {
            parts.push(format!("U(1)^{}", self.abelian_rank));
        }
        parts.extend(self.nonabelian_factors.iter().map(ToString::to_string));
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub fn gauge_group(components: &[DynkinComponent]) -> Result<GaugeGroupReport, RootSystemError> {
    let total_rank: usize = components.iter().map(|c| c.label.rank()).sum();
    if total_rank > 16 {
        return Err(RootSystemError::RankTooLarge(total_rank));
    }
    Ok(GaugeGroupReport {
        nonabelian_factors: components.iter().map(|c| c.label).collect(),
        total_rank,
        abelian_rank: 16 - total_rank,
    })
}

/// Roots of the abstract system with Cartan matrix `c`, in simple-root
/// coordinates.
pub fn abstract_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let reflect = |i: usize, x: &[i64]| -> Vec<i64> {
        let p: i64 = (0..n).map(|j| c[i][j] * x[j]).sum();
        let mut y = x.to_vec();
        y[i] -= p;
        y
    };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = reflect(i, &v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

fn check_automorphism(c: &[Vec<i64>], sigma: &[usize]) -> Result<(), RootSystemError> {
    let n = c.len();
    let mut sorted = sigma.to_vec();
    sorted.sort();
    let is_perm = sigma.len() == n && sorted.iter().enumerate().all(|(i, &s)| i == s);
    if !is_perm || (0..n).any(|i| (0..n).any(|j| c[sigma[i]][sigma[j]] != c[i][j])) {
        return Err(RootSystemError::NotAutomorphism(sigma.to_vec()));
    }
    Ok(())
}

/// Type of a possibly non-simply-laced reduced or non-reduced root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FoldedType {
    Ade(AdeLabel),
    B(usize),
    C(usize),
    F4,
    G2,
    Bc(usize),
    Unrecognized { rank: usize, roots: usize },
}

impl fmt::Display for FoldedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoldedType::Ade(l) => write!(f, "{l}"),
            FoldedType::B(n) => write!(f, "B{n}"),
            FoldedType::C(n) => write!(f, "C{n}"),
            FoldedType::F4 => write!(f, "F4"),
            FoldedType::G2 => write!(f, "G2"),
            FoldedType::Bc(n) => write!(f, "BC{n}"),
            FoldedType::Unrecognized { rank, roots } => write!(f, "?(rank {rank}, {roots} roots)"),
        }
    }
}

/// Classifies a root system by rank, cardinality and the counts per length.
fn classify_projected(rank: usize, by_norm: &[(Rational, usize)]) -> FoldedType {
    let total: usize = by_norm.iter().map(|(_, k)| k).sum();
    let r = rank;
    let other = FoldedType::Unrecognized { rank, roots: total };
    match by_norm {
        [_] => {
            let label = match (r, total) {
                (6, 72) => AdeLabel::E(6),
                (7, 126) => AdeLabel::E(7),
                (8, 240) => AdeLabel::E(8),
                (r, t) if t == r * (r + 1) => AdeLabel::A(r),
                (r, t) if r >= 4 && t == 2 * r * (r - 1) => AdeLabel::D(r),
                _ => return other,
            };
            FoldedType::Ade(label)
        }
        [(short, s), (long, l)] => {
            let ratio = long / short;
            if ratio == rat(3, 1) && r == 2 && (*s, *l) == (6, 6) {
                FoldedType::G2
            } else if ratio == rat(4, 1) && r == 1 && (*s, *l) == (2, 2) {
                FoldedType::Bc(1)
            } else if ratio == rat(2, 1) {
                if r == 4 && (*s, *l) == (24, 24) {
                    FoldedType::F4
                } else if r >= 2 && *s == 2 * r * (r - 1) && *l == 2 * r {
                    FoldedType::C(r)
                } else if r >= 3 && *s == 2 * r && *l == 2 * r * (r - 1) {
                    FoldedType::B(r)
                } else {
                    other
                }
            } else {
                other
            }
        }
        [(a, _), (b, _), (c, _)] => {
            if b / a == rat(2, 1) && c / b == rat(2, 1) && total == 2 * r * r + 2 * r {
                FoldedType::Bc(r)
            } else {
                other
            }
        }
        _ => other,
    }
}

/// Folds `comp` by the node permutation `sigma` (local indices): the roots
/// are averaged over the cyclic group generated by `sigma` and the distinct
/// nonzero projections are classified.
pub fn fold_by_automorphism(
    comp: &DynkinComponent,
    sigma: &[usize],
) -> Result<FoldedType, RootSystemError> {
    let c = &comp.cartan;
    check_automorphism(c, sigma)?;
    let n = c.len();
    let mut powers = vec![(0..n).collect::<Vec<usize>>()];
    loop {
        let last = powers.last().unwrap();
        let next: Vec<usize> = last.iter().map(|&i| sigma[i]).collect();
        if next.iter().enumerate().all(|(i, &s)| i == s) {
            break;
        }
        powers.push(next);
    }
    let order = powers.len() as i64;
    let mut projected: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for root in abstract_roots(c) {
        let mut p = vec![Rational::zero(); n];
        for perm in &powers {
            for i in 0..n {
                p[perm[i]] += rat(root[i], order);
            }
        }
        if p.iter().any(|x| !x.is_zero()) {
            projected.insert(p);
        }
    }
    let mut counts: Vec<(Rational, usize)> = Vec::new();
    for p in &projected {
        let mut norm = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                norm += &p[i] * &p[j] * rat(c[i][j], 1);
            }
        }
        match counts.iter_mut().find(|(v, _)| *v == norm) {
            Some((_, k)) => *k += 1,
            None => counts.push((norm, 1)),
        }
    }
    counts.sort();
    let orbits = {
        let mut seen = vec![false; n];
        let mut k = 0;
        for i in 0..n {
            if !seen[i] {
                k += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = sigma[j];
                }
            }
        }
        k
    };
    Ok(classify_projected(orbits, &counts))
}

/// `iso = w ∘ σ` with `w` a Weyl group element and `σ` a diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylDecomposition {
    /// `w = s_{i₁} ∘ … ∘ s_{iₘ}` as local node indices.
    pub weyl_word: Vec<usize>,
    /// `σ(αⱼ) = α_{sigma[j]}`.
    pub sigma: Vec<usize>,
}

impl WeylDecomposition {
    pub fn is_trivial(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }
}

/// Factors a root-preserving isometry given in simple-root coordinates
/// (column `j` is the image of `αⱼ`).
pub fn weyl_decompose(
    comp: &DynkinComponent,
    iso: &[Vec<i64>],
) -> Result<WeylDecomposition, RootSystemError> {
    let c = &comp.cartan;
    let n = c.len();
    let column = |j: usize| -> Vec<i64> { (0..n).map(|i| iso[i][j]).collect() };
    let roots: HashSet<Vec<i64>> = abstract_roots(c).into_iter().collect();
    for j in 0..n {
        if !roots.contains(&column(j)) {
            return Err(RootSystemError::NotRootPreserving(j));
        }
    }
    let pairing = |x: &[i64], y: &[i64]| -> i64 {
        (0..n).map(|i| (0..n).map(|k| x[i] * c[i][k] * y[k]).sum::<i64>()).sum()
    };
    for i in 0..n {
        for j in 0..n {
            if pairing(&column(i), &column(j)) != c[i][j] {
                return Err(RootSystemError::NotIsometric);
            }
        }
    }
    let reflect = |i: usize, x: &mut Vec<Rational>| {
        let p: Rational = (0..n).map(|k| rat(c[i][k], 1) * &x[k]).sum();
        x[i] -= p;
    };
    // ρ with ⟨ρ, αᵢ⟩ = 1 for all i
    let cm = RatMatrix::from_fn(n, n, |i, j| rat(c[i][j], 1));
    let rho = linalg::solve(&cm, &vec![Rational::one(); n]).expect("Cartan matrix is invertible");
    let mut y: Vec<Rational> = (0..n)
        .map(|i| (0..n).map(|k| rat(iso[i][k], 1) * &rho[k]).sum())
        .collect();
    let mut word = Vec::new();
    loop {
        let bad = (0..n).find(|&i| {
            let p: Rational = (0..n).map(|k| rat(c[i][k], 1) * &y[k]).sum();
            p.is_negative()
        });
        match bad {
            Some(i) => {
                reflect(i, &mut y);
                word.push(i);
            }
            None => break,
        }
    }
    let mut sigma = Vec::with_capacity(n);
    for j in 0..n {
        let mut col: Vec<Rational> = column(j).iter().map(|&v| rat(v, 1)).collect();
        for &i in &word {
            reflect(i, &mut col);
        }
        let target = col
            .iter()
            .position(|x| x.is_one())
            .filter(|&p| col.iter().enumerate().all(|(k, x)| k == p || x.is_zero()))
            .ok_or(RootSystemError::NotRootPreserving(j))?;
        sigma.push(target);
    }
    check_automorphism(c, &sigma)?;
    Ok(WeylDecomposition {
        weyl_word: word,
        sigma,
    })
}

/// Cartan matrix of a label in a fixed node order (paths first, branch last
/// for D; Bourbaki order for E).
pub fn cartan_of(label: AdeLabel) -> Vec<Vec<i64>> {
    let n = label.rank();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match label {
        AdeLabel::A(_) => edges.extend((1..n).map(|i| (i - 1, i))),
        AdeLabel::D(_) => {
            edges.extend((1..n - 1).map(|i| (i - 1, i)));
            edges.push((n - 3, n - 1));
        }
        AdeLabel::E(_) => {
            for &(a, b) in &crate::lattice::E8_EDGES {
                if a <= n && b <= n {
                    edges.push((a - 1, b - 1));
                }
            }
        }
    }
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

/// A standalone component of the given type, for abstract computations.
pub fn abstract_component(label: AdeLabel) -> DynkinComponent {
    DynkinComponent {
        label,
        nodes: (0..label.rank()).collect(),
        cartan: cartan_of(label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_round_trip() {
        for s in ["A1", "A7", "D4", "D7", "E6", "E8"] {
            assert_eq!(s.parse::<AdeLabel>().unwrap().to_string(), s);
        }
        assert!("D3".parse::<AdeLabel>().is_err());
        assert!("E9".parse::<AdeLabel>().is_err());
    }

    #[test]
    fn abstract_root_counts() {
        for l in [
            AdeLabel::A(1),
            AdeLabel::A(4),
            AdeLabel::D(4),
            AdeLabel::D(6),
            AdeLabel::E(6),
            AdeLabel::E(7),
            AdeLabel::E(8),
        ] {
            assert_eq!(abstract_roots(&cartan_of(l)).len(), l.root_count(), "{l}");
        }
    }

    #[test]
    fn graph_shapes() {
        let path = vec![vec![1], vec![0, 2], vec![1]];
        assert_eq!(classify_graph(&path), Some(AdeLabel::A(3)));
        let star = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        assert_eq!(classify_graph(&star), Some(AdeLabel::D(4)));
        let cycle = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert_eq!(classify_graph(&cycle), None);
    }

    #[test]
    fn foldings() {
        let a3 = abstract_component(AdeLabel::A(3));
        assert_eq!(fold_by_automorphism(&a3, &[2, 1, 0]).unwrap(), FoldedType::C(2));
        let a2 = abstract_component(AdeLabel::A(2));
        assert_eq!(fold_by_automorphism(&a2, &[1, 0]).unwrap(), FoldedType::Bc(1));
        let a4 = abstract_component(AdeLabel::A(4));
        assert_eq!(fold_by_automorphism(&a4, &[3, 2, 1, 0]).unwrap(), FoldedType::Bc(2));
        let a5 = abstract_component(AdeLabel::A(5));
        assert_eq!(fold_by_automorphism(&a5, &[4, 3, 2, 1, 0]).unwrap(), FoldedType::C(3));
        let d5 = abstract_component(AdeLabel::D(5));
        assert_eq!(fold_by_automorphism(&d5, &[0, 1, 2, 4, 3]).unwrap(), FoldedType::B(4));
        let d4 = abstract_component(AdeLabel::D(4));
        assert_eq!(fold_by_automorphism(&d4, &[3, 1, 0, 2]).unwrap(), FoldedType::G2);
        // E6 in Bourbaki order: 1↔6, 3↔5, 2 and 4 fixed
        let e6 = abstract_component(AdeLabel::E(6));
        assert_eq!(fold_by_automorphism(&e6, &[5, 1, 4, 3, 2, 0]).unwrap(), FoldedType::F4);
        let e8 = abstract_component(AdeLabel::E(8));
        let id: Vec<usize> = (0..8).collect();
        assert_eq!(
            fold_by_automorphism(&e8, &id).unwrap(),
            FoldedType::Ade(AdeLabel::E(8))
        );
        assert!(fold_by_automorphism(&a3, &[1, 0, 2]).is_err());
    }

    fn minus_identity(n: usize) -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect()).collect()
    }

    #[test]
    fn weyl_minus_identity() {
        let e8 = abstract_component(AdeLabel::E(8));
        assert!(weyl_decompose(&e8, &minus_identity(8)).unwrap().is_trivial());
        let a2 = abstract_component(AdeLabel::A(2));
        assert_eq!(weyl_decompose(&a2, &minus_identity(2)).unwrap().sigma, vec![1, 0]);
        let d5 = abstract_component(AdeLabel::D(5));
        assert!(!weyl_decompose(&d5, &minus_identity(5)).unwrap().is_trivial());
        let d4 = abstract_component(AdeLabel::D(4));
        assert!(weyl_decompose(&d4, &minus_identity(4)).unwrap().is_trivial());
    }

    #[test]
    fn weyl_rejects_non_isometries() {
        let a2 = abstract_component(AdeLabel::A(2));
        assert!(weyl_decompose(&a2, &[vec![2, 0], vec![0, 1]]).is_err());
    }
}
