//! Affine hyperplane arrangements in `C^k` with rational weights.
//!
//! Hyperplanes carry integer coefficient data in a canonical form so that
//! equal hyperplanes compare equal. Flats (edges) are enumerated exactly from
//! the intersection poset; density of an edge is matroid connectivity of the
//! localized coefficient rows; resonance is vanishing of the weight sum. The
//! discriminantal family on the pointed line — diagonals `t_i = t_j` with
//! weight `2/κ` and coordinate hyperplanes `t_i = z_j` with weight `−m_j/κ` —
//! is built here, together with the coordinate action of the symmetric group.

use std::collections::{BTreeMap, BTreeSet};

use num::integer::gcd;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{int, scalar_from_str, scalar_to_string, Matrix, Scalar};

/// Errors from arrangement construction and symmetry queries.
#[derive(Debug, thiserror::Error)]
pub enum ArrangementError {
    #[error("arrangement must contain at least one hyperplane")]
    Empty,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("hyperplane {0} duplicates hyperplane {1}")]
    Duplicate(usize, usize),
    #[error("hyperplane {0} lives in dimension {1}, the arrangement in {2}")]
    DimensionMismatch(usize, usize, usize),
    #[error("{0} weight numerators for {1} hyperplanes")]
    WeightCount(usize, usize),
    #[error("kappa must be nonzero")]
    ZeroKappa,
    #[error("marked points must be pairwise distinct")]
    RepeatedPoints,
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("expected a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("permutation image of hyperplane {0} is not in the arrangement")]
    NotSymmetric(usize),
}

/// An affine hyperplane: the zero locus of `c_0 + Σ c_i t_i`.
///
/// Stored in canonical form — the gcd of all stored integers is 1 and the
/// first nonzero coefficient is positive — so equal hyperplanes compare
/// equal. Rational data is admitted by scaling through [`Hyperplane::from_rational`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    coefficients: Vec<i64>,
    constant: i64,
}

impl Hyperplane {
    /// Canonicalizes integer coefficient data. Panics when every coefficient
    /// is zero.
    pub fn new(coefficients: Vec<i64>, constant: i64) -> Self {
        let mut g = coefficients
            .iter()
            .chain(std::iter::once(&constant))
            .fold(0i64, |acc, &v| gcd(acc, v));
        assert!(
            coefficients.iter().any(|&c| c != 0),
            "hyperplane needs a nonzero coefficient"
        );
        let lead = *coefficients.iter().find(|&&c| c != 0).unwrap();
        if lead < 0 {
            g = -g;
        }
        Hyperplane {
            coefficients: coefficients.iter().map(|&c| c / g).collect(),
            constant: constant / g,
        }
    }

    /// Canonicalizes rational coefficient data by clearing denominators.
    pub fn from_rational(coefficients: &[Scalar], constant: &Scalar) -> Self {
        let mut scale = BigInt::one();
        for x in coefficients.iter().chain(std::iter::once(constant)) {
            scale = num::integer::lcm(scale, x.denom().clone());
        }
        let to_i64 = |x: &Scalar| -> i64 {
            let v = (x * Scalar::from_integer(scale.clone())).to_integer();
            v.to_i64().expect("hyperplane coefficients exceed i64")
        };
        Hyperplane::new(coefficients.iter().map(to_i64).collect(), to_i64(constant))
    }

    /// The coefficients `(c_1, …, c_k)`.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// The constant term `c_0`.
    pub fn constant(&self) -> i64 {
        self.constant
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.coefficients.len()
    }

    /// Evaluates `c_0 + Σ c_i p_i`.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ambient_dim(), "point dimension mismatch");
        let mut acc = int(self.constant);
        for (c, p) in self.coefficients.iter().zip(point) {
            acc += int(*c) * p;
        }
        acc
    }

    /// True when the point lies on the hyperplane.
    pub fn contains(&self, point: &[Scalar]) -> bool {
        self.evaluate(point).is_zero()
    }

    /// The coefficient row `(c_1, …, c_k)` as scalars.
    pub fn coefficient_row(&self) -> Vec<Scalar> {
        self.coefficients.iter().map(|&c| int(c)).collect()
    }

    /// The augmented row `(c_1, …, c_k, c_0)` as scalars.
    pub fn augmented_row(&self) -> Vec<Scalar> {
        let mut row = self.coefficient_row();
        row.push(int(self.constant));
        row
    }
}

/// A nonempty flat (edge): the intersection of the hyperplanes in a closed
/// index set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    /// Every hyperplane of the arrangement containing the flat.
    pub hyperplane_indices: BTreeSet<usize>,
    /// Rank of the coefficient rows indexed by `hyperplane_indices`.
    pub codim: usize,
    /// A rational point on the flat.
    pub witness_point: Vec<Scalar>,
}

/// A finite list of distinct affine hyperplanes, each weighted by
/// `numerator/κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedArrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    weight_numerators: Vec<Scalar>,
    kappa: Scalar,
}

impl WeightedArrangement {
    /// Validates distinctness, dimensions, and a nonzero `κ`.
    pub fn new(
        ambient_dim: usize,
        hyperplanes: Vec<Hyperplane>,
        weight_numerators: Vec<Scalar>,
        kappa: Scalar,
    ) -> Result<Self, ArrangementError> {
        if ambient_dim == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if hyperplanes.is_empty() {
            return Err(ArrangementError::Empty);
        }
        if weight_numerators.len() != hyperplanes.len() {
            return Err(ArrangementError::WeightCount(
                weight_numerators.len(),
                hyperplanes.len(),
            ));
        }
        if kappa.is_zero() {
            return Err(ArrangementError::ZeroKappa);
        }
        let mut seen: BTreeMap<&Hyperplane, usize> = BTreeMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.ambient_dim() != ambient_dim {
                return Err(ArrangementError::DimensionMismatch(
                    i,
                    h.ambient_dim(),
                    ambient_dim,
                ));
            }
            if let Some(&j) = seen.get(h) {
                return Err(ArrangementError::Duplicate(i, j));
            }
            seen.insert(h, i);
        }
        Ok(WeightedArrangement {
            ambient_dim,
            hyperplanes,
            weight_numerators,
            kappa,
        })
    }

    /// Dimension `k` of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The hyperplanes in their canonical order.
    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Number of hyperplanes.
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    /// True when the arrangement has no hyperplanes (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Weight numerator of one hyperplane; the weight is `numerator/κ`.
    pub fn weight_numerator(&self, i: usize) -> &Scalar {
        &self.weight_numerators[i]
    }

    /// All weight numerators.
    pub fn weight_numerators(&self) -> &[Scalar] {
        &self.weight_numerators
    }

    /// The global weight scale `κ`.
    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    /// The same arrangement with a different nonzero `κ`.
    pub fn with_kappa(&self, kappa: Scalar) -> Result<Self, ArrangementError> {
        WeightedArrangement::new(
            self.ambient_dim,
            self.hyperplanes.clone(),
            self.weight_numerators.clone(),
            kappa,
        )
    }

    fn coefficient_matrix(&self, indices: &BTreeSet<usize>) -> Matrix {
        Matrix::from_rows(
            indices
                .iter()
                .map(|&i| self.hyperplanes[i].coefficient_row())
                .collect(),
        )
    }

    /// The flat cut out by a set of hyperplanes, with its closed index set,
    /// or `None` when the intersection is empty.
    pub fn flat_spanned_by(&self, indices: impl IntoIterator<Item = usize>) -> Option<Flat> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        let a = self.coefficient_matrix(&indices);
        let b = Matrix::from_cols(
            indices.len(),
            vec![indices
                .iter()
                .map(|&i| int(-self.hyperplanes[i].constant))
                .collect()],
        );
        let x = if indices.is_empty() {
            Matrix::zero(self.ambient_dim, 1)
        } else {
            a.solve(&b)?
        };
        let witness: Vec<Scalar> = x.column(0);
        let rank = a.rank();
        let mut closed = indices.clone();
        for (j, h) in self.hyperplanes.iter().enumerate() {
            if closed.contains(&j) || !h.contains(&witness) {
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = closed
                .iter()
                .map(|&i| self.hyperplanes[i].coefficient_row())
                .collect();
            rows.push(h.coefficient_row());
            if Matrix::from_rows(rows).rank() == rank {
                closed.insert(j);
            }
        }
        Some(Flat {
            hyperplane_indices: closed,
            codim: rank,
            witness_point: witness,
        })
    }

    /// All nonempty flats of codimension ≥ 1, each once, in a deterministic
    /// order (by codimension, then index set).
    ///
    /// Enumeration is breadth-first: the hyperplanes seed codimension 1, and
    /// each level is intersected with every hyperplane, deduplicating by the
    /// closed index set.
    pub fn flats(&self) -> Vec<Flat> {
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut out: Vec<Flat> = Vec::new();
        let mut frontier: Vec<Flat> = Vec::new();
        for i in 0..self.len() {
            let f = self
                .flat_spanned_by([i])
                .expect("a hyperplane is its own flat");
            if seen.insert(f.hyperplane_indices.clone()) {
                frontier.push(f.clone());
                out.push(f);
            }
        }
        while !frontier.is_empty() {
            let mut next: Vec<Flat> = Vec::new();
            for f in &frontier {
                for j in 0..self.len() {
                    if f.hyperplane_indices.contains(&j) {
                        continue;
                    }
                    let mut indices = f.hyperplane_indices.clone();
                    indices.insert(j);
                    let Some(g) = self.flat_spanned_by(indices) else {
                        continue;
                    };
                    if seen.insert(g.hyperplane_indices.clone()) {
                        next.push(g.clone());
                        out.push(g);
                    }
                }
            }
            frontier = next;
        }
        out.sort_by(|a, b| (a.codim, &a.hyperplane_indices).cmp(&(b.codim, &b.hyperplane_indices)));
        out
    }

    /// True when the flat is a dense edge: the localized coefficient rows
    /// form a connected matroid. Codimension-1 flats are always dense.
    pub fn is_dense(&self, flat: &Flat) -> bool {
        let idx: Vec<usize> = flat.hyperplane_indices.iter().copied().collect();
        if idx.len() <= 1 {
            return true;
        }
        let rows: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&i| self.hyperplanes[i].coefficient_row())
            .collect();
        matroid_connected(&rows)
    }

    /// Sum of the weight numerators over the hyperplanes containing the
    /// flat. The edge's weight is this divided by `κ`, so resonance (a zero
    /// sum) does not depend on `κ`.
    pub fn edge_weight(&self, flat: &Flat) -> Scalar {
        flat.hyperplane_indices
            .iter()
            .map(|&i| self.weight_numerators[i].clone())
            .sum()
    }

    /// All dense flats whose weight sum vanishes.
    pub fn resonant_dense_edges(&self) -> Vec<Flat> {
        self.flats()
            .into_iter()
            .filter(|f| self.edge_weight(f).is_zero() && self.is_dense(f))
            .collect()
    }

    /// The permutation of hyperplane indices induced by permuting the
    /// coordinates with `sigma` (position `i` goes to `sigma[i]`, 0-based).
    /// Fails when some image hyperplane is missing or carries a different
    /// weight.
    pub fn apply_permutation(&self, sigma: &[usize]) -> Result<Vec<usize>, ArrangementError> {
        let k = self.ambient_dim;
        let mut hit = vec![false; k];
        if sigma.len() != k
            || !sigma
                .iter()
                .all(|&s| s < k && !std::mem::replace(&mut hit[s], true))
        {
            return Err(ArrangementError::BadPermutation(k));
        }
        let position: BTreeMap<&Hyperplane, usize> = self
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| (h, i))
            .collect();
        let mut map = Vec::with_capacity(self.len());
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let mut coeffs = vec![0i64; k];
            for (pos, &c) in h.coefficients.iter().enumerate() {
                coeffs[sigma[pos]] = c;
            }
            let image = Hyperplane::new(coeffs, h.constant);
            let Some(&j) = position.get(&image) else {
                return Err(ArrangementError::NotSymmetric(i));
            };
            if self.weight_numerators[i] != self.weight_numerators[j] {
                return Err(ArrangementError::NotSymmetric(i));
            }
            map.push(j);
        }
        Ok(map)
    }

    /// Sums of `|μ|` over flats of each codimension, starting with 1 for the
    /// ambient space; μ is the Möbius function of the intersection poset.
    pub fn moebius_poincare(&self) -> Vec<i64> {
        let flats = self.flats();
        let max_codim = flats.iter().map(|f| f.codim).max().unwrap_or(0);
        let mut mu: Vec<i64> = Vec::with_capacity(flats.len());
        for (i, f) in flats.iter().enumerate() {
            let mut m = -1i64;
            for j in 0..i {
                if flats[j].hyperplane_indices.is_subset(&f.hyperplane_indices)
                    && flats[j].hyperplane_indices != f.hyperplane_indices
                {
                    m -= mu[j];
                }
            }
            mu.push(m);
        }
        let mut out = vec![0i64; max_codim + 1];
        out[0] = 1;
        for (f, m) in flats.iter().zip(&mu) {
            out[f.codim] += m.abs();
        }
        out
    }
}

/// Connectivity of the linear matroid on the given nonzero row vectors.
///
/// A basis is extracted greedily; the matroid is connected exactly when the
/// bipartite graph joining each basis element to the non-basis elements whose
/// fundamental circuit contains it is connected and covers every element.
/// Single-element matroids count as connected.
fn matroid_connected(rows: &[Vec<Scalar>]) -> bool {
    let s = rows.len();
    if s <= 1 {
        return true;
    }
    let mut basis: Vec<usize> = Vec::new();
    for e in 0..s {
        let mut cand: Vec<Vec<Scalar>> = basis.iter().map(|&b| rows[b].clone()).collect();
        cand.push(rows[e].clone());
        if Matrix::from_rows(cand).rank() == basis.len() + 1 {
            basis.push(e);
        }
    }
    let b_mat = Matrix::from_cols(
        rows[0].len(),
        basis.iter().map(|&b| rows[b].clone()).collect(),
    );
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); s];
    for e in 0..s {
        if basis.contains(&e) {
            continue;
        }
        let target = Matrix::from_cols(rows[0].len(), vec![rows[e].clone()]);
        let x = b_mat
            .solve(&target)
            .expect("basis spans the localized rows");
        for (pos, &b) in basis.iter().enumerate() {
            if !x.get(pos, 0).is_zero() {
                adj[e].push(b);
                adj[b].push(e);
            }
        }
    }
    let mut seen = vec![false; s];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == s
}

/// Parameters of the discriminantal arrangement: `k` moving coordinates and
/// `n` marked points `z_j` with positive multiplicities `m_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantalSpec {
    k: usize,
    z: Vec<Scalar>,
    m: Vec<usize>,
    kappa: Scalar,
}

impl DiscriminantalSpec {
    /// Validates distinct points, positive multiplicities, `k ≥ 1`, `κ ≠ 0`.
    pub fn new(
        m: Vec<usize>,
        k: usize,
        z: Vec<Scalar>,
        kappa: Scalar,
    ) -> Result<Self, ArrangementError> {
        if k == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if m.is_empty() || z.len() != m.len() {
            return Err(ArrangementError::RepeatedPoints);
        }
        if m.contains(&0) {
            return Err(ArrangementError::ZeroMultiplicity);
        }
        for i in 0..z.len() {
            for j in 0..i {
                if z[i] == z[j] {
                    return Err(ArrangementError::RepeatedPoints);
                }
            }
        }
        if kappa.is_zero() {
            return Err(ArrangementError::ZeroKappa);
        }
        Ok(DiscriminantalSpec { k, z, m, kappa })
    }

    /// The default marked points `z_j = j`.
    pub fn with_default_points(
        m: Vec<usize>,
        k: usize,
        kappa: Scalar,
    ) -> Result<Self, ArrangementError> {
        let z = (1..=m.len()).map(|j| int(j as i64)).collect();
        DiscriminantalSpec::new(m, k, z, kappa)
    }

    /// Number of marked points.
    pub fn n(&self) -> usize {
        self.m.len()
    }

    /// Number of moving coordinates.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The marked points.
    pub fn z(&self) -> &[Scalar] {
        &self.z
    }

    /// The multiplicities.
    pub fn m(&self) -> &[usize] {
        &self.m
    }

    /// The weight scale.
    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    /// `|m| = Σ m_j`.
    pub fn total_multiplicity(&self) -> usize {
        self.m.iter().sum()
    }
}

/// The discriminantal arrangement of a spec: the `C(k,2)` diagonals
/// `t_i − t_j` with weight numerator 2, ordered lexicographically by
/// `(i, j)`, followed by the `n·k` coordinate hyperplanes `t_i − z_j` with
/// weight numerator `−m_j`, ordered by `(i, j)`.
pub fn discriminantal(spec: &DiscriminantalSpec) -> WeightedArrangement {
    let numerators: Vec<Scalar> = spec.m().iter().map(|&mj| -int(mj as i64)).collect();
    discriminantal_custom(spec.k(), spec.z(), &numerators, spec.kappa())
        .expect("discriminantal data is valid by construction")
}

/// Discriminantal geometry with arbitrary coordinate weight numerators:
/// diagonals keep numerator 2, and every hyperplane `t_i − z_j` gets
/// `coordinate_numerators[j]`. Points must be distinct and `k ≥ 1`.
pub fn discriminantal_custom(
    k: usize,
    z: &[Scalar],
    coordinate_numerators: &[Scalar],
    kappa: &Scalar,
) -> Result<WeightedArrangement, ArrangementError> {
    if k == 0 {
        return Err(ArrangementError::ZeroDimension);
    }
    if z.is_empty() || coordinate_numerators.len() != z.len() {
        return Err(ArrangementError::RepeatedPoints);
    }
    for i in 0..z.len() {
        for j in 0..i {
            if z[i] == z[j] {
                return Err(ArrangementError::RepeatedPoints);
            }
        }
    }
    let mut hyperplanes = Vec::new();
    let mut numerators = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut coeffs = vec![0i64; k];
            coeffs[i] = 1;
            coeffs[j] = -1;
            hyperplanes.push(Hyperplane::new(coeffs, 0));
            numerators.push(int(2));
        }
    }
    for i in 0..k {
        for (j, zj) in z.iter().enumerate() {
            let mut coeffs = vec![Scalar::zero(); k];
            coeffs[i] = Scalar::one();
            hyperplanes.push(Hyperplane::from_rational(&coeffs, &-zj.clone()));
            numerators.push(coordinate_numerators[j].clone());
        }
    }
    WeightedArrangement::new(k, hyperplanes, numerators, kappa.clone())
}

/// Index of the diagonal hyperplane `t_i − t_j` (`i < j`, 0-based) in the
/// canonical discriminantal order.
pub fn diagonal_index(k: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < k, "need i < j < k");
    (0..i).map(|a| k - 1 - a).sum::<usize>() + (j - i - 1)
}

/// Index of the coordinate hyperplane `t_i − z_j` (0-based) in the canonical
/// discriminantal order.
pub fn coordinate_index(k: usize, n: usize, i: usize, j: usize) -> usize {
    assert!(i < k && j < n, "need i < k, j < n");
    k * (k - 1) / 2 + i * n + j
}

#[derive(Serialize, Deserialize)]
struct HyperplaneRepr {
    coefficients: Vec<i64>,
    constant: i64,
}

#[derive(Serialize, Deserialize)]
struct ArrangementRepr {
    ambient_dim: usize,
    hyperplanes: Vec<HyperplaneRepr>,
    weight_numerators: Vec<String>,
    kappa: String,
}

impl Serialize for WeightedArrangement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ArrangementRepr {
            ambient_dim: self.ambient_dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneRepr {
                    coefficients: h.coefficients.clone(),
                    constant: h.constant,
                })
                .collect(),
            weight_numerators: self
                .weight_numerators
                .iter()
                .map(scalar_to_string)
                .collect(),
            kappa: scalar_to_string(&self.kappa),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedArrangement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ArrangementRepr::deserialize(d)?;
        let hyperplanes = repr
            .hyperplanes
            .into_iter()
            .map(|h| Hyperplane::new(h.coefficients, h.constant))
            .collect();
        let numerators = repr
            .weight_numerators
            .iter()
            .map(|s| scalar_from_str(s))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        let kappa = scalar_from_str(&repr.kappa).map_err(D::Error::custom)?;
        WeightedArrangement::new(repr.ambient_dim, hyperplanes, numerators, kappa)
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use proptest::prelude::*;

    fn braid_pair_spec() -> DiscriminantalSpec {
        DiscriminantalSpec::with_default_points(vec![1, 2], 2, int(1)).unwrap()
    }

    #[test]
    fn hyperplane_canonical_form() {
        assert_eq!(
            Hyperplane::new(vec![2, -4], 6),
            Hyperplane::new(vec![-1, 2], -3)
        );
        let h = Hyperplane::from_rational(&[frac(1, 2), Scalar::zero()], &frac(-1, 3));
        assert_eq!(h, Hyperplane::new(vec![3, 0], -2));
    }

    #[test]
    fn flats_of_a_single_hyperplane() {
        let arr =
            WeightedArrangement::new(1, vec![Hyperplane::new(vec![1], 0)], vec![int(1)], int(1))
                .unwrap();
        let flats = arr.flats();
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].codim, 1);
    }

    fn braid_triple() -> WeightedArrangement {
        WeightedArrangement::new(
            2,
            vec![
                Hyperplane::new(vec![1, 0], 0),
                Hyperplane::new(vec![0, 1], 0),
                Hyperplane::new(vec![1, -1], 0),
            ],
            vec![int(1), int(1), int(1)],
            int(1),
        )
        .unwrap()
    }

    #[test]
    fn flats_of_braid_triple() {
        let flats = braid_triple().flats();
        assert_eq!(flats.iter().filter(|f| f.codim == 1).count(), 3);
        let deep: Vec<_> = flats.iter().filter(|f| f.codim == 2).collect();
        assert_eq!(deep.len(), 1);
        assert_eq!(deep[0].hyperplane_indices, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn flats_of_smallest_discriminantal() {
        let spec = DiscriminantalSpec::with_default_points(vec![2], 2, int(1)).unwrap();
        let flats = discriminantal(&spec).flats();
        assert_eq!(flats.iter().filter(|f| f.codim == 1).count(), 3);
        assert_eq!(flats.iter().filter(|f| f.codim == 2).count(), 1);
    }

    #[test]
    fn dense_flats() {
        let braid = braid_triple();
        for f in braid.flats() {
            assert!(braid.is_dense(&f));
        }
        let boolean = WeightedArrangement::new(
            2,
            vec![
                Hyperplane::new(vec![1, 0], 0),
                Hyperplane::new(vec![0, 1], 0),
            ],
            vec![int(1), int(1)],
            int(1),
        )
        .unwrap();
        let origin = boolean.flat_spanned_by([0, 1]).unwrap();
        assert!(!boolean.is_dense(&origin));
        assert!(boolean.is_dense(&boolean.flat_spanned_by([0]).unwrap()));
    }

    #[test]
    fn edge_weights_on_discriminantal() {
        let spec = braid_pair_spec();
        let arr = discriminantal(&spec);
        let t1z1 = arr.flat_spanned_by([coordinate_index(2, 2, 0, 0)]).unwrap();
        assert_eq!(arr.edge_weight(&t1z1), int(-1));
        let double = arr
            .flat_spanned_by([coordinate_index(2, 2, 0, 0), coordinate_index(2, 2, 1, 0)])
            .unwrap();
        assert_eq!(arr.edge_weight(&double), int(0));
        let double2 = arr
            .flat_spanned_by([coordinate_index(2, 2, 0, 1), coordinate_index(2, 2, 1, 1)])
            .unwrap();
        assert_eq!(arr.edge_weight(&double2), int(2) - int(4));
    }

    #[test]
    fn resonant_dense_edges_on_small_specs() {
        let arr = discriminantal(&braid_pair_spec());
        let edges = arr.resonant_dense_edges();
        assert_eq!(edges.len(), 1);
        assert_eq!(
            edges[0].hyperplane_indices,
            BTreeSet::from([
                diagonal_index(2, 0, 1),
                coordinate_index(2, 2, 0, 0),
                coordinate_index(2, 2, 1, 0)
            ])
        );

        let spec = DiscriminantalSpec::with_default_points(vec![1, 1], 2, int(1)).unwrap();
        assert_eq!(discriminantal(&spec).resonant_dense_edges().len(), 2);

        let spec = DiscriminantalSpec::with_default_points(vec![2], 1, int(1)).unwrap();
        assert!(discriminantal(&spec).resonant_dense_edges().is_empty());
    }

    #[test]
    fn resonance_is_kappa_independent() {
        let spec = DiscriminantalSpec::with_default_points(vec![1, 1], 2, int(1)).unwrap();
        let a = discriminantal(&spec);
        let b = a.with_kappa(frac(7, 3)).unwrap();
        let edges = |arr: &WeightedArrangement| {
            arr.resonant_dense_edges()
                .into_iter()
                .map(|f| f.hyperplane_indices)
                .collect::<Vec<_>>()
        };
        assert_eq!(edges(&a), edges(&b));
    }

    #[test]
    fn discriminantal_counts() {
        let one = DiscriminantalSpec::with_default_points(vec![3], 1, int(1)).unwrap();
        let arr = discriminantal(&one);
        assert_eq!(arr.len(), 1);
        assert_eq!(arr.weight_numerator(0), &int(-3));

        let two = DiscriminantalSpec::with_default_points(vec![1, 1], 2, int(1)).unwrap();
        assert_eq!(discriminantal(&two).len(), 5);

        let three = DiscriminantalSpec::with_default_points(vec![1, 1], 3, int(1)).unwrap();
        assert_eq!(discriminantal(&three).len(), 9);
    }

    #[test]
    fn permutation_action_on_discriminantal() {
        let spec = DiscriminantalSpec::with_default_points(vec![1], 2, int(1)).unwrap();
        let arr = discriminantal(&spec);
        assert_eq!(arr.apply_permutation(&[0, 1]).unwrap(), vec![0, 1, 2]);
        let swap = arr.apply_permutation(&[1, 0]).unwrap();
        assert_eq!(swap, vec![0, 2, 1]);

        let spec3 = DiscriminantalSpec::with_default_points(vec![1], 3, int(1)).unwrap();
        let arr3 = discriminantal(&spec3);
        let cycle = arr3.apply_permutation(&[1, 2, 0]).unwrap();
        assert_eq!(cycle[3], 4);
        assert_eq!(cycle[4], 5);
        assert_eq!(cycle[5], 3);
    }

    #[test]
    fn permutation_action_composes() {
        let spec = DiscriminantalSpec::with_default_points(vec![1, 2], 3, int(1)).unwrap();
        let arr = discriminantal(&spec);
        let s = [1usize, 2, 0];
        let t = [1usize, 0, 2];
        let st: Vec<usize> = (0..3).map(|i| s[t[i]]).collect();
        let map_s = arr.apply_permutation(&s).unwrap();
        let map_t = arr.apply_permutation(&t).unwrap();
        let map_st = arr.apply_permutation(&st).unwrap();
        let composed: Vec<usize> = (0..arr.len()).map(|h| map_s[map_t[h]]).collect();
        assert_eq!(map_st, composed);
    }

    #[test]
    fn moebius_poincare_examples() {
        let single =
            WeightedArrangement::new(1, vec![Hyperplane::new(vec![1], 0)], vec![int(1)], int(1))
                .unwrap();
        assert_eq!(single.moebius_poincare(), vec![1, 1]);

        assert_eq!(braid_triple().moebius_poincare(), vec![1, 3, 2]);

        let parallel = WeightedArrangement::new(
            1,
            vec![Hyperplane::new(vec![1], 0), Hyperplane::new(vec![1], -1)],
            vec![int(1), int(1)],
            int(1),
        )
        .unwrap();
        assert_eq!(parallel.moebius_poincare(), vec![1, 2]);
    }

    #[test]
    fn arrangement_json_round_trips() {
        let arr = discriminantal(&braid_pair_spec());
        let json = serde_json::to_string(&arr).unwrap();
        let back: WeightedArrangement = serde_json::from_str(&json).unwrap();
        assert_eq!(arr, back);
    }

    #[test]
    fn duplicate_hyperplanes_rejected() {
        let err = WeightedArrangement::new(
            1,
            vec![Hyperplane::new(vec![1], 0), Hyperplane::new(vec![2], 0)],
            vec![int(1), int(1)],
            int(1),
        )
        .unwrap_err();
        assert!(matches!(err, ArrangementError::Duplicate(1, 0)));
    }

    fn small_arrangement() -> impl Strategy<Value = WeightedArrangement> {
        proptest::collection::vec(((-2i64..3, -2i64..3), -1i64..2), 1..5).prop_filter_map(
            "needs distinct nonzero hyperplanes",
            |raw| {
                let mut hyperplanes: Vec<Hyperplane> = Vec::new();
                for ((a, b), c) in raw {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let h = Hyperplane::new(vec![a, b], c);
                    if !hyperplanes.contains(&h) {
                        hyperplanes.push(h);
                    }
                }
                if hyperplanes.is_empty() {
                    return None;
                }
                let w = vec![int(1); hyperplanes.len()];
                WeightedArrangement::new(2, hyperplanes, w, int(1)).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn flats_are_closed_with_valid_witnesses(arr in small_arrangement()) {
            for f in arr.flats() {
                for (j, h) in arr.hyperplanes().iter().enumerate() {
                    if f.hyperplane_indices.contains(&j) {
                        prop_assert!(h.contains(&f.witness_point));
                    }
                }
                let again = arr.flat_spanned_by(f.hyperplane_indices.iter().copied()).unwrap();
                prop_assert_eq!(&again.hyperplane_indices, &f.hyperplane_indices);
                prop_assert_eq!(again.codim, f.codim);
            }
        }
    }
}
