//! Orlik-Solomon algebras of affine arrangements and the structures layered
//! on top of them: Aomoto complexes, symmetric-group skew-symmetrization,
//! the distinguished logarithmic forms indexed by weight compositions, the
//! Euler contraction onto projectivized forms, and flag forms.
//!
//! The algebra is presented on its no-broken-circuit basis. Affine
//! arrangements are handled through the cone trick: a formal ground element
//! representing the hyperplane at infinity is adjoined as the smallest
//! element, so a tuple of hyperplanes with empty intersection is exactly one
//! whose augmented rows span the infinity vector, and both defining relation
//! families reduce to circuit boundaries of the cone matroid.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::{
    coordinate_index, discriminantal, DiscriminantalSpec, WeightedArrangement,
};
use crate::exact::{factorial, int, scalar_from_str, scalar_pow, scalar_to_string, Matrix, Scalar};
use crate::sl2::{compositions, tensor_dual_f};
use crate::CheckReport;

/// Errors from Orlik-Solomon operations.
#[derive(Debug, thiserror::Error)]
pub enum OSError {
    #[error("the arrangement is not central; hyperplanes share no common point")]
    NotCentral,
    #[error("composition has weight {got}, expected {want_top} (top) or {want_subtop} (subtop)")]
    WrongWeight {
        got: usize,
        want_top: usize,
        want_subtop: usize,
    },
    #[error("the arrangement is not discriminantal-shaped: {0} hyperplanes in dimension {1}")]
    NotDiscriminantal(usize, usize),
    #[error("degree {0} holds no flag forms; only the top two degrees do")]
    WrongDegree(usize),
    #[error("malformed element encoding: {0}")]
    BadElement(String),
}

/// A reduced monomial: basis tuples with their rational coefficients.
type Reduction = BTreeMap<Vec<usize>, Scalar>;

/// An element of the Orlik-Solomon algebra in a fixed degree: a finite
/// rational combination of monomials `e_T`, each a strictly increasing tuple
/// of hyperplane indices. Elements produced by algebra operations are
/// reduced to the no-broken-circuit basis; hand-built ones need not be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OSElement {
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl OSElement {
    /// The zero element of the given degree.
    pub fn zero(degree: usize) -> Self {
        OSElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The unit monomial in degree zero.
    pub fn unit() -> Self {
        OSElement::from_term(&[], int(1))
    }

    /// The degree-one generator `e_i`.
    pub fn generator(i: usize) -> Self {
        OSElement::from_term(&[i], int(1))
    }

    /// A single scaled monomial; the tuple must be strictly increasing.
    pub fn from_term(tuple: &[usize], coefficient: Scalar) -> Self {
        assert!(
            tuple.windows(2).all(|w| w[0] < w[1]),
            "monomial tuples must be strictly increasing"
        );
        let mut el = OSElement::zero(tuple.len());
        el.add_term(tuple.to_vec(), coefficient);
        el
    }

    /// The element's degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Whether all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The stored terms, sorted by tuple.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// The coefficient of one monomial.
    pub fn coefficient(&self, tuple: &[usize]) -> Scalar {
        self.terms.get(tuple).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, tuple: Vec<usize>, coefficient: Scalar) {
        debug_assert_eq!(tuple.len(), self.degree);
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(tuple);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum of two elements of the same degree.
    pub fn plus(&self, other: &OSElement) -> OSElement {
        assert_eq!(self.degree, other.degree, "degrees must match");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    /// Difference of two elements of the same degree.
    pub fn minus(&self, other: &OSElement) -> OSElement {
        self.plus(&other.scaled(&int(-1)))
    }

    /// The element scaled by a rational constant.
    pub fn scaled(&self, c: &Scalar) -> OSElement {
        let mut out = OSElement::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.terms {
            out.terms.insert(t.clone(), v * c);
        }
        out
    }
}

impl fmt::Display for OSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let idx: Vec<String> = t.iter().map(usize::to_string).collect();
                if t.is_empty() {
                    scalar_to_string(c)
                } else {
                    format!("{}·e[{}]", scalar_to_string(c), idx.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct OSElementRepr {
    degree: usize,
    terms: BTreeMap<String, String>,
}

impl Serialize for OSElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let key: Vec<String> = t.iter().map(usize::to_string).collect();
                (key.join(","), scalar_to_string(c))
            })
            .collect();
        OSElementRepr {
            degree: self.degree,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OSElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = OSElementRepr::deserialize(d)?;
        let mut el = OSElement::zero(repr.degree);
        for (key, value) in repr.terms {
            let tuple: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|p| p.parse().map_err(|_| D::Error::custom("bad tuple index")))
                    .collect::<Result<_, _>>()?
            };
            if tuple.len() != repr.degree || tuple.windows(2).any(|w| w[0] >= w[1]) {
                return Err(D::Error::custom("tuple does not match degree"));
            }
            el.add_term(tuple, scalar_from_str(&value).map_err(D::Error::custom)?);
        }
        Ok(el)
    }
}

/// One symmetry of an arrangement: the permutation's sign together with the
/// induced relabeling of hyperplane indices.
#[derive(Clone, Debug)]
pub struct SymmetryAction {
    /// `(−1)^{|σ|}`.
    pub sign: i64,
    /// `hyperplane_map[i]` is the index of the image of hyperplane `i`.
    pub hyperplane_map: Vec<usize>,
}

/// The full symmetric group on the `k` coordinates as arrangement
/// symmetries. Fails if some permutation does not preserve the weighted
/// arrangement.
pub fn symmetric_group_actions(
    arr: &WeightedArrangement,
    k: usize,
) -> Result<Vec<SymmetryAction>, crate::arrangement::ArrangementError> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for sigma in (0..k).permutations(k) {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| sigma[i] > sigma[j])
            .count();
        out.push(SymmetryAction {
            sign: if inversions % 2 == 0 { 1 } else { -1 },
            hyperplane_map: arr.apply_permutation(&sigma)?,
        });
    }
    Ok(out)
}

/// The Orlik-Solomon algebra of a weighted arrangement on its
/// no-broken-circuit basis, with a memoized rewriting table.
pub struct OSAlgebra {
    arrangement: WeightedArrangement,
    ground: Vec<Vec<Scalar>>,
    nbc: Vec<Vec<Vec<usize>>>,
    nbc_index: Vec<BTreeMap<Vec<usize>, usize>>,
    memo: Mutex<BTreeMap<Vec<usize>, Reduction>>,
}

/// Builds the algebra: enumerates the no-broken-circuit basis of the cone
/// matroid (infinity element first, then hyperplanes in arrangement order)
/// degree by degree. Tuples with empty intersection or a dependency reduce
/// to combinations of basis monomials on demand.
pub fn build_os(arrangement: WeightedArrangement) -> OSAlgebra {
    let k = arrangement.ambient_dim();
    let mut ground = Vec::with_capacity(arrangement.len() + 1);
    let mut infinity = vec![Scalar::zero(); k + 1];
    infinity[k] = Scalar::one();
    ground.push(infinity);
    for h in arrangement.hyperplanes() {
        ground.push(h.augmented_row());
    }

    let os_shell = OSAlgebra {
        arrangement,
        ground,
        nbc: Vec::new(),
        nbc_index: Vec::new(),
        memo: Mutex::new(BTreeMap::new()),
    };

    let n = os_shell.arrangement.len();
    let mut nbc: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for p in 1..=k {
        let mut level = Vec::new();
        for stem in &nbc[p - 1] {
            let start = stem.last().map_or(0, |&l| l + 1);
            for cand in start..n {
                let mut tuple = stem.clone();
                tuple.push(cand);
                if os_shell.is_nbc(&tuple) {
                    level.push(tuple);
                }
            }
        }
        nbc.push(level);
    }
    let nbc_index = nbc
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), i))
                .collect()
        })
        .collect();
    OSAlgebra {
        nbc,
        nbc_index,
        ..os_shell
    }
}

/// Merges two strictly increasing disjoint tuples, returning the sorted
/// union and the sign with `e_A ∧ e_B = sign · e_{sorted}`.
fn merge_sign(a: &[usize], b: &[usize]) -> (Vec<usize>, i64) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j, mut crossings) = (0, 0, 0usize);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else {
            crossings += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    (out, if crossings % 2 == 0 { 1 } else { -1 })
}

impl OSAlgebra {
    /// The underlying weighted arrangement.
    pub fn arrangement(&self) -> &WeightedArrangement {
        &self.arrangement
    }

    /// Per-degree sizes of the no-broken-circuit basis, degrees 0 through
    /// the ambient dimension.
    pub fn dims(&self) -> Vec<usize> {
        self.nbc.iter().map(Vec::len).collect()
    }

    /// The basis tuples in one degree.
    pub fn nbc_basis(&self, degree: usize) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        self.nbc.get(degree).map_or(&EMPTY, Vec::as_slice)
    }

    /// Position of a basis tuple within its degree.
    pub fn basis_index(&self, tuple: &[usize]) -> Option<usize> {
        self.nbc_index.get(tuple.len())?.get(tuple).copied()
    }

    /// Coordinates of a reduced element in the basis of its degree.
    pub fn coordinates(&self, x: &OSElement) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.nbc_basis(x.degree()).len()];
        for (t, c) in x.terms() {
            let i = self
                .basis_index(t)
                .expect("element is not reduced to the basis");
            out[i] = c.clone();
        }
        out
    }

    /// Columns-of-coordinates matrix for a family of same-degree elements.
    pub fn element_matrix(&self, elements: &[OSElement], degree: usize) -> Matrix {
        let cols = elements.iter().map(|x| self.coordinates(x)).collect();
        Matrix::from_cols(self.nbc_basis(degree).len(), cols)
    }

    fn ground_of(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().map(|&i| i + 1).collect()
    }

    /// Expresses a ground vector over a set of ground elements, returning
    /// the supporting pairs, or None if it is outside their span.
    fn express(&self, probe: usize, over: &[usize]) -> Option<Vec<(usize, Scalar)>> {
        let dim = self.arrangement.ambient_dim() + 1;
        let cols = over.iter().map(|&g| self.ground[g].clone()).collect();
        let m = Matrix::from_cols(dim, cols);
        let rhs = Matrix::from_cols(dim, vec![self.ground[probe].clone()]);
        let sol = m.solve(&rhs)?;
        Some(
            over.iter()
                .enumerate()
                .map(|(i, &g)| (g, sol.get(i, 0)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    fn is_independent(&self, ground: &[usize]) -> bool {
        let rows = ground.iter().map(|&g| self.ground[g].clone()).collect();
        Matrix::from_rows(rows).rank() == ground.len()
    }

    fn is_nbc(&self, tuple: &[usize]) -> bool {
        let ground = self.ground_of(tuple);
        if !self.is_independent(&ground) {
            return false;
        }
        let max = *ground.last().unwrap();
        for e in 0..max {
            if ground.binary_search(&e).is_ok() {
                continue;
            }
            let above: Vec<usize> = ground.iter().copied().filter(|&g| g > e).collect();
            if self.express(e, &above).is_some() {
                return false;
            }
        }
        true
    }

    /// Rewrites the monomial of a strictly increasing tuple into the basis.
    fn reduce_set(&self, tuple: &[usize]) -> Reduction {
        if let Some(hit) = self.memo.lock().unwrap().get(tuple) {
            return hit.clone();
        }
        let result = self.reduce_set_uncached(tuple);
        self.memo
            .lock()
            .unwrap()
            .insert(tuple.to_vec(), result.clone());
        result
    }

    fn reduce_set_uncached(&self, tuple: &[usize]) -> Reduction {
        let mut out = BTreeMap::new();
        if tuple.is_empty() {
            out.insert(Vec::new(), int(1));
            return out;
        }
        let ground = self.ground_of(tuple);
        if !self.is_independent(&ground) {
            return out;
        }
        if self.express(0, &ground).is_some() {
            return out;
        }
        let max = *ground.last().unwrap();
        for e in 1..max {
            if ground.binary_search(&e).is_ok() {
                continue;
            }
            let above: Vec<usize> = ground.iter().copied().filter(|&g| g > e).collect();
            let Some(support) = self.express(e, &above) else {
                continue;
            };
            // Fundamental circuit of the break element, sorted increasing;
            // its boundary relation rewrites the support sub-word.
            let s_word: Vec<usize> = support.iter().map(|&(g, _)| g).collect();
            let mut circuit = vec![e];
            circuit.extend(&s_word);
            let r_word: Vec<usize> = ground
                .iter()
                .copied()
                .filter(|g| s_word.binary_search(g).is_err())
                .collect();
            let (_, unshuffle) = merge_sign(&s_word, &r_word);
            for l in 1..circuit.len() {
                let dropped: Vec<usize> = circuit
                    .iter()
                    .enumerate()
                    .filter(|&(pos, _)| pos != l)
                    .map(|(_, &g)| g)
                    .collect();
                let (merged, merge) = merge_sign(&dropped, &r_word);
                let sign = unshuffle * merge * if (l + 1) % 2 == 0 { 1 } else { -1 };
                let word: Vec<usize> = merged.iter().map(|&g| g - 1).collect();
                for (t, c) in self.reduce_set(&word) {
                    *out.entry(t).or_insert_with(Scalar::zero) += c * int(sign);
                }
            }
            out.retain(|_, c| !c.is_zero());
            return out;
        }
        out.insert(tuple.to_vec(), int(1));
        out
    }

    /// Reduces the monomial of an arbitrary index word to the basis,
    /// accounting for the sign of sorting and vanishing on repeats.
    pub fn reduce(&self, word: &[usize]) -> OSElement {
        let mut sorted = word.to_vec();
        let mut sign = 1i64;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return OSElement::zero(word.len());
        }
        let mut out = OSElement::zero(word.len());
        for (t, c) in self.reduce_set(&sorted) {
            out.add_term(t, c * int(sign));
        }
        out
    }

    /// Graded-commutative product, reduced to the basis.
    pub fn wedge(&self, a: &OSElement, b: &OSElement) -> OSElement {
        let mut out = OSElement::zero(a.degree() + b.degree());
        for (s, cs) in a.terms() {
            for (t, ct) in b.terms() {
                let mut word = s.clone();
                word.extend(t);
                let reduced = self.reduce(&word);
                for (u, cu) in reduced.terms() {
                    out.add_term(u.clone(), cs * ct * cu);
                }
            }
        }
        out
    }

    /// The degree-one form with one coefficient per hyperplane.
    pub fn one_form(&self, coefficients: &[Scalar]) -> OSElement {
        assert_eq!(coefficients.len(), self.arrangement.len());
        let mut out = OSElement::zero(1);
        for (i, c) in coefficients.iter().enumerate() {
            out.add_term(vec![i], c.clone());
        }
        out
    }

    /// The weighted one-form `ω_a = Σ_l (numerator_l / κ) e_l`.
    pub fn weighted_one_form(&self) -> OSElement {
        let kappa = self.arrangement.kappa();
        let coeffs: Vec<Scalar> = self
            .arrangement
            .weight_numerators()
            .iter()
            .map(|n| n / kappa)
            .collect();
        self.one_form(&coeffs)
    }

    /// The Aomoto complex: exterior multiplication by the weighted one-form
    /// on the basis, in degrees 0 through the ambient dimension.
    pub fn aomoto(&self) -> crate::CochainComplex {
        let omega = self.weighted_one_form();
        let top = self.arrangement.ambient_dim();
        let dims: Vec<usize> = (0..=top).map(|p| self.nbc_basis(p).len()).collect();
        let labels = (0..=top)
            .map(|p| {
                self.nbc_basis(p)
                    .iter()
                    .map(|t| {
                        let idx: Vec<String> = t.iter().map(usize::to_string).collect();
                        format!("e[{}]", idx.join(","))
                    })
                    .collect()
            })
            .collect();
        let mut diffs = Vec::new();
        for p in 0..top {
            let mut d = Matrix::zero(dims[p + 1], dims[p]);
            for (col, t) in self.nbc_basis(p).iter().enumerate() {
                let image = self.wedge(&omega, &OSElement::from_term(t, int(1)));
                for (u, c) in image.terms() {
                    d.add_to(self.basis_index(u).unwrap(), col, c);
                }
            }
            diffs.push(d);
        }
        crate::CochainComplex::new(0, dims, labels, diffs)
            .expect("multiplication by a one-form squares to zero")
    }

    /// Applies one symmetry to an element: indices are relabeled and the
    /// word re-sorted with the sign of the sort; no other sign enters.
    pub fn permute(&self, action: &SymmetryAction, x: &OSElement) -> OSElement {
        let mut out = OSElement::zero(x.degree());
        for (t, c) in x.terms() {
            let word: Vec<usize> = t.iter().map(|&i| action.hyperplane_map[i]).collect();
            let reduced = self.reduce(&word);
            for (u, cu) in reduced.terms() {
                out.add_term(u.clone(), c * cu);
            }
        }
        out
    }

    /// `Skew(x) = Σ_σ (−1)^{|σ|} σ·x` over the given symmetries.
    pub fn skew(&self, actions: &[SymmetryAction], x: &OSElement) -> OSElement {
        let mut out = OSElement::zero(x.degree());
        for action in actions {
            let image = self.permute(action, x);
            for (t, c) in image.terms() {
                out.add_term(t.clone(), c * int(action.sign));
            }
        }
        out
    }

    /// Matrix of the skew-symmetrizer on one degree: column `i` holds the
    /// coordinates of `Skew` applied to the `i`-th basis monomial.
    pub fn skew_projector(&self, actions: &[SymmetryAction], degree: usize) -> Matrix {
        let basis = self.nbc_basis(degree);
        let cols = basis
            .iter()
            .map(|t| self.coordinates(&self.skew(actions, &OSElement::from_term(t, int(1)))))
            .collect();
        Matrix::from_cols(basis.len(), cols)
    }

    /// A basis of the skew subspace in one degree: the pivot columns of the
    /// skew-symmetrizer matrix.
    pub fn skew_subspace(&self, actions: &[SymmetryAction], degree: usize) -> Matrix {
        let p = self.skew_projector(actions, degree);
        let (_, pivots) = p.rref();
        let cols = pivots.iter().map(|&j| p.column(j)).collect();
        Matrix::from_cols(p.rows(), cols)
    }

    /// Per-degree dimensions of the skew subspaces.
    pub fn skew_dims(&self, actions: &[SymmetryAction]) -> Vec<usize> {
        (0..self.nbc.len())
            .map(|p| self.skew_projector(actions, p).rank())
            .collect()
    }

    fn central_point(&self) -> Option<Vec<Scalar>> {
        let rows = self
            .arrangement
            .hyperplanes()
            .iter()
            .map(|h| h.coefficient_row())
            .collect();
        let a = Matrix::from_rows(rows);
        let rhs_col: Vec<Scalar> = self
            .arrangement
            .hyperplanes()
            .iter()
            .map(|h| -int(h.constant()))
            .collect();
        let rhs = Matrix::from_cols(self.arrangement.len(), vec![rhs_col]);
        let sol = a.solve(&rhs)?;
        Some(sol.column(0))
    }

    /// Contraction along the Euler vector field of a central arrangement:
    /// `∂(e_{i_1}…e_{i_p}) = Σ_ℓ (−1)^{ℓ−1} e_{i_1}…ê_{i_ℓ}…e_{i_p}`.
    /// Basis monomials contract to basis monomials, so no rewriting occurs.
    pub fn euler_contraction(&self, x: &OSElement) -> Result<OSElement, OSError> {
        if self.central_point().is_none() {
            return Err(OSError::NotCentral);
        }
        if x.degree() == 0 {
            return Ok(OSElement::zero(0));
        }
        let mut out = OSElement::zero(x.degree() - 1);
        for (t, c) in x.terms() {
            for l in 0..t.len() {
                let dropped: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(pos, _)| pos != l)
                    .map(|(_, &i)| i)
                    .collect();
                let sign = if l % 2 == 0 { 1 } else { -1 };
                let reduced = self.reduce(&dropped);
                for (u, cu) in reduced.terms() {
                    out.add_term(u.clone(), c * cu * int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of the Euler contraction from one degree down to the next.
    pub fn contraction_matrix(&self, degree: usize) -> Result<Matrix, OSError> {
        assert!(degree >= 1, "contraction lowers degree");
        let basis = self.nbc_basis(degree);
        let mut cols = Vec::with_capacity(basis.len());
        for t in basis {
            let image = self.euler_contraction(&OSElement::from_term(t, int(1)))?;
            cols.push(self.coordinates(&image));
        }
        Ok(Matrix::from_cols(self.nbc_basis(degree - 1).len(), cols))
    }
}

/// Which of the two distinguished degrees a composition-indexed form
/// occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaVariant {
    /// Weight `k`: all coordinates of the arrangement are consumed.
    Top,
    /// Weight `k−1`: the form lives in the first `k−1` coordinates.
    Subtop,
}

fn discriminantal_shape(os: &OSAlgebra) -> Result<(usize, usize), OSError> {
    let k = os.arrangement().ambient_dim();
    let total = os.arrangement().len();
    let diagonals = k * (k - 1) / 2;
    if total <= diagonals || !(total - diagonals).is_multiple_of(k) {
        return Err(OSError::NotDiscriminantal(total, k));
    }
    Ok((k, (total - diagonals) / k))
}

/// The skew-symmetrized logarithmic form of a composition `J`.
///
/// For `|J| = k` (top) this is `Skew(α_J η_{J,1} ∧ … ∧ η_{J,n})` with
/// `α_J = (κ^{|J|} j_1!…j_n!)^{−1}`, where block `i` wedges the forms
/// `dlog(t_a − z_i)` over the `j_i` coordinates following `j_1+…+j_{i−1}`.
/// For `|J| = k−1` (subtop) the same construction runs in the coordinates
/// `t_1..t_{k−1}` and carries the extra prefactor `(−1)^k`; skewing is
/// still over the full symmetric group on `k` letters.
pub fn omega_j(
    os: &OSAlgebra,
    j_vec: &[usize],
    variant: OmegaVariant,
) -> Result<OSElement, OSError> {
    let (k, n) = discriminantal_shape(os)?;
    assert_eq!(j_vec.len(), n, "one composition entry per point");
    let weight: usize = j_vec.iter().sum();
    let expected = match variant {
        OmegaVariant::Top => k,
        OmegaVariant::Subtop => k - 1,
    };
    if weight != expected {
        return Err(OSError::WrongWeight {
            got: weight,
            want_top: k,
            want_subtop: k - 1,
        });
    }
    let mut alpha = scalar_pow(os.arrangement().kappa(), -(weight as i32));
    for &ji in j_vec {
        alpha /= factorial(ji);
    }
    if variant == OmegaVariant::Subtop && k % 2 == 1 {
        alpha = -alpha;
    }
    let mut word = Vec::with_capacity(weight);
    let mut a = 0usize;
    for (i, &ji) in j_vec.iter().enumerate() {
        for _ in 0..ji {
            word.push(coordinate_index(k, n, a, i));
            a += 1;
        }
    }
    let actions = symmetric_group_actions(os.arrangement(), k)
        .expect("discriminantal arrangements are symmetric");
    Ok(os.skew(&actions, &OSElement::from_term(&word, alpha)))
}

/// All compositions of the top (or subtop) weight, paired with their forms,
/// in lexicographic order.
pub fn omega_family(
    os: &OSAlgebra,
    variant: OmegaVariant,
) -> Result<Vec<(Vec<usize>, OSElement)>, OSError> {
    let (k, n) = discriminantal_shape(os)?;
    let weight = match variant {
        OmegaVariant::Top => k,
        OmegaVariant::Subtop => k - 1,
    };
    compositions(weight, n)
        .into_iter()
        .map(|j_vec| {
            let w = omega_j(os, &j_vec, variant)?;
            Ok((j_vec, w))
        })
        .collect()
}

/// Verifies that the composition-indexed forms are bases of the skew
/// subspaces in the top two degrees and that every other skew degree
/// vanishes.
pub fn omega_j_basis_check(os: &OSAlgebra) -> Result<CheckReport, OSError> {
    let (k, _) = discriminantal_shape(os)?;
    let actions = symmetric_group_actions(os.arrangement(), k)
        .expect("discriminantal arrangements are symmetric");
    let mut report = CheckReport::new("omega-basis");
    let dims = os.skew_dims(&actions);
    for (p, &dim) in dims.iter().enumerate() {
        if p + 1 != k && p != k {
            report.claim(dim == 0, format!("skew degree {p} vanishes (dim {dim})"));
        }
    }
    for (variant, degree) in [(OmegaVariant::Subtop, k - 1), (OmegaVariant::Top, k)] {
        let family = omega_family(os, variant)?;
        let elements: Vec<OSElement> = family.iter().map(|(_, w)| w.clone()).collect();
        let m = os.element_matrix(&elements, degree);
        let independent = m.rank() == family.len();
        report.claim(
            independent,
            format!("degree {degree}: {} forms independent", family.len()),
        );
        let skew = os.skew_subspace(&actions, degree);
        report.claim(
            m.same_column_span(&skew),
            format!(
                "degree {degree}: forms span the skew subspace (dim {})",
                skew.cols()
            ),
        );
    }
    Ok(report)
}

/// Matrix of exterior multiplication by an explicit one-form from the
/// subtop form basis to the top form basis; None when the image escapes the
/// span of the top forms. The one-form is supplied by the caller so one
/// algebra can serve many weight vectors.
pub fn omega_wedge_matrix_for(
    os: &OSAlgebra,
    one_form: &OSElement,
) -> Result<Option<Matrix>, OSError> {
    let (k, _) = discriminantal_shape(os)?;
    let tops = omega_family(os, OmegaVariant::Top)?;
    let subtops = omega_family(os, OmegaVariant::Subtop)?;
    let top_elements: Vec<OSElement> = tops.iter().map(|(_, w)| w.clone()).collect();
    let top_matrix = os.element_matrix(&top_elements, k);
    let wedged: Vec<Vec<Scalar>> = subtops
        .iter()
        .map(|(_, w)| os.coordinates(&os.wedge(one_form, w)))
        .collect();
    let rhs = Matrix::from_cols(os.nbc_basis(k).len(), wedged);
    Ok(top_matrix.solve(&rhs))
}

/// Matrix of exterior multiplication by the weighted one-form of the
/// arrangement the algebra was built from.
pub fn omega_wedge_matrix(os: &OSAlgebra) -> Result<Option<Matrix>, OSError> {
    omega_wedge_matrix_for(os, &os.weighted_one_form())
}

/// A cache of built algebras keyed by geometry (hyperplanes and κ), shared
/// across weight vectors: the basis, rewriting table, and composition-indexed
/// forms never depend on the weights, which enter only through explicit
/// one-forms.
#[derive(Default)]
pub struct OSCache {
    inner: Mutex<BTreeMap<String, std::sync::Arc<OSAlgebra>>>,
}

impl OSCache {
    /// Returns the cached algebra for the arrangement's geometry, building
    /// it on first use. The stored arrangement keeps the weights of the
    /// first build; callers supply one-forms explicitly.
    pub fn get_or_build(&self, arrangement: &WeightedArrangement) -> std::sync::Arc<OSAlgebra> {
        let mut key = format!(
            "{}|{}",
            arrangement.ambient_dim(),
            scalar_to_string(arrangement.kappa())
        );
        for h in arrangement.hyperplanes() {
            key.push_str(&format!(";{:?}+{}", h.coefficients(), h.constant()));
        }
        if let Some(hit) = self.inner.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let built = std::sync::Arc::new(build_os(arrangement.clone()));
        self.inner
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(built)
            .clone()
    }
}

/// Checks that multiplication by the weighted one-form, written in the
/// composition-indexed bases, is exactly the lowering-operator matrix on
/// the weight components of the dual tensor module.
pub fn sv_isomorphism_check(spec: &DiscriminantalSpec) -> CheckReport {
    let mut report = CheckReport::new("sv-isomorphism");
    let os = build_os(discriminantal(spec));
    let (k, n) = (spec.k(), spec.n());
    let m_i64: Vec<i64> = spec.m().iter().map(|&mi| mi as i64).collect();
    let wedge = match omega_wedge_matrix(&os) {
        Ok(Some(w)) => w,
        Ok(None) => {
            report.claim(false, "wedge image escapes the span of the top forms");
            return report;
        }
        Err(e) => {
            report.claim(false, format!("wedge matrix failed: {e}"));
            return report;
        }
    };
    let tops = compositions(k, n);
    let subtops = compositions(k - 1, n);
    let index: BTreeMap<&Vec<usize>, usize> =
        tops.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut f = Matrix::zero(tops.len(), subtops.len());
    for (col, j_vec) in subtops.iter().enumerate() {
        for (target, c) in tensor_dual_f(&m_i64, j_vec) {
            f.add_to(index[&target], col, &c);
        }
    }
    let equal = wedge == f;
    if !equal {
        'outer: for row in 0..f.rows() {
            for col in 0..f.cols() {
                if f.get(row, col) != wedge.get(row, col) {
                    report.claim(
                        false,
                        format!(
                            "entry ({row},{col}): wedge {} vs lowering {}",
                            scalar_to_string(&wedge.get(row, col)),
                            scalar_to_string(&f.get(row, col))
                        ),
                    );
                    break 'outer;
                }
            }
        }
    }
    report.claim(
        equal,
        format!(
            "wedge matrix equals the lowering matrix ({}×{})",
            f.rows(),
            f.cols()
        ),
    );
    report
}

/// Per-degree dimensions of the skew part of the projectivized algebra of
/// the cone over `m+1` points: the arrangement `t_i = 0`, `t_i = t_j` in
/// `C^{m+1}`, contracted along the Euler field and skew-symmetrized.
pub fn projective_skew_dims(m: usize) -> Vec<usize> {
    let k = m + 1;
    let arr = crate::arrangement::discriminantal_custom(k, &[int(0)], &[int(0)], &int(1))
        .expect("cone data is valid");
    let os = build_os(arr);
    let actions = symmetric_group_actions(os.arrangement(), k).expect("the cone is symmetric");
    (0..=m)
        .map(|p| {
            let projector = os.skew_projector(&actions, p);
            let boundary = os.contraction_matrix(p + 1).expect("the cone is central");
            projector.mul(&boundary).rank()
        })
        .collect()
}

/// The flag coefficient `β^K = Π_i k_i! Π_{ℓ=1}^{k_i} (m_i + 1 − ℓ)`.
pub fn flag_coefficient(m: &[usize], k_vec: &[usize]) -> Scalar {
    let mut out = int(1);
    for (&mi, &ki) in m.iter().zip(k_vec) {
        out *= factorial(ki);
        for l in 1..=ki as i64 {
            out *= int(mi as i64 + 1 - l);
        }
    }
    out
}

/// The scaled forms `β^K ω_K` spanning the flag subspace in one of the top
/// two degrees; compositions with a vanishing coefficient drop out, leaving
/// exactly those with `k_i ≤ m_i` everywhere.
pub fn flag_subspace(
    os: &OSAlgebra,
    m: &[usize],
    degree: usize,
) -> Result<Vec<OSElement>, OSError> {
    let (k, n) = discriminantal_shape(os)?;
    assert_eq!(m.len(), n, "one multiplicity per point");
    let variant = if degree == k {
        OmegaVariant::Top
    } else if degree + 1 == k {
        OmegaVariant::Subtop
    } else {
        return Err(OSError::WrongDegree(degree));
    };
    let mut out = Vec::new();
    for k_vec in compositions(degree, n) {
        let beta = flag_coefficient(m, &k_vec);
        if beta.is_zero() {
            continue;
        }
        out.push(omega_j(os, &k_vec, variant)?.scaled(&beta));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{discriminantal_custom, Hyperplane};
    use crate::exact::frac;

    fn arrangement(
        dim: usize,
        planes: Vec<(Vec<i64>, i64)>,
        numerators: Vec<i64>,
    ) -> WeightedArrangement {
        let hyperplanes = planes
            .into_iter()
            .map(|(c, b)| Hyperplane::new(c, b))
            .collect();
        let nums = numerators.into_iter().map(int).collect();
        WeightedArrangement::new(dim, hyperplanes, nums, int(1)).unwrap()
    }

    fn braid_os() -> OSAlgebra {
        build_os(arrangement(
            2,
            vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, -1], 0)],
            vec![1, 1, 1],
        ))
    }

    #[test]
    fn dims_of_small_arrangements() {
        let single = build_os(arrangement(1, vec![(vec![1], 0)], vec![1]));
        assert_eq!(single.dims(), vec![1, 1]);

        assert_eq!(braid_os().dims(), vec![1, 3, 2]);

        let parallel = build_os(arrangement(
            1,
            vec![(vec![1], 0), (vec![1], -1)],
            vec![1, 1],
        ));
        assert_eq!(parallel.dims(), vec![1, 2]);
        assert!(parallel.reduce(&[0, 1]).is_zero());
    }

    #[test]
    fn dims_match_poset_counts() {
        for os in [
            braid_os(),
            build_os(arrangement(
                1,
                vec![(vec![1], 0), (vec![1], -1)],
                vec![1, 1],
            )),
            build_os(discriminantal(
                &DiscriminantalSpec::with_default_points(vec![1, 1], 2, int(1)).unwrap(),
            )),
            build_os(discriminantal(
                &DiscriminantalSpec::with_default_points(vec![2], 3, int(1)).unwrap(),
            )),
        ] {
            let counts = os.arrangement().moebius_poincare();
            let dims = os.dims();
            for (p, &dim) in dims.iter().enumerate() {
                let expected = counts.get(p).copied().unwrap_or(0);
                assert_eq!(dim as i64, expected, "degree {p}");
            }
        }
    }

    #[test]
    fn wedge_squares_and_disjoint_products_vanish() {
        let os = braid_os();
        let e0 = OSElement::generator(0);
        assert!(os.wedge(&e0, &e0).is_zero());

        let parallel = build_os(arrangement(
            1,
            vec![(vec![1], 0), (vec![1], -1)],
            vec![1, 1],
        ));
        let product = parallel.wedge(&OSElement::generator(0), &OSElement::generator(1));
        assert!(product.is_zero());
    }

    #[test]
    fn braid_dependency_reduces_by_the_boundary_relation() {
        let os = braid_os();
        // Circuit {0,1,2}: e_{12} − e_{02} + e_{01} = 0 after reduction.
        let reduced = os.reduce(&[1, 2]);
        let expected =
            OSElement::from_term(&[0, 2], int(1)).minus(&OSElement::from_term(&[0, 1], int(1)));
        assert_eq!(reduced, expected);
        let alternating = os
            .reduce(&[1, 2])
            .minus(&os.reduce(&[0, 2]))
            .plus(&os.reduce(&[0, 1]));
        assert!(alternating.is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative() {
        let os = braid_os();
        let a = os.one_form(&[int(1), int(-2), int(3)]);
        let b = os.one_form(&[int(2), int(0), int(5)]);
        let ab = os.wedge(&a, &b);
        let ba = os.wedge(&b, &a);
        assert_eq!(ab, ba.scaled(&int(-1)));

        let u = OSElement::unit();
        assert_eq!(os.wedge(&u, &a), a);
        let assoc_l = os.wedge(&os.wedge(&a, &b), &a);
        let assoc_r = os.wedge(&a, &os.wedge(&b, &a));
        assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn aomoto_betti_examples() {
        // A single punctured line with nonzero weight is exact: the 1×1
        // differential has rank 1, so both cohomologies vanish.
        let single = build_os(arrangement(1, vec![(vec![1], 0)], vec![-2]));
        let complex = single.aomoto();
        assert_eq!(complex.differential(0).get(0, 0), int(-2));
        assert_eq!(complex.betti().betti_vector(), vec![0, 0]);

        let zero_weights = build_os(arrangement(
            2,
            vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, -1], 0)],
            vec![0, 0, 0],
        ));
        let complex = zero_weights.aomoto();
        assert!(complex.differential(0).is_zero());
        assert_eq!(complex.betti().betti_vector(), vec![1, 3, 2]);

        let local = build_os(
            discriminantal_custom(1, &[int(0), int(1)], &[int(-1), int(2)], &int(1)).unwrap(),
        );
        assert_eq!(local.aomoto().betti().betti_vector(), vec![0, 1]);
    }

    #[test]
    fn aomoto_squares_to_zero_for_arbitrary_weights() {
        // Construction validates d∘d = 0; failure would panic.
        for nums in [vec![3, -1, 7], vec![2, 2, -4], vec![5, 0, 1]] {
            let os = build_os(arrangement(
                2,
                vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, -1], 0)],
                nums,
            ));
            let _ = os.aomoto();
        }
    }

    #[test]
    fn skew_dims_of_discriminantal_arrangements() {
        let spec = DiscriminantalSpec::with_default_points(vec![1, 1], 2, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        let actions = symmetric_group_actions(os.arrangement(), 2).unwrap();
        assert_eq!(os.skew_dims(&actions), vec![0, 2, 3]);
        assert_eq!(os.skew_subspace(&actions, 2).cols(), 3);
    }

    #[test]
    fn skew_dims_vanish_outside_the_top_two_degrees() {
        for (k, m) in [
            (2usize, vec![1usize]),
            (2, vec![1, 1]),
            (3, vec![2]),
            (3, vec![1, 1]),
        ] {
            let n = m.len();
            let spec = DiscriminantalSpec::with_default_points(m, k, int(1)).unwrap();
            let os = build_os(discriminantal(&spec));
            let actions = symmetric_group_actions(os.arrangement(), k).unwrap();
            let dims = os.skew_dims(&actions);
            for (p, &dim) in dims.iter().enumerate() {
                if p + 1 == k || p == k {
                    let weight = if p == k { k } else { k - 1 };
                    let count = compositions(weight, n).len();
                    assert_eq!(dim, count, "degree {p} at k={k}, n={n}");
                } else {
                    assert_eq!(dim, 0, "degree {p} at k={k}, n={n}");
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let spec = DiscriminantalSpec::with_default_points(vec![1], 1, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        let w = omega_j(&os, &[1], OmegaVariant::Top).unwrap();
        assert_eq!(w, OSElement::from_term(&[0], int(1)));

        let spec = DiscriminantalSpec::with_default_points(vec![1, 1], 1, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        let w = omega_j(&os, &[0, 0], OmegaVariant::Subtop).unwrap();
        assert_eq!(w, OSElement::from_term(&[], int(-1)));

        let kappa = frac(1, 3);
        let spec = DiscriminantalSpec::with_default_points(vec![1], 2, kappa.clone()).unwrap();
        let os = build_os(discriminantal(&spec));
        let w = omega_j(&os, &[2], OmegaVariant::Top).unwrap();
        let alpha = scalar_pow(&kappa, -2) / int(2);
        let monomial = os.reduce(&[1, 2]).scaled(&(alpha * int(2)));
        assert_eq!(w, monomial);

        assert!(matches!(
            omega_j(&os, &[1], OmegaVariant::Top),
            Err(OSError::WrongWeight { .. })
        ));
    }

    #[test]
    fn omega_basis_checks_pass() {
        for (k, m) in [(1usize, vec![1usize]), (2, vec![1, 1]), (2, vec![3])] {
            let spec = DiscriminantalSpec::with_default_points(m, k, frac(2, 1)).unwrap();
            let os = build_os(discriminantal(&spec));
            let report = omega_j_basis_check(&os).unwrap();
            assert!(report.pass, "{:?}", report.details);
        }
    }

    #[test]
    fn sv_isomorphism_examples() {
        let spec = DiscriminantalSpec::with_default_points(vec![3], 1, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        let w = omega_wedge_matrix(&os).unwrap().unwrap();
        assert_eq!(w.get(0, 0), int(3));

        let spec = DiscriminantalSpec::with_default_points(vec![1, 1], 1, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        let w = omega_wedge_matrix(&os).unwrap().unwrap();
        assert_eq!((w.rows(), w.cols()), (2, 1));
        assert_eq!(w.get(0, 0), int(1));
        assert_eq!(w.get(1, 0), int(1));

        for (k, m) in [
            (1usize, vec![3usize]),
            (2, vec![1, 1]),
            (2, vec![2, 3]),
            (3, vec![2]),
            (2, vec![1, 1, 2]),
        ] {
            let spec = DiscriminantalSpec::with_default_points(m, k, frac(5, 2)).unwrap();
            let report = sv_isomorphism_check(&spec);
            assert!(report.pass, "{:?}", report.details);
        }
    }

    #[test]
    fn zero_weights_give_zero_wedge_matrix() {
        // Same geometry as discriminantal(k=2, two points) but with every
        // weight numerator zeroed, diagonals included.
        let shaped =
            discriminantal_custom(2, &[int(1), int(2)], &[int(0), int(0)], &int(1)).unwrap();
        let os = build_os(
            WeightedArrangement::new(
                shaped.ambient_dim(),
                shaped.hyperplanes().to_vec(),
                vec![int(0); shaped.len()],
                int(1),
            )
            .unwrap(),
        );
        let subtops = omega_family(&os, OmegaVariant::Subtop).unwrap();
        let omega_a = os.weighted_one_form();
        assert!(omega_a.is_zero());
        for (_, w) in &subtops {
            assert!(os.wedge(&omega_a, w).is_zero());
        }
        assert!(tensor_dual_f(&[0, 0], &[0, 0]).is_empty());
    }

    #[test]
    fn euler_contraction_examples() {
        let os = braid_os();
        let d1 = os.euler_contraction(&OSElement::generator(0)).unwrap();
        assert_eq!(d1, OSElement::unit());
        let d2 = os
            .euler_contraction(&OSElement::from_term(&[0, 1], int(1)))
            .unwrap();
        assert_eq!(d2, OSElement::generator(1).minus(&OSElement::generator(0)));
    }

    #[test]
    fn euler_contraction_squares_to_zero() {
        let os = build_os(discriminantal_custom(3, &[int(0)], &[int(0)], &int(1)).unwrap());
        for t in os.nbc_basis(3) {
            let x = OSElement::from_term(t, int(1));
            let dd = os
                .euler_contraction(&os.euler_contraction(&x).unwrap())
                .unwrap();
            assert!(dd.is_zero(), "∂∂ e_{t:?}");
        }
    }

    #[test]
    fn euler_contraction_rejects_affine_arrangements() {
        let os = build_os(arrangement(
            1,
            vec![(vec![1], 0), (vec![1], -1)],
            vec![1, 1],
        ));
        assert!(matches!(
            os.euler_contraction(&OSElement::generator(0)),
            Err(OSError::NotCentral)
        ));
    }

    #[test]
    fn skew_commutes_with_contraction_on_the_cone() {
        let os = build_os(discriminantal_custom(3, &[int(0)], &[int(0)], &int(1)).unwrap());
        let actions = symmetric_group_actions(os.arrangement(), 3).unwrap();
        for p in 1..=3usize {
            for t in os.nbc_basis(p) {
                let x = OSElement::from_term(t, int(1));
                let lhs = os.skew(&actions, &os.euler_contraction(&x).unwrap());
                let rhs = os.euler_contraction(&os.skew(&actions, &x)).unwrap();
                assert_eq!(lhs, rhs, "degree {p} monomial {t:?}");
            }
        }
    }

    #[test]
    fn projective_skew_dims_are_concentrated() {
        assert_eq!(projective_skew_dims(1), vec![0, 1]);
        assert_eq!(projective_skew_dims(2), vec![0, 0, 1]);
    }

    #[test]
    fn flag_examples() {
        assert_eq!(flag_coefficient(&[1, 1], &[1, 1]), int(1));
        assert_eq!(flag_coefficient(&[1, 1], &[2, 0]), int(0));
        assert_eq!(flag_coefficient(&[2], &[1]), int(2));

        let spec = DiscriminantalSpec::with_default_points(vec![1, 1], 2, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        assert_eq!(flag_subspace(&os, &[1, 1], 2).unwrap().len(), 1);
        assert_eq!(flag_subspace(&os, &[1, 1], 1).unwrap().len(), 2);

        let spec = DiscriminantalSpec::with_default_points(vec![2], 1, int(1)).unwrap();
        let os = build_os(discriminantal(&spec));
        let flags = flag_subspace(&os, &[2], 1).unwrap();
        assert_eq!(flags.len(), 1);
        let top = omega_j(&os, &[1], OmegaVariant::Top).unwrap();
        assert_eq!(flags[0], top.scaled(&int(2)));
    }

    #[test]
    fn element_serialization_round_trips() {
        let os = braid_os();
        let x = os
            .wedge(
                &os.one_form(&[int(1), int(2), int(-3)]),
                &OSElement::generator(2),
            )
            .scaled(&frac(1, 6));
        let json = serde_json::to_string(&x).unwrap();
        let back: OSElement = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);

        let bad = r#"{"degree":2,"terms":{"1":"1/2"}}"#;
        assert!(serde_json::from_str::<OSElement>(bad).is_err());
    }

    #[test]
    fn reduce_is_stable_on_basis_monomials() {
        let os = braid_os();
        for p in 0..=2usize {
            for t in os.nbc_basis(p) {
                assert_eq!(os.reduce(t), OSElement::from_term(t, int(1)));
            }
        }
        let swapped = os.reduce(&[2, 0]);
        assert_eq!(swapped, OSElement::from_term(&[0, 2], int(-1)));
    }
}
