//! The stratified total complex of skew forms and its comparison with the
//! two-step weight complex.
//!
//! Strata are indexed by sets `𝐣` of marked points blown up to depth one;
//! on each stratum the surviving skew forms are tracked purely by their
//! composition labels. Within a stratum the differential is exterior
//! multiplication by the weighted one-form, transported to an f-action
//! matrix on labels; between adjacent strata it is the residue, a signed
//! label shift. The open stratum is the one place where forms are expanded
//! concretely: its wedge block is recomputed from the actual
//! Orlik-Solomon algebra of the arrangement, so the label model stays
//! pinned to honest geometry while deeper strata run on the transported
//! matrices alone.
//!
//! The comparison map γ to the weight complex is a label bijection up to a
//! diagonal sign character ε(𝐣, kind). The character is solved for from
//! the chain-map equations rather than prescribed; a contradiction in the
//! propagation, or a surviving mismatch in the final matrix check, fails
//! the verification.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::{
    discriminantal, discriminantal_custom, DiscriminantalSpec, WeightedArrangement,
};
use crate::exact::{frac, int, scalar_to_string, Matrix, Scalar};
use crate::orlik_solomon::{build_os, flag_coefficient, omega_wedge_matrix_for, OSCache};
use crate::sl2::{
    admissible_j_sets, b_complex, clebsch_gordan_mult, compositions, e_of, lambda_of, m_shifted,
    tensor_dual_f, BGGKind, BGGLabel, BGGWeightComplex,
};
use crate::{CheckReport, CochainComplex};

/// Errors from stratified-complex construction and verification.
#[derive(Debug, thiserror::Error)]
pub enum StrataError {
    #[error("need positive weights and k ≥ 1; got m={m:?}, k={k}")]
    BadInput { m: Vec<i64>, k: usize },
    #[error("strata {0:?} and {1:?} are not adjacent")]
    NotAdjacent(Vec<usize>, Vec<usize>),
    #[error("the open-stratum wedge image escapes the composition-form span")]
    OpenStratumEscape,
    #[error(
        "d² ≠ 0: strata {from_stratum:?} → {to_stratum:?} fail to cancel out of total degree {degree}"
    )]
    NotSquareZero {
        degree: i64,
        from_stratum: Vec<usize>,
        to_stratum: Vec<usize>,
    },
    #[error("basis labels disagree in total degree {0}: {1}")]
    LabelMismatch(i64, String),
    #[error("no diagonal sign character makes the label bijection a chain map: {0}")]
    NoSignCharacter(String),
    #[error(transparent)]
    Arrangement(#[from] crate::arrangement::ArrangementError),
    #[error(transparent)]
    Forms(#[from] crate::orlik_solomon::OSError),
    #[error(transparent)]
    Assembly(#[from] crate::exact::ExactError),
}

/// Which of the two form families on a stratum a label belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    /// Composition weight `e(𝐣)`, total degree `k + |𝐣|`.
    Top,
    /// Composition weight `e(𝐣) − 1`, total degree `k + |𝐣| − 1`.
    Subtop,
}

/// A depth-one stratum orbit, indexed by the set of blown-up marked points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumClass {
    /// Blown-up marked points, strictly increasing, 0-based.
    pub bold_j: Vec<usize>,
    /// Leftover composition weight `k − Σ_{j∈𝐣} (m_j + 1) ≥ 0`.
    pub e: usize,
    /// The shifted weight vector `m^𝐣`.
    pub m_shifted: Vec<i64>,
    /// Staircase sign exponent `Σ_{i<p} i·(m_{j_i} + 1)`.
    pub d_exponent: i64,
    /// Number of coordinates pinned by the blown-up blocks.
    pub span: usize,
}

impl StratumClass {
    fn build(m: &[i64], k: usize, bold_j: Vec<usize>) -> Self {
        let e = e_of(m, k, &bold_j);
        assert!(e >= 0, "stratum must have nonnegative leftover weight");
        let d_exponent = bold_j
            .iter()
            .take(bold_j.len().saturating_sub(1))
            .enumerate()
            .map(|(i, &j)| (i as i64 + 1) * (m[j] + 1))
            .sum();
        let span = bold_j.iter().map(|&j| m[j] as usize + 1).sum();
        StratumClass {
            m_shifted: m_shifted(m, &bold_j),
            e: e as usize,
            d_exponent,
            span,
            bold_j,
        }
    }

    /// Depth of the stratum.
    pub fn p(&self) -> usize {
        self.bold_j.len()
    }

    /// The consecutive coordinate blocks pinned at the blown-up points, in
    /// `bold_j` order; disjoint and covering `0..span`.
    pub fn blocks(&self, m: &[i64]) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for &j in &self.bold_j {
            let len = m[j] as usize + 1;
            out.push(start..start + len);
            start += len;
        }
        out
    }
}

/// All strata of the depth-one stratification for the given weights: every
/// subset of marked points whose blocks fit, ordered by depth then
/// lexicographically. The empty set is the open stratum.
pub fn stratum_classes(m: &[i64], k: usize) -> Vec<StratumClass> {
    admissible_j_sets(m, k)
        .into_iter()
        .map(|bold_j| StratumClass::build(m, k, bold_j))
        .collect()
}

/// Positions of one degree's labels, keyed by stratum, composition, and kind.
type LevelPositions<'a> = BTreeMap<(&'a [usize], &'a [usize], FormKind), usize>;

fn comps(weight: i64, parts: usize) -> Vec<Vec<usize>> {
    if weight < 0 {
        return Vec::new();
    }
    compositions(weight as usize, parts)
}

/// The wedge differential on a stratum, transported to composition labels:
/// the f-action matrix of the shifted weights, scaled by the global
/// per-stratum sign `(−1)^p`. Rows are indexed by top compositions, columns
/// by subtop ones, both in lexicographic order.
pub fn wedge_matrix(m: &[i64], s: &StratumClass) -> Matrix {
    let n = m.len();
    let tops = comps(s.e as i64, n);
    let subs = comps(s.e as i64 - 1, n);
    let row_of: BTreeMap<&Vec<usize>, usize> = tops
        .iter()
        .enumerate()
        .map(|(i, k_vec)| (k_vec, i))
        .collect();
    let sign = if s.p().is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    };
    let mut out = Matrix::zero(tops.len(), subs.len());
    for (c, k_vec) in subs.iter().enumerate() {
        for (target, coeff) in tensor_dual_f(&s.m_shifted, k_vec) {
            out.set(row_of[&target], c, coeff * &sign);
        }
    }
    out
}

fn adjacency_point(s: &StratumClass, s_tilde: &StratumClass) -> Option<usize> {
    if s_tilde.p() != s.p() + 1 {
        return None;
    }
    let mut extra = None;
    let mut inner = s.bold_j.iter().peekable();
    for &j in &s_tilde.bold_j {
        if inner.peek() == Some(&&j) {
            inner.next();
        } else if extra.is_none() {
            extra = Some(j);
        } else {
            return None;
        }
    }
    if inner.next().is_some() {
        return None;
    }
    extra
}

/// The residue from a stratum to an adjacent deeper one on the chosen form
/// family: a composition `K` maps to `K − (m_j̃ + 1)·1_j̃` when its entry at
/// the new point `j̃` is at least `m_j̃ + 1`, and to zero otherwise. The sign
/// is `(−1)^q` on top forms and `(−1)^{q+1}` on subtop forms, where `q`
/// counts the blown-up points before `j̃`.
pub fn residue_matrix(
    m: &[i64],
    s: &StratumClass,
    s_tilde: &StratumClass,
    kind: FormKind,
) -> Result<Matrix, StrataError> {
    let j_new = adjacency_point(s, s_tilde)
        .ok_or_else(|| StrataError::NotAdjacent(s.bold_j.clone(), s_tilde.bold_j.clone()))?;
    let n = m.len();
    let offset = match kind {
        FormKind::Top => 0i64,
        FormKind::Subtop => 1,
    };
    let source = comps(s.e as i64 - offset, n);
    let target = comps(s_tilde.e as i64 - offset, n);
    let row_of: BTreeMap<&Vec<usize>, usize> = target
        .iter()
        .enumerate()
        .map(|(i, k_vec)| (k_vec, i))
        .collect();
    let q = s.bold_j.iter().filter(|&&b| b < j_new).count();
    let parity = q + match kind {
        FormKind::Top => 0,
        FormKind::Subtop => 1,
    };
    let sign = if parity % 2 == 0 { int(1) } else { int(-1) };
    let drop = m[j_new] as usize + 1;
    let mut out = Matrix::zero(target.len(), source.len());
    for (c, k_vec) in source.iter().enumerate() {
        if k_vec[j_new] < drop {
            continue;
        }
        let mut shifted = k_vec.clone();
        shifted[j_new] -= drop;
        out.set(row_of[&shifted], c, sign.clone());
    }
    Ok(out)
}

/// A basis label of the total complex: a stratum, a composition, and the
/// form family, pinned to its total degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewFormIndex {
    /// Blown-up marked points of the carrying stratum.
    pub bold_j: Vec<usize>,
    /// The composition label `K`.
    pub k_vec: Vec<usize>,
    /// Which family the form belongs to.
    pub kind: FormKind,
    /// Total degree in the assembled complex.
    pub total_degree: i64,
}

impl SkewFormIndex {
    /// Rendering used for the labeled complex, unique within a degree.
    pub fn label(&self) -> String {
        let j_str: Vec<String> = self.bold_j.iter().map(usize::to_string).collect();
        let k_str: Vec<String> = self.k_vec.iter().map(usize::to_string).collect();
        format!(
            "{}[{}]K[{}]",
            match self.kind {
                FormKind::Top => "top",
                FormKind::Subtop => "sub",
            },
            j_str.join(","),
            k_str.join(",")
        )
    }
}

/// The assembled complex of skew forms over all strata, graded by total
/// degree from `k − 1` upward.
#[derive(Clone, Serialize, Deserialize)]
pub struct TotalSkewComplex {
    /// The highest weights at the marked points.
    pub m: Vec<i64>,
    /// The number of moving coordinates.
    pub k: usize,
    /// The validated complex.
    pub complex: CochainComplex,
    /// Structured labels per degree, aligned with the complex.
    pub labels: Vec<Vec<SkewFormIndex>>,
}

/// The arrangement underlying the open stratum: the discriminantal
/// arrangement of the weights at the default marked points `1..n`.
pub fn open_stratum_arrangement(
    m: &[i64],
    k: usize,
    kappa: &Scalar,
) -> Result<WeightedArrangement, StrataError> {
    if k == 0 || m.iter().any(|&mj| mj < 1) {
        return Err(StrataError::BadInput { m: m.to_vec(), k });
    }
    let m_usize: Vec<usize> = m.iter().map(|&mj| mj as usize).collect();
    let spec = DiscriminantalSpec::with_default_points(m_usize, k, kappa.clone())?;
    Ok(discriminantal(&spec))
}

fn open_stratum_wedge(
    m: &[i64],
    k: usize,
    kappa: &Scalar,
    cache: &OSCache,
) -> Result<Matrix, StrataError> {
    let arrangement = open_stratum_arrangement(m, k, kappa)?;
    let os = cache.get_or_build(&arrangement);
    let coefficients: Vec<Scalar> = arrangement
        .weight_numerators()
        .iter()
        .map(|numerator| numerator / kappa)
        .collect();
    let one_form = os.one_form(&coefficients);
    omega_wedge_matrix_for(&os, &one_form)?.ok_or(StrataError::OpenStratumEscape)
}

/// Builds the total complex. The open-stratum wedge block is recomputed
/// from the actual forms of the arrangement at the given κ; deeper strata
/// use the transported f-action matrices, residues the signed label shift.
/// The per-stratum sign carried by `wedge_matrix` is a basis normalization
/// and is not applied here; with the blocks as assembled, d² = 0 is
/// verified exactly and any violation is reported with the offending pair
/// of strata.
pub fn total_complex(
    m: &[i64],
    k: usize,
    kappa: &Scalar,
    cache: &OSCache,
) -> Result<TotalSkewComplex, StrataError> {
    let n = m.len();
    let open_wedge = open_stratum_wedge(m, k, kappa, cache)?;
    let strata = stratum_classes(m, k);
    let p_max = strata.iter().map(StratumClass::p).max().unwrap_or(0);
    let min_degree = k as i64 - 1;
    let degrees = p_max + 2;

    let mut labels: Vec<Vec<SkewFormIndex>> = vec![Vec::new(); degrees];
    for s in &strata {
        let p = s.p();
        for k_vec in comps(s.e as i64 - 1, n) {
            labels[p].push(SkewFormIndex {
                bold_j: s.bold_j.clone(),
                k_vec,
                kind: FormKind::Subtop,
                total_degree: min_degree + p as i64,
            });
        }
    }
    for s in &strata {
        let p = s.p();
        for k_vec in comps(s.e as i64, n) {
            labels[p + 1].push(SkewFormIndex {
                bold_j: s.bold_j.clone(),
                k_vec,
                kind: FormKind::Top,
                total_degree: min_degree + p as i64 + 1,
            });
        }
    }
    let position: Vec<LevelPositions> = labels
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, lab)| ((lab.bold_j.as_slice(), lab.k_vec.as_slice(), lab.kind), i))
                .collect()
        })
        .collect();

    let mut entries: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); degrees - 1];
    for s in &strata {
        let p = s.p();
        let subs = comps(s.e as i64 - 1, n);
        let tops = comps(s.e as i64, n);
        let wedge = if p == 0 {
            open_wedge.clone()
        } else {
            let f = wedge_matrix(m, s);
            if p % 2 == 1 {
                f.scale(&int(-1))
            } else {
                f
            }
        };
        for (r, c, v) in wedge.iter() {
            let row = position[p + 1][&(s.bold_j.as_slice(), tops[r].as_slice(), FormKind::Top)];
            let col = position[p][&(s.bold_j.as_slice(), subs[c].as_slice(), FormKind::Subtop)];
            entries[p].push((row, col, v.clone()));
        }
        for s_tilde in &strata {
            if adjacency_point(s, s_tilde).is_none() {
                continue;
            }
            for (kind, offset, level) in [(FormKind::Subtop, 1i64, p), (FormKind::Top, 0i64, p + 1)]
            {
                let source = comps(s.e as i64 - offset, n);
                let target = comps(s_tilde.e as i64 - offset, n);
                if source.is_empty() || target.is_empty() {
                    continue;
                }
                let res = residue_matrix(m, s, s_tilde, kind)?;
                for (r, c, v) in res.iter() {
                    let row = position[level + 1]
                        [&(s_tilde.bold_j.as_slice(), target[r].as_slice(), kind)];
                    let col = position[level][&(s.bold_j.as_slice(), source[c].as_slice(), kind)];
                    entries[level].push((row, col, v.clone()));
                }
            }
        }
    }

    let mut differentials: Vec<Matrix> = Vec::with_capacity(degrees - 1);
    for (i, level_entries) in entries.into_iter().enumerate() {
        let mut d = Matrix::zero(labels[i + 1].len(), labels[i].len());
        for (r, c, v) in level_entries {
            d.add_to(r, c, &v);
        }
        differentials.push(d);
    }

    for i in 0..differentials.len().saturating_sub(1) {
        let square = differentials[i + 1].mul(&differentials[i]);
        let hit = square.iter().next().map(|(r, c, _)| (r, c));
        if let Some((r, c)) = hit {
            return Err(StrataError::NotSquareZero {
                degree: min_degree + i as i64,
                from_stratum: labels[i][c].bold_j.clone(),
                to_stratum: labels[i + 2][r].bold_j.clone(),
            });
        }
    }

    let dims = labels.iter().map(Vec::len).collect();
    let label_strings = labels
        .iter()
        .map(|level| level.iter().map(SkewFormIndex::label).collect())
        .collect();
    let complex = CochainComplex::new(min_degree, dims, label_strings, differentials)?;
    Ok(TotalSkewComplex {
        m: m.to_vec(),
        k,
        complex,
        labels,
    })
}

/// Predicted nonzero cohomology of the total complex: the weight-space
/// multiplicity `dim W_{|m|−2k}` in degree `k` when that weight is
/// nonnegative, the multiplicity `dim W_{2k−2−|m|}` in degree `k − 1` when
/// it is below `−1`, and nothing at all at weight `−1`.
pub fn multiplicity_betti(m: &[i64], k: usize) -> BTreeMap<i64, usize> {
    let lambda = lambda_of(m, k);
    let mut out = BTreeMap::new();
    if lambda >= 0 {
        out.insert(k as i64, clebsch_gordan_mult(m, lambda));
    } else if lambda < -1 {
        out.insert(k as i64 - 1, clebsch_gordan_mult(m, -lambda - 2));
    }
    out.retain(|_, mult| *mult > 0);
    out
}

/// The diagonal sign character ε(𝐣, kind) solved from the chain-map
/// equations; trivial exactly when the label bijection is itself a chain
/// isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct SignCharacter {
    /// ε value per stratum and form family.
    pub values: BTreeMap<(Vec<usize>, FormKind), i64>,
}

impl SignCharacter {
    /// Whether every sign is +1.
    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|&s| s == 1)
    }
}

fn bgg_label_of(index: &SkewFormIndex) -> BGGLabel {
    BGGLabel {
        bold_j: index.bold_j.clone(),
        k_vec: index.k_vec.clone(),
        kind: match index.kind {
            FormKind::Subtop => BGGKind::FPart,
            FormKind::Top => BGGKind::Plain,
        },
    }
}

fn class_of(index: &SkewFormIndex) -> (Vec<usize>, FormKind) {
    (index.bold_j.clone(), index.kind)
}

/// Solves for the sign character making the label bijection from the total
/// complex to the weight complex a chain isomorphism. The character is
/// pinned to +1 on the open stratum and propagated through every nonzero
/// differential entry; the full matrix identity `γ∘d = d̃∘γ` is then
/// checked exactly in every degree.
pub fn gamma(total: &TotalSkewComplex, b: &BGGWeightComplex) -> Result<SignCharacter, StrataError> {
    if total.m != b.m || total.k != b.k {
        return Err(StrataError::NoSignCharacter(
            "the complexes belong to different weights".into(),
        ));
    }
    let shift = total.k as i64 - 1;
    if total.labels.len() != b.basis.len() {
        return Err(StrataError::LabelMismatch(
            shift,
            format!(
                "degree ranges differ: {} levels against {}",
                total.labels.len(),
                b.basis.len()
            ),
        ));
    }

    let b_position: Vec<BTreeMap<&BGGLabel, usize>> = b
        .basis
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, lab)| (lab, i)).collect())
        .collect();
    let mut to_b: Vec<Vec<usize>> = Vec::new();
    for (i, level) in total.labels.iter().enumerate() {
        if level.len() != b.basis[i].len() {
            return Err(StrataError::LabelMismatch(
                shift + i as i64,
                format!("{} labels against {}", level.len(), b.basis[i].len()),
            ));
        }
        let mut row = Vec::with_capacity(level.len());
        for index in level {
            let image = bgg_label_of(index);
            match b_position[i].get(&image) {
                Some(&pos) => row.push(pos),
                None => {
                    return Err(StrataError::LabelMismatch(
                        shift + i as i64,
                        format!("no weight-complex label matches {}", index.label()),
                    ))
                }
            }
        }
        to_b.push(row);
    }

    let mut classes: BTreeMap<(Vec<usize>, FormKind), usize> = BTreeMap::new();
    let mut class_list: Vec<(Vec<usize>, FormKind)> = Vec::new();
    for level in &total.labels {
        for index in level {
            let key = class_of(index);
            if !classes.contains_key(&key) {
                classes.insert(key.clone(), class_list.len());
                class_list.push(key);
            }
        }
    }

    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); class_list.len()];
    for i in 0..total.labels.len() - 1 {
        let d_total = total.complex.differential(shift + i as i64);
        let d_b = b.complex.differential(i as i64);
        for (r, c, v) in d_total.iter() {
            let w = d_b.get(to_b[i + 1][r], to_b[i][c]);
            let ratio = if &w == v {
                1
            } else if w == -v.clone() {
                -1
            } else {
                return Err(StrataError::NoSignCharacter(format!(
                    "entry {} → {} carries {} against {}",
                    total.labels[i][c].label(),
                    total.labels[i + 1][r].label(),
                    scalar_to_string(v),
                    scalar_to_string(&w)
                )));
            };
            let source = classes[&class_of(&total.labels[i][c])];
            let target = classes[&class_of(&total.labels[i + 1][r])];
            edges[source].push((target, ratio));
            edges[target].push((source, ratio));
        }
        for (r, c, _) in d_b.iter() {
            let back_r = to_b[i + 1].iter().position(|&p| p == r).unwrap();
            let back_c = to_b[i].iter().position(|&p| p == c).unwrap();
            if d_total.get(back_r, back_c).is_zero() {
                return Err(StrataError::NoSignCharacter(format!(
                    "weight complex carries {} → {} with no counterpart",
                    b.complex.labels(i as i64)[c],
                    b.complex.labels(i as i64 + 1)[r]
                )));
            }
        }
    }

    let mut epsilon: Vec<Option<i64>> = vec![None; class_list.len()];
    let mut queue: Vec<usize> = Vec::new();
    for (key, &id) in &classes {
        if key.0.is_empty() {
            epsilon[id] = Some(1);
            queue.push(id);
        }
    }
    while let Some(id) = queue.pop() {
        let value = epsilon[id].unwrap();
        for &(other, ratio) in &edges[id] {
            let forced = value * ratio;
            match epsilon[other] {
                None => {
                    epsilon[other] = Some(forced);
                    queue.push(other);
                }
                Some(existing) if existing != forced => {
                    return Err(StrataError::NoSignCharacter(format!(
                        "conflicting signs forced on stratum {:?}",
                        class_list[other].0
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let epsilon: Vec<i64> = epsilon.into_iter().map(|v| v.unwrap_or(1)).collect();

    for i in 0..total.labels.len() - 1 {
        let d_total = total.complex.differential(shift + i as i64);
        let d_b = b.complex.differential(i as i64);
        for (c, index) in total.labels[i].iter().enumerate() {
            let sign_c = epsilon[classes[&class_of(index)]];
            for (r, target) in total.labels[i + 1].iter().enumerate() {
                let sign_r = epsilon[classes[&class_of(target)]];
                let mut lhs = d_total.get(r, c);
                if sign_r < 0 {
                    lhs = -lhs;
                }
                let mut rhs = d_b.get(to_b[i + 1][r], to_b[i][c]);
                if sign_c < 0 {
                    rhs = -rhs;
                }
                if lhs != rhs {
                    return Err(StrataError::NoSignCharacter(format!(
                        "chain map fails at {} → {}",
                        index.label(),
                        target.label()
                    )));
                }
            }
        }
    }

    Ok(SignCharacter {
        values: class_list
            .into_iter()
            .zip(&epsilon)
            .map(|(key, &s)| (key, s))
            .collect(),
    })
}

/// Verifies the chain isomorphism between the total complex and the weight
/// complex: matching label counts, a solvable sign character, the exact
/// chain-map identity, and equal Betti tables matching the weight-space
/// prediction.
pub fn verify_iso(m: &[i64], k: usize, kappa: &Scalar, cache: &OSCache) -> CheckReport {
    let mut report = CheckReport::new(format!("iso m={m:?} k={k}"));
    let total = match total_complex(m, k, kappa, cache) {
        Ok(t) => t,
        Err(err) => {
            report.claim(false, format!("total complex: {err}"));
            return report;
        }
    };
    report.claim(true, "total complex assembled with d² = 0");
    let b = b_complex(m, k);
    let total_dims: Vec<usize> = total.labels.iter().map(Vec::len).collect();
    let b_dims: Vec<usize> = b.basis.iter().map(Vec::len).collect();
    report.claim(
        total_dims == b_dims,
        format!("label counts per degree {total_dims:?} against {b_dims:?}"),
    );
    match gamma(&total, &b) {
        Ok(character) => {
            report.claim(true, "sign character solved; chain map exact");
            report.claim(character.is_trivial(), "sign character is identically +1");
        }
        Err(err) => report.claim(false, format!("sign character: {err}")),
    }
    let total_betti = total.complex.betti();
    let b_betti = b.complex.betti();
    let shift = k as i64 - 1;
    let shifted_equal = total
        .complex
        .degrees()
        .all(|l| total_betti.betti(l) == b_betti.betti(l - shift));
    report.claim(
        shifted_equal,
        format!(
            "betti {:?} matches the weight complex {:?}",
            total_betti.betti_vector(),
            b_betti.betti_vector()
        ),
    );
    let predicted = multiplicity_betti(m, k);
    let prediction_holds = total
        .complex
        .degrees()
        .all(|l| total_betti.betti(l) == predicted.get(&l).copied().unwrap_or(0));
    report.claim(
        prediction_holds,
        format!("betti matches the weight-space prediction {predicted:?}"),
    );
    report
}

/// Verifies the cohomology dimensions of the total complex against the
/// weight-space prediction alone, without the chain-map comparison.
pub fn verify_dims(m: &[i64], k: usize, kappa: &Scalar, cache: &OSCache) -> CheckReport {
    let mut report = CheckReport::new(format!("dims m={m:?} k={k}"));
    let total = match total_complex(m, k, kappa, cache) {
        Ok(t) => t,
        Err(err) => {
            report.claim(false, format!("total complex: {err}"));
            return report;
        }
    };
    let betti = total.complex.betti();
    let predicted = multiplicity_betti(m, k);
    let lambda = lambda_of(m, k);
    for l in total.complex.degrees() {
        let expected = predicted.get(&l).copied().unwrap_or(0);
        report.claim(
            betti.betti(l) == expected,
            format!(
                "degree {l} (weight {lambda}): betti {} against predicted {expected}",
                betti.betti(l)
            ),
        );
    }
    report
}

fn stack_rows(blocks: &[Matrix], cols: usize) -> Matrix {
    let rows = blocks.iter().map(Matrix::rows).sum();
    let mut out = Matrix::zero(rows, cols);
    let mut offset = 0;
    for block in blocks {
        assert_eq!(block.cols(), cols, "constraint blocks must share columns");
        for (r, c, v) in block.iter() {
            out.set(offset + r, c, v.clone());
        }
        offset += block.rows();
    }
    out
}

/// Verifies that in the top two degrees of the open stratum the span of the
/// rescaled flag forms equals the kernel of the residues to every depth-one
/// stratum, by exact double-inclusion of column spans in the composition
/// basis.
pub fn verify_flag_kernel(m: &[i64], k: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("flag kernel m={m:?} k={k}"));
    if k == 0 || m.iter().any(|&mj| mj < 1) {
        report.claim(false, "need positive weights and k ≥ 1");
        return report;
    }
    let n = m.len();
    let m_usize: Vec<usize> = m.iter().map(|&mj| mj as usize).collect();
    let strata = stratum_classes(m, k);
    let open = strata[0].clone();
    let depth_one: Vec<&StratumClass> = strata.iter().filter(|s| s.p() == 1).collect();
    for (kind, degree) in [(FormKind::Subtop, k - 1), (FormKind::Top, k)] {
        let source = comps(degree as i64, n);
        let blocks: Vec<Matrix> = depth_one
            .iter()
            .filter_map(|s| {
                let res = residue_matrix(m, &open, s, kind).expect("adjacent by construction");
                (res.rows() > 0).then_some(res)
            })
            .collect();
        let kernel = if blocks.is_empty() {
            Matrix::identity(source.len())
        } else {
            stack_rows(&blocks, source.len()).kernel_basis()
        };
        let flag_cols: Vec<Vec<Scalar>> = source
            .iter()
            .enumerate()
            .filter_map(|(idx, k_vec)| {
                let beta = flag_coefficient(&m_usize, k_vec);
                if beta.is_zero() {
                    return None;
                }
                let mut col = vec![Scalar::zero(); source.len()];
                col[idx] = beta;
                Some(col)
            })
            .collect();
        let flag = Matrix::from_cols(source.len(), flag_cols);
        report.claim(
            kernel.rank() == flag.rank(),
            format!(
                "degree {degree}: kernel rank {} against flag rank {}",
                kernel.rank(),
                flag.rank()
            ),
        );
        report.claim(
            kernel.same_column_span(&flag),
            format!(
                "degree {degree}: flag span equals the residue kernel ({} forms)",
                flag.cols()
            ),
        );
    }
    report
}

fn condition_a_samples(kappa: &Scalar) -> Vec<Scalar> {
    let mut samples = vec![
        kappa.clone(),
        kappa + frac(31, 97),
        kappa * frac(13, 11) + frac(5, 101),
    ];
    for s in &mut samples {
        if s.is_zero() {
            *s += int(1);
        }
    }
    samples
}

/// Checks the local vanishing condition at a blown-up point of multiplicity
/// `m_j`: the twisted cohomology of the local arrangement (one coordinate
/// hyperplane per variable with numerator `−m_j`, the shifted copy and all
/// diagonals with numerator 2) is concentrated in the top degree, stably
/// across sampled κ.
pub fn condition_a_check(m_j: usize, kappa: &Scalar) -> CheckReport {
    let mut report = CheckReport::new(format!("condition A m_j={m_j}"));
    if m_j == 0 {
        report.claim(false, "multiplicity must be positive");
        return report;
    }
    let mut tables: Vec<Vec<usize>> = Vec::new();
    for sample in condition_a_samples(kappa) {
        let arrangement = match discriminantal_custom(
            m_j,
            &[int(0), int(1)],
            &[int(-(m_j as i64)), int(2)],
            &sample,
        ) {
            Ok(a) => a,
            Err(err) => {
                report.claim(
                    false,
                    format!("arrangement at κ={}: {err}", scalar_to_string(&sample)),
                );
                return report;
            }
        };
        let betti = build_os(arrangement).aomoto().betti().betti_vector();
        report.claim(
            true,
            format!("κ = {}: betti {:?}", scalar_to_string(&sample), betti),
        );
        tables.push(betti);
    }
    report.claim(
        tables.windows(2).all(|w| w[0] == w[1]),
        "betti tables agree across sampled κ",
    );
    let concentrated = tables[0]
        .iter()
        .enumerate()
        .all(|(degree, &b)| degree == m_j || b == 0);
    report.claim(
        concentrated,
        format!("cohomology vanishes away from degree {m_j}"),
    );
    report
}

/// The degenerate control for the vanishing condition: with every weight
/// set to zero the twisted complex collapses to the untwisted one, whose
/// cohomology is spread across low degrees, so the concentration check must
/// fail. Passes exactly when it does.
pub fn condition_a_zero_weight_control(m_j: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("condition A zero-weight control m_j={m_j}"));
    if m_j == 0 {
        report.claim(false, "multiplicity must be positive");
        return report;
    }
    let shaped = discriminantal_custom(m_j, &[int(0), int(1)], &[int(0), int(0)], &int(1))
        .expect("two distinct points");
    let arrangement = WeightedArrangement::new(
        shaped.ambient_dim(),
        shaped.hyperplanes().to_vec(),
        vec![int(0); shaped.len()],
        int(1),
    )
    .expect("same shape as the weighted arrangement");
    let betti = build_os(arrangement).aomoto().betti().betti_vector();
    let concentrated = betti
        .iter()
        .enumerate()
        .all(|(degree, &b)| degree == m_j || b == 0);
    report.claim(
        !concentrated,
        format!("zero weights leave betti {betti:?}, spread below degree {m_j}"),
    );
    report
}

/// Recomputes the total complex at independently sampled κ and checks the
/// Betti tables coincide; fewer than three samples are rejected.
pub fn genericity_scan(m: &[i64], k: usize, kappas: &[Scalar], cache: &OSCache) -> CheckReport {
    let mut report = CheckReport::new(format!("genericity m={m:?} k={k}"));
    if kappas.len() < 3 {
        report.claim(
            false,
            format!("{} κ samples are too few; need at least 3", kappas.len()),
        );
        return report;
    }
    let mut distinct = kappas.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != kappas.len() || kappas.iter().any(Zero::is_zero) {
        report.claim(false, "κ samples must be distinct and nonzero");
        return report;
    }
    let mut tables: Vec<Vec<usize>> = Vec::new();
    for kappa in kappas {
        match total_complex(m, k, kappa, cache) {
            Ok(total) => {
                let betti = total.complex.betti().betti_vector();
                report.claim(
                    true,
                    format!("κ = {}: betti {:?}", scalar_to_string(kappa), betti),
                );
                tables.push(betti);
            }
            Err(err) => {
                report.claim(false, format!("κ = {}: {err}", scalar_to_string(kappa)));
                return report;
            }
        }
    }
    report.claim(
        tables.windows(2).all(|w| w[0] == w[1]),
        "betti tables agree across sampled κ",
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_kappa() -> Scalar {
        frac(9973, 83)
    }

    #[test]
    fn stratum_classes_examples() {
        let classes = stratum_classes(&[1, 1], 2);
        let sets: Vec<Vec<usize>> = classes.iter().map(|s| s.bold_j.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![1]]);
        assert_eq!(classes[0].e, 2);
        assert_eq!(classes[1].e, 0);
        assert_eq!(classes[1].m_shifted, vec![-3, 1]);
        assert_eq!(classes[1].span, 2);

        let sets: Vec<Vec<usize>> = stratum_classes(&[1, 2], 2)
            .iter()
            .map(|s| s.bold_j.clone())
            .collect();
        assert_eq!(sets, vec![vec![], vec![0]]);

        let sets: Vec<Vec<usize>> = stratum_classes(&[3], 2)
            .iter()
            .map(|s| s.bold_j.clone())
            .collect();
        assert_eq!(sets, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn stratum_blocks_cover_the_span() {
        let m = [1i64, 2, 1];
        for s in stratum_classes(&m, 4) {
            let blocks = s.blocks(&m);
            let mut covered = 0;
            for (range, &j) in blocks.iter().zip(&s.bold_j) {
                assert_eq!(range.start, covered);
                assert_eq!(range.len(), m[j] as usize + 1);
                covered = range.end;
            }
            assert_eq!(covered, s.span);
            assert_eq!(
                s.d_exponent,
                s.bold_j
                    .iter()
                    .take(s.p().saturating_sub(1))
                    .enumerate()
                    .map(|(i, &j)| (i as i64 + 1) * (m[j] + 1))
                    .sum::<i64>()
            );
        }
    }

    #[test]
    fn wedge_matrix_open_stratum_is_the_f_matrix() {
        let classes = stratum_classes(&[1, 1], 1);
        let w = wedge_matrix(&[1, 1], &classes[0]);
        assert_eq!((w.rows(), w.cols()), (2, 1));
        assert_eq!(w.get(0, 0), int(1));
        assert_eq!(w.get(1, 0), int(1));
    }

    #[test]
    fn wedge_matrix_empty_when_no_subtop_basis() {
        let classes = stratum_classes(&[1, 1], 2);
        let w = wedge_matrix(&[1, 1], &classes[1]);
        assert_eq!((w.rows(), w.cols()), (1, 0));
    }

    #[test]
    fn wedge_matrix_depth_one_carries_the_stratum_sign() {
        let classes = stratum_classes(&[1, 1], 3);
        let s = classes.iter().find(|s| s.bold_j == vec![0]).unwrap();
        assert_eq!(s.e, 1);
        let w = wedge_matrix(&[1, 1], s);
        assert_eq!((w.rows(), w.cols()), (2, 1));
        assert_eq!(w.get(0, 0), int(-1));
        assert_eq!(w.get(1, 0), int(3));
    }

    #[test]
    fn depth_one_wedge_matches_honest_forms_of_the_local_arrangement() {
        for k in [3usize, 4] {
            let m = [1i64, 1];
            let classes = stratum_classes(&m, k);
            let s = classes.iter().find(|s| s.bold_j == vec![0]).unwrap();
            let numerators: Vec<Scalar> = s.m_shifted.iter().map(|&v| int(-v)).collect();
            let arrangement =
                discriminantal_custom(s.e, &[int(1), int(2)], &numerators, &generic_kappa())
                    .unwrap();
            let os = build_os(arrangement);
            let honest = crate::orlik_solomon::omega_wedge_matrix(&os)
                .unwrap()
                .expect("image stays in the top span");
            let transported = wedge_matrix(&m, s);
            let sign = if s.p() % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(honest, transported.scale(&sign));
        }
    }

    #[test]
    fn residue_shifts_labels_with_the_threshold() {
        let m = [1i64, 1];
        let classes = stratum_classes(&m, 2);
        let res = residue_matrix(&m, &classes[0], &classes[1], FormKind::Top).unwrap();
        assert_eq!((res.rows(), res.cols()), (1, 3));
        assert_eq!(res.get(0, 0), int(0));
        assert_eq!(res.get(0, 1), int(0));
        assert_eq!(res.get(0, 2), int(1));
    }

    #[test]
    fn residue_rejects_non_adjacent_strata() {
        let m = [1i64, 1];
        let classes = stratum_classes(&m, 4);
        let open = &classes[0];
        let deep = classes.iter().find(|s| s.p() == 2).unwrap();
        assert!(matches!(
            residue_matrix(&m, open, deep, FormKind::Top),
            Err(StrataError::NotAdjacent(_, _))
        ));
        let single = classes.iter().find(|s| s.bold_j == vec![0]).unwrap();
        assert!(residue_matrix(&m, single, single, FormKind::Top).is_err());
    }

    #[test]
    fn residue_squares_cancel_with_the_depth_signs() {
        let m = [1i64, 1];
        let classes = stratum_classes(&m, 4);
        let open = &classes[0];
        let first = classes.iter().find(|s| s.bold_j == vec![0]).unwrap();
        let second = classes.iter().find(|s| s.bold_j == vec![1]).unwrap();
        let deep = classes.iter().find(|s| s.bold_j == vec![0, 1]).unwrap();
        for kind in [FormKind::Top, FormKind::Subtop] {
            let via_first = residue_matrix(&m, first, deep, kind)
                .unwrap()
                .mul(&residue_matrix(&m, open, first, kind).unwrap());
            let via_second = residue_matrix(&m, second, deep, kind)
                .unwrap()
                .mul(&residue_matrix(&m, open, second, kind).unwrap());
            assert!(via_first.add(&via_second).is_zero());
        }
    }

    #[test]
    fn total_complex_at_weight_zero_concentrates_in_the_top_degree() {
        let cache = OSCache::default();
        let total = total_complex(&[1, 1], 1, &generic_kappa(), &cache).unwrap();
        assert_eq!(total.complex.min_degree(), 0);
        let dims: Vec<usize> = total.labels.iter().map(Vec::len).collect();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(total.complex.betti().betti_vector(), vec![0, 1]);
    }

    #[test]
    fn total_complex_below_minus_one_concentrates_in_the_subtop_degree() {
        let cache = OSCache::default();
        let total = total_complex(&[1, 1], 2, &generic_kappa(), &cache).unwrap();
        let dims: Vec<usize> = total.labels.iter().map(Vec::len).collect();
        assert_eq!(dims, vec![2, 3, 2]);
        assert_eq!(total.complex.min_degree(), 1);
        assert_eq!(total.complex.betti().betti_vector(), vec![1, 0, 0]);
    }

    #[test]
    fn total_complex_at_weight_minus_one_is_exact() {
        let cache = OSCache::default();
        let total = total_complex(&[1], 1, &generic_kappa(), &cache).unwrap();
        assert_eq!(total.complex.betti().betti_vector(), vec![0, 0]);
    }

    #[test]
    fn multiplicity_betti_covers_all_three_regimes() {
        assert_eq!(
            multiplicity_betti(&[2, 1], 1),
            BTreeMap::from([(1i64, 1usize)])
        );
        assert!(multiplicity_betti(&[1], 1).is_empty());
        assert_eq!(
            multiplicity_betti(&[1, 1], 2),
            BTreeMap::from([(1i64, 1usize)])
        );
    }

    #[test]
    fn verify_iso_passes_on_a_small_grid() {
        let cache = OSCache::default();
        let kappa = generic_kappa();
        for (m, k_max) in [
            (vec![1i64], 2usize),
            (vec![2], 2),
            (vec![1, 1], 3),
            (vec![1, 2], 3),
            (vec![2, 2], 2),
            (vec![1, 1, 1], 2),
        ] {
            for k in 1..=k_max {
                let report = verify_iso(&m, k, &kappa, &cache);
                assert!(report.pass, "m={m:?} k={k}: {:?}", report.details);
            }
        }
    }

    #[test]
    fn gamma_solves_a_twisted_sign_and_rejects_a_scaled_one() {
        let cache = OSCache::default();
        let m = [1i64, 1];
        let k = 2;
        let total = total_complex(&m, k, &generic_kappa(), &cache).unwrap();
        let b = b_complex(&m, k);

        let flip_class = (vec![0usize], FormKind::Top);
        let mut twisted_diffs = Vec::new();
        let shift = k as i64 - 1;
        for i in 0..total.labels.len() - 1 {
            let mut d = total.complex.differential(shift + i as i64);
            for (c, index) in total.labels[i].iter().enumerate() {
                if class_of(index) == flip_class {
                    for r in 0..d.rows() {
                        let v = d.get(r, c);
                        d.set(r, c, -v);
                    }
                }
            }
            for (r, target) in total.labels[i + 1].iter().enumerate() {
                if class_of(target) == flip_class {
                    for c in 0..d.cols() {
                        let v = d.get(r, c);
                        d.set(r, c, -v);
                    }
                }
            }
            twisted_diffs.push(d);
        }
        let dims: Vec<usize> = total.labels.iter().map(Vec::len).collect();
        let label_strings: Vec<Vec<String>> = total
            .labels
            .iter()
            .map(|level| level.iter().map(SkewFormIndex::label).collect())
            .collect();
        let twisted = TotalSkewComplex {
            m: total.m.clone(),
            k,
            complex: CochainComplex::new(shift, dims.clone(), label_strings.clone(), twisted_diffs)
                .unwrap(),
            labels: total.labels.clone(),
        };
        let character = gamma(&twisted, &b).unwrap();
        assert!(!character.is_trivial());
        assert_eq!(character.values[&flip_class], -1);

        let scaled_diffs: Vec<Matrix> = (0..total.labels.len() - 1)
            .map(|i| total.complex.differential(shift + i as i64).scale(&int(2)))
            .collect();
        let scaled = TotalSkewComplex {
            m: total.m.clone(),
            k,
            complex: CochainComplex::new(shift, dims, label_strings, scaled_diffs).unwrap(),
            labels: total.labels.clone(),
        };
        assert!(matches!(
            gamma(&scaled, &b),
            Err(StrataError::NoSignCharacter(_))
        ));
    }

    #[test]
    fn flag_span_is_the_residue_kernel() {
        for (m, k) in [
            (vec![1i64, 1], 2usize),
            (vec![2], 1),
            (vec![1, 2], 2),
            (vec![1, 1, 1], 2),
            (vec![1, 1], 3),
        ] {
            let report = verify_flag_kernel(&m, k);
            assert!(report.pass, "m={m:?} k={k}: {:?}", report.details);
        }
    }

    #[test]
    fn condition_a_holds_for_small_multiplicities() {
        let kappa = generic_kappa();
        for m_j in 1..=2 {
            let report = condition_a_check(m_j, &kappa);
            assert!(report.pass, "m_j={m_j}: {:?}", report.details);
        }
    }

    #[test]
    fn condition_a_zero_weights_fail_as_expected() {
        for m_j in 1..=2 {
            let report = condition_a_zero_weight_control(m_j);
            assert!(report.pass, "m_j={m_j}: {:?}", report.details);
        }
    }

    #[test]
    fn genericity_scan_needs_three_distinct_samples() {
        let cache = OSCache::default();
        let m = [1i64, 1];
        let short = genericity_scan(&m, 2, &[generic_kappa()], &cache);
        assert!(!short.pass);
        let samples = [generic_kappa(), frac(3, 2), frac(-7, 5)];
        let report = genericity_scan(&m, 2, &samples, &cache);
        assert!(report.pass, "{:?}", report.details);
    }
}
