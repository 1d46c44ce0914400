//! Verma modules over sl2, their contragradient duals, tensor products, and
//! the two-step weight complexes resolving tensor products of simples.
//!
//! Modules are never materialized globally: every operation works on the
//! finitely many weight levels a fixed computation touches. Level vectors
//! `J = (j_1, …, j_n)` index monomial bases `f^J v` and their dual bases
//! `φ^J`; highest weights may be negative (the shifted weights `−m−2` appear
//! throughout).

use std::collections::BTreeMap;

use num::Zero;

use crate::exact::{int, Matrix, Scalar};

/// Integer highest-weight vector `(m_1, …, m_n)`; entries may be negative
/// for shifted modules.
pub type WeightVector = Vec<i64>;

/// A Chevalley generator of sl2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    H,
}

/// Errors from complex construction over invalid weights.
#[derive(Debug, thiserror::Error)]
pub enum Sl2Error {
    #[error("weight {lambda} is not |m|−2k for any k ≥ 0 (|m| = {total})")]
    BadWeight { lambda: i64, total: i64 },
}

/// All vectors in `Z_{≥0}^parts` summing to `total`, in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Action of a generator on the Verma monomial `f^j v_m`: returns the
/// resulting `(level, coefficient)` terms, zero coefficients dropped.
///
/// `f` raises the level with coefficient 1, `h` is diagonal with `m − 2j`,
/// and `e` lowers with `j(m − j + 1)`.
pub fn verma_action(m: i64, gen: Generator, j: usize) -> Vec<(usize, Scalar)> {
    let terms = match gen {
        Generator::F => vec![(j + 1, int(1))],
        Generator::H => vec![(j, int(m - 2 * j as i64))],
        Generator::E => {
            if j == 0 {
                vec![]
            } else {
                vec![(j - 1, int(j as i64) * int(m - j as i64 + 1))]
            }
        }
    };
    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Action of a generator on the dual basis vector `φ^j_m` of the
/// contragradient dual: `f` raises with `(j+1)(m−j)`, `h` is diagonal with
/// `m − 2j`, `e` lowers with coefficient 1.
pub fn dual_action(m: i64, gen: Generator, j: usize) -> Vec<(usize, Scalar)> {
    let terms = match gen {
        Generator::F => vec![(j + 1, int(j as i64 + 1) * int(m - j as i64))],
        Generator::H => vec![(j, int(m - 2 * j as i64))],
        Generator::E => {
            if j == 0 {
                vec![]
            } else {
                vec![(j - 1, int(1))]
            }
        }
    };
    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Action of `f` on the dual tensor basis vector `φ^J` of `⊗_a M*_{m_a}`:
/// `f·φ^J = Σ_a (j_a+1)(m_a−j_a) φ^{J+1_a}`, zero terms dropped.
pub fn tensor_dual_f(m: &[i64], j_vec: &[usize]) -> Vec<(Vec<usize>, Scalar)> {
    assert_eq!(m.len(), j_vec.len(), "weight and level vectors must match");
    let mut out = Vec::new();
    for a in 0..m.len() {
        let c = int(j_vec[a] as i64 + 1) * int(m[a] - j_vec[a] as i64);
        if c.is_zero() {
            continue;
        }
        let mut target = j_vec.to_vec();
        target[a] += 1;
        out.push((target, c));
    }
    out
}

/// The Shapovalov norm `S(f^j v_m, f^j v_m)` as a 1×1 matrix, computed by
/// the recursion `S_j = j(m−j+1) S_{j−1}` from `S(fx, y) = S(x, ey)`.
pub fn shapovalov_gram(m: i64, level: usize) -> Matrix {
    let mut s = int(1);
    for j in 1..=level {
        s *= int(j as i64) * int(m - j as i64 + 1);
    }
    Matrix::from_rows(vec![vec![s]])
}

/// The epimorphism `ι : M*_m → M*_{−m−2}` dual to the submodule embedding
/// `f^j v_{−m−2} ↦ f^{j+m+1} v_m`: sends `φ^j_m` to `φ^{j−m−1}_{−m−2}` when
/// `j ≥ m+1`, and to zero otherwise. Requires `m ≥ 0`.
pub fn iota(m: i64, j: usize) -> Option<(usize, Scalar)> {
    assert!(m >= 0, "iota needs a dominant weight");
    let shift = (m + 1) as usize;
    (j >= shift).then(|| (j - shift, int(1)))
}

/// `|m| − 2k`.
pub fn lambda_of(m: &[i64], k: usize) -> i64 {
    m.iter().sum::<i64>() - 2 * k as i64
}

/// `e(𝐣) = k − Σ_{a∈𝐣} (m_a + 1)`, possibly negative.
pub fn e_of(m: &[i64], k: usize, bold_j: &[usize]) -> i64 {
    k as i64 - bold_j.iter().map(|&a| m[a] + 1).sum::<i64>()
}

/// The shifted weight vector `m^𝐣`: entry `a` becomes `−m_a − 2` for
/// `a ∈ 𝐣` and stays `m_a` otherwise.
pub fn m_shifted(m: &[i64], bold_j: &[usize]) -> Vec<i64> {
    let mut out = m.to_vec();
    for &a in bold_j {
        out[a] = -m[a] - 2;
    }
    out
}

/// All subsets `𝐣 ⊆ {0..n−1}` with `e(𝐣) ≥ 0`, ordered by size then
/// lexicographically. Every member automatically satisfies `m_a ≤ k−1`.
pub fn admissible_j_sets(m: &[i64], k: usize) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((current, next)) = stack.pop() {
        out.push(current.clone());
        for a in next..n {
            let mut bigger = current.clone();
            bigger.push(a);
            if e_of(m, k, &bigger) >= 0 {
                stack.push((bigger, a + 1));
            }
        }
    }
    out.sort_by_key(|j| (j.len(), j.clone()));
    out
}

fn koszul_sign(bold_j: &[usize], a: usize) -> Scalar {
    if bold_j.iter().filter(|&&b| b < a).count() % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Renders a basis label `(𝐣, K)` with an optional `f⊗` marker.
pub fn phi_label(bold_j: &[usize], k_vec: &[usize], f_part: bool) -> String {
    let k_str: Vec<String> = k_vec.iter().map(usize::to_string).collect();
    let j_str: Vec<String> = bold_j.iter().map(usize::to_string).collect();
    format!(
        "{}phi[{}]@[{}]",
        if f_part { "f*" } else { "" },
        k_str.join(","),
        j_str.join(",")
    )
}

/// The weight-λ component of the tensor complex `(A^•_m, ι)`:
/// degree `i` is spanned by `φ^K_{m^𝐣}` over `|𝐣| = i` and `|K| = e(𝐣)`,
/// and the differential applies `ι` in each unshifted slot with the Koszul
/// sign of the preceding shifted slots. Exact above degree zero, with
/// `H^0 = (⊗_a L_{m_a})[λ]`.
pub fn bgg_tensor_complex(m: &[i64], lambda: i64) -> Result<crate::CochainComplex, Sl2Error> {
    let total: i64 = m.iter().sum();
    assert!(m.iter().all(|&ma| ma >= 1), "weights must be positive");
    if (total - lambda) % 2 != 0 || total < lambda {
        return Err(Sl2Error::BadWeight { lambda, total });
    }
    let k = ((total - lambda) / 2) as usize;
    let n = m.len();
    let j_sets = admissible_j_sets(m, k);
    let p_max = j_sets.iter().map(Vec::len).max().unwrap_or(0);

    let mut basis: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![Vec::new(); p_max + 1];
    for bold_j in &j_sets {
        let e = e_of(m, k, bold_j) as usize;
        for k_vec in compositions(e, n) {
            basis[bold_j.len()].push((bold_j.clone(), k_vec));
        }
    }
    type LevelIndex = BTreeMap<(Vec<usize>, Vec<usize>), usize>;
    let index: Vec<LevelIndex> = basis
        .iter()
        .map(|level| {
            level
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, key)| (key, i))
                .collect()
        })
        .collect();

    let mut diffs = Vec::new();
    for p in 0..p_max {
        let mut d = Matrix::zero(basis[p + 1].len(), basis[p].len());
        for (col, (bold_j, k_vec)) in basis[p].iter().enumerate() {
            for a in 0..n {
                if bold_j.contains(&a) {
                    continue;
                }
                let Some((lowered, c)) = iota(m[a], k_vec[a]) else {
                    continue;
                };
                let mut target_j = bold_j.clone();
                target_j.push(a);
                target_j.sort_unstable();
                let mut target_k = k_vec.clone();
                target_k[a] = lowered;
                let row = index[p + 1][&(target_j, target_k)];
                d.add_to(row, col, &(koszul_sign(bold_j, a) * c));
            }
        }
        diffs.push(d);
    }

    let dims = basis.iter().map(Vec::len).collect();
    let labels = basis
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|(bold_j, k_vec)| phi_label(bold_j, k_vec, false))
                .collect()
        })
        .collect();
    Ok(crate::CochainComplex::new(0, dims, labels, diffs).expect("iota complex squares to zero"))
}

/// Which summand of the two-step weight complex a basis label lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BGGKind {
    /// `f ⊗ φ^K_{m^𝐣}` in the `n_− ⊗ A^i` summand.
    FPart,
    /// `φ^K_{m^𝐣}` in the `A^{i−1}` summand.
    Plain,
}

/// A basis label of the two-step weight complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BGGLabel {
    /// The set of shifted slots, increasing.
    pub bold_j: Vec<usize>,
    /// The level vector `K`.
    pub k_vec: Vec<usize>,
    /// Which summand the label belongs to.
    pub kind: BGGKind,
}

/// The weight component `B^•_m[|m|−2k]` of the two-step complex
/// `B^i = (n_− ⊗ A^i) ⊕ A^{i−1}` with differential
/// `f⊗x + y ↦ fx − f⊗ιx + ιy`, together with its structured basis labels.
#[derive(Clone, Debug)]
pub struct BGGWeightComplex {
    /// The highest weights.
    pub m: Vec<i64>,
    /// The level fixing the weight `|m| − 2k`.
    pub k: usize,
    /// The validated complex (`d̃² = 0` checked at construction).
    pub complex: crate::CochainComplex,
    /// Structured labels per degree, f-parts before plain parts.
    pub basis: Vec<Vec<BGGLabel>>,
}

/// Builds `B^•_m[|m|−2k]`: degree `i` holds the f-parts `f⊗φ^K_{m^𝐣}` with
/// `|𝐣| = i, |K| = e(𝐣)−1` followed by the plain parts `φ^K_{m^𝐣}` with
/// `|𝐣| = i−1, |K| = e(𝐣)`.
pub fn b_complex(m: &[i64], k: usize) -> BGGWeightComplex {
    assert!(m.iter().all(|&ma| ma >= 1), "weights must be positive");
    let n = m.len();
    let j_sets = admissible_j_sets(m, k);
    let p_max = j_sets.iter().map(Vec::len).max().unwrap_or(0);
    let degrees = p_max + 2;

    let mut basis: Vec<Vec<BGGLabel>> = vec![Vec::new(); degrees];
    for bold_j in &j_sets {
        let e = e_of(m, k, bold_j);
        if e >= 1 {
            for k_vec in compositions(e as usize - 1, n) {
                basis[bold_j.len()].push(BGGLabel {
                    bold_j: bold_j.clone(),
                    k_vec,
                    kind: BGGKind::FPart,
                });
            }
        }
    }
    for bold_j in &j_sets {
        let e = e_of(m, k, bold_j) as usize;
        for k_vec in compositions(e, n) {
            basis[bold_j.len() + 1].push(BGGLabel {
                bold_j: bold_j.clone(),
                k_vec,
                kind: BGGKind::Plain,
            });
        }
    }

    let index: Vec<BTreeMap<&BGGLabel, usize>> = basis
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, l)| (l, i)).collect())
        .collect();

    let mut diffs = Vec::new();
    for i in 0..degrees - 1 {
        let mut d = Matrix::zero(basis[i + 1].len(), basis[i].len());
        for (col, label) in basis[i].iter().enumerate() {
            let shifted = m_shifted(m, &label.bold_j);
            match label.kind {
                BGGKind::FPart => {
                    for (target_k, c) in tensor_dual_f(&shifted, &label.k_vec) {
                        let target = BGGLabel {
                            bold_j: label.bold_j.clone(),
                            k_vec: target_k,
                            kind: BGGKind::Plain,
                        };
                        d.add_to(index[i + 1][&target], col, &c);
                    }
                    for a in 0..n {
                        if label.bold_j.contains(&a) {
                            continue;
                        }
                        let Some((lowered, c)) = iota(m[a], label.k_vec[a]) else {
                            continue;
                        };
                        let mut target_j = label.bold_j.clone();
                        target_j.push(a);
                        target_j.sort_unstable();
                        let mut target_k = label.k_vec.clone();
                        target_k[a] = lowered;
                        let target = BGGLabel {
                            bold_j: target_j,
                            k_vec: target_k,
                            kind: BGGKind::FPart,
                        };
                        let sign = -koszul_sign(&label.bold_j, a);
                        d.add_to(index[i + 1][&target], col, &(sign * c));
                    }
                }
                BGGKind::Plain => {
                    for a in 0..n {
                        if label.bold_j.contains(&a) {
                            continue;
                        }
                        let Some((lowered, c)) = iota(m[a], label.k_vec[a]) else {
                            continue;
                        };
                        let mut target_j = label.bold_j.clone();
                        target_j.push(a);
                        target_j.sort_unstable();
                        let mut target_k = label.k_vec.clone();
                        target_k[a] = lowered;
                        let target = BGGLabel {
                            bold_j: target_j,
                            k_vec: target_k,
                            kind: BGGKind::Plain,
                        };
                        d.add_to(
                            index[i + 1][&target],
                            col,
                            &(koszul_sign(&label.bold_j, a) * c),
                        );
                    }
                }
            }
        }
        diffs.push(d);
    }

    let dims = basis.iter().map(Vec::len).collect();
    let labels = basis
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|l| phi_label(&l.bold_j, &l.k_vec, l.kind == BGGKind::FPart))
                .collect()
        })
        .collect();
    let complex = crate::CochainComplex::new(0, dims, labels, diffs)
        .expect("the two-step weight complex squares to zero");
    BGGWeightComplex {
        m: m.to_vec(),
        k,
        complex,
        basis,
    }
}

/// Multiplicity of `L_p` in `⊗_a L_{m_a}`, by brute-force weight counting:
/// `dim W_p = N(p) − N(p+2)` where `N(q)` counts bounded level vectors of
/// weight `q`.
pub fn clebsch_gordan_mult(m: &[i64], p: i64) -> usize {
    assert!(m.iter().all(|&ma| ma >= 0), "weights must be dominant");
    let total: i64 = m.iter().sum();
    if p < 0 || (total - p) % 2 != 0 {
        return 0;
    }
    let count = |q: i64| -> usize {
        if (total - q) % 2 != 0 || total < q {
            return 0;
        }
        let level = ((total - q) / 2) as usize;
        compositions(level, m.len())
            .into_iter()
            .filter(|j_vec| j_vec.iter().zip(m).all(|(&j, &ma)| (j as i64) <= ma))
            .count()
    };
    count(p) - count(p + 2)
}

/// Homology dimensions `(dim H_1, dim H_0)` of the two-step complex
/// `n_− ⊗ V[λ+2] → V[λ]` with `V = ⊗_a L_{m_a}` and `λ = |m| − 2k`,
/// realized on the bounded dual bases.
pub fn lie_homology_dims(m: &[i64], k: usize) -> (usize, usize) {
    assert!(m.iter().all(|&ma| ma >= 1), "weights must be positive");
    let bounded = |level: usize| -> Vec<Vec<usize>> {
        compositions(level, m.len())
            .into_iter()
            .filter(|j_vec| j_vec.iter().zip(m).all(|(&j, &ma)| (j as i64) <= ma))
            .collect()
    };
    let domain = if k == 0 { Vec::new() } else { bounded(k - 1) };
    let codomain = bounded(k);
    let index: BTreeMap<&Vec<usize>, usize> =
        codomain.iter().enumerate().map(|(i, j)| (j, i)).collect();
    let mut f = Matrix::zero(codomain.len(), domain.len());
    for (col, j_vec) in domain.iter().enumerate() {
        for (target, c) in tensor_dual_f(m, j_vec) {
            if let Some(&row) = index.get(&target) {
                f.add_to(row, col, &c);
            }
        }
    }
    let rank = f.rank();
    (domain.len() - rank, codomain.len() - rank)
}
