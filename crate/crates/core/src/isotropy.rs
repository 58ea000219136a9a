//! Isotropy of the `(S¹)²`-action on the level set.
//!
//! On the level set the torus acts by `t·(z, w) = (t^{A₁}z₁, …, t^{B₃}w₃)`.
//! The stabilizer of a point only depends on its support pattern
//! `I = {i : z_i ≠ 0}`, `J = {j : w_j ≠ 0}`: it is the common kernel of the
//! characters `t ↦ t^{A_i}` (`i ∈ I`) and `t ↦ t^{B_j}` (`j ∈ J`), whose
//! structure is read off the Smith normal form of the stacked exponents.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    is_unimodular_pair, lattice_quotient_factors, positive_combination, smith_invariant_factors,
    IntMat, Rat, RatJson,
};
use crate::weights::{derive, one_based, star_holds, DerivedConeData, WeightSystem};

/// Supports of `z` and `w`, as index sets in `{0, 1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportPattern {
    z: [bool; 3],
    w: [bool; 3],
}

impl SupportPattern {
    /// A pattern is valid when both supports are nonempty and some `i ∈ I`,
    /// `j ∈ J` differ; otherwise `Σ z_j w_j = 0` would force `z = 0` or `w = 0`.
    pub fn new(z_support: &[usize], w_support: &[usize]) -> Result<Self> {
        let mut z = [false; 3];
        let mut w = [false; 3];
        for &i in z_support {
            *z.get_mut(i)
                .ok_or_else(|| Error::InvalidSupport(format!("index {i} out of range")))? = true;
        }
        for &j in w_support {
            *w.get_mut(j)
                .ok_or_else(|| Error::InvalidSupport(format!("index {j} out of range")))? = true;
        }
        let pattern = SupportPattern { z, w };
        if !pattern.is_valid() {
            return Err(Error::InvalidSupport(format!(
                "I = {:?}, J = {:?} cannot occur on the quadric",
                pattern.z_indices(),
                pattern.w_indices()
            )));
        }
        Ok(pattern)
    }

    pub fn singleton(i: usize, j: usize) -> Result<Self> {
        Self::new(&[i], &[j])
    }

    pub fn full() -> Self {
        SupportPattern {
            z: [true; 3],
            w: [true; 3],
        }
    }

    fn is_valid(&self) -> bool {
        (0..3).any(|i| self.z[i] && (0..3).any(|j| j != i && self.w[j]))
    }

    pub fn z_indices(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.z[i]).collect()
    }

    pub fn w_indices(&self) -> Vec<usize> {
        (0..3).filter(|&j| self.w[j]).collect()
    }

    pub fn is_singleton(&self) -> bool {
        self.z_indices().len() == 1 && self.w_indices().len() == 1
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    /// Every valid pattern: singletons first in `(i, j)` order, then the
    /// intermediate patterns, then full support.
    pub fn all_valid() -> Vec<Self> {
        let subsets: Vec<Vec<usize>> = (1u8..8)
            .map(|m| (0..3).filter(|&k| m & (1 << k) != 0).collect())
            .collect();
        let mut singles = Vec::new();
        let mut middle = Vec::new();
        for zs in &subsets {
            for ws in &subsets {
                if let Ok(p) = SupportPattern::new(zs, ws) {
                    if p.is_singleton() {
                        singles.push(p);
                    } else if !p.is_full() {
                        middle.push(p);
                    }
                }
            }
        }
        singles.sort_by_key(|p| (p.z_indices(), p.w_indices()));
        singles.extend(middle);
        singles.push(Self::full());
        singles
    }
}

impl Serialize for SupportPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one = |v: Vec<usize>| v.into_iter().map(|k| k + 1).collect::<Vec<_>>();
        serde_json::json!({ "I": one(self.z_indices()), "J": one(self.w_indices()) }).serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyGroup {
    /// `ℤ/d₁ × ℤ/d₂` with `d₁ | d₂`.
    Finite { factors: [i128; 2] },
    /// The stabilizer contains a circle (or the whole torus).
    PositiveDimensional { rank_deficit: usize },
}

impl IsotropyGroup {
    pub fn order(&self) -> Option<i128> {
        match self {
            IsotropyGroup::Finite { factors } => Some(factors[0] * factors[1]),
            IsotropyGroup::PositiveDimensional { .. } => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    /// Nontrivial cyclic factors, e.g. `[2]` for `ℤ/2`.
    pub fn nontrivial_factors(&self) -> Vec<i128> {
        match self {
            IsotropyGroup::Finite { factors } => factors.iter().copied().filter(|&d| d > 1).collect(),
            IsotropyGroup::PositiveDimensional { .. } => Vec::new(),
        }
    }
}

impl Serialize for IsotropyGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IsotropyGroup::Finite { factors } => serde_json::json!({
                "kind": "finite",
                "order": factors[0] * factors[1],
                "factors": factors,
            }),
            IsotropyGroup::PositiveDimensional { rank_deficit } => serde_json::json!({
                "kind": "positive_dimensional",
                "rank_deficit": rank_deficit,
            }),
        }
        .serialize(s)
    }
}

fn integer_rows(d: &DerivedConeData, s: &SupportPattern) -> Result<Vec<[i128; 2]>> {
    let mut rows = Vec::new();
    for i in s.z_indices() {
        rows.push(d.a[i].to_integer()?);
    }
    for j in s.w_indices() {
        rows.push(d.b[j].to_integer()?);
    }
    Ok(rows)
}

fn group_of_rows(rows: &[[i128; 2]]) -> Result<IsotropyGroup> {
    let snf = smith_invariant_factors(&IntMat::from_rows(rows)?);
    Ok(if snf.rank < 2 {
        IsotropyGroup::PositiveDimensional {
            rank_deficit: 2 - snf.rank,
        }
    } else {
        IsotropyGroup::Finite {
            factors: [snf.factors[0], snf.factors[1]],
        }
    })
}

/// Stabilizer of the points with support pattern `s`.
pub fn isotropy_at_support(d: &DerivedConeData, s: &SupportPattern) -> Result<IsotropyGroup> {
    group_of_rows(&integer_rows(d, s)?)
}

/// A pair `(A_i, B_j)`, `i ≠ j`, that is not a `ℤ`-basis of `ℤ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FailingPair {
    #[serde(serialize_with = "one_based")]
    pub i: usize,
    #[serde(serialize_with = "one_based")]
    pub j: usize,
    pub determinant: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub free: bool,
    /// First failing pair, scanning `j` (the `w` index) in the outer loop.
    pub failing_pair: Option<FailingPair>,
    pub failing_pairs: Vec<FailingPair>,
    /// `false` only when an originating weight system satisfying the cone
    /// condition was supplied and its weight-level classification disagrees.
    pub prop53_consistent: bool,
}

/// The action is free exactly when every `(A_i, B_j)` with `i ≠ j` is a
/// `ℤ`-basis of `ℤ²`.
pub fn freeness_check(d: &DerivedConeData, origin: Option<&WeightSystem>) -> Result<FreenessVerdict> {
    let mut failing_pairs = Vec::new();
    for j in 0..3 {
        for i in 0..3 {
            if i == j {
                continue;
            }
            if !is_unimodular_pair(&d.a[i], &d.b[j])? {
                let [ax, ay] = d.a[i].to_integer()?;
                let [bx, by] = d.b[j].to_integer()?;
                failing_pairs.push(FailingPair {
                    i,
                    j,
                    determinant: ax * by - ay * bx,
                });
            }
        }
    }
    let free = failing_pairs.is_empty();
    let prop53_consistent = match origin {
        Some(ws) if derive(ws).map(|dd| star_holds(&dd)).unwrap_or(false) => {
            (classify_by_weights(ws) == Prop53Class::FreeFlagCase) == free
        }
        _ => true,
    };
    Ok(FreenessVerdict {
        free,
        failing_pair: failing_pairs.first().copied(),
        failing_pairs,
        prop53_consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop53Class {
    /// `ρ_L` trivial and `ρ_R` an isomorphism; the quotient is the flag
    /// manifold.
    FreeFlagCase,
    OrbifoldCase,
}

/// The weight-level criterion alone: `ρ_L` trivial and `(w₁ᴿ, w₂ᴿ)` a
/// `ℤ`-basis.
pub fn classify_by_weights(ws: &WeightSystem) -> Prop53Class {
    let [a, b] = [ws.right[0], ws.right[1]];
    let det = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
    if ws.left_is_trivial() && det.abs() == 1 {
        Prop53Class::FreeFlagCase
    } else {
        Prop53Class::OrbifoldCase
    }
}

/// Classifies a weight system satisfying the cone condition and confirms
/// the classification against [`freeness_check`].
pub fn classify_prop53(ws: &WeightSystem) -> Result<Prop53Class> {
    let d = derive(ws)?;
    if !star_holds(&d) {
        return Err(Error::Precondition("weight system does not satisfy the cone condition".into()));
    }
    let class = classify_by_weights(ws);
    let verdict = freeness_check(&d, None)?;
    if verdict.free != (class == Prop53Class::FreeFlagCase) {
        return Err(Error::Inconsistent(format!(
            "weights classify as {class:?} but freeness check says free = {}",
            verdict.free
        )));
    }
    Ok(class)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realizability {
    /// The point with `z_i = √a`, `w_j = √b` and all else zero lies on the
    /// level set.
    Witness { a: Rat, b: Rat },
    NotRealizable,
    /// The open stratum of points with full support.
    Generic,
    NotDetermined,
}

impl Serialize for Realizability {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Realizability::Witness { a, b } => serde_json::json!({
                "realizable": true,
                "witness_point": { "a": RatJson(*a), "b": RatJson(*b) },
            }),
            Realizability::NotRealizable => serde_json::json!({ "realizable": false }),
            Realizability::Generic => serde_json::json!({ "realizable": "generic" }),
            Realizability::NotDetermined => serde_json::json!({ "realizable": "not determined" }),
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumEntry {
    pub pattern: SupportPattern,
    pub isotropy: IsotropyGroup,
    /// Invariant factors of the stratum's isotropy modulo the kernel of the
    /// whole action (the stabilizer of generic points). Equal to `isotropy`
    /// when the action is effective.
    pub effective_factors: Option<Vec<i128>>,
    pub realizability: Realizability,
}

impl StratumEntry {
    pub fn effective_order(&self) -> Option<i128> {
        self.effective_factors.as_ref().map(|f| f.iter().product())
    }
}

/// Isotropy on every support stratum, with realizability of the singleton
/// strata decided by explicit points.
pub fn singular_stratum_census(d: &DerivedConeData) -> Result<Vec<StratumEntry>> {
    if !star_holds(d) {
        return Err(Error::Precondition("cone data does not satisfy the cone condition".into()));
    }
    if !d.is_integer() {
        return Err(Error::NonInteger("cone data".into()));
    }
    let full_rows = integer_rows(d, &SupportPattern::full())?;
    SupportPattern::all_valid()
        .par_iter()
        .map(|pattern| {
            let rows = integer_rows(d, pattern)?;
            let isotropy = group_of_rows(&rows)?;
            let effective_factors = match isotropy {
                IsotropyGroup::Finite { .. } => Some(lattice_quotient_factors(&rows, &full_rows)?),
                IsotropyGroup::PositiveDimensional { .. } => None,
            };
            let realizability = if pattern.is_full() {
                Realizability::Generic
            } else if pattern.is_singleton() {
                let (i, j) = (pattern.z_indices()[0], pattern.w_indices()[0]);
                match positive_combination(&d.c, &d.a[i], &d.b[j]) {
                    Some((a, b)) => Realizability::Witness { a, b },
                    None => Realizability::NotRealizable,
                }
            } else {
                Realizability::NotDetermined
            };
            Ok(StratumEntry {
                pattern: *pattern,
                isotropy,
                effective_factors,
                realizability,
            })
        })
        .collect()
}
