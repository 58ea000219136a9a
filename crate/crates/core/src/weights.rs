//! Weight systems `(ρ_L, ρ_R)`, their cone data, and the cone condition.
//!
//! A weight system gives `ρ_L(t) = diag(t^{w₁ᴸ}, t^{w₂ᴸ}, t^{w₃ᴸ})` and the same
//! for `ρ_R`. The derived data are
//!
//! ```text
//! A_j = w_jᴸ − w₁ᴿ,   B_j = −w_jᴸ + w₃ᴿ,   C = −w₁ᴿ + w₃ᴿ,
//! ```
//!
//! so that `A_j + B_j = C` for every `j`. All checks here are exact.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    find_apex_functional, in_cone2, in_cone_many, positive_combination, ConeMembership, Rat,
    Rat2, RatJson,
};

pub(crate) fn one_based<S: serde::Serializer>(i: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*i as u64 + 1)
}

/// The six weight vectors of `(ρ_L, ρ_R)`. JSON: `{"wL": [[a,b],…], "wR": […]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSystem {
    #[serde(rename = "wL")]
    pub left: [[i64; 2]; 3],
    #[serde(rename = "wR")]
    pub right: [[i64; 2]; 3],
}

fn sums_to_zero(ws: &[[i64; 2]; 3]) -> bool {
    ws.iter().map(|w| w[0]).sum::<i64>() == 0 && ws.iter().map(|w| w[1]).sum::<i64>() == 0
}

impl WeightSystem {
    pub fn new(left: [[i64; 2]; 3], right: [[i64; 2]; 3]) -> Result<Self> {
        let ws = WeightSystem { left, right };
        ws.validate()?;
        Ok(ws)
    }

    /// Both homomorphisms land in `SU(3)`: each triple of weights sums to zero.
    pub fn validate(&self) -> Result<()> {
        if !sums_to_zero(&self.left) {
            return Err(Error::InvalidWeights("left weights do not sum to zero".into()));
        }
        if !sums_to_zero(&self.right) {
            return Err(Error::InvalidWeights("right weights do not sum to zero".into()));
        }
        Ok(())
    }

    pub fn left_is_trivial(&self) -> bool {
        self.left.iter().all(|w| *w == [0, 0])
    }

    /// The weight system of the standard worked example, already
    /// scaled to integers.
    pub fn worked_example() -> Self {
        WeightSystem {
            left: [[-1, 1], [-1, 1], [2, -2]],
            right: [[-4, 1], [5, -5], [-1, 4]],
        }
    }

    /// `ρ_L` trivial and `ρ_R` the identity of the maximal torus.
    pub fn standard_torus() -> Self {
        WeightSystem {
            left: [[0, 0]; 3],
            right: [[1, 0], [0, 1], [-1, -1]],
        }
    }

    pub fn left_rat(&self) -> [Rat2; 3] {
        self.left.map(Rat2::from)
    }

    pub fn right_rat(&self) -> [Rat2; 3] {
        self.right.map(Rat2::from)
    }
}

/// Weight system with rational entries, as produced before clearing
/// denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalWeightSystem {
    #[serde(rename = "wL")]
    pub left: [Rat2; 3],
    #[serde(rename = "wR")]
    pub right: [Rat2; 3],
}

/// `A₁..A₃, B₁..B₃, C ∈ ℚ²` with `A_j + B_j = C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DerivedConeData {
    #[serde(rename = "A")]
    pub a: [Rat2; 3],
    #[serde(rename = "B")]
    pub b: [Rat2; 3],
    #[serde(rename = "C")]
    pub c: Rat2,
}

impl DerivedConeData {
    /// Builds cone data from `A` and `B`, checking that `A_j + B_j` does not
    /// depend on `j`.
    pub fn from_cone_data(a: [Rat2; 3], b: [Rat2; 3]) -> Result<Self> {
        let c = a[0] + b[0];
        for j in 1..3 {
            if a[j] + b[j] != c {
                return Err(Error::InconsistentConeData(format!(
                    "A_{} + B_{} = {} differs from A_1 + B_1 = {}",
                    j + 1,
                    j + 1,
                    a[j] + b[j],
                    c
                )));
            }
        }
        Ok(DerivedConeData { a, b, c })
    }

    pub fn from_int_cone_data(a: [[i128; 2]; 3], b: [[i128; 2]; 3]) -> Result<Self> {
        Self::from_cone_data(
            a.map(|v| Rat2::from_ints(v[0], v[1])),
            b.map(|v| Rat2::from_ints(v[0], v[1])),
        )
    }

    /// The cone data drawn in the worked example: `A = (1,0),(1,0),(2,−1)`,
    /// `B = (0,1),(0,1),(−1,2)`, `C = (1,1)`.
    pub fn worked_example() -> Self {
        Self::from_int_cone_data([[1, 0], [1, 0], [2, -1]], [[0, 1], [0, 1], [-1, 2]])
            .expect("consistent")
    }

    pub fn scale(&self, k: Rat) -> Self {
        DerivedConeData {
            a: self.a.map(|v| v.scale(k)),
            b: self.b.map(|v| v.scale(k)),
            c: self.c.scale(k),
        }
    }

    pub fn is_integer(&self) -> bool {
        self.a.iter().chain(&self.b).all(Rat2::is_integer)
    }

    /// All six generators `A₁, A₂, A₃, B₁, B₂, B₃`.
    pub fn generators(&self) -> [Rat2; 6] {
        [self.a[0], self.a[1], self.a[2], self.b[0], self.b[1], self.b[2]]
    }

    /// Swaps the roles of `A` and `B`; `C` is unchanged.
    pub fn swapped(&self) -> Self {
        DerivedConeData {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    /// Applies the same permutation `j ↦ perm[j]` to the `A` and `B` indices.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        DerivedConeData {
            a: perm.map(|p| self.a[p]),
            b: perm.map(|p| self.b[p]),
            c: self.c,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeDataJson {
    #[serde(rename = "A")]
    a: [Rat2; 3],
    #[serde(rename = "B")]
    b: [Rat2; 3],
    #[serde(rename = "C", default)]
    c: Option<Rat2>,
}

impl<'de> Deserialize<'de> for DerivedConeData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConeDataJson::deserialize(d)?;
        let data = DerivedConeData::from_cone_data(raw.a, raw.b).map_err(D::Error::custom)?;
        if let Some(c) = raw.c {
            if c != data.c {
                return Err(D::Error::custom(format!("C = {c} but A_1 + B_1 = {}", data.c)));
            }
        }
        Ok(data)
    }
}

/// Cone data of a weight system.
pub fn derive(ws: &WeightSystem) -> Result<DerivedConeData> {
    ws.validate()?;
    let wl = ws.left_rat();
    let wr = ws.right_rat();
    let a = wl.map(|w| w - wr[0]);
    let b = wl.map(|w| wr[2] - w);
    let c = wr[2] - wr[0];
    let data = DerivedConeData { a, b, c };
    for j in 0..3 {
        if data.a[j] + data.b[j] != c {
            return Err(Error::Inconsistent("A_j + B_j != C after derivation".into()));
        }
    }
    Ok(data)
}

/// One membership sub-result of the cone condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    #[serde(serialize_with = "one_based")]
    pub i: usize,
    #[serde(serialize_with = "one_based")]
    pub j: usize,
    pub membership: ConeMembership,
}

/// `C = a·A_i + b·B_j` with `i ≠ j` and `a, b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonemptyWitness {
    pub i: usize,
    pub j: usize,
    pub a: Rat,
    pub b: Rat,
}

impl Serialize for NonemptyWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "i": self.i + 1,
            "j": self.j + 1,
            "a": RatJson(self.a),
            "b": RatJson(self.b),
        })
        .serialize(s)
    }
}

/// Nonemptiness, regularity and compactness of the level set `Φ⁻¹(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NrcReport {
    /// Witness for nonemptiness, if any.
    pub nonempty: Option<NonemptyWitness>,
    /// `A_i` and `B_j` linearly independent for all `i ≠ j`.
    pub regular: bool,
    pub compact: bool,
    /// Apex functional `α` of `cone(A₁,…,B₃)` when it exists.
    pub apex: Option<Rat2>,
    pub c_outside_a_cone: bool,
    pub c_outside_b_cone: bool,
    pub generators_nonzero: bool,
}

impl NrcReport {
    pub fn n(&self) -> bool {
        self.nonempty.is_some()
    }

    pub fn all(&self) -> bool {
        self.n() && self.regular && self.compact
    }
}

/// Evidence for the cone condition: 9 checks against `A`-pairs, 9 against
/// `B`-pairs (both including `i = j`, i.e. single rays) and 9 mixed checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub star: bool,
    pub a_pairs: Vec<PairCheck>,
    pub b_pairs: Vec<PairCheck>,
    pub mixed: Vec<PairCheck>,
    pub nrc: NrcReport,
}

fn pair_checks(c: &Rat2, left: &[Rat2; 3], right: &[Rat2; 3]) -> Vec<PairCheck> {
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            out.push(PairCheck {
                i,
                j,
                membership: in_cone2(c, &left[i], &right[j]),
            });
        }
    }
    out
}

/// Only decides the cone condition, without collecting evidence.
pub fn star_holds(d: &DerivedConeData) -> bool {
    let c = &d.c;
    for i in 0..3 {
        for j in 0..3 {
            if in_cone2(c, &d.a[i], &d.a[j]).is_member()
                || in_cone2(c, &d.b[i], &d.b[j]).is_member()
                || !in_cone2(c, &d.a[i], &d.b[j]).is_member()
            {
                return false;
            }
        }
    }
    true
}

/// The cone condition: `C ∉ cone(A_i, A_j)`, `C ∉ cone(B_i, B_j)` and
/// `C ∈ cone(A_i, B_j)` for all `i, j ∈ {1,2,3}`.
pub fn check_star(d: &DerivedConeData) -> ConditionReport {
    let a_pairs = pair_checks(&d.c, &d.a, &d.a);
    let b_pairs = pair_checks(&d.c, &d.b, &d.b);
    let mixed = pair_checks(&d.c, &d.a, &d.b);
    let star = a_pairs.iter().all(|p| !p.membership.is_member())
        && b_pairs.iter().all(|p| !p.membership.is_member())
        && mixed.iter().all(|p| p.membership.is_member());
    ConditionReport {
        star,
        a_pairs,
        b_pairs,
        mixed,
        nrc: check_nrc(d),
    }
}

pub fn check_nrc(d: &DerivedConeData) -> NrcReport {
    let mut nonempty = None;
    'search: for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            if let Some((a, b)) = positive_combination(&d.c, &d.a[i], &d.b[j]) {
                nonempty = Some(NonemptyWitness { i, j, a, b });
                break 'search;
            }
        }
    }

    let regular = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .all(|(i, j)| !d.a[i].cross(&d.b[j]).is_zero());

    let c_outside_a_cone = !in_cone_many(&d.c, &d.a).membership.is_member();
    let c_outside_b_cone = !in_cone_many(&d.c, &d.b).membership.is_member();
    let generators_nonzero = d.generators().iter().all(|g| !g.is_zero());
    let apex = if generators_nonzero {
        find_apex_functional(&d.generators()).expect("generators are nonzero")
    } else {
        None
    };
    let compact = c_outside_a_cone && c_outside_b_cone && generators_nonzero && apex.is_some();

    NrcReport {
        nonempty,
        regular,
        compact,
        apex,
        c_outside_a_cone,
        c_outside_b_cone,
        generators_nonzero,
    }
}

/// Output of [`weights_from_cone_data`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedWeights {
    pub rational: RationalWeightSystem,
    pub scale: i64,
    pub integer: WeightSystem,
}

/// Solves `A_j = w_jᴸ − w₁ᴿ`, `B_j = −w_jᴸ + w₃ᴿ`, `Σ wᴸ = Σ wᴿ = 0` with the
/// particular solution
///
/// ```text
/// w_jᴸ = −(A₁+A₂+A₃)/3 + A_j
/// w₁ᴿ = −(A₁+A₂+A₃)/3
/// w₂ᴿ = (A₁+A₂+A₃)/3 − (B₁+B₂+B₃)/3
/// w₃ᴿ = (B₁+B₂+B₃)/3
/// ```
///
/// then clears denominators with the least positive integer scale.
pub fn weights_from_cone_data(a: [Rat2; 3], b: [Rat2; 3]) -> Result<GeneratedWeights> {
    DerivedConeData::from_cone_data(a, b)?;
    let third = Rat::new(1, 3);
    let sa = (a[0] + a[1] + a[2]).scale(third);
    let sb = (b[0] + b[1] + b[2]).scale(third);
    let left = a.map(|aj| aj - sa);
    let right = [-sa, sa - sb, sb];
    let rational = RationalWeightSystem { left, right };

    let scale = left
        .iter()
        .chain(&right)
        .fold(1i128, |acc, v| num_integer::lcm(acc, v.denom_lcm()));
    let k = Rat::from_integer(scale);
    let to_int = |v: &Rat2| -> Result<[i64; 2]> {
        let [x, y] = v.scale(k).to_integer()?;
        let conv = |n: i128| {
            i64::try_from(n).map_err(|_| Error::InvalidWeights(format!("weight {n} overflows")))
        };
        Ok([conv(x)?, conv(y)?])
    };
    let integer = WeightSystem::new(
        [to_int(&left[0])?, to_int(&left[1])?, to_int(&left[2])?],
        [to_int(&right[0])?, to_int(&right[1])?, to_int(&right[2])?],
    )?;
    let scale = i64::try_from(scale).map_err(|_| Error::InvalidWeights("scale overflows".into()))?;
    Ok(GeneratedWeights {
        rational,
        scale,
        integer,
    })
}

/// Base point `C = a·A₁ + b·B₁` and the sampled times of the straight-line
/// deformation `A_jᵗ = t·A_j + (1−t)·a·A₁`, `B_jᵗ = t·B_j + (1−t)·b·B₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationSpec {
    pub a: Rat,
    pub b: Rat,
    pub samples: Vec<Rat>,
}

impl InterpolationSpec {
    /// Reads `a, b` off the exact witness of `C ∈ cone(A₁, B₁)`.
    pub fn for_data(d: &DerivedConeData, samples: Vec<Rat>) -> Result<Self> {
        let m = in_cone2(&d.c, &d.a[0], &d.b[0]);
        match (m.is_interior(), m.coefficients) {
            (true, Some((a, b))) => Ok(InterpolationSpec { a, b, samples }),
            _ => Err(Error::Precondition(
                "C is not in the interior of cone(A_1, B_1)".into(),
            )),
        }
    }

    /// `t = k/n` for `k = 0..=n`.
    pub fn uniform_samples(n: u32) -> Vec<Rat> {
        let n = n.max(1) as i128;
        (0..=n).map(|k| Rat::new(k, n)).collect()
    }
}

/// The deformed cone data at time `t`.
pub fn interpolated(d: &DerivedConeData, spec: &InterpolationSpec, t: Rat) -> DerivedConeData {
    let s = Rat::one() - t;
    let a0 = d.a[0].scale(spec.a * s);
    let b0 = d.b[0].scale(spec.b * s);
    DerivedConeData {
        a: d.a.map(|aj| aj.scale(t) + a0),
        b: d.b.map(|bj| bj.scale(t) + b0),
        c: d.c,
    }
}

/// Whether the cone condition holds at every sampled time of the
/// deformation to the standard configuration.
pub fn check_interpolation_path(d: &DerivedConeData, spec: &InterpolationSpec) -> Result<bool> {
    if !(spec.a.is_positive() && spec.b.is_positive()) {
        return Err(Error::Precondition("a and b must be positive".into()));
    }
    if d.a[0].scale(spec.a) + d.b[0].scale(spec.b) != d.c {
        return Err(Error::Precondition("C != a·A_1 + b·B_1".into()));
    }
    if !in_cone2(&d.c, &d.a[0], &d.b[0]).is_interior() {
        return Err(Error::Precondition(
            "C is not in the interior of cone(A_1, B_1)".into(),
        ));
    }
    for t in &spec.samples {
        if t.is_negative() || *t > Rat::one() {
            return Err(Error::Precondition(format!("sample t = {t} outside [0, 1]")));
        }
    }
    Ok(spec.samples.iter().all(|&t| {
        let dt = interpolated(d, spec, t);
        debug_assert!((0..3).all(|j| dt.a[j] + dt.b[j] == dt.c));
        star_holds(&dt)
    }))
}

/// All triples `(w₁, w₂, w₃)` in `[−bound, bound]²` summing to zero, in
/// lexicographic order.
pub fn zero_sum_triples(bound: i64) -> Vec<[[i64; 2]; 3]> {
    let range = || -bound..=bound;
    let mut out = Vec::new();
    for x1 in range() {
        for y1 in range() {
            for x2 in range() {
                for y2 in range() {
                    let (x3, y3) = (-x1 - x2, -y1 - y2);
                    if x3.abs() <= bound && y3.abs() <= bound {
                        out.push([[x1, y1], [x2, y2], [x3, y3]]);
                    }
                }
            }
        }
    }
    out
}

fn passes_star(ws: &WeightSystem) -> bool {
    derive(ws).map(|d| star_holds(&d)).unwrap_or(false)
}

/// Lazily yields every weight system with entries in `[−bound, bound]`
/// satisfying the cone condition, ordered lexicographically by `(wL, wR)`.
pub fn enumerate_star_systems(bound: i64) -> impl Iterator<Item = WeightSystem> {
    let bound = bound.max(0);
    let triples = zero_sum_triples(bound);
    let rights = triples.clone();
    triples
        .into_iter()
        .flat_map(move |left| {
            rights
                .clone()
                .into_iter()
                .map(move |right| WeightSystem { left, right })
        })
        .filter(passes_star)
}

/// Same output as [`enumerate_star_systems`], evaluated in parallel over
/// the left weights; the result keeps the sequential order.
pub fn par_enumerate_star_systems(bound: i64) -> Vec<WeightSystem> {
    let bound = bound.max(0);
    let triples = zero_sum_triples(bound);
    triples
        .par_iter()
        .flat_map_iter(|&left| {
            triples
                .iter()
                .map(move |&right| WeightSystem { left, right })
                .filter(passes_star)
        })
        .collect()
}
