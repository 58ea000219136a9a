use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Rat, Rat2, RatJson};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipStatus {
    Outside,
    /// Member, but not strictly inside a two-dimensional pair cone. This
    /// includes the apex `0` and every point of a degenerate (ray or line)
    /// cone.
    OnBoundaryRay,
    /// Both coefficients strictly positive with independent generators.
    Interior,
}

/// Result of a membership query `c ∈ cone(g₁, g₂)`.
///
/// When the status is not `Outside` the coefficients satisfy
/// `c = λ₁g₁ + λ₂g₂` exactly with `λ ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeMembership {
    pub status: MembershipStatus,
    pub coefficients: Option<(Rat, Rat)>,
}

impl ConeMembership {
    pub const OUTSIDE: ConeMembership = ConeMembership {
        status: MembershipStatus::Outside,
        coefficients: None,
    };

    fn boundary(l1: Rat, l2: Rat) -> Self {
        ConeMembership {
            status: MembershipStatus::OnBoundaryRay,
            coefficients: Some((l1, l2)),
        }
    }

    pub fn is_member(&self) -> bool {
        self.status != MembershipStatus::Outside
    }

    pub fn is_interior(&self) -> bool {
        self.status == MembershipStatus::Interior
    }
}

impl Serialize for ConeMembership {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConeMembership", 2)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field(
            "coefficients",
            &self.coefficients.map(|(a, b)| [RatJson(a), RatJson(b)]),
        )?;
        st.end()
    }
}

/// `λ ≥ 0` with `c = λg`, for a nonzero `g`.
fn ray_coefficient(c: &Rat2, g: &Rat2) -> Option<Rat> {
    if g.is_zero() || !c.cross(g).is_zero() {
        return None;
    }
    let l = c.dot(g) / g.dot(g);
    (!l.is_negative()).then_some(l)
}

/// Decides `c ∈ cone(g₁, g₂) = {λ₁g₁ + λ₂g₂ : λ ≥ 0}` exactly.
///
/// Dependent generators span a ray, a line or `{0}`, each of which is the
/// union of the rays through the nonzero generators.
pub fn in_cone2(c: &Rat2, g1: &Rat2, g2: &Rat2) -> ConeMembership {
    if c.is_zero() {
        return ConeMembership::boundary(Rat::zero(), Rat::zero());
    }
    let det = g1.cross(g2);
    if !det.is_zero() {
        let l1 = c.cross(g2) / det;
        let l2 = g1.cross(c) / det;
        if l1.is_negative() || l2.is_negative() {
            return ConeMembership::OUTSIDE;
        }
        let status = if l1.is_positive() && l2.is_positive() {
            MembershipStatus::Interior
        } else {
            MembershipStatus::OnBoundaryRay
        };
        return ConeMembership {
            status,
            coefficients: Some((l1, l2)),
        };
    }
    if let Some(l) = ray_coefficient(c, g1) {
        return ConeMembership::boundary(l, Rat::zero());
    }
    if let Some(l) = ray_coefficient(c, g2) {
        return ConeMembership::boundary(Rat::zero(), l);
    }
    ConeMembership::OUTSIDE
}

/// Membership in the cone of several generators, with the generator pair
/// that witnesses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ManyMembership {
    pub membership: ConeMembership,
    /// Indices `(i, j)` into the generator list with
    /// `c = λ₁·gens[i] + λ₂·gens[j]`; `i == j` for a single ray.
    pub pair: Option<(usize, usize)>,
}

/// `c ∈ cone(gens)`, reduced to pairs by Carathéodory's theorem in the plane.
///
/// Interior witnesses are preferred over boundary ones; among equals the
/// lexicographically first pair wins.
pub fn in_cone_many(c: &Rat2, gens: &[Rat2]) -> ManyMembership {
    let mut best: Option<ManyMembership> = None;
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let m = in_cone2(c, &gens[i], &gens[j]);
            if !m.is_member() {
                continue;
            }
            let candidate = ManyMembership {
                membership: m,
                pair: Some((i, j)),
            };
            if m.is_interior() {
                return candidate;
            }
            best.get_or_insert(candidate);
        }
    }
    best.unwrap_or(ManyMembership {
        membership: ConeMembership::OUTSIDE,
        pair: None,
    })
}

/// Finds `a, b > 0` with `c = a·g₁ + b·g₂`, if any exist.
///
/// Unlike [`in_cone2`] this also covers dependent generators, where the
/// positive coefficients are not unique.
pub fn positive_combination(c: &Rat2, g1: &Rat2, g2: &Rat2) -> Option<(Rat, Rat)> {
    let det = g1.cross(g2);
    if !det.is_zero() {
        let m = in_cone2(c, g1, g2);
        return if m.is_interior() { m.coefficients } else { None };
    }
    let one = Rat::one();
    match (g1.is_zero(), g2.is_zero()) {
        (true, true) => c.is_zero().then_some((one, one)),
        (false, true) => ray_coefficient(c, g1)
            .filter(|l| l.is_positive())
            .map(|l| (l, one)),
        (true, false) => ray_coefficient(c, g2)
            .filter(|l| l.is_positive())
            .map(|l| (one, l)),
        (false, false) => {
            if !c.cross(g1).is_zero() {
                return None;
            }
            // c = s·g₁ and g₂ = k·g₁.
            let s = c.dot(g1) / g1.dot(g1);
            let k = g2.dot(g1) / g1.dot(g1);
            let two = one + one;
            if k.is_positive() {
                s.is_positive().then(|| (s / two, s / (two * k)))
            } else {
                let b = (s.abs() + one) / k.abs();
                Some((s - b * k, b))
            }
        }
    }
}

/// A covector `α` with `α(g) > 0` for every generator, if the generators
/// lie in an open half-plane (the cone has apex `0`).
///
/// When the cone is two-dimensional the returned `α` is the sum of the dual
/// basis of its extreme pair, so `α = 1` on both extreme generators. When
/// all generators lie on one ray the first generator is returned.
pub fn find_apex_functional(gens: &[Rat2]) -> Result<Option<Rat2>> {
    if let Some(i) = gens.iter().position(Rat2::is_zero) {
        return Err(Error::ZeroGenerator(i));
    }
    if gens.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    let mut any_independent = false;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (gi, gj) = (&gens[i], &gens[j]);
            let det = gi.cross(gj);
            if det.is_zero() {
                continue;
            }
            any_independent = true;
            if gens.iter().all(|g| in_cone2(g, gi, gj).is_member()) {
                let alpha = Rat2::new((gj.y - gi.y) / det, (gi.x - gj.x) / det);
                return Ok(Some(alpha));
            }
        }
    }
    if !any_independent && gens.iter().all(|g| g.dot(&gens[0]).is_positive()) {
        return Ok(Some(gens[0]));
    }
    Ok(None)
}

/// Whether two integer vectors form a `ℤ`-basis of `ℤ²`.
pub fn is_unimodular_pair(a: &Rat2, b: &Rat2) -> Result<bool> {
    let [ax, ay] = a.to_integer()?;
    let [bx, by] = b.to_integer()?;
    Ok((ax * by - ay * bx).abs() == 1)
}
