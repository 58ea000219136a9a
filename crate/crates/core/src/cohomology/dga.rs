use serde::Serialize;

use super::algebra::{basic_model, GradedAlgebra};
use super::field::{rank, Eisenstein, Field};
use crate::error::{Error, Result};
use crate::geometry::{int, Rat};

/// An odd generator of the exterior factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generator {
    pub name: String,
    pub bidegree: (u32, u32),
}

impl Generator {
    pub fn new(name: &str, bidegree: (u32, u32)) -> Self {
        Generator {
            name: name.into(),
            bidegree,
        }
    }
}

/// `(H ⊗ Λ(w₁, …, w_m), d)` with `d = 0` on `H` and `d w_k ∈ H`.
///
/// Basis elements of the product are pairs `(h, S)` standing for
/// `h · w_{s₁} ∧ … ∧ w_{s_r}`, `s₁ < … < s_r`, stored at index
/// `S · dim H + h` with `S` a bitmask.
#[derive(Clone, Debug)]
pub struct DGAModel<F> {
    pub base: GradedAlgebra<F>,
    pub generators: Vec<Generator>,
    pub differential: Vec<Vec<F>>,
    pub algebra: GradedAlgebra<F>,
    /// `d` of every basis element, as coordinates.
    pub d_matrix: Vec<Vec<F>>,
}

fn exterior_product(s: u32, t: u32) -> Option<(u32, bool)> {
    if s & t != 0 {
        return None;
    }
    // sign of the shuffle: pairs (a ∈ S, b ∈ T) with a > b
    let mut swaps = 0;
    for b in 0..32 {
        if t >> b & 1 == 1 {
            swaps += (s >> (b + 1)).count_ones();
        }
    }
    Some((s | t, swaps % 2 == 1))
}

impl<F: Field> DGAModel<F> {
    pub fn new(base: GradedAlgebra<F>, generators: Vec<Generator>, differential: Vec<Vec<F>>) -> Result<Self> {
        let (n, m) = (base.dim(), generators.len());
        if differential.len() != m || differential.iter().any(|v| v.len() != n) {
            return Err(Error::Precondition("one differential image per generator".into()));
        }
        for (g, dg) in generators.iter().zip(&differential) {
            if g.bidegree.0 + g.bidegree.1 != 1 {
                return Err(Error::Precondition(format!("{} must have degree 1", g.name)));
            }
            if dg.iter().enumerate().any(|(i, c)| !c.is_zero() && base.degree(i) != 2) {
                return Err(Error::Precondition(format!("d{} must lie in degree 2", g.name)));
            }
        }

        let masks = 1u32 << m;
        let dim = n * masks as usize;
        let mut labels = Vec::with_capacity(dim);
        let mut bidegrees = Vec::with_capacity(dim);
        for s in 0..masks {
            for h in 0..n {
                let mut label = base.labels[h].clone();
                let (mut p, mut q) = base.bidegrees[h];
                for (k, g) in generators.iter().enumerate() {
                    if s >> k & 1 == 1 {
                        label.push('*');
                        label.push_str(&g.name);
                        p += g.bidegree.0;
                        q += g.bidegree.1;
                    }
                }
                labels.push(label);
                bidegrees.push((p, q));
            }
        }
        let idx = |h: usize, s: u32| s as usize * n + h;
        let mut table = vec![vec![vec![F::zero(); dim]; dim]; dim];
        for s in 0..masks {
            for t in 0..masks {
                let Some((u, negative)) = exterior_product(s, t) else {
                    continue;
                };
                for h1 in 0..n {
                    for h2 in 0..n {
                        let entry = &mut table[idx(h1, s)][idx(h2, t)];
                        for (k, c) in base.table[h1][h2].iter().enumerate() {
                            if !c.is_zero() {
                                entry[idx(k, u)] = if negative { -c.clone() } else { c.clone() };
                            }
                        }
                    }
                }
            }
        }
        let algebra = GradedAlgebra {
            labels,
            bidegrees,
            table,
        };

        let mut d_matrix = vec![vec![F::zero(); dim]; dim];
        for s in 0..masks {
            let members: Vec<usize> = (0..m).filter(|&k| s >> k & 1 == 1).collect();
            for h in 0..n {
                let out = &mut d_matrix[idx(h, s)];
                for (pos, &k) in members.iter().enumerate() {
                    let rest = s & !(1 << k);
                    let image = base.mul(&base.basis_vector(h), &differential[k]);
                    for (j, c) in image.into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let c = if pos % 2 == 1 { -c } else { c };
                        let slot = &mut out[idx(j, rest)];
                        *slot = slot.clone() + c;
                    }
                }
            }
        }
        let model = DGAModel {
            base,
            generators,
            differential,
            algebra,
            d_matrix,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn d(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, t) in out.iter_mut().zip(&self.d_matrix[i]) {
                if !t.is_zero() {
                    *o = o.clone() + c.clone() * t.clone();
                }
            }
        }
        out
    }

    /// `d² = 0` and the Leibniz rule on all basis elements and pairs.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if self.d(&self.d_matrix[i]).iter().any(|c| !c.is_zero()) {
                return Err(Error::DifferentialNotNilpotent);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (self.algebra.basis_vector(i), self.algebra.basis_vector(j));
                let lhs = self.d(&self.algebra.mul(&x, &y));
                let a = self.algebra.mul(&self.d_matrix[i], &y);
                let b = self.algebra.mul(&x, &self.d_matrix[j]);
                let odd = self.algebra.degree(i) % 2 == 1;
                let rhs: Vec<F> = a
                    .into_iter()
                    .zip(b)
                    .map(|(a, b)| if odd { a - b } else { a + b })
                    .collect();
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "d is not a derivation on {} * {}",
                        self.algebra.labels[i], self.algebra.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether `d` has bidegree `(0, 1)` on every basis element.
    pub fn is_bigraded(&self) -> bool {
        (0..self.dim()).all(|i| {
            let (p, q) = self.algebra.bidegrees[i];
            self.d_matrix[i]
                .iter()
                .enumerate()
                .all(|(j, c)| c.is_zero() || self.algebra.bidegrees[j] == (p, q + 1))
        })
    }

    fn rank_from(&self, select: impl Fn(usize) -> bool) -> usize {
        let rows: Vec<Vec<F>> = (0..self.dim())
            .filter(|&i| select(i))
            .map(|i| self.d_matrix[i].clone())
            .collect();
        rank(&rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
}

/// `dim ker d_k − dim im d_{k−1}` in every degree.
pub fn dga_cohomology<F: Field>(m: &DGAModel<F>) -> Result<BettiTable> {
    m.validate()?;
    let a = &m.algebra;
    let dims = a.graded_dims();
    let ranks: Vec<usize> = (0..dims.len())
        .map(|k| m.rank_from(|i| a.degree(i) as usize == k))
        .collect();
    let betti: Vec<usize> = (0..dims.len())
        .map(|k| dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    let euler: i64 = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    if euler != a.euler_characteristic() {
        return Err(Error::Inconsistent("Betti numbers disagree with the Euler characteristic".into()));
    }
    Ok(BettiTable {
        betti,
        euler_characteristic: euler,
    })
}

/// `h^{p,q}` of a bigraded model, indexed `[p][q]`.
pub fn hodge_numbers<F: Field>(m: &DGAModel<F>) -> Result<Vec<Vec<usize>>> {
    if !m.is_bigraded() {
        return Err(Error::Precondition("differential is not of bidegree (0, 1)".into()));
    }
    let a = &m.algebra;
    let pmax = a.bidegrees.iter().map(|b| b.0).max().unwrap_or(0) as usize;
    let qmax = a.bidegrees.iter().map(|b| b.1).max().unwrap_or(0) as usize;
    let dim = |p: usize, q: usize| a.bidegrees.iter().filter(|&&b| b == (p as u32, q as u32)).count();
    let r = |p: usize, q: usize| m.rank_from(|i| a.bidegrees[i] == (p as u32, q as u32));
    Ok((0..=pmax)
        .map(|p| {
            (0..=qmax)
                .map(|q| dim(p, q) - r(p, q) - if q > 0 { r(p, q - 1) } else { 0 })
                .collect()
        })
        .collect())
}

/// `H*_B ⊗ Λ(w₁, w₂)` with `d w₁ = dw[0]`, `d w₂ = dw[1]` in `H²_B`.
pub fn derham_model(dw: [[Rat; 2]; 2]) -> Result<DGAModel<Rat>> {
    let base = basic_model();
    let n = base.dim();
    let image = |c: [Rat; 2]| {
        let mut v = vec![int(0); n];
        v[1] = c[0];
        v[2] = c[1];
        v
    };
    let d = vec![image(dw[0]), image(dw[1])];
    DGAModel::new(
        base,
        vec![Generator::new("w1", (1, 0)), Generator::new("w2", (1, 0))],
        d,
    )
}

/// The model of `SU(3)`: `d w₁ = x₂`, `d w₂ = x₃`.
pub fn su3_derham_model() -> DGAModel<Rat> {
    derham_model([[int(1), int(0)], [int(0), int(1)]]).expect("valid model")
}

/// `H*(SU(3); ℚ) = Λ(a₃, a₅)`.
pub const SU3_BETTI: [usize; 9] = [1, 0, 0, 1, 0, 1, 0, 0, 1];

/// `β = u·x₂ + v·x₃ ∈ H^{1,1}_B`, the image of `∂̄` on `W^{1,0}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum HodgeBeta {
    Rational {
        #[serde(with = "crate::geometry::rat_serde")]
        u: Rat,
        #[serde(with = "crate::geometry::rat_serde")]
        v: Rat,
    },
    Eisenstein { u: Eisenstein, v: Eisenstein },
}

impl HodgeBeta {
    pub fn rational(u: Rat, v: Rat) -> Self {
        HodgeBeta::Rational { u, v }
    }

    /// `β = x₂ + x₃`; multiplication by it is injective on `H²`.
    pub fn generic() -> Self {
        HodgeBeta::Rational { u: int(1), v: int(1) }
    }

    /// `β = ω·x₂ + x₃` with `ω = e^{iπ/3}`. The determinant
    /// `u² − uv + v²` of `β· : H^{1,1} → H^{2,2}` vanishes; it has no
    /// rational zeros besides `0`.
    pub fn degenerate() -> Self {
        HodgeBeta::Eisenstein {
            u: Eisenstein::omega(),
            v: Eisenstein::one(),
        }
    }
}

/// Entries of the diamond fixed independently of `β`; `None` marks
/// `h^{2,1}`, `h^{2,2}`, `h^{2,3}`.
pub fn printed_diamond(p: usize, q: usize) -> Option<usize> {
    match (p, q) {
        (2, 1) | (2, 2) | (2, 3) => None,
        (0, 0) | (0, 1) | (1, 1) | (1, 2) | (3, 2) | (3, 3) | (4, 3) | (4, 4) => Some(1),
        _ => Some(0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HodgeTable {
    pub beta: HodgeBeta,
    /// `h[p][q]`, `0 ≤ p, q ≤ 4`.
    pub h: Vec<Vec<usize>>,
    /// Rank of `β· : H^{1,1} → H^{2,2}`.
    pub beta_rank: usize,
    /// `(h^{2,1}, h^{2,2}, h^{2,3})`
    pub branch: [usize; 3],
    /// `h^{p,q} = h^{4−p, 4−q}`
    pub symmetric: bool,
}

fn hodge_over<F: Field>(beta: HodgeBeta, u: F, v: F) -> Result<HodgeTable> {
    if u.is_zero() && v.is_zero() {
        return Err(Error::Precondition("beta must be nonzero".into()));
    }
    let base: GradedAlgebra<F> = basic_model().extend();
    let mut b = vec![F::zero(); base.dim()];
    b[1] = u;
    b[2] = v;
    let beta_rank = base.multiplication_rank(&b, 2);
    let zero = vec![F::zero(); base.dim()];
    let m = DGAModel::new(
        base,
        vec![Generator::new("w", (1, 0)), Generator::new("wbar", (0, 1))],
        vec![b, zero],
    )?;
    let h = hodge_numbers(&m)?;
    let at = |p: usize, q: usize| h.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0);
    for p in 0..5 {
        for q in 0..5 {
            if let Some(e) = printed_diamond(p, q) {
                if at(p, q) != e {
                    return Err(Error::Inconsistent(format!("h^({p},{q}) = {} but expected {e}", at(p, q))));
                }
            }
        }
    }
    let branch = [at(2, 1), at(2, 2), at(2, 3)];
    if branch != [0, 0, 0] && branch != [1, 2, 1] {
        return Err(Error::Inconsistent(format!("unexpected branch {branch:?}")));
    }
    let symmetric = (0..5).all(|p| (0..5).all(|q| at(p, q) == at(4 - p, 4 - q)));
    Ok(HodgeTable {
        beta,
        h: (0..5).map(|p| (0..5).map(|q| at(p, q)).collect()).collect(),
        beta_rank,
        branch,
        symmetric,
    })
}

/// Dolbeault model `(H*,*_B ⊗ Λ(w, w̄), ∂̄)` with `∂̄w = β`, `∂̄w̄ = 0`.
pub fn hodge_model(beta: HodgeBeta) -> Result<HodgeTable> {
    match beta {
        HodgeBeta::Rational { u, v } => hodge_over(beta, u, v),
        HodgeBeta::Eisenstein { u, v } => hodge_over(beta, u, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    #[test]
    fn zero_differential_gives_dimensions() {
        let m = derham_model([[int(0), int(0)], [int(0), int(0)]]).unwrap();
        let b = dga_cohomology(&m).unwrap();
        assert_eq!(b.betti, m.algebra.graded_dims());
        assert_eq!(m.algebra.euler_characteristic(), 0);
    }

    #[test]
    fn su3_betti() {
        let m = su3_derham_model();
        m.algebra.validate().unwrap();
        let b = dga_cohomology(&m).unwrap();
        assert_eq!(b.betti, SU3_BETTI);
        assert_eq!(b.euler_characteristic, 0);
    }

    #[test]
    fn basis_change_invariance() {
        for dw in [
            [[int(2), int(1)], [int(1), int(1)]],
            [[int(-1), int(3)], [int(2), int(0)]],
            [[rat(1, 2), int(1)], [int(0), rat(-3, 5)]],
            [[int(1), int(1)], [int(1), int(-1)]],
        ] {
            assert_eq!(dga_cohomology(&derham_model(dw).unwrap()).unwrap().betti, SU3_BETTI);
        }
    }

    #[test]
    fn dependent_differentials_differ() {
        let m = derham_model([[int(1), int(0)], [int(1), int(0)]]).unwrap();
        let b = dga_cohomology(&m).unwrap();
        assert_ne!(b.betti, SU3_BETTI);
        // w₂ − w₁ is closed: H(H ⊗ Λw₁, dw₁ = x₂) ⊗ Λ(w₂ − w₁)
        assert_eq!(b.betti, vec![1, 1, 1, 1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn non_degree_two_rejected() {
        let base = basic_model();
        let mut v = vec![int(0); 6];
        v[3] = int(1);
        assert!(DGAModel::new(base, vec![Generator::new("w", (1, 0))], vec![v]).is_err());
    }

    #[test]
    fn hodge_branches() {
        let g = hodge_model(HodgeBeta::generic()).unwrap();
        assert_eq!((g.beta_rank, g.branch), (2, [0, 0, 0]));
        assert!(g.symmetric);
        let d = hodge_model(HodgeBeta::degenerate()).unwrap();
        assert_eq!((d.beta_rank, d.branch), (1, [1, 2, 1]));
        assert!(d.symmetric);
        assert!(hodge_model(HodgeBeta::rational(int(0), int(0))).is_err());
    }

    #[test]
    fn rational_beta_is_never_degenerate() {
        for u in -4..=4 {
            for v in -4..=4 {
                if (u, v) == (0, 0) {
                    continue;
                }
                let t = hodge_model(HodgeBeta::rational(int(u), int(v))).unwrap();
                assert_eq!(t.branch, [0, 0, 0], "β = {u}·x2 + {v}·x3");
            }
        }
    }
}
