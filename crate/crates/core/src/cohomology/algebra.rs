use std::collections::BTreeMap;

use serde::Serialize;

use super::field::{rank, Field};
use crate::error::{Error, Result};
use crate::geometry::{int, Rat};

/// A finite-dimensional graded-commutative algebra with a fixed basis.
///
/// Every basis element carries a bidegree `(p, q)`; its total degree is
/// `p + q`. Basis element `0` is the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra<F> {
    pub labels: Vec<String>,
    pub bidegrees: Vec<(u32, u32)>,
    /// `table[i][j]` holds the coordinates of `e_i · e_j`.
    pub table: Vec<Vec<Vec<F>>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        let (p, q) = self.bidegrees[i];
        p + q
    }

    pub fn top_degree(&self) -> u32 {
        (0..self.dim()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// `dims[k] = dim A^k` for `k = 0..=top`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.top_degree() as usize + 1];
        for i in 0..self.dim() {
            dims[self.degree(i) as usize] += 1;
        }
        dims
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.graded_dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let k = xi.clone() * yj.clone();
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o = o.clone() + k.clone() * t.clone();
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[F], n: u32) -> Vec<F> {
        (0..n).fold(self.basis_vector(0), |acc, _| self.mul(&acc, x))
    }

    /// Checks the unit, homogeneity of products, associativity and graded
    /// commutativity on all basis pairs and triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |what: &str| Err(Error::Inconsistent(format!("algebra is not {what}")));
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.table[0][i] != e || self.table[i][0] != e {
                return bad("unital");
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (pi, qi) = self.bidegrees[i];
                let (pj, qj) = self.bidegrees[j];
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() && self.bidegrees[k] != (pi + pj, qi + qj) {
                        return bad("bigraded");
                    }
                }
                let sign = if self.degree(i) * self.degree(j) % 2 == 1 { -F::one() } else { F::one() };
                let flipped: Vec<F> = self.table[j][i].iter().map(|c| c.clone() * sign.clone()).collect();
                if self.table[i][j] != flipped {
                    return bad("graded commutative");
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    if self.mul(&self.mul(&ei, &ej), &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        return bad("associative");
                    }
                }
            }
        }
        Ok(())
    }

    /// Rank of `v ↦ x·v` from degree `from` to degree `from + deg x`.
    pub fn multiplication_rank(&self, x: &[F], from: u32) -> usize {
        let rows: Vec<Vec<F>> = (0..self.dim())
            .filter(|&i| self.degree(i) == from)
            .map(|i| self.mul(x, &self.basis_vector(i)))
            .collect();
        rank(&rows)
    }

    /// Changes coefficients along `ℚ → F`.
    pub fn extend<G: Field>(&self) -> GradedAlgebra<G>
    where
        F: Into<Rat>,
    {
        GradedAlgebra {
            labels: self.labels.clone(),
            bidegrees: self.bidegrees.clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(|c| G::from(c.clone().into())).collect()).collect())
                .collect(),
        }
    }
}

/// Monomials `x₂^a x₃^b` of the normal form, in basis order.
const MONOMIALS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)];

type Poly = BTreeMap<(u32, u32), Rat>;

/// Normal form in `ℚ[x₂, x₃]` modulo `x₂² + x₂x₃ + x₃²` and `x₃³`, which
/// after eliminating `x₁ = −x₂ − x₃` generate the ideal of symmetric
/// functions of positive degree.
fn reduce(mut p: Poly) -> Poly {
    loop {
        let Some((&(a, b), &c)) = p.iter().find(|(&(a, _), _)| a >= 2) else {
            break;
        };
        p.remove(&(a, b));
        for m in [(a - 1, b + 1), (a - 2, b + 2)] {
            *p.entry(m).or_default() -= c;
        }
    }
    p.retain(|&(_, b), c| b < 3 && *c != int(0));
    p
}

/// `H*_B` modelled as `ℚ[x₁, x₂, x₃]/(e₁, e₂, e₃)`, `deg x_i = 2`, with
/// basis `1, x₂, x₃, x₂x₃, x₃², x₂x₃²` and `x_i` of bidegree `(1, 1)`.
pub fn basic_model() -> GradedAlgebra<Rat> {
    let labels = ["1", "x2", "x3", "x2*x3", "x3^2", "x2*x3^2"].map(String::from).to_vec();
    let bidegrees = MONOMIALS.iter().map(|&(a, b)| (a + b, a + b)).collect();
    let table = MONOMIALS
        .iter()
        .map(|&(a1, b1)| {
            MONOMIALS
                .iter()
                .map(|&(a2, b2)| {
                    let nf = reduce(Poly::from([((a1 + a2, b1 + b2), int(1))]));
                    MONOMIALS.iter().map(|m| nf.get(m).copied().unwrap_or(int(0))).collect()
                })
                .collect()
        })
        .collect();
    GradedAlgebra { labels, bidegrees, table }
}

/// `x₁ = −x₂ − x₃` in the basis of [`basic_model`].
pub fn x1() -> Vec<Rat> {
    vec![int(0), int(-1), int(-1), int(0), int(0), int(0)]
}

/// The Lefschetz class `[ω] = x₁ − x₃ = −x₂ − 2x₃`.
pub fn lefschetz_class() -> Vec<Rat> {
    vec![int(0), int(-1), int(-2), int(0), int(0), int(0)]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LefschetzReport {
    /// Coordinates of `[ω]³` in degree 6.
    pub omega_cubed: String,
    pub cube_nonzero: bool,
    /// `det` of `[ω]·: H² → H⁴`.
    pub degree2_determinant: String,
    /// `[ω]³ : H⁰ → H⁶` and `[ω] : H² → H⁴` are isomorphisms.
    pub hard_lefschetz: bool,
}

pub fn lefschetz_check(h: &GradedAlgebra<Rat>) -> LefschetzReport {
    let w = lefschetz_class();
    let cube = h.power(&w, 3);
    let top = h.dim() - 1;
    let mw2 = |i: usize| h.mul(&w, &h.basis_vector(i));
    let (c2, c3) = (mw2(1), mw2(2));
    // columns: images of x₂, x₃ in the basis (x₂x₃, x₃²)
    let det = c2[3] * c3[4] - c2[4] * c3[3];
    // ω^{3−2j} : H^{2j} → H^{6−2j}
    let dims = h.graded_dims();
    let hard = [(0u32, 3u32), (2, 1)].iter().all(|&(from, k)| {
        let src = dims[from as usize];
        h.multiplication_rank(&h.power(&w, k), from) == src && dims[(from + 2 * k) as usize] == src
    });
    LefschetzReport {
        omega_cubed: format!("{}·x2*x3^2", cube[top]),
        cube_nonzero: cube[top] != int(0) && cube[..top].iter().all(|c| *c == int(0)),
        degree2_determinant: det.to_string(),
        hard_lefschetz: hard && det != int(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `dim ℚ[x₁,x₂,x₃]_k / I_k` by brute-force linear algebra on monomials,
    /// with `I` generated by the elementary symmetric polynomials.
    fn hilbert_oracle(k: u32) -> usize {
        let monos = |d: u32| -> Vec<[u32; 3]> {
            let mut v = Vec::new();
            for a in 0..=d {
                for b in 0..=d - a {
                    v.push([a, b, d - a - b]);
                }
            }
            v
        };
        let target = monos(k);
        let idx = |m: &[u32; 3]| target.iter().position(|t| t == m).unwrap();
        let elem: [Vec<[u32; 3]>; 3] = [
            vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            vec![[1, 1, 0], [1, 0, 1], [0, 1, 1]],
            vec![[1, 1, 1]],
        ];
        let mut rows = Vec::new();
        for (e, terms) in elem.iter().enumerate() {
            let de = e as u32 + 1;
            if de > k {
                continue;
            }
            for m in monos(k - de) {
                let mut row = vec![int(0); target.len()];
                for t in terms {
                    row[idx(&[m[0] + t[0], m[1] + t[1], m[2] + t[2]])] += int(1);
                }
                rows.push(row);
            }
        }
        target.len() - rank(&rows)
    }

    #[test]
    fn graded_dimensions_match_oracle() {
        let h = basic_model();
        h.validate().unwrap();
        assert_eq!(h.graded_dims(), vec![1, 0, 2, 0, 2, 0, 1]);
        for k in 0..=5u32 {
            let expect = h.graded_dims().get(2 * k as usize).copied().unwrap_or(0);
            assert_eq!(hilbert_oracle(k), expect, "polynomial degree {k}");
        }
        assert_eq!(h.euler_characteristic(), 6);
    }

    #[test]
    fn symmetric_functions_vanish() {
        let h = basic_model();
        let (a, b, c) = (x1(), h.basis_vector(1), h.basis_vector(2));
        let sum: Vec<Rat> = (0..6).map(|i| a[i] + b[i] + c[i]).collect();
        assert!(sum.iter().all(|x| *x == int(0)));
        let ab = h.mul(&a, &b);
        let ac = h.mul(&a, &c);
        let bc = h.mul(&b, &c);
        assert!((0..6).all(|i| ab[i] + ac[i] + bc[i] == int(0)));
        assert!(h.mul(&ab, &c).iter().all(|x| *x == int(0)));
    }

    #[test]
    fn lefschetz() {
        let h = basic_model();
        let rep = lefschetz_check(&h);
        assert!(rep.cube_nonzero && rep.hard_lefschetz);
        assert_eq!(rep.omega_cubed, "-6·x2*x3^2");
        assert_eq!(rep.degree2_determinant, "3");
    }
}
