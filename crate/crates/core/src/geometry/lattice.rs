use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows<const N: usize>(rows: &[[i128; N]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Precondition("matrix needs at least one row".into()));
        }
        Ok(IntMat {
            rows: rows.len(),
            cols: N,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    fn at(&mut self, r: usize, c: usize) -> &mut i128 {
        &mut self.data[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, k: i128) {
        for c in 0..self.cols {
            let v = self.get(src, c);
            *self.at(dst, c) -= k * v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, k: i128) {
        for r in 0..self.rows {
            let v = self.get(r, src);
            *self.at(r, dst) -= k * v;
        }
    }
}

/// Rank and invariant factors `d₁ | d₂ | …` (all positive, one per unit of
/// rank) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    pub factors: Vec<i128>,
}

impl SmithForm {
    /// Order of the torsion part `∏ dᵢ`.
    pub fn torsion_order(&self) -> i128 {
        self.factors.iter().product()
    }
}

/// Smith normal form by unimodular row and column operations.
pub fn smith_invariant_factors(m: &IntMat) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the trailing block
        let pivot = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| a.get(r, c) != 0)
            .min_by_key(|&(r, c)| a.get(r, c).abs());
        let Some((pr, pc)) = pivot else { break };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);

        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for r in t + 1..rows {
                let q = Integer::div_floor(&a.get(r, t), &p);
                a.row_axpy(r, t, q);
                if a.get(r, t) != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                let q = Integer::div_floor(&a.get(t, c), &p);
                a.col_axpy(c, t, q);
                if a.get(t, c) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| a.get(r, c) % p != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        a.row_axpy(t, r, -1);
                        continue;
                    }
                }
            }
            // move the new smallest entry of row/column t to the pivot
            let best = (t..rows)
                .map(|r| (r, t))
                .chain((t + 1..cols).map(|c| (t, c)))
                .filter(|&(r, c)| a.get(r, c) != 0)
                .min_by_key(|&(r, c)| a.get(r, c).abs())
                .expect("pivot row/column is nonzero");
            a.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
        }
        t += 1;
    }
    let factors: Vec<i128> = (0..t).map(|i| a.get(i, i).abs()).collect();
    SmithForm { rank: t, factors }
}

/// A basis of the row lattice of a two-column integer matrix, in upper
/// triangular (Hermite-like) form.
pub fn row_lattice_basis(rows: &[[i128; 2]]) -> Vec<[i128; 2]> {
    let mut work: Vec<[i128; 2]> = rows.iter().copied().filter(|r| *r != [0, 0]).collect();
    let mut basis = Vec::new();
    // eliminate the first column into a single row
    let mut head: Option<[i128; 2]> = None;
    let mut rest = Vec::new();
    for r in work.drain(..) {
        match head {
            None if r[0] != 0 => head = Some(r),
            None => rest.push(r),
            Some(h) if r[0] == 0 => {
                rest.push(r);
                head = Some(h);
            }
            Some(h) => {
                let e = h[0].extended_gcd(&r[0]);
                let g = e.gcd;
                let new_head = [e.x * h[0] + e.y * r[0], e.x * h[1] + e.y * r[1]];
                let (ha, ra) = (h[0] / g, r[0] / g);
                let tail = [ha * r[0] - ra * h[0], ha * r[1] - ra * h[1]];
                debug_assert_eq!(tail[0], 0);
                head = Some(new_head);
                rest.push(tail);
            }
        }
    }
    let g2 = rest.iter().fold(0i128, |acc, r| acc.gcd(&r[1]));
    if let Some(mut h) = head {
        if h[0] < 0 {
            h = [-h[0], -h[1]];
        }
        if g2 != 0 {
            h[1] = h[1].mod_floor(&g2);
        }
        basis.push(h);
    }
    if g2 != 0 {
        basis.push([0, g2]);
    }
    basis
}

/// Invariant factors of `L_sup / L_sub` for row lattices `L_sub ⊆ L_sup`
/// of full rank two.
pub fn lattice_quotient_factors(sub: &[[i128; 2]], sup: &[[i128; 2]]) -> Result<Vec<i128>> {
    let basis = row_lattice_basis(sup);
    if basis.len() != 2 {
        return Err(Error::Precondition("super-lattice is not of full rank".into()));
    }
    let [b0, b1] = [basis[0], basis[1]];
    let det = b0[0] * b1[1] - b0[1] * b1[0];
    let mut coords = Vec::with_capacity(sub.len());
    for r in sub {
        // r = u·b0 + v·b1
        let u_num = r[0] * b1[1] - r[1] * b1[0];
        let v_num = b0[0] * r[1] - b0[1] * r[0];
        if u_num % det != 0 || v_num % det != 0 {
            return Err(Error::Precondition(format!("{r:?} is not in the super-lattice")));
        }
        coords.push([u_num / det, v_num / det]);
    }
    let snf = smith_invariant_factors(&IntMat::from_rows(&coords)?);
    if snf.rank != 2 {
        return Err(Error::Precondition("sub-lattice is not of full rank".into()));
    }
    Ok(snf.factors)
}
