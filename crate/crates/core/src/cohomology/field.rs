use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

fn rzero() -> Rat {
    <Rat as Zero>::zero()
}

fn rone() -> Rat {
    <Rat as One>::one()
}
use serde::{Serialize, Serializer};

use crate::geometry::Rat;

/// Exact coefficient field for the linear algebra of cohomology models.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + From<Rat>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// `a + b·ω` in `ℚ(ω) = ℚ(√−3)`, where `ω = e^{iπ/3}` satisfies
/// `ω² = ω − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: Rat,
    pub b: Rat,
}

impl Eisenstein {
    pub fn new(a: Rat, b: Rat) -> Self {
        Eisenstein { a, b }
    }

    /// The primitive sixth root of unity `ω`.
    pub fn omega() -> Self {
        Eisenstein::new(rzero(), rone())
    }

    /// Complex conjugate `a + b·ω̄ = (a + b) − b·ω`.
    pub fn conj(&self) -> Self {
        Eisenstein::new(self.a + self.b, -self.b)
    }

    /// Field norm `a² + ab + b²`.
    pub fn norm(&self) -> Rat {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let (a, b) = (crate::geometry::rat_to_f64(&self.a), crate::geometry::rat_to_f64(&self.b));
        (a + b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

impl From<Rat> for Eisenstein {
    fn from(a: Rat) -> Self {
        Eisenstein::new(a, rzero())
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Eisenstein::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Eisenstein::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein::new(-self.a, -self.b)
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // ω² = ω − 1
        let bd = self.b * o.b;
        Eisenstein::new(self.a * o.a - bd, self.a * o.b + self.b * o.a + bd)
    }
}

impl Field for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(rzero(), rzero())
    }
    fn one() -> Self {
        Eisenstein::new(rone(), rzero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn inv(&self) -> Self {
        let n = self.norm().recip();
        let c = self.conj();
        Eisenstein::new(c.a * n, c.b * n)
    }
}

impl Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.a), Zero::is_zero(&self.b)) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}ω", self.b),
            (false, false) => write!(f, "{}+{}ω", self.a, self.b),
        }
    }
}

impl Serialize for Eisenstein {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let k = m[i][c].clone() * inv.clone();
            for j in c..ncols {
                let v = m[r][j].clone() * k.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
