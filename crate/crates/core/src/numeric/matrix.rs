use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer matrix `(a b; c d)` with determinant one, serialized as `[a, b, c, d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct MoebiusMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MoebiusMatrix {
    pub const IDENTITY: Self = Self {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const S: Self = Self {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    pub const T: Self = Self {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const T_INV: Self = Self {
        a: 1,
        b: -1,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!(
                "({a} {b}; {c} {d}) has determinant {}",
                a * d - b * c
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn in_gamma0_3(&self) -> bool {
        self.c % 3 == 0
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// `c tau + d`.
    pub fn automorphy(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    /// `(a tau + b)/(c tau + d)`.
    pub fn act(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.automorphy(tau)
    }
}

impl TryFrom<[i64; 4]> for MoebiusMatrix {
    type Error = Error;

    fn try_from(e: [i64; 4]) -> Result<Self> {
        Self::new(e[0], e[1], e[2], e[3])
    }
}

impl From<MoebiusMatrix> for [i64; 4] {
    fn from(m: MoebiusMatrix) -> Self {
        m.entries()
    }
}

impl fmt::Display for MoebiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Longest generator word used by the samplers.
pub const MAX_WORD_LENGTH: usize = 6;

const DRAW_CAP: usize = 1_000_000;

fn random_word(rng: &mut ChaCha8Rng) -> MoebiusMatrix {
    let len = rng.gen_range(1..=MAX_WORD_LENGTH);
    let gens = [MoebiusMatrix::S, MoebiusMatrix::T, MoebiusMatrix::T_INV];
    (0..len).fold(MoebiusMatrix::IDENTITY, |m, _| {
        m.mul(&gens[rng.gen_range(0..3)])
    })
}

/// `count` distinct matrices from random words of length at most
/// [`MAX_WORD_LENGTH`] in `S`, `T`, `T^{-1}`, optionally restricted to
/// `Gamma_0(3)` by rejection. Deterministic in `seed`.
pub fn sample_matrices(count: usize, gamma0_3: bool, seed: u64) -> Result<Vec<MoebiusMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..DRAW_CAP {
        if out.len() == count {
            return Ok(out);
        }
        let m = random_word(&mut rng);
        if gamma0_3 && !m.in_gamma0_3() {
            continue;
        }
        if seen.insert(m) {
            out.push(m);
        }
    }
    Err(Error::Resource {
        requested: count,
        cap: out.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_enforced() {
        assert!(MoebiusMatrix::new(1, 1, 1, 1).is_err());
        assert!(MoebiusMatrix::new(2, 1, 1, 1).is_ok());
        let m: std::result::Result<MoebiusMatrix, _> = serde_json::from_str("[1,2,3,4]");
        assert!(m.is_err());
    }

    #[test]
    fn generators() {
        let s2 = MoebiusMatrix::S.mul(&MoebiusMatrix::S);
        assert_eq!(s2.entries(), [-1, 0, 0, -1]);
        assert_eq!(
            MoebiusMatrix::T.mul(&MoebiusMatrix::T_INV),
            MoebiusMatrix::IDENTITY
        );
        let tau = Complex64::new(0.3, 1.1);
        assert!((MoebiusMatrix::S.act(tau) + tau.inv()).norm() < 1e-15);
    }

    #[test]
    fn sampling_is_seeded_and_distinct() {
        let a = sample_matrices(20, false, 7).unwrap();
        let b = sample_matrices(20, false, 7).unwrap();
        assert_eq!(a, b);
        let set: BTreeSet<_> = a.iter().collect();
        assert_eq!(set.len(), 20);
        let g = sample_matrices(20, true, 7).unwrap();
        assert!(g.iter().all(|m| m.in_gamma0_3()));
        assert!(g.iter().any(|m| m.c() != 0));
    }

    #[test]
    fn json_shape() {
        let m = MoebiusMatrix::new(1, 0, 3, 1).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[1,0,3,1]");
    }
}
