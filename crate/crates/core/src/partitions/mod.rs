//! Integer partitions in multiplicity form, the constrained families used by
//! the closed-form coefficient formulas, and partition traces.

mod coeffs;
mod sets;
mod trace;

pub use coeffs::{
    a_nm, a_row, a_threshold, b_nm, b_row, b_threshold, coefficient_table, multinomial,
    CoefficientKind, CoefficientRow,
};
pub use sets::{
    in_lambda, in_omega, lambda_nm, omega_m, omega_nm, partitions_into_pentagonal,
    partitions_into_triangular, pentagonal_from_partition, pentagonal_to_partition,
    triangular_from_partition, triangular_to_partition, PentagonalCounts,
};
pub use trace::{cycle_index_check, partition_trace, TraceWeight};

use serde::{Deserialize, Serialize};

/// Partition `(1^{m_1} 2^{m_2} ...)` stored by multiplicities.
///
/// Trailing zero multiplicities are never stored, so two partitions are equal
/// iff their vectors are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    mult: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { mult: Vec::new() }
    }

    /// From `(m_1, m_2, ...)`.
    pub fn from_multiplicities(mut mult: Vec<usize>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Self { mult }
    }

    /// From a list of parts in any order. Zero parts are ignored.
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut mult = Vec::new();
        for &p in parts.iter().filter(|&&p| p > 0) {
            if mult.len() < p {
                mult.resize(p, 0);
            }
            mult[p - 1] += 1;
        }
        Self::from_multiplicities(mult)
    }

    /// `m_j`, zero beyond the largest part.
    pub fn multiplicity(&self, j: usize) -> usize {
        assert!(j >= 1, "parts are positive");
        self.mult.get(j - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn size(&self) -> usize {
        self.mult.iter().enumerate().map(|(i, m)| (i + 1) * m).sum()
    }

    /// Number of parts `l(lambda)`.
    pub fn length(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn largest_part(&self) -> usize {
        self.mult.len()
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        for j in (1..=self.mult.len()).rev() {
            out.extend(std::iter::repeat_n(j, self.mult[j - 1]));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return f.write_str("()");
        }
        let body: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, m)| format!("{}^{}", i + 1, m))
            .collect();
        write!(f, "({})", body.join(" "))
    }
}

/// Iterator over the partitions of `n`, parts compared lexicographically in
/// non-increasing order and the largest partition `(n)` first.
pub struct Partitions {
    current: Option<Vec<usize>>,
}

/// Every partition of `n` exactly once; `n = 0` yields the empty partition.
pub fn partitions_of(n: usize) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        let out = Partition::from_parts(&parts);
        self.current = next_descending(parts);
        Some(out)
    }
}

fn next_descending(mut parts: Vec<usize>) -> Option<Vec<usize>> {
    // strip trailing ones, then decrement the last part above one
    let mut ones = 0;
    while parts.last() == Some(&1) {
        parts.pop();
        ones += 1;
    }
    let last = parts.pop()?;
    let p = last - 1;
    let mut rest = ones + 1;
    parts.push(p);
    while rest > 0 {
        let take = rest.min(p);
        parts.push(take);
        rest -= take;
    }
    Some(parts)
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}
