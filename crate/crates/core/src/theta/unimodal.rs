use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::families::unimodal_zeta;
use crate::error::{Error, Result};

/// Default cap on the size accepted by [`unimodal_bruteforce`].
pub const UNIMODAL_CAP: usize = 18;

/// Number of marked unimodal sequences of a fixed size, by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankHistogram {
    pub size: usize,
    #[serde(with = "pairs")]
    pub counts: BTreeMap<i64, u64>,
}

impl RankHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.counts
            .iter()
            .all(|(r, c)| self.counts.get(&-r) == Some(c))
    }
}

mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<i64, u64>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, u64)> = m.iter().map(|(a, b)| (*a, *b)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, u64>, D::Error> {
        Ok(Vec::<(i64, u64)>::deserialize(d)?.into_iter().collect())
    }
}

/// Enumerates every composition of `n` and every admissible peak position,
/// counting rank `(parts after the peak) - (parts before it)`.
pub fn unimodal_bruteforce(n: usize) -> Result<RankHistogram> {
    unimodal_bruteforce_capped(n, UNIMODAL_CAP)
}

pub fn unimodal_bruteforce_capped(n: usize, cap: usize) -> Result<RankHistogram> {
    if n > cap {
        return Err(Error::Resource { requested: n, cap });
    }
    let mut counts = BTreeMap::new();
    if n == 0 {
        counts.insert(0, 1);
        return Ok(RankHistogram { size: 0, counts });
    }
    // composition <-> subset of the n-1 cut points
    for mask in 0u32..(1u32 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask & (1 << i) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        let len = parts.len();
        for p in 0..len {
            let rising = parts[..=p].windows(2).all(|w| w[0] <= w[1]);
            let falling = parts[p..].windows(2).all(|w| w[0] >= w[1]);
            if rising && falling {
                let rank = (len - 1 - p) as i64 - p as i64;
                *counts.entry(rank).or_insert(0) += 1;
            }
        }
    }
    Ok(RankHistogram { size: n, counts })
}

/// Rank histograms read off the `zeta`-expansion of the generating function.
pub fn unimodal_from_series(order: usize) -> Result<Vec<RankHistogram>> {
    let u = unimodal_zeta(order);
    (0..=order)
        .map(|n| {
            let mut counts = BTreeMap::new();
            for (alpha, c) in u.row(n) {
                if !alpha.is_integer() || !c.is_integer() {
                    return Err(Error::Invariant(format!(
                        "non-integral term {c} zeta^{alpha} in the rank generating function"
                    )));
                }
                let rank = alpha.to_integer().to_i64().expect("small rank");
                let count = c.to_integer().to_u64().ok_or_else(|| {
                    Error::Invariant(format!("negative count {c} at rank {rank}"))
                })?;
                counts.insert(rank, count);
            }
            Ok(RankHistogram { size: n, counts })
        })
        .collect()
}
