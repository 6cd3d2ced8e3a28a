use std::collections::BTreeMap;

use super::Partition;

/// `lambda` in Lambda(n, m): non-increasing multiplicities and `m` parts.
pub fn in_lambda(p: &Partition, m: usize) -> bool {
    p.length() == m && p.multiplicities().windows(2).all(|w| w[0] >= w[1])
}

/// `lambda` in Omega(n, m): no part divisible by 3, `m_{3j-2} >= m_{3j+1}`,
/// `m_{3j-1} >= m_{3j+2}` and `3 l(lambda) = m + m_1`.
pub fn in_omega(p: &Partition, m: usize) -> bool {
    in_omega_family(p) && omega_m(p) == Some(m)
}

fn in_omega_family(p: &Partition) -> bool {
    let top = p.largest_part();
    (1..=top).all(|j| {
        if j % 3 == 0 {
            p.multiplicity(j) == 0
        } else {
            p.multiplicity(j) >= p.multiplicity(j + 3)
        }
    })
}

/// The `m` with `3 l(lambda) = m + m_1`, when positive.
pub fn omega_m(p: &Partition) -> Option<usize> {
    (3 * p.length())
        .checked_sub(p.multiplicity(1))
        .filter(|&m| m > 0)
}

/// Partitions of `n` into parts drawn from `allowed` (strictly increasing,
/// all positive). Each result maps part index to its count.
fn partitions_into(n: usize, allowed: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        rest: usize,
        idx: usize,
        allowed: &[usize],
        counts: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest == 0 {
            out.push(counts.clone());
            return;
        }
        if idx == 0 {
            return;
        }
        let i = idx - 1;
        let part = allowed[i];
        for c in (0..=rest / part).rev() {
            counts[i] = c;
            go(rest - c * part, i, allowed, counts, out);
        }
        counts[i] = 0;
    }
    let usable = allowed.iter().take_while(|&&a| a <= n).count();
    let mut out = Vec::new();
    go(n, usable, allowed, &mut vec![0; usable], &mut out);
    out
}

fn triangular(l: usize) -> usize {
    l * (l + 1) / 2
}

/// Counts `a_l` of triangular parts `T_l = l(l+1)/2` over the partitions of
/// `n` into triangular numbers; entry `l - 1` is `a_l`.
pub fn partitions_into_triangular(n: usize) -> Vec<Vec<usize>> {
    let parts: Vec<usize> = (1..)
        .map(triangular)
        .take_while(|&t| t <= n.max(1))
        .collect();
    partitions_into(n, &parts)
}

/// `m_j = sum_{l >= j} a_l`.
pub fn triangular_to_partition(counts: &[usize]) -> Partition {
    let mut mult = vec![0; counts.len()];
    let mut acc = 0;
    for j in (0..counts.len()).rev() {
        acc += counts[j];
        mult[j] = acc;
    }
    Partition::from_multiplicities(mult)
}

/// Inverse of [`triangular_to_partition`]: `a_l = m_l - m_{l+1}`. `None` when
/// the multiplicities increase somewhere.
pub fn triangular_from_partition(p: &Partition) -> Option<Vec<usize>> {
    let top = p.largest_part();
    (1..=top)
        .map(|l| p.multiplicity(l).checked_sub(p.multiplicity(l + 1)))
        .collect()
}

/// Lambda(n, m) through the triangular-number bijection, in enumeration order.
pub fn lambda_nm(n: usize, m: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = partitions_into_triangular(n)
        .iter()
        .map(|c| triangular_to_partition(c))
        .filter(|p| p.length() == m)
        .collect();
    sort_enumeration_order(&mut out);
    out
}

/// Lambda(n, m) for all `m` at once, keyed by `m`.
pub(crate) fn lambda_by_length(n: usize) -> BTreeMap<usize, Vec<Partition>> {
    let mut out: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for c in partitions_into_triangular(n) {
        let p = triangular_to_partition(&c);
        out.entry(p.length()).or_default().push(p);
    }
    out.values_mut().for_each(|v| sort_enumeration_order(v));
    out
}

/// Counts of the generalized pentagonal parts `P_i = i(3i-1)/2` (`plus`) and
/// `P_{-i} = i(3i+1)/2` (`minus`), entry `i - 1` for index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonalCounts {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl PentagonalCounts {
    pub fn size(&self) -> usize {
        let plus: usize = self
            .plus
            .iter()
            .enumerate()
            .map(|(i, c)| c * pent(i + 1, true))
            .sum();
        let minus: usize = self
            .minus
            .iter()
            .enumerate()
            .map(|(i, c)| c * pent(i + 1, false))
            .sum();
        plus + minus
    }
}

fn pent(i: usize, plus: bool) -> usize {
    if plus {
        i * (3 * i - 1) / 2
    } else {
        i * (3 * i + 1) / 2
    }
}

/// Partitions of `n` into generalized pentagonal numbers.
pub fn partitions_into_pentagonal(n: usize) -> Vec<PentagonalCounts> {
    // interleaved parts 1, 2, 5, 7, 12, 15, ... (plus_i at 2i-2, minus_i at 2i-1)
    let mut parts = Vec::new();
    for i in 1.. {
        let (p, q) = (pent(i, true), pent(i, false));
        if p > n.max(1) {
            break;
        }
        parts.push(p);
        parts.push(q);
    }
    partitions_into(n, &parts)
        .into_iter()
        .map(|c| {
            let len = parts.len() / 2;
            let get = |k: usize| c.get(k).copied().unwrap_or(0);
            PentagonalCounts {
                plus: (0..len).map(|i| get(2 * i)).collect(),
                minus: (0..len).map(|i| get(2 * i + 1)).collect(),
            }
        })
        .collect()
}

/// `m_{3i-2} = sum_{l >= i} plus_l`, `m_{3i-1} = sum_{l >= i} minus_l`.
pub fn pentagonal_to_partition(c: &PentagonalCounts) -> Partition {
    let len = c.plus.len().max(c.minus.len());
    let mut mult = vec![0; 3 * len];
    let (mut sp, mut sm) = (0, 0);
    for i in (1..=len).rev() {
        sp += c.plus.get(i - 1).copied().unwrap_or(0);
        sm += c.minus.get(i - 1).copied().unwrap_or(0);
        mult[3 * i - 3] = sp;
        mult[3 * i - 2] = sm;
    }
    Partition::from_multiplicities(mult)
}

/// Inverse of [`pentagonal_to_partition`]; `None` outside the image.
pub fn pentagonal_from_partition(p: &Partition) -> Option<PentagonalCounts> {
    if !in_omega_family(p) {
        return None;
    }
    let len = p.largest_part().div_ceil(3);
    let diff = |j: usize| p.multiplicity(j) - p.multiplicity(j + 3);
    Some(PentagonalCounts {
        plus: (1..=len).map(|i| diff(3 * i - 2)).collect(),
        minus: (1..=len).map(|i| diff(3 * i - 1)).collect(),
    })
}

/// Omega(n, m) through the pentagonal bijection, in enumeration order.
pub fn omega_nm(n: usize, m: usize) -> Vec<Partition> {
    omega_by_m(n).remove(&m).unwrap_or_default()
}

/// Omega(n, m) for all `m` at once, keyed by `m`.
pub(crate) fn omega_by_m(n: usize) -> BTreeMap<usize, Vec<Partition>> {
    let mut out: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for c in partitions_into_pentagonal(n) {
        let p = pentagonal_to_partition(&c);
        if let Some(m) = omega_m(&p) {
            out.entry(m).or_default().push(p);
        }
    }
    out.values_mut().for_each(|v| sort_enumeration_order(v));
    out
}

/// Same order as [`super::partitions_of`]: parts compared lexicographically,
/// larger first.
fn sort_enumeration_order(v: &mut [Partition]) {
    v.sort_by_key(|p| std::cmp::Reverse(p.parts()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn brute_lambda(n: usize, m: usize) -> Vec<Partition> {
        partitions_of(n).filter(|p| in_lambda(p, m)).collect()
    }

    fn brute_omega(n: usize, m: usize) -> Vec<Partition> {
        partitions_of(n).filter(|p| in_omega(p, m)).collect()
    }

    fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    #[test]
    fn small_lambda_sets() {
        assert_eq!(lambda_nm(1, 1), vec![Partition::from_parts(&[1])]);
        assert!(lambda_nm(2, 1).is_empty());
        assert_eq!(lambda_nm(2, 2), vec![Partition::from_parts(&[1, 1])]);
    }

    #[test]
    fn small_omega_sets() {
        assert_eq!(omega_nm(1, 2), vec![Partition::from_parts(&[1])]);
        assert_eq!(omega_nm(3, 5), vec![Partition::from_parts(&[2, 1])]);
        assert_eq!(omega_nm(3, 6), vec![Partition::from_parts(&[1, 1, 1])]);
        assert!(omega_nm(3, 4).is_empty());
    }

    #[test]
    fn bijective_sets_match_filters() {
        for n in 1..=14 {
            for m in 1..=n {
                assert_eq!(lambda_nm(n, m), brute_lambda(n, m), "Lambda({n},{m})");
            }
            for m in 1..=2 * n {
                assert_eq!(omega_nm(n, m), brute_omega(n, m), "Omega({n},{m})");
            }
        }
    }

    #[test]
    fn bijections_round_trip() {
        for n in 0..=14 {
            for c in partitions_into_triangular(n) {
                let p = triangular_to_partition(&c);
                assert_eq!(p.size(), n);
                let back = triangular_from_partition(&p).unwrap();
                assert_eq!(trimmed(back), trimmed(c));
            }
            for c in partitions_into_pentagonal(n) {
                assert_eq!(c.size(), n);
                let p = pentagonal_to_partition(&c);
                assert_eq!(p.size(), n);
                let back = pentagonal_from_partition(&p).unwrap();
                assert_eq!(pentagonal_to_partition(&back), p);
            }
        }
    }
}
