//! Agreement between partitions: contingency tables and the adjusted Rand
//! index.

use crate::engine::Partition;
use crate::error::{Error, Result};

/// Overlap counts between the clusters of two partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contingency {
    /// `table[i][j] = |P_i ∩ Q_j|`
    pub table: Vec<Vec<u64>>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    pub n: u64,
}

pub fn contingency(p: &Partition, q: &Partition) -> Result<Contingency> {
    if p.len() != q.len() {
        return Err(Error::Shape(format!(
            "partitions of {} and {} entities",
            p.len(),
            q.len()
        )));
    }
    let mut table = vec![vec![0u64; q.k()]; p.k()];
    for (&a, &b) in p.assignments().iter().zip(q.assignments()) {
        table[a][b] += 1;
    }
    let row_sums = table.iter().map(|r| r.iter().sum()).collect();
    let col_sums = (0..q.k()).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    Ok(Contingency {
        table,
        row_sums,
        col_sums,
        n: p.len() as u64,
    })
}

fn pairs(n: u64) -> u128 {
    let n = n as u128;
    n * n.saturating_sub(1) / 2
}

/// Adjusted Rand index. When the denominator vanishes (both partitions
/// trivial) the result is 1.0 if the partitions group entities identically
/// and 0.0 otherwise.
pub fn ari(p: &Partition, q: &Partition) -> Result<f64> {
    let c = contingency(p, q)?;
    let index: u128 = c.table.iter().flatten().map(|&x| pairs(x)).sum();
    let a: u128 = c.row_sums.iter().map(|&x| pairs(x)).sum();
    let b: u128 = c.col_sums.iter().map(|&x| pairs(x)).sum();
    let total = pairs(c.n);
    // Scaled by `total` to stay in integers until the final division:
    // (index - a*b/total) / ((a + b)/2 - a*b/total)
    let numerator = (index * total) as i128 - (a * b) as i128;
    // Doubled to keep the halving exact.
    let denominator = ((a + b) * total) as i128 - 2 * (a * b) as i128;
    if denominator == 0 || total == 0 {
        return Ok(if same_grouping(&c) { 1.0 } else { 0.0 });
    }
    Ok(2.0 * numerator as f64 / denominator as f64)
}

/// Every non-empty row meets exactly one column and vice versa.
fn same_grouping(c: &Contingency) -> bool {
    let rows_ok = c.table.iter().all(|r| r.iter().filter(|&&x| x > 0).count() <= 1);
    let cols_ok = (0..c.col_sums.len()).all(|j| c.table.iter().filter(|r| r[j] > 0).count() <= 1);
    rows_ok && cols_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(a: &[usize]) -> Partition {
        Partition::from_labels(a.to_vec())
    }

    /// Adjusted index from explicit enumeration of entity pairs.
    fn pair_counting_ari(p: &[usize], q: &[usize]) -> f64 {
        let n = p.len();
        let (mut both, mut in_p, mut in_q, mut total) = (0.0, 0.0, 0.0, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let sp = p[i] == p[j];
                let sq = q[i] == q[j];
                total += 1.0;
                in_p += sp as u8 as f64;
                in_q += sq as u8 as f64;
                both += (sp && sq) as u8 as f64;
            }
        }
        let expected = in_p * in_q / total;
        let max = 0.5 * (in_p + in_q);
        (both - expected) / (max - expected)
    }

    #[test]
    fn tables() {
        let c = contingency(&part(&[0, 0, 1, 1]), &part(&[0, 0, 1, 1])).unwrap();
        assert_eq!(c.table, vec![vec![2, 0], vec![0, 2]]);
        let c = contingency(&part(&[0, 0, 1, 1]), &part(&[0, 1, 0, 1])).unwrap();
        assert_eq!(c.table, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(c.row_sums, vec![2, 2]);
        assert!(contingency(&part(&[0]), &part(&[0, 0])).is_err());
    }

    #[test]
    fn known_values() {
        assert_eq!(ari(&part(&[0, 0, 1, 1]), &part(&[0, 0, 1, 1])).unwrap(), 1.0);
        assert_eq!(ari(&part(&[0, 0, 1, 1]), &part(&[1, 1, 0, 0])).unwrap(), 1.0);
        let x = ari(&part(&[0, 0, 1, 1]), &part(&[0, 1, 0, 1])).unwrap();
        assert!((x + 0.5).abs() < 1e-15);
        assert!((x - pair_counting_ari(&[0, 0, 1, 1], &[0, 1, 0, 1])).abs() < 1e-15);
    }

    #[test]
    fn degenerate_denominator() {
        assert_eq!(ari(&part(&[0, 0, 0]), &part(&[1, 1, 1])).unwrap(), 1.0);
        assert_eq!(ari(&part(&[0, 1, 2]), &part(&[2, 0, 1])).unwrap(), 1.0);
        assert_eq!(ari(&part(&[0, 0, 0]), &part(&[0, 1, 2])).unwrap(), 0.0);
        assert_eq!(ari(&part(&[0]), &part(&[0])).unwrap(), 1.0);
    }

    fn pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (2usize..=12).prop_flat_map(|n| (prop::collection::vec(0usize..4, n), prop::collection::vec(0usize..4, n)))
    }

    proptest! {
        #[test]
        fn matches_pair_counting((p, q) in pair()) {
            let got = ari(&part(&p), &part(&q)).unwrap();
            let oracle = pair_counting_ari(&p, &q);
            if oracle.is_finite() {
                prop_assert!((got - oracle).abs() <= 1e-12, "{} vs {}", got, oracle);
            }
            prop_assert!(got <= 1.0);
        }

        #[test]
        fn symmetric_and_relabel_invariant((p, q) in pair(), shift in 1usize..4) {
            let a = ari(&part(&p), &part(&q)).unwrap();
            prop_assert_eq!(a, ari(&part(&q), &part(&p)).unwrap());
            let relabelled: Vec<usize> = p.iter().map(|&x| (x + shift) % 4).collect();
            prop_assert!((a - ari(&part(&relabelled), &part(&q)).unwrap()).abs() < 1e-12);
        }
    }
}
