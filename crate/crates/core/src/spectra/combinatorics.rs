//! Stars-and-bars enumeration and exact binomial/multinomial coefficients.

use num_bigint::BigUint;
use num_traits::One;

/// All weak compositions of `total` into `parts` nonnegative summands, in
/// reverse lexicographic order: `[total, 0, .., 0]` first, `[0, .., 0, total]` last.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Option<Vec<u32>>,
}

impl WeakCompositions {
    pub fn new(total: u32, parts: usize) -> Self {
        let current = match parts {
            0 if total == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut c = vec![0; parts];
                c[0] = total;
                Some(c)
            }
        };
        WeakCompositions { current }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let d = out.len();
        if d > 0 {
            let mut next = out.clone();
            let last = next[d - 1];
            next[d - 1] = 0;
            if let Some(i) = (0..d - 1).rev().find(|&i| next[i] > 0) {
                next[i] -= 1;
                next[i + 1] = last + 1;
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// Pascal's triangle up to row `n`, as unbounded integers.
pub fn binomial_table(n: u32) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n as usize + 1);
    for r in 0..=n as usize {
        let mut row = vec![BigUint::one(); r + 1];
        for k in 1..r {
            row[k] = &rows[r - 1][k - 1] + &rows[r - 1][k];
        }
        rows.push(row);
    }
    rows
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(Σ k_i)! / Π k_i!`.
pub fn multinomial(parts: &[u32]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &k in parts {
        total += u64::from(k);
        acc *= binomial(total, u64::from(k));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts_match_stars_and_bars() {
        for parts in 1..=5usize {
            for total in 0..=8u32 {
                let all: Vec<_> = WeakCompositions::new(total, parts).collect();
                assert_eq!(
                    BigUint::from(all.len()),
                    binomial(u64::from(total) + parts as u64 - 1, parts as u64 - 1)
                );
                assert!(all.iter().all(|c| c.len() == parts && c.iter().sum::<u32>() == total));
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
            }
        }
    }

    #[test]
    fn small_enumerations() {
        let c: Vec<_> = WeakCompositions::new(2, 2).collect();
        assert_eq!(c, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(WeakCompositions::new(0, 0).count(), 1);
        assert_eq!(WeakCompositions::new(3, 0).count(), 0);
        assert_eq!(WeakCompositions::new(0, 3).collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1]), BigUint::from(2u32));
        assert_eq!(multinomial(&[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(&[0, 0, 5]), BigUint::from(1u32));
        assert_eq!(multinomial(&[6, 6, 6, 6, 6]).to_string(), "1370874167589326400");
        let big = multinomial(&[8, 8, 8, 8, 8]);
        assert_eq!(big.to_string(), "7656714453153197981835000");
        assert!(big > BigUint::from(u64::MAX));
    }

    #[test]
    fn table_matches_direct() {
        let t = binomial_table(12);
        for n in 0..=12u32 {
            for k in 0..=n {
                assert_eq!(t[n as usize][k as usize], binomial(n.into(), k.into()));
            }
        }
    }
}
