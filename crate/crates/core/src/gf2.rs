//! Rank of matrices over GF(2).

/// Rank of a matrix given as rows of set column indices (repeats cancel).
pub fn rank(rows: &[Vec<usize>], ncols: usize) -> usize {
    let words = ncols.div_ceil(64).max(1);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0u64; words];
            for &c in r {
                v[c / 64] ^= 1 << (c % 64);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(piv) = (rank..m.len()).find(|&i| m[i][w] & b != 0) else { continue };
        m.swap(rank, piv);
        let pr = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                row.iter_mut().zip(&pr).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[], 3), 0);
        assert_eq!(rank(&[vec![0, 1], vec![1, 2], vec![0, 2]], 3), 2);
        assert_eq!(rank(&[vec![0], vec![1], vec![2]], 3), 3);
        assert_eq!(rank(&[vec![0, 0]], 1), 0);
        assert_eq!(rank(&[vec![70], vec![70, 3]], 80), 2);
    }
}
