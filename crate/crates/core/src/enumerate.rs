//! Deterministic enumeration of projective points and of subspaces via
//! reduced row-echelon matrices.

use crate::budget::saturating_pow;
use crate::field::{Field, Scalar};
use crate::linalg::Mat;

/// Number of points of the projective space P^{n−1}(GF(q)).
pub fn projective_point_count(q: u64, n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    (saturating_pow(q, n) - 1) / (q as u128 - 1)
}

/// Representatives of the lines of `field^n`: first non-zero coordinate is 1.
///
/// Ordered by the position of the leading 1, then lexicographically on the
/// remaining coordinates (earlier coordinates vary slowest).
pub fn projective_points(field: Field, n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let q = field.order();
    (0..n).flat_map(move |lead| {
        let tail = n - lead - 1;
        (0..q.pow(tail as u32)).map(move |mut idx| {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            for pos in (lead + 1..n).rev() {
                v[pos] = field.element(idx % q);
                idx /= q;
            }
            v
        })
    })
}

/// All vectors of `field^n`, counter order with the first coordinate slowest.
pub fn all_vectors(field: Field, n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let q = field.order();
    (0..q.pow(n as u32)).map(move |mut idx| {
        let mut v = vec![field.zero(); n];
        for pos in (0..n).rev() {
            v[pos] = field.element(idx % q);
            idx /= q;
        }
        v
    })
}

/// Gaussian binomial `[k choose d]_q`: the number of d-dimensional subspaces of GF(q)^k.
pub fn gaussian_binomial(k: usize, d: usize, q: u64) -> u128 {
    if d > k {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num = num.saturating_mul(q.saturating_pow((k - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

/// One pivot pattern of a d×k reduced row-echelon matrix.
#[derive(Clone, Debug)]
pub struct EchelonPattern {
    pub pivots: Vec<usize>,
    /// Positions `(row, col)` that are free: `col > pivots[row]` and not a pivot column.
    pub free: Vec<(usize, usize)>,
}

impl EchelonPattern {
    pub fn count(&self, q: u64) -> u128 {
        saturating_pow(q, self.free.len())
    }

    /// The matrix with free entries given by `index` in base-q (first free position slowest).
    pub fn matrix(&self, field: Field, k: usize, mut index: u64) -> Mat {
        let q = field.order();
        let d = self.pivots.len();
        let mut m = Mat::zeros(field, d, k);
        for (row, &p) in self.pivots.iter().enumerate() {
            m[(row, p)] = field.one();
        }
        for &(r, c) in self.free.iter().rev() {
            m[(r, c)] = field.element(index % q);
            index /= q;
        }
        m
    }
}

/// All pivot patterns of d×k RREF matrices, pivot sets in lexicographic order.
pub fn echelon_patterns(k: usize, d: usize) -> Vec<EchelonPattern> {
    fn combos(k: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < d - cur.len() {
                break;
            }
            cur.push(i);
            combos(k, d, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    if d <= k {
        combos(k, d, 0, &mut Vec::new(), &mut sets);
    }
    sets.into_iter()
        .map(|pivots| {
            let mut free = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..k {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            EchelonPattern { pivots, free }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rref;

    #[test]
    fn projective_points_cover_each_line_once() {
        for q in ["3", "5", "9"] {
            let f = Field::parse(q).unwrap();
            for n in 1..=3 {
                let pts: Vec<_> = projective_points(f, n).collect();
                assert_eq!(pts.len() as u128, projective_point_count(f.order(), n));
                // every non-zero vector is a multiple of exactly one representative
                let mut hits = 0;
                for v in all_vectors(f, n).filter(|v| v.iter().any(|s| !s.is_zero())) {
                    let matches = pts
                        .iter()
                        .filter(|p| f.elements().any(|c| p.iter().map(|&x| x * c).collect::<Vec<_>>() == v))
                        .count();
                    assert_eq!(matches, 1);
                    hits += 1;
                }
                assert_eq!(hits as u64, f.order().pow(n as u32) - 1);
            }
        }
        let f = Field::new(5, 1).unwrap();
        let first: Vec<_> = projective_points(f, 2).take(2).collect();
        assert_eq!(first[0], vec![f.one(), f.zero()]);
        assert_eq!(first[1], vec![f.one(), f.one()]);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2, 3), 13);
        assert_eq!(gaussian_binomial(6, 2, 3), 11011);
        assert_eq!(gaussian_binomial(6, 3, 3), 33880);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(2, 3, 3), 0);
    }

    #[test]
    fn echelon_enumeration_matches_gaussian_binomial_and_is_canonical() {
        let f = Field::new(3, 1).unwrap();
        for k in 0..=4 {
            for d in 0..=k {
                let mut total = 0u128;
                for pat in echelon_patterns(k, d) {
                    for idx in 0..pat.count(3) as u64 {
                        let m = pat.matrix(f, k, idx);
                        let e = rref(&m);
                        assert_eq!(e.matrix, m);
                        assert_eq!(e.pivots, pat.pivots);
                        total += 1;
                    }
                }
                assert_eq!(total, gaussian_binomial(k, d, 3), "k={k} d={d}");
            }
        }
    }
}
