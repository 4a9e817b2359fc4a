use super::Mat;

/// Reduced row-echelon form with its pivot columns (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss–Jordan elimination; pivots are taken leftmost-first, scanning rows top to bottom.
pub fn rref(m: &Mat) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                let tmp = a[(r, j)];
                a[(r, j)] = a[(pr, j)];
                a[(pr, j)] = tmp;
            }
        }
        let inv = a[(r, c)].inv().expect("pivot is non-zero");
        for j in c..cols {
            a[(r, j)] *= inv;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[(i, c)];
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a[(i, j)] - factor * a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, rank: pivots.len(), pivots }
}

/// Columns form a basis of the right null space `{v : m·v = 0}`, one per free column.
pub fn kernel_basis(m: &Mat) -> Mat {
    let field = m.field();
    let e = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Mat::zeros(field, cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out[(fc, k)] = field.one();
        for (row, &pc) in e.pivots.iter().enumerate() {
            out[(pc, k)] = -e.matrix[(row, fc)];
        }
    }
    out
}

pub(super) fn solve(a: &Mat, rhs: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), rhs.rows(), "solve: row mismatch");
    let field = a.field();
    let aug = Mat::hstack(field, a.rows(), &[a, rhs]).ok()?;
    let e = rref(&aug);
    if e.pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    let mut x = Mat::zeros(field, a.cols(), rhs.cols());
    for (row, &pc) in e.pivots.iter().enumerate() {
        for j in 0..rhs.cols() {
            x[(pc, j)] = e.matrix[(row, a.cols() + j)];
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let f = Field::new(5, 1).unwrap();
        for n in 0..4 {
            let z = rref(&Mat::zeros(f, n, n));
            assert_eq!((z.matrix, z.pivots, z.rank), (Mat::zeros(f, n, n), vec![], 0));
            let i = rref(&Mat::identity(f, n));
            assert_eq!((i.matrix, i.pivots, i.rank), (Mat::identity(f, n), (0..n).collect(), n));
        }
        let e = rref(&Mat::from_ints(f, &[&[1, 2], &[2, 4]]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(e.matrix, Mat::from_ints(f, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(kernel_basis(&Mat::identity(f, 3)).cols(), 0);
        assert_eq!(kernel_basis(&Mat::zeros(f, 3, 3)), Mat::identity(f, 3));
        let k = kernel_basis(&Mat::from_ints(f, &[&[1, 0], &[0, 0]]));
        assert_eq!(k, Mat::from_ints(f, &[&[0], &[1]]));
    }

    fn arb_mat() -> impl Strategy<Value = Mat> {
        (prop_oneof![Just(3u64), Just(5), Just(9)], 0usize..5, 0usize..5, any::<u64>()).prop_map(|(q, r, c, seed)| {
            use rand::SeedableRng;
            let f = Field::parse(&q.to_string()).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            // sprinkle zeros so low ranks show up
            let mut m = Mat::random(f, r, c, &mut rng);
            for i in 0..r {
                for j in 0..c {
                    if (i * 7 + j * 3 + seed as usize).is_multiple_of(3) {
                        m[(i, j)] = f.zero();
                    }
                }
            }
            m
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_preserving(m in arb_mat()) {
            let e = rref(&m);
            let again = rref(&e.matrix);
            prop_assert_eq!(&again.matrix, &e.matrix);
            prop_assert_eq!(again.rank, e.rank);
            prop_assert_eq!(rref(&m.transpose()).rank, e.rank);
        }

        #[test]
        fn kernel_is_annihilated(m in arb_mat()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.cols(), m.cols() - m.rank());
            prop_assert!((&m * &k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_reproduces_rhs(m in arb_mat(), seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = Mat::random(m.field(), m.cols(), 2, &mut rng);
            let rhs = &m * &x;
            let sol = m.solve(&rhs).expect("consistent system");
            prop_assert_eq!(&m * &sol, rhs);
        }
    }
}
