//! Reference computations written independently of the library's engines.
#![allow(dead_code)]

use gmfineq::linalg::random::{random_square, UniformStream};
use gmfineq::linalg::Field;
use gmfineq::matrix::{Matrix, C64};

/// All permutations of 0..n with their signs, by recursive insertion.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    if n == 0 {
        return vec![(vec![], 1.0)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(n - 1) {
        // Inserting n−1 at position pos creates (n−1−pos) inversions.
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let s = if (n - 1 - pos).is_multiple_of(2) {
                sign
            } else {
                -sign
            };
            out.push((q, s));
        }
    }
    out
}

fn leibniz(a: &Matrix, signed: bool) -> C64 {
    permutations(a.n())
        .into_iter()
        .map(|(p, s)| {
            let prod: C64 = (0..a.n()).map(|i| a[(i, p[i])]).product();
            if signed {
                prod * s
            } else {
                prod
            }
        })
        .sum()
}

pub fn det_oracle(a: &Matrix) -> C64 {
    leibniz(a, true)
}

pub fn per_oracle(a: &Matrix) -> C64 {
    leibniz(a, false)
}

/// x_J = Σ_{L⊆J, L≠∅} (−1)^{|J|−|L|} d(A_L), indexed by mask.
pub fn mobius(m: usize, values: &[f64]) -> Vec<f64> {
    (0..(1usize << m))
        .map(|j| {
            if j == 0 {
                return 0.0;
            }
            values
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != 0 && l & !j == 0)
                .map(|(l, v)| {
                    let parity = (j.count_ones() - l.count_ones()) % 2;
                    if parity == 0 {
                        *v
                    } else {
                        -*v
                    }
                })
                .sum()
        })
        .collect()
}

/// Partial sums of the decreasing rearrangement, zero-padded to `len`.
pub fn sorted_partial_sums(v: &[f64], len: usize) -> Vec<f64> {
    let mut s = v.to_vec();
    s.resize(len, 0.0);
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s.iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

pub fn random_complex(n: usize, seed: u64) -> Matrix {
    random_square(n, Field::Complex, 1.0, &mut UniformStream::new(seed))
}

/// Π_i Σ_j |a_ij|, an upper bound on |per A| and |det A|.
pub fn row_sum_bound(a: &Matrix) -> f64 {
    (0..a.n())
        .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .product()
}
