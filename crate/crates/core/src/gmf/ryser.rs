use crate::error::{Error, Result};
use crate::gmf::GmfValue;
use crate::matrix::{Matrix, C64};

pub const MAX_RYSER_DEGREE: usize = 24;

/// Permanent via Ryser's inclusion–exclusion formula
/// per(A) = (−1)^n Σ_{S ⊆ cols} (−1)^{|S|} Π_i Σ_{j∈S} a_ij,
/// visiting subsets in Gray-code order so each step updates the row sums
/// with a single column in O(n).
pub fn permanent_ryser(a: &Matrix) -> Result<GmfValue> {
    Ok(GmfValue::from_complex(permanent_complex(a)?))
}

pub(crate) fn permanent_complex(a: &Matrix) -> Result<C64> {
    let n = a.n();
    if n > MAX_RYSER_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: MAX_RYSER_DEGREE,
        });
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut row_sums = vec![C64::new(0.0, 0.0); n];
    let mut total = C64::new(0.0, 0.0);
    let mut gray: u32 = 0;
    for k in 1u32..(1u32 << n) {
        let j = k.trailing_zeros() as usize;
        let bit = 1u32 << j;
        gray ^= bit;
        if gray & bit != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[(i, j)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[(i, j)];
            }
        }
        let prod: C64 = row_sums.iter().product();
        if gray.count_ones().is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}
