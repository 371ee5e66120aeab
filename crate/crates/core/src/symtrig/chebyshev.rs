use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::expr::TrigExpr;

/// Integer coefficients of `T_k(x)`, lowest degree first.
pub(crate) fn chebyshev_t_coeffs(k: u32) -> Vec<BigInt> {
    three_term(vec![BigInt::from(1)], vec![BigInt::zero(), BigInt::from(1)], k)
}

/// Integer coefficients of `U_{k-1}(x)`, with the `k = 0` polynomial equal to zero.
pub(crate) fn chebyshev_u_shifted_coeffs(k: u32) -> Vec<BigInt> {
    three_term(vec![], vec![BigInt::from(1)], k)
}

/// Runs `p_{j+1} = 2x p_j - p_{j-1}` from seeds `p_0`, `p_1` up to `p_k`.
fn three_term(p0: Vec<BigInt>, p1: Vec<BigInt>, k: u32) -> Vec<BigInt> {
    if k == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += c * 2;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn to_expr(coeffs: Vec<BigInt>) -> TrigExpr {
    let rat: Vec<BigRational> = coeffs.into_iter().map(BigRational::from_integer).collect();
    TrigExpr::from_cos_poly(&rat)
}

/// `cos(k theta)` as a polynomial in `cos theta`.
pub fn chebyshev_t(k: u32) -> TrigExpr {
    to_expr(chebyshev_t_coeffs(k))
}

/// `sin(k theta) / sin theta` as a polynomial in `cos theta` (degree `k - 1`).
pub fn chebyshev_u_shifted(k: u32) -> TrigExpr {
    to_expr(chebyshev_u_shifted_coeffs(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn low_order_t() {
        assert_eq!(chebyshev_t_coeffs(0), ints(&[1]));
        assert_eq!(chebyshev_t_coeffs(1), ints(&[0, 1]));
        assert_eq!(chebyshev_t_coeffs(2), ints(&[-1, 0, 2]));
        assert_eq!(chebyshev_t_coeffs(3), ints(&[0, -3, 0, 4]));
    }

    #[test]
    fn low_order_u_shifted() {
        assert!(chebyshev_u_shifted(0).is_zero());
        assert_eq!(chebyshev_u_shifted(1), TrigExpr::one());
        assert_eq!(chebyshev_u_shifted_coeffs(2), ints(&[0, 2]));
        assert_eq!(chebyshev_u_shifted_coeffs(3), ints(&[-1, 0, 4]));
    }
}
