//! Dense LU factorization with partial pivoting, used for determinants.

/// A determinant with its sign and `ln|det|` kept separately, so values far
/// below the smallest positive double keep their sign and magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    /// The determinant as a double; may underflow to a signed zero.
    pub value: f64,
    /// `-1`, `0` or `1`.
    pub sign: f64,
    /// `ln |det|`; `-inf` when the determinant is zero.
    pub log_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        value: 0.0,
        sign: 0.0,
        log_abs: f64::NEG_INFINITY,
    };

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `|ln|a| - ln|b||` when both are nonzero with equal sign; this is the
    /// relative difference to first order. Zero when both are exactly zero.
    pub fn log_distance(&self, other: &SignedLog) -> f64 {
        match (self.sign == 0.0, other.sign == 0.0) {
            (true, true) => 0.0,
            (false, false) if self.sign == other.sign => (self.log_abs - other.log_abs).abs(),
            _ => f64::INFINITY,
        }
    }
}

/// Determinant of the `n x n` row-major matrix `a` (consumed as scratch).
pub fn lu_determinant(mut a: Vec<f64>, n: usize) -> SignedLog {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let mut sign = 1.0;
    let mut log_abs = 0.0;
    let mut product = 1.0;
    for k in 0..n {
        let (pivot_row, pivot_abs) = (k..n)
            .map(|i| (i, a[i * n + k].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs == 0.0 {
            return SignedLog::ZERO;
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        if pivot < 0.0 {
            sign = -sign;
        }
        log_abs += pivot.abs().ln();
        product *= pivot;
        let (upper, lower) = a.split_at_mut((k + 1) * n);
        let pivot_tail = &upper[k * n + k + 1..];
        for row in lower.chunks_exact_mut(n) {
            let factor = row[k] / pivot;
            if factor == 0.0 {
                continue;
            }
            row[k] = 0.0;
            for (x, p) in row[k + 1..].iter_mut().zip(pivot_tail) {
                *x -= factor * p;
            }
        }
    }
    // Row swaps flip the sign of the pivot product.
    let value = if product.signum() == sign { product } else { -product };
    SignedLog {
        value,
        sign,
        log_abs,
    }
}
