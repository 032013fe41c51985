use serde::Serialize;

use super::WeylElement;
use crate::poly::{self, IntPoly};

/// Characteristic polynomial on the reflection representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    /// `det(x I - w)`, coefficients in increasing degree.
    pub coeffs: IntPoly,
    /// `(d, m)` pairs meaning `Phi_d^m`; `None` if the polynomial is not a
    /// product of cyclotomic polynomials.
    pub cyclotomic_factors: Option<Vec<(u64, u32)>>,
}

impl CharPoly {
    pub fn from_matrix(m: &[Vec<i64>]) -> Self {
        let coeffs = faddeev_leverrier(m);
        let cyclotomic_factors = poly::cyclotomic_factorization(&coeffs);
        CharPoly { coeffs, cyclotomic_factors }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `det(w - 1)` up to sign; nonzero exactly when `w` has no fixed vector.
    pub fn value_at_one(&self) -> i64 {
        poly::eval(&self.coeffs, 1)
    }

    /// Rendering such as `Phi_12 Phi_3` or `Phi_2^2`.
    pub fn factor_string(&self) -> String {
        match &self.cyclotomic_factors {
            None => poly::format_poly(&self.coeffs, "x"),
            Some(f) if f.is_empty() => "1".into(),
            Some(f) => f
                .iter()
                .rev()
                .map(|&(d, m)| if m == 1 { format!("Phi_{d}") } else { format!("Phi_{d}^{m}") })
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

fn faddeev_leverrier(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0i64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum::<i64>();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let trace: i64 = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<i64>()).sum();
        debug_assert_eq!(trace % k as i64, 0);
        coeffs[n - k] = -trace / k as i64;
    }
    coeffs
}

impl WeylElement {
    pub fn char_poly(&self) -> CharPoly {
        CharPoly::from_matrix(&self.matrix())
    }

    /// No nonzero fixed vector on the reflection representation.
    pub fn is_elliptic(&self) -> bool {
        self.char_poly().value_at_one() != 0
    }
}
