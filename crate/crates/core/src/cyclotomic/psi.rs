use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi, mobius};
use crate::error::{Error, Result};

/// Largest n for which the polynomial oracle is offered.
pub const PSI_MAX_N: u64 = 200;

/// Coefficients c_0..c_phi(n) of the one-variable cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut poly = vec![BigInt::one()];
    let ds = divisors(n);
    for &d in &ds {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let mut next = vec![BigInt::zero(); poly.len() + d as usize];
            for (i, c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &ds {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1
            let d = d as usize;
            let m = poly.len() - 1;
            let mut q = vec![BigInt::zero(); m - d + 1];
            for i in (0..=m - d).rev() {
                let above = if i + d <= m - d { q[i + d].clone() } else { BigInt::zero() };
                q[i] = &poly[i + d] + above;
            }
            poly = q;
        }
    }
    poly
}

/// Psi_n(X, Y) = sum coeffs[j] X^j Y^(h-j), h = phi(n)/2, with
/// Psi_n((A+B)^2, AB) = Phi_n(A, B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiPolynomial {
    pub n: u64,
    pub coeffs: Vec<BigInt>,
}

impl PsiPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let h = self.degree();
        let mut xp = vec![BigInt::one(); h + 1];
        let mut yp = vec![BigInt::one(); h + 1];
        for j in 1..=h {
            xp[j] = &xp[j - 1] * x;
            yp[j] = &yp[j - 1] * y;
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * &xp[j] * &yp[h - j])
            .sum()
    }
}

fn poly_add_scaled(acc: &mut Vec<BigInt>, p: &[BigInt], s: &BigInt) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        *a += c * s;
    }
}

pub fn psi_polynomial(n: u64) -> Result<PsiPolynomial> {
    if n < 3 {
        return Err(Error::domain(format!("Psi_n needs n >= 3, got {n}")));
    }
    if n > PSI_MAX_N {
        return Err(Error::domain(format!("Psi_n is only expanded for n <= {PSI_MAX_N}")));
    }
    let phi = cyclotomic_poly(n);
    let h = (euler_phi(n) / 2) as usize;
    debug_assert_eq!(phi.len(), 2 * h + 1);

    // x^-h Phi_n(x) = c_h + sum_j c_{h+j} (x^j + x^-j), with x^j + x^-j = V_j(t),
    // t = x + 1/x, V_0 = 2, V_1 = t, V_{j+1} = t V_j - V_{j-1}.
    let mut g = vec![phi[h].clone()];
    let mut v_prev = vec![BigInt::from(2)];
    let mut v_cur = vec![BigInt::zero(), BigInt::one()];
    for j in 1..=h {
        poly_add_scaled(&mut g, &v_cur, &phi[h + j]);
        let mut next = vec![BigInt::zero(); v_cur.len() + 1];
        for (i, c) in v_cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in v_prev.iter().enumerate() {
            next[i] -= c;
        }
        v_prev = std::mem::replace(&mut v_cur, next);
    }
    // substitute t = s - 2 by Horner
    let mut out: Vec<BigInt> = vec![BigInt::zero()];
    for c in g.iter().rev() {
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (i, o) in out.iter().enumerate() {
            next[i + 1] += o;
            next[i] -= o * 2;
        }
        next[0] += c;
        out = next;
    }
    out.truncate(h + 1);
    Ok(PsiPolynomial { n, coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).contains(&BigInt::from(-2)));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_polynomial(3).unwrap().coeffs, ints(&[-1, 1]));
        assert_eq!(psi_polynomial(4).unwrap().coeffs, ints(&[-2, 1]));
        assert_eq!(psi_polynomial(6).unwrap().coeffs, ints(&[-3, 1]));
        assert!(psi_polynomial(2).is_err());
        assert!(psi_polynomial(201).is_err());
    }

    #[test]
    fn psi_degree_is_half_phi() {
        for n in 3..=200 {
            let psi = psi_polynomial(n).unwrap();
            assert_eq!(psi.degree() as u64, euler_phi(n) / 2, "n = {n}");
            assert!(psi.coeffs[psi.degree()].is_one());
        }
    }

    #[test]
    fn psi_roots_are_four_cos_squared() {
        // Psi_n(X, 1) = prod over j coprime to n, j < n/2, of (X - 4 cos^2(pi j / n))
        for n in [5u64, 7, 8, 9, 12, 15] {
            let psi = psi_polynomial(n).unwrap();
            for j in 1..n {
                if j * 2 >= n || crate::arith::factor_u64(n).iter().any(|&(p, _)| j % p == 0) {
                    continue;
                }
                let root = 4.0 * (std::f64::consts::PI * j as f64 / n as f64).cos().powi(2);
                let val: f64 = psi
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        num_traits::ToPrimitive::to_f64(c).unwrap() * root.powi(k as i32)
                    })
                    .sum();
                assert!(val.abs() < 1e-8, "n={n} j={j} val={val}");
            }
        }
    }

    #[test]
    fn psi_matches_homogeneous_cyclotomic() {
        // Phi_n(A, B) = B^phi(n) Phi_n(A/B) for small integers A, B.
        for n in 3..=30u64 {
            let phi = cyclotomic_poly(n);
            let psi = psi_polynomial(n).unwrap();
            for (a, b) in [(2i64, 1i64), (3, -5), (-7, 4), (1, 1)] {
                let (a, b) = (BigInt::from(a), BigInt::from(b));
                let deg = phi.len() - 1;
                let direct: BigInt = phi
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * a.pow(i as u32) * b.pow((deg - i) as u32))
                    .sum();
                let s = &a + &b;
                assert_eq!(psi.eval(&(&s * &s), &(&a * &b)), direct, "n={n}");
            }
        }
    }
}
