//! Witt-vector coordinates for the unipotent centralizer of type A and the
//! Newton/ghost transform turning the convolution group law into
//! componentwise addition over the rationals.
//!
//! A length-(n−1) vector (x₁, …, x_{n−1}) (with x₀ = 1 implicit) multiplies
//! by convolution: (x·y)_k = Σ_{i+j=k} x_i y_j. The ghost coordinates are
//! g_k = −k·[t^k] log(Σ_j x_j(−t)^j); with this single global sign the n = 6
//! components are the classical power sums in the elementary symmetric
//! functions.

use num::{BigInt, Zero};

use crate::error::Error;
use crate::poly::{LaurentPoly, Q, Vars};
use crate::Result;

/// A Witt-style vector with polynomial (or constant) entries; index k holds
/// the component x_{k+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVector {
    pub components: Vec<LaurentPoly>,
}

impl WittVector {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// The generic vector (x₁, …, x_{n−1}) over Q[x₁..x_{n−1}].
    pub fn generic(n: usize) -> Result<(Vars, WittVector)> {
        let names: Vec<String> = (1..n).map(|i| format!("x{}", i)).collect();
        let vars = Vars::new(names.clone());
        let components = names
            .iter()
            .map(|nm| LaurentPoly::var(&vars, nm))
            .collect::<Result<_>>()?;
        Ok((vars, WittVector { components }))
    }

    pub fn constants(vars: &Vars, values: &[Q]) -> WittVector {
        WittVector {
            components: values
                .iter()
                .map(|v| LaurentPoly::constant(vars, v.clone()))
                .collect(),
        }
    }

    /// Convolution group law (x·y)_k = Σ_{i+j=k} x_i y_j with x₀ = y₀ = 1.
    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        if self.len() != other.len() {
            return Err(Error::LatticeMismatch("length mismatch".into()));
        }
        let vars = self.components[0].vars().clone();
        let one = LaurentPoly::one(&vars);
        let at = |w: &WittVector, i: usize| -> LaurentPoly {
            if i == 0 {
                one.clone()
            } else {
                w.components[i - 1].clone()
            }
        };
        let mut out = Vec::new();
        for k in 1..=self.len() {
            let mut acc = LaurentPoly::zero(&vars);
            for i in 0..=k {
                acc = acc.add(&at(self, i).mul(&at(other, k - i))?)?;
            }
            out.push(acc);
        }
        Ok(WittVector { components: out })
    }
}

/// Truncated series with polynomial coefficients, index = power of t.
fn series_mul(a: &[LaurentPoly], b: &[LaurentPoly], n: usize) -> Result<Vec<LaurentPoly>> {
    let vars = a[0].vars().clone();
    let mut out = vec![LaurentPoly::zero(&vars); n];
    for i in 0..a.len().min(n) {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..b.len().min(n - i) {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j])?)?;
        }
    }
    Ok(out)
}

/// Ghost components g_1..g_{n−1} of the vector: the Newton power sums.
pub fn witt_newton_transform(x: &WittVector) -> Result<Vec<LaurentPoly>> {
    let n = x.len() + 1;
    let vars = x.components[0].vars().clone();
    // E(t) := Σ_j x_j (−t)^j
    let mut e = vec![LaurentPoly::zero(&vars); n];
    e[0] = LaurentPoly::one(&vars);
    for (j, c) in x.components.iter().enumerate() {
        let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
        e[j + 1] = c.scale(&Q::from(BigInt::from(sign)));
    }
    // log E = Σ_{m≥1} (−1)^{m+1} u^m / m with u = E − 1
    let mut u = e.clone();
    u[0] = LaurentPoly::zero(&vars);
    let mut log = vec![LaurentPoly::zero(&vars); n];
    let mut upow = u.clone();
    for m in 1..n {
        let coeff = Q::new(
            BigInt::from(if m % 2 == 1 { 1 } else { -1 }),
            BigInt::from(m as i64),
        );
        for k in 0..n {
            log[k] = log[k].add(&upow[k].scale(&coeff))?;
        }
        if m + 1 < n {
            upow = series_mul(&upow, &u, n)?;
        }
    }
    // g_k = −k·[t^k] log
    let mut out = Vec::new();
    for k in 1..n {
        out.push(log[k].scale(&Q::from(BigInt::from(-(k as i64)))));
    }
    Ok(out)
}

/// Inverse transform: recover the vector from its ghost components via
/// exponentiation of −Σ g_k t^k / k.
pub fn witt_newton_inverse(ghosts: &[LaurentPoly]) -> Result<WittVector> {
    let n = ghosts.len() + 1;
    let vars = ghosts[0].vars().clone();
    let mut s = vec![LaurentPoly::zero(&vars); n];
    for (k, g) in ghosts.iter().enumerate() {
        s[k + 1] = g.scale(&Q::new(BigInt::from(-1), BigInt::from((k + 1) as i64)));
    }
    // exp(s) = Σ s^m / m!
    let mut exp = vec![LaurentPoly::zero(&vars); n];
    exp[0] = LaurentPoly::one(&vars);
    let mut spow = s.clone();
    let mut fact = Q::from(BigInt::from(1));
    for m in 1..n {
        fact = fact * Q::from(BigInt::from(m as i64));
        let inv = Q::from(BigInt::from(1)) / fact.clone();
        for k in 0..n {
            exp[k] = exp[k].add(&spow[k].scale(&inv))?;
        }
        if m + 1 < n {
            spow = series_mul(&spow, &s, n)?;
        }
    }
    // x_j = (−1)^j [t^j] exp
    let mut components = Vec::new();
    for j in 1..n {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        components.push(exp[j].scale(&Q::from(BigInt::from(sign))));
    }
    Ok(WittVector { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn first_component_is_identity() {
        // n = 2: x₁ ↦ x₁
        let (_, x) = WittVector::generic(2).unwrap();
        let g = witt_newton_transform(&x).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0], x.components[0]);
    }

    #[test]
    fn n6_components_match_power_sums() {
        // frozen from the displayed type-A₅ centralizer coordinates
        let (vars, x) = WittVector::generic(6).unwrap();
        let g = witt_newton_transform(&x).unwrap();
        let expected = [
            "x1",
            "x1^2 - 2*x2",
            "x1^3 - 3*x1*x2 + 3*x3",
            "x1^4 + 2*x2^2 - 4*x4 - 4*x2*x1^2 + 4*x1*x3",
            "x1^5 - 5*x1^3*x2 + 5*x1^2*x3 - 5*x1*x4 + 5*x1*x2^2 - 5*x2*x3 + 5*x5",
        ];
        for (k, text) in expected.iter().enumerate() {
            let want = LaurentPoly::parse(&vars, text).unwrap();
            assert_eq!(g[k], want, "component {}", k + 1);
        }
    }

    #[test]
    fn transform_turns_convolution_into_addition() {
        let mut rng = StdRng::seed_from_u64(99);
        for n in 2..=8usize {
            let vars = Vars::new(vec!["c"]);
            for _ in 0..10 {
                let xs: Vec<crate::poly::Q> = (1..n)
                    .map(|_| crate::poly::q(rng.random_range(-9i64..10), rng.random_range(1i64..5)))
                    .collect();
                let ys: Vec<crate::poly::Q> = (1..n)
                    .map(|_| crate::poly::q(rng.random_range(-9i64..10), rng.random_range(1i64..5)))
                    .collect();
                let x = WittVector::constants(&vars, &xs);
                let y = WittVector::constants(&vars, &ys);
                let lhs = witt_newton_transform(&x.mul(&y).unwrap()).unwrap();
                let gx = witt_newton_transform(&x).unwrap();
                let gy = witt_newton_transform(&y).unwrap();
                for k in 0..lhs.len() {
                    assert_eq!(lhs[k], gx[k].add(&gy[k]).unwrap());
                }
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        // symbolic round trip at n = 6, plus the homomorphism statement that
        // the inverse is a genuine two-sided inverse
        let (_, x) = WittVector::generic(6).unwrap();
        let g = witt_newton_transform(&x).unwrap();
        let back = witt_newton_inverse(&g).unwrap();
        assert_eq!(back, x);
        // and on constants
        let vars = Vars::new(vec!["c"]);
        let w = WittVector::constants(&vars, &[qi(3), qi(-2), qi(7), crate::poly::q(1, 2)]);
        let g = witt_newton_transform(&w).unwrap();
        assert_eq!(witt_newton_inverse(&g).unwrap(), w);
    }
}
