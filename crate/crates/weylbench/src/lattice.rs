//! The commutative group ring of a lattice with rational-function
//! coefficients: finitely supported maps λ∨ → coefficient, multiplied by
//! convolution (x_λ · x_μ = x_{λ+μ}).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::ratfunc::RatFunc;
use crate::poly::Vars;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeElement {
    pub rank: usize,
    pub vars: Vars,
    pub terms: BTreeMap<Vec<i64>, RatFunc>,
}

impl LatticeElement {
    pub fn zero(rank: usize, vars: &Vars) -> Self {
        LatticeElement {
            rank,
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(rank: usize, vars: &Vars) -> Self {
        let mut e = Self::zero(rank, vars);
        e.add_term(vec![0; rank], RatFunc::one(vars));
        e
    }

    /// x_λ · coeff.
    pub fn monomial(rank: usize, lam: Vec<i64>, coeff: RatFunc) -> Self {
        assert_eq!(lam.len(), rank);
        let vars = coeff.vars().clone();
        let mut e = Self::zero(rank, &vars);
        e.add_term(lam, coeff);
        e
    }

    pub fn add_term(&mut self, lam: Vec<i64>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&lam) {
            None => {
                self.terms.insert(lam, c);
            }
            Some(old) => {
                let s = old.add(&c).expect("same variable context");
                if !s.is_zero() {
                    self.terms.insert(lam, s);
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::LatticeMismatch(format!(
                "rank {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = self.clone();
        for (l, c) in &other.terms {
            r.add_term(l.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LatticeElement {
            rank: self.rank,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c.neg()))
                .collect(),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = Self::zero(self.rank, &self.vars);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let l: Vec<i64> = la.iter().zip(lb.iter()).map(|(x, y)| x + y).collect();
                r.add_term(l, ca.mul(cb)?);
            }
        }
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &RatFunc) -> Result<Self> {
        let mut r = Self::zero(self.rank, &self.vars);
        for (l, k) in &self.terms {
            r.add_term(l.clone(), k.mul(c)?);
        }
        Ok(r)
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let exps: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            write!(f, "x[{}]*({})", exps.join(","), c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qi, LaurentPoly};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn unit_and_convolution() {
        let vars = Vars::new(vec!["x"]);
        let one = LatticeElement::unit(1, &vars);
        let a = LatticeElement::monomial(1, vec![2], RatFunc::one(&vars));
        assert_eq!(one.mul(&a).unwrap(), a);
        let b = LatticeElement::monomial(1, vec![3], RatFunc::one(&vars));
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.terms.keys().next().unwrap(), &vec![5]);
    }

    #[test]
    fn commutative_associative_random() {
        let vars = Vars::new(vec!["x"]);
        let mut rng = StdRng::seed_from_u64(9);
        let rand_el = |rng: &mut StdRng| {
            let mut e = LatticeElement::zero(1, &vars);
            for _ in 0..3 {
                let l = vec![rng.random_range(-2i64..3)];
                let c = RatFunc::from_poly(LaurentPoly::constant(&vars, qi(rng.random_range(-3..4))));
                e.add_term(l, c);
            }
            e
        };
        for _ in 0..25 {
            let a = rand_el(&mut rng);
            let b = rand_el(&mut rng);
            let c = rand_el(&mut rng);
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }
}
