//! Finite group actions on polynomial rings by variable substitution, and
//! the symmetrizer projection e = (1/|G|) Σ_g g.

use std::collections::BTreeMap;

use num::One;

use crate::poly::{LaurentPoly, Q, Vars};
use crate::ratfunc::RatFunc;
use crate::Result;

/// One group element, as a substitution map on variables. Variables absent
/// from the map are fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub map: BTreeMap<String, LaurentPoly>,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution { map: BTreeMap::new() }
    }

    pub fn new(map: BTreeMap<String, LaurentPoly>) -> Self {
        Substitution { map }
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if self.map.is_empty() {
            return Ok(p.clone());
        }
        p.substitute(&self.map)
    }

    pub fn apply_rat(&self, r: &RatFunc) -> Result<RatFunc> {
        if self.map.is_empty() {
            return Ok(r.clone());
        }
        // numerators can be Laurent after normalization, so substitute in the
        // fraction field where every nonzero image is invertible
        let map: BTreeMap<String, RatFunc> = self
            .map
            .iter()
            .map(|(k, v)| (k.clone(), RatFunc::from_poly(v.clone())))
            .collect();
        r.substitute(&map)
    }

    /// Composition: (self ∘ other)(p) = self(other(p)).
    pub fn compose(&self, other: &Self, vars: &Vars) -> Result<Self> {
        let mut map = BTreeMap::new();
        for name in vars.names() {
            let base = match other.map.get(name) {
                Some(img) => img.clone(),
                None => LaurentPoly::var(vars, name)?,
            };
            let img = self.apply(&base)?;
            if img != LaurentPoly::var(vars, name)? {
                map.insert(name.clone(), img);
            }
        }
        Ok(Substitution { map })
    }

    /// Canonical key for dedup: images of every variable, in order.
    fn key(&self, vars: &Vars) -> Result<String> {
        let mut parts = Vec::new();
        for name in vars.names() {
            match self.map.get(name) {
                Some(img) => parts.push(img.to_string()),
                None => parts.push(name.clone()),
            }
        }
        Ok(parts.join(";"))
    }
}

/// A finite group acting by substitutions, given by generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    vars: Vars,
    generators: Vec<Substitution>,
    elements: Vec<Substitution>,
}

impl GroupAction {
    /// Close the generators under composition. `max_order` guards runaway
    /// closures from non-finite inputs.
    pub fn generate(vars: &Vars, generators: Vec<Substitution>, max_order: usize) -> Result<Self> {
        let mut elements = vec![Substitution::identity()];
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        seen.insert(Substitution::identity().key(vars)?, 0);
        let mut frontier = elements.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &generators {
                    let h = s.compose(g, vars)?;
                    let k = h.key(vars)?;
                    if !seen.contains_key(&k) {
                        seen.insert(k, elements.len());
                        elements.push(h.clone());
                        next.push(h);
                        if elements.len() > max_order {
                            return Err(crate::Error::Invalid(format!(
                                "group closure exceeded {} elements",
                                max_order
                            )));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(GroupAction {
            vars: vars.clone(),
            generators,
            elements,
        })
    }

    /// The sign-inversion action x -> -x on the named variables.
    pub fn negation(vars: &Vars, names: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for n in names {
            map.insert(n.to_string(), LaurentPoly::var(vars, n)?.neg());
        }
        Self::generate(vars, vec![Substitution::new(map)], 4)
    }

    /// The inversion action x -> x^-1 on the named variables.
    pub fn inversion(vars: &Vars, names: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for n in names {
            map.insert(n.to_string(), LaurentPoly::var(vars, n)?.pow_i(-1)?);
        }
        Self::generate(vars, vec![Substitution::new(map)], 4)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Substitution] {
        &self.generators
    }

    pub fn elements(&self) -> &[Substitution] {
        &self.elements
    }

    /// (1/|G|) Σ_g g·p.
    pub fn symmetrize(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(&self.vars);
        for g in &self.elements {
            acc = acc.add(&g.apply(p)?)?;
        }
        let scale = Q::one() / Q::from(num::BigInt::from(self.elements.len() as i64));
        Ok(acc.scale(&scale))
    }

    pub fn symmetrize_rat(&self, r: &RatFunc) -> Result<RatFunc> {
        let mut acc = RatFunc::zero(&self.vars);
        for g in &self.elements {
            acc = acc.add(&g.apply_rat(r)?)?;
        }
        let scale = Q::one() / Q::from(num::BigInt::from(self.elements.len() as i64));
        Ok(acc.scale(&scale))
    }

    pub fn is_invariant(&self, p: &LaurentPoly) -> Result<bool> {
        for g in &self.generators {
            if &g.apply(p)? != p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_invariant_rat(&self, r: &RatFunc) -> Result<bool> {
        for g in &self.generators {
            if !g.apply_rat(r)?.eq_cross(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn xt() -> Vars {
        Vars::new(vec!["x", "t"])
    }

    #[test]
    fn symmetric_element_fixed() {
        // (x -> -x, t -> t^-1) fixes t + t^-1
        let v = xt();
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), LaurentPoly::var(&v, "x").unwrap().neg());
        map.insert("t".to_string(), LaurentPoly::var(&v, "t").unwrap().pow_i(-1).unwrap());
        let g = GroupAction::generate(&v, vec![Substitution::new(map)], 4).unwrap();
        assert_eq!(g.order(), 2);
        let p = LaurentPoly::parse(&v, "t + t^-1").unwrap();
        assert!(g.is_invariant(&p).unwrap());
    }

    #[test]
    fn z_fixed_by_involution() {
        // (x -> x^-1, t -> t^-1) fixes (t - t^-1)/(x - x^-1)
        let v = xt();
        let g = GroupAction::inversion(&v, &["x", "t"]).unwrap();
        let z = RatFunc::new(
            LaurentPoly::parse(&v, "t - t^-1").unwrap(),
            LaurentPoly::parse(&v, "x - x^-1").unwrap(),
        )
        .unwrap();
        assert!(g.is_invariant_rat(&z).unwrap());
    }

    #[test]
    fn symmetrize_monomial() {
        let v = Vars::new(vec!["t"]);
        let g = GroupAction::inversion(&v, &["t"]).unwrap();
        let t = LaurentPoly::var(&v, "t").unwrap();
        let s = g.symmetrize(&t).unwrap();
        let expected = LaurentPoly::parse(&v, "1/2*t + 1/2*t^-1").unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn symmetrize_idempotent_and_projection() {
        let v = Vars::new(vec!["x"]);
        let g = GroupAction::negation(&v, &["x"]).unwrap();
        let x2 = LaurentPoly::parse(&v, "x^2").unwrap();
        assert_eq!(g.symmetrize(&x2).unwrap(), x2);
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let p = LaurentPoly::from_terms(
                &v,
                (0..4)
                    .map(|_| (vec![rng.random_range(0..5)], qi(rng.random_range(-3..4))))
                    .collect(),
            );
            let s = g.symmetrize(&p).unwrap();
            assert_eq!(g.symmetrize(&s).unwrap(), s);
            for gen in g.generators() {
                assert_eq!(gen.apply(&s).unwrap(), s);
            }
        }
    }

    #[test]
    fn action_is_multiplicative() {
        let v = xt();
        let g = GroupAction::inversion(&v, &["x", "t"]).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let p = LaurentPoly::from_terms(
                &v,
                (0..3)
                    .map(|_| {
                        (
                            vec![rng.random_range(-2..3), rng.random_range(-2..3)],
                            qi(rng.random_range(-3..4)),
                        )
                    })
                    .collect(),
            );
            let q2 = LaurentPoly::from_terms(
                &v,
                (0..3)
                    .map(|_| {
                        (
                            vec![rng.random_range(-2..3), rng.random_range(-2..3)],
                            qi(rng.random_range(-3..4)),
                        )
                    })
                    .collect(),
            );
            let gen = &g.generators()[0];
            let lhs = gen.apply(&p.mul(&q2).unwrap()).unwrap();
            let rhs = gen.apply(&p).unwrap().mul(&gen.apply(&q2).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
