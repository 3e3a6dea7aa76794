//! Shift operator algebras: the algebra generated by the lattice group ring
//! and functions on ℳ_{T,0}, with the twisted product
//! g(y)·x_λ = x_λ·λ*(g). The additive law in rank 1 gives the (rescaled)
//! Weyl algebra, the multiplicative law the quantum torus.
//!
//! Normal form keeps the lattice monomial on the left and the coefficient on
//! the right, so a term is x_λ·g with g a rational function in the
//! ℳ-coordinates and the deformation variable.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One};
use serde::{Deserialize, Serialize};

use crate::action::Substitution;
use crate::grouplaw::{coordinate_names, GroupLaw, LawKind};
use crate::poly::{LaurentPoly, Q, Vars};
use crate::ratfunc::RatFunc;
use crate::root::RootDatum;
use crate::Result;

/// The ambient algebra: lattice, law, and variable naming.
#[derive(Clone, Debug)]
pub struct ShiftAlgebra {
    pub datum: RootDatum,
    pub law: GroupLaw,
    /// Coefficient variables: the ℳ-coordinates then the deformation variable.
    pub vars: Vars,
    pub coord_names: Vec<String>,
    pub def_var: String,
    /// Display name for the lattice monomial (purely cosmetic).
    pub monomial_var: String,
}

/// Normal form Σ_λ x_λ · g_λ.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftElement {
    pub terms: BTreeMap<Vec<i64>, RatFunc>,
}

impl ShiftAlgebra {
    /// Standard naming: coordinates `y`/`y1..yr`, deformation `h` or `q`,
    /// monomial `x`.
    pub fn diffop(datum: &RootDatum, law: GroupLaw) -> Self {
        let rank = datum.rank;
        let coord_names: Vec<String> = if rank == 1 {
            vec!["y".into()]
        } else {
            (1..=rank).map(|i| format!("y{}", i)).collect()
        };
        let def_var = match law.kind {
            LawKind::Additive => "h".to_string(),
            _ => "q".to_string(),
        };
        let mut names = coord_names.clone();
        names.push(def_var.clone());
        ShiftAlgebra {
            datum: datum.clone(),
            law,
            vars: Vars::new(names),
            coord_names,
            def_var,
            monomial_var: "x".to_string(),
        }
    }

    /// Coulomb-branch naming: coordinate `x`, monomial `t`.
    pub fn coulomb(datum: &RootDatum, law: GroupLaw) -> Self {
        let rank = datum.rank;
        let coord_names = coordinate_names(rank);
        let def_var = match law.kind {
            LawKind::Additive => "h".to_string(),
            _ => "q".to_string(),
        };
        let mut names = coord_names.clone();
        names.push(def_var.clone());
        ShiftAlgebra {
            datum: datum.clone(),
            law,
            vars: Vars::new(names),
            coord_names,
            def_var,
            monomial_var: "t".to_string(),
        }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn zero(&self) -> ShiftElement {
        ShiftElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(&self) -> ShiftElement {
        self.coeff(&RatFunc::one(&self.vars))
    }

    /// Coefficient-only element x_0·g.
    pub fn coeff(&self, g: &RatFunc) -> ShiftElement {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(vec![0; self.rank()], g.clone());
        }
        ShiftElement { terms }
    }

    pub fn coeff_poly(&self, g: &LaurentPoly) -> ShiftElement {
        self.coeff(&RatFunc::from_poly(g.clone()))
    }

    /// Pure lattice monomial x_λ.
    pub fn monomial(&self, lam: &[i64]) -> ShiftElement {
        let mut terms = BTreeMap::new();
        terms.insert(lam.to_vec(), RatFunc::one(&self.vars));
        ShiftElement { terms }
    }

    pub fn term(&self, lam: &[i64], g: RatFunc) -> ShiftElement {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(lam.to_vec(), g);
        }
        ShiftElement { terms }
    }

    /// A coefficient variable as an element.
    pub fn coord(&self, i: usize) -> Result<ShiftElement> {
        Ok(self.coeff(&RatFunc::var(&self.vars, &self.coord_names[i])?))
    }

    /// The twist λ*: y_i ↦ y_i +_F [⟨f_i, λ⟩]_F(def) as a substitution on
    /// coefficients.
    pub fn twist_subst(&self, lam: &[i64]) -> Result<Substitution> {
        let mut map = BTreeMap::new();
        for (i, name) in self.coord_names.iter().enumerate() {
            let mut f_i = vec![0i64; self.rank()];
            f_i[i] = 1;
            let k = self.datum.pair(&f_i, lam)?;
            if k == 0 {
                continue;
            }
            let yi = LaurentPoly::var(&self.vars, name)?;
            let img = match self.law.kind {
                LawKind::Additive => {
                    let h = LaurentPoly::var(&self.vars, &self.def_var)?;
                    yi.add(&h.scale(&Q::from(BigInt::from(k))))?
                }
                LawKind::Multiplicative => {
                    let q = LaurentPoly::var(&self.vars, &self.def_var)?;
                    yi.mul(&q.pow_i(k)?)?
                }
                LawKind::Formal => {
                    let t = LaurentPoly::var(&self.vars, &self.def_var)?;
                    let n_ser = self.law.n_series_poly(k, &t)?;
                    self.law.f_add_poly(&yi, &n_ser)?
                }
            };
            map.insert(name.clone(), img);
        }
        Ok(Substitution::new(map))
    }

    pub fn twist(&self, lam: &[i64], g: &RatFunc) -> Result<RatFunc> {
        self.twist_subst(lam)?.apply_rat(g)
    }

    pub fn add(&self, a: &ShiftElement, b: &ShiftElement) -> Result<ShiftElement> {
        let mut terms = a.terms.clone();
        for (l, g) in &b.terms {
            match terms.remove(l) {
                None => {
                    terms.insert(l.clone(), g.clone());
                }
                Some(old) => {
                    let s = old.add(g)?;
                    if !s.is_zero() {
                        terms.insert(l.clone(), s);
                    }
                }
            }
        }
        Ok(ShiftElement { terms })
    }

    pub fn neg(&self, a: &ShiftElement) -> ShiftElement {
        ShiftElement {
            terms: a.terms.iter().map(|(l, g)| (l.clone(), g.neg())).collect(),
        }
    }

    pub fn sub(&self, a: &ShiftElement, b: &ShiftElement) -> Result<ShiftElement> {
        self.add(a, &self.neg(b))
    }

    /// (x_λ f)(x_μ g) = x_{λ+μ}·μ*(f)·g.
    pub fn mul(&self, a: &ShiftElement, b: &ShiftElement) -> Result<ShiftElement> {
        let mut out = self.zero();
        for (la, f) in &a.terms {
            for (lb, g) in &b.terms {
                let l: Vec<i64> = la.iter().zip(lb.iter()).map(|(x, y)| x + y).collect();
                let tf = self.twist(lb, f)?;
                let c = tf.mul(g)?;
                out = self.add(&out, &self.term(&l, c))?;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, a: &ShiftElement, b: &ShiftElement) -> Result<ShiftElement> {
        self.sub(&self.mul(a, b)?, &self.mul(b, a)?)
    }

    pub fn scale(&self, a: &ShiftElement, c: &RatFunc) -> Result<ShiftElement> {
        let mut out = self.zero();
        for (l, g) in &a.terms {
            out = self.add(&out, &self.term(l, g.mul(c)?))?;
        }
        Ok(out)
    }

    pub fn pow(&self, a: &ShiftElement, n: u32) -> Result<ShiftElement> {
        let mut r = self.unit();
        for _ in 0..n {
            r = self.mul(&r, a)?;
        }
        Ok(r)
    }

    /// Apply a substitution on coefficients and a sign map λ ↦ m(λ) on the
    /// lattice; used for involutions like x ↦ -x, t ↦ t^{-1}.
    pub fn map_element(
        &self,
        a: &ShiftElement,
        lattice_map: impl Fn(&[i64]) -> Vec<i64>,
        coeff_map: &Substitution,
    ) -> Result<ShiftElement> {
        let mut out = self.zero();
        for (l, g) in &a.terms {
            out = self.add(&out, &self.term(&lattice_map(l), coeff_map.apply_rat(g)?))?;
        }
        Ok(out)
    }

    /// Substitute the deformation variable (e.g. h := 0 or q := 1) in every
    /// coefficient; the result is an element of the commutative limit.
    pub fn specialize_def(&self, a: &ShiftElement, value: &LaurentPoly) -> Result<ShiftElement> {
        let mut out = self.zero();
        for (l, g) in &a.terms {
            out = self.add(&out, &self.term(l, g.eval_var(&self.def_var, value)?))?;
        }
        Ok(out)
    }

    /// Divide every coefficient by an exact scalar polynomial (e.g. h, q-1).
    pub fn divide_coeffs(&self, a: &ShiftElement, d: &LaurentPoly) -> Result<ShiftElement> {
        let mut out = self.zero();
        let dr = RatFunc::from_poly(d.clone());
        for (l, g) in &a.terms {
            out = self.add(&out, &self.term(l, g.div(&dr)?))?;
        }
        Ok(out)
    }

    // -- Mellin representation ---------------------------------------------

    /// Evaluate ℳ-coordinates at the identity section: y := 0 (additive) or
    /// y := 1 (multiplicative / formal coordinates are deformation-only).
    fn eval_identity(&self, g: &RatFunc) -> Result<RatFunc> {
        let mut out = g.clone();
        for name in &self.coord_names {
            let val = match self.law.kind {
                LawKind::Additive => LaurentPoly::zero(&self.vars),
                LawKind::Multiplicative => LaurentPoly::one(&self.vars),
                LawKind::Formal => LaurentPoly::zero(&self.vars),
            };
            out = out.eval_var(name, &val)?;
        }
        Ok(out)
    }

    /// The Mellin action: a ⊲ p = (a·p) with coefficients evaluated at the
    /// identity section. x_λ acts by translation, coefficients by the twisted
    /// substitution.
    pub fn mellin_act(&self, a: &ShiftElement, p: &ShiftElement) -> Result<ShiftElement> {
        let prod = self.mul(a, p)?;
        let mut out = self.zero();
        for (l, g) in &prod.terms {
            out = self.add(&out, &self.term(l, self.eval_identity(g)?))?;
        }
        Ok(out)
    }

    /// Module monomial x^μ.
    pub fn module_monomial(&self, mu: &[i64]) -> ShiftElement {
        self.monomial(mu)
    }

    /// Symmetrize a module element over the finite Weyl group acting on the
    /// lattice exponents.
    pub fn module_symmetrize(&self, p: &ShiftElement) -> Result<ShiftElement> {
        let w = crate::root::WeylGroup::new(&self.datum)?;
        let mut acc = self.zero();
        for e in &w.elements {
            let mut img = self.zero();
            for (l, g) in &p.terms {
                img = self.add(&img, &self.term(&e.apply_cochar(l), g.clone()))?;
            }
            acc = self.add(&acc, &img)?;
        }
        let scale = RatFunc::constant(&self.vars, Q::one() / Q::from(BigInt::from(w.order() as i64)));
        self.scale(&acc, &scale)
    }

    /// The spherical product e·a·e as an operator on the Mellin module:
    /// p ↦ sym(a ⊲ sym(p)).
    pub fn spherical_apply(&self, a: &ShiftElement, p: &ShiftElement) -> Result<ShiftElement> {
        let ep = self.module_symmetrize(p)?;
        let ap = self.mellin_act(a, &ep)?;
        self.module_symmetrize(&ap)
    }

    pub fn display(&self, a: &ShiftElement) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (l, g) in &a.terms {
            let mono = if l.iter().all(|&k| k == 0) {
                "1".to_string()
            } else if self.rank() == 1 {
                if l[0] == 1 {
                    self.monomial_var.clone()
                } else {
                    format!("{}^{}", self.monomial_var, l[0])
                }
            } else {
                let exps: Vec<String> = l.iter().map(|x| x.to_string()).collect();
                format!("{}[{}]", self.monomial_var, exps.join(","))
            };
            parts.push(format!("{}*({})", mono, g));
        }
        parts.join(" + ")
    }

    // -- JSON: {law, terms:[{coweight, coeff}]} -----------------------------

    pub fn element_to_json(&self, a: &ShiftElement) -> ShiftElementJson {
        ShiftElementJson {
            law: format!("{:?}", self.law.kind),
            terms: a
                .terms
                .iter()
                .map(|(l, g)| ShiftTermJson {
                    coweight: l.clone(),
                    coeff: g.to_string(),
                })
                .collect(),
        }
    }

    pub fn element_from_json(&self, j: &ShiftElementJson) -> Result<ShiftElement> {
        let mut out = self.zero();
        for t in &j.terms {
            let g = RatFunc::parse(&self.vars, &t.coeff)?;
            out = self.add(&out, &self.term(&t.coweight, g))?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ShiftElementJson {
    pub law: String,
    pub terms: Vec<ShiftTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ShiftTermJson {
    pub coweight: Vec<i64>,
    pub coeff: String,
}

impl fmt::Display for ShiftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "x{:?}*({})", l, g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::{build_root_datum, Family};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn torus1() -> RootDatum {
        build_root_datum(Family::Torus(1)).unwrap()
    }

    #[test]
    fn additive_weyl_relation() {
        // y·x = x·(y + h)
        let alg = ShiftAlgebra::diffop(&torus1(), GroupLaw::additive());
        let y = alg.coord(0).unwrap();
        let x = alg.monomial(&[1]);
        let yx = alg.mul(&y, &x).unwrap();
        let expected = alg.term(
            &[1],
            RatFunc::parse(&alg.vars, "y + h").unwrap(),
        );
        assert_eq!(yx, expected);
    }

    #[test]
    fn multiplicative_quantum_torus_relation() {
        // y·x = q·x·y
        let alg = ShiftAlgebra::diffop(&torus1(), GroupLaw::multiplicative());
        let y = alg.coord(0).unwrap();
        let x = alg.monomial(&[1]);
        let yx = alg.mul(&y, &x).unwrap();
        let qxy = alg
            .scale(
                &alg.mul(&x, &y).unwrap(),
                &RatFunc::var(&alg.vars, "q").unwrap(),
            )
            .unwrap();
        assert_eq!(yx, qxy);
    }

    #[test]
    fn lattice_monomials_multiply_additively() {
        let alg = ShiftAlgebra::diffop(&torus1(), GroupLaw::additive());
        let a = alg.monomial(&[2]);
        let b = alg.monomial(&[-5]);
        let ab = alg.mul(&a, &b).unwrap();
        assert_eq!(ab, alg.monomial(&[-3]));
    }

    #[test]
    fn shift_product_associative_random() {
        let mut rng = StdRng::seed_from_u64(17);
        for law in [GroupLaw::additive(), GroupLaw::multiplicative()] {
            let alg = ShiftAlgebra::diffop(&torus1(), law);
            let rand_el = |rng: &mut StdRng| -> ShiftElement {
                let mut e = alg.zero();
                for _ in 0..2 {
                    let l = vec![rng.random_range(-2i64..3)];
                    let c = LaurentPoly::from_terms(
                        &alg.vars,
                        vec![(
                            vec![rng.random_range(0..3), rng.random_range(0..2)],
                            crate::poly::qi(rng.random_range(-3..4)),
                        )],
                    );
                    e = alg.add(&e, &alg.term(&l, RatFunc::from_poly(c))).unwrap();
                }
                e
            };
            for _ in 0..20 {
                let a = rand_el(&mut rng);
                let b = rand_el(&mut rng);
                let c = rand_el(&mut rng);
                let lhs = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
                let rhs = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn mellin_action_examples() {
        // additive: y ⊲ x^n = n·h·x^n
        let alg = ShiftAlgebra::diffop(&torus1(), GroupLaw::additive());
        let y = alg.coord(0).unwrap();
        for n in -4i64..=4 {
            let xn = alg.module_monomial(&[n]);
            let out = alg.mellin_act(&y, &xn).unwrap();
            let expected = alg.term(
                &[n],
                RatFunc::parse(&alg.vars, &format!("{}*h", n)).unwrap(),
            );
            assert_eq!(out, expected);
        }
        // multiplicative: y ⊲ x^n = q^n·x^n
        let alg = ShiftAlgebra::diffop(&torus1(), GroupLaw::multiplicative());
        let y = alg.coord(0).unwrap();
        for n in -4i64..=4 {
            let xn = alg.module_monomial(&[n]);
            let out = alg.mellin_act(&y, &xn).unwrap();
            let expected = alg.term(
                &[n],
                RatFunc::from_poly(
                    LaurentPoly::var(&alg.vars, "q").unwrap().pow_i(n).unwrap(),
                ),
            );
            assert_eq!(out, expected);
        }
        // unit acts as the identity
        let alg = ShiftAlgebra::diffop(&torus1(), GroupLaw::additive());
        let p = alg.module_monomial(&[3]);
        assert_eq!(alg.mellin_act(&alg.unit(), &p).unwrap(), p);
    }

    #[test]
    fn mellin_is_algebra_homomorphism() {
        let mut rng = StdRng::seed_from_u64(23);
        for law in [GroupLaw::additive(), GroupLaw::multiplicative()] {
            let alg = ShiftAlgebra::diffop(&torus1(), law);
            let rand_op = |rng: &mut StdRng| -> ShiftElement {
                let mut e = alg.zero();
                for _ in 0..2 {
                    let l = vec![rng.random_range(-2i64..3)];
                    let c = LaurentPoly::from_terms(
                        &alg.vars,
                        vec![(
                            vec![rng.random_range(0..4), rng.random_range(0..2)],
                            crate::poly::qi(rng.random_range(-3..4)),
                        )],
                    );
                    e = alg.add(&e, &alg.term(&l, RatFunc::from_poly(c))).unwrap();
                }
                e
            };
            for _ in 0..25 {
                let a = rand_op(&mut rng);
                let b = rand_op(&mut rng);
                let p = alg.module_monomial(&[rng.random_range(-3i64..4)]);
                let lhs = alg.mellin_act(&alg.mul(&a, &b).unwrap(), &p).unwrap();
                let rhs = alg.mellin_act(&a, &alg.mellin_act(&b, &p).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn spherical_symmetrizer_examples() {
        // Z/2 Weyl group needs the SL2 datum (torus has trivial W)
        let d = build_root_datum(Family::SL2).unwrap();
        let alg = ShiftAlgebra::diffop(&d, GroupLaw::additive());
        // e·1·e = e: acting on a symmetric element returns it
        let p = alg
            .add(&alg.module_monomial(&[1]), &alg.module_monomial(&[-1]))
            .unwrap();
        assert_eq!(alg.spherical_apply(&alg.unit(), &p).unwrap(), p);
        // e·t·e on a symmetric monomial acts by (1/2)(t + t^{-1})
        let t = alg.monomial(&[1]);
        let one = alg.module_monomial(&[0]);
        let out = alg.spherical_apply(&t, &one).unwrap();
        let half = RatFunc::constant(&alg.vars, crate::poly::q(1, 2));
        let expected = alg
            .scale(
                &alg.add(&alg.module_monomial(&[1]), &alg.module_monomial(&[-1]))
                    .unwrap(),
                &half,
            )
            .unwrap();
        assert_eq!(out, expected);
        // e·U·e with U = t + t^{-1} symmetric: acts as U itself on invariants
        let u = alg
            .add(&alg.monomial(&[1]), &alg.monomial(&[-1]))
            .unwrap();
        let out = alg.spherical_apply(&u, &p).unwrap();
        let direct = alg.module_symmetrize(&alg.mellin_act(&u, &p).unwrap()).unwrap();
        assert_eq!(out, direct);
    }

    #[test]
    fn json_round_trip() {
        let alg = ShiftAlgebra::coulomb(&torus1(), GroupLaw::additive());
        let v = alg
            .sub(
                &alg.term(&[1], RatFunc::parse(&alg.vars, "(1)/(x + h)").unwrap()),
                &alg.term(&[-1], RatFunc::parse(&alg.vars, "(1)/(x - h)").unwrap()),
            )
            .unwrap();
        let js = serde_json::to_string(&alg.element_to_json(&v)).unwrap();
        let parsed: ShiftElementJson = serde_json::from_str(&js).unwrap();
        let back = alg.element_from_json(&parsed).unwrap();
        assert_eq!(v, back);
    }
}
