//! Kostant-slice centralizer computations for the rank-1 groups: build the
//! 2×2 symbolic matrices, impose Ad_g(κ(x)) = κ(x) for a generic Borel
//! element g, and solve for the off-diagonal Borel parameter.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grouplaw::LawKind;
use crate::poly::{LaurentPoly, Vars};
use crate::ratfunc::RatFunc;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KostantGroup {
    SL2,
    PGL2,
}

/// 2×2 matrix over rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2 {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl Mat2 {
    pub fn mul(&self, o: &Mat2) -> Result<Mat2> {
        Ok(Mat2 {
            a: self.a.mul(&o.a)?.add(&self.b.mul(&o.c)?)?,
            b: self.a.mul(&o.b)?.add(&self.b.mul(&o.d)?)?,
            c: self.c.mul(&o.a)?.add(&self.d.mul(&o.c)?)?,
            d: self.c.mul(&o.b)?.add(&self.d.mul(&o.d)?)?,
        })
    }

    pub fn sub(&self, o: &Mat2) -> Result<Mat2> {
        Ok(Mat2 {
            a: self.a.sub(&o.a)?,
            b: self.b.sub(&o.b)?,
            c: self.c.sub(&o.c)?,
            d: self.d.sub(&o.d)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn entries(&self) -> [&RatFunc; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// The solved constraint: the dependent Borel parameter as a rational
/// function of the slice coordinate x and the free diagonal parameter a.
#[derive(Clone, Debug)]
pub struct CentralizerSolution {
    pub group: KostantGroup,
    pub law: LawKind,
    pub free_params: Vec<String>,
    pub constraint: RatFunc,
    /// All four entries of Ad_g(κ) − κ after substituting the constraint.
    pub residual: Mat2,
}

#[derive(Serialize, Deserialize)]
pub struct CentralizerSolutionJson {
    pub group: String,
    pub law: String,
    pub free_params: Vec<String>,
    pub constraint: String,
    pub residual_zero: bool,
}

impl CentralizerSolution {
    pub fn to_json(&self) -> CentralizerSolutionJson {
        CentralizerSolutionJson {
            group: format!("{:?}", self.group),
            law: format!("{:?}", self.law),
            free_params: self.free_params.clone(),
            constraint: self.constraint.to_string(),
            residual_zero: self.residual.is_zero(),
        }
    }
}

/// Slice element and generic Borel element per case. The additive slice is
/// x + f; the multiplicative slice is x·f with f the principal unipotent.
fn slice_and_borel(group: KostantGroup, law: LawKind, vars: &Vars) -> Result<(Mat2, Mat2, Mat2)> {
    let x = RatFunc::var(vars, "x")?;
    let a = RatFunc::var(vars, "a")?;
    let b = RatFunc::var(vars, "b")?;
    let one = RatFunc::one(vars);
    let zero = RatFunc::zero(vars);
    let xinv = x.inv()?;
    let ainv = a.inv()?;
    match (group, law) {
        (KostantGroup::SL2, LawKind::Additive) => {
            // κ(x) = diag(x, -x) + e₂₁
            let m = Mat2 {
                a: x.clone(),
                b: zero.clone(),
                c: one.clone(),
                d: x.neg(),
            };
            let g = Mat2 {
                a: a.clone(),
                b: zero.clone(),
                c: b.clone(),
                d: ainv.clone(),
            };
            let ginv = Mat2 {
                a: ainv,
                b: zero,
                c: b.neg(),
                d: a,
            };
            Ok((m, g, ginv))
        }
        (KostantGroup::PGL2, LawKind::Additive) => {
            // κ(x) = diag(x, 0) + e₂₁ in gl₂, g = [[a,0],[b,1]]
            let m = Mat2 {
                a: x.clone(),
                b: zero.clone(),
                c: one.clone(),
                d: zero.clone(),
            };
            let g = Mat2 {
                a: a.clone(),
                b: zero.clone(),
                c: b.clone(),
                d: one.clone(),
            };
            let ginv = Mat2 {
                a: ainv.clone(),
                b: zero,
                c: b.neg().mul(&ainv)?,
                d: one,
            };
            Ok((m, g, ginv))
        }
        (KostantGroup::SL2, LawKind::Multiplicative) => {
            // κ(x) = diag(x, x^{-1})·f with f = [[1,0],[1,1]]
            let m = Mat2 {
                a: x.clone(),
                b: zero.clone(),
                c: xinv.clone(),
                d: xinv,
            };
            let g = Mat2 {
                a: a.clone(),
                b: zero.clone(),
                c: b.clone(),
                d: ainv.clone(),
            };
            let ginv = Mat2 {
                a: ainv,
                b: zero,
                c: b.neg(),
                d: a,
            };
            Ok((m, g, ginv))
        }
        (KostantGroup::PGL2, LawKind::Multiplicative) => {
            // κ(x) = diag(x, 1)·f = [[x,0],[1,1]], g = [[a,0],[b,1]]
            let m = Mat2 {
                a: x,
                b: zero.clone(),
                c: one.clone(),
                d: one.clone(),
            };
            let g = Mat2 {
                a: a.clone(),
                b: zero.clone(),
                c: b.clone(),
                d: one.clone(),
            };
            let ginv = Mat2 {
                a: ainv.clone(),
                b: zero,
                c: b.neg().mul(&ainv)?,
                d: one,
            };
            Ok((m, g, ginv))
        }
        _ => Err(Error::UnsupportedFamily(
            "Kostant slice cases are SL2/PGL2 × additive/multiplicative".into(),
        )),
    }
}

/// Solve the single off-diagonal constraint of Ad_g(κ) = κ for b.
pub fn kostant_centralizer_solve(group: KostantGroup, law: LawKind) -> Result<CentralizerSolution> {
    let vars = match law {
        LawKind::Additive => Vars::new(vec!["x", "a", "b"]),
        _ => Vars::new(vec!["x", "a", "b"]),
    };
    let (m, g, ginv) = slice_and_borel(group, law, &vars)?;
    let ad = g.mul(&m)?.mul(&ginv)?;
    let defect = ad.sub(&m)?;
    // the only nonzero entry is (2,1); it is linear in b
    for (name, entry) in [("a", &defect.a), ("b", &defect.b), ("d", &defect.d)] {
        if !entry.is_zero() {
            return Err(Error::Invalid(format!(
                "unexpected nonzero entry {} in the adjoint defect",
                name
            )));
        }
    }
    let num = defect.c.num().clone();
    let den = defect.c.den().clone();
    // write num = c1·b + c0 (b occurs linearly)
    let b_idx = vars.index_of("b")?;
    let mut c1 = LaurentPoly::zero(&vars);
    let mut c0 = LaurentPoly::zero(&vars);
    for (e, c) in num.terms() {
        let mut e2 = e.clone();
        match e[b_idx] {
            0 => c0 = c0.add(&LaurentPoly::monomial(&vars, e2, c.clone()))?,
            1 => {
                e2[b_idx] = 0;
                c1 = c1.add(&LaurentPoly::monomial(&vars, e2, c.clone()))?;
            }
            _ => {
                return Err(Error::Invalid(
                    "adjoint defect is not linear in the Borel parameter".into(),
                ))
            }
        }
    }
    if c1.is_zero() {
        return Err(Error::Invalid("constraint does not involve b".into()));
    }
    let constraint = RatFunc::new(c0.neg(), c1)?;
    let _ = den;
    // substitute back and keep the residual as the certificate
    let residual = {
        let subst = |r: &RatFunc| -> Result<RatFunc> {
            let mut m = std::collections::BTreeMap::new();
            m.insert("b".to_string(), constraint.clone());
            r.substitute(&m)
        };
        Mat2 {
            a: subst(&defect.a)?,
            b: subst(&defect.b)?,
            c: subst(&defect.c)?,
            d: subst(&defect.d)?,
        }
    };
    if !residual.is_zero() {
        return Err(Error::Invalid(
            "substituted constraint does not annihilate the adjoint defect".into(),
        ));
    }
    Ok(CentralizerSolution {
        group,
        law,
        free_params: vec!["x".into(), "a".into()],
        constraint,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expect(group: KostantGroup, law: LawKind, text: &str) {
        let sol = kostant_centralizer_solve(group, law).unwrap();
        let vars = Vars::new(vec!["x", "a", "b"]);
        let expected = RatFunc::parse(&vars, text).unwrap();
        assert!(
            sol.constraint.eq_cross(&expected).unwrap(),
            "{:?}/{:?}: got {}",
            group,
            law,
            sol.constraint
        );
        assert!(sol.residual.is_zero());
    }

    #[test]
    fn sl2_additive() {
        expect(KostantGroup::SL2, LawKind::Additive, "(a - a^-1)/(2*x)");
    }

    #[test]
    fn pgl2_additive() {
        expect(KostantGroup::PGL2, LawKind::Additive, "(a - 1)/(x)");
    }

    #[test]
    fn sl2_multiplicative() {
        expect(KostantGroup::SL2, LawKind::Multiplicative, "(a - a^-1)/(x^2 - 1)");
    }

    #[test]
    fn pgl2_multiplicative() {
        expect(KostantGroup::PGL2, LawKind::Multiplicative, "(a - 1)/(x - 1)");
    }
}
