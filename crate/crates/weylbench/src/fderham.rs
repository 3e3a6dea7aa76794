//! The two-term complex attached to a group law: x^n ↦ [n]_F·x^n·dx, with
//! the Leibniz-type homomorphism property f(n+m) = f(n) +_F f(m).

use serde::{Deserialize, Serialize};

use crate::grouplaw::{GroupLaw, LawKind};
use crate::poly::{qi, LaurentPoly, Vars};
use crate::Result;

/// One row of the differential table: x^n ↦ coeff·x^n dx.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeRhamRow {
    pub n: i64,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeRhamTable {
    pub law: String,
    pub n_max: i64,
    pub rows: Vec<DeRhamRow>,
    pub homomorphism_checked: bool,
}

/// The n-series at the deformation coordinate: nħ (additive), qⁿ−1
/// (multiplicative), [n]_F(t) truncated (formal).
pub fn deformation_n_series(law: &GroupLaw, n: i64) -> Result<LaurentPoly> {
    match law.kind {
        LawKind::Additive => {
            let hv = Vars::new(vec!["h"]);
            Ok(LaurentPoly::var(&hv, "h")?.scale(&qi(n)))
        }
        LawKind::Multiplicative => {
            let qv = Vars::new(vec!["q"]);
            LaurentPoly::var(&qv, "q")?
                .pow_i(n)?
                .sub(&LaurentPoly::one(&qv))
        }
        LawKind::Formal => {
            let tv = Vars::new(vec!["t"]);
            let t = LaurentPoly::var(&tv, "t")?;
            law.n_series_poly(n, &t)
        }
    }
}

/// Build the differential table for |n| ≤ n_max and verify the homomorphism
/// property on every pair it can reach.
pub fn f_de_rham(law: &GroupLaw, n_max: i64) -> Result<DeRhamTable> {
    let mut rows = Vec::new();
    for n in -n_max..=n_max {
        rows.push(DeRhamRow {
            n,
            coeff: deformation_n_series(law, n)?.to_string(),
        });
    }
    // f(n+m) = f(n) +_F f(m) in the deformation coordinate
    for n in -n_max..=n_max {
        for m in -n_max..=n_max {
            let lhs = deformation_n_series(law, n + m)?;
            let fn_ = deformation_n_series(law, n)?;
            let fm = deformation_n_series(law, m)?;
            let rhs = match law.kind {
                // the group-like coordinate turns the formal sum into
                // a + b + ab exactly
                LawKind::Multiplicative => fn_.add(&fm)?.add(&fn_.mul(&fm)?)?,
                _ => law.f_add_poly(&fn_, &fm)?,
            };
            if lhs != rhs {
                return Err(crate::Error::Invalid(format!(
                    "homomorphism property failed at n={}, m={}",
                    n, m
                )));
            }
        }
    }
    Ok(DeRhamTable {
        law: format!("{:?}", law.kind),
        n_max,
        rows,
        homomorphism_checked: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_rescaled_de_rham() {
        // x^n ↦ nħ·x^n dx
        let t = f_de_rham(&GroupLaw::additive(), 10).unwrap();
        let hv = Vars::new(vec!["h"]);
        for row in &t.rows {
            let expected = LaurentPoly::var(&hv, "h").unwrap().scale(&qi(row.n));
            assert_eq!(LaurentPoly::parse(&hv, &row.coeff).unwrap(), expected);
        }
    }

    #[test]
    fn multiplicative_q_de_rham() {
        // x^n ↦ (q^n - 1)·x^n dx, negative n included
        let t = f_de_rham(&GroupLaw::multiplicative(), 10).unwrap();
        let qv = Vars::new(vec!["q"]);
        for row in &t.rows {
            let expected = LaurentPoly::var(&qv, "q")
                .unwrap()
                .pow_i(row.n)
                .unwrap()
                .sub(&LaurentPoly::one(&qv))
                .unwrap();
            assert_eq!(LaurentPoly::parse(&qv, &row.coeff).unwrap(), expected);
        }
        // n = 0 row is zero
        let zero_row = t.rows.iter().find(|r| r.n == 0).unwrap();
        assert_eq!(zero_row.coeff, "0");
    }

    #[test]
    fn formal_table_homomorphism() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(2);
        let law = crate::grouplaw::random_formal_law(&mut rng, 8).unwrap();
        let t = f_de_rham(&law, 4).unwrap();
        assert!(t.homomorphism_checked);
    }
}
