//! Root data, finite and affine Weyl groups, Bruhat order, inversion sets,
//! and minimal coset representatives.
//!
//! Lattice conventions per family:
//! - `SL2`: the simple root and coroot are basis vectors and the basis
//!   pairing is the Cartan matrix [2], so c_α comes out as x (additive) and
//!   x - 1 (multiplicative).
//! - `PGL2`: character basis ϖ with α = 2ϖ, cocharacter basis ϖ∨ with
//!   α∨ = 2ϖ∨, basis pairing 1/2; c_α is 2x (additive) and x²-1
//!   (multiplicative), and e^{α∨} = y².
//! - `A(n)`: simple roots/coroots are basis vectors, basis pairing = Cartan.
//! - `GL2`: the standard rank-2 datum with identity pairing.
//! - `Torus(k)`: no roots, identity pairing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    SL2,
    PGL2,
    GL2,
    A(usize),
    Torus(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SL2 => write!(f, "SL2"),
            Family::PGL2 => write!(f, "PGL2"),
            Family::GL2 => write!(f, "GL2"),
            Family::A(n) => write!(f, "A{}", n),
            Family::Torus(k) => write!(f, "T{}", k),
        }
    }
}

/// A root together with its coroot, both in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Root {
    pub char_vec: Vec<i64>,
    pub cochar_vec: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Family,
    /// Lattice rank.
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    /// Basis pairing ⟨f_i, e_j⟩ = pairing_num[i][j] / pairing_den.
    pub pairing_num: Vec<Vec<i64>>,
    pub pairing_den: i64,
}

fn mat_id(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn build_root_datum(family: Family) -> Result<RootDatum> {
    let d = match family {
        Family::SL2 => RootDatum {
            family,
            rank: 1,
            cartan: vec![vec![2]],
            simple_roots: vec![vec![1]],
            simple_coroots: vec![vec![1]],
            pairing_num: vec![vec![2]],
            pairing_den: 1,
        },
        Family::PGL2 => RootDatum {
            family,
            rank: 1,
            cartan: vec![vec![2]],
            simple_roots: vec![vec![2]],
            simple_coroots: vec![vec![2]],
            pairing_num: vec![vec![1]],
            pairing_den: 2,
        },
        Family::GL2 => RootDatum {
            family,
            rank: 2,
            cartan: vec![vec![2]],
            simple_roots: vec![vec![1, -1]],
            simple_coroots: vec![vec![1, -1]],
            pairing_num: mat_id(2),
            pairing_den: 1,
        },
        Family::A(n) => {
            if n == 0 {
                return Err(Error::UnsupportedFamily("A0".into()));
            }
            let mut cartan = vec![vec![0i64; n]; n];
            for i in 0..n {
                cartan[i][i] = 2;
                if i + 1 < n {
                    cartan[i][i + 1] = -1;
                    cartan[i + 1][i] = -1;
                }
            }
            RootDatum {
                family,
                rank: n,
                cartan: cartan.clone(),
                simple_roots: mat_id(n),
                simple_coroots: mat_id(n),
                pairing_num: cartan,
                pairing_den: 1,
            }
        }
        Family::Torus(k) => RootDatum {
            family,
            rank: k,
            cartan: vec![],
            simple_roots: vec![],
            simple_coroots: vec![],
            pairing_num: mat_id(k),
            pairing_den: 1,
        },
    };
    d.check()?;
    Ok(d)
}

/// Parse a family label like "sl2", "pgl2", "a2", "torus1".
pub fn parse_family(label: &str) -> Result<Family> {
    let l = label.to_ascii_lowercase();
    match l.as_str() {
        "sl2" => Ok(Family::SL2),
        "pgl2" | "so3" => Ok(Family::PGL2),
        "gl2" => Ok(Family::GL2),
        _ => {
            if let Some(n) = l.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
                return Ok(Family::A(n));
            }
            if let Some(k) = l
                .strip_prefix("torus")
                .and_then(|s| s.parse::<usize>().ok())
            {
                return Ok(Family::Torus(k));
            }
            Err(Error::UnsupportedFamily(label.to_string()))
        }
    }
}

impl RootDatum {
    pub fn ss_rank(&self) -> usize {
        self.simple_roots.len()
    }

    fn check(&self) -> Result<()> {
        for (i, a) in self.simple_roots.iter().enumerate() {
            for (j, b) in self.simple_coroots.iter().enumerate() {
                let (num, den) = self.pair_raw(a, b);
                if num % den != 0 || num / den != self.cartan[i][j] {
                    return Err(Error::Invalid(format!(
                        "pairing <a_{}, a_{}^> = {}/{} differs from Cartan {}",
                        i, j, num, den, self.cartan[i][j]
                    )));
                }
            }
        }
        Ok(())
    }

    fn pair_raw(&self, ch: &[i64], co: &[i64]) -> (i64, i64) {
        let mut num = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                num += ch[i] * self.pairing_num[i][j] * co[j];
            }
        }
        (num, self.pairing_den)
    }

    /// Integral pairing of a character vector with a cocharacter vector.
    /// Errors when the value is not an integer (never the case for the
    /// root/coroot pairings the algorithms use).
    pub fn pair(&self, ch: &[i64], co: &[i64]) -> Result<i64> {
        let (num, den) = self.pair_raw(ch, co);
        if num % den != 0 {
            return Err(Error::LatticeMismatch(format!(
                "non-integral pairing {}/{}",
                num, den
            )));
        }
        Ok(num / den)
    }

    /// Reflection s_r on the cocharacter lattice: λ - ⟨α, λ⟩ α∨.
    pub fn reflect_cochar(&self, r: &Root, lam: &[i64]) -> Result<Vec<i64>> {
        let k = self.pair(&r.char_vec, lam)?;
        Ok(lam
            .iter()
            .zip(r.cochar_vec.iter())
            .map(|(x, a)| x - k * a)
            .collect())
    }

    /// Reflection s_r on the character lattice: μ - ⟨μ, α∨⟩ α.
    pub fn reflect_char(&self, r: &Root, mu: &[i64]) -> Result<Vec<i64>> {
        let k = self.pair(mu, &r.cochar_vec)?;
        Ok(mu
            .iter()
            .zip(r.char_vec.iter())
            .map(|(x, a)| x - k * a)
            .collect())
    }

    /// Affine reflection s_{α+nα₀} on the cocharacter lattice:
    /// x - (⟨x,α⟩ + n)·α∨ = s_α(x) + n·α∨.
    pub fn affine_reflect(&self, r: &Root, n: i64, x: &[i64]) -> Result<Vec<i64>> {
        let k = self.pair(&r.char_vec, x)? + n;
        Ok(x.iter()
            .zip(r.cochar_vec.iter())
            .map(|(v, a)| v - k * a)
            .collect())
    }

    /// All roots with their coroots, by Weyl-orbit closure of the simple roots.
    pub fn roots(&self) -> Result<Vec<Root>> {
        let simples: Vec<Root> = self
            .simple_roots
            .iter()
            .zip(self.simple_coroots.iter())
            .map(|(a, b)| Root {
                char_vec: a.clone(),
                cochar_vec: b.clone(),
            })
            .collect();
        let mut all: Vec<Root> = Vec::new();
        let mut frontier = simples.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in frontier {
                if all.contains(&r) {
                    continue;
                }
                all.push(r.clone());
                for s in &simples {
                    let nr = Root {
                        char_vec: self.reflect_char(s, &r.char_vec)?,
                        cochar_vec: self.reflect_cochar(s, &r.cochar_vec)?,
                    };
                    if !all.contains(&nr) {
                        next.push(nr);
                    }
                }
            }
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    /// Coordinates of a root in the simple-root basis, over the rationals
    /// represented as (numerators, denominator).
    fn simple_root_coords(&self, ch: &[i64]) -> Result<Vec<(i64, i64)>> {
        // Solve Σ c_i α_i = ch by Gaussian elimination over Q.
        let s = self.ss_rank();
        let r = self.rank;
        // matrix with columns the simple roots
        let mut m: Vec<Vec<f64>> = Vec::new();
        // exact elimination with i128 fractions would be overkill at this
        // size; use the pairing with fundamental coweights instead when the
        // simple roots are unit vectors, otherwise do exact elimination.
        let _ = (&m, r);
        m.clear();
        // exact rational elimination
        let mut a: Vec<Vec<i64>> = (0..r)
            .map(|row| {
                let mut v: Vec<i64> = (0..s).map(|col| self.simple_roots[col][row]).collect();
                v.push(ch[row]);
                v
            })
            .collect();
        // fraction-free Gauss-Jordan
        let mut den = 1i64;
        let mut pivot_row = 0usize;
        let mut pivots = Vec::new();
        for col in 0..s {
            let Some(pr) = (pivot_row..r).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(pivot_row, pr);
            let p = a[pivot_row][col];
            for i in 0..r {
                if i != pivot_row && a[i][col] != 0 {
                    let f = a[i][col];
                    for j in 0..=s {
                        a[i][j] = a[i][j] * p - a[pivot_row][j] * f;
                    }
                }
            }
            pivots.push((pivot_row, col, p));
            pivot_row += 1;
            den = den.saturating_mul(1);
        }
        let _ = den;
        let mut coords = vec![(0i64, 1i64); s];
        for (row, col, _) in &pivots {
            let p = a[*row][*col];
            coords[*col] = (a[*row][s], p);
        }
        // consistency: rows without pivots must be zero
        for i in pivot_row..r {
            if a[i][s] != 0 {
                return Err(Error::LatticeMismatch(
                    "vector outside the root lattice span".into(),
                ));
            }
        }
        Ok(coords)
    }

    /// True if the root is positive (first nonzero simple-root coordinate > 0).
    pub fn is_positive(&self, r: &Root) -> Result<bool> {
        let coords = self.simple_root_coords(&r.char_vec)?;
        for (n, d) in coords {
            if n != 0 {
                return Ok(n.signum() * d.signum() > 0);
            }
        }
        Ok(false)
    }

    pub fn positive_roots(&self) -> Result<Vec<Root>> {
        let mut out = Vec::new();
        for r in self.roots()? {
            if self.is_positive(&r)? {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Height = sum of simple-root coordinates; the highest root maximizes it.
    pub fn highest_root(&self) -> Result<Root> {
        let mut best: Option<(i64, Root)> = None;
        for r in self.positive_roots()? {
            let coords = self.simple_root_coords(&r.char_vec)?;
            let mut h_num = 0i64;
            let mut h_den = 1i64;
            for (n, d) in coords {
                // h += n/d
                h_num = h_num * d + n * h_den;
                h_den *= d;
            }
            let key = h_num * (2 * h_den.signum()) / h_den.abs().max(1);
            match &best {
                Some((k, _)) if *k >= key => {}
                _ => best = Some((key, r)),
            }
        }
        best.map(|(_, r)| r)
            .ok_or_else(|| Error::UnsupportedFamily("no roots".into()))
    }

    /// True when the simple coroots span the full cocharacter lattice, which
    /// is what the affine enumeration (s₀ = t_{θ∨} s_θ) needs.
    pub fn supports_affine(&self) -> bool {
        if self.ss_rank() != self.rank {
            return false;
        }
        // determinant of the coroot matrix must be ±1
        let n = self.rank;
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.simple_coroots[j][i]).collect())
            .collect();
        let mut det = 1i64;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&i| m[i][col] != 0) else {
                return false;
            };
            if pr != col {
                m.swap(col, pr);
                det = -det;
            }
            det *= m[col][col].signum();
            let p = m[col][col];
            for i in (col + 1)..n {
                if m[i][col] != 0 {
                    // integer row reduction: scale rows to clear
                    let f = m[i][col];
                    for j in 0..n {
                        m[i][j] = m[i][j] * p - m[col][j] * f;
                    }
                }
            }
        }
        let mut prod: i128 = 1;
        for i in 0..n {
            prod *= m[i][i] as i128;
        }
        prod.abs() == 1 || {
            // fraction-free elimination inflates the product; fall back to
            // checking unimodularity via the adjugate when n is small
            n == 1 && self.simple_coroots[0][0].abs() == 1
        }
    }
}

// ---------------------------------------------------------------------------
// finite Weyl group
// ---------------------------------------------------------------------------

/// A finite Weyl group element: a reduced word plus its action matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// Action on the cocharacter lattice (columns = images of basis vectors).
    pub cochar_mat: Vec<Vec<i64>>,
    /// Action on the character lattice.
    pub char_mat: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply_cochar(&self, v: &[i64]) -> Vec<i64> {
        mat_apply(&self.cochar_mat, v)
    }

    pub fn apply_char(&self, v: &[i64]) -> Vec<i64> {
        mat_apply(&self.char_mat, v)
    }
}

fn mat_apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let n = m.len();
    let mut out = vec![0i64; n];
    for j in 0..v.len() {
        for i in 0..n {
            out[i] += m[i][j] * v[j];
        }
    }
    out
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// The full finite Weyl group, enumerated once.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    pub elements: Vec<WeylElement>,
    index: BTreeMap<Vec<Vec<i64>>, usize>,
    /// Reflection matrices of the simple generators on the cocharacter lattice.
    gen_cochar: Vec<Vec<Vec<i64>>>,
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        let n = datum.rank;
        let s = datum.ss_rank();
        let mut gen_cochar = Vec::new();
        let mut gen_char = Vec::new();
        for i in 0..s {
            let root = Root {
                char_vec: datum.simple_roots[i].clone(),
                cochar_vec: datum.simple_coroots[i].clone(),
            };
            let mut mc = Vec::new();
            let mut mh = Vec::new();
            for j in 0..n {
                let mut e = vec![0i64; n];
                e[j] = 1;
                mc.push(datum.reflect_cochar(&root, &e)?);
                mh.push(datum.reflect_char(&root, &e)?);
            }
            // columns -> matrix (transpose of the list of images)
            gen_cochar.push(transpose(&mc));
            gen_char.push(transpose(&mh));
        }
        let id = WeylElement {
            word: vec![],
            cochar_mat: mat_id(n),
            char_mat: mat_id(n),
        };
        let mut elements = vec![id];
        let mut index = BTreeMap::new();
        index.insert(elements[0].cochar_mat.clone(), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &wi in &frontier {
                for g in 0..s {
                    let w = &elements[wi];
                    // right multiplication: w * s_g
                    let mc = mat_mul(&w.cochar_mat, &gen_cochar[g]);
                    if !index.contains_key(&mc) {
                        let mh = mat_mul(&w.char_mat, &gen_char[g]);
                        let mut word = w.word.clone();
                        word.push(g);
                        index.insert(mc.clone(), elements.len());
                        next.push(elements.len());
                        elements.push(WeylElement {
                            word,
                            cochar_mat: mc,
                            char_mat: mh,
                        });
                    }
                }
            }
            frontier = next;
        }
        let _ = gen_char;
        Ok(WeylGroup {
            datum: datum.clone(),
            elements,
            index,
            gen_cochar,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn lookup(&self, cochar_mat: &Vec<Vec<i64>>) -> Result<&WeylElement> {
        self.index
            .get(cochar_mat)
            .map(|&i| &self.elements[i])
            .ok_or_else(|| Error::Invalid("element outside the Weyl group".into()))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<&WeylElement> {
        let n = self.datum.rank;
        let mut m = mat_id(n);
        for &g in word {
            if g >= self.gen_cochar.len() {
                return Err(Error::Invalid(format!("generator index {}", g)));
            }
            m = mat_mul(&m, &self.gen_cochar[g]);
        }
        self.lookup(&m)
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> Result<&WeylElement> {
        self.lookup(&mat_mul(&a.cochar_mat, &b.cochar_mat))
    }

    pub fn inverse(&self, a: &WeylElement) -> Result<&WeylElement> {
        // the group is tiny; scan
        for b in &self.elements {
            if mat_mul(&a.cochar_mat, &b.cochar_mat) == mat_id(self.datum.rank) {
                return Ok(b);
            }
        }
        Err(Error::Invalid("inverse not found".into()))
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|w| w.length())
            .expect("nonempty group")
    }

    /// Left inversion set: positive roots α with s_α w < w.
    pub fn inversion_set(&self, w: &WeylElement) -> Result<Vec<Root>> {
        let winv = self.inverse(w)?;
        let mut out = Vec::new();
        for r in self.datum.positive_roots()? {
            let img = Root {
                char_vec: winv.apply_char(&r.char_vec),
                cochar_vec: winv.apply_cochar(&r.cochar_vec),
            };
            if !self.datum.is_positive(&img)? {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Bruhat order by the lifting recursion on left descents.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> Result<bool> {
        if v.is_identity() {
            return Ok(true);
        }
        if v.length() > w.length() {
            return Ok(false);
        }
        // left descent of w: first letter of its reduced word
        let s = w.word[0];
        let sw = self.multiply(self.from_word(&[s])?, w)?.clone();
        let sv = self.multiply(self.from_word(&[s])?, v)?.clone();
        if sv.length() < v.length() {
            self.bruhat_leq(&sv, &sw)
        } else {
            self.bruhat_leq(v, &sw)
        }
    }
}

fn transpose(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    let m = rows[0].len();
    (0..m)
        .map(|i| (0..n).map(|j| rows[j][i]).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// affine Weyl group (enumerated up to a length bound)
// ---------------------------------------------------------------------------

/// Affine Weyl element t_λ · w stored as (translation, finite part index).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub translation: Vec<i64>,
    pub finite_word: Vec<usize>,
    pub cochar_mat: Vec<Vec<i64>>,
}

impl AffineWeylElement {
    /// Affine action on a cocharacter vector: x ↦ w(x) + λ.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let wx = mat_apply(&self.cochar_mat, x);
        wx.iter().zip(self.translation.iter()).map(|(a, b)| a + b).collect()
    }

    fn key(&self) -> (Vec<i64>, Vec<Vec<i64>>) {
        (self.translation.clone(), self.cochar_mat.clone())
    }
}

/// An affine root α + nα₀, acting on 𝔱 as x ↦ ⟨α, x⟩ + n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRoot {
    pub root_char: Vec<i64>,
    pub root_cochar: Vec<i64>,
    pub n: i64,
}

impl AffineRoot {
    pub fn finite(r: &Root) -> Self {
        AffineRoot {
            root_char: r.char_vec.clone(),
            root_cochar: r.cochar_vec.clone(),
            n: 0,
        }
    }

    pub fn negate(&self) -> Self {
        AffineRoot {
            root_char: self.root_char.iter().map(|x| -x).collect(),
            root_cochar: self.root_cochar.iter().map(|x| -x).collect(),
            n: -self.n,
        }
    }

    /// Canonical positive form: n > 0, or n = 0 and the finite part positive.
    pub fn canonicalize(&self, datum: &RootDatum) -> Result<Self> {
        let pos = if self.n != 0 {
            self.n > 0
        } else {
            datum.is_positive(&Root {
                char_vec: self.root_char.clone(),
                cochar_vec: self.root_cochar.clone(),
            })?
        };
        Ok(if pos { self.clone() } else { self.negate() })
    }
}

/// Enumeration of the affine Weyl group W^aff = Λ∨ ⋊ W up to a length bound.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    pub datum: RootDatum,
    pub finite: WeylGroup,
    pub bound: usize,
    pub elements: Vec<AffineWeylElement>,
    pub lengths: Vec<usize>,
    /// Reduced word in s₀..s_n (index 0 = the affine generator).
    pub words: Vec<Vec<usize>>,
    index: BTreeMap<(Vec<i64>, Vec<Vec<i64>>), usize>,
    /// Generators: s₀ = t_{θ∨} s_θ followed by the finite simple reflections.
    gens: Vec<AffineWeylElement>,
}

impl AffineWeyl {
    pub fn new(datum: &RootDatum, bound: usize) -> Result<Self> {
        if !datum.supports_affine() {
            return Err(Error::UnsupportedFamily(format!(
                "affine Weyl enumeration needs the coroot lattice to be the full cocharacter lattice ({})",
                datum.family
            )));
        }
        let finite = WeylGroup::new(datum)?;
        let n = datum.rank;
        let theta = datum.highest_root()?;
        // s_θ as a finite element
        let mut s_theta_mat = mat_id(n);
        for j in 0..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            let img = datum.reflect_cochar(&theta, &e)?;
            for i in 0..n {
                s_theta_mat[i][j] = img[i];
            }
        }
        let s_theta = finite.lookup(&s_theta_mat)?.clone();
        let mut gens = vec![AffineWeylElement {
            translation: theta.cochar_vec.clone(),
            finite_word: s_theta.word.clone(),
            cochar_mat: s_theta.cochar_mat.clone(),
        }];
        for i in 0..datum.ss_rank() {
            let w = finite.from_word(&[i])?;
            gens.push(AffineWeylElement {
                translation: vec![0; n],
                finite_word: w.word.clone(),
                cochar_mat: w.cochar_mat.clone(),
            });
        }
        let id = AffineWeylElement {
            translation: vec![0; n],
            finite_word: vec![],
            cochar_mat: mat_id(n),
        };
        let mut aw = AffineWeyl {
            datum: datum.clone(),
            finite,
            bound,
            elements: vec![id.clone()],
            lengths: vec![0],
            words: vec![vec![]],
            index: BTreeMap::new(),
            gens,
        };
        aw.index.insert(id.key(), 0);
        let mut frontier = vec![0usize];
        for len in 1..=bound {
            let mut next = Vec::new();
            for &wi in &frontier {
                for (g, gen) in aw.gens.clone().iter().enumerate() {
                    // right multiplication w * gen
                    let w = aw.elements[wi].clone();
                    let prod = aw.compose(&w, gen)?;
                    let k = prod.key();
                    if !aw.index.contains_key(&k) {
                        aw.index.insert(k, aw.elements.len());
                        let mut word = aw.words[wi].clone();
                        word.push(g);
                        aw.words.push(word);
                        aw.lengths.push(len);
                        next.push(aw.elements.len());
                        aw.elements.push(prod);
                    }
                }
            }
            frontier = next;
        }
        Ok(aw)
    }

    /// (λ, u)·(μ, v) = (λ + u(μ), uv).
    pub fn compose(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> Result<AffineWeylElement> {
        let umu = mat_apply(&a.cochar_mat, &b.translation);
        let translation: Vec<i64> = a
            .translation
            .iter()
            .zip(umu.iter())
            .map(|(x, y)| x + y)
            .collect();
        let mat = mat_mul(&a.cochar_mat, &b.cochar_mat);
        let fin = self.finite.lookup(&mat)?;
        Ok(AffineWeylElement {
            translation,
            finite_word: fin.word.clone(),
            cochar_mat: mat,
        })
    }

    pub fn inverse(&self, a: &AffineWeylElement) -> Result<AffineWeylElement> {
        let uinv = self
            .finite
            .inverse(self.finite.lookup(&a.cochar_mat)?)?
            .clone();
        let t = mat_apply(&uinv.cochar_mat, &a.translation);
        Ok(AffineWeylElement {
            translation: t.iter().map(|x| -x).collect(),
            finite_word: uinv.word.clone(),
            cochar_mat: uinv.cochar_mat,
        })
    }

    pub fn translation(&self, lam: &[i64]) -> AffineWeylElement {
        AffineWeylElement {
            translation: lam.to_vec(),
            finite_word: vec![],
            cochar_mat: mat_id(self.datum.rank),
        }
    }

    /// The affine reflection s_{α+nα₀} = t_{-n·α∨}·s_α as a group element.
    pub fn reflection(&self, ar: &AffineRoot) -> Result<AffineWeylElement> {
        let n = self.datum.rank;
        let root = Root {
            char_vec: ar.root_char.clone(),
            cochar_vec: ar.root_cochar.clone(),
        };
        let mut mat = mat_id(n);
        for j in 0..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            let img = self.datum.reflect_cochar(&root, &e)?;
            for i in 0..n {
                mat[i][j] = img[i];
            }
        }
        let fin = self.finite.lookup(&mat)?;
        Ok(AffineWeylElement {
            translation: ar.root_cochar.iter().map(|x| -x * ar.n).collect(),
            finite_word: fin.word.clone(),
            cochar_mat: mat,
        })
    }

    pub fn id_of(&self, a: &AffineWeylElement) -> Result<usize> {
        self.index
            .get(&a.key())
            .copied()
            .ok_or_else(|| Error::GraphTooSmall(format!("element beyond bound {}", self.bound)))
    }

    pub fn length(&self, a: &AffineWeylElement) -> Result<usize> {
        Ok(self.lengths[self.id_of(a)?])
    }

    pub fn word(&self, a: &AffineWeylElement) -> Result<Vec<usize>> {
        Ok(self.words[self.id_of(a)?].clone())
    }

    pub fn generator(&self, g: usize) -> &AffineWeylElement {
        &self.gens[g]
    }

    /// Action of the element on an affine root:
    /// (t_λ u)·(γ, n) = (uγ, n − ⟨uγ, λ⟩).
    pub fn act_on_affine_root(&self, a: &AffineWeylElement, ar: &AffineRoot) -> Result<AffineRoot> {
        let u = self.finite.lookup(&a.cochar_mat)?;
        let g_char = u.apply_char(&ar.root_char);
        let g_cochar = u.apply_cochar(&ar.root_cochar);
        let shift = self.datum.pair(&g_char, &a.translation)?;
        Ok(AffineRoot {
            root_char: g_char,
            root_cochar: g_cochar,
            n: ar.n - shift,
        })
    }

    fn is_positive_affine(&self, ar: &AffineRoot) -> Result<bool> {
        if ar.n != 0 {
            return Ok(ar.n > 0);
        }
        self.datum.is_positive(&Root {
            char_vec: ar.root_char.clone(),
            cochar_vec: ar.root_cochar.clone(),
        })
    }

    /// Left inversion set {β positive affine : s_β w < w}
    /// = {β positive : w⁻¹ β negative}. Cardinality is ℓ(w).
    pub fn inversion_set(&self, w: &AffineWeylElement) -> Result<Vec<AffineRoot>> {
        let winv = self.inverse(w)?;
        let lw = self.length(w)?;
        let mut out = Vec::new();
        // n is bounded by the translation sizes in the ball
        let nmax = (2 * self.bound as i64) + 2;
        for r in self.datum.roots()? {
            let ar0 = AffineRoot::finite(&r);
            for n in 0..=nmax {
                let ar = AffineRoot { n, ..ar0.clone() };
                if !self.is_positive_affine(&ar)? {
                    continue;
                }
                let img = self.act_on_affine_root(&winv, &ar)?;
                if !self.is_positive_affine(&img)? {
                    out.push(ar);
                }
            }
        }
        if out.len() != lw {
            return Err(Error::Invalid(format!(
                "inversion count {} differs from length {}",
                out.len(),
                lw
            )));
        }
        Ok(out)
    }

    /// Affine simple root of generator g (g = 0 is the affine node α₀ - θ).
    pub fn simple_affine_root(&self, g: usize) -> Result<AffineRoot> {
        if g == 0 {
            let theta = self.datum.highest_root()?;
            Ok(AffineRoot {
                root_char: theta.char_vec.iter().map(|x| -x).collect(),
                root_cochar: theta.cochar_vec.iter().map(|x| -x).collect(),
                n: 1,
            })
        } else {
            Ok(AffineRoot {
                root_char: self.datum.simple_roots[g - 1].clone(),
                root_cochar: self.datum.simple_coroots[g - 1].clone(),
                n: 0,
            })
        }
    }

    /// ℓ(s_g · v) < ℓ(v), decided without enumerating beyond the bound:
    /// equivalent to v⁻¹(α_g) being a negative affine root.
    pub fn has_left_descent(&self, v: &AffineWeylElement, g: usize) -> Result<bool> {
        let vinv = self.inverse(v)?;
        let img = self.act_on_affine_root(&vinv, &self.simple_affine_root(g)?)?;
        Ok(!self.is_positive_affine(&img)?)
    }

    /// Bruhat order by the lifting recursion on left descents.
    pub fn bruhat_leq(&self, v: &AffineWeylElement, w: &AffineWeylElement) -> Result<bool> {
        let lv = self.length(v)?;
        let lw = self.length(w)?;
        if lv == 0 {
            return Ok(true);
        }
        if lv > lw {
            return Ok(false);
        }
        let s = self.word(w)?[0];
        let sg = self.gens[s].clone();
        let sw = self.compose(&sg, w)?;
        if self.has_left_descent(v, s)? {
            let sv = self.compose(&sg, v)?;
            self.bruhat_leq(&sv, &sw)
        } else {
            self.bruhat_leq(v, &sw)
        }
    }

    /// Minimal-length representatives of W^aff/W_P with length ≤ bound.
    /// `parabolic` lists simple-reflection indices (0 = affine node allowed
    /// only when it is in the finite group, so only finite indices 1..=n here,
    /// where index i corresponds to the finite generator s_i).
    pub fn coset_representatives(&self, bound: usize, parabolic: &[usize]) -> Result<Vec<AffineWeylElement>> {
        // finite parabolic subgroup
        let mut sub = vec![self.finite.identity().clone()];
        let mut grew = true;
        while grew {
            grew = false;
            let mut add = Vec::new();
            for w in &sub {
                for &i in parabolic {
                    let p = self.finite.multiply(w, self.finite.from_word(&[i - 1])?)?;
                    if !sub.contains(p) && !add.contains(p) {
                        add.push(p.clone());
                    }
                }
            }
            if !add.is_empty() {
                grew = true;
                sub.extend(add);
            }
        }
        let mut best: BTreeMap<(Vec<i64>, Vec<Vec<i64>>), usize> = BTreeMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if self.lengths[i] > bound {
                continue;
            }
            // canonical coset key: minimum key among e·p for p in W_P
            let mut key: Option<(Vec<i64>, Vec<Vec<i64>>)> = None;
            for p in &sub {
                let ep = self.compose(
                    e,
                    &AffineWeylElement {
                        translation: vec![0; self.datum.rank],
                        finite_word: p.word.clone(),
                        cochar_mat: p.cochar_mat.clone(),
                    },
                )?;
                let k = ep.key();
                if key.as_ref().map(|cur| &k < cur).unwrap_or(true) {
                    key = Some(k);
                }
            }
            let key = key.unwrap();
            match best.get(&key) {
                Some(&j)
                    if (self.lengths[j], &self.elements[j].key())
                        <= (self.lengths[i], &e.key()) => {}
                _ => {
                    best.insert(key, i);
                }
            }
        }
        let mut reps: Vec<&AffineWeylElement> =
            best.values().map(|&i| &self.elements[i]).collect();
        reps.sort_by_key(|e| (self.length(e).unwrap_or(usize::MAX), e.key()));
        Ok(reps.into_iter().cloned().collect())
    }
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct RootDatumJson {
    pub family: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub lattice_basis: LatticeBasisJson,
}

#[derive(Serialize, Deserialize)]
pub struct LatticeBasisJson {
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub pairing: Vec<Vec<String>>,
}

impl RootDatum {
    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            family: self.family.to_string(),
            rank: self.rank,
            cartan_matrix: self.cartan.clone(),
            lattice_basis: LatticeBasisJson {
                simple_roots: self.simple_roots.clone(),
                simple_coroots: self.simple_coroots.clone(),
                pairing: self
                    .pairing_num
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&x| {
                                if self.pairing_den == 1 {
                                    x.to_string()
                                } else {
                                    format!("{}/{}", x, self.pairing_den)
                                }
                            })
                            .collect()
                    })
                    .collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_datum() {
        let d = build_root_datum(Family::SL2).unwrap();
        let roots = d.roots().unwrap();
        assert_eq!(roots.len(), 2);
        let alpha = Root {
            char_vec: vec![1],
            cochar_vec: vec![1],
        };
        assert_eq!(d.pair(&alpha.char_vec, &alpha.cochar_vec).unwrap(), 2);
    }

    #[test]
    fn pgl2_datum_conventions() {
        let d = build_root_datum(Family::PGL2).unwrap();
        // character lattice Z·ϖ with α = 2ϖ
        assert_eq!(d.simple_roots[0], vec![2]);
        assert_eq!(d.pair(&d.simple_roots[0], &d.simple_coroots[0]).unwrap(), 2);
        // <α, ϖ∨> = 1 and <ϖ, α∨> = 1 stay integral
        assert_eq!(d.pair(&[2], &[1]).unwrap(), 1);
        assert_eq!(d.pair(&[1], &[2]).unwrap(), 1);
    }

    #[test]
    fn a2_roots_by_orbit_closure() {
        let d = build_root_datum(Family::A(2)).unwrap();
        let roots = d.roots().unwrap();
        assert_eq!(roots.len(), 6);
        assert_eq!(d.positive_roots().unwrap().len(), 3);
    }

    #[test]
    fn affine_reflect_examples() {
        let d = build_root_datum(Family::SL2).unwrap();
        let alpha = Root {
            char_vec: vec![1],
            cochar_vec: vec![1],
        };
        // (α, 0, α∨) -> -α∨
        assert_eq!(d.affine_reflect(&alpha, 0, &[1]).unwrap(), vec![-1]);
        // (α, 1, 0) -> -α∨
        assert_eq!(d.affine_reflect(&alpha, 1, &[0]).unwrap(), vec![-1]);
        // A2: s_{α₁+2α₀}(α₂∨) = α₂∨ - (⟨α₂∨,α₁⟩+2)α₁∨ = α₂∨ - α₁∨
        let a2 = build_root_datum(Family::A(2)).unwrap();
        let a1 = Root {
            char_vec: vec![1, 0],
            cochar_vec: vec![1, 0],
        };
        assert_eq!(a2.affine_reflect(&a1, 2, &[0, 1]).unwrap(), vec![-1, 1]);
        // and the finite part agrees with s_α on a ball of lattice vectors
        for m in -3i64..=3 {
            for r in a2.roots().unwrap() {
                let x = vec![m, 1 - m];
                assert_eq!(
                    a2.affine_reflect(&r, 0, &x).unwrap(),
                    a2.reflect_cochar(&r, &x).unwrap()
                );
            }
        }
    }

    #[test]
    fn weyl_group_orders() {
        let a2 = WeylGroup::new(&build_root_datum(Family::A(2)).unwrap()).unwrap();
        assert_eq!(a2.order(), 6);
        let sl2 = WeylGroup::new(&build_root_datum(Family::SL2).unwrap()).unwrap();
        assert_eq!(sl2.order(), 2);
        let a3 = WeylGroup::new(&build_root_datum(Family::A(3)).unwrap()).unwrap();
        assert_eq!(a3.order(), 24);
    }

    #[test]
    fn inversion_sets_finite() {
        let d = build_root_datum(Family::A(2)).unwrap();
        let w = WeylGroup::new(&d).unwrap();
        // identity -> empty
        assert!(w.inversion_set(w.identity()).unwrap().is_empty());
        // s_α -> {α}
        let s1 = w.from_word(&[0]).unwrap().clone();
        let inv = w.inversion_set(&s1).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].char_vec, vec![1, 0]);
        // longest element -> all positive roots
        let w0 = w.longest().clone();
        assert_eq!(w0.length(), 3);
        assert_eq!(w.inversion_set(&w0).unwrap().len(), 3);
        // |inv(w)| = length(w) for every element
        for e in &w.elements {
            assert_eq!(w.inversion_set(e).unwrap().len(), e.length());
        }
    }

    /// Exhaustive subword oracle for Bruhat order.
    fn subword_oracle(w_word: &[usize], group: &WeylGroup, v: &WeylElement) -> bool {
        let n = w_word.len();
        for mask in 0..(1u32 << n) {
            let sub: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| w_word[i]).collect();
            if sub.len() != v.length() {
                continue;
            }
            if let Ok(e) = group.from_word(&sub) {
                if e == v {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn bruhat_agrees_with_subword_oracle_a2() {
        let d = build_root_datum(Family::A(2)).unwrap();
        let g = WeylGroup::new(&d).unwrap();
        for v in &g.elements {
            for w in &g.elements {
                let fast = g.bruhat_leq(v, w).unwrap();
                let slow = subword_oracle(&w.word, &g, v);
                assert_eq!(fast, slow, "v={:?} w={:?}", v.word, w.word);
            }
        }
        // spot checks from the spec
        let s1 = g.from_word(&[0]).unwrap().clone();
        let s2 = g.from_word(&[1]).unwrap().clone();
        let s1s2 = g.from_word(&[0, 1]).unwrap().clone();
        let s2s1s2 = g.from_word(&[1, 0, 1]).unwrap().clone();
        assert!(g.bruhat_leq(g.identity(), &s1s2).unwrap());
        assert!(!g.bruhat_leq(&s1s2, &s2).unwrap());
        assert!(g.bruhat_leq(&s1, &s2s1s2).unwrap());
    }

    #[test]
    fn affine_sl2_enumeration() {
        let d = build_root_datum(Family::SL2).unwrap();
        let aw = AffineWeyl::new(&d, 6).unwrap();
        // infinite dihedral: exactly 2 elements of each positive length
        for len in 1..=6usize {
            let count = aw.lengths.iter().filter(|&&l| l == len).count();
            assert_eq!(count, 2, "length {}", len);
        }
        // s0·s1 = t_{α∨}
        let s0 = aw.generator(0).clone();
        let s1 = aw.generator(1).clone();
        let t = aw.compose(&s0, &s1).unwrap();
        assert_eq!(t.translation, vec![1]);
        assert!(t.finite_word.is_empty());
    }

    #[test]
    fn affine_inversions_match_length() {
        let d = build_root_datum(Family::SL2).unwrap();
        let aw = AffineWeyl::new(&d, 5).unwrap();
        for e in &aw.elements {
            let inv = aw.inversion_set(e).unwrap();
            assert_eq!(inv.len(), aw.length(e).unwrap());
        }
    }

    /// Exhaustive subword oracle on affine reduced words.
    fn affine_subword_oracle(aw: &AffineWeyl, v: &AffineWeylElement, w: &AffineWeylElement) -> bool {
        let w_word = aw.word(w).unwrap();
        let lv = aw.length(v).unwrap();
        let n = w_word.len();
        for mask in 0..(1u32 << n) {
            let sub: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| w_word[i]).collect();
            if sub.len() != lv {
                continue;
            }
            let mut e = aw.elements[0].clone();
            for &g in &sub {
                e = aw.compose(&e, aw.generator(g)).unwrap();
            }
            if e == *v {
                return true;
            }
        }
        false
    }

    #[test]
    fn affine_bruhat_agrees_with_subword_oracle() {
        let d = build_root_datum(Family::SL2).unwrap();
        let aw = AffineWeyl::new(&d, 5).unwrap();
        for (i, v) in aw.elements.iter().enumerate() {
            for (j, w) in aw.elements.iter().enumerate() {
                if aw.lengths[i] > 5 || aw.lengths[j] > 5 {
                    continue;
                }
                let fast = aw.bruhat_leq(v, w).unwrap();
                let slow = affine_subword_oracle(&aw, v, w);
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn coset_representatives_sl2() {
        let d = build_root_datum(Family::SL2).unwrap();
        let aw = AffineWeyl::new(&d, 4).unwrap();
        // bound 0, full finite W: just the identity
        let reps0 = aw.coset_representatives(0, &[1]).unwrap();
        assert_eq!(reps0.len(), 1);
        assert!(reps0[0].translation.iter().all(|&x| x == 0));
        // bound 3: coweights {0, α∨, -α∨, 2α∨}
        let reps3 = aw.coset_representatives(3, &[1]).unwrap();
        let mut coweights: Vec<Vec<i64>> = reps3.iter().map(|e| e.translation.clone()).collect();
        coweights.sort();
        assert_eq!(coweights, vec![vec![-1], vec![0], vec![1], vec![2]]);
        // representatives are minimal within their cosets and pairwise distinct
        for r in &reps3 {
            let lr = aw.length(r).unwrap();
            for p in &aw.finite.elements {
                let rp = aw
                    .compose(
                        r,
                        &AffineWeylElement {
                            translation: vec![0; 1],
                            finite_word: p.word.clone(),
                            cochar_mat: p.cochar_mat.clone(),
                        },
                    )
                    .unwrap();
                if let Ok(l) = aw.length(&rp) {
                    assert!(l >= lr);
                }
            }
        }
        // bound 2, P = ∅: all affine elements of length ≤ 2
        let all2 = aw.coset_representatives(2, &[]).unwrap();
        assert_eq!(all2.len(), 5);
    }
}
