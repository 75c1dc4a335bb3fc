//! The canonical function of a homology sphere or ball through Lee's formula, and the
//! Gram matrices of the pairings it induces.

pub mod factored;

use crate::artinian::{graded_component, is_squarefree, mono_mul, relative_component, support, FaceMono, GradedBasis, LinComb, ParameterMatrix};
use crate::complex::{difference, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{det, laplace_det};
use crate::scalar::{Coeff, Field, Int, Poly, QFunc, RatFunc, Var};
use crate::topology::Orientation;
use std::collections::HashMap;
use std::sync::Mutex;

pub use factored::{Factored, FactoredSum};

/// Determinant of a `d × d` matrix; cofactor expansion for small sizes.
pub fn minor_det<K: Field>(m: &[Vec<K>], unit: &K) -> K {
    match m.len() {
        0 => unit.clone(),
        1..=6 => laplace_det(m),
        _ => det(m),
    }
}

/// The submatrix of a facet in sorted order, with the column of `replaced` swapped for
/// the auxiliary vector.
pub fn facet_matrix<K: Field>(m: &ParameterMatrix<K>, facet: &[u32], replaced: Option<u32>) -> Vec<Vec<K>> {
    let aux = m.aux.as_ref();
    (0..m.d)
        .map(|r| {
            facet
                .iter()
                .map(|&v| {
                    if Some(v) == replaced {
                        aux.expect("auxiliary vector is set")[r].clone()
                    } else {
                        m.entry(r, v).clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// One summand of Lee's formula, before evaluation:
/// `sign · Π A_F(i)^{e_i} / (A_F · Π A_F(j))`, all minors taken in sorted facet order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeTerm {
    pub sign: i8,
    pub facet: Face,
    pub numerator: Vec<(u32, u32)>,
    pub denominator: Vec<u32>,
}

/// The summands of Lee's formula for a top-degree monomial.
pub fn lee_terms(k: &SimplicialComplex, orientation: &Orientation, mono: &[u32]) -> Result<Vec<LeeTerm>> {
    let mut m = mono.to_vec();
    m.sort_unstable();
    if m.len() != k.d() {
        return Err(Error::InvalidInput(format!("monomial degree {} differs from d = {}", m.len(), k.d())));
    }
    let sigma = support(&m);
    if !k.contains_face(&sigma) {
        return Err(Error::NotAFace(sigma));
    }
    let mut out = Vec::new();
    for f in k.facets().iter().filter(|f| crate::complex::is_subset(&sigma, f)) {
        let sign = orientation.sign(f).ok_or_else(|| Error::InvalidInput(format!("facet {f:?} has no orientation")))?;
        let numerator = sigma
            .iter()
            .map(|&v| (v, m.iter().filter(|&&x| x == v).count() as u32 - 1))
            .filter(|e| e.1 > 0)
            .collect();
        out.push(LeeTerm { sign, facet: f.clone(), numerator, denominator: difference(f, &sigma) });
    }
    Ok(out)
}

/// Evaluates the canonical function through Lee's formula, caching the minors
/// `A_F` and `A_F(i)`.
pub struct PsiEvaluator<K: Field> {
    complex: SimplicialComplex,
    matrix: ParameterMatrix<K>,
    orientation: Orientation,
    cache: Mutex<HashMap<(Face, Option<u32>), K>>,
}

impl<K: Field> PsiEvaluator<K> {
    pub fn new(complex: SimplicialComplex, matrix: ParameterMatrix<K>, orientation: Orientation) -> Result<Self> {
        if matrix.aux.is_none() {
            return Err(Error::InvalidInput("parameter matrix has no auxiliary vector".into()));
        }
        if matrix.d != complex.d() {
            return Err(Error::InvalidInput("parameter matrix has the wrong number of rows".into()));
        }
        Ok(PsiEvaluator { complex, matrix, orientation, cache: Mutex::new(HashMap::new()) })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn matrix(&self) -> &ParameterMatrix<K> {
        &self.matrix
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// `A_F` (for `None`) or `A_F(i)`, in sorted facet order.
    pub fn minor(&self, facet: &[u32], replaced: Option<u32>) -> K {
        let key = (facet.to_vec(), replaced);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = minor_det(&facet_matrix(&self.matrix, facet, replaced), self.matrix.unit());
        self.cache.lock().unwrap().insert(key, v.clone());
        v
    }

    fn eval_term(&self, t: &LeeTerm) -> Result<K> {
        let unit = self.matrix.unit();
        let af = self.minor(&t.facet, None);
        let mut den = af.clone();
        if den.is_zero() {
            return Err(Error::NotLsop);
        }
        for &j in &t.denominator {
            let x = self.minor(&t.facet, Some(j));
            if x.is_zero() {
                return Err(Error::UnsatisfiedMinor { facet: t.facet.clone(), vertex: Some(j) });
            }
            den = den.mul(&x);
        }
        let mut num = if t.sign > 0 { unit.clone() } else { unit.neg() };
        for &(i, e) in &t.numerator {
            let x = self.minor(&t.facet, Some(i));
            if x.is_zero() {
                return Err(Error::UnsatisfiedMinor { facet: t.facet.clone(), vertex: Some(i) });
            }
            num = num.mul(&x.pow(e));
        }
        num.div(&den).ok_or(Error::DivisionByZero)
    }

    /// `Ψ` of a top-degree monomial with face support.
    pub fn psi(&self, mono: &[u32]) -> Result<K> {
        let terms = lee_terms(&self.complex, &self.orientation, mono)?;
        let mut acc = self.matrix.unit().zero();
        for t in &terms {
            acc = acc.add(&self.eval_term(t)?);
        }
        Ok(acc)
    }

    /// `Ψ` of a monomial, or zero when its support is not a face.
    pub fn psi_or_zero(&self, mono: &[u32]) -> Result<K> {
        if self.complex.contains_face(&support(mono)) {
            self.psi(mono)
        } else {
            Ok(self.matrix.unit().zero())
        }
    }

    /// `Ψ` extended linearly.
    pub fn psi_comb(&self, comb: &LinComb<K>) -> Result<K> {
        let mut acc = self.matrix.unit().zero();
        for (m, c) in comb {
            acc = acc.add(&c.mul(&self.psi_or_zero(m)?));
        }
        Ok(acc)
    }

    /// Matrix `Ψ(x_ρ x_τ)` over two lists of monomials.
    pub fn gram(&self, rows: &[FaceMono], cols: &[FaceMono]) -> Result<Vec<Vec<K>>> {
        rows.iter().map(|r| cols.iter().map(|c| self.psi_or_zero(&mono_mul(r, c))).collect()).collect()
    }

    /// The middle form over a basis of degree `d / 2`.
    pub fn middle_form(&self, middle: &GradedBasis<K>) -> Result<Vec<Vec<K>>> {
        if self.complex.d() % 2 == 1 {
            return Err(Error::OddTopDegree);
        }
        if middle.degree * 2 != self.complex.d() {
            return Err(Error::InvalidInput("basis is not in the middle degree".into()));
        }
        self.gram(middle.basis(), middle.basis())
    }

    /// Checks `A_{σ₁} x_{σ₁} = A_{σ₂} x_{σ₂}` in the top component for adjacent facets,
    /// with oriented determinants.
    pub fn facet_consistency(&self, top: &GradedBasis<K>) -> bool {
        let facets = self.complex.facets();
        let oriented = |f: &Face| {
            let a = self.minor(f, None);
            if self.orientation.sign(f) == Some(-1) {
                a.neg()
            } else {
                a
            }
        };
        for (_, owners) in self.complex.ridge_map() {
            if owners.len() != 2 {
                continue;
            }
            let (f, g) = (&facets[owners[0]], &facets[owners[1]]);
            let mut comb: LinComb<K> = LinComb::new();
            comb.insert(f.clone(), oriented(f));
            comb.insert(g.clone(), oriented(g).neg());
            if top.normal_form_comb(&comb).iter().any(|x| !x.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Whether every minor `A_F(i)` of the facets is nonzero for the matrix's auxiliary vector.
pub fn aux_minors_ok<K: Field>(k: &SimplicialComplex, m: &ParameterMatrix<K>) -> bool {
    k.facets().iter().all(|f| f.iter().all(|&v| !minor_det(&facet_matrix(m, f, Some(v)), m.unit()).is_zero()))
}

/// Sets the auxiliary vector to all ones, or to `fallback()` if a minor used by Lee's formula vanishes.
pub fn choose_aux<K: Field>(k: &SimplicialComplex, m: ParameterMatrix<K>, fallback: impl FnOnce() -> Vec<K>) -> ParameterMatrix<K> {
    let ones = vec![m.unit().clone(); m.d];
    let first = m.clone().with_aux(ones);
    if aux_minors_ok(k, &first) {
        first
    } else {
        m.with_aux(fallback())
    }
}

/// [`choose_aux`] over a rational function field, falling back to fresh transcendentals.
pub fn choose_aux_symbolic<C: Coeff>(k: &SimplicialComplex, m: ParameterMatrix<RatFunc<C>>) -> ParameterMatrix<RatFunc<C>> {
    let ctx = m.unit().ctx();
    let d = m.d;
    choose_aux(k, m, || (1..=d).map(|i| RatFunc::var(Var::aux(i), ctx)).collect())
}

/// The value predicted by top-degree elimination: the coordinate of `mono` against the
/// preferred top basis monomial, divided by that facet's oriented determinant.
pub fn psi_by_elimination<K: Field>(eval: &PsiEvaluator<K>, top: &GradedBasis<K>, mono: &[u32]) -> Option<K> {
    let anchor = top.basis().first()?;
    if !is_squarefree(anchor) {
        return None;
    }
    let coord = top.normal_form(mono)[0].clone();
    let sign = eval.orientation().sign(anchor)?;
    let a = eval.minor(anchor, None);
    let a = if sign < 0 { a.neg() } else { a };
    coord.div(&a)
}

/// Gram matrix of `k(Δ,Γ)_i × k(Δ)_{d−i} → k(Δ,Γ)_d` for a ball `Δ` with boundary `Γ`, in the
/// coordinate of the one-dimensional relative top component. `None` if that component is
/// not one-dimensional.
pub fn relative_gram<K: Field>(ball: &SimplicialComplex, boundary: &SimplicialComplex, m: &ParameterMatrix<K>, i: usize) -> Option<Vec<Vec<K>>> {
    let d = ball.d();
    let top = relative_component(ball, boundary, m, d);
    if top.dim() != 1 || i > d {
        return None;
    }
    let rel = relative_component(ball, boundary, m, i);
    let abs = graded_component(ball, m, d - i);
    Some(rel.basis().iter().map(|r| abs.basis().iter().map(|b| top.normal_form(&mono_mul(r, b))[0].clone()).collect()).collect())
}

/// Lee's formula over integer polynomial entries, kept factored instead of expanded.
pub struct FactoredPsi {
    complex: SimplicialComplex,
    orientation: Orientation,
    matrix: ParameterMatrix<QFunc>,
    polys: HashMap<(usize, Option<u32>), Poly<Int>>,
    cache: Mutex<HashMap<(Face, Option<u32>), Poly<Int>>>,
}

impl FactoredPsi {
    /// Every entry and the auxiliary vector must be polynomials.
    pub fn new(complex: SimplicialComplex, matrix: ParameterMatrix<QFunc>, orientation: Orientation) -> Result<Self> {
        let aux = matrix.aux.clone().ok_or_else(|| Error::InvalidInput("parameter matrix has no auxiliary vector".into()))?;
        if matrix.d != complex.d() {
            return Err(Error::InvalidInput("parameter matrix has the wrong number of rows".into()));
        }
        let poly = |x: &QFunc| -> Result<Poly<Int>> {
            let den = x.denom();
            match den.constant_value() {
                Some(c) if den.is_constant() => {
                    let q = x.numer().div_coeff(&c).ok_or_else(|| Error::InvalidInput("entry is not an integer polynomial".into()))?;
                    Ok(q)
                }
                _ => Err(Error::InvalidInput("entry is not a polynomial".into())),
            }
        };
        let mut polys = HashMap::new();
        for r in 0..matrix.d {
            for &v in &matrix.vertices {
                polys.insert((r, Some(v)), poly(matrix.entry(r, v))?);
            }
            polys.insert((r, None), poly(&aux[r])?);
        }
        Ok(FactoredPsi { complex, orientation, matrix, polys, cache: Mutex::new(HashMap::new()) })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn matrix(&self) -> &ParameterMatrix<QFunc> {
        &self.matrix
    }

    pub fn minor(&self, facet: &[u32], replaced: Option<u32>) -> Poly<Int> {
        let key = (facet.to_vec(), replaced);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let d = self.matrix.d;
        let v = if d == 0 {
            Poly::one(())
        } else {
            let m: Vec<Vec<Poly<Int>>> = (0..d)
                .map(|r| {
                    facet.iter().map(|&v| self.polys[&(r, if Some(v) == replaced { None } else { Some(v) })].clone()).collect()
                })
                .collect();
            laplace_det(&m)
        };
        self.cache.lock().unwrap().insert(key, v.clone());
        v
    }

    /// The canonical function on a top-degree monomial; zero off faces.
    pub fn psi(&self, mono: &[u32]) -> Result<FactoredSum> {
        let mut m = mono.to_vec();
        m.sort_unstable();
        if !self.complex.contains_face(&support(&m)) {
            return Ok(FactoredSum::default());
        }
        let mut terms = Vec::new();
        for t in lee_terms(&self.complex, &self.orientation, &m)? {
            let mut num = Vec::new();
            for &(v, e) in &t.numerator {
                let a = self.minor(&t.facet, Some(v));
                num.extend(std::iter::repeat_n(a, e as usize));
            }
            let mut den = vec![self.minor(&t.facet, None)];
            den.extend(t.denominator.iter().map(|&v| self.minor(&t.facet, Some(v))));
            if den.iter().any(|p| p.is_zero()) {
                return Err(Error::UnsatisfiedMinor { facet: t.facet.clone(), vertex: None });
            }
            if let Some(f) = Factored::from_parts(t.sign as i64, &num, &den)? {
                terms.push(f);
            }
        }
        Ok(FactoredSum::new(terms))
    }
}
