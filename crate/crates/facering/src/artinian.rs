//! Linear systems of parameters and graded components of Artinian reductions of
//! face rings, computed by elimination in monomial coordinates.

use crate::complex::{subsets_of_size, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::scalar::{Coeff, Field, FromCoeff, RatFunc, Var};
use std::collections::{BTreeMap, HashMap};

/// A monomial in the vertex variables, written as the sorted multiset of its vertices
/// (`x1^2 x3` is `[1, 1, 3]`).
pub type FaceMono = Vec<u32>;

/// A formal linear combination of vertex monomials.
pub type LinComb<K> = BTreeMap<FaceMono, K>;

pub fn support(m: &[u32]) -> Face {
    let mut s = m.to_vec();
    s.dedup();
    s
}

pub fn is_squarefree(m: &[u32]) -> bool {
    m.windows(2).all(|w| w[0] != w[1])
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> FaceMono {
    let mut m: FaceMono = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    m
}

/// Parses `"1^2 3"` into `[1, 1, 3]`.
pub fn parse_monomial(s: &str) -> Result<FaceMono> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (v, e) = match tok.split_once('^') {
            Some((v, e)) => (v, e),
            None => (tok, "1"),
        };
        let v: u32 = v.parse().map_err(|_| Error::InvalidInput(format!("bad vertex in monomial: {tok}")))?;
        let e: u32 = e.parse().map_err(|_| Error::InvalidInput(format!("bad exponent in monomial: {tok}")))?;
        out.extend(std::iter::repeat_n(v, e as usize));
    }
    out.sort_unstable();
    Ok(out)
}

pub fn render_monomial(m: &[u32]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let j = m[i..].iter().take_while(|&&v| v == m[i]).count();
        parts.push(if j == 1 { format!("x{}", m[i]) } else { format!("x{}^{}", m[i], j) });
        i += j;
    }
    parts.join("*")
}

/// How the entries of a parameter matrix were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LsopMode {
    /// Every entry an independent transcendental.
    FullGeneric,
    /// Identity on the first `d` vertices, transcendentals elsewhere.
    Reduced,
    /// Caller-supplied columns.
    Custom,
}

/// The `d × m` matrix of a linear system of parameters, with one column per vertex,
/// and an optional auxiliary column used by Lee's formula.
#[derive(Clone, Debug)]
pub struct ParameterMatrix<K: Field> {
    pub d: usize,
    pub vertices: Vec<u32>,
    pub cols: Vec<Vec<K>>,
    pub aux: Option<Vec<K>>,
    pub mode: LsopMode,
    unit: K,
}

impl<K: Field> ParameterMatrix<K> {
    pub fn new(vertices: Vec<u32>, cols: Vec<Vec<K>>, d: usize, unit: K, mode: LsopMode) -> Self {
        assert_eq!(vertices.len(), cols.len());
        assert!(cols.iter().all(|c| c.len() == d), "column length must equal d");
        ParameterMatrix { d, vertices, cols, aux: None, mode, unit }
    }

    pub fn unit(&self) -> &K {
        &self.unit
    }

    pub fn index_of(&self, v: u32) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn column(&self, v: u32) -> &[K] {
        &self.cols[self.index_of(v).expect("vertex has a column")]
    }

    pub fn entry(&self, row: usize, v: u32) -> &K {
        &self.column(v)[row]
    }

    /// Columns of the listed vertices, as a `d × |face|` matrix (rows first).
    pub fn submatrix(&self, face: &[u32]) -> Vec<Vec<K>> {
        (0..self.d).map(|r| face.iter().map(|&v| self.entry(r, v).clone()).collect()).collect()
    }

    pub fn with_aux(mut self, aux: Vec<K>) -> Self {
        assert_eq!(aux.len(), self.d);
        self.aux = Some(aux);
        self
    }

    pub fn map<L: Field>(&self, unit: L, f: &dyn Fn(&K) -> L) -> ParameterMatrix<L> {
        self.try_map(unit, &|x| Ok(f(x))).expect("infallible")
    }

    pub fn try_map<L: Field>(&self, unit: L, f: &dyn Fn(&K) -> Result<L>) -> Result<ParameterMatrix<L>> {
        let cols = self.cols.iter().map(|c| c.iter().map(f).collect::<Result<Vec<L>>>()).collect::<Result<_>>()?;
        let aux = match &self.aux {
            Some(a) => Some(a.iter().map(f).collect::<Result<Vec<L>>>()?),
            None => None,
        };
        Ok(ParameterMatrix { d: self.d, vertices: self.vertices.clone(), cols, aux, mode: self.mode, unit })
    }

    /// Keeps the rows listed and the columns of `vertices`.
    pub fn restrict(&self, rows: &[usize], vertices: &[u32]) -> Self {
        let cols = vertices.iter().map(|&v| rows.iter().map(|&r| self.entry(r, v).clone()).collect()).collect();
        let aux = self.aux.as_ref().map(|a| rows.iter().map(|&r| a[r].clone()).collect());
        ParameterMatrix { d: rows.len(), vertices: vertices.to_vec(), cols, aux, mode: LsopMode::Custom, unit: self.unit.clone() }
    }

    /// Adds or replaces columns.
    pub fn with_columns(&self, extra: &[(u32, Vec<K>)]) -> Self {
        let mut map: BTreeMap<u32, Vec<K>> = self.vertices.iter().copied().zip(self.cols.iter().cloned()).collect();
        for (v, c) in extra {
            assert_eq!(c.len(), self.d);
            map.insert(*v, c.clone());
        }
        ParameterMatrix {
            d: self.d,
            vertices: map.keys().copied().collect(),
            cols: map.into_values().collect(),
            aux: self.aux.clone(),
            mode: LsopMode::Custom,
            unit: self.unit.clone(),
        }
    }

    /// The linear form `θ_row` as (vertex, coefficient) pairs with nonzero coefficient.
    pub fn theta(&self, row: usize) -> Vec<(u32, K)> {
        self.vertices
            .iter()
            .zip(&self.cols)
            .filter(|(_, c)| !c[row].is_zero())
            .map(|(&v, c)| (v, c[row].clone()))
            .collect()
    }

    /// Rank of `M(σ)` equals `|σ|` on every facet.
    pub fn is_lsop(&self, k: &SimplicialComplex) -> bool {
        if k.d() != self.d || k.vertices().iter().any(|v| self.index_of(*v).is_none()) {
            return false;
        }
        k.facets().iter().all(|f| f.is_empty() || crate::linalg::rank(&self.submatrix(f)) == f.len())
    }
}

impl<C: Coeff> ParameterMatrix<RatFunc<C>> {
    /// Evaluates every entry at a point.
    pub fn at_point<F: FromCoeff<C>>(&self, like: &F, point: &dyn Fn(Var) -> F) -> Result<ParameterMatrix<F>> {
        self.try_map(like.one(), &|x| x.eval(like, point))
    }

    /// Every transcendental appearing in the matrix (including the auxiliary column).
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.cols.iter().flatten().chain(self.aux.iter().flatten()).flat_map(|x| x.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// A parameter matrix over the rational function field in the entries.
pub fn make_lsop<C: Coeff>(k: &SimplicialComplex, ctx: C::Ctx, mode: LsopMode) -> Result<ParameterMatrix<RatFunc<C>>> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let d = k.d();
    let one = RatFunc::<C>::constant(1, ctx);
    let zero = RatFunc::<C>::constant(0, ctx);
    let cols = k
        .vertices()
        .iter()
        .enumerate()
        .map(|(idx, &v)| {
            (0..d)
                .map(|r| match mode {
                    LsopMode::Reduced if idx < d => {
                        if r == idx {
                            one.clone()
                        } else {
                            zero.clone()
                        }
                    }
                    _ => RatFunc::var(Var::entry(r + 1, v), ctx),
                })
                .collect()
        })
        .collect();
    let mode = if mode == LsopMode::Custom { LsopMode::FullGeneric } else { mode };
    Ok(ParameterMatrix::new(k.vertices().to_vec(), cols, d, one, mode))
}

/// A generic matrix whose listed columns are replaced by the given ones.
pub fn custom_lsop<C: Coeff>(
    k: &SimplicialComplex,
    ctx: C::Ctx,
    overrides: &[(u32, Vec<RatFunc<C>>)],
) -> Result<ParameterMatrix<RatFunc<C>>> {
    let base = make_lsop(k, ctx, LsopMode::FullGeneric)?;
    for (v, c) in overrides {
        if base.index_of(*v).is_none() || c.len() != base.d {
            return Err(Error::InvalidInput(format!("bad custom column for vertex {v}")));
        }
    }
    Ok(base.with_columns(overrides))
}

/// Degree-`i` monomials whose support passes `keep`, most preferred first:
/// squarefree before non-squarefree, then lexicographic.
pub fn monomials_of_degree(k: &SimplicialComplex, i: usize, keep: &dyn Fn(&[u32]) -> bool) -> Vec<FaceMono> {
    let mut out: Vec<FaceMono> = Vec::new();
    if i == 0 {
        if keep(&[]) {
            out.push(Vec::new());
        }
        return out;
    }
    for s in 1..=i.min(k.d()) {
        for face in k.faces(s as i64 - 1) {
            if !keep(&face) {
                continue;
            }
            // distribute the remaining i - s exponent units over the face
            let mut stack = vec![(0usize, i - s, face.clone())];
            while let Some((pos, left, acc)) = stack.pop() {
                if pos == face.len() - 1 {
                    let mut m = acc.clone();
                    m.extend(std::iter::repeat_n(face[pos], left));
                    m.sort_unstable();
                    out.push(m);
                    continue;
                }
                for e in 0..=left {
                    let mut m = acc.clone();
                    m.extend(std::iter::repeat_n(face[pos], e));
                    stack.push((pos + 1, left - e, m));
                }
            }
        }
    }
    out.sort_unstable_by(|a, b| (!is_squarefree(a)).cmp(&!is_squarefree(b)).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Multiplies a combination by the linear form `Σ coeffs[v] x_v`, dropping
/// monomials whose support is not a face.
pub fn mul_linear<K: Field>(k: &SimplicialComplex, comb: &LinComb<K>, form: &[(u32, K)]) -> LinComb<K> {
    let mut out: LinComb<K> = BTreeMap::new();
    let mut face_cache: HashMap<Face, bool> = HashMap::new();
    for (m, c) in comb {
        for (v, a) in form {
            let p = mono_mul(m, &[*v]);
            let s = support(&p);
            let ok = *face_cache.entry(s.clone()).or_insert_with(|| k.contains_face(&s));
            if !ok {
                continue;
            }
            let term = c.mul(a);
            match out.get_mut(&p) {
                Some(x) => *x = x.add(&term),
                None => {
                    out.insert(p, term);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// One graded component of an Artinian reduction (absolute or relative), with the
/// data needed for normal forms.
#[derive(Clone, Debug)]
pub struct GradedBasis<K: Field> {
    pub degree: usize,
    /// Column order of the elimination: least preferred first.
    columns: Vec<FaceMono>,
    index: HashMap<FaceMono, usize>,
    echelon: Echelon<K>,
    basis: Vec<FaceMono>,
    coord: Vec<Option<usize>>,
    unit: K,
}

impl<K: Field> GradedBasis<K> {
    fn build(
        k: &SimplicialComplex,
        m: &ParameterMatrix<K>,
        i: usize,
        keep: &dyn Fn(&[u32]) -> bool,
    ) -> GradedBasis<K> {
        let mut columns = monomials_of_degree(k, i, keep);
        columns.reverse();
        let index: HashMap<FaceMono, usize> = columns.iter().cloned().enumerate().map(|(c, m)| (m, c)).collect();
        let mut rows: Vec<SparseRow<K>> = Vec::new();
        if i > 0 {
            let lower = monomials_of_degree(k, i - 1, keep);
            for r in 0..m.d {
                let form = m.theta(r);
                for mu in &lower {
                    let mut row: SparseRow<K> = Vec::new();
                    for (v, a) in &form {
                        let p = mono_mul(mu, &[*v]);
                        if let Some(&c) = index.get(&p) {
                            row.push((c, a.clone()));
                        }
                    }
                    row.sort_by_key(|e| e.0);
                    rows.push(row);
                }
            }
        }
        let echelon = Echelon::new(rows, columns.len());
        let free = echelon.free_columns();
        let mut coord = vec![None; columns.len()];
        let basis: Vec<FaceMono> = free.iter().rev().map(|&c| columns[c].clone()).collect();
        for (pos, &c) in free.iter().rev().enumerate() {
            coord[c] = Some(pos);
        }
        GradedBasis { degree: i, columns, index, echelon, basis, coord, unit: m.unit.clone() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis monomials, most preferred first.
    pub fn basis(&self) -> &[FaceMono] {
        &self.basis
    }

    pub fn num_monomials(&self) -> usize {
        self.columns.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn unit(&self) -> &K {
        &self.unit
    }

    /// Whether the monomial is one of the coordinates (its support passes the filter).
    pub fn has_monomial(&self, m: &[u32]) -> bool {
        self.index.contains_key(m)
    }

    /// Coordinates of a monomial's class; zero when its support is not allowed.
    pub fn normal_form(&self, mono: &[u32]) -> Vec<K> {
        let mut m = mono.to_vec();
        m.sort_unstable();
        let mut out = vec![self.unit.zero(); self.dim()];
        if let Some(&c) = self.index.get(&m) {
            for (j, v) in self.echelon.reduce_unit(c, &self.unit) {
                let p = self.coord[j].expect("free column");
                out[p] = out[p].add(&v);
            }
        }
        out
    }

    pub fn normal_form_comb(&self, comb: &LinComb<K>) -> Vec<K> {
        let row: SparseRow<K> = {
            let mut r: SparseRow<K> =
                comb.iter().filter_map(|(m, v)| self.index.get(m).map(|&c| (c, v.clone()))).collect();
            r.sort_by_key(|e| e.0);
            r
        };
        let mut out = vec![self.unit.zero(); self.dim()];
        for (j, v) in self.echelon.reduce(&row) {
            let p = self.coord[j].expect("free column");
            out[p] = out[p].add(&v);
        }
        out
    }

    /// Combination of basis monomials with the given coordinates.
    pub fn lift(&self, coords: &[K]) -> LinComb<K> {
        self.basis.iter().cloned().zip(coords.iter().cloned()).filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Graded component `k(K;Θ)_i`.
pub fn graded_component<K: Field>(k: &SimplicialComplex, m: &ParameterMatrix<K>, i: usize) -> GradedBasis<K> {
    let face = |s: &[u32]| s.is_empty() || k.contains_face(s);
    GradedBasis::build(k, m, i, &face)
}

/// Graded component with the dimension compared against `h_i`.
pub fn graded_component_checked<K: Field>(
    k: &SimplicialComplex,
    m: &ParameterMatrix<K>,
    i: usize,
) -> Result<GradedBasis<K>> {
    let b = graded_component(k, m, i);
    let h = k.h_vector().0;
    let expected = h.get(i).copied().unwrap_or(0);
    if b.dim() as i64 != expected {
        return Err(Error::DimensionMismatch { degree: i, expected, found: b.dim() });
    }
    Ok(b)
}

/// Degree-`i` part of `k(K, K';Θ)`: monomials supported on faces of `K` outside `K'`.
pub fn relative_component<K: Field>(
    k: &SimplicialComplex,
    sub: &SimplicialComplex,
    m: &ParameterMatrix<K>,
    i: usize,
) -> GradedBasis<K> {
    let keep = |s: &[u32]| !s.is_empty() && !sub.contains_face(s) && k.contains_face(s);
    GradedBasis::build(k, m, i, &keep)
}

/// Rank of the images of `rel`'s basis in `abs`; equals `rel.dim()` iff the natural map is injective.
pub fn inclusion_rank<K: Field>(rel: &GradedBasis<K>, abs: &GradedBasis<K>) -> usize {
    let rows: Vec<Vec<K>> = rel.basis().iter().map(|m| abs.normal_form(m)).collect();
    if rows.is_empty() {
        return 0;
    }
    crate::linalg::rank(&rows)
}

/// Upper bound for the generic rank of the degree-`i` relation matrix: the number of
/// relation rows minus the rank of the Koszul syzygies among them at this matrix.
///
/// Evaluated at a specialization, the Koszul rank can only drop, so the bound stays
/// valid for the generic matrix; for Cohen–Macaulay complexes it is attained.
pub fn koszul_rank_bound<K: Field>(k: &SimplicialComplex, m: &ParameterMatrix<K>, i: usize) -> usize {
    if i == 0 {
        return 0;
    }
    let face = |s: &[u32]| s.is_empty() || k.contains_face(s);
    let lower = monomials_of_degree(k, i - 1, &face);
    let n_rows = m.d * lower.len();
    if i == 1 {
        return n_rows;
    }
    let lower_index: HashMap<&FaceMono, usize> = lower.iter().enumerate().map(|(c, m)| (m, c)).collect();
    let col = |r: usize, mu: &FaceMono| lower_index.get(mu).map(|&c| r * lower.len() + c);
    let lower2 = monomials_of_degree(k, i - 2, &face);
    let mut rows: Vec<SparseRow<K>> = Vec::new();
    for j in 0..m.d {
        for l in j + 1..m.d {
            for mu in &lower2 {
                let mut acc: BTreeMap<usize, K> = BTreeMap::new();
                for (&v, c) in m.vertices.iter().zip(&m.cols) {
                    let p = mono_mul(mu, &[v]);
                    let (Some(cj), Some(cl)) = (col(j, &p), col(l, &p)) else { continue };
                    if !c[l].is_zero() {
                        let e = acc.entry(cj).or_insert_with(|| m.unit.zero());
                        *e = e.add(&c[l]);
                    }
                    if !c[j].is_zero() {
                        let e = acc.entry(cl).or_insert_with(|| m.unit.zero());
                        *e = e.sub(&c[j]);
                    }
                }
                rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
    }
    n_rows - Echelon::new(rows, n_rows).rank()
}

/// The generic dimension of the degree-`i` component, read off at a specialization `m`
/// of the generic matrix: the rank there is a lower bound for the generic relation rank
/// and the Koszul count an upper bound. `None` when they differ at this point.
pub fn certified_dimension<K: Field>(k: &SimplicialComplex, m: &ParameterMatrix<K>, i: usize) -> Option<usize> {
    let b = graded_component(k, m, i);
    (b.relation_rank() == koszul_rank_bound(k, m, i)).then(|| b.dim())
}

/// Checks both cone isomorphisms for `Δ` inside its suspension with apexes `a`, `b`:
/// `k(Δ;Θ₀) → k(a*Δ;Θ)` by `x_i ↦ x_i`, and `k(Δ;Θ₀)_j → k(a*Δ, Δ;Θ)_{j+1}` by
/// multiplication with `x_a`. Here `Θ` has columns `e_1`, `e_2` at `a`, `b`, `A` elsewhere,
/// and `Θ₀` drops the first row.
pub fn cone_isomorphisms_check<K: Field>(delta: &SimplicialComplex, a_matrix: &ParameterMatrix<K>, apex: u32) -> bool {
    let d = delta.d();
    assert_eq!(a_matrix.d, d + 1);
    let unit = a_matrix.unit.clone();
    let e = |r: usize| -> Vec<K> { (0..=d).map(|i| if i == r { unit.clone() } else { unit.zero() }).collect() };
    let theta = a_matrix.with_columns(&[(apex, e(0))]);
    let cone = delta.join(&SimplicialComplex::from_facets([[apex]]).expect("point")).expect("fresh apex");
    let rows: Vec<usize> = (1..=d).collect();
    let theta0 = a_matrix.restrict(&rows, delta.vertices());
    for j in 0..=d {
        let small = graded_component(delta, &theta0, j);
        let big = graded_component(&cone, &theta, j);
        if small.dim() != big.dim() {
            return false;
        }
        let img: Vec<Vec<K>> = small.basis().iter().map(|m| big.normal_form(m)).collect();
        if !img.is_empty() && crate::linalg::rank(&img) != big.dim() {
            return false;
        }
        let rel = relative_component(&cone, delta, &theta, j + 1);
        if small.dim() != rel.dim() {
            return false;
        }
        let img: Vec<Vec<K>> = small.basis().iter().map(|m| rel.normal_form(&mono_mul(m, &[apex]))).collect();
        if !img.is_empty() && crate::linalg::rank(&img) != rel.dim() {
            return false;
        }
    }
    true
}

/// All faces of size `s` in the given vertex set that are faces of `k`.
pub fn faces_in(k: &SimplicialComplex, verts: &[u32], s: usize) -> Vec<Face> {
    subsets_of_size(verts, s).into_iter().filter(|f| k.contains_face(f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Int, ModP, QFunc, WORK_PRIME};
    use rand::{Rng, SeedableRng};

    fn c(f: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|x| x.to_vec())).unwrap()
    }

    fn q4() -> SimplicialComplex {
        c(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    fn octahedron() -> SimplicialComplex {
        c(&[&[1], &[2]]).join(&c(&[&[3], &[4]])).unwrap().join(&c(&[&[5], &[6]])).unwrap()
    }

    fn random_point(m: &ParameterMatrix<QFunc>, seed: u64) -> ParameterMatrix<ModP> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let vals: HashMap<Var, i64> = m.variables().into_iter().map(|v| (v, rng.gen_range(-1_000_000..=1_000_000))).collect();
        let like = ModP::new(0, WORK_PRIME);
        m.at_point(&like, &|v| ModP::new(vals[&v], WORK_PRIME)).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        let q = q4();
        let face = |s: &[u32]| s.is_empty() || q.contains_face(s);
        assert_eq!(monomials_of_degree(&q, 0, &face), vec![Vec::<u32>::new()]);
        assert_eq!(monomials_of_degree(&q, 1, &face).len(), 4);
        let two = monomials_of_degree(&q, 2, &face);
        assert_eq!(two.len(), 8);
        assert_eq!(two[0], vec![1, 2]);
        assert_eq!(two[4], vec![1, 1]);
        assert_eq!(parse_monomial("1^2 3").unwrap(), vec![1, 1, 3]);
        assert_eq!(render_monomial(&[1, 1, 3]), "x1^2*x3");
    }

    #[test]
    fn lsop_shapes() {
        let two = c(&[&[1], &[2]]);
        let m = make_lsop::<Int>(&two, (), LsopMode::FullGeneric).unwrap();
        assert_eq!((m.d, m.cols.len()), (1, 2));
        assert_eq!(m.entry(0, 2).render(), "a1_2");
        let r = make_lsop::<Int>(&q4(), (), LsopMode::Reduced).unwrap();
        assert_eq!(r.column(1).iter().map(|x| x.render()).collect::<Vec<_>>(), vec!["1", "0"]);
        assert_eq!(r.column(3).iter().map(|x| x.render()).collect::<Vec<_>>(), vec!["a1_3", "a2_3"]);
        assert_eq!(r.variables().len(), 4);
        assert!(r.is_lsop(&q4()));
        assert!(matches!(make_lsop::<Int>(&c(&[&[1, 2], &[3]]), (), LsopMode::Reduced), Err(Error::NotPure)));
        let one = QFunc::constant(1, ());
        let zero = QFunc::constant(0, ());
        let ok = ParameterMatrix::new(vec![1, 2], vec![vec![one.clone()], vec![one.clone()]], 1, one.clone(), LsopMode::Custom);
        assert!(ok.is_lsop(&two));
        let bad = ParameterMatrix::new(vec![1, 2], vec![vec![one.clone()], vec![zero]], 1, one, LsopMode::Custom);
        assert!(!bad.is_lsop(&two));
    }

    #[test]
    fn dimensions_match_h_symbolically() {
        for k in [q4(), SimplicialComplex::simplex_boundary(&[1, 2, 3, 4])] {
            let m = make_lsop::<Int>(&k, (), LsopMode::Reduced).unwrap();
            for i in 0..=k.d() {
                graded_component_checked(&k, &m, i).unwrap();
            }
        }
        let o = octahedron();
        let m = make_lsop::<Int>(&o, (), LsopMode::Reduced).unwrap();
        let b = graded_component_checked(&o, &m, 1).unwrap();
        assert_eq!(b.dim(), 3);
        assert!(b.basis().iter().all(|m| m.len() == 1));
    }

    #[test]
    fn normal_forms_kill_relations() {
        let o = octahedron();
        let m = random_point(&make_lsop::<Int>(&o, (), LsopMode::FullGeneric).unwrap(), 1);
        let b2 = graded_component_checked(&o, &m, 2).unwrap();
        assert_eq!(b2.dim(), 3);
        let face = |s: &[u32]| s.is_empty() || o.contains_face(s);
        for mu in monomials_of_degree(&o, 1, &face) {
            for r in 0..3 {
                let comb: LinComb<ModP> = [(mu.clone(), m.unit().clone())].into_iter().collect();
                let rel = mul_linear(&o, &comb, &m.theta(r));
                assert!(b2.normal_form_comb(&rel).iter().all(|x| x.is_zero()));
            }
        }
        for (pos, bm) in b2.basis().iter().enumerate() {
            let nf = b2.normal_form(bm);
            assert!(nf.iter().enumerate().all(|(j, x)| if j == pos { x.is_one() } else { x.is_zero() }));
        }
        assert!(b2.normal_form(&[1, 2]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn koszul_bound_closes_on_spheres() {
        let o = octahedron();
        let m = random_point(&make_lsop::<Int>(&o, (), LsopMode::FullGeneric).unwrap(), 2);
        for i in 0..=3 {
            let b = graded_component(&o, &m, i);
            assert_eq!(b.relation_rank(), koszul_rank_bound(&o, &m, i), "degree {i}");
        }
    }

    #[test]
    fn relative_examples() {
        let path = c(&[&[1, 3], &[2, 3]]);
        let ends = c(&[&[1], &[2]]);
        let m = random_point(&make_lsop::<Int>(&path, (), LsopMode::FullGeneric).unwrap(), 3);
        assert_eq!(relative_component(&path, &ends, &m, 1).dim(), 1);
        assert_eq!(relative_component(&path, &path, &m, 1).dim(), 0);
        let o = octahedron();
        let m = random_point(&make_lsop::<Int>(&o, (), LsopMode::FullGeneric).unwrap(), 4);
        let st = o.star(&[1]).unwrap();
        for i in 0..=3 {
            let rel = relative_component(&o, &st, &m, i);
            let abs = graded_component(&o, &m, i);
            let sub = graded_component(&st, &m, i);
            assert_eq!(rel.dim() + sub.dim(), abs.dim(), "degree {i}");
            assert_eq!(inclusion_rank(&rel, &abs), rel.dim());
        }
    }

    #[test]
    fn cone_isomorphisms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for delta in [c(&[&[1], &[2]]), q4(), c(&[&[1]])] {
            let d = delta.d() + 1;
            let cols: Vec<Vec<ModP>> = delta
                .vertices()
                .iter()
                .map(|_| (0..d).map(|_| ModP::new(rng.gen_range(-1000..1000), WORK_PRIME)).collect())
                .collect();
            let a = ParameterMatrix::new(delta.vertices().to_vec(), cols, d, ModP::new(1, WORK_PRIME), LsopMode::Custom);
            assert!(cone_isomorphisms_check(&delta, &a, delta.max_label() + 1));
        }
    }
}
