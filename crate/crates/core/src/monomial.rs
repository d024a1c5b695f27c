//! Reduced monomials and polynomials in the variables `X[i,j]` of an
//! `ell x ell'` generic matrix, the exponent-folding reduction map, and the
//! univariate spanning sets used when studying generation of dual codes.

use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use std::collections::BTreeMap;
use std::fmt;

/// The index rectangle `[1, ell] x [1, ell']` with `1 <= ell <= ell'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    ell: usize,
    ell_prime: usize,
}

impl Rectangle {
    pub fn new(ell: usize, ell_prime: usize) -> Result<Self> {
        if ell == 0 || ell > ell_prime {
            return Err(AgcError::InvalidParams(format!(
                "need 1 <= ell <= ell', got ell={ell}, ell'={ell_prime}"
            )));
        }
        Ok(Rectangle { ell, ell_prime })
    }

    /// Rectangle from `(ell, m)` with `ell' = m - ell`.
    pub fn from_ell_m(ell: usize, m: usize) -> Result<Self> {
        if m < ell {
            return Err(AgcError::InvalidParams(format!("m={m} smaller than ell={ell}")));
        }
        Rectangle::new(ell, m - ell)
    }

    /// A `1 x s` rectangle, used for polynomials in `s` free variables.
    pub(crate) fn row(s: usize) -> Self {
        Rectangle { ell: 1, ell_prime: s }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn ell_prime(&self) -> usize {
        self.ell_prime
    }

    pub fn m(&self) -> usize {
        self.ell + self.ell_prime
    }

    pub fn delta(&self) -> usize {
        self.ell * self.ell_prime
    }

    /// Row-major slot of the 0-based entry `(i, j)`.
    #[inline]
    pub fn slot(&self, i: usize, j: usize) -> usize {
        i * self.ell_prime + j
    }

    /// 0-based `(i, j)` of a row-major slot.
    #[inline]
    pub fn coords(&self, slot: usize) -> (usize, usize) {
        (slot / self.ell_prime, slot % self.ell_prime)
    }
}

/// A monomial as its row-major exponent grid.
///
/// Ordering is lexicographic on the row-major grid, which fixes the canonical
/// order of every monomial list in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix(Vec<u32>);

impl ExponentMatrix {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentMatrix(exponents)
    }

    pub fn one(rect: &Rectangle) -> Self {
        ExponentMatrix(vec![0; rect.delta()])
    }

    /// Single variable `X[i,j]` (0-based).
    pub fn var(rect: &Rectangle, i: usize, j: usize) -> Self {
        let mut e = vec![0; rect.delta()];
        e[rect.slot(i, j)] = 1;
        ExponentMatrix(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, slot: usize) -> u32 {
        self.0[slot]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_reduced(&self, q: u32) -> bool {
        self.0.iter().all(|&e| e < q)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &ExponentMatrix) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &ExponentMatrix) -> Option<ExponentMatrix> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentMatrix)
    }

    /// Raw (unreduced) product.
    pub fn mul_raw(&self, other: &ExponentMatrix) -> ExponentMatrix {
        ExponentMatrix(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entrywise [`reduce_exponent`].
    pub fn reduced(&self, q: u32) -> ExponentMatrix {
        ExponentMatrix(self.0.iter().map(|&a| reduce_exponent(a, q)).collect())
    }

    /// Slots with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(s, _)| s)
    }

    /// Evaluates the monomial at a point given as row-major entries.
    pub fn eval(&self, field: &FieldSpec, point: &[Elem]) -> Elem {
        self.0
            .iter()
            .zip(point)
            .filter(|(&e, _)| e > 0)
            .fold(1, |acc, (&e, &x)| field.mul(acc, field.pow(x, e as u64)))
    }

    /// Text form `X[i,j]^e*...` with 1-based indices; `1` for the empty product.
    pub fn display(&self, rect: &Rectangle) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|s| {
                let (i, j) = rect.coords(s);
                match self.0[s] {
                    1 => format!("X[{},{}]", i + 1, j + 1),
                    e => format!("X[{},{}]^{}", i + 1, j + 1, e),
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Folds an exponent into `[0, q-1]` preserving the function `x -> x^alpha` on F_q.
pub fn reduce_exponent(alpha: u32, q: u32) -> u32 {
    if alpha < q {
        alpha
    } else {
        (alpha - 1) % (q - 1) + 1
    }
}

/// The full product: every exponent equal to `q - 1`.
pub fn full_product(rect: &Rectangle, q: u32) -> ExponentMatrix {
    ExponentMatrix(vec![q - 1; rect.delta()])
}

/// All `q^delta` reduced monomials in canonical order.
pub fn reduced_monomials(rect: &Rectangle, q: u32) -> Vec<ExponentMatrix> {
    let delta = rect.delta();
    let mut out = Vec::with_capacity((q as usize).pow(delta as u32));
    let mut e = vec![0u32; delta];
    loop {
        out.push(ExponentMatrix(e.clone()));
        // odometer with the last slot fastest gives lexicographic order
        let mut pos = delta;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            e[pos] += 1;
            if e[pos] < q {
                break;
            }
            e[pos] = 0;
        }
    }
}

/// A polynomial with arbitrary (possibly unreduced) exponents, as a term list.
#[derive(Clone, Debug, Default)]
pub struct RawPolynomial {
    pub terms: Vec<(ExponentMatrix, Elem)>,
}

/// A reduced polynomial: sparse map from reduced monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    field: FieldSpec,
    rect: Rectangle,
    terms: BTreeMap<ExponentMatrix, Elem>,
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mono, &c)| {
                let m = mono.display(&self.rect);
                match (c, m.as_str()) {
                    (c, "1") => format!("{c}"),
                    (1, _) => m,
                    (c, _) => format!("{c}*{m}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SparsePolynomial {
    pub fn zero(field: &FieldSpec, rect: &Rectangle) -> Self {
        SparsePolynomial { field: field.clone(), rect: *rect, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldSpec, rect: &Rectangle, c: Elem) -> Self {
        let mut p = Self::zero(field, rect);
        p.add_term(ExponentMatrix::one(rect), c);
        p
    }

    /// A single reduced monomial with coefficient 1.
    pub fn monomial(field: &FieldSpec, rect: &Rectangle, mono: ExponentMatrix) -> Self {
        let mut p = Self::zero(field, rect);
        p.add_term(mono.reduced(field.q()), 1);
        p
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    /// `Term(f)` with coefficients, in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentMatrix, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &ExponentMatrix) -> Elem {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    /// Adds `c * mono` after reducing `mono`, dropping cancelled terms.
    pub fn add_term(&mut self, mono: ExponentMatrix, c: Elem) {
        if c == 0 {
            return;
        }
        let mono = if mono.is_reduced(self.field.q()) { mono } else { mono.reduced(self.field.q()) };
        let sum = self.field.add(self.coefficient(&mono), c);
        if sum == 0 {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, sum);
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.scaled(self.field.minus_one()))
    }

    pub fn scaled(&self, c: Elem) -> SparsePolynomial {
        let mut out = Self::zero(&self.field, &self.rect);
        for (m, d) in self.terms() {
            out.add_term(m.clone(), self.field.mul(c, d));
        }
        out
    }

    /// Evaluates at a point given as row-major entries.
    pub fn eval(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        self.terms().fold(0, |acc, (m, c)| f.add(acc, f.mul(c, m.eval(f, point))))
    }

    /// Variables (slots) touched by any term.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

/// The reduction map: fold every exponent and merge coefficients.
pub fn reduce_polynomial(field: &FieldSpec, rect: &Rectangle, f: &RawPolynomial) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(field, rect);
    for (mono, c) in &f.terms {
        out.add_term(mono.reduced(field.q()), *c);
    }
    out
}

/// Reduction of the raw product `f * g`.
pub fn multiply_reduced(f: &SparsePolynomial, g: &SparsePolynomial) -> Result<SparsePolynomial> {
    if f.field != g.field || f.rect != g.rect {
        return Err(AgcError::DimensionMismatch("polynomials over different rings".into()));
    }
    let field = &f.field;
    let mut out = SparsePolynomial::zero(field, &f.rect);
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            out.add_term(a.mul_raw(b), field.mul(ca, cb));
        }
    }
    Ok(out)
}

/// Dense univariate polynomial, coefficients lowest degree first.
pub type UniPoly = Vec<Elem>;

fn uni_mul(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> UniPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

/// Evaluates a dense univariate polynomial.
pub fn uni_eval(field: &FieldSpec, p: &[Elem], x: Elem) -> Elem {
    p.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

/// Exact division of univariate polynomials; `None` if the remainder is nonzero.
pub fn uni_div_exact(field: &FieldSpec, num: &[Elem], den: &[Elem]) -> Option<UniPoly> {
    let mut rem = num.to_vec();
    let dd = den.iter().rposition(|&c| c != 0)?;
    let lead_inv = field.inv(den[dd]).ok()?;
    if rem.len() <= dd {
        return rem.iter().all(|&c| c == 0).then(|| vec![0]);
    }
    let mut quot = vec![0; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = field.mul(rem[k + dd], lead_inv);
        quot[k] = c;
        for (i, &d) in den[..=dd].iter().enumerate() {
            rem[k + i] = field.sub(rem[k + i], field.mul(c, d));
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

/// `prod_{a in roots} (T - a)`.
pub fn uni_from_roots(field: &FieldSpec, roots: &[Elem]) -> UniPoly {
    roots.iter().fold(vec![1], |acc, &a| uni_mul(field, &acc, &[field.neg(a), 1]))
}

/// The monic degree-`d` polynomials with `d` distinct roots in F_q, one per
/// `d`-subset of the field (subsets in lexicographic order of element codes).
pub fn monic_split_set(field: &FieldSpec, d: usize) -> Result<Vec<UniPoly>> {
    let q = field.size();
    if d >= q {
        return Err(AgcError::DegreeTooLarge { d, q: field.q() });
    }
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let roots: Vec<Elem> = subset.iter().map(|&i| i as Elem).collect();
        out.push(uni_from_roots(field, &roots));
        // next d-combination of 0..q
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if subset[i] < q - d + i {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The `q^s` reduced polynomials `reduce(L_1^{e_1} ... L_s^{e_s})`, `0 <= e_i <= q-1`,
/// for `s` homogeneous linear forms in `T_1..T_s` given as coefficient rows.
///
/// Exponent tuples are enumerated with `e_s` fastest.
pub fn linear_form_power_basis(field: &FieldSpec, forms: &[Vec<Elem>]) -> Result<Vec<SparsePolynomial>> {
    let s = forms.len();
    if s == 0 || forms.iter().any(|f| f.len() != s) {
        return Err(AgcError::DimensionMismatch("need s forms in s variables".into()));
    }
    let r = crate::linalg::rank(field, s, forms);
    if r < s {
        return Err(AgcError::DependentForms { rank: r, s });
    }
    let rect = Rectangle::row(s);
    let linear: Vec<SparsePolynomial> = forms
        .iter()
        .map(|coeffs| {
            let mut p = SparsePolynomial::zero(field, &rect);
            for (j, &c) in coeffs.iter().enumerate() {
                p.add_term(ExponentMatrix::var(&rect, 0, j), c);
            }
            p
        })
        .collect();
    // powers[i][e] = reduce(L_i^e)
    let q = field.size();
    let mut powers: Vec<Vec<SparsePolynomial>> = Vec::with_capacity(s);
    for l in &linear {
        let mut row = vec![SparsePolynomial::constant(field, &rect, 1)];
        for e in 1..q {
            row.push(multiply_reduced(&row[e - 1], l)?);
        }
        powers.push(row);
    }
    let mut out = Vec::with_capacity(q.pow(s as u32));
    let mut e = vec![0usize; s];
    loop {
        let mut p = SparsePolynomial::constant(field, &rect, 1);
        for (i, &ei) in e.iter().enumerate() {
            p = multiply_reduced(&p, &powers[i][ei])?;
        }
        out.push(p);
        let mut pos = s;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            e[pos] += 1;
            if e[pos] < q {
                break;
            }
            e[pos] = 0;
        }
    }
}
