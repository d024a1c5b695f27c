//! Point enumeration, the evaluation map, generator matrices of affine
//! Grassmann and generalized Reed-Muller codes, and their closed-form parameters.

use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::RowSpace;
use crate::minors::{minor_polynomial, minors_up_to};
use crate::monomial::{reduced_monomials, ExponentMatrix, Rectangle, SparsePolynomial};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;

/// Default cap on `n * rows` for any matrix the library materializes.
pub const DEFAULT_MAX_COORDS: u64 = 1 << 24;

/// Size cap, overridable through `AGC_MAX_COORDS`.
pub fn max_coords() -> u64 {
    std::env::var("AGC_MAX_COORDS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_COORDS)
}

fn check_size(n: u128, rows: u128, cap: u64) -> Result<()> {
    if n.saturating_mul(rows.max(1)) > cap as u128 {
        return Err(AgcError::TooLarge(format!(
            "{rows} rows of length {n} exceed the cap of {cap} coordinates (set AGC_MAX_COORDS to raise it)"
        )));
    }
    Ok(())
}

/// The points of `F_q^{ell x ell'}`: index `n` is read as base-`q` digits
/// filled row-major, entry (1,1) least significant.
#[derive(Clone, Debug)]
pub struct PointEnumeration {
    field: FieldSpec,
    rect: Rectangle,
    len: usize,
}

impl PointEnumeration {
    pub fn new(field: &FieldSpec, rect: &Rectangle) -> Result<Self> {
        let len = (field.q() as u128)
            .checked_pow(rect.delta() as u32)
            .filter(|&n| n <= u32::MAX as u128)
            .ok_or_else(|| AgcError::TooLarge(format!("q^delta for q={}, delta={}", field.q(), rect.delta())))?;
        Ok(PointEnumeration { field: field.clone(), rect: *rect, len: len as usize })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major entries of point `idx`.
    pub fn point(&self, idx: usize) -> Vec<Elem> {
        let q = self.field.size();
        let mut x = idx;
        (0..self.rect.delta())
            .map(|_| {
                let d = (x % q) as Elem;
                x /= q;
                d
            })
            .collect()
    }

    /// Inverse of [`PointEnumeration::point`].
    pub fn index(&self, point: &[Elem]) -> usize {
        let q = self.field.size();
        point.iter().rev().fold(0, |acc, &d| acc * q + d as usize)
    }

    /// All points, in index order.
    pub fn points(&self) -> Vec<Vec<Elem>> {
        (0..self.len).map(|i| self.point(i)).collect()
    }
}

/// Where a code came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Agc { ell: usize, m: usize, r: usize },
    ReedMuller { r: usize, delta: usize },
    Dual { of: Box<Provenance> },
    Raw,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Agc { ell, m, r } => write!(f, "AGC({ell},{m};{r})"),
            Provenance::ReedMuller { r, delta } => write!(f, "RM({r},{delta})"),
            Provenance::Dual { of } => write!(f, "DUAL({of})"),
            Provenance::Raw => write!(f, "RAW"),
        }
    }
}

/// A linear code given by a generator matrix with independent rows.
#[derive(Clone, Debug)]
pub struct Code {
    field: FieldSpec,
    n: usize,
    generator: Vec<Vec<Elem>>,
    provenance: Provenance,
    echelon: OnceLock<RowSpace>,
}

impl Code {
    /// Wraps independent generator rows; fails if they are dependent or ragged.
    pub fn from_generator(field: &FieldSpec, n: usize, generator: Vec<Vec<Elem>>, provenance: Provenance) -> Result<Self> {
        if generator.iter().any(|r| r.len() != n) {
            return Err(AgcError::DimensionMismatch(format!("generator rows must have length {n}")));
        }
        let space = RowSpace::from_rows(field, n, generator.iter());
        let rank = space.rank();
        if rank != generator.len() {
            return Err(AgcError::VerificationFailed(format!(
                "{provenance}: generator has rank {rank} but {} rows",
                generator.len()
            )));
        }
        Ok(Code { field: field.clone(), n, generator, provenance, echelon: OnceLock::from(space) })
    }

    /// Keeps a basis of the span of `rows` (first independent rows, in order).
    pub fn from_spanning(field: &FieldSpec, n: usize, rows: &[Vec<Elem>], provenance: Provenance) -> Result<Self> {
        let mut space = RowSpace::new(field, n);
        let mut generator = Vec::new();
        for r in rows {
            if r.len() != n {
                return Err(AgcError::DimensionMismatch(format!("row length {} != {n}", r.len())));
            }
            if space.insert(r) {
                generator.push(r.clone());
            }
        }
        Ok(Code { field: field.clone(), n, generator, provenance, echelon: OnceLock::from(space) })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Reduced echelon form of the row space, for membership queries.
    pub fn row_space(&self) -> &RowSpace {
        self.echelon.get_or_init(|| RowSpace::from_rows(&self.field, self.n, self.generator.iter()))
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.n && self.row_space().contains(word)
    }

    /// A basis of the dual code by elimination (independent of any closed form).
    pub fn parity_check(&self) -> Vec<Vec<Elem>> {
        self.row_space().orthogonal_complement()
    }

    /// The dual code computed by elimination.
    pub fn dual_by_elimination(&self) -> Code {
        Code {
            field: self.field.clone(),
            n: self.n,
            generator: self.parity_check(),
            provenance: Provenance::Dual { of: Box::new(self.provenance.clone()) },
            echelon: OnceLock::new(),
        }
    }

    /// Columns that are identically zero.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.generator.iter().all(|r| r[j] == 0)).collect()
    }

    /// Encodes a message vector of length `k`.
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.dimension() {
            return Err(AgcError::DimensionMismatch(format!("message length {} != k={}", msg.len(), self.dimension())));
        }
        let mut out = vec![0; self.n];
        for (c, row) in msg.iter().zip(&self.generator) {
            self.field.axpy(&mut out, *c, row);
        }
        Ok(out)
    }

    /// True iff `G * G^T = 0`.
    pub fn is_self_orthogonal(&self) -> bool {
        let g = &self.generator;
        (0..g.len()).all(|i| (i..g.len()).all(|j| self.field.dot(&g[i], &g[j]) == 0))
    }
}

/// Hamming weight of a word.
pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

/// Evaluation of many polynomials at every point, sharing one power table.
pub struct Evaluator {
    pe: PointEnumeration,
    points: Vec<Vec<Elem>>,
    powers: Vec<Vec<Elem>>,
}

impl Evaluator {
    pub fn new(pe: &PointEnumeration) -> Self {
        let f = pe.field();
        let q = f.size();
        let powers = (0..q)
            .map(|x| (0..q as u64).map(|e| f.pow(x as Elem, e)).collect())
            .collect();
        Evaluator { pe: pe.clone(), points: pe.points(), powers }
    }

    pub fn enumeration(&self) -> &PointEnumeration {
        &self.pe
    }

    fn monomial_at(&self, mono: &ExponentMatrix, point: &[Elem]) -> Elem {
        let f = self.pe.field();
        let mut acc: Elem = 1;
        for s in mono.support() {
            acc = f.mul(acc, self.powers[point[s] as usize][mono.get(s) as usize]);
            if acc == 0 {
                break;
            }
        }
        acc
    }

    /// `Ev(mu)` for a reduced monomial.
    pub fn monomial(&self, mono: &ExponentMatrix) -> Vec<Elem> {
        self.points.iter().map(|p| self.monomial_at(mono, p)).collect()
    }

    /// `Ev(f)`.
    pub fn eval(&self, f: &SparsePolynomial) -> Result<Vec<Elem>> {
        if f.rect() != self.pe.rect() || f.field() != self.pe.field() {
            return Err(AgcError::DimensionMismatch("polynomial ring differs from point enumeration".into()));
        }
        let field = self.pe.field();
        let mut out = vec![0; self.points.len()];
        for (mono, c) in f.terms() {
            for (o, p) in out.iter_mut().zip(&self.points) {
                *o = field.add(*o, field.mul(c, self.monomial_at(mono, p)));
            }
        }
        Ok(out)
    }

    /// Evaluates a batch in parallel.
    pub fn eval_all(&self, fs: &[SparsePolynomial]) -> Result<Vec<Vec<Elem>>> {
        fs.par_iter().map(|f| self.eval(f)).collect()
    }
}

/// `Ev(f)` against a point enumeration.
pub fn evaluate(f: &SparsePolynomial, pe: &PointEnumeration) -> Result<Vec<Elem>> {
    Evaluator::new(pe).eval(f)
}

fn agc_setup(ell: usize, m: usize, r: usize, q: u32) -> Result<(FieldSpec, Rectangle)> {
    let field = FieldSpec::new(q)?;
    let rect = Rectangle::from_ell_m(ell, m)?;
    if r > ell {
        return Err(AgcError::SizeOutOfRange { size: r, max: ell });
    }
    Ok((field, rect))
}

/// The minors of size at most `r`, as polynomials in minor-enumeration order.
pub fn agc_polynomials(field: &FieldSpec, rect: &Rectangle, r: usize) -> Result<Vec<SparsePolynomial>> {
    minors_up_to(rect, r)?.iter().map(|mi| minor_polynomial(mi, rect, field)).collect()
}

pub fn build_affine_grassmann(ell: usize, m: usize, r: usize, q: u32) -> Result<Code> {
    build_affine_grassmann_capped(ell, m, r, q, max_coords())
}

pub fn build_affine_grassmann_capped(ell: usize, m: usize, r: usize, q: u32, cap: u64) -> Result<Code> {
    let (field, rect) = agc_setup(ell, m, r, q)?;
    let params = theoretical_params(ell, m, r, q)?;
    check_size(params.n, params.k as u128, cap)?;
    let pe = PointEnumeration::new(&field, &rect)?;
    let rows = Evaluator::new(&pe).eval_all(&agc_polynomials(&field, &rect, r)?)?;
    Code::from_generator(&field, pe.len(), rows, Provenance::Agc { ell, m, r })
}

/// Reduced monomials in `delta` variables of degree at most `r`, canonical order.
pub fn rm_monomials(r: usize, delta: usize, q: u32) -> Vec<ExponentMatrix> {
    reduced_monomials(&Rectangle::row(delta), q).into_iter().filter(|mu| mu.degree() as usize <= r).collect()
}

pub fn build_reed_muller(r: usize, delta: usize, q: u32) -> Result<Code> {
    build_reed_muller_capped(r, delta, q, max_coords())
}

pub fn build_reed_muller_capped(r: usize, delta: usize, q: u32, cap: u64) -> Result<Code> {
    let field = FieldSpec::new(q)?;
    if delta == 0 || r > delta * (q as usize - 1) {
        return Err(AgcError::OrderOutOfRange { r, delta, q });
    }
    let n = (q as u128).pow(delta as u32);
    check_size(n, rm_dimension(r, delta, q) as u128, cap)?;
    let rect = Rectangle::row(delta);
    let pe = PointEnumeration::new(&field, &rect)?;
    let ev = Evaluator::new(&pe);
    let rows: Vec<Vec<Elem>> = rm_monomials(r, delta, q).par_iter().map(|mu| ev.monomial(mu)).collect();
    Code::from_generator(&field, pe.len(), rows, Provenance::ReedMuller { r, delta })
}

/// Closed-form parameters of an affine Grassmann code of level `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgcParams {
    pub n: u128,
    pub k: usize,
    pub d: u128,
    /// Known only at the top level `r = ell`.
    pub min_weight_count: Option<u128>,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn pow(q: u32, e: usize) -> u128 {
    (q as u128).pow(e as u32)
}

/// `[a, b]_q`, the number of `b`-dimensional subspaces of `F_q^a`.
pub fn gaussian_binomial(a: usize, b: usize, q: u32) -> u128 {
    if b > a {
        return 0;
    }
    // q-Pascal: [a,b] = [a-1,b-1] + q^b [a-1,b]
    let mut row = vec![1u128];
    for i in 1..=a {
        let mut next = vec![1u128; i + 1];
        for j in 1..i {
            next[j] = row[j - 1] + pow(q, j) * row[j];
        }
        row = next;
    }
    row[b]
}

pub fn theoretical_params(ell: usize, m: usize, r: usize, q: u32) -> Result<AgcParams> {
    let (_, rect) = agc_setup(ell, m, r, q)?;
    let (lp, delta) = (rect.ell_prime(), rect.delta());
    let k = (0..=r).map(|i| (binomial(ell, i) * binomial(lp, i)) as usize).sum();
    // q^delta * prod_{i=1}^r (1 - q^-i) = q^{delta - r(r+1)/2} prod (q^i - 1)
    let d = pow(q, delta - r * (r + 1) / 2) * (1..=r).map(|i| pow(q, i) - 1).product::<u128>();
    let min_weight_count = (r == ell).then(|| (q as u128 - 1) * pow(q, ell * ell) * gaussian_binomial(lp, ell, q));
    Ok(AgcParams { n: pow(q, delta), k, d, min_weight_count })
}

/// Closed-form parameters of `RM(r, delta)` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmParams {
    pub n: u128,
    pub k: usize,
    pub d: u128,
    pub min_weight_count: u128,
}

/// Alternating-sum dimension formula.
pub fn rm_dimension(r: usize, delta: usize, q: u32) -> usize {
    let q = q as usize;
    let mut total: i128 = 0;
    for i in 0..=r {
        let mut j = 0;
        while j * q <= i && j <= delta {
            let term = (binomial(delta, j) * binomial(delta + i - j * q - 1, i - j * q)) as i128;
            total += if j % 2 == 0 { term } else { -term };
            j += 1;
        }
    }
    total as usize
}

pub fn rm_theoretical_params(r: usize, delta: usize, q: u32) -> Result<RmParams> {
    let top = delta * (q as usize - 1);
    if delta == 0 || r > top {
        return Err(AgcError::OrderOutOfRange { r, delta, q });
    }
    let s = top - r;
    let (big_q, big_r) = (s / (q as usize - 1), s % (q as usize - 1));
    let d = (big_r as u128 + 1) * pow(q, big_q);
    let min_weight_count = if big_r == 0 {
        (pow(q, delta - big_q + 1) - pow(q, delta - big_q)) * gaussian_binomial(delta, big_q, q)
    } else {
        (pow(q, delta) - pow(q, delta - big_q - 1)) * gaussian_binomial(delta, big_q + 1, q) * binomial(q as usize, big_r + 1)
    };
    Ok(RmParams { n: pow(q, delta), k: rm_dimension(r, delta, q), d, min_weight_count })
}

/// True iff every generator row of `c1` lies in the row space of `c2`.
pub fn subcode_check(c1: &Code, c2: &Code) -> Result<bool> {
    if c1.field != c2.field || c1.n != c2.n {
        return Err(AgcError::DimensionMismatch(format!("codes of length {} and {}", c1.n, c2.n)));
    }
    let space = c2.row_space();
    Ok(c1.generator.iter().all(|r| space.contains(r)))
}

/// True iff both codes have the same row space.
pub fn same_code(c1: &Code, c2: &Code) -> Result<bool> {
    Ok(c1.dimension() == c2.dimension() && subcode_check(c1, c2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::RawPolynomial;

    #[test]
    fn point_order() {
        let f = FieldSpec::new(3).unwrap();
        let pe = PointEnumeration::new(&f, &Rectangle::new(1, 2).unwrap()).unwrap();
        assert_eq!(pe.len(), 9);
        assert_eq!(pe.point(1), vec![1, 0]);
        assert_eq!(pe.point(5), vec![2, 1]);
        for i in 0..9 {
            assert_eq!(pe.index(&pe.point(i)), i);
        }
    }

    #[test]
    fn evaluate_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let r11 = Rectangle::new(1, 1).unwrap();
        let pe = PointEnumeration::new(&f2, &r11).unwrap();
        let one = SparsePolynomial::constant(&f2, &r11, 1);
        assert_eq!(evaluate(&one, &pe).unwrap(), vec![1, 1]);
        let x = SparsePolynomial::monomial(&f2, &r11, ExponentMatrix::var(&r11, 0, 0));
        assert_eq!(evaluate(&x, &pe).unwrap(), vec![0, 1]);

        let r22 = Rectangle::new(2, 2).unwrap();
        let pe = PointEnumeration::new(&f2, &r22).unwrap();
        let det = minor_polynomial(&crate::minors::leading_principal_minor(&r22, 2).unwrap(), &r22, &f2).unwrap();
        let v = evaluate(&det, &pe).unwrap();
        assert_eq!(weight(&v), 6);
        // invertible 2x2 matrices over F_2, counted by hand from the entries
        for (i, &c) in v.iter().enumerate() {
            let p = pe.point(i);
            assert_eq!(c, (p[0] & p[3]) ^ (p[1] & p[2]));
        }
        let other = SparsePolynomial::zero(&FieldSpec::new(3).unwrap(), &r22);
        assert!(matches!(evaluate(&other, &pe), Err(AgcError::DimensionMismatch(_))));
    }

    #[test]
    fn build_examples() {
        let c = build_affine_grassmann(2, 4, 2, 2).unwrap();
        assert_eq!((c.len(), c.dimension()), (16, 6));
        let c = build_affine_grassmann(3, 6, 2, 2).unwrap();
        assert_eq!((c.len(), c.dimension()), (512, 19));
        let c = build_affine_grassmann(1, 2, 1, 3).unwrap();
        assert_eq!((c.len(), c.dimension()), (3, 2));
        assert!(matches!(build_affine_grassmann_capped(3, 6, 2, 2, 1000), Err(AgcError::TooLarge(_))));
        assert!(build_affine_grassmann(2, 3, 1, 2).is_err());
    }

    #[test]
    fn reed_muller_examples() {
        assert_eq!(build_reed_muller(1, 4, 2).unwrap().dimension(), 5);
        assert_eq!(build_reed_muller(2, 4, 2).unwrap().dimension(), 11);
        let rep = build_reed_muller(0, 3, 3).unwrap();
        assert_eq!((rep.len(), rep.dimension()), (27, 1));
        assert!(rep.generator()[0].iter().all(|&x| x == 1));
        assert!(matches!(build_reed_muller(5, 2, 3), Err(AgcError::OrderOutOfRange { .. })));
        for q in [2u32, 3, 4] {
            for delta in 1..=3 {
                for r in 0..=delta * (q as usize - 1) {
                    let c = build_reed_muller(r, delta, q).unwrap();
                    assert_eq!(c.dimension(), rm_dimension(r, delta, q), "RM({r},{delta}) q={q}");
                }
            }
        }
    }

    #[test]
    fn params_examples() {
        let p = theoretical_params(2, 4, 2, 2).unwrap();
        assert_eq!(p, AgcParams { n: 16, k: 6, d: 6, min_weight_count: Some(16) });
        let p = theoretical_params(3, 6, 2, 2).unwrap();
        assert_eq!((p.n, p.k, p.d, p.min_weight_count), (512, 19, 192, None));
        assert_eq!(theoretical_params(3, 6, 3, 2).unwrap().d, 168);
        assert_eq!(theoretical_params(2, 5, 0, 3).unwrap().d, 729);

        let p = rm_theoretical_params(2, 4, 2).unwrap();
        assert_eq!((p.d, p.min_weight_count), (4, 140));
        assert_eq!(rm_theoretical_params(1, 2, 3).unwrap().d, 6);
        assert_eq!(rm_theoretical_params(0, 3, 4).unwrap().d, 64);
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
        assert_eq!(gaussian_binomial(5, 0, 3), 1);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 4, 2), 0);
    }

    #[test]
    fn gaussian_binomial_counts_subspaces() {
        // count 2-dimensional subspaces of F_2^4 as sets closed under addition
        let mut subspaces = std::collections::BTreeSet::new();
        for a in 1u8..16 {
            for b in 1u8..16 {
                if a != b {
                    let mut s = [0u8, a, b, a ^ b];
                    s.sort();
                    subspaces.insert(s);
                }
            }
        }
        assert_eq!(subspaces.len() as u128, gaussian_binomial(4, 2, 2));
        let lines: std::collections::BTreeSet<_> = (1u8..16).collect();
        assert_eq!(lines.len() as u128, gaussian_binomial(4, 1, 2));
    }

    #[test]
    fn subcode_examples() {
        let a1 = build_affine_grassmann(2, 4, 1, 2).unwrap();
        let a2 = build_affine_grassmann(2, 4, 2, 2).unwrap();
        let rm1 = build_reed_muller(1, 4, 2).unwrap();
        let rm2 = build_reed_muller(2, 4, 2).unwrap();
        assert!(subcode_check(&a1, &a2).unwrap());
        assert!(subcode_check(&a2, &rm2).unwrap());
        assert!(!subcode_check(&a2, &rm1).unwrap());
        assert!(same_code(&a1, &rm1).unwrap());
        let other = build_affine_grassmann(1, 2, 1, 3).unwrap();
        assert!(subcode_check(&other, &a1).is_err());
    }

    #[test]
    fn nondegenerate_and_linear() {
        for (l, m, q) in [(1, 2, 3), (2, 4, 2), (2, 5, 2), (2, 4, 3)] {
            for r in 1..=l {
                assert!(build_affine_grassmann(l, m, r, q).unwrap().zero_columns().is_empty());
            }
        }
        let f = FieldSpec::new(3).unwrap();
        let rect = Rectangle::new(1, 2).unwrap();
        let pe = PointEnumeration::new(&f, &rect).unwrap();
        let raw = RawPolynomial { terms: vec![(ExponentMatrix::new(vec![4, 5]), 2), (ExponentMatrix::new(vec![1, 0]), 1)] };
        let g = crate::monomial::reduce_polynomial(&f, &rect, &raw);
        for x in 0..9 {
            let p = pe.point(x);
            let direct = f.add(f.mul(2, f.mul(f.pow(p[0], 4), f.pow(p[1], 5))), p[0]);
            assert_eq!(evaluate(&g, &pe).unwrap()[x], direct);
        }
    }

    #[test]
    fn encode_and_dual_by_elimination() {
        let c = build_affine_grassmann(1, 2, 1, 3).unwrap();
        let d = c.dual_by_elimination();
        assert_eq!(d.dimension(), 1);
        assert!(d.generator()[0].iter().all(|&x| x == d.generator()[0][0] && x != 0));
        let w = c.encode(&[1, 2]).unwrap();
        assert!(c.contains(&w));
        assert!(c.encode(&[1]).is_err());
    }
}
