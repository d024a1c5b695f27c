//! Minors of the generic `ell x ell'` matrix and their Leibniz expansions.

use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use crate::monomial::{ExponentMatrix, Rectangle, SparsePolynomial};
use std::fmt;

/// Largest minor size whose `i!` term expansion is produced.
pub const MAX_EXPANDED_SIZE: usize = 8;

/// An `i x i` minor given by 0-based strictly increasing row and column sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Minor {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// The constant-1 minor of size 0.
    pub fn empty() -> Self {
        Minor { rows: vec![], cols: vec![] }
    }
}

impl fmt::Display for Minor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "M[{}|{}]", join(&self.rows), join(&self.cols))
    }
}

/// One Leibniz term `sgn(perm) * prod_k X[rows[k], cols[perm[k]]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTerm {
    pub perm: Vec<usize>,
    pub sign: Elem,
    pub monomial: ExponentMatrix,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    // standard next-permutation
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Parity of a permutation by inversion count.
pub fn is_odd(perm: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

pub fn enumerate_minors(rect: &Rectangle, i: usize) -> Result<Vec<Minor>> {
    if i > rect.ell() {
        return Err(AgcError::SizeOutOfRange { size: i, max: rect.ell() });
    }
    let rows = combinations(rect.ell(), i);
    let cols = combinations(rect.ell_prime(), i);
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            out.push(Minor { rows: r.clone(), cols: c.clone() });
        }
    }
    Ok(out)
}

/// Minors of every size `0..=r`, smaller sizes first.
pub fn minors_up_to(rect: &Rectangle, r: usize) -> Result<Vec<Minor>> {
    let mut out = Vec::new();
    for i in 0..=r {
        out.extend(enumerate_minors(rect, i)?);
    }
    Ok(out)
}

pub fn leading_principal_minor(rect: &Rectangle, r: usize) -> Result<Minor> {
    if r > rect.ell() {
        return Err(AgcError::SizeOutOfRange { size: r, max: rect.ell() });
    }
    Ok(Minor { rows: (0..r).collect(), cols: (0..r).collect() })
}

/// The `i!` signed terms of a minor, permutations in lexicographic order.
pub fn minor_terms(minor: &Minor, rect: &Rectangle, field: &FieldSpec) -> Result<Vec<SignedTerm>> {
    let i = minor.size();
    if i > MAX_EXPANDED_SIZE {
        return Err(AgcError::SizeOutOfRange { size: i, max: MAX_EXPANDED_SIZE });
    }
    if minor.cols.len() != i
        || minor.rows.iter().any(|&a| a >= rect.ell())
        || minor.cols.iter().any(|&b| b >= rect.ell_prime())
    {
        return Err(AgcError::DimensionMismatch(format!("{minor} does not fit the rectangle")));
    }
    Ok(permutations(i)
        .into_iter()
        .map(|perm| {
            let mut e = vec![0u32; rect.delta()];
            for (k, &pk) in perm.iter().enumerate() {
                e[rect.slot(minor.rows[k], minor.cols[pk])] = 1;
            }
            let sign = field.sign(is_odd(&perm));
            SignedTerm { perm, sign, monomial: ExponentMatrix::new(e) }
        })
        .collect())
}

/// The determinant polynomial of a minor.
pub fn minor_polynomial(minor: &Minor, rect: &Rectangle, field: &FieldSpec) -> Result<SparsePolynomial> {
    let mut p = SparsePolynomial::zero(field, rect);
    for t in minor_terms(minor, rect, field)? {
        p.add_term(t.monomial, t.sign);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn minor_counts() {
        let r22 = Rectangle::new(2, 2).unwrap();
        assert_eq!(enumerate_minors(&r22, 1).unwrap().len(), 4);
        assert_eq!(enumerate_minors(&r22, 2).unwrap().len(), 1);
        assert_eq!(enumerate_minors(&Rectangle::new(2, 3).unwrap(), 2).unwrap().len(), 3);
        assert!(matches!(enumerate_minors(&r22, 3), Err(AgcError::SizeOutOfRange { .. })));
        for (l, lp) in [(1, 1), (2, 3), (3, 3), (3, 4)] {
            let rect = Rectangle::new(l, lp).unwrap();
            for i in 0..=l {
                let ms = enumerate_minors(&rect, i).unwrap();
                assert_eq!(ms.len(), binom(l, i) * binom(lp, i));
                assert!(ms.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn term_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let f3 = FieldSpec::new(3).unwrap();
        let r22 = Rectangle::new(2, 2).unwrap();
        let m = Minor { rows: vec![0], cols: vec![1] };
        let ts = minor_terms(&m, &r22, &f3).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].sign, 1);
        assert_eq!(ts[0].monomial, ExponentMatrix::var(&r22, 0, 1));

        let lead = leading_principal_minor(&r22, 2).unwrap();
        let ts = minor_terms(&lead, &r22, &f3).unwrap();
        assert_eq!(ts[0].monomial.exponents(), &[1, 0, 0, 1]);
        assert_eq!(ts[0].sign, 1);
        assert_eq!(ts[1].monomial.exponents(), &[0, 1, 1, 0]);
        assert_eq!(ts[1].sign, 2);
        let ts2 = minor_terms(&lead, &r22, &f2).unwrap();
        assert_eq!(ts2[1].sign, 1);

        let ts = minor_terms(&Minor::empty(), &r22, &f3).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].monomial, ExponentMatrix::one(&r22));
        assert_eq!(ts[0].sign, 1);
        assert_eq!(Minor { rows: vec![0, 1], cols: vec![0, 2] }.to_string(), "M[1,2|1,3]");
    }

    #[test]
    fn leading_minors() {
        let r = Rectangle::new(2, 2).unwrap();
        assert_eq!(leading_principal_minor(&r, 0).unwrap(), Minor::empty());
        assert_eq!(leading_principal_minor(&r, 1).unwrap(), Minor { rows: vec![0], cols: vec![0] });
        assert_eq!(leading_principal_minor(&r, 2).unwrap(), enumerate_minors(&r, 2).unwrap()[0]);
        assert!(leading_principal_minor(&r, 3).is_err());
    }

    #[test]
    fn term_structure() {
        let f = FieldSpec::new(5).unwrap();
        let rect = Rectangle::new(4, 4).unwrap();
        for i in 0..=4 {
            for m in enumerate_minors(&rect, i).unwrap() {
                let ts = minor_terms(&m, &rect, &f).unwrap();
                assert_eq!(ts.len(), (1..=i).product::<usize>());
                let mut monos: Vec<_> = ts.iter().map(|t| t.monomial.clone()).collect();
                monos.sort();
                monos.dedup();
                assert_eq!(monos.len(), ts.len());
                for t in &ts {
                    assert!(t.monomial.is_squarefree());
                    assert_eq!(t.monomial.degree() as usize, i);
                    for a in 0..4 {
                        let row: u32 = (0..4).map(|b| t.monomial.get(rect.slot(a, b))).sum();
                        let col: u32 = (0..4).map(|b| t.monomial.get(rect.slot(b, a))).sum();
                        assert!(row <= 1 && col <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_matches_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u32, 3, 4, 5, 9] {
            let f = FieldSpec::new(q).unwrap();
            let rect = Rectangle::new(3, 4).unwrap();
            let minors = minors_up_to(&rect, 3).unwrap();
            let polys: Vec<_> = minors.iter().map(|m| minor_polynomial(m, &rect, &f).unwrap()).collect();
            for _ in 0..100 {
                let point: Vec<Elem> = (0..rect.delta()).map(|_| rng.gen_range(0..q) as Elem).collect();
                for (m, p) in minors.iter().zip(&polys) {
                    let i = m.size();
                    let sub: Vec<Elem> = m
                        .rows
                        .iter()
                        .flat_map(|&a| m.cols.iter().map(move |&b| (a, b)))
                        .map(|(a, b)| point[rect.slot(a, b)])
                        .collect();
                    let det = if i == 0 { 1 } else { determinant(&f, i, &sub) };
                    assert_eq!(p.eval(&point), det, "{m} q={q}");
                }
            }
        }
    }

    #[test]
    fn refuses_huge_expansion() {
        let f = FieldSpec::new(2).unwrap();
        let rect = Rectangle::new(9, 9).unwrap();
        let m = leading_principal_minor(&rect, 9).unwrap();
        assert!(matches!(minor_terms(&m, &rect, &f), Err(AgcError::SizeOutOfRange { size: 9, max: 8 })));
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert!(is_odd(&[0, 2, 1]));
        assert!(!is_odd(&[1, 2, 0]));
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
