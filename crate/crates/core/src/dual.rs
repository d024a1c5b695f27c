//! The explicit dual basis: forbidden monomials, minor binomials, the dual
//! code they span, and low-weight dual witnesses.

use crate::code::{agc_polynomials, max_coords, theoretical_params, Code, Evaluator, PointEnumeration, Provenance};
use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use crate::minors::{enumerate_minors, minor_terms, minors_up_to, Minor};
use crate::monomial::{
    full_product, multiply_reduced, reduced_monomials, uni_div_exact, uni_from_roots, ExponentMatrix, Rectangle,
    SparsePolynomial,
};
use rayon::prelude::*;
use std::collections::HashSet;

fn setup(ell: usize, m: usize, r: usize, q: u32) -> Result<(FieldSpec, Rectangle)> {
    let field = FieldSpec::new(q)?;
    let rect = Rectangle::from_ell_m(ell, m)?;
    if r > ell {
        return Err(AgcError::SizeOutOfRange { size: r, max: ell });
    }
    Ok((field, rect))
}

fn check_monomial_budget(rect: &Rectangle, q: u32) -> Result<()> {
    let n = (q as u128).pow(rect.delta() as u32);
    if n > max_coords() as u128 {
        return Err(AgcError::TooLarge(format!("{n} reduced monomials")));
    }
    Ok(())
}

/// `full / t` for every term `t` of every minor of size at most `r`.
#[derive(Clone, Debug)]
pub struct ForbiddenSet {
    pub ell: usize,
    pub m: usize,
    pub r: usize,
    pub q: u32,
    monomials: HashSet<ExponentMatrix>,
}

impl ForbiddenSet {
    pub fn contains(&self, mono: &ExponentMatrix) -> bool {
        self.monomials.contains(mono)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Members in canonical order.
    pub fn sorted(&self) -> Vec<ExponentMatrix> {
        let mut v: Vec<_> = self.monomials.iter().cloned().collect();
        v.sort();
        v
    }
}

pub fn forbidden_monomials(ell: usize, m: usize, r: usize, q: u32) -> Result<ForbiddenSet> {
    let (field, rect) = setup(ell, m, r, q)?;
    check_monomial_budget(&rect, q)?;
    let full = full_product(&rect, q);
    let per_minor: Vec<Vec<ExponentMatrix>> = minors_up_to(&rect, r)?
        .par_iter()
        .map(|mi| {
            minor_terms(mi, &rect, &field)
                .map(|ts| ts.iter().map(|t| full.checked_div(&t.monomial).expect("terms divide full")).collect())
        })
        .collect::<Result<_>>()?;
    let monomials = per_minor.into_iter().flatten().collect();
    Ok(ForbiddenSet { ell, m, r, q, monomials })
}

/// Reduced monomials that are not forbidden, in canonical order.
pub fn non_forbidden_monomials(ell: usize, m: usize, r: usize, q: u32) -> Result<Vec<ExponentMatrix>> {
    let forbidden = forbidden_monomials(ell, m, r, q)?;
    let rect = Rectangle::from_ell_m(ell, m)?;
    Ok(reduced_monomials(&rect, q).into_iter().filter(|mu| !forbidden.contains(mu)).collect())
}

/// `full/t_id(M) - full/t_perm(M)` for a minor `M` and non-identity `perm`,
/// where `t_perm` carries the sign of `perm` (so odd permutations give `+`).
#[derive(Clone, Debug)]
pub struct MinorBinomial {
    pub minor: Minor,
    pub perm: Vec<usize>,
    pub poly: SparsePolynomial,
}

pub fn binomials(ell: usize, m: usize, r: usize, q: u32) -> Result<Vec<MinorBinomial>> {
    let (field, rect) = setup(ell, m, r, q)?;
    let full = full_product(&rect, q);
    let mut out = Vec::new();
    for i in 2..=r {
        for minor in enumerate_minors(&rect, i)? {
            let terms = minor_terms(&minor, &rect, &field)?;
            let ident = full.checked_div(&terms[0].monomial).expect("terms divide full");
            for t in &terms[1..] {
                let mut poly = SparsePolynomial::monomial(&field, &rect, ident.clone());
                poly.add_term(full.checked_div(&t.monomial).expect("terms divide full"), field.neg(t.sign));
                out.push(MinorBinomial { minor: minor.clone(), perm: t.perm.clone(), poly });
            }
        }
    }
    Ok(out)
}

/// Non-forbidden monomials followed by the minor binomials.
pub fn dual_basis(ell: usize, m: usize, r: usize, q: u32) -> Result<Vec<SparsePolynomial>> {
    let (field, rect) = setup(ell, m, r, q)?;
    let mut out: Vec<SparsePolynomial> = non_forbidden_monomials(ell, m, r, q)?
        .into_iter()
        .map(|mu| SparsePolynomial::monomial(&field, &rect, mu))
        .collect();
    out.extend(binomials(ell, m, r, q)?.into_iter().map(|b| b.poly));
    Ok(out)
}

/// The dual of an affine Grassmann code, generated by the explicit dual basis.
///
/// Every dual row is checked against every generator row of `code`.
pub fn build_dual_code(code: &Code) -> Result<Code> {
    let Provenance::Agc { ell, m, r } = *code.provenance() else {
        return Err(AgcError::InvalidParams(format!("explicit dual needs an AGC code, got {}", code.provenance())));
    };
    let q = code.field().q();
    let (field, rect) = setup(ell, m, r, q)?;
    let params = theoretical_params(ell, m, r, q)?;
    let dual_dim = params.n as usize - params.k;
    if (params.n * dual_dim as u128) > max_coords() as u128 {
        return Err(AgcError::TooLarge(format!("dual generator {dual_dim} x {}", params.n)));
    }
    let pe = PointEnumeration::new(&field, &rect)?;
    let rows = Evaluator::new(&pe).eval_all(&dual_basis(ell, m, r, q)?)?;
    if let Some((dual_row, primal_row)) = first_violation(&field, &rows, code.generator()) {
        return Err(AgcError::OrthogonalityViolation { dual_row, primal_row });
    }
    Code::from_generator(&field, pe.len(), rows, Provenance::Dual { of: Box::new(code.provenance().clone()) })
}

/// First `(i, j)` with `<a_i, b_j> != 0`.
pub fn first_violation(field: &FieldSpec, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Option<(usize, usize)> {
    a.par_iter()
        .enumerate()
        .filter_map(|(i, x)| b.iter().position(|y| field.dot(x, y) != 0).map(|j| (i, j)))
        .min()
}

/// Which minimum-weight dual witness to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessChoice {
    /// `q > 2`: distinct nonzero `a1, a2`; weight 3.
    G { a1: Elem, a2: Elem },
    /// `q = 2`: two distinct 0-based cells sharing a row or a column; weight 4.
    H { first: (usize, usize), second: (usize, usize) },
}

pub fn dual_min_weight_witness(ell: usize, m: usize, r: usize, q: u32, choice: WitnessChoice) -> Result<SparsePolynomial> {
    let (field, rect) = setup(ell, m, r, q)?;
    if r == 0 {
        return Err(AgcError::InvalidWitnessParams("level must be positive".into()));
    }
    match choice {
        WitnessChoice::G { a1, a2 } => {
            if q == 2 {
                return Err(AgcError::InvalidWitnessParams("g witness needs q > 2".into()));
            }
            if a1 == a2 || a1 == 0 || a2 == 0 || a1 as u32 >= q || a2 as u32 >= q {
                return Err(AgcError::InvalidWitnessParams(format!("need distinct nonzero a1, a2, got {a1}, {a2}")));
            }
            let last = rect.slot(rect.ell() - 1, rect.ell_prime() - 1);
            let qm1 = (q - 1) as usize;
            let mut vanish = vec![0; qm1 + 1];
            vanish[0] = field.minus_one();
            vanish[qm1] = 1;
            let quot = uni_div_exact(&field, &vanish, &uni_from_roots(&field, &[a1, a2]))
                .expect("a1, a2 are roots of T^(q-1) - 1");
            let mut g = SparsePolynomial::zero(&field, &rect);
            for (e, &c) in quot.iter().enumerate() {
                let mut exps = vec![0; rect.delta()];
                exps[last] = e as u32;
                g.add_term(ExponentMatrix::new(exps), c);
            }
            for s in (0..rect.delta()).filter(|&s| s != last) {
                let mut factor = SparsePolynomial::constant(&field, &rect, field.minus_one());
                let mut exps = vec![0; rect.delta()];
                exps[s] = q - 1;
                factor.add_term(ExponentMatrix::new(exps), 1);
                g = multiply_reduced(&g, &factor)?;
            }
            Ok(g)
        }
        WitnessChoice::H { first, second } => {
            if q != 2 || rect.ell_prime() < 2 {
                return Err(AgcError::InvalidWitnessParams("h witness needs q = 2 and ell' > 1".into()));
            }
            let inside = |(i, j): (usize, usize)| i < rect.ell() && j < rect.ell_prime();
            if first == second || !inside(first) || !inside(second) || (first.0 != second.0 && first.1 != second.1) {
                return Err(AgcError::InvalidWitnessParams(format!(
                    "cells {first:?}, {second:?} must be distinct and share a row or column"
                )));
            }
            let div = ExponentMatrix::var(&rect, first.0, first.1).mul_raw(&ExponentMatrix::var(&rect, second.0, second.1));
            let h = full_product(&rect, q).checked_div(&div).expect("squarefree divisor");
            Ok(SparsePolynomial::monomial(&field, &rect, h))
        }
    }
}

/// Outcome of a self-orthogonality test against the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SelfOrthogonality {
    pub self_orthogonal: bool,
    pub expected_by_theorem: bool,
}

/// The only parameter sets `(ell, m, r, q)` whose code is not self-orthogonal.
pub const NOT_SELF_ORTHOGONAL: [(usize, usize, usize, u32); 3] = [(1, 2, 1, 2), (1, 2, 1, 3), (1, 3, 1, 2)];

pub fn self_orthogonality_check(ell: usize, m: usize, r: usize, q: u32) -> Result<SelfOrthogonality> {
    let code = crate::code::build_affine_grassmann(ell, m, r, q)?;
    Ok(SelfOrthogonality {
        self_orthogonal: code.is_self_orthogonal(),
        expected_by_theorem: !NOT_SELF_ORTHOGONAL.contains(&(ell, m, r, q)),
    })
}

/// `sum_P mu(P)` over all points, computed directly.
pub fn char_sum(mu: &ExponentMatrix, pe: &PointEnumeration) -> Result<Elem> {
    if mu.exponents().len() != pe.rect().delta() || !mu.is_reduced(pe.field().q()) {
        return Err(AgcError::DimensionMismatch("monomial does not match the point enumeration".into()));
    }
    let f = pe.field();
    Ok(Evaluator::new(pe).monomial(mu).into_iter().fold(0, |acc, x| f.add(acc, x)))
}

/// The maximal non-forbidden monomials: `full/t` for terms `t` of `(r+1)`-minors,
/// and `full/(X_a X_b)` for cells `a, b` in a common row or column (`a = b`
/// allowed only when `q > 2`). Canonical order, no duplicates.
pub fn maximal_nonforbidden(ell: usize, m: usize, r: usize, q: u32) -> Result<Vec<ExponentMatrix>> {
    let (field, rect) = setup(ell, m, r, q)?;
    if r == 0 {
        return Err(AgcError::SizeOutOfRange { size: 0, max: ell });
    }
    let full = full_product(&rect, q);
    let mut out = HashSet::new();
    if r < ell {
        for minor in enumerate_minors(&rect, r + 1)? {
            for t in minor_terms(&minor, &rect, &field)? {
                out.insert(full.checked_div(&t.monomial).expect("terms divide full"));
            }
        }
    }
    for a in 0..rect.delta() {
        for b in a..rect.delta() {
            let ((i1, j1), (i2, j2)) = (rect.coords(a), rect.coords(b));
            if (a == b && q == 2) || (i1 != i2 && j1 != j2) {
                continue;
            }
            let mut e = full.exponents().to_vec();
            e[a] -= 1;
            e[b] -= 1;
            out.insert(ExponentMatrix::new(e));
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    Ok(v)
}

/// All polynomials of an AGC level, re-exported for callers building codes by hand.
pub fn primal_polynomials(ell: usize, m: usize, r: usize, q: u32) -> Result<Vec<SparsePolynomial>> {
    let (field, rect) = setup(ell, m, r, q)?;
    agc_polynomials(&field, &rect, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_affine_grassmann, evaluate, weight};

    fn fact(i: usize) -> usize {
        (1..=i).product()
    }

    fn binom(n: usize, k: usize) -> usize {
        crate::code::binomial(n, k) as usize
    }

    #[test]
    fn forbidden_examples() {
        let f = forbidden_monomials(2, 4, 2, 2).unwrap();
        assert_eq!(f.len(), 7);
        assert_eq!(non_forbidden_monomials(2, 4, 2, 2).unwrap().len(), 9);
        let rect = Rectangle::new(2, 3).unwrap();
        let f0 = forbidden_monomials(2, 5, 0, 3).unwrap();
        assert_eq!(f0.sorted(), vec![full_product(&rect, 3)]);
        let f = forbidden_monomials(1, 2, 1, 3).unwrap();
        assert_eq!(f.sorted(), vec![ExponentMatrix::new(vec![1]), ExponentMatrix::new(vec![2])]);
    }

    #[test]
    fn forbidden_counts_are_exact() {
        for q in [2u32, 3, 4] {
            for (l, lp) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)] {
                if (q as usize).pow((l * lp) as u32) > 1 << 16 {
                    continue;
                }
                for r in 0..=l {
                    let expected: usize = (0..=r).map(|i| fact(i) * binom(l, i) * binom(lp, i)).sum();
                    assert_eq!(forbidden_monomials(l, l + lp, r, q).unwrap().len(), expected);
                }
            }
        }
    }

    #[test]
    fn binomial_examples() {
        let b = binomials(2, 4, 2, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].poly.to_string(), "X[1,2]*X[2,1] + X[1,1]*X[2,2]");
        assert!(binomials(3, 6, 1, 2).unwrap().is_empty());
        assert_eq!(binomials(3, 6, 2, 2).unwrap().len(), 9);
        let b3 = binomials(2, 4, 2, 3).unwrap();
        assert_eq!(b3[0].poly.num_terms(), 2);
        // the only non-identity permutation of a 2x2 minor is odd
        assert!(b3[0].poly.terms().all(|(_, c)| c == 1));
        let b33 = binomials(3, 6, 3, 3).unwrap();
        let even = b33.iter().find(|b| b.minor.size() == 3 && !crate::minors::is_odd(&b.perm)).unwrap();
        let mut coeffs: Vec<Elem> = even.poly.terms().map(|(_, c)| c).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![1, 2]);
    }

    #[test]
    fn dual_basis_examples() {
        assert_eq!(dual_basis(2, 4, 2, 2).unwrap().len(), 10);
        assert!(dual_basis(1, 2, 1, 2).unwrap().is_empty());
        assert_eq!(dual_basis(3, 6, 2, 2).unwrap().len(), 493);
    }

    #[test]
    fn dual_code_examples() {
        let c = build_affine_grassmann(2, 4, 2, 2).unwrap();
        let d = build_dual_code(&c).unwrap();
        assert_eq!((d.len(), d.dimension()), (16, 10));
        let c = build_affine_grassmann(1, 2, 1, 3).unwrap();
        let d = build_dual_code(&c).unwrap();
        assert_eq!(d.dimension(), 1);
        let w = &d.generator()[0];
        assert!(w.iter().all(|&x| x == w[0] && x != 0));
        let c = build_affine_grassmann(3, 6, 3, 2).unwrap();
        assert_eq!(build_dual_code(&c).unwrap().dimension(), 492);
        let raw = c.dual_by_elimination();
        assert!(matches!(build_dual_code(&raw), Err(AgcError::InvalidParams(_))));
    }

    #[test]
    fn dual_of_dual_is_primal() {
        for (l, m, r, q) in [(2, 4, 1, 2), (2, 5, 2, 3), (1, 3, 1, 3)] {
            let c = build_affine_grassmann(l, m, r, q).unwrap();
            let d = build_dual_code(&c).unwrap();
            assert!(crate::code::same_code(&d.dual_by_elimination(), &c).unwrap());
        }
    }

    fn witness_weight(l: usize, m: usize, r: usize, q: u32, choice: WitnessChoice) -> (usize, bool) {
        let g = dual_min_weight_witness(l, m, r, q, choice).unwrap();
        let field = FieldSpec::new(q).unwrap();
        let pe = PointEnumeration::new(&field, &Rectangle::from_ell_m(l, m).unwrap()).unwrap();
        let v = evaluate(&g, &pe).unwrap();
        let c = build_affine_grassmann(l, m, r, q).unwrap();
        (weight(&v), c.generator().iter().all(|row| field.dot(row, &v) == 0))
    }

    #[test]
    fn witness_examples() {
        assert_eq!(witness_weight(1, 3, 1, 3, WitnessChoice::G { a1: 1, a2: 2 }), (3, true));
        let h = dual_min_weight_witness(2, 4, 2, 2, WitnessChoice::H { first: (1, 0), second: (1, 1) }).unwrap();
        assert_eq!(h.to_string(), "X[1,1]*X[1,2]");
        assert_eq!(witness_weight(2, 4, 2, 2, WitnessChoice::H { first: (1, 0), second: (1, 1) }), (3 + 1, true));
        let g = dual_min_weight_witness(1, 2, 1, 3, WitnessChoice::G { a1: 1, a2: 2 }).unwrap();
        assert_eq!(g.to_string(), "1");
        assert_eq!(witness_weight(2, 4, 1, 4, WitnessChoice::G { a1: 2, a2: 3 }), (3, true));
        assert_eq!(witness_weight(2, 5, 2, 5, WitnessChoice::G { a1: 4, a2: 1 }).0, 3);
    }

    #[test]
    fn witness_rejections() {
        let bad = |l, m, r, q, c| matches!(dual_min_weight_witness(l, m, r, q, c), Err(AgcError::InvalidWitnessParams(_)));
        assert!(bad(1, 2, 1, 2, WitnessChoice::H { first: (0, 0), second: (0, 0) }));
        assert!(bad(2, 4, 1, 2, WitnessChoice::H { first: (0, 0), second: (1, 1) }));
        assert!(bad(2, 4, 1, 2, WitnessChoice::G { a1: 1, a2: 0 }));
        assert!(bad(2, 4, 1, 3, WitnessChoice::G { a1: 1, a2: 1 }));
        assert!(bad(2, 4, 1, 3, WitnessChoice::G { a1: 0, a2: 1 }));
        assert!(bad(2, 4, 0, 3, WitnessChoice::G { a1: 1, a2: 2 }));
    }

    #[test]
    fn self_orthogonality_examples() {
        let s = self_orthogonality_check(2, 4, 2, 2).unwrap();
        assert!(s.self_orthogonal && s.expected_by_theorem);
        let s = self_orthogonality_check(1, 2, 1, 2).unwrap();
        assert!(!s.self_orthogonal && !s.expected_by_theorem);
        let s = self_orthogonality_check(1, 3, 1, 2).unwrap();
        assert!(!s.self_orthogonal && !s.expected_by_theorem);
    }

    #[test]
    fn char_sum_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let r11 = Rectangle::new(1, 1).unwrap();
        let pe = PointEnumeration::new(&f2, &r11).unwrap();
        assert_eq!(char_sum(&ExponentMatrix::new(vec![1]), &pe).unwrap(), 1);
        let f3 = FieldSpec::new(3).unwrap();
        let r12 = Rectangle::new(1, 2).unwrap();
        let pe = PointEnumeration::new(&f3, &r12).unwrap();
        assert_eq!(char_sum(&ExponentMatrix::new(vec![0, 0]), &pe).unwrap(), 0);
        assert_eq!(char_sum(&ExponentMatrix::new(vec![2, 2]), &pe).unwrap(), 1);
        assert_eq!(char_sum(&ExponentMatrix::new(vec![2, 1]), &pe).unwrap(), 0);
        assert!(char_sum(&ExponentMatrix::new(vec![3, 0]), &pe).is_err());
    }

    #[test]
    fn maximal_nonforbidden_examples() {
        let mx = maximal_nonforbidden(2, 4, 2, 2).unwrap();
        assert_eq!(mx.len(), 4);
        assert!(mx.iter().all(|mu| mu.degree() == 2));
        assert_eq!(maximal_nonforbidden(1, 2, 1, 3).unwrap(), vec![ExponentMatrix::new(vec![0])]);
        // r = ell: only same-row/column deletions
        let rect = Rectangle::new(2, 3).unwrap();
        let mx = maximal_nonforbidden(2, 5, 2, 2).unwrap();
        assert_eq!(mx.len(), 2 * 3 + 3);
        assert!(mx.iter().all(|mu| mu.degree() as usize == rect.delta() - 2));
    }

    #[test]
    fn divisibility_characterization() {
        for q in [2u32, 3, 4] {
            for (l, lp) in [(1, 1), (1, 2), (2, 2), (2, 3), (1, 4)] {
                let rect = Rectangle::new(l, lp).unwrap();
                if (q as usize).pow(rect.delta() as u32) > 1 << 16 || (q == 2 && lp == 1) {
                    continue;
                }
                for r in 1..=l {
                    let forbidden = forbidden_monomials(l, l + lp, r, q).unwrap();
                    let mx = maximal_nonforbidden(l, l + lp, r, q).unwrap();
                    assert!(mx.iter().all(|mu| !forbidden.contains(mu)));
                    for mu in reduced_monomials(&rect, q) {
                        let divides = mx.iter().any(|top| mu.divides(top));
                        assert_eq!(divides, !forbidden.contains(&mu), "q={q} {l}x{lp} r={r} {mu:?}");
                    }
                }
            }
        }
    }
}
