//! Affine maps `P -> B P A^{-1} + u` on `ell x ell'` matrices, the coordinate
//! permutations they induce, and automorphism checks.

use crate::code::{Code, PointEnumeration};
use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::{determinant, invert, matmul};
use crate::monomial::Rectangle;
use rand::Rng;
use rayon::prelude::*;
use std::collections::HashSet;

/// `psi(P) = B P A^{-1} + u`, matrices stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTransform {
    rect: Rectangle,
    pub u: Vec<Elem>,
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
    a_inv: Vec<Elem>,
}

impl AffineTransform {
    /// Fails with `SingularMatrix` unless `A` and `B` are invertible.
    pub fn new(field: &FieldSpec, rect: &Rectangle, u: Vec<Elem>, a: Vec<Elem>, b: Vec<Elem>) -> Result<Self> {
        let (l, lp) = (rect.ell(), rect.ell_prime());
        if u.len() != l * lp || a.len() != lp * lp || b.len() != l * l {
            return Err(AgcError::DimensionMismatch(format!("transform shapes do not fit {l}x{lp}")));
        }
        if determinant(field, l, &b) == 0 {
            return Err(AgcError::SingularMatrix);
        }
        let a_inv = invert(field, lp, &a).ok_or(AgcError::SingularMatrix)?;
        Ok(AffineTransform { rect: *rect, u, a, b, a_inv })
    }

    pub fn identity(rect: &Rectangle) -> Self {
        let eye = |n: usize| (0..n * n).map(|k| (k % (n + 1) == 0) as Elem).collect::<Vec<_>>();
        AffineTransform {
            rect: *rect,
            u: vec![0; rect.delta()],
            a: eye(rect.ell_prime()),
            b: eye(rect.ell()),
            a_inv: eye(rect.ell_prime()),
        }
    }

    /// Pure translation by `u`.
    pub fn translation(rect: &Rectangle, u: Vec<Elem>) -> Self {
        AffineTransform { u, ..Self::identity(rect) }
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    pub fn apply(&self, field: &FieldSpec, p: &[Elem]) -> Vec<Elem> {
        let (l, lp) = (self.rect.ell(), self.rect.ell_prime());
        let bp = matmul(field, &self.b, p, l, l, lp);
        let mut out = matmul(field, &bp, &self.a_inv, l, lp, lp);
        for (o, &x) in out.iter_mut().zip(&self.u) {
            *o = field.add(*o, x);
        }
        out
    }

    /// `self o other`: `(u,A,B) o (v,A',B') = (B v A^{-1} + u, A A', B B')`.
    pub fn compose(&self, field: &FieldSpec, other: &AffineTransform) -> AffineTransform {
        let (l, lp) = (self.rect.ell(), self.rect.ell_prime());
        let u = self.apply(field, &other.u);
        AffineTransform {
            rect: self.rect,
            u,
            a: matmul(field, &self.a, &other.a, lp, lp, lp),
            b: matmul(field, &self.b, &other.b, l, l, l),
            a_inv: matmul(field, &other.a_inv, &self.a_inv, lp, lp, lp),
        }
    }

    /// `(u, A, B)^{-1} = (-B^{-1} u A, A^{-1}, B^{-1})`.
    pub fn inverse(&self, field: &FieldSpec) -> AffineTransform {
        let (l, lp) = (self.rect.ell(), self.rect.ell_prime());
        let b_inv = invert(field, l, &self.b).expect("checked at construction");
        let bu = matmul(field, &b_inv, &self.u, l, l, lp);
        let u = matmul(field, &bu, &self.a, l, lp, lp).into_iter().map(|x| field.neg(x)).collect();
        AffineTransform { rect: self.rect, u, a: self.a_inv.clone(), b: b_inv, a_inv: self.a.clone() }
    }
}

/// A bijection of `0..n` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &x in &map {
            if x >= map.len() || std::mem::replace(&mut seen[x], true) {
                return Err(AgcError::InvalidParams("not a permutation".into()));
            }
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `(c_{sigma(0)}, ..., c_{sigma(n-1)})`.
    pub fn apply<T: Copy>(&self, word: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| word[i]).collect()
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    /// One line of space-separated 0-based images.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.join(" ") + "\n"
    }
}

/// `sigma` with `P_{sigma(i)} = psi(P_i)`.
pub fn induced_permutation(t: &AffineTransform, pe: &PointEnumeration) -> Result<Permutation> {
    if t.rect() != pe.rect() {
        return Err(AgcError::DimensionMismatch("transform and point enumeration differ in shape".into()));
    }
    let f = pe.field();
    Ok(Permutation((0..pe.len()).map(|i| pe.index(&t.apply(f, &pe.point(i)))).collect()))
}

/// `sigma` with `P_{sigma(i)} = P_i^T`.
pub fn transpose_permutation(pe: &PointEnumeration) -> Result<Permutation> {
    let rect = pe.rect();
    let n = rect.ell();
    if n != rect.ell_prime() {
        return Err(AgcError::NotSquare { ell: n, ell_prime: rect.ell_prime() });
    }
    Ok(Permutation(
        (0..pe.len())
            .map(|i| {
                let p = pe.point(i);
                let t: Vec<Elem> = (0..n * n).map(|s| p[(s % n) * n + s / n]).collect();
                pe.index(&t)
            })
            .collect(),
    ))
}

/// True iff permuting every generator row lands back in the code.
pub fn is_automorphism(code: &Code, sigma: &Permutation) -> Result<bool> {
    if sigma.len() != code.len() {
        return Err(AgcError::DimensionMismatch(format!("permutation of {} points, code length {}", sigma.len(), code.len())));
    }
    let space = code.row_space();
    Ok(code.generator().par_iter().all(|row| space.contains(&sigma.apply(row))))
}

/// `q^delta * |GL_ell| * |GL_ell'| / (q - 1)`.
pub fn subgroup_order_bound(ell: usize, m: usize, q: u32) -> Result<u128> {
    let rect = Rectangle::from_ell_m(ell, m)?;
    let q = q as u128;
    let gl = |n: u32| (0..n).map(|i| q.pow(n) - q.pow(i)).product::<u128>();
    Ok(q.pow(rect.delta() as u32) * gl(ell as u32) * gl(rect.ell_prime() as u32) / (q - 1))
}

/// A uniformly random invertible `n x n` matrix (rejection sampling).
pub fn random_invertible<R: Rng>(field: &FieldSpec, n: usize, rng: &mut R) -> Vec<Elem> {
    loop {
        let m: Vec<Elem> = (0..n * n).map(|_| rng.gen_range(0..field.q()) as Elem).collect();
        if determinant(field, n, &m) != 0 {
            return m;
        }
    }
}

pub fn random_transform<R: Rng>(field: &FieldSpec, rect: &Rectangle, rng: &mut R) -> AffineTransform {
    let u = (0..rect.delta()).map(|_| rng.gen_range(0..field.q()) as Elem).collect();
    let a = random_invertible(field, rect.ell_prime(), rng);
    let b = random_invertible(field, rect.ell(), rng);
    AffineTransform::new(field, rect, u, a, b).expect("sampled invertible")
}

/// Every invertible `n x n` matrix, by exhaustive filtering.
pub fn general_linear_group(field: &FieldSpec, n: usize) -> Result<Vec<Vec<Elem>>> {
    let total = (field.q() as u128).pow((n * n) as u32);
    if total > 1 << 20 {
        return Err(AgcError::TooLarge(format!("{total} candidate {n}x{n} matrices")));
    }
    let q = field.size();
    Ok((0..total as usize)
        .into_par_iter()
        .map(|mut x| {
            (0..n * n)
                .map(|_| {
                    let d = (x % q) as Elem;
                    x /= q;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|m| determinant(field, n, m) != 0)
        .collect())
}

/// Number of distinct permutations induced by all `(u, A, B)`.
pub fn count_induced_permutations(field: &FieldSpec, rect: &Rectangle) -> Result<usize> {
    let pe = PointEnumeration::new(field, rect)?;
    let gl_a = general_linear_group(field, rect.ell_prime())?;
    let gl_b = general_linear_group(field, rect.ell())?;
    let total = (pe.len() * gl_a.len() * gl_b.len()) as u128;
    if total * pe.len() as u128 > crate::code::max_coords() as u128 * 16 {
        return Err(AgcError::TooLarge(format!("{total} transforms")));
    }
    let perms: HashSet<Permutation> = (0..pe.len())
        .into_par_iter()
        .flat_map_iter(|ui| {
            let u = pe.point(ui);
            let mut local = Vec::with_capacity(gl_a.len() * gl_b.len());
            for a in &gl_a {
                for b in &gl_b {
                    let t = AffineTransform::new(field, rect, u.clone(), a.clone(), b.clone()).expect("invertible");
                    local.push(induced_permutation(&t, &pe).expect("same shape"));
                }
            }
            local
        })
        .collect();
    Ok(perms.len())
}

/// All permutations induced by `(u, A, B)`, as a set.
pub fn induced_permutation_group(field: &FieldSpec, rect: &Rectangle) -> Result<HashSet<Permutation>> {
    let pe = PointEnumeration::new(field, rect)?;
    let gl_a = general_linear_group(field, rect.ell_prime())?;
    let gl_b = general_linear_group(field, rect.ell())?;
    let mut out = HashSet::new();
    for ui in 0..pe.len() {
        for a in &gl_a {
            for b in &gl_b {
                let t = AffineTransform::new(field, rect, pe.point(ui), a.clone(), b.clone())?;
                out.insert(induced_permutation(&t, &pe)?);
            }
        }
    }
    Ok(out)
}
