//! Table-driven arithmetic in small finite fields F_q, q = p^t <= 16.
//!
//! Elements are represented by their code in `0..q`. For an extension field the
//! code of `c_0 + c_1 X + ... + c_{t-1} X^{t-1}` is `c_0 + c_1 p + ... + c_{t-1} p^{t-1}`
//! with arithmetic taken modulo a fixed irreducible polynomial per q, so the
//! element ordering (and every codeword coordinate built on it) is reproducible.

use crate::error::{AgcError, Result};
use std::fmt;

/// Field element code, always `< q` of the owning [`FieldSpec`].
pub type Elem = u8;

/// Largest supported field size.
pub const MAX_Q: u32 = 16;

/// A finite field with precomputed addition, multiplication and inverse tables.
#[derive(Clone)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    t: u32,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.q)
    }
}

/// Operations exposed through [`FieldSpec::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow,
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut t = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        t += 1;
    }
    (rest == 1).then_some((p, t))
}

/// Built-in monic moduli, coefficients from degree 0 up to the leading 1.
fn builtin_modulus(q: u32) -> Vec<u32> {
    match q {
        4 => vec![1, 1, 1],       // X^2 + X + 1
        8 => vec![1, 1, 0, 1],    // X^3 + X + 1
        9 => vec![1, 0, 1],       // X^2 + 1
        16 => vec![1, 1, 0, 0, 1], // X^4 + X + 1
        _ => Vec::new(),
    }
}

impl FieldSpec {
    /// Builds F_q for a prime power `q <= 16`.
    pub fn new(q: u32) -> Result<Self> {
        let (p, t) = factor_prime_power(q).ok_or(AgcError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(AgcError::Unsupported(q));
        }
        let modulus = builtin_modulus(q);
        let qs = q as usize;

        let digits = |mut c: u32| -> Vec<u32> {
            let mut d = vec![0; t as usize];
            for slot in d.iter_mut() {
                *slot = c % p;
                c /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as Elem;

                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * t as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if t > 1 {
                    for deg in (t as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        for (k, m) in modulus.iter().enumerate() {
                            let idx = deg - t as usize + k;
                            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..t as usize]) as Elem;
            }
        }

        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .ok_or(AgcError::NotPrimePower(q))? as Elem;
            }
        }

        Ok(FieldSpec { q, p, t, modulus, add, mul, neg, inv })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Field size as a `usize`, convenient for indexing.
    pub fn size(&self) -> usize {
        self.q as usize
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.t
    }

    /// Modulus coefficients, lowest degree first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Validates an element code.
    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.q {
            Ok(code as Elem)
        } else {
            Err(AgcError::InvalidElement { code, q: self.q })
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(|c| c as Elem)
    }

    /// Nonzero elements in code order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(|c| c as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(AgcError::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        // the multiplicative group has order q - 1
        let mut e = e % (self.q as u64 - 1);
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `-1` in this field.
    pub fn minus_one(&self) -> Elem {
        self.neg(1)
    }

    /// Sign of a permutation as a field element.
    pub fn sign(&self, odd: bool) -> Elem {
        if odd {
            self.minus_one()
        } else {
            1
        }
    }

    /// Embeds an integer via repeated addition of 1 (i.e. reduction mod p).
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// Scalar-multiple row table: `mul_row(c)[x] = c * x`.
    pub fn mul_row(&self, c: Elem) -> &[Elem] {
        let q = self.q as usize;
        &self.mul[c as usize * q..(c as usize + 1) * q]
    }

    /// Addition row table: `add_row(c)[x] = c + x`.
    pub fn add_row(&self, c: Elem) -> &[Elem] {
        let q = self.q as usize;
        &self.add[c as usize * q..(c as usize + 1) * q]
    }

    /// Generic dispatcher over [`FieldOp`]. `Pow` takes the exponent as its second argument.
    pub fn apply(&self, op: FieldOp, args: &[u32]) -> Result<Elem> {
        let arity = match op {
            FieldOp::Neg | FieldOp::Inv => 1,
            _ => 2,
        };
        if args.len() != arity {
            return Err(AgcError::InvalidParams(format!(
                "{op:?} takes {arity} argument(s), got {}",
                args.len()
            )));
        }
        let a = self.elem(args[0])?;
        match op {
            FieldOp::Add => Ok(self.add(a, self.elem(args[1])?)),
            FieldOp::Sub => Ok(self.sub(a, self.elem(args[1])?)),
            FieldOp::Mul => Ok(self.mul(a, self.elem(args[1])?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow => Ok(self.pow(a, args[1] as u64)),
        }
    }

    /// Inner product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        if self.t == 1 {
            // prime field: accumulate as integers
            let p = self.p as u64;
            let mut acc: u64 = 0;
            for chunk in a.chunks(4096).zip(b.chunks(4096)) {
                let s: u64 = chunk.0.iter().zip(chunk.1).map(|(&x, &y)| x as u64 * y as u64).sum();
                acc = (acc + s) % p;
            }
            acc as Elem
        } else {
            a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }

    /// `dst += c * src`, elementwise.
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        let mrow = self.mul_row(c);
        let q = self.q as usize;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add[*d as usize * q + mrow[s as usize] as usize];
        }
    }

    /// `dst += src`, elementwise.
    #[inline]
    pub fn add_assign(&self, dst: &mut [Elem], src: &[Elem]) {
        let q = self.q as usize;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add[*d as usize * q + s as usize];
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        let mrow = self.mul_row(c);
        for x in v.iter_mut() {
            *x = mrow[*x as usize];
        }
    }
}
