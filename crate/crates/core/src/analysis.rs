//! Exact weight analysis: exhaustive minimum distance, low-weight dual
//! codewords from column dependencies, and span tests.

use crate::code::{max_coords, weight, Code, PointEnumeration};
use crate::error::{AgcError, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::{pack_bits, popcount, rank, unpack_bits, RowSpace};
use crate::monomial::Rectangle;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Default cap on the number of codewords an exhaustive enumeration may visit.
pub const DEFAULT_MAX_ENUM: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "full-enumeration")]
    FullEnumeration,
    #[serde(rename = "support-search")]
    SupportSearch,
}

/// Minimum distance, number of minimum-weight words, and how they were found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub d: usize,
    pub count: u64,
    pub method: Method,
    /// Codewords (full enumeration) or column combinations (support search) examined.
    pub enumerated: u64,
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Folds `step` over every codeword of a binary code (zero word included),
/// splitting the top generator bits across workers and walking the rest in
/// Gray-code order.
fn fold_binary<T, I, S, M>(rows: &[Vec<u64>], init: I, step: S, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    S: Fn(&mut T, &[u64]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let k = rows.len();
    let words = rows.first().map_or(0, |r| r.len());
    let split = k.min(8);
    let low = k - split;
    (0..1usize << split)
        .into_par_iter()
        .map(|hi| {
            let mut acc = init();
            let mut cur = vec![0u64; words];
            for b in 0..split {
                if (hi >> b) & 1 == 1 {
                    xor_into(&mut cur, &rows[low + b]);
                }
            }
            step(&mut acc, &cur);
            for g in 1..1usize << low {
                xor_into(&mut cur, &rows[g.trailing_zeros() as usize]);
                step(&mut acc, &cur);
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Folds `step` over one representative of every projective point of the
/// code: the codewords whose highest nonzero coefficient is 1.
fn fold_projective<T, I, S, M>(field: &FieldSpec, rows: &[Vec<Elem>], init: I, step: S, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    S: Fn(&mut T, &[Elem]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let q = field.size();
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    // delta[j][a]: what to add when coefficient j steps from code a to code a+1 (mod q)
    let delta: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|row| {
            (0..q)
                .map(|a| {
                    let c = field.sub(((a + 1) % q) as Elem, a as Elem);
                    let mut v = vec![0; n];
                    field.axpy(&mut v, c, row);
                    v
                })
                .collect()
        })
        .collect();
    let items: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|p| {
            let top = p.min(4);
            (0..q.pow(top as u32)).map(move |prefix| (p, top, prefix))
        })
        .collect();
    items
        .into_par_iter()
        .map(|(p, top, prefix)| {
            let mut acc = init();
            let low = p - top;
            let mut cur = rows[p].clone();
            let mut x = prefix;
            for t in 0..top {
                field.axpy(&mut cur, (x % q) as Elem, &rows[low + t]);
                x /= q;
            }
            let mut digits = vec![0usize; low];
            step(&mut acc, &cur);
            'outer: loop {
                let mut j = 0;
                loop {
                    if j == low {
                        break 'outer;
                    }
                    let a = digits[j];
                    field.add_assign(&mut cur, &delta[j][a]);
                    if a + 1 == q {
                        digits[j] = 0;
                        j += 1;
                    } else {
                        digits[j] = a + 1;
                        break;
                    }
                }
                step(&mut acc, &cur);
            }
            acc
        })
        .reduce(&init, &merge)
}

fn check_enumeration(code: &Code, cap: u64) -> Result<u128> {
    let k = code.dimension();
    if k == 0 {
        return Err(AgcError::InvalidParams("the zero code has no minimum distance".into()));
    }
    let total = (code.field().q() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(AgcError::TooLarge(format!(
            "{total} codewords exceed the enumeration cap {cap}; use the support search for dual codes"
        )));
    }
    Ok(total)
}

type MinCount = (usize, u64);

fn merge_min((d1, c1): MinCount, (d2, c2): MinCount) -> MinCount {
    match d1.cmp(&d2) {
        std::cmp::Ordering::Less => (d1, c1),
        std::cmp::Ordering::Greater => (d2, c2),
        std::cmp::Ordering::Equal => (d1, c1 + c2),
    }
}

#[inline]
fn record(acc: &mut MinCount, w: usize) {
    if w == 0 || w > acc.0 {
        return;
    }
    if w < acc.0 {
        *acc = (w, 1);
    } else {
        acc.1 += 1;
    }
}

pub fn min_distance_exhaustive(code: &Code) -> Result<WeightReport> {
    min_distance_exhaustive_capped(code, DEFAULT_MAX_ENUM)
}

/// Exact minimum distance and minimum-weight count by visiting every codeword.
pub fn min_distance_exhaustive_capped(code: &Code, cap: u64) -> Result<WeightReport> {
    let total = check_enumeration(code, cap)?;
    let field = code.field();
    let init = || (usize::MAX, 0u64);
    if field.q() == 2 {
        let rows: Vec<Vec<u64>> = code.generator().iter().map(|r| pack_bits(r)).collect();
        let (d, count) = fold_binary(&rows, init, |acc, w| record(acc, popcount(w) as usize), merge_min);
        Ok(WeightReport { d, count, method: Method::FullEnumeration, enumerated: (total - 1) as u64 })
    } else {
        let qm1 = field.q() as u64 - 1;
        let (d, count) = fold_projective(field, code.generator(), init, |acc, w| record(acc, weight(w)), merge_min);
        Ok(WeightReport {
            d,
            count: count * qm1,
            method: Method::FullEnumeration,
            enumerated: ((total - 1) / qm1 as u128) as u64,
        })
    }
}

/// Number of codewords of every weight `0..=n`, by full enumeration.
pub fn weight_distribution(code: &Code, cap: u64) -> Result<Vec<u64>> {
    check_enumeration(code, cap)?;
    let n = code.len();
    let field = code.field();
    let add = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    if field.q() == 2 {
        let rows: Vec<Vec<u64>> = code.generator().iter().map(|r| pack_bits(r)).collect();
        Ok(fold_binary(&rows, || vec![0u64; n + 1], |acc, w| acc[popcount(w) as usize] += 1, add))
    } else {
        let qm1 = field.q() as u64 - 1;
        let mut dist = fold_projective(field, code.generator(), || vec![0u64; n + 1], |acc, w| acc[weight(w)] += 1, add);
        dist.iter_mut().for_each(|x| *x *= qm1);
        dist[0] = 1;
        Ok(dist)
    }
}

/// Every codeword of weight exactly `d`, sorted.
pub fn min_weight_codewords(code: &Code, d: usize) -> Result<Vec<Vec<Elem>>> {
    check_enumeration(code, DEFAULT_MAX_ENUM)?;
    let field = code.field();
    let n = code.len();
    let budget = max_coords() as usize;
    let overflow = || AgcError::TooLarge(format!("too many weight-{d} codewords to collect"));
    let concat = |mut a: Vec<Vec<Elem>>, b: Vec<Vec<Elem>>| {
        a.extend(b);
        a
    };
    let mut out: Vec<Vec<Elem>> = if field.q() == 2 {
        let rows: Vec<Vec<u64>> = code.generator().iter().map(|r| pack_bits(r)).collect();
        let packed = fold_binary(
            &rows,
            Vec::new,
            |acc: &mut Vec<Vec<u64>>, w| {
                if popcount(w) as usize == d && d > 0 && acc.len() * n <= budget {
                    acc.push(w.to_vec());
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        if packed.len() * n > budget {
            return Err(overflow());
        }
        packed.iter().map(|w| unpack_bits(w, n)).collect()
    } else {
        let reps = fold_projective(
            field,
            code.generator(),
            Vec::new,
            |acc: &mut Vec<Vec<Elem>>, w| {
                if weight(w) == d && d > 0 && acc.len() * n <= budget {
                    acc.push(w.to_vec());
                }
            },
            concat,
        );
        if reps.len() * n * (field.size() - 1) > budget {
            return Err(overflow());
        }
        reps.iter()
            .flat_map(|w| {
                field.nonzero().map(move |c| {
                    let mut v = w.clone();
                    field.scale(&mut v, c);
                    v
                })
            })
            .collect()
    };
    out.sort();
    Ok(out)
}

/// Columns of a generator matrix, each written as `scalar * normalized` with
/// the first nonzero entry of `normalized` equal to 1.
struct Columns {
    field: FieldSpec,
    bits: usize,
    cols: Vec<Vec<Elem>>,
    /// indices of nonzero columns, increasing
    nonzero: Vec<usize>,
    scalar: Vec<Elem>,
    /// normalized key -> increasing column indices
    classes: HashMap<u128, Vec<usize>>,
}

impl Columns {
    fn new(code: &Code) -> Result<Self> {
        let field = code.field().clone();
        let k = code.dimension();
        let bits = if field.q() == 2 { 1 } else { 4 };
        if k * bits > 128 {
            return Err(AgcError::TooLarge(format!("support search needs dimension <= {} (got {k})", 128 / bits)));
        }
        let n = code.len();
        let g = code.generator();
        let cols: Vec<Vec<Elem>> = (0..n).map(|j| g.iter().map(|r| r[j]).collect()).collect();
        let mut nonzero = Vec::new();
        let mut scalar = vec![0; n];
        let mut classes: HashMap<u128, Vec<usize>> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            if let Some((key, s)) = normalize(&field, c, bits) {
                nonzero.push(j);
                scalar[j] = s;
                classes.entry(key).or_default().push(j);
            }
        }
        Ok(Columns { field, bits, cols, nonzero, scalar, classes })
    }

    /// `c_i + b c_j`.
    fn combo(&self, i: usize, b: Elem, j: usize) -> Vec<Elem> {
        let mut v = self.cols[i].clone();
        self.field.axpy(&mut v, b, &self.cols[j]);
        v
    }
}

/// `(key(v / s), s)` with `s` the first nonzero entry of `v`; `None` for zero.
fn normalize(field: &FieldSpec, v: &[Elem], bits: usize) -> Option<(u128, Elem)> {
    let s = *v.iter().find(|&&x| x != 0)?;
    let inv = field.inv(s).expect("nonzero");
    let key = v.iter().enumerate().fold(0u128, |acc, (i, &x)| acc | (field.mul(x, inv) as u128) << (i * bits));
    Some((key, s))
}

/// Exact counts of dual codewords of weight `0..=w_max` for `w_max <= 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowWeightSpectrum {
    pub counts: Vec<u64>,
    pub zero_columns: usize,
    pub enumerated: u64,
}

impl LowWeightSpectrum {
    /// Smallest positive weight with a nonzero count, and that count.
    pub fn min_weight(&self) -> Option<(usize, u64)> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0).map(|w| (w, self.counts[w]))
    }

    /// Report for the dual minimum distance, if it is at most `w_max`.
    pub fn report(&self) -> Option<WeightReport> {
        self.min_weight()
            .map(|(d, count)| WeightReport { d, count, method: Method::SupportSearch, enumerated: self.enumerated })
    }
}

/// Searches for dual codewords of weight at most `w_max` as dependencies among
/// at most four columns of `code`'s generator matrix.
pub fn low_weight_dual_search(code: &Code, w_max: usize) -> Result<LowWeightSpectrum> {
    if w_max > 4 {
        return Err(AgcError::WMaxUnsupported(w_max));
    }
    let cols = Columns::new(code)?;
    let qm1 = cols.field.q() as u64 - 1;
    let n_nz = cols.nonzero.len() as u64;
    let mut full = [0u64; 5];
    full[0] = 1;
    let mut enumerated = 0u64;
    if w_max >= 2 {
        full[2] = qm1 * cols.classes.values().map(|c| (c.len() * (c.len().saturating_sub(1)) / 2) as u64).sum::<u64>();
        enumerated += n_nz;
    }
    if w_max >= 3 {
        full[3] = qm1 * weight3_hits(&cols).len() as u64;
        enumerated += n_nz * n_nz.saturating_sub(1) / 2 * qm1;
    }
    if w_max >= 4 {
        let (count, examined) = weight4_count(&cols)?;
        full[4] = count;
        enumerated += examined;
    }
    // words touching zero columns: any nonzero coefficients there
    let z = code.len() - cols.nonzero.len();
    let mut counts = vec![0u64; w_max + 1];
    for (w, slot) in counts.iter_mut().enumerate() {
        *slot = (0..=w).map(|j| crate::code::binomial(z, j) as u64 * qm1.pow(j as u32) * full[w - j]).sum();
    }
    Ok(LowWeightSpectrum { counts, zero_columns: z, enumerated })
}

/// Normalized weight-3 solutions `c_i + b c_j + x c_k = 0`, `i < j < k`, as `(i, j, b, k, x)`.
fn weight3_hits(cols: &Columns) -> Vec<(usize, usize, Elem, usize, Elem)> {
    let f = &cols.field;
    let nz = &cols.nonzero;
    let mut hits: Vec<_> = (0..nz.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let i = nz[a];
            let mut local = Vec::new();
            for &j in &nz[a + 1..] {
                for b in f.nonzero() {
                    let v = cols.combo(i, b, j);
                    let Some((key, s)) = normalize(f, &v, cols.bits) else { continue };
                    let Some(class) = cols.classes.get(&key) else { continue };
                    let start = class.partition_point(|&k| k <= j);
                    for &k in &class[start..] {
                        // x c_k = -v, c_k = t * norm, v = s * norm
                        let x = f.neg(f.div(s, cols.scalar[k]).expect("nonzero"));
                        local.push((i, j, b, k, x));
                    }
                }
            }
            local
        })
        .collect();
    hits.sort_unstable();
    hits
}

/// One pair combination `c_i + e c_j = s * normalized(key)`.
#[derive(Clone, Copy)]
struct PairCombo {
    key: u128,
    i: u32,
    j: u32,
}

/// Pair combinations and the column pairs they came from.
type PairTable = (Vec<PairCombo>, Vec<(u32, u32)>);

fn pair_combos(cols: &Columns) -> Result<PairTable> {
    let f = &cols.field;
    let nz = &cols.nonzero;
    let total = (nz.len() * nz.len().saturating_sub(1) / 2) as u64 * (f.q() as u64 - 1);
    if total > max_coords() {
        return Err(AgcError::TooLarge(format!("{total} pair combinations")));
    }
    let results: Vec<PairTable> = (0..nz.len())
        .into_par_iter()
        .map(|a| {
            let i = nz[a];
            let mut combos = Vec::new();
            let mut zeros = Vec::new();
            for &j in &nz[a + 1..] {
                for e in f.nonzero() {
                    match normalize(f, &cols.combo(i, e, j), cols.bits) {
                        Some((key, _)) => combos.push(PairCombo { key, i: i as u32, j: j as u32 }),
                        None => zeros.push((i as u32, j as u32)),
                    }
                }
            }
            (combos, zeros)
        })
        .collect();
    let mut combos = Vec::with_capacity(total as usize);
    let mut zeros = Vec::new();
    for (c, z) in results {
        combos.extend(c);
        zeros.extend(z);
    }
    combos.par_sort_unstable_by_key(|c| (c.key, c.i, c.j));
    zeros.sort_unstable();
    zeros.dedup();
    Ok((combos, zeros))
}

fn groups(combos: &[PairCombo]) -> Vec<&[PairCombo]> {
    combos.chunk_by(|a, b| a.key == b.key).collect()
}

/// Number of unordered pairs of entries with four distinct indices.
fn disjoint_pairs(group: &[PairCombo]) -> u64 {
    let n = group.len() as u64;
    let mut occ: HashMap<u32, u64> = HashMap::new();
    for c in group {
        *occ.entry(c.i).or_default() += 1;
        *occ.entry(c.j).or_default() += 1;
    }
    n * n.saturating_sub(1) / 2 - occ.values().map(|&o| o * o.saturating_sub(1) / 2).sum::<u64>()
}

/// Candidate weight-4 supports from colliding disjoint pair combinations.
fn weight4_supports(cols: &Columns) -> Result<Vec<[usize; 4]>> {
    let (combos, zeros) = pair_combos(cols)?;
    let mut supports: HashSet<[usize; 4]> = groups(&combos)
        .par_iter()
        .flat_map_iter(|g| {
            let mut local = Vec::new();
            for (x, a) in g.iter().enumerate() {
                for b in &g[x + 1..] {
                    if let Some(s) = disjoint_support((a.i, a.j), (b.i, b.j)) {
                        local.push(s);
                    }
                }
            }
            local
        })
        .collect();
    for (x, a) in zeros.iter().enumerate() {
        for b in &zeros[x + 1..] {
            if let Some(s) = disjoint_support(*a, *b) {
                supports.insert(s);
            }
        }
    }
    let mut v: Vec<_> = supports.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

fn disjoint_support(a: (u32, u32), b: (u32, u32)) -> Option<[usize; 4]> {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return None;
    }
    let mut s = [a.0 as usize, a.1 as usize, b.0 as usize, b.1 as usize];
    s.sort_unstable();
    Some(s)
}

/// Normalized (`x_0 = 1`) all-nonzero kernel vectors on four columns.
fn kernel_on_support(cols: &Columns, s: &[usize; 4]) -> Vec<[Elem; 4]> {
    let f = &cols.field;
    let mut out = Vec::new();
    for b in f.nonzero() {
        for c in f.nonzero() {
            let mut v = cols.combo(s[0], b, s[1]);
            f.axpy(&mut v, c, &cols.cols[s[2]]);
            // need x c_{s3} = -v with x nonzero
            let Some((key, sv)) = normalize(f, &v, cols.bits) else { continue };
            if cols.scalar[s[3]] != 0 && normalize(f, &cols.cols[s[3]], cols.bits).map(|p| p.0) == Some(key) {
                out.push([1, b, c, f.neg(f.div(sv, cols.scalar[s[3]]).expect("nonzero"))]);
            }
        }
    }
    out
}

fn weight4_count(cols: &Columns) -> Result<(u64, u64)> {
    let qm1 = cols.field.q() as u64 - 1;
    let (combos, zeros) = pair_combos(cols)?;
    let examined = combos.len() as u64 + zeros.len() as u64;
    if cols.field.q() == 2 && zeros.is_empty() {
        // distinct nonzero columns: each weight-4 word is hit once per pair partition
        let collisions: u64 = groups(&combos).par_iter().map(|g| disjoint_pairs(g)).sum();
        debug_assert_eq!(collisions % 3, 0);
        return Ok((collisions / 3, examined));
    }
    drop(combos);
    let supports = weight4_supports(cols)?;
    let count: u64 = supports.par_iter().map(|s| kernel_on_support(cols, s).len() as u64).sum();
    Ok((count * qm1, examined))
}

/// Every dual codeword of weight exactly `w` (`1 <= w <= 4`), sorted.
pub fn dual_words_of_weight(code: &Code, w: usize) -> Result<Vec<Vec<Elem>>> {
    if w == 0 || w > 4 {
        return Err(AgcError::WMaxUnsupported(w));
    }
    let cols = Columns::new(code)?;
    let f = &cols.field;
    let n = code.len();
    if cols.nonzero.len() != n && w > 1 {
        return Err(AgcError::InvalidParams("word listing needs a generator without zero columns".into()));
    }
    let mut normalized: Vec<Vec<(usize, Elem)>> = Vec::new();
    match w {
        1 => {
            for j in (0..n).filter(|j| cols.scalar[*j] == 0) {
                normalized.push(vec![(j, 1)]);
            }
        }
        2 => {
            for class in cols.classes.values() {
                for (a, &i) in class.iter().enumerate() {
                    for &j in &class[a + 1..] {
                        let x = f.neg(f.div(cols.scalar[i], cols.scalar[j]).expect("nonzero"));
                        normalized.push(vec![(i, 1), (j, x)]);
                    }
                }
            }
        }
        3 => {
            for (i, j, b, k, x) in weight3_hits(&cols) {
                normalized.push(vec![(i, 1), (j, b), (k, x)]);
            }
        }
        _ => {
            for s in weight4_supports(&cols)? {
                for x in kernel_on_support(&cols, &s) {
                    normalized.push(s.iter().copied().zip(x).collect());
                }
            }
        }
    }
    if normalized.len() * n * (f.size() - 1) > max_coords() as usize * 4 {
        return Err(AgcError::TooLarge(format!("{} weight-{w} words", normalized.len())));
    }
    let mut out: Vec<Vec<Elem>> = normalized
        .iter()
        .flat_map(|entries| {
            f.nonzero().map(move |c| {
                let mut v = vec![0; n];
                for &(j, x) in entries {
                    v[j] = f.mul(c, x);
                }
                v
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Rank of a word list inside a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub rank: usize,
    pub generates: bool,
}

/// Checks every word lies in `code` and whether the words span it.
pub fn span_generation_test(code: &Code, words: &[Vec<Elem>]) -> Result<SpanReport> {
    let space = code.row_space();
    if let Some(bad) = words.iter().position(|w| w.len() != code.len() || !space.contains(w)) {
        return Err(AgcError::WordNotInCode(bad));
    }
    let mut span = RowSpace::new(code.field(), code.len());
    for w in words {
        span.insert(w);
        if span.rank() == code.dimension() {
            break;
        }
    }
    Ok(SpanReport { rank: span.rank(), generates: span.rank() == code.dimension() })
}

/// For a coefficient matrix `c` of rank at least 2, confirms that
/// `Ev(sum c_ij X_ij)` has the minimum weight of the first-order code while no
/// factorization `c_ij = b_i a_j` exists.
pub fn rank_counterexample_check(q: u32, ell: usize, ell_prime: usize, c: &[Elem]) -> Result<bool> {
    let field = FieldSpec::new(q)?;
    let rect = Rectangle::new(ell, ell_prime)?;
    if ell < 2 {
        return Err(AgcError::InvalidParams("need ell >= 2".into()));
    }
    if c.len() != rect.delta() || c.iter().any(|&x| x as u32 >= q) {
        return Err(AgcError::DimensionMismatch(format!("coefficient matrix must be {ell}x{ell_prime} over F_{q}")));
    }
    let rows: Vec<Vec<Elem>> = c.chunks(ell_prime).map(|r| r.to_vec()).collect();
    let r = rank(&field, ell_prime, &rows);
    if r < 2 {
        return Err(AgcError::RankTooLow(r));
    }
    let pe = PointEnumeration::new(&field, &rect)?;
    let wt = (0..pe.len()).filter(|&i| field.dot(c, &pe.point(i)) != 0).count();
    let n = pe.len();
    let min_first_order = n - n / q as usize;
    let some_minor_nonzero = (0..ell).any(|i1| {
        (i1 + 1..ell).any(|i2| {
            (0..ell_prime).any(|j1| {
                (j1 + 1..ell_prime).any(|j2| {
                    let (a, b) = (rect.slot(i1, j1), rect.slot(i2, j2));
                    let (x, y) = (rect.slot(i1, j2), rect.slot(i2, j1));
                    field.sub(field.mul(c[a], c[b]), field.mul(c[x], c[y])) != 0
                })
            })
        })
    });
    Ok(wt == min_first_order && some_minor_nonzero)
}
