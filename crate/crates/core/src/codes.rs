//! Reed-Muller codes over the index set Omega = F_2^d, together with the
//! combinatorics this crate needs around them: affine subspaces, levels,
//! defect, cubi sums and cores, translations, and quotient codes.
//!
//! A point of Omega is an integer in `0..2^d` whose bit `i` is the
//! coordinate x_{i+1}.  A binary word is a subset of Omega stored as a
//! 2^d-bit mask; addition of words is the boolean sum (symmetric
//! difference).  RM(k,d) is spanned by the characteristic functions of
//! affine subspaces of codimension at most k, with RM(p,d) = 0 for p <= -1
//! and RM(p,d) the full power set for p >= d.

use crate::error::{Error, Result};

pub const MAX_D: u32 = 9;

/// A subset of Omega = F_2^d stored as a 2^d-bit mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    d: u32,
    limbs: Vec<u64>,
}

fn limb_count(d: u32) -> usize {
    (1usize << d).div_ceil(64)
}

impl BitWord {
    pub fn empty(d: u32) -> Self {
        assert!(d <= MAX_D);
        BitWord { d, limbs: vec![0; limb_count(d)] }
    }

    /// The full index set Omega.
    pub fn omega(d: u32) -> Self {
        let mut w = BitWord::empty(d);
        for p in 0..w.len() {
            w.set(p as u32, true);
        }
        w
    }

    pub fn singleton(d: u32, p: u32) -> Self {
        let mut w = BitWord::empty(d);
        w.set(p, true);
        w
    }

    pub fn from_points(d: u32, points: &[u32]) -> Self {
        let mut w = BitWord::empty(d);
        for &p in points {
            w.set(p, true);
        }
        w
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Length 2^d of the word.
    pub fn len(&self) -> usize {
        1usize << self.d
    }

    pub fn is_empty(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn get(&self, p: u32) -> bool {
        let p = p as usize;
        debug_assert!(p < self.len());
        (self.limbs[p / 64] >> (p % 64)) & 1 == 1
    }

    pub fn set(&mut self, p: u32, v: bool) {
        let p = p as usize;
        debug_assert!(p < self.len());
        if v {
            self.limbs[p / 64] |= 1 << (p % 64);
        } else {
            self.limbs[p / 64] &= !(1 << (p % 64));
        }
    }

    pub fn weight(&self) -> u32 {
        self.limbs.iter().map(|l| l.count_ones()).sum()
    }

    /// Boolean sum (symmetric difference).
    pub fn xor(&self, other: &BitWord) -> BitWord {
        assert_eq!(self.d, other.d);
        BitWord {
            d: self.d,
            limbs: self.limbs.iter().zip(&other.limbs).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn xor_in_place(&mut self, other: &BitWord) {
        assert_eq!(self.d, other.d);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &BitWord) -> BitWord {
        assert_eq!(self.d, other.d);
        BitWord {
            d: self.d,
            limbs: self.limbs.iter().zip(&other.limbs).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn complement(&self) -> BitWord {
        self.xor(&BitWord::omega(self.d))
    }

    /// Parity of |self ∩ other|.
    pub fn even_intersection(&self, other: &BitWord) -> bool {
        self.and(other).weight() % 2 == 0
    }

    pub fn points(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(|&p| self.get(p))
    }

    /// Image of the word under translation by `c`:  {x + c : x in self}.
    pub fn translate(&self, c: u32) -> BitWord {
        let mut out = BitWord::empty(self.d);
        for p in self.points() {
            out.set(p ^ c, true);
        }
        out
    }

    /// Preimage {p : phi(p) in self} under a point map `phi`.
    pub fn preimage<F: Fn(u32) -> u32>(&self, phi: F) -> BitWord {
        let mut out = BitWord::empty(self.d);
        for p in 0..self.len() as u32 {
            if self.get(phi(p)) {
                out.set(p, true);
            }
        }
        out
    }

    /// Lowest set bit index, if any.
    pub fn leading(&self) -> Option<u32> {
        for (i, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return Some((i * 64) as u32 + l.trailing_zeros());
            }
        }
        None
    }

    /// Lowercase hex encoding, 2^d/4 digits (minimum one), least
    /// significant bit = point 0.
    pub fn to_hex(&self) -> String {
        let digits = (self.len().div_ceil(4)).max(1);
        let mut s = String::with_capacity(digits);
        for i in (0..digits).rev() {
            let nib = (self.limbs[i / 16] >> ((i % 16) * 4)) & 0xf;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(d: u32, s: &str) -> Result<BitWord> {
        let digits = ((1usize << d).div_ceil(4)).max(1);
        if s.len() != digits {
            return Err(Error::Parameter(format!(
                "hex word for d={} must have {} digits, got {}",
                d,
                digits,
                s.len()
            )));
        }
        let mut w = BitWord::empty(d);
        for (i, ch) in s.chars().rev().enumerate() {
            let nib = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parameter(format!("invalid hex digit {ch:?}")))?
                as u64;
            w.limbs[i / 16] |= nib << ((i % 16) * 4);
        }
        let extra = w.len() % 64;
        if extra != 0 && (w.limbs[w.limbs.len() - 1] >> extra) != 0 {
            return Err(Error::Parameter("hex word has bits beyond 2^d".into()));
        }
        Ok(w)
    }
}

impl std::fmt::Debug for BitWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitWord(d={}, {})", self.d, self.to_hex())
    }
}

/// Reduced echelon basis of point masks in F_2^d (points, not words),
/// sorted by descending pivot bit (= descending value).
pub fn point_echelon(d: u32, gens: &[u32]) -> Vec<u32> {
    let mask = (1u32 << d) - 1;
    let mut basis: Vec<u32> = Vec::new();
    for &g in gens {
        let v = point_reduce(&basis, g & mask);
        if v != 0 {
            let pos = basis.iter().position(|&b| b < v).unwrap_or(basis.len());
            basis.insert(pos, v);
        }
    }
    // Full reduction for a canonical basis.
    for i in 0..basis.len() {
        let pivot = 31 - basis[i].leading_zeros();
        for j in 0..i {
            if (basis[j] >> pivot) & 1 == 1 {
                basis[j] ^= basis[i];
            }
        }
    }
    basis
}

/// Reduce a point by a descending-pivot echelon basis (canonical coset
/// representative).
pub fn point_reduce(basis: &[u32], mut p: u32) -> u32 {
    for &b in basis {
        let pivot = 31 - b.leading_zeros();
        if (p >> pivot) & 1 == 1 {
            p ^= b;
        }
    }
    p
}

/// An affine subspace of Omega: basepoint + span(directions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    d: u32,
    basepoint: u32,
    directions: Vec<u32>,
}

impl AffineSubspace {
    pub fn new(d: u32, basepoint: u32, directions: &[u32]) -> Self {
        let dirs = point_echelon(d, directions);
        let basepoint = point_reduce(&dirs, basepoint);
        AffineSubspace { d, basepoint, directions: dirs }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> u32 {
        self.directions.len() as u32
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    pub fn directions(&self) -> &[u32] {
        &self.directions
    }

    pub fn contains(&self, p: u32) -> bool {
        point_reduce(&self.directions, p ^ self.basepoint) == 0
    }

    /// Is this a linear (through-origin) subspace?
    pub fn is_linear(&self) -> bool {
        self.basepoint == 0
    }

    pub fn to_word(&self) -> BitWord {
        let mut w = BitWord::empty(self.d);
        let n = self.directions.len();
        let mut p = self.basepoint;
        // Gray-code walk over the span.
        w.set(p, true);
        for i in 1u64..(1u64 << n) {
            p ^= self.directions[i.trailing_zeros() as usize];
            w.set(p, true);
        }
        w
    }

    pub fn points(&self) -> Vec<u32> {
        self.to_word().points().collect()
    }
}

/// Reduced row echelon basis for words of length 2^d; pivot is the lowest
/// set bit of each row, rows fully reduced against each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitEchelon {
    d: u32,
    rows: Vec<BitWord>,
    pivots: Vec<u32>,
}

impl BitEchelon {
    pub fn new(d: u32) -> Self {
        BitEchelon { d, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    fn reduce(&self, w: &BitWord) -> BitWord {
        // Rows are fully reduced (RREF), so one pass over the pivots clears
        // every pivot position without reintroducing earlier ones.
        let mut w = w.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w.get(p) {
                w.xor_in_place(&self.rows[i]);
            }
        }
        w
    }

    /// Insert a word; returns true if the rank grew.
    pub fn insert(&mut self, w: &BitWord) -> bool {
        let w = self.reduce(w);
        let Some(j) = w.leading() else { return false };
        let pos = self.pivots.binary_search(&j).unwrap_err();
        // Keep earlier rows reduced against the new pivot.
        for row in self.rows.iter_mut() {
            if row.get(j) {
                row.xor_in_place(&w);
            }
        }
        self.pivots.insert(pos, j);
        self.rows.insert(pos, w);
        true
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        self.reduce(w).is_empty()
    }

    /// Iterate the full span (2^rank words, Gray-code order; includes the
    /// zero word first).  Only sensible for small ranks.
    pub fn span_iter(&self) -> impl Iterator<Item = BitWord> + '_ {
        let n = self.rows.len();
        assert!(n <= 30, "span too large to iterate");
        let mut cur = BitWord::empty(self.d);
        (0u64..1 << n).map(move |i| {
            if i > 0 {
                cur.xor_in_place(&self.rows[i.trailing_zeros() as usize]);
            }
            cur.clone()
        })
    }
}

/// A binary code of length 2^d given by a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    d: u32,
    order: i32,
    ech: BitEchelon,
}

impl Code {
    /// The Reed-Muller code RM(k,d) for any integer k (zero code for k < 0,
    /// full power set for k >= d).
    pub fn reed_muller(k: i32, d: u32) -> Code {
        assert!(d <= MAX_D, "d={} beyond supported range", d);
        let mut ech = BitEchelon::new(d);
        if k >= 0 {
            let kk = (k as u32).min(d);
            // Monomial words: for S a set of coordinates with |S| <= k, the
            // affine subspace { x : x_i = 1 for i in S } has codimension |S|.
            for s in 0u32..1 << d {
                if s.count_ones() <= kk {
                    let mut w = BitWord::empty(d);
                    for p in 0..(1u32 << d) {
                        if p & s == s {
                            w.set(p, true);
                        }
                    }
                    ech.insert(&w);
                }
            }
        }
        Code { d, order: k, ech }
    }

    pub fn from_words(d: u32, order: i32, words: &[BitWord]) -> Code {
        let mut ech = BitEchelon::new(d);
        for w in words {
            ech.insert(w);
        }
        Code { d, order, ech }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn basis(&self) -> &[BitWord] {
        self.ech.rows()
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        self.ech.contains(w)
    }

    /// Same span (echelon bases are canonical, so this is basis equality).
    pub fn same_span(&self, other: &Code) -> bool {
        self.ech == other.ech
    }

    /// Iterate all 2^dim codewords (small codes only).
    pub fn words_iter(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.ech.span_iter()
    }

    /// Orthogonal complement with respect to the intersection-parity form,
    /// computed by null-space construction (independent of `reed_muller`).
    pub fn orthogonal_complement(&self) -> Code {
        let n = self.ech.d;
        let len = 1usize << n;
        let rows = self.ech.rows();
        let pivots = &self.ech.pivots;
        let mut words = Vec::new();
        for f in 0..len as u32 {
            if pivots.binary_search(&f).is_ok() {
                continue;
            }
            // x_f = 1, other free coordinates 0; pivot coordinates follow
            // from the constraints <x, row_i> = 0.
            let mut w = BitWord::singleton(n, f);
            for (i, row) in rows.iter().enumerate() {
                if row.get(f) {
                    w.set(pivots[i], true);
                }
            }
            words.push(w);
        }
        Code::from_words(n, self.d as i32 - 1 - self.order, &words)
    }

    /// Exact minimum weight by iterating the whole span; requires dim <= 24.
    pub fn min_weight_exhaustive(&self) -> Option<u32> {
        if self.dim() == 0 {
            return None;
        }
        assert!(self.dim() <= 24, "span too large for exhaustive minimum weight");
        let mut min = u32::MAX;
        let n = self.dim();
        let mut cur = BitWord::empty(self.d);
        for i in 1u64..1 << n {
            cur.xor_in_place(&self.ech.rows[i.trailing_zeros() as usize]);
            let w = cur.weight();
            if w > 0 && w < min {
                min = w;
            }
        }
        Some(min)
    }

    /// Minimum weight over `samples` random nonzero codewords.
    pub fn min_weight_sampled<R: rand::Rng>(&self, rng: &mut R, samples: usize) -> Option<u32> {
        if self.dim() == 0 {
            return None;
        }
        let mut min = u32::MAX;
        for _ in 0..samples {
            let mut w = BitWord::empty(self.d);
            let mut nonzero = false;
            for row in self.ech.rows() {
                if rng.random::<bool>() {
                    w.xor_in_place(row);
                    nonzero = true;
                }
            }
            if !nonzero || w.is_empty() {
                continue;
            }
            min = min.min(w.weight());
        }
        (min != u32::MAX).then_some(min)
    }

    pub fn random_word<R: rand::Rng>(&self, rng: &mut R) -> BitWord {
        let mut w = BitWord::empty(self.d);
        for row in self.ech.rows() {
            if rng.random::<bool>() {
                w.xor_in_place(row);
            }
        }
        w
    }
}

/// All Reed-Muller codes RM(0,d)..RM(d,d) for one d, for membership chains.
#[derive(Clone)]
pub struct RmFamily {
    d: u32,
    codes: Vec<Code>,
}

impl RmFamily {
    pub fn new(d: u32) -> RmFamily {
        RmFamily { d, codes: (0..=d as i32).map(|k| Code::reed_muller(k, d)).collect() }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn code(&self, k: i32) -> &Code {
        assert!((0..=self.d as i32).contains(&k));
        &self.codes[k as usize]
    }

    /// Membership in RM(j,d) for any integer j.
    pub fn contains(&self, j: i32, w: &BitWord) -> bool {
        if j < 0 {
            w.is_empty()
        } else if j >= self.d as i32 {
            true
        } else {
            self.codes[j as usize].contains(w)
        }
    }

    /// (RM-level, BW-level) of a nonzero word:
    /// RM-level = max{ i : w in RM(d-i,d) }, BW-level = max{ m : w in RM(d-2m,d) }.
    pub fn word_levels(&self, w: &BitWord) -> Result<(u32, u32)> {
        if w.is_empty() {
            return Err(Error::ZeroWord);
        }
        let mut rm = 0;
        for i in 0..=self.d as i32 {
            if self.contains(self.d as i32 - i, w) {
                rm = i;
            } else {
                break;
            }
        }
        Ok((rm as u32, rm as u32 / 2))
    }

    /// Defect of a word in RM(2,d), by exhausting the coset w + RM(1,d):
    /// the unique k in 1..=d/2 with a coset member of weight
    /// 2^(d-1) - 2^(d-k-1), or 0 if there is none.
    pub fn defect(&self, w: &BitWord) -> Result<u32> {
        if !self.contains(2, w) {
            return Err(Error::Membership(format!("RM(2,{})", self.d)));
        }
        let d = self.d;
        let rm1 = self.code(1.min(d as i32));
        let mut found = 0u32;
        for coset_word in rm1.ech.span_iter() {
            let weight = coset_word.xor(w).weight();
            for k in 1..=d / 2 {
                if u64::from(weight) == (1u64 << (d - 1)) - (1u64 << (d - k - 1)) {
                    debug_assert!(found == 0 || found == k);
                    found = k;
                }
            }
        }
        Ok(found)
    }
}

/// A cubi sum: a short defect-k codeword written as the boolean sum of k
/// affine codimension-2 subspaces, together with its core.
#[derive(Clone, Debug)]
pub struct CubiDecomposition {
    pub parts: Vec<AffineSubspace>,
    pub word: BitWord,
    pub core: AffineSubspace,
}

/// The canonical cubi sum on linear parts S_i = { x : x_{2i-1} = x_{2i} = 0 }.
/// Its core { x : x_1 = ... = x_{2k} = 0 } is a subgroup of Omega.
pub fn cubi_codeword(d: u32, k: u32) -> Result<CubiDecomposition> {
    if d < 1 || d > MAX_D {
        return Err(Error::SizeRange(d, 1, MAX_D));
    }
    if k < 1 || 2 * k > d {
        return Err(Error::Parameter(format!("cubi sum needs 1 <= k <= d/2, got k={k}, d={d}")));
    }
    let all_dirs: Vec<u32> = (0..d).map(|i| 1 << i).collect();
    let mut word = BitWord::empty(d);
    let mut parts = Vec::new();
    for i in 0..k {
        let dirs: Vec<u32> = (0..d).filter(|&j| j != 2 * i && j != 2 * i + 1).map(|j| 1 << j).collect();
        let part = AffineSubspace::new(d, 0, &dirs);
        word.xor_in_place(&part.to_word());
        parts.push(part);
    }
    let core_dirs: Vec<u32> = all_dirs[2 * k as usize..].to_vec();
    let core = AffineSubspace::new(d, 0, &core_dirs);
    debug_assert_eq!(u64::from(word.weight()), (1u64 << (d - 1)) - (1u64 << (d - k - 1)));
    Ok(CubiDecomposition { parts, word, core })
}

/// Image of `w` under the translation by `c`.
pub fn translate_word(w: &BitWord, c: u32) -> BitWord {
    w.translate(c)
}

/// `w(tau_c - 1) = w + w tau_c`.
pub fn translation_difference(w: &BitWord, c: u32) -> BitWord {
    w.xor(&w.translate(c))
}

/// Quotient of a word by a linear subspace Gamma of Omega.  `w` must be a
/// union of cosets of Gamma; the result lives on Omega / Gamma, a space of
/// dimension d - dim Gamma, coordinatized by the non-pivot bits of Gamma's
/// echelon basis.
pub fn quotient_word(w: &BitWord, gamma: &[u32]) -> Result<BitWord> {
    let d = w.d();
    let basis = point_echelon(d, gamma);
    let gdim = basis.len() as u32;
    for &b in &basis {
        if w.translate(b) != *w {
            return Err(Error::Saturation);
        }
    }
    let pivot_bits: Vec<u32> = basis.iter().map(|&b| 31 - b.leading_zeros()).collect();
    let free_bits: Vec<u32> = (0..d).filter(|b| !pivot_bits.contains(b)).collect();
    let mut out = BitWord::empty(d - gdim);
    for p in w.points() {
        if point_reduce(&basis, p) == p {
            let mut q = 0u32;
            for (new_bit, &old_bit) in free_bits.iter().enumerate() {
                if (p >> old_bit) & 1 == 1 {
                    q |= 1 << new_bit;
                }
            }
            out.set(q, true);
        }
    }
    Ok(out)
}

/// All linear subspaces of F_2^d of dimension r, as canonical echelon bases.
pub fn linear_subspaces(d: u32, r: u32) -> Vec<Vec<u32>> {
    assert!(r <= d && d <= MAX_D);
    if r == 0 {
        return vec![vec![]];
    }
    // Enumerate reduced row echelon forms: choose pivot bits p_1 > ... > p_r
    // (using the highest set bit as pivot), then free entries below.
    let mut out = Vec::new();
    let pivots_iter = combinations(d, r);
    for pivots in pivots_iter {
        // pivots sorted ascending; row i uses pivot pivots[r-1-i] (descending).
        let pv: Vec<u32> = pivots.iter().rev().copied().collect();
        // Free positions for row i: bits below pv[i] that are not pivots.
        let free: Vec<Vec<u32>> = pv
            .iter()
            .map(|&p| (0..p).filter(|b| !pv.contains(b)).collect())
            .collect();
        let total: u32 = free.iter().map(|f| f.len() as u32).sum();
        for mask in 0u64..1 << total {
            let mut rows = Vec::with_capacity(r as usize);
            let mut bit = 0;
            for i in 0..r as usize {
                let mut row = 1u32 << pv[i];
                for &f in &free[i] {
                    if (mask >> bit) & 1 == 1 {
                        row |= 1 << f;
                    }
                    bit += 1;
                }
                rows.push(row);
            }
            out.push(rows);
        }
    }
    out
}

/// All affine subspaces of F_2^d of dimension r.
pub fn affine_subspaces(d: u32, r: u32) -> Vec<AffineSubspace> {
    let mut out = Vec::new();
    for basis in linear_subspaces(d, r) {
        for p in 0..1u32 << d {
            if point_reduce(&basis, p) == p {
                out.push(AffineSubspace::new(d, p, &basis));
            }
        }
    }
    out
}

fn combinations(n: u32, r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r as usize);
    fn rec(n: u32, r: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r as usize {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, r, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

/// Binomial sum dimension of RM(k,d): sum_{i<=k} C(d,i).
pub fn rm_dimension(k: i32, d: u32) -> usize {
    if k < 0 {
        return 0;
    }
    let mut dim = 0usize;
    let mut c = 1usize;
    for i in 0..=(k as u32).min(d) {
        if i > 0 {
            c = c * (d - i + 1) as usize / i as usize;
        }
        dim += c;
    }
    dim
}
