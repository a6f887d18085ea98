//! Exact linear algebra over the two-element field.
//!
//! Vectors are packed into a single `u64` (coordinate `i` is bit `i`), so
//! every space handled here has dimension at most 64. Matrices store one
//! packed row per entry. All elimination routines pick pivot columns
//! left to right, which makes kernels, solutions and complements
//! reproducible bit for bit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector in F₂^len.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    bits: u64,
    len: usize,
}

impl BitVec {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_DIM, "dimension {len} exceeds {MAX_DIM}");
        Self { bits: 0, len }
    }

    /// The standard basis vector with a single 1 at coordinate `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len, "unit index {i} out of range for length {len}");
        Self { bits: 1 << i, len }
    }

    /// Builds a vector from packed bits; bits at or above `len` are discarded.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_DIM, "dimension {len} exceeds {MAX_DIM}");
        Self {
            bits: bits & mask(len),
            len,
        }
    }

    pub fn from_slice(coords: &[u8]) -> Self {
        let mut v = Self::zero(coords.len());
        for (i, &c) in coords.iter().enumerate() {
            if c & 1 == 1 {
                v.bits |= 1 << i;
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, first character = coordinate 0.
    pub fn parse_bits(s: &str) -> Option<Self> {
        if s.len() > MAX_DIM {
            return None;
        }
        let mut v = Self::zero(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.bits |= 1 << i,
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard inner product Σ xᵢyᵢ mod 2.
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Every vector of F₂^len, in increasing packed-integer order.
    pub fn all(len: usize) -> impl Iterator<Item = BitVec> {
        assert!(len < MAX_DIM, "cannot enumerate F2^{len}");
        (0..1u64 << len).map(move |bits| BitVec { bits, len })
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    fn lex_key(&self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len)
        }
    }
}

/// Lexicographic order on coordinate tuples (coordinate 0 most significant).
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for BitVec {
    type Output = BitVec;

    fn add(self, rhs: BitVec) -> BitVec {
        debug_assert_eq!(self.len, rhs.len);
        BitVec {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl AddAssign for BitVec {
    fn add_assign(&mut self, rhs: BitVec) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// A dense matrix over F₂ with at most 64 columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_DIM, "column count {cols} exceeds {MAX_DIM}");
        Self {
            rows,
            cols,
            data: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = 1 << i;
        }
        m
    }

    /// Stacks the given vectors as rows.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row {r} has the wrong length");
            m.data[r] = v.bits();
        }
        m
    }

    /// Places the given vectors as columns.
    pub fn from_cols(rows: usize, cols: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column {c} has the wrong length");
            for r in v.support() {
                m.data[r] |= 1 << c;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r] >> c) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        if value {
            self.data[r] |= 1 << c;
        } else {
            self.data[r] &= !(1 << c);
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r] ^= 1 << c;
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_bits(self.cols, self.data[r])
    }

    pub fn col(&self, c: usize) -> BitVec {
        let mut v = BitVec::zero(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn transpose(&self) -> BitMat {
        let mut t = BitMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVec::from_bits(self.cols, self.data[r]).support() {
                t.data[c] |= 1 << r;
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(
            x.len(),
            self.cols,
            "vector length does not match column count"
        );
        let mut out = 0u64;
        for (r, &row) in self.data.iter().enumerate() {
            out |= (((row & x.bits()).count_ones() & 1) as u64) << r;
        }
        BitVec::from_bits(self.rows, out)
    }

    pub fn mul(&self, other: &BitMat) -> BitMat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = BitMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for k in BitVec::from_bits(self.cols, self.data[r]).support() {
                acc ^= other.data[k];
            }
            out.data[r] = acc;
        }
        out
    }

    /// The bilinear form xᵀ·A·y.
    pub fn bilinear(&self, x: &BitVec, y: &BitVec) -> bool {
        x.dot(&self.mul_vec(y))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.first_below_diagonal().is_none()
    }

    pub(crate) fn first_below_diagonal(&self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            let below = self.data[r] & mask(r.min(self.cols));
            if below != 0 {
                return Some((r, below.trailing_zeros() as usize));
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Strictly upper-triangular part (diagonal and below cleared).
    pub fn strict_upper(&self) -> BitMat {
        let mut out = self.clone();
        for r in 0..self.rows {
            out.data[r] &= !mask((r + 1).min(self.cols));
        }
        out
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row, pivots chosen left to right.
    pub fn rref(&self) -> (BitMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..m.rows).find(|&r| (m.data[r] >> c) & 1 == 1) else {
                continue;
            };
            m.data.swap(next, p);
            let pivot_row = m.data[next];
            for r in 0..m.rows {
                if r != next && (m.data[r] >> c) & 1 == 1 {
                    m.data[r] ^= pivot_row;
                }
            }
            pivots.push(c);
            next += 1;
            if next == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<BitMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut out = BitMat::zeros(n, n);
        for c in 0..n {
            let x = solve(self, &BitVec::unit(n, c)).ok()?;
            for r in x.support() {
                out.data[r] |= 1 << c;
            }
        }
        Some(out)
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|r| self.row(r).to_bitstring()).collect();
        write!(
            f,
            "BitMat{{{}x{}: [{}]}}",
            self.rows,
            self.cols,
            rows.join(",")
        )
    }
}

impl Add for &BitMat {
    type Output = BitMat;

    fn add(self, rhs: &BitMat) -> BitMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        BitMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }
}

/// Basis of the null space of `a`, one vector per free column (ascending),
/// with that free variable set to 1 and every other free variable 0.
pub fn kernel(a: &BitMat) -> Vec<BitVec> {
    let (r, pivots) = a.rref();
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = BitVec::unit(n, f);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

pub fn rank_of(vectors: &[BitVec], dim: usize) -> usize {
    BitMat::from_rows(dim, vectors).rank()
}

pub fn is_independent(vectors: &[BitVec], dim: usize) -> bool {
    rank_of(vectors, dim) == vectors.len()
}

/// Standard basis vectors, taken greedily in index order, that complete an
/// independent family to a basis of F₂^dim.
pub fn extend_to_basis(partial: &[BitVec], dim: usize) -> Result<Vec<BitVec>> {
    for v in partial {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    if !is_independent(partial, dim) {
        return Err(Error::DependentInput);
    }
    let mut echelon = Echelon::new(dim);
    for v in partial {
        echelon.insert(*v);
    }
    let mut complement = Vec::new();
    for i in 0..dim {
        if echelon.rank() == dim {
            break;
        }
        let e = BitVec::unit(dim, i);
        if echelon.insert(e) {
            complement.push(e);
        }
    }
    Ok(complement)
}

/// Some `x` with `a·x = b`; free variables are set to zero.
pub fn solve(a: &BitMat, b: &BitVec) -> Result<BitVec> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    // Eliminate on the augmented matrix [A | b]; b sits in column `cols`.
    let n = a.cols();
    if n >= MAX_DIM {
        return Err(Error::DimensionTooLarge(n + 1));
    }
    let mut aug = BitMat::zeros(a.rows(), n + 1);
    for r in 0..a.rows() {
        aug.data[r] = a.data[r] | ((b.get(r) as u64) << n);
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Err(Error::NoSolution);
    }
    let mut x = BitVec::zero(n);
    for (row, &p) in pivots.iter().enumerate() {
        if red.get(row, n) {
            x.set(p, true);
        }
    }
    Ok(x)
}

/// Incremental echelon basis used for independence tests and coset reduction.
///
/// Each stored vector has a distinct leading coordinate and is zero at the
/// leading coordinates of all the others, so `reduce` returns the
/// lexicographically smallest member of `x + span`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<BitVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn from_vectors(dim: usize, vectors: &[BitVec]) -> Self {
        let mut e = Self::new(dim);
        for v in vectors {
            e.insert(*v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reduce(&self, x: BitVec) -> BitVec {
        let mut x = x;
        for r in &self.rows {
            let lead = r.leading().expect("echelon rows are nonzero");
            if x.get(lead) {
                x += *r;
            }
        }
        x
    }

    pub fn contains(&self, x: BitVec) -> bool {
        self.reduce(x).is_zero()
    }

    /// Adds `x` to the span; returns false if it was already there.
    pub fn insert(&mut self, x: BitVec) -> bool {
        let x = self.reduce(x);
        let Some(lead) = x.leading() else {
            return false;
        };
        for r in &mut self.rows {
            if r.get(lead) {
                *r += x;
            }
        }
        self.rows.push(x);
        self.rows.sort_by_key(|r| r.leading());
        true
    }
}
