//! Quadratic maps q: V → W over F₂, their polar maps and transfers.
//!
//! A map is stored as one upper-triangular matrix Uᵢ per coordinate of W,
//! with qᵢ(v) = vᵀUᵢv. The polar matrix of coordinate i is Uᵢ + Uᵢᵀ and
//! the bilinear cocycle used for the group law is c(v,v′)ᵢ = vᵀUᵢv′.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gf2::{self, BitMat, BitVec};

/// Largest dim_v for which exhaustive searches over V are attempted.
pub const MAX_ENUM_DIM: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadMap {
    dim_v: usize,
    dim_w: usize,
    coeffs: Vec<BitMat>,
    polars: Vec<BitMat>,
}

impl QuadMap {
    /// Builds a map from its coefficient matrices, one per W-coordinate.
    pub fn new(dim_v: usize, coeffs: Vec<BitMat>) -> Result<Self> {
        if dim_v > gf2::MAX_DIM {
            return Err(Error::DimensionTooLarge(dim_v));
        }
        if coeffs.len() > gf2::MAX_DIM {
            return Err(Error::DimensionTooLarge(coeffs.len()));
        }
        for (form, u) in coeffs.iter().enumerate() {
            if u.rows() != dim_v || u.cols() != dim_v {
                return Err(Error::DimensionMismatch {
                    expected: dim_v,
                    found: if u.rows() != dim_v {
                        u.rows()
                    } else {
                        u.cols()
                    },
                });
            }
            if let Some((row, col)) = u.first_below_diagonal() {
                return Err(Error::NotUpperTriangular { form, row, col });
            }
        }
        let polars = coeffs.iter().map(|u| u + &u.transpose()).collect();
        Ok(Self {
            dim_v,
            dim_w: coeffs.len(),
            coeffs,
            polars,
        })
    }

    pub fn zero(dim_v: usize, dim_w: usize) -> Self {
        Self::new(dim_v, vec![BitMat::zeros(dim_v, dim_v); dim_w]).expect("zero map is valid")
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn coeffs(&self) -> &[BitMat] {
        &self.coeffs
    }

    pub fn polar_matrices(&self) -> &[BitMat] {
        &self.polars
    }

    fn check_v(&self, v: &BitVec) -> Result<()> {
        if v.len() != self.dim_v {
            return Err(Error::DimensionMismatch {
                expected: self.dim_v,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, v: &BitVec) -> Result<BitVec> {
        self.check_v(v)?;
        Ok(self.eval(v))
    }

    pub fn polar(&self, v: &BitVec, v2: &BitVec) -> Result<BitVec> {
        self.check_v(v)?;
        self.check_v(v2)?;
        Ok(self.polar_unchecked(v, v2))
    }

    pub(crate) fn eval(&self, v: &BitVec) -> BitVec {
        self.cocycle(v, v)
    }

    pub(crate) fn polar_unchecked(&self, v: &BitVec, v2: &BitVec) -> BitVec {
        let mut out = 0u64;
        for (i, b) in self.polars.iter().enumerate() {
            out |= (b.bilinear(v, v2) as u64) << i;
        }
        BitVec::from_bits(self.dim_w, out)
    }

    /// The bilinear normal cocycle c(v,v′)ᵢ = vᵀUᵢv′, with c(v,v) = q(v).
    pub fn cocycle(&self, v: &BitVec, v2: &BitVec) -> BitVec {
        let mut out = 0u64;
        for (i, u) in self.coeffs.iter().enumerate() {
            out |= (u.bilinear(v, v2) as u64) << i;
        }
        BitVec::from_bits(self.dim_w, out)
    }

    /// The composite s∘q as a single upper-triangular matrix Σ sᵢUᵢ.
    pub fn compose(&self, s: &Functional) -> Result<BitMat> {
        if s.dim() != self.dim_w {
            return Err(Error::DimensionMismatch {
                expected: self.dim_w,
                found: s.dim(),
            });
        }
        let mut t = BitMat::zeros(self.dim_v, self.dim_v);
        for i in s.coords().support() {
            t = &t + &self.coeffs[i];
        }
        Ok(t)
    }

    /// Table of q(v) for every v ∈ V, indexed by the packed bits of v.
    pub fn value_table(&self) -> Vec<u64> {
        assert!(self.dim_v <= MAX_ENUM_DIM, "dim_v too large to tabulate");
        BitVec::all(self.dim_v)
            .map(|v| self.eval(&v).bits())
            .collect()
    }
}

/// A linear functional s: W → F₂, s(w) = Σ coordsᵢ·wᵢ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional {
    coords: BitVec,
}

impl Functional {
    pub fn new(coords: BitVec) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> BitVec {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn apply(&self, w: &BitVec) -> bool {
        self.coords.dot(w)
    }

    /// All nonzero functionals on F₂^dim in lexicographic order.
    pub fn all_nonzero(dim: usize) -> Vec<Functional> {
        let mut out: Vec<_> = BitVec::all(dim)
            .filter(|c| !c.is_zero())
            .map(Functional::new)
            .collect();
        out.sort();
        out
    }
}

/// Radical of the polar form: the common kernel of all polar matrices.
pub fn radical(q: &QuadMap) -> Vec<BitVec> {
    let d = q.dim_v();
    let rows: Vec<BitVec> = q
        .polar_matrices()
        .iter()
        .flat_map(|b| (0..d).map(move |r| b.row(r)))
        .collect();
    gf2::kernel(&BitMat::from_rows(d, &rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedValidity {
    pub regular: bool,
    pub polar_spans_w: bool,
}

impl SeedValidity {
    pub fn is_valid(&self) -> bool {
        self.regular && self.polar_spans_w
    }
}

/// Checks the two conditions under which q is the map of a special 2-group.
pub fn is_valid_group_seed(q: &QuadMap) -> SeedValidity {
    let d = q.dim_v();
    let mut images = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            images.push(q.polar_unchecked(&BitVec::unit(d, i), &BitVec::unit(d, j)));
        }
    }
    SeedValidity {
        regular: radical(q).is_empty(),
        polar_spans_w: gf2::rank_of(&images, q.dim_w()) == q.dim_w(),
    }
}

/// True iff every v ∈ V has some v′ with q(v′) = q(v + v′).
pub fn is_real(q: &QuadMap) -> bool {
    is_real_with(q, Execution::default())
}

pub fn is_real_with(q: &QuadMap, exec: Execution) -> bool {
    let table = q.value_table();
    let n = table.len() as u64;
    exec::all(exec, n, |v| {
        (0..n).any(|v2| table[v2 as usize] == table[(v ^ v2) as usize])
    })
}

/// Everything derived from a nonzero functional s: the radical of the
/// polar form of s∘q, a complement section, and the regular form q_s on
/// the quotient V_s = V / rad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub s: Functional,
    pub radical_basis: Vec<BitVec>,
    pub section: Vec<BitVec>,
    pub qs: QuadMap,
    pub k: usize,
    pub l: usize,
    /// Rows of the inverse change of basis: first k give radical
    /// coordinates, the remaining 2l give the projection ε_s.
    coords: BitMat,
    polar: BitMat,
}

impl TransferReport {
    /// ε_s(v) in the coordinates of the section basis.
    pub fn project(&self, v: &BitVec) -> BitVec {
        let y = self.coords.mul_vec(v);
        BitVec::from_bits(2 * self.l, y.bits() >> self.k)
    }

    /// Coordinates of the radical component of v on `radical_basis`.
    pub fn radical_coordinates(&self, v: &BitVec) -> BitVec {
        let y = self.coords.mul_vec(v);
        BitVec::from_bits(self.k, y.bits())
    }

    pub fn in_radical(&self, v: &BitVec) -> bool {
        self.polar.mul_vec(v).is_zero()
    }

    /// Matrix of ε_s (2l × d).
    pub fn projection_matrix(&self) -> BitMat {
        let rows: Vec<BitVec> = (self.k..self.k + 2 * self.l)
            .map(|r| self.coords.row(r))
            .collect();
        BitMat::from_rows(self.coords.cols(), &rows)
    }

    /// Number of non-linear characters attached to s.
    pub fn character_count(&self) -> usize {
        1 << self.k
    }

    pub fn degree(&self) -> u64 {
        1 << self.l
    }
}

pub fn transfer(q: &QuadMap, s: &Functional) -> Result<TransferReport> {
    if s.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    let d = q.dim_v();
    let t = q.compose(s)?;
    let polar = &t + &t.transpose();
    let radical_basis = gf2::kernel(&polar);
    if let Some(r) = radical_basis.iter().find(|r| t.bilinear(r, r)) {
        return Err(Error::RadicalNotIsotropic(*r));
    }
    let section = gf2::extend_to_basis(&radical_basis, d)?;
    let k = radical_basis.len();
    let n = section.len();
    debug_assert_eq!(n % 2, 0, "alternating regular forms have even rank");

    let mut u = BitMat::zeros(n, n);
    for a in 0..n {
        u.set(a, a, t.bilinear(&section[a], &section[a]));
        for b in a + 1..n {
            u.set(a, b, polar.bilinear(&section[a], &section[b]));
        }
    }
    let qs = QuadMap::new(n, vec![u])?;

    let basis: Vec<BitVec> = radical_basis.iter().chain(&section).copied().collect();
    let coords = BitMat::from_cols(d, &basis)
        .inverse()
        .expect("radical plus section is a basis");

    Ok(TransferReport {
        s: *s,
        radical_basis,
        section,
        qs,
        k,
        l: n / 2,
        coords,
        polar,
    })
}

/// Transfers for every nonzero functional, in lexicographic order of s.
pub fn all_transfers(q: &QuadMap) -> Result<Vec<TransferReport>> {
    all_transfers_with(q, Execution::default())
}

pub fn all_transfers_with(q: &QuadMap, exec: Execution) -> Result<Vec<TransferReport>> {
    let functionals = Functional::all_nonzero(q.dim_w());
    exec::map(exec, &functionals, |s| transfer(q, s))
        .into_iter()
        .collect()
}
