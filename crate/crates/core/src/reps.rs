//! Explicit irreducible matrix representations.
//!
//! The extraspecial quotient G_s gets its unique faithful representation
//! as a tensor product of 2×2 blocks, one block per hyperbolic pair of q_s.
//! Each non-linear representation of G is that representation composed
//! with a surjection f_{s,i}: G → G_s,
//!
//!   f_{s,i}(v, w) = (ε_s(v), s(w) + λ(v) + h_i(v)),
//!
//! where λ is a quadratic correction making the two cocycles on V agree and
//! h_i is the linear functional with bit pattern i − 1 on the radical basis.
//! Entries are exact Gaussian integers.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex;

use crate::chartab::ConjClass;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::formclass::{classify, FormClassification, PairType};
use crate::gf2::{BitMat, BitVec};
use crate::group::{GroupCtx, GroupElement};
use crate::quadmap::{Functional, QuadMap, TransferReport};

pub type Gauss = Complex<i64>;

/// Square matrix over the Gaussian integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMat {
    n: usize,
    data: Vec<Gauss>,
}

impl GaussMat {
    pub fn from_rows(rows: &[&[Gauss]]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Gauss::new(0, 0); n * n];
        for i in 0..n {
            data[i * n + i] = Gauss::new(1, 0);
        }
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Gauss {
        self.data[r * self.n + c]
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut data = vec![Gauss::new(0, 0); n * n];
        for a in 0..self.n {
            for b in 0..self.n {
                let x = self.get(a, b);
                if x == Gauss::new(0, 0) {
                    continue;
                }
                for c in 0..other.n {
                    for d in 0..other.n {
                        data[(a * other.n + c) * n + b * other.n + d] = x * other.get(c, d);
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn trace(&self) -> Gauss {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Trace as an integer; None if it has an imaginary part.
    pub fn real_trace(&self) -> Option<i64> {
        let t = self.trace();
        (t.im == 0).then_some(t.re)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

impl Mul for &GaussMat {
    type Output = GaussMat;

    fn mul(self, rhs: &GaussMat) -> GaussMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut data = vec![Gauss::new(0, 0); n * n];
        for r in 0..n {
            for k in 0..n {
                let x = self.data[r * n + k];
                if x == Gauss::new(0, 0) {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += x * rhs.data[k * n + c];
                }
            }
        }
        GaussMat { n, data }
    }
}

impl fmt::Debug for GaussMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|c| format_gauss(self.get(r, c))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `0`, `1`, `-i`, `2+3i`, …
pub fn format_gauss(z: Gauss) -> String {
    match (z.re, z.im) {
        (re, 0) => re.to_string(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (0, im) => format!("{im}i"),
        (re, im) if im > 0 => format!("{re}+{im}i"),
        (re, im) => format!("{re}{im}i"),
    }
}

fn g(re: i64, im: i64) -> Gauss {
    Gauss::new(re, im)
}

/// ρ(a), ρ(b) for D₄ = ⟨a, b | a⁴ = b² = 1, bab⁻¹ = a⁻¹⟩.
pub fn dihedral_generators() -> (GaussMat, GaussMat) {
    (
        GaussMat::from_rows(&[&[g(0, 0), g(1, 0)], &[g(-1, 0), g(0, 0)]]),
        GaussMat::from_rows(&[&[g(1, 0), g(0, 0)], &[g(0, 0), g(-1, 0)]]),
    )
}

/// σ(c), σ(d) for Q₂ = ⟨c, d | c⁴ = 1, d² = c², dcd⁻¹ = c⁻¹⟩.
pub fn quaternion_generators() -> (GaussMat, GaussMat) {
    (
        GaussMat::from_rows(&[&[g(0, 0), g(1, 0)], &[g(-1, 0), g(0, 0)]]),
        GaussMat::from_rows(&[&[g(0, 1), g(0, 0)], &[g(0, 0), g(0, -1)]]),
    )
}

/// The 2×2 building blocks for a normalized symplectic basis.
#[derive(Clone, Debug)]
pub struct SmallRep {
    pub pair_types: Vec<PairType>,
    /// Presentation generators per pair: (ρ(a), ρ(b)) or (σ(c), σ(d)).
    pub gen_pairs: Vec<(GaussMat, GaussMat)>,
}

impl SmallRep {
    pub fn new(pair_types: &[PairType]) -> Self {
        Self {
            pair_types: pair_types.to_vec(),
            gen_pairs: pair_types
                .iter()
                .map(|t| match t {
                    PairType::Hyperbolic => dihedral_generators(),
                    PairType::Anisotropic => quaternion_generators(),
                })
                .collect(),
        }
    }

    /// Images of the basis pair (pⱼ, qⱼ). Each must square to (−1)^{q(x)}
    /// and the two must anticommute: for `[0,0]` that is (ρ(b), ρ(ab)),
    /// both involutions; for `[1,1]` it is (σ(c), σ(d)).
    pub fn basis_images(&self, j: usize) -> (GaussMat, GaussMat) {
        let (x, y) = &self.gen_pairs[j];
        match self.pair_types[j] {
            PairType::Hyperbolic => (y.clone(), x * y),
            PairType::Anisotropic => (x.clone(), y.clone()),
        }
    }
}

/// Checks that the strictly-upper part of `d` is a quadratic lift of it,
/// i.e. `d` is symmetric with zero diagonal, and returns that part.
pub fn quadratic_lift(d: &BitMat) -> Result<BitMat> {
    let n = d.rows();
    for i in 0..n {
        if d.get(i, i) {
            return Err(Error::DiagonalNonzero(i));
        }
        for j in i + 1..n {
            if d.get(i, j) != d.get(j, i) {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    Ok(d.strict_upper())
}

/// The canonical representation of G_s = V_s × F₂ with the cocycle of q_s.
#[derive(Clone, Debug)]
pub struct ExtraspecialRep {
    pub classification: FormClassification,
    pub small: SmallRep,
    qs: QuadMap,
    to_pair_coords: BitMat,
    blocks: Vec<(GaussMat, GaussMat)>,
    /// Strictly upper-triangular matrix of the sign correction ν.
    nu: BitMat,
}

impl ExtraspecialRep {
    pub fn l(&self) -> usize {
        self.classification.l
    }

    pub fn degree(&self) -> usize {
        1 << self.l()
    }

    pub fn group(&self) -> GroupCtx {
        GroupCtx::new(self.qs.clone())
    }

    pub fn nu(&self) -> &BitMat {
        &self.nu
    }

    /// ⊗ⱼ Xⱼ^{aⱼ} Yⱼ^{bⱼ} for x = Σ aⱼpⱼ + bⱼqⱼ.
    pub fn section_matrix(&self, x: &BitVec) -> GaussMat {
        let y = self.to_pair_coords.mul_vec(x);
        self.blocks
            .iter()
            .enumerate()
            .fold(GaussMat::identity(1), |acc, (j, (bx, by))| {
                let m = match (y.get(2 * j), y.get(2 * j + 1)) {
                    (false, false) => GaussMat::identity(2),
                    (true, false) => bx.clone(),
                    (false, true) => by.clone(),
                    (true, true) => bx * by,
                };
                acc.kron(&m)
            })
    }

    /// φ_s(x, z) = (−1)^{z + ν(x)} μ(x).
    pub fn image(&self, e: &GroupElement) -> GaussMat {
        let m = self.section_matrix(&e.v);
        if e.w.get(0) ^ self.nu.bilinear(&e.v, &e.v) {
            m.neg()
        } else {
            m
        }
    }
}

/// Sign c′(x, y) with μ(x)μ(y) = (−1)^{c′} μ(x + y).
fn measured_sign(rep: &ExtraspecialRep, x: &BitVec, y: &BitVec) -> Result<bool> {
    let lhs = &rep.section_matrix(x) * &rep.section_matrix(y);
    let rhs = rep.section_matrix(&(*x + *y));
    if lhs == rhs {
        Ok(false)
    } else if lhs == rhs.neg() {
        Ok(true)
    } else {
        Err(Error::SignNotBilinear)
    }
}

/// Builds φ_s from the classification of q_s.
///
/// The sign cocycle of the section μ is measured on basis pairs, checked
/// for bilinearity (every pair when dim V_s ≤ 6, basis × all otherwise),
/// and corrected by ν with polar form c′ + c_s.
pub fn extraspecial_rep(c: &FormClassification, t: &TransferReport) -> Result<ExtraspecialRep> {
    let n = 2 * c.l;
    if t.qs.dim_v() != n {
        return Err(Error::DimensionMismatch {
            expected: t.qs.dim_v(),
            found: n,
        });
    }
    let to_pair_coords = BitMat::from_cols(n, &c.pair_basis)
        .inverse()
        .ok_or(Error::DependentInput)?;
    let small = SmallRep::new(&c.pair_types);
    let blocks = (0..c.l).map(|j| small.basis_images(j)).collect();
    let mut rep = ExtraspecialRep {
        classification: c.clone(),
        small,
        qs: t.qs.clone(),
        to_pair_coords,
        blocks,
        nu: BitMat::zeros(n, n),
    };

    let mut sign = BitMat::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            sign.set(
                a,
                b,
                measured_sign(&rep, &BitVec::unit(n, a), &BitVec::unit(n, b))?,
            );
        }
    }
    let xs: Vec<BitVec> = if n <= 6 {
        BitVec::all(n).collect()
    } else {
        (0..n).map(|a| BitVec::unit(n, a)).collect()
    };
    for x in &xs {
        for y in BitVec::all(n) {
            if measured_sign(&rep, x, &y)? != sign.bilinear(x, &y) {
                return Err(Error::SignNotBilinear);
            }
        }
    }

    let difference = &sign + &t.qs.coeffs()[0];
    rep.nu = quadratic_lift(&difference)?;
    Ok(rep)
}

/// λ: V → F₂ as vᵀTv with T strictly upper triangular, chosen so that
/// Inf(c_s)(v,v′) + s(c(v,v′)) = λ(v+v′) + λ(v) + λ(v′).
pub fn build_lambda(q: &QuadMap, t: &TransferReport) -> Result<BitMat> {
    let e = t.projection_matrix();
    let inflated = e.transpose().mul(&t.qs.coeffs()[0]).mul(&e);
    let transferred = q.compose(&t.s)?;
    quadratic_lift(&(&inflated + &transferred))
}

#[derive(Clone, Debug)]
pub struct Surjection {
    pub s: Functional,
    pub index: usize,
    pub lambda: BitMat,
    /// h_i(v) = h · v.
    pub h: BitVec,
    projection: BitMat,
}

impl Surjection {
    pub fn lambda_at(&self, v: &BitVec) -> bool {
        self.lambda.bilinear(v, v)
    }

    pub fn h_at(&self, v: &BitVec) -> bool {
        self.h.dot(v)
    }

    /// f_{s,i}(v, w) as an element of G_s.
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let z = self.s.apply(&g.w) ^ self.lambda_at(&g.v) ^ self.h_at(&g.v);
        GroupElement::new(
            self.projection.mul_vec(&g.v),
            BitVec::from_bits(1, z as u64),
        )
    }
}

pub fn surjection(q: &QuadMap, t: &TransferReport, index: usize) -> Result<Surjection> {
    let max = t.character_count();
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { index, max });
    }
    let d = q.dim_v();
    let pattern = BitVec::from_bits(t.k, (index - 1) as u64);
    let mut h = BitVec::zero(d);
    for a in 0..d {
        h.set(a, pattern.dot(&t.radical_coordinates(&BitVec::unit(d, a))));
    }
    Ok(Surjection {
        s: t.s,
        index,
        lambda: build_lambda(q, t)?,
        h,
        projection: t.projection_matrix(),
    })
}

/// f(xy) = f(x)f(y) for every pair of elements of G.
pub fn check_homomorphism(
    ctx: &GroupCtx,
    f: &Surjection,
    target: &GroupCtx,
    cap: usize,
    exec: Execution,
) -> Result<()> {
    let n = ctx.order_log2();
    if n >= 40 || (1usize << n) > cap {
        return Err(Error::TooLarge { order_log2: n, cap });
    }
    let (d, m) = (ctx.dim_v(), ctx.dim_w());
    let zero_w = BitVec::zero(m);
    // f(v, w) = f(v, 0) · (0, s(w)).
    let base: Vec<GroupElement> = BitVec::all(d)
        .map(|v| f.apply(&GroupElement::new(v, zero_w)))
        .collect();
    let s_of: Vec<u64> = BitVec::all(m).map(|w| f.s.apply(&w) as u64).collect();
    let image = |v: u64, w: u64| {
        let b = base[v as usize];
        GroupElement::new(b.v, BitVec::from_bits(1, b.w.bits() ^ s_of[w as usize]))
    };
    let ok = exec::all(exec, 1 << d, |v| {
        let x = BitVec::from_bits(d, v);
        (0u64..1 << d).all(|v2| {
            let y = BitVec::from_bits(d, v2);
            let c = ctx.cocycle(&x, &y).bits();
            (0u64..1 << m).all(|w| {
                (0u64..1 << m).all(|w2| {
                    let lhs = image(v ^ v2, c ^ w ^ w2);
                    let rhs = target.mul(&image(v, w), &image(v2, w2));
                    lhs == rhs
                })
            })
        })
    });
    if ok {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!(
            "f_(s={},i={}) is not a homomorphism",
            f.s.coords(),
            f.index
        )))
    }
}

/// Number of distinct images of f; equals |G_s| when f is onto.
pub fn image_size(ctx: &GroupCtx, f: &Surjection) -> usize {
    let mut seen: Vec<GroupElement> = ctx.elements().map(|g| f.apply(&g)).collect();
    seen.sort();
    seen.dedup();
    seen.len()
}

/// φ_{s,i} = φ_s ∘ f_{s,i}.
#[derive(Clone, Debug)]
pub struct FullRep {
    pub surjection: Surjection,
    pub quotient: ExtraspecialRep,
}

impl FullRep {
    pub fn degree(&self) -> usize {
        self.quotient.degree()
    }

    pub fn image(&self, g: &GroupElement) -> GaussMat {
        self.quotient.image(&self.surjection.apply(g))
    }

    /// Trace at each class representative.
    pub fn trace_row(&self, classes: &[ConjClass]) -> Result<Vec<i64>> {
        classes
            .iter()
            .map(|c| {
                self.image(&c.representative())
                    .real_trace()
                    .ok_or_else(|| Error::VerificationFailed("non-real trace".into()))
            })
            .collect()
    }
}

pub fn full_rep(q: &QuadMap, t: &TransferReport, index: usize) -> Result<FullRep> {
    let c = classify(&t.qs)?;
    Ok(FullRep {
        surjection: surjection(q, t, index)?,
        quotient: extraspecial_rep(&c, t)?,
    })
}

/// All 2^k representations attached to one transfer, sharing one φ_s.
pub fn full_reps_for(q: &QuadMap, t: &TransferReport) -> Result<Vec<FullRep>> {
    let quotient = extraspecial_rep(&classify(&t.qs)?, t)?;
    (1..=t.character_count())
        .map(|i| {
            Ok(FullRep {
                surjection: surjection(q, t, i)?,
                quotient: quotient.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{extraspecial, special_32};
    use crate::chartab::{self, classes_fast};
    use crate::group::DEFAULT_ORACLE_CAP;
    use crate::quadmap::{all_transfers, transfer};
    use rand::{Rng, SeedableRng};

    fn bv(s: &str) -> BitVec {
        BitVec::parse_bits(s).unwrap()
    }

    #[test]
    fn presentation_relations() {
        let i2 = GaussMat::identity(2);
        let (a, b) = dihedral_generators();
        assert!(a.pow(4).is_identity() && b.pow(2).is_identity());
        assert_eq!(&(&b * &a) * &b, a.pow(3));
        let (c, d) = quaternion_generators();
        assert!(c.pow(4).is_identity());
        assert_eq!(d.pow(2), c.pow(2));
        assert_eq!(&(&d * &c) * &d.pow(3), c.pow(3));
        assert_eq!(c.pow(2), i2.neg());
    }

    #[test]
    fn basis_images_square_and_anticommute() {
        for kind in [PairType::Hyperbolic, PairType::Anisotropic] {
            let small = SmallRep::new(&[kind]);
            let (x, y) = small.basis_images(0);
            let sq = if kind == PairType::Anisotropic {
                GaussMat::identity(2).neg()
            } else {
                GaussMat::identity(2)
            };
            assert_eq!(x.pow(2), sq);
            assert_eq!(y.pow(2), sq);
            assert_eq!(&x * &y, (&y * &x).neg());
        }
    }

    #[test]
    fn lambda_satisfies_coboundary_relation_exhaustively() {
        let q = special_32();
        for t in all_transfers(&q).unwrap() {
            let lambda = build_lambda(&q, &t).unwrap();
            let lam = |v: &BitVec| lambda.bilinear(v, v);
            let cs = &t.qs.coeffs()[0];
            for v in BitVec::all(3) {
                for v2 in BitVec::all(3) {
                    let inflated = cs.bilinear(&t.project(&v), &t.project(&v2));
                    let transferred = t.s.apply(&q.cocycle(&v, &v2));
                    assert_eq!(inflated ^ transferred, lam(&(v + v2)) ^ lam(&v) ^ lam(&v2));
                }
            }
            assert!(!lam(&BitVec::zero(3)));
        }
    }

    #[test]
    fn lambda_is_zero_when_cocycles_already_agree() {
        // Extraspecial input: radical is trivial and the section is the
        // standard basis, so q_s = q.
        let q = extraspecial(2, PairType::Anisotropic);
        let t = transfer(&q, &Functional::new(bv("1"))).unwrap();
        assert!(build_lambda(&q, &t).unwrap().is_zero());
    }

    #[test]
    fn quadratic_lift_rejects_bad_input() {
        let mut d = BitMat::zeros(2, 2);
        d.set(1, 1, true);
        assert!(matches!(quadratic_lift(&d), Err(Error::DiagonalNonzero(1))));
        let mut d = BitMat::zeros(2, 2);
        d.set(0, 1, true);
        assert!(matches!(quadratic_lift(&d), Err(Error::NotSymmetric(0, 1))));
    }

    fn traces_on_own_classes(q: &QuadMap) -> Vec<i64> {
        let t = transfer(q, &Functional::new(bv("1"))).unwrap();
        let rep = full_rep(q, &t, 1).unwrap();
        let classes = classes_fast(q).unwrap();
        rep.trace_row(&classes).unwrap()
    }

    #[test]
    fn dihedral_and_quaternion_traces() {
        for kind in [PairType::Hyperbolic, PairType::Anisotropic] {
            // Classes in order: (0,0), (0,1), then three non-central.
            assert_eq!(
                traces_on_own_classes(&extraspecial(1, kind)),
                vec![2, -2, 0, 0, 0]
            );
        }
    }

    #[test]
    fn extraspecial_rep_is_homomorphism_exhaustively() {
        for l in 1..=4 {
            for kind in [PairType::Hyperbolic, PairType::Anisotropic] {
                let q = extraspecial(l, kind);
                let t = transfer(&q, &Functional::new(bv("1"))).unwrap();
                let rep = extraspecial_rep(&classify(&t.qs).unwrap(), &t).unwrap();
                let gs = rep.group();
                if gs.order_log2() > 7 {
                    continue;
                }
                let all: Vec<_> = gs.elements().collect();
                let images: Vec<_> = all.iter().map(|e| rep.image(e)).collect();
                for (x, mx) in all.iter().zip(&images) {
                    for (y, my) in all.iter().zip(&images) {
                        let xy = gs.mul(x, y);
                        assert_eq!(&images[gs.index(&xy)], &(mx * my));
                    }
                }
            }
        }
    }

    #[test]
    fn surjections_are_homomorphisms_onto_and_distinct() {
        let q = special_32();
        let ctx = GroupCtx::new(q.clone());
        for t in all_transfers(&q).unwrap() {
            let gs = GroupCtx::new(t.qs.clone());
            let fs: Vec<Surjection> = (1..=t.character_count())
                .map(|i| surjection(&q, &t, i).unwrap())
                .collect();
            for f in &fs {
                check_homomorphism(&ctx, f, &gs, DEFAULT_ORACLE_CAP, Execution::Sequential)
                    .unwrap();
                assert_eq!(image_size(&ctx, f), 1 << gs.order_log2());
            }
            let images = |f: &Surjection| ctx.elements().map(|g| f.apply(&g)).collect::<Vec<_>>();
            assert_ne!(images(&fs[0]), images(&fs[1]));
        }
    }

    #[test]
    fn broken_surjection_fails_check() {
        let q = special_32();
        let ctx = GroupCtx::new(q.clone());
        let t = transfer(&q, &Functional::new(bv("10"))).unwrap();
        let mut f = surjection(&q, &t, 1).unwrap();
        f.lambda = BitMat::zeros(3, 3);
        f.lambda.set(0, 1, true);
        f.lambda.set(1, 2, true);
        let gs = GroupCtx::new(t.qs.clone());
        assert!(
            check_homomorphism(&ctx, &f, &gs, DEFAULT_ORACLE_CAP, Execution::Parallel).is_err()
        );
    }

    #[test]
    fn traces_match_table_rows_on_example() {
        let q = special_32();
        let table = chartab::build_table(&q).unwrap();
        for t in all_transfers(&q).unwrap() {
            let mut from_reps: Vec<Vec<i64>> = full_reps_for(&q, &t)
                .unwrap()
                .iter()
                .map(|r| r.trace_row(&table.classes).unwrap())
                .collect();
            let mut from_table: Vec<Vec<i64>> = table
                .rows
                .iter()
                .filter(
                    |r| matches!(r.kind, chartab::CharacterKind::NonLinear { s, .. } if s == t.s),
                )
                .map(|r| r.values.clone())
                .collect();
            from_reps.sort();
            from_table.sort();
            assert_eq!(from_reps, from_table);
        }
    }

    #[test]
    fn second_functional_reps_differ_on_e2_class() {
        let q = special_32();
        let classes = classes_fast(&q).unwrap();
        let t = transfer(&q, &Functional::new(bv("01"))).unwrap();
        let reps = full_reps_for(&q, &t).unwrap();
        let e2 = GroupElement::new(bv("010"), bv("00"));
        let c = classes.iter().position(|c| c.contains(&e2)).unwrap();
        let mut at_e2: Vec<i64> = reps
            .iter()
            .map(|r| r.trace_row(&classes).unwrap()[c])
            .collect();
        at_e2.sort();
        assert_eq!(at_e2, vec![-2, 2]);
        for r in &reps {
            assert_eq!(
                r.image(&GroupElement::new(BitVec::zero(3), BitVec::zero(2)))
                    .real_trace(),
                Some(2)
            );
        }
    }

    #[test]
    fn kernel_size_matches_index_of_quotient() {
        let q = special_32();
        let ctx = GroupCtx::new(q.clone());
        for t in all_transfers(&q).unwrap() {
            for r in full_reps_for(&q, &t).unwrap() {
                let kernel = ctx.elements().filter(|g| r.image(g).is_identity()).count();
                assert_eq!(kernel, 32 / (1 << (2 * t.l + 1)));
            }
        }
    }

    #[test]
    fn full_rep_is_homomorphism_on_random_pairs_of_order_1024_group() {
        // d = 8, m = 2: two disjoint quaternion-type blocks glued so the
        // polar image spans W.
        let q = crate::random::random_real_seed(8, 2, 7).unwrap();
        let ctx = GroupCtx::new(q.clone());
        assert_eq!(ctx.order_log2(), 10);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let reps: Vec<FullRep> = all_transfers(&q)
            .unwrap()
            .iter()
            .flat_map(|t| full_reps_for(&q, t).unwrap())
            .collect();
        for _ in 0..10_000 {
            let x = ctx.element(rng.gen_range(0..1024));
            let y = ctx.element(rng.gen_range(0..1024));
            let r = &reps[rng.gen_range(0..reps.len())];
            assert_eq!(r.image(&ctx.mul(&x, &y)), &r.image(&x) * &r.image(&y));
        }
    }
}
