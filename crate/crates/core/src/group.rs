//! The group G_q on V × W with law (v,w)(v′,w′) = (v+v′, c(v,v′)+w+w′).
//!
//! This is the materialized group: small enough inputs are enumerated
//! element by element and used as the brute-force reference for the fast
//! class and character formulas.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gf2::BitVec;
use crate::quadmap::QuadMap;

/// Default bound on |G| for the exhaustive oracles.
pub const DEFAULT_ORACLE_CAP: usize = 1 << 14;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    #[serde(serialize_with = "ser_bits")]
    pub v: BitVec,
    #[serde(serialize_with = "ser_bits")]
    pub w: BitVec,
}

fn ser_bits<S: serde::Serializer>(v: &BitVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_bitstring())
}

impl GroupElement {
    pub fn new(v: BitVec, w: BitVec) -> Self {
        Self { v, w }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v, self.w)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v, self.w)
    }
}

#[derive(Clone, Debug)]
pub struct GroupCtx {
    q: QuadMap,
}

impl GroupCtx {
    pub fn new(q: QuadMap) -> Self {
        Self { q }
    }

    pub fn quad_map(&self) -> &QuadMap {
        &self.q
    }

    pub fn dim_v(&self) -> usize {
        self.q.dim_v()
    }

    pub fn dim_w(&self) -> usize {
        self.q.dim_w()
    }

    /// log₂ |G|.
    pub fn order_log2(&self) -> usize {
        self.dim_v() + self.dim_w()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(BitVec::zero(self.dim_v()), BitVec::zero(self.dim_w()))
    }

    pub fn cocycle(&self, v: &BitVec, v2: &BitVec) -> BitVec {
        self.q.cocycle(v, v2)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.v.len() != self.dim_v() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_v(),
                found: a.v.len(),
            });
        }
        if a.w.len() != self.dim_w() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_w(),
                found: a.w.len(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(a.v + b.v, self.q.cocycle(&a.v, &b.v) + a.w + b.w)
    }

    /// (v, w)⁻¹ = (v, c(v,v) + w).
    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(a.v, self.q.cocycle(&a.v, &a.v) + a.w)
    }

    pub fn conjugate(&self, by: &GroupElement, g: &GroupElement) -> GroupElement {
        self.mul(&self.mul(by, g), &self.inverse(by))
    }

    /// a b a⁻¹ b⁻¹.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(
            &self.mul(a, b),
            &self.mul(&self.inverse(a), &self.inverse(b)),
        )
    }

    /// Dense index of an element: v bits above w bits.
    pub fn index(&self, g: &GroupElement) -> usize {
        ((g.v.bits() << self.dim_w()) | g.w.bits()) as usize
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let m = self.dim_w();
        GroupElement::new(
            BitVec::from_bits(self.dim_v(), (index >> m) as u64),
            BitVec::from_bits(m, index as u64),
        )
    }

    /// Every element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..1usize << self.order_log2()).map(|i| self.element(i))
    }

    /// Lifts (eᵢ, 0) of the basis of V followed by the central (0, fⱼ).
    pub fn generators(&self) -> Vec<GroupElement> {
        let (d, m) = (self.dim_v(), self.dim_w());
        (0..d)
            .map(|i| GroupElement::new(BitVec::unit(d, i), BitVec::zero(m)))
            .chain((0..m).map(|j| GroupElement::new(BitVec::zero(d), BitVec::unit(m, j))))
            .collect()
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        let n = self.order_log2();
        if n >= usize::BITS as usize - 1 || (1usize << n) > cap {
            return Err(Error::TooLarge { order_log2: n, cap });
        }
        Ok(())
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit partition of G under conjugation, by closing each element under
/// conjugation by the generators. Classes are sorted by their least
/// element; elements inside a class are sorted too.
pub fn conjugacy_classes_bruteforce(ctx: &GroupCtx, cap: usize) -> Result<Vec<Vec<GroupElement>>> {
    conjugacy_classes_bruteforce_with(ctx, cap, Execution::default())
}

pub fn conjugacy_classes_bruteforce_with(
    ctx: &GroupCtx,
    cap: usize,
    exec: Execution,
) -> Result<Vec<Vec<GroupElement>>> {
    ctx.check_cap(cap)?;
    let n = 1u64 << ctx.order_log2();
    let gens = ctx.generators();
    let neighbours: Vec<Vec<usize>> = exec::map_range(exec, n, |i| {
        let g = ctx.element(i as usize);
        gens.iter()
            .map(|x| ctx.index(&ctx.conjugate(x, &g)))
            .collect()
    });

    let mut parent: Vec<usize> = (0..n as usize).collect();
    for (i, ns) in neighbours.iter().enumerate() {
        for &j in ns {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut classes: BTreeMap<usize, Vec<GroupElement>> = BTreeMap::new();
    for i in 0..n as usize {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(ctx.element(i));
    }
    let mut out: Vec<Vec<GroupElement>> = classes
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    out.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CenterAndSquares {
    /// Elements commuting with every generator, sorted.
    pub center: Vec<GroupElement>,
    /// `square_of[v]` is the w-part of (v, 0)², indexed by packed v.
    pub square_of: Vec<BitVec>,
}

pub fn center_and_squares(ctx: &GroupCtx, cap: usize) -> Result<CenterAndSquares> {
    ctx.check_cap(cap)?;
    let gens = ctx.generators();
    let mut center: Vec<GroupElement> = ctx
        .elements()
        .filter(|g| gens.iter().all(|x| ctx.mul(x, g) == ctx.mul(g, x)))
        .collect();
    center.sort();
    let zero_w = BitVec::zero(ctx.dim_w());
    let square_of = BitVec::all(ctx.dim_v())
        .map(|v| {
            let g = GroupElement::new(v, zero_w);
            ctx.mul(&g, &g).w
        })
        .collect();
    Ok(CenterAndSquares { center, square_of })
}

/// Oracle realness: every conjugacy class is closed under inversion.
pub fn is_real_by_classes(ctx: &GroupCtx, classes: &[Vec<GroupElement>]) -> bool {
    classes
        .iter()
        .all(|c| c.iter().all(|g| c.binary_search(&ctx.inverse(g)).is_ok()))
}
