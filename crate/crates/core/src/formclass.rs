//! Classification of regular quadratic forms over F₂.
//!
//! A regular form splits into an orthogonal sum of binary forms on
//! hyperbolic pairs. Each pair normalizes to either xy (`[0,0]`) or
//! x² + xy + y² (`[1,1]`), and two `[1,1]` pairs together are isometric to
//! two `[0,0]` pairs, so every form reduces to at most one anisotropic pair.
//! The Arf invariant Σ q(pⱼ)q(qⱼ) tells the two classes apart; they are the
//! forms of the extraspecial groups D₄∘…∘D₄ and Q₂∘D₄∘…∘D₄.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMat, BitVec, Echelon};
use crate::quadmap::{radical, QuadMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairType {
    /// xy, written `[0,0]`.
    Hyperbolic,
    /// x² + xy + y², written `[1,1]`.
    Anisotropic,
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairType::Hyperbolic => "[0,0]",
            PairType::Anisotropic => "[1,1]",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormLabel {
    D4Type,
    Q2Type,
}

impl FormLabel {
    /// Name of the extraspecial group with l factors.
    pub fn group_name(&self, l: usize) -> String {
        let mut parts = Vec::with_capacity(l);
        for j in 0..l {
            parts.push(if j == 0 && *self == FormLabel::Q2Type {
                "Q2"
            } else {
                "D4"
            });
        }
        parts.join("∘")
    }
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormLabel::D4Type => "D4",
            FormLabel::Q2Type => "Q2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClassification {
    pub l: usize,
    /// Ordered p₁, q₁, …, p_l, q_l.
    pub pair_basis: Vec<BitVec>,
    pub pair_types: Vec<PairType>,
    pub label: FormLabel,
}

impl FormClassification {
    pub fn pair(&self, j: usize) -> (BitVec, BitVec) {
        (self.pair_basis[2 * j], self.pair_basis[2 * j + 1])
    }
}

struct Form<'a> {
    u: &'a BitMat,
    polar: BitMat,
}

impl<'a> Form<'a> {
    fn new(q: &'a QuadMap) -> Self {
        Self {
            u: &q.coeffs()[0],
            polar: q.polar_matrices()[0].clone(),
        }
    }

    fn value(&self, x: &BitVec) -> bool {
        self.u.bilinear(x, x)
    }

    fn pairing(&self, x: &BitVec, y: &BitVec) -> bool {
        self.polar.bilinear(x, y)
    }

    /// Projects x onto the orthogonal complement of the hyperbolic pair (v, u).
    fn project_off(&self, x: BitVec, v: BitVec, u: BitVec) -> BitVec {
        let mut out = x;
        if self.pairing(&x, &u) {
            out += v;
        }
        if self.pairing(&x, &v) {
            out += u;
        }
        out
    }

    /// Rebases a pair so both basis vectors have equal form value.
    fn normalize(&self, p: BitVec, q: BitVec) -> (BitVec, BitVec, PairType) {
        match (self.value(&p), self.value(&q)) {
            (false, false) => (p, q, PairType::Hyperbolic),
            (true, true) => (p, q, PairType::Anisotropic),
            (true, false) => (p + q, q, PairType::Hyperbolic),
            (false, true) => (p, q + p, PairType::Hyperbolic),
        }
    }

    /// Splits the span of `space` (a regular subspace) into hyperbolic pairs:
    /// take the first vector, pair it with the first partner, project the
    /// rest off the pair, repeat.
    fn symplectic_pairs(&self, space: Vec<BitVec>) -> Result<Vec<(BitVec, BitVec)>> {
        let mut space = space;
        let mut pairs = Vec::new();
        while let Some(&v) = space.first() {
            let j = space
                .iter()
                .position(|x| self.pairing(&v, x))
                .ok_or(Error::NotRegular)?;
            let u = space[j];
            space = space
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != 0 && i != j)
                .map(|(_, &x)| self.project_off(x, v, u))
                .collect();
            pairs.push((v, u));
        }
        Ok(pairs)
    }

    /// Rewrites two anisotropic pairs as two hyperbolic pairs spanning the
    /// same 4-dimensional space.
    fn split_anisotropic_pairs(
        &self,
        a: (BitVec, BitVec),
        b: (BitVec, BitVec),
    ) -> [(BitVec, BitVec); 2] {
        let basis = [a.0, a.1, b.0, b.1];
        let combo = |mask: u32| {
            let mut x = BitVec::zero(a.0.len());
            for (i, v) in basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    x += *v;
                }
            }
            x
        };
        let x = (1..16)
            .map(combo)
            .find(|x| !self.value(x))
            .expect("a 4-dimensional regular form has a singular vector");
        let mut y = (1..16)
            .map(combo)
            .find(|y| self.pairing(&x, y))
            .expect("regular space has a partner");
        if self.value(&y) {
            y += x;
        }
        let mut echelon = Echelon::new(a.0.len());
        echelon.insert(x);
        echelon.insert(y);
        let rest: Vec<BitVec> = basis
            .iter()
            .map(|&z| self.project_off(z, x, y))
            .filter(|&z| echelon.insert(z))
            .collect();
        debug_assert_eq!(rest.len(), 2);
        let (p, q, kind) = self.normalize(rest[0], rest[1]);
        debug_assert_eq!(kind, PairType::Hyperbolic);
        [(x, y), (p, q)]
    }
}

/// Classifies a regular binary-valued quadratic form.
pub fn classify(form: &QuadMap) -> Result<FormClassification> {
    if form.dim_w() != 1 {
        return Err(Error::NotAForm(form.dim_w()));
    }
    let d = form.dim_v();
    if !d.is_multiple_of(2) {
        return Err(Error::OddDimension(d));
    }
    if !radical(form).is_empty() {
        return Err(Error::NotRegular);
    }
    let f = Form::new(form);
    let standard: Vec<BitVec> = (0..d).map(|i| BitVec::unit(d, i)).collect();

    let mut pairs: Vec<(BitVec, BitVec, PairType)> = f
        .symplectic_pairs(standard)?
        .into_iter()
        .map(|(p, q)| f.normalize(p, q))
        .collect();

    loop {
        let ani: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.2 == PairType::Anisotropic)
            .map(|(i, _)| i)
            .take(2)
            .collect();
        if ani.len() < 2 {
            break;
        }
        let (i, j) = (ani[0], ani[1]);
        let [first, second] =
            f.split_anisotropic_pairs((pairs[i].0, pairs[i].1), (pairs[j].0, pairs[j].1));
        pairs[i] = (first.0, first.1, PairType::Hyperbolic);
        pairs[j] = (second.0, second.1, PairType::Hyperbolic);
    }
    if let Some(pos) = pairs.iter().position(|p| p.2 == PairType::Anisotropic) {
        let ani = pairs.remove(pos);
        pairs.insert(0, ani);
    }

    let pair_basis: Vec<BitVec> = pairs.iter().flat_map(|&(p, q, _)| [p, q]).collect();
    let label = if arf_invariant(form, &pair_basis) {
        FormLabel::Q2Type
    } else {
        FormLabel::D4Type
    };
    Ok(FormClassification {
        l: pairs.len(),
        pair_basis,
        pair_types: pairs.iter().map(|p| p.2).collect(),
        label,
    })
}

/// Σ q(pⱼ)q(qⱼ) over a symplectic basis ordered p₁, q₁, p₂, q₂, ….
pub fn arf_invariant(form: &QuadMap, symplectic_basis: &[BitVec]) -> bool {
    let u = &form.coeffs()[0];
    symplectic_basis
        .chunks(2)
        .filter(|pq| u.bilinear(&pq[0], &pq[0]) && u.bilinear(&pq[1], &pq[1]))
        .count()
        % 2
        == 1
}

/// Order 2^{2l+1} of the extraspecial group attached to the classification.
pub fn extraspecial_order(c: &FormClassification) -> u128 {
    1u128 << (2 * c.l + 1)
}
