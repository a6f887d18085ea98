//! Conjugacy classes and the complete character table of a real special
//! 2-group, computed from its quadratic map alone.
//!
//! Classes: the fibre {v} × W splits into cosets of
//! W_v = ∩ {ker s : s ≠ 0, v ∈ rad(b_{s∘q})}.
//!
//! Characters: the 2^d lifts of characters of V, plus for every nonzero s
//! exactly 2^k non-linear characters of degree 2^l, where k is the
//! dimension of the radical of b_{s∘q} and k + 2l = d. A non-linear
//! character vanishes off the radical. On the radical, index i picks the
//! sign pattern given by the binary digits of i − 1 on the radical basis.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gf2::{self, BitMat, BitVec, Echelon};
use crate::group::{GroupCtx, GroupElement};
use crate::quadmap::{self, is_valid_group_seed, Functional, QuadMap, TransferReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep_v: BitVec,
    pub rep_w: BitVec,
    /// Basis of W_v; the class is (rep_v, rep_w + span).
    pub w_subspace: Vec<BitVec>,
    pub size: usize,
}

impl ConjClass {
    pub fn representative(&self) -> GroupElement {
        GroupElement::new(self.rep_v, self.rep_w)
    }

    /// Members sorted by w.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = (0u64..1 << self.w_subspace.len())
            .map(|mask| {
                let mut w = self.rep_w;
                for (j, b) in self.w_subspace.iter().enumerate() {
                    if (mask >> j) & 1 == 1 {
                        w += *b;
                    }
                }
                GroupElement::new(self.rep_v, w)
            })
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.v == self.rep_v
            && Echelon::from_vectors(self.rep_w.len(), &self.w_subspace).contains(g.w + self.rep_w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum CharacterKind {
    Linear {
        #[serde(serialize_with = "ser_bits")]
        phi: BitVec,
    },
    NonLinear {
        #[serde(serialize_with = "ser_functional")]
        s: Functional,
        index: usize,
    },
}

fn ser_bits<S: serde::Serializer>(v: &BitVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_bitstring())
}

fn ser_functional<S: serde::Serializer>(
    f: &Functional,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.coords().to_bitstring())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub kind: CharacterKind,
    pub degree: i64,
    pub values: Vec<i64>,
}

impl Character {
    pub fn label(&self) -> String {
        match &self.kind {
            CharacterKind::Linear { phi } => format!("lin[{phi}]"),
            CharacterKind::NonLinear { s, index } => format!("s[{}],{index}", s.coords()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub order_log2: usize,
    pub classes: Vec<ConjClass>,
    pub rows: Vec<Character>,
}

impl CharacterTable {
    pub fn order(&self) -> i128 {
        1i128 << self.order_log2
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r.values[c]).collect()
    }
}

fn require_real_seed(q: &QuadMap) -> Result<()> {
    let validity = is_valid_group_seed(q);
    if !validity.is_valid() {
        return Err(Error::InvalidSeed {
            regular: validity.regular,
            polar_spans_w: validity.polar_spans_w,
        });
    }
    if !quadmap::is_real(q) {
        return Err(Error::NotReal);
    }
    Ok(())
}

pub fn classes_fast(q: &QuadMap) -> Result<Vec<ConjClass>> {
    classes_fast_with(q, Execution::default())
}

pub fn classes_fast_with(q: &QuadMap, exec: Execution) -> Result<Vec<ConjClass>> {
    require_real_seed(q)?;
    Ok(classes_unchecked(q, exec))
}

fn classes_unchecked(q: &QuadMap, exec: Execution) -> Vec<ConjClass> {
    let (d, m) = (q.dim_v(), q.dim_w());
    let per_v = exec::map_range(exec, 1 << d, |bits| {
        let v = BitVec::from_bits(d, bits);
        // Column i is Bᵢv; s ∈ S_v iff Σ sᵢBᵢv = 0.
        let images: Vec<BitVec> = q.polar_matrices().iter().map(|b| b.mul_vec(&v)).collect();
        let s_v = gf2::kernel(&BitMat::from_cols(d, &images));
        let w_v = gf2::kernel(&BitMat::from_rows(m, &s_v));
        let echelon = Echelon::from_vectors(m, &w_v);
        let mut reps: Vec<BitVec> = BitVec::all(m).map(|w| echelon.reduce(w)).collect();
        reps.sort();
        reps.dedup();
        reps.into_iter()
            .map(|rep_w| ConjClass {
                rep_v: v,
                rep_w,
                w_subspace: w_v.clone(),
                size: 1 << w_v.len(),
            })
            .collect::<Vec<_>>()
    });
    let mut out: Vec<ConjClass> = per_v.into_iter().flatten().collect();
    out.sort_by_key(|a| (a.rep_v, a.rep_w));
    out
}

/// The 2^d linear characters χ_φ(v, w) = (−1)^{φ·v}, φ in lexicographic order.
pub fn linear_characters(q: &QuadMap, classes: &[ConjClass]) -> Vec<Character> {
    let mut phis: Vec<BitVec> = BitVec::all(q.dim_v()).collect();
    phis.sort();
    phis.into_iter()
        .map(|phi| Character {
            kind: CharacterKind::Linear { phi },
            degree: 1,
            values: classes
                .iter()
                .map(|c| if phi.dot(&c.rep_v) { -1 } else { 1 })
                .collect(),
        })
        .collect()
}

/// Value of χ_{s,i} at an arbitrary element.
///
/// For v = Σ_{j∈J} vⱼ on the radical basis, (v, w) = ∏(vⱼ, 0) · (0, w + δ)
/// where δ is the w-part of the ordered product ∏_{j∈J}(vⱼ, 0).
pub fn nonlinear_value(ctx: &GroupCtx, t: &TransferReport, index: usize, g: &GroupElement) -> i64 {
    if !t.in_radical(&g.v) {
        return 0;
    }
    let pattern = (index - 1) as u64;
    let coords = t.radical_coordinates(&g.v);
    let zero_w = BitVec::zero(ctx.dim_w());
    let mut product = ctx.identity();
    let mut sign = false;
    for j in coords.support() {
        product = ctx.mul(&product, &GroupElement::new(t.radical_basis[j], zero_w));
        sign ^= (pattern >> j) & 1 == 1;
    }
    debug_assert_eq!(product.v, g.v);
    sign ^= t.s.apply(&(g.w + product.w));
    let magnitude = 1i64 << t.l;
    if sign {
        -magnitude
    } else {
        magnitude
    }
}

fn nonlinear_unchecked(
    ctx: &GroupCtx,
    t: &TransferReport,
    index: usize,
    classes: &[ConjClass],
) -> Result<Character> {
    let max = t.character_count();
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { index, max });
    }
    Ok(Character {
        kind: CharacterKind::NonLinear { s: t.s, index },
        degree: 1 << t.l,
        values: classes
            .iter()
            .map(|c| nonlinear_value(ctx, t, index, &c.representative()))
            .collect(),
    })
}

/// χ_{s,i} on the given classes; `index` runs over 1..=2^k.
pub fn nonlinear_character(
    q: &QuadMap,
    t: &TransferReport,
    index: usize,
    classes: &[ConjClass],
) -> Result<Character> {
    if !quadmap::is_real(q) {
        return Err(Error::NotReal);
    }
    nonlinear_unchecked(&GroupCtx::new(q.clone()), t, index, classes)
}

pub fn build_table(q: &QuadMap) -> Result<CharacterTable> {
    build_table_with(q, Execution::default())
}

pub fn build_table_with(q: &QuadMap, exec: Execution) -> Result<CharacterTable> {
    let table = assemble_table_with(q, exec)?;
    verify_table_with(&table, exec)?;
    Ok(table)
}

/// Like [`build_table_with`] but returns the table without checking it.
pub fn assemble_table_with(q: &QuadMap, exec: Execution) -> Result<CharacterTable> {
    require_real_seed(q)?;
    let classes = classes_unchecked(q, exec);
    let transfers = quadmap::all_transfers_with(q, exec)?;
    let ctx = GroupCtx::new(q.clone());

    let mut rows = linear_characters(q, &classes);
    let nonlinear = exec::map(exec, &transfers, |t| {
        (1..=t.character_count())
            .map(|i| nonlinear_unchecked(&ctx, t, i, &classes))
            .collect::<Result<Vec<_>>>()
    });
    for chunk in nonlinear {
        rows.extend(chunk?);
    }

    Ok(CharacterTable {
        order_log2: q.dim_v() + q.dim_w(),
        classes,
        rows,
    })
}

/// Runs every table check and reports the first violation.
pub fn verify_table(table: &CharacterTable) -> Result<()> {
    verify_table_with(table, Execution::default())
}

pub fn verify_table_with(table: &CharacterTable, exec: Execution) -> Result<()> {
    check_square(table)
        .and_then(|_| check_degree_sum(table))
        .and_then(|_| check_row_orthogonality(table, exec))
        .and_then(|_| check_column_orthogonality(table, exec))
        .and_then(|_| check_distinct_columns(table))
        .map_err(Error::VerificationFailed)
}

pub type Check = std::result::Result<(), String>;

pub fn check_square(table: &CharacterTable) -> Check {
    let (r, c) = (table.rows.len(), table.classes.len());
    if r != c {
        return Err(format!("{r} characters but {c} classes"));
    }
    let total: i128 = table.classes.iter().map(|c| c.size as i128).sum();
    if total != table.order() {
        return Err(format!(
            "class sizes sum to {total}, |G| = {}",
            table.order()
        ));
    }
    Ok(())
}

pub fn check_degree_sum(table: &CharacterTable) -> Check {
    for row in &table.rows {
        if row.values.first() != Some(&row.degree) {
            return Err(format!(
                "{}: degree differs from value at identity",
                row.label()
            ));
        }
    }
    let sum: i128 = table.rows.iter().map(|r| (r.degree as i128).pow(2)).sum();
    if sum != table.order() {
        return Err(format!(
            "sum of squared degrees {sum} != |G| = {}",
            table.order()
        ));
    }
    Ok(())
}

/// Σ_C |C| χ_a(C) χ_b(C) = |G| [a = b]. Characters here are real, so no
/// conjugation is needed.
pub fn check_row_orthogonality(table: &CharacterTable, exec: Execution) -> Check {
    let n = table.rows.len();
    // By Cauchy-Schwarz every partial sum is bounded by |G|, so i64 is
    // exact for the orders this crate can enumerate.
    let sizes: Vec<i64> = table.classes.iter().map(|c| c.size as i64).collect();
    let order = table.order() as i64;
    let failure = exec::map_range(exec, n as u64, |a| {
        let a = a as usize;
        let ra = &table.rows[a].values;
        (a..n).find_map(|b| {
            let rb = &table.rows[b].values;
            let ip: i64 = sizes
                .iter()
                .zip(ra.iter().zip(rb))
                .map(|(s, (x, y))| s * x * y)
                .sum();
            let want = if a == b { order } else { 0 };
            (ip != want).then(|| {
                format!(
                    "row orthogonality: <{}, {}> = {ip}, expected {want}",
                    table.rows[a].label(),
                    table.rows[b].label()
                )
            })
        })
    });
    failure.into_iter().flatten().next().map_or(Ok(()), Err)
}

/// Σ_χ χ(C) χ(C′) = |G|/|C| [C = C′].
pub fn check_column_orthogonality(table: &CharacterTable, exec: Execution) -> Check {
    let n = table.classes.len();
    let columns: Vec<Vec<i64>> = (0..n).map(|c| table.column(c)).collect();
    let order = table.order() as i64;
    let failure = exec::map_range(exec, n as u64, |a| {
        let a = a as usize;
        (a..n).find_map(|b| {
            let ip: i64 = columns[a].iter().zip(&columns[b]).map(|(x, y)| x * y).sum();
            let want = if a == b {
                order / table.classes[a].size as i64
            } else {
                0
            };
            (ip != want).then(|| {
                format!("column orthogonality: classes {a} and {b} give {ip}, expected {want}")
            })
        })
    });
    failure.into_iter().flatten().next().map_or(Ok(()), Err)
}

pub fn check_distinct_columns(table: &CharacterTable) -> Check {
    let mut seen = HashSet::new();
    for c in 0..table.classes.len() {
        if !seen.insert(table.column(c)) {
            return Err(format!("column {c} duplicates an earlier column"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{extraspecial, special_32};
    use crate::formclass::PairType;
    use crate::group::{conjugacy_classes_bruteforce, DEFAULT_ORACLE_CAP};
    use crate::quadmap::transfer;

    fn bv(s: &str) -> BitVec {
        BitVec::parse_bits(s).unwrap()
    }

    fn class_index(classes: &[ConjClass], v: &str, w: &str) -> usize {
        let g = GroupElement::new(bv(v), bv(w));
        classes.iter().position(|c| c.contains(&g)).unwrap()
    }

    #[test]
    fn fast_classes_of_order_32_example() {
        let q = special_32();
        let classes = classes_fast(&q).unwrap();
        assert_eq!(classes.len(), 14);
        let e1 = &classes[class_index(&classes, "100", "00")];
        assert_eq!(e1.size, 4);
        // (e₂, 0) and (e₂, f₁) together, (e₂, f₂) elsewhere.
        assert_eq!(
            class_index(&classes, "010", "00"),
            class_index(&classes, "010", "10")
        );
        assert_ne!(
            class_index(&classes, "010", "00"),
            class_index(&classes, "010", "01")
        );
        for c in classes.iter().filter(|c| c.rep_v.is_zero()) {
            assert_eq!(c.size, 1);
        }
    }

    #[test]
    fn fast_classes_match_bruteforce() {
        for q in [special_32(), extraspecial(2, PairType::Anisotropic)] {
            let fast: Vec<Vec<GroupElement>> = classes_fast(&q)
                .unwrap()
                .iter()
                .map(ConjClass::elements)
                .collect();
            let mut fast = fast;
            fast.sort_by(|a, b| a[0].cmp(&b[0]));
            let brute =
                conjugacy_classes_bruteforce(&GroupCtx::new(q), DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn linear_character_examples() {
        let q = special_32();
        let classes = classes_fast(&q).unwrap();
        let lin = linear_characters(&q, &classes);
        assert_eq!(lin.len(), 8);
        assert!(lin[0].values.iter().all(|&x| x == 1));
        for row in &lin {
            for (c, x) in classes.iter().zip(&row.values) {
                if c.rep_v.is_zero() {
                    assert_eq!(*x, 1);
                }
            }
        }
    }

    #[test]
    fn first_nonlinear_character_of_example() {
        let q = special_32();
        let classes = classes_fast(&q).unwrap();
        let t = transfer(&q, &Functional::new(bv("10"))).unwrap();
        let chi = nonlinear_character(&q, &t, 1, &classes).unwrap();
        let mut expected = vec![0i64; classes.len()];
        for (v, w, x) in [
            ("000", "00", 2),
            ("000", "10", -2),
            ("000", "01", 2),
            ("000", "11", -2),
            ("001", "00", 2),
            ("001", "10", -2),
        ] {
            expected[class_index(&classes, v, w)] = x;
        }
        assert_eq!(chi.values, expected);
        assert_eq!(chi.degree, 2);
    }

    #[test]
    fn nonlinear_centre_values() {
        let q = special_32();
        let ctx = GroupCtx::new(q.clone());
        for t in quadmap::all_transfers(&q).unwrap() {
            for i in 1..=t.character_count() {
                for w in BitVec::all(2) {
                    let g = GroupElement::new(BitVec::zero(3), w);
                    let want = if t.s.apply(&w) { -2 } else { 2 };
                    assert_eq!(nonlinear_value(&ctx, &t, i, &g), want);
                }
            }
        }
    }

    #[test]
    fn index_out_of_range() {
        let q = special_32();
        let classes = classes_fast(&q).unwrap();
        let t = transfer(&q, &Functional::new(bv("01"))).unwrap();
        for i in [0, 3] {
            assert!(matches!(
                nonlinear_character(&q, &t, i, &classes),
                Err(Error::IndexOutOfRange { max: 2, .. })
            ));
        }
    }

    #[test]
    fn table_of_example() {
        let table = build_table(&special_32()).unwrap();
        assert_eq!(table.rows.len(), 14);
        let degrees: Vec<i64> = table.rows.iter().map(|r| r.degree).collect();
        assert_eq!(degrees, [vec![1; 8], vec![2; 6]].concat());
    }

    #[test]
    fn zero_counts_match_radical_complement() {
        let q = special_32();
        let table = build_table(&q).unwrap();
        let n = table.order_log2;
        for (row, t) in table.rows[8..].iter().zip(
            quadmap::all_transfers(&q)
                .unwrap()
                .iter()
                .flat_map(|t| std::iter::repeat_n(t, t.character_count())),
        ) {
            let zeros: usize = row
                .values
                .iter()
                .zip(&table.classes)
                .filter(|(x, _)| **x == 0)
                .map(|(_, c)| c.size)
                .sum();
            assert_eq!(zeros, (1 << n) - (1 << (n - 2 * t.l)));
        }
    }

    #[test]
    fn extraspecial_tables_have_one_nonlinear_row() {
        for l in 1..=3 {
            for kind in [PairType::Hyperbolic, PairType::Anisotropic] {
                let table = build_table(&extraspecial(l, kind)).unwrap();
                let nonlinear: Vec<_> = table.rows.iter().filter(|r| r.degree > 1).collect();
                assert_eq!(nonlinear.len(), 1);
                assert_eq!(table.rows.len(), (1 << (2 * l)) + 1);
            }
        }
    }

    #[test]
    fn corrupted_table_fails_orthogonality() {
        let mut table = build_table(&special_32()).unwrap();
        table.rows[9].values[4] = -table.rows[9].values[4] + 2;
        assert!(check_row_orthogonality(&table, Execution::Sequential).is_err());
        assert!(matches!(
            verify_table(&table),
            Err(Error::VerificationFailed(_))
        ));
    }

    #[test]
    fn rejects_non_real_and_invalid() {
        assert!(matches!(
            build_table(&QuadMap::zero(2, 1)),
            Err(Error::InvalidSeed { .. })
        ));
    }
}
