//! Named quadratic maps used throughout tests, benches and the CLI.

use crate::formclass::PairType;
use crate::gf2::BitMat;
use crate::quadmap::QuadMap;

/// q(x,y,z) = (x² + xy + y², z² + xz): a real special 2-group of order 32
/// with centre of order 4 and 14 conjugacy classes.
pub fn special_32() -> QuadMap {
    let mut u1 = BitMat::zeros(3, 3);
    u1.set(0, 0, true);
    u1.set(0, 1, true);
    u1.set(1, 1, true);
    let mut u2 = BitMat::zeros(3, 3);
    u2.set(0, 2, true);
    u2.set(2, 2, true);
    QuadMap::new(3, vec![u1, u2]).expect("upper triangular")
}

/// The canonical interchange document for [`special_32`].
pub const SPECIAL_32_DOCUMENT: &str = r#"{"dim_v": 3, "dim_w": 2,
 "forms": [{"rows": ["110","010","000"]},
           {"rows": ["001","000","001"]}]}"#;

/// The same map written with expressions instead of matrices.
pub const SPECIAL_32_EXPR_DOCUMENT: &str = r#"{"dim_v": 3, "dim_w": 2,
 "forms": [{"expr": "x0^2 + x0*x1 + x1^2"},
           {"expr": "x2^2 + x0*x2"}]}"#;

/// Regular form on F₂^{2l} whose group is the extraspecial group of order
/// 2^{2l+1} of the given type: Σ x_{2j}x_{2j+1}, plus x₀² + x₁² for the
/// anisotropic type.
pub fn extraspecial(l: usize, kind: PairType) -> QuadMap {
    let d = 2 * l;
    let mut u = BitMat::zeros(d, d);
    for j in 0..l {
        u.set(2 * j, 2 * j + 1, true);
    }
    if kind == PairType::Anisotropic && l > 0 {
        u.set(0, 0, true);
        u.set(1, 1, true);
    }
    QuadMap::new(d, vec![u]).expect("upper triangular")
}
