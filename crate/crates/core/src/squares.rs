//! Sums of three squares.
//!
//! `n` is a sum of three squares unless `n = 4^s(8m+7)`. Eligible `n` are
//! decomposed constructively: write `n = 4^a·n₁` with `4 ∤ n₁`, set
//! `n₁ = 8m + r`, solve `m` against a small table of mixed square/triangular
//! patterns for the class `r`, map the pattern's indices to three roots of
//! `n₁`, then scale the roots by `2^a`.
//!
//! Each pattern rests on an index identity, for example
//! `8(t_x + t_y + t_z) + 3 = (2x+1)² + (2y+1)² + (2z+1)²`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::arith::{four_adic_split, is_square};
use crate::error::{check_cap, Error, Result};
use crate::form::{MixedForm, MixedTerm, VariableConstraint};
use crate::solver::find_representation;

/// Which rule produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Zero,
    /// Residue class `r` of the core mod 8 and the formula's line within it.
    Residue {
        class: u8,
        line: u8,
    },
    OracleFallback,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Zero => f.write_str("zero"),
            CaseTag::Residue { class, line } => write!(f, "8m+{class}/{line}"),
            CaseTag::OracleFallback => f.write_str("oracle-fallback"),
        }
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeSquareDecomp {
    pub n: u64,
    /// `x ≥ y ≥ z ≥ 0` with `x² + y² + z² = n`.
    pub roots: [u64; 3],
    pub case: CaseTag,
}

/// One line of the residue-class table: `m − shift = form(indices)` gives
/// the roots `roots(indices)` of `8m + class`.
pub struct Pattern {
    pub class: u8,
    pub line: u8,
    pub form: MixedForm,
    pub shift: u64,
    pub roots: fn(&[u64]) -> [u64; 3],
}

fn any() -> VariableConstraint {
    VariableConstraint::default()
}

fn pattern(
    class: u8,
    line: u8,
    terms: &[MixedTerm],
    constraints: &[VariableConstraint],
    shift: u64,
    roots: fn(&[u64]) -> [u64; 3],
) -> Pattern {
    let form =
        MixedForm::with_constraints(terms.to_vec(), constraints.to_vec()).expect("static pattern table is valid");
    Pattern {
        class,
        line,
        form,
        shift,
        roots,
    }
}

/// The pattern table, in the order patterns are tried within each class.
/// `line` is the formula's position in the classical display of the class.
pub fn patterns() -> &'static [Pattern] {
    static TABLE: OnceLock<Vec<Pattern>> = OnceLock::new();
    TABLE.get_or_init(|| {
        use MixedTerm as T;
        let (s, t) = (T::square, T::triangular);
        vec![
            // 8m+1
            pattern(1, 3, &[t(1), s(2)], &[any(), any()], 0, |i| [2 * i[0] + 1, 4 * i[1], 0]),
            pattern(
                1,
                2,
                &[t(1), s(2), s(2)],
                &[any(), any().at_least(2, 0), any().min(1)],
                0,
                |i| [2 * i[0] + 1, 4 * i[1], 4 * i[2]],
            ),
            // s_z + s_{z+1} = 4 t_z + 1
            pattern(
                1,
                1,
                &[t(1), t(4), t(4)],
                &[any(), any().at_least(2, 0), any()],
                1,
                |i| [2 * i[0] + 1, 2 * (2 * i[1] + 1), 2 * (2 * i[2] + 1)],
            ),
            // 8m+2
            pattern(2, 1, &[t(1), t(1)], &[any(), any().at_least(0, 0)], 0, |i| {
                [2 * i[0] + 1, 2 * i[1] + 1, 0]
            }),
            pattern(2, 2, &[s(2), t(1)], &[any().min(1), any()], 0, |i| {
                [4 * i[0], 2 * i[1] + 1, 1]
            }),
            pattern(
                2,
                3,
                &[t(1), t(1), s(2)],
                &[any().min(1), any().at_least(0, 0), any().min(1)],
                0,
                |i| [2 * i[0] + 1, 2 * i[1] + 1, 4 * i[2]],
            ),
            // 8m+3
            pattern(3, 1, &[t(1), t(1), t(1)], &[any(), any(), any()], 0, |i| {
                [2 * i[0] + 1, 2 * i[1] + 1, 2 * i[2] + 1]
            }),
            // 8m+5
            pattern(5, 3, &[t(1), t(4)], &[any(), any()], 0, |i| {
                [2 * i[0] + 1, 2 * (2 * i[1] + 1), 0]
            }),
            pattern(
                5,
                1,
                &[t(1), s(2), t(4)],
                &[any(), any().at_least(2, 1), any()],
                0,
                |i| [2 * i[0] + 1, 4 * i[1], 2 * (2 * i[2] + 1)],
            ),
            pattern(
                5,
                2,
                &[t(1), t(4), s(2)],
                &[any(), any().at_least(2, 0), any().min(1)],
                0,
                |i| [2 * i[0] + 1, 4 * i[1] + 2, 4 * i[2]],
            ),
            // 8m+6
            pattern(6, 2, &[t(4), t(1)], &[any(), any()], 0, |i| {
                [4 * i[0] + 2, 2 * i[1] + 1, 1]
            }),
            pattern(6, 3, &[t(1), t(1)], &[any().min(1), any().at_least(0, 0)], 0, |i| {
                [2 * i[0] + 1, 2 * i[1] + 1, 2]
            }),
            pattern(
                6,
                1,
                &[t(4), t(1), t(1)],
                &[any(), any().at_least(2, 0), any().min(1)],
                0,
                |i| [4 * i[0] + 2, 2 * i[1] + 1, 2 * i[2] + 1],
            ),
        ]
    })
}

/// `(s, m)` with `n = 4^s(8m+7)`, if `n` has that shape.
pub fn ineligibility_witness(n: u64) -> Option<(u32, u64)> {
    let split = four_adic_split(n).ok()?;
    (split.core % 8 == 7).then_some((split.exponent, split.core / 8))
}

/// True iff `n` is a sum of three squares, i.e. not of the form `4^s(8m+7)`.
pub fn is_eligible(n: u64) -> bool {
    ineligibility_witness(n).is_none()
}

fn sorted_desc(mut roots: [u64; 3]) -> [u64; 3] {
    roots.sort_unstable_by(|a, b| b.cmp(a));
    roots
}

fn sum_of_squares(roots: &[u64; 3]) -> Option<u64> {
    roots
        .iter()
        .try_fold(0u64, |acc, &r| r.checked_mul(r).and_then(|sq| acc.checked_add(sq)))
}

/// Decomposes an eligible `n ≤ 2^62` as `x² + y² + z²` with `x ≥ y ≥ z`.
pub fn decompose(n: u64) -> Result<ThreeSquareDecomp> {
    check_cap(n)?;
    if n == 0 {
        return Ok(ThreeSquareDecomp {
            n,
            roots: [0; 3],
            case: CaseTag::Zero,
        });
    }
    if let Some((s, m)) = ineligibility_witness(n) {
        return Err(Error::IneligibleNumber { n, s, m });
    }
    let split = four_adic_split(n)?;
    let class = (split.core % 8) as u8;
    let m = split.core / 8;

    let (core_roots, case) = patterns()
        .iter()
        .filter(|p| p.class == class && m >= p.shift)
        .find_map(|p| {
            let rep = find_representation(&p.form, m - p.shift)?;
            Some(((p.roots)(&rep.indices), CaseTag::Residue { class, line: p.line }))
        })
        .unwrap_or_else(|| {
            log::warn!(
                "no residue pattern matched core {} (class {class}); using direct search",
                split.core
            );
            (
                direct_search(split.core).expect("eligible core has a decomposition"),
                CaseTag::OracleFallback,
            )
        });

    let scale = 1u64 << split.exponent;
    let roots = sorted_desc(core_roots.map(|r| r * scale));
    assert_eq!(
        sum_of_squares(&roots),
        Some(n),
        "roots {roots:?} do not square-sum to {n} ({case})"
    );
    Ok(ThreeSquareDecomp { n, roots, case })
}

/// First `x ≥ y ≥ z` with `x² + y² + z² = n`, largest `x` first.
fn direct_search(n: u64) -> Option<[u64; 3]> {
    let top = n.isqrt();
    for x in (0..=top).rev() {
        let rest = n - x * x;
        if 3 * x * x < n {
            break;
        }
        let mut y = rest.isqrt().min(x);
        loop {
            if let Some(z) = is_square(rest - y * y).filter(|&z| z <= y) {
                return Some([x, y, z]);
            }
            if y == 0 || 2 * y * y < rest {
                break;
            }
            y -= 1;
        }
    }
    None
}

/// Ordered triples of nonnegative integers with `x² + y² + z² = n`.
pub fn r3_count(n: u64) -> u64 {
    let mut count = 0;
    let mut x = 0u64;
    while x * x <= n {
        let rest = n - x * x;
        let mut y = 0u64;
        while y * y <= rest {
            if is_square(rest - y * y).is_some() {
                count += 1;
            }
            y += 1;
        }
        x += 1;
    }
    count
}

/// Multisets `{x ≥ y ≥ z}` with `x² + y² + z² = n`; `allow_zero = false`
/// requires `z ≥ 1`.
pub fn p3_count(n: u64, allow_zero: bool) -> u64 {
    let min_z = u64::from(!allow_zero);
    let mut count = 0;
    let mut z = min_z;
    while 3 * z * z <= n {
        let mut y = z;
        while z * z + 2 * y * y <= n {
            if is_square(n - z * z - y * y).is_some() {
                count += 1;
            }
            y += 1;
        }
        z += 1;
    }
    count
}
