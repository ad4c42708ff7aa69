//! Published form lists used by the verification batteries.

use crate::form::{parse_form, MixedForm, NamedPredicate, Parity, VariableConstraint};

/// `(a, b, c)` such that `a s_x + b s_y + c t_z` (with `a ≤ b`) is universal.
pub const UNIVERSAL_SST: [[u64; 3]; 10] = [
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 1],
    [1, 2, 2],
    [1, 2, 4],
    [1, 3, 1],
    [1, 4, 1],
    [1, 4, 2],
    [1, 8, 1],
    [2, 2, 1],
];

/// `(a, b, c)` such that `a s_x + b t_y + c t_z` (with `b ≥ c`) is universal.
pub const UNIVERSAL_STT: [[u64; 3]; 15] = [
    [1, 1, 1],
    [1, 2, 1],
    [1, 2, 2],
    [1, 3, 1],
    [1, 4, 1],
    [1, 4, 2],
    [1, 5, 2],
    [1, 6, 1],
    [1, 8, 1],
    [2, 1, 1],
    [2, 2, 1],
    [2, 4, 1],
    [3, 2, 1],
    [4, 1, 1],
    [4, 2, 1],
];

pub fn sst_form([a, b, c]: [u64; 3]) -> MixedForm {
    parse_form(&format!("{a}s+{b}s+{c}t")).expect("valid coefficients")
}

pub fn stt_form([a, b, c]: [u64; 3]) -> MixedForm {
    parse_form(&format!("{a}s+{b}t+{c}t")).expect("valid coefficients")
}

pub fn ttt_form([a, b, c]: [u64; 3]) -> MixedForm {
    parse_form(&format!("{a}t+{b}t+{c}t")).expect("valid coefficients")
}

/// Almost universal but not universal forms `a s + b s + c t` with
/// `a + b + c ≤ 10`.
pub const ALMOST_UNIVERSAL_SST: [&str; 11] = [
    "s+2s+3t", "2s+4s+t", "s+6s+t", "s+s+5t", "2s+3s+2t", "3s+4s+t", "s+2s+6t", "s+5s+3t", "2s+4s+3t", "4s+4s+t",
    "s+4s+5t",
];

/// Almost universal but not universal forms `a s + b t + c t` with
/// `a + b + c ≤ 10`, each with its displayed equivalent if one is given.
pub const ALMOST_UNIVERSAL_STT: [(&str, Option<&str>); 11] = [
    ("5s+t+t", Some("s+5s+2t")),
    ("5s+2t+2t", Some("2s+5s+4t")),
    ("s+4t+2t", None),
    ("8s+t+t", Some("s+8s+2t")),
    ("2s+3t+2t", None),
    ("3s+4t+2t", None),
    ("2s+5t+t", None),
    ("3s+5t+t", None),
    ("5s+4t+t", None),
    ("4s+4t+t", None),
    ("5s+3t+2t", None),
];

/// Asymptotically universal but not universal forms `a t + b t + c t` with
/// `a + b + c ≤ 10`, each with its displayed equivalent if one is given.
pub const ASYMPTOTIC_TTT: [(&str, Option<&str>); 6] = [
    ("t+4t+4t", Some("4s+8t+t")),
    ("2t+3t+4t", None),
    ("t+4t+5t", None),
    ("t+t+8t", Some("s+8t+2t")),
    ("2t+2t+5t", Some("2s+4t+5t")),
    ("t+2t+6t", None),
];

/// Every form text displayed in the three lists above, equivalents included.
pub fn listed_almost_universal() -> Vec<&'static str> {
    let pairs = ALMOST_UNIVERSAL_STT.iter().chain(ASYMPTOTIC_TTT.iter());
    ALMOST_UNIVERSAL_SST
        .iter()
        .copied()
        .chain(pairs.flat_map(|&(f, eq)| std::iter::once(f).chain(eq)))
        .collect()
}

/// Conjectured complete exception sets, verbatim.
pub const CONJECTURED_EXCEPTIONS: [(&str, &[u64]); 25] = [
    ("s+2s+3t", &[23]),
    ("2s+4s+t", &[20]),
    ("s+5s+2t", &[19]),
    ("s+6s+t", &[47]),
    ("s+s+5t", &[3, 11, 12, 27, 129, 138, 273]),
    ("2s+3s+2t", &[1, 19, 43, 94]),
    ("2s+5s+t", &[4, 27]),
    ("3s+4s+t", &[2, 11, 23, 50, 116, 135, 138]),
    ("s+2s+6t", &[5, 13, 46, 161]),
    ("8s+t+t", &[5, 40, 217]),
    ("s+8s+2t", &[5, 40, 217]),
    ("2s+3t+2t", &[1, 16]),
    ("2s+5t+t", &[4]),
    ("4s+3t+t", &[2, 11, 27, 38, 86, 93, 188, 323]),
    ("3s+5t+t", &[2, 7]),
    ("3s+4t+2t", &[1, 8, 11, 25]),
    ("4s+4t+t", &[2, 108]),
    ("6s+2t+t", &[4]),
    ("5s+4t+t", &[2, 16, 31]),
    ("5s+3t+2t", &[1, 4, 13, 19, 27, 46, 73, 97, 111, 123, 151, 168]),
    ("2t+2t+5t", &[1, 3, 10, 16, 28, 43, 46, 85, 169, 175, 211, 223]),
    ("2s+4t+5t", &[1, 3, 10, 16, 28, 43, 46, 85, 169, 175, 211, 223]),
    ("t+2t+6t", &[4, 50]),
    ("2t+3t+4t", &[1, 8, 31]),
    ("t+4t+5t", &[2]),
];

/// Universal ternary examples: `t+t+2s`, `t+t+t`, `t+2s+4t`, `4t+t+t`.
pub const UNIVERSAL_EXAMPLES: [&str; 4] = ["t+t+2s", "t+t+t", "t+2s+4t", "4t+t+t"];

/// `s_x + t_y + t_z` with `x` even: represents every natural number.
pub fn even_square_two_triangular() -> MixedForm {
    parse_form("s+t+t")
        .and_then(|f| f.constrain(0, VariableConstraint::default().parity(Parity::Even)))
        .expect("valid form")
}

/// `s_x + s_y + t_z` with `x ≢ y (mod 2)` or `x = y > 0`: represents every
/// positive integer.
pub fn parity_clause_form() -> MixedForm {
    parse_form("s+s+t")
        .and_then(|f| {
            f.constrain(
                0,
                VariableConstraint::default().paired(NamedPredicate::DistinctParityOrEqualPositive, 1),
            )
        })
        .expect("valid form")
}

/// Ordered positive triples with sum at most `max_sum`.
pub fn triples_with_sum_at_most(max_sum: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 1..=max_sum {
        for b in 1..=max_sum.saturating_sub(a) {
            for c in 1..=max_sum.saturating_sub(a + b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}
