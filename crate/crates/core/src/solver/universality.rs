//! Universality deciders.
//!
//! Two finite checks: a sum of triangular numbers is universal iff it hits
//! 1, 2, 4, 5 and 8; an odd-index diagonal square form with coefficient sum
//! `S` hits every `8n + S` iff it hits `S + 8, S + 16, S + 32, S + 40, S + 64`.
//!
//! Three criteria decide asymptotic universality of primitive ternary forms
//! with at least one triangular term, through the relation `a R m` on odd
//! parts and a 2-adic side condition.

use serde::Serialize;

use super::find_representation;
use crate::arith::{gcd_all, residue_rel, two_adic_split, v2};
use crate::error::{Error, Result};
use crate::form::{MixedForm, MixedTerm, Parity, Representation, TermKind, VariableConstraint};

pub const KANE_TRIANGULAR_TARGETS: [u64; 5] = [1, 2, 4, 5, 8];
pub const ODD_SQUARE_OFFSETS: [u64; 5] = [8, 16, 32, 40, 64];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UniversalityStatus {
    /// Represents every nonnegative integer.
    Universal,
    /// Represents every integer of the residue class named in the evidence.
    UniversalOnClass,
    /// A finite check failed; the missed target is in the evidence.
    NotUniversal,
    AlmostUniversal,
    AsymptoticallyUniversal,
    NotAsymptoticallyUniversal,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetCheck {
    pub n: u64,
    pub witness: Option<Representation>,
}

/// One evaluated `a R m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub a: i64,
    pub m: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoAdicCheck {
    pub condition: &'static str,
    pub holds: bool,
}

/// Kind pattern of a ternary form after canonical ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionPattern {
    /// `a t_x + b t_y + c t_z`
    Ttt,
    /// `a s_x + b t_y + c t_z`
    Stt,
    /// `a s_x + b s_y + c t_z`
    Sst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    FiniteCheck {
        targets: Vec<TargetCheck>,
        /// `(modulus, residue)` when the verdict covers one residue class.
        #[serde(skip_serializing_if = "Option::is_none")]
        class: Option<(u64, u64)>,
    },
    Criterion {
        pattern: CriterionPattern,
        coeffs: [u64; 3],
        relations: [RelationCheck; 3],
        #[serde(skip_serializing_if = "Option::is_none")]
        two_adic: Option<TwoAdicCheck>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityVerdict {
    pub status: UniversalityStatus,
    pub evidence: Evidence,
}

fn check_targets(form: &MixedForm, targets: impl IntoIterator<Item = u64>) -> Vec<TargetCheck> {
    targets
        .into_iter()
        .map(|n| TargetCheck {
            n,
            witness: find_representation(form, n),
        })
        .collect()
}

fn form_from(coeffs: &[u64], term: fn(u64) -> MixedTerm) -> Result<MixedForm> {
    if coeffs.is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    MixedForm::new(coeffs.iter().map(|&c| term(c)).collect())
}

/// Finite universality check for `Σ bᵢ t_{xᵢ}`.
pub fn kane_triangular_universal(coeffs: &[u64]) -> Result<UniversalityVerdict> {
    let form = form_from(coeffs, MixedTerm::triangular)?;
    let targets = check_targets(&form, KANE_TRIANGULAR_TARGETS);
    let status = if targets.iter().all(|t| t.witness.is_some()) {
        UniversalityStatus::Universal
    } else {
        UniversalityStatus::NotUniversal
    };
    Ok(UniversalityVerdict {
        status,
        evidence: Evidence::FiniteCheck { targets, class: None },
    })
}

/// Finite check that `Σ bᵢ s_{xᵢ}` with every `xᵢ` odd represents the whole
/// class `8n + Σ bᵢ`.
pub fn kane_odd_square_check(coeffs: &[u64]) -> Result<UniversalityVerdict> {
    let form = form_from(coeffs, MixedTerm::square)?;
    let odd = VariableConstraint::default().parity(Parity::Odd);
    let form = MixedForm::with_constraints(form.terms().to_vec(), vec![odd; coeffs.len()])?;
    let sum = coeffs
        .iter()
        .try_fold(0u64, |acc, &c| acc.checked_add(c))
        .ok_or(Error::Overflow)?;
    let targets = ODD_SQUARE_OFFSETS
        .iter()
        .map(|&o| sum.checked_add(o).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    let targets = check_targets(&form, targets);
    let status = if targets.iter().all(|t| t.witness.is_some()) {
        UniversalityStatus::UniversalOnClass
    } else {
        UniversalityStatus::NotUniversal
    };
    Ok(UniversalityVerdict {
        status,
        evidence: Evidence::FiniteCheck {
            targets,
            class: Some((8, sum % 8)),
        },
    })
}

fn relation(a: i64, m: u64) -> Result<RelationCheck> {
    let odd = two_adic_split(m)?.odd_part;
    Ok(RelationCheck {
        a,
        m: odd,
        holds: residue_rel(a, odd)?,
    })
}

/// `-k·x·y` as a signed value.
fn neg_product(k: u64, x: u64, y: u64) -> Result<i64> {
    k.checked_mul(x)
        .and_then(|p| p.checked_mul(y))
        .and_then(|p| i64::try_from(p).ok())
        .map(|p| -p)
        .ok_or(Error::Overflow)
}

/// Asymptotic-universality criterion for a primitive ternary form with at
/// least one triangular term.
pub fn asymptotically_universal(form: &MixedForm) -> Result<UniversalityVerdict> {
    if form.arity() != 3 {
        return Err(Error::TernaryRequired(form.arity()));
    }
    if !form.is_unconstrained() {
        return Err(Error::ConstrainedForm);
    }
    let coeffs = form.coefficients();
    if gcd_all(&coeffs) != 1 {
        return Err(Error::NotPrimitive(coeffs));
    }
    let canon = form.canonicalize();
    let [a, b, c] = canon.coefficients()[..] else {
        unreachable!()
    };
    let squares = canon.terms().iter().filter(|t| t.kind == TermKind::Square).count();

    let (pattern, relations, two_adic) = match squares {
        0 => (
            CriterionPattern::Ttt,
            [
                relation(neg_product(1, b, c)?, a)?,
                relation(neg_product(1, a, c)?, b)?,
                relation(neg_product(1, a, b)?, c)?,
            ],
            None,
        ),
        1 => (
            CriterionPattern::Stt,
            [
                relation(neg_product(1, b, c)?, a)?,
                relation(neg_product(2, a, c)?, b)?,
                relation(neg_product(2, a, b)?, c)?,
            ],
            Some(TwoAdicCheck {
                condition: "4 ∤ b or 4 ∤ c",
                holds: b % 4 != 0 || c % 4 != 0,
            }),
        ),
        2 => (
            CriterionPattern::Sst,
            [
                relation(neg_product(2, b, c)?, a)?,
                relation(neg_product(2, a, c)?, b)?,
                relation(neg_product(1, a, b)?, c)?,
            ],
            Some(TwoAdicCheck {
                condition: "4 ∤ c, or 4 ‖ c and 2 ‖ ab",
                holds: c % 4 != 0 || (v2(c)? == 2 && v2(a.checked_mul(b).ok_or(Error::Overflow)?)? == 1),
            }),
        ),
        _ => return Err(Error::UncoveredPattern(canon.kind_pattern())),
    };

    let holds = relations.iter().all(|r| r.holds) && two_adic.as_ref().is_none_or(|t| t.holds);
    Ok(UniversalityVerdict {
        status: if holds {
            UniversalityStatus::AsymptoticallyUniversal
        } else {
            UniversalityStatus::NotAsymptoticallyUniversal
        },
        evidence: Evidence::Criterion {
            pattern,
            coeffs: [a, b, c],
            relations,
            two_adic,
        },
    })
}
