//! Mixed sums of squares and triangular numbers.
//!
//! A form is a list of weighted terms `c·s_x` or `c·t_x`, one variable per
//! term, written as text like `s+2s+3t`. Indices range over the nonnegative
//! integers: `s_{-k} = s_k` and `t_{-k} = t_{k-1}`, so anything an integer
//! index can represent is already reached with a nonnegative one.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{is_square, is_triangular, square, triangular};
use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TermKind {
    Square,
    Triangular,
}

impl TermKind {
    /// `s_k = k²` or `t_k = k(k+1)/2`.
    pub fn generate(self, k: u64) -> Option<u64> {
        match self {
            TermKind::Square => square(k),
            TermKind::Triangular => triangular(k),
        }
    }

    /// Inverse of [`generate`](Self::generate).
    pub fn index_of(self, value: u64) -> Option<u64> {
        match self {
            TermKind::Square => is_square(value),
            TermKind::Triangular => is_triangular(value),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            TermKind::Square => 's',
            TermKind::Triangular => 't',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MixedTerm {
    pub coeff: u64,
    pub kind: TermKind,
}

impl MixedTerm {
    pub fn square(coeff: u64) -> Self {
        MixedTerm {
            coeff,
            kind: TermKind::Square,
        }
    }

    pub fn triangular(coeff: u64) -> Self {
        MixedTerm {
            coeff,
            kind: TermKind::Triangular,
        }
    }

    pub fn value(&self, index: u64) -> Option<u64> {
        self.kind.generate(index)?.checked_mul(self.coeff)
    }

    /// The index `k` with `coeff·gen(k) = value`, if any.
    pub fn solve(&self, value: u64) -> Option<u64> {
        if value % self.coeff != 0 {
            return None;
        }
        self.kind.index_of(value / self.coeff)
    }
}

impl fmt::Display for MixedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{}", self.coeff)?;
        }
        write!(f, "{}", self.kind.symbol())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    #[default]
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, k: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => k % 2 == 0,
            Parity::Odd => k % 2 == 1,
        }
    }
}

/// Closed catalog of pairwise index predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedPredicate {
    /// `x ≢ y (mod 2)` or `x = y > 0`.
    #[serde(rename = "distinct-parity-or-equal-positive")]
    DistinctParityOrEqualPositive,
}

impl NamedPredicate {
    pub fn holds(self, x: u64, y: u64) -> bool {
        match self {
            NamedPredicate::DistinctParityOrEqualPositive => (x + y) % 2 == 1 || (x == y && x > 0),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            NamedPredicate::DistinctParityOrEqualPositive => "distinct-parity-or-equal-positive",
        }
    }
}

impl FromStr for NamedPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distinct-parity-or-equal-positive" => Ok(NamedPredicate::DistinctParityOrEqualPositive),
            other => Err(Error::Constraint {
                var: 0,
                message: format!("unknown predicate `{other}`"),
            }),
        }
    }
}

/// `index[self] ≥ index[var] + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IndexFloor {
    pub var: usize,
    pub offset: u64,
}

/// A named predicate evaluated on `(index[self], index[partner])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PairPredicate {
    pub predicate: NamedPredicate,
    pub partner: usize,
}

/// Domain restriction for one variable. The default is the full nonnegative
/// range; every field only narrows it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct VariableConstraint {
    pub min_index: u64,
    pub parity: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floor: Option<IndexFloor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairPredicate>,
}

impl VariableConstraint {
    pub fn min(mut self, min_index: u64) -> Self {
        self.min_index = min_index;
        self
    }

    pub fn parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn at_least(mut self, var: usize, offset: u64) -> Self {
        self.floor = Some(IndexFloor { var, offset });
        self
    }

    pub fn paired(mut self, predicate: NamedPredicate, partner: usize) -> Self {
        self.pair = Some(PairPredicate { predicate, partner });
        self
    }

    pub fn is_default(&self) -> bool {
        *self == VariableConstraint::default()
    }

    /// Checks that involve only this variable.
    pub fn admits(&self, k: u64) -> bool {
        k >= self.min_index && self.parity.admits(k)
    }

    /// Variables this constraint refers to, besides its own.
    pub fn partners(&self) -> impl Iterator<Item = usize> {
        self.floor
            .map(|f| f.var)
            .into_iter()
            .chain(self.pair.map(|p| p.partner))
    }

    /// Checks against the other variables, given this variable's index `k`.
    pub fn links_hold(&self, k: u64, indices: &[u64]) -> bool {
        if let Some(floor) = self.floor {
            match indices[floor.var].checked_add(floor.offset) {
                Some(lo) if k >= lo => {}
                _ => return false,
            }
        }
        if let Some(pair) = self.pair {
            if !pair.predicate.holds(k, indices[pair.partner]) {
                return false;
            }
        }
        true
    }

    fn remap(mut self, new_position: &[usize]) -> Self {
        if let Some(floor) = self.floor.as_mut() {
            floor.var = new_position[floor.var];
        }
        if let Some(pair) = self.pair.as_mut() {
            pair.partner = new_position[pair.partner];
        }
        self
    }
}

/// A solution of `form(indices) = value`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Representation {
    pub indices: Vec<u64>,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedForm {
    terms: Vec<MixedTerm>,
    constraints: Vec<VariableConstraint>,
}

impl MixedForm {
    pub fn new(terms: Vec<MixedTerm>) -> Result<Self> {
        let constraints = vec![VariableConstraint::default(); terms.len()];
        Self::with_constraints(terms, constraints)
    }

    pub fn with_constraints(terms: Vec<MixedTerm>, constraints: Vec<VariableConstraint>) -> Result<Self> {
        if terms.is_empty() || terms.len() > MAX_TERMS {
            return Err(Error::Arity(terms.len()));
        }
        if constraints.len() != terms.len() {
            return Err(Error::Constraint {
                var: constraints.len().min(terms.len()),
                message: format!("{} constraint slots for {} terms", constraints.len(), terms.len()),
            });
        }
        for (var, term) in terms.iter().enumerate() {
            if term.coeff == 0 {
                return Err(Error::Constraint {
                    var,
                    message: "coefficient must be positive".into(),
                });
            }
        }
        for (var, c) in constraints.iter().enumerate() {
            for partner in c.partners() {
                if partner >= terms.len() || partner == var {
                    return Err(Error::Constraint {
                        var,
                        message: format!("refers to invalid variable {partner}"),
                    });
                }
            }
        }
        Ok(MixedForm { terms, constraints })
    }

    /// Replaces the constraint on one variable.
    pub fn constrain(mut self, var: usize, constraint: VariableConstraint) -> Result<Self> {
        if var >= self.terms.len() {
            return Err(Error::Constraint {
                var,
                message: "no such variable".into(),
            });
        }
        self.constraints[var] = constraint;
        Self::with_constraints(self.terms, self.constraints)
    }

    pub fn terms(&self) -> &[MixedTerm] {
        &self.terms
    }

    pub fn constraints(&self) -> &[VariableConstraint] {
        &self.constraints
    }

    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficients(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.coeff).collect()
    }

    /// Kinds as a string such as `"sst"`, in term order.
    pub fn kind_pattern(&self) -> String {
        self.terms.iter().map(|t| t.kind.symbol()).collect()
    }

    pub fn is_unconstrained(&self) -> bool {
        self.constraints.iter().all(VariableConstraint::is_default)
    }

    pub fn evaluate(&self, indices: &[u64]) -> Option<u64> {
        if indices.len() != self.terms.len() {
            return None;
        }
        self.terms
            .iter()
            .zip(indices)
            .try_fold(0u64, |acc, (term, &k)| acc.checked_add(term.value(k)?))
    }

    pub fn satisfies(&self, indices: &[u64]) -> bool {
        indices.len() == self.terms.len()
            && self
                .constraints
                .iter()
                .zip(indices)
                .all(|(c, &k)| c.admits(k) && c.links_hold(k, indices))
    }

    /// Squares before triangular terms, coefficients ascending within a kind.
    /// Stable, so equal terms keep their relative order; constraints travel
    /// with their terms.
    pub fn canonicalize(&self) -> MixedForm {
        let mut order: Vec<usize> = (0..self.terms.len()).collect();
        order.sort_by_key(|&i| (self.terms[i].kind, self.terms[i].coeff));
        let mut new_position = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_position[old] = new;
        }
        MixedForm {
            terms: order.iter().map(|&i| self.terms[i]).collect(),
            constraints: order
                .iter()
                .map(|&i| self.constraints[i].remap(&new_position))
                .collect(),
        }
    }
}

impl fmt::Display for MixedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl Serialize for MixedForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_unconstrained() {
            return serializer.serialize_str(&self.to_string());
        }
        let mut s = serializer.serialize_struct("MixedForm", 2)?;
        s.serialize_field("text", &self.to_string())?;
        s.serialize_field("constraints", &self.constraints)?;
        s.end()
    }
}

impl FromStr for MixedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_form(s)
    }
}

/// Parses `[coeff]s` / `[coeff]t` terms joined by `+`. Whitespace is ignored
/// and terms keep their written order.
pub fn parse_form(text: &str) -> Result<MixedForm> {
    let syntax = |position: usize, message: &str| Error::Syntax {
        position,
        message: message.to_string(),
    };
    let mut chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).peekable();
    let mut terms = Vec::new();
    loop {
        let start = chars.peek().map_or(text.len(), |&(i, _)| i);
        let mut coeff: Option<u64> = None;
        while let Some(&(i, c)) = chars.peek() {
            let Some(d) = c.to_digit(10) else { break };
            coeff = Some(
                coeff
                    .unwrap_or(0)
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u64))
                    .ok_or_else(|| syntax(i, "coefficient overflows"))?,
            );
            chars.next();
        }
        let kind = match chars.next() {
            Some((_, 's')) => TermKind::Square,
            Some((_, 't')) => TermKind::Triangular,
            Some((i, c)) => return Err(syntax(i, &format!("expected `s` or `t`, found `{c}`"))),
            None => return Err(syntax(text.len(), "expected a term")),
        };
        let coeff = coeff.unwrap_or(1);
        if coeff == 0 {
            return Err(syntax(start, "coefficient must be positive"));
        }
        terms.push(MixedTerm { coeff, kind });
        match chars.next() {
            None => break,
            Some((_, '+')) => {}
            Some((i, c)) => return Err(syntax(i, &format!("expected `+`, found `{c}`"))),
        }
    }
    MixedForm::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use TermKind::{Square as S, Triangular as T};

    fn kinds(form: &MixedForm) -> Vec<(u64, TermKind)> {
        form.terms().iter().map(|t| (t.coeff, t.kind)).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(kinds(&parse_form("s+2s+3t").unwrap()), vec![(1, S), (2, S), (3, T)]);
        assert_eq!(kinds(&parse_form("t+t+t").unwrap()), vec![(1, T), (1, T), (1, T)]);
        assert_eq!(kinds(&parse_form(" 12 s +\t t ").unwrap()), vec![(12, S), (1, T)]);
        assert!(matches!(parse_form("0s+t"), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn parse_errors_carry_position() {
        for (text, position) in [
            ("", 0),
            ("s+", 2),
            ("s+x", 2),
            ("s t", 2),
            ("+s", 0),
            ("2", 1),
            ("s+00t", 2),
        ] {
            match parse_form(text) {
                Err(Error::Syntax { position: p, .. }) => assert_eq!(p, position, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert_eq!(parse_form("s+s+s+s+s+s+s+s+s"), Err(Error::Arity(9)));
        assert!(parse_form("99999999999999999999s").is_err());
    }

    #[test]
    fn canonicalize_examples() {
        for (input, want) in [("3t+s+2s", "s+2s+3t"), ("t+s", "s+t"), ("2t+t", "t+2t")] {
            assert_eq!(parse_form(input).unwrap().canonicalize().to_string(), want);
        }
    }

    #[test]
    fn canonicalize_moves_constraints_with_terms() {
        // 4t_y + t_x + 2s_z with y ≥ z + 1
        let form = MixedForm::with_constraints(
            vec![MixedTerm::triangular(4), MixedTerm::triangular(1), MixedTerm::square(2)],
            vec![
                VariableConstraint::default().at_least(2, 1),
                VariableConstraint::default(),
                VariableConstraint::default().min(1),
            ],
        )
        .unwrap();
        let canon = form.canonicalize();
        assert_eq!(canon.to_string(), "2s+t+4t");
        assert_eq!(canon.constraints()[0].min_index, 1);
        assert_eq!(canon.constraints()[2].floor, Some(IndexFloor { var: 0, offset: 1 }));
        // same solutions, permuted
        assert!(form.satisfies(&[3, 0, 2]));
        assert!(canon.satisfies(&[2, 0, 3]));
        assert!(!canon.satisfies(&[3, 0, 3]));
    }

    #[test]
    fn constraint_validation() {
        let terms = vec![MixedTerm::square(1), MixedTerm::square(1)];
        let bad = vec![
            VariableConstraint::default().at_least(5, 0),
            VariableConstraint::default(),
        ];
        assert!(MixedForm::with_constraints(terms.clone(), bad).is_err());
        let selfref = vec![
            VariableConstraint::default().at_least(0, 0),
            VariableConstraint::default(),
        ];
        assert!(MixedForm::with_constraints(terms.clone(), selfref).is_err());
        assert!(MixedForm::with_constraints(terms, vec![VariableConstraint::default()]).is_err());
    }

    #[test]
    fn named_predicate() {
        let p = NamedPredicate::DistinctParityOrEqualPositive;
        assert!(p.holds(0, 1));
        assert!(p.holds(3, 3));
        assert!(!p.holds(0, 0));
        assert!(!p.holds(2, 4));
        assert_eq!(p.tag().parse::<NamedPredicate>().unwrap(), p);
        assert!("other".parse::<NamedPredicate>().is_err());
    }

    fn arb_form() -> impl Strategy<Value = MixedForm> {
        prop::collection::vec((1u64..40, prop::bool::ANY), 1..=MAX_TERMS).prop_map(|ts| {
            let terms = ts
                .into_iter()
                .map(|(c, sq)| {
                    if sq {
                        MixedTerm::square(c)
                    } else {
                        MixedTerm::triangular(c)
                    }
                })
                .collect();
            MixedForm::new(terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn render_parse_fixed_point(form in arb_form()) {
            let text = form.to_string();
            let reparsed = parse_form(&text).unwrap();
            prop_assert_eq!(&reparsed, &form);
            prop_assert_eq!(reparsed.to_string(), text);
        }

        #[test]
        fn canonicalize_idempotent_and_preserves_terms(form in arb_form(), min in 0u64..3) {
            let form = form.constrain(0, VariableConstraint::default().min(min)).unwrap();
            let once = form.canonicalize();
            prop_assert_eq!(&once.canonicalize(), &once);
            let mut before: Vec<_> = form.terms().iter().zip(form.constraints()).map(|(t, c)| (t.kind, t.coeff, c.min_index)).collect();
            let mut after: Vec<_> = once.terms().iter().zip(once.constraints()).map(|(t, c)| (t.kind, t.coeff, c.min_index)).collect();
            before.sort();
            after.sort();
            prop_assert_eq!(before, after);
            prop_assert!(once.terms().windows(2).all(|w| (w[0].kind, w[0].coeff) <= (w[1].kind, w[1].coeff)));
        }
    }
}
