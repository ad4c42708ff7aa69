//! Representation search, counting and exception scans for mixed forms.
//!
//! Point queries walk the variables from last to first, each in ascending
//! index order, and resolve the first variable by a membership test on the
//! remainder. The first hit wins, so witnesses are reproducible.

mod bitset;
mod sieve;
mod universality;

use std::collections::HashSet;
use std::ops::ControlFlow;

pub use bitset::Bitset;
pub use sieve::{exception_set, exception_set_with, representable_set, ExceptionReport, ScanOptions, DEFAULT_CEILING};
pub use universality::{
    asymptotically_universal, kane_odd_square_check, kane_triangular_universal, CriterionPattern, Evidence,
    RelationCheck, TargetCheck, TwoAdicCheck, UniversalityStatus, UniversalityVerdict, KANE_TRIANGULAR_TARGETS,
    ODD_SQUARE_OFFSETS,
};

use crate::arith::{divisor_count_mod4, OddClass};
use crate::error::{check_cap, Error, Result};
use crate::form::{MixedForm, MixedTerm, Representation, TermKind, VariableConstraint};

/// Ascending `(index, value)` pairs of one generator, up to `bound`.
pub struct TermValues {
    term: MixedTerm,
    next: u64,
    step: u64,
    bound: u64,
}

impl Iterator for TermValues {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        let value = self.term.value(self.next).filter(|&v| v <= self.bound)?;
        let k = self.next;
        self.next += self.step;
        Some((k, value))
    }
}

pub fn term_values(kind: TermKind, bound: u64) -> TermValues {
    constrained_values(MixedTerm { coeff: 1, kind }, &VariableConstraint::default(), bound)
}

/// Values of `coeff·gen(k)` for the indices admitted by the unary part of
/// `constraint`.
pub fn constrained_values(term: MixedTerm, constraint: &VariableConstraint, bound: u64) -> TermValues {
    let next = first_admitted(constraint, constraint.min_index);
    TermValues {
        term,
        next,
        step: step_of(constraint),
        bound,
    }
}

fn first_admitted(c: &VariableConstraint, from: u64) -> u64 {
    let k = from.max(c.min_index);
    if c.parity.admits(k) {
        k
    } else {
        k + 1
    }
}

fn step_of(c: &VariableConstraint) -> u64 {
    match c.parity {
        crate::form::Parity::Any => 1,
        _ => 2,
    }
}

/// Precomputed walk order for one form.
pub(crate) struct Search<'a> {
    form: &'a MixedForm,
    // checks[level]: variables whose links become decidable once `level` is set
    checks: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(form: &'a MixedForm) -> Self {
        let mut checks = vec![Vec::new(); form.arity()];
        for (var, c) in form.constraints().iter().enumerate() {
            if let Some(level) = c.partners().chain(std::iter::once(var)).min() {
                if c.partners().next().is_some() {
                    checks[level].push(var);
                }
            }
        }
        Search { form, checks }
    }

    fn links_hold(&self, level: usize, indices: &[u64]) -> bool {
        let constraints = self.form.constraints();
        self.checks[level]
            .iter()
            .all(|&v| constraints[v].links_hold(indices[v], indices))
    }

    /// Calls `visit` on every constraint-satisfying index tuple hitting `n`.
    pub(crate) fn solutions<F>(&self, n: u64, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[u64]) -> ControlFlow<()>,
    {
        let mut indices = vec![0u64; self.form.arity()];
        self.descend(self.form.arity() - 1, n, &mut indices, &mut visit)
    }

    fn descend<F>(&self, level: usize, remaining: u64, indices: &mut [u64], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u64]) -> ControlFlow<()>,
    {
        let term = self.form.terms()[level];
        let c = &self.form.constraints()[level];
        if level == 0 {
            if let Some(k) = term.solve(remaining) {
                indices[0] = k;
                if c.admits(k) && self.links_hold(0, indices) {
                    return visit(indices);
                }
            }
            return ControlFlow::Continue(());
        }
        let mut from = c.min_index;
        if let Some(floor) = c.floor.filter(|f| f.var > level) {
            match indices[floor.var].checked_add(floor.offset) {
                Some(lo) => from = from.max(lo),
                None => return ControlFlow::Continue(()),
            }
        }
        let step = step_of(c);
        let mut k = first_admitted(c, from);
        while let Some(v) = term.value(k).filter(|&v| v <= remaining) {
            indices[level] = k;
            if self.links_hold(level, indices) {
                self.descend(level - 1, remaining - v, indices, visit)?;
            }
            k += step;
        }
        ControlFlow::Continue(())
    }
}

/// First constraint-satisfying solution of `form = n` in walk order, if any.
pub fn find_representation(form: &MixedForm, n: u64) -> Option<Representation> {
    let mut found = None;
    let _ = Search::new(form).solutions(n, |indices| {
        found = Some(indices.to_vec());
        ControlFlow::Break(())
    });
    found.map(|indices| {
        assert_eq!(
            form.evaluate(&indices),
            Some(n),
            "unsound witness {indices:?} for {form} = {n}"
        );
        assert!(
            form.satisfies(&indices),
            "witness {indices:?} violates constraints of {form}"
        );
        Representation { indices, value: n }
    })
}

/// Number of solutions of `form = n` over nonnegative indices.
///
/// `ordered = false` identifies solutions that differ only by permuting
/// terms of the same kind and coefficient.
pub fn count_representations(form: &MixedForm, n: u64, ordered: bool) -> u64 {
    let search = Search::new(form);
    if ordered {
        let mut count = 0u64;
        let _ = search.solutions(n, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        return count;
    }
    let groups = interchangeable_groups(form);
    let mut seen = HashSet::new();
    let _ = search.solutions(n, |indices| {
        let key: Vec<u64> = groups
            .iter()
            .flat_map(|group| {
                let mut part: Vec<u64> = group.iter().map(|&v| indices[v]).collect();
                part.sort_unstable();
                part
            })
            .collect();
        seen.insert(key);
        ControlFlow::Continue(())
    });
    seen.len() as u64
}

fn interchangeable_groups(form: &MixedForm) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (var, term) in form.terms().iter().enumerate() {
        match groups.iter_mut().find(|g| form.terms()[g[0]] == *term) {
            Some(group) => group.push(var),
            None => groups.push(vec![var]),
        }
    }
    groups
}

/// `d₁(4n+1) − d₃(4n+1)`, the number of ordered pairs `(x, y)` of nonnegative
/// indices with `t_x + t_y = n`.
pub fn ewell_t2(n: u64) -> Result<u64> {
    let m = check_cap(n)?
        .checked_mul(4)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow)?;
    Ok(divisor_count_mod4(m, OddClass::One)? - divisor_count_mod4(m, OddClass::Three)?)
}
