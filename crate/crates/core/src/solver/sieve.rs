//! Exception-set scans.
//!
//! Variables tied together by a pairwise constraint form a component whose
//! reachable sums are enumerated directly. Independent components are then
//! combined by sumset steps on a bitset: for a ternary form without links this
//! is the table of two-term partial sums probed with every value of the third
//! term.

use serde::Serialize;

use super::bitset::Bitset;
use super::{constrained_values, find_representation};
use crate::error::{Error, Result};
use crate::form::{MixedForm, Representation};

/// Largest scan bound accepted unless overridden.
pub const DEFAULT_CEILING: u64 = 100_000_000;

const AUDIT_SAMPLES: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub ceiling: u64,
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            ceiling: DEFAULT_CEILING,
            threads: 1,
        }
    }
}

/// Integers `0..=bound` the form misses, plus a sample of point-query
/// witnesses for integers it hits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionReport {
    pub form: MixedForm,
    pub bound: u64,
    pub exceptions: Vec<u64>,
    pub witnesses: Vec<Representation>,
}

pub fn exception_set(form: &MixedForm, bound: u64) -> Result<ExceptionReport> {
    exception_set_with(form, bound, &ScanOptions::default())
}

pub fn exception_set_with(form: &MixedForm, bound: u64, options: &ScanOptions) -> Result<ExceptionReport> {
    let reachable = representable_set(form, bound, options)?;
    let exceptions: Vec<u64> = reachable.zeros().map(|n| n as u64).collect();

    let step = ((bound + 1) / AUDIT_SAMPLES).max(1);
    let mut witnesses = Vec::new();
    let mut n = 0;
    while n <= bound {
        if let Some(hit) = (n..=bound.min(n + step - 1)).find(|&m| reachable.get(m as usize)) {
            let rep = find_representation(form, hit)
                .unwrap_or_else(|| panic!("sieve marks {hit} representable by {form} but search finds nothing"));
            witnesses.push(rep);
        }
        n += step;
    }

    Ok(ExceptionReport {
        form: form.clone(),
        bound,
        exceptions,
        witnesses,
    })
}

/// Bitset of every `n ≤ bound` the form represents.
pub fn representable_set(form: &MixedForm, bound: u64, options: &ScanOptions) -> Result<Bitset> {
    if bound > options.ceiling {
        return Err(Error::ResourceLimit {
            bound,
            ceiling: options.ceiling,
        });
    }
    let len = usize::try_from(bound + 1).map_err(|_| Error::Overflow)?;
    let mut reachable = Bitset::new(len);
    reachable.set(0);
    for component in components(form) {
        let values = component_values(form, &component, bound);
        reachable = reachable.sumset(&values, options.threads);
    }
    Ok(reachable)
}

/// Connected components of the variable-link graph, each sorted.
fn components(form: &MixedForm) -> Vec<Vec<usize>> {
    let k = form.arity();
    let mut root: Vec<usize> = (0..k).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    for (var, c) in form.constraints().iter().enumerate() {
        for partner in c.partners() {
            let (a, b) = (find(&mut root, var), find(&mut root, partner));
            root[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for var in 0..k {
        let r = find(&mut root, var);
        match groups.iter_mut().find(|g| g[0] == r) {
            Some(g) => g.push(var),
            None => groups.push(vec![var]),
        }
    }
    groups
}

/// Ascending distinct sums `≤ bound` reachable by the component's variables
/// under its constraints.
fn component_values(form: &MixedForm, vars: &[usize], bound: u64) -> Vec<u64> {
    if let [var] = vars {
        let (term, constraint) = (form.terms()[*var], &form.constraints()[*var]);
        return constrained_values(term, constraint, bound).map(|(_, v)| v).collect();
    }

    let mut hit = Bitset::new(bound as usize + 1);
    let mut indices = vec![0u64; form.arity()];
    fn walk(
        form: &MixedForm,
        vars: &[usize],
        depth: usize,
        remaining: u64,
        spent: u64,
        indices: &mut [u64],
        hit: &mut Bitset,
    ) {
        if depth == vars.len() {
            let ok = vars
                .iter()
                .all(|&v| form.constraints()[v].links_hold(indices[v], indices));
            if ok {
                hit.set(spent as usize);
            }
            return;
        }
        let var = vars[depth];
        for (k, value) in constrained_values(form.terms()[var], &form.constraints()[var], remaining) {
            indices[var] = k;
            walk(form, vars, depth + 1, remaining - value, spent + value, indices, hit);
        }
    }
    walk(form, vars, 0, bound, 0, &mut indices, &mut hit);
    hit.ones().map(|n| n as u64).collect()
}
