//! Verification batteries over finite ranges.
//!
//! Every suite returns a [`SuiteReport`] with a pass/fail count, the first
//! counterexample found and, where a suite checks a list of named items, one
//! entry per item.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{gcd_all, triangular};
use crate::catalog::{self, CONJECTURED_EXCEPTIONS};
use crate::form::{parse_form, MixedForm};
use crate::solver::{
    asymptotically_universal, count_representations, ewell_t2, exception_set_with, kane_triangular_universal,
    ScanOptions, UniversalityStatus,
};
use crate::squares::{decompose, is_eligible, r3_count, CaseTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    LegendreScan,
    Decompose,
    Ewell,
    Remark8,
    KaneConsistency,
    Criteria,
    Catalogs,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::LegendreScan,
        Suite::Decompose,
        Suite::Ewell,
        Suite::Remark8,
        Suite::KaneConsistency,
        Suite::Criteria,
        Suite::Catalogs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::LegendreScan => "legendre-scan",
            Suite::Decompose => "decompose",
            Suite::Ewell => "ewell",
            Suite::Remark8 => "remark8",
            Suite::KaneConsistency => "kane-consistency",
            Suite::Criteria => "criteria",
            Suite::Catalogs => "catalogs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteEntry {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: u64,
    pub checked: u64,
    pub failed: u64,
    pub first_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    fn new(suite: Suite, bound: u64) -> Self {
        SuiteReport {
            suite,
            bound,
            checked: 0,
            failed: 0,
            first_counterexample: None,
            entries: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(counterexample());
            }
        }
    }

    fn entry(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let (label, detail) = (label.into(), detail.into());
        self.check(passed, || format!("{label}: {detail}"));
        self.entries.push(SuiteEntry { label, passed, detail });
    }
}

pub fn run(suite: Suite, bound: u64, options: &ScanOptions) -> crate::Result<SuiteReport> {
    Ok(match suite {
        Suite::Identities => identities(bound, options.threads),
        Suite::LegendreScan => legendre_scan(bound),
        Suite::Decompose => decompose_scan(bound)?,
        Suite::Ewell => ewell(bound)?,
        Suite::Remark8 => remark8(bound, options)?,
        Suite::KaneConsistency => kane_consistency(bound, options)?,
        Suite::Criteria => criteria(bound, options)?,
        Suite::Catalogs => catalogs(bound, options)?,
    })
}

fn tri(k: u64) -> u64 {
    triangular(k).expect("small index")
}

fn sq(k: u64) -> u64 {
    k * k
}

/// `8(f₀(x) + f₁(y) + f₂(z)) + k = g₀(x) + g₁(y) + g₂(z)`; unused trailing
/// coordinates map to 0.
struct Identity {
    label: &'static str,
    dims: u32,
    k: u64,
    lhs: [fn(u64) -> u64; 3],
    rhs: [fn(u64) -> u64; 3],
}

fn zero(_: u64) -> u64 {
    0
}

fn odd(k: u64) -> u64 {
    sq(2 * k + 1)
}

const IDENTITIES: [Identity; 8] = [
    Identity {
        label: "8(tx+ty+tz)+3 = (2x+1)²+(2y+1)²+(2z+1)²",
        dims: 3,
        k: 3,
        lhs: [tri, tri, tri],
        rhs: [odd, odd, odd],
    },
    Identity {
        label: "8(tx+2sy)+1 = (2x+1)²+(4y)²",
        dims: 2,
        k: 1,
        lhs: [tri, |y| 2 * sq(y), zero],
        rhs: [odd, |y| sq(4 * y), zero],
    },
    Identity {
        label: "8(tx+4ty+sz+s(z+1))+1 = (2x+1)²+4(2y+1)²+4(2z+1)²",
        dims: 3,
        k: 1,
        lhs: [tri, |y| 4 * tri(y), |z| sq(z) + sq(z + 1)],
        rhs: [odd, |y| 4 * odd(y), |z| 4 * odd(z)],
    },
    Identity {
        label: "8(tx+ty)+2 = (2x+1)²+(2y+1)²",
        dims: 2,
        k: 2,
        lhs: [tri, tri, zero],
        rhs: [odd, odd, zero],
    },
    Identity {
        label: "8(2sx+ty)+2 = (4x)²+(2y+1)²+1",
        dims: 2,
        k: 2,
        lhs: [|x| 2 * sq(x), tri, zero],
        rhs: [|x| sq(4 * x), |y| odd(y) + 1, zero],
    },
    Identity {
        label: "8(tx+2sy+4tz)+5 = (2x+1)²+(4y)²+4(2z+1)²",
        dims: 3,
        k: 5,
        lhs: [tri, |y| 2 * sq(y), |z| 4 * tri(z)],
        rhs: [odd, |y| sq(4 * y), |z| 4 * odd(z)],
    },
    Identity {
        label: "8(tx+4ty+2sz)+5 = (2x+1)²+(4y+2)²+(4z)²",
        dims: 3,
        k: 5,
        lhs: [tri, |y| 4 * tri(y), |z| 2 * sq(z)],
        rhs: [odd, |y| sq(4 * y + 2), |z| sq(4 * z)],
    },
    Identity {
        label: "8(4tx+ty+tz)+6 = (4x+2)²+(2y+1)²+(2z+1)²",
        dims: 3,
        k: 6,
        lhs: [|x| 4 * tri(x), tri, tri],
        rhs: [|x| sq(4 * x + 2), odd, odd],
    },
];

/// Counts index tuples in `[0, bound]^dims` where the two sides differ,
/// splitting the outermost index over `threads`. Both sides are evaluated in
/// full at every tuple, from per-coordinate tables.
fn mismatches(id: &Identity, bound: u64, threads: usize) -> (u64, Option<[u64; 3]>) {
    let size = |d: u32| if d < id.dims { bound + 1 } else { 1 };
    let column = |f: fn(u64) -> u64, d: u32, scale: u64| (0..size(d)).map(|i| scale * f(i)).collect::<Vec<u64>>();
    let lz = column(id.lhs[2], 2, 8);
    let rz = column(id.rhs[2], 2, 1);
    let scan = |xs: std::ops::Range<u64>| {
        let mut bad = 0u64;
        let mut first = None;
        for x in xs {
            for y in 0..size(1) {
                let cl = 8 * (id.lhs[0](x) + id.lhs[1](y)) + id.k;
                let cr = id.rhs[0](x) + id.rhs[1](y);
                let row: u64 = lz
                    .iter()
                    .zip(&rz)
                    .map(|(&l, &r)| (cl.wrapping_add(l) != cr.wrapping_add(r)) as u64)
                    .sum();
                if row > 0 && first.is_none() {
                    let z = lz.iter().zip(&rz).position(|(&l, &r)| cl + l != cr + r);
                    first = z.map(|z| [x, y, z as u64]);
                }
                bad += row;
            }
        }
        (bad, first)
    };
    let threads = threads.max(1) as u64;
    let per = (bound + 1).div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|i| {
                let scan = &scan;
                s.spawn(move || scan(i * per..((i + 1) * per).min(bound + 1)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("identity worker"))
            .fold((0, None), |(bad, first), (b, f)| (bad + b, first.or(f)))
    })
}

/// The eight residue-class index identities, over all indices `≤ bound`.
pub fn identities(bound: u64, threads: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Identities, bound);
    for id in &IDENTITIES {
        let (bad, first) = mismatches(id, bound, threads);
        let points = (bound + 1).pow(id.dims);
        report.checked += points;
        report.failed += bad;
        let detail = match first {
            None => format!("{points} index tuples"),
            Some(p) => {
                let p = &p[..id.dims as usize];
                report
                    .first_counterexample
                    .get_or_insert_with(|| format!("{} fails at {p:?}", id.label));
                format!("{bad} mismatches, first at {p:?}")
            }
        };
        report.entries.push(SuiteEntry {
            label: id.label.to_string(),
            passed: bad == 0,
            detail,
        });
    }
    report
}

/// `n` is eligible iff the brute-force three-square count is positive.
pub fn legendre_scan(bound: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::LegendreScan, bound);
    for n in 0..=bound {
        let eligible = is_eligible(n);
        let count = r3_count(n);
        report.check(eligible == (count > 0), || {
            format!("n={n}: eligible={eligible}, r3={count}")
        });
    }
    report
}

/// Totality without fallback, odd roots on `8m+3`, and the `4n` scaling law.
pub fn decompose_scan(bound: u64) -> crate::Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Decompose, bound);
    let mut fallbacks = 0u64;
    let mut odd_failures = 0u64;
    let mut scaling_failures = 0u64;
    for n in 0..=bound {
        if !is_eligible(n) {
            continue;
        }
        let d = decompose(n)?;
        let fell_back = d.case == CaseTag::OracleFallback;
        fallbacks += u64::from(fell_back);
        report.check(!fell_back, || format!("n={n} needed the fallback search"));
        if n % 8 == 3 {
            let all_odd = d.roots.iter().all(|r| r % 2 == 1);
            odd_failures += u64::from(!all_odd);
            report.check(all_odd, || format!("n={n} ≡ 3 (mod 8) gave roots {:?}", d.roots));
        }
        if let Some(four_n) = n.checked_mul(4).filter(|&m| m <= crate::INPUT_CAP) {
            let scaled = decompose(four_n)?;
            let ok = scaled.roots == d.roots.map(|r| 2 * r);
            scaling_failures += u64::from(!ok);
            report.check(ok, || {
                format!(
                    "decompose({four_n}) = {:?}, decompose({n}) = {:?}",
                    scaled.roots, d.roots
                )
            });
        }
    }
    report.entries.push(SuiteEntry {
        label: "no fallback".into(),
        passed: fallbacks == 0,
        detail: format!("{fallbacks} fallbacks"),
    });
    report.entries.push(SuiteEntry {
        label: "odd roots on 8m+3".into(),
        passed: odd_failures == 0,
        detail: format!("{odd_failures} failures"),
    });
    report.entries.push(SuiteEntry {
        label: "decompose(4n) = 2·decompose(n)".into(),
        passed: scaling_failures == 0,
        detail: format!("{scaling_failures} failures"),
    });
    Ok(report)
}

/// Ordered `(x, y) ∈ ℤ²` with `t_x + t_y = n`, where `t_x = x(x+1)/2`.
fn signed_pair_count(n: u64) -> u64 {
    let reach = (2 * n as i64).isqrt() + 2;
    let t = |x: i64| x * (x + 1) / 2;
    let mut count = 0;
    for x in -reach - 1..=reach {
        for y in -reach - 1..=reach {
            if t(x) + t(y) == n as i64 {
                count += 1;
            }
        }
    }
    count
}

/// Representation-count convention under which the divisor formula holds.
pub const EWELL_CONVENTION: &str = "ordered pairs of nonnegative indices";

/// Pins the counting convention on `n ≤ 100`, then checks the divisor formula
/// against direct counts for every `n ≤ bound`.
pub fn ewell(bound: u64) -> crate::Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Ewell, bound);
    let t_plus_t = parse_form("t+t").expect("valid form");
    let pin = bound.min(100);
    let mut nonneg_ok = true;
    let mut signed_ok = true;
    for n in 0..=pin {
        let formula = ewell_t2(n)?;
        nonneg_ok &= formula == count_representations(&t_plus_t, n, true);
        signed_ok &= formula == signed_pair_count(n);
    }
    report.entry(
        format!("convention on n ≤ {pin}"),
        nonneg_ok,
        format!("{EWELL_CONVENTION}: {nonneg_ok}; ordered integer pairs: {signed_ok}"),
    );
    for n in 0..=bound {
        let formula = ewell_t2(n)?;
        let direct = count_representations(&t_plus_t, n, true);
        report.check(formula == direct, || {
            format!("n={n}: d1-d3 = {formula}, direct = {direct}")
        });
    }
    Ok(report)
}

fn format_set(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Each conjectured exception set against a scan up to `bound`, and every
/// listed almost universal form against the asymptotic criterion.
pub fn remark8(bound: u64, options: &ScanOptions) -> crate::Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Remark8, bound);
    for (text, conjectured) in CONJECTURED_EXCEPTIONS {
        let form = parse_form(text)?;
        let found = exception_set_with(&form, bound, options)?.exceptions;
        let expected: Vec<u64> = conjectured.iter().copied().filter(|&n| n <= bound).collect();
        let detail = if found == expected {
            format!("E = {}", format_set(&found))
        } else {
            format!("found {}, conjectured {}", format_set(&found), format_set(&expected))
        };
        report.entry(format!("E({text})"), found == expected, detail);
    }
    for text in catalog::listed_almost_universal() {
        let verdict = asymptotically_universal(&parse_form(text)?)?;
        let ok = verdict.status == UniversalityStatus::AsymptoticallyUniversal;
        report.entry(format!("criterion {text}"), ok, format!("{:?}", verdict.status));
    }
    Ok(report)
}

/// The triangular finite check against scans for every triple with sum ≤ 10.
pub fn kane_consistency(bound: u64, options: &ScanOptions) -> crate::Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::KaneConsistency, bound);
    let mut universal = Vec::new();
    for triple in catalog::triples_with_sum_at_most(10) {
        let verdict = kane_triangular_universal(&triple)?;
        let decided = verdict.status == UniversalityStatus::Universal;
        let scan = exception_set_with(&catalog::ttt_form(triple), bound, options)?;
        let empirical = scan.exceptions.is_empty();
        report.check(decided == empirical, || {
            format!(
                "{triple:?}: finite check {decided}, scan exceptions {:?}",
                &scan.exceptions[..scan.exceptions.len().min(5)]
            )
        });
        if decided {
            universal.push(triple);
        }
    }
    let closed = universal.iter().all(|t| {
        let mut r = *t;
        r.rotate_left(1);
        let s = [t[1], t[0], t[2]];
        universal.contains(&r) && universal.contains(&s)
    });
    report.entry(
        "closed under permutation",
        closed,
        format!("{} universal triples", universal.len()),
    );
    report.entry("contains (1,1,1)", universal.contains(&[1, 1, 1]), "");
    report.entry(
        "no universal triple has min > 1",
        universal.iter().all(|t| t.iter().min() == Some(&1)),
        "",
    );
    Ok(report)
}

/// Every primitive mixed ternary form with coefficient sum ≤ 10 that the
/// criteria reject must miss some `n ≤ min(bound, 10⁴)`.
pub fn criteria(bound: u64, options: &ScanOptions) -> crate::Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Criteria, bound);
    let scan_bound = bound.min(10_000);
    let builders: [fn([u64; 3]) -> MixedForm; 3] = [catalog::ttt_form, catalog::stt_form, catalog::sst_form];
    let mut rejected = 0;
    for triple in catalog::triples_with_sum_at_most(10) {
        if gcd_all(&triple) != 1 {
            continue;
        }
        for build in builders {
            let form = build(triple);
            let verdict = asymptotically_universal(&form)?;
            if verdict.status != UniversalityStatus::NotAsymptoticallyUniversal {
                continue;
            }
            rejected += 1;
            let scan = exception_set_with(&form, scan_bound, options)?;
            report.check(!scan.exceptions.is_empty(), || {
                format!("{form} rejected but no exception ≤ {scan_bound}")
            });
        }
    }
    let s_4t_4t = asymptotically_universal(&parse_form("s+4t+4t")?)?.status;
    report.entry(
        "s+4t+4t rejected",
        s_4t_4t == UniversalityStatus::NotAsymptoticallyUniversal,
        format!("{s_4t_4t:?}"),
    );
    report.entries.push(SuiteEntry {
        label: "rejected forms".into(),
        passed: true,
        detail: rejected.to_string(),
    });
    Ok(report)
}

/// Universal catalogs: listed vectors scan empty; unlisted ones miss
/// something below `min(bound, 10⁴)`.
pub fn catalogs(bound: u64, options: &ScanOptions) -> crate::Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Catalogs, bound);
    for v in catalog::UNIVERSAL_SST {
        let scan = exception_set_with(&catalog::sst_form(v), bound, options)?;
        report.entry(
            format!("{}", catalog::sst_form(v)),
            scan.exceptions.is_empty(),
            format_set(&scan.exceptions),
        );
    }
    for v in catalog::UNIVERSAL_STT {
        let scan = exception_set_with(&catalog::stt_form(v), bound, options)?;
        report.entry(
            format!("{}", catalog::stt_form(v)),
            scan.exceptions.is_empty(),
            format_set(&scan.exceptions),
        );
    }
    for text in catalog::UNIVERSAL_EXAMPLES {
        let scan = exception_set_with(&parse_form(text)?, bound, options)?;
        report.entry(text, scan.exceptions.is_empty(), format_set(&scan.exceptions));
    }
    let even = exception_set_with(&catalog::even_square_two_triangular(), bound, options)?;
    report.entry(
        "even s + t + t",
        even.exceptions.is_empty(),
        format_set(&even.exceptions),
    );
    let parity = exception_set_with(&catalog::parity_clause_form(), bound, options)?;
    report.entry(
        "s+s+t, parity clause",
        parity.exceptions == [0],
        format_set(&parity.exceptions),
    );

    let scan_bound = bound.min(10_000);
    let mut unlisted = 0;
    let mut missing = 0;
    for v in catalog::triples_with_sum_at_most(10) {
        let mut candidates = Vec::new();
        if v[0] <= v[1] && !catalog::UNIVERSAL_SST.contains(&v) {
            candidates.push(catalog::sst_form(v));
        }
        if v[1] >= v[2] && !catalog::UNIVERSAL_STT.contains(&v) {
            candidates.push(catalog::stt_form(v));
        }
        for form in candidates {
            unlisted += 1;
            if !exception_set_with(&form, scan_bound, options)?.exceptions.is_empty() {
                missing += 1;
            }
        }
    }
    report.entry(
        "unlisted vectors with an exception",
        missing >= 5,
        format!("{missing} of {unlisted} unlisted forms miss some n ≤ {scan_bound}"),
    );
    Ok(report)
}
