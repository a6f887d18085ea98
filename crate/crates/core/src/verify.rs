//! The verification pipeline: every fast path against its oracle.
//!
//! Checks that need the materialized group are skipped, not failed, when
//! |G| exceeds the oracle cap.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::chartab::{self, CharacterKind, CharacterTable, Check};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::{self, GroupCtx, GroupElement};
use crate::quadmap::{self, QuadMap, TransferReport};
use crate::reps;

/// Largest representation degree whose matrices are built for traces.
pub const MAX_TRACE_DEGREE: usize = 1 << 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail(m) => write!(f, "FAIL ({m})"),
            Status::Skip(m) => write!(f, "SKIP ({m})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    #[serde(flatten)]
    pub status: Status,
    #[serde(serialize_with = "ser_millis", rename = "millis")]
    pub elapsed: Duration,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, Status::Fail(_)))
    }

    pub fn status_of(&self, name: &str) -> Option<&Status> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.status)
    }

    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Status) {
        let start = Instant::now();
        let status = f();
        self.checks.push(CheckResult {
            name,
            status,
            elapsed: start.elapsed(),
        });
    }

    fn skip_all(&mut self, names: &[&'static str], why: &str) {
        for name in names {
            self.run(name, || Status::Skip(why.to_string()));
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub oracle_cap: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            oracle_cap: group::DEFAULT_ORACLE_CAP,
            exec: Execution::default(),
        }
    }
}

fn from_check(c: Check) -> Status {
    match c {
        Ok(()) => Status::Pass,
        Err(m) => Status::Fail(m),
    }
}

fn from_result(r: Result<()>) -> Status {
    match r {
        Ok(()) => Status::Pass,
        Err(Error::VerificationFailed(m)) => Status::Fail(m),
        Err(e) => Status::Fail(e.to_string()),
    }
}

pub const TABLE_CHECKS: [&str; 6] = [
    "table: square",
    "table: degree sum",
    "table: row orthogonality",
    "table: column orthogonality",
    "table: distinct columns",
    "table: zeros off radical",
];

/// Runs the whole suite. Only an invalid seed is an error; every other
/// problem is reported as a failed check.
pub fn verify(q: &QuadMap, opts: VerifyOptions) -> Result<VerifyReport> {
    let validity = quadmap::is_valid_group_seed(q);
    if !validity.is_valid() {
        return Err(Error::InvalidSeed {
            regular: validity.regular,
            polar_spans_w: validity.polar_spans_w,
        });
    }
    let exec = opts.exec;
    let ctx = GroupCtx::new(q.clone());
    let n = ctx.order_log2();
    let within_cap = n < 40 && (1usize << n) <= opts.oracle_cap;
    let over_cap = format!("|G| = 2^{n} exceeds oracle cap {}", opts.oracle_cap);
    let mut report = VerifyReport::default();

    let oracle = if within_cap {
        Some(group::conjugacy_classes_bruteforce_with(
            &ctx,
            opts.oracle_cap,
            exec,
        )?)
    } else {
        None
    };

    let real = quadmap::is_real_with(q, exec);
    report.run(
        "realness: value table vs class inversion",
        || match &oracle {
            Some(classes) if group::is_real_by_classes(&ctx, classes) != real => {
                Status::Fail(format!("value-table test says {real}, oracle disagrees"))
            }
            Some(_) if !real => Status::Fail("group is not real".into()),
            None if !real => Status::Fail("group is not real".into()),
            Some(_) => Status::Pass,
            None => Status::Skip(over_cap.clone()),
        },
    );
    let later = [
        "classes: fast vs brute force",
        TABLE_CHECKS[0],
        TABLE_CHECKS[1],
        TABLE_CHECKS[2],
        TABLE_CHECKS[3],
        TABLE_CHECKS[4],
        TABLE_CHECKS[5],
        "reps: f_(s,i) homomorphisms onto G_s",
        "reps: traces equal table rows",
    ];
    if !real {
        report.skip_all(&later, "fast character path requires a real group");
        return Ok(report);
    }

    let table = match chartab::assemble_table_with(q, exec) {
        Ok(t) => t,
        Err(e) => {
            let msg = e.to_string();
            report.run(later[0], || Status::Fail(msg.clone()));
            report.skip_all(&later[1..], "table could not be built");
            return Ok(report);
        }
    };

    report.run("classes: fast vs brute force", || match &oracle {
        None => Status::Skip(over_cap.clone()),
        Some(brute) => {
            let mut fast: Vec<Vec<GroupElement>> = table
                .classes
                .iter()
                .map(|c| {
                    let mut e = c.elements();
                    e.sort();
                    e
                })
                .collect();
            fast.sort();
            let mut brute = brute.clone();
            brute.iter_mut().for_each(|c| c.sort());
            brute.sort();
            if fast == brute {
                Status::Pass
            } else {
                Status::Fail(format!(
                    "{} fast classes, {} oracle classes",
                    fast.len(),
                    brute.len()
                ))
            }
        }
    });

    report.run(TABLE_CHECKS[0], || {
        from_check(chartab::check_square(&table))
    });
    report.run(TABLE_CHECKS[1], || {
        from_check(chartab::check_degree_sum(&table))
    });
    report.run(TABLE_CHECKS[2], || {
        from_check(chartab::check_row_orthogonality(&table, exec))
    });
    report.run(TABLE_CHECKS[3], || {
        from_check(chartab::check_column_orthogonality(&table, exec))
    });
    report.run(TABLE_CHECKS[4], || {
        from_check(chartab::check_distinct_columns(&table))
    });

    let transfers = match quadmap::all_transfers_with(q, exec) {
        Ok(t) => t,
        Err(e) => {
            let msg = e.to_string();
            report.run(TABLE_CHECKS[5], || Status::Fail(msg.clone()));
            report.skip_all(&later[7..], "transfer failed");
            return Ok(report);
        }
    };
    report.run(TABLE_CHECKS[5], || {
        from_check(check_zero_pattern(&table, &transfers))
    });

    report.run("reps: f_(s,i) homomorphisms onto G_s", || {
        if !within_cap {
            return Status::Skip(over_cap.clone());
        }
        from_result(check_surjections(q, &ctx, &transfers, opts))
    });

    report.run("reps: traces equal table rows", || {
        if let Some(t) = transfers
            .iter()
            .find(|t| t.degree() as usize > MAX_TRACE_DEGREE)
        {
            return Status::Skip(format!("degree {} exceeds {MAX_TRACE_DEGREE}", t.degree()));
        }
        from_result(check_traces(q, &table, &transfers))
    });

    Ok(report)
}

/// Non-linear rows vanish exactly on classes whose V-part lies outside the
/// radical of their functional.
pub fn check_zero_pattern(table: &CharacterTable, transfers: &[TransferReport]) -> Check {
    for row in &table.rows {
        let CharacterKind::NonLinear { s, .. } = &row.kind else {
            continue;
        };
        let t = transfers
            .iter()
            .find(|t| t.s == *s)
            .ok_or_else(|| format!("{}: no transfer for s", row.label()))?;
        for (c, class) in table.classes.iter().enumerate() {
            let expected_zero = !t.in_radical(&class.rep_v);
            if (row.values[c] == 0) != expected_zero {
                return Err(format!(
                    "{}: unexpected zero pattern at class {c}",
                    row.label()
                ));
            }
        }
    }
    Ok(())
}

/// Every f_{s,i} is a homomorphism onto G_s whose kernel has order |G|/|G_s|.
pub fn check_surjections(
    q: &QuadMap,
    ctx: &GroupCtx,
    transfers: &[TransferReport],
    opts: VerifyOptions,
) -> Result<()> {
    for t in transfers {
        let target = GroupCtx::new(t.qs.clone());
        for i in 1..=t.character_count() {
            let f = reps::surjection(q, t, i)?;
            reps::check_homomorphism(ctx, &f, &target, opts.oracle_cap, opts.exec)?;
            let image = reps::image_size(ctx, &f);
            if image != 1 << target.order_log2() {
                return Err(Error::VerificationFailed(format!(
                    "f_(s={},i={i}) has image of size {image}, expected 2^{}",
                    t.s.coords(),
                    target.order_log2()
                )));
            }
        }
    }
    Ok(())
}

/// For each s, the multiset of trace rows of φ_{s,i} equals the multiset of
/// table rows χ_{s,i}.
pub fn check_traces(
    q: &QuadMap,
    table: &CharacterTable,
    transfers: &[TransferReport],
) -> Result<()> {
    for t in transfers {
        let mut from_reps = reps::full_reps_for(q, t)?
            .iter()
            .map(|r| r.trace_row(&table.classes))
            .collect::<Result<Vec<_>>>()?;
        let mut from_table: Vec<Vec<i64>> = table
            .rows
            .iter()
            .filter(|r| matches!(r.kind, CharacterKind::NonLinear { s, .. } if s == t.s))
            .map(|r| r.values.clone())
            .collect();
        from_reps.sort();
        from_table.sort();
        if from_reps != from_table {
            return Err(Error::VerificationFailed(format!(
                "trace rows for s = {} differ from table rows",
                t.s.coords()
            )));
        }
    }
    Ok(())
}
