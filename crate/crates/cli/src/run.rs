use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use branchkit::verify::{duality_sweep, verify_pair, verify_pair_sampled, GridReport};
use branchkit::{
    branch_decompose_run, lr_coeff, multiplicity, multiplicity_unchecked, parse_partition, validate_stable_range,
    BranchingQuery, Error, Family, GlLabel, Label, LrEngine, Pair, PairKind, Ranks,
};

use crate::args::{BranchArgs, Cli, Command, DecomposeArgs, Format, LrArgs, PairArgs, VerifyArgs};
use crate::record::{entry_key, labels_out, ErrorRecord, OutputRecord, QueryEcho, ResultValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_STABLE_RANGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Sample count used when only `--seed` is given.
const DEFAULT_SAMPLES: usize = 500;

/// Runs one invocation and returns its exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cache = cache_path();
    if let Some(path) = &cache {
        if path.exists() {
            if let Err(e) = LrEngine::global().load(path) {
                let _ = writeln!(err, "warning: ignoring LR cache: {e}");
            }
        }
    }
    let code = match cli.command {
        Command::Branch(a) => cmd_branch(a, out, err),
        Command::Decompose(a) => cmd_decompose(a, out, err),
        Command::Lr(a) => cmd_lr(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Selftest => cmd_selftest(out),
    };
    if let Some(path) = &cache {
        if let Err(e) = LrEngine::global().save(path) {
            let _ = writeln!(err, "warning: could not write LR cache: {e}");
        }
    }
    code
}

fn cache_path() -> Option<PathBuf> {
    std::env::var_os("BRANCHKIT_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Exit code for an error raised while evaluating a query.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::StableRangeViolation { .. } => EXIT_STABLE_RANGE,
        _ => EXIT_USAGE,
    }
}

fn usage(err: &mut dyn Write, message: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {message}");
    EXIT_USAGE
}

fn emit(record: &OutputRecord, format: Format, out: &mut dyn Write) {
    let text = match format {
        Format::Json => record.to_json() + "\n",
        Format::Tsv => record.to_tsv(),
    };
    let _ = out.write_all(text.as_bytes());
}

fn parse_pair(text: &str) -> Result<Pair, Error> {
    text.parse()
}

fn ranks(args: &PairArgs, pair: Pair) -> Result<Ranks, Error> {
    match (pair.takes_second_rank(), args.m) {
        (true, Some(m)) => Ok(Ranks::pair(args.n, m)),
        (true, None) => Err(Error::InvalidQuery(format!("{pair} needs -m"))),
        (false, Some(_)) => Err(Error::InvalidQuery(format!("{pair} takes only -n"))),
        (false, None) => Ok(Ranks::single(args.n)),
    }
}

fn parse_label(text: &str, family: Family) -> Result<Label, Error> {
    match family {
        Family::Gl => Ok(Label::Gl(text.parse::<GlLabel>()?)),
        _ if text.contains('/') => Err(Error::Parse(format!("{text:?} is a GL label; {family} takes a partition"))),
        _ => Ok(Label::Part(parse_partition(text)?)),
    }
}

fn parse_labels(texts: &[String], slots: &[(Family, usize)], side: &str) -> Result<Vec<Label>, Error> {
    if texts.len() != slots.len() {
        return Err(Error::InvalidQuery(format!("expected {} {side} label(s), got {}", slots.len(), texts.len())));
    }
    texts.iter().zip(slots).map(|(t, (f, _))| parse_label(t, *f)).collect()
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn cmd_branch(args: BranchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let prepared = (|| {
        let pair = parse_pair(&args.common.pair)?;
        let ranks = ranks(&args.common, pair)?;
        let (g_slots, h_slots) = pair.slots(ranks);
        // diagonal pairs take λ as --big and the tensor factors as --small
        let (g_text, h_text) = if pair.kind() == PairKind::Diagonal {
            (&args.small, &args.big)
        } else {
            (&args.big, &args.small)
        };
        let g = parse_labels(g_text, &g_slots, "G")?;
        let h = parse_labels(h_text, &h_slots, "H")?;
        let q = BranchingQuery::new(pair, ranks, g.clone(), h.clone())?;
        Ok::<_, Error>((q, g, h))
    })();
    let (q, g, h) = match prepared {
        Ok(v) => v,
        Err(e) => return usage(err, e),
    };
    let query = QueryEcho::Branch {
        g: labels_out(&g),
        h: labels_out(&h),
        pair: q.pair.id().to_string(),
        ranks: q.ranks.into(),
    };
    let evaluated = if args.common.unsafe_eval {
        match validate_stable_range(&q) {
            Ok(_) => multiplicity_unchecked(&q).map(|m| (m, true)),
            Err(Error::StableRangeViolation { .. }) => multiplicity_unchecked(&q).map(|m| (m, false)),
            Err(e) => Err(e),
        }
    } else {
        multiplicity(&q).map(|m| (m, true))
    };
    finish(query, "branch", start, evaluated.map(|(m, s)| (ResultValue::Count(m), s, None)), args.common.format, out, err)
}

fn finish(
    query: QueryEcho,
    command: &str,
    start: Instant,
    evaluated: Result<(ResultValue, bool, Option<u64>), Error>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match evaluated {
        Ok((result, stable_range, skipped)) => {
            let record = OutputRecord {
                command: command.to_string(),
                elapsed_ms: elapsed_ms(start),
                error: None,
                query,
                result: Some(result),
                skipped,
                stable_range,
            };
            emit(&record, format, out);
            EXIT_OK
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == EXIT_STABLE_RANGE {
                let record = OutputRecord {
                    command: command.to_string(),
                    elapsed_ms: elapsed_ms(start),
                    error: Some(ErrorRecord::from(&e)),
                    query,
                    result: None,
                    skipped: None,
                    stable_range: false,
                };
                if format == Format::Json {
                    emit(&record, format, out);
                }
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn cmd_decompose(args: DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let prepared = (|| {
        let pair = parse_pair(&args.common.pair)?;
        let ranks = ranks(&args.common, pair)?;
        let (g_slots, _) = pair.slots(ranks);
        let g_text: Vec<String> = if pair.kind() == PairKind::Diagonal {
            if !args.big.is_empty() {
                return Err(Error::InvalidQuery(format!("{pair} takes --mu and --nu instead of --big")));
            }
            match (&args.mu, &args.nu) {
                (Some(mu), Some(nu)) => vec![mu.clone(), nu.clone()],
                _ => return Err(Error::InvalidQuery(format!("{pair} needs --mu and --nu"))),
            }
        } else {
            if args.mu.is_some() || args.nu.is_some() {
                return Err(Error::InvalidQuery(format!("{pair} takes --big, not --mu/--nu")));
            }
            args.big.clone()
        };
        let g = parse_labels(&g_text, &g_slots, "G")?;
        Ok::<_, Error>((pair, ranks, g))
    })();
    let (pair, ranks, g) = match prepared {
        Ok(v) => v,
        Err(e) => return usage(err, e),
    };
    let query = QueryEcho::Decompose {
        g: labels_out(&g),
        pair: pair.id().to_string(),
        ranks: ranks.into(),
    };
    let checked = !args.common.unsafe_eval;
    let evaluated = branch_decompose_run(pair, ranks, g, args.bound, checked).map(|run| {
        let map: BTreeMap<String, u64> = run.entries.iter().map(|(k, v)| (entry_key(k), *v)).collect();
        let count = run.out_of_range as u64;
        if checked {
            (ResultValue::Decomposition(map), true, Some(count).filter(|&c| c > 0))
        } else {
            (ResultValue::Decomposition(map), count == 0, None)
        }
    });
    finish(query, "decompose", start, evaluated, args.common.format, out, err)
}

fn cmd_lr(args: LrArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let parsed = (|| Ok::<_, Error>((parse_partition(&args.outer)?, parse_partition(&args.left)?, parse_partition(&args.right)?)))();
    let (outer, left, right) = match parsed {
        Ok(v) => v,
        Err(e) => return usage(err, e),
    };
    let value = lr_coeff(&outer, &left, &right);
    let record = OutputRecord {
        command: "lr".to_string(),
        elapsed_ms: elapsed_ms(start),
        error: None,
        query: QueryEcho::Lr {
            left: left.parts().to_vec(),
            outer: outer.parts().to_vec(),
            right: right.parts().to_vec(),
        },
        result: Some(ResultValue::Count(value)),
        skipped: None,
        stable_range: true,
    };
    emit(&record, args.format, out);
    EXIT_OK
}

fn report_grid(report: &GridReport, out: &mut dyn Write) {
    let _ = writeln!(out, "{}", report.summary_line());
    if let Some(first) = report.mismatches.first() {
        let _ = writeln!(out, "  first counterexample: {first}");
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let pairs: Vec<Pair> = if args.pair == "all" {
        Pair::ALL.to_vec()
    } else {
        match parse_pair(&args.pair) {
            Ok(p) => vec![p],
            Err(e) => return usage(err, format!("{e}; expected a pair identifier or \"all\"")),
        }
    };
    let samples = match (args.samples, args.seed) {
        (Some(n), seed) => Some((n, seed.unwrap_or(0))),
        (None, Some(seed)) => Some((DEFAULT_SAMPLES, seed)),
        (None, None) => None,
    };
    let mut all_pass = true;
    for pair in pairs {
        let report = match samples {
            Some((n, seed)) => verify_pair_sampled(pair, args.max_size, seed, n),
            None => verify_pair(pair, args.max_size),
        };
        match report {
            Ok(r) => {
                report_grid(&r, out);
                all_pass &= r.passed();
            }
            Err(e) => {
                let _ = writeln!(out, "{pair}: error {e}");
                all_pass = false;
            }
        }
    }
    if args.pair == "all" {
        match duality_sweep() {
            Ok(outcomes) => {
                let failed: Vec<_> = outcomes.iter().filter(|o| !o.holds()).collect();
                let _ = writeln!(out, "duality: {} identities, {} failures", outcomes.len(), failed.len());
                if let Some(o) = failed.first() {
                    let _ = writeln!(out, "  first counterexample: {:?} degree {}: {} vs {}", o.kind, o.degree, o.left, o.right);
                }
                all_pass &= failed.is_empty();
            }
            Err(e) => {
                let _ = writeln!(out, "duality: error {e}");
                all_pass = false;
            }
        }
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn cmd_selftest(out: &mut dyn Write) -> i32 {
    let p = |s: &str| Label::Part(parse_partition(s).unwrap());
    let gl = |s: &str| Label::Gl(s.parse::<GlLabel>().unwrap());
    let branch = |pair: Pair, ranks: Ranks, g: Vec<Label>, h: Vec<Label>| {
        BranchingQuery::new(pair, ranks, g, h).and_then(|q| multiplicity(&q))
    };
    let checks: Vec<(&str, bool)> = vec![
        (
            "o-in-gl n=6 [2]/[] → []",
            branch(Pair::OInGl, Ranks::single(6), vec![gl("[2]/[]")], vec![p("[]")]) == Ok(1),
        ),
        (
            "gl-diag n=4 [1] ⊗ [1] → [2]",
            branch(Pair::GlDiag, Ranks::single(4), vec![gl("[1]"), gl("[1]")], vec![gl("[2]")]) == Ok(1),
        ),
        (
            "o-diag n=3 refused outside the stable range",
            matches!(
                branch(Pair::ODiag, Ranks::single(3), vec![p("[1]"), p("[1]")], vec![p("[1]")]),
                Err(Error::StableRangeViolation { .. })
            ),
        ),
        (
            "sp-in-gl n=3 [1,1]/[] → []",
            branch(Pair::SpInGl, Ranks::single(3), vec![gl("[1,1]")], vec![p("[]")]) == Ok(1),
        ),
        (
            "lr [3,2,1] / [2,1] ⊗ [2,1] = 2",
            lr_coeff(
                &parse_partition("[3,2,1]").unwrap(),
                &parse_partition("[2,1]").unwrap(),
                &parse_partition("[2,1]").unwrap(),
            ) == 2,
        ),
    ];
    let mut ok = true;
    for (name, passed) in checks {
        let _ = writeln!(out, "{} {name}", if passed { "PASS" } else { "FAIL" });
        ok &= passed;
    }
    for pair in Pair::ALL {
        match verify_pair(pair, 2) {
            Ok(r) => {
                let _ = writeln!(out, "{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.summary_line());
                ok &= r.passed();
            }
            Err(e) => {
                let _ = writeln!(out, "FAIL {pair}: {e}");
                ok = false;
            }
        }
    }
    match duality_sweep() {
        Ok(outcomes) => {
            let passed = outcomes.iter().all(|o| o.holds());
            let _ = writeln!(out, "{} duality: {} identities", if passed { "PASS" } else { "FAIL" }, outcomes.len());
            ok &= passed;
        }
        Err(e) => {
            let _ = writeln!(out, "FAIL duality: {e}");
            ok = false;
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}
