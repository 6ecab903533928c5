use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};

use supportminors::equations::build_equations;
use supportminors::estimator::{
    complexity_report, first_solvable_degree, syzygy_count, ParameterSet,
};
use supportminors::format::{parse_instance, parse_witness, write_instance, write_witness};
use supportminors::linearization::{
    rank_check_capped, solve_linearization_with, Extraction, SolveConfig,
};
use supportminors::minrank::{
    brute_force_solve, gen_planted, gen_random, normalize, verify_solution,
};
use supportminors::syzygy::{
    check_annihilation, enumerate_sprime, specialize, sprime_span, submax_dim_formula,
    xonly_syzygy_dim_capped,
};
use supportminors::{BigInt, MinRankInstance, PrimeField, SolutionCandidate};

use crate::{BruteArgs, CheckArgs, EstimateArgs, GenArgs, ParamArgs, SolveArgs, SourceArgs};

pub const OK: i32 = 0;
pub const USAGE: i32 = 1;
pub const REFUSED: i32 = 2;
pub const MISMATCH: i32 = 3;

#[derive(Debug)]
struct Usage(String);

impl Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

pub fn exit_code_for(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<supportminors::Error>() {
        Some(
            supportminors::Error::EnumerationCap { .. } | supportminors::Error::MatrixCap { .. },
        ) => REFUSED,
        _ => USAGE,
    }
}

struct Loaded {
    inst: MinRankInstance,
    witness: Option<Vec<u32>>,
    label: String,
}

fn witness_path(path: &Path) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(".witness");
    PathBuf::from(s)
}

fn required(p: &ParamArgs) -> Result<(PrimeField, usize, usize, usize, usize)> {
    let missing: Vec<&str> = [("--m", p.m), ("--n", p.n), ("--K", p.k), ("--r", p.r)]
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(name, _)| *name)
        .collect();
    if !missing.is_empty() {
        return Err(usage(format!(
            "missing {} (or pass --in)",
            missing.join(", ")
        )));
    }
    let field = PrimeField::new(p.q)?;
    Ok((
        field,
        p.m.unwrap(),
        p.n.unwrap(),
        p.k.unwrap(),
        p.r.unwrap(),
    ))
}

fn generate(p: &ParamArgs, seed: u64) -> Result<Loaded> {
    let (field, m, n, k, r) = required(p)?;
    let (inst, witness) = if p.planted {
        let (inst, x) = gen_planted(field, m, n, k, r, seed)?;
        (inst, Some(x))
    } else {
        (gen_random(field, m, n, k, r, seed)?, None)
    };
    Ok(Loaded {
        inst,
        witness,
        label: format!("seed:{seed}"),
    })
}

fn load(source: &SourceArgs) -> Result<Loaded> {
    let Some(path) = &source.input else {
        return generate(&source.params, source.params.seed);
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let inst = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    let wpath = witness_path(path);
    let witness = if wpath.exists() {
        let text =
            fs::read_to_string(&wpath).with_context(|| format!("reading {}", wpath.display()))?;
        Some(
            parse_witness(&text, inst.field(), inst.k())
                .with_context(|| format!("parsing {}", wpath.display()))?,
        )
    } else {
        None
    };
    Ok(Loaded {
        inst,
        witness,
        label: "file".into(),
    })
}

fn params_of(inst: &MinRankInstance) -> Result<ParameterSet> {
    let mut p = ParameterSet::new(inst.m(), inst.n(), inst.k(), inst.r())?;
    p.q = Some(inst.field().modulus() as u64);
    Ok(p)
}

fn join(x: &[u32], sep: &str) -> String {
    x.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn describe(inst: &MinRankInstance) -> String {
    format!(
        "q={} m={} n={} K={} r={}",
        inst.field().modulus(),
        inst.m(),
        inst.n(),
        inst.k(),
        inst.r()
    )
}

pub fn gen(args: &GenArgs, machine: bool) -> Result<i32> {
    let loaded = generate(&args.params, args.params.seed)?;
    let text = write_instance(&loaded.inst);
    let Some(out) = &args.out else {
        if loaded.witness.is_some() {
            return Err(usage("--planted needs --out to place the witness file"));
        }
        print!("{text}");
        return Ok(OK);
    };
    fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
    let wpath = match &loaded.witness {
        Some(x) => {
            let p = witness_path(out);
            fs::write(&p, write_witness(x)).with_context(|| format!("writing {}", p.display()))?;
            Some(p)
        }
        None => None,
    };
    if machine {
        println!("out={}", out.display());
        println!(
            "witness={}",
            wpath
                .as_ref()
                .map_or("none".into(), |p| p.display().to_string())
        );
    } else {
        println!("wrote {} ({})", out.display(), describe(&loaded.inst));
        if let Some(p) = wpath {
            println!("wrote planted witness to {}", p.display());
        }
    }
    Ok(OK)
}

fn witness_status(
    witness: &Option<Vec<u32>>,
    field: PrimeField,
    found: &[SolutionCandidate],
) -> &'static str {
    match witness.as_ref().and_then(|x| normalize(field, x)) {
        None => "absent",
        Some(x) if found.iter().any(|s| s.x == x) => "recovered",
        Some(_) => "missed",
    }
}

fn print_solutions(
    inst: &MinRankInstance,
    found: &[SolutionCandidate],
    machine: bool,
) -> Result<()> {
    for (i, s) in found.iter().enumerate() {
        let ok = verify_solution(inst, &s.x, inst.r())?;
        if machine {
            println!(
                "solution={} rank={} verified={ok}",
                join(&s.x, ","),
                s.achieved_rank
            );
        } else {
            let tag = if ok { "verified" } else { "NOT verified" };
            println!(
                "solution {}: x = ({})  rank {}  {tag}",
                i + 1,
                join(&s.x, ", "),
                s.achieved_rank
            );
        }
    }
    Ok(())
}

pub fn solve(args: &SolveArgs, machine: bool) -> Result<i32> {
    let Loaded { inst, witness, .. } = load(&args.source)?;
    let b = match args.b {
        Some(b) => b,
        None => first_solvable_degree(&params_of(&inst)?)
            .filter(|&b| b <= 2)
            .unwrap_or(2),
    };
    if !(1..=2).contains(&b) {
        return Err(usage(format!("--b must be 1 or 2 (got {b})")));
    }
    let config = SolveConfig {
        enumeration_cap: args.cap_enum,
        matrix_cap: args.cap_matrix,
        fix_pluecker: args.fix_pluecker,
        ..SolveConfig::default()
    };
    let out = solve_linearization_with(&inst, b, &config)?;
    let d = &out.diagnostics;
    let wstatus = witness_status(&witness, inst.field(), &out.solutions);
    let (extraction, detail) = match &d.extraction {
        Extraction::EmptyKernel => ("empty_kernel", String::new()),
        Extraction::Direct => ("direct", String::new()),
        Extraction::Enumerated { points } => ("enumerated", format!("{points} points")),
        Extraction::Partial { reason } => ("partial", reason.clone()),
    };
    let candidate = d
        .candidate_dim
        .map_or("none".to_string(), |c| c.to_string());
    if machine {
        println!("b={b}");
        println!("rows={}", d.rows);
        println!("cols={}", d.cols);
        println!("rank={}", d.rank);
        println!("kernel_dim={}", d.kernel_dim);
        println!("candidate_dim={candidate}");
        println!("extraction={extraction}");
        println!(
            "fixed_pluecker={}",
            d.fixed_pluecker.map_or("none".into(), |t| t.to_string())
        );
        println!("solutions={}", out.solutions.len());
        print_solutions(&inst, &out.solutions, true)?;
        println!("witness={wstatus}");
        println!(
            "status={}",
            if out.solutions.is_empty() {
                "no_solution"
            } else {
                "solved"
            }
        );
    } else {
        println!("instance {}", describe(&inst));
        println!(
            "Macaulay matrix at b={b}: {} x {}, rank {}, kernel dimension {}",
            d.rows, d.cols, d.rank, d.kernel_dim
        );
        if let Some(t) = d.fixed_pluecker {
            println!("Plücker coordinate {t} fixed to one");
        }
        let detail = if detail.is_empty() {
            String::new()
        } else {
            format!(" ({detail})")
        };
        println!("extraction: {extraction}{detail}, candidate span dimension {candidate}");
        if out.solutions.is_empty() {
            println!("no solution extracted at b={b}");
        }
        print_solutions(&inst, &out.solutions, false)?;
        if wstatus != "absent" {
            println!("planted witness: {wstatus}");
        }
    }
    let failed = out.solutions.is_empty() && (witness.is_some() || args.assert);
    let missed = args.assert && wstatus == "missed";
    Ok(if failed || missed { MISMATCH } else { OK })
}

pub fn brute(args: &BruteArgs, machine: bool) -> Result<i32> {
    let Loaded { inst, witness, .. } = load(&args.source)?;
    let found = brute_force_solve(&inst, inst.r(), args.cap_enum)?;
    let wstatus = witness_status(&witness, inst.field(), &found);
    if machine {
        println!("solutions={}", found.len());
        print_solutions(&inst, &found, true)?;
        println!("witness={wstatus}");
    } else {
        println!("instance {}", describe(&inst));
        println!(
            "{} projective points with 0 < rank <= {}",
            found.len(),
            inst.r()
        );
        print_solutions(&inst, &found, false)?;
        if wstatus != "absent" {
            println!("planted witness: {wstatus}");
        }
    }
    let failed = args.assert && (found.is_empty() || wstatus == "missed");
    Ok(if failed { MISMATCH } else { OK })
}

struct Record {
    label: String,
    check: &'static str,
    degree: String,
    observed: usize,
    predicted: Option<BigInt>,
    condition: bool,
}

impl Record {
    fn status(&self) -> &'static str {
        match &self.predicted {
            None => "NA",
            Some(p) if *p == BigInt::from(self.observed) => "MATCH",
            Some(_) => "MISMATCH",
        }
    }
}

fn check_instance(loaded: &Loaded, only_b: Option<usize>, cap: u128) -> Result<Vec<Record>> {
    let inst = &loaded.inst;
    let (m, n, k, r) = (inst.m(), inst.n(), inst.k(), inst.r());
    let record = |check, degree: String, observed, predicted, condition| Record {
        label: loaded.label.clone(),
        check,
        degree,
        observed,
        predicted,
        condition,
    };
    let mut out = Vec::new();
    if r < n {
        for b in [1, 2]
            .into_iter()
            .filter(|b| only_b.is_none_or(|x| x == *b))
        {
            let rep = rank_check_capped(inst, b, cap)?;
            out.push(record(
                "rank",
                format!("b={b}"),
                rep.observed_rank,
                rep.predicted,
                rep.precondition_met,
            ));
        }
    }
    if r + 2 <= n && only_b.is_none_or(|b| b == 2) {
        let observed = xonly_syzygy_dim_capped(inst, 1, cap)?;
        let condition = k >= m * (n - r);
        let predicted =
            condition.then(|| BigInt::from(syzygy_count(&params_of(inst).expect("valid"))));
        out.push(record(
            "syzygy",
            "d=1".into(),
            observed,
            predicted.clone(),
            condition,
        ));
        let (span, inside) = sprime_span(inst)?;
        // a syzygy outside the kernel is always a failure
        let predicted = if inside {
            predicted
        } else {
            Some(BigInt::from(-1))
        };
        out.push(record(
            "sprime_span",
            "d=1".into(),
            span,
            predicted,
            condition,
        ));
        let eqs = build_equations(inst)?;
        let all = enumerate_sprime(inst.field(), m, n, r)?;
        let mut passing = 0;
        for s in &all {
            if check_annihilation(inst.field(), &specialize(s, inst)?, &eqs)? {
                passing += 1;
            }
        }
        out.push(record(
            "annihilation",
            "d=1".into(),
            passing,
            Some(BigInt::from(all.len())),
            true,
        ));
    }
    if r + 1 == n {
        let b = only_b.unwrap_or(n + 1);
        let observed = xonly_syzygy_dim_capped(inst, b - 1, cap)?;
        let condition = k as i64 >= m as i64 + 1 - (n as i64 - 1) * n as i64;
        let predicted = condition.then(|| submax_dim_formula(m, n, k, b));
        out.push(record(
            "submax",
            format!("b={b}"),
            observed,
            predicted,
            condition,
        ));
    }
    Ok(out)
}

pub fn check(args: &CheckArgs, machine: bool) -> Result<i32> {
    if args.b == Some(0) {
        return Err(usage("--b must be positive"));
    }
    let instances: Vec<Loaded> = if args.source.input.is_some() {
        vec![load(&args.source)?]
    } else {
        (0..args.seeds)
            .map(|i| generate(&args.source.params, args.source.params.seed.wrapping_add(i)))
            .collect::<Result<_>>()?
    };
    let mut counts = [0usize; 3];
    for loaded in &instances {
        for rec in check_instance(loaded, args.b, args.cap_matrix)? {
            let status = rec.status();
            counts[match status {
                "MATCH" => 0,
                "MISMATCH" => 1,
                _ => 2,
            }] += 1;
            let predicted = rec
                .predicted
                .as_ref()
                .map_or("none".to_string(), |p| p.to_string());
            if machine {
                println!(
                    "instance={} check={} {} observed={} predicted={predicted} condition={} status={status}",
                    rec.label, rec.check, rec.degree, rec.observed, rec.condition
                );
            } else {
                println!(
                    "{:<10} {:<13} {:<4} observed {:<6} predicted {:<6} {status}{}",
                    rec.label,
                    rec.check,
                    rec.degree,
                    rec.observed,
                    predicted,
                    if rec.condition {
                        ""
                    } else {
                        "  (hypothesis not met)"
                    }
                );
            }
        }
    }
    if machine {
        println!(
            "match={} mismatch={} na={}",
            counts[0], counts[1], counts[2]
        );
    } else {
        println!(
            "{} MATCH, {} MISMATCH, {} NA",
            counts[0], counts[1], counts[2]
        );
    }
    Ok(if args.assert && counts[1] > 0 {
        MISMATCH
    } else {
        OK
    })
}

pub fn estimate(args: &EstimateArgs, machine: bool) -> Result<i32> {
    let mut p = ParameterSet::new(args.m, args.n, args.k, args.r)?;
    if let Some(q) = args.q {
        PrimeField::new(q)?;
        p.q = Some(q);
    }
    let report = complexity_report(&p);
    if machine {
        if let Some(q) = p.q {
            println!("q={q}");
        }
        print!("{}", report.to_key_value());
        return Ok(OK);
    }
    println!("parameters m={} n={} K={} r={}", p.m, p.n, p.k, p.r);
    for e in &report.entries {
        println!("b={}: Macaulay {} x {}", e.b, e.rows, e.cols);
        if e.precondition {
            println!("  independent equations {}", e.predicted_independent);
        } else {
            println!(
                "  independent equations {} (count not established: m C(n,r+1) > K C(n,r))",
                e.predicted_independent
            );
        }
        println!(
            "  solvable by linearization: {}",
            if e.solvable { "yes" } else { "no" }
        );
        println!(
            "  cost model: dense {}  sparse {}",
            e.cost.dense, e.cost.sparse
        );
    }
    match first_solvable_degree(&p) {
        Some(b) => println!("first solvable degree: b={b}"),
        None => println!("first solvable degree: none at b <= 2"),
    }
    Ok(OK)
}
