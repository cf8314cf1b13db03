use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use maxclass::classify::{
    classify_q3, render_tree, structured_tree, verify_k_lemmas, verify_main_theorem, CanonicalType,
};
use maxclass::exactnum::{det, ParamPoly, Rational, SolveResult};
use maxclass::extend::{binomial_matrix, extend_chain, ExtensionKind};
use maxclass::liealg::{
    build_extension_family, build_filiform_table, build_m0q, build_mq, build_witt, emit_algebra, family_lie_length,
    jacobi_check, parse_algebra, verify_leibniz, FiliformTable, GradedAlgebra,
};
use maxclass::report::{extension_human, extension_structured, record};
use maxclass::varieties::{
    all_weights_except, assemble_system, jacobian, jacobian_rank_at, restrict, Point, PolySystem, VarietyVar, Zeroed,
};

/// Exact construction, extension and classification of graded Lie algebras
/// of maximal class.
#[derive(Parser, Debug)]
#[command(name = "maxclass", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Directory for emitted algebra files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    M0q,
    Mq,
    Witt,
    Family,
    M03,
    M04_10,
    M05_11,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VarietyOp {
    Emit,
    Jacobian,
    Restrict,
    Eval,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Jacobi identity of an algebra file.
    Jacobi { file: PathBuf },
    /// Extend an algebra file by one degree at a time.
    Extend {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Write one of the built-in algebras.
    Build {
        kind: Kind,
        #[arg(long)]
        q: Option<usize>,
        /// Top degree.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// Comma-separated family parameters, e.g. `1/2,3`.
        #[arg(long, default_value = "")]
        betas: String,
    },
    /// Explore every extension chain over m^3_0(6).
    Classify {
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 30)]
        max_dim: usize,
    },
    /// Check that m^q_0 is the only chain with a long enough zero prefix.
    MainTheorem {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 40)]
        max_dim: usize,
    },
    /// The k = 4, 5, 6 dead ends of the q = 3 family.
    KLemmas,
    /// The defining polynomials of the variety of n-dimensional algebras.
    Variety {
        #[arg(long)]
        n: usize,
        op: VarietyOp,
        /// Weight classes to set to zero (restrict).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        zero: Vec<i64>,
        /// Keep only this weight class, zeroing every other one (restrict).
        #[arg(long, allow_hyphen_values = true)]
        keep: Option<i64>,
        /// `var=value` pairs, e.g. `xm1=1,x[2,0]=1/2`; unlisted coordinates are 0.
        #[arg(long, default_value = "")]
        point: String,
    },
    /// The binomial matrix of the obstruction and its determinant.
    Matrix {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
    },
    /// Randomized invariant checks over the builders.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

/// A failed run: exit 1 for a mathematical failure, 2 for bad input.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

/// Output text plus the exit status.
struct Run {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("MAXCLASS_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) => {
                // 0 keeps rayon's default.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Err(_) => {
                eprintln!("error: MAXCLASS_THREADS must be a non-negative integer, got `{}`", v);
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Run, Failure> {
    let structured = cli.format == Format::Structured;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Jacobi { file } => cmd_jacobi(file, structured),
        Command::Extend { file, steps } => cmd_extend(file, *steps, structured, out),
        Command::Build {
            kind,
            q,
            n,
            k,
            s,
            betas,
        } => {
            let a = cmd_build(*kind, *q, *n, *k, *s, betas)?;
            let text = emit_algebra(&a);
            match out {
                Some(dir) => {
                    let path = write_file(dir, &format!("{}.alg", file_stem(*kind, &a)), &text)?;
                    Ok(Run {
                        text: format!("wrote {}\n", path.display()),
                        ok: true,
                    })
                }
                None => Ok(Run { text, ok: true }),
            }
        }
        Command::Classify { q, max_dim } => cmd_classify(*q, *max_dim, structured, out),
        Command::MainTheorem { q, max_dim } => cmd_main_theorem(*q, *max_dim, structured),
        Command::KLemmas => Ok(cmd_k_lemmas(structured)),
        Command::Variety {
            n,
            op,
            zero,
            keep,
            point,
        } => cmd_variety(*n, *op, zero, *keep, point, structured),
        Command::Matrix { q, k } => cmd_matrix(*q, *k, structured),
        Command::Sweep { seed, count } => Ok(cmd_sweep(*seed, *count, structured)),
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {}", dir.display(), e)))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
    Ok(path)
}

fn read_algebra(file: &Path) -> Result<GradedAlgebra, Failure> {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("cannot read {}: {}", file.display(), e)))?;
    parse_algebra(&text).map_err(|e| usage(format!("{}: {}", file.display(), e)))
}

fn cmd_jacobi(file: &Path, structured: bool) -> Result<Run, Failure> {
    let a = read_algebra(file)?;
    let violations = jacobi_check(&a);
    let mut text = String::new();
    if structured {
        let status = if violations.is_empty() { "lie" } else { "not-lie" };
        text.push_str(&record(&[
            ("record", "jacobi".into()),
            ("status", status.into()),
            ("top", a.top().to_string()),
            ("violations", violations.len().to_string()),
        ]));
        for v in &violations {
            let (i, j, k) = v.triple;
            text.push_str(&record(&[
                ("record", "violation".into()),
                ("triple", format!("{},{},{}", i, j, k)),
                ("residual", v.residual.to_string()),
            ]));
        }
    } else if violations.is_empty() {
        text.push_str("LIE ALGEBRA\n");
    } else {
        let _ = writeln!(text, "NOT A LIE ALGEBRA: {} violated triples", violations.len());
        for v in &violations {
            let (i, j, k) = v.triple;
            let _ = writeln!(text, "  J({},{},{}) = {}", i, j, k, v.residual);
        }
    }
    Ok(Run {
        text,
        ok: violations.is_empty(),
    })
}

fn cmd_extend(file: &Path, steps: usize, structured: bool, out: Option<&Path>) -> Result<Run, Failure> {
    if steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    let a = read_algebra(file)?;
    let chain = match extend_chain(&a, steps) {
        Ok(c) => c,
        Err(e) => {
            return Err(Failure {
                code: 1,
                msg: e.to_string(),
            });
        }
    };
    let mut text = String::new();
    let mut ok = true;
    for (idx, step) in chain.iter().enumerate() {
        let o = &step.outcome;
        if structured {
            text.push_str(&extension_structured(o));
            for b in &step.bindings {
                text.push_str(&record(&[
                    ("record", "binding".into()),
                    ("level", b.level.to_string()),
                    ("param", b.param.clone()),
                    ("value", b.value.to_string()),
                    ("triple", format!("{},{},{}", b.triple.0, b.triple.1, b.triple.2)),
                ]));
            }
        } else {
            text.push_str(&extension_human(o));
            for b in &step.bindings {
                let _ = writeln!(text, "  forced {}", b);
            }
        }
        if o.kind == ExtensionKind::Inconsistent {
            ok = false;
            if !structured {
                text.push_str("  no extension: the constraints above cannot all vanish\n");
            }
            break;
        }
        let alg = o.algebra.as_ref().expect("consistent step has an algebra");
        let emitted = emit_algebra(alg);
        match out {
            Some(dir) => {
                let name = format!("step{:02}_dim{}.alg", idx + 1, alg.top());
                let path = write_file(dir, &name, &emitted)?;
                if structured {
                    text.push_str(&record(&[
                        ("record", "file".into()),
                        ("path", path.display().to_string()),
                    ]));
                } else {
                    let _ = writeln!(text, "  wrote {}", path.display());
                }
            }
            None if !structured => {
                for line in emitted.lines() {
                    let _ = writeln!(text, "    {}", line);
                }
            }
            None => {}
        }
    }
    Ok(Run { text, ok })
}

fn parse_betas(s: &str) -> Result<Vec<ParamPoly>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<ParamPoly>()
                .map_err(|e| usage(format!("bad beta `{}`: {}", t, e)))
        })
        .collect()
}

fn need(v: Option<usize>, flag: &str, kind: Kind) -> Result<usize, Failure> {
    v.ok_or_else(|| usage(format!("{:?} needs --{}", kind, flag).to_lowercase()))
}

fn cmd_build(
    kind: Kind,
    q: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    s: Option<usize>,
    betas: &str,
) -> Result<GradedAlgebra, Failure> {
    let built = match kind {
        Kind::M0q => build_m0q(need(q, "q", kind)?, need(n, "n", kind)?),
        Kind::Mq => build_mq(need(q, "q", kind)?, need(n, "n", kind)?),
        Kind::Witt => build_witt(need(q, "q", kind)?, need(n, "n", kind)?),
        Kind::Family => build_extension_family(
            need(q, "q", kind)?,
            need(k, "k", kind)?,
            need(s, "s", kind)?,
            &parse_betas(betas)?,
        ),
        Kind::M03 => build_filiform_table(FiliformTable::M03, need(k, "k", kind)?),
        Kind::M04_10 => build_filiform_table(FiliformTable::M04_10, 0),
        Kind::M05_11 => build_filiform_table(FiliformTable::M05_11, 0),
    };
    built.map_err(|e| usage(e.to_string()))
}

fn file_stem(kind: Kind, a: &GradedAlgebra) -> String {
    let name = match kind {
        Kind::M0q => "m0q",
        Kind::Mq => "mq",
        Kind::Witt => "witt",
        Kind::Family => "family",
        Kind::M03 => "m03",
        Kind::M04_10 => "m04",
        Kind::M05_11 => "m05",
    };
    format!("{}_q{}_dim{}", name, a.q(), a.top())
}

fn survivor_line(types: &[CanonicalType]) -> String {
    let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    let noun = if types.len() == 1 { "type" } else { "types" };
    format!("{} surviving {}: {}", types.len(), noun, names.join(", "))
}

fn cmd_classify(q: usize, max_dim: usize, structured: bool, out: Option<&Path>) -> Result<Run, Failure> {
    if q != 3 {
        return Err(usage(format!(
            "the full case analysis is implemented for q = 3 only, got q = {}; use main-theorem for q ≥ 3",
            q
        )));
    }
    let c = classify_q3(max_dim).map_err(|e| usage(e.to_string()))?;
    let types = c.summary.surviving_types();
    let tree = if structured {
        structured_tree(&c.root)
    } else {
        render_tree(&c.root)
    };
    let mut text = String::new();
    if let Some(dir) = out {
        let name = if structured {
            "classify_q3.tsv"
        } else {
            "classify_q3.txt"
        };
        write_file(dir, name, &tree)?;
    } else {
        text.push_str(&tree);
    }
    if structured {
        for (path, t) in &c.summary.survivors {
            text.push_str(&record(&[
                ("record", "survivor".into()),
                ("path", path.clone()),
                ("type", t.to_string()),
            ]));
        }
        for (dup, orig) in &c.summary.merged {
            text.push_str(&record(&[
                ("record", "merged".into()),
                ("path", dup.clone()),
                ("same_as", orig.clone()),
            ]));
        }
        for (path, level) in &c.summary.open {
            text.push_str(&record(&[
                ("record", "open".into()),
                ("path", path.clone()),
                ("level", level.to_string()),
            ]));
        }
        text.push_str(&record(&[
            ("record", "summary".into()),
            ("q", q.to_string()),
            ("max_dim", max_dim.to_string()),
            (
                "survivors",
                types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","),
            ),
            ("open", c.summary.open.len().to_string()),
            ("dead", c.summary.dead.to_string()),
        ]));
    } else {
        for (dup, orig) in &c.summary.merged {
            let _ = writeln!(text, "branch {} ends in the same algebra as {}", dup, orig);
        }
        for (path, level) in &c.summary.open {
            let _ = writeln!(
                text,
                "branch {} still open at dim {} (its deciding constraints lie beyond max_dim)",
                path, level
            );
        }
        let _ = writeln!(text, "{} dead ends", c.summary.dead);
        let _ = writeln!(text, "{}", survivor_line(&types));
    }
    Ok(Run { text, ok: true })
}

fn cmd_main_theorem(q: usize, max_dim: usize, structured: bool) -> Result<Run, Failure> {
    let r = verify_main_theorem(q, max_dim).map_err(|e| usage(e.to_string()))?;
    let mut text = String::new();
    let holds = r.holds();
    if structured {
        for d in &r.deviations {
            text.push_str(&record(&[
                ("record", "deviation".into()),
                ("level", d.level.to_string()),
                ("died_at", d.died_at.map(|l| l.to_string()).unwrap_or_default()),
                ("decidable", d.decidable.to_string()),
            ]));
        }
        text.push_str(&record(&[
            ("record", "main-theorem".into()),
            ("q", q.to_string()),
            ("max_dim", max_dim.to_string()),
            (
                "survivors",
                r.survivors
                    .iter()
                    .map(|(_, t)| t.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("spine_matches", r.spine_matches.to_string()),
            ("holds", holds.to_string()),
        ]));
    } else {
        for d in &r.deviations {
            match (d.died_at, d.decidable) {
                (Some(l), _) => {
                    let _ = writeln!(text, "parameter 1 at dim {}: every branch dead by dim {}", d.level, l);
                }
                (None, true) => {
                    let _ = writeln!(text, "parameter 1 at dim {}: SURVIVES", d.level);
                }
                (None, false) => {
                    let _ = writeln!(text, "parameter 1 at dim {}: undecided below dim {}", d.level, max_dim);
                }
            }
        }
        let types: Vec<CanonicalType> = r.survivors.iter().map(|(_, t)| *t).collect();
        let _ = writeln!(text, "{}", survivor_line(&types));
        let _ = writeln!(
            text,
            "q = {} up to dim {}: {}",
            q,
            max_dim,
            if holds { "HOLDS" } else { "FAILS" }
        );
    }
    Ok(Run { text, ok: holds })
}

fn cmd_k_lemmas(structured: bool) -> Run {
    let r = verify_k_lemmas();
    let mut text = String::new();
    for c in &r.cases {
        let betas: Vec<String> = c.betas.iter().map(|b| b.to_string()).collect();
        let death = c.death_level.map(|l| l.to_string()).unwrap_or_default();
        let triples: Vec<String> = c
            .death_constraints
            .iter()
            .map(|(i, j, k, p)| format!("J({},{},{}): {}", i, j, k, p))
            .collect();
        if structured {
            text.push_str(&record(&[
                ("record", "k-case".into()),
                ("k", c.k.to_string()),
                ("betas", betas.join(",")),
                ("death", death),
                ("constraints", triples.join(";")),
            ]));
        } else {
            let _ = writeln!(
                text,
                "k = {}: betas ({}), no extension to dim {}",
                c.k,
                betas.join(", "),
                death
            );
            for t in &triples {
                let _ = writeln!(text, "  {}", t);
            }
        }
    }
    let values: Vec<String> = r
        .k5_values
        .iter()
        .map(|((i, j), v)| format!("{},{}={}", i, j, v))
        .collect();
    let k6 = match &r.k6_result {
        SolveResult::Unique { solution, .. } => {
            format!(
                "unique: {}",
                solution.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            )
        }
        SolveResult::FreeVariables { free, .. } => format!("underdetermined, {} free", free.len()),
        SolveResult::Inconsistent { residuals, .. } => format!(
            "inconsistent, residual {}",
            residuals.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        ),
    };
    if structured {
        text.push_str(&record(&[("record", "k5-values".into()), ("values", values.join(";"))]));
        text.push_str(&record(&[("record", "k6-system".into()), ("result", k6)]));
    } else {
        let _ = writeln!(text, "k = 5 constants: {}", values.join(", "));
        let _ = writeln!(text, "k = 6 linear system in b1, b2:\n{}", r.k6_matrix);
        let _ = writeln!(text, "  -> {}", k6);
    }
    Run { text, ok: true }
}

fn parse_point(sys: &PolySystem, s: &str) -> Result<Point, Failure> {
    let mut p: Point = sys.vars.iter().map(|v| (*v, Rational::zero())).collect();
    // Split on commas outside brackets: `x[2,0]=1,xm1=2`.
    let mut depth = 0;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    for part in parts.into_iter().map(str::trim).filter(|t| !t.is_empty()) {
        let (v, x) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("expected var=value, got `{}`", part)))?;
        let var: VarietyVar = v.trim().parse().map_err(|e| usage(format!("{}", e)))?;
        if !p.contains_key(&var) {
            return Err(usage(format!("{} is not a coordinate of M_{}", var, sys.n)));
        }
        let val: Rational = x
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad value `{}`", x.trim())))?;
        p.insert(var, val);
    }
    Ok(p)
}

fn system_text(sys: &PolySystem, structured: bool) -> String {
    if !structured {
        return sys.export();
    }
    sys.polys
        .iter()
        .map(|p| {
            record(&[
                ("record", "poly".into()),
                ("label", p.label.to_string()),
                ("poly", p.poly.to_string()),
            ])
        })
        .collect()
}

fn cmd_variety(
    n: usize,
    op: VarietyOp,
    zero: &[i64],
    keep: Option<i64>,
    point: &str,
    structured: bool,
) -> Result<Run, Failure> {
    let sys = assemble_system(n).map_err(|e| usage(e.to_string()))?;
    let mut text = String::new();
    match op {
        VarietyOp::Emit => text = system_text(&sys, structured),
        VarietyOp::Restrict => {
            let mut zeroed: Vec<Zeroed> = zero.iter().map(|&w| Zeroed::Weight(w)).collect();
            if let Some(w) = keep {
                zeroed.extend(all_weights_except(n, w));
            }
            let mut r = restrict(&sys, &zeroed);
            r.polys.retain(|p| !p.poly.is_zero());
            text = system_text(&r, structured);
            if r.polys.is_empty() && !structured {
                text.push_str("every polynomial vanishes on the restriction\n");
            }
        }
        VarietyOp::Jacobian => {
            let m = jacobian(&sys);
            for (i, p) in sys.polys.iter().enumerate() {
                for (j, v) in sys.vars.iter().enumerate() {
                    let d = m.get(i, j);
                    if d.is_zero() {
                        continue;
                    }
                    if structured {
                        text.push_str(&record(&[
                            ("record", "partial".into()),
                            ("label", p.label.to_string()),
                            ("var", v.name()),
                            ("value", d.to_string()),
                        ]));
                    } else {
                        let _ = writeln!(text, "d {} / d {} = {}", p.label, v.name(), d);
                    }
                }
            }
            if !point.is_empty() {
                let pt = parse_point(&sys, point)?;
                let rank = jacobian_rank_at(&sys, &pt).map_err(|e| usage(e.to_string()))?;
                if structured {
                    text.push_str(&record(&[("record", "rank".into()), ("rank", rank.to_string())]));
                } else {
                    let _ = writeln!(text, "rank at point: {}", rank);
                }
            }
        }
        VarietyOp::Eval => {
            let pt = parse_point(&sys, point)?;
            let values = maxclass::varieties::eval_point(&sys, &pt).map_err(|e| usage(e.to_string()))?;
            let rank = jacobian_rank_at(&sys, &pt).map_err(|e| usage(e.to_string()))?;
            let on = values.iter().all(|v| v.is_zero());
            for (p, v) in sys.polys.iter().zip(&values) {
                if structured {
                    text.push_str(&record(&[
                        ("record", "value".into()),
                        ("label", p.label.to_string()),
                        ("value", v.to_string()),
                    ]));
                } else {
                    let _ = writeln!(text, "{} = {}", p.label, v);
                }
            }
            if structured {
                text.push_str(&record(&[
                    ("record", "point".into()),
                    ("on_variety", on.to_string()),
                    ("jacobian_rank", rank.to_string()),
                ]));
            } else {
                let _ = writeln!(
                    text,
                    "{} the variety; Jacobian rank {}",
                    if on { "on" } else { "not on" },
                    rank
                );
            }
        }
    }
    Ok(Run { text, ok: true })
}

fn cmd_matrix(q: usize, k: usize, structured: bool) -> Result<Run, Failure> {
    let m = binomial_matrix(q, k).map_err(usage)?;
    let d = det(&m).map_err(|e| usage(e.to_string()))?;
    let nonzero = !d.is_zero();
    let text = if structured {
        let rows: Vec<String> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| m.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        record(&[
            ("record", "matrix".into()),
            ("q", q.to_string()),
            ("k", k.to_string()),
            ("rows", rows.join(";")),
            ("det", d.to_string()),
            ("nonzero", nonzero.to_string()),
        ])
    } else {
        format!("{}\ndet = {} ({})\n", m, d, if nonzero { "nonzero" } else { "ZERO" })
    };
    Ok(Run { text, ok: nonzero })
}

/// One randomly drawn builder call.
#[derive(Debug)]
enum Instance {
    M0q(usize, usize),
    Mq(usize, usize),
    Witt(usize, usize),
    Family(usize, usize, usize, Vec<Rational>),
}

fn draw(rng: &mut StdRng) -> Instance {
    let q = rng.gen_range(3..=6);
    match rng.gen_range(0..4) {
        0 => Instance::M0q(q, rng.gen_range(q + 1..=4 * q)),
        1 => Instance::Mq(q, rng.gen_range(2 * q + 1..=4 * q + 2)),
        2 => Instance::Witt(q, rng.gen_range(2 * q + 1..=4 * q + 2)),
        _ => {
            let k = rng.gen_range(q..=q + 4);
            let s = rng.gen_range(0..=family_lie_length(q, k));
            let m = if s >= 3 { (s + 1) / 2 - 1 } else { 0 };
            let betas = (0..m)
                .map(|_| Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
                .collect();
            Instance::Family(q, k, s, betas)
        }
    }
}

fn check(inst: &Instance) -> Result<(), String> {
    let a = match inst {
        Instance::M0q(q, n) => build_m0q(*q, *n),
        Instance::Mq(q, n) => build_mq(*q, *n),
        Instance::Witt(q, n) => build_witt(*q, *n),
        Instance::Family(q, k, s, b) => {
            let betas: Vec<ParamPoly> = b.iter().map(|x| ParamPoly::constant(x.clone())).collect();
            build_extension_family(*q, *k, *s, &betas)
        }
    }
    .map_err(|e| e.to_string())?;
    for &i in a.support() {
        for &j in a.support() {
            if a.lambda(i, j) != -&a.lambda(j, i) {
                return Err(format!("lambda({},{}) is not antisymmetric", i, j));
            }
        }
    }
    if let Some(v) = jacobi_check(&a).first() {
        return Err(format!("J{:?} = {}", v.triple, v.residual));
    }
    if let Some(v) = verify_leibniz(&a).first() {
        return Err(format!("Leibniz fails: {:?}", v));
    }
    let round = parse_algebra(&emit_algebra(&a)).map_err(|e| e.to_string())?;
    if round != a {
        return Err("emit/parse round trip changed the algebra".into());
    }
    Ok(())
}

fn cmd_sweep(seed: u64, count: usize, structured: bool) -> Run {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut text = String::new();
    let mut failures = 0;
    for idx in 0..count {
        let inst = draw(&mut rng);
        if let Err(e) = check(&inst) {
            failures += 1;
            if structured {
                text.push_str(&record(&[
                    ("record", "failure".into()),
                    ("index", idx.to_string()),
                    ("instance", format!("{:?}", inst)),
                    ("error", e),
                ]));
            } else {
                let _ = writeln!(text, "#{} {:?}: {}", idx, inst, e);
            }
        }
    }
    if structured {
        text.push_str(&record(&[
            ("record", "sweep".into()),
            ("seed", seed.to_string()),
            ("instances", count.to_string()),
            ("failures", failures.to_string()),
        ]));
    } else {
        let _ = writeln!(text, "seed {}: {} instances, {} failures", seed, count, failures);
    }
    Run {
        text,
        ok: failures == 0,
    }
}
