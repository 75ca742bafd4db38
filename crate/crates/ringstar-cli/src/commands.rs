//! Command-line surface: argument definitions and dispatch.

use crate::error::CliError;
use crate::expr::{self, Expr};
use crate::ring_syntax::{parse_coset, parse_descriptor, parse_ideal, parse_pairs, split_top};
use clap::{Parser, Subcommand, ValueEnum};
use ringstar::cosets::{cover_decide, fmt_coset, Cover};
use ringstar::ideals::{absolute_index, fmt_ideal, relative_index, Ideal};
use ringstar::scalar;
use ringstar::semigroups::{QuasiLattice, Semigroup, SemigroupKind};
use ringstar::simplicity::{self, IndexRule};
use ringstar::spectra;
use ringstar::star_algebra::{self as alg, AlgebraElement};
use ringstar::{Ring, RingDescriptor};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "ringstar", version, about = "Exact computations in ring C*-algebras")]
pub struct Cli {
    /// z | quad:D | qpoly | opoly:D | cyc:P | zinv:P | prod:(A,B)
    #[arg(long, global = true, default_value = "z")]
    pub ring: String,
    /// Base ideals for E(..) supports, separated by ';'.
    #[arg(long, global = true)]
    pub family: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize an expression, or apply it to a basis vector.
    Eval {
        expr: String,
        #[arg(long)]
        at: Option<String>,
    },
    Mul {
        x: String,
        y: String,
    },
    Adjoint {
        x: String,
    },
    /// Operator equality.
    Eq {
        x: String,
        y: String,
    },
    /// The conditional expectation onto the diagonal.
    Expect {
        x: String,
    },
    /// Supremum norm of a diagonal element.
    Norm {
        x: String,
    },
    /// Is the coset covered by the listed cosets?
    Cover {
        #[arg(long)]
        coset: String,
        /// Cosets separated by ';'.
        #[arg(long)]
        by: String,
    },
    /// Absolute index, or relative index against a second ideal.
    Index {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        relative: Option<String>,
    },
    /// Atomize diagonal projections.
    Orthogonalize {
        projections: Vec<String>,
    },
    /// Build and verify the projections of the pure-infiniteness criterion.
    Criterion {
        x: String,
    },
    /// Find an element of the ideal outside every candidate coset.
    Refute {
        #[arg(long)]
        ideal: String,
        /// Candidates `(a,b);(a,b)`.
        #[arg(long)]
        by: String,
    },
    /// Finite levels of the spectrum.
    Spectrum {
        /// Modulus: an ideal, or an integer for zinv rings.
        #[arg(long)]
        level: Option<String>,
        /// Level index for qpoly.
        #[arg(long)]
        depth: Option<usize>,
        /// Point for a character evaluation.
        #[arg(long)]
        at: Option<String>,
        /// Diagonal element for a character evaluation.
        #[arg(long)]
        element: Option<String>,
    },
    /// Constructible right ideals of a semigroup.
    Semigroup {
        /// free:K | nat:K | axb
        #[arg(long)]
        kind: String,
        #[arg(value_enum)]
        action: SemigroupAction,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Report on the two ring hypotheses.
    CheckConditions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemigroupAction {
    Family,
    Quasilattice,
}

/// Rendered result with its exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    /// Nonzero when the result is a negative verdict the caller must notice.
    pub status: i32,
}

impl Output {
    fn new(text: String, json: Value) -> Output {
        Output {
            text,
            json,
            dot: None,
            status: 0,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json values serialize")),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| CliError::Usage("this command has no DOT rendering".into())),
        }
    }
}

struct Ctx {
    ring: Ring,
    family: Option<Vec<Ideal>>,
}

impl Ctx {
    fn expr(&self, src: &str) -> Result<(Expr, AlgebraElement), CliError> {
        let e = expr::parse(&self.ring, src)?;
        if let Some(f) = &self.family {
            expr::check_family(&self.ring, &e, f)?;
        }
        let x = expr::build(&self.ring, &e)?;
        Ok((e, x))
    }

    fn elem(&self, src: &str) -> Result<AlgebraElement, CliError> {
        Ok(self.expr(src)?.1)
    }

    fn show(&self, x: &AlgebraElement) -> Result<String, CliError> {
        Ok(alg::fmt_element(&self.ring, &alg::simplify(&self.ring, x)?)?)
    }
}

fn with_schema(command: &str, body: Value) -> Value {
    let mut v = json!({"schema": 1, "command": command});
    if let (Some(map), Value::Object(extra)) = (v.as_object_mut(), body) {
        map.extend(extra);
    }
    v
}

fn element_output(ctx: &Ctx, command: &str, x: &AlgebraElement) -> Result<Output, CliError> {
    let text = ctx.show(x)?;
    Ok(Output::new(text.clone(), with_schema(command, json!({"result": text}))))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let desc = parse_descriptor(&cli.ring)?;
    let ring = Ring::new(desc)?;
    let family = match &cli.family {
        None => None,
        Some(src) => Some(
            split_top(src, ';')
                .into_iter()
                .filter(|(_, s)| !s.trim().is_empty())
                .map(|(o, s)| parse_ideal(&ring, s, o))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let ctx = Ctx { ring, family };
    let r = &ctx.ring;
    let out = match &cli.command {
        Command::Eval { expr, at } => {
            let x = ctx.elem(expr)?;
            match at {
                None => element_output(&ctx, "eval", &x)?,
                Some(point) => {
                    let p = crate::ring_syntax::parse_elem(r, point, 0)?;
                    let image = alg::evaluate(r, &x, &p);
                    let text = if image.is_empty() {
                        "0".to_string()
                    } else {
                        image
                            .iter()
                            .map(|(c, s)| match scalar::fmt(c).as_str() {
                                "1" => format!("xi({})", r.fmt(s)),
                                "-1" => format!("-xi({})", r.fmt(s)),
                                k if k.contains(['+', ' ']) => format!("({k}) xi({})", r.fmt(s)),
                                k => format!("{k} xi({})", r.fmt(s)),
                            })
                            .fold(String::new(), |acc, t| match (acc.is_empty(), t.strip_prefix('-')) {
                                (true, _) => t,
                                (false, Some(rest)) => format!("{acc} - {rest}"),
                                (false, None) => format!("{acc} + {t}"),
                            })
                    };
                    let terms: Vec<Value> = image
                        .iter()
                        .map(|(c, s)| json!({"coefficient": scalar::fmt(c), "index": r.fmt(s)}))
                        .collect();
                    Output::new(text, with_schema("eval", json!({"at": r.fmt(&p), "image": terms})))
                }
            }
        }
        Command::Mul { x, y } => {
            let p = alg::elem_mul(r, &ctx.elem(x)?, &ctx.elem(y)?)?;
            element_output(&ctx, "mul", &p)?
        }
        Command::Adjoint { x } => element_output(&ctx, "adjoint", &alg::adjoint(r, &ctx.elem(x)?)?)?,
        Command::Expect { x } => element_output(&ctx, "expect", &alg::expectation(r, &ctx.elem(x)?))?,
        Command::Eq { x, y } => {
            let v = alg::elem_eq(r, &ctx.elem(x)?, &ctx.elem(y)?)?;
            Output::new(v.to_string(), with_schema("eq", json!({"equal": v})))
        }
        Command::Norm { x } => {
            let n = alg::d_norm(r, &ctx.elem(x)?)?;
            Output::new(
                n.to_string(),
                with_schema("norm", json!({"norm": n.to_string(), "squared": n.squared.to_string()})),
            )
        }
        Command::Cover { coset, by } => {
            let c = parse_coset(r, coset, 0)?;
            let fam = split_top(by, ';')
                .into_iter()
                .filter(|(_, s)| !s.trim().is_empty())
                .map(|(o, s)| parse_coset(r, s, o))
                .collect::<Result<Vec<_>, _>>()?;
            cover_output(
                &ctx,
                "cover",
                &cover_decide(r, &c, &fam)?,
                json!({"coset": fmt_coset(r, &c)}),
            )?
        }
        Command::Index { ideal, relative } => {
            let i = parse_ideal(r, ideal, 0)?;
            let v = match relative {
                None => absolute_index(r, &i),
                Some(j) => relative_index(r, &i, &parse_ideal(r, j, 0)?),
            };
            Output::new(
                v.to_string(),
                with_schema(
                    "index",
                    json!({"ideal": fmt_ideal(r, &i), "index": v.to_string(), "finite": v.is_finite()}),
                ),
            )
        }
        Command::Orthogonalize { projections } => orthogonalize(&ctx, projections)?,
        Command::Criterion { x } => criterion(&ctx, x)?,
        Command::Refute { ideal, by } => {
            let i = parse_ideal(r, ideal, 0)?;
            let cands = parse_pairs(r, by)?;
            let res = simplicity::coverage_refute(r, &i, &cands)?;
            let rules: Vec<Value> = cands
                .iter()
                .zip(&res.rules)
                .map(|((a, b), rule)| json!({"a": r.fmt(a), "b": r.fmt(b), "rule": rule_name(*rule)}))
                .collect();
            let mut out = cover_output(
                &ctx,
                "refute",
                &res.result,
                json!({"ideal": fmt_ideal(r, &i), "rules": rules}),
            )?;
            for ((a, b), rule) in cands.iter().zip(&res.rules) {
                out.text
                    .push_str(&format!("\n({},{}): {}", r.fmt(a), r.fmt(b), rule_name(*rule)));
            }
            out
        }
        Command::Spectrum {
            level,
            depth,
            at,
            element,
        } => spectrum(&ctx, level.as_deref(), *depth, at.as_deref(), element.as_deref())?,
        Command::Semigroup { kind, action, depth } => semigroup(kind, *action, *depth)?,
        Command::CheckConditions => {
            let rep = simplicity::theorem_conditions_check(r)?;
            let line = |name: &str, v: &simplicity::Verdict| {
                format!(
                    "{name}: {} ({}, {} samples)",
                    if v.holds { "holds" } else { "fails" },
                    v.basis,
                    v.samples
                )
            };
            let text = format!(
                "{}\n{}",
                line("intersection", &rep.intersection),
                line("index", &rep.index)
            );
            let verdict = |v: &simplicity::Verdict| json!({"holds": v.holds, "basis": v.basis, "samples": v.samples});
            Output::new(
                text,
                with_schema(
                    "check-conditions",
                    json!({"ring": rep.ring, "intersection": verdict(&rep.intersection), "index": verdict(&rep.index)}),
                ),
            )
        }
    };
    Ok(out)
}

fn cover_output(ctx: &Ctx, command: &str, c: &Cover, extra: Value) -> Result<Output, CliError> {
    let (text, body) = match c {
        Cover::Covered => ("covered".to_string(), json!({"covered": true})),
        Cover::Witness(w) => {
            let s = ctx.ring.fmt(w);
            (format!("witness {s}"), json!({"covered": false, "witness": s}))
        }
    };
    let mut body = body;
    if let (Some(map), Value::Object(more)) = (body.as_object_mut(), extra) {
        map.extend(more);
    }
    Ok(Output::new(text, with_schema(command, body)))
}

fn rule_name(rule: IndexRule) -> &'static str {
    match rule {
        IndexRule::ConstantNotContained => "constant-not-contained",
        IndexRule::DegreeSeparation => "degree-separation",
        IndexRule::None => "none",
    }
}

fn orthogonalize(ctx: &Ctx, projections: &[String]) -> Result<Output, CliError> {
    let r = &ctx.ring;
    let ps = projections
        .iter()
        .map(|p| Ok(alg::diagonal_weight(r, &ctx.elem(p)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let fam = simplicity::orthogonalize(r, &ps)?;
    let atoms = fam
        .atoms
        .iter()
        .map(|a| ctx.show(&alg::diagonal(r, a)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    for (i, a) in atoms.iter().enumerate() {
        text.push_str(&format!("p{i} = {a}\n"));
    }
    for (j, parts) in fam.decomposition.iter().enumerate() {
        let names: Vec<String> = parts.iter().map(|i| format!("p{i}")).collect();
        text.push_str(&format!(
            "input {j} = {}\n",
            if names.is_empty() {
                "0".into()
            } else {
                names.join(" + ")
            }
        ));
    }
    Ok(Output::new(
        text.trim_end().to_string(),
        with_schema(
            "orthogonalize",
            json!({"atoms": atoms, "decomposition": fam.decomposition}),
        ),
    ))
}

fn criterion(ctx: &Ctx, src: &str) -> Result<Output, CliError> {
    let r = &ctx.ring;
    let x = ctx.elem(src)?;
    let rep = simplicity::criterion_pipeline(r, &x)?;
    let theta = ctx.show(&rep.theta)?;
    let mut text = format!("expectation: {theta}\nd: {}\n", r.fmt(&rep.d));
    let mut fs = Vec::new();
    for w in &rep.witnesses {
        let f = format!(
            "E({} mod {})",
            r.fmt(&w.rep),
            fmt_ideal(r, &ringstar::ideals::principal(r, &w.modulus)?)
        );
        text.push_str(&format!("f = {f}, value {}\n", scalar::fmt(&w.value)));
        fs.push(json!({
            "projection": f,
            "rep": r.fmt(&w.rep),
            "modulus": r.fmt(&w.modulus),
            "inner_rep": r.fmt(&w.inner_rep),
            "inner_modulus": r.fmt(&w.inner_modulus),
            "value": scalar::fmt(&w.value),
        }));
    }
    for c in &rep.checks {
        text.push_str(&format!(
            "{}: {} ({})\n",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        ));
    }
    let critical: Vec<Value> = rep
        .critical
        .iter()
        .map(|c| {
            json!({
                "b": r.fmt(&c.map.b),
                "c": r.fmt(&c.map.c),
                "e": r.fmt(&c.map.e),
                "shifts": c.shift.iter().map(|v| r.fmt(v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let atoms = rep
        .projections
        .atoms
        .iter()
        .map(|a| ctx.show(&alg::diagonal(r, a)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Output::new(
        text.trim_end().to_string(),
        with_schema(
            "criterion",
            json!({
                "expectation": theta,
                "d": r.fmt(&rep.d),
                "atoms": atoms,
                "projections": fs,
                "critical": critical,
                "checks": checks,
                "passed": rep.passed(),
            }),
        ),
    );
    if !rep.passed() {
        out.status = 1;
    }
    Ok(out)
}

fn spectrum(
    ctx: &Ctx,
    level: Option<&str>,
    depth: Option<usize>,
    at: Option<&str>,
    element: Option<&str>,
) -> Result<Output, CliError> {
    let r = &ctx.ring;
    if let Some(n) = depth {
        if *r.desc() != RingDescriptor::RationalPoly {
            return Err(CliError::Usage("--depth applies to --ring qpoly".into()));
        }
        return Ok(poly_levels(n));
    }
    let Some(level) = level else {
        return Err(CliError::Usage("spectrum needs --level or --depth".into()));
    };
    let lvl = match r.desc() {
        RingDescriptor::LocalizedIntegers(p) => {
            let m: i64 = level
                .trim()
                .parse()
                .map_err(|_| CliError::Usage("zinv levels take an integer modulus".into()))?;
            spectra::localized_level(*p, m)?
        }
        _ => match level.trim().parse::<i64>() {
            Ok(n) => spectra::finite_level(r, &ringstar::ideals::principal(r, &r.int(n))?)?,
            Err(_) => spectra::finite_level(r, &parse_ideal(r, level, 0)?)?,
        },
    };
    let points: Vec<String> = lvl.points.iter().map(|p| r.fmt(p)).collect();
    let modulus = fmt_ideal(r, &lvl.modulus);
    if let (Some(z), Some(x)) = (at, element) {
        let zp = crate::ring_syntax::parse_elem(r, z, 0)?;
        let v = spectra::character_eval(r, &lvl, &zp, &ctx.elem(x)?)?;
        let s = scalar::fmt(&v);
        return Ok(Output::new(
            s.clone(),
            with_schema("spectrum", json!({"level": modulus, "at": r.fmt(&zp), "value": s})),
        ));
    }
    let mut out = Output::new(
        format!("{} points mod {modulus}: {}", points.len(), points.join(", ")),
        with_schema("spectrum", json!({"level": modulus, "points": points})),
    );
    if *r.desc() == RingDescriptor::Integers {
        let n = lvl.points.len();
        let mut dot = String::from("digraph levels {\n");
        for (a, b) in spectra::divisor_graph(n as u64) {
            dot.push_str(&format!("  \"Z/{a}\" -> \"Z/{b}\";\n"));
        }
        dot.push('}');
        out.dot = Some(dot);
    }
    Ok(out)
}

fn poly_levels(n: usize) -> Output {
    let q = Ring::new(RingDescriptor::RationalPoly).expect("Q[T] is valid");
    let primes: Vec<String> = spectra::qpoly_primes(n).iter().map(|p| q.fmt(p)).collect();
    let tuples = spectra::level_exponents(n);
    let label = |e: &[u32]| format!("({})", e.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
    let mut text = format!("level {n} over primes {}\n", primes.join(", "));
    let mut rows = Vec::new();
    for e in &tuples {
        let m = q.fmt(&spectra::level_modulus(e));
        text.push_str(&format!("{} mod {m}\n", label(e)));
        rows.push(json!({"exponents": e, "modulus": m}));
    }
    let mut dot = String::from("digraph levels {\n");
    for e in &tuples {
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                dot.push_str(&format!("  \"{}\" -> \"{}\";\n", label(e), label(&f)));
            }
        }
    }
    dot.push('}');
    let mut out = Output::new(
        text.trim_end().to_string(),
        with_schema("spectrum", json!({"level": n, "primes": primes, "ideals": rows})),
    );
    out.dot = Some(dot);
    out
}

fn parse_kind(s: &str) -> Result<SemigroupKind, CliError> {
    let bad = || CliError::Usage(format!("unknown semigroup kind '{s}' (free:K, nat:K or axb)"));
    match s.split_once(':') {
        Some(("free", k)) => Ok(SemigroupKind::FreeMonoid(k.parse().map_err(|_| bad())?)),
        Some(("nat", k)) => Ok(SemigroupKind::Additive(k.parse().map_err(|_| bad())?)),
        None if s == "axb" => Ok(SemigroupKind::AxPlusB),
        _ => Err(bad()),
    }
}

fn semigroup(kind: &str, action: SemigroupAction, depth: usize) -> Result<Output, CliError> {
    let sg = Semigroup::new(parse_kind(kind)?)?;
    match action {
        SemigroupAction::Family => {
            let fam = sg.constructible_family(depth)?;
            let names: Vec<String> = fam.iter().map(|s| s.to_string()).collect();
            let mut dot = String::from("digraph family {\n");
            for s in &fam {
                for g in sg.generators() {
                    let t = sg.ideal_translate(&g, s)?;
                    if fam.contains(&t) && t != *s {
                        dot.push_str(&format!("  \"{s}\" -> \"{t}\" [label=\"{g}\"];\n"));
                    }
                }
            }
            dot.push('}');
            let mut out = Output::new(
                format!("{} sets: {}", names.len(), names.join(", ")),
                with_schema("semigroup", json!({"kind": kind, "depth": depth, "family": names})),
            );
            out.dot = Some(dot);
            Ok(out)
        }
        SemigroupAction::Quasilattice => match sg.quasi_lattice_check(depth)? {
            QuasiLattice::Holds { meets } => {
                let pairs: Vec<Value> = meets
                    .iter()
                    .map(|(p, q, m)| json!({"p": p.to_string(), "q": q.to_string(), "meet": m.as_ref().map(|g| g.to_string())}))
                    .collect();
                Ok(Output::new(
                    format!("quasi-lattice on {} pairs up to depth {depth}", meets.len()),
                    with_schema(
                        "semigroup",
                        json!({"kind": kind, "depth": depth, "holds": true, "pairs": pairs}),
                    ),
                ))
            }
            QuasiLattice::Counterexample(p, q) => {
                let mut out = Output::new(
                    format!("counterexample: {p}, {q}"),
                    with_schema(
                        "semigroup",
                        json!({"kind": kind, "depth": depth, "holds": false, "p": p.to_string(), "q": q.to_string()}),
                    ),
                );
                out.status = 1;
                Ok(out)
            }
        },
    }
}
