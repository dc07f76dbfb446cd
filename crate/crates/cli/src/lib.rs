//! The `cartier` command line.
//!
//! Global flags come before the subcommand. Exit code 0 means success, 1 a
//! failed verification and 2 a usage, parse or ring error. The seed is echoed
//! on the error stream for every run.

use std::io::Write;
use std::sync::Arc;

use cartier::action::{act_element, consistency_check, Tautological};
use cartier::coefficients::{CoefficientRing, RingDescriptor, RingKind};
use cartier::crring::{basis, multiplication_table, relation_suite, RelationSet};
use cartier::exec::Execution;
use cartier::lang::{encode, parse_coords, parse_element, parse_scalar, print, print_scalar};
use cartier::witt::{universal_polys, WittBase, WittVector};
use cartier::{CrElement, CrRing, Fault};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

const AFTER_HELP: &str = "\
Expressions use v, f, d, eta, integers and Witt literals W[a0,a1,...];
juxtaposition multiplies, so `fdv`, `f d v` and `f*d*v` agree.
Expressions may start with `-`; write `--` before a bare `-v`, which is
otherwise read as the verbosity flag.
Words act on modules right to left: `act \"f*d*v\" --on x` computes F(d(V(x))).";

#[derive(Parser, Debug)]
#[command(name = "cartier", version, about = "Exact arithmetic in graded Cartier-Raynaud rings", after_help = AFTER_HELP)]
pub struct Cli {
    /// The prime p.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u64,
    /// Witt truncation length n.
    #[arg(long = "trunc", global = true, default_value_t = 2)]
    truncation: u32,
    /// Coefficient ring family.
    #[arg(long, global = true, value_enum, default_value_t = Coeff::WittFp)]
    coeff: Coeff,
    /// Residue field size for witt-perfect.
    #[arg(long, global = true)]
    q: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run randomized checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coeff {
    WittFp,
    WittPerfect,
    ZmodPn,
    FormalEta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiply two expressions.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Add two expressions.
    Add {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Print the degree of an expression, or its homogeneous degrees.
    Degree {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List the monomials v^i, d v^i, f^j, f^j d with index at most M.
    Basis {
        #[arg(long)]
        max: u32,
        #[arg(long)]
        degree: Option<i32>,
    },
    /// Pairwise products of the monomials with index at most M.
    Table {
        #[arg(long)]
        max: u32,
    },
    /// Check the defining relations on random coefficients.
    Verify {
        #[arg(long, default_value = "ir")]
        rules: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Corrupt one reduction rule, to see the suite fail.
        #[arg(long)]
        fault: Option<String>,
    },
    /// Compare word actions with normal-form actions on the tautological module.
    Consistency {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        len: usize,
        #[arg(long)]
        fault: Option<String>,
    },
    /// Act by an element on a point of a module.
    Act {
        expr: String,
        #[arg(long)]
        on: String,
        #[arg(long, default_value = "tautological")]
        module: String,
    },
    /// Witt vector arithmetic over int, zmod:M or gf:Q.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
}

#[derive(Subcommand, Debug)]
enum WittOp {
    Add { a: String, b: String, #[arg(long, default_value = "int")] base: String },
    Mul { a: String, b: String, #[arg(long, default_value = "int")] base: String },
    Neg { a: String, #[arg(long, default_value = "int")] base: String },
    Frob { a: String, #[arg(long, default_value = "int")] base: String },
    Versch { a: String, #[arg(long, default_value = "int")] base: String },
    /// Teichmuller lift of a base element, of length --trunc.
    Teich { x: String, #[arg(long, default_value = "int")] base: String },
    Ghost { a: String, #[arg(long, default_value = "int")] base: String },
    /// The universal sum, product, negation and Frobenius polynomials.
    Polys,
}

/// A failure and its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn structured(&self) -> bool {
        self.cli.output == Output::Structured
    }

    fn line(&mut self, s: &str) -> Result<(), Failure> {
        writeln!(self.out, "{}", s).map_err(|e| usage(format!("write failed: {}", e)))
    }

    fn doc(&mut self, v: &Value) -> Result<(), Failure> {
        self.line(&v.to_string())
    }

    fn element(&mut self, e: &CrElement) -> Result<(), Failure> {
        if self.structured() {
            self.line(&encode(e))
        } else {
            self.line(&print(e))
        }
    }

    fn exec(&self) -> Execution {
        if self.cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

fn descriptor(cli: &Cli) -> Result<RingDescriptor, Failure> {
    let kind = match cli.coeff {
        Coeff::WittFp => RingKind::WittFp,
        Coeff::WittPerfect => RingKind::WittPerfect,
        Coeff::ZmodPn => RingKind::ZmodPn,
        Coeff::FormalEta => RingKind::FormalEta,
    };
    Ok(match kind {
        RingKind::WittFp => RingDescriptor::witt_fp(cli.prime, cli.truncation),
        RingKind::ZmodPn => RingDescriptor::zmod(cli.prime, cli.truncation),
        RingKind::WittPerfect => {
            let q = cli.q.ok_or_else(|| usage("--coeff witt-perfect needs --q"))?;
            RingDescriptor::witt_perfect(cli.prime, q, cli.truncation)
        }
        RingKind::FormalEta => {
            if cli.prime != 2 {
                return Err(usage("formal-eta requires --prime 2"));
            }
            RingDescriptor::formal_eta()
        }
    })
}

fn coeffs(cli: &Cli) -> Result<Arc<CoefficientRing>, Failure> {
    CoefficientRing::new(descriptor(cli)?).map_err(usage)
}

fn fault(name: &Option<String>) -> Result<Option<Fault>, Failure> {
    match name {
        None => Ok(None),
        Some(n) => Fault::parse(n).map(Some).ok_or_else(|| {
            let names: Vec<&str> = Fault::ALL.iter().map(|f| f.name()).collect();
            usage(format!("unknown fault {:?}; expected one of {}", n, names.join(", ")))
        }),
    }
}

fn ring_with(a: Arc<CoefficientRing>, f: Option<Fault>) -> Arc<CrRing> {
    match f {
        Some(f) => CrRing::with_fault(a, f),
        None => CrRing::new(a),
    }
}

fn element(text: &str, ring: &Arc<CrRing>) -> Result<CrElement, Failure> {
    parse_element(text, ring).map_err(|e| usage(format!("{:?}: {}", text, e)))
}

/// Parses argv (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", text);
                    0
                }
                _ => {
                    let _ = write!(err, "{}", text);
                    2
                }
            };
        }
    };
    let _ = writeln!(err, "seed: {}", cli.seed);
    if cli.verbose > 0 {
        if let Ok(d) = descriptor(&cli) {
            let _ = writeln!(err, "ring: {}", d.label());
        }
    }
    let mut ctx = Ctx { cli: &cli, out };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(ctx: &mut Ctx) -> Result<i32, Failure> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Normalize { expr } => {
            let r = CrRing::new(coeffs(cli)?);
            let e = element(expr, &r)?;
            ctx.element(&e)?;
        }
        Command::Mul { left, right } | Command::Add { left, right } => {
            let r = CrRing::new(coeffs(cli)?);
            let (x, y) = (element(left, &r)?, element(right, &r)?);
            let e = match cli.command {
                Command::Mul { .. } => x.mul(&y),
                _ => x.add(&y),
            }
            .map_err(usage)?;
            ctx.element(&e)?;
        }
        Command::Degree { expr } => {
            let r = CrRing::new(coeffs(cli)?);
            let e = element(expr, &r)?;
            let degrees: Vec<i32> = e.homogeneous_parts().keys().copied().collect();
            if ctx.structured() {
                ctx.doc(&json!({ "degree": e.degree(), "degrees": degrees }))?;
            } else if let Some(d) = e.degree() {
                ctx.line(&d.to_string())?;
            } else if degrees.is_empty() {
                ctx.line("zero")?;
            } else {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                ctx.line(&format!("inhomogeneous: {}", ds.join(" ")))?;
            }
        }
        Command::Basis { max, degree } => {
            let monos = basis(*max, *degree);
            if ctx.structured() {
                let items: Vec<Value> = monos
                    .iter()
                    .map(|m| json!({ "monomial": m.to_string(), "degree": m.degree() }))
                    .collect();
                ctx.doc(&json!({ "max": max, "count": monos.len(), "basis": items }))?;
            } else {
                for m in monos {
                    ctx.line(&m.to_string())?;
                }
            }
        }
        Command::Table { max } => {
            let r = CrRing::new(coeffs(cli)?);
            for (m, n, e) in multiplication_table(&r, *max) {
                if ctx.structured() {
                    let product: Value = serde_json::from_str(&encode(&e)).expect("encode emits JSON");
                    ctx.doc(&json!({ "left": m.to_string(), "right": n.to_string(), "product": product }))?;
                } else {
                    ctx.line(&format!("{} * {} = {}", m, n, print(&e)))?;
                }
            }
        }
        Command::Verify { rules, samples, fault: name } => {
            let set = RelationSet::parse(rules).ok_or_else(|| usage(format!("unknown rules {:?}; expected itcart or ir", rules)))?;
            let r = ring_with(coeffs(cli)?, fault(name)?);
            let rep = relation_suite(&r, set, *samples, cli.seed, ctx.exec());
            if ctx.structured() {
                let results: Vec<Value> = rep
                    .results
                    .iter()
                    .map(|res| {
                        let cx = res.counterexample.as_ref().map(|c| {
                            json!({ "sample": c.sample, "x": c.x, "context": c.context, "lhs": c.lhs, "rhs": c.rhs })
                        });
                        json!({ "relation": res.name, "checked": res.checked, "failures": res.failures, "counterexample": cx })
                    })
                    .collect();
                ctx.doc(&json!({
                    "ring": rep.ring, "rules": rep.rules.name(), "samples": rep.samples,
                    "seed": rep.seed, "passed": rep.all_passed(), "results": results,
                }))?;
            } else {
                ctx.line(&format!("ring {} rules {} samples {} seed {}", rep.ring, rep.rules.name(), rep.samples, rep.seed))?;
                for res in &rep.results {
                    let status = if res.passed() { "PASS" } else { "FAIL" };
                    ctx.line(&format!("{} {} ({} failures in {})", status, res.name, res.failures, res.checked))?;
                    if let Some(c) = &res.counterexample {
                        let at = c.context.as_ref().map_or(String::new(), |y| format!(", times {}", y));
                        ctx.line(&format!("  sample {}: x = {}{}: {} != {}", c.sample, c.x, at, c.lhs, c.rhs))?;
                    }
                }
            }
            return Ok(if rep.all_passed() { 0 } else { 1 });
        }
        Command::Consistency { samples, len, fault: name } => {
            let a = coeffs(cli)?;
            let m = Tautological::new(a.clone()).map_err(usage)?;
            let r = ring_with(a, fault(name)?);
            let rep = consistency_check(&m, &r, *samples, *len, cli.seed, ctx.exec());
            if ctx.structured() {
                let ws: Vec<Value> = rep
                    .witnesses
                    .iter()
                    .map(|w| {
                        json!({ "sample": w.sample, "word": w.word, "normal_form": w.normal_form,
                                "point": w.point, "by_word": w.by_word, "by_element": w.by_element })
                    })
                    .collect();
                ctx.doc(&json!({
                    "ring": rep.ring, "samples": rep.samples, "max_len": rep.max_len, "seed": rep.seed,
                    "failures": rep.failures, "passed": rep.passed(), "witnesses": ws,
                }))?;
            } else {
                let status = if rep.passed() { "PASS" } else { "FAIL" };
                ctx.line(&format!(
                    "{} ring {} words {} max length {} seed {}: {} mismatches",
                    status, rep.ring, rep.samples, rep.max_len, rep.seed, rep.failures
                ))?;
                for w in &rep.witnesses {
                    ctx.line(&format!(
                        "  sample {}: {} = {} on {}: {} != {}",
                        w.sample, w.word, w.normal_form, w.point, w.by_word, w.by_element
                    ))?;
                }
            }
            return Ok(if rep.passed() { 0 } else { 1 });
        }
        Command::Act { expr, on, module } => {
            if module != "tautological" {
                return Err(usage(format!("unknown module {:?}; expected tautological", module)));
            }
            let a = coeffs(cli)?;
            let r = CrRing::new(a.clone());
            let m = Tautological::new(a.clone()).map_err(usage)?;
            let e = element(expr, &r)?;
            let x = parse_scalar(on, &r).map_err(|e| usage(format!("{:?}: {}", on, e)))?;
            let y = act_element(&m, &e, &x).map_err(usage)?;
            let text = print_scalar(&a, &y);
            if ctx.structured() {
                ctx.doc(&json!({ "element": print(&e), "point": print_scalar(&a, &x), "result": text }))?;
            } else {
                ctx.line(&text)?;
            }
        }
        Command::Witt { op } => witt(ctx, op)?,
    }
    Ok(0)
}

fn witt_base(text: &str, prime: u64) -> Result<WittBase, Failure> {
    let bad = || usage(format!("bad base {:?}; expected int, zmod:M or gf:Q", text));
    if text == "int" {
        return Ok(WittBase::Integers);
    }
    let (kind, n) = text.split_once(':').ok_or_else(bad)?;
    let n: u64 = n.parse().map_err(|_| bad())?;
    match kind {
        "zmod" if n >= 2 => Ok(WittBase::Zmod(n)),
        "gf" => WittBase::field(prime, n).map_err(usage),
        _ => Err(bad()),
    }
}

fn witt_vector(text: &str, prime: u64, base: &WittBase) -> Result<WittVector, Failure> {
    let coords = parse_coords(text).map_err(|e| usage(format!("{:?}: {}", text, e)))?;
    WittVector::from_i64(prime, base.clone(), &coords).map_err(usage)
}

fn witt(ctx: &mut Ctx, op: &WittOp) -> Result<(), Failure> {
    let p = ctx.cli.prime;
    let vec_of = |text: &str, base: &str| -> Result<WittVector, Failure> { witt_vector(text, p, &witt_base(base, p)?) };
    let result = match op {
        WittOp::Add { a, b, base } => vec_of(a, base)?.add(&vec_of(b, base)?).map_err(usage)?,
        WittOp::Mul { a, b, base } => vec_of(a, base)?.mul(&vec_of(b, base)?).map_err(usage)?,
        WittOp::Neg { a, base } => vec_of(a, base)?.neg().map_err(usage)?,
        WittOp::Frob { a, base } => vec_of(a, base)?.frobenius().map_err(usage)?,
        WittOp::Versch { a, base } => vec_of(a, base)?.verschiebung(),
        WittOp::Teich { x, base } => {
            let x: BigInt = x.parse().map_err(|_| usage(format!("bad integer {:?}", x)))?;
            let n = ctx.cli.truncation as usize;
            WittVector::teichmuller(p, witt_base(base, p)?, x, n).map_err(usage)?
        }
        WittOp::Ghost { a, base } => {
            let g: Vec<String> = vec_of(a, base)?.ghost().iter().map(|c| c.to_string()).collect();
            return if ctx.structured() {
                ctx.doc(&json!({ "ghost": g }))
            } else {
                ctx.line(&format!("({})", g.join(", ")))
            };
        }
        WittOp::Polys => {
            let u = universal_polys(p, ctx.cli.truncation as usize).map_err(usage)?;
            return ctx.line(u.render().trim_end());
        }
    };
    if ctx.structured() {
        let cs: Vec<String> = result.coords().iter().map(|c| c.to_string()).collect();
        ctx.doc(&json!({ "prime": p, "base": result.base().to_string(), "coords": cs }))
    } else {
        ctx.line(&result.to_string())
    }
}
