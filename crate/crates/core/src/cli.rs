//! Command surface of the `redalg` binary.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::json;

use crate::coeff::{RatFunc, Var};
use crate::drsl2::{self, DrSl2, SIGN_CONVENTION};
use crate::error::{Error, Result};
use crate::expr::{self, render};
use crate::ncalg::NCElement;
use crate::ore::{ore_residual, ore_right, ore_vanishing, Denominator};
use crate::report::Report;
use crate::rewrite::{Presentation, Strategy};
use crate::sample;
use crate::weylmod::{
    euler_gamma_norm, prop2_residuals, solve_prop2, verify_iso2_on_module, ActionCoeffs, VModule,
};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "redalg",
    version,
    about = "Exact normal forms and checks for DR(sl(2))"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = crate::rewrite::DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    /// Number of random samples (command-specific default).
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Maximum word length of random samples.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_deg: usize,
    /// Load a presentation from a text file instead of DR(sl(2)).
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Leftmost,
    Rightmost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Leftmost => Strategy::Leftmost,
            StrategyArg::Rightmost => Strategy::Rightmost,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Normal form of an expression.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
    },
    /// Normal form of `a b - b a`.
    Commutator { a: String, b: String },
    /// Commutators of C1 and C2 with the generators, a generic coefficient
    /// and each other.
    CenterCheck,
    /// Resolves every overlap of the rules in both orders.
    ConfluenceCheck,
    /// Normal forms of all words of a fixed length over the ordered basis.
    PbwCount {
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Degree and symbol of the quadratic rule coefficients.
    SymbolCheck,
    /// Compares the engine with the V_M action on rules and random elements.
    ModuleCheck,
    /// Solves the module recurrences and verifies the solution.
    Prop2Solve {
        #[arg(long, default_value = "2*M")]
        alpha0: String,
        #[arg(long, default_value = "nu")]
        nu: String,
        /// Value of gamma~ at j = 0; defaults to the Euler normalization.
        #[arg(long)]
        gamma0: Option<String>,
    },
    /// Ore witness for one expression, or a seeded probe without one.
    Ore {
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Seeded search for zero divisors among random elements.
    ZeroDivisorProbe,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Commutator { .. } => "commutator",
            Command::CenterCheck => "center-check",
            Command::ConfluenceCheck => "confluence-check",
            Command::PbwCount { .. } => "pbw-count",
            Command::SymbolCheck => "symbol-check",
            Command::ModuleCheck => "module-check",
            Command::Prop2Solve { .. } => "prop2-solve",
            Command::Ore { .. } => "ore",
            Command::ZeroDivisorProbe => "zero-divisor-probe",
        }
    }

    fn needs_drsl2(&self) -> bool {
        matches!(
            self,
            Command::CenterCheck
                | Command::ModuleCheck
                | Command::Prop2Solve { .. }
                | Command::ZeroDivisorProbe
        )
    }
}

/// Parses an expression over the DR(sl(2)) generators.
pub fn parse(src: &str) -> Result<NCElement> {
    Ok(expr::parse(src, &drsl2::alphabet())?)
}

fn load(cli: &Cli) -> Result<Option<Presentation>> {
    match &cli.presentation {
        None => Ok(None),
        Some(path) => {
            if cli.command.needs_drsl2() {
                return Err(Error::Usage(format!(
                    "{} works only on the built-in DR(sl(2)) presentation",
                    cli.command.name()
                )));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(Some(Presentation::from_text(&text)?))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let dr = drsl2::build();
    let custom = load(cli)?;
    let p = custom.as_ref().unwrap_or(dr.presentation());
    let alphabet = p.alphabet();
    let mut report = Report::new(cli.command.name());
    if custom.is_none() {
        report.meta("sign_convention", SIGN_CONVENTION);
    }
    let max_steps = cli.max_steps;
    match &cli.command {
        Command::Normalize {
            expr: src,
            strategy,
        } => {
            let e = expr::parse(src, alphabet)?;
            let nf = p.normal_form_with(&e, (*strategy).into(), max_steps)?;
            report.set_element(&nf, alphabet);
            report.meta("input", render(&e, alphabet));
        }
        Command::Commutator { a, b } => {
            let a = expr::parse(a, alphabet)?;
            let b = expr::parse(b, alphabet)?;
            let ab = p.concat(&a, &b);
            let ba = p.concat(&b, &a);
            let c = p.normal_form(&(&ab - &ba), max_steps)?;
            report.set_element(&c, alphabet);
        }
        Command::CenterCheck => {
            for (name, c) in dr.center_checks()? {
                report.check(name, c.is_zero(), dr.render(&c));
            }
        }
        Command::ConfluenceCheck => {
            let r = p.check_confluence_with(max_steps)?;
            for t in r.summaries(alphabet) {
                let name = format!("overlap {}", t.triple.join(" "));
                let detail = if t.equal {
                    t.left_first.clone()
                } else {
                    format!("{} != {}", t.left_first, t.right_first)
                };
                report.check(name, t.equal, detail);
            }
            report.meta("triples", r.triples.len());
            report.meta("overlaps", json!(r.summaries(alphabet)));
        }
        Command::PbwCount { degree } => {
            let t = p.transition(*degree, max_steps)?;
            report.check(
                format!(
                    "normal forms of {} words lie in the ordered span",
                    t.words.len()
                ),
                t.in_span(),
                "",
            );
            report.check(
                format!("{} ordered monomials map to themselves", t.basis.len()),
                t.basis_rows_are_identity(),
                "",
            );
            report.meta("words", t.words.len());
            report.meta("ordered_monomials", t.basis.len());
            report.meta("nonzero_entries", t.nonzero_entries());
            let rows: Vec<_> = t
                .words
                .iter()
                .zip(&t.rows)
                .map(|(w, r)| json!({"word": alphabet.render_word(w), "normal_form": render(r, alphabet)}))
                .collect();
            report.meta("transition", json!(rows));
        }
        Command::SymbolCheck => {
            for c in drsl2::graded_symbol_check(p) {
                let symbol = c
                    .swap_symbol
                    .as_ref()
                    .map_or_else(|| "undefined".to_string(), ToString::to_string);
                let others: Vec<String> = c
                    .other_quadratic
                    .iter()
                    .map(|(w, d)| format!("{w}: degree {d}"))
                    .collect();
                let mut detail = format!(
                    "swap coefficient {}, degree {}, symbol {}",
                    c.swap_coeff, c.swap_degree, symbol
                );
                if !others.is_empty() {
                    detail.push_str(&format!("; {}", others.join(", ")));
                }
                report.check(format!("rule {}", c.lhs), c.pass, detail);
            }
        }
        Command::ModuleCheck => module_check(&dr, cli, &mut report)?,
        Command::Prop2Solve { alpha0, nu, gamma0 } => {
            prop2_solve(&dr, alpha0, nu, gamma0.as_deref(), &mut report)?
        }
        Command::Ore { expr: src, k } => match src {
            Some(src) => {
                let a = expr::parse(src, alphabet)?;
                let s = Denominator::new(k.unwrap_or(0));
                let w = ore_right(p, &a, s);
                let residual = ore_residual(p, &a, s, &w)?;
                report.check(
                    "a s~ = s a~",
                    residual.is_zero(),
                    render(&residual, alphabet),
                );
                report.check(
                    "s a = 0 only for a = 0",
                    ore_vanishing(p, &a, s).is_some() == a.is_zero(),
                    "",
                );
                report.set_element(&w.a_tilde, alphabet);
                report.meta("s", s.as_ratfunc().to_string());
                report.meta("s_tilde", w.s_tilde.to_string());
                report.meta("weights", json!(w.weights));
            }
            None => {
                let trials = cli.trials.unwrap_or(100);
                let mut rng = sample::rng(cli.seed);
                let mut failures = Vec::new();
                let mut torsion = 0usize;
                for _ in 0..trials {
                    let a = sample::random_element(&mut rng, alphabet, cli.max_deg);
                    let k = match k {
                        Some(k) => *k,
                        None => rng.gen_range(-5..=5),
                    };
                    let s = Denominator::new(k);
                    let w = ore_right(p, &a, s);
                    if !ore_residual(p, &a, s, &w)?.is_zero() {
                        failures.push(format!("k = {k}: {}", render(&a, alphabet)));
                    }
                    if ore_vanishing(p, &a, s).is_some() {
                        torsion += 1;
                    }
                }
                report.check(
                    format!("{trials} witnesses verify"),
                    failures.is_empty(),
                    failures.join("; "),
                );
                report.check("no torsion among nonzero samples", torsion == 0, "");
                report.meta("seed", cli.seed);
                report.meta("trials", trials);
            }
        },
        Command::ZeroDivisorProbe => {
            let trials = cli.trials.unwrap_or(200);
            let r = dr.zero_divisor_probe(cli.seed, trials, cli.max_deg)?;
            let detail: Vec<String> = r
                .counterexamples
                .iter()
                .map(|(a, b)| format!("({a}) * ({b})"))
                .collect();
            report.check(
                format!("{trials} products of nonzero elements are nonzero"),
                r.pass(),
                detail.join("; "),
            );
            report.meta("seed", r.seed);
            report.meta("trials", r.trials);
            report.meta("max_deg", r.max_deg);
        }
    }
    Ok(report)
}

fn module_check(dr: &DrSl2, cli: &Cli, report: &mut Report) -> Result<()> {
    let module = VModule::euler(dr);
    let p = dr.presentation();
    let alphabet = dr.alphabet();
    for rule in p.rules() {
        let lhs = NCElement::word(rule.lhs_word());
        let ok = module.oracle_check_relation(&lhs, &rule.rhs)?;
        report.check(
            format!("rule {} on V_M", alphabet.render_word(&rule.lhs_word())),
            ok,
            "",
        );
    }
    let trials = cli.trials.unwrap_or(100);
    let mut rng = sample::rng(cli.seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let a = sample::random_element(&mut rng, alphabet, cli.max_deg);
        let nf = p.normal_form(&a, cli.max_steps)?;
        if !module.oracle_check_relation(&a, &nf)? {
            failures.push(render(&a, alphabet));
        }
    }
    report.check(
        format!("{trials} random elements act like their normal forms"),
        failures.is_empty(),
        failures.join("; "),
    );
    let (c1, c2) = module.casimir_scalars()?;
    report.check("C1 acts by nu", c1 == RatFunc::var(Var::Nu), c1.to_string());
    report.check(
        "C2 acts by a j-independent scalar",
        !c2.contains(Var::J) && !c2.contains(Var::H),
        c2.to_string(),
    );
    report.meta("C1 scalar", c1.to_string());
    report.meta("C2 scalar", c2.to_string());
    report.absorb("iso2: ", verify_iso2_on_module(dr)?);
    report.meta("seed", cli.seed);
    report.meta("trials", trials);
    Ok(())
}

fn prop2_solve(
    dr: &DrSl2,
    alpha0: &str,
    nu: &str,
    gamma0: Option<&str>,
    report: &mut Report,
) -> Result<()> {
    let scalar = |s: &str| -> Result<RatFunc> { Ok(expr::parse_scalar(s, dr.alphabet())?) };
    let alpha0 = scalar(alpha0)?;
    let nu = scalar(nu)?;
    let euler_case = alpha0 == RatFunc::var(Var::M).scale(&crate::coeff::rat(2, 1))
        && nu == RatFunc::var(Var::Nu);
    let gamma0 = match gamma0 {
        Some(g) => scalar(g)?,
        None if euler_case => euler_gamma_norm(),
        None => RatFunc::var(Var::Zeta),
    };
    let c = solve_prop2(&alpha0, &nu, &gamma0);
    let r = prop2_residuals(&c);
    report.check(
        "(alpha_j + 2) beta_j = alpha_j beta_{j-1}",
        r.beta.is_zero(),
        r.beta.to_string(),
    );
    report.check(
        "alpha_j = alpha_{j-1} + 2",
        r.alpha.is_zero(),
        r.alpha.to_string(),
    );
    report.check(
        "gamma~ recurrence",
        r.gamma_tilde.is_zero(),
        r.gamma_tilde.to_string(),
    );
    report.check("gamma recurrence", r.gamma.is_zero(), r.gamma.to_string());

    let y = RatFunc::var(Var::H);
    let y2 = &y + &RatFunc::integer(2);
    let lhs = (&y + &RatFunc::one())
        .scale(&crate::coeff::rat(4, 1))
        .checked_div(&(&(&y * &y) * &(&y2 * &y2)))?;
    let rhs = &(&y * &y).inv()? - &(&y2 * &y2).inv()?;
    report.check("4(y+1)/(y^2 (y+2)^2) = 1/y^2 - 1/(y+2)^2", lhs == rhs, "");

    if euler_case {
        let euler = ActionCoeffs::euler();
        report.check(
            "gamma matches the Euler f(j + M)",
            c.gamma == euler.gamma,
            "",
        );
        let (c1, c2) = VModule::new(dr, c.clone()).casimir_scalars()?;
        report.meta("C1 scalar", c1.to_string());
        report.meta("C2 scalar", c2.to_string());
    }
    let mut coeffs = BTreeMap::new();
    coeffs.insert("alpha", c.alpha.to_string());
    coeffs.insert("beta", c.beta.to_string());
    coeffs.insert("gamma", c.gamma.to_string());
    coeffs.insert("gamma_tilde", c.gamma_tilde().to_string());
    report.meta("coefficients", json!(coeffs));
    report.meta("gamma_tilde_0", gamma0.to_string());
    Ok(())
}

/// Exit status for a finished run: 0 on pass, 1 on a failed check.
pub fn exit_code(report: &Report) -> i32 {
    if report.pass {
        0
    } else {
        1
    }
}

/// Exit status for an error: 2 for usage and input errors, 1 otherwise.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse(_) | Error::PresentationFormat { .. } => 2,
        _ => 1,
    }
}
