//! Command-line front end for the bielliptic Euler-characteristic
//! pipeline: branching data, cusp-form dimensions, stratum classes, the
//! equivariant table itself, and the self-check suites.
//!
//! Every command prints plain text by default; `--format json` wraps the
//! same data in a versioned record (`schema`, `command`, `version`,
//! `parameters`, `result`), and `--format latex` renders table-ready math.

mod render;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use bielliptic::cohomology::{ec_a1, ec_delta, ec_e2, ec_m_label, ec_y2};
use bielliptic::dimforms::{dim_cusp_forms, dim_new, equivariant_cusp_dims, CongruenceGroup};
use bielliptic::getzler::{euler_bn, Partition};
use bielliptic::motives::{GradedClass, MotiveClass};
use bielliptic::weylchars::Sp4Label;
use bielliptic::wreath::{
    branch_sp4_to_wreath, branch_wreath_to_diagonal, twisted_pullback, WreathLabel,
};
use clap::{Parser, Subcommand, ValueEnum};
use render::{brace, euler_row_latex, euler_row_text, latex_motive, motive_terms, Format};
use serde::Serialize;
use serde_json::{json, Value};
use verify::{run_suite, VerifyBounds, SUITE_NAMES};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "bielliptic",
    version,
    about = "Equivariant Euler characteristics of pointed bielliptic loci"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Measure elapsed time (a `timing_ms` field in JSON, a stderr note
    /// otherwise, so stdout stays reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(flatten)]
    bounds: BoundArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Largest number of marked points accepted by `euler`.
    #[arg(long, global = true, env = "BIELLIPTIC_MAX_N", default_value_t = 8)]
    max_n: u32,
    /// Largest local-system weight accepted by `branch` and `ec`.
    #[arg(long, global = true, env = "BIELLIPTIC_MAX_WEIGHT", default_value_t = 16)]
    max_weight: u32,
    /// Largest modulus exercised by the `sl2` verification suite.
    #[arg(long, global = true, env = "BIELLIPTIC_MAX_D", default_value_t = 12)]
    max_d: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Restrict an Sp(4) local system to the wreath subgroup, or a wreath
    /// system to the diagonal SL(2).
    Branch {
        /// First fundamental coordinate of the Sp(4) system W[l,m].
        #[arg(long, requires = "m", conflicts_with = "wreath")]
        l: Option<u32>,
        /// Second fundamental coordinate (at most --l).
        #[arg(long, requires = "l", conflicts_with = "wreath")]
        m: Option<u32>,
        /// Branch this wreath system (e.g. "U2,1" or "U3+") to the
        /// diagonal instead.
        #[arg(long, value_name = "LABEL")]
        wreath: Option<String>,
        /// Attach the Tate twists that make the pullback weight-homogeneous.
        #[arg(long)]
        twisted: bool,
    },
    /// Dimensions of spaces of cusp forms for the small-level groups.
    Dims {
        /// Congruence group: sl2z, gamma0(2), gamma0(4) or gamma(2).
        #[arg(long, value_parser = parse_group)]
        group: CongruenceGroup,
        /// Weight of the forms.
        #[arg(long)]
        weight: u32,
    },
    /// Euler characteristic of one stratum with coefficients in one local
    /// system.
    Ec {
        /// Stratum: the level-2 curve (y2), its elliptic quotient datum
        /// (a1), the product surface (e2), the diagonal locus (delta) or
        /// the bielliptic locus itself (m).
        #[arg(long, value_enum)]
        space: Space,
        /// Local system label: "V4" for y2/a1, "U2,1"/"U3+" for e2/delta,
        /// "W[3,1]" for m.
        #[arg(long, value_name = "LABEL")]
        system: String,
    },
    /// S_n-equivariant Euler characteristics of the pointed loci, as rows
    /// of Schur-polynomial coefficients.
    Euler {
        /// Number of marked points.
        #[arg(long)]
        n: u32,
        /// Also print the rows for fewer points, starting here.
        #[arg(long)]
        from: Option<u32>,
        /// Print only the coefficient of this Schur polynomial
        /// (e.g. "2,1" or "1^6").
        #[arg(long, conflicts_with = "from", value_name = "PARTITION")]
        filter: Option<String>,
    },
    /// Run the self-check suites; exits 1 if any check fails.
    Verify {
        /// Suite to run (same as --suite).
        #[arg(value_name = "SUITE")]
        suite_pos: Option<String>,
        /// Suite to run: all, branch, diag, dims, gysin, integrality,
        /// lambda or sl2.
        #[arg(long)]
        suite: Option<String>,
        /// Largest modulus for the sl2 suite (overrides --max-d).
        #[arg(long)]
        d: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Y2,
    A1,
    E2,
    Delta,
    M,
}

/// Everything a command produces, before the output format is chosen.
struct Rendered {
    command: &'static str,
    parameters: Value,
    result: Value,
    text: String,
    latex: String,
    exit: i32,
}

#[derive(Serialize)]
struct OutputRecord {
    schema: u32,
    command: &'static str,
    version: &'static str,
    parameters: Value,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let start = Instant::now();
    let rendered = match &cli.command {
        Command::Branch {
            l,
            m,
            wreath,
            twisted,
        } => branch_cmd(*l, *m, wreath.as_deref(), *twisted, &cli.bounds)?,
        Command::Dims { group, weight } => dims_cmd(*group, *weight)?,
        Command::Ec { space, system } => ec_cmd(*space, system, &cli.bounds)?,
        Command::Euler { n, from, filter } => {
            euler_cmd(*n, *from, filter.as_deref(), &cli.bounds)?
        }
        Command::Verify {
            suite_pos,
            suite,
            d,
        } => verify_cmd(suite_pos.as_deref(), suite.as_deref(), *d, &cli.bounds)?,
    };
    let elapsed = start.elapsed().as_millis();

    let body = match cli.format {
        Format::Json => serde_json::to_string(&OutputRecord {
            schema: SCHEMA_VERSION,
            command: rendered.command,
            version: env!("CARGO_PKG_VERSION"),
            parameters: rendered.parameters,
            result: rendered.result,
            timing_ms: cli.timing.then_some(elapsed),
        })?,
        Format::Text => rendered.text,
        Format::Latex => rendered.latex,
    };
    match &cli.out {
        Some(path) => {
            let payload = if body.is_empty() {
                String::new()
            } else {
                format!("{body}\n")
            };
            fs::write(path, payload).with_context(|| format!("writing {}", path.display()))?;
        }
        None if body.is_empty() => {}
        None => println!("{body}"),
    }
    if cli.timing && cli.format != Format::Json {
        eprintln!("elapsed: {elapsed} ms");
    }
    Ok(rendered.exit)
}

fn parse_group(raw: &str) -> Result<CongruenceGroup, String> {
    let mut key = raw.to_ascii_lowercase();
    key.retain(|c| !c.is_whitespace() && c != '_' && c != '\\' && c != '{' && c != '}');
    match key.as_str() {
        "1" | "full" | "sl2z" | "sl(2,z)" | "gamma(1)" => Ok(CongruenceGroup::Full),
        "gamma0(2)" | "g0(2)" => Ok(CongruenceGroup::Gamma0Level2),
        "gamma0(4)" | "g0(4)" => Ok(CongruenceGroup::Gamma0Level4),
        "gamma(2)" | "g(2)" => Ok(CongruenceGroup::PrincipalLevel2),
        _ => Err(format!(
            "unknown group {raw:?} (try sl2z, gamma0(2), gamma0(4) or gamma(2))"
        )),
    }
}

fn group_name(group: CongruenceGroup) -> &'static str {
    match group {
        CongruenceGroup::Full => "SL(2,Z)",
        CongruenceGroup::Gamma0Level2 => "Gamma_0(2)",
        CongruenceGroup::Gamma0Level4 => "Gamma_0(4)",
        CongruenceGroup::PrincipalLevel2 => "Gamma(2)",
    }
}

fn group_latex(group: CongruenceGroup) -> &'static str {
    match group {
        CongruenceGroup::Full => "\\mathrm{SL}(2,\\mathbb{Z})",
        CongruenceGroup::Gamma0Level2 => "\\Gamma_0(2)",
        CongruenceGroup::Gamma0Level4 => "\\Gamma_0(4)",
        CongruenceGroup::PrincipalLevel2 => "\\Gamma(2)",
    }
}

fn latex_wreath(u: WreathLabel) -> String {
    match u {
        WreathLabel::Pair { a, b } => format!("U_{{{a},{b}}}"),
        WreathLabel::Diag { a, sign } => format!("U_{}^{sign}", brace(a)),
    }
}

/// `L^t label` in text, `\mathbf{L}^t label` in LaTeX, dropping the
/// factor entirely at twist zero.
fn twisted_text(label: &str, twist: u32) -> String {
    match twist {
        0 => label.to_string(),
        1 => format!("L {label}"),
        t => format!("L^{t} {label}"),
    }
}

fn twisted_latex(label: &str, twist: u32) -> String {
    match twist {
        0 => label.to_string(),
        1 => format!("\\mathbf{{L}}{label}"),
        t => format!("\\mathbf{{L}}^{}{label}", brace(t)),
    }
}

fn branch_cmd(
    l: Option<u32>,
    m: Option<u32>,
    wreath: Option<&str>,
    twisted: bool,
    bounds: &BoundArgs,
) -> Result<Rendered> {
    if let Some(text) = wreath {
        let u: WreathLabel = text
            .parse()
            .map_err(|e| anyhow!("--wreath: {e}"))?;
        if u.weight() > bounds.max_weight {
            bail!(
                "weight {} of {u} exceeds --max-weight {} (raise --max-weight or BIELLIPTIC_MAX_WEIGHT)",
                u.weight(),
                bounds.max_weight
            );
        }
        let w = u.weight();
        let terms: Vec<(u32, bielliptic::motives::Sign, u32)> = branch_wreath_to_diagonal(u)
            .into_iter()
            .map(|(c, sign)| (c, sign, if twisted { (w - c) / 2 } else { 0 }))
            .collect();
        let json_terms: Vec<Value> = terms
            .iter()
            .map(|(c, sign, t)| {
                json!({"label": format!("V{c}"), "sign": sign.to_string(), "twist": t})
            })
            .collect();
        let text_body = terms
            .iter()
            .map(|(c, sign, t)| twisted_text(&format!("V{c}{sign}"), *t))
            .collect::<Vec<_>>()
            .join(" + ");
        let latex_body = terms
            .iter()
            .map(|(c, sign, t)| twisted_latex(&format!("V_{}^{sign}", brace(*c)), *t))
            .collect::<Vec<_>>()
            .join("+");
        return Ok(Rendered {
            command: "branch",
            parameters: json!({"wreath": u.to_string(), "twisted": twisted}),
            result: json!({"terms": json_terms}),
            text: text_body,
            latex: format!("${latex_body}$"),
            exit: 0,
        });
    }

    let (l, m) = match (l, m) {
        (Some(l), Some(m)) => (l, m),
        _ => bail!("pass either --l and --m (an Sp(4) system) or --wreath (a wreath system)"),
    };
    let label = Sp4Label::new(l, m)?;
    if l + m > bounds.max_weight {
        bail!(
            "weight {} of {label} exceeds --max-weight {} (raise --max-weight or BIELLIPTIC_MAX_WEIGHT)",
            l + m,
            bounds.max_weight
        );
    }
    let terms: Vec<(WreathLabel, u32)> = if twisted {
        twisted_pullback(label)
    } else {
        branch_sp4_to_wreath(label)
            .into_iter()
            .map(|u| (u, 0))
            .collect()
    };
    let json_terms: Vec<Value> = terms
        .iter()
        .map(|(u, t)| json!({"label": u.to_string(), "twist": t}))
        .collect();
    let text_body = terms
        .iter()
        .map(|(u, t)| twisted_text(&u.to_string(), *t))
        .collect::<Vec<_>>()
        .join(" + ");
    let latex_body = terms
        .iter()
        .map(|(u, t)| twisted_latex(&latex_wreath(*u), *t))
        .collect::<Vec<_>>()
        .join("+");
    Ok(Rendered {
        command: "branch",
        parameters: json!({"l": l, "m": m, "twisted": twisted}),
        result: json!({"terms": json_terms}),
        text: text_body,
        latex: format!("${latex_body}$"),
        exit: 0,
    })
}

fn dims_cmd(group: CongruenceGroup, weight: u32) -> Result<Rendered> {
    let cusp = dim_cusp_forms(group, weight);
    let newforms = match group {
        CongruenceGroup::Full => Some(dim_new(1, weight)?),
        CongruenceGroup::Gamma0Level2 => Some(dim_new(2, weight)?),
        CongruenceGroup::Gamma0Level4 => Some(dim_new(4, weight)?),
        CongruenceGroup::PrincipalLevel2 => None,
    };
    let isotypic = matches!(group, CongruenceGroup::PrincipalLevel2)
        .then(|| equivariant_cusp_dims(weight));

    let mut result = json!({"cusp": cusp});
    let mut text = format!("dim S_{weight}({}) = {cusp}", group_name(group));
    if let Some(new) = newforms {
        result["new"] = json!(new);
        text.push_str(&format!(", new {new}"));
    }
    if let Some((m3, m21, m111)) = isotypic {
        result["isotypic"] = json!({"s3": m3, "s21": m21, "s111": m111});
        text.push_str(&format!(", isotypic s3 {m3}, s21 {m21}, s111 {m111}"));
    }
    let latex = format!(
        "$\\dim\\mathbf{{S}}_{}({})={cusp}$",
        brace(weight),
        group_latex(group)
    );
    Ok(Rendered {
        command: "dims",
        parameters: json!({"group": group_name(group), "weight": weight}),
        result,
        text,
        latex,
        exit: 0,
    })
}

fn parse_sl2_system(s: &str) -> Result<u32> {
    let body = s.trim();
    let body = body.strip_prefix(['V', 'v']).unwrap_or(body);
    body.trim().parse().map_err(|_| {
        anyhow!("cannot parse {s:?} as an SL(2) system (expected \"V4\" or a bare integer)")
    })
}

fn graded_json(x: &GradedClass) -> Value {
    json!({"even": motive_terms(&x.even), "odd": motive_terms(&x.odd)})
}

fn motive_rendered(
    command: &'static str,
    parameters: Value,
    value: &MotiveClass,
) -> Rendered {
    Rendered {
        command,
        parameters,
        result: serde_json::to_value(motive_terms(value)).expect("term lists serialize"),
        text: value.to_string(),
        latex: format!("${}$", latex_motive(value)),
        exit: 0,
    }
}

fn ec_cmd(space: Space, system: &str, bounds: &BoundArgs) -> Result<Rendered> {
    let check_weight = |w: u32, label: &dyn std::fmt::Display| -> Result<()> {
        if w > bounds.max_weight {
            bail!(
                "weight {w} of {label} exceeds --max-weight {} (raise --max-weight or BIELLIPTIC_MAX_WEIGHT)",
                bounds.max_weight
            );
        }
        Ok(())
    };
    match space {
        Space::Y2 => {
            let a = parse_sl2_system(system)?;
            check_weight(a, &format!("V{a}"))?;
            let graded = ec_y2(a);
            let pieces = [
                ("s3", &graded.s3),
                ("s21", &graded.s21),
                ("s111", &graded.s111),
            ];
            let text = pieces
                .iter()
                .map(|(name, g)| format!("{name}: even {}, odd {}", g.even, g.odd))
                .collect::<Vec<_>>()
                .join("\n");
            let latex = pieces
                .iter()
                .map(|(name, g)| {
                    let sub = &name[1..];
                    let label = if sub.len() == 1 {
                        format!("s_{sub}")
                    } else {
                        format!("s_{{{sub}}}")
                    };
                    format!(
                        "${label}\\colon({},{})$",
                        latex_motive(&g.even),
                        latex_motive(&g.odd)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Rendered {
                command: "ec",
                parameters: json!({"space": "y2", "system": format!("V{a}")}),
                result: json!({
                    "s3": graded_json(&graded.s3),
                    "s21": graded_json(&graded.s21),
                    "s111": graded_json(&graded.s111),
                }),
                text,
                latex,
                exit: 0,
            })
        }
        Space::A1 => {
            let a = parse_sl2_system(system)?;
            check_weight(a, &format!("V{a}"))?;
            let value = ec_a1(a);
            Ok(motive_rendered(
                "ec",
                json!({"space": "a1", "system": format!("V{a}")}),
                &value,
            ))
        }
        Space::E2 => {
            let u: WreathLabel = system.parse().map_err(|e| anyhow!("--system: {e}"))?;
            check_weight(u.weight(), &u)?;
            let value = ec_e2(u)?;
            Ok(motive_rendered(
                "ec",
                json!({"space": "e2", "system": u.to_string()}),
                &value,
            ))
        }
        Space::Delta => {
            let u: WreathLabel = system.parse().map_err(|e| anyhow!("--system: {e}"))?;
            check_weight(u.weight(), &u)?;
            let value = ec_delta(u);
            Ok(motive_rendered(
                "ec",
                json!({"space": "delta", "system": u.to_string()}),
                &value,
            ))
        }
        Space::M => {
            let label: Sp4Label = system.parse().map_err(|e| anyhow!("--system: {e}"))?;
            check_weight(label.weight(), &label)?;
            let value = ec_m_label(label)?;
            Ok(motive_rendered(
                "ec",
                json!({"space": "m", "system": label.to_string()}),
                &value,
            ))
        }
    }
}

fn euler_cmd(
    n: u32,
    from: Option<u32>,
    filter: Option<&str>,
    bounds: &BoundArgs,
) -> Result<Rendered> {
    if n > bounds.max_n {
        bail!(
            "n = {n} exceeds --max-n {} (raise --max-n or BIELLIPTIC_MAX_N)",
            bounds.max_n
        );
    }
    if let Some(pattern) = filter {
        let lambda: Partition = pattern.parse().map_err(|e| anyhow!("--filter: {e}"))?;
        if lambda.n() != n {
            bail!("--filter {lambda} is not a partition of {n}");
        }
        let rows = euler_bn(n)?;
        let class = rows
            .into_iter()
            .find(|(p, _)| p == &lambda)
            .map(|(_, c)| c)
            .expect("every partition of n labels a row");
        return Ok(Rendered {
            command: "euler",
            parameters: json!({"n": n, "filter": lambda.to_string()}),
            result: json!({
                "n": n,
                "partition": lambda.parts(),
                "coefficient": motive_terms(&class),
            }),
            text: class.to_string(),
            latex: format!("${}$", latex_motive(&class)),
            exit: 0,
        });
    }

    let lo = from.unwrap_or(n);
    let mut text_lines = Vec::new();
    let mut latex_lines = Vec::new();
    let mut json_rows = Vec::new();
    for k in lo..=n {
        let rows = euler_bn(k)?;
        text_lines.push(format!("n={k}: {}", euler_row_text(&rows)));
        latex_lines.push(euler_row_latex(&rows));
        json_rows.push(json!({
            "n": k,
            "rows": rows
                .iter()
                .map(|(p, c)| json!({"partition": p.parts(), "coefficient": motive_terms(c)}))
                .collect::<Vec<_>>(),
        }));
    }
    Ok(Rendered {
        command: "euler",
        parameters: json!({"n": n, "from": lo}),
        result: json!({"rows": json_rows}),
        text: text_lines.join("\n"),
        latex: latex_lines.join("\n"),
        exit: 0,
    })
}

fn verify_cmd(
    suite_pos: Option<&str>,
    suite_flag: Option<&str>,
    d: Option<u64>,
    bounds: &BoundArgs,
) -> Result<Rendered> {
    let chosen = match (suite_pos, suite_flag) {
        (Some(a), Some(b)) if a != b => bail!("conflicting suites {a:?} and {b:?}"),
        (a, b) => b.or(a).unwrap_or("all").to_string(),
    };
    let mut verify_bounds = VerifyBounds {
        max_weight: bounds.max_weight,
        max_d: bounds.max_d,
        max_n: bounds.max_n,
    };
    if let Some(d) = d {
        if d < 2 {
            bail!("--d must be at least 2");
        }
        verify_bounds.max_d = d;
    }
    let names: Vec<&str> = if chosen == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![chosen.as_str()]
    };
    let mut outcomes = Vec::new();
    for name in names {
        let outcome = run_suite(name, &verify_bounds).ok_or_else(|| {
            anyhow!(
                "unknown suite {name:?} (available: all, {})",
                SUITE_NAMES.join(", ")
            )
        })?;
        outcomes.push(outcome);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let all_passed = passed == outcomes.len();
    let mut lines: Vec<String> = outcomes
        .iter()
        .map(|o| {
            format!(
                "{} {}: {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.detail
            )
        })
        .collect();
    lines.push(format!("{passed} of {} suites passed", outcomes.len()));
    let text = lines.join("\n");
    Ok(Rendered {
        command: "verify",
        parameters: json!({
            "suite": chosen,
            "max_weight": verify_bounds.max_weight,
            "max_d": verify_bounds.max_d,
            "max_n": verify_bounds.max_n,
        }),
        result: json!({"suites": outcomes, "passed": all_passed}),
        latex: text.clone(),
        text,
        exit: if all_passed { 0 } else { 1 },
    })
}
