use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use dpsurgery::actions::{build_cover_plan, exotic_action_certificate, CheckOutcome};
use dpsurgery::knot::{braid_alexander, braid_presentation, knot_family, BraidWord};
use dpsurgery::presentation::{
    abelianization, smith_normal_form, verify_abelian_isomorphism, AbelianGroup, AbelianizationMap, Bounds, IntMatrix,
    Presentation,
};
use dpsurgery::report::{Line, Report, Section, Status, EXIT_INPUT};
use dpsurgery::scenario::{self, build_configuration, ConfigSpec, Example};
use dpsurgery::surgery::{
    case_presentation, check_case_hypothesis, surgered_presentation, verify_group_preserved, CaseParams,
};
use dpsurgery::sw::{distinguish, format_multiset, DistinguishVerdict};

#[derive(Parser)]
#[command(name = "dpsurgery", version, about = "Double point surgery on surface configurations")]
struct Cli {
    /// Coset cap for enumeration.
    #[arg(long, global = true)]
    bounds_cosets: Option<usize>,
    /// Rule cap for Knuth-Bendix completion.
    #[arg(long, global = true)]
    bounds_rules: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a presentation defines the given abelian group.
    Verify {
        /// Presentation text, e.g. "gens: a b ; rels: [a,b] , a^2 , b^3 ;".
        presentation: String,
        /// Target group, e.g. "Z_6", "Z + Z_2", "0".
        target: String,
    },
    /// Group check for a surgery case with a knot, via the case presentation and the full amalgam.
    Surgery {
        /// f1, f2 or f3.
        case: String,
        /// Case parameters: d=, k= (f1); p=, q=, k= (f2); m=, n=, k= (f3).
        params: Vec<String>,
        #[arg(long, default_value = "B2: 1 1 1")]
        knot: String,
        /// Also print the presentations.
        #[arg(long)]
        show: bool,
    },
    /// Alexander polynomials of braid closures.
    Alexander {
        braids: Vec<String>,
        /// Also list the torus knots K_1..K_N.
        #[arg(long)]
        family: Option<usize>,
    },
    /// Compare the rim surgeries by two knots on a configuration.
    Distinguish {
        k1: String,
        k2: String,
        /// Example configuration, e.g. "tori:m=3,n=2".
        #[arg(long, default_value = "tori:m=3,n=2")]
        config: String,
    },
    /// Certificate for the exotic Z_m + Z_n actions on the braided tori configuration.
    Actions {
        m: i64,
        n: i64,
        k: i64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Smith normal form of an integer matrix given as rows, e.g. "2 4; 6 8".
    Snf { matrix: String },
    /// Run a builtin example: nodal, rational, spheres, tori, theorem-1-1 or theorem-7-2.
    Builtin {
        name: String,
        /// key=value parameters.
        params: Vec<String>,
        /// Print the equivalent scenario file instead of running it.
        #[arg(long)]
        emit_scenario: bool,
    },
    /// Run a scenario file.
    Scenario { path: PathBuf },
}

fn bounds(cli: &Cli) -> Option<Bounds> {
    if cli.bounds_cosets.is_none() && cli.bounds_rules.is_none() {
        return None;
    }
    let d = Bounds::default();
    Some(Bounds {
        max_cosets: cli.bounds_cosets.unwrap_or(d.max_cosets),
        max_rules: cli.bounds_rules.unwrap_or(d.max_rules),
    })
}

fn parse_knot(s: &str) -> Result<BraidWord> {
    let b: BraidWord = s.parse().with_context(|| format!("braid `{s}`"))?;
    if !b.closure_is_knot() {
        bail!("closure of `{b}` has {} components, need a knot", b.component_count());
    }
    Ok(b)
}

fn key_values(params: &[String]) -> Result<Vec<(String, i64)>> {
    params
        .iter()
        .flat_map(|p| p.split(','))
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("expected key=value, got `{p}`"))?;
            Ok((k.to_string(), v.parse().with_context(|| format!("`{k}` must be an integer"))?))
        })
        .collect()
}

fn parse_case(case: &str, params: &[String]) -> Result<CaseParams> {
    let kv = key_values(params)?;
    let keys: &[&str] = match case {
        "f1" | "F1" => &["d", "k"],
        "f2" | "F2" => &["p", "q", "k"],
        "f3" | "F3" => &["m", "n", "k"],
        _ => bail!("case must be f1, f2 or f3, got `{case}`"),
    };
    let get = |key: &str| {
        kv.iter().find(|(k, _)| k == key).map(|(_, v)| *v).ok_or_else(|| anyhow!("case {case} needs `{key}`"))
    };
    if let Some((k, _)) = kv.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
        bail!("case {case} takes no `{k}`");
    }
    Ok(match keys[0] {
        "d" => CaseParams::f1(get("d")?, get("k")?),
        "p" => CaseParams::f2(get("p")?, get("q")?, get("k")?)?,
        _ => CaseParams::f3(get("m")?, get("n")?, get("k")?)?,
    })
}

/// `name:key=value,...` naming one of the example configurations.
fn parse_config(s: &str) -> Result<ConfigSpec> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    let example = match name {
        "nodal" => Example::Nodal,
        "rational" => Example::Rational,
        "spheres" => Example::Spheres,
        "tori" => Example::Tori,
        _ => bail!("unknown configuration `{name}` (nodal, rational, spheres, tori)"),
    };
    let mut spec = ConfigSpec { example: Some(example), ..ConfigSpec::default() };
    for (k, v) in key_values(&[rest.to_string()])? {
        let v = Some(u32::try_from(v).with_context(|| format!("`{k}` must be nonnegative"))?);
        match k.as_str() {
            "d1" => spec.d1 = v,
            "d2" => spec.d2 = v,
            "p" => spec.p = v,
            "q" => spec.q = v,
            "m" => spec.m = v,
            "n" => spec.n = v,
            _ => bail!("unknown configuration parameter `{k}`"),
        }
    }
    Ok(spec)
}

fn one_section(title: String, heading: &str, lines: Vec<Line>) -> Report {
    let mut sec = Section::new(heading);
    sec.lines = lines;
    Report { title, sections: vec![sec] }
}

fn verify_cmd(text: &str, target: &str, b: Bounds) -> Result<Report> {
    let p = Presentation::parse(text)?;
    let target: AbelianGroup = target.parse().map_err(|e: String| anyhow!("target: {e}"))?;
    let v = verify_abelian_isomorphism(&p, &target, &b);
    let line = Line::from_verdict(format!("presentation = {target}"), &v);
    Ok(one_section(p.to_text(), "verify", vec![line]))
}

fn surgery_cmd(case: &str, params: &[String], knot: &str, show: bool, b: Bounds) -> Result<Report> {
    let case = parse_case(case, params)?;
    let knot = parse_knot(knot)?;
    let k = braid_presentation(&knot)?;
    let mut lines = Vec::new();
    let holds = check_case_hypothesis(&case);
    lines.push(Line::new(
        format!("{case}: hypothesis"),
        if holds { "holds" } else { "fails" },
        if holds { Status::Positive } else { Status::Negative },
        vec![],
    ));
    let case_p = case_presentation(&case, &k);
    let amalgam = surgered_presentation(&case.base_presentation(), &k, case.twist())?;
    if holds {
        lines.push(Line::from_verdict(format!("{case} with {knot}: case presentation"), &verify_group_preserved(&case, &k, &b)?));
        let v = verify_abelian_isomorphism(&amalgam, &case.target(), &b);
        lines.push(Line::from_verdict(format!("{case} with {knot}: full amalgam"), &v));
    } else {
        for (name, p) in [("case presentation", &case_p), ("full amalgam", &amalgam)] {
            lines.push(Line::new(
                format!("{case} with {knot}: {name}"),
                abelianization(p).to_string(),
                Status::Negative,
                vec![format!("no group predicted; abelianization shown, target would be {}", case.target())],
            ));
        }
    }
    let mut r = one_section(format!("surgery {case} with {knot}"), "surgery", lines);
    if show {
        r.sections[0].notes.push(format!("case presentation: {case_p}"));
        r.sections[0].notes.push(format!("full amalgam: {amalgam}"));
    }
    Ok(r)
}

fn alexander_line(b: &BraidWord) -> Result<Line> {
    let d = braid_alexander(b)?;
    Ok(Line::new(
        b.to_string(),
        d.to_string(),
        Status::Positive,
        vec![format!("coefficients {}", format_multiset(&d.coefficient_multiset())), format!("determinant {}", d.value_at_minus_one().abs())],
    ))
}

fn alexander_cmd(braids: &[String], family: Option<usize>) -> Result<Report> {
    let mut lines = Vec::new();
    for s in braids {
        lines.push(alexander_line(&parse_knot(s)?)?);
    }
    if let Some(n) = family {
        for (b, _) in knot_family(n)? {
            lines.push(alexander_line(&b)?);
        }
    }
    Ok(one_section("Alexander polynomials".into(), "alexander", lines))
}

fn distinguish_cmd(k1: &str, k2: &str, config: &str) -> Result<Report> {
    let (title, c) = build_configuration(&parse_config(config)?)?;
    let r = distinguish(&parse_knot(k1)?, &parse_knot(k2)?, &c, None)?;
    let status = match r.verdict {
        DistinguishVerdict::SmoothlyInequivalent => Status::Positive,
        DistinguishVerdict::NotDistinguished => Status::Negative,
    };
    let mut evidence = r.evidence();
    evidence.extend(r.audit.iter().filter(|a| a.passed).map(|a| a.to_string()));
    Ok(one_section(title, "distinguish", vec![Line::new(r.name(), r.verdict.to_string(), status, evidence)]))
}

fn actions_cmd(m: i64, n: i64, k: i64, count: usize, b: Bounds) -> Result<Report> {
    let (mu, nu) = (u32::try_from(m).context("m must be positive")?, u32::try_from(n).context("n must be positive")?);
    let c = dpsurgery::configuration::tori(mu, nu)?;
    let plan = build_cover_plan(&c, m, n, &b)?;
    let cert = exotic_action_certificate(&plan, k, count, &b)?;
    let status = |o: CheckOutcome| match o {
        CheckOutcome::Pass | CheckOutcome::Cited => Status::Positive,
        CheckOutcome::Fail => Status::Negative,
        CheckOutcome::Inconclusive => Status::Inconclusive,
    };
    let mut lines: Vec<Line> = cert
        .checks
        .iter()
        .map(|c| {
            let mut e = vec![c.condition.clone()];
            e.extend(c.evidence.iter().cloned());
            Line::new(format!("({}) {}", c.id, c.name), c.outcome.to_string(), status(c.outcome), e)
        })
        .collect();
    lines.push(Line::new(cert.name(), cert.outcome().to_string(), status(cert.outcome()), vec![cert.conclusion.clone()]));
    let mut r = one_section(format!("tori(m={m}, n={n})"), "certificate", lines);
    r.sections[0].notes.push(plan.stage_one.description.clone());
    r.sections[0].notes.push(plan.stage_two.description.clone());
    Ok(r)
}

fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| r.split_whitespace().map(|x| x.parse().with_context(|| format!("bad entry `{x}`"))).collect())
        .collect::<Result<_>>()?;
    IntMatrix::try_from_rows(rows).ok_or_else(|| anyhow!("rows must be nonempty and of equal length"))
}

fn snf_cmd(s: &str) -> Result<Report> {
    let m = parse_matrix(s)?;
    let f = smith_normal_form(&m);
    let diag: Vec<String> = f.invariant_factors().iter().map(|x| x.to_string()).collect();
    let cokernel = AbelianizationMap::from_relations(&m).group();
    let line = Line::new(
        "smith normal form",
        format!("diag({})", diag.join(", ")),
        Status::Positive,
        vec![format!("rank {}", f.rank()), format!("cokernel {cokernel}")],
    );
    Ok(one_section(format!("{}x{} matrix", m.rows(), m.cols()), "snf", vec![line]))
}

fn execute(cli: &Cli) -> Result<Option<Report>> {
    let over = bounds(cli);
    let b = over.unwrap_or_default();
    Ok(Some(match &cli.command {
        Command::Verify { presentation, target } => verify_cmd(presentation, target, b)?,
        Command::Surgery { case, params, knot, show } => surgery_cmd(case, params, knot, *show, b)?,
        Command::Alexander { braids, family } => alexander_cmd(braids, *family)?,
        Command::Distinguish { k1, k2, config } => distinguish_cmd(k1, k2, config)?,
        Command::Actions { m, n, k, count } => actions_cmd(*m, *n, *k, *count, b)?,
        Command::Snf { matrix } => snf_cmd(matrix)?,
        Command::Builtin { name, params, emit_scenario } => {
            if *emit_scenario {
                print!("{}", scenario::builtin_scenario(name, params)?.to_yaml());
                return Ok(None);
            }
            scenario::run_builtin(name, params, over)?
        }
        Command::Scenario { path } => scenario::run_scenario(path, over)?,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Machine => print!("{}", report.render_machine()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
