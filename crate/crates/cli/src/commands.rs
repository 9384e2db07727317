use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sts_core::colorings::{
    bicoloring_search, bicoloring_to_bound, bose_coloring, cdr_sequence, closed_form_bounds,
    hole_coloring, skolem_coloring, ColoringError,
};
use sts_core::constructions::{
    bose, bose_with, fano, random_idempotent_quasigroup, recognize, s9, skolem,
};
use sts_core::random::{
    binomial_3graph, experiment_discrepancy, linearize, random_sts, summarize, trend_table,
    triangle_removal, write_csv, ProcessOutcome, RandomError, SAMPLING_CAVEAT,
};
use sts_core::search::{
    alpha_star, independence_number, is_independent, mc_exact_with_hints, Certificate, SearchBudget,
};
use sts_core::textfmt::{parse_sts, write_coloring, write_sts};
use sts_core::{
    largest_mono_component, mono_components, validate_steiner, verify_hole, EdgeColoring,
    HoleCertificate, TripleSystem,
};

use crate::cli::{
    AnalyzeArgs, BudgetArgs, CdrArgs, ColorArgs, ConstructionKind, DiscrepancyArgs, GenArgs, Param,
    Process, RandomArgs, Scheme,
};
use crate::report::{verdicts, AnalysisReport, ParamReport, Parameters, SCHEMA};
use crate::{fail, Failure, OrExit, EXIT_CONSTRUCTION, EXIT_INPUT, EXIT_PARAMETERS, EXIT_SCHEME};

const EXIT_OTHER: u8 = 1;

fn budget(args: &BudgetArgs) -> SearchBudget {
    SearchBudget {
        max_nodes: args.max_nodes,
        max_seconds: args.max_seconds,
        parallelism: 1,
    }
    .with_parallelism(args.jobs)
}

fn read_system(path: &Path) -> Result<TripleSystem, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))
        .or_exit(EXIT_INPUT)?;
    parse_sts(&text)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
        .or_exit(EXIT_INPUT)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", p.display()))
            .or_exit(EXIT_OTHER),
        None => io::stdout().write_all(text.as_bytes()).or_exit(EXIT_OTHER),
    }
}

pub fn gen(args: GenArgs) -> Result<(), Failure> {
    let fixed = |order: usize, name: &str| match args.n {
        Some(n) if n != order => fail(
            EXIT_CONSTRUCTION,
            format!("{name} has order {order}, not {n}"),
        ),
        _ => Ok(()),
    };
    let need_n = || match args.n {
        Some(n) => Ok(n),
        None => fail(EXIT_PARAMETERS, "--n is required for this construction"),
    };
    if args.quasigroup_seed.is_some() && args.construction != ConstructionKind::Bose {
        return fail(EXIT_PARAMETERS, "--quasigroup-seed applies to bose only");
    }
    let system = match args.construction {
        ConstructionKind::Fano => {
            fixed(7, "fano")?;
            fano()
        }
        ConstructionKind::S9 => {
            fixed(9, "s9")?;
            s9()
        }
        ConstructionKind::Bose => {
            let n = need_n()?;
            match args.quasigroup_seed {
                Some(seed) if n % 6 == 3 => {
                    let q = random_idempotent_quasigroup(n / 3, seed).or_exit(EXIT_CONSTRUCTION)?;
                    bose_with(n, &q).or_exit(EXIT_CONSTRUCTION)?
                }
                _ => bose(n).or_exit(EXIT_CONSTRUCTION)?,
            }
        }
        ConstructionKind::Skolem => skolem(need_n()?).or_exit(EXIT_CONSTRUCTION)?,
    };
    write_output(args.output.as_ref(), &write_sts(&system))
}

fn check_certificate(system: &TripleSystem, name: &str, r: &ParamReport) -> Result<(), Failure> {
    let ok = match &r.certificate {
        Certificate::IndependentSet { vertices } => {
            vertices.len() == r.value && is_independent(system, vertices)
        }
        Certificate::Hole(h) => h.a == r.value && (h.a == 0 || verify_hole(system, h) == Ok(true)),
        Certificate::Coloring(c) => {
            c.r() == 3 && c.fits(system) && largest_mono_component(system, c).size == r.value
        }
        Certificate::None => true,
    };
    if ok {
        Ok(())
    } else {
        fail(
            EXIT_OTHER,
            format!("{name}: certificate does not re-verify"),
        )
    }
}

pub fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let system = read_system(&args.input)?;
    let budget = budget(&args.budget);
    let steiner = validate_steiner(system.clone()).ok().map(recognize);
    let construction = steiner
        .as_ref()
        .map_or("none", |s| s.construction().as_str());
    let want = |p: Param| args.param == Param::All || args.param == p;
    let mut params = Parameters::default();
    let mut hints: Vec<EdgeColoring> = Vec::new();

    if want(Param::Alpha) {
        eprintln!("alpha: searching");
        let r = ParamReport::new(independence_number(&system, budget), args.timing);
        check_certificate(&system, "alpha", &r)?;
        params.alpha = Some(r);
    }
    if want(Param::AlphaStar3) {
        eprintln!("alpha_star3: searching");
        let r = ParamReport::new(
            alpha_star(&system, 3, budget).or_exit(EXIT_OTHER)?,
            args.timing,
        );
        check_certificate(&system, "alpha_star3", &r)?;
        if let Certificate::Hole(h) = &r.certificate {
            if h.a > 0 {
                hints.extend(hole_coloring(&system, h).ok());
            }
        }
        params.alpha_star3 = Some(r);
    }
    if want(Param::Mc3) {
        if let Some(s) = &steiner {
            hints.extend(bose_coloring(s).ok());
            hints.extend(skolem_coloring(s).ok());
        }
        eprintln!("mc3: searching with {} starting colorings", hints.len());
        let r = ParamReport::new(
            mc_exact_with_hints(&system, 3, budget, &hints).or_exit(EXIT_OTHER)?,
            args.timing,
        );
        check_certificate(&system, "mc3", &r)?;
        params.mc3 = Some(r);
    }

    let n = system.n();
    let exact_alpha_star = params
        .alpha_star3
        .as_ref()
        .filter(|p| p.exact)
        .map(|p| p.value);
    let report = AnalysisReport {
        schema: SCHEMA.into(),
        n,
        m: system.len(),
        construction: construction.into(),
        steiner: steiner.is_some(),
        verdicts: if steiner.is_some() {
            verdicts(n, &params)
        } else {
            Vec::new()
        },
        bounds: steiner
            .is_some()
            .then(|| closed_form_bounds(n, exact_alpha_star)),
        parameters: params,
    };
    let mut json = serde_json::to_string_pretty(&report).or_exit(EXIT_OTHER)?;
    json.push('\n');
    write_output(args.output.as_ref(), &json)
}

fn summary_table(system: &TripleSystem, coloring: &EdgeColoring) -> String {
    let set = mono_components(system, coloring);
    let largest = set.largest_per_color();
    let spans = set.span_sizes();
    let classes = coloring.classes();
    let mut out = String::from("color\ttriples\tspan\tcomponents\tlargest\n");
    for c in 0..coloring.r() {
        out.push_str(&format!(
            "{c}\t{}\t{}\t{}\t{}\n",
            classes[c].len(),
            spans[c],
            set.components[c].len(),
            largest[c]
        ));
    }
    out.push_str(&format!(
        "max component: {}\n",
        largest.iter().copied().max().unwrap_or(0)
    ));
    out.push_str(&format!(
        "max span: {}\n",
        spans.iter().copied().max().unwrap_or(0)
    ));
    out
}

fn scheme_error(e: ColoringError) -> Failure {
    Failure {
        code: EXIT_SCHEME,
        error: e.into(),
    }
}

pub fn color(args: ColorArgs) -> Result<(), Failure> {
    let system = read_system(&args.input)?;
    let mut notes = String::new();
    let coloring = match args.scheme {
        Scheme::Bose | Scheme::Skolem => {
            let s = validate_steiner(system.clone())
                .map(recognize)
                .or_exit(EXIT_INPUT)?;
            let built = if args.scheme == Scheme::Bose {
                bose_coloring(&s)
            } else {
                skolem_coloring(&s)
            };
            built.map_err(scheme_error)?
        }
        Scheme::Hole => {
            let hole: HoleCertificate = match &args.hole_file {
                Some(path) => {
                    let text = fs::read_to_string(path).or_exit(EXIT_INPUT)?;
                    serde_json::from_str(&text).or_exit(EXIT_INPUT)?
                }
                None => {
                    eprintln!("alpha_star3: searching");
                    let r = alpha_star(&system, 3, budget(&args.budget)).or_exit(EXIT_OTHER)?;
                    notes.push_str(&format!("hole size: {} (exact: {})\n", r.value, r.exact));
                    match r.certificate {
                        Certificate::Hole(h) if h.a > 0 => h,
                        _ => return fail(EXIT_SCHEME, "no 3-partite hole with nonempty parts"),
                    }
                }
            };
            hole_coloring(&system, &hole).map_err(scheme_error)?
        }
        Scheme::Bicolor => {
            let Some(b) = bicoloring_search(&system) else {
                return fail(
                    EXIT_SCHEME,
                    "system has no bicoloring with three nonempty classes",
                );
            };
            let (hole, bound) = bicoloring_to_bound(&b).map_err(scheme_error)?;
            notes.push_str(&format!(
                "bicoloring sizes: {} {} {}\nbound from bicoloring: {bound}\n",
                b.sizes[0], b.sizes[1], b.sizes[2]
            ));
            hole_coloring(&system, &hole).map_err(scheme_error)?
        }
    };
    let table = notes + &summary_table(&system, &coloring);
    let text = write_coloring(&coloring);
    match &args.output {
        Some(path) => {
            write_output(Some(path), &text)?;
            write_output(None, &table)
        }
        None => {
            write_output(None, &text)?;
            eprint!("{table}");
            Ok(())
        }
    }
}

fn random_failure(e: RandomError) -> Failure {
    let code = match e {
        RandomError::BadM { .. } | RandomError::BadProbability(_) | RandomError::BadOrder(_) => {
            EXIT_PARAMETERS
        }
        _ => EXIT_CONSTRUCTION,
    };
    Failure {
        code,
        error: e.into(),
    }
}

pub fn random(args: RandomArgs) -> Result<(), Failure> {
    let need_p = || match args.p {
        Some(p) => Ok(p),
        None => fail(EXIT_PARAMETERS, "--p is required for this process"),
    };
    let system = match args.process {
        Process::TriangleRemoval => {
            let Some(m) = args.m else {
                return fail(EXIT_PARAMETERS, "--m is required for triangle-removal");
            };
            match triangle_removal(args.n, m, args.seed).map_err(random_failure)? {
                ProcessOutcome::Complete(p) => p.to_system(),
                ProcessOutcome::Stuck { .. } => {
                    return fail(
                        EXIT_CONSTRUCTION,
                        format!("process got stuck before {m} triangles"),
                    );
                }
            }
        }
        Process::Binomial => {
            binomial_3graph(args.n, need_p()?, args.seed).map_err(random_failure)?
        }
        Process::Linearized => {
            let g = binomial_3graph(args.n, need_p()?, args.seed).map_err(random_failure)?;
            linearize(&g).to_system()
        }
        Process::Sts => random_sts(args.n, args.seed, args.max_restarts)
            .map_err(random_failure)?
            .into_system(),
    };
    write_output(args.output.as_ref(), &write_sts(&system))
}

pub fn discrepancy(args: DiscrepancyArgs) -> Result<(), Failure> {
    eprintln!(
        "discrepancy: n = {}, {} samples, seed {}",
        args.n, args.samples, args.seed
    );
    let rows = experiment_discrepancy(args.n, args.samples, args.seed, budget(&args.budget))
        .map_err(random_failure)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf, args.timing).or_exit(EXIT_OTHER)?;
    match &args.csv {
        Some(path) => fs::write(path, &buf).or_exit(EXIT_OTHER)?,
        None => io::stdout().write_all(&buf).or_exit(EXIT_OTHER)?,
    }
    eprint!("{}", trend_table(&summarize(&rows)));
    eprintln!("note: {SAMPLING_CAVEAT}");
    Ok(())
}

/// Full decimal for short numbers, leading digits and length otherwise.
fn abbreviate(digits: String) -> String {
    if digits.len() <= 40 {
        digits
    } else {
        format!("{}...({} digits)", &digits[..12], digits.len())
    }
}

pub fn cdr(args: CdrArgs) -> Result<(), Failure> {
    let terms = cdr_sequence(args.kmax);
    let mut out = String::new();
    if args.json {
        let rows: Vec<serde_json::Value> = terms
            .iter()
            .map(|t| serde_json::json!({ "k": t.k, "m": t.m.to_string(), "n": t.n.to_string(), "ratio": t.ratio.to_string() }))
            .collect();
        out = serde_json::to_string_pretty(&rows).or_exit(EXIT_OTHER)?;
        out.push('\n');
    } else {
        out.push_str("k\tM_k\tN_k\tM_k/N_k\n");
        for t in &terms {
            // Twelve decimal places by integer division.
            let scaled = (&t.m * 1_000_000_000_000u64 / &t.n).to_string();
            let padded = format!("{scaled:0>13}");
            let (int, frac) = padded.split_at(padded.len() - 12);
            let m = abbreviate(t.m.to_string());
            let n = abbreviate(t.n.to_string());
            if t.m.bits() <= 128 {
                out.push_str(&format!("{}\t{m}\t{n}\t{m}/{n} = {int}.{frac}\n", t.k));
            } else {
                out.push_str(&format!("{}\t{m}\t{n}\t{int}.{frac}\n", t.k));
            }
        }
    }
    write_output(None, &out)
}
