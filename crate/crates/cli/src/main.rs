use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gmtheta_core::characters::format_bits;
use gmtheta_core::families::{
    a_priori_constant, dilation_period, ehrhart_table, fitted_constant, partition_of_unity_check,
    random_point, unit_dominant, volume_analytic_with, volume_polytope, OrthoFixture,
    OrthogonalSet,
};
use gmtheta_core::linalg::rational::{fmt_q, fmt_vec, q, Q};
use gmtheta_core::linalg::{torus_h1, LatticeFixture};
use gmtheta_core::prasad::{
    characters_of_b, composition_identity, prasad_omega, steinberg_expected,
    steinberg_multiplicity, steinberg_terms, verify_prasad_identity,
};
use gmtheta_core::presets::{
    enumerate_elliptic_levis, inner_form_fiber_count, PresetFixture, ThetaPreset,
};
use gmtheta_core::roots::{Levi, RestrictedRootSystem, ThetaLeviPoset};

/// Exact verifications for theta-split combinatorics, orthogonal families,
/// torus cohomology and Steinberg multiplicities.
///
/// Random sample points come from ChaCha8 seeded with `--seed`, so a report
/// depends only on its command line and fixtures. Set RAYON_NUM_THREADS=1
/// to run single-threaded.
#[derive(Parser, Debug)]
#[command(name = "gmtheta", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating Ind/Res identity and Steinberg multiplicities.
    VerifyPrasad {
        /// Brute-force the identity on (Z/2)^m.
        #[arg(long, conflicts_with_all = ["preset", "all_presets"])]
        m: Option<usize>,
        /// FAMILY:n (GL or U) or a preset JSON file.
        #[arg(long, conflicts_with = "all_presets")]
        preset: Option<String>,
        /// GL:1..=8 and U:1..=8.
        #[arg(long)]
        all_presets: bool,
    },
    /// Orthogonal sets: partition of unity, volumes, lattice counts.
    Ortho {
        #[command(subcommand)]
        action: OrthoAction,
    },
    /// H^1 of the torus with the given cocharacter lattice.
    H1 {
        #[arg(long)]
        fixture: PathBuf,
    },
    /// |ker(H^1(T) -> H^1(G))| given |H^1(G)|.
    Fibers {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        h1g: u64,
    },
    /// Elliptic twisted Levis of a preset.
    ListLevis {
        #[arg(long)]
        preset: String,
    },
}

#[derive(Subcommand, Debug)]
enum OrthoAction {
    /// Σ_Q Γ^Q_M(H) τ^G_Q(H - Y_Q) = 1 at sampled points.
    Check(OrthoArgs),
    /// Hull volume against the exponential-sum limit.
    Volume(OrthoArgs),
    /// Lattice-count constant terms against the volume.
    Ehrhart(OrthoArgs),
}

#[derive(Args, Debug)]
struct OrthoArgs {
    /// Built-in restricted root system, e.g. A2, BC2, G2.
    #[arg(long)]
    system: Option<String>,
    /// Orthogonal set fixture; without it, sets are drawn from the seed.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Simple roots cutting out the Levi, comma separated.
    #[arg(long, value_delimiter = ',')]
    levi: Vec<usize>,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    samples: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest refinement for `ehrhart`.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    kmax: u32,
}

#[derive(Serialize, Debug)]
struct Check {
    name: String,
    passed: bool,
    detail: Vec<String>,
}

#[derive(Serialize, Debug, Default)]
struct Report {
    command: String,
    info: Vec<String>,
    checks: Vec<Check>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    fn info(&mut self, s: impl Into<String>) {
        self.info.push(s.into());
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Vec<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Text => {
                let mut out = format!("# {}\n", self.command);
                for l in &self.info {
                    out += &format!("{l}\n");
                }
                for c in &self.checks {
                    out += &format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name);
                    for d in &c.detail {
                        out += &format!("    {d}\n");
                    }
                }
                out += &format!("result: {}\n", if self.passed() { "pass" } else { "fail" });
                out
            }
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match report.render(cli.format) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(1);
                }
            };
            let written = match &cli.output {
                Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::VerifyPrasad {
            m,
            preset,
            all_presets,
        } => {
            if let Some(m) = m {
                verify_m(*m)
            } else if let Some(p) = preset {
                let p = load_preset(p)?;
                let mut r = Report::new(&format!("verify-prasad --preset {}", p.name));
                steinberg_report(&mut r, &p)?;
                Ok(r)
            } else if *all_presets {
                let mut r = Report::new("verify-prasad --all-presets");
                for fam in ["GL", "U"] {
                    for n in 1..=8 {
                        steinberg_report(&mut r, &ThetaPreset::builtin(fam, n)?)?;
                    }
                }
                Ok(r)
            } else {
                bail!("one of --m, --preset or --all-presets is required")
            }
        }
        Command::Ortho { action } => match action {
            OrthoAction::Check(a) => ortho_check(a),
            OrthoAction::Volume(a) => ortho_volume(a),
            OrthoAction::Ehrhart(a) => ortho_ehrhart(a),
        },
        Command::H1 { fixture } => {
            let x = load_lattice(fixture)?;
            let mut r = Report::new(&format!("h1 --fixture {}", fixture.display()));
            r.info(format!(
                "rank {}, |Gamma| = {}",
                x.lattice().rank(),
                x.group_order()
            ));
            r.info(format!("H1 = {}", torus_h1(&x)?));
            Ok(r)
        }
        Command::Fibers { fixture, h1g } => {
            let x = load_lattice(fixture)?;
            let mut r = Report::new(&format!(
                "fibers --fixture {} --h1g {h1g}",
                fixture.display()
            ));
            r.info(format!("H1(T) = {}", torus_h1(&x)?));
            r.info(format!("fiber = {}", inner_form_fiber_count(&x, *h1g)?));
            Ok(r)
        }
        Command::ListLevis { preset } => {
            let p = load_preset(preset)?;
            let mut r = Report::new(&format!("list-levis --preset {}", p.name));
            levi_table(&mut r, &p);
            Ok(r)
        }
    }
}

fn load_preset(s: &str) -> Result<ThetaPreset> {
    if Path::new(s).is_file() {
        let text = fs::read_to_string(s).with_context(|| format!("reading {s}"))?;
        return Ok(PresetFixture::from_json(&text)?.build()?);
    }
    Ok(ThetaPreset::parse_selector(s)?)
}

fn load_lattice(p: &Path) -> Result<gmtheta_core::linalg::LatticeWithAction> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(LatticeFixture::from_json(&text)?.build()?)
}

fn verify_m(m: usize) -> Result<Report> {
    if m > 16 {
        bail!("m = {m} is too large for brute force (at most 16)");
    }
    let cert = verify_prasad_identity(m)?;
    let mut r = Report::new(&format!("verify-prasad --m {m}"));
    r.info(format!(
        "sum over I of (-1)^(m-|I|) Ind_(A_I) 1 on (Z/2)^{m}"
    ));
    let detail = cert
        .rows
        .iter()
        .map(|row| {
            format!(
                "chi={} I_chi={} coefficient={} expected={}",
                row.chi, row.i_chi, row.coefficient, row.expected
            )
        })
        .collect();
    r.check("alternating sum equals omega", cert.holds, detail);
    Ok(r)
}

fn levi_table(r: &mut Report, p: &ThetaPreset) {
    r.info(format!(
        "preset {} (m = {}, B = {}, validated = {})",
        p.name,
        p.m(),
        p.b,
        p.validated
    ));
    for d in enumerate_elliptic_levis(p) {
        let label = d
            .label
            .as_ref()
            .map(|l| format!("{l:?}"))
            .unwrap_or_else(|| "-".into());
        r.info(format!(
            "I={} label={} sign={:+} ker1={} H1={}",
            format_bits(d.i_mask, p.m()),
            label,
            d.sign,
            d.ker1_size,
            d.h1
        ));
    }
}

fn steinberg_report(r: &mut Report, p: &ThetaPreset) -> Result<()> {
    levi_table(r, p);
    let omega = prasad_omega(p);
    r.info(format!(
        "omega = {} (trivial on B: {})",
        format_bits(omega.character, p.m()),
        omega.effective_trivial
    ));
    for chi in characters_of_b(p) {
        let got = steinberg_multiplicity(p, chi)?;
        let want = steinberg_expected(p, chi);
        let detail = steinberg_terms(p, chi)?
            .iter()
            .map(|t| {
                format!(
                    "I={} sign={:+} ker1={} trivial_on_M={}",
                    t.i, t.sign, t.ker1_size, t.trivial_on_mab
                )
            })
            .chain([format!("sum={got} expected={want}")])
            .collect();
        r.check(
            format!("{} multiplicity at chi={}", p.name, format_bits(chi, p.m())),
            got == want,
            detail,
        );
    }
    if p.family == gmtheta_core::presets::Family::U {
        let n = p.n.expect("built-in U preset has n");
        let c = composition_identity(n)?;
        let s = steinberg_multiplicity(p, 0)?;
        r.check(
            format!("{} compositions", p.name),
            c == 1 && s == c,
            vec![format!(
                "{} compositions, signed sum {c}, multiplicity {s}",
                1u64 << (n - 1)
            )],
        );
    }
    Ok(())
}

/// Sets to test: the fixture if given, else one positive and one
/// non-positive set drawn from the seed.
fn ortho_sets(
    a: &OrthoArgs,
    rng: &mut ChaCha8Rng,
) -> Result<(Arc<Levi>, Vec<(String, OrthogonalSet)>)> {
    if let Some(f) = &a.fixture {
        let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        let mut fx = OrthoFixture::from_json(&text)?;
        if let Some(s) = &a.system {
            if let gmtheta_core::families::SystemSpec::Name(n) = &fx.system {
                if n != s {
                    bail!("--system {s} disagrees with the fixture's system {n}");
                }
            }
        }
        if !a.levi.is_empty() {
            fx.levi = Some(a.levi.clone());
        }
        let y = fx.build()?;
        return Ok((y.levi().clone(), vec![("fixture".into(), y)]));
    }
    let name = a
        .system
        .as_deref()
        .context("--system or --fixture is required")?;
    let fan = Arc::new(ThetaLeviPoset::new(RestrictedRootSystem::builtin(name)?));
    let levi = Arc::new(Levi::standard(fan, &a.levi)?);
    let pos = OrthogonalSet::random_positive(levi.clone(), rng);
    let neg = OrthogonalSet::random_non_positive(levi.clone(), rng);
    Ok((
        levi,
        vec![("positive".into(), pos), ("non-positive".into(), neg)],
    ))
}

fn describe(r: &mut Report, label: &str, y: &OrthogonalSet) {
    let pts: Vec<String> = y.points().iter().map(|p| fmt_vec(p)).collect();
    r.info(format!("{label} set: {}", pts.join(" ")));
}

fn ortho_check(a: &OrthoArgs) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (levi, sets) = ortho_sets(a, &mut rng)?;
    let mut r = Report::new(&format!(
        "ortho check (seed {}, {} samples)",
        a.seed, a.samples
    ));
    r.info(format!(
        "system {}, dim A_M = {}",
        levi.fan().system().name(),
        levi.dim()
    ));
    for (label, y) in &sets {
        describe(&mut r, label, y);
        let mut pts: Vec<_> = (0..a.samples)
            .map(|_| random_point(&levi, &mut rng, 3))
            .collect();
        pts.extend(y.points().iter().cloned());
        let rep = partition_of_unity_check(y, &pts)?;
        let detail = rep
            .violations
            .iter()
            .map(|(h, s)| format!("witness H={h} sum={s}"))
            .collect();
        r.check(
            format!("partition of unity, {label} set, {} points", rep.samples),
            rep.passed(),
            detail,
        );
    }
    Ok(r)
}

fn ortho_volume(a: &OrthoArgs) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (_, sets) = ortho_sets(a, &mut rng)?;
    let mut r = Report::new(&format!("ortho volume (seed {})", a.seed));
    for (label, y) in sets.iter().filter(|(_, y)| y.is_positive()) {
        describe(&mut r, label, y);
        let hull = volume_polytope(y)?;
        let an = volume_analytic_with(y, 3)?;
        r.info(format!("volume = {}", fmt_q(&hull)));
        let detail = an
            .per_direction
            .iter()
            .zip(&an.directions)
            .map(|(v, d)| format!("mu={} limit={}", fmt_vec(d), fmt_q(v)))
            .collect();
        r.check(
            format!("{label}: hull volume equals analytic volume"),
            hull == an.value,
            detail,
        );
    }
    for (label, y) in sets.iter().filter(|(_, y)| !y.is_positive()) {
        describe(&mut r, label, y);
        r.info(format!(
            "{label}: not positive; signed analytic volume = {}",
            fmt_q(&volume_analytic_with(y, 3)?.value)
        ));
    }
    Ok(r)
}

fn ortho_ehrhart(a: &OrthoArgs) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (levi, sets) = ortho_sets(a, &mut rng)?;
    if levi.dim() > 2 {
        bail!(
            "lattice counts are limited to dim A_M <= 2, got {}",
            levi.dim()
        );
    }
    let x0 = unit_dominant(levi.fan());
    let mut r = Report::new(&format!("ortho ehrhart (seed {}, kmax {})", a.seed, a.kmax));
    r.info(format!("dilation X0 = {}", fmt_vec(&x0)));
    for (label, y) in sets.iter().filter(|(_, y)| y.is_positive()) {
        describe(&mut r, label, y);
        let vol = volume_polytope(y)?;
        let samples = dilation_period(y, &x0)? * (levi.dim() + 2);
        let rows = ehrhart_table(y, &x0, &vol, a.kmax, samples)?;
        let c = fitted_constant(&rows);
        let bound = a_priori_constant(y);
        r.info(format!("volume = {}", fmt_q(&vol)));
        let mut exact = true;
        let mut detail = Vec::new();
        for row in &rows {
            let reproduces = row
                .counts
                .iter()
                .enumerate()
                .all(|(j, &n)| row.fit.eval(j as i64) == q(n));
            exact &= reproduces;
            let ck: Q = &c / q(row.refinement as i64);
            detail.push(format!(
                "k={} counts={:?} constant={} normalized={} error={} c/k={}",
                row.refinement,
                row.counts,
                fmt_q(&row.constant_term),
                fmt_q(&row.normalized),
                fmt_q(&row.error),
                fmt_q(&ck)
            ));
        }
        r.check(
            format!("{label}: fit reproduces every count"),
            exact,
            vec![],
        );
        detail.push(format!("c = {} (a priori {})", fmt_q(&c), fmt_q(&bound)));
        r.check(
            format!("{label}: error <= c/k with c within the a priori bound"),
            c <= bound,
            detail,
        );
    }
    Ok(r)
}
