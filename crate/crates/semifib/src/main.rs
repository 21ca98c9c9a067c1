use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semifib::sample;
use semifib::{expr, run_suite, suite_names, tables, Error, VerifyReport};
use semifib_core::AlgebraKind;

/// Algebra of type II, its fibrations and geometric models.
#[derive(Parser)]
#[command(name = "semifib", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

impl From<Kind> for AlgebraKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::I => AlgebraKind::TypeI,
            Kind::II => AlgebraKind::TypeII,
            Kind::III => AlgebraKind::TypeIII,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as "inv((2,1,4)) * (1,0,3)".
    ///
    /// Literals (a,b,c), real numbers, left-to-right `*`, inv(), conj(),
    /// dot(x, y), pi1(), pi2(). Prints 12 significant digits. Exit 2 on a
    /// syntax error, 3 on a domain error.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value = "II")]
        kind: Kind,
    },
    /// Run verification suites and emit the aggregated JSON report.
    ///
    /// Exit 0 iff every check passes, 1 on a failed check, 2 on an unknown
    /// suite.
    Verify {
        /// Suite names; see --list.
        suites: Vec<String>,
        /// Run every suite.
        #[arg(long, conflicts_with = "suites")]
        all: bool,
        /// Print the suite names and exit.
        #[arg(long, conflicts_with_all = ["suites", "all"])]
        list: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random samples per check.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit CSV samples of the model curves.
    Sample {
        #[command(subcommand)]
        family: Family,
    },
    /// Print or check multiplication-table files.
    Table {
        /// Print the table of this kind.
        #[arg(long, value_enum, conflicts_with = "check")]
        kind: Option<Kind>,
        /// Parse a table file, require it to be unital and associative and
        /// report which built-in kind it equals.
        #[arg(long)]
        check: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Grid {
    /// Sample interval, both ends included.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    range: Option<Vec<f64>>,
    /// Lower end; overridden by --range.
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    /// Upper end; overridden by --range.
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    /// Points per curve, at least 2.
    #[arg(long, default_value_t = 101)]
    n: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Grid {
    fn points(&self, lo: f64, hi: f64) -> Result<Vec<f64>, Error> {
        let (lo, hi) = match &self.range {
            Some(r) => (r[0], r[1]),
            None => (self.xmin.unwrap_or(lo), self.xmax.unwrap_or(hi)),
        };
        sample::linspace(lo, hi, self.n)
    }
}

#[derive(Subcommand)]
enum Family {
    /// Columns c,x,y on y = -c/2 (x - 1)^2; default range [-3, 3].
    FibersConformal {
        #[arg(long = "c", num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
        c: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Columns v,x1,x2 on x2 = -v/2 (x1 + 1)^2; default range [-3, 3].
    FibersProjective {
        #[arg(long = "v", num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
        v: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Columns A,B,x1,x2 on x2 = A(x1^2 - 1) + B x1, one curve per (A, B);
    /// default range [-3, 3].
    Geodesics {
        #[arg(long = "A", num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
        a: Vec<f64>,
        #[arg(long = "B", num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
        b: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
    },
    /// Columns u,eps,phi,x0,x1,x2 on both sphere components, phi over the
    /// range; default range [-2, 2].
    Sphere {
        #[arg(long = "u", num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, default_value = "0")]
        u: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Core(_) => 3,
        Error::Io { .. } | Error::Json(_) => 1,
        Error::Parse { .. } | Error::UnknownSuite(_) | Error::InvalidRange { .. } | Error::InvalidCount(_) => 2,
    }
}

fn write_out(path: Option<&PathBuf>, f: impl FnOnce(&mut dyn Write) -> Result<(), Error>) -> Result<(), Error> {
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| Error::Io { path: p.clone(), source: e })?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|e| Error::Io { path: p.clone(), source: e })
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            f(&mut w)?;
            w.flush().map_err(|e| Error::Io { path: "<stdout>".into(), source: e })
        }
    }
}

fn run_sample(family: Family) -> Result<(), Error> {
    match family {
        Family::FibersConformal { c, grid } => {
            let xs = grid.points(-3.0, 3.0)?;
            write_out(grid.out.as_ref(), |w| sample::fibers_conformal(&mut &mut *w, &c, &xs))
        }
        Family::FibersProjective { v, grid } => {
            let xs = grid.points(-3.0, 3.0)?;
            write_out(grid.out.as_ref(), |w| sample::fibers_projective(&mut &mut *w, &v, &xs))
        }
        Family::Geodesics { a, b, grid } => {
            let xs = grid.points(-3.0, 3.0)?;
            write_out(grid.out.as_ref(), |w| sample::geodesics(&mut &mut *w, &a, &b, &xs))
        }
        Family::Sphere { u, grid } => {
            let phis = grid.points(-2.0, 2.0)?;
            write_out(grid.out.as_ref(), |w| sample::sphere(&mut &mut *w, &u, &phis))
        }
    }
}

/// Returns whether every check passed.
fn run_verify(suites: Vec<String>, all: bool, seed: u64, trials: usize, json: Option<PathBuf>) -> Result<bool, Error> {
    let names: Vec<String> =
        if all || suites.is_empty() { suite_names().into_iter().map(String::from).collect() } else { suites };
    let mut reports = Vec::with_capacity(names.len());
    for name in &names {
        let r = run_suite(name, seed, trials)?;
        eprintln!(
            "{:<28} {} ({} failing checks, max err {:.3e})",
            r.suite,
            if r.passed() { "PASS" } else { "FAIL" },
            r.failures,
            r.max_abs_err
        );
        reports.push(r);
    }
    let report = VerifyReport::new(seed, trials, reports);
    let text = report.to_json()?;
    write_out(json.as_ref(), |w| writeln!(w, "{text}").map_err(|e| Error::Io { path: "<output>".into(), source: e }))?;
    Ok(report.passed())
}

fn run_table(kind: Option<Kind>, check: Option<PathBuf>) -> Result<(), Error> {
    if let Some(path) = check {
        let table = tables::load_table(&path)?;
        let defect = table.associativity_defect();
        if !table.is_unital() || defect > 1e-12 {
            eprintln!("{}: not unital and associative (defect {defect:e})", path.display());
            return Err(Error::Core(semifib_core::Error::Precondition("table must be unital and associative")));
        }
        let matched = [AlgebraKind::TypeI, AlgebraKind::TypeII, AlgebraKind::TypeIII]
            .into_iter()
            .find(|k| k.table().entries() == table.entries());
        match matched {
            Some(k) => println!("type {}", k.numeral()),
            None => println!("custom"),
        }
        return Ok(());
    }
    let k: AlgebraKind = kind.unwrap_or(Kind::II).into();
    print!("{}", k.table_text());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { expr, kind } => expr::eval(&expr, kind.into()).map(|v| {
            println!("{v}");
            true
        }),
        Command::Verify { list: true, .. } => {
            for name in suite_names() {
                println!("{name}");
            }
            Ok(true)
        }
        Command::Verify { suites, all, seed, trials, json, .. } => run_verify(suites, all, seed, trials, json),
        Command::Sample { family } => run_sample(family).map(|()| true),
        Command::Table { kind, check } => run_table(kind, check).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("semifib: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
