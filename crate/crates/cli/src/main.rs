//! `rmq`: generate matrices, encode them, query payloads, check every scheme
//! against the brute-force oracle, and print the size measurements as CSV.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use rmq_core::cartesian::{constant_c, expected_offset_bits_recurrence};
use rmq_core::container::Container;
use rmq_core::measure::{grid_space_report, measure_bits, run_trials, trial_seed, SizeStats};
use rmq_core::merge::{count_equiv_classes, three_row_rate};
use rmq_core::model::{enumerate_queries, gen_random_matrix};
use rmq_core::{Error, QueryRect, RankMatrix, Scheme};

#[derive(Parser, Debug)]
#[command(name = "rmq", version, about = "Range maximum query encodings: build, query, verify, measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a random rank matrix in the text format.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a matrix file into an RMQE container.
    Encode {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode a container and print the answer to every query it supports.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Answer one query from a container; prints `row col`.
    Query {
        #[arg(long = "in")]
        input: PathBuf,
        /// `i1,i2,j1,j2`, 1-based and inclusive.
        #[arg(long)]
        query: QueryRect,
    },
    /// Encode random matrices and replay all queries against the oracle.
    Verify {
        /// A scheme name, or `all`.
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mean payload size over random matrices.
    Measure {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-component breakdown (GRID only).
        #[arg(long)]
        components: bool,
    },
    /// Count answer-equivalence classes of all `m × n` matrices.
    Classes {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Partial sums of c, the expected offset size S(n), and the three-row rate.
    Constants {
        #[arg(long, default_value_t = 1_000_000)]
        terms: u64,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Resource(String),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Size(_) | Error::Range(_) | Error::Domain(_) => Failure::Usage(e.to_string()),
            Error::Resource(_) => Failure::Resource(e.to_string()),
            _ => Failure::Other(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(e) => e.into(),
            Err(e) => Failure::Other(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn read_matrix(path: &Path) -> anyhow::Result<RankMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(RankMatrix::parse(&text)?)
}

fn read_container(path: &Path) -> anyhow::Result<Container> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Container::from_bytes(&bytes)?)
}

fn gen(m: usize, n: usize, seed: u64, out: Option<PathBuf>) -> Outcome {
    let text = format!("{}\n", gen_random_matrix(m, n, seed)?);
    match out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn encode(scheme: Scheme, input: &Path, out: &Path) -> Outcome {
    let a = read_matrix(input)?;
    let bits = scheme.encode(&a)?;
    let c = Container::new(scheme, a.rows(), a.cols(), bits);
    fs::write(out, c.to_bytes()).with_context(|| format!("writing {}", out.display()))?;
    println!("scheme,m,n,bits");
    println!("{scheme},{},{},{}", a.rows(), a.cols(), c.payload.len());
    Ok(())
}

fn decode(input: &Path) -> Outcome {
    let c = read_container(input)?;
    let idx = c.scheme.decode(&c.payload, c.m, c.n)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    writeln!(out, "scheme,m,n,i1,i2,j1,j2,row,col")?;
    for q in enumerate_queries(c.m, c.n, c.scheme.sidedness()) {
        let p = idx.query(&q)?;
        writeln!(out, "{},{},{},{},{},{},{},{},{}", c.scheme, c.m, c.n, q.i1, q.i2, q.j1, q.j2, p.row, p.col)?;
    }
    out.flush()?;
    Ok(())
}

fn query(input: &Path, q: &QueryRect) -> Outcome {
    let c = read_container(input)?;
    let p = c.scheme.decode(&c.payload, c.m, c.n)?.query(q)?;
    println!("{p}");
    Ok(())
}

fn verify(scheme: &str, m: usize, n: usize, trials: usize, seed: u64) -> Outcome {
    let all = scheme.eq_ignore_ascii_case("all");
    let schemes = if all { Scheme::ALL.to_vec() } else { vec![scheme.parse()?] };
    println!("scheme,m,n,trials,seed,queries,mismatches");
    let mut first_bad = None;
    for s in schemes {
        // schemes tied to a row count run at that height under `all`
        let rows = match s.fixed_rows() {
            Some(r) if all => r,
            _ => m,
        };
        s.check_dims(rows, n)?;
        let results = run_trials(trials, |t| {
            let a = gen_random_matrix(rows, n, trial_seed(seed, t))?;
            Ok::<_, Error>(s.first_mismatch(&a)?.map(|bad| format!("{s} trial {t}:\n{a}\n{bad}")))
        });
        let mut bad = Vec::new();
        for r in results {
            if let Some(msg) = r? {
                bad.push(msg);
            }
        }
        let queries = trials * enumerate_queries(rows, n, s.sidedness()).len();
        println!("{s},{rows},{n},{trials},{seed},{queries},{}", bad.len());
        if first_bad.is_none() {
            first_bad = bad.into_iter().next();
        }
    }
    match first_bad {
        Some(msg) => Err(Failure::Mismatch(msg)),
        None => Ok(()),
    }
}

fn measure(scheme: Scheme, m: usize, n: usize, trials: usize, seed: u64, components: bool) -> Outcome {
    if components {
        if scheme != Scheme::Grid {
            return Err(Failure::Usage("--components needs --scheme GRID".into()));
        }
        println!("scheme,m,n,trials,seed,component,bits");
        for (name, bits) in grid_space_report(m, n, trials, seed)? {
            println!("{scheme},{m},{n},{trials},{seed},{name},{bits:.4}");
        }
        return Ok(());
    }
    let s = measure_bits(scheme, m, n, trials, seed)?;
    println!("{}", SizeStats::CSV_HEADER);
    println!("{}", s.csv_row());
    Ok(())
}

fn classes(m: usize, n: usize) -> Outcome {
    let k = count_equiv_classes(m, n)?;
    println!("m,n,classes,log2_classes");
    println!("{m},{n},{k},{:.6}", (k as f64).log2());
    Ok(())
}

fn constants(terms: u64, nmax: usize) -> Outcome {
    println!("quantity,arg,value");
    let mut t = 10;
    while t < terms {
        println!("c,{t},{:.9}", constant_c(t));
        t *= 10;
    }
    println!("c,{terms},{:.9}", constant_c(terms));
    for (n, s) in expected_offset_bits_recurrence(nmax).into_iter().enumerate().skip(1) {
        println!("S,{n},{s:.6}");
    }
    let mut best = (0.0, f64::MIN);
    for k in 0..=100 {
        let x = k as f64 / 100.0;
        let f = three_row_rate(x);
        println!("f,{x:.2},{f:.9}");
        if f > best.1 {
            best = (x, f);
        }
    }
    println!("f_max,{:.2},{:.9}", best.0, best.1);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { m, n, seed, out } => gen(m, n, seed, out),
        Command::Encode { scheme, input, out } => encode(scheme, &input, &out),
        Command::Decode { input } => decode(&input),
        Command::Query { input, query: q } => query(&input, &q),
        Command::Verify { scheme, m, n, trials, seed } => verify(&scheme, m, n, trials, seed),
        Command::Measure { scheme, m, n, trials, seed, components } => measure(scheme, m, n, trials, seed, components),
        Command::Classes { m, n } => classes(m, n),
        Command::Constants { terms, nmax } => constants(terms, nmax),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("rmq: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("rmq: mismatch: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("rmq: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Other(e)) => {
            eprintln!("rmq: {e:#}");
            ExitCode::from(1)
        }
    }
}
