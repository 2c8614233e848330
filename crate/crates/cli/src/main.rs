use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use univoque::dimension::{
    dimension, hat_u_block_count, kl_constant, kl_from_reference_word, plateau_derivative, sigma_lower_bound,
    staircase_sweep, SWEEP_CSV_HEADER,
};
use univoque::entropy::{default_schedule, refine_entropy};
use univoque::exactnum::{decimal_floor, parse_base, parse_rational};
use univoque::expansion::{greedy_stream, quasi_greedy_expansion};
use univoque::measure::{
    check_ratio_bound, divergent_schedule, estimate_zero_block_measure, interval_triple, measure_lower_bound,
    zero_run_experiment,
};
use univoque::{Alphabet, AlgebraicNumber, DepthConfig, DimensionOptions, Enclosure, Error, Rational, Word};

#[derive(Parser)]
#[command(name = "univoque", version, about = "Certified bounds for the dimension of univoque sets")]
struct Cli {
    /// Worker threads for parallel commands (0 = available parallelism)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Decimal digits printed for enclosure endpoints
    #[arg(long, global = true, default_value_t = 12)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct Digits {
    /// Largest digit M of the alphabet {0, ..., M}
    #[arg(short = 'M', default_value_t = 1)]
    m: u8,
}

impl Digits {
    fn alphabet(&self) -> Result<Alphabet, Error> {
        Alphabet::new(self.m)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Greedy and quasi-greedy expansions of 1
    Expand {
        #[command(flatten)]
        digits: Digits,
        /// Base: decimal, p/q, golden, tribonacci or poly:[c0,..];interval:[lo,hi]
        #[arg(short = 'q')]
        q: String,
        /// Number of digits printed
        #[arg(short = 'n', default_value_t = 32)]
        n: usize,
    },
    /// Enclosure of the dimension D(q)
    Dimension {
        #[command(flatten)]
        digits: Digits,
        #[arg(short = 'q')]
        q: String,
        /// Target enclosure width
        #[arg(long, default_value = "0.01")]
        tol: String,
        /// Largest window size tried by the entropy sandwich
        #[arg(long, default_value_t = 4096)]
        depth: usize,
    },
    /// Entropy sandwich of the univoque subshift
    Entropy {
        #[command(flatten)]
        digits: Digits,
        #[arg(short = 'q')]
        q: String,
        #[arg(long, default_value = "0.01")]
        tol: String,
        #[arg(long, default_value_t = 4096)]
        depth: usize,
    },
    /// D(q) over a grid, one CSV row per point
    Sweep {
        #[command(flatten)]
        digits: Digits,
        /// Grid lo:hi:step (exact decimals)
        #[arg(long)]
        grid: String,
        #[arg(long, default_value = "0.02")]
        tol: String,
        #[arg(long, default_value_t = 4096)]
        depth: usize,
    },
    /// Enclosure of the Komornik-Loreti constant
    Kl {
        #[command(flatten)]
        digits: Digits,
        /// Target enclosure width
        #[arg(long, default_value = "1e-6")]
        width: String,
    },
    /// Lower bound sigma(N) and the block count of the block-structured subset
    Sigma {
        #[command(flatten)]
        digits: Digits,
        /// Block length N
        #[arg(short = 'N', default_value_t = 2)]
        n: usize,
        /// Number of blocks for the prefix count
        #[arg(long, default_value_t = 3)]
        blocks: usize,
    },
    /// Slope -h/(q ln^2 q) of D on an entropy plateau
    Plateau {
        #[arg(short = 'q')]
        q: String,
        /// Entropy in nats; defaults to ln(M+1)
        #[arg(long)]
        h: Option<String>,
        #[command(flatten)]
        digits: Digits,
    },
    /// Parameter intervals of a greedy prefix and the relative-length bound
    Intervals {
        #[command(flatten)]
        digits: Digits,
        /// Greedy-admissible prefix, e.g. 11
        #[arg(long)]
        prefix: String,
        /// Number of forced zeros
        #[arg(short = 't', default_value_t = 1)]
        t: usize,
    },
    /// Measure lower bound for t zeros after position n, with a sampled estimate
    Measure {
        #[command(flatten)]
        digits: Digits,
        #[arg(short = 'p')]
        p: String,
        #[arg(short = 'r')]
        r: String,
        #[arg(short = 't', default_value_t = 2)]
        t: usize,
        /// Position after which the zeros are required (estimate only)
        #[arg(short = 'n', default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Minimal sequence n_k with n_k > log_s(n_1 + ... + n_k)
    Schedule {
        #[arg(short = 's', default_value = "2")]
        s: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Long zero runs in greedy expansions of random bases
    Zeroruns {
        #[command(flatten)]
        digits: Digits,
        /// Upper end of the sampled base range (1, r]
        #[arg(short = 'r', default_value = "2")]
        r: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UndecidedAtDepth { .. }
        | Error::AmbiguousRegion { .. }
        | Error::DepthExceeded { .. }
        | Error::CertificateDepthExceeded { .. }
        | Error::CapExceeded { .. }
        | Error::NotFound { .. }
        | Error::EmptyGraph => 3,
        Error::ToleranceNotReached { .. } => 4,
        _ => 2,
    }
}

struct Out {
    format: Format,
    digits: u32,
}

impl Out {
    fn lo(&self, e: &Enclosure) -> String {
        e.lo_decimal(self.digits)
    }

    fn hi(&self, e: &Enclosure) -> String {
        e.hi_decimal(self.digits)
    }

    /// `key=value` pairs as one CSV line, or a JSON object.
    fn record(&self, fields: &[(&str, String)]) {
        match self.format {
            Format::Csv => {
                let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{}", line.join(","));
            }
            Format::Json => {
                let map: serde_json::Map<String, serde_json::Value> =
                    fields.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                println!("{}", serde_json::Value::Object(map));
            }
        }
    }
}

fn parse_grid(spec: &str) -> Result<Vec<Rational>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(Error::Parse(format!("grid must be lo:hi:step, got {spec:?}")));
    };
    let (lo, hi, step) = (parse_rational(lo)?, parse_rational(hi)?, parse_rational(step)?);
    if step <= Rational::from_integer(0.into()) || hi < lo {
        return Err(Error::Invalid("grid needs lo <= hi and step > 0".into()));
    }
    let count = ((&hi - &lo) / &step).floor().to_integer();
    let count: usize = count.try_into().map_err(|_| Error::Invalid("grid too large".into()))?;
    Ok((0..=count).map(|k| &lo + &step * Rational::from_integer(k.into())).collect())
}

fn options(tol: &str, depth: usize) -> Result<DimensionOptions, Error> {
    Ok(DimensionOptions { tol: parse_rational(tol)?, max_depth: depth, depth: DepthConfig::default() })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let out = Out { format: cli.format, digits: cli.precision };
    let cfg = DepthConfig::default();
    match &cli.command {
        Command::Expand { digits, q, n } => {
            let a = digits.alphabet()?;
            let base = parse_base(q)?;
            let beta = greedy_stream(&base, a)?;
            beta.explore(*n);
            let beta_digits = Word::new(a, beta.prefix(*n))?.to_string();
            let beta_flag = match (beta.finite_at(), beta.periodic_form()) {
                (Some(m), _) => format!(" (finite at {m})"),
                (None, Some(p)) => format!(" (periodic {})", p.to_inf_notation()),
                (None, None) => String::new(),
            };
            let alpha = quasi_greedy_expansion(&base, a, &cfg)?;
            let alpha_text = match alpha.as_periodic() {
                Some(p) => p.to_inf_notation(),
                None => format!("{}...", Word::new(a, alpha.prefix(*n))?),
            };
            match out.format {
                Format::Csv => println!("beta: {beta_digits}{beta_flag}; alpha: {alpha_text}"),
                Format::Json => println!(
                    "{}",
                    json!({ "beta": beta_digits, "finite_at": beta.finite_at(), "alpha": alpha_text })
                ),
            }
            Ok(0)
        }
        Command::Dimension { digits, q, tol, depth } => {
            let a = digits.alphabet()?;
            let base = parse_base(q)?;
            let (est, code) = match dimension(&base, a, &options(tol, *depth)?) {
                Ok(est) => {
                    let code = if est.tolerance_met { 0 } else { 4 };
                    (est, code)
                }
                Err(Error::AmbiguousRegion { conservative }) => (*conservative, 3),
                Err(e) => return Err(e),
            };
            match out.format {
                Format::Csv => out.record(&[
                    ("q", q.clone()),
                    ("D_lo", est.lo_decimal(out.digits)),
                    ("D_hi", est.hi_decimal(out.digits)),
                    ("method", est.method.to_string()),
                ]),
                Format::Json => {
                    let mut v = est.to_json(out.digits);
                    v["q"] = json!(q);
                    println!("{v}");
                }
            }
            Ok(code)
        }
        Command::Entropy { digits, q, tol, depth } => {
            let a = digits.alphabet()?;
            let base = parse_base(q)?;
            let (h, code) = match refine_entropy(&base, a, &parse_rational(tol)?, &default_schedule(*depth), &cfg) {
                Ok(h) => (h, 0),
                Err(Error::ToleranceNotReached { best }) => (*best, 4),
                Err(e) => return Err(e),
            };
            match out.format {
                Format::Csv => out.record(&[
                    ("q", q.clone()),
                    ("h_lo", decimal_floor(&h.lower, out.digits)),
                    ("h_hi", h.enclosure().hi_decimal(out.digits)),
                    ("depth", h.depth.to_string()),
                ]),
                Format::Json => println!("{}", h.to_json()),
            }
            Ok(code)
        }
        Command::Sweep { digits, grid, tol, depth } => {
            let a = digits.alphabet()?;
            let grid = parse_grid(grid)?;
            let rows = staircase_sweep(a, &grid, &options(tol, *depth)?);
            match out.format {
                Format::Csv => {
                    println!("{SWEEP_CSV_HEADER}");
                    for row in &rows {
                        println!("{}", row.to_csv(out.digits));
                    }
                }
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|r| r.to_json(out.digits)).collect();
                    println!("{}", serde_json::Value::Array(v));
                }
            }
            for row in &rows {
                if let Err(e) = &row.result {
                    eprintln!("q={}: {e}", decimal_floor(&row.q, out.digits));
                }
            }
            Ok(if rows.iter().all(|r| r.result.is_err()) { 3 } else { 0 })
        }
        Command::Kl { digits, width } => {
            let a = digits.alphabet()?;
            let kl = kl_constant(a, &parse_rational(width)?, &cfg)?;
            let reference = kl_from_reference_word(a, 64);
            let agree = kl.enclosure.intersect(&reference).is_some();
            out.record(&[
                ("M", a.max_digit().to_string()),
                ("lo", out.lo(&kl.enclosure)),
                ("hi", out.hi(&kl.enclosure)),
                ("certificate_depth", kl.certificate_depth.to_string()),
                ("lower", kl.lower_membership.to_string()),
                ("upper", kl.upper_membership.to_string()),
                ("reference_agrees", agree.to_string()),
            ]);
            Ok(if agree { 0 } else { 3 })
        }
        Command::Sigma { digits, n, blocks } => {
            let a = digits.alphabet()?;
            let s = sigma_lower_bound(a, *n)?;
            out.record(&[
                ("N", n.to_string()),
                ("sigma_lo", out.lo(&s.sigma)),
                ("sigma_hi", out.hi(&s.sigma)),
                ("exact", s.exact.map(|r| r.to_string()).unwrap_or_default()),
                ("c_lo", out.lo(&s.separation_constant)),
                ("c_hi", out.hi(&s.separation_constant)),
                ("blocks", blocks.to_string()),
                ("prefix_count", hat_u_block_count(a, *n, *blocks)?.to_string()),
            ]);
            Ok(0)
        }
        Command::Plateau { q, h, digits } => {
            let a = digits.alphabet()?;
            let base: AlgebraicNumber = parse_base(q)?;
            let h = match h {
                Some(h) => Enclosure::point(parse_rational(h)?),
                None => univoque::exactnum::ln_rational(&Rational::from_integer(a.size().into()), 128),
            };
            let d = plateau_derivative(&base, &h);
            out.record(&[("q", q.clone()), ("slope_lo", out.lo(&d)), ("slope_hi", out.hi(&d))]);
            Ok(0)
        }
        Command::Intervals { digits, prefix, t } => {
            let a = digits.alphabet()?;
            let tr = interval_triple(&Word::parse(a, prefix)?, *t)?;
            let c = check_ratio_bound(&tr)?;
            let dec = |x: &AlgebraicNumber| x.to_decimal(out.digits);
            out.record(&[
                ("prefix", prefix.clone()),
                ("t", t.to_string()),
                ("q1", dec(&tr.q1)),
                ("q3", dec(&tr.q3)),
                ("q2", dec(&tr.q2)),
                ("ratio_lo", out.lo(&c.ratio)),
                ("bound_hi", out.hi(&c.bound)),
                ("holds", c.holds.to_string()),
            ]);
            Ok(0)
        }
        Command::Measure { digits, p, r, t, n, samples, seed } => {
            let a = digits.alphabet()?;
            let (p, r) = (parse_rational(p)?, parse_rational(r)?);
            let bound = measure_lower_bound(a, &p, &r, *t)?;
            let est = estimate_zero_block_measure(a, &p, &r, *n, *t, *samples, *seed)?;
            out.record(&[
                ("bound", out.lo(&bound)),
                ("estimate", format!("{:.6}", est.measure)),
                ("std_err", format!("{:.6}", est.std_err)),
                ("consistent", est.consistent_with(&bound, 3.0).to_string()),
            ]);
            Ok(0)
        }
        Command::Schedule { s, count } => {
            let sched = divergent_schedule(&parse_rational(s)?, *count)?;
            let terms: Vec<String> = sched.terms.iter().map(|n| n.to_string()).collect();
            out.record(&[
                ("terms", terms.join(" ")),
                ("reciprocal_sum", format!("{:.6}", sched.reciprocal_sums.last().copied().unwrap_or(0.0))),
            ]);
            Ok(0)
        }
        Command::Zeroruns { digits, r, samples, depth, seed } => {
            let a = digits.alphabet()?;
            let report = zero_run_experiment(a, &parse_rational(r)?, *samples, *depth, *seed)?;
            match out.format {
                Format::Csv => print!("{}", report.to_csv(out.digits)),
                Format::Json => println!("{}", report.to_json()),
            }
            eprintln!("fraction={}", report.fraction);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
