use std::io;
use std::ops::ControlFlow;
use std::time::Instant;

use cdawg_maw::index::{BuildOptions, Index};
use cdawg_maw::oracle::{de_bruijn, fibonacci_word};
use cdawg_maw::text::Text;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::args::{BenchArgs, FamilyArg};
use crate::error::CliError;

const DE_BRUIJN_CAP: usize = 1 << 26;

const HEADER: [&str; 14] = [
    "family", "param", "n", "sigma", "e_r", "e_l", "e_min", "nodes", "maw", "ebf", "mrw", "maw_ratio", "build_ms",
    "enum_ms",
];

fn texts(args: &BenchArgs) -> Result<Vec<(usize, Vec<u8>)>, CliError> {
    if !(1..=26).contains(&args.sigma) {
        return Err(CliError::Usage(format!("--sigma must be in 1..=26, got {}", args.sigma)));
    }
    let orders = args.k_min..=args.k_max;
    Ok(match args.family {
        FamilyArg::Random => {
            let mut rng = StdRng::seed_from_u64(args.seed);
            args.n
                .iter()
                .map(|&n| (n, (0..n).map(|_| b'a' + rng.gen_range(0..args.sigma) as u8).collect()))
                .collect()
        }
        FamilyArg::Fib => orders.map(|k| (k, fibonacci_word(k))).collect(),
        FamilyArg::Debruijn => orders
            .map(|k| {
                de_bruijn(args.sigma, k, DE_BRUIJN_CAP)
                    .map(|s| (k, s))
                    .map_err(|e| CliError::Usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?,
    })
}

fn count(run: impl FnOnce(&mut dyn FnMut() -> ControlFlow<()>)) -> usize {
    let mut n = 0;
    run(&mut || {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// Checks the size bounds every index must satisfy.
fn bounds(index: &Index, maw: usize, ebf: usize, mrw: usize) -> Result<(), String> {
    let s = index.stats();
    if s.e_min >= 2 * s.n.max(1) {
        return Err(format!("e_min = {} is not below 2n = {}", s.e_min, 2 * s.n));
    }
    if maw > s.sigma * s.e_min {
        return Err(format!("|MAW| = {maw} exceeds sigma * e_min = {}", s.sigma * s.e_min));
    }
    if ebf + s.node_count > s.e_right + s.e_left + 1 {
        return Err(format!("|EBF| = {ebf} exceeds e_R + e_L - |V| + 1"));
    }
    if mrw > s.e_min {
        return Err(format!("|MRW| = {mrw} exceeds e_min = {}", s.e_min));
    }
    Ok(())
}

pub fn run(args: BenchArgs) -> Result<(), CliError> {
    let family = match args.family {
        FamilyArg::Random => "random",
        FamilyArg::Fib => "fib",
        FamilyArg::Debruijn => "debruijn",
    };
    let inputs = texts(&args)?;
    let mut out = csv::Writer::from_writer(io::stdout().lock());
    let csv_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(e) => CliError::stdout(e),
        other => CliError::stdout(io::Error::other(format!("{other:?}"))),
    };
    out.write_record(HEADER).map_err(csv_err)?;
    for (param, raw) in inputs {
        let text = Text::wrap(&raw, args.sentinels.into())?;
        let start = Instant::now();
        let index = Index::build(&text, BuildOptions::default())?;
        let build_ms = start.elapsed().as_secs_f64() * 1e3;
        let start = Instant::now();
        let maw = count(|f| {
            index.enumerate_maws(|_| f());
        });
        let ebf = count(|f| {
            index.enumerate_ebfs(|_| f());
        });
        let mrw = count(|f| {
            index.enumerate_occurring_mrws(|_| f());
        });
        let enum_ms = start.elapsed().as_secs_f64() * 1e3;
        bounds(&index, maw, ebf, mrw).map_err(|e| CliError::Invariant(format!("{family} {param}: {e}")))?;
        let s = index.stats();
        let ratio = maw as f64 / (s.sigma * s.e_min).max(1) as f64;
        let row = [
            family.to_string(),
            param.to_string(),
            s.n.to_string(),
            s.sigma.to_string(),
            s.e_right.to_string(),
            s.e_left.to_string(),
            s.e_min.to_string(),
            s.node_count.to_string(),
            maw.to_string(),
            ebf.to_string(),
            mrw.to_string(),
            format!("{ratio:.4}"),
            format!("{build_ms:.3}"),
            format!("{enum_ms:.3}"),
        ];
        out.write_record(&row).map_err(csv_err)?;
        out.flush().map_err(CliError::stdout)?;
    }
    Ok(())
}
