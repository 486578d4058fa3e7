use std::env;
use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::ops::ControlFlow;
use std::path::Path;

use cdawg_maw::cdawg::Orientation;
use cdawg_maw::check::{check_index, CheckOptions, Status};
use cdawg_maw::enumerate::{LengthBound, WordHandle, WordKind};
use cdawg_maw::index::{BuildOptions, Index};
use cdawg_maw::persist;
use cdawg_maw::text::{Sentinels, Text};

use crate::args::{CheckArgs, EnumerateArgs, FormatArg, IndexArgs, OrientationArg, SentinelArg, SetArg, TextInput};
use crate::error::CliError;
use crate::render::Style;

pub const ORACLE_CAP_VAR: &str = "CDWG_ORACLE_CAP";

impl From<SentinelArg> for Sentinels {
    fn from(s: SentinelArg) -> Sentinels {
        match s {
            SentinelArg::None => Sentinels::None,
            SentinelArg::End => Sentinels::EndOnly,
            SentinelArg::Both => Sentinels::Both,
        }
    }
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Orientation {
        match o {
            OrientationArg::Auto => Orientation::Auto,
            OrientationArg::Forward => Orientation::Forward,
            OrientationArg::Reverse => Orientation::Reverse,
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    let read = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().lock().read_to_end(&mut buf).map(|_| buf)
    } else {
        fs::read(path)
    };
    read.map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn build_index(input: &TextInput, retain_text: bool) -> Result<Index, CliError> {
    let raw = read_input(&input.input)?;
    let text = Text::wrap(&raw, input.sentinels.into())?;
    let opts = BuildOptions {
        orientation: input.orientation.into(),
        retain_text,
    };
    Ok(Index::build(&text, opts)?)
}

pub fn load_index(path: &Path) -> Result<Index, CliError> {
    let file = File::open(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    persist::read_index(io::BufReader::new(file)).map_err(|source| CliError::Load {
        path: path.to_path_buf(),
        source,
    })
}

pub fn style(index: &Index, pretty: bool) -> Style {
    let mode = index.sentinels();
    Style {
        codes: index.sentinel_codes(),
        has_start: mode.has_start(),
        has_end: mode.has_end(),
        pretty,
    }
}

fn stats_line(index: &Index) -> String {
    let s = index.stats();
    format!(
        "n={} sigma={} e_R={} e_L={} e_min={} nodes={} orientation={}",
        s.n,
        s.sigma,
        s.e_right,
        s.e_left,
        s.e_min,
        s.node_count,
        if s.reversed { "reverse" } else { "forward" }
    )
}

pub fn index(args: IndexArgs) -> Result<(), CliError> {
    let index = build_index(&args.text, args.retain_text)?;
    if let Some(path) = &args.out {
        let save_err = |source| CliError::Save {
            path: path.clone(),
            source,
        };
        let file = File::create(path).map_err(|e| save_err(e.into()))?;
        let mut w = BufWriter::new(file);
        persist::write_index(&index, &mut w).map_err(save_err)?;
        w.into_inner().map_err(|e| save_err(e.into_error().into()))?;
    }
    let mut out = io::stdout().lock();
    writeln!(out, "{}", stats_line(&index)).map_err(CliError::stdout)
}

/// Streams records to standard output, counting them and honouring the
/// limit. A closed pipe ends the stream quietly.
struct Sink<'a, W: Write> {
    out: W,
    index: &'a Index,
    style: Style,
    format: FormatArg,
    limit: usize,
    filter: Option<LengthBound>,
    count: usize,
    error: Option<io::Error>,
}

impl<W: Write> Sink<'_, W> {
    fn header(&mut self) -> io::Result<()> {
        if self.format == FormatArg::Tsv {
            writeln!(self.out, "word\tlength\tkind\tk\ta\tu_node\tb\treversed\tstart\tend")?;
        }
        Ok(())
    }

    fn accept(&mut self, h: &WordHandle, interval: Option<(usize, usize)>) -> ControlFlow<()> {
        if self.count >= self.limit {
            return ControlFlow::Break(());
        }
        let len = self.index.word_len(h);
        let keep = match self.filter {
            None => true,
            Some(LengthBound::Max(l)) => len <= l,
            Some(LengthBound::Min(l)) => len >= l,
        };
        if !keep {
            return ControlFlow::Continue(());
        }
        self.count += 1;
        if let Err(e) = self.write(h, len, interval) {
            self.error = Some(e);
            return ControlFlow::Break(());
        }
        if self.count >= self.limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    fn write(&mut self, h: &WordHandle, len: usize, interval: Option<(usize, usize)>) -> io::Result<()> {
        match self.format {
            FormatArg::Count => Ok(()),
            FormatArg::Plain => {
                let w = self.style.word(&self.index.materialize(h));
                writeln!(self.out, "{w}")
            }
            FormatArg::Tsv => {
                let w = self.style.word(&self.index.materialize(h));
                let (kind, k) = match h.kind {
                    WordKind::Maw => ("maw", "0".to_string()),
                    WordKind::Ebf => ("ebf", String::new()),
                    WordKind::Mrw(k) => ("mrw", k.to_string()),
                    WordKind::Mus => ("mus", "1".to_string()),
                };
                let (start, end) = interval.map_or((String::new(), String::new()), |(i, j)| (i.to_string(), j.to_string()));
                writeln!(
                    self.out,
                    "{w}\t{len}\t{kind}\t{k}\t{}\t{}\t{}\t{}\t{start}\t{end}",
                    self.style.word(&[h.a]),
                    h.u_node.0,
                    self.style.word(&[h.b]),
                    h.reversed as u8
                )
            }
        }
    }

    fn finish(mut self) -> Result<(), CliError> {
        let result = match self.error.take() {
            Some(e) => Err(e),
            None if self.format == FormatArg::Count => writeln!(self.out, "{}", self.count),
            None => Ok(()),
        };
        match result.and_then(|_| self.out.flush()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            Err(e) => Err(CliError::stdout(e)),
            Ok(()) => Ok(()),
        }
    }
}

fn length_bound(args: &EnumerateArgs) -> Result<Option<LengthBound>, CliError> {
    match (args.min_len, args.max_len) {
        (Some(_), Some(_)) => Err(CliError::Usage("--min-len and --max-len cannot be combined".into())),
        // Every reported word has length at least 2.
        (Some(l), None) if l <= 2 => Ok(None),
        (Some(l), None) => Ok(Some(LengthBound::Min(l))),
        (None, Some(l)) if l < 2 => Err(CliError::Usage(format!("--max-len must be at least 2, got {l}"))),
        (None, Some(l)) => Ok(Some(LengthBound::Max(l))),
        (None, None) => Ok(None),
    }
}

pub fn enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    if args.k.is_some() && args.set != SetArg::Mrw {
        return Err(CliError::Usage("--k applies to --set mrw only".into()));
    }
    let bound = length_bound(&args)?;
    let index = load_index(&args.index)?;
    let stdout = io::stdout().lock();
    let mut sink = Sink {
        out: BufWriter::new(stdout),
        index: &index,
        style: style(&index, args.pretty),
        format: args.format,
        limit: args.limit.unwrap_or(usize::MAX),
        filter: None,
        count: 0,
        error: None,
    };
    if let Err(e) = sink.header() {
        sink.error = Some(e);
        return sink.finish();
    }
    let maws = args.set == SetArg::Maw || (args.set == SetArg::Mrw && args.k == Some(0));
    let query_error = |e: cdawg_maw::enumerate::QueryError| CliError::Usage(e.to_string());
    if maws || args.set == SetArg::Ebf {
        let ebf = args.set == SetArg::Ebf;
        let emit = |h: WordHandle| sink.accept(&h, None);
        match (bound, ebf) {
            (Some(b), false) => index.maws_length_bounded(b, emit).map_err(query_error)?,
            (Some(b), true) => index.ebfs_length_bounded(b, emit).map_err(query_error)?,
            (None, false) => index.enumerate_maws(emit),
            (None, true) => index.enumerate_ebfs(emit),
        };
    } else {
        sink.filter = bound;
        match (args.set, args.k) {
            (SetArg::Mus, _) => index.enumerate_mus(|r| sink.accept(&r.handle, Some(r.interval))),
            (_, Some(k)) => index.enumerate_mrws_k(k, |h| sink.accept(&h, None)),
            (_, None) => index.enumerate_occurring_mrws(|h| sink.accept(&h, None)),
        };
    }
    sink.finish()
}

fn oracle_cap() -> Result<CheckOptions, CliError> {
    match env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|oracle_cap| CheckOptions { oracle_cap })
            .map_err(|_| CliError::Usage(format!("{ORACLE_CAP_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(CheckOptions::default()),
    }
}

pub fn check(args: CheckArgs) -> Result<(), CliError> {
    let opts = oracle_cap()?;
    let mut index = if args.index {
        load_index(&args.text.input)?
    } else {
        build_index(&args.text, false)?
    };
    if args.inject_fault {
        index.inject_wchar_fault();
    }
    let report = check_index(&index, &opts);
    let mut out = io::stdout().lock();
    let io_err = CliError::stdout;
    writeln!(out, "{}", stats_line(&index)).map_err(io_err)?;
    for item in &report.items {
        writeln!(out, "{item}").map_err(io_err)?;
    }
    let failed = report.items.iter().filter(|i| i.status == Status::Fail).count();
    let skipped = report.items.iter().filter(|i| i.status == Status::Skipped).count();
    writeln!(
        out,
        "{} checks: {} passed, {failed} failed, {skipped} skipped",
        report.items.len(),
        report.items.len() - failed - skipped
    )
    .map_err(io_err)?;
    if failed > 0 {
        return Err(CliError::Invariant(format!("{failed} invariant check(s) failed")));
    }
    Ok(())
}
