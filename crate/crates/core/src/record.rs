//! Line-delimited JSON certificate records: writing, reading and re-verification.
//!
//! Every rational is stored as a `p/q` string. Verification uses only the stored
//! fields and recomputes the evidence from scratch.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_scalar, parse_scalar};
use crate::certify::{self, Cell, GCertificate, Verdict};
use crate::dimension::{self, Axis, DimCertificate};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::interior;
use crate::maps::{EpWord, ParamRect, Params};
use crate::CHECKER_VERSION;

/// Optional wall-clock stamp; omitted for byte-identical output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meta {
    Stamp,
    None,
}

impl Meta {
    fn timestamp(self) -> Option<u64> {
        match self {
            Meta::Stamp => SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs()),
            Meta::None => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRecord {
    /// `[λ_lo, λ_hi, μ_lo, μ_hi]`
    pub rect: Vec<String>,
    pub word: String,
    pub mirror_word: String,
    pub margins: Vec<String>,
    #[serde(default)]
    pub split: u32,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// `dim_B A ≥ s_lo` at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRecord {
    pub lambda: String,
    pub mu: String,
    pub family: String,
    pub axis: Axis,
    pub s_lo: String,
    pub s_hi: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// `dim_B A > 1` on a whole rectangle: ROSC and `Σ a > 1` hold throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRectRecord {
    pub rect: Vec<String>,
    pub family: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// Non-empty interior on a whole rectangle (`2·(λμ)⁶ ≥ 1` at its lower-left corner).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorRecord {
    pub rect: Vec<String>,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    G(GRecord),
    Dim(DimRecord),
    DimRect(DimRectRecord),
    Interior(InteriorRecord),
}

fn rect_strings(r: &ParamRect) -> Vec<String> {
    r.to_strings().to_vec()
}

impl Record {
    pub fn from_g(c: &GCertificate, meta: Meta) -> Record {
        Record::G(GRecord {
            rect: rect_strings(&c.rect),
            word: c.word.to_string(),
            mirror_word: c.mirror_word.to_string(),
            margins: c.margin_strings(),
            split: c.split,
            version: CHECKER_VERSION.into(),
            timestamp: meta.timestamp(),
        })
    }

    pub fn from_dim(c: &DimCertificate, meta: Meta) -> Record {
        Record::Dim(DimRecord {
            lambda: fmt_scalar(c.params.lambda()),
            mu: fmt_scalar(c.params.mu()),
            family: c.words_string(),
            axis: c.axis,
            s_lo: fmt_scalar(c.s_lo()),
            s_hi: fmt_scalar(c.s_hi()),
            version: CHECKER_VERSION.into(),
            timestamp: meta.timestamp(),
        })
    }

    pub fn from_dim_rect(r: &ParamRect, family: &str, meta: Meta) -> Record {
        Record::DimRect(DimRectRecord {
            rect: rect_strings(r),
            family: family.into(),
            version: CHECKER_VERSION.into(),
            timestamp: meta.timestamp(),
        })
    }

    pub fn from_interior(r: &ParamRect, meta: Meta) -> Record {
        Record::Interior(InteriorRecord {
            rect: rect_strings(r),
            version: CHECKER_VERSION.into(),
            timestamp: meta.timestamp(),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Record::G(_) => "g",
            Record::Dim(_) => "dim",
            Record::DimRect(_) => "dim_rect",
            Record::Interior(_) => "interior",
        }
    }

    /// The parameter rectangle the record speaks about (degenerate for point records).
    pub fn rect(&self) -> Result<ParamRect> {
        match self {
            Record::G(g) => ParamRect::from_strings(&g.rect),
            Record::DimRect(d) => ParamRect::from_strings(&d.rect),
            Record::Interior(i) => ParamRect::from_strings(&i.rect),
            Record::Dim(d) => Ok(Params::parse(&d.lambda, &d.mu)?.as_rect()),
        }
    }

    /// A short witness label for maps and reports.
    pub fn witness(&self) -> String {
        match self {
            Record::G(g) => g.word.clone(),
            Record::Dim(d) => d.family.clone(),
            Record::DimRect(d) => d.family.clone(),
            Record::Interior(_) => "010,001".into(),
        }
    }

    /// Recompute the evidence from the stored fields alone.
    pub fn verify(&self) -> Result<()> {
        match self {
            Record::G(g) => certify::verify_g(&g.rect, &g.word, &g.mirror_word, &g.margins, g.split),
            Record::Dim(d) => {
                let p = Params::parse(&d.lambda, &d.mu)?;
                let ws = dimension::parse_family(&d.family)?;
                dimension::verify_dim(&p, &ws, d.axis, &parse_scalar(&d.s_lo)?, &parse_scalar(&d.s_hi)?).map(|_| ())
            }
            Record::DimRect(d) => {
                let r = ParamRect::from_strings(&d.rect)?;
                let ws = dimension::parse_family(&d.family)?;
                let ev = dimension::rosc_check(&r, &ws, Axis::X)?;
                match ev.verdict() {
                    Verdict::Pass => Ok(()),
                    v => Err(Error::Verification(format!("family {} gives {v:?} on the rectangle", d.family))),
                }
            }
            Record::Interior(i) => {
                let r = ParamRect::from_strings(&i.rect)?;
                if interior::holds_for_product(&(r.lambda().lo() * r.mu().lo())) {
                    Ok(())
                } else {
                    Err(Error::Verification("2·(λμ)⁶ < 1 at the lower-left corner".into()))
                }
            }
        }
    }

    /// Exact point-level checks at `count` seeded interior points; returns the failures.
    pub fn spot_check(&self, count: usize, seed: u64) -> Result<Vec<Params>> {
        let r = self.rect()?;
        let pts = match self {
            Record::Dim(d) => vec![Params::parse(&d.lambda, &d.mu)?],
            _ => certify::sample_points(&r, count, seed),
        };
        let mut bad = Vec::new();
        for p in pts {
            let ok = match self {
                Record::G(g) => certify::check_point(&p, &g.word.parse::<EpWord>()?)? == Verdict::Pass,
                Record::Dim(d) => {
                    let ws = dimension::parse_family(&d.family)?;
                    dimension::certify_family(&p, &ws, d.axis)?.is_some()
                }
                Record::DimRect(d) => {
                    let ws = dimension::parse_family(&d.family)?;
                    matches!(dimension::rosc_check(&p, &ws, Axis::X), Ok(ev) if ev.verdict() == Verdict::Pass)
                }
                Record::Interior(_) => interior::interior_diag(&p).is_true(),
            };
            if !ok {
                bad.push(p);
            }
        }
        Ok(bad)
    }
}

/// Serialize records one per line.
pub fn to_jsonl<T: Serialize>(items: &[T]) -> Result<String> {
    let mut s = String::new();
    for it in items {
        s.push_str(&serde_json::to_string(it)?);
        s.push('\n');
    }
    Ok(s)
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Invalid(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    write_atomic(path, to_jsonl(items)?.as_bytes())
}

/// Parse a record database; the error names the first bad line (1-based).
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
        .collect()
}

pub fn read_records(path: &Path) -> Result<Vec<Record>> {
    parse_records(&fs::read_to_string(path)?)
}

/// Outcome of re-verifying one line of a database.
#[derive(Debug)]
pub struct LineCheck {
    /// 1-based line number.
    pub line: usize,
    pub kind: String,
    pub result: Result<()>,
}

/// Re-verify every line independently. Unparseable lines are reported, not skipped.
pub fn verify_text(text: &str, strategy: Strategy) -> Vec<LineCheck> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    exec::map(strategy, &lines, |(n, l)| match serde_json::from_str::<Record>(l) {
        Ok(r) => LineCheck {
            line: *n,
            kind: r.kind().into(),
            result: r.verify(),
        },
        Err(e) => LineCheck {
            line: *n,
            kind: "?".into(),
            result: Err(Error::Parse(e.to_string())),
        },
    })
}

/// G-sweep records in cell order.
pub fn g_records(report: &certify::SweepReport, meta: Meta) -> Vec<Record> {
    report.certified.iter().map(|(_, c)| Record::from_g(c, meta)).collect()
}

/// Dimension-sweep records in cell order.
pub fn dim_records(report: &dimension::DimSweepReport, meta: Meta) -> Vec<Record> {
    report
        .certified
        .iter()
        .filter_map(|(c, ws)| {
            let r = c.rect()?;
            let f = ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
            Some(Record::from_dim_rect(&r, &f, meta))
        })
        .collect()
}

/// Interior-sweep records for the passing cells.
pub fn interior_records(sweep: &interior::InteriorSweep, meta: Meta) -> Vec<Record> {
    sweep
        .cells
        .iter()
        .filter(|(_, v)| *v == Verdict::Pass)
        .filter_map(|(c, _): &(Cell, Verdict)| c.rect().map(|r| Record::from_interior(&r, meta)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::certify::{certify_g, GOutcome, DEFAULT_SPLIT};

    fn g_record() -> Record {
        let r = ParamRect::parse("3/8,7/16,7/8,15/16").unwrap();
        let GOutcome::Certified(c) = certify_g(&r, &"(01)".parse().unwrap(), DEFAULT_SPLIT).unwrap() else {
            panic!("worked rectangle must certify")
        };
        Record::from_g(&c, Meta::None)
    }

    #[test]
    fn round_trip_and_verify() {
        let g = g_record();
        let text = to_jsonl(&[g.clone()]).unwrap();
        assert!(text.starts_with("{\"kind\":\"g\",\"rect\":[\"3/8\",\"7/16\",\"7/8\",\"15/16\"]"));
        assert!(!text.contains("timestamp"));
        assert_eq!(parse_records(&text).unwrap(), vec![g.clone()]);
        g.verify().unwrap();
        assert!(g.spot_check(5, 1).unwrap().is_empty());

        let p = Params::new(q(2, 5), q(9, 10)).unwrap();
        let c = dimension::certify_family(&p, &dimension::parse_family("01,1").unwrap(), Axis::X)
            .unwrap()
            .unwrap();
        let d = Record::from_dim(&c, Meta::Stamp);
        let back: Record = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        d.verify().unwrap();
    }

    #[test]
    fn tampering_is_caught() {
        let Record::G(mut g) = g_record() else { unreachable!() };
        g.margins[0] = "1/1000".into();
        assert!(Record::G(g.clone()).verify().is_err());
        g.word = "(011)".into();
        assert!(Record::G(g).verify().is_err());
        let text = format!("{}\nnot json\n", to_jsonl(&[g_record()]).unwrap().trim_end());
        let checks = verify_text(&text, Strategy::Sequential);
        assert!(checks[0].result.is_ok());
        assert_eq!(checks[1].line, 2);
        assert!(checks[1].result.is_err());
        assert!(matches!(parse_records(&text), Err(Error::Parse(m)) if m.starts_with("line 2")));
    }

    #[test]
    fn atomic_write() {
        let dir = std::env::temp_dir().join(format!("affine-top-rec-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g.jsonl");
        write_jsonl(&path, &[g_record()]).unwrap();
        assert_eq!(read_records(&path).unwrap().len(), 1);
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
