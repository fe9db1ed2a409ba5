//! Grid driver: per-point certification, ball construction, exclusion, and
//! covering verification over a mass cube, with an append-only journal for
//! resumability and deterministic output.
//!
//! Journal format: JSON lines. The first record is a header carrying the
//! config hash; every further record is one grid point, appended strictly in
//! grid order (workers may finish out of order; a reordering writer holds
//! their results until the gap closes). Two runs with the same config produce
//! byte-identical journals.

use crate::boxes::Box4;
use crate::eqs::{self, Configuration, MassPoint};
use crate::error::CcError;
use crate::exclusion::{self, ExclusionReport, ExclusionStatus};
use crate::ift::{self, BoundMode, IftConstants};
use crate::krawczyk::{certify_unique, SearchConfig};
use crate::round::div_down;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

/// Lattice over [delta0, 1]^3 with m1_segments segments per side, both
/// endpoints included: (m1_segments + 1)^3 points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassGrid {
    pub delta0: f64,
    pub m1_segments: u32,
}

impl MassGrid {
    pub fn new(delta0: f64, m1_segments: u32) -> Result<Self, CcError> {
        if !(delta0 > 0.0 && delta0 < 1.0) {
            return Err(CcError::Parse(format!("delta0 = {delta0} must be in (0, 1)")));
        }
        if m1_segments == 0 {
            return Err(CcError::Parse("M1 must be >= 1".into()));
        }
        Ok(MassGrid { delta0, m1_segments })
    }

    pub fn point_count(&self) -> u64 {
        let n = u64::from(self.m1_segments) + 1;
        n * n * n
    }

    fn coord(&self, k: u32) -> f64 {
        self.delta0 + (1.0 - self.delta0) * f64::from(k) / f64::from(self.m1_segments)
    }

    /// Lexicographic point for a flat index (m1 outermost, m4 innermost).
    pub fn point(&self, index: u64) -> MassPoint {
        let n = u64::from(self.m1_segments) + 1;
        debug_assert!(index < n * n * n);
        let k1 = (index / (n * n)) as u32;
        let k3 = ((index / n) % n) as u32;
        let k4 = (index % n) as u32;
        MassPoint { m1: self.coord(k1), m3: self.coord(k3), m4: self.coord(k4) }
    }
}

/// Run knobs that affect certified output; hashed into the journal header.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub grid: MassGrid,
    pub search: SearchConfig,
    pub r1: f64,
    pub r2: f64,
    pub exclusion_depth: u32,
    pub mode: BoundMode,
}

impl RunParams {
    pub fn config_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_string(self).expect("params serialize"));
        h.update(crate::TOOL_VERSION);
        h.update(eqs::DERIV_CODE_HASH);
        hex_lower(&h.finalize())
    }
}

fn hex_lower(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Header(Header),
    Point(Certificate),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Header {
    pub tool_version: String,
    pub deriv_hash: String,
    pub config_hash: String,
    pub params: RunParams,
}

/// One grid point's full proof record. A certificate is complete iff the
/// solver certified a unique enclosure and the exclusion sweep returned
/// Excluded.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub index: u64,
    pub mass: MassPoint,
    pub status: PointStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<[String; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survivor_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bisection_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<IftConstants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants_reference: Option<IftConstants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exclusion: Option<ExclusionReport>,
    /// Halfwidth of the mass cube this certificate covers (eps / sqrt(3),
    /// shrunk further if exclusion needed a retry divisor > sqrt(3)).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covered_halfwidth: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Complete,
    Failed { reason: String },
}

impl Certificate {
    pub fn is_complete(&self) -> bool {
        self.status == PointStatus::Complete
    }

    pub fn enclosure_box(&self) -> Result<Box4, CcError> {
        let strs = self
            .enclosure
            .as_ref()
            .ok_or_else(|| CcError::Parse("certificate has no enclosure".into()))?;
        let mut comps = [crate::interval::Interval::ZERO; 4];
        for (i, s) in strs.iter().enumerate() {
            comps[i] = crate::interval::Interval::from_bracket_string(s)?;
        }
        Ok(Box4::new(comps))
    }
}

/// Certify one mass point end to end: search, ball constants, exclusion.
pub fn certify_point(index: u64, m: &MassPoint, params: &RunParams, with_reference: bool) -> Certificate {
    let fail = |reason: String| Certificate {
        index,
        mass: *m,
        status: PointStatus::Failed { reason },
        enclosure: None,
        survivor_count: None,
        bisection_count: None,
        residual_bound: None,
        constants: None,
        constants_reference: None,
        exclusion: None,
        covered_halfwidth: None,
    };

    let sol = match certify_unique(m, &params.search) {
        Ok(s) => s,
        Err(e) => return fail(format!("certify: {e}")),
    };
    let constants = match ift::compute_constants(&sol.enclosure, m, params.r1, params.r2, params.mode)
    {
        Ok(c) => c,
        Err(e) => return fail(format!("ift: {e}")),
    };
    let constants_reference = if with_reference && params.mode != BoundMode::Reference {
        ift::compute_constants(&sol.enclosure, m, params.r1, params.r2, BoundMode::Reference).ok()
    } else {
        None
    };
    let x0 = Configuration::from_array(sol.enclosure.midpoint());
    let report = match exclusion::exclude_with_fallback(
        &x0,
        constants.r,
        m,
        constants.epsilon,
        params.exclusion_depth,
    ) {
        Ok(r) => r,
        Err(e) => return fail(format!("exclusion: {e}")),
    };
    let complete = report.status == ExclusionStatus::Excluded;
    // the inscribed mass cube has halfwidth eps/sqrt(3); a retry divisor
    // beyond sqrt(3) shrinks the proven interval to eps/divisor directly
    let covered_halfwidth = complete.then(|| {
        let d = report.retry_divisor.max(3.0_f64.sqrt());
        let d_up = if d == 3.0 || d == 6.0 { d } else { d.next_up() };
        div_down(constants.epsilon, d_up)
    });

    Certificate {
        index,
        mass: *m,
        status: if complete {
            PointStatus::Complete
        } else {
            PointStatus::Failed { reason: "exclusion failed at every retry level".into() }
        },
        enclosure: Some(std::array::from_fn(|i| {
            sol.enclosure.components[i].to_bracket_string()
        })),
        survivor_count: Some(sol.survivor_count),
        bisection_count: Some(sol.bisection_count),
        residual_bound: Some(sol.midpoint_residual_bound),
        constants: Some(constants),
        constants_reference,
        exclusion: Some(report),
        covered_halfwidth,
    }
}

/// Reordering writer: accepts (index, record) in any order, appends in index
/// order, flushing whenever the next expected index arrives.
struct OrderedWriter<W: Write> {
    next: u64,
    pending: BTreeMap<u64, String>,
    out: W,
}

impl<W: Write> OrderedWriter<W> {
    fn push(&mut self, index: u64, line: String) -> std::io::Result<()> {
        self.pending.insert(index, line);
        while let Some(line) = self.pending.remove(&self.next) {
            self.out.write_all(line.as_bytes())?;
            self.out.write_all(b"\n")?;
            self.next += 1;
        }
        self.out.flush()
    }
}

/// Load a journal: verify the header against `params`, return the parsed
/// certificates (a contiguous prefix of the grid).
pub fn load_journal(path: &Path, params: &RunParams) -> Result<Vec<Certificate>, CcError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut lines = reader.lines();
    let header_line = match lines.next() {
        Some(l) => l?,
        None => return Err(CcError::CorruptJournal("empty journal file".into())),
    };
    let header: Record = serde_json::from_str(&header_line)
        .map_err(|e| CcError::CorruptJournal(format!("bad header: {e}")))?;
    let header = match header {
        Record::Header(h) => h,
        Record::Point(_) => {
            return Err(CcError::CorruptJournal("first record is not a header".into()))
        }
    };
    if header.config_hash != params.config_hash() {
        return Err(CcError::CorruptJournal(format!(
            "config hash mismatch: journal {} vs current {}",
            header.config_hash,
            params.config_hash()
        )));
    }
    let mut certs = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line)
            .map_err(|e| CcError::CorruptJournal(format!("record {i}: {e}")))?;
        match rec {
            Record::Point(c) => {
                if c.index != certs.len() as u64 {
                    return Err(CcError::CorruptJournal(format!(
                        "record {} out of order (expected index {})",
                        c.index,
                        certs.len()
                    )));
                }
                certs.push(c);
            }
            Record::Header(_) => {
                return Err(CcError::CorruptJournal("duplicate header".into()))
            }
        }
    }
    Ok(certs)
}

/// Run (or resume) the grid. Completed points found in an existing journal
/// are skipped; new results are appended. Returns all certificates in grid
/// order. `workers` = 0 means use all available parallelism.
pub fn run_grid(
    params: &RunParams,
    journal_path: &Path,
    workers: usize,
    with_reference: bool,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<Vec<Certificate>, CcError> {
    let total = params.grid.point_count();
    let mut done: Vec<Certificate> = Vec::new();
    let mut writer: Box<dyn Write + Send> = if journal_path.exists() {
        done = load_journal(journal_path, params)?;
        Box::new(std::fs::OpenOptions::new().append(true).open(journal_path)?)
    } else {
        let mut f = std::fs::File::create(journal_path)?;
        let header = Record::Header(Header {
            tool_version: crate::TOOL_VERSION.into(),
            deriv_hash: eqs::DERIV_CODE_HASH.into(),
            config_hash: params.config_hash(),
            params: *params,
        });
        serde_json::to_writer(&mut f, &header).map_err(|e| CcError::Io(e.to_string()))?;
        f.write_all(b"\n")?;
        Box::new(f)
    };
    let start = done.len() as u64;
    if start >= total {
        return Ok(done);
    }

    let writer = Mutex::new(OrderedWriter {
        next: start,
        pending: BTreeMap::new(),
        out: &mut writer,
    });
    let next_index = AtomicU64::new(start);
    let results: Mutex<Vec<Certificate>> = Mutex::new(Vec::new());
    let n_workers = if workers == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        workers
    };

    std::thread::scope(|scope| -> Result<(), CcError> {
        let mut handles = Vec::new();
        for _ in 0..n_workers.max(1) {
            handles.push(scope.spawn(|| -> Result<(), CcError> {
                loop {
                    let idx = next_index.fetch_add(1, Ordering::Relaxed);
                    if idx >= total {
                        return Ok(());
                    }
                    let m = params.grid.point(idx);
                    let cert = certify_point(idx, &m, params, with_reference);
                    let line = serde_json::to_string(&Record::Point(cert.clone()))
                        .map_err(|e| CcError::Io(e.to_string()))?;
                    {
                        let mut w = writer.lock().expect("writer lock");
                        w.push(idx, line)?;
                        progress(w.next, total);
                    }
                    results.lock().expect("results lock").push(cert);
                }
            }));
        }
        for h in handles {
            h.join().expect("worker panicked")?;
        }
        Ok(())
    })?;

    let mut fresh = results.into_inner().expect("results");
    fresh.sort_by_key(|c| c.index);
    done.extend(fresh);
    Ok(done)
}

/// Coverage verdict for a certificate set against its grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverageReport {
    pub covered: bool,
    pub min_epsilon: f64,
    pub required_m1: u32,
    pub uncovered_witnesses: Vec<[f64; 3]>,
}

/// Smallest integer M1 with M1 >= (1 - delta0) * sqrt(3) / (2 eps).
pub fn required_m1(delta0: f64, eps: f64) -> u32 {
    if !(eps > 0.0) {
        return u32::MAX;
    }
    let m = (1.0 - delta0) * 3.0_f64.sqrt() / (2.0 * eps);
    m.ceil().max(1.0) as u32
}

/// Verify that the inscribed cubes of the complete certificates cover the
/// mass cube [delta0, 1]^3, by recursive subdivision: a cell is covered when
/// one cube contains it entirely.
pub fn verify_covering(certs: &[Certificate], grid: &MassGrid) -> CoverageReport {
    let cubes: Vec<([f64; 3], f64)> = certs
        .iter()
        .filter(|c| c.is_complete())
        .filter_map(|c| c.covered_halfwidth.map(|h| (c.mass.as_array(), h)))
        .collect();
    let min_epsilon = certs
        .iter()
        .filter(|c| c.is_complete())
        .filter_map(|c| c.constants.map(|k| k.epsilon))
        .fold(f64::INFINITY, f64::min);

    let lo = grid.delta0;
    let hi = 1.0;
    let mut witnesses = Vec::new();
    let mut stack = vec![([lo, lo, lo], [hi, hi, hi], 0u32)];
    let mut covered = true;
    while let Some((a, b, depth)) = stack.pop() {
        let inside = cubes.iter().any(|(c, h)| {
            (0..3).all(|i| c[i] - h <= a[i] && b[i] <= c[i] + h)
        });
        if inside {
            continue;
        }
        // resolution floor: give up on cells smaller than ~1e-6 of the cube
        if depth >= 40 || (0..3).all(|i| b[i] - a[i] < 1e-6 * (1.0 - grid.delta0)) {
            covered = false;
            witnesses.push([
                0.5 * (a[0] + b[0]),
                0.5 * (a[1] + b[1]),
                0.5 * (a[2] + b[2]),
            ]);
            if witnesses.len() >= 64 {
                // enough counterexamples; the verdict cannot change
                break;
            }
            continue;
        }
        // bisect the longest side
        let mut k = 0;
        for i in 1..3 {
            if b[i] - a[i] > b[k] - a[k] {
                k = i;
            }
        }
        let mid = 0.5 * (a[k] + b[k]);
        let (mut b1, mut a2) = (b, a);
        b1[k] = mid;
        a2[k] = mid;
        stack.push((a, b1, depth + 1));
        stack.push((a2, b, depth + 1));
    }

    let req = if min_epsilon.is_finite() {
        required_m1(grid.delta0, min_epsilon)
    } else {
        u32::MAX
    };
    CoverageReport {
        covered,
        min_epsilon,
        required_m1: req,
        uncovered_witnesses: witnesses,
    }
}

/// CSV export: one row per certificate.
pub fn export_csv<W: Write>(certs: &[Certificate], mut out: W) -> Result<(), CcError> {
    writeln!(
        out,
        "index,m1,m3,m4,status,x1_mid,y1_mid,x3_mid,y3_mid,r,epsilon,retry_divisor,covered_halfwidth"
    )?;
    for c in certs {
        let (status, mids, r, eps) = match (&c.status, c.enclosure_box().ok(), c.constants) {
            (PointStatus::Complete, Some(b), Some(k)) => {
                ("complete".to_string(), Some(b.midpoint()), Some(k.r), Some(k.epsilon))
            }
            (PointStatus::Failed { reason }, b, k) => (
                format!("failed: {}", reason.replace(',', ";")),
                b.map(|bb| bb.midpoint()),
                k.map(|kk| kk.r),
                k.map(|kk| kk.epsilon),
            ),
            (PointStatus::Complete, _, _) => ("complete".to_string(), None, None, None),
        };
        let mids = mids.map_or(["".into(), "".into(), "".into(), "".into()], |m| {
            m.map(|v| format!("{v:.17e}"))
        });
        writeln!(
            out,
            "{},{:.17e},{:.17e},{:.17e},{},{},{},{},{},{},{},{},{}",
            c.index,
            c.mass.m1,
            c.mass.m3,
            c.mass.m4,
            status,
            mids[0],
            mids[1],
            mids[2],
            mids[3],
            r.map_or(String::new(), |v| format!("{v:.17e}")),
            eps.map_or(String::new(), |v| format!("{v:.17e}")),
            c.exclusion
                .as_ref()
                .map_or(String::new(), |e| format!("{}", e.retry_divisor)),
            c.covered_halfwidth
                .map_or(String::new(), |v| format!("{v:.17e}")),
        )?;
    }
    Ok(())
}
