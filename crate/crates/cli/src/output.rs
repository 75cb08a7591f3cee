//! CSV and JSON writers. CSV files start with a header, put the frame
//! coordinates first and end lines with LF.

use std::io::{self, Write};

use serde::Serialize;

use tomokit::frames::FrameParams;
use tomokit::phasespace::WignerField;
use tomokit::tomography::TomogramField;

use crate::verify::Check;

#[derive(Serialize)]
pub struct WignerOutput<'a> {
    #[serde(flatten)]
    pub field: &'a WignerField,
    pub time: f64,
}

#[derive(Serialize)]
pub struct ShannonOutput<'a> {
    pub frames: &'a [FrameParams],
    pub shannon: &'a [f64],
    pub time: f64,
}

fn writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn into_io(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Shortest round-trip form, switching to exponent notation for very small
/// and very large magnitudes.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn frame_columns(f: &FrameParams, polar: bool) -> Vec<String> {
    if polar {
        vec![num(f.theta)]
    } else {
        vec![num(f.mu), num(f.nu)]
    }
}

fn frame_header(polar: bool) -> Vec<&'static str> {
    if polar {
        vec!["theta"]
    } else {
        vec!["mu", "nu"]
    }
}

pub fn tomogram_csv(field: &TomogramField, polar: bool, w: &mut dyn Write) -> io::Result<()> {
    let mut out = writer(w);
    let mut header = frame_header(polar);
    header.extend(["X", "W"]);
    out.write_record(&header).map_err(into_io)?;
    for (f, row) in field.frames.iter().zip(&field.values) {
        let lead = frame_columns(f, polar);
        for (x, v) in field.x_grid.iter().zip(row) {
            let mut rec = lead.clone();
            rec.extend([num(*x), num(*v)]);
            out.write_record(&rec).map_err(into_io)?;
        }
    }
    out.flush()
}

pub fn wigner_csv(field: &WignerField, w: &mut dyn Write) -> io::Result<()> {
    let mut out = writer(w);
    out.write_record(["q", "p", "W"]).map_err(into_io)?;
    for (q, row) in field.q_grid.iter().zip(&field.values) {
        for (p, v) in field.p_grid.iter().zip(row) {
            out.write_record([num(*q), num(*p), num(*v)]).map_err(into_io)?;
        }
    }
    out.flush()
}

pub fn shannon_csv(s: &ShannonOutput, polar: bool, w: &mut dyn Write) -> io::Result<()> {
    let mut out = writer(w);
    let mut header = frame_header(polar);
    header.push("S");
    out.write_record(&header).map_err(into_io)?;
    for (f, v) in s.frames.iter().zip(s.shannon) {
        let mut rec = frame_columns(f, polar);
        rec.push(num(*v));
        out.write_record(&rec).map_err(into_io)?;
    }
    out.flush()
}

pub fn bipartite_entropy_csv(linear: f64, von_neumann: f64, w: &mut dyn Write) -> io::Result<()> {
    let mut out = writer(w);
    out.write_record(["linear_entropy", "von_neumann_entropy"]).map_err(into_io)?;
    out.write_record([num(linear), num(von_neumann)]).map_err(into_io)?;
    out.flush()
}

pub fn checks_csv(checks: &[Check], w: &mut dyn Write) -> io::Result<()> {
    let mut out = writer(w);
    out.write_record(["check", "result", "detail"]).map_err(into_io)?;
    for c in checks {
        out.write_record([c.name, if c.passed { "PASS" } else { "FAIL" }, &c.detail]).map_err(into_io)?;
    }
    out.flush()
}

pub fn json<T: Serialize + ?Sized>(value: &T, w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(io::Error::other)?;
    writeln!(w)
}
