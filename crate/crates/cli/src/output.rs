use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use ssfrenet_core::frenet::{CurveClassification, FrenetSample};
use ssfrenet_core::geodesic::GeodesicSample;

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct FrameRecord {
    pub s: f64,
    pub order: u8,
    pub kappa: f64,
    pub tau: Option<f64>,
    pub T1: f64,
    pub T2: f64,
    pub T3: f64,
    pub N1: Option<f64>,
    pub N2: Option<f64>,
    pub N3: Option<f64>,
    pub B1: Option<f64>,
    pub B2: Option<f64>,
    pub B3: Option<f64>,
}

impl From<&FrenetSample> for FrameRecord {
    fn from(x: &FrenetSample) -> Self {
        let n = x.n.map(|v| v.0);
        let b = x.b.map(|v| v.0);
        Self {
            s: x.s,
            order: x.order.as_u8(),
            kappa: x.kappa,
            tau: x.tau,
            T1: x.t.a1(),
            T2: x.t.a2(),
            T3: x.t.a3(),
            N1: n.map(|v| v[0]),
            N2: n.map(|v| v[1]),
            N3: n.map(|v| v[2]),
            B1: b.map(|v| v[0]),
            B2: b.map(|v| v[1]),
            B3: b.map(|v| v[2]),
        }
    }
}

impl FrameRecord {
    const HEADER: [&'static str; 13] = [
        "s", "order", "kappa", "tau", "T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3",
    ];

    fn cells(&self) -> Vec<String> {
        let mut v = vec![
            num(self.s),
            self.order.to_string(),
            num(self.kappa),
            opt(self.tau),
        ];
        v.extend([self.T1, self.T2, self.T3].map(num));
        v.extend([self.N1, self.N2, self.N3, self.B1, self.B2, self.B3].map(opt));
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
    pub residual: f64,
}

impl From<&GeodesicSample> for TrajectoryRecord {
    fn from(g: &GeodesicSample) -> Self {
        let [x, y, z] = g.state.position;
        let [vx, vy, vz] = g.state.velocity;
        Self {
            s: g.s,
            x,
            y,
            z,
            vx,
            vy,
            vz,
            residual: g.residual,
        }
    }
}

impl TrajectoryRecord {
    const HEADER: [&'static str; 8] = ["s", "x", "y", "z", "vx", "vy", "vz", "residual"];

    fn cells(&self) -> Vec<String> {
        [
            self.s,
            self.x,
            self.y,
            self.z,
            self.vx,
            self.vy,
            self.vz,
            self.residual,
        ]
        .map(num)
        .to_vec()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub order: u8,
    pub kind: String,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub singular_points: Vec<f64>,
    pub samples: usize,
}

impl From<&CurveClassification> for ClassifyRecord {
    fn from(c: &CurveClassification) -> Self {
        Self {
            order: c.order.as_u8(),
            kind: c.kind.as_str().to_string(),
            kappa_min: c.kappa_range.0,
            kappa_max: c.kappa_range.1,
            tau_min: c.tau_range.map(|r| r.0),
            tau_max: c.tau_range.map(|r| r.1),
            singular_points: c.singular_points.clone(),
            samples: c.samples,
        }
    }
}

impl ClassifyRecord {
    const HEADER: [&'static str; 8] = [
        "order",
        "kind",
        "kappa_min",
        "kappa_max",
        "tau_min",
        "tau_max",
        "singular_points",
        "samples",
    ];

    fn cells(&self) -> Vec<String> {
        let singular: Vec<String> = self.singular_points.iter().map(|&x| num(x)).collect();
        vec![
            self.order.to_string(),
            self.kind.clone(),
            num(self.kappa_min),
            num(self.kappa_max),
            opt(self.tau_min),
            opt(self.tau_max),
            singular.join(";"),
            self.samples.to_string(),
        ]
    }
}

/// 17 significant digits, '.' separator regardless of locale.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let short = |c: &String| match c.parse::<f64>() {
        Ok(x) if c.contains('e') => format!("{x:.9}"),
        _ => c.clone(),
    };
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(short).collect()).collect();
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in &rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn emit<T: Serialize>(
    format: Format,
    path: Option<&Path>,
    header: &[&str],
    records: &[T],
    cells: impl Fn(&T) -> Vec<String>,
) -> Result<(), CliError> {
    let mut out = sink(path)?;
    match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = records.iter().map(cells).collect();
            write_csv(&mut out, header, &rows)?;
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = records.iter().map(cells).collect();
            write_table(&mut out, header, &rows)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn emit_frames(
    format: Format,
    path: Option<&Path>,
    records: &[FrameRecord],
) -> Result<(), CliError> {
    emit(
        format,
        path,
        &FrameRecord::HEADER,
        records,
        FrameRecord::cells,
    )
}

pub fn emit_trajectory(
    format: Format,
    path: Option<&Path>,
    records: &[TrajectoryRecord],
) -> Result<(), CliError> {
    emit(
        format,
        path,
        &TrajectoryRecord::HEADER,
        records,
        TrajectoryRecord::cells,
    )
}

pub fn emit_classification(
    format: Format,
    path: Option<&Path>,
    record: &ClassifyRecord,
) -> Result<(), CliError> {
    emit(
        format,
        path,
        &ClassifyRecord::HEADER,
        std::slice::from_ref(record),
        ClassifyRecord::cells,
    )
}
