//! Deterministic CSV/JSON emission: stable column orders, 12 significant
//! digits for CSV floats, one write at the end of the run.

use std::io::Write;

/// 12 significant digits, scientific.
pub fn fmt12(value: f64) -> String {
    format!("{value:.11e}")
}

pub enum Sink {
    Stdout,
    File(String),
}

impl Sink {
    pub fn from_path(path: Option<&str>) -> Self {
        match path {
            Some(p) => Sink::File(p.to_string()),
            None => Sink::Stdout,
        }
    }

    pub fn write(&self, content: &str) -> std::io::Result<()> {
        match self {
            Sink::Stdout => {
                let mut out = std::io::stdout().lock();
                out.write_all(content.as_bytes())
            }
            Sink::File(path) => std::fs::write(path, content),
        }
    }
}

/// Time-determinant sweep rows: `t_us,det`.
pub fn sweep_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("t_us,det\n");
    for (t_us, det) in rows {
        out.push_str(&fmt12(*t_us));
        out.push(',');
        out.push_str(&fmt12(*det));
        out.push('\n');
    }
    out
}

/// Averaged-determinant sweep rows: `t0_us,sigma,det_avg`.
pub fn averaged_sweep_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("t0_us,sigma,det_avg\n");
    for (t0_us, sigma, det) in rows {
        out.push_str(&fmt12(*t0_us));
        out.push(',');
        out.push_str(&fmt12(*sigma));
        out.push(',');
        out.push_str(&fmt12(*det));
        out.push('\n');
    }
    out
}

pub fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}
