//! Minimal CSV writer: a one-line header, floats with 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

pub enum Cell<'a> {
    Float(f64),
    Int(i64),
    Text(&'a str),
}

impl From<f64> for Cell<'_> {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell<'_> {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell<'_> {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl<'a> From<&'a str> for Cell<'a> {
    fn from(x: &'a str) -> Self {
        Cell::Text(x)
    }
}

pub struct Table {
    header: &'static [&'static str],
    body: String,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Table {
            header,
            body: String::new(),
        }
    }

    pub fn row(&mut self, cells: &[Cell<'_>]) {
        assert_eq!(cells.len(), self.header.len(), "row width");
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                self.body.push(',');
            }
            match c {
                Cell::Float(x) => write!(self.body, "{}", float(*x)),
                Cell::Int(x) => write!(self.body, "{x}"),
                Cell::Text(s) => write!(self.body, "{s}"),
            }
            .expect("write to String");
        }
        self.body.push('\n');
    }

    pub fn render(&self) -> String {
        format!("{}\n{}", self.header.join(","), self.body)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

/// `{:.16e}` for finite values, `nan` / `inf` / `-inf` otherwise.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub const DENSITY: &[&str] = &["t", "x", "v"];
pub const KERNEL: &[&str] = &["x", "side", "G"];
pub const HISTOGRAM: &[&str] = &["bin_left", "bin_right", "count", "expected"];
pub const DIAGNOSTICS: &[&str] = &["step", "mass", "energy", "sup_w", "sup_L", "sup_Q"];
pub const CONVERGENCE: &[&str] = &["eps", "l1_rel", "linf"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float(f64::NAN), "nan");
    }

    #[test]
    fn header_and_rows() {
        let mut t = Table::new(KERNEL);
        t.row(&[0.0.into(), "left".into(), 0.5.into()]);
        assert_eq!(t.render(), "x,side,G\n0.0000000000000000e0,left,5.0000000000000000e-1\n");
    }
}
