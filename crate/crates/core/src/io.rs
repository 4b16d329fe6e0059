//! Delimited-text exchange formats.
//!
//! - spectra and photon amplitudes: header `k,re,im`
//! - synthesized signals: header `u,re,im,abs`
//! - entropy sweeps: header `eta,s_analytic,s_windowed,delta_s`
//!
//! Numbers are written in shortest round-trip decimal form, so a
//! write/read cycle is lossless.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::entropy::EntropyReport;
use crate::error::{Error, Result};
use crate::numerics::{Grid, GridFunction};
use crate::spectral::WaveletSignal;

pub const SPECTRAL_HEADER: [&str; 3] = ["k", "re", "im"];
pub const SIGNAL_HEADER: [&str; 4] = ["u", "re", "im", "abs"];

/// Relative (to the spacing) deviation allowed between listed abscissae and
/// the uniform grid through the first and last of them.
const UNIFORMITY_TOLERANCE: f64 = 1e-6;

pub fn write_spectral<W: Write>(f: &GridFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SPECTRAL_HEADER)?;
    for (k, v) in f.grid().nodes().zip(f.values()) {
        w.write_record([k.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

pub fn write_signal<W: Write>(s: &WaveletSignal, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SIGNAL_HEADER)?;
    for (u, v) in s.data.grid().nodes().zip(s.data.values()) {
        w.write_record([
            u.to_string(),
            v.re.to_string(),
            v.im.to_string(),
            v.norm().to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

pub fn write_entropy<W: Write>(reports: &[EntropyReport], mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Csv(e.to_string());
    writeln!(out, "{}", EntropyReport::CSV_HEADER).map_err(io)?;
    for r in reports {
        writeln!(out, "{}", r.csv_record()).map_err(io)?;
    }
    Ok(())
}

/// Reads `k,re,im` samples. The abscissae must form a uniform grid.
pub fn read_spectral<R: Read>(input: R) -> Result<GridFunction> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != SPECTRAL_HEADER {
        return Err(Error::Csv(format!(
            "expected header `k,re,im`, got `{}`",
            header.join(",")
        )));
    }
    let mut ks = Vec::new();
    let mut values = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        if record.len() != 3 {
            return Err(Error::Csv(format!(
                "row {}: expected 3 fields, got {}",
                row + 1,
                record.len()
            )));
        }
        let field = |i: usize| {
            record[i]
                .parse::<f64>()
                .map_err(|e| Error::Csv(format!("row {}: `{}`: {e}", row + 1, &record[i])))
        };
        ks.push(field(0)?);
        values.push(Complex64::new(field(1)?, field(2)?));
    }
    if ks.len() < 2 {
        return Err(Error::Csv(format!(
            "need at least 2 samples, got {}",
            ks.len()
        )));
    }
    let grid = Grid::new(ks[0], ks[ks.len() - 1], ks.len())?;
    let tol = UNIFORMITY_TOLERANCE * grid.spacing();
    if let Some(i) = (0..ks.len()).find(|&i| (ks[i] - grid.node(i)).abs() > tol) {
        return Err(Error::Csv(format!(
            "row {}: k = {} breaks the uniform spacing {}",
            i + 1,
            ks[i],
            grid.spacing()
        )));
    }
    GridFunction::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_roundtrip_is_lossless() {
        let grid = Grid::new(0.1, 2.0, 7).unwrap();
        let f = GridFunction::from_fn(grid, |k| Complex64::new(k.sin() / 3.0, -k.exp())).unwrap();
        let mut buf = Vec::new();
        write_spectral(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("k,re,im\n"));
        let back = read_spectral(buf.as_slice()).unwrap();
        assert_eq!(back.values(), f.values());
        assert_eq!(back.grid().count(), 7);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_spectral("x,re,im\n1,0,0\n2,0,0\n".as_bytes()).is_err());
        assert!(read_spectral("k,re,im\n1,0,0\n".as_bytes()).is_err());
        assert!(read_spectral("k,re,im\n1,0,0\n2,0,0\n4,0,0\n".as_bytes()).is_err());
        assert!(read_spectral("k,re,im\n1,0,0\n2,nan,0\n".as_bytes()).is_err());
        assert!(read_spectral("k,re,im\n1,0,0\n2,abc,0\n".as_bytes()).is_err());
    }

    #[test]
    fn signal_columns() {
        let grid = Grid::new(0.0, 1.0, 2).unwrap();
        let s = WaveletSignal {
            data: GridFunction::new(
                grid,
                vec![Complex64::new(3.0, 4.0), Complex64::new(0.0, 0.0)],
            )
            .unwrap(),
            mean_momentum: 1.0,
        };
        let mut buf = Vec::new();
        write_signal(&s, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "u,re,im,abs\n0,3,4,5\n1,0,0,0\n"
        );
    }
}
