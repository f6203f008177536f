//! FCIDUMP interchange: MO-basis integrals as the classic namelist-plus-lines
//! text format.
//!
//! Indices in the file are 1-based. A data line `v i j k l` means the
//! chemists'-notation integral `(ij|kl) = v`; `v i j 0 0` is the one-electron
//! element `h[i,j]`; `v 0 0 0 0` is the constant (core + nuclear) energy.

use ndarray::Array2;

use super::EriTensor;
use crate::{Error, Result};

/// Parsed contents of an FCIDUMP file (MO basis).
#[derive(Debug, Clone, PartialEq)]
pub struct FcidumpData {
    pub n_orb: usize,
    pub n_elec: usize,
    pub ms2: i32,
    /// One-electron Hamiltonian, `n_orb x n_orb`.
    pub core_h: Array2<f64>,
    /// Two-electron integrals `(ij|kl)`.
    pub eri: EriTensor,
    /// Constant energy offset (nuclear repulsion + any folded core).
    pub e_core: f64,
}

/// Extract `KEY= <integer>` from the header text (commas/whitespace ignored).
fn header_int(header: &str, key: &str) -> Option<i64> {
    let upper = header.to_uppercase();
    let pos = upper.find(&format!("{key}=").to_uppercase())?;
    let rest = &header[pos + key.len() + 1..];
    let token: String = rest
        .chars()
        .skip_while(|c| c.is_whitespace())
        .take_while(|c| c.is_ascii_digit() || *c == '-' || *c == '+')
        .collect();
    token.parse().ok()
}

/// Parse FCIDUMP text.
pub fn parse_fcidump_str(text: &str) -> Result<FcidumpData> {
    // split header (up to a line containing &END or a bare /) from data lines
    let mut header = String::new();
    let mut data_start = None;
    for (i, line) in text.lines().enumerate() {
        let upper = line.to_uppercase();
        header.push_str(line);
        header.push('\n');
        if upper.contains("&END") || upper.trim() == "/" || upper.trim_end().ends_with('/') {
            data_start = Some(i + 1);
            break;
        }
    }
    let data_start = data_start
        .ok_or_else(|| Error::parse("fcidump", "header terminator (&END or /) not found"))?;

    let n_orb = header_int(&header, "NORB")
        .ok_or_else(|| Error::parse("fcidump", "NORB missing from header"))? as usize;
    let n_elec = header_int(&header, "NELEC")
        .ok_or_else(|| Error::parse("fcidump", "NELEC missing from header"))? as usize;
    let ms2 = header_int(&header, "MS2").unwrap_or(0) as i32;
    if n_orb == 0 {
        return Err(Error::parse("fcidump", "NORB = 0"));
    }

    let mut core_h = Array2::zeros((n_orb, n_orb));
    let mut eri = EriTensor::zeros(n_orb);
    let mut e_core = 0.0;

    for (lineno, line) in text.lines().enumerate().skip(data_start) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let ctx = format!("fcidump line {}", lineno + 1);
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 5 {
            return Err(Error::parse(ctx, format!("expected 5 fields, found {}", tok.len())));
        }
        let value: f64 = tok[0]
            .parse()
            .map_err(|_| Error::parse(ctx.clone(), format!("bad value `{}`", tok[0])))?;
        let mut idx = [0usize; 4];
        for (slot, t) in idx.iter_mut().zip(&tok[1..]) {
            *slot = t
                .parse()
                .map_err(|_| Error::parse(ctx.clone(), format!("bad index `{t}`")))?;
        }
        let [i, j, k, l] = idx;
        if idx.iter().any(|&x| x > n_orb) {
            return Err(Error::parse(ctx, format!("index out of range 1..={n_orb}")));
        }
        match (i, j, k, l) {
            (0, 0, 0, 0) => e_core = value,
            (i, j, 0, 0) if i > 0 && j > 0 => {
                core_h[[i - 1, j - 1]] = value;
                core_h[[j - 1, i - 1]] = value;
            }
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                eri.set(i - 1, j - 1, k - 1, l - 1, value);
            }
            _ => {
                return Err(Error::parse(
                    ctx,
                    format!("unsupported index pattern {i} {j} {k} {l}"),
                ))
            }
        }
    }

    Ok(FcidumpData { n_orb, n_elec, ms2, core_h, eri, e_core })
}

/// Parse an FCIDUMP file.
pub fn parse_fcidump(path: impl AsRef<std::path::Path>) -> Result<FcidumpData> {
    parse_fcidump_str(&std::fs::read_to_string(path)?)
}

/// Fortran-style scientific literal with 17 significant digits, which is
/// enough for an exact f64 round trip.
fn fmt_value(v: f64) -> String {
    let s = format!("{:.16E}", v);
    // normalize exponent to a signed two-digit form: 1.5E2 -> 1.5E+02
    match s.split_once('E') {
        Some((mant, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            format!("{mant}E{sign}{:0>2}", digits)
        }
        None => s,
    }
}

/// Render FCIDUMP text (canonical quadruples, exact zeros omitted).
pub fn write_fcidump_str(data: &FcidumpData) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "&FCI NORB={},NELEC={},MS2={},\n",
        data.n_orb, data.n_elec, data.ms2
    ));
    out.push_str(" ORBSYM=");
    out.push_str(&"1,".repeat(data.n_orb));
    out.push_str("\n ISYM=1,\n&END\n");
    for (p, q, r, s) in data.eri.unique_quadruples() {
        let v = data.eri.get(p, q, r, s);
        if v != 0.0 {
            out.push_str(&format!(
                "{:>24} {:>3} {:>3} {:>3} {:>3}\n",
                fmt_value(v),
                p + 1,
                q + 1,
                r + 1,
                s + 1
            ));
        }
    }
    for p in 0..data.n_orb {
        for q in 0..=p {
            let v = data.core_h[[p, q]];
            if v != 0.0 {
                out.push_str(&format!(
                    "{:>24} {:>3} {:>3}   0   0\n",
                    fmt_value(v),
                    p + 1,
                    q + 1
                ));
            }
        }
    }
    out.push_str(&format!("{:>24}   0   0   0   0\n", fmt_value(data.e_core)));
    out
}

/// Write an FCIDUMP file.
pub fn write_fcidump(data: &FcidumpData, path: impl AsRef<std::path::Path>) -> Result<()> {
    std::fs::write(path, write_fcidump_str(data))?;
    Ok(())
}
