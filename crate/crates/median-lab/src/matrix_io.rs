//! Distance-matrix text format.
//!
//! Line 1: `n h mode`. Then n lines of n space-separated half-unit integers.
//! The encoding is bit-exact across platforms; only full matrices export.

use crate::construction::DistMatrix;
use crate::error::{Error, Result};
use crate::params::Mode;
use std::io::{BufRead, Write};
use std::str::FromStr;

pub fn write_matrix<W: Write>(w: &mut W, d: &DistMatrix, h: u32, mode: Mode) -> Result<()> {
    if !d.is_full() {
        return Err(Error::MatrixFormat {
            line: 0,
            detail: "only full matrices can be exported".to_string(),
        });
    }
    let n = d.n();
    writeln!(w, "{n} {h} {mode}")?;
    let mut line = String::new();
    for v in 1..=n {
        line.clear();
        for (i, &x) in d.row(v).unwrap().iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&x.to_string());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(r: &mut R) -> Result<(DistMatrix, u32, Mode)> {
    let mut header = String::new();
    r.read_line(&mut header)?;
    let mut parts = header.split_whitespace();
    let bad = |line: usize, detail: &str| Error::MatrixFormat {
        line,
        detail: detail.to_string(),
    };
    let n: u32 = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(1, "expected point count"))?;
    let h: u32 = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(1, "expected horizon"))?;
    let mode = parts
        .next()
        .and_then(|s| Mode::from_str(s).ok())
        .ok_or_else(|| bad(1, "expected mode BASIC or OPTIMIZED"))?;
    if parts.next().is_some() {
        return Err(bad(1, "trailing tokens in header"));
    }
    if n == 0 {
        return Err(bad(1, "empty matrix"));
    }

    let mut data = Vec::with_capacity(n as usize * n as usize);
    let mut line = String::new();
    for row in 0..n {
        line.clear();
        if r.read_line(&mut line)? == 0 {
            return Err(bad(row as usize + 2, "unexpected end of file"));
        }
        let mut count = 0;
        for tok in line.split_whitespace() {
            let x: u16 = tok
                .parse()
                .map_err(|_| bad(row as usize + 2, "bad half-unit value"))?;
            data.push(x);
            count += 1;
        }
        if count != n {
            return Err(bad(
                row as usize + 2,
                &format!("expected {n} values, found {count}"),
            ));
        }
    }
    Ok((DistMatrix::Full { n, data }, h, mode))
}
