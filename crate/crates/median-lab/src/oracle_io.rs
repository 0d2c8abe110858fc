//! Line-oriented stdio oracle protocol (UTF-8).
//!
//! Opponent sends `Q a b`, the oracle replies `A k` with `k` in half-units.
//! Opponent sends `OUT z` to declare its output; the oracle pads the
//! remaining pairs of `z` and replies `OK q_used`. A malformed or invalid
//! line gets `ERR <code>` and aborts the session.

use crate::adversary::AdvState;
use crate::error::{Error, Result};
use crate::params::AdvParams;
use crate::point::PointId;
use std::io::{BufRead, Write};

pub enum SessionEnd {
    /// Output declared; session finished cleanly with this many queries.
    Finished { state: AdvState, z: PointId },
    /// Protocol violation or EOF before `OUT`.
    Aborted,
}

fn parse_point(tok: Option<&str>) -> Result<PointId> {
    let raw: u32 = tok
        .ok_or_else(|| Error::BadLine {
            detail: "missing point id".to_string(),
        })?
        .parse()
        .map_err(|_| Error::BadLine {
            detail: "point id is not a number".to_string(),
        })?;
    PointId::new(raw).ok_or(Error::BadPoint { point: raw, n: 0 })
}

/// Serves one session over the given reader/writer pair.
pub fn serve<R: BufRead, W: Write>(params: AdvParams, input: R, output: &mut W) -> Result<SessionEnd> {
    let mut state = AdvState::init(params);
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("Q") => {
                let reply = parse_point(tok.next())
                    .and_then(|a| parse_point(tok.next()).map(|b| (a, b)))
                    .and_then(|(a, b)| {
                        if tok.next().is_some() {
                            Err(Error::BadLine {
                                detail: "trailing tokens".to_string(),
                            })
                        } else {
                            state.answer(a, b)
                        }
                    });
                match reply {
                    Ok(ans) => {
                        writeln!(output, "A {}", ans.expect_finite())?;
                        output.flush()?;
                    }
                    Err(e) => {
                        writeln!(output, "ERR {}", e.code())?;
                        output.flush()?;
                        return Ok(SessionEnd::Aborted);
                    }
                }
            }
            Some("OUT") => {
                let z = match parse_point(tok.next()) {
                    Ok(z) if tok.next().is_none() => z,
                    Ok(_) => {
                        writeln!(output, "ERR BAD_LINE")?;
                        output.flush()?;
                        return Ok(SessionEnd::Aborted);
                    }
                    Err(e) => {
                        writeln!(output, "ERR {}", e.code())?;
                        output.flush()?;
                        return Ok(SessionEnd::Aborted);
                    }
                };
                match state.pad_output(z) {
                    Ok(_) => {
                        writeln!(output, "OK {}", state.q_used())?;
                        output.flush()?;
                        return Ok(SessionEnd::Finished { state, z });
                    }
                    Err(e) => {
                        writeln!(output, "ERR {}", e.code())?;
                        output.flush()?;
                        return Ok(SessionEnd::Aborted);
                    }
                }
            }
            _ => {
                writeln!(output, "ERR BAD_LINE")?;
                output.flush()?;
                return Ok(SessionEnd::Aborted);
            }
        }
    }
    Ok(SessionEnd::Aborted)
}
