//! Release CSV files: header `u,v,value`, one row per pair `u < v`.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::release::{PairTable, PairValues};

pub fn write_release_csv<W: Write>(release: &impl PairValues, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "v", "value"])?;
    let n = release.n();
    for u in 0..n {
        for v in u + 1..n {
            w.write_record([u.to_string(), v.to_string(), release.value(u, v).to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a release written by [`write_release_csv`]. Rows may come in any
/// order and either orientation, but every pair must appear exactly once.
pub fn read_release_csv<R: Read>(input: R) -> Result<PairTable<f64>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    let mut n = 0usize;
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |k: usize| -> Result<&str> {
            rec.get(k).ok_or_else(|| Error::Parse {
                line,
                message: format!("expected 3 fields, got {}", rec.len()),
            })
        };
        let parse_id = |s: &str| {
            s.trim().parse::<usize>().map_err(|e| Error::Parse {
                line,
                message: format!("bad vertex id '{s}': {e}"),
            })
        };
        let (u, v) = (parse_id(field(0)?)?, parse_id(field(1)?)?);
        let value: f64 = field(2)?.trim().parse().map_err(|e| Error::Parse {
            line,
            message: format!("bad value: {e}"),
        })?;
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("diagonal pair ({u}, {v})"),
            });
        }
        n = n.max(u + 1).max(v + 1);
        rows.push((line, u, v, value));
    }
    let mut table = PairTable::filled(n, f64::NAN);
    let mut seen = PairTable::filled(n, false);
    for (line, u, v, value) in rows {
        if seen.get(u, v) {
            return Err(Error::Parse {
                line,
                message: format!("pair ({u}, {v}) listed twice"),
            });
        }
        seen.set(u, v, true);
        table.set(u, v, value);
    }
    if let Some((u, v, _)) = seen.iter().find(|&(_, _, s)| !s) {
        return Err(Error::Parse {
            line: 0,
            message: format!("pair ({u}, {v}) missing from release"),
        });
    }
    Ok(table)
}
