//! The `minrank v1` text format.
//!
//! ```text
//! minrank v1
//! q <q>
//! m <m> n <n> K <K> r <r>
//! matrix 1
//! <m lines of n space-separated integers in [0, q)>
//! ...
//! matrix K
//! <...>
//! ```
//!
//! Lines end in LF with no trailing whitespace. A planted witness is stored in
//! a sidecar file holding `minrank-witness v1` and a line `x <K integers>`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, PrimeField};
use crate::minrank::MinRankInstance;

pub fn write_instance(inst: &MinRankInstance) -> String {
    let mut out = String::new();
    out.push_str("minrank v1\n");
    let _ = writeln!(out, "q {}", inst.field().modulus());
    let _ = writeln!(
        out,
        "m {} n {} K {} r {}",
        inst.m(),
        inst.n(),
        inst.k(),
        inst.r()
    );
    for (l, mat) in inst.matrices().iter().enumerate() {
        let _ = writeln!(out, "matrix {}", l + 1);
        for i in 0..mat.rows() {
            out.push_str(&join(mat.row(i)));
            out.push('\n');
        }
    }
    out
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Split<'a, char>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let body = text.strip_suffix('\n').unwrap_or(text);
        Self {
            inner: body.split('\n').enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Result<&'a str> {
        match self.inner.next() {
            Some((i, line)) => {
                self.last = i + 1;
                if line.ends_with(char::is_whitespace) || line.starts_with(char::is_whitespace) {
                    return Err(self.err("stray whitespace"));
                }
                Ok(line)
            }
            None => Err(Error::Parse {
                line: self.last + 1,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.last,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, literal: &str) -> Result<()> {
        let line = self.next_line()?;
        if line != literal {
            return Err(self.err(format!("expected `{literal}`, found `{line}`")));
        }
        Ok(())
    }

    /// Parses `key value key value ...` with the given keys in order.
    fn keyed(&mut self, keys: &[&str]) -> Result<Vec<u64>> {
        let line = self.next_line()?;
        let tokens: Vec<&str> = line.split(' ').collect();
        if tokens.len() != 2 * keys.len() {
            return Err(self.err(format!("expected keys {keys:?}")));
        }
        keys.iter()
            .zip(tokens.chunks(2))
            .map(|(key, pair)| {
                if pair[0] != *key {
                    return Err(self.err(format!("expected key `{key}`, found `{}`", pair[0])));
                }
                parse_int(pair[1]).ok_or_else(|| self.err(format!("bad integer `{}`", pair[1])))
            })
            .collect()
    }

    fn row(&mut self, count: usize, q: u64) -> Result<Vec<u32>> {
        let line = self.next_line()?;
        let values: Vec<u64> = line
            .split(' ')
            .map(|t| parse_int(t).ok_or_else(|| self.err(format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        if values.len() != count {
            return Err(self.err(format!("expected {count} entries, found {}", values.len())));
        }
        if let Some(v) = values.iter().find(|&&v| v >= q) {
            return Err(self.err(format!("entry {v} not in [0, {q})")));
        }
        Ok(values.into_iter().map(|v| v as u32).collect())
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((i, _)) => Err(Error::Parse {
                line: i + 1,
                msg: "trailing content".into(),
            }),
        }
    }
}

/// Canonical base-10 integer: digits only, no leading zeros.
fn parse_int(token: &str) -> Option<u64> {
    if token.is_empty()
        || !token.bytes().all(|b| b.is_ascii_digit())
        || (token.len() > 1 && token.starts_with('0'))
    {
        return None;
    }
    token.parse().ok()
}

pub fn parse_instance(text: &str) -> Result<MinRankInstance> {
    if !text.ends_with('\n') || text.contains('\r') {
        return Err(Error::Parse {
            line: 0,
            msg: "input must use LF line endings and end with a newline".into(),
        });
    }
    let mut lines = Lines::new(text);
    lines.expect("minrank v1")?;
    let q = lines.keyed(&["q"])?[0];
    let field = PrimeField::new(q).map_err(|e| lines.err(e.to_string()))?;
    let dims = lines.keyed(&["m", "n", "K", "r"])?;
    let [m, n, k, r] = [dims[0], dims[1], dims[2], dims[3]].map(|v| v as usize);
    if m == 0 || n == 0 || k == 0 {
        return Err(lines.err("m, n, K must be positive"));
    }
    let mut matrices = Vec::with_capacity(k);
    for l in 1..=k {
        lines.expect(&format!("matrix {l}"))?;
        let mut data = Vec::with_capacity(m * n);
        for _ in 0..m {
            data.extend(lines.row(n, q)?);
        }
        matrices.push(DenseMatrix::from_vec(field, m, n, data)?);
    }
    lines.finish()?;
    MinRankInstance::new(field, r, matrices)
}

pub fn write_witness(x: &[u32]) -> String {
    format!("minrank-witness v1\nx {}\n", join(x))
}

pub fn parse_witness(text: &str, field: PrimeField, k: usize) -> Result<Vec<u32>> {
    let mut lines = Lines::new(text);
    lines.expect("minrank-witness v1")?;
    let line = lines.next_line()?;
    let rest = line
        .strip_prefix("x ")
        .ok_or_else(|| lines.err("expected `x ...`"))?;
    let values = rest
        .split(' ')
        .map(|t| {
            parse_int(t)
                .filter(|&v| v < field.modulus() as u64)
                .map(|v| v as u32)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| lines.err("bad witness entry"))?;
    if values.len() != k {
        return Err(lines.err(format!("expected {k} coordinates, found {}", values.len())));
    }
    lines.finish()?;
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minrank::gen_random;

    const SAMPLE: &str = "minrank v1\nq 5\nm 1 n 2 K 2 r 1\nmatrix 1\n1 0\nmatrix 2\n0 4\n";

    #[test]
    fn parses_sample() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!((inst.m(), inst.n(), inst.k(), inst.r()), (1, 2, 2, 1));
        assert_eq!(inst.matrices()[1].as_slice(), &[0, 4]);
        assert_eq!(write_instance(&inst), SAMPLE);
    }

    #[test]
    fn writes_exact_layout() {
        let inst = gen_random(PrimeField::new(7).unwrap(), 2, 3, 2, 1, 3).unwrap();
        let text = write_instance(&inst);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3 + 2 * (1 + 2));
        assert_eq!(lines[0], "minrank v1");
        assert_eq!(lines[1], "q 7");
        assert_eq!(lines[2], "m 2 n 3 K 2 r 1");
        assert_eq!(lines[3], "matrix 1");
        assert!(text.lines().all(|l| !l.ends_with(' ')));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            SAMPLE.replace("minrank v1", "minrank v2"),
            SAMPLE.replace("q 5", "q 6"),
            SAMPLE.replace("1 0\n", "1 0 \n"),
            SAMPLE.replace("0 4", "0 5"),
            SAMPLE.replace("0 4", "0 04"),
            SAMPLE.replace("0 4", "0"),
            SAMPLE.replace("r 1", "r 3"),
            SAMPLE.replace("matrix 2", "matrix 3"),
            SAMPLE.replace('\n', "\r\n"),
            SAMPLE.trim_end().to_string(),
            format!("{SAMPLE}extra\n"),
            "minrank v1\nq 5\n".to_string(),
        ];
        for case in &cases {
            assert!(parse_instance(case).is_err(), "accepted {case:?}");
        }
    }

    #[test]
    fn witness_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let text = write_witness(&[0, 3, 6]);
        assert_eq!(text, "minrank-witness v1\nx 0 3 6\n");
        assert_eq!(parse_witness(&text, f, 3).unwrap(), vec![0, 3, 6]);
        assert!(parse_witness(&text, f, 2).is_err());
        assert!(parse_witness("minrank-witness v1\nx 0 9 6\n", f, 3).is_err());
    }
}
