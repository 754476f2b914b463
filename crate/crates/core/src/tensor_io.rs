//! Text format for order-3 tensors and the built-in tensors.
//!
//! ```text
//! tensor v1 field=Q dims=3x3x3
//! # i j k value
//! 1 2 3 1
//! 1 3 2 -1
//! ```
//!
//! Indices are 1-based. Values are integers or fractions `n/d`; over `GF:p`
//! they are reduced mod p on load. The canonical form lists entries sorted by
//! `(i, j, k)` with reduced values and no comments, and round-trips
//! byte-for-byte.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::flattening::ToeplitzBasis;
use crate::tensor::Tensor3;

const MAGIC: &str = "tensor";
const VERSION: &str = "v1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_dims(s: &str, line: usize) -> Result<(usize, usize, usize)> {
    let parts: Vec<_> = s.split('x').collect();
    let dims: Vec<usize> = parts
        .iter()
        .map(|p| p.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(line, format!("bad dims `{s}`")))?;
    match dims[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(parse_err(
            line,
            format!("dims `{s}` must have three factors"),
        )),
    }
}

/// Parses a tensor document. Duplicate indices are rejected; zero values are
/// dropped.
pub fn parse(text: &str) -> Result<Tensor3> {
    let mut tensor: Option<Tensor3> = None;
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some(t) = tensor.as_mut() else {
            tensor = Some(parse_header(&tokens, line_no)?);
            continue;
        };
        let [i, j, k, value] = tokens[..] else {
            return Err(parse_err(line_no, "expected `i j k value`"));
        };
        let idx = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad index `{s}`")))
        };
        let (i, j, k) = (idx(i)?, idx(j)?, idx(k)?);
        let (a, b, c) = t.dims();
        if !(1..=a).contains(&i) || !(1..=b).contains(&j) || !(1..=c).contains(&k) {
            return Err(parse_err(
                line_no,
                format!("index ({i},{j},{k}) outside {a}x{b}x{c}"),
            ));
        }
        if !seen.insert((i, j, k)) {
            return Err(parse_err(line_no, format!("duplicate entry ({i},{j},{k})")));
        }
        let v = Scalar::parse(t.field(), value).map_err(|e| parse_err(line_no, e.to_string()))?;
        t.set(i, j, k, v)?;
    }
    tensor.ok_or_else(|| parse_err(0, "missing header"))
}

fn parse_header(tokens: &[&str], line: usize) -> Result<Tensor3> {
    let [magic, version, field, dims] = tokens[..] else {
        return Err(parse_err(
            line,
            "header must be `tensor v1 field=<Q|GF:p> dims=<a>x<b>x<c>`",
        ));
    };
    if magic != MAGIC {
        return Err(parse_err(
            line,
            format!("expected `{MAGIC}`, found `{magic}`"),
        ));
    }
    if version != VERSION {
        return Err(parse_err(line, format!("unsupported version `{version}`")));
    }
    let field = field
        .strip_prefix("field=")
        .ok_or_else(|| parse_err(line, "missing field="))?;
    let field: FieldSpec = field.parse()?;
    let dims = dims
        .strip_prefix("dims=")
        .ok_or_else(|| parse_err(line, "missing dims="))?;
    Ok(Tensor3::zeros(field, parse_dims(dims, line)?))
}

/// Canonical document for `tensor`.
pub fn serialize(tensor: &Tensor3) -> String {
    let (a, b, c) = tensor.dims();
    let mut out = format!(
        "{MAGIC} {VERSION} field={} dims={a}x{b}x{c}\n",
        tensor.field()
    );
    for ((i, j, k), v) in tensor.entries() {
        writeln!(out, "{i} {j} {k} {v}").expect("writing to a String");
    }
    out
}

/// The built-in tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Det3,
    Perm3,
    /// `Σ_i e_i ⊗ e_i ⊗ e_i` in `K^d`.
    Unit(usize),
    /// `Σ_{i ≤ d-1} e_i ⊗ (S_i ⊕ S_i)` in `K^d ⊗ K^d ⊗ K^d`, even `d`.
    ToeplitzSum(usize),
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownBuiltin(s.to_string());
        match s {
            "det3" => return Ok(Builtin::Det3),
            "perm3" => return Ok(Builtin::Perm3),
            _ => {}
        }
        let (name, arg) = s.split_once(':').ok_or_else(unknown)?;
        let d: usize = arg.parse().map_err(|_| unknown())?;
        match name {
            "unit" if d >= 1 => Ok(Builtin::Unit(d)),
            "toeplitz_sum" if d >= 2 && d.is_multiple_of(2) => Ok(Builtin::ToeplitzSum(d)),
            "toeplitz_sum" => Err(Error::InvalidArgument(format!(
                "toeplitz_sum needs an even d >= 2, got {d}"
            ))),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Det3 => write!(f, "det3"),
            Builtin::Perm3 => write!(f, "perm3"),
            Builtin::Unit(d) => write!(f, "unit:{d}"),
            Builtin::ToeplitzSum(d) => write!(f, "toeplitz_sum:{d}"),
        }
    }
}

const S3: [([usize; 3], i64); 6] = [
    ([1, 2, 3], 1),
    ([1, 3, 2], -1),
    ([2, 1, 3], -1),
    ([2, 3, 1], 1),
    ([3, 1, 2], 1),
    ([3, 2, 1], -1),
];

impl Builtin {
    pub fn build(&self, field: FieldSpec) -> Tensor3 {
        match *self {
            Builtin::Det3 | Builtin::Perm3 => {
                let signed = *self == Builtin::Det3;
                let mut t = Tensor3::zeros(field, (3, 3, 3));
                for ([i, j, k], sgn) in S3 {
                    let v = Scalar::from_i64(field, if signed { sgn } else { 1 });
                    t.add_to(i, j, k, &v).expect("in range");
                }
                t
            }
            Builtin::Unit(d) => {
                let mut t = Tensor3::zeros(field, (d, d, d));
                for i in 1..=d {
                    t.set(i, i, i, Scalar::one(field)).expect("in range");
                }
                t
            }
            Builtin::ToeplitzSum(d) => {
                let m = d - 1;
                let basis = ToeplitzBasis::new(field, (m - 1) / 2);
                let mut t = Tensor3::zeros(field, (d, d, d));
                for (i, block) in basis.block_sums(2).iter().enumerate() {
                    for j in 0..d {
                        for k in 0..d {
                            let v = block.get(j, k);
                            if !v.is_zero() {
                                t.set(i + 1, j + 1, k + 1, v.clone()).expect("in range");
                            }
                        }
                    }
                }
                t
            }
        }
    }
}

/// Looks up a built-in by name and builds it over `field`.
pub fn builtin(name: &str, field: FieldSpec) -> Result<Tensor3> {
    Ok(name.parse::<Builtin>()?.build(field))
}
