use std::fmt;
use std::str::FromStr;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::lie::{AlgebraKind, SuperAlgebraData};
use crate::linalg::Mat;

/// Jordan type of an even nilpotent in the natural representation, one
/// `(even blocks | odd blocks)` pair per direct summand.
///
/// Text form: `jordan:2,1|1`, and `jordan:1|2;1|2` for a direct sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanType {
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
}

fn fmt_part(p: &[usize]) -> String {
    p.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .blocks
            .iter()
            .map(|(a, b)| format!("{}|{}", fmt_part(a), fmt_part(b)))
            .collect();
        write!(f, "jordan:{}", s.join(";"))
    }
}

impl FromStr for JordanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "bad nilpotent spec `{s}`; expected e.g. jordan:2,1|1"
            ))
        };
        let body = s.trim().strip_prefix("jordan:").ok_or_else(bad)?;
        let part = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().ok().filter(|&k| k > 0).ok_or_else(bad))
                .collect()
        };
        let blocks = body
            .split(';')
            .map(|b| {
                let (a, o) = b.split_once('|').ok_or_else(bad)?;
                Ok((part(a)?, part(o)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JordanType { blocks })
    }
}

/// `(m, n)` natural dimensions of each summand, in realization order.
pub fn natural_blocks(kind: &AlgebraKind) -> Option<Vec<(usize, usize)>> {
    match kind {
        AlgebraKind::Gl { m, n } | AlgebraKind::Sl { m, n } | AlgebraKind::Osp { m, n } => {
            Some(vec![(*m, *n)])
        }
        AlgebraKind::DirectSum(parts) => {
            let mut out = Vec::new();
            for k in parts {
                out.extend(natural_blocks(k)?);
            }
            Some(out)
        }
        AlgebraKind::Custom(_) => None,
    }
}

/// Partitions of `n` in non-increasing order, largest first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl JordanType {
    pub fn zero(kind: &AlgebraKind) -> Option<Self> {
        let blocks = natural_blocks(kind)?
            .into_iter()
            .map(|(m, n)| (vec![1; m], vec![1; n]))
            .collect();
        Some(JordanType { blocks })
    }

    /// One Jordan block per parity and summand: the regular nilpotent of the even part for gl.
    pub fn regular(kind: &AlgebraKind) -> Option<Self> {
        let single = |k: usize| if k == 0 { vec![] } else { vec![k] };
        let blocks = natural_blocks(kind)?
            .into_iter()
            .map(|(m, n)| (single(m), single(n)))
            .collect();
        Some(JordanType { blocks })
    }

    /// Every Jordan type of the natural representation. Not all lie in a given
    /// algebra; [`nilpotent_element`] rejects those that do not.
    pub fn enumerate(kind: &AlgebraKind) -> Option<Vec<Self>> {
        let mut acc = vec![JordanType { blocks: Vec::new() }];
        for (m, n) in natural_blocks(kind)? {
            let mut next = Vec::new();
            for jt in &acc {
                for a in partitions(m) {
                    for b in partitions(n) {
                        let mut blocks = jt.blocks.clone();
                        blocks.push((a.clone(), b));
                        next.push(JordanType { blocks });
                    }
                }
            }
            acc = next;
        }
        Some(acc)
    }

    /// Realization matrix: basis vector `o + t + 1` maps to `o + t` inside each block.
    pub fn matrix<F: Field>(&self, f: &F, dims: &[(usize, usize)]) -> Result<Mat<F>> {
        if dims.len() != self.blocks.len() {
            return Err(Error::Config(format!(
                "{self} has {} summands, the algebra {}",
                self.blocks.len(),
                dims.len()
            )));
        }
        let total: usize = dims.iter().map(|(m, n)| m + n).sum();
        let mut out = Mat::zeros(f.clone(), total, total);
        let mut offset = 0;
        for ((even, odd), &(m, n)) in self.blocks.iter().zip(dims) {
            if even.iter().sum::<usize>() != m || odd.iter().sum::<usize>() != n {
                return Err(Error::Config(format!(
                    "{self} does not partition ({m}|{n})"
                )));
            }
            for part in [even, odd] {
                for &k in part {
                    for t in 0..k - 1 {
                        out.set(offset + t, offset + t + 1, f.one());
                    }
                    offset += k;
                }
            }
        }
        Ok(out)
    }
}

/// The nilpotent element of the given Jordan type, in algebra coordinates.
pub fn nilpotent_element<F: Field>(
    alg: &SuperAlgebraData<F>,
    jt: &JordanType,
) -> Result<Vec<F::Elem>> {
    let dims = natural_blocks(&alg.kind).ok_or_else(|| {
        Error::Unsupported(format!(
            "Jordan types need a catalog algebra, not {}",
            alg.kind
        ))
    })?;
    let m = jt.matrix(&alg.field, &dims)?;
    alg.coords_of_matrix(&m)
        .ok_or_else(|| Error::Unsupported(format!("{jt} is not an element of {}", alg.kind)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_q;

    #[test]
    fn parse_round_trip() {
        for s in ["jordan:2,1|1", "jordan:1|2;1|2", "jordan:2|"] {
            assert_eq!(s.parse::<JordanType>().unwrap().to_string(), s);
        }
        assert!("2,1|1".parse::<JordanType>().is_err());
        assert!("jordan:0|1".parse::<JordanType>().is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..7).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn elements_in_catalog() {
        let g = build_q(&"gl(2|1)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&g, &"jordan:2|1".parse().unwrap()).unwrap();
        assert_eq!(
            e,
            g.unit(g.space.labels.iter().position(|l| l == "E12").unwrap())
        );

        let o = build_q(&"osp(1|2)".parse().unwrap()).unwrap();
        let e = nilpotent_element(&o, &"jordan:1|2".parse().unwrap()).unwrap();
        assert_eq!(
            e,
            o.unit(o.space.labels.iter().position(|l| l == "E23").unwrap())
        );
        assert_eq!(JordanType::enumerate(&o.kind).unwrap().len(), 2);
        assert!(nilpotent_element(&o, &"jordan:1|3".parse().unwrap()).is_err());
    }
}
