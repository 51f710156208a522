//! Text forms: `Z^r x Z/n1 x Z/n2 ...` for groups and `(c1,...,ck)` for
//! elements.

use std::str::FromStr;

use num_bigint::BigInt;

use super::group::{Elem, Group};
use crate::error::GroupError;

impl FromStr for Group {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| GroupError::Syntax(format!("{why} in group descriptor `{s}`"));
        let text = s.trim();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        let mut free_rank = 0usize;
        let mut moduli = Vec::new();
        for factor in text.split('x').map(str::trim) {
            if factor == "Z" {
                if !moduli.is_empty() {
                    return Err(bad("free factor after torsion factor"));
                }
                free_rank += 1;
            } else if let Some(exp) = factor.strip_prefix("Z^") {
                if !moduli.is_empty() {
                    return Err(bad("free factor after torsion factor"));
                }
                free_rank += exp
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| bad("bad exponent"))?;
            } else if let Some(n) = factor.strip_prefix("Z/") {
                let n = n.trim().parse::<BigInt>().map_err(|_| bad("bad modulus"))?;
                moduli.push(n);
            } else {
                return Err(bad(&format!("unknown factor `{factor}`")));
            }
        }
        Group::new(free_rank, moduli)
    }
}

impl Group {
    /// Parses `(c1,...,ck)`; `()` is the only element of the trivial group.
    pub fn parse_elem(&self, s: &str) -> Result<Elem, GroupError> {
        let text = s.trim();
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GroupError::Syntax(format!("element `{text}` is not a tuple")))?;
        let coords = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<BigInt>()
                        .map_err(|_| GroupError::Syntax(format!("bad coordinate `{c}`")))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        self.elem(coords)
    }
}
