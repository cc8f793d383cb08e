use std::fmt;

use crate::error::{Error, Result};

/// Permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = i;
        }
        Permutation(out)
    }

    /// Disjoint-cycle notation on symbols `1..=n`; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i];
            }
            out.push('(');
            out.push_str(&cyc.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

/// Parses cycle notation such as `(1 2)(3 4 5)` on symbols `1..=degree`.
/// Commas are accepted as separators inside a cycle. Cycles are composed
/// right to left.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
    let mut perm = Permutation::identity(degree);
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in cycle notation {s:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
        let body = &rest[1..close];
        let mut symbols = vec![];
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad symbol {tok:?} in {s:?}")))?;
            if v == 0 || v > degree {
                return Err(Error::Parse(format!(
                    "symbol {v} outside 1..={degree} in {s:?}"
                )));
            }
            if symbols.contains(&(v - 1)) {
                return Err(Error::Parse(format!("repeated symbol {v} in {s:?}")));
            }
            symbols.push(v - 1);
        }
        let mut img: Vec<usize> = (0..degree).collect();
        for (k, &a) in symbols.iter().enumerate() {
            img[a] = symbols[(k + 1) % symbols.len()];
        }
        let cyc = Permutation(img);
        perm = perm.compose(&cyc);
        rest = rest[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Largest symbol mentioned in a cycle string, for inferring the degree.
pub(crate) fn max_symbol(s: &str) -> usize {
    s.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.to_cycle_string(), "(1 2 3)");
        assert_eq!(parse_cycles("()", 2).unwrap(), Permutation::identity(2));
        assert_eq!(max_symbol("(1 5)(2 3)"), 5);
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(2 3)", 3).unwrap();
        // (1 2)(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(a.compose(&b), parse_cycles("(1 2)(2 3)", 3).unwrap());
        assert_eq!(a.compose(&b).to_cycle_string(), "(1 2 3)");
        assert_eq!(a.compose(&b).compose(&a.compose(&b).inverse()), Permutation::identity(3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("(1 1)", 3).is_err());
        assert!(parse_cycles("1 2", 3).is_err());
    }
}
