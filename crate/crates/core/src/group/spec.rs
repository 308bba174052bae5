//! Group-spec strings: catalog names (`Z4`, `S3`, `A4`, `D4`, `Q8`, products
//! joined by `x`) and explicit permutation generators (`perm:(1 2 3),(1 2)`).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::FiniteGroup;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 64;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0.get(i).map_or(i, |&x| x as usize)
    }

    pub fn padded(&self, degree: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(v.len() as u16..degree.max(v.len()) as u16);
        Perm(v)
    }

    /// (self ∘ other)(i) = self(other(i))
    pub fn compose(&self, other: &Perm) -> Perm {
        let d = self.degree().max(other.degree());
        Perm((0..d).map(|i| self.image(other.image(i)) as u16).collect())
    }

    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Perm {
        let mut p = Perm::identity(degree);
        for c in cycles {
            let cyc = Perm::cycle(degree, c);
            p = cyc.compose(&p);
        }
        p
    }

    fn cycle(degree: usize, points: &[usize]) -> Perm {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        for (k, &a) in points.iter().enumerate() {
            v[a] = points[(k + 1) % points.len()] as u16;
        }
        Perm(v)
    }

    fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        for i in 0..self.degree() {
            v[i + offset] = (self.image(i) + offset) as u16;
        }
        Perm(v)
    }

    /// Cycle notation with 1-based points; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push((x + 1).to_string());
                x = self.image(x);
            }
            out.push('(');
            out.push_str(&cyc.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

fn parse_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Parse `(1 2 3)(4 5)` into 0-based cycles.
pub(crate) fn parse_cycles(spec: &str, text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    if text == "()" || text.is_empty() {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        if !rest_trim.starts_with('(') {
            return Err(parse_err(spec, format!("expected `(` in `{text}`")));
        }
        let close = rest_trim
            .find(')')
            .ok_or_else(|| parse_err(spec, format!("unclosed cycle in `{text}`")))?;
        let inner = &rest_trim[1..close];
        let pts: Vec<usize> = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .map(|v| v - 1)
                    .ok_or_else(|| parse_err(spec, format!("bad point `{t}`")))
            })
            .collect::<Result<_>>()?;
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != pts.len() {
            return Err(parse_err(spec, format!("repeated point in `({inner})`")));
        }
        if !pts.is_empty() {
            cycles.push(pts);
        }
        rest = rest_trim[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Split a generator list on commas that are outside parentheses.
pub(crate) fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

pub(crate) fn parse_perm_list(spec: &str, text: &str) -> Result<Vec<Vec<Vec<usize>>>> {
    split_generators(text)
        .into_iter()
        .map(|g| parse_cycles(spec, g))
        .collect()
}

fn quaternion_generators() -> (usize, Vec<Perm>) {
    // units 1, i, j, k with sign; index = unit + 4*(sign is negative)
    let table = [[0usize, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let sign = [[1i8, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
    let left = |u: usize| {
        Perm(
            (0..8)
                .map(|x| {
                    let (v, neg) = (x % 4, x >= 4);
                    let w = table[u][v];
                    let s = sign[u][v] * if neg { -1 } else { 1 };
                    (w + if s < 0 { 4 } else { 0 }) as u16
                })
                .collect(),
        )
    };
    (8, vec![left(1), left(2)])
}

/// Degree and generators of one catalog factor.
fn catalog_factor(spec: &str, token: &str) -> Result<(usize, Vec<Perm>)> {
    let token = token.trim();
    if token == "Q8" {
        return Ok(quaternion_generators());
    }
    let (kind, num) = token.split_at(1.min(token.len()));
    let n: usize = num
        .parse()
        .map_err(|_| parse_err(spec, format!("unknown catalog group `{token}`")))?;
    if n == 0 {
        return Err(parse_err(spec, format!("`{token}` has size 0")));
    }
    let full = |d: usize| Perm::cycle(d, &(0..d).collect::<Vec<_>>());
    match kind {
        "Z" | "C" => Ok((n, if n > 1 { vec![full(n)] } else { vec![] })),
        "S" if n <= 5 => Ok((
            n,
            match n {
                1 => vec![],
                2 => vec![full(2)],
                _ => vec![full(n), Perm::cycle(n, &[0, 1])],
            },
        )),
        "A" if n <= 5 => Ok((
            n,
            (2..n).map(|k| Perm::cycle(n, &[0, 1, k])).collect(),
        )),
        "D" => Ok(match n {
            1 => (2, vec![full(2)]),
            2 => (4, vec![Perm::cycle(4, &[0, 1]), Perm::cycle(4, &[2, 3])]),
            _ => {
                let refl = Perm((0..n).map(|i| ((n - i) % n) as u16).collect());
                (n, vec![full(n), refl])
            }
        }),
        _ => Err(parse_err(spec, format!("unknown catalog group `{token}`"))),
    }
}

pub fn group_from_spec(spec: &str) -> Result<FiniteGroup> {
    group_from_spec_with_cap(spec, DEFAULT_ORDER_CAP)
}

/// Build a group from a spec string; elements are enumerated breadth-first
/// from the generators in spec order, so index 0 is the identity.
pub fn group_from_spec_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let trimmed = spec.trim();
    let (degree, gens) = if let Some(body) = trimmed.strip_prefix("perm:") {
        let cycles = parse_perm_list(spec, body)?;
        if cycles.is_empty() {
            return Err(parse_err(spec, "no generators"));
        }
        let degree = cycles
            .iter()
            .flatten()
            .flatten()
            .max()
            .map_or(1, |&m| m + 1);
        let gens = cycles.iter().map(|c| Perm::from_cycles(degree, c)).collect();
        (degree, gens)
    } else {
        if trimmed.is_empty() {
            return Err(parse_err(spec, "empty spec"));
        }
        let factors: Vec<(usize, Vec<Perm>)> = trimmed
            .split('x')
            .map(|t| catalog_factor(spec, t))
            .collect::<Result<_>>()?;
        let degree: usize = factors.iter().map(|(d, _)| d).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for (d, fg) in &factors {
            gens.extend(fg.iter().map(|p| p.padded(*d).shifted(offset, degree)));
            offset += d;
        }
        (degree, gens)
    };
    let mut gens: Vec<Perm> = gens;
    gens.retain(|g| *g != Perm::identity(degree));
    closure_group(trimmed, degree, gens, cap)
}

fn closure_group(spec: &str, degree: usize, gens: Vec<Perm>, cap: usize) -> Result<FiniteGroup> {
    let id = Perm::identity(degree);
    let mut index: HashMap<Perm, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elems = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = elems[x].compose(g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::OrderCap {
                        spec: spec.to_string(),
                        cap,
                    });
                }
                index.insert(y.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(y);
            }
        }
    }
    let cayley: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&a.compose(b)]).collect())
        .collect();
    let mut gen_idx: Vec<usize> = Vec::new();
    for g in &gens {
        let i = index[g];
        if !gen_idx.contains(&i) {
            gen_idx.push(i);
        }
    }
    let names = elems.iter().map(|p| p.cycle_string()).collect();
    Ok(FiniteGroup::from_cayley_unchecked(
        spec.to_string(),
        cayley,
        gen_idx,
        Some(names),
        Some(elems),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        for (spec, order) in [
            ("Z1", 1),
            ("Z2", 2),
            ("Z4", 4),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A3", 3),
            ("D4", 8),
            ("D3", 6),
            ("D2", 4),
            ("Q8", 8),
            ("Z2xZ2", 4),
            ("S3xZ2", 12),
        ] {
            let g = group_from_spec(spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            g.verify_axioms().unwrap();
            assert_eq!(g.closure(g.generators()).len(), order);
        }
    }

    #[test]
    fn perm_spec_matches_s3() {
        let g = group_from_spec("perm:(1 2 3),(1 2)").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn klein_four_has_exponent_two() {
        let g = group_from_spec("Z2xZ2").unwrap();
        assert_eq!(g.exponent(), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn q8_structure() {
        let g = group_from_spec("Q8").unwrap();
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 4);
        // unique involution
        assert_eq!(g.elements().filter(|&a| g.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn order_cap_enforced() {
        assert!(matches!(group_from_spec("S5"), Err(Error::Parse { .. }) | Err(Error::OrderCap { .. })));
        assert!(matches!(
            group_from_spec_with_cap("S4", 10),
            Err(Error::OrderCap { cap: 10, .. })
        ));
        assert!(matches!(group_from_spec("Z65"), Err(Error::OrderCap { .. })));
        assert_eq!(group_from_spec_with_cap("Z65", 100).unwrap().order(), 65);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "Y3", "S", "perm:(1 2", "perm:(1 1)", "perm:(0 1)", "S9"] {
            assert!(group_from_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn identity_first_and_names() {
        let g = group_from_spec("S3").unwrap();
        assert_eq!(g.element_name(0), "()");
        let p = Perm::from_cycles(3, &[vec![0, 1]]);
        let idx = g.find_perm(&p).unwrap();
        assert_eq!(g.element_name(idx), "(1 2)");
    }

    #[test]
    fn deterministic_ordering() {
        let a = group_from_spec("S4").unwrap();
        let b = group_from_spec("S4").unwrap();
        assert_eq!(a.cayley(), b.cayley());
    }
}
