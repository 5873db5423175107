//! Concrete computable models of finitely generated groups.
//!
//! Every group comes with a fixed symmetric generating set and a canonical
//! byte encoding for its elements, so that element equality is byte equality
//! and sets of elements can be hashed or ordered without any normal-form
//! search. The supported families are the ones for which a canonical form is
//! cheap to maintain:
//!
//! * `Z:<d>` — free abelian of rank `d`, elements are integer vectors;
//! * `free:<k>` — free of rank `k`, elements are freely reduced words;
//! * `heisenberg` — integer Heisenberg group, elements are triples
//!   `(x, y, z)` with `(x,y,z)·(x',y',z') = (x+x', y+y', z+z'+x·y')`;
//! * `cyclic:<n>` / `dihedral:<n>` — rotation index plus reflection flag;
//! * `sym:<n>` — symmetric group on `n` points, elements are image arrays.

use std::fmt;

use thiserror::Error;

/// Errors from parsing group specs or operating on elements.
#[derive(Debug, Error)]
pub enum GroupError {
    #[error("cannot parse group spec: offending token {token:?} ({reason})")]
    Parse { token: String, reason: String },
    #[error("group parameter out of range: {0}")]
    Domain(String),
    #[error("element encoding not valid for {group}: {reason}")]
    Encoding { group: String, reason: String },
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("integer overflow in group operation")]
    Overflow,
}

/// A group element in canonical encoded form.
///
/// Two elements of the same group are equal iff their encodings are
/// byte-identical; the derived `Ord` (lexicographic on bytes) is the
/// tie-breaking order used everywhere a deterministic choice is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Box<[u8]>);

impl Element {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    fn from_vec(v: Vec<u8>) -> Self {
        Element(v.into_boxed_slice())
    }

    /// Rebuilds an element from raw bytes, e.g. when loading a cached table.
    /// The caller is expected to validate it against the intended group.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Element(bytes.to_vec().into_boxed_slice())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(")?;
        for b in self.0.iter() {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// The supported group families with their rank/order parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    FreeAbelian(u32),
    Free(u32),
    Heisenberg,
    Cyclic(u64),
    Dihedral(u64),
    SymmetricPerm(u32),
}

/// A generator together with its display label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub element: Element,
}

/// An ordered symmetric generating set.
///
/// The order is fixed per family and acts as the global tie-breaker wherever
/// a minimum over generators is taken (first listed wins). The set is closed
/// under inversion, contains no identity, and holds no duplicate elements.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    gens: Vec<Generator>,
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.label.as_str())
    }

    pub fn by_label(&self, label: &str) -> Option<&Element> {
        self.gens
            .iter()
            .find(|g| g.label == label)
            .map(|g| &g.element)
    }
}

/// A parsed group specification; the handle through which all group
/// operations run.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    family: Family,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({})", self.render())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

const MAX_ABELIAN_RANK: u32 = 32;
const MAX_FREE_RANK: u32 = 26;
const MAX_CYCLIC_ORDER: u64 = 1 << 31;
const MAX_SYM_POINTS: u32 = 20;

fn parse_param<T: std::str::FromStr>(text: &str, token: &str) -> Result<T, GroupError> {
    token.parse().map_err(|_| GroupError::Parse {
        token: token.to_string(),
        reason: format!("expected an integer parameter in {text:?}"),
    })
}

fn require_param<'a>(
    text: &str,
    head: &str,
    param: Option<&'a str>,
) -> Result<&'a str, GroupError> {
    param.ok_or_else(|| GroupError::Parse {
        token: text.to_string(),
        reason: format!("{head:?} requires a :<parameter>"),
    })
}

impl GroupSpec {
    pub fn new(family: Family) -> Result<Self, GroupError> {
        match family {
            Family::FreeAbelian(d) if !(1..=MAX_ABELIAN_RANK).contains(&d) => Err(
                GroupError::Domain(format!("Z:<d> needs 1 <= d <= {MAX_ABELIAN_RANK}, got {d}")),
            ),
            Family::Free(k) if !(1..=MAX_FREE_RANK).contains(&k) => Err(GroupError::Domain(
                format!("free:<k> needs 1 <= k <= {MAX_FREE_RANK}, got {k}"),
            )),
            Family::Cyclic(n) if !(1..=MAX_CYCLIC_ORDER).contains(&n) => Err(GroupError::Domain(
                format!("cyclic:<n> needs 1 <= n <= {MAX_CYCLIC_ORDER}, got {n}"),
            )),
            Family::Dihedral(n) if !(2..=MAX_CYCLIC_ORDER).contains(&n) => Err(GroupError::Domain(
                format!("dihedral:<n> needs 2 <= n <= {MAX_CYCLIC_ORDER}, got {n}"),
            )),
            Family::SymmetricPerm(n) if !(2..=MAX_SYM_POINTS).contains(&n) => {
                Err(GroupError::Domain(format!(
                    "sym:<n> needs 2 <= n <= {MAX_SYM_POINTS}, got {n}"
                )))
            }
            _ => Ok(GroupSpec { family }),
        }
    }

    /// Parses the `Z:<d> | free:<k> | heisenberg | cyclic:<n> | dihedral:<n>
    /// | sym:<n>` grammar.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(GroupError::Parse {
                token: String::new(),
                reason: "empty group spec".into(),
            });
        }
        let (head, param) = match text.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (text, None),
        };
        let family = match head {
            "Z" => Family::FreeAbelian(parse_param(text, require_param(text, head, param)?)?),
            "free" => Family::Free(parse_param(text, require_param(text, head, param)?)?),
            "heisenberg" => {
                if param.is_some() {
                    return Err(GroupError::Parse {
                        token: text.to_string(),
                        reason: "heisenberg takes no parameter".into(),
                    });
                }
                Family::Heisenberg
            }
            "cyclic" => Family::Cyclic(parse_param(text, require_param(text, head, param)?)?),
            "dihedral" => Family::Dihedral(parse_param(text, require_param(text, head, param)?)?),
            "sym" => Family::SymmetricPerm(parse_param(text, require_param(text, head, param)?)?),
            other => {
                return Err(GroupError::Parse {
                    token: other.to_string(),
                    reason: "expected one of Z, free, heisenberg, cyclic, dihedral, sym".into(),
                })
            }
        };
        GroupSpec::new(family)
    }

    /// Renders the spec back into the grammar accepted by [`GroupSpec::parse`].
    pub fn render(&self) -> String {
        match self.family {
            Family::FreeAbelian(d) => format!("Z:{d}"),
            Family::Free(k) => format!("free:{k}"),
            Family::Heisenberg => "heisenberg".into(),
            Family::Cyclic(n) => format!("cyclic:{n}"),
            Family::Dihedral(n) => format!("dihedral:{n}"),
            Family::SymmetricPerm(n) => format!("sym:{n}"),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Group order, or `None` for the infinite families.
    pub fn order(&self) -> Option<u64> {
        match self.family {
            Family::FreeAbelian(_) | Family::Free(_) | Family::Heisenberg => None,
            Family::Cyclic(n) => Some(n),
            Family::Dihedral(n) => Some(2 * n),
            Family::SymmetricPerm(n) => Some((1..=n as u64).product()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> Element {
        match self.family {
            Family::FreeAbelian(d) => encode_ints(&vec![0i64; d as usize]),
            Family::Free(_) => Element::from_vec(Vec::new()),
            Family::Heisenberg => encode_ints(&[0, 0, 0]),
            Family::Cyclic(_) => encode_ints(&[0]),
            Family::Dihedral(_) => dihedral_encode(0, 0),
            Family::SymmetricPerm(n) => Element::from_vec((0..n as u8).collect()),
        }
    }

    /// Checks that `e` is a canonical encoding of an element of this group.
    pub fn validate(&self, e: &Element) -> Result<(), GroupError> {
        let bad = |reason: &str| {
            Err(GroupError::Encoding {
                group: self.render(),
                reason: reason.to_string(),
            })
        };
        match self.family {
            Family::FreeAbelian(d) => {
                if e.bytes().len() != 8 * d as usize {
                    return bad("wrong byte length for an integer vector");
                }
            }
            Family::Free(k) => {
                let w = e.bytes();
                if w.iter().any(|&c| c as u32 >= 2 * k) {
                    return bad("letter out of range for this rank");
                }
                if w.windows(2).any(|p| p[0] ^ 1 == p[1]) {
                    return bad("word is not freely reduced");
                }
            }
            Family::Heisenberg => {
                if e.bytes().len() != 24 {
                    return bad("wrong byte length for a Heisenberg triple");
                }
            }
            Family::Cyclic(n) => {
                if e.bytes().len() != 8 {
                    return bad("wrong byte length for a rotation index");
                }
                let r = decode_ints(e)[0];
                if r < 0 || r as u64 >= n {
                    return bad("rotation index out of range");
                }
            }
            Family::Dihedral(n) => {
                if e.bytes().len() != 9 {
                    return bad("wrong byte length for a dihedral element");
                }
                let (r, f) = dihedral_decode(e);
                if r < 0 || r as u64 >= n {
                    return bad("rotation index out of range");
                }
                if f > 1 {
                    return bad("reflection flag must be 0 or 1");
                }
            }
            Family::SymmetricPerm(n) => {
                let img = e.bytes();
                if img.len() != n as usize {
                    return bad("wrong image array length");
                }
                let mut seen = vec![false; n as usize];
                for &i in img {
                    if i as u32 >= n || seen[i as usize] {
                        return bad("image array is not a permutation");
                    }
                    seen[i as usize] = true;
                }
            }
        }
        Ok(())
    }

    /// Canonical encoding of `a · b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        self.validate(a)?;
        self.validate(b)?;
        self.mul_unchecked(a, b)
    }

    /// Multiplication without re-validating the inputs; used in enumeration
    /// loops where validity is maintained by construction.
    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        match self.family {
            Family::FreeAbelian(_) => {
                let (u, v) = (decode_ints(a), decode_ints(b));
                let sum: Result<Vec<i64>, _> = u
                    .iter()
                    .zip(v.iter())
                    .map(|(x, y)| x.checked_add(*y).ok_or(GroupError::Overflow))
                    .collect();
                Ok(encode_ints(&sum?))
            }
            Family::Free(_) => {
                let (u, v) = (a.bytes(), b.bytes());
                let mut cut = 0;
                while cut < u.len() && cut < v.len() && u[u.len() - 1 - cut] ^ 1 == v[cut] {
                    cut += 1;
                }
                let mut w = Vec::with_capacity(u.len() + v.len() - 2 * cut);
                w.extend_from_slice(&u[..u.len() - cut]);
                w.extend_from_slice(&v[cut..]);
                Ok(Element::from_vec(w))
            }
            Family::Heisenberg => {
                let (u, v) = (decode_ints(a), decode_ints(b));
                let x = u[0].checked_add(v[0]).ok_or(GroupError::Overflow)?;
                let y = u[1].checked_add(v[1]).ok_or(GroupError::Overflow)?;
                let xy = u[0].checked_mul(v[1]).ok_or(GroupError::Overflow)?;
                let z = u[2]
                    .checked_add(v[2])
                    .and_then(|s| s.checked_add(xy))
                    .ok_or(GroupError::Overflow)?;
                Ok(encode_ints(&[x, y, z]))
            }
            Family::Cyclic(n) => {
                let r = (decode_ints(a)[0] + decode_ints(b)[0]).rem_euclid(n as i64);
                Ok(encode_ints(&[r]))
            }
            Family::Dihedral(n) => {
                let (r1, f1) = dihedral_decode(a);
                let (r2, f2) = dihedral_decode(b);
                // rho^r1 sigma^f1 · rho^r2 sigma^f2, with sigma rho sigma = rho^-1
                let r = if f1 == 0 { r1 + r2 } else { r1 - r2 };
                Ok(dihedral_encode(r.rem_euclid(n as i64), f1 ^ f2))
            }
            Family::SymmetricPerm(_) => {
                let (p, q) = (a.bytes(), b.bytes());
                // (p·q)(i) = p(q(i)): apply q first.
                Ok(Element::from_vec(
                    q.iter().map(|&i| p[i as usize]).collect(),
                ))
            }
        }
    }

    pub fn inverse(&self, a: &Element) -> Result<Element, GroupError> {
        self.validate(a)?;
        self.inv_unchecked(a)
    }

    pub(crate) fn inv_unchecked(&self, a: &Element) -> Result<Element, GroupError> {
        match self.family {
            Family::FreeAbelian(_) => {
                let neg: Result<Vec<i64>, _> = decode_ints(a)
                    .iter()
                    .map(|x| x.checked_neg().ok_or(GroupError::Overflow))
                    .collect();
                Ok(encode_ints(&neg?))
            }
            Family::Free(_) => Ok(Element::from_vec(
                a.bytes().iter().rev().map(|&c| c ^ 1).collect(),
            )),
            Family::Heisenberg => {
                let u = decode_ints(a);
                // (x,y,z)^-1 = (-x,-y,xy-z)
                let xy = u[0].checked_mul(u[1]).ok_or(GroupError::Overflow)?;
                let z = xy.checked_sub(u[2]).ok_or(GroupError::Overflow)?;
                Ok(encode_ints(&[-u[0], -u[1], z]))
            }
            Family::Cyclic(n) => {
                let r = (-decode_ints(a)[0]).rem_euclid(n as i64);
                Ok(encode_ints(&[r]))
            }
            Family::Dihedral(n) => {
                let (r, f) = dihedral_decode(a);
                // (rho^r)^-1 = rho^-r; (rho^r sigma)^-1 = rho^r sigma
                let r = if f == 0 { (-r).rem_euclid(n as i64) } else { r };
                Ok(dihedral_encode(r, f))
            }
            Family::SymmetricPerm(n) => {
                let p = a.bytes();
                let mut inv = vec![0u8; n as usize];
                for (i, &pi) in p.iter().enumerate() {
                    inv[pi as usize] = i as u8;
                }
                Ok(Element::from_vec(inv))
            }
        }
    }

    /// The standard generating set of the family, in its fixed order.
    pub fn generating_set(&self) -> GeneratingSet {
        let mut gens: Vec<Generator> = Vec::new();
        let mut push = |label: String, element: Element| {
            if element == self.identity() {
                return;
            }
            if gens.iter().any(|g| g.element == element) {
                return;
            }
            gens.push(Generator { label, element });
        };
        match self.family {
            Family::FreeAbelian(d) => {
                for i in 0..d as usize {
                    let mut v = vec![0i64; d as usize];
                    let name = axis_name(i, d);
                    v[i] = 1;
                    push(format!("+{name}"), encode_ints(&v));
                    v[i] = -1;
                    push(format!("-{name}"), encode_ints(&v));
                }
            }
            Family::Free(k) => {
                for i in 0..k as u8 {
                    let lower = (b'a' + i) as char;
                    let upper = (b'A' + i) as char;
                    push(lower.to_string(), Element::from_vec(vec![2 * i]));
                    push(upper.to_string(), Element::from_vec(vec![2 * i + 1]));
                }
            }
            Family::Heisenberg => {
                push("a".into(), encode_ints(&[1, 0, 0]));
                push("A".into(), encode_ints(&[-1, 0, 0]));
                push("b".into(), encode_ints(&[0, 1, 0]));
                push("B".into(), encode_ints(&[0, -1, 0]));
            }
            Family::Cyclic(n) => {
                push("r".into(), encode_ints(&[1 % n as i64]));
                push("R".into(), encode_ints(&[(n as i64 - 1) % n as i64]));
            }
            Family::Dihedral(n) => {
                push("r".into(), dihedral_encode(1, 0));
                push("R".into(), dihedral_encode(n as i64 - 1, 0));
                push("s".into(), dihedral_encode(0, 1));
            }
            Family::SymmetricPerm(n) => {
                for i in 0..(n - 1) as u8 {
                    let mut img: Vec<u8> = (0..n as u8).collect();
                    img.swap(i as usize, i as usize + 1);
                    push(format!("s{}", i + 1), Element::from_vec(img));
                }
            }
        }
        GeneratingSet { gens }
    }

    /// Builds the product of a generator word, read left to right.
    ///
    /// A word `[s_n, ..., s_1]` evaluates to `s_n · s_{n-1} ⋯ s_1`: the first
    /// label in the list is the outermost (last applied) factor, so chains
    /// `y_k = s_k · y_{k-1}` grow by consuming the list from its tail.
    pub fn word_to_element(&self, word: &[impl AsRef<str>]) -> Result<Element, GroupError> {
        let gens = self.generating_set();
        let mut acc = self.identity();
        for label in word {
            let s = gens
                .by_label(label.as_ref())
                .ok_or_else(|| GroupError::UnknownLabel(label.as_ref().to_string()))?;
            acc = self.mul_unchecked(&acc, s)?;
        }
        Ok(acc)
    }

    /// Parses an element literal in the family's coordinate syntax.
    ///
    /// * lattice families: `(1,-2)` / `(x,y,z)`;
    /// * free groups: a word such as `abA`, or `e` for the identity;
    /// * cyclic: a bare rotation index `3`;
    /// * dihedral: `(r,f)` with reflection flag `f ∈ {0,1}`;
    /// * symmetric: an image array `[1,0,2]`.
    pub fn element_from_str(&self, s: &str) -> Result<Element, GroupError> {
        let s = s.trim();
        let bad = |reason: String| GroupError::Encoding {
            group: self.render(),
            reason,
        };
        let parse_tuple = |s: &str, open: char, close: char| -> Result<Vec<i64>, GroupError> {
            let inner = s
                .strip_prefix(open)
                .and_then(|t| t.strip_suffix(close))
                .ok_or_else(|| bad(format!("expected {open}...{close}, got {s:?}")))?;
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| bad(format!("bad integer {t:?} in {s:?}")))
                })
                .collect()
        };
        let e = match self.family {
            Family::FreeAbelian(d) => {
                let v = parse_tuple(s, '(', ')')?;
                if v.len() != d as usize {
                    return Err(bad(format!("expected {d} coordinates, got {}", v.len())));
                }
                encode_ints(&v)
            }
            Family::Heisenberg => {
                let v = parse_tuple(s, '(', ')')?;
                if v.len() != 3 {
                    return Err(bad(format!("expected 3 coordinates, got {}", v.len())));
                }
                encode_ints(&v)
            }
            Family::Free(_) => {
                if s == "e" {
                    self.identity()
                } else {
                    let word: Vec<String> = s.chars().map(|c| c.to_string()).collect();
                    self.word_to_element(&word)
                        .map_err(|_| bad(format!("bad free-group word {s:?}")))?
                }
            }
            Family::Cyclic(n) => {
                let r: i64 = s.parse().map_err(|_| bad(format!("bad index {s:?}")))?;
                encode_ints(&[r.rem_euclid(n as i64)])
            }
            Family::Dihedral(n) => {
                let v = parse_tuple(s, '(', ')')?;
                if v.len() != 2 || !(0..=1).contains(&v[1]) {
                    return Err(bad(format!("expected (rotation,flag) with flag 0|1: {s:?}")));
                }
                dihedral_encode(v[0].rem_euclid(n as i64), v[1] as u8)
            }
            Family::SymmetricPerm(_) => {
                let v = parse_tuple(s, '[', ']')?;
                let img: Vec<u8> = v
                    .iter()
                    .map(|&x| {
                        u8::try_from(x).map_err(|_| bad(format!("bad image value {x} in {s:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                Element::from_vec(img)
            }
        };
        self.validate(&e)?;
        Ok(e)
    }

    /// Renders an element in the syntax accepted by
    /// [`GroupSpec::element_from_str`].
    pub fn element_to_string(&self, e: &Element) -> String {
        match self.family {
            Family::FreeAbelian(_) | Family::Heisenberg => {
                let v = decode_ints(e);
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            Family::Free(_) => {
                if e.bytes().is_empty() {
                    "e".to_string()
                } else {
                    e.bytes()
                        .iter()
                        .map(|&c| {
                            let base = if c % 2 == 0 { b'a' } else { b'A' };
                            (base + c / 2) as char
                        })
                        .collect()
                }
            }
            Family::Cyclic(_) => decode_ints(e)[0].to_string(),
            Family::Dihedral(_) => {
                let (r, f) = dihedral_decode(e);
                format!("({r},{f})")
            }
            Family::SymmetricPerm(_) => {
                let parts: Vec<String> = e.bytes().iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

fn axis_name(i: usize, d: u32) -> String {
    if d <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn encode_ints(v: &[i64]) -> Element {
    let mut bytes = Vec::with_capacity(8 * v.len());
    for x in v {
        bytes.extend_from_slice(&x.to_le_bytes());
    }
    Element::from_vec(bytes)
}

fn decode_ints(e: &Element) -> Vec<i64> {
    e.bytes()
        .chunks_exact(8)
        .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
        .collect()
}

fn dihedral_encode(r: i64, f: u8) -> Element {
    let mut bytes = Vec::with_capacity(9);
    bytes.extend_from_slice(&r.to_le_bytes());
    bytes.push(f);
    Element::from_vec(bytes)
}

fn dihedral_decode(e: &Element) -> (i64, u8) {
    let r = i64::from_le_bytes(e.bytes()[..8].try_into().unwrap());
    (r, e.bytes()[8])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["Z:2", "free:2", "heisenberg", "cyclic:5", "dihedral:4", "sym:4", "Z:1"] {
            assert_eq!(g(s).render(), s);
        }
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert!(matches!(GroupSpec::parse("Z:0"), Err(GroupError::Domain(_))));
        assert!(matches!(GroupSpec::parse("free:0"), Err(GroupError::Domain(_))));
        assert!(matches!(GroupSpec::parse("dihedral:1"), Err(GroupError::Domain(_))));
        assert!(matches!(GroupSpec::parse("sym:1"), Err(GroupError::Domain(_))));
        let err = GroupSpec::parse("foo").unwrap_err();
        assert!(err.to_string().contains("foo"), "should name the token: {err}");
        assert!(matches!(GroupSpec::parse("Z:x"), Err(GroupError::Parse { .. })));
        assert!(matches!(GroupSpec::parse(""), Err(GroupError::Parse { .. })));
    }

    #[test]
    fn default_generator_counts() {
        assert_eq!(g("Z:2").generating_set().len(), 4);
        assert_eq!(g("free:2").generating_set().len(), 4);
        assert_eq!(g("heisenberg").generating_set().len(), 4);
        assert_eq!(g("cyclic:5").generating_set().len(), 2);
        assert_eq!(g("cyclic:2").generating_set().len(), 1); // r = r^-1
        assert_eq!(g("cyclic:1").generating_set().len(), 0); // trivial group
        assert_eq!(g("dihedral:4").generating_set().len(), 3);
        assert_eq!(g("sym:4").generating_set().len(), 3);
    }

    #[test]
    fn generating_sets_are_symmetric_without_identity() {
        for s in ["Z:3", "free:2", "heisenberg", "cyclic:5", "cyclic:2", "dihedral:4", "sym:5"] {
            let spec = g(s);
            let gens = spec.generating_set();
            for gen in gens.iter() {
                assert_ne!(gen.element, spec.identity(), "{s}: identity in S");
                let inv = spec.inverse(&gen.element).unwrap();
                assert!(
                    gens.iter().any(|h| h.element == inv),
                    "{s}: inverse of {} missing",
                    gen.label
                );
            }
        }
    }

    #[test]
    fn heisenberg_group_law() {
        let h = g("heisenberg");
        let a = h.element_from_str("(1,0,0)").unwrap();
        let b = h.element_from_str("(0,1,0)").unwrap();
        assert_eq!(h.element_to_string(&h.multiply(&a, &b).unwrap()), "(1,1,1)");
        let x = h.element_from_str("(1,1,1)").unwrap();
        let xinv = h.inverse(&x).unwrap();
        assert_eq!(h.element_to_string(&xinv), "(-1,-1,0)");
        assert_eq!(h.multiply(&x, &xinv).unwrap(), h.identity());
        // commutator a b a^-1 b^-1 = (0,0,1)
        let comm = h.word_to_element(&["a", "b", "A", "B"]).unwrap();
        assert_eq!(h.element_to_string(&comm), "(0,0,1)");
    }

    #[test]
    fn free_reduction() {
        let f = g("free:2");
        let ab_inv = f.element_from_str("aB").unwrap();
        let ba = f.element_from_str("ba").unwrap();
        let prod = f.multiply(&ab_inv, &ba).unwrap();
        assert_eq!(f.element_to_string(&prod), "aa");
        // (ab)^-1 = b^-1 a^-1
        let ab = f.element_from_str("ab").unwrap();
        assert_eq!(f.element_to_string(&f.inverse(&ab).unwrap()), "BA");
        assert_eq!(f.word_to_element(&["a", "A"]).unwrap(), f.identity());
    }

    #[test]
    fn abelian_vector_arithmetic() {
        let z2 = g("Z:2");
        let a = z2.element_from_str("(1,2)").unwrap();
        let b = z2.element_from_str("(-1,3)").unwrap();
        assert_eq!(z2.element_to_string(&z2.multiply(&a, &b).unwrap()), "(0,5)");
        let c = z2.element_from_str("(3,-4)").unwrap();
        assert_eq!(z2.element_to_string(&z2.inverse(&c).unwrap()), "(-3,4)");
        let w = z2.word_to_element(&["+x", "+x", "+y"]).unwrap();
        assert_eq!(z2.element_to_string(&w), "(2,1)");
    }

    #[test]
    fn heisenberg_word_order_applies_leftmost_last() {
        let h = g("heisenberg");
        // word [b, a] is the product b·a
        let w = h.word_to_element(&["b", "a"]).unwrap();
        assert_eq!(h.element_to_string(&w), "(1,1,0)");
        let w2 = h.word_to_element(&["a", "b"]).unwrap();
        assert_eq!(h.element_to_string(&w2), "(1,1,1)");
    }

    #[test]
    fn word_rejects_unknown_label() {
        let z2 = g("Z:2");
        assert!(matches!(
            z2.word_to_element(&["+x", "+q"]),
            Err(GroupError::UnknownLabel(_))
        ));
    }

    #[test]
    fn dihedral_relations() {
        let d4 = g("dihedral:4");
        let r = d4.element_from_str("(1,0)").unwrap();
        let s = d4.element_from_str("(0,1)").unwrap();
        // s r s = r^-1
        let srs = d4
            .multiply(&d4.multiply(&s, &r).unwrap(), &s)
            .unwrap();
        assert_eq!(srs, d4.inverse(&r).unwrap());
        // s^2 = e, r^4 = e
        assert_eq!(d4.multiply(&s, &s).unwrap(), d4.identity());
        let r4 = d4.word_to_element(&["r", "r", "r", "r"]).unwrap();
        assert_eq!(r4, d4.identity());
    }

    #[test]
    fn permutation_compose_and_invert() {
        let s4 = g("sym:4");
        let p = s4.element_from_str("[1,2,3,0]").unwrap();
        let q = s4.element_from_str("[1,0,2,3]").unwrap();
        // (p·q)(i) = p(q(i))
        let pq = s4.multiply(&p, &q).unwrap();
        assert_eq!(s4.element_to_string(&pq), "[2,1,3,0]");
        let pinv = s4.inverse(&p).unwrap();
        assert_eq!(s4.multiply(&p, &pinv).unwrap(), s4.identity());
        assert!(s4.element_from_str("[0,0,1,2]").is_err());
    }

    #[test]
    fn validate_catches_mismatched_encodings() {
        let z2 = g("Z:2");
        let z3 = g("Z:3");
        let e = z3.identity();
        assert!(matches!(z2.validate(&e), Err(GroupError::Encoding { .. })));
        let f = g("free:1");
        let b = g("free:2").element_from_str("b").unwrap();
        assert!(f.validate(&b).is_err());
        let unreduced = Element::from_bytes(&[0, 1]);
        assert!(g("free:2").validate(&unreduced).is_err());
    }

    #[test]
    fn element_literals_round_trip() {
        let cases = [
            ("Z:2", "(4,-7)"),
            ("heisenberg", "(1,-2,3)"),
            ("free:2", "abAB"),
            ("free:2", "e"),
            ("cyclic:5", "3"),
            ("dihedral:4", "(3,1)"),
            ("sym:4", "[2,0,3,1]"),
        ];
        for (spec, lit) in cases {
            let spec = g(spec);
            let e = spec.element_from_str(lit).unwrap();
            assert_eq!(spec.element_to_string(&e), lit);
        }
    }

    #[test]
    fn associativity_sampled() {
        // Deterministic pseudo-random words per family; exact encoding equality.
        for s in ["Z:2", "free:2", "heisenberg", "cyclic:7", "dihedral:5", "sym:4"] {
            let spec = g(s);
            let gens: Vec<Element> = spec.generating_set().iter().map(|g| g.element.clone()).collect();
            if gens.is_empty() {
                continue;
            }
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize
            };
            let mut rand_elem = || {
                let mut e = spec.identity();
                for _ in 0..(next() % 6) {
                    let s = &gens[next() % gens.len()];
                    e = spec.mul_unchecked(&e, s).unwrap();
                }
                e
            };
            for _ in 0..50 {
                let (a, b, c) = (rand_elem(), rand_elem(), rand_elem());
                let left = spec.multiply(&spec.multiply(&a, &b).unwrap(), &c).unwrap();
                let right = spec.multiply(&a, &spec.multiply(&b, &c).unwrap()).unwrap();
                assert_eq!(left, right, "associativity failed in {s}");
                // products stay canonical
                spec.validate(&left).unwrap();
                spec.validate(&spec.inverse(&left).unwrap()).unwrap();
            }
        }
    }
}
