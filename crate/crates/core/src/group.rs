//! Concrete finite groups: symmetric, cyclic, dihedral and direct products.
//!
//! Composition convention, used everywhere in the crate: `(a·b)(x) = a(b(x))`,
//! i.e. the right factor acts first. Elements are plain values; the group an
//! element belongs to is recoverable from its payload, so mixing elements of
//! different groups is detected at multiplication time.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of group elements materialized by dense paths.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GroupSpec {
    Symmetric { n: usize },
    Cyclic { n: usize },
    Dihedral { n: usize },
    Product { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    pub fn symmetric(n: usize) -> Self {
        GroupSpec::Symmetric { n }
    }

    pub fn cyclic(n: usize) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn dihedral(n: usize) -> Self {
        GroupSpec::Dihedral { n }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Product { factors }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Symmetric { n } | GroupSpec::Cyclic { n } if *n == 0 => {
                Err(Error::InvalidGroup(format!("{self} needs n >= 1")))
            }
            GroupSpec::Dihedral { n } if *n < 3 => {
                Err(Error::InvalidGroup(format!("dihedral group needs n >= 3, got {n}")))
            }
            GroupSpec::Product { factors } if factors.is_empty() => {
                Err(Error::InvalidGroup("product of zero factors".into()))
            }
            GroupSpec::Product { factors } => factors.iter().try_for_each(|f| f.validate()),
            _ => Ok(()),
        }
    }

    /// Exact group order.
    pub fn order(&self) -> BigUint {
        match self {
            GroupSpec::Symmetric { n } => (1..=*n).fold(BigUint::one(), |acc, k| acc * k),
            GroupSpec::Cyclic { n } => BigUint::from(*n),
            GroupSpec::Dihedral { n } => BigUint::from(2 * *n),
            GroupSpec::Product { factors } => factors.iter().fold(BigUint::one(), |acc, f| acc * f.order()),
        }
    }

    /// The order as a `usize`, or `TooLarge` if it exceeds `cap`.
    pub fn order_within(&self, cap: usize) -> Result<usize> {
        let order = self.order();
        match order.to_usize() {
            Some(o) if o <= cap => Ok(o),
            _ => Err(Error::TooLarge { order: order.to_string(), cap }),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Symmetric { n } => GroupElement::Perm(Permutation::identity(*n)),
            GroupSpec::Cyclic { n } => GroupElement::Residue { modulus: *n, value: 0 },
            GroupSpec::Dihedral { n } => GroupElement::Dihedral { n: *n, reflection: false, rotation: 0 },
            GroupSpec::Product { factors } => GroupElement::Tuple(factors.iter().map(|f| f.identity()).collect()),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupSpec::Symmetric { n }, GroupElement::Perm(p)) => p.degree() == *n,
            (GroupSpec::Cyclic { n }, GroupElement::Residue { modulus, value }) => modulus == n && value < n,
            (GroupSpec::Dihedral { n }, GroupElement::Dihedral { n: m, rotation, .. }) => n == m && rotation < n,
            (GroupSpec::Product { factors }, GroupElement::Tuple(parts)) => {
                factors.len() == parts.len() && factors.iter().zip(parts).all(|(f, p)| f.contains(p))
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch { expected: self.to_string(), found: g.to_string() })
        }
    }

    /// All elements in canonical (lexicographic payload) order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<GroupElement>> {
        self.validate()?;
        self.order_within(cap)?;
        let mut out = self.enumerate_unchecked();
        out.sort();
        Ok(out)
    }

    fn enumerate_unchecked(&self) -> Vec<GroupElement> {
        match self {
            GroupSpec::Symmetric { n } => Permutation::all(*n).into_iter().map(GroupElement::Perm).collect(),
            GroupSpec::Cyclic { n } => (0..*n).map(|value| GroupElement::Residue { modulus: *n, value }).collect(),
            GroupSpec::Dihedral { n } => [false, true]
                .into_iter()
                .flat_map(|reflection| {
                    (0..*n).map(move |rotation| GroupElement::Dihedral { n: *n, reflection, rotation })
                })
                .collect(),
            GroupSpec::Product { factors } => {
                let mut acc: Vec<Vec<GroupElement>> = vec![Vec::new()];
                for f in factors {
                    let elems = f.enumerate_unchecked();
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut t = prefix.clone();
                                t.push(e.clone());
                                t
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(GroupElement::Tuple).collect()
            }
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        match self {
            GroupSpec::Symmetric { n } => {
                let mut images: Vec<usize> = (0..*n).collect();
                images.shuffle(rng);
                GroupElement::Perm(Permutation(images))
            }
            GroupSpec::Cyclic { n } => GroupElement::Residue { modulus: *n, value: rng.random_range(0..*n) },
            GroupSpec::Dihedral { n } => {
                GroupElement::Dihedral { n: *n, reflection: rng.random(), rotation: rng.random_range(0..*n) }
            }
            GroupSpec::Product { factors } => {
                GroupElement::Tuple(factors.iter().map(|f| f.random_element(rng)).collect())
            }
        }
    }

    /// Product `a·b` (right factor acts first).
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        a.multiply(b)
    }

    /// Parses an element written in this group's notation; see the module docs
    /// of each family for the accepted forms.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        match self {
            GroupSpec::Symmetric { n } => Permutation::parse(*n, text).map(GroupElement::Perm),
            GroupSpec::Cyclic { n } => parse_residue(*n, text),
            GroupSpec::Dihedral { n } => parse_dihedral(*n, text),
            GroupSpec::Product { factors } => {
                let inner = text
                    .strip_prefix('{')
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("tuple must be braced: `{text}`")))?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(Error::Parse(format!(
                        "tuple `{text}` has {} components, group has {} factors",
                        parts.len(),
                        factors.len()
                    )));
                }
                factors
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f.parse_element(p))
                    .collect::<Result<Vec<_>>>()
                    .map(GroupElement::Tuple)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric { n } => write!(f, "S_{n}"),
            GroupSpec::Cyclic { n } => write!(f, "Z_{n}"),
            GroupSpec::Dihedral { n } => write!(f, "D_{n}"),
            GroupSpec::Product { factors } => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

/// A permutation of `{0, .., n-1}` stored as its image array. Displayed
/// 1-based in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("{images:?} is not a bijection on 0..{n}")));
            }
        }
        Ok(Permutation(images))
    }

    /// Builds from 1-based one-line notation, e.g. `[2, 3, 1]`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let images = one_line
            .iter()
            .map(|&x| x.checked_sub(1).ok_or_else(|| Error::Parse("one-line notation is 1-based".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    /// Every permutation of `n` points, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    pub fn is_even(&self) -> bool {
        let cycles = self.cycles();
        cycles.iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Parses cycle notation `(1 2)(3 4)` (commas optional, `()` is the
    /// identity, cycles compose right to left) or one-line `[2,1,4,3]`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unterminated one-line `{text}`")))?;
            let points = parse_points(body)?;
            if points.len() != n {
                return Err(Error::Parse(format!("one-line `{text}` has {} entries, expected {n}", points.len())));
            }
            return Self::from_one_line(&points);
        }
        if matches!(text, "e" | "id" | "1") {
            return Ok(Self::identity(n));
        }
        let mut result = Self::identity(n);
        let mut rest = text;
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{text}`")))?;
            let points = parse_points(&open[..close])?;
            let mut images: Vec<usize> = (0..n).collect();
            let mut seen = HashSet::new();
            for &p in &points {
                if p == 0 || p > n {
                    return Err(Error::Parse(format!("point {p} out of range 1..={n}")));
                }
                if !seen.insert(p) {
                    return Err(Error::Parse(format!("point {p} repeated in a cycle")));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p - 1] = points[(i + 1) % points.len()] - 1;
            }
            result = result.compose(&Permutation(images));
            rest = open[close + 1..].trim_start();
        }
        Ok(result)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn parse_points(body: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{s}`"))))
        .collect()
}

fn parse_signed(text: &str, modulus: usize) -> Result<usize> {
    let t = text.trim().trim_start_matches('+');
    let (neg, digits) = match t.strip_prefix('-').or_else(|| t.strip_prefix('−')) {
        Some(d) => (true, d),
        None => (false, t),
    };
    let v: u128 = digits.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{text}`")))?;
    let r = (v % modulus as u128) as usize;
    Ok(if neg && r != 0 { modulus - r } else { r })
}

fn parse_residue(n: usize, text: &str) -> Result<GroupElement> {
    Ok(GroupElement::Residue { modulus: n, value: parse_signed(text, n)? })
}

fn parse_dihedral(n: usize, text: &str) -> Result<GroupElement> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if matches!(compact.as_str(), "e" | "1" | "id") {
        return Ok(GroupElement::Dihedral { n, reflection: false, rotation: 0 });
    }
    let (reflection, rest) = match compact.strip_prefix('s') {
        Some(r) => (true, r.trim_start_matches(['*', '·'])),
        None => (false, compact.as_str()),
    };
    let rotation = if rest.is_empty() {
        if !reflection {
            return Err(Error::Parse(format!("bad dihedral element `{text}`")));
        }
        0
    } else {
        let exp = rest.strip_prefix('r').ok_or_else(|| Error::Parse(format!("bad dihedral element `{text}`")))?;
        match exp.strip_prefix('^') {
            Some(k) => parse_signed(k, n)?,
            None if exp.is_empty() => 1 % n,
            None => return Err(Error::Parse(format!("bad dihedral element `{text}`"))),
        }
    };
    Ok(GroupElement::Dihedral { n, reflection, rotation })
}

/// Splits on `;` at brace depth zero.
pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// An element of one of the supported families.
///
/// Dihedral elements are `s^f · r^k` with `reflection = (f == 1)`; the
/// relation used is `r·s = s·r^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Permutation),
    Residue { modulus: usize, value: usize },
    Dihedral { n: usize, reflection: bool, rotation: usize },
    Tuple(Vec<GroupElement>),
}

impl GroupElement {
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        use GroupElement::*;
        match (self, other) {
            (Perm(a), Perm(b)) if a.degree() == b.degree() => Ok(Perm(a.compose(b))),
            (Residue { modulus: m, value: a }, Residue { modulus: m2, value: b }) if m == m2 => {
                Ok(Residue { modulus: *m, value: (a + b) % m })
            }
            (Dihedral { n, reflection: fa, rotation: ka }, Dihedral { n: n2, reflection: fb, rotation: kb })
                if n == n2 =>
            {
                // s^a r^k · s^b r^m = s^{a+b} r^{(-1)^b k + m}
                let k = if *fb { (n - ka) % n } else { *ka };
                Ok(Dihedral { n: *n, reflection: fa ^ fb, rotation: (k + kb) % n })
            }
            (Tuple(a), Tuple(b)) if a.len() == b.len() => {
                a.iter().zip(b).map(|(x, y)| x.multiply(y)).collect::<Result<Vec<_>>>().map(Tuple)
            }
            _ => Err(Error::GroupMismatch { expected: self.to_string(), found: other.to_string() }),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            Perm(p) => Perm(p.inverse()),
            Residue { modulus, value } => Residue { modulus: *modulus, value: (modulus - value) % modulus },
            Dihedral { n, reflection: false, rotation } => {
                Dihedral { n: *n, reflection: false, rotation: (n - rotation) % n }
            }
            // reflections are involutions
            Dihedral { .. } => self.clone(),
            Tuple(parts) => Tuple(parts.iter().map(|p| p.inverse()).collect()),
        }
    }

    pub fn is_identity(&self) -> bool {
        use GroupElement::*;
        match self {
            Perm(p) => p.is_identity(),
            Residue { value, .. } => *value == 0,
            Dihedral { reflection, rotation, .. } => !reflection && *rotation == 0,
            Tuple(parts) => parts.iter().all(|p| p.is_identity()),
        }
    }

    pub fn as_permutation(&self) -> Option<&Permutation> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Residue { value, .. } => write!(f, "{value}"),
            GroupElement::Dihedral { reflection: false, rotation, .. } => write!(f, "r^{rotation}"),
            GroupElement::Dihedral { reflection: true, rotation, .. } => {
                write!(f, "s*r^{rotation}")
            }
            GroupElement::Tuple(parts) => {
                write!(f, "{{")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// Ordered multiset Γ of generators. Duplicates are kept: a Cayley multigraph
/// weights repeated edges accordingly.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    group: GroupSpec,
    elements: Vec<GroupElement>,
}

impl GeneratorSet {
    pub fn new(group: GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        group.validate()?;
        if elements.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for e in &elements {
            group.check(e)?;
        }
        Ok(GeneratorSet { group, elements })
    }

    pub fn parse<S: AsRef<str>>(group: GroupSpec, texts: &[S]) -> Result<Self> {
        let elements = texts.iter().map(|t| group.parse_element(t.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(group, elements)
    }

    /// `size` independent uniformly random elements.
    pub fn random<R: Rng + ?Sized>(group: GroupSpec, size: usize, rng: &mut R) -> Result<Self> {
        let elements = (0..size).map(|_| group.random_element(rng)).collect();
        Self::new(group, elements)
    }

    /// Every element of the group once (the complete-graph walk).
    pub fn whole_group(group: GroupSpec, cap: usize) -> Result<Self> {
        let elements = group.enumerate(cap)?;
        Self::new(group, elements)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// D = |Γ| counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    /// Edge label (1-based) of each generator, in list order.
    pub fn labels(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.elements.len()
    }

    /// Γ ∪ Γ⁻¹ with duplicates collapsed, in canonical element order.
    pub fn symmetrize(&self) -> GeneratorSet {
        let mut all: Vec<GroupElement> = self.elements.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
        all.sort();
        all.dedup();
        GeneratorSet { group: self.group.clone(), elements: all }
    }

    /// The set `{γ₀⁻¹γ : γ ∈ Γ}`. The walk's deflated norm is below one
    /// exactly when this set generates the whole group.
    pub fn difference_set(&self) -> GeneratorSet {
        let first_inv = self.elements[0].inverse();
        let elements = self.elements.iter().map(|g| first_inv.multiply(g).expect("same group")).collect();
        GeneratorSet { group: self.group.clone(), elements }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.elements.iter().map(|g| g.to_string()).collect()
    }
}

/// Result of a breadth-first closure.
#[derive(Debug, Clone, PartialEq)]
pub struct Closure {
    /// Elements of the generated subgroup, canonical order.
    pub elements: Vec<GroupElement>,
    pub generates_full_group: bool,
}

/// The subgroup generated by Γ, found by BFS over left multiplication.
pub fn closure(gens: &GeneratorSet, cap: usize) -> Result<Closure> {
    let identity = gens.group.identity();
    let mut seen: HashSet<GroupElement> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(h) = queue.pop_front() {
        for g in &gens.elements {
            let next = g.multiply(&h)?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::TooLarge { order: format!("> {cap}"), cap });
                }
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<GroupElement> = seen.into_iter().collect();
    elements.sort();
    let generates_full_group = BigUint::from(elements.len()) == gens.group.order();
    Ok(Closure { elements, generates_full_group })
}

/// Canonical index of every group element, for matrix construction.
#[derive(Debug, Clone)]
pub struct ElementIndex {
    elements: Vec<GroupElement>,
    positions: HashMap<GroupElement, usize>,
}

impl ElementIndex {
    pub fn new(group: &GroupSpec, cap: usize) -> Result<Self> {
        let elements = group.enumerate(cap)?;
        let positions = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(ElementIndex { elements, positions })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.positions.get(g).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(n: usize) -> GroupSpec {
        GroupSpec::symmetric(n)
    }

    #[test]
    fn s3_transposition_product() {
        let g = s(3);
        let a = g.parse_element("(1 2)").unwrap();
        let b = g.parse_element("(2 3)").unwrap();
        let ab = g.multiply(&a, &b).unwrap();
        assert_eq!(ab.as_permutation().unwrap().one_line(), vec![2, 3, 1]);
        assert_eq!(ab.to_string(), "(1 2 3)");
    }

    #[test]
    fn s3_product_agrees_with_composition_table() {
        // Brute force: evaluate (a·b)(x) = a(b(x)) pointwise for the whole table.
        let g = s(3);
        let elems = g.enumerate(100).unwrap();
        for a in &elems {
            for b in &elems {
                let pa = a.as_permutation().unwrap();
                let pb = b.as_permutation().unwrap();
                let ab = g.multiply(a, b).unwrap();
                for x in 0..3 {
                    assert_eq!(ab.as_permutation().unwrap().image(x), pa.image(pb.image(x)));
                }
            }
        }
    }

    #[test]
    fn identity_is_neutral() {
        let g = s(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = g.identity();
        for _ in 0..20 {
            let x = g.random_element(&mut rng);
            assert_eq!(g.multiply(&e, &x).unwrap(), x);
            assert_eq!(g.multiply(&x, &e).unwrap(), x);
        }
    }

    #[test]
    fn cyclic_arithmetic() {
        let z5 = GroupSpec::cyclic(5);
        let a = z5.parse_element("3").unwrap();
        let b = z5.parse_element("4").unwrap();
        assert_eq!(z5.multiply(&a, &b).unwrap().to_string(), "2");
        let z7 = GroupSpec::cyclic(7);
        assert_eq!(z7.parse_element("3").unwrap().inverse().to_string(), "4");
        assert_eq!(z7.parse_element("-1").unwrap().to_string(), "6");
    }

    #[test]
    fn inverse_of_three_cycle() {
        let g = s(3);
        let c = g.parse_element("(1 2 3)").unwrap();
        let inv = c.inverse();
        assert_eq!(inv.to_string(), "(1 3 2)");
        // brute force search for the element giving identity
        let found: Vec<_> =
            g.enumerate(10).unwrap().into_iter().filter(|h| c.multiply(h).unwrap().is_identity()).collect();
        assert_eq!(found, vec![inv]);
        assert!(g.identity().inverse().is_identity());
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = s(3).identity();
        let b = s(4).identity();
        assert!(matches!(a.multiply(&b), Err(Error::GroupMismatch { .. })));
        assert!(s(4).multiply(&a, &b).is_err());
        let z = GroupSpec::cyclic(3).identity();
        assert!(a.multiply(&z).is_err());
    }

    #[test]
    fn enumerate_orders_and_caps() {
        assert_eq!(s(3).enumerate(100).unwrap().len(), 6);
        let z4: Vec<String> = GroupSpec::cyclic(4).enumerate(100).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(z4, ["0", "1", "2", "3"]);
        assert!(matches!(s(13).enumerate(10_000_000), Err(Error::TooLarge { .. })));
        let d4 = GroupSpec::dihedral(4).enumerate(100).unwrap();
        assert_eq!(d4.len(), 8);
        assert_eq!(d4[4].to_string(), "s*r^0");
        let p = GroupSpec::product(vec![s(3), GroupSpec::cyclic(2)]);
        let elems = p.enumerate(100).unwrap();
        assert_eq!(elems.len(), 12);
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exact_orders() {
        assert_eq!(s(20).order().to_string(), "2432902008176640000");
        assert_eq!(GroupSpec::dihedral(6).order(), BigUint::from(12u32));
        let p = GroupSpec::product(vec![s(4), GroupSpec::cyclic(5), GroupSpec::dihedral(3)]);
        assert_eq!(p.order(), BigUint::from(24u32 * 5 * 6));
    }

    #[test]
    fn closure_examples() {
        let g = s(3);
        let full = GeneratorSet::parse(g.clone(), &["(1 2)", "(1 2 3)"]).unwrap();
        let c = closure(&full, 100).unwrap();
        assert_eq!(c.elements.len(), 6);
        assert!(c.generates_full_group);

        let a3 = GeneratorSet::parse(g.clone(), &["(1 2 3)"]).unwrap();
        let c = closure(&a3, 100).unwrap();
        assert_eq!(c.elements.len(), 3);
        assert!(!c.generates_full_group);

        let triv = GeneratorSet::parse(g, &["()"]).unwrap();
        let c = closure(&triv, 100).unwrap();
        assert_eq!(c.elements.len(), 1);
        assert!(!c.generates_full_group);
    }

    #[test]
    fn closure_cap() {
        let gens = GeneratorSet::parse(s(6), &["(1 2)", "(1 2 3 4 5 6)"]).unwrap();
        assert!(matches!(closure(&gens, 100), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn empty_generator_set_rejected() {
        assert_eq!(GeneratorSet::new(s(3), vec![]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn symmetrize_examples() {
        let z5 = GeneratorSet::parse(GroupSpec::cyclic(5), &["1"]).unwrap();
        assert_eq!(z5.symmetrize().to_strings(), ["1", "4"]);
        let t = GeneratorSet::parse(s(3), &["(1 2)"]).unwrap();
        assert_eq!(t.symmetrize().to_strings(), ["(1 2)"]);
        let c = GeneratorSet::parse(s(3), &["(1 2 3)"]).unwrap();
        assert_eq!(c.symmetrize().to_strings(), ["(1 2 3)", "(1 3 2)"]);
    }

    #[test]
    fn parse_forms() {
        let g = s(4);
        let p = g.parse_element("(1 2 3)").unwrap();
        assert_eq!(p.as_permutation().unwrap().one_line(), vec![2, 3, 1, 4]);
        assert!(g.parse_element("()").unwrap().is_identity());
        assert_eq!(g.parse_element("[2,1,4,3]").unwrap().to_string(), "(1 2)(3 4)");
        assert_eq!(g.parse_element("(1,2)(3,4)").unwrap().to_string(), "(1 2)(3 4)");
        // non-disjoint cycles compose right to left
        assert_eq!(g.parse_element("(1 2)(2 3)").unwrap().to_string(), "(1 2 3)");
        assert!(s(3).parse_element("(1 5)").is_err());
        assert!(g.parse_element("(1 2").is_err());
        assert!(g.parse_element("(1 1)").is_err());
        assert!(g.parse_element("[1,2,3]").is_err());
        assert!(g.parse_element("[1,1,3,4]").is_err());
        assert!(g.parse_element("").is_err());

        let d = GroupSpec::dihedral(5);
        assert_eq!(d.parse_element("r^2").unwrap().to_string(), "r^2");
        assert_eq!(d.parse_element("s·r^3").unwrap().to_string(), "s*r^3");
        assert_eq!(d.parse_element("s").unwrap().to_string(), "s*r^0");
        assert_eq!(d.parse_element("r").unwrap().to_string(), "r^1");
        assert_eq!(d.parse_element("r^-1").unwrap().to_string(), "r^4");
        assert!(d.parse_element("t^2").is_err());

        let p = GroupSpec::product(vec![s(3), GroupSpec::cyclic(4)]);
        let e = p.parse_element("{(1 2); 3}").unwrap();
        assert_eq!(e.to_string(), "{(1 2); 3}");
        assert!(p.parse_element("{(1 2)}").is_err());
    }

    #[test]
    fn dihedral_relations() {
        let d = GroupSpec::dihedral(6);
        let r = d.parse_element("r").unwrap();
        let sref = d.parse_element("s").unwrap();
        // r·s = s·r^{-1}
        let rs = r.multiply(&sref).unwrap();
        let s_rinv = sref.multiply(&r.inverse()).unwrap();
        assert_eq!(rs, s_rinv);
        assert!(sref.multiply(&sref).unwrap().is_identity());
        for g in d.enumerate(100).unwrap() {
            assert!(g.multiply(&g.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn difference_set_of_same_parity_pair_misses_odd_elements() {
        let gens = GeneratorSet::parse(s(3), &["(1 2)", "(2 3)"]).unwrap();
        let diff = gens.difference_set();
        assert!(diff.elements()[0].is_identity());
        assert!(!closure(&diff, 100).unwrap().generates_full_group);
    }
}
