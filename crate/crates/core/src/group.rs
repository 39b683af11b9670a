//! Free-group words and finite group presentations.
//!
//! Covers the group-theoretic layer: freely reduced words, presentations
//! with validated generator sets, Wirtinger presentations read off a
//! diagram, HNN extensions over a stated stable letter, generator killing
//! (Dehn-filling bookkeeping), abelianization / first homology via Smith
//! normal form, and the literal renaming-isomorphism check used to match
//! two presentations generator-for-generator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::PlanarDiagram;
use crate::matrix::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}` in relator")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("stable letter `{0}` collides with a base generator")]
    StableCollision(String),
    #[error("dictionary is not a bijection between the generator sets")]
    NotBijective,
    #[error("no abelianization image for generator `{0}`")]
    MissingImage(String),
    #[error("relator `{0}` does not abelianize to zero")]
    InconsistentAbelianization(String),
    #[error("first homology has free rank {0}; need rank exactly 1")]
    NotInfiniteCyclic(usize),
}

/// Freely reduced word in named generators; every letter carries exponent
/// `+1` or `-1`, and no adjacent pair cancels.  The empty word is the
/// identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<(String, i8)>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(name: &str) -> Self {
        Self { letters: vec![(name.to_string(), 1)] }
    }

    /// Builds a word, cancelling adjacent inverse pairs as it goes; the
    /// result is freely reduced no matter the input order.
    pub fn from_letters(letters: impl IntoIterator<Item = (String, i8)>) -> Self {
        let mut stack: Vec<(String, i8)> = Vec::new();
        for (sym, exp) in letters {
            assert!(exp == 1 || exp == -1, "letter exponent must be +1 or -1");
            if let Some(top) = stack.last() {
                if top.0 == sym && top.1 == -exp {
                    stack.pop();
                    continue;
                }
            }
            stack.push((sym, exp));
        }
        Self { letters: stack }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(String, i8)] {
        &self.letters
    }

    pub fn inv(&self) -> Self {
        Self {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(s, e)| (s.clone(), -e))
                .collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_letters(
            self.letters
                .iter()
                .chain(other.letters.iter())
                .cloned(),
        )
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Conjugate `g w g^-1`.
    pub fn conjugated_by(&self, g: &Self) -> Self {
        g.concat(self).concat(&g.inv())
    }

    pub fn exponent_sum(&self, sym: &str) -> i64 {
        self.letters
            .iter()
            .filter(|(s, _)| s == sym)
            .map(|(_, e)| *e as i64)
            .sum()
    }

    pub fn symbols(&self) -> BTreeSet<&str> {
        self.letters.iter().map(|(s, _)| s.as_str()).collect()
    }

    /// Drops every occurrence of `sym` (with either exponent) and re-reduces.
    pub fn without_symbol(&self, sym: &str) -> Self {
        Self::from_letters(
            self.letters
                .iter()
                .filter(|(s, _)| s != sym)
                .cloned(),
        )
    }

    pub fn renamed(&self, dict: &BTreeMap<String, String>) -> Self {
        Self {
            letters: self
                .letters
                .iter()
                .map(|(s, e)| (dict.get(s).cloned().unwrap_or_else(|| s.clone()), *e))
                .collect(),
        }
    }

    /// Removes cancelling prefix/suffix pairs: `a w a^-1`-shaped padding.
    pub fn cyclically_reduced(&self) -> Self {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = &letters[0];
            let last = &letters[letters.len() - 1];
            if first.0 == last.0 && first.1 == -last.1 {
                letters.remove(0);
                letters.pop();
            } else {
                break;
            }
        }
        Self { letters }
    }

    /// Least letter sequence over all cyclic rotations of the cyclic
    /// reduction and of its inverse: a canonical form for "same relator up
    /// to rotation and inversion".
    fn cyclic_canonical(&self) -> Vec<(String, i8)> {
        let core = self.cyclically_reduced();
        if core.letters.is_empty() {
            return Vec::new();
        }
        let mut best: Option<Vec<(String, i8)>> = None;
        for w in [core.clone(), core.inv()] {
            let n = w.letters.len();
            for r in 0..n {
                let rotated: Vec<(String, i8)> = w
                    .letters
                    .iter()
                    .cycle()
                    .skip(r)
                    .take(n)
                    .cloned()
                    .collect();
                if best.as_ref().map(|b| rotated < *b).unwrap_or(true) {
                    best = Some(rotated);
                }
            }
        }
        best.unwrap()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let w = parse_word(bytes, &mut pos, 0)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(GroupError::Parse { pos, msg: "unexpected trailing input".into() });
        }
        Ok(w)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<i32, GroupError> {
    let start = *pos;
    let mut sign = 1i32;
    if *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
        if bytes[*pos] == b'-' {
            sign = -1;
        }
        *pos += 1;
    }
    let digits_start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        return Err(GroupError::Parse { pos: start, msg: "expected integer exponent".into() });
    }
    std::str::from_utf8(&bytes[digits_start..*pos])
        .unwrap()
        .parse::<i32>()
        .map(|v| sign * v)
        .map_err(|_| GroupError::Parse { pos: start, msg: "exponent out of range".into() })
}

fn parse_name(bytes: &[u8], pos: &mut usize) -> Result<String, GroupError> {
    let start = *pos;
    if *pos >= bytes.len() || !bytes[*pos].is_ascii_alphabetic() {
        return Err(GroupError::Parse { pos: start, msg: "expected generator name".into() });
    }
    *pos += 1;
    while *pos < bytes.len()
        && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_' || bytes[*pos] == b'\'')
    {
        *pos += 1;
    }
    Ok(std::str::from_utf8(&bytes[start..*pos]).unwrap().to_string())
}

/// word := item*; item := (name | '(' word ')') ('^' int)?
fn parse_word(bytes: &[u8], pos: &mut usize, depth: usize) -> Result<Word, GroupError> {
    if depth > 64 {
        return Err(GroupError::Parse { pos: *pos, msg: "nesting too deep".into() });
    }
    let mut acc = Word::identity();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            break;
        }
        let atom = match bytes[*pos] {
            b'(' => {
                *pos += 1;
                let inner = parse_word(bytes, pos, depth + 1)?;
                skip_ws(bytes, pos);
                if *pos >= bytes.len() || bytes[*pos] != b')' {
                    return Err(GroupError::Parse { pos: *pos, msg: "expected `)`".into() });
                }
                *pos += 1;
                inner
            }
            b')' | b',' => break,
            c if c.is_ascii_alphabetic() => Word::generator(&parse_name(bytes, pos)?),
            _ => {
                return Err(GroupError::Parse {
                    pos: *pos,
                    msg: "expected generator name or `(`".into(),
                })
            }
        };
        let item = if *pos < bytes.len() && bytes[*pos] == b'^' {
            *pos += 1;
            let e = parse_int(bytes, pos)?;
            atom.pow(e)
        } else {
            atom
        };
        acc = acc.concat(&item);
    }
    Ok(acc)
}

/// Finite presentation: ordered generators, freely reduced nonempty
/// relators over them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    gens: Vec<String>,
    rels: Vec<Word>,
}

impl GroupPresentation {
    /// Validates generator names (distinct) and relator symbols (declared);
    /// relators reducing to the identity are dropped.
    pub fn new(
        gens: Vec<String>,
        rels: Vec<Word>,
    ) -> Result<Self, GroupError> {
        let mut seen = BTreeSet::new();
        for g in &gens {
            if !seen.insert(g.clone()) {
                return Err(GroupError::DuplicateGenerator(g.clone()));
            }
        }
        let mut kept = Vec::new();
        for r in rels {
            for (s, _) in r.letters() {
                if !seen.contains(s) {
                    return Err(GroupError::UnknownGenerator(s.clone()));
                }
            }
            if !r.is_identity() {
                kept.push(r);
            }
        }
        Ok(Self { gens, rels: kept })
    }

    pub fn free(gens: &[&str]) -> Self {
        Self { gens: gens.iter().map(|s| s.to_string()).collect(), rels: Vec::new() }
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.rels
    }

    /// One generator per arc, one conjugation relator per crossing: at a
    /// crossing with over-arc `o`, incoming under-arc `i`, outgoing
    /// under-arc `u` and sign `e`, the relator is `u^-1 o^e i o^-e`.  The
    /// redundant relator (any one is a consequence of the rest) is kept.
    pub fn wirtinger(d: &PlanarDiagram) -> Self {
        let gens: Vec<String> = (0..d.arc_count()).map(|i| format!("x{}", i + 1)).collect();
        let name = |arc: usize| gens[arc].clone();
        let mut rels = Vec::new();
        for c in d.crossing_info() {
            let o = d.arc_of_edge(c.over_in);
            let i = d.arc_of_edge(c.under_in);
            let u = d.arc_of_edge(c.under_out);
            let e = c.sign as i8;
            let r = Word::from_letters([
                (name(u), -1),
                (name(o), e),
                (name(i), 1),
                (name(o), -e),
            ]);
            if !r.is_identity() {
                rels.push(r);
            }
        }
        Self { gens, rels }
    }

    /// Adds `stable` and a relator `stable p stable^-1 m^-1` per pair
    /// `(p, m)`.
    pub fn hnn_extension(
        base: &GroupPresentation,
        pairs: &[(Word, Word)],
        stable: &str,
    ) -> Result<Self, GroupError> {
        if base.gens.iter().any(|g| g == stable) {
            return Err(GroupError::StableCollision(stable.to_string()));
        }
        for (p, m) in pairs {
            for w in [p, m] {
                for (s, _) in w.letters() {
                    if !base.gens.contains(s) {
                        return Err(GroupError::UnknownGenerator(s.clone()));
                    }
                }
            }
        }
        let mut gens = base.gens.clone();
        gens.push(stable.to_string());
        let t = Word::generator(stable);
        let mut rels = base.rels.clone();
        for (p, m) in pairs {
            rels.push(t.concat(p).concat(&t.inv()).concat(&m.inv()));
        }
        Ok(Self { gens, rels })
    }

    /// Deletes `g` and erases every `g^±1` from the relators (re-reducing);
    /// relators that become trivial are dropped.
    pub fn kill_generator(&self, g: &str) -> Self {
        let gens: Vec<String> = self.gens.iter().filter(|s| *s != g).cloned().collect();
        let rels: Vec<Word> = self
            .rels
            .iter()
            .map(|r| r.without_symbol(g))
            .filter(|r| !r.is_identity())
            .collect();
        Self { gens, rels }
    }

    /// Exponent-sum matrix: one column per relator, one row per generator.
    fn relator_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.gens.len(), self.rels.len());
        for (j, r) in self.rels.iter().enumerate() {
            for (i, g) in self.gens.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(r.exponent_sum(g));
            }
        }
        m
    }

    /// First homology of the presented group: free rank and nontrivial
    /// invariant factors, from the Smith form of the abelianized relators.
    pub fn h1(&self) -> (usize, Vec<BigInt>) {
        if self.gens.is_empty() {
            return (0, Vec::new());
        }
        let snf = self.relator_matrix().smith_normal_form();
        let rank = self.gens.len() - snf.rank();
        let torsion: Vec<BigInt> = snf
            .diag
            .iter()
            .filter(|d| !d.is_zero() && !d.abs().eq(&BigInt::from(1)))
            .cloned()
            .collect();
        (rank, torsion)
    }

    /// Relator multisets equal after renaming through `dict`, up to free and
    /// cyclic reduction and relator inversion.  `dict` must biject the two
    /// generator sets.
    pub fn identical_up_to_renaming(
        &self,
        other: &GroupPresentation,
        dict: &BTreeMap<String, String>,
    ) -> Result<bool, GroupError> {
        let keys: BTreeSet<&String> = dict.keys().collect();
        let vals: BTreeSet<&String> = dict.values().collect();
        let ours: BTreeSet<&String> = self.gens.iter().collect();
        let theirs: BTreeSet<&String> = other.gens.iter().collect();
        if keys != ours || vals != theirs || dict.len() != vals.len() {
            return Err(GroupError::NotBijective);
        }
        let mut lhs: Vec<Vec<(String, i8)>> = self
            .rels
            .iter()
            .map(|r| r.renamed(dict).cyclic_canonical())
            .collect();
        let mut rhs: Vec<Vec<(String, i8)>> =
            other.rels.iter().map(|r| r.cyclic_canonical()).collect();
        lhs.sort();
        rhs.sort();
        Ok(lhs == rhs)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.gens {
            write!(f, " {g}")?;
        }
        write!(f, " ; rels:")?;
        for (i, r) in self.rels.iter().enumerate() {
            if i > 0 {
                write!(f, " ,")?;
            }
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupPresentation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s.trim_start();
        let base = s.len() - rest.len();
        let rest = rest.strip_prefix("gens:").ok_or(GroupError::Parse {
            pos: base,
            msg: "expected `gens:`".into(),
        })?;
        let sep = rest.find(';').ok_or(GroupError::Parse {
            pos: s.len(),
            msg: "expected `;` between generators and relators".into(),
        })?;
        let gen_part = &rest[..sep];
        let mut gens = Vec::new();
        for tok in gen_part.split_whitespace() {
            let bytes = tok.as_bytes();
            let mut pos = 0;
            let name = parse_name(bytes, &mut pos)?;
            if pos != bytes.len() {
                return Err(GroupError::Parse { pos, msg: format!("bad generator token `{tok}`") });
            }
            gens.push(name);
        }
        let rel_part = rest[sep + 1..].trim_start();
        let rel_part = rel_part.strip_prefix("rels:").ok_or(GroupError::Parse {
            pos: s.len(),
            msg: "expected `rels:`".into(),
        })?;
        let mut rels = Vec::new();
        let bytes = rel_part.as_bytes();
        let mut pos = 0usize;
        loop {
            skip_ws(bytes, &mut pos);
            if pos >= bytes.len() {
                break;
            }
            let w = parse_word(bytes, &mut pos, 0)?;
            if !w.is_identity() {
                rels.push(w);
            }
            skip_ws(bytes, &mut pos);
            if pos < bytes.len() {
                if bytes[pos] != b',' {
                    return Err(GroupError::Parse { pos, msg: "expected `,` between relators".into() });
                }
                pos += 1;
            }
        }
        GroupPresentation::new(gens, rels)
    }
}

/// Map from a presentation's generators to powers of t in the infinite
/// cyclic quotient `H1 / torsion`, together with the computed homology.
///
/// The map is computed, not assumed: the Smith row transform of the
/// abelianized relator matrix supplies the projection onto the free rank-1
/// part, sign-fixed so the first generator with nonzero image maps to a
/// positive power.
#[derive(Clone, Debug)]
pub struct AbelianizationMap {
    images: BTreeMap<String, i64>,
    h1_rank: usize,
    h1_torsion: Vec<BigInt>,
}

impl AbelianizationMap {
    /// Derives the map for a presentation whose H1 has free rank exactly 1.
    pub fn infinite_cyclic(p: &GroupPresentation) -> Result<Self, GroupError> {
        let m = p.relator_matrix();
        let snf = m.smith_normal_form();
        let (rank, torsion) = p.h1();
        if rank != 1 {
            return Err(GroupError::NotInfiniteCyclic(rank));
        }
        // free coordinate of the cokernel: the row of U past the nonzero
        // invariant factors
        let free_row = (0..p.gens.len())
            .find(|&i| i >= snf.diag.len() || snf.diag[i].is_zero())
            .expect("rank-1 cokernel has a free coordinate");
        let mut images = BTreeMap::new();
        for (i, g) in p.gens.iter().enumerate() {
            let v = snf
                .u
                .at(free_row, i)
                .to_i64()
                .expect("abelianization image out of i64 range");
            images.insert(g.clone(), v);
        }
        if let Some(first) = p.gens.iter().find(|g| images[*g] != 0) {
            if images[first] < 0 {
                for v in images.values_mut() {
                    *v = -*v;
                }
            }
        }
        let map = Self { images, h1_rank: rank, h1_torsion: torsion };
        map.validate(p)?;
        Ok(map)
    }

    /// Builds from explicit generator images, checking every relator maps
    /// to zero.
    pub fn explicit(
        p: &GroupPresentation,
        images: &[(&str, i64)],
    ) -> Result<Self, GroupError> {
        let mut map = BTreeMap::new();
        for (g, v) in images {
            map.insert(g.to_string(), *v);
        }
        for g in p.generators() {
            if !map.contains_key(g) {
                return Err(GroupError::MissingImage(g.clone()));
            }
        }
        let (rank, torsion) = p.h1();
        let out = Self { images: map, h1_rank: rank, h1_torsion: torsion };
        out.validate(p)?;
        Ok(out)
    }

    fn validate(&self, p: &GroupPresentation) -> Result<(), GroupError> {
        for r in p.relators() {
            if self.word_image(r) != 0 {
                return Err(GroupError::InconsistentAbelianization(r.to_string()));
            }
        }
        Ok(())
    }

    pub fn image(&self, sym: &str) -> i64 {
        self.images.get(sym).copied().unwrap_or(0)
    }

    pub fn word_image(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|(s, e)| self.image(s) * (*e as i64))
            .sum()
    }

    pub fn h1_rank(&self) -> usize {
        self.h1_rank
    }

    pub fn h1_torsion(&self) -> &[BigInt] {
        &self.h1_torsion
    }
}
