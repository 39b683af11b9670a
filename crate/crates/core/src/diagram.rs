//! Oriented knot diagrams and their notations.
//!
//! A diagram is stored as a list of crossing tuples `X(a,b,c,d)`: edge
//! labels `1..2c` run consecutively along the strand, the tuple is read
//! counterclockwise starting at the incoming under-edge `a`, so the
//! outgoing under-edge is `c = a+1 (mod 2c)` and the over-strand occupies
//! `b` and `d`.  When `d = b+1` the over-strand runs `b -> d` and the
//! crossing is positive; when `b = d+1` it runs `d -> b` and the crossing
//! is negative (a one-crossing kink satisfies both and is taken positive).
//!
//! Supported notations: PD text, DT codes (reconstructed by a planarity
//! search over per-crossing handedness), Gauss codes (handedness given, so
//! only a planarity check), and braid words via closure.  Quantities:
//! writhe, alternation, Seifert circles by oriented smoothing, and the
//! genus of the Seifert-algorithm surface as an upper bound for knot
//! genus.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {index} has arity {arity}, need 4")]
    Arity { index: usize, arity: usize },
    #[error("edge label {label} out of range 1..={max}")]
    LabelRange { label: usize, max: usize },
    #[error("edge label {label} appears {count} times, need exactly 2")]
    LabelCount { label: usize, count: usize },
    #[error("crossing {index} breaks orientation: {msg}")]
    Orientation { index: usize, msg: String },
    #[error("no planar realization of the code")]
    NotRealizable,
    #[error("closure has {0} components; need a knot")]
    MultiComponent(usize),
    #[error("braid generator {0} out of range for {1} strands")]
    BadGenerator(i64, usize),
    #[error("invalid code entry: {0}")]
    BadEntry(String),
}

/// Roles of the four edges at a crossing, plus its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub sign: i8,
}

/// Oriented knot diagram; see the module docs for the label conventions.
/// Zero crossings is the round unknot diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    tuples: Vec<[usize; 4]>,
    info: Vec<CrossingInfo>,
    arc_of_edge: Vec<usize>, // indexed by edge label; [0] unused
    arc_count: usize,
}

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

impl PlanarDiagram {
    /// Validates and adopts crossing tuples in the module's labeling
    /// convention.
    pub fn from_tuples(tuples: Vec<[usize; 4]>) -> Result<Self, DiagramError> {
        let c = tuples.len();
        let n = 2 * c;
        let mut counts = vec![0usize; n + 1];
        for t in &tuples {
            for &e in t {
                if e < 1 || e > n {
                    return Err(DiagramError::LabelRange { label: e, max: n });
                }
                counts[e] += 1;
            }
        }
        for (label, &count) in counts.iter().enumerate().skip(1) {
            if count != 2 {
                return Err(DiagramError::LabelCount { label, count });
            }
        }
        let next = |e: usize| e % n + 1;
        let mut info = Vec::with_capacity(c);
        for (index, &[a, b, cc, d]) in tuples.iter().enumerate() {
            if cc != next(a) {
                return Err(DiagramError::Orientation {
                    index,
                    msg: format!("under-out {cc} is not the successor of under-in {a}"),
                });
            }
            let sign = if d == next(b) {
                1
            } else if b == next(d) {
                -1
            } else {
                return Err(DiagramError::Orientation {
                    index,
                    msg: format!("over-strand edges {b},{d} are not consecutive"),
                });
            };
            let (over_in, over_out) = if sign == 1 { (b, d) } else { (d, b) };
            info.push(CrossingInfo { under_in: a, under_out: cc, over_in, over_out, sign });
        }
        // each label must come in once and go out once
        let mut seen_in = vec![false; n + 1];
        let mut seen_out = vec![false; n + 1];
        for (index, ci) in info.iter().enumerate() {
            for (slot, e) in [(true, ci.under_in), (true, ci.over_in), (false, ci.under_out), (false, ci.over_out)] {
                let seen = if slot { &mut seen_in } else { &mut seen_out };
                if seen[e] {
                    return Err(DiagramError::Orientation {
                        index,
                        msg: format!("edge {e} enters or leaves two crossings the same way"),
                    });
                }
                seen[e] = true;
            }
        }
        // arcs: the over-strand rides through, merging its two edges
        let mut uf = Uf::new(n + 1);
        for ci in &info {
            uf.union(ci.over_in, ci.over_out);
        }
        let mut arc_of_edge = vec![usize::MAX; n + 1];
        let mut arc_count = 0usize;
        for e in 1..=n {
            let root = uf.find(e);
            if arc_of_edge[root] == usize::MAX {
                arc_of_edge[root] = arc_count;
                arc_count += 1;
            }
            arc_of_edge[e] = arc_of_edge[root];
        }
        if c == 0 {
            arc_count = 1;
        }
        Ok(Self { tuples, info, arc_of_edge, arc_count })
    }

    /// Parses whitespace-separated `X(a,b,c,d)` terms; empty input is the
    /// unknot diagram.
    pub fn from_pd(text: &str) -> Result<Self, DiagramError> {
        let mut tuples = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos >= bytes.len() {
                break;
            }
            if bytes[pos] != b'X' {
                return Err(DiagramError::Syntax { pos, msg: "expected `X(`".into() });
            }
            pos += 1;
            if pos >= bytes.len() || bytes[pos] != b'(' {
                return Err(DiagramError::Syntax { pos, msg: "expected `(`".into() });
            }
            pos += 1;
            let mut entries = Vec::new();
            loop {
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(DiagramError::Syntax { pos, msg: "expected edge label".into() });
                }
                let label: usize = std::str::from_utf8(&bytes[start..pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| DiagramError::Syntax { pos: start, msg: "label out of range".into() })?;
                entries.push(label);
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(DiagramError::Syntax { pos, msg: "unterminated crossing".into() });
                }
                match bytes[pos] {
                    b',' => {
                        pos += 1;
                    }
                    b')' => {
                        pos += 1;
                        break;
                    }
                    _ => {
                        return Err(DiagramError::Syntax { pos, msg: "expected `,` or `)`".into() })
                    }
                }
            }
            if entries.len() != 4 {
                return Err(DiagramError::Arity { index: tuples.len(), arity: entries.len() });
            }
            tuples.push([entries[0], entries[1], entries[2], entries[3]]);
        }
        Self::from_tuples(tuples)
    }

    /// Reconstructs a diagram from a DT code: one signed even integer per
    /// crossing, entry `i` pairing odd label `2i-1` with `|entry|`; a
    /// negative entry means the even pass goes under.  The per-crossing
    /// handedness is recovered by searching for a planar rotation system
    /// (the first crossing's handedness is fixed, which picks one of the
    /// two mirror images).
    pub fn from_dt(entries: &[i64]) -> Result<Self, DiagramError> {
        let c = entries.len();
        if c == 0 {
            return Self::from_tuples(Vec::new());
        }
        let n = 2 * c;
        let mut partner_seen = vec![false; n + 1];
        let mut crossings = Vec::with_capacity(c); // (under_time, over_time)
        for (i, &e) in entries.iter().enumerate() {
            let odd = 2 * i + 1;
            let ev = e.unsigned_abs() as usize;
            if e == 0 || ev % 2 != 0 || ev > n {
                return Err(DiagramError::BadEntry(e.to_string()));
            }
            if partner_seen[ev] {
                return Err(DiagramError::BadEntry(format!("{ev} paired twice")));
            }
            partner_seen[ev] = true;
            let (under, over) = if e > 0 { (odd, ev) } else { (ev, odd) };
            crossings.push((under, over));
        }
        let next = |e: usize| e % n + 1;
        // handedness bit per crossing: 0 = positive tuple, 1 = negative
        for pattern in 0..(1u32 << (c - 1)) {
            let mut tuples = Vec::with_capacity(c);
            for (i, &(u, ov)) in crossings.iter().enumerate() {
                let bit = if i == 0 { 0 } else { (pattern >> (i - 1)) & 1 };
                let t = if bit == 0 {
                    [u, ov, next(u), next(ov)]
                } else {
                    [u, next(ov), next(u), ov]
                };
                tuples.push(t);
            }
            if rotation_system_is_planar(&tuples, n) {
                return Self::from_tuples(tuples);
            }
        }
        Err(DiagramError::NotRealizable)
    }

    /// Parses a Gauss code: tokens `O<k><sign>` / `U<k><sign>` in strand
    /// order, e.g. `U1+ O2+ U3+ O1+ U2+ O3+`.  Signs fix the handedness,
    /// so the embedding is checked, not searched.
    pub fn from_gauss(text: &str) -> Result<Self, DiagramError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Self::from_tuples(Vec::new());
        }
        let n = tokens.len();
        if n % 2 != 0 {
            return Err(DiagramError::BadEntry("odd token count".into()));
        }
        let c = n / 2;
        let mut under_time = vec![0usize; c + 1];
        let mut over_time = vec![0usize; c + 1];
        let mut sign = vec![0i8; c + 1];
        for (time0, tok) in tokens.iter().enumerate() {
            let time = time0 + 1;
            let bytes = tok.as_bytes();
            if bytes.len() < 3 {
                return Err(DiagramError::BadEntry(tok.to_string()));
            }
            let role = bytes[0];
            let sgn = *bytes.last().unwrap();
            let id: usize = tok[1..tok.len() - 1]
                .parse()
                .map_err(|_| DiagramError::BadEntry(tok.to_string()))?;
            if id < 1 || id > c {
                return Err(DiagramError::BadEntry(tok.to_string()));
            }
            let s = match sgn {
                b'+' => 1i8,
                b'-' => -1,
                _ => return Err(DiagramError::BadEntry(tok.to_string())),
            };
            if sign[id] == 0 {
                sign[id] = s;
            } else if sign[id] != s {
                return Err(DiagramError::BadEntry(format!("crossing {id} signs disagree")));
            }
            match role {
                b'U' => {
                    if under_time[id] != 0 {
                        return Err(DiagramError::BadEntry(format!("crossing {id} passed under twice")));
                    }
                    under_time[id] = time;
                }
                b'O' => {
                    if over_time[id] != 0 {
                        return Err(DiagramError::BadEntry(format!("crossing {id} passed over twice")));
                    }
                    over_time[id] = time;
                }
                _ => return Err(DiagramError::BadEntry(tok.to_string())),
            }
        }
        let next = |e: usize| e % n + 1;
        let mut tuples = Vec::with_capacity(c);
        for id in 1..=c {
            let (u, ov) = (under_time[id], over_time[id]);
            if u == 0 || ov == 0 {
                return Err(DiagramError::BadEntry(format!("crossing {id} missing a pass")));
            }
            let t = if sign[id] == 1 {
                [u, ov, next(u), next(ov)]
            } else {
                [u, next(ov), next(u), ov]
            };
            tuples.push(t);
        }
        if !rotation_system_is_planar(&tuples, n) {
            return Err(DiagramError::NotRealizable);
        }
        Self::from_tuples(tuples)
    }

    pub fn crossing_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.tuples.len()
    }

    pub fn tuples(&self) -> &[[usize; 4]] {
        &self.tuples
    }

    pub fn crossing_info(&self) -> &[CrossingInfo] {
        &self.info
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Arc index (0-based) of an edge label.
    pub fn arc_of_edge(&self, e: usize) -> usize {
        self.arc_of_edge[e]
    }

    pub fn writhe(&self) -> i64 {
        self.info.iter().map(|ci| ci.sign as i64).sum()
    }

    /// Walking the strand, does the sequence of passes alternate
    /// over/under strictly (cyclically)?  Vacuously true with no
    /// crossings.
    pub fn is_alternating(&self) -> bool {
        let n = self.edge_count();
        if n == 0 {
            return true;
        }
        // role at time e: is edge e the under-in of its crossing?
        let mut under_at = vec![false; n + 1];
        for ci in &self.info {
            under_at[ci.under_in] = true;
        }
        (1..=n).all(|e| under_at[e] != under_at[e % n + 1])
    }

    /// Number of circles after the orientation-respecting smoothing of
    /// every crossing.
    pub fn seifert_circle_count(&self) -> usize {
        let n = self.edge_count();
        if n == 0 {
            return 1;
        }
        let mut next = vec![0usize; n + 1];
        for ci in &self.info {
            next[ci.under_in] = ci.over_out;
            next[ci.over_in] = ci.under_out;
        }
        let mut seen = vec![false; n + 1];
        let mut circles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            circles += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                e = next[e];
            }
        }
        circles
    }

    /// Genus of the surface produced by the smoothing algorithm:
    /// `(c + 1 - s) / 2`.  An upper bound for the knot genus.
    pub fn genus_upper_bound(&self) -> usize {
        let c = self.crossing_count();
        let s = self.seifert_circle_count();
        debug_assert!(s <= c + 1, "connected diagram has at most c+1 circles");
        debug_assert_eq!((c + 1 - s) % 2, 0, "genus must be integral");
        (c + 1 - s) / 2
    }

    /// DT code of this diagram: entry `i` is the even time paired with odd
    /// time `2i-1`, negative when the even pass goes under.
    pub fn to_dt(&self) -> Vec<i64> {
        let c = self.crossing_count();
        let mut out = vec![0i64; c];
        for ci in &self.info {
            let (odd, ev, even_is_over) = if ci.under_in % 2 == 1 {
                (ci.under_in, ci.over_in, true)
            } else {
                (ci.over_in, ci.under_in, false)
            };
            assert!(
                odd % 2 == 1 && ev % 2 == 0,
                "knot diagram passes a crossing once at odd and once at even time"
            );
            out[(odd - 1) / 2] = if even_is_over { ev as i64 } else { -(ev as i64) };
        }
        out
    }

    /// Gauss code of this diagram, crossings numbered in first-visit
    /// order.
    pub fn to_gauss(&self) -> String {
        let n = self.edge_count();
        let c = self.crossing_count();
        // incoming crossing of each edge
        let mut incoming = vec![(0usize, false); n + 1]; // (crossing idx, is_under)
        for (i, ci) in self.info.iter().enumerate() {
            incoming[ci.under_in] = (i, true);
            incoming[ci.over_in] = (i, false);
        }
        let mut visit_id = vec![0usize; c];
        let mut next_id = 0usize;
        let mut toks = Vec::with_capacity(n);
        for e in 1..=n {
            let (ci, under) = incoming[e];
            if visit_id[ci] == 0 {
                next_id += 1;
                visit_id[ci] = next_id;
            }
            let role = if under { 'U' } else { 'O' };
            let sgn = if self.info[ci].sign == 1 { '+' } else { '-' };
            toks.push(format!("{role}{}{sgn}", visit_id[ci]));
        }
        toks.join(" ")
    }

    /// Label-rotation-invariant encoding: the lexicographically least tuple
    /// list over all choices of starting edge.  Two diagrams are "the same
    /// up to relabeling" exactly when their signatures agree.
    pub fn canonical_signature(&self) -> Vec<[usize; 4]> {
        let n = self.edge_count();
        if n == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<[usize; 4]>> = None;
        for start in 1..=n {
            let relabel = |e: usize| (e + n - start) % n + 1;
            let mut tuples: Vec<[usize; 4]> = self
                .tuples
                .iter()
                .map(|t| [relabel(t[0]), relabel(t[1]), relabel(t[2]), relabel(t[3])])
                .collect();
            tuples.sort();
            if best.as_ref().map(|b| tuples < *b).unwrap_or(true) {
                best = Some(tuples);
            }
        }
        best.unwrap()
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tuples.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X({},{},{},{})", t[0], t[1], t[2], t[3])?;
        }
        Ok(())
    }
}

/// Face-traces the 4-valent rotation system given by the tuples (each
/// tuple a counterclockwise vertex rotation, labels pairing the darts):
/// planar iff exactly `c + 2` faces on the sphere.
fn rotation_system_is_planar(tuples: &[[usize; 4]], n: usize) -> bool {
    let c = tuples.len();
    // darts: (crossing, slot) -> c*4 ids; alpha pairs the two darts of a label
    let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, t) in tuples.iter().enumerate() {
        for (s, &e) in t.iter().enumerate() {
            if e < 1 || e > n {
                return false;
            }
            by_label[e].push(i * 4 + s);
        }
    }
    let mut alpha = vec![usize::MAX; 4 * c];
    for darts in by_label.iter().skip(1) {
        if darts.len() != 2 {
            return false;
        }
        alpha[darts[0]] = darts[1];
        alpha[darts[1]] = darts[0];
    }
    let sigma = |d: usize| (d / 4) * 4 + (d % 4 + 1) % 4;
    let mut seen = vec![false; 4 * c];
    let mut faces = 0usize;
    for start in 0..4 * c {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = sigma(alpha[d]);
        }
    }
    faces == c + 2
}

/// Braid word on `strands` strands; letter `k` is the generator crossing
/// strand positions `|k|` and `|k|+1`, positive when the strand from the
/// lower position passes over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::BadEntry("braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(DiagramError::BadGenerator(l, strands));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// The permutation the braid induces on strand positions.
    fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let p = l.unsigned_abs() as usize - 1;
            perm.swap(p, p + 1);
        }
        perm
    }

    /// Closes the braid into a knot diagram; errors when the closure has
    /// more than one component.
    pub fn closure(&self) -> Result<PlanarDiagram, DiagramError> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut components = 0usize;
        for mut j in 0..self.strands {
            if seen[j] {
                continue;
            }
            components += 1;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        if components != 1 {
            return Err(DiagramError::MultiComponent(components));
        }
        if self.letters.is_empty() {
            return PlanarDiagram::from_tuples(Vec::new());
        }
        // abstract edge ids: one per strand top, one per crossing output
        let mut next_edge = self.strands;
        let mut cur: Vec<usize> = (0..self.strands).collect();
        // (under_in, over_in, under_out, over_out, sign)
        let mut raw: Vec<(usize, usize, usize, usize, i8)> = Vec::new();
        for &l in &self.letters {
            let p = l.unsigned_abs() as usize - 1;
            let (left, right) = (cur[p], cur[p + 1]);
            let a = next_edge; // exits at position p
            let b = next_edge + 1; // exits at position p+1
            next_edge += 2;
            if l > 0 {
                // left strand goes over: over left->b, under right->a
                raw.push((right, left, a, b, 1));
            } else {
                // right strand goes over: over right->a, under left->b
                raw.push((left, right, b, a, -1));
            }
            cur[p] = a;
            cur[p + 1] = b;
        }
        // closure: bottom edge of each position is the same edge as its top
        let mut uf = Uf::new(next_edge);
        for j in 0..self.strands {
            uf.union(cur[j], j);
        }
        let rep: Vec<usize> = {
            let mut v = Vec::with_capacity(next_edge);
            for e in 0..next_edge {
                v.push(uf.find(e));
            }
            v
        };
        // traverse the knot to assign labels 1..2c in strand order
        let c = raw.len();
        let mut out_of: Vec<Option<usize>> = vec![None; next_edge]; // incoming rep -> out rep
        for &(ui, oi, uo, oo, _) in &raw {
            out_of[rep[ui]] = Some(rep[uo]);
            out_of[rep[oi]] = Some(rep[oo]);
        }
        let start = rep[0];
        let mut label = vec![0usize; next_edge];
        let mut e = start;
        for time in 1..=2 * c {
            if label[e] != 0 {
                return Err(DiagramError::MultiComponent(2));
            }
            label[e] = time;
            e = out_of[e].ok_or(DiagramError::MultiComponent(2))?;
        }
        if e != start {
            return Err(DiagramError::MultiComponent(2));
        }
        let mut tuples = Vec::with_capacity(c);
        for &(ui, oi, uo, oo, sign) in &raw {
            let (a, cc) = (label[rep[ui]], label[rep[uo]]);
            let (b, d) = if sign == 1 {
                (label[rep[oi]], label[rep[oo]])
            } else {
                (label[rep[oo]], label[rep[oi]])
            };
            tuples.push([a, b, cc, d]);
        }
        PlanarDiagram::from_tuples(tuples)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sep = s.find(';').ok_or(DiagramError::Syntax {
            pos: s.len(),
            msg: "expected `;` after strand count".into(),
        })?;
        let strands: usize = s[..sep]
            .trim()
            .parse()
            .map_err(|_| DiagramError::Syntax { pos: 0, msg: "bad strand count".into() })?;
        let mut letters = Vec::new();
        for tok in s[sep + 1..].split_whitespace() {
            let l: i64 = tok
                .parse()
                .map_err(|_| DiagramError::BadEntry(tok.to_string()))?;
            letters.push(l);
        }
        Self::new(strands, letters)
    }
}

/// Parses whitespace-separated signed integers as a DT code.
pub fn parse_dt_entries(text: &str) -> Result<Vec<i64>, DiagramError> {
    text.split_whitespace()
        .map(|tok| tok.parse::<i64>().map_err(|_| DiagramError::BadEntry(tok.to_string())))
        .collect()
}
