//! Planar diagram codes and the combinatorial map they describe.
//!
//! A crossing is a 4-tuple of edge labels listed counterclockwise, starting at the
//! incoming under-strand. Positions 0 and 2 are therefore the under-strand and
//! positions 1 and 3 the over-strand. Corner `q` of a crossing is the sector
//! between positions `q` and `q + 1` (mod 4).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed record {record}: {reason}")]
    MalformedRecord { record: usize, reason: String },
    #[error("edge label {label} appears {count} times (expected exactly 2)")]
    BadIncidence { label: u64, count: usize },
    #[error("not a planar knot diagram: {0}")]
    NotPlanarKnot(String),
    #[error("region {region} out of range ({count} regions)")]
    InvalidSelector { region: usize, count: usize },
    #[error("regions admit no proper 2-coloring")]
    NoProperColoring,
    #[error("invalid region ordering: {0}")]
    InvalidOrdering(String),
}

/// Edge labels around one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing(pub [u64; 4]);

impl Crossing {
    pub fn edge(&self, position: usize) -> u64 {
        self.0[position % 4]
    }
}

/// A sector of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Corner {
    pub crossing: usize,
    pub position: usize,
}

impl Corner {
    pub fn new(crossing: usize, position: usize) -> Self {
        Self {
            crossing,
            position: position % 4,
        }
    }
}

/// A validated knot diagram. The zero-crossing unknot has no crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    name: Option<String>,
    #[serde(skip)]
    edge_ends: BTreeMap<u64, [Corner; 2]>,
}

impl Diagram {
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            name: Some("unknot".to_string()),
            edge_ends: BTreeMap::new(),
        }
    }

    /// Validates the incidence structure, single component, and Euler count.
    pub fn from_crossings(crossings: Vec<[u64; 4]>) -> Result<Self, DiagramError> {
        let crossings: Vec<Crossing> = crossings.into_iter().map(Crossing).collect();
        let mut ends: BTreeMap<u64, Vec<Corner>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for q in 0..4 {
                ends.entry(x.0[q]).or_default().push(Corner::new(c, q));
            }
        }
        if let Some((&label, v)) = ends.iter().find(|(_, v)| v.len() != 2) {
            return Err(DiagramError::BadIncidence {
                label,
                count: v.len(),
            });
        }
        let edge_ends = ends.into_iter().map(|(l, v)| (l, [v[0], v[1]])).collect();
        let d = Self {
            crossings,
            name: None,
            edge_ends,
        };
        if d.crossings.is_empty() {
            return Ok(Self::unknot());
        }
        let components = d.strand_components();
        if components != 1 {
            return Err(DiagramError::NotPlanarKnot(format!(
                "{components} link components"
            )));
        }
        let faces = trace_faces(&d).len();
        if faces != d.crossing_count() + 2 {
            return Err(DiagramError::NotPlanarKnot(format!(
                "{faces} faces for {} crossings",
                d.crossing_count()
            )));
        }
        Ok(d)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn is_unknot(&self) -> bool {
        self.crossings.is_empty()
    }

    /// The other end of the edge leaving `(crossing, position)`.
    pub fn opposite_end(&self, crossing: usize, position: usize) -> Corner {
        let here = Corner::new(crossing, position);
        let [a, b] = self.edge_ends[&self.crossings[crossing].edge(position)];
        if a == here {
            b
        } else {
            a
        }
    }

    fn strand_components(&self) -> usize {
        let mut seen = BTreeMap::new();
        let mut components = 0;
        for &start in self.edge_ends.keys() {
            if seen.contains_key(&start) {
                continue;
            }
            components += 1;
            let mut at = self.edge_ends[&start][0];
            loop {
                let label = self.crossings[at.crossing].edge(at.position);
                if seen.insert(label, ()).is_some() {
                    break;
                }
                // go straight through the crossing, then along the next edge
                let through = Corner::new(at.crossing, at.position + 2);
                at = self.opposite_end(through.crossing, through.position);
            }
        }
        components
    }
}

fn trace_faces(d: &Diagram) -> Vec<Vec<Corner>> {
    let n = d.crossing_count();
    let mut seen = vec![[false; 4]; n];
    let mut faces = Vec::new();
    for c in 0..n {
        for q in 0..4 {
            if seen[c][q] {
                continue;
            }
            let mut face = Vec::new();
            let mut at = Corner::new(c, q);
            while !seen[at.crossing][at.position] {
                seen[at.crossing][at.position] = true;
                face.push(at);
                // leave along the edge bounding this corner counterclockwise; the
                // arriving end indexes the next corner of the same face
                at = d.opposite_end(at.crossing, at.position + 1);
            }
            faces.push(face);
        }
    }
    faces
}

/// Parses PD-code text: records `X a b c d` or `X[a,b,c,d]` separated by
/// newlines, slashes, commas or whitespace, an optional `PD[...]` wrapper, `#`
/// comments, or the single token `unknot`.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let tokens: Vec<&str> = cleaned
        .split(|ch: char| ch.is_whitespace() || "[](),/;".contains(ch))
        .filter(|t| !t.is_empty())
        .collect();

    if tokens.len() == 1 && tokens[0].eq_ignore_ascii_case("unknot") {
        return Ok(Diagram::unknot());
    }
    let mut records: Vec<Vec<&str>> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if tok.eq_ignore_ascii_case("pd") && i == 0 {
            continue;
        }
        if tok.eq_ignore_ascii_case("x") {
            records.push(Vec::new());
            continue;
        }
        match records.last_mut() {
            Some(r) => r.push(tok),
            None => {
                return Err(DiagramError::MalformedRecord {
                    record: 0,
                    reason: format!("unexpected token {tok:?} before first crossing"),
                })
            }
        }
    }
    if records.is_empty() {
        return Err(DiagramError::MalformedRecord {
            record: 0,
            reason: "no crossing records".to_string(),
        });
    }
    let mut crossings = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        let record = i + 1;
        if rec.len() != 4 {
            return Err(DiagramError::MalformedRecord {
                record,
                reason: format!("expected 4 edge labels, found {}", rec.len()),
            });
        }
        let mut labels = [0u64; 4];
        for (slot, tok) in labels.iter_mut().zip(rec) {
            *slot = match tok.parse::<u64>() {
                Ok(v) if v > 0 => v,
                _ => {
                    return Err(DiagramError::MalformedRecord {
                        record,
                        reason: format!("{tok:?} is not a positive integer label"),
                    })
                }
            };
        }
        crossings.push(labels);
    }
    Diagram::from_crossings(crossings)
}

/// The complementary regions of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionSet {
    regions: Vec<Vec<Corner>>,
    #[serde(skip)]
    corner_region: Vec<[usize; 4]>,
}

impl RegionSet {
    pub fn regions(&self) -> &[Vec<Corner>] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn region_at(&self, crossing: usize, position: usize) -> usize {
        self.corner_region[crossing][position % 4]
    }

    /// Region on each side of the edge at `(crossing, position)`:
    /// corner `position - 1` and corner `position`.
    pub fn edge_sides(&self, crossing: usize, position: usize) -> (usize, usize) {
        (
            self.region_at(crossing, position + 3),
            self.region_at(crossing, position),
        )
    }

    /// Number of distinct edges separating each unordered pair of regions.
    pub fn shared_edge_counts(&self, d: &Diagram) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for [end, _] in d.edge_ends.values() {
            let (a, b) = self.edge_sides(end.crossing, end.position);
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        counts
    }
}

/// Faces by corner-to-corner traversal, in order of discovery (crossing-major,
/// then corner position). The zero-crossing unknot has two cornerless faces.
pub fn faces(d: &Diagram) -> RegionSet {
    if d.is_unknot() {
        return RegionSet {
            regions: vec![Vec::new(), Vec::new()],
            corner_region: Vec::new(),
        };
    }
    let regions = trace_faces(d);
    let mut corner_region = vec![[usize::MAX; 4]; d.crossing_count()];
    for (i, f) in regions.iter().enumerate() {
        for c in f {
            corner_region[c.crossing][c.position] = i;
        }
    }
    RegionSet {
        regions,
        corner_region,
    }
}

/// A proper 2-coloring of the regions with one class marked shaded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checkerboard {
    shaded: Vec<bool>,
    ordering: Vec<usize>,
    b: usize,
}

impl Checkerboard {
    pub fn is_shaded(&self, region: usize) -> bool {
        self.shaded[region]
    }

    /// Regions in column order: shaded ones first.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn shaded_count(&self) -> usize {
        self.b
    }

    pub fn region_count(&self) -> usize {
        self.shaded.len()
    }

    pub fn shaded_regions(&self) -> &[usize] {
        &self.ordering[..self.b]
    }

    pub fn unshaded_regions(&self) -> &[usize] {
        &self.ordering[self.b..]
    }

    /// Same coloring with the shaded class exchanged.
    pub fn swapped(&self) -> Checkerboard {
        let shaded: Vec<bool> = self.shaded.iter().map(|s| !s).collect();
        let ordering = self
            .unshaded_regions()
            .iter()
            .chain(self.shaded_regions())
            .copied()
            .collect();
        Checkerboard {
            b: self.shaded.len() - self.b,
            shaded,
            ordering,
        }
    }

    /// Replaces the column ordering. `order` must be a permutation of the regions
    /// listing every shaded region before any unshaded one.
    pub fn with_ordering(&self, order: Vec<usize>) -> Result<Checkerboard, DiagramError> {
        let m = self.shaded.len();
        let mut seen = vec![false; m];
        if order.len() != m {
            return Err(DiagramError::InvalidOrdering(format!(
                "{} entries for {m} regions",
                order.len()
            )));
        }
        for (i, &r) in order.iter().enumerate() {
            if r >= m || seen[r] {
                return Err(DiagramError::InvalidOrdering(format!(
                    "not a permutation at entry {i}"
                )));
            }
            seen[r] = true;
            if self.shaded[r] != (i < self.b) {
                return Err(DiagramError::InvalidOrdering(format!(
                    "region {r} at column {i} breaks shaded-first order"
                )));
            }
        }
        Ok(Checkerboard {
            shaded: self.shaded.clone(),
            ordering: order,
            b: self.b,
        })
    }
}

/// Two-colors the regions so that regions across an edge differ. The class
/// containing `shade_selector` is shaded; by default that is the region at
/// corner 0 of the first crossing (region 0 for the zero-crossing unknot).
pub fn checkerboard(
    d: &Diagram,
    r: &RegionSet,
    shade_selector: Option<usize>,
) -> Result<Checkerboard, DiagramError> {
    let m = r.region_count();
    let selector = match shade_selector {
        Some(s) if s >= m => {
            return Err(DiagramError::InvalidSelector {
                region: s,
                count: m,
            })
        }
        Some(s) => s,
        None if d.is_unknot() => 0,
        None => r.region_at(0, 0),
    };
    let mut adj = vec![Vec::new(); m];
    for [end, _] in d.edge_ends.values() {
        let (a, b) = r.edge_sides(end.crossing, end.position);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color: Vec<Option<bool>> = vec![None; m];
    color[selector] = Some(true);
    let mut queue = VecDeque::from([selector]);
    while let Some(x) = queue.pop_front() {
        let cx = color[x].expect("queued regions are colored");
        for &y in &adj[x] {
            match color[y] {
                None => {
                    color[y] = Some(!cx);
                    queue.push_back(y);
                }
                Some(cy) if cy == cx => return Err(DiagramError::NoProperColoring),
                Some(_) => {}
            }
        }
    }
    // the unknot's second face is never reached through an edge
    let shaded: Vec<bool> = color.iter().map(|c| c.unwrap_or(false)).collect();
    let ordering: Vec<usize> = (0..m)
        .filter(|&i| shaded[i])
        .chain((0..m).filter(|&i| !shaded[i]))
        .collect();
    let b = shaded.iter().filter(|&&s| s).count();
    Ok(Checkerboard {
        shaded,
        ordering,
        b,
    })
}

/// Goeritz index per crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoeritzIndexTable {
    pub index: Vec<Sign>,
}

impl GoeritzIndexTable {
    pub fn new(d: &Diagram, r: &RegionSet, cb: &Checkerboard) -> Self {
        let index = (0..d.crossing_count())
            .map(|c| goeritz_index(d, r, cb, c))
            .collect();
        Self { index }
    }

    pub fn get(&self, crossing: usize) -> Sign {
        self.index[crossing]
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

/// `+1` when the shaded corners are 0 and 2 (the sectors swept by turning the
/// over-strand clockwise onto the under-strand), `-1` when they are 1 and 3.
pub fn goeritz_index(d: &Diagram, r: &RegionSet, cb: &Checkerboard, crossing: usize) -> Sign {
    assert!(
        crossing < d.crossing_count(),
        "crossing {crossing} out of range"
    );
    if cb.is_shaded(r.region_at(crossing, 0)) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Combinatorial primality test: at least one crossing, no face meeting a
/// crossing in two corners, and no two faces sharing more than one edge.
pub fn is_prime_diagram(d: &Diagram, r: &RegionSet) -> bool {
    if d.is_unknot() {
        return false;
    }
    let nugatory = (0..d.crossing_count())
        .any(|c| r.region_at(c, 0) == r.region_at(c, 2) || r.region_at(c, 1) == r.region_at(c, 3));
    !nugatory && r.shared_edge_counts(d).values().all(|&n| n < 2)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unknot() {
            return f.write_str("unknot");
        }
        let recs: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.0[0], c.0[1], c.0[2], c.0[3]))
            .collect();
        write!(f, "PD[{}]", recs.join(", "))
    }
}
