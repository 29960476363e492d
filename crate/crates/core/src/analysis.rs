//! Structural summary of a base matrix, a lifting, or a scalar matrix:
//! rate and distance bounds, degree profile, girth and cycle spectrum.

use std::collections::BTreeMap;
use std::fmt;

use crate::base::{AceVector, BaseMatrix, Rational, TannerGraph};
use crate::error::Result;
use crate::gfmat::GfMatrix;
use crate::lifter::{distance_upper_bound, rate_lower_bound, Lifting};

/// Distance bounds below this value mark a base as prone to an error floor.
pub const DEFAULT_FLOOR_THRESHOLD: u128 = 100;

/// Cycles of one length found in the base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSpectrum {
    pub length: usize,
    pub cycles: usize,
    /// Cycles left uneliminated by a lifting; `None` for a bare base.
    pub uneliminated: Option<usize>,
    /// ACE value -> count, over the uneliminated cycles of a lifting or
    /// over all cycles of a bare base.
    pub ace_counts: BTreeMap<u32, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub kind: &'static str,
    pub rows: usize,
    pub cols: usize,
    pub rate_bound: Rational,
    /// Column weight -> number of columns.
    pub column_weights: BTreeMap<usize, usize>,
    pub distance_bound: Option<u128>,
    pub floor_threshold: u128,
    pub girth: Option<usize>,
    pub depth: usize,
    pub spectrum: Vec<LengthSpectrum>,
    pub ace: Option<AceVector>,
    pub capped_lengths: Vec<usize>,
}

impl Analysis {
    /// Whether the distance bound lies below the floor threshold; `None`
    /// when no bound applies.
    pub fn floor_prone(&self) -> Option<bool> {
        self.distance_bound.map(|d| d < self.floor_threshold)
    }

    pub fn analyze_base(
        base: &BaseMatrix,
        depth: usize,
        cycle_cap: Option<usize>,
        threshold: u128,
    ) -> Result<Self> {
        base.validate()?;
        let enumeration = base.all_cycles(depth, cycle_cap);
        let mut spectrum = empty_spectrum(depth);
        for c in &enumeration.cycles {
            let entry = &mut spectrum[c.len() / 2 - 2];
            entry.cycles += 1;
            *entry.ace_counts.entry(base.cycle_ace(c)).or_default() += 1;
        }
        let ace =
            AceVector::from_cycles(base, enumeration.cycles.iter().map(|c| (c, false)), depth);
        Ok(Self {
            kind: "base matrix",
            girth: base.tanner_graph().girth(),
            ace: Some(ace),
            spectrum,
            capped_lengths: enumeration.capped_lengths,
            ..Self::base_profile(base, depth, threshold)
        })
    }

    pub fn analyze_lifting(
        lifting: &Lifting,
        depth: usize,
        cycle_cap: Option<usize>,
        threshold: u128,
    ) -> Result<Self> {
        let base = lifting.base();
        let enumeration = base.all_cycles(depth, cycle_cap);
        let mut spectrum = empty_spectrum(depth);
        for entry in &mut spectrum {
            entry.uneliminated = Some(0);
        }
        let mut tagged = Vec::with_capacity(enumeration.cycles.len());
        for c in &enumeration.cycles {
            let eliminated = lifting.cycle_eliminated(c)?;
            let entry = &mut spectrum[c.len() / 2 - 2];
            entry.cycles += 1;
            if !eliminated {
                *entry.uneliminated.as_mut().expect("set above") += 1;
                *entry.ace_counts.entry(base.cycle_ace(c)).or_default() += 1;
            }
            tagged.push((c, eliminated));
        }
        Ok(Self {
            kind: "quasi-cyclic lifting",
            girth: lifting.tanner_graph().girth(),
            ace: Some(AceVector::from_cycles(base, tagged, depth)),
            spectrum,
            capped_lengths: enumeration.capped_lengths,
            ..Self::base_profile(base, depth, threshold)
        })
    }

    /// A scalar matrix without QC structure: no base, so no distance bound
    /// and no cycle spectrum.
    pub fn analyze_matrix(h: &GfMatrix, threshold: u128) -> Self {
        let mut column_weights = BTreeMap::new();
        let mut col_deg = vec![0usize; h.cols()];
        for r in 0..h.rows() {
            for (c, _) in h.row_entries(r) {
                col_deg[c] += 1;
            }
        }
        for d in col_deg {
            *column_weights.entry(d).or_default() += 1;
        }
        Self {
            kind: "scalar matrix",
            rows: h.rows(),
            cols: h.cols(),
            rate_bound: Rational::new(h.cols() as i64 - h.rows() as i64, h.cols() as i64),
            column_weights,
            distance_bound: None,
            floor_threshold: threshold,
            girth: TannerGraph::from_matrix(h).girth(),
            depth: 0,
            spectrum: Vec::new(),
            ace: None,
            capped_lengths: Vec::new(),
        }
    }

    fn base_profile(base: &BaseMatrix, depth: usize, threshold: u128) -> Self {
        let mut column_weights = BTreeMap::new();
        for j in 0..base.n() {
            *column_weights.entry(base.column_degree(j)).or_default() += 1;
        }
        let distance_bound = base
            .regular_column_weight()
            .and_then(|ell| distance_upper_bound(ell, base.m()).ok());
        Self {
            kind: "base matrix",
            rows: base.m(),
            cols: base.n(),
            rate_bound: rate_lower_bound(base),
            column_weights,
            distance_bound,
            floor_threshold: threshold,
            girth: None,
            depth,
            spectrum: Vec::new(),
            ace: None,
            capped_lengths: Vec::new(),
        }
    }
}

fn empty_spectrum(depth: usize) -> Vec<LengthSpectrum> {
    (4..=depth)
        .step_by(2)
        .map(|length| LengthSpectrum {
            length,
            cycles: 0,
            uneliminated: None,
            ace_counts: BTreeMap::new(),
        })
        .collect()
}

fn counts<K: fmt::Display>(map: &BTreeMap<K, usize>) -> String {
    let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} x {}", self.kind, self.rows, self.cols)?;
        writeln!(
            f,
            "rate lower bound: {} ({:.6})",
            self.rate_bound,
            self.rate_bound.to_f64()
        )?;
        writeln!(f, "column weights: {}", counts(&self.column_weights))?;
        match self.distance_bound {
            Some(d) => writeln!(f, "distance upper bound: D(C) <= {d}")?,
            None => writeln!(f, "distance upper bound: n/a (not column-regular)")?,
        }
        match self.floor_prone() {
            Some(true) => writeln!(
                f,
                "floor-prone: yes (distance bound below {})",
                self.floor_threshold
            )?,
            Some(false) => writeln!(f, "floor-prone: no (threshold {})", self.floor_threshold)?,
            None => writeln!(f, "floor-prone: unknown")?,
        }
        match self.girth {
            Some(g) => writeln!(f, "girth: {g}")?,
            None => writeln!(f, "girth: inf")?,
        }
        if self.depth > 0 {
            writeln!(f, "cycle spectrum up to length {}:", self.depth)?;
            for s in &self.spectrum {
                write!(f, "  length {}: {} cycles", s.length, s.cycles)?;
                if let Some(u) = s.uneliminated {
                    write!(f, ", {u} uneliminated")?;
                }
                if !s.ace_counts.is_empty() {
                    write!(f, ", ace {}", counts(&s.ace_counts))?;
                }
                writeln!(f)?;
            }
        }
        if let Some(ace) = &self.ace {
            writeln!(f, "ace vector: {ace}")?;
        }
        if !self.capped_lengths.is_empty() {
            writeln!(
                f,
                "cycle enumeration capped at lengths {:?}",
                self.capped_lengths
            )?;
        }
        Ok(())
    }
}
