//! Greedy lifting of a base matrix to a non-binary QC parity-check matrix.
//!
//! Each base edge receives a monomial `β·x^z`. The lifter enumerates the
//! short cycles of the base graph, tracks which of them are eliminated (the
//! polynomial submatrix on the cycle's rows and columns has a nonzero
//! determinant), and randomly redraws one edge at a time, keeping a draw
//! only when the ACE vector of the uneliminated cycles strictly improves.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::{AceValue, AceVector, BaseMatrix, Cycle, Rational, TannerGraph};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Gf};
use crate::gfmat::GfMatrix;
use crate::poly::{monomial_determinant, Monomial, PolyMatrix, RingElement, MAX_DET_SIZE};

/// A base matrix together with one monomial per base edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifting {
    base: BaseMatrix,
    s: usize,
    field: FieldSpec,
    grid: Vec<Option<Monomial>>,
}

impl Lifting {
    /// Every edge set to `1·x^0`.
    pub fn identity(base: BaseMatrix, s: usize, field: FieldSpec) -> Result<Self> {
        let assignments: Vec<_> = base
            .edges()
            .into_iter()
            .map(|(i, j)| (i, j, Monomial::new(Gf::ONE, 0)))
            .collect();
        Self::from_assignments(base, s, field, &assignments)
    }

    /// From an explicit `(row, col, monomial)` list covering every base edge
    /// exactly once.
    pub fn from_assignments(
        base: BaseMatrix,
        s: usize,
        field: FieldSpec,
        assignments: &[(usize, usize, Monomial)],
    ) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter(
                "circulant size must be positive".into(),
            ));
        }
        let (m, n) = (base.m(), base.n());
        let mut grid = vec![None; m * n];
        for &(i, j, mono) in assignments {
            if i >= m || j >= n || !base.get(i, j) {
                return Err(Error::Dimension(format!("({i}, {j}) is not a base edge")));
            }
            check_monomial(mono, s, &field)?;
            if grid[i * n + j].replace(mono).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "edge ({i}, {j}) assigned twice"
                )));
            }
        }
        if let Some((i, j)) = base
            .edges()
            .into_iter()
            .find(|&(i, j)| grid[i * n + j].is_none())
        {
            return Err(Error::Unassigned(i, j));
        }
        Ok(Self {
            base,
            s,
            field,
            grid,
        })
    }

    pub fn base(&self) -> &BaseMatrix {
        &self.base
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Monomial> {
        self.grid[i * self.base.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, mono: Monomial) -> Result<()> {
        if i >= self.base.m() || j >= self.base.n() || !self.base.get(i, j) {
            return Err(Error::Dimension(format!("({i}, {j}) is not a base edge")));
        }
        check_monomial(mono, self.s, &self.field)?;
        self.grid[i * self.base.n() + j] = Some(mono);
        Ok(())
    }

    /// `(row, col, monomial)` for every base edge, column-major.
    pub fn assignments(&self) -> Vec<(usize, usize, Monomial)> {
        self.base
            .edges()
            .into_iter()
            .map(|(i, j)| (i, j, self.get(i, j).expect("lifting is complete")))
            .collect()
    }

    /// Code length in field symbols, `n·s`.
    pub fn code_length(&self) -> usize {
        self.base.n() * self.s
    }

    pub fn poly_matrix(&self) -> PolyMatrix {
        let n = self.base.n();
        let grid: Vec<Vec<Option<Monomial>>> = self.grid.chunks(n).map(<[_]>::to_vec).collect();
        PolyMatrix::from_monomials(self.s, &grid).expect("grid is rectangular")
    }

    /// The (m·s)×(n·s) parity-check matrix over GF(q).
    pub fn expand(&self) -> GfMatrix {
        self.poly_matrix().expand()
    }

    /// Tanner graph of the expanded matrix, built without the dense form.
    pub fn tanner_graph(&self) -> TannerGraph {
        let s = self.s;
        let mut checks = vec![Vec::new(); self.base.m() * s];
        for (i, j, mono) in self.assignments() {
            for c in 0..s {
                checks[i * s + (c + mono.shift) % s].push(j * s + c);
            }
        }
        for row in &mut checks {
            row.sort_unstable();
        }
        TannerGraph::from_check_lists(self.code_length(), checks)
    }

    fn cycle_grid(&self, c: &Cycle) -> Result<(Vec<usize>, Vec<usize>, Vec<Option<Monomial>>)> {
        let rows = c.rows();
        let cols = c.columns();
        for &(i, j) in c.edges() {
            if i >= self.base.m() || j >= self.base.n() || self.get(i, j).is_none() {
                return Err(Error::Unassigned(i, j));
            }
        }
        let grid = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Ok((rows, cols, grid))
    }

    /// `det(H(x)_{I,J})` over the cycle's rows `I` and columns `J`, by
    /// cofactor expansion of the full submatrix.
    pub fn cycle_determinant(&self, c: &Cycle) -> Result<RingElement> {
        let (rows, cols, _) = self.cycle_grid(c)?;
        self.poly_matrix()
            .submatrix(&rows, &cols)
            .determinant(&self.field)
    }

    /// Whether the cycle is eliminated, i.e. its submatrix determinant is
    /// nonzero.
    pub fn cycle_eliminated(&self, c: &Cycle) -> Result<bool> {
        let (rows, cols, grid) = self.cycle_grid(c)?;
        let k = rows.len();
        if k != cols.len() {
            return Err(Error::NotSquare {
                rows: k,
                cols: cols.len(),
            });
        }
        if k > MAX_DET_SIZE {
            return Err(Error::UnsupportedSize(k));
        }
        if k == 2 {
            let m = |t: usize| grid[t].expect("4-cycle covers its whole submatrix");
            return Ok(four_cycle_eliminated(
                [m(0), m(1), m(2), m(3)],
                self.s,
                &self.field,
            ));
        }
        let rows: Vec<&[Option<Monomial>]> = grid.chunks(k).collect();
        Ok(!monomial_determinant(&rows, self.s, &self.field).is_zero())
    }

    /// ACE vector over `cycles`, recomputing every elimination status.
    pub fn ace_vector(&self, cycles: &[Cycle], depth: usize) -> Result<AceVector> {
        let mut tagged = Vec::with_capacity(cycles.len());
        for c in cycles {
            tagged.push((c, self.cycle_eliminated(c)?));
        }
        Ok(AceVector::from_cycles(&self.base, tagged, depth))
    }
}

fn check_monomial(mono: Monomial, s: usize, field: &FieldSpec) -> Result<()> {
    if mono.beta.is_zero() || !field.contains(mono.beta) {
        return Err(Error::InvalidParameter(format!(
            "coefficient {} not a nonzero element of GF({})",
            mono.beta,
            field.q()
        )));
    }
    if mono.shift >= s {
        return Err(Error::InvalidParameter(format!(
            "shift {} not below {s}",
            mono.shift
        )));
    }
    Ok(())
}

/// Elimination test for a 4-cycle with entries `[a, b, c, d]` at
/// `(i,j), (i,j'), (i',j), (i',j')`: the cycle survives exactly when
/// `z_a + z_d ≡ z_b + z_c (mod s)` and `β_a·β_d = β_b·β_c`.
pub fn four_cycle_eliminated(entries: [Monomial; 4], s: usize, field: &FieldSpec) -> bool {
    let [a, b, c, d] = entries;
    let same_shift = (a.shift + d.shift) % s == (b.shift + c.shift) % s;
    let same_coeff = field.mul(a.beta, d.beta) == field.mul(b.beta, c.beta);
    !(same_shift && same_coeff)
}

/// Parameters of the greedy lifting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    /// Circulant size.
    pub s: usize,
    /// Field order, a power of two.
    pub q: usize,
    /// Longest cycle length considered.
    pub depth: usize,
    pub trials_per_edge: usize,
    pub seed: u64,
    /// Maximum number of cycles kept per (column, length).
    pub cycle_cap: Option<usize>,
    #[serde(default)]
    pub init: InitialAssignment,
}

/// Starting point of the greedy search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialAssignment {
    /// Every edge drawn uniformly, from the same generator as the trials.
    #[default]
    Random,
    /// Every edge `1·x^0`.
    Identity,
}

pub const DEFAULT_TRIALS_PER_EDGE: usize = 100;
pub const DEFAULT_CYCLE_CAP: usize = 200_000;

impl ConstructionConfig {
    pub fn new(s: usize, q: usize, depth: usize, seed: u64) -> Self {
        Self {
            s,
            q,
            depth,
            trials_per_edge: DEFAULT_TRIALS_PER_EDGE,
            seed,
            cycle_cap: Some(DEFAULT_CYCLE_CAP),
            init: InitialAssignment::Random,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.depth < 4 || !self.depth.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "depth must be even and at least 4, got {}",
                self.depth
            )));
        }
        if self.depth > 2 * MAX_DET_SIZE {
            return Err(Error::InvalidParameter(format!(
                "depth {} exceeds the supported maximum {}",
                self.depth,
                2 * MAX_DET_SIZE
            )));
        }
        if self.trials_per_edge == 0 {
            return Err(Error::InvalidParameter(
                "trials per edge must be at least 1".into(),
            ));
        }
        if self.s < 2 {
            return Err(Error::InvalidParameter(format!(
                "circulant size must be at least 2, got {}",
                self.s
            )));
        }
        FieldSpec::from_order(self.q)?;
        Ok(())
    }
}

/// One accepted draw of the greedy search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptedTrial {
    pub edge: (usize, usize),
    pub trial: usize,
    pub monomial: Monomial,
    pub ace: AceVector,
}

/// Cycle counts for one cycle length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthStats {
    pub length: usize,
    pub eliminated: usize,
    pub uneliminated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub config: ConstructionConfig,
    pub initial_ace: AceVector,
    pub final_ace: AceVector,
    pub per_length: Vec<LengthStats>,
    /// Girth of the expanded Tanner graph; `None` if acyclic.
    pub girth: Option<usize>,
    pub trials: usize,
    pub accepted: Vec<AcceptedTrial>,
    /// Cycle lengths at which enumeration stopped at the cap.
    pub capped_lengths: Vec<usize>,
}

impl ConstructionReport {
    /// Construction log, one line per accepted trial.
    pub fn log_lines(&self) -> Vec<String> {
        self.accepted
            .iter()
            .map(|a| {
                format!(
                    "edge ({}, {}) trial {} -> beta {} shift {} ace {}",
                    a.edge.0, a.edge.1, a.trial, a.monomial.beta, a.monomial.shift, a.ace
                )
            })
            .collect()
    }
}

/// Uneliminated-cycle tally: per length, ACE value -> count.
struct Tally {
    depth: usize,
    by_length: Vec<BTreeMap<u32, usize>>,
}

impl Tally {
    fn new(depth: usize) -> Self {
        Self {
            depth,
            by_length: vec![BTreeMap::new(); depth / 2 + 1],
        }
    }

    fn insert(&mut self, len: usize, ace: u32) {
        *self.by_length[len / 2].entry(ace).or_default() += 1;
    }

    fn remove(&mut self, len: usize, ace: u32) {
        let map = &mut self.by_length[len / 2];
        let cnt = map.get_mut(&ace).expect("tallied cycle");
        *cnt -= 1;
        if *cnt == 0 {
            map.remove(&ace);
        }
    }

    fn vector(&self) -> AceVector {
        let values = (4..=self.depth)
            .step_by(2)
            .map(|len| {
                self.by_length[len / 2]
                    .keys()
                    .next()
                    .map_or(AceValue::Infinite, |&v| AceValue::Finite(v))
            })
            .collect();
        AceVector::from_values(self.depth, values).expect("depth matches")
    }
}

/// Greedy randomized lifting.
///
/// Starts from a random lifting, replaced by the all-`1·x^0` one when that
/// has the larger ACE vector (or always under
/// [`InitialAssignment::Identity`]), and visits the edges variable node by
/// variable node. Each edge gets `trials_per_edge` uniform draws of
/// `(shift, coefficient)`; a draw is kept when the global ACE vector strictly
/// exceeds the best one accepted so far and reverted otherwise. Until the
/// first acceptance the reference is the initial vector and ties are kept.
pub fn greedy_lift(
    base: &BaseMatrix,
    cfg: &ConstructionConfig,
) -> Result<(Lifting, ConstructionReport)> {
    cfg.validate()?;
    base.validate()?;
    let field = FieldSpec::from_order(cfg.q)?;
    let mut lifting = Lifting::identity(base.clone(), cfg.s, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sample = |rng: &mut ChaCha8Rng| {
        let shift = rng.random_range(0..cfg.s as u64) as usize;
        let beta = Gf(rng.random_range(1..cfg.q as u64) as u8);
        Monomial::new(beta, shift)
    };
    let enumeration = base.all_cycles(cfg.depth, cfg.cycle_cap);
    let cycles = enumeration.cycles;
    let aces: Vec<u32> = cycles.iter().map(|c| base.cycle_ace(c)).collect();
    if cfg.init == InitialAssignment::Random {
        let identity = lifting.clone();
        for (i, j) in base.edges() {
            lifting.set(i, j, sample(&mut rng))?;
        }
        // never start below the all-1·x^0 lifting
        let drawn = lifting.ace_vector(&cycles, cfg.depth)?;
        if drawn
            .lex_compare(&identity.ace_vector(&cycles, cfg.depth)?)?
            .is_lt()
        {
            lifting = identity;
        }
    }
    let mut status = Vec::with_capacity(cycles.len());
    for c in &cycles {
        status.push(lifting.cycle_eliminated(c)?);
    }

    // A cycle's status depends on every edge inside its rows x columns.
    let mut affected: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (k, c) in cycles.iter().enumerate() {
        let cols = c.columns();
        for i in c.rows() {
            for &j in &cols {
                if base.get(i, j) {
                    affected.entry((i, j)).or_default().push(k);
                }
            }
        }
    }

    let mut tally = Tally::new(cfg.depth);
    for (k, c) in cycles.iter().enumerate() {
        if !status[k] {
            tally.insert(c.len(), aces[k]);
        }
    }
    let initial_ace = tally.vector();
    let mut best: Option<AceVector> = None;
    let mut accepted = Vec::new();
    let mut trials = 0;
    let mut flipped = Vec::new();

    for j in 0..base.n() {
        for &i in base.column_support(j) {
            let touched = affected.get(&(i, j)).map_or(&[][..], Vec::as_slice);
            for trial in 0..cfg.trials_per_edge {
                trials += 1;
                let draw = sample(&mut rng);
                let previous = lifting.get(i, j).expect("complete lifting");
                lifting.set(i, j, draw)?;

                flipped.clear();
                for &k in touched {
                    let now = lifting.cycle_eliminated(&cycles[k])?;
                    if now != status[k] {
                        flipped.push(k);
                        status[k] = now;
                        if now {
                            tally.remove(cycles[k].len(), aces[k]);
                        } else {
                            tally.insert(cycles[k].len(), aces[k]);
                        }
                    }
                }
                let ace = tally.vector();
                let keep = match &best {
                    None => ace.lex_compare(&initial_ace)?.is_ge(),
                    Some(b) => b.lex_compare(&ace)?.is_lt(),
                };
                if keep {
                    accepted.push(AcceptedTrial {
                        edge: (i, j),
                        trial,
                        monomial: draw,
                        ace: ace.clone(),
                    });
                    best = Some(ace);
                } else {
                    lifting.set(i, j, previous)?;
                    for &k in &flipped {
                        status[k] = !status[k];
                        if status[k] {
                            tally.remove(cycles[k].len(), aces[k]);
                        } else {
                            tally.insert(cycles[k].len(), aces[k]);
                        }
                    }
                }
            }
        }
    }

    let final_ace = tally.vector();
    let mut per_length: Vec<LengthStats> = (4..=cfg.depth)
        .step_by(2)
        .map(|length| LengthStats {
            length,
            eliminated: 0,
            uneliminated: 0,
        })
        .collect();
    for (k, c) in cycles.iter().enumerate() {
        let stats = &mut per_length[c.len() / 2 - 2];
        if status[k] {
            stats.eliminated += 1;
        } else {
            stats.uneliminated += 1;
        }
    }
    let girth = lifting.tanner_graph().girth();
    let report = ConstructionReport {
        config: cfg.clone(),
        initial_ace,
        final_ace,
        per_length,
        girth,
        trials,
        accepted,
        capped_lengths: enumeration.capped_lengths,
    };
    Ok((lifting, report))
}

/// `1 - m/n`.
pub fn rate_lower_bound(base: &BaseMatrix) -> Rational {
    Rational::new(base.n() as i64 - base.m() as i64, base.n() as i64)
}

/// Upper bound `ℓ!·ℓ^(m-ℓ)·(m+1)` on the minimum distance of a QC code
/// whose base has column weight `ℓ` and `m` rows.
pub fn distance_upper_bound(ell: usize, m: usize) -> Result<u128> {
    if ell == 0 || m == 0 || ell > m {
        return Err(Error::InvalidParameter(format!(
            "distance bound needs 1 <= ell <= m, got ell={ell} m={m}"
        )));
    }
    let fact: u128 = (1..=ell as u128).product();
    let pow = (ell as u128)
        .checked_pow((m - ell) as u32)
        .ok_or_else(|| Error::InvalidParameter("distance bound overflows".into()))?;
    fact.checked_mul(pow)
        .and_then(|v| v.checked_mul(m as u128 + 1))
        .ok_or_else(|| Error::InvalidParameter("distance bound overflows".into()))
}
