//! Binary base matrices, their Tanner graphs, cycle enumeration and the
//! ACE (approximate cycle extrinsic message degree) bookkeeping.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::gfmat::GfMatrix;

/// A binary m×n protograph matrix. Rows are check nodes, columns are
/// variable nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMatrix {
    m: usize,
    n: usize,
    bits: Vec<bool>,
    column_degrees: Vec<usize>,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl BaseMatrix {
    /// Builds a base matrix from rows of 0/1 entries.
    pub fn from_rows<T: Copy + Into<i64>>(rows: &[Vec<T>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut bits = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v.into() {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    value => {
                        return Err(Error::NonBinary {
                            row: i,
                            col: j,
                            value,
                        })
                    }
                }
            }
        }
        Ok(Self::from_bits(m, n, bits))
    }

    fn from_bits(m: usize, n: usize, bits: Vec<bool>) -> Self {
        let mut row_adj = vec![Vec::new(); m];
        let mut col_adj = vec![Vec::new(); n];
        for i in 0..m {
            for j in 0..n {
                if bits[i * n + j] {
                    row_adj[i].push(j);
                    col_adj[j].push(i);
                }
            }
        }
        let column_degrees = col_adj.iter().map(Vec::len).collect();
        Self {
            m,
            n,
            bits,
            column_degrees,
            row_adj,
            col_adj,
        }
    }

    /// Base matrix from its edge list.
    pub fn from_edges(m: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut bits = vec![false; m * n];
        for &(i, j) in edges {
            if i >= m || j >= n {
                return Err(Error::Dimension(format!("edge ({i}, {j}) outside {m}x{n}")));
            }
            bits[i * n + j] = true;
        }
        Ok(Self::from_bits(m, n, bits))
    }

    /// A column-regular base where column `j` takes the `j mod C(m, ell)`-th
    /// `ell`-subset of rows in lexicographic order.
    pub fn column_regular(m: usize, n: usize, ell: usize) -> Result<Self> {
        if ell == 0 || ell > m {
            return Err(Error::InvalidParameter(format!(
                "column weight {ell} not in 1..={m}"
            )));
        }
        let mut subsets = Vec::new();
        let mut cur = Vec::new();
        fn combos(
            start: usize,
            m: usize,
            k: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for r in start..m {
                cur.push(r);
                combos(r + 1, m, k, cur, out);
                cur.pop();
            }
        }
        combos(0, m, ell, &mut cur, &mut subsets);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| subsets[j % subsets.len()].iter().map(move |&i| (i, j)))
            .collect();
        Self::from_edges(m, n, &edges)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn column_degree(&self, j: usize) -> usize {
        self.column_degrees[j]
    }

    pub fn column_degrees(&self) -> &[usize] {
        &self.column_degrees
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.row_adj.iter().map(Vec::len).collect()
    }

    /// Columns with a one in row `i`.
    pub fn row_support(&self, i: usize) -> &[usize] {
        &self.row_adj[i]
    }

    /// Rows with a one in column `j`.
    pub fn column_support(&self, j: usize) -> &[usize] {
        &self.col_adj[j]
    }

    /// All `(row, col)` positions holding a one, column-major: for each
    /// variable node, its check nodes in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|j| self.col_adj[j].iter().map(move |&i| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.column_degrees.iter().sum()
    }

    /// Common column weight, if every column has the same degree.
    pub fn regular_column_weight(&self) -> Option<usize> {
        let first = self.column_degrees[0];
        self.column_degrees
            .iter()
            .all(|&d| d == first)
            .then_some(first)
    }

    pub fn validate(&self) -> Result<Diagnostics> {
        if self.edge_count() == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Diagnostics {
            m: self.m,
            n: self.n,
            row_degrees: self.row_degrees(),
            column_degrees: self.column_degrees.clone(),
            rate_bound: Rational::new(self.n as i64 - self.m as i64, self.n as i64),
        })
    }

    pub fn tanner_graph(&self) -> TannerGraph {
        TannerGraph {
            var_adj: self.col_adj.clone(),
            check_adj: self.row_adj.clone(),
        }
    }

    /// Every cycle through column `col` of length at most `depth`, each
    /// reported once in canonical form.
    pub fn cycles_through(&self, col: usize, depth: usize) -> Vec<Cycle> {
        self.enumerate_cycles(col, depth, None).cycles
    }

    /// Like [`cycles_through`](Self::cycles_through), keeping at most `cap`
    /// cycles of each length.
    pub fn enumerate_cycles(
        &self,
        col: usize,
        depth: usize,
        cap: Option<usize>,
    ) -> CycleEnumeration {
        self.search_cycles(col, depth, cap, false)
    }

    /// With `above_start`, only cycles whose smallest column is `col`.
    fn search_cycles(
        &self,
        col: usize,
        depth: usize,
        cap: Option<usize>,
        above_start: bool,
    ) -> CycleEnumeration {
        let mut search = CycleSearch {
            base: self,
            start: col,
            above_start,
            depth,
            cap,
            cols: vec![col],
            rows: Vec::new(),
            seen: HashSet::new(),
            out: CycleEnumeration::default(),
            per_length: vec![0; depth / 2 + 1],
        };
        if col < self.n && depth >= 4 {
            search.extend_from_column();
        }
        search.out.capped_lengths.sort_unstable();
        search.out.cycles.sort();
        search.out
    }

    /// The union of cycles through every column, deduplicated and sorted.
    pub fn all_cycles(&self, depth: usize, cap: Option<usize>) -> CycleEnumeration {
        let mut seen = HashSet::new();
        let mut out = CycleEnumeration::default();
        for j in 0..self.n {
            let e = self.search_cycles(j, depth, cap, true);
            for len in e.capped_lengths {
                if !out.capped_lengths.contains(&len) {
                    out.capped_lengths.push(len);
                }
            }
            for c in e.cycles {
                if seen.insert(c.edges.clone()) {
                    out.cycles.push(c);
                }
            }
        }
        out.capped_lengths.sort_unstable();
        out.cycles.sort();
        out
    }

    /// Number of edges leaving the cycle's variable nodes:
    /// sum over its distinct columns of `degree - 2`.
    pub fn cycle_ace(&self, c: &Cycle) -> u32 {
        c.columns()
            .iter()
            .map(|&j| self.column_degrees[j].saturating_sub(2) as u32)
            .sum()
    }
}

impl fmt::Display for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.m, self.n)?;
        for i in 0..self.m {
            let row: Vec<&str> = (0..self.n)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Text format: a line `m n` followed by `m` lines of `n` 0/1 entries.
/// Blank lines and `#` comments are ignored.
impl FromStr for BaseMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing 'm n' header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| parse_err(hl, format!("bad dimension '{t}'")))
            })
            .collect::<Result<_>>()?;
        let [m, n] = dims[..] else {
            return Err(parse_err(hl, "header must be 'm n'"));
        };
        if m == 0 || n == 0 {
            return Err(parse_err(hl, "empty base matrix"));
        }
        let mut rows = Vec::with_capacity(m);
        for (ln, line) in lines.by_ref() {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| parse_err(ln, format!("bad entry '{t}'")))
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(parse_err(
                    ln,
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            if let Some(v) = row.iter().find(|&&v| v != 0 && v != 1) {
                return Err(parse_err(ln, format!("entry {v} is not 0 or 1")));
            }
            rows.push(row);
            if rows.len() == m {
                break;
            }
        }
        if rows.len() != m {
            return Err(parse_err(
                s.lines().count(),
                format!("expected {m} rows, found {}", rows.len()),
            ));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing data after base matrix"));
        }
        Self::from_rows(&rows)
    }
}

/// A reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den).max(1) * den.signum();
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Shape and degree profile of a base matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub m: usize,
    pub n: usize,
    pub row_degrees: Vec<usize>,
    pub column_degrees: Vec<usize>,
    /// `1 - m/n`, a lower bound on the rate of any lifting.
    pub rate_bound: Rational,
}

/// A simple cycle of the Tanner graph as a closed walk of base-matrix
/// positions `(row, col)` that alternately share a row and a column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<(usize, usize)>,
}

impl Cycle {
    /// Builds a cycle from the alternating node sequence
    /// `cols[0], rows[0], cols[1], rows[1], …, rows[k-1]` (closing back to
    /// `cols[0]`), in canonical form.
    pub fn from_nodes(cols: &[usize], rows: &[usize]) -> Self {
        let k = cols.len();
        debug_assert_eq!(k, rows.len());
        let mut edges = Vec::with_capacity(2 * k);
        for t in 0..k {
            edges.push((rows[t], cols[t]));
            edges.push((rows[t], cols[(t + 1) % k]));
        }
        Self::from_edges(edges)
    }

    /// Canonicalizes a closed alternating edge sequence: rotated so the
    /// smallest edge comes first, in whichever direction is smaller.
    pub fn from_edges(edges: Vec<(usize, usize)>) -> Self {
        let len = edges.len();
        let start = (0..len).min_by_key(|&k| edges[k]).unwrap_or(0);
        let forward: Vec<_> = (0..len).map(|k| edges[(start + k) % len]).collect();
        let backward: Vec<_> = (0..len).map(|k| edges[(start + len - k) % len]).collect();
        Self {
            edges: forward.min(backward),
        }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Distinct rows, sorted.
    pub fn rows(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.edges.iter().map(|e| e.0).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Distinct columns, sorted.
    pub fn columns(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.edges.iter().map(|e| e.1).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn contains_edge(&self, e: (usize, usize)) -> bool {
        self.edges.contains(&e)
    }

    /// Checks the structural invariants against `base`: closed, alternating,
    /// simple, even length at least 4, every position a one.
    pub fn is_valid_in(&self, base: &BaseMatrix) -> bool {
        let len = self.edges.len();
        if len < 4 || !len.is_multiple_of(2) {
            return false;
        }
        if self.rows().len() != len / 2 || self.columns().len() != len / 2 {
            return false;
        }
        // The shared coordinate must alternate; the rotation may start on
        // either parity.
        let shares_row = |k: usize| self.edges[k].0 == self.edges[(k + 1) % len].0;
        let shares_col = |k: usize| self.edges[k].1 == self.edges[(k + 1) % len].1;
        let alt = |offset: usize| {
            (0..len).all(|k| {
                if (k + offset).is_multiple_of(2) {
                    shares_row(k) && !shares_col(k)
                } else {
                    shares_col(k) && !shares_row(k)
                }
            })
        };
        (alt(0) || alt(1))
            && self
                .edges
                .iter()
                .all(|&(i, j)| i < base.m && j < base.n && base.get(i, j))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// Result of a cycle search, with the lengths at which the cap was hit.
#[derive(Debug, Clone, Default)]
pub struct CycleEnumeration {
    pub cycles: Vec<Cycle>,
    pub capped_lengths: Vec<usize>,
}

struct CycleSearch<'a> {
    base: &'a BaseMatrix,
    start: usize,
    above_start: bool,
    depth: usize,
    cap: Option<usize>,
    cols: Vec<usize>,
    rows: Vec<usize>,
    seen: HashSet<Vec<(usize, usize)>>,
    out: CycleEnumeration,
    per_length: Vec<usize>,
}

impl CycleSearch<'_> {
    fn extend_from_column(&mut self) {
        let c = *self.cols.last().expect("path starts at a column");
        for &r in self.base.column_support(c) {
            if self.rows.contains(&r) {
                continue;
            }
            self.rows.push(r);
            self.extend_from_row(r);
            self.rows.pop();
        }
    }

    fn extend_from_row(&mut self, r: usize) {
        let k = self.cols.len();
        for &c in self.base.row_support(r) {
            if c == self.start {
                if k >= 2 {
                    self.record();
                }
            } else if (!self.above_start || c > self.start)
                && !self.cols.contains(&c)
                && 2 * (k + 1) <= self.depth
            {
                self.cols.push(c);
                self.extend_from_column();
                self.cols.pop();
            }
        }
    }

    fn record(&mut self) {
        let len = 2 * self.cols.len();
        let cycle = Cycle::from_nodes(&self.cols, &self.rows);
        if self.seen.contains(&cycle.edges) {
            return;
        }
        if let Some(cap) = self.cap {
            if self.per_length[len / 2] >= cap {
                if !self.out.capped_lengths.contains(&len) {
                    self.out.capped_lengths.push(len);
                }
                return;
            }
        }
        self.per_length[len / 2] += 1;
        self.seen.insert(cycle.edges.clone());
        self.out.cycles.push(cycle);
    }
}

/// One coordinate of an ACE vector; `Infinite` means no uneliminated cycle
/// of that length and compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AceValue {
    Finite(u32),
    Infinite,
}

impl fmt::Display for AceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AceValue::Finite(v) => write!(f, "{v}"),
            AceValue::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for AceValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "∞" => Ok(AceValue::Infinite),
            v => v
                .parse()
                .map(AceValue::Finite)
                .map_err(|_| Error::InvalidParameter(format!("bad ACE value '{v}'"))),
        }
    }
}

/// `(e4, e6, …, e_depth)`: the minimum ACE over uneliminated cycles of each
/// length. Larger is better.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AceVector {
    depth: usize,
    values: Vec<AceValue>,
}

impl AceVector {
    /// All coordinates infinite.
    pub fn infinite(depth: usize) -> Self {
        Self {
            depth,
            values: vec![AceValue::Infinite; depth.saturating_sub(2) / 2],
        }
    }

    pub fn from_values(depth: usize, values: Vec<AceValue>) -> Result<Self> {
        if values.len() != depth.saturating_sub(2) / 2 {
            return Err(Error::Dimension(format!(
                "ACE vector of depth {depth} needs {} entries",
                depth.saturating_sub(2) / 2
            )));
        }
        Ok(Self { depth, values })
    }

    /// Folds `(cycle length, ace)` pairs of uneliminated cycles; lengths
    /// beyond `depth` are ignored.
    pub fn from_uneliminated<I: IntoIterator<Item = (usize, u32)>>(depth: usize, items: I) -> Self {
        let mut v = Self::infinite(depth);
        for (len, ace) in items {
            if len < 4 || len > depth || len % 2 != 0 {
                continue;
            }
            let slot = &mut v.values[len / 2 - 2];
            *slot = (*slot).min(AceValue::Finite(ace));
        }
        v
    }

    /// The ACE vector of cycles tagged with their elimination status.
    pub fn from_cycles<'a, I>(base: &BaseMatrix, cycles: I, depth: usize) -> Self
    where
        I: IntoIterator<Item = (&'a Cycle, bool)>,
    {
        Self::from_uneliminated(
            depth,
            cycles
                .into_iter()
                .filter(|(_, eliminated)| !eliminated)
                .map(|(c, _)| (c.len(), base.cycle_ace(c))),
        )
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[AceValue] {
        &self.values
    }

    /// `e_len` for an even `len` in `4..=depth`.
    pub fn get(&self, len: usize) -> Option<AceValue> {
        (len >= 4 && len.is_multiple_of(2))
            .then(|| self.values.get(len / 2 - 2).copied())
            .flatten()
    }

    /// Lexicographic comparison; vectors of different depth are incomparable.
    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        if self.depth != other.depth {
            return Err(Error::Dimension(format!(
                "ACE vectors of depth {} and {}",
                self.depth, other.depth
            )));
        }
        Ok(self.values.cmp(&other.values))
    }
}

impl fmt::Display for AceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Bipartite adjacency of a parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    /// Check nodes of each variable node.
    pub var_adj: Vec<Vec<usize>>,
    /// Variable nodes of each check node.
    pub check_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_matrix(h: &GfMatrix) -> Self {
        let mut var_adj = vec![Vec::new(); h.cols()];
        let mut check_adj = vec![Vec::new(); h.rows()];
        for r in 0..h.rows() {
            for (c, _) in h.row_entries(r) {
                var_adj[c].push(r);
                check_adj[r].push(c);
            }
        }
        Self { var_adj, check_adj }
    }

    pub fn from_check_lists(n_vars: usize, check_adj: Vec<Vec<usize>>) -> Self {
        let mut var_adj = vec![Vec::new(); n_vars];
        for (r, vars) in check_adj.iter().enumerate() {
            for &v in vars {
                var_adj[v].push(r);
            }
        }
        Self { var_adj, check_adj }
    }

    /// Length of the shortest cycle, `None` if the graph is a forest.
    pub fn girth(&self) -> Option<usize> {
        let nv = self.var_adj.len();
        let total = nv + self.check_adj.len();
        let neighbors = |u: usize| -> &[usize] {
            if u < nv {
                &self.var_adj[u]
            } else {
                &self.check_adj[u - nv]
            }
        };
        let offset = |u: usize, w: usize| if u < nv { w + nv } else { w };
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        // Every cycle contains a variable node; BFS from a node on a
        // shortest cycle finds its exact length.
        for start in 0..nv {
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            queue.clear();
            dist[start] = 0;
            touched.push(start);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in neighbors(u) {
                    let w = offset(u, w);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }
}
