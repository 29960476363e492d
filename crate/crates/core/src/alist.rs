//! Text format for non-binary parity-check matrices.
//!
//! ```text
//! nbalist 1
//! field <q> <primitive polynomial, hex>
//! qc <m> <n> <s> <edges>          # optional compact section
//! <i> <j> <z> <beta>              # one line per base edge, 1-based
//! full <N> <M>                    # optional scalar section
//! <max column degree> <max row degree>
//! <N column degrees>
//! <M row degrees>
//! <row value> pairs, one line per column
//! <column value> pairs, one line per row
//! ```
//!
//! At least one of the two sections must be present. Field elements are
//! integer codes under the recorded polynomial; positions are 1-based.
//! `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::base::BaseMatrix;
use crate::error::{parse_err, Error, Result};
use crate::gf::{FieldSpec, Gf};
use crate::gfmat::GfMatrix;
use crate::lifter::Lifting;
use crate::poly::Monomial;

const MAGIC: &str = "nbalist";
const VERSION: u32 = 1;

/// A parity-check matrix over GF(q), optionally with its QC lifting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonBinaryAlist {
    field: FieldSpec,
    lifting: Option<Lifting>,
    matrix: GfMatrix,
}

impl NonBinaryAlist {
    pub fn from_lifting(lifting: Lifting) -> Self {
        Self {
            field: lifting.field().clone(),
            matrix: lifting.expand(),
            lifting: Some(lifting),
        }
    }

    pub fn from_matrix(matrix: GfMatrix, field: FieldSpec) -> Result<Self> {
        if matrix.nnz() == 0 {
            return Err(Error::EmptyMatrix);
        }
        if (0..matrix.rows()).any(|r| matrix.row(r).iter().any(|&v| !field.contains(v))) {
            return Err(Error::InvalidParameter(format!(
                "matrix entry outside GF({})",
                field.q()
            )));
        }
        Ok(Self {
            field,
            lifting: None,
            matrix,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn lifting(&self) -> Option<&Lifting> {
        self.lifting.as_ref()
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    /// Serializes the compact section when a lifting is known, and the
    /// scalar section when `full` is set or no lifting is known.
    pub fn to_text(&self, full: bool) -> String {
        let mut out = format!(
            "{MAGIC} {VERSION}\nfield {} {:#x}\n",
            self.field.q(),
            self.field.primitive_poly()
        );
        if let Some(l) = &self.lifting {
            write_qc(&mut out, l);
        }
        if full || self.lifting.is_none() {
            write_full(&mut out, &self.matrix);
        }
        out
    }
}

fn write_qc(out: &mut String, l: &Lifting) {
    let mut edges = l.assignments();
    edges.sort_by_key(|&(i, j, _)| (i, j));
    let (m, n) = (l.base().m(), l.base().n());
    writeln!(out, "qc {m} {n} {} {}", l.s(), edges.len()).unwrap();
    for (i, j, mono) in edges {
        writeln!(out, "{} {} {} {}", i + 1, j + 1, mono.shift, mono.beta).unwrap();
    }
}

fn write_full(out: &mut String, h: &GfMatrix) {
    let (m, n) = (h.rows(), h.cols());
    let rows: Vec<Vec<(usize, Gf)>> = (0..m).map(|r| h.row_entries(r).collect()).collect();
    let mut cols: Vec<Vec<(usize, Gf)>> = vec![Vec::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            cols[c].push((r, v));
        }
    }
    let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
    writeln!(out, "full {n} {m}").unwrap();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(
        out,
        "{}",
        join(&mut cols.iter().map(|c| c.len().to_string()))
    )
    .unwrap();
    writeln!(
        out,
        "{}",
        join(&mut rows.iter().map(|r| r.len().to_string()))
    )
    .unwrap();
    for list in cols.iter().chain(&rows) {
        writeln!(
            out,
            "{}",
            join(&mut list.iter().map(|(p, v)| format!("{} {v}", p + 1)))
        )
        .unwrap();
    }
}

/// Whitespace tokens tagged with their 1-based line numbers.
struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(k, l)| {
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .map(move |t| (k + 1, t))
            })
            .collect();
        Self {
            items,
            pos: 0,
            last_line: text.lines().count().max(1),
        }
    }

    fn line(&self) -> usize {
        self.items.get(self.pos).map_or(self.last_line, |t| t.0)
    }

    fn next_str(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let t = self.items.get(self.pos).copied().ok_or_else(|| {
            parse_err(
                self.last_line,
                format!("unexpected end of file, expected {what}"),
            )
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn next_num<T: FromStr>(&mut self, what: &str) -> Result<(usize, T)> {
        let (line, t) = self.next_str(what)?;
        let v = t
            .parse()
            .map_err(|_| parse_err(line, format!("expected {what}, found '{t}'")))?;
        Ok((line, v))
    }

    fn keyword(&mut self, word: &str) -> Result<usize> {
        let (line, t) = self.next_str(word)?;
        if t != word {
            return Err(parse_err(line, format!("expected '{word}', found '{t}'")));
        }
        Ok(line)
    }

    fn peek(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|t| t.1)
    }
}

fn parse_field(tok: &mut Tokens<'_>) -> Result<FieldSpec> {
    let line = tok.keyword("field")?;
    let (_, q) = tok.next_num::<usize>("field order")?;
    let (pl, poly) = tok.next_str("primitive polynomial")?;
    let poly = u32::from_str_radix(poly.trim_start_matches("0x").trim_start_matches("0X"), 16)
        .map_err(|_| parse_err(pl, format!("bad polynomial '{poly}'")))?;
    if !(2..=256).contains(&q) || !q.is_power_of_two() {
        return Err(parse_err(
            line,
            format!("field order {q} is not a power of two in 2..=256"),
        ));
    }
    FieldSpec::with_poly(q.trailing_zeros(), poly).map_err(|e| parse_err(pl, e.to_string()))
}

fn parse_code(tok: &mut Tokens<'_>, field: &FieldSpec) -> Result<Gf> {
    let (line, v) = tok.next_num::<usize>("field element")?;
    if v == 0 || v >= field.q() {
        return Err(parse_err(
            line,
            format!("field code {v} not in 1..{}", field.q() - 1),
        ));
    }
    Ok(Gf(v as u8))
}

fn parse_index(tok: &mut Tokens<'_>, what: &str, bound: usize) -> Result<usize> {
    let (line, v) = tok.next_num::<usize>(what)?;
    if v == 0 || v > bound {
        return Err(parse_err(line, format!("{what} {v} not in 1..={bound}")));
    }
    Ok(v - 1)
}

fn parse_qc(tok: &mut Tokens<'_>, field: &FieldSpec) -> Result<Lifting> {
    let line = tok.keyword("qc")?;
    let (_, m) = tok.next_num::<usize>("base rows")?;
    let (_, n) = tok.next_num::<usize>("base columns")?;
    let (_, s) = tok.next_num::<usize>("circulant size")?;
    let (_, e) = tok.next_num::<usize>("edge count")?;
    if m == 0 || n == 0 || e == 0 {
        return Err(parse_err(line, "empty matrix"));
    }
    if s == 0 {
        return Err(parse_err(line, "circulant size must be positive"));
    }
    let mut edges = Vec::with_capacity(e);
    let mut seen = vec![false; m * n];
    for _ in 0..e {
        let rec_line = tok.line();
        let i = parse_index(tok, "row", m)?;
        let j = parse_index(tok, "column", n)?;
        let (zl, z) = tok.next_num::<usize>("shift")?;
        if z >= s {
            return Err(parse_err(zl, format!("shift {z} not in 0..={}", s - 1)));
        }
        let beta = parse_code(tok, field)?;
        if std::mem::replace(&mut seen[i * n + j], true) {
            return Err(parse_err(
                rec_line,
                format!("duplicate edge ({}, {})", i + 1, j + 1),
            ));
        }
        edges.push((i, j, Monomial::new(beta, z)));
    }
    let positions: Vec<(usize, usize)> = edges.iter().map(|&(i, j, _)| (i, j)).collect();
    let base =
        BaseMatrix::from_edges(m, n, &positions).map_err(|err| parse_err(line, err.to_string()))?;
    Lifting::from_assignments(base, s, field.clone(), &edges)
        .map_err(|err| parse_err(line, err.to_string()))
}

fn parse_full(tok: &mut Tokens<'_>, field: &FieldSpec) -> Result<(usize, GfMatrix)> {
    let line = tok.keyword("full")?;
    let (_, n) = tok.next_num::<usize>("column count")?;
    let (_, m) = tok.next_num::<usize>("row count")?;
    if m == 0 || n == 0 {
        return Err(parse_err(line, "empty matrix"));
    }
    let (ml, max_col) = tok.next_num::<usize>("maximum column degree")?;
    let (_, max_row) = tok.next_num::<usize>("maximum row degree")?;
    let mut degrees = |count: usize, what: &str| -> Result<Vec<usize>> {
        (0..count)
            .map(|_| tok.next_num(what).map(|t| t.1))
            .collect()
    };
    let col_deg = degrees(n, "column degree")?;
    let row_deg = degrees(m, "row degree")?;
    if col_deg.iter().max() != Some(&max_col) || row_deg.iter().max() != Some(&max_row) {
        return Err(parse_err(
            ml,
            "maximum degrees disagree with the degree lists",
        ));
    }
    if max_col == 0 {
        return Err(parse_err(line, "empty matrix"));
    }
    let mut h = GfMatrix::zeros(m, n);
    for (c, &d) in col_deg.iter().enumerate() {
        for _ in 0..d {
            let el = tok.line();
            let r = parse_index(tok, "row", m)?;
            let v = parse_code(tok, field)?;
            if !h.get(r, c).is_zero() {
                return Err(parse_err(
                    el,
                    format!("column {} lists row {} twice", c + 1, r + 1),
                ));
            }
            h.set(r, c, v);
        }
    }
    let mut seen = GfMatrix::zeros(m, n);
    for (r, &d) in row_deg.iter().enumerate() {
        for _ in 0..d {
            let el = tok.line();
            let c = parse_index(tok, "column", n)?;
            let v = parse_code(tok, field)?;
            if h.get(r, c) != v {
                return Err(parse_err(
                    el,
                    format!(
                        "row {} entry at column {} disagrees with the column lists",
                        r + 1,
                        c + 1
                    ),
                ));
            }
            if !seen.get(r, c).is_zero() {
                return Err(parse_err(
                    el,
                    format!("row {} lists column {} twice", r + 1, c + 1),
                ));
            }
            seen.set(r, c, v);
        }
    }
    // Every column entry must also appear in the row lists.
    if seen != h {
        return Err(parse_err(
            line,
            "row lists miss entries present in the column lists",
        ));
    }
    Ok((line, h))
}

impl FromStr for NonBinaryAlist {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut tok = Tokens::new(text);
        let line = tok.keyword(MAGIC)?;
        let (vl, version) = tok.next_num::<u32>("format version")?;
        if version != VERSION {
            return Err(parse_err(vl, format!("unsupported version {version}")));
        }
        let field = parse_field(&mut tok)?;
        let lifting = match tok.peek() {
            Some("qc") => Some(parse_qc(&mut tok, &field)?),
            _ => None,
        };
        let full = match tok.peek() {
            Some("full") => Some(parse_full(&mut tok, &field)?),
            _ => None,
        };
        if let Some((l, t)) = tok.items.get(tok.pos) {
            return Err(parse_err(*l, format!("unexpected '{t}'")));
        }
        match (lifting, full) {
            (None, None) => Err(parse_err(line, "file has neither a qc nor a full section")),
            (Some(l), None) => Ok(Self::from_lifting(l)),
            (None, Some((_, h))) => Ok(Self {
                field,
                lifting: None,
                matrix: h,
            }),
            (Some(l), Some((fl, h))) => {
                let expected = l.expand();
                if expected != h {
                    return Err(parse_err(
                        fl,
                        "full section does not match the expanded qc section",
                    ));
                }
                Ok(Self {
                    field,
                    lifting: Some(l),
                    matrix: h,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_one() -> Lifting {
        let base = BaseMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let m = |b: u8, z: usize| Monomial::new(Gf(b), z);
        Lifting::from_assignments(
            base,
            3,
            FieldSpec::new(2).unwrap(),
            &[
                (0, 1, m(1, 2)),
                (0, 2, m(2, 1)),
                (1, 0, m(1, 0)),
                (1, 2, m(3, 2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_one_records() {
        let text = NonBinaryAlist::from_lifting(example_one()).to_text(false);
        let records: Vec<&str> = text.lines().skip(3).collect();
        assert_eq!(records, ["1 2 2 1", "1 3 1 2", "2 1 0 1", "2 3 2 3"]);
        assert!(text.starts_with("nbalist 1\nfield 4 0x7\nqc 2 3 3 4\n"));
    }

    #[test]
    fn both_sections_round_trip() {
        let a = NonBinaryAlist::from_lifting(example_one());
        for full in [false, true] {
            let back: NonBinaryAlist = a.to_text(full).parse().unwrap();
            assert_eq!(back, a);
        }
        let scalar = NonBinaryAlist::from_matrix(a.matrix().clone(), a.field().clone()).unwrap();
        let back: NonBinaryAlist = scalar.to_text(false).parse().unwrap();
        assert_eq!(back.matrix(), a.matrix());
        assert!(back.lifting().is_none());
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", 1),
            ("nbalist 1\nfield 4 0x7\nqc 0 0 3 0\n", 3),
            ("nbalist 1\nfield 4 0x7\n", 1),
            ("nbalist 1\nfield 6 0x7\nqc 1 1 3 1\n1 1 0 1\n", 2),
            ("nbalist 1\nfield 4 0x5\nqc 1 1 3 1\n1 1 0 1\n", 2),
            ("nbalist 1\nfield 4 0x7\nqc 1 1 3 1\n1 1 3 1\n", 4),
            ("nbalist 1\nfield 4 0x7\nqc 1 1 3 1\n1 1 0 4\n", 4),
            ("nbalist 1\nfield 4 0x7\nqc 1 2 3 2\n1 1 0 1\n1 1 2 1\n", 5),
            ("nbalist 1\nfield 4 0x7\nfull 2 1\n0 0\n0 0\n0\n\n\n\n", 3),
            // row list disagrees with column list
            (
                "nbalist 1\nfield 4 0x7\nfull 2 1\n1 2\n1 1\n2\n1 1\n1 2\n1 1 2 1\n",
                9,
            ),
        ];
        for (text, line) in cases {
            match text.parse::<NonBinaryAlist>() {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        let good = NonBinaryAlist::from_lifting(example_one()).to_text(true);
        // qc section of one lifting, full section of another
        let mut other = example_one();
        other.set(0, 1, Monomial::new(Gf(1), 0)).unwrap();
        let other = NonBinaryAlist::from_lifting(other).to_text(true);
        let cut = |t: &str| t.find("full").unwrap();
        let spliced = format!("{}{}", &good[..cut(&good)], &other[cut(&other)..]);
        let full_line = spliced.lines().position(|l| l.starts_with("full")).unwrap() + 1;
        match spliced.parse::<NonBinaryAlist>() {
            Err(Error::Parse { line, .. }) => assert_eq!(line, full_line),
            other => panic!("{other:?}"),
        }
    }
}
