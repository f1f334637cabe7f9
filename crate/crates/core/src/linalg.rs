//! Exact linear algebra over graded monomial bases.
//!
//! Elimination works on integer rows: each rational row is cleared of
//! denominators once, rows are combined as `a·r - b·p` and divided by their
//! content, and only the final solution is reduced back to rationals.
//! Matrices are split into connected blocks first (columns linked through
//! shared rows) and blocks are eliminated independently.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::dgca::SemifreeDgca;
use crate::error::{Error, Result};
use crate::graded::{Element, Factor, Monomial, Signature, Q};

pub const DEFAULT_CAP: usize = 2_000_000;

/// Number of monomials of total degree `degree`; `None` if infinite (a
/// degree-0 generator that does not square to zero).
pub fn count_monomials(sig: &Signature, degree: u32) -> Option<BigUint> {
    let top = degree as usize;
    let mut series = vec![BigUint::zero(); top + 1];
    series[0] = BigUint::one();
    for id in 0..sig.len() as u32 {
        let g = sig.bidegree(id).degree as usize;
        let square_zero = sig.squares_to_zero(id);
        if g == 0 {
            if square_zero {
                // (1 + t⁰) doubles every coefficient
                series.iter_mut().for_each(|c| *c *= 2u32);
                continue;
            }
            return None;
        }
        if square_zero {
            for k in (g..=top).rev() {
                let add = series[k - g].clone();
                series[k] += add;
            }
        } else {
            for k in g..=top {
                let add = series[k - g].clone();
                series[k] += add;
            }
        }
    }
    Some(series.swap_remove(top))
}

/// Every monomial of one total degree, in canonical order.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub algebra: Arc<SemifreeDgca>,
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: FxHashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous element of this degree.
    pub fn coordinates(&self, x: &Element) -> Result<Vec<(usize, Q)>> {
        x.terms()
            .iter()
            .map(|(m, c)| {
                self.position(m).map(|i| (i, c.clone())).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "{} is not in the degree-{} basis",
                        x.signature().format_monomial(m),
                        self.degree
                    ))
                })
            })
            .collect()
    }

    pub fn element(&self, coords: &[(usize, Q)]) -> Element {
        Element::from_terms(
            self.algebra.signature(),
            coords.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())),
        )
    }
}

fn check_cap(sig: &Signature, degree: u32, cap: usize) -> Result<usize> {
    match count_monomials(sig, degree) {
        Some(n) => match n.to_usize() {
            Some(k) if k <= cap => Ok(k),
            _ => Err(Error::Capped {
                degree,
                estimate: n.to_string(),
                cap,
            }),
        },
        None => Err(Error::Capped {
            degree,
            estimate: "infinite".to_string(),
            cap,
        }),
    }
}

pub fn monomial_basis(algebra: &Arc<SemifreeDgca>, degree: u32, cap: usize) -> Result<GradedBasis> {
    let sig = algebra.signature();
    let expected = check_cap(sig, degree, cap)?;
    let mut monomials = Vec::with_capacity(expected);
    let mut stack = Vec::new();
    enumerate(sig, 0, degree, &mut stack, &mut monomials);
    monomials.sort();
    debug_assert_eq!(monomials.len(), expected);
    let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(GradedBasis {
        algebra: algebra.clone(),
        degree,
        monomials,
        index,
    })
}

fn enumerate(sig: &Signature, next: u32, left: u32, stack: &mut Vec<Factor>, out: &mut Vec<Monomial>) {
    if next as usize == sig.len() {
        if left == 0 {
            out.push(Monomial::from_sorted(stack.iter().copied()));
        }
        return;
    }
    let g = sig.bidegree(next).degree;
    let max_exp = if sig.squares_to_zero(next) {
        1
    } else if g == 0 {
        unreachable!("capped before enumeration")
    } else {
        left / g
    };
    for exp in 0..=max_exp {
        if exp * g > left {
            break;
        }
        if exp > 0 {
            stack.push(Factor { gen: next, exp });
        }
        enumerate(sig, next + 1, left - exp * g, stack, out);
        if exp > 0 {
            stack.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, v: Q) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &SparseRationalMatrix) -> SparseRationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &Q)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.entries() {
            by_row[r].push((c, v));
        }
        let mut out = SparseRationalMatrix::zeros(self.rows, other.cols);
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (r, k, a) in self.entries() {
            for (c, b) in &by_row[k] {
                *acc.entry((r, *c)).or_insert_with(Q::zero) += a * *b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        out.entries = acc;
        out
    }

    /// Rows as sparse vectors, skipping empty rows.
    fn row_lists(&self) -> Vec<(usize, Vec<(usize, Q)>)> {
        let mut out: Vec<(usize, Vec<(usize, Q)>)> = Vec::new();
        for (r, c, v) in self.entries() {
            match out.last_mut() {
                Some((last, row)) if *last == r => row.push((c, v.clone())),
                _ => out.push((r, vec![(c, v.clone())])),
            }
        }
        out
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Clear denominators and divide out the content.
fn integer_row(row: &[(usize, Q)]) -> IntRow {
    let lcm = row.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `a·row - b·pivot` where `a`, `b` cancel `col`; the result is primitive.
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let r = entry(row, col).expect("column present in row");
    let p = entry(pivot, col).expect("column present in pivot");
    let g = r.gcd(p);
    let a = p / &g;
    let b = r / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, &a * &row[i].1));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(&b * &pivot[j].1)));
            j += 1;
        } else {
            let v = &a * &row[i].1 - &b * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Split row indices into blocks whose column supports are disjoint.
fn blocks(rows: &[Vec<(usize, Q)>], cols: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..cols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in rows {
        if let Some((first, _)) = row.first() {
            let a = find(&mut parent, *first);
            for (c, _) in &row[1..] {
                let b = find(&mut parent, *c);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        if let Some((first, _)) = row.first() {
            let root = find(&mut parent, *first);
            groups.entry(root).or_default().push(i);
        }
    }
    groups.into_values().collect()
}

/// Row echelon form by leading column; returns the rank.
fn echelon_rank(rows: impl IntoIterator<Item = IntRow>) -> usize {
    let mut pivots: FxHashMap<usize, IntRow> = FxHashMap::default();
    for mut row in rows {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p, lead),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Exact rank over ℚ.
pub fn rank(m: &SparseRationalMatrix) -> usize {
    let rows: Vec<Vec<(usize, Q)>> = m.row_lists().into_iter().map(|(_, r)| r).collect();
    let groups = blocks(&rows, m.cols);
    groups
        .par_iter()
        .map(|g| echelon_rank(g.iter().map(|&i| integer_row(&rows[i]))))
        .sum()
}

/// Reduced echelon form of an augmented block; column `rhs` holds `b`.
/// `None` if inconsistent.
fn rref_solve(rows: impl IntoIterator<Item = IntRow>, rhs: usize) -> Option<Vec<(usize, Q)>> {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for mut row in rows {
        let present: Vec<usize> = row
            .iter()
            .map(|(c, _)| *c)
            .filter(|c| pivots.contains_key(c))
            .collect();
        for c in present {
            row = eliminate(&row, &pivots[&c], c);
        }
        match row.first() {
            None => continue,
            Some(&(lead, _)) if lead == rhs => return None,
            Some(&(lead, _)) => {
                for p in pivots.values_mut() {
                    if entry(p, lead).is_some() {
                        *p = eliminate(p, &row, lead);
                    }
                }
                pivots.insert(lead, row);
            }
        }
    }
    Some(
        pivots
            .into_iter()
            .filter_map(|(c, row)| {
                let a = entry(&row, c).expect("pivot entry");
                entry(&row, rhs).map(|b| (c, Q::new(b.clone(), a.clone())))
            })
            .collect(),
    )
}

/// Solve `M v = b` exactly, with free variables set to zero.
pub fn solve(m: &SparseRationalMatrix, b: &[(usize, Q)]) -> Option<Vec<(usize, Q)>> {
    let mut rhs: BTreeMap<usize, Q> = BTreeMap::new();
    for (r, v) in b {
        assert!(*r < m.rows, "right-hand side out of range");
        if !v.is_zero() {
            rhs.insert(*r, v.clone());
        }
    }
    let listed = m.row_lists();
    let row_of: FxHashMap<usize, usize> = listed.iter().enumerate().map(|(i, (r, _))| (*r, i)).collect();
    // b supported on an empty row
    if rhs.keys().any(|r| !row_of.contains_key(r)) {
        return None;
    }
    let rows: Vec<Vec<(usize, Q)>> = listed.iter().map(|(_, r)| r.clone()).collect();
    let groups = blocks(&rows, m.cols);
    let col = m.cols;
    let solutions: Option<Vec<Vec<(usize, Q)>>> = groups
        .par_iter()
        .filter(|g| g.iter().any(|&i| rhs.contains_key(&listed[i].0)))
        .map(|g| {
            let augmented = g.iter().map(|&i| {
                let mut row = rows[i].clone();
                if let Some(v) = rhs.get(&listed[i].0) {
                    row.push((col, v.clone()));
                }
                integer_row(&row)
            });
            rref_solve(augmented, col)
        })
        .collect();
    let mut out: Vec<(usize, Q)> = solutions?.into_iter().flatten().collect();
    out.sort_by_key(|(c, _)| *c);
    Some(out)
}

/// Matrix of `d` from degree `degree` to `degree + 1`, with both bases.
#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub source: GradedBasis,
    pub target: GradedBasis,
    pub matrix: SparseRationalMatrix,
}

pub fn differential_matrix_with_bases(
    algebra: &Arc<SemifreeDgca>,
    degree: u32,
    cap: usize,
) -> Result<DifferentialMatrix> {
    let source = monomial_basis(algebra, degree, cap)?;
    let target = monomial_basis(algebra, degree + 1, cap)?;
    let sig = algebra.signature();
    let columns: Vec<Result<Vec<(usize, Q)>>> = source
        .monomials()
        .par_iter()
        .map(|m| {
            let dm = algebra.apply_d(&Element::from_monomial(sig, m.clone(), Q::one()))?;
            target.coordinates(&dm)
        })
        .collect();
    let mut matrix = SparseRationalMatrix::zeros(target.len(), source.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col? {
            matrix.set(i, j, v);
        }
    }
    Ok(DifferentialMatrix {
        source,
        target,
        matrix,
    })
}

pub fn differential_matrix(algebra: &Arc<SemifreeDgca>, degree: u32, cap: usize) -> Result<SparseRationalMatrix> {
    Ok(differential_matrix_with_bases(algebra, degree, cap)?.matrix)
}

/// `dim H^k` for `k = 0..=max_degree`.
pub fn cohomology_dims(algebra: &Arc<SemifreeDgca>, max_degree: u32, cap: usize) -> Result<Vec<usize>> {
    let mut dims = Vec::with_capacity(max_degree as usize + 1);
    let mut incoming = 0usize;
    for k in 0..=max_degree {
        let dm = differential_matrix_with_bases(algebra, k, cap)?;
        let outgoing = rank(&dm.matrix);
        dims.push(dm.source.len() - outgoing - incoming);
        incoming = outgoing;
    }
    Ok(dims)
}

#[derive(Clone, Debug)]
pub enum Coboundary {
    /// `d(witness) = x` exactly.
    Exact(Element),
    NotExact,
    Capped { degree: u32, estimate: String, cap: usize },
}

impl Coboundary {
    pub fn is_exact(&self) -> bool {
        matches!(self, Coboundary::Exact(_))
    }
}

/// Decide whether a closed homogeneous `x` is `d` of something, by solving
/// over the basis one degree down. Rows are indexed lazily by the monomials
/// that actually occur, after checking the target degree against the cap.
pub fn is_coboundary(algebra: &Arc<SemifreeDgca>, x: &Element, cap: usize) -> Result<Coboundary> {
    let sig = algebra.signature();
    let dx = algebra.apply_d(x)?;
    if !dx.is_zero() {
        return Err(Error::NotClosed { residual: Box::new(dx) });
    }
    if x.is_zero() {
        return Ok(Coboundary::Exact(Element::zero(sig)));
    }
    let bidegrees = x.bidegrees();
    let degrees: std::collections::BTreeSet<u32> = bidegrees.iter().map(|b| b.degree).collect();
    if degrees.len() != 1 {
        return Err(Error::Unsupported("coboundary test needs a homogeneous element".to_string()));
    }
    let degree = *degrees.iter().next().expect("one degree");
    if degree == 0 {
        return Ok(Coboundary::NotExact);
    }
    for k in [degree - 1, degree] {
        if let Err(Error::Capped { degree, estimate, cap }) = check_cap(sig, k, cap) {
            return Ok(Coboundary::Capped { degree, estimate, cap });
        }
    }
    let source = monomial_basis(algebra, degree - 1, cap)?;
    let images: Vec<Element> = source
        .monomials()
        .par_iter()
        .map(|m| algebra.apply_d(&Element::from_monomial(sig, m.clone(), Q::one())))
        .collect::<Result<_>>()?;
    let mut row_index: FxHashMap<Monomial, usize> = FxHashMap::default();
    let mut row_monomials: Vec<Monomial> = Vec::new();
    let mut index_of = |m: &Monomial| -> usize {
        *row_index.entry(m.clone()).or_insert_with(|| {
            row_monomials.push(m.clone());
            row_monomials.len() - 1
        })
    };
    let mut triples = Vec::new();
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            triples.push((index_of(m), j, c.clone()));
        }
    }
    let b: Vec<(usize, Q)> = x.terms().iter().map(|(m, c)| (index_of(m), c.clone())).collect();
    let mut matrix = SparseRationalMatrix::zeros(row_monomials.len(), source.len());
    for (i, j, c) in triples {
        matrix.set(i, j, c);
    }
    match solve(&matrix, &b) {
        Some(v) => {
            let witness = source.element(&v);
            debug_assert_eq!(&algebra.apply_d(&witness)?, x);
            Ok(Coboundary::Exact(witness))
        }
        None => Ok(Coboundary::NotExact),
    }
}

/// Graded Künneth product of two dimension sequences, truncated.
pub fn kunneth(a: &[usize], b: &[usize], max_degree: usize) -> Vec<usize> {
    (0..=max_degree)
        .map(|k| {
            (0..=k)
                .map(|i| a.get(i).copied().unwrap_or(0) * b.get(k - i).copied().unwrap_or(0))
                .sum()
        })
        .collect()
}
