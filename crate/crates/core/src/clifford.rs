//! Real spinor representations built from iterated tensor products of the
//! 2×2 seeds `1`, `σ1 = [[0,1],[1,0]]`, `σ3 = [[1,0],[0,-1]]` and
//! `ε = [[0,1],[-1,0]]`, with metric `η = diag(-1, +1, ..., +1)`.
//!
//! The gammas are the first mutually anticommuting family found by a
//! depth-first search over tensor words in lexicographic order (`Γ⁰` an
//! ε-odd word squaring to `-1`, the rest ε-even words squaring to `+1`).
//! ε-even words are symmetric and ε-odd ones antisymmetric, so `C = Γ⁰`
//! makes every `CΓ^a` symmetric. The choice is validated, not assumed.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "square matrix expected");
            data.extend_from_slice(r);
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let (n, m) = (self.n, other.n);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Nonzero entries `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, i64)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (k / n, k % n, v))
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn symmetry(&self) -> Symmetry {
        let t = self.transpose();
        if t == *self {
            Symmetry::Symmetric
        } else if t == self.scale(-1) {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Mixed
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Mixed,
}

/// The matrix `C Γ^{a₁…a_p}` for strictly increasing indices.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub indices: Vec<usize>,
    pub matrix: IntMatrix,
    pub symmetry: Symmetry,
}

#[derive(Clone, Copy)]
enum Seed {
    One,
    S1,
    S3,
    Eps,
}

const SEEDS: [Seed; 4] = [Seed::One, Seed::S1, Seed::S3, Seed::Eps];

impl Seed {
    fn matrix(self) -> IntMatrix {
        match self {
            Seed::One => IntMatrix::identity(2),
            Seed::S1 => IntMatrix::from_rows(&[&[0, 1], &[1, 0]]),
            Seed::S3 => IntMatrix::from_rows(&[&[1, 0], &[0, -1]]),
            Seed::Eps => IntMatrix::from_rows(&[&[0, 1], &[-1, 0]]),
        }
    }
}

/// A tensor word over the seeds, most significant factor first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Word {
    letters: u32,
    len: u32,
}

impl Word {
    fn letter(self, i: u32) -> u32 {
        (self.letters >> (2 * (self.len - 1 - i))) & 3
    }

    fn eps_count(self) -> u32 {
        (0..self.len).filter(|&i| self.letter(i) == 3).count() as u32
    }

    /// Two words anticommute iff they differ at an odd number of positions
    /// where both letters are non-identity.
    fn anticommutes(self, other: Word) -> bool {
        let clashes = (0..self.len)
            .filter(|&i| {
                let (a, b) = (self.letter(i), other.letter(i));
                a != 0 && b != 0 && a != b
            })
            .count();
        clashes % 2 == 1
    }

    fn matrix(self) -> IntMatrix {
        let mut m = IntMatrix::identity(1);
        for i in 0..self.len {
            m = m.kron(&SEEDS[self.letter(i) as usize].matrix());
        }
        m
    }

    fn describe(self) -> String {
        (0..self.len)
            .map(|i| ["1", "s1", "s3", "eps"][self.letter(i) as usize])
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

fn search_gammas(d: usize, factors: u32) -> Option<Vec<Word>> {
    let words: Vec<Word> = (0..4u32.pow(factors))
        .map(|letters| Word {
            letters,
            len: factors,
        })
        .collect();
    let timelike: Vec<Word> = words.iter().copied().filter(|w| w.eps_count() % 2 == 1).collect();
    let spacelike: Vec<Word> = words
        .iter()
        .copied()
        .filter(|w| w.eps_count() % 2 == 0 && w.letters != 0)
        .collect();

    fn extend(chosen: &mut Vec<Word>, pool: &[Word], start: usize, need: usize) -> bool {
        if chosen.len() == need {
            return true;
        }
        for (i, &w) in pool.iter().enumerate().skip(start) {
            if chosen.iter().all(|&c| c.anticommutes(w)) {
                chosen.push(w);
                if extend(chosen, pool, i + 1, need) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    for &t in &timelike {
        let mut chosen = vec![t];
        if extend(&mut chosen, &spacelike, 0, d) {
            return Some(chosen);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CliffordRep {
    d: usize,
    /// (timelike, spacelike) counts.
    signature: (usize, usize),
    n: usize,
    metric: Vec<i64>,
    gammas: Vec<IntMatrix>,
    c: IntMatrix,
    #[serde(default)]
    construction: Vec<String>,
}

pub fn build_clifford(d: usize, signature: (usize, usize)) -> Result<CliffordRep> {
    CliffordRep::build(d, signature)
}

impl CliffordRep {
    pub fn build(d: usize, signature: (usize, usize)) -> Result<Self> {
        let factors = match (d, signature) {
            (3, (1, 2)) => 1,
            (11, (1, 10)) => 5,
            _ => {
                return Err(Error::Unsupported(format!(
                    "no real spinor representation built for d={d}, signature {signature:?}"
                )))
            }
        };
        let words = search_gammas(d, factors)
            .ok_or_else(|| Error::Unsupported(format!("gamma search failed for d={d}")))?;
        let gammas: Vec<IntMatrix> = words.iter().map(|w| w.matrix()).collect();
        let c = gammas[0].clone();
        Ok(CliffordRep {
            d,
            signature,
            n: 1 << factors,
            metric: (0..d).map(|a| if a == 0 { -1 } else { 1 }).collect(),
            gammas,
            c,
            construction: words.iter().map(|w| w.describe()).collect(),
        })
    }

    /// Assemble a representation from explicit matrices; nothing is checked.
    pub fn from_parts(metric: Vec<i64>, gammas: Vec<IntMatrix>, c: IntMatrix) -> Self {
        let d = gammas.len();
        let n = c.dim();
        let t = metric.iter().filter(|&&m| m < 0).count();
        CliffordRep {
            d,
            signature: (t, d - t),
            n,
            metric,
            gammas,
            c,
            construction: Vec::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn spinor_dim(&self) -> usize {
        self.n
    }

    pub fn eta(&self, a: usize) -> i64 {
        self.metric[a]
    }

    pub fn gamma(&self, a: usize) -> &IntMatrix {
        &self.gammas[a]
    }

    pub fn gammas(&self) -> &[IntMatrix] {
        &self.gammas
    }

    pub fn charge_conjugation(&self) -> &IntMatrix {
        &self.c
    }

    pub fn construction(&self) -> &[String] {
        &self.construction
    }

    /// Ordered product `Γ^{a₁}⋯Γ^{a_p}`; for distinct indices this is the
    /// normalized antisymmetrization.
    pub fn gamma_product(&self, indices: &[usize]) -> IntMatrix {
        indices
            .iter()
            .fold(IntMatrix::identity(self.n), |acc, &a| acc.mul(&self.gammas[a]))
    }

    pub fn antisym_gamma(&self, indices: &[usize]) -> Result<PairingMatrix> {
        let increasing = indices.windows(2).all(|w| w[0] < w[1]);
        if !increasing || indices.iter().any(|&a| a >= self.d) {
            return Err(Error::BadIndices(indices.to_vec()));
        }
        let matrix = self.c.mul(&self.gamma_product(indices));
        let symmetry = matrix.symmetry();
        Ok(PairingMatrix {
            indices: indices.to_vec(),
            matrix,
            symmetry,
        })
    }

    /// Reference antisymmetrization `(1/p!) Σ_σ sgn(σ) Γ^{a_σ1}⋯Γ^{a_σp}`,
    /// returned multiplied by `p!` to stay integral.
    pub fn antisymmetrized_times_factorial(&self, indices: &[usize]) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.n);
        for (perm, sign) in permutations(indices.len()) {
            let ordered: Vec<usize> = perm.iter().map(|&i| indices[i]).collect();
            acc = acc.add(&self.gamma_product(&ordered).scale(sign));
        }
        acc
    }

    /// Spinor-dimension check for catalog constructions.
    pub fn expect_dim(&self, d: usize) -> Result<()> {
        if self.d == d {
            Ok(())
        } else {
            Err(Error::RepMismatch {
                rep: self.d,
                requested: d,
            })
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.d,
            "signature": [self.signature.0, self.signature.1],
            "spinor_dim": self.n,
            "metric": self.metric,
            "gammas": self.gammas.iter().map(|g| g.rows()).collect::<Vec<_>>(),
            "charge_conjugation": self.c.rows(),
            "construction": self.construction,
        })
    }
}

/// Expected symmetry of `CΓ^{(p)}`: symmetric for p ≡ 1, 2 (mod 4).
pub fn expected_symmetry(p: usize) -> Symmetry {
    if matches!(p % 4, 1 | 2) {
        Symmetry::Symmetric
    } else {
        Symmetry::Antisymmetric
    }
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            let mut sign = 1;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        sign = -sign;
                    }
                }
            }
            out.push((prefix.clone(), sign));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Strictly increasing `p`-subsets of `0..d` in lexicographic order.
pub fn index_subsets(d: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            go(a + 1, d, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, p, &mut Vec::new(), &mut out);
    out
}

/// Anticommutators, `Γ^{ab} = ½[Γ^a, Γ^b]`, and the symmetry pattern of
/// `CΓ^{(p)}` for `p ≤ 5`.
pub fn check_clifford(rep: &CliffordRep) -> Report {
    let start = Instant::now();
    let d = rep.d;
    let n = rep.n;
    let mut report = Report::pass("clifford").with_scalar("d", d).with_scalar("spinor_dim", n);
    for a in 0..d {
        for b in a..d {
            let ga = &rep.gammas[a];
            let gb = &rep.gammas[b];
            let anti = ga.mul(gb).add(&gb.mul(ga));
            let expected = if a == b {
                IntMatrix::identity(n).scale(2 * rep.metric[a])
            } else {
                IntMatrix::zeros(n)
            };
            if anti != expected {
                return Report::fail_with_note("clifford", format!("anticommutator fails on pair ({a},{b})"))
                    .with_scalar("pair", format!("{a},{b}"))
                    .timed_since(start);
            }
            if a < b {
                let commutator = ga.mul(gb).sub(&gb.mul(ga));
                if commutator != rep.gamma_product(&[a, b]).scale(2) {
                    return Report::fail_with_note(
                        "clifford",
                        format!("Γ^{{{a}{b}}} differs from half the commutator"),
                    )
                    .timed_since(start);
                }
            }
        }
    }
    let mut pattern = Vec::new();
    for p in 0..=5.min(d) {
        let expected = expected_symmetry(p);
        for idx in index_subsets(d, p) {
            let pm = rep.antisym_gamma(&idx).expect("valid subset");
            if pm.symmetry != expected {
                return Report::fail_with_note(
                    "clifford",
                    format!("CΓ^{idx:?} is {:?}, expected {:?}", pm.symmetry, expected),
                )
                .timed_since(start);
            }
        }
        pattern.push(format!("{p}:{:?}", expected).to_lowercase());
    }
    report = report.with_scalar("symmetry_pattern", pattern.join(","));
    report.timed_since(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dimensional_rep_matches_seeds() {
        let rep = build_clifford(3, (1, 2)).unwrap();
        assert_eq!(rep.spinor_dim(), 2);
        assert_eq!(rep.gamma(0), &IntMatrix::from_rows(&[&[0, 1], &[-1, 0]]));
        assert_eq!(rep.gamma(1), &IntMatrix::from_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(rep.gamma(2), &IntMatrix::from_rows(&[&[1, 0], &[0, -1]]));
        assert_eq!(rep.charge_conjugation(), rep.gamma(0));
        assert!(check_clifford(&rep).passed());
    }

    #[test]
    fn eleven_dimensional_rep() {
        let rep = build_clifford(11, (1, 10)).unwrap();
        assert_eq!(rep.spinor_dim(), 32);
        let r = check_clifford(&rep);
        assert!(r.passed(), "{:?}", r.notes);
        for p in [1, 2, 5] {
            for idx in index_subsets(11, p) {
                assert_eq!(rep.antisym_gamma(&idx).unwrap().symmetry, Symmetry::Symmetric);
            }
        }
        for idx in index_subsets(11, 3) {
            assert_eq!(rep.antisym_gamma(&idx).unwrap().symmetry, Symmetry::Antisymmetric);
        }
    }

    #[test]
    fn unsupported_and_bad_indices() {
        assert!(matches!(build_clifford(12, (1, 11)), Err(Error::Unsupported(_))));
        let rep = build_clifford(3, (1, 2)).unwrap();
        assert!(matches!(rep.antisym_gamma(&[1, 0]), Err(Error::BadIndices(_))));
        assert!(matches!(rep.antisym_gamma(&[0, 3]), Err(Error::BadIndices(_))));
    }

    #[test]
    fn ordered_product_is_antisymmetrization() {
        let rep = build_clifford(11, (1, 10)).unwrap();
        for idx in [vec![0, 3, 7], vec![1, 2, 4, 9], vec![0, 1, 5, 6, 10]] {
            let p = idx.len() as i64;
            let fact: i64 = (1..=p).product();
            assert_eq!(
                rep.antisymmetrized_times_factorial(&idx),
                rep.gamma_product(&idx).scale(fact)
            );
        }
    }

    #[test]
    fn corrupted_row_is_caught() {
        let rep = build_clifford(11, (1, 10)).unwrap();
        let mut gammas = rep.gammas().to_vec();
        let row: Vec<(usize, usize, i64)> = gammas[4]
            .nonzeros()
            .into_iter()
            .filter(|&(r, _, _)| r == 0)
            .collect();
        for (r, c, v) in row {
            gammas[4].set(r, c, -v);
        }
        let bad = CliffordRep::from_parts(
            (0..11).map(|a| if a == 0 { -1 } else { 1 }).collect(),
            gammas,
            rep.charge_conjugation().clone(),
        );
        let r = check_clifford(&bad);
        assert!(!r.passed());
        assert!(r.notes[0].contains("anticommutator"));
    }
}
