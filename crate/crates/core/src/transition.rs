//! Transition matrices between the Milnor and admissible bases.
//!
//! In topological degree `2r(p-1)` both bases are indexed by the admissible
//! sequences of entry-sum `r`, listed in descending right-lexicographic
//! order: row `a` holds the Milnor expansion of the word `P^{I_a}`, and
//! column `b` corresponds to the monomial `xi^{gamma(I_b)}`. The pairing
//! lemma makes this matrix upper triangular with units on the diagonal,
//! which is what the back-substitution in
//! [`crate::milnor::milnor_to_admissible`] relies on.
//!
//! Matrices are memoized per `(p, r)`. Setting a cache directory (see
//! [`set_cache_dir`]; the CLI wires it to `STEENROD_CACHE_DIR`) also
//! persists them in a small binary format: a header with the prime and the
//! degree followed by the dense matrix entries, all little-endian.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use crate::fp::Prime;
use crate::milnor::{AdmissibleWord, MilnorMonomial};
use crate::seq::enumerate_upsilon_r;

const MAGIC: &[u8; 4] = b"STMT";
const VERSION: u32 = 1;

/// The degree-`2r(p-1)` basis-change data.
pub struct Transition {
    p: Prime,
    r: u64,
    words: Vec<AdmissibleWord>,
    monomials: Vec<MilnorMonomial>,
    column: BTreeMap<MilnorMonomial, usize>,
    mat: Vec<u32>, // dim x dim, row-major
}

impl Transition {
    fn basis(p: Prime, r: u64) -> Vec<AdmissibleWord> {
        // enumerate_upsilon_r is already descending and gamma_inv preserves
        // the order.
        enumerate_upsilon_r(p, r)
            .into_iter()
            .map(|j| AdmissibleWord::from_gamma_seq(j.gamma_inv(p)))
            .collect()
    }

    fn with_matrix(p: Prime, r: u64, mat: Vec<u32>) -> Transition {
        let words = Self::basis(p, r);
        let monomials: Vec<MilnorMonomial> = words
            .iter()
            .map(|w| MilnorMonomial::new(w.word().gamma()))
            .collect();
        let column = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        assert_eq!(mat.len(), words.len() * words.len());
        Transition {
            p,
            r,
            words,
            monomials,
            column,
            mat,
        }
    }

    fn compute(p: Prime, r: u64) -> Transition {
        let words = Self::basis(p, r);
        let dim = words.len();
        let mut t = Self::with_matrix(p, r, vec![0; dim * dim]);
        for row in 0..dim {
            let expansion = t.words[row].to_milnor();
            for (m, c) in expansion.terms() {
                let col = *t
                    .column
                    .get(m)
                    .expect("expansion term outside the degree basis");
                t.mat[row * dim + col] = c;
            }
        }
        t
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn degree(&self) -> u64 {
        2 * self.r * (self.p.as_u64() - 1)
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Admissible words in descending right-lexicographic order.
    pub fn words(&self) -> &[AdmissibleWord] {
        &self.words
    }

    /// Milnor monomials in the matching column order.
    pub fn monomials(&self) -> &[MilnorMonomial] {
        &self.monomials
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.mat[row * self.dim() + col]
    }

    pub fn column_of(&self, m: &MilnorMonomial) -> Option<usize> {
        self.column.get(m).copied()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim()).all(|row| (0..row).all(|col| self.entry(row, col) == 0))
    }

    /// Diagonal entries; triangularity puts each in `{1, p-1}`.
    pub fn diagonal(&self) -> Vec<u32> {
        (0..self.dim()).map(|i| self.entry(i, i)).collect()
    }
}

type Memo = Mutex<HashMap<(u32, u64), Arc<Transition>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_dir_slot() -> &'static Mutex<Option<PathBuf>> {
    static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| Mutex::new(None))
}

/// Directs transition matrices to be persisted under `dir`. `None` disables
/// the disk cache; the in-memory memo is always active.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().lock().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_slot().lock().unwrap().clone()
}

/// The memoized transition matrix for degree `2r(p-1)`.
///
/// Each `(p, r)` is computed at most once per process; concurrent callers
/// share the result.
pub fn transition(p: Prime, r: u64) -> Arc<Transition> {
    let mut memo = memo().lock().unwrap();
    if let Some(t) = memo.get(&(p.get(), r)) {
        return Arc::clone(t);
    }
    let dir = cache_dir();
    let mut loaded = false;
    let t = dir
        .as_deref()
        .and_then(|d| load_from_dir(d, p, r))
        .inspect(|_| loaded = true)
        .unwrap_or_else(|| Transition::compute(p, r));
    if !loaded {
        if let Some(d) = dir.as_deref() {
            // Best effort; an unwritable cache must not fail the computation.
            let _ = save_to_dir(d, &t);
        }
    }
    let t = Arc::new(t);
    memo.insert((p.get(), r), Arc::clone(&t));
    t
}

fn file_name(p: Prime, degree: u64) -> String {
    format!("p{}_d{}.stm", p.get(), degree)
}

/// Writes the matrix file `p{p}_d{degree}.stm` under `dir`.
pub fn save_to_dir(dir: &Path, t: &Transition) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut buf = Vec::with_capacity(4 + 4 + 4 + 8 + 8 + 4 * t.mat.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&t.p.get().to_le_bytes());
    buf.extend_from_slice(&t.degree().to_le_bytes());
    buf.extend_from_slice(&(t.dim() as u64).to_le_bytes());
    for &e in &t.mat {
        buf.extend_from_slice(&e.to_le_bytes());
    }
    let path = dir.join(file_name(t.p, t.degree()));
    let tmp = path.with_extension("stm.tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(&tmp, &path)
}

/// Reads a previously saved matrix; `None` if absent or malformed.
pub fn load_from_dir(dir: &Path, p: Prime, r: u64) -> Option<Transition> {
    let degree = 2 * r * (p.as_u64() - 1);
    let path = dir.join(file_name(p, degree));
    let mut bytes = Vec::new();
    fs::File::open(&path).ok()?.read_to_end(&mut bytes).ok()?;

    let mut off = 0usize;
    let mut take = |n: usize| -> Option<&[u8]> {
        let s = bytes.get(off..off + n)?;
        off += n;
        Some(s)
    };
    if take(4)? != MAGIC {
        return None;
    }
    let version = u32::from_le_bytes(take(4)?.try_into().ok()?);
    let file_p = u32::from_le_bytes(take(4)?.try_into().ok()?);
    let file_degree = u64::from_le_bytes(take(8)?.try_into().ok()?);
    let dim = u64::from_le_bytes(take(8)?.try_into().ok()?) as usize;
    if version != VERSION || file_p != p.get() || file_degree != degree {
        return None;
    }
    let expected = Transition::basis(p, r).len();
    if dim != expected {
        return None;
    }
    let mut mat = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        mat.push(u32::from_le_bytes(take(4)?.try_into().ok()?));
    }
    if off != bytes.len() {
        return None;
    }
    Some(Transition::with_matrix(p, r, mat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn triangular_with_unit_diagonal() {
        for pr in [2u32, 3, 5] {
            let pp = p(pr);
            for r in 0..=8u64 {
                let t = transition(pp, r);
                assert!(t.is_upper_triangular(), "p={pr}, r={r}");
                for d in t.diagonal() {
                    assert!(d == 1 || d == pr - 1, "p={pr}, r={r}: diagonal {d}");
                }
            }
        }
    }

    #[test]
    fn words_are_strictly_descending() {
        let t = transition(p(2), 10);
        for w in t.words().windows(2) {
            assert_eq!(
                w[0].word().right_lex_cmp(w[1].word()),
                std::cmp::Ordering::Greater
            );
        }
    }

    #[test]
    fn memo_returns_shared_instances() {
        let a = transition(p(3), 4);
        let b = transition(p(3), 4);
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn concurrent_callers_share_one_instance() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| transition(p(5), 6)))
            .collect();
        let first = transition(p(5), 6);
        for h in handles {
            assert!(Arc::ptr_eq(&h.join().unwrap(), &first));
        }
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let t = Transition::compute(p(3), 5);
        save_to_dir(dir.path(), &t).unwrap();
        let back = load_from_dir(dir.path(), p(3), 5).expect("cache file loads");
        assert_eq!(back.dim(), t.dim());
        assert_eq!(back.mat, t.mat);
        assert_eq!(back.words(), t.words());
    }

    #[test]
    fn disk_cache_rejects_other_keys_and_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let t = Transition::compute(p(2), 4);
        save_to_dir(dir.path(), &t).unwrap();
        assert!(load_from_dir(dir.path(), p(2), 5).is_none());

        let path = dir.path().join(file_name(p(2), 8));
        fs::write(&path, b"not a matrix").unwrap();
        assert!(load_from_dir(dir.path(), p(2), 4).is_none());
    }
}
