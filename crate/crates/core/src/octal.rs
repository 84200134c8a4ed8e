//! Sprague-Grundy sequence of Octal .6.
//!
//! A move removes one chip from a heap and leaves the rest as one or two
//! nonempty heaps, so
//!
//! ```text
//! G(n) = mex({ G(n-1) } ∪ { G(a) ^ G(b) : a + b = n - 1, 1 <= a <= b })
//! ```
//!
//! with `G(1) = 0` (the lone chip leaves nothing). The same sequence is the
//! Grim value of the path on `n` vertices.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::path;
use crate::solver::Solver;

pub const FILE_MAGIC: &[u8; 8] = b"OCT6SGV1";
pub const PROGRESS_INTERVAL: usize = 10_000;

/// Values indexed by heap size; index 0 is a placeholder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgSequence {
    values: Vec<u16>,
}

impl SgSequence {
    /// Wraps values for sizes `1..=values.len()`.
    pub fn from_values(values: &[u16]) -> Self {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(0);
        v.extend_from_slice(values);
        SgSequence { values: v }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// Value for heap (or path) size `n`, `1 <= n <= max_n`.
    pub fn get(&self, n: usize) -> u16 {
        assert!(n >= 1, "heap sizes start at 1");
        self.values[n]
    }

    /// Values for `1..=max_n`.
    pub fn values(&self) -> &[u16] {
        &self.values[1..]
    }

    /// Sizes `n >= 2` with value 0, ascending. A single vertex is not a Grim
    /// position, so `n = 1` is never listed.
    pub fn zeros(&self) -> Vec<usize> {
        (2..self.values.len()).filter(|&n| self.values[n] == 0).collect()
    }

    /// Continues the recurrence up to `max_n`, reporting every [`PROGRESS_INTERVAL`] values.
    pub fn extend_to(&mut self, max_n: usize, mut progress: impl FnMut(usize)) {
        if max_n <= self.max_n() {
            return;
        }
        self.values.reserve(max_n - self.max_n());
        let mut largest = self.values.iter().copied().max().unwrap_or(0) as usize;
        // seen[v] == stamp marks v present for the current n
        let mut seen: Vec<u32> = vec![0; largest + 2];
        let mut stamp = 0u32;
        for n in self.values.len()..=max_n {
            stamp += 1;
            if n >= 2 {
                seen[self.values[n - 1] as usize] = stamp;
            }
            let rest = n - 1;
            for a in 1..=rest / 2 {
                let x = (self.values[a] ^ self.values[rest - a]) as usize;
                if x >= seen.len() {
                    seen.resize(x + 2, 0);
                }
                seen[x] = stamp;
            }
            let mex = seen.iter().position(|&s| s != stamp).unwrap_or(seen.len());
            let value = u16::try_from(mex).expect("Octal .6 value exceeds 16 bits");
            self.values.push(value);
            if mex > largest {
                largest = mex;
                if seen.len() < largest + 2 {
                    seen.resize(largest + 2, 0);
                }
            }
            if n % PROGRESS_INTERVAL == 0 {
                progress(n);
            }
        }
    }

    /// 8-byte magic, then one little-endian `u16` per size `1..=max_n`.
    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        w.write_all(FILE_MAGIC)?;
        let mut buf = Vec::with_capacity(2 * self.max_n());
        for v in self.values() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&buf)
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)
            .map_err(|e| Error::SequenceFile(e.to_string()))?;
        let body = bytes
            .strip_prefix(FILE_MAGIC.as_slice())
            .ok_or_else(|| Error::SequenceFile("bad magic".into()))?;
        if body.len() % 2 != 0 {
            return Err(Error::SequenceFile("odd payload length".into()));
        }
        let mut values = vec![0u16];
        values.extend(body.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]])));
        if values.len() < 2 {
            return Err(Error::SequenceFile("no values".into()));
        }
        Ok(SgSequence { values })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        fs::write(path, buf).map_err(|e| Error::SequenceFile(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = fs::File::open(path).map_err(|e| Error::SequenceFile(e.to_string()))?;
        Self::read_from(io::BufReader::new(file))
    }
}

pub fn octal6_sequence(max_n: usize) -> SgSequence {
    octal6_sequence_with_progress(max_n, |_| {})
}

pub fn octal6_sequence_with_progress(max_n: usize, progress: impl FnMut(usize)) -> SgSequence {
    assert!(max_n >= 1, "sequence needs at least one term");
    let mut seq = SgSequence { values: vec![0, 0] };
    seq.extend_to(max_n, progress);
    seq
}

pub fn zeros(seq: &SgSequence) -> Vec<usize> {
    seq.zeros()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub path_value: u32,
    pub octal_value: u16,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub max_n: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the generic solver on `path:n` with the Octal .6 sequence for `2 <= n <= max_n`.
pub fn path_equivalence_check(max_n: usize, solver: &Solver) -> Result<EquivalenceReport> {
    let seq = octal6_sequence(max_n.max(1));
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 2..=max_n {
        let path_value = solver.sg_value(&path(n))?.0;
        checked += 1;
        if path_value != u32::from(seq.get(n)) {
            mismatches.push(Mismatch {
                n,
                path_value,
                octal_value: seq.get(n),
            });
        }
    }
    Ok(EquivalenceReport {
        max_n,
        checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: direct mex over all unordered splits with a fresh set each time.
    fn naive(max_n: usize) -> Vec<u16> {
        let mut g = vec![0u16; max_n + 1];
        for n in 2..=max_n {
            let mut set = std::collections::BTreeSet::new();
            set.insert(g[n - 1]);
            for a in 1..n - 1 {
                set.insert(g[a] ^ g[n - 1 - a]);
            }
            g[n] = (0..).find(|v| !set.contains(v)).unwrap();
        }
        g
    }

    #[test]
    fn first_terms() {
        let seq = octal6_sequence(4);
        assert_eq!(seq.values(), &[0, 1, 2, 0]);
        assert_eq!(seq.zeros(), vec![4]);
        assert!(octal6_sequence(3).zeros().is_empty());
        assert_eq!(octal6_sequence(1).values(), &[0]);
    }

    #[test]
    fn matches_naive_recurrence() {
        let seq = octal6_sequence(600);
        assert_eq!(seq.values(), &naive(600)[1..]);
    }

    #[test]
    fn zero_list_to_500() {
        let seq = octal6_sequence(500);
        assert_eq!(
            seq.zeros(),
            vec![4, 12, 20, 30, 46, 72, 98, 124, 150, 176, 314, 408]
        );
    }

    #[test]
    fn deterministic_and_resumable() {
        let a = octal6_sequence(3000);
        let b = octal6_sequence(3000);
        let (mut x, mut y) = (Vec::new(), Vec::new());
        a.write_to(&mut x).unwrap();
        b.write_to(&mut y).unwrap();
        assert_eq!(x, y);
        assert_eq!(&x[..8], b"OCT6SGV1");
        assert_eq!(x.len(), 8 + 2 * 3000);

        let mut partial = octal6_sequence(1234);
        let mut buf = Vec::new();
        partial.write_to(&mut buf).unwrap();
        partial = SgSequence::read_from(buf.as_slice()).unwrap();
        partial.extend_to(3000, |_| {});
        assert_eq!(partial, a);
    }

    #[test]
    fn progress_ticks() {
        let mut ticks = Vec::new();
        octal6_sequence_with_progress(25_000, |n| ticks.push(n));
        assert_eq!(ticks, vec![10_000, 20_000]);
    }

    #[test]
    fn bad_files() {
        assert!(SgSequence::read_from(&b"OCT6SGV2\0\0"[..]).is_err());
        assert!(SgSequence::read_from(&b"OCT6SGV1\0"[..]).is_err());
        assert!(SgSequence::read_from(&b"OCT6SGV1"[..]).is_err());
    }

    #[test]
    fn equivalence_small() {
        let s = Solver::new();
        let r = path_equivalence_check(12, &s).unwrap();
        assert!(r.passed());
        assert_eq!(s.sg_value(&path(12)).unwrap().0, 0);
        let r = path_equivalence_check(2, &s).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 1);
        assert_eq!(s.sg_value(&path(2)).unwrap().0, 1);
    }
}
