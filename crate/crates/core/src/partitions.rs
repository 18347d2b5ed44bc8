//! Integer partition combinatorics: enumeration, conjugation and
//! Littlewood-Richardson coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A partition of a nonnegative integer: a weakly decreasing sequence of
/// positive parts.  The empty sequence is the unique partition of 0.
///
/// Partitions are ordered by degree first, then reverse-lexicographically
/// within a degree, so that iteration over sorted maps matches the order of
/// [`Partition::enumerate`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the given parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single-row partition `[n]`; the empty partition when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// Single-column partition `[1^n]`.
    pub fn column(n: usize) -> Self {
        Partition {
            parts: vec![1; n],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The part at row `i`, zero-padded.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The size `|λ|` (sum of parts).
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Componentwise containment of Young diagrams.
    pub fn contains(&self, inner: &Partition) -> bool {
        (0..inner.len()).all(|i| self.part(i) >= inner.part(i))
    }

    /// The conjugate (transposed Young diagram).  An involution.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// All partitions of `n`, in reverse lexicographic order
    /// (`[n]` first, `[1^n]` last).
    pub fn enumerate(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            for p in (1..=remaining.min(max_part)).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n.max(1), &mut current, &mut out);
        out
    }
}

/// A skew shape `outer/inner` with `inner ⊆ outer`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    /// Returns `None` when `inner` is not contained in `outer`.
    pub fn new(outer: Partition, inner: Partition) -> Option<Self> {
        if outer.contains(&inner) {
            Some(SkewShape { outer, inner })
        } else {
            None
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// The Littlewood-Richardson coefficient `c^ν_{λμ}`: the multiplicity of
/// `s_ν` in `s_λ · s_μ`, counted by LR skew tableaux of shape `ν/λ` and
/// content `μ` whose reverse reading word is a lattice word.
///
/// Returns 0 when the degrees do not add up or `λ ⊄ ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) {
        return 0;
    }
    if mu.is_empty() {
        return 1; // nu == lambda at this point
    }
    let rows = nu.len();
    let k = mu.len();
    // Cells of nu/lambda in reading order: rows top to bottom, each row
    // right to left.  Filling in this order lets every constraint be
    // checked incrementally.
    let mut cells = Vec::with_capacity(nu.size() - lambda.size());
    for r in 0..rows {
        for c in (lambda.part(r)..nu.part(r)).rev() {
            cells.push((r, c));
        }
    }
    // grid[r][c] holds the filled value (1-based), 0 for unfilled/inner.
    let mut grid = vec![vec![0usize; nu.part(0)]; rows];
    let mut counts = vec![0u64; k + 1];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<u64>,
        mu: &Partition,
        lambda: &Partition,
        total: &mut u64,
    ) {
        if idx == cells.len() {
            *total += 1;
            return;
        }
        let (r, c) = cells[idx];
        let k = mu.len();
        // Row bound: value to the right (already filled).
        let max_by_row = if c + 1 < grid[r].len() && grid[r][c + 1] != 0 {
            grid[r][c + 1]
        } else {
            k
        };
        // Column bound: strictly larger than the cell above, unless that
        // cell belongs to the inner shape.
        let min_by_col = if r > 0 && c >= lambda.part(r - 1) {
            grid[r - 1][c] + 1
        } else {
            1
        };
        for v in min_by_col..=max_by_row {
            if counts[v] >= mu.part(v - 1) as u64 {
                continue;
            }
            // Lattice word condition on the reverse reading word.
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            grid[r][c] = v;
            counts[v] += 1;
            rec(idx + 1, cells, grid, counts, mu, lambda, total);
            counts[v] -= 1;
            grid[r][c] = 0;
        }
    }
    let mut total = 0;
    rec(0, &cells, &mut grid, &mut counts, mu, lambda, &mut total);
    total
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = String;

    /// Parses the textual form `[3,1]`; the empty partition is `[]`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| format!("expected bracketed partition, got `{s}`"))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<usize>, _> = inner.split(',').map(|p| p.trim().parse()).collect();
        let parts = parts.map_err(|e| format!("bad part in `{s}`: {e}"))?;
        if parts.iter().any(|&p| p == 0) {
            return Err(format!("zero part in `{s}`"));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("parts not weakly decreasing in `{s}`"));
        }
        Ok(Partition { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(Partition::enumerate(0), vec![Partition::empty()]);
        let p4 = Partition::enumerate(4);
        assert_eq!(
            p4,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn conjugate_small() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn lr_pieri_single_box() {
        let one = p(&[1]);
        assert_eq!(lr_coefficient(&one, &one, &p(&[2])), 1);
        assert_eq!(lr_coefficient(&one, &one, &p(&[1, 1])), 1);
    }

    #[test]
    fn lr_degree_mismatch_is_zero() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[3])), 0);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1, 1])), 0);
    }

    #[test]
    fn lr_two_columns() {
        let c = p(&[1, 1]);
        assert_eq!(lr_coefficient(&c, &c, &p(&[2, 2])), 1);
        assert_eq!(lr_coefficient(&c, &c, &p(&[2, 1, 1])), 1);
        assert_eq!(lr_coefficient(&c, &c, &p(&[1, 1, 1, 1])), 1);
        assert_eq!(lr_coefficient(&c, &c, &p(&[3, 1])), 0);
    }

    #[test]
    fn lr_multiplicity_two() {
        let l = p(&[2, 1]);
        assert_eq!(lr_coefficient(&l, &l, &p(&[3, 2, 1])), 2);
    }

    #[test]
    fn display_round_trip() {
        for n in 0..=6 {
            for lam in Partition::enumerate(n) {
                let s = lam.to_string();
                assert_eq!(s.parse::<Partition>().unwrap(), lam);
            }
        }
    }
}
