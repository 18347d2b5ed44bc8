//! The rewrite engine: canonical stacking order, relation patterns and
//! normalization with a step budget.

use num_traits::Zero;

use crate::error::DiagramError;
use crate::Int;

use super::diagram::{Diagram, DiagramTerm, Gen};

/// Whether two stacked generators commute, and how their positions change
/// when swapped.  `a` is below, `b` above (positions in `a`'s output word).
/// Returns the new positions `(b_new, a_new)` with `b` now below.
fn commute((ga, a): (Gen, usize), (gb, b): (Gen, usize)) -> Option<(usize, usize)> {
    if b + gb.in_arity() <= a {
        // b entirely left of a's region; a shifts by b's arity change.
        let a_new = (a + gb.out_arity()).checked_sub(gb.in_arity())?;
        Some((b, a_new))
    } else if b >= a + ga.out_arity() {
        // b entirely right; recompute b relative to a's input word.
        let b_new = (b + ga.in_arity()).checked_sub(ga.out_arity())?;
        Some((b_new, a))
    } else {
        None
    }
}

fn gen_rank(g: Gen) -> u8 {
    match g {
        Gen::CupMP => 0,
        Gen::CupPM => 1,
        Gen::CapMP => 2,
        Gen::CapPM => 3,
        Gen::Cross => 4,
    }
}

fn word_key(w: &[(Gen, usize)]) -> Vec<(usize, u8)> {
    w.iter().map(|&(g, p)| (p, gen_rank(g))).collect()
}

/// All restackings of the same diagram reachable by commuting adjacent
/// generators, sorted so the lexicographically least word (comparing
/// slices by position, then generator) comes first.  The set is finite,
/// since the positions in a word are determined by the order of its
/// generators, and two stackings of the same diagram enumerate the same
/// set because reachability is symmetric; the first word therefore serves
/// as the canonical stacking.
pub(crate) fn restackings(
    gens: &[(Gen, usize)],
    cap: usize,
) -> Result<Vec<Vec<(Gen, usize)>>, DiagramError> {
    use std::collections::{HashSet, VecDeque};
    let start = gens.to_vec();
    let mut seen: HashSet<Vec<(Gen, usize)>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let Some((b_new, a_new)) = commute(w[i], w[i + 1]) else {
                continue;
            };
            let mut next = w.clone();
            next[i] = (w[i + 1].0, b_new);
            next[i + 1] = (w[i].0, a_new);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(DiagramError::BudgetExceeded { budget: cap });
                }
                queue.push_back(next);
            }
        }
        out.push(w);
    }
    out.sort_by_cached_key(|w| word_key(w));
    Ok(out)
}

/// One replacement alternative of a pattern: a coefficient and generators
/// given as offsets relative to the match base position.
struct Alternative {
    coeff: i64,
    gens: &'static [(Gen, usize)],
}

/// A relation pattern, written as one contiguous stacking of the relation.
struct Pattern {
    /// Generators bottom-to-top with offsets relative to the base.
    gens: &'static [(Gen, usize)],
    /// Conservative strand width of the region the pattern occupies.
    width: usize,
    replacement: &'static [Alternative],
}

const ID: &[Alternative] = &[Alternative {
    coeff: 1,
    gens: &[],
}];

/// Relation patterns in priority order.
static PATTERNS: &[Pattern] = &[
    // A strand curling through a leftward cup and cap kills the diagram.
    Pattern {
        gens: &[(Gen::CupMP, 0), (Gen::Cross, 1), (Gen::CapMP, 0)],
        width: 3,
        replacement: &[],
    },
    // The bent variant arising against a cup.
    Pattern {
        gens: &[
            (Gen::CupMP, 0),
            (Gen::CupPM, 2),
            (Gen::Cross, 1),
            (Gen::CapMP, 0),
        ],
        width: 4,
        replacement: &[],
    },
    // Double crossing on "+-": identity.
    Pattern {
        gens: &[
            (Gen::CupMP, 0),
            (Gen::Cross, 1),
            (Gen::CupPM, 2),
            (Gen::Cross, 1),
            (Gen::CapMP, 0),
            (Gen::CapPM, 2),
        ],
        width: 4,
        replacement: ID,
    },
    // Double crossing on "-+": identity minus cup-after-cap.
    Pattern {
        gens: &[
            (Gen::CupMP, 0),
            (Gen::CupPM, 4),
            (Gen::Cross, 3),
            (Gen::CapMP, 2),
            (Gen::Cross, 1),
            (Gen::CapPM, 2),
        ],
        width: 6,
        replacement: &[
            Alternative {
                coeff: 1,
                gens: &[],
            },
            Alternative {
                coeff: -1,
                gens: &[(Gen::CapMP, 0), (Gen::CupMP, 0)],
            },
        ],
    },
    // Clockwise circle evaluates to 1.  (The counterclockwise circle,
    // cupRL under capRL, is deliberately left inert.)
    Pattern {
        gens: &[(Gen::CupMP, 0), (Gen::CapMP, 0)],
        width: 2,
        replacement: ID,
    },
    // The four zigzag straightenings.
    Pattern {
        gens: &[(Gen::CupMP, 1), (Gen::CapPM, 0)],
        width: 3,
        replacement: ID,
    },
    Pattern {
        gens: &[(Gen::CupPM, 0), (Gen::CapMP, 1)],
        width: 3,
        replacement: ID,
    },
    Pattern {
        gens: &[(Gen::CupPM, 1), (Gen::CapMP, 0)],
        width: 3,
        replacement: ID,
    },
    Pattern {
        gens: &[(Gen::CupMP, 0), (Gen::CapPM, 1)],
        width: 3,
        replacement: ID,
    },
];

/// A located match: generator indices in the stack and the base position.
struct Match {
    indices: Vec<usize>,
}

/// Searches for `pat` as a subsequence of the stack.  Generators lying
/// between matched ones must act entirely outside the pattern's region;
/// those to the left shift the expected positions.
fn find_pattern(gens: &[(Gen, usize)], pat: &Pattern) -> Option<Match> {
    let (g0, r0) = pat.gens[0];
    'starts: for (i, &(g, p)) in gens.iter().enumerate() {
        if g != g0 || p < r0 {
            continue;
        }
        let base = p - r0;
        let mut indices = vec![i];
        let mut shift: i64 = 0;
        let mut next = 1;
        for (j, &(gj, pj)) in gens.iter().enumerate().skip(i + 1) {
            if next == pat.gens.len() {
                break;
            }
            let (gexp, rexp) = pat.gens[next];
            let expected = base as i64 + shift + rexp as i64;
            if gj == gexp && expected >= 0 && pj as i64 == expected {
                indices.push(j);
                next += 1;
                continue;
            }
            // Not the next pattern generator: it must avoid the region.
            // Consuming strands entirely left of it (an insertion at the
            // left edge included) shifts the region right by the arity
            // difference; anything at or past the right edge is inert.
            let region_lo = base as i64 + shift;
            let region_hi = region_lo + pat.width as i64;
            if (pj + gj.in_arity()) as i64 <= region_lo {
                shift += gj.out_arity() as i64 - gj.in_arity() as i64;
            } else if (pj as i64) >= region_hi {
                // Entirely right: fine.
            } else {
                continue 'starts;
            }
        }
        if next == pat.gens.len() {
            return Some(Match { indices });
        }
    }
    None
}

/// Moves the matched generators together into one contiguous block by
/// commuting the interleaved generators upward, preserving the morphism.
/// Returns the stack with the block starting at `block_start`.
fn make_contiguous(gens: &[(Gen, usize)], m: &Match) -> (Vec<(Gen, usize)>, usize) {
    let mut work = gens.to_vec();
    let mut idx = m.indices.clone();
    // Pull each matched generator down to sit right above the previous one.
    for k in 1..idx.len() {
        let want = idx[k - 1] + 1;
        while idx[k] > want {
            let j = idx[k];
            let below = work[j - 1];
            let above = work[j];
            let (b_new, a_new) =
                commute(below, above).expect("match guaranteed disjointness");
            work[j - 1] = (above.0, b_new);
            work[j] = (below.0, a_new);
            idx[k] -= 1;
        }
    }
    (work, idx[0])
}

/// Canonical word realizing a permutation as adjacent transpositions,
/// bottom-to-top.  `perm[i]` is the output position of input strand `i`.
fn canonical_cross_word(perm: &[usize]) -> Vec<usize> {
    let mut arr: Vec<usize> = perm.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..arr.len().saturating_sub(1)).find(|&i| arr[i] > arr[i + 1]) else {
            break;
        };
        arr.swap(i, i + 1);
        word.push(i);
    }
    word
}

/// Rewrites each maximal run of consecutive crossings to the canonical
/// word of its permutation.  Returns true if anything changed.
fn canonicalize_cross_runs(gens: &mut Vec<(Gen, usize)>) -> bool {
    let mut i = 0;
    while i < gens.len() {
        if gens[i].0 != Gen::Cross {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < gens.len() && gens[j].0 == Gen::Cross {
            j += 1;
        }
        let lo = gens[i..j].iter().map(|&(_, p)| p).min().unwrap();
        let hi = gens[i..j].iter().map(|&(_, p)| p).max().unwrap() + 2;
        // Track where each input strand ends up, then invert to get the
        // permutation sending input position to output position.
        let mut cur: Vec<usize> = (0..hi - lo).collect();
        for &(_, p) in &gens[i..j] {
            cur.swap(p - lo, p - lo + 1);
        }
        let mut perm = vec![0usize; cur.len()];
        for (slot, &orig) in cur.iter().enumerate() {
            perm[orig] = slot;
        }
        let word = canonical_cross_word(&perm);
        let current: Vec<usize> = gens[i..j].iter().map(|&(_, p)| p - lo).collect();
        if word != current {
            let replacement: Vec<(Gen, usize)> =
                word.iter().map(|&q| (Gen::Cross, q + lo)).collect();
            gens.splice(i..j, replacement);
            return true;
        }
        i = j;
    }
    false
}

/// Normalizes a linear combination of diagrams: fixed-priority rewriting
/// (curls, double crossings, circle, zigzags, crossing runs) under the
/// canonical stacking order, with a step budget.
pub fn normalize(term: &DiagramTerm, budget: usize) -> Result<DiagramTerm, DiagramError> {
    let mut out = DiagramTerm::zero(term.source().clone(), term.target().clone());
    let mut steps = 0usize;
    let mut work: Vec<(Diagram, Int)> = term
        .terms()
        .iter()
        .map(|(d, c)| (d.clone(), c.clone()))
        .collect();
    while let Some((d, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        // A relation can be visible in one stacking of a diagram and hidden
        // in another, so search every restacking, in priority order.
        let words = restackings(d.gens(), budget)?;
        let mut matched = false;
        'pats: for pat in PATTERNS {
            for gens in &words {
                let Some(m) = find_pattern(gens, pat) else {
                    continue;
                };
                steps += 1;
                if steps > budget {
                    return Err(DiagramError::BudgetExceeded { budget });
                }
                let (contiguous, start) = make_contiguous(gens, &m);
                let base = contiguous[start].1 - pat.gens[0].1;
                for alt in pat.replacement {
                    let mut new_gens: Vec<(Gen, usize)> = contiguous[..start].to_vec();
                    new_gens.extend(alt.gens.iter().map(|&(g, r)| (g, base + r)));
                    new_gens.extend_from_slice(&contiguous[start + pat.gens.len()..]);
                    let nd = Diagram::with_gens_unchecked(
                        d.source().clone(),
                        d.target().clone(),
                        new_gens,
                    );
                    work.push((nd, c.clone() * Int::from(alt.coeff)));
                }
                matched = true;
                break 'pats;
            }
        }
        if matched {
            continue;
        }
        // Crossing runs are canonicalized on the least word only; a rewrite
        // that merely restacks commuting crossings is not progress.
        let mut w0 = words[0].clone();
        if canonicalize_cross_runs(&mut w0) && !words.contains(&w0) {
            steps += 1;
            if steps > budget {
                return Err(DiagramError::BudgetExceeded { budget });
            }
            let nd = Diagram::with_gens_unchecked(d.source().clone(), d.target().clone(), w0);
            work.push((nd, c));
            continue;
        }
        let nd = Diagram::with_gens_unchecked(
            d.source().clone(),
            d.target().clone(),
            words[0].clone(),
        );
        out.add_diagram(nd, c);
    }
    Ok(out)
}

/// Normalize-and-compare equality.  Sound for the relations; complete on
/// the tested corpus.
pub fn equal(a: &DiagramTerm, b: &DiagramTerm, budget: usize) -> Result<bool, DiagramError> {
    if a.source() != b.source() || a.target() != b.target() {
        return Ok(false);
    }
    Ok(normalize(a, budget)? == normalize(b, budget)?)
}
