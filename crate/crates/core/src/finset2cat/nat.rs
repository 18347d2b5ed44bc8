//! Natural transformations between composites of pullbacks and
//! pushforwards, stored stalkwise on skyscrapers.
//!
//! All functors in play are additive and determined by stalks, so a natural
//! transformation is determined by its components on the skyscraper sheaves
//! and extends to arbitrary objects by tensoring each block with an identity
//! (this additivity lemma gets its own unit test).  Storage is one exact
//! rational matrix per pair (source point, target point), indexed by the
//! occurrences of the source point in the two functor profiles; naturality
//! is built into this representation.

use std::collections::BTreeMap;

use crate::error::SheafError;
use crate::matrix::Mat;
use crate::Rat;

use super::base::{FinMap, SheafObj};
use super::functor::FunctorWord;

fn occurrences(profile: &[usize], s: usize) -> Vec<usize> {
    profile
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == s)
        .map(|(i, _)| i)
        .collect()
}

/// A natural transformation between two functor words with the same
/// endpoints, as one matrix per (source point, target point).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockNat {
    src: FunctorWord,
    dst: FunctorWord,
    blocks: BTreeMap<(usize, usize), Mat<Rat>>,
}

impl BlockNat {
    /// Builds from raw blocks, validating every shape against the two
    /// profiles.
    pub fn new(
        src: FunctorWord,
        dst: FunctorWord,
        blocks: BTreeMap<(usize, usize), Mat<Rat>>,
    ) -> Result<Self, SheafError> {
        if src.source() != dst.source() || src.target() != dst.target() {
            return Err(SheafError::BaseMismatch {
                expected: src.target().size,
                found: dst.target().size,
            });
        }
        let nat = BlockNat { src, dst, blocks };
        for s in nat.src.source().elems() {
            for t in nat.src.target().elems() {
                let rows = occurrences(&nat.dst.profile(t), s).len();
                let cols = occurrences(&nat.src.profile(t), s).len();
                let b = nat.block(s, t);
                if (b.rows(), b.cols()) != (rows, cols) {
                    return Err(SheafError::BaseMismatch {
                        expected: rows,
                        found: b.rows(),
                    });
                }
            }
        }
        Ok(nat)
    }

    fn from_fn(
        src: FunctorWord,
        dst: FunctorWord,
        mut f: impl FnMut(usize, usize, &[usize], &[usize]) -> Mat<Rat>,
    ) -> Self {
        let mut blocks = BTreeMap::new();
        let src_profiles = src.profiles();
        let dst_profiles = dst.profiles();
        for s in src.source().elems() {
            for (t, (sp, dp)) in src_profiles.iter().zip(dst_profiles.iter()).enumerate() {
                let occ_s = occurrences(sp, s);
                let occ_d = occurrences(dp, s);
                blocks.insert((s, t), f(s, t, &occ_s, &occ_d));
            }
        }
        BlockNat { src, dst, blocks }
    }

    pub fn identity(word: FunctorWord) -> Self {
        Self::from_fn(word.clone(), word, |_, _, occ, _| Mat::identity(occ.len()))
    }

    /// The canonical identification of two words with equal profiles up to
    /// reordering: the identity matrix in the chosen bases.  Fails when the
    /// occurrence counts differ.
    pub fn canonical_iso(src: FunctorWord, dst: FunctorWord) -> Result<Self, SheafError> {
        for s in src.source().elems() {
            for t in src.target().elems() {
                let a = occurrences(&src.profile(t), s).len();
                let b = occurrences(&dst.profile(t), s).len();
                if a != b {
                    return Err(SheafError::BaseMismatch {
                        expected: a,
                        found: b,
                    });
                }
            }
        }
        Ok(Self::from_fn(src, dst, |_, _, occ, _| {
            Mat::identity(occ.len())
        }))
    }

    pub fn src(&self) -> &FunctorWord {
        &self.src
    }

    pub fn dst(&self) -> &FunctorWord {
        &self.dst
    }

    pub fn block(&self, s: usize, t: usize) -> Mat<Rat> {
        self.blocks.get(&(s, t)).cloned().unwrap_or_else(|| {
            let rows = occurrences(&self.dst.profile(t), s).len();
            let cols = occurrences(&self.src.profile(t), s).len();
            Mat::zeros(rows, cols)
        })
    }

    /// The component at an arbitrary object, one matrix per target point,
    /// by additivity: each block entry becomes a scalar multiple of an
    /// identity on the stalk.
    pub fn eval(&self, v: &SheafObj) -> Result<Vec<Mat<Rat>>, SheafError> {
        if v.base != self.src.source() {
            return Err(SheafError::BaseMismatch {
                expected: self.src.source().size,
                found: v.base.size,
            });
        }
        let mut out = Vec::new();
        for t in self.src.target().elems() {
            let sp = self.src.profile(t);
            let dp = self.dst.profile(t);
            let col_off = offsets(&sp, &v.dims);
            let row_off = offsets(&dp, &v.dims);
            let rows: usize = dp.iter().map(|&s| v.dims[s]).sum();
            let cols: usize = sp.iter().map(|&s| v.dims[s]).sum();
            let mut m = Mat::zeros(rows, cols);
            for s in v.base.elems() {
                let d = v.dims[s];
                if d == 0 {
                    continue;
                }
                let occ_s = occurrences(&sp, s);
                let occ_d = occurrences(&dp, s);
                let b = self.block(s, t);
                for (bj, &j) in occ_d.iter().enumerate() {
                    for (bi, &i) in occ_s.iter().enumerate() {
                        let c = &b[(bj, bi)];
                        if c == &Rat::from_integer(0.into()) {
                            continue;
                        }
                        for k in 0..d {
                            m[(row_off[j] + k, col_off[i] + k)] = c.clone();
                        }
                    }
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    /// Vertical composition: `second` after `first`.
    pub fn vcomp(second: &BlockNat, first: &BlockNat) -> Result<BlockNat, SheafError> {
        if first.dst != second.src {
            return Err(SheafError::BaseMismatch {
                expected: second.src.target().size,
                found: first.dst.target().size,
            });
        }
        Ok(BlockNat::from_fn(
            first.src.clone(),
            second.dst.clone(),
            |s, t, _, _| second.block(s, t).mul(&first.block(s, t)),
        ))
    }

    /// Postcomposition with a functor word: `K F -> K G`.
    pub fn whisker_left(k: &FunctorWord, nat: &BlockNat) -> Result<BlockNat, SheafError> {
        let src = k.after(&nat.src)?;
        let dst = k.after(&nat.dst)?;
        let mut blocks = BTreeMap::new();
        for s in src.source().elems() {
            for u in k.target().elems() {
                let parts: Vec<Mat<Rat>> =
                    k.profile(u).iter().map(|&t| nat.block(s, t)).collect();
                blocks.insert((s, u), Mat::block_diag(&parts));
            }
        }
        BlockNat::new(src, dst, blocks)
    }

    /// Precomposition with a functor word: `F H -> G H`, computed by
    /// evaluating at the images of skyscrapers.
    pub fn whisker_right(nat: &BlockNat, h: &FunctorWord) -> Result<BlockNat, SheafError> {
        let src = nat.src.after(h)?;
        let dst = nat.dst.after(h)?;
        let mut blocks = BTreeMap::new();
        for r in h.source().elems() {
            let v = h.apply(&SheafObj::skyscraper(h.source(), r))?;
            for (t, m) in nat.eval(&v)?.into_iter().enumerate() {
                blocks.insert((r, t), m);
            }
        }
        BlockNat::new(src, dst, blocks)
    }

    /// The first non-invertible block, if any.
    pub fn invertibility_witness(&self) -> Option<(usize, usize)> {
        for s in self.src.source().elems() {
            for t in self.src.target().elems() {
                if !self.block(s, t).is_invertible() {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn is_invertible(&self) -> bool {
        self.invertibility_witness().is_none()
    }

    pub fn invert(&self) -> Result<BlockNat, SheafError> {
        let mut blocks = BTreeMap::new();
        for s in self.src.source().elems() {
            for t in self.src.target().elems() {
                let inv = self.block(s, t).inverse().ok_or_else(|| {
                    SheafError::NotInvertible {
                        witness: format!("block at source point {s}, target point {t}"),
                    }
                })?;
                blocks.insert((s, t), inv);
            }
        }
        BlockNat::new(self.dst.clone(), self.src.clone(), blocks)
    }

    /// Negation of every block; used for fault injection in tests.
    pub fn negate(&self) -> BlockNat {
        BlockNat {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(&k, b)| (k, b.neg()))
                .collect(),
        }
    }
}

fn offsets(profile: &[usize], dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(profile.len());
    let mut acc = 0;
    for &s in profile {
        out.push(acc);
        acc += dims[s];
    }
    out
}

/// The unit of `φ* ⊣ φ_*`: the diagonal maps `W(B) -> φ_*φ*W(B)`.
pub fn eta_r(phi: &FinMap) -> BlockNat {
    let id = FunctorWord::identity(phi.target());
    let pp = FunctorWord::push(phi).after(&FunctorWord::pull(phi)).unwrap();
    BlockNat::from_fn(id, pp, |_, _, occ_s, occ_d| {
        Mat::from_fn(occ_d.len(), occ_s.len(), |_, _| Rat::from_integer(1.into()))
    })
}

/// The counit of `φ* ⊣ φ_*`: the restrictions `φ*φ_*V(A) -> V(A)`.
pub fn eps_r(phi: &FinMap) -> BlockNat {
    let pp = FunctorWord::pull(phi).after(&FunctorWord::push(phi)).unwrap();
    let id = FunctorWord::identity(phi.source());
    BlockNat::from_fn(pp, id, |s, a, occ_s, occ_d| {
        // The single row selects the coordinate at the point itself.
        Mat::from_fn(occ_d.len(), occ_s.len(), |_, i| {
            let prof_pos = occ_s[i];
            if phi.fiber(phi.apply(a))[prof_pos] == s && s == a {
                Rat::from_integer(1.into())
            } else {
                Rat::from_integer(0.into())
            }
        })
    })
}

/// The unit of `φ_* ⊣ φ*`: extension by zero `V(A) -> φ*φ_*V(A)`.
pub fn eta_l(phi: &FinMap) -> BlockNat {
    let id = FunctorWord::identity(phi.source());
    let pp = FunctorWord::pull(phi).after(&FunctorWord::push(phi)).unwrap();
    BlockNat::from_fn(id, pp, |s, a, occ_s, occ_d| {
        Mat::from_fn(occ_d.len(), occ_s.len(), |_, _| {
            if s == a {
                Rat::from_integer(1.into())
            } else {
                Rat::from_integer(0.into())
            }
        })
    })
}

/// The counit of `φ_* ⊣ φ*`: the sum maps `φ_*φ*W(B) -> W(B)`.
pub fn eps_l(phi: &FinMap) -> BlockNat {
    let pp = FunctorWord::push(phi).after(&FunctorWord::pull(phi)).unwrap();
    let id = FunctorWord::identity(phi.target());
    BlockNat::from_fn(pp, id, |_, _, occ_s, occ_d| {
        Mat::from_fn(occ_d.len(), occ_s.len(), |_, _| Rat::from_integer(1.into()))
    })
}

/// A commuting square of finite-set maps.
///
/// ```text
///         top
///      A ----> B
/// left |       | right      right∘top = bottom∘left
///      v       v
///      C ----> D
///        bottom
/// ```
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct SquareOfSets {
    top: FinMap,
    left: FinMap,
    right: FinMap,
    bottom: FinMap,
}

impl SquareOfSets {
    pub fn new(
        top: FinMap,
        left: FinMap,
        right: FinMap,
        bottom: FinMap,
    ) -> Result<Self, SheafError> {
        if right.compose(&top)? != bottom.compose(&left)? {
            return Err(SheafError::NonCommutingSquare);
        }
        Ok(SquareOfSets {
            top,
            left,
            right,
            bottom,
        })
    }

    /// The fiber-product square over `h: B -> D`, `i: C -> D`, with the
    /// corner `{(b, c) : h(b) = i(c)}` ordered lexicographically.
    pub fn cartesian(h: &FinMap, i: &FinMap) -> Result<Self, SheafError> {
        if h.target() != i.target() {
            return Err(SheafError::BaseMismatch {
                expected: h.target().size,
                found: i.target().size,
            });
        }
        let mut top = Vec::new();
        let mut left = Vec::new();
        for b in h.source().elems() {
            for c in i.source().elems() {
                if h.apply(b) == i.apply(c) {
                    top.push(b);
                    left.push(c);
                }
            }
        }
        let a = super::base::FinSet::new(top.len());
        SquareOfSets::new(
            FinMap::new(a, h.source(), top)?,
            FinMap::new(a, i.source(), left)?,
            h.clone(),
            i.clone(),
        )
    }

    pub fn top(&self) -> &FinMap {
        &self.top
    }
    pub fn left(&self) -> &FinMap {
        &self.left
    }
    pub fn right(&self) -> &FinMap {
        &self.right
    }
    pub fn bottom(&self) -> &FinMap {
        &self.bottom
    }

    /// The canonical 2-morphism `right_* top_* -> bottom_* left_*` given by
    /// the strict identification of both composites with the diagonal.
    pub fn canonical_alpha(&self) -> BlockNat {
        let src = FunctorWord::push(&self.right)
            .after(&FunctorWord::push(&self.top))
            .unwrap();
        let dst = FunctorWord::push(&self.bottom)
            .after(&FunctorWord::push(&self.left))
            .unwrap();
        BlockNat::canonical_iso(src, dst).expect("commuting square profiles agree")
    }
}

impl<'de> serde::Deserialize<'de> for SquareOfSets {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            top: FinMap,
            left: FinMap,
            right: FinMap,
            bottom: FinMap,
        }
        let raw = Raw::deserialize(d)?;
        SquareOfSets::new(raw.top, raw.left, raw.right, raw.bottom)
            .map_err(serde::de::Error::custom)
    }
}

/// The right mate: replaces the verticals by their right adjoints, turning
/// `α: right_* top_* -> bottom_* left_*` into
/// `α_R: top_* left* -> right* bottom_*` via the unit/counit composite.
pub fn right_mate(square: &SquareOfSets, alpha: &BlockNat) -> Result<BlockNat, SheafError> {
    right_mate_with(square, alpha, &eps_l(square.left()))
}

/// The same composite with an injectable counit for the left vertical;
/// used by tests to demonstrate that the mate construction fails with the
/// wrong adjunction data.
pub(crate) fn right_mate_with(
    square: &SquareOfSets,
    alpha: &BlockNat,
    eps_left: &BlockNat,
) -> Result<BlockNat, SheafError> {
    let w = FunctorWord::push(square.top()).after(&FunctorWord::pull(square.left()))?;
    let nu1 = BlockNat::whisker_right(&eta_l(square.right()), &w)?;
    let nu2 = BlockNat::whisker_left(
        &FunctorWord::pull(square.right()),
        &BlockNat::whisker_right(alpha, &FunctorWord::pull(square.left()))?,
    )?;
    let k = FunctorWord::pull(square.right()).after(&FunctorWord::push(square.bottom()))?;
    let nu3 = BlockNat::whisker_left(&k, eps_left)?;
    BlockNat::vcomp(&nu3, &BlockNat::vcomp(&nu2, &nu1)?)
}

/// The inverse construction: recovers `α: right_* top_* -> bottom_* left_*`
/// from a 2-morphism of the mated shape, using the other triangle of the
/// same adjunctions.
pub fn left_mate(square: &SquareOfSets, beta: &BlockNat) -> Result<BlockNat, SheafError> {
    let k1 = FunctorWord::push(square.right()).after(&FunctorWord::push(square.top()))?;
    let nu1 = BlockNat::whisker_left(&k1, &eta_l(square.left()))?;
    let nu2 = BlockNat::whisker_left(
        &FunctorWord::push(square.right()),
        &BlockNat::whisker_right(beta, &FunctorWord::push(square.left()))?,
    )?;
    let h = FunctorWord::push(square.bottom()).after(&FunctorWord::push(square.left()))?;
    let nu3 = BlockNat::whisker_right(&eps_l(square.right()), &h)?;
    BlockNat::vcomp(&nu3, &BlockNat::vcomp(&nu2, &nu1)?)
}

/// Beck-Chevalley: the right mate of the canonical 2-morphism is tested for
/// invertibility on all skyscrapers, which suffices by additivity.
pub fn bc_check(square: &SquareOfSets) -> Result<(bool, Option<String>), SheafError> {
    let alpha = square.canonical_alpha();
    let mate = right_mate(square, &alpha)?;
    match mate.invertibility_witness() {
        None => Ok((true, None)),
        Some((s, t)) => Ok((
            false,
            Some(format!(
                "singular block at source point {s}, target point {t}"
            )),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset2cat::base::FinSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cmap(src: usize, tgt: usize, table: &[usize]) -> FinMap {
        FinMap::new(FinSet::new(src), FinSet::new(tgt), table.to_vec()).unwrap()
    }

    fn all_maps(max: usize) -> Vec<FinMap> {
        let mut out = Vec::new();
        for n in 0..=max {
            for m in 0..=max {
                out.extend(FinMap::enumerate(FinSet::new(n), FinSet::new(m)));
            }
        }
        out
    }

    #[test]
    fn zigzags_exhaustive() {
        for phi in all_maps(4) {
            let pull = FunctorWord::pull(&phi);
            let push = FunctorWord::push(&phi);
            // φ* ⊣ φ_* triangles.
            let a1 = BlockNat::whisker_left(&pull, &eta_r(&phi)).unwrap();
            let a2 = BlockNat::whisker_right(&eps_r(&phi), &pull).unwrap();
            assert_eq!(
                BlockNat::vcomp(&a2, &a1).unwrap(),
                BlockNat::identity(pull.clone()),
                "pull triangle for {phi:?}"
            );
            let b1 = BlockNat::whisker_right(&eta_r(&phi), &push).unwrap();
            let b2 = BlockNat::whisker_left(&push, &eps_r(&phi)).unwrap();
            assert_eq!(
                BlockNat::vcomp(&b2, &b1).unwrap(),
                BlockNat::identity(push.clone()),
                "push triangle for {phi:?}"
            );
            // φ_* ⊣ φ* triangles.
            let c1 = BlockNat::whisker_left(&push, &eta_l(&phi)).unwrap();
            let c2 = BlockNat::whisker_right(&eps_l(&phi), &push).unwrap();
            assert_eq!(
                BlockNat::vcomp(&c2, &c1).unwrap(),
                BlockNat::identity(push.clone())
            );
            let d1 = BlockNat::whisker_right(&eta_l(&phi), &pull).unwrap();
            let d2 = BlockNat::whisker_left(&pull, &eps_l(&phi)).unwrap();
            assert_eq!(
                BlockNat::vcomp(&d2, &d1).unwrap(),
                BlockNat::identity(pull.clone())
            );
        }
    }

    #[test]
    fn identity_map_adjunction_data_is_identity() {
        let phi = FinMap::identity(FinSet::new(3));
        for nat in [eta_r(&phi), eps_r(&phi), eta_l(&phi), eps_l(&phi)] {
            for s in 0..3 {
                for t in 0..3 {
                    let expect = if s == t { Mat::identity(1) } else { Mat::zeros(0, 0) };
                    assert_eq!(nat.block(s, t), expect);
                }
            }
        }
    }

    #[test]
    fn diagonal_and_sum_examples() {
        let phi = cmap(2, 1, &[0, 0]);
        // η_R on the target: a 2x1 column of ones (the diagonal).
        let eta = eta_r(&phi);
        assert_eq!(
            eta.block(0, 0),
            Mat::from_fn(2, 1, |_, _| Rat::from_integer(1.into()))
        );
        // ε_L: a 1x2 row of ones (the sum).
        let eps = eps_l(&phi);
        assert_eq!(
            eps.block(0, 0),
            Mat::from_fn(1, 2, |_, _| Rat::from_integer(1.into()))
        );
        // η_L: extension by zero off the diagonal point.
        let etal = eta_l(&phi);
        assert_eq!(etal.block(0, 0), Mat::identity(1));
        assert_eq!(etal.block(1, 0).rows(), 1);
        assert_eq!(etal.block(1, 0).cols(), 0);
    }

    #[test]
    fn eval_is_natural() {
        // ν_V commutes with F(f), G(f) for a generating family of sheaf
        // morphisms f: V -> V given by arbitrary per-point matrices.
        let phi = cmap(3, 2, &[0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut random_mor = |v: &SheafObj| -> Vec<Mat<Rat>> {
            v.dims
                .iter()
                .map(|&d| {
                    Mat::from_fn(d, d, |_, _| {
                        Rat::from_integer(rng.gen_range(-3i64..=3).into())
                    })
                })
                .collect()
        };
        for nat in [eta_l(&phi), eps_l(&phi), eta_r(&phi), eps_r(&phi)] {
            let base = nat.src().source();
            let v = SheafObj::new(base, (0..base.size).map(|s| s + 1).collect()).unwrap();
            let f = random_mor(&v);
            let comps = nat.eval(&v).unwrap();
            for t in nat.src().target().elems() {
                let ff = apply_word_to_morphism(nat.src(), &f, t);
                let gf = apply_word_to_morphism(nat.dst(), &f, t);
                assert_eq!(comps[t].mul(&ff), gf.mul(&comps[t]));
            }
        }
    }

    fn apply_word_to_morphism(word: &FunctorWord, f: &[Mat<Rat>], t: usize) -> Mat<Rat> {
        let parts: Vec<Mat<Rat>> = word.profile(t).iter().map(|&s| f[s].clone()).collect();
        Mat::block_diag(&parts)
    }

    #[test]
    fn identity_square_mate_is_identity() {
        let id = FinMap::identity(FinSet::new(2));
        let square =
            SquareOfSets::new(id.clone(), id.clone(), id.clone(), id.clone()).unwrap();
        let alpha = square.canonical_alpha();
        let mate = right_mate(&square, &alpha).unwrap();
        for s in 0..2 {
            for t in 0..2 {
                let expect = if s == t { Mat::identity(1) } else { Mat::zeros(0, 0) };
                assert_eq!(mate.block(s, t), expect);
            }
        }
    }

    fn random_commuting_square(rng: &mut ChaCha8Rng) -> SquareOfSets {
        loop {
            let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
            let (na, nb, nc, nd) = (sizes[0], sizes[1], sizes[2], sizes[3]);
            let g = cmap(na, nb, &(0..na).map(|_| rng.gen_range(0..nb)).collect::<Vec<_>>());
            let f = cmap(na, nc, &(0..na).map(|_| rng.gen_range(0..nc)).collect::<Vec<_>>());
            let h = cmap(nb, nd, &(0..nb).map(|_| rng.gen_range(0..nd)).collect::<Vec<_>>());
            let i = cmap(nc, nd, &(0..nc).map(|_| rng.gen_range(0..nd)).collect::<Vec<_>>());
            if let Ok(sq) = SquareOfSets::new(g, f, h, i) {
                return sq;
            }
        }
    }

    #[test]
    fn mate_of_mate_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let sq = random_commuting_square(&mut rng);
            let alpha = sq.canonical_alpha();
            let back = left_mate(&sq, &right_mate(&sq, &alpha).unwrap()).unwrap();
            assert_eq!(back, alpha, "square {sq:?}");
        }
    }

    pub(crate) fn hopf_square() -> SquareOfSets {
        // The 4 -> 2 -> 1 square: the top map folds 1,2 and 3,4 together,
        // the left map folds 1,3 and 2,4.
        let g = cmap(4, 2, &[0, 0, 1, 1]);
        let f = cmap(4, 2, &[0, 1, 0, 1]);
        let h = cmap(2, 1, &[0, 0]);
        SquareOfSets::new(g, f, h.clone(), h).unwrap()
    }

    #[test]
    fn hopf_square_is_cartesian_and_bc() {
        let sq = hopf_square();
        let cart = SquareOfSets::cartesian(sq.right(), sq.bottom()).unwrap();
        assert_eq!(cart.top(), sq.top());
        assert_eq!(cart.left(), sq.left());
        let mate = right_mate(&sq, &sq.canonical_alpha()).unwrap();
        assert!(mate.is_invertible());
        let (ok, witness) = bc_check(&sq).unwrap();
        assert!(ok);
        assert!(witness.is_none());
    }

    #[test]
    fn bc_exhaustive_cartesian() {
        for h in all_maps(3) {
            for i in all_maps(3) {
                if h.target() != i.target() {
                    continue;
                }
                let sq = SquareOfSets::cartesian(&h, &i).unwrap();
                let (ok, witness) = bc_check(&sq).unwrap();
                assert!(ok, "failed on {sq:?}: {witness:?}");
            }
        }
    }

    #[test]
    fn bc_fails_on_empty_corner() {
        let pt = FinSet::new(1);
        let one = FinMap::identity(pt);
        let empty = FinMap::new(FinSet::new(0), pt, vec![]).unwrap();
        let sq = SquareOfSets::new(empty.clone(), empty, one.clone(), one).unwrap();
        let (ok, witness) = bc_check(&sq).unwrap();
        assert!(!ok);
        assert!(witness.unwrap().contains("singular block"));
    }

    #[test]
    fn invertibility_on_skyscrapers_agrees_with_dense_objects() {
        // The additivity lemma at work: a transformation is invertible iff
        // its components on 20 random dense sheaves are invertible.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let good = right_mate(&hopf_square(), &hopf_square().canonical_alpha()).unwrap();
        let pt = FinSet::new(1);
        let one = FinMap::identity(pt);
        let empty = FinMap::new(FinSet::new(0), pt, vec![]).unwrap();
        let bad_sq = SquareOfSets::new(empty.clone(), empty, one.clone(), one).unwrap();
        let bad = right_mate(&bad_sq, &bad_sq.canonical_alpha()).unwrap();
        for nat in [&good, &bad] {
            let base = nat.src().source();
            let mut dense_all_invertible = true;
            for _ in 0..20 {
                let dims: Vec<usize> = (0..base.size).map(|_| rng.gen_range(1..=3)).collect();
                let v = SheafObj::new(base, dims).unwrap();
                for m in nat.eval(&v).unwrap() {
                    if !m.is_invertible() {
                        dense_all_invertible = false;
                    }
                }
            }
            assert_eq!(nat.is_invertible(), dense_all_invertible);
        }
    }

    #[test]
    fn square_requires_commuting_maps() {
        let g = cmap(2, 2, &[0, 1]);
        let f = cmap(2, 2, &[1, 0]);
        let id = FinMap::identity(FinSet::new(2));
        assert!(matches!(
            SquareOfSets::new(g, f, id.clone(), id),
            Err(SheafError::NonCommutingSquare)
        ));
    }
}
