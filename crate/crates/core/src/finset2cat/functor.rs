//! Formal composites of pullback and pushforward functors.
//!
//! Every such composite `F: Sh(S) -> Sh(T)` is determined by its "profile":
//! for each target point `t`, the ordered sequence of source points whose
//! stalks make up the stalk `F(V)_t = ⊕ V_{s_i}`.  The identity has profile
//! `[t]`, a pullback along `φ` reads off `[profile of φ(a)]`, and a
//! pushforward concatenates the profiles over the fiber in increasing
//! order.  Applying `F` to a morphism of sheaves places the corresponding
//! stalk maps block-diagonally along the profile.

use crate::error::SheafError;

use super::base::{FinMap, FinSet, SheafObj};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    Pull(FinMap),
    Push(FinMap),
}

impl Step {
    /// Source category base of the functor step.
    pub fn source(&self) -> FinSet {
        match self {
            Step::Pull(phi) => phi.target(),
            Step::Push(phi) => phi.source(),
        }
    }

    pub fn target(&self) -> FinSet {
        match self {
            Step::Pull(phi) => phi.source(),
            Step::Push(phi) => phi.target(),
        }
    }
}

/// A composite of pullbacks and pushforwards, innermost step first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FunctorWord {
    source: FinSet,
    target: FinSet,
    steps: Vec<Step>,
}

impl FunctorWord {
    pub fn identity(base: FinSet) -> Self {
        FunctorWord {
            source: base,
            target: base,
            steps: Vec::new(),
        }
    }

    pub fn new(source: FinSet, steps: Vec<Step>) -> Result<Self, SheafError> {
        let mut cur = source;
        for step in &steps {
            if step.source() != cur {
                return Err(SheafError::BaseMismatch {
                    expected: step.source().size,
                    found: cur.size,
                });
            }
            cur = step.target();
        }
        Ok(FunctorWord {
            source,
            target: cur,
            steps,
        })
    }

    pub fn pull(phi: &FinMap) -> Self {
        FunctorWord {
            source: phi.target(),
            target: phi.source(),
            steps: vec![Step::Pull(phi.clone())],
        }
    }

    pub fn push(phi: &FinMap) -> Self {
        FunctorWord {
            source: phi.source(),
            target: phi.target(),
            steps: vec![Step::Push(phi.clone())],
        }
    }

    pub fn source(&self) -> FinSet {
        self.source
    }

    pub fn target(&self) -> FinSet {
        self.target
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &FunctorWord) -> Result<FunctorWord, SheafError> {
        if inner.target != self.source {
            return Err(SheafError::BaseMismatch {
                expected: self.source.size,
                found: inner.target.size,
            });
        }
        let mut steps = inner.steps.clone();
        steps.extend(self.steps.iter().cloned());
        Ok(FunctorWord {
            source: inner.source,
            target: self.target,
            steps,
        })
    }

    /// The ordered sequence of source points contributing to the stalk at
    /// `t` of the image.
    pub fn profile(&self, t: usize) -> Vec<usize> {
        let mut profiles: Vec<Vec<usize>> = self.source.elems().map(|s| vec![s]).collect();
        for step in &self.steps {
            profiles = match step {
                Step::Pull(phi) => phi
                    .source()
                    .elems()
                    .map(|a| profiles[phi.apply(a)].clone())
                    .collect(),
                Step::Push(phi) => phi
                    .target()
                    .elems()
                    .map(|b| {
                        phi.fiber(b)
                            .into_iter()
                            .flat_map(|a| profiles[a].iter().copied())
                            .collect()
                    })
                    .collect(),
            };
        }
        profiles[t].clone()
    }

    /// All profiles at once, indexed by target point.
    pub fn profiles(&self) -> Vec<Vec<usize>> {
        self.target.elems().map(|t| self.profile(t)).collect()
    }

    /// The image object, stalkwise.
    pub fn apply(&self, v: &SheafObj) -> Result<SheafObj, SheafError> {
        if v.base != self.source {
            return Err(SheafError::BaseMismatch {
                expected: self.source.size,
                found: v.base.size,
            });
        }
        let dims = self
            .profiles()
            .into_iter()
            .map(|prof| prof.into_iter().map(|s| v.dims[s]).sum())
            .collect();
        SheafObj::new(self.target, dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset2cat::base::{pullback, pushforward};

    fn cmap(src: usize, tgt: usize, table: &[usize]) -> FinMap {
        FinMap::new(FinSet::new(src), FinSet::new(tgt), table.to_vec()).unwrap()
    }

    #[test]
    fn profiles_match_push_pull() {
        let phi = cmap(3, 2, &[0, 1, 0]);
        let v = SheafObj::new(FinSet::new(3), vec![1, 2, 3]).unwrap();
        let push = FunctorWord::push(&phi);
        assert_eq!(push.apply(&v).unwrap(), pushforward(&phi, &v).unwrap());
        assert_eq!(push.profile(0), vec![0, 2]);
        assert_eq!(push.profile(1), vec![1]);

        let w = SheafObj::new(FinSet::new(2), vec![5, 7]).unwrap();
        let pull = FunctorWord::pull(&phi);
        assert_eq!(pull.apply(&w).unwrap(), pullback(&phi, &w).unwrap());
        assert_eq!(pull.profiles(), vec![vec![0], vec![1], vec![0]]);
    }

    #[test]
    fn composite_closed_formula() {
        // pull-after-push has stalks V(φ⁻¹(φ(a))) and push-after-pull has
        // stalks of W at φ(a) summed over the fiber, for all maps between
        // sets of size at most 4.
        for n in 0..=4usize {
            for m in 0..=4usize {
                for phi in FinMap::enumerate(FinSet::new(n), FinSet::new(m)) {
                    let pp = FunctorWord::pull(&phi)
                        .after(&FunctorWord::push(&phi))
                        .unwrap();
                    for a in 0..n {
                        assert_eq!(pp.profile(a), phi.fiber(phi.apply(a)));
                    }
                    let qq = FunctorWord::push(&phi)
                        .after(&FunctorWord::pull(&phi))
                        .unwrap();
                    for b in 0..m {
                        let expected: Vec<usize> =
                            phi.fiber(b).into_iter().map(|a| phi.apply(a)).collect();
                        assert_eq!(qq.profile(b), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn composition_base_mismatch() {
        let phi = cmap(2, 1, &[0, 0]);
        let psi = cmap(3, 2, &[0, 1, 1]);
        assert!(FunctorWord::push(&phi)
            .after(&FunctorWord::push(&psi))
            .is_ok());
        assert!(FunctorWord::push(&psi)
            .after(&FunctorWord::push(&phi))
            .is_err());
    }
}
