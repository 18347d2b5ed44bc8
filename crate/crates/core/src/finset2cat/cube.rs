//! Commutative cubes of finite sets and their 2-morphism coherence.
//!
//! A cube has directions `x < y < z`; its corners are indexed by bits
//! `(x, y, z)` and its twelve edges point in the increasing direction.  The
//! six faces carry 2-morphisms between the pushforward composites around
//! them, oriented from the lexicographically earlier path: the face in
//! directions `(p, q)` with `p < q` maps (apply `p` then `q`) to (apply `q`
//! then `p`).  The full diagram of 2-morphisms between the six maximal
//! paths `xyz -> zyx` closes into a hexagon, checked here matrix-exactly.
//!
//! Replacing all edges of one direction by their pullbacks and mating the
//! adjacent faces yields the mate cube; its hexagon is checked in the
//! reversed-direction ordering (`z' < x < y` for direction `z`, and
//! `y < z < x'` for direction `x`).

use std::collections::BTreeMap;

use crate::error::SheafError;
use crate::matrix::Mat;

use super::base::{FinMap, FinSet};
use super::functor::FunctorWord;
use super::nat::{eps_r, eta_r, right_mate, BlockNat, SquareOfSets};

/// The direction along which a cube is mated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeDirection {
    X,
    Z,
}

impl std::str::FromStr for CubeDirection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "x" => Ok(CubeDirection::X),
            "z" => Ok(CubeDirection::Z),
            other => Err(format!("unknown cube direction `{other}` (expected x or z)")),
        }
    }
}

/// A commutative cube of finite sets.
///
/// Edge storage: `x_edges[y*2+z]` is the x-direction edge at the given
/// `(y, z)` bits, and similarly `y_edges[x*2+z]`, `z_edges[x*2+y]`.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CubeOfSets {
    x_edges: Vec<FinMap>,
    y_edges: Vec<FinMap>,
    z_edges: Vec<FinMap>,
}

impl CubeOfSets {
    pub fn new(
        x_edges: Vec<FinMap>,
        y_edges: Vec<FinMap>,
        z_edges: Vec<FinMap>,
    ) -> Result<Self, SheafError> {
        if x_edges.len() != 4 || y_edges.len() != 4 || z_edges.len() != 4 {
            return Err(SheafError::BaseMismatch {
                expected: 4,
                found: x_edges.len().max(y_edges.len()).max(z_edges.len()),
            });
        }
        let cube = CubeOfSets {
            x_edges,
            y_edges,
            z_edges,
        };
        for k in 0..2 {
            cube.xy_face(k)?;
            cube.xz_face(k)?;
            cube.yz_face(k)?;
        }
        Ok(cube)
    }

    pub fn identity(base: FinSet) -> Self {
        let id = FinMap::identity(base);
        CubeOfSets {
            x_edges: vec![id.clone(); 4],
            y_edges: vec![id.clone(); 4],
            z_edges: vec![id; 4],
        }
    }

    /// Two copies of a commuting square in the `(x, y)` plane joined by
    /// identity edges in the `z` direction.
    pub fn stacked(square: &SquareOfSets) -> Self {
        let corner = |m: &FinMap| FinMap::identity(m.source());
        CubeOfSets {
            x_edges: vec![
                square.top().clone(),
                square.top().clone(),
                square.bottom().clone(),
                square.bottom().clone(),
            ],
            y_edges: vec![
                square.left().clone(),
                square.left().clone(),
                square.right().clone(),
                square.right().clone(),
            ],
            z_edges: vec![
                corner(square.top()),
                corner(square.bottom()),
                corner(square.right()),
                FinMap::identity(square.right().target()),
            ],
        }
    }

    pub fn xy_face(&self, z: usize) -> Result<SquareOfSets, SheafError> {
        SquareOfSets::new(
            self.x_edges[z].clone(),
            self.y_edges[z].clone(),
            self.y_edges[2 + z].clone(),
            self.x_edges[2 + z].clone(),
        )
    }

    pub fn xz_face(&self, y: usize) -> Result<SquareOfSets, SheafError> {
        SquareOfSets::new(
            self.x_edges[2 * y].clone(),
            self.z_edges[y].clone(),
            self.z_edges[2 + y].clone(),
            self.x_edges[2 * y + 1].clone(),
        )
    }

    pub fn yz_face(&self, x: usize) -> Result<SquareOfSets, SheafError> {
        SquareOfSets::new(
            self.y_edges[2 * x].clone(),
            self.z_edges[2 * x].clone(),
            self.z_edges[2 * x + 1].clone(),
            self.y_edges[2 * x + 1].clone(),
        )
    }
}

impl<'de> serde::Deserialize<'de> for CubeOfSets {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            x_edges: Vec<FinMap>,
            y_edges: Vec<FinMap>,
            z_edges: Vec<FinMap>,
        }
        let raw = Raw::deserialize(d)?;
        CubeOfSets::new(raw.x_edges, raw.y_edges, raw.z_edges)
            .map_err(serde::de::Error::custom)
    }
}

/// The six face 2-morphisms of a cube, indexed by the fixed coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubeFaces {
    pub xy: [BlockNat; 2],
    pub xz: [BlockNat; 2],
    pub yz: [BlockNat; 2],
}

impl CubeFaces {
    /// The canonical composition isomorphisms on every face.
    pub fn canonical(cube: &CubeOfSets) -> Result<Self, SheafError> {
        Ok(CubeFaces {
            xy: [
                cube.xy_face(0)?.canonical_alpha(),
                cube.xy_face(1)?.canonical_alpha(),
            ],
            xz: [
                cube.xz_face(0)?.canonical_alpha(),
                cube.xz_face(1)?.canonical_alpha(),
            ],
            yz: [
                cube.yz_face(0)?.canonical_alpha(),
                cube.yz_face(1)?.canonical_alpha(),
            ],
        })
    }
}

/// The data of one hexagon: twelve edge functors and six face 2-morphisms
/// in an abstract direction ordering `1 < 2 < 3`.  `f1` is indexed by
/// `c2*2+c3`, `f2` by `c1*2+c3`, `f3` by `c1*2+c2`; faces by the fixed
/// coordinate, each oriented (earlier direction first) to (later first).
struct HexagonData {
    f1: Vec<FunctorWord>,
    f2: Vec<FunctorWord>,
    f3: Vec<FunctorWord>,
    face12: [BlockNat; 2],
    face13: [BlockNat; 2],
    face23: [BlockNat; 2],
}

impl HexagonData {
    /// The two composite paths `123 -> 321` around the hexagon.
    fn sides(&self) -> Result<(BlockNat, BlockNat), SheafError> {
        let a1 = BlockNat::whisker_left(&self.f3[3], &self.face12[0])?;
        let a2 = BlockNat::whisker_right(&self.face13[1], &self.f2[0])?;
        let a3 = BlockNat::whisker_left(&self.f1[3], &self.face23[0])?;
        let b1 = BlockNat::whisker_right(&self.face23[1], &self.f1[0])?;
        let b2 = BlockNat::whisker_left(&self.f2[3], &self.face13[0])?;
        let b3 = BlockNat::whisker_right(&self.face12[1], &self.f3[0])?;
        Ok((
            BlockNat::vcomp(&a3, &BlockNat::vcomp(&a2, &a1)?)?,
            BlockNat::vcomp(&b3, &BlockNat::vcomp(&b2, &b1)?)?,
        ))
    }

    fn commutes(&self) -> Result<bool, SheafError> {
        let (upper, lower) = self.sides()?;
        Ok(upper == lower)
    }
}

fn push_hexagon(cube: &CubeOfSets, faces: &CubeFaces) -> HexagonData {
    HexagonData {
        f1: cube.x_edges.iter().map(FunctorWord::push).collect(),
        f2: cube.y_edges.iter().map(FunctorWord::push).collect(),
        f3: cube.z_edges.iter().map(FunctorWord::push).collect(),
        face12: faces.xy.clone(),
        face13: faces.xz.clone(),
        face23: faces.yz.clone(),
    }
}

/// Checks that the two composite 2-morphism paths around the cube agree.
pub fn cube_hexagon_check(cube: &CubeOfSets, faces: &CubeFaces) -> Result<bool, SheafError> {
    push_hexagon(cube, faces).commutes()
}

/// Solves the hexagon equation for the face at `z = 0` in the `(x, y)`
/// plane, given the other five faces; requires the two faces that get
/// inverted along the way to be invertible.
pub fn cube_front_completion(
    cube: &CubeOfSets,
    faces: &CubeFaces,
) -> Result<BlockNat, SheafError> {
    let hex = push_hexagon(cube, faces);
    let a2 = BlockNat::whisker_right(&hex.face13[1], &hex.f2[0])?;
    let a3 = BlockNat::whisker_left(&hex.f1[3], &hex.face23[0])?;
    let b1 = BlockNat::whisker_right(&hex.face23[1], &hex.f1[0])?;
    let b2 = BlockNat::whisker_left(&hex.f2[3], &hex.face13[0])?;
    let b3 = BlockNat::whisker_right(&hex.face12[1], &hex.f3[0])?;
    let lower = BlockNat::vcomp(&b3, &BlockNat::vcomp(&b2, &b1)?)?;
    let a1 = BlockNat::vcomp(&a2.invert()?, &BlockNat::vcomp(&a3.invert()?, &lower)?)?;
    // a1 is the front face whiskered by the far z-edge; peel that edge off.
    let front = cube.xy_face(0)?;
    let src = FunctorWord::push(front.right()).after(&FunctorWord::push(front.top()))?;
    let dst = FunctorWord::push(front.bottom()).after(&FunctorWord::push(front.left()))?;
    unwhisker_push(&cube.z_edges[3], &a1, src, dst)
}

/// Recovers `α: F -> G` from `push(ζ)∘F -> push(ζ)∘G` by slicing the
/// block-diagonal pieces back out; every stalk of the middle base occurs in
/// exactly one fiber, so the slicing loses nothing.
fn unwhisker_push(
    zeta: &FinMap,
    nu: &BlockNat,
    src: FunctorWord,
    dst: FunctorWord,
) -> Result<BlockNat, SheafError> {
    let occ = |profile: &[usize], s: usize| profile.iter().filter(|&&x| x == s).count();
    let mut blocks = BTreeMap::new();
    for s in src.source().elems() {
        for t in src.target().elems() {
            let u = zeta.apply(t);
            let fiber = zeta.fiber(u);
            let mut row_off = 0;
            let mut col_off = 0;
            for &t2 in fiber.iter().take_while(|&&t2| t2 != t) {
                row_off += occ(&dst.profile(t2), s);
                col_off += occ(&src.profile(t2), s);
            }
            let rows = occ(&dst.profile(t), s);
            let cols = occ(&src.profile(t), s);
            let big = nu.block(s, u);
            blocks.insert(
                (s, t),
                Mat::from_fn(rows, cols, |r, c| big[(row_off + r, col_off + c)].clone()),
            );
        }
    }
    BlockNat::new(src, dst, blocks)
}

/// The mate of a square along its horizontal maps: from
/// `α: right_* top_* -> bottom_* left_*` to `bottom* right_* -> left_* top*`
/// using the pullback-left adjunctions of the horizontals.
fn horizontal_mate(square: &SquareOfSets, alpha: &BlockNat) -> Result<BlockNat, SheafError> {
    let k1 = FunctorWord::pull(square.bottom()).after(&FunctorWord::push(square.right()))?;
    let nu1 = BlockNat::whisker_left(&k1, &eta_r(square.top()))?;
    let nu2 = BlockNat::whisker_left(
        &FunctorWord::pull(square.bottom()),
        &BlockNat::whisker_right(alpha, &FunctorWord::pull(square.top()))?,
    )?;
    let h = FunctorWord::push(square.left()).after(&FunctorWord::pull(square.top()))?;
    let nu3 = BlockNat::whisker_right(&eps_r(square.bottom()), &h)?;
    BlockNat::vcomp(&nu3, &BlockNat::vcomp(&nu2, &nu1)?)
}

type Mater<'a> = &'a dyn Fn(&SquareOfSets, &BlockNat) -> Result<BlockNat, SheafError>;

/// The mate cube's hexagon in the `z' < x < y` ordering: z-edges become
/// pullbacks and the xz/yz faces are replaced by their mates.
fn mate_hexagon_z(
    cube: &CubeOfSets,
    faces: &CubeFaces,
    mate: Mater,
) -> Result<HexagonData, SheafError> {
    let f1 = cube.z_edges.iter().map(FunctorWord::pull).collect();
    let mut f2 = Vec::new();
    let mut f3 = Vec::new();
    for c1 in 0..2 {
        for c3 in 0..2 {
            f2.push(FunctorWord::push(&cube.x_edges[c3 * 2 + (1 - c1)]));
        }
        for c2 in 0..2 {
            f3.push(FunctorWord::push(&cube.y_edges[c2 * 2 + (1 - c1)]));
        }
    }
    Ok(HexagonData {
        f1,
        f2,
        f3,
        face12: [
            mate(&cube.xz_face(0)?, &faces.xz[0])?,
            mate(&cube.xz_face(1)?, &faces.xz[1])?,
        ],
        face13: [
            mate(&cube.yz_face(0)?, &faces.yz[0])?,
            mate(&cube.yz_face(1)?, &faces.yz[1])?,
        ],
        face23: [faces.xy[1].clone(), faces.xy[0].clone()],
    })
}

/// The mate cube's hexagon in the `y < z < x'` ordering: x-edges become
/// pullbacks and the xy/xz faces are replaced by their horizontal mates.
fn mate_hexagon_x(cube: &CubeOfSets, faces: &CubeFaces) -> Result<HexagonData, SheafError> {
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for c2 in 0..2 {
        for c3 in 0..2 {
            f1.push(FunctorWord::push(&cube.y_edges[(1 - c3) * 2 + c2]));
        }
    }
    for c1 in 0..2 {
        for c3 in 0..2 {
            f2.push(FunctorWord::push(&cube.z_edges[(1 - c3) * 2 + c1]));
        }
    }
    let f3 = cube.x_edges.iter().map(FunctorWord::pull).collect();
    Ok(HexagonData {
        f1,
        f2,
        f3,
        face12: [faces.yz[1].clone(), faces.yz[0].clone()],
        face13: [
            horizontal_mate(&cube.xy_face(0)?, &faces.xy[0])?,
            horizontal_mate(&cube.xy_face(1)?, &faces.xy[1])?,
        ],
        face23: [
            horizontal_mate(&cube.xz_face(0)?, &faces.xz[0])?,
            horizontal_mate(&cube.xz_face(1)?, &faces.xz[1])?,
        ],
    })
}

/// Forms the mate cube in the given direction and checks its hexagon.
pub fn cube_mate_check(
    cube: &CubeOfSets,
    faces: &CubeFaces,
    direction: CubeDirection,
) -> Result<bool, SheafError> {
    let hex = match direction {
        CubeDirection::Z => mate_hexagon_z(cube, faces, &right_mate)?,
        CubeDirection::X => mate_hexagon_x(cube, faces)?,
    };
    hex.commutes()
}

/// A 4-dimensional cube of finite sets with face 2-morphisms, used for the
/// coherence criterion: the full diagram of 2-morphisms between maximal
/// paths commutes iff every 3-dimensional sub-cube's hexagon commutes.
pub struct FourCube {
    corners: Vec<FinSet>,
    edges: Vec<Vec<Option<FinMap>>>,
    faces: BTreeMap<(usize, usize), Vec<BlockNat>>,
}

fn corner_index(bits: [usize; 4]) -> usize {
    bits[0] * 8 + bits[1] * 4 + bits[2] * 2 + bits[3]
}

impl FourCube {
    /// Builds from the 16 corner sets and an edge assignment; validates
    /// that all 24 faces commute and installs the canonical face
    /// 2-morphisms.
    pub fn new(
        corners: Vec<FinSet>,
        edge_fn: impl Fn(usize, [usize; 4]) -> FinMap,
    ) -> Result<Self, SheafError> {
        assert_eq!(corners.len(), 16);
        let mut edges: Vec<Vec<Option<FinMap>>> = vec![vec![None; 16]; 4];
        for d in 0..4 {
            for idx in 0..16usize {
                let bits = [idx / 8, (idx / 4) % 2, (idx / 2) % 2, idx % 2];
                if bits[d] == 1 {
                    continue;
                }
                let m = edge_fn(d, bits);
                let mut up = bits;
                up[d] = 1;
                if m.source() != corners[idx] || m.target() != corners[corner_index(up)] {
                    return Err(SheafError::BaseMismatch {
                        expected: corners[idx].size,
                        found: m.source().size,
                    });
                }
                edges[d][idx] = Some(m);
            }
        }
        let mut cube = FourCube {
            corners,
            edges,
            faces: BTreeMap::new(),
        };
        for p in 0..4 {
            for q in p + 1..4 {
                let mut nats = Vec::new();
                for idx in 0..4 {
                    let sq = cube.face_square(p, q, idx)?;
                    nats.push(sq.canonical_alpha());
                }
                cube.faces.insert((p, q), nats);
            }
        }
        Ok(cube)
    }

    fn edge(&self, d: usize, bits: [usize; 4]) -> &FinMap {
        self.edges[d][corner_index(bits)].as_ref().unwrap()
    }

    fn others(p: usize, q: usize) -> (usize, usize) {
        let mut rest = (0..4).filter(|&d| d != p && d != q);
        (rest.next().unwrap(), rest.next().unwrap())
    }

    /// The face in directions `p < q` at fixed other bits (`idx` packs the
    /// bits of the two remaining directions in increasing order).
    fn face_square(&self, p: usize, q: usize, idx: usize) -> Result<SquareOfSets, SheafError> {
        let (o1, o2) = Self::others(p, q);
        let mut base = [0; 4];
        base[o1] = idx / 2;
        base[o2] = idx % 2;
        let mut p1 = base;
        p1[p] = 1;
        let mut q1 = base;
        q1[q] = 1;
        SquareOfSets::new(
            self.edge(p, base).clone(),
            self.edge(q, base).clone(),
            self.edge(q, p1).clone(),
            self.edge(p, q1).clone(),
        )
    }

    fn face_nat(&self, p: usize, q: usize, bits: [usize; 4]) -> BlockNat {
        let (o1, o2) = Self::others(p, q);
        self.faces[&(p, q)][bits[o1] * 2 + bits[o2]].clone()
    }

    /// Replaces one face 2-morphism by its negation (fault injection).
    pub fn negate_face(&mut self, p: usize, q: usize, idx: usize) {
        let nats = self.faces.get_mut(&(p, q)).unwrap();
        nats[idx] = nats[idx].negate();
    }

    /// The pushforward composite along a list of directions starting at
    /// the given corner.
    fn path_word(&self, dirs: &[usize], mut bits: [usize; 4]) -> FunctorWord {
        let mut word = FunctorWord::identity(self.corners[corner_index(bits)]);
        for &d in dirs {
            word = FunctorWord::push(self.edge(d, bits)).after(&word).unwrap();
            bits[d] = 1;
        }
        word
    }

    /// The 2-morphism for one adjacent transposition in a maximal path.
    fn arrow(&self, word: &[usize], i: usize) -> Result<BlockNat, SheafError> {
        let (p, q) = (word[i], word[i + 1]);
        let mut bits = [0; 4];
        for &d in &word[..i] {
            bits[d] = 1;
        }
        let prefix = self.path_word(&word[..i], [0; 4]);
        let face = self.face_nat(p, q, bits);
        let mut after = bits;
        after[p] = 1;
        after[q] = 1;
        let suffix = self.path_word(&word[i + 2..], after);
        BlockNat::whisker_left(&suffix, &BlockNat::whisker_right(&face, &prefix)?)
    }

    /// Checks that all composite 2-morphism paths from `0123` to `3210`
    /// agree, by dynamic programming over the permutohedron.
    pub fn full_diagram_commutes(&self) -> Result<bool, SheafError> {
        let mut perms = permutations(&[0, 1, 2, 3]);
        perms.sort_by_key(|w| inversions(w));
        let mut reached: BTreeMap<Vec<usize>, BlockNat> = BTreeMap::new();
        reached.insert(
            vec![0, 1, 2, 3],
            BlockNat::identity(self.path_word(&[0, 1, 2, 3], [0; 4])),
        );
        for w in &perms {
            if reached.contains_key(w) {
                continue;
            }
            let mut value: Option<BlockNat> = None;
            for i in 0..3 {
                if w[i] > w[i + 1] {
                    let mut pred = w.clone();
                    pred.swap(i, i + 1);
                    let step = self.arrow(&pred, i)?;
                    let cand = BlockNat::vcomp(&step, &reached[&pred])?;
                    match &value {
                        None => value = Some(cand),
                        Some(v) if *v == cand => {}
                        Some(_) => return Ok(false),
                    }
                }
            }
            reached.insert(w.clone(), value.unwrap());
        }
        Ok(true)
    }

    /// Checks every 3-dimensional sub-cube's hexagon.
    pub fn all_subcube_hexagons_commute(&self) -> Result<bool, SheafError> {
        for d1 in 0..4 {
            for d2 in d1 + 1..4 {
                for d3 in d2 + 1..4 {
                    let dr = (0..4).find(|d| ![d1, d2, d3].contains(d)).unwrap();
                    for b in 0..2 {
                        let at = |assign: &[(usize, usize)]| {
                            let mut bits = [0; 4];
                            bits[dr] = b;
                            for &(d, v) in assign {
                                bits[d] = v;
                            }
                            bits
                        };
                        let mut f1 = Vec::new();
                        let mut f2 = Vec::new();
                        let mut f3 = Vec::new();
                        let mut face12 = Vec::new();
                        let mut face13 = Vec::new();
                        let mut face23 = Vec::new();
                        for c in 0..2 {
                            for e in 0..2 {
                                f1.push(FunctorWord::push(
                                    self.edge(d1, at(&[(d2, c), (d3, e)])),
                                ));
                                f2.push(FunctorWord::push(
                                    self.edge(d2, at(&[(d1, c), (d3, e)])),
                                ));
                                f3.push(FunctorWord::push(
                                    self.edge(d3, at(&[(d1, c), (d2, e)])),
                                ));
                            }
                            face12.push(self.face_nat(d1, d2, at(&[(d3, c)])));
                            face13.push(self.face_nat(d1, d3, at(&[(d2, c)])));
                            face23.push(self.face_nat(d2, d3, at(&[(d1, c)])));
                        }
                        let hex = HexagonData {
                            f1,
                            f2,
                            f3,
                            face12: [face12[0].clone(), face12[1].clone()],
                            face13: [face13[0].clone(), face13[1].clone()],
                            face23: [face23[0].clone(), face23[1].clone()],
                        };
                        if !hex.commutes()? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn inversions(w: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// Gray's coherence criterion at small scale: the full permutohedron
/// diagram of a 4-cube commutes iff all eight sub-cube hexagons commute.
/// Returns the two booleans for comparison.
pub fn gray_four_cube_check(cube: &FourCube) -> Result<(bool, bool), SheafError> {
    Ok((
        cube.full_diagram_commutes()?,
        cube.all_subcube_hexagons_commute()?,
    ))
}

/// A random commutative cube built from Cartesian data: two fiber product
/// squares in the xy plane joined by a map of cospans.
pub fn random_cartesian_cube(rng: &mut impl rand::Rng) -> CubeOfSets {
    fn size(rng: &mut impl rand::Rng) -> FinSet {
        FinSet::new(rng.gen_range(1..=3))
    }
    fn rmap(rng: &mut impl rand::Rng, src: FinSet, tgt: FinSet) -> FinMap {
        let table = (0..src.size).map(|_| rng.gen_range(0..tgt.size)).collect();
        FinMap::new(src, tgt, table).unwrap()
    }
    loop {
        let (b0, c0, d0) = (size(rng), size(rng), size(rng));
        let (b1, c1, d1) = (size(rng), size(rng), size(rng));
        let h0 = rmap(rng, b0, d0);
        let i0 = rmap(rng, c0, d0);
        let bz = rmap(rng, b0, b1);
        let cz = rmap(rng, c0, c1);
        let dz = rmap(rng, d0, d1);
        let h1 = rmap(rng, b1, d1);
        let i1 = rmap(rng, c1, d1);
        if h1.compose(&bz).unwrap() != dz.compose(&h0).unwrap() {
            continue;
        }
        if i1.compose(&cz).unwrap() != dz.compose(&i0).unwrap() {
            continue;
        }
        let top = SquareOfSets::cartesian(&h0, &i0).unwrap();
        let bot = SquareOfSets::cartesian(&h1, &i1).unwrap();
        // The induced map between the fiber products.
        let pairs1: Vec<(usize, usize)> = bot
            .top()
            .source()
            .elems()
            .map(|a| (bot.top().apply(a), bot.left().apply(a)))
            .collect();
        let az_table: Vec<usize> = top
            .top()
            .source()
            .elems()
            .map(|a| {
                let key = (bz.apply(top.top().apply(a)), cz.apply(top.left().apply(a)));
                pairs1.iter().position(|&p| p == key).unwrap()
            })
            .collect();
        let az = FinMap::new(top.top().source(), bot.top().source(), az_table).unwrap();
        return CubeOfSets::new(
            vec![
                top.top().clone(),
                bot.top().clone(),
                top.bottom().clone(),
                bot.bottom().clone(),
            ],
            vec![
                top.left().clone(),
                bot.left().clone(),
                top.right().clone(),
                bot.right().clone(),
            ],
            vec![az, cz, bz, dz],
        )
        .unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset2cat::nat::right_mate_with;
    use crate::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cmap(src: usize, tgt: usize, table: &[usize]) -> FinMap {
        FinMap::new(FinSet::new(src), FinSet::new(tgt), table.to_vec()).unwrap()
    }

    fn hopf_square() -> SquareOfSets {
        let g = cmap(4, 2, &[0, 0, 1, 1]);
        let f = cmap(4, 2, &[0, 1, 0, 1]);
        let h = cmap(2, 1, &[0, 0]);
        SquareOfSets::new(g, f, h.clone(), h).unwrap()
    }

    /// Identities in the x direction, a swap then identity in y, and a
    /// 2 -> 1 fold in z.
    fn z_fold_cube() -> CubeOfSets {
        let id2 = FinMap::identity(FinSet::new(2));
        let id1 = FinMap::identity(FinSet::new(1));
        let swap = cmap(2, 2, &[1, 0]);
        let fold = cmap(2, 1, &[0, 0]);
        CubeOfSets::new(
            vec![id2.clone(), id1.clone(), id2, id1.clone()],
            vec![swap.clone(), id1.clone(), swap, id1],
            vec![fold.clone(), fold.clone(), fold.clone(), fold],
        )
        .unwrap()
    }

    #[test]
    fn identity_cube_hexagon() {
        let cube = CubeOfSets::identity(FinSet::new(2));
        let faces = CubeFaces::canonical(&cube).unwrap();
        assert!(cube_hexagon_check(&cube, &faces).unwrap());
    }

    #[test]
    fn negated_face_breaks_hexagon() {
        let cube = CubeOfSets::stacked(&hopf_square());
        let mut faces = CubeFaces::canonical(&cube).unwrap();
        assert!(cube_hexagon_check(&cube, &faces).unwrap());
        faces.xz[0] = faces.xz[0].negate();
        assert!(!cube_hexagon_check(&cube, &faces).unwrap());
    }

    #[test]
    fn stacked_and_random_cartesian_cubes_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let cube = random_cartesian_cube(&mut rng);
            let faces = CubeFaces::canonical(&cube).unwrap();
            assert!(cube_hexagon_check(&cube, &faces).unwrap(), "{cube:?}");
        }
    }

    #[test]
    fn front_completion_identity_cube() {
        let cube = CubeOfSets::identity(FinSet::new(3));
        let faces = CubeFaces::canonical(&cube).unwrap();
        let front = cube_front_completion(&cube, &faces).unwrap();
        assert_eq!(front, faces.xy[0]);
    }

    #[test]
    fn front_completion_recovers_canonical_face() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let cube = random_cartesian_cube(&mut rng);
            let faces = CubeFaces::canonical(&cube).unwrap();
            let front = cube_front_completion(&cube, &faces).unwrap();
            assert_eq!(front, faces.xy[0], "{cube:?}");
            // Self-consistency: the completed face closes the hexagon.
            let mut completed = faces.clone();
            completed.xy[0] = front;
            assert!(cube_hexagon_check(&cube, &completed).unwrap());
        }
    }

    #[test]
    fn front_completion_requires_invertible_faces() {
        let cube = CubeOfSets::stacked(&hopf_square());
        let mut faces = CubeFaces::canonical(&cube).unwrap();
        let zero = BlockNat::new(
            faces.xz[1].src().clone(),
            faces.xz[1].dst().clone(),
            BTreeMap::new(),
        )
        .unwrap();
        faces.xz[1] = zero;
        assert!(matches!(
            cube_front_completion(&cube, &faces),
            Err(SheafError::NotInvertible { .. })
        ));
    }

    #[test]
    fn mate_check_identity_cube() {
        let cube = CubeOfSets::identity(FinSet::new(2));
        let faces = CubeFaces::canonical(&cube).unwrap();
        assert!(cube_mate_check(&cube, &faces, CubeDirection::Z).unwrap());
        assert!(cube_mate_check(&cube, &faces, CubeDirection::X).unwrap());
    }

    #[test]
    fn mate_check_random_cubes_both_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let cube = random_cartesian_cube(&mut rng);
            let faces = CubeFaces::canonical(&cube).unwrap();
            assert!(cube_hexagon_check(&cube, &faces).unwrap());
            assert!(
                cube_mate_check(&cube, &faces, CubeDirection::Z).unwrap(),
                "direction z on {cube:?}"
            );
            assert!(
                cube_mate_check(&cube, &faces, CubeDirection::X).unwrap(),
                "direction x on {cube:?}"
            );
        }
    }

    #[test]
    fn mate_check_rejects_wrong_adjunction_data() {
        // Replacing the sum counit with restriction-style data (the other
        // adjunction's formula) breaks the mate cube.
        let cube = z_fold_cube();
        let faces = CubeFaces::canonical(&cube).unwrap();
        assert!(cube_mate_check(&cube, &faces, CubeDirection::Z).unwrap());
        let faulty = |sq: &SquareOfSets, a: &BlockNat| {
            let good = crate::finset2cat::nat::eps_l(sq.left());
            let bad = BlockNat::new(
                good.src().clone(),
                good.dst().clone(),
                sq.left()
                    .target()
                    .elems()
                    .map(|t| {
                        let k = sq.left().fiber(t).len();
                        let m = Mat::from_fn(1, k, |_, c| {
                            if c == 0 {
                                Rat::from_integer(1.into())
                            } else {
                                Rat::from_integer(0.into())
                            }
                        });
                        ((t, t), m)
                    })
                    .collect(),
            )
            .unwrap();
            right_mate_with(sq, a, &bad)
        };
        let hex = mate_hexagon_z(&cube, &faces, &faulty).unwrap();
        assert!(!hex.commutes().unwrap());
    }

    #[test]
    fn cube_json_round_trip() {
        let cube = CubeOfSets::stacked(&hopf_square());
        let text = serde_json::to_string(&cube).unwrap();
        let back: CubeOfSets = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cube);
        // A non-commuting cube is rejected on parse.
        let bad = text.replace("[0,1,2,3]", "[0,1,2,0]");
        assert_ne!(bad, text);
        assert!(serde_json::from_str::<CubeOfSets>(&bad).is_err());
    }

    fn identity_four_cube(n: usize) -> FourCube {
        let base = FinSet::new(n);
        FourCube::new(vec![base; 16], |_, _| FinMap::identity(base)).unwrap()
    }

    #[test]
    fn gray_identity_and_negated() {
        let cube = identity_four_cube(2);
        assert_eq!(gray_four_cube_check(&cube).unwrap(), (true, true));
        let mut faulty = identity_four_cube(2);
        faulty.negate_face(1, 2, 3);
        assert_eq!(gray_four_cube_check(&faulty).unwrap(), (false, false));
    }

    #[test]
    fn gray_collapse_and_fold_instances() {
        // Constant collapse in one direction, identities elsewhere.
        let base = FinSet::new(2);
        let collapse = FourCube::new(vec![base; 16], |d, _| {
            if d == 0 {
                FinMap::new(base, base, vec![0, 0]).unwrap()
            } else {
                FinMap::identity(base)
            }
        })
        .unwrap();
        assert_eq!(gray_four_cube_check(&collapse).unwrap(), (true, true));

        // Fold 2 -> 1 in direction 0: corner sets shrink past the fold.
        let fold_corners: Vec<FinSet> = (0..16)
            .map(|idx| FinSet::new(if idx / 8 == 0 { 2 } else { 1 }))
            .collect();
        let fold = FourCube::new(fold_corners, |d, bits| {
            let n = if bits[0] == 0 { 2 } else { 1 };
            if d == 0 {
                FinMap::new(FinSet::new(2), FinSet::new(1), vec![0, 0]).unwrap()
            } else {
                FinMap::identity(FinSet::new(n))
            }
        })
        .unwrap();
        assert_eq!(gray_four_cube_check(&fold).unwrap(), (true, true));

        // The fold cube with a face negated fails both ways.
        let fold_corners: Vec<FinSet> = (0..16)
            .map(|idx| FinSet::new(if idx / 8 == 0 { 2 } else { 1 }))
            .collect();
        let mut faulty = FourCube::new(fold_corners, |d, bits| {
            let n = if bits[0] == 0 { 2 } else { 1 };
            if d == 0 {
                FinMap::new(FinSet::new(2), FinSet::new(1), vec![0, 0]).unwrap()
            } else {
                FinMap::identity(FinSet::new(n))
            }
        })
        .unwrap();
        faulty.negate_face(0, 3, 0);
        assert_eq!(gray_four_cube_check(&faulty).unwrap(), (false, false));
    }
}
