//! Bounded exploration of Cayley graphs of quotients `F_n -> G` and
//! certificates of large first homology.
//!
//! The covering of the rose with group `G` is the Cayley graph of `G`. If the
//! kernel is nontrivial, a shortest closed path `ξ` through the identity
//! exists; translates `h ξ` whose vertex supports are pairwise disjoint are
//! independent cycles, so their number bounds `rank H_1` from below. Inside a
//! finite ball that bound is finite and checkable, which is what a
//! [`NinfWitness`] records.
//!
//! `G` is accessed through a [`GroupOracle`] with exact canonical forms:
//! either a free abelian group `Z^k` or a group of unimodular integer matrices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::Word;
use crate::linalg::IntMatrix;
use crate::text::{by_letter, letter, matrix_rows, Tokens};

/// Default bound on the number of explored vertices.
pub const DEFAULT_VERTEX_CAP: usize = 250_000;

/// Canonical form of a group element: the vector itself for `Z^k`, the
/// row-major entries for matrix groups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<BigInt>);

impl Element {
    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Family {
    FreeAbelian { k: usize, gens: Vec<Vec<BigInt>> },
    Matrix { d: usize, gens: Vec<IntMatrix>, invs: Vec<IntMatrix> },
}

/// Exact arithmetic in the image of `F_n -> G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOracle {
    family: Family,
}

impl GroupOracle {
    /// `Z^k` with generator `i` sent to `gens[i]`.
    pub fn free_abelian(k: usize, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidArgument("oracle needs at least one generator".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != k) {
            return Err(Error::Dimension(format!("vector of length {} in Z^{k}", g.len())));
        }
        Ok(GroupOracle {
            family: Family::FreeAbelian { k, gens },
        })
    }

    pub fn free_abelian_i64(gens: &[&[i64]]) -> Result<Self> {
        let k = gens.first().map_or(0, |g| g.len());
        let gens = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::free_abelian(k, gens)
    }

    /// The group generated by unimodular `d x d` matrices.
    pub fn matrix(gens: Vec<IntMatrix>) -> Result<Self> {
        let d = gens
            .first()
            .ok_or_else(|| Error::InvalidArgument("oracle needs at least one generator".into()))?
            .rows();
        let mut invs = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != d || g.cols() != d {
                return Err(Error::Dimension(format!("generator {} is not {d}x{d}", letter(i))));
            }
            invs.push(g.inverse_unimodular().ok_or_else(|| {
                Error::InvalidArgument(format!("generator {} is not unimodular", letter(i)))
            })?);
        }
        Ok(GroupOracle {
            family: Family::Matrix { d, gens, invs },
        })
    }

    /// Number of generators of the source free group.
    pub fn rank(&self) -> usize {
        match &self.family {
            Family::FreeAbelian { gens, .. } => gens.len(),
            Family::Matrix { gens, .. } => gens.len(),
        }
    }

    pub fn identity(&self) -> Element {
        match &self.family {
            Family::FreeAbelian { k, .. } => Element(vec![BigInt::zero(); *k]),
            Family::Matrix { d, .. } => Element(flatten(&IntMatrix::identity(*d))),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match &self.family {
            Family::FreeAbelian { .. } => Element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()),
            Family::Matrix { d, .. } => {
                let (ma, mb) = (unflatten(a, *d), unflatten(b, *d));
                Element(flatten(&(&ma * &mb)))
            }
        }
    }

    /// Image of a single letter.
    pub fn letter(&self, l: i32) -> Element {
        let g = l.unsigned_abs() as usize - 1;
        match &self.family {
            Family::FreeAbelian { gens, .. } => {
                if l > 0 {
                    Element(gens[g].clone())
                } else {
                    Element(gens[g].iter().map(|x| -x).collect())
                }
            }
            Family::Matrix { gens, invs, .. } => {
                Element(flatten(if l > 0 { &gens[g] } else { &invs[g] }))
            }
        }
    }

    pub fn eval(&self, w: &Word) -> Element {
        w.letters()
            .iter()
            .fold(self.identity(), |acc, &l| self.mul(&acc, &self.letter(l)))
    }

    /// Parses the oracle format:
    ///
    /// ```text
    /// family zk 2
    /// gen a 1 0
    /// gen b 0 1
    /// ```
    ///
    /// or `family mat d` followed by `gen <letter>` and `d` rows of `d`
    /// integers per generator.
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = Tokens::new(text);
        t.expect("family")?;
        let line = t.line();
        let fam = t.next("family name")?;
        let n = t.usize("family size")?;
        let mut entries = Vec::new();
        let oracle = match fam {
            "zk" => {
                while t.peek().is_some() {
                    t.expect("gen")?;
                    let k = t.letter()?;
                    let v = (0..n).map(|_| t.int()).collect::<Result<Vec<_>>>()?;
                    entries.push((k, v));
                }
                GroupOracle::free_abelian(n, by_letter(entries)?)?
            }
            "mat" => {
                let mut mats = Vec::new();
                while t.peek().is_some() {
                    t.expect("gen")?;
                    let k = t.letter()?;
                    mats.push((k, t.matrix(n, n)?));
                }
                GroupOracle::matrix(by_letter(mats)?)?
            }
            other => return Err(Error::parse(line, format!("unknown family `{other}`"))),
        };
        t.finish()?;
        Ok(oracle)
    }

    pub fn to_text(&self) -> String {
        match &self.family {
            Family::FreeAbelian { k, gens } => {
                let mut s = format!("family zk {k}\n");
                for (i, g) in gens.iter().enumerate() {
                    let v: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!("gen {} {}\n", letter(i), v.join(" ")));
                }
                s
            }
            Family::Matrix { d, gens, .. } => {
                let mut s = format!("family mat {d}\n");
                for (i, g) in gens.iter().enumerate() {
                    s.push_str(&format!("gen {}\n", letter(i)));
                    s.push_str(&matrix_rows(g));
                }
                s
            }
        }
    }
}

fn flatten(m: &IntMatrix) -> Vec<BigInt> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn unflatten(e: &Element, d: usize) -> IntMatrix {
    IntMatrix::from_fn(d, d, |i, j| e.0[i * d + j].clone())
}

/// Letters in exploration order: `x1 < x1^-1 < x2 < x2^-1 < ...`.
fn letters(rank: usize) -> Vec<i32> {
    (1..=rank as i32).flat_map(|g| [g, -g]).collect()
}

/// The ball of radius `radius` around the identity in the Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyFragment {
    radius: usize,
    rank: usize,
    vertices: Vec<Element>,
    distance: Vec<usize>,
    index: HashMap<Element, usize>,
    /// `(v, generator, v·x_generator)` for every pair of present endpoints.
    edges: Vec<(usize, usize, usize)>,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

impl CayleyFragment {
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Vertices in breadth-first order; vertex `0` is the identity.
    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn distance(&self, v: usize) -> usize {
        self.distance[v]
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn lookup(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn step(&self, v: usize, l: i32) -> Option<usize> {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            self.out[v][g]
        } else {
            self.inc[v][g]
        }
    }

    /// `rank H_1` of the (connected) fragment.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }
}

/// Breadth-first exploration up to `radius` steps, stopping with
/// [`Error::ResourceCap`] once more than `cap` vertices would be needed.
pub fn explore(oracle: &GroupOracle, radius: usize, cap: usize) -> Result<CayleyFragment> {
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    let n = oracle.rank();
    let id = oracle.identity();
    let mut vertices = vec![id.clone()];
    let mut distance = vec![0];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    let gen_images: Vec<Element> = letters(n).into_iter().map(|l| oracle.letter(l)).collect();

    while let Some(v) = queue.pop_front() {
        if distance[v] == radius {
            continue;
        }
        for img in &gen_images {
            let w = oracle.mul(&vertices[v], img);
            if index.contains_key(&w) {
                continue;
            }
            if vertices.len() == cap {
                return Err(Error::ResourceCap {
                    cap,
                    radius: distance[v],
                });
            }
            index.insert(w.clone(), vertices.len());
            distance.push(distance[v] + 1);
            queue.push_back(vertices.len());
            vertices.push(w);
        }
    }

    let mut edges = Vec::new();
    let mut out = vec![vec![None; n]; vertices.len()];
    let mut inc = vec![vec![None; n]; vertices.len()];
    for (v, e) in vertices.iter().enumerate() {
        for g in 0..n {
            let w = oracle.mul(e, &gen_images[2 * g]);
            if let Some(&u) = index.get(&w) {
                edges.push((v, g, u));
                out[v][g] = Some(u);
                inc[u][g] = Some(v);
            }
        }
    }
    Ok(CayleyFragment {
        radius,
        rank: n,
        vertices,
        distance,
        index,
        edges,
        out,
        inc,
    })
}

/// Shortest nonempty reduced word that closes up at the identity inside the
/// fragment, shortlex-least among those; `None` if there is none of length at
/// most `2 * radius`.
pub fn shortest_kernel_cycle(fragment: &CayleyFragment) -> Option<Word> {
    let max_len = 2 * fragment.radius;
    let alphabet = letters(fragment.rank);
    // (vertex, last letter, parent state, depth)
    let mut states: Vec<(usize, i32, usize, usize)> = vec![(0, 0, usize::MAX, 0)];
    let mut seen: HashSet<(usize, i32)> = HashSet::from([(0, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let word_of = |states: &[(usize, i32, usize, usize)], mut s: usize, last: i32| {
        let mut ls = vec![last];
        while s != 0 {
            ls.push(states[s].1);
            s = states[s].2;
        }
        ls.reverse();
        Word::from_letters(ls)
    };
    while let Some(s) = queue.pop_front() {
        let (v, last, _, depth) = states[s];
        if depth + 1 > max_len {
            continue;
        }
        for &l in &alphabet {
            if l == -last {
                continue;
            }
            let Some(w) = fragment.step(v, l) else { continue };
            if w == 0 {
                return Some(word_of(&states, s, l));
            }
            if seen.insert((w, l)) {
                states.push((w, l, s, depth + 1));
                queue.push_back(states.len() - 1);
            }
        }
    }
    None
}

/// Distinct vertices visited by `cycle` from the identity: `x_0 = 1, x_1, ...`.
pub fn cycle_support(oracle: &GroupOracle, cycle: &Word) -> Vec<Element> {
    let mut cur = oracle.identity();
    let mut seen = HashSet::from([cur.clone()]);
    let mut support = vec![cur.clone()];
    for &l in cycle.letters() {
        cur = oracle.mul(&cur, &oracle.letter(l));
        if seen.insert(cur.clone()) {
            support.push(cur.clone());
        }
    }
    support
}

/// Result of the greedy translate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateSelection {
    pub translates: Vec<Element>,
    /// Set when fewer than the requested number were found.
    pub diagnostic: Option<String>,
}

/// Greedy choice, in breadth-first order, of elements `h` whose translated
/// supports `h·M` stay in the fragment and avoid all earlier ones.
pub fn disjoint_translates(
    oracle: &GroupOracle,
    fragment: &CayleyFragment,
    support: &[Element],
    wanted: usize,
) -> TranslateSelection {
    let mut translates = Vec::new();
    let mut occupied: HashSet<Element> = HashSet::new();
    for h in fragment.vertices() {
        if translates.len() == wanted {
            break;
        }
        let moved: Vec<Element> = support.iter().map(|x| oracle.mul(h, x)).collect();
        if moved
            .iter()
            .all(|y| fragment.lookup(y).is_some() && !occupied.contains(y))
        {
            occupied.extend(moved);
            translates.push(h.clone());
        }
    }
    let diagnostic = (translates.len() < wanted).then(|| {
        format!(
            "only {} of {wanted} disjoint translates fit in radius {}; increase the radius",
            translates.len(),
            fragment.radius()
        )
    });
    TranslateSelection {
        translates,
        diagnostic,
    }
}

/// A certified lower bound `rank H_1(fragment) >= rank_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NinfWitness {
    pub cycle: Word,
    pub support: Vec<Element>,
    pub translates: Vec<Element>,
    pub rank_bound: usize,
    pub radius: usize,
    pub requested: usize,
    pub diagnostic: Option<String>,
}

impl NinfWitness {
    pub fn is_complete(&self) -> bool {
        self.rank_bound >= self.requested
    }

    /// Re-checks the certificate against the oracle and the fragment.
    pub fn verify(&self, oracle: &GroupOracle, fragment: &CayleyFragment) -> std::result::Result<(), String> {
        if self.cycle.is_empty() {
            return Err("empty cycle".into());
        }
        if oracle.eval(&self.cycle) != oracle.identity() {
            return Err(format!("cycle {} is not in the kernel", self.cycle));
        }
        if self.rank_bound != self.translates.len() {
            return Err("rank bound differs from the number of translates".into());
        }
        let moved: Vec<Vec<Element>> = self
            .translates
            .iter()
            .map(|h| self.support.iter().map(|x| oracle.mul(h, x)).collect())
            .collect();
        for (a, sa) in moved.iter().enumerate() {
            for sb in &moved[a + 1..] {
                if sa.iter().any(|x| sb.contains(x)) {
                    return Err("translated supports intersect".into());
                }
            }
        }
        for h in &self.translates {
            let start = fragment
                .lookup(h)
                .ok_or_else(|| format!("translate {h} outside the fragment"))?;
            let mut v = start;
            for &l in self.cycle.letters() {
                v = fragment
                    .step(v, l)
                    .ok_or_else(|| format!("translate {h} of the cycle leaves the fragment"))?;
            }
            if v != start {
                return Err(format!("translate {h} of the cycle does not close"));
            }
        }
        if fragment.first_betti() < self.rank_bound {
            return Err("fragment homology is smaller than the bound".into());
        }
        Ok(())
    }
}

/// Explores, finds the shortest kernel cycle and collects up to `wanted`
/// disjoint translates. `Ok(None)` when no kernel cycle exists in the ball.
pub fn ninf_witness(
    oracle: &GroupOracle,
    radius: usize,
    wanted: usize,
    cap: usize,
) -> Result<Option<NinfWitness>> {
    let fragment = explore(oracle, radius, cap)?;
    let Some(cycle) = shortest_kernel_cycle(&fragment) else {
        return Ok(None);
    };
    let support = cycle_support(oracle, &cycle);
    let sel = disjoint_translates(oracle, &fragment, &support, wanted);
    let witness = NinfWitness {
        rank_bound: sel.translates.len(),
        cycle,
        support,
        translates: sel.translates,
        radius,
        requested: wanted,
        diagnostic: sel.diagnostic,
    };
    if let Err(e) = witness.verify(oracle, &fragment) {
        panic!("witness failed its own verification: {e}");
    }
    Ok(Some(witness))
}
