//! Monodromy modules over surface and free groups, and the degeneracy test
//! that detects a bad monodromy submodule.
//!
//! Throughout, `Π` is either the free group `F_g` or the surface group `Π_g`
//! with its standard generators `x_1, ..., x_b` (`b = g` or `2g`), and the
//! characters `φ_1, ..., φ_b` of `Hom(Π, Z)` are the dual basis:
//! `φ_j(x_i) = δ_ij`.
//!
//! An invariant vector `u` is *degenerate* when every `φ_j · u` is a
//! coboundary, i.e. there are `v_j` with `(A_i - I) v_j = φ_j(x_i) u` for all
//! generators. Degeneracy is decided over `Q` (it is invariant under scaling
//! `u`) and the degenerate vectors are returned as a saturated lattice.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cohomology::{coboundary_matrix, Action};
use crate::error::{Error, Result};
use crate::group::{free_presentation, surface_presentation, Presentation};
use crate::linalg::{
    self, clear_denominators, integer_kernel, integer_solve, integer_solve_scale, rational_kernel,
    rational_solve, IntMatrix, Lattice,
};
use crate::text::{by_letter, letter, matrix_rows, Tokens};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiKind {
    Free,
    Surface,
}

/// Which group `Π` acts: `F_g` or `Π_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PiSpec {
    kind: PiKind,
    genus: usize,
}

impl PiSpec {
    pub fn new(kind: PiKind, genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        Ok(PiSpec { kind, genus })
    }

    pub fn free(genus: usize) -> Result<Self> {
        Self::new(PiKind::Free, genus)
    }

    pub fn surface(genus: usize) -> Result<Self> {
        Self::new(PiKind::Surface, genus)
    }

    pub fn kind(&self) -> PiKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of `Hom(Π, Z)`, equal to the number of generators.
    pub fn b(&self) -> usize {
        match self.kind {
            PiKind::Free => self.genus,
            PiKind::Surface => 2 * self.genus,
        }
    }

    pub fn presentation(&self) -> Presentation {
        match self.kind {
            PiKind::Free => free_presentation(self.genus),
            PiKind::Surface => surface_presentation(self.genus),
        }
        .expect("genus checked at construction")
    }

    /// `φ_j(x_i)`.
    pub fn character(&self, j: usize, i: usize) -> i64 {
        (i == j) as i64
    }
}

impl fmt::Display for PiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PiKind::Free => write!(f, "free:{}", self.genus),
            PiKind::Surface => write!(f, "surface:{}", self.genus),
        }
    }
}

impl FromStr for PiSpec {
    type Err = Error;

    /// `surface:g` or `free:g`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected surface:g or free:g, got `{s}`"));
        let (kind, g) = s.split_once(':').ok_or_else(bad)?;
        let g: usize = g.parse().map_err(|_| bad())?;
        match kind {
            "surface" => PiSpec::surface(g),
            "free" => PiSpec::free(g),
            _ => Err(bad()),
        }
    }
}

/// A `Π`-lattice `Z^d` given by one unimodular matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiModule {
    spec: PiSpec,
    action: Action,
}

impl PiModule {
    /// Checks the matrix count, unimodularity and, for surface groups, that the
    /// surface relator acts trivially.
    pub fn new(spec: PiSpec, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != spec.b() {
            return Err(Error::InvalidModule(format!(
                "{spec} has {} generators, got {} matrices",
                spec.b(),
                matrices.len()
            )));
        }
        let dim = matrices.first().map_or(0, |m| m.rows());
        let action = Action::new(dim, matrices)?;
        action.check_relators(&spec.presentation())?;
        Ok(PiModule { spec, action })
    }

    pub fn trivial(spec: PiSpec, dim: usize) -> Self {
        PiModule::new(spec, vec![IntMatrix::identity(dim); spec.b()]).expect("trivial module")
    }

    pub fn spec(&self) -> PiSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        self.action.matrices()
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn direct_sum(&self, other: &PiModule) -> Result<PiModule> {
        if self.spec != other.spec {
            return Err(Error::InvalidModule("direct sum of modules over different groups".into()));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let mats = self
            .matrices()
            .iter()
            .zip(other.matrices())
            .map(|(a, b)| {
                IntMatrix::from_fn(d1 + d2, d1 + d2, |i, j| match (i < d1, j < d1) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - d1, j - d1).clone(),
                    _ => BigInt::zero(),
                })
            })
            .collect();
        PiModule::new(self.spec, mats)
    }

    /// The isomorphic module `P A_i P^-1`.
    pub fn conjugate(&self, p: &IntMatrix) -> Result<PiModule> {
        let p_inv = p
            .inverse_unimodular()
            .ok_or_else(|| Error::InvalidArgument("change of basis must be unimodular".into()))?;
        let mats = self.matrices().iter().map(|a| &(p * a) * &p_inv).collect();
        PiModule::new(self.spec, mats)
    }

    /// Parses the module format and validates it against `spec`.
    pub fn parse(spec: PiSpec, text: &str) -> Result<Self> {
        let (_, mats) = parse_module_text(text)?;
        PiModule::new(spec, mats)
    }

    pub fn to_text(&self) -> String {
        module_to_text(self.dim(), self.matrices())
    }
}

/// Parses
///
/// ```text
/// dim d
/// gen a
/// <d rows of d integers>
/// gen b
/// ...
/// ```
///
/// Returns the dimension and the matrices ordered by generator letter.
pub fn parse_module_text(text: &str) -> Result<(usize, Vec<IntMatrix>)> {
    let mut t = Tokens::new(text);
    t.expect("dim")?;
    let d = t.usize("dimension")?;
    let mut entries = Vec::new();
    while t.peek().is_some() {
        t.expect("gen")?;
        let k = t.letter()?;
        entries.push((k, t.matrix(d, d)?));
    }
    t.finish()?;
    Ok((d, by_letter(entries)?))
}

pub fn module_to_text(dim: usize, matrices: &[IntMatrix]) -> String {
    let mut s = format!("dim {dim}\n");
    for (k, m) in matrices.iter().enumerate() {
        s.push_str(&format!("gen {}\n", letter(k)));
        s.push_str(&matrix_rows(m));
    }
    s
}

/// `M^Π`, the vectors fixed by every generator.
pub fn invariants(m: &PiModule) -> Lattice {
    integer_kernel(&coboundary_matrix(m.action()))
}

/// The stacked right-hand side `(φ_j(x_i) u)_i`.
fn character_rhs(m: &PiModule, j: usize, u: &[BigInt]) -> Vec<BigInt> {
    let spec = m.spec();
    (0..spec.b())
        .flat_map(|i| {
            let c = spec.character(j, i);
            u.iter().map(move |x| x * c)
        })
        .collect()
}

/// Invariant vectors `u` for which every `φ_j · u` is a coboundary, as a
/// saturated sublattice of `M^Π`.
pub fn degenerate_invariants(m: &PiModule) -> Lattice {
    let d = m.dim();
    let t = coboundary_matrix(m.action());
    // φ_j u lies in im(T) iff every left annihilator y of T kills it, and
    // y · (φ_j(x_i) u)_i = Σ_i φ_j(x_i) y_i · u.
    let annihilators = rational_kernel(&t.transpose());
    let mut rows: Vec<Vec<BigInt>> = t.to_rows();
    for y in &annihilators {
        let y = clear_denominators(y);
        for j in 0..m.spec().b() {
            let mut row = vec![BigInt::zero(); d];
            for i in 0..m.spec().b() {
                let c = m.spec().character(j, i);
                if c == 0 {
                    continue;
                }
                for (r, yk) in row.iter_mut().zip(&y[i * d..(i + 1) * d]) {
                    *r += yk * c;
                }
            }
            rows.push(row);
        }
    }
    integer_kernel(&IntMatrix::from_rows(rows, d).expect("uniform rows"))
}

/// Vectors `u, v_1, ..., v_b` spanning a bad monodromy submodule:
/// `A_i v_j = v_j + φ_j(x_i) u` and `A_i u = u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadModuleWitness {
    pub spec: PiSpec,
    pub u: Vec<BigInt>,
    pub v: Vec<Vec<BigInt>>,
}

impl BadModuleWitness {
    /// Checks both families of equations and the independence of
    /// `u, v_1, ..., v_b`.
    pub fn verify(&self, m: &PiModule) -> std::result::Result<(), String> {
        let spec = m.spec();
        if spec != self.spec {
            return Err(format!("witness is for {}, module for {spec}", self.spec));
        }
        if self.v.len() != spec.b() {
            return Err(format!("expected {} vectors v_j, got {}", spec.b(), self.v.len()));
        }
        let d = m.dim();
        if self.u.len() != d || self.v.iter().any(|x| x.len() != d) {
            return Err("vector length differs from module dimension".into());
        }
        for (i, a) in m.matrices().iter().enumerate() {
            if a.mul_vec(&self.u) != self.u {
                return Err(format!("generator {} moves u", letter(i)));
            }
            for (j, vj) in self.v.iter().enumerate() {
                let c = spec.character(j, i);
                let expected: Vec<BigInt> = vj.iter().zip(&self.u).map(|(x, y)| x + y * c).collect();
                if a.mul_vec(vj) != expected {
                    return Err(format!("generator {} violates the shear equation for v_{}", letter(i), j + 1));
                }
            }
        }
        let mut rows = vec![self.u.clone()];
        rows.extend(self.v.iter().cloned());
        let r = linalg::rank(&IntMatrix::from_rows(rows, d).expect("uniform rows"));
        if r != spec.b() + 1 {
            return Err(format!("u, v_1..v_b have rank {r}, expected {}", spec.b() + 1));
        }
        Ok(())
    }
}

/// The bad monodromy module on the basis `u, v_1, ..., v_b` (coordinates
/// `0, 1, ..., b`), with its defining witness.
pub fn build_bad_module(spec: PiSpec) -> (PiModule, BadModuleWitness) {
    let b = spec.b();
    let d = b + 1;
    let mats = (0..b)
        .map(|i| {
            let mut a = IntMatrix::identity(d);
            for j in 0..b {
                let c = spec.character(j, i);
                if c != 0 {
                    a.set(0, j + 1, BigInt::from(c));
                }
            }
            a
        })
        .collect();
    let module = PiModule::new(spec, mats).expect("shears over a common invariant vector commute");
    let unit = |k: usize| (0..d).map(|i| BigInt::from((i == k) as i64)).collect::<Vec<_>>();
    let witness = BadModuleWitness {
        spec,
        u: unit(0),
        v: (1..d).map(unit).collect(),
    };
    (module, witness)
}

/// A bad submodule, present exactly when the degenerate lattice is nonzero.
///
/// `u` is the first Hermite basis vector of the degenerate lattice, scaled by
/// the least factor that makes every shear equation integrally solvable.
pub fn extract_bad_submodule(m: &PiModule) -> Option<BadModuleWitness> {
    let dl = degenerate_invariants(m);
    let first = dl.basis().first()?;
    let t = coboundary_matrix(m.action());
    let b = m.spec().b();
    let scale = (0..b).fold(BigInt::one(), |acc, j| {
        let k = integer_solve_scale(&t, &character_rhs(m, j, first))
            .expect("degenerate vectors are rationally solvable");
        num_integer::Integer::lcm(&acc, &k)
    });
    let u: Vec<BigInt> = first.iter().map(|x| x * &scale).collect();
    let v = (0..b)
        .map(|j| {
            integer_solve(&t, &character_rhs(m, j, &u))
                .expect("scaled to be integrally solvable")
                .particular
        })
        .collect();
    let witness = BadModuleWitness {
        spec: m.spec(),
        u,
        v,
    };
    if let Err(e) = witness.verify(m) {
        panic!("extracted witness failed verification: {e}");
    }
    Some(witness)
}

/// A rational projection `P` onto `M^Π ⊗ Q` commuting with the action, if
/// one exists. Its kernel is then an invariant complement.
pub fn find_invariant_splitting(m: &PiModule) -> Option<Vec<Vec<BigRational>>> {
    let d = m.dim();
    let n = d * d;
    let idx = |r: usize, c: usize| r * d + c;
    let id = IntMatrix::identity(d);
    let mut eqs: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();

    // P w = w on the invariants
    for w in invariants(m).basis() {
        for r in 0..d {
            let mut row = vec![BigInt::zero(); n];
            for c in 0..d {
                row[idx(r, c)] = w[c].clone();
            }
            eqs.push(row);
            rhs.push(w[r].clone());
        }
    }
    for a in m.matrices() {
        let am = a - &id;
        for r in 0..d {
            for c in 0..d {
                // image inside the invariants: ((A - I) P)[r][c] = 0
                let mut row = vec![BigInt::zero(); n];
                for k in 0..d {
                    row[idx(k, c)] += am.get(r, k);
                }
                eqs.push(row);
                rhs.push(BigInt::zero());
                // (P A - A P)[r][c] = 0
                let mut row = vec![BigInt::zero(); n];
                for k in 0..d {
                    row[idx(r, k)] += a.get(k, c);
                    row[idx(k, c)] -= a.get(r, k);
                }
                eqs.push(row);
                rhs.push(BigInt::zero());
            }
        }
    }
    let sys = IntMatrix::from_rows(eqs, n).expect("uniform rows");
    let p = rational_solve(&sys, &rhs)?;
    Some(p.chunks(d.max(1)).take(d).map(|r| r.to_vec()).collect())
}

/// How a verdict is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// `Π = Π_g`: an obstruction rules out compact Kähler fundamental groups.
    CompactKahler,
    /// `Π = F_g`: an obstruction is a restriction on the monodromy of a
    /// quasi-projective fibration.
    QuasiProjective,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::CompactKahler => "compact Kähler obstruction",
            Reading::QuasiProjective => "quasi-projective reading: monodromy restriction",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerVerdict {
    pub reading: Reading,
    pub invariant_rank: usize,
    pub degenerate_rank: usize,
    pub obstructed: bool,
    pub witness: Option<BadModuleWitness>,
    pub splitting: Option<Vec<Vec<BigRational>>>,
}

pub fn kahler_verdict(m: &PiModule) -> KahlerVerdict {
    let inv = invariants(m);
    let deg = degenerate_invariants(m);
    let witness = extract_bad_submodule(m);
    let splitting = find_invariant_splitting(m);
    let obstructed = !deg.is_zero();
    assert!(
        !(obstructed && splitting.is_some()),
        "an invariant splitting forces the degenerate lattice to vanish"
    );
    KahlerVerdict {
        reading: match m.spec().kind() {
            PiKind::Surface => Reading::CompactKahler,
            PiKind::Free => Reading::QuasiProjective,
        },
        invariant_rank: inv.rank(),
        degenerate_rank: deg.rank(),
        obstructed,
        witness,
        splitting,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn shear_module() -> PiModule {
        PiModule::new(
            PiSpec::free(2).unwrap(),
            vec![IntMatrix::from_i64(&[&[1, 1], &[0, 1]]), IntMatrix::identity(2)],
        )
        .unwrap()
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("surface:2".parse::<PiSpec>().unwrap(), PiSpec::surface(2).unwrap());
        assert_eq!("free:3".parse::<PiSpec>().unwrap().b(), 3);
        assert!("surface:0".parse::<PiSpec>().is_err());
        assert!("torus:1".parse::<PiSpec>().is_err());
        assert_eq!(PiSpec::surface(2).unwrap().b(), 4);
    }

    #[test]
    fn invariants_examples() {
        let m = PiModule::trivial(PiSpec::free(2).unwrap(), 3);
        assert_eq!(invariants(&m), Lattice::full(3));
        assert_eq!(invariants(&shear_module()).basis(), &[v(&[1, 0])]);
        let neg = PiModule::new(PiSpec::free(1).unwrap(), vec![IntMatrix::from_i64(&[&[-1]])]).unwrap();
        assert!(invariants(&neg).is_zero());
    }

    #[test]
    fn degenerate_examples() {
        let triv = PiModule::trivial(PiSpec::free(2).unwrap(), 3);
        assert!(degenerate_invariants(&triv).is_zero());
        assert!(degenerate_invariants(&shear_module()).is_zero());
        let (bad, w) = build_bad_module(PiSpec::free(2).unwrap());
        assert!(degenerate_invariants(&bad).contains(&w.u));
    }

    #[test]
    fn bad_modules() {
        let (m, w) = build_bad_module(PiSpec::free(2).unwrap());
        assert_eq!(m.dim(), 3);
        assert_eq!(m.matrices()[0], IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(m.matrices()[1], IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]));
        w.verify(&m).unwrap();

        let (m, w) = build_bad_module(PiSpec::surface(1).unwrap());
        assert_eq!(m.dim(), 3);
        w.verify(&m).unwrap();

        let (m, w) = build_bad_module(PiSpec::surface(2).unwrap());
        assert_eq!(m.dim(), 5);
        w.verify(&m).unwrap();
    }

    #[test]
    fn extraction_round_trip() {
        let (m, _) = build_bad_module(PiSpec::surface(2).unwrap());
        let w = extract_bad_submodule(&m).unwrap();
        assert_eq!(w.u, v(&[1, 0, 0, 0, 0]));
        assert!(extract_bad_submodule(&PiModule::trivial(PiSpec::free(2).unwrap(), 2)).is_none());
    }

    #[test]
    fn extraction_inside_direct_sum() {
        let spec = PiSpec::free(2).unwrap();
        let (bad, _) = build_bad_module(spec);
        let sum = bad.direct_sum(&PiModule::trivial(spec, 2)).unwrap();
        let w = extract_bad_submodule(&sum).unwrap();
        assert_eq!(w.u, v(&[1, 0, 0, 0, 0]));
        w.verify(&sum).unwrap();
    }

    #[test]
    fn extraction_after_change_of_basis() {
        let spec = PiSpec::free(2).unwrap();
        let (bad, _) = build_bad_module(spec);
        let p = IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[0, 0, 1]]);
        let c = bad.conjugate(&p).unwrap();
        let w = extract_bad_submodule(&c).unwrap();
        w.verify(&c).unwrap();
    }

    #[test]
    fn splitting_examples() {
        let spec = PiSpec::free(1).unwrap();
        let rot = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let m = PiModule::new(spec, vec![rot]).unwrap();
        let p = find_invariant_splitting(&m).unwrap();
        let one = BigRational::one();
        let zero = BigRational::zero();
        assert_eq!(p[0], vec![one.clone(), zero.clone(), zero.clone()]);
        assert_eq!(p[1], vec![zero.clone(), zero.clone(), zero.clone()]);

        assert!(find_invariant_splitting(&shear_module()).is_none());

        let t = PiModule::trivial(PiSpec::free(2).unwrap(), 2);
        let p = find_invariant_splitting(&t).unwrap();
        assert_eq!(p, vec![vec![one.clone(), zero.clone()], vec![zero, one]]);
    }

    #[test]
    fn verdicts() {
        let (m, _) = build_bad_module(PiSpec::surface(2).unwrap());
        let v = kahler_verdict(&m);
        assert!(v.obstructed && v.witness.is_some() && v.splitting.is_none());
        assert_eq!(v.reading, Reading::CompactKahler);

        let v = kahler_verdict(&PiModule::trivial(PiSpec::surface(2).unwrap(), 2));
        assert!(!v.obstructed);
        assert!(v.splitting.is_some());

        let v = kahler_verdict(&shear_module());
        assert!(!v.obstructed && v.splitting.is_none());
        assert_eq!(v.reading, Reading::QuasiProjective);
        assert_eq!((v.invariant_rank, v.degenerate_rank), (1, 0));
    }

    #[test]
    fn module_validation() {
        let spec = PiSpec::surface(1).unwrap();
        let a = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let b = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        assert!(PiModule::new(spec, vec![a.clone(), b]).is_err());
        assert!(PiModule::new(spec, vec![a.clone()]).is_err());
        assert!(PiModule::new(spec, vec![a, IntMatrix::from_i64(&[&[2, 0], &[0, 1]])]).is_err());
    }

    #[test]
    fn module_text_round_trip() {
        let (m, _) = build_bad_module(PiSpec::surface(1).unwrap());
        let text = m.to_text();
        assert!(text.starts_with("dim 3\ngen a\n1 1 0\n"));
        assert_eq!(PiModule::parse(m.spec(), &text).unwrap(), m);
        assert!(parse_module_text("dim 1\ngen b\n1\n").is_err());
        assert!(parse_module_text("dim 1\ngen a\n1\ngen a\n1\n").is_err());
        assert!(parse_module_text("dim 2\ngen a\n1 0\n0\n").is_err());
    }
}
