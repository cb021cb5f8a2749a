//! First cohomology of finitely presented groups.
//!
//! A class in `H^1(G, Z) = Hom(G, Z)` is recorded by its values on the
//! generators. With coefficients in a module `M`, a 1-cocycle is recorded by
//! one vector of `M` per generator; the relator conditions come from Fox
//! derivatives.
//!
//! Cup products are evaluated on relator 2-cells of the presentation complex.
//! That is the cohomology cup product only when the complex is aspherical,
//! which the caller has to vouch for through [`Aspherical`].
//!
//! Sign convention: on `surface_presentation(g)` the dual classes satisfy
//! `a_i^* ∪ b_i^* = +1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{fox_derivative, surface_presentation, GroupHom, GroupRingElement, Presentation, Word};
use crate::linalg::{self, integer_kernel, integer_solve, smith_normal_form, IntMatrix, Lattice};

/// Values of a homomorphism `G -> Z` on the generators.
pub type H1Class = Vec<BigInt>;

/// Basis of `Hom(G, Z)`: the Hermite basis of the integral kernel of the
/// relator exponent matrix.
pub fn h1_basis(p: &Presentation) -> Vec<H1Class> {
    integer_kernel(&p.exponent_matrix()).basis().to_vec()
}

/// A presentation whose presentation complex is declared aspherical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aspherical(Presentation);

impl Aspherical {
    /// Takes the caller's word for it.
    pub fn declare(p: Presentation) -> Self {
        Aspherical(p)
    }

    /// Recognizes the two families known to be aspherical here: presentations
    /// without relators, and the standard surface presentations.
    pub fn recognize(p: &Presentation) -> Option<Self> {
        if p.is_free() {
            return Some(Aspherical(p.clone()));
        }
        let r = p.rank();
        if r >= 2 && r.is_multiple_of(2) && surface_presentation(r / 2).ok().as_ref() == Some(p) {
            return Some(Aspherical(p.clone()));
        }
        None
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0
    }
}

/// An antisymmetric integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm(IntMatrix);

impl SkewForm {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("form matrix must be square".into()));
        }
        if m.transpose() != -&m {
            return Err(Error::InvalidArgument("form matrix is not antisymmetric".into()));
        }
        Ok(SkewForm(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.0)
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let jy = self.0.mul_vec(y);
        x.iter().zip(&jy).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The standard symplectic form on `Z^(2g)` in the basis
    /// `a_1^*, b_1^*, ..., a_g^*, b_g^*`.
    pub fn standard_symplectic(genus: usize) -> Self {
        let n = 2 * genus;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..genus {
            m.set(2 * i, 2 * i + 1, BigInt::one());
            m.set(2 * i + 1, 2 * i, -BigInt::one());
        }
        SkewForm(m)
    }
}

/// The cup product pairing on `H^1` together with the basis it is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupProduct {
    pub basis: Vec<H1Class>,
    pub form: SkewForm,
}

impl CupProduct {
    /// Coordinates of a class (given by generator values) in `basis`.
    pub fn coordinates(&self, class: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = class.len();
        let b = IntMatrix::from_columns(&self.basis, n);
        integer_solve(&b, class).map(|s| s.particular)
    }
}

/// `(alpha ∪ beta)` evaluated on the 2-cell of `relator`.
///
/// Walks the relator keeping the value of `alpha` on the prefix read so far:
/// a letter `x` contributes `alpha(prefix) * beta(x)`, an inverse letter
/// `x^-1` contributes `-alpha(prefix x^-1) * beta(x)`.
pub fn cup_on_relator(relator: &Word, alpha: &[BigInt], beta: &[BigInt]) -> BigInt {
    let mut prefix = BigInt::zero();
    let mut total = BigInt::zero();
    for &l in relator.letters() {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            total += &prefix * &beta[g];
            prefix += &alpha[g];
        } else {
            prefix -= &alpha[g];
            total -= &prefix * &beta[g];
        }
    }
    total
}

/// Matrix of `H^1 x H^1 -> H^2` in the [`h1_basis`].
///
/// With no relators the form is zero. With one relator lying in the commutator
/// subgroup, `H^2 = Z` is generated by the dual of the relator cell. A relator
/// with nonzero exponent sums makes `H^2` finite, and two or more relators make
/// the pairing vector valued; both are rejected.
pub fn cup_form(p: &Aspherical) -> Result<CupProduct> {
    let pres = p.presentation();
    let basis = h1_basis(pres);
    let b = basis.len();
    let mut m = IntMatrix::zeros(b, b);
    match pres.relators() {
        [] => {}
        [r] if r.exponent_vector(pres.rank()).iter().all(Zero::is_zero) => {
            for i in 0..b {
                for j in 0..b {
                    m.set(i, j, cup_on_relator(r, &basis[i], &basis[j]));
                }
            }
        }
        [r] => {
            return Err(Error::InvalidPresentation(format!(
                "relator {r} has nonzero exponent sums, so H^2 is finite"
            )))
        }
        more => {
            return Err(Error::InvalidPresentation(format!(
                "cup form needs at most one relator, got {}",
                more.len()
            )))
        }
    }
    let form = SkewForm::new(m)?;
    Ok(CupProduct { basis, form })
}

fn check_vectors(j: &SkewForm, v: &[Vec<BigInt>]) -> Result<()> {
    match v.iter().find(|x| x.len() != j.dim()) {
        Some(x) => Err(Error::Dimension(format!(
            "vector of length {} for a form of size {}",
            x.len(),
            j.dim()
        ))),
        None => Ok(()),
    }
}

/// Whether the span of `v` pairs to zero with itself.
pub fn is_isotropic(j: &SkewForm, v: &[Vec<BigInt>]) -> Result<bool> {
    check_vectors(j, v)?;
    Ok(v.iter()
        .enumerate()
        .all(|(a, x)| v[a + 1..].iter().all(|y| j.pair(x, y).is_zero())))
}

/// Isotropic of the largest possible dimension, `dim - rank(J)/2` over Q
/// (which is `g` for a nondegenerate form of rank `2g`).
pub fn is_maximal_isotropic(j: &SkewForm, v: &[Vec<BigInt>]) -> Result<bool> {
    if !is_isotropic(j, v)? {
        return Ok(false);
    }
    let dim_v = if v.is_empty() {
        0
    } else {
        linalg::rank(&IntMatrix::from_rows(v.to_vec(), j.dim())?)
    };
    Ok(dim_v == j.dim() - j.rank() / 2)
}

/// Image of `h^* : H^1(target) -> H^1(source)`, as a lattice of generator
/// values on the source.
pub fn pullback_h1(h: &GroupHom) -> Lattice {
    let mt = h.abelianized_matrix().transpose();
    let gens: Vec<Vec<BigInt>> = h1_basis(h.target()).iter().map(|phi| mt.mul_vec(phi)).collect();
    Lattice::new(h.source().rank(), &gens)
}

/// One module vector per generator.
pub type Cocycle = Vec<Vec<BigInt>>;

/// A linear action of the free group on `Z^dim`: one invertible integer matrix
/// per generator, extended to words and to the group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    dim: usize,
    forward: Vec<IntMatrix>,
    inverse: Vec<IntMatrix>,
}

impl Action {
    pub fn new(dim: usize, matrices: Vec<IntMatrix>) -> Result<Self> {
        let mut inverse = Vec::with_capacity(matrices.len());
        for (k, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "matrix for generator {k} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            inverse.push(m.inverse_unimodular().ok_or_else(|| {
                Error::InvalidModule(format!("matrix for generator {k} is not unimodular"))
            })?);
        }
        Ok(Action {
            dim,
            forward: matrices,
            inverse,
        })
    }

    /// Trivial action on `Z^dim`.
    pub fn trivial(rank: usize, dim: usize) -> Self {
        Action::new(dim, vec![IntMatrix::identity(dim); rank]).expect("identity is unimodular")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.forward.len()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.forward
    }

    pub fn letter(&self, l: i32) -> &IntMatrix {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.forward[g]
        } else {
            &self.inverse[g]
        }
    }

    pub fn eval_word(&self, w: &Word) -> IntMatrix {
        w.letters()
            .iter()
            .fold(IntMatrix::identity(self.dim), |acc, &l| &acc * self.letter(l))
    }

    pub fn eval_ring(&self, e: &GroupRingElement) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.dim, self.dim);
        for (w, c) in e.terms() {
            let m = self.eval_word(w);
            let scaled = IntMatrix::from_fn(self.dim, self.dim, |i, j| m.get(i, j) * c);
            acc = &acc + &scaled;
        }
        acc
    }

    /// Checks that every relator acts as the identity.
    pub fn check_relators(&self, p: &Presentation) -> Result<()> {
        if p.rank() != self.rank() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} generators",
                self.rank(),
                p.rank()
            )));
        }
        let id = IntMatrix::identity(self.dim);
        for r in p.relators() {
            if self.eval_word(r) != id {
                return Err(Error::InvalidModule(format!("relator {r} acts nontrivially")));
            }
        }
        Ok(())
    }
}

/// `H^1(G, M)` as an abstract group together with representing cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedH1 {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Representatives of a basis of the free part.
    pub free_generators: Vec<Cocycle>,
    /// Representatives of the cyclic torsion summands with their orders.
    pub torsion_generators: Vec<(BigInt, Cocycle)>,
    /// Rank of the cocycle lattice `Z^1`.
    pub cocycle_rank: usize,
    /// Rank of the coboundary lattice `B^1`.
    pub coboundary_rank: usize,
}

/// Block matrix of the relator conditions: block `(r, j)` is the image of
/// `d r / d x_j` under the action.
pub fn fox_matrix(p: &Presentation, action: &Action) -> IntMatrix {
    let d = action.dim();
    let n = p.rank();
    let blocks: Vec<IntMatrix> = p
        .relators()
        .iter()
        .map(|r| {
            let row: Vec<IntMatrix> = (0..n)
                .map(|j| action.eval_ring(&fox_derivative(r, j)))
                .collect();
            IntMatrix::hstack(&row, d)
        })
        .collect();
    IntMatrix::vstack(&blocks, n * d)
}

/// Stacked `(A_j - I)`: column `k` is the coboundary of the `k`-th basis vector.
pub fn coboundary_matrix(action: &Action) -> IntMatrix {
    let id = IntMatrix::identity(action.dim());
    let blocks: Vec<IntMatrix> = action.matrices().iter().map(|a| a - &id).collect();
    IntMatrix::vstack(&blocks, action.dim())
}

pub fn is_cocycle(p: &Presentation, action: &Action, c: &Cocycle) -> bool {
    let flat: Vec<BigInt> = c.iter().flatten().cloned().collect();
    fox_matrix(p, action).mul_vec(&flat).iter().all(Zero::is_zero)
}

fn split_cocycle(flat: &[BigInt], dim: usize) -> Cocycle {
    flat.chunks(dim.max(1)).map(|c| c.to_vec()).collect()
}

pub fn twisted_h1(p: &Presentation, action: &Action) -> Result<TwistedH1> {
    action.check_relators(p)?;
    let d = action.dim();
    let nd = p.rank() * d;
    let z1 = integer_kernel(&fox_matrix(p, action));
    let kt = IntMatrix::from_columns(z1.basis(), nd);
    let cob = coboundary_matrix(action);

    // coordinates of each coboundary generator in the Z^1 basis
    let coords: Vec<Vec<BigInt>> = (0..d)
        .map(|k| {
            let b = cob.column(k);
            integer_solve(&kt, &b)
                .expect("coboundaries are cocycles and Z^1 is saturated")
                .particular
        })
        .collect();
    let z = z1.rank();
    let c = IntMatrix::from_columns(&coords, z);
    let snf = smith_normal_form(&c);
    let rank_b = snf.rank();
    let u_inv = snf.u.inverse_unimodular().expect("U is unimodular");
    let rep = |i: usize| split_cocycle(&kt.mul_vec(&u_inv.column(i)), d);

    let mut torsion_generators = Vec::new();
    for i in 0..rank_b {
        let di = &snf.invariant_factors[i];
        if !di.is_one() {
            torsion_generators.push((di.clone(), rep(i)));
        }
    }
    let free_generators: Vec<Cocycle> = (rank_b..z).map(rep).collect();
    Ok(TwistedH1 {
        free_rank: z - rank_b,
        torsion: snf.torsion(),
        free_generators,
        torsion_generators,
        cocycle_rank: z,
        coboundary_rank: rank_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{free_presentation, standard_surjection};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn surface(g: usize) -> Aspherical {
        Aspherical::recognize(&surface_presentation(g).unwrap()).unwrap()
    }

    #[test]
    fn h1_ranks() {
        assert_eq!(h1_basis(&free_presentation(2).unwrap()).len(), 2);
        assert_eq!(h1_basis(&surface_presentation(2).unwrap()).len(), 4);
        let c5 = Presentation::new(1, vec![Word::parse("aaaaa").unwrap()]).unwrap();
        assert!(h1_basis(&c5).is_empty());
    }

    #[test]
    fn cup_free_is_zero() {
        let f = Aspherical::recognize(&free_presentation(3).unwrap()).unwrap();
        assert!(cup_form(&f).unwrap().form.matrix().is_zero());
    }

    #[test]
    fn cup_torus() {
        let c = cup_form(&surface(1)).unwrap();
        assert_eq!(c.form.matrix(), &IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn cup_genus_two() {
        let c = cup_form(&surface(2)).unwrap();
        assert_eq!(c.form, SkewForm::standard_symplectic(2));
    }

    #[test]
    fn recognition() {
        let p = Presentation::new(2, vec![Word::parse("aabb").unwrap()]).unwrap();
        assert!(Aspherical::recognize(&p).is_none());
        // Klein bottle: aspherical, but H^2 = Z/2
        assert!(cup_form(&Aspherical::declare(p)).is_err());
        // Z^2 * Z, declared: relator in the commutator subgroup
        let q = Presentation::new(3, vec![Word::parse("abAB").unwrap()]).unwrap();
        assert_eq!(cup_form(&Aspherical::declare(q)).unwrap().basis.len(), 3);

        let two = Presentation::new(2, vec![Word::parse("abAB").unwrap(), Word::parse("aa").unwrap()]).unwrap();
        assert!(cup_form(&Aspherical::declare(two)).is_err());
    }

    #[test]
    fn isotropy_examples() {
        let j = SkewForm::standard_symplectic(2);
        let a1 = v(&[1, 0, 0, 0]);
        let b1 = v(&[0, 1, 0, 0]);
        let a2 = v(&[0, 0, 1, 0]);
        assert!(is_maximal_isotropic(&j, &[a1.clone(), a2.clone()]).unwrap());
        assert!(!is_isotropic(&j, &[a1.clone(), b1]).unwrap());
        assert!(is_isotropic(&j, std::slice::from_ref(&a1)).unwrap());
        assert!(!is_maximal_isotropic(&j, &[a1]).unwrap());
        let diag = [v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])];
        assert!(is_maximal_isotropic(&j, &diag).unwrap());
        assert!(is_isotropic(&j, &[v(&[1, 0])]).is_err());
    }

    #[test]
    fn skew_form_validation() {
        assert!(SkewForm::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).is_err());
        assert!(SkewForm::new(IntMatrix::from_i64(&[&[1, 0], &[0, -1]])).is_err());
        assert!(SkewForm::new(IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn pullback_examples() {
        let p = standard_surjection(2, 2).unwrap();
        let l = pullback_h1(&p);
        assert_eq!(l.basis(), &[v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1])]);

        let f2 = free_presentation(2).unwrap();
        let id = GroupHom::new(f2.clone(), f2.clone(), vec![Word::generator(0), Word::generator(1)]).unwrap();
        assert_eq!(pullback_h1(&id), Lattice::full(2));

        let triv = GroupHom::new(f2.clone(), f2, vec![Word::identity(), Word::identity()]).unwrap();
        assert!(pullback_h1(&triv).is_zero());
    }

    #[test]
    fn twisted_trivial_free() {
        let f2 = free_presentation(2).unwrap();
        let h = twisted_h1(&f2, &Action::trivial(2, 1)).unwrap();
        assert_eq!((h.free_rank, h.torsion.len()), (2, 0));
    }

    #[test]
    fn twisted_unipotent_circle() {
        let f1 = free_presentation(1).unwrap();
        let act = Action::new(2, vec![IntMatrix::from_i64(&[&[1, 1], &[0, 1]])]).unwrap();
        let h = twisted_h1(&f1, &act).unwrap();
        assert_eq!(h.free_rank, 1);
        assert!(h.torsion.is_empty());
        assert_eq!(h.coboundary_rank, 1);
    }

    #[test]
    fn twisted_torus_trivial() {
        let t = surface_presentation(1).unwrap();
        let h = twisted_h1(&t, &Action::trivial(2, 1)).unwrap();
        assert_eq!(h.free_rank, 2);
        for c in &h.free_generators {
            assert!(is_cocycle(&t, &Action::trivial(2, 1), c));
        }
    }

    #[test]
    fn twisted_sign_action_has_torsion() {
        // Z acting on Z by -1: H^1 = Z / 2
        let f1 = free_presentation(1).unwrap();
        let act = Action::new(1, vec![IntMatrix::from_i64(&[&[-1]])]).unwrap();
        let h = twisted_h1(&f1, &act).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, v(&[2]));
        assert_eq!(h.torsion_generators.len(), 1);
    }

    #[test]
    fn relator_must_act_trivially() {
        let t = surface_presentation(1).unwrap();
        let a = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let b = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        let act = Action::new(2, vec![a, b]).unwrap();
        assert!(matches!(twisted_h1(&t, &act), Err(Error::InvalidModule(_))));
        assert!(Action::new(1, vec![IntMatrix::from_i64(&[&[2]])]).is_err());
    }
}
