//! Shared helpers for the integration tests: seeded generators and
//! brute-force oracles that avoid the code paths they check.

#![allow(dead_code)]

use std::collections::VecDeque;

use fibred_groups::cohomology::{is_cocycle, twisted_h1, Action};
use fibred_groups::group::{Presentation, Word};
use fibred_groups::Error;
use fibred_groups::linalg::{rational_kernel, rational_rank, rational_solve, IntMatrix};
use fibred_groups::monodromy::{build_bad_module, PiKind, PiModule, PiSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| {
        let g = rng.gen_range(1..=rank as i32);
        if rng.gen_bool(0.5) {
            g
        } else {
            -g
        }
    }))
}

/// Product of a few random elementary matrices and sign flips.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, d: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    if d < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let mut e = IntMatrix::identity(d);
        e.set(i, j, c);
        m = &m * &e;
    }
    m
}

// ---------------------------------------------------------------------------
// Exact determinants and determinantal divisors

/// Fraction-free elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank and invariant factors `d_k / d_(k-1)` from gcds of minors.
pub fn determinantal_invariants(rows: &[Vec<BigInt>], ncols: usize) -> (usize, Vec<BigInt>) {
    let nrows = rows.len();
    let mut divisors = vec![BigInt::one()];
    for k in 1..=nrows.min(ncols) {
        let mut g = BigInt::zero();
        for rs in combinations(nrows, k) {
            for cs in combinations(ncols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let factors = (1..=rank).map(|k| &divisors[k] / &divisors[k - 1]).collect();
    (rank, factors)
}

pub fn oracle_rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let q: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    rational_rank(&q, ncols)
}

/// Free rank and torsion of `Z^ncols / <rows>`.
pub fn oracle_cokernel(rows: &[Vec<BigInt>], ncols: usize) -> (usize, Vec<BigInt>) {
    let (rank, factors) = determinantal_invariants(rows, ncols);
    let torsion = factors.into_iter().filter(|f| !f.is_one()).collect();
    (ncols - rank, torsion)
}

// ---------------------------------------------------------------------------
// Cup product on the torus from a simplicial model

/// The square with corners P, Q, R, S all identified, edges a = PQ = SR,
/// b = PS = QR and diagonal d = PR, cut into the triangles (P,Q,R) and
/// (P,S,R). The fundamental class is (P,Q,R) - (P,S,R), and
/// `(α ∪ β)(v0 v1 v2) = α(v0 v1) β(v1 v2)`. Returns the Gram matrix on the
/// cocycles dual to `a` and `b`.
pub fn simplicial_torus_cup() -> [[i64; 2]; 2] {
    // cochain values on (a, b, d); cocycle condition forces d = a + b
    let classes = [[1i64, 0, 1], [0, 1, 1]];
    const A: usize = 0;
    const B: usize = 1;
    const D: usize = 2;
    // (first edge, second edge, sign) for each triangle
    let triangles = [(A, B, 1i64), (B, A, -1)];
    let mut gram = [[0i64; 2]; 2];
    for (x, alpha) in classes.iter().enumerate() {
        for (y, beta) in classes.iter().enumerate() {
            gram[x][y] = triangles
                .iter()
                .map(|&(e1, e2, s)| s * alpha[e1] * beta[e2])
                .sum();
            // coboundary check on both triangles: e1 + e2 - d = 0
            for &(e1, e2, _) in &triangles {
                assert_eq!(alpha[e1] + alpha[e2] - alpha[D], 0);
            }
        }
    }
    gram
}

// ---------------------------------------------------------------------------
// Twisted H^1 by prefix recursion

/// `c(r)` for the crossed homomorphism with `c(x_j) = v_j`, using
/// `c(uw) = c(u) + u·c(w)` letter by letter.
pub fn evaluate_cocycle(
    word: &Word,
    mats: &[IntMatrix],
    invs: &[IntMatrix],
    values: &[Vec<BigInt>],
) -> Vec<BigInt> {
    let d = values.first().map_or(0, |v| v.len());
    let mut prefix = IntMatrix::identity(d);
    let mut total = vec![BigInt::zero(); d];
    for &l in word.letters() {
        let g = l.unsigned_abs() as usize - 1;
        let step = if l > 0 {
            values[g].clone()
        } else {
            invs[g].mul_vec(&values[g]).into_iter().map(|x| -x).collect()
        };
        for (t, s) in total.iter_mut().zip(prefix.mul_vec(&step)) {
            *t += s;
        }
        prefix = &prefix * if l > 0 { &mats[g] } else { &invs[g] };
    }
    total
}

pub fn acts_trivially(word: &Word, mats: &[IntMatrix], invs: &[IntMatrix]) -> bool {
    let d = mats[0].rows();
    let m = word.letters().iter().fold(IntMatrix::identity(d), |acc, &l| {
        let g = l.unsigned_abs() as usize - 1;
        &acc * if l > 0 { &mats[g] } else { &invs[g] }
    });
    m == IntMatrix::identity(d)
}

/// The linear map `(v_j) -> (c(r))_r`, one column per coordinate of `(v_j)`.
pub fn prefix_relator_matrix(p: &Presentation, mats: &[IntMatrix]) -> Vec<Vec<BigInt>> {
    let n = p.rank();
    let d = mats[0].rows();
    let invs: Vec<IntMatrix> = mats.iter().map(|m| m.inverse_unimodular().unwrap()).collect();
    let mut cols = Vec::new();
    for j in 0..n {
        for k in 0..d {
            let mut values = vec![vec![BigInt::zero(); d]; n];
            values[j][k] = BigInt::one();
            let col: Vec<BigInt> = p
                .relators()
                .iter()
                .flat_map(|r| evaluate_cocycle(r, mats, &invs, &values))
                .collect();
            cols.push(col);
        }
    }
    let nrows = p.relators().len() * d;
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

#[derive(Debug, PartialEq, Eq)]
pub struct H1Summary {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub cocycle_rank: usize,
    pub coboundary_rank: usize,
}

/// `None` when some relator acts nontrivially.
pub fn oracle_twisted_h1(p: &Presentation, mats: &[IntMatrix]) -> Option<H1Summary> {
    let n = p.rank();
    let d = mats[0].rows();
    let invs: Vec<IntMatrix> = mats.iter().map(|m| m.inverse_unimodular().unwrap()).collect();
    if !p.relators().iter().all(|r| acts_trivially(r, mats, &invs)) {
        return None;
    }
    let relmat = prefix_relator_matrix(p, mats);
    let cocycle_rank = n * d - oracle_rank(&relmat, n * d);
    // generators of B^1 as rows: m = e_k gives ((A_j - I) e_k)_j
    let cob_rows: Vec<Vec<BigInt>> = (0..d)
        .map(|k| {
            mats.iter()
                .flat_map(|a| (0..d).map(move |r| a.get(r, k) - if r == k { 1 } else { 0 }))
                .collect()
        })
        .collect();
    let coboundary_rank = oracle_rank(&cob_rows, n * d);
    // Z^n.d / Z^1 is torsion free, so Z^1/B^1 has the torsion of Z^n.d / B^1
    let (_, torsion) = oracle_cokernel(&cob_rows, n * d);
    Some(H1Summary {
        free_rank: cocycle_rank - coboundary_rank,
        torsion,
        cocycle_rank,
        coboundary_rank,
    })
}

pub fn random_action_mats(rng: &mut impl Rng, d: usize) -> Vec<IntMatrix> {
    let pick = |rng: &mut dyn rand::RngCore| -> IntMatrix {
        match rng.gen_range(0..5) {
            0 => IntMatrix::identity(d),
            1 => IntMatrix::from_fn(d, d, |i, j| {
                BigInt::from(if i == j { if rng.gen_bool(0.5) { 1 } else { -1 } } else { 0 })
            }),
            2 => {
                let mut p: Vec<usize> = (0..d).collect();
                p.rotate_left(rng.gen_range(0..d));
                IntMatrix::from_fn(d, d, |i, j| BigInt::from(i64::from(p[j] == i)))
            }
            3 => IntMatrix::from_fn(d, d, |i, j| {
                BigInt::from(if i == j { 1 } else if j == i + 1 { rng.gen_range(-1i64..=1) } else { 0 })
            }),
            _ => random_unimodular(rng, d, 3),
        }
    };
    let a = pick(rng);
    let b = if rng.gen_bool(0.3) { a.pow(rng.gen_range(0..=2)) } else { pick(rng) };
    vec![a, b]
}

/// Matches the library against the prefix-recursion oracle on random
/// 2-generator presentations with at most one relator; returns the number of
/// instances with a valid action, with torsion, and with a relator.
pub fn run_h1_comparison(seed: u64, wanted: usize) -> (usize, usize, usize) {
    let mut rng = rng(seed);
    let mut valid = 0;
    let mut with_torsion = 0;
    let mut with_relator = 0;
    let mut attempts = 0;
    while valid < wanted {
        attempts += 1;
        assert!(attempts < 100_000, "could not generate enough valid instances");
        let d = rng.gen_range(1..=4);
        let mats = random_action_mats(&mut rng, d);
        let rels = if rng.gen_bool(0.2) {
            vec![]
        } else {
            let mut r = random_word(&mut rng, 2, 10);
            if rng.gen_bool(0.5) {
                r = Word::commutator(&r, &random_word(&mut rng, 2, 3));
            }
            if r.is_empty() {
                continue;
            }
            vec![r]
        };
        let p = Presentation::new(2, rels).unwrap();
        let action = Action::new(d, mats.clone()).unwrap();
        match (oracle_twisted_h1(&p, &mats), twisted_h1(&p, &action)) {
            (None, Err(Error::InvalidModule(_))) => {}
            (Some(expected), Ok(h)) => {
                let got = H1Summary {
                    free_rank: h.free_rank,
                    torsion: h.torsion.clone(),
                    cocycle_rank: h.cocycle_rank,
                    coboundary_rank: h.coboundary_rank,
                };
                assert_eq!(got, expected, "presentation {:?} action {:?}", p, mats);
                for c in h.free_generators.iter().chain(h.torsion_generators.iter().map(|(_, c)| c)) {
                    assert!(is_cocycle(&p, &action, c));
                    let invs: Vec<IntMatrix> = mats.iter().map(|m| m.inverse_unimodular().unwrap()).collect();
                    for r in p.relators() {
                        assert!(evaluate_cocycle(r, &mats, &invs, c).iter().all(|x| *x == BigInt::from(0)));
                    }
                }
                valid += 1;
                with_torsion += usize::from(!h.torsion.is_empty());
                with_relator += usize::from(!p.is_free());
            }
            (o, l) => panic!("oracle {o:?} but library {l:?} for {p:?} with {mats:?}"),
        }
    }
    (valid, with_torsion, with_relator)
}

// ---------------------------------------------------------------------------
// Degenerate invariants by a direct rational solve

/// Rank of the space of invariant `u` admitting `v_j` with
/// `(A_i - I) v_j = φ_j(x_i) u`, computed from the kernel of the full system
/// in the unknowns `(u, v_1, ..., v_b)` projected to `u`. Also returns a
/// rational basis of that projection.
pub fn oracle_degenerate(m: &PiModule) -> (usize, Vec<Vec<BigInt>>) {
    let d = m.dim();
    let spec = m.spec();
    let b = spec.b();
    let ncols = d + b * d;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let id = IntMatrix::identity(d);
    let ts: Vec<IntMatrix> = m.matrices().iter().map(|a| a - &id).collect();
    for t in &ts {
        for r in 0..d {
            let mut row = vec![BigInt::zero(); ncols];
            for c in 0..d {
                row[c] = t.get(r, c).clone();
            }
            rows.push(row);
        }
    }
    for j in 0..b {
        for (i, t) in ts.iter().enumerate() {
            for r in 0..d {
                let mut row = vec![BigInt::zero(); ncols];
                for c in 0..d {
                    row[d + j * d + c] = t.get(r, c).clone();
                }
                row[r] -= BigInt::from(spec.character(j, i));
                rows.push(row);
            }
        }
    }
    let sys = IntMatrix::from_rows(rows, ncols).unwrap();
    let kernel = rational_kernel(&sys);
    let projected: Vec<Vec<BigRational>> = kernel.iter().map(|k| k[..d].to_vec()).collect();
    let rank = rational_rank(&projected, d);
    let basis = projected
        .iter()
        .map(|v| fibred_groups::linalg::clear_denominators(v))
        .collect();
    (rank, basis)
}

/// Stacked `(φ_j(x_i) u)_i`.
pub fn character_rhs(m: &PiModule, j: usize, u: &[BigInt]) -> Vec<BigInt> {
    let spec = m.spec();
    (0..spec.b())
        .flat_map(|i| u.iter().map(move |x| x * spec.character(j, i)).collect::<Vec<_>>())
        .collect()
}

/// Per-vector check: every shear equation for `u` is rationally solvable.
pub fn shear_solvable(m: &PiModule, u: &[BigInt]) -> bool {
    let d = m.dim();
    let id = IntMatrix::identity(d);
    let ts: Vec<IntMatrix> = m.matrices().iter().map(|a| a - &id).collect();
    let t = IntMatrix::vstack(&ts, d);
    (0..m.spec().b()).all(|j| rational_solve(&t, &character_rhs(m, j, u)).is_some())
}

// ---------------------------------------------------------------------------
// Random modules

fn fixed_point_free_block(rng: &mut impl Rng) -> IntMatrix {
    match rng.gen_range(0..3) {
        0 => IntMatrix::from_i64(&[&[-1]]),
        1 => IntMatrix::from_i64(&[&[0, -1], &[1, 0]]),
        _ => IntMatrix::from_i64(&[&[0, -1], &[1, -1]]),
    }
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (p, q) = (a.rows(), b.rows());
    IntMatrix::from_fn(p + q, p + q, |i, j| {
        if i < p && j < p {
            a.get(i, j).clone()
        } else if i >= p && j >= p {
            b.get(i - p, j - p).clone()
        } else {
            BigInt::zero()
        }
    })
}

pub fn random_spec(rng: &mut impl Rng) -> PiSpec {
    match rng.gen_range(0..5) {
        0 => PiSpec::free(1).unwrap(),
        1 => PiSpec::free(2).unwrap(),
        2 => PiSpec::free(3).unwrap(),
        3 => PiSpec::surface(1).unwrap(),
        _ => PiSpec::surface(2).unwrap(),
    }
}

/// For surface groups every choice below uses commuting matrices (powers of
/// one matrix or diagonal matrices), so the surface relator acts trivially.
fn generator_matrices(
    rng: &mut impl Rng,
    spec: PiSpec,
    mut pick: impl FnMut(&mut dyn rand::RngCore, usize) -> IntMatrix,
    base: &IntMatrix,
) -> Vec<IntMatrix> {
    let b = spec.b();
    match spec.kind() {
        PiKind::Free => (0..b).map(|i| pick(rng, i)).collect(),
        PiKind::Surface => (0..b)
            .map(|_| base.pow(rng.gen_range(0..=2)))
            .collect(),
    }
}

/// Trivial block plus a block without invariant vectors, hidden by a change
/// of basis. Always admits an invariant splitting.
pub fn split_module(rng: &mut impl Rng, max_dim: usize) -> PiModule {
    let spec = random_spec(rng);
    loop {
        let block = fixed_point_free_block(rng);
        let k = block.rows();
        if k >= max_dim {
            continue;
        }
        let triv = rng.gen_range(1..=max_dim - k);
        let d = triv + k;
        // powers of one block commute, so surface relators act trivially
        let mut mats: Vec<IntMatrix> =
            (0..spec.b()).map(|_| block.pow(rng.gen_range(0..=3))).collect();
        mats[0] = block.clone();
        let mats: Vec<IntMatrix> = mats
            .iter()
            .map(|m| block_diag(&IntMatrix::identity(triv), m))
            .collect();
        let p = random_unimodular(rng, d, 6);
        return PiModule::new(spec, mats).unwrap().conjugate(&p).unwrap();
    }
}

fn random_unipotent(rng: &mut dyn rand::RngCore, d: usize) -> IntMatrix {
    IntMatrix::from_fn(d, d, |i, j| {
        if i == j {
            BigInt::one()
        } else if j > i {
            BigInt::from(rng.gen_range(-2i64..=2))
        } else {
            BigInt::zero()
        }
    })
}

/// Random unipotent upper triangular generators, conjugated.
pub fn unipotent_module(rng: &mut impl Rng, max_dim: usize) -> PiModule {
    let spec = random_spec(rng);
    let d = rng.gen_range(1..=max_dim);
    let base = random_unipotent(rng, d);
    let mats = generator_matrices(rng, spec, |r, _| random_unipotent(r, d), &base);
    let p = random_unimodular(rng, d, 5);
    PiModule::new(spec, mats).unwrap().conjugate(&p).unwrap()
}

fn diagonal_sign_module(rng: &mut impl Rng, max_dim: usize) -> PiModule {
    let spec = random_spec(rng);
    let d = rng.gen_range(1..=max_dim);
    let diag = |r: &mut dyn rand::RngCore| {
        IntMatrix::from_fn(d, d, |i, j| {
            if i != j {
                BigInt::zero()
            } else if r.gen_bool(0.5) {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        })
    };
    let mats = (0..spec.b()).map(|_| diag(rng)).collect();
    PiModule::new(spec, mats).unwrap()
}

fn permutation_module(rng: &mut impl Rng) -> PiModule {
    let spec = random_spec(rng);
    let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let mat = |p: &[usize; 3]| IntMatrix::from_fn(3, 3, |i, j| BigInt::from(i64::from(p[j] == i)));
    let base = mat(perms.choose(rng).unwrap());
    let mats = generator_matrices(rng, spec, |r, _| mat(&perms[r.gen_range(0..6)]), &base);
    PiModule::new(spec, mats).unwrap()
}

/// A bad module, possibly plus a trivial or sign summand, conjugated.
fn hidden_bad_module(rng: &mut impl Rng, max_dim: usize) -> PiModule {
    let spec = loop {
        let s = random_spec(rng);
        if s.b() < max_dim {
            break s;
        }
    };
    let (bad, _) = build_bad_module(spec);
    let mut m = bad;
    if m.dim() < max_dim && rng.gen_bool(0.5) {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let extra = PiModule::new(spec, vec![IntMatrix::from_i64(&[&[sign]]); spec.b()]).unwrap();
        m = m.direct_sum(&extra).unwrap();
    }
    let p = random_unimodular(rng, m.dim(), 6);
    m.conjugate(&p).unwrap()
}

/// Mixed family used for the equivalence checks.
pub fn random_module(rng: &mut impl Rng, max_dim: usize) -> PiModule {
    match rng.gen_range(0..6) {
        0 => PiModule::trivial(random_spec(rng), rng.gen_range(1..=max_dim)),
        1 => diagonal_sign_module(rng, max_dim),
        2 if max_dim >= 3 => permutation_module(rng),
        3 => hidden_bad_module(rng, max_dim),
        4 => split_module(rng, max_dim),
        _ => unipotent_module(rng, max_dim),
    }
}

// ---------------------------------------------------------------------------
// Finite actions of free groups

/// A transitive action of `F_rank` on `k` points, as one permutation per
/// generator (`perm[g][i]` is the image of `i` under generator `g`).
pub fn random_transitive_action(rng: &mut impl Rng, rank: usize, k: usize) -> Vec<Vec<usize>> {
    loop {
        let perms: Vec<Vec<usize>> = (0..rank)
            .map(|_| {
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        if orbit_of_zero(&perms, k).len() == k {
            return perms;
        }
    }
}

pub fn act(perms: &[Vec<usize>], point: usize, l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    if l > 0 {
        perms[g][point]
    } else {
        perms[g].iter().position(|&x| x == point).unwrap()
    }
}

pub fn act_word(perms: &[Vec<usize>], point: usize, w: &Word) -> usize {
    w.letters().iter().fold(point, |p, &l| act(perms, p, l))
}

fn orbit_of_zero(perms: &[Vec<usize>], k: usize) -> Vec<usize> {
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut order = vec![0];
    let mut q = VecDeque::from([0]);
    while let Some(p) = q.pop_front() {
        for g in 1..=perms.len() as i32 {
            for l in [g, -g] {
                let x = act(perms, p, l);
                if !seen[x] {
                    seen[x] = true;
                    order.push(x);
                    q.push_back(x);
                }
            }
        }
    }
    order
}

/// Schreier generators of the stabiliser of `0`, from a breadth-first
/// spanning tree of the action graph.
pub fn schreier_generators(perms: &[Vec<usize>], k: usize) -> Vec<Word> {
    let rank = perms.len();
    let mut rep: Vec<Option<Word>> = vec![None; k];
    rep[0] = Some(Word::identity());
    let mut q = VecDeque::from([0]);
    while let Some(p) = q.pop_front() {
        for g in 1..=rank as i32 {
            for l in [g, -g] {
                let x = act(perms, p, l);
                if rep[x].is_none() {
                    rep[x] = Some(rep[p].as_ref().unwrap().mul(&Word::from_letters([l])));
                    q.push_back(x);
                }
            }
        }
    }
    let rep: Vec<Word> = rep.into_iter().map(Option::unwrap).collect();
    let mut gens = Vec::new();
    for (p, t) in rep.iter().enumerate() {
        for g in 0..rank {
            let x = perms[g][p];
            let s = t.mul(&Word::generator(g)).mul(&rep[x].inverse());
            if !s.is_empty() {
                gens.push(s);
            }
        }
    }
    gens
}

/// The action of `F_2` on `Z/k` with `a -> +alpha`, `b -> +beta`.
pub fn cyclic_action(k: usize, alpha: usize, beta: usize) -> Vec<Vec<usize>> {
    vec![
        (0..k).map(|i| (i + alpha) % k).collect(),
        (0..k).map(|i| (i + beta) % k).collect(),
    ]
}

/// `E - V + components` by union-find.
pub fn graph_betti(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = vertices;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    edges.len() + components - vertices
}
