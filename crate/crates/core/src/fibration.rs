//! Orbifold fundamental groups of fibrations over curves, finite generation
//! of the kernel, Euler characteristic checks and the end condition for open
//! surfaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{abelianization, surface_relator, AbelianInvariants, Presentation, Word};
use crate::stallings::{fold, index_and_rank};

/// Largest solution set an Euler check will enumerate.
pub const MAX_EULER_SOLUTIONS: usize = 100_000;

/// Base curve of genus (or type) `genus` with orbifold points of the given
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbifoldSpec {
    genus: usize,
    open: bool,
    mults: Vec<u64>,
}

impl OrbifoldSpec {
    pub fn new(genus: usize, open: bool, mults: Vec<u64>) -> Result<Self> {
        if mults.contains(&0) {
            return Err(Error::InvalidArgument("multiplicities must be at least 1".into()));
        }
        Ok(OrbifoldSpec { genus, open, mults })
    }

    pub fn compact(genus: usize, mults: Vec<u64>) -> Result<Self> {
        Self::new(genus, false, mults)
    }

    pub fn open(genus: usize, mults: Vec<u64>) -> Result<Self> {
        Self::new(genus, true, mults)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    /// Number of orbifold points.
    pub fn r(&self) -> usize {
        self.mults.len()
    }
}

impl fmt::Display for OrbifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.mults.iter().map(|m| m.to_string()).collect();
        write!(
            f,
            "{} g={} m=[{}]",
            if self.open { "open" } else { "compact" },
            self.genus,
            m.join(",")
        )
    }
}

/// Compact base: generators `a1, b1, ..., ag, bg, c1, ..., cr` with relators
/// `c1...cr [a1,b1]...[ag,bg]` (omitted when empty) and `ci^mi`.
/// Open base: free generators `x1, ..., xg, c1, ..., cr` and only `ci^mi`.
pub fn orbifold_presentation(spec: &OrbifoldSpec) -> Presentation {
    let handles = if spec.open { spec.genus } else { 2 * spec.genus };
    let gamma = |i: usize| Word::generator(handles + i);
    let mut relators = Vec::new();
    if !spec.open {
        let product = (0..spec.r())
            .fold(Word::identity(), |w, i| w.mul(&gamma(i)))
            .mul(&surface_relator(spec.genus, 0));
        if !product.is_empty() {
            relators.push(product);
        }
    }
    for (i, &m) in spec.mults.iter().enumerate() {
        relators.push(gamma(i).pow(m as i64));
    }
    Presentation::new(handles + spec.r(), relators).expect("relators are nonempty and in range")
}

/// Abelianization together with remarks about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldAbelianization {
    pub invariants: AbelianInvariants,
    pub notes: Vec<String>,
}

/// Note attached to compact bases with a single multiple point.
pub const SINGLE_POINT_NOTE: &str = "single orbifold point on a compact base of positive genus: \
c1 equals a product of commutators, so the Smith normal form gives Z^(2g) with no torsion; \
the group is not the free product of F_(2g-1) with a cyclic group of order m1";

pub fn orbifold_abelianization(spec: &OrbifoldSpec) -> OrbifoldAbelianization {
    let invariants = abelianization(&orbifold_presentation(spec));
    let mut notes = Vec::new();
    if !spec.open && spec.genus >= 1 && spec.r() == 1 && spec.mults[0] >= 2 {
        notes.push(SINGLE_POINT_NOTE.to_string());
    }
    OrbifoldAbelianization { invariants, notes }
}

/// Whether the kernel of `pi_1 -> pi_1^orb(base)` is finitely generated:
/// exactly when the base is rational or there are no multiple fibres.
pub fn kernel_finitely_generated(spec: &OrbifoldSpec) -> bool {
    spec.genus == 0 || spec.mults.iter().all(|&m| m == 1)
}

/// Outcome of an Euler characteristic check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerVerdict {
    pub compact: bool,
    pub e: i64,
    pub g: u64,
    pub r: u64,
    /// `4(g-1)(r-1)` for compact surfaces, `2(g-1)(r-1)` for open ones.
    pub expected: i128,
    pub matches: bool,
    /// Pairs `(s, mu)` with `s >= r` and `mu >= 0` compatible with `e`,
    /// sorted by `s` then `mu`.
    pub solutions: Vec<(u64, u64)>,
    /// The only solution is `(r, 0)`.
    pub forced: bool,
    pub note: Option<String>,
}

/// Compact case: `e = 4(g-1)(s-1) + mu`.
pub fn euler_check_compact(e: i64, g: u64, r: u64) -> Result<EulerVerdict> {
    euler_check(e, g, r, true)
}

/// Open case: `e >= 2(g-1)(s-1) + mu`.
pub fn euler_check_open(e: i64, g: u64, r: u64) -> Result<EulerVerdict> {
    euler_check(e, g, r, false)
}

fn euler_check(e: i64, g: u64, r: u64, compact: bool) -> Result<EulerVerdict> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("base genus must be at least 2, got {g}")));
    }
    let k = (if compact { 4 } else { 2 }) * (g as i128 - 1);
    let lhs = |s: u64| k * (s as i128 - 1);
    let expected = lhs(r);
    let e_wide = e as i128;
    let too_large = || {
        Error::TooLarge(format!(
            "more than {MAX_EULER_SOLUTIONS} Euler solutions for e = {e}"
        ))
    };

    let mut solutions = Vec::new();
    let mut s = r;
    while lhs(s) <= e_wide {
        let slack = e_wide - lhs(s);
        if compact {
            solutions.push((s, slack as u64));
        } else {
            if slack + 1 > (MAX_EULER_SOLUTIONS - solutions.len()) as i128 {
                return Err(too_large());
            }
            solutions.extend((0..=slack as u64).map(|mu| (s, mu)));
        }
        if solutions.len() > MAX_EULER_SOLUTIONS {
            return Err(too_large());
        }
        s += 1;
    }
    let forced = solutions == [(r, 0)];
    let note = compact.then(|| {
        "mu = 0 is the case where every singular fibre is a multiple of a smooth elliptic curve"
            .to_string()
    });
    Ok(EulerVerdict {
        compact,
        e,
        g,
        r,
        expected,
        matches: e_wide == expected,
        solutions,
        forced,
        note,
    })
}

/// Images in `F_g` of the fundamental group of one end, and of its simple
/// geometric generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndDescriptor {
    pub images: Vec<Word>,
    pub simple: Vec<Word>,
}

impl EndDescriptor {
    pub fn new(images: Vec<Word>, simple: Vec<Word>) -> Self {
        EndDescriptor { images, simple }
    }

    /// Parses `w1,w2;simple=w3,w4`; the `simple=` part is optional and `1`
    /// denotes the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let (imgs, simple) = match s.split_once(';') {
            Some((i, rest)) => {
                let rest = rest.trim();
                let list = rest.strip_prefix("simple=").ok_or_else(|| {
                    Error::parse(0, format!("expected `simple=` after `;`, found `{rest}`"))
                })?;
                (i, Some(list))
            }
            None => (s, None),
        };
        let words = |list: &str| -> Result<Vec<Word>> {
            list.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(Word::parse)
                .collect()
        };
        Ok(EndDescriptor {
            images: words(imgs)?,
            simple: simple.map(words).transpose()?.unwrap_or_default(),
        })
    }
}

impl fmt::Display for EndDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ws: &[Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.images))?;
        if !self.simple.is_empty() {
            write!(f, ";simple={}", join(&self.simple))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndVerdict {
    /// Rank of the image subgroup.
    pub rank: usize,
    pub cyclic: bool,
    /// One flag per simple generator: its image is not the identity.
    pub simple_nontrivial: Vec<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndsVerdict {
    pub ends: Vec<EndVerdict>,
    pub pass: bool,
}

/// Each end passes when its image in `F_rank` is cyclic and every simple
/// generator has nontrivial image.
pub fn ends_condition(rank: usize, ends: &[EndDescriptor]) -> Result<EndsVerdict> {
    let mut out = Vec::with_capacity(ends.len());
    for end in ends {
        let gens: Vec<Word> = end.images.iter().chain(&end.simple).cloned().collect();
        let (_, sub_rank) = index_and_rank(&fold(&gens, rank)?);
        let simple_nontrivial: Vec<bool> = end.simple.iter().map(|w| !w.is_empty()).collect();
        let cyclic = sub_rank <= 1;
        out.push(EndVerdict {
            rank: sub_rank,
            cyclic,
            pass: cyclic && simple_nontrivial.iter().all(|&b| b),
            simple_nontrivial,
        });
    }
    let pass = out.iter().all(|e| e.pass);
    Ok(EndsVerdict { ends: out, pass })
}
