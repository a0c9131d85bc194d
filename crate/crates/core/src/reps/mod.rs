//! Exact polynomial matrices and explicit faithful representations: Sanov's
//! free subgroup of `SL_2(Z)`, scalar Laurent blocks for free abelian
//! factors, and unitriangular representations of free nilpotent groups.
//!
//! Algebraically independent transcendental numbers are modeled as formal
//! indeterminates, so independence holds by construction and equality is
//! decidable.

mod matrix;
mod poly;

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fp::{Letter, Word};

pub use matrix::{MatrixError, PolyMatrix};
pub use poly::{Coefficients, Monomial, MultiPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("generator {name}: {source}")]
    Matrix { name: String, source: MatrixError },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// A set of named generator matrices over one ring, with a description of
/// the abstract group they represent.
#[derive(Clone, Debug)]
pub struct RepPackage {
    pub construction: &'static str,
    pub parameters: Vec<(&'static str, usize)>,
    /// The abstract group whose faithful image the generators span.
    pub target: String,
    pub ring: Arc<Ring>,
    pub dim: usize,
    pub generators: Vec<(String, PolyMatrix)>,
    pub notes: Vec<String>,
}

impl RepPackage {
    pub fn generator(&self, name: &str) -> Option<&PolyMatrix> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn matrices(&self) -> Vec<&PolyMatrix> {
        self.generators.iter().map(|(_, m)| m).collect()
    }

    /// Inverts every generator, checking the product with the identity.
    pub fn inverses(&self) -> Result<Vec<PolyMatrix>, RepError> {
        self.generators
            .iter()
            .map(|(name, m)| {
                m.inv_special().map_err(|source| RepError::Matrix {
                    name: name.clone(),
                    source,
                })
            })
            .collect()
    }

    /// Image of a word in the generators.
    pub fn evaluate(&self, w: &Word) -> Result<PolyMatrix, RepError> {
        let inverses = self.inverses()?;
        Ok(w.letters().iter().fold(PolyMatrix::identity(&self.ring, self.dim), |acc, l| {
            acc.mul(if l.inverse {
                &inverses[l.gen]
            } else {
                &self.generators[l.gen].1
            })
        }))
    }

    /// Stable text rendering: metadata, the ring, then each generator row by
    /// row with polynomials in descending graded-lex order.
    pub fn export(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "construction: {}", self.construction);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "parameter {k}: {v}");
        }
        let _ = writeln!(s, "target: {}", self.target);
        let _ = writeln!(s, "dimension: {}", self.dim);
        let _ = writeln!(
            s,
            "coefficients: {}",
            match self.ring.coefficients() {
                Coefficients::Integer => "integer",
                Coefficients::Rational => "rational",
            }
        );
        for (i, name) in self.ring.names().iter().enumerate() {
            let kind = if self.ring.is_laurent(i) { "laurent" } else { "polynomial" };
            let _ = writeln!(s, "variable {name}: {kind}");
        }
        for note in &self.notes {
            let _ = writeln!(s, "note: {note}");
        }
        for (name, m) in &self.generators {
            let _ = writeln!(s, "generator {name}:");
            for line in m.to_string().lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        s
    }
}

/// `a = [[1,2],[0,1]]`, `b = [[1,0],[2,1]]`: a free basis of a free subgroup
/// of `SL_2(Z)`.
pub fn sanov_f2() -> RepPackage {
    let ring = Ring::constants(Coefficients::Integer);
    let a = PolyMatrix::from_integers(&ring, &[&[1, 2], &[0, 1]]);
    let b = PolyMatrix::from_integers(&ring, &[&[1, 0], &[2, 1]]);
    RepPackage {
        construction: "sanov_f2",
        parameters: Vec::new(),
        target: "F_2".into(),
        ring,
        dim: 2,
        generators: vec![("a".into(), a), ("b".into(), b)],
        notes: Vec::new(),
    }
}

/// `a^-i b a^i` for `i = 0..n` under the Sanov matrices. These freely
/// generate a free subgroup of rank `n` (a subset of a free basis of the
/// normal closure of `b`).
pub fn free_embedding(n: usize) -> Result<RepPackage, RepError> {
    if n == 0 {
        return Err(RepError::Parameter("free_embedding needs n >= 1".into()));
    }
    let sanov = sanov_f2();
    let ring = Arc::clone(&sanov.ring);
    let a = sanov.generators[0].1.clone();
    let a_inv = a.inv_special().expect("Sanov matrices are unimodular");
    let mut conj = sanov.generators[1].1.clone();
    let mut generators = Vec::with_capacity(n);
    for i in 0..n {
        generators.push((format!("b{i}"), conj.clone()));
        conj = a_inv.mul(&conj).mul(&a);
    }
    Ok(RepPackage {
        construction: "free_embedding",
        parameters: vec![("n", n)],
        target: format!("F_{n}"),
        ring,
        dim: 2,
        generators,
        notes: vec!["generator b<i> is a^-i b a^i".into()],
    })
}

/// Lifts a constant integer matrix into another ring.
fn lift(m: &PolyMatrix, ring: &Arc<Ring>) -> PolyMatrix {
    let values = m.constant_entries().expect("constant matrix");
    PolyMatrix::new(
        ring,
        m.dim(),
        values.into_iter().map(|c| MultiPoly::constant(ring, c)).collect(),
    )
}

/// `Z^m x F_k` in `GL_2(Z[t_1^(+-1), ..., t_m^(+-1)])`: scalar matrices
/// `diag(t_j, t_j)` for the free abelian factor, and the free embedding for
/// the free factor.
pub fn rep_z_m_times_f_k(m: usize, k: usize) -> RepPackage {
    let ring = Ring::new((1..=m).map(|j| (format!("t{j}"), true)).collect(), Coefficients::Integer);
    let mut generators: Vec<(String, PolyMatrix)> = (0..m)
        .map(|j| (format!("s{}", j + 1), PolyMatrix::scalar(&ring, 2, MultiPoly::var(&ring, j))))
        .collect();
    if k > 0 {
        let free = free_embedding(k).expect("k >= 1");
        generators.extend(free.generators.iter().map(|(n, g)| (n.clone(), lift(g, &ring))));
    }
    let target = match (m, k) {
        (0, 0) => "1".to_string(),
        (0, k) => format!("F_{k}"),
        (m, 0) => format!("Z^{m}"),
        (m, k) => format!("Z^{m} x F_{k}"),
    };
    RepPackage {
        construction: "z_m_times_f_k",
        parameters: vec![("m", m), ("k", k)],
        target,
        ring,
        dim: 2,
        generators,
        notes: Vec::new(),
    }
}

/// `F_n (x) F_n = Z^(n(n+1)/2) x F_n'`. The derived subgroup has infinite
/// rank for `n >= 2`; only its first `k` free generators are emitted.
pub fn free_tensor_square_rep(n: usize, k: usize) -> RepPackage {
    let m = n * (n + 1) / 2;
    let mut pkg = rep_z_m_times_f_k(m, k);
    pkg.construction = "free_tensor_square";
    pkg.parameters = vec![("n", n), ("m", m), ("k", k)];
    pkg.target = format!("Z^{m} x (F_{n})'");
    pkg.notes.push(format!("free part truncated to {k} free generators of (F_{n})'"));
    pkg
}

/// `B_3 (x) B_3 = Z x F_2`.
pub fn braid_tensor_square_rep() -> RepPackage {
    let mut pkg = rep_z_m_times_f_k(1, 2);
    pkg.construction = "braid_b3_tensor_square";
    pkg.target = "B_3 (x) B_3 = Z x F_2".into();
    pkg
}

/// The figure-eight knot group `G` has `G^ab = Z` and free `G'` of rank 2, so
/// the emitted package is the abstract `Z x F_2` one, identical to the
/// braid case. No explicit free basis of `G'` is constructed.
pub fn figure_eight_tensor_square_rep() -> RepPackage {
    let mut pkg = rep_z_m_times_f_k(1, 2);
    pkg.construction = "figure_eight_tensor_square";
    pkg.target = "Z x F_2 (abstract package, same matrices as the B_3 case)".into();
    pkg.notes.push("no explicit basis of the commutator subgroup is constructed".into());
    pkg
}

fn unitriangular_vars(n: usize, c: usize) -> Vec<(String, bool)> {
    (1..=n)
        .flat_map(|i| (1..=c + 1).map(move |j| (format!("t{i}_{j}"), false)))
        .collect()
}

fn unitriangular_generators(ring: &Arc<Ring>, n: usize, c: usize, var_offset: usize) -> Vec<(String, PolyMatrix)> {
    (0..n)
        .map(|i| {
            let mut x = PolyMatrix::identity(ring, c + 2);
            for j in 0..=c {
                x.set(j, j + 1, MultiPoly::var(ring, var_offset + i * (c + 1) + j));
            }
            (format!("X{}", i + 1), x)
        })
        .collect()
}

/// `n` generic unitriangular `(c+2) x (c+2)` matrices: generator `i` has
/// `t_{i,j}` at `(j, j+1)` for `j = 1..=c+1`. They generate a free nilpotent
/// group of rank `n` and class `c+1`.
pub fn unitriangular_nilpotent_rep(n: usize, c: usize) -> Result<RepPackage, RepError> {
    if n == 0 || c == 0 {
        return Err(RepError::Parameter("unitriangular representation needs n >= 1 and c >= 1".into()));
    }
    let ring = Ring::new(unitriangular_vars(n, c), Coefficients::Integer);
    let generators = unitriangular_generators(&ring, n, c, 0);
    Ok(RepPackage {
        construction: "unitriangular_nilpotent",
        parameters: vec![("n", n), ("c", c)],
        target: format!("N_{{{n},{}}}", c + 1),
        ring,
        dim: c + 2,
        generators,
        notes: vec![format!("free nilpotent of rank {n} and class {}", c + 1)],
    })
}

/// `N_{n,c} (x) N_{n,c} = Z^m x (N_{n,c+1})'` with `m = n(n+1)/2`, where
/// `N_{n,c}` is free nilpotent of rank `n` and class `c`. Scalar generators
/// `tau_k E` represent `Z^m`; the unitriangular generators span the ambient
/// `N_{n,c+1}` whose derived subgroup is the second factor.
pub fn tensor_square_rep_nilpotent(n: usize, c: usize) -> Result<RepPackage, RepError> {
    if n == 0 || c == 0 {
        return Err(RepError::Parameter("nilpotent tensor square needs n >= 1 and c >= 1".into()));
    }
    let m = n * (n + 1) / 2;
    let mut vars: Vec<(String, bool)> = (1..=m).map(|k| (format!("tau{k}"), true)).collect();
    vars.extend(unitriangular_vars(n, c));
    let ring = Ring::new(vars, Coefficients::Integer);
    let mut generators: Vec<(String, PolyMatrix)> = (0..m)
        .map(|k| (format!("s{}", k + 1), PolyMatrix::scalar(&ring, c + 2, MultiPoly::var(&ring, k))))
        .collect();
    generators.extend(unitriangular_generators(&ring, n, c, m));
    let derived = derived_hirsch_length(n, c + 1);
    Ok(RepPackage {
        construction: "nilpotent_tensor_square",
        parameters: vec![("n", n), ("c", c), ("m", m)],
        target: format!("Z^{m} x (N_{{{n},{}}})' inside Z^{m} x N_{{{n},{}}}", c + 1, c + 1),
        ring,
        dim: c + 2,
        generators,
        notes: vec![
            format!("Hirsch length of (N_{{{n},{}}})' is {derived}", c + 1),
            format!("Hirsch length of the tensor square is {}", m as u64 + derived),
        ],
    })
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of the degree-`k` part of the free Lie ring on `n` generators
/// (Witt's necklace formula).
pub fn free_lie_rank(n: usize, k: usize) -> u64 {
    let n = BigInt::from(n);
    let total: BigInt = (1..=k as u64)
        .filter(|d| k as u64 % d == 0)
        .map(|d| BigInt::from(mobius(d)) * n.pow((k as u64 / d) as u32))
        .sum();
    u64::try_from(total / BigInt::from(k)).expect("rank fits in u64")
}

/// Hirsch length of the derived subgroup of the free nilpotent group of rank
/// `n` and class `class`.
pub fn derived_hirsch_length(n: usize, class: usize) -> u64 {
    (2..=class).map(|k| free_lie_rank(n, k)).sum()
}

/// 2x2 integer matrix used for fast exact sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat2([BigInt; 4]);

impl Mat2 {
    fn identity() -> Self {
        Self([BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()])
    }

    fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Self([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    fn from_poly(m: &PolyMatrix) -> Option<Self> {
        if m.dim() != 2 {
            return None;
        }
        let v = m.constant_entries()?;
        if !v.iter().all(|c| c.is_integer()) {
            return None;
        }
        Some(Self([
            v[0].to_integer(),
            v[1].to_integer(),
            v[2].to_integer(),
            v[3].to_integer(),
        ]))
    }
}

/// Random nonempty freely reduced words with lengths uniform in
/// `1..=max_len`.
pub fn random_reduced_words(num_gens: usize, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    assert!(num_gens > 0 && max_len > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let mut letters: Vec<Letter> = Vec::with_capacity(len);
            while letters.len() < len {
                let l = Letter::from_column(rng.gen_range(0..2 * num_gens));
                if letters.last() != Some(&l.inv()) {
                    letters.push(l);
                }
            }
            Word::new(letters)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub words: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Sampled words whose image is the identity.
    pub identity_hits: Vec<Word>,
}

/// Evaluates seeded random reduced words and records those mapping to the
/// identity. Constant 2x2 integer packages use a direct big-integer path.
pub fn sample_nontriviality(
    pkg: &RepPackage,
    count: usize,
    max_len: usize,
    seed: u64,
) -> Result<SampleReport, RepError> {
    let words = random_reduced_words(pkg.generators.len(), count, max_len, seed);
    let fast: Option<Vec<Mat2>> = pkg.generators.iter().map(|(_, m)| Mat2::from_poly(m)).collect();
    let mut identity_hits = Vec::new();
    if let Some(gens) = fast {
        let inverses: Vec<Mat2> = pkg
            .inverses()?
            .iter()
            .map(|m| Mat2::from_poly(m).expect("inverse of a unimodular integer matrix"))
            .collect();
        for w in &words {
            let img = w.letters().iter().fold(Mat2::identity(), |acc, l| {
                acc.mul(if l.inverse { &inverses[l.gen] } else { &gens[l.gen] })
            });
            if img == Mat2::identity() {
                identity_hits.push(w.clone());
            }
        }
    } else {
        let inverses = pkg.inverses()?;
        for w in &words {
            let img = w.letters().iter().fold(PolyMatrix::identity(&pkg.ring, pkg.dim), |acc, l| {
                acc.mul(if l.inverse {
                    &inverses[l.gen]
                } else {
                    &pkg.generators[l.gen].1
                })
            });
            if img.is_identity() {
                identity_hits.push(w.clone());
            }
        }
    }
    Ok(SampleReport {
        words: words.len(),
        max_len,
        seed,
        identity_hits,
    })
}

/// Left-normed commutators of one weight over all generator sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReport {
    pub weight: usize,
    pub checked: usize,
    /// Generator index sequences whose commutator is not the identity.
    pub nonvanishing: Vec<Vec<usize>>,
}

impl CommutatorReport {
    pub fn all_vanish(&self) -> bool {
        self.nonvanishing.is_empty()
    }
}

/// Computes every left-normed commutator `[x_{i1}, ..., x_{iw}]` over the
/// given generators (indices into `gens`).
pub fn left_normed_commutators(gens: &[&PolyMatrix], weight: usize) -> Result<CommutatorReport, RepError> {
    assert!(weight >= 1 && !gens.is_empty());
    let k = gens.len();
    let total = k.pow(weight as u32);
    let mut nonvanishing = Vec::new();
    for code in 0..total {
        let mut seq = Vec::with_capacity(weight);
        let mut c = code;
        for _ in 0..weight {
            seq.push(c % k);
            c /= k;
        }
        seq.reverse();
        let mats: Vec<&PolyMatrix> = seq.iter().map(|&i| gens[i]).collect();
        let comm = PolyMatrix::left_normed_commutator(&mats).map_err(|source| RepError::Matrix {
            name: format!("{seq:?}"),
            source,
        })?;
        if !comm.is_identity() {
            nonvanishing.push(seq);
        }
    }
    Ok(CommutatorReport {
        weight,
        checked: total,
        nonvanishing,
    })
}
