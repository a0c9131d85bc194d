use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::FinGenAbelian;
use crate::error::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(u64),
    Infinite,
}

/// Exponent `e` of a `p`-group, meaning every element has order dividing
/// `p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u32),
    Unbounded,
}

/// The `p`-primary part of the torsion subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeComponent {
    pub prime: u64,
    pub rank: Rank,
    pub exponent: Exponent,
}

/// Isomorphism-invariant data of an abelian group `A` that Malcev's
/// linearity criteria depend on: the torsion-free rank and, for each prime,
/// the rank and exponent of the `p`-primary part of the torsion subgroup.
/// Primes not listed have trivial `p`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionDescriptor {
    torsion_free_rank: Rank,
    primes: Vec<PrimeComponent>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl TorsionDescriptor {
    /// Sorts the components by prime and drops trivial ones. Fails on a
    /// repeated or non-prime entry, or on a component whose rank and
    /// exponent disagree about triviality.
    pub fn new(torsion_free_rank: Rank, mut primes: Vec<PrimeComponent>) -> Result<Self, String> {
        primes.sort_by_key(|c| c.prime);
        for w in primes.windows(2) {
            if w[0].prime == w[1].prime {
                return Err(format!("prime {} listed twice", w[0].prime));
            }
        }
        for c in &primes {
            if !is_prime(c.prime) {
                return Err(format!("{} is not a prime", c.prime));
            }
            let trivial_rank = c.rank == Rank::Finite(0);
            let trivial_exp = c.exponent == Exponent::Finite(0);
            if trivial_rank != trivial_exp {
                return Err(format!("prime {}: rank and exponent disagree about triviality", c.prime));
            }
        }
        primes.retain(|c| c.rank != Rank::Finite(0));
        Ok(Self {
            torsion_free_rank,
            primes,
        })
    }

    /// Torsion-free descriptor of the given rank.
    pub fn torsion_free(rank: Rank) -> Self {
        Self {
            torsion_free_rank: rank,
            primes: Vec::new(),
        }
    }

    /// Descriptor of a finitely generated abelian group: the `p`-rank counts
    /// invariant factors divisible by `p`, and the exponent is the largest
    /// power of `p` dividing one.
    pub fn from_abelian(a: &FinGenAbelian) -> Self {
        let mut primes: Vec<PrimeComponent> = Vec::new();
        let factors = a.invariant_factors();
        let mut all_primes: Vec<BigInt> = Vec::new();
        for d in factors {
            let mut m = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= m {
                if m.is_multiple_of(&p) {
                    all_primes.push(p.clone());
                    while m.is_multiple_of(&p) {
                        m /= &p;
                    }
                }
                p += 1;
            }
            if !m.is_one() {
                all_primes.push(m);
            }
        }
        all_primes.sort();
        all_primes.dedup();
        for p in all_primes {
            let mut rank = 0;
            let mut exp = 0;
            for d in factors {
                let mut m = d.clone();
                let mut e = 0;
                while !m.is_zero() && m.is_multiple_of(&p) {
                    m /= &p;
                    e += 1;
                }
                if e > 0 {
                    rank += 1;
                    exp = exp.max(e);
                }
            }
            primes.push(PrimeComponent {
                prime: p.to_u64().expect("prime factor fits in u64"),
                rank: Rank::Finite(rank),
                exponent: Exponent::Finite(exp),
            });
        }
        Self {
            torsion_free_rank: Rank::Finite(a.free_rank() as u64),
            primes,
        }
    }

    pub fn torsion_free_rank(&self) -> Rank {
        self.torsion_free_rank
    }

    /// Non-trivial primary components, sorted by prime.
    pub fn primes(&self) -> &[PrimeComponent] {
        &self.primes
    }

    pub fn component(&self, p: u64) -> Option<&PrimeComponent> {
        self.primes.iter().find(|c| c.prime == p)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.primes.is_empty()
    }
}

/// `{+-1} x prod_{p odd} (Z/p)^*`: every primary component has infinite
/// rank and unbounded exponent. The 2-part is the one the argument needs;
/// a few odd primes are listed to show the pattern.
pub fn k2_q_type() -> TorsionDescriptor {
    let wild = |prime| PrimeComponent {
        prime,
        rank: Rank::Infinite,
        exponent: Exponent::Unbounded,
    };
    TorsionDescriptor::new(Rank::Finite(0), vec![wild(2), wild(3), wild(5), wild(7)]).expect("valid descriptor")
}

/// `(+)_{i >= 1} Z_2 (+) Z`, the abelianization of the first Button group.
pub fn button_g2_ab() -> TorsionDescriptor {
    elementary_plus_z(&[2], 1)
}

/// `(+)_{i >= 1} Z_3 (+) Z`, the abelianization of the second Button group.
pub fn button_g3_ab() -> TorsionDescriptor {
    elementary_plus_z(&[3], 1)
}

/// `(+)_{i >= 1} (Z_2 (+) Z_3) (+) Z^2`.
pub fn button_product_ab() -> TorsionDescriptor {
    elementary_plus_z(&[2, 3], 2)
}

fn elementary_plus_z(primes: &[u64], free: u64) -> TorsionDescriptor {
    let comps = primes
        .iter()
        .map(|&prime| PrimeComponent {
            prime,
            rank: Rank::Infinite,
            exponent: Exponent::Finite(1),
        })
        .collect();
    TorsionDescriptor::new(Rank::Finite(free), comps).expect("valid descriptor")
}

/// `(+)_{i >= 2} Z_i`, the abelianization of the free product of all finite
/// cyclic groups. Every `p`-part contains `Z_{p^k}` for all `k`, so it has
/// infinite rank and unbounded exponent. Only the primes below 12 are listed.
pub fn bryukhanov_ab() -> TorsionDescriptor {
    let comps = [2, 3, 5, 7, 11]
        .iter()
        .map(|&prime| PrimeComponent {
            prime,
            rank: Rank::Infinite,
            exponent: Exponent::Unbounded,
        })
        .collect();
    TorsionDescriptor::new(Rank::Finite(0), comps).expect("valid descriptor")
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl fmt::Display for TorsionDescriptor {
    /// The text format accepted by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "torsion_free_rank = {}", self.torsion_free_rank)?;
        for c in &self.primes {
            writeln!(f, "prime = {}, rank = {}, exponent = {}", c.prime, c.rank, c.exponent)?;
        }
        Ok(())
    }
}

impl FromStr for TorsionDescriptor {
    type Err = ParseError;

    /// Line-oriented `key = value` (or `key: value`) pairs; several pairs
    /// may share a line separated by `,` or `;`, and `#` starts a comment.
    /// Keys: `torsion_free_rank`, then per component `prime`, `rank` and
    /// `exponent`. A `prime` entry opens a new component. Rank accepts `inf`
    /// or `infinite`; exponent accepts `unbounded` or `inf`. A missing
    /// `torsion_free_rank` means 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        struct Partial {
            prime: u64,
            at: usize,
            rank: Option<Rank>,
            exponent: Option<Exponent>,
        }
        let mut tf: Option<Rank> = None;
        let mut comps: Vec<Partial> = Vec::new();
        let mut offset = 0;
        for line in s.split_inclusive('\n') {
            let content = line.split('#').next().unwrap_or("");
            let mut start = offset;
            for field in content.split([',', ';']) {
                let field_start = start;
                start += field.len() + 1;
                let trimmed = field.trim();
                if trimmed.is_empty() {
                    continue;
                }
                let at = field_start + (field.len() - field.trim_start().len());
                let (key, value) = trimmed
                    .split_once(['=', ':'])
                    .ok_or_else(|| ParseError::new(at, format!("expected key = value, found {trimmed:?}")))?;
                let (key, value) = (key.trim(), value.trim());
                let value_at = at + trimmed.find(value).unwrap_or(0);
                match key {
                    "torsion_free_rank" => {
                        if tf.is_some() {
                            return Err(ParseError::new(at, "torsion_free_rank given twice"));
                        }
                        tf = Some(parse_rank(value, value_at)?);
                    }
                    "prime" => {
                        let prime = value
                            .parse::<u64>()
                            .map_err(|_| ParseError::new(value_at, format!("invalid prime {value:?}")))?;
                        if !is_prime(prime) {
                            return Err(ParseError::new(value_at, format!("{prime} is not a prime")));
                        }
                        if comps.iter().any(|c| c.prime == prime) {
                            return Err(ParseError::new(value_at, format!("prime {prime} listed twice")));
                        }
                        comps.push(Partial {
                            prime,
                            at,
                            rank: None,
                            exponent: None,
                        });
                    }
                    "rank" | "exponent" => {
                        let current = comps
                            .last_mut()
                            .ok_or_else(|| ParseError::new(at, format!("{key} before any prime")))?;
                        if key == "rank" {
                            if current.rank.is_some() {
                                return Err(ParseError::new(at, "rank given twice for one prime"));
                            }
                            current.rank = Some(parse_rank(value, value_at)?);
                        } else {
                            if current.exponent.is_some() {
                                return Err(ParseError::new(at, "exponent given twice for one prime"));
                            }
                            current.exponent = Some(parse_exponent(value, value_at)?);
                        }
                    }
                    other => return Err(ParseError::new(at, format!("unknown key {other:?}"))),
                }
            }
            offset += line.len();
        }
        let mut primes = Vec::new();
        for c in comps {
            let rank = c
                .rank
                .ok_or_else(|| ParseError::new(c.at, format!("prime {} has no rank", c.prime)))?;
            let exponent = c
                .exponent
                .ok_or_else(|| ParseError::new(c.at, format!("prime {} has no exponent", c.prime)))?;
            if (rank == Rank::Finite(0)) != (exponent == Exponent::Finite(0)) {
                return Err(ParseError::new(
                    c.at,
                    format!("prime {}: rank and exponent disagree about triviality", c.prime),
                ));
            }
            primes.push(PrimeComponent {
                prime: c.prime,
                rank,
                exponent,
            });
        }
        TorsionDescriptor::new(tf.unwrap_or(Rank::Finite(0)), primes).map_err(|m| ParseError::new(0, m))
    }
}

fn parse_rank(v: &str, at: usize) -> Result<Rank, ParseError> {
    match v.to_ascii_lowercase().as_str() {
        "inf" | "infinite" => Ok(Rank::Infinite),
        _ => v
            .parse()
            .map(Rank::Finite)
            .map_err(|_| ParseError::new(at, format!("invalid rank {v:?}"))),
    }
}

fn parse_exponent(v: &str, at: usize) -> Result<Exponent, ParseError> {
    match v.to_ascii_lowercase().as_str() {
        "unbounded" | "inf" | "infinite" => Ok(Exponent::Unbounded),
        _ => v
            .parse()
            .map(Exponent::Finite)
            .map_err(|_| ParseError::new(at, format!("invalid exponent {v:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "# G2^ab\ntorsion_free_rank = 1\nprime = 2\nrank = inf\nexponent: 1\n";
        let d: TorsionDescriptor = text.parse().unwrap();
        assert_eq!(d, button_g2_ab());
        assert_eq!(d.to_string().parse::<TorsionDescriptor>().unwrap(), d);
        let k2 = k2_q_type();
        assert_eq!(k2.to_string().parse::<TorsionDescriptor>().unwrap(), k2);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "torsion_free_rank = 0\nprime = 4, rank = 1, exponent = 1".parse::<TorsionDescriptor>().unwrap_err();
        assert_eq!(err.position, 30);
        assert!("rank = 2".parse::<TorsionDescriptor>().is_err());
        assert!("prime = 3, rank = 2".parse::<TorsionDescriptor>().is_err());
        assert!("prime = 3, rank = 0, exponent = 2".parse::<TorsionDescriptor>().is_err());
        assert!("prime = 3, rank = 1, exponent = 1\nprime = 3, rank = 1, exponent = 1"
            .parse::<TorsionDescriptor>()
            .is_err());
        assert!("colour = red".parse::<TorsionDescriptor>().is_err());
    }

    #[test]
    fn from_finitely_generated_group() {
        let a: FinGenAbelian = "Z x Z_12 x Z_18".parse().unwrap();
        let d = TorsionDescriptor::from_abelian(&a);
        assert_eq!(d.torsion_free_rank(), Rank::Finite(1));
        // Z_12 x Z_18 = Z_6 x Z_36: 2-part Z_2 x Z_4, 3-part Z_3 x Z_9
        assert_eq!(
            d.primes(),
            &[
                PrimeComponent {
                    prime: 2,
                    rank: Rank::Finite(2),
                    exponent: Exponent::Finite(2)
                },
                PrimeComponent {
                    prime: 3,
                    rank: Rank::Finite(2),
                    exponent: Exponent::Finite(2)
                },
            ]
        );
    }
}
