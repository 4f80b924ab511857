//! Deciding whether two pointed groups are related by a group automorphism.
//!
//! For a finite abelian `p`-group, two elements lie in the same
//! automorphism orbit exactly when their height sequences
//! `h(x), h(px), h(p²x), …` agree. A finite group splits into its primary
//! parts and so does its automorphism group, so the test runs prime by prime.
//!
//! With a free summand `T ⊕ Zʳ`, every automorphism has the block shape
//! `(t, z) ↦ (αt + βz, γz)`. The orbit of `(t, z)` is therefore fixed by the
//! content `c = gcd(z)` and the orbit of `t` in `T` modulo `cT`; the latter is
//! settled by enumerating `cT` one primary part at a time.

use serde::{Deserialize, Serialize};

use crate::exactla::{group_iso, PointedGroup};
use crate::scalar::IntScalar;

/// Three-valued answer for decisions that may hit a resource bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    /// Three-valued conjunction.
    pub fn and(self, other: Answer) -> Answer {
        match (self, other) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Yes, Answer::Yes) => Answer::Yes,
            _ => Answer::Unknown,
        }
    }
}

/// Resource bounds for [`pointed_equivalent_with`].
#[derive(Clone, Debug)]
pub struct PointedLimits {
    /// Largest trial divisor used to factor the top invariant factor.
    pub max_trial_divisor: u64,
    /// Largest coset enumeration per primary component (free-rank case).
    pub max_enumeration: usize,
}

impl Default for PointedLimits {
    fn default() -> Self {
        PointedLimits { max_trial_divisor: 10_000_000, max_enumeration: 100_000 }
    }
}

pub fn pointed_equivalent<T: IntScalar>(p: &PointedGroup<T>, q: &PointedGroup<T>) -> Answer {
    pointed_equivalent_with(p, q, &PointedLimits::default())
}

pub fn pointed_equivalent_with<T: IntScalar>(
    p: &PointedGroup<T>,
    q: &PointedGroup<T>,
    limits: &PointedLimits,
) -> Answer {
    if !group_iso(p.group(), q.group()) {
        return Answer::No;
    }
    let torsion = p.group().torsion();
    let k = torsion.len();
    let (tp, zp) = p.point().split_at(k);
    let (tq, zq) = q.point().split_at(k);
    let content = |z: &[T]| z.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    let c = content(zp);
    if c != content(zq) {
        return Answer::No;
    }
    let Some(top) = torsion.last() else {
        // torsion-free: content alone is the orbit invariant
        return Answer::Yes;
    };
    let Some(primes) = prime_factors(top, limits.max_trial_divisor) else {
        return Answer::Unknown;
    };

    let mut verdict = Answer::Yes;
    for prime in &primes {
        let part = PrimaryPart::new(prime, torsion);
        let xp = part.project(tp);
        let xq = part.project(tq);
        let local = if c.is_zero() {
            Answer::from_bool(part.height_sequence(&xp) == part.height_sequence(&xq))
        } else {
            part.equivalent_mod_multiple(&xp, &xq, valuation(&c, prime), limits.max_enumeration)
        };
        verdict = verdict.and(local);
        if verdict == Answer::No {
            break;
        }
    }
    verdict
}

/// Distinct primes dividing `n > 0`, or `None` if trial division up to
/// `bound` cannot certify the factorization.
fn prime_factors<T: IntScalar>(n: &T, bound: u64) -> Option<Vec<T>> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut d = T::one() + T::one();
    let mut steps: u64 = 2;
    while d.clone() * d.clone() <= n {
        if steps > bound {
            return None;
        }
        if n.is_multiple_of(&d) {
            primes.push(d.clone());
            while n.is_multiple_of(&d) {
                n = n / d.clone();
            }
        }
        d = d + T::one();
        steps += 1;
    }
    if n > T::one() {
        primes.push(n);
    }
    Some(primes)
}

fn valuation<T: IntScalar>(n: &T, p: &T) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n = n / p.clone();
        v += 1;
    }
    v
}

/// The `p`-primary summand `⊕ Z_{p^{eᵢ}}` of a torsion group.
struct PrimaryPart<T> {
    prime: T,
    /// (coordinate index in the full torsion vector, p^{eᵢ}, eᵢ)
    factors: Vec<(usize, T, u32)>,
}

impl<T: IntScalar> PrimaryPart<T> {
    fn new(prime: &T, torsion: &[T]) -> Self {
        let factors = torsion
            .iter()
            .enumerate()
            .filter_map(|(i, d)| {
                let e = valuation(d, prime);
                (e > 0).then(|| (i, num_traits::pow(prime.clone(), e as usize), e))
            })
            .collect();
        PrimaryPart { prime: prime.clone(), factors }
    }

    fn project(&self, x: &[T]) -> Vec<T> {
        self.factors.iter().map(|(i, m, _)| x[*i].mod_floor(m)).collect()
    }

    fn height(&self, y: &[T]) -> Option<u32> {
        self.factors.iter().zip(y).filter(|(_, c)| !c.is_zero()).map(|((_, _, _), c)| valuation(c, &self.prime)).min()
    }

    fn height_sequence(&self, x: &[T]) -> Vec<u32> {
        let mut seq = Vec::new();
        let mut y = x.to_vec();
        while let Some(h) = self.height(&y) {
            seq.push(h);
            y = self
                .factors
                .iter()
                .zip(&y)
                .map(|((_, m, _), c)| (c.clone() * self.prime.clone()).mod_floor(m))
                .collect();
        }
        seq
    }

    /// Is `xq ∈ Aut·xp + p^h·(this part)`?
    fn equivalent_mod_multiple(&self, xp: &[T], xq: &[T], h: u32, cap: usize) -> Answer {
        if h == 0 {
            return Answer::Yes;
        }
        let target = self.height_sequence(xp);
        let scale = num_traits::pow(self.prime.clone(), h as usize);
        // p^h Z_{p^e} is cyclic of order p^{e-h}, generated by p^h.
        let mut radices = Vec::with_capacity(self.factors.len());
        let mut total: usize = 1;
        for (_, _, e) in &self.factors {
            let Some(size) = e.checked_sub(h).and_then(|k| self.prime.to_usize().and_then(|p| p.checked_pow(k))) else {
                radices.push(1usize);
                continue;
            };
            total = match total.checked_mul(size) {
                Some(t) if t <= cap => t,
                _ => return Answer::Unknown,
            };
            radices.push(size);
        }
        let mut digits = vec![0usize; radices.len()];
        for _ in 0..total {
            let shifted: Vec<T> = self
                .factors
                .iter()
                .zip(xq)
                .zip(&digits)
                .map(|(((_, m, _), c), &k)| (c.clone() + scale.clone() * T::from_count(k)).mod_floor(m))
                .collect();
            if self.height_sequence(&shifted) == target {
                return Answer::Yes;
            }
            for (d, r) in digits.iter_mut().zip(&radices) {
                *d += 1;
                if *d < *r {
                    break;
                }
                *d = 0;
            }
        }
        Answer::No
    }
}
