//! Angular-momentum coupling coefficients.
//!
//! Clebsch–Gordan coefficients use the Condon–Shortley phase convention.
//! Both the CG and 6j symbols are evaluated from the Racah closed-form sums;
//! factorial arguments stay below ~45 for `j <= 10`, so a precomputed table
//! of exact integers (held as `f64`) is enough.

use std::fmt;

use crate::atomic_physics::{Manifold, SpeciesData, ZeemanState};
use crate::error::{Error, Result};

/// A non-negative or signed half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    pub const fn from_int(v: i32) -> Self {
        Self { twice: 2 * v }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Multiplicity `2j + 1`.
    pub fn multiplicity(self) -> usize {
        debug_assert!(self.twice >= 0);
        (self.twice + 1) as usize
    }

    /// Projections `-j, -j+1, ..., j`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let j = self.twice;
        (0..=j.max(-1)).filter(move |_| j >= 0).map(move |k| HalfInt::from_twice(-j + 2 * k))
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        let twice = 2.0 * v;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-9 || twice.abs() > 1e6 {
            return Err(Error::Argument(format!("{v} is not a half-integer")));
        }
        Ok(HalfInt::from_twice(twice.round() as i32))
    }
}

impl serde::Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> serde::Deserialize<'de> for HalfInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        HalfInt::try_from(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

const MAX_FACTORIAL: usize = 64;

fn factorial(n: i32) -> f64 {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; MAX_FACTORIAL + 1]> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = [1.0f64; MAX_FACTORIAL + 1];
        for k in 1..=MAX_FACTORIAL {
            t[k] = t[k - 1] * k as f64;
        }
        t
    });
    debug_assert!(n >= 0 && (n as usize) <= MAX_FACTORIAL, "factorial argument {n}");
    table[n as usize]
}

/// `(twice)/2` for an expression known to be integral.
fn half(twice: i32) -> i32 {
    debug_assert!(twice % 2 == 0);
    twice / 2
}

fn check_j(j: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(Error::Argument(format!("angular momentum {j} is negative")));
    }
    if j.twice > 20 {
        return Err(Error::Argument(format!("angular momentum {j} exceeds supported range j <= 10")));
    }
    Ok(())
}

fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    check_j(j)?;
    if m.twice.abs() > j.twice || (j.twice - m.twice) % 2 != 0 {
        return Err(Error::Argument(format!("projection {m} invalid for j = {j}")));
    }
    Ok(())
}

/// Triangle rule including the integer-perimeter condition.
pub fn triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.twice, b.twice, c.twice);
    c >= (a - b).abs() && c <= a + b && (a + b + c) % 2 == 0
}

/// `<j1 m1 j2 m2 | J M>`.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<f64> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j, m)?;
    if m1.twice + m2.twice != m.twice || !triangle(j1, j2, j) {
        return Ok(0.0);
    }
    let (j1, m1, j2, m2, j, m) = (j1.twice, m1.twice, j2.twice, m2.twice, j.twice, m.twice);

    let pre = f64::from(j + 1)
        * factorial(half(j + j1 - j2))
        * factorial(half(j - j1 + j2))
        * factorial(half(j1 + j2 - j))
        / factorial(half(j1 + j2 + j) + 1);
    let norm = factorial(half(j + m))
        * factorial(half(j - m))
        * factorial(half(j1 - m1))
        * factorial(half(j1 + m1))
        * factorial(half(j2 - m2))
        * factorial(half(j2 + m2));

    let k_min = 0.max(half(j2 - j - m1)).max(half(j1 + m2 - j));
    let k_max = half(j1 + j2 - j).min(half(j1 - m1)).min(half(j2 + m2));
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(half(j1 + j2 - j) - k)
            * factorial(half(j1 - m1) - k)
            * factorial(half(j2 + m2) - k)
            * factorial(half(j - j2 + m1) + k)
            * factorial(half(j - j1 - m2) + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    Ok((pre * norm).sqrt() * sum)
}

fn delta(a: i32, b: i32, c: i32) -> f64 {
    (factorial(half(a + b - c)) * factorial(half(a - b + c)) * factorial(half(-a + b + c))
        / factorial(half(a + b + c) + 1))
    .sqrt()
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}`.
pub fn wigner_6j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
) -> Result<f64> {
    for j in [j1, j2, j3, j4, j5, j6] {
        check_j(j)?;
    }
    if !(triangle(j1, j2, j3) && triangle(j1, j5, j6) && triangle(j4, j2, j6) && triangle(j4, j5, j3)) {
        return Ok(0.0);
    }
    let (j1, j2, j3, j4, j5, j6) = (j1.twice, j2.twice, j3.twice, j4.twice, j5.twice, j6.twice);
    let a = [
        half(j1 + j2 + j3),
        half(j1 + j5 + j6),
        half(j4 + j2 + j6),
        half(j4 + j5 + j3),
    ];
    let b = [
        half(j1 + j2 + j4 + j5),
        half(j2 + j3 + j5 + j6),
        half(j3 + j1 + j6 + j4),
    ];
    let t_min = *a.iter().max().unwrap();
    let t_max = *b.iter().min().unwrap();
    let mut sum = 0.0;
    for t in t_min..=t_max {
        let denom = a.iter().map(|&ai| factorial(t - ai)).product::<f64>()
            * b.iter().map(|&bi| factorial(bi - t)).product::<f64>();
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * factorial(t + 1) / denom;
    }
    Ok(delta(j1, j2, j3) * delta(j1, j5, j6) * delta(j4, j2, j6) * delta(j4, j5, j3) * sum)
}

/// Geometric weight of the spontaneous-emission tensor that carries a
/// ground-state dyad `|m'><m|` out of an intermediate dyad `|n'><n|`.
///
/// `m`, `m'` are ground (`F0, M0`) states, `n`, `n'` intermediate (`F, M`)
/// states. Summed over `m = m'` at fixed `n = n'` the weight is 1, so it is
/// the branching ratio on the diagonal.
pub fn pumping_tensor(
    m_prime: &ZeemanState,
    m: &ZeemanState,
    n_prime: &ZeemanState,
    n: &ZeemanState,
    species: &SpeciesData,
) -> Result<f64> {
    for g in [m_prime, m] {
        if g.manifold != Manifold::Ground {
            return Err(Error::Argument(format!("{g} is not a ground-manifold state")));
        }
    }
    for e in [n_prime, n] {
        if e.manifold != Manifold::Intermediate {
            return Err(Error::Argument(format!("{e} is not an intermediate-manifold state")));
        }
    }
    // single emitted polarization q shared by both amplitudes
    let q = n.m - m.m;
    if n_prime.m - m_prime.m != q || q.twice.abs() > 2 {
        return Ok(0.0);
    }
    let s = HalfInt::HALF;
    let i = species.nuclear_spin;
    let j = species.intermediate_j;
    let one = HalfInt::ONE;
    let cg_prime = clebsch_gordan(m_prime.f, m_prime.m, one, q, n_prime.f, n_prime.m)?;
    let cg = clebsch_gordan(m.f, m.m, one, q, n.f, n.m)?;
    if cg_prime == 0.0 || cg == 0.0 {
        return Ok(0.0);
    }
    let sixj_prime = wigner_6j(s, i, m_prime.f, n_prime.f, one, j)?;
    let sixj = wigner_6j(s, i, m.f, n.f, one, j)?;
    let phase = if (m.f.twice - m_prime.f.twice) / 2 % 2 == 0 { 1.0 } else { -1.0 };
    let weight = (f64::from(m_prime.f.twice + 1) * f64::from(m.f.twice + 1)).sqrt()
        * f64::from(j.twice + 1);
    Ok(cg_prime * cg * phase * weight * sixj_prime * sixj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    /// Brute-force CG from explicit lowering-operator construction of
    /// coupled states in the product basis. Independent of the Racah sum.
    fn cg_by_lowering(j1: i32, j2: i32, jj: i32) -> std::collections::HashMap<(i32, i32, i32), f64> {
        // basis index (m1, m2) in twice units
        use std::collections::HashMap;
        let mut out = HashMap::new();
        let jm = |j: i32, m: i32| -> f64 {
            // J- coefficient sqrt(j(j+1) - m(m-1)), twice units
            let (j, m) = (f64::from(j) / 2.0, f64::from(m) / 2.0);
            (j * (j + 1.0) - m * (m - 1.0)).sqrt()
        };
        // highest weight state of J=jj from orthogonality to higher J's at M=jj
        let m_top = jj;
        let pairs: Vec<(i32, i32)> = (0..=j1)
            .map(|k| -j1 + 2 * k)
            .flat_map(|m1| (0..=j2).map(move |k| (m1, -j2 + 2 * k)))
            .collect();
        let at_m = |m: i32| -> Vec<(i32, i32)> { pairs.iter().cloned().filter(|&(a, b)| a + b == m).collect() };
        // build all states with larger J at M=m_top by recursion over J from j1+j2 down
        let mut states: HashMap<(i32, i32), HashMap<(i32, i32), f64>> = HashMap::new();
        let mut big_j = j1 + j2;
        while big_j >= jj {
            // highest weight for big_j: orthogonalize against lowered states of higher J at M = big_j
            let basis = at_m(big_j);
            let mut v: HashMap<(i32, i32), f64> = basis.iter().map(|&p| (p, 0.0)).collect();
            // start from a generic vector, Gram–Schmidt against existing states with M = big_j
            for (k, p) in basis.iter().enumerate() {
                v.insert(*p, 1.0 + k as f64 * 0.37);
            }
            let existing: Vec<HashMap<(i32, i32), f64>> = states
                .iter()
                .filter(|((_, m), _)| *m == big_j)
                .map(|(_, s)| s.clone())
                .collect();
            for s in &existing {
                let dot: f64 = s.iter().map(|(p, c)| c * v.get(p).copied().unwrap_or(0.0)).sum();
                for (p, c) in s {
                    *v.get_mut(p).unwrap() -= dot * c;
                }
            }
            let norm: f64 = v.values().map(|c| c * c).sum::<f64>().sqrt();
            v.values_mut().for_each(|c| *c /= norm);
            // Condon–Shortley: <j1 j1, j2 (J-j1) | J J> > 0
            let key = (j1, big_j - j1);
            let sign = v.get(&key).copied().unwrap_or(0.0).signum();
            v.values_mut().for_each(|c| *c *= sign);
            let mut cur = v;
            let mut m = big_j;
            loop {
                states.insert((big_j, m), cur.clone());
                if m == -big_j {
                    break;
                }
                // apply J- = J1- + J2-
                let mut next: HashMap<(i32, i32), f64> = HashMap::new();
                for (&(m1, m2), &c) in &cur {
                    if m1 > -j1 {
                        *next.entry((m1 - 2, m2)).or_insert(0.0) += c * jm(j1, m1);
                    }
                    if m2 > -j2 {
                        *next.entry((m1, m2 - 2)).or_insert(0.0) += c * jm(j2, m2);
                    }
                }
                let scale = jm(big_j, m);
                next.values_mut().for_each(|c| *c /= scale);
                cur = next;
                m -= 2;
            }
            big_j -= 2;
        }
        for m in (0..=jj).map(|k| -jj + 2 * k) {
            for (&(m1, m2), &c) in &states[&(jj, m)] {
                out.insert((m1, m2, m), c);
            }
        }
        let _ = m_top;
        out
    }

    #[test]
    fn trivial_couplings() {
        assert_eq!(clebsch_gordan(h(0), h(0), h(0), h(0), h(0), h(0)).unwrap(), 1.0);
        let v = clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(2)).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn racah_matches_lowering_oracle() {
        for (j1, j2) in [(2i32, 2i32), (1, 2), (3, 2), (4, 2), (2, 4), (3, 3), (4, 4), (6, 2)] {
            let mut jj = (j1 - j2).abs();
            while jj <= j1 + j2 {
                let oracle = cg_by_lowering(j1, j2, jj);
                for (&(m1, m2, m), &c) in &oracle {
                    let v = clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(jj), h(m)).unwrap();
                    assert!((v - c).abs() < 1e-12, "({j1},{m1},{j2},{m2}|{jj},{m}) {v} vs {c}");
                }
                jj += 2;
            }
        }
        // the named example (1,1,1,-1 | 0,0) = 1/sqrt(3)
        let v = clebsch_gordan(h(2), h(2), h(2), h(-2), h(0), h(0)).unwrap();
        let oracle = cg_by_lowering(2, 2, 0)[&(2, -2, 0)];
        assert!((v - oracle).abs() < 1e-14);
        assert!((v - 1.0 / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn selection_rules_give_exact_zero() {
        assert_eq!(clebsch_gordan(h(2), h(2), h(2), h(0), h(2), h(0)).unwrap(), 0.0);
        assert_eq!(clebsch_gordan(h(2), h(0), h(2), h(0), h(6), h(0)).unwrap(), 0.0);
        assert!(clebsch_gordan(h(2), h(4), h(2), h(0), h(2), h(4)).is_err());
        assert!(clebsch_gordan(h(2), h(1), h(2), h(0), h(2), h(1)).is_err());
    }

    #[test]
    fn cg_orthogonality_exhaustive() {
        for j1 in 0i32..=6 {
            for j2 in 0i32..=6 {
                let js: Vec<i32> = ((j1 - j2).abs()..=j1 + j2).step_by(2).collect();
                for &ja in &js {
                    for &jb in &js {
                        for ma in (0..=ja).map(|k| -ja + 2 * k) {
                            for mb in (0..=jb).map(|k| -jb + 2 * k) {
                                let mut s = 0.0;
                                for m1 in (0..=j1).map(|k| -j1 + 2 * k) {
                                    for m2 in (0..=j2).map(|k| -j2 + 2 * k) {
                                        s += clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(ja), h(ma)).unwrap()
                                            * clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(jb), h(mb)).unwrap();
                                    }
                                }
                                let expect = if ja == jb && ma == mb { 1.0 } else { 0.0 };
                                assert!((s - expect).abs() < 1e-12);
                            }
                        }
                    }
                }
            }
        }
    }

    /// 6j from a contraction of four CG coefficients:
    /// {j1 j2 j12; j3 J j23} = (-1)^(j1+j2+j3+J) / sqrt((2j12+1)(2j23+1))
    ///     times sum <j1 m1 j2 m2|j12 m12><j12 m12 j3 m3|J M><j2 m2 j3 m3|j23 m23><j1 m1 j23 m23|J M>
    /// for any fixed M.
    fn sixj_oracle(j1: i32, j2: i32, j12: i32, j3: i32, jt: i32, j23: i32) -> f64 {
        let mm = jt; // any valid M
        let mut s = 0.0;
        for m1 in (0..=j1).map(|k| -j1 + 2 * k) {
            for m2 in (0..=j2).map(|k| -j2 + 2 * k) {
                let m3 = mm - m1 - m2;
                if m3.abs() > j3 {
                    continue;
                }
                let m12 = m1 + m2;
                let m23 = m2 + m3;
                if m12.abs() > j12 || m23.abs() > j23 {
                    continue;
                }
                s += clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(j12), h(m12)).unwrap()
                    * clebsch_gordan(h(j12), h(m12), h(j3), h(m3), h(jt), h(mm)).unwrap()
                    * clebsch_gordan(h(j2), h(m2), h(j3), h(m3), h(j23), h(m23)).unwrap()
                    * clebsch_gordan(h(j1), h(m1), h(j23), h(m23), h(jt), h(mm)).unwrap();
            }
        }
        let phase = if ((j1 + j2 + j3 + jt) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        phase * s / (f64::from((j12 + 1) * (j23 + 1))).sqrt()
    }

    #[test]
    fn sixj_matches_cg_contraction() {
        let v = wigner_6j(h(1), h(1), h(2), h(1), h(1), h(2)).unwrap();
        assert!((v - sixj_oracle(1, 1, 2, 1, 1, 2)).abs() < 1e-13);
        for j1 in 0i32..=4 {
            for j2 in 0i32..=4 {
                for j3 in 0i32..=4 {
                    for j12 in ((j1 - j2).abs()..=j1 + j2).step_by(2) {
                        for j23 in ((j2 - j3).abs()..=j2 + j3).step_by(2) {
                            let lo = (j12 - j3).abs().max((j1 - j23).abs());
                            let hi = (j12 + j3).min(j1 + j23);
                            let mut jt = lo;
                            while jt <= hi {
                                if (jt - lo) % 2 == 0 {
                                    let v = wigner_6j(h(j1), h(j2), h(j12), h(j3), h(jt), h(j23)).unwrap();
                                    let o = sixj_oracle(j1, j2, j12, j3, jt, j23);
                                    assert!((v - o).abs() < 1e-12, "{v} vs {o}");
                                }
                                jt += 2;
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sixj_with_zero_entry() {
        for (j1, j2, j3) in [(1, 1, 2), (2, 3, 1), (4, 2, 2), (3, 3, 4)] {
            if !triangle(h(j1), h(j2), h(j3)) {
                continue;
            }
            let v = wigner_6j(h(j1), h(j2), h(j3), h(0), h(j3), h(j2)).unwrap();
            let phase = if ((j1 + j2 + j3) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let expect = phase / (f64::from((j2 + 1) * (j3 + 1))).sqrt();
            assert!((v - expect).abs() < 1e-14);
            assert!((v - sixj_oracle(j1, j2, j3, 0, j3, j2)).abs() < 1e-13);
        }
    }

    #[test]
    fn sixj_triangle_violation_is_zero() {
        assert_eq!(wigner_6j(h(2), h(2), h(6), h(2), h(2), h(2)).unwrap(), 0.0);
        assert_eq!(wigner_6j(h(1), h(1), h(1), h(1), h(1), h(1)).unwrap(), 0.0);
    }

    #[test]
    fn sixj_symmetries() {
        let args = [h(3), h(1), h(2), h(1), h(3), h(2)];
        let base = wigner_6j(args[0], args[1], args[2], args[3], args[4], args[5]).unwrap();
        assert!(base.abs() > 1e-6);
        let cols = [(args[0], args[3]), (args[1], args[4]), (args[2], args[5])];
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let c = [cols[p[0]], cols[p[1]], cols[p[2]]];
            let v = wigner_6j(c[0].0, c[1].0, c[2].0, c[0].1, c[1].1, c[2].1).unwrap();
            assert!((v - base).abs() < 1e-14);
            // swap upper/lower in columns 0 and 1
            let w = wigner_6j(c[0].1, c[1].1, c[2].0, c[0].0, c[1].0, c[2].1).unwrap();
            assert!((w - base).abs() < 1e-14);
        }
    }

    use crate::atomic_physics::{Manifold, SpeciesData, ZeemanState};

    /// Dipole element in the uncoupled `|J mJ>|I mI>` basis; `d` acts on `J` only.
    fn uncoupled_dipole(lower: &ZeemanState, upper: &ZeemanState, q: i32) -> f64 {
        let (j, i) = (h(1), h(3));
        let mut s = 0.0;
        for mi in h(3).projections() {
            for mj0 in j.projections() {
                let mj = mj0 + HalfInt::from_int(q);
                if mj.twice().abs() > j.twice() {
                    continue;
                }
                let up = clebsch_gordan(j, mj, i, mi, upper.f, upper.m).unwrap_or(0.0);
                let lo = clebsch_gordan(j, mj0, i, mi, lower.f, lower.m).unwrap_or(0.0);
                if up == 0.0 || lo == 0.0 {
                    continue;
                }
                s += up * lo * clebsch_gordan(j, mj0, HalfInt::ONE, HalfInt::from_int(q), j, mj).unwrap();
            }
        }
        s
    }

    #[test]
    fn pumping_tensor_matches_uncoupled_oracle() {
        let sp = SpeciesData::rb87();
        let ground = ZeemanState::hyperfine_manifold(Manifold::Ground);
        let inter = ZeemanState::hyperfine_manifold(Manifold::Intermediate);
        let mut checked = 0;
        for mp in &ground {
            for m in &ground {
                for np in &inter {
                    for n in &inter {
                        let t = pumping_tensor(mp, m, np, n, &sp).unwrap();
                        let mut o = 0.0;
                        for q in -1..=1 {
                            o += uncoupled_dipole(mp, np, q) * uncoupled_dipole(m, n, q);
                        }
                        assert!((t - o).abs() < 1e-12, "{mp} {m} {np} {n}: {t} vs {o}");
                        if o != 0.0 {
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn pumping_tensor_structure() {
        let sp = SpeciesData::rb87();
        let ground = ZeemanState::hyperfine_manifold(Manifold::Ground);
        let inter = ZeemanState::hyperfine_manifold(Manifold::Intermediate);
        for n in &inter {
            let mut total = 0.0;
            for m in &ground {
                let t = pumping_tensor(m, m, n, n, &sp).unwrap();
                assert!(t >= 0.0);
                total += t;
            }
            assert!((total - 1.0).abs() < 1e-12);
        }
        // mismatched polarization between the two amplitudes
        let t = pumping_tensor(&ground[5], &ground[4], &inter[1], &inter[1], &sp).unwrap();
        assert_eq!(t, 0.0);
        assert!(pumping_tensor(&inter[0], &ground[0], &inter[0], &inter[0], &sp).is_err());
        assert!(pumping_tensor(&ground[0], &ground[0], &ground[0], &inter[0], &sp).is_err());
    }

    #[test]
    fn halfint_projections() {
        let p: Vec<i32> = h(3).projections().map(|m| m.twice()).collect();
        assert_eq!(p, vec![-3, -1, 1, 3]);
        assert_eq!(h(4).multiplicity(), 5);
        assert_eq!(format!("{}", h(3)), "3/2");
    }
}
