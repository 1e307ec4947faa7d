//! Exact symmetric-function algebra for constrained power sums.
//!
//! On the zero-sum unit sphere the first two elementary symmetric functions
//! are pinned to e1 = 0 and e2 = -1/2, so every power sum t_k of three or
//! four variables collapses to a polynomial in e3 (and e4) with rational
//! coefficients. This module computes those polynomials exactly and checks
//! them against hand-derived identities.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exact rational scalar: arbitrary-precision, always reduced, denominator
/// positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, PartialEq)]
pub enum SymfunError {
    #[error("power-sum identity mismatch at k = {k}: engine produced {computed}, expected {expected}")]
    IdentityMismatch {
        k: u32,
        computed: String,
        expected: String,
    },
}

/// Elementary symmetric functions e_1..e_n of the given values, exact.
/// Expands prod (x - x_i) and reads e_k off the coefficients.
pub fn elementary_from_roots(xs: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = vec![Rational::one()];
    for x in xs {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= x * c;
        }
        coeffs = next;
    }
    (1..=xs.len())
        .map(|k| {
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * &coeffs[k]
        })
        .collect()
}

/// Elementary symmetric functions of real values.
pub fn elementary_from_roots_f64(xs: &[f64]) -> Vec<f64> {
    let mut coeffs: Vec<f64> = vec![1.0];
    for &x in xs {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= x * c;
        }
        coeffs = next;
    }
    (1..=xs.len())
        .map(|k| if k % 2 == 0 { coeffs[k] } else { -coeffs[k] })
        .collect()
}

/// Power sums t_1..t_kmax from elementary symmetric functions, via the
/// standard Newton recurrence
/// t_k = sum_{i=1}^{min(k-1,n)} (-1)^{i-1} e_i t_{k-i}  (+ (-1)^{k-1} k e_k for k <= n).
pub fn power_sums_from_elementary(es: &[Rational], k_max: u32) -> Vec<Rational> {
    let n = es.len();
    let mut t: Vec<Rational> = Vec::with_capacity(k_max as usize + 1);
    t.push(Rational::from(BigInt::from(n as i64))); // t_0 = n, internal convention
    for k in 1..=k_max as usize {
        let mut acc = Rational::zero();
        for i in 1..=(k - 1).min(n) {
            let term = &es[i - 1] * &t[k - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if k <= n {
            let lead = &es[k - 1] * Rational::from(BigInt::from(k as i64));
            if k % 2 == 1 {
                acc += lead;
            } else {
                acc -= lead;
            }
        }
        t.push(acc);
    }
    t.remove(0);
    t
}

/// Polynomial in e3 and e4 with rational coefficients, representing the k-th
/// power sum of `n` zero-sum unit-norm variables. Zero coefficients are not
/// stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumPoly {
    pub n: u8,
    pub k: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl PowerSumPoly {
    fn zero(n: u8, k: u32) -> Self {
        PowerSumPoly {
            n,
            k,
            coeffs: BTreeMap::new(),
        }
    }

    fn from_terms(n: u8, k: u32, terms: &[((u32, u32), Rational)]) -> Self {
        let mut poly = Self::zero(n, k);
        for ((a, b), c) in terms {
            poly.add_term((*a, *b), c.clone());
        }
        poly
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    fn add_scaled(&mut self, other: &PowerSumPoly, scale: &Rational) {
        for (key, c) in &other.coeffs {
            self.add_term(*key, c * scale);
        }
    }

    /// Adds `other * e3^de3 * e4^de4 * scale`.
    fn add_shifted(&mut self, other: &PowerSumPoly, de3: u32, de4: u32, scale: &Rational) {
        for (&(a, b), c) in &other.coeffs {
            self.add_term((a + de3, b + de4), c * scale);
        }
    }

    /// Terms as (e3 power, e4 power, coefficient), sorted.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.coeffs.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Exact evaluation.
    pub fn eval(&self, e3: &Rational, e4: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.coeffs {
            acc += c * e3.pow(a as i32) * e4.pow(b as i32);
        }
        acc
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, e3: f64, e4: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| c.to_f64().expect("finite rational") * e3.powi(a as i32) * e4.powi(b as i32))
            .sum()
    }
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (sym, pow) in [("e3", a), ("e4", b)] {
                match pow {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{pow}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for PowerSumPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            e3: u32,
            e4: u32,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms()
            .map(|(a, b, c)| Term {
                e3: a,
                e4: b,
                coeff: c.to_string(),
            })
            .collect();
        let mut s = serializer.serialize_struct("PowerSumPoly", 4)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("terms", &terms)?;
        s.serialize_field("rendered", &self.to_string())?;
        s.end()
    }
}

/// Power sums under the constraints, with e3 (and e4 for n = 4) symbolic.
/// Newton's recurrence with e1 = 0 and e2 = -1/2 baked in.
fn constrained_power_sums(n: u8, k_max: u32) -> Vec<PowerSumPoly> {
    assert!(n == 3 || n == 4);
    let half = rational(1, 2);
    let mut t: Vec<PowerSumPoly> = Vec::with_capacity(k_max as usize + 1);
    // t_0 = n
    t.push(PowerSumPoly::from_terms(
        n,
        0,
        &[((0, 0), Rational::from(BigInt::from(n as i64)))],
    ));
    for k in 1..=k_max {
        let ku = k as usize;
        let mut poly = PowerSumPoly::zero(n, k);
        // recurring terms: -e2 t_{k-2} = t_{k-2}/2, +e3 t_{k-3}, -e4 t_{k-4}
        if ku >= 3 {
            let prev = t[ku - 2].clone();
            poly.add_scaled(&prev, &half);
        }
        if ku >= 4 {
            let prev = t[ku - 3].clone();
            poly.add_shifted(&prev, 1, 0, &Rational::one());
        }
        if n == 4 && ku >= 5 {
            let prev = t[ku - 4].clone();
            poly.add_shifted(&prev, 0, 1, &-Rational::one());
        }
        // boundary terms (-1)^{k-1} k e_k for k <= n
        match (k, n) {
            (2, _) => poly.add_term((0, 0), rational(1, 1)), // -2 e2
            (3, _) => poly.add_term((1, 0), rational(3, 1)), // +3 e3
            (4, 4) => poly.add_term((0, 1), rational(-4, 1)), // -4 e4
            _ => {}
        }
        t.push(poly);
    }
    t.remove(0);
    t
}

/// k-th power sum of three zero-sum unit-norm variables, as a polynomial in
/// e3. Satisfies t_k = t_{k-2}/2 + e3 t_{k-3} with t_1 = 0, t_2 = 1,
/// t_3 = 3 e3.
pub fn power_sum_in_e3(k: u32) -> PowerSumPoly {
    assert!(k >= 1);
    constrained_power_sums(3, k).pop().unwrap()
}

/// As [`power_sum_in_e3`] for four variables: polynomials in e3 and e4.
pub fn power_sum_in_e3_e4(k: u32) -> PowerSumPoly {
    assert!(k >= 1);
    constrained_power_sums(4, k).pop().unwrap()
}

/// The three four-variable identities used by the even-exponent analysis.
#[derive(Debug, Clone, Serialize)]
pub struct FourVarIdentities {
    pub t3: PowerSumPoly,
    pub t4: PowerSumPoly,
    pub t6: PowerSumPoly,
}

/// Computes t3, t4, t6 for n = 4 from the Newton engine and checks them
/// against the hand-derived forms 3e3, 1/2 - 4e4, 1/4 + 3e3^2 - 3e4.
pub fn four_var_identities() -> Result<FourVarIdentities, SymfunError> {
    let mut polys = constrained_power_sums(4, 6);
    let t6 = polys.pop().unwrap();
    polys.pop();
    let t4 = polys.pop().unwrap();
    let t3 = polys.pop().unwrap();
    let expected: [(u32, &PowerSumPoly, PowerSumPoly); 3] = [
        (3, &t3, PowerSumPoly::from_terms(4, 3, &[((1, 0), rational(3, 1))])),
        (
            4,
            &t4,
            PowerSumPoly::from_terms(4, 4, &[((0, 0), rational(1, 2)), ((0, 1), rational(-4, 1))]),
        ),
        (
            6,
            &t6,
            PowerSumPoly::from_terms(
                4,
                6,
                &[
                    ((0, 0), rational(1, 4)),
                    ((2, 0), rational(3, 1)),
                    ((0, 1), rational(-3, 1)),
                ],
            ),
        ),
    ];
    for (k, computed, expect) in &expected {
        if computed.coeffs != expect.coeffs {
            return Err(SymfunError::IdentityMismatch {
                k: *k,
                computed: computed.to_string(),
                expected: expect.to_string(),
            });
        }
    }
    Ok(FourVarIdentities { t3, t4, t6 })
}

/// True when every three-variable power-sum polynomial up to `k_max` has
/// only nonnegative coefficients, which makes the odd-exponent maximization
/// monotone in e3.
pub fn coefficient_positivity_check(k_max: u32) -> bool {
    constrained_power_sums(3, k_max)
        .iter()
        .all(PowerSumPoly::all_coefficients_nonnegative)
}
