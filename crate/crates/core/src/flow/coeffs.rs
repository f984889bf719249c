use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::pnm_poly;
use super::transforms::inv_rel_weight;
use super::FlowParams;
use crate::error::{Error, Result};
use crate::hiprec::{exp_rational, DEFAULT_BITS};
use crate::powerseries::{series_derive, TruncatedSeries, MAX_ORDER};
use crate::rel_err;
use crate::scalar::rational_to_f64;
use crate::specfun::{binomial, laguerre_exact};

/// Cap on the adaptive precision used when a weighted sum cancels.
const MAX_BITS: u32 = 16384;

/// `sum_j w_j e^{-jt}` with exact rational weights; index `j` is the power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPolynomial {
    weights: Vec<BigRational>,
}

impl ExpPolynomial {
    pub fn new(weights: Vec<BigRational>) -> Self {
        ExpPolynomial { weights }
    }

    pub fn zero(len: usize) -> Self {
        ExpPolynomial {
            weights: vec![BigRational::zero(); len],
        }
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        ExpPolynomial {
            weights: self.weights.iter().map(|w| w * s).collect(),
        }
    }

    /// `self += s * other`, growing `self` if needed.
    pub fn add_scaled(&mut self, other: &ExpPolynomial, s: &BigRational) {
        if self.weights.len() < other.weights.len() {
            self.weights
                .resize(other.weights.len(), BigRational::zero());
        }
        for (w, o) in self.weights.iter_mut().zip(&other.weights) {
            *w += o * s;
        }
    }

    /// Exact value with `x` standing for `e^{-t}`.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.weights
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, w| acc * x + w)
    }

    /// Value at time `t`, correctly rounded up to a few ulps.
    ///
    /// With `e^t ~ s/d` (a dyadic rational with [`DEFAULT_BITS`] correct bits)
    /// and `w_j = a_j/b_j`, the sum is the integer
    /// `A = sum_j a_j (D/b_j) d^j s^{n-j}` over `D s^n`, `D = lcm(b_j)`. When
    /// the terms cancel so strongly that this precision is not enough for
    /// binary64, the precision is doubled.
    pub fn eval(&self, t: &BigRational) -> f64 {
        let terms: Vec<(usize, &BigRational)> = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .collect();
        if terms.is_empty() {
            return 0.0;
        }
        let n = terms.last().map_or(0, |(j, _)| *j);
        let lcm = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
        let mut bits = DEFAULT_BITS;
        loop {
            let e = exp_rational(t, bits);
            let (s, d) = (e.numer(), e.denom());
            let mut s_pows = vec![BigInt::one(); n + 1];
            for j in 1..=n {
                s_pows[j] = &s_pows[j - 1] * s;
            }
            let mut d_pow = BigInt::one();
            let mut d_exp = 0usize;
            let mut sum = BigInt::zero();
            let mut mag = BigInt::zero();
            for &(j, w) in &terms {
                while d_exp < j {
                    d_pow *= d;
                    d_exp += 1;
                }
                let term = w.numer() * (&lcm / w.denom()) * &d_pow * &s_pows[n - j];
                mag += term.abs();
                sum += term;
            }
            let denom = &lcm * &s_pows[n];
            // no reduction needed: the conversion rounds the exact quotient
            let value = rational_to_f64(&BigRational::new_raw(sum.clone(), denom));
            if bits >= MAX_BITS {
                return value;
            }
            if !sum.is_zero() {
                // relative error is about (mag/|sum|) * n * 2^-bits
                let lost = mag.bits() as f64 - sum.bits() as f64 + 1.0;
                let budget = bits as f64 - 70.0 - ((n + 1) as f64).log2();
                if lost < budget {
                    return value;
                }
            }
            bits *= 2;
        }
    }
}

/// Coefficients `a_n, b_n, S_n` and the `Phi^{-1}` series for `n = 1..=N`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    params: FlowParams,
    b: Vec<ExpPolynomial>,
    s: Vec<ExpPolynomial>,
    a_val: Vec<f64>,
    b_val: Vec<f64>,
    s_val: Vec<f64>,
    phi_inv_val: Vec<f64>,
}

impl CoefficientTable {
    pub fn new(params: &FlowParams, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain(
                "CoefficientTable",
                "order must be at least 1",
            ));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        let eps = params.epsilon_exact();
        let t = params.t_exact();
        let n_max = order as u32;

        // P_n^(m)(eps) for m < n, and L_{k-m-1}^{(m+1)}(2kt) for m < k
        let pnm: Vec<Vec<BigRational>> = (1..=n_max)
            .map(|n| (0..n).map(|m| pnm_poly(n, m).eval_exact(eps)).collect())
            .collect();
        let lag: Vec<Vec<BigRational>> = (1..=n_max)
            .map(|k| {
                let x = t * BigRational::from_integer(BigInt::from(2 * k));
                (0..k)
                    .map(|m| {
                        let alpha = BigRational::from_integer(BigInt::from(m + 1));
                        laguerre_exact(k - m - 1, &alpha, &x)
                    })
                    .collect()
            })
            .collect();

        // b_n = 2 sum_k C(2n, n-k) e^{-kt} sum_{m<k} L 2^m P_n^(m)
        let mut b = Vec::with_capacity(order);
        for n in 1..=n_max {
            let mut weights = vec![BigRational::zero(); order + 1];
            for k in 1..=n {
                let mut inner = BigRational::zero();
                let mut two_m = BigRational::one();
                for m in 0..k {
                    inner += &lag[k as usize - 1][m as usize]
                        * &two_m
                        * &pnm[n as usize - 1][m as usize];
                    two_m *= BigRational::from_integer(BigInt::from(2));
                }
                let c = binomial(2 * n as u64, (n - k) as i64) * 2;
                weights[k as usize] = inner * BigRational::from_integer(c);
            }
            b.push(ExpPolynomial::new(weights));
        }

        // S_n = sum_k (-1)^{k+n} (2n/(n+k)) C(n+k, n-k) b_k
        let mut s = Vec::with_capacity(order);
        for n in 1..=n_max {
            let mut acc = ExpPolynomial::zero(order + 1);
            for k in 1..=n {
                let mut w = inv_rel_weight(n as u64, k as u64);
                if (k + n) % 2 == 1 {
                    w = -w;
                }
                acc.add_scaled(&b[k as usize - 1], &w);
            }
            s.push(acc);
        }

        let a_val = b
            .iter()
            .enumerate()
            .map(|(i, bn)| {
                let n = i as u32 + 1;
                let scale = BigRational::from_integer(BigInt::from(n) * (BigInt::one() << (2 * n)));
                bn.scaled(&scale.recip()).eval(t)
            })
            .collect();
        let b_val = b.iter().map(|bn| bn.eval(t)).collect();
        let s_val = s.iter().map(|sn| sn.eval(t)).collect();
        let phi_inv_val = s
            .iter()
            .enumerate()
            .map(|(i, sn)| {
                let n = BigRational::from_integer(BigInt::from(i as u64 + 1));
                sn.scaled(&n.recip()).eval(t)
            })
            .collect();

        Ok(CoefficientTable {
            params: params.clone(),
            b,
            s,
            a_val,
            b_val,
            s_val,
            phi_inv_val,
        })
    }

    pub fn params(&self) -> &FlowParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// Exact weights of `b_n`, for `1 <= n <= order`.
    pub fn b_weights(&self, n: usize) -> &ExpPolynomial {
        &self.b[n - 1]
    }

    pub fn s_weights(&self, n: usize) -> &ExpPolynomial {
        &self.s[n - 1]
    }

    pub fn a(&self, n: usize) -> f64 {
        self.a_val[n - 1]
    }

    pub fn b(&self, n: usize) -> f64 {
        self.b_val[n - 1]
    }

    pub fn s(&self, n: usize) -> f64 {
        self.s_val[n - 1]
    }

    /// Coefficient of `z^n` in `Phi^{-1}`, i.e. `S_n / n`.
    pub fn phi_inv(&self, n: usize) -> f64 {
        if n == 0 {
            1.0
        } else {
            self.phi_inv_val[n - 1]
        }
    }

    /// `Phi^{-1}` about `z = 0`, with constant term 1.
    pub fn phi_inv_series(&self) -> Result<TruncatedSeries<Complex64>> {
        let coeffs = (0..=self.order())
            .map(|n| Complex64::new(self.phi_inv(n), 0.0))
            .collect();
        TruncatedSeries::new(Complex64::zero(), coeffs)
    }

    pub fn m_series(&self) -> Result<MSeries> {
        MSeries::from_table(self)
    }
}

/// `M(z) = z d/dz Phi^{-1}(z)`, alongside the raw `sum_n S_n z^n`.
#[derive(Debug, Clone)]
pub struct MSeries {
    /// `z` times the termwise derivative of `Phi^{-1}`; authoritative.
    pub derivative: TruncatedSeries<Complex64>,
    /// `S_n` for `n = 0..=N`, with `S_0 = 0`.
    pub raw: Vec<f64>,
    /// Sign `s` that best fits `n c_n = s S_n`.
    pub sign: f64,
    /// Largest relative difference between `n c_n` and `sign * S_n`.
    pub max_rel_diff: f64,
}

impl MSeries {
    fn from_table(table: &CoefficientTable) -> Result<Self> {
        if table.order() < 2 {
            return Err(Error::domain("m_series_coeffs", "order must be at least 2"));
        }
        let phi_inv = table.phi_inv_series()?;
        let d = series_derive(&phi_inv)?;
        let mut coeffs = Vec::with_capacity(table.order() + 1);
        coeffs.push(Complex64::zero());
        coeffs.extend_from_slice(d.coeffs());
        let derivative = TruncatedSeries::new(Complex64::zero(), coeffs)?;

        let mut raw = vec![0.0];
        raw.extend((1..=table.order()).map(|n| table.s(n)));
        let worst = |sign: f64| {
            derivative
                .coeffs()
                .iter()
                .zip(&raw)
                .map(|(c, s)| rel_err(*c, Complex64::new(sign * s, 0.0)))
                .fold(0.0, f64::max)
        };
        let (plus, minus) = (worst(1.0), worst(-1.0));
        let (sign, max_rel_diff) = if plus <= minus {
            (1.0, plus)
        } else {
            (-1.0, minus)
        };
        Ok(MSeries {
            derivative,
            raw,
            sign,
            max_rel_diff,
        })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.derivative.eval(&z)
    }
}

fn check_index(op: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(op, "index must be at least 1"));
    }
    Ok(())
}

pub fn a_coeff(p: &FlowParams, n: usize) -> Result<f64> {
    check_index("a_coeff", n)?;
    Ok(CoefficientTable::new(p, n)?.a(n))
}

pub fn b_coeff(p: &FlowParams, n: usize) -> Result<f64> {
    check_index("b_coeff", n)?;
    Ok(CoefficientTable::new(p, n)?.b(n))
}

pub fn s_coeff(p: &FlowParams, n: usize) -> Result<f64> {
    check_index("s_coeff", n)?;
    Ok(CoefficientTable::new(p, n)?.s(n))
}

pub fn phi_inv_coeffs(p: &FlowParams, order: usize) -> Result<TruncatedSeries<Complex64>> {
    CoefficientTable::new(p, order)?.phi_inv_series()
}

pub fn m_series_coeffs(p: &FlowParams, order: usize) -> Result<MSeries> {
    CoefficientTable::new(p, order)?.m_series()
}
