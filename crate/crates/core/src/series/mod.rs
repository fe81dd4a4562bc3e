//! Truncated formal power series over a generic coefficient field, and the
//! generating functions for tree parking functions built on top of them.
//!
//! A series of order `N` stores `c_0..=c_N`; everything beyond `x^N` is
//! unknown. Binary operations return the smaller of the two orders, and
//! operations that lose information at the top (differentiation, division
//! by `x`) lower the order accordingly.

mod counts;
mod gf;
mod scalar;

pub use counts::{closed_counts, CountRow, CountTable, TSV_HEADER};
pub use gf::{
    catalan_gf, catalan_numbers, check_all, check_identity, f_closed, f_series, factorial,
    fstar_series, ftilde_series, p_series, picard_step, pstar_series, ptilde_series, schroder_gf,
    schroder_numbers, solve_ftilde, tree_function, Identity, IdentityReport, IDENTITIES,
};
pub use scalar::Scalar;

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{op} is undefined here: {detail}")]
    BranchUndefined { op: &'static str, detail: String },
    #[error("order {needed} requested but only order {available} is known")]
    OrderMismatch { needed: usize, available: usize },
    #[error("{identity} fails at x^{index}: {lhs} != {rhs}")]
    IdentityViolated {
        identity: String,
        index: usize,
        lhs: String,
        rhs: String,
    },
    #[error("fixed-point iteration did not settle within {rounds} rounds")]
    FixedPointNotConverged { rounds: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Series<T> {
    /// The series with the given coefficients; its order is `len - 1`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series knows at least its constant term"
        );
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Series::from_fn(order, |_| T::zero())
    }

    pub fn constant(c: T, order: usize) -> Self {
        Series::monomial(0, c, order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(T::one(), order)
    }

    /// `x` itself.
    pub fn x(order: usize) -> Self {
        Series::monomial(1, T::one(), order)
    }

    /// `c x^k`.
    pub fn monomial(k: usize, c: T, order: usize) -> Self {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderMismatch {
                needed: order,
                available: self.order(),
            });
        }
        Ok(Series {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn cut(&self, order: usize) -> &[T] {
        &self.coeffs[..=order]
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn mul_x(&self, k: usize) -> Self {
        Series::from_fn(self.order(), |i| {
            if i < k {
                T::zero()
            } else {
                self.coeffs[i - k].clone()
            }
        })
    }

    /// Divides by `x^k`; the first `k` coefficients must vanish.
    pub fn div_x(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::OrderMismatch {
                needed: k,
                available: self.order(),
            });
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::BranchUndefined {
                op: "division by x",
                detail: format!("coefficient of x^{i} is nonzero"),
            });
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Substitutes `c x` for `x`.
    pub fn dilate(&self, c: &T) -> Self {
        let mut power = T::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.clone() * power.clone());
            power = power * c.clone();
        }
        Series { coeffs }
    }

    /// Lowers the order by one.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderMismatch {
                needed: 1,
                available: 0,
            });
        }
        Ok(Series::from_fn(self.order() - 1, |k| {
            self.coeffs[k + 1].clone() * from_usize::<T>(k + 1)
        }))
    }

    /// The antiderivative with zero constant term; raises the order by one.
    pub fn integral(&self) -> Self {
        Series::from_fn(self.order() + 1, |k| {
            if k == 0 {
                T::zero()
            } else {
                self.coeffs[k - 1].clone() / from_usize::<T>(k)
            }
        })
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::BranchUndefined {
                op: "reciprocal",
                detail: "constant term is zero".into(),
            });
        }
        let n = self.order();
        let mut b: Vec<T> = Vec::with_capacity(n + 1);
        b.push(T::one() / a0.clone());
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * b[k - j].clone();
            }
            b.push(-acc / a0.clone());
        }
        Ok(Series { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.reciprocal()?)
    }

    /// Requires a zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BranchUndefined {
                op: "exp",
                detail: "constant term is not zero".into(),
            });
        }
        // E' = A' E
        let n = self.order();
        let mut e: Vec<T> = Vec::with_capacity(n + 1);
        e.push(T::one());
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + from_usize::<T>(j) * self.coeffs[j].clone() * e[k - j].clone();
            }
            e.push(acc / from_usize::<T>(k));
        }
        Ok(Series { coeffs: e })
    }

    /// Requires constant term one.
    pub fn ln(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BranchUndefined {
                op: "ln",
                detail: "constant term is not one".into(),
            });
        }
        if self.order() == 0 {
            return Ok(Series::zero(0));
        }
        // (ln A)' = A' / A
        let quotient = self.derivative()?.div(&self.truncate(self.order() - 1)?)?;
        Ok(quotient.integral())
    }

    /// The square root whose constant term is the principal root of `a_0`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        let r = a0
            .principal_sqrt()
            .ok_or_else(|| SeriesError::BranchUndefined {
                op: "sqrt",
                detail: format!("constant term {a0} has no root in the field"),
            })?;
        if r.is_zero() {
            return Err(SeriesError::BranchUndefined {
                op: "sqrt",
                detail: "constant term is zero".into(),
            });
        }
        let two_r = r.clone() + r.clone();
        let n = self.order();
        let mut s: Vec<T> = Vec::with_capacity(n + 1);
        s.push(r);
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc - s[j].clone() * s[k - j].clone();
            }
            s.push(acc / two_r.clone());
        }
        Ok(Series { coeffs: s })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::BranchUndefined {
                op: "compose",
                detail: "inner series has a nonzero constant term".into(),
            });
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order)?;
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// First index `<= order` where the two series differ.
    pub fn first_difference(
        &self,
        other: &Self,
        order: usize,
    ) -> Result<Option<usize>, SeriesError> {
        let available = self.order().min(other.order());
        if order > available {
            return Err(SeriesError::OrderMismatch {
                needed: order,
                available,
            });
        }
        Ok((0..=order).find(|&k| self.coeffs[k] != other.coeffs[k]))
    }
}

fn from_usize<T: Scalar>(k: usize) -> T {
    T::from_usize(k).expect("small integers are representable")
}

impl<T: Scalar> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: Self) -> Series<T> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: self
                .cut(order)
                .iter()
                .zip(rhs.cut(order))
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: Self) -> Series<T> {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: self
                .cut(order)
                .iter()
                .zip(rhs.cut(order))
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: Self) -> Series<T> {
        let order = self.order().min(rhs.order());
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.cut(order).iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.cut(order - i).iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }
}

impl<T: Scalar> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl<T: Scalar> $tr for Series<T> {
            type Output = Series<T>;
            fn $method(self, rhs: Self) -> Series<T> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        -&self
    }
}
