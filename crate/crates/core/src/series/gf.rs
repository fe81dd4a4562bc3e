//! The generating functions for parking functions, prime parking
//! functions, parking distributions and their marked variants, with a
//! registry of the identities relating them.
//!
//! `F` and `P` are normalized by `(n!)^2` (preference sequences are ordered),
//! the distribution series `Ftilde`, `Ptilde`, `Pstar`, `Fstar` and the tree
//! function by `n!`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Series, SeriesError};
use crate::ExactSeries;

/// Extra coefficients carried so that derivatives and divisions by `x`
/// still leave the requested order intact.
const SLACK: usize = 2;

fn q(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn int(k: BigInt) -> BigRational {
    BigRational::from_integer(k)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C_0..=C_k` from `C = 1 + x C^2`.
pub fn catalan_numbers(k: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for m in 1..=k {
        let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        c.push(next);
    }
    c
}

/// Large Schröder numbers `S_0..=S_k` from `S_m = S_{m-1} + sum S_i S_{m-1-i}`.
pub fn schroder_numbers(k: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::one()];
    for m in 1..=k {
        let conv: BigInt = (0..m).map(|i| &s[i] * &s[m - 1 - i]).sum();
        let next = &s[m - 1] + conv;
        s.push(next);
    }
    s
}

/// `T(x) = sum n^(n-1) x^n / n!`.
pub fn tree_function(order: usize) -> ExactSeries {
    Series::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(n).pow(n as u32 - 1), factorial(n))
        }
    })
}

/// `F(x)` from the closed form
/// `F_n = ((n-1)!)^2 sum_{i<n} (n-i)(2n)^i / i!`.
pub fn f_closed(order: usize) -> ExactSeries {
    Series::from_fn(order, |n| {
        if n == 0 {
            return BigRational::zero();
        }
        let inner: BigRational = (0..n)
            .map(|i| {
                BigRational::new(
                    BigInt::from(n - i) * BigInt::from(2 * n).pow(i as u32),
                    factorial(i),
                )
            })
            .sum();
        let fm = int(factorial(n - 1));
        let nf = int(factorial(n));
        &fm * &fm * inner / (&nf * &nf)
    })
}

/// `F(x) = T(2x) + ln(1 - T(2x)/2)`.
pub fn f_series(order: usize) -> ExactSeries {
    recursion_rhs(order)
}

fn recursion_rhs(order: usize) -> ExactSeries {
    let t2 = tree_function(order).dilate(&q(2));
    let inside = &ExactSeries::one(order) - &t2.scale(&BigRational::new(1.into(), 2.into()));
    &t2 + &inside.ln().expect("constant term is one")
}

/// `P(x) = sum (2n-2)! x^n / (n!)^2`.
pub fn p_series(order: usize) -> ExactSeries {
    Series::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            let nf = factorial(n);
            BigRational::new(factorial(2 * n - 2), &nf * &nf)
        }
    })
}

/// `C(x) = (1 - sqrt(1 - 4x)) / (2x)`.
pub fn catalan_gf(order: usize) -> ExactSeries {
    let radicand = &ExactSeries::one(order + 1) - &ExactSeries::x(order + 1).scale(&q(4));
    let numer = &ExactSeries::one(order + 1) - &radicand.sqrt().expect("constant term is one");
    numer
        .div_x(1)
        .expect("constant term cancels")
        .scale(&BigRational::new(1.into(), 2.into()))
}

/// `(1 - x - sqrt(x^2 - 6x + 1)) / (2x)`, the large Schröder numbers.
pub fn schroder_gf(order: usize) -> ExactSeries {
    let w = order + 1;
    let mut radicand = ExactSeries::one(w);
    radicand = &radicand - &ExactSeries::x(w).scale(&q(6));
    radicand = &radicand + &ExactSeries::monomial(2, q(1), w);
    let numer = &(&ExactSeries::one(w) - &ExactSeries::x(w))
        - &radicand.sqrt().expect("constant term is one");
    numer
        .div_x(1)
        .expect("constant term cancels")
        .scale(&BigRational::new(1.into(), 2.into()))
}

/// `Ptilde(x) = sum (n-1)! S_{n-1} x^n / n!`.
pub fn ptilde_series(order: usize) -> ExactSeries {
    let s = schroder_numbers(order.saturating_sub(1));
    Series::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            BigRational::new(s[n - 1].clone(), BigInt::from(n))
        }
    })
}

/// One round of `Ftilde <- integral of e^Ftilde (1 + x Ftilde')(1 + 2x Ftilde')`.
/// Keeps the order of `f`, which must be at least one.
pub fn picard_step(f: &ExactSeries) -> ExactSeries {
    let d = f.derivative().expect("order at least one");
    let xd = d.mul_x(1);
    let one = ExactSeries::one(d.order());
    let e = f
        .truncate(d.order())
        .unwrap()
        .exp()
        .expect("zero constant term");
    let rhs = &(&e * &(&one + &xd)) * &(&one + &xd.scale(&q(2)));
    rhs.integral()
}

/// Solves the differential equation for `Ftilde` with `Ftilde(0) = 0` by
/// iterating [`picard_step`] from `x`. Round `k` fixes the coefficient of
/// `x^(k+1)`, so the iteration must settle within `order + 1` rounds.
/// Returns the series and the number of rounds taken.
pub fn solve_ftilde(order: usize) -> Result<(ExactSeries, usize), SeriesError> {
    let order = order.max(1);
    let limit = order + 1;
    let mut f = ExactSeries::x(order);
    for round in 1..=limit {
        let next = picard_step(&f);
        if next == f {
            return Ok((f, round));
        }
        f = next;
    }
    Err(SeriesError::FixedPointNotConverged { rounds: limit })
}

pub fn ftilde_series(order: usize) -> ExactSeries {
    let (f, _) = solve_ftilde(order).expect("the iteration fixes one coefficient per round");
    f.truncate(order).unwrap()
}

/// Marked prime parking distributions, from `P*_n = n(n-1) Ptilde_{n-1}`
/// and `P*_1 = 1`.
pub fn pstar_series(order: usize) -> ExactSeries {
    let s = schroder_numbers(order);
    Series::from_fn(order, |n| match n {
        0 => BigRational::zero(),
        1 => q(1),
        // n(n-1)(n-2)! S_{n-2} / n!
        _ => int(s[n - 2].clone()),
    })
}

/// Marked parking distributions, from `F*_n = 2n(n-1) Ftilde_{n-1}` and
/// `F*_1 = 1`.
pub fn fstar_series(order: usize) -> ExactSeries {
    let ft = ftilde_series(order.max(1));
    Series::from_fn(order, |n| match n {
        0 => BigRational::zero(),
        1 => q(1),
        // 2n(n-1) (n-1)! [x^(n-1)]Ftilde / n!
        _ => q(2 * (n as i64 - 1)) * ft.coeff(n - 1).clone(),
    })
}

/// A checkable relation between generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Identity {
    pub id: &'static str,
    pub statement: &'static str,
    /// Reported but never counted as a failure.
    pub informational: bool,
}

const fn id(id: &'static str, statement: &'static str) -> Identity {
    Identity {
        id,
        statement,
        informational: false,
    }
}

pub const IDENTITIES: &[Identity] = &[
    id("tree-function", "T = x e^T"),
    id("pf-recursion", "F = T(2x) + ln(1 - T(2x)/2)"),
    id("pf-composition", "F = P(x e^F)"),
    id(
        "pf-prime-substitution",
        "P(x e^F) = T(2x) + ln(1 - T(2x)/2)",
    ),
    id(
        "pf-substitution-quadratic",
        "x e^F = y(1 - y) with y = T(2x)/2",
    ),
    id("catalan-sqrt", "(1 - sqrt(1 - 4x))/(2x) = sum C_n x^n"),
    id("catalan-recurrence", "C = 1 + x C^2"),
    id("prime-catalan", "P = 2xC + ln(1 - xC)"),
    id("catalan-derivative", "C' = C^2 / (1 - 2xC)"),
    id("catalan-ratio", "C / (xC)' = (1 - 2xC)/(1 - xC)"),
    id("prime-derivative", "P' = C"),
    id("dist-composition", "Ftilde = Ptilde(x e^Ftilde)"),
    id("marked-prime-growth", "P* = x + x^2 Ptilde'"),
    id(
        "marked-prime-decomposition",
        "P* = x + x P* / (1 - x Ptilde')",
    ),
    id(
        "schroder-quadratic",
        "x Ptilde'^2 + (x - 1) Ptilde' + 1 = 0",
    ),
    id("schroder-gf", "Ptilde' = (1 - x - sqrt(x^2 - 6x + 1))/(2x)"),
    id("marked-dist-growth", "F* = x + 2x^2 Ftilde'"),
    id(
        "marked-dist-decomposition",
        "F* = x + x F* e^Ftilde + x^2 Ftilde' + x^2 F* Ftilde' e^Ftilde",
    ),
    Identity {
        id: "marked-dist-decomposition-with-F",
        statement: "F* = x + x F* e^F + x^2 F' + x^2 F* F' e^F",
        informational: true,
    },
    id(
        "dist-ode",
        "Ftilde' = e^Ftilde (1 + x Ftilde')(1 + 2x Ftilde')",
    ),
    id("pf-ode", "F' = e^F (1 + x F')^2"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: Identity,
    pub order: usize,
    pub outcome: Result<(), SeriesError>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.outcome.is_ok()
    }

    /// One line: `PASS`, `FAIL` or `INFO`, the id, and on failure the first
    /// offending coefficient.
    pub fn line(&self) -> String {
        let tag = match (&self.outcome, self.identity.informational) {
            (Ok(()), _) => "PASS",
            (Err(_), true) => "INFO",
            (Err(_), false) => "FAIL",
        };
        match &self.outcome {
            Ok(()) => format!(
                "{tag} {} [{}] to order {}",
                self.identity.id, self.identity.statement, self.order
            ),
            Err(e) => format!(
                "{tag} {} [{}]: {e}",
                self.identity.id, self.identity.statement
            ),
        }
    }
}

/// Checks one identity to order `order`.
pub fn check_identity(name: &str, order: usize) -> Result<IdentityReport, SeriesError> {
    let identity = *IDENTITIES
        .iter()
        .find(|i| i.id == name)
        .ok_or_else(|| SeriesError::UnknownIdentity(name.to_string()))?;
    let outcome = sides(name, order).and_then(|(lhs, rhs)| agree(name, &lhs, &rhs, order));
    Ok(IdentityReport {
        identity,
        order,
        outcome,
    })
}

pub fn check_all(order: usize) -> Vec<IdentityReport> {
    IDENTITIES
        .iter()
        .map(|i| check_identity(i.id, order).expect("registered"))
        .collect()
}

fn agree(
    name: &str,
    lhs: &ExactSeries,
    rhs: &ExactSeries,
    order: usize,
) -> Result<(), SeriesError> {
    match lhs.first_difference(rhs, order)? {
        None => Ok(()),
        Some(index) => Err(SeriesError::IdentityViolated {
            identity: name.to_string(),
            index,
            lhs: lhs.coeff(index).to_string(),
            rhs: rhs.coeff(index).to_string(),
        }),
    }
}

/// Both sides of an identity, each known to at least `order`.
fn sides(name: &str, order: usize) -> Result<(ExactSeries, ExactSeries), SeriesError> {
    let w = order + SLACK;
    let x = ExactSeries::x(w);
    let one = ExactSeries::one(w);
    let half = BigRational::new(1.into(), 2.into());
    Ok(match name {
        "tree-function" => {
            let t = tree_function(w);
            let rhs = t.exp()?.mul_x(1);
            (t, rhs)
        }
        "pf-recursion" => (f_closed(w), recursion_rhs(w)),
        "pf-composition" => {
            let f = f_closed(w);
            let z = f.exp()?.mul_x(1);
            (f, p_series(w).compose(&z)?)
        }
        "pf-prime-substitution" => {
            let z = f_closed(w).exp()?.mul_x(1);
            (p_series(w).compose(&z)?, recursion_rhs(w))
        }
        "pf-substitution-quadratic" => {
            let z = f_closed(w).exp()?.mul_x(1);
            let y = tree_function(w).dilate(&q(2)).scale(&half);
            let rhs = &y * &(&one - &y);
            (z, rhs)
        }
        "catalan-sqrt" => {
            let c = catalan_numbers(w);
            (catalan_gf(w), Series::from_fn(w, |n| int(c[n].clone())))
        }
        "catalan-recurrence" => {
            let c = catalan_gf(w);
            let rhs = &one + &(&c * &c).mul_x(1);
            (c, rhs)
        }
        "prime-catalan" => {
            let xc = catalan_gf(w).mul_x(1);
            let rhs = &xc.scale(&q(2)) + &(&one - &xc).ln()?;
            (p_series(w), rhs)
        }
        "catalan-derivative" => {
            let c = catalan_gf(w + 1);
            let lhs = c.derivative()?;
            let c = c.truncate(w)?;
            let xc = c.mul_x(1);
            let rhs = (&c * &c).div(&(&one - &xc.scale(&q(2))))?;
            (lhs, rhs)
        }
        "catalan-ratio" => {
            let c = catalan_gf(w + 1);
            let xc = c.mul_x(1);
            let dxc = xc.derivative()?;
            let c = c.truncate(w)?;
            let xc = xc.truncate(w)?;
            let lhs = c.div(&dxc)?;
            let rhs = (&one - &xc.scale(&q(2))).div(&(&one - &xc))?;
            (lhs, rhs)
        }
        "prime-derivative" => (p_series(w + 1).derivative()?, catalan_gf(w)),
        "dist-composition" => {
            let f = ftilde_series(w);
            let z = f.exp()?.mul_x(1);
            (f, ptilde_series(w).compose(&z)?)
        }
        "marked-prime-growth" => {
            let dp = ptilde_series(w + 1).derivative()?;
            (pstar_series(w), &x + &dp.mul_x(2))
        }
        "marked-prime-decomposition" => {
            let ps = pstar_series(w);
            let xdp = ptilde_series(w + 1).derivative()?.mul_x(1);
            let rhs = &x + &ps.mul_x(1).div(&(&one - &xdp))?;
            (ps, rhs)
        }
        "schroder-quadratic" => {
            let d = ptilde_series(w + 1).derivative()?;
            let lhs = &(&(&d * &d).mul_x(1) + &(&d.mul_x(1) - &d)) + &one;
            (lhs, ExactSeries::zero(w))
        }
        "schroder-gf" => (ptilde_series(w + 1).derivative()?, schroder_gf(w)),
        "marked-dist-growth" => {
            let df = ftilde_series(w + 1).derivative()?;
            (fstar_series(w), &x + &df.mul_x(2).scale(&q(2)))
        }
        "marked-dist-decomposition" => {
            let f = ftilde_series(w + 1);
            marked_decomposition(&fstar_series(w), &f)?
        }
        "marked-dist-decomposition-with-F" => {
            let f = f_closed(w + 1);
            marked_decomposition(&fstar_series(w), &f)?
        }
        "dist-ode" => {
            let f = ftilde_series(w + 1);
            let lhs = f.derivative()?;
            (lhs, picard_step(&f).derivative()?)
        }
        "pf-ode" => {
            let f = f_closed(w + 1);
            let d = f.derivative()?;
            let e = f.truncate(w)?.exp()?;
            let factor = &one + &d.mul_x(1);
            (d, &e * &(&factor * &factor))
        }
        _ => return Err(SeriesError::UnknownIdentity(name.to_string())),
    })
}

/// Both sides of `F* = x + x F* e^G + x^2 G' + x^2 F* G' e^G` for a given
/// `G` of order one more than `fstar`.
fn marked_decomposition(
    fstar: &ExactSeries,
    g: &ExactSeries,
) -> Result<(ExactSeries, ExactSeries), SeriesError> {
    let w = fstar.order();
    let dg = g.derivative()?;
    let eg = g.truncate(w)?.exp()?;
    let x = ExactSeries::x(w);
    let fe = fstar * &eg;
    let rhs = &(&(&x + &fe.mul_x(1)) + &dg.mul_x(2)) + &(&fe * &dg).mul_x(2);
    Ok((fstar.clone(), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scaled(s: &ExactSeries, norm: impl Fn(usize) -> BigInt) -> Vec<BigInt> {
        (1..=s.order())
            .map(|n| {
                let v = s.coeff(n) * int(norm(n));
                assert!(v.is_integer(), "coefficient {n} is not integral");
                v.to_integer()
            })
            .collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn small_sequences() {
        assert_eq!(catalan_numbers(5), big(&[1, 1, 2, 5, 14, 42]));
        assert_eq!(schroder_numbers(5), big(&[1, 2, 6, 22, 90, 394]));
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn parking_function_counts() {
        let sq = |n: usize| factorial(n) * factorial(n);
        assert_eq!(scaled(&f_closed(5), sq), big(&[1, 6, 132, 6384, 544320]));
        assert_eq!(scaled(&f_series(5), sq), big(&[1, 6, 132, 6384, 544320]));
        assert_eq!(scaled(&p_series(5), sq), big(&[1, 2, 24, 720, 40320]));
    }

    #[test]
    fn distribution_counts() {
        assert_eq!(
            scaled(&ptilde_series(5), factorial),
            big(&[1, 2, 12, 132, 2160])
        );
        assert_eq!(
            scaled(&ftilde_series(5), factorial),
            big(&[1, 4, 39, 628, 14285])
        );
        assert_eq!(
            scaled(&pstar_series(5), factorial),
            big(&[1, 2, 12, 144, 2640])
        );
        assert_eq!(
            scaled(&fstar_series(5), factorial),
            big(&[1, 4, 48, 936, 25120])
        );
    }

    #[test]
    fn prime_derivative_coefficient() {
        assert_eq!(p_series(4).derivative().unwrap().coeff(2), &q(2));
    }

    #[test]
    fn picard_iteration_fixes_a_prefix_each_round() {
        let order = 10;
        let (limit, rounds) = solve_ftilde(order).unwrap();
        assert!(rounds <= order + 1);
        let mut f = ExactSeries::x(order);
        for k in 1..order {
            f = picard_step(&f);
            // after k rounds the coefficients of x^0..=x^(k+1) are final
            assert_eq!(
                &f.coeffs()[..=k + 1],
                &limit.coeffs()[..=k + 1],
                "round {k}"
            );
        }
    }

    #[test]
    fn every_identity_holds_to_order_twelve() {
        for report in check_all(12) {
            if !report.identity.informational {
                assert!(report.holds(), "{}", report.line());
            }
        }
    }

    #[test]
    fn reading_the_marked_decomposition_with_f_fails() {
        let report = check_identity("marked-dist-decomposition-with-F", 12).unwrap();
        assert!(matches!(
            report.outcome,
            Err(SeriesError::IdentityViolated { .. })
        ));
        assert!(report.line().starts_with("INFO"));
    }

    #[test]
    fn unknown_identity() {
        assert_eq!(
            check_identity("nope", 3),
            Err(SeriesError::UnknownIdentity("nope".into()))
        );
    }

    #[test]
    fn violations_name_the_first_bad_coefficient() {
        let a = ExactSeries::x(4);
        let b = ExactSeries::x(4).mul_x(1);
        let err = agree("demo", &a, &b, 4).unwrap_err();
        assert_eq!(
            err,
            SeriesError::IdentityViolated {
                identity: "demo".into(),
                index: 1,
                lhs: "1".into(),
                rhs: "0".into()
            }
        );
    }
}
