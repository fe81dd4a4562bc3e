use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gf::{
    catalan_numbers, f_closed, factorial, fstar_series, ftilde_series, p_series, pstar_series,
    ptilde_series, schroder_numbers,
};
use crate::ExactSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub f: BigInt,
    pub p: BigInt,
    pub ftilde: BigInt,
    pub ptilde: BigInt,
    pub pstar: BigInt,
    pub fstar: BigInt,
    /// `C_{n-1}`.
    pub catalan: BigInt,
    /// `S_{n-1}`.
    pub schroder: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

pub const TSV_HEADER: [&str; 7] = ["n", "F", "P", "Ftilde", "Ptilde", "Pstar", "Fstar"];

impl CountTable {
    pub fn row(&self, n: usize) -> Option<&CountRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Tab-separated, one header line and one line per `n`.
    pub fn to_tsv(&self) -> String {
        let mut out = TSV_HEADER.join("\t");
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n, r.f, r.p, r.ftilde, r.ptilde, r.pstar, r.fstar
            );
        }
        out
    }
}

/// Exact counts for `n = 1..=max`: `F_n` and `P_n = (2n-2)!` and
/// `Ptilde_n = (n-1)! S_{n-1}` from their closed forms, `Ftilde_n` from the
/// differential equation, and the marked counts from the growth relations.
pub fn closed_counts(max: usize) -> CountTable {
    assert!(max >= 1);
    let c = catalan_numbers(max - 1);
    let s = schroder_numbers(max - 1);
    let sq = |n: usize| factorial(n) * factorial(n);
    let f = integral(&f_closed(max), sq);
    let p = integral(&p_series(max), sq);
    let ftilde = integral(&ftilde_series(max), factorial);
    let ptilde = integral(&ptilde_series(max), factorial);
    let pstar = integral(&pstar_series(max), factorial);
    let fstar = integral(&fstar_series(max), factorial);
    let rows = (1..=max)
        .map(|n| CountRow {
            n,
            f: f[n].clone(),
            p: p[n].clone(),
            ftilde: ftilde[n].clone(),
            ptilde: ptilde[n].clone(),
            pstar: pstar[n].clone(),
            fstar: fstar[n].clone(),
            catalan: c[n - 1].clone(),
            schroder: s[n - 1].clone(),
        })
        .collect();
    CountTable { rows }
}

/// Coefficients times their normalization; every one must be an integer.
fn integral(s: &ExactSeries, norm: impl Fn(usize) -> BigInt) -> Vec<BigInt> {
    (0..=s.order())
        .map(|n| {
            let v: BigRational = s.coeff(n) * BigRational::from_integer(norm(n));
            assert!(
                v.is_integer(),
                "normalized coefficient {n} is {v}, not an integer"
            );
            v.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let t = closed_counts(5);
        let col = |f: fn(&CountRow) -> &BigInt| {
            t.rows
                .iter()
                .map(|r| f(r).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        assert_eq!(col(|r| &r.f), "1 6 132 6384 544320");
        assert_eq!(col(|r| &r.p), "1 2 24 720 40320");
        assert_eq!(col(|r| &r.ftilde), "1 4 39 628 14285");
        assert_eq!(col(|r| &r.ptilde), "1 2 12 132 2160");
        assert_eq!(col(|r| &r.pstar), "1 2 12 144 2640");
        assert_eq!(col(|r| &r.fstar), "1 4 48 936 25120");
        assert_eq!(col(|r| &r.catalan), "1 1 2 5 14");
        assert_eq!(col(|r| &r.schroder), "1 2 6 22 90");
        assert_eq!(t.row(4).unwrap().ptilde, BigInt::from(132));
    }

    #[test]
    fn tsv_layout() {
        let tsv = closed_counts(2).to_tsv();
        assert_eq!(
            tsv,
            "n\tF\tP\tFtilde\tPtilde\tPstar\tFstar\n1\t1\t1\t1\t1\t1\t1\n2\t6\t2\t4\t2\t2\t4\n"
        );
    }

    #[test]
    fn large_rows_stay_exact() {
        let t = closed_counts(20);
        // (2*20-2)! = 38!
        assert_eq!(t.row(20).unwrap().p, factorial(38));
    }
}
