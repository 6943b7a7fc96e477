//! The normalization constants `c_{d,N} = (-1)^{N(N-1)/2} (2*pi*i)^d`,
//! tracked symbolically as a sign and a power of `2*pi*i`, and their two
//! recursions.

use crate::report::VerificationReport;

/// `sign * (2*pi*i)^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoPiIPower {
    pub sign: i8,
    pub power: u32,
}

impl TwoPiIPower {
    pub fn mul(self, other: TwoPiIPower) -> TwoPiIPower {
        TwoPiIPower {
            sign: self.sign * other.sign,
            power: self.power + other.power,
        }
    }

    pub fn negate_if(self, flag: bool) -> TwoPiIPower {
        TwoPiIPower {
            sign: if flag { -self.sign } else { self.sign },
            power: self.power,
        }
    }
}

/// `c_{d,N} = (-1)^{N(N-1)/2} (2*pi*i)^d`.
pub fn c(d: u32, n: u32) -> TwoPiIPower {
    let exp = if n >= 2 { n as u64 * (n as u64 - 1) / 2 } else { 0 };
    TwoPiIPower {
        sign: if exp % 2 == 0 { 1 } else { -1 },
        power: d,
    }
}

/// Checks `c_{d,N} = (-1)^{N-1} c_{d,N-1}` for all `d <= d_max`,
/// `1 <= N <= n_max`, and `c_{p+q,m+n} = (-1)^{mn} c_{p,m} c_{q,n}` for
/// all `p+q <= d_max`, `m+n <= n_max`.
pub fn verify_constants(d_max: u32, n_max: u32) -> VerificationReport {
    let report = VerificationReport::new(
        "normalization-constants",
        alloc::vec![("d_max", d_max as i64), ("n_max", n_max as i64)],
    );
    let mut checked: usize = 0;
    let mut ok = true;

    for d in 0..=d_max {
        for n in 1..=n_max {
            let lhs = c(d, n);
            let rhs = c(d, n - 1).negate_if((n - 1) % 2 == 1);
            ok &= lhs == rhs;
            checked += 1;
        }
    }
    for p in 0..=d_max {
        for q in 0..=(d_max - p) {
            for m in 0..=n_max {
                for n in 0..=(n_max - m) {
                    let lhs = c(p + q, m + n);
                    let rhs = c(p, m).mul(c(q, n)).negate_if((m * n) % 2 == 1);
                    ok &= lhs == rhs;
                    checked += 1;
                }
            }
        }
    }
    report
        .with_result(ok, checked, checked)
        .detail("instances", alloc::format!("{}", checked))
}
