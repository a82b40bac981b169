//! Closed-form optima and lower bounds for `N(n,v;4,C')`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Minimum drop cost of a grooming of `K_n` with ratio 4.
pub fn cost_on_n4(n: u32) -> Result<u64> {
    match n {
        0 | 1 => Err(Error::Unsupported(format!("cost of K_{n} with ratio 4"))),
        2 => Ok(2),
        3 => Ok(3),
        4 => Ok(7),
        _ => Ok(binom2(n as u64)),
    }
}

/// Triangle count `t(n)` of a wavelength-minimal grooming of `K_n`, `n >= 5`.
pub fn mon_n4_triangles(n: u32) -> u64 {
    match n % 8 {
        0 | 1 => 0,
        3 | 6 => 1,
        4 | 5 => 2,
        _ => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonProfile {
    pub wavecost: u64,
    pub triangles: u64,
}

/// Wavelength count and triangle count of a wavelength-minimal optimal
/// grooming of `K_n`. For `n = 4` this is the kite plus `P_3` layout.
pub fn mon_n4_profile(n: u32) -> Result<MonProfile> {
    match n {
        0..=3 => Err(Error::Unsupported(format!("wavelength profile of K_{n}"))),
        4 => Ok(MonProfile { wavecost: 2, triangles: 0 }),
        _ => {
            let n = n as i64;
            Ok(MonProfile { wavecost: ceil_div(n * (n - 1), 8) as u64, triangles: mon_n4_triangles(n as u32) })
        }
    }
}

/// Extra cost for even `v > 2w` at `C' = 2`: one when `w = 4`, or when
/// `w = 2` and `v ≡ 0 (mod 4)`.
pub fn delta_even(v: u32, w: u32) -> u64 {
    u64::from(w == 4 || (w == 2 && v.is_multiple_of(4)))
}

/// The transposed reading of [`delta_even`]: one when `w = 2`, or when `w = 4`
/// and `v ≡ 0 (mod 4)`. Kept for comparison only; constructions refute it at
/// `(v, w) = (6, 2)`.
pub fn delta_even_transposed(v: u32, w: u32) -> u64 {
    u64::from(w == 2 || (w == 4 && v.is_multiple_of(4)))
}

/// Extra cost for odd `v > 2w` at `C' = 2`: one when `w = 3` and `v ≡ 3 (mod 4)`.
pub fn delta_odd(v: u32, w: u32) -> u64 {
    u64::from(w == 3 && v % 4 == 3)
}

fn check_two_period(n: u32, v: u32, cprime: u32) -> Result<()> {
    if n <= 4 {
        return Err(Error::Unsupported(format!("closed forms need n > 4, got n = {n}")));
    }
    if v > n {
        return Err(Error::InvalidInstance(format!("v = {v} exceeds n = {n}")));
    }
    if !(1..=3).contains(&cprime) {
        return Err(Error::Unsupported(format!("C' = {cprime}")));
    }
    if v == n && cprime == 3 {
        return Err(Error::Unsupported("v = n with C' = 3".into()));
    }
    Ok(())
}

/// Minimum drop cost of an `N(n,v;4,C')`.
pub fn cost_two_period(n: u32, v: u32, cprime: u32) -> Result<u64> {
    check_two_period(n, v, cprime)?;
    let w = n - v;
    let (bn, bv) = (binom2(n as u64) as i64, binom2(v as u64) as i64);
    let (vi, wi) = (v as i64, w as i64);
    let extra = match cprime {
        1 if v <= w + 1 => 0,
        1 => bv - (vi * wi) / 2,
        2 if w == 0 => ceil_div(bv, 2),
        2 if v <= 2 * w => 0,
        2 if v.is_multiple_of(2) => ceil_div(bv, 2) - vi * wi / 2 + delta_even(v, w) as i64,
        2 => ceil_div(bv - vi * wi + ceil_div(wi, 2), 2) + delta_odd(v, w) as i64,
        _ => 0,
    };
    Ok((bn + extra) as u64)
}

/// Upper bound on the number of neutral edges (edges on `V` inside a
/// triangle, 4-cycle or kite).
pub fn neutral_edge_bound(v: u32, w: u32, cprime: u32) -> Result<u64> {
    let vw = v as u64 * w as u64;
    match cprime {
        1 => Ok(vw / 2),
        2 if v % 2 == 1 => Ok(vw - (w as u64).div_ceil(2)),
        2 => Ok(vw),
        _ => Err(Error::Unsupported(format!("neutral edge bound for C' = {cprime}"))),
    }
}

/// The linear-programming triangle bound for `C' = 3` and its mod-4 rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleBound {
    /// `L(v,w)` as the fraction `l_num / 6`.
    pub l_num: i64,
    pub delta_min: u64,
    pub residue: u64,
    pub slack_ceiling: u64,
}

impl TriangleBound {
    pub fn l_value(&self) -> f64 {
        self.l_num as f64 / 6.0
    }

    pub fn l_ceil(&self) -> i64 {
        ceil_div(self.l_num, 6)
    }
}

pub fn triangle_lower_bound(v: u32, w: u32) -> TriangleBound {
    let (vi, wi) = (v as i64, w as i64);
    let l_num = if v.is_multiple_of(2) {
        vi * (vi + 3) - 6 * vi * wi
    } else if v % 6 == 5 {
        vi * (vi - 1) - 6 * vi * wi + 16
    } else {
        vi * (vi - 1) - 6 * vi * wi
    };
    let residue = (3 * binom2((v + w) as u64)) % 4;
    let floor = ceil_div(l_num, 6).max(0) as u64;
    let delta_min = floor + (residue + 4 - floor % 4) % 4;
    let slack_ceiling = (ceil_div(l_num, 6) + 3).max(3) as u64;
    TriangleBound { l_num, delta_min, residue, slack_ceiling }
}

/// Minimum wavelength count over all cost-optimal `N(n,v;4,C')`.
pub fn wavecost_mon(n: u32, v: u32, cprime: u32) -> Result<u64> {
    check_two_period(n, v, cprime)?;
    let w = n - v;
    let base = || mon_n4_profile(n).map(|p| p.wavecost);
    let (bv, bw) = (binom2(v as u64) as i64, binom2(w as u64) as i64);
    let value = match cprime {
        1 if v <= w => return base(),
        1 => bv,
        2 if w == 0 => ceil_div(bv, 2),
        2 if v <= 2 * w => return base(),
        2 if v.is_multiple_of(2) => ceil_div(2 * bv + bw, 4),
        // ⌈(2·C(v,2) + (w-1)(w+1)/2) / 4⌉ with the half cleared.
        2 => ceil_div(4 * bv + (w as i64).pow(2) - 1, 8),
        _ => {
            let bn = binom2(n as u64) as i64;
            ceil_div(bn + triangle_lower_bound(v, w).delta_min as i64, 4)
        }
    };
    Ok(value as u64)
}

/// Smallest `w` for which the `C' = 3` wavelength optimum meets the ratio-4
/// optimum `⌈n(n-1)/8⌉`.
pub fn mu3(v: u32) -> Result<u64> {
    if v < 4 {
        return Err(Error::Unsupported(format!("mu3 needs v >= 4, got {v}")));
    }
    let t = (v / 6) as u64;
    Ok(match (v, v % 6) {
        (6, _) | (9, _) | (4, _) => 1,
        (10, _) => 2,
        (_, 0) => 1 + t,
        (_, 1) => t,
        (_, 2) => 1 + t,
        (_, 3) => 1 + t,
        (_, 4) => 2 + t,
        _ => 1 + t,
    })
}
