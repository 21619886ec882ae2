//! Cusp regions in Langlands coordinates.

use super::{MaximalParabolic, SL3Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    FN0,
    F0,
    F1,
    F2,
}

/// Inequalities as typeset: `F_N0` by `y1, u1 > 0` and `-1/2 < v1, x1, t1 < 1/2`;
/// `F_0` adds `v1 + x1, v1 + t1, x1 + t1 > 0`; `F_j` adds `v_j^2 + u_j^2 >= 1`.
pub fn region_membership(y: &SL3Point, region: Region) -> bool {
    let l = y.coords(MaximalParabolic::P1);
    let (v, u, x, t) = (l.z.x, l.z.y, l.x, l.t);
    let open = |a: f64| -0.5 < a && a < 0.5;
    let fn0 = l.y > 0.0 && u > 0.0 && open(v) && open(x) && open(t);
    if region == Region::FN0 {
        return fn0;
    }
    let f0 = fn0 && v + x > 0.0 && v + t > 0.0 && x + t > 0.0;
    let j = match region {
        Region::F1 => MaximalParabolic::P1,
        Region::F2 => MaximalParabolic::P2,
        _ => return f0,
    };
    let z = y.coords(j).z;
    f0 && z.x * z.x + z.y * z.y >= 1.0
}

/// Indicators of `F` (taken as `F_1 cap F_2`), `D_j^T = {y_j >= T} cap F`,
/// `D_0^T = D_1^T cap D_2^T` and `F_T = F \ (D_1^T cup D_2^T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuspIndicators {
    pub f: bool,
    pub d1: bool,
    pub d2: bool,
    pub d0: bool,
    pub f_t: bool,
}

impl CuspIndicators {
    /// `1_F - 1_{D_1} - 1_{D_2} + 1_{D_0}`.
    pub fn inclusion_exclusion(&self) -> i32 {
        self.f as i32 - self.d1 as i32 - self.d2 as i32 + self.d0 as i32
    }
}

pub fn cusp_indicators(y: &SL3Point, t: f64) -> CuspIndicators {
    let f = region_membership(y, Region::F1) && region_membership(y, Region::F2);
    let d1 = f && y.coords(MaximalParabolic::P1).y >= t;
    let d2 = f && y.coords(MaximalParabolic::P2).y >= t;
    let d0 = d1 && d2;
    CuspIndicators { f, d1, d2, d0, f_t: f && !(d1 || d2) }
}
