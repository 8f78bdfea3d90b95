//! Quadric families with SO(ℓ−1,ℓ+1), SO*(4m+2) and SU(t+s, r+t+s) symmetry.

use crate::cr::{CPoly, DefiningSystem};
use crate::error::{Error, Result};
use crate::exact::RatPoly;

use super::e6::herm;

/// `Im w^{ij} = Im(z^i z̄^j)` for `i < j ≤ ℓ−1`.
pub fn so_defining(ell: usize) -> Result<DefiningSystem> {
    if ell < 4 {
        return Err(Error::InvalidParams("ℓ must be at least 4".into()));
    }
    let n = ell - 1;
    let phi = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).map(|(i, j)| herm(n, &[(1, i, j)]).im).collect();
    DefiningSystem::new(n, phi)
}

/// Coordinates `z^1..z^m, ζ^1..ζ^m`; for each `i < j` the Im and Re parts of
/// `z^i z̄^j + ζ^j ζ̄^i` and `z^i ζ̄^j − z^j ζ̄^i`, then `Im w^i = |z^i|² + |ζ^i|²`.
///
/// These are the components of the quaternionic Hermitian form `q qᴴ` with
/// `q = z + ζ̄ j`; see [`so_star_printed_defining`] for the printed variant.
pub fn so_star_defining(m: usize) -> Result<DefiningSystem> {
    so_star_with(m, |z, zeta, i, j| {
        (herm(2 * m, &[(1, z(i), z(j)), (1, zeta(j), zeta(i))]), herm(2 * m, &[(1, z(i), zeta(j)), (-1, z(j), zeta(i))]))
    })
}

/// The printed system with `z^i z̄^j + ζ^i ζ̄^j` and `z^i ζ̄^j + ζ^i z̄^j`; its
/// symmetry algebra is far smaller than `so*(4m+2)`.
pub fn so_star_printed_defining(m: usize) -> Result<DefiningSystem> {
    so_star_with(m, |z, zeta, i, j| {
        (herm(2 * m, &[(1, z(i), z(j)), (1, zeta(i), zeta(j))]), herm(2 * m, &[(1, z(i), zeta(j)), (1, zeta(i), z(j))]))
    })
}

fn so_star_with(m: usize, forms: impl Fn(&dyn Fn(usize) -> usize, &dyn Fn(usize) -> usize, usize, usize) -> (CPoly, CPoly)) -> Result<DefiningSystem> {
    if m < 2 {
        return Err(Error::InvalidParams("m must be at least 2".into()));
    }
    let z = |i: usize| i;
    let zeta = move |i: usize| m + i;
    let mut phi: Vec<RatPoly> = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let (same, mixed) = forms(&z, &zeta, i, j);
            phi.extend([same.im.clone(), mixed.im.clone(), same.re, mixed.re]);
        }
    }
    for i in 1..=m {
        phi.push(herm(2 * m, &[(1, z(i), z(i)), (1, zeta(i), zeta(i))]).re);
    }
    DefiningSystem::new(2 * m, phi)
}

/// Shape of the SU family: `r` plain, `t` paired coordinates per row, `s` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuShape {
    pub t: usize,
    pub r: usize,
    pub s: usize,
}

impl SuShape {
    pub fn new(t: usize, r: usize, s: usize) -> Result<Self> {
        if s < 1 || (r == 0 && t == 0) {
            return Err(Error::InvalidParams("need s ≥ 1 and (r, t) ≠ (0, 0)".into()));
        }
        Ok(SuShape { t, r, s })
    }

    /// `(p, q)` of `su(p, q)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.t + self.s, self.r + self.t + self.s)
    }

    pub fn cr_dim(&self) -> usize {
        self.s * (self.r + 2 * self.t)
    }

    pub fn cr_codim(&self) -> usize {
        self.s * self.s
    }

    pub fn real_dim(&self) -> usize {
        self.s * (2 * self.r + 4 * self.t + self.s)
    }
}

/// Coordinates `z_{aμ}, u_{bA}, v_{cB}` (row-major); for each `(a, c)` the
/// Hermitian sum `S_ac`, with `Im` for `a < c` and `Re` otherwise.
pub fn su_defining(shape: SuShape) -> Result<DefiningSystem> {
    let SuShape { t, r, s } = shape;
    let n = shape.cr_dim();
    let z = |a: usize, mu: usize| (a - 1) * r + mu;
    let u = |a: usize, k: usize| s * r + (a - 1) * t + k;
    let v = |a: usize, k: usize| s * r + s * t + (a - 1) * t + k;
    let mut phi = Vec::new();
    for a in 1..=s {
        for c in 1..=s {
            let mut terms: Vec<(i64, usize, usize)> = (1..=r).map(|mu| (1, z(a, mu), z(c, mu))).collect();
            terms.extend((1..=t).map(|k| (1, u(a, k), v(c, k))));
            terms.extend((1..=t).map(|k| (1, v(a, k), u(c, k))));
            let h = herm(n, &terms);
            phi.push(if a < c { h.im } else { h.re });
        }
    }
    DefiningSystem::new(n, phi)
}
