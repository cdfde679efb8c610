//! Band edges: the real roots of `Q(E)` on a real rectangular lattice.

use rug::Rational;

use super::{spectral_data, Coupling};
use crate::algebra::roots::roots;
use crate::elliptic::{ExactRoots, Lattice};
use crate::hp::field;
use crate::num::CNum;
use crate::{Error, Result};

/// Exact roots attached to a lattice: the stored ones when the lattice was
/// built from roots, otherwise the binary expansions of `e_1` and `e_3` at
/// working precision with `e_2 = -e_1 - e_3`. Only real roots qualify.
pub fn roots_for_lattice<T: CNum>(lat: &Lattice<T>) -> Result<ExactRoots> {
    if let Some(r) = &lat.exact {
        return Ok(r.clone());
    }
    let tol = lat.tolerance() * (1.0 + lat.e.iter().map(|e| e.abs()).fold(0.0, f64::max));
    if lat.e.iter().any(|e| e.im().abs() > tol) {
        return Err(Error::InvalidInput(
            "exact spectral data needs real roots e_i".into(),
        ));
    }
    let e1 = lat.e[0].re_rational();
    let e3 = lat.e[2].re_rational();
    let e2 = -Rational::from(&e1 + &e3);
    ExactRoots::new(e1, e2, e3)
}

/// `E_0 < E_1 < … < E_{2g}`, the roots of `Q`, in increasing order.
pub fn band_edges<T: CNum>(l: Coupling, lat: &Lattice<T>) -> Result<Vec<T>> {
    if !lat.is_rectangular() {
        return Err(Error::NonRectangular);
    }
    let r = roots_for_lattice(lat)?;
    let sd = spectral_data(&field(&r), l)?;
    let rts = roots(&sd.q, &lat.omega1)?;
    let tol = lat.tolerance().sqrt();
    if let Some(z) = rts.iter().find(|z| z.im().abs() > tol * (1.0 + z.abs())) {
        return Err(Error::ComplexRoots(format!("{:?}", z.to_c64())));
    }
    let mut rts: Vec<T> = rts
        .iter()
        .map(|z| T::from_q(z.prec(), &z.re_rational()))
        .collect();
    rts.sort_by(|a, b| a.re().total_cmp(&b.re()));
    Ok(rts)
}
