//! Solutions `Λ(x,E)`, Floquet multipliers by the integral, Bethe and ODE
//! routes, Bethe roots, and the `l = (2,0,0,0)` Hermite–Krichever data. All
//! numerics run in `f64`.

pub mod bethe;
pub mod hk;
pub mod integral;
pub mod lambda;
pub mod ode;
pub mod quad;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use bethe::{
    bethe_at_energy, bethe_multiplier, bethe_solve, bethe_solve_energy, BetheConfig, BetheSeed,
};
pub use hk::{hk_example_params, HkParams};
pub use integral::{monodromy_integral, monodromy_integral_path};
pub use lambda::{lambda_eval, Lambda, XiNumeric};
pub use ode::monodromy_ode;

use crate::elliptic::Lattice64;
use crate::report::{complex_value, SweepRow};
use crate::spectral::SpectralData;
use crate::{Error, Result};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Integral,
    Bethe,
    Ode,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Integral => "integral",
            Route::Bethe => "bethe",
            Route::Ode => "ode",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integral" => Ok(Route::Integral),
            "bethe" => Ok(Route::Bethe),
            "ode" => Ok(Route::Ode),
            _ => Err(Error::InvalidInput(format!("unknown route {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonodromyResult {
    pub e: C,
    pub k: usize,
    pub route: Route,
    /// `B(E)` with `Λ(x+2ω_k) = B Λ(x)`.
    pub multiplier: C,
    /// Both Floquet multipliers, when the route produces the pair.
    pub multipliers: Option<[C; 2]>,
    pub q_k: Option<u8>,
    pub path: Value,
}

impl MonodromyResult {
    /// `{B, 1/B}`.
    pub fn multiplier_set(&self) -> [C; 2] {
        self.multipliers
            .unwrap_or([self.multiplier, 1.0 / self.multiplier])
    }

    pub fn to_json(&self) -> Value {
        let c = |z: &C| complex_value(z, 17);
        json!({
            "E": c(&self.e),
            "k": self.k,
            "route": self.route.to_string(),
            "multiplier": c(&self.multiplier),
            "q_k": self.q_k,
            "residuals": self.multipliers.map(|m| {
                json!({"pair_product": (m[0] * m[1] - 1.0).norm()})
            }),
            "path": self.path,
        })
    }
}

/// Whether `{a, 1/a}` and `{b, 1/b}` coincide to relative tolerance `tol`.
pub fn sets_agree(a: [C; 2], b: [C; 2], tol: f64) -> bool {
    let close = |x: C, y: C| (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0);
    (close(a[0], b[0]) && close(a[1], b[1])) || (close(a[0], b[1]) && close(a[1], b[0]))
}

/// Multiplier by the chosen route. The integral route needs `e0`.
pub fn multiplier(
    route: Route,
    e: C,
    k: usize,
    sd: &SpectralData,
    lat: &Lattice64,
    e0: Option<C>,
) -> Result<MonodromyResult> {
    match route {
        Route::Ode => monodromy_ode(e, k, sd.l, lat),
        Route::Integral => {
            let e0 = e0
                .ok_or_else(|| Error::InvalidInput("integral route needs a base root E0".into()))?;
            monodromy_integral(e, k, sd, lat, e0)
        }
        Route::Bethe => {
            let xn = XiNumeric::new(sd)?;
            let b = bethe_at_energy(&xn, lat, e, 7)?;
            let m = bethe_multiplier(&b, k, lat)?;
            Ok(MonodromyResult {
                e,
                k,
                route: Route::Bethe,
                multiplier: m,
                multipliers: None,
                q_k: None,
                path: json!({
                    "t": b.t.iter().map(|t| complex_value(t, 17)).collect::<Vec<_>>(),
                    "c": complex_value(&b.c, 17),
                }),
            })
        }
    }
}

/// Multipliers over a list of energies, evaluated in parallel.
pub fn sweep(
    route: Route,
    energies: &[C],
    k: usize,
    sd: &SpectralData,
    lat: &Lattice64,
    e0: Option<C>,
) -> Result<Vec<SweepRow>> {
    energies
        .par_iter()
        .map(|&e| {
            let r = multiplier(route, e, k, sd, lat, e0)?;
            Ok(SweepRow {
                e,
                b: r.multiplier,
                route: route.to_string(),
            })
        })
        .collect()
}
