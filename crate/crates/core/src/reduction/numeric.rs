//! Numerical cross-checks: an adaptive Dormand–Prince 5(4) integrator for
//! reduced ODEs and finite-difference residuals of PDE solutions.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{ReducedODE, ReductionError, Result};
use crate::expr::{Atom, Deriv, DerivIndex, Expr};
use crate::jet::EquationInstance;

/// Internal integration tolerance (absolute and relative).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Leading coefficients below this magnitude abort the integration.
const SINGULAR: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    /// Column names: the independent variable, then `h, h', …` up to the
    /// order of the equation.
    pub columns: Vec<String>,
    pub points: Vec<(f64, Vec<f64>)>,
}

impl Trajectory {
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> std::result::Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for (z, y) in &self.points {
            let mut row = vec![z.to_string()];
            row.extend(y.iter().map(f64::to_string));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Largest `|h(z) - exact(z)|` over the stored points.
    pub fn max_deviation(&self, exact: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .map(|(z, y)| (y[0] - exact(*z)).abs())
            .fold(0.0, f64::max)
    }
}

struct Rhs<'a> {
    rhs: Expr,
    lead: Expr,
    order: u8,
    dep: &'a str,
    var: &'a str,
    params: &'a BTreeMap<String, f64>,
}

impl Rhs<'_> {
    fn env<'b>(&'b self, z: f64, y: &'b [f64]) -> impl Fn(&Atom) -> Option<f64> + 'b {
        move |a: &Atom| match a {
            Atom::Sym(s) if s.name() == self.var => Some(z),
            Atom::Sym(s) if s.name() == self.dep => Some(y[0]),
            Atom::Sym(s) => self.params.get(s.name()).copied(),
            Atom::Deriv(Deriv {
                dep,
                index: DerivIndex::Prime(k),
            }) if dep.name() == self.dep => y.get(*k as usize).copied(),
            _ => None,
        }
    }

    fn eval(&self, z: f64, y: &[f64]) -> Result<Vec<f64>> {
        let env = self.env(z, y);
        let abort = |reason: String| ReductionError::IntegrationAbort { z, reason };
        let lead = self
            .lead
            .eval(&env)
            .ok_or_else(|| abort(format!("cannot evaluate {}", self.lead)))?;
        if !lead.is_finite() || lead.abs() < SINGULAR {
            return Err(abort(format!("leading coefficient {lead:e}")));
        }
        let top = self
            .rhs
            .eval(&env)
            .ok_or_else(|| abort(format!("cannot evaluate {}", self.rhs)))?;
        if !top.is_finite() {
            return Err(abort("non-finite derivative".into()));
        }
        let n = self.order as usize;
        let mut d = y[1..n].to_vec();
        d.push(top);
        Ok(d)
    }
}

// Dormand–Prince tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `r` from `span.0` to `span.1` with initial data
/// `h, h', …, h^(n-1)` at `span.0`.
pub fn integrate_numeric(
    r: &ReducedODE,
    params: &BTreeMap<String, f64>,
    initial: &[f64],
    span: (f64, f64),
    tol: f64,
) -> Result<Trajectory> {
    let order = r.order();
    if order == 0 {
        return Err(ReductionError::Unsupported(format!(
            "{} has no derivative of {}",
            r.lhs, r.dep
        )));
    }
    if initial.len() != order as usize {
        return Err(ReductionError::Unsupported(format!(
            "order {order} equation needs {order} initial values, got {}",
            initial.len()
        )));
    }
    let top = Atom::prime(&r.dep, order);
    let rhs = r.lhs.solve_for(&top)?;
    let lead = r.lhs.diff(&top);
    let f = Rhs {
        rhs,
        lead,
        order,
        dep: &r.dep,
        var: &r.var,
        params,
    };

    let mut columns = vec![r.var.clone()];
    columns.extend((0..=order).map(|k| format!("{}{}", r.dep, "'".repeat(k as usize))));
    // stored rows carry the top derivative too, taken from the equation
    let row = |z: f64, y: &[f64]| -> Result<Vec<f64>> {
        let mut out = y.to_vec();
        out.push(*f.eval(z, y)?.last().expect("order >= 1"));
        Ok(out)
    };
    let (z0, z1) = span;
    let dir = if z1 >= z0 { 1.0 } else { -1.0 };
    let mut z = z0;
    let mut y = initial.to_vec();
    let mut points = vec![(z, row(z, &y)?)];
    let mut step = dir * (z1 - z0).abs().max(1e-3) * 1e-3;
    let n = y.len();
    while dir * (z1 - z) > 1e-14 * (1.0 + z1.abs()) {
        if dir * (z + step - z1) > 0.0 {
            step = z1 - z;
        }
        let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
        for s in 0..7 {
            let ys: Vec<f64> = (0..n)
                .map(|i| y[i] + step * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>())
                .collect();
            k.push(f.eval(z + C[s] * step, &ys)?);
        }
        let y5: Vec<f64> = (0..n)
            .map(|i| y[i] + step * (0..7).map(|s| B5[s] * k[s][i]).sum::<f64>())
            .collect();
        let y4: Vec<f64> = (0..n)
            .map(|i| y[i] + step * (0..7).map(|s| B4[s] * k[s][i]).sum::<f64>())
            .collect();
        let sq: f64 = (0..n)
            .map(|i| {
                let scale = tol + tol * y[i].abs().max(y5[i].abs());
                ((y5[i] - y4[i]) / scale).powi(2)
            })
            .sum();
        let err = (sq / n as f64).sqrt();
        if !err.is_finite() {
            return Err(ReductionError::IntegrationAbort {
                z,
                reason: "non-finite error estimate".into(),
            });
        }
        if err <= 1.0 {
            z += step;
            y = y5;
            points.push((z, row(z, &y)?));
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        step *= factor;
        if step.abs() < 1e-14 * (1.0 + z.abs()) {
            return Err(ReductionError::IntegrationAbort {
                z,
                reason: "step size underflow".into(),
            });
        }
    }
    Ok(Trajectory { columns, points })
}

/// Rectangular `(t, x)` grid with equal spacing in both directions.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Grid {
    pub t: (f64, f64),
    pub x: (f64, f64),
    pub step: f64,
}

/// Second-order central stencil for the `k`-th derivative: offsets `-r..=r`.
fn stencil(k: u8) -> Option<&'static [f64]> {
    Some(match k {
        0 => &[1.0],
        1 => &[-0.5, 0.0, 0.5],
        2 => &[1.0, -2.0, 1.0],
        3 => &[-0.5, 1.0, 0.0, -1.0, 0.5],
        4 => &[1.0, -4.0, 6.0, -4.0, 1.0],
        _ => return None,
    })
}

/// Maximum interior residual of `eq` evaluated on finite differences of `u`.
pub fn pde_residual_numeric(
    eq: &EquationInstance,
    u: &dyn Fn(f64, f64) -> f64,
    params: &BTreeMap<String, f64>,
    grid: &Grid,
) -> Result<f64> {
    let jets: Vec<(u8, u8)> = eq
        .lhs
        .atoms_deep()
        .iter()
        .filter_map(|a| match a {
            Atom::Deriv(Deriv {
                dep,
                index: DerivIndex::Partial { t, x },
            }) if dep.name() == "u" => Some((*t, *x)),
            _ => None,
        })
        .collect();
    for &(a, b) in &jets {
        if stencil(a).is_none() || stencil(b).is_none() {
            return Err(ReductionError::Grid(format!("no stencil for u_t^{a}x^{b}")));
        }
    }
    let h = grid.step;
    if h.is_nan() || h <= 0.0 {
        return Err(ReductionError::Grid(format!("spacing {h}")));
    }
    let nt = ((grid.t.1 - grid.t.0) / h).round() as usize + 1;
    let nx = ((grid.x.1 - grid.x.0) / h).round() as usize + 1;
    let rt = jets
        .iter()
        .map(|j| j.0 as usize)
        .max()
        .unwrap_or(0)
        .div_ceil(2);
    let rx = jets
        .iter()
        .map(|j| j.1 as usize)
        .max()
        .unwrap_or(0)
        .div_ceil(2);
    if nt <= 2 * rt || nx <= 2 * rx {
        return Err(ReductionError::Grid(format!(
            "{nt}x{nx} grid has no interior points for stencil radius ({rt}, {rx})"
        )));
    }
    let tv = |i: usize| grid.t.0 + i as f64 * h;
    let xv = |j: usize| grid.x.0 + j as f64 * h;
    let values: Vec<Vec<f64>> = (0..nt)
        .map(|i| (0..nx).map(|j| u(tv(i), xv(j))).collect())
        .collect();
    let mut worst = 0.0f64;
    for i in rt..nt - rt {
        for j in rx..nx - rx {
            let mut derivs: BTreeMap<(u8, u8), f64> = BTreeMap::new();
            for &(a, b) in &jets {
                let (sa, sb) = (stencil(a).unwrap_or(&[]), stencil(b).unwrap_or(&[]));
                let (ra, rb) = (sa.len() / 2, sb.len() / 2);
                let mut acc = 0.0;
                for (p, wa) in sa.iter().enumerate() {
                    for (q, wb) in sb.iter().enumerate() {
                        if *wa != 0.0 && *wb != 0.0 {
                            acc += wa * wb * values[i + p - ra][j + q - rb];
                        }
                    }
                }
                derivs.insert((a, b), acc / h.powi((a + b) as i32));
            }
            let (t, x, uv) = (tv(i), xv(j), values[i][j]);
            let r = eq
                .lhs
                .eval(&|atom: &Atom| match atom {
                    Atom::Sym(s) => match s.name() {
                        "t" => Some(t),
                        "x" => Some(x),
                        "u" => Some(uv),
                        other => params.get(other).copied(),
                    },
                    Atom::Deriv(Deriv {
                        dep,
                        index: DerivIndex::Partial { t, x },
                    }) if dep.name() == "u" => derivs.get(&(*t, *x)).copied(),
                    _ => None,
                })
                .ok_or_else(|| ReductionError::Grid(format!("cannot evaluate {}", eq.lhs)))?;
            worst = worst.max(r.abs());
        }
    }
    Ok(worst)
}

/// `{case, grid, max_residual, rate}` where `rate` is the observed order
/// between spacing `2h` and `h`.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub case: String,
    pub grid: f64,
    pub max_residual: f64,
    pub rate: f64,
}

impl ResidualReport {
    pub fn measure(
        case: &str,
        eq: &EquationInstance,
        u: &dyn Fn(f64, f64) -> f64,
        params: &BTreeMap<String, f64>,
        grid: &Grid,
    ) -> Result<Self> {
        let fine = pde_residual_numeric(eq, u, params, grid)?;
        let coarse = pde_residual_numeric(
            eq,
            u,
            params,
            &Grid {
                step: 2.0 * grid.step,
                ..*grid
            },
        )?;
        Ok(ResidualReport {
            case: case.to_string(),
            grid: grid.step,
            max_residual: fine,
            rate: (coarse / fine).log2(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn constant_solution_of_trivial_equation() {
        let r = ReducedODE::new(parse("h'").unwrap());
        let tr = integrate_numeric(&r, &BTreeMap::new(), &[1.0], (0.0, 1.0), DEFAULT_TOL).unwrap();
        assert!(tr.points.iter().all(|(_, y)| y[0] == 1.0));
        assert_eq!(tr.points.last().unwrap().0, 1.0);
    }

    #[test]
    fn exponential_growth() {
        let r = ReducedODE::new(parse("h' - h").unwrap());
        let tr = integrate_numeric(&r, &BTreeMap::new(), &[1.0], (0.0, 1.0), DEFAULT_TOL).unwrap();
        assert!(tr.max_deviation(f64::exp) < 1e-8);
    }

    #[test]
    fn singular_leading_coefficient_aborts() {
        let r = ReducedODE::new(parse("z*h' - 1").unwrap());
        let err =
            integrate_numeric(&r, &BTreeMap::new(), &[0.0], (0.0, 1.0), DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, ReductionError::IntegrationAbort { z, .. } if z == 0.0));
    }

    #[test]
    fn csv_has_header() {
        let r = ReducedODE::new(parse("h'' + h").unwrap());
        let tr =
            integrate_numeric(&r, &BTreeMap::new(), &[0.0, 1.0], (0.0, 0.1), DEFAULT_TOL).unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("z,h,h',h''\n"));
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let m =
            crate::equivalence::ClassMember::parse(["c1", "c2", "c3", "c4", "c5", "c6"]).unwrap();
        let eq = EquationInstance::from_member(&m);
        let grid = Grid {
            t: (0.0, 1.0),
            x: (0.0, 0.5),
            step: 0.25,
        };
        let err = pde_residual_numeric(&eq, &|_, _| 0.0, &BTreeMap::new(), &grid).unwrap_err();
        assert!(matches!(err, ReductionError::Grid(_)));
    }
}
