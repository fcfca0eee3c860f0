use crate::error::SolverError;
use crate::euler::{sound_speed, GasModel, PrimitiveState};

/// Exact solution of the one-dimensional Riemann problem along x. The y-velocity is
/// advected passively with the contact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactRiemann {
    pub left: PrimitiveState,
    pub right: PrimitiveState,
    pub gas: GasModel,
    pub p_star: f64,
    pub u_star: f64,
}

struct Side {
    rho: f64,
    u: f64,
    p: f64,
    c: f64,
}

impl Side {
    fn new(w: &PrimitiveState, gas: &GasModel) -> Self {
        Self { rho: w.rho, u: w.u, p: w.p, c: sound_speed(w, gas) }
    }

    /// Velocity jump across the wave connecting this side to pressure `p`, and its derivative.
    fn jump(&self, p: f64, g: f64) -> (f64, f64) {
        if p > self.p {
            let a = 2.0 / ((g + 1.0) * self.rho);
            let b = (g - 1.0) / (g + 1.0) * self.p;
            let q = (a / (p + b)).sqrt();
            ((p - self.p) * q, q * (1.0 - 0.5 * (p - self.p) / (b + p)))
        } else {
            let r = p / self.p;
            (
                2.0 * self.c / (g - 1.0) * (r.powf((g - 1.0) / (2.0 * g)) - 1.0),
                r.powf(-(g + 1.0) / (2.0 * g)) / (self.rho * self.c),
            )
        }
    }
}

pub fn exact_riemann(
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: &GasModel,
) -> Result<ExactRiemann, SolverError> {
    for w in [left, right] {
        w.validate().map_err(|source| SolverError::InvalidState {
            location: crate::error::Location::Unknown,
            time: 0.0,
            source,
        })?;
    }
    let g = gas.gamma();
    let (l, r) = (Side::new(left, gas), Side::new(right, gas));
    let du = r.u - l.u;
    let gap = 2.0 * (l.c + r.c) / (g - 1.0) - du;
    if gap <= 0.0 {
        return Err(SolverError::Vacuum { gap });
    }
    let residual = |p: f64| {
        let (fl, dl) = l.jump(p, g);
        let (fr, dr) = r.jump(p, g);
        (fl + fr + du, dl + dr)
    };
    let mut p = initial_guess(&l, &r, g);
    let mut f = residual(p).0;
    for _ in 0..200 {
        let (value, slope) = residual(p);
        f = value;
        let mut next = p - value / slope;
        if !(next > 0.0) {
            next = 0.1 * p;
        }
        let change = (next - p).abs() / (0.5 * (next + p));
        p = next;
        if change < 1e-15 {
            f = residual(p).0;
            break;
        }
    }
    let scale = 1.0 + l.c.max(r.c) + l.u.abs().max(r.u.abs());
    if !(f.abs() <= 1e-12 * scale) {
        return Err(SolverError::NoConvergence { residual: f });
    }
    let (fl, _) = l.jump(p, g);
    let (fr, _) = r.jump(p, g);
    let u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
    Ok(ExactRiemann { left: *left, right: *right, gas: *gas, p_star: p, u_star })
}

fn initial_guess(l: &Side, r: &Side, g: f64) -> f64 {
    let (pmin, pmax) = (l.p.min(r.p), l.p.max(r.p));
    let pv = 0.5 * (l.p + r.p) - 0.125 * (r.u - l.u) * (l.rho + r.rho) * (l.c + r.c);
    let pv = pv.max(1e-300);
    if pmax / pmin <= 2.0 && (pmin..=pmax).contains(&pv) {
        return pv;
    }
    if pv < pmin {
        let z = (g - 1.0) / (2.0 * g);
        let num = l.c + r.c - 0.5 * (g - 1.0) * (r.u - l.u);
        return (num / (l.c / l.p.powf(z) + r.c / r.p.powf(z))).powf(1.0 / z).max(1e-300);
    }
    let gl = (2.0 / ((g + 1.0) * l.rho) / ((g - 1.0) / (g + 1.0) * l.p + pv)).sqrt();
    let gr = (2.0 / ((g + 1.0) * r.rho) / ((g - 1.0) / (g + 1.0) * r.p + pv)).sqrt();
    ((gl * l.p + gr * r.p - (r.u - l.u)) / (gl + gr)).max(1e-300)
}

impl ExactRiemann {
    /// Pressure-function residual at the computed star pressure.
    pub fn residual(&self) -> f64 {
        let g = self.gas.gamma();
        let l = Side::new(&self.left, &self.gas);
        let r = Side::new(&self.right, &self.gas);
        l.jump(self.p_star, g).0 + r.jump(self.p_star, g).0 + (r.u - l.u)
    }

    /// Self-similar solution at `xi = (x - x0) / t`.
    pub fn sample(&self, xi: f64) -> PrimitiveState {
        let g = self.gas.gamma();
        let (ps, us) = (self.p_star, self.u_star);
        if xi <= us {
            let w = self.left;
            let c = sound_speed(&w, &self.gas);
            let s = sample_side(xi, &w, c, ps, us, g);
            PrimitiveState { v: w.v, ..s }
        } else {
            let w = self.right;
            let c = sound_speed(&w, &self.gas);
            // Mirror the right side onto the left-side formulas.
            let m = PrimitiveState::new(w.rho, -w.u, 0.0, w.p);
            let s = sample_side(-xi, &m, c, ps, -us, g);
            PrimitiveState { rho: s.rho, u: -s.u, v: w.v, p: s.p }
        }
    }
}

/// Left-facing wave structure; the right side is handled by mirroring.
fn sample_side(
    xi: f64,
    w: &PrimitiveState,
    c: f64,
    ps: f64,
    us: f64,
    g: f64,
) -> PrimitiveState {
    let ratio = ps / w.p;
    let g6 = (g - 1.0) / (g + 1.0);
    if ps > w.p {
        let speed = w.u - c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
        if xi <= speed {
            *w
        } else {
            PrimitiveState::new(w.rho * (ratio + g6) / (g6 * ratio + 1.0), us, 0.0, ps)
        }
    } else {
        let head = w.u - c;
        let tail = us - c * ratio.powf((g - 1.0) / (2.0 * g));
        if xi <= head {
            *w
        } else if xi > tail {
            PrimitiveState::new(w.rho * ratio.powf(1.0 / g), us, 0.0, ps)
        } else {
            let cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (w.u - xi));
            let u = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi);
            PrimitiveState::new(
                w.rho * (cf / c).powf(2.0 / (g - 1.0)),
                u,
                0.0,
                w.p * (cf / c).powf(2.0 * g / (g - 1.0)),
            )
        }
    }
}
