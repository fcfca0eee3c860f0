use crate::euler::{prim_to_cons, roe_average, sound_speed, GasModel, PrimitiveState, StateError};

/// Flux of (mass, x-momentum, y-momentum, energy) through a face with unit `normal`.
pub type FluxVector = [f64; 4];

pub fn physical_flux(w: &PrimitiveState, normal: [f64; 2], gas: &GasModel) -> FluxVector {
    let un = w.normal_velocity(normal);
    let energy = prim_to_cons(w, gas).energy;
    [
        w.rho * un,
        w.rho * un * w.u + w.p * normal[0],
        w.rho * un * w.v + w.p * normal[1],
        (energy + w.p) * un,
    ]
}

/// Signal-speed estimates bounding the Riemann fan, plus the contact speed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpeeds {
    pub left: f64,
    pub star: f64,
    pub right: f64,
}

pub fn wave_speeds(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    normal: [f64; 2],
    gas: &GasModel,
) -> Result<WaveSpeeds, StateError> {
    let roe = roe_average(wl, wr, normal, gas)?;
    let (unl, unr) = (wl.normal_velocity(normal), wr.normal_velocity(normal));
    let (cl, cr) = (sound_speed(wl, gas), sound_speed(wr, gas));
    let left = (unl - cl).min(roe.normal_velocity - roe.sound_speed);
    let right = (unr + cr).max(roe.normal_velocity + roe.sound_speed);
    let ml = wl.rho * (left - unl);
    let mr = wr.rho * (right - unr);
    let star = (wr.p - wl.p + ml * unl - mr * unr) / (ml - mr);
    Ok(WaveSpeeds { left, star, right })
}

/// HLLC flux with Einfeldt-type outer wave speeds.
pub fn hllc_flux(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    normal: [f64; 2],
    gas: &GasModel,
) -> Result<FluxVector, StateError> {
    wl.validate()?;
    wr.validate()?;
    let s = wave_speeds(wl, wr, normal, gas)?;
    if s.left >= 0.0 {
        return Ok(physical_flux(wl, normal, gas));
    }
    if s.right <= 0.0 {
        return Ok(physical_flux(wr, normal, gas));
    }
    let (w, sk) = if s.star >= 0.0 { (wl, s.left) } else { (wr, s.right) };
    let tangent = [-normal[1], normal[0]];
    let un = w.normal_velocity(normal);
    let ut = w.u * tangent[0] + w.v * tangent[1];
    let q = prim_to_cons(w, gas).to_array();
    let factor = w.rho * (sk - un) / (sk - s.star);
    let star = [
        factor,
        factor * (s.star * normal[0] + ut * tangent[0]),
        factor * (s.star * normal[1] + ut * tangent[1]),
        factor * (q[3] / w.rho + (s.star - un) * (s.star + w.p / (w.rho * (sk - un)))),
    ];
    let f = physical_flux(w, normal, gas);
    Ok(std::array::from_fn(|k| f[k] + sk * (star[k] - q[k])))
}

/// Global Lax-Friedrichs flux with dissipation coefficient `alpha`.
pub fn glf_flux(
    wl: &PrimitiveState,
    wr: &PrimitiveState,
    normal: [f64; 2],
    gas: &GasModel,
    alpha: f64,
) -> FluxVector {
    let (fl, fr) = (physical_flux(wl, normal, gas), physical_flux(wr, normal, gas));
    let (ql, qr) = (prim_to_cons(wl, gas).to_array(), prim_to_cons(wr, gas).to_array());
    std::array::from_fn(|k| 0.5 * (fl[k] + fr[k]) - 0.5 * alpha * (qr[k] - ql[k]))
}
