//! The per-line pipeline: primitive recovery, candidate reconstructions, selection
//! and interface fluxes along one grid line.

use super::{RiemannSolver, SchemeConfig, Variant};
use crate::bvd::{select, BvdPolicy, CandidateSet, Needs, SelectScratch};
use crate::euler::{interface_frame, PrimitiveState, StateError};
use crate::physics::Physics;
use crate::reconstruction::{
    average_c6_in_place, mp5_face, muscl_face, thinc_face, weno_z_face, CompactC5,
    InterfaceStates, LineView, MusclParams,
};
use crate::riemann::{glf_flux, hllc_flux, physical_flux};

/// Smallest density and pressure the positivity limiter lets a one-sided update reach.
pub(crate) const POSITIVITY_FLOOR: f64 = 1e-13;
use crate::SolverError;

/// Failure position along the line: an interior cell offset or a face index.
#[derive(Debug)]
pub(crate) enum LineFailure {
    Cell(isize, StateError),
    Face(usize, StateError),
}

#[derive(Clone, Copy, Debug)]
enum Kernel {
    Mp5,
    WenoZ,
    Muscl,
    ThincMild,
    ThincSteep,
}

impl Kernel {
    #[inline]
    fn eval(self, w: &[f64; 6], p: &KernelParams) -> (f64, f64) {
        match self {
            Kernel::Mp5 => mp5_face(w, p.alpha),
            Kernel::WenoZ => weno_z_face(w),
            Kernel::Muscl => muscl_face(w, p.muscl),
            Kernel::ThincMild => thinc_face(w, p.betas.0),
            Kernel::ThincSteep => thinc_face(w, p.betas.1),
        }
    }

    fn target(self, cand: &mut CandidateSet) -> &mut Vec<InterfaceStates> {
        match self {
            Kernel::Mp5 => &mut cand.mp5,
            Kernel::WenoZ => &mut cand.weno_z,
            Kernel::Muscl => &mut cand.muscl,
            Kernel::ThincMild => &mut cand.thinc_mild,
            Kernel::ThincSteep => &mut cand.thinc_steep,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct KernelParams {
    alpha: f64,
    muscl: MusclParams,
    betas: (f64, f64),
}

#[derive(Clone, Debug)]
pub(crate) struct LineKernel {
    n: usize,
    n_ghost: usize,
    physics: Physics,
    variant: Variant,
    riemann: RiemannSolver,
    characteristic: bool,
    face_fallback: bool,
    params: KernelParams,
    needs: Needs,
    kernels: Vec<Kernel>,
    policy: Option<BvdPolicy>,
    compact: Option<CompactC5>,
    /// Padded conservative values per component; filled by the caller.
    pub cons: Vec<Vec<f64>>,
    prim: Vec<Vec<f64>>,
    /// Euler primitives per padded cell, used by the characteristic path.
    prim_cells: Vec<[f64; 4]>,
    cand: CandidateSet,
    selected: Vec<InterfaceStates>,
    scratch: SelectScratch,
    /// Numerical flux per component at faces `0..=n`.
    pub flux: Vec<Vec<f64>>,
    /// Face states replaced by cell averages during the last `process`.
    pub fallback_faces: usize,
    /// Faces whose flux the positivity limiter blended during the last `process`.
    pub limited_faces: usize,
}

impl LineKernel {
    pub fn new(n: usize, n_ghost: usize, physics: Physics, config: &SchemeConfig) -> Result<Self, SolverError> {
        let needs = config.variant.needs();
        let mut kernels = Vec::new();
        if needs.mp5 {
            kernels.push(Kernel::Mp5);
        }
        if needs.weno_z {
            kernels.push(Kernel::WenoZ);
        }
        if needs.muscl {
            kernels.push(Kernel::Muscl);
        }
        if needs.thinc {
            kernels.extend([Kernel::ThincMild, Kernel::ThincSteep]);
        }
        let nc = physics.n_comp();
        let padded = n + 2 * n_ghost;
        let faces = n + 1;
        let per_comp = |on: bool| if on { vec![InterfaceStates::with_faces(faces); nc] } else { Vec::new() };
        let cand = CandidateSet {
            c5: per_comp(needs.c5),
            c6: per_comp(needs.c6),
            mp5: per_comp(needs.mp5),
            weno_z: per_comp(needs.weno_z),
            muscl: per_comp(needs.muscl),
            thinc_mild: per_comp(needs.thinc),
            thinc_steep: per_comp(needs.thinc),
        };
        Ok(Self {
            n,
            n_ghost,
            physics,
            variant: config.variant,
            riemann: config.riemann,
            characteristic: config.characteristic_projection && matches!(physics, Physics::Euler(_)),
            face_fallback: config.face_fallback,
            params: KernelParams { alpha: config.alpha, muscl: config.muscl, betas: config.thinc_betas },
            needs,
            kernels,
            policy: config.bvd_policy(),
            compact: if needs.c5 { Some(CompactC5::new(n)?) } else { None },
            cons: vec![vec![0.0; padded]; nc],
            prim: vec![vec![0.0; padded]; nc],
            prim_cells: vec![[0.0; 4]; if nc == 4 { padded } else { 0 }],
            cand,
            selected: vec![InterfaceStates::with_faces(faces); nc],
            scratch: SelectScratch::default(),
            flux: vec![vec![0.0; faces]; nc],
            fallback_faces: 0,
            limited_faces: 0,
        })
    }

    /// Runs the pipeline on `self.cons` and fills `self.flux`. Returns the number of
    /// cells where the selection switched away from the linear scheme. With
    /// `positivity = Some(lambda)` the fluxes are limited so that `U - lambda F`
    /// stays admissible on both sides of every face.
    pub fn process(
        &mut self,
        normal: [f64; 2],
        glf_alpha: f64,
        periodic: bool,
        positivity: Option<f64>,
    ) -> Result<usize, LineFailure> {
        self.recover_primitives()?;
        self.reconstruct_linear();
        if self.characteristic {
            self.reconstruct_characteristic(normal)?;
        } else {
            self.reconstruct_componentwise();
        }
        let triggered = match &self.policy {
            Some(policy) => {
                let views: Vec<LineView<'_>> = self.prim.iter().map(|p| LineView::new(p, self.ghosts())).collect();
                select(policy, &self.cand, &views, periodic, &mut self.scratch, &mut self.selected)
            }
            None => 0,
        };
        self.compute_fluxes(normal, glf_alpha)?;
        self.limited_faces = 0;
        if let Some(lambda) = positivity {
            self.limit_positivity(normal, lambda);
        }
        Ok(triggered)
    }

    /// Blends each face flux with the local Lax-Friedrichs flux, keeping the largest
    /// high-order weight for which both one-sided updates stay admissible.
    fn limit_positivity(&mut self, normal: [f64; 2], lambda: f64) {
        let Physics::Euler(gas) = self.physics else { return };
        let g = self.n_ghost;
        let gamma = gas.gamma();
        for k in 0..=self.n {
            let ul: [f64; 4] = std::array::from_fn(|c| self.cons[c][g + k - 1]);
            let ur: [f64; 4] = std::array::from_fn(|c| self.cons[c][g + k]);
            let admissible = |f: &[f64; 4]| {
                admissible(std::array::from_fn(|c| ul[c] - lambda * f[c]), gamma)
                    && admissible(std::array::from_fn(|c| ur[c] + lambda * f[c]), gamma)
            };
            let high: [f64; 4] = std::array::from_fn(|c| self.flux[c][k]);
            if admissible(&high) {
                continue;
            }
            let wl = PrimitiveState::from_array(self.prim_cells[g + k - 1]);
            let wr = PrimitiveState::from_array(self.prim_cells[g + k]);
            let speed = |w: &PrimitiveState| w.normal_velocity(normal).abs() + (gamma * w.p / w.rho).sqrt();
            let alpha = speed(&wl).max(speed(&wr));
            let (fl, fr) = (physical_flux(&wl, normal, &gas), physical_flux(&wr, normal, &gas));
            let low: [f64; 4] = std::array::from_fn(|c| 0.5 * (fl[c] + fr[c]) - 0.5 * alpha * (ur[c] - ul[c]));
            let blend = |theta: f64| -> [f64; 4] { std::array::from_fn(|c| theta * high[c] + (1.0 - theta) * low[c]) };
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                if admissible(&blend(mid)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            for (c, v) in blend(lo).into_iter().enumerate() {
                self.flux[c][k] = v;
            }
            self.limited_faces += 1;
        }
    }

    fn ghosts(&self) -> usize {
        self.n_ghost
    }

    fn recover_primitives(&mut self) -> Result<(), LineFailure> {
        let g = self.ghosts() as isize;
        match self.physics {
            Physics::Advection { .. } => self.prim[0].copy_from_slice(&self.cons[0]),
            Physics::Euler(_) => {
                let [c0, c1, c2, c3] = &self.cons[..] else { unreachable!() };
                let [p0, p1, p2, p3] = &mut self.prim[..] else { unreachable!() };
                let cons = c0.iter().zip(c1.iter()).zip(c2.iter()).zip(c3.iter());
                let prim = p0.iter_mut().zip(p1.iter_mut()).zip(p2.iter_mut()).zip(p3.iter_mut());
                for (m, ((((&a, &b), &c), &d), (((w0, w1), w2), w3))) in cons.zip(prim).enumerate() {
                    let w = &mut self.prim_cells[m];
                    self.physics.cons_to_prim(&[a, b, c, d], w).map_err(|e| LineFailure::Cell(m as isize - g, e))?;
                    (*w0, *w1, *w2, *w3) = (w[0], w[1], w[2], w[3]);
                }
            }
        }
        Ok(())
    }

    fn reconstruct_linear(&mut self) {
        let Some(compact) = &self.compact else { return };
        let g = self.ghosts();
        let alpha = self.params.alpha;
        let view = |c: usize| LineView::new(&self.prim[c], g);
        match &mut self.cand.c5[..] {
            [a, b, c, d] => compact.reconstruct_batch([view(0), view(1), view(2), view(3)], alpha, [a, b, c, d]),
            c5 => {
                for (c, out) in c5.iter_mut().enumerate() {
                    compact.reconstruct_into(view(c), alpha, out);
                }
            }
        }
        if self.needs.c6 {
            for (c6, c5) in self.cand.c6.iter_mut().zip(&self.cand.c5) {
                c6.copy_from(c5);
                average_c6_in_place(c6);
            }
        }
    }

    fn reconstruct_componentwise(&mut self) {
        let g = self.ghosts();
        for &kernel in &self.kernels {
            let params = self.params;
            let target = kernel.target(&mut self.cand);
            for (c, line) in self.prim.iter().enumerate() {
                target[c].fill_from_windows(LineView::new(line, g), |w| kernel.eval(w, &params));
            }
        }
    }

    /// Nonlinear candidates in local characteristic variables, one frozen frame per face.
    fn reconstruct_characteristic(&mut self, normal: [f64; 2]) -> Result<(), LineFailure> {
        if self.kernels.is_empty() {
            return Ok(());
        }
        let Physics::Euler(gas) = self.physics else { return Ok(()) };
        let start = self.ghosts() - 3;
        let windows = self.prim_cells[start..].windows(6).take(self.n + 1);
        for (k, cells) in windows.enumerate() {
            let wl = PrimitiveState::from_array(cells[2]);
            let wr = PrimitiveState::from_array(cells[3]);
            let frame = interface_frame(&wl, &wr, normal, &gas).map_err(|e| LineFailure::Face(k, e))?;
            let proj = frame.projector();
            let chars: [[f64; 4]; 6] = std::array::from_fn(|m| proj.to_characteristic(cells[m]));
            for &kernel in &self.kernels {
                let mut left = [0.0; 4];
                let mut right = [0.0; 4];
                for q in 0..4 {
                    let w: [f64; 6] = std::array::from_fn(|m| chars[m][q]);
                    (left[q], right[q]) = kernel.eval(&w, &self.params);
                }
                let (left, right) = (proj.from_characteristic(left), proj.from_characteristic(right));
                let target = kernel.target(&mut self.cand);
                for c in 0..4 {
                    target[c].left[k] = left[c];
                    target[c].right[k] = right[c];
                }
            }
        }
        Ok(())
    }

    fn compute_fluxes(&mut self, normal: [f64; 2], glf_alpha: f64) -> Result<(), LineFailure> {
        let states: &[InterfaceStates] = match self.variant {
            Variant::Mp5 => &self.cand.mp5,
            Variant::WenoZ => &self.cand.weno_z,
            Variant::C5 => &self.cand.c5,
            Variant::C6 => &self.cand.c6,
            _ => &self.selected,
        };
        let flux = &mut self.flux;
        self.fallback_faces = 0;
        match self.physics {
            Physics::Advection { velocity } => {
                let a = velocity[0] * normal[0] + velocity[1] * normal[1];
                let diss = match self.riemann {
                    RiemannSolver::Hllc => a.abs(),
                    RiemannSolver::Glf => glf_alpha.max(a.abs()),
                };
                for (k, f) in flux[0].iter_mut().enumerate() {
                    let (l, r) = (states[0].left[k], states[0].right[k]);
                    *f = 0.5 * a * (l + r) - 0.5 * diss * (r - l);
                }
            }
            Physics::Euler(gas) => {
                let side = |k: usize, left: bool| {
                    let v: [f64; 4] =
                        std::array::from_fn(|c| if left { states[c].left[k] } else { states[c].right[k] });
                    PrimitiveState::from_array(v)
                };
                let g = self.n_ghost;
                for k in 0..=self.n {
                    let (mut wl, mut wr) = (side(k, true), side(k, false));
                    if self.face_fallback {
                        if wl.validate().is_err() {
                            wl = PrimitiveState::from_array(self.prim_cells[g + k - 1]);
                            self.fallback_faces += 1;
                        }
                        if wr.validate().is_err() {
                            wr = PrimitiveState::from_array(self.prim_cells[g + k]);
                            self.fallback_faces += 1;
                        }
                    }
                    let f = match self.riemann {
                        RiemannSolver::Hllc => hllc_flux(&wl, &wr, normal, &gas),
                        RiemannSolver::Glf => wl
                            .validate()
                            .and_then(|_| wr.validate())
                            .map(|_| glf_flux(&wl, &wr, normal, &gas, glf_alpha)),
                    }
                    .map_err(|e| LineFailure::Face(k, e))?;
                    for (c, v) in f.iter().enumerate() {
                        flux[c][k] = *v;
                    }
                }
            }
        }
        Ok(())
    }
}

fn admissible(u: [f64; 4], gamma: f64) -> bool {
    u[0] >= POSITIVITY_FLOOR
        && (gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]) >= POSITIVITY_FLOOR
}
