//! Boundary-variation-diminishing selection between candidate reconstructions.
//!
//! Every selector works on a set of components (one for scalar problems, the four
//! primitive variables for Euler). Each component is selected independently; a cell
//! counts as triggered when its criterion holds for at least one component.

use crate::reconstruction::{InterfaceStates, LineView};

pub const DEFAULT_HOCUS_ALPHA: f64 = 7.0;
pub const DEFAULT_MP5_ALPHA: f64 = 4.0;
pub const DEFAULT_THINC_BETAS: (f64, f64) = (1.1, 1.6);
pub const DEFAULT_SMOOTHNESS_THRESHOLD: f64 = 1e6;

/// Total boundary variation of interior cell `j`, i.e. of faces `j` and `j + 1`.
#[inline]
pub fn tbv(states: &InterfaceStates, j: usize) -> f64 {
    (states.left[j] - states.right[j]).abs() + (states.left[j + 1] - states.right[j + 1]).abs()
}

/// True at strict local extrema of the line.
#[inline]
pub fn extra_condition_gate(line: LineView<'_>, j: usize) -> bool {
    let j = j as isize;
    (line.at(j + 1) - line.at(j)) * (line.at(j) - line.at(j - 1)) < 0.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BvdKind {
    Hocus5,
    Hocus6,
    HocusTvd,
    C5T2,
    HocusWenoz,
    Hocus6Extra,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BvdPolicy {
    pub kind: BvdKind,
    pub alpha: f64,
    pub thinc_betas: (f64, f64),
    pub smoothness_threshold: f64,
}

impl BvdPolicy {
    pub fn new(kind: BvdKind) -> Self {
        Self {
            kind,
            alpha: DEFAULT_HOCUS_ALPHA,
            thinc_betas: DEFAULT_THINC_BETAS,
            smoothness_threshold: DEFAULT_SMOOTHNESS_THRESHOLD,
        }
    }
}

/// Interface arrays of every candidate scheme, one entry per component.
/// Schemes not needed by the active policy stay empty.
#[derive(Clone, Debug, Default)]
pub struct CandidateSet {
    pub c5: Vec<InterfaceStates>,
    pub c6: Vec<InterfaceStates>,
    pub mp5: Vec<InterfaceStates>,
    pub weno_z: Vec<InterfaceStates>,
    pub muscl: Vec<InterfaceStates>,
    pub thinc_mild: Vec<InterfaceStates>,
    pub thinc_steep: Vec<InterfaceStates>,
}

/// Which candidates a policy needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Needs {
    pub c5: bool,
    pub c6: bool,
    pub mp5: bool,
    pub weno_z: bool,
    pub muscl: bool,
    pub thinc: bool,
}

impl BvdKind {
    pub fn needs(self) -> Needs {
        let base = Needs { c5: true, ..Needs::default() };
        match self {
            BvdKind::Hocus5 => Needs { mp5: true, ..base },
            BvdKind::Hocus6 | BvdKind::Hocus6Extra => Needs { c6: true, mp5: true, ..base },
            BvdKind::HocusTvd => Needs { c6: true, muscl: true, ..base },
            BvdKind::C5T2 => Needs { thinc: true, ..base },
            BvdKind::HocusWenoz => Needs { c6: true, weno_z: true, ..base },
        }
    }
}

/// Reusable buffers for selection.
#[derive(Clone, Debug, Default)]
pub struct SelectScratch {
    face_marks: Vec<bool>,
    cell_marks: Vec<bool>,
    stage: Vec<InterfaceStates>,
}

/// Runs the policy's selection, writing the final pair per component into `out`.
/// Returns the number of triggered cells.
pub fn select(
    policy: &BvdPolicy,
    candidates: &CandidateSet,
    cells: &[LineView<'_>],
    periodic: bool,
    scratch: &mut SelectScratch,
    out: &mut Vec<InterfaceStates>,
) -> usize {
    match policy.kind {
        BvdKind::Hocus5 => {
            select_hocus(&candidates.c5, &candidates.c5, &candidates.mp5, None, periodic, scratch, out)
        }
        BvdKind::Hocus6 => {
            select_hocus(&candidates.c6, &candidates.c5, &candidates.mp5, None, periodic, scratch, out)
        }
        BvdKind::Hocus6Extra => select_hocus(
            &candidates.c6,
            &candidates.c5,
            &candidates.mp5,
            Some(cells),
            periodic,
            scratch,
            out,
        ),
        BvdKind::HocusTvd => {
            select_hocus(&candidates.c6, &candidates.c5, &candidates.muscl, None, periodic, scratch, out)
        }
        BvdKind::C5T2 => select_c5t2(
            &candidates.c5,
            &candidates.thinc_mild,
            &candidates.thinc_steep,
            periodic,
            scratch,
            out,
        ),
        BvdKind::HocusWenoz => select_hocus_wenoz(
            &candidates.c6,
            &candidates.weno_z,
            cells,
            policy.smoothness_threshold,
            periodic,
            scratch,
            out,
        ),
    }
}

fn copy_all(src: &[InterfaceStates], out: &mut Vec<InterfaceStates>) {
    out.resize_with(src.len(), InterfaceStates::default);
    for (o, s) in out.iter_mut().zip(src) {
        o.copy_from(s);
    }
}

/// Marks face `k` of a line with `n` cells; periodic lines wrap, others clip.
fn mark_face(marks: &mut [bool], k: isize, n: usize, periodic: bool) {
    let n = n as isize;
    if periodic {
        let k = if k < 0 { k + n } else if k > n { k - n } else { k };
        marks[k as usize] = true;
    } else if (0..=n).contains(&k) {
        marks[k as usize] = true;
    }
}

/// On periodic lines faces `0` and `n` are the same face.
fn merge_periodic_marks(marks: &mut [bool], periodic: bool) {
    if periodic {
        let n = marks.len() - 1;
        let m = marks[0] || marks[n];
        marks[0] = m;
        marks[n] = m;
    }
}

/// Starts from `baseline` and, for every cell where the candidate's variation is
/// below that of the upwind compact pair (and `gate` holds, if given), overwrites both
/// states at the four faces `j-1 ..= j+2` with the candidate's.
pub fn select_hocus(
    baseline: &[InterfaceStates],
    c5: &[InterfaceStates],
    candidate: &[InterfaceStates],
    gate: Option<&[LineView<'_>]>,
    periodic: bool,
    scratch: &mut SelectScratch,
    out: &mut Vec<InterfaceStates>,
) -> usize {
    let faces = c5[0].n_faces();
    let n = faces - 1;
    copy_all(baseline, out);
    let fired = &mut scratch.cell_marks;
    fired.clear();
    fired.resize(n, false);
    let marks = &mut scratch.face_marks;
    for c in 0..c5.len() {
        marks.clear();
        marks.resize(faces, false);
        let mut any = false;
        let (cand, lin) = (&candidate[c], &c5[c]);
        let jump = |s: &InterfaceStates, k: usize| (s.left[k] - s.right[k]).abs();
        let (mut prev_cand, mut prev_lin) = (jump(cand, 0), jump(lin, 0));
        for j in 0..n {
            let (next_cand, next_lin) = (jump(cand, j + 1), jump(lin, j + 1));
            let fires = prev_cand + next_cand < prev_lin + next_lin
                && gate.is_none_or(|lines| extra_condition_gate(lines[c], j));
            (prev_cand, prev_lin) = (next_cand, next_lin);
            if fires {
                any = true;
                fired[j] = true;
                for m in -1..=2 {
                    mark_face(marks, j as isize + m, n, periodic);
                }
            }
        }
        if any {
            merge_periodic_marks(marks, periodic);
            let (o, cand) = (&mut out[c], &candidate[c]);
            for k in (0..faces).filter(|&k| marks[k]) {
                o.left[k] = cand.left[k];
                o.right[k] = cand.right[k];
            }
        }
    }
    fired.iter().filter(|&&f| f).count()
}

/// Overwrites the states produced by the marked cells of one component: for cell `i`,
/// the left state at face `i + 1` and the right state at face `i`.
fn overwrite_cells(out: &mut InterfaceStates, src: &InterfaceStates, cell_marks: &[bool], periodic: bool) {
    let n = cell_marks.len();
    for (i, _) in cell_marks.iter().enumerate().filter(|(_, &m)| m) {
        out.right[i] = src.right[i];
        out.left[i + 1] = src.left[i + 1];
    }
    if periodic {
        out.left[0] = out.left[n];
        out.right[n] = out.right[0];
    }
}

/// Two-stage selection between the upwind compact pair and THINC with two steepnesses.
pub fn select_c5t2(
    c5: &[InterfaceStates],
    thinc_mild: &[InterfaceStates],
    thinc_steep: &[InterfaceStates],
    periodic: bool,
    scratch: &mut SelectScratch,
    out: &mut Vec<InterfaceStates>,
) -> usize {
    let n = c5[0].n_faces() - 1;
    let mut fired = vec![false; n];
    copy_all(c5, &mut scratch.stage);
    copy_all(c5, out);
    let marks = &mut scratch.cell_marks;
    for c in 0..c5.len() {
        marks.clear();
        marks.resize(n, false);
        for j in 0..n {
            if tbv(&thinc_mild[c], j) < tbv(&c5[c], j) {
                fired[j] = true;
                for m in -1..=1 {
                    let i = j as isize + m;
                    if periodic {
                        marks[i.rem_euclid(n as isize) as usize] = true;
                    } else if (0..n as isize).contains(&i) {
                        marks[i as usize] = true;
                    }
                }
            }
        }
        let stage = &mut scratch.stage[c];
        overwrite_cells(stage, &thinc_mild[c], marks, periodic);

        marks.clear();
        marks.resize(n, false);
        for j in 0..n {
            if tbv(&thinc_steep[c], j) < tbv(stage, j) {
                fired[j] = true;
                marks[j] = true;
            }
        }
        out[c].copy_from(stage);
        overwrite_cells(&mut out[c], &thinc_steep[c], marks, periodic);
    }
    fired.iter().filter(|&&f| f).count()
}

/// Fourth-power variation of WENO-Z at cell `j` normalised by the local jumps of the data.
pub fn smoothness_ratio(weno_z: &InterfaceStates, line: LineView<'_>, j: usize) -> f64 {
    let ji = j as isize;
    let num = (weno_z.left[j] - weno_z.right[j]).powi(4)
        + (weno_z.left[j + 1] - weno_z.right[j + 1]).powi(4);
    let den = (line.at(ji) - line.at(ji - 1)).powi(4) + (line.at(ji) - line.at(ji + 1)).powi(4) + 1e-20;
    num / den
}

/// Central compact baseline; where the smoothness indicator of cell `j` falls below
/// `threshold`, the pair at its right face `j + 1` is replaced by WENO-Z.
pub fn select_hocus_wenoz(
    c6: &[InterfaceStates],
    weno_z: &[InterfaceStates],
    cells: &[LineView<'_>],
    threshold: f64,
    periodic: bool,
    scratch: &mut SelectScratch,
    out: &mut Vec<InterfaceStates>,
) -> usize {
    let faces = c6[0].n_faces();
    let n = faces - 1;
    copy_all(c6, out);
    let fired = &mut scratch.cell_marks;
    fired.clear();
    fired.resize(n, false);
    let marks = &mut scratch.face_marks;
    for c in 0..c6.len() {
        marks.clear();
        marks.resize(faces, false);
        for j in 0..n {
            let r = smoothness_ratio(&weno_z[c], cells[c], j);
            if (1.0 - r) / r.max(1e-20) < threshold {
                fired[j] = true;
                marks[j + 1] = true;
            }
        }
        merge_periodic_marks(marks, periodic);
        let (o, w) = (&mut out[c], &weno_z[c]);
        for k in (0..faces).filter(|&k| marks[k]) {
            o.left[k] = w.left[k];
            o.right[k] = w.right[k];
        }
    }
    fired.iter().filter(|&&f| f).count()
}
