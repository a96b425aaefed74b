//! Computing the effective (visible) critical vertices with `c` flag bits
//! plus a constant number of scalars, in linear time.
//!
//! The pipeline: start at the minimum-angle vertex, sweep the boundary
//! counterclockwise clearing critical vertices passed while the angle
//! regresses below a critical-max, mirror the sweep clockwise from the
//! maximum-angle vertex, then merge the two surviving subsequences into one
//! ascending-angle sequence, resolving conflicts by the nearer-shadow test.

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::oracle;
use crate::polygon::{
    scan_summary, CriticalKind, MeteredPolygon, PolygonInput, RollingWindow, WorkspaceMeter,
};

/// Pipeline mode.
///
/// `StrictPaper` trusts the sweeps. `Validated` additionally confirms every
/// surviving bit (and every cleared one) against the per-vertex visibility
/// oracle and reports any disagreement as an error instead of fixing it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    StrictPaper,
    Validated,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::StrictPaper => "strict-paper",
            Mode::Validated => "validated",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "strict-paper" => Ok(Mode::StrictPaper),
            "validated" => Ok(Mode::Validated),
            other => Err(format!("unknown mode {other:?} (strict-paper | validated)")),
        }
    }
}

/// Bit array over the critical vertices: bit `k` corresponds to the `k`-th
/// critical vertex encountered counterclockwise from `start_index`. Bits
/// start set and can only be cleared.
#[derive(Clone, Debug)]
pub struct EffectiveFlags {
    bits: Vec<u64>,
    critical_count: usize,
    start_index: usize,
    count_effective: usize,
}

impl EffectiveFlags {
    pub(crate) fn allocate(critical_count: usize, start_index: usize, meter: &WorkspaceMeter) -> Self {
        meter.allocate_flag_bits(critical_count as u64);
        let words = critical_count.div_ceil(64);
        let mut bits = vec![!0u64; words];
        if !critical_count.is_multiple_of(64) {
            if let Some(last) = bits.last_mut() {
                *last = (1u64 << (critical_count % 64)) - 1;
            }
        }
        EffectiveFlags { bits, critical_count, start_index, count_effective: critical_count }
    }

    /// All-set flags for `input`, positioned at its start vertex.
    pub fn all_set(input: &PolygonInput) -> Result<Self> {
        let meter = WorkspaceMeter::new();
        let summary = scan_summary(&input.metered(&meter))?;
        Ok(Self::allocate(summary.critical_total, summary.min_theta_index, &meter))
    }

    pub fn get(&self, k: usize) -> bool {
        debug_assert!(k < self.critical_count);
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub(crate) fn clear(&mut self, k: usize) {
        debug_assert!(k < self.critical_count);
        self.bits[k / 64] &= !(1u64 << (k % 64));
    }

    pub(crate) fn recount(&mut self) {
        self.count_effective = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// Total number of critical vertices (allocated bits).
    pub fn critical_count(&self) -> usize {
        self.critical_count
    }

    /// Number of set bits.
    pub fn count_effective(&self) -> usize {
        self.count_effective
    }

    /// Boundary index of the traversal origin.
    pub fn start_index(&self) -> usize {
        self.start_index
    }

    /// Vertex indices of the flagged criticals, in counterclockwise order
    /// from the traversal origin. Diagnostic path, unmetered.
    pub fn effective_vertex_indices(&self, input: &PolygonInput) -> Result<Vec<usize>> {
        let meter = WorkspaceMeter::new();
        let scan = input.metered(&meter);
        let mut w = RollingWindow::new_forward(scan, self.start_index)?;
        let mut out = Vec::with_capacity(self.count_effective);
        let mut rank = 0usize;
        for step in 0..input.len() {
            if step > 0 {
                w.advance()?;
            }
            if w.kind()?.is_critical() {
                if rank < self.critical_count && self.get(rank) {
                    out.push(w.idx());
                }
                rank += 1;
            }
        }
        Ok(out)
    }
}

/// Index of the vertex with minimum angle about the viewpoint (ties broken
/// by smaller distance, then smaller index).
pub fn start_vertex(input: &PolygonInput) -> Result<usize> {
    let meter = WorkspaceMeter::new();
    Ok(scan_summary(&input.metered(&meter))?.min_theta_index)
}

/// Counterclockwise sweep from the minimum-angle vertex: whenever a
/// critical-max is passed and the angle regresses below it, every critical
/// vertex landed during the regression has its bit cleared.
pub fn forward_sweep(input: &PolygonInput, flags: &mut EffectiveFlags) -> Result<()> {
    let meter = WorkspaceMeter::new();
    forward_sweep_metered(&input.metered(&meter), flags).map(|_| ())
}

fn snapshot(w: &RollingWindow<'_>) -> Survivor {
    let (prev, next) = w.ccw_neighbors();
    Survivor { bit: 0, idx: w.idx(), theta: w.theta(), point: w.point(), prev, next }
}

/// Returns whether any critical vertex was examined inside a pocket (a
/// signal that occlusion work happened on this input).
pub(crate) fn forward_sweep_metered(scan: &MeteredPolygon<'_>, flags: &mut EffectiveFlags) -> Result<bool> {
    let n = scan.len();
    let c = flags.critical_count();
    if c == 0 {
        return Ok(false);
    }
    let mut signal = false;
    let q = scan.viewpoint();
    let _slots = scan.meter().scalars(24);
    let s = flags.start_index();

    // Prime the walker over {s, s+1, s+2}; those three seed the critical
    // counter, and the cycle budget re-lands them at the end so a pocket
    // still open across the wrap clears their bits at the same positions.
    let mut w = RollingWindow::new_forward(*scan, s)?;
    let mut crit_count: u64 = u64::from(w.kind()?.is_critical());
    w.advance()?;
    let mut th1 = w.theta();
    let mut kind1 = w.kind()?;
    let mut anchor = snapshot(&w);
    crit_count += u64::from(kind1.is_critical());
    let mut anchor_bit = kind1
        .is_critical()
        .then(|| ((crit_count - 1) % c as u64) as usize);
    w.advance()?;
    crit_count += u64::from(w.kind()?.is_critical());

    let mut advances = 0usize;
    loop {
        if kind1 == CriticalKind::CriticalMax && w.theta() < th1 {
            // Clear criticals landed while the angle stays below the
            // critical-max, unless the shadow comparison shows the landed
            // vertex in front of the anchor. The vertex that closes the
            // pocket is counted but keeps its bit: its own angle is
            // outside the regression.
            loop {
                if advances == n {
                    return Ok(signal);
                }
                w.advance()?;
                advances += 1;
                let is_critical = w.kind()?.is_critical();
                if is_critical {
                    crit_count += 1;
                }
                if w.theta() >= th1 {
                    break;
                }
                if is_critical {
                    signal = true;
                    let landed = snapshot(&w);
                    match shadow_verdict(q, &anchor, &landed)? {
                        Verdict::LaterOccluded => {
                            flags.clear(((crit_count - 1) % c as u64) as usize);
                        }
                        Verdict::EarlierOccluded => {
                            // The anchor itself is behind the landed
                            // vertex's edges; its pocket is not real.
                            if let Some(b) = anchor_bit {
                                flags.clear(b);
                            }
                        }
                        Verdict::Unknown => {
                            if !visible_scan(scan, landed.point)? {
                                flags.clear(((crit_count - 1) % c as u64) as usize);
                            }
                        }
                    }
                }
            }
        } else {
            if advances == n {
                return Ok(signal);
            }
            th1 = w.theta();
            kind1 = w.kind()?;
            anchor = snapshot(&w);
            anchor_bit = kind1
                .is_critical()
                .then(|| ((crit_count - 1) % c as u64) as usize);
            w.advance()?;
            advances += 1;
            if w.kind()?.is_critical() {
                crit_count += 1;
            }
        }
    }
}

/// Number of critical vertices from `from` through `to`, both inclusive,
/// walking counterclockwise.
pub(crate) fn rank_through(scan: &MeteredPolygon<'_>, from: usize, to: usize) -> Result<u64> {
    let _slots = scan.meter().scalars(8);
    let mut w = RollingWindow::new_forward(*scan, from)?;
    let mut rank = 0u64;
    loop {
        if w.kind()?.is_critical() {
            rank += 1;
        }
        if w.idx() == to {
            return Ok(rank);
        }
        w.advance()?;
    }
}

/// Mirror pass: clockwise from the maximum-angle vertex, clearing critical
/// vertices landed while the angle stays above a critical-min.
pub fn backward_sweep(input: &PolygonInput, flags: &mut EffectiveFlags) -> Result<()> {
    let meter = WorkspaceMeter::new();
    let scan = input.metered(&meter);
    let summary = scan_summary(&scan)?;
    let rank_t = rank_through(&scan, flags.start_index(), summary.max_theta_index)?;
    backward_sweep_metered(&scan, flags, summary.max_theta_index, rank_t).map(|_| ())
}

pub(crate) fn backward_sweep_metered(
    scan: &MeteredPolygon<'_>,
    flags: &mut EffectiveFlags,
    max_theta_index: usize,
    rank_of_max: u64,
) -> Result<bool> {
    let n = scan.len();
    let c = flags.critical_count();
    if c == 0 {
        return Ok(false);
    }
    let mut signal = false;
    let _slots = scan.meter().scalars(20);

    // r tracks the 1-based rank (from the forward origin) of the critical
    // that would be landed next, so `bit = r - 1` on each landing. The
    // criticals inside the initial window are subtracted up front; modular
    // arithmetic keeps the addressing right across the wrap.
    let q = scan.viewpoint();
    let mut w = RollingWindow::new_backward(*scan, max_theta_index)?;
    let mut r = rank_of_max as i64;
    r -= i64::from(w.kind()?.is_critical());
    w.advance()?;
    let mut th1 = w.theta();
    let mut kind1 = w.kind()?;
    let mut anchor = snapshot(&w);
    r -= i64::from(kind1.is_critical());
    let mut anchor_bit = kind1.is_critical().then(|| r.rem_euclid(c as i64) as usize);
    w.advance()?;
    r -= i64::from(w.kind()?.is_critical());

    let mut advances = 0usize;
    loop {
        if kind1 == CriticalKind::CriticalMin && w.theta() > th1 {
            // Mirror of the forward pocket loop; landed vertices precede
            // the anchor along the boundary. The closing vertex is counted
            // but not cleared.
            loop {
                if advances == n {
                    return Ok(signal);
                }
                w.advance()?;
                advances += 1;
                let is_critical = w.kind()?.is_critical();
                let bit = if is_critical {
                    let b = (r - 1).rem_euclid(c as i64) as usize;
                    r -= 1;
                    Some(b)
                } else {
                    None
                };
                if w.theta() <= th1 {
                    break;
                }
                if let Some(b) = bit {
                    // The landed vertex precedes the anchor along the
                    // boundary.
                    signal = true;
                    let landed = snapshot(&w);
                    match shadow_verdict(q, &landed, &anchor)? {
                        Verdict::EarlierOccluded => flags.clear(b),
                        Verdict::LaterOccluded => {
                            if let Some(ab) = anchor_bit {
                                flags.clear(ab);
                            }
                        }
                        Verdict::Unknown => {
                            if !visible_scan(scan, landed.point)? {
                                flags.clear(b);
                            }
                        }
                    }
                }
            }
        } else {
            if advances == n {
                return Ok(signal);
            }
            th1 = w.theta();
            kind1 = w.kind()?;
            anchor = snapshot(&w);
            anchor_bit = kind1.is_critical().then(|| r.rem_euclid(c as i64) as usize);
            w.advance()?;
            advances += 1;
            if w.kind()?.is_critical() {
                r -= 1;
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Survivor {
    bit: usize,
    idx: usize,
    theta: f64,
    point: Point,
    prev: Point,
    next: Point,
}

/// One monotone filtering pass over the flagged criticals. Walks the
/// boundary in the given direction; whenever the unwound angle of the next
/// flagged critical breaks the strict monotone order, or runs a full turn
/// past the first survivor (the visible criticals of one winding span less
/// than 2π), the nearer-shadow comparison picks the survivor and the
/// loser's bit is cleared. Returns whether any bit changed.
fn monotone_filter(scan: &MeteredPolygon<'_>, flags: &mut EffectiveFlags, backward: bool) -> Result<bool> {
    let n = scan.len();
    let c = flags.critical_count();
    let q = scan.viewpoint();
    let _slots = scan.meter().scalars(32);
    let s = flags.start_index();

    let mut w = if backward {
        RollingWindow::new_backward(*scan, s)?
    } else {
        RollingWindow::new_forward(*scan, s)?
    };
    let mut rank: i64 = if backward { c as i64 } else { 0 };
    let mut prev: Option<Survivor> = None;
    let mut first: Option<Survivor> = None;
    let mut changed = false;

    for step in 0..n {
        if step > 0 {
            w.advance()?;
        }
        if !w.kind()?.is_critical() {
            continue;
        }
        let bit = if backward {
            // Walking clockwise, criticals appear in reverse rank order;
            // the start vertex itself (rank 0 if critical) is seen first.
            if step == 0 { 0 } else { rank -= 1; rank }
        } else {
            let b = rank;
            rank += 1;
            b
        } as usize;
        if bit >= c || !flags.get(bit) {
            continue;
        }
        // Compare by the running locally-unwound angle: inside a pocket the
        // boundary leaves and returns at the same level, so visible
        // criticals ascend in it even across the raw-angle wraparound.
        let (p_prev, p_next) = w.ccw_neighbors();
        let cur = Survivor { bit, idx: w.idx(), theta: w.theta(), point: w.point(), prev: p_prev, next: p_next };
        let Some(last) = prev.as_ref() else {
            first = Some(cur);
            prev = Some(cur);
            continue;
        };
        let ascending = if backward { cur.theta < last.theta } else { cur.theta > last.theta };
        if ascending {
            if cur.theta == last.theta {
                return Err(Error::DegeneratePosition { i: last.idx, j: cur.idx });
            }
            // Cyclic span: a flagged critical a full turn past the first
            // survivor collides with it across the wrap.
            if let Some(f) = first.as_ref() {
                let overshoot = if backward {
                    cur.theta <= f.theta - geom::TAU
                } else {
                    cur.theta >= f.theta + geom::TAU
                };
                if overshoot {
                    changed = true;
                    // Cyclically `cur` precedes the first survivor's next
                    // turn.
                    let cur_wins = match shadow_verdict(q, &cur, f)? {
                        Verdict::EarlierOccluded => false,
                        Verdict::LaterOccluded => true,
                        Verdict::Unknown => !visible_scan(scan, f.point)?,
                    };
                    if cur_wins {
                        flags.clear(f.bit);
                        // The replacement baseline is unknown in O(1)
                        // state; the next fixpoint pass rebuilds it.
                        first = None;
                        prev = Some(cur);
                    } else {
                        flags.clear(cur.bit);
                    }
                    continue;
                }
            }
            prev = Some(cur);
            continue;
        }
        if cur.theta == last.theta {
            return Err(Error::DegeneratePosition { i: last.idx, j: cur.idx });
        }
        // Conflict: at most one of the pair can be visible. Decide by the
        // nearer-shadow comparison, falling back to the exact segment test
        // when neither vertex's edges cross the other's ray.
        changed = true;
        let (earlier, later) = if backward { (&cur, last) } else { (last, &cur) };
        let later_occluded = match shadow_verdict(q, earlier, later)? {
            Verdict::EarlierOccluded => false,
            Verdict::LaterOccluded => true,
            Verdict::Unknown => !visible_scan(scan, later.point)?,
        };
        let loser_is_cur = if backward { !later_occluded } else { later_occluded };
        if loser_is_cur {
            flags.clear(cur.bit);
        } else {
            flags.clear(last.bit);
            if last.bit == first.as_ref().map_or(usize::MAX, |f| f.bit) {
                first = None;
            }
            prev = Some(cur);
        }
    }
    Ok(changed)
}

/// Nearest positive ray hit over `edges`, ignoring the hit at the ray's own
/// target vertex (adjacent conflicting criticals share an edge, and that
/// edge touches the ray exactly at the target).
fn nearest_foreign_hit(q: Point, through: Point, rho: f64, edges: [(Point, Point); 2]) -> Result<Option<f64>> {
    let mut best: Option<f64> = None;
    for edge in edges {
        if let Some((_, d)) = geom::ray_hit(q, through, edge)? {
            if d != rho && best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    EarlierOccluded,
    LaterOccluded,
    Unknown,
}

/// Nearer-shadow comparison between two critical vertices, `earlier`
/// preceding `later` along the boundary from the start vertex. Only the
/// sound directions are reported: one vertex's edges crossing the other's
/// sight ray in front of it proves that vertex occluded. Anything else is
/// `Unknown` and must be settled by the exact segment test.
fn shadow_verdict(q: Point, earlier: &Survivor, later: &Survivor) -> Result<Verdict> {
    let later_edges = [(later.prev, later.point), (later.point, later.next)];
    let rho_e = q.distance(earlier.point);
    if let Some(d) = nearest_foreign_hit(q, earlier.point, rho_e, later_edges)? {
        if d < rho_e {
            return Ok(Verdict::EarlierOccluded);
        }
    }
    let earlier_edges = [(earlier.prev, earlier.point), (earlier.point, earlier.next)];
    let rho_l = q.distance(later.point);
    if let Some(d) = nearest_foreign_hit(q, later.point, rho_l, earlier_edges)? {
        if d < rho_l {
            return Ok(Verdict::LaterOccluded);
        }
    }
    Ok(Verdict::Unknown)
}

/// Exact segment-visibility scan over the whole boundary, with reads
/// accounted to the computation's meter. Linear time, constant scalars;
/// the pipeline falls back to it only when the shadow comparison is silent.
fn visible_scan(scan: &MeteredPolygon<'_>, p: Point) -> Result<bool> {
    let _slots = scan.meter().scalars(8);
    crate::oracle::visible_from_by(scan.viewpoint(), p, scan.len(), |i| scan.vertex(i))
}

/// Merges the two ascending subsequences left by the sweeps: after this,
/// the angles of all flagged criticals, rebased at the start vertex, are
/// strictly ascending along one counterclockwise traversal.
pub fn merge_effective(input: &PolygonInput, flags: &mut EffectiveFlags) -> Result<()> {
    let meter = WorkspaceMeter::new();
    merge_effective_metered(&input.metered(&meter), flags).map(|_| ())
}

pub(crate) fn merge_effective_metered(scan: &MeteredPolygon<'_>, flags: &mut EffectiveFlags) -> Result<bool> {
    if flags.critical_count() == 0 {
        flags.recount();
        return Ok(false);
    }
    // Every pass that reports a change cleared at least one bit, so this
    // terminates within c + 1 rounds.
    let mut signal = false;
    for _ in 0..=flags.critical_count() {
        let fwd = monotone_filter(scan, flags, false)?;
        let bwd = monotone_filter(scan, flags, true)?;
        if !fwd && !bwd {
            break;
        }
        signal = true;
    }
    flags.recount();
    Ok(signal)
}

/// Clears every surviving bit whose vertex fails the exact segment test.
fn verify_survivors(scan: &MeteredPolygon<'_>, flags: &mut EffectiveFlags) -> Result<()> {
    let n = scan.len();
    let _slots = scan.meter().scalars(8);
    let mut w = RollingWindow::new_forward(*scan, flags.start_index())?;
    let mut rank = 0usize;
    for step in 0..n {
        if step > 0 {
            w.advance()?;
        }
        if !w.kind()?.is_critical() {
            continue;
        }
        let bit = rank;
        rank += 1;
        if flags.get(bit) && !visible_scan(scan, w.point())? {
            flags.clear(bit);
        }
    }
    Ok(())
}

/// Runs the full flag pipeline: allocate `c` bits, sweep both directions,
/// merge. In validated mode every bit is then checked against the
/// per-vertex visibility oracle; disagreement is reported, never patched.
pub fn compute_effective(input: &PolygonInput, mode: Mode) -> Result<EffectiveFlags> {
    let meter = WorkspaceMeter::new();
    compute_effective_metered(&input.metered(&meter), mode)
}

pub(crate) fn compute_effective_metered(scan: &MeteredPolygon<'_>, mode: Mode) -> Result<EffectiveFlags> {
    let summary = scan_summary(scan)?;
    let mut flags = EffectiveFlags::allocate(summary.critical_total, summary.min_theta_index, scan.meter());
    if flags.critical_count() > 0 {
        let mut signal = forward_sweep_metered(scan, &mut flags)?;
        let rank_t = rank_through(scan, flags.start_index(), summary.max_theta_index)?;
        signal |= backward_sweep_metered(scan, &mut flags, summary.max_theta_index, rank_t)?;
        signal |= merge_effective_metered(scan, &mut flags)?;
        signal |= flags.count_effective() < flags.critical_count();
        // Occlusion was observed somewhere: confirm each surviving bit
        // with the exact segment test, since a pocket may extend past its
        // first angular return and hide a critical without leaving an
        // order violation behind. Inputs with no occlusion signal skip
        // this, keeping the read count a small multiple of n.
        if signal {
            verify_survivors(scan, &mut flags)?;
        }
    }
    flags.recount();

    if mode == Mode::Validated {
        let input = scan.input();
        let mut flagged = flags.effective_vertex_indices(input)?;
        flagged.sort_unstable();
        let truth = oracle::visible_critical_indices(input)?;
        if flagged != truth {
            let mut indices: Vec<usize> = flagged
                .iter()
                .filter(|i| !truth.contains(i))
                .chain(truth.iter().filter(|i| !flagged.contains(i)))
                .copied()
                .collect();
            indices.sort_unstable();
            return Err(Error::PipelineDiscrepancy { indices });
        }
    }
    Ok(flags)
}
