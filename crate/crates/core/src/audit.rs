//! The counting audit: given a valid (possibly w-less) coloring of the
//! gadget, recompute every step of the usage-counting chain as an exact
//! integer inequality and decide what it says about the last vertex.
//!
//! The chain tracks how many colors of each block a vertex consumes. With
//! blocks |A|=|B|=|C|=m, |D|=2m, |E|=e and the anchors saturating A and B,
//! the inequalities force w's available pool below 17e, which is less than
//! m whenever 17e < m. Each step is one named check; nothing here is a
//! float and nothing depends on solver internals.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::color::{
    verify_coloring_on, ColorSet, MultiColoring, Rat, Violation, BLOCK_A, BLOCK_B, BLOCK_C,
    BLOCK_E,
};
use crate::gadget::GadgetH;
use crate::graph::VertexId;
use crate::solver::{enumerate_colorings, BruteError};

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("vertex {0} must be colored for the audit (only w may be open)")]
    MissingVertex(String),
    #[error("coloring is invalid: {0}")]
    InvalidColoring(Violation),
    #[error("coloring uses b = {got}, the gadget expects b = {want}")]
    WrongB { got: u32, want: u32 },
    #[error("enumeration failed: {0}")]
    Enumeration(#[from] BruteError),
}

/// The exact E-block fraction ε(m) = (⌈m/17⌉ − 1)/m.
pub fn epsilon_of(m: u32) -> Rat {
    Rat::new((m.div_ceil(17) - 1) as i64, m as i64)
}

/// The integer thresholds of the chain at (m, e). Lower bounds may go
/// negative for oversized e; checks then hold trivially, which is exactly
/// how the chain loses its bite once 17e ≥ m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainBounds {
    pub m: i64,
    pub e: i64,
    /// C-usage at x1 and x3: ≥ m − e.
    pub x_c_lower: i64,
    /// C-usage at y2, y5, z2: ≤ e.
    pub c_upper: i64,
    /// A-usage at y3: ≥ m − 4e.
    pub y3_a_lower: i64,
    /// C∪E usage at x2: ≤ e.
    pub x2_ce_upper: i64,
    /// A-usage at x2 and z5: ≤ 4e.
    pub a_upper: i64,
    /// B-usage at x2: ≥ m − 5e.
    pub x2_b_lower: i64,
    /// B-usage at z1: ≤ 5e.
    pub z1_b_upper: i64,
    /// C-usage at z4: ≥ m − 12e.
    pub z4_c_lower: i64,
    /// Colors available to w: ≤ 17e.
    pub w_avail_upper: i64,
}

pub fn chain_bounds(m: u32, e: u32) -> ChainBounds {
    let (m, e) = (m as i64, e as i64);
    ChainBounds {
        m,
        e,
        x_c_lower: m - e,
        c_upper: e,
        y3_a_lower: m - 4 * e,
        x2_ce_upper: e,
        a_upper: 4 * e,
        x2_b_lower: m - 5 * e,
        z1_b_upper: 5 * e,
        z4_c_lower: m - 12 * e,
        w_avail_upper: 17 * e,
    }
}

/// Per-vertex, per-block color usage of a candidate coloring, plus the
/// exact set of colors still open at w.
#[derive(Debug, Clone)]
pub struct UsageProfile {
    pub b: u32,
    /// (vertex, block) → how many of that block's colors the vertex uses.
    pub counts: BTreeMap<(VertexId, u16), u32>,
    /// L(w) minus everything w's neighbors use.
    pub available_w: ColorSet,
    pub w_colored: bool,
}

impl UsageProfile {
    pub fn count(&self, v: VertexId, block: u16) -> i64 {
        *self.counts.get(&(v, block)).unwrap_or(&0) as i64
    }
}

fn audit_domain(h: &GadgetH, phi: &MultiColoring) -> Result<(BTreeSet<VertexId>, bool), AuditError> {
    let w = h.role_vertex("w");
    let mut domain = BTreeSet::new();
    let mut w_colored = false;
    for &v in h.graph.vertex_ids() {
        if phi.get(v).is_some() {
            domain.insert(v);
            if v == w {
                w_colored = true;
            }
        } else if v != w {
            return Err(AuditError::MissingVertex(h.graph.vertex_name(v)));
        }
    }
    Ok((domain, w_colored))
}

/// Tally the block usage of a coloring that has already been validated.
pub fn usage_profile(h: &GadgetH, phi: &MultiColoring) -> Result<UsageProfile, AuditError> {
    if phi.b != h.params.m {
        return Err(AuditError::WrongB {
            got: phi.b,
            want: h.params.m,
        });
    }
    let (domain, w_colored) = audit_domain(h, phi)?;
    verify_coloring_on(&h.graph, &h.lists, phi, &domain).map_err(AuditError::InvalidColoring)?;

    let mut counts = BTreeMap::new();
    for &v in &domain {
        for c in phi.get(v).into_iter().flatten() {
            *counts.entry((v, c.block)).or_insert(0u32) += 1;
        }
    }

    let w = h.role_vertex("w");
    let mut used_near_w = ColorSet::new();
    for n in h.graph.neighbors(w) {
        used_near_w.extend(phi.get(n).into_iter().flatten().copied());
    }
    let available_w = h
        .lists
        .get(w)
        .expect("gadget lists are complete")
        .difference(&used_near_w)
        .copied()
        .collect();

    Ok(UsageProfile {
        b: phi.b,
        counts,
        available_w,
        w_colored,
    })
}

/// One recomputed inequality of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: String,
    pub detail: String,
    pub lhs: i64,
    pub rel: &'static str,
    pub rhs: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditVerdict {
    /// Every inequality holds and w is colored (only possible when the
    /// chain has slack, e.g. an oversized E block).
    Consistent,
    /// Some inequality fails; names the first one. A valid coloring can
    /// only reach this with non-standard parameters — at standard ε the
    /// chain is a theorem about valid colorings.
    BoundViolated { check: String },
    /// w is uncolored and has fewer than b colors available: the coloring
    /// cannot be completed.
    WBlocked { available: u32, required: u32 },
    /// w is uncolored but enough colors remain.
    WOpen { available: u32, required: u32 },
}

impl AuditVerdict {
    pub fn to_json_value(&self) -> Value {
        match self {
            AuditVerdict::Consistent => json!({"kind": "consistent"}),
            AuditVerdict::BoundViolated { check } => {
                json!({"kind": "bound-violated", "check": check})
            }
            AuditVerdict::WBlocked {
                available,
                required,
            } => json!({"kind": "w-blocked", "available": available, "required": required}),
            AuditVerdict::WOpen {
                available,
                required,
            } => json!({"kind": "w-open", "available": available, "required": required}),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub m: u32,
    pub e_size: u32,
    pub b: u32,
    pub checks: Vec<AuditCheck>,
    pub available_w: ColorSet,
    pub w_colored: bool,
    pub verdict: AuditVerdict,
}

fn check(name: &str, detail: &str, lhs: i64, rel: &'static str, rhs: i64) -> AuditCheck {
    let pass = match rel {
        "<=" => lhs <= rhs,
        ">=" => lhs >= rhs,
        "==" => lhs == rhs,
        _ => unreachable!("relation set is closed"),
    };
    AuditCheck {
        name: name.to_string(),
        detail: detail.to_string(),
        lhs,
        rel,
        rhs,
        pass,
    }
}

/// Max over colors of how many vertices of `cycle` use that color.
fn max_color_load(phi: &MultiColoring, cycle: &[VertexId]) -> i64 {
    let mut load: BTreeMap<crate::color::Color, i64> = BTreeMap::new();
    for &v in cycle {
        for &c in phi.get(v).into_iter().flatten() {
            *load.entry(c).or_insert(0) += 1;
        }
    }
    load.values().copied().max().unwrap_or(0)
}

/// Recompute the whole counting chain against one coloring.
///
/// The coloring must be valid on its domain (everything, or everything
/// except w) — validity is a precondition, not a check row. Every row is
/// an integer inequality the chain asserts for valid colorings at the
/// gadget's parameters.
pub fn audit_chain(h: &GadgetH, phi: &MultiColoring) -> Result<AuditReport, AuditError> {
    let profile = usage_profile(h, phi)?;
    let bounds = chain_bounds(h.params.m, h.params.e_size);
    let r = |role: &str| h.role_vertex(role);
    let (x1, x2, x3) = (r("x1"), r("x2"), r("x3"));
    let (y1, y2, y3, y4, y5) = (r("y1"), r("y2"), r("y3"), r("y4"), r("y5"));
    let (z1, z2, z3, z4, z5) = (r("z1"), r("z2"), r("z3"), r("z4"), r("z5"));
    let c = |v, blk| profile.count(v, blk);

    let y_cycle = [y1, y2, y3, y4, y5];
    let z_cycle = [z1, z2, z3, z4, z5];
    let avail = profile.available_w.len() as i64;

    let checks = vec![
        check(
            "x1-C-lower",
            "x1 avoids all of A (via u) and all of B (via v), so at most e of its m colors escape C",
            c(x1, BLOCK_C), ">=", bounds.x_c_lower,
        ),
        check(
            "x3-C-lower",
            "same squeeze as x1: both anchors are neighbors",
            c(x3, BLOCK_C), ">=", bounds.x_c_lower,
        ),
        check(
            "y2-C-upper",
            "y2 avoids x1's C colors, leaving at most e of C",
            c(y2, BLOCK_C), "<=", bounds.c_upper,
        ),
        check(
            "y5-C-upper",
            "y5 avoids x3's C colors, leaving at most e of C",
            c(y5, BLOCK_C), "<=", bounds.c_upper,
        ),
        check(
            "y1-A-zero",
            "y1 neighbors u, which saturates A",
            c(y1, BLOCK_A), "==", 0,
        ),
        check(
            "y4-B-zero",
            "y4 neighbors v, which saturates B",
            c(y4, BLOCK_B), "==", 0,
        ),
        check(
            "y-cycle-color-cap",
            "no color sits on 3+ vertices of an induced 5-cycle",
            max_color_load(phi, &y_cycle), "<=", 2,
        ),
        check(
            "y3-A-lower",
            "5m cycle slots minus D (≤4m), E (≤2e), C (≤2e) must come from A at y3",
            c(y3, BLOCK_A), ">=", bounds.y3_a_lower,
        ),
        check(
            "x2-CE-upper",
            "x2 avoids x1's m colors inside C∪E, a pool of size m+e",
            c(x2, BLOCK_C) + c(x2, BLOCK_E), "<=", bounds.x2_ce_upper,
        ),
        check(
            "x2-A-upper",
            "x2 avoids y3's A colors",
            c(x2, BLOCK_A), "<=", bounds.a_upper,
        ),
        check(
            "x2-B-lower",
            "m colors at x2 minus its A and C∪E caps must come from B",
            c(x2, BLOCK_B), ">=", bounds.x2_b_lower,
        ),
        check(
            "z1-B-upper",
            "z1 avoids x2's B colors",
            c(z1, BLOCK_B), "<=", bounds.z1_b_upper,
        ),
        check(
            "z5-A-upper",
            "z5 avoids y3's A colors",
            c(z5, BLOCK_A), "<=", bounds.a_upper,
        ),
        check(
            "z2-C-upper",
            "z2 avoids x1's C colors",
            c(z2, BLOCK_C), "<=", bounds.c_upper,
        ),
        check(
            "z3-B-zero",
            "z3 neighbors v, which saturates B",
            c(z3, BLOCK_B), "==", 0,
        ),
        check(
            "z-cycle-color-cap",
            "no color sits on 3+ vertices of an induced 5-cycle",
            max_color_load(phi, &z_cycle), "<=", 2,
        ),
        check(
            "z4-C-lower",
            "5m cycle slots minus D, E, and the capped B/A/C entries force C at z4",
            c(z4, BLOCK_C), ">=", bounds.z4_c_lower,
        ),
        check(
            "w-availability",
            "w's neighbors v, y3, z4 pin all but 17e of its list",
            avail, "<=", bounds.w_avail_upper,
        ),
    ];

    let verdict = if let Some(fail) = checks.iter().find(|c| !c.pass) {
        AuditVerdict::BoundViolated {
            check: fail.name.clone(),
        }
    } else if profile.w_colored {
        AuditVerdict::Consistent
    } else if (profile.available_w.len() as u32) < h.params.m {
        AuditVerdict::WBlocked {
            available: profile.available_w.len() as u32,
            required: h.params.m,
        }
    } else {
        AuditVerdict::WOpen {
            available: profile.available_w.len() as u32,
            required: h.params.m,
        }
    };

    Ok(AuditReport {
        m: h.params.m,
        e_size: h.params.e_size,
        b: phi.b,
        checks,
        available_w: profile.available_w,
        w_colored: profile.w_colored,
        verdict,
    })
}

impl AuditReport {
    pub fn to_json_value(&self, h: &GadgetH) -> Value {
        json!({
            "m": self.m,
            "e_size": self.e_size,
            "b": self.b,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "lhs": c.lhs,
                "rel": c.rel,
                "rhs": c.rhs,
                "pass": c.pass,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "available_w": {
                "count": self.available_w.len(),
                "colors": self.available_w.iter()
                    .map(|&c| Value::String(h.universe().color_str(c)))
                    .collect::<Vec<_>>(),
            },
            "w_colored": self.w_colored,
            "verdict": self.verdict.to_json_value(),
        })
    }

    pub fn markdown_table(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "# Usage audit (m = {}, e = {}, b = {})\n\n",
            self.m, self.e_size, self.b
        ));
        s.push_str("| check | lhs | rel | rhs | pass |\n");
        s.push_str("|---|---|---|---|---|\n");
        for c in &self.checks {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                c.name,
                c.lhs,
                c.rel,
                c.rhs,
                if c.pass { "yes" } else { "NO" }
            ));
        }
        s.push_str(&format!(
            "\nColors available at w: {}\n",
            self.available_w.len()
        ));
        let verdict = match &self.verdict {
            AuditVerdict::Consistent => "consistent".to_string(),
            AuditVerdict::BoundViolated { check } => format!("bound violated at {check}"),
            AuditVerdict::WBlocked {
                available,
                required,
            } => format!("w blocked ({available} available, {required} required)"),
            AuditVerdict::WOpen {
                available,
                required,
            } => format!("w open ({available} available, {required} required)"),
        };
        s.push_str(&format!("\nVerdict: **{verdict}**\n"));
        s
    }
}

/// Aggregate audit over every valid coloring of the gadget minus w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllPartialReport {
    pub total: u64,
    pub blocked: u64,
    pub open: u64,
    pub bound_failures: u64,
    pub max_available_w: u32,
}

impl AllPartialReport {
    pub fn all_blocked(&self) -> bool {
        self.total > 0 && self.blocked == self.total
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "total": self.total,
            "blocked": self.blocked,
            "open": self.open,
            "bound_failures": self.bound_failures,
            "max_available_w": self.max_available_w,
            "all_blocked": self.all_blocked(),
        })
    }
}

/// Enumerate every valid coloring of the gadget with w removed and audit
/// each one. `cap` bounds the brute-force enumeration to keep this an
/// explicit, refusable cost.
pub fn audit_all_partial(h: &GadgetH, cap: u64) -> Result<AllPartialReport, AuditError> {
    let w = h.role_vertex("w");
    let keep: BTreeSet<VertexId> = h
        .graph
        .vertex_ids()
        .iter()
        .copied()
        .filter(|&v| v != w)
        .collect();
    let sub = h.graph.induced(&keep);
    let lists = h.lists.restricted(&keep);
    let colorings = enumerate_colorings(&sub, &lists, h.params.m, cap)?;

    let mut report = AllPartialReport {
        total: 0,
        blocked: 0,
        open: 0,
        bound_failures: 0,
        max_available_w: 0,
    };
    for phi in &colorings {
        let audited = audit_chain(h, phi)?;
        report.total += 1;
        match audited.verdict {
            AuditVerdict::WBlocked { available, .. } => {
                report.blocked += 1;
                report.max_available_w = report.max_available_w.max(available);
            }
            AuditVerdict::WOpen { available, .. } => {
                report.open += 1;
                report.max_available_w = report.max_available_w.max(available);
            }
            AuditVerdict::BoundViolated { .. } => report.bound_failures += 1,
            AuditVerdict::Consistent => unreachable!("w is uncolored in this enumeration"),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::build_h;
    use crate::solver::{solve, SolverConfig, Verdict};

    #[test]
    fn epsilon_law_small_values() {
        assert_eq!(epsilon_of(1), Rat::new(0, 1));
        assert_eq!(epsilon_of(17), Rat::new(0, 1));
        assert_eq!(epsilon_of(18), Rat::new(1, 18));
        assert_eq!(epsilon_of(34), Rat::new(1, 34));
        assert_eq!(epsilon_of(35), Rat::new(2, 35));
    }

    #[test]
    fn bounds_arithmetic() {
        let b = chain_bounds(18, 1);
        assert_eq!(b.x_c_lower, 17);
        assert_eq!(b.y3_a_lower, 14);
        assert_eq!(b.x2_b_lower, 13);
        assert_eq!(b.z4_c_lower, 6);
        assert_eq!(b.w_avail_upper, 17);
        assert!(b.w_avail_upper < b.m);
    }

    #[test]
    fn audit_rejects_wrong_b() {
        let h = build_h(2, None).unwrap();
        let phi = MultiColoring::new(1);
        assert!(matches!(
            audit_chain(&h, &phi),
            Err(AuditError::WrongB { got: 1, want: 2 })
        ));
    }

    #[test]
    fn audit_accepts_satisfiable_override_coloring() {
        // with an oversized E block the gadget is colorable; a full valid
        // coloring must audit as consistent (all bounds hold, w colored)
        let h = build_h(1, Some(1)).unwrap();
        let cfg = SolverConfig::default().with_cuts(h.cycle_cuts());
        let outcome = solve(&h.graph, &h.lists, 1, &cfg).unwrap();
        let Verdict::Sat(phi) = outcome.verdict else {
            panic!("override instance must be satisfiable");
        };
        let report = audit_chain(&h, &phi).unwrap();
        assert!(
            report.checks.iter().all(|c| c.pass),
            "{}",
            report.markdown_table()
        );
        assert_eq!(report.verdict, AuditVerdict::Consistent);
    }
}
