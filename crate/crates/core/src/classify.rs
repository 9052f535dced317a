//! Bounds on the p-characteristic set χ_M = {v ≥ 2 : a VOA(M, v) exists}
//! from sound rules: regularity, recognition of catalogued matroids,
//! minor monotonicity and the connection theorems.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{connect, find_isomorphism, has_minor, standard, ConnectKind, Matroid, MatroidJson, StandardKind};
use crate::search::is_regular;
use crate::subset;

/// Largest level stored explicitly; larger levels follow the tail rule.
pub const EXPLICIT_MAX: u32 = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    All,
    None,
    PowersOfTwo,
    NonPowersOfTwo,
}

impl Tail {
    fn contains(self, v: u32) -> bool {
        match self {
            Tail::All => true,
            Tail::None => false,
            Tail::PowersOfTwo => v.is_power_of_two(),
            Tail::NonPowersOfTwo => !v.is_power_of_two(),
        }
    }

    fn from_fn(f: impl Fn(Tail) -> bool) -> Tail {
        // a tail is determined by whether it contains powers and non-powers of 2
        match (f(Tail::PowersOfTwo), f(Tail::NonPowersOfTwo)) {
            (true, true) => Tail::All,
            (true, false) => Tail::PowersOfTwo,
            (false, true) => Tail::NonPowersOfTwo,
            (false, false) => Tail::None,
        }
    }

    fn has_powers(self) -> bool {
        matches!(self, Tail::All | Tail::PowersOfTwo)
    }

    fn has_others(self) -> bool {
        matches!(self, Tail::All | Tail::NonPowersOfTwo)
    }
}

/// A set of levels v ≥ 2: explicit membership up to `EXPLICIT_MAX`, then
/// a periodic-free tail rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LevelSetRepr", try_from = "LevelSetRepr")]
pub struct LevelSet {
    explicit: u128,
    tail: Tail,
}

/// JSON form: the members up to `EXPLICIT_MAX`, then the rule beyond it.
#[derive(Serialize, Deserialize)]
struct LevelSetRepr {
    levels: Vec<u32>,
    beyond: Tail,
}

impl From<LevelSet> for LevelSetRepr {
    fn from(s: LevelSet) -> Self {
        LevelSetRepr { levels: s.members(2, EXPLICIT_MAX), beyond: s.tail }
    }
}

impl TryFrom<LevelSetRepr> for LevelSet {
    type Error = String;

    fn try_from(r: LevelSetRepr) -> std::result::Result<Self, String> {
        if let Some(v) = r.levels.iter().find(|v| !(2..=EXPLICIT_MAX).contains(*v)) {
            return Err(format!("level {v} is outside 2..={EXPLICIT_MAX}"));
        }
        Ok(LevelSet { tail: r.beyond, ..LevelSet::from_levels(&r.levels) })
    }
}

const ALL_BITS: u128 = !0b11;

impl LevelSet {
    pub fn empty() -> Self {
        LevelSet { explicit: 0, tail: Tail::None }
    }

    /// {v ≥ 2}.
    pub fn all() -> Self {
        LevelSet { explicit: ALL_BITS, tail: Tail::All }
    }

    pub fn from_levels(levels: &[u32]) -> Self {
        let mut s = Self::empty();
        for &v in levels {
            assert!((2..=EXPLICIT_MAX).contains(&v), "explicit levels lie in 2..={EXPLICIT_MAX}");
            s.explicit |= 1 << v;
        }
        s
    }

    /// {v ≥ lo} minus the listed levels.
    pub fn at_least_except(lo: u32, except: &[u32]) -> Self {
        let below: u128 = (0..lo.min(128)).fold(0, |m, v| m | 1 << v);
        Self::all().minus(&LevelSet { explicit: below & ALL_BITS, tail: Tail::None }).minus(&Self::from_levels(except))
    }

    pub fn powers_of_two() -> Self {
        let explicit = (1..7).fold(0u128, |m, k| m | 1 << (1u32 << k));
        LevelSet { explicit, tail: Tail::PowersOfTwo }
    }

    pub fn contains(&self, v: u32) -> bool {
        match v {
            0 | 1 => false,
            2..=EXPLICIT_MAX => self.explicit & 1 << v != 0,
            _ => self.tail.contains(v),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        LevelSet { explicit: self.explicit | o.explicit, tail: Tail::from_fn(|t| self.tail_has(t) || o.tail_has(t)) }
    }

    pub fn intersect(&self, o: &Self) -> Self {
        LevelSet { explicit: self.explicit & o.explicit, tail: Tail::from_fn(|t| self.tail_has(t) && o.tail_has(t)) }
    }

    /// Levels v ≥ 2 not in the set.
    pub fn complement(&self) -> Self {
        LevelSet { explicit: !self.explicit & ALL_BITS, tail: Tail::from_fn(|t| !self.tail_has(t)) }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.intersect(&o.complement())
    }

    pub fn is_empty(&self) -> bool {
        self.explicit == 0 && self.tail == Tail::None
    }

    pub fn is_subset_of(&self, o: &Self) -> bool {
        self.minus(o).is_empty()
    }

    /// Members in `lo..=hi`.
    pub fn members(&self, lo: u32, hi: u32) -> Vec<u32> {
        (lo.max(2)..=hi).filter(|&v| self.contains(v)).collect()
    }

    /// A finite set, when the tail is empty.
    pub fn finite(&self) -> Option<Vec<u32>> {
        (self.tail == Tail::None).then(|| self.members(2, EXPLICIT_MAX))
    }

    fn tail_has(&self, t: Tail) -> bool {
        match t {
            Tail::PowersOfTwo => self.tail.has_powers(),
            Tail::NonPowersOfTwo => self.tail.has_others(),
            _ => unreachable!("only the two atoms are queried"),
        }
    }
}

fn list(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for LevelSet {
    /// `{v ≥ 3, v ≠ 6}`, `{2, 3, 6}`, `{}`, `{powers of 2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tail {
            Tail::None => write!(f, "{{{}}}", list(&self.members(2, EXPLICIT_MAX))),
            Tail::All => {
                let lo = (2..=EXPLICIT_MAX).find(|&v| self.contains(v)).unwrap_or(EXPLICIT_MAX + 1);
                let missing: Vec<u32> = (lo..=EXPLICIT_MAX).filter(|&v| !self.contains(v)).collect();
                write!(f, "{{v ≥ {lo}")?;
                if !missing.is_empty() {
                    write!(f, ", v ∉ {{{}}}", list(&missing))?;
                }
                write!(f, "}}")
            }
            Tail::PowersOfTwo | Tail::NonPowersOfTwo => {
                let explicit = (2..=EXPLICIT_MAX).filter(|&v| self.tail.contains(v)).fold(0, |m, v| m | 1 << v);
                let base = LevelSet { explicit, tail: self.tail };
                let extra = self.minus(&base).members(2, EXPLICIT_MAX);
                let missing = base.minus(self).members(2, EXPLICIT_MAX);
                let name = if self.tail == Tail::PowersOfTwo { "powers of 2" } else { "non-powers of 2" };
                write!(f, "{{{name}")?;
                if !extra.is_empty() {
                    write!(f, " and {}", list(&extra))?;
                }
                if !missing.is_empty() {
                    write!(f, " except {}", list(&missing))?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// One rule application with the fact it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleFired {
    pub rule: String,
    pub anchor: String,
}

/// What is known about χ_M: levels known to admit a VOA, levels known to
/// admit none, and the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PCharReport {
    pub subject: String,
    pub known_in: LevelSet,
    pub known_out: LevelSet,
    pub undecided: LevelSet,
    pub exact: bool,
    pub rules_fired: Vec<RuleFired>,
    /// Human-readable forms of the three sets.
    pub summary: ReportText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportText {
    pub known_in: String,
    pub known_out: String,
    pub undecided: String,
}

impl PCharReport {
    fn new(subject: String, known_in: LevelSet, known_out: LevelSet, rules_fired: Vec<RuleFired>) -> Result<Self> {
        if !known_in.intersect(&known_out).is_empty() {
            return Err(Error::Precondition(format!(
                "inconsistent bounds for {subject}: {} is both in and out",
                known_in.intersect(&known_out)
            )));
        }
        let undecided = known_in.union(&known_out).complement();
        let report = PCharReport {
            summary: ReportText {
                known_in: known_in.to_string(),
                known_out: known_out.to_string(),
                undecided: undecided.to_string(),
            },
            exact: undecided.is_empty(),
            subject,
            known_in,
            known_out,
            undecided,
            rules_fired,
        };
        debug_assert!(report.respects_single_gap_rule());
        Ok(report)
    }

    /// χ_M is never {v ≥ 2} ∖ {i} for i ≠ 3.
    pub fn respects_single_gap_rule(&self) -> bool {
        if !self.exact {
            return true;
        }
        let gaps = self.known_in.complement();
        match gaps.finite().as_deref() {
            Some([i]) => *i == 3,
            _ => true,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Levels where an OA(2,4,v) (equivalently a VOA(U₂,₄, v)) exists.
fn chi_u24() -> LevelSet {
    LevelSet::at_least_except(3, &[6])
}

struct Fact {
    inner: LevelSet,
    outer: LevelSet,
    rule: RuleFired,
}

fn fired(rule: &str, anchor: &str) -> RuleFired {
    RuleFired { rule: rule.into(), anchor: anchor.into() }
}

fn regular_fact() -> Fact {
    Fact {
        inner: LevelSet::all(),
        outer: LevelSet::empty(),
        rule: fired("regular", "χ_M is every v ≥ 2 exactly when M is regular"),
    }
}

fn whirl_fact(what: &str) -> Fact {
    let chi = chi_u24();
    Fact {
        inner: chi,
        outer: chi.complement(),
        rule: fired(what, "χ of every whirl equals χ_{U2,4} = {v ≥ 3, v ≠ 6} (OA(2,4,v) exists iff v ≠ 2, 6)"),
    }
}

fn u25_fact() -> Fact {
    Fact {
        inner: LevelSet::at_least_except(4, &[6, 10]),
        outer: LevelSet::from_levels(&[2, 3, 6]),
        rule: fired("uniform table: U2,5", "OA(2,5,v) does not exist for v = 2, 3, 6, is unknown for v = 10, exists otherwise"),
    }
}

fn fano_fact() -> Fact {
    let p = LevelSet::powers_of_two();
    Fact { inner: p, outer: p.complement(), rule: fired("Fano", "v ∈ χ_{F7} iff v is a power of 2 (cited result)") }
}

fn fano_dual_fact() -> Fact {
    Fact {
        inner: LevelSet::empty(),
        outer: LevelSet::from_levels(&[3]),
        rule: fired("dual Fano search", "exhaustive search over the 24^3 candidates shows 3 ∉ χ_{F7*}"),
    }
}

/// Facts for a leaf of the known table.
fn leaf_fact(kind: &StandardKind) -> Option<Fact> {
    match *kind {
        StandardKind::Uniform { t, n } if t <= 1 || t + 1 >= n => Some(regular_fact()),
        StandardKind::Uniform { t: 2, n: 4 } => Some(whirl_fact("uniform table: U2,4")),
        StandardKind::Uniform { t: 2, n: 5 } => Some(u25_fact()),
        StandardKind::Uniform { .. } => None,
        StandardKind::Wheel { .. } | StandardKind::Example1 => Some(regular_fact()),
        StandardKind::Whirl { .. } => Some(whirl_fact("whirl")),
        StandardKind::Fano => Some(fano_fact()),
        StandardKind::FanoDual => Some(fano_dual_fact()),
    }
}

/// χ(M) ⊆ χ(M') for every minor M'; each listed minor contributes its
/// known exclusions.
fn minor_exclusions(m: &Matroid) -> Result<Vec<(LevelSet, RuleFired)>> {
    let mut out = Vec::new();
    let entries: [(StandardKind, &str, LevelSet); 5] = [
        (StandardKind::Uniform { t: 2, n: 4 }, "minor U2,4", chi_u24().complement()),
        (StandardKind::Uniform { t: 2, n: 5 }, "minor U2,5", LevelSet::from_levels(&[2, 3, 6])),
        (StandardKind::Uniform { t: 3, n: 5 }, "minor U3,5", chi_u24().complement()),
        (StandardKind::Fano, "minor F7", LevelSet::powers_of_two().complement()),
        (StandardKind::FanoDual, "minor F7*", LevelSet::from_levels(&[3])),
    ];
    for (kind, name, excluded) in entries {
        let target = standard(kind)?;
        if target.n() <= m.n() && has_minor(m, &target) {
            out.push((excluded, fired(name, "a minor's p-characteristic set contains the matroid's")));
        }
    }
    Ok(out)
}

fn uniform_shape(m: &Matroid) -> Option<(usize, usize)> {
    let t = m.full_rank() as usize;
    let n = m.n();
    (0..1u32 << n).all(|a| m.rank(a) as usize == (subset::size(a) as usize).min(t)).then_some((t, n))
}

/// Classify a bare matroid (at most 12 elements) using regularity, the
/// uniform and whirl tables, Fano recognition and minor exclusions.
pub fn classify_matroid(m: &Matroid) -> Result<PCharReport> {
    classify_bare(m, "matroid".into(), LevelSet::empty(), LevelSet::empty(), Vec::new())
}

fn classify_bare(
    m: &Matroid,
    subject: String,
    mut known_in: LevelSet,
    mut known_out: LevelSet,
    mut rules: Vec<RuleFired>,
) -> Result<PCharReport> {
    if m.n() > 12 {
        return Err(Error::TooLarge(format!("classification of {} elements (at most 12)", m.n())));
    }
    let mut apply = |fact: Fact, rules: &mut Vec<RuleFired>| {
        known_in = known_in.union(&fact.inner);
        known_out = known_out.union(&fact.outer);
        rules.push(fact.rule);
    };
    if is_regular(m)? {
        apply(regular_fact(), &mut rules);
    } else {
        let mut recognised = false;
        if let Some((t, n)) = uniform_shape(m) {
            if let Some(f) = leaf_fact(&StandardKind::Uniform { t, n }) {
                apply(f, &mut rules);
                recognised = true;
            }
        }
        if !recognised && m.n().is_multiple_of(2) && m.n() >= 4 {
            let w = standard(StandardKind::Whirl { r: m.n() / 2 })?;
            if find_isomorphism(m, &w).is_some() {
                apply(whirl_fact("whirl recognised"), &mut rules);
                recognised = true;
            }
        }
        if !recognised && m.n() == 7 {
            for kind in [StandardKind::Fano, StandardKind::FanoDual] {
                if find_isomorphism(m, &standard(kind)?).is_some() {
                    apply(leaf_fact(&kind).expect("catalogued"), &mut rules);
                }
            }
        }
        for (excluded, rule) in minor_exclusions(m)? {
            if !excluded.is_subset_of(&known_out) {
                known_out = known_out.union(&excluded);
                rules.push(rule);
            }
        }
    }
    PCharReport::new(subject, known_in, known_out, rules)
}

/// A matroid built from catalogued leaves by connections and minors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ConstructionExpr {
    Leaf {
        matroid: StandardKind,
    },
    /// A matroid outside the catalogue; classification gives no facts.
    Custom {
        matroid: MatroidJson,
    },
    Series {
        left: Box<ConstructionExpr>,
        p1: String,
        right: Box<ConstructionExpr>,
        p2: String,
    },
    Parallel {
        left: Box<ConstructionExpr>,
        p1: String,
        right: Box<ConstructionExpr>,
        p2: String,
    },
    DirectSum {
        left: Box<ConstructionExpr>,
        right: Box<ConstructionExpr>,
    },
    TwoSum {
        left: Box<ConstructionExpr>,
        p1: String,
        right: Box<ConstructionExpr>,
        p2: String,
    },
    Minor {
        of: Box<ConstructionExpr>,
        #[serde(default)]
        delete: Vec<String>,
        #[serde(default)]
        contract: Vec<String>,
    },
}

impl ConstructionExpr {
    pub fn leaf(kind: StandardKind) -> Self {
        ConstructionExpr::Leaf { matroid: kind }
    }

    pub fn two_sum(left: ConstructionExpr, p1: &str, right: ConstructionExpr, p2: &str) -> Self {
        ConstructionExpr::TwoSum { left: Box::new(left), p1: p1.into(), right: Box::new(right), p2: p2.into() }
    }

    /// The matroid the expression denotes.
    pub fn evaluate(&self) -> Result<Matroid> {
        use ConstructionExpr::*;
        let join = |kind, l: &ConstructionExpr, p1: Option<&str>, r: &ConstructionExpr, p2: Option<&str>| {
            Ok::<_, Error>(connect(kind, &l.evaluate()?, p1, &r.evaluate()?, p2)?.matroid)
        };
        match self {
            Leaf { matroid } => standard(*matroid),
            Custom { matroid } => matroid.to_matroid(),
            Series { left, p1, right, p2 } => join(ConnectKind::Series, left, Some(p1), right, Some(p2)),
            Parallel { left, p1, right, p2 } => join(ConnectKind::Parallel, left, Some(p1), right, Some(p2)),
            TwoSum { left, p1, right, p2 } => join(ConnectKind::TwoSum, left, Some(p1), right, Some(p2)),
            DirectSum { left, right } => join(ConnectKind::DirectSum, left, None, right, None),
            Minor { of, delete, contract } => of.evaluate()?.minor_by_labels(delete, contract),
        }
    }

    fn describe(&self) -> String {
        use ConstructionExpr::*;
        match self {
            Leaf { matroid } => matroid.to_string(),
            Custom { .. } => "custom".into(),
            Series { left, right, .. } => format!("series({}, {})", left.describe(), right.describe()),
            Parallel { left, right, .. } => format!("parallel({}, {})", left.describe(), right.describe()),
            TwoSum { left, right, .. } => format!("two_sum({}, {})", left.describe(), right.describe()),
            DirectSum { left, right } => format!("direct_sum({}, {})", left.describe(), right.describe()),
            Minor { of, .. } => format!("minor({})", of.describe()),
        }
    }

    /// (inner, outer, rules) from the tree alone, or `None` if some leaf
    /// is outside the catalogue.
    fn bounds(&self) -> Option<(LevelSet, LevelSet, Vec<RuleFired>)> {
        use ConstructionExpr::*;
        match self {
            Leaf { matroid } => leaf_fact(matroid).map(|f| (f.inner, f.outer, vec![f.rule])),
            Custom { .. } => None,
            Series { left, right, .. }
            | Parallel { left, right, .. }
            | TwoSum { left, right, .. }
            | DirectSum { left, right } => {
                let (i1, o1, mut r1) = left.bounds()?;
                let (i2, o2, r2) = right.bounds()?;
                r1.extend(r2);
                let name = match self {
                    Series { .. } => "series connection",
                    Parallel { .. } => "parallel connection",
                    TwoSum { .. } => "2-sum",
                    _ => "direct sum",
                };
                r1.push(fired(name, "χ of a series/parallel connection, direct sum or 2-sum is χ_{M1} ∩ χ_{M2}"));
                Some((i1.intersect(&i2), o1.union(&o2), r1))
            }
            Minor { of, .. } => {
                let (i, _, mut r) = of.bounds()?;
                r.push(fired("minor", "a minor's p-characteristic set contains the matroid's"));
                Some((i, LevelSet::empty(), r))
            }
        }
    }
}

/// Classify an expression: intersect leaf facts through the tree, then
/// (for at most 12 elements) add the bare-matroid rules on its value. An
/// uncatalogued leaf yields a report with no rules and every level undecided.
pub fn classify_expr(e: &ConstructionExpr) -> Result<PCharReport> {
    let m = e.evaluate()?;
    let subject = e.describe();
    let Some((inner, outer, rules)) = e.bounds() else {
        return PCharReport::new(subject, LevelSet::empty(), LevelSet::empty(), Vec::new());
    };
    if m.n() <= 12 {
        classify_bare(&m, subject, inner, outer, rules)
    } else {
        PCharReport::new(subject, inner, outer, rules)
    }
}
