//! Hypothesis search and conclusion checks for the local criteria of
//! p-nilpotence and p-supersolvability, plus the auxiliary lemmas they rest on.
//!
//! Every check yields a [`TheoremReport`]: each hypothesis is evaluated
//! cheapest first and the first failure short-circuits the rest, while the
//! conclusion is always computed. A hypothesis whose evaluation exhausts a
//! budget is `undecided`, and so is the verdict unless another hypothesis
//! fails outright.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::arith;
use crate::classes::{self, ClassVerdict};
use crate::embeddings::{self, Embedding};
use crate::error::Result;
use crate::group::Group;
use crate::lattice::all_subgroups;
use crate::structure::{
    all_normal_subgroups, derived_subgroup, frattini, nilpotency_class, o_upper_p, quotient,
    supersolvable_hypercentre, sylow_subgroup, QuotientGroup,
};
use crate::subgroup::{self, Subgroup};

// ---------------------------------------------------------------------------
// Identifiers

/// The ten criteria. The string ids are part of the CLI and report format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Main,
    XuLi,
    SpecialNilp,
    AbelianObs,
    LiuYu,
    LiuYuSperm,
    LiuYuPsup,
    Chen,
    ChenCsup,
    ChenCsupPsup,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Main,
        TheoremId::XuLi,
        TheoremId::SpecialNilp,
        TheoremId::AbelianObs,
        TheoremId::LiuYu,
        TheoremId::LiuYuSperm,
        TheoremId::LiuYuPsup,
        TheoremId::Chen,
        TheoremId::ChenCsup,
        TheoremId::ChenCsupPsup,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremId::Main => "MAIN",
            TheoremId::XuLi => "XU_LI",
            TheoremId::SpecialNilp => "SPECIAL_NILP",
            TheoremId::AbelianObs => "ABELIAN_OBS",
            TheoremId::LiuYu => "LIU_YU",
            TheoremId::LiuYuSperm => "LIU_YU_SPERM",
            TheoremId::LiuYuPsup => "LIU_YU_PSUP",
            TheoremId::Chen => "CHEN",
            TheoremId::ChenCsup => "CHEN_CSUP",
            TheoremId::ChenCsupPsup => "CHEN_CSUP_PSUP",
        }
    }

    fn hypotheses(self) -> Vec<Property> {
        use Property::*;
        match self {
            TheoremId::Main => vec![
                PDivides,
                PSolvable,
                NormalizerPSupersolvable,
                SemipermAboveDerived,
            ],
            TheoremId::XuLi => vec![PDivides, NormalizerPNilpotent, SemipermCentralQuotient],
            TheoremId::SpecialNilp => vec![PDivides, NormalizerPNilpotent, SemipermAboveDerived],
            TheoremId::AbelianObs => {
                vec![PDivides, SylowAbelian, PSolvable, NormalizerPSupersolvable]
            }
            TheoremId::LiuYu => vec![
                PDivides,
                CoprimeToPMinusOne,
                SylowDerivedNormal,
                DCondition(DRule::PronormalInNormalizer),
            ],
            TheoremId::LiuYuSperm => vec![
                PDivides,
                CoprimeToPMinusOne,
                SemipermCentralQuotient,
                DCondition(DRule::SPermutableInNormalizer),
            ],
            TheoremId::LiuYuPsup => vec![
                PDivides,
                PSolvable,
                SemipermAboveDerived,
                DCondition(DRule::SPermutableInNormalizer),
            ],
            TheoremId::Chen => vec![PDivides, SmallestPrime, SylowDerivedNormal, MaximalWeaklyH],
            TheoremId::ChenCsup => vec![
                PDivides,
                SmallestPrime,
                SemipermCentralQuotient,
                DCondition(DRule::CSupplementedInNormalizer),
            ],
            TheoremId::ChenCsupPsup => vec![
                PDivides,
                PSolvable,
                SemipermAboveDerived,
                DCondition(DRule::CSupplementedInNormalizer),
            ],
        }
    }

    fn conclusion(self) -> Property {
        match self {
            TheoremId::Main
            | TheoremId::AbelianObs
            | TheoremId::LiuYuPsup
            | TheoremId::ChenCsupPsup => Property::PSupersolvable,
            _ => Property::PNilpotent,
        }
    }
}

/// Auxiliary lemmas checked alongside the theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// `HN/N` stays s-semipermutable in `G/N`.
    SemipermQuotient,
    /// `H ∩ N` is normalized by `O^p(G)` for normal p-subgroups `N`.
    SemipermNormalPart,
    /// `H` stays s-semipermutable in every intermediate subgroup.
    SemipermRestriction,
    /// The normal closure of `H` is solvable.
    SemipermClosureSolvable,
    /// s-permutable subgroups of a fixed order force p-supersolvability.
    SpermSupersolvable,
    /// c-supplemented subgroups of a normal p-subgroup put it in `Z_U(G)`.
    CsuppHypercentre,
    /// c-supplemented subgroups of a Sylow subgroup force p-nilpotence.
    CsuppNilpotent,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::SemipermQuotient,
        LemmaId::SemipermNormalPart,
        LemmaId::SemipermRestriction,
        LemmaId::SemipermClosureSolvable,
        LemmaId::SpermSupersolvable,
        LemmaId::CsuppHypercentre,
        LemmaId::CsuppNilpotent,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LemmaId::SemipermQuotient => "SEMIPERM_QUOTIENT",
            LemmaId::SemipermNormalPart => "SEMIPERM_NORMAL_PART",
            LemmaId::SemipermRestriction => "SEMIPERM_RESTRICTION",
            LemmaId::SemipermClosureSolvable => "SEMIPERM_CLOSURE_SOLVABLE",
            LemmaId::SpermSupersolvable => "SPERM_SUPERSOLVABLE",
            LemmaId::CsuppHypercentre => "CSUPP_HYPERCENTRE",
            LemmaId::CsuppNilpotent => "CSUPP_NILPOTENT",
        }
    }

    /// The four closure properties of s-semipermutable p-subgroups.
    pub fn is_semiperm_property(self) -> bool {
        matches!(
            self,
            LemmaId::SemipermQuotient
                | LemmaId::SemipermNormalPart
                | LemmaId::SemipermRestriction
                | LemmaId::SemipermClosureSolvable
        )
    }

    fn hypotheses(self) -> Vec<Property> {
        use Property::*;
        match self {
            LemmaId::SpermSupersolvable => vec![PDivides, DCondition(DRule::SPermutableInGroup)],
            LemmaId::CsuppNilpotent => {
                vec![
                    PDivides,
                    SmallestPrime,
                    DCondition(DRule::CSupplementedInGroup),
                ]
            }
            LemmaId::CsuppHypercentre => vec![PDivides, NormalPSubgroupCSupplemented],
            _ => vec![PDivides, SemipermPSubgroups],
        }
    }

    fn conclusion(self) -> Property {
        match self {
            LemmaId::SemipermQuotient => Property::QuotientImages,
            LemmaId::SemipermNormalPart => Property::NormalPartsNormalized,
            LemmaId::SemipermRestriction => Property::Restrictions,
            LemmaId::SemipermClosureSolvable => Property::ClosuresSolvable,
            LemmaId::SpermSupersolvable => Property::PSupersolvable,
            LemmaId::CsuppHypercentre => Property::InHypercentre,
            LemmaId::CsuppNilpotent => Property::PNilpotent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Theorem(TheoremId),
    Lemma(LemmaId),
}

impl CheckId {
    pub fn id(self) -> &'static str {
        match self {
            CheckId::Theorem(t) => t.id(),
            CheckId::Lemma(l) => l.id(),
        }
    }

    pub fn all_theorems() -> Vec<CheckId> {
        TheoremId::ALL.into_iter().map(CheckId::Theorem).collect()
    }

    pub fn all_lemmas() -> Vec<CheckId> {
        LemmaId::ALL.into_iter().map(CheckId::Lemma).collect()
    }

    fn hypotheses(self) -> Vec<Property> {
        match self {
            CheckId::Theorem(t) => t.hypotheses(),
            CheckId::Lemma(l) => l.hypotheses(),
        }
    }

    fn conclusion(self) -> Property {
        match self {
            CheckId::Theorem(t) => t.conclusion(),
            CheckId::Lemma(l) => l.conclusion(),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        LemmaId::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown lemma id {s:?}"))
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse::<TheoremId>()
            .map(CheckId::Theorem)
            .or_else(|_| s.parse::<LemmaId>().map(CheckId::Lemma))
            .map_err(|_| format!("unknown check id {s:?}"))
    }
}

// ---------------------------------------------------------------------------
// Report types

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    Skipped,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "true",
            Status::Fails => "false",
            Status::Skipped => "skipped",
            Status::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Confirmed,
    Vacuous,
    Violation,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Vacuous => "vacuous",
            Verdict::Violation => "VIOLATION",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which subgroups of `P` (or of a normal p-subgroup) must carry an
/// embedding property, and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DRule {
    PronormalInNormalizer,
    SPermutableInNormalizer,
    CSupplementedInNormalizer,
    SPermutableInGroup,
    CSupplementedInGroup,
}

impl DRule {
    fn embedding(self) -> Embedding {
        match self {
            DRule::PronormalInNormalizer => Embedding::Pronormal,
            DRule::SPermutableInNormalizer | DRule::SPermutableInGroup => Embedding::SPermutable,
            DRule::CSupplementedInNormalizer | DRule::CSupplementedInGroup => {
                Embedding::CSupplemented
            }
        }
    }

    fn in_normalizer(self) -> bool {
        matches!(
            self,
            DRule::PronormalInNormalizer
                | DRule::SPermutableInNormalizer
                | DRule::CSupplementedInNormalizer
        )
    }

    /// c-supplemented variants: `1 <= |D|` and orders `|D|` and `p|D|`.
    fn doubled(self) -> bool {
        self.embedding() == Embedding::CSupplemented
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Property {
    PDivides,
    SmallestPrime,
    CoprimeToPMinusOne,
    PSolvable,
    SylowAbelian,
    SylowDerivedNormal,
    NormalizerPSupersolvable,
    NormalizerPNilpotent,
    SemipermAboveDerived,
    SemipermCentralQuotient,
    DCondition(DRule),
    MaximalWeaklyH,
    SemipermPSubgroups,
    NormalPSubgroupCSupplemented,
    PNilpotent,
    PSupersolvable,
    InHypercentre,
    QuotientImages,
    NormalPartsNormalized,
    Restrictions,
    ClosuresSolvable,
}

impl Property {
    fn description(self) -> String {
        match self {
            Property::PDivides => "p divides |G|".into(),
            Property::SmallestPrime => "p is the smallest prime divisor of |G|".into(),
            Property::CoprimeToPMinusOne => "gcd(|G|, p-1) = 1".into(),
            Property::PSolvable => "G is p-solvable".into(),
            Property::SylowAbelian => "P is abelian".into(),
            Property::SylowDerivedNormal => "P' is normal in G".into(),
            Property::NormalizerPSupersolvable => "N_G(P) is p-supersolvable".into(),
            Property::NormalizerPNilpotent => "N_G(P) is p-nilpotent".into(),
            Property::SemipermAboveDerived => {
                "some H with P' <= H <= Phi(P) is s-semipermutable in G".into()
            }
            Property::SemipermCentralQuotient => {
                "some H normal in P with H <= Phi(P) and P/H = Z_{p-1}(P/H) is s-semipermutable in G"
                    .into()
            }
            Property::DCondition(rule) => {
                let (range, orders) = if rule.doubled() {
                    ("1 <= |D| < |P|", "|D| or p|D|")
                } else {
                    ("1 < |D| < |P|", "|D|")
                };
                let place = if rule.in_normalizer() { "N_G(P)" } else { "G" };
                format!(
                    "some {range} has every subgroup of P of order {orders} {} in {place}",
                    rule.embedding()
                )
            }
            Property::MaximalWeaklyH => {
                "every maximal subgroup of P is a weakly-h-subgroup of N_G(P)".into()
            }
            Property::SemipermPSubgroups => "G has s-semipermutable p-subgroups H".into(),
            Property::NormalPSubgroupCSupplemented => {
                "some nontrivial normal p-subgroup N has 1 <= |D| < |N| with every subgroup of N of order |D| or p|D| c-supplemented in G"
                    .into()
            }
            Property::PNilpotent => "G is p-nilpotent".into(),
            Property::PSupersolvable => "G is p-supersolvable".into(),
            Property::InHypercentre => "every such N lies in Z_U(G)".into(),
            Property::QuotientImages => {
                "HN/N is s-semipermutable in G/N for every normal N".into()
            }
            Property::NormalPartsNormalized => {
                "H meet N is normalized by O^p(G) for every normal p-subgroup N".into()
            }
            Property::Restrictions => "H is s-semipermutable in every K >= H".into(),
            Property::ClosuresSolvable => "the normal closure of H is solvable".into(),
        }
    }
}

/// Data that lets a condition be re-checked without repeating the search.
#[derive(Debug, Clone)]
enum Evidence {
    None,
    Class(ClassVerdict),
    Subgroup(Subgroup),
    DOrder(u64),
    Subgroups(Vec<Subgroup>),
}

#[derive(Debug, Clone)]
pub struct Condition {
    property: Property,
    pub description: String,
    pub status: Status,
    pub witness: Option<String>,
    evidence: Evidence,
}

impl Condition {
    fn skipped(property: Property) -> Self {
        Condition {
            property,
            description: property.description(),
            status: Status::Skipped,
            witness: None,
            evidence: Evidence::None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub check: CheckId,
    pub hypotheses: Vec<Condition>,
    pub conclusion: Condition,
    pub verdict: Verdict,
    pub elapsed: Duration,
}

impl TheoremReport {
    /// Re-derives every decided condition from its stored witness (or by a
    /// fresh evaluation when the witness is a universal statement) and checks
    /// the verdict matches the condition statuses.
    pub fn revalidate(&self, group: &Group) -> Result<bool> {
        if group.order() != self.order {
            return Ok(false);
        }
        let ctx = PrimeContext::new(group, self.prime)?;
        for c in self.hypotheses.iter().chain([&self.conclusion]) {
            let ok = match c.status {
                Status::Skipped | Status::Undecided => true,
                Status::Holds | Status::Fails => {
                    recheck(&ctx, c, &self.hypotheses)? == (c.status == Status::Holds)
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(verdict_of(&self.hypotheses, &self.conclusion) == self.verdict)
    }
}

fn verdict_of(hyps: &[Condition], conclusion: &Condition) -> Verdict {
    if hyps.iter().any(|c| c.status == Status::Fails) {
        Verdict::Vacuous
    } else if hyps.iter().any(|c| c.status != Status::Holds) {
        Verdict::Undecided
    } else {
        match conclusion.status {
            Status::Holds => Verdict::Confirmed,
            Status::Fails => Verdict::Violation,
            _ => Verdict::Undecided,
        }
    }
}

// ---------------------------------------------------------------------------
// Per (G, p) context

/// Shared computations for one group and prime: the Sylow subgroup `P`, its
/// normalizer, `P'`, `Φ(P)` and the subgroup lists searched by the checks.
pub struct PrimeContext {
    group: Group,
    p: u64,
    sylow: Subgroup,
    sylow_group: Group,
    normalizer: Group,
    derived: Subgroup,
    frattini: OnceLock<Result<Subgroup>>,
    p_subgroups: OnceLock<Result<Vec<Subgroup>>>,
    p_subgroups_in_n: OnceLock<Result<Vec<Subgroup>>>,
    semiperm: OnceLock<Result<Vec<Subgroup>>>,
}

impl PrimeContext {
    pub fn new(group: &Group, p: u64) -> Result<Self> {
        let sylow = sylow_subgroup(group, p)?;
        let sylow_group = sylow.to_group();
        let normalizer = subgroup::normalizer(group, &sylow)?.to_group();
        let derived = derived_subgroup(&sylow_group).transport(group)?;
        Ok(PrimeContext {
            group: group.clone(),
            p,
            sylow,
            sylow_group,
            normalizer,
            derived,
            frattini: OnceLock::new(),
            p_subgroups: OnceLock::new(),
            p_subgroups_in_n: OnceLock::new(),
            semiperm: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    /// `N_G(P)` as a group of its own.
    pub fn normalizer(&self) -> &Group {
        &self.normalizer
    }

    /// `Φ(P)` inside `G`.
    pub fn frattini(&self) -> Result<Subgroup> {
        self.frattini
            .get_or_init(|| frattini(&self.sylow_group)?.transport(&self.group))
            .clone()
    }

    /// Subgroups of `P` inside `G`, in canonical order.
    pub fn p_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.p_subgroups
            .get_or_init(|| {
                let mut subs = all_subgroups(&self.sylow_group)?
                    .iter()
                    .map(|s| s.transport(&self.group))
                    .collect::<Result<Vec<_>>>()?;
                subs.sort_by(|a, b| a.canonical_cmp(b));
                Ok(subs)
            })
            .clone()
    }

    /// Subgroups of `P` inside `N_G(P)`, in canonical order.
    fn p_subgroups_in_normalizer(&self) -> Result<Vec<Subgroup>> {
        self.p_subgroups_in_n
            .get_or_init(|| {
                let mut subs = self
                    .p_subgroups()?
                    .iter()
                    .map(|s| s.transport(&self.normalizer))
                    .collect::<Result<Vec<_>>>()?;
                subs.sort_by(|a, b| a.canonical_cmp(b));
                Ok(subs)
            })
            .clone()
    }

    /// Every p-subgroup of `G` that is s-semipermutable in `G`.
    fn semiperm_p_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.semiperm
            .get_or_init(|| {
                let mut out = Vec::new();
                for h in all_subgroups(&self.group)? {
                    if h.is_p_group(self.p)
                        && embeddings::is_s_semipermutable(&h, &self.group)?.holds
                    {
                        out.push(h);
                    }
                }
                Ok(out)
            })
            .clone()
    }

    fn nonabelian_two_group(&self, base: &Subgroup) -> bool {
        self.p == 2 && !base.to_group().is_abelian()
    }
}

// ---------------------------------------------------------------------------
// Witness searches

fn main_candidate(ctx: &PrimeContext, h: &Subgroup) -> Result<bool> {
    Ok(ctx.derived.is_subgroup_of(h) && h.is_subgroup_of(&ctx.frattini()?))
}

fn xu_li_candidate(ctx: &PrimeContext, h: &Subgroup) -> Result<bool> {
    if !h.is_subgroup_of(&ctx.frattini()?) || !subgroup::is_normal_within(h, &ctx.sylow) {
        return Ok(false);
    }
    let q = quotient(&ctx.sylow_group, &h.transport(&ctx.sylow_group)?)?;
    let class = nilpotency_class(q.group()).expect("p-groups are nilpotent");
    Ok((class as u64) < ctx.p)
}

fn first_semiperm(
    ctx: &PrimeContext,
    candidate: fn(&PrimeContext, &Subgroup) -> Result<bool>,
) -> Result<Option<Subgroup>> {
    for h in ctx.p_subgroups()? {
        if candidate(ctx, &h)? && embeddings::is_s_semipermutable(&h, &ctx.group)?.holds {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// First `H` in canonical order with `P' <= H <= Φ(P)` and `H`
/// s-semipermutable in `G`, where `P = sylow_subgroup(G, p)`.
pub fn find_witness_main(group: &Group, p: u64) -> Result<Option<Subgroup>> {
    first_semiperm(&PrimeContext::new(group, p)?, main_candidate)
}

/// First `H` normal in `P` with `H <= Φ(P)`, `P/H = Z_{p-1}(P/H)` and `H`
/// s-semipermutable in `G`.
pub fn find_witness_xu_li(group: &Group, p: u64) -> Result<Option<Subgroup>> {
    first_semiperm(&PrimeContext::new(group, p)?, xu_li_candidate)
}

fn is_cyclic_of_order_four(s: &Subgroup) -> bool {
    s.order() == 4 && s.indices().any(|x| s.parent().element_order(x) == 4)
}

/// Does order `d` satisfy the rule for the subgroups `subs` of `base`?
/// `memo` caches the embedding check per subgroup across values of `d`.
fn d_order_holds(
    d: u64,
    p: u64,
    subs: &[Subgroup],
    ambient: &Group,
    rule: DRule,
    proviso: bool,
    memo: &mut [Option<bool>],
) -> Result<bool> {
    let proviso_order = if rule.doubled() { 1 } else { 2 };
    for (i, s) in subs.iter().enumerate() {
        let o = s.order() as u64;
        let needed = o == d
            || (rule.doubled() && o == p * d)
            || (proviso && d == proviso_order && is_cyclic_of_order_four(s));
        if !needed {
            continue;
        }
        let holds = match memo[i] {
            Some(v) => v,
            None => {
                let v = rule.embedding().check(s, ambient)?.holds;
                memo[i] = Some(v);
                v
            }
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Candidate orders `|D|` for a base of order `base_order`, ascending.
fn d_orders(rule: DRule, p: u64, base_order: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = if rule.doubled() { 1 } else { p };
    while d < base_order {
        out.push(d);
        d *= p;
    }
    out
}

/// Smallest `|D|` that satisfies the rule, if any.
fn search_d(
    ctx: &PrimeContext,
    rule: DRule,
    base: &Subgroup,
    subs: &[Subgroup],
    ambient: &Group,
) -> Result<Option<u64>> {
    let proviso = ctx.nonabelian_two_group(base);
    let mut memo = vec![None; subs.len()];
    for d in d_orders(rule, ctx.p, base.order() as u64) {
        if d_order_holds(d, ctx.p, subs, ambient, rule, proviso, &mut memo)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn sylow_d_context(ctx: &PrimeContext, rule: DRule) -> Result<(Vec<Subgroup>, Group)> {
    if rule.in_normalizer() {
        Ok((ctx.p_subgroups_in_normalizer()?, ctx.normalizer.clone()))
    } else {
        Ok((ctx.p_subgroups()?, ctx.group.clone()))
    }
}

/// Subgroups of `n` inside `G`, canonical order.
fn subgroups_below(group: &Group, n: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(group)?
        .into_iter()
        .filter(|s| s.is_subgroup_of(n))
        .collect())
}

/// Nontrivial normal p-subgroups satisfying the c-supplement condition.
fn csupp_normal_p_subgroups(ctx: &PrimeContext) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for n in all_normal_subgroups(&ctx.group) {
        if n.is_trivial() || !n.is_p_group(ctx.p) {
            continue;
        }
        let subs = subgroups_below(&ctx.group, &n)?;
        if search_d(ctx, DRule::CSupplementedInGroup, &n, &subs, &ctx.group)?.is_some() {
            out.push(n);
        }
    }
    Ok(out)
}

fn maximal_in_sylow(ctx: &PrimeContext) -> Result<Vec<Subgroup>> {
    let target = ctx.sylow.order() / ctx.p as usize;
    Ok(ctx
        .p_subgroups_in_normalizer()?
        .into_iter()
        .filter(|s| s.order() == target)
        .collect())
}

// ---------------------------------------------------------------------------
// Lemma properties over all s-semipermutable p-subgroups

/// First counterexample `(H, other)` to the property, if any.
fn semiperm_counterexample(
    ctx: &PrimeContext,
    property: Property,
) -> Result<Option<(Subgroup, Option<Subgroup>)>> {
    let g = &ctx.group;
    let hs = ctx.semiperm_p_subgroups()?;
    match property {
        Property::QuotientImages => {
            let quotients: Vec<(Subgroup, QuotientGroup)> = all_normal_subgroups(g)
                .into_iter()
                .map(|n| {
                    let q = quotient(g, &n)?;
                    Ok((n, q))
                })
                .collect::<Result<_>>()?;
            for h in &hs {
                for (n, q) in &quotients {
                    let img = q.image(h);
                    if !embeddings::is_s_semipermutable(&img, q.group())?.holds {
                        return Ok(Some((h.clone(), Some(n.clone()))));
                    }
                }
            }
        }
        Property::NormalPartsNormalized => {
            let upper = o_upper_p(g, ctx.p)?;
            let normal_p: Vec<Subgroup> = all_normal_subgroups(g)
                .into_iter()
                .filter(|n| n.is_p_group(ctx.p))
                .collect();
            for h in &hs {
                for n in &normal_p {
                    let meet = h.intersection(n);
                    if !upper
                        .generator_indices()
                        .iter()
                        .all(|&x| meet.normalized_by(x))
                    {
                        return Ok(Some((h.clone(), Some(n.clone()))));
                    }
                }
            }
        }
        Property::Restrictions => {
            let subs = all_subgroups(g)?;
            let groups: Vec<OnceCell<Group>> = subs.iter().map(|_| OnceCell::new()).collect();
            for h in &hs {
                for (k, cell) in subs.iter().zip(&groups) {
                    if !h.is_subgroup_of(k) {
                        continue;
                    }
                    let kg = cell.get_or_init(|| k.to_group());
                    let hk = h.transport(kg)?;
                    if !embeddings::is_s_semipermutable(&hk, kg)?.holds {
                        return Ok(Some((h.clone(), Some(k.clone()))));
                    }
                }
            }
        }
        Property::ClosuresSolvable => {
            for h in &hs {
                let closure = subgroup::normal_closure(g, h)?;
                if !classes::is_solvable(&closure.to_group()).holds {
                    return Ok(Some((h.clone(), Some(closure))));
                }
            }
        }
        _ => unreachable!("not a closure property"),
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Evaluation

struct Outcome {
    holds: bool,
    witness: Option<String>,
    evidence: Evidence,
}

impl Outcome {
    fn plain(holds: bool, witness: impl Into<Option<String>>) -> Self {
        Outcome {
            holds,
            witness: witness.into(),
            evidence: Evidence::None,
        }
    }

    fn class(v: ClassVerdict) -> Self {
        Outcome {
            holds: v.holds,
            witness: Some(v.witness.to_string()),
            evidence: Evidence::Class(v),
        }
    }
}

fn found_subgroup(s: Option<Subgroup>, none: &str) -> Outcome {
    match s {
        Some(h) => Outcome {
            holds: true,
            witness: Some(format!("H = {h}")),
            evidence: Evidence::Subgroup(h),
        },
        None => Outcome::plain(false, none.to_string()),
    }
}

fn evaluate_property(
    ctx: &PrimeContext,
    property: Property,
    hyps: &[Condition],
) -> Result<Outcome> {
    let g = &ctx.group;
    let p = ctx.p;
    let order = g.order() as u64;
    Ok(match property {
        Property::PDivides => Outcome::plain(order.is_multiple_of(p), format!("|G| = {order}")),
        Property::SmallestPrime => {
            let smallest = g.prime_divisors().first().copied();
            Outcome::plain(
                smallest == Some(p),
                smallest.map(|q| format!("smallest prime divisor {q}")),
            )
        }
        Property::CoprimeToPMinusOne => {
            let d = arith::gcd(order, p - 1);
            Outcome::plain(d == 1, format!("gcd = {d}"))
        }
        Property::PSolvable => Outcome::class(classes::is_p_solvable(g, p)?),
        Property::SylowAbelian => Outcome::plain(
            ctx.sylow_group.is_abelian(),
            format!("|P| = {}", ctx.sylow.order()),
        ),
        Property::SylowDerivedNormal => Outcome::plain(
            subgroup::is_normal(&ctx.derived, g)?,
            format!("|P'| = {}", ctx.derived.order()),
        ),
        Property::NormalizerPSupersolvable => {
            Outcome::class(classes::is_p_supersolvable(&ctx.normalizer, p)?)
        }
        Property::NormalizerPNilpotent => {
            Outcome::class(classes::is_p_nilpotent(&ctx.normalizer, p)?)
        }
        Property::SemipermAboveDerived => {
            found_subgroup(first_semiperm(ctx, main_candidate)?, "no such H")
        }
        Property::SemipermCentralQuotient => {
            found_subgroup(first_semiperm(ctx, xu_li_candidate)?, "no such H")
        }
        Property::DCondition(rule) => {
            let (subs, ambient) = sylow_d_context(ctx, rule)?;
            let base = if rule.in_normalizer() {
                ctx.sylow.transport(&ctx.normalizer)?
            } else {
                ctx.sylow.clone()
            };
            match search_d(ctx, rule, &base, &subs, &ambient)? {
                Some(d) => Outcome {
                    holds: true,
                    witness: Some(format!("|D| = {d}")),
                    evidence: Evidence::DOrder(d),
                },
                None => Outcome::plain(false, "no order |D| qualifies".to_string()),
            }
        }
        Property::MaximalWeaklyH => {
            let mut failing = None;
            for m in maximal_in_sylow(ctx)? {
                if !embeddings::is_weakly_h_subgroup(&m, &ctx.normalizer)?.holds {
                    failing = Some(m);
                    break;
                }
            }
            match failing {
                Some(m) => Outcome {
                    holds: false,
                    witness: Some(format!("fails for {m}")),
                    evidence: Evidence::Subgroup(m),
                },
                None => Outcome::plain(true, None),
            }
        }
        Property::SemipermPSubgroups => {
            let n = ctx.semiperm_p_subgroups()?.len();
            Outcome::plain(n > 0, format!("{n} subgroups"))
        }
        Property::NormalPSubgroupCSupplemented => {
            let found = csupp_normal_p_subgroups(ctx)?;
            let orders: Vec<usize> = found.iter().map(Subgroup::order).collect();
            Outcome {
                holds: !found.is_empty(),
                witness: Some(format!("qualifying orders {orders:?}")),
                evidence: Evidence::Subgroups(found),
            }
        }
        Property::PNilpotent => Outcome::class(classes::is_p_nilpotent(g, p)?),
        Property::PSupersolvable => Outcome::class(classes::is_p_supersolvable(g, p)?),
        Property::InHypercentre => {
            let qualifying = hyps
                .iter()
                .find_map(|c| match (&c.property, &c.evidence) {
                    (Property::NormalPSubgroupCSupplemented, Evidence::Subgroups(v)) => {
                        Some(v.clone())
                    }
                    _ => None,
                })
                .unwrap_or_default();
            let zu = supersolvable_hypercentre(g);
            let bad = qualifying.iter().find(|n| !n.is_subgroup_of(&zu));
            Outcome::plain(
                bad.is_none(),
                match bad {
                    Some(n) => format!("{n} not in Z_U(G) of order {}", zu.order()),
                    None => format!("|Z_U(G)| = {}", zu.order()),
                },
            )
        }
        Property::QuotientImages
        | Property::NormalPartsNormalized
        | Property::Restrictions
        | Property::ClosuresSolvable => match semiperm_counterexample(ctx, property)? {
            Some((h, other)) => Outcome {
                holds: false,
                witness: Some(match &other {
                    Some(o) => format!("H = {h} against {o}"),
                    None => format!("H = {h}"),
                }),
                evidence: Evidence::Subgroup(h),
            },
            None => Outcome::plain(true, None),
        },
    })
}

fn to_condition(property: Property, result: Result<Outcome>) -> Result<Condition> {
    let (status, witness, evidence) = match result {
        Ok(o) => (
            if o.holds {
                Status::Holds
            } else {
                Status::Fails
            },
            o.witness,
            o.evidence,
        ),
        Err(e) if e.is_budget() => (Status::Undecided, Some(e.to_string()), Evidence::None),
        Err(e) => return Err(e),
    };
    Ok(Condition {
        property,
        description: property.description(),
        status,
        witness,
        evidence,
    })
}

/// Evaluates one check against a prepared context.
pub fn evaluate_in(ctx: &PrimeContext, check: CheckId, name: &str) -> Result<TheoremReport> {
    evaluate_parts(ctx, check, &check.hypotheses(), check.conclusion(), name)
}

fn evaluate_parts(
    ctx: &PrimeContext,
    check: CheckId,
    hyps: &[Property],
    property: Property,
    name: &str,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let mut hypotheses: Vec<Condition> = Vec::new();
    let mut failed = false;
    for &property in hyps {
        if failed {
            hypotheses.push(Condition::skipped(property));
            continue;
        }
        let c = to_condition(property, evaluate_property(ctx, property, &hypotheses))?;
        failed = c.status == Status::Fails;
        hypotheses.push(c);
    }
    let conclusion = to_condition(property, evaluate_property(ctx, property, &hypotheses))?;
    let verdict = verdict_of(&hypotheses, &conclusion);
    Ok(TheoremReport {
        group: name.to_string(),
        order: ctx.group.order(),
        prime: ctx.p,
        check,
        hypotheses,
        conclusion,
        verdict,
        elapsed: start.elapsed(),
    })
}

pub fn evaluate(check: CheckId, name: &str, group: &Group, p: u64) -> Result<TheoremReport> {
    evaluate_in(&PrimeContext::new(group, p)?, check, name)
}

/// All lemma checks for one group and prime.
pub fn lemma_suite(name: &str, group: &Group, p: u64) -> Result<Vec<TheoremReport>> {
    let ctx = PrimeContext::new(group, p)?;
    LemmaId::ALL
        .into_iter()
        .map(|l| evaluate_in(&ctx, CheckId::Lemma(l), name))
        .collect()
}

// ---------------------------------------------------------------------------
// Revalidation

/// Recomputes whether the condition holds, using its evidence where possible.
fn recheck(ctx: &PrimeContext, c: &Condition, hyps: &[Condition]) -> Result<bool> {
    let g = &ctx.group;
    match (&c.property, &c.evidence) {
        (_, Evidence::Class(v)) => {
            let scope = match c.property {
                Property::NormalizerPNilpotent | Property::NormalizerPSupersolvable => {
                    &ctx.normalizer
                }
                _ => g,
            };
            if !v.revalidate(scope) {
                // report the opposite of the recorded status
                return Ok(c.status != Status::Holds);
            }
            Ok(v.holds)
        }
        (Property::SemipermAboveDerived, Evidence::Subgroup(h)) => {
            let h = h.transport(g)?;
            Ok(h.is_subgroup_of(&ctx.sylow)
                && main_candidate(ctx, &h)?
                && embeddings::is_s_semipermutable(&h, g)?.holds)
        }
        (Property::SemipermCentralQuotient, Evidence::Subgroup(h)) => {
            let h = h.transport(g)?;
            Ok(h.is_subgroup_of(&ctx.sylow)
                && xu_li_candidate(ctx, &h)?
                && embeddings::is_s_semipermutable(&h, g)?.holds)
        }
        (Property::DCondition(rule), Evidence::DOrder(d)) => {
            let (subs, ambient) = sylow_d_context(ctx, *rule)?;
            let base = ctx.sylow.clone();
            let proviso = ctx.nonabelian_two_group(&base);
            let mut memo = vec![None; subs.len()];
            Ok(d_orders(*rule, ctx.p, base.order() as u64).contains(d)
                && d_order_holds(*d, ctx.p, &subs, &ambient, *rule, proviso, &mut memo)?)
        }
        (Property::MaximalWeaklyH, Evidence::Subgroup(m)) => {
            let m = m.transport(&ctx.normalizer)?;
            let is_max = m.order() * ctx.p as usize == ctx.sylow.order()
                && m.elements().all(|x| ctx.sylow.contains(x));
            // a failing maximal subgroup refutes the universal statement
            Ok(!(is_max && !embeddings::is_weakly_h_subgroup(&m, &ctx.normalizer)?.holds))
        }
        (Property::NormalPSubgroupCSupplemented, Evidence::Subgroups(found)) => {
            for n in found {
                let n = n.transport(g)?;
                if !subgroup::is_normal(&n, g)? || !n.is_p_group(ctx.p) || n.is_trivial() {
                    return Ok(false);
                }
                let subs = subgroups_below(g, &n)?;
                if search_d(ctx, DRule::CSupplementedInGroup, &n, &subs, g)?.is_none() {
                    return Ok(false);
                }
            }
            Ok(evaluate_property(ctx, c.property, hyps)?.holds)
        }
        (
            Property::QuotientImages
            | Property::NormalPartsNormalized
            | Property::Restrictions
            | Property::ClosuresSolvable,
            Evidence::Subgroup(h),
        ) => {
            // the stored H must itself be one of the subgroups quantified over
            let h = h.transport(g)?;
            if !ctx.semiperm_p_subgroups()?.contains(&h) {
                return Ok(true);
            }
            Ok(evaluate_property(ctx, c.property, hyps)?.holds)
        }
        _ => Ok(evaluate_property(ctx, c.property, hyps)?.holds),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::perm::Permutation;

    fn group(gens: &[&str], n: usize) -> Group {
        generate_group(
            &gens
                .iter()
                .map(|s| Permutation::parse(s, n).unwrap())
                .collect::<Vec<_>>(),
            n,
        )
        .unwrap()
    }

    fn s3() -> Group {
        group(&["(1 2)", "(1 2 3)"], 3)
    }
    fn s4() -> Group {
        group(&["(1 2)", "(1 2 3 4)"], 4)
    }

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.id().parse::<TheoremId>().unwrap(), t);
            assert_eq!(t.id().parse::<CheckId>().unwrap(), CheckId::Theorem(t));
        }
        for l in LemmaId::ALL {
            assert_eq!(l.id().parse::<CheckId>().unwrap(), CheckId::Lemma(l));
        }
        assert!("MAINS".parse::<CheckId>().is_err());
    }

    #[test]
    fn main_witness_examples() {
        let h = find_witness_main(&s3(), 2).unwrap().unwrap();
        assert!(h.is_trivial());
        assert!(find_witness_main(&s4(), 2).unwrap().is_none());
    }

    #[test]
    fn xu_li_witness_examples() {
        let h = find_witness_xu_li(&s3(), 2).unwrap().unwrap();
        assert!(h.is_trivial());
        assert!(find_witness_xu_li(&s4(), 2).unwrap().is_none());
    }

    #[test]
    fn main_confirmed_on_s3() {
        let g = s3();
        let r = evaluate(CheckId::Theorem(TheoremId::Main), "S3", &g, 2).unwrap();
        assert!(r.hypotheses.iter().all(|c| c.status == Status::Holds));
        assert_eq!(r.conclusion.status, Status::Holds);
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert!(r.revalidate(&g).unwrap());
    }

    #[test]
    fn main_vacuous_on_s4() {
        let g = s4();
        let r = evaluate(CheckId::Theorem(TheoremId::Main), "S4", &g, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert!(r.revalidate(&g).unwrap());
    }

    #[test]
    fn abelian_observation_on_s4() {
        let g = s4();
        let r = evaluate(CheckId::Theorem(TheoremId::AbelianObs), "S4", &g, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let ctx = PrimeContext::new(&g, 3).unwrap();
        assert_eq!(ctx.normalizer().order(), 6);
    }

    #[test]
    fn short_circuit_marks_skipped() {
        let g = s3();
        let r = evaluate(CheckId::Theorem(TheoremId::Main), "S3", &g, 5).unwrap();
        assert_eq!(r.hypotheses[0].status, Status::Fails);
        assert!(r.hypotheses[1..]
            .iter()
            .all(|c| c.status == Status::Skipped));
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert_eq!(r.conclusion.status, Status::Holds);
    }

    #[test]
    fn lemma_examples() {
        let g = s4();
        let r = evaluate(CheckId::Lemma(LemmaId::SpermSupersolvable), "S4", &g, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
        let g = s3();
        let r = evaluate(CheckId::Lemma(LemmaId::CsuppNilpotent), "S3", &g, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert!(r.hypotheses[2].witness.as_deref() == Some("|D| = 1"));
        for r in lemma_suite("S4", &s4(), 2).unwrap() {
            assert_ne!(r.verdict, Verdict::Violation, "{}", r.check);
            assert_ne!(r.verdict, Verdict::Undecided, "{}", r.check);
        }
    }

    #[test]
    fn budget_makes_verdict_undecided() {
        let limits = crate::group::Limits {
            elements: 1000,
            enumeration: 4,
        };
        let g = Group::generate_with_limits(
            &[
                Permutation::parse("(1 2)", 4).unwrap(),
                Permutation::parse("(1 2 3 4)", 4).unwrap(),
            ],
            4,
            limits,
        )
        .unwrap();
        let r = evaluate(CheckId::Theorem(TheoremId::Main), "S4", &g, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Undecided);
        assert!(r.hypotheses.iter().any(|c| c.status == Status::Undecided));
    }

    #[test]
    fn central_quotient_variant_of_main_is_refuted_by_fixture() {
        let g = crate::catalog::fixture_216_153().unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let hyps = [
            Property::PDivides,
            Property::PSolvable,
            Property::NormalizerPSupersolvable,
            Property::SemipermCentralQuotient,
        ];
        let r = evaluate_parts(
            &ctx,
            CheckId::Theorem(TheoremId::Main),
            &hyps,
            Property::PSupersolvable,
            "fixture",
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Violation);
        assert!(r.revalidate(&g).unwrap());
    }

    #[test]
    fn every_check_on_small_groups() {
        let groups = [
            s3(),
            s4(),
            group(&["(1 2 3)", "(1 2)(3 4)"], 4),
            group(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 8),
            group(&["(1 2 3 4 5)", "(2 5)(3 4)"], 5),
        ];
        for g in &groups {
            for p in g.prime_divisors() {
                let ctx = PrimeContext::new(g, p).unwrap();
                for check in CheckId::all_theorems()
                    .into_iter()
                    .chain(CheckId::all_lemmas())
                {
                    let r = evaluate_in(&ctx, check, "g").unwrap();
                    assert_ne!(
                        r.verdict,
                        Verdict::Violation,
                        "{check} |G|={} p={p}",
                        g.order()
                    );
                    assert_ne!(r.verdict, Verdict::Undecided);
                    assert!(r.revalidate(g).unwrap(), "{check} |G|={} p={p}", g.order());
                }
            }
        }
    }
}
