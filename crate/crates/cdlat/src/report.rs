//! Pipeline driver, the JSON report schema, and the parallel survey.
//!
//! Reports are schema-stable (see `schema_version`) and serialize with a
//! canonical field order. Timings are volatile, so they are carried
//! separately and only included when explicitly requested; everything else
//! is byte-deterministic for a fixed spec and version.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::catalog::{parse_spec, survey_corpus, GroupSpec, SpecError};
use crate::density::{
    is_dense_cd_capped, survey_record, verify_theorem_1_1, verify_theorem_1_2, DensityVerdict,
    SurveyRecord, TheoremReport, DEFAULT_WITNESS_CAP,
};
use crate::group::{GroupError, GroupTable, StructureFlags};
use crate::lattice::{enumerate_subgroups_capped, Lattice, LatticeError};
use crate::measure::{cd_lattice, CdResult};
use crate::properties::{verify_cd_properties, PropertyReport, SubgroupWitness, Witness};

/// Version tag carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl From<GroupError> for AnalysisError {
    fn from(error: GroupError) -> Self {
        AnalysisError::Spec(SpecError::Group(error))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub caps: Caps,
    /// Bound on retained density failure witnesses.
    pub witness_cap: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            caps: Caps::default(),
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

/// Wall-clock milliseconds per pipeline stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub build_ms: f64,
    pub enumerate_ms: f64,
    pub cd_ms: f64,
    pub properties_ms: f64,
    pub density_ms: f64,
}

/// Everything the pipeline computed for one group, in full fidelity.
/// [`Analysis::report`] projects this onto the serializable schema.
pub struct Analysis {
    pub spec_text: String,
    pub group: GroupTable,
    pub flags: StructureFlags,
    pub lattice: Lattice,
    pub cd: CdResult,
    pub properties: PropertyReport,
    pub density: DensityVerdict,
    pub theorem_1_1: Option<TheoremReport>,
    pub timings: Timings,
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn analyze_text(text: &str, options: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    let spec = parse_spec(text)?;
    analyze_spec(&spec, options)
}

/// Runs the full pipeline on one spec.
pub fn analyze_spec(
    spec: &GroupSpec,
    options: &AnalysisOptions,
) -> Result<Analysis, AnalysisError> {
    let start = Instant::now();
    let group = spec.build_capped(&options.caps)?;
    let build_ms = ms(start);

    let start = Instant::now();
    let lattice = enumerate_subgroups_capped(&group, options.caps.max_subgroups)?;
    let enumerate_ms = ms(start);

    let start = Instant::now();
    let cd = cd_lattice(&group, &lattice);
    let cd_ms = ms(start);

    let start = Instant::now();
    let properties = verify_cd_properties(&group, &lattice, &cd);
    let properties_ms = ms(start);

    let start = Instant::now();
    let density = is_dense_cd_capped(&lattice, &cd, options.witness_cap);
    let density_ms = ms(start);

    let flags = group.structure_flags();
    let theorem_1_1 = if density.dense
        && flags.p_group.is_some()
        && flags.prime_signature[0].1 >= 2
    {
        Some(
            verify_theorem_1_1(&group, &lattice, &cd, &density)
                .expect("preconditions were just checked"),
        )
    } else {
        None
    };

    Ok(Analysis {
        spec_text: spec.to_string(),
        group,
        flags,
        lattice,
        cd,
        properties,
        density,
        theorem_1_1,
        timings: Timings {
            build_ms,
            enumerate_ms,
            cd_ms,
            properties_ms,
            density_ms,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: u64,
    pub prime_signature: Vec<(u64, u32)>,
    pub is_abelian: bool,
    pub is_p_group: Option<u64>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub subgroup_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdSummary {
    pub m_star: u64,
    pub member_count: usize,
    pub min_member: SubgroupWitness,
    pub max_member: SubgroupWitness,
    pub measure_image: Vec<u64>,
    pub members: Vec<SubgroupWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyEntry {
    pub id: String,
    pub description: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailurePair {
    pub h: SubgroupWitness,
    pub k: SubgroupWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySummary {
    pub dense: bool,
    pub pairs_checked: u64,
    pub witness_cap: usize,
    pub failures: Vec<FailurePair>,
}

/// The serializable analysis report. Round-trips losslessly through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub spec: String,
    pub group: GroupSummary,
    pub lattice: LatticeSummary,
    pub cd: CdSummary,
    pub properties: Vec<PropertyEntry>,
    pub density: DensitySummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theorem_1_1: Option<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings_ms: Option<Timings>,
}

impl Analysis {
    /// Projects the analysis onto the report schema. Timings are included
    /// only on request because they vary across runs; everything else is
    /// deterministic.
    pub fn report(&self, include_timings: bool) -> AnalysisReport {
        let witness = |index: usize| SubgroupWitness::from_lattice(&self.lattice, index);
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            spec: self.spec_text.clone(),
            group: GroupSummary {
                order: self.group.order() as u64,
                prime_signature: self.flags.prime_signature.clone(),
                is_abelian: self.flags.is_abelian,
                is_p_group: self.flags.p_group,
                is_solvable: self.flags.is_solvable,
                is_nilpotent: self.flags.is_nilpotent,
            },
            lattice: LatticeSummary {
                subgroup_count: self.lattice.len(),
            },
            cd: CdSummary {
                m_star: self.cd.m_star(),
                member_count: self.cd.members().len(),
                min_member: witness(self.cd.min_member()),
                max_member: witness(self.cd.max_member()),
                measure_image: self.cd.image().into_iter().collect(),
                members: self.cd.members().iter().map(|&i| witness(i)).collect(),
            },
            properties: self
                .properties
                .checks
                .iter()
                .map(|check| PropertyEntry {
                    id: check.id.name().to_string(),
                    description: check.id.description().to_string(),
                    passed: check.passed,
                    witness: check.witness.clone(),
                })
                .collect(),
            density: DensitySummary {
                dense: self.density.dense,
                pairs_checked: self.density.pairs_checked,
                witness_cap: self.density.witness_cap,
                failures: self
                    .density
                    .failures
                    .iter()
                    .map(|&(h, k)| FailurePair {
                        h: witness(h),
                        k: witness(k),
                    })
                    .collect(),
            },
            theorem_1_1: self.theorem_1_1.clone(),
            timings_ms: include_timings.then(|| self.timings.clone()),
        }
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Human-readable rendering; deterministic for a fixed report.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("group       {}", self.spec));
        let signature = self
            .group
            .prime_signature
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ");
        if signature.is_empty() {
            push(&mut out, format!("order       {}", self.group.order));
        } else {
            push(
                &mut out,
                format!("order       {} = {}", self.group.order, signature),
            );
        }
        let mut traits = Vec::new();
        traits.push(if self.group.is_abelian { "abelian" } else { "nonabelian" });
        if let Some(p) = self.group.is_p_group {
            traits.push(match p {
                2 => "2-group",
                3 => "3-group",
                5 => "5-group",
                7 => "7-group",
                _ => "p-group",
            });
        }
        if self.group.is_nilpotent {
            traits.push("nilpotent");
        } else if self.group.is_solvable {
            traits.push("solvable");
        }
        push(&mut out, format!("flags       {}", traits.join(", ")));
        push(
            &mut out,
            format!("subgroups   {}", self.lattice.subgroup_count),
        );
        push(&mut out, format!("m*          {}", self.cd.m_star));
        push(
            &mut out,
            format!(
                "measures    {:?}",
                self.cd.measure_image
            ),
        );
        let member_orders: Vec<usize> = self.cd.members.iter().map(|m| m.order).collect();
        push(
            &mut out,
            format!(
                "CD members  {} with orders {:?}",
                self.cd.member_count, member_orders
            ),
        );
        push(
            &mut out,
            format!(
                "CD minimum  order {} {:?}",
                self.cd.min_member.order, self.cd.min_member.elements
            ),
        );
        push(
            &mut out,
            format!(
                "CD maximum  order {} {:?}",
                self.cd.max_member.order, self.cd.max_member.elements
            ),
        );
        let failing: Vec<&PropertyEntry> =
            self.properties.iter().filter(|p| !p.passed).collect();
        if failing.is_empty() {
            push(&mut out, "properties  P1..P10 all hold".to_string());
        } else {
            for entry in failing {
                push(
                    &mut out,
                    format!("properties  {} FAILED: {}", entry.id, entry.description),
                );
            }
        }
        push(
            &mut out,
            format!(
                "dense       {} ({} containment pairs checked)",
                self.density.dense, self.density.pairs_checked
            ),
        );
        for pair in &self.density.failures {
            push(
                &mut out,
                format!(
                    "  failure   H of order {} {:?} < K of order {} {:?}",
                    pair.h.order, pair.h.elements, pair.k.order, pair.k.elements
                ),
            );
        }
        if let Some(theorem) = &self.theorem_1_1 {
            for claim in &theorem.claims {
                push(
                    &mut out,
                    format!(
                        "thm 1.1({})  {}: {}",
                        claim.id,
                        if claim.passed { "holds" } else { "FAILS" },
                        claim.detail
                    ),
                );
            }
        }
        if let Some(timings) = &self.timings_ms {
            push(
                &mut out,
                format!(
                    "timings ms  build {:.2}, enumerate {:.2}, cd {:.2}, properties {:.2}, density {:.2}",
                    timings.build_ms,
                    timings.enumerate_ms,
                    timings.cd_ms,
                    timings.properties_ms,
                    timings.density_ms
                ),
            );
        }
        out
    }
}

/// One row of the survey output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub spec: String,
    #[serde(flatten)]
    pub record: SurveyRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyTheorem12Block {
    /// Number of corpus groups with at least two prime divisors.
    pub applicable_groups: usize,
    pub passed: bool,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyTheorem11Entry {
    pub spec: String,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyTheorem11Block {
    /// Number of dense p-groups of order at least p^2 in the corpus.
    pub dense_p_groups: usize,
    pub passed: bool,
    pub reports: Vec<SurveyTheorem11Entry>,
}

/// The survey document: one record per corpus group plus the two theorem
/// verdict blocks. Byte-deterministic for a fixed `max_order` and version,
/// regardless of worker count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyOutput {
    pub schema_version: u32,
    pub max_order: u64,
    pub group_count: usize,
    pub groups: Vec<SurveyRow>,
    pub theorem_1_2: SurveyTheorem12Block,
    pub theorem_1_1: SurveyTheorem11Block,
}

impl SurveyOutput {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("survey serializes");
        out.push('\n');
        out
    }

    pub fn all_theorems_passed(&self) -> bool {
        self.theorem_1_2.passed && self.theorem_1_1.passed
    }

    /// Short human summary.
    pub fn render_summary(&self) -> String {
        let dense: Vec<&str> = self
            .groups
            .iter()
            .filter(|row| row.record.dense)
            .map(|row| row.spec.as_str())
            .collect();
        format!(
            "surveyed {} groups up to order {}; dense: [{}]\n\
             theorem 1.2 over {} groups with two or more prime divisors: {}\n\
             theorem 1.1 over {} dense p-groups: {}\n",
            self.group_count,
            self.max_order,
            dense.join(", "),
            self.theorem_1_2.applicable_groups,
            if self.theorem_1_2.passed { "PASS" } else { "FAIL" },
            self.theorem_1_1.dense_p_groups,
            if self.theorem_1_1.passed { "PASS" } else { "FAIL" },
        )
    }
}

struct SurveyedGroup {
    row: SurveyRow,
    theorem_1_1: Option<TheoremReport>,
}

fn survey_one(spec: &GroupSpec, caps: &Caps) -> Result<SurveyedGroup, AnalysisError> {
    let group = spec.build_capped(caps)?;
    let lattice = enumerate_subgroups_capped(&group, caps.max_subgroups)?;
    let cd = cd_lattice(&group, &lattice);
    let verdict = is_dense_cd_capped(&lattice, &cd, DEFAULT_WITNESS_CAP);
    let record = survey_record(&group, &cd, &verdict);
    let theorem_1_1 = if verdict.dense
        && record.prime_count() == 1
        && record.prime_signature[0].1 >= 2
    {
        Some(
            verify_theorem_1_1(&group, &lattice, &cd, &verdict)
                .expect("preconditions were just checked"),
        )
    } else {
        None
    };
    Ok(SurveyedGroup {
        row: SurveyRow {
            spec: spec.to_string(),
            record,
        },
        theorem_1_1,
    })
}

/// Surveys the whole constructor corpus up to `max_order` with a bounded
/// worker pool. Results are merged in corpus order, so the output does not
/// depend on scheduling.
pub fn run_survey(max_order: u64, jobs: usize, caps: &Caps) -> Result<SurveyOutput, AnalysisError> {
    if max_order > caps.max_order as u64 {
        return Err(GroupError::ClosureExceedsCap {
            cap: caps.max_order,
        }
        .into());
    }
    let corpus = survey_corpus(max_order);
    let workers = jobs.max(1).min(corpus.len().max(1));

    let next = AtomicUsize::new(0);
    let mut indexed: Vec<(usize, Result<SurveyedGroup, AnalysisError>)> =
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for _ in 0..workers {
                let next = &next;
                let corpus = &corpus;
                handles.push(scope.spawn(move || {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::SeqCst);
                        if i >= corpus.len() {
                            break;
                        }
                        local.push((i, survey_one(&corpus[i], caps)));
                    }
                    local
                }));
            }
            handles
                .into_iter()
                .flat_map(|handle| handle.join().expect("survey worker panicked"))
                .collect()
        });
    indexed.sort_by_key(|(i, _)| *i);

    let mut groups = Vec::with_capacity(indexed.len());
    let mut theorem_11_entries = Vec::new();
    for (_, result) in indexed {
        let surveyed = result?;
        if let Some(report) = surveyed.theorem_1_1 {
            theorem_11_entries.push(SurveyTheorem11Entry {
                spec: surveyed.row.spec.clone(),
                report,
            });
        }
        groups.push(surveyed.row);
    }

    let multi_prime: Vec<SurveyRecord> = groups
        .iter()
        .filter(|row| row.record.prime_count() >= 2)
        .map(|row| row.record.clone())
        .collect();
    let theorem_1_2_report =
        verify_theorem_1_2(&multi_prime).expect("slice was filtered to two or more primes");

    Ok(SurveyOutput {
        schema_version: SCHEMA_VERSION,
        max_order,
        group_count: groups.len(),
        groups,
        theorem_1_2: SurveyTheorem12Block {
            applicable_groups: multi_prime.len(),
            passed: theorem_1_2_report.all_passed(),
            report: theorem_1_2_report,
        },
        theorem_1_1: SurveyTheorem11Block {
            dense_p_groups: theorem_11_entries.len(),
            passed: theorem_11_entries.iter().all(|e| e.report.all_passed()),
            reports: theorem_11_entries,
        },
    })
}
