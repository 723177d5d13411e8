//! End-to-end verification of a model file: axioms, flat catalog, triple
//! census, harmonicity survey and (for generated models) duality.

use serde::{Deserialize, Serialize};

use crate::axioms::{self, AxiomOptions};
use crate::duality::{check_duality, DualityScope};
use crate::flats::FlatKind;
use crate::gf::PrimeField;
use crate::pg3::{build_model, Pg3Model};
use crate::report_io::{
    content_hash, AxiomSection, DualitySection, FlatEntry, FlatSection, Generator,
    HarmonicitySection, ModelDigest, ModelFile, RuntimeInfo, SeedInfo, TripleSection,
    VerificationReport,
};
use crate::tetra::{survey_harmonicity, triple_census, SurveyMode};

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Incident pairs sampled for axioms 2.2 and 2.3 outside exhaustive mode.
pub const DEFAULT_AXIOM_PAIR_SAMPLES: usize = 10_000;
/// Quadruples drawn by the sampled harmonicity survey.
pub const DEFAULT_SURVEY_SAMPLES: u64 = 100_000;
/// Triples and quadruples drawn per flat by the sampled duality check.
pub const DEFAULT_DUALITY_PER_FLAT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Exhaustive,
    PerFlat,
    Sample,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Exhaustive => "exhaustive",
            CheckMode::PerFlat => "per-flat",
            CheckMode::Sample => "sample",
        }
    }

    /// Exhaustive up to q = 3, per-flat at q = 5, sampled beyond. Without a
    /// generator line the line count stands in for q.
    pub fn default_for(file: &ModelFile) -> CheckMode {
        match file.generator {
            Some(Generator::Pg3 { q }) if q <= 3 => CheckMode::Exhaustive,
            Some(Generator::Pg3 { q }) if q <= 5 => CheckMode::PerFlat,
            Some(Generator::Pg3 { .. }) => CheckMode::Sample,
            None => match file.structure.len() {
                0..=130 => CheckMode::Exhaustive,
                131..=806 => CheckMode::PerFlat,
                _ => CheckMode::Sample,
            },
        }
    }
}

impl std::str::FromStr for CheckMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(CheckMode::Exhaustive),
            "per-flat" => Ok(CheckMode::PerFlat),
            "sample" => Ok(CheckMode::Sample),
            other => Err(format!(
                "unknown mode {other:?} (expected exhaustive, per-flat or sample)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: CheckMode,
    pub seed: u64,
    pub survey_samples: u64,
    pub axiom_pair_samples: usize,
    pub duality_per_flat: usize,
}

impl CheckOptions {
    pub fn new(mode: CheckMode) -> Self {
        Self {
            mode,
            seed: DEFAULT_SEED,
            survey_samples: DEFAULT_SURVEY_SAMPLES,
            axiom_pair_samples: DEFAULT_AXIOM_PAIR_SAMPLES,
            duality_per_flat: DEFAULT_DUALITY_PER_FLAT,
        }
    }

    pub fn default_for(file: &ModelFile) -> Self {
        Self::new(CheckMode::default_for(file))
    }
}

/// Rebuilds PG(3,q) when the file claims to be one and its structure
/// matches line for line.
pub fn regenerate(file: &ModelFile) -> Result<Pg3Model, String> {
    let Some(Generator::Pg3 { q }) = file.generator else {
        return Err("model has no coordinates (no generator line)".to_string());
    };
    let field = PrimeField::new(q).map_err(|e| e.to_string())?;
    let model = build_model(field);
    if model.structure != file.structure {
        return Err(format!(
            "structure differs from the generated PG(3,{q}) model"
        ));
    }
    Ok(model)
}

pub fn run_check(file: &ModelFile, opts: &CheckOptions) -> VerificationReport {
    let m = &file.structure;
    let text = file.to_text().expect("parsed models are non-empty");
    let model = ModelDigest {
        lines: m.len(),
        pairs: m.pair_count(),
        sha256: content_hash(&text),
        generator: file.generator.map(|g| g.to_string()),
    };

    let pair_population = model.pairs;
    let sample_pairs =
        opts.mode != CheckMode::Exhaustive && pair_population > opts.axiom_pair_samples;
    let axiom_opts = AxiomOptions {
        pair_samples: sample_pairs.then_some((opts.axiom_pair_samples, opts.seed)),
    };
    let run = axioms::check_all(m, &axiom_opts);
    let axioms = AxiomSection {
        all_passed: run.all_passed(),
        verdicts: run.verdicts.clone(),
    };

    let (flats, catalog) = match &run.catalog {
        Ok(cat) => {
            let entries = cat
                .flats()
                .iter()
                .map(|f| FlatEntry {
                    id: f.id,
                    kind: f.kind,
                    lines: f.lines.clone(),
                })
                .collect();
            let section = FlatSection {
                error: None,
                total: cat.len(),
                points: cat.count_of_kind(FlatKind::Point),
                planes: cat.count_of_kind(FlatKind::Plane),
                catalog: entries,
            };
            (section, Some(cat))
        }
        Err(e) => {
            let total = crate::flats::catalog_flats(m).map(|c| c.len()).unwrap_or(0);
            let section = FlatSection {
                error: Some(e.to_string()),
                total,
                points: 0,
                planes: 0,
                catalog: Vec::new(),
            };
            (section, None)
        }
    };

    let no_catalog = "no labelled flat catalog".to_string();
    let triples = match catalog {
        None => TripleSection {
            skipped: Some(no_catalog.clone()),
            census: None,
        },
        Some(_) if opts.mode == CheckMode::Sample => TripleSection {
            skipped: Some("not run in sample mode".to_string()),
            census: None,
        },
        Some(cat) => TripleSection {
            skipped: None,
            census: Some(triple_census(m, cat).expect("catalog is labelled")),
        },
    };

    let survey_mode = match opts.mode {
        CheckMode::Exhaustive => SurveyMode::Exhaustive,
        CheckMode::PerFlat => SurveyMode::PerFlat,
        CheckMode::Sample => SurveyMode::Sampled {
            samples: opts.survey_samples,
            seed: opts.seed,
        },
    };
    let harmonicity = match catalog {
        None => HarmonicitySection {
            skipped: Some(no_catalog.clone()),
            report: None,
        },
        Some(cat) => HarmonicitySection {
            skipped: None,
            report: Some(survey_harmonicity(m, cat, survey_mode).expect("catalog is labelled")),
        },
    };

    let duality_scope = match opts.mode {
        CheckMode::Exhaustive => DualityScope::Exhaustive,
        _ => DualityScope::Sampled {
            per_flat: opts.duality_per_flat,
            seed: opts.seed,
        },
    };
    let duality = match (catalog, regenerate(file)) {
        (Some(cat), Ok(pg)) => DualitySection {
            unsupported: None,
            report: Some(check_duality(&pg.dual_permutation(), m, cat, duality_scope)),
        },
        (None, _) => DualitySection {
            unsupported: Some(no_catalog),
            report: None,
        },
        (_, Err(why)) => DualitySection {
            unsupported: Some(why),
            report: None,
        },
    };

    let seeds = SeedInfo {
        mode: opts.mode.as_str().to_string(),
        seed: opts.seed,
        axiom_pair_samples: sample_pairs.then_some(opts.axiom_pair_samples),
        survey_samples: matches!(opts.mode, CheckMode::Sample).then_some(opts.survey_samples),
        duality_per_flat: match (&duality.report, duality_scope) {
            (Some(_), DualityScope::Sampled { per_flat, .. }) => Some(per_flat),
            _ => None,
        },
    };

    VerificationReport {
        model,
        axioms,
        flats,
        triples,
        harmonicity,
        duality,
        runtime: RuntimeInfo::default(),
        seeds,
    }
}
