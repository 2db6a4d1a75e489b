//! Patient data model and synthetic cohort generation.
//!
//! Cohorts are generated from a logistic-linear process with declared
//! per-feature marginals and planted coefficients, so downstream claims
//! (selection, model AUC) can be checked against known ground truth. The
//! intercept is calibrated by bisection so the mean label probability hits
//! the requested prevalence exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ecg::EcgTrace;
use crate::util;

/// The twenty clinical fields, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Age,
    Bmi,
    Gender,
    HeartRate,
    Sbp,
    Dbp,
    Smoking,
    Diabetes,
    Hypertension,
    StDeviation,
    GlycerinTricaproate,
    Ldl,
    Hdl,
    Ckmb,
    Bnp,
    DDimer,
    Myoglobin,
    Crp,
    Tni,
    Scr,
}

pub const ALL_FIELDS: [Field; 20] = [
    Field::Age,
    Field::Bmi,
    Field::Gender,
    Field::HeartRate,
    Field::Sbp,
    Field::Dbp,
    Field::Smoking,
    Field::Diabetes,
    Field::Hypertension,
    Field::StDeviation,
    Field::GlycerinTricaproate,
    Field::Ldl,
    Field::Hdl,
    Field::Ckmb,
    Field::Bnp,
    Field::DDimer,
    Field::Myoglobin,
    Field::Crp,
    Field::Tni,
    Field::Scr,
];

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Age => "age",
            Field::Bmi => "bmi",
            Field::Gender => "gender",
            Field::HeartRate => "heart_rate",
            Field::Sbp => "sbp",
            Field::Dbp => "dbp",
            Field::Smoking => "smoking",
            Field::Diabetes => "diabetes",
            Field::Hypertension => "hypertension",
            Field::StDeviation => "st_deviation",
            Field::GlycerinTricaproate => "glycerin_tricaproate",
            Field::Ldl => "ldl",
            Field::Hdl => "hdl",
            Field::Ckmb => "ckmb",
            Field::Bnp => "bnp",
            Field::DDimer => "d_dimer",
            Field::Myoglobin => "myoglobin",
            Field::Crp => "crp",
            Field::Tni => "tni",
            Field::Scr => "scr",
        }
    }

    pub fn from_name(name: &str) -> Option<Field> {
        ALL_FIELDS.iter().copied().find(|f| f.name() == name)
    }

    pub fn is_categorical(self) -> bool {
        matches!(
            self,
            Field::Gender
                | Field::Smoking
                | Field::Diabetes
                | Field::Hypertension
                | Field::StDeviation
        )
    }

    /// Wide-range biomarkers that get a natural-log transform downstream;
    /// these must stay strictly positive.
    pub fn is_log_transformed(self) -> bool {
        matches!(
            self,
            Field::GlycerinTricaproate
                | Field::Ldl
                | Field::Hdl
                | Field::Ckmb
                | Field::Bnp
                | Field::DDimer
                | Field::Myoglobin
                | Field::Crp
                | Field::Tni
                | Field::Scr
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presence {
    Positive,
    Negative,
}

/// One patient row: the twenty clinical fields, an optional label, and an
/// optional ECG trace. Every field may be individually missing.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PatientRecord {
    pub age: Option<f64>,
    pub bmi: Option<f64>,
    pub gender: Option<Gender>,
    pub heart_rate: Option<f64>,
    pub sbp: Option<f64>,
    pub dbp: Option<f64>,
    pub smoking: Option<Presence>,
    pub diabetes: Option<Presence>,
    pub hypertension: Option<Presence>,
    pub st_deviation: Option<Presence>,
    pub glycerin_tricaproate: Option<f64>,
    pub ldl: Option<f64>,
    pub hdl: Option<f64>,
    pub ckmb: Option<f64>,
    pub bnp: Option<f64>,
    pub d_dimer: Option<f64>,
    pub myoglobin: Option<f64>,
    pub crp: Option<f64>,
    pub tni: Option<f64>,
    pub scr: Option<f64>,
    pub revascularized: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ecg: Option<EcgTrace>,
}

impl PatientRecord {
    /// Raw numeric value of a numeric field; `None` if missing.
    /// Panics if called on a categorical field.
    pub fn numeric(&self, field: Field) -> Option<f64> {
        match field {
            Field::Age => self.age,
            Field::Bmi => self.bmi,
            Field::HeartRate => self.heart_rate,
            Field::Sbp => self.sbp,
            Field::Dbp => self.dbp,
            Field::GlycerinTricaproate => self.glycerin_tricaproate,
            Field::Ldl => self.ldl,
            Field::Hdl => self.hdl,
            Field::Ckmb => self.ckmb,
            Field::Bnp => self.bnp,
            Field::DDimer => self.d_dimer,
            Field::Myoglobin => self.myoglobin,
            Field::Crp => self.crp,
            Field::Tni => self.tni,
            Field::Scr => self.scr,
            _ => panic!("{} is categorical", field.name()),
        }
    }

    /// Categorical indicator: male / positive map to `true`.
    /// Panics if called on a numeric field.
    pub fn indicator(&self, field: Field) -> Option<bool> {
        match field {
            Field::Gender => self.gender.map(|g| g == Gender::Male),
            Field::Smoking => self.smoking.map(|p| p == Presence::Positive),
            Field::Diabetes => self.diabetes.map(|p| p == Presence::Positive),
            Field::Hypertension => self.hypertension.map(|p| p == Presence::Positive),
            Field::StDeviation => self.st_deviation.map(|p| p == Presence::Positive),
            _ => panic!("{} is numeric", field.name()),
        }
    }

    /// Uniform numeric view of any field (indicators become 0/1). Used by
    /// band-based scoring.
    pub fn value_as_f64(&self, field: Field) -> Option<f64> {
        if field.is_categorical() {
            self.indicator(field).map(|b| if b { 1.0 } else { 0.0 })
        } else {
            self.numeric(field)
        }
    }

    pub fn set_numeric(&mut self, field: Field, value: Option<f64>) {
        match field {
            Field::Age => self.age = value,
            Field::Bmi => self.bmi = value,
            Field::HeartRate => self.heart_rate = value,
            Field::Sbp => self.sbp = value,
            Field::Dbp => self.dbp = value,
            Field::GlycerinTricaproate => self.glycerin_tricaproate = value,
            Field::Ldl => self.ldl = value,
            Field::Hdl => self.hdl = value,
            Field::Ckmb => self.ckmb = value,
            Field::Bnp => self.bnp = value,
            Field::DDimer => self.d_dimer = value,
            Field::Myoglobin => self.myoglobin = value,
            Field::Crp => self.crp = value,
            Field::Tni => self.tni = value,
            Field::Scr => self.scr = value,
            _ => panic!("{} is categorical", field.name()),
        }
    }

    pub fn set_indicator(&mut self, field: Field, value: Option<bool>) {
        match field {
            Field::Gender => {
                self.gender = value.map(|b| if b { Gender::Male } else { Gender::Female })
            }
            Field::Smoking => {
                self.smoking = value.map(|b| if b { Presence::Positive } else { Presence::Negative })
            }
            Field::Diabetes => {
                self.diabetes =
                    value.map(|b| if b { Presence::Positive } else { Presence::Negative })
            }
            Field::Hypertension => {
                self.hypertension =
                    value.map(|b| if b { Presence::Positive } else { Presence::Negative })
            }
            Field::StDeviation => {
                self.st_deviation =
                    value.map(|b| if b { Presence::Positive } else { Presence::Negative })
            }
            _ => panic!("{} is numeric", field.name()),
        }
    }

    /// Field-level invariants: age range, positivity of log-transformed
    /// biomarkers, finiteness.
    pub fn validate(&self) -> Result<(), CohortError> {
        for field in ALL_FIELDS {
            if field.is_categorical() {
                continue;
            }
            if let Some(v) = self.numeric(field) {
                if !v.is_finite() {
                    return Err(CohortError::InvalidValue {
                        field: field.name(),
                        detail: String::from("non-finite value"),
                    });
                }
                if field.is_log_transformed() && v <= 0.0 {
                    return Err(CohortError::InvalidValue {
                        field: field.name(),
                        detail: format!("must be > 0, got {v}"),
                    });
                }
                if field == Field::Age && !(18.0..=110.0).contains(&v) {
                    return Err(CohortError::InvalidValue {
                        field: field.name(),
                        detail: format!("age must be in [18, 110], got {v}"),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    Synthetic { seed: u64 },
    Loaded { path: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cohort {
    pub records: Vec<PatientRecord>,
    pub provenance: Provenance,
}

impl Cohort {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Labels as 0/1, or an error if any record is unlabeled.
    pub fn labels(&self) -> Result<Vec<u8>, CohortError> {
        self.records
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.revascularized
                    .map(|b| b as u8)
                    .ok_or(CohortError::UnlabeledRecord { row: i })
            })
            .collect()
    }

    /// Both classes must be present before any training use.
    pub fn check_trainable(&self) -> Result<(), CohortError> {
        let labels = self.labels()?;
        let pos = labels.iter().filter(|&&y| y == 1).count();
        if pos == 0 || pos == labels.len() {
            return Err(CohortError::SingleClass);
        }
        Ok(())
    }
}

/// Marginal distribution of one feature.
///
/// `LogNormal` is parameterized by the target raw-scale mean and SD
/// (moment-matched), so declared moments are what the samples deliver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marginal {
    Normal { mean: f64, sd: f64 },
    LogNormal { mean: f64, sd: f64 },
    Bernoulli { p: f64 },
}

impl Marginal {
    /// Declared mean/SD used to standardize features in the generative
    /// log-odds.
    pub fn moments(&self) -> (f64, f64) {
        match *self {
            Marginal::Normal { mean, sd } => (mean, sd),
            Marginal::LogNormal { mean, sd } => (mean, sd),
            Marginal::Bernoulli { p } => (p, (p * (1.0 - p)).sqrt()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpec {
    pub field: Field,
    pub dist: Marginal,
    #[serde(default)]
    pub missing_rate: f64,
    #[serde(default)]
    pub coefficient: f64,
}

/// Transcription-fault rates applied to the wide-range biomarkers.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ErrorInjection {
    /// Probability a present biomarker is scaled by 10 or 0.1.
    #[serde(default)]
    pub decimal_shift_rate: f64,
    /// Probability a present biomarker loses one digit of its decimal text.
    #[serde(default)]
    pub digit_drop_rate: f64,
}

/// Optional synthetic 12-lead traces attached to every record. The waves
/// carry no planted label signal; their embeddings behave as noise features.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcgSynthesis {
    pub sample_rate: f64,
    pub samples: usize,
    pub noise_sd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortSpec {
    pub n_patients: usize,
    pub prevalence: f64,
    pub rng_seed: u64,
    pub features: Vec<FeatureSpec>,
    #[serde(default)]
    pub error_injection: ErrorInjection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ecg: Option<EcgSynthesis>,
}

impl CohortSpec {
    pub fn feature(&self, field: Field) -> Option<&FeatureSpec> {
        self.features.iter().find(|f| f.field == field)
    }

    pub fn validate(&self) -> Result<(), CohortError> {
        let invalid = |field: &'static str, detail: String| CohortError::InvalidSpec {
            field,
            detail,
        };
        if self.n_patients == 0 {
            return Err(invalid("n_patients", String::from("must be >= 1")));
        }
        if !(self.prevalence > 0.0 && self.prevalence < 1.0) {
            return Err(invalid(
                "prevalence",
                format!("must be in (0,1), got {}", self.prevalence),
            ));
        }
        for rate in [
            self.error_injection.decimal_shift_rate,
            self.error_injection.digit_drop_rate,
        ] {
            if !(0.0..1.0).contains(&rate) {
                return Err(invalid(
                    "error_injection",
                    format!("rates must be in [0,1), got {rate}"),
                ));
            }
        }
        for field in ALL_FIELDS {
            let spec = self
                .feature(field)
                .ok_or_else(|| invalid("features", format!("missing entry for {}", field.name())))?;
            if !(0.0..1.0).contains(&spec.missing_rate) {
                return Err(invalid(
                    "missing_rate",
                    format!("{}: must be in [0,1), got {}", field.name(), spec.missing_rate),
                ));
            }
            if !spec.coefficient.is_finite() {
                return Err(invalid(
                    "coefficient",
                    format!("{}: non-finite", field.name()),
                ));
            }
            match (field.is_categorical(), spec.dist) {
                (true, Marginal::Bernoulli { p }) => {
                    if !(p > 0.0 && p < 1.0) {
                        return Err(invalid(
                            "dist",
                            format!("{}: bernoulli p must be in (0,1), got {p}", field.name()),
                        ));
                    }
                }
                (true, _) => {
                    return Err(invalid(
                        "dist",
                        format!("{} is categorical and needs a bernoulli marginal", field.name()),
                    ))
                }
                (false, Marginal::Bernoulli { .. }) => {
                    return Err(invalid(
                        "dist",
                        format!("{} is numeric and needs a normal or log_normal marginal", field.name()),
                    ))
                }
                (false, Marginal::Normal { sd, .. }) => {
                    if field.is_log_transformed() {
                        return Err(invalid(
                            "dist",
                            format!(
                                "{} must stay positive; use a log_normal marginal",
                                field.name()
                            ),
                        ));
                    }
                    if sd <= 0.0 {
                        return Err(invalid(
                            "dist",
                            format!("{}: sd must be > 0", field.name()),
                        ));
                    }
                }
                (false, Marginal::LogNormal { mean, sd }) => {
                    if mean <= 0.0 || sd <= 0.0 {
                        return Err(invalid(
                            "dist",
                            format!("{}: log_normal needs mean > 0 and sd > 0", field.name()),
                        ));
                    }
                }
            }
        }
        if self.features.len() != ALL_FIELDS.len() {
            return Err(invalid(
                "features",
                format!("expected {} entries, got {}", ALL_FIELDS.len(), self.features.len()),
            ));
        }
        if let Some(ecg) = &self.ecg {
            if ecg.sample_rate <= 0.0 || ecg.samples == 0 {
                return Err(invalid("ecg", String::from("sample_rate and samples must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CohortError {
    InvalidSpec { field: &'static str, detail: String },
    InvalidValue { field: &'static str, detail: String },
    UnlabeledRecord { row: usize },
    SingleClass,
    TooFewOracleDraws { given: usize, minimum: usize },
}

impl core::fmt::Display for CohortError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CohortError::InvalidSpec { field, detail } => {
                write!(f, "invalid cohort spec field `{field}`: {detail}")
            }
            CohortError::InvalidValue { field, detail } => {
                write!(f, "invalid value for `{field}`: {detail}")
            }
            CohortError::UnlabeledRecord { row } => {
                write!(f, "record {row} has no revascularization label")
            }
            CohortError::SingleClass => write!(f, "cohort has a single label class"),
            CohortError::TooFewOracleDraws { given, minimum } => {
                write!(f, "oracle needs at least {minimum} draws, got {given}")
            }
        }
    }
}

// Stream tags so each generation stage has an independent seed.
const TAG_FEATURES: u64 = 1;
const TAG_LABELS: u64 = 2;
const TAG_MISSING: u64 = 3;
const TAG_ERRORS: u64 = 4;
const TAG_ECG: u64 = 5;
const TAG_ORACLE: u64 = 6;

/// Sample one field value and its standardized covariate.
fn sample_standardized<R: Rng>(spec: &FeatureSpec, rng: &mut R) -> (f64, f64) {
    let (mean, sd) = spec.dist.moments();
    let raw = match spec.dist {
        Marginal::Normal { mean, sd } => {
            let mut v = mean + sd * util::standard_normal(rng);
            if spec.field == Field::Age {
                v = v.clamp(18.0, 110.0);
            }
            v
        }
        Marginal::LogNormal { mean, sd } => {
            let sigma2 = (1.0 + (sd / mean) * (sd / mean)).ln();
            let mu = mean.ln() - 0.5 * sigma2;
            (mu + sigma2.sqrt() * util::standard_normal(rng)).exp()
        }
        Marginal::Bernoulli { p } => {
            if rng.random::<f64>() < p {
                1.0
            } else {
                0.0
            }
        }
    };
    (raw, (raw - mean) / sd)
}

/// Bisect the intercept so the mean of sigmoid(b + score) equals the target.
fn calibrate_intercept(scores: &[f64], target: f64) -> f64 {
    let mean_prob = |b: f64| {
        scores.iter().map(|&s| util::sigmoid(b + s)).sum::<f64>() / scores.len() as f64
    };
    let (mut lo, mut hi) = (-60.0, 60.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean_prob(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Drop one random digit from the shortest decimal text of `value`.
/// Falls back to the original when the mutation would not parse or would
/// leave the positive range.
fn drop_digit<R: Rng>(value: f64, rng: &mut R) -> f64 {
    let text = format!("{value}");
    let digit_positions: Vec<usize> = text
        .char_indices()
        .filter(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i)
        .collect();
    if digit_positions.len() < 2 {
        return value;
    }
    let pick = digit_positions[rng.random_range(0..digit_positions.len())];
    let mut mutated = String::with_capacity(text.len() - 1);
    for (i, c) in text.char_indices() {
        if i != pick {
            mutated.push(c);
        }
    }
    match mutated.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => v,
        _ => value,
    }
}

/// Generates a cohort from the spec. Deterministic: the seed fully
/// determines the output, and each stage (values, labels, missingness,
/// corruption, traces) draws from its own derived stream.
pub fn generate_cohort(spec: &CohortSpec) -> Result<Cohort, CohortError> {
    spec.validate()?;
    let n = spec.n_patients;

    let mut feat_rng = util::rng_from_seed(util::derive_seed(spec.rng_seed, &[TAG_FEATURES]));
    let mut raw_values = Vec::with_capacity(n);
    let mut scores = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(ALL_FIELDS.len());
        let mut score = 0.0;
        for field in ALL_FIELDS {
            let fs = spec.feature(field).expect("validated");
            let (raw, z) = sample_standardized(fs, &mut feat_rng);
            row.push(raw);
            score += fs.coefficient * z;
        }
        raw_values.push(row);
        scores.push(score);
    }

    let intercept = calibrate_intercept(&scores, spec.prevalence);
    let mut label_rng = util::rng_from_seed(util::derive_seed(spec.rng_seed, &[TAG_LABELS]));
    let labels: Vec<bool> = scores
        .iter()
        .map(|&s| label_rng.random::<f64>() < util::sigmoid(intercept + s))
        .collect();

    let mut error_rng = util::rng_from_seed(util::derive_seed(spec.rng_seed, &[TAG_ERRORS]));
    for row in raw_values.iter_mut() {
        for (j, field) in ALL_FIELDS.iter().enumerate() {
            if !field.is_log_transformed() {
                continue;
            }
            if error_rng.random::<f64>() < spec.error_injection.decimal_shift_rate {
                row[j] *= if error_rng.random::<f64>() < 0.5 { 10.0 } else { 0.1 };
            }
            if error_rng.random::<f64>() < spec.error_injection.digit_drop_rate {
                row[j] = drop_digit(row[j], &mut error_rng);
            }
        }
    }

    let mut missing_rng = util::rng_from_seed(util::derive_seed(spec.rng_seed, &[TAG_MISSING]));
    let mut records = Vec::with_capacity(n);
    for (row, &label) in raw_values.iter().zip(&labels) {
        let mut record = PatientRecord {
            revascularized: Some(label),
            ..PatientRecord::default()
        };
        for (j, field) in ALL_FIELDS.iter().enumerate() {
            let fs = spec.feature(*field).expect("validated");
            let missing = missing_rng.random::<f64>() < fs.missing_rate;
            if field.is_categorical() {
                record.set_indicator(*field, (!missing).then_some(row[j] > 0.5));
            } else {
                record.set_numeric(*field, (!missing).then_some(row[j]));
            }
        }
        records.push(record);
    }

    if let Some(ecg) = &spec.ecg {
        let mut ecg_rng = util::rng_from_seed(util::derive_seed(spec.rng_seed, &[TAG_ECG]));
        for record in records.iter_mut() {
            record.ecg = Some(synthesize_trace(ecg, &mut ecg_rng));
        }
    }

    Ok(Cohort {
        records,
        provenance: Provenance::Synthetic { seed: spec.rng_seed },
    })
}

/// Label-independent 12-lead wave: two seeded sinusoids plus white noise
/// per channel.
fn synthesize_trace<R: Rng>(spec: &EcgSynthesis, rng: &mut R) -> EcgTrace {
    let mut channels = Vec::with_capacity(12);
    for _ in 0..12 {
        let f1 = 0.8 + 2.0 * rng.random::<f64>();
        let f2 = 3.0 + 6.0 * rng.random::<f64>();
        let a1 = 0.4 + 0.6 * rng.random::<f64>();
        let a2 = 0.1 + 0.2 * rng.random::<f64>();
        let phase = core::f64::consts::TAU * rng.random::<f64>();
        let mut samples = Vec::with_capacity(spec.samples);
        for i in 0..spec.samples {
            let t = i as f64 / spec.sample_rate;
            let mut v = a1 * (core::f64::consts::TAU * f1 * t + phase).sin()
                + a2 * (core::f64::consts::TAU * f2 * t).sin();
            v += spec.noise_sd * util::standard_normal(rng);
            samples.push(v);
        }
        channels.push(samples);
    }
    EcgTrace::new(channels, spec.sample_rate).expect("synthetic trace is well formed")
}

/// Monte-Carlo AUC of the true generative log-odds used as the score.
/// Upper-bounds the expected AUC of any model trained on cohorts from this
/// spec. Requires at least 10^5 draws.
pub fn oracle_bayes_auc(spec: &CohortSpec, n_mc: usize) -> Result<f64, CohortError> {
    spec.validate()?;
    const MINIMUM: usize = 100_000;
    if n_mc < MINIMUM {
        return Err(CohortError::TooFewOracleDraws { given: n_mc, minimum: MINIMUM });
    }
    let (scores, labels) = oracle_draws(spec, n_mc);
    Ok(crate::eval::auc(&scores, &labels).expect("oracle draws contain both classes"))
}

/// Score/label draws from the generative process, exposed for rank-based
/// invariance tests.
pub fn oracle_draws(spec: &CohortSpec, n_mc: usize) -> (Vec<f64>, Vec<u8>) {
    let mut rng = util::rng_from_seed(util::derive_seed(spec.rng_seed, &[TAG_ORACLE]));
    let mut scores = Vec::with_capacity(n_mc);
    for _ in 0..n_mc {
        let mut score = 0.0;
        for field in ALL_FIELDS {
            let fs = spec.feature(field).expect("validated");
            let (_, z) = sample_standardized(fs, &mut rng);
            score += fs.coefficient * z;
        }
        scores.push(score);
    }
    let intercept = calibrate_intercept(&scores, spec.prevalence);
    let labels: Vec<u8> = scores
        .iter()
        .map(|&s| (rng.random::<f64>() < util::sigmoid(intercept + s)) as u8)
        .collect();
    (scores, labels)
}
