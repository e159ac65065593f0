//! Reports, exit codes and stable error codes.

use serde::Serialize;
use serde_json::Value;

use dsc_core::classify::{Certificate, ClassifyError, ReplayError, Rule, Witness};
use dsc_core::dsc::DscError;
use dsc_core::embed::EmbedError;
use dsc_core::finite_oracle::OracleError;
use dsc_core::syntax::SyntaxError;
use dsc_core::verify::VerifyError;
use dsc_core::witness::WitnessError;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_DEFINITE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_RANGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        let code = match &e {
            SyntaxError::Parse { .. } => "E_PARSE",
            SyntaxError::UnknownDeclared(_) => "E_UNKNOWN_DECLARED",
            SyntaxError::Dsc(DscError::ZeroMultiplicity(_)) => "E_ZERO_MULTIPLICITY",
            SyntaxError::Dsc(_) => "E_DSC",
            SyntaxError::OrderType(_) => "E_ORDER_TYPE",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        let code = match &e {
            EmbedError::TooManyClasses { .. } => "E_TOO_MANY_CLASSES",
            EmbedError::Internal(_) => "E_INTERNAL",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::new("E_NOT_COUNTABLE", e.to_string())
    }
}

impl From<ReplayError> for CliError {
    fn from(e: ReplayError) -> Self {
        CliError::new("E_INTERNAL", e.to_string())
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        let code = match &e {
            WitnessError::ConditionFails(_) => "E_CONDITION_FAILS",
            WitnessError::NotBounded => "E_NOT_BOUNDED",
            WitnessError::NotCountable(_) => "E_NOT_COUNTABLE",
            WitnessError::FiniteJ => "E_FINITE_J",
            WitnessError::NoStrictFamily => "E_NO_STRICT_FAMILY",
            WitnessError::AbsentTarget(_) => "E_ABSENT_TARGET",
            WitnessError::BadLength { .. } => "E_BAD_LENGTH",
            WitnessError::BadIndexSet(_) => "E_BAD_INDEX_SET",
            WitnessError::NoSiblings => "E_NO_SIBLINGS",
            WitnessError::OrderType(_) => "E_ORDER_TYPE",
            WitnessError::Embed(inner) => return CliError::from(inner.clone()),
            WitnessError::Unverified(_) => "E_INTERNAL",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let code = match &e {
            OracleError::CapExceeded { .. } => "E_CAP_EXCEEDED",
            _ => "E_ORACLE",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownSuite(_) => CliError::new("E_UNKNOWN_SUITE", e.to_string()),
            VerifyError::Oracle(inner) => inner.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub rule: Rule,
    pub statement: &'static str,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        CertificateReport {
            rule: c.rule,
            statement: c.rule.statement(),
            witness: c.witness.clone(),
            annotation: c.annotation.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// What a command produced, before timing is attached.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub certificate: Option<CertificateReport>,
    pub exit_code: i32,
    /// Human-readable lines for the text format.
    pub summary: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<CliError>,
    pub timing: Timing,
    pub exit_code: i32,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str, outcome: Result<Outcome, CliError>, elapsed_ms: f64) -> Self {
        let timing = Timing { elapsed_ms };
        match outcome {
            Ok(o) => Report {
                schema_version: SCHEMA_VERSION,
                command: command.into(),
                inputs: o.inputs,
                result: o.result,
                certificate: o.certificate,
                error: None,
                timing,
                exit_code: o.exit_code,
                summary: o.summary,
            },
            Err(e) => Report {
                schema_version: SCHEMA_VERSION,
                command: command.into(),
                inputs: Value::Null,
                result: Value::Null,
                certificate: None,
                summary: vec![format!("error {}: {}", e.code, e.message)],
                error: Some(e),
                timing,
                exit_code: EXIT_ERROR,
            },
        }
    }

    pub fn text(&self) -> String {
        let mut out = self.summary.join("\n");
        if let Some(c) = &self.certificate {
            out.push_str(&format!("\nrule: {}\nstatement: {}", c.rule, c.statement));
            let witness = serde_json::to_string(&c.witness).unwrap_or_default();
            out.push_str(&format!("\nwitness: {witness}"));
            if let Some(a) = &c.annotation {
                out.push_str(&format!("\nnote: {a}"));
            }
        }
        out
    }
}
