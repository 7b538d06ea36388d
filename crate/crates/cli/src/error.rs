use std::process::ExitCode;

/// Failure classes with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: a check ran and failed, or a computation failed.
    Failed(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3: a search or iteration budget ran out.
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        })
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Failed(m) | CliError::Usage(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<charvar::factorint::FactorError> for CliError {
    fn from(e: charvar::factorint::FactorError) -> Self {
        use charvar::factorint::FactorError as E;
        match e {
            E::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            E::NotPrime(_) | E::PrimeTooLarge(_) | E::ZeroPolynomial | E::ConstantPolynomial => {
                CliError::Usage(e.to_string())
            }
            E::LeadingCoeffVanishes { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<charvar::numeric::NumericError> for CliError {
    fn from(e: charvar::numeric::NumericError) -> Self {
        use charvar::numeric::NumericError as E;
        match e {
            E::NoConvergence { .. } => CliError::Resource(e.to_string()),
            E::ZeroPolynomial | E::ConstantPolynomial | E::OutsideCuspRange { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<charvar::criterion::CriterionError> for CliError {
    fn from(e: charvar::criterion::CriterionError) -> Self {
        if e.is_resource_limit() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

impl From<charvar::families::FamilyError> for CliError {
    fn from(e: charvar::families::FamilyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<charvar::twobridge::TwoBridgeError> for CliError {
    fn from(e: charvar::twobridge::TwoBridgeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<charvar::matword::MatError> for CliError {
    fn from(e: charvar::matword::MatError) -> Self {
        CliError::Usage(e.to_string())
    }
}
