use std::fmt;
use std::sync::{Arc, OnceLock};

use super::RingError;

/// Ordered variable names, each flagged as Laurent (negative exponents
/// allowed) or ordinary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(vars: &[(S, bool)]) -> Arc<Self> {
        Arc::new(VarContext {
            names: vars.iter().map(|(n, _)| n.as_ref().to_owned()).collect(),
            laurent: vars.iter().map(|(_, l)| *l).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, RingError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| RingError::UnknownVariable(name.to_owned()))
    }

    pub(crate) fn mismatch(a: &VarContext, b: &VarContext) -> RingError {
        RingError::ContextMismatch {
            left: a.to_string(),
            right: b.to_string(),
        }
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(n)?;
            if self.laurent[i] {
                f.write_str("^±")?;
            }
        }
        Ok(())
    }
}

macro_rules! shared_ctx {
    ($fn_name:ident, $doc:literal, [$(($name:literal, $laurent:literal)),*]) => {
        #[doc = $doc]
        pub fn $fn_name() -> Arc<VarContext> {
            static CTX: OnceLock<Arc<VarContext>> = OnceLock::new();
            CTX.get_or_init(|| VarContext::new(&[$(($name, $laurent)),*])).clone()
        }
    };
}

shared_ctx!(ctx_mq, "`m` (Laurent), `q`: home of the Riley polynomials.", [("m", true), ("q", false)]);
shared_ctx!(ctx_xz, "`x`, `z`: trace coordinates of the character variety.", [("x", false), ("z", false)]);
shared_ctx!(ctx_q, "`q` alone.", [("q", false)]);
shared_ctx!(ctx_x, "`x` alone.", [("x", false)]);
