use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Descriptor of an ambient polynomial ring k[x_1, …, x_n].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
}

impl Ring {
    /// Builds a ring over the given field. Variable names must be unique,
    /// nonempty identifiers.
    pub fn new(field: Field, vars: &[&str]) -> Result<Arc<Ring>> {
        Self::from_names(field, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(field: Field, vars: Vec<String>) -> Result<Arc<Ring>> {
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    /// Shorthand for tests and examples: characteristic plus variable names.
    pub fn with_char(characteristic: u64, vars: &[&str]) -> Result<Arc<Ring>> {
        Ring::new(Field::with_characteristic(characteristic)?, vars)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same field, one fresh variable prepended (used for elimination).
    pub(crate) fn with_leading_var(&self) -> Arc<Ring> {
        let mut fresh = String::from("_t");
        while self.vars.contains(&fresh) {
            fresh.push('_');
        }
        let mut vars = vec![fresh];
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring {
            field: self.field,
            vars,
        })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}
