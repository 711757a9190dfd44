use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::LaurentPoly;

/// Dense index of a symbol inside a [`VarRegistry`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// What a symbol stands for in an evolution run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarRole {
    /// A value of the row `t = 0`.
    InitialTau0,
    /// A value of the row `t = 1`.
    InitialTau1,
    /// `K`, `lambda` or `mu` of the periodic boundary.
    BoundaryConstant,
    /// Anything else (free symbols of identity checks, the special-init `x`).
    Parameter,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("symbol `{0}` is already declared")]
    Duplicate(String),
    #[error("unknown symbol `{0}`")]
    Unknown(String),
}

/// Append-only table of symbol names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarRegistry {
    names: Vec<String>,
    roles: Vec<VarRole>,
    #[serde(skip)]
    index: HashMap<String, VarId>,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, role: VarRole) -> Result<VarId, RegistryError> {
        if self.index.contains_key(name) {
            return Err(RegistryError::Duplicate(name.to_string()));
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.roles.push(role);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares `name` and returns it as a degree-one polynomial.
    pub fn symbol(&mut self, name: &str, role: VarRole) -> Result<LaurentPoly, RegistryError> {
        self.declare(name, role).map(LaurentPoly::var)
    }

    pub fn lookup(&self, name: &str) -> Result<VarId, RegistryError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| RegistryError::Unknown(name.to_string()))
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id.index()]
    }

    pub fn role(&self, id: VarId) -> VarRole {
        self.roles[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len() as u32).map(VarId)
    }

    /// Rebuilds the name index after deserialization.
    pub fn reindex(&mut self) {
        self.index = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VarId(i as u32)))
            .collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_contiguous_and_names_unique() {
        let mut reg = VarRegistry::new();
        let x1 = reg.declare("x1", VarRole::InitialTau0).unwrap();
        let y1 = reg.declare("y1", VarRole::InitialTau1).unwrap();
        assert_eq!((x1, y1), (VarId(0), VarId(1)));
        assert_eq!(
            reg.declare("x1", VarRole::Parameter),
            Err(RegistryError::Duplicate("x1".into()))
        );
        assert_eq!(reg.lookup("y1").unwrap(), y1);
        assert_eq!(reg.role(y1), VarRole::InitialTau1);
        assert!(reg.lookup("z").is_err());
    }
}
