use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;

/// Semantic role of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Source coordinate of a map germ.
    Source,
    /// Target coordinate of a map germ.
    Target,
    /// The unfolding parameter.
    Parameter,
    /// Fibre coordinate of the cotangent bundle.
    Cotangent,
    /// Auxiliary variable introduced by an algorithm (elimination tags and the like).
    Auxiliary,
}

/// Ordered list of variable names, each tagged with a [`Role`].
///
/// Contexts are shared through `Arc`; two polynomials can only be combined
/// when their contexts are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    roles: Vec<Role>,
}

impl VariableContext {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, Role)>) -> Result<Arc<Self>, AlgebraError> {
        let mut names = Vec::new();
        let mut roles = Vec::new();
        for (name, role) in vars {
            let name = name.into();
            if name.is_empty() || !is_identifier(&name) {
                return Err(AlgebraError::InvalidVariableName(name));
            }
            if names.contains(&name) {
                return Err(AlgebraError::DuplicateVariable(name));
            }
            names.push(name);
            roles.push(role);
        }
        Ok(Arc::new(VariableContext { names, roles }))
    }

    /// Context whose variables all share one role.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>, role: Role) -> Result<Arc<Self>, AlgebraError> {
        Self::new(names.into_iter().map(|n| (n, role)))
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

    pub fn role(&self, i: usize) -> Role {
        self.roles[i]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn indices_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.roles[i] == role).collect()
    }

    /// The unique parameter variable, if there is exactly one.
    pub fn parameter(&self) -> Result<usize, AlgebraError> {
        match self.indices_with_role(Role::Parameter).as_slice() {
            [i] => Ok(*i),
            [] => Err(AlgebraError::NoParameter),
            _ => Err(AlgebraError::AmbiguousParameter),
        }
    }

    /// New context obtained by dropping the variables at `drop` (sorted or not).
    pub fn without(&self, drop: &[usize]) -> Arc<Self> {
        let (names, roles) = (0..self.len())
            .filter(|i| !drop.contains(i))
            .map(|i| (self.names[i].clone(), self.roles[i]))
            .unzip();
        Arc::new(VariableContext { names, roles })
    }

    /// New context with `extra` appended after the existing variables.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, Role)>) -> Result<Arc<Self>, AlgebraError> {
        Self::new(
            self.names
                .iter()
                .cloned()
                .zip(self.roles.iter().copied())
                .chain(extra.into_iter().map(|(n, r)| (n.into(), r))),
        )
    }

    /// A variable name not yet used in this context, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|i| format!("{stem}_{i}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }
}

impl fmt::Debug for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.names.iter().zip(&self.roles).map(|(n, r)| format!("{n}:{r:?}")))
            .finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        let err = VariableContext::uniform(["x", "y", "x"], Role::Source).unwrap_err();
        assert!(matches!(err, AlgebraError::DuplicateVariable(n) if n == "x"));
    }

    #[test]
    fn parameter_lookup() {
        let ctx = VariableContext::new([("y1", Role::Target), ("s", Role::Parameter)]).unwrap();
        assert_eq!(ctx.parameter().unwrap(), 1);
        let ctx = VariableContext::uniform(["a", "b"], Role::Target).unwrap();
        assert!(matches!(ctx.parameter(), Err(AlgebraError::NoParameter)));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let ctx = VariableContext::uniform(["t", "t_0"], Role::Auxiliary).unwrap();
        assert_eq!(ctx.fresh_name("t"), "t_1");
        assert_eq!(ctx.fresh_name("u"), "u");
    }
}
