use super::{Circuit, DephasingPattern, GateOp};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which gate family a stage choice belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Bc,
    Cd,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TemplateOp {
    Fixed(GateOp),
    /// Expands to `u` when the pattern bit is false and `v` when it is true.
    Choice {
        family: Family,
        stage: usize,
        u: Vec<GateOp>,
        v: Vec<GateOp>,
    },
    /// Closes a time slice.
    Mark,
}

/// A circuit with stage placeholders filled in by a [`DephasingPattern`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitTemplate {
    n: usize,
    stages: usize,
    ops: Vec<TemplateOp>,
}

impl CircuitTemplate {
    pub fn new(n: usize, stages: usize) -> Self {
        CircuitTemplate {
            n,
            stages,
            ops: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn ops(&self) -> &[TemplateOp] {
        &self.ops
    }

    pub fn push(&mut self, op: TemplateOp) -> Result<&mut Self> {
        match &op {
            TemplateOp::Fixed(g) => g.validate(self.n)?,
            TemplateOp::Choice { stage, u, v, .. } => {
                if *stage >= self.stages {
                    return Err(Error::Invalid(format!(
                        "stage {stage} outside template with {} stages",
                        self.stages
                    )));
                }
                for g in u.iter().chain(v) {
                    g.validate(self.n)?;
                }
            }
            TemplateOp::Mark => {}
        }
        self.ops.push(op);
        Ok(self)
    }

    pub fn instantiate(&self, pattern: &DephasingPattern) -> Result<Circuit> {
        if pattern.stages() != self.stages {
            return Err(Error::PatternLength {
                expected: self.stages,
                found: pattern.stages(),
            });
        }
        let mut c = Circuit::new(self.n);
        for op in &self.ops {
            match op {
                TemplateOp::Fixed(g) => {
                    c.push(g.clone())?;
                }
                TemplateOp::Choice {
                    family,
                    stage,
                    u,
                    v,
                } => {
                    let chosen = if pattern.choice(*family, *stage) {
                        v
                    } else {
                        u
                    };
                    c.extend(chosen.iter().cloned())?;
                }
                TemplateOp::Mark => {
                    // a slice whose choice expanded to nothing is simply merged
                    let _ = c.mark_slice();
                }
            }
        }
        Ok(c)
    }
}
