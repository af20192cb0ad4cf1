use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Accept,
    Reject,
}

/// A path that loops forever: `prefix` runs from the root up to (not
/// including) the first node of `cycle`, and `cycle` returns to its own
/// first node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lasso {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing_node: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lasso: Option<Lasso>,
}

impl Verdict {
    pub fn accept() -> Verdict {
        Verdict {
            status: Status::Accept,
            failing_node: None,
            reason: None,
            lasso: None,
        }
    }

    pub fn reject(node: impl Into<String>, reason: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Reject,
            failing_node: Some(node.into()),
            reason: Some(reason.into()),
            lasso: None,
        }
    }

    /// A rejection not tied to a particular node.
    pub fn rejected(reason: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Reject,
            failing_node: None,
            reason: Some(reason.into()),
            lasso: None,
        }
    }

    pub fn with_lasso(mut self, lasso: Lasso) -> Verdict {
        self.lasso = Some(lasso);
        self
    }

    pub fn is_accept(&self) -> bool {
        self.status == Status::Accept
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.status {
            Status::Accept => f.write_str("accept"),
            Status::Reject => {
                f.write_str("reject")?;
                if let Some(n) = &self.failing_node {
                    write!(f, " at node {n}")?;
                }
                if let Some(r) = &self.reason {
                    write!(f, ": {r}")?;
                }
                if let Some(l) = &self.lasso {
                    write!(f, " (lasso {} | {})", l.prefix.join(" "), l.cycle.join(" "))?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        assert_eq!(Verdict::accept().to_json(), r#"{"status":"accept"}"#);
        let v = Verdict::reject("3", "Axiom requires Γ ∩ Δ ≠ ∅");
        let back: Verdict = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(back, v);
    }
}
