//! Per-axiom pass/fail reports with a few witnesses each.

use serde::Serialize;

const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub instances: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), passed: true, checks: Vec::new() }
    }

    fn entry(&mut self, axiom: &str) -> &mut AxiomCheck {
        match self.checks.iter().position(|c| c.axiom == axiom) {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(AxiomCheck {
                    axiom: axiom.to_string(),
                    instances: 0,
                    failures: 0,
                    witnesses: Vec::new(),
                });
                self.checks.last_mut().expect("just pushed")
            }
        }
    }

    /// Makes `axiom` appear in the report even if it has no instances.
    pub fn declare(&mut self, axiom: &str) {
        self.entry(axiom);
    }

    /// Records one instance of `axiom`; `witness` is only evaluated on failure.
    pub fn record(&mut self, axiom: &str, ok: bool, witness: impl FnOnce() -> String) {
        let e = self.entry(axiom);
        e.instances += 1;
        if !ok {
            e.failures += 1;
            if e.witnesses.len() < MAX_WITNESSES {
                e.witnesses.push(witness());
            }
            self.passed = false;
        }
    }

    pub fn is_ok(&self) -> bool {
        self.passed
    }

    pub fn holds(&self, axiom: &str) -> bool {
        self.checks.iter().find(|c| c.axiom == axiom).is_none_or(AxiomCheck::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    /// Names of failing axioms.
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.axiom.as_str()).collect()
    }

    /// Appends another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            let e = self.entry(&format!("{prefix}{}", c.axiom));
            e.instances += c.instances;
            e.failures += c.failures;
            e.witnesses.extend(c.witnesses);
            e.witnesses.truncate(MAX_WITNESSES);
        }
        self.passed &= other.passed;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_and_caps_witnesses() {
        let mut r = Report::new("t");
        r.declare("empty");
        for i in 0..10 {
            r.record("x", i % 2 == 0, || format!("w{i}"));
        }
        assert!(!r.is_ok());
        assert!(r.holds("empty"));
        let x = r.get("x").unwrap();
        assert_eq!((x.instances, x.failures, x.witnesses.len()), (10, 5, 5));
        assert_eq!(r.failing(), vec!["x"]);
    }
}
