use serde::Serialize;

/// Overall outcome of a check or verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Absent,
    PurityFailure,
    NotProjective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Absent,
}

/// One named condition, with the basis indices of the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub derived_objects: Vec<DerivedObject>,
}

/// A document emitted alongside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedObject {
    pub name: String,
    pub document: String,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), verdict: Verdict::Pass, checks: Vec::new(), derived_objects: Vec::new() }
    }

    /// Records a condition; `failure` holds the witness of the first violation.
    pub fn record(&mut self, name: impl Into<String>, failure: Option<Vec<usize>>) -> &mut Self {
        let (status, witness) = match failure {
            None => (Status::Pass, Vec::new()),
            Some(w) => (Status::Fail, w),
        };
        if status == Status::Fail && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(Check { name: name.into(), status, witness, detail: None });
        self
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Self {
        self.record(name, None)
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Vec<usize>) -> &mut Self {
        self.record(name, Some(witness))
    }

    pub fn require(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.record(name, if ok { None } else { Some(Vec::new()) })
    }

    pub fn absent(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Self {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Absent;
        }
        self.checks.push(Check { name: name.into(), status: Status::Absent, witness: Vec::new(), detail: Some(detail.into()) });
        self
    }

    pub fn with_detail(&mut self, detail: impl Into<String>) -> &mut Self {
        if let Some(c) = self.checks.last_mut() {
            c.detail = Some(detail.into());
        }
        self
    }

    pub fn set_verdict(&mut self, v: Verdict) -> &mut Self {
        self.verdict = v;
        self
    }

    /// Folds the checks of `other` in, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: &Report) -> &mut Self {
        for c in &other.checks {
            let mut c = c.clone();
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        if self.verdict == Verdict::Pass {
            self.verdict = other.verdict;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {:?}", self.subject, self.verdict)?;
        for c in self.failed_checks() {
            write!(f, "\n  {} {:?} {:?}", c.name, c.status, c.witness)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
        }
        Ok(())
    }
}
