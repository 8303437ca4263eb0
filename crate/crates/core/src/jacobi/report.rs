use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one named sub-condition of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    /// Informational clauses are reported but do not decide the status.
    pub counted: bool,
}

/// Result of a check: `status == Pass` exactly when `residuals` is empty
/// and no internal error was flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub residuals: Vec<String>,
    pub notes: Vec<String>,
    pub clauses: Vec<Clause>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Pass,
            residuals: Vec::new(),
            notes: Vec::new(),
            clauses: Vec::new(),
        }
    }

    /// A report that failed before any clause could be evaluated.
    pub fn error(name: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Self::new(name);
        r.notes.push(message.into());
        r.status = Status::Error;
        r
    }

    /// Records a clause whose residuals count toward the status.
    pub fn clause(&mut self, name: &str, residuals: Vec<String>) -> bool {
        let passed = residuals.is_empty();
        self.residuals.extend(residuals);
        self.clauses.push(Clause { name: name.to_string(), passed, counted: true });
        if !passed && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        passed
    }

    /// Records a clause for information only; its residuals go to the notes.
    pub fn info(&mut self, name: &str, residuals: Vec<String>) -> bool {
        let passed = residuals.is_empty();
        if passed {
            self.notes.push(format!("{name}: holds"));
        } else {
            self.notes.push(format!("{name}: does not hold"));
            self.notes.extend(residuals);
        }
        self.clauses.push(Clause { name: name.to_string(), passed, counted: false });
        passed
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Marks an internal inconsistency; the status becomes `Error`.
    pub fn flag_error(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
        self.status = Status::Error;
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn clause_passed(&self, name: &str) -> Option<bool> {
        self.clauses.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.status)?;
        for r in &self.residuals {
            writeln!(f, "  residual {r}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note {n}")?;
        }
        Ok(())
    }
}
