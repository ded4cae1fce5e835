//! 2-CNF formulas: DIMACS parsing, satisfied-clause counting, and
//! exhaustive Max/Min-2-SAT extrema for desk-scale verification. The
//! extrema are deliberately computed by full enumeration; the graph-side
//! verifiers in this workspace need trustworthy reference values, not
//! speed.

use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum SatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("assignment has {assignment} bits but formula has {formula} variables")]
    LengthMismatch { assignment: usize, formula: usize },
    #[error("variable x{var} occurs only {count} time(s); at least 2 occurrences required")]
    OccurrenceTooLow { var: usize, count: usize },
    #[error("{n} variables exceed the enumeration budget of {budget}")]
    OverBudget { n: usize, budget: usize },
}

/// A literal: 1-based variable index plus a negation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }

    pub fn complement(self) -> Self {
        Lit {
            var: self.var,
            negated: !self.negated,
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-{}", self.var)
        } else {
            write!(f, "{}", self.var)
        }
    }
}

/// A 2-CNF formula: every clause has exactly two literals. Variables are
/// 1-based as in DIMACS. Clause order is preserved from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCnf {
    num_vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoCnf {
    /// Builds a formula after range-checking every literal. Occurrence
    /// counts are not enforced here; reductions that need every variable at
    /// least twice call [`TwoCnf::check_occurrences`] or use
    /// [`TwoCnf::new_strict`].
    pub fn new(num_vars: usize, clauses: Vec<(Lit, Lit)>) -> Result<Self, SatError> {
        for (i, &(a, b)) in clauses.iter().enumerate() {
            for lit in [a, b] {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(SatError::Parse {
                        line: i + 1,
                        msg: format!("variable {} out of range 1..={}", lit.var, num_vars),
                    });
                }
            }
        }
        Ok(TwoCnf { num_vars, clauses })
    }

    /// Like [`TwoCnf::new`] but additionally requires every variable to
    /// occur in at least two clauses.
    pub fn new_strict(num_vars: usize, clauses: Vec<(Lit, Lit)>) -> Result<Self, SatError> {
        let cnf = TwoCnf::new(num_vars, clauses)?;
        cnf.check_occurrences()?;
        Ok(cnf)
    }

    /// Errors unless every variable occurs in at least two clauses.
    pub fn check_occurrences(&self) -> Result<(), SatError> {
        let mut counts = vec![0usize; self.num_vars + 1];
        for &(a, b) in &self.clauses {
            counts[a.var] += 1;
            counts[b.var] += 1;
        }
        for var in 1..=self.num_vars {
            if counts[var] < 2 {
                return Err(SatError::OccurrenceTooLow {
                    var,
                    count: counts[var],
                });
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    /// The formula with every literal complemented.
    pub fn complemented(&self) -> TwoCnf {
        TwoCnf {
            num_vars: self.num_vars,
            clauses: self
                .clauses
                .iter()
                .map(|&(a, b)| (a.complement(), b.complement()))
                .collect(),
        }
    }

    /// Renders the formula in the same DIMACS dialect `parse_dimacs_2cnf`
    /// accepts.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for &(a, b) in &self.clauses {
            out.push_str(&format!("{} {} 0\n", a, b));
        }
        out
    }
}

/// One truth value per variable; bit `i` is the value of variable `i+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthAssignment {
    bits: Vec<bool>,
}

impl TruthAssignment {
    pub fn new(bits: Vec<bool>) -> Self {
        TruthAssignment { bits }
    }

    /// Assignment number `index` in lowest-bit-first order: variable 1 is
    /// the least significant bit of `index`.
    pub fn from_index(num_vars: usize, index: u64) -> Self {
        TruthAssignment {
            bits: (0..num_vars).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.bits[var - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn flipped(&self) -> TruthAssignment {
        TruthAssignment {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    fn satisfies(&self, lit: Lit) -> bool {
        self.value(lit.var) != lit.negated
    }
}

impl fmt::Display for TruthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}={}", i + 1, if b { "T" } else { "F" })?;
        }
        Ok(())
    }
}

/// Parses the DIMACS CNF dialect restricted to two literals per clause:
/// `p cnf <n> <m>` header, then `m` lines of `lit lit 0`. `c` comment lines
/// are skipped.
pub fn parse_dimacs_2cnf(text: &str) -> Result<TwoCnf, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(SatError::Parse {
                    line: line_no,
                    msg: "duplicate header".into(),
                });
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 || tokens[1] != "cnf" {
                return Err(SatError::Parse {
                    line: line_no,
                    msg: "expected `p cnf <vars> <clauses>`".into(),
                });
            }
            let n = tokens[2].parse().map_err(|_| SatError::Parse {
                line: line_no,
                msg: format!("invalid variable count `{}`", tokens[2]),
            })?;
            let m = tokens[3].parse().map_err(|_| SatError::Parse {
                line: line_no,
                msg: format!("invalid clause count `{}`", tokens[3]),
            })?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or(SatError::Parse {
            line: line_no,
            msg: "clause before header".into(),
        })?;
        let mut lits = Vec::new();
        let mut terminated = false;
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| SatError::Parse {
                line: line_no,
                msg: format!("invalid literal `{tok}`"),
            })?;
            if v == 0 {
                terminated = true;
                break;
            }
            lits.push(v);
        }
        if !terminated {
            return Err(SatError::Parse {
                line: line_no,
                msg: "clause not terminated by 0".into(),
            });
        }
        if lits.len() != 2 {
            return Err(SatError::Parse {
                line: line_no,
                msg: format!("clause has {} literals, expected exactly 2", lits.len()),
            });
        }
        let mut pair = Vec::new();
        for v in lits {
            let var = v.unsigned_abs() as usize;
            if var > n {
                return Err(SatError::Parse {
                    line: line_no,
                    msg: format!("variable {var} out of range 1..={n}"),
                });
            }
            pair.push(Lit {
                var,
                negated: v < 0,
            });
        }
        clauses.push((pair[0], pair[1]));
    }
    let (n, m) = header.ok_or(SatError::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if clauses.len() != m {
        return Err(SatError::Parse {
            line: 0,
            msg: format!("header promised {m} clauses, found {}", clauses.len()),
        });
    }
    TwoCnf::new(n, clauses)
}

/// Number of clauses the assignment satisfies.
pub fn count_satisfied(cnf: &TwoCnf, a: &TruthAssignment) -> Result<usize, SatError> {
    if a.len() != cnf.num_vars() {
        return Err(SatError::LengthMismatch {
            assignment: a.len(),
            formula: cnf.num_vars(),
        });
    }
    Ok(cnf
        .clauses()
        .iter()
        .filter(|&&(x, y)| a.satisfies(x) || a.satisfies(y))
        .count())
}

/// Exact Max/Min-2-SAT values with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatExtrema {
    pub k_max: usize,
    pub argmax: TruthAssignment,
    pub k_min: usize,
    pub argmin: TruthAssignment,
}

pub const DEFAULT_VAR_BUDGET: usize = 24;

/// Enumerates all `2^n` assignments. Ties are broken toward the lowest
/// assignment index (variable 1 = least significant bit), so witnesses are
/// deterministic.
pub fn sat_extrema(cnf: &TwoCnf) -> Result<SatExtrema, SatError> {
    sat_extrema_budgeted(cnf, DEFAULT_VAR_BUDGET)
}

pub fn sat_extrema_budgeted(cnf: &TwoCnf, budget: usize) -> Result<SatExtrema, SatError> {
    let n = cnf.num_vars();
    if n > budget {
        return Err(SatError::OverBudget { n, budget });
    }
    let mut best: Option<SatExtrema> = None;
    for index in 0..(1u64 << n) {
        let a = TruthAssignment::from_index(n, index);
        let count = count_satisfied(cnf, &a).expect("length matches by construction");
        match &mut best {
            None => {
                best = Some(SatExtrema {
                    k_max: count,
                    argmax: a.clone(),
                    k_min: count,
                    argmin: a,
                });
            }
            Some(ext) => {
                if count > ext.k_max {
                    ext.k_max = count;
                    ext.argmax = a.clone();
                }
                if count < ext.k_min {
                    ext.k_min = count;
                    ext.argmin = a;
                }
            }
        }
    }
    Ok(best.expect("at least the all-false assignment was enumerated"))
}
