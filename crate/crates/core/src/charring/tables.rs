//! Built-in table rows, addressed by identifiers such as `kac:5` or `jaw:3`.

use std::collections::BTreeMap;

use super::{Construction, Factor, GroupDatum, KeyMode};
use crate::error::{Error, Result};

const TABLE_DATA: &str = include_str!("../../data/tables.txt");

#[derive(Debug, Clone, PartialEq)]
enum Constraint {
    AtLeast(char, i64),
    Equal(char, i64),
    Odd(char),
    Even(char),
    Distinct(char, char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub id: String,
    pub factors: Vec<String>,
    pub construction: Construction,
    pub key_mode: KeyMode,
    constraints: Vec<Constraint>,
    /// Parameter that grows along the direct system.
    pub step: Option<char>,
    pub dimension: String,
}

/// Evaluates `+ - * /` expressions over integers and one-letter variables.
pub fn eval_expr(expr: &str, vars: &BTreeMap<char, i64>) -> Result<i64> {
    let tokens: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let v = parse_sum(&tokens, &mut pos, vars)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{expr}`")));
    }
    Ok(v)
}

fn parse_sum(t: &[char], pos: &mut usize, vars: &BTreeMap<char, i64>) -> Result<i64> {
    let mut acc = parse_product(t, pos, vars)?;
    while *pos < t.len() && (t[*pos] == '+' || t[*pos] == '-') {
        let op = t[*pos];
        *pos += 1;
        let rhs = parse_product(t, pos, vars)?;
        acc = if op == '+' { acc + rhs } else { acc - rhs };
    }
    Ok(acc)
}

fn parse_product(t: &[char], pos: &mut usize, vars: &BTreeMap<char, i64>) -> Result<i64> {
    let mut acc = parse_atom(t, pos, vars)?;
    while *pos < t.len() && (t[*pos] == '*' || t[*pos] == '/') {
        let op = t[*pos];
        *pos += 1;
        let rhs = parse_atom(t, pos, vars)?;
        if op == '*' {
            acc *= rhs;
        } else {
            if rhs == 0 || acc % rhs != 0 {
                return Err(Error::Parse(format!("inexact division {acc}/{rhs}")));
            }
            acc /= rhs;
        }
    }
    Ok(acc)
}

fn parse_atom(t: &[char], pos: &mut usize, vars: &BTreeMap<char, i64>) -> Result<i64> {
    let Some(&c) = t.get(*pos) else {
        return Err(Error::Parse("unexpected end of expression".into()));
    };
    if c == '(' {
        *pos += 1;
        let v = parse_sum(t, pos, vars)?;
        if t.get(*pos) != Some(&')') {
            return Err(Error::Parse("missing `)`".into()));
        }
        *pos += 1;
        Ok(v)
    } else if c.is_ascii_digit() {
        let start = *pos;
        while *pos < t.len() && t[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let s: String = t[start..*pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(s))
    } else if c.is_ascii_alphabetic() {
        *pos += 1;
        vars.get(&c).copied().ok_or_else(|| Error::Parse(format!("unbound variable `{c}`")))
    } else {
        Err(Error::Parse(format!("unexpected `{c}`")))
    }
}

fn parse_constraint(s: &str) -> Result<Constraint> {
    let s = s.trim();
    let var = |x: &str| -> Result<char> {
        let x = x.trim();
        let mut it = x.chars();
        match (it.next(), it.next()) {
            (Some(c), None) if c.is_ascii_alphabetic() => Ok(c),
            _ => Err(Error::Parse(format!("bad variable `{x}`"))),
        }
    };
    let num = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad number `{x}`")));
    if let Some((a, b)) = s.split_once(">=") {
        Ok(Constraint::AtLeast(var(a)?, num(b)?))
    } else if let Some((a, b)) = s.split_once("!=") {
        Ok(Constraint::Distinct(var(a)?, var(b)?))
    } else if let Some((a, b)) = s.split_once('=') {
        Ok(Constraint::Equal(var(a)?, num(b)?))
    } else if let Some(a) = s.strip_suffix(" odd") {
        Ok(Constraint::Odd(var(a)?))
    } else if let Some(a) = s.strip_suffix(" even") {
        Ok(Constraint::Even(var(a)?))
    } else {
        Err(Error::Parse(format!("bad constraint `{s}`")))
    }
}

fn parse_row(line: &str) -> Result<TableRow> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if fields.len() != 6 {
        return Err(Error::Parse(format!("expected 6 fields in `{line}`")));
    }
    let mut construction = None;
    let mut key_mode = KeyMode::Full;
    for tag in fields[2].split(',').map(str::trim) {
        match tag {
            "std" | "tensor" => construction = Some(Construction::Standard),
            "sym2" => construction = Some(Construction::Sym2),
            "alt2" => construction = Some(Construction::Alt2),
            "sum2" => construction = Some(Construction::DirectSum2),
            "trivial" => construction = Some(Construction::Trivial),
            "det1" => key_mode = KeyMode::DeterminantOne,
            other => return Err(Error::UnsupportedConstruction(other.to_string())),
        }
    }
    let constraints = if fields[3].is_empty() {
        vec![]
    } else {
        fields[3].split(',').map(parse_constraint).collect::<Result<_>>()?
    };
    let step = match fields[4] {
        "-" | "" => None,
        s => Some(s.chars().next().unwrap()),
    };
    Ok(TableRow {
        id: fields[0].to_string(),
        factors: split_factors(fields[1]),
        construction: construction.ok_or_else(|| Error::Parse(format!("no construction in `{line}`")))?,
        key_mode,
        constraints,
        step,
        dimension: fields[5].to_string(),
    })
}

/// Splits `U1*SO(2*m)` at the top-level `*` only.
fn split_factors(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter().map(|f| f.trim().to_string()).filter(|f| !f.is_empty()).collect()
}

/// All rows of the built-in data file.
pub fn table_rows() -> Vec<TableRow> {
    TABLE_DATA
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_row(l).expect("built-in table is well formed"))
        .collect()
}

pub fn lookup_row(id: &str) -> Result<TableRow> {
    table_rows().into_iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownRow(id.to_string()))
}

fn parse_factor(spec: &str, vars: &BTreeMap<char, i64>) -> Result<Factor> {
    if spec == "U1" {
        return Ok(Factor::Torus);
    }
    let (name, rest) = spec.split_once('(').ok_or_else(|| Error::Parse(format!("bad factor `{spec}`")))?;
    let arg = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("bad factor `{spec}`")))?;
    let n = eval_expr(arg, vars)?;
    if n < 1 {
        return Err(Error::Invalid(format!("factor {spec} with parameter {n}")));
    }
    let n = n as usize;
    let f = match name {
        "SU" => Factor::Special(n),
        "U" => Factor::Unitary(n),
        "SO" => Factor::Orthogonal(n),
        "Sp" => Factor::Symplectic(n),
        _ => return Err(Error::Parse(format!("unknown group `{name}`"))),
    };
    f.validate()?;
    Ok(f)
}

impl TableRow {
    fn bindings(&self, value: Option<i64>) -> BTreeMap<char, i64> {
        let mut vars = BTreeMap::new();
        for c in &self.constraints {
            if let Constraint::Equal(v, x) = c {
                vars.insert(*v, *x);
            }
        }
        if let (Some(s), Some(v)) = (self.step, value) {
            vars.insert(s, v);
        }
        vars
    }

    pub fn admissible(&self, value: i64) -> bool {
        let vars = self.bindings(Some(value));
        self.constraints.iter().all(|c| match *c {
            Constraint::AtLeast(v, x) => vars.get(&v).is_some_and(|&y| y >= x),
            Constraint::Equal(v, x) => vars.get(&v) == Some(&x),
            Constraint::Odd(v) => vars.get(&v).is_some_and(|y| y % 2 == 1),
            Constraint::Even(v) => vars.get(&v).is_some_and(|y| y % 2 == 0),
            Constraint::Distinct(a, b) => vars.get(&a) != vars.get(&b),
        })
    }

    /// The first `count` admissible values of the step parameter.
    pub fn admissible_values(&self, count: usize) -> Vec<i64> {
        if self.step.is_none() {
            return if count > 0 { vec![0] } else { vec![] };
        }
        (0..64).filter(|&v| self.admissible(v)).take(count).collect()
    }

    pub fn smallest_admissible(&self) -> Option<i64> {
        self.admissible_values(1).first().copied()
    }

    /// The group datum at the given value of the step parameter.
    pub fn instantiate(&self, value: i64) -> Result<GroupDatum> {
        if self.step.is_some() && !self.admissible(value) {
            return Err(Error::Invalid(format!("{} is not admissible for row {}", value, self.id)));
        }
        let vars = self.bindings(Some(value));
        let factors = self.factors.iter().map(|f| parse_factor(f, &vars)).collect::<Result<Vec<_>>>()?;
        let label = match self.step {
            Some(s) => format!("{}@{}={}", self.id, s, value),
            None => self.id.clone(),
        };
        let k = GroupDatum::new(&label, factors, self.construction, self.key_mode)?;
        let expected = eval_expr(&self.dimension, &vars)?;
        let actual = k.space_dim()?;
        if expected != actual as i64 {
            return Err(Error::DimensionMismatch(expected as usize, actual));
        }
        Ok(k)
    }
}
