//! Monomials, monomial ideals, lcm-lattices and Hibi ideals.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::homology::{all_reduced_betti, order_complex};
use crate::order::order_ideals;
use crate::poset::{Label, Poset};

/// Exponent vector over an ambient list of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> Result<u64> {
        self.exponents
            .iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e as u64))
            .ok_or(Error::Overflow("monomial degree"))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        })
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.divides_unchecked(other))
    }

    fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    fn check_same(&self, other: &Monomial) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    /// `a^3*b^2*c` form; `1` for the constant monomial.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            vars,
        }
    }

    pub fn to_label(&self, vars: &[String]) -> Label {
        Label::new(self.display(vars).to_string())
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, v) in self.monomial.exponents.iter().zip(self.vars) {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Parses a product such as `a^3*b^2*c` (or `a^3 b^2 c`, or `1`).
///
/// Errors carry line 1 and the 1-based column of the offending factor.
pub fn parse_monomial(vars: &[String], text: &str) -> Result<Monomial> {
    let index: HashMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut exps = vec![0u32; vars.len()];
    let mut seen_factor = false;
    for (col, factor) in factors(text) {
        seen_factor = true;
        if factor == "1" {
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(1, col, format!("bad exponent in `{factor}`")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        let &i = index
            .get(name)
            .ok_or_else(|| Error::parse(1, col, format!("unknown variable `{name}`")))?;
        exps[i] = exps[i]
            .checked_add(exp)
            .ok_or_else(|| Error::parse(1, col, "exponent overflow"))?;
    }
    if !seen_factor {
        return Err(Error::parse(1, 1, "empty monomial"));
    }
    Ok(Monomial::new(exps))
}

/// Splits on `*` and whitespace, yielding (1-based column, factor).
fn factors(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        let sep = ch == '*' || ch.is_whitespace();
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out.into_iter()
}

/// A monomial ideal with a minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn generator_labels(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.display(&self.variables).to_string())
            .collect()
    }
}

/// Drops duplicates and every generator divisible by another one, keeping
/// first-occurrence order.
pub fn minimalize(variables: Vec<String>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    if variables.is_empty() {
        return Err(Error::InvalidInput("no variables".into()));
    }
    let mut distinct = HashSet::new();
    if let Some(dup) = variables.iter().find(|v| !distinct.insert(v.as_str())) {
        return Err(Error::InvalidInput(format!(
            "variable `{dup}` listed twice"
        )));
    }
    if gens.iter().any(|g| g.nvars() != variables.len()) {
        return Err(Error::VariableMismatch);
    }
    let mut seen = HashSet::new();
    let unique: Vec<Monomial> = gens
        .into_iter()
        .filter(|g| seen.insert(g.clone()))
        .collect();
    let generators = unique
        .iter()
        .filter(|g| !unique.iter().any(|h| h != *g && h.divides_unchecked(g)))
        .cloned()
        .collect();
    Ok(MonomialIdeal {
        variables,
        generators,
    })
}

/// The lcm-lattice of a monomial ideal together with its monomials.
#[derive(Debug, Clone)]
pub struct LcmLattice {
    poset: Poset,
    /// `monomials[i]` is the element at poset index `i`.
    monomials: Vec<Monomial>,
    positions: HashMap<Monomial, usize>,
    variables: Vec<String>,
}

impl LcmLattice {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.positions.get(m).copied()
    }

    pub fn bottom(&self) -> Label {
        Monomial::one(self.variables.len()).to_label(&self.variables)
    }

    pub fn top(&self) -> &Monomial {
        let top = self.poset.maximal_indices();
        &self.monomials[top[0]]
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Reduced Betti numbers `H̃_{-1}, H̃_0, …` of the order complex of the
    /// open interval `(1, b)`; empty for `b = 1`.
    pub fn interval_homology(&self, b: &Monomial) -> Result<Vec<usize>> {
        let j = self
            .position(b)
            .ok_or_else(|| Error::NotInLattice(b.display(&self.variables).to_string()))?;
        if b.is_one() {
            return Ok(Vec::new());
        }
        let bottom = self.bottom();
        let interval = self
            .poset
            .open_interval(bottom.as_str(), self.poset.label(j).as_str())?;
        all_reduced_betti(&order_complex(&interval))
    }

    /// `β_{i,b}(R/M) = dim H̃_{i−2}(Δ(1, b); ℚ)` for `i ≥ 1`.
    pub fn multigraded_betti(&self, b: &Monomial, i: usize) -> Result<u64> {
        if i == 0 {
            return Err(Error::InvalidInput("Betti index must be at least 1".into()));
        }
        let homology = self.interval_homology(b)?;
        // homology[k] is H̃_{k-1}, so H̃_{i-2} sits at k = i - 1.
        Ok(homology.get(i - 1).copied().unwrap_or(0) as u64)
    }

    /// `[β_1, β_2, …]` of `R/M`, trailing zeros trimmed.
    pub fn total_betti_numbers(&self) -> Result<Vec<u64>> {
        let mut totals: Vec<u64> = Vec::new();
        for m in &self.monomials {
            if m.is_one() {
                continue;
            }
            for (k, &h) in self.interval_homology(m)?.iter().enumerate() {
                if totals.len() <= k {
                    totals.resize(k + 1, 0);
                }
                totals[k] += h as u64;
            }
        }
        while totals.last() == Some(&0) {
            totals.pop();
        }
        Ok(totals)
    }
}

/// All lcms of subsets of the generators, ordered by divisibility.
///
/// Built by saturating `{1} ∪ generators` under lcm with generators, which
/// reaches the lcm of every subset.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<LcmLattice> {
    if ideal.generators.is_empty() {
        return Err(Error::InvalidInput("ideal has no generators".into()));
    }
    let n = ideal.variables.len();
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut elements = vec![Monomial::one(n)];
    seen.insert(Monomial::one(n));
    for g in &ideal.generators {
        if seen.insert(g.clone()) {
            elements.push(g.clone());
        }
    }
    let mut next = 1;
    while next < elements.len() {
        let current = elements[next].clone();
        for g in &ideal.generators {
            let l = current.lcm(g)?;
            if seen.insert(l.clone()) {
                elements.push(l);
            }
        }
        next += 1;
    }
    let labels: Vec<Label> = elements
        .iter()
        .map(|m| m.to_label(&ideal.variables))
        .collect();
    let poset = Poset::from_order(labels, |a, b| elements[a].divides_unchecked(&elements[b]))?;
    let by_label: HashMap<Label, Monomial> = elements
        .into_iter()
        .map(|m| (m.to_label(&ideal.variables), m))
        .collect();
    let monomials: Vec<Monomial> = poset.labels().iter().map(|l| by_label[l].clone()).collect();
    let positions = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(LcmLattice {
        poset,
        monomials,
        positions,
        variables: ideal.variables.clone(),
    })
}

/// Divisors of `n` ordered by divisibility.
pub fn divisor_poset(n: u64) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidInput("divisor poset needs n ≥ 1".into()));
    }
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            divisors.push(d);
            if d != n / d {
                divisors.push(n / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    let labels = divisors.iter().map(|d| Label::new(d.to_string())).collect();
    Poset::from_order(labels, |a, b| divisors[b] % divisors[a] == 0)
}

/// Variables `x1..xn, y1..yn` of the Hibi ideal of an `n`-element poset.
pub fn hibi_variables(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .collect()
}

/// One generator `∏_{p∈I} x_p ∏_{p∉I} y_p` per order ideal `I` of `p`.
pub fn hibi_ideal(p: &Poset) -> Result<MonomialIdeal> {
    let n = p.len();
    let variables = hibi_variables(n);
    let gens: Vec<Monomial> = order_ideals(p)
        .iter()
        .map(|ideal| {
            let mut exps = vec![0u32; 2 * n];
            for i in 0..n {
                if ideal.contains(i) {
                    exps[i] = 1;
                } else {
                    exps[n + i] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    if n == 0 {
        // R has no variables; the unit ideal is generated by the empty product.
        return Ok(MonomialIdeal {
            variables,
            generators: gens,
        });
    }
    minimalize(variables, gens)
}

/// `β_{i,b}(R/M)`; builds the lcm-lattice on each call.
pub fn multigraded_betti(ideal: &MonomialIdeal, b: &Monomial, i: usize) -> Result<u64> {
    if b.nvars() != ideal.variables.len() {
        return Err(Error::VariableMismatch);
    }
    lcm_lattice(ideal)?.multigraded_betti(b, i)
}

/// `β_i(R/M) = Σ_{b ≠ 1} β_{i,b}(R/M)` for `i ≥ 1`.
pub fn total_betti(ideal: &MonomialIdeal, i: usize) -> Result<u64> {
    if i == 0 {
        return Err(Error::InvalidInput("Betti index must be at least 1".into()));
    }
    let totals = lcm_lattice(ideal)?.total_betti_numbers()?;
    Ok(totals.get(i - 1).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::is_lattice;

    fn vars(names: &str) -> Vec<String> {
        names.split_whitespace().map(str::to_owned).collect()
    }

    fn m(v: &[String], text: &str) -> Monomial {
        parse_monomial(v, text).unwrap()
    }

    fn sample_ideal() -> MonomialIdeal {
        let v = vars("a b c d");
        let gens = [
            "a^3*b^2*c",
            "a^3*b^2*d",
            "a^2*c*d",
            "a*b*c^2*d",
            "b^2*c^2*d",
        ]
        .iter()
        .map(|g| m(&v, g))
        .collect();
        minimalize(v, gens).unwrap()
    }

    #[test]
    fn lcm_and_divides() {
        let v = vars("x y");
        assert_eq!(
            m(&v, "x^2*y").lcm(&m(&v, "x*y^3")).unwrap(),
            m(&v, "x^2*y^3")
        );
        assert!(Monomial::one(2).divides(&m(&v, "x*y")).unwrap());
        assert!(!m(&v, "x^2").divides(&m(&v, "x*y")).unwrap());
        assert_eq!(
            Monomial::one(2).lcm(&Monomial::one(3)),
            Err(Error::VariableMismatch)
        );
        let v = vars("a b c d");
        assert_eq!(
            m(&v, "a^3*b^2*c").lcm(&m(&v, "a^2*c*d")).unwrap(),
            m(&v, "a^3*b^2*c*d")
        );
    }

    #[test]
    fn formatting_and_parsing() {
        let v = vars("a b c d");
        let mono = Monomial::new(vec![3, 2, 1, 0]);
        assert_eq!(mono.display(&v).to_string(), "a^3*b^2*c");
        assert_eq!(Monomial::one(4).display(&v).to_string(), "1");
        assert_eq!(m(&v, "a^3 b^2 c"), mono);
        assert_eq!(m(&v, "1"), Monomial::one(4));
        assert!(matches!(
            parse_monomial(&v, "a*q"),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(parse_monomial(&v, "a^x").is_err());
        assert!(parse_monomial(&v, "   ").is_err());
    }

    #[test]
    fn minimalization() {
        let v = vars("x y");
        let i = minimalize(v.clone(), vec![m(&v, "x"), m(&v, "x^2")]).unwrap();
        assert_eq!(i.generators(), [m(&v, "x")]);
        let i = minimalize(v.clone(), vec![m(&v, "x"), m(&v, "y")]).unwrap();
        assert_eq!(i.generators().len(), 2);
        assert_eq!(sample_ideal().generators().len(), 5);
        assert_eq!(
            minimalize(v.clone(), vec![Monomial::one(3)]),
            Err(Error::VariableMismatch)
        );
        assert!(minimalize(vars("x x"), vec![]).is_err());
    }

    #[test]
    fn small_lcm_lattices() {
        let v = vars("x y");
        let principal = minimalize(v.clone(), vec![m(&v, "x*y^2")]).unwrap();
        let l = lcm_lattice(&principal).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.poset().height().unwrap(), 1);

        let xy = minimalize(v.clone(), vec![m(&v, "x"), m(&v, "y")]).unwrap();
        let l = lcm_lattice(&xy).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.poset().cover_indices().len(), 4);
        assert_eq!(l.top(), &m(&v, "x*y"));
        assert!(is_lattice(l.poset()));
    }

    #[test]
    fn sample_lcm_lattice_shape() {
        let l = lcm_lattice(&sample_ideal()).unwrap();
        assert_eq!(l.len(), 11);
        assert_eq!(l.poset().cover_indices().len(), 16);
        assert_eq!(l.poset().height().unwrap(), 4);
        assert_eq!(l.top().display(l.variables()).to_string(), "a^3*b^2*c^2*d");
    }

    #[test]
    fn betti_of_generators_and_koszul() {
        let v = vars("x y");
        let xy = minimalize(v.clone(), vec![m(&v, "x"), m(&v, "y")]).unwrap();
        assert_eq!(multigraded_betti(&xy, &m(&v, "x"), 1).unwrap(), 1);
        assert_eq!(multigraded_betti(&xy, &m(&v, "x*y"), 2).unwrap(), 1);
        assert_eq!(total_betti(&xy, 1).unwrap(), 2);
        assert_eq!(total_betti(&xy, 2).unwrap(), 1);
        assert_eq!(total_betti(&xy, 3).unwrap(), 0);
        assert!(matches!(
            multigraded_betti(&xy, &m(&v, "x^2"), 1),
            Err(Error::NotInLattice(_))
        ));
        assert!(multigraded_betti(&xy, &m(&v, "x"), 0).is_err());
        assert_eq!(multigraded_betti(&xy, &Monomial::one(2), 1).unwrap(), 0);
    }

    #[test]
    fn koszul_three_variables() {
        // (x, y, z): Betti numbers 3, 3, 1
        let v = vars("x y z");
        let i = minimalize(v.clone(), vec![m(&v, "x"), m(&v, "y"), m(&v, "z")]).unwrap();
        let totals = lcm_lattice(&i).unwrap().total_betti_numbers().unwrap();
        assert_eq!(totals, [3, 3, 1]);
    }

    #[test]
    fn divisor_posets() {
        let p = divisor_poset(12).unwrap();
        let labels: Vec<&str> = p.labels().iter().map(Label::as_str).collect();
        assert_eq!(labels, ["1", "12", "2", "3", "4", "6"]);
        assert_eq!(divisor_poset(1).unwrap().len(), 1);
        let prime = divisor_poset(13).unwrap();
        assert_eq!(prime.len(), 2);
        assert_eq!(prime.height().unwrap(), 1);
        assert!(divisor_poset(0).is_err());
    }

    #[test]
    fn hibi_ideals() {
        let h = hibi_ideal(&divisor_poset(12).unwrap()).unwrap();
        assert_eq!(h.generators().len(), 10);
        assert!(h.generators().iter().all(|g| g.degree().unwrap() == 6));

        let h = hibi_ideal(&Poset::antichain(2)).unwrap();
        let mut gens = h.generator_labels();
        gens.sort();
        assert_eq!(gens, ["x1*x2", "x1*y2", "x2*y1", "y1*y2"]);

        let h = hibi_ideal(&Poset::empty()).unwrap();
        assert_eq!(h.generators(), [Monomial::one(0)]);
    }
}
