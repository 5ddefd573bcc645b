//! Oriented rewriting systems, completion by overlap resolution, and normal forms.
//!
//! Words are ordered degree-lexicographically by letter index, so the
//! alphabet order of a [`Presentation`] is its monomial order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::ncalg::{Alphabet, LeggedMatrix, Letter, NcElement, StarRule, Word};
use crate::qfield::QScalar;

/// Default budget of memo misses per reducer.
pub const DEFAULT_FUEL: u64 = 50_000_000;

/// Completion gives up when the rule count exceeds this.
pub const MAX_RULES: usize = 20_000;

/// A central letter adjoined as the inverse of a central element `base`.
#[derive(Clone, Debug)]
pub struct CentralInverse {
    pub letter: Letter,
    pub base: NcElement,
}

/// Algebra presented by generators, oriented rules, and optionally a star.
#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    rules: BTreeMap<Word, NcElement>,
    leads: HashSet<Word>,
    max_lead: usize,
    degree_cap: usize,
    star: Option<StarRule>,
    inverses: Vec<CentralInverse>,
    fuel: u64,
}

/// Outcome of [`orient_and_complete`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionReport {
    pub initial_rules: usize,
    pub added_rules: usize,
    pub overlaps_checked: usize,
    pub max_overlap_degree: usize,
}

/// Result of a traced normal form computation.
#[derive(Clone, Debug)]
pub struct NormalFormReport {
    pub input: NcElement,
    pub output: NcElement,
    pub steps: u64,
}

impl Presentation {
    /// Free algebra on `alphabet`.
    pub fn free(alphabet: Alphabet, degree_cap: usize) -> Self {
        Presentation {
            alphabet,
            rules: BTreeMap::new(),
            leads: HashSet::new(),
            max_lead: 0,
            degree_cap,
            star: None,
            inverses: Vec::new(),
            fuel: DEFAULT_FUEL,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Word, &NcElement)> + '_ {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn set_degree_cap(&mut self, cap: usize) {
        self.degree_cap = cap;
    }

    pub fn set_fuel(&mut self, fuel: u64) {
        self.fuel = fuel;
    }

    pub fn star(&self) -> Option<&StarRule> {
        self.star.as_ref()
    }

    pub fn set_star(&mut self, star: StarRule) {
        self.star = Some(star);
    }

    pub fn inverses(&self) -> &[CentralInverse] {
        &self.inverses
    }

    /// Declares `letter` to be the inverse of the central element `base`. The
    /// letter must already commute with everything through the rules.
    pub fn add_central_inverse(&mut self, letter: Letter, base: NcElement) {
        self.inverses.push(CentralInverse { letter, base });
    }

    pub fn letter(&self, name: &str, indices: &[u8]) -> Result<Letter> {
        self.alphabet.get(name, indices)
    }

    pub fn gen(&self, name: &str, indices: &[u8]) -> Result<NcElement> {
        Ok(NcElement::letter(self.letter(name, indices)?))
    }

    fn insert_rule(&mut self, lead: Word, rhs: NcElement) {
        self.max_lead = self.max_lead.max(lead.len());
        self.leads.insert(lead.clone());
        self.rules.insert(lead, rhs);
    }

    fn remove_rule(&mut self, lead: &Word) -> Option<NcElement> {
        self.leads.remove(lead);
        let r = self.rules.remove(lead);
        self.max_lead = self.rules.keys().map(Word::len).max().unwrap_or(0);
        r
    }

    /// Adds rules directly. Each leading word must exceed its right-hand side.
    pub fn with_rules(mut self, rules: impl IntoIterator<Item = (Word, NcElement)>) -> Result<Self> {
        for (lead, rhs) in rules {
            if rhs.leading().is_some_and(|(w, _)| *w >= lead) {
                return Err(Error::Domain(format!("rule {} is not decreasing", self.alphabet.word_name(&lead))));
            }
            self.insert_rule(lead, rhs);
        }
        Ok(self)
    }

    /// True when no leading word occurs in `w`.
    pub fn is_irreducible(&self, w: &Word) -> bool {
        let l = w.letters();
        for start in 0..l.len() {
            for len in 1..=self.max_lead.min(l.len() - start) {
                if self.leads.contains(&Word::from_slice(&l[start..start + len])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::new(self)
    }

    pub fn normal_form(&self, a: &NcElement) -> Result<NcElement> {
        self.reducer().normal_form(a)
    }

    pub fn normal_form_report(&self, a: &NcElement) -> Result<NormalFormReport> {
        let mut r = self.reducer();
        let output = r.normal_form(a)?;
        Ok(NormalFormReport { input: a.clone(), output, steps: r.steps() })
    }

    /// Exact zero test, clearing central inverse letters when present.
    pub fn is_zero(&self, a: &NcElement) -> Result<bool> {
        self.reducer().is_zero(a)
    }

    /// One rule per line, `LEAD -> rhs`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (lead, rhs) in &self.rules {
            let _ = writeln!(s, "{} -> {}", self.alphabet.word_name(lead), rhs.display(&self.alphabet));
        }
        s
    }

    /// Number of irreducible words of each degree `0..=dmax`.
    pub fn irreducible_counts(&self, dmax: usize) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; dmax + 1];
        let mut stack: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
        let n = self.alphabet.len() as Letter;
        while let Some(w) = stack.pop() {
            counts[w.len()] += 1;
            if w.len() == dmax {
                continue;
            }
            for l in 0..n {
                let mut v = w.clone();
                v.push(l);
                if self.suffix_irreducible(&v) {
                    stack.push(v);
                }
            }
        }
        counts
    }

    fn suffix_irreducible(&self, v: &[Letter]) -> bool {
        for len in 1..=self.max_lead.min(v.len()) {
            if self.leads.contains(&Word::from_slice(&v[v.len() - len..])) {
                return false;
            }
        }
        true
    }

    /// Image of `a` under the star rule, reduced.
    pub fn star_apply(&self, a: &NcElement) -> Result<NcElement> {
        let star = self.star.as_ref().ok_or_else(|| Error::Domain("presentation has no star".into()))?;
        let mut r = self.reducer();
        let mut out = NcElement::zero();
        for (w, c) in a.terms() {
            let mut acc = NcElement::one();
            for &l in w.letters() {
                acc = r.mul(star.image(l)?, &acc)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }
}

/// Memoising normal form engine bound to one presentation.
pub struct Reducer<'a> {
    p: &'a Presentation,
    cache: HashMap<(Letter, Word), Rc<NcElement>>,
    steps: u64,
}

impl<'a> Reducer<'a> {
    pub fn new(p: &'a Presentation) -> Self {
        Reducer { p, cache: HashMap::new(), steps: 0 }
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.p
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Normal form of `l · w` for a normal word `w`.
    fn prepend(&mut self, l: Letter, w: &Word) -> Result<Rc<NcElement>> {
        let key = (l, w.clone());
        if let Some(e) = self.cache.get(&key) {
            return Ok(e.clone());
        }
        self.steps += 1;
        if self.steps > self.p.fuel {
            return Err(Error::Fuel(self.steps));
        }
        let mut lw: Vec<Letter> = Vec::with_capacity(w.len() + 1);
        lw.push(l);
        lw.extend_from_slice(w.letters());
        let mut hit = None;
        for m in 1..=self.p.max_lead.min(lw.len()) {
            let lead = Word::from_slice(&lw[..m]);
            if let Some(rhs) = self.p.rules.get(&lead) {
                hit = Some((rhs, m));
                break;
            }
        }
        let result = match hit {
            None => NcElement::word(Word(lw.into_iter().collect())),
            Some((rhs, m)) => {
                let suffix = Word::from_slice(&lw[m..]);
                let mut out = NcElement::zero();
                for (u, c) in rhs.terms() {
                    let e = self.word_times_normal(u, &suffix)?;
                    out.add_scaled(&e, c);
                }
                out
            }
        };
        let rc = Rc::new(result);
        self.cache.insert(key, rc.clone());
        Ok(rc)
    }

    /// Normal form of `u · s` for an arbitrary word `u` and a normal word `s`.
    fn word_times_normal(&mut self, u: &Word, s: &Word) -> Result<NcElement> {
        let mut cur = NcElement::word(s.clone());
        for &l in u.letters().iter().rev() {
            if cur.len() == 1 {
                let (w, c) = cur.terms().next().map(|(w, c)| (w.clone(), c.clone())).expect("term");
                cur = self.prepend(l, &w)?.scale(&c);
                continue;
            }
            let mut next = NcElement::zero();
            for (w, c) in cur.terms() {
                let e = self.prepend(l, w)?;
                next.add_scaled(&e, c);
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn normal_form(&mut self, a: &NcElement) -> Result<NcElement> {
        let mut out = NcElement::zero();
        for (w, c) in a.terms() {
            let e = self.word_times_normal(w, &Word::empty())?;
            out.add_scaled(&e, c);
        }
        Ok(out)
    }

    /// Normal form of `a · b` where `b` is already normal.
    pub fn mul_normal(&mut self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        let mut out = NcElement::zero();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                let e = self.word_times_normal(u, v)?;
                out.add_scaled(&e, &(c * d));
            }
        }
        Ok(out)
    }

    /// Normal form of `a · b` for arbitrary inputs.
    pub fn mul(&mut self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        let bn = self.normal_form(b)?;
        self.mul_normal(a, &bn)
    }

    /// Normal form of a product of several factors, right to left.
    pub fn product(&mut self, factors: &[&NcElement]) -> Result<NcElement> {
        let mut acc = NcElement::one();
        for f in factors.iter().rev() {
            acc = self.mul_normal(f, &acc)?;
        }
        Ok(acc)
    }

    /// Exact zero test. Central inverse letters are cleared by multiplying
    /// through with powers of their bases.
    pub fn is_zero(&mut self, a: &NcElement) -> Result<bool> {
        let nf = self.normal_form(a)?;
        if nf.is_zero() {
            return Ok(true);
        }
        if self.p.inverses.is_empty() {
            return Ok(false);
        }
        let cleared = self.clear_inverses(&nf)?;
        Ok(cleared.is_zero())
    }

    /// Multiplies `a` by `Π base_j^{K_j}` with `K` the largest exponents of the
    /// inverse letters in `a`, and returns the normal form of the result,
    /// which no longer contains inverse letters.
    pub fn clear_inverses(&mut self, a: &NcElement) -> Result<NcElement> {
        let inv = &self.p.inverses;
        let idx = |l: Letter| inv.iter().position(|c| c.letter == l);
        let mut kmax = alloc::vec![0usize; inv.len()];
        let mut split: Vec<(Vec<usize>, Word, QScalar)> = Vec::new();
        for (w, c) in a.terms() {
            let mut exps = alloc::vec![0usize; inv.len()];
            let mut rest = Word::empty();
            for &l in w.letters() {
                match idx(l) {
                    Some(j) => exps[j] += 1,
                    None => rest.0.push(l),
                }
            }
            for j in 0..inv.len() {
                kmax[j] = kmax[j].max(exps[j]);
            }
            split.push((exps, rest, c.clone()));
        }
        let bases: Vec<NcElement> = inv.iter().map(|c| c.base.clone()).collect();
        let mut powers: BTreeMap<Vec<usize>, NcElement> = BTreeMap::new();
        let mut out = NcElement::zero();
        for (exps, rest, c) in split {
            let need: Vec<usize> = (0..exps.len()).map(|j| kmax[j] - exps[j]).collect();
            if !powers.contains_key(&need) {
                let mut acc = NcElement::one();
                for (j, &k) in need.iter().enumerate() {
                    for _ in 0..k {
                        acc = self.mul(&bases[j], &acc)?;
                    }
                }
                powers.insert(need.clone(), acc);
            }
            let pw = powers[&need].clone();
            let term = self.mul(&pw, &NcElement::word(rest))?;
            out.add_scaled(&term, &c);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------

/// Entrywise differences `lhs - rhs`, reduced to a basis of their span.
pub fn relations_from_matrix_eq(lhs: &LeggedMatrix, rhs: &LeggedMatrix) -> Result<Vec<NcElement>> {
    let diff = lhs.sub(rhs)?;
    Ok(independent(diff.nonzero().map(|(_, e)| e.clone())))
}

/// Basis of the span of `rels` in fully reduced echelon form.
pub fn independent(rels: impl IntoIterator<Item = NcElement>) -> Vec<NcElement> {
    let mut ech = Echelon::<Word>::new();
    for r in rels {
        let row: SparseRow<Word> = r.into_terms().collect();
        ech.insert(row);
    }
    ech.into_reduced().into_iter().map(NcElement::from_terms).collect()
}

fn monic_rule(r: &NcElement) -> Option<(Word, NcElement)> {
    let (lead, lc) = r.leading().map(|(w, c)| (w.clone(), c.clone()))?;
    let inv = lc.inv().ok()?;
    let mut rhs = r.scale(&-inv);
    rhs.add_term(lead.clone(), &QScalar::one());
    Some((lead, rhs))
}

struct Completer {
    p: Presentation,
    added: usize,
}

impl Completer {
    /// Reduces `rel` and adjoins it as a rule when non-zero. Rules whose
    /// leading words become reducible are taken out and re-added.
    fn add_relation(&mut self, rel: NcElement) -> Result<bool> {
        let mut queue = alloc::vec![rel];
        let mut any = false;
        while let Some(rel) = queue.pop() {
            let r = self.p.normal_form(&rel)?;
            let Some((lead, rhs)) = monic_rule(&r) else { continue };
            if lead.is_empty() {
                return Err(Error::Inconsistency("relations imply 1 = 0".into()));
            }
            let stale: Vec<Word> = self.p.rules.keys().filter(|l| contains(l, &lead)).cloned().collect();
            for s in stale {
                let old = self.p.remove_rule(&s).expect("rule present");
                let mut back = NcElement::word(s);
                back.add_scaled(&old, &QScalar::from_int(-1));
                queue.push(back);
            }
            self.p.insert_rule(lead, rhs);
            any = true;
            if self.p.rules.len() > MAX_RULES {
                return Err(Error::CompletionFailure { overlap: "rule limit exceeded".into() });
            }
        }
        Ok(any)
    }

    fn normalize_rhs(&mut self) -> Result<()> {
        let leads: Vec<Word> = self.p.rules.keys().cloned().collect();
        for l in leads {
            let rhs = self.p.rules[&l].clone();
            let n = self.p.normal_form(&rhs)?;
            self.p.rules.insert(l, n);
        }
        Ok(())
    }
}

fn contains(hay: &Word, needle: &Word) -> bool {
    let (h, n) = (hay.letters(), needle.letters());
    n.len() <= h.len() && h.windows(n.len()).any(|w| w == n)
}

/// Orients `relations` by the degree-lexicographic order of `alphabet`,
/// interreduces them, and resolves every overlap of total degree at most
/// `degree_cap`, adjoining the non-resolving ones as new rules.
pub fn orient_and_complete(alphabet: Alphabet, relations: Vec<NcElement>, degree_cap: usize) -> Result<(Presentation, CompletionReport)> {
    complete_from(Presentation::free(alphabet, degree_cap), relations)
}

/// As [`orient_and_complete`], starting from an existing presentation.
pub fn complete_from(base: Presentation, relations: Vec<NcElement>) -> Result<(Presentation, CompletionReport)> {
    for r in &relations {
        base.alphabet.check(r)?;
    }
    let degree_cap = base.degree_cap;
    let mut c = Completer { p: base, added: 0 };
    for r in independent(relations) {
        c.add_relation(r)?;
    }
    c.normalize_rhs()?;
    let mut report = CompletionReport { initial_rules: c.p.rules.len(), ..Default::default() };
    let mut checked: HashSet<(Word, Word, usize)> = HashSet::new();
    loop {
        let mut pending = Vec::new();
        {
            let p = &c.p;
            let mut red = p.reducer();
            for (l1, r1) in &p.rules {
                for (l2, r2) in &p.rules {
                    let (a, b) = (l1.letters(), l2.letters());
                    for k in 1..a.len().min(b.len()) {
                        if a[a.len() - k..] != b[..k] {
                            continue;
                        }
                        let total = a.len() + b.len() - k;
                        if total > degree_cap {
                            continue;
                        }
                        if !checked.insert((l1.clone(), l2.clone(), k)) {
                            continue;
                        }
                        report.overlaps_checked += 1;
                        report.max_overlap_degree = report.max_overlap_degree.max(total);
                        let tail = NcElement::word(Word::from_slice(&b[k..]));
                        let head = NcElement::word(Word::from_slice(&a[..a.len() - k]));
                        let s1 = red.mul(r1, &tail)?;
                        let s2 = red.mul(&head, r2)?;
                        let d = &s1 - &s2;
                        if !d.is_zero() {
                            let mut ov = Word::from_slice(a);
                            ov.0.extend_from_slice(&b[k..]);
                            pending.push((p.alphabet.word_name(&ov), d));
                        }
                    }
                }
            }
        }
        if pending.is_empty() {
            break;
        }
        let mut progressed = false;
        for (name, d) in pending {
            let before = c.p.rules.len();
            if c.add_relation(d).map_err(|e| match e {
                Error::CompletionFailure { .. } => Error::CompletionFailure { overlap: name.clone() },
                other => other,
            })? {
                progressed = true;
                c.added += c.p.rules.len().saturating_sub(before).max(1);
            }
        }
        if !progressed {
            break;
        }
        c.normalize_rhs()?;
        checked.clear();
    }
    report.added_rules = c.added;
    Ok((c.p, report))
}

/// Number of multisets of size `d` from `n` letters, i.e. commutative monomials.
pub fn commutative_monomials(n: u64, d: u64) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..=d as u128 {
        num *= n as u128 - 1 + k;
        den *= k;
    }
    (num / den) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::GenId;

    fn xy() -> Alphabet {
        Alphabet::new(alloc::vec![GenId::new("x", &[]), GenId::new("y", &[])]).unwrap()
    }

    #[test]
    fn free_algebra_has_no_rules() {
        let (p, rep) = orient_and_complete(xy(), Vec::new(), 4).unwrap();
        assert_eq!(p.rule_count(), 0);
        assert_eq!(rep.added_rules, 0);
        assert_eq!(p.irreducible_counts(3), alloc::vec![1, 2, 4, 8]);
    }

    #[test]
    fn quantum_plane() {
        // y x = q x y
        let x = NcElement::letter(0);
        let y = NcElement::letter(1);
        let rel = &(&y * &x) - &(&x * &y).scale(&QScalar::q());
        let (p, rep) = orient_and_complete(xy(), alloc::vec![rel], 5).unwrap();
        assert_eq!(rep.added_rules, 0);
        let yyx = p.normal_form(&(&(&y * &y) * &x)).unwrap();
        assert_eq!(yyx, (&x * &(&y * &y)).scale(&QScalar::q_pow(2)));
        for (d, c) in p.irreducible_counts(4).into_iter().enumerate() {
            assert_eq!(c, commutative_monomials(2, d as u64));
        }
        assert_eq!(p.dump().trim(), "y.x -> q*x.y");
    }

    #[test]
    fn inconsistent_relations() {
        let rel = &NcElement::letter(0) - &NcElement::one();
        let rel2 = &NcElement::letter(0) - &NcElement::scalar(QScalar::from_int(2));
        assert!(matches!(orient_and_complete(xy(), alloc::vec![rel, rel2], 3), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn completion_adds_missing_rule() {
        // x x = y x and x y = y x are not confluent as given
        let x = NcElement::letter(0);
        let y = NcElement::letter(1);
        let r1 = &(&y * &y) - &(&x * &x);
        let r2 = &(&y * &x) - &(&x * &y);
        let (p, _) = orient_and_complete(xy(), alloc::vec![r1, r2], 4).unwrap();
        // commutative algebra with y^2 = x^2
        let lhs = p.normal_form(&(&(&y * &y) * &y)).unwrap();
        let rhs = p.normal_form(&(&(&x * &x) * &y)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
