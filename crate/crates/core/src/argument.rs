//! Truth-table checking of propositional argument forms.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropFormula {
    Atom(String),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
    Iff(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(name: &str) -> Self {
        PropFormula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        PropFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: PropFormula) -> Self {
        PropFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: PropFormula) -> Self {
        PropFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: PropFormula) -> Self {
        PropFormula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: PropFormula) -> Self {
        PropFormula::Iff(Box::new(self), Box::new(rhs))
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            PropFormula::Atom(a) => {
                out.insert(a.clone());
            }
            PropFormula::Not(f) => f.collect_atoms(out),
            PropFormula::And(a, b)
            | PropFormula::Or(a, b)
            | PropFormula::Implies(a, b)
            | PropFormula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PropFormula::Iff(..) => 1,
            PropFormula::Implies(..) => 2,
            PropFormula::Or(..) => 3,
            PropFormula::And(..) => 4,
            PropFormula::Not(_) | PropFormula::Atom(_) => 5,
        }
    }
}

/// Renders in the ASCII grammar (`! & | -> <->`), parenthesizing every
/// binary subterm.
impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |f: &mut fmt::Formatter<'_>, g: &PropFormula| {
            if g.precedence() < 5 {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            PropFormula::Atom(a) => f.write_str(a),
            PropFormula::Not(g) => {
                f.write_str("!")?;
                sub(f, g)
            }
            PropFormula::And(a, b) => bin(f, a, "&", b, sub),
            PropFormula::Or(a, b) => bin(f, a, "|", b, sub),
            PropFormula::Implies(a, b) => bin(f, a, "->", b, sub),
            PropFormula::Iff(a, b) => bin(f, a, "<->", b, sub),
        }
    }
}

fn bin(
    f: &mut fmt::Formatter<'_>,
    a: &PropFormula,
    op: &str,
    b: &PropFormula,
    sub: impl Fn(&mut fmt::Formatter<'_>, &PropFormula) -> fmt::Result,
) -> fmt::Result {
    sub(f, a)?;
    write!(f, " {op} ")?;
    sub(f, b)
}

pub type Valuation = BTreeMap<String, bool>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgumentError {
    MissingAtom(String),
    TooManyAtoms { count: usize, limit: usize },
}

impl fmt::Display for ArgumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgumentError::MissingAtom(a) => write!(f, "assignment gives no value to `{a}`"),
            ArgumentError::TooManyAtoms { count, limit } => {
                write!(f, "{count} atoms exceed the enumeration limit of {limit}")
            }
        }
    }
}

impl core::error::Error for ArgumentError {}

pub fn eval_prop(f: &PropFormula, valuation: &Valuation) -> Result<bool, ArgumentError> {
    Ok(match f {
        PropFormula::Atom(a) => *valuation
            .get(a)
            .ok_or_else(|| ArgumentError::MissingAtom(a.clone()))?,
        PropFormula::Not(g) => !eval_prop(g, valuation)?,
        PropFormula::And(a, b) => eval_prop(a, valuation)? && eval_prop(b, valuation)?,
        PropFormula::Or(a, b) => eval_prop(a, valuation)? || eval_prop(b, valuation)?,
        PropFormula::Implies(a, b) => !eval_prop(a, valuation)? || eval_prop(b, valuation)?,
        PropFormula::Iff(a, b) => eval_prop(a, valuation)? == eval_prop(b, valuation)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArgumentForm {
    pub premises: Vec<PropFormula>,
    pub conclusion: PropFormula,
}

impl ArgumentForm {
    pub fn new(premises: Vec<PropFormula>, conclusion: PropFormula) -> Self {
        ArgumentForm {
            premises,
            conclusion,
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut atoms = self.conclusion.atoms();
        for p in &self.premises {
            atoms.extend(p.atoms());
        }
        atoms
    }

    /// `(p1 ∧ … ∧ pn) ⇒ conclusion`.
    pub fn as_conditional(&self) -> PropFormula {
        let antecedent = self.premises.iter().cloned().reduce(PropFormula::and);
        match antecedent {
            Some(a) => a.implies(self.conclusion.clone()),
            None => self.conclusion.clone(),
        }
    }
}

/// Largest atom count any enumeration here accepts.
pub const ATOM_LIMIT: usize = 20;

/// Every valuation over `atoms`, in lexicographic order: false before true,
/// with the first atom most significant.
fn valuations(
    atoms: &BTreeSet<String>,
) -> Result<impl Iterator<Item = Valuation> + '_, ArgumentError> {
    let n = atoms.len();
    if n > ATOM_LIMIT {
        return Err(ArgumentError::TooManyAtoms {
            count: n,
            limit: ATOM_LIMIT,
        });
    }
    Ok((0u32..1 << n).map(move |bits| {
        atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), bits >> (n - 1 - i) & 1 == 1))
            .collect()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    /// First valuation that satisfies every premise and falsifies the
    /// conclusion.
    pub counterexample: Option<Valuation>,
    /// No valuation satisfies all premises; validity holds vacuously.
    pub vacuous: bool,
}

pub fn is_valid_argument(arg: &ArgumentForm) -> Result<Validity, ArgumentError> {
    let atoms = arg.atoms();
    let mut counterexample = None;
    let mut premises_satisfiable = false;
    for v in valuations(&atoms)? {
        if !all_true(&arg.premises, &v)? {
            continue;
        }
        premises_satisfiable = true;
        if !eval_prop(&arg.conclusion, &v)? {
            counterexample = Some(v);
            break;
        }
    }
    Ok(Validity {
        valid: counterexample.is_none(),
        counterexample,
        vacuous: !premises_satisfiable,
    })
}

fn all_true(formulas: &[PropFormula], v: &Valuation) -> Result<bool, ArgumentError> {
    for f in formulas {
        if !eval_prop(f, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_tautology(f: &PropFormula) -> Result<bool, ArgumentError> {
    let atoms = f.atoms();
    for v in valuations(&atoms)? {
        if !eval_prop(f, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some valuation makes every formula true.
pub fn is_satisfiable(formulas: &[PropFormula]) -> Result<bool, ArgumentError> {
    let mut atoms = BTreeSet::new();
    for f in formulas {
        atoms.extend(f.atoms());
    }
    for v in valuations(&atoms)? {
        if all_true(formulas, &v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Results of checking the modus tollens schema over `P1` (P = NP), `P2`
/// (`M^o` exists) and `P3` (a deterministic particular table exists), with
/// and without the definitional axiom `P2 ⇔ P3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KimArgumentAnalysis {
    pub schema: ArgumentForm,
    pub schema_validity: Validity,
    pub axiom: PropFormula,
    /// `P2 ⇒ P3` follows from the axiom alone.
    pub implication_follows_from_axiom: bool,
    /// `{P2 ⇔ P3, ¬(P2 ⇒ P3)}` has a model.
    pub negated_implication_satisfiable: bool,
    /// The schema with the axiom added as a premise.
    pub with_axiom: ArgumentForm,
    pub with_axiom_validity: Validity,
    pub premise_set_satisfiable: bool,
}

pub fn kim_schema() -> ArgumentForm {
    let (p1, p2, p3) = (
        PropFormula::atom("P1"),
        PropFormula::atom("P2"),
        PropFormula::atom("P3"),
    );
    let inner = p2.implies(p3);
    ArgumentForm::new(
        alloc::vec![p1.clone().implies(inner.clone()), inner.not()],
        p1.not(),
    )
}

pub fn analyze_kim_argument() -> KimArgumentAnalysis {
    let schema = kim_schema();
    let axiom = PropFormula::atom("P2").iff(PropFormula::atom("P3"));
    let implication = PropFormula::atom("P2").implies(PropFormula::atom("P3"));
    let run = || -> Result<KimArgumentAnalysis, ArgumentError> {
        let schema_validity = is_valid_argument(&schema)?;
        let implication_follows_from_axiom = is_valid_argument(&ArgumentForm::new(
            alloc::vec![axiom.clone()],
            implication.clone(),
        ))?
        .valid;
        let negated_implication_satisfiable =
            is_satisfiable(&[axiom.clone(), implication.clone().not()])?;
        let mut premises = schema.premises.clone();
        premises.push(axiom.clone());
        let with_axiom = ArgumentForm::new(premises, schema.conclusion.clone());
        let with_axiom_validity = is_valid_argument(&with_axiom)?;
        let premise_set_satisfiable = is_satisfiable(&with_axiom.premises)?;
        Ok(KimArgumentAnalysis {
            schema: schema.clone(),
            schema_validity,
            axiom: axiom.clone(),
            implication_follows_from_axiom,
            negated_implication_satisfiable,
            with_axiom,
            with_axiom_validity,
            premise_set_satisfiable,
        })
    };
    run().expect("three atoms are within every limit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(name: &str) -> PropFormula {
        PropFormula::atom(name)
    }

    fn val(pairs: &[(&str, bool)]) -> Valuation {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn eval_examples() {
        let p1 = a("P1").implies(a("P1"));
        assert!(eval_prop(&p1, &val(&[("P1", false)])).unwrap());
        assert!(eval_prop(&p1, &val(&[("P1", true)])).unwrap());
        let v = val(&[("P2", true), ("P3", false)]);
        assert!(eval_prop(&a("P2").implies(a("P3")).not(), &v).unwrap());
        assert!(!eval_prop(&a("P2").iff(a("P3")), &v).unwrap());
    }

    #[test]
    fn eval_missing_atom() {
        assert_eq!(
            eval_prop(&a("P9"), &Valuation::new()),
            Err(ArgumentError::MissingAtom("P9".into()))
        );
    }

    #[test]
    fn modus_tollens_valid() {
        let arg = ArgumentForm::new(vec![a("p").implies(a("q")), a("q").not()], a("p").not());
        let v = is_valid_argument(&arg).unwrap();
        assert!(v.valid && !v.vacuous);
    }

    #[test]
    fn affirming_the_consequent_invalid() {
        let arg = ArgumentForm::new(vec![a("p").implies(a("q")), a("q")], a("p"));
        let v = is_valid_argument(&arg).unwrap();
        assert!(!v.valid);
        assert_eq!(v.counterexample, Some(val(&[("p", false), ("q", true)])));
    }

    #[test]
    fn schema_is_valid() {
        let v = is_valid_argument(&kim_schema()).unwrap();
        assert!(v.valid);
        assert!(!v.vacuous);
    }

    #[test]
    fn analysis_finds_inconsistent_premises() {
        let r = analyze_kim_argument();
        assert!(r.schema_validity.valid);
        assert!(r.implication_follows_from_axiom);
        assert!(!r.negated_implication_satisfiable);
        assert!(r.with_axiom_validity.valid);
        assert!(r.with_axiom_validity.vacuous);
        assert!(!r.premise_set_satisfiable);
    }

    #[test]
    fn guard_rejects_21_atoms() {
        let f = (0..21)
            .map(|i| a(&alloc::format!("P{i}")))
            .reduce(PropFormula::or)
            .unwrap();
        assert!(matches!(
            is_tautology(&f),
            Err(ArgumentError::TooManyAtoms { count: 21, .. })
        ));
    }

    fn arb_formula() -> impl Strategy<Value = PropFormula> {
        let leaf = prop_oneof![Just(a("P1")), Just(a("P2")), Just(a("P3")), Just(a("P4"))];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(PropFormula::not),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| x.and(y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| x.or(y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| x.implies(y)),
                (inner.clone(), inner).prop_map(|(x, y)| x.iff(y)),
            ]
        })
    }

    proptest! {
        #[test]
        fn validity_matches_conditional_tautology(
            premises in proptest::collection::vec(arb_formula(), 0..3),
            conclusion in arb_formula(),
        ) {
            let arg = ArgumentForm::new(premises, conclusion);
            let v = is_valid_argument(&arg).unwrap();
            prop_assert_eq!(v.valid, is_tautology(&arg.as_conditional()).unwrap());
            let sat = is_satisfiable(&arg.premises).unwrap();
            prop_assert_eq!(v.vacuous, !sat);
            if v.vacuous {
                prop_assert!(v.valid);
            }
        }
    }
}
