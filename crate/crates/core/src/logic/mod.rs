//! Propositional language over binary variables.

mod event;
mod formula;
mod parser;
mod vars;

pub use event::Event;
pub use formula::{Formula, FormulaDisplay};
pub use parser::parse_formula;
pub use vars::{Interpretation, VariableTable, DEFAULT_MAX_VARS};

pub(crate) use vars::{is_identifier, is_keyword};

/// Model set of `formula` over `vars`.
pub fn models(formula: &Formula, vars: &VariableTable) -> Event {
    formula.models(vars)
}

/// All `2^n` interpretations in canonical binary-counting order.
pub fn enumerate(vars: &VariableTable) -> Vec<Interpretation> {
    vars.enumerate().collect()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn arb_formula(nvars: usize) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            (0..nvars).prop_map(Formula::Var),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.implies(b)),
            ]
        })
    }

    fn table(n: usize) -> VariableTable {
        VariableTable::new((0..n).map(|i| format!("x{i}"))).unwrap()
    }

    fn truth_table(f: &Formula, vars: &VariableTable) -> Event {
        Event::from_predicate(vars.world_count(), |w| f.eval(vars.interpretation(w)))
    }

    #[test]
    fn model_examples() {
        let p = VariableTable::new(["p"]).unwrap();
        assert!(models(&Formula::True, &p).is_full());

        let pq = VariableTable::new(["p", "q"]).unwrap();
        let and = parse_formula("p & q", &pq).unwrap();
        assert_eq!(models(&and, &pq), Event::from_indices(4, [3]));
        // !p!q, !pq, pq by truth table
        let imp = parse_formula("p => q", &pq).unwrap();
        assert_eq!(models(&imp, &pq), Event::from_indices(4, [0, 1, 3]));
    }

    #[test]
    fn from_event_has_exactly_those_models() {
        let vars = table(3);
        for mask in 0..256u64 {
            let event = Event::from_mask(8, mask);
            assert_eq!(models(&Formula::from_event(&event, &vars), &vars), event);
        }
    }

    proptest! {
        #[test]
        fn connectives_match_set_algebra(
            (n, f, g) in (1usize..=6).prop_flat_map(|n| (Just(n), arb_formula(n), arb_formula(n)))
        ) {
            let vars = table(n);
            let u = vars.universe();
            prop_assert_eq!(models(&f, &vars), truth_table(&f, &vars));
            prop_assert_eq!(models(&f.clone().not(), &vars), u.difference(&models(&f, &vars)));
            prop_assert_eq!(
                truth_table(&f.clone().and(g.clone()), &vars),
                models(&f, &vars).intersection(&models(&g, &vars))
            );
            prop_assert_eq!(
                truth_table(&f.clone().or(g.clone()), &vars),
                models(&f, &vars).union(&models(&g, &vars))
            );
            prop_assert_eq!(
                truth_table(&f.clone().implies(g.clone()), &vars),
                truth_table(&f.clone().not().or(g.clone()), &vars)
            );
        }

        #[test]
        fn print_parse_round_trip(f in arb_formula(4)) {
            let vars = table(4);
            let printed = f.display(&vars).to_string();
            let parsed = parse_formula(&printed, &vars).unwrap();
            prop_assert_eq!(&parsed, &f);
            let reprinted = parsed.display(&vars).to_string();
            prop_assert_eq!(parse_formula(&reprinted, &vars).unwrap(), parsed);
        }
    }
}
