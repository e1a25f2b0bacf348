use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Monomial;

/// Monomial order; variable ties are broken by the variable-set order,
/// with the first variable largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.exps().iter().zip(b.exps()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
        })
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" | "deglex" => Ok(MonomialOrder::GrLex),
            "grevlex" | "degrevlex" => Ok(MonomialOrder::GrevLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_on_pluecker_terms() {
        // M12 > M13 > M14 > M23 > M24 > M34
        let m12m34 = mono(&[1, 0, 0, 0, 0, 1]);
        let m13m24 = mono(&[0, 1, 0, 0, 1, 0]);
        let m14m23 = mono(&[0, 0, 1, 1, 0, 0]);
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m14m23, &m13m24), Ordering::Greater);
        assert_eq!(o.cmp(&m13m24, &m12m34), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&m12m34, &m14m23), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 4).prop_map(|v| Monomial::from_exps(&v))
    }

    proptest! {
        #[test]
        fn order_axioms(a in arb_mono(), b in arb_mono(), m in arb_mono()) {
            for o in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex] {
                prop_assert_ne!(o.cmp(&Monomial::one(), &a), Ordering::Greater);
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&m), &b.mul(&m)));
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            }
        }
    }
}
