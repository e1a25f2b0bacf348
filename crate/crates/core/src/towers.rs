//! The square-root towers over Q(alpha) in which scheme points live.
//!
//! The standard tower adjoins `i, a, b, d` with `i^2 = -1`, `a^2 = alpha`,
//! `b^2 = 2`, `d^2 = 1 - alpha^2`. Two further roots
//! `s1^2 = -2(1 + alpha)` and `s2^2 = -2(1 - alpha)` are needed for two of
//! the point families. They are adjoined in separate rings: `s1*s2` squares
//! to `4(1 - alpha^2) = (2d)^2`, so a ring with both contains the zero
//! divisors `s1*s2 +- 2d` and elimination there can get stuck.

use std::sync::{Arc, OnceLock};

use crate::scalars::{RatFunc, Ring, TowerElem, TowerRing};

/// Elements of a tower over Q(alpha).
pub type Surd = TowerElem<RatFunc>;

pub struct Towers {
    pub standard: Arc<TowerRing<RatFunc>>,
    pub with_s1: Arc<TowerRing<RatFunc>>,
    pub with_s2: Arc<TowerRing<RatFunc>>,
    /// All six roots; only used where every specialization is considered.
    pub full: Arc<TowerRing<RatFunc>>,
}

impl Towers {
    pub fn get() -> &'static Towers {
        static TOWERS: OnceLock<Towers> = OnceLock::new();
        TOWERS.get_or_init(|| {
            let alpha = RatFunc::alpha();
            let c = |x: RatFunc| Surd::from_base(x);
            let one = RatFunc::one();
            let base = TowerRing::base();
            let t = base.adjoin_sqrt(&c(RatFunc::from_i64(-1)), "i").expect("fresh name");
            let t = t.adjoin_sqrt(&c(alpha.clone()), "a").expect("fresh name");
            let t = t.adjoin_sqrt(&c(RatFunc::from_i64(2)), "b").expect("fresh name");
            let standard = t.adjoin_sqrt(&c(one.sub_ref(&alpha.mul_ref(&alpha))), "d").expect("fresh name");
            let s1 = c(RatFunc::from_i64(-2).mul_ref(&one.add_ref(&alpha)));
            let s2 = c(RatFunc::from_i64(-2).mul_ref(&one.sub_ref(&alpha)));
            let with_s1 = standard.adjoin_sqrt(&s1, "s1").expect("fresh name");
            let with_s2 = standard.adjoin_sqrt(&s2, "s2").expect("fresh name");
            let full = with_s1.adjoin_sqrt(&s2, "s2").expect("fresh name");
            Towers { standard, with_s1, with_s2, full }
        })
    }

    pub fn i(&self) -> Surd {
        self.standard.generator("i").expect("generator i")
    }

    pub fn a(&self) -> Surd {
        self.standard.generator("a").expect("generator a")
    }

    pub fn b(&self) -> Surd {
        self.standard.generator("b").expect("generator b")
    }

    pub fn d(&self) -> Surd {
        self.standard.generator("d").expect("generator d")
    }

    pub fn s1(&self) -> Surd {
        self.with_s1.generator("s1").expect("generator s1")
    }

    pub fn s2(&self) -> Surd {
        self.with_s2.generator("s2").expect("generator s2")
    }

    /// Rewrite an element of any of these rings in the full tower.
    pub fn to_full(&self, x: &Surd) -> Surd {
        self.full.embed(x).expect("all towers embed by name")
    }
}

/// Shorthand for a constant of Q(alpha) as a tower element.
pub fn k(x: RatFunc) -> Surd {
    Surd::from_base(x)
}

pub fn int(n: i64) -> Surd {
    Surd::from_i64(n)
}

pub fn alpha() -> Surd {
    k(RatFunc::alpha())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_squares() {
        let t = Towers::get();
        let (i, a, b, d) = (t.i(), t.a(), t.b(), t.d());
        assert_eq!(i.mul_ref(&i), int(-1));
        assert_eq!(a.mul_ref(&a), alpha());
        assert_eq!(b.mul_ref(&b), int(2));
        assert_eq!(d.mul_ref(&d), int(1).sub_ref(&alpha().mul_ref(&alpha())));
        assert_eq!(i.mul_ref(&a).pow(2), alpha().neg_ref());
        let s1 = t.s1();
        assert_eq!(s1.mul_ref(&s1), int(-2).mul_ref(&int(1).add_ref(&alpha())));
        // 1 + d is a unit: (1 + d)(1 - d) = alpha^2
        assert!(int(1).add_ref(&d).try_inv().is_ok());
    }

    #[test]
    fn both_extra_roots_make_zero_divisors() {
        let t = Towers::get();
        let s12 = t.to_full(&t.s1()).mul_ref(&t.to_full(&t.s2()));
        let two_d = t.to_full(&t.d()).mul_ref(&int(2));
        let zd = s12.sub_ref(&two_d);
        assert!(!zd.is_zero());
        assert!(zd.mul_ref(&s12.add_ref(&two_d)).is_zero());
        assert!(zd.try_inv().is_err());
    }
}
