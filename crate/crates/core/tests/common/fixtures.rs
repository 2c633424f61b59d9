//! Named baskets from the case analysis, with their expected volumes and
//! plurigenera.
#![allow(dead_code)]

use pluribasket::{Basket, FormalBasket, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub basket: &'static str,
    pub chi: i64,
    pub sign: Sign,
    /// Expected `P₂₄`, when the case analysis states one.
    pub p24: Option<i64>,
    /// Whether this is a level-12 basket the search must reach.
    pub b12: bool,
}

impl Fixture {
    pub fn basket(&self) -> Basket {
        self.basket.parse().unwrap()
    }

    pub fn formal(&self) -> FormalBasket {
        FormalBasket::new(self.basket(), self.chi, 0)
    }

    pub fn sign_of(k3: &Rational) -> Sign {
        if k3.is_positive() {
            Sign::Positive
        } else if k3.is_zero() {
            Sign::Zero
        } else {
            Sign::Negative
        }
    }
}

const fn fx(name: &'static str, basket: &'static str, chi: i64, sign: Sign, p24: Option<i64>, b12: bool) -> Fixture {
    Fixture { name, basket, chi, sign, p24, b12 }
}

use Sign::*;

pub const CASE6: &str = "{5x(1,2),(3,7),3x(2,5),3x(1,3),(3,11)}";

pub const FIXTURES: &[Fixture] = &[
    fx("case 6", CASE6, 2, Positive, Some(8), true),
    fx("9-II", "{9x(1,2),2x(3,7),(2,5),(4,11),4x(1,3),2x(2,7),(1,5)}", 3, Positive, Some(6), true),
    fx("9-II packed", "{9x(1,2),2x(3,7),(2,5),(5,14),3x(1,3),2x(2,7),(1,5)}", 3, Zero, None, false),
    fx("9-V chi 2", "{5x(1,2),2x(3,7),(3,8),(1,3),(3,10),(2,7)}", 2, Positive, Some(4), true),
    fx("9-V chi 2 B'", "{5x(1,2),2x(3,7),(3,8),(1,3),(5,17)}", 2, Positive, Some(3), false),
    fx("9-V chi 2 B''", "{5x(1,2),2x(3,7),(3,8),(4,13),(2,7)}", 2, Negative, None, false),
    fx("9-V chi 3", "{7x(1,2),(4,9),(3,7),2x(2,5),(3,8),3x(1,3),3x(2,7)}", 3, Positive, Some(8), true),
    fx("9-V chi 3 B'", "{7x(1,2),(7,16),2x(2,5),(3,8),3x(1,3),3x(2,7)}", 3, Positive, Some(6), false),
    fx("9-V chi 3 B''", "{7x(1,2),(4,9),(3,7),(2,5),(5,13),3x(1,3),3x(2,7)}", 3, Positive, Some(4), false),
    fx("9-VI", "{5x(1,2),2x(3,7),(4,11),(1,3),2x(2,7)}", 2, Positive, Some(6), true),
    fx("9-VI packed", "{5x(1,2),2x(3,7),(5,14),2x(2,7)}", 2, Zero, None, false),
    fx("10-I chi 2, P13 = 0", "{2x(1,2),(3,7),(5,12),2x(2,5),(3,8),(1,3),(2,7)}", 2, Negative, None, false),
    fx("10-I chi 2", "{2x(1,2),2x(3,7),3x(2,5),(3,8),(1,3),(2,7)}", 2, Positive, Some(4), true),
    fx("10-I chi 3, beta = 1", "{4x(1,2),3x(3,7),4x(2,5),(4,11),2x(1,3),(2,7),(1,4)}", 3, Negative, None, false),
    fx("10-I chi 3", "{4x(1,2),3x(3,7),4x(2,5),(3,8),3x(1,3),(3,11)}", 3, Positive, Some(2), true),
    fx("10-II chi 2", "{(1,2),(4,9),(3,7),4x(2,5),2x(1,3),(2,7)}", 2, Positive, Some(5), true),
    fx("10-II chi 2 packed", "{(1,2),(7,16),4x(2,5),2x(1,3),(2,7)}", 2, Positive, Some(3), false),
    fx("10-II chi 2, P13 = 0", "{(1,2),(4,9),(5,12),3x(2,5),2x(1,3),(2,7)}", 2, Negative, None, false),
    fx("10-II chi 3, alpha = 1", "{2x(1,2),(5,11),2x(3,7),5x(2,5),4x(1,3),(2,7),(1,4)}", 3, Negative, None, false),
    fx("10-II chi 3", "{3x(1,2),(4,9),2x(3,7),5x(2,5),4x(1,3),(3,11)}", 3, Positive, Some(3), true),
    fx("10-II chi 3 packed", "{3x(1,2),(7,16),(3,7),5x(2,5),4x(1,3),(3,11)}", 3, Negative, None, false),
];

pub fn named(name: &str) -> Fixture {
    *FIXTURES.iter().find(|f| f.name == name).unwrap_or_else(|| panic!("no fixture {name}"))
}

/// Each level-12 fixture with the fixtures forming the rest of its positive
/// descendant set.
pub fn descent_expectations() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("case 6", vec![]),
        ("9-II", vec![]),
        ("9-V chi 2", vec!["9-V chi 2 B'"]),
        ("9-V chi 3", vec!["9-V chi 3 B'", "9-V chi 3 B''"]),
        ("9-VI", vec![]),
        ("10-I chi 2", vec![]),
        ("10-I chi 3", vec![]),
        ("10-II chi 2", vec!["10-II chi 2 packed"]),
        ("10-II chi 3", vec![]),
    ]
}

pub const X46_WEIGHTS: [u32; 5] = [4, 5, 6, 7, 23];
pub const X46_DEGREE: u32 = 46;
