//! Exact arithmetic for baskets of terminal quotient singularities on
//! threefolds, formal Riemann–Roch, canonical unpacking sequences and an
//! exhaustive search over formal baskets with small plurigenera.
//!
//! ```
//! use pluribasket::{Basket, FormalBasket, Rational};
//!
//! let b: Basket = "{5x(1,2),(3,7),3x(2,5),3x(1,3),(3,11)}".parse().unwrap();
//! let fb = FormalBasket::new(b, 2, 0);
//! assert_eq!(fb.k3(), Rational::new(3, 770));
//! assert_eq!(fb.plurigenus(24).unwrap(), 8);
//! ```

pub mod basket;
pub mod canonical;
pub mod enumerate;
pub mod error;
pub mod farey;
pub mod formal;
pub mod rational;
pub mod wps;

pub use basket::{Basket, Pair, PrimePacking};
pub use canonical::{epsilon, initial_basket, sequence, step_basket, CanonicalSequence};
pub use enumerate::{
    enumerate_candidates, verify_p12, verify_p24, CandidateRecord, Constraints, SearchReport,
};
pub use error::{Error, Result};
pub use farey::{farey_level, FareyLevel, Fraction};
pub use formal::ladder::{assemble_ladder, inequality_314, rr_invert, InversionLadder, Tail};
pub use formal::{ChiVector, FormalBasket};
pub use rational::Rational;
pub use wps::{wps_volume, WeightedHypersurface};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }
    chapter!(Overview, "overview.md");
    chapter!(Baskets, "baskets.md");
    chapter!(Farey, "farey.md");
    chapter!(Canonical, "canonical.md");
    chapter!(Formal, "formal.md");
    chapter!(Ladder, "ladder.md");
    chapter!(Search, "search.md");
    chapter!(Wps, "wps.md");
    chapter!(Cli, "cli.md");
}
