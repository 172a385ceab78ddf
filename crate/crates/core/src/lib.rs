//! Coherent lower previsions, conservative updating under unknown
//! incompleteness mechanisms, and credal-dominance classification over
//! Bayesian and credal networks.
//!
//! The building blocks are [`space::FiniteSpace`], [`space::Gamble`] and
//! [`credal_set::CredalSet`]. Conditioning lives in [`conditioning`] and
//! [`observation`]; network classification in [`bayesnet`], [`credalnet`]
//! and [`dominance`]. [`oracle`] holds brute-force reference versions of
//! the fast paths.
//!
//! ```
//! use credal::format::asia;
//!
//! let net = asia();
//! let s = net.structure();
//! let class = s.node("C").unwrap();
//! let evidence = s.evidence(&[("L", "l'"), ("S", "s'"), ("T", "t'")]).unwrap();
//! let report = net.classify(class, &evidence, 1 << 20).unwrap();
//! assert_eq!(report.undominated, vec!["c''"]);
//! ```

pub mod bayesnet;
pub mod coherence;
pub mod conditioning;
pub mod credal_set;
pub mod credalnet;
pub mod decision;
pub mod dominance;
pub mod error;
pub mod format;
pub mod graph;
pub mod lp;
pub mod network;
pub mod observation;
pub mod oracle;
pub mod space;

pub use bayesnet::BayesNet;
pub use credal_set::{CredalSet, Representation};
pub use credalnet::CredalNet;
pub use error::{Error, Result};
pub use space::{FiniteSpace, Gamble, MassFunction};
