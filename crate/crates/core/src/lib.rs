//! Low-dimensional homology of finitely presented groups.
//!
//! * [`abelian`]: `H₁(G)`, `dim H₁(G; 𝔽_p)`, `dim Tor(H₁(G), 𝔽_p)` and `p`-primary ranks.
//! * [`hopf`]: an upper bound on `dim H₂(G; 𝔽_p)` via Hopf's formula, exact
//!   when every rewriting system involved is confluent.
//!
//! Supporting layers: free-group [`word`]s, [`presentation`]s and their text
//! format, Smith normal form in [`smith`], and Knuth–Bendix completion in [`kb`].

pub mod abelian;
pub mod fixtures;
pub mod hopf;
pub mod kb;
pub mod presentation;
pub mod smith;
pub mod tietze;
pub mod word;

pub use abelian::PrimeField;
pub use kb::{CompletionStatus, KbConfig, RewritingSystem};
pub use presentation::{Presentation, RelatorSelection};
pub use smith::{IntMatrix, SnfResult};
pub use word::{GeneratorId, Letter, Word};
