//! Exact symbolic engine for the representation zeta functions of `GL_n` and
//! `GU_n` over finite fields and over principal ideal local rings of length 2.

pub mod assembler;
pub mod ennola;
pub mod polyq;
pub mod registry;
pub mod types;
pub mod zeta;

pub use assembler::{assemble, audit, centralizer_of, index_of, type_rows, zeta_at_level, Assembler, TypeRow};
pub use ennola::{check_duality, corollary_cormain_check, corollary_corp_fixture_check, sym_count_poly, DualityReport, EnnolaError};
pub use polyq::{PolyError, RatPoly, Sign};
pub use registry::{order_of, zeta_of, GroupSpec, LevelTwoHook, NoHook, RegistryError};
pub use types::{class_count, enumerate_types, necklace_count, Partition, Slot, TypeError, TypeSymbol};
pub use zeta::{ZetaError, ZetaSeries, PROBE_QS};
