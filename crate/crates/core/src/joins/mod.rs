//! Joins `H ∨ J` of a finite hypergroup `H` with a discrete hypergroup `J`.

mod dual;
mod table;
mod transfer;
mod verify;

pub use dual::join_dual_enumerate;
pub use table::{extend_character, join, ExtendedCharacter, JoinIndex, JoinTable};
pub use transfer::{transfer_check, TransferReport};
pub use verify::{haar_invariance, verify_join_axioms, JoinReport};
