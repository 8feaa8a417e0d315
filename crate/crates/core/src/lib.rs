//! Exact higher-genus Gromov-Witten and Gopakumar-Vafa invariants of the
//! Grassmannian and Pfaffian Calabi-Yau threefolds.

pub mod exact;
pub mod series;
pub mod picard_fuchs;
pub mod mirror;
pub mod gv;
pub mod anomaly;
pub mod harness;
