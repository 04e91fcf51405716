//! The four reference presets: one per built-in function, each with the
//! parameter quadruple the accuracy figures are quoted for.

use std::f64::consts::PI;

use crate::params::ParamSet;
use crate::sampling::{BuiltinFunction, BuiltinKind};

/// A built-in function paired with its reference parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Preset {
    pub id: u8,
    pub function: BuiltinFunction,
    pub params: ParamSet,
}

/// Default evaluation grid: 1000 points over `[-2 pi, 2 pi]`.
pub const DEFAULT_NU_MIN: f64 = -2.0 * PI;
pub const DEFAULT_NU_MAX: f64 = 2.0 * PI;
pub const DEFAULT_POINTS: usize = 1000;

/// Looks up preset 0..=3. The rectangular pair runs 32 terms at step 0.04;
/// the Gaussian pair runs 16 terms at step 0.119.
pub fn preset(id: u8) -> Option<Preset> {
    let (kind, terms, half_count, step, sigma) = match id {
        0 => (BuiltinKind::RectSmooth, 32, 28, 0.04, 2.7),
        1 => (BuiltinKind::TRectSmooth, 32, 28, 0.04, 3.0),
        2 => (BuiltinKind::Gauss, 16, 23, 0.119, 6.9),
        3 => (BuiltinKind::TGauss, 16, 23, 0.119, 5.9),
        _ => return None,
    };
    Some(Preset {
        id,
        function: BuiltinFunction::new(kind),
        params: ParamSet::new(terms, half_count, step, sigma).expect("presets are valid"),
    })
}

/// All four presets in order.
pub fn all_presets() -> [Preset; 4] {
    [0, 1, 2, 3].map(|id| preset(id).expect("ids 0..=3 exist"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_table() {
        let p = preset(0).unwrap();
        assert_eq!(p.function.kind(), BuiltinKind::RectSmooth);
        assert_eq!(p.params.terms(), 32);
        assert_eq!(p.params.sigma(), 2.7);
        let p = preset(3).unwrap();
        assert_eq!(p.function.kind(), BuiltinKind::TGauss);
        assert_eq!(p.params.step(), 0.119);
        assert!(preset(4).is_none());
    }
}
