//! The three deformation parameters, stored through their square roots so
//! that half-integer powers of `q`, `q1`, `q2` stay rational.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{format_rational, rpow, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParams {
    pub zeta: Rational,
    pub zeta1: Rational,
    pub zeta2: Rational,
}

fn admissible(name: &str, z: &Rational) -> Result<()> {
    if z.is_zero() || z.abs().is_one() {
        return Err(Error::InvalidParams(format!("{name} = {} is not admissible", format_rational(z))));
    }
    Ok(())
}

impl QParams {
    pub fn new(zeta: Rational, zeta1: Rational, zeta2: Rational) -> Result<Self> {
        admissible("zeta", &zeta)?;
        admissible("zeta1", &zeta1)?;
        admissible("zeta2", &zeta2)?;
        Ok(QParams { zeta, zeta1, zeta2 })
    }

    /// All three roots equal: `q1 = q2 = q`.
    pub fn single(zeta: Rational) -> Result<Self> {
        Self::new(zeta.clone(), zeta.clone(), zeta)
    }

    /// `ζ1 = r^{N2}`, `ζ2 = r^{N1}`, `ζ = r^{N1 N2}`, so `q1^{N1} = q = q2^{N2}`.
    pub fn bigraded_from_root(r: Rational, n1: u32, n2: u32) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidParams("N1 and N2 must be positive".into()));
        }
        let p = Self::new(rpow(&r, (n1 * n2) as i64), rpow(&r, n2 as i64), rpow(&r, n1 as i64))?;
        p.check_bigraded(n1, n2)?;
        Ok(p)
    }

    /// Rejects parameters violating `ζ1^{2N1} = ζ² = ζ2^{2N2}`.
    pub fn check_bigraded(&self, n1: u32, n2: u32) -> Result<()> {
        let q = &self.zeta * &self.zeta;
        if rpow(&self.zeta1, 2 * n1 as i64) != q || rpow(&self.zeta2, 2 * n2 as i64) != q {
            return Err(Error::InvalidParams(format!(
                "q1^{n1} = q = q2^{n2} fails for zeta = {}, zeta1 = {}, zeta2 = {}",
                format_rational(&self.zeta),
                format_rational(&self.zeta1),
                format_rational(&self.zeta2)
            )));
        }
        Ok(())
    }

    pub fn q(&self) -> Rational {
        &self.zeta * &self.zeta
    }

    pub fn q1(&self) -> Rational {
        &self.zeta1 * &self.zeta1
    }

    pub fn q2(&self) -> Rational {
        &self.zeta2 * &self.zeta2
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        vec![
            ("zeta".into(), format_rational(&self.zeta)),
            ("zeta1".into(), format_rational(&self.zeta1)),
            ("zeta2".into(), format_rational(&self.zeta2)),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `Q^{|λ|}`
    SchurSum,
    /// `Q^{|λ| + p(p+1)/2}`, the `Q^{L0}` eigenvalue.
    Fermionic,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn bigraded_relation() {
        let p = QParams::bigraded_from_root(rat(1, 2), 1, 2).unwrap();
        assert_eq!(p.zeta1, rat(1, 4));
        assert_eq!(p.zeta2, rat(1, 2));
        assert_eq!(p.q(), rat(1, 16));
        assert!(p.check_bigraded(1, 2).is_ok());
        let bad = QParams::new(rat(1, 4), rat(1, 3), rat(1, 2)).unwrap();
        assert!(bad.check_bigraded(1, 2).is_err());
        assert!(QParams::single(rat(0, 1)).is_err());
        assert!(QParams::single(rat(-1, 1)).is_err());
    }
}
