//! Ring contexts: a regular graded polynomial ring Q, or a hypersurface
//! R = Q/(f) with f homogeneous of degree at least two.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

pub const DEFAULT_DEGREE_CAP: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingRole {
    Regular,
    Hypersurface,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    poly: PolyRing,
    hypersurface: Option<Polynomial>,
    degree_cap: u32,
}

impl RingContext {
    pub fn regular(poly: PolyRing) -> Arc<Self> {
        Arc::new(RingContext {
            poly,
            hypersurface: None,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    /// Q/(f). Rejects inhomogeneous f and deg f < 2.
    pub fn hypersurface(poly: PolyRing, f: Polynomial) -> Result<Arc<Self>> {
        if f.nvars() != poly.nvars() {
            return Err(Error::VariableCount(f.nvars(), poly.nvars()));
        }
        let d = match f.homogeneous_degree() {
            Some(d) => d,
            None if f.is_zero() => return Err(Error::HypersurfaceDegree(0)),
            None => return Err(Error::InhomogeneousHypersurface),
        };
        if d < 2 {
            return Err(Error::HypersurfaceDegree(d));
        }
        // monic, so the canonical form does not depend on how f was written
        let lc = f.leading_term().map(|t| t.1).unwrap_or(1);
        let f = poly.scale(&f, poly.field().inv(lc));
        Ok(Arc::new(RingContext {
            poly,
            hypersurface: Some(f),
            degree_cap: DEFAULT_DEGREE_CAP,
        }))
    }

    pub fn with_degree_cap(&self, cap: u32) -> Arc<Self> {
        Arc::new(RingContext {
            degree_cap: cap,
            ..self.clone()
        })
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn characteristic(&self) -> u32 {
        self.poly.field().characteristic()
    }

    pub fn hypersurface_equation(&self) -> Option<&Polynomial> {
        self.hypersurface.as_ref()
    }

    pub fn hypersurface_degree(&self) -> Option<u32> {
        self.hypersurface.as_ref().and_then(|f| f.homogeneous_degree())
    }

    pub fn role(&self) -> RingRole {
        if self.hypersurface.is_some() {
            RingRole::Hypersurface
        } else {
            RingRole::Regular
        }
    }

    pub fn is_hypersurface(&self) -> bool {
        self.hypersurface.is_some()
    }

    /// Krull dimension (which equals the depth).
    pub fn dim(&self) -> usize {
        self.nvars() - usize::from(self.is_hypersurface())
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// The ambient regular ring Q (self when already regular).
    pub fn ambient(&self) -> Arc<RingContext> {
        Arc::new(RingContext {
            poly: self.poly.clone(),
            hypersurface: None,
            degree_cap: self.degree_cap,
        })
    }

    /// Canonical representative modulo f.
    pub fn reduce(&self, a: &Polynomial) -> Polynomial {
        match &self.hypersurface {
            Some(f) => self.poly.reduce_mod(a, f),
            None => a.clone(),
        }
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&self.poly.mul_unchecked(a, b))
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.poly.add_unchecked(a, b)
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.poly.parse(src)?))
    }

    pub fn render(&self, a: &Polynomial) -> String {
        self.poly.render(a)
    }

    /// Same ring, ignoring the degree cap.
    pub fn same_ring(&self, other: &RingContext) -> bool {
        self.poly == other.poly && self.hypersurface == other.hypersurface
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}]",
            self.characteristic(),
            self.poly.var_names().join(",")
        )?;
        if let Some(h) = &self.hypersurface {
            write!(f, "/({})", self.poly.render(h))?;
        }
        Ok(())
    }
}

/// Builds a ring from a prime, variable names and an optional hypersurface
/// equation in textual form.
pub fn make_ring<S: AsRef<str>>(p: u64, vars: &[S], f: Option<&str>) -> Result<Arc<RingContext>> {
    let poly = PolyRing::new(p, vars, MonomialOrder::DegRevLex)?;
    match f {
        None => Ok(RingContext::regular(poly)),
        Some(src) => {
            let f = poly.parse(src)?;
            RingContext::hypersurface(poly, f)
        }
    }
}
