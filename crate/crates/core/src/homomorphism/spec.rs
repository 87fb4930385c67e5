use std::fmt;

use num_traits::{One, Signed, Zero};

use super::AffineMap;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point};
use crate::linalg;
use crate::scalar::Scalar;

/// Which of the five canonical shapes a homomorphism has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    Trivial,
    I,
    II,
    III,
    IV,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Trivial => "trivial",
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" => CaseTag::Trivial,
            "i" => CaseTag::I,
            "ii" => CaseTag::II,
            "iii" => CaseTag::III,
            "iv" => CaseTag::IV,
            _ => return Err(Error::InvalidSpec(format!("unknown case {s:?}"))),
        })
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A lattice homomorphism `C(E^c) → C(E^d)` in canonical form.
///
/// Variants can be built directly; [`HomomorphismSpec::validate`] checks the
/// side conditions, and the checked constructors call it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomomorphismSpec {
    /// Every body, `∅` included, goes to `fixed_body`.
    Trivial { c: usize, fixed_body: ConvexBody },
    /// `x ↦ {φ(x)}`.
    CaseI { phi: AffineMap },
    /// `∅ ↦ {o}`, `x ↦ [φ(x), o]`.
    CaseII { phi: AffineMap, o: Point },
    /// `x ↦ [φ(x), φ(x) + v]`.
    CaseIII { phi: AffineMap, v: Vec<Scalar> },
    /// `x ↦ [φ(x), γ φ(x) + (1 - γ) o]`.
    CaseIV { phi: AffineMap, o: Point, gamma: Scalar },
}

impl HomomorphismSpec {
    pub fn case_i(phi: AffineMap) -> Result<Self> {
        let s = Self::CaseI { phi };
        s.validate()?;
        Ok(s)
    }

    pub fn case_ii(phi: AffineMap, o: Point) -> Result<Self> {
        let s = Self::CaseII { phi, o };
        s.validate()?;
        Ok(s)
    }

    pub fn case_iii(phi: AffineMap, v: Vec<Scalar>) -> Result<Self> {
        let s = Self::CaseIII { phi, v };
        s.validate()?;
        Ok(s)
    }

    pub fn case_iv(phi: AffineMap, o: Point, gamma: Scalar) -> Result<Self> {
        let s = Self::CaseIV { phi, o, gamma };
        s.validate()?;
        Ok(s)
    }

    pub fn trivial(c: usize, fixed_body: ConvexBody) -> Self {
        Self::Trivial { c, fixed_body }
    }

    pub fn tag(&self) -> CaseTag {
        match self {
            Self::Trivial { .. } => CaseTag::Trivial,
            Self::CaseI { .. } => CaseTag::I,
            Self::CaseII { .. } => CaseTag::II,
            Self::CaseIII { .. } => CaseTag::III,
            Self::CaseIV { .. } => CaseTag::IV,
        }
    }

    pub fn phi(&self) -> Option<&AffineMap> {
        match self {
            Self::Trivial { .. } => None,
            Self::CaseI { phi }
            | Self::CaseII { phi, .. }
            | Self::CaseIII { phi, .. }
            | Self::CaseIV { phi, .. } => Some(phi),
        }
    }

    pub fn source_dim(&self) -> usize {
        match self {
            Self::Trivial { c, .. } => *c,
            _ => self.phi().unwrap().source_dim(),
        }
    }

    pub fn target_dim(&self) -> usize {
        match self {
            Self::Trivial { fixed_body, .. } => fixed_body.ambient_dim(),
            _ => self.phi().unwrap().target_dim(),
        }
    }

    /// Checks the side conditions of each case.
    pub fn validate(&self) -> Result<()> {
        self.check(3)
    }

    /// Like [`validate`](Self::validate) but lets cases ii to iv start from
    /// the plane, where the classification is open.
    pub fn validate_planar(&self) -> Result<()> {
        self.check(2)
    }

    fn check(&self, min_c: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        let raising = |phi: &AffineMap| -> Result<()> {
            let (c, d) = (phi.source_dim(), phi.target_dim());
            if d != c + 1 {
                return bad(format!("this case needs d = c + 1, got c = {c}, d = {d}"));
            }
            if c < min_c {
                return bad(format!("this case needs c >= {min_c}, got c = {c}"));
            }
            Ok(())
        };
        let off_image = |phi: &AffineMap, o: &Point| -> Result<()> {
            if o.dim() != phi.target_dim() {
                return Err(Error::DimensionMismatch {
                    expected: phi.target_dim(),
                    found: o.dim(),
                });
            }
            if phi.image().contains_point(o) {
                return bad("o lies on the image hyperplane of phi".into());
            }
            Ok(())
        };
        match self {
            Self::Trivial { c, .. } => {
                if *c == 0 {
                    return bad("source dimension must be positive".into());
                }
            }
            Self::CaseI { phi } => {
                let (c, d) = (phi.source_dim(), phi.target_dim());
                if d != c && d != c + 1 {
                    return bad(format!("case i needs d in {{c, c + 1}}, got c = {c}, d = {d}"));
                }
            }
            Self::CaseII { phi, o } => {
                raising(phi)?;
                off_image(phi, o)?;
            }
            Self::CaseIII { phi, v } => {
                raising(phi)?;
                if v.len() != phi.target_dim() {
                    return Err(Error::DimensionMismatch {
                        expected: phi.target_dim(),
                        found: v.len(),
                    });
                }
                if linalg::is_zero_vec(v) {
                    return bad("v must be nonzero".into());
                }
                if phi.is_parallel_to_image(v) {
                    return bad("v is parallel to the image hyperplane".into());
                }
            }
            Self::CaseIV { phi, o, gamma } => {
                raising(phi)?;
                off_image(phi, o)?;
                if !gamma.is_positive() || *gamma >= Scalar::one() {
                    return bad("gamma must lie strictly between 0 and 1".into());
                }
            }
        }
        Ok(())
    }

    /// The representative used for equality of maps. Only case iii has a
    /// choice: `(φ, v)` and `(φ + v, -v)` describe the same map, and we keep
    /// the one whose `v` has a positive first nonzero coordinate.
    pub fn canonical_form(&self) -> Self {
        match self {
            Self::CaseIII { phi, v } => {
                let first = v.iter().find(|x| !x.is_zero());
                if first.is_some_and(|x| x.is_negative()) {
                    Self::CaseIII {
                        phi: phi.shifted(v),
                        v: v.iter().map(|x| -x).collect(),
                    }
                } else {
                    self.clone()
                }
            }
            _ => self.clone(),
        }
    }

    /// `Φ(∅)`.
    pub fn empty_image(&self) -> ConvexBody {
        match self {
            Self::Trivial { fixed_body, .. } => fixed_body.clone(),
            Self::CaseII { o, .. } => ConvexBody::point(o.clone()),
            _ => ConvexBody::empty(self.target_dim()),
        }
    }

    /// Endpoints of `Φ({x})`, possibly equal.
    fn endpoints(&self, x: &[Scalar]) -> Result<(Point, Point)> {
        let phi = self.phi().expect("non-trivial");
        let y = phi.apply(x)?;
        let other = match self {
            Self::CaseI { .. } => y.clone(),
            Self::CaseII { o, .. } => o.clone(),
            Self::CaseIII { v, .. } => y.translate(v),
            Self::CaseIV { o, gamma, .. } => Point::lerp(o, &y, gamma),
            Self::Trivial { .. } => unreachable!(),
        };
        Ok((y, other))
    }

    /// `Φ({x})`.
    pub fn apply_point(&self, x: &[Scalar]) -> Result<ConvexBody> {
        if x.len() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: x.len(),
            });
        }
        if let Self::Trivial { fixed_body, .. } = self {
            return Ok(fixed_body.clone());
        }
        let (a, b) = self.endpoints(x)?;
        ConvexBody::hull(self.target_dim(), vec![a, b])
    }

    /// `Φ(C)`: the join of the images of the vertices of `C`, or `Φ(∅)`.
    pub fn apply_body(&self, body: &ConvexBody) -> Result<ConvexBody> {
        if body.ambient_dim() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: body.ambient_dim(),
            });
        }
        if body.is_empty() || matches!(self, Self::Trivial { .. }) {
            return Ok(self.empty_image());
        }
        let mut pts = Vec::with_capacity(2 * body.vertices().len());
        for v in body.vertices() {
            let (a, b) = self.endpoints(v)?;
            pts.push(a);
            pts.push(b);
        }
        ConvexBody::hull(self.target_dim(), pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn case_iv_point_image() {
        let s = HomomorphismSpec::case_iv(AffineMap::embed(3, int(1)), Point::origin(4), ratio(1, 2))
            .unwrap();
        let img = s.apply_point(&Point::from_ints(&[2, 0, 0])).unwrap();
        let expect = ConvexBody::from_points(vec![
            Point::from_ints(&[2, 0, 0, 1]),
            Point::new(vec![int(1), int(0), int(0), ratio(1, 2)]),
        ])
        .unwrap();
        assert_eq!(img, expect);
    }

    #[test]
    fn case_ii_plumbing_in_the_plane() {
        // c = 2 is outside the validated range, so build the variant directly
        let s = HomomorphismSpec::CaseII {
            phi: AffineMap::embed(2, int(1)),
            o: Point::origin(3),
        };
        assert!(s.validate().is_err());
        let img = s.apply_point(&Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(
            img,
            ConvexBody::from_points(vec![Point::from_ints(&[1, 1, 1]), Point::origin(3)]).unwrap()
        );
        assert_eq!(
            s.apply_body(&ConvexBody::empty(2)).unwrap(),
            ConvexBody::point(Point::origin(3))
        );
    }

    #[test]
    fn case_i_identity() {
        let s = HomomorphismSpec::case_i(AffineMap::identity(3)).unwrap();
        let x = Point::from_ints(&[1, -2, 3]);
        assert_eq!(s.apply_point(&x).unwrap(), ConvexBody::point(x));
    }

    #[test]
    fn case_iii_box() {
        let v = vec![int(0), int(0), int(0), int(1)];
        let s = HomomorphismSpec::case_iii(AffineMap::embed(3, int(0)), v).unwrap();
        let c = ConvexBody::from_points(vec![Point::from_ints(&[0, 0, 0]), Point::from_ints(&[1, 0, 0])])
            .unwrap();
        let expect = ConvexBody::from_points(
            [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [1, 0, 0, 1]]
                .iter()
                .map(|p| Point::from_ints(p))
                .collect(),
        )
        .unwrap();
        assert_eq!(s.apply_body(&c).unwrap(), expect);
    }

    #[test]
    fn validation() {
        let phi = AffineMap::embed(3, int(1));
        assert!(HomomorphismSpec::case_iv(phi.clone(), Point::origin(4), int(1)).is_err());
        assert!(HomomorphismSpec::case_ii(phi.clone(), Point::from_ints(&[0, 0, 0, 1])).is_err());
        assert!(
            HomomorphismSpec::case_iii(phi.clone(), vec![int(1), int(0), int(0), int(0)]).is_err()
        );
        assert!(HomomorphismSpec::case_i(phi).is_ok());
    }

    #[test]
    fn case_iii_orientation() {
        let phi = AffineMap::embed(3, int(0));
        let s = HomomorphismSpec::case_iii(phi, vec![int(0), int(0), int(0), int(-2)]).unwrap();
        let canon = s.canonical_form();
        let x = Point::from_ints(&[1, 2, 3]);
        assert_eq!(s.apply_point(&x).unwrap(), canon.apply_point(&x).unwrap());
        match canon {
            HomomorphismSpec::CaseIII { v, phi } => {
                assert_eq!(v[3], int(2));
                assert_eq!(phi.offset()[3], int(-2));
            }
            _ => unreachable!(),
        }
    }
}
