//! Line configurations in the projective plane: canonical coordinates, the
//! intersection lattice with its Möbius data, the Poincaré polynomial, the
//! Jacobian-ideal degree, and deletion/restriction triples.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::TriPoly;

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            g(b, a % b)
        }
    }
    g(g(a, b), c)
}

/// Reduce an integer triple to the canonical representative of its projective
/// class: primitive, first nonzero coordinate positive.
fn canonical_triple(mut t: [i64; 3]) -> Result<[i64; 3]> {
    if t == [0, 0, 0] {
        return Err(Error::ZeroLine);
    }
    let g = gcd3(t[0], t[1], t[2]);
    for x in t.iter_mut() {
        *x /= g;
    }
    if *t.iter().find(|&&x| x != 0).unwrap() < 0 {
        for x in t.iter_mut() {
            *x = -*x;
        }
    }
    Ok(t)
}

fn canonical_triple_i128(t: [i128; 3]) -> Result<[i64; 3]> {
    fn g(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            g(b, a % b)
        }
    }
    if t == [0, 0, 0] {
        return Err(Error::ZeroLine);
    }
    let d = g(g(t[0], t[1]), t[2]);
    let mut r = [t[0] / d, t[1] / d, t[2] / d];
    if *r.iter().find(|&&x| x != 0).unwrap() < 0 {
        for x in r.iter_mut() {
            *x = -*x;
        }
    }
    let small: Vec<i64> = r
        .iter()
        .map(|&x| i64::try_from(x))
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Inconsistency("intersection coordinates overflow i64".into()))?;
    Ok([small[0], small[1], small[2]])
}

/// A line `a x + b y + c z = 0`, stored in canonical primitive form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line([i64; 3]);

impl Line {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Line> {
        Ok(Line(canonical_triple([a, b, c])?))
    }

    pub fn coefficients(&self) -> [i64; 3] {
        self.0
    }

    /// The defining linear form.
    pub fn form(&self) -> TriPoly {
        TriPoly::linear(self.0[0], self.0[1], self.0[2])
    }

    pub fn contains(&self, p: &Point) -> bool {
        let q = p.coordinates();
        (self.0[0] as i128) * (q[0] as i128)
            + (self.0[1] as i128) * (q[1] as i128)
            + (self.0[2] as i128) * (q[2] as i128)
            == 0
    }

    /// Intersection point with another, non-proportional line.
    pub fn meet(&self, other: &Line) -> Result<Point> {
        let a = self.0;
        let b = other.0;
        let cross = [
            (a[1] as i128) * (b[2] as i128) - (a[2] as i128) * (b[1] as i128),
            (a[2] as i128) * (b[0] as i128) - (a[0] as i128) * (b[2] as i128),
            (a[0] as i128) * (b[1] as i128) - (a[1] as i128) * (b[0] as i128),
        ];
        Ok(Point(canonical_triple_i128(cross)?))
    }

    /// The dual point `(a:b:c)` of the line `ax+by+cz = 0`.
    pub fn dual_point(&self) -> Point {
        Point(self.0)
    }

    /// Two independent primitive integer points spanning the line, smallest
    /// height first with a lexicographic tie-break.
    pub fn spanning_points(&self) -> (Point, Point) {
        let l = self.0;
        let mut cands: Vec<[i64; 3]> = Vec::new();
        for e in 0..3 {
            let mut unit = [0i64; 3];
            unit[e] = 1;
            let cross = [
                l[1] * unit[2] - l[2] * unit[1],
                l[2] * unit[0] - l[0] * unit[2],
                l[0] * unit[1] - l[1] * unit[0],
            ];
            if cross != [0, 0, 0] {
                cands.push(canonical_triple(cross).unwrap());
            }
        }
        cands.sort_by_key(|p| (p.iter().map(|x| x.abs()).max().unwrap(), *p));
        cands.dedup();
        let p = cands[0];
        let r = *cands[1..]
            .iter()
            .find(|c| !proportional(p, **c))
            .expect("a line always has two independent points");
        (Point(p), Point(r))
    }
}

fn proportional(a: [i64; 3], b: [i64; 3]) -> bool {
    a[0] as i128 * b[1] as i128 == a[1] as i128 * b[0] as i128
        && a[0] as i128 * b[2] as i128 == a[2] as i128 * b[0] as i128
        && a[1] as i128 * b[2] as i128 == a[2] as i128 * b[1] as i128
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        let mut first = true;
        for (coef, var) in [(a, "x"), (b, "y"), (c, "z")] {
            if coef == 0 {
                continue;
            }
            if first {
                if coef < 0 {
                    write!(f, "-")?;
                }
            } else if coef < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if coef.abs() != 1 {
                write!(f, "{}", coef.abs())?;
            }
            write!(f, "{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// A point of the projective plane in canonical primitive form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point([i64; 3]);

impl Point {
    pub fn new(p0: i64, p1: i64, p2: i64) -> Result<Point> {
        Ok(Point(canonical_triple([p0, p1, p2])?))
    }

    pub fn coordinates(&self) -> [i64; 3] {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

/// A rank-two flat of the intersection lattice: a point, the lines through
/// it, and its Möbius value `mu = m - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: Point,
    pub incident: Vec<usize>,
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn mu(&self) -> usize {
        self.incident.len() - 1
    }
}

/// Coefficients of `pi(A,t) = (1+t)(1 + b1 t + b2 t^2)` together with the
/// integer factorization of the quadratic part when it exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoincareData {
    pub b1: i64,
    pub b2: i64,
    pub factor_roots: Option<(i64, i64)>,
}

/// Deletion/restriction data for a distinguished line.
#[derive(Debug, Clone)]
pub struct TripleData {
    pub deleted: Arrangement,
    pub pivot_index: usize,
    pub pivot: Line,
    /// Singular points of the full arrangement lying on the pivot, with
    /// their full-arrangement multiplicities.
    pub restriction: Vec<SingularPoint>,
}

impl TripleData {
    /// `|A''|`: the number of distinct points of the deleted arrangement on
    /// the pivot line. Multiplicities are ignored.
    pub fn restriction_count(&self) -> usize {
        self.restriction.len()
    }

    /// Multiset of multiplicities along the pivot, for diagnostics.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.restriction.iter().map(|p| p.multiplicity()).collect()
    }
}

/// An ordered configuration of distinct lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
}

impl Arrangement {
    pub fn new(lines: Vec<Line>) -> Result<Arrangement> {
        if lines.is_empty() {
            return Err(Error::TooFewLines { need: 1, have: 0 });
        }
        for (i, l) in lines.iter().enumerate() {
            if let Some(first) = lines[..i].iter().position(|m| m == l) {
                return Err(Error::DuplicateLine { index: i, first });
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn from_triples(triples: &[(i64, i64, i64)]) -> Result<Arrangement> {
        let lines = triples
            .iter()
            .map(|&(a, b, c)| Line::new(a, b, c))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(lines)
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> Result<&Line> {
        self.lines.get(index).ok_or(Error::LineIndex {
            index,
            count: self.lines.len(),
        })
    }

    pub fn contains_line(&self, l: &Line) -> bool {
        self.lines.contains(l)
    }

    /// An arrangement is essential when its lines do not share a common
    /// point, i.e. the coefficient matrix has full rank 3.
    pub fn is_essential(&self) -> bool {
        if self.lines.len() < 3 {
            return false;
        }
        let m = QMatrix::from_int_rows(
            3,
            &self
                .lines
                .iter()
                .map(|l| l.coefficients().to_vec())
                .collect::<Vec<_>>(),
        );
        m.rank() == 3
    }

    pub fn require_essential(&self) -> Result<()> {
        if self.is_essential() {
            Ok(())
        } else {
            Err(Error::NotEssential)
        }
    }

    /// All pairwise intersection points grouped into lattice flats, in
    /// canonical point order.
    pub fn singular_points(&self) -> Result<Vec<SingularPoint>> {
        let d = self.d();
        if d < 2 {
            return Err(Error::TooFewLines { need: 2, have: d });
        }
        let mut flats: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
        for i in 0..d {
            for j in i + 1..d {
                let p = self.lines[i].meet(&self.lines[j])?;
                let inc = flats.entry(p).or_default();
                for idx in [i, j] {
                    if !inc.contains(&idx) {
                        inc.push(idx);
                    }
                }
            }
        }
        let points: Vec<SingularPoint> = flats
            .into_iter()
            .map(|(point, incident)| SingularPoint { point, incident })
            .collect();
        // Lattice identity: sum of C(m,2) over flats = C(d,2).
        let pairs: usize = points
            .iter()
            .map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2)
            .sum();
        if pairs != d * (d - 1) / 2 {
            return Err(Error::Inconsistency(format!(
                "lattice pair count {pairs} != C({d},2)"
            )));
        }
        Ok(points)
    }

    /// Largest Möbius value over the rank-two flats.
    pub fn max_mu(&self) -> Result<usize> {
        Ok(self
            .singular_points()?
            .iter()
            .map(|p| p.mu())
            .max()
            .expect("d >= 2 gives at least one flat"))
    }

    /// `pi(A,t) = (1+t)(1 + (d-1)t + (sum mu - d + 1)t^2)`.
    pub fn poincare(&self) -> Result<PoincareData> {
        self.require_essential()?;
        let d = self.d() as i64;
        let mu_sum: i64 = self
            .singular_points()?
            .iter()
            .map(|p| p.mu() as i64)
            .sum();
        let b1 = d - 1;
        let b2 = mu_sum - d + 1;
        Ok(PoincareData {
            b1,
            b2,
            factor_roots: factor_quadratic(b1, b2),
        })
    }

    /// Degree of the Jacobian ideal: `sum mu^2` over the singular points.
    pub fn jacobian_degree(&self) -> Result<i64> {
        self.require_essential()?;
        Ok(self
            .singular_points()?
            .iter()
            .map(|p| (p.mu() * p.mu()) as i64)
            .sum())
    }

    /// Deletion/restriction triple with respect to the line at `index`.
    pub fn triple(&self, index: usize) -> Result<TripleData> {
        let d = self.d();
        if d < 3 {
            return Err(Error::TooFewLines { need: 3, have: d });
        }
        let pivot = *self.line(index)?;
        let deleted: Vec<Line> = self
            .lines
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, l)| *l)
            .collect();
        let deleted = Arrangement::new(deleted)?;
        let restriction: Vec<SingularPoint> = self
            .singular_points()?
            .into_iter()
            .filter(|p| pivot.contains(&p.point))
            .collect();
        // Each other line meets the pivot exactly once.
        let weight: usize = restriction.iter().map(|p| p.multiplicity() - 1).sum();
        if weight != d - 1 {
            return Err(Error::Inconsistency(format!(
                "restriction weight {weight} != d-1 = {}",
                d - 1
            )));
        }
        Ok(TripleData {
            deleted,
            pivot_index: index,
            pivot,
            restriction,
        })
    }

    /// Number of distinct points where the other lines meet `l`; works both
    /// for arrangement members and for external lines.
    pub fn restriction_count(&self, l: &Line) -> Result<usize> {
        let mut points: Vec<Point> = Vec::new();
        for m in &self.lines {
            if m == l {
                continue;
            }
            let p = m.meet(l)?;
            if !points.contains(&p) {
                points.push(p);
            }
        }
        Ok(points.len())
    }
}

/// Integer roots `(a, b1-a)` of `1 + b1 t + b2 t^2 = (1+at)(1+(b1-a)t)`,
/// with `a <= b1-a`, when they exist over the nonnegative integers.
fn factor_quadratic(b1: i64, b2: i64) -> Option<(i64, i64)> {
    let disc = b1 * b1 - 4 * b2;
    if disc < 0 {
        return None;
    }
    let s = (disc as f64).sqrt() as i64;
    let root = [s - 1, s, s + 1].into_iter().find(|r| r * r == disc)?;
    if (b1 - root) % 2 != 0 {
        return None;
    }
    let a = (b1 - root) / 2;
    if a < 0 {
        return None;
    }
    Some((a, b1 - a))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn arr(triples: &[(i64, i64, i64)]) -> Arrangement {
        Arrangement::from_triples(triples).unwrap()
    }

    /// `{x, y, z, y+z, x+z}`: the base of the nested example family.
    pub(crate) fn arrangement_i() -> Arrangement {
        arr(&[(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1)])
    }

    pub(crate) fn non_fano() -> Arrangement {
        arr(&[
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 0),
            (1, 0, 1),
            (0, 1, 1),
            (1, 1, 1),
        ])
    }

    #[test]
    fn line_canonicalization() {
        assert_eq!(Line::new(0, 2, 2).unwrap().coefficients(), [0, 1, 1]);
        assert_eq!(Line::new(-1, 1, 0).unwrap().coefficients(), [1, -1, 0]);
        assert_eq!(Line::new(3, 0, 0).unwrap().coefficients(), [1, 0, 0]);
        assert!(matches!(Line::new(0, 0, 0), Err(Error::ZeroLine)));
    }

    #[test]
    fn duplicate_detection() {
        let err = Arrangement::from_triples(&[(1, 0, 0), (2, 0, 0)]);
        assert!(matches!(
            err,
            Err(Error::DuplicateLine { index: 1, first: 0 })
        ));
    }

    #[test]
    fn triangle_lattice() {
        let a = arr(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)]);
        let pts = a.singular_points().unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.multiplicity() == 2));
        assert_eq!(a.max_mu().unwrap(), 1);
        assert_eq!(a.jacobian_degree().unwrap(), 3);
    }

    #[test]
    fn arrangement_i_lattice() {
        let a = arrangement_i();
        let pts = a.singular_points().unwrap();
        assert_eq!(pts.len(), 6);
        let mut mus: Vec<usize> = pts.iter().map(|p| p.mu()).collect();
        mus.sort_unstable();
        assert_eq!(mus, vec![1, 1, 1, 1, 2, 2]);
        // The two triple points.
        let triple_pts: Vec<Point> = pts
            .iter()
            .filter(|p| p.multiplicity() == 3)
            .map(|p| p.point)
            .collect();
        assert_eq!(
            triple_pts,
            vec![Point::new(0, 1, 0).unwrap(), Point::new(1, 0, 0).unwrap()]
        );
        assert_eq!(a.jacobian_degree().unwrap(), 12);
        let pi = a.poincare().unwrap();
        assert_eq!((pi.b1, pi.b2), (4, 4));
        assert_eq!(pi.factor_roots, Some((2, 2)));
    }

    #[test]
    fn non_fano_lattice() {
        let a = non_fano();
        let pts = a.singular_points().unwrap();
        let triples = pts.iter().filter(|p| p.multiplicity() == 3).count();
        let doubles = pts.iter().filter(|p| p.multiplicity() == 2).count();
        assert_eq!((triples, doubles), (6, 3));
        assert_eq!(a.max_mu().unwrap(), 2);
        let pi = a.poincare().unwrap();
        assert_eq!((pi.b1, pi.b2), (6, 9));
        assert_eq!(pi.factor_roots, Some((3, 3)));
        assert_eq!(a.jacobian_degree().unwrap(), 27);
    }

    #[test]
    fn five_through_point_plus_two() {
        // Five lines through (0:0:1) plus z and x+3y+z.
        let a = arr(&[
            (1, 0, 0),
            (0, 1, 0),
            (1, 1, 0),
            (1, -1, 0),
            (1, 2, 0),
            (0, 0, 1),
            (1, 3, 1),
        ]);
        assert_eq!(a.max_mu().unwrap(), 4);
        let pi = a.poincare().unwrap();
        assert_eq!((pi.b1, pi.b2), (6, 9));
        assert_eq!(pi.factor_roots, Some((3, 3)));
        assert_eq!(a.jacobian_degree().unwrap(), 27);
    }

    #[test]
    fn near_pencil_jacobian_degree_is_maximal() {
        // d-1 = 4 lines through (0:0:1) plus one transversal line.
        let a = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0), (0, 0, 1)]);
        let d = a.d() as i64;
        assert_eq!(a.jacobian_degree().unwrap(), d * d - 3 * d + 3);
    }

    #[test]
    fn pencil_is_not_essential() {
        let a = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 0)]);
        assert!(!a.is_essential());
        assert!(matches!(a.poincare(), Err(Error::NotEssential)));
    }

    #[test]
    fn non_fano_triple_restriction() {
        let a = non_fano();
        // H = x+y+z is the last line.
        let t = a.triple(6).unwrap();
        assert_eq!(t.restriction_count(), 3);
        let pts: Vec<Point> = t.restriction.iter().map(|p| p.point).collect();
        assert_eq!(
            pts,
            vec![
                Point::new(0, 1, -1).unwrap(),
                Point::new(1, -1, 0).unwrap(),
                Point::new(1, 0, -1).unwrap(),
            ]
        );
        assert!(t.restriction.iter().all(|p| p.multiplicity() == 3));
    }

    #[test]
    fn lattice_identity_random() {
        let mut state = 0xabcdef12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        let mut built = 0;
        while built < 20 {
            let mut lines = Vec::new();
            while lines.len() < 5 {
                if let Ok(l) = Line::new(next(), next(), next()) {
                    if !lines.contains(&l) {
                        lines.push(l);
                    }
                }
            }
            let a = Arrangement::new(lines).unwrap();
            let pts = a.singular_points().unwrap();
            let pairs: usize = pts
                .iter()
                .map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2)
                .sum();
            assert_eq!(pairs, 10);
            built += 1;
        }
    }
}
