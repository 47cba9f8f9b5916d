//! Nodal covers obtained by gluing a copy of the base line to a cover
//! along chosen fiber points, and towers of such gluings.

use rand::Rng;

use super::algebra::{CoverAlgebra, Provenance};
use super::CoverError;
use crate::arith::{Field, Poly, RationalFunction, Scalar};
use crate::polymat::{
    constrained_kernel_basis, unimodular_completion, Constraint, LatticeSolver, PolyMatrix,
    RatMatrix,
};
use crate::rng::general_scalar;

/// A point `y` of the base and a fiber point over it, given by the values
/// of the basis elements `e_0, ..., e_{r-1}` there.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchPoint {
    pub y: Scalar,
    pub sheet: Vec<Scalar>,
}

pub type PinchSpec = Vec<PinchPoint>;

/// A pinched algebra with its basis inside `A + k[x]`.
#[derive(Clone, Debug)]
pub struct Pinched {
    pub algebra: CoverAlgebra,
    /// Rows are the new basis elements in coordinates `(e_0, ..., e_{r-1}, eps)`.
    pub basis: PolyMatrix,
}

fn validate(base: &CoverAlgebra, spec: &[PinchPoint]) -> Result<(), CoverError> {
    for (i, pt) in spec.iter().enumerate() {
        if spec[..i].iter().any(|q| q.y == pt.y) {
            return Err(CoverError::RepeatedPinchPoint);
        }
        if !base.is_fiber_point(&pt.y, &pt.sheet) {
            return Err(CoverError::NotAFiberPoint);
        }
        if !base.is_etale_at(&pt.y) {
            return Err(CoverError::RamifiedPinchPoint);
        }
    }
    Ok(())
}

/// The subalgebra of `A + k[x]` of pairs `(v, w)` with `v(z_i) = w(y_i)`.
pub fn pinch(base: &CoverAlgebra, spec: &[PinchPoint]) -> Result<CoverAlgebra, CoverError> {
    Ok(pinch_with_basis(base, spec)?.algebra)
}

pub fn pinch_with_basis(base: &CoverAlgebra, spec: &[PinchPoint]) -> Result<Pinched, CoverError> {
    validate(base, spec)?;
    let r = base.degree();
    let n = r + 1;
    let field = base.field();
    field.check_degree(n)?;
    let constraints: Vec<Constraint> = spec
        .iter()
        .map(|pt| {
            let mut f = pt.sheet.clone();
            f.push(-Scalar::one());
            Constraint::new(pt.y.clone(), f)
        })
        .collect();
    let kernel = constrained_kernel_basis(n, &constraints);
    let mut unit = vec![Poly::zero(); n];
    unit[0] = Poly::one();
    unit[r] = Poly::one();
    let unit_rf: Vec<RationalFunction> = unit.iter().cloned().map(RationalFunction::from).collect();
    let coords = LatticeSolver::new(&kernel.basis)
        .and_then(|s| s.solve(&unit_rf))
        .map_err(|_| CoverError::Invalid("unit is not in the pinched lattice".into()))?;
    let u = unimodular_completion(&coords).ok_or_else(|| {
        CoverError::Invalid("unit is not primitive in the pinched lattice".into())
    })?;
    let basis = &u.transpose() * &kernel.basis;
    debug_assert_eq!(basis.row(0), unit);
    let solver = LatticeSolver::new(&basis)
        .map_err(|_| CoverError::Invalid("singular pinched basis".into()))?;

    let rows = basis.rows_vec();
    let ambient_mult = |a: &[Poly], b: &[Poly]| -> Vec<RationalFunction> {
        let mut out = base.multiply(&a[..r], &b[..r]);
        out.push(&a[r] * &b[r]);
        out.into_iter().map(RationalFunction::from).collect()
    };
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let c = solver
                .solve(&ambient_mult(&rows[i], &rows[j]))
                .map_err(|_| CoverError::Invalid("pinched lattice is not closed".into()))?;
            mult[i][j] = c.clone();
            mult[j][i] = c;
        }
    }

    // basis at infinity: 1, f_1, ..., f_{r-1}, eps
    let t = base.infinity();
    let mut inf_cols = Vec::with_capacity(n);
    let mut one = vec![RationalFunction::zero(); n];
    one[0] = RationalFunction::one();
    one[r] = RationalFunction::one();
    inf_cols.push(one);
    for j in 1..r {
        let mut col = t.col(j);
        col.push(RationalFunction::zero());
        inf_cols.push(col);
    }
    let mut eps = vec![RationalFunction::zero(); n];
    eps[r] = RationalFunction::one();
    inf_cols.push(eps);
    let coords: Vec<Vec<RationalFunction>> = inf_cols
        .iter()
        .map(|c| solver.coordinates(c).expect("dimensions match"))
        .collect();
    let infinity = RatMatrix::from_cols(coords);
    let algebra = CoverAlgebra::new(field, mult, infinity, Provenance::Pinched)?;
    Ok(Pinched { algebra, basis })
}

/// A node of a tower: the new line `new` meets component `on` over `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub y: Scalar,
    pub on: usize,
    pub new: usize,
}

/// A cover built by successive gluings of lines, kept in the coordinates
/// of its normalization: every component is a copy of the base, so the
/// algebra is the ring of tuples in `k[x]^d` agreeing at the nodes.
#[derive(Clone, Debug)]
pub struct Tower {
    pub algebra: CoverAlgebra,
    /// `components[c][k]`: value of basis element `k` on component `c`.
    pub components: Vec<Vec<Poly>>,
    pub nodes: Vec<Node>,
    pub steps: Vec<TowerStep>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerStep {
    pub gluing_degree: usize,
    pub points: Vec<Scalar>,
    pub degree_before: i64,
    pub degree_after: i64,
}

/// Triangular basis of the ring of tuples agreeing at the nodes: `g_k`
/// vanishes on components before `k`, equals the product of `x - y` over
/// the nodes of `k` on component `k`, and interpolates on later ones.
fn node_basis(d: usize, nodes: &[Node]) -> (Vec<Vec<Poly>>, Vec<Poly>) {
    let mut leads = vec![Poly::one(); d];
    for n in nodes {
        leads[n.new] = &leads[n.new] * &Poly::linear_root(&n.y);
    }
    // g[k][c]
    let mut g = vec![vec![Poly::zero(); d]; d];
    g[0] = vec![Poly::one(); d];
    for k in 1..d {
        g[k][k] = leads[k].clone();
        for c in k + 1..d {
            let (pts, vals): (Vec<Scalar>, Vec<Scalar>) = nodes
                .iter()
                .filter(|n| n.new == c)
                .map(|n| (n.y.clone(), g[k][n.on].eval(&n.y)))
                .unzip();
            g[k][c] = Poly::interpolate(&pts, &vals);
        }
    }
    (g, leads)
}

/// Coordinates of a tuple in the triangular basis, over `k(x)`.
fn node_coordinates(
    g: &[Vec<Poly>],
    leads: &[Poly],
    w: &[RationalFunction],
) -> Vec<RationalFunction> {
    let d = g.len();
    let mut rest = w.to_vec();
    let mut out = vec![RationalFunction::zero(); d];
    for k in 0..d {
        let c = &rest[k] * &RationalFunction::new(Poly::one(), leads[k].clone());
        for (c2, r) in rest.iter_mut().enumerate().skip(k) {
            if !g[k][c2].is_zero() {
                *r = &*r - &(&c * &RationalFunction::from(g[k][c2].clone()));
            }
        }
        out[k] = c;
    }
    out
}

fn node_algebra(
    d: usize,
    nodes: &[Node],
    field: Field,
) -> Result<(CoverAlgebra, Vec<Vec<Poly>>), CoverError> {
    let (g, leads) = node_basis(d, nodes);
    let to_rf = |v: Vec<Poly>| -> Vec<RationalFunction> {
        v.into_iter().map(RationalFunction::from).collect()
    };
    let mut mult = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in i..d {
            let prod: Vec<Poly> = (0..d).map(|c| &g[i][c] * &g[j][c]).collect();
            let coords = node_coordinates(&g, &leads, &to_rf(prod));
            let c: Vec<Poly> = coords
                .into_iter()
                .map(|r| {
                    r.as_poly()
                        .cloned()
                        .ok_or_else(|| CoverError::Invalid("node ring is not closed".into()))
                })
                .collect::<Result<_, _>>()?;
            mult[i][j] = c.clone();
            mult[j][i] = c;
        }
    }
    // at infinity the ring is the full product: basis 1, delta_1, ..., delta_{d-1}
    let cols: Vec<Vec<RationalFunction>> = (0..d)
        .map(|k| {
            let w: Vec<Poly> = (0..d)
                .map(|c| {
                    if k == 0 || c == k {
                        Poly::one()
                    } else {
                        Poly::zero()
                    }
                })
                .collect();
            node_coordinates(&g, &leads, &to_rf(w))
        })
        .collect();
    let algebra = CoverAlgebra::new(field, mult, RatMatrix::from_cols(cols), Provenance::Pinched)?;
    // components[c][k] = g[k][c]
    let comps = (0..d)
        .map(|c| (0..d).map(|k| g[k][c].clone()).collect())
        .collect();
    Ok((algebra, comps))
}

impl Tower {
    /// The degree-1 cover: the base line itself.
    pub fn trivial(field: Field) -> Self {
        Tower {
            algebra: CoverAlgebra::split(1, field)
                .expect("degree one")
                .with_provenance(Provenance::Pinched),
            components: vec![vec![Poly::one()]],
            nodes: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.components.len()
    }

    pub fn used_points(&self) -> Vec<Scalar> {
        self.nodes.iter().map(|n| n.y.clone()).collect()
    }

    /// Glues a new line along `points`, each on the given component.
    ///
    /// A point already carrying a node is ramified and rejected.
    pub fn glue(&mut self, points: &[(Scalar, usize)]) -> Result<(), CoverError> {
        let d = self.degree();
        let field = self.algebra.field();
        field.check_degree(d + 1)?;
        let used = self.used_points();
        for (i, (y, c)) in points.iter().enumerate() {
            if points[..i].iter().any(|(z, _)| z == y) {
                return Err(CoverError::RepeatedPinchPoint);
            }
            if *c >= d {
                return Err(CoverError::NotAFiberPoint);
            }
            if used.contains(y) {
                return Err(CoverError::RamifiedPinchPoint);
            }
        }
        let degree_before = self.algebra.tschirnhausen()?.bundle.degree();
        let mut nodes = self.nodes.clone();
        nodes.extend(points.iter().map(|(y, c)| Node {
            y: field.reduce(y),
            on: *c,
            new: d,
        }));
        let (algebra, components) = node_algebra(d + 1, &nodes, field)?;
        let degree_after = algebra.tschirnhausen()?.bundle.degree();
        self.algebra = algebra;
        self.components = components;
        self.nodes = nodes;
        self.steps.push(TowerStep {
            gluing_degree: points.len(),
            points: points.iter().map(|(y, _)| y.clone()).collect(),
            degree_before,
            degree_after,
        });
        Ok(())
    }

    /// Glues a line along `count` new general points on random components.
    pub fn glue_random<R: Rng + ?Sized>(
        &mut self,
        count: usize,
        rng: &mut R,
    ) -> Result<(), CoverError> {
        let field = self.algebra.field();
        let mut avoid = self.used_points();
        let mut pts = Vec::with_capacity(count);
        while pts.len() < count {
            let y = general_scalar(rng, field);
            if avoid.contains(&y) {
                continue;
            }
            avoid.push(y.clone());
            let c = rng.gen_range(0..self.degree());
            pts.push((y, c));
        }
        self.glue(&pts)
    }

    /// Rebuilds the tower by successive calls to [`pinch`], starting from
    /// the base line; an independent route to the same algebra.
    pub fn replay_by_pinching(&self) -> Result<CoverAlgebra, CoverError> {
        let field = self.algebra.field();
        let mut algebra = CoverAlgebra::split(1, field)?;
        // values of the current basis on each component
        let mut comps: Vec<Vec<Poly>> = vec![vec![Poly::one()]];
        for new in 1..self.degree() {
            let spec: Vec<PinchPoint> = self
                .nodes
                .iter()
                .filter(|n| n.new == new)
                .map(|n| PinchPoint {
                    y: n.y.clone(),
                    sheet: comps[n.on].iter().map(|p| p.eval(&n.y)).collect(),
                })
                .collect();
            let pinched = pinch_with_basis(&algebra, &spec)?;
            let r = algebra.degree();
            let b = &pinched.basis;
            let mut next: Vec<Vec<Poly>> = comps
                .iter()
                .map(|vals| {
                    (0..=r)
                        .map(|k| {
                            (0..r).fold(Poly::zero(), |acc, j| &acc + &(&b[(k, j)] * &vals[j]))
                        })
                        .collect()
                })
                .collect();
            next.push((0..=r).map(|k| b[(k, r)].clone()).collect());
            algebra = pinched.algebra;
            comps = next;
        }
        Ok(algebra)
    }
}

/// Tower realizing `O(l_1) + ... + O(l_{d-1})`: glue lines along `l_i`
/// points, largest first.
pub fn build_tower<R: Rng + ?Sized>(
    degrees: &[usize],
    field: Field,
    rng: &mut R,
) -> Result<Tower, CoverError> {
    field.check_degree(degrees.len() + 1)?;
    let mut order = degrees.to_vec();
    order.sort_unstable_by(|a, b| b.cmp(a));
    let mut tower = Tower::trivial(field);
    for l in order {
        tower.glue_random(l, rng)?;
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn two_nodes_on_two_lines() {
        let base = CoverAlgebra::split(1, Field::Rational).unwrap();
        let spec = vec![
            PinchPoint {
                y: s(0),
                sheet: vec![s(1)],
            },
            PinchPoint {
                y: s(1),
                sheet: vec![s(1)],
            },
        ];
        let a = pinch(&base, &spec).unwrap();
        assert_eq!(a.degree(), 2);
        assert_eq!(a.tschirnhausen().unwrap().bundle.parts(), &[2]);
        assert_eq!(a.branch_and_genus().unwrap(), (4, 1));
        let disjoint = pinch(&base, &[]).unwrap();
        assert_eq!(disjoint.tschirnhausen().unwrap().bundle.parts(), &[0]);
    }

    #[test]
    fn invalid_specs_rejected() {
        let base = CoverAlgebra::split(1, Field::Rational).unwrap();
        let rep = vec![
            PinchPoint {
                y: s(2),
                sheet: vec![s(1)],
            },
            PinchPoint {
                y: s(2),
                sheet: vec![s(1)],
            },
        ];
        assert!(matches!(
            pinch(&base, &rep),
            Err(CoverError::RepeatedPinchPoint)
        ));
        let bad = vec![PinchPoint {
            y: s(2),
            sheet: vec![s(3)],
        }];
        assert!(matches!(
            pinch(&base, &bad),
            Err(CoverError::NotAFiberPoint)
        ));
    }

    #[test]
    fn small_towers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for degrees in [vec![1, 2], vec![2, 2], vec![1, 1, 3]] {
            let t = build_tower(&degrees, Field::Rational, &mut rng).unwrap();
            let want: Vec<i64> = degrees.iter().map(|&l| l as i64).collect();
            assert_eq!(t.algebra.tschirnhausen().unwrap().bundle.parts(), &want[..]);
            for step in &t.steps {
                assert_eq!(
                    step.degree_after,
                    step.degree_before + step.gluing_degree as i64
                );
            }
            let replayed = t.replay_by_pinching().unwrap();
            assert_eq!(replayed.tschirnhausen().unwrap().bundle.parts(), &want[..]);
        }
    }

    #[test]
    fn components_are_fiber_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = build_tower(&[2, 3], Field::Rational, &mut rng).unwrap();
        for n in &t.nodes {
            let a: Vec<Scalar> = t.components[n.on].iter().map(|p| p.eval(&n.y)).collect();
            let b: Vec<Scalar> = t.components[n.new].iter().map(|p| p.eval(&n.y)).collect();
            assert_eq!(a, b);
            assert!(t.algebra.is_fiber_point(&n.y, &a));
        }
        let y = Scalar::from(123_456);
        for c in &t.components {
            let v: Vec<Scalar> = c.iter().map(|p| p.eval(&y)).collect();
            assert!(t.algebra.is_fiber_point(&y, &v));
        }
    }

    #[test]
    fn reused_node_point_rejected() {
        let mut t = Tower::trivial(Field::Rational);
        t.glue(&[(s(1), 0), (s(2), 0)]).unwrap();
        assert_eq!(t.glue(&[(s(1), 1)]), Err(CoverError::RamifiedPinchPoint));
    }
}
