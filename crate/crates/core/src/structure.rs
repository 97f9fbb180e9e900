//! Center, even center, unit and simplicity of an algebra over a field.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraError, AlgebraSpec, Element};
use crate::math::{EchelonBasis, Field, Matrix};

/// A subspace of an algebra, held as a fully reduced echelon basis.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    alg: Arc<AlgebraSpec<F>>,
    echelon: EchelonBasis<F>,
}

impl<F: Field> Subspace<F> {
    pub fn from_vectors(alg: &Arc<AlgebraSpec<F>>, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut echelon = EchelonBasis::new(alg.dim());
        for v in vectors {
            echelon.insert(&v);
        }
        Subspace { alg: alg.clone(), echelon }
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec<F>> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> Vec<Element<F>> {
        self.echelon
            .rows()
            .iter()
            .map(|r| Element::from_coords(&self.alg, r.clone()).expect("rows have ambient length"))
            .collect()
    }

    pub fn contains(&self, x: &Element<F>) -> bool {
        self.echelon.contains(x.coords())
    }

    /// True when every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.echelon.rows().iter().all(|r| other.echelon.contains(r))
    }
}

/// Rows of the linear system in the coordinates of `x` saying that `cond(x)`
/// vanishes, where `cond` is linear in `x`.
fn condition_rows<F: Field>(
    alg: &Arc<AlgebraSpec<F>>,
    rows: &mut EchelonBasis<F>,
    cond: impl Fn(&Element<F>) -> Result<Element<F>, AlgebraError>,
) -> Result<(), AlgebraError> {
    let dim = alg.dim();
    let images = (0..dim)
        .map(|k| cond(&Element::basis(alg, k)))
        .collect::<Result<Vec<_>, _>>()?;
    for r in 0..dim {
        if images.iter().all(|v| v.coord(r).is_zero()) {
            continue;
        }
        let row: Vec<F> = images.iter().map(|v| v.coord(r).clone()).collect();
        rows.insert(&row);
        if rows.rank() == dim {
            break;
        }
    }
    Ok(())
}

fn center_system<F: Field>(alg: &Arc<AlgebraSpec<F>>) -> Result<EchelonBasis<F>, AlgebraError> {
    let dim = alg.dim();
    let basis: Vec<Element<F>> = (0..dim).map(|i| Element::basis(alg, i)).collect();
    let mut rows = EchelonBasis::new(dim);
    for x in &basis {
        condition_rows(alg, &mut rows, |z| Element::commutator(x, z))?;
        for y in &basis {
            condition_rows(alg, &mut rows, |z| Element::associator(z, x, y))?;
            condition_rows(alg, &mut rows, |z| Element::associator(x, z, y))?;
            condition_rows(alg, &mut rows, |z| Element::associator(x, y, z))?;
            if rows.rank() == dim {
                return Ok(rows);
            }
        }
    }
    Ok(rows)
}

fn kernel_subspace<F: Field>(alg: &Arc<AlgebraSpec<F>>, rows: &EchelonBasis<F>) -> Result<Subspace<F>, AlgebraError> {
    let m = Matrix::from_rows(alg.dim(), rows.rows().to_vec())?;
    Ok(Subspace::from_vectors(alg, m.kernel(alg.ctx())))
}

/// `Z(A) = { z : (z,x,y) = (x,z,y) = (x,y,z) = [x,z] = 0 for all x, y }`,
/// as the kernel of the conditions against all basis pairs.
pub fn compute_center<F: Field>(alg: &Arc<AlgebraSpec<F>>) -> Result<Subspace<F>, AlgebraError> {
    let rows = center_system(alg)?;
    kernel_subspace(alg, &rows)
}

/// Even part of the center.
pub fn compute_even_center<F: Field>(alg: &Arc<AlgebraSpec<F>>) -> Result<Subspace<F>, AlgebraError> {
    if !alg.is_graded() {
        return Err(AlgebraError::Ungraded(alg.name().to_string()));
    }
    let mut rows = center_system(alg)?;
    let ctx = alg.ctx();
    for (k, &p) in alg.parity().iter().enumerate() {
        if p == 1 {
            let mut row = vec![F::zero(ctx); alg.dim()];
            row[k] = F::one(ctx);
            rows.insert(&row);
        }
    }
    kernel_subspace(alg, &rows)
}

/// The two-sided unit, if one exists: solves `u e_j = e_j u = e_j` for all `j`.
pub fn find_unit<F: Field>(alg: &Arc<AlgebraSpec<F>>) -> Result<Option<Element<F>>, AlgebraError> {
    let dim = alg.dim();
    let ctx = alg.ctx();
    let basis: Vec<Element<F>> = (0..dim).map(|i| Element::basis(alg, i)).collect();
    let mut rows = Vec::new();
    for (j, ej) in basis.iter().enumerate() {
        let left: Vec<Element<F>> = basis.iter().map(|ek| ek.multiply(ej)).collect::<Result<_, _>>()?;
        let right: Vec<Element<F>> = basis.iter().map(|ek| ej.multiply(ek)).collect::<Result<_, _>>()?;
        for images in [&left, &right] {
            for r in 0..dim {
                let mut row: Vec<F> = images.iter().map(|v| v.coord(r).clone()).collect();
                row.push(if r == j { F::one(ctx) } else { F::zero(ctx) });
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let rref = Matrix::from_rows(dim + 1, rows)?.rref();
    if rref.pivots.contains(&dim) {
        return Ok(None);
    }
    let mut u = vec![F::zero(ctx); dim];
    for (r, &c) in rref.pivots.iter().enumerate() {
        u[c] = rref.matrix.get(r, dim).clone();
    }
    let u = Element::from_coords(alg, u)?;
    // Free variables were set to zero. A unit is unique when it exists, so
    // this only fails if the system had a free variable and no unit.
    for e in &basis {
        if u.multiply(e)? != *e || e.multiply(&u)? != *e {
            return Ok(None);
        }
    }
    Ok(Some(u))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Simplicity {
    Simple,
    NotSimple,
}

/// A generator whose ideal closure is proper.
#[derive(Debug, Clone)]
pub struct SimplicityWitness<F: Field> {
    pub generator: String,
    pub closure: Subspace<F>,
}

#[derive(Debug, Clone)]
pub struct SimplicityVerdict<F: Field> {
    pub verdict: Simplicity,
    pub graded: bool,
    pub ambient_dim: usize,
    pub witness: Option<SimplicityWitness<F>>,
    pub generators_tested: Vec<String>,
}

impl<F: Field> SimplicityVerdict<F> {
    pub fn is_simple(&self) -> bool {
        self.verdict == Simplicity::Simple
    }
}

/// Smallest subspace containing `gens` closed under left and right
/// multiplication by basis vectors and, when `graded`, under parity
/// projections.
pub fn ideal_closure<F: Field>(
    alg: &Arc<AlgebraSpec<F>>,
    gens: &[Element<F>],
    graded: bool,
) -> Result<Subspace<F>, AlgebraError> {
    let dim = alg.dim();
    let basis: Vec<Element<F>> = (0..dim).map(|i| Element::basis(alg, i)).collect();
    let mut span = EchelonBasis::new(dim);
    let mut queue = Vec::new();
    let push = |v: Element<F>, span: &mut EchelonBasis<F>, queue: &mut Vec<Element<F>>| {
        let parts = if graded {
            vec![v.homogeneous_part(0), v.homogeneous_part(1)]
        } else {
            vec![v]
        };
        for p in parts {
            if span.insert(p.coords()) {
                queue.push(p);
            }
        }
    };
    for g in gens {
        push(g.clone(), &mut span, &mut queue);
    }
    while let Some(v) = queue.pop() {
        if span.rank() == dim {
            break;
        }
        for e in &basis {
            push(v.multiply(e)?, &mut span, &mut queue);
            push(e.multiply(&v)?, &mut span, &mut queue);
        }
    }
    Ok(Subspace { alg: alg.clone(), echelon: span })
}

/// Decides simplicity by ideal closure: the ideal generated by every basis
/// vector and by one seeded random dense element must be the whole algebra.
/// The not-simple direction is exact; see the README for the scope of the
/// simple direction.
pub fn check_simple<F: Field>(
    alg: &Arc<AlgebraSpec<F>>,
    graded: bool,
    seed: u64,
) -> Result<SimplicityVerdict<F>, AlgebraError> {
    if alg.is_zero_algebra() {
        return Err(AlgebraError::Parameter(format!(
            "{}: all products vanish, simplicity is undefined",
            alg.name()
        )));
    }
    let dim = alg.dim();
    let ctx = alg.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense: Vec<F> = (0..dim).map(|_| F::from_int(ctx, rng.gen_range(1..=1000))).collect();
    let mut gens: Vec<(String, Element<F>)> = (0..dim)
        .map(|i| (alg.label(i).to_string(), Element::basis(alg, i)))
        .collect();
    gens.push((format!("random(seed={seed})"), Element::from_coords(alg, dense)?));

    let mut tested = Vec::new();
    for (name, g) in gens {
        tested.push(name.clone());
        let closure = ideal_closure(alg, std::slice::from_ref(&g), graded)?;
        if closure.dim() < dim {
            return Ok(SimplicityVerdict {
                verdict: Simplicity::NotSimple,
                graded,
                ambient_dim: dim,
                witness: Some(SimplicityWitness {
                    generator: name,
                    closure,
                }),
                generators_tested: tested,
            });
        }
    }
    Ok(SimplicityVerdict {
        verdict: Simplicity::Simple,
        graded,
        ambient_dim: dim,
        witness: None,
        generators_tested: tested,
    })
}
