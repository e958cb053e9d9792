use super::{conjugate_square_integral, MahlerReport, PSH_BOUND};
use crate::error::Result;
use crate::geom2d::{GeneratingFunction, UnconditionalPolygon};
use crate::revolve::profile_square_integral;

/// `K = ⋃_x {x} × f(x)·C`: scaled copies of a planar section stacked along the X-axis.
///
/// The section is restricted to unconditional polygons, which covers the cube and octahedron.
#[derive(Clone, Debug)]
pub struct ParallelSectionsBody {
    pub generator: GeneratingFunction,
    pub cross_section: UnconditionalPolygon,
}

impl ParallelSectionsBody {
    pub fn new(generator: GeneratingFunction, cross_section: UnconditionalPolygon) -> Self {
        Self { generator, cross_section }
    }

    /// `[-1, 1]³`.
    pub fn cube() -> Self {
        let g = GeneratingFunction::from_domain(&UnconditionalPolygon::square()).expect("square is valid");
        Self::new(g, UnconditionalPolygon::square())
    }

    /// The unit cross-polytope.
    pub fn octahedron() -> Self {
        let g = GeneratingFunction::from_domain(&UnconditionalPolygon::diamond()).expect("diamond is valid");
        Self::new(g, UnconditionalPolygon::diamond())
    }
}

/// Mahler product of a parallel-sections body. The polar is again a parallel-sections body,
/// with section `C*` and generator `f*`, so both volumes split into an area times `∫ f²`.
pub fn mahler_product_psh(body: &ParallelSectionsBody) -> Result<MahlerReport> {
    let section = &body.cross_section;
    let primal = section.area() * profile_square_integral(&body.generator);
    let polar = section.polar()?.area() * conjugate_square_integral(&body.generator)?;
    Ok(MahlerReport::new(primal, polar, PSH_BOUND))
}
