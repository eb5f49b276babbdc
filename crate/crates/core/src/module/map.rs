use crate::algebra::vector::FreeVector;
use crate::error::{Error, Result};
use crate::groebner::submodule::{kernel_projected, Lifter};

use super::{subquotient, Embedded, PresentedModule};

/// Degree-zero homomorphism given by the images of the source generators,
/// as vectors of the target's free module.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    images: Vec<FreeVector>,
}

impl ModuleMap {
    /// Checks degrees and that source relations land in the target relations.
    pub fn new(source: &PresentedModule, target: &PresentedModule, images: Vec<FreeVector>) -> Result<Self> {
        let f = Self::unchecked(source, target, images)?;
        let mut lifter = Lifter::new(target.ctx(), &[], target.gen_twists(), &[], target.relations())?;
        for (i, r) in source.relations().iter().enumerate() {
            if !lifter.contains(&f.apply(r))? {
                return Err(Error::NotWellDefined(format!("relation {i} does not map into the target relations")));
            }
        }
        Ok(f)
    }

    /// Checks degrees only.
    pub(crate) fn unchecked(source: &PresentedModule, target: &PresentedModule, images: Vec<FreeVector>) -> Result<Self> {
        source.check_same_ring(target)?;
        if images.len() != source.num_gens() {
            return Err(Error::Incompatible(format!("{} images for {} generators", images.len(), source.num_gens())));
        }
        let images: Vec<FreeVector> = images.iter().map(|v| target.reduce_element(v)).collect();
        for (j, v) in images.iter().enumerate() {
            if let Some(d) = v.degree(target.space()) {
                if !v.is_homogeneous(target.space()) || d != source.gen_twists()[j] as i64 {
                    return Err(Error::NotWellDefined(format!("image of generator {j} is not of degree 0")));
                }
            }
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(m: &PresentedModule) -> Self {
        let images = (0..m.num_gens()).map(FreeVector::basis).collect();
        ModuleMap { source: m.clone(), target: m.clone(), images }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn images(&self) -> &[FreeVector] {
        &self.images
    }

    /// Image of an element of the source's free module.
    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        let ring = self.source.ctx().poly();
        let space = self.target.space();
        let mut acc = FreeVector::zero();
        for (j, c) in v.entries(ring) {
            acc = acc.add_poly_mul(ring, space, &self.images[j], c.terms());
        }
        self.target.reduce_element(&acc)
    }

    /// Elements of the source's free module mapping into the target relations.
    fn preimage_of_zero(&self) -> Result<Vec<FreeVector>> {
        let ctx = self.source.ctx();
        kernel_projected(ctx, self.source.gen_twists(), self.target.gen_twists(), &self.images, self.target.relations())
    }

    pub fn kernel(&self) -> Result<PresentedModule> {
        Ok(self.kernel_embedded()?.module)
    }

    /// Kernel as a subquotient of the source's free module.
    pub fn kernel_embedded(&self) -> Result<Embedded> {
        let k = self.preimage_of_zero()?;
        subquotient(self.source.ctx(), self.source.gen_twists(), &k, self.source.relations())
    }

    pub fn cokernel(&self) -> Result<PresentedModule> {
        let t = &self.target;
        let basis: Vec<FreeVector> = (0..t.num_gens()).map(FreeVector::basis).collect();
        let mut modulo = t.relations().to_vec();
        modulo.extend(self.images.iter().cloned());
        Ok(subquotient(t.ctx(), t.gen_twists(), &basis, &modulo)?.module)
    }

    pub fn image(&self) -> Result<PresentedModule> {
        let t = &self.target;
        Ok(subquotient(t.ctx(), t.gen_twists(), &self.images, t.relations())?.module)
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let images = self.images.iter().map(|v| other.apply(v)).collect();
        ModuleMap::unchecked(&self.source, &other.target, images)
    }

    /// True when every generator maps into the target relations.
    pub fn is_zero(&self) -> Result<bool> {
        let t = &self.target;
        let mut lifter = Lifter::new(t.ctx(), &[], t.gen_twists(), &[], t.relations())?;
        for v in &self.images {
            if !lifter.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
