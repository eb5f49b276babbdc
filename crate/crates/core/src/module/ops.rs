use crate::algebra::vector::{FreeModuleSpec, FreeVector, VTerm};
use crate::error::{Error, Result};
use crate::groebner::submodule::kernel_projected;

use super::{subquotient, Embedded, ModuleMap, PresentedModule};

/// Relabels the components of `v` with `f` into `space`.
fn relabel(m: &PresentedModule, space: &FreeModuleSpec, v: &FreeVector, f: impl Fn(u32) -> u32) -> FreeVector {
    let terms = v.terms().iter().map(|t| VTerm { mon: t.mon, comp: f(t.comp), coeff: t.coeff }).collect();
    FreeVector::from_terms(m.ctx().poly(), space, terms)
}

pub fn direct_sum(a: &PresentedModule, b: &PresentedModule) -> Result<PresentedModule> {
    a.check_same_ring(b)?;
    let shift = a.num_gens() as u32;
    let mut twists = a.gen_twists().to_vec();
    twists.extend_from_slice(b.gen_twists());
    let space = FreeModuleSpec::new(twists);
    let mut rels: Vec<FreeVector> = a.relations().iter().map(|r| relabel(a, &space, r, |c| c)).collect();
    rels.extend(b.relations().iter().map(|r| relabel(b, &space, r, |c| c + shift)));
    let mut rel_twists = a.rel_twists().to_vec();
    rel_twists.extend_from_slice(b.rel_twists());
    Ok(PresentedModule::raw(a.ctx(), space, rel_twists, rels, a.is_known_minimal() && b.is_known_minimal()))
}

/// `Hom(M, N)` as a subquotient of `Hom(F_0, N)`: ambient component
/// `j * gens(N) + l` holds the coefficient of `e_l` in the image of `e_j`.
pub fn hom_embedded(m: &PresentedModule, n: &PresentedModule) -> Result<Embedded> {
    m.check_same_ring(n)?;
    let ctx = m.ctx();
    let (gm, gn) = (m.num_gens() as u32, n.num_gens() as u32);
    let mut t0 = Vec::with_capacity((gm * gn) as usize);
    for &a in m.gen_twists() {
        for &c in n.gen_twists() {
            t0.push(c - a);
        }
    }
    let mut t1 = Vec::with_capacity(m.num_rels() * gn as usize);
    for &b in m.rel_twists() {
        for &c in n.gen_twists() {
            t1.push(c - b);
        }
    }
    ctx.limits().check_rank(t0.len(), "Hom ambient")?;
    let (s0, s1) = (FreeModuleSpec::new(t0.clone()), FreeModuleSpec::new(t1.clone()));
    let mut rels0 = Vec::new();
    for j in 0..gm {
        for s in n.relations() {
            rels0.push(relabel(n, &s0, s, |l| j * gn + l));
        }
    }
    let mut rels1 = Vec::new();
    for i in 0..m.num_rels() as u32 {
        for s in n.relations() {
            rels1.push(relabel(n, &s1, s, |l| i * gn + l));
        }
    }
    // e_(j,l) ↦ Σ_i r_i[j] e_(i,l)
    let mut per_gen: Vec<Vec<VTerm>> = vec![Vec::new(); gm as usize];
    for (i, r) in m.relations().iter().enumerate() {
        for t in r.terms() {
            per_gen[t.comp as usize].push(VTerm { mon: t.mon, comp: i as u32, coeff: t.coeff });
        }
    }
    let ring = ctx.poly();
    let mut images = Vec::with_capacity(t0.len());
    for j in 0..gm as usize {
        for l in 0..gn {
            let terms = per_gen[j]
                .iter()
                .map(|t| VTerm { mon: t.mon, comp: t.comp * gn + l, coeff: t.coeff })
                .collect();
            images.push(FreeVector::from_terms(ring, &s1, terms));
        }
    }
    let k = if m.num_rels() == 0 {
        (0..t0.len()).map(FreeVector::basis).collect()
    } else {
        kernel_projected(ctx, &t0, &t1, &images, &rels1)?
    };
    subquotient(ctx, &t0, &k, &rels0)
}

pub fn hom(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    Ok(hom_embedded(m, n)?.module)
}

/// `M* = Hom(M, R)`; ambient component `j` is the value on `e_j`.
pub fn dual_embedded(m: &PresentedModule) -> Result<Embedded> {
    hom_embedded(m, &PresentedModule::free(m.ctx(), vec![0]))
}

pub fn dual(m: &PresentedModule) -> Result<PresentedModule> {
    Ok(dual_embedded(m)?.module)
}

/// `M ⊗ N` on generators `e_j ⊗ e_l` (index `j * gens(N) + l`), minimized;
/// the embedding records which of these survive.
pub fn tensor_embedded(m: &PresentedModule, n: &PresentedModule) -> Result<Embedded> {
    m.check_same_ring(n)?;
    let ctx = m.ctx();
    let (gm, gn) = (m.num_gens() as u32, n.num_gens() as u32);
    let mut twists = Vec::new();
    for &a in m.gen_twists() {
        for &c in n.gen_twists() {
            twists.push(a + c);
        }
    }
    ctx.limits().check_rank(twists.len(), "tensor product")?;
    let space = FreeModuleSpec::new(twists.clone());
    let mut rels = Vec::new();
    for r in m.relations() {
        for l in 0..gn {
            rels.push(relabel(m, &space, r, |j| j * gn + l));
        }
    }
    for j in 0..gm {
        for s in n.relations() {
            rels.push(relabel(n, &space, s, |l| j * gn + l));
        }
    }
    let basis: Vec<FreeVector> = (0..twists.len()).map(FreeVector::basis).collect();
    subquotient(ctx, &twists, &basis, &rels)
}

pub fn tensor(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    Ok(tensor_embedded(m, n)?.module)
}

/// Basis index of a generator chosen by a minimization over basis vectors.
fn basis_index(v: &FreeVector) -> Result<u32> {
    match v.terms() {
        [t] if t.mon.is_one() => Ok(t.comp),
        _ => Err(Error::Incompatible("generator is not a basis vector".into())),
    }
}

/// `M* ⊗ N → Hom(M, N)`, `φ ⊗ n ↦ (m ↦ φ(m) n)`.
pub fn natural_map_tensor_to_hom(m: &PresentedModule, n: &PresentedModule) -> Result<ModuleMap> {
    let ctx = m.ctx();
    let ring = ctx.poly();
    let d = dual_embedded(m)?;
    let h = hom_embedded(m, n)?;
    let t = tensor_embedded(&d.module, n)?;
    let gn = n.num_gens() as u32;
    let hspace = FreeModuleSpec::new(h.ambient.clone());
    let mut lifter = h.lifter()?;
    let mut images = Vec::with_capacity(t.gens.len());
    for g in &t.gens {
        let idx = basis_index(g)?;
        let (s, l) = (idx / gn, idx % gn);
        let phi = &d.gens[s as usize];
        let terms = phi.terms().iter().map(|x| VTerm { mon: x.mon, comp: x.comp * gn + l, coeff: x.coeff }).collect();
        let v = FreeVector::from_terms(ring, &hspace, terms);
        let c = lifter
            .lift(&v)?
            .ok_or_else(|| Error::NotWellDefined("natural map leaves Hom(M,N)".into()))?;
        images.push(c);
    }
    ModuleMap::unchecked(&t.module, &h.module, images)
}

/// `M ⊗ N* → Hom(M, N)*`, `m ⊗ φ ↦ (ψ ↦ φ(ψ(m)))`.
pub fn natural_map_tensor_to_hom_dual(m: &PresentedModule, n: &PresentedModule) -> Result<ModuleMap> {
    let ctx = m.ctx();
    let ring = ctx.poly();
    let e = dual_embedded(n)?;
    let h = hom_embedded(m, n)?;
    let hd = dual_embedded(&h.module)?;
    let t = tensor_embedded(m, &e.module)?;
    let gn = n.num_gens();
    let ge = e.module.num_gens() as u32;
    let dspace = FreeModuleSpec::new(hd.ambient.clone());
    let mut lifter = hd.lifter()?;
    let mut images = Vec::with_capacity(t.gens.len());
    for g in &t.gens {
        let idx = basis_index(g)?;
        let (j, s) = ((idx / ge) as usize, (idx % ge) as usize);
        let psi = &e.gens[s];
        let psi_entries: Vec<_> = (0..gn).map(|l| psi.entry(ring, l)).collect();
        let mut v = FreeVector::zero();
        for (tix, ht) in h.gens.iter().enumerate() {
            // ψ(h_t(e_j)) = Σ_l h_t[j,l] ψ(e_l)
            let mut val = ring.zero();
            for (l, pl) in psi_entries.iter().enumerate() {
                let coeff = ht.entry(ring, j * gn + l);
                if !coeff.is_zero() && !pl.is_zero() {
                    val = ring.add(&val, &ring.mul(&coeff, pl)?)?;
                }
            }
            let val = ctx.reduce(&val);
            let part = FreeVector::from_entries(ring, &dspace, &[(tix, val)])?;
            v = v.add(ring, &dspace, &part);
        }
        let c = lifter
            .lift(&v)?
            .ok_or_else(|| Error::NotWellDefined("natural map leaves Hom(M,N)*".into()))?;
        images.push(c);
    }
    ModuleMap::unchecked(&t.module, &hd.module, images)
}
