//! Fusion systems on a finite p-group: hom-sets, subgroup classification,
//! axiom verification and Alperin decomposition.
//!
//! Every system keeps, per subgroup `P` of its carrier `S`, the complete
//! list `Hom_F(P, S)`; `Hom_F(P, R)` is the sublist with image inside `R`.
//! Realized systems fill these lists lazily from transporters in a realizing
//! subgroup of the ambient group, explicit systems store them up front.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::group::{is_prime, p_part, FiniteGroup, Limits, Subgroup};
use crate::morphism::GroupMorphism;

/// How the morphisms of a system are produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    /// Conjugation maps `c_h` for `h` in `realizer`, a subgroup of the ambient
    /// group in which the carrier is a Sylow p-subgroup.
    Realized { realizer: Subgroup },
    /// Hom-sets supplied as data.
    Explicit,
}

/// First axiom failure found by [`FusionSystem::verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    /// A morphism domain is not a subgroup of the carrier or its image
    /// leaves the carrier.
    Malformed(GroupMorphism),
    MissingInclusion(Subgroup),
    MissingInverse(GroupMorphism),
    NotClosed {
        first: GroupMorphism,
        second: GroupMorphism,
    },
    /// `c_s` restricted to the subgroup is missing.
    Fs1 {
        q: Subgroup,
        s: u32,
    },
    /// `|Aut_S(S)|` against the p-part of `|Aut_F(S)|`.
    Fs2 {
        aut_s: usize,
        aut_f: usize,
    },
    /// A morphism onto a fully normalized subgroup with no extension to `N_φ`.
    Fs3 {
        phi: GroupMorphism,
        n_phi: Subgroup,
    },
    /// The check itself could not run to completion.
    Internal(String),
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Malformed(m) => write!(f, "malformed morphism {m:?}"),
            AxiomFailure::MissingInclusion(q) => write!(f, "inclusion of {q:?} missing"),
            AxiomFailure::MissingInverse(m) => write!(f, "inverse of {m:?} missing"),
            AxiomFailure::NotClosed { first, second } => {
                write!(f, "composite of {first:?} then {second:?} missing")
            }
            AxiomFailure::Fs1 { q, s } => write!(f, "FS1: conjugation by {s} on {q:?} missing"),
            AxiomFailure::Fs2 { aut_s, aut_f } => {
                write!(
                    f,
                    "FS2: |Aut_S(S)| = {aut_s} is not the p-part of |Aut_F(S)| = {aut_f}"
                )
            }
            AxiomFailure::Fs3 { phi, n_phi } => {
                write!(
                    f,
                    "FS3: {phi:?} does not extend to N_phi of order {}",
                    n_phi.order()
                )
            }
            AxiomFailure::Internal(msg) => write!(f, "check aborted: {msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationStatus {
    Unchecked,
    Verified,
    Failed(AxiomFailure),
}

/// `Aut_F(Q)` as an abstract group together with its inner part.
#[derive(Clone, Debug)]
pub struct Automizer {
    pub q: Subgroup,
    /// Element `i` of `group` is `autos[i]`; index 0 is the identity.
    pub autos: Vec<GroupMorphism>,
    /// Product `i * j` is `autos[i] ∘ autos[j]`.
    pub group: FiniteGroup,
    /// `Aut_Q(Q)` inside `group`.
    pub inner: Subgroup,
    /// `Aut_S(Q)` inside `group`.
    pub from_s: Subgroup,
    /// `Out_F(Q) = Aut_F(Q) / Aut_Q(Q)`.
    pub out: FiniteGroup,
    /// Coset index in `out` of each element of `group`.
    pub out_projection: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupProfile {
    pub q: Subgroup,
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub centric: bool,
    pub radical: bool,
    pub essential: bool,
    pub aut_f_order: usize,
    pub aut_s_order: usize,
    pub out_f_order: usize,
    /// `Aut_S(Q)` has full p-part order in `Aut_F(Q)`.
    pub aut_s_sylow: bool,
    /// An F-conjugate with strictly larger normalizer in `S`.
    pub larger_normalizer: Option<Subgroup>,
    /// An F-conjugate with strictly larger centralizer in `S`.
    pub larger_centralizer: Option<Subgroup>,
    /// An F-conjugate `Q'` with `C_S(Q') ≰ Q'`.
    pub centric_witness: Option<Subgroup>,
    /// Preimage in `Aut_F(Q)` of a strongly p-embedded subgroup of `Out_F(Q)`.
    pub strongly_embedded: Option<Vec<GroupMorphism>>,
}

impl SubgroupProfile {
    /// Fully normalized iff fully centralized and `Aut_S(Q)` Sylow.
    pub fn sylow_criterion_holds(&self) -> bool {
        self.fully_normalized == (self.fully_centralized && self.aut_s_sylow)
    }
}

/// Output of [`FusionSystem::essential_subgroups`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Essentials {
    pub all: Vec<Subgroup>,
    pub fully_normalized: Vec<Subgroup>,
}

/// `φ = ψ_{n+1} ∘ ψ_n ∘ … ∘ ψ_1` on `Q`, each `ψ_i` an automorphism of an
/// essential subgroup and `ψ_{n+1}` an automorphism of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlperinDecomposition {
    /// `Q_0 = Q, Q_1, …, Q_{n+1} = φ(Q)`.
    pub chain: Vec<Subgroup>,
    pub essentials: Vec<Subgroup>,
    /// `ψ_1, …, ψ_{n+1}`, the last one in `Aut_F(S)`.
    pub autos: Vec<GroupMorphism>,
}

impl AlperinDecomposition {
    pub fn steps(&self) -> usize {
        self.essentials.len()
    }

    /// Composes the restrictions along the chain.
    pub fn recompose(&self) -> GroupMorphism {
        let q0 = &self.chain[0];
        let mut current = GroupMorphism::identity(q0);
        for psi in &self.autos {
            current = GroupMorphism::from_fn(q0, psi.codomain(), |x| psi.apply(current.apply(x)));
        }
        current
    }

    /// Checks the chain conditions against `F`.
    pub fn is_valid_for(&self, f: &FusionSystem) -> bool {
        let n = self.essentials.len();
        if self.chain.len() != n + 2 || self.autos.len() != n + 1 {
            return false;
        }
        for i in 0..n {
            let e = &self.essentials[i];
            let psi = &self.autos[i];
            if psi.domain() != e
                || !self.chain[i].is_subgroup_of(e)
                || !self.chain[i + 1].is_subgroup_of(e)
                || psi.image_of(&self.chain[i]) != self.chain[i + 1]
                || !f.contains_morphism(psi)
            {
                return false;
            }
        }
        let last = &self.autos[n];
        last.domain() == f.carrier()
            && f.contains_morphism(last)
            && last.image_of(&self.chain[n]) == self.chain[n + 1]
    }
}

pub struct FusionSystem {
    p: u32,
    ambient: Arc<FiniteGroup>,
    carrier: Subgroup,
    objects: Vec<Subgroup>,
    index: BTreeMap<Subgroup, usize>,
    realization: Realization,
    status: SaturationStatus,
    homs: Vec<OnceBox<Vec<GroupMorphism>>>,
}

impl Clone for FusionSystem {
    fn clone(&self) -> Self {
        let homs = self
            .homs
            .iter()
            .map(|cell| {
                let fresh = OnceBox::new();
                if let Some(v) = cell.get() {
                    let _ = fresh.set(Box::new(v.clone()));
                }
                fresh
            })
            .collect();
        Self {
            p: self.p,
            ambient: self.ambient.clone(),
            carrier: self.carrier.clone(),
            objects: self.objects.clone(),
            index: self.index.clone(),
            realization: self.realization.clone(),
            status: self.status.clone(),
            homs,
        }
    }
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionSystem")
            .field("p", &self.p)
            .field("ambient", &self.ambient.name())
            .field("carrier_order", &self.carrier.order())
            .field("realization", &self.realization)
            .field("status", &self.status)
            .finish_non_exhaustive()
    }
}

/// A proper subgroup `M` containing a Sylow p-subgroup `P` with
/// `P ∩ ˣP = 1` for every `x ∉ M`, found by direct search over the lattice.
///
/// The search fixes one Sylow subgroup; conjugating a solution moves it to
/// any other. Groups whose Sylow p-subgroup is trivial or normal have none.
pub fn strongly_p_embedded(x: &FiniteGroup, p: u32) -> Result<Option<Subgroup>> {
    let whole = x.whole();
    let sylow = x.sylow_within(&whole, p);
    if sylow.is_trivial() || x.is_normal_in(&sylow, &whole) {
        return Ok(None);
    }
    let meets = |g: u32| !x.conjugate(&sylow, g).intersection(&sylow).is_trivial();
    let found = x
        .subgroup_lattice()?
        .iter()
        .find(|m| {
            m.order() < x.order()
                && sylow.is_subgroup_of(m)
                && x.elements().all(|g| m.contains(g) || !meets(g))
        })
        .cloned();
    // M exists iff the elements g with P ∩ ᵍP ≠ 1 generate a proper subgroup
    let forced: Vec<u32> = x.elements().filter(|&g| meets(g)).collect();
    let proper = x.generate(&forced).order() < x.order();
    if found.is_some() != proper {
        return Err(Error::InternalInconsistency(
            "strongly p-embedded search disagrees with the generated-subgroup criterion".into(),
        ));
    }
    Ok(found)
}

/// Distinct maps, sorted canonically.
fn normalize(mut maps: Vec<GroupMorphism>) -> Vec<GroupMorphism> {
    maps.sort();
    maps.dedup();
    maps
}

impl FusionSystem {
    fn with_objects(
        p: u32,
        ambient: Arc<FiniteGroup>,
        carrier: Subgroup,
        realization: Realization,
    ) -> Result<Self> {
        let objects = ambient.lattice_within(&carrier)?;
        let index = objects
            .iter()
            .enumerate()
            .map(|(i, q)| (q.clone(), i))
            .collect();
        let homs = objects.iter().map(|_| OnceBox::new()).collect();
        Ok(Self {
            p,
            ambient,
            carrier,
            objects,
            index,
            realization,
            status: SaturationStatus::Unchecked,
            homs,
        })
    }

    /// `F_S(G)`. Without an explicit `S`, the first Sylow p-subgroup in
    /// lattice order is used.
    pub fn realize(g: Arc<FiniteGroup>, p: u32, s: Option<Subgroup>) -> Result<Self> {
        let realizer = g.whole();
        Self::realize_in(g, realizer, p, s)
    }

    /// `F_S(H)` for a subgroup `H` of the ambient group.
    pub fn realize_in(
        g: Arc<FiniteGroup>,
        realizer: Subgroup,
        p: u32,
        s: Option<Subgroup>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let expected = p_part(realizer.order(), p);
        let s = match s {
            Some(s) => s,
            None => g.sylow_within(&realizer, p),
        };
        if s.order() != expected || !s.is_subgroup_of(&realizer) {
            return Err(Error::NotSylow {
                p,
                order: s.order(),
                expected,
            });
        }
        Self::with_objects(p, g, s, Realization::Realized { realizer })
    }

    /// `F_S(S)`.
    pub fn inner(g: Arc<FiniteGroup>, s: Subgroup, p: u32) -> Result<Self> {
        Self::realize_in(g, s.clone(), p, Some(s))
    }

    /// An explicit system from an arbitrary list of morphisms. Maps are grouped
    /// by domain and stored as given; no closure is taken.
    pub fn explicit(
        p: u32,
        ambient: Arc<FiniteGroup>,
        carrier: Subgroup,
        morphisms: Vec<GroupMorphism>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p_part(carrier.order(), p) != carrier.order() {
            return Err(Error::NotAPGroup(p));
        }
        let sys = Self::with_objects(p, ambient, carrier, Realization::Explicit)?;
        let mut buckets: Vec<Vec<GroupMorphism>> = sys.objects.iter().map(|_| Vec::new()).collect();
        for m in morphisms {
            let i = sys.object_index(m.domain())?;
            if !m.image().is_subgroup_of(&sys.carrier) {
                return Err(Error::ObjectOutsideS);
            }
            buckets[i].push(m.with_codomain(&sys.carrier));
        }
        for (cell, maps) in sys.homs.iter().zip(buckets) {
            let _ = cell.set(Box::new(normalize(maps)));
        }
        Ok(sys)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn ambient_arc(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn realizer(&self) -> Option<&Subgroup> {
        match &self.realization {
            Realization::Realized { realizer } => Some(realizer),
            Realization::Explicit => None,
        }
    }

    pub fn status(&self) -> &SaturationStatus {
        &self.status
    }

    pub fn with_status(mut self, status: SaturationStatus) -> Self {
        self.status = status;
        self
    }

    /// Runs the axiom check and records its outcome.
    pub fn verified(self) -> Self {
        let status = self.verify_axioms();
        self.with_status(status)
    }

    /// Every subgroup of the carrier, canonically ordered.
    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object_index(&self, q: &Subgroup) -> Result<usize> {
        self.index.get(q).copied().ok_or(Error::ObjectOutsideS)
    }

    /// Subgroup of the ambient group generated by the given elements,
    /// checked to lie in the carrier.
    pub fn object(&self, q: &Subgroup) -> Result<&Subgroup> {
        Ok(&self.objects[self.object_index(q)?])
    }

    /// `Hom_F(P, S)`, canonically ordered.
    pub fn homs_to_carrier(&self, p: &Subgroup) -> Result<&[GroupMorphism]> {
        let i = self.object_index(p)?;
        Ok(self.homs[i].get_or_init(|| Box::new(self.compute_homs(p))))
    }

    /// Pre-fills `Hom_F(P, S)`, e.g. from a disk cache. Returns `false` when
    /// the object is unknown or already filled.
    pub fn seed_homs(&self, p: &Subgroup, maps: Vec<GroupMorphism>) -> bool {
        match self.index.get(p) {
            Some(&i) => self.homs[i].set(Box::new(normalize(maps))).is_ok(),
            None => false,
        }
    }

    /// `Hom_F(P, S)` if already computed.
    pub fn cached_homs(&self, p: &Subgroup) -> Option<&[GroupMorphism]> {
        self.index
            .get(p)
            .and_then(|&i| self.homs[i].get())
            .map(|v| v.as_slice())
    }

    fn compute_homs(&self, p: &Subgroup) -> Vec<GroupMorphism> {
        match &self.realization {
            Realization::Realized { realizer } => {
                let g = &*self.ambient;
                let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
                let members = p.to_members();
                for h in g.transporter(p, &self.carrier, realizer) {
                    seen.insert(members.iter().map(|&x| g.conj(h, x)).collect());
                }
                seen.into_iter()
                    .map(|imgs| GroupMorphism::from_images(p.clone(), self.carrier.clone(), imgs))
                    .collect()
            }
            Realization::Explicit => Vec::new(),
        }
    }

    /// `Hom_F(P, R)`, canonically ordered.
    pub fn hom_set(&self, p: &Subgroup, r: &Subgroup) -> Result<Vec<GroupMorphism>> {
        self.object_index(r)?;
        Ok(self
            .homs_to_carrier(p)?
            .iter()
            .filter(|m| m.images().iter().all(|&y| r.contains(y)))
            .map(|m| m.clone().with_codomain(r))
            .collect())
    }

    /// `Aut_F(Q)`.
    pub fn aut(&self, q: &Subgroup) -> Result<Vec<GroupMorphism>> {
        self.hom_set(q, q)
    }

    /// Whether the map (with any codomain) lies in `F`.
    pub fn contains_morphism(&self, m: &GroupMorphism) -> bool {
        match self.homs_to_carrier(m.domain()) {
            Ok(maps) => maps.binary_search_by(|x| x.cmp(m)).is_ok(),
            Err(_) => false,
        }
    }

    /// `{φ(Q) : φ ∈ Hom_F(Q, S)}`, canonically ordered.
    pub fn conjugacy_class(&self, q: &Subgroup) -> Result<Vec<Subgroup>> {
        let set: BTreeSet<Subgroup> = self.homs_to_carrier(q)?.iter().map(|m| m.image()).collect();
        Ok(set.into_iter().collect())
    }

    /// Restrictions of `c_s` to `Q` for `s ∈ N_S(Q)`.
    pub fn aut_s(&self, q: &Subgroup) -> Vec<GroupMorphism> {
        let g = &*self.ambient;
        let n = g.normalizer(q, &self.carrier);
        normalize(
            n.iter()
                .map(|s| GroupMorphism::conjugation(g, s, q, q))
                .collect(),
        )
    }

    /// `Aut_F(Q)` with its inner subgroup and outer quotient.
    pub fn automizer(&self, q: &Subgroup) -> Result<Automizer> {
        let g = &*self.ambient;
        let mut autos = self.aut(q)?;
        let id = autos
            .iter()
            .position(|m| m.is_identity())
            .ok_or(Error::MorphismNotInF)?;
        autos.swap(0, id);
        let lookup: BTreeMap<&[u32], u32> = autos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.images(), i as u32))
            .collect();
        let find = |m: &GroupMorphism| lookup.get(m.images()).copied();
        let n = autos.len();
        let mut rows = Vec::with_capacity(n);
        for a in &autos {
            let mut row = Vec::with_capacity(n);
            for b in &autos {
                let ab = b.then(a);
                row.push(find(&ab).ok_or(Error::InternalInconsistency(
                    "Aut_F(Q) is not closed under composition".into(),
                ))?);
            }
            rows.push(row);
        }
        let limits = Limits {
            order_cap: n.max(g.limits().order_cap),
            aut_cap: g.limits().aut_cap,
        };
        let group = FiniteGroup::from_table("Aut_F(Q)", rows, limits)?;
        let set_of = |maps: Vec<GroupMorphism>| -> Result<Subgroup> {
            let mut set = ElementSet::empty(n);
            for m in &maps {
                set.insert(find(m).ok_or(Error::InternalInconsistency(
                    "S-conjugation missing from Aut_F(Q)".into(),
                ))?);
            }
            Ok(group.subgroup_unchecked(set))
        };
        let inner = set_of(
            q.iter()
                .map(|x| GroupMorphism::conjugation(g, x, q, q))
                .collect(),
        )?;
        let from_s = set_of(self.aut_s(q))?;
        let quotient = group.quotient(&inner)?;
        Ok(Automizer {
            q: q.clone(),
            autos,
            inner,
            from_s,
            out: quotient.group.with_name("Out_F(Q)"),
            out_projection: quotient.projection,
            group,
        })
    }

    /// Classifies `Q` by the definitions: fully normalized and centralized
    /// over the F-conjugacy class, centric, radical and essential.
    pub fn classify_subgroup(&self, q: &Subgroup) -> Result<SubgroupProfile> {
        let g = &*self.ambient;
        let s = &self.carrier;
        let class = self.conjugacy_class(q)?;
        let n_q = g.normalizer(q, s).order();
        let c_q = g.centralizer(q, s).order();
        let mut larger_normalizer = None;
        let mut larger_centralizer = None;
        let mut centric_witness = None;
        for r in &class {
            if larger_normalizer.is_none() && g.normalizer(r, s).order() > n_q {
                larger_normalizer = Some(r.clone());
            }
            let c = g.centralizer(r, s);
            if larger_centralizer.is_none() && c.order() > c_q {
                larger_centralizer = Some(r.clone());
            }
            if centric_witness.is_none() && !c.is_subgroup_of(r) {
                centric_witness = Some(r.clone());
            }
        }
        let auto = self.automizer(q)?;
        let aut_f_order = auto.group.order();
        let aut_s_order = auto.from_s.order();
        let aut_s_sylow = aut_s_order == p_part(aut_f_order, self.p);
        let out = &auto.out;
        let radical = out.o_p(&out.whole(), self.p).is_trivial();
        let centric = centric_witness.is_none();
        let strongly_embedded = if centric && q != s {
            strongly_p_embedded(out, self.p)?.map(|m| {
                auto.autos
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| m.contains(auto.out_projection[i]))
                    .map(|(_, a)| a.clone())
                    .collect()
            })
        } else {
            None
        };
        let essential = strongly_embedded.is_some();
        let profile = SubgroupProfile {
            q: q.clone(),
            fully_normalized: larger_normalizer.is_none(),
            fully_centralized: larger_centralizer.is_none(),
            centric,
            radical,
            essential,
            aut_f_order,
            aut_s_order,
            out_f_order: out.order(),
            aut_s_sylow,
            larger_normalizer,
            larger_centralizer,
            centric_witness,
            strongly_embedded,
        };
        if profile.essential && !profile.radical {
            return Err(Error::InternalInconsistency(format!(
                "essential subgroup of order {} is not radical",
                q.order()
            )));
        }
        if self.realizer().is_some() && !profile.sylow_criterion_holds() {
            return Err(Error::InternalInconsistency(format!(
                "Sylow criterion for full normalization fails on a realized system at {q:?}"
            )));
        }
        Ok(profile)
    }

    /// Profiles of every subgroup of the carrier.
    pub fn profile_all(&self) -> Result<Vec<SubgroupProfile>> {
        self.objects
            .iter()
            .map(|q| self.classify_subgroup(q))
            .collect()
    }

    pub fn essential_subgroups(&self) -> Result<Essentials> {
        let mut all = Vec::new();
        let mut fully_normalized = Vec::new();
        for q in &self.objects {
            if q == &self.carrier {
                continue;
            }
            let prof = self.classify_subgroup(q)?;
            if prof.essential {
                if prof.fully_normalized {
                    fully_normalized.push(q.clone());
                }
                all.push(q.clone());
            }
        }
        Ok(Essentials {
            all,
            fully_normalized,
        })
    }

    /// Whether `φ(Q)` is fully normalized, without a full classification.
    pub fn is_fully_normalized(&self, q: &Subgroup) -> Result<bool> {
        let g = &*self.ambient;
        let n = g.normalizer(q, &self.carrier).order();
        Ok(self
            .conjugacy_class(q)?
            .iter()
            .all(|r| g.normalizer(r, &self.carrier).order() <= n))
    }

    pub fn is_fully_centralized(&self, q: &Subgroup) -> Result<bool> {
        let g = &*self.ambient;
        let c = g.centralizer(q, &self.carrier).order();
        Ok(self
            .conjugacy_class(q)?
            .iter()
            .all(|r| g.centralizer(r, &self.carrier).order() <= c))
    }

    pub fn is_centric(&self, q: &Subgroup) -> Result<bool> {
        let g = &*self.ambient;
        Ok(self
            .conjugacy_class(q)?
            .iter()
            .all(|r| g.centralizer(r, &self.carrier).is_subgroup_of(r)))
    }

    /// `N_φ = {x ∈ N_S(Q) : ∃ y ∈ N_S(φQ), φ(ˣu) = ʸφ(u) for all u ∈ Q}`.
    pub fn n_phi(&self, phi: &GroupMorphism) -> Result<Subgroup> {
        if !self.contains_morphism(phi) {
            return Err(Error::MorphismNotInF);
        }
        Ok(self.n_phi_unchecked(phi))
    }

    fn n_phi_unchecked(&self, phi: &GroupMorphism) -> Subgroup {
        let g = &*self.ambient;
        let q = phi.domain();
        let image = phi.image();
        let targets: BTreeSet<Vec<u32>> = self
            .aut_s(&image)
            .into_iter()
            .map(|m| m.images().to_vec())
            .collect();
        let inv = phi.inverse();
        let n_q = g.normalizer(q, &self.carrier);
        let members = ElementSet::from_indices(
            g.order(),
            n_q.iter().filter(|&x| {
                let transported: Vec<u32> = image
                    .iter()
                    .map(|v| phi.apply(g.conj(x, inv.apply(v))))
                    .collect();
                targets.contains(&transported)
            }),
        );
        g.subgroup_unchecked(members)
    }

    /// Checks the category axioms, then FS1 to FS3. Returns the first failure.
    pub fn verify_axioms(&self) -> SaturationStatus {
        match self.first_axiom_failure() {
            Ok(None) => SaturationStatus::Verified,
            Ok(Some(w)) => SaturationStatus::Failed(w),
            Err(e) => SaturationStatus::Failed(AxiomFailure::Internal(format!("{e}"))),
        }
    }

    fn first_axiom_failure(&self) -> Result<Option<AxiomFailure>> {
        let g = &*self.ambient;
        let s = &self.carrier;
        for q in &self.objects {
            let maps = self.homs_to_carrier(q)?;
            for m in maps {
                if m.domain() != q || !m.is_injective_hom(g) || !m.image().is_subgroup_of(s) {
                    return Ok(Some(AxiomFailure::Malformed(m.clone())));
                }
            }
            if !maps.iter().any(|m| m.is_identity()) {
                return Ok(Some(AxiomFailure::MissingInclusion(q.clone())));
            }
        }
        for q in &self.objects {
            for m in self.homs_to_carrier(q)? {
                let inv = m.inverse().with_codomain(s);
                if !self.contains_morphism(&inv) {
                    return Ok(Some(AxiomFailure::MissingInverse(m.clone())));
                }
                // restriction is composition with an inclusion
                for sub in self
                    .objects
                    .iter()
                    .filter(|r| r.is_subgroup_of(q) && *r != q)
                {
                    if !self.contains_morphism(&m.restrict(sub)) {
                        let incl = GroupMorphism::inclusion(sub, q);
                        return Ok(Some(AxiomFailure::NotClosed {
                            first: incl,
                            second: m.clone(),
                        }));
                    }
                }
                for second in self.homs_to_carrier(&m.image())? {
                    if !self.contains_morphism(&m.then(second)) {
                        return Ok(Some(AxiomFailure::NotClosed {
                            first: m.clone(),
                            second: second.clone(),
                        }));
                    }
                }
            }
        }
        for q in &self.objects {
            for x in s.iter() {
                let c = GroupMorphism::conjugation(g, x, q, s);
                if !self.contains_morphism(&c) {
                    return Ok(Some(AxiomFailure::Fs1 { q: q.clone(), s: x }));
                }
            }
        }
        let aut_f = self.aut(s)?.len();
        let aut_s = self.aut_s(s).len();
        if aut_s != p_part(aut_f, self.p) {
            return Ok(Some(AxiomFailure::Fs2 { aut_s, aut_f }));
        }
        let mut fully_normalized: BTreeMap<Subgroup, bool> = BTreeMap::new();
        for q in &self.objects {
            for phi in self.homs_to_carrier(q)? {
                let image = phi.image();
                let fnorm = match fully_normalized.get(&image) {
                    Some(&b) => b,
                    None => {
                        let b = self.is_fully_normalized(&image)?;
                        fully_normalized.insert(image.clone(), b);
                        b
                    }
                };
                if !fnorm {
                    continue;
                }
                let n = self.n_phi_unchecked(phi);
                let extends = self
                    .homs_to_carrier(&n)?
                    .iter()
                    .any(|ext| ext.agrees_with(phi, q));
                if !extends {
                    return Ok(Some(AxiomFailure::Fs3 {
                        phi: phi.clone(),
                        n_phi: n,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Whether two systems on the same carrier have identical hom-sets.
    pub fn same_morphisms(&self, other: &FusionSystem) -> Result<bool> {
        if self.carrier != other.carrier || self.ambient.table() != other.ambient.table() {
            return Err(Error::CarrierMismatch);
        }
        for q in &self.objects {
            if self.homs_to_carrier(q)? != other.homs_to_carrier(q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First subgroup whose hom-sets differ, if any.
    pub fn first_difference(&self, other: &FusionSystem) -> Result<Option<Subgroup>> {
        if self.carrier != other.carrier || self.ambient.table() != other.ambient.table() {
            return Err(Error::CarrierMismatch);
        }
        for q in &self.objects {
            if self.homs_to_carrier(q)? != other.homs_to_carrier(q)? {
                return Ok(Some(q.clone()));
            }
        }
        Ok(None)
    }

    /// Whether every morphism is induced by an element of the carrier.
    pub fn is_inner(&self) -> Result<bool> {
        let inner = FusionSystem::inner(self.ambient.clone(), self.carrier.clone(), self.p)?;
        self.same_morphisms(&inner)
    }

    /// Writes `φ ∈ Hom_F(Q, S)` as restrictions of automorphisms of fully
    /// normalized essential subgroups followed by an automorphism of `S`,
    /// by breadth-first search over (subgroup, accumulated map) states.
    pub fn alperin_decompose(&self, phi: &GroupMorphism) -> Result<AlperinDecomposition> {
        if !self.contains_morphism(phi) {
            return Err(Error::MorphismNotInF);
        }
        let s = &self.carrier;
        let q = phi.domain();
        let essentials = self.essential_subgroups()?.fully_normalized;
        let ess_autos: Vec<(Subgroup, Vec<GroupMorphism>)> = essentials
            .into_iter()
            .map(|e| {
                let a = self.aut(&e)?;
                Ok((e, a))
            })
            .collect::<Result<_>>()?;
        let aut_s = self.aut(s)?;
        let target = phi.image();

        // state: current subgroup Q_i and the map Q -> Q_i as images
        type State = (Subgroup, Vec<u32>);
        let start: State = (q.clone(), q.to_members());
        let mut parent: BTreeMap<State, Option<(State, usize, usize)>> = BTreeMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            let (ref cur, ref acc) = state;
            // try to finish with an automorphism of S
            let finish = aut_s.iter().find(|chi| {
                acc.iter()
                    .zip(phi.images())
                    .all(|(&a, &want)| chi.apply(a) == want)
            });
            if let Some(chi) = finish {
                let mut states = alloc::vec![state.clone()];
                let mut steps = Vec::new();
                while let Some(Some((prev, ei, ai))) = parent.get(states.last().unwrap()) {
                    steps.push((*ei, *ai));
                    states.push(prev.clone());
                }
                states.reverse();
                steps.reverse();
                let mut chain: Vec<Subgroup> = states.into_iter().map(|(sub, _)| sub).collect();
                chain.push(target);
                let essentials = steps
                    .iter()
                    .map(|&(ei, _)| ess_autos[ei].0.clone())
                    .collect();
                let mut autos: Vec<GroupMorphism> = steps
                    .iter()
                    .map(|&(ei, ai)| ess_autos[ei].1[ai].clone())
                    .collect();
                autos.push(chi.clone());
                return Ok(AlperinDecomposition {
                    chain,
                    essentials,
                    autos,
                });
            }
            for (ei, (e, autos)) in ess_autos.iter().enumerate() {
                if !cur.is_subgroup_of(e) {
                    continue;
                }
                for (ai, psi) in autos.iter().enumerate() {
                    let next_sub = psi.image_of(cur);
                    let next_acc: Vec<u32> = acc.iter().map(|&a| psi.apply(a)).collect();
                    let next: State = (next_sub, next_acc);
                    if !parent.contains_key(&next) {
                        parent.insert(next.clone(), Some((state.clone(), ei, ai)));
                        queue.push_back(next);
                    }
                }
            }
        }
        Err(Error::NotGenerated)
    }
}
