//! Homomorphisms between permutation groups, given by generator images.
//!
//! Both directions are indexed with tracked stabilizer chains, which gives
//! images, preimages and the kernel without enumerating elements.

use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{BuildOptions, StabChain, Tracked};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

type MapFn = Arc<dyn Fn(&Permutation) -> Permutation + Send + Sync>;

/// A homomorphism `source → image` onto the group generated by the generator images.
#[derive(Clone)]
pub struct Hom {
    source: PermGroup,
    image: PermGroup,
    gen_images: Vec<Permutation>,
    map: Option<MapFn>,
    fwd: Arc<OnceLock<StabChain<Tracked>>>,
    bwd: Arc<StabChain<Tracked>>,
    kernel: Arc<OnceLock<PermGroup>>,
}

impl Hom {
    /// Homomorphism defined by images of `source.gens()`. The map is assumed
    /// to be well defined; use [`Hom::check_well_defined`] to certify it.
    pub fn from_images(
        source: &PermGroup,
        gen_images: Vec<Permutation>,
        image_degree: usize,
        image_order: Option<u64>,
    ) -> Result<Self> {
        Self::build(source, gen_images, image_degree, image_order, None)
    }

    /// Homomorphism given by an explicit map, evaluated on the generators.
    pub fn from_fn<F>(
        source: &PermGroup,
        image_degree: usize,
        image_order: Option<u64>,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&Permutation) -> Permutation + Send + Sync + 'static,
    {
        let imgs = source.gens().iter().map(&f).collect();
        Self::build(source, imgs, image_degree, image_order, Some(Arc::new(f)))
    }

    fn build(
        source: &PermGroup,
        gen_images: Vec<Permutation>,
        image_degree: usize,
        image_order: Option<u64>,
        map: Option<MapFn>,
    ) -> Result<Self> {
        for x in &gen_images {
            if x.degree() != image_degree {
                return Err(Error::DegreeMismatch(image_degree, x.degree()));
            }
        }
        source.try_index()?;
        let tracked: Vec<Tracked> = gen_images
            .iter()
            .zip(source.gens())
            .map(|(a, s)| Tracked {
                act: a.clone(),
                src: s.clone(),
            })
            .collect();
        let identity = Tracked {
            act: Permutation::identity(image_degree),
            src: source.identity(),
        };
        let bwd = StabChain::build(
            image_degree,
            &tracked,
            identity,
            &BuildOptions {
                known_order: image_order.map(|o| o as u128),
                ..Default::default()
            },
        )?;
        let order = bwd.order() as u64;
        let image = PermGroup::with_known_order(image_degree, gen_images.clone(), order);
        Ok(Hom {
            source: source.clone(),
            image,
            gen_images,
            map,
            fwd: Arc::new(OnceLock::new()),
            bwd: Arc::new(bwd),
            kernel: Arc::new(OnceLock::new()),
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image_group(&self) -> &PermGroup {
        &self.image
    }

    pub fn gen_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    fn fwd(&self) -> &StabChain<Tracked> {
        self.fwd.get_or_init(|| {
            let n = self.source.degree();
            let tracked: Vec<Tracked> = self
                .source
                .gens()
                .iter()
                .zip(&self.gen_images)
                .map(|(s, a)| Tracked {
                    act: s.clone(),
                    src: a.clone(),
                })
                .collect();
            StabChain::build(
                n,
                &tracked,
                Tracked {
                    act: Permutation::identity(n),
                    src: Permutation::identity(self.image.degree()),
                },
                &BuildOptions {
                    known_order: Some(self.source.order() as u128),
                    ..Default::default()
                },
            )
            .expect("source already indexed")
        })
    }

    /// Image of an element of the source group.
    pub fn image(&self, g: &Permutation) -> Permutation {
        if let Some(f) = &self.map {
            return f(g);
        }
        let start = Tracked {
            act: g.clone(),
            src: Permutation::identity(self.image.degree()),
        };
        let (res, _) = self.fwd().sift_from(&start, 0);
        debug_assert!(res.act.is_identity(), "element outside the source group");
        res.src.inverse()
    }

    /// Some preimage, or `None` if `x` is not in the image.
    pub fn preimage(&self, x: &Permutation) -> Option<Permutation> {
        let start = Tracked {
            act: x.clone(),
            src: self.source.identity(),
        };
        let (res, j) = self.bwd.sift_from(&start, 0);
        (j == self.bwd.depth() && res.act.is_identity()).then(|| res.src.inverse())
    }

    pub fn kernel(&self) -> &PermGroup {
        self.kernel.get_or_init(|| {
            let n = self.source.degree();
            let target = self.source.order() / self.image.order();
            let mut gens: Vec<Permutation> = self
                .bwd
                .kernel_residues()
                .iter()
                .map(|t| t.src.clone())
                .collect();
            let mut k = PermGroup::from_gens(n, gens.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(0x6b65_726e);
            while k.order() < target {
                let g = self.source.random_element(&mut rng);
                let p = self.preimage(&self.image(&g)).expect("image element");
                let r = g.then(&p.inverse());
                if !k.contains(&r) {
                    gens.push(r);
                    k = PermGroup::from_gens(n, gens.clone());
                }
            }
            k
        })
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage_group(&self, sub: &PermGroup) -> PermGroup {
        let mut gens = self.kernel().gens().to_vec();
        for x in sub.gens() {
            gens.push(self.preimage(x).expect("subgroup of the image"));
        }
        PermGroup::from_gens(self.source.degree(), gens)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &PermGroup) -> PermGroup {
        PermGroup::from_gens(
            self.image.degree(),
            sub.gens().iter().map(|g| self.image(g)).collect(),
        )
    }

    /// Certifies that the generator images define a homomorphism: the graph
    /// subgroup has the same order as the source.
    pub fn check_well_defined(&self) -> bool {
        graph_group(&self.source, &self.gen_images).order() == self.source.order()
    }

    /// Injective (kernel trivial).
    pub fn is_injective(&self) -> bool {
        self.image.order() == self.source.order()
    }

    /// Composition `self` then `other`.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        let imgs = self
            .source
            .gens()
            .iter()
            .map(|g| other.image(&self.image(g)))
            .collect();
        Hom::from_images(&self.source, imgs, other.image.degree(), None)
    }
}

/// Diagonal group `{(g, φ(g))}` acting on the disjoint union of both domains.
pub fn graph_group(source: &PermGroup, gen_images: &[Permutation]) -> PermGroup {
    let n = source.degree();
    let m = gen_images.first().map(|p| p.degree()).unwrap_or(0);
    let gens = source
        .gens()
        .iter()
        .zip(gen_images)
        .map(|(s, a)| {
            let mut v: Vec<u32> = s.images().to_vec();
            v.extend(a.images().iter().map(|&x| x + n as u32));
            Permutation::from_images_unchecked(v)
        })
        .collect();
    PermGroup::from_gens(n + m, gens)
}

/// Restriction of `group` to an invariant point set, renumbered in the given order.
pub fn restriction(group: &PermGroup, points: &[usize]) -> Result<Hom> {
    let mut position = vec![u32::MAX; group.degree()];
    for (i, &x) in points.iter().enumerate() {
        position[x] = i as u32;
    }
    for g in group.gens() {
        if points.iter().any(|&x| position[g.image(x)] == u32::MAX) {
            return Err(Error::Invalid("point set is not invariant".into()));
        }
    }
    let pts: Vec<usize> = points.to_vec();
    Hom::from_fn(group, points.len(), None, move |g| g.restrict(&pts, &position))
}

/// Action on a block system (blocks given as disjoint point lists covering the domain).
pub fn block_action(group: &PermGroup, blocks: &[Vec<usize>]) -> Result<Hom> {
    let mut block_of = vec![u32::MAX; group.degree()];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = i as u32;
        }
    }
    let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    for g in group.gens() {
        for b in blocks {
            let target = block_of[g.image(b[0])];
            if b.iter().any(|&x| block_of[g.image(x)] != target) {
                return Err(Error::Invalid("not a block system".into()));
            }
        }
    }
    let k = blocks.len();
    Hom::from_fn(group, k, None, move |g| {
        Permutation::from_images_unchecked(
            reps.iter().map(|&x| block_of[g.image(x)]).collect(),
        )
    })
}
