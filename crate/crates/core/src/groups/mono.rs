use std::fmt;

use super::{Group, GroupError, Subgroup};

/// An injective homomorphism between finite groups, stored elementwise.
#[derive(Clone)]
pub struct GroupMono {
    source: Group,
    target: Group,
    map: Vec<usize>,
}

impl fmt::Debug for GroupMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.source.name(), self.target.name(), self.map)
    }
}

impl PartialEq for GroupMono {
    fn eq(&self, other: &Self) -> bool {
        self.source.fingerprint() == other.source.fingerprint()
            && self.target.fingerprint() == other.target.fingerprint()
            && self.map == other.map
    }
}

impl Eq for GroupMono {}

/// `mono_from_generator_images`: the homomorphism sending the `i`-th
/// generator of `src` to `images[i]`, if it is well defined and injective.
pub fn mono_from_generator_images(
    src: &Group,
    tgt: &Group,
    images: &[usize],
) -> Result<GroupMono, GroupError> {
    let gens = src.generators();
    if images.len() != gens.len() {
        return Err(GroupError::WrongImageCount {
            expected: gens.len(),
            got: images.len(),
        });
    }
    if images.iter().any(|&x| x >= tgt.order()) {
        return Err(GroupError::BadElement("image index out of range".into()));
    }
    let mut map = vec![usize::MAX; src.order()];
    map[0] = 0;
    for (h, from) in src.bfs_words() {
        if let Some((g, i)) = from {
            map[h] = tgt.mul(map[g], images[i]);
        }
    }
    GroupMono::from_map(src, tgt, map)
}

impl GroupMono {
    /// Validates an elementwise map.
    pub fn from_map(src: &Group, tgt: &Group, map: Vec<usize>) -> Result<GroupMono, GroupError> {
        if map.len() != src.order() || map.iter().any(|&x| x >= tgt.order()) {
            return Err(GroupError::NotHomomorphism);
        }
        for a in 0..src.order() {
            for b in 0..src.order() {
                if map[src.mul(a, b)] != tgt.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism);
                }
            }
        }
        let mut hit = vec![false; tgt.order()];
        for &x in &map {
            if hit[x] {
                return Err(GroupError::NotInjective);
            }
            hit[x] = true;
        }
        Ok(GroupMono {
            source: src.clone(),
            target: tgt.clone(),
            map,
        })
    }

    pub fn identity(g: &Group) -> GroupMono {
        GroupMono {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.order()).collect(),
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Images of the source generators.
    pub fn generator_images(&self) -> Vec<usize> {
        self.source.generators().iter().map(|&g| self.map[g]).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupMono) -> Result<GroupMono, GroupError> {
        if self.target.fingerprint() != other.source.fingerprint() {
            return Err(GroupError::Incomposable);
        }
        Ok(GroupMono {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.generator_images())
    }

    /// The image of a subgroup of the source.
    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|&g| self.map[g]).collect();
        Subgroup::generated(&self.target, &gens)
    }

    pub fn is_identity(&self) -> bool {
        self.source.fingerprint() == self.target.fingerprint()
            && self.map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};

    #[test]
    fn spec_examples() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let c3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let c4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let m = mono_from_generator_images(&c2, &c4, &[2]).unwrap();
        assert_eq!(m.map(), &[0, 2]);
        assert_eq!(
            mono_from_generator_images(&c2, &c3, &[1]),
            Err(GroupError::NotHomomorphism)
        );
        assert!(mono_from_generator_images(&c6, &c6, &[1]).unwrap().is_identity());
        assert_eq!(
            mono_from_generator_images(&c4, &c2, &[1]),
            Err(GroupError::NotInjective)
        );
        assert_eq!(
            mono_from_generator_images(&c2, &c4, &[0]),
            Err(GroupError::NotInjective)
        );
    }

    #[test]
    fn composition() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let c4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let a = mono_from_generator_images(&c2, &c4, &[2]).unwrap();
        let b = mono_from_generator_images(&c4, &q8, &[q8.parse_element("y").unwrap()]).unwrap();
        let ab = a.then(&b).unwrap();
        assert_eq!(ab.apply(1), q8.parse_element("x^2").unwrap());
        assert!(b.then(&a).is_err());
    }
}
