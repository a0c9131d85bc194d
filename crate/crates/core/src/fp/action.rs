use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::finite::FiniteGroupRealization;

/// A right action of one finite group on another, `(g, h) -> g^h`, stored as
/// a table indexed by `(acted, actor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    acted_order: usize,
    actor_order: usize,
    table: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action table has the wrong shape")]
    Shape,
    #[error("identity does not act trivially on element {0}")]
    IdentityMoves(usize),
    #[error("(g^h1)^h2 != g^(h1 h2) at g = {g}, h1 = {h1}, h2 = {h2}")]
    NotAnAction { g: usize, h1: usize, h2: usize },
    #[error("element {h} does not act by a homomorphism: ({g1} {g2})^h differs")]
    NotAutomorphism { h: usize, g1: usize, g2: usize },
    #[error("element {h} does not act bijectively")]
    NotBijective { h: usize },
    #[error("generator images do not define an action of the actor group")]
    InconsistentGenerators,
}

impl GroupAction {
    pub fn from_table(acted_order: usize, actor_order: usize, table: Vec<u32>) -> Result<Self, ActionError> {
        if table.len() != acted_order * actor_order || table.iter().any(|&x| x as usize >= acted_order) {
            return Err(ActionError::Shape);
        }
        Ok(Self {
            acted_order,
            actor_order,
            table,
        })
    }

    pub fn from_fn(acted_order: usize, actor_order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, ActionError> {
        let mut table = Vec::with_capacity(acted_order * actor_order);
        for g in 0..acted_order {
            for h in 0..actor_order {
                table.push(f(g, h) as u32);
            }
        }
        Self::from_table(acted_order, actor_order, table)
    }

    /// `g^h = h^-1 g h` on `g` itself.
    pub fn conjugation(g: &FiniteGroupRealization) -> Self {
        Self::from_fn(g.order(), g.order(), |x, y| g.conj(x, y)).expect("conjugation table is well formed")
    }

    pub fn trivial(acted: &FiniteGroupRealization, actor: &FiniteGroupRealization) -> Self {
        Self::from_fn(acted.order(), actor.order(), |x, _| x).expect("trivial table is well formed")
    }

    /// Extends an action given on the actor's generators: `images[i][g]` is
    /// `g^{s_i}` for the i-th entry of `actor.generator_map()`. The images
    /// must be automorphisms and respect the actor's relations; both are
    /// checked.
    pub fn from_generator_images(
        acted: &FiniteGroupRealization,
        actor: &FiniteGroupRealization,
        images: &[Vec<usize>],
    ) -> Result<Self, ActionError> {
        let n = acted.order();
        let gens = actor.generator_map();
        if images.len() != gens.len() || images.iter().any(|p| p.len() != n) {
            return Err(ActionError::Shape);
        }
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; actor.order()];
        perms[actor.identity()] = Some((0..n).collect());
        let mut queue = vec![actor.identity()];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            let px = perms[x].clone().expect("queued elements have a permutation");
            for (s, img) in gens.iter().zip(images) {
                let y = actor.mul(x, *s);
                let py: Vec<usize> = px.iter().map(|&g| img[g]).collect();
                match &perms[y] {
                    Some(existing) if *existing != py => return Err(ActionError::InconsistentGenerators),
                    Some(_) => {}
                    None => {
                        perms[y] = Some(py);
                        queue.push(y);
                    }
                }
            }
            k += 1;
        }
        if perms.iter().any(Option::is_none) {
            return Err(ActionError::InconsistentGenerators);
        }
        let action = Self::from_fn(n, actor.order(), |g, h| perms[h].as_ref().expect("all reached")[g])?;
        action.validate(acted, actor)?;
        Ok(action)
    }

    #[inline]
    pub fn apply(&self, acted: usize, actor: usize) -> usize {
        self.table[acted * self.actor_order + actor] as usize
    }

    pub fn acted_order(&self) -> usize {
        self.acted_order
    }

    pub fn actor_order(&self) -> usize {
        self.actor_order
    }

    /// Checks the identity, composition and automorphism laws exhaustively.
    pub fn validate(&self, acted: &FiniteGroupRealization, actor: &FiniteGroupRealization) -> Result<(), ActionError> {
        if acted.order() != self.acted_order || actor.order() != self.actor_order {
            return Err(ActionError::Shape);
        }
        for g in acted.elements() {
            if self.apply(g, actor.identity()) != g {
                return Err(ActionError::IdentityMoves(g));
            }
        }
        for h in actor.elements() {
            let mut hit = vec![false; self.acted_order];
            for g in acted.elements() {
                hit[self.apply(g, h)] = true;
            }
            if hit.contains(&false) {
                return Err(ActionError::NotBijective { h });
            }
            for g1 in acted.elements() {
                for g2 in acted.elements() {
                    if self.apply(acted.mul(g1, g2), h) != acted.mul(self.apply(g1, h), self.apply(g2, h)) {
                        return Err(ActionError::NotAutomorphism { h, g1, g2 });
                    }
                }
            }
        }
        for h1 in actor.elements() {
            for h2 in actor.elements() {
                let h12 = actor.mul(h1, h2);
                for g in acted.elements() {
                    if self.apply(self.apply(g, h1), h2) != self.apply(g, h12) {
                        return Err(ActionError::NotAnAction { g, h1, h2 });
                    }
                }
            }
        }
        Ok(())
    }
}

/// First triple at which one of the compatibility equations fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatibilityViolation {
    /// `g^(h^g1) != ((g^(g1^-1))^h)^g1`
    OnG { g: usize, g1: usize, h: usize, lhs: usize, rhs: usize },
    /// `h^(g^h1) != ((h^(h1^-1))^g)^h1`
    OnH { h: usize, h1: usize, g: usize, lhs: usize, rhs: usize },
}

impl fmt::Display for CompatibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OnG { g, g1, h, lhs, rhs } => {
                write!(f, "g^(h^g1) = {lhs} but ((g^(g1^-1))^h)^g1 = {rhs} at g = {g}, g1 = {g1}, h = {h}")
            }
            Self::OnH { h, h1, g, lhs, rhs } => {
                write!(f, "h^(g^h1) = {lhs} but ((h^(h1^-1))^g)^h1 = {rhs} at h = {h}, h1 = {h1}, g = {g}")
            }
        }
    }
}

/// Checks both compatibility equations over all triples. Scan order is
/// `(g, g1, h)` for the first equation, then `(h, h1, g)` for the second,
/// each lexicographic in element indices.
pub fn check_compatible(
    g: &FiniteGroupRealization,
    h: &FiniteGroupRealization,
    act_h_on_g: &GroupAction,
    act_g_on_h: &GroupAction,
) -> Result<(), CompatibilityViolation> {
    for x in g.elements() {
        for x1 in g.elements() {
            let x1_inv = g.inv(x1);
            for y in h.elements() {
                let lhs = act_h_on_g.apply(x, act_g_on_h.apply(y, x1));
                let rhs = g.conj(act_h_on_g.apply(g.conj(x, x1_inv), y), x1);
                if lhs != rhs {
                    return Err(CompatibilityViolation::OnG { g: x, g1: x1, h: y, lhs, rhs });
                }
            }
        }
    }
    for y in h.elements() {
        for y1 in h.elements() {
            let y1_inv = h.inv(y1);
            for x in g.elements() {
                let lhs = act_g_on_h.apply(y, act_h_on_g.apply(x, y1));
                let rhs = h.conj(act_g_on_h.apply(h.conj(y, y1_inv), x), y1);
                if lhs != rhs {
                    return Err(CompatibilityViolation::OnH { h: y, h1: y1, g: x, lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("action of H on G: {0}")]
    ActionOnG(ActionError),
    #[error("action of G on H: {0}")]
    ActionOnH(ActionError),
    #[error("actions are not compatible: {0}")]
    Incompatible(CompatibilityViolation),
}

/// Two finite groups acting compatibly on each other.
#[derive(Clone, Debug)]
pub struct CompatiblePair {
    g: Arc<FiniteGroupRealization>,
    h: Arc<FiniteGroupRealization>,
    act_h_on_g: Arc<GroupAction>,
    act_g_on_h: Arc<GroupAction>,
    conjugation: bool,
}

impl CompatiblePair {
    /// Validates both actions and the compatibility equations.
    pub fn new(
        g: Arc<FiniteGroupRealization>,
        h: Arc<FiniteGroupRealization>,
        act_h_on_g: GroupAction,
        act_g_on_h: GroupAction,
    ) -> Result<Self, PairError> {
        act_h_on_g.validate(&g, &h).map_err(PairError::ActionOnG)?;
        act_g_on_h.validate(&h, &g).map_err(PairError::ActionOnH)?;
        check_compatible(&g, &h, &act_h_on_g, &act_g_on_h).map_err(PairError::Incompatible)?;
        Ok(Self {
            g,
            h,
            act_h_on_g: Arc::new(act_h_on_g),
            act_g_on_h: Arc::new(act_g_on_h),
            conjugation: false,
        })
    }

    /// `G` acting on itself by conjugation from both sides.
    pub fn conjugation(g: Arc<FiniteGroupRealization>) -> Self {
        let act = Arc::new(GroupAction::conjugation(&g));
        Self {
            h: Arc::clone(&g),
            g,
            act_h_on_g: Arc::clone(&act),
            act_g_on_h: act,
            conjugation: true,
        }
    }

    /// Both actions trivial. Always compatible.
    pub fn trivial(g: Arc<FiniteGroupRealization>, h: Arc<FiniteGroupRealization>) -> Self {
        Self {
            act_h_on_g: Arc::new(GroupAction::trivial(&g, &h)),
            act_g_on_h: Arc::new(GroupAction::trivial(&h, &g)),
            g,
            h,
            conjugation: false,
        }
    }

    pub fn g(&self) -> &FiniteGroupRealization {
        &self.g
    }

    pub fn h(&self) -> &FiniteGroupRealization {
        &self.h
    }

    pub fn g_arc(&self) -> &Arc<FiniteGroupRealization> {
        &self.g
    }

    pub fn act_h_on_g(&self) -> &GroupAction {
        &self.act_h_on_g
    }

    pub fn act_g_on_h(&self) -> &GroupAction {
        &self.act_g_on_h
    }

    /// True for pairs built by [`CompatiblePair::conjugation`].
    pub fn is_conjugation(&self) -> bool {
        self.conjugation
    }
}

/// `D_H(G)`: the subgroup of `G` generated by all `g^-1 g^h`.
pub fn derived_subgroup_dh(pair: &CompatiblePair) -> Vec<usize> {
    let g = pair.g();
    let mut gens = Vec::new();
    let mut seen = vec![false; g.order()];
    for x in g.elements() {
        for y in pair.h().elements() {
            let d = g.mul(g.inv(x), pair.act_h_on_g().apply(x, y));
            if !seen[d] {
                seen[d] = true;
                gens.push(d);
            }
        }
    }
    g.generate(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{catalog, realize, EnumOptions, FpPresentation};

    fn group(text: &str) -> Arc<FiniteGroupRealization> {
        let p: FpPresentation = text.parse().unwrap();
        Arc::new(realize(&p, &EnumOptions::default()).unwrap())
    }

    /// Direct evaluation of both equations, written independently of
    /// `check_compatible`: collects every failing triple.
    fn brute_force_violations(
        g: &FiniteGroupRealization,
        h: &FiniteGroupRealization,
        a: &GroupAction,
        b: &GroupAction,
    ) -> usize {
        let gconj = |x: usize, y: usize| g.mul(g.mul(g.inv(y), x), y);
        let hconj = |x: usize, y: usize| h.mul(h.mul(h.inv(y), x), y);
        let mut bad = 0;
        for x in 0..g.order() {
            for x1 in 0..g.order() {
                for y in 0..h.order() {
                    if a.apply(x, b.apply(y, x1)) != gconj(a.apply(gconj(x, g.inv(x1)), y), x1) {
                        bad += 1;
                    }
                }
            }
        }
        for y in 0..h.order() {
            for y1 in 0..h.order() {
                for x in 0..g.order() {
                    if b.apply(y, a.apply(x, y1)) != hconj(b.apply(hconj(y, h.inv(y1)), x), y1) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    #[test]
    fn conjugation_is_compatible_on_catalog() {
        for e in catalog::catalog().into_iter().filter(|e| e.order <= 16) {
            let g = group(&e.presentation);
            let act = GroupAction::conjugation(&g);
            act.validate(&g, &g).unwrap();
            assert_eq!(check_compatible(&g, &g, &act, &act), Ok(()), "{}", e.name);
        }
    }

    #[test]
    fn trivial_actions_are_compatible() {
        let g = group("< a, b | a^2, b^2, (a b)^3 >");
        let h = group("< r, s | r^4, s^2, (s r)^2 >");
        let a = GroupAction::trivial(&g, &h);
        let b = GroupAction::trivial(&h, &g);
        assert!(check_compatible(&g, &h, &a, &b).is_ok());
        assert!(CompatiblePair::new(g, h, a, b).is_ok());
    }

    /// Automorphism of `Z2 x Z2 = <a, b>` exchanging `a` and `b`, as a
    /// permutation of element indices.
    fn swap(v: &FiniteGroupRealization) -> Vec<usize> {
        let (a, b) = (v.generator_map()[0], v.generator_map()[1]);
        let ab = v.mul(a, b);
        (0..4)
            .map(|x| match x {
                x if x == a => b,
                x if x == b => a,
                x => {
                    debug_assert!(x == ab || x == v.identity());
                    x
                }
            })
            .collect()
    }

    #[test]
    fn swapping_actions_on_klein_group() {
        let v = group("< a, b | a^2, b^2, [a, b] >");
        let id: Vec<usize> = (0..4).collect();
        let sw = swap(&v);
        // the first generator swaps the factors, the second acts trivially
        let one = GroupAction::from_generator_images(&v, &v, &[sw.clone(), id.clone()]).unwrap();
        let triv = GroupAction::trivial(&v, &v);
        // with the other side trivial, both equations reduce to identities
        assert_eq!(brute_force_violations(&v, &v, &one, &triv), 0);
        assert!(check_compatible(&v, &v, &one, &triv).is_ok());
        assert!(check_compatible(&v, &v, &triv, &one).is_ok());
        // swapping on both sides breaks compatibility
        let bad = brute_force_violations(&v, &v, &one, &one);
        assert!(bad > 0);
        let report = check_compatible(&v, &v, &one, &one).unwrap_err();
        let CompatibilityViolation::OnG { g, g1, h, lhs, rhs } = report else {
            panic!("first equation is scanned first: {report}");
        };
        assert_ne!(lhs, rhs);
        // no earlier triple in scan order fails
        for x in 0..4 {
            for x1 in 0..4 {
                for y in 0..4 {
                    if (x, x1, y) >= (g, g1, h) {
                        continue;
                    }
                    let l = one.apply(x, one.apply(y, x1));
                    let r = v.conj(one.apply(v.conj(x, v.inv(x1)), y), x1);
                    assert_eq!(l, r);
                }
            }
        }
        assert!(matches!(
            CompatiblePair::new(Arc::clone(&v), Arc::clone(&v), one.clone(), one),
            Err(PairError::Incompatible(_))
        ));
    }

    #[test]
    fn invalid_generator_images_are_rejected() {
        let z4 = group("< a | a^4 >");
        let z2 = group("< b | b^2 >");
        // a -> a^-1 is an automorphism of order 2, compatible with b^2 = 1
        let inv: Vec<usize> = (0..4).map(|x| z4.inv(x)).collect();
        assert!(GroupAction::from_generator_images(&z4, &z2, &[inv]).is_ok());
        // a constant map is not an automorphism
        let bad = vec![0; 4];
        assert!(GroupAction::from_generator_images(&z4, &z2, &[bad]).is_err());
        // an order-4 automorphism of Z2 x Z2 does not exist; an order-3 one
        // cannot be the image of an element of order 2
        let v = group("< a, b | a^2, b^2, [a, b] >");
        let (a, b) = (v.generator_map()[0], v.generator_map()[1]);
        let ab = v.mul(a, b);
        let mut rot = vec![0; 4];
        rot[v.identity()] = v.identity();
        rot[a] = b;
        rot[b] = ab;
        rot[ab] = a;
        assert_eq!(
            GroupAction::from_generator_images(&v, &z2, &[rot]),
            Err(ActionError::InconsistentGenerators)
        );
    }

    #[test]
    fn derivative_subgroup_examples() {
        let d4 = group("< r, s | r^4, s^2, (s r)^2 >");
        let dh = derived_subgroup_dh(&CompatiblePair::conjugation(Arc::clone(&d4)));
        assert_eq!(dh.len(), 2);
        assert!(d4.is_central(&dh));
        assert_eq!(dh, d4.derived_subgroup());
        let s3 = group("< a, b | a^2, b^2, (a b)^3 >");
        assert_eq!(derived_subgroup_dh(&CompatiblePair::trivial(Arc::clone(&s3), d4)), vec![s3.identity()]);
        assert_eq!(derived_subgroup_dh(&CompatiblePair::conjugation(Arc::clone(&s3))).len(), 3);
    }
}
