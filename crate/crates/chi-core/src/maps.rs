//! Formal integer combinations of concrete coordinate maps between
//! simplices and cubes, and the Eilenberg-Zilber compatibility checks.
//!
//! A [`CoordMap`] stores explicit polynomial components. Maps out of a
//! simplex are compared modulo the affine relation `z_0 + ... + z_N = 1`
//! of each simplex source block: canonicalization substitutes
//! `z_0 = 1 - z_1 - ... - z_N` before components are compared or used as
//! keys of a [`FormalMapSum`].
//!
//! Conventions pinned by the compatibility diagram (and machine-checked by
//! `verify_ez_diagram`): the degeneracy factors of `lambda_tau` use the
//! 0-based indices `s_{tau(i)-1}`, and the cubical shuffle action sends
//! `t` to `(t_{tau(1)}, ..., t_{tau(m+n)})`, split after the first `m`
//! coordinates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::perm::{shuffles, Permutation};
use crate::poly::{MultiPoly, Var};
use crate::report::VerificationReport;

/// A factor of a (product) space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Space {
    /// `Simplex(n)` with `n + 1` barycentric coordinates.
    Simplex(u32),
    /// `Cube(n)` with `n` coordinates.
    Cube(u32),
}

impl Space {
    pub fn coords(&self) -> usize {
        match *self {
            Space::Simplex(n) => n as usize + 1,
            Space::Cube(n) => n as usize,
        }
    }
}

fn total_coords(spaces: &[Space]) -> usize {
    spaces.iter().map(|s| s.coords()).sum()
}

/// A morphism between products of simplices and cubes with polynomial
/// components. Source coordinates are the variables `0..source_dim`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CoordMap {
    pub source: Vec<Space>,
    pub target: Vec<Space>,
    comps: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    IncompatibleKinds,
    IndexOutOfRange,
    NotAShuffle,
}

impl CoordMap {
    /// Builds and canonicalizes. Panics if the component count does not
    /// match the target dimension.
    pub fn new(source: Vec<Space>, target: Vec<Space>, comps: Vec<MultiPoly>) -> Self {
        assert_eq!(comps.len(), total_coords(&target), "component count");
        let mut map = CoordMap {
            source,
            target,
            comps,
        };
        map.canonicalize();
        map
    }

    /// Substitutes `z_0 = 1 - z_1 - ... - z_N` for every simplex block of
    /// the source, making equality mean equality as maps of simplices.
    fn canonicalize(&mut self) {
        let mut subst: BTreeMap<Var, MultiPoly> = BTreeMap::new();
        let mut offset: usize = 0;
        for s in &self.source {
            if let Space::Simplex(n) = s {
                let mut rest = MultiPoly::one();
                for k in 1..=*n as usize {
                    rest = rest.sub(&MultiPoly::var((offset + k) as Var));
                }
                subst.insert(offset as Var, rest);
            }
            offset += s.coords();
        }
        if !subst.is_empty() {
            for c in &mut self.comps {
                *c = c.substitute(&subst);
            }
        }
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn identity(spaces: Vec<Space>) -> Self {
        let dim = total_coords(&spaces);
        let comps = (0..dim as Var).map(MultiPoly::var).collect();
        CoordMap::new(spaces.clone(), spaces, comps)
    }

    /// `g` after `f` (first `f`, then `g`). Errors if the kinds mismatch.
    pub fn compose(g: &CoordMap, f: &CoordMap) -> Result<CoordMap, MapError> {
        if f.target != g.source {
            return Err(MapError::IncompatibleKinds);
        }
        let subst: BTreeMap<Var, MultiPoly> = f
            .comps
            .iter()
            .enumerate()
            .map(|(i, p)| (i as Var, p.clone()))
            .collect();
        let comps = g.comps.iter().map(|c| c.substitute(&subst)).collect();
        Ok(CoordMap::new(f.source.clone(), g.target.clone(), comps))
    }

    /// Product map `f x g` on the concatenated blocks.
    pub fn product(f: &CoordMap, g: &CoordMap) -> CoordMap {
        let shift = total_coords(&f.source) as Var;
        let mut source = f.source.clone();
        source.extend_from_slice(&g.source);
        let mut target = f.target.clone();
        target.extend_from_slice(&g.target);
        let mut comps = f.comps.clone();
        comps.extend(g.comps.iter().map(|c| c.relabel(&|v| v + shift)));
        CoordMap::new(source, target, comps)
    }
}

/// Face map `iota_r : Simplex(b-1) -> Simplex(b)`, inserting `z_r = 0`.
pub fn face_map(r: u32, b: u32) -> Result<CoordMap, MapError> {
    if r > b || b == 0 {
        return Err(MapError::IndexOutOfRange);
    }
    let mut comps = Vec::with_capacity(b as usize + 1);
    for i in 0..=b {
        if i < r {
            comps.push(MultiPoly::var(i as Var));
        } else if i == r {
            comps.push(MultiPoly::zero());
        } else {
            comps.push(MultiPoly::var((i - 1) as Var));
        }
    }
    Ok(CoordMap::new(
        alloc::vec![Space::Simplex(b - 1)],
        alloc::vec![Space::Simplex(b)],
        comps,
    ))
}

/// Degeneracy `s_k : Simplex(n) -> Simplex(n-1)`, adding the adjacent
/// coordinates `z_k + z_{k+1}`.
pub fn degeneracy(k: u32, n: u32) -> Result<CoordMap, MapError> {
    if n == 0 || k > n - 1 {
        return Err(MapError::IndexOutOfRange);
    }
    let mut comps = Vec::with_capacity(n as usize);
    for i in 0..n {
        if i < k {
            comps.push(MultiPoly::var(i as Var));
        } else if i == k {
            comps.push(MultiPoly::var(i as Var).add(&MultiPoly::var((i + 1) as Var)));
        } else {
            comps.push(MultiPoly::var((i + 1) as Var));
        }
    }
    Ok(CoordMap::new(
        alloc::vec![Space::Simplex(n)],
        alloc::vec![Space::Simplex(n - 1)],
        comps,
    ))
}

/// `phi_N : Simplex(N) -> Cube(N)`, the prefix sums
/// `(z_0, z_0 + z_1, ..., z_0 + ... + z_{N-1})`.
pub fn phi_map(n: u32) -> CoordMap {
    let mut comps = Vec::with_capacity(n as usize);
    let mut acc = MultiPoly::zero();
    for i in 0..n {
        acc = acc.add(&MultiPoly::var(i as Var));
        comps.push(acc.clone());
    }
    CoordMap::new(
        alloc::vec![Space::Simplex(n)],
        alloc::vec![Space::Cube(n)],
        comps,
    )
}

/// `d_N : Cube(N) -> Simplex(N)`, `(t_1, t_2 - t_1, ..., 1 - t_N)`.
pub fn dif_map(n: u32) -> CoordMap {
    let mut comps = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let c = if i == 0 && n == 0 {
            MultiPoly::one()
        } else if i == 0 {
            MultiPoly::var(0)
        } else if i < n {
            MultiPoly::var(i as Var).sub(&MultiPoly::var((i - 1) as Var))
        } else {
            MultiPoly::one().sub(&MultiPoly::var((n - 1) as Var))
        };
        comps.push(c);
    }
    CoordMap::new(
        alloc::vec![Space::Cube(n)],
        alloc::vec![Space::Simplex(n)],
        comps,
    )
}

/// `lambda_tau : Simplex(m+n) -> Simplex(m) x Simplex(n)` for a shuffle
/// `tau`: the composite degeneracies
/// `(s_{tau(m+1)-1} o ... o s_{tau(m+n)-1}) x (s_{tau(1)-1} o ... o s_{tau(m)-1})`.
pub fn lambda_map(tau: &Permutation, m: usize, n: usize) -> Result<CoordMap, MapError> {
    if tau.len() != m + n {
        return Err(MapError::NotAShuffle);
    }
    for i in 1..m {
        if tau.apply(i) >= tau.apply(i + 1) {
            return Err(MapError::NotAShuffle);
        }
    }
    for i in (m + 1)..(m + n) {
        if tau.apply(i) >= tau.apply(i + 1) {
            return Err(MapError::NotAShuffle);
        }
    }
    let composite = |indices: &[usize]| -> CoordMap {
        // indices are applied right-to-left: the last entry acts first on
        // Simplex(m+n), each application dropping the dimension by one.
        let mut dim = (m + n) as u32;
        let mut acc = CoordMap::identity(alloc::vec![Space::Simplex(dim)]);
        for &idx in indices.iter().rev() {
            let s = degeneracy(idx as u32 - 1, dim).expect("valid degeneracy index");
            acc = CoordMap::compose(&s, &acc).expect("kinds match");
            dim -= 1;
        }
        acc
    };
    let first: Vec<usize> = ((m + 1)..=(m + n)).map(|i| tau.apply(i)).collect();
    let second: Vec<usize> = (1..=m).map(|i| tau.apply(i)).collect();
    let f = composite(&first);
    let g = composite(&second);
    // Shared source: combine without re-shifting variables.
    let mut comps = f.components().to_vec();
    comps.extend_from_slice(g.components());
    Ok(CoordMap::new(
        alloc::vec![Space::Simplex((m + n) as u32)],
        alloc::vec![Space::Simplex(m as u32), Space::Simplex(n as u32)],
        comps,
    ))
}

/// The cubical shuffle action `tau* : Cube(m+n) -> Cube(m) x Cube(n)`,
/// `t -> (t_{tau(1)}, ..., t_{tau(m+n)})` split after `m` coordinates.
pub fn cube_shuffle_map(tau: &Permutation, m: usize, n: usize) -> CoordMap {
    let comps: Vec<MultiPoly> = (1..=(m + n))
        .map(|i| MultiPoly::var((tau.apply(i) - 1) as Var))
        .collect();
    CoordMap::new(
        alloc::vec![Space::Cube((m + n) as u32)],
        alloc::vec![Space::Cube(m as u32), Space::Cube(n as u32)],
        comps,
    )
}

/// Integer combination of canonicalized coordinate maps.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalMapSum {
    pub terms: BTreeMap<CoordMap, i64>,
}

impl FormalMapSum {
    pub fn zero() -> Self {
        FormalMapSum::default()
    }

    pub fn singleton(map: CoordMap) -> Self {
        let mut s = FormalMapSum::zero();
        s.add_term(map, 1);
        s
    }

    pub fn add_term(&mut self, map: CoordMap, coeff: i64) {
        use alloc::collections::btree_map::Entry;
        if coeff == 0 {
            return;
        }
        match self.terms.entry(map) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FormalMapSum) -> FormalMapSum {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> FormalMapSum {
        let mut out = FormalMapSum::zero();
        for (m, &k) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Bilinear composition `g o f` of formal sums.
pub fn compose_sums(g: &FormalMapSum, f: &FormalMapSum) -> Result<FormalMapSum, MapError> {
    let mut out = FormalMapSum::zero();
    for (mg, &cg) in &g.terms {
        for (mf, &cf) in &f.terms {
            out.add_term(CoordMap::compose(mg, mf)?, cg * cf);
        }
    }
    Ok(out)
}

/// The simplicial EZ morphism `psi_{m,n} = sum_tau eps(tau) lambda_tau`.
pub fn ez_simplicial(m: usize, n: usize) -> FormalMapSum {
    let mut out = FormalMapSum::zero();
    for tau in &shuffles(m, n).elements {
        out.add_term(lambda_map(tau, m, n).expect("shuffle"), tau.sign());
    }
    out
}

/// The cubical EZ morphism `psi-cube_{m,n} = sum_tau eps(tau) tau*`.
pub fn ez_cubical(m: usize, n: usize) -> FormalMapSum {
    let mut out = FormalMapSum::zero();
    for tau in &shuffles(m, n).elements {
        out.add_term(cube_shuffle_map(tau, m, n), tau.sign());
    }
    out
}

/// Boundary element `delta = sum_r (-1)^r iota_r : Simplex(b-1) -> Simplex(b)`.
pub fn boundary_sum(b: u32) -> FormalMapSum {
    let mut out = FormalMapSum::zero();
    for r in 0..=b {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        out.add_term(face_map(r, b).expect("face"), sign);
    }
    out
}

/// Checks `(phi_m x phi_n) o psi_{m,n} = psi-cube_{m,n} o phi_{m+n}`.
pub fn verify_ez_diagram(m: usize, n: usize) -> VerificationReport {
    let phis = CoordMap::product(&phi_map(m as u32), &phi_map(n as u32));
    let lhs = compose_sums(&FormalMapSum::singleton(phis), &ez_simplicial(m, n))
        .expect("kinds match");
    let rhs = compose_sums(
        &ez_cubical(m, n),
        &FormalMapSum::singleton(phi_map((m + n) as u32)),
    )
    .expect("kinds match");
    let pass = lhs == rhs;
    VerificationReport::new(
        "ez-diagram",
        alloc::vec![("m", m as i64), ("n", n as i64)],
    )
    .with_result(pass, lhs.num_terms(), rhs.num_terms())
}

/// Checks the boundary compatibility
/// `psi_{m,n} o delta = (delta x 1) o psi_{m-1,n} + (-1)^m (1 x delta) o psi_{m,n-1}`,
/// with `psi_{-1,n} = psi_{m,-1} = 0`.
pub fn verify_co_leibniz(m: usize, n: usize) -> VerificationReport {
    assert!(m + n >= 1);
    let lhs = compose_sums(&ez_simplicial(m, n), &boundary_sum((m + n) as u32))
        .expect("kinds match");

    let mut rhs = FormalMapSum::zero();
    if m >= 1 {
        let mut delta_x_one = FormalMapSum::zero();
        for r in 0..=m as u32 {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            delta_x_one.add_term(
                CoordMap::product(
                    &face_map(r, m as u32).expect("face"),
                    &CoordMap::identity(alloc::vec![Space::Simplex(n as u32)]),
                ),
                sign,
            );
        }
        rhs = rhs.add(&compose_sums(&delta_x_one, &ez_simplicial(m - 1, n)).expect("kinds match"));
    }
    if n >= 1 {
        let mut one_x_delta = FormalMapSum::zero();
        for r in 0..=n as u32 {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            one_x_delta.add_term(
                CoordMap::product(
                    &CoordMap::identity(alloc::vec![Space::Simplex(m as u32)]),
                    &face_map(r, n as u32).expect("face"),
                ),
                sign,
            );
        }
        let signed = if m % 2 == 0 { 1 } else { -1 };
        rhs = rhs.add(
            &compose_sums(&one_x_delta, &ez_simplicial(m, n - 1))
                .expect("kinds match")
                .scale(signed),
        );
    }
    let pass = lhs == rhs;
    VerificationReport::new(
        "co-leibniz",
        alloc::vec![("m", m as i64), ("n", n as i64)],
    )
    .with_result(pass, lhs.num_terms(), rhs.num_terms())
}

/// Checks coassociativity
/// `(psi_{m,n} x 1_r) o psi_{m+n,r} = (1_m x psi_{n,r}) o psi_{m,n+r}`.
pub fn verify_coassoc(m: usize, n: usize, r: usize) -> VerificationReport {
    let id_r = CoordMap::identity(alloc::vec![Space::Simplex(r as u32)]);
    let mut left_outer = FormalMapSum::zero();
    for (map, &c) in &ez_simplicial(m, n).terms {
        left_outer.add_term(CoordMap::product(map, &id_r), c);
    }
    let lhs = compose_sums(&left_outer, &ez_simplicial(m + n, r)).expect("kinds match");

    let id_m = CoordMap::identity(alloc::vec![Space::Simplex(m as u32)]);
    let mut right_outer = FormalMapSum::zero();
    for (map, &c) in &ez_simplicial(n, r).terms {
        right_outer.add_term(CoordMap::product(&id_m, map), c);
    }
    let rhs = compose_sums(&right_outer, &ez_simplicial(m, n + r)).expect("kinds match");

    let pass = lhs == rhs;
    VerificationReport::new(
        "coassociativity",
        alloc::vec![("m", m as i64), ("n", n as i64), ("r", r as i64)],
    )
    .with_result(pass, lhs.num_terms(), rhs.num_terms())
    .detail(
        "reading",
        format!("(psi_{{{m},{n}}} x 1_{r}) o psi_{{{mn},{r}}} vs (1_{m} x psi_{{{n},{r}}}) o psi_{{{m},{nr}}}", mn = m + n, nr = n + r),
    )
}
