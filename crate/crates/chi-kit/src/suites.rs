//! The verification suites: which instances each subcommand runs, and the
//! statement table mapping statement identifiers to what they assert.

use std::collections::BTreeMap;

use chi_core::character::{self, all_permutations};
use chi_core::cones;
use chi_core::constants;
use chi_core::e1;
use chi_core::forms;
use chi_core::maps;
use chi_core::perm::Permutation;
use chi_core::report::VerificationReport;
use chi_core::total;

use crate::config::RunConfig;

/// One schedulable verification instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Shuffle { m: usize, n: usize, negated: bool },
    Multiplicativity { sigma: Permutation, tau: Permutation, seed: u64 },
    Brion { m: usize, n: usize },
    Enumeration { n: usize, bound: i64 },
    EzDiagram { m: usize, n: usize },
    CoLeibniz { m: usize, n: usize },
    Coassoc { m: usize, n: usize, r: usize },
    ThetaPullback { n: u32 },
    ThetaEz { m: u32, n: u32 },
    ConeClaim,
    ConeChainMap,
    ConeHomotopy,
    E1Page { p_max: u32 },
    Dsq { models: usize, samples: usize, seed: u64 },
    Leibniz { pairs: usize, seed: u64 },
    Constants { d_max: u32, n_max: u32 },
}

impl Instance {
    pub fn run(&self) -> VerificationReport {
        match self {
            Instance::Shuffle { m, n, negated } => {
                if *negated {
                    character::verify_shuffle_relation_negated(*m, *n)
                } else {
                    character::verify_shuffle_relation(*m, *n)
                }
            }
            Instance::Multiplicativity { sigma, tau, seed } => {
                character::verify_multiplicativity(sigma, tau, *seed)
            }
            Instance::Brion { m, n } => cones::verify_brion(*m, *n),
            Instance::Enumeration { n, bound } => cones::enumerate_oracle(*n, *bound).report,
            Instance::EzDiagram { m, n } => maps::verify_ez_diagram(*m, *n),
            Instance::CoLeibniz { m, n } => maps::verify_co_leibniz(*m, *n),
            Instance::Coassoc { m, n, r } => maps::verify_coassoc(*m, *n, *r),
            Instance::ThetaPullback { n } => forms::verify_theta_pullback(*n),
            Instance::ThetaEz { m, n } => forms::verify_theta_ez(*m, *n),
            Instance::ConeClaim => total::dga::verify_cone_claim(),
            Instance::ConeChainMap => total::dga::verify_hat_box_chain_map(),
            Instance::ConeHomotopy => total::dga::verify_homotopy(),
            Instance::E1Page { p_max } => e1::e1_page(*p_max).report,
            Instance::Dsq { models, samples, seed } => {
                let per_model = (*samples).div_ceil(*models);
                total::verify_dsq(*models, per_model, *seed)
            }
            Instance::Leibniz { pairs, seed } => total::verify_leibniz_and_assoc(*pairs, *seed),
            Instance::Constants { d_max, n_max } => constants::verify_constants(*d_max, *n_max),
        }
    }
}

/// Suites selectable from the command line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Shuffle,
    Brion,
    EzDiagram,
    CoLeibniz,
    Coassoc,
    ThetaPullback,
    ThetaEz,
    E1,
    ConeClaim,
    Leibniz,
    Dsq,
    Constants,
    All,
}

/// Grid of `(m, n)` with `m + n <= cap` in deterministic order.
fn grid2(cap: usize, min_total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for total in min_total..=cap {
        for m in 0..=total {
            out.push((m, total - m));
        }
    }
    out
}

/// Builds the instance list for a suite. Single-instance selections
/// (`--m`, `--n`, `--r`) override the grids.
pub fn instances(
    suite: Suite,
    cfg: &RunConfig,
    fixed: Option<(usize, usize, Option<usize>)>,
) -> Vec<Instance> {
    let mut out = Vec::new();
    match suite {
        Suite::Shuffle => {
            match fixed {
                Some((m, n, _)) => out.push(Instance::Shuffle { m, n, negated: false }),
                None => {
                    for (m, n) in grid2(cfg.max_size, 0) {
                        out.push(Instance::Shuffle { m, n, negated: false });
                    }
                    // exhaustive permutation pairs, seeded per instance
                    let mut i = 0u64;
                    for total in 0..=cfg.max_perm_size.min(cfg.max_size) {
                        for m in 0..=total {
                            let n = total - m;
                            for sigma in all_permutations(m) {
                                for tau in all_permutations(n) {
                                    out.push(Instance::Multiplicativity {
                                        sigma: sigma.clone(),
                                        tau,
                                        seed: cfg.seed.wrapping_add(i),
                                    });
                                    i += 1;
                                }
                            }
                        }
                    }
                }
            }
            if cfg.negative_control {
                out.push(Instance::Shuffle { m: 2, n: 1, negated: true });
            }
        }
        Suite::Brion => {
            match fixed {
                Some((m, n, _)) => out.push(Instance::Brion { m, n }),
                None => {
                    for (m, n) in grid2(cfg.max_size, 0) {
                        out.push(Instance::Brion { m, n });
                    }
                    for n in 0..=4usize.min(cfg.max_size) {
                        out.push(Instance::Enumeration { n, bound: cfg.bound });
                    }
                }
            }
        }
        Suite::EzDiagram => match fixed {
            Some((m, n, _)) => out.push(Instance::EzDiagram { m, n }),
            None => {
                for (m, n) in grid2(cfg.max_size.min(6), 0) {
                    out.push(Instance::EzDiagram { m, n });
                }
            }
        },
        Suite::CoLeibniz => match fixed {
            Some((m, n, _)) => out.push(Instance::CoLeibniz { m, n }),
            None => {
                for (m, n) in grid2(cfg.max_size.min(6), 1) {
                    out.push(Instance::CoLeibniz { m, n });
                }
            }
        },
        Suite::Coassoc => match fixed {
            Some((m, n, Some(r))) => out.push(Instance::Coassoc { m, n, r }),
            _ => {
                for total in 0..=cfg.max_size.min(6) {
                    for m in 0..=total {
                        for n in 0..=(total - m) {
                            out.push(Instance::Coassoc { m, n, r: total - m - n });
                        }
                    }
                }
            }
        },
        Suite::ThetaPullback => match fixed {
            Some((n, _, _)) => out.push(Instance::ThetaPullback { n: n as u32 }),
            None => {
                for n in 1..=cfg.max_size.min(6) as u32 {
                    out.push(Instance::ThetaPullback { n });
                }
            }
        },
        Suite::ThetaEz => match fixed {
            Some((m, n, _)) => out.push(Instance::ThetaEz { m: m as u32, n: n as u32 }),
            None => {
                for (m, n) in grid2(cfg.max_size.min(6), 0) {
                    out.push(Instance::ThetaEz { m: m as u32, n: n as u32 });
                }
            }
        },
        Suite::E1 => out.push(Instance::E1Page { p_max: cfg.p_max }),
        Suite::ConeClaim => {
            out.push(Instance::ConeClaim);
            out.push(Instance::ConeChainMap);
            out.push(Instance::ConeHomotopy);
        }
        Suite::Leibniz => out.push(Instance::Leibniz {
            pairs: cfg.samples,
            seed: cfg.seed,
        }),
        Suite::Dsq => out.push(Instance::Dsq {
            models: cfg.models,
            samples: cfg.samples,
            seed: cfg.seed,
        }),
        Suite::Constants => out.push(Instance::Constants { d_max: 6, n_max: 12 }),
        Suite::All => {
            for s in [
                Suite::Shuffle,
                Suite::Brion,
                Suite::EzDiagram,
                Suite::CoLeibniz,
                Suite::Coassoc,
                Suite::ThetaPullback,
                Suite::ThetaEz,
                Suite::E1,
                Suite::ConeClaim,
                Suite::Leibniz,
                Suite::Dsq,
                Suite::Constants,
            ] {
                // negative control is injected once, by the shuffle suite
                out.extend(instances(s, cfg, None));
            }
        }
    }
    out
}

/// Statement table: identifier -> what the check asserts.
pub fn statement_table() -> BTreeMap<&'static str, &'static str> {
    let mut t = BTreeMap::new();
    t.insert(
        "shuffle-relation",
        "the sum of the chain fractions over all (m,n)-interleavings equals the product of the two block chain fractions",
    );
    t.insert(
        "character-multiplicativity",
        "evaluating the chain fraction on a shifted-shuffle product of permutation words equals the product of the evaluations",
    );
    t.insert(
        "brion-subdivision",
        "the lattice-point transform of a product of prefix cones equals the sum of the transforms over the shuffle subdivision",
    );
    t.insert(
        "cone-enumeration",
        "brute-force lattice enumeration of the prefix cone matches the truncated product expansion under the unimodular change of variables",
    );
    t.insert(
        "ez-diagram",
        "prefix-sum coordinates intertwine the simplicial shuffle morphism with the cubical one",
    );
    t.insert(
        "co-leibniz",
        "the shuffle morphisms satisfy the boundary compatibility with alternating faces and the sign (-1)^m",
    );
    t.insert(
        "coassociativity",
        "the two iterated shuffle morphisms into a triple product agree, making the extended square vanish",
    );
    t.insert(
        "theta-pullback",
        "the logarithmic simplex form pulls back along the cube coordinates to the signed chain fraction times the volume form",
    );
    t.insert(
        "theta-ez",
        "the signed sum of permuted pullbacks of the logarithmic form equals the wedge of the factor pullbacks",
    );
    t.insert(
        "cone-claim",
        "the correction-term identity for the cone pairing holds for all degree parities with symbolic parameter, and both alternative sign readings fail",
    );
    t.insert(
        "cone-chain-map",
        "the parametrized cone pairing commutes with the cone differential",
    );
    t.insert(
        "cone-homotopy",
        "pairings at two symbolic parameters differ by the boundary of an explicit element",
    );
    t.insert(
        "e1-page",
        "kernels and images of the parity monomial differential have the predicted bases and dimensions, with cohomology concentrated in degree zero",
    );
    t.insert(
        "total-differential-squares-to-zero",
        "the total differential and the cone differential square to zero over randomly generated finite models",
    );
    t.insert(
        "exterior-product-leibniz-assoc",
        "the exterior product is associative and satisfies the Leibniz rule with the left Koszul sign",
    );
    t.insert(
        "normalization-constants",
        "the sign-and-power normalization constants satisfy both recursions",
    );
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_deterministic_and_bounded() {
        let cfg = RunConfig {
            max_size: 3,
            max_perm_size: 2,
            ..RunConfig::default()
        };
        let a = instances(Suite::Shuffle, &cfg, None);
        let b = instances(Suite::Shuffle, &cfg, None);
        assert_eq!(a.len(), b.len());
        let shuffle_count = a
            .iter()
            .filter(|i| matches!(i, Instance::Shuffle { .. }))
            .count();
        assert_eq!(shuffle_count, 2 + 3 + 4 + 1); // m+n = 1,2,3 plus (0,0)
    }

    #[test]
    fn every_instance_statement_is_in_table() {
        let cfg = RunConfig {
            max_size: 1,
            max_perm_size: 1,
            samples: 1,
            models: 1,
            p_max: 1,
            ..RunConfig::default()
        };
        let table = statement_table();
        for inst in instances(Suite::All, &cfg, None) {
            let rep = inst.run();
            assert!(
                table.contains_key(rep.statement),
                "statement {} missing from table",
                rep.statement
            );
        }
    }
}
