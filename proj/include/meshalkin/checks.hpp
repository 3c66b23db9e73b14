#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meshalkin/extremal.hpp"
#include "meshalkin/family_json.hpp"

namespace meshalkin {

enum class CheckStatus { pass, fail, report };

const char* to_string(CheckStatus status);

/// One verification outcome. FAIL details always carry the data needed to
/// reproduce the counterexample; REPORT marks an observation that is
/// neither asserted nor refuted.
struct Check {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    Json details;
};

/// Every level size equals the matching Gaussian binomial.
std::vector<Check> verify_level_counts(const Lattice& lattice);

/// Every rank-k flat has exactly q^{k(n-k)} complements.
std::vector<Check> verify_complement_counts(const Lattice& lattice);

/// Sequence enumeration matches the counting formulas: the weighted
/// multinomial for full sequences and binomial * multinomial * q-weight
/// for partial ones, for every rank vector of length p.
std::vector<Check> verify_sequence_counts(const Lattice& lattice, int p);

/// Generated admissible full families: main LYM sum at most l^(p-1) and
/// family size at most bound(main), both exact.
std::vector<Check> verify_main_bounds(const Lattice& lattice, int p, int l,
                                      int families, std::uint64_t seed);

/// Generated admissible full families: weak LYM sum at most bound(weak).
std::vector<Check> verify_weak_bounds(const Lattice& lattice, int p, int l,
                                      int families, std::uint64_t seed);

/// Generated admissible partial families (chain condition on every
/// coordinate): partial LYM sum at most l^p and size at most bound(partial).
std::vector<Check> verify_partial_bounds(const Lattice& lattice, int p, int l,
                                         int families, std::uint64_t seed);

/// The partial antichain construction versus the size bound, side by side.
/// PASS when the construction (and search maximum, when the instance fits
/// the budget) attains the bound; REPORT with both numbers when it does
/// not. The LYM equality of the construction is asserted separately.
std::vector<Check> verify_partial_antichain(const Lattice& lattice, int p,
                                            long node_budget);

/// The l-largest-levels construction: size equals bound(rota_harper),
/// longest chain exactly l, level-weighted sum exactly l, for every valid l.
std::vector<Check> verify_rh_construction(const Lattice& lattice);

/// The balanced full family attains LYM sum 1 and the l = 1 size bound,
/// with every projection a full level.
std::vector<Check> verify_balanced_equality(const Lattice& lattice, int p);

/// Lift identity: the main LYM sum of the complement lift equals the sum
/// of reciprocal binomials over the source set, for every single level and
/// the given number of random antichains.
std::vector<Check> verify_lift_identity(const Lattice& lattice,
                                        int random_antichains,
                                        std::uint64_t seed);

/// hkr_apply verdicts (inequality and equality certificate) against direct
/// evaluation on random exact-rational instances.
std::vector<Check> verify_hkr_agreement(int instances, std::uint64_t seed);

} // namespace meshalkin
