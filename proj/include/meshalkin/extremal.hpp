#pragma once

#include <cstdint>
#include <vector>

#include "meshalkin/meshalkin.hpp"

namespace meshalkin {

struct SearchConfig {
    ProblemParams params;
    SequenceMode mode = SequenceMode::full;
    long node_budget = 1'000'000;
    bool report_all_maxima = false;
    // 0 keeps the canonical universe order; any other value applies a
    // deterministic shuffle (the maximum is order-independent, the tests
    // exercise that).
    std::uint64_t order_seed = 0;
};

struct SearchResult {
    ExactInt max_size = 0;
    std::vector<Family> witnesses; // canonically sorted
    ExactInt bound_value = 0;
    ExactInt gap = 0;
    bool exhausted = false;
    long nodes = 0;
};

/// All full sequences whose rank vector is the balanced composition of n
/// into p parts. Every projection is a full level, so the family meets the
/// antichain condition and attains the l = 1 bound.
Family construct_balanced_family(const Lattice& lattice, int p);

/// Union of l levels realizing the l largest level sizes; ties go to the
/// lower rank. The result has longest chain exactly l, size equal to
/// bound(rota_harper), and level-weighted sum exactly l.
std::vector<Flat> construct_rh_levels(const Lattice& lattice, int l);

/// The largest family of partial sequences whose coordinates each run over
/// a full level of rank ceil(n/(p+1)) or floor(n/(p+1)): the antichain
/// equality construction for partial families. Ties go to the
/// lexicographically smallest rank vector.
Family construct_partial_antichain_family(const Lattice& lattice, int p);

/// The families "all sequences with rank vector t" for every admissible
/// arrangement t of balanced ranks: permutations of the balanced
/// composition (full mode), or ceil/floor vectors of n/(p+1) with sum at
/// most n (partial mode). These are the equality candidates the
/// uniqueness probe compares against.
std::vector<Family> balanced_candidate_families(const Lattice& lattice, int p,
                                                SequenceMode mode);

/// Exact maximum admissible family size by branch and bound over the
/// sequence universe, pruning with the exact LYM budget. Universes larger
/// than the node budget are refused; running out of nodes mid-search
/// returns the best lower bound with exhausted = false.
SearchResult search_max_family(const SearchConfig& config,
                               const Lattice& lattice);

struct EnumerationResult {
    ExactInt max_size = 0;
    std::vector<Family> maxima; // canonically sorted
    bool exhausted = false;
    long nodes = 0;
};

/// All admissible families of maximum size (requires report_all_maxima).
EnumerationResult enumerate_maximum_families(const SearchConfig& config,
                                             const Lattice& lattice);

enum class ConjectureVerdict { confirmed, counterexample, not_applicable };

struct UniquenessReport {
    EnumerationResult enumeration;
    std::vector<Family> candidates;
    ConjectureVerdict verdict = ConjectureVerdict::not_applicable;
    std::string reason;
};

/// Probes whether the maximum families are exactly the balanced equality
/// candidates (l = 1 only). When the exact maximum already exceeds the
/// candidate size the verdict is counterexample without enumerating every
/// maximum; when the sizes agree, all maxima are enumerated and compared
/// as sets. enumeration.exhausted says whether the maxima list is
/// complete.
UniquenessReport check_uniqueness(const SearchConfig& config,
                                  const Lattice& lattice);

} // namespace meshalkin
