#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "meshalkin/extremal.hpp"

using namespace meshalkin;

namespace {

// Brute force over every subset of the sequence universe; fully independent
// of the branch-and-bound path. Only viable for universes of ~16 elements.
struct BruteResult {
    long max_size = 0;
    std::vector<std::set<MeshalkinSequence>> maxima;
};

BruteResult brute_force(const Lattice& lattice, int p, int l,
                        SequenceMode mode) {
    std::vector<MeshalkinSequence> universe;
    if (mode == SequenceMode::full) {
        for (const RankVector& alpha : enumerate_compositions(lattice.rank(), p)) {
            for (auto& s : enumerate_sequences(lattice, p, alpha, mode)) {
                universe.push_back(std::move(s));
            }
        }
    } else {
        for (int m = 0; m <= lattice.rank(); ++m) {
            for (const RankVector& alpha : enumerate_compositions(m, p)) {
                for (auto& s : enumerate_sequences(lattice, p, alpha, mode)) {
                    universe.push_back(std::move(s));
                }
            }
        }
    }
    REQUIRE(universe.size() <= 20);

    int constrained = mode == SequenceMode::full ? p - 1 : p;
    BruteResult out;
    for (unsigned long mask = 0; mask < (1UL << universe.size()); ++mask) {
        std::vector<const MeshalkinSequence*> members;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            if (mask & (1UL << i)) members.push_back(&universe[i]);
        }
        bool ok = true;
        for (int k = 0; k < constrained && ok; ++k) {
            std::vector<Flat> proj;
            for (const auto* s : members) {
                proj.push_back(s->flats[static_cast<std::size_t>(k)]);
            }
            ok = longest_chain(lattice, proj) <= l;
        }
        if (!ok) continue;
        long size = static_cast<long>(members.size());
        if (size > out.max_size) {
            out.max_size = size;
            out.maxima.clear();
        }
        if (size == out.max_size) {
            std::set<MeshalkinSequence> fam;
            for (const auto* s : members) fam.insert(*s);
            out.maxima.push_back(std::move(fam));
        }
    }
    return out;
}

} // namespace

TEST_CASE("balanced family attains the antichain bound") {
    Lattice pg12(2, 2);
    Family six = construct_balanced_family(pg12, 2);
    CHECK(six.size() == 6);
    CHECK(ExactInt(six.size()) == bound({2, 2, 1, 2}, BoundMode::main).value);
    CHECK(lym_sum(pg12, six, LymMode::main) == 1);
    CHECK(check_chain_condition(pg12, six, 1, ChainScope::full).ok);

    Lattice fano(3, 2);
    Family f28 = construct_balanced_family(fano, 2);
    CHECK(f28.size() == 28);
    CHECK(f28.profile().count(RankVector{2, 1}) == 1);
    for (int k = 0; k < 2; ++k) {
        // Every projection is a full level.
        RankVector alpha = balanced_composition(3, 2);
        CHECK(ExactInt(static_cast<long>(f28.projection(k).size())) ==
              gaussian_binomial(3, alpha[k], 2));
    }

    CHECK_THROWS_AS(construct_balanced_family(pg12, 1), std::invalid_argument);
}

TEST_CASE("rh levels: size, chain and sum for every l") {
    for (int q : {2, 3}) {
        for (int n = 0; n <= 4; ++n) {
            Lattice lattice(n, q);
            for (int l = 1; l <= n + 1; ++l) {
                auto flats = construct_rh_levels(lattice, l);
                CHECK(ExactInt(static_cast<long>(flats.size())) ==
                      bound({n, 1, l, q}, BoundMode::rota_harper).value);
                CHECK(longest_chain(lattice, flats) == l);
                ExactRat sum(0);
                for (const Flat& f : flats) {
                    sum += reciprocal(gaussian_binomial(n, f.rank(), q));
                }
                CHECK(sum == ExactRat(l));
            }
        }
    }
}

TEST_CASE("rh level tie goes to the lower rank, either choice is as large") {
    Lattice fano(3, 2); // levels 1, 7, 7, 1
    auto chosen = construct_rh_levels(fano, 1);
    CHECK(chosen.size() == 7);
    CHECK(chosen.front().rank() == 1); // the rank-1 class, not rank-2

    // The alternative tie choice has the same size and weighted sum.
    const auto& alt = fano.level(2);
    CHECK(alt.size() == chosen.size());

    Lattice pg32(4, 2); // levels 1, 15, 35, 15, 1
    auto two = construct_rh_levels(pg32, 2);
    CHECK(two.size() == 50); // 35 + 15
    std::set<int> ranks;
    for (const Flat& f : two) ranks.insert(f.rank());
    CHECK(ranks == std::set<int>{1, 2});
    // Ranks {2,3} give the same total by symmetry.
    CHECK(pg32.level(3).size() + pg32.level(2).size() == 50);

    auto everything = construct_rh_levels(pg32, 5);
    CHECK(everything.size() == 1 + 15 + 35 + 15 + 1);
    CHECK_THROWS_AS(construct_rh_levels(pg32, 6), std::invalid_argument);
    CHECK_THROWS_AS(construct_rh_levels(pg32, 0), std::invalid_argument);
}

TEST_CASE("search matches brute force on the 3-point line") {
    Lattice pg12(2, 2);
    SearchConfig config;
    config.params = {2, 2, 1, 2};
    config.mode = SequenceMode::full;

    BruteResult brute = brute_force(pg12, 2, 1, SequenceMode::full);
    CHECK(brute.max_size == 6);
    REQUIRE(brute.maxima.size() == 1);

    SearchResult result = search_max_family(config, pg12);
    CHECK(result.max_size == 6);
    CHECK(result.gap == 0);
    CHECK(result.exhausted);
    REQUIRE(result.witnesses.size() == 1);
    CHECK(result.witnesses[0].sequences() == brute.maxima[0]);

    config.report_all_maxima = true;
    EnumerationResult maxima = enumerate_maximum_families(config, pg12);
    CHECK(maxima.exhausted);
    REQUIRE(maxima.maxima.size() == 1);
    CHECK(maxima.maxima[0].sequences() == brute.maxima[0]);

    UniquenessReport unique = check_uniqueness(config, pg12);
    CHECK(unique.verdict == ConjectureVerdict::confirmed);
}

TEST_CASE("search on PG(1,3) and agreement with brute force") {
    Lattice pg13(2, 3);
    SearchConfig config;
    config.params = {2, 2, 1, 3};
    config.mode = SequenceMode::full;
    config.report_all_maxima = true;

    BruteResult brute = brute_force(pg13, 2, 1, SequenceMode::full);
    CHECK(brute.max_size == 12);

    SearchResult result = search_max_family(config, pg13);
    CHECK(result.max_size == ExactInt(brute.max_size));
    CHECK(result.max_size == 12);
    CHECK(result.exhausted);

    EnumerationResult maxima = enumerate_maximum_families(config, pg13);
    REQUIRE(maxima.maxima.size() == brute.maxima.size());
    for (std::size_t i = 0; i < maxima.maxima.size(); ++i) {
        CHECK(std::any_of(brute.maxima.begin(), brute.maxima.end(),
                          [&](const std::set<MeshalkinSequence>& fam) {
                              return fam == maxima.maxima[i].sequences();
                          }));
    }

    UniquenessReport unique = check_uniqueness(config, pg13);
    CHECK(unique.verdict == ConjectureVerdict::confirmed);
}

TEST_CASE("partial search on the 3-point line") {
    Lattice pg12(2, 2);
    SearchConfig config;
    config.params = {2, 1, 1, 2};
    config.mode = SequenceMode::partial;

    BruteResult brute = brute_force(pg12, 1, 1, SequenceMode::partial);
    CHECK(brute.max_size == 3);

    SearchResult result = search_max_family(config, pg12);
    CHECK(result.max_size == 3);
    CHECK(result.bound_value == 6);
    CHECK(result.gap == 3);
    CHECK(result.exhausted);
}

TEST_CASE("partial length-2 search matches brute force") {
    Lattice pg12(2, 2);
    SearchConfig config;
    config.params = {2, 2, 1, 2};
    config.mode = SequenceMode::partial;
    config.report_all_maxima = true;

    BruteResult brute = brute_force(pg12, 2, 1, SequenceMode::partial);
    CHECK(brute.max_size == 6);

    SearchResult result = search_max_family(config, pg12);
    CHECK(result.max_size == ExactInt(brute.max_size));
    CHECK(result.exhausted);
    CHECK(result.bound_value == 6);
    CHECK(result.gap == 0);

    EnumerationResult maxima = enumerate_maximum_families(config, pg12);
    REQUIRE(maxima.maxima.size() == brute.maxima.size());
    for (const Family& fam : maxima.maxima) {
        CHECK(std::any_of(brute.maxima.begin(), brute.maxima.end(),
                          [&](const std::set<MeshalkinSequence>& s) {
                              return s == fam.sequences();
                          }));
    }

    UniquenessReport unique = check_uniqueness(config, pg12);
    CHECK(unique.verdict == ConjectureVerdict::confirmed);
}

TEST_CASE("degenerate search instance") {
    Lattice empty(0, 2);
    SearchConfig config;
    config.params = {0, 2, 1, 2};
    config.mode = SequenceMode::full;
    SearchResult result = search_max_family(config, empty);
    CHECK(result.max_size == 1);
    CHECK(result.exhausted);
}

TEST_CASE("search is order independent") {
    Lattice fano(3, 2);
    SearchConfig config;
    config.params = {3, 2, 2, 2};
    config.mode = SequenceMode::full;
    SearchResult canonical = search_max_family(config, fano);
    CHECK(canonical.exhausted);
    CHECK(canonical.max_size == 56);
    for (std::uint64_t seed : {1, 2, 3}) {
        config.order_seed = seed;
        SearchResult shuffled = search_max_family(config, fano);
        CHECK(shuffled.exhausted);
        CHECK(shuffled.max_size == canonical.max_size);
    }
}

TEST_CASE("search never exceeds its bound on generated instances") {
    for (int l : {1, 2}) {
        Lattice fano(3, 2);
        SearchConfig config;
        config.params = {3, 2, l, 2};
        config.mode = SequenceMode::full;
        SearchResult result = search_max_family(config, fano);
        CHECK(result.max_size <= result.bound_value);
        CHECK(result.gap >= 0);
        for (const Family& w : result.witnesses) {
            CHECK(check_chain_condition(fano, w, l, ChainScope::full).ok);
        }
    }
}

TEST_CASE("budget handling") {
    Lattice fano(3, 2);
    SearchConfig config;
    config.params = {3, 2, 2, 2};
    config.mode = SequenceMode::full;

    config.node_budget = 10; // universe has 58 sequences
    CHECK_THROWS_AS(search_max_family(config, fano), std::invalid_argument);

    config.node_budget = 60; // admits the universe, too small to finish
    SearchResult result = search_max_family(config, fano);
    CHECK_FALSE(result.exhausted);
    CHECK(result.max_size <= result.bound_value);
}

TEST_CASE("partial antichain construction at the discrepancy instance") {
    Lattice pg12(2, 2);
    Family fam = construct_partial_antichain_family(pg12, 1);
    CHECK(fam.size() == 3);
    CHECK(lym_sum(pg12, fam, LymMode::partial) == 1);
    CHECK(bound({2, 1, 1, 2}, BoundMode::partial).value == 6);
    // The uniqueness candidates coincide with the construction here.
    auto candidates =
        balanced_candidate_families(pg12, 1, SequenceMode::partial);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0] == fam);
}

TEST_CASE("balanced candidates cover every arrangement") {
    Lattice fano(3, 2);
    auto full = balanced_candidate_families(fano, 2, SequenceMode::full);
    REQUIRE(full.size() == 2); // (1,2) and (2,1)
    CHECK(full[0].size() == full[1].size());
    CHECK(full[0].size() == 28);
}

TEST_CASE("length-3 search on the 3-point line") {
    Lattice pg12(2, 2);
    SearchConfig config;
    config.params = {2, 3, 1, 2};
    config.mode = SequenceMode::full;
    config.report_all_maxima = true;

    SearchResult result = search_max_family(config, pg12);
    CHECK(result.max_size == 6);
    CHECK(result.gap == 0);
    CHECK(result.exhausted);

    // Exactly the three arrangements of (1,1,0) realize the maximum, and
    // they are precisely the balanced candidates.
    UniquenessReport unique = check_uniqueness(config, pg12);
    CHECK(unique.enumeration.maxima.size() == 3);
    CHECK(unique.candidates.size() == 3);
    CHECK(unique.verdict == ConjectureVerdict::confirmed);
}

TEST_CASE("partial uniqueness at the discrepancy instance") {
    Lattice pg12(2, 2);
    SearchConfig config;
    config.params = {2, 1, 1, 2};
    config.mode = SequenceMode::partial;
    config.report_all_maxima = true;
    UniquenessReport unique = check_uniqueness(config, pg12);
    CHECK(unique.enumeration.max_size == 3);
    REQUIRE(unique.enumeration.maxima.size() == 1);
    CHECK(unique.verdict == ConjectureVerdict::confirmed);
}

TEST_CASE("partial uniqueness is refuted where the maximum beats the "
          "balanced candidates") {
    // At n=4, p=3 the ceil/floor description forces all ranks 1 (2520
    // sequences), but the class of rank vector (1,1,2) has 3360 members and
    // every projection is still a single level.
    Lattice pg32(4, 2);
    SearchConfig config;
    config.params = {4, 3, 1, 2};
    config.mode = SequenceMode::partial;
    UniquenessReport unique = check_uniqueness(config, pg32);
    CHECK(unique.enumeration.max_size == 3360);
    REQUIRE(unique.candidates.size() == 1);
    CHECK(unique.candidates[0].size() == 2520);
    CHECK(unique.verdict == ConjectureVerdict::counterexample);
    REQUIRE(unique.enumeration.maxima.size() == 1);
    auto profile = unique.enumeration.maxima[0].profile();
    CHECK(profile.size() == 1);
    CHECK(profile.begin()->second == 3360);
}

TEST_CASE("non-antichain l is reported as not applicable") {
    Lattice pg12(2, 2);
    SearchConfig config;
    config.params = {2, 2, 2, 2};
    config.mode = SequenceMode::full;
    config.report_all_maxima = true;
    UniquenessReport unique = check_uniqueness(config, pg12);
    CHECK(unique.verdict == ConjectureVerdict::not_applicable);
    // All six (1,1) sequences plus one of the two rank-(0,2)/(2,0) ones;
    // taking both would put a 3-element chain in the first projection.
    CHECK(unique.enumeration.max_size == 7);
    CHECK(unique.enumeration.maxima.size() == 2);
    CHECK(ExactInt(7) == bound({2, 2, 2, 2}, BoundMode::main).value);
}
