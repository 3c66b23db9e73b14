#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "meshalkin/meshalkin.hpp"

using namespace meshalkin;

namespace {

Family family_of(const Lattice& lattice, int p, SequenceMode mode,
                 const std::vector<std::vector<Flat>>& sequences) {
    Family out(p, mode);
    for (const auto& flats : sequences) {
        out.insert(make_sequence(lattice, flats, mode));
    }
    return out;
}

} // namespace

TEST_CASE("check_sequence classifies the spec cases") {
    Lattice pg12(2, 2);
    const auto& points = pg12.level(1);

    auto zeros = check_sequence(pg12, {pg12.bottom(), pg12.bottom()},
                                SequenceMode::partial);
    CHECK(zeros.ok);
    CHECK(zeros.join_flat == pg12.bottom());

    auto full = check_sequence(pg12, {points[0], points[1]}, SequenceMode::full);
    CHECK(full.ok);
    CHECK(full.join_flat == pg12.top());

    auto repeated =
        check_sequence(pg12, {points[0], points[0]}, SequenceMode::full);
    CHECK_FALSE(repeated.ok);
    CHECK(repeated.reason.find("rank additivity") != std::string::npos);

    auto not_top =
        check_sequence(pg12, {points[0]}, SequenceMode::full);
    CHECK_FALSE(not_top.ok);
    auto partial_ok = check_sequence(pg12, {points[0]}, SequenceMode::partial);
    CHECK(partial_ok.ok);

    Lattice other(3, 2);
    CHECK_THROWS_AS(
        check_sequence(pg12, {other.top(), pg12.bottom()}, SequenceMode::partial),
        std::invalid_argument);
}

TEST_CASE("enumerate_sequences frozen counts") {
    Lattice pg12(2, 2);
    CHECK(enumerate_sequences(pg12, 2, RankVector{1, 1}, SequenceMode::full)
              .size() == 6);
    CHECK(enumerate_sequences(pg12, 1, RankVector{1}, SequenceMode::partial)
              .size() == 3);

    Lattice fano(3, 2);
    CHECK(enumerate_sequences(fano, 2, RankVector{1, 2}, SequenceMode::full)
              .size() == 28);

    CHECK_THROWS_AS(
        enumerate_sequences(pg12, 2, RankVector{1, 2}, SequenceMode::full),
        std::invalid_argument);
    CHECK_THROWS_AS(
        enumerate_sequences(pg12, 2, RankVector{2, 2}, SequenceMode::partial),
        std::invalid_argument);
}

TEST_CASE("sequence counts match the closed formulas on the grid") {
    // Full mode; also the independent confirmation of the partial-count
    // formula before other tests rely on it.
    auto run = [](int n, int q, int p) {
        Lattice lattice(n, q);
        for (const RankVector& alpha : enumerate_compositions(n, p)) {
            auto seqs = enumerate_sequences(lattice, p, alpha, SequenceMode::full);
            CHECK(ExactInt(static_cast<long>(seqs.size())) ==
                  sequence_count_formula(lattice, alpha, SequenceMode::full));
            std::set<MeshalkinSequence> dedup(seqs.begin(), seqs.end());
            CHECK(dedup.size() == seqs.size());
        }
        for (int m = 0; m <= n; ++m) {
            for (const RankVector& alpha : enumerate_compositions(m, p)) {
                auto seqs =
                    enumerate_sequences(lattice, p, alpha, SequenceMode::partial);
                CHECK(ExactInt(static_cast<long>(seqs.size())) ==
                      sequence_count_formula(lattice, alpha,
                                             SequenceMode::partial));
            }
        }
    };
    for (int n = 0; n <= 4; ++n) {
        run(n, 2, 2);
        run(n, 2, 3);
    }
    for (int n = 0; n <= 3; ++n) run(n, 3, 2);
}

TEST_CASE("sequence counts over the degree-2 field extension") {
    Lattice pg24(3, 4);
    // 21 points, 21 lines; [3 (1,2)]_4 * 4^2 = 21 * 16.
    auto seqs = enumerate_sequences(pg24, 2, RankVector{1, 2}, SequenceMode::full);
    CHECK(seqs.size() == 336);
    CHECK(ExactInt(static_cast<long>(seqs.size())) ==
          sequence_count_formula(pg24, RankVector{1, 2}, SequenceMode::full));
}

TEST_CASE("disjoint index sets of a sequence meet in the bottom flat") {
    Lattice fano(3, 2);
    for (const RankVector& alpha : enumerate_compositions(3, 3)) {
        for (const auto& seq :
             enumerate_sequences(fano, 3, alpha, SequenceMode::full)) {
            // All ways to split {0,1,2} into two disjoint nonempty sets.
            for (int mask = 1; mask < 8; ++mask) {
                Flat left = fano.bottom();
                Flat right = fano.bottom();
                for (int k = 0; k < 3; ++k) {
                    const Flat& f = seq.flats[static_cast<std::size_t>(k)];
                    if (mask & (1 << k)) {
                        left = join(fano, left, f);
                    } else {
                        right = join(fano, right, f);
                    }
                }
                CHECK(meet(fano, left, right) == fano.bottom());
            }
        }
    }
}

TEST_CASE("longest_chain") {
    Lattice fano(3, 2);
    CHECK(longest_chain(fano, {}) == 0);
    const auto& points = fano.level(1);
    CHECK(longest_chain(fano, points) == 1);

    Flat line = join(fano, points[0], points[1]);
    CHECK(longest_chain(fano, {points[0], line}) == 2);
    CHECK(longest_chain(fano, {fano.bottom(), points[0], line, fano.top()}) == 4);
    // Duplicates collapse.
    CHECK(longest_chain(fano, {points[0], points[0]}) == 1);
}

TEST_CASE("check_chain_condition scopes") {
    Lattice pg12(2, 2);
    const auto& points = pg12.level(1);
    auto all_full = enumerate_sequences(pg12, 2, RankVector{1, 1},
                                        SequenceMode::full);
    Family six(2, SequenceMode::full);
    for (auto& s : all_full) six.insert(std::move(s));

    CHECK(check_chain_condition(pg12, six, 1, ChainScope::full).ok);
    CHECK(check_chain_condition(pg12, six, 1, ChainScope::partial).ok);

    Family bad = family_of(pg12, 2, SequenceMode::full,
                           {{pg12.bottom(), pg12.top()},
                            {points[0], points[1]}});
    ChainCheck violation = check_chain_condition(pg12, bad, 1, ChainScope::full);
    CHECK_FALSE(violation.ok);
    CHECK(violation.coordinate == 1);
    CHECK(violation.chain_length == 2);
}

TEST_CASE("lym_sum in all modes") {
    Lattice pg12(2, 2);
    Family empty(2, SequenceMode::full);
    CHECK(lym_sum(pg12, empty, LymMode::main) == 0);

    Family six(2, SequenceMode::full);
    for (auto& s :
         enumerate_sequences(pg12, 2, RankVector{1, 1}, SequenceMode::full)) {
        six.insert(std::move(s));
    }
    CHECK(lym_sum(pg12, six, LymMode::main) == 1);
    // Weak sum drops the q-weight: 6 / [2 (1,1)] = 2.
    CHECK(lym_sum(pg12, six, LymMode::weak) == 2);
    // On a full family the partial denominator collapses to the main one.
    CHECK(lym_sum(pg12, six, LymMode::partial) ==
          lym_sum(pg12, six, LymMode::main));

    Lattice fano(3, 2);
    Family lift = rota_harper_lift(fano, fano.level(1));
    CHECK(lift.size() == 28);
    CHECK(lym_sum(fano, lift, LymMode::main) == 1);

    Family partial(1, SequenceMode::partial);
    for (auto& s :
         enumerate_sequences(pg12, 1, RankVector{1}, SequenceMode::partial)) {
        partial.insert(std::move(s));
    }
    CHECK(lym_sum(pg12, partial, LymMode::partial) == 1);
    CHECK_THROWS_AS(lym_sum(pg12, partial, LymMode::main), std::invalid_argument);
}

TEST_CASE("partial denominator collapses to the level count for p = 1") {
    for (int q : {2, 3}) {
        for (int n = 0; n <= 5; ++n) {
            for (int r = 0; r <= n; ++r) {
                RankVector alpha{r};
                ExactInt collapsed =
                    gaussian_binomial(n, r, q) *
                    gaussian_multinomial(r, alpha, q) *
                    int_pow(q, static_cast<unsigned long>(pair_product_sum(alpha)));
                CHECK(collapsed == gaussian_binomial(n, r, q));
            }
        }
    }
}

TEST_CASE("bound frozen examples") {
    BoundResult main22 = bound({2, 2, 1, 2}, BoundMode::main);
    CHECK(main22.value == 6);
    REQUIRE(main22.alphas.size() == 1);
    CHECK(main22.alphas[0] == RankVector{1, 1});

    BoundResult rh = bound({3, 1, 2, 2}, BoundMode::rota_harper);
    CHECK(rh.value == 14);

    BoundResult main32 = bound({3, 2, 1, 2}, BoundMode::main);
    CHECK(main32.value == 28);
    REQUIRE(main32.alphas.size() == 1);
    CHECK(main32.alphas[0] == RankVector{1, 2}); // lexicographic tie-break

    // Tied values are included up to P summands.
    BoundResult main32l2 = bound({3, 2, 2, 2}, BoundMode::main);
    CHECK(main32l2.value == 56);
    REQUIRE(main32l2.alphas.size() == 2);
    CHECK(main32l2.alphas[0] == RankVector{1, 2});
    CHECK(main32l2.alphas[1] == RankVector{2, 1});

    // P caps at the number of compositions.
    BoundResult capped = bound({2, 2, 9, 2}, BoundMode::main);
    CHECK(capped.value == 8); // 6 + 1 + 1, all three compositions
    CHECK(capped.alphas.size() == 3);

    BoundResult weak = bound({3, 2, 1, 2}, BoundMode::weak);
    CHECK(weak.value == 4); // largest q^{s2} over (0,3),(1,2),(2,1),(3,0)

    BoundResult partial = bound({2, 1, 1, 2}, BoundMode::partial);
    CHECK(partial.value == 6); // [2 (1,1)] * 2
}

TEST_CASE("hkr_apply frozen examples and error reporting") {
    using R = ExactRat;
    {
        R half(1, 2);
        half.canonicalize();
        HkrResult res = hkr_apply({R(6), R(1), R(1)}, {R(1), half, half}, 2);
        CHECK(res.weighted_value == 7);
        CHECK(res.prefix_bound == 7);
        CHECK(res.inequality_holds);
        CHECK(res.certificate_applicable);
        CHECK(res.equality);
        CHECK(res.first_equal == 2);
        CHECK(res.last_equal == 3);
        CHECK(res.middle_sum == 1);
    }
    {
        HkrResult res = hkr_apply({R(5), R(3)}, {R(0), R(1)}, 1);
        CHECK(res.weighted_value == 3);
        CHECK(res.prefix_bound == 5);
        CHECK(res.inequality_holds);
        CHECK(res.certificate_applicable);
        CHECK_FALSE(res.equality);
        CHECK_FALSE(res.violation.empty());
    }
    {
        HkrResult res = hkr_apply({R(5), R(3)}, {R(0), R(0)}, 2);
        CHECK(res.weighted_value == 0);
        CHECK(res.inequality_holds);
    }
    CHECK_THROWS_WITH_AS(hkr_apply({R(1), R(2)}, {R(0), R(0)}, 1),
                         "m not sorted descending at index 1",
                         std::invalid_argument);
    CHECK_THROWS_AS(hkr_apply({R(2), R(1)}, {R(0), R(2)}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(hkr_apply({R(2), R(1)}, {R(1), R(1)}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(hkr_apply({R(2)}, {R(0)}, 2), std::invalid_argument);
    CHECK_THROWS_AS(hkr_apply({R(-1)}, {R(0)}, 1), std::invalid_argument);
}

TEST_CASE("rota_harper_lift sizes and identity") {
    Lattice pg12(2, 2);
    Family bottom_lift = rota_harper_lift(pg12, {pg12.bottom()});
    CHECK(bottom_lift.size() == 1);
    CHECK(lym_sum(pg12, bottom_lift, LymMode::main) == 1);

    Family points_lift = rota_harper_lift(pg12, pg12.level(1));
    CHECK(points_lift.size() == 6);
    CHECK(lym_sum(pg12, points_lift, LymMode::main) == 1);

    Lattice fano(3, 2);
    // Mixed-rank source: the identity still holds exactly.
    std::vector<Flat> source = {fano.level(1)[0], fano.level(2)[3],
                                fano.bottom()};
    Family lifted = rota_harper_lift(fano, source);
    ExactRat expected(0);
    for (const Flat& a : source) {
        expected += reciprocal(gaussian_binomial(3, a.rank(), 2));
    }
    CHECK(lym_sum(fano, lifted, LymMode::main) == expected);
}

TEST_CASE("generated families are admissible and reproducible") {
    Lattice fano(3, 2);
    Rng rng_a(42);
    Rng rng_b(42);
    for (int i = 0; i < 40; ++i) {
        Family a = generate_admissible_family(fano, 2, 1, SequenceMode::full,
                                              rng_a, 10);
        Family b = generate_admissible_family(fano, 2, 1, SequenceMode::full,
                                              rng_b, 10);
        CHECK(a == b);
        CHECK(a.size() >= 1);
        CHECK(check_chain_condition(fano, a, 1, ChainScope::full).ok);
        CHECK(lym_sum(fano, a, LymMode::main) <= 1);
        CHECK(ExactInt(a.size()) <= bound({3, 2, 1, 2}, BoundMode::main).value);
    }
    Rng rng_partial(43);
    for (int i = 0; i < 40; ++i) {
        Family fam = generate_admissible_family(fano, 2, 2, SequenceMode::partial,
                                                rng_partial, 10);
        CHECK(check_chain_condition(fano, fam, 2, ChainScope::partial).ok);
        CHECK(lym_sum(fano, fam, LymMode::partial) <= 4);
    }
}

TEST_CASE("the generator reaches the equality region") {
    Lattice fano(3, 2);
    Rng rng(2024);
    bool equality_seen = false;
    for (int i = 0; i < 100 && !equality_seen; ++i) {
        Family fam = generate_admissible_family(fano, 2, 1, SequenceMode::full,
                                                rng, 10);
        equality_seen = lym_sum(fano, fam, LymMode::main) == 1;
    }
    CHECK(equality_seen);
}

TEST_CASE("family profile and projections") {
    Lattice pg12(2, 2);
    Family six(2, SequenceMode::full);
    for (auto& s :
         enumerate_sequences(pg12, 2, RankVector{1, 1}, SequenceMode::full)) {
        six.insert(std::move(s));
    }
    auto profile = six.profile();
    REQUIRE(profile.size() == 1);
    CHECK(profile.at(RankVector{1, 1}) == 6);
    CHECK(six.projection(0).size() == 3);
    CHECK(six.projection(1).size() == 3);
    CHECK_THROWS_AS(six.projection(2), std::invalid_argument);

    // Duplicate inserts collapse.
    auto seqs = enumerate_sequences(pg12, 2, RankVector{1, 1},
                                    SequenceMode::full);
    CHECK_FALSE(six.insert(seqs[0]));
    CHECK(six.size() == 6);
}
