#include "meshalkin/checks.hpp"

#include <algorithm>

namespace meshalkin {

namespace {

Json geometry_json(const Lattice& lattice) {
    Json g;
    g["n"] = lattice.rank();
    g["q"] = lattice.field().q();
    return g;
}

Json rank_vector_json(const RankVector& alpha) {
    Json out = Json::array();
    for (int a : alpha.parts()) out.push_back(a);
    return out;
}

ExactRat level_weighted_sum(const Lattice& lattice, const std::vector<Flat>& flats) {
    ExactRat sum(0);
    for (const Flat& f : flats) {
        sum += reciprocal(
            gaussian_binomial(lattice.rank(), f.rank(), lattice.field().q()));
    }
    return sum;
}

} // namespace

const char* to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::pass:
        return "PASS";
    case CheckStatus::fail:
        return "FAIL";
    case CheckStatus::report:
        return "REPORT";
    }
    return "UNKNOWN";
}

std::vector<Check> verify_level_counts(const Lattice& lattice) {
    Check check{"level-counts", CheckStatus::pass, geometry_json(lattice)};
    Json counts = Json::array();
    for (int k = 0; k <= lattice.rank(); ++k) {
        ExactInt expected = lattice.level_count(k);
        long actual = static_cast<long>(lattice.level(k).size());
        Json entry;
        entry["rank"] = k;
        entry["count"] = std::to_string(actual);
        entry["expected"] = expected.get_str();
        counts.push_back(entry);
        if (ExactInt(actual) != expected) check.status = CheckStatus::fail;
    }
    check.details["levels"] = std::move(counts);
    return {check};
}

std::vector<Check> verify_complement_counts(const Lattice& lattice) {
    std::vector<Check> out;
    int n = lattice.rank();
    int q = lattice.field().q();
    for (int k = 0; k <= n; ++k) {
        Check check{"complement-count rank " + std::to_string(k),
                    CheckStatus::pass, geometry_json(lattice)};
        ExactInt expected =
            int_pow(q, static_cast<unsigned long>(k) *
                           static_cast<unsigned long>(n - k));
        check.details["expected"] = expected.get_str();
        check.details["flats"] = std::to_string(lattice.level(k).size());
        for (const Flat& a : lattice.level(k)) {
            long count = static_cast<long>(complements(lattice, a).size());
            if (ExactInt(count) != expected) {
                check.status = CheckStatus::fail;
                check.details["counterexample"] = flat_matrix_json(a);
                check.details["count"] = std::to_string(count);
                break;
            }
        }
        out.push_back(std::move(check));
    }
    return out;
}

std::vector<Check> verify_sequence_counts(const Lattice& lattice, int p) {
    int n = lattice.rank();
    std::vector<Check> out;

    Check full{"full-sequence-count p=" + std::to_string(p), CheckStatus::pass,
               geometry_json(lattice)};
    long vectors = 0;
    for (const RankVector& alpha : enumerate_compositions(n, p)) {
        ExactInt expected =
            sequence_count_formula(lattice, alpha, SequenceMode::full);
        long actual = static_cast<long>(
            enumerate_sequences(lattice, p, alpha, SequenceMode::full).size());
        ++vectors;
        if (ExactInt(actual) != expected) {
            full.status = CheckStatus::fail;
            full.details["counterexample"] = rank_vector_json(alpha);
            full.details["count"] = std::to_string(actual);
            full.details["expected"] = expected.get_str();
            break;
        }
    }
    full.details["rank_vectors"] = vectors;
    out.push_back(std::move(full));

    Check partial{"partial-sequence-count p=" + std::to_string(p),
                  CheckStatus::pass, geometry_json(lattice)};
    vectors = 0;
    for (int m = 0; m <= n && partial.status == CheckStatus::pass; ++m) {
        for (const RankVector& alpha : enumerate_compositions(m, p)) {
            ExactInt expected =
                sequence_count_formula(lattice, alpha, SequenceMode::partial);
            long actual = static_cast<long>(
                enumerate_sequences(lattice, p, alpha, SequenceMode::partial)
                    .size());
            ++vectors;
            if (ExactInt(actual) != expected) {
                partial.status = CheckStatus::fail;
                partial.details["counterexample"] = rank_vector_json(alpha);
                partial.details["count"] = std::to_string(actual);
                partial.details["expected"] = expected.get_str();
                break;
            }
        }
    }
    partial.details["rank_vectors"] = vectors;
    out.push_back(std::move(partial));
    return out;
}

namespace {

struct GeneratedSuite {
    Check admissible;
    Check lym;
    Check size;
    long equalities = 0;
};

// Shared driver for the generated-family suites.
GeneratedSuite run_generated(const Lattice& lattice, int p, int l, int families,
                             std::uint64_t seed, SequenceMode mode,
                             LymMode lym_mode, const ExactRat& lym_limit,
                             const ExactInt& size_limit, const char* prefix) {
    GeneratedSuite suite{
        {std::string(prefix) + "-generator-admissible", CheckStatus::pass, {}},
        {std::string(prefix) + "-lym-bound", CheckStatus::pass, {}},
        {std::string(prefix) + "-size-bound", CheckStatus::pass, {}},
        0};
    ChainScope scope =
        mode == SequenceMode::full ? ChainScope::full : ChainScope::partial;
    Rng rng(seed);
    for (int i = 0; i < families; ++i) {
        Family fam = generate_admissible_family(lattice, p, l, mode, rng, 12);
        if (!check_chain_condition(lattice, fam, l, scope).ok) {
            suite.admissible.status = CheckStatus::fail;
            suite.admissible.details["family"] = family_to_json(fam, lattice);
            suite.admissible.details["index"] = i;
            break;
        }
        ExactRat sum = lym_sum(lattice, fam, lym_mode);
        if (sum == lym_limit) ++suite.equalities;
        if (sum > lym_limit) {
            suite.lym.status = CheckStatus::fail;
            suite.lym.details["family"] = family_to_json(fam, lattice);
            suite.lym.details["sum"] = rational_json(sum);
            suite.lym.details["index"] = i;
            break;
        }
        if (ExactInt(fam.size()) > size_limit) {
            suite.size.status = CheckStatus::fail;
            suite.size.details["family"] = family_to_json(fam, lattice);
            suite.size.details["index"] = i;
            break;
        }
    }
    Json common;
    common["n"] = lattice.rank();
    common["q"] = lattice.field().q();
    common["p"] = p;
    common["l"] = l;
    common["families"] = families;
    common["seed"] = seed;
    suite.admissible.details.update(common);
    suite.lym.details.update(common);
    suite.lym.details["limit"] =
        lym_limit.get_den() == 1 ? lym_limit.get_num().get_str()
                                 : lym_limit.get_str();
    suite.lym.details["equalities"] = suite.equalities;
    suite.size.details.update(common);
    suite.size.details["limit"] = size_limit.get_str();
    return suite;
}

} // namespace

std::vector<Check> verify_main_bounds(const Lattice& lattice, int p, int l,
                                      int families, std::uint64_t seed) {
    ProblemParams params{lattice.rank(), p, l, lattice.field().q()};
    ExactRat limit(int_pow(l, static_cast<unsigned long>(p - 1)));
    ExactInt size_limit = bound(params, BoundMode::main).value;
    GeneratedSuite suite =
        run_generated(lattice, p, l, families, seed, SequenceMode::full,
                      LymMode::main, limit, size_limit, "main");
    return {suite.admissible, suite.lym, suite.size};
}

std::vector<Check> verify_weak_bounds(const Lattice& lattice, int p, int l,
                                      int families, std::uint64_t seed) {
    ProblemParams params{lattice.rank(), p, l, lattice.field().q()};
    BoundResult weak = bound(params, BoundMode::weak);
    GeneratedSuite suite =
        run_generated(lattice, p, l, families, seed, SequenceMode::full,
                      LymMode::weak, ExactRat(weak.value), weak.value, "weak");
    // Family size is governed by the main bound, not the weak one; only the
    // LYM comparison is meaningful here.
    return {suite.admissible, suite.lym};
}

std::vector<Check> verify_partial_bounds(const Lattice& lattice, int p, int l,
                                         int families, std::uint64_t seed) {
    ProblemParams params{lattice.rank(), p, l, lattice.field().q()};
    ExactRat limit(int_pow(l, static_cast<unsigned long>(p)));
    ExactInt size_limit = bound(params, BoundMode::partial).value;
    GeneratedSuite suite =
        run_generated(lattice, p, l, families, seed, SequenceMode::partial,
                      LymMode::partial, limit, size_limit, "partial");
    return {suite.admissible, suite.lym, suite.size};
}

std::vector<Check> verify_partial_antichain(const Lattice& lattice, int p,
                                            long node_budget) {
    ProblemParams params{lattice.rank(), p, 1, lattice.field().q()};
    Family fam = construct_partial_antichain_family(lattice, p);
    ExactInt bound_value = bound(params, BoundMode::partial).value;
    ExactRat sum = lym_sum(lattice, fam, LymMode::partial);

    Check size_check{"partial-antichain-size", CheckStatus::pass,
                     geometry_json(lattice)};
    size_check.details["p"] = p;
    size_check.details["construction_size"] = std::to_string(fam.size());
    size_check.details["bound"] = bound_value.get_str();
    ExactInt observed(fam.size());
    SearchConfig config;
    config.params = params;
    config.mode = SequenceMode::partial;
    config.node_budget = node_budget;
    try {
        SearchResult search = search_max_family(config, lattice);
        if (search.exhausted) {
            observed = search.max_size;
            size_check.details["search_max"] = search.max_size.get_str();
        } else {
            size_check.details["search"] = "node budget exhausted";
        }
    } catch (const std::invalid_argument& e) {
        size_check.details["search"] = e.what();
    }
    if (observed != bound_value) {
        size_check.status = CheckStatus::report;
        size_check.details["note"] =
            "observed maximum differs from the size bound at this instance";
    }

    Check lym_check{"partial-antichain-lym", CheckStatus::pass,
                    geometry_json(lattice)};
    lym_check.details["p"] = p;
    lym_check.details["sum"] = rational_json(sum);
    if (sum != ExactRat(1)) lym_check.status = CheckStatus::fail;

    return {size_check, lym_check};
}

std::vector<Check> verify_rh_construction(const Lattice& lattice) {
    std::vector<Check> out;
    int n = lattice.rank();
    for (int l = 1; l <= n + 1; ++l) {
        Check check{"rh-construction l=" + std::to_string(l), CheckStatus::pass,
                    geometry_json(lattice)};
        std::vector<Flat> flats = construct_rh_levels(lattice, l);
        ProblemParams params{n, 1, l, lattice.field().q()};
        ExactInt expected_size = bound(params, BoundMode::rota_harper).value;
        int chain = longest_chain(lattice, flats);
        ExactRat sum = level_weighted_sum(lattice, flats);
        check.details["size"] = std::to_string(flats.size());
        check.details["expected_size"] = expected_size.get_str();
        check.details["longest_chain"] = chain;
        check.details["sum"] = rational_json(sum);
        if (ExactInt(static_cast<long>(flats.size())) != expected_size ||
            chain != l || sum != ExactRat(l)) {
            check.status = CheckStatus::fail;
        }
        out.push_back(std::move(check));
    }
    return out;
}

std::vector<Check> verify_balanced_equality(const Lattice& lattice, int p) {
    Check check{"balanced-equality p=" + std::to_string(p), CheckStatus::pass,
                geometry_json(lattice)};
    Family fam = construct_balanced_family(lattice, p);
    ProblemParams params{lattice.rank(), p, 1, lattice.field().q()};
    ExactInt size_bound = bound(params, BoundMode::main).value;
    ExactRat sum = lym_sum(lattice, fam, LymMode::main);
    RankVector alpha = balanced_composition(lattice.rank(), p);

    check.details["size"] = std::to_string(fam.size());
    check.details["bound"] = size_bound.get_str();
    check.details["sum"] = rational_json(sum);
    if (ExactInt(fam.size()) != size_bound || sum != ExactRat(1)) {
        check.status = CheckStatus::fail;
    }
    if (!check_chain_condition(lattice, fam, 1, ChainScope::full).ok) {
        check.status = CheckStatus::fail;
        check.details["chain"] = "antichain condition violated";
    }
    for (int k = 0; k < p; ++k) {
        ExactInt level = lattice.level_count(alpha[k]);
        if (ExactInt(static_cast<long>(fam.projection(k).size())) != level) {
            check.status = CheckStatus::fail;
            check.details["projection"] = k + 1;
        }
    }
    return {check};
}

std::vector<Check> verify_lift_identity(const Lattice& lattice,
                                        int random_antichains,
                                        std::uint64_t seed) {
    Check check{"lift-identity", CheckStatus::pass, geometry_json(lattice)};
    long cases = 0;
    auto examine = [&](const std::vector<Flat>& source) {
        Family lifted = rota_harper_lift(lattice, source);
        ExactRat sum = lym_sum(lattice, lifted, LymMode::main);
        ExactRat expected = level_weighted_sum(lattice, source);
        ExactInt expected_size(0);
        int n = lattice.rank();
        for (const Flat& a : source) {
            expected_size +=
                int_pow(lattice.field().q(),
                        static_cast<unsigned long>(a.rank()) *
                            static_cast<unsigned long>(n - a.rank()));
        }
        ++cases;
        if (sum != expected || ExactInt(lifted.size()) != expected_size) {
            check.status = CheckStatus::fail;
            check.details["counterexample"] =
                flat_set_doc_json(source, lattice);
            check.details["sum"] = rational_json(sum);
            check.details["expected"] = rational_json(expected);
            return false;
        }
        return true;
    };

    for (int k = 0; k <= lattice.rank(); ++k) {
        if (!examine(lattice.level(k))) break;
    }
    Rng rng(seed);
    for (int i = 0; i < random_antichains && check.status == CheckStatus::pass;
         ++i) {
        examine(random_antichain(lattice, rng, 6));
    }
    check.details["cases"] = cases;
    return {check};
}

std::vector<Check> verify_hkr_agreement(int instances, std::uint64_t seed) {
    Check check{"hkr-agreement", CheckStatus::pass, {}};
    check.details["instances"] = instances;
    check.details["seed"] = seed;
    Rng rng(seed);

    auto random_rat = [&](long num_range, long den_range) {
        ExactRat r(static_cast<long>(rng.below(static_cast<std::uint64_t>(num_range))),
                   1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den_range))));
        r.canonicalize();
        return r;
    };

    for (int i = 0; i < instances; ++i) {
        long n = 1 + static_cast<long>(rng.below(8));
        std::vector<ExactRat> m;
        for (long k = 0; k < n; ++k) m.push_back(random_rat(41, 6));
        if (rng.chance(1, 5)) {
            // Zero tail exercises the m_P = 0 branch.
            long zeros = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
            for (long k = n - zeros; k < n; ++k) m[static_cast<std::size_t>(k)] = 0;
        }
        std::sort(m.begin(), m.end(), std::greater<ExactRat>());
        long P = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));

        std::vector<ExactRat> qs(static_cast<std::size_t>(n), ExactRat(0));
        if (rng.chance(3, 10)) {
            // Saturating assignment: ones down to P, tie block filled to
            // the exact slack, zeros below. Lands on equality when m_P > 0.
            for (long k = 0; k < P; ++k) qs[static_cast<std::size_t>(k)] = 1;
        } else {
            ExactRat total(0);
            for (auto& q : qs) {
                q = random_rat(7, 6);
                if (q > 1) q = 1;
                total += q;
            }
            if (total > ExactRat(P)) {
                ExactRat scale = ExactRat(P) / total;
                for (auto& q : qs) q *= scale;
            }
        }

        HkrResult res = hkr_apply(m, qs, P);

        // Direct evaluation, written out independently of hkr_apply.
        ExactRat direct_value(0);
        for (long k = 0; k < n; ++k) {
            direct_value +=
                qs[static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)];
        }
        ExactRat direct_bound(0);
        for (long k = 0; k < P; ++k) {
            direct_bound += m[static_cast<std::size_t>(k)];
        }

        bool ok = res.weighted_value == direct_value &&
                  res.prefix_bound == direct_bound &&
                  res.inequality_holds == (direct_value <= direct_bound) &&
                  direct_value <= direct_bound;
        if (ok && res.certificate_applicable) {
            ok = res.equality == (direct_value == direct_bound);
        }
        if (!ok) {
            check.status = CheckStatus::fail;
            Json bad;
            Json marr = Json::array();
            for (const auto& v : m) marr.push_back(rational_json(v));
            Json qarr = Json::array();
            for (const auto& v : qs) qarr.push_back(rational_json(v));
            bad["m"] = std::move(marr);
            bad["qs"] = std::move(qarr);
            bad["P"] = P;
            check.details["counterexample"] = std::move(bad);
            break;
        }
    }
    return {check};
}

} // namespace meshalkin
