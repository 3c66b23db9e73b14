#include "meshalkin/extremal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace meshalkin {

namespace {

// Longest-chain bookkeeping for one constrained coordinate: flats are
// interned once, comparability is precomputed, and feasibility of adding
// one flat is a DP over the present ids in rank order.
class CoordinateTracker {
public:
    CoordinateTracker(const Lattice& lattice, std::vector<Flat> distinct, int l)
        : l_(l) {
        std::sort(distinct.begin(), distinct.end(), [](const Flat& a, const Flat& b) {
            if (a.rank() != b.rank()) return a.rank() < b.rank();
            return a < b;
        });
        flats_ = std::move(distinct);
        for (std::size_t i = 0; i < flats_.size(); ++i) ids_[flats_[i]] = static_cast<int>(i);
        less_.assign(flats_.size(), std::vector<bool>(flats_.size(), false));
        for (std::size_t i = 0; i < flats_.size(); ++i) {
            for (std::size_t j = 0; j < flats_.size(); ++j) {
                if (flats_[i].rank() < flats_[j].rank() &&
                    leq(lattice, flats_[i], flats_[j])) {
                    less_[i][j] = true;
                }
            }
        }
        count_.assign(flats_.size(), 0);
        scratch_.assign(flats_.size(), 0);
    }

    int id_of(const Flat& f) const { return ids_.at(f); }

    bool can_add(int x) {
        int longest = 0;
        for (std::size_t i = 0; i < flats_.size(); ++i) {
            if (count_[i] == 0 && static_cast<int>(i) != x) {
                scratch_[i] = 0;
                continue;
            }
            int best = 1;
            for (std::size_t j = 0; j < i; ++j) {
                if (scratch_[j] > 0 && less_[j][i] && scratch_[j] + 1 > best) {
                    best = scratch_[j] + 1;
                }
            }
            scratch_[i] = best;
            longest = std::max(longest, best);
        }
        return longest <= l_;
    }

    void add(int x) { ++count_[static_cast<std::size_t>(x)]; }
    void remove(int x) { --count_[static_cast<std::size_t>(x)]; }

private:
    int l_;
    std::vector<Flat> flats_;
    std::map<Flat, int> ids_;
    std::vector<std::vector<bool>> less_;
    std::vector<long> count_;
    std::vector<int> scratch_;
};

struct Universe {
    std::vector<MeshalkinSequence> elements; // laid out group by group
    std::vector<int> group_of;
    std::vector<ExactInt> group_weight;
    std::vector<long> group_total;
};

Universe build_universe(const SearchConfig& config, const Lattice& lattice) {
    const ProblemParams& pp = config.params;
    std::vector<RankVector> alphas;
    if (config.mode == SequenceMode::full) {
        alphas = enumerate_compositions(pp.n, pp.p);
    } else {
        for (int m = 0; m <= pp.n; ++m) {
            for (RankVector& a : enumerate_compositions(m, pp.p)) {
                alphas.push_back(std::move(a));
            }
        }
    }

    std::vector<std::pair<RankVector, ExactInt>> groups;
    for (const RankVector& alpha : alphas) {
        groups.emplace_back(alpha,
                            sequence_count_formula(lattice, alpha, config.mode));
    }
    // Heaviest groups first: big families are found early and the LYM
    // bound tightens fast.
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Universe out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto seqs = enumerate_sequences(lattice, pp.p, groups[g].first, config.mode);
        out.group_weight.push_back(groups[g].second);
        out.group_total.push_back(static_cast<long>(seqs.size()));
        for (auto& s : seqs) {
            out.elements.push_back(std::move(s));
            out.group_of.push_back(static_cast<int>(g));
        }
    }
    if (config.order_seed != 0) {
        std::mt19937_64 eng(config.order_seed);
        for (std::size_t i = out.elements.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(eng() % i);
            std::swap(out.elements[i - 1], out.elements[j]);
            std::swap(out.group_of[i - 1], out.group_of[j]);
        }
    }
    return out;
}

bool family_less(const Family& a, const Family& b) {
    return std::lexicographical_compare(a.sequences().begin(), a.sequences().end(),
                                        b.sequences().begin(), b.sequences().end());
}

class Searcher {
public:
    Searcher(const SearchConfig& config, const Lattice& lattice)
        : config_(config), lattice_(lattice) {
        config_.params.validate();
        if (lattice.rank() != config_.params.n ||
            lattice.field().q() != config_.params.q) {
            throw std::invalid_argument("lattice does not match search params");
        }
        universe_ = build_universe(config_, lattice_);
        if (static_cast<long>(universe_.elements.size()) > config_.node_budget) {
            throw std::invalid_argument(
                "sequence universe of " +
                std::to_string(universe_.elements.size()) +
                " exceeds the node budget of " +
                std::to_string(config_.node_budget));
        }
        // Recursion depth equals the universe size; keep it stack-safe even
        // when the caller raises the node budget.
        if (universe_.elements.size() > 30'000) {
            throw std::invalid_argument(
                "sequence universe of " +
                std::to_string(universe_.elements.size()) +
                " is beyond the supported search size (30000)");
        }

        int constrained = config_.mode == SequenceMode::full
                              ? config_.params.p - 1
                              : config_.params.p;
        for (int k = 0; k < constrained; ++k) {
            std::set<Flat> distinct;
            for (const auto& s : universe_.elements) {
                distinct.insert(s.flats[static_cast<std::size_t>(k)]);
            }
            trackers_.emplace_back(lattice_,
                                   std::vector<Flat>(distinct.begin(), distinct.end()),
                                   config_.params.l);
        }
        coord_ids_.resize(universe_.elements.size());
        for (std::size_t i = 0; i < universe_.elements.size(); ++i) {
            for (int k = 0; k < constrained; ++k) {
                coord_ids_[i].push_back(trackers_[static_cast<std::size_t>(k)].id_of(
                    universe_.elements[i].flats[static_cast<std::size_t>(k)]));
            }
        }

        group_cost_.reserve(universe_.group_weight.size());
        for (const ExactInt& w : universe_.group_weight) {
            group_cost_.push_back(reciprocal(w));
        }
        remaining_ = universe_.group_total;
        groups_by_weight_.resize(universe_.group_weight.size());
        std::iota(groups_by_weight_.begin(), groups_by_weight_.end(), 0);
        // Universe groups are already sorted by weight descending.

        unsigned long exponent = static_cast<unsigned long>(
            config_.mode == SequenceMode::full ? config_.params.p - 1
                                               : config_.params.p);
        budget_total_ = ExactRat(int_pow(config_.params.l, exponent));
    }

    long universe_size() const {
        return static_cast<long>(universe_.elements.size());
    }

    // Phase 1: maximum size.
    void run_max() {
        enumerate_ = false;
        best_ = 0;
        best_sets_.assign(1, {});
        dfs(0);
    }

    // Phase 2: every family of the given size.
    void run_enumerate(long target) {
        enumerate_ = true;
        target_ = target;
        best_sets_.clear();
        dfs(0);
    }

    bool aborted() const { return aborted_; }
    long nodes() const { return nodes_; }
    long best() const { return best_; }

    std::vector<Family> materialize() const {
        std::vector<Family> out;
        for (const auto& set : best_sets_) {
            Family fam(config_.params.p, config_.mode);
            for (int idx : set) {
                fam.insert(universe_.elements[static_cast<std::size_t>(idx)]);
            }
            out.push_back(std::move(fam));
        }
        std::sort(out.begin(), out.end(), family_less);
        return out;
    }

private:
    long greedy_upper(ExactRat slack) const {
        long total = 0;
        for (int g : groups_by_weight_) {
            long r = remaining_[static_cast<std::size_t>(g)];
            if (r == 0) continue;
            ExactRat cap = slack * ExactRat(universe_.group_weight[static_cast<std::size_t>(g)]);
            ExactInt fl;
            mpz_fdiv_q(fl.get_mpz_t(), cap.get_num().get_mpz_t(),
                       cap.get_den().get_mpz_t());
            long t = r;
            if (fl < t) t = fl.get_si();
            if (t <= 0) break; // later groups are at least as expensive
            total += t;
            slack -= ExactRat(t) * group_cost_[static_cast<std::size_t>(g)];
        }
        return total;
    }

    void dfs(std::size_t idx) {
        if (aborted_) return;
        if (++nodes_ > config_.node_budget) {
            aborted_ = true;
            return;
        }
        if (idx == universe_.elements.size()) {
            long size = static_cast<long>(chosen_.size());
            if (enumerate_) {
                if (size == target_) best_sets_.push_back(chosen_);
            } else if (size > best_) {
                best_ = size;
                best_sets_.assign(1, chosen_);
            }
            return;
        }

        long upper = static_cast<long>(chosen_.size()) +
                     greedy_upper(budget_total_ - lym_current_);
        if (enumerate_ ? upper < target_ : upper <= best_) return;

        int g = universe_.group_of[idx];
        --remaining_[static_cast<std::size_t>(g)];

        bool feasible = true;
        for (std::size_t k = 0; k < trackers_.size(); ++k) {
            if (!trackers_[k].can_add(coord_ids_[idx][k])) {
                feasible = false;
                break;
            }
        }
        if (feasible) {
            for (std::size_t k = 0; k < trackers_.size(); ++k) {
                trackers_[k].add(coord_ids_[idx][k]);
            }
            lym_current_ += group_cost_[static_cast<std::size_t>(g)];
            chosen_.push_back(static_cast<int>(idx));
            dfs(idx + 1);
            chosen_.pop_back();
            lym_current_ -= group_cost_[static_cast<std::size_t>(g)];
            for (std::size_t k = 0; k < trackers_.size(); ++k) {
                trackers_[k].remove(coord_ids_[idx][k]);
            }
        }
        dfs(idx + 1);

        ++remaining_[static_cast<std::size_t>(g)];
    }

    SearchConfig config_;
    const Lattice& lattice_;
    Universe universe_;
    std::vector<CoordinateTracker> trackers_;
    std::vector<std::vector<int>> coord_ids_;
    std::vector<ExactRat> group_cost_;
    std::vector<long> remaining_;
    std::vector<int> groups_by_weight_;
    ExactRat budget_total_;
    ExactRat lym_current_ = 0;
    std::vector<int> chosen_;
    long best_ = 0;
    std::vector<std::vector<int>> best_sets_;
    long nodes_ = 0;
    bool aborted_ = false;
    bool enumerate_ = false;
    long target_ = 0;
};

} // namespace

Family construct_balanced_family(const Lattice& lattice, int p) {
    if (p < 2) throw std::invalid_argument("balanced family needs p >= 2");
    RankVector alpha = balanced_composition(lattice.rank(), p);
    Family out(p, SequenceMode::full);
    for (auto& s : enumerate_sequences(lattice, p, alpha, SequenceMode::full)) {
        out.insert(std::move(s));
    }
    return out;
}

std::vector<Flat> construct_rh_levels(const Lattice& lattice, int l) {
    int n = lattice.rank();
    if (l < 1 || l > n + 1) {
        throw std::invalid_argument("l must lie in [1, " + std::to_string(n + 1) +
                                    "]");
    }
    std::vector<int> ranks(static_cast<std::size_t>(n) + 1);
    std::iota(ranks.begin(), ranks.end(), 0);
    std::sort(ranks.begin(), ranks.end(), [&](int a, int b) {
        ExactInt ca = lattice.level_count(a);
        ExactInt cb = lattice.level_count(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    std::vector<Flat> out;
    for (int i = 0; i < l; ++i) {
        const auto& level = lattice.level(ranks[static_cast<std::size_t>(i)]);
        out.insert(out.end(), level.begin(), level.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Family construct_partial_antichain_family(const Lattice& lattice, int p) {
    std::vector<Family> candidates =
        balanced_candidate_families(lattice, p, SequenceMode::partial);
    if (candidates.empty()) {
        throw std::logic_error("no ceil/floor arrangement fits the geometry");
    }
    return candidates.front();
}

std::vector<Family> balanced_candidate_families(const Lattice& lattice, int p,
                                                SequenceMode mode) {
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    int n = lattice.rank();
    std::set<std::vector<int>> vectors;
    if (mode == SequenceMode::full) {
        std::vector<int> parts = balanced_composition(n, p).parts();
        std::sort(parts.begin(), parts.end());
        do {
            vectors.insert(parts);
        } while (std::next_permutation(parts.begin(), parts.end()));
    } else {
        int floor_rank = n / (p + 1);
        int ceil_rank = (n + p) / (p + 1);
        if (p > 20) throw std::invalid_argument("p too large for candidate scan");
        for (unsigned long mask = 0; mask < (1UL << p); ++mask) {
            std::vector<int> choice(static_cast<std::size_t>(p), floor_rank);
            for (int k = 0; k < p; ++k) {
                if (mask & (1UL << k)) choice[static_cast<std::size_t>(k)] = ceil_rank;
            }
            long sum = std::accumulate(choice.begin(), choice.end(), 0L);
            if (sum <= n) vectors.insert(std::move(choice));
        }
    }

    std::vector<Family> out;
    for (const auto& v : vectors) {
        Family fam(p, mode);
        for (auto& s : enumerate_sequences(lattice, p, RankVector(v), mode)) {
            fam.insert(std::move(s));
        }
        out.push_back(std::move(fam));
    }
    // Arrangements can differ in size in partial mode; only the biggest are
    // equality candidates.
    long best = 0;
    for (const Family& f : out) best = std::max(best, f.size());
    std::erase_if(out, [&](const Family& f) { return f.size() != best; });
    std::sort(out.begin(), out.end(), family_less);
    return out;
}

SearchResult search_max_family(const SearchConfig& config,
                               const Lattice& lattice) {
    Searcher searcher(config, lattice);
    searcher.run_max();
    SearchResult out;
    out.max_size = searcher.best();
    out.witnesses = searcher.materialize();
    out.bound_value = bound(config.params, config.mode == SequenceMode::full
                                               ? BoundMode::main
                                               : BoundMode::partial)
                          .value;
    out.gap = out.bound_value - out.max_size;
    out.exhausted = !searcher.aborted();
    out.nodes = searcher.nodes();
    return out;
}

EnumerationResult enumerate_maximum_families(const SearchConfig& config,
                                             const Lattice& lattice) {
    if (!config.report_all_maxima) {
        throw std::invalid_argument(
            "enumerate_maximum_families requires report_all_maxima");
    }
    Searcher max_search(config, lattice);
    max_search.run_max();
    EnumerationResult out;
    out.max_size = max_search.best();
    if (max_search.aborted()) {
        out.exhausted = false;
        out.nodes = max_search.nodes();
        return out;
    }
    Searcher enumerator(config, lattice);
    enumerator.run_enumerate(max_search.best());
    out.maxima = enumerator.materialize();
    out.exhausted = !enumerator.aborted();
    out.nodes = max_search.nodes() + enumerator.nodes();
    return out;
}

UniquenessReport check_uniqueness(const SearchConfig& config,
                                  const Lattice& lattice) {
    UniquenessReport out;
    out.candidates =
        balanced_candidate_families(lattice, config.params.p, config.mode);

    SearchResult max_result = search_max_family(config, lattice);
    out.enumeration.max_size = max_result.max_size;
    out.enumeration.nodes = max_result.nodes;
    if (!max_result.exhausted) {
        out.reason = "maximum search did not exhaust within the node budget";
        return out;
    }
    ExactInt candidate_size =
        out.candidates.empty() ? ExactInt(0)
                               : ExactInt(out.candidates.front().size());
    if (config.params.l == 1 && candidate_size != max_result.max_size) {
        // Decided without listing every maximum: no candidate can be one.
        out.enumeration.maxima = max_result.witnesses;
        out.verdict = ConjectureVerdict::counterexample;
        out.reason = "the maximum (" + max_result.max_size.get_str() +
                     ") exceeds every balanced candidate (" +
                     candidate_size.get_str() + ")";
        return out;
    }

    SearchConfig enum_config = config;
    enum_config.report_all_maxima = true;
    out.enumeration = enumerate_maximum_families(enum_config, lattice);
    if (!out.enumeration.exhausted) {
        out.reason = "maxima enumeration did not exhaust within the node budget";
        return out;
    }
    if (config.params.l != 1) {
        out.reason = "the balanced description applies to l = 1 only";
        return out;
    }
    bool equal = out.enumeration.maxima.size() == out.candidates.size() &&
                 std::equal(out.enumeration.maxima.begin(),
                            out.enumeration.maxima.end(), out.candidates.begin());
    out.verdict = equal ? ConjectureVerdict::confirmed
                        : ConjectureVerdict::counterexample;
    out.reason = equal ? "the maximum families are exactly the balanced ones"
                       : "a maximum family differs from the balanced ones";
    return out;
}

} // namespace meshalkin
