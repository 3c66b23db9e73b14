#include "meshalkin/meshalkin.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace meshalkin {

namespace {

void check_same_lattice(const Lattice& lattice, const std::vector<Flat>& flats) {
    for (const Flat& f : flats) {
        if (f.ambient != lattice.rank()) {
            throw std::invalid_argument(
                "sequence mixes lattices: flat ambient " +
                std::to_string(f.ambient) + " vs lattice rank " +
                std::to_string(lattice.rank()));
        }
    }
}

ExactInt lym_denominator(const Lattice& lattice, const MeshalkinSequence& seq,
                         LymMode mode) {
    int q = lattice.field().q();
    RankVector rv = seq.rank_vector();
    switch (mode) {
    case LymMode::main:
        return gaussian_multinomial(lattice.rank(), rv, q) *
               int_pow(q, static_cast<unsigned long>(pair_product_sum(rv)));
    case LymMode::weak:
        return gaussian_multinomial(lattice.rank(), rv, q);
    case LymMode::partial: {
        int m = seq.join_flat.rank();
        return gaussian_binomial(lattice.rank(), m, q) *
               gaussian_multinomial(m, rv, q) *
               int_pow(q, static_cast<unsigned long>(pair_product_sum(rv)));
    }
    }
    throw std::logic_error("unknown lym mode");
}

// Sum of the P largest values, ties resolved toward lexicographically
// smaller keys; returns the selected keys sorted lexicographically.
BoundResult largest_sum(std::vector<std::pair<RankVector, ExactInt>> candidates,
                        const ExactInt& take) {
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });
    std::size_t count = candidates.size();
    if (take < ExactInt(static_cast<long>(count))) {
        count = static_cast<std::size_t>(take.get_ui());
    }
    BoundResult out;
    out.value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        out.value += candidates[i].second;
        out.alphas.push_back(candidates[i].first);
    }
    std::sort(out.alphas.begin(), out.alphas.end());
    return out;
}

} // namespace

void ProblemParams::validate() const {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    if (l < 1) throw std::invalid_argument("l must be at least 1");
    if (q < 2) throw std::invalid_argument("q must be at least 2");
}

RankVector MeshalkinSequence::rank_vector() const {
    std::vector<int> ranks;
    ranks.reserve(flats.size());
    for (const Flat& f : flats) ranks.push_back(f.rank());
    return RankVector(std::move(ranks));
}

SequenceCheck check_sequence(const Lattice& lattice,
                             const std::vector<Flat>& flats,
                             SequenceMode mode) {
    if (flats.empty()) {
        return {false, "sequence is empty", lattice.bottom()};
    }
    check_same_lattice(lattice, flats);
    Flat acc = lattice.bottom();
    long rank_total = 0;
    for (std::size_t k = 0; k < flats.size(); ++k) {
        acc = join(lattice, acc, flats[k]);
        rank_total += flats[k].rank();
    }
    if (acc.rank() != rank_total) {
        return {false,
                "rank additivity fails: join has rank " +
                    std::to_string(acc.rank()) + ", ranks sum to " +
                    std::to_string(rank_total),
                acc};
    }
    if (mode == SequenceMode::full && acc.rank() != lattice.rank()) {
        return {false,
                "join has rank " + std::to_string(acc.rank()) +
                    ", not the whole geometry of rank " +
                    std::to_string(lattice.rank()),
                acc};
    }
    return {true, "", acc};
}

MeshalkinSequence make_sequence(const Lattice& lattice, std::vector<Flat> flats,
                                SequenceMode mode) {
    SequenceCheck check = check_sequence(lattice, flats, mode);
    if (!check.ok) throw std::invalid_argument(check.reason);
    return MeshalkinSequence{std::move(flats), std::move(check.join_flat)};
}

Family::Family(int p, SequenceMode mode) : p_(p), mode_(mode) {
    if (p < 1) throw std::invalid_argument("family needs p >= 1");
}

bool Family::insert(MeshalkinSequence s) {
    if (static_cast<int>(s.flats.size()) != p_) {
        throw std::invalid_argument("sequence length " +
                                    std::to_string(s.flats.size()) +
                                    " does not match family p = " +
                                    std::to_string(p_));
    }
    return seqs_.insert(std::move(s)).second;
}

bool Family::contains(const MeshalkinSequence& s) const {
    return seqs_.count(s) > 0;
}

std::map<RankVector, long> Family::profile() const {
    std::map<RankVector, long> out;
    for (const auto& s : seqs_) out[s.rank_vector()]++;
    return out;
}

std::vector<Flat> Family::projection(int k) const {
    if (k < 0 || k >= p_) {
        throw std::invalid_argument("projection index " + std::to_string(k) +
                                    " outside [0, " + std::to_string(p_) + ")");
    }
    std::set<Flat> distinct;
    for (const auto& s : seqs_) distinct.insert(s.flats[static_cast<std::size_t>(k)]);
    return {distinct.begin(), distinct.end()};
}

int longest_chain(const Lattice& lattice, const std::vector<Flat>& flats) {
    std::vector<Flat> sorted = flats;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    // Comparable flats have strictly increasing rank, so ordering by rank
    // makes the longest-chain recurrence a forward pass.
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Flat& a, const Flat& b) {
                         return a.rank() < b.rank();
                     });
    std::vector<int> best(sorted.size(), 1);
    int overall = sorted.empty() ? 0 : 1;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (sorted[j].rank() < sorted[i].rank() && best[j] + 1 > best[i] &&
                leq(lattice, sorted[j], sorted[i])) {
                best[i] = best[j] + 1;
            }
        }
        overall = std::max(overall, best[i]);
    }
    return overall;
}

ChainCheck check_chain_condition(const Lattice& lattice, const Family& family,
                                 int l, ChainScope scope) {
    if (l < 1) throw std::invalid_argument("l must be at least 1");
    int constrained = scope == ChainScope::full ? family.p() - 1 : family.p();
    for (int k = 0; k < constrained; ++k) {
        int chain = longest_chain(lattice, family.projection(k));
        if (chain > l) return {false, k + 1, chain};
    }
    return {true, 0, 0};
}

ExactRat lym_sum(const Lattice& lattice, const Family& family, LymMode mode) {
    if (mode != LymMode::partial && family.mode() != SequenceMode::full) {
        throw std::invalid_argument(
            "main and weak LYM sums are defined for full families only");
    }
    ExactRat sum(0);
    for (const auto& seq : family.sequences()) {
        sum += reciprocal(lym_denominator(lattice, seq, mode));
    }
    return sum;
}

BoundResult bound(const ProblemParams& params, BoundMode mode) {
    params.validate();
    std::vector<std::pair<RankVector, ExactInt>> candidates;
    ExactInt take;
    switch (mode) {
    case BoundMode::main:
    case BoundMode::weak: {
        for (const RankVector& alpha : enumerate_compositions(params.n, params.p)) {
            ExactInt value =
                mode == BoundMode::main
                    ? weighted_count(params.n, alpha, params.q)
                    : int_pow(params.q,
                              static_cast<unsigned long>(pair_product_sum(alpha)));
            candidates.emplace_back(alpha, std::move(value));
        }
        take = int_pow(params.l, static_cast<unsigned long>(params.p - 1));
        break;
    }
    case BoundMode::partial: {
        for (const RankVector& alpha :
             enumerate_compositions(params.n, params.p + 1)) {
            candidates.emplace_back(alpha,
                                    weighted_count(params.n, alpha, params.q));
        }
        take = int_pow(params.l, static_cast<unsigned long>(params.p));
        break;
    }
    case BoundMode::rota_harper: {
        for (int j = 0; j <= params.n; ++j) {
            candidates.emplace_back(RankVector{j},
                                    gaussian_binomial(params.n, j, params.q));
        }
        take = params.l;
        break;
    }
    }
    return largest_sum(std::move(candidates), take);
}

HkrResult hkr_apply(const std::vector<ExactRat>& m,
                    const std::vector<ExactRat>& qs, long P) {
    const long N = static_cast<long>(m.size());
    if (static_cast<long>(qs.size()) != N) {
        throw std::invalid_argument("m and qs must have equal length");
    }
    if (P < 1 || P > N) {
        throw std::invalid_argument("P = " + std::to_string(P) +
                                    " outside [1, " + std::to_string(N) + "]");
    }
    for (long i = 0; i < N; ++i) {
        std::size_t idx = static_cast<std::size_t>(i);
        if (m[idx] < 0) {
            throw std::invalid_argument("m negative at index " +
                                        std::to_string(i));
        }
        if (i > 0 && m[idx] > m[idx - 1]) {
            throw std::invalid_argument("m not sorted descending at index " +
                                        std::to_string(i));
        }
        if (qs[idx] < 0 || qs[idx] > 1) {
            throw std::invalid_argument("q outside [0,1] at index " +
                                        std::to_string(i));
        }
    }
    ExactRat q_total = std::accumulate(qs.begin(), qs.end(), ExactRat(0));
    if (q_total > ExactRat(P)) {
        throw std::invalid_argument("sum of q exceeds P");
    }

    HkrResult out;
    out.weighted_value = 0;
    for (long i = 0; i < N; ++i) {
        std::size_t idx = static_cast<std::size_t>(i);
        out.weighted_value += qs[idx] * m[idx];
    }
    out.prefix_bound = 0;
    for (long i = 0; i < P; ++i) {
        out.prefix_bound += m[static_cast<std::size_t>(i)];
    }
    out.inequality_holds = out.weighted_value <= out.prefix_bound;

    const ExactRat& pivot = m[static_cast<std::size_t>(P - 1)];
    out.certificate_applicable = pivot > 0;
    if (!out.certificate_applicable) return out;

    long first = 1;
    while (m[static_cast<std::size_t>(first - 1)] != pivot) ++first;
    long last = N;
    while (m[static_cast<std::size_t>(last - 1)] != pivot) --last;
    out.first_equal = first;
    out.last_equal = last;

    out.middle_sum = 0;
    for (long i = first; i <= last; ++i) {
        out.middle_sum += qs[static_cast<std::size_t>(i - 1)];
    }

    for (long i = 1; i < first && out.violation.empty(); ++i) {
        if (qs[static_cast<std::size_t>(i - 1)] != 1) {
            out.violation = "q[" + std::to_string(i) + "] != 1 although m[" +
                            std::to_string(i) + "] > m[" + std::to_string(P) +
                            "]";
        }
    }
    for (long i = last + 1; i <= N && out.violation.empty(); ++i) {
        if (qs[static_cast<std::size_t>(i - 1)] != 0) {
            out.violation = "q[" + std::to_string(i) + "] != 0 although m[" +
                            std::to_string(i) + "] < m[" + std::to_string(P) +
                            "]";
        }
    }
    if (out.violation.empty() && out.middle_sum != ExactRat(P - (first - 1))) {
        out.violation = "tie-block coefficient sum " +
                        ExactRat(out.middle_sum).get_str() + " != " +
                        std::to_string(P - (first - 1));
    }
    out.equality = out.violation.empty();
    return out;
}

Family rota_harper_lift(const Lattice& lattice, const std::vector<Flat>& flats) {
    check_same_lattice(lattice, flats);
    std::set<Flat> distinct(flats.begin(), flats.end());
    Family out(2, SequenceMode::full);
    for (const Flat& a : distinct) {
        for (const Flat& c : complements(lattice, a)) {
            out.insert(MeshalkinSequence{{a, c}, lattice.top()});
        }
    }
    return out;
}

std::vector<MeshalkinSequence> enumerate_sequences(const Lattice& lattice, int p,
                                                   const RankVector& alpha,
                                                   SequenceMode mode) {
    if (alpha.size() != p) {
        throw std::invalid_argument("rank vector has " +
                                    std::to_string(alpha.size()) +
                                    " parts, expected p = " + std::to_string(p));
    }
    long target = alpha.sum();
    if (mode == SequenceMode::full && target != lattice.rank()) {
        throw std::invalid_argument(
            "full sequences need rank sum n = " +
            std::to_string(lattice.rank()) + ", rank vector sums to " +
            std::to_string(target));
    }
    if (target > lattice.rank()) {
        throw std::invalid_argument("rank vector sum " + std::to_string(target) +
                                    " exceeds geometry rank " +
                                    std::to_string(lattice.rank()));
    }

    std::vector<MeshalkinSequence> out;
    std::vector<Flat> current;
    current.reserve(static_cast<std::size_t>(p));
    // Rank additivity of the whole sequence forces additivity of every
    // prefix, so extensions that break it can be pruned immediately.
    auto rec = [&](auto&& self, int idx, const Flat& joined, long rank_sum) -> void {
        if (idx == p) {
            out.push_back(MeshalkinSequence{current, joined});
            return;
        }
        for (const Flat& cand : lattice.level(alpha[idx])) {
            Flat next = join(lattice, joined, cand);
            if (next.rank() == rank_sum + alpha[idx]) {
                current.push_back(cand);
                self(self, idx + 1, next, rank_sum + alpha[idx]);
                current.pop_back();
            }
        }
    };
    rec(rec, 0, lattice.bottom(), 0);
    return out;
}

ExactInt sequence_count_formula(const Lattice& lattice, const RankVector& alpha,
                                SequenceMode mode) {
    int q = lattice.field().q();
    int n = lattice.rank();
    int m = static_cast<int>(alpha.sum());
    ExactInt weight =
        int_pow(q, static_cast<unsigned long>(pair_product_sum(alpha)));
    if (mode == SequenceMode::full) {
        return gaussian_multinomial(n, alpha, q) * weight;
    }
    return gaussian_binomial(n, m, q) * gaussian_multinomial(m, alpha, q) * weight;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    return eng_() % bound;
}

bool Rng::chance(unsigned num, unsigned den) { return below(den) < num; }

Flat random_flat(const Lattice& lattice, int rank, Rng& rng) {
    if (rank < 0 || rank > lattice.rank()) {
        throw std::invalid_argument("rank outside lattice");
    }
    if (rank == 0) return lattice.bottom();
    int q = lattice.field().q();
    while (true) {
        std::vector<std::vector<FieldElement>> rows(
            static_cast<std::size_t>(rank),
            std::vector<FieldElement>(static_cast<std::size_t>(lattice.rank()), 0));
        for (auto& row : rows) {
            for (auto& e : row) {
                e = static_cast<FieldElement>(rng.below(static_cast<std::uint64_t>(q)));
            }
        }
        Flat f = canonicalize(lattice, std::move(rows));
        if (f.rank() == rank) return f;
    }
}

namespace {

// Random vector in the row space of c (possibly zero).
std::vector<FieldElement> random_member(const Lattice& lattice, const Flat& c,
                                        Rng& rng) {
    const GaloisField& f = lattice.field();
    std::vector<FieldElement> v(static_cast<std::size_t>(lattice.rank()), 0);
    for (const auto& row : c.rows) {
        FieldElement coeff = static_cast<FieldElement>(
            rng.below(static_cast<std::uint64_t>(f.q())));
        if (coeff == 0) continue;
        for (std::size_t t = 0; t < v.size(); ++t) {
            v[t] = f.add(v[t], f.mul(coeff, row[t]));
        }
    }
    return v;
}

// Random flat of the given rank inside c.
Flat random_flat_inside(const Lattice& lattice, const Flat& c, int rank,
                        Rng& rng) {
    if (rank == 0) return lattice.bottom();
    while (true) {
        std::vector<std::vector<FieldElement>> rows;
        for (int i = 0; i < rank; ++i) rows.push_back(random_member(lattice, c, rng));
        Flat f = canonicalize(lattice, std::move(rows));
        if (f.rank() == rank) return f;
    }
}

// Random complement of a within c (a <= c): extend a's basis to one of c
// by random members; the added vectors span the complement.
Flat random_complement_inside(const Lattice& lattice, const Flat& a,
                              const Flat& c, Rng& rng) {
    std::vector<std::vector<FieldElement>> comp_rows;
    Flat span = a;
    while (span.rank() < c.rank()) {
        std::vector<FieldElement> v = random_member(lattice, c, rng);
        std::vector<std::vector<FieldElement>> extended = span.rows;
        extended.push_back(v);
        Flat grown = canonicalize(lattice, std::move(extended));
        if (grown.rank() > span.rank()) {
            comp_rows.push_back(std::move(v));
            span = std::move(grown);
        }
    }
    return canonicalize(lattice, std::move(comp_rows));
}

// Full-style sequence with the given rank vector inside the subgeometry
// spanned by c; total ranks must equal c's rank.
std::vector<Flat> random_sequence_inside(const Lattice& lattice, const Flat& c,
                                         const std::vector<int>& ranks,
                                         Rng& rng) {
    std::vector<Flat> flats;
    Flat room = c;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        Flat a = random_flat_inside(lattice, room, ranks[k], rng);
        flats.push_back(a);
        if (k + 1 < ranks.size()) {
            room = random_complement_inside(lattice, a, room, rng);
        }
    }
    return flats;
}

} // namespace

Family generate_admissible_family(const Lattice& lattice, int p, int l,
                                  SequenceMode mode, Rng& rng,
                                  int max_sequences) {
    if (p < 1 || l < 1 || max_sequences < 1) {
        throw std::invalid_argument("p, l and max_sequences must be positive");
    }
    int n = lattice.rank();
    int constrained = mode == SequenceMode::full ? p - 1 : p;
    ChainScope scope =
        mode == SequenceMode::full ? ChainScope::full : ChainScope::partial;

    // A menu of at most l ranks per constrained coordinate keeps chains
    // short by construction and reaches the equality families; free
    // sampling with rejection adds diversity.
    int menu_size = std::min(l, n + 1);
    std::vector<std::vector<int>> menus(static_cast<std::size_t>(constrained));
    for (auto& menu : menus) {
        std::set<int> picks;
        while (static_cast<int>(picks.size()) < menu_size) {
            picks.insert(static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1))));
        }
        menu.assign(picks.begin(), picks.end());
    }
    bool use_menu = rng.chance(7, 10);

    auto sample_ranks = [&](bool menu_only) -> std::optional<std::vector<int>> {
        std::vector<int> ranks(static_cast<std::size_t>(p), 0);
        long sum = 0;
        for (int k = 0; k < constrained; ++k) {
            const auto& menu = menus[static_cast<std::size_t>(k)];
            int r = menu_only
                        ? menu[static_cast<std::size_t>(rng.below(menu.size()))]
                        : static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
            ranks[static_cast<std::size_t>(k)] = r;
            sum += r;
        }
        if (mode == SequenceMode::full) {
            long rest = n - sum;
            if (rest < 0) return std::nullopt;
            ranks[static_cast<std::size_t>(p - 1)] = static_cast<int>(rest);
        } else if (sum > n) {
            return std::nullopt;
        }
        return ranks;
    };

    // Sometimes emit a union of complete rank-vector classes. Every
    // projection then lies inside the menu levels, so the family is
    // admissible outright, and these unions are exactly the families
    // where the bounds are tight.
    if (rng.chance(1, 8)) {
        int classes = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(l)));
        std::set<std::vector<int>> picked;
        for (int attempt = 0;
             attempt < 6 * classes && static_cast<int>(picked.size()) < classes;
             ++attempt) {
            if (auto ranks = sample_ranks(true)) picked.insert(*ranks);
        }
        if (!picked.empty()) {
            Family fam(p, mode);
            for (const auto& v : picked) {
                for (auto& s :
                     enumerate_sequences(lattice, p, RankVector(v), mode)) {
                    fam.insert(std::move(s));
                }
            }
            return fam;
        }
    }

    long target = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(max_sequences)));
    Family family(p, mode);
    long attempts_left = 30 * target + 30;
    while (family.size() < target && attempts_left-- > 0) {
        auto ranks = sample_ranks(use_menu);
        if (!ranks) continue;

        Flat root = lattice.top();
        if (mode == SequenceMode::partial) {
            long m = std::accumulate(ranks->begin(), ranks->end(), 0L);
            root = random_flat(lattice, static_cast<int>(m), rng);
        }
        MeshalkinSequence seq = make_sequence(
            lattice, random_sequence_inside(lattice, root, *ranks, rng), mode);
        if (family.contains(seq)) continue;

        Family trial = family;
        trial.insert(seq);
        if (check_chain_condition(lattice, trial, l, scope).ok) {
            family = std::move(trial);
        }
    }
    return family;
}

std::vector<Flat> random_antichain(const Lattice& lattice, Rng& rng,
                                   int max_flats) {
    if (max_flats < 1) throw std::invalid_argument("max_flats must be positive");
    long target = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(max_flats)));
    std::vector<Flat> out;
    long attempts_left = 30 * target + 30;
    while (static_cast<long>(out.size()) < target && attempts_left-- > 0) {
        int rank = static_cast<int>(
            rng.below(static_cast<std::uint64_t>(lattice.rank() + 1)));
        Flat cand = random_flat(lattice, rank, rng);
        bool comparable = false;
        for (const Flat& f : out) {
            if (f == cand || leq(lattice, f, cand) || leq(lattice, cand, f)) {
                comparable = true;
                break;
            }
        }
        if (!comparable) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace meshalkin
