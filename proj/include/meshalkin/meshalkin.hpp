#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "meshalkin/exact.hpp"
#include "meshalkin/projgeom.hpp"
#include "meshalkin/qnum.hpp"

namespace meshalkin {

struct ProblemParams {
    int n = 0; // geometry rank
    int p = 1; // sequence length
    int l = 1; // forbidden chain parameter
    int q = 2; // field order

    void validate() const;
};

/// Full sequences must join to the top flat; partial sequences only need
/// rank additivity.
enum class SequenceMode { full, partial };

/// Which coordinates carry the chain condition: the first p-1 (full) or
/// all p (partial).
enum class ChainScope { full, partial };

enum class LymMode { main, weak, partial };

enum class BoundMode { main, partial, rota_harper, weak };

/// A sequence of flats whose ranks add up to the rank of their join.
struct MeshalkinSequence {
    std::vector<Flat> flats;
    Flat join_flat;

    RankVector rank_vector() const;

    bool operator==(const MeshalkinSequence& o) const { return flats == o.flats; }
    bool operator<(const MeshalkinSequence& o) const { return flats < o.flats; }
};

struct SequenceCheck {
    bool ok = false;
    std::string reason; // first violated condition when !ok
    Flat join_flat;
};

/// Checks rank additivity (and, for full mode, that the join is the top
/// flat) without throwing; the reason names the first violated condition.
SequenceCheck check_sequence(const Lattice& lattice,
                             const std::vector<Flat>& flats, SequenceMode mode);

/// As check_sequence, but returns the sequence and throws on violation.
MeshalkinSequence make_sequence(const Lattice& lattice, std::vector<Flat> flats,
                                SequenceMode mode);

/// A set of Meshalkin sequences of common length. Duplicate inserts
/// collapse.
class Family {
public:
    Family(int p, SequenceMode mode);

    int p() const { return p_; }
    SequenceMode mode() const { return mode_; }
    long size() const { return static_cast<long>(seqs_.size()); }
    bool empty() const { return seqs_.empty(); }
    const std::set<MeshalkinSequence>& sequences() const { return seqs_; }

    bool insert(MeshalkinSequence s);
    bool contains(const MeshalkinSequence& s) const;

    /// Count of members per rank vector.
    std::map<RankVector, long> profile() const;

    /// Distinct flats in coordinate k (0-based), sorted.
    std::vector<Flat> projection(int k) const;

    bool operator==(const Family& o) const {
        return p_ == o.p_ && seqs_ == o.seqs_;
    }

private:
    int p_;
    SequenceMode mode_;
    std::set<MeshalkinSequence> seqs_;
};

/// Maximum number of pairwise-comparable elements among the given flats
/// (duplicates collapse). 0 for the empty set; 1 for any antichain.
int longest_chain(const Lattice& lattice, const std::vector<Flat>& flats);

struct ChainCheck {
    bool ok = true;
    int coordinate = 0;   // 1-based coordinate of the first violation
    int chain_length = 0; // longest chain found there
};

/// Verifies that every constrained projection has longest chain <= l.
ChainCheck check_chain_condition(const Lattice& lattice, const Family& family,
                                 int l, ChainScope scope);

/// Exact LYM sum of the family. main: 1 / (multinomial * q^weight) per
/// member; weak: 1 / multinomial; partial: 1 / (binomial(n, join rank) *
/// multinomial(join rank, ranks) * q^weight). main and weak require a
/// full-mode family.
ExactRat lym_sum(const Lattice& lattice, const Family& family, LymMode mode);

struct BoundResult {
    ExactInt value;
    std::vector<RankVector> alphas; // selected compositions, lexicographic
};

/// Sum of the P largest candidate quantities. main: weighted counts over
/// p-part compositions with P = min(l^(p-1), #compositions); partial: the
/// same over (p+1)-part compositions with P = min(l^p, #compositions);
/// rota_harper: the min(l, n+1) largest Gaussian binomials, reported as
/// one-part vectors; weak: the P largest q-weights q^(pair product sum).
/// Tied values are taken in lexicographic order; the sum is tie-independent.
BoundResult bound(const ProblemParams& params, BoundMode mode);

struct HkrResult {
    ExactRat weighted_value; // sum q_k m_k
    ExactRat prefix_bound;   // m_1 + ... + m_P
    bool inequality_holds = false;
    bool certificate_applicable = false; // m_P > 0
    bool equality = false;               // certificate verdict when applicable
    long first_equal = 0;                // 1-based index of first m_k = m_P
    long last_equal = 0;                 // 1-based index of last m_k = m_P
    ExactRat middle_sum;                 // q_{first_equal} + ... + q_{last_equal}
    std::string violation;               // first failed equality condition
};

/// Weighted-sum bound: given m_1 >= ... >= m_N >= 0, coefficients q_k in
/// [0,1] with sum <= P, certifies sum q_k m_k <= m_1 + ... + m_P and, when
/// m_P > 0, decides equality by the three marginal conditions (q_k = 1
/// above the tie block, q_k = 0 below it, tie-block coefficient sum equal
/// to the slack). Precondition violations throw with the offending index.
HkrResult hkr_apply(const std::vector<ExactRat>& m,
                    const std::vector<ExactRat>& qs, long P);

/// All pairs (a, c) with a in the given set and c a complement of a, as a
/// length-2 full family. Its size is the sum of q^{r(n-r)} over members
/// and its main LYM sum equals the sum of 1/binomial(n, r(a)).
Family rota_harper_lift(const Lattice& lattice, const std::vector<Flat>& flats);

/// Every sequence with the given rank vector, each exactly once, in a
/// deterministic order. Full mode requires sum(alpha) = n; partial mode
/// sum(alpha) <= n.
std::vector<MeshalkinSequence> enumerate_sequences(const Lattice& lattice, int p,
                                                   const RankVector& alpha,
                                                   SequenceMode mode);

/// Closed-form count of the sequences enumerate_sequences produces:
/// multinomial(n, alpha) * q^weight for full mode, and
/// binomial(n, m) * multinomial(m, alpha) * q^weight with m = sum(alpha)
/// for partial mode.
ExactInt sequence_count_formula(const Lattice& lattice, const RankVector& alpha,
                                SequenceMode mode);

/// Deterministic seeded generator used by property tests and the CLI.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t bound); // uniform in [0, bound)
    bool chance(unsigned num, unsigned den);  // true with probability num/den
private:
    std::mt19937_64 eng_;
};

/// Random flat of the given rank.
Flat random_flat(const Lattice& lattice, int rank, Rng& rng);

/// Random family satisfying the chain condition for the given scope
/// (full mode pairs with full scope, partial with partial). Sequences are
/// built by nested complement chains; rank vectors are drawn either from
/// a per-coordinate menu of at most l ranks or freely, with rejection on
/// chain violations. A fraction of draws returns the union of up to l
/// complete rank-vector classes, which may exceed max_sequences; those are
/// the families where the LYM bounds are tight.
Family generate_admissible_family(const Lattice& lattice, int p, int l,
                                  SequenceMode mode, Rng& rng,
                                  int max_sequences);

/// Random antichain (pairwise incomparable flats).
std::vector<Flat> random_antichain(const Lattice& lattice, Rng& rng,
                                   int max_flats);

} // namespace meshalkin
