#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <vector>

#include "meshalkin/exact.hpp"
#include "meshalkin/gfq.hpp"
#include "meshalkin/qnum.hpp"

namespace meshalkin {

/// A flat of the geometry, represented by the reduced row echelon form of
/// its row space: every pivot is 1 with zeros above and below, pivot
/// columns strictly increase, no zero rows. Two flats are equal iff their
/// matrices are identical. Rank equals the row count; the bottom flat has
/// no rows.
struct Flat {
    std::vector<std::vector<FieldElement>> rows;
    int ambient = 0;

    int rank() const { return static_cast<int>(rows.size()); }

    bool operator==(const Flat&) const = default;
    auto operator<=>(const Flat&) const = default;
};

/// The lattice of flats of the rank-n geometry over GF(q). Levels are
/// enumerated lazily in a fixed deterministic order and cached; a level
/// whose flat count exceeds the budget is refused rather than built.
/// Construction and level building are single-threaded per instance; built
/// levels are immutable.
class Lattice {
public:
    Lattice(int n, int q, long flat_budget = 1'000'000);

    int rank() const { return n_; }
    const GaloisField& field() const { return field_; }
    long flat_budget() const { return budget_; }

    Flat bottom() const { return Flat{{}, n_}; }
    Flat top() const;

    /// Number of rank-k flats, without materializing the level.
    ExactInt level_count(int k) const;

    /// All rank-k flats in enumeration order.
    const std::vector<Flat>& level(int k) const;

private:
    int n_;
    GaloisField field_;
    long budget_;
    mutable std::vector<std::optional<std::vector<Flat>>> levels_;
};

/// RREF of the row space spanned by the given rows. Zero rows are dropped;
/// empty input gives the bottom flat. Independent generating sets of the
/// same subspace produce identical flats.
Flat canonicalize(const Lattice& lattice,
                  std::vector<std::vector<FieldElement>> rows);

/// True iff the matrix already satisfies the canonical-form invariants.
bool is_canonical(const Lattice& lattice,
                  const std::vector<std::vector<FieldElement>>& rows);

/// Least upper bound: the span of both row spaces.
Flat join(const Lattice& lattice, const Flat& a, const Flat& b);

/// Greatest lower bound: the intersection, computed through annihilators
/// (kernel of the stacked dual constraints) in O(n^3) field operations.
Flat meet(const Lattice& lattice, const Flat& a, const Flat& b);

/// True iff every row of a lies in the row space of b.
bool leq(const Lattice& lattice, const Flat& a, const Flat& b);

/// All flats c with meet(a,c) = bottom and join(a,c) = top. Only the rank
/// n-k level is scanned; by the modular law the rank and meet conditions
/// already force the join. The count is q^{k(n-k)}.
std::vector<Flat> complements(const Lattice& lattice, const Flat& a);

} // namespace meshalkin
