#include "meshalkin/projgeom.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace meshalkin {

namespace {

using Matrix = std::vector<std::vector<FieldElement>>;

// In-place reduction to RREF; returns the rank. Rows below the returned
// rank are zero afterwards.
int rref(const GaloisField& f, Matrix& m, int n) {
    int r = 0;
    int row_count = static_cast<int>(m.size());
    for (int col = 0; col < n && r < row_count; ++col) {
        int pivot = -1;
        for (int i = r; i < row_count; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(pivot)]);
        auto& prow = m[static_cast<std::size_t>(r)];
        FieldElement scale = f.inv(prow[static_cast<std::size_t>(col)]);
        if (scale != 1) {
            for (int j = col; j < n; ++j) {
                prow[static_cast<std::size_t>(j)] =
                    f.mul(prow[static_cast<std::size_t>(j)], scale);
            }
        }
        for (int i = 0; i < row_count; ++i) {
            if (i == r) continue;
            FieldElement c =
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (c == 0) continue;
            for (int j = col; j < n; ++j) {
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.sub(
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    f.mul(c, prow[static_cast<std::size_t>(j)]));
            }
        }
        ++r;
    }
    return r;
}

std::vector<int> pivot_columns(const Matrix& m) {
    std::vector<int> pivots;
    for (const auto& row : m) {
        int col = 0;
        while (col < static_cast<int>(row.size()) &&
               row[static_cast<std::size_t>(col)] == 0) {
            ++col;
        }
        pivots.push_back(col);
    }
    return pivots;
}

void check_ambient(const Lattice& lattice, const Flat& a) {
    if (a.ambient != lattice.rank()) {
        throw std::invalid_argument(
            "flat has ambient dimension " + std::to_string(a.ambient) +
            ", lattice has rank " + std::to_string(lattice.rank()));
    }
}

void check_row_length(const Lattice& lattice, const Matrix& rows) {
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != lattice.rank()) {
            throw std::invalid_argument(
                "row length " + std::to_string(row.size()) +
                " does not match ambient dimension " +
                std::to_string(lattice.rank()));
        }
        for (FieldElement e : row) {
            if (!lattice.field().is_valid(e)) {
                throw std::invalid_argument("row entry " + std::to_string(e) +
                                            " outside GF(" +
                                            std::to_string(lattice.field().q()) +
                                            ")");
            }
        }
    }
}

// Basis of {x : M x = 0} for an RREF matrix M, one row per free column.
Matrix kernel_basis(const GaloisField& f, const Matrix& m, int n) {
    std::vector<int> pivots = pivot_columns(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Matrix basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<FieldElement> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t i = 0; i < m.size(); ++i) {
            v[static_cast<std::size_t>(pivots[i])] =
                f.neg(m[i][static_cast<std::size_t>(free)]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

Lattice::Lattice(int n, int q, long flat_budget)
    : n_(n), field_(q), budget_(flat_budget) {
    if (n < 0) {
        throw std::invalid_argument("geometry rank must be nonnegative, got " +
                                    std::to_string(n));
    }
    if (flat_budget <= 0) {
        throw std::invalid_argument("flat budget must be positive");
    }
    levels_.resize(static_cast<std::size_t>(n_) + 1);
}

Flat Lattice::top() const {
    Matrix rows(static_cast<std::size_t>(n_),
                std::vector<FieldElement>(static_cast<std::size_t>(n_), 0));
    for (int i = 0; i < n_; ++i) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    return Flat{std::move(rows), n_};
}

ExactInt Lattice::level_count(int k) const {
    if (k < 0 || k > n_) {
        throw std::invalid_argument("level " + std::to_string(k) +
                                    " outside [0, " + std::to_string(n_) + "]");
    }
    return gaussian_binomial(n_, k, field_.q());
}

const std::vector<Flat>& Lattice::level(int k) const {
    ExactInt count = level_count(k); // validates k
    auto& slot = levels_[static_cast<std::size_t>(k)];
    if (slot) return *slot;
    if (count > budget_) {
        throw std::runtime_error("level " + std::to_string(k) + " has " +
                                 count.get_str() + " flats, over the budget of " +
                                 std::to_string(budget_));
    }

    // Generate RREF matrices directly: pick pivot columns, then run an
    // odometer over the free entries. Every subspace appears exactly once.
    std::vector<Flat> flats;
    int q = field_.q();
    std::vector<int> pivots(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;

    auto emit_for_pivots = [&]() {
        std::vector<bool> is_pivot(static_cast<std::size_t>(n_), false);
        for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
        // Free cells in row-major order; the last cell steps fastest.
        std::vector<std::pair<int, int>> free_cells;
        for (int i = 0; i < k; ++i) {
            for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < n_; ++c) {
                if (!is_pivot[static_cast<std::size_t>(c)]) {
                    free_cells.emplace_back(i, c);
                }
            }
        }
        Matrix base(static_cast<std::size_t>(k),
                    std::vector<FieldElement>(static_cast<std::size_t>(n_), 0));
        for (int i = 0; i < k; ++i) {
            base[static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] = 1;
        }
        std::vector<int> odo(free_cells.size(), 0);
        while (true) {
            Matrix m = base;
            for (std::size_t c = 0; c < free_cells.size(); ++c) {
                m[static_cast<std::size_t>(free_cells[c].first)]
                 [static_cast<std::size_t>(free_cells[c].second)] = odo[c];
            }
            flats.push_back(Flat{std::move(m), n_});
            std::size_t pos = free_cells.size();
            while (pos > 0) {
                --pos;
                if (++odo[pos] < q) break;
                odo[pos] = 0;
                if (pos == 0) return;
            }
            if (free_cells.empty()) return;
        }
    };

    if (k == 0) {
        flats.push_back(bottom());
    } else {
        // Lexicographic walk over k-subsets of {0, ..., n-1}.
        while (true) {
            emit_for_pivots();
            int i = k - 1;
            while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n_ - k + i) {
                --i;
            }
            if (i < 0) break;
            ++pivots[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                pivots[static_cast<std::size_t>(j)] =
                    pivots[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }

    if (ExactInt(static_cast<long>(flats.size())) != count) {
        throw std::logic_error("level enumeration produced " +
                               std::to_string(flats.size()) + " flats, expected " +
                               count.get_str());
    }
    slot = std::move(flats);
    return *slot;
}

Flat canonicalize(const Lattice& lattice, Matrix rows) {
    check_row_length(lattice, rows);
    int rank = rref(lattice.field(), rows, lattice.rank());
    rows.resize(static_cast<std::size_t>(rank));
    return Flat{std::move(rows), lattice.rank()};
}

bool is_canonical(const Lattice& lattice, const Matrix& rows) {
    int n = lattice.rank();
    int last_pivot = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != n) return false;
        int col = 0;
        while (col < n && rows[i][static_cast<std::size_t>(col)] == 0) ++col;
        if (col == n) return false; // zero row
        if (col <= last_pivot) return false;
        if (rows[i][static_cast<std::size_t>(col)] != 1) return false;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j != i && rows[j][static_cast<std::size_t>(col)] != 0) return false;
        }
        last_pivot = col;
    }
    return true;
}

Flat join(const Lattice& lattice, const Flat& a, const Flat& b) {
    check_ambient(lattice, a);
    check_ambient(lattice, b);
    Matrix stacked = a.rows;
    stacked.insert(stacked.end(), b.rows.begin(), b.rows.end());
    return canonicalize(lattice, std::move(stacked));
}

Flat meet(const Lattice& lattice, const Flat& a, const Flat& b) {
    check_ambient(lattice, a);
    check_ambient(lattice, b);
    const GaloisField& f = lattice.field();
    int n = lattice.rank();
    Matrix dual = kernel_basis(f, a.rows, n);
    Matrix dual_b = kernel_basis(f, b.rows, n);
    dual.insert(dual.end(), dual_b.begin(), dual_b.end());
    int dual_rank = rref(f, dual, n);
    dual.resize(static_cast<std::size_t>(dual_rank));
    Matrix result = kernel_basis(f, dual, n);
    return canonicalize(lattice, std::move(result));
}

bool leq(const Lattice& lattice, const Flat& a, const Flat& b) {
    check_ambient(lattice, a);
    check_ambient(lattice, b);
    const GaloisField& f = lattice.field();
    int n = lattice.rank();
    std::vector<int> pivots = pivot_columns(b.rows);
    for (const auto& row : a.rows) {
        std::vector<FieldElement> v = row;
        for (std::size_t i = 0; i < b.rows.size(); ++i) {
            FieldElement c = v[static_cast<std::size_t>(pivots[i])];
            if (c == 0) continue;
            for (int j = pivots[i]; j < n; ++j) {
                v[static_cast<std::size_t>(j)] =
                    f.sub(v[static_cast<std::size_t>(j)],
                          f.mul(c, b.rows[i][static_cast<std::size_t>(j)]));
            }
        }
        for (FieldElement e : v) {
            if (e != 0) return false;
        }
    }
    return true;
}

std::vector<Flat> complements(const Lattice& lattice, const Flat& a) {
    check_ambient(lattice, a);
    int k = a.rank();
    std::vector<Flat> out;
    for (const Flat& c : lattice.level(lattice.rank() - k)) {
        if (meet(lattice, a, c).rank() == 0) out.push_back(c);
    }
    return out;
}

} // namespace meshalkin
