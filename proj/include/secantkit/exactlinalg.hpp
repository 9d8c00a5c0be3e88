#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "secantkit/combinatorics.hpp"

namespace secantkit {

struct OverflowError : std::overflow_error {
    OverflowError() : std::overflow_error("int64 overflow") {}
};

// Sorted by index, no zero coefficients.
using SparseVector = std::vector<std::pair<std::uint32_t, std::int64_t>>;
using BigVector = std::vector<std::pair<std::uint32_t, Integer>>;
using RationalVector = std::vector<std::pair<std::uint32_t, Rational>>;

// Sorts, merges duplicate indices and drops zeros.
void normalize(SparseVector& v);
SparseVector add_scaled(const SparseVector& a, const SparseVector& b, std::int64_t scale);

std::size_t max_ambient_dim();
void set_max_ambient_dim(std::size_t cap);

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);
    // columns[c] holds the entries of column c.
    static ExactMatrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns);
    static ExactMatrix from_rows(std::size_t cols, const std::vector<SparseVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;

    void set(std::size_t row, std::size_t col, const Rational& value);
    Rational get(std::size_t row, std::size_t col) const;
    const std::map<std::uint32_t, Rational>& row(std::size_t i) const { return entries_[i]; }

    ExactMatrix transpose() const;
    ExactMatrix operator*(const ExactMatrix& other) const;
    ExactMatrix scaled(const Rational& s) const;
    bool operator==(const ExactMatrix& other) const;

    // "rows cols nnz" then "row col num/den" per entry, row-major.
    std::string dump() const;
    static ExactMatrix parse_dump(const std::string& text);

private:
    void check(std::size_t row, std::size_t col) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::map<std::uint32_t, Rational>> entries_;
};

// Integer echelon form. Rows are primitive with positive pivot; in reduced
// mode each row is a positive multiple of the corresponding RREF row.
template <class Int>
class EchelonCore {
public:
    using Row = std::vector<std::pair<std::uint32_t, Int>>;

    explicit EchelonCore(bool reduced = true) : reduced_(reduced) {}

    bool insert(Row w);
    bool contains(Row w) const;
    std::size_t rank() const { return rows_.size(); }
    const std::vector<Row>& rows() const { return rows_; }
    bool reduced() const { return reduced_; }

    template <class Other>
    static EchelonCore convert(const EchelonCore<Other>& other);

private:
    template <class>
    friend class EchelonCore;

    Row reduce(Row w, bool full) const;
    int pivot_row(std::uint32_t col) const {
        return col < pivot_of_col_.size() ? pivot_of_col_[col] : -1;
    }

    bool reduced_;
    std::vector<Row> rows_;
    std::vector<int> pivot_of_col_;
};

// Echelon form that starts in checked int64 and promotes itself to GMP
// integers the first time an operation overflows.
class Echelon {
public:
    explicit Echelon(bool reduced = true) : core_(EchelonCore<std::int64_t>(reduced)) {}

    bool insert(const SparseVector& v);
    bool insert(const BigVector& v);
    bool contains(const SparseVector& v) const;
    bool contains(const BigVector& v) const;
    std::size_t rank() const;
    bool promoted() const { return core_.index() == 1; }
    bool reduced() const;
    std::vector<BigVector> rows() const;

private:
    void promote();
    std::variant<EchelonCore<std::int64_t>, EchelonCore<Integer>> core_;
};

class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0);
    static Subspace full(std::size_t ambient_dim);
    static Subspace span(std::size_t ambient_dim, const std::vector<SparseVector>& vectors);
    static Subspace row_space(const ExactMatrix& m);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return echelon_.rank(); }

    bool insert(const SparseVector& v);
    bool insert(const BigVector& v);
    bool insert(const RationalVector& v);
    bool contains(const SparseVector& v) const;
    bool contains(const BigVector& v) const;
    bool contains(const RationalVector& v) const;

    // Basis rows with unit pivots, sorted by pivot column.
    ExactMatrix basis() const;
    std::vector<BigVector> integer_basis() const;
    std::vector<std::uint32_t> pivots() const;

private:
    void check(const std::vector<std::uint32_t>& idx) const;
    template <class V>
    void check_vector(const V& v) const;

    std::size_t ambient_;
    Echelon echelon_;
};

BigVector clear_denominators(const RationalVector& v);

std::size_t rank(const ExactMatrix& m);
std::size_t rank(const std::vector<SparseVector>& rows);
Subspace kernel(const ExactMatrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

}  // namespace secantkit
