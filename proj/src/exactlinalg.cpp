#include "secantkit/exactlinalg.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <sstream>

namespace secantkit {

namespace {

std::atomic<std::size_t> g_max_ambient{200000};

// Checked int64 arithmetic; INT64_MIN is treated as overflow so that
// negation and abs stay safe.
constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

inline std::int64_t guard(std::int64_t v) {
    if (v == kMin) throw OverflowError();
    return v;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return guard(r);
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return guard(r);
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return guard(r);
}
inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t exact_div(std::int64_t a, std::int64_t b) { return a / b; }
inline bool is_one(std::int64_t a) { return a == 1; }
inline int sgn(std::int64_t a) { return (a > 0) - (a < 0); }
inline bool is_zero(std::int64_t a) { return a == 0; }

inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer gcd_abs(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}
inline Integer exact_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline bool is_one(const Integer& a) { return a == 1; }
inline int sgn(const Integer& a) { return ::sgn(a); }
inline bool is_zero(const Integer& a) { return ::sgn(a) == 0; }

template <class Int>
void make_primitive(std::vector<std::pair<std::uint32_t, Int>>& w) {
    if (w.empty()) return;
    Int g = 0;
    for (const auto& e : w) {
        g = gcd_abs(g, e.second);
        if (is_one(g)) return;
    }
    for (auto& e : w) e.second = exact_div(e.second, g);
}

template <class Int>
void make_positive(std::vector<std::pair<std::uint32_t, Int>>& w) {
    if (!w.empty() && sgn(w.front().second) < 0)
        for (auto& e : w) e.second = sub(Int(0), e.second);
}

// out = a*x - b*y, where x and y share their leading column, which cancels.
template <class Int>
void combine(const std::vector<std::pair<std::uint32_t, Int>>& x, std::size_t xstart,
             const Int& a, const std::vector<std::pair<std::uint32_t, Int>>& y, std::size_t ystart,
             const Int& b, std::vector<std::pair<std::uint32_t, Int>>& out) {
    const bool scale = !is_one(a);
    std::size_t i = xstart, k = ystart;
    while (i < x.size() || k < y.size()) {
        if (k >= y.size() || (i < x.size() && x[i].first < y[k].first)) {
            out.emplace_back(x[i].first, scale ? mul(a, x[i].second) : x[i].second);
            ++i;
        } else if (i >= x.size() || y[k].first < x[i].first) {
            out.emplace_back(y[k].first, sub(Int(0), mul(b, y[k].second)));
            ++k;
        } else {
            Int v = sub(scale ? mul(a, x[i].second) : x[i].second, mul(b, y[k].second));
            if (!is_zero(v)) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++k;
        }
    }
}

}  // namespace

std::size_t max_ambient_dim() { return g_max_ambient.load(); }
void set_max_ambient_dim(std::size_t cap) { g_max_ambient.store(cap); }

void normalize(SparseVector& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::uint32_t idx = v[i].first;
        std::int64_t s = 0;
        for (; i < v.size() && v[i].first == idx; ++i) s = add(s, v[i].second);
        if (s != 0) v[out++] = {idx, s};
    }
    v.resize(out);
}

SparseVector add_scaled(const SparseVector& a, const SparseVector& b, std::int64_t scale) {
    SparseVector out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, k = 0;
    while (i < a.size() || k < b.size()) {
        if (k >= b.size() || (i < a.size() && a[i].first < b[k].first)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || b[k].first < a[i].first) {
            std::int64_t v = mul(scale, b[k].second);
            if (v) out.emplace_back(b[k].first, v);
            ++k;
        } else {
            std::int64_t v = add(a[i].second, mul(scale, b[k].second));
            if (v) out.emplace_back(a[i].first, v);
            ++i;
            ++k;
        }
    }
    return out;
}

// ---------------------------------------------------------------- ExactMatrix

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ExactMatrix ExactMatrix::from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
    ExactMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) m.set(r, c, Rational(static_cast<long>(v)));
    return m;
}

ExactMatrix ExactMatrix::from_rows(std::size_t cols, const std::vector<SparseVector>& rows) {
    ExactMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) m.set(r, c, Rational(static_cast<long>(v)));
    return m;
}

std::size_t ExactMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : entries_) n += r.size();
    return n;
}

void ExactMatrix::check(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("matrix index out of range");
}

void ExactMatrix::set(std::size_t row, std::size_t col, const Rational& value) {
    check(row, col);
    auto& r = entries_[row];
    if (sgn(value) == 0) {
        r.erase(static_cast<std::uint32_t>(col));
    } else {
        Rational v = value;
        v.canonicalize();
        r[static_cast<std::uint32_t>(col)] = v;
    }
}

Rational ExactMatrix::get(std::size_t row, std::size_t col) const {
    check(row, col);
    auto it = entries_[row].find(static_cast<std::uint32_t>(col));
    return it == entries_[row].end() ? Rational(0) : it->second;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : entries_[r]) t.entries_[c][static_cast<std::uint32_t>(r)] = v;
    return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    ExactMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::map<std::uint32_t, Rational> acc;
        for (const auto& [k, v] : entries_[r])
            for (const auto& [c, w] : other.entries_[k]) acc[c] += v * w;
        for (auto& [c, v] : acc)
            if (sgn(v) != 0) out.entries_[r][c] = v;
    }
    return out;
}

ExactMatrix ExactMatrix::scaled(const Rational& s) const {
    ExactMatrix out(rows_, cols_);
    if (sgn(s) == 0) return out;
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : entries_[r]) out.entries_[r][c] = v * s;
    return out;
}

bool ExactMatrix::operator==(const ExactMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

std::string ExactMatrix::dump() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : entries_[r])
            out << r << ' ' << c << ' ' << v.get_num().get_str() << '/' << v.get_den().get_str() << '\n';
    return out.str();
}

ExactMatrix ExactMatrix::parse_dump(const std::string& text) {
    std::istringstream in(text);
    std::size_t rows, cols, nnz;
    if (!(in >> rows >> cols >> nnz)) throw std::invalid_argument("matrix dump: bad header");
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < nnz; ++i) {
        std::size_t r, c;
        std::string value;
        if (!(in >> r >> c >> value)) throw std::invalid_argument("matrix dump: truncated");
        Rational q;
        if (q.set_str(value, 10) != 0) throw std::invalid_argument("matrix dump: bad value " + value);
        q.canonicalize();
        m.set(r, c, q);
    }
    return m;
}

// ---------------------------------------------------------------- EchelonCore

template <class Int>
typename EchelonCore<Int>::Row EchelonCore<Int>::reduce(Row w, bool full) const {
    std::size_t pos = 0;
    Row next;
    while (pos < w.size()) {
        int ri = pivot_row(w[pos].first);
        if (ri < 0) {
            if (!full) return w;
            ++pos;
            continue;
        }
        const Row& row = rows_[ri];
        const Int& piv = row.front().second;
        Int g = gcd_abs(piv, w[pos].second);
        Int a = exact_div(piv, g);
        Int b = exact_div(w[pos].second, g);
        const bool scale = !is_one(a);
        next.clear();
        next.reserve(w.size() + row.size());
        for (std::size_t i = 0; i < pos; ++i)
            next.emplace_back(w[i].first, scale ? mul(a, w[i].second) : w[i].second);
        combine(w, pos + 1, a, row, 1, b, next);
        w.swap(next);
        if (scale) make_primitive(w);
    }
    return w;
}

template <class Int>
bool EchelonCore<Int>::insert(Row w) {
    w = reduce(std::move(w), reduced_);
    if (w.empty()) return false;
    make_primitive(w);
    make_positive(w);
    const std::uint32_t p = w.front().first;

    std::vector<std::pair<std::size_t, Row>> updates;
    if (reduced_) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Row& row = rows_[i];
            auto it = std::lower_bound(row.begin(), row.end(), p,
                                       [](const auto& e, std::uint32_t c) { return e.first < c; });
            if (it == row.end() || it->first != p) continue;
            Int g = gcd_abs(w.front().second, it->second);
            Int a = exact_div(w.front().second, g);
            Int b = exact_div(it->second, g);
            // a*row - b*w, where the column p cancels
            Row out;
            out.reserve(row.size() + w.size());
            std::size_t pos = static_cast<std::size_t>(it - row.begin());
            Row head(row.begin(), row.begin() + pos);
            Row tail(row.begin() + pos, row.end());
            for (const auto& e : head) out.emplace_back(e.first, is_one(a) ? e.second : mul(a, e.second));
            combine(tail, 1, a, w, 1, b, out);
            make_primitive(out);
            updates.emplace_back(i, std::move(out));
        }
    }
    for (auto& [i, row] : updates) rows_[i] = std::move(row);
    if (pivot_of_col_.size() <= p) pivot_of_col_.resize(p + 1, -1);
    pivot_of_col_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(w));
    return true;
}

template <class Int>
bool EchelonCore<Int>::contains(Row w) const {
    return reduce(std::move(w), false).empty();
}

template <class Int>
template <class Other>
EchelonCore<Int> EchelonCore<Int>::convert(const EchelonCore<Other>& other) {
    EchelonCore<Int> out(other.reduced_);
    out.pivot_of_col_ = other.pivot_of_col_;
    out.rows_.reserve(other.rows_.size());
    for (const auto& row : other.rows_) {
        Row r;
        r.reserve(row.size());
        for (const auto& [c, v] : row) r.emplace_back(c, Int(v));
        out.rows_.push_back(std::move(r));
    }
    return out;
}

template class EchelonCore<std::int64_t>;
template class EchelonCore<Integer>;

// ---------------------------------------------------------------- Echelon

namespace {

EchelonCore<Integer>::Row to_big(const SparseVector& v) {
    EchelonCore<Integer>::Row out;
    out.reserve(v.size());
    for (const auto& [c, x] : v) out.emplace_back(c, Integer(static_cast<long>(x)));
    return out;
}

EchelonCore<std::int64_t>::Row to_small(const BigVector& v) {
    EchelonCore<std::int64_t>::Row out;
    out.reserve(v.size());
    for (const auto& [c, x] : v) {
        if (!x.fits_slong_p()) throw OverflowError();
        out.emplace_back(c, guard(x.get_si()));
    }
    return out;
}

}  // namespace

void Echelon::promote() {
    core_ = EchelonCore<Integer>::convert(std::get<0>(core_));
}

bool Echelon::insert(const SparseVector& v) {
    if (core_.index() == 0) {
        try {
            return std::get<0>(core_).insert(v);
        } catch (const OverflowError&) {
            promote();
        }
    }
    return std::get<1>(core_).insert(to_big(v));
}

bool Echelon::insert(const BigVector& v) {
    if (core_.index() == 0) {
        try {
            return std::get<0>(core_).insert(to_small(v));
        } catch (const OverflowError&) {
            promote();
        }
    }
    return std::get<1>(core_).insert(v);
}

bool Echelon::contains(const SparseVector& v) const {
    if (core_.index() == 0) {
        try {
            return std::get<0>(core_).contains(v);
        } catch (const OverflowError&) {
            return EchelonCore<Integer>::convert(std::get<0>(core_)).contains(to_big(v));
        }
    }
    return std::get<1>(core_).contains(to_big(v));
}

bool Echelon::contains(const BigVector& v) const {
    if (core_.index() == 0) {
        try {
            return std::get<0>(core_).contains(to_small(v));
        } catch (const OverflowError&) {
            return EchelonCore<Integer>::convert(std::get<0>(core_)).contains(v);
        }
    }
    return std::get<1>(core_).contains(v);
}

std::size_t Echelon::rank() const {
    return std::visit([](const auto& c) { return c.rank(); }, core_);
}

bool Echelon::reduced() const {
    return std::visit([](const auto& c) { return c.reduced(); }, core_);
}

std::vector<BigVector> Echelon::rows() const {
    std::vector<BigVector> out;
    std::visit(
        [&](const auto& c) {
            for (const auto& row : c.rows()) {
                BigVector r;
                for (const auto& [col, v] : row) r.emplace_back(col, Integer(v));
                out.push_back(std::move(r));
            }
        },
        core_);
    return out;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), echelon_(true) {
    if (ambient_dim > max_ambient_dim())
        throw std::length_error("ambient dimension " + std::to_string(ambient_dim) +
                                " exceeds the configured cap " + std::to_string(max_ambient_dim()));
}

Subspace Subspace::full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        s.insert(SparseVector{{static_cast<std::uint32_t>(i), 1}});
    return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<SparseVector>& vectors) {
    Subspace s(ambient_dim);
    for (const auto& v : vectors) s.insert(v);
    return s;
}

Subspace Subspace::row_space(const ExactMatrix& m) {
    Subspace s(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        RationalVector v(m.row(r).begin(), m.row(r).end());
        s.insert(v);
    }
    return s;
}

template <class V>
void Subspace::check_vector(const V& v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].first >= ambient_) throw std::out_of_range("vector index exceeds ambient dimension");
        if (i > 0 && v[i].first <= v[i - 1].first)
            throw std::invalid_argument("sparse vector indices must be strictly increasing");
    }
}

bool Subspace::insert(const SparseVector& v) {
    check_vector(v);
    return echelon_.insert(v);
}
bool Subspace::insert(const BigVector& v) {
    check_vector(v);
    return echelon_.insert(v);
}
bool Subspace::insert(const RationalVector& v) { return insert(clear_denominators(v)); }

bool Subspace::contains(const SparseVector& v) const {
    check_vector(v);
    return echelon_.contains(v);
}
bool Subspace::contains(const BigVector& v) const {
    check_vector(v);
    return echelon_.contains(v);
}
bool Subspace::contains(const RationalVector& v) const { return contains(clear_denominators(v)); }

std::vector<BigVector> Subspace::integer_basis() const {
    auto rows = echelon_.rows();
    std::sort(rows.begin(), rows.end(),
              [](const BigVector& a, const BigVector& b) { return a.front().first < b.front().first; });
    return rows;
}

std::vector<std::uint32_t> Subspace::pivots() const {
    std::vector<std::uint32_t> out;
    for (const auto& r : integer_basis()) out.push_back(r.front().first);
    return out;
}

ExactMatrix Subspace::basis() const {
    auto rows = integer_basis();
    ExactMatrix m(rows.size(), ambient_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Integer& piv = rows[i].front().second;
        for (const auto& [c, v] : rows[i]) m.set(i, c, Rational(v, piv));
    }
    return m;
}

BigVector clear_denominators(const RationalVector& v) {
    Integer l = 1;
    for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
    BigVector out;
    for (const auto& [c, q] : v) {
        if (sgn(q) == 0) continue;
        out.emplace_back(c, q.get_num() * (l / q.get_den()));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::size_t rank(const ExactMatrix& m) {
    Echelon e(false);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        RationalVector v(m.row(r).begin(), m.row(r).end());
        e.insert(clear_denominators(v));
    }
    return e.rank();
}

std::size_t rank(const std::vector<SparseVector>& rows) {
    Echelon e(false);
    for (const auto& v : rows) e.insert(v);
    return e.rank();
}

Subspace kernel(const ExactMatrix& m) {
    Subspace rowspace = Subspace::row_space(m);
    auto rows = rowspace.integer_basis();
    std::vector<int> pivot_of(m.cols(), -1);
    for (std::size_t i = 0; i < rows.size(); ++i) pivot_of[rows[i].front().first] = static_cast<int>(i);

    // column f -> (row index, coefficient) for rows touching a free column
    std::vector<std::vector<std::pair<std::size_t, Integer>>> touching(m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t e = 1; e < rows[i].size(); ++e)
            touching[rows[i][e].first].emplace_back(i, rows[i][e].second);

    Subspace out(m.cols());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (pivot_of[f] >= 0) continue;
        Integer l = 1;
        for (const auto& [i, v] : touching[f])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rows[i].front().second.get_mpz_t());
        BigVector x;
        x.emplace_back(static_cast<std::uint32_t>(f), l);
        for (const auto& [i, v] : touching[f])
            x.emplace_back(rows[i].front().first, -v * (l / rows[i].front().second));
        std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.insert(x);
    }
    return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: dimension mismatch");
    Subspace out = a;
    for (const auto& v : b.integer_basis()) out.insert(v);
    return out;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("intersect: dimension mismatch");
    const auto n = static_cast<std::uint32_t>(a.ambient_dim());
    // Zassenhaus: rows (u, u) for u in A and (v, 0) for v in B.
    Echelon e(false);
    for (const auto& u : a.integer_basis()) {
        BigVector w = u;
        for (const auto& [c, v] : u) w.emplace_back(c + n, v);
        e.insert(w);
    }
    for (const auto& v : b.integer_basis()) e.insert(v);
    Subspace out(a.ambient_dim());
    for (const auto& row : e.rows()) {
        if (row.front().first < n) continue;
        BigVector w;
        for (const auto& [c, v] : row) w.emplace_back(c - n, v);
        out.insert(w);
    }
    return out;
}

}  // namespace secantkit
