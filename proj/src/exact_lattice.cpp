#include "adlv/exact_lattice.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace adlv {

std::string to_string(const Rational& q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(Integer(text.substr(0, slash)), den);
}

RationalVector to_rational(const Coweight& v) {
    RationalVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

std::vector<Integer> to_integer(const Coweight& v) {
    return {v.begin(), v.end()};
}

Coweight to_int64(std::span<const Integer> v) {
    Coweight out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
            throw ComputationError("lattice coordinate exceeds 64-bit range");
        out.push_back(static_cast<std::int64_t>(x));
    }
    return out;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("column has wrong length");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

Integer IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    // Bareiss fraction-free elimination.
    IntMatrix a = *this;
    std::size_t n = rows_;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix U = IntMatrix::identity(m.rows());
    IntMatrix V = IntMatrix::identity(m.cols());
    const std::size_t steps = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            std::size_t pr = t, pc = t;
            Integer best = 0;
            for (std::size_t i = t; i < a.rows(); ++i)
                for (std::size_t j = t; j < a.cols(); ++j) {
                    Integer v = abs(a(i, j));
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (best == 0) return {U, a, V};

            swap_rows(a, t, pr);
            swap_rows(U, t, pr);
            swap_cols(a, t, pc);
            swap_cols(V, t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                Integer q = a(i, t) / a(t, t);
                add_row(a, i, t, -q);
                add_row(U, i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                Integer q = a(t, j) / a(t, t);
                add_col(a, j, t, -q);
                add_col(V, j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < a.cols(); ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(a, t, i, 1);
                        add_row(U, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
        }
    }
    return {U, a, V};
}

namespace {

IntMatrix unimodular_inverse(const IntMatrix& u) {
    const std::size_t n = u.rows();
    RationalMatrix aug(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational(u(i, j));
        aug[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && aug[p][col] == 0) ++p;
        if (p == n) throw InvariantViolation("singular transform in Smith form");
        std::swap(aug[p], aug[col]);
        Rational inv = 1 / aug[col][col];
        for (auto& x : aug[col]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            Rational f = aug[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[col][j];
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& x = aug[i][n + j];
            if (boost::multiprecision::denominator(x) != 1) throw InvariantViolation("transform not unimodular");
            out(i, j) = boost::multiprecision::numerator(x);
        }
    return out;
}

}  // namespace

QuotientPresentation::QuotientPresentation(std::size_t ambient_rank,
                                           const std::vector<std::vector<Integer>>& relations)
    : n_(ambient_rank), relations_(IntMatrix::from_columns(relations, ambient_rank)) {
    if (relations.empty()) {
        U_ = U_inv_ = IntMatrix::identity(n_);
        V_ = IntMatrix(0, 0);
        diag_.assign(n_, 0);
        return;
    }
    SmithForm snf = smith_normal_form(relations_);
    U_ = snf.U;
    V_ = snf.V;
    U_inv_ = unimodular_inverse(U_);
    diag_.assign(n_, 0);
    for (std::size_t i = 0; i < std::min(n_, relations.size()); ++i) diag_[i] = snf.D(i, i);
}

QuotientPresentation QuotientPresentation::from_int64(std::size_t ambient_rank,
                                                      const std::vector<std::vector<std::int64_t>>& relations) {
    std::vector<std::vector<Integer>> rel;
    rel.reserve(relations.size());
    for (const auto& r : relations) rel.emplace_back(r.begin(), r.end());
    return QuotientPresentation(ambient_rank, rel);
}

std::size_t QuotientPresentation::free_rank() const {
    return static_cast<std::size_t>(std::count(diag_.begin(), diag_.end(), Integer(0)));
}

std::vector<Integer> QuotientPresentation::torsion() const {
    std::vector<Integer> out;
    for (const auto& d : diag_)
        if (d > 1) out.push_back(d);
    return out;
}

std::vector<Integer> QuotientPresentation::normalize(std::vector<Integer> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const Integer& d = diag_[i];
        if (d == 0) continue;
        y[i] %= d;
        if (y[i] < 0) y[i] += d;
    }
    return y;
}

std::vector<Integer> QuotientPresentation::project(std::span<const Integer> v) const {
    if (v.size() != n_) throw std::invalid_argument("quotient_project: dimension mismatch");
    return normalize(U_.apply(v));
}

std::vector<Integer> QuotientPresentation::project(const Coweight& v) const {
    auto big = to_integer(v);
    return project(std::span<const Integer>(big));
}

std::vector<Integer> QuotientPresentation::add(std::span<const Integer> a, std::span<const Integer> b) const {
    std::vector<Integer> s(n_);
    for (std::size_t i = 0; i < n_; ++i) s[i] = a[i] + b[i];
    return normalize(std::move(s));
}

std::vector<Integer> QuotientPresentation::lift(std::span<const Integer> residue) const {
    return U_inv_.apply(residue);
}

bool QuotientPresentation::is_zero(std::span<const Integer> v) const {
    auto r = project(v);
    return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

// ---- rational linear algebra ----

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) {
    if (m.empty()) return 0;
    return rref(m, m.front().size()).size();
}

std::optional<RationalVector> solve_unique(const RationalMatrix& m, const RationalVector& b) {
    if (m.size() != b.size()) throw std::invalid_argument("solve_unique: dimension mismatch");
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    RationalMatrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    if (pivots.size() != cols) throw ComputationError("solve_unique: system is underdetermined");
    RationalVector x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
    return x;
}

RationalMatrix kernel_basis(const RationalMatrix& m, std::size_t cols) {
    RationalMatrix a = m;
    auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    RationalMatrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---- cone membership ----

namespace {

std::optional<std::vector<Integer>> solve_over_integers(std::span<const Integer> target,
                                                        const std::vector<std::vector<Integer>>& gens) {
    const std::size_t n = target.size();
    const std::size_t m = gens.size();
    IntMatrix g = IntMatrix::from_columns(gens, n);
    SmithForm snf = smith_normal_form(g);
    std::vector<Integer> b = snf.U.apply(target);
    std::vector<Integer> y(m);
    for (std::size_t i = 0; i < n; ++i) {
        Integer d = i < m ? snf.D(i, i) : Integer(0);
        if (d == 0) {
            if (b[i] != 0) return std::nullopt;
        } else {
            if (b[i] % d != 0) return std::nullopt;
            y[i] = b[i] / d;
        }
    }
    return snf.V.apply(y);
}

}  // namespace

std::optional<std::vector<Integer>> solve_in_cone(std::span<const Integer> target,
                                                  const std::vector<std::vector<Integer>>& generators,
                                                  CoeffDomain domain, std::optional<std::int64_t> bound) {
    const std::size_t n = target.size();
    for (const auto& g : generators)
        if (g.size() != n) throw std::invalid_argument("solve_in_cone: dimension mismatch");
    const std::size_t m = generators.size();
    if (std::all_of(target.begin(), target.end(), [](const Integer& x) { return x == 0; }))
        return std::vector<Integer>(m, 0);
    if (m == 0) return std::nullopt;
    if (domain == CoeffDomain::Integers) return solve_over_integers(target, generators);

    // Greedy maximal independent subset; the rest are searched.
    std::vector<std::size_t> independent, searched;
    RationalMatrix cols_so_far;
    for (std::size_t j = 0; j < m; ++j) {
        RationalMatrix trial = cols_so_far;
        RationalVector col;
        for (const auto& x : generators[j]) col.emplace_back(x);
        trial.push_back(col);
        if (rank(trial) > cols_so_far.size()) {
            cols_so_far = std::move(trial);
            independent.push_back(j);
        } else {
            searched.push_back(j);
        }
    }
    RationalMatrix basis(n, RationalVector(independent.size()));
    for (std::size_t k = 0; k < independent.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) basis[i][k] = Rational(generators[independent[k]][i]);

    std::int64_t limit = 10;
    if (bound) {
        limit = *bound;
    } else {
        Integer l1 = 0;
        for (const auto& x : target) l1 += abs(x);
        limit += static_cast<std::int64_t>(std::min<Integer>(l1, 1000));
    }

    std::vector<Integer> coeffs(m, 0);
    std::vector<std::int64_t> free_values(searched.size(), 0);
    while (true) {
        RationalVector residual(n);
        for (std::size_t i = 0; i < n; ++i) residual[i] = Rational(target[i]);
        for (std::size_t k = 0; k < searched.size(); ++k)
            for (std::size_t i = 0; i < n; ++i)
                residual[i] -= Rational(free_values[k]) * Rational(generators[searched[k]][i]);
        if (auto sol = solve_unique(basis, residual)) {
            bool ok = true;
            for (const auto& x : *sol)
                if (boost::multiprecision::denominator(x) != 1 || x < 0) ok = false;
            if (ok) {
                for (std::size_t k = 0; k < independent.size(); ++k)
                    coeffs[independent[k]] = boost::multiprecision::numerator((*sol)[k]);
                for (std::size_t k = 0; k < searched.size(); ++k) coeffs[searched[k]] = free_values[k];
                return coeffs;
            }
        }
        // odometer over the searched coefficients
        std::size_t k = 0;
        while (k < free_values.size() && free_values[k] == limit) free_values[k++] = 0;
        if (k == free_values.size()) return std::nullopt;
        ++free_values[k];
    }
}

}  // namespace adlv
