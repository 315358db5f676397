#pragma once

#include "adlv/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace adlv {

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
    static IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }

    IntMatrix operator*(const IntMatrix& other) const;
    std::vector<Integer> apply(std::span<const Integer> v) const;
    bool operator==(const IntMatrix& other) const = default;

    Integer determinant() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

// U * m * V = D with D diagonal, non-negative, each entry dividing the next.
SmithForm smith_normal_form(const IntMatrix& m);

// Z^n modulo the lattice spanned by a list of relation vectors.
class QuotientPresentation {
  public:
    QuotientPresentation() = default;
    QuotientPresentation(std::size_t ambient_rank, const std::vector<std::vector<Integer>>& relations);
    static QuotientPresentation from_int64(std::size_t ambient_rank,
                                           const std::vector<std::vector<std::int64_t>>& relations);

    std::size_t ambient_rank() const { return n_; }
    // Diagonal of the Smith form, padded with zeros to ambient rank.
    const std::vector<Integer>& snf_diagonal() const { return diag_; }
    const IntMatrix& U() const { return U_; }
    const IntMatrix& V() const { return V_; }
    const IntMatrix& relations() const { return relations_; }

    std::size_t free_rank() const;
    std::vector<Integer> torsion() const;

    // Canonical residue: SNF coordinates, torsion ones reduced into [0, d).
    std::vector<Integer> project(std::span<const Integer> v) const;
    std::vector<Integer> project(const Coweight& v) const;
    std::vector<Integer> add(std::span<const Integer> a, std::span<const Integer> b) const;
    std::vector<Integer> normalize(std::vector<Integer> residue) const;
    // A lattice vector whose residue is the given one.
    std::vector<Integer> lift(std::span<const Integer> residue) const;
    bool is_zero(std::span<const Integer> v) const;

  private:
    std::size_t n_ = 0;
    IntMatrix relations_;
    IntMatrix U_, U_inv_, V_;
    std::vector<Integer> diag_;
};

enum class CoeffDomain { Integers, NonNegative };

// Coefficients c with sum c_i * generators[i] == target, or nullopt.
// Over the non-negative integers, generators outside a maximal independent
// subset are searched in [0, bound]; the default bound grows with the target.
std::optional<std::vector<Integer>> solve_in_cone(std::span<const Integer> target,
                                                  const std::vector<std::vector<Integer>>& generators,
                                                  CoeffDomain domain,
                                                  std::optional<std::int64_t> bound = std::nullopt);

// Exact rational linear algebra on small dense matrices (row-major rows).
using RationalMatrix = std::vector<RationalVector>;

std::size_t rank(RationalMatrix m);
// Unique solution of m * x == b, nullopt if inconsistent; throws if not unique.
std::optional<RationalVector> solve_unique(const RationalMatrix& m, const RationalVector& b);
// Basis of {x : m * x == 0}.
RationalMatrix kernel_basis(const RationalMatrix& m, std::size_t cols);

std::vector<Integer> to_integer(const Coweight& v);
Coweight to_int64(std::span<const Integer> v);

}  // namespace adlv
