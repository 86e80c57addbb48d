#pragma once

#include "pervcheck/cyclotomic.hpp"
#include "pervcheck/groebner.hpp"
#include "pervcheck/laurent.hpp"

#include <vector>

namespace pervcheck {

/// Dense matrix of Laurent polynomials over one ring.
class PolyMatrix {
public:
  PolyMatrix(RingContext ctx, int rows, int cols);
  static PolyMatrix from_rows(const RingContext& ctx, const std::vector<std::vector<LaurentPoly>>& rows);
  static PolyMatrix identity(const RingContext& ctx, int n);

  const RingContext& context() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const LaurentPoly& at(int r, int c) const { return data_[index(r, c)]; }
  void set(int r, int c, LaurentPoly p);

  bool is_zero() const;
  PolyMatrix transposed() const;
  PolyMatrix scaled(const Rational& c) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  bool operator==(const PolyMatrix& o) const = default;

private:
  std::size_t index(int r, int c) const;

  RingContext ctx_;
  int rows_;
  int cols_;
  std::vector<LaurentPoly> data_;
};

/// Largest minor size the library will enumerate.
inline constexpr int kMaxMinorSize = 5;

/// All nonzero k x k minors, as normalized associates without repetition.
/// k = 0 gives {1}; k larger than a dimension gives {}. Throws ResourceError
/// for k > kMaxMinorSize.
std::vector<LaurentPoly> minors(const PolyMatrix& m, int k);

/// I_k(M). I_0 = (1); I_k = (0) when k exceeds a dimension.
LaurentIdeal determinantal_ideal(const PolyMatrix& m, int k);

/// Rank over the fraction field of the Laurent ring, by fraction-free
/// elimination with exact division.
int generic_rank(const PolyMatrix& m);

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

CycMatrix evaluate(const PolyMatrix& m, const TorsionPoint& rho);
/// Rank by Gaussian elimination over Q(zeta).
int rank(CycMatrix m);
int rank_at(const PolyMatrix& m, const TorsionPoint& rho);

} // namespace pervcheck
