#include "pervcheck/matrix.hpp"

#include "pervcheck/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_map>

namespace pervcheck {

PolyMatrix::PolyMatrix(RingContext ctx, int rows, int cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), LaurentPoly(ctx_));
}

PolyMatrix PolyMatrix::from_rows(const RingContext& ctx, const std::vector<std::vector<LaurentPoly>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  PolyMatrix m(ctx, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw InputError("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

PolyMatrix PolyMatrix::identity(const RingContext& ctx, int n) {
  PolyMatrix m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, LaurentPoly::constant(ctx, Rational(1)));
  return m;
}

std::size_t PolyMatrix::index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
}

void PolyMatrix::set(int r, int c, LaurentPoly p) {
  require_same_context(ctx_, p.context(), "matrix entry");
  data_[index(r, c)] = std::move(p);
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(ctx_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.data_[t.index(j, i)] = at(i, j);
  return t;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p *= c;
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_context(a.ctx_, b.ctx_, "matrix product");
  if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
  PolyMatrix out(a.ctx_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const auto& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const auto& y = b.at(k, j);
        if (!y.is_zero()) out.data_[out.index(i, j)] += x * y;
      }
    }
  return out;
}

namespace {

using Mask = std::uint64_t;

struct MaskPairHash {
  std::size_t operator()(const std::pair<Mask, Mask>& p) const noexcept {
    return std::hash<Mask>()(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
  }
};

// Laplace expansion along the lowest selected row, memoized on (rows, cols).
class MinorTable {
public:
  explicit MinorTable(const PolyMatrix& m) : m_(m) {}

  const LaurentPoly& det(Mask rows, Mask cols) {
    const auto key = std::make_pair(rows, cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    LaurentPoly value(m_.context());
    if (rows == 0) {
      value = LaurentPoly::constant(m_.context(), Rational(1));
    } else {
      const int r = std::countr_zero(rows);
      const Mask rest = rows & (rows - 1);
      int sign_index = 0;
      for (Mask c = cols; c; c &= c - 1) {
        const int j = std::countr_zero(c);
        const auto& e = m_.at(r, j);
        if (!e.is_zero()) {
          const LaurentPoly& sub = det(rest, cols & ~(Mask{1} << j));
          if (!sub.is_zero()) {
            if (sign_index % 2 == 0)
              value += e * sub;
            else
              value -= e * sub;
          }
        }
        ++sign_index;
      }
    }
    return memo_.emplace(key, std::move(value)).first->second;
  }

private:
  const PolyMatrix& m_;
  std::unordered_map<std::pair<Mask, Mask>, LaurentPoly, MaskPairHash> memo_;
};

void subsets(int n, int k, int start, Mask cur, std::vector<Mask>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n - k; ++i) subsets(n, k - 1, i + 1, cur | (Mask{1} << i), out);
}

} // namespace

std::vector<LaurentPoly> minors(const PolyMatrix& m, int k) {
  if (k < 0) throw InputError("minor size must be nonnegative");
  if (k == 0) return {LaurentPoly::constant(m.context(), Rational(1))};
  if (k > m.rows() || k > m.cols()) return {};
  if (k > kMaxMinorSize)
    throw ResourceError("minors of size " + std::to_string(k) + " exceed the cap of " + std::to_string(kMaxMinorSize));
  if (m.rows() > 64 || m.cols() > 64) throw ResourceError("matrix too large for minor enumeration");
  std::vector<Mask> rs, cs;
  subsets(m.rows(), k, 0, 0, rs);
  subsets(m.cols(), k, 0, 0, cs);
  MinorTable table(m);
  std::set<LaurentPoly> out;
  for (Mask r : rs)
    for (Mask c : cs) {
      const auto& d = table.det(r, c);
      if (!d.is_zero()) out.insert(d.normalized_associate());
    }
  return {out.begin(), out.end()};
}

LaurentIdeal determinantal_ideal(const PolyMatrix& m, int k) {
  return LaurentIdeal(m.context(), minors(m, k));
}

namespace {

// A deterministic point where no coordinate is a root of unity or small.
TorsionPoint probe_point(int n) {
  static const int primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.emplace_back(primes[i % 14] + 2 * (i / 14), primes[(i + 5) % 14]);
  return TorsionPoint::from_rationals(v);
}

} // namespace

int generic_rank(const PolyMatrix& m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<LaurentPoly>> a(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[static_cast<std::size_t>(i)].push_back(m.at(i, j));
  // Specialization only bounds the rank from below.
  const int lower = rank_at(m, probe_point(m.context().num_vars()));

  LaurentPoly prev = LaurentPoly::constant(m.context(), Rational(1));
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    for (int i = r; i < rows; ++i) {
      const auto& e = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (e.is_zero()) continue;
      if (best < 0 || e.num_terms() < a[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)].num_terms())
        best = i;
    }
    if (best < 0) continue;
    std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(best)]);
    const auto& pr = a[static_cast<std::size_t>(r)];
    const LaurentPoly piv = pr[static_cast<std::size_t>(c)];
    for (int i = r + 1; i < rows; ++i) {
      auto& row = a[static_cast<std::size_t>(i)];
      const LaurentPoly f = row[static_cast<std::size_t>(c)];
      for (int j = c + 1; j < cols; ++j) {
        auto& x = row[static_cast<std::size_t>(j)];
        LaurentPoly v = piv * x;
        if (!f.is_zero()) v -= f * pr[static_cast<std::size_t>(j)];
        x = prev.is_constant() ? v * (Rational(1) / prev.terms().begin()->second) : exact_divide(v, prev);
      }
      row[static_cast<std::size_t>(c)] = LaurentPoly(m.context());
    }
    prev = piv;
    ++r;
  }
  if (r < lower) throw std::logic_error("generic rank below a specialized rank");
  return r;
}

CycMatrix evaluate(const PolyMatrix& m, const TorsionPoint& rho) {
  CycMatrix out(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(evaluate(m.at(i, j), rho));
  return out;
}

int rank(CycMatrix a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  unsigned long order = 1;
  for (const auto& row : a)
    for (const auto& x : row) order = std::lcm(order, x.order());
  for (auto& row : a)
    for (auto& x : row) x = x.embedded(order);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    const Cyclotomic inv = a[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      const Cyclotomic f = a[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

int rank_at(const PolyMatrix& m, const TorsionPoint& rho) { return rank(evaluate(m, rho)); }

} // namespace pervcheck
