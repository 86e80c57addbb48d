#include "pervcheck/complex.hpp"

#include "pervcheck/errors.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace pervcheck {

struct FreeComplex::Cache {
  std::mutex mu;
  std::map<int, int> ranks;
  std::map<int, std::pair<LaurentIdeal, LaurentIdeal>> ideals;
};

FreeComplex::FreeComplex(RingContext ctx, int min_degree, std::vector<int> ranks, std::vector<PolyMatrix> differentials)
    : ctx_(std::move(ctx)), kmin_(min_degree), ranks_(std::move(ranks)), diffs_(std::move(differentials)),
      cache_(std::make_shared<Cache>()) {
  if (ranks_.empty()) throw InputError("a complex needs at least one degree");
  for (int r : ranks_)
    if (r < 0) throw InputError("ranks must be nonnegative");
  if (diffs_.size() + 1 != ranks_.size())
    throw InputError("expected " + std::to_string(ranks_.size() - 1) + " differentials, got " +
                     std::to_string(diffs_.size()));
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    const auto& d = diffs_[k];
    require_same_context(ctx_, d.context(), "differential");
    if (d.rows() != ranks_[k + 1] || d.cols() != ranks_[k])
      throw InputError("differential in degree " + std::to_string(kmin_ + static_cast<int>(k)) + " is " +
                       std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                       std::to_string(ranks_[k + 1]) + "x" + std::to_string(ranks_[k]));
  }
}

int FreeComplex::rank(int i) const {
  if (i < kmin_ || i > max_degree()) return 0;
  return ranks_[static_cast<std::size_t>(i - kmin_)];
}

PolyMatrix FreeComplex::differential(int i) const {
  if (i >= kmin_ && i < max_degree()) return diffs_[static_cast<std::size_t>(i - kmin_)];
  return PolyMatrix(ctx_, rank(i + 1), rank(i));
}

int FreeComplex::differential_rank(int i) const {
  if (i < kmin_ || i >= max_degree()) return 0;
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->ranks.find(i); it != cache_->ranks.end()) return it->second;
  }
  const int r = generic_rank(diffs_[static_cast<std::size_t>(i - kmin_)]);
  std::lock_guard lock(cache_->mu);
  cache_->ranks.emplace(i, r);
  return r;
}

bool FreeComplex::operator==(const FreeComplex& o) const {
  return ctx_ == o.ctx_ && kmin_ == o.kmin_ && ranks_ == o.ranks_ && diffs_ == o.diffs_;
}

ValidationReport validate(const FreeComplex& f) {
  for (int i = f.min_degree(); i + 2 <= f.max_degree(); ++i) {
    const PolyMatrix comp = f.differential(i + 1) * f.differential(i);
    for (int r = 0; r < comp.rows(); ++r)
      for (int c = 0; c < comp.cols(); ++c)
        if (!comp.at(r, c).is_zero()) {
          ValidationReport rep;
          rep.ok = false;
          rep.degree = i;
          rep.row = r;
          rep.col = c;
          rep.message = "d^" + std::to_string(i + 1) + " * d^" + std::to_string(i) + " is nonzero at (" +
                        std::to_string(r) + "," + std::to_string(c) + "): " + comp.at(r, c).str();
          return rep;
        }
  }
  return {};
}

FreeComplex dual(const FreeComplex& f) {
  std::vector<int> ranks(f.ranks().rbegin(), f.ranks().rend());
  std::vector<PolyMatrix> diffs;
  for (int j = -f.max_degree(); j < -f.min_degree(); ++j) diffs.push_back(f.differential(-j - 1).transposed());
  return FreeComplex(f.context(), -f.max_degree(), std::move(ranks), std::move(diffs));
}

FreeComplex shift(const FreeComplex& f, int s) {
  return FreeComplex(f.context(), f.min_degree() - s, f.ranks(), f.differentials());
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  require_same_context(a.context(), b.context(), "direct sum");
  const int lo = std::min(a.min_degree(), b.min_degree());
  const int hi = std::max(a.max_degree(), b.max_degree());
  std::vector<int> ranks;
  std::vector<PolyMatrix> diffs;
  for (int i = lo; i <= hi; ++i) ranks.push_back(a.rank(i) + b.rank(i));
  for (int i = lo; i < hi; ++i) {
    PolyMatrix d(a.context(), a.rank(i + 1) + b.rank(i + 1), a.rank(i) + b.rank(i));
    const PolyMatrix da = a.differential(i), db = b.differential(i);
    for (int r = 0; r < da.rows(); ++r)
      for (int c = 0; c < da.cols(); ++c) d.set(r, c, da.at(r, c));
    for (int r = 0; r < db.rows(); ++r)
      for (int c = 0; c < db.cols(); ++c) d.set(da.rows() + r, da.cols() + c, db.at(r, c));
    diffs.push_back(std::move(d));
  }
  return FreeComplex(a.context(), lo, std::move(ranks), std::move(diffs));
}

namespace {

LaurentPoly remap(const LaurentPoly& p, const RingContext& target, const std::vector<int>& where) {
  LaurentPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    Exponents x(static_cast<std::size_t>(target.num_vars()), 0);
    for (std::size_t k = 0; k < e.size(); ++k) x[static_cast<std::size_t>(where[k])] = e[k];
    out.add_term(x, c);
  }
  return out;
}

PolyMatrix remap(const PolyMatrix& m, const RingContext& target, const std::vector<int>& where) {
  PolyMatrix out(target, m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) out.set(r, c, remap(m.at(r, c), target, where));
  return out;
}

} // namespace

FreeComplex external_tensor(const FreeComplex& a, const FreeComplex& b) {
  const auto& ca = a.context();
  const auto& cb = b.context();
  const int ma = ca.torus_rank(), mb = cb.torus_rank(), ga = ca.abelian_rank(), gb = cb.abelian_rank();
  std::vector<std::string> names;
  std::vector<int> wa, wb;
  for (int i = 0; i < ma; ++i) {
    wa.push_back(static_cast<int>(names.size()));
    names.push_back(ca.name(i));
  }
  for (int i = 0; i < mb; ++i) {
    wb.push_back(static_cast<int>(names.size()));
    names.push_back(cb.name(i));
  }
  for (int i = ma; i < ca.num_vars(); ++i) {
    wa.push_back(static_cast<int>(names.size()));
    names.push_back(ca.name(i));
  }
  for (int i = mb; i < cb.num_vars(); ++i) {
    wb.push_back(static_cast<int>(names.size()));
    names.push_back(cb.name(i));
  }
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw InputError("external tensor: variable '" + n + "' occurs in both factors");
  const RingContext ctx(names, ma + mb, ga + gb);

  const int lo = a.min_degree() + b.min_degree();
  const int hi = a.max_degree() + b.max_degree();
  // Offsets of the (p, n-p) summand inside total degree n.
  auto offset = [&](int n, int p) {
    int off = 0;
    for (int q = a.min_degree(); q < p; ++q) off += a.rank(q) * b.rank(n - q);
    return off;
  };
  std::vector<int> ranks;
  for (int n = lo; n <= hi; ++n) ranks.push_back(offset(n, a.max_degree() + 1));
  std::vector<PolyMatrix> diffs;
  const LaurentPoly zero(ctx);
  for (int n = lo; n < hi; ++n) {
    PolyMatrix d(ctx, ranks[static_cast<std::size_t>(n + 1 - lo)], ranks[static_cast<std::size_t>(n - lo)]);
    for (int p = a.min_degree(); p <= a.max_degree(); ++p) {
      const int q = n - p;
      const int ra = a.rank(p), rb = b.rank(q);
      if (ra == 0 || rb == 0) continue;
      const int src = offset(n, p);
      // dx (x) y lands in (p+1, q).
      if (a.rank(p + 1) > 0) {
        const PolyMatrix da = remap(a.differential(p), ctx, wa);
        const int dst = offset(n + 1, p + 1);
        for (int r = 0; r < da.rows(); ++r)
          for (int c = 0; c < da.cols(); ++c)
            if (!da.at(r, c).is_zero())
              for (int k = 0; k < rb; ++k) d.set(dst + r * rb + k, src + c * rb + k, da.at(r, c));
      }
      // (-1)^p x (x) dy lands in (p, q+1).
      if (b.rank(q + 1) > 0) {
        PolyMatrix db = remap(b.differential(q), ctx, wb);
        if (p % 2 != 0) db = db.scaled(Rational(-1));
        const int dst = offset(n + 1, p);
        const int rb1 = b.rank(q + 1);
        for (int k = 0; k < ra; ++k)
          for (int r = 0; r < db.rows(); ++r)
            for (int c = 0; c < db.cols(); ++c)
              if (!db.at(r, c).is_zero()) d.set(dst + k * rb1 + r, src + k * rb + c, db.at(r, c));
      }
    }
    diffs.push_back(std::move(d));
  }
  return FreeComplex(ctx, lo, std::move(ranks), std::move(diffs));
}

FreeComplex twist(const FreeComplex& f, const TorsionPoint& lambda) {
  const auto& ctx = f.context();
  if (lambda.size() != ctx.num_vars()) throw InputError("twist: point has the wrong number of coordinates");
  std::vector<VarImage> images;
  for (int i = 0; i < lambda.size(); ++i) {
    const auto q = lambda[i].as_rational();
    if (!q) throw InputError("twist: scalars must be rational");
    images.push_back({*q, 1});
  }
  std::vector<PolyMatrix> diffs;
  for (const auto& d : f.differentials()) {
    PolyMatrix t(ctx, d.rows(), d.cols());
    for (int r = 0; r < d.rows(); ++r)
      for (int c = 0; c < d.cols(); ++c)
        if (!d.at(r, c).is_zero()) t.set(r, c, substitute(d.at(r, c), images));
    diffs.push_back(std::move(t));
  }
  return FreeComplex(ctx, f.min_degree(), f.ranks(), std::move(diffs));
}

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

} // namespace

FreeComplex induce(const FreeComplex& f, const std::vector<int>& n) {
  const auto& ctx = f.context();
  const int nv = ctx.num_vars();
  if (static_cast<int>(n.size()) != nv) throw InputError("induce: need one cover degree per variable");
  int block = 1;
  for (int x : n) {
    if (x <= 0) throw InputError("induce: cover degrees must be positive");
    block *= x;
  }
  auto index_of = [&](const Exponents& r) {
    int idx = 0;
    for (int k = nv - 1; k >= 0; --k) idx = idx * n[static_cast<std::size_t>(k)] + r[static_cast<std::size_t>(k)];
    return idx;
  };
  std::vector<Exponents> basis(static_cast<std::size_t>(block), Exponents(static_cast<std::size_t>(nv), 0));
  for (int b = 0; b < block; ++b) {
    int rest = b;
    for (int k = 0; k < nv; ++k) {
      basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] = rest % n[static_cast<std::size_t>(k)];
      rest /= n[static_cast<std::size_t>(k)];
    }
  }
  std::vector<int> ranks;
  for (int r : f.ranks()) ranks.push_back(r * block);
  std::vector<PolyMatrix> diffs;
  for (const auto& d : f.differentials()) {
    PolyMatrix out(ctx, d.rows() * block, d.cols() * block);
    for (int r = 0; r < d.rows(); ++r)
      for (int c = 0; c < d.cols(); ++c) {
        const auto& p = d.at(r, c);
        if (p.is_zero()) continue;
        std::vector<LaurentPoly> cells(static_cast<std::size_t>(block) * static_cast<std::size_t>(block),
                                       LaurentPoly(ctx));
        for (int e = 0; e < block; ++e)
          for (const auto& [a, coef] : p.terms()) {
            Exponents q(static_cast<std::size_t>(nv)), rem(static_cast<std::size_t>(nv));
            for (int k = 0; k < nv; ++k) {
              const auto kk = static_cast<std::size_t>(k);
              const int s = a[kk] + basis[static_cast<std::size_t>(e)][kk];
              q[kk] = floor_div(s, n[kk]);
              rem[kk] = s - q[kk] * n[kk];
            }
            cells[static_cast<std::size_t>(index_of(rem) * block + e)].add_term(q, coef);
          }
        for (int i = 0; i < block; ++i)
          for (int j = 0; j < block; ++j) {
            auto& cell = cells[static_cast<std::size_t>(i * block + j)];
            if (!cell.is_zero()) out.set(r * block + i, c * block + j, std::move(cell));
          }
      }
    diffs.push_back(std::move(out));
  }
  return FreeComplex(ctx, f.min_degree(), std::move(ranks), std::move(diffs));
}

std::pair<LaurentIdeal, LaurentIdeal> fitting_and_jumping_ideals(const FreeComplex& f, int i) {
  const auto& ctx = f.context();
  if (i < f.min_degree() || i > f.max_degree()) return {LaurentIdeal::unit(ctx), LaurentIdeal::unit(ctx)};
  {
    std::lock_guard lock(f.cache_->mu);
    if (auto it = f.cache_->ideals.find(i); it != f.cache_->ideals.end()) return it->second;
  }
  const PolyMatrix out = f.differential(i);
  const PolyMatrix in = f.differential(i - 1);
  const int rank_out = f.differential_rank(i);
  const int rank_in = f.differential_rank(i - 1);
  const int r = f.rank(i);
  LaurentIdeal fitting = determinantal_ideal(out, rank_out);

  // Minors of size above the generic rank vanish, which bounds j on both sides.
  auto basis_gens = [&](const LaurentIdeal& I) {
    std::vector<LaurentPoly> g;
    for (const auto& p : groebner_basis(I, MonomialOrder::grevlex(ctx.num_vars()))) g.push_back(p);
    return g;
  };
  std::set<LaurentPoly> gens;
  for (int j = std::max(0, r - rank_out); j <= std::min(rank_in, r); ++j) {
    const LaurentIdeal a = determinantal_ideal(in, j);
    const LaurentIdeal b = determinantal_ideal(out, r - j);
    const auto ga = basis_gens(a);
    const auto gb = basis_gens(b);
    for (const auto& x : ga)
      for (const auto& y : gb) gens.insert((x * y).normalized_associate());
  }
  LaurentIdeal jumping(ctx, std::vector<LaurentPoly>(gens.begin(), gens.end()));
  std::pair<LaurentIdeal, LaurentIdeal> result{std::move(fitting), std::move(jumping)};
  std::lock_guard lock(f.cache_->mu);
  return f.cache_->ideals.try_emplace(i, std::move(result)).first->second;
}

std::string ExactnessCertificate::str() const {
  std::ostringstream os;
  os << (exact ? "exact" : "not exact") << "\n";
  for (const auto& r : rows)
    os << "  degree " << r.degree << ": r=" << r.rank << " rank_out=" << r.rank_out << " rank_in=" << r.rank_in
       << " codim I=" << r.codim.str() << " need>=" << -r.degree << (r.rank_ok ? "" : " [rank additivity fails]")
       << (r.depth_ok ? "" : " [depth fails]") << "\n";
  return os.str();
}

ExactnessCertificate is_exact_range(const FreeComplex& f, const std::vector<int>& degrees) {
  ExactnessCertificate cert;
  for (int i : degrees) {
    if (i >= 0) throw PreconditionError("exactness is only certified in negative degrees");
    ExactnessRow row;
    row.degree = i;
    row.rank = f.rank(i);
    row.rank_out = f.differential_rank(i);
    row.rank_in = f.differential_rank(i - 1);
    row.rank_ok = row.rank == row.rank_out + row.rank_in;
    row.codim = codimension(fitting_and_jumping_ideals(f, i).first);
    row.depth_ok = row.codim >= ExtInt(-i);
    cert.exact = cert.exact && row.rank_ok && row.depth_ok;
    cert.rows.push_back(row);
  }
  return cert;
}

namespace {

std::vector<int> negative_degrees(const FreeComplex& f) {
  std::vector<int> d;
  for (int i = f.min_degree(); i < 0; ++i) d.push_back(i);
  return d;
}

} // namespace

ExactnessCertificate negative_exactness(const FreeComplex& f) { return is_exact_range(f, negative_degrees(f)); }

bool check_assumption(const FreeComplex& f) {
  if (!negative_exactness(f).exact) return false;
  return negative_exactness(dual(f)).exact;
}

} // namespace pervcheck
