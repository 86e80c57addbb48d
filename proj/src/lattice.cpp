#include "pervcheck/lattice.hpp"

#include "pervcheck/errors.hpp"

#include <algorithm>
#include <sstream>

namespace pervcheck {

namespace {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer floor_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void check_shape(const IntMatrix& a, int ncols) {
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != ncols) throw InputError("lattice row has the wrong length");
}

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw ResourceError("lattice entry too large");
  return z.get_si();
}

} // namespace

Diagonalization diagonalize(const IntMatrix& a, int ncols) {
  check_shape(a, ncols);
  const std::size_t r = a.size(), n = static_cast<std::size_t>(ncols);
  Diagonalization d;
  d.D = a;
  d.U = identity_matrix(r);
  d.V = identity_matrix(n);
  d.W = identity_matrix(n);
  auto& A = d.D;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(A[i], A[j]);
    std::swap(d.U[i], d.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : d.V) std::swap(row[i], row[j]);
    std::swap(d.W[i], d.W[j]);
  };
  std::size_t t = 0;
  for (; t < std::min(r, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = r, pj = n;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A[i][j] != 0 && (pi == r || abs(A[i][j]) < abs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (A[i][t] == 0) continue;
        const Integer q = floor_quotient(A[i][t], A[t][t]);
        for (std::size_t j = t; j < n; ++j) A[i][j] -= q * A[t][j];
        for (std::size_t j = 0; j < r; ++j) d.U[i][j] -= q * d.U[t][j];
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        const Integer q = floor_quotient(A[t][j], A[t][t]);
        for (std::size_t i = t; i < r; ++i) A[i][j] -= q * A[i][t];
        for (std::size_t i = 0; i < n; ++i) d.V[i][j] -= q * d.V[i][t];
        for (std::size_t k = 0; k < n; ++k) d.W[t][k] += q * d.W[j][k];
        if (A[t][j] != 0) clean = false;
      }
      if (clean) break;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < r; ++i)
        if (A[i][t] != 0 && abs(A[i][t]) < abs(A[bi][bj])) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (A[t][j] != 0 && abs(A[t][j]) < abs(A[bi][bj])) {
          bi = t;
          bj = j;
        }
      swap_rows(t, bi);
      swap_cols(t, bj);
    }
  }
  d.rank = static_cast<int>(t);
  return d;
}

IntMatrix hermite_normal_form(const IntMatrix& rows, int ncols) {
  check_shape(rows, ncols);
  IntMatrix M = rows;
  const std::size_t n = static_cast<std::size_t>(ncols);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < M.size(); ++col) {
    while (true) {
      std::size_t best = M.size();
      for (std::size_t i = row; i < M.size(); ++i)
        if (M[i][col] != 0 && (best == M.size() || abs(M[i][col]) < abs(M[best][col]))) best = i;
      if (best == M.size()) break;
      std::swap(M[row], M[best]);
      bool clean = true;
      for (std::size_t i = row + 1; i < M.size(); ++i) {
        if (M[i][col] == 0) continue;
        const Integer q = floor_quotient(M[i][col], M[row][col]);
        for (std::size_t j = col; j < n; ++j) M[i][j] -= q * M[row][j];
        if (M[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (M[row][col] == 0) continue;
    if (M[row][col] < 0)
      for (auto& x : M[row]) x = -x;
    for (std::size_t i = 0; i < row; ++i) {
      const Integer q = floor_quotient(M[i][col], M[row][col]);
      if (q != 0)
        for (std::size_t j = col; j < n; ++j) M[i][j] -= q * M[row][j];
    }
    ++row;
  }
  M.resize(row);
  return M;
}

int lattice_rank(const IntMatrix& rows, int ncols) { return static_cast<int>(hermite_normal_form(rows, ncols).size()); }

IntMatrix saturate_lattice(const IntMatrix& rows, int ncols) {
  const Diagonalization d = diagonalize(rows, ncols);
  IntMatrix basis(d.W.begin(), d.W.begin() + d.rank);
  return hermite_normal_form(basis, ncols);
}

bool in_rational_span(const IntMatrix& basis, const IntVector& v, int ncols) {
  IntMatrix ext = basis;
  ext.push_back(v);
  return lattice_rank(ext, ncols) == lattice_rank(basis, ncols);
}

LinearComponent::LinearComponent(RingContext ctx, TorsionPoint translate, const IntMatrix& lattice)
    : ctx_(std::move(ctx)), rho_(std::move(translate)) {
  const int n = ctx_.num_vars();
  if (rho_.size() != n) throw InputError("translate has " + std::to_string(rho_.size()) + " coordinates, expected " +
                                         std::to_string(n));
  check_shape(lattice, n);
  basis_ = saturate_lattice(lattice, n);
  input_saturated_ = hermite_normal_form(lattice, n) == basis_;
  const int m = ctx_.torus_rank();
  IntMatrix proj;
  for (const auto& row : basis_) proj.emplace_back(row.begin() + m, row.end());
  const int pa = lattice_rank(proj, n - m);
  if (pa % 2 != 0)
    throw InputError("lattice has abelian projection of odd rank " + std::to_string(pa));
  codims_.codim = rank();
  codims_.g2 = pa / 2;
  codims_.m2 = codims_.codim - pa;
  codims_.codim_a = codims_.g2;
  codims_.codim_sa = codims_.m2 + codims_.g2;
  if (!basis_.empty()) {
    const Diagonalization d = diagonalize(basis_, n);
    for (int l = d.rank; l < n; ++l) {
      IntVector dir;
      for (int j = 0; j < n; ++j) dir.push_back(d.V[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]);
      free_directions_.push_back(std::move(dir));
    }
  } else {
    free_directions_ = identity_matrix(static_cast<std::size_t>(n));
  }
}

bool LinearComponent::contains(const TorsionPoint& p) const {
  if (p.size() != ctx_.num_vars()) throw InputError("point has the wrong number of coordinates");
  const TorsionPoint q = p * rho_.inverse();
  return std::all_of(basis_.begin(), basis_.end(), [&](const IntVector& k) { return q.character(k).is_one(); });
}

TorsionPoint LinearComponent::point(const std::vector<TorsionCoord>& params) const {
  if (params.size() != free_directions_.size()) throw InputError("wrong number of component parameters");
  std::vector<TorsionCoord> x(static_cast<std::size_t>(ctx_.num_vars()));
  for (std::size_t l = 0; l < params.size(); ++l)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const long e = to_long(free_directions_[l][j]);
      if (e != 0) x[j] = x[j] * params[l].pow(e);
    }
  return TorsionPoint(std::move(x)) * rho_;
}

bool LinearComponent::has_rational_translate() const {
  return std::all_of(basis_.begin(), basis_.end(), [&](const IntVector& k) {
    return rho_.character(k).as_rational().has_value();
  });
}

LaurentIdeal LinearComponent::ideal() const {
  if (!has_rational_translate()) throw PreconditionError("component translate is not rational on its lattice");
  std::vector<LaurentPoly> gens;
  for (const auto& k : basis_) {
    Exponents e;
    for (const auto& x : k) e.push_back(static_cast<int>(to_long(x)));
    gens.push_back(LaurentPoly::monomial(ctx_, e, Rational(1)) -
                   LaurentPoly::constant(ctx_, *rho_.character(k).as_rational()));
  }
  return LaurentIdeal(ctx_, std::move(gens));
}

std::string LinearComponent::str() const {
  std::ostringstream os;
  os << "{translate " << rho_.str() << ", lattice [";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    os << (i ? ", " : "") << "(";
    for (std::size_t j = 0; j < basis_[i].size(); ++j) os << (j ? "," : "") << basis_[i][j].get_str();
    os << ")";
  }
  os << "]}";
  return os.str();
}

bool component_containment(const LinearComponent& c1, const LinearComponent& c2) {
  require_same_context(c1.context(), c2.context(), "component containment");
  const int n = c1.context().num_vars();
  for (const auto& k : c2.lattice())
    if (!in_rational_span(c1.lattice(), k, n)) return false;
  const TorsionPoint q = c1.translate() * c2.translate().inverse();
  return std::all_of(c2.lattice().begin(), c2.lattice().end(),
                     [&](const IntVector& k) { return q.character(k).is_one(); });
}

bool same_component(const LinearComponent& a, const LinearComponent& b) {
  return component_containment(a, b) && component_containment(b, a);
}

LinearUnion::LinearUnion(RingContext ctx, std::vector<LinearComponent> components) : ctx_(std::move(ctx)) {
  for (auto& c : components) {
    require_same_context(ctx_, c.context(), "linear union");
    if (std::any_of(comps_.begin(), comps_.end(), [&](const LinearComponent& k) { return component_containment(c, k); }))
      continue;
    std::erase_if(comps_, [&](const LinearComponent& k) { return component_containment(k, c); });
    comps_.push_back(std::move(c));
  }
}

bool LinearUnion::is_whole_space() const {
  return std::any_of(comps_.begin(), comps_.end(), [](const LinearComponent& c) { return c.rank() == 0; });
}

bool LinearUnion::contains(const TorsionPoint& p) const {
  return std::any_of(comps_.begin(), comps_.end(), [&](const LinearComponent& c) { return c.contains(p); });
}

bool LinearUnion::has_component(const LinearComponent& c) const {
  return std::any_of(comps_.begin(), comps_.end(), [&](const LinearComponent& k) { return same_component(k, c); });
}

bool LinearUnion::has_rational_translates() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const LinearComponent& c) { return c.has_rational_translate(); });
}

LaurentIdeal LinearUnion::ideal() const {
  LaurentIdeal out = LaurentIdeal::unit(ctx_);
  for (const auto& c : comps_) out = ideal_product(out, c.ideal());
  return out;
}

bool union_containment(const LinearUnion& a, const LinearUnion& b) {
  for (const auto& c : a.components())
    if (std::none_of(b.components().begin(), b.components().end(),
                     [&](const LinearComponent& k) { return component_containment(c, k); }))
      return false;
  return true;
}

UnionCodims union_codims(const LinearUnion& u) {
  UnionCodims out{ExtInt::pos_inf(), ExtInt::pos_inf(), ExtInt::pos_inf(),
                  ExtInt::neg_inf(), ExtInt::neg_inf(), ExtInt::neg_inf()};
  const auto& ctx = u.context();
  for (const auto& c : u.components()) {
    const auto& k = c.codims();
    out.codim = std::min(out.codim, ExtInt(k.codim));
    out.codim_a = std::min(out.codim_a, ExtInt(k.codim_a));
    out.codim_sa = std::min(out.codim_sa, ExtInt(k.codim_sa));
  }
  if (!u.empty()) {
    out.dim = ExtInt(ctx.num_vars() - out.codim.value());
    out.dim_a = ExtInt(ctx.abelian_rank() - out.codim_a.value());
    out.dim_sa = ExtInt(ctx.torus_rank() + ctx.abelian_rank() - out.codim_sa.value());
  }
  return out;
}

} // namespace pervcheck
