#include "pervcheck/groebner.hpp"

#include "pervcheck/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace pervcheck {

// ---------------------------------------------------------------------------
// Monomial orders

MonomialOrder MonomialOrder::grevlex(int n) {
  MonomialOrder o;
  o.blocks_.push_back({n, Kind::GrevLex});
  return o;
}

MonomialOrder MonomialOrder::lex(int n) {
  MonomialOrder o;
  o.blocks_.push_back({n, Kind::Lex});
  return o;
}

MonomialOrder MonomialOrder::elimination(int k, int n) {
  if (k < 0 || k > n) throw InputError("elimination block size out of range");
  MonomialOrder o;
  o.blocks_.push_back({k, Kind::GrevLex});
  o.blocks_.push_back({n - k, Kind::GrevLex});
  return o;
}

MonomialOrder MonomialOrder::with_leading_block(int size) const {
  MonomialOrder o;
  o.blocks_.push_back({size, Kind::GrevLex});
  o.blocks_.insert(o.blocks_.end(), blocks_.begin(), blocks_.end());
  return o;
}

int MonomialOrder::num_vars() const {
  int n = 0;
  for (const auto& b : blocks_) n += b.size;
  return n;
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  std::size_t off = 0;
  for (const auto& blk : blocks_) {
    const std::size_t end = off + static_cast<std::size_t>(blk.size);
    if (blk.kind == Kind::GrevLex) {
      int da = 0, db = 0;
      for (std::size_t i = off; i < end; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t i = end; i-- > off;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    } else {
      for (std::size_t i = off; i < end; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    off = end;
  }
  return 0;
}

std::string MonomialOrder::tag() const {
  std::string out;
  for (const auto& b : blocks_) {
    if (!out.empty()) out += ",";
    out += (b.kind == Kind::GrevLex ? "grevlex" : "lex");
    out += "(" + std::to_string(b.size) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Buchberger

namespace gb {

namespace {

thread_local Stats tls_stats;

Integer content(const Poly& p) {
  Integer g = 0;
  for (const auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// fa * x^sa * a - fb * x^sb * b; empty shift vectors mean no shift.
Poly combine(const Integer& fa, const Exponents& sa, const Poly& a, const Integer& fb, const Exponents& sb,
             const Poly& b, const MonomialOrder& ord) {
  auto shifted = [](const Exponents& e, const Exponents& s) {
    if (s.empty()) return e;
    Exponents out = e;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[i];
    return out;
  };
  Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back({shifted(a[i].exp, sa), fa * a[i].coef});
      ++i;
      continue;
    }
    if (i == a.size()) {
      out.push_back({shifted(b[j].exp, sb), -(fb * b[j].coef)});
      ++j;
      continue;
    }
    Exponents ea = shifted(a[i].exp, sa);
    Exponents eb = shifted(b[j].exp, sb);
    const int c = ord.compare(ea, eb);
    if (c > 0) {
      out.push_back({std::move(ea), fa * a[i].coef});
      ++i;
    } else if (c < 0) {
      out.push_back({std::move(eb), -(fb * b[j].coef)});
      ++j;
    } else {
      Integer v = fa * a[i].coef - fb * b[j].coef;
      if (v != 0) out.push_back({std::move(ea), std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

Exponents diff(const Exponents& a, const Exponents& b) {
  Exponents d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return d;
}

bool disjoint(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

int sugar_of(const Poly& p) {
  int s = 0;
  for (const auto& t : p) s = std::max(s, total_degree(t.exp));
  return s;
}

bool is_constant(const Poly& p) {
  return p.size() == 1 && std::all_of(p[0].exp.begin(), p[0].exp.end(), [](int x) { return x == 0; });
}

Poly unit_poly(std::size_t nvars) { return Poly{Term{Exponents(nvars, 0), Integer(1)}}; }

struct Pair {
  int i;
  int j;
  Exponents lcm;
  int sugar;
};

} // namespace

int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Poly normalize(Poly p, const MonomialOrder& ord) {
  std::sort(p.begin(), p.end(), [&](const Term& x, const Term& y) { return ord.compare(x.exp, y.exp) > 0; });
  Poly out;
  for (auto& t : p) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef == 0) out.pop_back();
  return out;
}

void make_primitive(Poly& p) {
  if (p.empty()) return;
  Integer g = content(p);
  if (p.front().coef < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
}

Poly reduce(Poly f, const std::vector<Poly>& basis, const MonomialOrder& ord) {
  Poly rem;
  Poly p = std::move(f);
  const Exponents none;
  int steps = 0;
  while (!p.empty()) {
    const Poly* div = nullptr;
    for (const auto& g : basis) {
      if (!g.empty() && divides(g.front().exp, p.front().exp)) {
        div = &g;
        break;
      }
    }
    if (!div) {
      rem.push_back(std::move(p.front()));
      p.erase(p.begin());
      continue;
    }
    const Integer& lc_g = div->front().coef;
    const Integer c = p.front().coef;
    Integer d;
    mpz_gcd(d.get_mpz_t(), lc_g.get_mpz_t(), c.get_mpz_t());
    const Integer a = lc_g / d;
    const Integer b = c / d;
    const Exponents shift = diff(p.front().exp, div->front().exp);
    p = combine(a, none, p, b, shift, *div, ord);
    if (a != 1)
      for (auto& t : rem) t.coef *= a;
    if (++steps % 16 == 0) {
      Integer g = content(p);
      for (const auto& t : rem) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
      }
      if (g > 1) {
        for (auto& t : p) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
        for (auto& t : rem) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
      }
    }
  }
  make_primitive(rem);
  return rem;
}

std::vector<Poly> buchberger(std::vector<Poly> gens, const MonomialOrder& ord) {
  tls_stats = Stats{};
  const std::size_t nvars = static_cast<std::size_t>(ord.num_vars());
  std::vector<Poly> input;
  for (auto& g : gens) {
    Poly p = normalize(std::move(g), ord);
    if (p.empty()) continue;
    make_primitive(p);
    if (is_constant(p)) return {unit_poly(nvars)};
    input.push_back(std::move(p));
  }
  std::sort(input.begin(), input.end(), [&](const Poly& a, const Poly& b) {
    const int c = ord.compare(a.front().exp, b.front().exp);
    if (c != 0) return c < 0;
    return a.size() < b.size();
  });

  std::vector<Poly> polys;
  std::vector<int> sugar;
  std::vector<char> active;
  auto pair_less = [&](const Pair& x, const Pair& y) {
    if (x.sugar != y.sugar) return x.sugar < y.sugar;
    const int c = ord.compare(x.lcm, y.lcm);
    if (c != 0) return c < 0;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  };
  std::set<Pair, decltype(pair_less)> pairs(pair_less);

  auto lm = [&](int k) -> const Exponents& { return polys[static_cast<std::size_t>(k)].front().exp; };

  // Gebauer-Moeller update with a new basis element h.
  auto update = [&](int h) {
    std::vector<int> cands;
    for (int k = 0; k < h; ++k)
      if (active[static_cast<std::size_t>(k)]) cands.push_back(k);
    std::vector<Exponents> lcms;
    for (int k : cands) lcms.push_back(lcm(lm(h), lm(k)));
    std::vector<char> kept(cands.size(), 0), removed(cands.size(), 0);
    for (std::size_t a = 0; a < cands.size(); ++a) {
      bool keep = disjoint(lm(h), lm(cands[a]));
      if (!keep) {
        keep = true;
        for (std::size_t b = 0; b < cands.size() && keep; ++b) {
          if (b == a || removed[b]) continue;
          if (divides(lcms[b], lcms[a])) keep = false;
        }
      }
      if (keep)
        kept[a] = 1;
      else
        removed[a] = 1;
    }
    // Prune old pairs.
    for (auto it = pairs.begin(); it != pairs.end();) {
      const Exponents& l = it->lcm;
      if (divides(lm(h), l) && lcm(lm(it->i), lm(h)) != l && lcm(lm(h), lm(it->j)) != l)
        it = pairs.erase(it);
      else
        ++it;
    }
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!kept[a] || disjoint(lm(h), lm(cands[a]))) continue;
      const int k = cands[a];
      const int s = std::max(sugar[static_cast<std::size_t>(k)] + total_degree(lcms[a]) - total_degree(lm(k)),
                             sugar[static_cast<std::size_t>(h)] + total_degree(lcms[a]) - total_degree(lm(h)));
      pairs.insert(Pair{k, h, lcms[a], s});
    }
    for (int k : cands)
      if (divides(lm(h), lm(k))) active[static_cast<std::size_t>(k)] = 0;
    active[static_cast<std::size_t>(h)] = 1;
  };

  auto add = [&](Poly p, int s) {
    polys.push_back(std::move(p));
    sugar.push_back(s);
    active.push_back(0);
    update(static_cast<int>(polys.size()) - 1);
  };

  for (auto& p : input) {
    const int s = sugar_of(p);
    add(std::move(p), s);
  }

  const std::size_t budget = spair_budget();
  const Exponents none;
  while (!pairs.empty()) {
    const Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    if (++tls_stats.pairs_reduced > budget)
      throw ResourceError("Groebner basis computation exceeded the S-pair budget of " + std::to_string(budget));
    const Poly& pi = polys[static_cast<std::size_t>(pr.i)];
    const Poly& pj = polys[static_cast<std::size_t>(pr.j)];
    Integer d;
    mpz_gcd(d.get_mpz_t(), pi.front().coef.get_mpz_t(), pj.front().coef.get_mpz_t());
    Poly s = combine(pj.front().coef / d, diff(pr.lcm, pi.front().exp), pi, pi.front().coef / d,
                     diff(pr.lcm, pj.front().exp), pj, ord);
    std::vector<Poly> basis;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k]) basis.push_back(polys[k]);
    Poly h = reduce(std::move(s), basis, ord);
    if (h.empty()) {
      ++tls_stats.zero_reductions;
      continue;
    }
    if (is_constant(h)) return {unit_poly(nvars)};
    add(std::move(h), pr.sugar);
  }

  // Minimal basis, then inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (!active[k]) continue;
    bool redundant = false;
    for (std::size_t l = 0; l < polys.size() && !redundant; ++l) {
      if (l == k || !active[l]) continue;
      if (divides(polys[l].front().exp, polys[k].front().exp) &&
          (polys[l].front().exp != polys[k].front().exp || l < k))
        redundant = true;
    }
    if (!redundant) minimal.push_back(polys[k]);
  }
  std::vector<Poly> out;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Poly> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(minimal[l]);
    out.push_back(reduce(minimal[k], others, ord));
  }
  std::sort(out.begin(), out.end(),
            [&](const Poly& a, const Poly& b) { return ord.compare(a.front().exp, b.front().exp) < 0; });
  return out;
}

Stats last_stats() { return tls_stats; }

} // namespace gb

// ---------------------------------------------------------------------------
// Budget

namespace {

std::size_t initial_budget() {
  if (const char* env = std::getenv("PERVCHECK_SPAIR_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

std::atomic<std::size_t>& budget_cell() {
  static std::atomic<std::size_t> cell{initial_budget()};
  return cell;
}

} // namespace

std::size_t spair_budget() { return budget_cell().load(); }
void set_spair_budget(std::size_t budget) { budget_cell().store(budget); }

// ---------------------------------------------------------------------------
// Laurent ideals

struct LaurentIdeal::Cache {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const std::vector<gb::Poly>>> bases;
};

LaurentIdeal::LaurentIdeal(RingContext ctx, std::vector<LaurentPoly> generators)
    : ctx_(std::move(ctx)), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : gens_) require_same_context(ctx_, g.context(), "ideal generator");
}

LaurentIdeal LaurentIdeal::unit(const RingContext& ctx) {
  return LaurentIdeal(ctx, {LaurentPoly::constant(ctx, Rational(1))});
}

LaurentIdeal LaurentIdeal::zero(const RingContext& ctx) { return LaurentIdeal(ctx, {}); }

bool LaurentIdeal::generators_all_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

const std::vector<gb::Poly>& LaurentIdeal::saturated_basis() const {
  return saturated_basis(MonomialOrder::grevlex(ctx_.num_vars()));
}

const std::vector<gb::Poly>& LaurentIdeal::saturated_basis(const MonomialOrder& ord) const {
  const int n = ctx_.num_vars();
  if (ord.num_vars() != n) throw InputError("monomial order has the wrong number of variables");
  const std::string tag = ord.tag();
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->bases.find(tag); it != cache_->bases.end()) return *it->second;
  }
  std::vector<gb::Poly> result;
  if (!generators_all_zero()) {
    // Saturate by t_1...t_N: add 1 - y t_1...t_N and eliminate y.
    const MonomialOrder big = ord.with_leading_block(1);
    std::vector<gb::Poly> gens;
    for (const auto& g : gens_)
      if (!g.is_zero()) gens.push_back(to_gb_poly(g, big, 1));
    Exponents yt(static_cast<std::size_t>(n + 1), 1);
    gens.push_back(gb::normalize(gb::Poly{gb::Term{yt, Integer(-1)},
                                          gb::Term{Exponents(static_cast<std::size_t>(n + 1), 0), Integer(1)}},
                                 big));
    for (auto& p : gb::buchberger(std::move(gens), big)) {
      if (p.front().exp[0] != 0) continue;
      gb::Poly q;
      for (auto& t : p) q.push_back({Exponents(t.exp.begin() + 1, t.exp.end()), std::move(t.coef)});
      result.push_back(std::move(q));
    }
  }
  auto stored = std::make_shared<const std::vector<gb::Poly>>(std::move(result));
  std::lock_guard lock(cache_->mu);
  return *cache_->bases.try_emplace(tag, std::move(stored)).first->second;
}

bool LaurentIdeal::is_unit() const {
  const auto& b = saturated_basis();
  return b.size() == 1 && gb::total_degree(b.front().front().exp) == 0;
}

std::string LaurentIdeal::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + gens_[i].str();
  return out + ")";
}

gb::Poly to_gb_poly(const LaurentPoly& p, const MonomialOrder& ord, int leading_vars) {
  gb::Poly out;
  if (p.is_zero()) return out;
  const Exponents low = p.min_exponents();
  Integer den = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [e, c] : p.terms()) {
    Exponents f(static_cast<std::size_t>(leading_vars), 0);
    for (std::size_t i = 0; i < e.size(); ++i) f.push_back(e[i] - low[i]);
    Rational scaled = c * Rational(den);
    out.push_back({std::move(f), scaled.get_num()});
  }
  out = gb::normalize(std::move(out), ord);
  gb::make_primitive(out);
  return out;
}

LaurentPoly from_gb_poly(const RingContext& ctx, const gb::Poly& p) {
  LaurentPoly out(ctx);
  for (const auto& t : p) {
    if (static_cast<int>(t.exp.size()) != ctx.num_vars()) throw std::logic_error("from_gb_poly: arity mismatch");
    out.add_term(t.exp, Rational(t.coef));
  }
  return out;
}

std::vector<LaurentPoly> groebner_basis(const LaurentIdeal& ideal, const MonomialOrder& ord) {
  std::vector<LaurentPoly> out;
  for (const auto& p : ideal.saturated_basis(ord)) out.push_back(from_gb_poly(ideal.context(), p));
  return out;
}

bool ideal_membership(const LaurentPoly& f, const LaurentIdeal& ideal) {
  require_same_context(f.context(), ideal.context(), "ideal membership");
  if (f.is_zero()) return true;
  const auto ord = MonomialOrder::grevlex(ideal.context().num_vars());
  return gb::reduce(to_gb_poly(f, ord), ideal.saturated_basis(ord), ord).empty();
}

bool radical_membership(const LaurentPoly& f, const LaurentIdeal& ideal) {
  require_same_context(f.context(), ideal.context(), "radical membership");
  if (f.is_zero() || ideal.is_unit()) return true;
  if (ideal_membership(f, ideal)) return true;
  const int n = ideal.context().num_vars();
  const auto big = MonomialOrder::grevlex(n + 1);
  std::vector<gb::Poly> gens;
  for (const auto& p : ideal.saturated_basis()) {
    gb::Poly q;
    for (const auto& t : p) {
      Exponents e(1, 0);
      e.insert(e.end(), t.exp.begin(), t.exp.end());
      q.push_back({std::move(e), t.coef});
    }
    gens.push_back(gb::normalize(std::move(q), big));
  }
  // 1 - y f
  gb::Poly fy = to_gb_poly(f, big, 1);
  gb::Poly rel;
  for (auto& t : fy) {
    t.exp[0] = 1;
    rel.push_back({t.exp, -t.coef});
  }
  rel.push_back({Exponents(static_cast<std::size_t>(n + 1), 0), Integer(1)});
  // The primitive f may carry a denominator scale; 1 - y*(c f) has the same radical test.
  gens.push_back(gb::normalize(std::move(rel), big));
  const auto basis = gb::buchberger(std::move(gens), big);
  return basis.size() == 1 && gb::total_degree(basis.front().front().exp) == 0;
}

ExtInt codimension(const LaurentIdeal& ideal) {
  const auto& basis = ideal.saturated_basis();
  const int n = ideal.context().num_vars();
  if (basis.empty()) return ExtInt(0);
  if (ideal.is_unit()) return ExtInt::pos_inf();
  std::vector<unsigned> supports;
  for (const auto& p : basis) {
    unsigned mask = 0;
    for (int i = 0; i < n; ++i)
      if (p.front().exp[static_cast<std::size_t>(i)] > 0) mask |= 1u << i;
    supports.push_back(mask);
  }
  int best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    const int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (unsigned m : supports)
      if ((m & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return ExtInt(n - best);
}

bool variety_containment(const LaurentIdeal& I, const LaurentIdeal& J) {
  require_same_context(I.context(), J.context(), "variety containment");
  for (const auto& g : J.generators())
    if (!radical_membership(g, I)) return false;
  return true;
}

bool same_radical(const LaurentIdeal& I, const LaurentIdeal& J) {
  return variety_containment(I, J) && variety_containment(J, I);
}

LaurentIdeal ideal_product(const LaurentIdeal& a, const LaurentIdeal& b) {
  require_same_context(a.context(), b.context(), "ideal product");
  std::set<LaurentPoly> gens;
  for (const auto& x : a.generators()) {
    if (x.is_zero()) continue;
    for (const auto& y : b.generators()) {
      if (y.is_zero()) continue;
      gens.insert((x * y).normalized_associate());
    }
  }
  return LaurentIdeal(a.context(), std::vector<LaurentPoly>(gens.begin(), gens.end()));
}

LaurentIdeal ideal_sum(const LaurentIdeal& a, const LaurentIdeal& b) {
  require_same_context(a.context(), b.context(), "ideal sum");
  std::vector<LaurentPoly> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return LaurentIdeal(a.context(), std::move(gens));
}

} // namespace pervcheck
