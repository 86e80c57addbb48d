#pragma once

#include "pervcheck/complex.hpp"
#include "pervcheck/jumploci.hpp"
#include "pervcheck/lattice.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pervcheck {

/// Declared jump loci, one linear union per degree; absent degrees are empty.
class LociProfile {
public:
  explicit LociProfile(RingContext ctx) : ctx_(std::move(ctx)) {}

  const RingContext& context() const { return ctx_; }
  /// Replaces the locus in degree i (an empty union erases the entry).
  void set(int i, LinearUnion u);
  LinearUnion locus(int i) const;
  const std::map<int, LinearUnion>& entries() const { return loci_; }
  /// Range of degrees with nonempty loci; nullopt when all are empty.
  std::optional<std::pair<int, int>> support() const;

  std::optional<long> euler;

private:
  RingContext ctx_;
  std::map<int, LinearUnion> loci_;
};

enum class Verdict { Perverse, UpperOnly, LowerOnly, Neither };
const char* to_string(Verdict v);

struct CheckLine {
  int degree = 0;
  std::string measure; // codim_a, codim_sa or codim
  ExtInt actual;
  long required = 0;
  bool pass = true;
};

struct Violation {
  int degree = 0;
  std::string condition; // "a" or "b"
  std::string measure;
  long required = 0;
  ExtInt actual;
};

struct AuxCheck {
  std::string status = "skipped"; // pass | fail | skipped
  std::string detail;
  Provenance provenance = Provenance::Exact;
};

struct PerversityReport {
  Verdict verdict = Verdict::Perverse;
  std::string source; // profile | complex+profile | ideals-torus | ideals-abelian
  std::vector<CheckLine> upper;
  std::vector<CheckLine> lower;
  std::vector<Violation> violations;
  AuxCheck support;
  AuxCheck propagation;
  AuxCheck euler;
  AuxCheck consistency;
  std::optional<long> euler_characteristic;
  std::optional<std::uint64_t> seed;

  bool upper_holds() const;
  bool lower_holds() const;
};

/// codim_a V^i >= i for i >= 0 (nonempty loci only).
std::vector<CheckLine> check_upper(const LociProfile& p);
/// codim_sa V^i >= -i for i <= 0 (nonempty loci only).
std::vector<CheckLine> check_lower(const LociProfile& p);

PerversityReport perversity_verdict(const LociProfile& p);

struct ConsistencyOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  /// Compare radicals of J^i with the declared component ideals when possible.
  bool exact = true;
};

/// Verdict on declared loci after checking them against the complex. Throws
/// InconsistencyError carrying a witness when they disagree.
PerversityReport perversity_verdict(const FreeComplex& f, const LociProfile& p, const ConsistencyOptions& opts);

/// Verdict read off the codimensions of the jumping ideals, without declared
/// loci. Only for g = 0 (codim V^i >= -i below zero, V^i empty above) and
/// m = 0 (codim V^i >= |2i|); InputError otherwise.
PerversityReport ideal_verdict(const FreeComplex& f);

struct SurvivalResult {
  int lo = 0;
  int hi = 0;
  std::vector<int> observed;
  bool matches = true;
};

/// [-m''-g'', g''] for a component of V^0, with the degrees where it is observed.
SurvivalResult survival_interval(const LociProfile& p, const LinearComponent& c);

/// Points spread over the declared components, for spot checks.
std::vector<TorsionPoint> points_on_loci(const LociProfile& p, std::uint64_t seed, int per_component);

} // namespace pervcheck
