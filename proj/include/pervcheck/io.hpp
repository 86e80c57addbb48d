#pragma once

#include "pervcheck/complex.hpp"
#include "pervcheck/jumploci.hpp"
#include "pervcheck/perversity.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace pervcheck {

using Json = nlohmann::ordered_json;

inline constexpr const char* kComplexFormat = "pervcheck-complex/1";
inline constexpr const char* kLociFormat = "pervcheck-loci/1";
inline constexpr const char* kPointsFormat = "pervcheck-points/1";

/// Reads and parses a JSON file; InputError on I/O or syntax errors.
Json load_json_file(const std::string& path);

Json ring_to_json(const RingContext& ctx);
RingContext ring_from_json(const Json& j);

/// Differential matrices are stored with rows = target rank and
/// columns = source rank, entries in the polynomial grammar.
Json complex_to_json(const FreeComplex& f);
/// Strict: unknown keys, missing differentials, shape mismatches and bad
/// polynomials all raise InputError. d o d = 0 is not checked here.
FreeComplex complex_from_json(const Json& j);

Json loci_to_json(const LociProfile& p);

struct LociLoad {
  LociProfile profile;
  /// One line per component whose lattice had to be saturated.
  std::vector<std::string> notes;
};
/// Saturates and normalizes every component. Components violating an
/// invariant are collected and reported together in one InputError.
LociLoad loci_from_json(const Json& j);

Json points_to_json(const std::vector<TorsionPoint>& pts);
/// Every point must have `n` coordinates.
std::vector<TorsionPoint> points_from_json(const Json& j, int n);

Json torsion_point_to_json(const TorsionPoint& p);

Json report_to_json(const PerversityReport& r);
std::string report_to_text(const PerversityReport& r);

Json certificate_to_json(const ExactnessCertificate& c);
Json degree_report_to_json(const DegreeReport& r);
std::string degree_report_to_text(const DegreeReport& r);

/// "-inf", "+inf" or the integer.
Json ext_to_json(const ExtInt& e);

} // namespace pervcheck
