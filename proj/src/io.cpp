#include "pervcheck/io.hpp"

#include "pervcheck/errors.hpp"
#include "pervcheck/poly_text.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pervcheck {

namespace {

void require_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    if (!j.contains(k)) throw InputError(where + ": missing key '" + k + "'");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw InputError(where + ": unknown key '" + k + "'");
}

void require_format(const Json& j, const char* format) {
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string() || j["format"].get<std::string>() != format)
    throw InputError(std::string("expected \"format\": \"") + format + "\"");
}

long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<long>();
}

const Json& get_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

// Integers may be given as JSON numbers or as decimal strings (for big values).
Integer get_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw InputError(where + ": expected an integer");
    return q.get_num();
  }
  throw InputError(where + ": expected an integer");
}

Rational get_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError(where + ": expected a rational as a string \"p/q\" or an integer");
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

TorsionPoint point_from_json(const Json& j, int n, const std::string& where) {
  get_array(j, where);
  if (static_cast<int>(j.size()) != n)
    throw InputError(where + ": expected " + std::to_string(n) + " coordinates, got " + std::to_string(j.size()));
  std::vector<TorsionCoord> coords;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const Json& c = j[k];
    if (!c.is_array() || c.size() != 2) throw InputError(w + ": expected a pair [modulus, angle]");
    coords.emplace_back(get_rational(c[0], w), get_rational(c[1], w));
  }
  return TorsionPoint(std::move(coords));
}

} // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Json ring_to_json(const RingContext& ctx) {
  Json j;
  j["variables"] = ctx.names();
  j["torus_rank"] = ctx.torus_rank();
  j["abelian_rank"] = ctx.abelian_rank();
  return j;
}

RingContext ring_from_json(const Json& j) {
  require_keys(j, "ring", {"variables", "torus_rank", "abelian_rank"});
  std::vector<std::string> names;
  for (const auto& v : get_array(j["variables"], "ring.variables")) {
    if (!v.is_string()) throw InputError("ring.variables: expected strings");
    names.push_back(v.get<std::string>());
  }
  const long m = get_int(j["torus_rank"], "ring.torus_rank");
  const long g = get_int(j["abelian_rank"], "ring.abelian_rank");
  if (m < 0 || g < 0 || m > 64 || g > 64) throw InputError("ring: ranks out of range");
  return RingContext(std::move(names), static_cast<int>(m), static_cast<int>(g));
}

Json complex_to_json(const FreeComplex& f) {
  Json j;
  j["format"] = kComplexFormat;
  j["ring"] = ring_to_json(f.context());
  j["degrees"] = {{"min", f.min_degree()}, {"max", f.max_degree()}};
  j["ranks"] = f.ranks();
  Json diffs = Json::array();
  for (int i = f.min_degree(); i < f.max_degree(); ++i) {
    const PolyMatrix d = f.differential(i);
    Json entries = Json::array();
    for (int r = 0; r < d.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < d.cols(); ++c) row.push_back(format_poly(d.at(r, c)));
      entries.push_back(std::move(row));
    }
    diffs.push_back({{"from", i}, {"rows", d.rows()}, {"cols", d.cols()}, {"entries", std::move(entries)}});
  }
  j["differentials"] = std::move(diffs);
  return j;
}

FreeComplex complex_from_json(const Json& j) {
  require_format(j, kComplexFormat);
  require_keys(j, "complex", {"format", "ring", "degrees", "ranks", "differentials"});
  RingContext ctx = ring_from_json(j["ring"]);
  require_keys(j["degrees"], "degrees", {"min", "max"});
  const long lo = get_int(j["degrees"]["min"], "degrees.min");
  const long hi = get_int(j["degrees"]["max"], "degrees.max");
  if (hi < lo) throw InputError("degrees: max < min");
  if (hi - lo > 1000 || lo < -100000 || hi > 100000) throw InputError("degrees: range too large");
  std::vector<int> ranks;
  for (const auto& r : get_array(j["ranks"], "ranks")) {
    const long v = get_int(r, "ranks");
    if (v < 0 || v > 10000) throw InputError("ranks: out of range");
    ranks.push_back(static_cast<int>(v));
  }
  if (static_cast<long>(ranks.size()) != hi - lo + 1)
    throw InputError("ranks: expected " + std::to_string(hi - lo + 1) + " entries, got " +
                     std::to_string(ranks.size()));
  const Json& diffs = get_array(j["differentials"], "differentials");
  if (static_cast<long>(diffs.size()) != hi - lo)
    throw InputError("differentials: expected " + std::to_string(hi - lo) + " matrices, got " +
                     std::to_string(diffs.size()));
  std::vector<PolyMatrix> mats;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    const int from = static_cast<int>(lo) + static_cast<int>(k);
    const std::string where = "differentials[" + std::to_string(k) + "]";
    const Json& d = diffs[k];
    require_keys(d, where, {"from", "rows", "cols", "entries"});
    if (get_int(d["from"], where + ".from") != from)
      throw InputError(where + ": expected \"from\": " + std::to_string(from) + " (ascending order)");
    const int rows = ranks[k + 1];
    const int cols = ranks[k];
    if (get_int(d["rows"], where + ".rows") != rows || get_int(d["cols"], where + ".cols") != cols)
      throw InputError(where + ": shape must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                       " (rows = rank of degree " + std::to_string(from + 1) + ", cols = rank of degree " +
                       std::to_string(from) + ")");
    const Json& entries = get_array(d["entries"], where + ".entries");
    if (static_cast<int>(entries.size()) != rows)
      throw InputError(where + ".entries: expected " + std::to_string(rows) + " rows");
    PolyMatrix m(ctx, rows, cols);
    for (int r = 0; r < rows; ++r) {
      const Json& row = get_array(entries[static_cast<std::size_t>(r)], where + ".entries");
      if (static_cast<int>(row.size()) != cols)
        throw InputError(where + ".entries[" + std::to_string(r) + "]: expected " + std::to_string(cols) +
                         " columns");
      for (int c = 0; c < cols; ++c) {
        const Json& e = row[static_cast<std::size_t>(c)];
        const std::string w = where + ".entries[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        if (e.is_number_integer()) {
          m.set(r, c, LaurentPoly::constant(ctx, get_rational(e, w)));
        } else if (e.is_string()) {
          try {
            m.set(r, c, parse_poly(ctx, e.get<std::string>()));
          } catch (const InputError& err) {
            throw InputError(w + ": " + err.what());
          }
        } else {
          throw InputError(w + ": expected a polynomial string");
        }
      }
    }
    mats.push_back(std::move(m));
  }
  return FreeComplex(ctx, static_cast<int>(lo), std::move(ranks), std::move(mats));
}

Json torsion_point_to_json(const TorsionPoint& p) {
  Json j = Json::array();
  for (const auto& c : p.coords()) j.push_back({to_string(c.modulus), to_string(c.angle)});
  return j;
}

Json loci_to_json(const LociProfile& p) {
  Json j;
  j["format"] = kLociFormat;
  j["ring"] = ring_to_json(p.context());
  if (p.euler) j["euler"] = *p.euler;
  Json loci = Json::array();
  for (const auto& [deg, u] : p.entries()) {
    Json comps = Json::array();
    for (const auto& c : u.components()) {
      Json lat = Json::array();
      for (const auto& row : c.lattice()) {
        Json r = Json::array();
        for (const auto& z : row) r.push_back(integer_to_json(z));
        lat.push_back(std::move(r));
      }
      comps.push_back({{"translate", torsion_point_to_json(c.translate())}, {"lattice", std::move(lat)}});
    }
    loci.push_back({{"degree", deg}, {"components", std::move(comps)}});
  }
  j["loci"] = std::move(loci);
  return j;
}

LociLoad loci_from_json(const Json& j) {
  require_format(j, kLociFormat);
  require_keys(j, "loci file", {"format", "ring", "loci"}, {"euler"});
  RingContext ctx = ring_from_json(j["ring"]);
  const int n = ctx.num_vars();
  LociLoad out{LociProfile(ctx), {}};
  if (j.contains("euler")) out.profile.euler = get_int(j["euler"], "euler");
  std::vector<std::string> rejected;
  std::set<long> seen;
  const Json& loci = get_array(j["loci"], "loci");
  for (std::size_t k = 0; k < loci.size(); ++k) {
    const std::string where = "loci[" + std::to_string(k) + "]";
    require_keys(loci[k], where, {"degree", "components"});
    const long deg = get_int(loci[k]["degree"], where + ".degree");
    if (deg < -100000 || deg > 100000) throw InputError(where + ": degree out of range");
    if (!seen.insert(deg).second) throw InputError(where + ": degree " + std::to_string(deg) + " listed twice");
    std::vector<LinearComponent> comps;
    const Json& cj = get_array(loci[k]["components"], where + ".components");
    for (std::size_t c = 0; c < cj.size(); ++c) {
      const std::string w = where + ".components[" + std::to_string(c) + "]";
      require_keys(cj[c], w, {"translate", "lattice"});
      TorsionPoint rho = point_from_json(cj[c]["translate"], n, w + ".translate");
      IntMatrix lat;
      for (const auto& row : get_array(cj[c]["lattice"], w + ".lattice")) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
          throw InputError(w + ".lattice: every row needs " + std::to_string(n) + " integers");
        IntVector v;
        for (const auto& x : row) v.push_back(get_integer(x, w + ".lattice"));
        lat.push_back(std::move(v));
      }
      try {
        LinearComponent comp(ctx, rho, lat);
        if (!comp.input_was_saturated()) out.notes.push_back(w + ": lattice saturated on load");
        comps.push_back(std::move(comp));
      } catch (const InputError& e) {
        rejected.push_back(w + ": " + e.what());
      }
    }
    out.profile.set(static_cast<int>(deg), LinearUnion(ctx, std::move(comps)));
  }
  if (!rejected.empty()) {
    std::string msg = "rejected " + std::to_string(rejected.size()) + " component(s):";
    for (const auto& r : rejected) msg += "\n  " + r;
    throw InputError(msg);
  }
  return out;
}

Json points_to_json(const std::vector<TorsionPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(torsion_point_to_json(p));
  return {{"format", kPointsFormat}, {"points", std::move(arr)}};
}

std::vector<TorsionPoint> points_from_json(const Json& j, int n) {
  require_format(j, kPointsFormat);
  require_keys(j, "points file", {"format", "points"});
  std::vector<TorsionPoint> out;
  const Json& pts = get_array(j["points"], "points");
  for (std::size_t k = 0; k < pts.size(); ++k)
    out.push_back(point_from_json(pts[k], n, "points[" + std::to_string(k) + "]"));
  return out;
}

Json ext_to_json(const ExtInt& e) {
  if (e.is_finite()) return e.value();
  return e.is_pos_inf() ? "+inf" : "-inf";
}

namespace {

Json lines_to_json(const std::vector<CheckLine>& lines) {
  Json arr = Json::array();
  for (const auto& l : lines)
    arr.push_back({{"degree", l.degree},
                   {"measure", l.measure},
                   {"actual", ext_to_json(l.actual)},
                   {"required", l.required},
                   {"pass", l.pass}});
  return arr;
}

Json aux_to_json(const AuxCheck& a) {
  return {{"status", a.status}, {"provenance", to_string(a.provenance)}, {"detail", a.detail}};
}

void aux_to_text(std::ostream& os, const char* name, const AuxCheck& a) {
  os << name << ": " << a.status;
  if (a.status != "skipped") os << " (" << to_string(a.provenance) << ")";
  if (!a.detail.empty()) os << " - " << a.detail;
  os << "\n";
}

} // namespace

Json report_to_json(const PerversityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["source"] = r.source;
  if (r.seed) j["seed"] = *r.seed;
  j["condition_a"] = {{"holds", r.upper_holds()}, {"checks", lines_to_json(r.upper)}};
  j["condition_b"] = {{"holds", r.lower_holds()}, {"checks", lines_to_json(r.lower)}};
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"degree", x.degree},
                 {"condition", x.condition},
                 {"measure", x.measure},
                 {"required", x.required},
                 {"actual", ext_to_json(x.actual)}});
  j["violations"] = std::move(v);
  j["support"] = aux_to_json(r.support);
  j["propagation"] = aux_to_json(r.propagation);
  j["euler"] = aux_to_json(r.euler);
  j["consistency"] = aux_to_json(r.consistency);
  if (r.euler_characteristic) j["euler_characteristic"] = *r.euler_characteristic;
  return j;
}

std::string report_to_text(const PerversityReport& r) {
  std::ostringstream os;
  os << "verdict: " << to_string(r.verdict) << "\n";
  os << "source: " << r.source << "\n";
  if (r.seed) os << "seed: " << *r.seed << "\n";
  auto lines = [&](const char* title, bool holds, const std::vector<CheckLine>& ls) {
    os << title << ": " << (holds ? "holds" : "fails") << "\n";
    for (const auto& l : ls)
      os << "  i=" << l.degree << " " << l.measure << "=" << l.actual.str() << " required>=" << l.required
         << (l.pass ? "" : "  VIOLATED") << "\n";
  };
  lines("condition (a)", r.upper_holds(), r.upper);
  lines("condition (b)", r.lower_holds(), r.lower);
  if (r.violations.empty()) {
    os << "violations: none\n";
  } else {
    os << "violations:\n";
    for (const auto& v : r.violations)
      os << "  degree " << v.degree << " condition (" << v.condition << "): " << v.measure << "=" << v.actual.str()
         << " < " << v.required << "\n";
  }
  aux_to_text(os, "support", r.support);
  aux_to_text(os, "propagation", r.propagation);
  aux_to_text(os, "euler", r.euler);
  aux_to_text(os, "consistency", r.consistency);
  if (r.euler_characteristic) os << "euler characteristic: " << *r.euler_characteristic << "\n";
  return os.str();
}

Json certificate_to_json(const ExactnessCertificate& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"degree", r.degree},
                    {"rank", r.rank},
                    {"rank_out", r.rank_out},
                    {"rank_in", r.rank_in},
                    {"codim", ext_to_json(r.codim)},
                    {"required_codim", -r.degree},
                    {"rank_ok", r.rank_ok},
                    {"depth_ok", r.depth_ok}});
  return {{"exact", c.exact}, {"rows", std::move(rows)}};
}

Json degree_report_to_json(const DegreeReport& r) {
  return {{"degree", r.degree},
          {"generators", r.generators},
          {"codim", ext_to_json(r.codim)},
          {"empty", r.empty},
          {"whole_space", r.whole_space},
          {"provenance", to_string(r.provenance)}};
}

std::string degree_report_to_text(const DegreeReport& r) {
  std::ostringstream os;
  os << "degree " << r.degree << ": codim " << r.codim.str();
  if (r.empty) os << " (empty)";
  if (r.whole_space) os << " (whole space)";
  os << " [" << to_string(r.provenance) << "]\n";
  for (const auto& g : r.generators) os << "  " << g << "\n";
  return os.str();
}

} // namespace pervcheck
