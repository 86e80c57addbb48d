#include "cli.hpp"

#include "pervcheck/errors.hpp"
#include "pervcheck/fixtures.hpp"
#include "pervcheck/io.hpp"
#include "pervcheck/lattice.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

namespace pervcheck {

namespace {

struct Globals {
  bool json = false;
  int threads = 1;
  long long spair_budget = 0; // 0: keep the environment default
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InputError("--degrees expects a..b, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw InputError("bad lower bound");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw InputError("bad upper bound");
    if (hi < lo) throw InputError("--degrees: upper bound below lower bound");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("--degrees expects integers a..b, got '" + text + "'");
  }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const Globals& g, const std::string& path, std::ostream& out) {
  const FreeComplex f = complex_from_json(load_json_file(path));
  const ValidationReport v = validate(f);
  if (g.json) {
    Json j{{"valid", v.ok}, {"message", v.message}};
    if (v.degree) j["degree"] = *v.degree;
    if (v.row) j["row"] = *v.row;
    if (v.col) j["col"] = *v.col;
    emit(out, j);
  } else if (v.ok) {
    out << "valid: degrees [" << f.min_degree() << ", " << f.max_degree() << "], ring "
        << f.context().num_vars() << " variables (m=" << f.context().torus_rank()
        << ", g=" << f.context().abelian_rank() << ")\n";
  } else {
    out << "invalid: " << v.message << "\n";
  }
  return v.ok ? kExitOk : kExitFailed;
}

int cmd_jump_ideals(const Globals& g, const std::string& path, const std::string& degrees, std::ostream& out) {
  const FreeComplex f = complex_from_json(load_json_file(path));
  auto [lo, hi] = degrees.empty() ? std::pair{f.min_degree(), f.max_degree()} : parse_range(degrees);
  const int count = hi - lo + 1;
  std::vector<DegreeReport> reports(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        reports[static_cast<std::size_t>(k)] = jump_report(f, lo + k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  };
  const int nthreads = std::clamp(g.threads, 1, count);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (g.json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(degree_report_to_json(r));
    emit(out, {{"degrees", {{"min", lo}, {"max", hi}}}, {"jump_ideals", std::move(arr)}});
  } else {
    for (const auto& r : reports) out << degree_report_to_text(r);
  }
  return kExitOk;
}

int cmd_exactness(const Globals& g, const std::string& path, std::ostream& out) {
  const FreeComplex f = complex_from_json(load_json_file(path));
  const ExactnessCertificate cf = negative_exactness(f);
  const ExactnessCertificate cd = negative_exactness(dual(f));
  const bool ok = cf.exact && cd.exact;
  if (g.json) {
    emit(out, {{"assumption_holds", ok}, {"complex", certificate_to_json(cf)}, {"dual", certificate_to_json(cd)}});
  } else {
    out << "complex: " << cf.str() << "dual: " << cd.str()
        << "no negative-degree cohomology in complex and dual: " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? kExitOk : kExitFailed;
}

struct PerversityArgs {
  std::string input;
  std::string loci;
  int samples = 100;
  std::uint64_t seed = 1;
  bool sampled_only = false;
};

int cmd_perversity(const Globals& g, const PerversityArgs& a, std::ostream& out) {
  const Json in = load_json_file(a.input);
  const bool is_loci = in.is_object() && in.contains("format") && in["format"] == kLociFormat;
  PerversityReport r;
  std::vector<std::string> notes;
  if (is_loci) {
    if (!a.loci.empty()) throw InputError("--loci given but the input is already a loci file");
    LociLoad load = loci_from_json(in);
    notes = load.notes;
    r = perversity_verdict(load.profile);
  } else {
    const FreeComplex f = complex_from_json(in);
    if (a.loci.empty()) {
      r = ideal_verdict(f);
    } else {
      LociLoad load = loci_from_json(load_json_file(a.loci));
      notes = load.notes;
      if (a.samples < 0) throw InputError("--samples must be nonnegative");
      ConsistencyOptions opts;
      opts.samples = a.samples;
      opts.seed = a.seed;
      opts.exact = !a.sampled_only;
      try {
        r = perversity_verdict(f, load.profile, opts);
      } catch (const InconsistencyError& e) {
        if (g.json) {
          emit(out, {{"verdict", "inconsistent"}, {"seed", a.seed}, {"error", e.what()}, {"witness", e.witness()}});
        } else {
          out << "verdict: inconsistent\nseed: " << a.seed << "\n" << e.what() << "\nwitness: " << e.witness() << "\n";
        }
        return kExitFailed;
      }
    }
  }
  if (g.json) {
    Json j = report_to_json(r);
    if (!notes.empty()) j["notes"] = notes;
    emit(out, j);
  } else {
    out << report_to_text(r);
    for (const auto& n : notes) out << "note: " << n << "\n";
  }
  return r.verdict == Verdict::Perverse ? kExitOk : kExitFailed;
}

int cmd_codims(const Globals& g, const std::string& path, std::ostream& out) {
  const LociLoad load = loci_from_json(load_json_file(path));
  Json arr = Json::array();
  std::ostringstream text;
  for (const auto& [deg, u] : load.profile.entries()) {
    const UnionCodims uc = union_codims(u);
    Json comps = Json::array();
    text << "V^" << deg << ": dim " << uc.dim.str() << ", codim " << uc.codim.str() << ", codim_a "
         << uc.codim_a.str() << ", codim_sa " << uc.codim_sa.str() << "\n";
    for (const auto& c : u.components()) {
      const auto& k = c.codims();
      comps.push_back({{"component", c.str()},
                       {"codim", k.codim},
                       {"codim_a", k.codim_a},
                       {"codim_sa", k.codim_sa},
                       {"m2", k.m2},
                       {"g2", k.g2}});
      text << "  " << c.str() << ": codim " << k.codim << ", codim_a " << k.codim_a << ", codim_sa " << k.codim_sa
           << " (m''=" << k.m2 << ", g''=" << k.g2 << ")\n";
    }
    arr.push_back({{"degree", deg},
                   {"dim", ext_to_json(uc.dim)},
                   {"codim", ext_to_json(uc.codim)},
                   {"codim_a", ext_to_json(uc.codim_a)},
                   {"codim_sa", ext_to_json(uc.codim_sa)},
                   {"components", std::move(comps)}});
  }
  if (g.json) {
    Json j{{"loci", std::move(arr)}};
    if (!load.notes.empty()) j["notes"] = load.notes;
    emit(out, j);
  } else {
    out << text.str();
    for (const auto& n : load.notes) out << "note: " << n << "\n";
  }
  return kExitOk;
}

struct FixtureArgs {
  std::string name;
  int m = -1;
  int g = -1;
  int rank = -1;
  int shift = 0;
  std::string out;
};

Fixture build_fixture(const FixtureArgs& a) {
  auto need = [](int v, const char* flag) {
    if (v < 0) throw InputError(std::string("this fixture needs ") + flag);
    if (v > 6) throw InputError(std::string(flag) + " too large (at most 6)");
    return v;
  };
  if (a.name == "torus") return mellin_constant_torus(need(a.m, "--m"));
  if (a.name == "constant") return mellin_constant(need(a.m, "--m"), need(a.g, "--g"));
  if (a.name == "skyscraper") return skyscraper(need(a.m, "--m"), need(a.g, "--g"), need(a.rank, "--rank"));
  auto f = catalogue_fixture(a.name);
  if (!f) throw InputError("unknown fixture '" + a.name + "' (try `fixtures list`)");
  return *f;
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream o(path);
  if (!o) throw InputError("cannot write '" + path + "'");
  o << j.dump(2) << "\n";
  if (!o) throw InputError("failed writing '" + path + "'");
}

int cmd_fixtures(const Globals& g, const FixtureArgs& a, std::ostream& out) {
  if (a.name == "list") {
    const auto names = catalogue_names();
    if (g.json) {
      emit(out, {{"fixtures", names}, {"parametric", {"torus --m", "constant --m --g", "skyscraper --m --g --rank"}}});
    } else {
      for (const auto& n : names) out << n << "\n";
      out << "torus --m M\nconstant --m M --g G\nskyscraper --m M --g G --rank R\n";
    }
    return kExitOk;
  }
  Fixture f = build_fixture(a);
  if (a.shift != 0) f = mutate(f, Mutation{Mutation::Kind::ShiftBy, a.shift, 0, 0, 0, Rational(1)});
  const Json cj = complex_to_json(f.complex);
  const Json lj = loci_to_json(f.loci);
  if (!a.out.empty()) {
    write_file(a.out + ".complex.json", cj);
    write_file(a.out + ".loci.json", lj);
    if (!g.json) out << "wrote " << a.out << ".complex.json and " << a.out << ".loci.json\n";
  }
  if (g.json || a.out.empty()) {
    Json j{{"name", f.name}, {"description", f.description}, {"expected_verdict", to_string(f.expected_verdict)},
           {"expected_violations", f.expected_violations}};
    if (a.out.empty()) {
      j["complex"] = cj;
      j["loci"] = lj;
    }
    emit(out, j);
  }
  return kExitOk;
}

int cmd_sample(const Globals& g, const std::string& path, const std::string& points, const std::string& degrees,
               std::ostream& out) {
  const FreeComplex f = complex_from_json(load_json_file(path));
  const auto pts = points_from_json(load_json_file(points), f.context().num_vars());
  auto [lo, hi] = degrees.empty() ? std::pair{f.min_degree(), f.max_degree()} : parse_range(degrees);
  Json arr = Json::array();
  for (const auto& p : pts) {
    Json dims = Json::array();
    if (!g.json) out << p.str() << ":";
    for (int i = lo; i <= hi; ++i) {
      const PointMembership pm = membership_at_point(f, i, p);
      dims.push_back({{"degree", i}, {"dimension", pm.dimension}, {"member", pm.member}});
      if (!g.json) out << " h^" << i << "=" << pm.dimension;
    }
    if (!g.json) out << "\n";
    arr.push_back({{"point", torsion_point_to_json(p)}, {"cohomology", std::move(dims)}});
  }
  if (g.json) emit(out, {{"samples", std::move(arr)}});
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of cohomology jump loci and perversity for complexes over Laurent rings"};
  app.name("pervcheck");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Emit machine-readable JSON instead of text");
  app.add_option("--threads", g.threads, "Worker threads for per-degree computations")->check(CLI::Range(1, 256));
  app.add_option("--spair-budget", g.spair_budget,
                 "S-pair budget per Groebner basis (default: $PERVCHECK_SPAIR_BUDGET or 200000)")
      ->check(CLI::PositiveNumber);

  std::string complex_path, points_path, degrees;
  auto* validate_cmd = app.add_subcommand("validate", "Check shapes and d o d = 0 (exit 1 if d o d != 0)");
  validate_cmd->add_option("complex", complex_path, "Complex file")->required();

  auto* jump = app.add_subcommand("jump-ideals", "Reduced bases and codimensions of the jumping ideals J^i");
  jump->add_option("complex", complex_path, "Complex file")->required();
  jump->add_option("--degrees", degrees, "Degree range a..b (default: the complex's range)");

  auto* exact = app.add_subcommand("exactness",
                                   "Buchsbaum-Eisenbud certificate for negative degrees of the complex and its dual");
  exact->add_option("complex", complex_path, "Complex file")->required();

  PerversityArgs pa;
  auto* perv = app.add_subcommand("perversity", "Perversity verdict (exit 0 iff perverse)");
  perv->add_option("input", pa.input, "Complex file or loci file")->required();
  perv->add_option("--loci", pa.loci, "Declared loci for a complex input; checked against the complex");
  perv->add_option("--samples", pa.samples, "Random sample points for the consistency check")->check(CLI::NonNegativeNumber);
  perv->add_option("--seed", pa.seed, "Seed for sample points");
  perv->add_flag("--sampled-only", pa.sampled_only, "Skip the exact radical comparison");

  auto* codims = app.add_subcommand("codims", "Codimensions of every declared component");
  std::string loci_path;
  codims->add_option("loci", loci_path, "Loci file")->required();

  FixtureArgs fa;
  auto* fix = app.add_subcommand("fixtures", "Emit a fixture as complex and loci files (`fixtures list` for names)");
  fix->add_option("name", fa.name, "Catalogue name, list, torus, constant or skyscraper")->required();
  fix->add_option("--m", fa.m, "Torus rank for parametric fixtures");
  fix->add_option("--g", fa.g, "Abelian rank for parametric fixtures");
  fix->add_option("--rank", fa.rank, "Module rank for skyscraper");
  fix->add_option("--shift", fa.shift, "Shift the fixture so that loci move from degree i to i + s");
  fix->add_option("--out", fa.out, "Write <prefix>.complex.json and <prefix>.loci.json");

  auto* sample = app.add_subcommand("sample", "Cohomology dimensions of the complex at given points");
  sample->add_option("complex", complex_path, "Complex file")->required();
  sample->add_option("--points", points_path, "Points file")->required();
  sample->add_option("--degrees", degrees, "Degree range a..b (default: the complex's range)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (g.spair_budget > 0) set_spair_budget(static_cast<std::size_t>(g.spair_budget));
    if (*validate_cmd) return cmd_validate(g, complex_path, out);
    if (*jump) return cmd_jump_ideals(g, complex_path, degrees, out);
    if (*exact) return cmd_exactness(g, complex_path, out);
    if (*perv) return cmd_perversity(g, pa, out);
    if (*codims) return cmd_codims(g, loci_path, out);
    if (*fix) return cmd_fixtures(g, fa, out);
    if (*sample) return cmd_sample(g, complex_path, points_path, degrees, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InconsistencyError& e) {
    err << "inconsistent: " << e.what() << " (" << e.witness() << ")\n";
    return kExitFailed;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitInput;
}

} // namespace pervcheck
