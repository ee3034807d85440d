#include "nfdyn/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nfdyn/dynsim.hpp"
#include "nfdyn/errors.hpp"
#include "nfdyn/intpoly.hpp"
#include "nfdyn/popdiff.hpp"
#include "nfdyn/presets.hpp"
#include "nfdyn/ring.hpp"
#include "nfdyn/torus.hpp"

namespace nfdyn {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

mpq_class parse_q(const json& v, const std::string& key) {
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_string()) {
    try {
      mpq_class q(v.get<std::string>());
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw ParseError("key '" + key + "': bad rational literal");
    }
  }
  throw ParseError("key '" + key + "': expected integer or rational string");
}

const json& require(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError("missing key '" + key + "'");
  return *it;
}

std::string require_str(const json& v) {
  if (!v.is_string()) throw ParseError("expected a string value");
  return v.get<std::string>();
}

QVec parse_coeffs(const json& arr, const std::string& key) {
  if (!arr.is_array()) throw ParseError("key '" + key + "': expected coefficient array");
  QVec c;
  for (const auto& v : arr) c.push_back(parse_q(v, key));
  return c;
}

MultiPolyQ poly1_from_coeffs(const QVec& c) {
  MultiPolyQ p = MultiPolyQ::zero(1);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) p.terms[{static_cast<unsigned>(i)}] = c[i];
  return p;
}

// family: preset name or inline array of coefficient arrays
std::vector<QVec> parse_family(const json& v) {
  if (v.is_string()) {
    const FamilyPreset* p = find_family_preset(v.get<std::string>());
    if (!p) throw ValidationError("unknown family preset: " + v.get<std::string>());
    return p->coeffs;
  }
  if (!v.is_array()) throw ParseError("key 'family': expected preset name or array");
  std::vector<QVec> fam;
  for (const auto& member : v) fam.push_back(parse_coeffs(member, "family"));
  return fam;
}

QuadReal parse_generator(const json& v) {
  const GeneratorPreset* g = find_generator_preset(require_str(v));
  if (!g) throw ValidationError("unknown generator preset: " + require_str(v));
  return g->value;
}

void write_file(const std::string& path, const std::string& content,
                ScenarioResult& result) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw TaskError("cannot write output file: " + path);
  os << content;
  result.outputs.push_back(path);
}

std::string out_path(const json& sc, const ScenarioOptions& opt, const std::string& key,
                     const std::string& fallback_ext) {
  std::string name = sc.value("name", sc.value("task", "scenario"));
  std::string file = sc.value(key, name + fallback_ext);
  if (opt.out_dir.empty()) return file;
  return opt.out_dir + "/" + file;
}

std::vector<long> parse_ladder(const json& sc, std::vector<long> fallback) {
  if (!sc.contains("ladder")) return fallback;
  std::vector<long> ladder;
  for (const auto& v : require(sc, "ladder")) ladder.push_back(v.get<long>());
  if (ladder.empty()) throw ValidationError("key 'ladder': empty");
  return ladder;
}

json qvec_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json zvec_json(const ZVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

// ---- certify ----------------------------------------------------------

void run_certify(const json& sc, const ScenarioOptions& opt, ScenarioResult& result) {
  NumberFieldSpec field = make_preset_field(require_str(require(sc, "field")));
  std::vector<QVec> coeffs = parse_family(require(sc, "family"));
  std::vector<PolyOverK> family;
  for (const auto& c : coeffs) family.push_back(poly_from_rational_coeffs(c, field));
  for (const auto& p : family)
    if (!is_ok_valued(p, field))
      throw ValidationError("family member does not map the ring into itself");

  json results = json::array();
  bool all_certified = true;
  for (const auto& mj : require(sc, "moduli")) {
    mpq_class m = parse_q(mj, "moduli");
    AlgebraicNumber r = from_rational(m, field);
    auto xi = joint_intersectivity_search(family, r, field);
    json row;
    row["modulus"] = m.get_str();
    row["certified"] = xi.has_value();
    if (xi) {
      IntersectiveShift shift = intersective_shift(family, r, *xi, field);
      row["xi"] = qvec_json(shift.xi.coords);
      row["D"] = qvec_json(shift.D.coords);
      result.summary += "modulus " + m.get_str() + ": jointly intersective\n";
    } else {
      all_certified = false;
      result.summary +=
          "modulus " + m.get_str() + ": NOT jointly intersective at modulus " +
          m.get_str() + "\n";
    }
    results.push_back(row);
  }
  result.report["results"] = results;
  if (sc.value("assert_intersective", false) && !all_certified) result.pass = false;
  if (sc.value("assert_not_intersective", false) && all_certified) result.pass = false;

  if (opt.write_outputs) {
    std::ostringstream csv;
    csv << "modulus,certified\n";
    for (const auto& row : results)
      csv << row["modulus"].get<std::string>() << ","
          << (row["certified"].get<bool>() ? 1 : 0) << "\n";
    write_file(out_path(sc, opt, "out_csv", ".csv"), csv.str(), result);
  }
}

// ---- orbit ------------------------------------------------------------

PolynomialTorusSequence parse_sequence(const json& sc) {
  PolynomialTorusSequence u;
  u.nvars = sc.value("nvars", 1);
  for (const auto& gj : require(sc, "generators")) {
    const GeneratorPreset* g = find_generator_preset(gj.get<std::string>());
    if (!g) throw ValidationError("unknown generator preset: " + gj.get<std::string>());
    u.gens.push_back(Generator{g->name, g->value});
  }
  const json& coords = require(sc, "coords");
  u.torus_dim = coords.size();
  for (const auto& coord : coords) {
    SymRealPoly c = SymRealPoly::zero(u.nvars);
    for (const auto& term : coord) {
      mpq_class q = parse_q(require(term, "c"), "c");
      MultiPolyQ::Expo e(u.nvars, 0);
      if (term.contains("e")) {
        const json& ej = term["e"];
        if (ej.size() != u.nvars) throw ValidationError("term exponent length mismatch");
        for (std::size_t i = 0; i < u.nvars; ++i) e[i] = ej[i].get<unsigned>();
      }
      SymbolicReal coeff;
      if (term.contains("g") && !term["g"].is_null()) {
        std::string gname = term["g"].get<std::string>();
        std::size_t gi = u.gens.size();
        for (std::size_t i = 0; i < u.gens.size(); ++i)
          if (u.gens[i].name == gname) gi = i;
        if (gi == u.gens.size())
          throw ValidationError("term generator not declared: " + gname);
        coeff = SymbolicReal::generator_term(gi, q);
      } else {
        coeff = SymbolicReal(q);
      }
      SymRealPoly t = SymRealPoly::zero(u.nvars);
      if (!coeff.is_zero()) t.terms[e] = coeff;
      c = c + t;
    }
    u.coords.push_back(std::move(c));
  }
  if (u.torus_dim == 0) throw ValidationError("key 'coords': empty");
  return u;
}

void run_orbit(const json& sc, const ScenarioOptions& opt, ScenarioResult& result) {
  PolynomialTorusSequence u = parse_sequence(sc);
  SubtorusCosetUnion closure = orbit_closure(u);
  std::vector<long> ladder = parse_ladder(sc, {1000, 10000});
  long c_max = sc.value("c_max", 3);
  EquidistributionReport rep = equidistribution_report(u, closure, ladder, c_max,
                                                       opt.threads);

  json basis = json::array();
  for (const auto& v : closure.v_basis) basis.push_back(zvec_json(v));
  result.report["v_basis"] = basis;
  result.report["modulus"] = closure.modulus;
  result.report["cosets"] = closure.cosets.size();
  result.report["tolerance"] = rep.tolerance;
  result.report["all_pass"] = rep.all_pass;
  json rows = json::array();
  std::ostringstream csv;
  csv << "character,structured,predicted_re,predicted_im,measured_re,measured_im,pass\n";
  for (const auto& row : rep.rows) {
    json r;
    r["character"] = zvec_json(row.character);
    r["structured"] = row.structured;
    r["predicted"] = {row.predicted.real(), row.predicted.imag()};
    json meas = json::array();
    for (const auto& m : row.measured) meas.push_back({m.real(), m.imag()});
    r["measured"] = meas;
    r["pass"] = row.pass;
    rows.push_back(r);
    std::string cstr;
    for (const auto& ci : row.character) cstr += (cstr.empty() ? "" : ";") + ci.get_str();
    csv << cstr << "," << (row.structured ? 1 : 0) << "," << fmt(row.predicted.real())
        << "," << fmt(row.predicted.imag()) << "," << fmt(row.measured.back().real())
        << "," << fmt(row.measured.back().imag()) << "," << (row.pass ? 1 : 0) << "\n";
  }
  result.report["rows"] = rows;
  result.summary += "orbit closure: rank " + std::to_string(closure.v_basis.size()) +
                    ", modulus " + std::to_string(closure.modulus) + ", " +
                    std::to_string(closure.cosets.size()) + " coset(s); " +
                    (rep.all_pass ? "equidistribution PASS" : "equidistribution FAIL") +
                    "\n";
  if (sc.value("assert_all_pass", true) && !rep.all_pass) result.pass = false;
  if (opt.write_outputs)
    write_file(out_path(sc, opt, "out_csv", ".csv"), csv.str(), result);
}

// ---- khintchine -------------------------------------------------------

IntervalSet parse_interval_set(const json& v) {
  std::vector<std::pair<QuadReal, QuadReal>> raw;
  for (const auto& iv : v) {
    if (!iv.is_array() || iv.size() != 2)
      throw ParseError("key 'set': expected [lo, hi] pairs");
    raw.emplace_back(QuadReal(parse_q(iv[0], "set")), QuadReal(parse_q(iv[1], "set")));
  }
  return IntervalSet::normalized(raw);
}

void run_khintchine(const json& sc, const ScenarioOptions& opt, ScenarioResult& result) {
  QuadReal alpha = parse_generator(require(sc, "generator"));
  IntervalRotationSystem sys{alpha, parse_interval_set(require(sc, "set"))};
  std::vector<QVec> coeffs = parse_family(require(sc, "family"));
  std::vector<MultiPolyQ> shifts;
  for (const auto& c : coeffs) shifts.push_back(poly1_from_coeffs(c));

  // cross-module gate: a family that fails the intersectivity search at the
  // declared modulus is refused outright
  if (sc.contains("field") && sc.contains("modulus")) {
    NumberFieldSpec field = make_preset_field(require_str(sc["field"]));
    std::vector<PolyOverK> kfam;
    for (const auto& c : coeffs) kfam.push_back(poly_from_rational_coeffs(c, field));
    AlgebraicNumber r = from_rational(parse_q(sc["modulus"], "modulus"), field);
    if (!joint_intersectivity_search(kfam, r, field))
      throw TaskError("family refused: not jointly intersective at modulus " +
                      parse_q(sc["modulus"], "modulus").get_str());
  }

  long n_max = sc.value("n_max", 1000L);
  double eps = require(sc, "epsilon").get<double>();
  QuadReal mu = sys.A.measure();
  if (!mu.is_rational()) throw ValidationError("set measure must be rational");
  auto values = multicorrelation(sys, shifts, 1, n_max);
  std::vector<double> vd;
  vd.reserve(values.size());
  for (const auto& v : values) vd.push_back(v.to_double());
  KhintchineReport rep = khintchine_report(vd, 1, mu.a,
                                           static_cast<unsigned>(shifts.size()), eps);

  result.report["threshold"] = rep.threshold;
  result.report["popular_count"] = rep.popular.size();
  result.report["max_gap"] = rep.max_gap;
  result.report["density"] = rep.density;
  result.report["gap_stable"] = rep.gap_stable;
  result.summary += "khintchine: " + std::to_string(rep.popular.size()) + "/" +
                    std::to_string(n_max) + " popular, max gap " +
                    std::to_string(rep.max_gap) +
                    (rep.gap_stable ? " (stable)" : "") + "\n";
  if (sc.contains("assert_max_gap_le") &&
      rep.max_gap > sc["assert_max_gap_le"].get<long>())
    result.pass = false;
  if (sc.value("assert_nonempty", false) && rep.popular.empty()) result.pass = false;

  if (opt.write_outputs) {
    std::ostringstream csv;
    csv << "n,correlation,popular\n";
    std::size_t pi = 0;
    for (long n = 1; n <= n_max; ++n) {
      bool pop = pi < rep.popular.size() && rep.popular[pi] == n;
      if (pop) ++pi;
      csv << n << "," << fmt(vd[static_cast<std::size_t>(n - 1)]) << "," << (pop ? 1 : 0)
          << "\n";
    }
    write_file(out_path(sc, opt, "out_csv", ".csv"), csv.str(), result);
  }
}

// ---- popdiff ----------------------------------------------------------

GridSet parse_grid_set(const json& v, unsigned d, unsigned long N, std::uint64_t seed) {
  std::string kind = require_str(require(v, "kind"));
  if (kind == "random")
    return random_set(d, N, parse_q(require(v, "delta"), "delta"),
                      v.value("seed", seed));
  if (kind == "interval")
    return interval_set(d, N, require(v, "lo").get<unsigned long>(),
                        require(v, "hi").get<unsigned long>());
  if (kind == "residue") {
    std::vector<unsigned long> classes;
    for (const auto& c : require(v, "classes")) classes.push_back(c.get<unsigned long>());
    return residue_class_set(d, N, require(v, "mod").get<unsigned long>(), classes);
  }
  if (kind == "quadratic") return quadratic_residue_set(d, N);
  if (kind == "full") return GridSet::full(d, N);
  if (kind == "import") {
    std::ifstream is(require_str(require(v, "path")), std::ios::binary);
    if (!is) throw TaskError("cannot open grid file");
    return v.value("format", "bits") == "rle" ? import_rle(is) : import_bits(is);
  }
  throw ValidationError("unknown grid set kind: " + kind);
}

void run_popdiff(const json& sc, const ScenarioOptions& opt, ScenarioResult& result) {
  unsigned long N = require(sc, "N").get<unsigned long>();
  unsigned d = sc.value("d", 1);
  GridSet E = parse_grid_set(require(sc, "set"), d, N, opt.seed);
  std::vector<QVec> coeffs = parse_family(require(sc, "family"));
  std::vector<std::vector<MultiPolyQ>> family;
  for (const auto& c : coeffs) {
    // one coordinate polynomial per grid axis; a bare member targets axis 0
    std::vector<MultiPolyQ> member{poly1_from_coeffs(c)};
    for (unsigned i = 1; i < d; ++i) member.push_back(MultiPolyQ::zero(1));
    family.push_back(std::move(member));
  }
  auto [def_lo, def_hi] = default_range(N);
  long n_lo = sc.value("n_lo", def_lo);
  long n_hi = sc.value("n_hi", def_hi);
  double eps = require(sc, "epsilon").get<double>();
  ConfigurationCountReport rep = popular_differences(E, family, n_lo, n_hi, eps);

  result.report["threshold"] = rep.threshold;
  result.report["popular_count"] = rep.popular.size();
  result.report["max_gap"] = rep.max_gap;
  result.report["density"] = rep.density;
  result.report["boundary_bound"] = rep.boundary_bound;
  result.report["set_density"] = E.density().get_str();
  result.summary += "popdiff: " + std::to_string(rep.popular.size()) + " popular n, " +
                    "fraction " + fmt(rep.density) + ", max gap " +
                    std::to_string(rep.max_gap) + "\n";
  if (sc.contains("assert_popular_fraction_ge") &&
      rep.density < sc["assert_popular_fraction_ge"].get<double>())
    result.pass = false;

  if (opt.write_outputs) {
    std::ostringstream csv;
    csv << "n,count,popular\n";
    std::size_t pi = 0;
    for (std::size_t i = 0; i < rep.ns.size(); ++i) {
      bool pop = pi < rep.popular.size() && rep.popular[pi] == rep.ns[i];
      if (pop) ++pi;
      csv << rep.ns[i] << "," << rep.counts[i] << "," << (pop ? 1 : 0) << "\n";
    }
    write_file(out_path(sc, opt, "out_csv", ".csv"), csv.str(), result);
  }
}

// ---- limit-check ------------------------------------------------------

StepFunction parse_step(const json& v) {
  if (v.is_string() && v.get<std::string>() == "one") return StepFunction::one();
  if (v.is_array() && v.size() == 2)
    return StepFunction::indicator(parse_q(v[0], "f"), parse_q(v[1], "f"));
  throw ParseError("step function: expected \"one\" or [lo, hi]");
}

void run_limit_check(const json& sc, const ScenarioOptions& opt, ScenarioResult& result) {
  QuadReal alpha = parse_generator(require(sc, "generator"));
  long r = require(sc, "r").get<long>();
  long s = require(sc, "s").get<long>();
  MultiPolyQ p = poly1_from_coeffs(parse_coeffs(require(sc, "p"), "p"));
  StepFunction f0 = parse_step(require(sc, "f0"));
  StepFunction f1 = parse_step(require(sc, "f1"));
  StepFunction f2 = parse_step(require(sc, "f2"));
  std::vector<long> ladder = parse_ladder(sc, {1000, 10000});
  LimitCheckResult res = kronecker_limit_check(alpha, r, s, p, f0, f1, f2, ladder);

  result.report["lhs"] = res.lhs;
  result.report["rhs"] = res.rhs;
  result.report["gap"] = res.gap;
  result.report["ladder_gaps"] = res.ladder_gaps;
  result.summary += "limit-check: lhs " + fmt(res.lhs) + ", rhs " + fmt(res.rhs) +
                    ", gap " + fmt(res.gap) + "\n";
  if (sc.contains("assert_gap_le") && res.gap > sc["assert_gap_le"].get<double>())
    result.pass = false;
  if (sc.value("assert_decreasing_gaps", false))
    for (std::size_t i = 1; i < res.ladder_gaps.size(); ++i)
      if (res.ladder_gaps[i] >= res.ladder_gaps[i - 1]) result.pass = false;

  if (opt.write_outputs) {
    std::ostringstream csv;
    csv << "N,gap\n";
    std::vector<long> sorted = ladder;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      csv << sorted[i] << "," << fmt(res.ladder_gaps[i]) << "\n";
    write_file(out_path(sc, opt, "out_csv", ".csv"), csv.str(), result);
  }
}

// ---- dispatch ---------------------------------------------------------

void run_one(const json& sc, const ScenarioOptions& opt, ScenarioResult& result) {
  if (!sc.is_object()) throw ParseError("scenario must be a JSON object");
  std::string task = require_str(require(sc, "task"));
  result.report = json::object();
  result.report["task"] = task;
  result.report["parameters"] = sc;
  try {
    if (task == "certify")
      run_certify(sc, opt, result);
    else if (task == "orbit")
      run_orbit(sc, opt, result);
    else if (task == "khintchine")
      run_khintchine(sc, opt, result);
    else if (task == "popdiff")
      run_popdiff(sc, opt, result);
    else if (task == "limit-check")
      run_limit_check(sc, opt, result);
    else
      throw ValidationError("unknown task: " + task);
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError&) {
    throw;
  } catch (const TaskError&) {
    throw;
  } catch (const Error& e) {
    // module errors surface with their scenario context
    throw TaskError("task '" + task + "': " + e.what());
  }
  result.report["pass"] = result.pass;
  if (opt.write_outputs)
    write_file(out_path(sc, opt, "out_json", ".json"), result.report.dump(2) + "\n",
               result);
}

}  // namespace

ScenarioResult run_scenario_json(const json& scenario, const ScenarioOptions& options) {
  ScenarioResult result;
  if (scenario.is_array()) {
    for (const auto& sc : scenario) {
      ScenarioResult one;
      run_one(sc, options, one);
      result.pass = result.pass && one.pass;
      result.summary += one.summary;
      result.outputs.insert(result.outputs.end(), one.outputs.begin(), one.outputs.end());
      result.report.push_back(one.report);
    }
    return result;
  }
  run_one(scenario, options, result);
  return result;
}

ScenarioResult run_scenario_file(const std::string& path, const ScenarioOptions& options) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open scenario file: " + path);
  json sc;
  try {
    sc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario parse error: ") + e.what());
  }
  return run_scenario_json(sc, options);
}

namespace {

void check_one(const json& sc) {
  if (!sc.is_object()) throw ParseError("scenario must be a JSON object");
  std::string task = require_str(require(sc, "task"));
  if (task == "certify") {
    make_preset_field(require_str(require(sc, "field")));
    parse_family(require(sc, "family"));
    for (const auto& m : require(sc, "moduli")) parse_q(m, "moduli");
  } else if (task == "orbit") {
    parse_sequence(sc);
    parse_ladder(sc, {1000});
  } else if (task == "khintchine") {
    parse_generator(require(sc, "generator"));
    parse_interval_set(require(sc, "set"));
    parse_family(require(sc, "family"));
    require(sc, "epsilon").get<double>();
    if (sc.contains("field")) make_preset_field(require_str(sc["field"]));
  } else if (task == "popdiff") {
    unsigned long n = require(sc, "N").get<unsigned long>();
    unsigned d = sc.value("d", 1);
    const json& set = require(sc, "set");
    std::string kind = require_str(require(set, "kind"));
    if (kind != "random" && kind != "interval" && kind != "residue" &&
        kind != "quadratic" && kind != "full" && kind != "import")
      throw ValidationError("unknown grid set kind: " + kind);
    GridSet::empty(d, n);  // shape validation only
    parse_family(require(sc, "family"));
    if (require(sc, "epsilon").get<double>() <= 0)
      throw ValidationError("epsilon must be positive");
  } else if (task == "limit-check") {
    parse_generator(require(sc, "generator"));
    long r = require(sc, "r").get<long>();
    long s = require(sc, "s").get<long>();
    if (r == s) throw ValidationError("multipliers must differ");
    parse_coeffs(require(sc, "p"), "p");
    parse_step(require(sc, "f0"));
    parse_step(require(sc, "f1"));
    parse_step(require(sc, "f2"));
    parse_ladder(sc, {1000});
  } else {
    throw ValidationError("unknown task: " + task);
  }
}

}  // namespace

void check_scenario_json(const json& scenario) {
  if (scenario.is_array()) {
    for (const auto& sc : scenario) check_one(sc);
    return;
  }
  check_one(scenario);
}

void check_scenario_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open scenario file: " + path);
  json sc;
  try {
    sc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario parse error: ") + e.what());
  }
  check_scenario_json(sc);
}

}  // namespace nfdyn
