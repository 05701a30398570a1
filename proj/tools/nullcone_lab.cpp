// nullcone_lab: verification suites and one-off computations.
//
//   nullcone_lab verify <suite> [--p P --n N ...] [--json]
//   nullcone_lab compute <what> (--module SPEC | --gens M --field F) [...]
//
// Exit status: 0 success / all claims pass, 1 some claim failed, 2 error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nullcone/constructions.hpp"
#include "nullcone/report.hpp"
#include "nullcone/suites.hpp"

using namespace nullcone;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s[0] == '-') raise(ErrorCode::BadParameter, key + " must be a nonnegative integer, got '" + s + "'");
  return v;
}

// "Q", "7", "9", "3^2".
Field parse_field(const std::string& s) {
  if (s == "Q" || s == "q" || s == "0") return Field::rationals();
  const auto caret = s.find('^');
  if (caret != std::string::npos) {
    const auto p = to_uint("field", s.substr(0, caret));
    const auto n = to_uint("field", s.substr(caret + 1));
    if (!is_prime(p) || n < 1) raise(ErrorCode::BadParameter, "field " + s + " is not p^n with p prime, n >= 1");
    return ff_make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n));
  }
  const auto q = to_uint("field", s);
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    if (!is_prime(p)) break;
    std::uint64_t r = q;
    std::uint32_t n = 0;
    while (r % p == 0) {
      r /= p;
      ++n;
    }
    if (r != 1) break;
    return ff_make(static_cast<std::uint32_t>(p), n);
  }
  raise(ErrorCode::BadParameter, "field " + s + " is not a prime power");
}

struct ModuleSpec {
  std::string name;
  Json parameters = Json::object();
  GroupPtr group;
  std::optional<std::vector<Polynomial>> generators;  // for --generators auto
  std::optional<std::vector<Scalar>> default_point;
};

ModuleSpec build_module(const std::string& spec) {
  ModuleSpec m;
  const auto colon = spec.find(':');
  m.name = spec.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& part : split(spec.substr(colon + 1), ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) raise(ErrorCode::BadParameter, "module parameter '" + part + "' is not key=value");
      kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key, std::optional<std::uint64_t> def = std::nullopt) -> std::uint64_t {
    auto it = kv.find(key);
    std::uint64_t v = 0;
    if (it == kv.end()) {
      if (!def) raise(ErrorCode::BadParameter, "module " + m.name + " needs " + key);
      v = *def;
    } else {
      v = to_uint(key, it->second);
      kv.erase(it);
    }
    m.parameters[key] = v;
    return v;
  };
  auto u32 = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };

  if (m.name == "gn") {
    const auto p = u32(take("p")), n = u32(take("n", 1));
    m.group = gn_module(p, n).group;
  } else if (m.name == "va") {
    const auto p = u32(take("p")), n = u32(take("n", 1)), lvl = u32(take("m", n + 1));
    auto va = va_module(p, n, lvl);
    m.group = va.group;
    m.generators = va.candidates;
  } else if (m.name == "gl2") {
    const auto p = u32(take("p")), n = u32(take("n", 1));
    auto gl = gl2_test_module(p, n);
    m.group = gl.group;
    m.default_point = gl.identity;
  } else if (m.name == "torus") {
    const std::uint64_t q = take("q");
    const std::uint32_t mm = u32(take("m"));
    long long r = 1;
    if (auto it = kv.find("r"); it != kv.end()) {
      try {
        std::size_t used = 0;
        r = std::stoll(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("r");
      } catch (...) {
        raise(ErrorCode::BadParameter, "r must be an integer");
      }
      kv.erase(it);
    }
    m.parameters["r"] = r;
    auto t = torus_module(q, r, mm);
    m.group = t.group;
    m.generators = std::vector<Polynomial>{t.invariant};
    m.default_point = t.point;
  } else if (m.name == "regular") {
    const std::uint32_t p = u32(take("p"));
    const std::uint64_t order = take("order");
    if (!is_prime(p)) raise(ErrorCode::BadParameter, "p must be prime");
    if (order < 1 || order > 64) raise(ErrorCode::BadParameter, "order must lie in [1, 64]");
    const Field f = ff_make(p);
    Matrix c(f, order, order);
    for (std::size_t i = 0; i < order; ++i) c((i + 1) % order, i) = Scalar::one(f);
    m.group = group_closure({c});
  } else {
    raise(ErrorCode::BadParameter, "unknown module '" + m.name + "' (gn, va, gl2, torus, regular)");
  }
  if (!kv.empty()) raise(ErrorCode::BadParameter, "module " + m.name + " takes no parameter '" + kv.begin()->first + "'");
  return m;
}

ModuleSpec inline_module(const std::vector<std::string>& gens, const std::string& field) {
  if (field.empty()) raise(ErrorCode::BadParameter, "--gens needs --field");
  ModuleSpec m;
  m.name = "inline";
  const Field f = parse_field(field);
  std::vector<Matrix> mats;
  Json g = Json::array();
  for (const auto& s : gens) {
    mats.push_back(Matrix::parse(f, s));
    g.push_back(s);
  }
  m.parameters["field"] = f.name();
  m.parameters["gens"] = g;
  m.group = group_closure(mats);
  return m;
}

std::vector<Scalar> parse_point(const std::string& s, const Field& f) {
  std::vector<Scalar> v;
  for (const auto& e : split(s, ',')) v.push_back(Scalar::parse(f, e));
  return v;
}

struct ComputeOptions {
  std::string what;
  std::string module;
  std::vector<std::string> gens;
  std::string field;
  std::string point;
  std::string pointfield;
  std::string generators;
  std::string method = "auto";
  std::optional<std::uint32_t> dmax;
  std::size_t cap = kDefaultPointCap;
  bool json = false;
  bool csv = false;
};

int run_compute(const ComputeOptions& o) {
  if (o.module.empty() == o.gens.empty()) raise(ErrorCode::BadParameter, "give exactly one of --module and --gens");
  ModuleSpec m = o.module.empty() ? inline_module(o.gens, o.field) : build_module(o.module);
  const GroupPtr& g = m.group;
  const Field& K = g->field();
  const Field L = o.pointfield.empty() ? K : parse_field(o.pointfield);

  std::optional<std::vector<Polynomial>> gens;
  if (o.generators == "auto") {
    if (!m.generators) raise(ErrorCode::BadParameter, "module " + m.name + " has no built-in generator list");
    gens = m.generators;
  } else if (!o.generators.empty()) {
    gens.emplace();
    for (const auto& s : split(o.generators, ';')) gens->push_back(Polynomial::parse(K, s, g->dimension()));
  }

  auto need_dmax = [&]() -> std::uint32_t {
    if (!o.dmax) raise(ErrorCode::BadParameter, "compute " + o.what + " needs --dmax");
    return *o.dmax;
  };
  auto point = [&]() -> std::vector<Scalar> {
    if (o.point.empty() || o.point == "default") {
      if (!m.default_point) raise(ErrorCode::BadParameter, "compute " + o.what + " needs --point");
      return *m.default_point;
    }
    return parse_point(o.point, L);
  };

  Json result;
  std::string text;
  if (o.what == "epsilon") {
    EpsilonMethod meth = EpsilonMethod::automatic;
    if (o.method == "orbit-sums") meth = EpsilonMethod::orbit_sums;
    else if (o.method == "linear-algebra") meth = EpsilonMethod::linear_algebra;
    else if (o.method != "auto") raise(ErrorCode::BadParameter, "method must be auto, orbit-sums or linear-algebra");
    const auto r = epsilon(g, point(), need_dmax(), meth);
    result = to_json(r);
    text = to_text(r);
  } else if (o.what == "delta" || o.what == "sigma") {
    PointSearchOptions opts;
    opts.point_cap = o.cap;
    opts.generators = gens;
    const auto r = o.what == "delta" ? delta_bounded(g, need_dmax(), L, opts) : sigma_bounded(g, need_dmax(), L, opts);
    if (o.csv) {
      std::cout << to_csv(r);
      return 0;
    }
    result = to_json(r);
    text = to_text(r);
  } else if (o.what == "invariant-space") {
    const auto spaces = invariant_spaces(g, need_dmax());
    result = to_json(spaces);
    text = to_text(spaces);
  } else if (o.what == "nullcone") {
    std::uint32_t d = 0;
    if (o.dmax) d = *o.dmax;
    else if (gens) {
      for (const auto& f : *gens) d = std::max<std::uint32_t>(d, static_cast<std::uint32_t>(std::max(f.degree(), 0)));
    } else {
      need_dmax();
    }
    const auto s = nullcone_status(point(), g, d, gens);
    result = to_json(s);
    text = to_text(s);
  } else {
    raise(ErrorCode::BadParameter, "compute takes epsilon, delta, sigma, invariant-space or nullcone");
  }
  if (o.csv) raise(ErrorCode::BadParameter, "--csv applies to delta and sigma");

  if (o.json) {
    Json out;
    out["tool"] = "nullcone_lab";
    out["version"] = tool_version();
    out["command"] = "compute " + o.what;
    out["module"] = Json{{"name", m.name}, {"parameters", m.parameters}};
    out["result"] = result;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "module " << m.name << " " << m.parameters.dump() << ", |G| = " << g->order() << "\n" << text;
  }
  return 0;
}

int fail(const Error& e) {
  std::cout.flush();
  std::cerr << "error: " << e.what() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-theory verification suites and computations"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  std::string suite;
  bool vjson = false;
  std::map<std::string, std::string> vopts;
  verify->add_option("suite", suite, "binomial, regular-rep, epsilon-free, gl2-delta, va-ring, torus-sigma, ga2-example, "
                                     "normal-subgroup, nagata-miyata, all")
      ->required();
  for (const char* key : {"p", "n", "nmax", "m", "q", "r", "level", "budget"}) {
    verify->add_option_function<std::string>(std::string("--") + key, [&vopts, key](const std::string& v) { vopts[key] = v; });
  }
  verify->add_flag("--json", vjson, "print the report as JSON");

  auto* compute = app.add_subcommand("compute", "one computation on a module");
  ComputeOptions co;
  compute->add_option("what", co.what, "epsilon, delta, sigma, invariant-space, nullcone")->required();
  compute->add_option("--module", co.module, "name:k=v,... with name in gn, va, gl2, torus, regular");
  compute->add_option("--gens", co.gens, "generator matrix \"a,b;c,d\" (repeatable)");
  compute->add_option("--field", co.field, "field of --gens: p, p^n, q or Q");
  compute->add_option("--point", co.point, "comma-separated coordinates");
  compute->add_option("--pointfield", co.pointfield, "field of the points (default: the group's field)");
  compute->add_option("--dmax,--degree", co.dmax, "degree bound");
  compute->add_option("--generators", co.generators, "auto, or declared generators separated by ';'");
  compute->add_option("--method", co.method, "epsilon method: auto, orbit-sums, linear-algebra");
  compute->add_option("--cap", co.cap, "point enumeration cap");
  compute->add_flag("--json", co.json, "print JSON");
  compute->add_flag("--csv", co.csv, "epsilon histogram as CSV (delta, sigma)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      const auto rep = run_suite(suite, vopts);
      if (vjson) std::cout << rep.to_json().dump(2) << "\n";
      else std::cout << rep.table();
      std::cout.flush();
      const int code = rep.pass() ? 0 : 1;
      // A budget overrun leaves a worker computing; do not wait for it.
      if (rep.partial) std::quick_exit(code);
      return code;
    }
    return run_compute(co);
  } catch (const Error& e) {
    return fail(e);
  }
}
