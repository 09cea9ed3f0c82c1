#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "garnier/error.hpp"

namespace garnier::report {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix2& m) {
  return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}), json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

json to_json(const Params& p) {
  return {{"alpha0", to_json(p.alpha0)}, {"alpha1", to_json(p.alpha1)}, {"alpha2", to_json(p.alpha2)},
          {"alphaInf", to_json(p.alphaInf)}, {"nu", to_json(p.nu)},        {"eta", to_json(p.eta)}};
}

json to_json(const BiSeries& s) {
  // [[j, k, [re, im]], ...] by total degree
  json out = json::array();
  for (int d = 0; d <= s.order(); ++d)
    for (int k = 0; k <= d; ++k) out.push_back(json::array({d - k, k, to_json(s.coeff(d - k, k))}));
  return out;
}

json to_json(const SolutionExpansion& e) {
  const auto z = e.depoled();
  json series = json::object();
  const char* names[] = {"Q1", "Q2", "P1", "P2"};
  for (int v = 0; v < 4; ++v) series[names[v]] = to_json(z[v]);
  std::string profile = "q1 = Q1, q2 = Q2, p1 = P1, p2 = P2";
  if (e.id.depole_t1 && e.id.depole_s2) profile = "q1 = Q1/t1, q2 = s2 Q2, p1 = t1 P1, p2 = P2/s2";
  else if (e.id.depole_t1) profile = "q1 = Q1/t1, q2 = Q2, p1 = t1 P1, p2 = P2";
  else if (e.id.depole_s2) profile = "q1 = Q1, q2 = s2 Q2, p1 = P1, p2 = P2/s2";
  return {{"solution", e.id.index}, {"order", e.order}, {"params", to_json(e.params)},
          {"profile", profile},     {"series", series}};
}

json to_json(const ResidualReport& r) {
  return {{"absolute", r.absolute}, {"scale", r.scale}, {"relative", r.relative}, {"through_degree", r.through}};
}

json to_json(const MonodromyTuple& t) {
  json c = json::object();
  for (const auto& [name, m] : t.connections) c[name] = to_json(m);
  return {{"solution", t.solution}, {"M0", to_json(t.M0)},      {"Mt2", to_json(t.Mt2)},   {"M1", to_json(t.M1)},
          {"Minf", to_json(t.Minf)}, {"S1", to_json(t.S1)},      {"S2", to_json(t.S2)},     {"expT1", to_json(t.expT1)},
          {"connections", c}};
}

json to_json(const IdentityReport& r) {
  json c = json::object();
  for (const auto& [name, v] : r.commutators) c[name] = v;
  return {{"cyclic_residual", r.cyclic},
          {"commutators", c},
          {"stokes_trivial", r.stokes_trivial},
          {"stokes_deviation", r.stokes_deviation}};
}

json to_json(const CompareReport& r) {
  json items = json::object();
  for (const auto& [name, v] : r.items) items[name] = v;
  return {{"max_deviation", r.max_deviation}, {"worst", r.worst}, {"items", items}};
}

json to_json(const LocalExponents& e) {
  json out = {{"irregular", e.irregular}, {"rho", json::array({to_json(e.rho[0]), to_json(e.rho[1])})}};
  if (e.irregular) {
    out["rank"] = e.rank;
    out["tau"] = json::array({to_json(e.tau[0]), to_json(e.tau[1])});
  }
  return out;
}

namespace {

json poles_json(const Rational& r) {
  json poles = json::array();
  for (const auto& t : r.poles)
    poles.push_back({{"at", to_json(t.at)}, {"order", t.order}, {"coeff", to_json(t.coeff)}});
  return {{"poles", poles}, {"constant", to_json(r.constant)}};
}

}  // namespace

json to_json(const RationalODE& ode) {
  json constants = json::object();
  for (const auto& [k, v] : ode.constants) constants[k] = to_json(v);
  json apparent = json::array();
  for (cplx a : ode.apparent) apparent.push_back(to_json(a));
  json scheme = json::array();
  for (const auto& s : riemann_scheme(ode)) {
    json e = to_json(s.exps);
    e["point"] = s.at_infinity ? json("infinity") : to_json(s.point);
    scheme.push_back(e);
  }
  return {{"name", ode.name},     {"variable", ode.variable}, {"substitution", ode.substitution},
          {"P", poles_json(ode.P())}, {"Q", poles_json(ode.Q())}, {"constants", constants},
          {"apparent", apparent}, {"riemann_scheme", scheme}};
}

cplx complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::InvalidArgument, "expected a number or [re, im], got " + j.dump());
}

Params params_from(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "params must be a JSON object");
  for (const char* key : {"alpha0", "alpha1", "alpha2", "nu", "eta"})
    if (!j.contains(key)) throw Error(ErrorKind::InvalidArgument, std::string("params missing ") + key);
  const Params p = Params::with_fuchs(complex_from(j["alpha0"]), complex_from(j["alpha1"]), complex_from(j["alpha2"]),
                                      complex_from(j["nu"]), complex_from(j["eta"]));
  if (j.contains("alphaInf") && std::abs(complex_from(j["alphaInf"]) - p.alphaInf) > 1e-12)
    throw Error(ErrorKind::NonGenericParams, "alphaInf violates the Fuchs relation");
  return p;
}

Params params_from_text(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read params file " + text);
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("params are not valid JSON: ") + e.what());
  }
  return params_from(j);
}

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad(indent * (depth + 1), ' '), close(indent * depth, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool firstItem = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!firstItem) os << "," << nl;
        firstItem = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << close << "}";
      return;
    }
    case json::value_t::array: {
      // short numeric rows stay on one line
      bool flat = j.size() <= 3;
      for (const auto& v : j)
        if (!v.is_primitive()) flat = false;
      if (j.empty() || flat || indent == 0) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << (indent > 0 ? ", " : ",");
          write(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[" << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << "," << nl;
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << nl << close << "]";
      return;
    }
    case json::value_t::number_float: os << number(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

}  // namespace garnier::report
