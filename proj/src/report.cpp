#include "nullcone/report.hpp"

#include <sstream>

namespace nullcone {

namespace {

std::string point_text(const std::vector<Scalar>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

Json points_json(const std::vector<std::vector<Scalar>>& pts) {
  Json a = Json::array();
  for (std::size_t i = 0; i < pts.size() && i < kListedJsonPoints; ++i) a.push_back(point_json(pts[i]));
  return a;
}

}  // namespace

Json field_json(const Field& f) {
  Json j;
  j["name"] = f.name();
  j["p"] = f.characteristic();
  j["n"] = f.is_rational() ? 1 : f.degree();
  j["modulus"] = f.is_rational() ? Json::array() : Json(f.modulus());
  return j;
}

Json point_json(const std::vector<Scalar>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json to_json(const SeparationReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  if (r.value) j["value"] = *r.value;
  else j["value"] = Json{{"undetermined_above", r.degree_bound}};
  j["witness"] = r.witness ? Json(r.witness->str()) : Json(nullptr);
  j["witness_degree"] = r.witness ? Json(r.witness->degree()) : Json(nullptr);
  j["points"] = points_json(r.points);
  j["degree_bound"] = r.degree_bound;
  j["field"] = field_json(r.field);
  j["method"] = r.method;
  if (r.kind != ReportKind::epsilon) {
    j["points_total"] = r.points_total;
    j["points_in_nullcone"] = r.points_in_nullcone;
    j["points_attaining"] = r.points_attaining;
    j["undetermined_count"] = r.undetermined.size();
    j["undetermined"] = points_json(r.undetermined);
    Json counts = Json::array();
    for (const auto& [d, c] : r.epsilon_counts) counts.push_back(Json{{"epsilon", d}, {"points", c}});
    j["epsilon_counts"] = counts;
    j["generators_declared"] = r.generators_declared;
    j["declared_in_separated"] = r.declared_in_separated;
    j["certified"] = r.certified;
  }
  return j;
}

Json to_json(const NullconeStatus& s) {
  Json j;
  j["kind"] = "nullcone";
  j["point"] = point_json(s.point);
  j["verdict"] = to_string(s.verdict);
  j["certificate"] = s.certificate ? Json(s.certificate->str()) : Json(nullptr);
  j["certificate_degree"] = s.certificate ? Json(s.certificate->degree()) : Json(nullptr);
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(g.str());
  j["generators"] = gens;
  j["degree_bound"] = s.degree_bound;
  return j;
}

Json to_json(const std::vector<InvariantSpace>& spaces) {
  Json j;
  j["kind"] = "invariant-space";
  if (!spaces.empty()) {
    j["field"] = field_json(spaces[0].group->field());
    j["group_order"] = spaces[0].group->order();
    j["nvars"] = spaces[0].group->dimension();
  }
  Json degs = Json::array();
  for (const auto& s : spaces) {
    Json b = Json::array();
    for (const auto& f : s.basis) b.push_back(f.str());
    degs.push_back(Json{{"degree", s.degree}, {"dimension", s.dimension()}, {"basis", b}});
  }
  j["degrees"] = degs;
  return j;
}

Json to_json(const GenerationCertificate& c) {
  Json j;
  Json cands = Json::array();
  for (const auto& f : c.candidates) cands.push_back(f.str());
  j["candidates"] = cands;
  j["degree_bound"] = c.degree_bound;
  Json degs = Json::array();
  for (const auto& d : c.degrees) {
    degs.push_back(Json{{"degree", d.degree},
                        {"subalgebra_dim", d.subalgebra_dim},
                        {"invariant_dim", d.invariant_dim},
                        {"contained", d.contained},
                        {"verdict", d.equal() ? "equal" : "strict"}});
  }
  j["degrees"] = degs;
  j["parametric_invariant"] = c.parametric_invariant;
  j["sandwich"] = c.sandwich();
  return j;
}

std::string to_csv(const SeparationReport& r) {
  std::ostringstream os;
  os << "epsilon,points\n";
  for (const auto& [d, c] : r.epsilon_counts) os << d << "," << c << "\n";
  os << "in_nullcone," << r.points_in_nullcone << "\n";
  os << "total," << r.points_total << "\n";
  return os.str();
}

std::string to_text(const SeparationReport& r) {
  std::ostringstream os;
  os << to_string(r.kind) << " = ";
  if (r.value) os << *r.value;
  else os << "undetermined up to degree " << r.degree_bound;
  os << "\n";
  if (r.witness) os << "witness: " << r.witness->str() << "\n";
  if (!r.points.empty()) os << "point: " << point_text(r.points[0]) << "\n";
  os << "field: " << r.field.name() << "\nmethod: " << r.method << "\n";
  if (r.kind != ReportKind::epsilon) {
    os << "points: " << r.points_total << " total, " << r.points_in_nullcone << " in nullcone, " << r.points_attaining
       << " attaining, " << r.undetermined.size() << " undetermined\n";
    os << "certified: " << (r.certified ? "yes" : "no") << "\n";
    if (r.declared_in_separated) os << "declared-In points separated by this group: " << r.declared_in_separated << "\n";
  }
  return os.str();
}

std::string to_text(const NullconeStatus& s) {
  std::ostringstream os;
  os << "point " << point_text(s.point) << ": " << to_string(s.verdict);
  if (s.verdict == NullconeVerdict::unknown) os << " " << s.degree_bound;
  os << "\n";
  if (s.certificate) os << "certificate: " << s.certificate->str() << " (degree " << s.certificate->degree() << ")\n";
  return os.str();
}

std::string to_text(const std::vector<InvariantSpace>& spaces) {
  std::ostringstream os;
  for (const auto& s : spaces) {
    os << "degree " << s.degree << ": dimension " << s.dimension() << "\n";
    for (const auto& f : s.basis) os << "  " << f.str() << "\n";
  }
  return os.str();
}

}  // namespace nullcone
