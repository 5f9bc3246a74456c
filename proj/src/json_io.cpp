#include "gapscope/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace gapscope {

using nlohmann::json;

namespace {

json scalars_to_json(const std::vector<Rational>& xs) {
  json arr = json::array();
  for (const Rational& x : xs) arr.push_back(to_string(x));
  return arr;
}

json scalars_to_json(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(x);
  return arr;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

nlohmann::json vector_to_json(const VectorQ& c) {
  return {{"model", to_string(c.model)},
          {"a", scalars_to_json(c.a)},
          {"v", scalars_to_json(c.v)},
          {"backend", "exact"}};
}

nlohmann::json vector_to_json(const VectorD& c) {
  return {{"model", to_string(c.model)},
          {"a", scalars_to_json(c.a)},
          {"v", scalars_to_json(c.v)},
          {"backend", "float"}};
}

nlohmann::json vector_to_json(const AnyVector& c) {
  if (const auto* q = std::get_if<VectorQ>(&c)) return vector_to_json(*q);
  return vector_to_json(std::get<VectorD>(c));
}

AnyVector vector_from_json(const nlohmann::json& j) {
  const Model model = model_from_string(j.at("model").get<std::string>());
  const std::string backend = j.value("backend", "float");
  if (backend == "exact") {
    std::vector<Rational> a, v;
    for (const auto& x : j.value("a", json::array()))
      a.push_back(rational_from_string(x.get<std::string>()));
    for (const auto& x : j.value("v", json::array()))
      v.push_back(rational_from_string(x.get<std::string>()));
    return make_vector(model, std::move(a), std::move(v));
  }
  if (backend != "float") throw std::invalid_argument("unknown backend: " + backend);
  std::vector<double> a, v;
  for (const auto& x : j.value("a", json::array())) a.push_back(x.get<double>());
  for (const auto& x : j.value("v", json::array())) v.push_back(x.get<double>());
  return make_vector(model, std::move(a), std::move(v));
}

nlohmann::json certificate_to_json(const ClosedGapCertificate& cg) {
  json c = {{"energy", cg.energy},
            {"sign", cg.sign},
            {"residual", cg.residual},
            {"exact", cg.exact}};
  if (cg.data) {
    json factor = json::array();
    for (const Rational& x : cg.data->factor.coeffs()) factor.push_back(to_string(x));
    c["factor"] = factor;
    c["bracket"] = {to_string(cg.data->bracket.lo), to_string(cg.data->bracket.hi)};
  }
  return c;
}

nlohmann::json report_to_json(const SpectrumReport& rep) {
  json bands = json::array();
  for (const Band& b : rep.bands) bands.push_back({{"lo", b.lo}, {"hi", b.hi}});
  json gaps = json::array();
  for (const GapRecord& g : rep.gaps)
    gaps.push_back({{"lo", g.lo},
                    {"hi", g.hi},
                    {"status", g.status == GapStatus::closed ? "closed" : "open"}});
  json certs = json::array();
  for (const ClosedGapCertificate& cg : rep.closed_gaps) certs.push_back(certificate_to_json(cg));
  return {{"period", rep.period},
          {"bands", bands},
          {"gaps", gaps},
          {"closed_gaps", certs},
          {"g", rep.closed_count}};
}

std::string report_to_csv(const SpectrumReport& rep) {
  std::string out = "record,index,lo,hi,status,energy,sign,residual\n";
  int i = 0;
  for (const Band& b : rep.bands)
    out += "band," + std::to_string(++i) + "," + fmt(b.lo) + "," + fmt(b.hi) + ",,,,\n";
  i = 0;
  for (const GapRecord& g : rep.gaps)
    out += "gap," + std::to_string(++i) + "," + fmt(g.lo) + "," + fmt(g.hi) + "," +
           (g.status == GapStatus::closed ? "closed" : "open") + ",,,\n";
  i = 0;
  for (const ClosedGapCertificate& c : rep.closed_gaps)
    out += "closed_gap," + std::to_string(++i) + ",,,," + fmt(c.energy) + "," +
           std::to_string(c.sign) + "," + fmt(c.residual) + "\n";
  out += "g,,,,,,," + std::to_string(rep.closed_count) + "\n";
  return out;
}

template <class S>
nlohmann::json family_to_json(const FamilyInstance<S>& inst) {
  json pred = json::array();
  for (const Prediction& p : inst.predicted)
    pred.push_back({{"energy", p.energy}, {"sign", p.sign}});
  return {{"vector", vector_to_json(inst.vec)}, {"predicted", pred}};
}

template nlohmann::json family_to_json<Rational>(const FamilyInstance<Rational>&);
template nlohmann::json family_to_json<double>(const FamilyInstance<double>&);

nlohmann::json census_to_json(const CensusResult& res) {
  json hist = json::object();
  for (const auto& [count, freq] : res.histogram) hist[std::to_string(count)] = freq;
  json wit = json::object();
  for (const auto& [count, vecs] : res.witnesses) {
    json arr = json::array();
    for (const AnyVector& v : vecs) arr.push_back(vector_to_json(v));
    wit[std::to_string(count)] = arr;
  }
  return {{"config",
           {{"model", to_string(res.config.model)},
            {"p", res.config.period},
            {"n", res.config.samples},
            {"seed", res.config.seed},
            {"R", res.config.box_radius},
            {"backend", to_string(res.config.backend)},
            {"tol", res.config.tol}}},
          {"histogram", hist},
          {"max_found", res.max_found},
          {"witnesses", wit},
          {"bound_check", {{"pass", res.bound_check_pass}, {"failures", res.bound_failures}}}};
}

} // namespace gapscope
