#include "gapscope/census.hpp"
#include "gapscope/families.hpp"
#include "gapscope/json_io.hpp"
#include "gapscope/spectrum.hpp"
#include "gapscope/svg.hpp"
#include "gapscope/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

namespace {

using namespace gapscope;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct VectorFlags {
  std::string input;
  std::string model = "dso";
  std::string v_list, a_list;
  bool exact = false;
};

void add_vector_flags(CLI::App* cmd, VectorFlags& flags) {
  cmd->add_option("--input", flags.input, "vector JSON file, or '-' for stdin");
  cmd->add_option("--model", flags.model, "dso | odjm | jac")
      ->check(CLI::IsMember({"dso", "odjm", "jac"}));
  cmd->add_option("--v", flags.v_list, "comma-separated diagonal entries");
  cmd->add_option("--a", flags.a_list, "comma-separated off-diagonal entries");
  cmd->add_flag("--exact", flags.exact,
                "exact rational backend; entries must be integers or n/d");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

bool looks_rational(const std::string& s) {
  return s.find_first_not_of("0123456789+-/ ") == std::string::npos;
}

AnyVector read_vector(const VectorFlags& flags) {
  if (!flags.input.empty()) {
    json j;
    if (flags.input == "-") {
      std::cin >> j;
    } else {
      std::ifstream in(flags.input);
      if (!in) throw std::invalid_argument("cannot open " + flags.input);
      in >> j;
    }
    return vector_from_json(j);
  }
  const Model model = model_from_string(flags.model);
  if (flags.exact) {
    std::vector<Rational> a, v;
    for (const std::string& s : split_list(flags.a_list)) {
      if (!looks_rational(s))
        throw std::invalid_argument("--exact requires integer or n/d literals, got " + s);
      a.push_back(rational_from_string(s));
    }
    for (const std::string& s : split_list(flags.v_list)) {
      if (!looks_rational(s))
        throw std::invalid_argument("--exact requires integer or n/d literals, got " + s);
      v.push_back(rational_from_string(s));
    }
    return make_vector(model, std::move(a), std::move(v));
  }
  std::vector<double> a, v;
  for (const std::string& s : split_list(flags.a_list)) a.push_back(std::stod(s));
  for (const std::string& s : split_list(flags.v_list)) v.push_back(std::stod(s));
  return make_vector(model, std::move(a), std::move(v));
}

SpectrumReport analyze(const AnyVector& vec, double tol) {
  SpectrumOptions opts;
  opts.closed_gap_tol = tol;
  if (const auto* q = std::get_if<VectorQ>(&vec)) return band_structure(*q, opts);
  return band_structure(std::get<VectorD>(vec), opts);
}

void emit_report(const SpectrumReport& rep, const std::string& format, const std::string& svg_path,
                 std::ostream& os) {
  if (format == "csv") {
    os << report_to_csv(rep);
  } else {
    os << report_to_json(rep).dump(2) << "\n";
  }
  if (!svg_path.empty()) {
    std::ofstream out(svg_path);
    if (!out) throw std::invalid_argument("cannot write " + svg_path);
    out << band_diagram_svg(rep);
  }
}

template <class S>
S parse_param_value(const std::string& text);

template <>
Rational parse_param_value<Rational>(const std::string& text) {
  if (!looks_rational(text))
    throw std::invalid_argument("--exact requires integer or n/d literals, got " + text);
  return rational_from_string(text);
}

template <>
double parse_param_value<double>(const std::string& text) {
  return std::stod(text);
}

template <class S>
std::map<std::string, S> parse_params(const std::string& text) {
  std::map<std::string, S> out;
  if (text.empty()) return out;
  for (const std::string& piece : split_list(text)) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parameters are key=value pairs, got " + piece);
    out[piece.substr(0, eq)] = parse_param_value<S>(piece.substr(eq + 1));
  }
  return out;
}

template <class S>
int family_flow(const std::string& name, const std::string& params, bool do_analyze, double tol,
                const std::string& format, const std::string& svg_path) {
  FamilyInstance<S> inst = make_family<S>(name, parse_params<S>(params));
  json out = family_to_json(inst);
  if (do_analyze) {
    const AnyVector vec(inst.vec);
    const SpectrumReport rep = analyze(vec, tol);
    out["analysis"] = report_to_json(rep);
    bool certified = true;
    for (const Prediction& pr : inst.predicted) {
      bool found = false;
      for (const ClosedGapCertificate& c : rep.closed_gaps)
        found = found || (std::abs(c.energy - pr.energy) <= 1e-7 && c.sign == pr.sign);
      certified = certified && found;
    }
    out["certified"] = certified;
    if (!svg_path.empty()) {
      std::ofstream svg(svg_path);
      if (!svg) throw std::invalid_argument("cannot write " + svg_path);
      svg << band_diagram_svg(rep);
    }
  }
  if (format == "csv" && out.contains("analysis")) {
    SpectrumReport rep = analyze(AnyVector(inst.vec), tol);
    std::cout << report_to_csv(rep);
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"band structure and closed spectral gaps of periodic Jacobi matrices"};
  app.require_subcommand(1);

  // spectrum / closed-gaps
  VectorFlags spectrum_flags, gaps_flags;
  double spectrum_tol = 1e-8, gaps_tol = 1e-8;
  std::string spectrum_format = "json", spectrum_svg;
  auto* cmd_spectrum = app.add_subcommand("spectrum", "bands, gaps, and closed-gap certificates");
  add_vector_flags(cmd_spectrum, spectrum_flags);
  cmd_spectrum->add_option("--tol", spectrum_tol, "closed-gap residual tolerance (float path)");
  cmd_spectrum->add_option("--format", spectrum_format)->check(CLI::IsMember({"json", "csv"}));
  cmd_spectrum->add_option("--svg", spectrum_svg, "write a band diagram to this path");

  auto* cmd_gaps = app.add_subcommand("closed-gaps", "closed-gap certificates only");
  add_vector_flags(cmd_gaps, gaps_flags);
  cmd_gaps->add_option("--tol", gaps_tol, "residual tolerance (float path)");

  // family
  std::string fam_name, fam_params, fam_format = "json", fam_svg;
  bool fam_analyze = false, fam_exact = false;
  double fam_tol = 1e-8;
  auto* cmd_family = app.add_subcommand("family", "instantiate a named closed-gap family");
  cmd_family->add_option("--name", fam_name, "family id (see --list)");
  cmd_family->add_option("--params", fam_params, "comma-separated key=value parameters");
  cmd_family->add_flag("--exact", fam_exact, "build on the exact backend");
  cmd_family->add_flag("--analyze", fam_analyze, "also certify the predicted gaps");
  cmd_family->add_option("--tol", fam_tol);
  cmd_family->add_option("--format", fam_format)->check(CLI::IsMember({"json", "csv"}));
  cmd_family->add_option("--svg", fam_svg);
  bool fam_list = false;
  cmd_family->add_flag("--list", fam_list, "list registered families");

  // double
  VectorFlags dbl_flags;
  int dbl_k = 2;
  bool dbl_analyze = false;
  double dbl_tol = 1e-8;
  auto* cmd_double = app.add_subcommand("double", "period-doubling construction");
  add_vector_flags(cmd_double, dbl_flags);
  cmd_double->add_option("--k", dbl_k, "number of copies of base and shifted base");
  cmd_double->add_flag("--analyze", dbl_analyze);
  cmd_double->add_option("--tol", dbl_tol);

  // census
  std::string cen_model = "dso";
  int cen_p = 4, cen_n = 1000, cen_threads = 0;
  std::uint64_t cen_seed = 0;
  double cen_radius = 3.0, cen_tol = 1e-8;
  bool cen_exact = false;
  auto* cmd_census = app.add_subcommand("census", "randomized closed-gap census");
  cmd_census->add_option("--model", cen_model)->check(CLI::IsMember({"dso", "odjm", "jac"}));
  cmd_census->add_option("--p", cen_p, "period")->required();
  cmd_census->add_option("--n", cen_n, "sample count");
  cmd_census->add_option("--seed", cen_seed);
  cmd_census->add_option("--R", cen_radius, "diagonal sampling box half-width");
  cmd_census->add_option("--tol", cen_tol);
  cmd_census->add_flag("--exact", cen_exact);
  cmd_census->add_option("--threads", cen_threads, "0 = GAPSCOPE_THREADS or hardware");

  // verify
  std::string suite = "paper";
  std::uint64_t verify_seed = 0;
  bool corrupt = false;
  auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
  cmd_verify->add_option("--suite", suite)->check(CLI::IsMember({"paper"}));
  cmd_verify->add_option("--seed", verify_seed);
  cmd_verify->add_flag("--corrupt-table", corrupt)->group(""); // negative control, hidden

  CLI11_PARSE(app, argc, argv);

  if (cmd_spectrum->parsed()) {
    const SpectrumReport rep = analyze(read_vector(spectrum_flags), spectrum_tol);
    emit_report(rep, spectrum_format, spectrum_svg, std::cout);
    return kExitOk;
  }
  if (cmd_gaps->parsed()) {
    const AnyVector vec = read_vector(gaps_flags);
    json arr = json::array();
    if (const auto* q = std::get_if<VectorQ>(&vec)) {
      for (const ClosedGapCertificate& c : closed_gaps_exact(*q))
        arr.push_back(certificate_to_json(c));
    } else {
      for (const ClosedGapCertificate& c : closed_gaps_float(std::get<VectorD>(vec), gaps_tol))
        arr.push_back(certificate_to_json(c));
    }
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
  }
  if (cmd_family->parsed()) {
    if (fam_list) {
      json arr = json::array();
      for (const FamilyInfo& info : family_registry())
        arr.push_back({{"name", info.name},
                       {"params", info.params},
                       {"domain", info.domain},
                       {"summary", info.summary},
                       {"float_only", info.needs_sqrt}});
      std::cout << arr.dump(2) << "\n";
      return kExitOk;
    }
    if (fam_name.empty()) throw std::invalid_argument("--name is required");
    return fam_exact
               ? family_flow<Rational>(fam_name, fam_params, fam_analyze, fam_tol, fam_format,
                                       fam_svg)
               : family_flow<double>(fam_name, fam_params, fam_analyze, fam_tol, fam_format,
                                     fam_svg);
  }
  if (cmd_double->parsed()) {
    const AnyVector base = read_vector(dbl_flags);
    json out;
    if (const auto* q = std::get_if<VectorQ>(&base)) {
      auto inst = double_construct(*q, dbl_k);
      out = family_to_json(inst);
      if (dbl_analyze)
        out["certified_count"] = closed_gaps_exact(inst.vec).size();
    } else {
      auto inst = double_construct(std::get<VectorD>(base), dbl_k);
      out = family_to_json(inst);
      if (dbl_analyze)
        out["certified_count"] = closed_gaps_float(inst.vec, dbl_tol).size();
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  if (cmd_census->parsed()) {
    CensusConfig cfg;
    cfg.model = model_from_string(cen_model);
    cfg.period = cen_p;
    cfg.samples = cen_n;
    cfg.seed = cen_seed;
    cfg.box_radius = cen_radius;
    cfg.backend = cen_exact ? Backend::exact : Backend::floating;
    cfg.tol = cen_tol;
    cfg.threads = cen_threads;
    std::cout << census_to_json(run_census(cfg)).dump(2) << "\n";
    return kExitOk;
  }
  if (cmd_verify->parsed()) {
    verify::Options opts;
    opts.seed = verify_seed;
    opts.corrupt_table = corrupt;
    const auto results = verify::run_acceptance(opts);
    const bool ok = verify::print_acceptance(results, std::cout);
    return ok ? kExitOk : kExitVerifyFailed;
  }
  return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
