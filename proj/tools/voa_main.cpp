#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "voa/families.hpp"
#include "voa/numkit.hpp"
#include "voa/qstate.hpp"
#include "voa/quadripartite.hpp"
#include "voa/svg.hpp"
#include "voa/tripartite.hpp"
#include "voa/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFail = 1;
constexpr int kUsage = 2;
constexpr int kUnsupported = 3;

struct CliError {
  int code;
  std::string message;
};

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw CliError{kUsage, what + ": expected a number, got '" + text + "'"};
  }
  if (used != text.size())
    throw CliError{kUsage, what + ": trailing characters in '" + text + "'"};
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  if (text.empty() || text[0] == '-')
    throw CliError{kUsage, what + ": expected an unsigned integer"};
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end == text.c_str() || *end != '\0')
    throw CliError{kUsage, what + ": expected an unsigned integer"};
  return static_cast<std::uint64_t>(v);
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("VOA_SEED")) return parse_u64(env, "VOA_SEED");
  return 42;
}

// name[:p1,p2,...] -> catalog lookup
voa::Ket parse_named_state(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string piece;
    while (std::getline(ss, piece, ','))
      params.push_back(parse_double(piece, "--state parameter"));
  }
  return voa::named_state(name, params);
}

voa::State load_state(const std::string& state_spec, const std::string& file) {
  if (state_spec.empty() == file.empty())
    throw CliError{kUsage, "provide exactly one of --state and --file"};
  if (!state_spec.empty()) return parse_named_state(state_spec);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CliError{kUsage, "cannot open '" + file + "'"};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return voa::parse_state(buffer.str());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kUsage, "cannot write '" + path + "'"};
  out << content;
  if (!out) throw CliError{kUsage, "write failed for '" + path + "'"};
}

std::vector<double> linspace(double lo, double hi, int points,
                             const std::string& what) {
  if (points < 2) throw CliError{kUsage, what + ": need at least 2 points"};
  if (!(lo < hi)) throw CliError{kUsage, what + ": range must be increasing"};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = hi;
  return g;
}

std::string report_text(const voa::MeasureReport& rep) {
  std::string out;
  for (const auto& [name, entry] : rep.entries) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.12f (%s)\n", name.c_str(),
                  entry.value, entry.method.c_str());
    out += buf;
  }
  return out;
}

std::string report_csv(const voa::MeasureReport& rep) {
  std::string out = "name,value,method\n";
  for (const auto& [name, entry] : rep.entries)
    out += name + "," + g12(entry.value) + "," + entry.method + "\n";
  return out;
}

std::string report_json(const voa::MeasureReport& rep) {
  nlohmann::ordered_json doc;
  doc["state"] = rep.state;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [name, entry] : rep.entries) {
    nlohmann::ordered_json e;
    e["name"] = name;
    e["value"] = entry.value;
    e["method"] = entry.method;
    if (!entry.metadata.empty()) e["metadata"] = entry.metadata;
    doc["entries"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

std::string table_json(const voa::ScanTable& t) {
  nlohmann::ordered_json doc;
  doc["param_name"] = t.param_name;
  doc["columns"] = t.columns;
  doc["provenance"] = t.provenance;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const voa::ScanRow& r : t.rows) {
    nlohmann::ordered_json row;
    row["param"] = r.param;
    row["values"] = r.values;
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

struct OptimizerFlags {
  int restarts = 16;
  int iters = 400;
  double tol = 1e-7;
  std::size_t m = 0;
};

voa::OptimizerConfig make_config(const OptimizerFlags& f, std::uint64_t seed) {
  voa::OptimizerConfig cfg;
  cfg.restarts = f.restarts;
  cfg.max_iters = f.iters;
  cfg.tolerance = f.tol;
  cfg.m = f.m;
  cfg.seed = seed;
  return cfg;
}

int run_measure(const std::string& state_spec, const std::string& file,
                const std::string& tangle_spec, const std::string& out,
                const std::string& format, const OptimizerFlags& flags,
                std::uint64_t seed) {
  const voa::State st = load_state(state_spec, file);
  voa::MeasureReport rep;
  rep.state = state_spec.empty() ? file : state_spec;

  if (std::holds_alternative<voa::Ket>(st)) {
    const voa::Ket& k = std::get<voa::Ket>(st);
    if (k.all_qubits() && k.arity() == 3) {
      rep.add("voa3", voa::voa3(k), "geometric mean of assisted concurrences");
      for (std::size_t p = 0; p < 3; ++p)
        rep.add("coa" + std::to_string(p), voa::coa(k, p),
                "spin-flip fidelity of the reduced pair");
      rep.add("mpc", voa::mpc(k), "minimum pairwise concurrence");
      rep.add("ggm", voa::ggm(k), "largest schmidt weight over bipartitions");
      rep.add("tangle", voa::three_tangle_pure(k),
              "squared-concurrence residual");
    } else if (k.all_qubits() && k.arity() == 4) {
      const voa::OptimizerConfig cfg = make_config(flags, seed);
      double product = 1.0;
      for (std::size_t p = 0; p < 4; ++p) {
        const voa::AssistBounds b = voa::coa4(k, p, cfg);
        rep.add("coa4_" + std::to_string(p), b.lower,
                "best decomposition found", {{"upper", g12(b.upper)}});
        product *= b.lower;
      }
      rep.add("voa4", std::pow(product, 0.25),
              "geometric mean of decomposition lower bounds");
    } else if (k.arity() == 3 && k.dims[0] == k.dims[1] &&
               k.dims[1] == k.dims[2] && k.dims[0] >= 3 && k.dims[0] <= 8) {
      const std::size_t d = k.dims[0];
      std::vector<double> weights(d, 0.0);
      for (std::size_t i = 0; i < k.amps.size(); ++i) {
        const std::size_t a = i / (d * d), b = (i / d) % d, c = i % d;
        if (a == b && b == c) {
          weights[a] = std::norm(k.amps[i]);
        } else if (std::abs(k.amps[i]) > 1e-9) {
          std::fprintf(stderr,
                       "measure: only diagonal qudit kets are supported\n");
          return kUnsupported;
        }
      }
      rep.add("gcoa", voa::gcoa_diagonal(weights),
              "schmidt-weight geometric mean");
    } else {
      std::fprintf(stderr,
                   "measure: supported inputs are 3- or 4-qubit kets, "
                   "diagonal qudit kets, and 3-qubit density matrices\n");
      return kUnsupported;
    }
  } else {
    const voa::DensityMatrix& dm = std::get<voa::DensityMatrix>(st);
    if (dm.dims != std::vector<std::size_t>{2, 2, 2}) {
      std::fprintf(stderr, "measure: density matrices must be 3-qubit\n");
      return kUnsupported;
    }
    if (tangle_spec.empty())
      throw CliError{kUsage,
                     "density-matrix input needs --tangle <value|ghz-w:p|zero>"};
    double tau = 0.0;
    std::string source = tangle_spec;
    if (tangle_spec == "zero") {
      tau = 0.0;
    } else if (tangle_spec.rfind("ghz-w:", 0) == 0) {
      const double p = parse_double(tangle_spec.substr(6), "--tangle ghz-w");
      tau = voa::ghz_w_tangle(p);
    } else {
      tau = parse_double(tangle_spec, "--tangle");
    }
    rep.add("voa3", voa::voa3_mixed_estimate(dm, tau),
            "pairwise-concurrence estimate", {{"tangle", g12(tau)}});
  }

  std::fputs(report_text(rep).c_str(), stdout);
  if (!out.empty()) {
    if (format == "json")
      write_file(out, report_json(rep));
    else if (format == "csv")
      write_file(out, report_csv(rep));
    else
      throw CliError{kUsage, "measure supports --format csv|json"};
  }
  return kOk;
}

int run_scan(const std::string& family, double J, double B, double alpha_min,
             double alpha_max, int points, bool open_chain,
             const std::string& out, const std::string& format) {
  voa::ScanTable table;
  if (family == "heisenberg") {
    const int n = points > 0 ? points : 721;
    table = voa::scan_heisenberg(J, B, linspace(alpha_min, alpha_max, n, "scan"),
                                 open_chain);
    // mirror check about alpha = pi; rows whose mirror is missing or falls on
    // a flagged degeneracy count as passing
    table.columns.push_back("sym_ok");
    const std::size_t rows = table.rows.size();
    for (std::size_t i = 0; i < rows; ++i) {
      const double target = 2.0 * M_PI - table.rows[i].param;
      double ok = 1.0;
      for (std::size_t j = 0; j < rows; ++j) {
        if (std::abs(table.rows[j].param - target) > 1e-9) continue;
        const bool degenerate =
            table.rows[i].values[2] > 0.5 || table.rows[j].values[2] > 0.5;
        if (!degenerate &&
            std::abs(table.rows[i].values[0] - table.rows[j].values[0]) > 1e-8)
          ok = 0.0;
        break;
      }
      table.rows[i].values.push_back(ok);
    }
  } else if (family == "ghz-w") {
    const int n = points > 0 ? points : 101;
    table = voa::scan_ghz_w(linspace(0.0, 1.0, n, "scan"));
  } else if (family == "gghz") {
    const int n = points > 0 ? points : 201;
    table.param_name = "alpha";
    table.columns = {"voa3", "ggm"};
    table.provenance = "family=gghz";
    for (double a : linspace(0.005, 0.995, n, "scan")) {
      const voa::Ket k = voa::named_state("gghz", {a});
      table.rows.push_back({a, {voa::voa3(k), voa::ggm(k)}});
    }
  } else if (family == "gw") {
    const int n = points > 0 ? points : 201;
    table.param_name = "x1";
    table.columns = {"voa3", "ggm"};
    table.provenance = "family=gw x2=x3";
    for (double t : linspace(0.05, 0.95, n, "scan")) {
      const double rest = std::sqrt(std::max(0.0, (1.0 - t * t) / 2.0));
      const voa::Ket k = voa::named_state("gw", {t, rest, rest});
      table.rows.push_back({t, {voa::voa3(k), voa::ggm(k)}});
    }
  } else if (family == "phi-class") {
    const int side = points > 0 ? points : 20;
    if (side < 2) throw CliError{kUsage, "scan: need at least 2 points"};
    table.param_name = "index";
    table.columns = {"l2", "l4", "voa3_phi1", "voa3_phi2", "sign"};
    table.provenance = "family=phi-class mu=0";
    double index = 0.0;
    for (double l4 : linspace(0.05, 0.95, side, "scan")) {
      for (double l2 : linspace(0.05, 0.95, side, "scan")) {
        if (l2 * l2 + l4 * l4 > 0.98) continue;
        const double l0 = std::sqrt(1.0 - l2 * l2 - l4 * l4);
        const double v1 = voa::voa3(voa::named_state("phi1", {l0, l2, l4}));
        const double v2 =
            voa::voa3(voa::named_state("phi2", {l0, 0.0, l2, l4}));
        const double d = v1 - v2;
        const double sign = d > 1e-12 ? 1.0 : (d < -1e-12 ? -1.0 : 0.0);
        table.rows.push_back({index, {l2, l4, v1, v2, sign}});
        index += 1.0;
      }
    }
  } else {
    throw CliError{kUsage, "scan: unknown family '" + family + "'"};
  }

  std::string text;
  if (format == "csv")
    text = voa::to_csv(table);
  else if (format == "json")
    text = table_json(table);
  else if (format == "svg")
    text = voa::to_svg(table);
  else
    throw CliError{kUsage, "scan supports --format csv|json|svg"};

  if (out.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_file(out, text);
  return kOk;
}

int run_assist4(const std::string& state_spec, const std::string& file,
                const std::string& out, const OptimizerFlags& flags,
                std::uint64_t seed) {
  const voa::State st = load_state(state_spec, file);
  if (!std::holds_alternative<voa::Ket>(st)) {
    std::fprintf(stderr, "assist4: input must be a 4-qubit ket\n");
    return kUnsupported;
  }
  const voa::Ket& k = std::get<voa::Ket>(st);
  if (!k.all_qubits() || k.arity() != 4) {
    std::fprintf(stderr, "assist4: input must be a 4-qubit ket\n");
    return kUnsupported;
  }
  const voa::OptimizerConfig cfg = make_config(flags, seed);

  nlohmann::ordered_json doc;
  doc["state"] = state_spec.empty() ? file : state_spec;
  doc["parties"] = nlohmann::ordered_json::array();
  double product = 1.0;
  for (std::size_t p = 0; p < 4; ++p) {
    voa::DecompositionCertificate cert;
    const voa::AssistBounds b = voa::coa4_certified(k, p, cfg, cert);
    std::printf("coa4_%zu: lower = %.12f  upper = %.12f\n", p, b.lower,
                b.upper);
    product *= b.lower;

    nlohmann::ordered_json entry;
    entry["party"] = p;
    entry["lower"] = b.lower;
    entry["upper"] = b.upper;
    entry["restarts_used"] = cert.restarts_used;
    entry["iterations"] = cert.iterations;
    entry["ensemble"] = nlohmann::ordered_json::array();
    for (const auto& [w, member] : cert.ensemble) {
      nlohmann::ordered_json me;
      me["weight"] = w;
      me["dims"] = member.dims;
      auto amps = nlohmann::ordered_json::array();
      for (const voa::cplx& a : member.amps)
        amps.push_back({a.real(), a.imag()});
      me["amps"] = std::move(amps);
      entry["ensemble"].push_back(std::move(me));
    }
    doc["parties"].push_back(std::move(entry));
  }
  const double volume = std::pow(product, 0.25);
  std::printf("voa4 = %.12f\n", volume);
  doc["voa4"] = volume;
  doc["seed"] = seed;
  if (!out.empty()) write_file(out, doc.dump(2) + "\n");
  return kOk;
}

int run_verify(const std::string& suite, const std::string& measure,
               int trials, int rounds, std::uint64_t seed,
               const std::string& out) {
  const voa::RandomModel model(seed);
  voa::PropertyReport rep;
  if (suite == "monogamy")
    rep = voa::check_monogamy(trials > 0 ? trials : 1000, model);
  else if (suite == "locc")
    rep = voa::check_locc_monotonicity(measure, trials > 0 ? trials : 500,
                                       rounds, model);
  else if (suite == "homogeneity")
    rep = voa::check_homogeneity_and_det_scaling(trials > 0 ? trials : 1000,
                                                 model);
  else if (suite == "estimator")
    rep = voa::check_estimator_consistency(trials > 0 ? trials : 1000, model);
  else
    throw CliError{kUsage, "verify: unknown suite '" + suite + "'"};

  const std::string text = rep.to_json() + "\n";
  std::fputs(text.c_str(), stdout);
  if (!out.empty()) write_file(out, text);
  return rep.pass ? kOk : kPropertyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume-of-assistance measures, scans, and property checks"};
  app.require_subcommand(1);

  std::string m_state, m_file, m_tangle, m_out, m_format = "csv";
  OptimizerFlags m_flags;
  std::uint64_t m_seed = 0;
  CLI::App* measure = app.add_subcommand(
      "measure", "entanglement measure suite for one state");
  measure->add_option("--state", m_state, "catalog state name[:p1,p2,...]");
  measure->add_option("--file", m_file, "state document path");
  measure->add_option("--tangle", m_tangle,
                      "tangle for density-matrix input: value, ghz-w:p, zero");
  measure->add_option("--out", m_out, "also write the report to this path");
  measure->add_option("--format", m_format, "report file format: csv|json");
  measure->add_option("--restarts", m_flags.restarts, "optimizer restarts");
  measure->add_option("--iters", m_flags.iters, "optimizer iterations");
  measure->add_option("--tol", m_flags.tol, "optimizer tolerance");
  measure->add_option("--m", m_flags.m, "optimizer ensemble size (0 = auto)");
  CLI::Option* m_seed_opt =
      measure->add_option("--seed", m_seed, "optimizer seed");

  std::string s_family, s_out, s_format = "csv";
  double s_J = 1.0, s_B = 0.5, s_amin = 0.0, s_amax = 2.0 * M_PI;
  int s_points = 0;
  bool s_open = false;
  CLI::App* scan = app.add_subcommand("scan", "parameter sweep for a family");
  scan->add_option("family", s_family,
                   "heisenberg | ghz-w | gghz | gw | phi-class")
      ->required();
  scan->add_option("--J", s_J, "coupling strength");
  scan->add_option("--B", s_B, "field magnitude (B1 = B2)");
  scan->add_option("--alpha-min", s_amin, "low end of the tilt grid");
  scan->add_option("--alpha-max", s_amax, "high end of the tilt grid");
  scan->add_option("--points", s_points, "grid points (0 = family default)");
  scan->add_flag("--open-chain", s_open, "drop the wrap-around bond");
  scan->add_option("--out", s_out, "output path (stdout if omitted)");
  scan->add_option("--format", s_format, "csv|json|svg");

  std::string a_state, a_file, a_out;
  OptimizerFlags a_flags;
  std::uint64_t a_seed = 0;
  CLI::App* assist4 = app.add_subcommand(
      "assist4", "four-qubit assisted-concurrence bounds and certificates");
  assist4->add_option("--state", a_state, "catalog state name[:p1,p2,...]");
  assist4->add_option("--file", a_file, "state document path");
  assist4->add_option("--out", a_out, "certificate file path");
  assist4->add_option("--restarts", a_flags.restarts, "optimizer restarts");
  assist4->add_option("--iters", a_flags.iters, "optimizer iterations");
  assist4->add_option("--tol", a_flags.tol, "optimizer tolerance");
  assist4->add_option("--m", a_flags.m, "optimizer ensemble size (0 = auto)");
  CLI::Option* a_seed_opt =
      assist4->add_option("--seed", a_seed, "optimizer seed");

  std::string v_suite, v_measure = "voa3", v_out;
  int v_trials = 0, v_rounds = 3;
  std::uint64_t v_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "randomized property suite");
  verify->add_option("suite", v_suite,
                     "monogamy | locc | homogeneity | estimator")
      ->required();
  verify->add_option("--measure", v_measure,
                     "locc measure: voa3|mpc|ggm|coa0..coa2|coa-max");
  verify->add_option("--trials", v_trials, "trials (0 = suite default)");
  verify->add_option("--rounds", v_rounds, "feed-forward rounds");
  verify->add_option("--out", v_out, "also write the report to this path");
  CLI::Option* v_seed_opt =
      verify->add_option("--seed", v_seed, "stream seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*measure)
      return run_measure(m_state, m_file, m_tangle, m_out, m_format, m_flags,
                         resolve_seed(m_seed_opt->count() > 0, m_seed));
    if (*scan)
      return run_scan(s_family, s_J, s_B, s_amin, s_amax, s_points, s_open,
                      s_out, s_format);
    if (*assist4)
      return run_assist4(a_state, a_file, a_out, a_flags,
                         resolve_seed(a_seed_opt->count() > 0, a_seed));
    if (*verify)
      return run_verify(v_suite, v_measure, v_trials, v_rounds,
                        resolve_seed(v_seed_opt->count() > 0, v_seed), v_out);
  } catch (const CliError& e) {
    std::fprintf(stderr, "%s\n", e.message.c_str());
    return e.code;
  } catch (const voa::StructuralError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kUsage;
  } catch (const voa::NumericalError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
