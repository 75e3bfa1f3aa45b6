// helion: solve helium-like two-electron S states in a correlated Hylleraas
// basis and quantify their spatial entanglement through the Schmidt-Slater
// decomposition of the one-particle reduced density matrix.
//
// Subcommands: solve, entropy, scan, figure. Exit codes: 0 success, 2 config
// error, 3 solver failure, 4 pipeline failure.

#include "helion/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitPipeline = 4;

struct RunConfig {
  std::string state_label = "1s1s";
  std::string spin_str = "singlet";
  int omega = -1;  // -1 = default per spin (15 singlet / 16 triplet)
  int l_max = 40;
  int la_max = 50;
  unsigned digits = 0;  // 0 = auto
  double alpha = 0, beta = 0;  // parsed as text via alpha_str/beta_str below
  std::string alpha_str, beta_str;
  std::string output;
  std::string format = "csv";
};

int label_to_n(const std::string& label) {
  // 1sns with 1 <= n <= 9
  if (label.size() == 4 && label[0] == '1' && label[1] == 's' && label[3] == 's' &&
      label[2] >= '1' && label[2] <= '9')
    return label[2] - '0';
  throw CLI::ValidationError("--state", "state label must be 1sns with 1 <= n <= 9");
}

helion::Spin parse_spin(const std::string& s) {
  if (s == "singlet") return helion::Spin::singlet;
  if (s == "triplet") return helion::Spin::triplet;
  throw CLI::ValidationError("--spin", "spin must be singlet or triplet");
}

struct StatePlan {
  int n;
  helion::Spin spin;
  int root_index;
  int omega;
};

StatePlan make_plan(const RunConfig& rc) {
  StatePlan p;
  p.n = label_to_n(rc.state_label);
  p.spin = parse_spin(rc.spin_str);
  if (p.spin == helion::Spin::triplet && p.n < 2)
    throw CLI::ValidationError("--state", "triplet requires n >= 2 (1s1s has no triplet)");
  p.root_index = (p.spin == helion::Spin::singlet) ? p.n : p.n - 1;
  p.omega = rc.omega >= 0 ? rc.omega : (p.spin == helion::Spin::singlet ? 15 : 16);
  return p;
}

unsigned effective_digits(const RunConfig& rc, int omega) {
  if (rc.digits) return rc.digits;
  if (const char* env = std::getenv("HELION_PRECISION_DIGITS")) {
    int d = std::atoi(env);
    if (d >= 15) return static_cast<unsigned>(d);
  }
  return helion::recommended_digits(omega);
}

std::string fmt(const helion::Real& v) { return v.str(15, std::ios_base::scientific); }

char separator(const RunConfig& rc) { return rc.format == "tsv" ? '\t' : ','; }

void write_metadata(std::ostream& os, const RunConfig& rc, const std::string& command) {
  os << "# helion 1.0 " << command << "\n";
  os << "# state=" << rc.state_label << " spin=" << rc.spin_str << " omega=" << rc.omega
     << " l_max=" << rc.l_max << " la_max=" << rc.la_max << " digits=" << rc.digits << "\n";
}

helion::StateSolution solve_plan(const StatePlan& plan, const RunConfig& rc,
                                 const helion::PrecisionConfig& cfg) {
  const helion::Real Z = 2;
  if (!rc.alpha_str.empty()) {
    auto basis = helion::BasisSpec::make(Z, plan.omega, plan.spin, helion::Real(rc.alpha_str),
                                         helion::Real(rc.beta_str));
    return helion::solve_state(basis, plan.root_index, cfg);
  }
  auto tmpl = helion::BasisSpec::make(Z, plan.omega, plan.spin, Z, Z);
  return helion::optimize_exponents(tmpl, plan.root_index, cfg, plan.n).solution;
}

helion::PipelineSettings settings_for(const RunConfig& rc, int n_target) {
  helion::PipelineSettings s;
  s.policy.l_max = rc.l_max;
  s.la_max = rc.la_max;
  s.n_target = n_target;
  return s;
}

int target_n(const helion::StateSolution& st) {
  return st.basis.spin == helion::Spin::singlet ? st.root_index : st.root_index + 1;
}

int cmd_solve(RunConfig rc) {
  auto plan = make_plan(rc);
  rc.omega = plan.omega;
  const unsigned digits = effective_digits(rc, plan.omega);
  helion::PrecisionScope scope(digits);
  helion::PrecisionConfig cfg;
  cfg.working_digits = digits;

  try {
    auto st = helion::normalize(solve_plan(plan, rc, cfg));
    std::string path =
        rc.output.empty() ? rc.state_label + "_" + rc.spin_str + ".state" : rc.output;
    helion::write_state_file(path, st);
    std::cout << "state " << rc.state_label << " " << rc.spin_str << " omega=" << plan.omega
              << " energy=" << fmt(st.energy) << " -> " << path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}

int cmd_entropy(RunConfig rc, const std::string& input) {
  try {
    unsigned digits = rc.digits ? rc.digits : 0;
    auto st = helion::read_state_file(input);
    if (!digits) digits = effective_digits(rc, st.basis.omega);
    helion::PrecisionScope scope(digits);
    helion::PrecisionConfig cfg;
    cfg.working_digits = digits;
    st = helion::read_state_file(input);  // re-read at the working precision
    rc.omega = st.basis.omega;

    const int n = target_n(st);
    const bool ground = (st.basis.spin == helion::Spin::singlet && n == 1);
    auto rep = helion::analyze_state(st, settings_for(rc, n), cfg);
    helion::Real ref_vn = ground ? 0 : 1;
    helion::Real ref_lin = ground ? helion::Real(0) : helion::Real(1) / 2;

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!rc.output.empty()) {
      file.open(rc.output);
      if (!file) throw helion::ArtifactError("cannot open report output: " + rc.output);
      os = &file;
    }
    write_metadata(*os, rc, "entropy");
    *os << "energy" << separator(rc) << fmt(st.energy) << "\n";
    *os << "trace" << separator(rc) << fmt(rep.trace) << "\n";
    *os << "S_L" << separator(rc) << fmt(rep.s_linear) << "\n";
    *os << "S_vN" << separator(rc) << fmt(rep.s_von_neumann) << "\n";
    *os << "eps_linear" << separator(rc)
        << fmt(helion::interaction_distance(rep.s_linear, ref_lin)) << "\n";
    *os << "eps_von_neumann" << separator(rc)
        << fmt(helion::interaction_distance(rep.s_von_neumann, ref_vn)) << "\n";
    *os << "l" << separator(rc) << "partial_purity" << separator(rc) << "partial_S_vN\n";
    for (const auto& row : rep.per_channel)
      *os << row.l << separator(rc) << fmt(row.partial_linear) << separator(rc)
          << fmt(row.partial_von_neumann) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pipeline failure: " << e.what() << "\n";
    return kExitPipeline;
  }
}

int cmd_scan(RunConfig rc, const std::string& axis, const std::vector<int>& values,
             const std::string& input) {
  try {
    for (size_t i = 1; i < values.size(); ++i)
      if (values[i] <= values[i - 1])
        throw CLI::ValidationError("--values", "scan values must be ascending");
    if (values.empty()) throw CLI::ValidationError("--values", "scan needs values");

    auto plan = make_plan(rc);
    rc.omega = plan.omega;
    const unsigned digits = effective_digits(rc, plan.omega);
    helion::PrecisionScope scope(digits);
    helion::PrecisionConfig cfg;
    cfg.working_digits = digits;
    auto settings = settings_for(rc, plan.n);

    std::vector<helion::ScanRow> rows;
    if (axis == "omega") {
      helion::Real alpha, beta;
      if (!rc.alpha_str.empty()) {
        alpha = helion::Real(rc.alpha_str);
        beta = helion::Real(rc.beta_str);
      } else {
        auto tmpl = helion::BasisSpec::make(helion::Real(2), values.back(), plan.spin,
                                            helion::Real(2), helion::Real(2));
        auto opt = helion::optimize_exponents(tmpl, plan.root_index, cfg, plan.n);
        alpha = opt.alpha;
        beta = opt.beta;
      }
      rows = helion::scan_omega(helion::Real(2), plan.spin, plan.root_index, alpha, beta,
                                settings, cfg, values);
    } else {
      helion::StateSolution st = input.empty()
                                     ? helion::normalize(solve_plan(plan, rc, cfg))
                                     : helion::read_state_file(input);
      if (axis == "l_max")
        rows = helion::scan_l_max(st, settings, cfg, values);
      else if (axis == "la_max")
        rows = helion::scan_la_max(st, settings, cfg, values);
      else
        throw CLI::ValidationError("--axis", "axis must be omega, l_max or la_max");
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!rc.output.empty()) {
      file.open(rc.output);
      if (!file) throw helion::ArtifactError("cannot open scan output: " + rc.output);
      os = &file;
    }
    const char sep = separator(rc);
    write_metadata(*os, rc, "scan axis=" + axis);
    *os << axis << sep << "N_t" << sep << "energy" << sep << "eigenvalue_sum" << sep << "S_L"
        << sep << "S_vN\n";
    for (const auto& r : rows) {
      *os << r.axis_value << sep;
      if (r.basis_size) *os << r.basis_size;
      else *os << "-";
      *os << sep;
      if (r.energy) *os << fmt(*r.energy);
      else *os << "-";
      *os << sep << fmt(r.trace) << sep << fmt(r.s_linear) << sep << fmt(r.s_von_neumann)
          << "\n";
    }
    return 0;
  } catch (const CLI::Error&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "pipeline failure: " << e.what() << "\n";
    return kExitPipeline;
  }
}

int cmd_figure(RunConfig rc, const std::vector<std::string>& artifacts) {
  try {
    if (artifacts.empty()) throw CLI::ValidationError("--artifacts", "empty state list");
    std::vector<std::string> missing;
    for (const auto& p : artifacts)
      if (!std::filesystem::exists(p)) missing.push_back(p);
    if (!missing.empty()) {
      std::cerr << "pipeline failure: missing state artifacts:";
      for (const auto& m : missing) std::cerr << " " << m;
      std::cerr << "\n";
      return kExitPipeline;
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!rc.output.empty()) {
      file.open(rc.output);
      if (!file) throw helion::ArtifactError("cannot open figure output: " + rc.output);
      os = &file;
    }
    const char sep = separator(rc);
    write_metadata(*os, rc, "figure");
    *os << "n" << sep << "spin" << sep << "eps_linear" << sep << "eps_von_neumann" << sep
        << "log10_n" << sep << "log10_eps_von_neumann\n";

    std::map<helion::Spin, helion::Real> prev_eps;
    for (const auto& path : artifacts) {
      auto st = helion::read_state_file(path);
      const unsigned digits = rc.digits ? rc.digits : helion::recommended_digits(st.basis.omega);
      helion::PrecisionScope scope(digits);
      helion::PrecisionConfig cfg;
      cfg.working_digits = digits;
      auto st2 = helion::read_state_file(path);
      const int n = target_n(st2);
      const bool ground = (st2.basis.spin == helion::Spin::singlet && n == 1);
      auto rep = helion::analyze_state(st2, settings_for(rc, n), cfg);
      helion::Real eps_l = helion::interaction_distance(
          rep.s_linear, ground ? helion::Real(0) : helion::Real(1) / 2);
      helion::Real eps_v =
          helion::interaction_distance(rep.s_von_neumann, ground ? helion::Real(0) : helion::Real(1));
      *os << n << sep << spin_name(st2.basis.spin) << sep << fmt(eps_l) << sep << fmt(eps_v)
          << sep << fmt(log(helion::Real(n)) / log(helion::Real(10))) << sep
          << fmt(log(eps_v) / log(helion::Real(10))) << "\n";
      auto it = prev_eps.find(st2.basis.spin);
      if (it != prev_eps.end() && !ground && eps_v >= it->second)
        *os << "# monotonicity warning: " << spin_name(st2.basis.spin) << " n=" << n << "\n";
      if (!ground) prev_eps[st2.basis.spin] = eps_v;
    }
    return 0;
  } catch (const CLI::Error&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "pipeline failure: " << e.what() << "\n";
    return kExitPipeline;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helium-like S-state solver and entanglement-entropy pipeline"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  RunConfig rc;
  std::string input, axis;
  std::vector<int> values;
  std::vector<std::string> artifacts;

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();  // lets app-level flags like --config appear after the subcommand
    sub->add_option("--state", rc.state_label, "state label 1sns (1 <= n <= 9)");
    sub->add_option("--spin", rc.spin_str, "singlet | triplet");
    sub->add_option("--omega", rc.omega, "Hylleraas cap k+m+n <= omega");
    sub->add_option("--lmax", rc.l_max, "Legendre channel truncation");
    sub->add_option("--lamax", rc.la_max, "Laguerre radial basis size");
    sub->add_option("--digits", rc.digits, "working decimal digits (env HELION_PRECISION_DIGITS)");
    auto* a = sub->add_option("--alpha", rc.alpha_str, "exponent on r1 (inverse bohr)");
    auto* b = sub->add_option("--beta", rc.beta_str, "exponent on r2 (inverse bohr)");
    a->needs(b);
    b->needs(a);
    sub->add_option("--output", rc.output, "output file (default stdout or derived)");
    sub->add_option("--format", rc.format, "csv | tsv")
        ->check(CLI::IsMember({"csv", "tsv"}));
  };

  auto* solve = app.add_subcommand("solve", "variationally solve a state, write an artifact");
  add_common(solve);

  auto* entropy = app.add_subcommand("entropy", "entropy report from a state artifact");
  add_common(entropy);
  entropy->add_option("--input", input, "state artifact path")->required();

  auto* scan = app.add_subcommand("scan", "convergence scan along omega, l_max or la_max");
  add_common(scan);
  scan->add_option("--axis", axis, "omega | l_max | la_max")->required();
  scan->add_option("--values", values, "ascending axis values")->required()->delimiter(',');
  scan->add_option("--input", input, "state artifact (l_max/la_max axes; else re-solve)");

  auto* figure = app.add_subcommand("figure", "interaction-distance dataset from artifacts");
  add_common(figure);
  figure->add_option("--artifacts", artifacts, "state artifact paths, series order")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(rc);
    if (entropy->parsed()) return cmd_entropy(rc, input);
    if (scan->parsed()) return cmd_scan(rc, axis, values, input);
    if (figure->parsed()) return cmd_figure(rc, artifacts);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
