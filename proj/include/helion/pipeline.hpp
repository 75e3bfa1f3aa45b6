#ifndef HELION_PIPELINE_HPP
#define HELION_PIPELINE_HPP

// End-to-end plumbing: solved state -> channel spectra -> entropy report, and
// the text artifact format that moves states between the solver and the
// analysis commands.

#include "helion/entropy.hpp"
#include "helion/oracle.hpp"
#include "helion/rdm.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace helion {

struct PipelineSettings {
  ExpansionPolicy policy;  // l_max and quadrature floor
  int la_max = 50;         // radial projection basis size
  Real sigma = 0;          // Laguerre scale; 0 = auto from Z and n_target
  int n_target = 1;        // principal quantum number of the outer electron

  Real effective_sigma(const Real& Z) const {
    return sigma > 0 ? sigma : default_sigma(Z, n_target);
  }
};

// All channel spectra of a state at the settings' truncations.
inline std::vector<ChannelSpectrum> state_spectra(const StateSolution& state,
                                                  const PipelineSettings& settings,
                                                  const PrecisionConfig& cfg) {
  RadialBasis rb(settings.la_max, settings.effective_sigma(state.basis.Z));
  std::vector<ChannelSpectrum> out;
  out.reserve(settings.policy.l_max + 1);
  for (int l = 0; l <= settings.policy.l_max; ++l) {
    auto channel = build_channel(state, l, settings.policy);
    auto projected = project_channel(channel, rb);
    out.push_back(channel_spectrum(projected, cfg));
  }
  return out;
}

inline EntropyReport analyze_state(const StateSolution& state, const PipelineSettings& settings,
                                   const PrecisionConfig& cfg,
                                   std::optional<Real> reference = std::nullopt) {
  return make_entropy_report(state_spectra(state, settings, cfg), reference);
}

// All projected channel matrices at the settings' full truncations; the scan
// helpers below reuse one such computation across every row.
inline std::vector<ProjectedChannel> project_all_channels(const StateSolution& state,
                                                          const PipelineSettings& settings) {
  RadialBasis rb(settings.la_max, settings.effective_sigma(state.basis.Z));
  std::vector<ProjectedChannel> out;
  out.reserve(settings.policy.l_max + 1);
  for (int l = 0; l <= settings.policy.l_max; ++l)
    out.push_back(project_channel(build_channel(state, l, settings.policy), rb));
  return out;
}

struct ScanRow {
  int axis_value = 0;
  int basis_size = 0;               // N_t for omega scans, 0 otherwise
  std::optional<Real> energy;       // omega scans only
  Real trace;
  Real s_linear;
  Real s_von_neumann;
};

namespace detail {

inline void require_ascending(const std::vector<int>& values) {
  if (values.empty()) throw std::invalid_argument("scan needs at least one value");
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1]) throw std::invalid_argument("scan values must be ascending");
}

}  // namespace detail

// Channel-truncation scan: one projection pass at l_max = values.back(), then
// entropy sums over the leading channel subsets.
inline std::vector<ScanRow> scan_l_max(const StateSolution& state, PipelineSettings settings,
                                       const PrecisionConfig& cfg,
                                       const std::vector<int>& values) {
  detail::require_ascending(values);
  settings.policy.l_max = values.back();
  std::vector<ChannelSpectrum> spectra;
  for (const auto& pc : project_all_channels(state, settings))
    spectra.push_back(channel_spectrum(pc, cfg));

  std::vector<ScanRow> rows;
  for (int v : values) {
    std::vector<ChannelSpectrum> subset(spectra.begin(), spectra.begin() + (v + 1));
    auto rep = make_entropy_report(subset);
    rows.push_back({v, 0, std::nullopt, rep.trace, rep.s_linear, rep.s_von_neumann});
  }
  return rows;
}

// Radial-basis-size scan: one projection at la_max = values.back(); smaller
// sizes are the leading principal submatrices (the Laguerre set is nested).
inline std::vector<ScanRow> scan_la_max(const StateSolution& state, PipelineSettings settings,
                                        const PrecisionConfig& cfg,
                                        const std::vector<int>& values) {
  detail::require_ascending(values);
  settings.la_max = values.back();
  auto projected = project_all_channels(state, settings);

  std::vector<ScanRow> rows;
  for (int v : values) {
    std::vector<ChannelSpectrum> spectra;
    for (const auto& pc : projected) {
      ProjectedChannel sub;
      sub.l = pc.l;
      sub.spin = pc.spin;
      sub.matrix = pc.matrix.topLeftCorner(v, v);
      spectra.push_back(channel_spectrum(sub, cfg));
    }
    auto rep = make_entropy_report(spectra);
    rows.push_back({v, 0, std::nullopt, rep.trace, rep.s_linear, rep.s_von_neumann});
  }
  return rows;
}

// Basis-cap scan: re-solve per omega at fixed exponents, full pipeline per row.
inline std::vector<ScanRow> scan_omega(const Real& Z, Spin spin, int root_index,
                                       const Real& alpha, const Real& beta,
                                       const PipelineSettings& settings,
                                       const PrecisionConfig& cfg,
                                       const std::vector<int>& values) {
  detail::require_ascending(values);
  std::vector<ScanRow> rows;
  for (int v : values) {
    auto basis = BasisSpec::make(Z, v, spin, alpha, beta);
    auto st = solve_state(basis, root_index, cfg);
    auto rep = analyze_state(st, settings, cfg);
    rows.push_back({v, basis.size(), st.energy, rep.trace, rep.s_linear, rep.s_von_neumann});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// State artifact: a deterministic, full-precision text format.
//   helion-state 1
//   digits <decimal precision used when writing>
//   Z / omega / spin / root / alpha / beta / energy / norm
//   terms <count>
//   k m n coefficient        (one line per term, basis order)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string real_to_text(const Real& v) {
  // str(0, scientific) prints enough digits that parsing recovers the value
  // exactly, which makes write -> read -> write bit-identical
  return v.str(0, std::ios_base::scientific);
}

inline Real real_from_text(const std::string& s) { return Real(s); }

}  // namespace detail

inline void write_state(std::ostream& os, const StateSolution& st) {
  os << "helion-state 1\n";
  os << "digits " << current_digits() << "\n";
  os << "Z " << detail::real_to_text(st.basis.Z) << "\n";
  os << "omega " << st.basis.omega << "\n";
  os << "spin " << spin_name(st.basis.spin) << "\n";
  os << "root " << st.root_index << "\n";
  os << "alpha " << detail::real_to_text(st.basis.alpha) << "\n";
  os << "beta " << detail::real_to_text(st.basis.beta) << "\n";
  os << "energy " << detail::real_to_text(st.energy) << "\n";
  os << "norm " << detail::real_to_text(st.norm_constant) << "\n";
  os << "repulsion " << (st.include_repulsion ? 1 : 0) << "\n";
  os << "terms " << st.basis.size() << "\n";
  for (int i = 0; i < st.basis.size(); ++i) {
    const auto& t = st.basis.terms[i];
    os << t.k << " " << t.m << " " << t.n << " " << detail::real_to_text(st.coefficients(i))
       << "\n";
  }
}

struct ArtifactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline StateSolution read_state(std::istream& is) {
  auto expect_key = [&](const std::string& key) {
    std::string k;
    if (!(is >> k) || k != key) throw ArtifactError("state artifact: expected field '" + key + "'");
  };
  auto read_real = [&](const std::string& key) {
    expect_key(key);
    std::string v;
    if (!(is >> v)) throw ArtifactError("state artifact: missing value for '" + key + "'");
    return detail::real_from_text(v);
  };

  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != "helion-state" || version != 1)
    throw ArtifactError("not a helion state artifact");

  unsigned digits = 0;
  expect_key("digits");
  is >> digits;
  // never read an artifact at lower precision than it was written with
  PrecisionScope scope(std::max(current_digits(), digits));

  Real Z = read_real("Z");
  expect_key("omega");
  int omega = -1;
  is >> omega;
  expect_key("spin");
  std::string spin_str;
  is >> spin_str;
  Spin spin;
  if (spin_str == "singlet")
    spin = Spin::singlet;
  else if (spin_str == "triplet")
    spin = Spin::triplet;
  else
    throw ArtifactError("state artifact: unknown spin '" + spin_str + "'");
  expect_key("root");
  int root = 0;
  is >> root;
  Real alpha = read_real("alpha");
  Real beta = read_real("beta");
  Real energy = read_real("energy");
  Real norm = read_real("norm");
  expect_key("repulsion");
  int repulsion = 1;
  is >> repulsion;
  expect_key("terms");
  int nterms = -1;
  is >> nterms;
  if (!is || omega < 0 || root < 1 || nterms < 0)
    throw ArtifactError("state artifact: malformed header");

  StateSolution st;
  st.basis = BasisSpec::make(Z, omega, spin, alpha, beta);
  if (st.basis.size() != nterms) throw ArtifactError("state artifact: term count mismatch");
  st.root_index = root;
  st.energy = energy;
  st.norm_constant = norm;
  st.include_repulsion = repulsion != 0;
  st.coefficients = Vector(nterms);
  for (int i = 0; i < nterms; ++i) {
    int k, m, n;
    std::string c;
    if (!(is >> k >> m >> n >> c)) throw ArtifactError("state artifact: truncated term list");
    if (HylleraasTerm{k, m, n} != st.basis.terms[i])
      throw ArtifactError("state artifact: term order mismatch");
    st.coefficients(i) = detail::real_from_text(c);
  }
  return st;
}

inline void write_state_file(const std::string& path, const StateSolution& st) {
  std::ofstream os(path);
  if (!os) throw ArtifactError("cannot open artifact for writing: " + path);
  write_state(os, st);
}

inline StateSolution read_state_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ArtifactError("artifact not found: " + path);
  return read_state(is);
}

}  // namespace helion

#endif  // HELION_PIPELINE_HPP
