#ifndef HELION_ENTROPY_HPP
#define HELION_ENTROPY_HPP

// Entropies of an occupancy spectrum:
//   S_L  = 1 - sum (2l+1) Lambda^2          (linear entropy)
//   S_vN = -sum (2l+1) Lambda log2 Lambda   (von Neumann entropy, bits)
// and the interaction-distance measure eps = |S - S0| against the
// non-interacting limit (0 for the ground state; 0.5 / 1.0 for excited
// linear / von Neumann).

#include "helion/rdm.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace helion {

struct ChannelEntropyRow {
  int l = 0;
  Real partial_linear;       // sum of (2l+1) Lambda^2 in this channel
  Real partial_von_neumann;  // -sum of (2l+1) Lambda log2 Lambda in this channel
};

struct EntropyReport {
  Real s_linear;
  Real s_von_neumann;
  Real trace;
  std::vector<ChannelEntropyRow> per_channel;
  std::optional<Real> epsilon;
  std::optional<Real> reference_entropy;
};

namespace detail {

inline void warn_trace(const OccupancySet& occ) {
  // precondition guard: entropies of a badly normalized spectrum are
  // meaningless; surfaced as a recoverable signal, not silently fixed
  if (!(occ.trace >= Real(99) / 100 && occ.trace <= 1 + pow10(-6)))
    throw TraceOutOfRange("occupancy trace outside [0.99, 1 + 1e-6]");
}

}  // namespace detail

inline Real linear_entropy(const OccupancySet& occ) {
  detail::warn_trace(occ);
  Real purity = 0;
  for (const auto& e : occ.entries) purity += e.degeneracy * e.occupancy * e.occupancy;
  return 1 - purity;
}

inline Real von_neumann_entropy(const OccupancySet& occ) {
  detail::warn_trace(occ);
  const Real ln2 = log(Real(2));
  Real s = 0;
  for (const auto& e : occ.entries) {
    if (e.occupancy <= 0) continue;  // 0 log 0 = 0
    s -= e.degeneracy * e.occupancy * log(e.occupancy) / ln2;
  }
  return s;
}

inline Real interaction_distance(const Real& s, const Real& reference) {
  return abs(s - reference);
}

inline EntropyReport make_entropy_report(const std::vector<ChannelSpectrum>& spectra,
                                         std::optional<Real> reference = std::nullopt) {
  auto occ = occupancies(spectra);
  EntropyReport rep;
  rep.trace = occ.trace;
  rep.s_linear = linear_entropy(occ);
  rep.s_von_neumann = von_neumann_entropy(occ);

  std::map<int, ChannelEntropyRow> rows;
  const Real ln2 = log(Real(2));
  for (const auto& e : occ.entries) {
    auto& row = rows.try_emplace(e.l, ChannelEntropyRow{e.l, Real(0), Real(0)}).first->second;
    row.partial_linear += e.degeneracy * e.occupancy * e.occupancy;
    if (e.occupancy > 0)
      row.partial_von_neumann -= e.degeneracy * e.occupancy * log(e.occupancy) / ln2;
  }
  for (auto& [l, row] : rows) rep.per_channel.push_back(row);

  if (reference) {
    rep.reference_entropy = *reference;
    rep.epsilon = interaction_distance(rep.s_von_neumann, *reference);
  }
  return rep;
}

// One row of the interaction-distance dataset (log-log ready).
struct FigureRow {
  int n = 1;
  Spin spin = Spin::singlet;
  Real eps_linear;
  Real eps_von_neumann;
  bool monotonicity_warning = false;  // set if eps failed to decrease vs the previous n
};

struct StateKey {
  int n;
  Spin spin;
  bool operator<(const StateKey& o) const {
    if (n != o.n) return n < o.n;
    return static_cast<int>(spin) < static_cast<int>(o.spin);
  }
};

// Dataset behind the distance-vs-n plot. Expects singlet n = 1..6 and triplet
// n = 2..6; eps uses the non-interacting references (ground: 0/0; excited:
// 0.5 linear, 1.0 von Neumann). A non-decreasing step flags the row instead of
// failing: the monotone fall is a physics result, not an input contract.
inline std::vector<FigureRow> figure1_dataset(const std::map<StateKey, EntropyReport>& reports) {
  std::vector<FigureRow> out;
  for (Spin spin : {Spin::singlet, Spin::triplet}) {
    const int n_first = (spin == Spin::singlet) ? 1 : 2;
    for (int n = n_first; n <= 6; ++n) {
      auto it = reports.find({n, spin});
      if (it == reports.end())
        throw MissingState(std::string("missing ") + spin_name(spin) + " state n=" +
                           std::to_string(n));
      const auto& rep = it->second;
      const bool ground = (spin == Spin::singlet && n == 1);
      FigureRow row;
      row.n = n;
      row.spin = spin;
      row.eps_linear = interaction_distance(rep.s_linear, ground ? Real(0) : Real(1) / 2);
      row.eps_von_neumann = interaction_distance(rep.s_von_neumann, ground ? Real(0) : Real(1));
      if (!out.empty() && out.back().spin == spin && !ground) {
        const auto& prev = out.back();
        const bool prev_ground = (spin == Spin::singlet && prev.n == 1);
        if (!prev_ground &&
            (row.eps_linear >= prev.eps_linear || row.eps_von_neumann >= prev.eps_von_neumann))
          row.monotonicity_warning = true;
      }
      out.push_back(row);
    }
  }
  return out;
}

}  // namespace helion

#endif  // HELION_ENTROPY_HPP
