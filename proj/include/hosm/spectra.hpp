#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hosm/swalk.hpp"

namespace hosm {

/// Eigenvalues of the random-walk transition matrix P = D^-1 W, descending.
struct TransitionSpectrum {
  std::vector<double> eigenvalues;
  std::size_t node_count = 0;        // walkable nodes the eigenvalues belong to
  std::size_t isolated_dropped = 0;
  /// Zero eigenvalues the ordered expansion has beyond a quotient graph's spectrum,
  /// node_count * (s! - 1). Not listed in `eigenvalues`.
  std::size_t implicit_zeros = 0;

  /// Eigenvalues including the implicit zeros, descending.
  std::vector<double> expanded() const;
};

/// m_l = (1/n) sum_i lambda_i^l for l = l_min..l_max.
struct MomentVector {
  int l_min = 1;
  int l_max = 0;
  std::vector<double> values;
  bool absent = false;  // empty graph: values are all 0
  std::size_t node_count = 0;
  std::size_t isolated_dropped = 0;

  double at(int l) const;
  std::size_t size() const noexcept { return values.size(); }
};

struct EigMoments {
  TransitionSpectrum spectrum;
  MomentVector moments;
};

/// Dense symmetric eigendecomposition is used up to this many walkable nodes.
inline constexpr std::size_t kDenseEigenLimit = 4000;

/// Full spectrum of S = D^-1/2 W D^-1/2 and its moments l = 1..l_max. Quotient graphs
/// report ordered-expansion moments (divided by s!). Throws DomainError above
/// kDenseEigenLimit nodes.
EigMoments moments_eig(const WeightedGraph& graph, int l_max);

/// Moments l = 1..l_max from tr(P^l) / n, computed without densifying P.
MomentVector moments_trace(const WeightedGraph& graph, int l_max);

namespace serial {
MomentVector moments_trace(const WeightedGraph& graph, int l_max);
}  // namespace serial

enum class MomentRoute { trace, eig };
MomentRoute moment_route_from_string(const std::string& name);

/// Moments by the requested route; `eig` falls back to trace above kDenseEigenLimit.
MomentVector compute_moments(const WeightedGraph& graph, int l_max, MomentRoute route);

struct ReturnEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t walks = 0;
  std::uint64_t returns = 0;
  bool absent = false;
};

/// Monte-Carlo l-step return probability from uniform walkable starts. Deterministic in
/// `seed` for any thread count. Quotient graphs are rescaled like the moments.
ReturnEstimate mc_return(const WeightedGraph& graph, int l, std::size_t n_walks,
                         std::uint64_t seed);

/// `[λ1, λ2, ...]` with 17 significant digits.
std::string spectrum_to_json(const TransitionSpectrum& spectrum);

}  // namespace hosm
