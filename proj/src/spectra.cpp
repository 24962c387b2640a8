#include "hosm/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>

#include "hosm/errors.hpp"
#include "hosm/kernels.hpp"

namespace hosm {

std::vector<double> TransitionSpectrum::expanded() const {
  std::vector<double> out = eigenvalues;
  out.insert(out.end(), implicit_zeros, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double MomentVector::at(int l) const {
  if (l < l_min || l > l_max) throw DomainError("moment order " + std::to_string(l) + " not computed");
  return values[static_cast<std::size_t>(l - l_min)];
}

namespace {

void check_order(int l_max) {
  if (l_max < 1) throw DomainError("l_max must be >= 1");
}

MomentVector from_traces(const std::vector<long double>& traces, std::size_t n,
                         std::size_t dropped, std::uint64_t blowup, int l_max) {
  MomentVector m;
  m.l_min = 1;
  m.l_max = l_max;
  m.node_count = n;
  m.isolated_dropped = dropped;
  m.values.assign(static_cast<std::size_t>(l_max), 0.0);
  if (n == 0) {
    m.absent = true;
    return m;
  }
  const long double denom = static_cast<long double>(n) * static_cast<long double>(blowup);
  for (int l = 1; l <= l_max; ++l)
    m.values[static_cast<std::size_t>(l - 1)] = static_cast<double>(traces[static_cast<std::size_t>(l - 1)] / denom);
  return m;
}

template <class Kernel>
MomentVector trace_route(const WeightedGraph& graph, int l_max, Kernel kernel) {
  check_order(l_max);
  const auto s = kernels::normalized_adjacency(graph);
  return from_traces(kernel(s, l_max), s.n, s.dropped, graph.provenance().blowup(), l_max);
}

}  // namespace

EigMoments moments_eig(const WeightedGraph& graph, int l_max) {
  check_order(l_max);
  const auto s = kernels::normalized_adjacency(graph);
  if (s.n > kDenseEigenLimit)
    throw DomainError("dense eigendecomposition limited to " + std::to_string(kDenseEigenLimit) +
                      " nodes; use the trace route");
  EigMoments out;
  out.spectrum.node_count = s.n;
  out.spectrum.isolated_dropped = s.dropped;
  const auto blowup = graph.provenance().blowup();
  out.spectrum.implicit_zeros = s.n * static_cast<std::size_t>(blowup - 1);

  std::vector<long double> sums(static_cast<std::size_t>(l_max), 0.0L);
  if (s.n > 0) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.n), static_cast<Eigen::Index>(s.n));
    for (std::size_t i = 0; i < s.n; ++i)
      for (auto p = s.offsets[i]; p < s.offsets[i + 1]; ++p)
        dense(static_cast<Eigen::Index>(i), s.cols[p]) = s.vals[p];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvariantViolation("symmetric eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    out.spectrum.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.spectrum.eigenvalues.begin(), out.spectrum.eigenvalues.end(), std::greater<>());
    for (double lambda : out.spectrum.eigenvalues) {
      long double p = 1.0L;
      for (int l = 1; l <= l_max; ++l) {
        p *= lambda;
        sums[static_cast<std::size_t>(l - 1)] += p;
      }
    }
  }
  out.moments = from_traces(sums, s.n, s.dropped, blowup, l_max);
  return out;
}

MomentVector moments_trace(const WeightedGraph& graph, int l_max) {
  return trace_route(graph, l_max, kernels::trace_powers_omp);
}

namespace serial {
MomentVector moments_trace(const WeightedGraph& graph, int l_max) {
  return trace_route(graph, l_max, kernels::trace_powers_serial);
}
}  // namespace serial

MomentRoute moment_route_from_string(const std::string& name) {
  if (name == "trace") return MomentRoute::trace;
  if (name == "eig") return MomentRoute::eig;
  throw DomainError("unknown moment route '" + name + "'");
}

MomentVector compute_moments(const WeightedGraph& graph, int l_max, MomentRoute route) {
  if (route == MomentRoute::eig) {
    std::size_t walkable = 0;
    for (std::uint32_t u = 0; u < graph.node_count(); ++u) walkable += graph.strength(u) > 0;
    if (walkable <= kDenseEigenLimit) return moments_eig(graph, l_max).moments;
  }
  return moments_trace(graph, l_max);
}

ReturnEstimate mc_return(const WeightedGraph& graph, int l, std::size_t n_walks, std::uint64_t seed) {
  if (l < 1) throw DomainError("walk length must be >= 1");
  if (n_walks < 1) throw DomainError("n_walks must be >= 1");
  ReturnEstimate out;
  out.walks = n_walks;
  if (graph.empty()) {
    out.absent = true;
    return out;
  }
  out.returns = kernels::count_returns_omp(graph, l, n_walks, seed);
  const double p = static_cast<double>(out.returns) / static_cast<double>(n_walks);
  const double blowup = static_cast<double>(graph.provenance().blowup());
  out.estimate = p / blowup;
  out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n_walks)) / blowup;
  return out;
}

std::string spectrum_to_json(const TransitionSpectrum& spectrum) {
  nlohmann::json j = spectrum.eigenvalues;
  return j.dump();
}

}  // namespace hosm
