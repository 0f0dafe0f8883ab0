#include "tempoctrl/rank_oracle.hpp"

#include <stdexcept>

namespace tempoctrl {

namespace {
constexpr std::size_t kMaxNodes = 30;
constexpr std::size_t kMaxSteps = 30;
constexpr double kRelativeTolerance = 1e-9;
}  // namespace

NumericRealization realize(const TemporalNetwork& net, const DriverSet& drivers,
                           std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(net.node_count());
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  NumericRealization sys;
  sys.transitions.reserve(net.steps());
  for (std::size_t k = 0; k < net.steps(); ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    if (net.self_loops())
      for (Eigen::Index i = 0; i < n; ++i) a(i, i) = weight(rng);
    for (const Edge& e : net.snapshot(k)) a(e.target, e.source) = weight(rng);
    sys.transitions.push_back(std::move(a));
  }
  sys.input = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(drivers.size()));
  Eigen::Index col = 0;
  for (NodeId d : drivers) {
    if (d >= n) throw std::out_of_range("driver outside the network");
    sys.input(d, col++) = 1.0;
  }
  return sys;
}

Eigen::MatrixXd controllability_matrix(const NumericRealization& system) {
  const Eigen::Index n = system.input.rows();
  const Eigen::Index m = system.input.cols();
  const auto steps = static_cast<Eigen::Index>(system.transitions.size());
  Eigen::MatrixXd c(n, m * (steps + 1));
  // Build right to left: the last block is B, each earlier block picks up one
  // more transition on the right of the product.
  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index h = steps; h >= 0; --h) {
    c.middleCols(h * m, m) = phi * system.input;
    if (h > 0) phi = phi * system.transitions[static_cast<std::size_t>(h - 1)];
  }
  return c;
}

std::size_t numeric_rank(const NumericRealization& system) {
  if (static_cast<std::size_t>(system.input.rows()) > kMaxNodes ||
      system.transitions.size() > kMaxSteps)
    throw std::length_error("rank oracle limited to 30 nodes and 30 steps");
  if (system.input.cols() == 0) return 0;
  const Eigen::MatrixXd c = controllability_matrix(system);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRelativeTolerance * sv(0)) ++rank;
  return rank;
}

}  // namespace tempoctrl
