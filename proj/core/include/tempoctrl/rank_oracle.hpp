#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tempoctrl/controllability.hpp"
#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl {

/// Numeric system x(t+1) = A(t) x(t) + B u(t) with the sparsity of a temporal
/// network: A(k)(j, i) is nonzero iff snapshot k has edge i -> j, or i == j with
/// state retention. B has one unit column per driver.
struct NumericRealization {
  std::vector<Eigen::MatrixXd> transitions;  // A(t0), ..., A(t1 - 1)
  Eigen::MatrixXd input;                     // B
};

/// Draws nonzero weights i.i.d. uniform on [0.5, 1.5].
NumericRealization realize(const TemporalNetwork& net, const DriverSet& drivers,
                           std::mt19937_64& rng);

/// [Phi(t1, t0) B, Phi(t1, t0 + 1) B, ..., Phi(t1, t1 - 1) B, B] with
/// Phi(t1, h) = A(t1 - 1) ... A(h). One block per layer of the layered graph,
/// so drivers act at every layer the flow model attaches them to.
Eigen::MatrixXd controllability_matrix(const NumericRealization& system);

/// Rank of the controllability matrix, counting singular values above
/// 1e-9 times the largest one. Throws std::length_error beyond 30 nodes or 30
/// steps.
std::size_t numeric_rank(const NumericRealization& system);

}  // namespace tempoctrl
