#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cuc/netcase.hpp"

namespace cuc::detail {

// Factorized reduced susceptance system for one topology (optionally with a
// line removed). Shared by PTDF construction and per-scenario B-theta solves.
class DcNetwork {
 public:
  // outage_line_idx: line index to drop, or nullopt for the intact network.
  // Throws IslandingError (outage splits the graph) or StructuralError
  // (base case disconnected).
  DcNetwork(const NetworkCase& c, std::optional<int> outage_line_idx);

  // Bus angles for a net-injection vector (MW per bus, slack entry ignored;
  // the slack absorbs any imbalance).
  Eigen::VectorXd angles(const Eigen::VectorXd& injection_mw) const;

  // Per-line MW flows, oriented from_bus -> to_bus positive. The outaged
  // line, if any, reports 0.
  std::vector<double> line_flows(const Eigen::VectorXd& injection_mw) const;

  int reduced_index(int bus_idx) const { return reduced_idx_[bus_idx]; }

 private:
  const NetworkCase& case_;
  std::optional<int> outage_;
  std::vector<int> reduced_idx_;  // bus -> row in reduced system, slack -> -1
  Eigen::LLT<Eigen::MatrixXd> llt_;

  void check_connected() const;
};

}  // namespace cuc::detail
