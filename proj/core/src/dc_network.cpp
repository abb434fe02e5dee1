#include "dc_network.hpp"

#include <queue>
#include <string>

namespace cuc::detail {

DcNetwork::DcNetwork(const NetworkCase& c, std::optional<int> outage_line_idx)
    : case_(c), outage_(outage_line_idx) {
  check_connected();

  const int n = static_cast<int>(c.buses.size());
  const int slack = c.slack_bus_index();
  reduced_idx_.assign(n, -1);
  int r = 0;
  for (int b = 0; b < n; ++b) {
    if (b != slack) reduced_idx_[b] = r++;
  }

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(r, r);
  for (int l = 0; l < static_cast<int>(c.lines.size()); ++l) {
    if (outage_ && *outage_ == l) continue;
    const Line& ln = c.lines[l];
    const double y = 1.0 / ln.reactance;
    const int i = reduced_idx_[c.bus_index(ln.from_bus)];
    const int j = reduced_idx_[c.bus_index(ln.to_bus)];
    if (i >= 0) B(i, i) += y;
    if (j >= 0) B(j, j) += y;
    if (i >= 0 && j >= 0) {
      B(i, j) -= y;
      B(j, i) -= y;
    }
  }

  llt_.compute(B);
  if (llt_.info() != Eigen::Success) {
    throw StructuralError("singular susceptance system (network not connected to slack)");
  }
}

void DcNetwork::check_connected() const {
  const int n = static_cast<int>(case_.buses.size());
  std::vector<std::vector<int>> adj(n);
  for (int l = 0; l < static_cast<int>(case_.lines.size()); ++l) {
    if (outage_ && *outage_ == l) continue;
    const Line& ln = case_.lines[l];
    const int i = case_.bus_index(ln.from_bus);
    const int j = case_.bus_index(ln.to_bus);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int b = q.front();
    q.pop();
    for (int nb : adj[b]) {
      if (!seen[nb]) {
        seen[nb] = 1;
        ++count;
        q.push(nb);
      }
    }
  }
  if (count != n) {
    if (outage_) {
      throw IslandingError("outage of line id " +
                           std::to_string(case_.lines[*outage_].id) +
                           " islands the network");
    }
    throw StructuralError("network graph is disconnected");
  }
}

Eigen::VectorXd DcNetwork::angles(const Eigen::VectorXd& injection_mw) const {
  const int n = static_cast<int>(case_.buses.size());
  Eigen::VectorXd p(n - 1);
  for (int b = 0; b < n; ++b) {
    if (reduced_idx_[b] >= 0) p(reduced_idx_[b]) = injection_mw(b);
  }
  Eigen::VectorXd theta_red = llt_.solve(p);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
  for (int b = 0; b < n; ++b) {
    if (reduced_idx_[b] >= 0) theta(b) = theta_red(reduced_idx_[b]);
  }
  return theta;
}

std::vector<double> DcNetwork::line_flows(const Eigen::VectorXd& injection_mw) const {
  Eigen::VectorXd theta = angles(injection_mw);
  std::vector<double> flows(case_.lines.size(), 0.0);
  for (int l = 0; l < static_cast<int>(case_.lines.size()); ++l) {
    if (outage_ && *outage_ == l) continue;
    const Line& ln = case_.lines[l];
    const int i = case_.bus_index(ln.from_bus);
    const int j = case_.bus_index(ln.to_bus);
    flows[l] = (theta(i) - theta(j)) / ln.reactance;
  }
  return flows;
}

}  // namespace cuc::detail
