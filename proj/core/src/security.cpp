#include "cuc/security.hpp"

#include <cmath>
#include <sstream>

#include "cuc/util.hpp"
#include "dc_network.hpp"

namespace cuc {

namespace {

constexpr double kThermalTolMw = 1e-6;

Eigen::VectorXd net_injection(const NetworkCase& c, const OperatingScenario& s) {
  const int n = static_cast<int>(c.buses.size());
  Eigen::VectorXd inj = Eigen::VectorXd::Zero(n);
  for (std::size_t g = 0; g < c.generators.size(); ++g)
    inj(c.bus_index(c.generators[g].bus)) += s.p_g[g];
  for (std::size_t w = 0; w < c.wind_units.size(); ++w)
    inj(c.bus_index(c.wind_units[w].bus)) += s.p_w[w];
  for (std::size_t d = 0; d < c.loads.size(); ++d)
    inj(c.bus_index(c.loads[d].bus)) -= s.p_d[d];
  return inj;
}

}  // namespace

std::vector<double> dc_power_flow(const NetworkCase& c, const OperatingScenario& s,
                                  std::optional<int> outage_line_id) {
  if (s.p_g.size() != c.generators.size() || s.p_w.size() != c.wind_units.size() ||
      s.p_d.size() != c.loads.size()) {
    throw ValidationError("scenario id " + std::to_string(s.id) +
                          ": dimensions do not match case");
  }
  std::optional<int> outage_idx;
  if (outage_line_id) outage_idx = c.line_index(*outage_line_id);
  detail::DcNetwork net(c, outage_idx);
  return net.line_flows(net_injection(c, s));
}

int assess_scenario(const NetworkCase& c, const OperatingScenario& s, const Contingency& h) {
  if (h.kind == ContingencyKind::external) {
    // No internal method for externally assessed phenomena.
    return 0;
  }
  std::optional<int> outage;
  if (h.kind == ContingencyKind::line_outage) outage = h.line;
  std::vector<double> flows;
  try {
    flows = dc_power_flow(c, s, outage);
  } catch (const IslandingError&) {
    return 0;  // conservative: islanding labels the scenario unsafe
  }
  for (std::size_t l = 0; l < flows.size(); ++l) {
    if (std::abs(flows[l]) > c.lines[l].thermal_limit_mw + kThermalTolMw) return 0;
  }
  return 1;
}

SecurityLabelTable label_dataset(const NetworkCase& c,
                                 const std::vector<OperatingScenario>& scenarios,
                                 const std::vector<Contingency>& contingencies,
                                 const std::map<int, std::vector<int>>& external_labels) {
  // External contingencies have no computed fallback.
  std::string missing;
  for (const Contingency& h : contingencies) {
    if (h.kind == ContingencyKind::external && !external_labels.count(h.id)) {
      if (!missing.empty()) missing += ", ";
      missing += "label_" + std::to_string(h.id);
    }
  }
  if (!missing.empty()) {
    throw ValidationError("external contingencies missing label columns: " + missing);
  }
  for (const auto& [hid, col] : external_labels) {
    if (col.size() != scenarios.size()) {
      throw ValidationError("label_" + std::to_string(hid) + ": " +
                            std::to_string(col.size()) + " labels for " +
                            std::to_string(scenarios.size()) + " scenarios");
    }
  }

  SecurityLabelTable table;
  table.contingency_ids.reserve(contingencies.size());
  for (const Contingency& h : contingencies) table.contingency_ids.push_back(h.id);

  // Factorizations are reused across scenarios per contingency topology.
  std::vector<std::unique_ptr<detail::DcNetwork>> nets(contingencies.size());
  for (std::size_t hi = 0; hi < contingencies.size(); ++hi) {
    const Contingency& h = contingencies[hi];
    if (external_labels.count(h.id) || h.kind == ContingencyKind::external) continue;
    std::optional<int> outage;
    if (h.kind == ContingencyKind::line_outage) outage = c.line_index(h.line);
    try {
      nets[hi] = std::make_unique<detail::DcNetwork>(c, outage);
    } catch (const IslandingError&) {
      nets[hi] = nullptr;  // every scenario unsafe for this contingency
    }
  }

  table.scenario_ids.reserve(scenarios.size());
  table.labels.reserve(scenarios.size());
  table.aggregate.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const OperatingScenario& s = scenarios[i];
    table.scenario_ids.push_back(s.id);
    std::vector<int> row(contingencies.size(), 0);
    for (std::size_t hi = 0; hi < contingencies.size(); ++hi) {
      const Contingency& h = contingencies[hi];
      auto ext = external_labels.find(h.id);
      if (ext != external_labels.end()) {
        row[hi] = ext->second[i];
        continue;
      }
      if (!nets[hi]) {
        row[hi] = 0;
        continue;
      }
      std::vector<double> flows = nets[hi]->line_flows(net_injection(c, s));
      int safe = 1;
      for (std::size_t l = 0; l < flows.size(); ++l) {
        if (std::abs(flows[l]) > c.lines[l].thermal_limit_mw + kThermalTolMw) {
          safe = 0;
          break;
        }
      }
      row[hi] = safe;
    }
    int agg = 1;
    for (int v : row) agg &= v;
    table.labels.push_back(std::move(row));
    table.aggregate.push_back(agg);
  }
  return table;
}

std::string label_table_to_csv(const SecurityLabelTable& t) {
  std::ostringstream out;
  out << "scenario_id";
  for (int h : t.contingency_ids) out << ",label_" << h;
  out << ",aggregate\n";
  for (std::size_t i = 0; i < t.scenario_ids.size(); ++i) {
    out << t.scenario_ids[i];
    for (std::size_t hi = 0; hi < t.contingency_ids.size(); ++hi) out << "," << t.labels[i][hi];
    out << "," << t.aggregate[i] << "\n";
  }
  return out.str();
}

SecurityLabelTable label_table_from_csv(const std::string& csv) {
  SecurityLabelTable t;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("label CSV: empty file");
  std::istringstream hdr(line);
  std::string col;
  std::vector<std::string> cols;
  while (std::getline(hdr, col, ',')) cols.push_back(col);
  if (cols.empty() || cols.front() != "scenario_id" || cols.back() != "aggregate") {
    throw ValidationError("label CSV: header must be scenario_id, label_<h>..., aggregate");
  }
  for (std::size_t k = 1; k + 1 < cols.size(); ++k) {
    if (cols[k].rfind("label_", 0) != 0)
      throw ValidationError("label CSV: unexpected column '" + cols[k] + "'");
    t.contingency_ids.push_back(std::stoi(cols[k].substr(6)));
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<std::string> vals;
    while (std::getline(row, col, ',')) vals.push_back(col);
    if (vals.size() != cols.size()) {
      throw ValidationError("label CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(cols.size()) + " fields");
    }
    t.scenario_ids.push_back(std::stoi(vals[0]));
    std::vector<int> r;
    for (std::size_t k = 1; k + 1 < vals.size(); ++k) r.push_back(std::stoi(vals[k]));
    t.labels.push_back(std::move(r));
    t.aggregate.push_back(std::stoi(vals.back()));
  }
  return t;
}

}  // namespace cuc
