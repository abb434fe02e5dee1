#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuc/netcase.hpp"

namespace cuc {

// Safety labels per (scenario, contingency): 0 = unsafe, 1 = safe.
// aggregate(i) is the conjunction over all contingencies.
struct SecurityLabelTable {
  std::vector<int> scenario_ids;
  std::vector<int> contingency_ids;
  std::vector<std::vector<int>> labels;  // [scenario][contingency]
  std::vector<int> aggregate;            // [scenario]

  int label(int scenario_pos, int contingency_pos) const {
    return labels[scenario_pos][contingency_pos];
  }
};

// Line MW flows from a B-theta solve, with the outage applied if given.
// Throws IslandingError when the outage splits the network.
std::vector<double> dc_power_flow(const NetworkCase& c, const OperatingScenario& s,
                                  std::optional<int> outage_line_id = std::nullopt);

// 1 iff every line flow magnitude stays within its thermal limit under the
// contingency topology (tolerance 1e-6 MW); islanding or an external
// contingency without a supplied label counts as 0.
int assess_scenario(const NetworkCase& c, const OperatingScenario& s, const Contingency& h);

// Labels every (scenario, contingency) pair. Columns present in
// external_labels (keyed by contingency id) override computed values;
// contingencies of kind external MUST be covered by external labels.
SecurityLabelTable label_dataset(const NetworkCase& c,
                                 const std::vector<OperatingScenario>& scenarios,
                                 const std::vector<Contingency>& contingencies,
                                 const std::map<int, std::vector<int>>& external_labels = {});

std::string label_table_to_csv(const SecurityLabelTable& t);
SecurityLabelTable label_table_from_csv(const std::string& csv);

}  // namespace cuc
