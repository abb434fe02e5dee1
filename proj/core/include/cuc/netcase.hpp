#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cuc/errors.hpp"

namespace cuc {

struct Bus {
  int id = 0;
  bool is_slack = false;
};

struct Line {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double reactance = 0.0;         // p.u., > 0
  double thermal_limit_mw = 0.0;  // > 0
};

struct Generator {
  int id = 0;
  int bus = 0;
  double p_min = 0.0;
  double p_max = 0.0;
  double cost_a = 0.0;  // $/MW^2 h
  double cost_b = 0.0;  // $/MWh
  double cost_c = 0.0;  // $/h no-load
  double startup_cost = 0.0;
  double ramp_up = 0.0;    // MW per period
  double ramp_down = 0.0;  // MW per period
  int min_up = 1;          // periods
  int min_down = 1;
};

struct WindUnit {
  int id = 0;
  int bus = 0;
  std::vector<double> available_mw;  // forecast per period
};

struct Load {
  int id = 0;
  int bus = 0;
  std::vector<double> demand_mw;  // per period
};

struct CorridorMember {
  int line = 0;
  int dir = 1;  // +1: line forward flow counts positive, -1: reversed
};

struct Corridor {
  int id = 0;
  std::vector<CorridorMember> members;
};

enum class ContingencyKind { none, line_outage, external };

struct Contingency {
  int id = 0;
  ContingencyKind kind = ContingencyKind::none;
  int line = -1;  // line id for line_outage
  std::string description;
};

// One operating mode snapshot: active powers for generators, wind units and
// loads, in case element order. A generator at 0 MW is "off".
struct OperatingScenario {
  int id = 0;
  std::vector<double> p_g;
  std::vector<double> p_w;
  std::vector<double> p_d;
};

// Validated static grid description. Immutable after construction; safe to
// share read-only across tasks.
class NetworkCase {
 public:
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  std::vector<WindUnit> wind_units;
  std::vector<Load> loads;
  std::vector<Corridor> corridors;
  std::vector<Contingency> contingencies;
  int horizon = 0;

  int bus_index(int id) const;
  int line_index(int id) const;
  int corridor_index(int id) const;
  int contingency_index(int id) const;
  int slack_bus_index() const { return slack_index_; }

  // Checks every type invariant; throws ValidationError with a path to the
  // offending element. Called by parse_case; call again after manual edits.
  void validate();

  // Feature vector of Eq-style [P_g, P_w, P_d] concatenation.
  std::vector<double> feature_vector(const OperatingScenario& s) const;
  int feature_dim() const {
    return static_cast<int>(generators.size() + wind_units.size() + loads.size());
  }

  double total_demand(int t) const;

  std::string content_hash() const;

 private:
  std::vector<int> bus_idx_, line_idx_, corridor_idx_, contingency_idx_;
  int slack_index_ = -1;
  int lookup(const std::vector<int>& ids, int id, const char* what) const;
};

NetworkCase parse_case(const std::string& json_text);
NetworkCase load_case(const std::filesystem::path& path);
std::string case_to_json(const NetworkCase& c);

// Power transfer factors: sensitivity of each line's DC flow to a 1 MW
// injection at a bus, withdrawn at the slack. Element factors (generator,
// wind unit, load) inherit the factor of their bus.
class PtdfMatrix {
 public:
  PtdfMatrix(int n_bus, int n_line, int slack_index)
      : n_bus_(n_bus), n_line_(n_line), slack_(slack_index),
        factors_(static_cast<std::size_t>(n_bus) * n_line, 0.0) {}

  double bus_factor(int bus_idx, int line_idx) const {
    return factors_[static_cast<std::size_t>(bus_idx) * n_line_ + line_idx];
  }
  double& bus_factor(int bus_idx, int line_idx) {
    return factors_[static_cast<std::size_t>(bus_idx) * n_line_ + line_idx];
  }
  int slack_index() const { return slack_; }
  int bus_count() const { return n_bus_; }
  int line_count() const { return n_line_; }

 private:
  int n_bus_, n_line_, slack_;
  std::vector<double> factors_;
};

PtdfMatrix compute_ptdf(const NetworkCase& c);

// Net sensitivity of corridor s to a bus injection: sum of member line
// factors with member orientation applied.
double corridor_bus_factor(const PtdfMatrix& ptdf, const NetworkCase& c,
                           int corridor_idx, int bus_idx);

// Signed corridor flows for one scenario (member orientation applied,
// loads entering negatively).
std::vector<double> corridor_flows(const OperatingScenario& s, const PtdfMatrix& ptdf,
                                   const NetworkCase& c);

}  // namespace cuc
