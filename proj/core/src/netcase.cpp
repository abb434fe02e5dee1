#include "cuc/netcase.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cuc/util.hpp"
#include "dc_network.hpp"

namespace cuc {

using nlohmann::json;

int NetworkCase::lookup(const std::vector<int>& ids, int id, const char* what) const {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return static_cast<int>(i);
  }
  throw ValidationError(std::string("unknown ") + what + " id " + std::to_string(id));
}

int NetworkCase::bus_index(int id) const { return lookup(bus_idx_, id, "bus"); }
int NetworkCase::line_index(int id) const { return lookup(line_idx_, id, "line"); }
int NetworkCase::corridor_index(int id) const { return lookup(corridor_idx_, id, "corridor"); }
int NetworkCase::contingency_index(int id) const {
  return lookup(contingency_idx_, id, "contingency");
}

namespace {

template <typename T>
void check_unique_ids(const std::vector<T>& items, const char* what) {
  std::set<int> seen;
  for (const T& it : items) {
    if (!seen.insert(it.id).second) {
      throw ValidationError(std::string(what) + "[id=" + std::to_string(it.id) +
                            "]: duplicate id");
    }
  }
}

}  // namespace

void NetworkCase::validate() {
  if (buses.empty()) throw ValidationError("buses: empty");
  check_unique_ids(buses, "buses");
  check_unique_ids(lines, "lines");
  check_unique_ids(generators, "generators");
  check_unique_ids(wind_units, "wind");
  check_unique_ids(loads, "loads");
  check_unique_ids(corridors, "corridors");
  check_unique_ids(contingencies, "contingencies");

  bus_idx_.clear();
  for (const Bus& b : buses) bus_idx_.push_back(b.id);
  line_idx_.clear();
  for (const Line& l : lines) line_idx_.push_back(l.id);
  corridor_idx_.clear();
  for (const Corridor& s : corridors) corridor_idx_.push_back(s.id);
  contingency_idx_.clear();
  for (const Contingency& h : contingencies) contingency_idx_.push_back(h.id);

  slack_index_ = -1;
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (buses[i].is_slack) {
      if (slack_index_ >= 0) throw ValidationError("buses: more than one slack bus");
      slack_index_ = static_cast<int>(i);
    }
  }
  if (slack_index_ < 0) throw ValidationError("buses: no slack bus");

  auto require_bus = [&](int id, const std::string& path) {
    if (std::find(bus_idx_.begin(), bus_idx_.end(), id) == bus_idx_.end()) {
      throw ValidationError(path + ": references unknown bus id " + std::to_string(id));
    }
  };

  for (const Line& l : lines) {
    const std::string path = "lines[id=" + std::to_string(l.id) + "]";
    require_bus(l.from_bus, path);
    require_bus(l.to_bus, path);
    if (l.from_bus == l.to_bus) throw ValidationError(path + ": from == to");
    if (!(l.reactance > 0.0)) throw ValidationError(path + ": reactance must be > 0");
    if (!(l.thermal_limit_mw > 0.0)) throw ValidationError(path + ": limit_mw must be > 0");
  }

  if (horizon < 1) throw ValidationError("horizon: must be >= 1");

  for (const Generator& g : generators) {
    const std::string path = "generators[id=" + std::to_string(g.id) + "]";
    require_bus(g.bus, path);
    if (g.p_min < 0 || g.p_min > g.p_max) throw ValidationError(path + ": need 0 <= pmin <= pmax");
    if (g.cost_a < 0 || g.cost_b < 0 || g.cost_c < 0 || g.startup_cost < 0)
      throw ValidationError(path + ": costs must be >= 0");
    if (g.ramp_up < 0 || g.ramp_down < 0) throw ValidationError(path + ": ramps must be >= 0");
    if (g.min_up < 1 || g.min_down < 1) throw ValidationError(path + ": min times must be >= 1");
  }

  for (const WindUnit& w : wind_units) {
    const std::string path = "wind[id=" + std::to_string(w.id) + "]";
    require_bus(w.bus, path);
    if (static_cast<int>(w.available_mw.size()) != horizon)
      throw ValidationError(path + ": available[] length != horizon");
    for (double v : w.available_mw)
      if (v < 0) throw ValidationError(path + ": available must be >= 0");
  }

  for (const Load& d : loads) {
    const std::string path = "loads[id=" + std::to_string(d.id) + "]";
    require_bus(d.bus, path);
    if (static_cast<int>(d.demand_mw.size()) != horizon)
      throw ValidationError(path + ": demand[] length != horizon");
    for (double v : d.demand_mw)
      if (v < 0) throw ValidationError(path + ": demand must be >= 0");
  }

  for (const Corridor& s : corridors) {
    const std::string path = "corridors[id=" + std::to_string(s.id) + "]";
    if (s.members.empty()) throw ValidationError(path + ": members empty");
    std::set<int> seen;
    for (const CorridorMember& m : s.members) {
      if (std::find(line_idx_.begin(), line_idx_.end(), m.line) == line_idx_.end()) {
        throw ValidationError(path + ": references unknown line id " + std::to_string(m.line));
      }
      if (m.dir != 1 && m.dir != -1) throw ValidationError(path + ": dir must be +1 or -1");
      if (!seen.insert(m.line).second)
        throw ValidationError(path + ": line id " + std::to_string(m.line) +
                              " appears more than once");
    }
  }

  for (const Contingency& h : contingencies) {
    const std::string path = "contingencies[id=" + std::to_string(h.id) + "]";
    if (h.kind == ContingencyKind::line_outage) {
      if (std::find(line_idx_.begin(), line_idx_.end(), h.line) == line_idx_.end()) {
        throw ValidationError(path + ": references unknown line id " + std::to_string(h.line));
      }
    }
  }

  // Connectivity of the intact graph.
  {
    const int n = static_cast<int>(buses.size());
    std::vector<std::vector<int>> adj(n);
    for (const Line& l : lines) {
      int i = bus_index(l.from_bus), j = bus_index(l.to_bus);
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
      for (int nb : adj[b])
        if (!seen[nb]) {
          seen[nb] = 1;
          ++count;
          q.push(nb);
        }
    }
    if (count != n) throw ValidationError("network graph is disconnected");
  }

  // N-1 line outages must not island (flagged at validation per contract).
  for (const Contingency& h : contingencies) {
    if (h.kind != ContingencyKind::line_outage) continue;
    const int skip = line_index(h.line);
    const int n = static_cast<int>(buses.size());
    std::vector<std::vector<int>> adj(n);
    for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
      if (l == skip) continue;
      int i = bus_index(lines[l].from_bus), j = bus_index(lines[l].to_bus);
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
      for (int nb : adj[b])
        if (!seen[nb]) {
          seen[nb] = 1;
          ++count;
          q.push(nb);
        }
    }
    if (count != n) {
      throw ValidationError("contingencies[id=" + std::to_string(h.id) +
                            "]: outage of line id " + std::to_string(h.line) +
                            " disconnects the graph");
    }
  }
}

std::vector<double> NetworkCase::feature_vector(const OperatingScenario& s) const {
  if (s.p_g.size() != generators.size() || s.p_w.size() != wind_units.size() ||
      s.p_d.size() != loads.size()) {
    throw ValidationError("scenario id " + std::to_string(s.id) +
                          ": dimensions do not match case");
  }
  std::vector<double> f;
  f.reserve(feature_dim());
  f.insert(f.end(), s.p_g.begin(), s.p_g.end());
  f.insert(f.end(), s.p_w.begin(), s.p_w.end());
  f.insert(f.end(), s.p_d.begin(), s.p_d.end());
  return f;
}

double NetworkCase::total_demand(int t) const {
  double d = 0.0;
  for (const Load& ld : loads) d += ld.demand_mw[t];
  return d;
}

std::string NetworkCase::content_hash() const { return hash_hex(case_to_json(*this)); }

namespace {

const json& need(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(path + ": missing field '" + key + "'");
  }
  return *it;
}

double need_num(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_number()) throw ValidationError(path + "." + key + ": expected number");
  return v.get<double>();
}

int need_int(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_number_integer()) throw ValidationError(path + "." + key + ": expected integer");
  return v.get<int>();
}

std::vector<double> need_num_array(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_array()) throw ValidationError(path + "." + key + ": expected array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(path + "." + key + ": expected numeric array");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

NetworkCase parse_case(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("case document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("case document: expected a JSON object");

  NetworkCase c;
  c.horizon = need_int(doc, "horizon", "case");

  for (const auto& b : need(doc, "buses", "case")) {
    Bus bus;
    bus.id = need_int(b, "id", "buses[]");
    bus.is_slack = need(b, "slack", "buses[id=" + std::to_string(bus.id) + "]").get<bool>();
    c.buses.push_back(bus);
  }
  for (const auto& l : need(doc, "lines", "case")) {
    Line ln;
    ln.id = need_int(l, "id", "lines[]");
    const std::string path = "lines[id=" + std::to_string(ln.id) + "]";
    ln.from_bus = need_int(l, "from", path);
    ln.to_bus = need_int(l, "to", path);
    ln.reactance = need_num(l, "x", path);
    ln.thermal_limit_mw = need_num(l, "limit_mw", path);
    c.lines.push_back(ln);
  }
  for (const auto& g : need(doc, "generators", "case")) {
    Generator gen;
    gen.id = need_int(g, "id", "generators[]");
    const std::string path = "generators[id=" + std::to_string(gen.id) + "]";
    gen.bus = need_int(g, "bus", path);
    gen.p_min = need_num(g, "pmin", path);
    gen.p_max = need_num(g, "pmax", path);
    gen.cost_a = need_num(g, "a", path);
    gen.cost_b = need_num(g, "b", path);
    gen.cost_c = need_num(g, "c", path);
    gen.startup_cost = need_num(g, "startup", path);
    gen.ramp_up = need_num(g, "ramp_up", path);
    gen.ramp_down = need_num(g, "ramp_down", path);
    gen.min_up = need_int(g, "min_up", path);
    gen.min_down = need_int(g, "min_down", path);
    c.generators.push_back(gen);
  }
  for (const auto& w : need(doc, "wind", "case")) {
    WindUnit wu;
    wu.id = need_int(w, "id", "wind[]");
    const std::string path = "wind[id=" + std::to_string(wu.id) + "]";
    wu.bus = need_int(w, "bus", path);
    wu.available_mw = need_num_array(w, "available", path);
    c.wind_units.push_back(wu);
  }
  for (const auto& d : need(doc, "loads", "case")) {
    Load ld;
    ld.id = need_int(d, "id", "loads[]");
    const std::string path = "loads[id=" + std::to_string(ld.id) + "]";
    ld.bus = need_int(d, "bus", path);
    ld.demand_mw = need_num_array(d, "demand", path);
    c.loads.push_back(ld);
  }
  for (const auto& s : need(doc, "corridors", "case")) {
    Corridor co;
    co.id = need_int(s, "id", "corridors[]");
    const std::string path = "corridors[id=" + std::to_string(co.id) + "]";
    for (const auto& m : need(s, "members", path)) {
      CorridorMember mem;
      mem.line = need_int(m, "line", path + ".members[]");
      mem.dir = need_int(m, "dir", path + ".members[]");
      co.members.push_back(mem);
    }
    c.corridors.push_back(co);
  }
  if (doc.contains("contingencies")) {
    for (const auto& h : doc["contingencies"]) {
      Contingency con;
      con.id = need_int(h, "id", "contingencies[]");
      const std::string path = "contingencies[id=" + std::to_string(con.id) + "]";
      const std::string kind = need(h, "kind", path).get<std::string>();
      if (kind == "none") {
        con.kind = ContingencyKind::none;
      } else if (kind == "line_outage") {
        con.kind = ContingencyKind::line_outage;
        con.line = need_int(h, "line", path);
      } else if (kind == "external") {
        con.kind = ContingencyKind::external;
      } else {
        throw ValidationError(path + ": unknown kind '" + kind + "'");
      }
      if (h.contains("description")) con.description = h["description"].get<std::string>();
      c.contingencies.push_back(con);
    }
  }

  c.validate();
  return c;
}

NetworkCase load_case(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open case file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str());
}

std::string case_to_json(const NetworkCase& c) {
  json doc;
  doc["horizon"] = c.horizon;
  doc["buses"] = json::array();
  for (const Bus& b : c.buses) doc["buses"].push_back({{"id", b.id}, {"slack", b.is_slack}});
  doc["lines"] = json::array();
  for (const Line& l : c.lines)
    doc["lines"].push_back({{"id", l.id},
                            {"from", l.from_bus},
                            {"to", l.to_bus},
                            {"x", l.reactance},
                            {"limit_mw", l.thermal_limit_mw}});
  doc["generators"] = json::array();
  for (const Generator& g : c.generators)
    doc["generators"].push_back({{"id", g.id},
                                 {"bus", g.bus},
                                 {"pmin", g.p_min},
                                 {"pmax", g.p_max},
                                 {"a", g.cost_a},
                                 {"b", g.cost_b},
                                 {"c", g.cost_c},
                                 {"startup", g.startup_cost},
                                 {"ramp_up", g.ramp_up},
                                 {"ramp_down", g.ramp_down},
                                 {"min_up", g.min_up},
                                 {"min_down", g.min_down}});
  doc["wind"] = json::array();
  for (const WindUnit& w : c.wind_units)
    doc["wind"].push_back({{"id", w.id}, {"bus", w.bus}, {"available", w.available_mw}});
  doc["loads"] = json::array();
  for (const Load& d : c.loads)
    doc["loads"].push_back({{"id", d.id}, {"bus", d.bus}, {"demand", d.demand_mw}});
  doc["corridors"] = json::array();
  for (const Corridor& s : c.corridors) {
    json members = json::array();
    for (const CorridorMember& m : s.members)
      members.push_back({{"line", m.line}, {"dir", m.dir}});
    doc["corridors"].push_back({{"id", s.id}, {"members", members}});
  }
  doc["contingencies"] = json::array();
  for (const Contingency& h : c.contingencies) {
    json entry = {{"id", h.id}, {"description", h.description}};
    switch (h.kind) {
      case ContingencyKind::none:
        entry["kind"] = "none";
        break;
      case ContingencyKind::line_outage:
        entry["kind"] = "line_outage";
        entry["line"] = h.line;
        break;
      case ContingencyKind::external:
        entry["kind"] = "external";
        break;
    }
    doc["contingencies"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

PtdfMatrix compute_ptdf(const NetworkCase& c) {
  detail::DcNetwork net(c, std::nullopt);
  const int n = static_cast<int>(c.buses.size());
  const int m = static_cast<int>(c.lines.size());
  PtdfMatrix ptdf(n, m, c.slack_bus_index());

  Eigen::VectorXd inj = Eigen::VectorXd::Zero(n);
  for (int b = 0; b < n; ++b) {
    if (b == c.slack_bus_index()) continue;  // slack column identically 0
    inj(b) = 1.0;
    std::vector<double> flows = net.line_flows(inj);
    inj(b) = 0.0;
    for (int l = 0; l < m; ++l) {
      double f = flows[l];
      if (std::abs(f) > 1.0 + 1e-9) {
        throw StructuralError("PTDF factor out of range at bus index " + std::to_string(b) +
                              ", line index " + std::to_string(l));
      }
      ptdf.bus_factor(b, l) = f;
    }
  }
  return ptdf;
}

double corridor_bus_factor(const PtdfMatrix& ptdf, const NetworkCase& c, int corridor_idx,
                           int bus_idx) {
  double f = 0.0;
  for (const CorridorMember& m : c.corridors[corridor_idx].members) {
    f += m.dir * ptdf.bus_factor(bus_idx, c.line_index(m.line));
  }
  return f;
}

std::vector<double> corridor_flows(const OperatingScenario& s, const PtdfMatrix& ptdf,
                                   const NetworkCase& c) {
  if (s.p_g.size() != c.generators.size() || s.p_w.size() != c.wind_units.size() ||
      s.p_d.size() != c.loads.size()) {
    throw ValidationError("scenario id " + std::to_string(s.id) +
                          ": dimensions do not match case");
  }
  std::vector<double> out(c.corridors.size(), 0.0);
  for (std::size_t si = 0; si < c.corridors.size(); ++si) {
    double p = 0.0;
    for (std::size_t g = 0; g < c.generators.size(); ++g) {
      p += corridor_bus_factor(ptdf, c, static_cast<int>(si),
                               c.bus_index(c.generators[g].bus)) *
           s.p_g[g];
    }
    for (std::size_t w = 0; w < c.wind_units.size(); ++w) {
      p += corridor_bus_factor(ptdf, c, static_cast<int>(si),
                               c.bus_index(c.wind_units[w].bus)) *
           s.p_w[w];
    }
    for (std::size_t d = 0; d < c.loads.size(); ++d) {
      p -= corridor_bus_factor(ptdf, c, static_cast<int>(si), c.bus_index(c.loads[d].bus)) *
           s.p_d[d];
    }
    out[si] = p;
  }
  return out;
}

}  // namespace cuc
