#include "bubbles/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace bubbles {

namespace {

template <class T, class F>
std::string array(const std::vector<T>& v, F&& emit) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += emit(v[i]);
  }
  return out + ']';
}

std::string doubles(const std::vector<double>& v) { return array(v, format_double); }

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const Configuration& c) {
  auto cell = [](const Cell& x) { return x ? std::to_string(x->index) : std::string("null"); };
  return "{\"density\":\"abs\",\"n\":" + std::to_string(c.region_count()) + ",\"breakpoints\":" +
         doubles(c.breakpoints()) + ",\"cells\":" + array(c.cells(), cell) + "}";
}

std::string to_json(const Layout& layout) {
  auto id = [](RegionId r) { return std::to_string(r.index); };
  std::string split = "null";
  if (layout.split)
    split = "{\"region\":" + std::to_string(layout.split->region.index) +
            ",\"fraction\":" + format_double(layout.split->fraction) + "}";
  return "{\"left\":" + array(layout.left, id) + ",\"right\":" + array(layout.right, id) + ",\"split\":" + split +
         ",\"description\":" + json_string(describe(layout)) + "}";
}

std::string to_json(const Solution& s) {
  return "{\"masses\":" + doubles(s.masses) + ",\"layout\":" + to_json(s.layout) + ",\"config\":" + to_json(s.config) +
         ",\"perimeter\":" + format_double(s.perimeter) + ",\"provenance\":" + json_string(to_string(s.provenance)) + "}";
}

std::string to_json(const MoveReport& r) {
  return "{\"move\":" + json_string(r.move) + ",\"before\":" + to_json(r.before) + ",\"after\":" + to_json(r.after) +
         ",\"perimeter_delta\":" + format_double(r.perimeter_delta) + ",\"strict\":" + (r.strict ? "true" : "false") +
         "}";
}

std::string to_json(const OracleResult& r) {
  return "{\"best_layout\":" + to_json(r.best_layout) + ",\"best_perimeter\":" + format_double(r.best_perimeter) +
         ",\"gap_to_second\":" + format_double(r.gap_to_second) + ",\"evaluated\":" + std::to_string(r.evaluated) +
         ",\"ties\":" + std::to_string(r.ties) + "}";
}

std::string to_json(const ConjectureReport& r) {
  return "{\"n\":" + std::to_string(r.n) + ",\"trials\":" + std::to_string(r.trials) +
         ",\"seed\":" + std::to_string(r.seed) + ",\"counterexamples\":" + array(r.counterexamples, doubles) +
         ",\"tied_trials\":" + std::to_string(r.tied_trials) + ",\"max_gap\":" + format_double(r.max_gap) + "}";
}

Configuration parse_configuration(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("configuration: invalid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("config")) j = j["config"];
  if (!j.is_object()) throw PreconditionError("configuration: expected an object");
  if (j.contains("density") && j["density"] != "abs") throw PreconditionError("configuration: only density \"abs\" is supported");
  try {
    const int n = j.at("n").get<int>();
    auto breakpoints = j.at("breakpoints").get<std::vector<double>>();
    std::vector<Cell> cells;
    for (const auto& v : j.at("cells")) {
      if (v.is_null())
        cells.push_back(std::nullopt);
      else if (v.is_number_integer())
        cells.emplace_back(RegionId(v.get<int>()));
      else
        throw PreconditionError("configuration: cells must be integers or null");
    }
    for (const Cell& c : cells)
      if (c && c->index < 0) throw PreconditionError("configuration: negative region index");
    return Configuration(std::move(breakpoints), std::move(cells), n);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("configuration: ") + e.what());
  }
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && (*end == ' ' || *end == '\t')) ++end;
    if (item.empty() || end == begin || *end != '\0') throw PreconditionError("cannot parse number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw PreconditionError("empty number list");
  return out;
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxTime: return "max_time";
    case StopReason::Vanished: return "vanished";
    case StopReason::ReachedOrigin: return "reached_origin";
    case StopReason::StepUnderflow: return "step_underflow";
    case StopReason::NothingMoves: return "nothing_moves";
  }
  return "unknown";
}

}  // namespace bubbles
